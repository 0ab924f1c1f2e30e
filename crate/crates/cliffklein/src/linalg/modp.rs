//! Rank over a prime field. A full rank mod p certifies full rank over Q,
//! because some maximal minor is then nonzero mod p and so nonzero.

pub const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

pub fn reduce(x: i64) -> u64 {
    x.rem_euclid(PRIME as i64) as u64
}

/// Rank of sparse integer rows `(column, value)` over GF(2^61 - 1).
pub fn rank_sparse(rows: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    // pivot_rows[c] = reduced row whose leading column is c
    let mut pivot_rows: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut rank = 0;
    for r in rows {
        let mut dense: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
        for &(c, v) in r {
            let e = dense.entry(c).or_insert(0);
            *e = (*e + reduce(v)) % PRIME;
        }
        dense.retain(|_, v| *v != 0);
        loop {
            let Some((&lead, &val)) = dense.iter().next() else { break };
            match &pivot_rows[lead] {
                Some(p) => {
                    // p is normalized to leading coefficient 1
                    for &(c, pv) in p {
                        let e = dense.entry(c).or_insert(0);
                        *e = (*e + PRIME - mul_mod(val, pv)) % PRIME;
                    }
                    dense.retain(|_, v| *v != 0);
                }
                None => {
                    let inv = pow_mod(val, PRIME - 2);
                    pivot_rows[lead] = Some(dense.iter().map(|(&c, &v)| (c, mul_mod(v, inv))).collect());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, -1)]];
        assert_eq!(rank_sparse(&rows, 3), 2);
        let id: Vec<Vec<(usize, i64)>> = (0..5).map(|i| vec![(i, 1)]).collect();
        assert_eq!(rank_sparse(&id, 5), 5);
    }
}
