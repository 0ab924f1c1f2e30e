//! Criteria that rule out compact Clifford–Klein forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cone::{cone_contains, ConeSet, Weyl};
use super::group::GroupDescriptor;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
}

impl RootType {
    pub fn weyl(self) -> Weyl {
        match self {
            RootType::A => Weyl::A,
            RootType::B | RootType::C => Weyl::BC,
            RootType::D => Weyl::D,
        }
    }

    /// Coordinates used for `a`: `Q^{n+1}` for `A_n`, `Q^n` otherwise.
    pub fn ambient(self, n: u32) -> usize {
        match self {
            RootType::A => n as usize + 1,
            _ => n as usize,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            _ => Err(Error::Parse(format!("unknown root type {s:?}"))),
        }
    }
}

pub const MAX_WEYL_RANK: u32 = 9;
/// `b₊` has a closed form, so it is not tied to Weyl enumeration.
pub const MAX_B_PLUS_RANK: u32 = 64;

/// Linear span of `b₊ = {X ∈ a₊ : w₀X = -X}` for a root system of rank `n`.
pub fn b_plus(root: RootType, n: u32) -> Result<ConeSet> {
    if n == 0 {
        return Err(Error::Domain("root system of rank 0".into()));
    }
    if n > MAX_B_PLUS_RANK {
        return Err(Error::Resource(format!("b₊ is computed up to rank {MAX_B_PLUS_RANK}")));
    }
    let r = root.ambient(n);
    let rows: Vec<Vec<i64>> = match root {
        RootType::A => (0..r / 2)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v[r - 1 - i] = -1;
                v
            })
            .collect(),
        RootType::D if n % 2 == 1 => (0..r - 1)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect(),
        _ => (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect(),
    };
    ConeSet::span(r, Weyl::None, &rows)
}

/// `b₊ ⊂ w·a_H` for some `w`: any discontinuous group is virtually abelian,
/// and a non-compact `G/H` has no compact form.
pub fn benoist_obstruction(root: RootType, n: u32, a_h: &ConeSet) -> Result<bool> {
    let b = b_plus(root, n)?;
    if a_h.ambient() != b.ambient() {
        return Err(Error::Domain(format!("a_H lives in Q^{}, a in Q^{}", a_h.ambient(), b.ambient())));
    }
    let plain = ConeSet::new(a_h.ambient(), Weyl::None, a_h.components().to_vec())?;
    if cone_contains(&plain, &b)? {
        return Ok(true);
    }
    if n > MAX_WEYL_RANK {
        return Err(Error::Resource(format!("Weyl enumeration is limited to rank {MAX_WEYL_RANK}")));
    }
    let orbit = ConeSet::new(a_h.ambient(), root.weyl(), a_h.components().to_vec())?;
    cone_contains(&orbit, &b)
}

/// Equal real ranks: only finite groups act properly discontinuously.
pub fn calabi_markus(g: &GroupDescriptor, h: &GroupDescriptor) -> Result<bool> {
    Ok(g.stats()?.real_rank == h.stats()?.real_rank)
}

/// `a(L) ⊆ a(H)` and `d(L) > d(H)`.
pub fn maximality_obstruction(a_h: &ConeSet, d_h: u64, a_l: &ConeSet, d_l: u64) -> Result<bool> {
    if a_l.is_zero() {
        return Ok(false);
    }
    Ok(d_l > d_h && cone_contains(a_h, a_l)?)
}

/// `rank G = rank H` and `rank K > rank(H∩K)`.
pub fn rank_parity_obstruction(
    g: &GroupDescriptor,
    h: &GroupDescriptor,
    h_cap_k: Option<&GroupDescriptor>,
) -> Result<bool> {
    let hk = h_cap_k.ok_or_else(|| Error::Unsupported(format!("no H∩K data for {g}/{h}")))?;
    let (gs, hs, ks) = (g.stats()?, h.stats()?, hk.stats()?);
    Ok(gs.rank == hs.rank && gs.rank_k > ks.rank)
}

/// Signature of the invariant pseudo-Riemannian metric on `G/H`.
pub fn pseudo_riemannian_signature(g: &GroupDescriptor, h: &GroupDescriptor) -> Result<(u64, u64)> {
    let (gs, hs) = (g.stats()?, h.stats()?);
    if hs.dim > gs.dim || hs.d() > gs.d() {
        return Err(Error::Domain(format!("{h} is larger than {g}")));
    }
    let pos = gs.d() - hs.d();
    Ok((pos, gs.dim - hs.dim - pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn b_plus_shapes() {
        assert_eq!(b_plus(RootType::B, 4).unwrap().dim(), 4);
        assert_eq!(b_plus(RootType::A, 3).unwrap().dim(), 2);
        assert_eq!(b_plus(RootType::A, 4).unwrap().dim(), 2);
        assert_eq!(b_plus(RootType::D, 5).unwrap().dim(), 4);
        assert_eq!(b_plus(RootType::D, 4).unwrap().dim(), 4);
        assert!(b_plus(RootType::A, 65).is_err());
        assert_eq!(b_plus(RootType::D, 17).unwrap().dim(), 16);
    }

    #[test]
    fn calabi_markus_examples() {
        assert!(calabi_markus(&g("O(5,3)"), &g("O(4,3)")).unwrap());
        assert!(!calabi_markus(&g("O(2,6)"), &g("O(1,6)")).unwrap());
    }

    #[test]
    fn rank_examples() {
        let n = 3;
        let gg = g(&format!("Sp({},R)", 2 * n));
        let h = g(&format!("Sp({n},C)"));
        let hk = g(&format!("Sp({n})"));
        assert!(rank_parity_obstruction(&gg, &h, Some(&hk)).unwrap());
        assert!(!rank_parity_obstruction(&g("O(2,6)"), &g("U(1,3)"), Some(&g("U(1)×U(3)"))).unwrap());
        assert!(rank_parity_obstruction(&gg, &h, None).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(pseudo_riemannian_signature(&g("O(4,3)"), &g("O(3,3)")).unwrap(), (3, 3));
        assert_eq!(pseudo_riemannian_signature(&g("O(2,1)"), &g("O(1,1)")).unwrap(), (1, 1));
        assert_eq!(pseudo_riemannian_signature(&g("SL(3,R)"), &g("SO(3)")).unwrap(), (5, 0));
    }

    #[test]
    fn maximality_edge_cases() {
        let a = ConeSet::full(2);
        assert!(!maximality_obstruction(&a, 3, &ConeSet::zero(2), 10).unwrap());
        assert!(!maximality_obstruction(&a, 3, &a, 3).unwrap());
        assert!(maximality_obstruction(&a, 3, &a, 4).unwrap());
    }
}
