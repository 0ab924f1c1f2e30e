//! Hurwitz–Radon numbers, orthogonal multiplications built from real
//! Clifford models, sums of squares and vector fields on spheres.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::clifford::{MultiVector, Signature};
use crate::error::{Error, Result};
use crate::lie::{ConeSet, Weyl};
use crate::linalg::{dot, int, QMatrix, Rat, SignedPerm};
use crate::morphisms::build_real_rep;

/// `q = u·2^{4α+β}` with `u` odd and `β ≤ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HurwitzDecomposition {
    pub q: u64,
    pub u: u64,
    pub alpha: u32,
    pub beta: u32,
    pub rho: u64,
}

impl HurwitzDecomposition {
    pub fn of(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("q = 0 has no Hurwitz-Radon decomposition".into()));
        }
        let k = q.trailing_zeros();
        let (alpha, beta) = (k / 4, k % 4);
        Ok(HurwitzDecomposition { q, u: q >> k, alpha, beta, rho: 8 * alpha as u64 + (1 << beta) })
    }
}

/// `ρ(q)`, with `None` standing for `ρ(0) = ∞`.
pub fn rho(q: u64) -> Option<u64> {
    HurwitzDecomposition::of(q).ok().map(|h| h.rho)
}

/// Whether `p < ρ(q)`.
pub fn below_rho(p: u64, q: u64) -> bool {
    rho(q).map_or(true, |r| p < r)
}

/// Matrices `A₀ = I, A₁, …` with `AᵢᵀAⱼ + AⱼᵀAᵢ = 2δᵢⱼI`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalMultiplication {
    pub q: usize,
    pub matrices: Vec<SignedPerm>,
}

impl OrthogonalMultiplication {
    pub fn p(&self) -> usize {
        self.matrices.len()
    }

    /// Checks the Hurwitz equations exactly.
    pub fn identities_hold(&self) -> bool {
        let m = &self.matrices;
        (0..m.len()).all(|i| {
            m[i].transpose().mul(&m[i]).is_identity()
                && (0..i).all(|j| m[i].transpose().mul(&m[j]).anticommutes_sum_zero(&m[j].transpose().mul(&m[i])))
        })
    }

    pub fn to_json(&self) -> Value {
        let mats: Vec<Value> = self.matrices.iter().map(|m| json!(m.to_dense())).collect();
        json!({"q": self.q, "rho": self.p(), "matrices": mats})
    }
}

/// Elements `x₁, …, x_{p-1}` of `C(r,s) ≅ M(2^k, R)` with `xᵢ² = -1`,
/// pairwise anticommuting and `xᵢ* = -xᵢ`.
fn claim_elements(k: u32) -> Result<(Signature, Vec<MultiVector>)> {
    let (alpha, beta) = (k / 4, k % 4);
    let p = 8 * alpha + (1 << beta);
    let sig = if beta <= 2 { Signature::of(beta, 8 * alpha + beta) } else { Signature::of(0, 8 * alpha + 6) };
    let mut xs: Vec<MultiVector> = Vec::new();
    if beta <= 1 {
        xs.extend((1..p).map(|i| MultiVector::minus(sig, i)));
    } else {
        // the last one is J₋, the product of all minus generators
        xs.extend((1..p - 1).map(|i| MultiVector::minus(sig, i)));
        xs.push(MultiVector::unit_blade(sig, sig.minus_mask()));
    }
    let minus_one = MultiVector::scalar(sig, int(-1));
    for (i, x) in xs.iter().enumerate() {
        if &(x * x) != &minus_one || x.star() != -x {
            return Err(Error::Domain(format!("x_{} fails the Hurwitz claim in C{sig}", i + 1)));
        }
        for y in &xs[..i] {
            if !(&(x * y) + &(y * x)).is_zero() {
                return Err(Error::Domain(format!("x_{} does not anticommute in C{sig}", i + 1)));
            }
        }
    }
    Ok((sig, xs))
}

/// `ρ(q)` matrices of size `q` satisfying the Hurwitz equations; the
/// 2-power part comes from a real model of `C(r,s)`, the odd part `u` by `A ↦ A⊗I_u`.
pub fn build_orthogonal_multiplication(q: u64) -> Result<OrthogonalMultiplication> {
    let h = HurwitzDecomposition::of(q)?;
    let k = q.trailing_zeros();
    if 2 * k > crate::morphisms::MAX_REP_GENERATORS {
        return Err(Error::Resource(format!("q = {q} needs a model of C(r,s) with r+s = {}", 2 * k)));
    }
    let (sig, xs) = claim_elements(k)?;
    let rep = build_real_rep(sig)?;
    let n = 1usize << k;
    if rep.real_size() != n || rep.class().double {
        return Err(Error::Domain(format!("model of C{sig} is not M({n},R)")));
    }
    let mut mats = vec![SignedPerm::identity(n)];
    for x in &xs {
        let (mask, c) = x.as_single_term().ok_or_else(|| Error::Domain("x is not a blade".into()))?;
        let m = rep.blade_image(mask);
        mats.push(if c < &Rat::zero() { m.neg() } else { m });
    }
    let u = h.u as usize;
    if u > 1 {
        let id = SignedPerm::identity(u);
        mats = mats.iter().map(|m| m.kron(&id)).collect();
    }
    let om = OrthogonalMultiplication { q: q as usize, matrices: mats };
    debug_assert_eq!(om.p() as u64, h.rho);
    Ok(om)
}

/// `f(v,w) = Σ vᵢ Aᵢ w` on `R^{p+1} × R^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub p_plus_1: usize,
    pub q: usize,
    pub matrices: Vec<QMatrix>,
}

impl BilinearMap {
    pub fn new(q: usize, matrices: Vec<QMatrix>) -> Result<Self> {
        if matrices.iter().any(|m| m.rows() != q || m.cols() != q) {
            return Err(Error::Domain(format!("bilinear map needs {q}×{q} matrices")));
        }
        Ok(BilinearMap { p_plus_1: matrices.len(), q, matrices })
    }

    pub fn eval(&self, v: &[Rat], w: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.q];
        for (c, a) in v.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(a.mul_vec(w)) {
                *o += c * x;
            }
        }
        out
    }

    /// `f̃(w) ∈ M(q, p+1)`, whose `i`-th column is `Aᵢ w`.
    pub fn tilde(&self, w: &[Rat]) -> QMatrix {
        let cols: Vec<Vec<Rat>> = self.matrices.iter().map(|a| a.mul_vec(w)).collect();
        let rows = (0..self.q).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        QMatrix::from_rows_with_cols(rows, self.p_plus_1)
    }

    /// `‖f(v,w)‖ = ‖v‖·‖w‖` as a polynomial identity.
    pub fn is_norm_multiplicative(&self) -> bool {
        let m = &self.matrices;
        let id = QMatrix::identity(self.q);
        (0..m.len()).all(|i| {
            m[i].transpose().mul(&m[i]) == id
                && (0..i).all(|j| m[i].transpose().mul(&m[j]).add(&m[j].transpose().mul(&m[i])).is_zero())
        })
    }
}

/// A norm-multiplicative bilinear map `R^{p+1} × R^q → R^q`.
pub fn bilinear_map(p_plus_1: usize, q: usize) -> Result<BilinearMap> {
    if q == 0 {
        return BilinearMap::new(0, vec![QMatrix::zeros(0, 0); p_plus_1]);
    }
    let r = rho(q as u64).expect("q > 0");
    if p_plus_1 as u64 > r {
        return Err(Error::Existence(format!(
            "no bilinear map R^{p_plus_1} × R^{q} → R^{q} without zero divisors: p+1 = {p_plus_1} > ρ({q}) = {r} \
             (Adams: p < ρ(q) is necessary)"
        )));
    }
    let om = build_orthogonal_multiplication(q as u64)?;
    BilinearMap::new(q, om.matrices[..p_plus_1].iter().map(SignedPerm::to_qmatrix).collect())
}

/// Bilinear forms `z_k(x,y) = Σ c x_i y_j` with `(Σxᵢ²)(Σyⱼ²) = Σz_k²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumOfSquares {
    pub p_plus_1: usize,
    pub q: usize,
    /// `z[k]` lists `(i, j, c)` for the term `c·x_{i+1}·y_{j+1}`.
    pub z: Vec<Vec<(usize, usize, i64)>>,
}

type Monomial = (usize, usize, usize, usize);

impl SumOfSquares {
    /// Expands `Σ z_k²` and compares it with `(Σxᵢ²)(Σyⱼ²)` monomial by monomial.
    pub fn verify(&self) -> bool {
        let mut lhs: BTreeMap<Monomial, i64> = BTreeMap::new();
        for i in 0..self.p_plus_1 {
            for j in 0..self.q {
                lhs.insert((i, i, j, j), 1);
            }
        }
        let mut rhs: BTreeMap<Monomial, i64> = BTreeMap::new();
        for zk in &self.z {
            for &(i, j, c) in zk {
                for &(i2, j2, c2) in zk {
                    let key = (i.min(i2), i.max(i2), j.min(j2), j.max(j2));
                    *rhs.entry(key).or_insert(0) += c * c2;
                }
            }
        }
        rhs.retain(|_, v| *v != 0);
        lhs == rhs
    }
}

impl fmt::Display for SumOfSquares {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = (1..=self.p_plus_1).map(|i| format!("x{i}^2")).collect();
        let ys: Vec<String> = (1..=self.q).map(|j| format!("y{j}^2")).collect();
        write!(f, "({})({}) = ", xs.join(" + "), ys.join(" + "))?;
        let zs: Vec<String> = self
            .z
            .iter()
            .map(|zk| {
                let mut s = String::new();
                for (n, &(i, j, c)) in zk.iter().enumerate() {
                    let mon = format!("x{}*y{}", i + 1, j + 1);
                    let coeff = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
                    match (n, c < 0) {
                        (0, true) => s.push_str(&format!("-{coeff}{mon}")),
                        (0, false) => s.push_str(&format!("{coeff}{mon}")),
                        (_, true) => s.push_str(&format!(" - {coeff}{mon}")),
                        (_, false) => s.push_str(&format!(" + {coeff}{mon}")),
                    }
                }
                if s.is_empty() {
                    s.push('0');
                }
                format!("({s})^2")
            })
            .collect();
        write!(f, "{}", zs.join(" + "))
    }
}

pub fn sum_of_squares_identity(p_plus_1: usize, q: usize) -> Result<SumOfSquares> {
    let f = bilinear_map(p_plus_1, q)?;
    let z = (0..q)
        .map(|k| {
            let mut terms = Vec::new();
            for (i, a) in f.matrices.iter().enumerate() {
                for j in 0..q {
                    let c = &a[(k, j)];
                    if !c.is_zero() {
                        terms.push((i, j, c.to_integer().try_into().expect("entries are ±1")));
                    }
                }
            }
            terms.sort_by_key(|t| (t.0, t.1));
            terms
        })
        .collect();
    let s = SumOfSquares { p_plus_1, q, z };
    if !s.verify() {
        return Err(Error::Domain(format!("sum of squares identity for ({p_plus_1},{q}) fails")));
    }
    Ok(s)
}

/// `p` tangent fields `Z_i(w) = t_i(w) - ⟨t_i(w),w⟩w` on `S^{q-1}`, with
/// `t_i(w) = g⁻¹f(e_i,w)` and `g = f(e₀,·)`.
#[derive(Clone, Debug)]
pub struct SphereVectorFields {
    pub q: usize,
    pub p: usize,
    f: BilinearMap,
    g_inv: QMatrix,
}

impl SphereVectorFields {
    pub fn eval(&self, w: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        if w.len() != self.q {
            return Err(Error::Domain(format!("point of R^{} on S^{}", w.len(), self.q - 1)));
        }
        let ww = dot(w, w);
        if !ww.is_one() {
            return Err(Error::Domain("point is not on the unit sphere".into()));
        }
        Ok((1..=self.p)
            .map(|i| {
                let t = self.g_inv.mul_vec(&self.f.matrices[i].mul_vec(w));
                let c = dot(&t, w);
                t.iter().zip(w).map(|(a, b)| a - &c * b).collect()
            })
            .collect())
    }

    /// Gram determinant of `{w, Z₁(w), …, Z_p(w)}`.
    pub fn gram_det(&self, w: &[Rat]) -> Result<Rat> {
        let mut vs = vec![w.to_vec()];
        vs.extend(self.eval(w)?);
        let g = QMatrix::from_rows(vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect());
        Ok(g.det())
    }
}

pub fn vector_fields_on_sphere(q: usize, p: usize) -> Result<SphereVectorFields> {
    if q == 0 {
        return Err(Error::Domain("S^{-1} is empty".into()));
    }
    let r = rho(q as u64).expect("q > 0");
    if p as u64 >= r {
        return Err(Error::Existence(format!(
            "S^{} carries at most ρ({q}) - 1 = {} independent vector fields (Adams)",
            q - 1,
            r - 1
        )));
    }
    let f = bilinear_map(p + 1, q)?;
    let g_inv = f.matrices[0].inverse().ok_or_else(|| Error::Domain("f(e₀,·) is singular".into()))?;
    Ok(SphereVectorFields { q, p, f, g_inv })
}

/// Rational point of `S^{q-1}` by inverse stereographic projection of a
/// random integer point of `R^{q-1}`.
pub fn rational_sphere_point(q: usize, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    if q == 1 {
        return vec![int(if rng.gen::<bool>() { 1 } else { -1 })];
    }
    let u: Vec<Rat> = (0..q - 1).map(|_| int(rng.gen_range(-4..=4))).collect();
    let n2 = dot(&u, &u);
    let den = &n2 + Rat::one();
    let mut w: Vec<Rat> = u.iter().map(|x| int(2) * x / &den).collect();
    w.push((n2 - Rat::one()) / den);
    w
}

pub fn sphere_points(q: usize, count: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rational_sphere_point(q, &mut rng)).collect()
}

/// The `q`-dimensional space `W = f̃(R^q) ⊂ M(q, p+1)`.
#[derive(Clone, Debug)]
pub struct TangentSubspace {
    pub q: usize,
    pub p_plus_1: usize,
    /// `f̃(e_j)` for `j = 1..q`
    pub basis: Vec<QMatrix>,
}

pub fn subspace_from_bilinear(f: &BilinearMap) -> Result<TangentSubspace> {
    if f.p_plus_1 == 0 {
        return Err(Error::Domain("bilinear map with no slots".into()));
    }
    let basis = (0..f.q)
        .map(|j| {
            let mut e = vec![Rat::zero(); f.q];
            e[j] = Rat::one();
            f.tilde(&e)
        })
        .collect();
    Ok(TangentSubspace { q: f.q, p_plus_1: f.p_plus_1, basis })
}

impl TangentSubspace {
    pub fn element(&self, w: &[Rat]) -> QMatrix {
        let mut x = QMatrix::zeros(self.q, self.p_plus_1);
        for (c, b) in w.iter().zip(&self.basis) {
            x = x.add(&b.scale(c));
        }
        x
    }

    /// `f̃(w)ᵀf̃(w) = ‖w‖²I` as a polynomial identity in `w`.
    pub fn is_norm_multiplicative(&self) -> bool {
        let id = QMatrix::identity(self.p_plus_1);
        let b = &self.basis;
        (0..b.len()).all(|i| {
            b[i].transpose().mul(&b[i]) == id
                && (0..i).all(|j| b[i].transpose().mul(&b[j]).add(&b[j].transpose().mul(&b[i])).is_zero())
        })
    }
}

/// Whether every nonzero `X ∈ W` is injective on `R^{p+1}`, i.e.
/// `a(W) ∩ a(H) = {0}`. Decided exactly for norm-multiplicative `W`;
/// otherwise a rank-deficient element is searched for among basis
/// vectors, pairwise sums and seeded integer combinations, and the
/// question is reported undecided if none is found.
pub fn check_w_proper(w: &TangentSubspace, seed: u64) -> Result<bool> {
    if w.is_norm_multiplicative() {
        return Ok(true);
    }
    let full = |x: &QMatrix| x.rank() == w.p_plus_1;
    let q = w.q;
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for i in 0..q {
        for j in i..q {
            for s in [1, -1] {
                let mut c = vec![Rat::zero(); q];
                c[i] += Rat::one();
                c[j] += int(s);
                candidates.push(c);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        candidates.push((0..q).map(|_| int(rng.gen_range(-3..=3))).collect());
    }
    for c in candidates {
        if c.iter().all(Zero::is_zero) {
            continue;
        }
        if !full(&w.element(&c)) {
            return Ok(false);
        }
    }
    Err(Error::Unsupported("properness of a non norm-multiplicative W is undecided".into()))
}

/// `a(W)` for a norm-multiplicative `W`: every `f̃(w)` has all singular
/// values equal to `‖w‖`, so `a(W) = R(1,…,1)` up to the Weyl group.
pub fn motion_cone_a(w: &TangentSubspace) -> Result<ConeSet> {
    if w.q == 0 || w.basis.iter().all(QMatrix::is_zero) {
        return Ok(ConeSet::zero(w.p_plus_1));
    }
    if !w.is_norm_multiplicative() {
        return Err(Error::Unsupported("a(W) is only computed for norm-multiplicative W; use check_w_proper".into()));
    }
    ConeSet::lines(w.p_plus_1, Weyl::BC, &[vec![1; w.p_plus_1]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        let got: Vec<Option<u64>> = [0, 1, 2, 4, 8, 16, 3, 12, 32, 64].iter().map(|&q| rho(q)).collect();
        assert_eq!(got, vec![None, Some(1), Some(2), Some(4), Some(8), Some(9), Some(1), Some(4), Some(10), Some(12)]);
    }

    #[test]
    fn q2_is_complex_multiplication() {
        let om = build_orthogonal_multiplication(2).unwrap();
        assert_eq!(om.matrices[1].to_dense(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(build_orthogonal_multiplication(1).unwrap().matrices, vec![SignedPerm::identity(1)]);
    }

    #[test]
    fn hurwitz_equations() {
        for q in [1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 64] {
            let om = build_orthogonal_multiplication(q).unwrap();
            assert_eq!(om.p() as u64, rho(q).unwrap());
            assert!(om.identities_hold(), "q = {q}");
        }
    }

    #[test]
    fn two_square_identity() {
        let s = sum_of_squares_identity(2, 2).unwrap();
        assert_eq!(s.to_string(), "(x1^2 + x2^2)(y1^2 + y2^2) = (x1*y1 - x2*y2)^2 + (x1*y2 + x2*y1)^2");
        assert!(sum_of_squares_identity(9, 16).unwrap().verify());
        assert!(matches!(sum_of_squares_identity(10, 16), Err(Error::Existence(_))));
    }

    #[test]
    fn circle_field() {
        let v = vector_fields_on_sphere(2, 1).unwrap();
        let w = vec![crate::linalg::rat(3, 5), crate::linalg::rat(4, 5)];
        let z = v.eval(&w).unwrap();
        assert_eq!(z[0], vec![crate::linalg::rat(-4, 5), crate::linalg::rat(3, 5)]);
        assert!(vector_fields_on_sphere(3, 1).is_err());
    }

    #[test]
    fn properness() {
        let f = bilinear_map(4, 4).unwrap();
        let w = subspace_from_bilinear(&f).unwrap();
        assert!(check_w_proper(&w, 0).unwrap());
        assert_eq!(motion_cone_a(&w).unwrap().expanded().unwrap().len(), 8);
        let bad = BilinearMap::new(2, vec![QMatrix::from_i64(&[vec![1, 0], vec![0, 0]])]).unwrap();
        let w = subspace_from_bilinear(&bad).unwrap();
        assert!(!check_w_proper(&w, 0).unwrap());
    }
}
