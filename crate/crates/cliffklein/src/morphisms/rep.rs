//! Exact real matrix models of C(p,q), built by composing φ maps down to
//! the five base isomorphisms and taking Kronecker products.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::clifford::{MultiVector, Signature};
use crate::error::{Error, Result};
use crate::linalg::{fmt_rat, int, modp, QMatrix, SignedPerm};

use super::classify::{classify_clifford, CliffordClass};
use super::family::phi_k;

/// Largest `p+q` accepted by [`build_real_rep`].
pub const MAX_REP_GENERATORS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseIso {
    Psi01,
    Psi10,
    Psi02,
    Psi11,
    Psi20,
}

impl BaseIso {
    pub const ALL: [BaseIso; 5] = [BaseIso::Psi01, BaseIso::Psi10, BaseIso::Psi02, BaseIso::Psi11, BaseIso::Psi20];

    pub fn signature(self) -> Signature {
        match self {
            BaseIso::Psi01 => Signature::of(0, 1),
            BaseIso::Psi10 => Signature::of(1, 0),
            BaseIso::Psi02 => Signature::of(0, 2),
            BaseIso::Psi11 => Signature::of(1, 1),
            BaseIso::Psi20 => Signature::of(2, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BaseIso::Psi01 => "ψ01",
            BaseIso::Psi10 => "ψ10",
            BaseIso::Psi02 => "ψ02",
            BaseIso::Psi11 => "ψ11",
            BaseIso::Psi20 => "ψ20",
        }
    }
}

impl FromStr for BaseIso {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches("psi").trim_start_matches('ψ');
        match t {
            "01" => Ok(BaseIso::Psi01),
            "10" => Ok(BaseIso::Psi10),
            "02" => Ok(BaseIso::Psi02),
            "11" => Ok(BaseIso::Psi11),
            "20" => Ok(BaseIso::Psi20),
            _ => Err(Error::Parse(format!("unknown base isomorphism {s:?}"))),
        }
    }
}

fn sp(row: &[u32], sign: &[i8]) -> SignedPerm {
    SignedPerm::new(row.to_vec(), sign.to_vec())
}

fn sigma_z() -> SignedPerm {
    sp(&[0, 1], &[1, -1])
}

fn sigma_x() -> SignedPerm {
    sp(&[1, 0], &[1, 1])
}

/// `[[0,-1],[1,0]]`
fn rot() -> SignedPerm {
    sp(&[1, 0], &[1, -1])
}

fn base_generators(b: BaseIso) -> Vec<SignedPerm> {
    match b {
        BaseIso::Psi01 => vec![rot()],
        BaseIso::Psi10 => vec![sigma_z()],
        // left multiplication by i and j on the basis 1, i, j, k of H
        BaseIso::Psi02 => vec![sp(&[1, 0, 3, 2], &[1, -1, 1, -1]), sp(&[2, 3, 0, 1], &[1, -1, -1, 1])],
        BaseIso::Psi11 => vec![sigma_z(), rot()],
        BaseIso::Psi20 => vec![sigma_z(), sigma_x()],
    }
}

/// Generator images of C(p,q) as real matrices, with the structure of
/// C(p,q) carried symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    sig: Signature,
    class: CliffordClass,
    size: usize,
    generators: Vec<SignedPerm>,
}

pub fn base_isomorphism(b: BaseIso) -> MatrixAlgebra {
    let sig = b.signature();
    let generators = base_generators(b);
    let size = generators[0].size();
    MatrixAlgebra { sig, class: classify_clifford(sig), size, generators }
}

fn blade_of(gens: &[SignedPerm], size: usize, mask: u32) -> SignedPerm {
    let mut out = SignedPerm::identity(size);
    let mut m = mask;
    while m != 0 {
        out = out.mul(&gens[m.trailing_zeros() as usize]);
        m &= m - 1;
    }
    out
}

fn rep_generators(sig: Signature) -> Result<(usize, Vec<SignedPerm>)> {
    let (p, q) = (sig.p, sig.q);
    let base = match (p, q) {
        (0, 0) => return Ok((1, vec![])),
        (1, 0) => Some(BaseIso::Psi10),
        (0, 1) => Some(BaseIso::Psi01),
        (0, 2) => Some(BaseIso::Psi02),
        _ => None,
    };
    if let Some(b) = base {
        let g = base_generators(b);
        return Ok((g[0].size(), g));
    }
    let (kp, km) = match (p, q) {
        (0, 3) => (0, 2),
        (0, _) => (0, 3),
        (_, 0) => (1, 0),
        _ => (1, 1),
    };
    let phi = phi_k(sig, kp, km)?;
    let factors: Vec<(usize, Vec<SignedPerm>)> = phi
        .target()
        .factors
        .iter()
        .map(|s| if *s == Signature::of(1, 1) { Ok((2, base_generators(BaseIso::Psi11))) } else { rep_generators(*s) })
        .collect::<Result<_>>()?;
    let size = factors.iter().map(|f| f.0).product();
    let mut gens = Vec::with_capacity(sig.n() as usize);
    for img in phi.images() {
        let (masks, c) = img
            .as_single_term()
            .ok_or_else(|| Error::Domain(format!("{}: image is not a monomial", phi.name)))?;
        let mut m = SignedPerm::identity(1);
        for ((size, gens), mask) in factors.iter().zip(masks) {
            m = m.kron(&blade_of(gens, *size, *mask));
        }
        gens.push(if c < &Zero::zero() { m.neg() } else { m });
    }
    Ok((size, gens))
}

/// Real matrix model of C(p,q) of size `n·dim_R F` (twice that for a double).
pub fn build_real_rep(sig: Signature) -> Result<MatrixAlgebra> {
    build_real_rep_capped(sig, MAX_REP_GENERATORS)
}

/// As [`build_real_rep`] with a caller-chosen cap on `p+q`.
pub fn build_real_rep_capped(sig: Signature, max_generators: u32) -> Result<MatrixAlgebra> {
    let cap = max_generators.min(MAX_REP_GENERATORS);
    if sig.n() > cap {
        return Err(Error::Resource(format!("real model of C{sig} exceeds the cap p+q ≤ {cap}")));
    }
    let (size, generators) = rep_generators(sig)?;
    let class = classify_clifford(sig);
    debug_assert_eq!(size, class.real_size());
    Ok(MatrixAlgebra { sig, class, size, generators })
}

impl MatrixAlgebra {
    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn class(&self) -> CliffordClass {
        self.class
    }

    /// Side length `N` of the real matrices.
    pub fn real_size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn generator(&self, k: u32) -> &SignedPerm {
        &self.generators[k as usize]
    }

    /// Image of a unit blade, as an ascending product of generator images.
    pub fn blade_image(&self, mask: u32) -> SignedPerm {
        blade_of(&self.generators, self.size, mask)
    }

    pub fn apply(&self, a: &MultiVector) -> Result<QMatrix> {
        self.sig.check_same(&a.sig())?;
        let mut out = QMatrix::zeros(self.size, self.size);
        for (m, c) in a.terms() {
            out = out.add(&self.blade_image(*m).to_qmatrix().scale(c));
        }
        Ok(out)
    }

    /// Image of `J = J₊J₋`, the full pseudoscalar.
    pub fn j_image(&self) -> SignedPerm {
        self.blade_image(self.sig.full_mask())
    }

    /// Squares and anticommutators of the generator images, checked exactly.
    pub fn relations_hold(&self) -> bool {
        self.generators.iter().enumerate().all(|(k, g)| {
            let sq = g.mul(g);
            let ok = if self.sig.generator_square(k as u32) > 0 { sq.is_identity() } else { sq.is_neg_identity() };
            ok && self.generators[..k].iter().all(|h| g.mul(h).anticommutes_sum_zero(&h.mul(g)))
        })
    }

    /// Every non-scalar blade image is traceless. Blade images are signed
    /// permutations squaring to ±1, so `tr(A_bᵀA_c) = ±tr(A_{b⊕c})` and the
    /// Frobenius Gram matrix of all blade images is `N·I`; hence the span
    /// has full rank `2^{p+q}`.
    pub fn trace_certificate(&self) -> Result<bool> {
        if self.sig.n() > 16 {
            return Err(Error::Resource("trace certificate needs p+q ≤ 16".into()));
        }
        let n = self.generators.len();
        let mut stack: Vec<(usize, SignedPerm)> = vec![(0, SignedPerm::identity(self.size))];
        let mut first = true;
        while let Some((next, m)) = stack.pop() {
            if !first && m.trace() != 0 {
                return Ok(false);
            }
            first = false;
            for k in next..n {
                stack.push((k + 1, m.mul(&self.generators[k])));
            }
        }
        Ok(true)
    }

    /// Rank of the span of all blade images, over GF(2^61 - 1).
    pub fn span_rank(&self) -> Result<usize> {
        if self.sig.n() > 12 {
            return Err(Error::Resource("span rank needs p+q ≤ 12; use the trace certificate".into()));
        }
        let nn = self.size;
        let rows: Vec<Vec<(usize, i64)>> = (0..self.sig.dim() as u32)
            .map(|b| {
                let m = self.blade_image(b);
                (0..nn).flat_map(|c| (0..nn).map(move |r| (r, c))).filter_map(|(r, c)| {
                    let e = m.entry(r, c);
                    (e != 0).then_some((r * nn + c, e))
                }).collect()
            })
            .collect();
        Ok(modp::rank_sparse(&rows, nn * nn))
    }

    /// Permutation `i ↦ (i&1)·N/2 + (i>>1)` that gathers the two simple
    /// ideals of a double into diagonal blocks. The `C(1,0)` factor sits at
    /// the finest Kronecker index, so its idempotents split by parity.
    fn double_relabel(&self) -> Vec<usize> {
        let h = self.size / 2;
        (0..self.size).map(|i| (i & 1) * h + (i >> 1)).collect()
    }

    /// Generators of an irreducible module: the whole model when C(p,q) is
    /// simple, the leading block of a double.
    pub fn irreducible_generators(&self) -> Result<Vec<SignedPerm>> {
        if !self.class.double {
            return Ok(self.generators.clone());
        }
        let perm = self.double_relabel();
        let h = self.size / 2;
        self.generators
            .iter()
            .map(|g| {
                g.relabel(&perm)
                    .leading_block(h)
                    .ok_or_else(|| Error::Domain(format!("model of C{} is not block diagonal", self.sig)))
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generators
            .iter()
            .map(|g| {
                let rows: Vec<Vec<String>> =
                    g.to_dense().iter().map(|r| r.iter().map(|&x| fmt_rat(&int(x))).collect()).collect();
                json!(rows)
            })
            .collect();
        json!({
            "n": self.size,
            "ground": self.class.ground.symbol(),
            "double": self.class.double,
            "generators": gens,
        })
    }
}

impl fmt::Display for MatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "C{} ≅ {} (real size {})", self.sig, self.class, self.size)?;
        for (k, g) in self.generators.iter().enumerate() {
            writeln!(f, "{} ↦", self.sig.generator_name(k as u32))?;
            for row in g.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi11_display() {
        let m = base_isomorphism(BaseIso::Psi11);
        assert_eq!(m.generator(0).to_dense(), vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(m.generator(1).to_dense(), vec![vec![0, -1], vec![1, 0]]);
        assert!(m.relations_hold());
    }

    #[test]
    fn bases_satisfy_relations() {
        for b in BaseIso::ALL {
            assert!(base_isomorphism(b).relations_hold(), "{}", b.name());
        }
    }

    #[test]
    fn sizes_are_minimal_real_models() {
        for p in 0..=7 {
            for q in 0..=7 {
                let s = Signature::of(p, q);
                let m = build_real_rep(s).unwrap();
                assert_eq!(m.real_size(), m.class().real_size(), "C{s}");
                assert!(m.relations_hold(), "C{s}");
            }
        }
    }

    #[test]
    fn full_rank_small() {
        for p in 0..=4 {
            for q in 0..=4 {
                let m = build_real_rep(Signature::of(p, q)).unwrap();
                assert_eq!(m.span_rank().unwrap(), 1 << (p + q));
                assert!(m.trace_certificate().unwrap());
            }
        }
    }

    #[test]
    fn doubles_split() {
        for (p, q) in [(1, 0), (0, 3), (2, 1), (0, 7), (4, 3), (5, 0)] {
            let m = build_real_rep(Signature::of(p, q)).unwrap();
            assert!(m.class().double);
            let irr = m.irreducible_generators().unwrap();
            assert_eq!(irr[0].size(), m.real_size() / 2);
        }
    }

    #[test]
    fn cap() {
        assert!(matches!(build_real_rep(Signature::of(11, 10)), Err(Error::Resource(_))));
        assert!(build_real_rep_capped(Signature::of(3, 3), 5).is_err());
    }

    #[test]
    fn json_shape() {
        let v = build_real_rep(Signature::of(0, 1)).unwrap().to_json();
        assert_eq!(v["n"], 2);
        assert_eq!(v["ground"], "C");
        assert_eq!(v["generators"][0][0][1], "-1");
    }
}
