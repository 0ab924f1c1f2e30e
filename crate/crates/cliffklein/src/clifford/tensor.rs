//! Ungraded tensor products `C(M₁)⊗⋯⊗C(M_k)` of Clifford algebras.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::text::blade_word;
use super::{blade_product_sign, star_sign, MultiVector, Signature};
use crate::error::{Error, Result};
use crate::linalg::{int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorAlgebra {
    pub factors: Vec<Signature>,
}

impl TensorAlgebra {
    pub fn single(sig: Signature) -> Self {
        TensorAlgebra { factors: vec![sig] }
    }

    pub fn pair(a: Signature, b: Signature) -> Self {
        TensorAlgebra { factors: vec![a, b] }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Signature::dim).product()
    }

    pub fn as_single(&self) -> Option<Signature> {
        (self.factors.len() == 1).then(|| self.factors[0])
    }
}

impl fmt::Display for TensorAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|s| format!("C{s}")).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// Element of a tensor product, keyed by one blade mask per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    alg: TensorAlgebra,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl TensorElement {
    pub fn zero(alg: TensorAlgebra) -> Self {
        TensorElement { alg, terms: BTreeMap::new() }
    }

    pub fn one(alg: TensorAlgebra) -> Self {
        let k = alg.factors.len();
        Self::term(alg, vec![0; k], Rat::one())
    }

    pub fn term(alg: TensorAlgebra, masks: Vec<u32>, c: Rat) -> Self {
        assert_eq!(masks.len(), alg.factors.len());
        for (m, s) in masks.iter().zip(&alg.factors) {
            assert_eq!(m & !s.full_mask(), 0, "mask outside C{s}");
        }
        let mut e = Self::zero(alg);
        e.add_term(masks, c);
        e
    }

    /// Unit blade `b₁⊗⋯⊗b_k`.
    pub fn unit(alg: TensorAlgebra, masks: Vec<u32>) -> Self {
        Self::term(alg, masks, Rat::one())
    }

    pub fn from_multivector(a: &MultiVector) -> Self {
        let alg = TensorAlgebra::single(a.sig());
        let mut e = Self::zero(alg);
        for (m, c) in a.terms() {
            e.add_term(vec![*m], c.clone());
        }
        e
    }

    pub fn to_multivector(&self) -> Result<MultiVector> {
        let sig = self.alg.as_single().ok_or_else(|| Error::Domain("not a single Clifford algebra".into()))?;
        Ok(MultiVector::from_terms(sig, self.terms.iter().map(|(m, c)| (m[0], c.clone()))))
    }

    pub fn algebra(&self) -> &TensorAlgebra {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_single_term(&self) -> Option<(&Vec<u32>, &Rat)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    fn add_term(&mut self, masks: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(masks.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&masks);
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = Self::zero(self.alg.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn try_add(&self, other: &TensorElement) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &TensorElement) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.alg.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut sign = 1;
                let mut masks = Vec::with_capacity(a.len());
                for ((x, y), s) in a.iter().zip(b).zip(&self.alg.factors) {
                    sign *= blade_product_sign(s, *x, *y);
                    masks.push(x ^ y);
                }
                out.add_term(masks, ca * cb * int(sign as i64));
            }
        }
        Ok(out)
    }

    fn check_same(&self, other: &TensorElement) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.alg.to_string(), other.alg.to_string()))
        }
    }

    /// Star conjugation applied factorwise.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(self.alg.clone());
        for (m, c) in &self.terms {
            let s: i32 = m.iter().zip(&self.alg.factors).map(|(x, sig)| star_sign(sig, *x)).product();
            out.add_term(m.clone(), c * int(s as i64));
        }
        out
    }

    /// Applies a factorwise sign-flip automorphism.
    pub fn flip(&self, f: &SignFlip) -> Self {
        let mut out = Self::zero(self.alg.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * int(f.sign(m) as i64));
        }
        out
    }

    /// Replaces factor `idx` by the image algebra of `map`, expanding every term.
    pub fn map_factor(&self, idx: usize, map: impl Fn(u32) -> TensorElement, image: &TensorAlgebra) -> Self {
        let mut factors = self.alg.factors[..idx].to_vec();
        factors.extend_from_slice(&image.factors);
        factors.extend_from_slice(&self.alg.factors[idx + 1..]);
        let alg = TensorAlgebra { factors };
        let mut out = Self::zero(alg);
        for (m, c) in &self.terms {
            let img = map(m[idx]);
            for (im, ic) in img.terms() {
                let mut masks = m[..idx].to_vec();
                masks.extend_from_slice(im);
                masks.extend_from_slice(&m[idx + 1..]);
                out.add_term(masks, c * ic);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let words: Vec<String> = m
                .iter()
                .zip(&self.alg.factors)
                .map(|(x, s)| if *x == 0 { "1".to_string() } else { blade_word(s, *x) })
                .collect();
            write!(f, "{}", words.join("⊗"))?;
        }
        Ok(())
    }
}

/// Automorphism of a tensor product flipping the signs of chosen generators
/// in each factor; `τ_i^±`, `T_L` and their tensor products are all of this form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignFlip {
    pub flips: Vec<u32>,
}

impl SignFlip {
    pub fn identity(alg: &TensorAlgebra) -> Self {
        SignFlip { flips: vec![0; alg.factors.len()] }
    }

    pub fn sign(&self, masks: &[u32]) -> i32 {
        let n: u32 = masks.iter().zip(&self.flips).map(|(m, f)| (m & f).count_ones()).sum();
        if n % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_multiply_independently() {
        let alg = TensorAlgebra::pair(Signature::of(1, 1), Signature::of(0, 1));
        let a = TensorElement::unit(alg.clone(), vec![0b10, 0b1]);
        let sq = a.try_mul(&a).unwrap();
        // (v-1)² ⊗ (v-1)² = (-1)(-1)
        assert_eq!(sq, TensorElement::one(alg));
    }

    #[test]
    fn map_factor_expands() {
        let alg = TensorAlgebra::pair(Signature::of(1, 0), Signature::of(2, 0));
        let x = TensorElement::unit(alg, vec![1, 0b10]);
        let image = TensorAlgebra::pair(Signature::of(1, 0), Signature::of(1, 0));
        let y = x.map_factor(1, |m| TensorElement::unit(image.clone(), vec![m & 1, m >> 1]), &image);
        assert_eq!(y.algebra().factors.len(), 3);
        assert_eq!(y.terms().keys().next().unwrap(), &vec![1, 0, 1]);
    }

    #[test]
    fn display() {
        let alg = TensorAlgebra::pair(Signature::of(1, 1), Signature::of(2, 0));
        let x = TensorElement::term(alg, vec![0b11, 0b01], int(-1));
        assert_eq!(x.to_string(), "-v+1v-1⊗v+1");
    }
}
