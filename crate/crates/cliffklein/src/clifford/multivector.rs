use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{
    blade_product_sign, degree, reversion_sign, star_sign, t_flip_mask, v_k_mask, v_k_square_sign,
    Signature,
};
use crate::error::{Error, Result};
use crate::linalg::{int, QMatrix, Rat};

/// Sparse element of C(p,q) with exact rational coefficients.
///
/// Terms are kept in ascending mask order and never hold a zero coefficient,
/// so structural equality is equality in the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiVector {
    sig: Signature,
    terms: BTreeMap<u32, Rat>,
}

impl MultiVector {
    pub fn zero(sig: Signature) -> Self {
        MultiVector { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, c: Rat) -> Self {
        Self::blade(sig, 0, c)
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Rat::one())
    }

    pub fn blade(sig: Signature, mask: u32, c: Rat) -> Self {
        assert_eq!(mask & !sig.full_mask(), 0, "blade mask outside C{sig}");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        MultiVector { sig, terms }
    }

    pub fn unit_blade(sig: Signature, mask: u32) -> Self {
        Self::blade(sig, mask, Rat::one())
    }

    /// `v+i`, 1-based.
    pub fn plus(sig: Signature, i: u32) -> Self {
        Self::unit_blade(sig, sig.plus_bit(i))
    }

    /// `v-j`, 1-based.
    pub fn minus(sig: Signature, j: u32) -> Self {
        Self::unit_blade(sig, sig.minus_bit(j))
    }

    /// Generator number `k` in the ordered list, 0-based.
    pub fn generator(sig: Signature, k: u32) -> Self {
        Self::unit_blade(sig, 1 << k)
    }

    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (u32, Rat)>) -> Self {
        let mut mv = Self::zero(sig);
        for (m, c) in terms {
            mv.add_term(m, c);
        }
        mv
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &BTreeMap<u32, Rat> {
        &self.terms
    }

    pub fn coefficient(&self, mask: u32) -> Rat {
        self.terms.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term `(mask, c)` when this is a multiple of one blade.
    pub fn as_single_term(&self) -> Option<(u32, &Rat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    pub(crate) fn add_term(&mut self, mask: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.sig);
        }
        MultiVector { sig: self.sig, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn try_add(&self, other: &MultiVector) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiVector) -> Result<Self> {
        self.sig.check_same(&other.sig)?;
        let mut out = Self::zero(self.sig);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let s = blade_product_sign(&self.sig, *a, *b);
                let c = ca * cb;
                out.add_term(a ^ b, if s < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Applies a per-blade sign; used by all diagonal involutions.
    pub fn map_signs(&self, f: impl Fn(u32) -> i32) -> Self {
        MultiVector {
            sig: self.sig,
            terms: self.terms.iter().map(|(m, c)| (*m, if f(*m) < 0 { -c } else { c.clone() })).collect(),
        }
    }

    pub fn grade(&self, k: u32) -> Self {
        MultiVector {
            sig: self.sig,
            terms: self.terms.iter().filter(|(m, _)| degree(**m) == k).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        MultiVector {
            sig: self.sig,
            terms: self.terms.iter().filter(|(m, _)| degree(**m) % 2 == 0).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| degree(*m) % 2 == 0)
    }

    pub fn is_vector(&self) -> bool {
        self.terms.keys().all(|m| degree(*m) == 1)
    }

    /// Reversion `a ↦ ᵗa`.
    pub fn reversion(&self) -> Self {
        self.map_signs(reversion_sign)
    }

    /// Grade involution (the automorphism `T_{p,q}`).
    pub fn grade_involution(&self) -> Self {
        self.map_signs(|m| if degree(m) % 2 == 0 { 1 } else { -1 })
    }

    /// Star conjugation `a* = T_{0,q}(ᵗa)`.
    pub fn star(&self) -> Self {
        let sig = self.sig;
        self.map_signs(|m| star_sign(&sig, m))
    }

    /// `T_{l+,l-}`: flips the last `l+` plus- and last `l-` minus-generators.
    pub fn t_involution(&self, l_plus: u32, l_minus: u32) -> Result<Self> {
        let flip = t_flip_mask(&self.sig, l_plus, l_minus)?;
        Ok(self.map_signs(|m| if (m & flip).count_ones() % 2 == 0 { 1 } else { -1 }))
    }

    /// `Q(v)` for a grade-one element.
    pub fn quadratic_form(&self) -> Result<Rat> {
        if !self.is_vector() {
            return Err(Error::Domain("quadratic form needs a grade-1 element".into()));
        }
        Ok(self.try_mul(self)?.coefficient(0))
    }

    /// Symmetric form `⟨a,b⟩ = (ab + ba)/2` on grade-one elements.
    pub fn inner(&self, other: &MultiVector) -> Result<Rat> {
        if !self.is_vector() || !other.is_vector() {
            return Err(Error::Domain("inner product needs grade-1 elements".into()));
        }
        let s = self.try_mul(other)?.try_add(&other.try_mul(self)?)?;
        Ok(s.coefficient(0) / int(2))
    }

    /// Reflection `τ_v`. On vectors it is `a - 2⟨a,v⟩/Q(v) v`; on the whole
    /// algebra it is the automorphism `a ↦ v·â·v / Q(v)` with `â` the grade
    /// involution, which agrees with `-(1/Q(v)) v a v` on vectors.
    pub fn reflect(&self, v: &MultiVector) -> Result<Self> {
        self.sig.check_same(&v.sig)?;
        let qv = v.quadratic_form()?;
        if qv.is_zero() {
            return Err(Error::NullVector);
        }
        Ok(v.try_mul(&self.grade_involution())?.try_mul(v)?.scale(&qv.recip()))
    }

    /// Twisted conjugation `ρ(x)(a) = x a ᵗx` for `x` in the group and `a` a vector.
    pub fn rho(x: &MultiVector, a: &MultiVector) -> Result<Self> {
        if !x.is_even() || x.reversion().try_mul(x)? != Self::one(x.sig) {
            return Err(Error::Domain("rho needs an even x with ᵗx·x = 1".into()));
        }
        if !a.is_vector() {
            return Err(Error::Domain("rho acts on grade-1 elements".into()));
        }
        let out = x.try_mul(a)?.try_mul(&x.reversion())?;
        if !out.is_vector() {
            return Err(Error::Domain("ρ(x) does not preserve the vector space".into()));
        }
        Ok(out)
    }

    /// Matrix of `ρ(x)` on the generator basis (columns are images).
    pub fn rho_matrix(x: &MultiVector) -> Result<QMatrix> {
        let n = x.sig.n() as usize;
        let mut m = QMatrix::zeros(n, n);
        for k in 0..n {
            let img = Self::rho(x, &Self::generator(x.sig, k as u32))?;
            for (mask, c) in img.terms() {
                m[(mask.trailing_zeros() as usize, k)] = c.clone();
            }
        }
        Ok(m)
    }

    /// Membership in G(p,q): even with `ᵗa·a = 1`.
    pub fn is_in_group_g(&self) -> bool {
        self.is_even() && self.reversion().try_mul(self).map(|x| x == Self::one(self.sig)).unwrap_or(false)
    }

    /// Membership in `Aut(x) = {a : a*·x·a = x}`.
    pub fn preserves(&self, x: &MultiVector) -> bool {
        self.star().try_mul(x).and_then(|t| t.try_mul(self)).map(|t| &t == x).unwrap_or(false)
    }

    /// Whether this commutes with every generator.
    pub fn is_central(&self) -> bool {
        (0..self.sig.n()).all(|k| {
            let g = Self::generator(self.sig, k);
            self.try_mul(&g).ok() == g.try_mul(self).ok()
        })
    }

    /// Inverse of a single-blade element.
    pub fn blade_inverse(&self) -> Result<Self> {
        let (m, c) = self.as_single_term().ok_or_else(|| Error::Domain("not a single blade".into()))?;
        let sq = blade_product_sign(&self.sig, m, m);
        Ok(Self::blade(self.sig, m, c.recip() * int(sq as i64)))
    }

    pub fn max_abs_coefficient(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl Add for &MultiVector {
    type Output = MultiVector;
    fn add(self, rhs: &MultiVector) -> MultiVector {
        self.try_add(rhs).expect("signature mismatch in addition")
    }
}

impl Sub for &MultiVector {
    type Output = MultiVector;
    fn sub(self, rhs: &MultiVector) -> MultiVector {
        self.try_add(&-rhs).expect("signature mismatch in subtraction")
    }
}

impl Neg for &MultiVector {
    type Output = MultiVector;
    fn neg(self) -> MultiVector {
        self.scale(&int(-1))
    }
}

/// Geometric product. Panics on mismatched signatures; use [`MultiVector::try_mul`]
/// to get an error instead.
impl Mul for &MultiVector {
    type Output = MultiVector;
    fn mul(self, rhs: &MultiVector) -> MultiVector {
        self.try_mul(rhs).expect("signature mismatch in product")
    }
}

/// Distinguished blades.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialElement {
    VK(u32, u32),
    JPlus,
    JMinus,
    J,
}

impl SpecialElement {
    pub fn mask(&self, sig: &Signature) -> Result<u32> {
        match *self {
            SpecialElement::VK(kp, km) => v_k_mask(sig, kp, km),
            SpecialElement::JPlus => v_k_mask(sig, sig.p, 0),
            SpecialElement::JMinus => v_k_mask(sig, 0, sig.q),
            SpecialElement::J => v_k_mask(sig, sig.p, sig.q),
        }
    }

    pub fn element(&self, sig: Signature) -> Result<MultiVector> {
        Ok(MultiVector::unit_blade(sig, self.mask(&sig)?))
    }

    /// Square sign from the `ΔK mod 4` rule.
    pub fn square_sign(&self, sig: &Signature) -> Result<i32> {
        let (kp, km) = match *self {
            SpecialElement::VK(kp, km) => (kp, km),
            SpecialElement::JPlus => (sig.p, 0),
            SpecialElement::JMinus => (0, sig.q),
            SpecialElement::J => (sig.p, sig.q),
        };
        v_k_mask(sig, kp, km)?;
        Ok(v_k_square_sign(kp, km))
    }
}

/// Involutive automorphisms acting on multivectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InnerAutomorphism {
    Tau(MultiVector),
    T(u32, u32),
}

impl InnerAutomorphism {
    pub fn apply(&self, a: &MultiVector) -> Result<MultiVector> {
        match self {
            InnerAutomorphism::Tau(v) => a.reflect(v),
            InnerAutomorphism::T(lp, lm) => a.t_involution(*lp, *lm),
        }
    }

    /// Generator sign flips when the automorphism is diagonal on blades.
    pub fn flip_mask(&self, sig: &Signature) -> Result<Option<u32>> {
        match self {
            InnerAutomorphism::T(lp, lm) => Ok(Some(t_flip_mask(sig, *lp, *lm)?)),
            InnerAutomorphism::Tau(v) => match v.as_single_term() {
                Some((m, _)) if degree(m) == 1 => Ok(Some(m)),
                _ => Ok(None),
            },
        }
    }

    /// Basis of the fixed subalgebra: blades for diagonal involutions,
    /// otherwise a kernel basis of `aut - id` over the blade basis.
    pub fn fixed_subalgebra(&self, sig: Signature) -> Result<Vec<MultiVector>> {
        if let Some(flip) = self.flip_mask(&sig)? {
            return Ok((0..sig.dim() as u32)
                .filter(|m| (m & flip).count_ones() % 2 == 0)
                .map(|m| MultiVector::unit_blade(sig, m))
                .collect());
        }
        if sig.n() > 10 {
            return Err(Error::Resource("fixed subalgebra of a general reflection needs p+q ≤ 10".into()));
        }
        let dim = sig.dim();
        let mut m = QMatrix::zeros(dim, dim);
        for b in 0..dim as u32 {
            let img = self.apply(&MultiVector::unit_blade(sig, b))?;
            for (mask, c) in img.terms() {
                m[(*mask as usize, b as usize)] = c.clone();
            }
            m[(b as usize, b as usize)] -= Rat::one();
        }
        Ok(m.kernel()
            .into_iter()
            .map(|v| MultiVector::from_terms(sig, v.into_iter().enumerate().map(|(i, c)| (i as u32, c))))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn s(p: u32, q: u32) -> Signature {
        Signature::of(p, q)
    }

    #[test]
    fn generator_relations() {
        let g = s(2, 1);
        let e1 = MultiVector::plus(g, 1);
        assert_eq!(&e1 * &e1, MultiVector::one(g));
        let m = MultiVector::minus(g, 1);
        assert!((&(&e1 * &m) + &(&m * &e1)).is_zero());
        assert_eq!(&m * &m, MultiVector::scalar(g, int(-1)));
    }

    #[test]
    fn bivector_square_in_c11() {
        let g = s(1, 1);
        let x = &MultiVector::plus(g, 1) * &MultiVector::minus(g, 1);
        assert_eq!(&x * &x, MultiVector::one(g));
    }

    #[test]
    fn reversion_examples() {
        let g = s(3, 0);
        let b3 = MultiVector::unit_blade(g, 0b111);
        assert_eq!(b3.reversion(), -&b3);
        let b2 = MultiVector::unit_blade(g, 0b011);
        assert_eq!(b2.reversion(), -&b2);
        assert_eq!(MultiVector::one(g).reversion(), MultiVector::one(g));
    }

    #[test]
    fn star_examples() {
        let g = s(1, 2);
        assert_eq!(MultiVector::minus(g, 1).star(), -&MultiVector::minus(g, 1));
        assert_eq!(MultiVector::plus(g, 1).star(), MultiVector::plus(g, 1));
        // a = x + y v-1v-2 with x² + y² = 1
        let a = &MultiVector::scalar(g, rat(3, 5)) + &MultiVector::blade(g, 0b110, rat(4, 5));
        assert_eq!(&a.star() * &a, MultiVector::one(g));
    }

    #[test]
    fn t_involution_examples() {
        let g = s(1, 2);
        assert_eq!(MultiVector::minus(g, 2).t_involution(0, 1).unwrap(), -&MultiVector::minus(g, 2));
        assert_eq!(MultiVector::minus(g, 1).t_involution(0, 1).unwrap(), MultiVector::minus(g, 1));
        let x = MultiVector::unit_blade(g, 0b011);
        assert_eq!(x.t_involution(1, 2).unwrap(), x);
        assert_eq!(MultiVector::plus(g, 1).t_involution(1, 2).unwrap(), -&MultiVector::plus(g, 1));
        assert!(x.t_involution(2, 0).is_err());
    }

    #[test]
    fn reflection_examples() {
        let g = s(2, 0);
        let e1 = MultiVector::plus(g, 1);
        let e2 = MultiVector::plus(g, 2);
        assert_eq!(e1.reflect(&e1).unwrap(), -&e1);
        assert_eq!(e2.reflect(&e1).unwrap(), e2);
        let h = s(1, 1);
        let null = &MultiVector::plus(h, 1) - &MultiVector::minus(h, 1);
        assert_eq!(MultiVector::plus(h, 1).reflect(&null), Err(Error::NullVector));
    }

    #[test]
    fn reflection_is_multiplicative() {
        let g = s(2, 1);
        let v = &MultiVector::plus(g, 1) + &MultiVector::minus(g, 1).scale(&int(2));
        let a = &MultiVector::plus(g, 2) + &MultiVector::minus(g, 1);
        let b = &MultiVector::plus(g, 1) * &MultiVector::minus(g, 1);
        let lhs = (&a * &b).reflect(&v).unwrap();
        let rhs = &a.reflect(&v).unwrap() * &b.reflect(&v).unwrap();
        assert_eq!(lhs, rhs);
        // on vectors agrees with the Euclidean-style formula
        let qv = v.quadratic_form().unwrap();
        let lin = &a - &v.scale(&(int(2) * a.inner(&v).unwrap() / qv));
        assert_eq!(a.reflect(&v).unwrap(), lin);
    }

    #[test]
    fn rho_examples() {
        let g = s(2, 0);
        let e1 = MultiVector::plus(g, 1);
        assert_eq!(MultiVector::rho(&MultiVector::one(g), &e1).unwrap(), e1);
        let x = &e1 * &MultiVector::plus(g, 2);
        assert_eq!(MultiVector::rho(&x, &e1).unwrap(), -&e1);
        assert!(MultiVector::rho(&e1, &e1).is_err());
    }

    #[test]
    fn rho_hyperbolic_rotation() {
        // x = c + s·v+1v-1 with c² - s² = 1: ρ(x) has eigenvalues (c±s)²
        let g = s(1, 1);
        let (c, sh) = (rat(5, 4), rat(3, 4));
        let x = &MultiVector::scalar(g, c.clone()) + &MultiVector::blade(g, 0b11, sh.clone());
        assert!(x.is_in_group_g());
        let m = MultiVector::rho_matrix(&x).unwrap();
        let lam = (&c + &sh) * (&c + &sh);
        let shifted = m.sub(&QMatrix::identity(2).scale(&lam));
        assert_eq!(shifted.det(), int(0));
        let lam2 = (&c - &sh) * (&c - &sh);
        assert_eq!(m.sub(&QMatrix::identity(2).scale(&lam2)).det(), int(0));
        assert_eq!(m.det(), int(1));
    }

    #[test]
    fn group_membership() {
        let g = s(1, 1);
        assert!(MultiVector::one(g).is_in_group_g());
        assert!(!MultiVector::plus(g, 1).is_in_group_g());
    }

    #[test]
    fn special_elements() {
        assert_eq!(SpecialElement::VK(2, 0).square_sign(&s(2, 0)).unwrap(), -1);
        let v = SpecialElement::VK(2, 0).element(s(2, 0)).unwrap();
        assert_eq!(&v * &v, MultiVector::scalar(s(2, 0), int(-1)));
        let j = SpecialElement::J.element(s(1, 1)).unwrap();
        assert_eq!(&j * &j, MultiVector::one(s(1, 1)));
        let j12 = SpecialElement::J.element(s(1, 2)).unwrap();
        assert!(j12.is_central());
        assert_eq!(&j12 * &j12, MultiVector::scalar(s(1, 2), int(-1)));
    }

    #[test]
    fn fixed_subalgebras() {
        let b = InnerAutomorphism::T(0, 1).fixed_subalgebra(s(1, 1)).unwrap();
        assert_eq!(b, vec![MultiVector::one(s(1, 1)), MultiVector::plus(s(1, 1), 1)]);
        let g = s(2, 0);
        let tau1 = InnerAutomorphism::Tau(MultiVector::plus(g, 1));
        assert_eq!(tau1.fixed_subalgebra(g).unwrap(), vec![MultiVector::one(g), MultiVector::plus(g, 2)]);
        let even = InnerAutomorphism::T(2, 1).fixed_subalgebra(s(2, 1)).unwrap();
        assert_eq!(even.len(), 4);
        // a non-diagonal reflection still halves the dimension of the fixed part on E
        let v = &MultiVector::plus(g, 1) + &MultiVector::plus(g, 2);
        let fixed = InnerAutomorphism::Tau(v).fixed_subalgebra(g).unwrap();
        assert_eq!(fixed.len(), 2);
    }
}
