//! Algebra maps out of C(p,q), the isomorphism families built from them,
//! structure classification, and explicit real matrix models.

mod classify;
mod family;
mod rep;

pub use classify::{
    aut_j_dimension, classify_clifford, classify_group, CliffordClass, Ground, GroupClass, GroupFamily,
};
pub use family::{
    even_reduction, even_swap, eta_k, lambda_k, phi_k, tau, xi_l, EvenSwap, XiMorphism,
};
pub use rep::{base_isomorphism, build_real_rep, build_real_rep_capped, BaseIso, MatrixAlgebra, MAX_REP_GENERATORS};

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::clifford::tensor::{SignFlip, TensorAlgebra, TensorElement};
use crate::clifford::{MultiVector, Signature};
use crate::error::{Error, Result};
use crate::linalg::{int, modp, Rat};

/// Algebra homomorphism `C(source) → target`, fixed by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub name: String,
    source: Signature,
    target: TensorAlgebra,
    images: Vec<TensorElement>,
}

impl AlgebraMorphism {
    /// Validates the images against the defining relations of C(source).
    pub fn new(
        name: impl Into<String>,
        source: Signature,
        target: TensorAlgebra,
        images: Vec<TensorElement>,
    ) -> Result<Self> {
        let name = name.into();
        if images.len() != source.n() as usize {
            return Err(Error::Domain(format!("{name}: expected {} generator images", source.n())));
        }
        if let Some(bad) = images.iter().find(|e| e.algebra() != &target) {
            return Err(Error::SignatureMismatch(bad.algebra().to_string(), target.to_string()));
        }
        let one = TensorElement::one(target.clone());
        for (k, x) in images.iter().enumerate() {
            let want = one.scale(&int(source.generator_square(k as u32) as i64));
            if x.try_mul(x)? != want {
                return Err(Error::Domain(format!(
                    "{name}: image of {} does not square to {}",
                    source.generator_name(k as u32),
                    source.generator_square(k as u32)
                )));
            }
            for y in &images[..k] {
                if !x.try_mul(y)?.try_add(&y.try_mul(x)?)?.is_zero() {
                    return Err(Error::Domain(format!(
                        "{name}: image of {} fails to anticommute",
                        source.generator_name(k as u32)
                    )));
                }
            }
        }
        Ok(AlgebraMorphism { name, source, target, images })
    }

    /// Builds a map into a single Clifford algebra from multivector images.
    pub fn from_multivectors(name: impl Into<String>, source: Signature, images: Vec<MultiVector>) -> Result<Self> {
        let target = match images.first() {
            Some(x) => TensorAlgebra::single(x.sig()),
            None => TensorAlgebra::single(Signature::of(0, 0)),
        };
        let images = images.iter().map(TensorElement::from_multivector).collect();
        Self::new(name, source, target, images)
    }

    pub fn identity(sig: Signature) -> Self {
        let images = (0..sig.n()).map(|k| TensorElement::from_multivector(&MultiVector::generator(sig, k))).collect();
        AlgebraMorphism { name: "id".into(), source: sig, target: TensorAlgebra::single(sig), images }
    }

    pub fn source(&self) -> Signature {
        self.source
    }

    pub fn target(&self) -> &TensorAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[TensorElement] {
        &self.images
    }

    /// Image of generator number `k` (0-based).
    pub fn image(&self, k: u32) -> &TensorElement {
        &self.images[k as usize]
    }

    /// Image of a unit blade: the ascending product of generator images.
    pub fn apply_blade(&self, mask: u32) -> TensorElement {
        let mut out = TensorElement::one(self.target.clone());
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros();
            out = out.try_mul(&self.images[k as usize]).expect("images share the target");
            m &= m - 1;
        }
        out
    }

    pub fn apply(&self, a: &MultiVector) -> Result<TensorElement> {
        self.source.check_same(&a.sig())?;
        let mut out = TensorElement::zero(self.target.clone());
        for (m, c) in a.terms() {
            out = out.try_add(&self.apply_blade(*m).scale(c))?;
        }
        Ok(out)
    }

    /// Applies `next` to factor `idx` of the target.
    pub fn then(&self, idx: usize, next: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let slot = *self
            .target
            .factors
            .get(idx)
            .ok_or_else(|| Error::Domain(format!("no factor {idx} in {}", self.target)))?;
        slot.check_same(&next.source)?;
        let images: Vec<TensorElement> =
            self.images.iter().map(|x| x.map_factor(idx, |m| next.apply_blade(m), &next.target)).collect();
        let target = images.first().map(|x| x.algebra().clone()).unwrap_or_else(|| {
            let mut f = self.target.factors.clone();
            f.splice(idx..=idx, next.target.factors.iter().copied());
            TensorAlgebra { factors: f }
        });
        AlgebraMorphism::new(format!("{}∘{}", next.name, self.name), self.source, target, images)
    }

    /// Whether every generator image is a single term with coefficient ±1.
    pub fn is_monomial(&self) -> bool {
        self.images.iter().all(|x| x.as_single_term().is_some_and(|(_, c)| c.abs().is_one()))
    }

    /// Rank of the image, computed over a prime field on integer-scaled rows.
    /// A full rank there certifies full rank over Q.
    pub fn image_rank(&self) -> Result<usize> {
        if self.source.n() > 20 {
            return Err(Error::Resource("image rank needs p+q ≤ 20".into()));
        }
        let widths: Vec<u32> = self.target.factors.iter().map(Signature::n).collect();
        if widths.iter().sum::<u32>() > 40 {
            return Err(Error::Resource("target too large for a rank check".into()));
        }
        let ncols = 1usize << widths.iter().sum::<u32>();
        let mut rows = Vec::with_capacity(self.source.dim());
        for b in 0..self.source.dim() as u32 {
            let img = self.apply_blade(b);
            let den = img.terms().values().fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
            let mut row = Vec::with_capacity(img.terms().len());
            for (masks, c) in img.terms() {
                let mut col = 0usize;
                for (m, w) in masks.iter().zip(&widths) {
                    col = (col << w) | *m as usize;
                }
                let v = (c * Rat::from_integer(den.clone())).to_integer();
                let v = (v % num_bigint::BigInt::from(modp::PRIME)).to_i64().ok_or_else(|| {
                    Error::Resource("coefficient out of range".into())
                })?;
                row.push((col, v));
            }
            rows.push(row);
        }
        Ok(modp::rank_sparse(&rows, ncols))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.image_rank()? == self.source.dim())
    }

    pub fn is_bijective(&self) -> Result<bool> {
        Ok(self.target.dim() == self.source.dim() && self.is_injective()?)
    }

    /// `π(a*) = π(a)*` on every generator and on the listed blades.
    pub fn star_compatible_on(&self, blades: impl IntoIterator<Item = u32>) -> bool {
        let gens = (0..self.source.n()).map(|k| 1u32 << k);
        gens.chain(blades).all(|b| {
            let lhs = self.apply(&MultiVector::unit_blade(self.source, b).star());
            lhs.map(|l| l == self.apply_blade(b).star()).unwrap_or(false)
        })
    }

    /// Whether `π∘σ = σ'∘π` for the sign flips `σ` on the source (a generator
    /// mask) and `σ'` on the target. Both sides are homomorphisms, so agreement
    /// on generators suffices.
    pub fn transfers(&self, source_flip: u32, target_flip: &SignFlip) -> bool {
        (0..self.source.n()).all(|k| {
            let x = &self.images[k as usize];
            let lhs = if source_flip >> k & 1 == 1 { x.scale(&int(-1)) } else { x.clone() };
            lhs == x.flip(target_flip)
        })
    }

    /// Table `target blade ↦ (source blade, coefficient)` inverting a monomial map.
    pub fn inverse_table(&self) -> Result<HashMap<Vec<u32>, (u32, Rat)>> {
        if !self.is_monomial() {
            return Err(Error::Domain(format!("{} is not monomial", self.name)));
        }
        if self.source.n() > 20 {
            return Err(Error::Resource("inverse table needs p+q ≤ 20".into()));
        }
        let mut table = HashMap::with_capacity(self.source.dim());
        for b in 0..self.source.dim() as u32 {
            let img = self.apply_blade(b);
            let (masks, c) = img.as_single_term().expect("monomial images stay single terms");
            if table.insert(masks.clone(), (b, c.recip())).is_some() {
                return Err(Error::Domain(format!("{} is not injective", self.name)));
            }
        }
        Ok(table)
    }

    /// Preimage of an element in the image of a monomial map.
    pub fn preimage(&self, x: &TensorElement) -> Result<MultiVector> {
        if x.algebra() != &self.target {
            return Err(Error::SignatureMismatch(x.algebra().to_string(), self.target.to_string()));
        }
        let table = self.inverse_table()?;
        let mut out = MultiVector::zero(self.source);
        for (masks, c) in x.terms() {
            let (b, inv) = table
                .get(masks)
                .ok_or_else(|| Error::Domain(format!("{x} is outside the image of {}", self.name)))?;
            out = out.try_add(&MultiVector::blade(self.source, *b, c * inv))?;
        }
        Ok(out)
    }

    /// The target automorphism `π∘σ∘π⁻¹` for a bijective monomial map, when it
    /// is again a sign flip of generators.
    pub fn transferred_flip(&self, source_flip: u32) -> Result<Option<SignFlip>> {
        if self.target.dim() != self.source.dim() {
            return Err(Error::Domain(format!("{} is not bijective", self.name)));
        }
        let table = self.inverse_table()?;
        let mut flips = Vec::with_capacity(self.target.factors.len());
        for (f, sig) in self.target.factors.iter().enumerate() {
            let mut mask = 0;
            for k in 0..sig.n() {
                let mut key = vec![0u32; self.target.factors.len()];
                key[f] = 1 << k;
                let (b, _) = table[&key];
                if (b & source_flip).count_ones() % 2 == 1 {
                    mask |= 1 << k;
                }
            }
            flips.push(mask);
        }
        let flip = SignFlip { flips };
        Ok(self.transfers(source_flip, &flip).then_some(flip))
    }
}

impl std::fmt::Display for AlgebraMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: C{} → {}", self.name, self.source, self.target)?;
        for (k, x) in self.images.iter().enumerate() {
            writeln!(f, "  {} ↦ {}", self.source.generator_name(k as u32), x)?;
        }
        Ok(())
    }
}

/// Every blade mask of `sig` when small, otherwise `count` seeded samples.
pub fn blade_sample(sig: &Signature, count: usize, seed: u64) -> Vec<u32> {
    use rand::{Rng, SeedableRng};
    if sig.dim() <= count {
        return (0..sig.dim() as u32).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(0..sig.dim() as u32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_bijective_and_star_compatible() {
        let s = Signature::of(2, 1);
        let id = AlgebraMorphism::identity(s);
        assert!(id.is_bijective().unwrap());
        assert!(id.star_compatible_on(0..8));
        assert_eq!(id.transferred_flip(0b100).unwrap().unwrap().flips, vec![0b100]);
    }

    #[test]
    fn rejects_bad_relations() {
        let s = Signature::of(2, 0);
        let t = Signature::of(2, 0);
        let e1 = MultiVector::plus(t, 1);
        let err = AlgebraMorphism::from_multivectors("bad", s, vec![e1.clone(), e1]);
        assert!(matches!(err, Err(Error::Domain(_))));
        let m = Signature::of(0, 1);
        let err = AlgebraMorphism::from_multivectors("bad", Signature::of(1, 0), vec![MultiVector::minus(m, 1)]);
        assert!(err.is_err());
    }

    #[test]
    fn preimage_roundtrip() {
        let s = Signature::of(1, 1);
        let id = AlgebraMorphism::identity(s);
        let x = MultiVector::parse(s, "2*v+1v-1 - 1").unwrap();
        assert_eq!(id.preimage(&id.apply(&x).unwrap()).unwrap(), x);
    }
}
