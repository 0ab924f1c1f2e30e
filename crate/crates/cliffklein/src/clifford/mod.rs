//! Exact arithmetic in the Clifford algebra C(p,q).
//!
//! Generators are ordered `v+1, …, v+p, v-1, …, v-q`; a blade is a bitmask
//! over that list, with bit `i-1` for `v+i` and bit `p+j-1` for `v-j`.

mod multivector;
pub mod tensor;
mod text;

pub use multivector::{InnerAutomorphism, MultiVector, SpecialElement};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GENERATORS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub p: u32,
    pub q: u32,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if p + q > MAX_GENERATORS {
            return Err(Error::Resource(format!("C({p},{q}) exceeds {MAX_GENERATORS} generators")));
        }
        Ok(Signature { p, q })
    }

    /// Constructor for statically known small signatures.
    pub const fn of(p: u32, q: u32) -> Self {
        Signature { p, q }
    }

    pub fn n(&self) -> u32 {
        self.p + self.q
    }

    /// `2^{p+q}`, the dimension of C(p,q).
    pub fn dim(&self) -> usize {
        1usize << self.n()
    }

    pub fn full_mask(&self) -> u32 {
        low_bits(self.n())
    }

    pub fn plus_mask(&self) -> u32 {
        low_bits(self.p)
    }

    pub fn minus_mask(&self) -> u32 {
        low_bits(self.n()) & !low_bits(self.p)
    }

    /// Bit of `v+i` (1-based).
    pub fn plus_bit(&self, i: u32) -> u32 {
        assert!(i >= 1 && i <= self.p, "v+{i} out of range in C{self}");
        1 << (i - 1)
    }

    /// Bit of `v-j` (1-based).
    pub fn minus_bit(&self, j: u32) -> u32 {
        assert!(j >= 1 && j <= self.q, "v-{j} out of range in C{self}");
        1 << (self.p + j - 1)
    }

    /// Square of generator number `k` (0-based in the ordered list).
    pub fn generator_square(&self, k: u32) -> i32 {
        if k < self.p {
            1
        } else {
            -1
        }
    }

    /// The dual signature `(q,p)`.
    pub fn dual(&self) -> Signature {
        Signature { p: self.q, q: self.p }
    }

    /// `ΔM = p - q`.
    pub fn delta(&self) -> i64 {
        self.p as i64 - self.q as i64
    }

    /// Human label of generator number `k`, e.g. `v-2`.
    pub fn generator_name(&self, k: u32) -> String {
        if k < self.p {
            format!("v+{}", k + 1)
        } else {
            format!("v-{}", k - self.p + 1)
        }
    }

    pub fn check_same(&self, other: &Signature) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(self.to_string(), other.to_string()))
        }
    }
}

fn low_bits(k: u32) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// Number of transpositions needed to bring the word `a·b` into canonical order.
pub fn reorder_swaps(a: u32, b: u32) -> u32 {
    let mut a = a >> 1;
    let mut s = 0;
    while a != 0 {
        s += (a & b).count_ones();
        a >>= 1;
    }
    s
}

/// Sign of the canonical blade `a·b` in C(p,q): `a·b = sign · (a XOR b)`.
pub fn blade_product_sign(sig: &Signature, a: u32, b: u32) -> i32 {
    let neg = reorder_swaps(a, b) + (a & b & sig.minus_mask()).count_ones();
    if neg % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Degree (grade) of a blade.
pub fn degree(mask: u32) -> u32 {
    mask.count_ones()
}

/// `index(a) = #plus - #minus`.
pub fn index(sig: &Signature, mask: u32) -> i64 {
    (mask & sig.plus_mask()).count_ones() as i64 - (mask & sig.minus_mask()).count_ones() as i64
}

/// Number of shared generators `deg(a,b)`.
pub fn shared_degree(a: u32, b: u32) -> u32 {
    (a & b).count_ones()
}

/// Sign of reversion on a blade of degree `s`: `(-1)^{s(s-1)/2}`.
pub fn reversion_sign(mask: u32) -> i32 {
    let s = degree(mask);
    if (s * s.saturating_sub(1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of star conjugation on a blade: reversion, then a sign per minus-generator.
pub fn star_sign(sig: &Signature, mask: u32) -> i32 {
    let m = (mask & sig.minus_mask()).count_ones();
    reversion_sign(mask) * if m % 2 == 0 { 1 } else { -1 }
}

/// Mask flipped by `T_{l+,l-}`: the last `l+` plus- and last `l-` minus-generators.
pub fn t_flip_mask(sig: &Signature, l_plus: u32, l_minus: u32) -> Result<u32> {
    if l_plus > sig.p || l_minus > sig.q {
        return Err(Error::Domain(format!("T_({l_plus},{l_minus}) out of range in C{sig}")));
    }
    let plus = sig.plus_mask() & !low_bits(sig.p - l_plus);
    let minus = sig.minus_mask() & !low_bits(sig.p + sig.q - l_minus);
    Ok(plus | minus)
}

/// Mask of `V_K = v+1⋯v+k₊ v-1⋯v-k₋`.
pub fn v_k_mask(sig: &Signature, k_plus: u32, k_minus: u32) -> Result<u32> {
    if k_plus > sig.p || k_minus > sig.q {
        return Err(Error::Domain(format!("V_({k_plus},{k_minus}) out of range in C{sig}")));
    }
    Ok(low_bits(k_plus) | (low_bits(k_minus) << sig.p))
}

/// Square of the blade `V_K`, per `ΔK mod 4`: `+1` for 0,1 and `-1` for 2,3.
pub fn v_k_square_sign(k_plus: u32, k_minus: u32) -> i32 {
    match (k_plus as i64 - k_minus as i64).rem_euclid(4) {
        0 | 1 => 1,
        _ => -1,
    }
}

/// Blades spanning the Lie algebra of G(p,q): even blades with `rev(b) = -b`.
pub fn lie_algebra_basis_g(sig: &Signature) -> Vec<u32> {
    (0..sig.dim() as u32).filter(|&m| degree(m) % 4 == 2).collect()
}

/// Dimension of the non-compact part: basis blades fixed by star.
pub fn d_by_blades(sig: &Signature) -> usize {
    lie_algebra_basis_g(sig)
        .into_iter()
        .filter(|&m| (m & sig.minus_mask()).count_ones() % 2 == 1)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_and_bits() {
        let s = Signature::of(2, 3);
        assert_eq!(s.plus_mask(), 0b00011);
        assert_eq!(s.minus_mask(), 0b11100);
        assert_eq!(s.minus_bit(1), 0b00100);
        assert_eq!(t_flip_mask(&s, 1, 2).unwrap(), 0b11010);
        assert_eq!(v_k_mask(&s, 1, 2).unwrap(), 0b01101);
        assert!(t_flip_mask(&s, 3, 0).is_err());
    }

    #[test]
    fn product_sign_basics() {
        let s = Signature::of(1, 1);
        // v-1 · v-1 = -1
        assert_eq!(blade_product_sign(&s, 0b10, 0b10), -1);
        // v-1 · v+1 = -v+1 v-1
        assert_eq!(blade_product_sign(&s, 0b10, 0b01), -1);
        assert_eq!(blade_product_sign(&s, 0b01, 0b10), 1);
    }

    #[test]
    fn lie_dimensions() {
        assert_eq!(lie_algebra_basis_g(&Signature::of(1, 1)), vec![0b11]);
        assert_eq!(d_by_blades(&Signature::of(1, 1)), 1);
        assert_eq!(lie_algebra_basis_g(&Signature::of(1, 8)).len(), 120);
        assert_eq!(d_by_blades(&Signature::of(1, 8)), 64);
        assert_eq!(lie_algebra_basis_g(&Signature::of(0, 0)).len(), 0);
    }

    #[test]
    fn signature_bound() {
        assert!(Signature::new(20, 11).is_err());
        assert!(Signature::new(15, 15).is_ok());
    }
}
