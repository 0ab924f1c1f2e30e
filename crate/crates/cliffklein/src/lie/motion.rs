//! Cartan motion groups `K ⋉ V` with `K` orthogonal, and the decomposition
//! `g = s·w = w·s` into an elliptic part and a translation.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{project, QMatrix, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionElement {
    pub k: QMatrix,
    pub v: Vec<Rat>,
}

impl MotionElement {
    pub fn new(k: QMatrix, v: Vec<Rat>) -> Result<Self> {
        if k.rows() != v.len() || !k.is_orthogonal() {
            return Err(Error::Domain("motion element needs an orthogonal k acting on v".into()));
        }
        Ok(MotionElement { k, v })
    }

    pub fn identity(n: usize) -> Self {
        MotionElement { k: QMatrix::identity(n), v: vec![Rat::zero(); n] }
    }

    pub fn translation(v: Vec<Rat>) -> Self {
        MotionElement { k: QMatrix::identity(v.len()), v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// `(k₁,v₁)(k₂,v₂) = (k₁k₂, v₁ + k₁v₂)`
    pub fn mul(&self, o: &MotionElement) -> MotionElement {
        let kv = self.k.mul_vec(&o.v);
        MotionElement { k: self.k.mul(&o.k), v: self.v.iter().zip(kv).map(|(a, b)| a + b).collect() }
    }

    /// A point fixed by the affine map `x ↦ kx + v`, if there is one.
    /// Such an element is conjugate by a translation into `K`.
    pub fn fixed_point(&self) -> Option<Vec<Rat>> {
        let n = self.dim();
        let a = QMatrix::identity(n).sub(&self.k);
        let mut rows = a.to_rows();
        for (r, x) in rows.iter_mut().zip(&self.v) {
            r.push(x.clone());
        }
        let (red, piv) = QMatrix::from_rows_with_cols(rows, n + 1).rref();
        if piv.contains(&n) {
            return None;
        }
        let mut x = vec![Rat::zero(); n];
        for (i, &p) in piv.iter().enumerate() {
            x[p] = red[(i, n)].clone();
        }
        Some(x)
    }

    pub fn is_elliptic(&self) -> bool {
        self.fixed_point().is_some()
    }
}

impl fmt::Display for MotionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        write!(f, "k =\n{}v = ({})", self.k, v.join(", "))
    }
}

/// `g = (k,v)` splits as `s = (k, v₂)`, `w = (I, v₁)` with `v₁` the
/// orthogonal projection of `v` onto `ker(k - I)`.
pub fn jordan_decompose_motion(g: &MotionElement) -> Result<(MotionElement, MotionElement)> {
    if !g.k.is_orthogonal() {
        return Err(Error::Domain("k is not orthogonal".into()));
    }
    let n = g.dim();
    let fixed = QMatrix::identity(n).sub(&g.k).kernel();
    let v1 = project(&g.v, &fixed);
    let v2: Vec<Rat> = g.v.iter().zip(&v1).map(|(a, b)| a - b).collect();
    Ok((MotionElement { k: g.k.clone(), v: v2 }, MotionElement::translation(v1)))
}

/// Cayley transform `(I - A)(I + A)⁻¹` of a skew-symmetric rational matrix,
/// a rational rotation.
pub fn cayley(skew: &QMatrix) -> Result<QMatrix> {
    if skew.transpose() != skew.scale(&-Rat::one()) {
        return Err(Error::Domain("Cayley transform needs a skew-symmetric matrix".into()));
    }
    let n = skew.rows();
    let id = QMatrix::identity(n);
    let inv = id.add(skew).inverse().ok_or_else(|| Error::Domain("I + A is singular".into()))?;
    Ok(id.sub(skew).mul(&inv))
}
