//! Structure of C(p,q) and G(p,q) by congruence class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::clifford::{blade_product_sign, degree, star_sign, v_k_mask, Signature};
use crate::error::{Error, Result};
use crate::lie::{Family, GroupDescriptor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ground {
    R,
    C,
    H,
}

impl Ground {
    /// Real dimension of the ground field.
    pub fn real_dim(self) -> usize {
        match self {
            Ground::R => 1,
            Ground::C => 2,
            Ground::H => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Ground::R => "R",
            Ground::C => "C",
            Ground::H => "H",
        }
    }
}

/// `C(p,q) ≅ M(n,F)` or `M(n,F)⊕M(n,F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliffordClass {
    pub ground: Ground,
    pub n: u64,
    pub double: bool,
    pub alpha: u32,
}

impl CliffordClass {
    /// Size of the real matrix model: `n·dim_R F`, doubled for a double.
    pub fn real_size(&self) -> usize {
        self.n as usize * self.ground.real_dim() * if self.double { 2 } else { 1 }
    }
}

impl fmt::Display for CliffordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = format!("M({},{})", self.n, self.ground.symbol());
        if self.double {
            write!(f, "{m}⊕{m}")
        } else {
            write!(f, "{m}")
        }
    }
}

pub fn classify_clifford(sig: Signature) -> CliffordClass {
    let r = (sig.p as i64 - sig.q as i64 - 1).rem_euclid(8);
    let (ground, double, alpha) = match r {
        0 => (Ground::R, true, 1),
        1 | 7 => (Ground::R, false, 0),
        2 | 6 => (Ground::C, false, 1),
        3 | 5 => (Ground::H, false, 2),
        _ => (Ground::H, true, 3),
    };
    CliffordClass { ground, n: 1 << ((sig.n() - alpha) / 2), double, alpha }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupFamily {
    /// `O(m,m)`
    OSplit,
    /// `GL(m,R)`
    GLR,
    /// `Sp(m,R)`
    SpR,
    /// `O(m,C)`
    OC,
    /// `U(m,m)`
    USplit,
    /// `Sp(m,C)`
    SpC,
    /// `O*(m)`
    OStar,
    /// `Sp(m,m)`
    SpSplit,
    /// `GL(m,H)`
    GLH,
    /// compact `O(m)`
    O,
    /// compact `U(m)`
    U,
    /// compact `Sp(m)`
    Sp,
}

/// A classical group `X(m)` or `X(m)²` naming G(p,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupClass {
    pub family: GroupFamily,
    pub m: u64,
    pub squared: bool,
}

impl GroupClass {
    fn new(family: GroupFamily, m: u64, squared: bool) -> Self {
        GroupClass { family, m, squared }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        let m = self.m as u32;
        let f = match self.family {
            GroupFamily::OSplit => Family::O(m, m),
            GroupFamily::GLR => Family::GLR(m),
            GroupFamily::SpR => Family::SpR(m),
            GroupFamily::OC => Family::OC(m),
            GroupFamily::USplit => Family::U(m, m),
            GroupFamily::SpC => Family::SpC(m),
            GroupFamily::OStar => Family::OStar(m / 2),
            GroupFamily::SpSplit => Family::Sp(m, m),
            GroupFamily::GLH => Family::GLH(m),
            GroupFamily::O => Family::O(m, 0),
            GroupFamily::U => Family::U(m, 0),
            GroupFamily::Sp => Family::Sp(m, 0),
        };
        let g = GroupDescriptor::single(f);
        if self.squared {
            g.squared()
        } else {
            g
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.m;
        let base = match self.family {
            GroupFamily::OSplit => format!("O({m},{m})"),
            GroupFamily::GLR => format!("GL({m},R)"),
            GroupFamily::SpR => format!("Sp({m},R)"),
            GroupFamily::OC => format!("O({m},C)"),
            GroupFamily::USplit => format!("U({m},{m})"),
            GroupFamily::SpC => format!("Sp({m},C)"),
            GroupFamily::OStar => format!("O*({m})"),
            GroupFamily::SpSplit => format!("Sp({m},{m})"),
            GroupFamily::GLH => format!("GL({m},H)"),
            GroupFamily::O => format!("O({m})"),
            GroupFamily::U => format!("U({m})"),
            GroupFamily::Sp => format!("Sp({m})"),
        };
        if self.squared {
            write!(f, "{base}²")
        } else {
            write!(f, "{base}")
        }
    }
}

/// Compact groups `G(0,k) ≅ G(k,0)` for `k ≤ 8`.
fn compact_row(k: u32) -> Result<GroupClass> {
    use GroupFamily::*;
    let (f, m, sq) = match k {
        0 | 1 => (O, 1, false),
        2 => (U, 1, false),
        3 => (Sp, 1, false),
        4 => (Sp, 1, true),
        5 => (Sp, 2, false),
        6 => (U, 4, false),
        7 => (O, 8, false),
        8 => (O, 8, true),
        _ => return Err(Error::Unsupported(format!("G(0,{k}) is tabulated only up to 8 generators"))),
    };
    Ok(GroupClass::new(f, m, sq))
}

/// G(p,q) by the congruences of `p-q` and `p+q` mod 8; the compact row
/// `p·q = 0` is tabulated up to eight generators.
pub fn classify_group(sig: Signature) -> Result<GroupClass> {
    use GroupFamily::*;
    let (p, q) = (sig.p, sig.q);
    if p == 0 || q == 0 {
        return compact_row(p.max(q));
    }
    if (p, q) == (1, 1) {
        return Ok(GroupClass::new(GLR, 1, false));
    }
    let diff = (p as i64 - q as i64).rem_euclid(8);
    let sum = ((p + q) % 8) as i64;
    let alpha = match diff {
        0 => 4,
        1 | 7 => 3,
        2 | 6 => 4,
        3 | 5 => 5,
        _ => 6,
    };
    let n = 1u64 << ((p + q - alpha) / 2);
    let sum_class = match sum {
        0 => 0,
        1 | 7 => 1,
        2 | 6 => 2,
        3 | 5 => 3,
        _ => 4,
    };
    let g = match (diff, sum_class) {
        (0, 0) => GroupClass::new(OSplit, n, true),
        (0, 2) => GroupClass::new(GLR, 2 * n, false),
        (0, 4) => GroupClass::new(SpR, n, true),
        (1 | 7, 1) => GroupClass::new(OSplit, n, false),
        (1 | 7, 3) => GroupClass::new(SpR, n, false),
        (2 | 6, 0) => GroupClass::new(OC, 2 * n, false),
        (2 | 6, 2) => GroupClass::new(USplit, n, false),
        (2 | 6, 4) => GroupClass::new(SpC, n, false),
        (3 | 5, 1) => GroupClass::new(OStar, 4 * n, false),
        (3 | 5, 3) => GroupClass::new(SpSplit, n, false),
        (4, 0) => GroupClass::new(OStar, 4 * n, true),
        (4, 2) => GroupClass::new(GLH, 2 * n, false),
        (4, 4) => GroupClass::new(SpSplit, n, true),
        _ => unreachable!("p-q and p+q have equal parity"),
    };
    Ok(g)
}

/// Dimension of `{X ∈ C_even : X*·J± + J±·X = 0}`, the Lie algebra of
/// `C_even ∩ Aut(J±)`, counted blade by blade. Each even blade `b` satisfies
/// `J b = c(b) b J` and `b* = s(b) b`, so it contributes iff `s(b) = -c(b)`.
pub fn aut_j_dimension(sig: &Signature, plus: bool) -> Result<usize> {
    if sig.n() > 24 {
        return Err(Error::Resource("Aut(J±) count needs p+q ≤ 24".into()));
    }
    let j = if plus { v_k_mask(sig, sig.p, 0)? } else { v_k_mask(sig, 0, sig.q)? };
    Ok((0..sig.dim() as u32)
        .filter(|&b| degree(b) % 2 == 0)
        .filter(|&b| {
            let c = blade_product_sign(sig, j, b) * blade_product_sign(sig, b, j);
            star_sign(sig, b) == -c
        })
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{d_by_blades, lie_algebra_basis_g};

    #[test]
    fn clifford_examples() {
        assert_eq!(classify_clifford(Signature::of(1, 1)).to_string(), "M(2,R)");
        assert_eq!(classify_clifford(Signature::of(0, 7)).to_string(), "M(8,R)⊕M(8,R)");
        assert_eq!(classify_clifford(Signature::of(8, 8)).to_string(), "M(256,R)");
        assert_eq!(classify_clifford(Signature::of(0, 0)).to_string(), "M(1,R)");
    }

    #[test]
    fn clifford_dimension_bookkeeping() {
        for p in 0..=10 {
            for q in 0..=10 {
                let c = classify_clifford(Signature::of(p, q));
                let n = c.n as usize;
                let dim = n * n * c.ground.real_dim() * if c.double { 2 } else { 1 };
                assert_eq!(dim, 1 << (p + q), "C({p},{q})");
            }
        }
    }

    #[test]
    fn group_examples() {
        assert_eq!(classify_group(Signature::of(1, 8)).unwrap().to_string(), "O(8,8)");
        assert_eq!(classify_group(Signature::of(2, 2)).unwrap().to_string(), "Sp(1,R)²");
        assert_eq!(classify_group(Signature::of(1, 7)).unwrap().to_string(), "O(8,C)");
        assert_eq!(classify_group(Signature::of(1, 1)).unwrap().to_string(), "GL(1,R)");
        assert!(classify_group(Signature::of(0, 9)).is_err());
    }

    #[test]
    fn aut_j_matches_lie_algebra() {
        for p in 0..=5 {
            for q in 0..=5 {
                let s = Signature::of(p, q);
                let want = lie_algebra_basis_g(&s).len();
                assert_eq!(aut_j_dimension(&s, true).unwrap(), want, "J+ on C{s}");
                assert_eq!(aut_j_dimension(&s, false).unwrap(), want, "J- on C{s}");
            }
        }
    }

    #[test]
    fn symbolic_dims_match_blades() {
        for p in 1..=6 {
            for q in 1..=6 {
                let s = Signature::of(p, q);
                let st = classify_group(s).unwrap().descriptor().stats().unwrap();
                assert_eq!(st.dim, lie_algebra_basis_g(&s).len() as u64, "G{s}");
                assert_eq!(st.d(), d_by_blades(&s) as u64, "G{s}");
            }
        }
    }
}
