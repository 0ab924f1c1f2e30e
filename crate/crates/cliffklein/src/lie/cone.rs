//! Finite unions of rational subspaces of `a ≅ Q^r`, closed under a Weyl
//! group, as models of Cartan projections.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, fmt_rat, int, intersection_dim, parse_rat, span_contains, Rat};

/// Largest orbit expanded before giving up.
pub const MAX_ORBIT: usize = 100_000;

/// Weyl group acting on the coordinates of `Q^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weyl {
    None,
    /// permutations
    A,
    /// permutations and sign changes
    BC,
    /// permutations and even sign changes
    D,
}

impl fmt::Display for Weyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weyl::None => "none",
            Weyl::A => "A",
            Weyl::BC => "BC",
            Weyl::D => "D",
        })
    }
}

impl FromStr for Weyl {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Weyl::None),
            "A" => Ok(Weyl::A),
            "BC" | "B" | "C" => Ok(Weyl::BC),
            "D" => Ok(Weyl::D),
            _ => Err(Error::Parse(format!("unknown Weyl type {s:?}"))),
        }
    }
}

type Basis = Vec<Vec<Rat>>;

/// A union of subspaces. An empty component list is the cone `{0}`.
#[derive(Clone, Debug)]
pub struct ConeSet {
    ambient: usize,
    weyl: Weyl,
    components: Vec<Basis>,
    expanded: OnceLock<std::result::Result<Vec<Basis>, Error>>,
}

impl PartialEq for ConeSet {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.weyl == o.weyl && self.components == o.components
    }
}

impl ConeSet {
    /// Each component is given by spanning rows; zero components are dropped.
    pub fn new(ambient: usize, weyl: Weyl, components: Vec<Basis>) -> Result<Self> {
        let mut comps = Vec::new();
        for c in components {
            if let Some(bad) = c.iter().find(|v| v.len() != ambient) {
                return Err(Error::Domain(format!("vector of length {} in Q^{ambient}", bad.len())));
            }
            let b = canonical_basis(&c, ambient);
            if !b.is_empty() {
                comps.push(b);
            }
        }
        Ok(ConeSet { ambient, weyl, components: comps, expanded: OnceLock::new() })
    }

    pub fn zero(ambient: usize) -> Self {
        ConeSet { ambient, weyl: Weyl::None, components: vec![], expanded: OnceLock::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let id: Basis = (0..ambient).map(|i| unit(ambient, i)).collect();
        Self::new(ambient, Weyl::None, vec![id]).expect("well-formed")
    }

    /// `W·R v` for integer vectors `v`.
    pub fn lines(ambient: usize, weyl: Weyl, vectors: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient, weyl, vectors.iter().map(|v| vec![v.iter().map(|&x| int(x)).collect()]).collect())
    }

    /// One subspace spanned by integer vectors, closed under `weyl`.
    pub fn span(ambient: usize, weyl: Weyl, vectors: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient, weyl, vec![vectors.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect()])
    }

    /// Union of all `k`-dimensional coordinate subspaces of `Q^r`.
    pub fn coordinate_subspaces(ambient: usize, k: usize) -> Result<Self> {
        if k > ambient {
            return Err(Error::Domain(format!("no {k}-dimensional coordinate subspace of Q^{ambient}")));
        }
        if k == 0 {
            return Ok(Self::zero(ambient));
        }
        // one representative; the permutation action produces the rest
        let rep: Basis = (0..k).map(|i| unit(ambient, i)).collect();
        Self::new(ambient, Weyl::A, vec![rep])
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn weyl(&self) -> Weyl {
        self.weyl
    }

    pub fn components(&self) -> &[Basis] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest dimension of a component.
    pub fn dim(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// All components of the Weyl orbit, as canonical bases. Memoised.
    pub fn expanded(&self) -> Result<&[Basis]> {
        self.expanded
            .get_or_init(|| expand(self.ambient, self.weyl, &self.components))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|b| json!(b.iter().map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>()))
            .collect();
        json!({"ambient": self.ambient, "weyl": self.weyl.to_string(), "components": comps})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("cone JSON: {m}"));
        let ambient = v["ambient"].as_u64().ok_or_else(|| bad("missing ambient"))? as usize;
        let weyl: Weyl = v["weyl"].as_str().unwrap_or("none").parse()?;
        let mut comps = Vec::new();
        for c in v["components"].as_array().ok_or_else(|| bad("missing components"))? {
            let mut rows = Vec::new();
            for r in c.as_array().ok_or_else(|| bad("component is not a list"))? {
                let row = r
                    .as_array()
                    .ok_or_else(|| bad("row is not a list"))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rat(s),
                        Value::Number(n) => n.as_i64().map(int).ok_or_else(|| bad("non-integer number")),
                        _ => Err(bad("entry is not a number")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
            comps.push(rows);
        }
        Self::new(ambient, weyl, comps)
    }
}

impl fmt::Display for ConeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{0}} ⊂ Q^{}", self.ambient);
        }
        let prefix = if self.weyl == Weyl::None { String::new() } else { format!("W[{}]·", self.weyl) };
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|b| {
                let rows: Vec<String> =
                    b.iter().map(|v| format!("({})", v.iter().map(fmt_rat).collect::<Vec<_>>().join(","))).collect();
                format!("span{{{}}}", rows.join(", "))
            })
            .collect();
        write!(f, "{prefix}{} ⊂ Q^{}", parts.join(" ∪ "), self.ambient)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Simple reflections of the Weyl group as maps on coordinate vectors.
fn reflections(weyl: Weyl, r: usize) -> Vec<Box<dyn Fn(&[Rat]) -> Vec<Rat>>> {
    let mut gens: Vec<Box<dyn Fn(&[Rat]) -> Vec<Rat>>> = Vec::new();
    if weyl == Weyl::None || r == 0 {
        return gens;
    }
    for i in 0..r - 1 {
        gens.push(Box::new(move |v: &[Rat]| {
            let mut w = v.to_vec();
            w.swap(i, i + 1);
            w
        }));
    }
    match weyl {
        Weyl::BC => gens.push(Box::new(move |v: &[Rat]| {
            let mut w = v.to_vec();
            w[r - 1] = -w[r - 1].clone();
            w
        })),
        Weyl::D if r >= 2 => gens.push(Box::new(move |v: &[Rat]| {
            let mut w = v.to_vec();
            let (a, b) = (w[r - 2].clone(), w[r - 1].clone());
            w[r - 2] = -b;
            w[r - 1] = -a;
            w
        })),
        _ => {}
    }
    gens
}

fn expand(r: usize, weyl: Weyl, comps: &[Basis]) -> std::result::Result<Vec<Basis>, Error> {
    let gens = reflections(weyl, r);
    let mut seen: BTreeSet<Basis> = BTreeSet::new();
    let mut queue: VecDeque<Basis> = comps.iter().cloned().collect();
    for c in comps {
        seen.insert(c.clone());
    }
    while let Some(b) = queue.pop_front() {
        for g in &gens {
            let img: Basis = b.iter().map(|v| g(v)).collect();
            let c = canonical_basis(&img, r);
            if seen.insert(c.clone()) {
                if seen.len() > MAX_ORBIT {
                    return Err(Error::Resource(format!("Weyl orbit exceeds {MAX_ORBIT} subspaces")));
                }
                queue.push_back(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn check_ambient(a: &ConeSet, b: &ConeSet) -> Result<()> {
    if a.ambient == b.ambient {
        Ok(())
    } else {
        Err(Error::Domain(format!("cones live in Q^{} and Q^{}", a.ambient, b.ambient)))
    }
}

/// Whether every element of `a` also lies in `b` (acting on the same coordinates).
fn weyl_le(a: Weyl, b: Weyl) -> bool {
    matches!((a, b), (Weyl::None, _) | (Weyl::A, Weyl::A | Weyl::D | Weyl::BC) | (Weyl::D, Weyl::D | Weyl::BC) | (Weyl::BC, Weyl::BC))
}

/// Components of `x` to test against the full orbit of `y`: when `x`'s group
/// sits inside `y`'s, `w·c` meets or lies in `y` exactly when `c` does.
fn representatives<'a>(x: &'a ConeSet, y: &ConeSet) -> Result<&'a [Basis]> {
    if weyl_le(x.weyl, y.weyl) {
        Ok(&x.components)
    } else {
        x.expanded()
    }
}

/// `A ∩ B = {0}`, tested subspace by subspace over the expanded orbits.
pub fn cones_properly_disjoint(a: &ConeSet, b: &ConeSet) -> Result<bool> {
    check_ambient(a, b)?;
    let (xs, ys) = if weyl_le(b.weyl, a.weyl) {
        (representatives(b, a)?, a.expanded()?)
    } else {
        (representatives(a, b)?, b.expanded()?)
    };
    Ok(xs.iter().all(|x| ys.iter().all(|y| intersection_dim(x, y, a.ambient) == 0)))
}

/// `inner ⊆ outer`: every component of `inner` lies in some component of `outer`.
pub fn cone_contains(outer: &ConeSet, inner: &ConeSet) -> Result<bool> {
    check_ambient(outer, inner)?;
    let (eo, ei) = (outer.expanded()?, representatives(inner, outer)?);
    Ok(ei.iter().all(|x| eo.iter().any(|y| x == y || span_contains(y, x, outer.ambient))))
}

/// Mutual containment.
pub fn cones_similar(a: &ConeSet, b: &ConeSet) -> Result<bool> {
    Ok(cone_contains(a, b)? && cone_contains(b, a)?)
}

/// `a(O(r,s))` inside `a(O(p,q))`: the `min(r,s)`-dimensional coordinate
/// subspaces of `Q^{min(p,q)}`.
pub fn cone_a_of_orthogonal_subgroup(r: u32, s: u32, p: u32, q: u32) -> Result<ConeSet> {
    if r > p || s > q {
        return Err(Error::Domain(format!("O({r},{s}) does not sit in O({p},{q})")));
    }
    ConeSet::coordinate_subspaces(p.min(q) as usize, r.min(s) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_vs_axis() {
        let a = ConeSet::lines(2, Weyl::BC, &[vec![1, 1]]).unwrap();
        let b = ConeSet::lines(2, Weyl::BC, &[vec![1, 0]]).unwrap();
        assert!(cones_properly_disjoint(&a, &b).unwrap());
        assert_eq!(a.expanded().unwrap().len(), 2);
        assert_eq!(b.expanded().unwrap().len(), 2);
    }

    #[test]
    fn four_dim_example() {
        let a = ConeSet::lines(4, Weyl::BC, &[vec![1, 1, 1, 1]]).unwrap();
        let b = ConeSet::lines(4, Weyl::BC, &[vec![1, 1, 1, 0]]).unwrap();
        assert!(cones_properly_disjoint(&a, &b).unwrap());
        assert_eq!(a.expanded().unwrap().len(), 8);
    }

    #[test]
    fn equal_lines_meet() {
        let a = ConeSet::lines(2, Weyl::None, &[vec![1, 0]]).unwrap();
        assert!(!cones_properly_disjoint(&a, &a).unwrap());
    }

    #[test]
    fn axes_similar_after_expansion() {
        let x = ConeSet::lines(2, Weyl::BC, &[vec![1, 0]]).unwrap();
        let y = ConeSet::lines(2, Weyl::BC, &[vec![0, 1]]).unwrap();
        assert!(cones_similar(&x, &y).unwrap());
        assert!(!cones_similar(&ConeSet::zero(2), &ConeSet::full(2)).unwrap());
    }

    #[test]
    fn coordinate_planes() {
        let c = cone_a_of_orthogonal_subgroup(7, 8, 8, 8).unwrap();
        assert_eq!(c.expanded().unwrap().len(), 8);
        assert!(cone_a_of_orthogonal_subgroup(0, 5, 8, 8).unwrap().is_zero());
    }

    #[test]
    fn json_roundtrip() {
        let a = ConeSet::lines(3, Weyl::D, &[vec![1, -1, 0]]).unwrap();
        let b = ConeSet::from_json(&a.to_json()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ambient_mismatch() {
        assert!(cones_properly_disjoint(&ConeSet::zero(2), &ConeSet::zero(3)).is_err());
    }
}
