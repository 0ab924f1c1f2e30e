//! The shipped catalog of symmetric spaces and reference tables, and the
//! instantiation of its parametrised rows.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::{eval_int, ConeSet, GroupDescriptor, RootType, Weyl};

pub const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.json");
pub const CATALOG_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    Exists,
    NotExists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Triple,
    CalabiMarkus,
    Benoist,
    Maximality,
    RankParity,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Criterion::Triple => "triple",
            Criterion::CalabiMarkus => "calabi_markus",
            Criterion::Benoist => "benoist",
            Criterion::Maximality => "maximality",
            Criterion::RankParity => "rank_parity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeSpec {
    Lines { vectors: Vec<Vec<i64>> },
    Span { vectors: Vec<Vec<i64>> },
    /// `span{e₁-e₂, e₃-e₄, …}`
    PairsDiff { count: String },
    /// `span{e₁+e₂, e₃+e₄, …}`
    PairsSum { count: String },
    /// `span{e₁, …, e_k}`
    Coords { count: String },
    /// all of `a` (the trace-zero hyperplane for type A)
    Full,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylOverride {
    pub expr: String,
    pub weyl: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTemplate {
    pub ambient: String,
    pub weyl: String,
    #[serde(default)]
    pub weyl_if_even: Option<WeylOverride>,
    #[serde(rename = "H", default)]
    pub h: Option<ConeSpec>,
    #[serde(rename = "L", default)]
    pub l: Option<ConeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTemplate {
    #[serde(rename = "type")]
    pub root_type: String,
    pub rank: String,
}

/// A catalog row, possibly parametrised by integer variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryTemplate {
    pub id: String,
    pub space: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "L", default)]
    pub l: Option<String>,
    #[serde(rename = "HcapK", default)]
    pub h_cap_k: Option<String>,
    #[serde(default)]
    pub vars: BTreeMap<String, [i64; 2]>,
    #[serde(default)]
    pub derived: BTreeMap<String, String>,
    #[serde(default)]
    pub constraints: Vec<String>,
    pub claim: Claim,
    pub criterion: Criterion,
    #[serde(default)]
    pub cones: Option<ConeTemplate>,
    #[serde(default)]
    pub root: Option<RootTemplate>,
    #[serde(default)]
    pub aliases: Vec<String>,
    #[serde(default)]
    pub provenance: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinTripleRow {
    pub q: u32,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "W")]
    pub w: String,
    /// `[d(G), d(L), d(H)]`
    pub d: [u64; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentialRow {
    pub p: u64,
    pub q_multiple_of: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    pub clifford_table: Vec<Vec<String>>,
    pub group_table: Vec<Vec<String>>,
    pub spin_triples: Vec<SpinTripleRow>,
    pub tangential_table: Vec<TangentialRow>,
    pub entries: Vec<EntryTemplate>,
}

impl Catalog {
    pub fn builtin() -> Result<Self> {
        Self::from_json_str(BUILTIN_CATALOG)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(s).map_err(|e| Error::Catalog(e.to_string()))?;
        if c.version != CATALOG_VERSION {
            return Err(Error::Catalog(format!("catalog version {} is not {CATALOG_VERSION}", c.version)));
        }
        if c.clifford_table.len() != 9 || c.clifford_table.iter().any(|r| r.len() != 9) {
            return Err(Error::Catalog("clifford_table must be 9×9".into()));
        }
        if c.group_table.len() != 9 || c.group_table.iter().any(|r| r.len() != 9) {
            return Err(Error::Catalog("group_table must be 9×9".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for e in &c.entries {
            if !seen.insert(e.id.as_str()) {
                return Err(Error::Catalog(format!("duplicate entry id {}", e.id)));
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&s)
    }

    pub fn template(&self, id: &str) -> Result<&EntryTemplate> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::NotFound(format!("no catalog entry {id}")))
    }

    /// Templates in a table, e.g. `compact_forms`.
    pub fn table(&self, name: &str) -> Vec<&EntryTemplate> {
        self.entries.iter().filter(|e| e.id.split('.').next() == Some(name)).collect()
    }

    /// Template matching an id, a template name or an alias.
    pub fn find_template(&self, name: &str) -> Option<&EntryTemplate> {
        let n = normalize(name);
        self.entries
            .iter()
            .find(|e| e.id == name || normalize(&e.space) == n || e.aliases.iter().any(|a| normalize(a) == n))
    }

    /// Every instance of every template whose `G` and `H` match.
    pub fn find_instances(&self, g: &GroupDescriptor, h: &GroupDescriptor) -> Result<Vec<SymmetricSpaceEntry>> {
        let mut out = Vec::new();
        for t in &self.entries {
            for e in t.instances()? {
                if &e.g == g && &e.h == h {
                    out.push(e);
                }
            }
        }
        Ok(out)
    }
}

pub(crate) fn normalize(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('x', "×")
}

/// A concrete symmetric space `G/H` with whatever data the catalog holds.
#[derive(Clone, Debug)]
pub struct SymmetricSpaceEntry {
    pub id: String,
    pub template: String,
    pub bindings: BTreeMap<String, i64>,
    pub g: GroupDescriptor,
    pub h: GroupDescriptor,
    pub l: Option<GroupDescriptor>,
    pub h_cap_k: Option<GroupDescriptor>,
    pub a_h: Option<ConeSet>,
    pub a_l: Option<ConeSet>,
    pub root: Option<(RootType, u32)>,
    pub claim: Claim,
    pub criterion: Criterion,
    pub provenance: Vec<String>,
    pub note: Option<String>,
}

impl SymmetricSpaceEntry {
    pub fn name(&self) -> String {
        format!("{}/{}", self.g, self.h)
    }

    pub fn bindings_json(&self) -> Value {
        json!(self.bindings)
    }

    /// Mismatches between the cone data and the group descriptors.
    pub fn consistency_problems(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let (gs, hs) = (self.g.stats()?, self.h.stats()?);
        if hs.d() > gs.d() {
            out.push(format!("d(H) = {} exceeds d(G) = {}", hs.d(), gs.d()));
        }
        let check = |name: &str, cone: &ConeSet, grp: &GroupDescriptor, out: &mut Vec<String>| -> Result<()> {
            let expect = gs.real_rank as usize + usize::from(cone.weyl() == Weyl::A);
            if cone.ambient() != expect {
                out.push(format!("a({name}) lives in Q^{}, expected Q^{expect}", cone.ambient()));
            }
            let rr = grp.stats()?.real_rank as usize;
            if cone.dim() != rr {
                out.push(format!("a({name}) has dimension {}, real rank is {rr}", cone.dim()));
            }
            Ok(())
        };
        if let Some(a) = &self.a_h {
            check("H", a, &self.h, &mut out)?;
        }
        if let (Some(a), Some(l)) = (&self.a_l, &self.l) {
            check("L", a, l, &mut out)?;
        }
        Ok(out)
    }
}

impl EntryTemplate {
    /// All bindings of the variables within their ranges that pass the constraints.
    pub fn bindings(&self) -> Result<Vec<BTreeMap<String, i64>>> {
        let mut all = vec![BTreeMap::new()];
        for (name, [lo, hi]) in &self.vars {
            let mut next = Vec::new();
            for b in &all {
                for v in *lo..=*hi {
                    let mut b = b.clone();
                    b.insert(name.clone(), v);
                    next.push(b);
                }
            }
            all = next;
        }
        let mut out = Vec::new();
        for mut b in all {
            self.derive(&mut b)?;
            if self.admits(&b)? {
                out.push(b);
            }
        }
        Ok(out)
    }

    fn derive(&self, b: &mut BTreeMap<String, i64>) -> Result<()> {
        // derived values may depend on each other in declaration order; retry until settled
        for _ in 0..=self.derived.len() {
            for (k, expr) in &self.derived {
                let lookup = |v: &str| b.get(v).copied();
                if let Ok(x) = eval_int(expr, &lookup) {
                    b.insert(k.clone(), x);
                }
            }
        }
        for k in self.derived.keys() {
            if !b.contains_key(k) {
                return Err(Error::Catalog(format!("{}: cannot evaluate derived variable {k}", self.id)));
            }
        }
        Ok(())
    }

    fn admits(&self, b: &BTreeMap<String, i64>) -> Result<bool> {
        for c in &self.constraints {
            if !eval_constraint(c, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn instances(&self) -> Result<Vec<SymmetricSpaceEntry>> {
        self.bindings()?.into_iter().map(|b| self.instantiate_with(b)).collect()
    }

    /// Instance for explicit values of the free variables, outside the listed ranges if need be.
    pub fn instantiate(&self, values: &[(&str, i64)]) -> Result<SymmetricSpaceEntry> {
        let mut b: BTreeMap<String, i64> = values.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        for v in self.vars.keys() {
            if !b.contains_key(v) {
                return Err(Error::Domain(format!("{} needs a value for {v}", self.id)));
            }
        }
        self.derive(&mut b)?;
        if !self.admits(&b)? {
            return Err(Error::Domain(format!("{} is not defined at {b:?}", self.id)));
        }
        self.instantiate_with(b)
    }

    fn instantiate_with(&self, b: BTreeMap<String, i64>) -> Result<SymmetricSpaceEntry> {
        let lookup = |v: &str| b.get(v).copied();
        let ctx = |e: Error| Error::Catalog(format!("{} at {b:?}: {e}", self.id));
        let parse = |s: &str| GroupDescriptor::parse_with(s, &lookup).map_err(ctx);
        let g = parse(&self.g)?;
        let h = parse(&self.h)?;
        let l = self.l.as_deref().map(parse).transpose()?;
        let h_cap_k = self.h_cap_k.as_deref().map(parse).transpose()?;
        let (mut a_h, mut a_l) = (None, None);
        if let Some(c) = &self.cones {
            let ambient = eval_int(&c.ambient, &lookup).map_err(ctx)?;
            let ambient = usize::try_from(ambient).map_err(|_| ctx(Error::Domain("negative ambient".into())))?;
            let mut weyl: Weyl = c.weyl.parse().map_err(ctx)?;
            if let Some(o) = &c.weyl_if_even {
                if eval_int(&o.expr, &lookup).map_err(ctx)? % 2 == 0 {
                    weyl = o.weyl.parse().map_err(ctx)?;
                }
            }
            let build = |s: &ConeSpec| build_cone(s, ambient, weyl, &lookup).map_err(ctx);
            a_h = c.h.as_ref().map(build).transpose()?;
            a_l = c.l.as_ref().map(build).transpose()?;
        }
        let root = match &self.root {
            Some(r) => {
                let t: RootType = r.root_type.parse().map_err(ctx)?;
                let n = eval_int(&r.rank, &lookup).map_err(ctx)?;
                Some((t, u32::try_from(n).map_err(|_| ctx(Error::Domain("negative rank".into())))?))
            }
            None => None,
        };
        let id = if b.is_empty() {
            self.id.clone()
        } else {
            let vals: Vec<String> = self.vars.keys().map(|k| format!("{k}={}", b[k])).collect();
            format!("{}[{}]", self.id, vals.join(","))
        };
        Ok(SymmetricSpaceEntry {
            id,
            template: self.id.clone(),
            bindings: b.clone(),
            g,
            h,
            l,
            h_cap_k,
            a_h,
            a_l,
            root,
            claim: self.claim,
            criterion: self.criterion,
            provenance: self.provenance.clone(),
            note: self.note.clone(),
        })
    }
}

fn unit(ambient: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; ambient];
    for &(i, x) in entries {
        v[i] = x;
    }
    v
}

fn build_cone(spec: &ConeSpec, ambient: usize, weyl: Weyl, vars: &dyn Fn(&str) -> Option<i64>) -> Result<ConeSet> {
    let count = |c: &str, per: usize| -> Result<usize> {
        let k = usize::try_from(eval_int(c, vars)?).map_err(|_| Error::Domain(format!("negative count {c}")))?;
        if k * per > ambient {
            return Err(Error::Domain(format!("{k} blocks of size {per} do not fit in Q^{ambient}")));
        }
        Ok(k)
    };
    match spec {
        ConeSpec::Lines { vectors } => ConeSet::lines(ambient, weyl, vectors),
        ConeSpec::Span { vectors } => ConeSet::span(ambient, weyl, vectors),
        ConeSpec::PairsDiff { count: c } => {
            let rows: Vec<Vec<i64>> = (0..count(c, 2)?).map(|i| unit(ambient, &[(2 * i, 1), (2 * i + 1, -1)])).collect();
            ConeSet::span(ambient, weyl, &rows)
        }
        ConeSpec::PairsSum { count: c } => {
            let rows: Vec<Vec<i64>> = (0..count(c, 2)?).map(|i| unit(ambient, &[(2 * i, 1), (2 * i + 1, 1)])).collect();
            ConeSet::span(ambient, weyl, &rows)
        }
        ConeSpec::Coords { count: c } => {
            let rows: Vec<Vec<i64>> = (0..count(c, 1)?).map(|i| unit(ambient, &[(i, 1)])).collect();
            ConeSet::span(ambient, weyl, &rows)
        }
        ConeSpec::Full if weyl == Weyl::A => {
            let rows: Vec<Vec<i64>> =
                (0..ambient.saturating_sub(1)).map(|i| unit(ambient, &[(i, 1), (i + 1, -1)])).collect();
            ConeSet::span(ambient, weyl, &rows)
        }
        ConeSpec::Full => {
            let rows: Vec<Vec<i64>> = (0..ambient).map(|i| unit(ambient, &[(i, 1)])).collect();
            ConeSet::span(ambient, weyl, &rows)
        }
        ConeSpec::Zero => Ok(ConeSet::zero(ambient)),
    }
}

/// `odd(e)`, `even(e)`, or `e₁ op e₂` with `op` one of `<= >= == != < >`.
pub fn eval_constraint(c: &str, b: &BTreeMap<String, i64>) -> Result<bool> {
    let lookup = |v: &str| b.get(v).copied();
    let c: String = c.chars().filter(|ch| !ch.is_whitespace()).collect();
    for (name, want) in [("odd(", 1), ("even(", 0)] {
        if let Some(inner) = c.strip_prefix(name).and_then(|r| r.strip_suffix(')')) {
            return Ok(eval_int(inner, &lookup)?.rem_euclid(2) == want);
        }
    }
    for op in ["<=", ">=", "==", "!=", "<", ">"] {
        if let Some(i) = c.find(op) {
            let (l, r) = (eval_int(&c[..i], &lookup)?, eval_int(&c[i + op.len()..], &lookup)?);
            return Ok(match op {
                "<=" => l <= r,
                ">=" => l >= r,
                "==" => l == r,
                "!=" => l != r,
                "<" => l < r,
                _ => l > r,
            });
        }
    }
    Err(Error::Parse(format!("bad constraint {c:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = Catalog::builtin().unwrap();
        assert_eq!(c.table("compact_forms").len(), 12);
        assert_eq!(c.table("para_hermitian").len(), 8);
        assert_eq!(c.table("virtually_abelian").len(), 6);
        assert_eq!(c.table("noncompact_dimension").len(), 19);
        assert_eq!(c.spin_triples.len(), 8);
    }

    #[test]
    fn every_instance_is_consistent() {
        let c = Catalog::builtin().unwrap();
        for t in &c.entries {
            let inst = t.instances().unwrap();
            assert!(!inst.is_empty(), "{}", t.id);
            for e in inst {
                assert_eq!(e.consistency_problems().unwrap(), Vec::<String>::new(), "{}", e.id);
            }
        }
    }

    #[test]
    fn side_conditions() {
        let c = Catalog::builtin().unwrap();
        let t = c.template("noncompact_dimension.9").unwrap();
        for b in t.bindings().unwrap() {
            let (p, q) = (b["p"], b["q"]);
            assert!(3 * p <= 2 * (p + q) && 2 * (p + q) <= 6 * p && p + q >= 3);
            assert_eq!(b["r"], (p + q).min(2 * p + 1).min(2 * q + 1));
        }
        let t = c.template("rank.2").unwrap();
        assert!(t.bindings().unwrap().iter().all(|b| b["j"] * b["k"] * b["l"] % 2 == 1));
    }

    #[test]
    fn instantiate_outside_range() {
        let c = Catalog::builtin().unwrap();
        let e = c.template("compact_forms.4").unwrap().instantiate(&[("n", 9)]).unwrap();
        assert_eq!(e.name(), "SO(2,18)/SO(1,18)");
        assert!(c.template("compact_forms.4").unwrap().instantiate(&[]).is_err());
    }

    #[test]
    fn lookup() {
        let c = Catalog::builtin().unwrap();
        assert_eq!(c.find_template("SU(2,2n)/Sp(1,n)").unwrap().id, "compact_forms.1");
        assert_eq!(c.find_template("SO*(8)/U(1,3)").unwrap().id, "compact_forms.11");
        assert!(c.find_template("SO(3)/SO(2)").is_none());
        assert!(Catalog::from_json_str("{}").is_err());
    }
}
