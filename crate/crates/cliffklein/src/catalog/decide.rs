//! The decision pipeline for compact Clifford–Klein forms.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use super::checks::{check_triple, Status};
use super::data::{normalize, Catalog, Claim, Criterion, SymmetricSpaceEntry};
use crate::error::{Error, Result};
use crate::hurwitz::{bilinear_map, check_w_proper, motion_cone_a, rho, subspace_from_bilinear};
use crate::lie::{
    b_plus, benoist_obstruction, calabi_markus, maximality_obstruction, rank_parity_obstruction, ConeSet,
    GroupDescriptor, RootType, Weyl,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NotExists,
    Open,
    /// The catalog records a result whose side conditions could not be checked.
    Incomplete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::NotExists => "NotExists",
            Verdict::Open => "Open",
            Verdict::Incomplete => "Incomplete",
        })
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Exists => "exists",
            Verdict::NotExists => "not_exists",
            Verdict::Open => "open",
            Verdict::Incomplete => "incomplete",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Curvature {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Negative,
}

impl std::str::FromStr for Curvature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "pos" | "positive" | "1" => Ok(Curvature::Positive),
            "0" | "zero" | "flat" => Ok(Curvature::Zero),
            "-" | "neg" | "negative" | "-1" => Ok(Curvature::Negative),
            _ => Err(Error::Parse(format!("curvature sign must be +, 0 or -, got {s:?}"))),
        }
    }
}

impl fmt::Display for Curvature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curvature::Positive => "+",
            Curvature::Zero => "0",
            Curvature::Negative => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionRecord {
    pub space: String,
    pub kappa: Option<Curvature>,
    pub verdict: Verdict,
    pub criterion: String,
    /// one-line human reading of the evidence
    pub summary: String,
    pub evidence: Value,
    pub provenance: Vec<String>,
}

impl DecisionRecord {
    fn new(space: impl Into<String>, verdict: Verdict, criterion: impl Into<String>, summary: impl Into<String>) -> Self {
        DecisionRecord {
            space: space.into(),
            kappa: None,
            verdict,
            criterion: criterion.into(),
            summary: summary.into(),
            evidence: json!({}),
            provenance: Vec::new(),
        }
    }

    fn with(mut self, evidence: Value, provenance: &[&str]) -> Self {
        self.evidence = evidence;
        self.provenance = provenance.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "space": self.space,
            "verdict": self.verdict.as_str(),
            "criterion": self.criterion,
            "summary": self.summary,
            "evidence": self.evidence,
            "provenance": self.provenance,
        });
        if let Some(k) = self.kappa {
            v["kappa"] = json!(k.to_string());
        }
        v
    }
}

impl fmt::Display for DecisionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.space, self.verdict, self.summary)
    }
}

fn x_name(p: u64, q: u64) -> String {
    format!("X({p},{q}) = O({},{q})/O({p},{q})", p + 1)
}

fn og(p: u64, q: u64) -> Result<GroupDescriptor> {
    format!("O({p},{q})").parse()
}

const CONJECTURE: &str = "space form conjecture for κ > 0";

/// Compact complete space forms of signature `(p,q)` and curvature sign `κ`.
pub fn space_form_status(catalog: &Catalog, p: u64, q: u64, kappa: Curvature) -> Result<DecisionRecord> {
    let mut rec = match kappa {
        Curvature::Zero => DecisionRecord::new(
            format!("R^{{{p},{q}}}"),
            Verdict::Exists,
            "flat_torus",
            format!("the flat torus R^{{{p},{q}}}/Z^{}", p + q),
        )
        .with(json!({"lattice": format!("Z^{}", p + q)}), &["space form: flat case"]),
        Curvature::Negative => {
            let mut r = space_form_status(catalog, q, p, Curvature::Positive)?;
            r.summary = format!("{}; signature ({p},{q}) with κ < 0 is ({q},{p}) with κ > 0", r.summary);
            r.provenance.push("space form: curvature sign reversal".into());
            r
        }
        Curvature::Positive => positive_space_form(catalog, p, q)?,
    };
    rec.kappa = Some(kappa);
    Ok(rec)
}

fn positive_space_form(catalog: &Catalog, p: u64, q: u64) -> Result<DecisionRecord> {
    let space = x_name(p, q);
    if q == 0 {
        return Ok(DecisionRecord::new(space, Verdict::Exists, "compact", "the sphere O(p+1)/O(p) is compact")
            .with(json!({"d(G)-d(H)": 0}), &["space form: Riemannian sphere"]));
    }
    if p == 0 {
        return Ok(DecisionRecord::new(space, Verdict::Exists, "riemannian_lattice", "hyperbolic space has uniform lattices")
            .with(json!({"G": format!("O(1,{q})")}), &["space form: Riemannian symmetric space"]));
    }
    let via = match (p, q) {
        (1, q) if q % 2 == 0 => Some(("compact_forms.4", vec![("n", (q / 2) as i64)])),
        (3, q) if q % 4 == 0 => Some(("compact_forms.5", vec![("n", (q / 4) as i64)])),
        (7, 8) => Some(("compact_forms.8", vec![])),
        _ => None,
    };
    if let Some((id, vals)) = via {
        let vals: Vec<(&str, i64)> = vals.iter().map(|(k, v)| (*k, *v)).collect();
        let e = catalog.template(id)?.instantiate(&vals)?;
        let report = check_triple(&e)?;
        let l = e.l.as_ref().map(ToString::to_string).unwrap_or_default();
        let verdict = match report.status() {
            Status::Pass => Verdict::Exists,
            _ => Verdict::Incomplete,
        };
        return Ok(DecisionRecord::new(space, verdict, "triple", format!("{} with L = {l}", e.name()))
            .with(json!({"entry": e.id, "L": l, "report": report.to_json()}), &[&format!("catalog:{id}")]));
    }
    let (g, h) = (og(p + 1, q)?, og(p, q)?);
    if p >= q {
        let fired = calabi_markus(&g, &h)?;
        if fired {
            return Ok(DecisionRecord::new(space, Verdict::NotExists, "calabi_markus", format!("real rank {q} on both sides"))
                .with(json!({"rank_R G": q, "rank_R H": q}), &["space form: Calabi–Markus"]));
        }
    }
    if q == p + 1 && q % 2 == 1 {
        let n = q as u32;
        let coords: Vec<Vec<i64>> = (0..q as usize - 1)
            .map(|i| (0..q as usize).map(|j| i64::from(i == j)).collect())
            .collect();
        let a_h = ConeSet::span(q as usize, Weyl::D, &coords)?;
        if benoist_obstruction(RootType::D, n, &a_h)? {
            return Ok(DecisionRecord::new(space, Verdict::NotExists, "benoist", format!("b₊ ⊂ a(H) in type D{n}"))
                .with(
                    json!({"root": format!("D{n}"), "b_plus": b_plus(RootType::D, n)?.to_json(), "a_H": a_h.to_json()}),
                    &["space form: Benoist, SO(2n+1,2n+1)/SO(2n,2n+1)"],
                ));
        }
    }
    if p % 2 == 1 && q % 2 == 1 {
        let hk: GroupDescriptor = format!("O({p})×O({q})").parse()?;
        if rank_parity_obstruction(&g, &h, Some(&hk))? {
            let (gs, ks) = (g.stats()?, hk.stats()?);
            return Ok(DecisionRecord::new(space, Verdict::NotExists, "rank_parity", format!("p·q = {} is odd", p * q))
                .with(
                    json!({"rank G": gs.rank, "rank H": h.stats()?.rank, "rank K": gs.rank_k, "rank H∩K": ks.rank}),
                    &["space form: rank parity"],
                ));
        }
    }
    Ok(DecisionRecord::new(space, Verdict::Open, "none", format!("no criterion applies; conjectured non-existence ({CONJECTURE})"))
        .with(json!({"conjecture": CONJECTURE}), &["space form: open region"]))
}

/// The tangential symmetric space of `O(p+1,q)/O(p,q)`: a compact form exists iff `p < ρ(q)`.
pub fn tangential_space_form_status(p: u64, q: u64) -> Result<DecisionRecord> {
    let space = format!("tangential X({p},{q})");
    let r = rho(q);
    let rho_text = r.map_or("∞".to_string(), |r| r.to_string());
    let below = r.map_or(true, |r| p < r);
    if !below {
        return Ok(DecisionRecord::new(space, Verdict::NotExists, "hurwitz_radon", format!("p ≥ ρ(q): {p} ≥ {rho_text}"))
            .with(json!({"p": p, "q": q, "rho": r}), &["tangential: Hurwitz–Radon bound"]));
    }
    let f = bilinear_map(p as usize + 1, q as usize)?;
    let w = subspace_from_bilinear(&f)?;
    let proper = check_w_proper(&w, 0)?;
    let norm = f.is_norm_multiplicative();
    let verdict = if proper && norm { Verdict::Exists } else { Verdict::Incomplete };
    let a_w = motion_cone_a(&w)?;
    Ok(DecisionRecord::new(space, verdict, "hurwitz_radon", format!("p < ρ(q): {p} < {rho_text}")).with(
        json!({
            "p": p, "q": q, "rho": r,
            "witness": {"bilinear_map": {"p_plus_1": p + 1, "q": q, "norm_multiplicative": norm}, "W_proper": proper, "a_W": a_w.to_json()},
        }),
        &["tangential: orthogonal multiplication"],
    ))
}

/// Runs the pipeline on one concrete space.
pub fn decide_entry(e: &SymmetricSpaceEntry) -> Result<DecisionRecord> {
    let space = e.name();
    let prov: Vec<String> = std::iter::once(format!("catalog:{}", e.template)).chain(e.provenance.iter().cloned()).collect();
    let finish = |mut r: DecisionRecord| {
        r.provenance = prov.clone();
        if let Value::Object(m) = &mut r.evidence {
            m.insert("entry".into(), json!(e.id));
        }
        r
    };
    let (gs, hs) = (e.g.stats()?, e.h.stats()?);
    if gs.d() == hs.d() {
        return Ok(finish(
            DecisionRecord::new(&space, Verdict::Exists, "compact", format!("d(G) = d(H) = {}", gs.d()))
                .with(json!({"d(G)": gs.d(), "d(H)": hs.d()}), &[]),
        ));
    }
    let mut notes = Vec::new();
    if e.l.is_some() && e.criterion == Criterion::Triple {
        let rep = check_triple(e)?;
        let l = e.l.as_ref().map(ToString::to_string).unwrap_or_default();
        let ev = json!({"L": l, "report": rep.to_json()});
        match rep.status() {
            Status::Pass => {
                return Ok(finish(DecisionRecord::new(&space, Verdict::Exists, "triple", format!("L = {l}")).with(ev, &[])))
            }
            // a table citation with its d-sum verified, cones unavailable
            Status::Incomplete if rep.items.iter().all(|i| i.status != Status::Fail) => {
                return Ok(finish(
                    DecisionRecord::new(&space, Verdict::Exists, "triple", format!("L = {l}; d-sum verified, no cone data"))
                        .with(ev, &[]),
                ))
            }
            _ => notes.push(ev),
        }
    }
    if calabi_markus(&e.g, &e.h)? {
        return Ok(finish(
            DecisionRecord::new(&space, Verdict::NotExists, "calabi_markus", format!("real rank {} on both sides", gs.real_rank))
                .with(json!({"rank_R G": gs.real_rank, "rank_R H": hs.real_rank, "d(G)": gs.d(), "d(H)": hs.d()}), &[]),
        ));
    }
    if let Some(hk) = &e.h_cap_k {
        if rank_parity_obstruction(&e.g, &e.h, Some(hk))? {
            let ks = hk.stats()?;
            return Ok(finish(
                DecisionRecord::new(&space, Verdict::NotExists, "rank_parity", format!("rank K = {} > rank H∩K = {}", gs.rank_k, ks.rank))
                    .with(json!({"rank G": gs.rank, "rank H": hs.rank, "rank K": gs.rank_k, "rank H∩K": ks.rank}), &[]),
            ));
        }
    }
    if let (Some(l), Some(ah), Some(al)) = (&e.l, &e.a_h, &e.a_l) {
        let dl = l.stats()?.d();
        if maximality_obstruction(ah, hs.d(), al, dl)? {
            return Ok(finish(
                DecisionRecord::new(&space, Verdict::NotExists, "maximality", format!("a(L) ⊂ a(H) and d(L) = {dl} > d(H) = {}", hs.d()))
                    .with(json!({"L": l.to_string(), "d(L)": dl, "d(H)": hs.d(), "a_H": ah.to_json(), "a_L": al.to_json()}), &[]),
            ));
        }
    }
    if let (Some((root, n)), Some(ah)) = (e.root, &e.a_h) {
        if benoist_obstruction(root, n, ah)? {
            return Ok(finish(
                DecisionRecord::new(&space, Verdict::NotExists, "benoist", format!("b₊ ⊂ w·a(H) in type {root}{n}"))
                    .with(json!({"root": format!("{root}{n}"), "b_plus": b_plus(root, n)?.to_json(), "a_H": ah.to_json()}), &[]),
            ));
        }
    }
    let (verdict, summary) = match e.claim {
        Claim::NotExists => (Verdict::Incomplete, format!("recorded as non-existent by {}; not reproducible from the encoded data", e.criterion)),
        Claim::Exists => (Verdict::Incomplete, "recorded as existent; the triple check did not pass".to_string()),
    };
    Ok(finish(DecisionRecord::new(&space, verdict, e.criterion.to_string(), summary).with(json!({"checks": notes}), &[])))
}

/// Pipeline on a space with no catalog data.
fn decide_bare(g: &GroupDescriptor, h: &GroupDescriptor) -> Result<DecisionRecord> {
    let space = format!("{g}/{h}");
    let (gs, hs) = (g.stats()?, h.stats()?);
    if hs.d() > gs.d() {
        return Err(Error::Domain(format!("d({h}) > d({g})")));
    }
    if gs.d() == hs.d() {
        return Ok(DecisionRecord::new(space, Verdict::Exists, "compact", format!("d(G) = d(H) = {}", gs.d()))
            .with(json!({"d(G)": gs.d(), "d(H)": hs.d()}), &["compactness"]));
    }
    if calabi_markus(g, h)? {
        return Ok(DecisionRecord::new(space, Verdict::NotExists, "calabi_markus", format!("real rank {} on both sides", gs.real_rank))
            .with(json!({"rank_R G": gs.real_rank, "rank_R H": hs.real_rank}), &["Calabi–Markus"]));
    }
    Ok(DecisionRecord::new(space, Verdict::Open, "none", "no criterion applies with the available data")
        .with(json!({"d(G)": gs.d(), "d(H)": hs.d()}), &[]))
}

fn split_space(name: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in name.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&name[..i], &name[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Decides a space given by catalog id, template name, alias, or `G/H`.
pub fn decide(catalog: &Catalog, name: &str) -> Result<DecisionRecord> {
    if let Some(t) = catalog.find_template(name) {
        let instances = t.instances()?;
        let records = instances.iter().map(decide_entry).collect::<Result<Vec<_>>>()?;
        return Ok(aggregate(&t.space, &t.id, records));
    }
    let (g, h) = split_space(name.trim()).ok_or_else(|| Error::NotFound(format!("{name:?} is not a catalog space or G/H")))?;
    let (g, h): (GroupDescriptor, GroupDescriptor) = (g.parse()?, h.parse()?);
    let hits = catalog.find_instances(&g, &h)?;
    if hits.is_empty() {
        return decide_bare(&g, &h);
    }
    let records = hits.iter().map(decide_entry).collect::<Result<Vec<_>>>()?;
    if records.len() == 1 {
        return Ok(records.into_iter().next().unwrap());
    }
    Ok(aggregate(&normalize(name), "", records))
}

fn aggregate(space: &str, id: &str, records: Vec<DecisionRecord>) -> DecisionRecord {
    if records.len() == 1 {
        let mut r = records.into_iter().next().unwrap();
        r.space = space.to_string();
        return r;
    }
    let first = &records[0];
    let (verdict, criterion, summary) = if records.iter().all(|r| r.verdict == first.verdict) {
        let mut counts: Vec<(String, usize)> = Vec::new();
        for r in &records {
            match counts.iter_mut().find(|(c, _)| c == &r.criterion) {
                Some((_, n)) => *n += 1,
                None => counts.push((r.criterion.clone(), 1)),
            }
        }
        counts.sort_by(|a, b| b.1.cmp(&a.1));
        let main = counts[0].0.clone();
        let mut summary = format!("{main} for {} of {} catalogued instances", counts[0].1, records.len());
        for (c, n) in &counts[1..] {
            summary.push_str(&format!(", {c} for {n}"));
        }
        (first.verdict, main, summary)
    } else {
        (Verdict::Open, "mixed".to_string(), "instances disagree; decide a specific instance".to_string())
    };
    let instances: Vec<Value> = records.iter().map(DecisionRecord::to_json).collect();
    let mut prov = vec![format!("catalog:{id}")];
    prov.extend(first.provenance.iter().skip(1).cloned());
    DecisionRecord {
        space: space.to_string(),
        kappa: None,
        verdict,
        criterion,
        summary,
        evidence: json!({"instances": instances}),
        provenance: prov,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> Catalog {
        Catalog::builtin().unwrap()
    }

    #[test]
    fn named_examples() {
        let c = cat();
        let v = |s: &str| decide(&c, s).unwrap();
        assert_eq!(v("SU(2,2n)/Sp(1,n)").verdict, Verdict::Exists);
        let r = v("Sp(n,R)/GL(n,R)");
        assert_eq!((r.verdict, r.criterion.as_str()), (Verdict::NotExists, "calabi_markus"));
        let r = v("SL(2n,R)/SO(n,n)");
        assert_eq!((r.verdict, r.criterion.as_str()), (Verdict::NotExists, "maximality"));
        assert_eq!(v("SO(8,C)/SO(7,C)").verdict, Verdict::Exists);
        assert_eq!(v("SO(8,C)/SO(7,1)").verdict, Verdict::Exists);
        assert_eq!(v("SL(4,R)/SO(2,2)").criterion, "maximality");
        assert_eq!(v("E6(6)/Sp(4,R)").verdict, Verdict::Incomplete);
        assert_eq!(v("GL(16,R)/GL(15,R)").verdict, Verdict::Open);
        assert!(decide(&c, "nonsense").is_err());
    }

    #[test]
    fn space_forms() {
        let c = cat();
        let s = |p, q, k| space_form_status(&c, p, q, k).unwrap().verdict;
        assert_eq!(s(7, 8, Curvature::Positive), Verdict::Exists);
        assert_eq!(s(2, 4, Curvature::Positive), Verdict::Open);
        assert_eq!(s(4, 1, Curvature::Positive), Verdict::NotExists);
        assert_eq!(s(10, 11, Curvature::Positive), Verdict::NotExists);
        assert_eq!(s(4, 1, Curvature::Negative), Verdict::Exists);
        assert_eq!(s(3, 1, Curvature::Negative), Verdict::NotExists);
        assert_eq!(s(2, 3, Curvature::Zero), Verdict::Exists);
    }

    #[test]
    fn tangential() {
        let t = |p, q| tangential_space_form_status(p, q).unwrap().verdict;
        assert_eq!(t(7, 8), Verdict::Exists);
        assert_eq!(t(1, 5), Verdict::NotExists);
        assert_eq!(t(8, 16), Verdict::Exists);
        assert_eq!(t(3, 0), Verdict::Exists);
    }
}
