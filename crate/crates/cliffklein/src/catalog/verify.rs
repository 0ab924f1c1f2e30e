//! Batch reproduction of every table in the catalog.

use std::fmt;

use serde_json::{json, Value};

use super::checks::{check_spin_triple, check_triple, verify_o8c, Report, Status};
use super::data::Catalog;
use super::decide::{decide_entry, space_form_status, tangential_space_form_status, Curvature, Verdict};
use crate::clifford::{d_by_blades, lie_algebra_basis_g, Signature};
use crate::error::Result;
use crate::hurwitz::{
    bilinear_map, build_orthogonal_multiplication, rho, sphere_points, sum_of_squares_identity, vector_fields_on_sphere,
};
use crate::lie::{benoist_obstruction, calabi_markus, maximality_obstruction, rank_parity_obstruction};
use crate::morphisms::{classify_clifford, classify_group, CliffordClass};

/// Short table form: `R`, `H^2`, `C(4)`, `R(16)^2`.
pub fn clifford_abbrev(c: &CliffordClass) -> String {
    let g = c.ground.symbol();
    let base = if c.n == 1 { g.to_string() } else { format!("{g}({})", c.n) };
    if c.double {
        format!("{base}^2")
    } else {
        base
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationSummary {
    pub seed: u64,
    pub sections: Vec<Report>,
}

impl VerificationSummary {
    /// `(pass, fail, incomplete)` over all check items.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for i in self.sections.iter().flat_map(|s| &s.items) {
            match i.status {
                Status::Pass => c.0 += 1,
                Status::Fail => c.1 += 1,
                Status::Incomplete => c.2 += 1,
            }
        }
        c
    }

    pub fn failures(&self) -> Vec<String> {
        self.filtered(Status::Fail)
    }

    pub fn incomplete(&self) -> Vec<String> {
        self.filtered(Status::Incomplete)
    }

    fn filtered(&self, st: Status) -> Vec<String> {
        self.sections
            .iter()
            .flat_map(|s| s.items.iter().filter(move |i| i.status == st).map(move |i| format!("{} / {}: {}", s.subject, i.name, i.detail)))
            .collect()
    }

    pub fn section(&self, subject: &str) -> Option<&Report> {
        self.sections.iter().find(|s| s.subject == subject)
    }

    pub fn to_json(&self) -> Value {
        let (p, f, i) = self.counts();
        json!({
            "seed": self.seed,
            "pass": p, "fail": f, "incomplete": i,
            "failures": self.failures(),
            "incomplete_items": self.incomplete(),
            "sections": self.sections.iter().map(Report::to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for VerificationSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sections {
            let (mut p, mut fl, mut inc) = (0, 0, 0);
            for i in &s.items {
                match i.status {
                    Status::Pass => p += 1,
                    Status::Fail => fl += 1,
                    Status::Incomplete => inc += 1,
                }
            }
            writeln!(f, "{:<28} {:>10}  pass {p:>4}  fail {fl:>3}  incomplete {inc:>3}", s.subject, s.status().to_string())?;
        }
        for x in self.failures() {
            writeln!(f, "FAIL {x}")?;
        }
        for x in self.incomplete() {
            writeln!(f, "INCOMPLETE {x}")?;
        }
        let (p, fl, i) = self.counts();
        write!(f, "total: {p} passed, {fl} failed, {i} incomplete (seed {})", self.seed)
    }
}

type Section<'a> = Box<dyn Fn() -> Result<Report> + Send + Sync + 'a>;

/// Runs every section on its own thread; a section that errors is reported as a failure.
pub fn verify_tables(catalog: &Catalog, seed: u64) -> VerificationSummary {
    let sections: Vec<(&str, Section)> = vec![
        ("clifford table", Box::new(|| clifford_table(catalog))),
        ("group table", Box::new(|| group_table(catalog))),
        ("spin triples", Box::new(|| spin_triples(catalog))),
        ("compact forms", Box::new(|| compact_forms(catalog))),
        ("noncompact dimension", Box::new(|| obstruction_table(catalog, "noncompact_dimension", "maximality"))),
        ("para-Hermitian", Box::new(|| obstruction_table(catalog, "para_hermitian", "calabi_markus"))),
        ("virtually abelian", Box::new(|| obstruction_table(catalog, "virtually_abelian", "benoist"))),
        ("rank", Box::new(|| obstruction_table(catalog, "rank", "rank_parity"))),
        ("hurwitz-radon", Box::new(hurwitz)),
        ("vector fields", Box::new(move || vector_fields(seed))),
        ("tangential", Box::new(|| tangential(catalog))),
        ("O(8,C)/O(7,1)", Box::new(verify_o8c)),
        ("space forms", Box::new(|| space_forms(catalog))),
    ];
    let reports = std::thread::scope(|s| {
        let handles: Vec<_> = sections
            .iter()
            .map(|(name, f)| {
                let name = name.to_string();
                s.spawn(move || {
                    let mut r = match f() {
                        Ok(r) => r,
                        Err(e) => {
                            let mut r = Report::new(&name);
                            r.check("section", false, e.to_string());
                            r
                        }
                    };
                    r.subject = name;
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    VerificationSummary { seed, sections: reports }
}

fn clifford_table(c: &Catalog) -> Result<Report> {
    let mut r = Report::new("clifford table");
    for p in 0..=8u32 {
        for q in 0..=8u32 {
            let got = clifford_abbrev(&classify_clifford(Signature::of(p, q)));
            let want = &c.clifford_table[p as usize][q as usize];
            r.check(format!("C({p},{q})"), &got == want, format!("{got} vs {want}"));
        }
    }
    Ok(r)
}

fn group_table(c: &Catalog) -> Result<Report> {
    let mut r = Report::new("group table");
    for p in 0..=8u32 {
        for q in 0..=8u32 {
            let sig = Signature::of(p, q);
            let g = classify_group(sig)?;
            let got = g.to_string().replace('²', "^2");
            let want = &c.group_table[p as usize][q as usize];
            r.check(format!("G({p},{q})"), &got == want, format!("{got} vs {want}"));
            if p >= 1 && q >= 1 {
                let st = g.descriptor().stats()?;
                let (dim, d) = (lie_algebra_basis_g(&sig).len() as u64, d_by_blades(&sig) as u64);
                r.check(
                    format!("dim, d of g({p},{q})"),
                    dim == st.dim && d == st.d(),
                    format!("blades {dim}/{d}, symbolic {}/{}", st.dim, st.d()),
                );
            }
        }
    }
    Ok(r)
}

fn spin_triples(c: &Catalog) -> Result<Report> {
    let mut r = Report::new("spin triples");
    for q in 1..=8 {
        let t = check_spin_triple(c, q)?;
        absorb(&mut r, &format!("q={q}"), &t);
    }
    Ok(r)
}

/// Copies `t`'s items into `r`, prefixed.
fn absorb(r: &mut Report, prefix: &str, t: &Report) {
    for i in &t.items {
        r.push(format!("{prefix} {}", i.name), i.status, i.detail.clone());
    }
}

fn compact_forms(c: &Catalog) -> Result<Report> {
    let mut r = Report::new("compact forms");
    for t in c.table("compact_forms") {
        for e in t.instances()? {
            absorb(&mut r, &e.id, &check_triple(&e)?);
        }
    }
    Ok(r)
}

fn obstruction_table(c: &Catalog, table: &str, criterion: &str) -> Result<Report> {
    let mut r = Report::new(table);
    for t in c.table(table) {
        for e in t.instances()? {
            let (gs, hs) = (e.g.stats()?, e.h.stats()?);
            if let Some(l) = &e.l {
                let dl = l.stats()?.d();
                r.check(format!("{} d(L) > d(H)", e.id), dl > hs.d(), format!("d({l}) = {dl}, d({}) = {}", e.h, hs.d()));
            }
            let fired = match criterion {
                "maximality" => match (&e.l, &e.a_h, &e.a_l) {
                    (Some(l), Some(ah), Some(al)) => Some(maximality_obstruction(ah, hs.d(), al, l.stats()?.d())?),
                    _ => None,
                },
                "calabi_markus" => Some(calabi_markus(&e.g, &e.h)? && gs.d() > hs.d()),
                "benoist" => match (e.root, &e.a_h) {
                    (Some((root, n)), Some(ah)) => Some(benoist_obstruction(root, n, ah)? && gs.d() > hs.d()),
                    _ => None,
                },
                "rank_parity" => Some(rank_parity_obstruction(&e.g, &e.h, e.h_cap_k.as_ref())? && gs.d() > hs.d()),
                _ => None,
            };
            match fired {
                Some(ok) => r.check(format!("{} {criterion}", e.id), ok, if ok { "fires" } else { "does not fire" }),
                None => r.push(format!("{} {criterion}", e.id), Status::Incomplete, "no cone data encoded"),
            }
            let rec = decide_entry(&e)?;
            let status = match rec.verdict {
                Verdict::NotExists => Status::Pass,
                Verdict::Incomplete => Status::Incomplete,
                _ => Status::Fail,
            };
            r.push(format!("{} decision", e.id), status, format!("{} via {}", rec.verdict, rec.criterion));
        }
    }
    Ok(r)
}

fn hurwitz() -> Result<Report> {
    let mut r = Report::new("hurwitz-radon");
    for q in [1u64, 2, 4, 8, 16, 32, 64] {
        let om = build_orthogonal_multiplication(q)?;
        let want = rho(q).unwrap_or(0) as usize;
        r.check(format!("q={q}"), om.p() == want && om.identities_hold(), format!("{} matrices, ρ = {want}", om.p()));
    }
    for (a, b) in [(2, 2), (4, 4), (8, 8), (9, 16)] {
        let s = sum_of_squares_identity(a, b)?;
        r.check(format!("sum of squares ({a},{b})"), s.verify(), "");
    }
    Ok(r)
}

fn vector_fields(seed: u64) -> Result<Report> {
    let mut r = Report::new("vector fields");
    for (q, p) in [(2usize, 1usize), (4, 3), (8, 7), (16, 8)] {
        let vf = vector_fields_on_sphere(q, p)?;
        let pts = sphere_points(q, 100, seed ^ q as u64);
        let mut bad = 0;
        for w in &pts {
            if vf.gram_det(w)? == num_rational::BigRational::from_integer(0.into()) {
                bad += 1;
            }
        }
        r.check(format!("S^{} with {p} fields", q - 1), bad == 0, format!("{bad} singular Gram matrices at {} points", pts.len()));
    }
    for q in [1usize, 3, 5, 7, 9] {
        r.check(format!("S^{} refuses 1 field", q - 1), vector_fields_on_sphere(q, 1).is_err(), "");
    }
    Ok(r)
}

fn tangential(c: &Catalog) -> Result<Report> {
    let mut r = Report::new("tangential");
    for row in &c.tangential_table {
        let p = row.p;
        let mut mismatches = Vec::new();
        for q in 0..=64u64 {
            let table = q == 0 || q % row.q_multiple_of == 0;
            let rec = tangential_space_form_status(p, q)?;
            let decided = rec.verdict == Verdict::Exists;
            let built = bilinear_map(p as usize + 1, q as usize).is_ok();
            if table != decided || decided != built {
                mismatches.push(format!("q={q}: table {table}, decided {decided}, built {built}"));
            }
        }
        r.check(format!("p={p}"), mismatches.is_empty(), if mismatches.is_empty() { "65 values of q agree".into() } else { mismatches.join("; ") });
    }
    Ok(r)
}

fn space_forms(c: &Catalog) -> Result<Report> {
    use Curvature::*;
    let mut r = Report::new("space forms");
    let v = |p, q, k| -> Result<Verdict> { Ok(space_form_status(c, p, q, k)?.verdict) };
    r.check("(7,8,+)", v(7, 8, Positive)? == Verdict::Exists, "");
    r.check("(2,4,+)", v(2, 4, Positive)? == Verdict::Open, "");
    for k in 1..=8 {
        r.check(format!("(1,{},+)", 2 * k), v(1, 2 * k, Positive)? == Verdict::Exists, "");
        r.check(format!("(1,{},+)", 2 * k + 1), v(1, 2 * k + 1, Positive)? == Verdict::NotExists, "");
    }
    let mut bad = Vec::new();
    for p in 1..=8 {
        for q in 1..=p {
            if v(p, q, Positive)? != Verdict::NotExists {
                bad.push(format!("({p},{q})"));
            }
        }
    }
    r.check("p ≥ q > 0", bad.is_empty(), bad.join(" "));
    let mut bad = Vec::new();
    for n in 2..=17 {
        let want = if n % 2 == 1 { Verdict::Exists } else { Verdict::NotExists };
        if v(n - 1, 1, Negative)? != want {
            bad.push(n.to_string());
        }
    }
    r.check("Lorentz κ < 0, n ≤ 17", bad.is_empty(), bad.join(" "));
    Ok(r)
}
