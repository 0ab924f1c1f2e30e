//! `cliffklein` command-line front end.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Value};

use cliffklein::catalog::{
    check_spin_triple, check_triple, decide, space_form_status, tangential_space_form_status, verify_o8c, verify_tables,
    Catalog, Curvature, DecisionRecord, Report, Status, Verdict,
};
use cliffklein::clifford::Signature;
use cliffklein::hurwitz::{build_orthogonal_multiplication, rho, sphere_points, sum_of_squares_identity, vector_fields_on_sphere};
use cliffklein::lie::{cayley, jordan_decompose_motion, MotionElement};
use cliffklein::linalg::{fmt_rat, parse_rat, QMatrix, Rat};
use cliffklein::morphisms::{build_real_rep_capped, classify_clifford, classify_group, MAX_REP_GENERATORS};
use cliffklein::Error;

#[derive(Parser, Debug)]
#[command(name = "cliffklein", version, about = "Clifford algebras of indefinite forms and compact Clifford-Klein forms")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest real matrix size `rep` will build.
    #[arg(long, global = true, default_value_t = 256)]
    max_size: usize,
    /// Catalog file replacing the built-in one.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify C(p,q) as a matrix algebra.
    Clifford { p: u32, q: u32 },
    /// Name the group G(p,q).
    Group { p: u32, q: u32 },
    /// Real matrix model of C(p,q).
    Rep { p: u32, q: u32 },
    /// Hurwitz-Radon orthogonal multiplication on R^q.
    Hr { q: u64 },
    /// p vector fields on S^{q-1}, checked at sampled rational points.
    Fields {
        q: usize,
        p: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Sum of squares identity of type (p+1, q).
    Sos { p_plus_1: usize, q: usize },
    /// Compact space form of signature (p,q) and curvature sign (+, 0, -).
    Spaceform {
        p: u64,
        q: u64,
        #[arg(allow_hyphen_values = true)]
        kappa: String,
    },
    /// Tangential space form of X(p,q), decided by p < ρ(q).
    Tangential { p: u64, q: u64 },
    /// Decide a symmetric space G/H or catalog entry.
    Decide { space: String },
    /// Check a catalog triple; `spin:<q>` and `o8c` name the built-in constructions.
    CheckTriple {
        id: String,
        /// Variable bindings such as n=2.
        bindings: Vec<String>,
    },
    /// Reproduce every catalog table.
    VerifyTables,
    /// Jordan decomposition of (k,v) in O(n) ⋉ R^n; rows separated by ';'.
    Jordan {
        k: String,
        v: String,
        /// Treat k as a skew matrix and use its Cayley transform.
        #[arg(long)]
        cayley: bool,
    },
}

/// Outcome of a command: what to print and how to exit.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, code: 0 }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Exists | Verdict::Open => 0,
        Verdict::NotExists => 1,
        Verdict::Incomplete => 3,
    }
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Incomplete => 3,
    }
}

fn record(r: DecisionRecord) -> Outcome {
    Outcome { text: r.to_string(), json: r.to_json(), code: verdict_code(r.verdict) }
}

fn report(r: Report) -> Outcome {
    Outcome { text: r.to_string(), json: r.to_json(), code: status_code(r.status()) }
}

fn parse_vector(s: &str) -> Result<Vec<Rat>, Error> {
    s.split(',').map(|x| parse_rat(x.trim())).collect()
}

fn parse_matrix(s: &str) -> Result<QMatrix, Error> {
    let rows = s.split(';').map(parse_vector).collect::<Result<Vec<_>, _>>()?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("matrix rows have different lengths".into()));
    }
    Ok(QMatrix::from_rows(rows))
}

fn vec_json(v: &[Rat]) -> Value {
    json!(v.iter().map(fmt_rat).collect::<Vec<_>>())
}

fn vec_text(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
}

fn motion_json(m: &MotionElement) -> Value {
    json!({"k": m.k.to_strings(), "v": vec_json(&m.v)})
}

fn load_catalog(path: &Option<PathBuf>) -> Result<Catalog, Error> {
    match path {
        Some(p) => Catalog::load(p),
        None => Catalog::builtin(),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    Ok(match &cli.cmd {
        Cmd::Clifford { p, q } => {
            let c = classify_clifford(Signature::new(*p, *q)?);
            Outcome::ok(
                c.to_string(),
                json!({"p": p, "q": q, "class": c.to_string(), "n": c.n, "ground": c.ground.symbol(), "double": c.double}),
            )
        }
        Cmd::Group { p, q } => {
            let g = classify_group(Signature::new(*p, *q)?)?;
            Outcome::ok(g.to_string(), json!({"p": p, "q": q, "group": g.to_string()}))
        }
        Cmd::Rep { p, q } => {
            let sig = Signature::new(*p, *q)?;
            let size = classify_clifford(sig).real_size();
            if size > cli.max_size {
                return Err(Error::Resource(format!("real model of C{sig} has size {size} > --max-size {}", cli.max_size)));
            }
            let rep = build_real_rep_capped(sig, MAX_REP_GENERATORS)?;
            Outcome::ok(rep.to_string().trim_end(), rep.to_json())
        }
        Cmd::Hr { q } => {
            let om = build_orthogonal_multiplication(*q)?;
            let ok = om.identities_hold();
            let mut text = format!("ρ({q}) = {}; identities {}\n", om.p(), if ok { "hold" } else { "FAIL" });
            for (i, m) in om.matrices.iter().enumerate() {
                text.push_str(&format!("A{i} =\n"));
                for row in m.to_dense() {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
                    text.push_str(&format!("  [{}]\n", cells.join(" ")));
                }
            }
            Outcome { text: text.trim_end().to_string(), json: om.to_json(), code: u8::from(!ok) }
        }
        Cmd::Fields { q, p, points } => {
            let vf = vector_fields_on_sphere(*q, *p)?;
            let pts = sphere_points(*q, *points, cli.seed);
            let mut bad = Vec::new();
            for w in &pts {
                if vf.gram_det(w)?.is_zero() {
                    bad.push(vec_text(w));
                }
            }
            let sample = pts.first().map(|w| vf.eval(w)).transpose()?;
            let mut text = format!(
                "{p} vector fields on S^{}: Gram matrix nonsingular at {}/{} points (seed {})",
                q - 1,
                pts.len() - bad.len(),
                pts.len(),
                cli.seed
            );
            if let (Some(w), Some(z)) = (pts.first(), &sample) {
                text.push_str(&format!("\nat w = ({})", vec_text(w)));
                for (i, zi) in z.iter().enumerate() {
                    text.push_str(&format!("\n  Z{} = ({})", i + 1, vec_text(zi)));
                }
            }
            let json = json!({
                "q": q, "p": p, "seed": cli.seed, "points": pts.len(), "singular": bad,
                "sample": pts.first().map(|w| vec_json(w)),
                "fields": sample.map(|z| z.iter().map(|zi| vec_json(zi)).collect::<Vec<_>>()),
            });
            Outcome { text, json, code: u8::from(!bad.is_empty()) }
        }
        Cmd::Sos { p_plus_1, q } => {
            let s = sum_of_squares_identity(*p_plus_1, *q)?;
            let ok = s.verify();
            let z: Vec<Value> = s.z.iter().map(|zk| json!(zk.iter().map(|&(i, j, c)| json!([i + 1, j + 1, c])).collect::<Vec<_>>())).collect();
            Outcome { text: s.to_string(), json: json!({"p+1": p_plus_1, "q": q, "verified": ok, "identity": s.to_string(), "z": z}), code: u8::from(!ok) }
        }
        Cmd::Spaceform { p, q, kappa } => {
            let k: Curvature = kappa.parse()?;
            record(space_form_status(&load_catalog(&cli.catalog)?, *p, *q, k)?)
        }
        Cmd::Tangential { p, q } => {
            let r = tangential_space_form_status(*p, *q)?;
            let rho_q = rho(*q).map_or("∞".to_string(), |r| r.to_string());
            let mut o = record(r);
            o.text = match o.code {
                0 => format!("Exists (p < ρ(q): {p} < {rho_q})"),
                _ => format!("NotExists (p ≥ ρ(q): {p} ≥ {rho_q})"),
            };
            o
        }
        Cmd::Decide { space } => record(decide(&load_catalog(&cli.catalog)?, space)?),
        Cmd::CheckTriple { id, bindings } => check_triple_cmd(cli, id, bindings)?,
        Cmd::VerifyTables => {
            let s = verify_tables(&load_catalog(&cli.catalog)?, cli.seed);
            let (_, fail, _) = s.counts();
            Outcome { text: s.to_string(), json: s.to_json(), code: u8::from(fail > 0) }
        }
        Cmd::Jordan { k, v, cayley: use_cayley } => {
            let mut k = parse_matrix(k)?;
            if *use_cayley {
                k = cayley(&k)?;
            }
            let g = MotionElement::new(k, parse_vector(v)?)?;
            let (s, w) = jordan_decompose_motion(&g)?;
            let recomposes = s.mul(&w) == g;
            let commutes = s.mul(&w) == w.mul(&s);
            let elliptic = s.is_elliptic();
            let ok = recomposes && commutes && elliptic;
            let text = format!(
                "s: {s}\nw: translation by ({})\nsw = g: {recomposes}, sw = ws: {commutes}, s elliptic: {elliptic}",
                vec_text(&w.v)
            );
            let json = json!({
                "g": motion_json(&g), "s": motion_json(&s), "w": motion_json(&w),
                "recomposes": recomposes, "commutes": commutes, "elliptic": elliptic,
            });
            Outcome { text, json, code: u8::from(!ok) }
        }
    })
}

fn check_triple_cmd(cli: &Cli, id: &str, bindings: &[String]) -> Result<Outcome, Error> {
    if id == "o8c" {
        return Ok(report(verify_o8c()?));
    }
    let catalog = load_catalog(&cli.catalog)?;
    if let Some(q) = id.strip_prefix("spin:") {
        let q: u32 = q.parse().map_err(|_| Error::Parse(format!("bad q in {id:?}")))?;
        return Ok(report(check_spin_triple(&catalog, q)?));
    }
    let t = catalog.template(id)?;
    let vals = bindings
        .iter()
        .map(|b| {
            let (k, v) = b.split_once('=').ok_or_else(|| Error::Parse(format!("binding {b:?} is not var=value")))?;
            let v: i64 = v.trim().parse().map_err(|_| Error::Parse(format!("bad value in {b:?}")))?;
            Ok((k.trim(), v))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let entries = if vals.is_empty() { t.instances()? } else { vec![t.instantiate(&vals)?] };
    let reports = entries.iter().map(check_triple).collect::<Result<Vec<_>, _>>()?;
    if reports.len() == 1 {
        return Ok(report(reports.into_iter().next().unwrap()));
    }
    let worst = reports.iter().map(Report::status).max().unwrap_or(Status::Pass);
    Ok(Outcome {
        text: reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n").trim_end().to_string(),
        json: json!({"id": id, "status": worst.to_string(), "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>()}),
        code: status_code(worst),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            let mut out = BufWriter::new(io::stdout().lock());
            let res = if cli.json {
                serde_json::to_writer_pretty(&mut out, &o.json).map_err(io::Error::from).and_then(|_| writeln!(out))
            } else {
                writeln!(out, "{}", o.text)
            };
            if res.and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(o.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
