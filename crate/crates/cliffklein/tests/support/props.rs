//! Randomized and exhaustive invariants, each checked against an oracle
//! written here rather than the library's own helpers. Shared by the
//! `properties` and `acceptance` targets.

use cliffklein::catalog::{space_form_status, Catalog, Curvature};
use cliffklein::clifford::{MultiVector, Signature};
use cliffklein::hurwitz::{below_rho, bilinear_map};
use cliffklein::lie::{
    cayley, cones_properly_disjoint, jordan_decompose_motion, ConeSet, MotionElement, Weyl,
};
use cliffklein::linalg::{int, rat, QMatrix, Rat};
use cliffklein::morphisms::{eta_k, even_reduction, lambda_k, phi_k, tau, xi_l, AlgebraMorphism};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed, TestRunner};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_c11f),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

fn run<S: Strategy>(
    cases: u32,
    s: &S,
    f: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config(cases))
        .run(s, f)
        .map_err(|e| e.to_string())
}

// ---- blade laws ----

/// Product of two blades by sorting the concatenated generator word.
fn oracle_product(sig: &Signature, a: u32, b: u32) -> (i32, u32) {
    let bits = |m: u32| (0..sig.n()).filter(move |k| m >> k & 1 == 1);
    let mut word: Vec<u32> = bits(a).chain(bits(b)).collect();
    let mut sign = 1;
    for i in 0..word.len() {
        for j in 0..word.len() - 1 - i {
            if word[j] > word[j + 1] {
                word.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let mut out = 0u32;
    let mut i = 0;
    while i < word.len() {
        if i + 1 < word.len() && word[i] == word[i + 1] {
            if word[i] >= sig.p {
                sign = -sign;
            }
            i += 2;
        } else {
            out |= 1 << word[i];
            i += 1;
        }
    }
    (sign, out)
}

pub fn blade_products_exhaustive() {
    for n in 0..=6u32 {
        for p in 0..=n {
            let sig = Signature::of(p, n - p);
            for a in 0..sig.dim() as u32 {
                let ea = MultiVector::unit_blade(sig, a);
                for b in 0..sig.dim() as u32 {
                    let eb = MultiVector::unit_blade(sig, b);
                    let (s, m) = oracle_product(&sig, a, b);
                    assert_eq!(
                        &ea * &eb,
                        MultiVector::blade(sig, m, int(s as i64)),
                        "C{sig}: {a:b}·{b:b}"
                    );
                }
            }
        }
    }
}

pub fn blade_square_and_commutation_laws() {
    for n in 0..=6u32 {
        for p in 0..=n {
            let sig = Signature::of(p, n - p);
            for a in 0..sig.dim() as u32 {
                let ea = MultiVector::unit_blade(sig, a);
                let k = a.count_ones() as i64;
                let minus = (a >> p).count_ones() as i64;
                let sq = if (k * (k - 1) / 2 + minus) % 2 == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(
                    &ea * &ea,
                    MultiVector::scalar(sig, int(sq)),
                    "square in C{sig} of {a:b}"
                );
                for b in 0..sig.dim() as u32 {
                    let eb = MultiVector::unit_blade(sig, b);
                    let e = (a.count_ones() * b.count_ones() - (a & b).count_ones()) % 2;
                    let rhs = &eb * &ea;
                    assert_eq!(
                        &ea * &eb,
                        if e == 0 { rhs } else { -&rhs },
                        "commutation in C{sig}"
                    );
                }
            }
        }
    }
}

// ---- random multivectors ----

fn signature() -> impl Strategy<Value = Signature> {
    (0u32..=5, 0u32..=5).prop_map(|(p, q)| Signature::of(p, q))
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn multivector(sig: Signature) -> impl Strategy<Value = MultiVector> {
    let dim = sig.dim() as u32;
    proptest::collection::vec((0..dim, small_rat()), 0..6)
        .prop_map(move |t| MultiVector::from_terms(sig, t))
}

fn with_pair() -> impl Strategy<Value = (MultiVector, MultiVector)> {
    signature().prop_flat_map(|s| (multivector(s), multivector(s)))
}

pub fn reversion_and_star_are_anti_automorphisms() -> Result<(), String> {
    run(1000, &with_pair(), |(a, b)| {
        let ab = &a * &b;
        prop_assert_eq!(ab.reversion(), &b.reversion() * &a.reversion());
        prop_assert_eq!(ab.star(), &b.star() * &a.star());
        prop_assert_eq!(a.star().star(), a.clone());
        Ok(())
    })
}

/// A morphism from the τ, φ, λ, η, ξ families or ε, chosen by `pick`.
fn family_member(sig: Signature, pick: u32, x: u32, y: u32) -> Option<AlgebraMorphism> {
    let (kp, km) = (x % (sig.p + 1), y % (sig.q + 1));
    match pick % 6 {
        0 => {
            // v inside E₊ or E₋, where st(v) = ±v
            let (lo, hi) = if x % 2 == 0 {
                (0, sig.p)
            } else {
                (sig.p, sig.n())
            };
            let v = MultiVector::from_terms(
                sig,
                (lo..hi).map(|k| (1u32 << k, int(((y + 3 * k) % 3) as i64 - 1))),
            );
            if v.is_zero() {
                return None;
            }
            tau(sig, &v).ok()
        }
        1 => phi_k(sig, kp, km).ok(),
        2 => lambda_k(sig, kp.max(1), km.max(1)).ok(),
        3 => eta_k(sig, kp, km).ok(),
        4 => xi_l(sig, kp, km).ok().map(|x| x.map),
        _ => even_reduction(Signature::of(sig.p, sig.q + 1)).ok(),
    }
}

fn morphism_case() -> impl Strategy<Value = (AlgebraMorphism, MultiVector)> {
    (1u32..=4, 1u32..=4, 0u32..6, 0u32..8, 0u32..8)
        .prop_filter_map("no member for these indices", |(p, q, pick, x, y)| {
            let sig = Signature::of(p, q);
            family_member(sig, pick, x, y)
        })
        .prop_flat_map(|m| {
            let s = m.source();
            (Just(m), multivector(s))
        })
}

pub fn morphisms_commute_with_star() -> Result<(), String> {
    run(1000, &morphism_case(), |(m, a)| {
        prop_assert_eq!(
            m.apply(&a.star()).unwrap(),
            m.apply(&a).unwrap().star(),
            "{}",
            m.name
        );
        Ok(())
    })
}

// ---- motion-group Jordan decomposition ----

fn skew(n: usize, active: usize, entries: &[Rat]) -> QMatrix {
    let mut rows = vec![vec![Rat::zero(); n]; n];
    let mut it = entries.iter().cycle();
    for i in 0..active {
        for j in i + 1..active {
            let x = it.next().unwrap().clone();
            rows[j][i] = -x.clone();
            rows[i][j] = x;
        }
    }
    QMatrix::from_rows(rows)
}

fn motion() -> impl Strategy<Value = MotionElement> {
    (2usize..=4)
        .prop_flat_map(|n| {
            (
                Just(n),
                0..=n,
                proptest::collection::vec(small_rat(), 6),
                proptest::collection::vec(small_rat(), n),
            )
        })
        .prop_map(|(n, active, e, v)| {
            MotionElement::new(cayley(&skew(n, active, &e)).unwrap(), v).unwrap()
        })
}

pub fn jordan_recomposes_and_commutes() -> Result<(), String> {
    run(500, &motion(), |g| {
        let (s, w) = jordan_decompose_motion(&g).unwrap();
        prop_assert_eq!(s.mul(&w), g.clone());
        prop_assert_eq!(s.mul(&w), w.mul(&s));
        prop_assert!(s.is_elliptic());
        prop_assert_eq!(&w.k, &QMatrix::identity(g.dim()));
        prop_assert_eq!(g.k.mul_vec(&w.v), w.v.clone());
        Ok(())
    })
}

pub fn jordan_is_unique() -> Result<(), String> {
    run(
        500,
        &(
            motion(),
            proptest::collection::vec(small_rat(), 4),
            proptest::collection::vec(small_rat(), 4),
        ),
        |(g, c, t)| {
            // s₀ = (k, (I-k)c) fixes c; w₀ translates along ker(k - I).
            let n = g.dim();
            let c = &c[..n];
            let kc = g.k.mul_vec(c);
            let s0 =
                MotionElement::new(g.k.clone(), c.iter().zip(&kc).map(|(a, b)| a - b).collect())
                    .unwrap();
            let fixed = QMatrix::identity(n).sub(&g.k).kernel();
            let mut u = vec![Rat::zero(); n];
            for (b, x) in fixed.iter().zip(&t) {
                for (ui, bi) in u.iter_mut().zip(b) {
                    *ui += x * bi;
                }
            }
            let w0 = MotionElement::translation(u);
            let (s, w) = jordan_decompose_motion(&s0.mul(&w0)).unwrap();
            prop_assert_eq!(s, s0);
            prop_assert_eq!(w, w0);
            Ok(())
        },
    )
}

pub fn elliptic_part_has_bounded_powers() -> Result<(), String> {
    run(20, &motion(), |g| {
        let (s, _) = jordan_decompose_motion(&g).unwrap();
        let f = |x: &Rat| x.to_f64().unwrap();
        let k: Vec<Vec<f64>> =
            s.k.to_rows()
                .iter()
                .map(|r| r.iter().map(f).collect())
                .collect();
        let v: Vec<f64> = s.v.iter().map(f).collect();
        let mut x = vec![0.0; v.len()];
        let mut sup: f64 = 0.0;
        for _ in 0..1000 {
            x = (0..x.len())
                .map(|i| v[i] + k[i].iter().zip(&x).map(|(a, b)| a * b).sum::<f64>())
                .collect();
            sup = sup.max(x.iter().map(|t| t * t).sum::<f64>().sqrt());
        }
        prop_assert!(sup.is_finite());
        // sⁿ(0) = (I - kⁿ)c for the fixed point c, so |sⁿ(0)| ≤ 2|c|
        let c = s.fixed_point().unwrap();
        let cn = c.iter().map(|t| f(t).powi(2)).sum::<f64>().sqrt();
        prop_assert!(sup <= 2.0 * cn + 1e-6, "sup {sup}, |c| {cn}");
        Ok(())
    })
}

// ---- cones in Q³ against lattice sampling ----

fn signed_perms(weyl: Weyl) -> Vec<([usize; 3], [i64; 3])> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for perm in PERMS {
        if weyl == Weyl::None && perm != [0, 1, 2] {
            continue;
        }
        for s in 0..8u32 {
            let signs = [0, 1, 2].map(|i| if s >> i & 1 == 1 { -1 } else { 1 });
            let ok = match weyl {
                Weyl::None | Weyl::A => s == 0,
                Weyl::BC => true,
                Weyl::D => s.count_ones() % 2 == 0,
            };
            if ok {
                out.push((perm, signs));
            }
        }
    }
    out
}

type IVec = [i64; 3];

/// Distinct subspaces in the orbit, each as an independent basis.
fn orbit(weyl: Weyl, comps: &[Vec<IVec>]) -> Vec<Vec<IVec>> {
    let mut out: Vec<(IVec, Vec<IVec>)> = Vec::new();
    for c in comps {
        for (perm, signs) in signed_perms(weyl) {
            let moved: Vec<IVec> = c
                .iter()
                .map(|v| [0, 1, 2].map(|i| signs[i] * v[perm[i]]))
                .collect();
            let b = basis(&moved);
            let key = match b.len() {
                1 => primitive(b[0]),
                2 => primitive(cross(&b[0], &b[1])),
                _ => [0, 0, b.len() as i64],
            };
            if !out.iter().any(|(k, o)| *k == key && o.len() == b.len()) {
                out.push((key, b));
            }
        }
    }
    out.into_iter().map(|(_, b)| b).collect()
}

/// Primitive representative of `±v`.
fn primitive(v: IVec) -> IVec {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = v.iter().fold(0, |g, &x| gcd(g, x)).max(1);
    let v = v.map(|x| x / g);
    let lead = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    v.map(|x| x * lead.signum())
}

fn idot(a: &IVec, b: &IVec) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &IVec, b: &IVec) -> IVec {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Independent rows among `c`, at most 3.
fn basis(c: &[IVec]) -> Vec<IVec> {
    let mut b: Vec<IVec> = Vec::new();
    for v in c {
        let independent = match b.len() {
            0 => *v != [0, 0, 0],
            1 => cross(&b[0], v) != [0, 0, 0],
            2 => idot(&cross(&b[0], &b[1]), v) != 0,
            _ => false,
        };
        if independent {
            b.push(*v);
        }
    }
    b
}

/// Whether `dist(x, span B)² ≤ r²`, in integers.
fn near(x: &IVec, b: &[IVec], r2: i64) -> bool {
    match b.len() {
        0 => idot(x, x) <= r2,
        1 => {
            let bb = idot(&b[0], &b[0]);
            idot(x, x) * bb - idot(x, &b[0]).pow(2) <= r2 * bb
        }
        2 => {
            let n = cross(&b[0], &b[1]);
            idot(x, &n).pow(2) <= r2 * idot(&n, &n)
        }
        _ => true,
    }
}

/// `{x ∈ A : dist(x,B) ≤ R}` over lattice points of `A` with coefficients in a
/// box. With entries in {-1,0,1} a transversal pair keeps such points within
/// `R/sin θ ≤ 6R` of the origin, so a point beyond that means `A ∩ B ≠ 0`.
fn sampling_disjoint(a: &[Vec<IVec>], b: &[Vec<IVec>]) -> bool {
    const R2: i64 = 9;
    const BOX: i64 = 45;
    const FAR2: i64 = 25 * 25;
    for ba in a {
        let points: Vec<IVec> = match ba.len() {
            1 => (-BOX..=BOX).map(|i| ba[0].map(|x| i * x)).collect(),
            2 => (-BOX..=BOX)
                .flat_map(|i| {
                    (-BOX..=BOX).map(move |j| [0, 1, 2].map(|t| i * ba[0][t] + j * ba[1][t]))
                })
                .collect(),
            _ => vec![],
        };
        let far: Vec<&IVec> = points.iter().filter(|x| idot(x, x) > FAR2).collect();
        if b.iter().any(|bb| far.iter().any(|x| near(x, bb, R2))) {
            return false;
        }
    }
    true
}

fn weyl() -> impl Strategy<Value = Weyl> {
    prop_oneof![
        Just(Weyl::None),
        Just(Weyl::A),
        Just(Weyl::BC),
        Just(Weyl::D)
    ]
}

fn cone_data() -> impl Strategy<Value = (Weyl, Vec<Vec<IVec>>)> {
    let vector = proptest::array::uniform3(-1i64..=1);
    let comp = proptest::collection::vec(vector, 1..=2);
    (weyl(), proptest::collection::vec(comp, 1..=3))
}

fn to_cone(w: Weyl, comps: &[Vec<IVec>]) -> ConeSet {
    let rows = comps
        .iter()
        .map(|c| {
            c.iter()
                .map(|v| v.iter().map(|&x| int(x)).collect())
                .collect()
        })
        .collect();
    ConeSet::new(3, w, rows).unwrap()
}

pub fn cone_disjointness_matches_sampling() -> Result<(), String> {
    run(200, &(cone_data(), cone_data()), |((wa, a), (wb, b))| {
        let (ca, cb) = (to_cone(wa, &a), to_cone(wb, &b));
        let exact = cones_properly_disjoint(&ca, &cb).unwrap();
        prop_assert_eq!(exact, cones_properly_disjoint(&cb, &ca).unwrap());
        prop_assert_eq!(exact, sampling_disjoint(&orbit(wa, &a), &orbit(wb, &b)));
        Ok(())
    })
}

// ---- decisions ----

pub fn space_form_duality() {
    let catalog = Catalog::builtin().unwrap();
    for p in 0..=8 {
        for q in 0..=8 {
            let neg = space_form_status(&catalog, p, q, Curvature::Negative).unwrap();
            let pos = space_form_status(&catalog, q, p, Curvature::Positive).unwrap();
            assert_eq!(neg.verdict, pos.verdict, "({p},{q})");
            assert_eq!(neg.criterion, pos.criterion, "({p},{q})");
        }
    }
}

pub fn tangential_matches_bilinear_maps() -> Result<(), String> {
    run(200, &(0usize..=9, 1usize..=64), |(p, q)| {
        prop_assert_eq!(
            below_rho(p as u64, q as u64),
            bilinear_map(p + 1, q).is_ok()
        );
        Ok(())
    })
}

fn caught(f: fn()) -> Result<(), String> {
    std::panic::catch_unwind(f).map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default()
    })
}

type Check = fn() -> Result<(), String>;

/// Every suite, in a fixed order.
pub fn all() -> Vec<(&'static str, Check)> {
    vec![
        ("blade products, p+q ≤ 6", || {
            caught(blade_products_exhaustive)
        }),
        ("blade square and commutation, p+q ≤ 6", || {
            caught(blade_square_and_commutation_laws)
        }),
        (
            "rev and st anti-automorphisms, 1000 cases",
            reversion_and_star_are_anti_automorphisms,
        ),
        (
            "st-compatibility of τ, φ, λ, η, ξ, ε, 1000 cases",
            morphisms_commute_with_star,
        ),
        (
            "Jordan recomposition and commutation, 500 cases",
            jordan_recomposes_and_commutes,
        ),
        ("Jordan uniqueness, 500 cases", jordan_is_unique),
        (
            "bounded powers of the elliptic part",
            elliptic_part_has_bounded_powers,
        ),
        (
            "cone disjointness vs sampling, 200 pairs in Q³",
            cone_disjointness_matches_sampling,
        ),
        ("space form duality", || caught(space_form_duality)),
        (
            "tangential vs bilinear maps",
            tangential_matches_bilinear_maps,
        ),
    ]
}
