//! Symbolic real reductive groups: dimension, rank, real rank and the
//! non-compact dimension `d = dim G - dim K`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exceptional {
    E6_6,
    E6_2,
    E6M14,
    E6M26,
    E7_7,
    E7M5,
    E7M25,
    E8_8,
    E8M24,
    F4_4,
    F4M20,
    G2_2,
    E6C,
    E7C,
    E8C,
    F4C,
    G2C,
}

impl Exceptional {
    const ALL: [Exceptional; 17] = [
        Exceptional::E6_6,
        Exceptional::E6_2,
        Exceptional::E6M14,
        Exceptional::E6M26,
        Exceptional::E7_7,
        Exceptional::E7M5,
        Exceptional::E7M25,
        Exceptional::E8_8,
        Exceptional::E8M24,
        Exceptional::F4_4,
        Exceptional::F4M20,
        Exceptional::G2_2,
        Exceptional::E6C,
        Exceptional::E7C,
        Exceptional::E8C,
        Exceptional::F4C,
        Exceptional::G2C,
    ];

    fn name(self) -> &'static str {
        use Exceptional::*;
        match self {
            E6_6 => "E6(6)",
            E6_2 => "E6(2)",
            E6M14 => "E6(-14)",
            E6M26 => "E6(-26)",
            E7_7 => "E7(7)",
            E7M5 => "E7(-5)",
            E7M25 => "E7(-25)",
            E8_8 => "E8(8)",
            E8M24 => "E8(-24)",
            F4_4 => "F4(4)",
            F4M20 => "F4(-20)",
            G2_2 => "G2(2)",
            E6C => "E6(C)",
            E7C => "E7(C)",
            E8C => "E8(C)",
            F4C => "F4(C)",
            G2C => "G2(C)",
        }
    }

    /// (dim, dim K, real rank, rank, rank K)
    fn data(self) -> [u64; 5] {
        use Exceptional::*;
        match self {
            E6_6 => [78, 36, 6, 6, 4],
            E6_2 => [78, 38, 4, 6, 6],
            E6M14 => [78, 46, 2, 6, 6],
            E6M26 => [78, 52, 2, 6, 4],
            E7_7 => [133, 63, 7, 7, 7],
            E7M5 => [133, 69, 4, 7, 7],
            E7M25 => [133, 79, 3, 7, 7],
            E8_8 => [248, 120, 8, 8, 8],
            E8M24 => [248, 136, 4, 8, 8],
            F4_4 => [52, 24, 4, 4, 4],
            F4M20 => [52, 36, 1, 4, 4],
            G2_2 => [14, 6, 2, 2, 2],
            E6C => [156, 78, 6, 12, 6],
            E7C => [266, 133, 7, 14, 7],
            E8C => [496, 248, 8, 16, 8],
            F4C => [104, 52, 4, 8, 4],
            G2C => [28, 14, 2, 4, 2],
        }
    }
}

/// One simple or reductive factor. Compact real forms are the `q = 0`
/// members of the indefinite families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GLR(u32),
    GLC(u32),
    /// `GL(n,H) = U*(2n)`
    GLH(u32),
    SLR(u32),
    SLC(u32),
    /// `SL(n,H) = SU*(2n)`
    SLH(u32),
    O(u32, u32),
    SO(u32, u32),
    Spin(u32, u32),
    U(u32, u32),
    SU(u32, u32),
    Sp(u32, u32),
    SpR(u32),
    OC(u32),
    SOC(u32),
    SpinC(u32),
    SpC(u32),
    /// `O*(2n)`, parametrised by `n`
    OStar(u32),
    /// `SO*(2n)`, parametrised by `n`
    SOStar(u32),
    /// compact torus `T^k`
    Torus(u32),
    /// vector group `R^k`
    Vector(u32),
    Exc(Exceptional),
}

/// Numerical invariants of a group, additive over products.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStats {
    pub dim: u64,
    pub dim_k: u64,
    pub real_rank: u64,
    pub rank: u64,
    pub rank_k: u64,
}

impl GroupStats {
    /// Non-compact dimension.
    pub fn d(&self) -> u64 {
        self.dim - self.dim_k
    }

    fn add(self, o: GroupStats) -> GroupStats {
        GroupStats {
            dim: self.dim + o.dim,
            dim_k: self.dim_k + o.dim_k,
            real_rank: self.real_rank + o.real_rank,
            rank: self.rank + o.rank,
            rank_k: self.rank_k + o.rank_k,
        }
    }
}

fn tri(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

impl Family {
    pub fn stats(&self) -> Result<GroupStats> {
        use Family::*;
        let s = |dim, dim_k, real_rank, rank, rank_k| GroupStats { dim, dim_k, real_rank, rank, rank_k };
        let st = match *self {
            GLR(n) => {
                let n = n as u64;
                s(n * n, tri(n), n, n, n / 2)
            }
            GLC(n) => {
                let n = n as u64;
                s(2 * n * n, n * n, n, 2 * n, n)
            }
            GLH(n) => {
                let n = n as u64;
                s(4 * n * n, n * (2 * n + 1), n, 2 * n, n)
            }
            SLR(n) | SLC(n) | SLH(n) if n == 0 => {
                return Err(Error::Domain(format!("{self} needs n ≥ 1")));
            }
            SLR(n) => {
                let n = n as u64;
                s(n * n - 1, tri(n), n - 1, n - 1, n / 2)
            }
            SLC(n) => {
                let n = n as u64;
                s(2 * n * n - 2, n * n - 1, n - 1, 2 * n - 2, n - 1)
            }
            SLH(n) => {
                let n = n as u64;
                s(4 * n * n - 1, n * (2 * n + 1), n - 1, 2 * n - 1, n)
            }
            O(p, q) | SO(p, q) | Spin(p, q) => {
                let (p, q) = (p as u64, q as u64);
                let n = p + q;
                s(tri(n), tri(p) + tri(q), p.min(q), n / 2, p / 2 + q / 2)
            }
            U(p, q) => {
                let (p, q) = (p as u64, q as u64);
                let n = p + q;
                s(n * n, p * p + q * q, p.min(q), n, n)
            }
            SU(p, q) => {
                let (p, q) = (p as u64, q as u64);
                let n = p + q;
                if n == 0 {
                    return Err(Error::Domain("SU(0,0) is not a group here".into()));
                }
                // K = S(U(p)×U(q)), of rank p+q-1
                s(n * n - 1, p * p + q * q - 1, p.min(q), n - 1, n - 1)
            }
            Sp(p, q) => {
                let (p, q) = (p as u64, q as u64);
                let n = p + q;
                s(n * (2 * n + 1), p * (2 * p + 1) + q * (2 * q + 1), p.min(q), n, n)
            }
            SpR(n) => {
                let n = n as u64;
                s(n * (2 * n + 1), n * n, n, n, n)
            }
            OC(n) | SOC(n) | SpinC(n) => {
                let n = n as u64;
                s(n * n.saturating_sub(1), tri(n), n / 2, 2 * (n / 2), n / 2)
            }
            SpC(n) => {
                let n = n as u64;
                s(2 * n * (2 * n + 1), n * (2 * n + 1), n, 2 * n, n)
            }
            OStar(n) | SOStar(n) => {
                let n = n as u64;
                s(n * (2 * n).saturating_sub(1), n * n, n / 2, n, n)
            }
            Torus(k) => s(k as u64, k as u64, 0, k as u64, k as u64),
            Vector(k) => s(k as u64, 0, k as u64, k as u64, 0),
            Exc(e) => {
                let [a, b, c, d, f] = e.data();
                s(a, b, c, d, f)
            }
        };
        Ok(st)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match *self {
            GLR(n) => write!(f, "GL({n},R)"),
            GLC(n) => write!(f, "GL({n},C)"),
            GLH(n) => write!(f, "GL({n},H)"),
            SLR(n) => write!(f, "SL({n},R)"),
            SLC(n) => write!(f, "SL({n},C)"),
            SLH(n) => write!(f, "SL({n},H)"),
            O(p, 0) => write!(f, "O({p})"),
            SO(p, 0) => write!(f, "SO({p})"),
            Spin(p, 0) => write!(f, "Spin({p})"),
            U(p, 0) => write!(f, "U({p})"),
            SU(p, 0) => write!(f, "SU({p})"),
            Sp(p, 0) => write!(f, "Sp({p})"),
            O(p, q) => write!(f, "O({p},{q})"),
            SO(p, q) => write!(f, "SO({p},{q})"),
            Spin(p, q) => write!(f, "Spin({p},{q})"),
            U(p, q) => write!(f, "U({p},{q})"),
            SU(p, q) => write!(f, "SU({p},{q})"),
            Sp(p, q) => write!(f, "Sp({p},{q})"),
            SpR(n) => write!(f, "Sp({n},R)"),
            OC(n) => write!(f, "O({n},C)"),
            SOC(n) => write!(f, "SO({n},C)"),
            SpinC(n) => write!(f, "Spin({n},C)"),
            SpC(n) => write!(f, "Sp({n},C)"),
            OStar(n) => write!(f, "O*({})", 2 * n),
            SOStar(n) => write!(f, "SO*({})", 2 * n),
            Torus(k) => write!(f, "T^{k}"),
            Vector(k) => write!(f, "R^{k}"),
            Exc(e) => write!(f, "{}", e.name()),
        }
    }
}

/// A finite product of factors; `X²` is stored as two copies of `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub factors: Vec<Family>,
}

impl GroupDescriptor {
    pub fn single(f: Family) -> Self {
        GroupDescriptor { factors: vec![f] }
    }

    pub fn trivial() -> Self {
        GroupDescriptor { factors: vec![] }
    }

    pub fn product(&self, other: &GroupDescriptor) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupDescriptor { factors }
    }

    pub fn squared(&self) -> Self {
        self.product(self)
    }

    pub fn stats(&self) -> Result<GroupStats> {
        self.factors.iter().try_fold(GroupStats::default(), |acc, f| Ok(acc.add(f.stats()?)))
    }

    /// Parses names such as `SO(2,2n)×U(1)` or `Sp(1,R)²`, evaluating
    /// integer arguments with `vars`.
    pub fn parse_with(s: &str, vars: &dyn Fn(&str) -> Option<i64>) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s == "{e}" {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in split_top(s, '×') {
            let part = part.trim();
            let (body, sq) = match part.strip_suffix('²') {
                Some(b) => (b, true),
                None => (part, false),
            };
            let f = parse_factor(body, vars)?;
            factors.push(f);
            if sq {
                factors.push(f);
            }
        }
        Ok(GroupDescriptor { factors })
    }
}

impl std::str::FromStr for GroupDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, &|_| None)
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.factors.len() {
            if !first {
                write!(f, "×")?;
            }
            first = false;
            let x = self.factors[i];
            if self.factors.get(i + 1) == Some(&x) {
                write!(f, "{x}²")?;
                i += 2;
            } else {
                write!(f, "{x}")?;
                i += 1;
            }
        }
        Ok(())
    }
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Evaluates `2n+1`, `n-1`, `p+q`, `4*n`, `(n-1)/2` (floor), `min(n,2p+1)` and the like.
pub fn eval_int(expr: &str, vars: &dyn Fn(&str) -> Option<i64>) -> Result<i64> {
    let e: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser { s: &e, pos: 0, vars, expr };
    let v = p.sum()?;
    if p.pos != e.len() {
        return Err(p.bad());
    }
    Ok(v)
}

struct ExprParser<'a> {
    s: &'a [char],
    pos: usize,
    vars: &'a dyn Fn(&str) -> Option<i64>,
    expr: &'a str,
}

impl ExprParser<'_> {
    fn bad(&self) -> Error {
        Error::Parse(format!("bad integer expression {:?}", self.expr))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<i64> {
        let mut v = self.product()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let r = self.product()?;
            v = if c == '+' { v.checked_add(r) } else { v.checked_sub(r) }.ok_or_else(|| self.bad())?;
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i64> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    v = v.checked_mul(self.unary()?).ok_or_else(|| self.bad())?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d == 0 {
                        return Err(Error::Parse(format!("division by zero in {:?}", self.expr)));
                    }
                    v = v.div_euclid(d);
                }
                // implicit product: `2n`, `2(p+q)`
                Some(c) if c.is_alphabetic() || c == '(' => v = v.checked_mul(self.atom()?).ok_or_else(|| self.bad())?,
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<i64> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<i64> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.bad());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let t: String = self.s[start..self.pos].iter().collect();
                t.parse().map_err(|_| self.bad())
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.s[start..self.pos].iter().collect();
                if self.peek() == Some('(') && (name == "min" || name == "max") {
                    self.pos += 1;
                    let mut vals = vec![self.sum()?];
                    while self.peek() == Some(',') {
                        self.pos += 1;
                        vals.push(self.sum()?);
                    }
                    if self.peek() != Some(')') {
                        return Err(self.bad());
                    }
                    self.pos += 1;
                    let it = vals.into_iter();
                    return Ok(if name == "min" { it.min() } else { it.max() }.unwrap_or(0));
                }
                (self.vars)(&name).ok_or_else(|| Error::Parse(format!("unbound variable {name:?} in {:?}", self.expr)))
            }
            _ => Err(self.bad()),
        }
    }
}

fn parse_factor(s: &str, vars: &dyn Fn(&str) -> Option<i64>) -> Result<Family> {
    use Family::*;
    let bad = || Error::Parse(format!("unknown group {s:?}"));
    for e in Exceptional::ALL {
        if s == e.name() {
            return Ok(Exc(e));
        }
    }
    if let Some(k) = s.strip_prefix("T^") {
        return Ok(Torus(nonneg(eval_int(k, vars)?, s)?));
    }
    if let Some(k) = s.strip_prefix("R^") {
        return Ok(Vector(nonneg(eval_int(k, vars)?, s)?));
    }
    let open = s.find('(').ok_or_else(bad)?;
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let name = &s[..open];
    let args: Vec<&str> = inner.split(',').map(str::trim).collect();
    let num = |a: &str| -> Result<u32> { nonneg(eval_int(a, vars)?, s) };
    let field = args.get(1).copied().filter(|a| matches!(*a, "R" | "C" | "H"));
    let f = match (name, args.len(), field) {
        ("GL", 2, Some("R")) => GLR(num(args[0])?),
        ("GL", 2, Some("C")) => GLC(num(args[0])?),
        ("GL", 2, Some("H")) => GLH(num(args[0])?),
        ("SL", 2, Some("R")) => SLR(num(args[0])?),
        ("SL", 2, Some("C")) => SLC(num(args[0])?),
        ("SL", 2, Some("H")) => SLH(num(args[0])?),
        ("U*", 1, _) => GLH(half(num(args[0])?, s)?),
        ("SU*", 1, _) => SLH(half(num(args[0])?, s)?),
        ("O*", 1, _) => OStar(half(num(args[0])?, s)?),
        ("SO*", 1, _) => SOStar(half(num(args[0])?, s)?),
        ("O", 2, Some("C")) => OC(num(args[0])?),
        ("SO", 2, Some("C")) => SOC(num(args[0])?),
        ("Spin", 2, Some("C")) => SpinC(num(args[0])?),
        ("Sp", 2, Some("R")) => SpR(num(args[0])?),
        ("Sp", 2, Some("C")) => SpC(num(args[0])?),
        ("O", 2, None) => O(num(args[0])?, num(args[1])?),
        ("SO", 2, None) => SO(num(args[0])?, num(args[1])?),
        ("Spin", 2, None) => Spin(num(args[0])?, num(args[1])?),
        ("U", 2, None) => U(num(args[0])?, num(args[1])?),
        ("SU", 2, None) => SU(num(args[0])?, num(args[1])?),
        ("Sp", 2, None) => Sp(num(args[0])?, num(args[1])?),
        ("O", 1, _) => O(num(args[0])?, 0),
        ("SO", 1, _) => SO(num(args[0])?, 0),
        ("Spin", 1, _) => Spin(num(args[0])?, 0),
        ("U", 1, _) => U(num(args[0])?, 0),
        ("SU", 1, _) => SU(num(args[0])?, 0),
        ("Sp", 1, _) => Sp(num(args[0])?, 0),
        _ => return Err(bad()),
    };
    Ok(f)
}

fn nonneg(v: i64, s: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::Domain(format!("negative parameter in {s:?}")))
}

fn half(v: u32, s: &str) -> Result<u32> {
    if v % 2 == 0 {
        Ok(v / 2)
    } else {
        Err(Error::Domain(format!("{s:?} needs an even size")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> u64 {
        s.parse::<GroupDescriptor>().unwrap().stats().unwrap().d()
    }

    #[test]
    fn noncompact_dimensions() {
        assert_eq!(d("GL(2,H)"), 6);
        assert_eq!(d("O(8,C)"), 28);
        assert_eq!(d("SO(3,4)"), 12);
        assert_eq!(d("SU(2,3)"), 12);
        assert_eq!(d("Sp(2,3)"), 24);
        assert_eq!(d("Sp(3,R)"), 12);
        assert_eq!(d("O*(8)"), 12);
        assert_eq!(d("Sp(1,R)²"), 4);
        assert_eq!(d("Spin(1,8)"), 8);
    }

    #[test]
    fn ranks() {
        let st = "Sp(3,C)".parse::<GroupDescriptor>().unwrap().stats().unwrap();
        assert_eq!((st.rank, st.rank_k), (6, 3));
        let st = "Sp(6,R)".parse::<GroupDescriptor>().unwrap().stats().unwrap();
        assert_eq!(st.rank, 6);
    }

    #[test]
    fn parse_templates() {
        let vars = |v: &str| (v == "n").then_some(3);
        let g = GroupDescriptor::parse_with("SO(2n+1,2n+1)×U(n-1)", &vars).unwrap();
        assert_eq!(g.to_string(), "SO(7,7)×U(2)");
        let g = GroupDescriptor::parse_with("SU*(2n)", &vars).unwrap();
        assert_eq!(g.factors, vec![Family::SLH(3)]);
        assert!("Foo(3)".parse::<GroupDescriptor>().is_err());
        assert!("SU*(3)".parse::<GroupDescriptor>().is_err());
        let g = GroupDescriptor::parse_with("Sp(n/2,n-n/2)×Spin(7,C)", &vars).unwrap();
        assert_eq!(g.to_string(), "Sp(1,2)×Spin(7,C)");
        assert_eq!(eval_int("min(n,2*n+1,4)", &vars).unwrap(), 3);
        assert_eq!(eval_int("7/2-1", &vars).unwrap(), 2);
    }

    #[test]
    fn display_roundtrip() {
        for s in ["O(8,8)²", "E6(-14)×T^1", "Sp(2)", "GL(4,R)", "O*(16)", "SO(7,C)"] {
            let g: GroupDescriptor = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }
}
