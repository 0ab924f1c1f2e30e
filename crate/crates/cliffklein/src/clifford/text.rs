//! Text form of multivectors: `3/2*v+1v-2 - 1`.

use std::fmt;

use num_traits::{One, Signed};

use super::{MultiVector, Signature};
use crate::error::{Error, Result};
use crate::linalg::{int, Rat};

impl MultiVector {
    /// Parses a sum of terms such as `3/2*v+1v-2 - 1` or `-v-1 + 2`.
    /// Generator words need not be in canonical order; they are multiplied out.
    pub fn parse(sig: Signature, text: &str) -> Result<Self> {
        let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty multivector".into()));
        }
        let mut pos = 0;
        let mut out = MultiVector::zero(sig);
        let mut first = true;
        while pos < s.len() {
            let mut sign = 1i64;
            if s[pos] == '+' || s[pos] == '-' {
                if s[pos] == '-' {
                    sign = -1;
                }
                pos += 1;
            } else if !first {
                return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}")));
            }
            first = false;
            let term = parse_term(sig, &s, &mut pos)?;
            out = out.try_add(&term.scale(&int(sign)))?;
        }
        Ok(out)
    }
}

fn parse_term(sig: Signature, s: &[char], pos: &mut usize) -> Result<MultiVector> {
    let mut coeff = Rat::one();
    let mut have_coeff = false;
    if *pos < s.len() && s[*pos].is_ascii_digit() {
        let num = read_digits(s, pos);
        let mut r: Rat = Rat::from_integer(num.parse().map_err(|_| Error::Parse(num.clone()))?);
        if *pos < s.len() && s[*pos] == '/' {
            *pos += 1;
            let den = read_digits(s, pos);
            if den.is_empty() {
                return Err(Error::Parse("missing denominator".into()));
            }
            let d: Rat = Rat::from_integer(den.parse().map_err(|_| Error::Parse(den.clone()))?);
            if d == int(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            r /= d;
        }
        coeff = r;
        have_coeff = true;
        if *pos < s.len() && s[*pos] == '*' {
            *pos += 1;
        } else {
            return Ok(MultiVector::scalar(sig, coeff));
        }
    }
    let mut word = MultiVector::one(sig);
    let mut any = false;
    while *pos < s.len() && s[*pos] == 'v' {
        *pos += 1;
        let kind = s.get(*pos).copied().ok_or_else(|| Error::Parse("dangling 'v'".into()))?;
        *pos += 1;
        let digits = read_digits(s, pos);
        let idx: u32 = digits.parse().map_err(|_| Error::Parse(format!("bad generator index {digits:?}")))?;
        let g = match kind {
            '+' if (1..=sig.p).contains(&idx) => MultiVector::plus(sig, idx),
            '-' if (1..=sig.q).contains(&idx) => MultiVector::minus(sig, idx),
            '+' | '-' => return Err(Error::Parse(format!("v{kind}{idx} is not a generator of C{sig}"))),
            _ => return Err(Error::Parse(format!("expected v+ or v-, found v{kind}"))),
        };
        word = word.try_mul(&g)?;
        any = true;
    }
    if !any {
        return Err(Error::Parse(if have_coeff {
            "expected a generator after '*'".into()
        } else {
            format!("unexpected input at offset {}", *pos)
        }));
    }
    Ok(word.scale(&coeff))
}

fn read_digits(s: &[char], pos: &mut usize) -> String {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    s[start..*pos].iter().collect()
}

/// Canonical word of a blade, e.g. `v+1v-2`.
pub fn blade_word(sig: &Signature, mask: u32) -> String {
    (0..sig.n()).filter(|k| mask >> k & 1 == 1).map(|k| sig.generator_name(k)).collect()
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mask, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *mask == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", blade_word(&self.sig(), *mask))?;
            } else {
                write!(f, "{a}*{}", blade_word(&self.sig(), *mask))?;
            }
        }
        Ok(())
    }
}
