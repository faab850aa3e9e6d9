//! Irreducible fractions, regular and negative (Hirzebruch–Jung) continued
//! fractions, and Schubert's classification of rational links.
//!
//! Sign conventions for a positive fraction: regular terms `a_1 >= 0`,
//! `a_i >= 1`; negative terms `c_1 >= 1`, `c_j >= 2`. Negative fractions use
//! the term-wise negation of those bounds. `0/1 = [-1, 1] = [[1, 1]]` and
//! `1/0` has the empty expansion of both kinds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An irreducible fraction `r/s` with `s >= 0`; `s == 0` only for `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    r: i64,
    s: i64,
}

impl Fraction {
    /// Reduces and moves the sign into the numerator. `r/0` for any `r != 0`
    /// is the point at infinity `1/0`.
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r == 0 && s == 0 {
            return Err(Error::InvalidFraction("0/0".into()));
        }
        if s == 0 {
            return Ok(Self::INFINITY);
        }
        if r == i64::MIN || s == i64::MIN {
            return Err(Error::Overflow("fraction"));
        }
        let g = gcd(r, s);
        let sign = s.signum();
        Ok(Self {
            r: sign * r / g,
            s: sign * s / g,
        })
    }

    pub const INFINITY: Fraction = Fraction { r: 1, s: 0 };
    pub const ZERO: Fraction = Fraction { r: 0, s: 1 };

    pub fn integer(n: i64) -> Self {
        Self { r: n, s: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.r
    }

    pub fn denom(&self) -> i64 {
        self.s
    }

    pub fn is_infinite(&self) -> bool {
        self.s == 0
    }

    /// Strictly greater than one (false at infinity).
    pub fn gt_one(&self) -> bool {
        self.s > 0 && self.r > self.s
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            *self
        } else {
            Self {
                r: -self.r,
                s: self.s,
            }
        }
    }

    pub fn add_integer(&self, n: i64) -> Result<Self> {
        if self.is_infinite() {
            return Ok(*self);
        }
        let r = n
            .checked_mul(self.s)
            .and_then(|x| x.checked_add(self.r))
            .ok_or(Error::Overflow("fraction"))?;
        Ok(Self { r, s: self.s })
    }

    /// `s/r`, sign moved to the numerator.
    pub fn invert(&self) -> Self {
        Self::new(self.s, self.r).expect("reciprocal of an irreducible fraction")
    }

    pub fn require_gt_one(&self) -> Result<()> {
        if self.gt_one() {
            Ok(())
        } else {
            Err(Error::NotGreaterThanOne(self.to_string()))
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    /// Rational order with `1/0` above every finite value.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (self.r as i128 * other.s as i128).cmp(&(other.r as i128 * self.s as i128)),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.r, self.s)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a fraction like 11/8, got {s:?}"));
        let t = s.trim();
        match t.split_once('/') {
            Some((a, b)) => Fraction::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Fraction::integer(t.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CfKind {
    Regular,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    pub kind: CfKind,
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn regular(terms: Vec<i64>) -> Self {
        Self {
            kind: CfKind::Regular,
            terms,
        }
    }

    pub fn negative(terms: Vec<i64>) -> Self {
        Self {
            kind: CfKind::Negative,
            terms,
        }
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self
            .terms
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.kind {
            CfKind::Regular => write!(f, "[{body}]"),
            CfKind::Negative => write!(f, "[[{body}]]"),
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (kind, body) = if let Some(b) = t.strip_prefix("[[").and_then(|b| b.strip_suffix("]]")) {
            (CfKind::Negative, b)
        } else if let Some(b) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            (CfKind::Regular, b)
        } else {
            return Err(Error::Parse(format!("expected [a,b,...] or [[c,d,...]], got {s:?}")));
        };
        let terms = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad continued fraction term {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self { kind, terms })
    }
}

/// Floor-Euclid expansion of a positive fraction, all terms nonnegative.
fn euclid_terms(mut r: i64, mut s: i64) -> Vec<i64> {
    let mut terms = Vec::new();
    while s != 0 {
        terms.push(r.div_euclid(s));
        (r, s) = (s, r.rem_euclid(s));
    }
    terms
}

/// Unique even-length regular continued fraction.
pub fn regular_cf(x: Fraction) -> ContinuedFraction {
    if x.is_infinite() {
        return ContinuedFraction::regular(Vec::new());
    }
    if x.r == 0 {
        return ContinuedFraction::regular(vec![-1, 1]);
    }
    if x.r < 0 {
        let mut cf = regular_cf(x.neg());
        cf.terms.iter_mut().for_each(|t| *t = -*t);
        return cf;
    }
    let cf = ContinuedFraction::regular(euclid_terms(x.r, x.s));
    if cf.terms.len() % 2 == 1 {
        cf_parity_convert(&cf).expect("odd Euclid expansion of a positive fraction splits")
    } else {
        cf
    }
}

/// Regular expansion of odd length (non-integers only share the quiver data).
pub fn regular_cf_odd(x: Fraction) -> Result<ContinuedFraction> {
    let even = regular_cf(x);
    if even.terms.is_empty() {
        return Err(Error::InvalidContinuedFraction("1/0 has no odd expansion".into()));
    }
    cf_parity_convert(&even)
}

/// Hirzebruch–Jung expansion via the ceiling recursion.
pub fn negative_cf(x: Fraction) -> ContinuedFraction {
    if x.is_infinite() {
        return ContinuedFraction::negative(Vec::new());
    }
    if x.r == 0 {
        return ContinuedFraction::negative(vec![1, 1]);
    }
    if x.r < 0 {
        let mut cf = negative_cf(x.neg());
        cf.terms.iter_mut().for_each(|t| *t = -*t);
        return cf;
    }
    let (mut r, mut s) = (x.r, x.s);
    let mut terms = Vec::new();
    while s != 0 {
        // c = ceil(r/s); r/s = c - s/(c s - r)
        let c = -((-r).div_euclid(s));
        terms.push(c);
        (r, s) = (s, c * s - r);
    }
    ContinuedFraction::negative(terms)
}

/// Exact fold-right evaluation. Empty terms give `1/0`.
pub fn eval_cf(cf: &ContinuedFraction) -> Result<Fraction> {
    // Projective pair (num, den) of the tail, starting from 1/0.
    let (mut num, mut den) = (1i64, 0i64);
    let ovf = || Error::Overflow("continued fraction evaluation");
    for (k, &a) in cf.terms.iter().rev().enumerate() {
        if k > 0 && num == 0 {
            return Err(Error::InvalidContinuedFraction(format!(
                "{cf} divides by zero"
            )));
        }
        let an = a.checked_mul(num).ok_or_else(ovf)?;
        let next = match cf.kind {
            CfKind::Regular => an.checked_add(den),
            CfKind::Negative => an.checked_sub(den),
        }
        .ok_or_else(ovf)?;
        (num, den) = (next, num);
    }
    Fraction::new(num, den)
}

/// Sign of the value a regular term list encodes, judged from its terms.
fn regular_sign(terms: &[i64]) -> Option<i64> {
    if terms.len() >= 2 {
        let s = terms[1].signum();
        (s != 0).then_some(s)
    } else {
        terms.first().map(|t| if *t < 0 { -1 } else { 1 })
    }
}

fn validate_regular(terms: &[i64]) -> bool {
    if terms == [-1, 1] {
        return true;
    }
    let Some(sign) = regular_sign(terms) else {
        return false;
    };
    terms.iter().enumerate().all(|(i, &t)| {
        let t = t * sign;
        if i == 0 {
            t >= 0
        } else {
            t >= 1
        }
    })
}

/// Toggles `[..., a_n + 1] <-> [..., a_n, 1]` (and the mirrored form for
/// negative fractions).
pub fn cf_parity_convert(cf: &ContinuedFraction) -> Result<ContinuedFraction> {
    if cf.kind != CfKind::Regular {
        return Err(Error::InvalidContinuedFraction(
            "parity conversion applies to regular expansions".into(),
        ));
    }
    if cf.terms.is_empty() || !validate_regular(&cf.terms) {
        return Err(Error::InvalidContinuedFraction(format!("{cf} violates the sign conventions")));
    }
    let n = cf.terms.len();
    let sign = regular_sign(&cf.terms).unwrap();
    let last = cf.terms[n - 1];
    let mut terms = cf.terms.clone();
    if n >= 2 && last == sign {
        terms.pop();
        terms[n - 2] += sign;
    } else if cf.terms == [0] {
        terms = vec![-1, 1];
    } else {
        terms[n - 1] -= sign;
        terms.push(sign);
    }
    if !validate_regular(&terms) {
        return Err(Error::InvalidContinuedFraction(format!(
            "converting {cf} would violate the sign conventions"
        )));
    }
    Ok(ContinuedFraction::regular(terms))
}

/// Two rational links `L(r/s)`, `L(r'/s')` (both `> 1`) are isotopic iff
/// `r = r'` and `s ≡ s'` or `s s' ≡ 1 (mod r)`.
pub fn schubert_equivalent(x: Fraction, y: Fraction) -> Result<bool> {
    x.require_gt_one()?;
    y.require_gt_one()?;
    if x.r != y.r {
        return Ok(false);
    }
    let r = x.r as i128;
    let (s, t) = (x.s as i128, y.s as i128);
    Ok((s - t).rem_euclid(r) == 0 || (s * t).rem_euclid(r) == 1 % r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_normalization() {
        assert_eq!(Fraction::new(6, -4).unwrap(), f("-3/2"));
        assert_eq!(Fraction::new(-5, 0).unwrap(), Fraction::INFINITY);
        assert_eq!(Fraction::new(0, 7).unwrap(), Fraction::ZERO);
        assert!(Fraction::new(0, 0).is_err());
        assert_eq!(f("1/0").to_string(), "1/0");
        assert_eq!(f("-3/2").to_string(), "-3/2");
        assert_eq!(f("5").to_string(), "5/1");
    }

    #[test]
    fn regular_examples() {
        assert_eq!(regular_cf(f("11/8")).terms, vec![1, 2, 1, 2]);
        assert_eq!(regular_cf(f("0/1")).terms, vec![-1, 1]);
        assert_eq!(regular_cf(f("-3/2")).terms, vec![-1, -2]);
        assert_eq!(regular_cf(f("1/0")).terms, Vec::<i64>::new());
        assert_eq!(regular_cf(f("1/1")).terms, vec![0, 1]);
        assert_eq!(regular_cf(f("-1/2")).terms, vec![0, -2]);
    }

    #[test]
    fn negative_examples() {
        assert_eq!(negative_cf(f("0/1")).to_string(), "[[1,1]]");
        assert_eq!(negative_cf(f("3/2")).to_string(), "[[2,2]]");
        assert_eq!(negative_cf(f("-3/2")).to_string(), "[[-2,-2]]");
        assert_eq!(negative_cf(f("1/0")).to_string(), "[[]]");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_cf(&cf("[1,2,1,2]")).unwrap(), f("11/8"));
        assert_eq!(eval_cf(&cf("[]")).unwrap(), Fraction::INFINITY);
        assert_eq!(eval_cf(&cf("[2,2]")).unwrap(), f("5/2"));
        assert_eq!(eval_cf(&cf("[-1,1]")).unwrap(), Fraction::ZERO);
        assert_eq!(eval_cf(&cf("[[1,1]]")).unwrap(), Fraction::ZERO);
        assert!(eval_cf(&cf("[0,0]")).is_err());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(cf_parity_convert(&cf("[1,2,1,2]")).unwrap(), cf("[1,2,1,1,1]"));
        assert_eq!(cf_parity_convert(&cf("[2,2]")).unwrap(), cf("[2,1,1]"));
        assert_eq!(cf_parity_convert(&cf("[2,1,1]")).unwrap(), cf("[2,2]"));
        assert_eq!(cf_parity_convert(&cf("[1,1]")).unwrap(), cf("[2]"));
        assert_eq!(cf_parity_convert(&cf("[-1,-2]")).unwrap(), cf("[-1,-1,-1]"));
        assert!(cf_parity_convert(&cf("[1,0,2]")).is_err());
        assert!(cf_parity_convert(&cf("[[2,2]]")).is_err());
        assert!(cf_parity_convert(&cf("[]")).is_err());
    }

    #[test]
    fn schubert_examples() {
        assert!(schubert_equivalent(f("12/5"), f("12/5")).unwrap());
        assert!(!schubert_equivalent(f("12/5"), f("12/7")).unwrap());
        assert!(schubert_equivalent(f("5/2"), f("5/3")).unwrap());
        assert!(schubert_equivalent(f("1/2"), f("5/3")).is_err());
    }

    #[test]
    fn round_trip_exhaustive() {
        for r in -200i64..=200 {
            for s in 1i64..=200 {
                if gcd(r, s) != 1 {
                    continue;
                }
                let x = Fraction::new(r, s).unwrap();
                let reg = regular_cf(x);
                assert_eq!(reg.terms.len() % 2, 0, "{x}");
                assert!(validate_regular(&reg.terms), "{x} -> {reg}");
                assert_eq!(eval_cf(&reg).unwrap(), x);
                let neg = negative_cf(x);
                assert_eq!(eval_cf(&neg).unwrap(), x);
                let sign = r.signum().max(if r == 0 { 1 } else { -1 });
                for (j, c) in neg.terms.iter().enumerate().filter(|_| r != 0) {
                    let c = c * sign;
                    assert!(if j == 0 { c >= 1 } else { c >= 2 }, "{x} -> {neg}");
                }
                if x.gt_one() {
                    assert!(reg.terms.iter().all(|&a| a >= 1));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn schubert_is_an_equivalence(r in 2i64..60, a in 1i64..60, b in 1i64..60, c in 1i64..60) {
            let pick = |s: i64| {
                let s = s % r;
                (s > 0 && gcd(r, s) == 1).then(|| Fraction::new(r, s).unwrap())
            };
            if let (Some(x), Some(y), Some(z)) = (pick(a), pick(b), pick(c)) {
                prop_assert!(schubert_equivalent(x, x).unwrap());
                prop_assert_eq!(schubert_equivalent(x, y).unwrap(), schubert_equivalent(y, x).unwrap());
                if schubert_equivalent(x, y).unwrap() && schubert_equivalent(y, z).unwrap() {
                    prop_assert!(schubert_equivalent(x, z).unwrap());
                }
            }
        }

        #[test]
        fn even_expansion_unique(r in -300i64..300, s in 1i64..300) {
            if gcd(r, s) == 1 {
                let x = Fraction::new(r, s).unwrap();
                let cf = regular_cf(x);
                prop_assert_eq!(regular_cf(eval_cf(&cf).unwrap()), cf);
            }
        }
    }
}
