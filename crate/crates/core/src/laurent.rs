//! Laurent polynomials in `q` with `i64` coefficients.
//!
//! A [`LaurentPoly`] is stored as the exponent of its first coefficient plus a
//! dense coefficient vector whose first and last entries are nonzero. The zero
//! polynomial has no coefficients and `lowest_exp == 0`. Every constructor
//! trims to that canonical form, so structural equality is polynomial equality.
//!
//! All arithmetic is overflow-checked. The `checked_*` methods report
//! [`Error::Overflow`]; the operator impls (`+`, `-`, `*`) panic instead, which
//! keeps test code readable.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawPoly")]
pub struct LaurentPoly {
    lowest_exp: i32,
    coeffs: Vec<i64>,
}

#[derive(Deserialize)]
struct RawPoly {
    lowest_exp: i32,
    coeffs: Vec<i64>,
}

impl TryFrom<RawPoly> for LaurentPoly {
    type Error = Error;

    fn try_from(raw: RawPoly) -> Result<Self> {
        let p = LaurentPoly::from_coeffs(raw.lowest_exp, raw.coeffs.clone());
        if p.lowest_exp != raw.lowest_exp || p.coeffs != raw.coeffs {
            return Err(Error::Parse(
                "polynomial JSON is not in canonical (trimmed) form".into(),
            ));
        }
        Ok(p)
    }
}

/// `sign * q^shift * original == poly`, with `poly` in `Z[q]`, nonzero and
/// positive constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub sign: i64,
    pub shift: i32,
    pub poly: LaurentPoly,
}

fn shift_exp(e: i32, n: i32) -> Result<i32> {
    e.checked_add(n).ok_or(Error::Overflow("exponent"))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^e`
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    /// Builds `sum_i coeffs[i] q^(lowest_exp + i)` and trims zero ends.
    pub fn from_coeffs(lowest_exp: i32, mut coeffs: Vec<i64>) -> Self {
        let Some(first) = coeffs.iter().position(|&c| c != 0) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
        coeffs.truncate(last + 1);
        coeffs.drain(..first);
        Self {
            lowest_exp: lowest_exp + first as i32,
            coeffs,
        }
    }

    /// Polynomial in `Z[q]` from ascending coefficients `c_0, c_1, ...`.
    pub fn from_ascending(coeffs: &[i64]) -> Self {
        Self::from_coeffs(0, coeffs.to_vec())
    }

    pub fn lowest_exp(&self) -> i32 {
        self.lowest_exp
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn highest_exp(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.lowest_exp + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e as i64 - self.lowest_exp as i64;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Unit of `Z[q, q^-1]`, i.e. `±q^n`.
    pub fn is_unit(&self) -> bool {
        self.is_monomial() && self.coeffs[0].abs() == 1
    }

    pub fn eval_one(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow("evaluation at q = 1"))
    }

    /// Value at `q = 0`; only meaningful for polynomials in `Z[q]`.
    pub fn constant_term(&self) -> i64 {
        self.coeff(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.lowest_exp >= 0
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.lowest_exp.min(other.lowest_exp);
        let hi = self.highest_exp().unwrap().max(other.highest_exp().unwrap());
        let mut out = vec![0i64; (hi - lo + 1) as usize];
        for p in [self, other] {
            let off = (p.lowest_exp - lo) as usize;
            for (i, &c) in p.coeffs.iter().enumerate() {
                out[off + i] = out[off + i]
                    .checked_add(c)
                    .ok_or(Error::Overflow("addition"))?;
            }
        }
        Ok(Self::from_coeffs(lo, out))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(Error::Overflow("negation")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lowest_exp: self.lowest_exp,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let prod = a.checked_mul(b).ok_or(Error::Overflow("multiplication"))?;
                out[i + j] = out[i + j]
                    .checked_add(prod)
                    .ok_or(Error::Overflow("multiplication"))?;
            }
        }
        let lo = shift_exp(self.lowest_exp, other.lowest_exp)?;
        Ok(Self::from_coeffs(lo, out))
    }

    pub fn scale(&self, c: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.checked_mul(c).ok_or(Error::Overflow("scaling")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(self.lowest_exp, coeffs))
    }

    /// Multiplication by `q^n`.
    pub fn shift(&self, n: i32) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self {
            lowest_exp: shift_exp(self.lowest_exp, n)?,
            coeffs: self.coeffs.clone(),
        })
    }

    /// `f(q^-1)`.
    pub fn invert_variable(&self) -> Self {
        match self.highest_exp() {
            None => Self::zero(),
            Some(hi) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self {
                    lowest_exp: -hi,
                    coeffs,
                }
            }
        }
    }

    /// The `Z[q]` representative with nonzero constant term (no sign change).
    pub fn to_polynomial_rep(&self) -> Self {
        Self {
            lowest_exp: 0,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Canonical `≡`-representative: the unique `±q^n f` in `Z[q]` with a
    /// positive constant term. The zero polynomial maps to itself.
    pub fn normalize(&self) -> Normalized {
        if self.is_zero() {
            return Normalized {
                sign: 1,
                shift: 0,
                poly: Self::zero(),
            };
        }
        let sign = self.coeffs[0].signum();
        let coeffs = self.coeffs.iter().map(|c| c * sign).collect();
        Normalized {
            sign,
            shift: -self.lowest_exp,
            poly: Self {
                lowest_exp: 0,
                coeffs,
            },
        }
    }

    pub fn canonical(&self) -> Self {
        self.normalize().poly
    }

    /// `f^∨ = q^deg(f) f(q^-1)` applied to the `Z[q]` representative of `f`
    /// with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("reciprocal"));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Self {
            lowest_exp: 0,
            coeffs,
        })
    }

    /// The zero polynomial counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `f = -f^∨`; the zero polynomial counts as anti-palindromic.
    pub fn is_antipalindromic(&self) -> bool {
        self.coeffs
            .iter()
            .zip(self.coeffs.iter().rev())
            .all(|(a, b)| *a == -*b)
    }

    /// Finds `(sign, n)` with `self = sign * q^n * other`.
    pub fn equiv(&self, other: &Self) -> Option<(i64, i32)> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some((1, 0)),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let sign = if self.coeffs[0] == other.coeffs[0] {
            1
        } else if self.coeffs[0] == -other.coeffs[0] {
            -1
        } else {
            return None;
        };
        let same = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == sign * *b);
        same.then(|| (sign, self.lowest_exp - other.lowest_exp))
    }

    pub fn is_equiv(&self, other: &Self) -> bool {
        self.equiv(other).is_some()
    }

    /// Exact quotient `f / (1 - q)`.
    pub fn divide_one_minus_q(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // f = (1 - q) g  ⇔  g_k = f_0 + ... + f_k, and the full sum vanishes.
        let n = self.coeffs.len();
        let mut g = Vec::with_capacity(n - 1);
        let mut acc = 0i64;
        for &c in &self.coeffs[..n - 1] {
            acc = acc.checked_add(c).ok_or(Error::Overflow("division"))?;
            g.push(acc);
        }
        let remainder = acc
            .checked_add(self.coeffs[n - 1])
            .ok_or(Error::Overflow("division"))?;
        if remainder != 0 {
            return Err(Error::NotDivisible { remainder });
        }
        Ok(Self::from_coeffs(self.lowest_exp, g))
    }

    /// Minimal number of contiguous unimodal blocks covering the coefficient
    /// vector of the `Z[q]` representative (interior zeros included).
    pub fn modality(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("modality"));
        }
        Ok(modality_of(&self.coeffs))
    }

    pub fn is_unimodal(&self) -> bool {
        matches!(self.modality(), Ok(1))
    }
}

/// Greedy block count: a block ends when a strict rise follows a strict fall.
pub fn modality_of(values: &[i64]) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut blocks = 1;
    let mut falling = false;
    for w in values.windows(2) {
        if w[1] < w[0] {
            falling = true;
        } else if w[1] > w[0] && falling {
            blocks += 1;
            falling = false;
        }
    }
    blocks
}

/// Euler q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeQInteger(n));
    }
    Ok(LaurentPoly::from_coeffs(0, vec![1; n as usize]))
}

/// `[n]_q = (1 - q^n) / (1 - q)` for any integer `n`; for `n < 0` this is
/// `-q^n [-n]_q`.
pub fn q_integer_signed(n: i64) -> Result<LaurentPoly> {
    if n >= 0 {
        q_integer(n)
    } else {
        let e = i32::try_from(n).map_err(|_| Error::Overflow("exponent"))?;
        q_integer(-n)?.shift(e)?.checked_neg()
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending monomial sum, e.g. `-q^-1 + 1 + 2q + q^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.lowest_exp + i as i32;
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the `Display` form in any term order; `*` between coefficient
    /// and `q` is optional.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("cannot parse polynomial {s:?}"));
        // Split into signed terms; a '-' right after '^' belongs to the exponent.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev = '\0';
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != '^' && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = ch;
        }
        terms.push(cur);

        let mut acc = LaurentPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1i64, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, exp) = match body.find('q') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let coef_str = body[..pos].trim_end_matches('*');
                    let coef = if coef_str.is_empty() {
                        1
                    } else {
                        coef_str.parse::<i64>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i32>()
                            .map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            acc = acc.checked_add(&LaurentPoly::monomial(sign * coef, exp))?;
        }
        Ok(acc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("Laurent coefficient overflow")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent coefficient overflow")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent coefficient overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(p("1 + q") + LaurentPoly::zero(), p("1 + q"));
        assert_eq!(p("1 - q") * p("1 + q"), p("1 - q^2"));
        assert_eq!(p("q^-1 + 1") * LaurentPoly::q(), p("1 + q"));
        assert_eq!(p("q^-1 + 1").shift(3).unwrap().lowest_exp(), 2);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = LaurentPoly::constant(i64::MAX);
        assert_eq!(
            big.checked_add(&LaurentPoly::one()),
            Err(Error::Overflow("addition"))
        );
        assert!(matches!(big.checked_mul(&big), Err(Error::Overflow(_))));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p("1 + 2q + q^3").reciprocal().unwrap(), p("1 + 2q^2 + q^3"));
        assert_eq!(
            p("q^6 + 2q^5 + 2q^4 + 2q^3 + 2q^2 + q + 1").reciprocal().unwrap(),
            p("1 + 2q + 2q^2 + 2q^3 + 2q^4 + q^5 + q^6")
        );
        assert_eq!(p("1 - q^-1").reciprocal().unwrap(), p("1 - q"));
        assert_eq!(
            LaurentPoly::zero().reciprocal(),
            Err(Error::ZeroPolynomial("reciprocal"))
        );
    }

    #[test]
    fn palindromicity() {
        assert!(p("q^2 + 1").is_palindromic());
        assert!(p("q - 1").is_antipalindromic());
        assert!(!p("q^5 + 2q^4 + q^3 + 2q^2 + q + 1").is_palindromic());
        assert!(LaurentPoly::zero().is_palindromic());
        assert!(LaurentPoly::zero().is_antipalindromic());
    }

    #[test]
    fn equiv_examples() {
        assert_eq!(p("q + 1 + q^-1").equiv(&p("q^2 + q + 1")), Some((1, -1)));
        assert_eq!(p("-q^3 - q^2").equiv(&p("q + 1")), Some((-1, 2)));
        assert_eq!(p("q + 1").equiv(&p("q^2 + 1")), None);
    }

    #[test]
    fn divide_examples() {
        assert_eq!(p("1 - q^2").divide_one_minus_q().unwrap(), p("1 + q"));
        assert_eq!(LaurentPoly::zero().divide_one_minus_q().unwrap(), LaurentPoly::zero());
        assert_eq!(
            p("1 + q").divide_one_minus_q(),
            Err(Error::NotDivisible { remainder: 2 })
        );
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(0).unwrap(), LaurentPoly::zero());
        assert_eq!(q_integer(1).unwrap(), LaurentPoly::one());
        assert_eq!(q_integer(3).unwrap(), p("1 + q + q^2"));
        assert_eq!(q_integer(-1), Err(Error::NegativeQInteger(-1)));
        // (1 - q^-2) / (1 - q) = -q^-2 - q^-1
        assert_eq!(q_integer_signed(-2).unwrap(), p("-q^-2 - q^-1"));
    }

    #[test]
    fn modality_examples() {
        assert_eq!(p("1 + q + q^2").modality().unwrap(), 1);
        assert_eq!(p("1 + q^3").modality().unwrap(), 2);
        assert_eq!(p("1 + 2q + q^2 + 2q^3 + q^4").modality().unwrap(), 2);
        assert!(LaurentPoly::zero().modality().is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("1 + 2q + q^3 - q^-1").to_string(), "-q^-1 + 1 + 2q + q^3");
        assert_eq!(p("q^3 + 1").to_string(), "1 + q^3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-2*q^2 + 3").to_string(), "3 - 2q^2");
        assert!("1 + x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let f = p("1 + 2q + q^3 - q^-1");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"lowest_exp":-1,"coeffs":[-1,1,2,0,1]}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&js).unwrap(), f);
        let zero = serde_json::to_string(&LaurentPoly::zero()).unwrap();
        assert_eq!(zero, r#"{"lowest_exp":0,"coeffs":[]}"#);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"lowest_exp":0,"coeffs":[0,1]}"#).is_err());
    }

    /// Minimal unimodal-block partition by dynamic programming over cut points.
    fn modality_oracle(v: &[i64]) -> usize {
        let unimodal = |w: &[i64]| {
            let peak = (0..w.len()).find(|&m| {
                w[..=m].windows(2).all(|x| x[0] <= x[1]) && w[m..].windows(2).all(|x| x[0] >= x[1])
            });
            peak.is_some()
        };
        let n = v.len();
        let mut best = vec![usize::MAX; n + 1];
        best[0] = 0;
        for j in 1..=n {
            for i in 0..j {
                if best[i] != usize::MAX && unimodal(&v[i..j]) {
                    best[j] = best[j].min(best[i] + 1);
                }
            }
        }
        best[n]
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-4i32..4, prop::collection::vec(-6i64..6, 0..7))
            .prop_map(|(lo, c)| LaurentPoly::from_coeffs(lo, c))
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
        arb_poly().prop_filter("nonzero", |f| !f.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn canonical_form_and_eval(a in arb_poly(), b in arb_poly()) {
            let s = &a * &b;
            if let (Some(&first), Some(&last)) = (s.coeffs().first(), s.coeffs().last()) {
                prop_assert!(first != 0 && last != 0);
            } else {
                prop_assert_eq!(s.lowest_exp(), 0);
            }
            prop_assert_eq!(s.eval_one().unwrap(), a.eval_one().unwrap() * b.eval_one().unwrap());
        }

        #[test]
        fn reciprocal_laws(a in arb_nonzero(), b in arb_nonzero()) {
            prop_assert!(a.reciprocal().unwrap().reciprocal().unwrap().is_equiv(&a));
            let ab = (&a * &b).reciprocal().unwrap();
            prop_assert!(ab.is_equiv(&(a.reciprocal().unwrap() * b.reciprocal().unwrap())));
            prop_assert_eq!(a.reciprocal().unwrap().eval_one().unwrap(), a.eval_one().unwrap());
            prop_assert_eq!(a.is_palindromic(), a.to_polynomial_rep() == a.reciprocal().unwrap());
        }

        #[test]
        fn divide_roundtrip(a in arb_poly()) {
            let f = &a * &LaurentPoly::from_ascending(&[1, -1]);
            prop_assert_eq!(LaurentPoly::from_ascending(&[1, -1]) * f.divide_one_minus_q().unwrap(), f);
        }

        #[test]
        fn equiv_is_an_equivalence(a in arb_nonzero(), s1 in -3i32..3, s2 in -3i32..3, neg in any::<bool>()) {
            let b = a.shift(s1).unwrap();
            let c = if neg { -b.shift(s2).unwrap() } else { b.shift(s2).unwrap() };
            prop_assert_eq!(a.equiv(&a), Some((1, 0)));
            let (e, n) = a.equiv(&b).unwrap();
            prop_assert_eq!(b.equiv(&a), Some((e, -n)));
            prop_assert!(a.equiv(&c).is_some());
            let (e2, n2) = a.equiv(&c).unwrap();
            prop_assert_eq!(c.scale(e2).unwrap().shift(n2).unwrap(), a);
        }

        #[test]
        fn q_integer_props(n in 1i64..40) {
            let f = q_integer(n).unwrap();
            prop_assert_eq!(f.eval_one().unwrap(), n);
            prop_assert!(f.is_palindromic());
        }

        #[test]
        fn modality_matches_oracle(v in prop::collection::vec(0i64..4, 1..10)) {
            let greedy = modality_of(&v);
            prop_assert_eq!(greedy, modality_oracle(&v));
            let mut r = v.clone();
            r.reverse();
            prop_assert_eq!(greedy, modality_of(&r));
        }

        #[test]
        fn text_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
