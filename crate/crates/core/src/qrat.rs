//! Left (`♭`) and right (`♯`) q-deformed rationals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{negative_cf, regular_cf, Fraction};
use crate::laurent::{q_integer, q_integer_signed, LaurentPoly};
use crate::qmod::{m_q, m_q_neg, QMatrix};
use crate::quivers::{closure, flat_quivers, sharp_quivers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "flat" => Ok(Side::Left),
            "right" | "sharp" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    RegularCf,
    NegativeCf,
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QRational {
    #[serde(rename = "fraction")]
    pub base: Fraction,
    pub side: Side,
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Scales `(num, den)` by the unique `±q^n` that puts `den` in `Z[q]` with a
/// positive constant term. A zero `den` normalizes `num` instead.
pub fn normalize_pair(num: &LaurentPoly, den: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let key = if den.is_zero() { num } else { den };
    if key.is_zero() {
        return Err(Error::InvalidFraction("0/0 pair".into()));
    }
    let n = key.normalize();
    Ok((num.scale(n.sign)?.shift(n.shift)?, den.scale(n.sign)?.shift(n.shift)?))
}

/// `(x1, y1) = ±q^n (x2, y2)` for one common scalar.
pub fn pair_equiv(a: (&LaurentPoly, &LaurentPoly), b: (&LaurentPoly, &LaurentPoly)) -> bool {
    let pick = |x: &LaurentPoly, y: &LaurentPoly| -> Option<Option<(i64, i32)>> {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => Some(None),
            (false, false) => x.equiv(y).map(Some),
            _ => None,
        }
    };
    match (pick(a.0, b.0), pick(a.1, b.1)) {
        (Some(Some(e)), Some(Some(f))) => e == f,
        (Some(_), Some(_)) => true,
        _ => false,
    }
}

fn build(base: Fraction, side: Side, num: LaurentPoly, den: LaurentPoly) -> Result<QRational> {
    let (num, den) = normalize_pair(&num, &den)?;
    Ok(QRational { base, side, num, den })
}

pub fn right_qrat(x: Fraction, route: Route) -> Result<QRational> {
    let (num, den) = match route {
        Route::RegularCf => {
            let m = m_q(&regular_cf(x).terms)?;
            (m.a().clone(), m.c().clone())
        }
        Route::NegativeCf => {
            let m = m_q_neg(&negative_cf(x).terms)?;
            (m.a().clone(), m.c().clone())
        }
        Route::Closure => {
            let (qr, qs) = sharp_quivers(x)?;
            (closure(&qr)?, closure(&qs)?)
        }
    };
    build(x, Side::Right, num, den)
}

/// `M_q(a)` applied to the column `(1, 1 - q)`.
fn apply_to_flat_infinity(m: &QMatrix) -> Result<(LaurentPoly, LaurentPoly)> {
    let col = LaurentPoly::from_ascending(&[1, -1]);
    Ok((
        m.a().checked_add(&m.b().checked_mul(&col)?)?,
        m.c().checked_add(&m.d().checked_mul(&col)?)?,
    ))
}

pub fn left_qrat(x: Fraction, route: Route) -> Result<QRational> {
    let (num, den) = match route {
        Route::RegularCf => apply_to_flat_infinity(&m_q(&regular_cf(x).terms)?)?,
        Route::NegativeCf => {
            return Err(Error::InvalidContinuedFraction(
                "left q-rationals are computed from the regular expansion".into(),
            ))
        }
        Route::Closure => {
            let (qr, qs) = flat_quivers(x)?;
            (closure(&qr)?, closure(&qs)?)
        }
    };
    build(x, Side::Left, num, den)
}

pub fn qrat(x: Fraction, side: Side) -> Result<QRational> {
    match side {
        Side::Left => left_qrat(x, Route::RegularCf),
        Side::Right => right_qrat(x, Route::RegularCf),
    }
}

/// Closed form of the left numerator of `n/1`:
/// `q^n + [n-1]_q` for `n > 0`, `1 - q^-1` for `n = 0`,
/// `-q^{n-1} - q^{n+1} - q^{n+2} - ... - q^-1` for `n < 0`.
pub fn flat_integer_numerator(n: i64) -> Result<LaurentPoly> {
    let e = i32::try_from(n).map_err(|_| Error::Overflow("q-integer exponent"))?;
    match n {
        0 => Ok(LaurentPoly::from_coeffs(-1, vec![-1, 1])),
        n if n > 0 => LaurentPoly::monomial(1, e).checked_add(&q_integer(n - 1)?),
        _ => {
            let mut coeffs = vec![0i64; (-e) as usize + 1];
            coeffs[0] = -1;
            for c in coeffs.iter_mut().skip(2) {
                *c = -1;
            }
            Ok(LaurentPoly::from_coeffs(e - 1, coeffs))
        }
    }
}

fn reject_infinity(x: &QRational, what: &str) -> Result<()> {
    if x.base.is_infinite() {
        return Err(Error::InvalidFraction(format!("{what} is not defined for 1/0")));
    }
    Ok(())
}

/// `q^n [x]^♭ + [n]_q`, which is `[x + n]^♭`.
pub fn left_shift(x: &QRational, n: i64) -> Result<QRational> {
    reject_infinity(x, "shift")?;
    let e = i32::try_from(n).map_err(|_| Error::Overflow("shift exponent"))?;
    let num = x.num.shift(e)?.checked_add(&q_integer_signed(n)?.checked_mul(&x.den)?)?;
    build(x.base.add_integer(n)?, Side::Left, num, x.den.clone())
}

/// `-q^-1 [x]^♭_{q^-1}`, which is `[-x]^♭`.
pub fn left_negate(x: &QRational) -> Result<QRational> {
    let num = x.num.invert_variable().scale(-1)?.shift(-1)?;
    build(x.base.neg(), Side::Left, num, x.den.invert_variable())
}

/// `1 / [x]^♭_{q^-1}`, which is `[1/x]^♭`.
pub fn left_invert(x: &QRational) -> Result<QRational> {
    build(x.base.invert(), Side::Left, x.den.invert_variable(), x.num.invert_variable())
}

/// First column of a group element against the right q-rational of its
/// value at `q = 1`, and the first row `(R, qV)` against that of `r/v`.
pub fn column_row_laws(m: &QMatrix) -> Result<(bool, bool)> {
    let [[r, v], [s, _]] = m.eval_one()?;
    let col = right_qrat(Fraction::new(r, s)?, Route::RegularCf)?;
    let row = right_qrat(Fraction::new(r, v)?, Route::RegularCf)?;
    let qv = m.b().shift(1)?;
    Ok((
        pair_equiv((m.a(), m.c()), (&col.num, &col.den)),
        pair_equiv((m.a(), &qv), (&row.num, &row.den)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmod::word_to_matrix;
    use crate::qmod::GenWord;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn right_examples() {
        for n in -4..=6 {
            let x = right_qrat(Fraction::integer(n), Route::RegularCf).unwrap();
            assert_eq!((x.num, x.den), (q_integer_signed(n).unwrap(), p("1")), "{n}");
        }
        let x = right_qrat(frac("5/2"), Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("1 + 2q + q^2 + q^3"), p("1 + q")));
        let x = right_qrat(Fraction::INFINITY, Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("1"), p("0")));
        let x = right_qrat(Fraction::ZERO, Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("0"), p("1")));
        assert!(right_qrat(frac("1/2"), Route::Closure).is_err());
    }

    #[test]
    fn left_examples() {
        let x = left_qrat(frac("11/8"), Route::RegularCf).unwrap();
        assert_eq!(x.num, p("1 + q + 2q^2 + 2q^3 + 2q^4 + 2q^5 + q^6"));
        assert_eq!(x.den, p("1 + q + 2q^2 + q^3 + 2q^4 + q^5"));
        let x = left_qrat(Fraction::ZERO, Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("1 - q^-1"), p("1")));
        let x = left_qrat(frac("5/2"), Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("1 + q + q^2 + q^3 + q^4"), p("1 + q^2")));
        let x = left_qrat(Fraction::INFINITY, Route::RegularCf).unwrap();
        assert_eq!((x.num, x.den), (p("1"), p("1 - q")));
    }

    #[test]
    fn flat_integers() {
        assert_eq!(flat_integer_numerator(3).unwrap(), p("q^3 + q + 1"));
        assert_eq!(flat_integer_numerator(1).unwrap(), p("q"));
        assert_eq!(flat_integer_numerator(0).unwrap(), p("1 - q^-1"));
        assert_eq!(flat_integer_numerator(-1).unwrap(), p("-q^-2"));
        assert_eq!(flat_integer_numerator(-2).unwrap(), p("-q^-3 - q^-1"));
        assert_eq!(flat_integer_numerator(-4).unwrap(), p("-q^-5 - q^-3 - q^-2 - q^-1"));
        for n in -30..=30 {
            let x = left_qrat(Fraction::integer(n), Route::RegularCf).unwrap();
            assert_eq!(x.den, p("1"));
            assert_eq!(x.num, flat_integer_numerator(n).unwrap(), "{n}");
        }
    }

    #[test]
    fn left_identities_examples() {
        let l = |s: &str| left_qrat(frac(s), Route::RegularCf).unwrap();
        assert_eq!(left_shift(&l("11/8"), 1).unwrap(), l("19/8"));
        assert_eq!(left_negate(&l("5/2")).unwrap(), l("-5/2"));
        assert_eq!(left_invert(&l("5/2")).unwrap(), l("2/5"));
        let inf = left_invert(&l("0")).unwrap();
        assert_eq!(inf, left_qrat(Fraction::INFINITY, Route::RegularCf).unwrap());
        assert!(left_shift(&inf, 1).is_err());
    }

    #[test]
    fn value_at_one() {
        for s in 1..=25 {
            for r in -40..=40 {
                let Ok(x) = Fraction::new(r, s) else { continue };
                for side in [Side::Left, Side::Right] {
                    let q = qrat(x, side).unwrap();
                    let (n1, d1) = (q.num.eval_one().unwrap(), q.den.eval_one().unwrap());
                    assert_eq!(Fraction::new(n1, d1).unwrap(), x);
                    assert_eq!(d1, x.denom(), "{x} {side}");
                    assert_eq!(q.den.constant_term(), 1);
                    if x.gt_one() {
                        assert_eq!(q.num.constant_term(), 1);
                        assert!(q.num.is_polynomial());
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let x = right_qrat(frac("5/2"), Route::RegularCf).unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v["fraction"], "5/2");
        assert_eq!(v["side"], "right");
        assert_eq!(v["den"]["coeffs"], serde_json::json!([1, 1]));
        let back: QRational = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn column_and_row_laws_on_words() {
        for w in ["R^2 L^3", "S R^-2 L^1 S", "L^4 R^-1", "R^1 L^2 R^1 L^2", "S L^-3 R^2"] {
            let m = word_to_matrix(&w.parse::<GenWord>().unwrap()).unwrap();
            assert_eq!(column_row_laws(&m).unwrap(), (true, true), "{w}");
        }
    }

    proptest! {
        #[test]
        fn left_identities(r in -80i64..80, s in 1i64..40, n in -6i64..6) {
            let x = Fraction::new(r, s).unwrap();
            let l = left_qrat(x, Route::RegularCf).unwrap();
            prop_assert_eq!(left_shift(&l, n).unwrap(), left_qrat(x.add_integer(n).unwrap(), Route::RegularCf).unwrap());
            prop_assert_eq!(left_negate(&l).unwrap(), left_qrat(x.neg(), Route::RegularCf).unwrap());
            prop_assert_eq!(left_invert(&l).unwrap(), left_qrat(x.invert(), Route::RegularCf).unwrap());
        }

        #[test]
        fn right_routes_agree_everywhere(r in -80i64..80, s in 0i64..40) {
            prop_assume!(r != 0 || s != 0);
            let x = Fraction::new(r, s).unwrap();
            prop_assert_eq!(right_qrat(x, Route::RegularCf).unwrap(), right_qrat(x, Route::NegativeCf).unwrap());
        }
    }
}
