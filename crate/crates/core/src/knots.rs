//! Normalized Jones polynomials of rational links and the defect `I_α`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{regular_cf, Fraction};
use crate::laurent::{modality_of, LaurentPoly};
use crate::qmod::{canonical_trace, m_q, reduce_trace_type, QMatrix, TraceType};
use crate::qrat::{left_qrat, right_qrat, Route};
use crate::scan::par_map;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JonesRoute {
    /// `(R^♭)^∨`
    FlatReciprocal,
    /// `q R^♯ + (1 - q) S^♯`
    SharpFormula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JonesResult {
    pub alpha: Fraction,
    #[serde(rename = "J")]
    pub j: LaurentPoly,
    pub route: JonesRoute,
}

pub fn jones(alpha: Fraction, route: JonesRoute) -> Result<JonesResult> {
    alpha.require_gt_one()?;
    let j = match route {
        JonesRoute::FlatReciprocal => left_qrat(alpha, Route::RegularCf)?.num.reciprocal()?,
        JonesRoute::SharpFormula => {
            let x = right_qrat(alpha, Route::RegularCf)?;
            let one_minus_q = LaurentPoly::from_ascending(&[1, -1]);
            x.num.shift(1)?.checked_add(&one_minus_q.checked_mul(&x.den)?)?
        }
    };
    Ok(JonesResult { alpha, j, route })
}

fn jones_poly(alpha: Fraction) -> Result<LaurentPoly> {
    Ok(jones(alpha, JonesRoute::FlatReciprocal)?.j)
}

/// `J_α` palindromic, checked against `s^2 ≡ -1 (mod r)`.
pub fn jones_palindromic(alpha: Fraction) -> Result<bool> {
    let pal = jones_poly(alpha)?.is_palindromic();
    let (r, s) = (alpha.numer() as i128, alpha.denom() as i128);
    let congruent = (s * s + 1).rem_euclid(r) == 0;
    if pal != congruent {
        return Err(Error::Inconsistent(format!(
            "J_{alpha} palindromic = {pal} but s^2 ≡ -1 (mod r) is {congruent}"
        )));
    }
    Ok(pal)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaResult {
    pub alpha: Fraction,
    pub iota: LaurentPoly,
    pub trace_type: Option<TraceType>,
}

/// `canonical((J^∨ - J) / (1 - q))`, or 0 for palindromic `J`.
pub fn iota_from_jones(j: &LaurentPoly) -> Result<LaurentPoly> {
    if j.is_palindromic() {
        return Ok(LaurentPoly::zero());
    }
    Ok(j.reciprocal()?.checked_sub(j)?.divide_one_minus_q()?.canonical())
}

pub fn iota(alpha: Fraction) -> Result<IotaResult> {
    let iota = iota_from_jones(&jones_poly(alpha)?)?;
    let trace_type = Some(reduce_trace_type(&trace_matrix_a(alpha)?)?);
    Ok(IotaResult { alpha, iota, trace_type })
}

/// `A = (-S_q) M_q(a)` for the even expansion `a` of `alpha`.
pub fn trace_matrix_a(alpha: Fraction) -> Result<QMatrix> {
    alpha.require_gt_one()?;
    let m = m_q(&regular_cf(alpha).terms)?;
    QMatrix::s_q().neg()?.mul(&m)
}

/// `α_i = (r + i(s + t) + i^2 u) / (s + iu)` for `i = 1..=count`, where
/// `M(a)(1) = [[r, t], [s, u]]`. Each member is recomputed and must share
/// `I_α` with `alpha`.
pub fn trace_preserving_family(alpha: Fraction, count: usize) -> Result<Vec<Fraction>> {
    alpha.require_gt_one()?;
    if count == 0 {
        return Err(Error::InvalidFraction("family size must be at least 1".into()));
    }
    let [[r, t], [s, u]] = m_q(&regular_cf(alpha).terms)?.eval_one()?;
    let target = iota(alpha)?.iota;
    let mut out = Vec::with_capacity(count);
    for i in 1..=count as i64 {
        let ovf = || Error::Overflow("family member");
        let num = i
            .checked_mul(s + t)
            .and_then(|x| x.checked_add(r))
            .and_then(|x| i.checked_mul(i)?.checked_mul(u)?.checked_add(x))
            .ok_or_else(ovf)?;
        let den = i.checked_mul(u).and_then(|x| x.checked_add(s)).ok_or_else(ovf)?;
        let x = Fraction::new(num, den)?;
        if !x.gt_one() || out.contains(&x) {
            return Err(Error::Inconsistent(format!("family member {i} of {alpha} is {x}")));
        }
        let got = iota(x)?.iota;
        if got != target {
            return Err(Error::Inconsistent(format!("I_{x} = {got} but I_{alpha} = {target}")));
        }
        out.push(x);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exception {
    None,
    OnePlusQn,
    Staircase,
}

impl fmt::Display for Exception {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exception::None => "none",
            Exception::OnePlusQn => "one_plus_qn",
            Exception::Staircase => "staircase",
        })
    }
}

/// `(1, 2, ..., k, k-1, k, k-1, ..., 2, 1)`, length `2k + 1`, for `k >= 2`.
pub fn staircase_profile(k: usize) -> Vec<i64> {
    let k = k as i64;
    let mut v: Vec<i64> = (1..=k).collect();
    v.push(k - 1);
    v.extend((1..=k).rev());
    v
}

/// Which conjectured exception shape a non-unimodal coefficient vector has.
pub fn classify_exception(coeffs: &[i64]) -> Exception {
    if modality_of(coeffs) <= 1 {
        return Exception::None;
    }
    let n = coeffs.len();
    if n >= 3 && coeffs[0] == 1 && coeffs[n - 1] == 1 && coeffs[1..n - 1].iter().all(|&c| c == 0) {
        return Exception::OnePlusQn;
    }
    if n % 2 == 1 && n >= 5 {
        let k = (n - 1) / 2;
        let prof = staircase_profile(k);
        let rev: Vec<i64> = prof.iter().rev().copied().collect();
        if coeffs == prof.as_slice() || coeffs == rev.as_slice() {
            return Exception::Staircase;
        }
    }
    Exception::None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaRecord {
    pub alpha: Fraction,
    #[serde(rename = "J")]
    pub j: LaurentPoly,
    #[serde(rename = "I")]
    pub i: LaurentPoly,
    pub modality: usize,
    pub exception: Exception,
    pub trace_type: String,
}

impl IotaRecord {
    /// Modality above 2, or a bimodal `I` outside both exception shapes.
    pub fn is_violation(&self) -> bool {
        self.modality > 2 || (self.modality == 2 && self.exception == Exception::None)
    }
}

pub fn iota_record(alpha: Fraction) -> Result<IotaRecord> {
    let j = jones_poly(alpha)?;
    let res = iota(alpha)?;
    let coeffs = res.iota.coeffs().to_vec();
    Ok(IotaRecord {
        alpha,
        j,
        modality: modality_of(&coeffs),
        exception: classify_exception(&coeffs),
        i: res.iota,
        trace_type: res.trace_type.map(|t| t.to_string()).unwrap_or_default(),
    })
}

/// Irreducible `r/s > 1` with `r <= max_r`, ordered by `(r, s)`.
pub fn fractions_above_one(max_r: i64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        for s in 1..r {
            if let Ok(x) = Fraction::new(r, s) {
                if x.numer() == r && x.denom() == s {
                    out.push(x);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaScan {
    pub records: Vec<IotaRecord>,
    pub violations: Vec<Fraction>,
}

pub fn iota_scan(max_r: i64, jobs: usize) -> Result<IotaScan> {
    let inputs = fractions_above_one(max_r);
    let records = par_map(&inputs, jobs, |&x| iota_record(x)).into_iter().collect::<Result<Vec<_>>>()?;
    let violations = records.iter().filter(|r| r.is_violation()).map(|r| r.alpha).collect();
    Ok(IotaScan { records, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OguzRecord {
    pub a: Vec<i64>,
    pub trace: LaurentPoly,
    pub modality: usize,
    /// Of the form `(1, k, 1, k)` or `(k, 1, k, 1)`.
    pub one_k_one_k: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OguzScan {
    pub records: Vec<OguzRecord>,
    /// Non-unimodal traces of other shapes, or `(1, k, 1, k)` traces that are
    /// unimodal, or traces with constant term other than 1.
    pub violations: Vec<Vec<i64>>,
}

pub fn is_one_k_one_k(a: &[i64]) -> bool {
    match a {
        [1, k, 1, l] | [k, 1, l, 1] => k == l,
        _ => false,
    }
}

/// Even-length positive tuples with sum at most `max_sum`, in lexicographic
/// order.
pub fn even_tuples(max_sum: i64) -> Vec<Vec<i64>> {
    fn go(prefix: &mut Vec<i64>, left: i64, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() && prefix.len().is_multiple_of(2) {
            out.push(prefix.clone());
        }
        for x in 1..=left {
            prefix.push(x);
            go(prefix, left - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_sum, &mut out);
    out
}

pub fn oguz_record(a: &[i64]) -> Result<OguzRecord> {
    let trace = canonical_trace(&m_q(a)?)?;
    Ok(OguzRecord {
        a: a.to_vec(),
        modality: modality_of(trace.coeffs()),
        one_k_one_k: is_one_k_one_k(a),
        trace,
    })
}

pub fn oguz_scan(max_sum: i64, jobs: usize) -> Result<OguzScan> {
    let inputs = even_tuples(max_sum);
    let records = par_map(&inputs, jobs, |a| oguz_record(a)).into_iter().collect::<Result<Vec<_>>>()?;
    let violations = records
        .iter()
        .filter(|r| (r.modality > 1) != r.one_k_one_k || r.trace.constant_term() != 1)
        .map(|r| r.a.clone())
        .collect();
    Ok(OguzScan { records, violations })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertReport {
    pub equal_pairs: usize,
    pub reciprocal_pairs: usize,
    pub failures: Vec<(Fraction, Fraction)>,
}

/// `ss' ≡ 1 (mod r)` gives equal `J`, `ss' ≡ -1` reciprocal `J`.
pub fn schubert_jones_invariance(max_r: i64) -> Result<SchubertReport> {
    let mut report = SchubertReport::default();
    for r in 2..=max_r {
        let fr: Vec<Fraction> = fractions_above_one(r).into_iter().filter(|x| x.numer() == r).collect();
        let js = fr.iter().map(|&x| jones_poly(x)).collect::<Result<Vec<_>>>()?;
        for (i, x) in fr.iter().enumerate() {
            for (k, y) in fr.iter().enumerate() {
                let prod = (x.denom() as i128 * y.denom() as i128).rem_euclid(r as i128);
                if prod == 1 % r as i128 {
                    report.equal_pairs += 1;
                    if js[i] != js[k] {
                        report.failures.push((*x, *y));
                    }
                }
                if prod == (r as i128 - 1) {
                    report.reciprocal_pairs += 1;
                    if js[i] != js[k].reciprocal()? {
                        report.failures.push((*x, *y));
                    }
                }
            }
        }
    }
    Ok(report)
}
