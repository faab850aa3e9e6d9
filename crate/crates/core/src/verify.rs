//! Invariant suites. Each suite counts the checks it made and keeps the
//! first few counterexamples.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{regular_cf, Fraction};
use crate::knots::{
    even_tuples, fractions_above_one, iota, jones, schubert_jones_invariance, trace_matrix_a, JonesRoute,
};
use crate::laurent::LaurentPoly;
use crate::qmod::{
    canonical_trace, m_q, matrix_equiv, orthogonal_q_transpose, q_transpose, random_word, recognize,
    reduce_trace_type, word_to_matrix, QMatrix, TraceType,
};
use crate::qrat::{column_row_laws, left_qrat, right_qrat, QRational, Route};
use crate::quivers::{
    circular_fence, closure_poly, fence_quiver, flat_quiver, opposite, rank_poly_via_antichains, ClosureMethod,
};

const KEPT_FAILURES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Routes,
    ClosureOracle,
    Transposes,
    ArithmeticFlat,
    Palin,
    Trace,
    Circular,
    Jones,
    Iota,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Routes,
        Suite::ClosureOracle,
        Suite::Transposes,
        Suite::ArithmeticFlat,
        Suite::Palin,
        Suite::Trace,
        Suite::Circular,
        Suite::Jones,
        Suite::Iota,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Routes => "routes",
            Suite::ClosureOracle => "closure-oracle",
            Suite::Transposes => "transposes",
            Suite::ArithmeticFlat => "arithmetic-flat",
            Suite::Palin => "palin",
            Suite::Trace => "trace",
            Suite::Circular => "circular",
            Suite::Jones => "jones",
            Suite::Iota => "iota",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Fractions `r/s` with `s <= max_den` (and `|r| <= max_den` where
    /// numerators range over all integers).
    pub max_den: i64,
    /// Tuple sums for quiver and trace enumerations.
    pub max_sum: i64,
    pub words: usize,
    pub word_len: usize,
    pub word_exp: i64,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_den: 60,
            max_sum: 12,
            words: 500,
            word_len: 12,
            word_exp: 5,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name().to_string(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} checks, {} failed)",
            self.suite,
            if self.passed() { "ok" } else { "FAILED" },
            self.checked,
            self.failed
        )?;
        for x in &self.failures {
            write!(f, "\n  counterexample: {x}")?;
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, b: &Bounds) -> Result<Vec<SuiteReport>> {
    Ok(match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, b)?);
            }
            out
        }
        Suite::Routes => vec![routes(b)],
        Suite::ClosureOracle => vec![closure_oracle(b)],
        Suite::Transposes => vec![transposes(b)],
        Suite::ArithmeticFlat => vec![arithmetic_flat(b)],
        Suite::Palin => vec![palin(b)],
        Suite::Trace => vec![trace(b)],
        Suite::Circular => vec![circular(b)],
        Suite::Jones => vec![jones_suite(b)],
        Suite::Iota => vec![iota_suite(b)],
    })
}

/// Irreducible `r/s` with `1 < r/s`, `s <= max_den` and `r <= 3 max_den`.
fn fractions_gt_one_by_den(max_den: i64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for s in 1..=max_den {
        for r in (s + 1)..=(3 * max_den) {
            if let Ok(x) = Fraction::new(r, s) {
                if x.denom() == s {
                    out.push(x);
                }
            }
        }
    }
    out
}

pub fn routes(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Routes);
    for x in fractions_gt_one_by_den(b.max_den) {
        let right: Vec<Option<QRational>> = [Route::RegularCf, Route::NegativeCf, Route::Closure]
            .iter()
            .map(|&route| rep.check_result(right_qrat(x, route), || format!("right {x} {route:?}")))
            .collect();
        if let [Some(a), Some(bb), Some(c)] = right.as_slice() {
            rep.check(a == bb && bb == c, || format!("right routes differ at {x}: {a} | {bb} | {c}"));
        }
        let l1 = rep.check_result(left_qrat(x, Route::RegularCf), || format!("left {x}"));
        let l2 = rep.check_result(left_qrat(x, Route::Closure), || format!("left closure {x}"));
        if let (Some(a), Some(c)) = (l1, l2) {
            rep.check(a == c, || format!("left routes differ at {x}: {a} | {c}"));
        }
        let j1 = rep.check_result(jones(x, JonesRoute::FlatReciprocal), || format!("J {x}"));
        let j2 = rep.check_result(jones(x, JonesRoute::SharpFormula), || format!("J {x}"));
        if let (Some(a), Some(c)) = (j1, j2) {
            rep.check(a.j == c.j, || format!("Jones routes differ at {x}: {} | {}", a.j, c.j));
        }
    }
    rep
}

/// Valid b-tuples with sum `<= max_sum`.
pub fn btuples_upto(max_sum: i64) -> Vec<Vec<i64>> {
    fn go(prefix: &mut Vec<i64>, left: i64, out: &mut Vec<Vec<i64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        // a zero past the first slot ends the tuple
        if prefix.len() > 1 && prefix.last() == Some(&0) {
            return;
        }
        for x in 0..=left {
            prefix.push(x);
            go(prefix, left - x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_sum, &mut out);
    out.retain(|b| crate::quivers::validate_btuple(b).is_ok());
    out.sort();
    out.dedup();
    out
}

pub fn closure_oracle(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::ClosureOracle);
    let agree = |rep: &mut SuiteReport, label: String, q: crate::quivers::Quiver| {
        let x = closure_poly(&q, ClosureMethod::BruteForce);
        let y = closure_poly(&q, ClosureMethod::Dp);
        rep.check(x.is_ok() && x == y, || format!("{label}: brute {x:?} dp {y:?}"));
        x.ok()
    };
    for t in btuples_upto(b.max_sum) {
        let Ok(f) = fence_quiver(&t) else { continue };
        let cl = agree(&mut rep, format!("fence {t:?}"), f.clone());
        rep.check(rank_poly_via_antichains(&f).ok() == cl, || format!("rank vs closure on fence {t:?}"));
        let op = agree(&mut rep, format!("opposite fence {t:?}"), opposite(&f));
        rep.check(
            op.is_some() && op == cl.as_ref().and_then(|c| c.reciprocal().ok()),
            || format!("opposite law on fence {t:?}"),
        );
        if let Ok(fl) = flat_quiver(&t) {
            let x = agree(&mut rep, format!("flat {t:?}"), fl);
            let mut rev = t.clone();
            rev.reverse();
            let y = flat_quiver(&rev).ok().and_then(|q| closure_poly(&q, ClosureMethod::Dp).ok());
            let law = match (x, y) {
                (Some(x), Some(y)) if t.len() % 2 == 0 => y.reciprocal().ok() == Some(x),
                (Some(x), Some(y)) => x == y,
                _ => false,
            };
            rep.check(law, || format!("flat reversal law for {t:?}"));
        }
    }
    for a in even_tuples(b.max_sum) {
        if let Ok(q) = circular_fence(&a) {
            agree(&mut rep, format!("circ {a:?}"), q);
        }
    }
    rep
}

fn words(b: &Bounds) -> Vec<QMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    (0..b.words)
        .filter_map(|_| word_to_matrix(&random_word(&mut rng, b.word_len, b.word_exp)).ok())
        .collect()
}

/// The q = 1 image is recognized and the recognized word is `≡` to `m`.
fn is_group_element(m: &QMatrix) -> bool {
    let Ok(int) = m.eval_one() else { return false };
    let Ok(w) = recognize(int) else { return false };
    word_to_matrix(&w).map(|x| matrix_equiv(&x, m).is_some()).unwrap_or(false)
}

pub fn transposes(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Transposes);
    let ms = words(b);
    for (i, m) in ms.iter().enumerate() {
        let label = || m.word.as_ref().map(|w| w.to_string()).unwrap_or_default().to_string();
        let (Ok(t), Ok(o)) = (q_transpose(m), orthogonal_q_transpose(m)) else {
            rep.check(false, || format!("transpose failed on {}", label()));
            continue;
        };
        rep.check(q_transpose(&t).map(|x| x.entries == m.entries).unwrap_or(false), || format!("T involution {}", label()));
        rep.check(
            orthogonal_q_transpose(&o).map(|x| x.entries == m.entries).unwrap_or(false),
            || format!("O involution {}", label()),
        );
        rep.check(t.trace().ok() == m.trace().ok() && t.det().ok() == m.det().ok(), || format!("T trace/det {}", label()));
        rep.check(
            o.trace().ok() == m.trace().ok().map(|x| x.invert_variable()),
            || format!("O trace {}", label()),
        );
        rep.check(is_group_element(&t), || format!("T image not recognized {}", label()));
        rep.check(is_group_element(&o), || format!("O image not recognized {}", label()));
        if let Some(w) = &m.word {
            let via_word = word_to_matrix(&w.transpose_word());
            rep.check(
                via_word.map(|x| matrix_equiv(&x, &t).is_some()).unwrap_or(false),
                || format!("T vs reversed swapped word {}", label()),
            );
        }
        let laws = column_row_laws(m);
        rep.check(matches!(laws, Ok((true, true))), || format!("column/row law {}", label()));
        // antihomomorphism against the next word
        let n = &ms[(i + 1) % ms.len()];
        if let Ok(mn) = m.mul(n) {
            let t_ok = (|| -> Result<bool> {
                Ok(q_transpose(&mn)?.entries == q_transpose(n)?.mul(&t)?.entries)
            })();
            rep.check(t_ok == Ok(true), || format!("T antihomomorphism {}", label()));
            let o_ok = (|| -> Result<bool> {
                Ok(orthogonal_q_transpose(&mn)?.entries == orthogonal_q_transpose(n)?.mul(&o)?.entries)
            })();
            rep.check(o_ok == Ok(true), || format!("O antihomomorphism {}", label()));
        }
    }
    rep
}

/// Left and right pairs for every irreducible `r/s` with `s <= n`, `|r| <= n`.
struct Table {
    left: HashMap<(i64, i64), QRational>,
    right: HashMap<(i64, i64), QRational>,
}

impl Table {
    fn build(n: i64, rep: &mut SuiteReport) -> Self {
        let mut left = HashMap::new();
        let mut right = HashMap::new();
        for s in 1..=n {
            for r in -n..=n {
                let Ok(x) = Fraction::new(r, s) else { continue };
                if x.denom() != s {
                    continue;
                }
                if let Some(v) = rep.check_result(left_qrat(x, Route::RegularCf), || format!("left {x}")) {
                    left.insert((r, s), v);
                }
                if let Some(v) = rep.check_result(right_qrat(x, Route::RegularCf), || format!("right {x}")) {
                    right.insert((r, s), v);
                }
            }
        }
        Self { left, right }
    }

    fn keys_with_den(&self, s: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.left.keys().filter(|k| k.1 == s).map(|k| k.0).collect();
        v.sort_unstable();
        v
    }

    fn keys_with_num(&self, r: i64) -> Vec<i64> {
        let mut v: Vec<i64> = self.left.keys().filter(|k| k.0 == r).map(|k| k.1).collect();
        v.sort_unstable();
        v
    }
}

fn recip(p: &LaurentPoly) -> Option<LaurentPoly> {
    p.reciprocal().ok()
}

pub fn arithmetic_flat(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::ArithmeticFlat);
    let n = b.max_den;
    let tab = Table::build(n, &mut rep);
    for s in 1..=n {
        let rs = tab.keys_with_den(s);
        for &r in &rs {
            for &r2 in &rs {
                let (l1, l2) = (&tab.left[&(r, s)], &tab.left[&(r2, s)]);
                let (h1, h2) = (&tab.right[&(r, s)], &tab.right[&(r2, s)]);
                let m = |x: i64| x.rem_euclid(s);
                if m(r - r2) == 0 {
                    rep.check(l1.den == l2.den, || format!("flat S of {r}/{s} vs {r2}/{s} (r ≡ r')"));
                    rep.check(h1.den == h2.den, || format!("sharp S of {r}/{s} vs {r2}/{s} (r ≡ r')"));
                }
                if m(r + r2) == 0 {
                    rep.check(recip(&l2.den) == Some(l1.den.clone()), || format!("flat S of {r}/{s} vs {r2}/{s} (r + r' ≡ 0)"));
                }
                let prod = m(r * r2);
                if prod == m(1) {
                    rep.check(l1.den == l2.den, || format!("flat S of {r}/{s} vs {r2}/{s} (rr' ≡ 1)"));
                }
                if prod == m(-1) {
                    rep.check(recip(&l2.den) == Some(l1.den.clone()), || format!("flat S of {r}/{s} vs {r2}/{s} (rr' ≡ -1)"));
                    rep.check(h1.den == h2.den, || format!("sharp S of {r}/{s} vs {r2}/{s} (vw ≡ -1)"));
                }
            }
        }
    }
    for r in -n..=n {
        if r == 0 {
            continue;
        }
        let ss = tab.keys_with_num(r);
        let modulus = r.abs();
        for &s in &ss {
            for &s2 in &ss {
                let (l1, l2) = (&tab.left[&(r, s)], &tab.left[&(r, s2)]);
                let (h1, h2) = (&tab.right[&(r, s)], &tab.right[&(r, s2)]);
                let prod = (s * s2).rem_euclid(modulus);
                let both_gt_one = r > s && r > s2;
                if prod == 1 % modulus {
                    rep.check(l1.num.is_equiv(&l2.num), || format!("flat R of {r}/{s} ≡ {r}/{s2} (ss' ≡ 1)"));
                    if both_gt_one {
                        rep.check(l1.num == l2.num, || format!("flat R of {r}/{s} = {r}/{s2} (ss' ≡ 1)"));
                    }
                }
                if prod == (-1i64).rem_euclid(modulus) {
                    let rr = recip(&l2.num);
                    rep.check(
                        rr.as_ref().map(|x| l1.num.is_equiv(x)).unwrap_or(false),
                        || format!("flat R of {r}/{s} ≡ reciprocal at {r}/{s2} (ss' ≡ -1)"),
                    );
                    if both_gt_one {
                        rep.check(rr == Some(l1.num.clone()), || format!("flat R of {r}/{s} = reciprocal at {r}/{s2} (ss' ≡ -1)"));
                    }
                    rep.check(h1.num.is_equiv(&h2.num), || format!("sharp R of {r}/{s} ≡ {r}/{s2} (vw ≡ -1)"));
                    if both_gt_one {
                        rep.check(h1.num == h2.num, || format!("sharp R of {r}/{s} = {r}/{s2} (vw ≡ -1)"));
                    }
                }
                if r > 0 && s + s2 == r && both_gt_one {
                    rep.check(recip(&l2.num) == Some(l1.num.clone()), || format!("flat R of {r}/{s} vs {r}/{s2} (s + t = r)"));
                }
            }
        }
    }
    // difference law: flat R(r/s) - flat R(r/t) = (q - 1)(sharp S(r/s) - sharp S(r/t))
    for x in fractions_above_one(n) {
        let ok = (|| -> Result<bool> {
            let [[r, t], [s, _]] = m_q(&regular_cf(x).terms)?.eval_one()?;
            debug_assert_eq!((r, s), (x.numer(), x.denom()));
            let y = Fraction::new(r, t)?;
            let lhs = left_qrat(x, Route::RegularCf)?.num.checked_sub(&left_qrat(y, Route::RegularCf)?.num)?;
            let diff = right_qrat(x, Route::RegularCf)?.den.checked_sub(&right_qrat(y, Route::RegularCf)?.den)?;
            let rhs = LaurentPoly::from_ascending(&[-1, 1]).checked_mul(&diff)?;
            Ok(lhs == rhs)
        })();
        rep.check(ok == Ok(true), || format!("difference law at {x}: {ok:?}"));
    }
    rep
}

pub fn palin(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Palin);
    let n = b.max_den;
    for s in 1..=n {
        for r in -n..=n {
            let Ok(x) = Fraction::new(r, s) else { continue };
            if x.denom() != s {
                continue;
            }
            let Some(l) = rep.check_result(left_qrat(x, Route::RegularCf), || format!("left {x}")) else {
                continue;
            };
            let want_s = (r as i128 * r as i128 + 1).rem_euclid(s as i128) == 0;
            rep.check(l.den.is_palindromic() == want_s, || format!("flat S palindromic at {x}: expected {want_s}"));
            let want_r = r != 0 && (s as i128 * s as i128 + 1).rem_euclid(r.abs() as i128) == 0;
            rep.check(
                l.num.canonical().is_palindromic() == want_r,
                || format!("flat R ≡ palindromic at {x}: expected {want_r}"),
            );
            if x.gt_one() {
                if let Some(j) = rep.check_result(jones(x, JonesRoute::SharpFormula), || format!("J {x}")) {
                    rep.check(j.j.is_palindromic() == want_r, || format!("J palindromic at {x}: expected {want_r}"));
                }
            }
        }
    }
    rep
}

pub fn trace(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Trace);
    let mut seen = [false; 3];
    for m in words(b) {
        let label = || m.word.as_ref().map(|w| w.to_string()).unwrap_or_default();
        let Some(ct) = rep.check_result(canonical_trace(&m), label) else { continue };
        rep.check(
            ct.is_palindromic() && ct.coeffs().iter().all(|&c| c >= 0),
            || format!("trace {ct} of {} not palindromic/nonnegative", label()),
        );
        if let Some(ty) = rep.check_result(reduce_trace_type(&m), || format!("reduce {}", label())) {
            seen[match ty {
                TraceType::OnePlusQPow(_) => 0,
                TraceType::QInt(_) => 1,
                TraceType::PositiveWord(_) => 2,
            }] = true;
            let p = ty.polynomial();
            rep.check(p.as_ref() == Ok(&ct), || format!("type {ty} of {} gives {p:?}, trace {ct}", label()));
        }
    }
    rep.check(seen.iter().all(|&x| x), || format!("trace families seen: {seen:?}"));
    rep
}

pub fn circular(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Circular);
    for a in even_tuples(b.max_sum) {
        let ok = (|| -> Result<(LaurentPoly, LaurentPoly)> {
            let cl = closure_poly(&circular_fence(&a)?, ClosureMethod::Dp)?;
            Ok((cl, canonical_trace(&m_q(&a)?)?))
        })();
        match ok {
            Ok((cl, tr)) => {
                rep.check(cl == tr, || format!("circ {a:?}: closure {cl} trace {tr}"));
                rep.check(cl.constant_term() == 1, || format!("circ {a:?}: constant term"));
            }
            Err(e) => rep.check(false, || format!("circ {a:?}: {e}")),
        }
    }
    rep
}

pub fn jones_suite(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Jones);
    for x in fractions_above_one(b.max_den) {
        let a = rep.check_result(jones(x, JonesRoute::FlatReciprocal), || format!("J {x}"));
        let c = rep.check_result(jones(x, JonesRoute::SharpFormula), || format!("J {x}"));
        if let (Some(a), Some(c)) = (a, c) {
            rep.check(a.j == c.j, || format!("J routes at {x}"));
            rep.check(
                a.j.constant_term() == 1 && a.j.eval_one().ok() == Some(x.numer()),
                || format!("J normalization at {x}"),
            );
        }
    }
    match schubert_jones_invariance(b.max_den) {
        Ok(r) => {
            rep.checked += (r.equal_pairs + r.reciprocal_pairs) as u64;
            for (x, y) in r.failures {
                rep.check(false, || format!("Schubert pair {x}, {y}"));
            }
        }
        Err(e) => rep.check(false, || format!("Schubert scan: {e}")),
    }
    rep
}

pub fn iota_suite(b: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Iota);
    for x in fractions_above_one(b.max_den) {
        let ok = (|| -> Result<Vec<(bool, String)>> {
            let res = iota(x)?;
            let i = &res.iota;
            let a = trace_matrix_a(x)?;
            let j = jones(x, JonesRoute::FlatReciprocal)?.j;
            let tr = a.trace()?;
            let lhs = LaurentPoly::from_ascending(&[-1, 1]).checked_mul(&tr)?;
            let rhs = j.reciprocal()?.checked_sub(&j)?;
            let ty = res.trace_type.as_ref().map(|t| t.polynomial()).transpose()?;
            Ok(vec![
                (i.is_palindromic(), "I palindromic".into()),
                (i.coeffs().iter().all(|&c| c >= 0), "I nonnegative".into()),
                (i.is_zero() || i.constant_term() == 1, "I(0) in {0, 1}".into()),
                (*i != LaurentPoly::constant(2), "I = 2".into()),
                (*i == canonical_trace(&a)?, "I = canonical trace of A".into()),
                (lhs.is_equiv(&rhs) || (lhs.is_zero() && rhs.is_zero()), "(q - 1) Tr A ≡ J^∨ - J".into()),
                (ty.as_ref() == Some(i), format!("trace type {:?}", res.trace_type)),
            ])
        })();
        match ok {
            Ok(list) => {
                for (good, what) in list {
                    rep.check(good, || format!("{x}: {what}"));
                }
            }
            Err(e) => rep.check(false, || format!("{x}: {e}")),
        }
    }
    rep
}
