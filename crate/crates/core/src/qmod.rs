//! The q-deformed modular group.
//!
//! Group elements are dense 2×2 matrices over `Z[q, q^-1]` generated by
//! `R_q = [[q, 1], [0, 1]]` and `S_q = [[0, -q^-1], [1, 0]]`; the projective
//! quotient by `±q^n Id` is never materialized, so comparisons up to scalars go
//! through [`matrix_equiv`].

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{regular_cf, Fraction};
use crate::laurent::{q_integer, LaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    R,
    L,
    S,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::R => "R",
            Generator::L => "L",
            Generator::S => "S",
        })
    }
}

/// A word in `R`, `L`, `S`. `S` always carries exponent 1; `R`/`L` exponents
/// are nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenWord(Vec<(Generator, i64)>);

impl GenWord {
    pub fn new(letters: Vec<(Generator, i64)>) -> Result<Self> {
        for &(g, e) in &letters {
            match g {
                Generator::S if e != 1 => {
                    return Err(Error::InvalidWord(format!("S^{e}: S only appears to the first power")))
                }
                Generator::R | Generator::L if e == 0 => {
                    return Err(Error::InvalidWord(format!("{g}^0 is not a letter")))
                }
                _ => {}
            }
        }
        Ok(Self(letters))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[(Generator, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, merging with a trailing letter of the same generator.
    /// Zero exponents are dropped.
    fn push(&mut self, g: Generator, e: i64) {
        if e == 0 {
            return;
        }
        if g != Generator::S {
            if let Some(last) = self.0.last_mut() {
                if last.0 == g {
                    last.1 += e;
                    if last.1 == 0 {
                        self.0.pop();
                    }
                    return;
                }
            }
        }
        self.0.push((g, e));
    }

    /// `R^{a_1} L^{a_2} R^{a_3} ...`; zero terms are skipped.
    pub fn alternating(terms: &[i64]) -> Self {
        let mut w = Self::empty();
        for (i, &a) in terms.iter().enumerate() {
            w.push(if i % 2 == 0 { Generator::R } else { Generator::L }, a);
        }
        w
    }

    /// The reversed word with `R` and `L` swapped; its matrix is `≡` to the
    /// q-transpose of this word's matrix.
    pub fn transpose_word(&self) -> Self {
        let mut w = Self::empty();
        for &(g, e) in self.0.iter().rev() {
            let g = match g {
                Generator::R => Generator::L,
                Generator::L => Generator::R,
                Generator::S => Generator::S,
            };
            w.push(g, e);
        }
        w
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| match g {
                Generator::S => "S".to_string(),
                _ => format!("{g}^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GenWord {
    type Err = Error;

    /// `"R^1 L^2 S R^-3"`, `"1"` for the empty word, or `"cf:1,2,1,2"` for the
    /// alternating word of a regular continued fraction.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("cf:") {
            let terms = rest
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad cf term {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::alternating(&terms));
        }
        if t.is_empty() || t == "1" {
            return Ok(Self::empty());
        }
        let mut letters = Vec::new();
        for tok in t.split_whitespace() {
            let (g, exp) = match tok.split_once('^') {
                Some((g, e)) => (
                    g,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            let g = match g {
                "R" => Generator::R,
                "L" => Generator::L,
                "S" => Generator::S,
                _ => return Err(Error::Parse(format!("unknown generator {g:?}"))),
            };
            letters.push((g, exp));
        }
        Self::new(letters)
    }
}

/// 2×2 matrix over `Z[q, q^-1]`, entries `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub entries: [[LaurentPoly; 2]; 2],
    pub word: Option<GenWord>,
}

fn lp(c: i64, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(c, e)
}

impl QMatrix {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Self {
            entries: [[a, b], [c, d]],
            word: None,
        }
    }

    pub fn identity() -> Self {
        Self {
            word: Some(GenWord::empty()),
            ..Self::new(LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one())
        }
    }

    pub fn r_q() -> Self {
        Self::new(lp(1, 1), lp(1, 0), LaurentPoly::zero(), lp(1, 0)).with_word(Generator::R, 1)
    }

    pub fn s_q() -> Self {
        Self::new(LaurentPoly::zero(), lp(-1, -1), lp(1, 0), LaurentPoly::zero()).with_word(Generator::S, 1)
    }

    pub fn l_q() -> Self {
        Self::new(lp(1, 0), LaurentPoly::zero(), lp(1, 0), lp(1, -1)).with_word(Generator::L, 1)
    }

    fn with_word(mut self, g: Generator, e: i64) -> Self {
        let mut w = GenWord::empty();
        w.push(g, e);
        self.word = Some(w);
        self
    }

    pub fn a(&self) -> &LaurentPoly {
        &self.entries[0][0]
    }
    pub fn b(&self) -> &LaurentPoly {
        &self.entries[0][1]
    }
    pub fn c(&self) -> &LaurentPoly {
        &self.entries[1][0]
    }
    pub fn d(&self) -> &LaurentPoly {
        &self.entries[1][1]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let e = |i: usize, j: usize| -> Result<LaurentPoly> {
            self.entries[i][0]
                .checked_mul(&other.entries[0][j])?
                .checked_add(&self.entries[i][1].checked_mul(&other.entries[1][j])?)
        };
        let word = match (&self.word, &other.word) {
            (Some(x), Some(y)) => {
                let mut w = x.clone();
                for &(g, k) in y.letters() {
                    w.push(g, k);
                }
                Some(w)
            }
            _ => None,
        };
        Ok(Self {
            entries: [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]],
            word,
        })
    }

    fn map_entries(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        Ok(Self::new(f(self.a())?, f(self.b())?, f(self.c())?, f(self.d())?))
    }

    /// Scalar multiple `c q^n M` (the word is kept: it still names the same
    /// projective element).
    pub fn scalar(&self, c: i64, n: i32) -> Result<Self> {
        let mut m = self.map_entries(|x| x.scale(c)?.shift(n))?;
        m.word = self.word.clone();
        Ok(m)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scalar(-1, 0)
    }

    pub fn trace(&self) -> Result<LaurentPoly> {
        self.a().checked_add(self.d())
    }

    pub fn det(&self) -> Result<LaurentPoly> {
        self.a()
            .checked_mul(self.d())?
            .checked_sub(&self.b().checked_mul(self.c())?)
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det()?;
        if !det.is_unit() {
            return Err(Error::NotInvertible(det.to_string()));
        }
        // det = ±q^k, so det^-1 = ±q^-k
        let c = det.coeffs()[0];
        let k = det.lowest_exp();
        let adj = Self::new(self.d().clone(), self.b().checked_neg()?, self.c().checked_neg()?, self.a().clone());
        let mut inv = adj.scalar(c, -k)?;
        inv.word = self.word.as_ref().map(|w| {
            let mut out = GenWord::empty();
            for &(g, e) in w.letters().iter().rev() {
                // S^-1 = -q S, which is S up to a scalar
                out.push(g, if g == Generator::S { 1 } else { -e });
            }
            out
        });
        Ok(inv)
    }

    /// Integer matrix at `q = 1`.
    pub fn eval_one(&self) -> Result<[[i64; 2]; 2]> {
        Ok([
            [self.a().eval_one()?, self.b().eval_one()?],
            [self.c().eval_one()?, self.d().eval_one()?],
        ])
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a(), self.b(), self.c(), self.d())
    }
}

/// `(R_q, S_q, L_q)`.
pub fn generators() -> (QMatrix, QMatrix, QMatrix) {
    (QMatrix::r_q(), QMatrix::s_q(), QMatrix::l_q())
}

/// Integer power by repeated squaring; negative powers go through the inverse.
pub fn power(m: &QMatrix, n: i64) -> Result<QMatrix> {
    let base = if n < 0 { m.inverse()? } else { m.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = QMatrix::identity();
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq)?;
        }
    }
    Ok(acc)
}

fn letter_matrix(g: Generator) -> QMatrix {
    match g {
        Generator::R => QMatrix::r_q(),
        Generator::L => QMatrix::l_q(),
        Generator::S => QMatrix::s_q(),
    }
}

pub fn word_to_matrix(w: &GenWord) -> Result<QMatrix> {
    let mut acc = QMatrix::identity();
    for &(g, e) in w.letters() {
        acc = acc.mul(&power(&letter_matrix(g), e)?)?;
    }
    acc.word = Some(w.clone());
    Ok(acc)
}

/// `M_q(a_1, ..., a_2m) = R_q^{a_1} L_q^{a_2} ...`.
pub fn m_q(terms: &[i64]) -> Result<QMatrix> {
    if !terms.len().is_multiple_of(2) {
        return Err(Error::InvalidWord(format!(
            "M_q takes an even number of exponents, got {}",
            terms.len()
        )));
    }
    word_to_matrix(&GenWord::alternating(terms))
}

/// `M^-_q(c_1, ..., c_k) = R_q^{c_1} S_q R_q^{c_2} S_q ... R_q^{c_k} S_q`.
pub fn m_q_neg(terms: &[i64]) -> Result<QMatrix> {
    let mut w = GenWord::empty();
    for &c in terms {
        w.push(Generator::R, c);
        w.0.push((Generator::S, 1));
    }
    word_to_matrix(&w)
}

/// `[[R, V], [S, U]] -> [[R, q^-1 S], [q V, U]]`.
pub fn q_transpose(m: &QMatrix) -> Result<QMatrix> {
    Ok(QMatrix::new(
        m.a().clone(),
        m.c().shift(-1)?,
        m.b().shift(1)?,
        m.d().clone(),
    ))
}

/// `[[R, V], [S, U]] -> [[U(q^-1), q^-1 V(q^-1)], [q S(q^-1), R(q^-1)]]`.
pub fn orthogonal_q_transpose(m: &QMatrix) -> Result<QMatrix> {
    Ok(QMatrix::new(
        m.d().invert_variable(),
        m.b().invert_variable().shift(-1)?,
        m.c().invert_variable().shift(1)?,
        m.a().invert_variable(),
    ))
}

pub fn trace(m: &QMatrix) -> Result<LaurentPoly> {
    m.trace()
}

pub fn det(m: &QMatrix) -> Result<LaurentPoly> {
    m.det()
}

/// `(sign, n)` with `a = sign q^n b` entrywise.
pub fn matrix_equiv(a: &QMatrix, b: &QMatrix) -> Option<(i64, i32)> {
    let mut found: Option<(i64, i32)> = None;
    for i in 0..2 {
        for j in 0..2 {
            let (x, y) = (&a.entries[i][j], &b.entries[i][j]);
            match (x.is_zero(), y.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                _ => {}
            }
            let e = x.equiv(y)?;
            if *found.get_or_insert(e) != e {
                return None;
            }
        }
    }
    found
}

/// Canonical `≡`-representative of the trace (positive constant term in
/// `Z[q]`); zero stays zero.
pub fn canonical_trace(m: &QMatrix) -> Result<LaurentPoly> {
    Ok(m.trace()?.canonical())
}

fn int_mul(x: [[i64; 2]; 2], y: [[i64; 2]; 2]) -> Result<[[i64; 2]; 2]> {
    let ovf = || Error::Overflow("integer matrix product");
    let e = |i: usize, j: usize| -> Result<i64> {
        x[i][0]
            .checked_mul(y[0][j])
            .and_then(|p| x[i][1].checked_mul(y[1][j]).and_then(|t| p.checked_add(t)))
            .ok_or_else(ovf)
    };
    Ok([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
}

/// Integer image of a word at `q = 1`.
pub fn word_eval_one(w: &GenWord) -> Result<[[i64; 2]; 2]> {
    let mut acc = [[1, 0], [0, 1]];
    for &(g, e) in w.letters() {
        let m = match g {
            Generator::R => [[1, e], [0, 1]],
            Generator::L => [[1, 0], [e, 1]],
            Generator::S => [[0, -1], [1, 0]],
        };
        acc = int_mul(acc, m)?;
    }
    Ok(acc)
}

fn neg_int(m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
}

/// A word in `R`, `L`, `S` whose image at `q = 1` is `±m`.
///
/// Elements `[[r, v], [s, u]]` with `r, s > 0`, `s >= 2` and `0 < u < s` are
/// exactly the `M(a_1, ..., a_2m)` of the regular expansion of `r/s` and get
/// the alternating word. Everything else is reduced by a Euclidean descent on
/// the first column.
pub fn recognize(m: [[i64; 2]; 2]) -> Result<GenWord> {
    let det = (m[0][0] as i128) * (m[1][1] as i128) - (m[0][1] as i128) * (m[1][0] as i128);
    if det != 1 {
        return Err(Error::NotUnimodular(det.clamp(i64::MIN as i128, i64::MAX as i128) as i64));
    }
    let m = if m[1][0] < 0 || (m[1][0] == 0 && m[0][0] < 0) {
        neg_int(m)
    } else {
        m
    };
    let [[r, _], [s, u]] = m;
    if r > 0 && s >= 2 && 0 < u && u < s {
        let cf = regular_cf(Fraction::new(r, s)?);
        let w = GenWord::alternating(&cf.terms);
        if word_eval_one(&w)? == m {
            return Ok(w);
        }
    }
    // Left-multiply by R^-k and S until the lower-left entry vanishes:
    // X_n ... X_1 m = ±R^t, so m = ±X_1^-1 ... X_n^-1 R^t.
    let mut cur = m;
    let mut inverses: Vec<(Generator, i64)> = Vec::new();
    while cur[1][0] != 0 {
        let k = cur[0][0].div_euclid(cur[1][0]);
        if k != 0 {
            cur = int_mul([[1, -k], [0, 1]], cur)?;
            inverses.push((Generator::R, k));
        }
        cur = int_mul([[0, -1], [1, 0]], cur)?;
        inverses.push((Generator::S, 1));
    }
    // cur = ±[[1, t], [0, 1]]
    let t = cur[0][1] * cur[0][0];
    let mut w = GenWord::empty();
    for &(g, e) in &inverses {
        w.push(g, e);
    }
    w.push(Generator::R, t);
    let img = word_eval_one(&w)?;
    if img != m && img != neg_int(m) {
        return Err(Error::Inconsistent(format!("recognize produced {w} for {m:?}")));
    }
    Ok(w)
}

/// `Tr A` up to `≡` is one of `1 + q^n`, `[n]_q`, or the trace of `M_q(a)`
/// with all `a_i > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceType {
    OnePlusQPow(u32),
    QInt(u64),
    PositiveWord(Vec<i64>),
}

impl TraceType {
    pub fn polynomial(&self) -> Result<LaurentPoly> {
        match self {
            TraceType::OnePlusQPow(n) => {
                LaurentPoly::one().checked_add(&LaurentPoly::monomial(1, *n as i32))
            }
            TraceType::QInt(n) => q_integer(*n as i64),
            TraceType::PositiveWord(a) => canonical_trace(&m_q(a)?),
        }
    }
}

impl fmt::Display for TraceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceType::OnePlusQPow(n) => write!(f, "1+q^{n}"),
            TraceType::QInt(n) => write!(f, "[{n}]_q"),
            TraceType::PositiveWord(a) => {
                let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "Tr M_q({})", s.join(","))
            }
        }
    }
}

pub const DEFAULT_REDUCTION_CAP: usize = 64;

/// Classifies `Tr A` by a descent on `M = (-S_q)^{-1} A`, writing
/// `M(1) = [[r, t], [s, u]]` so that `Tr A(1) = s - t` and `ru - ts = 1`.
///
/// Every move keeps the canonical trace: negation, `A -> A^{T_q}`
/// (`(r, u) -> (-u, -r)`), `M -> M^{O_q}` (swaps `r`, `u`; traces are
/// palindromic) and
/// conjugation by `L_q^n` (`s, t -> s + nu, t + nu`). Once `u > 0`, `s > t`
/// and `-u < t <= 0`:
///
/// * `t = 0` forces `r = u = 1` and the trace is `[s]_q`;
/// * `s > u` makes `A^{T_q} ≡ M_q(a)` with `a` the regular expansion of `s/u`;
/// * otherwise `M^{O_q}` has `|u|` strictly smaller and the loop repeats.
pub fn reduce_trace_type(a: &QMatrix) -> Result<TraceType> {
    reduce_trace_type_capped(a, DEFAULT_REDUCTION_CAP)
}

pub fn reduce_trace_type_capped(a: &QMatrix, cap: usize) -> Result<TraceType> {
    let (_, s_q, l_q) = generators();
    let neg_s = s_q.neg()?;
    let inv_neg_s = s_q.scalar(1, 1)?;
    let m_of = |a: &QMatrix| -> Result<QMatrix> { inv_neg_s.mul(a) };
    let mut a = a.clone();
    a.word = None;

    for _ in 0..cap {
        let [[mut r, mut t], [mut s, mut u]] = m_of(&a)?.eval_one()?;
        if s == t {
            return Ok(TraceType::QInt(0));
        }
        if s < t {
            a = a.neg()?;
            (r, t, s, u) = (-r, -t, -s, -u);
        }
        if u < 0 {
            // M^{O_q} then A^{T_q}: (r, u) -> (-r, -u)
            a = q_transpose(&neg_s.mul(&orthogonal_q_transpose(&m_of(&a)?)?)?)?;
            [[r, t], [s, u]] = m_of(&a)?.eval_one()?;
        }
        if u == 0 {
            let tr = a.trace()?.canonical();
            let c = tr.coeffs();
            return match c {
                [2] => Ok(TraceType::OnePlusQPow(0)),
                [1, .., 1] if tr.term_count() == 2 => Ok(TraceType::OnePlusQPow((c.len() - 1) as u32)),
                _ => Err(Error::Inconsistent(format!("u = 0 but trace is {tr}"))),
            };
        }
        debug_assert!(u > 0 && s > t, "sign normalization failed: r={r} s={s} t={t} u={u}");
        let _ = r;

        let n = (-t).div_euclid(u);
        if n != 0 {
            a = power(&l_q, -n)?.mul(&a)?.mul(&power(&l_q, n)?)?;
            a.word = None;
            [[_, t], [s, u]] = m_of(&a)?.eval_one()?;
        }

        if t == 0 {
            return Ok(TraceType::QInt(s as u64));
        }
        if s > u {
            let transposed = q_transpose(&a)?;
            let cf = regular_cf(Fraction::new(s, u)?);
            let word = m_q(&cf.terms)?;
            if matrix_equiv(&transposed, &word).is_none() {
                return Err(Error::Inconsistent(format!(
                    "A^T_q = {transposed} is not ≡ M_q{:?}",
                    cf.terms
                )));
            }
            return Ok(TraceType::PositiveWord(cf.terms));
        }
        a = neg_s.mul(&orthogonal_q_transpose(&m_of(&a)?)?)?;
    }
    Err(Error::ReductionDiverged {
        rounds: cap,
        state: a.to_string(),
    })
}

/// Random word with at most `max_len` letters; `R`/`L` exponents in
/// `[-max_exp, max_exp] \ {0}`.
pub fn random_word(rng: &mut impl Rng, max_len: usize, max_exp: i64) -> GenWord {
    let len = rng.gen_range(0..=max_len);
    let mut letters = Vec::new();
    for _ in 0..len {
        let g = match rng.gen_range(0..3) {
            0 => Generator::R,
            1 => Generator::L,
            _ => Generator::S,
        };
        let e = if g == Generator::S {
            1
        } else {
            let mag = rng.gen_range(1..=max_exp);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        };
        letters.push((g, e));
    }
    GenWord(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> GenWord {
        s.parse().unwrap()
    }

    #[test]
    fn generator_identities() {
        let (r, s, l) = generators();
        assert_eq!(l.entries, QMatrix::new(p("1"), p("0"), p("1"), p("q^-1")).entries);
        let rsr = r.mul(&s).unwrap().mul(&r).unwrap().scalar(1, -1).unwrap();
        assert_eq!(rsr.entries, l.entries);
        let s2 = s.mul(&s).unwrap();
        assert_eq!(matrix_equiv(&s2, &QMatrix::identity()), Some((-1, -1)));
        assert_eq!(r.eval_one().unwrap(), [[1, 1], [0, 1]]);
        assert_eq!(l.eval_one().unwrap(), [[1, 0], [1, 1]]);
        assert_eq!(s.eval_one().unwrap(), [[0, -1], [1, 0]]);
        assert_eq!(det(&s).unwrap(), p("q^-1"));
    }

    #[test]
    fn powers() {
        let (r, s, l) = generators();
        assert_eq!(
            power(&r, -1).unwrap().entries,
            QMatrix::new(p("q^-1"), p("-q^-1"), p("0"), p("1")).entries
        );
        assert_eq!(
            power(&l, 2).unwrap().entries,
            QMatrix::new(p("1"), p("0"), p("1 + q^-1"), p("q^-2")).entries
        );
        assert_eq!(power(&s, 0).unwrap().entries, QMatrix::identity().entries);
        let m = word_to_matrix(&w("R^2 S L^-3")).unwrap();
        let id = power(&m, -1).unwrap().mul(&m).unwrap();
        assert_eq!(id.entries, QMatrix::identity().entries);
        let singular = QMatrix::new(p("1 + q"), p("0"), p("0"), p("1"));
        assert!(matches!(power(&singular, -1), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn m_q_examples() {
        let m = m_q(&[1, 1]).unwrap();
        assert_eq!(m.entries, QMatrix::new(p("q + 1"), p("q^-1"), p("1"), p("q^-1")).entries);
        assert_eq!(trace(&m).unwrap(), p("q^-1 + 1 + q"));
        assert_eq!(canonical_trace(&m).unwrap(), p("1 + q + q^2"));
        assert_eq!(m_q(&[]).unwrap().entries, QMatrix::identity().entries);
        assert!(m_q(&[1, 2, 3]).is_err());
        assert_eq!(m.word.as_ref().unwrap().to_string(), "R^1 L^1");
    }

    #[test]
    fn word_text() {
        assert_eq!(w("cf:1,2,1,2").to_string(), "R^1 L^2 R^1 L^2");
        assert_eq!(w("S").to_string(), "S");
        assert_eq!(w("R L^-2 S").letters(), &[(Generator::R, 1), (Generator::L, -2), (Generator::S, 1)]);
        assert!("S^2".parse::<GenWord>().is_err());
        assert!("R^0".parse::<GenWord>().is_err());
        assert!("X^2".parse::<GenWord>().is_err());
    }

    #[test]
    fn transposes_of_generators() {
        let (r, s, l) = generators();
        assert!(matrix_equiv(&q_transpose(&r).unwrap(), &l).is_some());
        assert!(matrix_equiv(&q_transpose(&s).unwrap(), &s).is_some());
        assert!(matrix_equiv(&orthogonal_q_transpose(&r).unwrap(), &r).is_some());
        assert!(matrix_equiv(&orthogonal_q_transpose(&s).unwrap(), &s).is_some());
    }

    #[test]
    fn transposes_are_involutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let m = word_to_matrix(&random_word(&mut rng, 12, 5)).unwrap();
            assert_eq!(q_transpose(&q_transpose(&m).unwrap()).unwrap().entries, m.entries);
            assert_eq!(
                orthogonal_q_transpose(&orthogonal_q_transpose(&m).unwrap()).unwrap().entries,
                m.entries
            );
        }
    }

    #[test]
    fn recognize_examples() {
        // M(1,2,1,2) = [[11, 4], [8, 3]]
        assert_eq!(word_eval_one(&GenWord::alternating(&[1, 2, 1, 2])).unwrap(), [[11, 4], [8, 3]]);
        assert_eq!(recognize([[11, 4], [8, 3]]).unwrap(), GenWord::alternating(&[1, 2, 1, 2]));
        assert_eq!(recognize([[1, 0], [0, 1]]).unwrap(), GenWord::empty());
        assert_eq!(recognize([[0, -1], [1, 0]]).unwrap(), w("S"));
        assert_eq!(recognize([[2, 0], [0, 1]]), Err(Error::NotUnimodular(2)));
        assert_eq!(recognize([[0, 1], [1, 0]]), Err(Error::NotUnimodular(-1)));
    }

    #[test]
    fn recognize_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let word = random_word(&mut rng, 10, 4);
            let m = word_eval_one(&word).unwrap();
            let found = recognize(m).unwrap();
            let img = word_eval_one(&found).unwrap();
            assert!(img == m || img == neg_int(m), "{word} -> {found}");
            assert!(matrix_equiv(&word_to_matrix(&word).unwrap(), &word_to_matrix(&found).unwrap()).is_some());
        }
    }

    #[test]
    fn trace_type_examples() {
        let neg_s = QMatrix::s_q().neg().unwrap();
        let a = neg_s.mul(&m_q(&[2, 2, 1, 1]).unwrap()).unwrap();
        assert_eq!(reduce_trace_type(&a).unwrap(), TraceType::OnePlusQPow(3));
        let a = neg_s.mul(&m_q(&[3, 1, 2, 1]).unwrap()).unwrap();
        let ty = reduce_trace_type(&a).unwrap();
        assert!(matches!(ty, TraceType::PositiveWord(_)), "{ty:?}");
        assert_eq!(ty.polynomial().unwrap(), p("1 + 2q + q^2 + 2q^3 + q^4"));
        // 1 + q is both [2]_q and 1 + q^1
        assert_eq!(reduce_trace_type(&QMatrix::r_q()).unwrap().polynomial().unwrap(), p("1 + q"));
        assert_eq!(reduce_trace_type(&QMatrix::s_q()).unwrap(), TraceType::QInt(0));
        assert_eq!(reduce_trace_type(&QMatrix::identity()).unwrap(), TraceType::OnePlusQPow(0));
        let m = m_q(&[1, 1]).unwrap();
        assert_eq!(reduce_trace_type(&m).unwrap().polynomial().unwrap(), p("1 + q + q^2"));
    }

    #[test]
    fn trace_type_matches_trace_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..600 {
            let word = random_word(&mut rng, 12, 5);
            let a = word_to_matrix(&word).unwrap();
            let ty = reduce_trace_type(&a).unwrap_or_else(|e| panic!("{word}: {e}"));
            if let TraceType::PositiveWord(ref t) = ty {
                assert!(t.iter().all(|&x| x > 0));
            }
            assert_eq!(ty.polynomial().unwrap(), canonical_trace(&a).unwrap(), "{word} -> {ty}");
        }
    }

    #[test]
    fn reduction_cap_is_reported() {
        let m = m_q(&[2, 3, 1, 4]).unwrap();
        let a = QMatrix::s_q().mul(&orthogonal_q_transpose(&m).unwrap()).unwrap();
        match reduce_trace_type_capped(&a, 0) {
            Err(Error::ReductionDiverged { rounds: 0, .. }) => {}
            other => panic!("expected divergence report, got {other:?}"),
        }
    }
}
