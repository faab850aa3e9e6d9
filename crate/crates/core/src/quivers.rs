//! Fence, flat and circular fence quivers and their closure polynomials.
//!
//! A closure is a vertex set `C` with no arrow leaving it. Vertices are
//! `0..n`; in a fence the `i`-th chain arrow joins `i` and `i + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fractions::{regular_cf, Fraction};
use crate::laurent::LaurentPoly;

pub const BRUTE_FORCE_CAP: usize = 24;

/// Shape data that lets [`closure_poly`] run the transfer DP.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layout {
    pub cyclic: bool,
    /// `forward[i]` is true when edge `i` points `i -> i + 1`.
    pub forward: Vec<bool>,
    /// The last chain vertex carries a 2-cycle to one extra vertex.
    pub heavy_last: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub n_vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    #[serde(skip)]
    pub layout: Option<Layout>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosureMethod {
    BruteForce,
    Dp,
}

impl Quiver {
    pub fn new(n_vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n_vertices || t >= n_vertices) {
            return Err(Error::InvalidQuiver(format!(
                "arrow {s}>{t} out of range for {n_vertices} vertices"
            )));
        }
        Ok(Self {
            n_vertices,
            arrows,
            layout: None,
        })
    }

    pub fn empty() -> Self {
        Self {
            n_vertices: 0,
            arrows: Vec::new(),
            layout: Some(Layout {
                cyclic: false,
                forward: Vec::new(),
                heavy_last: false,
            }),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.n_vertices == 0
    }

    /// Successor sets as bitmasks; only meaningful for `n <= 64`.
    fn successor_masks(&self) -> Vec<u64> {
        let mut succ = vec![0u64; self.n_vertices];
        for &(s, t) in &self.arrows {
            succ[s] |= 1 << t;
        }
        succ
    }

    pub fn is_closure(&self, members: &[bool]) -> bool {
        self.arrows.iter().all(|&(s, t)| !members[s] || members[t])
    }

    /// Same set of arrows up to order.
    pub fn same_arrows(&self, other: &Self) -> bool {
        let mut a = self.arrows.clone();
        let mut b = other.arrows.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.n_vertices == other.n_vertices && a == b
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{s}>{t}")).collect();
        write!(f, "edges:{};{}", self.n_vertices, arrows.join(","))
    }
}

/// Parsed quiver description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverSpec {
    Fence(Vec<i64>),
    Flat(Vec<i64>),
    Circular(Vec<i64>),
    Edges(Quiver),
}

impl QuiverSpec {
    pub fn build(&self) -> Result<Quiver> {
        match self {
            QuiverSpec::Fence(b) => fence_quiver(b),
            QuiverSpec::Flat(b) => flat_quiver(b),
            QuiverSpec::Circular(a) => circular_fence(a),
            QuiverSpec::Edges(q) => Ok(q.clone()),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?}"))))
        .collect()
}

fn join_list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for QuiverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverSpec::Fence(b) => write!(f, "fence:{}", join_list(b)),
            QuiverSpec::Flat(b) => write!(f, "flat:{}", join_list(b)),
            QuiverSpec::Circular(a) => write!(f, "circ:{}", join_list(a)),
            QuiverSpec::Edges(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for QuiverSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected kind:data, got {s:?}")))?;
        match kind {
            "fence" => Ok(QuiverSpec::Fence(parse_list(rest)?)),
            "flat" => Ok(QuiverSpec::Flat(parse_list(rest)?)),
            "circ" => Ok(QuiverSpec::Circular(parse_list(rest)?)),
            "edges" => {
                let (n, arrows) = rest.split_once(';').unwrap_or((rest, ""));
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
                let mut list = Vec::new();
                for a in arrows.split(',').map(str::trim).filter(|a| !a.is_empty()) {
                    let (s, t) = a
                        .split_once('>')
                        .ok_or_else(|| Error::Parse(format!("arrow {a:?} is not s>t")))?;
                    let p = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad vertex {x:?}")))
                    };
                    list.push((p(s)?, p(t)?));
                }
                Ok(QuiverSpec::Edges(Quiver::new(n, list)?))
            }
            _ => Err(Error::Parse(format!("unknown quiver kind {kind:?}"))),
        }
    }
}

/// `b_1, b_d >= 0`, interior entries `> 0`, at least one entry.
pub fn validate_btuple(b: &[i64]) -> Result<()> {
    if b.is_empty() {
        return Err(Error::InvalidQuiver("empty tuple".into()));
    }
    let d = b.len();
    for (i, &x) in b.iter().enumerate() {
        let interior = i > 0 && i + 1 < d;
        if x < 0 || (interior && x == 0) {
            return Err(Error::InvalidQuiver(format!(
                "entry {} of ({}) must be {}",
                i + 1,
                join_list(b),
                if interior { "positive" } else { "nonnegative" }
            )));
        }
    }
    Ok(())
}

/// `Q(b)`: the first `b_1` arrows point left, the next `b_2` right, and so on.
pub fn fence_quiver(b: &[i64]) -> Result<Quiver> {
    validate_btuple(b)?;
    let mut forward = Vec::new();
    for (i, &x) in b.iter().enumerate() {
        forward.extend(std::iter::repeat_n(i % 2 == 1, x as usize));
    }
    Ok(path_quiver(forward, false))
}

fn path_quiver(forward: Vec<bool>, heavy_last: bool) -> Quiver {
    let chain = forward.len() + 1;
    let mut arrows: Vec<(usize, usize)> = forward
        .iter()
        .enumerate()
        .map(|(i, &f)| if f { (i, i + 1) } else { (i + 1, i) })
        .collect();
    let mut n = chain;
    if heavy_last {
        arrows.push((chain - 1, chain));
        arrows.push((chain, chain - 1));
        n += 1;
    }
    Quiver {
        n_vertices: n,
        arrows,
        layout: Some(Layout {
            cyclic: false,
            forward,
            heavy_last,
        }),
    }
}

/// `Q^♭(b)`: `Q(b)` plus a vertex `w` in a 2-cycle with the last vertex.
pub fn flat_quiver(b: &[i64]) -> Result<Quiver> {
    let fence = fence_quiver(b)?;
    let forward = fence.layout.expect("fence has a layout").forward;
    Ok(path_quiver(forward, true))
}

/// Cycle on `Σa` vertices; runs alternate orientation starting with
/// `i -> i + 1`.
pub fn circular_fence(a: &[i64]) -> Result<Quiver> {
    if a.is_empty() || !a.len().is_multiple_of(2) || a.iter().any(|&x| x <= 0) {
        return Err(Error::InvalidQuiver(format!(
            "circular fence needs an even number of positive entries, got ({})",
            join_list(a)
        )));
    }
    let mut forward = Vec::new();
    for (i, &x) in a.iter().enumerate() {
        forward.extend(std::iter::repeat_n(i % 2 == 0, x as usize));
    }
    let n = forward.len();
    let arrows = forward
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let j = (i + 1) % n;
            if f {
                (i, j)
            } else {
                (j, i)
            }
        })
        .collect();
    Ok(Quiver {
        n_vertices: n,
        arrows,
        layout: Some(Layout {
            cyclic: true,
            forward,
            heavy_last: false,
        }),
    })
}

pub fn opposite(q: &Quiver) -> Quiver {
    Quiver {
        n_vertices: q.n_vertices,
        arrows: q.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        layout: q.layout.as_ref().map(|l| Layout {
            forward: l.forward.iter().map(|f| !f).collect(),
            ..l.clone()
        }),
    }
}

/// The `R`-tuple `(a_1 - 1, a_2, ..., a_{2m} - 1)` of the even expansion.
pub fn r_tuple(x: Fraction) -> Result<Vec<i64>> {
    x.require_gt_one()?;
    let mut a = regular_cf(x).terms;
    a[0] -= 1;
    *a.last_mut().expect("nonempty expansion") -= 1;
    Ok(a)
}

/// The tuple left after deleting the first `a_1` arrows of `Q(b)`, or `None`
/// when no arrows (and no vertices) remain.
pub fn s_tuple(x: Fraction) -> Result<Option<Vec<i64>>> {
    let b = r_tuple(x)?;
    let total: i64 = b.iter().sum();
    let a1 = b[0] + 1;
    if a1 > total {
        return Ok(None);
    }
    let mut s = vec![0, b[1] - 1];
    s.extend_from_slice(&b[2..]);
    if s.len() > 2 && s[1] == 0 {
        s.drain(..2);
    } else if s == [0, 0] {
        s = vec![0];
    }
    Ok(Some(s))
}

/// `(Q^{♯,R}, Q^{♯,S})` for `x > 1`.
pub fn sharp_quivers(x: Fraction) -> Result<(Quiver, Quiver)> {
    let qr = fence_quiver(&r_tuple(x)?)?;
    let qs = match s_tuple(x)? {
        Some(b) => fence_quiver(&b)?,
        None => Quiver::empty(),
    };
    Ok((qr, qs))
}

/// `(Q^{♭,R}, Q^{♭,S})` for `x > 1`.
pub fn flat_quivers(x: Fraction) -> Result<(Quiver, Quiver)> {
    let qr = flat_quiver(&r_tuple(x)?)?;
    let qs = match s_tuple(x)? {
        Some(b) => flat_quiver(&b)?,
        None => Quiver::empty(),
    };
    Ok((qr, qs))
}

/// Deletes the first `k` chain arrows of a fence or flat quiver together with
/// the vertices they isolate; the chain is renumbered from 0.
pub fn strip_leading_arrows(q: &Quiver, k: usize) -> Result<Quiver> {
    let layout = q.layout.as_ref().filter(|l| !l.cyclic).ok_or(Error::Unstructured)?;
    if k > layout.forward.len() {
        return Ok(Quiver::empty());
    }
    Ok(path_quiver(layout.forward[k..].to_vec(), layout.heavy_last))
}

fn add_into(acc: &mut [i64], src: &[i64], shift: usize) -> Result<()> {
    for (i, &c) in src.iter().enumerate() {
        if c != 0 {
            let slot = &mut acc[i + shift];
            *slot = slot.checked_add(c).ok_or(Error::Overflow("closure count"))?;
        }
    }
    Ok(())
}

/// Transfer along a path starting from the given state at vertex 0.
/// Returns counts indexed by `[membership of last vertex][closure size]`.
fn path_transfer(forward: &[bool], weights: &[usize], start: [Vec<i64>; 2]) -> Result<[Vec<i64>; 2]> {
    let total: usize = weights.iter().sum();
    let mut cur = start;
    for (i, &f) in forward.iter().enumerate() {
        let w = weights[i + 1];
        let mut next = [vec![0i64; total + 1], vec![0i64; total + 1]];
        for prev in 0..2 {
            for now in 0..2 {
                // forward edge i -> i+1 forbids (in, out); backward forbids (out, in)
                let blocked = if f { prev == 1 && now == 0 } else { prev == 0 && now == 1 };
                if !blocked {
                    add_into(&mut next[now], &cur[prev], if now == 1 { w } else { 0 })?;
                }
            }
        }
        cur = next;
    }
    Ok(cur)
}

fn closure_dp(q: &Quiver) -> Result<LaurentPoly> {
    let layout = q.layout.as_ref().ok_or(Error::Unstructured)?;
    if q.n_vertices == 0 {
        return Ok(LaurentPoly::one());
    }
    let chain = if layout.cyclic { layout.forward.len() } else { layout.forward.len() + 1 };
    let mut weights = vec![1usize; chain];
    if layout.heavy_last {
        weights[chain - 1] = 2;
    }
    let total: usize = weights.iter().sum();
    let start_with = |member: usize| -> [Vec<i64>; 2] {
        let mut s = [vec![0i64; total + 1], vec![0i64; total + 1]];
        s[member][if member == 1 { weights[0] } else { 0 }] = 1;
        s
    };
    let mut counts = vec![0i64; total + 1];
    if layout.cyclic {
        let n = chain;
        let wrap_forward = layout.forward[n - 1];
        for first in 0..2 {
            let end = path_transfer(&layout.forward[..n - 1], &weights, start_with(first))?;
            for (last, c) in end.iter().enumerate() {
                // wrap edge joins vertex n-1 and vertex 0
                let blocked = if wrap_forward { last == 1 && first == 0 } else { last == 0 && first == 1 };
                if !blocked {
                    add_into(&mut counts, c, 0)?;
                }
            }
        }
    } else {
        let a = path_transfer(&layout.forward, &weights, start_with(0))?;
        let b = path_transfer(&layout.forward, &weights, start_with(1))?;
        for c in a.iter().chain(b.iter()) {
            add_into(&mut counts, c, 0)?;
        }
    }
    Ok(LaurentPoly::from_coeffs(0, counts))
}

fn closure_brute(q: &Quiver) -> Result<LaurentPoly> {
    let n = q.n_vertices;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooManyVertices { n, cap: BRUTE_FORCE_CAP });
    }
    let succ = q.successor_masks();
    let mut counts = vec![0i64; n + 1];
    for m in 0u64..(1u64 << n) {
        let ok = (0..n).all(|v| m >> v & 1 == 0 || succ[v] & !m == 0);
        if ok {
            counts[m.count_ones() as usize] += 1;
        }
    }
    Ok(LaurentPoly::from_coeffs(0, counts))
}

/// `cl(Q; q) = Σ_ℓ ρ_ℓ q^ℓ`, `ρ_ℓ` the number of closures of size `ℓ`.
pub fn closure_poly(q: &Quiver, method: ClosureMethod) -> Result<LaurentPoly> {
    match method {
        ClosureMethod::BruteForce => closure_brute(q),
        ClosureMethod::Dp => closure_dp(q),
    }
}

/// DP when the quiver has a layout, brute force otherwise.
pub fn closure(q: &Quiver) -> Result<LaurentPoly> {
    if q.layout.is_some() {
        closure_dp(q)
    } else {
        closure_brute(q)
    }
}

/// All closures grouped by size, each as a sorted vertex list.
pub fn closure_table(q: &Quiver) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = q.n_vertices;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooManyVertices { n, cap: BRUTE_FORCE_CAP });
    }
    let succ = q.successor_masks();
    let mut table = vec![Vec::new(); n + 1];
    for m in 0u64..(1u64 << n) {
        if (0..n).all(|v| m >> v & 1 == 0 || succ[v] & !m == 0) {
            let set: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            table[set.len()].push(set);
        }
    }
    for row in &mut table {
        row.sort();
    }
    Ok(table)
}

/// Rank polynomial of the poset with `a < b` whenever there is a path
/// `b -> ... -> a`, counted as down-sets generated by antichains. Requires
/// an acyclic quiver.
pub fn rank_poly_via_antichains(q: &Quiver) -> Result<LaurentPoly> {
    let n = q.n_vertices;
    if n > 64 {
        return Err(Error::TooManyVertices { n, cap: 64 });
    }
    // below[v]: everything reachable from v, including v
    let succ = q.successor_masks();
    let mut below: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    loop {
        let mut changed = false;
        for v in 0..n {
            let mut acc = below[v];
            for w in 0..n {
                if succ[v] >> w & 1 == 1 {
                    acc |= below[w];
                }
            }
            if acc != below[v] {
                below[v] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if (0..n).any(|v| (0..n).any(|w| w != v && below[v] >> w & 1 == 1 && below[w] >> v & 1 == 1)) {
        return Err(Error::InvalidQuiver("quiver has an oriented cycle; not a poset".into()));
    }
    let mut counts = vec![0i64; n + 1];
    // antichains enumerated by increasing vertex index
    fn walk(v: usize, n: usize, below: &[u64], chosen: u64, down: u64, counts: &mut [i64]) {
        if v == n {
            counts[down.count_ones() as usize] += 1;
            return;
        }
        walk(v + 1, n, below, chosen, down, counts);
        let comparable = (0..n).any(|w| chosen >> w & 1 == 1 && (below[w] >> v & 1 == 1 || below[v] >> w & 1 == 1));
        if !comparable {
            walk(v + 1, n, below, chosen | 1 << v, down | below[v], counts);
        }
    }
    walk(0, n, &below, 0, 0, &mut counts);
    Ok(LaurentPoly::from_coeffs(0, counts))
}
