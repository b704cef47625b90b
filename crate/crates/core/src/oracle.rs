//! Brute-force exact ground truth: complete interval minors, arbitrary
//! interval minors, monochromatic interval minors and max clique. The value
//! of this module is its obvious correctness; everything else is tested
//! against it.

use thiserror::Error;

use crate::graph::{Color, EdgeColoring, Graph, Interval, IntervalWitness, OrderedGraph};

/// Enumeration budget: number of boundary placements we are willing to try.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance too large: {0} candidates exceed the budget")]
    TooLarge(u64),
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// O(1) interval-pair edge counts over a fixed graph, via a 2D prefix sum
/// of the adjacency matrix.
struct PairCounts {
    n: usize,
    // pre[(i+1) * (n+1) + (j+1)] = #ordered adjacent pairs (u, v), u <= i, v <= j
    pre: Vec<u32>,
}

impl PairCounts {
    fn new(g: &OrderedGraph) -> Self {
        let n = g.n();
        let w = n + 1;
        let mut pre = vec![0u32; w * w];
        for &(u, v) in g.edges() {
            pre[(u + 1) * w + v + 1] += 1;
            pre[(v + 1) * w + u + 1] += 1;
        }
        for i in 1..=n {
            for j in 1..=n {
                pre[i * w + j] += pre[(i - 1) * w + j] + pre[i * w + j - 1];
                pre[i * w + j] -= pre[(i - 1) * w + j - 1];
            }
        }
        PairCounts { n, pre }
    }

    // ordered adjacent pairs (u, v) with u in [a, b], v in [c, d]
    fn count(&self, a: usize, b: usize, c: usize, d: usize) -> u32 {
        let at = |i: usize, j: usize| self.pre[i * (self.n + 1) + j];
        at(b + 1, d + 1) + at(a, c) - at(a, d + 1) - at(b + 1, c)
    }

    fn any_between(&self, p: Interval, q: Interval) -> bool {
        self.count(p.lo, p.hi, q.lo, q.hi) > 0
    }

}

fn cuts_to_parts(n: usize, cuts: &[usize], parts: &mut Vec<Interval>) {
    parts.clear();
    let mut lo = 0;
    for &c in cuts {
        parts.push(Interval::new(lo, c - 1));
        lo = c;
    }
    parts.push(Interval::new(lo, n - 1));
}

/// Enumerates all partitions of 0..n into `t` intervals in lexicographic
/// order of cut positions, returning the first for which `ok` holds.
fn first_partition(
    n: usize,
    t: usize,
    budget: u64,
    mut ok: impl FnMut(&[Interval]) -> bool,
) -> Result<Option<Vec<Interval>>, OracleError> {
    debug_assert!(t >= 1 && t <= n);
    let candidates = binomial((n - 1) as u64, (t - 1) as u64);
    if candidates > budget {
        return Err(OracleError::TooLarge(candidates));
    }
    // cuts are t-1 strictly increasing positions in 1..n
    let mut cuts: Vec<usize> = (1..t).collect();
    let mut parts = Vec::with_capacity(t);
    loop {
        cuts_to_parts(n, &cuts, &mut parts);
        if ok(&parts) {
            return Ok(Some(parts));
        }
        // next combination
        let k = cuts.len();
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if cuts[i] < n - (k - i) {
                cuts[i] += 1;
                for j in i + 1..k {
                    cuts[j] = cuts[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// True (with the lexicographically first witness) iff some partition of g
/// into t nonempty intervals has an edge between every pair of parts.
/// t > n is No.
pub fn exact_has_complete_kim(
    g: &OrderedGraph,
    t: usize,
) -> Result<Option<IntervalWitness>, OracleError> {
    assert!(t >= 1);
    let n = g.n();
    if t > n {
        return Ok(None);
    }
    let pc = PairCounts::new(g);
    let found = first_partition(n, t, DEFAULT_BUDGET, |parts| {
        parts
            .iter()
            .enumerate()
            .all(|(i, &p)| parts[i + 1..].iter().all(|&q| pc.any_between(p, q)))
    })?;
    Ok(found.map(IntervalWitness::plain))
}

/// Largest t for which a complete-K_t partition exists; 0 for the empty
/// graph. Downward monotone, so we scan t upward and stop at the first
/// failure.
pub fn exact_max_kim(g: &OrderedGraph) -> Result<usize, OracleError> {
    let mut best = 0;
    for t in 1..=g.n() {
        if exact_has_complete_kim(g, t)?.is_some() {
            best = t;
        } else {
            break;
        }
    }
    Ok(best)
}

/// True iff some partition of g into h.n intervals has, for every h-edge
/// (i, j), a g-edge between parts i and j.
pub fn exact_has_interval_minor(g: &OrderedGraph, h: &OrderedGraph) -> Result<bool, OracleError> {
    assert!(h.n() >= 1);
    if h.n() > g.n() {
        return Ok(false);
    }
    let pc = PairCounts::new(g);
    let found = first_partition(g.n(), h.n(), DEFAULT_BUDGET, |parts| {
        h.edges().iter().all(|&(i, j)| pc.any_between(parts[i], parts[j]))
    })?;
    Ok(found.is_some())
}

/// Largest monochromatic complete interval minor over both colors. On a
/// tie, red is reported.
pub fn exact_max_mono_kim(
    c: &EdgeColoring,
) -> Result<(usize, Color, IntervalWitness), OracleError> {
    let red = c.color_graph(Color::Red);
    let blue = c.color_graph(Color::Blue);
    let (tr, tb) = (exact_max_kim(&red)?, exact_max_kim(&blue)?);
    let (t, col, host) = if tr >= tb {
        (tr, Color::Red, &red)
    } else {
        (tb, Color::Blue, &blue)
    };
    if t == 0 {
        // n = 0 colorings have no partition at all; report size 0 with an
        // empty witness
        return Ok((0, col, IntervalWitness::plain(Vec::new())));
    }
    let w = exact_has_complete_kim(host, t)?.expect("t is achievable");
    Ok((t, col, w))
}

/// Verifies that a witness is monochromatic in the given color: every pair
/// of parts is joined by an edge of that color (and loop-flagged parts have
/// an internal edge of that color).
pub fn verify_mono_witness(c: &EdgeColoring, col: Color, w: &IntervalWitness) -> bool {
    let host = c.color_graph(col);
    crate::graph::verify_witness(&host, w).unwrap_or(false)
}

/// Maximum clique size by branch and bound; guarded to n ≤ 20.
pub fn exact_max_clique(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > 20 {
        return Err(OracleError::TooLarge(n as u64));
    }
    let mut nb = vec![0u32; n];
    for &(u, v) in g.edges() {
        nb[u] |= 1 << v;
        nb[v] |= 1 << u;
    }
    fn grow(nb: &[u32], cand: u32, size: usize, best: &mut usize) {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        let v = cand.trailing_zeros() as usize;
        // branch: take v, or skip v
        grow(nb, cand & nb[v] & !(1 << v), size + 1, best);
        grow(nb, cand & !(1 << v), size, best);
    }
    let mut best = 0;
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    grow(&nb, all, 0, &mut best);
    Ok(best)
}
