//! Range extrema queries over static arrays and lowest-common-ancestor
//! queries over static rooted trees, both with O(1) query time after
//! preprocessing.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("parent array does not describe a rooted tree: {0}")]
    NotATree(String),
}

/// Static range-min / range-max index over an `i64` array, built as a sparse
/// table. Preprocessing is O(n log n); each query is O(1). For `argmin` /
/// `argmax`, ties resolve to the leftmost position.
pub struct RangeIndex {
    vals: Vec<i64>,
    // min_tab[k][i] = index of min over vals[i .. i + 2^k], leftmost on ties
    min_tab: Vec<Vec<u32>>,
    max_tab: Vec<Vec<u32>>,
}

impl RangeIndex {
    pub fn new(vals: Vec<i64>) -> Self {
        let n = vals.len();
        let levels = if n <= 1 { 1 } else { n.ilog2() as usize + 1 };
        let mut min_tab = Vec::with_capacity(levels);
        let mut max_tab = Vec::with_capacity(levels);
        min_tab.push((0..n as u32).collect::<Vec<_>>());
        max_tab.push((0..n as u32).collect::<Vec<_>>());
        for k in 1..levels {
            let half = 1usize << (k - 1);
            let width = 1usize << k;
            let take = |tab: &Vec<Vec<u32>>, i: usize, better: &dyn Fn(i64, i64) -> bool| {
                let a = tab[k - 1][i];
                let b = tab[k - 1][i + half];
                // strict comparison keeps the leftmost index on ties
                if better(vals[b as usize], vals[a as usize]) {
                    b
                } else {
                    a
                }
            };
            let mut mins = Vec::new();
            let mut maxs = Vec::new();
            for i in 0..n.saturating_sub(width - 1) {
                mins.push(take(&min_tab, i, &|x, y| x < y));
                maxs.push(take(&max_tab, i, &|x, y| x > y));
            }
            min_tab.push(mins);
            max_tab.push(maxs);
        }
        RangeIndex { vals, min_tab, max_tab }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn value(&self, i: usize) -> i64 {
        self.vals[i]
    }

    fn arg(&self, lo: usize, hi: usize, tab: &[Vec<u32>], better: impl Fn(i64, i64) -> bool) -> usize {
        assert!(lo <= hi && hi < self.vals.len(), "bad range [{lo}, {hi}]");
        let k = (hi - lo + 1).ilog2() as usize;
        let a = tab[k][lo];
        let b = tab[k][hi + 1 - (1usize << k)];
        // prefer `a` (the left window) on ties; if b strictly better and
        // earlier, still pick the leftmost achiever
        let (va, vb) = (self.vals[a as usize], self.vals[b as usize]);
        if better(vb, va) || (vb == va && b < a) {
            b as usize
        } else {
            a as usize
        }
    }

    /// Index of the minimum over the inclusive range, leftmost on ties.
    pub fn argmin(&self, lo: usize, hi: usize) -> usize {
        self.arg(lo, hi, &self.min_tab, |x, y| x < y)
    }

    /// Index of the maximum over the inclusive range, leftmost on ties.
    pub fn argmax(&self, lo: usize, hi: usize) -> usize {
        self.arg(lo, hi, &self.max_tab, |x, y| x > y)
    }

    pub fn min(&self, lo: usize, hi: usize) -> i64 {
        self.vals[self.argmin(lo, hi)]
    }

    pub fn max(&self, lo: usize, hi: usize) -> i64 {
        self.vals[self.argmax(lo, hi)]
    }
}

/// Answer of an extended LCA query for vertices `u`, `v`:
/// the meet `z`, the children of `z` on the paths toward each argument
/// (absent when the argument is `z` itself), and the grandchildren one step
/// further (absent when the path is too short).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Meet {
    pub z: usize,
    pub cu: Option<usize>,
    pub gu: Option<usize>,
    pub cv: Option<usize>,
    pub gv: Option<usize>,
}

/// LCA index over a static rooted tree given as a parent array
/// (`parent[root] == root`). Uses an Euler tour with a sparse table for the
/// LCA itself and binary lifting for level ancestors.
pub struct LcaIndex {
    depth: Vec<u32>,
    // up[k][v] = 2^k-th ancestor of v (clamped at the root)
    up: Vec<Vec<u32>>,
    first_visit: Vec<usize>,
    tour_index: RangeIndex, // min over Euler tour depths; tour_vertex gives vertex
    tour_vertex: Vec<u32>,
}

impl LcaIndex {
    pub fn new(parent: &[usize]) -> Result<Self, SeqError> {
        let n = parent.len();
        if n == 0 {
            return Err(SeqError::NotATree("empty".into()));
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (v, &p) in parent.iter().enumerate() {
            if p >= n {
                return Err(SeqError::NotATree(format!("parent of {v} out of range")));
            }
            if p == v {
                if root.replace(v).is_some() {
                    return Err(SeqError::NotATree("multiple roots".into()));
                }
            } else {
                children[p].push(v);
            }
        }
        let root = root.ok_or_else(|| SeqError::NotATree("no root".into()))?;

        // iterative Euler tour; also detects cycles/unreachable vertices
        let mut depth = vec![u32::MAX; n];
        let mut first_visit = vec![usize::MAX; n];
        let mut tour_depth = Vec::with_capacity(2 * n);
        let mut tour_vertex = Vec::with_capacity(2 * n);
        let mut stack = vec![(root, 0usize, 0u32)]; // (vertex, child cursor, depth)
        while let Some(&mut (v, ref mut cursor, d)) = stack.last_mut() {
            if *cursor == 0 {
                depth[v] = d;
                first_visit[v] = tour_vertex.len();
            }
            tour_depth.push(d as i64);
            tour_vertex.push(v as u32);
            if *cursor < children[v].len() {
                let c = children[v][*cursor];
                *cursor += 1;
                stack.push((c, 0, d + 1));
            } else {
                stack.pop();
                // re-visit entry for the parent is pushed on its next loop turn
            }
        }
        if depth.iter().any(|&d| d == u32::MAX) {
            return Err(SeqError::NotATree("unreachable vertex or cycle".into()));
        }

        let levels = if n <= 1 { 1 } else { n.ilog2() as usize + 1 };
        let mut up = Vec::with_capacity(levels);
        up.push(parent.iter().map(|&p| p as u32).collect::<Vec<_>>());
        for k in 1..levels {
            let prev = &up[k - 1];
            let next: Vec<u32> = (0..n).map(|v| prev[prev[v] as usize]).collect();
            up.push(next);
        }

        Ok(LcaIndex {
            depth,
            up,
            first_visit,
            tour_index: RangeIndex::new(tour_depth),
            tour_vertex,
        })
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (a, b) = {
            let (fu, fv) = (self.first_visit[u], self.first_visit[v]);
            (fu.min(fv), fu.max(fv))
        };
        self.tour_vertex[self.tour_index.argmin(a, b)] as usize
    }

    /// Ancestor of `v` at depth `d` (requires `d <= depth(v)`).
    pub fn ancestor_at_depth(&self, v: usize, d: usize) -> usize {
        let mut steps = self.depth[v] as usize - d;
        let mut v = v;
        let mut k = 0;
        while steps > 0 {
            if steps & 1 == 1 {
                v = self.up[k][v] as usize;
            }
            steps >>= 1;
            k += 1;
        }
        v
    }

    /// Extended meet query: LCA plus the child and grandchild of the meet on
    /// each side's path.
    pub fn meet(&self, u: usize, v: usize) -> Meet {
        let z = self.lca(u, v);
        let dz = self.depth[z] as usize;
        let side = |x: usize| -> (Option<usize>, Option<usize>) {
            let dx = self.depth[x] as usize;
            let c = (dx > dz).then(|| self.ancestor_at_depth(x, dz + 1));
            let g = (dx > dz + 1).then(|| self.ancestor_at_depth(x, dz + 2));
            (c, g)
        };
        let (cu, gu) = side(u);
        let (cv, gv) = side(v);
        Meet { z, cu, gu, cv, gv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::XorShift64;

    #[test]
    fn range_index_small() {
        let r = RangeIndex::new(vec![3, 1, 4, 1, 5]);
        assert_eq!(r.argmin(0, 4), 1); // leftmost of the two 1s
        assert_eq!(r.argmin(2, 4), 3);
        assert_eq!(r.argmax(0, 4), 4);
        assert_eq!(r.max(0, 2), 4);
        assert_eq!(r.min(2, 2), 4);

        let single = RangeIndex::new(vec![7]);
        assert_eq!(single.argmin(0, 0), 0);
    }

    #[test]
    fn range_index_vs_scan() {
        let mut rng = XorShift64::new(11);
        for round in 0..1000 {
            let n = 1 + rng.next_below(if round % 10 == 0 { 512 } else { 40 }) as usize;
            let vals: Vec<i64> =
                (0..n).map(|_| rng.next_below(8) as i64 - 4).collect();
            let r = RangeIndex::new(vals.clone());
            for _ in 0..20 {
                let lo = rng.next_below(n as u64) as usize;
                let hi = lo + rng.next_below((n - lo) as u64) as usize;
                let amin = (lo..=hi).min_by_key(|&i| (vals[i], i)).unwrap();
                let amax = (lo..=hi)
                    .max_by(|&a, &b| vals[a].cmp(&vals[b]).then(b.cmp(&a)))
                    .unwrap();
                assert_eq!(r.argmin(lo, hi), amin, "vals {vals:?} [{lo}, {hi}]");
                assert_eq!(r.argmax(lo, hi), amax, "vals {vals:?} [{lo}, {hi}]");
            }
        }
    }

    // path-climbing reference for the extended meet query
    fn meet_naive(parent: &[usize], u: usize, v: usize) -> Meet {
        let path = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != x {
                x = parent[x];
                p.push(x);
            }
            p.reverse();
            p // root-first path to x
        };
        let (pu, pv) = (path(u), path(v));
        let mut d = 0;
        while d < pu.len() && d < pv.len() && pu[d] == pv[d] {
            d += 1;
        }
        Meet {
            z: pu[d - 1],
            cu: pu.get(d).copied(),
            gu: pu.get(d + 1).copied(),
            cv: pv.get(d).copied(),
            gv: pv.get(d + 1).copied(),
        }
    }

    fn random_parent(n: usize, rng: &mut XorShift64) -> Vec<usize> {
        // random attachment: vertex i's parent is a random earlier vertex
        let mut parent = vec![0; n];
        for i in 1..n {
            parent[i] = rng.next_below(i as u64) as usize;
        }
        parent
    }

    #[test]
    fn lca_vs_path_climbing() {
        let mut rng = XorShift64::new(23);
        for round in 0..200 {
            let n = 1 + rng.next_below(if round % 10 == 0 { 512 } else { 30 }) as usize;
            let parent = random_parent(n, &mut rng);
            let idx = LcaIndex::new(&parent).unwrap();
            for _ in 0..30 {
                let u = rng.next_below(n as u64) as usize;
                let v = rng.next_below(n as u64) as usize;
                assert_eq!(idx.meet(u, v), meet_naive(&parent, u, v));
            }
        }
    }

    #[test]
    fn lca_rejects_non_trees() {
        assert!(LcaIndex::new(&[]).is_err());
        assert!(LcaIndex::new(&[0, 1]).is_err()); // two roots
        assert!(LcaIndex::new(&[1, 0]).is_err()); // 2-cycle, no root
        assert!(LcaIndex::new(&[5]).is_err()); // parent out of range
    }

    #[test]
    fn meet_of_equal_vertices() {
        let idx = LcaIndex::new(&[0, 0, 1]).unwrap();
        let m = idx.meet(2, 2);
        assert_eq!(m, Meet { z: 2, cu: None, gu: None, cv: None, gv: None });
        let m = idx.meet(2, 1);
        assert_eq!(m, Meet { z: 1, cu: Some(2), gu: None, cv: None, gv: None });
    }
}
