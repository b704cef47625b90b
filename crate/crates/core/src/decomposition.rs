//! Delayed structured trees: construction of the distinguishing delayed
//! decomposition in near-linear time, realization, structural checks, and
//! the branching-node / interval-path dichotomy on ordered trees.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Interval, OrderedGraph};
use crate::seq::{LcaIndex, RangeIndex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal error: {0}")]
    InternalError(String),
}

/// Node label assigned by the labeling pass; `None` until labeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    /// No grandparent (root and its children).
    Empty,
    R,
    L,
    O,
    OL,
    OR,
}

/// Quotient graph of a node: its vertex set is the node's grandchildren in
/// leaf order; edges join cousins only.
#[derive(Debug, Clone, Default)]
pub struct Quotient {
    /// grandchild node ids, ordered by leaf interval
    pub verts: Vec<usize>,
    /// positions into `verts`, stored with i < j, sorted, deduplicated
    pub edges: Vec<(usize, usize)>,
}

impl Quotient {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.verts.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    pub fn as_ordered_graph(&self) -> OrderedGraph {
        OrderedGraph::from_edge_list(self.verts.len(), self.edges.iter().copied())
            .expect("quotient edges are canonical")
    }
}

#[derive(Debug, Clone)]
pub struct Node {
    pub parent: Option<usize>,
    /// children in leaf-interval order
    pub children: Vec<usize>,
    /// leaf interval L(x); None only for the root of the n = 0 tree
    pub interval: Option<Interval>,
    pub quotient: Quotient,
    /// position of this node inside its grandparent's quotient
    pub pos_in_quotient: Option<usize>,
    pub label: Option<Label>,
}

/// A delayed structured tree. Node 0 is the root; leaves are in bijection
/// with the vertices of the realized graph, in order.
#[derive(Debug, Clone)]
pub struct DelayedTree {
    pub nodes: Vec<Node>,
    /// vertex -> leaf node id
    pub leaf_of_vertex: Vec<usize>,
}

impl DelayedTree {
    pub fn n(&self) -> usize {
        self.leaf_of_vertex.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn is_leaf(&self, x: usize) -> bool {
        self.nodes[x].children.is_empty()
    }

    pub fn interval(&self, x: usize) -> Interval {
        self.nodes[x].interval.expect("node of a nonempty tree")
    }

    /// Grandparent, if any.
    pub fn p2(&self, x: usize) -> Option<usize> {
        self.nodes[x].parent.and_then(|p| self.nodes[p].parent)
    }

    pub fn parent_array(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, nd)| nd.parent.unwrap_or(i))
            .collect()
    }

    /// Total number of quotient edges over all nodes.
    pub fn quotient_edge_total(&self) -> usize {
        self.nodes.iter().map(|nd| nd.quotient.edges.len()).sum()
    }

    /// Fills `verts` and `pos_in_quotient` from the tree structure and
    /// installs the given quotient edges, given as (node, grandchild id,
    /// grandchild id) triples.
    fn install_quotients(&mut self, edge_triples: Vec<(usize, usize, usize)>) -> Result<(), DecompError> {
        for x in 0..self.nodes.len() {
            let mut verts = Vec::new();
            for ci in 0..self.nodes[x].children.len() {
                let c = self.nodes[x].children[ci];
                for &gc in &self.nodes[c].children {
                    verts.push(gc);
                }
            }
            for (pos, &gc) in verts.iter().enumerate() {
                self.nodes[gc].pos_in_quotient = Some(pos);
            }
            self.nodes[x].quotient.verts = verts;
        }
        let mut per_node: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.nodes.len()];
        for (z, a, b) in edge_triples {
            let pa = self.nodes[a].pos_in_quotient.ok_or_else(|| {
                DecompError::MalformedTree(format!("node {a} is not in a quotient"))
            })?;
            let pb = self.nodes[b].pos_in_quotient.ok_or_else(|| {
                DecompError::MalformedTree(format!("node {b} is not in a quotient"))
            })?;
            if self.p2(a) != Some(z) || self.p2(b) != Some(z) {
                return Err(DecompError::MalformedTree(format!(
                    "quotient edge ({a}, {b}) not between grandchildren of {z}"
                )));
            }
            if self.nodes[a].parent == self.nodes[b].parent {
                return Err(DecompError::MalformedTree(format!(
                    "quotient edge ({a}, {b}) between siblings"
                )));
            }
            per_node[z].push((pa.min(pb), pa.max(pb)));
        }
        for (x, mut es) in per_node.into_iter().enumerate() {
            es.sort_unstable();
            es.dedup();
            self.nodes[x].quotient.edges = es;
        }
        Ok(())
    }

    /// Builds a tree by hand from a parent array, per-node leaf intervals
    /// and quotient edges given as (node, grandchild, grandchild) triples.
    /// Intended for tests and foreign-tree ingestion; validates structure.
    pub fn manual(
        parent: &[Option<usize>],
        intervals: &[Option<Interval>],
        quotient_edges: &[(usize, usize, usize)],
    ) -> Result<DelayedTree, DecompError> {
        let nn = parent.len();
        if nn == 0 || parent[0].is_some() || intervals.len() != nn {
            return Err(DecompError::MalformedTree("node 0 must be the root".into()));
        }
        let mut nodes: Vec<Node> = (0..nn)
            .map(|i| Node {
                parent: parent[i],
                children: Vec::new(),
                interval: intervals[i],
                quotient: Quotient::default(),
                pos_in_quotient: None,
                label: None,
            })
            .collect();
        for i in 1..nn {
            let p = parent[i].ok_or_else(|| DecompError::MalformedTree(format!("node {i} has no parent")))?;
            if p >= nn {
                return Err(DecompError::MalformedTree(format!("parent of {i} out of range")));
            }
            nodes[p].children.push(i);
        }
        for nd in &mut nodes {
            nd.children.sort_by_key(|&c| intervals[c].map(|iv| iv.lo));
        }
        let mut leaves: Vec<usize> = (0..nn).filter(|&i| nodes[i].children.is_empty()).collect();
        leaves.sort_by_key(|&l| intervals[l].map(|iv| iv.lo));
        let mut leaf_of_vertex = Vec::new();
        for (v, &l) in leaves.iter().enumerate() {
            match intervals[l] {
                Some(iv) if iv.lo == v && iv.hi == v => leaf_of_vertex.push(l),
                _ => {
                    return Err(DecompError::MalformedTree(format!(
                        "leaf {l} is not the singleton [{v}, {v}]"
                    )))
                }
            }
        }
        let mut t = DelayedTree { nodes, leaf_of_vertex };
        t.validate()?;
        t.install_quotients(quotient_edges.to_vec())?;
        Ok(t)
    }

    /// Structural validation: intervals nest, children tile the parent in
    /// order, leaves are single children.
    pub fn validate(&self) -> Result<(), DecompError> {
        for (x, nd) in self.nodes.iter().enumerate() {
            if nd.children.is_empty() {
                continue;
            }
            let iv = nd.interval.ok_or_else(|| {
                DecompError::MalformedTree(format!("internal node {x} has no interval"))
            })?;
            let mut expect = iv.lo;
            for &c in &nd.children {
                let civ = self.nodes[c]
                    .interval
                    .ok_or_else(|| DecompError::MalformedTree(format!("node {c} has no interval")))?;
                if civ.lo != expect {
                    return Err(DecompError::MalformedTree(format!(
                        "children of {x} do not tile its interval"
                    )));
                }
                expect = civ.hi + 1;
            }
            if expect != iv.hi + 1 {
                return Err(DecompError::MalformedTree(format!(
                    "children of {x} do not cover its interval"
                )));
            }
        }
        for (v, &l) in self.leaf_of_vertex.iter().enumerate() {
            if !self.is_leaf(l) || self.interval(l) != Interval::new(v, v) {
                return Err(DecompError::MalformedTree(format!("bad leaf for vertex {v}")));
            }
            let p = self.nodes[l]
                .parent
                .ok_or_else(|| DecompError::MalformedTree("leaf is the root".into()))?;
            if self.nodes[p].children.len() != 1 {
                return Err(DecompError::MalformedTree(format!(
                    "leaf {l} has siblings"
                )));
            }
        }
        Ok(())
    }

    /// Preorder text dump: one line per node with parent index, interval,
    /// label, and quotient edges as grandchild-position pairs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} nodes", self.nodes.len());
        for (x, nd) in self.nodes.iter().enumerate() {
            let parent = nd.parent.map_or("-".to_string(), |p| p.to_string());
            let iv = nd
                .interval
                .map_or("-".to_string(), |iv| format!("[{},{}]", iv.lo, iv.hi));
            let label = match nd.label {
                None => "?",
                Some(Label::Empty) => "e",
                Some(Label::R) => "R",
                Some(Label::L) => "L",
                Some(Label::O) => "O",
                Some(Label::OL) => "OL",
                Some(Label::OR) => "OR",
            };
            let edges: Vec<String> = nd
                .quotient
                .edges
                .iter()
                .map(|&(i, j)| format!("{i}-{j}"))
                .collect();
            let _ = writeln!(s, "{x} {parent} {iv} {label} {}", edges.join(","));
        }
        s
    }

    /// DOT export: tree edges solid, quotient edges dashed at their node.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph delayed {\n");
        for (x, nd) in self.nodes.iter().enumerate() {
            let iv = nd
                .interval
                .map_or("-".to_string(), |iv| format!("[{},{}]", iv.lo, iv.hi));
            let label = nd.label.map_or(String::new(), |l| format!("\\n{l:?}"));
            let _ = writeln!(s, "  n{x} [label=\"{x} {iv}{label}\"];");
            for &c in &nd.children {
                let _ = writeln!(s, "  n{x} -> n{c};");
            }
            for &(i, j) in &nd.quotient.edges {
                let a = nd.quotient.verts[i];
                let b = nd.quotient.verts[j];
                let _ = writeln!(s, "  n{a} -> n{b} [style=dashed, dir=none];");
            }
        }
        s.push_str("}\n");
        s
    }
}

// Report all indices i in [lo, hi] whose value is < bound (strictly), using
// repeated range-min queries; O(#reported · log) worst case, fine here.
fn collect_lt(idx: &RangeIndex, lo: usize, hi: usize, bound: i64, out: &mut Vec<usize>) {
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        if a > b {
            continue;
        }
        let p = idx.argmin(a, b);
        if idx.value(p) >= bound {
            continue;
        }
        out.push(p);
        if p > a {
            stack.push((a, p - 1));
        }
        if p < b {
            stack.push((p + 1, b));
        }
    }
}

fn collect_gt(idx: &RangeIndex, lo: usize, hi: usize, bound: i64, out: &mut Vec<usize>) {
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        if a > b {
            continue;
        }
        let p = idx.argmax(a, b);
        if idx.value(p) <= bound {
            continue;
        }
        out.push(p);
        if p > a {
            stack.push((a, p - 1));
        }
        if p < b {
            stack.push((p + 1, b));
        }
    }
}

/// Builds the distinguishing delayed decomposition of `g`.
///
/// The construction descends from the root: singleton intervals get a single
/// leaf child; module intervals split off their smallest vertex; everything
/// else splits at its local-module boundaries, found through range queries
/// on the difference arrays m(i) / M(i). The sentinel for "no
/// distinguishing vertex" is n for m(i) and -1 for M(i).
pub fn build_distinguishing(g: &OrderedGraph) -> DelayedTree {
    let n = g.n();
    let mut nodes = vec![Node {
        parent: None,
        children: Vec::new(),
        interval: (n > 0).then(|| Interval::new(0, n - 1)),
        quotient: Quotient::default(),
        pos_in_quotient: None,
        label: None,
    }];
    let mut leaf_of_vertex = vec![usize::MAX; n];
    if n == 0 {
        return DelayedTree { nodes, leaf_of_vertex };
    }

    // m(i): smallest vertex adjacent to exactly one of i, i+1 (sentinel n);
    // M(i): largest such vertex (sentinel -1). Symmetric difference of the
    // two sorted adjacency lists, by merging.
    let mut m_arr = vec![n as i64; n.saturating_sub(1)];
    let mut big_m_arr = vec![-1i64; n.saturating_sub(1)];
    for i in 0..n.saturating_sub(1) {
        let (la, lb) = (g.neighbors(i), g.neighbors(i + 1));
        let (mut a, mut b) = (0, 0);
        let push = |w: usize, m_arr: &mut Vec<i64>, big: &mut Vec<i64>| {
            m_arr[i] = m_arr[i].min(w as i64);
            big[i] = big[i].max(w as i64);
        };
        while a < la.len() || b < lb.len() {
            match (la.get(a), lb.get(b)) {
                (Some(&x), Some(&y)) if x == y => {
                    a += 1;
                    b += 1;
                }
                (Some(&x), Some(&y)) if x < y => {
                    push(x, &mut m_arr, &mut big_m_arr);
                    a += 1;
                }
                (Some(_), Some(&y)) => {
                    push(y, &mut m_arr, &mut big_m_arr);
                    b += 1;
                }
                (Some(&x), None) => {
                    push(x, &mut m_arr, &mut big_m_arr);
                    a += 1;
                }
                (None, Some(&y)) => {
                    push(y, &mut m_arr, &mut big_m_arr);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
    }
    let m_idx = RangeIndex::new(m_arr);
    let big_m_idx = RangeIndex::new(big_m_arr);

    // explicit work stack so deep chain decompositions never overflow
    let mut work = vec![0usize];
    while let Some(x) = work.pop() {
        let iv = nodes[x].interval.unwrap();
        let (a, b) = (iv.lo, iv.hi);
        if a == b {
            // singleton: one leaf child, branch stops
            let leaf = nodes.len();
            nodes.push(Node {
                parent: Some(x),
                children: Vec::new(),
                interval: Some(iv),
                quotient: Quotient::default(),
                pos_in_quotient: None,
                label: None,
            });
            nodes[x].children.push(leaf);
            leaf_of_vertex[a] = leaf;
            continue;
        }
        // boundaries j in [a, b-1] where some vertex outside [a, b]
        // distinguishes j from j+1
        let mut js = Vec::new();
        collect_lt(&m_idx, a, b - 1, a as i64, &mut js);
        collect_gt(&big_m_idx, a, b - 1, b as i64, &mut js);
        js.sort_unstable();
        js.dedup();
        let child_ivs: Vec<Interval> = if js.is_empty() {
            // L(x) is a module: split off the smallest vertex
            vec![Interval::new(a, a), Interval::new(a + 1, b)]
        } else {
            let mut ivs = Vec::with_capacity(js.len() + 1);
            let mut lo = a;
            for &j in &js {
                ivs.push(Interval::new(lo, j));
                lo = j + 1;
            }
            ivs.push(Interval::new(lo, b));
            ivs
        };
        let first_child = nodes.len();
        for civ in &child_ivs {
            nodes.push(Node {
                parent: Some(x),
                children: Vec::new(),
                interval: Some(*civ),
                quotient: Quotient::default(),
                pos_in_quotient: None,
                label: None,
            });
        }
        nodes[x].children = (first_child..first_child + child_ivs.len()).collect();
        // process right-to-left so the stack pops children left-to-right;
        // (order does not matter for correctness, only for node numbering)
        for c in (first_child..first_child + child_ivs.len()).rev() {
            work.push(c);
        }
    }

    let mut tree = DelayedTree { nodes, leaf_of_vertex };

    // quotient graphs: vertex sets are the grandchildren; one quotient edge
    // per graph edge at the extended-LCA grandchildren
    let lca = LcaIndex::new(&tree.parent_array()).expect("builder output is a tree");
    let mut triples = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let meet = lca.meet(tree.leaf_of_vertex[u], tree.leaf_of_vertex[v]);
        let (gu, gv) = (
            meet.gu.expect("leaf is at depth >= 2 below the lca"),
            meet.gv.expect("leaf is at depth >= 2 below the lca"),
        );
        triples.push((meet.z, gu, gv));
    }
    tree.install_quotients(triples).expect("builder quotient edges are valid");
    tree
}

/// The ordered graph realized by the tree: an edge between leaves u, v iff
/// the grandchildren of their last common ancestor that contain them are
/// adjacent in that ancestor's quotient. Computed by expanding every
/// quotient edge into the complete bipartite graph between its two leaf
/// intervals, which is linear in the output size.
pub fn realization(t: &DelayedTree) -> Result<OrderedGraph, DecompError> {
    t.validate()?;
    let n = t.n();
    let mut pairs = Vec::new();
    for nd in &t.nodes {
        for &(i, j) in &nd.quotient.edges {
            let a = t.interval(nd.quotient.verts[i]);
            let b = t.interval(nd.quotient.verts[j]);
            for u in a.lo..=a.hi {
                for v in b.lo..=b.hi {
                    pairs.push((u, v));
                }
            }
        }
    }
    OrderedGraph::from_edge_list(n, pairs)
        .map_err(|e| DecompError::MalformedTree(format!("overlapping quotient edges: {e}")))
}

/// Distinguishing property: at every node with at least 3 children, each
/// consecutive child pair has an outside vertex complete to one child's
/// leaves and anticomplete to the other's.
pub fn check_distinguishing(t: &DelayedTree, g: &OrderedGraph) -> bool {
    for nd in &t.nodes {
        if nd.children.len() < 3 {
            continue;
        }
        let x_iv = nd.interval.unwrap();
        for w in nd.children.windows(2) {
            let (i1, i2) = (t.interval(w[0]), t.interval(w[1]));
            let found = (0..g.n()).filter(|&v| !x_iv.contains(v)).any(|v| {
                let d1 = g.degree_in_range(v, i1.lo, i1.hi);
                let d2 = g.degree_in_range(v, i2.lo, i2.hi);
                (d1 == i1.len() && d2 == 0) || (d1 == 0 && d2 == i2.len())
            });
            if !found {
                return false;
            }
        }
    }
    true
}

/// Consistency property: for every node x and every vertex v outside L(x),
/// v is complete or anticomplete to L(y) for every descendant y of x.
/// It suffices to check all nodes y against vertices outside L(parent(y)).
pub fn check_consistency(t: &DelayedTree, g: &OrderedGraph) -> bool {
    for (y, nd) in t.nodes.iter().enumerate() {
        let Some(p) = nd.parent else { continue };
        let p_iv = t.interval(p);
        let iv = t.interval(y);
        for v in 0..g.n() {
            if p_iv.contains(v) {
                continue;
            }
            let d = g.degree_in_range(v, iv.lo, iv.hi);
            if d != 0 && d != iv.len() {
                return false;
            }
        }
    }
    true
}

/// Sibling independence: no quotient edge joins two children of the same
/// node.
pub fn check_sibling_independence(t: &DelayedTree) -> bool {
    for nd in &t.nodes {
        for &(i, j) in &nd.quotient.edges {
            let (a, b) = (nd.quotient.verts[i], nd.quotient.verts[j]);
            if t.nodes[a].parent == t.nodes[b].parent {
                return false;
            }
        }
    }
    true
}

/// Certificate returned by [`find_branching_or_interval_path`].
#[derive(Debug, Clone)]
pub enum TreeCertificate {
    /// A node with b intervals inside its leaf interval such that no single
    /// child's leaf interval meets two of them.
    Branching { node: usize, intervals: Vec<Interval> },
    /// Intervals I_1..I_k and nodes x_1..x_k with L(x_j) containing
    /// I_j ∪ … ∪ I_k and L(x_j) disjoint from I_{j-1}.
    IntervalPath { intervals: Vec<Interval>, nodes: Vec<usize> },
}

fn intersects(a: Interval, b: Interval) -> bool {
    a.lo <= b.hi && b.lo <= a.hi
}

fn contains_iv(outer: Interval, inner: Interval) -> bool {
    outer.lo <= inner.lo && inner.hi <= outer.hi
}

/// Validates a branching certificate against its definition.
pub fn check_branching(t: &DelayedTree, node: usize, ivs: &[Interval], b: usize) -> bool {
    if ivs.len() < b {
        return false;
    }
    let l = t.interval(node);
    if !ivs.iter().all(|&iv| contains_iv(l, iv)) {
        return false;
    }
    t.nodes[node].children.iter().all(|&c| {
        let civ = t.interval(c);
        ivs.iter().filter(|&&iv| intersects(civ, iv)).count() <= 1
    })
}

/// Validates an interval-path certificate against its definition.
pub fn check_interval_path(t: &DelayedTree, ivs: &[Interval], nodes: &[usize], k: usize) -> bool {
    if ivs.len() < k || nodes.len() != ivs.len() {
        return false;
    }
    for j in 0..ivs.len() {
        let l = t.interval(nodes[j]);
        if !ivs[j..].iter().all(|&iv| contains_iv(l, iv)) {
            return false;
        }
        if j > 0 && intersects(l, ivs[j - 1]) {
            return false;
        }
    }
    true
}

/// Finds a `b`-branching node or a `k`-interval path for a family of at
/// least 2(b+2)^k disjoint intervals. The returned certificate is
/// re-validated before returning; failure of the search or the validation
/// is an internal error (it would contradict the underlying dichotomy).
pub fn find_branching_or_interval_path(
    t: &DelayedTree,
    fam: &[Interval],
    b: usize,
    k: usize,
) -> Result<TreeCertificate, DecompError> {
    if b == 0 || k == 0 {
        return Err(DecompError::PreconditionViolated("b and k must be positive".into()));
    }
    let need = 2 * (b + 2).pow(k as u32) as usize;
    if fam.len() < need {
        return Err(DecompError::PreconditionViolated(format!(
            "family of {} intervals, need {need}",
            fam.len()
        )));
    }
    for w in {
        let mut sorted = fam.to_vec();
        sorted.sort_by_key(|iv| iv.lo);
        sorted.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>()
    } {
        if w.0.hi >= w.1.lo {
            return Err(DecompError::PreconditionViolated("intervals overlap".into()));
        }
    }

    let nn = t.nodes.len();
    // w(x): intervals fully inside L(x)
    let mut weight = vec![0usize; nn];
    let mut inside: Vec<Vec<usize>> = vec![Vec::new(); nn]; // interval indices per node
    for (x, nd) in t.nodes.iter().enumerate() {
        if let Some(l) = nd.interval {
            for (i, &iv) in fam.iter().enumerate() {
                if contains_iv(l, iv) {
                    weight[x] += 1;
                    inside[x].push(i);
                }
            }
        }
    }

    // Case 1: a node whose children contain b nonempty-weight subtrees —
    // pick one inside-interval per such child.
    for (x, nd) in t.nodes.iter().enumerate() {
        let heavy_children: Vec<usize> = nd
            .children
            .iter()
            .copied()
            .filter(|&c| weight[c] > 0)
            .collect();
        if heavy_children.len() >= b {
            let ivs: Vec<Interval> = heavy_children
                .iter()
                .take(b)
                .map(|&c| fam[inside[c][0]])
                .collect();
            if check_branching(t, x, &ivs, b) {
                return Ok(TreeCertificate::Branching { node: x, intervals: ivs });
            }
            return Err(DecompError::InternalError("branching certificate failed validation".into()));
        }
    }
    // Case 2: at some node, ≥ 2b-1 intervals lie inside L(x) but inside no
    // single child; every other one of them is child-separated.
    for (x, nd) in t.nodes.iter().enumerate() {
        if nd.children.is_empty() {
            continue;
        }
        let strays: Vec<usize> = inside[x]
            .iter()
            .copied()
            .filter(|&i| nd.children.iter().all(|&c| !contains_iv(t.interval(c), fam[i])))
            .collect();
        if strays.len() >= 2 * b - 1 {
            let mut ivs: Vec<Interval> = strays.iter().map(|&i| fam[i]).collect();
            ivs.sort_by_key(|iv| iv.lo);
            let picked: Vec<Interval> = ivs.iter().step_by(2).take(b).copied().collect();
            if check_branching(t, x, &picked, b) {
                return Ok(TreeCertificate::Branching { node: x, intervals: picked });
            }
            return Err(DecompError::InternalError("stray-interval certificate failed validation".into()));
        }
    }

    // Descent: x_1 = root; x_{i+1} = descendant of x_i with maximum weight
    // among those with w ≤ w(x_i) - 3, closest to the root on ties.
    let mut depth = vec![0usize; nn];
    let mut bfs = vec![t.root()];
    while let Some(x) = bfs.pop() {
        for &c in &t.nodes[x].children {
            depth[c] = depth[x] + 1;
            bfs.push(c);
        }
    }
    let mut chain = vec![t.root()];
    for _ in 1..k {
        let x = *chain.last().unwrap();
        let mut best: Option<usize> = None;
        let mut stack: Vec<usize> = t.nodes[x].children.clone();
        while let Some(y) = stack.pop() {
            stack.extend(t.nodes[y].children.iter().copied());
            if weight[y] + 3 <= weight[x] {
                let better = match best {
                    None => true,
                    Some(cur) => {
                        (weight[y], std::cmp::Reverse(depth[y]))
                            > (weight[cur], std::cmp::Reverse(depth[cur]))
                    }
                };
                if better {
                    best = Some(y);
                }
            }
        }
        let next = best.ok_or_else(|| {
            DecompError::InternalError("descent found no next chain node".into())
        })?;
        chain.push(next);
    }
    // choose I_j inside L(x_j) avoiding L(x_{j+1}); I_k arbitrary inside
    let mut ivs = Vec::with_capacity(k);
    for j in 0..k {
        let candidates = &inside[chain[j]];
        let pick = if j + 1 < k {
            let next_iv = t.interval(chain[j + 1]);
            candidates
                .iter()
                .copied()
                .find(|&i| !intersects(fam[i], next_iv))
        } else {
            candidates.first().copied()
        };
        let i = pick.ok_or_else(|| {
            DecompError::InternalError(format!("no interval for chain position {j}"))
        })?;
        ivs.push(fam[i]);
    }
    if check_interval_path(t, &ivs, &chain, k) {
        Ok(TreeCertificate::IntervalPath { intervals: ivs, nodes: chain })
    } else {
        Err(DecompError::InternalError("interval-path certificate failed validation".into()))
    }
}
