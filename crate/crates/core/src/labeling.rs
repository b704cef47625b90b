//! Node labels and types, refined quotient graphs, the layer sequence
//! 𝒢_0, 𝒢_1, … and the delayed rank.

use std::fmt::Write as _;

use thiserror::Error;

use crate::decomposition::{build_distinguishing, DelayedTree, Label};
use crate::graph::{Interval, OrderedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("internal error: {0}")]
    InternalError(String),
}

/// Fills in the labels of every node: ∅ without a grandparent, R/L from the
/// side of an adjacent cousin in the grandparent's quotient, O otherwise;
/// O-labelled non-first children of ≥3-child nodes are refined to O_L/O_R
/// from their predecessor's label.
pub fn label_tree(t: &mut DelayedTree) {
    for x in 0..t.nodes.len() {
        let label = match (t.p2(x), t.nodes[x].pos_in_quotient) {
            (Some(g), Some(pos)) => {
                let q = &t.nodes[g].quotient;
                let mut has_right = false;
                let mut has_left = false;
                for &(i, j) in &q.edges {
                    if i == pos {
                        has_right = true;
                    }
                    if j == pos {
                        has_left = true;
                    }
                }
                if has_right {
                    Label::R
                } else if has_left {
                    Label::L
                } else {
                    Label::O
                }
            }
            _ => Label::Empty,
        };
        t.nodes[x].label = Some(label);
    }
    // O refinement, in child order so a refined predecessor is visible
    for x in 0..t.nodes.len() {
        if t.nodes[x].children.len() < 3 {
            continue;
        }
        for ci in 1..t.nodes[x].children.len() {
            let c = t.nodes[x].children[ci];
            if t.nodes[c].label != Some(Label::O) {
                continue;
            }
            let pred = t.nodes[x].children[ci - 1];
            match t.nodes[pred].label {
                Some(Label::L) => t.nodes[c].label = Some(Label::OL),
                Some(Label::R) => t.nodes[c].label = Some(Label::OR),
                // consecutive O children cannot happen in a distinguishing
                // decomposition; leave the coarse label for foreign trees
                _ => {}
            }
        }
    }
}

/// The type of a node is the label of its parent.
pub fn node_type(t: &DelayedTree, x: usize) -> Option<Label> {
    t.nodes[x].parent.and_then(|p| t.nodes[p].label)
}

/// Edge class of a refined quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    MonotoneBipartiteQuotient,
    RR,
    RL,
    LR,
    LL,
}

impl EdgeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeClass::MonotoneBipartiteQuotient => "mbq",
            EdgeClass::RR => "R'R'",
            EdgeClass::RL => "R'L'",
            EdgeClass::LR => "L'R'",
            EdgeClass::LL => "L'L'",
        }
    }
}

/// Vertex type inside a non-monotone-bipartite quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VType {
    R,
    L,
    OR,
    OL,
}

impl VType {
    fn right_class(self) -> bool {
        matches!(self, VType::R | VType::OR)
    }
}

/// Per-vertex provenance of a layer member.
#[derive(Debug, Clone)]
pub struct VertexRecord {
    /// decomposition-tree node of the parent member this vertex came from
    pub node: usize,
    /// leaf interval of that node, in parent vertex coordinates
    pub leaf_interval: Interval,
    /// type, absent for vertices of a monotone-bipartite quotient
    pub vtype: Option<VType>,
}

/// Provenance of a layer member (absent for the r = 0 member).
#[derive(Debug, Clone)]
pub struct Provenance {
    /// index of the parent member in the previous layer
    pub parent: usize,
    /// the quotient node x in the parent's decomposition tree
    pub node: usize,
    pub class: EdgeClass,
    pub verts: Vec<VertexRecord>,
    /// quotient vertices dropped on each side by the anchor-span trimming
    pub removed_left: usize,
    pub removed_right: usize,
    /// quotient vertices dropped by the first-child-O removal
    pub removed_first_child_block: usize,
}

/// A member of a layer 𝒢_r: an ordered graph plus how it was derived from
/// its parent member.
#[derive(Debug, Clone)]
pub struct TracedGraph {
    pub graph: OrderedGraph,
    pub r: usize,
    pub provenance: Option<Provenance>,
}

impl TracedGraph {
    pub fn root(g: OrderedGraph) -> Self {
        TracedGraph { graph: g, r: 0, provenance: None }
    }
}

/// The labeled distinguishing decomposition of a member's graph.
pub fn labeled_decomposition(g: &OrderedGraph) -> DelayedTree {
    let mut t = build_distinguishing(g);
    label_tree(&mut t);
    t
}

/// All refined quotients of `h`: empty iff h.graph is monotone bipartite;
/// otherwise one member per monotone-bipartite quotient of the
/// decomposition plus four per non-monotone-bipartite quotient (trimmed
/// graphs may be empty and are retained).
pub fn refined_quotients(
    h: &TracedGraph,
    parent_idx: usize,
) -> Result<Vec<TracedGraph>, LabelError> {
    if h.graph.is_monotone_bipartite() {
        return Ok(Vec::new());
    }
    let t = labeled_decomposition(&h.graph);
    let mut out = Vec::new();
    for x in 0..t.nodes.len() {
        let q = &t.nodes[x].quotient;
        if q.verts.is_empty() {
            continue;
        }
        let qg = q.as_ordered_graph();
        if qg.is_monotone_bipartite() {
            let verts = q
                .verts
                .iter()
                .map(|&nd| VertexRecord {
                    node: nd,
                    leaf_interval: t.interval(nd),
                    vtype: None,
                })
                .collect();
            out.push(TracedGraph {
                graph: qg,
                r: h.r + 1,
                provenance: Some(Provenance {
                    parent: parent_idx,
                    node: x,
                    class: EdgeClass::MonotoneBipartiteQuotient,
                    verts,
                    removed_left: 0,
                    removed_right: 0,
                    removed_first_child_block: 0,
                }),
            });
            continue;
        }
        // non-monotone-bipartite quotient: edges exist only between
        // cousins, so x must have at least 3 children (2-child quotients
        // are always monotone bipartite)
        if t.nodes[x].children.len() < 3 {
            return Err(LabelError::InternalError(format!(
                "non-monotone-bipartite quotient at a {}-child node",
                t.nodes[x].children.len()
            )));
        }
        // drop the first child's children when the first child is labelled O
        let first_child = t.nodes[x].children[0];
        let drop_first = t.nodes[first_child].label == Some(Label::O);
        let keep: Vec<usize> = (0..q.verts.len())
            .filter(|&p| !drop_first || t.nodes[q.verts[p]].parent != Some(first_child))
            .collect();
        let removed_first_child_block = q.verts.len() - keep.len();
        let types: Vec<VType> = keep
            .iter()
            .map(|&p| match node_type(&t, q.verts[p]) {
                Some(Label::R) => Ok(VType::R),
                Some(Label::L) => Ok(VType::L),
                Some(Label::OR) => Ok(VType::OR),
                Some(Label::OL) => Ok(VType::OL),
                other => Err(LabelError::InternalError(format!(
                    "surviving quotient vertex with type {other:?}"
                ))),
            })
            .collect::<Result<_, _>>()?;
        // classify surviving edges; endpoints are positions into `keep`
        let mut pos_in_keep = vec![usize::MAX; q.verts.len()];
        for (i, &p) in keep.iter().enumerate() {
            pos_in_keep[p] = i;
        }
        for (class, left_right, right_right) in [
            (EdgeClass::RR, true, true),
            (EdgeClass::RL, true, false),
            (EdgeClass::LR, false, true),
            (EdgeClass::LL, false, false),
        ] {
            let class_edges: Vec<(usize, usize)> = q
                .edges
                .iter()
                .filter(|&&(i, j)| pos_in_keep[i] != usize::MAX && pos_in_keep[j] != usize::MAX)
                .map(|&(i, j)| (pos_in_keep[i], pos_in_keep[j]))
                .filter(|&(i, j)| {
                    types[i].right_class() == left_right && types[j].right_class() == right_right
                })
                .collect();
            // trim to the span of the anchor type: R for *R' classes,
            // L for *L' classes (the second letter)
            let anchor = if right_right { VType::R } else { VType::L };
            let anchored: Vec<usize> = (0..keep.len()).filter(|&i| types[i] == anchor).collect();
            let (lo, hi, removed_left, removed_right) = match (anchored.first(), anchored.last()) {
                (Some(&a), Some(&b)) => (a, b, a, keep.len() - 1 - b),
                _ => (1, 0, keep.len(), 0), // no anchor: empty graph
            };
            let span: Vec<usize> = (lo..=hi.max(lo).min(keep.len().saturating_sub(1)))
                .filter(|_| lo <= hi)
                .collect();
            let nn = span.len();
            let graph = OrderedGraph::from_edge_list(
                nn,
                class_edges
                    .iter()
                    .filter(|&&(i, j)| lo <= i && j <= hi)
                    .map(|&(i, j)| (i - lo, j - lo)),
            )
            .expect("classified edges are canonical");
            let verts = span
                .iter()
                .map(|&i| {
                    let nd = q.verts[keep[i]];
                    VertexRecord {
                        node: nd,
                        leaf_interval: t.interval(nd),
                        vtype: Some(types[i]),
                    }
                })
                .collect();
            out.push(TracedGraph {
                graph,
                r: h.r + 1,
                provenance: Some(Provenance {
                    parent: parent_idx,
                    node: x,
                    class,
                    verts,
                    removed_left,
                    removed_right,
                    removed_first_child_block,
                }),
            });
        }
    }
    Ok(out)
}

/// The layers 𝒢_0 .. 𝒢_{r_max}. Expansion stops as soon as a layer comes
/// out empty; the remaining layers are empty.
pub struct Layers {
    pub layers: Vec<Vec<TracedGraph>>,
}

impl Layers {
    /// One line per member: "r idx n m class parent_idx".
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (r, layer) in self.layers.iter().enumerate() {
            for (idx, m) in layer.iter().enumerate() {
                let (class, parent) = match &m.provenance {
                    Some(p) => (p.class.as_str(), p.parent.to_string()),
                    None => ("-", "-".to_string()),
                };
                let _ = writeln!(
                    s,
                    "{r} {idx} {} {} {class} {parent}",
                    m.graph.n(),
                    m.graph.m()
                );
            }
        }
        s
    }
}

pub fn g_layers(g: &OrderedGraph, r_max: usize) -> Result<Layers, LabelError> {
    let mut layers = vec![vec![TracedGraph::root(g.clone())]];
    for _ in 0..r_max {
        let prev = layers.last().unwrap();
        let mut next = Vec::new();
        for (idx, h) in prev.iter().enumerate() {
            next.extend(refined_quotients(h, idx)?);
        }
        let empty = next.is_empty();
        layers.push(next);
        if empty {
            break;
        }
    }
    while layers.len() <= r_max {
        layers.push(Vec::new());
    }
    Ok(Layers { layers })
}

/// Delayed rank of g, capped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Exact(usize),
    AtLeast(usize),
}

pub fn delayed_rank(g: &OrderedGraph, cap: usize) -> Result<Rank, LabelError> {
    let ls = g_layers(g, cap + 1)?;
    if !ls.layers[cap + 1].is_empty() {
        return Ok(Rank::AtLeast(cap));
    }
    let r = (0..=cap).rev().find(|&r| !ls.layers[r].is_empty()).unwrap_or(0);
    Ok(Rank::Exact(r))
}

/// The order-preserving map from a member's vertices into the original
/// graph's vertices: each vertex goes to the leftmost leaf of its interval,
/// composed down the provenance chain.
pub fn map_to_root(layers: &Layers, r: usize, idx: usize, v: usize) -> usize {
    let mut r = r;
    let mut idx = idx;
    let mut v = v;
    while r > 0 {
        let m = &layers.layers[r][idx];
        let p = m.provenance.as_ref().expect("r > 0 member has provenance");
        v = p.verts[v].leaf_interval.lo;
        idx = p.parent;
        r -= 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{monotone_biclique, ordered_clique, ordered_path, random_gnm, XorShift64};

    #[test]
    fn p3_labels() {
        let g = ordered_path(3);
        let t = labeled_decomposition(&g);
        let root = &t.nodes[t.root()];
        // root and its children carry the empty label
        assert_eq!(root.label, Some(Label::Empty));
        for &c in &root.children {
            assert_eq!(t.nodes[c].label, Some(Label::Empty));
        }
        let y2 = root.children[1];
        let (n11, n22) = (t.nodes[y2].children[0], t.nodes[y2].children[1]);
        // [1,1] has the smaller adjacent cousin leaf 0 -> L; [2,2] is
        // isolated in the root quotient -> O
        assert_eq!(t.nodes[n11].label, Some(Label::L));
        assert_eq!(t.nodes[n22].label, Some(Label::O));
    }

    #[test]
    fn k4_labels() {
        let g = ordered_clique(4);
        let t = labeled_decomposition(&g);
        // node [2,3] is a grandchild of the root with leaf 0 as smaller
        // adjacent cousin -> L
        let root = t.root();
        let y2 = t.nodes[root].children[1];
        let n23 = t.nodes[y2].children[1];
        assert_eq!(t.interval(n23), Interval::new(2, 3));
        assert_eq!(t.nodes[n23].label, Some(Label::L));
    }

    #[test]
    fn no_consecutive_o_children() {
        let mut rng = XorShift64::new(61);
        for _ in 0..200 {
            let n = 2 + rng.next_below(40) as usize;
            let m = rng.next_below((n * (n - 1) / 2 + 1).min(3 * n) as u64) as usize;
            let g = random_gnm(n, m, rng.next_u64()).unwrap();
            let t = labeled_decomposition(&g);
            for nd in &t.nodes {
                if nd.children.len() < 3 {
                    continue;
                }
                for w in nd.children.windows(2) {
                    let both_o = [w[0], w[1]].iter().all(|&c| {
                        matches!(t.nodes[c].label, Some(Label::O | Label::OL | Label::OR))
                    });
                    assert!(!both_o, "consecutive O children");
                }
            }
        }
    }

    #[test]
    fn refined_quotients_examples() {
        // monotone bipartite -> no refined quotients
        let mb = monotone_biclique(3);
        assert!(refined_quotients(&TracedGraph::root(mb), 0).unwrap().is_empty());

        // P3: both quotients monotone bipartite
        let qs = refined_quotients(&TracedGraph::root(ordered_path(3)), 0).unwrap();
        assert_eq!(qs.len(), 2);
        assert!(qs.iter().all(|q| {
            q.provenance.as_ref().unwrap().class == EdgeClass::MonotoneBipartiteQuotient
        }));
        assert!(qs.iter().all(|q| q.graph.is_monotone_bipartite()));

        // ordered K4: every quotient is a left star, hence monotone
        // bipartite; the chain decomposition has three quotient graphs
        let qs = refined_quotients(&TracedGraph::root(ordered_clique(4)), 0).unwrap();
        assert_eq!(qs.len(), 3);
        assert!(qs.iter().all(|q| q.graph.is_monotone_bipartite()));
    }

    #[test]
    fn layer_examples() {
        let ls = g_layers(&monotone_biclique(2), 2).unwrap();
        assert_eq!(ls.layers.len(), 3);
        assert_eq!(ls.layers[0].len(), 1);
        assert!(ls.layers[1].is_empty());
        assert!(ls.layers[2].is_empty());

        let ls = g_layers(&ordered_path(3), 3).unwrap();
        assert_eq!(ls.layers[1].len(), 2);
        assert!(ls.layers[2].is_empty());

        let ls = g_layers(&ordered_clique(4), 2).unwrap();
        assert!(!ls.layers[1].is_empty());
        assert!(ls.layers[2].is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(delayed_rank(&monotone_biclique(4), 5).unwrap(), Rank::Exact(0));
        assert_eq!(delayed_rank(&ordered_path(3), 5).unwrap(), Rank::Exact(1));
        // K2 is monotone bipartite itself
        assert_eq!(delayed_rank(&ordered_clique(2), 5).unwrap(), Rank::Exact(0));
        for n in 3..=7 {
            assert_eq!(delayed_rank(&ordered_clique(n), 5).unwrap(), Rank::Exact(1));
        }
        assert_eq!(
            delayed_rank(&OrderedGraph::from_edge_list(5, []).unwrap(), 3).unwrap(),
            Rank::Exact(0)
        );
    }

    fn check_subgraph_maps(g: &OrderedGraph, ls: &Layers) {
        for (r, layer) in ls.layers.iter().enumerate().skip(1) {
            for (idx, m) in layer.iter().enumerate() {
                let verts: Vec<usize> =
                    (0..m.graph.n()).map(|v| map_to_root(ls, r, idx, v)).collect();
                // strictly order-preserving
                for w in verts.windows(2) {
                    assert!(w[0] < w[1], "map not strictly increasing");
                }
                for &(u, v) in m.graph.edges() {
                    assert!(
                        g.has_edge(verts[u], verts[v]),
                        "edge ({u},{v}) in layer {r} does not map to an edge"
                    );
                }
            }
        }
    }

    #[test]
    fn subgraph_lemma_exhaustive_small() {
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = OrderedGraph::from_edge_list(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                let ls = g_layers(&g, 8).unwrap();
                check_subgraph_maps(&g, &ls);
            }
        }
    }

    #[test]
    fn size_bounds_random() {
        let mut rng = XorShift64::new(83);
        for _ in 0..40 {
            let n = 2 + rng.next_below(60) as usize;
            let maxm = n * (n - 1) / 2;
            let m = rng.next_below((maxm + 1).min(4 * n) as u64) as usize;
            let g = random_gnm(n, m, rng.next_u64()).unwrap();
            let ls = g_layers(&g, 10).unwrap();
            check_subgraph_maps(&g, &ls);
            for layer in ls.layers.iter().skip(1) {
                let edges: usize = layer.iter().map(|t| t.graph.m()).sum();
                assert!(edges <= g.m());
                assert!(layer.len() <= 4 * g.m().max(1) * n);
            }
        }
    }

    #[test]
    fn trimmed_members_have_anchored_ends() {
        let mut rng = XorShift64::new(97);
        for _ in 0..100 {
            let n = 2 + rng.next_below(40) as usize;
            let maxm = n * (n - 1) / 2;
            let m = rng.next_below((maxm + 1).min(3 * n) as u64) as usize;
            let g = random_gnm(n, m, rng.next_u64()).unwrap();
            let ls = g_layers(&g, 6).unwrap();
            for layer in ls.layers.iter().skip(1) {
                for t in layer {
                    let p = t.provenance.as_ref().unwrap();
                    if p.class == EdgeClass::MonotoneBipartiteQuotient || t.graph.n() == 0 {
                        continue;
                    }
                    let anchor = match p.class {
                        EdgeClass::RR | EdgeClass::LR => VType::R,
                        _ => VType::L,
                    };
                    assert_eq!(p.verts.first().unwrap().vtype, Some(anchor));
                    assert_eq!(p.verts.last().unwrap().vtype, Some(anchor));
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let ls = g_layers(&ordered_path(3), 2).unwrap();
        let d = ls.dump();
        assert!(d.starts_with("0 0 3 2 - -"));
        assert!(d.contains("mbq"));
    }
}
