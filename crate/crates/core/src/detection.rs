//! The approximate K_t detector: heavy leaves, witness lifting along the
//! layer hierarchy, and the top-level Yes/No routine.

use thiserror::Error;

use crate::bounds::loglog_f;
use crate::decomposition::{DelayedTree, Label};
use crate::graph::{verify_witness, Interval, IntervalWitness, OrderedGraph, WitnessVariant};
use crate::labeling::{
    g_layers, labeled_decomposition, map_to_root, EdgeClass, LabelError, Layers, TracedGraph,
};

#[derive(Debug, Error)]
pub enum DetectError {
    #[error("extracted vertices are not a clique: {0}")]
    NotAClique(String),
    #[error("witness lift failed: {0}")]
    LiftFailed(String),
    #[error(transparent)]
    Label(#[from] LabelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YesPath {
    Rank,
    HeavyLeaf,
}

#[derive(Debug, Clone)]
pub struct DetectionResult {
    pub answer: bool,
    pub witness: Option<IntervalWitness>,
    pub yes_path: Option<YesPath>,
    /// log₂log₂ of the completeness factor f(t)
    pub factor_report: f64,
}

/// A node qualifies for heaviness if it is non-isolated in its
/// grandparent's quotient: exactly the R/L labels.
fn qualifies(t: &DelayedTree, x: usize) -> bool {
    matches!(t.nodes[x].label, Some(Label::R | Label::L))
}

/// Finds a leaf with at least `h` qualifying ancestors (the leaf itself
/// counts). Returns the leaf and `h` qualifying nodes in root-to-leaf
/// order. Requires labels.
pub fn heavy_leaf(t: &DelayedTree, h: usize) -> Option<(usize, Vec<usize>)> {
    if t.nodes.is_empty() {
        return None;
    }
    let mut count = vec![0usize; t.nodes.len()];
    let mut order: Vec<usize> = vec![t.root()];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        let base = t.nodes[x].parent.map_or(0, |p| count[p]);
        count[x] = base + qualifies(t, x) as usize;
        if t.is_leaf(x) && count[x] >= h {
            let mut chain = Vec::new();
            let mut cur = Some(x);
            while let Some(c) = cur {
                if qualifies(t, c) {
                    chain.push(c);
                }
                cur = t.nodes[c].parent;
            }
            chain.reverse();
            chain.truncate(h);
            return Some((x, chain));
        }
        order.extend(t.nodes[x].children.iter().copied());
    }
    None
}

/// Builds a clique of size (|ancestors|+3)/2 in `g` (the realization of
/// `t`) from a heavy leaf and its qualifying ancestor chain, following the
/// y₀..y_{k−1} construction; adjacency is re-verified before returning.
pub fn extract_clique_from_heavy_leaf(
    t: &DelayedTree,
    g: &OrderedGraph,
    leaf: usize,
    ancestors: &[usize],
) -> Result<Vec<usize>, DetectError> {
    if ancestors.is_empty() {
        return Ok(vec![t.interval(leaf).lo]);
    }
    if ancestors.len() % 2 == 0 {
        return Err(DetectError::NotAClique(format!(
            "ancestor chain length {} is not 2k-3",
            ancestors.len()
        )));
    }
    let k = (ancestors.len() + 3) / 2;
    let mut verts = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let x = ancestors[2 * i];
        let g2 = t
            .p2(x)
            .ok_or_else(|| DetectError::NotAClique(format!("node {x} has no grandparent")))?;
        let q = &t.nodes[g2].quotient;
        let pos = t.nodes[x].pos_in_quotient.unwrap();
        let other = q
            .edges
            .iter()
            .find_map(|&(a, b)| {
                if a == pos {
                    Some(b)
                } else if b == pos {
                    Some(a)
                } else {
                    None
                }
            })
            .ok_or_else(|| DetectError::NotAClique(format!("node {x} isolated in quotient")))?;
        verts.push(t.interval(q.verts[other]).lo);
    }
    verts.push(t.interval(ancestors[2 * k - 4]).lo);
    verts.sort_unstable();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i] == verts[j] || !g.has_edge(verts[i], verts[j]) {
                return Err(DetectError::NotAClique(format!(
                    "vertices {} and {} not adjacent",
                    verts[i], verts[j]
                )));
            }
        }
    }
    Ok(verts)
}

/// Lifts a verified looped witness on `child.graph` to one on the parent
/// graph, following the four-case extension table: classes anchored on R
/// extend on the right (I_{t+1}), classes anchored on L on the left (I₀);
/// monotone-bipartite quotients map through leaf intervals unchanged.
pub fn lift_witness_one_level(
    parent_graph: &OrderedGraph,
    child: &TracedGraph,
    w: &IntervalWitness,
) -> Result<IntervalWitness, DetectError> {
    let prov = child
        .provenance
        .as_ref()
        .ok_or_else(|| DetectError::LiftFailed("child has no provenance".into()))?;
    let n = parent_graph.n();
    let hi_of = |part: Interval| prov.verts[part.hi].leaf_interval.hi;
    let lo_of = |part: Interval| prov.verts[part.lo].leaf_interval.lo;

    let fail = |msg: String| DetectError::LiftFailed(format!("{msg} (class {:?})", prov.class));

    let lifted = match prov.class {
        EdgeClass::MonotoneBipartiteQuotient => {
            // map only: boundaries at each part's last leaf, ends extended
            let mut parts = Vec::with_capacity(w.len());
            let mut lo = 0;
            for (i, &p) in w.parts().iter().enumerate() {
                let hi = if i + 1 == w.len() { n - 1 } else { hi_of(p) };
                if hi < lo {
                    return Err(fail(format!("collapsed part {i}")));
                }
                parts.push(Interval::new(lo, hi));
                lo = hi + 1;
            }
            IntervalWitness::with_loops(parts, w.loop_flags().to_vec())
        }
        EdgeClass::RR | EdgeClass::LR => {
            // extension on the right via I_{t+1}
            let mut parts = Vec::with_capacity(w.len() + 1);
            let mut lo = 0;
            for &p in w.parts() {
                let hi = hi_of(p);
                if hi < lo {
                    return Err(fail("collapsed part".into()));
                }
                parts.push(Interval::new(lo, hi));
                lo = hi + 1;
            }
            let ext = lo <= n - 1;
            let mut flags = w.loop_flags().to_vec();
            match w.variant() {
                WitnessVariant::Looped | WitnessVariant::LeftLazy => {
                    if !ext {
                        return Err(fail("empty right extension".into()));
                    }
                    parts.push(Interval::new(lo, n - 1));
                    flags.push(false);
                }
                WitnessVariant::RightLazy | WitnessVariant::Lazy => {
                    parts.last_mut().unwrap().hi = n - 1;
                    *flags.last_mut().unwrap() = true;
                }
                WitnessVariant::Plain => return Err(fail("plain witness in lift".into())),
            }
            IntervalWitness::with_loops(parts, flags)
        }
        EdgeClass::RL | EdgeClass::LL => {
            // extension on the left via I₀
            let mut parts = Vec::with_capacity(w.len() + 1);
            let mut hi = n - 1;
            for &p in w.parts().iter().rev() {
                let lo = lo_of(p);
                if lo > hi {
                    return Err(fail("collapsed part".into()));
                }
                parts.push(Interval::new(lo, hi));
                hi = lo.wrapping_sub(1);
            }
            parts.reverse();
            let ext = parts[0].lo > 0;
            let mut flags = w.loop_flags().to_vec();
            match w.variant() {
                WitnessVariant::Looped | WitnessVariant::RightLazy => {
                    if !ext {
                        return Err(fail("empty left extension".into()));
                    }
                    parts.insert(0, Interval::new(0, parts[0].lo - 1));
                    flags.insert(0, false);
                }
                WitnessVariant::LeftLazy | WitnessVariant::Lazy => {
                    parts[0].lo = 0;
                    flags[0] = true;
                }
                WitnessVariant::Plain => return Err(fail("plain witness in lift".into())),
            }
            IntervalWitness::with_loops(parts, flags)
        }
    };
    match verify_witness(parent_graph, &lifted) {
        Ok(true) => Ok(lifted),
        Ok(false) => Err(fail(format!(
            "lifted witness does not verify: {} -> {} parts",
            w.len(),
            lifted.len()
        ))),
        Err(e) => Err(fail(format!("malformed lifted witness: {e}"))),
    }
}

/// Walks a provenance chain from a member of 𝒢_{3t−2} up to 𝒢_0, seeding a
/// looped K₁ at the deepest member with an edge and lifting one level at a
/// time; the final witness is downgraded to a plain t-part witness.
pub fn extract_witness_from_rank_chain(
    layers: &Layers,
    t: usize,
) -> Result<IntervalWitness, DetectError> {
    let depth = 3 * t - 2;
    if layers.layers.len() <= depth || layers.layers[depth].is_empty() {
        return Err(DetectError::LiftFailed(format!("layer {depth} is empty")));
    }
    // chain of member indices, layer 0..=depth
    let mut chain = vec![0usize; depth + 1];
    let mut idx = 0;
    for r in (0..=depth).rev() {
        chain[r] = idx;
        idx = match &layers.layers[r][idx].provenance {
            Some(p) => p.parent,
            None => 0,
        };
    }
    let seed_layer = (0..=depth)
        .rev()
        .find(|&r| layers.layers[r][chain[r]].graph.m() > 0)
        .ok_or_else(|| DetectError::LiftFailed("chain is edgeless".into()))?;
    let seed_graph = &layers.layers[seed_layer][chain[seed_layer]].graph;
    let mut w = IntervalWitness::with_loops(
        vec![Interval::new(0, seed_graph.n() - 1)],
        vec![true],
    );
    debug_assert_eq!(verify_witness(seed_graph, &w), Ok(true));
    for r in (1..=seed_layer).rev() {
        let parent = &layers.layers[r - 1][chain[r - 1]].graph;
        w = lift_witness_one_level(parent, &layers.layers[r][chain[r]], &w)?;
    }
    if w.len() < t {
        return Err(DetectError::LiftFailed(format!(
            "chain of depth {depth} yielded only {} parts, need {t}",
            w.len()
        )));
    }
    // merge surplus parts into the last one and drop loops
    let mut parts: Vec<Interval> = w.parts()[..t].to_vec();
    parts[t - 1].hi = w.parts().last().unwrap().hi;
    let out = IntervalWitness::plain(parts);
    let g0 = &layers.layers[0][0].graph;
    match verify_witness(g0, &out) {
        Ok(true) => Ok(out),
        _ => Err(DetectError::LiftFailed("merged witness does not verify".into())),
    }
}

/// Turns a sorted clique v₁<…<v_t of `g` into a t-part witness: a boundary
/// immediately after each vᵢ, the last part absorbing the tail.
fn clique_to_witness(g: &OrderedGraph, verts: &[usize]) -> Result<IntervalWitness, DetectError> {
    let t = verts.len();
    let mut parts = Vec::with_capacity(t);
    let mut lo = 0;
    for (i, &v) in verts.iter().enumerate() {
        let hi = if i + 1 == t { g.n() - 1 } else { v };
        parts.push(Interval::new(lo, hi));
        lo = hi + 1;
    }
    let w = IntervalWitness::plain(parts);
    match verify_witness(g, &w) {
        Ok(true) => Ok(w),
        _ => Err(DetectError::NotAClique("clique witness does not verify".into())),
    }
}

/// The approximate detector: Yes means a verified K_t witness on `g`;
/// No means g has no K_{f(t)} interval minor.
pub fn detect_kt(g: &OrderedGraph, t: usize) -> DetectionResult {
    assert!(t >= 1);
    let factor_report = loglog_f(t);
    let no = DetectionResult {
        answer: false,
        witness: None,
        yes_path: None,
        factor_report,
    };
    let depth = 3 * t - 2;
    let layers = g_layers(g, depth).expect("layer construction is total on valid graphs");
    if !layers.layers[depth].is_empty() {
        let w = extract_witness_from_rank_chain(&layers, t)
            .expect("rank chain extraction is guaranteed by the lifting lemma");
        return DetectionResult {
            answer: true,
            witness: Some(w),
            yes_path: Some(YesPath::Rank),
            factor_report,
        };
    }
    let h = (2 * t).saturating_sub(3);
    for (r, layer) in layers.layers.iter().enumerate() {
        for (idx, member) in layer.iter().enumerate() {
            if member.graph.n() == 0 {
                continue;
            }
            let tree = labeled_decomposition(&member.graph);
            let Some((leaf, chain)) = heavy_leaf(&tree, h) else {
                continue;
            };
            let clique = extract_clique_from_heavy_leaf(&tree, &member.graph, leaf, &chain)
                .expect("heavy leaf yields a clique");
            let mut mapped: Vec<usize> =
                clique.iter().map(|&v| map_to_root(&layers, r, idx, v)).collect();
            mapped.sort_unstable();
            let w = clique_to_witness(g, &mapped).expect("mapped clique yields a witness");
            return DetectionResult {
                answer: true,
                witness: Some(w),
                yes_path: Some(YesPath::HeavyLeaf),
                factor_report,
            };
        }
    }
    no
}
