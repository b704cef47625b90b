//! The Clique → Complete Interval Minor reduction: interleave a universal
//! vertex between consecutive vertices of g and ask for t = n−1+k parts.

use thiserror::Error;

use crate::graph::{Graph, IntervalWitness, OrderedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("k must satisfy 1 <= k <= n, got k={k} n={n}")]
    BadK { k: usize, n: usize },
    #[error("decoded vertices are not a clique: {0}")]
    NotAClique(String),
}

/// Ĝ on 2n−1 vertices v₁,u₁,v₂,…,u_{n−1},v_n: the vᵢ (even positions)
/// copy g in input label order, every uⱼ (odd positions) is universal.
pub fn build_hat(g: &Graph, k: usize) -> Result<(OrderedGraph, usize), ReductionError> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(ReductionError::BadK { k, n });
    }
    let nn = 2 * n - 1;
    let mut edges = Vec::new();
    for a in 0..nn {
        for b in a + 1..nn {
            if a % 2 == 1 || b % 2 == 1 {
                edges.push((a, b));
            }
        }
    }
    edges.extend(g.edges().iter().map(|&(u, v)| (2 * u, 2 * v)));
    let hat = OrderedGraph::from_edge_list(nn, edges).expect("construction is canonical");
    Ok((hat, n - 1 + k))
}

/// Reads a k-clique of g off a verified (n−1+k)-part witness on Ĝ: parts
/// avoiding every universal vertex are v-singletons, and at least k of
/// them exist; the result is re-verified as a clique in g.
pub fn decode_witness(
    g: &Graph,
    k: usize,
    w: &IntervalWitness,
) -> Result<Vec<usize>, ReductionError> {
    let mut verts: Vec<usize> = w
        .parts()
        .iter()
        .filter(|p| p.lo == p.hi && p.lo % 2 == 0)
        .map(|p| p.lo / 2)
        .collect();
    if verts.len() < k {
        return Err(ReductionError::NotAClique(format!(
            "only {} singleton v-parts, need {k}",
            verts.len()
        )));
    }
    verts.truncate(k);
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if !g.has_edge(verts[i], verts[j]) {
                return Err(ReductionError::NotAClique(format!(
                    "{} and {} not adjacent in g",
                    verts[i], verts[j]
                )));
            }
        }
    }
    Ok(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_has_complete_kim, exact_max_clique};

    #[test]
    fn hat_examples() {
        let p3 = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        let (hat, t) = build_hat(&p3, 2).unwrap();
        assert_eq!(hat.n(), 5);
        assert_eq!(t, 4);
        assert!(hat.has_edge(0, 2) && hat.has_edge(2, 4) && !hat.has_edge(0, 4));
        for u in [1usize, 3] {
            for x in 0..5 {
                assert!(x == u || hat.has_edge(u.min(x), u.max(x)));
            }
        }

        let k1 = Graph::from_edge_list(1, []).unwrap();
        let (hat, t) = build_hat(&k1, 1).unwrap();
        assert_eq!((hat.n(), hat.m(), t), (1, 0, 1));

        let tri = Graph::from_edge_list(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let (hat, t) = build_hat(&tri, 3).unwrap();
        assert_eq!((hat.n(), t), (5, 5));
        assert_eq!(hat.m(), 10); // K5
        assert!(exact_has_complete_kim(&hat, t).unwrap().is_some());

        assert!(build_hat(&tri, 0).is_err());
        assert!(build_hat(&tri, 4).is_err());
    }

    #[test]
    fn decode_examples() {
        let p3 = Graph::from_edge_list(3, [(0, 1), (1, 2)]).unwrap();
        let (hat, t) = build_hat(&p3, 2).unwrap();
        let w = exact_has_complete_kim(&hat, t).unwrap().expect("P3 has an edge");
        let verts = decode_witness(&p3, 2, &w).unwrap();
        assert_eq!(verts.len(), 2);
        assert!(p3.has_edge(verts[0], verts[1]));

        let tri = Graph::from_edge_list(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let (hat, t) = build_hat(&tri, 3).unwrap();
        let w = exact_has_complete_kim(&hat, t).unwrap().unwrap();
        assert_eq!(decode_witness(&tri, 3, &w).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn equivalence_exhaustive_small() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            for mask in 0u32..1 << pairs.len() {
                let g = Graph::from_edge_list(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                )
                .unwrap();
                let omega = exact_max_clique(&g).unwrap();
                for k in 1..=n {
                    let (hat, t) = build_hat(&g, k).unwrap();
                    let found = exact_has_complete_kim(&hat, t).unwrap();
                    assert_eq!(omega >= k, found.is_some(), "n={n} mask={mask} k={k}");
                    if let Some(w) = found {
                        let verts = decode_witness(&g, k, &w).unwrap();
                        assert_eq!(verts.len(), k);
                    }
                }
            }
        }
    }
}
