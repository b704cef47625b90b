//! Toolkit for interval minors of ordered graphs.
//!
//! An ordered graph is a graph with a fixed linear order on its vertices;
//! here the vertices are `0..n` and the numeric order is the linear order.
//! The central question is whether the complete graph `K_t` can be obtained
//! as an interval minor, i.e. whether the vertex range can be partitioned
//! into `t` consecutive intervals with at least one edge between every pair.
//!
//! The main entry points:
//!
//! * [`detection::detect_kt`] — polynomial-time approximate detector built
//!   on delayed decompositions and delayed-rank layers.
//! * [`k3::detect_k3`] — exact linear-time decision for `K_3`.
//! * [`oracle`] — brute-force exact ground truth for desk-scale validation.
//! * [`ramsey`], [`reduction`], [`bounds`] — the supporting constructions.

pub mod bounds;
pub mod decomposition;
pub mod detection;
pub mod graph;
pub mod k3;
pub mod labeling;
pub mod oracle;
pub mod ramsey;
pub mod reduction;
pub mod seq;

pub use graph::{
    Color, EdgeColoring, Graph, Interval, IntervalWitness, OrderedGraph, WitnessVariant,
};
