//! Core algorithms for contraction sequences and width parameters of small
//! graphs: trigraphs and their four width functionals, clique-width
//! expressions, GF(2) cut-rank and branch decompositions, constructive
//! conversions between the three certificate kinds, and exact #H-coloring
//! counters driven by contraction sequences.
//!
//! The crate is `no_std` (with `alloc`) and purely computational; file
//! formats and the command-line front end live in the companion `twwkit`
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cwexpr;
pub mod graph;
pub mod homcount;
pub mod rankwidth;
pub mod transform;
pub mod trigraph;

pub use graph::{GenKind, Graph, GraphError, LabelledGraph};
pub use trigraph::{ContractionSequence, SequenceError, Trigraph, WidthKind};
