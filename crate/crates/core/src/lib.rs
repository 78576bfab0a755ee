//! Structural node embeddings for pairs of networks and local alignments
//! grown from embedding-derived seed lists.
//!
//! The pipeline: load two graphs, generate random-walk corpora (uniform,
//! node2vec, or struct2vec over the disjoint union), train skip-gram
//! embeddings with negative sampling, rank cross-network node pairs by
//! normalized cosine similarity, mix that seed list with a contextual one,
//! and grow local alignments by seed-and-extend.

pub mod align;
pub mod crosssim;
pub mod embed;
pub mod error;
pub mod eval;
pub mod graph;
pub mod mixer;
pub mod rng;
pub mod structsim;
pub mod synth;
pub mod walk;

pub use align::{build_alignment, conserved_edges, AlignParams, Alignment, Provenance};
pub use crosssim::{
    adjacency_baseline, build_seed_list, normalized_cosine, SeedEntry, SeedList, SourceTag,
};
pub use embed::{
    extract_pairs, sgns_gradients, sgns_pair_loss, train, EmbeddingMatrix, NodeVectors,
    TrainConfig, TrainReport,
};
pub use error::{Error, Result};
pub use eval::{edge_correctness, node_correctness, seed_hit_rate, GroundTruth};
pub use graph::{disjoint_union, Graph, LoadReport, NodeId, Origin, UnionGraph};
pub use mixer::{mix, validate_contextual, AbsentScorePolicy, MixConfig};
pub use structsim::{
    build_context_graph, degree_ring, dtw_cost, structural_distance, DegreeRings,
    LayeredContextGraph, StructuralHierarchy,
};
pub use walk::{node2vec_transition, node2vec_walks, uniform_walks, StrategyTag, WalkCorpus, WalkParams};
