//! Random-walk corpora: fixed-length unbiased walks and second-order
//! biased walks with return/in-out parameters.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng;

/// Which walk strategy produced a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyTag {
    Uniform,
    Node2vec,
    Struct2vec,
}

/// Walk generation parameters. `return_param`/`inout_param` only bias the
/// second-order strategy; the uniform strategy ignores them.
#[derive(Debug, Clone)]
pub struct WalkParams {
    pub walks_per_node: usize,
    pub walk_length: usize,
    pub return_param: f64,
    pub inout_param: f64,
    pub rng_seed: u64,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams {
            walks_per_node: 10,
            walk_length: 80,
            return_param: 1.0,
            inout_param: 1.0,
            rng_seed: 42,
        }
    }
}

impl WalkParams {
    pub fn validate(&self) -> Result<()> {
        if self.walks_per_node < 1 {
            return Err(Error::Domain("walks_per_node must be >= 1".into()));
        }
        if self.walk_length < 1 {
            return Err(Error::Domain("walk_length must be >= 1".into()));
        }
        if self.return_param.is_nan() || self.return_param <= 0.0 {
            return Err(Error::Domain("return_param must be > 0".into()));
        }
        if self.inout_param.is_nan() || self.inout_param <= 0.0 {
            return Err(Error::Domain("inout_param must be > 0".into()));
        }
        Ok(())
    }
}

/// An ordered collection of node-id walks over one source graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCorpus {
    pub walks: Vec<Vec<NodeId>>,
    pub source_graph_size: usize,
    pub strategy: StrategyTag,
}

impl WalkCorpus {
    /// Checks corpus invariants: id bounds always; step adjacency and the
    /// degree-0 singleton rule when a graph is supplied (uniform/node2vec).
    pub fn validate(&self, graph: Option<&Graph>) -> Result<()> {
        for walk in &self.walks {
            if walk.is_empty() {
                return Err(Error::Validation("empty walk".into()));
            }
            for &v in walk {
                if v as usize >= self.source_graph_size {
                    return Err(Error::Validation(format!("walk id {v} out of range")));
                }
            }
            if let Some(g) = graph {
                if self.strategy != StrategyTag::Struct2vec {
                    for win in walk.windows(2) {
                        if !g.has_edge(win[0], win[1]) {
                            return Err(Error::Validation(format!(
                                "non-adjacent step {} -> {}",
                                win[0], win[1]
                            )));
                        }
                    }
                    if g.degree(walk[0])? == 0 && walk.len() != 1 {
                        return Err(Error::Validation("walk from isolated node longer than 1".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// One walk per line, space-separated external names.
    pub fn write<W: Write>(&self, names: &[String], w: &mut W) -> std::io::Result<()> {
        for walk in &self.walks {
            let line: Vec<&str> = walk.iter().map(|&v| names[v as usize].as_str()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Samples an index from unnormalized non-negative weights.
pub(crate) fn sample_weighted<R: Rng>(rng: &mut R, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut r = rng.gen::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        r -= w;
        if r < 0.0 {
            return i;
        }
    }
    weights.len() - 1
}

/// Fixed-length unbiased walks: exactly `walks_per_node` walks per start
/// node, each step uniform over neighbors; walks from isolated nodes are
/// singletons. Deterministic given `rng_seed`, regardless of parallelism.
pub fn uniform_walks(g: &Graph, params: &WalkParams) -> Result<WalkCorpus> {
    params.validate()?;
    let n = g.node_count();
    let r = params.walks_per_node;
    let walks: Vec<Vec<NodeId>> = (0..n * r)
        .into_par_iter()
        .map(|i| {
            let start = (i / r) as NodeId;
            let widx = (i % r) as u64;
            let mut rng = rng::stream(params.rng_seed, start as u64, widx);
            let mut walk = Vec::with_capacity(params.walk_length);
            walk.push(start);
            let mut cur = start;
            for _ in 1..params.walk_length {
                let nbrs = g.neighbors(cur);
                if nbrs.is_empty() {
                    break;
                }
                cur = nbrs[rng.gen_range(0..nbrs.len())];
                walk.push(cur);
            }
            walk
        })
        .collect();
    Ok(WalkCorpus {
        walks,
        source_graph_size: n,
        strategy: StrategyTag::Uniform,
    })
}

/// Transition distribution of the second-order biased walk standing at
/// `cur` having arrived from `prev`: unnormalized weight 1/p for stepping
/// back, 1 for neighbors of `prev`, 1/q otherwise. Returned probabilities
/// align with `g.neighbors(cur)` and sum to 1.
pub fn node2vec_transition(g: &Graph, prev: NodeId, cur: NodeId, p: f64, q: f64) -> Result<Vec<f64>> {
    if p.is_nan() || p <= 0.0 || q.is_nan() || q <= 0.0 {
        return Err(Error::Domain("p and q must be > 0".into()));
    }
    if !g.has_edge(cur, prev) {
        return Err(Error::Domain(format!("prev {prev} not adjacent to cur {cur}")));
    }
    let weights = biased_weights(g, prev, cur, p, q);
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

fn biased_weights(g: &Graph, prev: NodeId, cur: NodeId, p: f64, q: f64) -> Vec<f64> {
    g.neighbors(cur)
        .iter()
        .map(|&x| {
            if x == prev {
                1.0 / p
            } else if g.has_edge(prev, x) {
                1.0
            } else {
                1.0 / q
            }
        })
        .collect()
}

/// Second-order biased walks: first step uniform, later steps drawn from
/// `node2vec_transition`. Same determinism contract as `uniform_walks`.
pub fn node2vec_walks(g: &Graph, params: &WalkParams) -> Result<WalkCorpus> {
    params.validate()?;
    let n = g.node_count();
    let r = params.walks_per_node;
    let (p, q) = (params.return_param, params.inout_param);
    let walks: Vec<Vec<NodeId>> = (0..n * r)
        .into_par_iter()
        .map(|i| {
            let start = (i / r) as NodeId;
            let widx = (i % r) as u64;
            let mut rng = rng::stream(params.rng_seed, start as u64, widx);
            let mut walk = Vec::with_capacity(params.walk_length);
            walk.push(start);
            let nbrs = g.neighbors(start);
            if nbrs.is_empty() || params.walk_length == 1 {
                return walk;
            }
            let mut cur = nbrs[rng.gen_range(0..nbrs.len())];
            walk.push(cur);
            let mut prev = start;
            for _ in 2..params.walk_length {
                let weights = biased_weights(g, prev, cur, p, q);
                let next = g.neighbors(cur)[sample_weighted(&mut rng, &weights)];
                prev = cur;
                cur = next;
                walk.push(cur);
            }
            walk
        })
        .collect();
    Ok(WalkCorpus {
        walks,
        source_graph_size: n,
        strategy: StrategyTag::Node2vec,
    })
}
