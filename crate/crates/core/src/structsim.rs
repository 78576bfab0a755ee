//! Structural similarity in four steps: degree-ring fingerprints per node,
//! a DTW-based distance hierarchy over node pairs, a weighted multilayer
//! context graph, and biased walks on it.
//!
//! Layer k of the context graph connects node pairs whose ring sequences
//! are comparable up to distance k; intra-layer weight exp(-f(u,v,k)) puts
//! structurally identical pairs at weight 1. The distance formulas (ring
//! cost max/min - 1, cumulative DTW, log-Gamma inter-layer weights) follow
//! the standard structural-identity construction.

use std::collections::VecDeque;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, UnionGraph};
use crate::rng;
use crate::walk::{StrategyTag, WalkCorpus, WalkParams};

/// Ordered degree lists per BFS ring around one root node. Level k holds
/// the ascending degrees of nodes at shortest-path distance exactly k;
/// levels stop at the root's eccentricity (or the requested cap).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRings {
    levels: Vec<Vec<u32>>,
}

impl DegreeRings {
    /// Degree list at distance `k`, `None` beyond the last nonempty ring.
    pub fn level(&self, k: usize) -> Option<&[u32]> {
        self.levels.get(k).map(|v| v.as_slice())
    }

    /// Number of defined (nonempty) rings; level 0 always exists.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }
}

/// BFS degree rings around `v` up to distance `k_max`.
pub fn degree_ring(g: &Graph, v: NodeId, k_max: usize) -> Result<DegreeRings> {
    if v as usize >= g.node_count() {
        return Err(Error::Domain(format!("node id {v} out of range")));
    }
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    dist[v as usize] = 0;
    queue.push_back(v);
    let mut levels: Vec<Vec<u32>> = vec![vec![g.neighbors(v).len() as u32]];
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize];
        if d == k_max {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = d + 1;
                if levels.len() <= d + 1 {
                    levels.push(Vec::new());
                }
                levels[d + 1].push(g.neighbors(w).len() as u32);
                queue.push_back(w);
            }
        }
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(DegreeRings { levels })
}

/// Element cost for comparing two ring degrees: max/min - 1, so equal
/// degrees cost 0 and the cost scales with the ratio. Zero degrees (an
/// isolated root's ring 0) are kept finite: cost(0,0)=0, cost(0,d)=d.
fn ring_cost(a: u32, b: u32) -> f64 {
    let mx = a.max(b) as f64;
    let mn = a.min(b) as f64;
    if mn == 0.0 {
        mx
    } else {
        mx / mn - 1.0
    }
}

/// Classic dynamic-time-warping alignment cost between two ascending
/// degree lists under `ring_cost`.
pub fn dtw_cost(s1: &[u32], s2: &[u32]) -> Result<f64> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::Domain("dtw_cost requires nonempty sequences".into()));
    }
    let m = s2.len();
    let mut prev = vec![f64::INFINITY; m + 1];
    let mut cur = vec![f64::INFINITY; m + 1];
    prev[0] = 0.0;
    for &a in s1 {
        cur[0] = f64::INFINITY;
        for j in 1..=m {
            let c = ring_cost(a, s2[j - 1]);
            cur[j] = c + prev[j].min(cur[j - 1]).min(prev[j - 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m])
}

fn distance_levels(r1: &DegreeRings, r2: &DegreeRings, k_max: usize) -> Vec<f64> {
    let depth = r1.depth().min(r2.depth()).min(k_max + 1);
    let mut out = Vec::with_capacity(depth);
    let mut acc = 0.0;
    for k in 0..depth {
        let c = dtw_cost(r1.level(k).unwrap(), r2.level(k).unwrap())
            .expect("rings nonempty by construction");
        acc += c;
        out.push(acc);
    }
    out
}

/// Cumulative structural distances f(u,v,0..k) for one pair of distinct
/// union-graph nodes; defined while both rings are nonempty.
pub fn structural_distance(g: &UnionGraph, u: NodeId, v: NodeId, k_max: usize) -> Result<Vec<f64>> {
    if u == v {
        return Err(Error::Domain("structural_distance requires u != v".into()));
    }
    let r1 = degree_ring(g.graph(), u, k_max)?;
    let r2 = degree_ring(g.graph(), v, k_max)?;
    Ok(distance_levels(&r1, &r2, k_max))
}

/// All-pairs structural-distance hierarchy over a union graph.
#[derive(Debug, Clone)]
pub struct StructuralHierarchy {
    n: usize,
    k_max: usize,
    /// Triangular pair storage, u < v; an empty vector means the pair was
    /// skipped (degree banding) or shares no defined level.
    pairs: Vec<Vec<f64>>,
}

impl StructuralHierarchy {
    /// Exact all-pairs computation.
    pub fn compute(g: &UnionGraph, k_max: usize) -> Self {
        Self::compute_with(g, k_max, false)
    }

    /// With `banded`, distances are only computed for pairs whose degrees
    /// lie within a factor of 2 of each other (the known quadratic
    /// bottleneck of the method); other pairs stay undefined.
    pub fn compute_with(g: &UnionGraph, k_max: usize, banded: bool) -> Self {
        let n = g.node_count();
        let gr = g.graph();
        let rings: Vec<DegreeRings> = (0..n as NodeId)
            .into_par_iter()
            .map(|v| degree_ring(gr, v, k_max).expect("valid id"))
            .collect();
        let degrees: Vec<u32> = (0..n as NodeId)
            .map(|v| gr.neighbors(v).len() as u32)
            .collect();
        let in_band = |a: u32, b: u32| -> bool {
            let mx = a.max(b) as u64;
            let mn = a.min(b) as u64;
            if mn == 0 {
                mx == 0
            } else {
                mx <= 2 * mn
            }
        };
        let pair_count = n * n.saturating_sub(1) / 2;
        let pairs: Vec<Vec<f64>> = (0..pair_count)
            .into_par_iter()
            .map(|idx| {
                let (u, v) = unpack_pair(idx, n);
                if banded && !in_band(degrees[u], degrees[v]) {
                    return Vec::new();
                }
                distance_levels(&rings[u], &rings[v], k_max)
            })
            .collect();
        StructuralHierarchy { n, k_max, pairs }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// f(u,v,k), `None` where undefined. f(u,u,k) is 0 wherever u's ring k
    /// exists; for stored pairs definedness follows the ring overlap.
    pub fn f(&self, u: NodeId, v: NodeId, k: usize) -> Option<f64> {
        if u == v {
            return if k <= self.k_max { Some(0.0) } else { None };
        }
        self.pair_levels(u, v).get(k).copied()
    }

    /// Cumulative distances for a pair (may be empty).
    pub fn pair_levels(&self, u: NodeId, v: NodeId) -> &[f64] {
        let (a, b) = (u.min(v) as usize, u.max(v) as usize);
        &self.pairs[pack_pair(a, b, self.n)]
    }

    /// Tabular export: name1, name2, k, f(u,v,k).
    pub fn write_tsv<W: Write>(&self, names: &[String], w: &mut W) -> std::io::Result<()> {
        writeln!(w, "# u\tv\tk\tf")?;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let levels = self.pair_levels(u as NodeId, v as NodeId);
                for (k, f) in levels.iter().enumerate() {
                    writeln!(w, "{}\t{}\t{}\t{:.6}", names[u], names[v], k, f)?;
                }
            }
        }
        Ok(())
    }
}

fn pack_pair(u: usize, v: usize, n: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

fn unpack_pair(idx: usize, n: usize) -> (usize, usize) {
    // invert the triangular index by walking rows; n is desk-scale
    let mut u = 0usize;
    let mut base = 0usize;
    loop {
        let row = n - u - 1;
        if idx < base + row {
            return (u, u + 1 + (idx - base));
        }
        base += row;
        u += 1;
    }
}

/// Weighted multilayer context graph: one layer per hierarchy level, plus
/// directed up/down weights between consecutive layers of the same node.
#[derive(Debug, Clone)]
pub struct LayeredContextGraph {
    n: usize,
    /// Per layer, per node: sorted neighbor ids and cumulative weights.
    layers: Vec<LayerAdj>,
    /// up_weight[k][v]: weight from (v,k) to (v,k+1); 0 if v absent above.
    up_weight: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
struct LayerAdj {
    nbrs: Vec<Vec<NodeId>>,
    cum: Vec<Vec<f64>>,
}

impl LayeredContextGraph {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Intra-layer neighbors of `v` at layer `k` with their weights.
    pub fn layer_neighbors(&self, k: usize, v: NodeId) -> Vec<(NodeId, f64)> {
        let layer = &self.layers[k];
        let nbrs = &layer.nbrs[v as usize];
        let cum = &layer.cum[v as usize];
        nbrs.iter()
            .enumerate()
            .map(|(i, &u)| {
                let w = if i == 0 { cum[0] } else { cum[i] - cum[i - 1] };
                (u, w)
            })
            .collect()
    }

    pub fn up_weight(&self, k: usize, v: NodeId) -> f64 {
        self.up_weight[k][v as usize]
    }

    /// Layered weighted edge list plus the inter-layer up-weights.
    pub fn write_tsv<W: Write>(&self, names: &[String], w: &mut W) -> std::io::Result<()> {
        writeln!(w, "# intra\tk\tu\tv\tweight")?;
        for (k, _layer) in self.layers.iter().enumerate() {
            for v in 0..self.n {
                for (u, weight) in self.layer_neighbors(k, v as NodeId) {
                    if (u as usize) > v {
                        writeln!(w, "intra\t{}\t{}\t{}\t{:.6}", k, names[v], names[u as usize], weight)?;
                    }
                }
            }
        }
        writeln!(w, "# up\tk\tv\tweight")?;
        for (k, ups) in self.up_weight.iter().enumerate() {
            for (v, &weight) in ups.iter().enumerate() {
                if weight > 0.0 {
                    writeln!(w, "up\t{}\t{}\t{:.6}", k, names[v], weight)?;
                }
            }
        }
        Ok(())
    }
}

/// Assembles the context graph from a precomputed hierarchy.
pub fn context_graph_from_hierarchy(h: &StructuralHierarchy) -> LayeredContextGraph {
    let n = h.node_count();
    // deepest defined level across pairs bounds the useful layer count
    let mut k_used = 0usize;
    for u in 0..n {
        for v in (u + 1)..n {
            let levels = h.pair_levels(u as NodeId, v as NodeId).len();
            if levels > 0 {
                k_used = k_used.max(levels - 1);
            }
        }
    }
    let mut layers = Vec::with_capacity(k_used + 1);
    let mut gammas: Vec<Vec<usize>> = Vec::with_capacity(k_used + 1);
    for k in 0..=k_used {
        let mut nbrs: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut weights: Vec<Vec<f64>> = vec![Vec::new(); n];
        let mut sum = 0.0f64;
        let mut count = 0usize;
        for u in 0..n {
            for v in (u + 1)..n {
                if let Some(f) = h.f(u as NodeId, v as NodeId, k) {
                    let w = (-f).exp();
                    nbrs[u].push(v as NodeId);
                    weights[u].push(w);
                    nbrs[v].push(u as NodeId);
                    weights[v].push(w);
                    sum += w;
                    count += 1;
                }
            }
        }
        let mean = if count > 0 { sum / count as f64 } else { 0.0 };
        // Gamma_k(v): incident layer-k edges strictly heavier than the
        // layer's mean edge weight
        let gamma: Vec<usize> = (0..n)
            .map(|v| weights[v].iter().filter(|&&w| w > mean).count())
            .collect();
        gammas.push(gamma);
        let cum: Vec<Vec<f64>> = weights
            .into_iter()
            .map(|ws| {
                let mut acc = 0.0;
                ws.into_iter()
                    .map(|w| {
                        acc += w;
                        acc
                    })
                    .collect()
            })
            .collect();
        layers.push(LayerAdj { nbrs, cum });
    }
    let mut up_weight = Vec::with_capacity(layers.len());
    for k in 0..layers.len() {
        let ups: Vec<f64> = (0..n)
            .map(|v| {
                let present_above = k + 1 < layers.len() && !layers[k + 1].nbrs[v].is_empty();
                if present_above {
                    ((gammas[k][v] as f64) + std::f64::consts::E).ln()
                } else {
                    0.0
                }
            })
            .collect();
        up_weight.push(ups);
    }
    LayeredContextGraph {
        n,
        layers,
        up_weight,
    }
}

/// Computes the full context graph for a union graph: hierarchy then
/// layer assembly.
pub fn build_context_graph(g: &UnionGraph, k_max: usize) -> LayeredContextGraph {
    context_graph_from_hierarchy(&StructuralHierarchy::compute(g, k_max))
}

/// Biased walks over the multilayer graph. Each step stays in the current
/// layer with probability `stay_prob` and moves to a neighbor sampled by
/// intra-layer weight (recording the node), or otherwise switches layer
/// proportionally to the up/down weights without recording anything.
/// Walks record node identities only, so the corpus indexes union nodes.
pub fn struct2vec_walks(
    ctx: &LayeredContextGraph,
    params: &WalkParams,
    stay_prob: f64,
) -> Result<WalkCorpus> {
    params.validate()?;
    if stay_prob.is_nan() || stay_prob <= 0.0 || stay_prob > 1.0 {
        return Err(Error::Domain("stay_prob must be in (0, 1]".into()));
    }
    let n = ctx.node_count();
    let r = params.walks_per_node;
    let walks: Vec<Vec<NodeId>> = (0..n * r)
        .into_par_iter()
        .map(|i| {
            let start = (i / r) as NodeId;
            let widx = (i % r) as u64;
            let mut rng = rng::stream(params.rng_seed, start as u64, widx);
            let mut walk = Vec::with_capacity(params.walk_length);
            walk.push(start);
            // isolated in every layer (singleton graphs, banded outliers)
            if ctx.layers[0].nbrs[start as usize].is_empty() {
                return walk;
            }
            let mut v = start;
            let mut k = 0usize;
            while walk.len() < params.walk_length {
                if rng.gen::<f64>() < stay_prob {
                    let layer = &ctx.layers[k];
                    let cum = &layer.cum[v as usize];
                    let total = *cum.last().expect("occupied layer has neighbors");
                    let r = rng.gen::<f64>() * total;
                    let idx = cum.partition_point(|&c| c <= r).min(cum.len() - 1);
                    v = layer.nbrs[v as usize][idx];
                    walk.push(v);
                } else {
                    let wu = ctx.up_weight[k][v as usize];
                    let wd = if k > 0 { 1.0 } else { 0.0 };
                    let total = wu + wd;
                    if total > 0.0 {
                        if rng.gen::<f64>() * total < wu {
                            k += 1;
                        } else {
                            k -= 1;
                        }
                    }
                    // impossible moves are no-ops, walk length unchanged
                }
            }
            walk
        })
        .collect();
    Ok(WalkCorpus {
        walks,
        source_graph_size: n,
        strategy: StrategyTag::Struct2vec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    fn star4() -> Graph {
        Graph::from_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges: Vec<(String, String)> = Vec::new();
        for i in 0..5u32 {
            edges.push((format!("o{i}"), format!("o{}", (i + 1) % 5)));
            edges.push((format!("o{i}"), format!("i{i}")));
            edges.push((format!("i{i}"), format!("i{}", (i + 2) % 5)));
        }
        let refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Graph::from_edges(&refs).unwrap()
    }

    #[test]
    fn rings_of_star_center() {
        let g = star4();
        let rings = degree_ring(&g, g.node_id("c").unwrap(), 1).unwrap();
        assert_eq!(rings.level(0).unwrap(), &[4]);
        assert_eq!(rings.level(1).unwrap(), &[1, 1, 1, 1]);
        assert_eq!(rings.level(2), None);
    }

    #[test]
    fn rings_of_path_end() {
        let g = path3();
        let rings = degree_ring(&g, g.node_id("a").unwrap(), 2).unwrap();
        assert_eq!(rings.level(0).unwrap(), &[1]);
        assert_eq!(rings.level(1).unwrap(), &[2]);
        assert_eq!(rings.level(2).unwrap(), &[1]);
    }

    #[test]
    fn rings_of_petersen() {
        let g = petersen();
        for v in g.node_ids() {
            let rings = degree_ring(&g, v, 2).unwrap();
            assert_eq!(rings.level(0).unwrap(), &[3]);
            assert_eq!(rings.level(1).unwrap(), &[3, 3, 3]);
            assert_eq!(rings.level(2).unwrap(), &[3, 3, 3, 3, 3, 3]);
        }
    }

    #[test]
    fn dtw_examples() {
        assert_eq!(dtw_cost(&[2, 3], &[2, 3]).unwrap(), 0.0);
        assert!((dtw_cost(&[1], &[2]).unwrap() - 1.0).abs() < 1e-12);
        // both 1 and 2 pair against 2: (2/1-1) + (2/2-1) = 1.0
        assert!((dtw_cost(&[1, 2], &[2]).unwrap() - 1.0).abs() < 1e-12);
        assert!(dtw_cost(&[], &[1]).is_err());
    }

    #[test]
    fn dtw_is_symmetric_and_zero_on_self() {
        let a = [1u32, 2, 2, 5];
        let b = [2u32, 4];
        assert_eq!(dtw_cost(&a, &a).unwrap(), 0.0);
        assert_eq!(dtw_cost(&a, &b).unwrap(), dtw_cost(&b, &a).unwrap());
    }

    #[test]
    fn twins_have_zero_distance() {
        let g = star4();
        let u = disjoint_union(&g, &g);
        let l1 = g.node_id("l1").unwrap();
        let l2 = g.node_id("l2").unwrap();
        let levels = structural_distance(&u, l1, l2, 4).unwrap();
        assert!(!levels.is_empty());
        for f in levels {
            assert_eq!(f, 0.0);
        }
    }

    #[test]
    fn isomorphic_components_have_zero_cross_distance() {
        let k3 = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let u = disjoint_union(&k3, &k3);
        for i in 0..3u32 {
            for j in 3..6u32 {
                for f in structural_distance(&u, i, j, 4).unwrap() {
                    assert_eq!(f, 0.0);
                }
            }
        }
    }

    #[test]
    fn path_level0_distances() {
        let g = path3();
        let u = disjoint_union(&g, &g);
        let a = 0u32;
        let b = 1u32;
        let c = 2u32;
        let fac = structural_distance(&u, a, c, 0).unwrap();
        assert_eq!(fac[0], 0.0);
        let fab = structural_distance(&u, a, b, 0).unwrap();
        assert!((fab[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hierarchy_matches_pairwise_and_is_symmetric() {
        let g = petersen();
        let u = disjoint_union(&g, &path3());
        let h = StructuralHierarchy::compute(&u, 3);
        let n = u.node_count() as NodeId;
        for a in 0..n {
            for b in (a + 1)..n {
                let direct = structural_distance(&u, a, b, 3).unwrap();
                let stored = h.pair_levels(a, b);
                assert_eq!(direct.len(), stored.len());
                for (x, y) in direct.iter().zip(stored) {
                    assert_eq!(x, y);
                }
                // symmetric access and monotone in k
                for k in 0..stored.len() {
                    assert_eq!(h.f(a, b, k), h.f(b, a, k));
                    if k > 0 {
                        assert!(h.f(a, b, k).unwrap() >= h.f(a, b, k - 1).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn context_weights_follow_exp_rule() {
        // two K3 components: all pairwise f = 0, so every weight is 1 and
        // no edge exceeds the layer mean -> up-weight ln(e) = 1.
        let k3 = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let u = disjoint_union(&k3, &k3);
        let ctx = build_context_graph(&u, 1);
        assert!(ctx.layer_count() >= 2);
        for v in 0..u.node_count() as NodeId {
            for (_, w) in ctx.layer_neighbors(0, v) {
                assert!((w - 1.0).abs() < 1e-12);
            }
            assert!((ctx.up_weight(0, v) - 1.0).abs() < 1e-12);
        }
        // exp(-ln 2) = 0.5 sanity on the element rule
        assert!(((-(2.0f64.ln())).exp() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn context_weights_in_unit_interval() {
        let g = petersen();
        let u = disjoint_union(&g, &path3());
        let ctx = build_context_graph(&u, 4);
        for k in 0..ctx.layer_count() {
            for v in 0..u.node_count() as NodeId {
                for (_, w) in ctx.layer_neighbors(k, v) {
                    assert!(w > 0.0 && w <= 1.0, "weight {w} at layer {k}");
                }
            }
        }
    }

    #[test]
    fn two_node_layer_walk_alternates() {
        let a = Graph::from_nodes_and_edges(&["a"], &[]).unwrap();
        let b = Graph::from_nodes_and_edges(&["b"], &[]).unwrap();
        let u = disjoint_union(&a, &b);
        let ctx = build_context_graph(&u, 4);
        let params = WalkParams {
            walks_per_node: 1,
            walk_length: 6,
            ..Default::default()
        };
        let corpus = struct2vec_walks(&ctx, &params, 1.0).unwrap();
        assert_eq!(corpus.walks[0], vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn singleton_context_walks_truncate() {
        let a = Graph::from_nodes_and_edges(&["a"], &[]).unwrap();
        let b = Graph::from_nodes_and_edges(&["b"], &[]).unwrap();
        let u = disjoint_union(&a, &b);
        let mut h = StructuralHierarchy::compute(&u, 0);
        // force the only pair out of band by erasing it
        h.pairs[0].clear();
        let ctx = context_graph_from_hierarchy(&h);
        let params = WalkParams {
            walks_per_node: 2,
            walk_length: 5,
            ..Default::default()
        };
        let corpus = struct2vec_walks(&ctx, &params, 0.7).unwrap();
        for walk in &corpus.walks {
            assert_eq!(walk.len(), 1);
        }
    }

    #[test]
    fn cross_origin_co_occurrence_on_isomorphic_union() {
        let k3 = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let u = disjoint_union(&k3, &k3);
        let ctx = build_context_graph(&u, 2);
        let params = WalkParams {
            walks_per_node: 5,
            walk_length: 20,
            rng_seed: 5,
            ..Default::default()
        };
        let corpus = struct2vec_walks(&ctx, &params, 0.7).unwrap();
        corpus.validate(None).unwrap();
        let crossing = corpus
            .walks
            .iter()
            .filter(|w| w.iter().any(|&v| v < 3) && w.iter().any(|&v| v >= 3))
            .count();
        assert!(crossing > 0, "walks never crossed origins");
    }

    #[test]
    fn banded_hierarchy_skips_distant_degrees() {
        // star center (degree 4) vs leaves (degree 1): out of band
        let g = star4();
        let u = disjoint_union(&g, &g);
        let h = StructuralHierarchy::compute_with(&u, 2, true);
        let c = 0u32; // center of first star
        let l = 1u32; // a leaf
        assert!(h.pair_levels(c, l).is_empty());
        // two leaves are in band and identical
        assert_eq!(h.f(1, 2, 0), Some(0.0));
    }

    #[test]
    fn struct_walks_are_deterministic() {
        let g = petersen();
        let u = disjoint_union(&g, &g);
        let ctx = build_context_graph(&u, 2);
        let params = WalkParams {
            walks_per_node: 3,
            walk_length: 12,
            rng_seed: 123,
            ..Default::default()
        };
        let c1 = struct2vec_walks(&ctx, &params, 0.7).unwrap();
        let c2 = struct2vec_walks(&ctx, &params, 0.7).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn domain_errors() {
        let g = path3();
        assert!(matches!(degree_ring(&g, 99, 2), Err(Error::Domain(_))));
        let u = disjoint_union(&g, &g);
        assert!(matches!(structural_distance(&u, 1, 1, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn stay_prob_out_of_range_rejected() {
        let a = Graph::from_nodes_and_edges(&["a"], &[]).unwrap();
        let u = disjoint_union(&a, &a.clone());
        let ctx = build_context_graph(&u, 0);
        let params = WalkParams::default();
        assert!(struct2vec_walks(&ctx, &params, 0.0).is_err());
        assert!(struct2vec_walks(&ctx, &params, 1.5).is_err());
    }
}
