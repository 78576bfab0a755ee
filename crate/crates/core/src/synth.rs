//! Synthetic graphs and ground truth for desk-scale evaluation: connected
//! random graphs, and renamed copies with a fraction of edges rewired.

use std::collections::HashSet;

use rand::Rng;

use crate::error::Result;
use crate::eval::GroundTruth;
use crate::graph::Graph;
use crate::rng;

/// Connected random graph: a random spanning tree plus uniform extra edges
/// until the target mean degree is reached. Deterministic in `seed`.
pub fn random_connected_graph(n: usize, mean_degree: f64, seed: u64) -> Result<Graph> {
    assert!(n >= 2, "need at least two nodes");
    let mut rng = rng::labeled(seed, 0x5157);
    let names: Vec<String> = (0..n).map(|i| format!("n{i:03}")).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((j, i));
        present.insert((j.min(i), j.max(i)));
    }
    let target = ((n as f64 * mean_degree) / 2.0).round() as usize;
    let max_edges = n * (n - 1) / 2;
    let target = target.clamp(n - 1, max_edges);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_nodes_and_edges(&names, &edges)
}

/// Exact copy of `g` with every name suffixed, plus the identity ground
/// truth, after rewiring a fraction `rho` of edges (degree-agnostic: a
/// removed edge is replaced by a uniform random non-edge).
pub fn rewired_renamed_copy(
    g: &Graph,
    rho: f64,
    suffix: &str,
    seed: u64,
) -> Result<(Graph, GroundTruth)> {
    assert!((0.0..=1.0).contains(&rho), "rho must be in [0,1]");
    let n = g.node_count();
    let names: Vec<String> = g.names().iter().map(|s| format!("{s}{suffix}")).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in g.node_ids() {
        for &v in g.neighbors(u) {
            if v > u {
                edges.push((u as usize, v as usize));
            }
        }
    }
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let rewires = (rho * edges.len() as f64).round() as usize;
    let mut rng = rng::labeled(seed, 0x7e77);
    for _ in 0..rewires {
        if present.len() == n * (n - 1) / 2 {
            break;
        }
        // remove one existing edge, add one absent edge
        let idx = rng.gen_range(0..edges.len());
        let removed = edges.swap_remove(idx);
        present.remove(&removed);
        loop {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if present.insert(key) {
                edges.push(key);
                break;
            }
        }
    }
    let copy = Graph::from_nodes_and_edges(&names, &edges)?;
    let truth = GroundTruth::from_pairs(
        g.names()
            .iter()
            .map(|s| (s.clone(), format!("{s}{suffix}")))
            .collect(),
    )?;
    Ok((copy, truth))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_graph_is_connected_and_sized() {
        let g = random_connected_graph(50, 4.0, 9).unwrap();
        g.validate().unwrap();
        assert_eq!(g.node_count(), 50);
        assert_eq!(g.edge_count(), 100);
        // BFS connectivity
        let mut seen = [false; 50];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    stack.push(v);
                }
            }
        }
        assert!(!seen.contains(&false));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = random_connected_graph(20, 3.0, 4).unwrap();
        let b = random_connected_graph(20, 3.0, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_rho_copy_is_exact() {
        let g = random_connected_graph(20, 3.0, 1).unwrap();
        let (copy, truth) = rewired_renamed_copy(&g, 0.0, "_b", 2).unwrap();
        copy.validate().unwrap();
        assert_eq!(copy.edge_count(), g.edge_count());
        assert_eq!(truth.len(), g.node_count());
        for u in g.node_ids() {
            let cu = copy.node_id(truth.counterpart(g.name(u)).unwrap()).unwrap();
            assert_eq!(g.degree(u).unwrap(), copy.degree(cu).unwrap());
        }
    }

    #[test]
    fn rewiring_changes_edges_but_not_counts() {
        let g = random_connected_graph(30, 4.0, 3).unwrap();
        let (copy, truth) = rewired_renamed_copy(&g, 0.2, "_b", 5).unwrap();
        copy.validate().unwrap();
        assert_eq!(copy.edge_count(), g.edge_count());
        // some edge must differ under the truth mapping
        let mut differs = false;
        'outer: for u in g.node_ids() {
            let cu = copy.node_id(truth.counterpart(g.name(u)).unwrap()).unwrap();
            for &v in g.neighbors(u) {
                let cv = copy.node_id(truth.counterpart(g.name(v)).unwrap()).unwrap();
                if !copy.has_edge(cu, cv) {
                    differs = true;
                    break 'outer;
                }
            }
        }
        assert!(differs);
    }
}
