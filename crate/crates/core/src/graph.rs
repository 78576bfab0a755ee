//! Undirected, unweighted simple graphs with a name table, plus the
//! disjoint union used by cross-network structural walks.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type NodeId = u32;

/// Immutable simple graph. Adjacency lists are sorted; ids are assigned in
/// first-appearance order of the external names.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
}

/// What happened while loading an edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub nodes: usize,
    pub edges: usize,
    pub self_loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl std::fmt::Display for LoadReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} nodes, {} edges, {} self-loops dropped, {} duplicate edges collapsed",
            self.nodes, self.edges, self.self_loops_dropped, self.duplicates_collapsed
        )
    }
}

impl Graph {
    /// Parses an edge list: one edge per line, two whitespace-separated
    /// names; '#' lines are comments, blank lines are skipped. Self-loop
    /// lines register the name but drop the edge; duplicate edges collapse.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadReport)> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut edges: HashSet<(NodeId, NodeId)> = HashSet::new();
        let mut report = LoadReport::default();

        let intern = |name: &str, names: &mut Vec<String>, index: &mut HashMap<String, NodeId>| {
            if let Some(&id) = index.get(name) {
                id
            } else {
                let id = names.len() as NodeId;
                names.push(name.to_string());
                index.insert(name.to_string(), id);
                id
            }
        };

        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected 2 tokens, found {}", tokens.len()),
                });
            }
            let u = intern(tokens[0], &mut names, &mut index);
            let v = intern(tokens[1], &mut names, &mut index);
            if u == v {
                report.self_loops_dropped += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            if !edges.insert(key) {
                report.duplicates_collapsed += 1;
            }
        }

        if edges.is_empty() {
            return Err(Error::Validation("empty edge set".into()));
        }

        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        report.nodes = names.len();
        report.edges = edges.len();
        let g = Graph {
            names,
            index,
            adj,
            edge_count: edges.len(),
        };
        Ok((g, report))
    }

    /// Builds a graph from named edges; same rules as `load_edge_list`.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Graph> {
        let text: String = edges
            .iter()
            .map(|(a, b)| format!("{} {}\n", a.as_ref(), b.as_ref()))
            .collect();
        Ok(Self::load_edge_list(text.as_bytes())?.0)
    }

    /// Builds a graph with an explicit node set; nodes absent from `edges`
    /// stay isolated. Needed by generators that may strand a node.
    pub fn from_nodes_and_edges<S: AsRef<str>>(nodes: &[S], edges: &[(usize, usize)]) -> Result<Graph> {
        let mut names = Vec::with_capacity(nodes.len());
        let mut index = HashMap::new();
        for n in nodes {
            let name = n.as_ref().to_string();
            if index.insert(name.clone(), names.len() as NodeId).is_some() {
                return Err(Error::Validation(format!("duplicate node name '{name}'")));
            }
            names.push(name);
        }
        let mut set: HashSet<(NodeId, NodeId)> = HashSet::new();
        for &(a, b) in edges {
            if a >= names.len() || b >= names.len() {
                return Err(Error::Domain(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                continue;
            }
            let (a, b) = (a as NodeId, b as NodeId);
            set.insert((a.min(b), a.max(b)));
        }
        let mut adj = vec![Vec::new(); names.len()];
        for &(u, v) in &set {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            names,
            index,
            adj,
            edge_count: set.len(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.adj
            .get(v as usize)
            .map(|l| l.len())
            .ok_or_else(|| Error::Domain(format!("node id {v} out of range")))
    }

    /// Sorted neighbor list. Panics on an out-of-range id.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        match self.adj.get(u as usize) {
            Some(list) => list.binary_search(&v).is_ok(),
            None => false,
        }
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.names.len() as NodeId
    }

    /// Serializes as an edge list readable by `load_edge_list`. Isolated
    /// nodes are emitted as self-loop lines, which the loader registers as
    /// names and then drops as edges.
    pub fn write_edge_list<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for u in self.node_ids() {
            if self.adj[u as usize].is_empty() {
                writeln!(w, "{} {}", self.name(u), self.name(u))?;
            }
            for &v in &self.adj[u as usize] {
                if v > u {
                    writeln!(w, "{} {}", self.name(u), self.name(v))?;
                }
            }
        }
        Ok(())
    }

    /// Checks the structural invariants; used by tests and generators.
    pub fn validate(&self) -> Result<()> {
        if self.names.len() != self.adj.len() {
            return Err(Error::Validation("name/adjacency length mismatch".into()));
        }
        let mut half_edges = 0usize;
        for u in self.node_ids() {
            let list = &self.adj[u as usize];
            half_edges += list.len();
            for win in list.windows(2) {
                if win[0] >= win[1] {
                    return Err(Error::Validation(format!("adjacency of {u} unsorted or duplicated")));
                }
            }
            for &v in list {
                if v == u {
                    return Err(Error::Validation(format!("self-loop at {u}")));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::Validation(format!("asymmetric edge ({u},{v})")));
                }
            }
        }
        if half_edges != 2 * self.edge_count {
            return Err(Error::Validation("degree sum != 2 * edge count".into()));
        }
        Ok(())
    }
}

/// Which of the two input networks a union node came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    First,
    Second,
}

impl Origin {
    pub fn prefix(self) -> &'static str {
        match self {
            Origin::First => "1:",
            Origin::Second => "2:",
        }
    }
}

/// Disjoint union of two graphs. Nodes of the first keep their ids, nodes
/// of the second are offset by |V1|; names carry a "1:"/"2:" origin prefix.
#[derive(Debug, Clone)]
pub struct UnionGraph {
    graph: Graph,
    size1: usize,
    size2: usize,
}

impl UnionGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn size1(&self) -> usize {
        self.size1
    }

    pub fn size2(&self) -> usize {
        self.size2
    }

    /// Origin tag and original id of a union node.
    pub fn origin(&self, v: NodeId) -> (Origin, NodeId) {
        if (v as usize) < self.size1 {
            (Origin::First, v)
        } else {
            (Origin::Second, v - self.size1 as NodeId)
        }
    }

    /// Original (unprefixed) name of a union node.
    pub fn original_name(&self, v: NodeId) -> &str {
        let name = self.graph.name(v);
        let (origin, _) = self.origin(v);
        &name[origin.prefix().len()..]
    }
}

/// Splits an origin-prefixed union name into (origin, bare name).
pub fn split_union_name(name: &str) -> Option<(Origin, &str)> {
    if let Some(rest) = name.strip_prefix("1:") {
        Some((Origin::First, rest))
    } else {
        name.strip_prefix("2:").map(|rest| (Origin::Second, rest))
    }
}

/// Builds the disjoint union of two graphs. No cross edges are added; the
/// result exists so structural walks can span both node sets.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> UnionGraph {
    let n1 = g1.node_count();
    let n2 = g2.node_count();
    let mut names = Vec::with_capacity(n1 + n2);
    let mut index = HashMap::with_capacity(n1 + n2);
    for v in g1.node_ids() {
        let name = format!("{}{}", Origin::First.prefix(), g1.name(v));
        index.insert(name.clone(), names.len() as NodeId);
        names.push(name);
    }
    for v in g2.node_ids() {
        let name = format!("{}{}", Origin::Second.prefix(), g2.name(v));
        index.insert(name.clone(), names.len() as NodeId);
        names.push(name);
    }
    let mut adj = Vec::with_capacity(n1 + n2);
    for v in g1.node_ids() {
        adj.push(g1.neighbors(v).to_vec());
    }
    for v in g2.node_ids() {
        adj.push(
            g2.neighbors(v)
                .iter()
                .map(|&u| u + n1 as NodeId)
                .collect(),
        );
    }
    let graph = Graph {
        names,
        index,
        adj,
        edge_count: g1.edge_count() + g2.edge_count(),
    };
    UnionGraph {
        graph,
        size1: n1,
        size2: n2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> (Graph, LoadReport) {
        Graph::load_edge_list(text.as_bytes()).unwrap()
    }

    #[test]
    fn loads_small_edge_list() {
        let (g, r) = load("a b\nb c");
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let b = g.node_id("b").unwrap();
        let nbrs: Vec<&str> = g.neighbors(b).iter().map(|&v| g.name(v)).collect();
        assert_eq!(nbrs, vec!["a", "c"]);
        assert_eq!(r.nodes, 3);
        assert_eq!(r.edges, 2);
    }

    #[test]
    fn dedups_and_symmetrizes() {
        let (g, r) = load("a b\nb a\na b");
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(r.duplicates_collapsed, 2);
    }

    #[test]
    fn drops_self_loops_but_keeps_names() {
        let (g, r) = load("a a\na b");
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(r.self_loops_dropped, 1);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let (g, _) = load("# header\n\na b\n  # indented comment\nb c\n");
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = Graph::load_edge_list("a b\nx y z\n".as_bytes()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_edge_set_is_invalid() {
        let err = Graph::load_edge_list("# nothing\na a\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn degree_examples() {
        let (tri, _) = load("a b\nb c\nc a");
        for v in tri.node_ids() {
            assert_eq!(tri.degree(v).unwrap(), 2);
        }
        let (star, _) = load("c l1\nc l2\nc l3\nc l4");
        assert_eq!(star.degree(star.node_id("c").unwrap()).unwrap(), 4);
        let (iso, _) = load("x x\na b");
        assert_eq!(iso.degree(iso.node_id("x").unwrap()).unwrap(), 0);
        assert!(matches!(iso.degree(99), Err(Error::Domain(_))));
    }

    #[test]
    fn handshake_lemma_holds() {
        let (g, _) = load("a b\nb c\nc a\nc d");
        let total: usize = g.node_ids().map(|v| g.degree(v).unwrap()).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn union_of_triangles() {
        let g = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let u = disjoint_union(&g, &g);
        assert_eq!(u.node_count(), 6);
        assert_eq!(u.graph().edge_count(), 6);
        assert_eq!(u.origin(0), (Origin::First, 0));
        assert_eq!(u.origin(3), (Origin::Second, 0));
        assert_eq!(u.original_name(3), "a");
        // no cross edges
        for v in 0..3u32 {
            for &n in u.graph().neighbors(v) {
                assert!((n as usize) < 3);
            }
        }
    }

    #[test]
    fn union_degree_multiset() {
        // P2 (a-b) with S3 (center + 3 leaves): degrees 1,1 then 3,1,1,1.
        let p2 = Graph::from_edges(&[("a", "b")]).unwrap();
        let s3 = Graph::from_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap();
        let u = disjoint_union(&p2, &s3);
        let degs: Vec<usize> = u
            .graph()
            .node_ids()
            .map(|v| u.graph().degree(v).unwrap())
            .collect();
        assert_eq!(degs, vec![1, 1, 3, 1, 1, 1]);
        // union preserves each origin graph's degrees
        for v in p2.node_ids() {
            assert_eq!(u.graph().degree(v).unwrap(), p2.degree(v).unwrap());
        }
        for v in s3.node_ids() {
            assert_eq!(
                u.graph().degree(v + 2).unwrap(),
                s3.degree(v).unwrap()
            );
        }
    }

    #[test]
    fn union_of_singletons() {
        let a = Graph::from_nodes_and_edges(&["a"], &[]).unwrap();
        let b = Graph::from_nodes_and_edges(&["b"], &[]).unwrap();
        let u = disjoint_union(&a, &b);
        assert_eq!(u.node_count(), 2);
        assert_eq!(u.graph().edge_count(), 0);
    }

    #[test]
    fn round_trip_preserves_structure() {
        let (g, _) = load("a b\nb c\nc a\nd d\ne f");
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let (g2, _) = Graph::load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g.node_count(), g2.node_count());
        assert_eq!(g.edge_count(), g2.edge_count());
        for v in g.node_ids() {
            let name = g.name(v);
            let id2 = g2.node_id(name).unwrap();
            let n1: Vec<&str> = g.neighbors(v).iter().map(|&x| g.name(x)).collect();
            let n2: Vec<&str> = g2.neighbors(id2).iter().map(|&x| g2.name(x)).collect();
            let mut n1 = n1;
            let mut n2 = n2;
            n1.sort_unstable();
            n2.sort_unstable();
            assert_eq!(n1, n2, "neighbor names of {name}");
        }
    }
}
