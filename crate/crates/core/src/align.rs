//! Seed-and-extend local alignment growth from a mixed seed list.
//!
//! Seeds are admitted from the list in descending score order, then a
//! max-priority frontier extends the mapping along graph neighborhoods,
//! only ever admitting pairs that already appear in the seed list and
//! keep the mapping one-to-one. Undersized components are pruned.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::crosssim::SeedList;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// How a pair entered the alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Seed,
    Extended,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Seed => "seed",
            Provenance::Extended => "extended",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "seed" => Some(Provenance::Seed),
            "extended" => Some(Provenance::Extended),
            _ => None,
        }
    }
}

/// One aligned node pair with its admission score.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPair {
    pub name1: String,
    pub name2: String,
    pub provenance: Provenance,
    pub score: f64,
}

/// A conserved edge: (a,b) in the first graph whose images (a',b') form an
/// edge of the second. `edge1` is ordered lexicographically; `edge2` holds
/// the corresponding images in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservedEdge {
    pub edge1: (String, String),
    pub edge2: (String, String),
}

/// Size and conserved-edge count of one connected local region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    pub id: usize,
    pub size: usize,
    pub conserved_edges: usize,
}

/// Injective partial mapping plus its conserved edges and components.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub pairs: Vec<AlignedPair>,
    pub conserved: Vec<ConservedEdge>,
    pub components: Vec<ComponentSummary>,
}

impl Alignment {
    pub fn empty() -> Alignment {
        Alignment {
            pairs: Vec::new(),
            conserved: Vec::new(),
            components: Vec::new(),
        }
    }

    pub fn mapping(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|p| (p.name1.as_str(), p.name2.as_str()))
    }

    /// Three sections: pairs, conserved edges, component summary.
    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for p in &self.pairs {
            writeln!(w, "{}\t{}\t{}\t{:.6}", p.name1, p.name2, p.provenance.as_str(), p.score)?;
        }
        writeln!(w, "# conserved-edges")?;
        for c in &self.conserved {
            writeln!(w, "{}\t{}\t{}\t{}", c.edge1.0, c.edge1.1, c.edge2.0, c.edge2.1)?;
        }
        writeln!(w, "# components")?;
        for c in &self.components {
            writeln!(w, "{}\t{}\t{}", c.id, c.size, c.conserved_edges)?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<Alignment> {
        #[derive(PartialEq)]
        enum Section {
            Pairs,
            Conserved,
            Components,
        }
        let mut section = Section::Pairs;
        let mut out = Alignment::empty();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if trimmed == "# conserved-edges" {
                section = Section::Conserved;
                continue;
            }
            if trimmed == "# components" {
                section = Section::Components;
                continue;
            }
            if trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            let parse_err = |msg: String| Error::Parse { line: idx + 1, msg };
            match section {
                Section::Pairs => {
                    if fields.len() != 4 {
                        return Err(parse_err(format!("expected 4 fields, found {}", fields.len())));
                    }
                    let provenance = Provenance::parse(fields[2])
                        .ok_or_else(|| parse_err(format!("unknown provenance '{}'", fields[2])))?;
                    let score: f64 = fields[3]
                        .parse()
                        .map_err(|_| parse_err(format!("bad score '{}'", fields[3])))?;
                    out.pairs.push(AlignedPair {
                        name1: fields[0].to_string(),
                        name2: fields[1].to_string(),
                        provenance,
                        score,
                    });
                }
                Section::Conserved => {
                    if fields.len() != 4 {
                        return Err(parse_err(format!("expected 4 fields, found {}", fields.len())));
                    }
                    out.conserved.push(ConservedEdge {
                        edge1: (fields[0].to_string(), fields[1].to_string()),
                        edge2: (fields[2].to_string(), fields[3].to_string()),
                    });
                }
                Section::Components => {
                    if fields.len() != 3 {
                        return Err(parse_err(format!("expected 3 fields, found {}", fields.len())));
                    }
                    let nums: Vec<usize> = fields
                        .iter()
                        .map(|f| f.parse().map_err(|_| parse_err(format!("bad number '{f}'"))))
                        .collect::<Result<_>>()?;
                    out.components.push(ComponentSummary {
                        id: nums[0],
                        size: nums[1],
                        conserved_edges: nums[2],
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Alignment growth thresholds and limits.
#[derive(Debug, Clone)]
pub struct AlignParams {
    pub seed_threshold: f64,
    pub extend_threshold: f64,
    pub max_seeds: usize,
    pub min_component_size: usize,
}

impl Default for AlignParams {
    fn default() -> Self {
        AlignParams {
            seed_threshold: 0.8,
            extend_threshold: 0.5,
            max_seeds: 100,
            min_component_size: 3,
        }
    }
}

impl AlignParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("seed_threshold", self.seed_threshold),
            ("extend_threshold", self.extend_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(Error::Domain(format!("{name} {v} outside [0,1]")));
            }
        }
        if self.extend_threshold > self.seed_threshold {
            return Err(Error::Domain(
                "extend_threshold must not exceed seed_threshold".into(),
            ));
        }
        if self.max_seeds < 1 {
            return Err(Error::Domain("max_seeds must be >= 1".into()));
        }
        if self.min_component_size < 1 {
            return Err(Error::Domain("min_component_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// Frontier candidate ordered by score, ties by lexicographic names.
struct Candidate {
    score: f64,
    name1: String,
    name2: String,
    u: NodeId,
    v: NodeId,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.name1.cmp(&self.name1))
            .then_with(|| other.name2.cmp(&self.name2))
    }
}

/// All edges of `g1` whose endpoints are mapped and whose images form an
/// edge of `g2`. `mapping` must be injective; unknown names are rejected.
pub fn conserved_edges(g1: &Graph, g2: &Graph, mapping: &[(String, String)]) -> Result<Vec<ConservedEdge>> {
    let mut fwd: HashMap<NodeId, NodeId> = HashMap::new();
    let mut used2: HashSet<NodeId> = HashSet::new();
    for (n1, n2) in mapping {
        let u = g1
            .node_id(n1)
            .ok_or_else(|| Error::Domain(format!("unknown node '{n1}' in first graph")))?;
        let v = g2
            .node_id(n2)
            .ok_or_else(|| Error::Domain(format!("unknown node '{n2}' in second graph")))?;
        if fwd.insert(u, v).is_some() || !used2.insert(v) {
            return Err(Error::Domain("mapping is not injective".into()));
        }
    }
    let mut out = Vec::new();
    for (&u, &v) in &fwd {
        for &u2 in g1.neighbors(u) {
            if u2 <= u {
                continue;
            }
            if let Some(&v2) = fwd.get(&u2) {
                if g2.has_edge(v, v2) {
                    let (a, b) = (g1.name(u), g1.name(u2));
                    let (x, y) = (g2.name(v), g2.name(v2));
                    let (e1, e2) = if a <= b {
                        ((a.to_string(), b.to_string()), (x.to_string(), y.to_string()))
                    } else {
                        ((b.to_string(), a.to_string()), (y.to_string(), x.to_string()))
                    };
                    out.push(ConservedEdge { edge1: e1, edge2: e2 });
                }
            }
        }
    }
    out.sort_by(|a, b| a.edge1.cmp(&b.edge1));
    Ok(out)
}

/// Grows a local alignment: admit seeds above `seed_threshold` in list
/// order (up to `max_seeds`), extend along neighborhoods through the best
/// scoring list pairs above `extend_threshold`, then prune components
/// smaller than `min_component_size`. Deterministic.
pub fn build_alignment(
    g1: &Graph,
    g2: &Graph,
    m_final: &SeedList,
    params: &AlignParams,
) -> Result<Alignment> {
    params.validate()?;
    // resolve list entries to ids; entries naming unknown nodes cannot
    // participate in growth and are skipped
    let mut scores: HashMap<(NodeId, NodeId), f64> = HashMap::new();
    let mut resolved: Vec<(NodeId, NodeId, f64)> = Vec::new();
    for e in m_final.entries() {
        if let (Some(u), Some(v)) = (g1.node_id(&e.name1), g2.node_id(&e.name2)) {
            scores.insert((u, v), e.weight);
            resolved.push((u, v, e.weight));
        }
    }

    let mut fwd: HashMap<NodeId, NodeId> = HashMap::new();
    let mut bwd: HashMap<NodeId, NodeId> = HashMap::new();
    let mut admitted: Vec<(NodeId, NodeId, Provenance, f64)> = Vec::new();
    let mut frontier: BinaryHeap<Candidate> = BinaryHeap::new();

    let push_neighbors = |u: NodeId,
                          v: NodeId,
                          fwd: &HashMap<NodeId, NodeId>,
                          bwd: &HashMap<NodeId, NodeId>,
                          frontier: &mut BinaryHeap<Candidate>| {
        for &u2 in g1.neighbors(u) {
            if fwd.contains_key(&u2) {
                continue;
            }
            for &v2 in g2.neighbors(v) {
                if bwd.contains_key(&v2) {
                    continue;
                }
                if let Some(&s) = scores.get(&(u2, v2)) {
                    if s >= params.extend_threshold {
                        frontier.push(Candidate {
                            score: s,
                            name1: g1.name(u2).to_string(),
                            name2: g2.name(v2).to_string(),
                            u: u2,
                            v: v2,
                        });
                    }
                }
            }
        }
    };

    // phase 1: seeds in descending list order
    let mut seeds = 0usize;
    for &(u, v, s) in &resolved {
        if s < params.seed_threshold || seeds >= params.max_seeds {
            break;
        }
        if fwd.contains_key(&u) || bwd.contains_key(&v) {
            continue;
        }
        fwd.insert(u, v);
        bwd.insert(v, u);
        admitted.push((u, v, Provenance::Seed, s));
        seeds += 1;
    }
    let seed_pairs: Vec<(NodeId, NodeId)> = admitted.iter().map(|&(u, v, _, _)| (u, v)).collect();
    for (u, v) in seed_pairs {
        push_neighbors(u, v, &fwd, &bwd, &mut frontier);
    }

    // phase 2: best-first extension
    while let Some(c) = frontier.pop() {
        if fwd.contains_key(&c.u) || bwd.contains_key(&c.v) {
            continue;
        }
        fwd.insert(c.u, c.v);
        bwd.insert(c.v, c.u);
        admitted.push((c.u, c.v, Provenance::Extended, c.score));
        push_neighbors(c.u, c.v, &fwd, &bwd, &mut frontier);
    }

    // phase 3: conserved edges, components, pruning
    let pair_index: HashMap<NodeId, usize> = admitted
        .iter()
        .enumerate()
        .map(|(i, &(u, _, _, _))| (u, i))
        .collect();
    let mut dsu = Dsu::new(admitted.len());
    let mut conserved_ids: Vec<(usize, usize)> = Vec::new();
    for (i, &(u, v, _, _)) in admitted.iter().enumerate() {
        for &u2 in g1.neighbors(u) {
            if u2 <= u {
                continue;
            }
            if let Some(&j) = pair_index.get(&u2) {
                let v2 = admitted[j].1;
                if g2.has_edge(v, v2) {
                    dsu.union(i, j);
                    conserved_ids.push((i, j));
                }
            }
        }
    }
    let mut comp_size: HashMap<usize, usize> = HashMap::new();
    for i in 0..admitted.len() {
        *comp_size.entry(dsu.find(i)).or_default() += 1;
    }
    let keep: Vec<bool> = (0..admitted.len())
        .map(|i| comp_size[&dsu.find(i)] >= params.min_component_size)
        .collect();

    let mut pairs: Vec<AlignedPair> = admitted
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep[i])
        .map(|(_, &(u, v, provenance, score))| AlignedPair {
            name1: g1.name(u).to_string(),
            name2: g2.name(v).to_string(),
            provenance,
            score,
        })
        .collect();
    pairs.sort_by(|a, b| a.name1.cmp(&b.name1).then_with(|| a.name2.cmp(&b.name2)));

    let mut conserved: Vec<ConservedEdge> = Vec::new();
    let mut comp_conserved: HashMap<usize, usize> = HashMap::new();
    for &(i, j) in &conserved_ids {
        if !keep[i] {
            continue;
        }
        *comp_conserved.entry(dsu.find(i)).or_default() += 1;
        let (u, v, _, _) = admitted[i];
        let (u2, v2, _, _) = admitted[j];
        let (a, b) = (g1.name(u), g1.name(u2));
        let (x, y) = (g2.name(v), g2.name(v2));
        let (e1, e2) = if a <= b {
            ((a.to_string(), b.to_string()), (x.to_string(), y.to_string()))
        } else {
            ((b.to_string(), a.to_string()), (y.to_string(), x.to_string()))
        };
        conserved.push(ConservedEdge { edge1: e1, edge2: e2 });
    }
    conserved.sort_by(|a, b| a.edge1.cmp(&b.edge1));

    // component summaries, largest first, id by rank
    let mut comp_min_pair: HashMap<usize, (String, String)> = HashMap::new();
    for (i, &(u, v, _, _)) in admitted.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let root = dsu.find(i);
        let key = (g1.name(u).to_string(), g2.name(v).to_string());
        comp_min_pair
            .entry(root)
            .and_modify(|cur| {
                if key < *cur {
                    *cur = key.clone();
                }
            })
            .or_insert(key);
    }
    let mut comps: Vec<(usize, usize, (String, String))> = comp_min_pair
        .into_iter()
        .map(|(root, min_pair)| (comp_size[&root], *comp_conserved.get(&root).unwrap_or(&0), min_pair))
        .collect();
    comps.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.2.cmp(&b.2)));
    let components = comps
        .into_iter()
        .enumerate()
        .map(|(id, (size, conserved_edges, _))| ComponentSummary {
            id,
            size,
            conserved_edges,
        })
        .collect();

    Ok(Alignment {
        pairs,
        conserved,
        components,
    })
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
