//! Alignment and seed-list scoring against ground truth and by topology.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::align::Alignment;
use crate::crosssim::SeedList;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Known injective mapping from first-network names to second-network
/// names, usually produced by a synthetic copy generator.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    map: HashMap<String, String>,
}

impl GroundTruth {
    pub fn from_pairs(pairs: Vec<(String, String)>) -> Result<GroundTruth> {
        let mut map = HashMap::with_capacity(pairs.len());
        let mut seen2 = HashSet::with_capacity(pairs.len());
        for (a, b) in pairs {
            if !seen2.insert(b.clone()) || map.insert(a.clone(), b).is_some() {
                return Err(Error::Validation(format!("ground truth not injective at '{a}'")));
            }
        }
        Ok(GroundTruth { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn counterpart(&self, name1: &str) -> Option<&str> {
        self.map.get(name1).map(|s| s.as_str())
    }

    pub fn domain(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(|s| s.as_str())
    }

    /// "name1 TAB name2" lines, sorted by name1.
    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let mut pairs: Vec<(&String, &String)> = self.map.iter().collect();
        pairs.sort();
        for (a, b) in pairs {
            writeln!(w, "{a}\t{b}")?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<GroundTruth> {
        let mut pairs = Vec::new();
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected 2 tab-separated fields, found {}", fields.len()),
                });
            }
            pairs.push((fields[0].to_string(), fields[1].to_string()));
        }
        GroundTruth::from_pairs(pairs)
    }
}

/// Fraction of aligned pairs agreeing with the truth; 0 for an empty
/// alignment.
pub fn node_correctness(a: &Alignment, t: &GroundTruth) -> f64 {
    if a.pairs.is_empty() {
        return 0.0;
    }
    let agree = a
        .pairs
        .iter()
        .filter(|p| t.counterpart(&p.name1) == Some(p.name2.as_str()))
        .count();
    agree as f64 / a.pairs.len() as f64
}

/// Conserved edges over first-graph edges with both endpoints aligned;
/// 0 when no such edge exists.
pub fn edge_correctness(a: &Alignment, g1: &Graph) -> f64 {
    let aligned: HashSet<&str> = a.pairs.iter().map(|p| p.name1.as_str()).collect();
    let mut induced = 0usize;
    for u in g1.node_ids() {
        if !aligned.contains(g1.name(u)) {
            continue;
        }
        for &v in g1.neighbors(u) {
            if v > u && aligned.contains(g1.name(v)) {
                induced += 1;
            }
        }
    }
    if induced == 0 {
        0.0
    } else {
        a.conserved.len() as f64 / induced as f64
    }
}

/// Fraction of truth-domain nodes whose true counterpart appears among
/// their first `k` seed-list entries.
pub fn seed_hit_rate(m: &SeedList, t: &GroundTruth, k: usize) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if t.is_empty() {
        return Ok(0.0);
    }
    // the global order is weight-descending, so per-node order is too
    let mut per_node: HashMap<&str, Vec<&str>> = HashMap::new();
    for e in m.entries() {
        let slot = per_node.entry(e.name1.as_str()).or_default();
        if slot.len() < k {
            slot.push(e.name2.as_str());
        }
    }
    let hits = t
        .domain()
        .filter(|u| {
            let truth = t.counterpart(u).unwrap();
            per_node
                .get(u)
                .is_some_and(|tops| tops.contains(&truth))
        })
        .count();
    Ok(hits as f64 / t.len() as f64)
}

/// Tabular metrics plus a single machine-readable summary line.
#[derive(Debug, Clone, Default)]
pub struct MetricsReport {
    pub entries: Vec<(String, f64)>,
}

impl MetricsReport {
    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.entries.push((name.into(), value));
    }

    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for (name, value) in &self.entries {
            writeln!(w, "{name}\t{value:.6}")?;
        }
        writeln!(w, "{}", self.summary_line())
    }

    pub fn summary_line(&self) -> String {
        let fields: Vec<String> = self
            .entries
            .iter()
            .map(|(name, value)| format!("{name}={value:.6}"))
            .collect();
        format!("SUMMARY {}", fields.join(" "))
    }
}
