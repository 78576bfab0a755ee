//! Cross-network node similarity from embeddings: normalized cosine
//! ranking into a weighted seed list, plus a degree-profile baseline.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::embed::NodeVectors;

/// Where a seed list came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceTag {
    Embedding,
    Contextual,
    Mixed,
}

impl SourceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceTag::Embedding => "embedding",
            SourceTag::Contextual => "contextual",
            SourceTag::Mixed => "mixed",
        }
    }

    pub fn parse(s: &str) -> Option<SourceTag> {
        match s {
            "embedding" => Some(SourceTag::Embedding),
            "contextual" => Some(SourceTag::Contextual),
            "mixed" => Some(SourceTag::Mixed),
            _ => None,
        }
    }
}

/// One weighted cross-network candidate pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedEntry {
    pub name1: String,
    pub name2: String,
    pub weight: f64,
}

impl SeedEntry {
    pub fn new(name1: impl Into<String>, name2: impl Into<String>, weight: f64) -> Self {
        SeedEntry {
            name1: name1.into(),
            name2: name2.into(),
            weight,
        }
    }
}

/// Weighted cross-network node-pair list: weights in [0,1], no duplicate
/// pairs, sorted by descending weight with lexicographic tie-breaks.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedList {
    source: SourceTag,
    entries: Vec<SeedEntry>,
}

pub(crate) fn sort_entries(entries: &mut [SeedEntry]) {
    entries.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.name1.cmp(&b.name1))
            .then_with(|| a.name2.cmp(&b.name2))
    });
}

impl SeedList {
    /// Validates, sorts, and wraps entries.
    pub fn from_entries(source: SourceTag, mut entries: Vec<SeedEntry>) -> Result<SeedList> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !(0.0..=1.0).contains(&e.weight) || !e.weight.is_finite() {
                return Err(Error::Validation(format!(
                    "weight {} of ({}, {}) outside [0,1]",
                    e.weight, e.name1, e.name2
                )));
            }
            if !seen.insert((e.name1.clone(), e.name2.clone())) {
                return Err(Error::Validation(format!(
                    "duplicate pair ({}, {})",
                    e.name1, e.name2
                )));
            }
        }
        sort_entries(&mut entries);
        Ok(SeedList { source, entries })
    }

    pub fn source(&self) -> SourceTag {
        self.source
    }

    pub fn entries(&self) -> &[SeedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same entries under a new tag (pass-through mixing).
    pub fn retagged(&self, source: SourceTag) -> SeedList {
        SeedList {
            source,
            entries: self.entries.clone(),
        }
    }

    /// Text format: "# source=<tag>" header, then name1 TAB name2 TAB
    /// weight with six decimals per line.
    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "# source={}", self.source.as_str())?;
        for e in &self.entries {
            writeln!(w, "{}\t{}\t{:.6}", e.name1, e.name2, e.weight)?;
        }
        Ok(())
    }

    /// Strict read: enforces all seed-list invariants.
    pub fn read<R: BufRead>(r: R) -> Result<SeedList> {
        let (source, entries) = read_raw_entries(r)?;
        SeedList::from_entries(source, entries)
    }
}

/// Lenient read used for contextual inputs: returns raw entries without
/// enforcing weight range or uniqueness (see `mixer::validate_contextual`).
pub fn read_raw_entries<R: BufRead>(r: R) -> Result<(SourceTag, Vec<SeedEntry>)> {
    let mut source = SourceTag::Contextual;
    let mut entries = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(tag) = rest.strip_prefix("source=") {
                source = SourceTag::parse(tag.trim()).ok_or(Error::Parse {
                    line: idx + 1,
                    msg: format!("unknown source tag '{}'", tag.trim()),
                })?;
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: format!("expected 3 tab-separated fields, found {}", fields.len()),
            });
        }
        let weight: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad weight '{}'", fields[2]),
        })?;
        entries.push(SeedEntry::new(fields[0], fields[1], weight));
    }
    Ok((source, entries))
}

/// Cosine similarity rescaled from [-1,1] to [0,1]. Errors on zero-norm or
/// dimension-mismatched input; `build_seed_list` maps zero norms to weight
/// 0 and records the node instead.
pub fn normalized_cosine(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Domain("vector dimension mismatch".into()));
    }
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::Domain("zero vector has no direction".into()));
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    Ok(((1.0 + dot / (na * nb)) / 2.0).clamp(0.0, 1.0))
}

/// Nodes whose vectors had zero norm and were scored 0 against everything.
#[derive(Debug, Clone, Default)]
pub struct CrossSimReport {
    pub zero_norm_nodes: Vec<String>,
}

/// For each node of the first network, its `top_k` most similar nodes of
/// the second by normalized cosine; ties break lexicographically.
pub fn build_seed_list(emb1: &NodeVectors, emb2: &NodeVectors, top_k: usize) -> Result<SeedList> {
    build_seed_list_with_report(emb1, emb2, top_k).map(|(list, _)| list)
}

pub fn build_seed_list_with_report(
    emb1: &NodeVectors,
    emb2: &NodeVectors,
    top_k: usize,
) -> Result<(SeedList, CrossSimReport)> {
    if emb1.dim != emb2.dim {
        return Err(Error::Domain(format!(
            "embedding dimensions differ: {} vs {}",
            emb1.dim, emb2.dim
        )));
    }
    if top_k < 1 {
        return Err(Error::Domain("top_k must be >= 1".into()));
    }
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let norms1: Vec<f64> = (0..emb1.len()).map(|i| norm(emb1.row(i))).collect();
    let norms2: Vec<f64> = (0..emb2.len()).map(|i| norm(emb2.row(i))).collect();

    let mut report = CrossSimReport::default();
    let mut zero_names: HashSet<String> = HashSet::new();
    let mut entries = Vec::with_capacity(emb1.len() * top_k);
    for (i, &n1) in norms1.iter().enumerate() {
        let mut scored: Vec<(f64, &str)> = Vec::with_capacity(emb2.len());
        for (j, &n2) in norms2.iter().enumerate() {
            let w = if n1 == 0.0 || n2 == 0.0 {
                if n1 == 0.0 {
                    zero_names.insert(emb1.names[i].clone());
                }
                if n2 == 0.0 {
                    zero_names.insert(emb2.names[j].clone());
                }
                0.0
            } else {
                let dot: f64 = emb1.row(i).iter().zip(emb2.row(j)).map(|(x, y)| x * y).sum();
                ((1.0 + dot / (n1 * n2)) / 2.0).clamp(0.0, 1.0)
            };
            scored.push((w, &emb2.names[j]));
        }
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        for &(w, name2) in scored.iter().take(top_k) {
            entries.push(SeedEntry::new(emb1.names[i].clone(), name2, w));
        }
    }
    report.zero_norm_nodes = zero_names.into_iter().collect();
    report.zero_norm_nodes.sort_unstable();
    Ok((SeedList::from_entries(SourceTag::Embedding, entries)?, report))
}

/// Degree-profile baseline: weight 1 - |deg u - deg v| / max(deg u, deg v)
/// for the `top_k` degree-closest candidates per node (or for an explicit
/// candidate list). The naive first-order yardstick for comparison runs.
pub fn adjacency_baseline(
    g1: &Graph,
    g2: &Graph,
    candidates: Option<&[(String, String)]>,
    top_k: usize,
) -> Result<SeedList> {
    if top_k < 1 {
        return Err(Error::Domain("top_k must be >= 1".into()));
    }
    let weight = |du: usize, dv: usize| -> f64 {
        let mx = du.max(dv);
        if mx == 0 {
            1.0
        } else {
            1.0 - (du.abs_diff(dv) as f64) / (mx as f64)
        }
    };
    let mut entries = Vec::new();
    match candidates {
        Some(pairs) => {
            let mut seen = HashSet::new();
            for (n1, n2) in pairs {
                let u = g1
                    .node_id(n1)
                    .ok_or_else(|| Error::Domain(format!("unknown node '{n1}' in first graph")))?;
                let v = g2
                    .node_id(n2)
                    .ok_or_else(|| Error::Domain(format!("unknown node '{n2}' in second graph")))?;
                if seen.insert((u, v)) {
                    entries.push(SeedEntry::new(
                        n1.clone(),
                        n2.clone(),
                        weight(g1.degree(u)?, g2.degree(v)?),
                    ));
                }
            }
        }
        None => {
            for u in g1.node_ids() {
                let du = g1.degree(u)?;
                let mut scored: Vec<(f64, &str)> = g2
                    .node_ids()
                    .map(|v| (weight(du, g2.degree(v).unwrap()), g2.name(v)))
                    .collect();
                scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(b.1)));
                for &(w, name2) in scored.iter().take(top_k) {
                    entries.push(SeedEntry::new(g1.name(u), name2, w));
                }
            }
        }
    }
    SeedList::from_entries(SourceTag::Embedding, entries)
}
