//! Linear combination of the embedding seed list with a contextual one.

use std::collections::HashMap;

use crate::crosssim::{sort_entries, SeedEntry, SeedList, SourceTag};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// How to score pairs present in only one input list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbsentScorePolicy {
    /// Missing score contributes 0 (union semantics).
    Zero,
    /// Pairs absent from either list are excluded (intersection semantics).
    Drop,
}

impl AbsentScorePolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zero" => Some(AbsentScorePolicy::Zero),
            "drop" => Some(AbsentScorePolicy::Drop),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AbsentScorePolicy::Zero => "zero",
            AbsentScorePolicy::Drop => "drop",
        }
    }
}

/// `lambda` weights the embedding score; `1 - lambda` the contextual one.
#[derive(Debug, Clone)]
pub struct MixConfig {
    pub lambda: f64,
    pub policy: AbsentScorePolicy,
}

impl Default for MixConfig {
    fn default() -> Self {
        MixConfig {
            lambda: 0.5,
            policy: AbsentScorePolicy::Zero,
        }
    }
}

impl MixConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) || !self.lambda.is_finite() {
            return Err(Error::Domain(format!("lambda {} outside [0,1]", self.lambda)));
        }
        Ok(())
    }
}

/// score(u,v) = lambda * s_emb + (1 - lambda) * s_w over the pair union
/// (or intersection under the drop policy); output tagged `mixed`.
pub fn mix(m_emb: &SeedList, m_w: &SeedList, cfg: &MixConfig) -> Result<SeedList> {
    cfg.validate()?;
    let mut scores: HashMap<(String, String), (Option<f64>, Option<f64>)> = HashMap::new();
    for e in m_emb.entries() {
        scores
            .entry((e.name1.clone(), e.name2.clone()))
            .or_default()
            .0 = Some(e.weight);
    }
    for e in m_w.entries() {
        scores
            .entry((e.name1.clone(), e.name2.clone()))
            .or_default()
            .1 = Some(e.weight);
    }
    let mut entries = Vec::with_capacity(scores.len());
    for ((n1, n2), (se, sw)) in scores {
        match cfg.policy {
            AbsentScorePolicy::Drop => {
                if let (Some(se), Some(sw)) = (se, sw) {
                    entries.push(SeedEntry::new(n1, n2, cfg.lambda * se + (1.0 - cfg.lambda) * sw));
                }
            }
            AbsentScorePolicy::Zero => {
                let se = se.unwrap_or(0.0);
                let sw = sw.unwrap_or(0.0);
                entries.push(SeedEntry::new(n1, n2, cfg.lambda * se + (1.0 - cfg.lambda) * sw));
            }
        }
    }
    SeedList::from_entries(SourceTag::Mixed, entries)
}

/// What contextual-list sanitation changed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContextualReport {
    pub dropped_unknown: usize,
    pub clamped: usize,
    pub duplicates_merged: usize,
}

impl std::fmt::Display for ContextualReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} unknown-node entries dropped, {} weights clamped, {} duplicates merged",
            self.dropped_unknown, self.clamped, self.duplicates_merged
        )
    }
}

/// Sanitizes a raw contextual list: drops entries naming unknown nodes,
/// clamps weights into [0,1], and merges duplicate pairs keeping the
/// maximum weight.
pub fn validate_contextual(
    entries: Vec<SeedEntry>,
    g1: &Graph,
    g2: &Graph,
) -> Result<(SeedList, ContextualReport)> {
    let mut report = ContextualReport::default();
    let mut best: HashMap<(String, String), f64> = HashMap::new();
    for mut e in entries {
        if g1.node_id(&e.name1).is_none() || g2.node_id(&e.name2).is_none() {
            report.dropped_unknown += 1;
            continue;
        }
        if !e.weight.is_finite() {
            report.clamped += 1;
            e.weight = 0.0;
        } else if e.weight < 0.0 || e.weight > 1.0 {
            report.clamped += 1;
            e.weight = e.weight.clamp(0.0, 1.0);
        }
        match best.entry((e.name1, e.name2)) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                report.duplicates_merged += 1;
                if e.weight > *o.get() {
                    o.insert(e.weight);
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(e.weight);
            }
        }
    }
    if best.is_empty() {
        return Err(Error::Validation("contextual list has no usable entries".into()));
    }
    let mut out: Vec<SeedEntry> = best
        .into_iter()
        .map(|((n1, n2), w)| SeedEntry::new(n1, n2, w))
        .collect();
    sort_entries(&mut out);
    Ok((SeedList::from_entries(SourceTag::Contextual, out)?, report))
}
