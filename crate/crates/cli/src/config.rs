//! Flat key=value pipeline configuration with section prefixes
//! (e.g. `walks.length=80`). Defaults < config file < command-line
//! overrides; the effective configuration is written next to every stage
//! output as `manifest.txt` and can be fed back through `--config`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use walkalign::mixer::AbsentScorePolicy;

/// Walk strategy selection for the embed stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Deepwalk,
    Node2vec,
    Struct2vec,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Strategy> {
        match s {
            "deepwalk" => Some(Strategy::Deepwalk),
            "node2vec" => Some(Strategy::Node2vec),
            "struct2vec" => Some(Strategy::Struct2vec),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Deepwalk => "deepwalk",
            Strategy::Node2vec => "node2vec",
            Strategy::Struct2vec => "struct2vec",
        }
    }
}

/// Everything the pipeline needs; field groups mirror the library modules.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub graph1: Option<PathBuf>,
    pub graph2: Option<PathBuf>,
    pub contextual: Option<PathBuf>,
    pub truth: Option<PathBuf>,
    pub out: PathBuf,
    pub strategy: Strategy,
    pub seed: u64,
    pub workers: usize,

    pub walks_per_node: usize,
    pub walk_length: usize,
    pub walk_p: f64,
    pub walk_q: f64,
    pub walks_export: Option<PathBuf>,

    pub struct_k_max: usize,
    pub struct_stay_prob: f64,
    pub struct_banded: bool,
    pub struct_export_hierarchy: Option<PathBuf>,
    pub struct_export_context: Option<PathBuf>,

    pub train_dim: usize,
    pub train_window: usize,
    pub train_negatives: usize,
    pub train_epochs: usize,
    pub train_lr: f64,
    pub train_export_sum: bool,

    pub top_k: usize,
    pub sim_baseline: bool,
    pub mix_lambda: f64,
    pub mix_policy: AbsentScorePolicy,

    pub align_seed_threshold: f64,
    pub align_extend_threshold: f64,
    pub align_max_seeds: usize,
    pub align_min_component_size: usize,

    pub eval_k: usize,

    /// Keys explicitly set by file or flag; drives strategy validation.
    set_keys: HashSet<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            graph1: None,
            graph2: None,
            contextual: None,
            truth: None,
            out: PathBuf::from("out"),
            strategy: Strategy::Struct2vec,
            seed: 42,
            workers: 1,
            walks_per_node: 10,
            walk_length: 80,
            walk_p: 1.0,
            walk_q: 1.0,
            walks_export: None,
            struct_k_max: 4,
            struct_stay_prob: 0.7,
            struct_banded: false,
            struct_export_hierarchy: None,
            struct_export_context: None,
            train_dim: 64,
            train_window: 5,
            train_negatives: 5,
            train_epochs: 5,
            train_lr: 0.025,
            train_export_sum: false,
            top_k: 5,
            sim_baseline: false,
            mix_lambda: 0.5,
            mix_policy: AbsentScorePolicy::Zero,
            align_seed_threshold: 0.8,
            align_extend_threshold: 0.5,
            align_max_seeds: 100,
            align_min_component_size: 3,
            eval_k: 5,
            set_keys: HashSet::new(),
        }
    }
}

impl PipelineConfig {
    /// Applies one `key=value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let parse_usize = |v: &str| -> Result<usize> {
            v.parse().map_err(|_| anyhow!("'{v}' is not a non-negative integer"))
        };
        let parse_f64 = |v: &str| -> Result<f64> {
            v.parse().map_err(|_| anyhow!("'{v}' is not a number"))
        };
        let parse_bool = |v: &str| -> Result<bool> {
            match v {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => bail!("'{v}' is not true/false"),
            }
        };
        match key {
            "graph1" => self.graph1 = Some(PathBuf::from(value)),
            "graph2" => self.graph2 = Some(PathBuf::from(value)),
            "contextual" => self.contextual = Some(PathBuf::from(value)),
            "truth" => self.truth = Some(PathBuf::from(value)),
            "out" => self.out = PathBuf::from(value),
            "strategy" => {
                self.strategy = Strategy::parse(value)
                    .ok_or_else(|| anyhow!("unknown strategy '{value}' (deepwalk|node2vec|struct2vec)"))?
            }
            "seed" => self.seed = value.parse().map_err(|_| anyhow!("'{value}' is not a seed"))?,
            "workers" => self.workers = parse_usize(value)?,
            "walks.per_node" => self.walks_per_node = parse_usize(value)?,
            "walks.length" => self.walk_length = parse_usize(value)?,
            "walks.p" => self.walk_p = parse_f64(value)?,
            "walks.q" => self.walk_q = parse_f64(value)?,
            "walks.export" => self.walks_export = Some(PathBuf::from(value)),
            "struct.k_max" => self.struct_k_max = parse_usize(value)?,
            "struct.stay_prob" => self.struct_stay_prob = parse_f64(value)?,
            "struct.banded" => self.struct_banded = parse_bool(value)?,
            "struct.export_hierarchy" => self.struct_export_hierarchy = Some(PathBuf::from(value)),
            "struct.export_context" => self.struct_export_context = Some(PathBuf::from(value)),
            "train.dim" => self.train_dim = parse_usize(value)?,
            "train.window" => self.train_window = parse_usize(value)?,
            "train.negatives" => self.train_negatives = parse_usize(value)?,
            "train.epochs" => self.train_epochs = parse_usize(value)?,
            "train.lr" => self.train_lr = parse_f64(value)?,
            "train.export_sum" => self.train_export_sum = parse_bool(value)?,
            "sim.top_k" => self.top_k = parse_usize(value)?,
            "sim.baseline" => self.sim_baseline = parse_bool(value)?,
            "mix.lambda" => self.mix_lambda = parse_f64(value)?,
            "mix.policy" => {
                self.mix_policy = AbsentScorePolicy::parse(value)
                    .ok_or_else(|| anyhow!("unknown policy '{value}' (zero|drop)"))?
            }
            "align.seed_threshold" => self.align_seed_threshold = parse_f64(value)?,
            "align.extend_threshold" => self.align_extend_threshold = parse_f64(value)?,
            "align.max_seeds" => self.align_max_seeds = parse_usize(value)?,
            "align.min_component_size" => self.align_min_component_size = parse_usize(value)?,
            "eval.k" => self.eval_k = parse_usize(value)?,
            _ => bail!("unknown configuration key '{key}'"),
        }
        self.set_keys.insert(key.to_string());
        Ok(())
    }

    /// Reads a config file: `key=value` lines, '#' comments.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config file {}", path.display()))?;
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), idx + 1))?;
            self.set(key.trim(), value.trim())
                .with_context(|| format!("{}:{}", path.display(), idx + 1))?;
        }
        Ok(())
    }

    /// Rejects strategy-foreign parameters that were set explicitly.
    pub fn validate(&self) -> Result<()> {
        if self.strategy != Strategy::Node2vec {
            for key in ["walks.p", "walks.q"] {
                if self.set_keys.contains(key) {
                    bail!("{key} is only valid for the node2vec strategy");
                }
            }
        }
        if self.strategy != Strategy::Struct2vec {
            for key in [
                "struct.k_max",
                "struct.stay_prob",
                "struct.banded",
                "struct.export_hierarchy",
                "struct.export_context",
            ] {
                if self.set_keys.contains(key) {
                    bail!("{key} is only valid for the struct2vec strategy");
                }
            }
        }
        if !(0.0..=1.0).contains(&self.mix_lambda) {
            bail!("mix.lambda {} outside [0,1]", self.mix_lambda);
        }
        Ok(())
    }

    pub fn require_graphs(&self) -> Result<(&Path, &Path)> {
        let g1 = self
            .graph1
            .as_deref()
            .ok_or_else(|| anyhow!("graph1 is required (flag --graph1 or key graph1=)"))?;
        let g2 = self
            .graph2
            .as_deref()
            .ok_or_else(|| anyhow!("graph2 is required (flag --graph2 or key graph2=)"))?;
        Ok((g1, g2))
    }

    /// Renders the effective configuration. The output directory itself is
    /// not recorded, so reruns into fresh directories produce identical
    /// manifests; strategy-foreign keys are omitted so the manifest parses
    /// back cleanly.
    pub fn manifest(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k}={v}");
        };
        if let Some(p) = &self.graph1 {
            kv("graph1", p.display().to_string());
        }
        if let Some(p) = &self.graph2 {
            kv("graph2", p.display().to_string());
        }
        if let Some(p) = &self.contextual {
            kv("contextual", p.display().to_string());
        }
        if let Some(p) = &self.truth {
            kv("truth", p.display().to_string());
        }
        kv("strategy", self.strategy.as_str().to_string());
        kv("seed", self.seed.to_string());
        kv("workers", self.workers.to_string());
        kv("walks.per_node", self.walks_per_node.to_string());
        kv("walks.length", self.walk_length.to_string());
        if self.strategy == Strategy::Node2vec {
            kv("walks.p", format!("{}", self.walk_p));
            kv("walks.q", format!("{}", self.walk_q));
        }
        if let Some(p) = &self.walks_export {
            kv("walks.export", p.display().to_string());
        }
        if self.strategy == Strategy::Struct2vec {
            kv("struct.k_max", self.struct_k_max.to_string());
            kv("struct.stay_prob", format!("{}", self.struct_stay_prob));
            kv("struct.banded", self.struct_banded.to_string());
            if let Some(p) = &self.struct_export_hierarchy {
                kv("struct.export_hierarchy", p.display().to_string());
            }
            if let Some(p) = &self.struct_export_context {
                kv("struct.export_context", p.display().to_string());
            }
        }
        kv("train.dim", self.train_dim.to_string());
        kv("train.window", self.train_window.to_string());
        kv("train.negatives", self.train_negatives.to_string());
        kv("train.epochs", self.train_epochs.to_string());
        kv("train.lr", format!("{}", self.train_lr));
        kv("train.export_sum", self.train_export_sum.to_string());
        kv("sim.top_k", self.top_k.to_string());
        kv("sim.baseline", self.sim_baseline.to_string());
        kv("mix.lambda", format!("{}", self.mix_lambda));
        kv("mix.policy", self.mix_policy.as_str().to_string());
        kv("align.seed_threshold", format!("{}", self.align_seed_threshold));
        kv("align.extend_threshold", format!("{}", self.align_extend_threshold));
        kv("align.max_seeds", self.align_max_seeds.to_string());
        kv("align.min_component_size", self.align_min_component_size.to_string());
        kv("eval.k", self.eval_k.to_string());
        if self.contextual.is_none() {
            let _ = writeln!(s, "# note: no contextual list; the mix stage passes m_emb through retagged");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_manifest() {
        let mut cfg = PipelineConfig::default();
        cfg.set("graph1", "a.txt").unwrap();
        cfg.set("graph2", "b.txt").unwrap();
        let manifest = cfg.manifest();
        let mut back = PipelineConfig::default();
        for line in manifest.lines().filter(|l| !l.starts_with('#')) {
            let (k, v) = line.split_once('=').unwrap();
            back.set(k, v).unwrap();
        }
        assert_eq!(back.manifest(), manifest);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.set("walks.bogus", "3").is_err());
    }

    #[test]
    fn strategy_specific_keys_are_validated() {
        let mut cfg = PipelineConfig::default();
        cfg.set("strategy", "deepwalk").unwrap();
        cfg.set("walks.p", "2.0").unwrap();
        assert!(cfg.validate().is_err());

        let mut cfg = PipelineConfig::default();
        cfg.set("strategy", "node2vec").unwrap();
        cfg.set("walks.p", "2.0").unwrap();
        cfg.validate().unwrap();

        let mut cfg = PipelineConfig::default();
        cfg.set("strategy", "deepwalk").unwrap();
        cfg.set("struct.k_max", "3").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn manifest_omits_out_dir() {
        let mut cfg = PipelineConfig::default();
        cfg.set("out", "somewhere").unwrap();
        assert!(!cfg.manifest().contains("somewhere"));
    }
}
