//! walkalign: random-walk node embeddings for two networks, cosine seed
//! lists, linear mixing with contextual seeds, and seed-and-extend local
//! alignment, as composable subcommands over plain files.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use walkalign_cli::config::PipelineConfig;
use walkalign_cli::stages::run_stage;

#[derive(Parser)]
#[command(
    name = "walkalign",
    version,
    about = "Structural node embeddings and embedding-seeded local network alignment"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Config file with key=value lines (see README for keys)
    #[arg(long)]
    config: Option<PathBuf>,

    /// First network edge list
    #[arg(long)]
    graph1: Option<PathBuf>,

    /// Second network edge list
    #[arg(long)]
    graph2: Option<PathBuf>,

    /// Contextual seed list (seed-list file format, source=contextual)
    #[arg(long)]
    contextual: Option<PathBuf>,

    /// Ground-truth mapping ("name1 TAB name2" lines)
    #[arg(long)]
    truth: Option<PathBuf>,

    /// Output directory for stage files and the manifest
    #[arg(long)]
    out: Option<PathBuf>,

    /// Walk strategy: deepwalk | node2vec | struct2vec
    #[arg(long)]
    strategy: Option<String>,

    /// Global RNG seed
    #[arg(long)]
    seed: Option<u64>,

    /// Worker threads for walk/distance computation (1 = reproducibility contract)
    #[arg(long)]
    workers: Option<usize>,

    /// Candidates kept per node in the similarity stage
    #[arg(long)]
    top_k: Option<usize>,

    /// Weight of the embedding score in the mixing stage, in [0,1]
    #[arg(long)]
    lambda: Option<f64>,

    /// Additional key=value overrides (repeatable), e.g. --set walks.length=40
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate walks and train embeddings
    Embed(CommonOpts),
    /// Rank cross-network pairs by normalized cosine into m_emb.tsv
    Similarity(CommonOpts),
    /// Mix m_emb.tsv with the contextual list into m_final.tsv
    Mix(CommonOpts),
    /// Grow the local alignment from m_final.tsv
    Align(CommonOpts),
    /// Run embed, similarity, mix, and align in sequence
    Pipeline(CommonOpts),
    /// Score alignment and seed lists against ground truth
    Eval(CommonOpts),
}

fn build_config(opts: &CommonOpts) -> anyhow::Result<PipelineConfig> {
    let mut cfg = PipelineConfig::default();
    if let Some(path) = &opts.config {
        cfg.apply_file(path)?;
    }
    let mut flag = |key: &str, value: Option<String>| -> anyhow::Result<()> {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
        Ok(())
    };
    flag("graph1", opts.graph1.as_ref().map(|p| p.display().to_string()))?;
    flag("graph2", opts.graph2.as_ref().map(|p| p.display().to_string()))?;
    flag("contextual", opts.contextual.as_ref().map(|p| p.display().to_string()))?;
    flag("truth", opts.truth.as_ref().map(|p| p.display().to_string()))?;
    flag("out", opts.out.as_ref().map(|p| p.display().to_string()))?;
    flag("strategy", opts.strategy.clone())?;
    flag("seed", opts.seed.map(|s| s.to_string()))?;
    flag("workers", opts.workers.map(|w| w.to_string()))?;
    flag("sim.top_k", opts.top_k.map(|k| k.to_string()))?;
    flag("mix.lambda", opts.lambda.map(|l| l.to_string()))?;
    for assignment in &opts.set {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("--set expects KEY=VALUE, got '{assignment}'"))?;
        cfg.set(key.trim(), value.trim())?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stage, opts) = match &cli.command {
        Command::Embed(o) => ("embed", o),
        Command::Similarity(o) => ("similarity", o),
        Command::Mix(o) => ("mix", o),
        Command::Align(o) => ("align", o),
        Command::Pipeline(o) => ("pipeline", o),
        Command::Eval(o) => ("eval", o),
    };
    let result = build_config(opts).and_then(|cfg| run_stage(stage, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
