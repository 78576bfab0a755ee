//! Pipeline stages. Every stage reads its inputs from plain files, writes
//! plain files plus `manifest.txt` into the output directory, and reports
//! diagnostics on stderr, so any intermediate can be inspected and the
//! pipeline restarted from any point.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use walkalign::align::{build_alignment, AlignParams, Alignment};
use walkalign::crosssim::{build_seed_list_with_report, read_raw_entries, SeedList, SourceTag};
use walkalign::embed::{train, NodeVectors, TrainConfig, VectorConvention};
use walkalign::eval::{edge_correctness, node_correctness, seed_hit_rate, GroundTruth, MetricsReport};
use walkalign::graph::{disjoint_union, split_union_name, Graph, Origin};
use walkalign::mixer::{mix, validate_contextual, MixConfig};
use walkalign::structsim::{context_graph_from_hierarchy, struct2vec_walks, StructuralHierarchy};
use walkalign::walk::{node2vec_walks, uniform_walks, WalkCorpus, WalkParams};

use crate::config::{PipelineConfig, Strategy};

pub const MANIFEST_FILE: &str = "manifest.txt";
pub const EMBEDDINGS_UNION_FILE: &str = "embeddings.txt";
pub const EMBEDDINGS_G1_FILE: &str = "embeddings.g1.txt";
pub const EMBEDDINGS_G2_FILE: &str = "embeddings.g2.txt";
pub const M_EMB_FILE: &str = "m_emb.tsv";
pub const M_FINAL_FILE: &str = "m_final.tsv";
pub const ALIGNMENT_FILE: &str = "alignment.txt";
pub const METRICS_FILE: &str = "metrics.txt";

fn load_graph(path: &Path, label: &str) -> Result<Graph> {
    let file = File::open(path)
        .with_context(|| format!("cannot open {label} edge list {}", path.display()))?;
    let (graph, report) = Graph::load_edge_list(BufReader::new(file))
        .with_context(|| format!("loading {label} from {}", path.display()))?;
    eprintln!("{label}: {report}");
    Ok(graph)
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush()?;
    Ok(())
}

fn write_manifest(cfg: &PipelineConfig) -> Result<()> {
    std::fs::create_dir_all(&cfg.out)
        .with_context(|| format!("cannot create output directory {}", cfg.out.display()))?;
    let path = cfg.out.join(MANIFEST_FILE);
    write_file(&path, |w| write!(w, "{}", cfg.manifest()))
}

fn walk_params(cfg: &PipelineConfig, seed: u64) -> WalkParams {
    WalkParams {
        walks_per_node: cfg.walks_per_node,
        walk_length: cfg.walk_length,
        return_param: cfg.walk_p,
        inout_param: cfg.walk_q,
        rng_seed: seed,
    }
}

fn train_config(cfg: &PipelineConfig, seed: u64) -> TrainConfig {
    TrainConfig {
        dim: cfg.train_dim,
        window: cfg.train_window,
        negatives: cfg.train_negatives,
        epochs: cfg.train_epochs,
        learning_rate: cfg.train_lr,
        rng_seed: seed,
    }
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("cannot build worker pool")
}

fn convention(cfg: &PipelineConfig) -> VectorConvention {
    if cfg.train_export_sum {
        VectorConvention::Sum
    } else {
        VectorConvention::Target
    }
}

fn train_one(
    corpus: &WalkCorpus,
    names: &[String],
    cfg: &PipelineConfig,
    seed: u64,
    label: &str,
) -> Result<NodeVectors> {
    let (matrix, report) = train(corpus, &train_config(cfg, seed))
        .with_context(|| format!("training {label}"))?;
    eprintln!(
        "{label}: {} pairs, mean loss {:.4} -> {:.4} over {} epochs",
        report.pair_count,
        report.initial_loss,
        report.epoch_losses.last().copied().unwrap_or(f64::NAN),
        report.epoch_losses.len()
    );
    Ok(matrix.to_node_vectors(names, convention(cfg))?)
}

/// Learns embeddings. DeepWalk/node2vec train each network independently
/// and write one file per network; struct2vec trains once over the
/// disjoint union and writes a single origin-tagged file.
pub fn cmd_embed(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    let (p1, p2) = cfg.require_graphs()?;
    let g1 = load_graph(p1, "graph1")?;
    let g2 = load_graph(p2, "graph2")?;
    write_manifest(cfg)?;
    let pool = thread_pool(cfg.workers)?;

    match cfg.strategy {
        Strategy::Deepwalk | Strategy::Node2vec => {
            let mut corpora = Vec::new();
            for (i, g) in [&g1, &g2].into_iter().enumerate() {
                let params = walk_params(cfg, cfg.seed.wrapping_add(i as u64));
                let corpus = pool.install(|| match cfg.strategy {
                    Strategy::Deepwalk => uniform_walks(g, &params),
                    _ => node2vec_walks(g, &params),
                })?;
                corpora.push(corpus);
            }
            if let Some(path) = &cfg.walks_export {
                write_file(path, |w| {
                    corpora[0].write(g1.names(), w)?;
                    corpora[1].write(g2.names(), w)
                })?;
            }
            let nv1 = train_one(&corpora[0], g1.names(), cfg, cfg.seed, "embedding graph1")?;
            let nv2 = train_one(
                &corpora[1],
                g2.names(),
                cfg,
                cfg.seed.wrapping_add(1),
                "embedding graph2",
            )?;
            write_file(&cfg.out.join(EMBEDDINGS_G1_FILE), |w| nv1.write(w))?;
            write_file(&cfg.out.join(EMBEDDINGS_G2_FILE), |w| nv2.write(w))?;
        }
        Strategy::Struct2vec => {
            let union = disjoint_union(&g1, &g2);
            let hierarchy = pool.install(|| {
                StructuralHierarchy::compute_with(&union, cfg.struct_k_max, cfg.struct_banded)
            });
            if let Some(path) = &cfg.struct_export_hierarchy {
                write_file(path, |w| hierarchy.write_tsv(union.graph().names(), w))?;
            }
            let ctx = context_graph_from_hierarchy(&hierarchy);
            if let Some(path) = &cfg.struct_export_context {
                write_file(path, |w| ctx.write_tsv(union.graph().names(), w))?;
            }
            let params = walk_params(cfg, cfg.seed);
            let corpus = pool.install(|| struct2vec_walks(&ctx, &params, cfg.struct_stay_prob))?;
            if let Some(path) = &cfg.walks_export {
                write_file(path, |w| corpus.write(union.graph().names(), w))?;
            }
            let nv = train_one(&corpus, union.graph().names(), cfg, cfg.seed, "embedding union")?;
            write_file(&cfg.out.join(EMBEDDINGS_UNION_FILE), |w| nv.write(w))?;
        }
    }
    Ok(())
}

fn read_vectors(path: &Path) -> Result<NodeVectors> {
    let file = File::open(path).with_context(|| {
        format!(
            "embedding file {} not found; run the embed stage first",
            path.display()
        )
    })?;
    Ok(NodeVectors::read(BufReader::new(file))?)
}

/// Splits an origin-tagged union embedding into per-network vectors.
fn split_union_vectors(nv: &NodeVectors) -> Result<(NodeVectors, NodeVectors)> {
    let mut names1 = Vec::new();
    let mut data1 = Vec::new();
    let mut names2 = Vec::new();
    let mut data2 = Vec::new();
    for (i, name) in nv.names.iter().enumerate() {
        match split_union_name(name) {
            Some((Origin::First, bare)) => {
                names1.push(bare.to_string());
                data1.extend_from_slice(nv.row(i));
            }
            Some((Origin::Second, bare)) => {
                names2.push(bare.to_string());
                data2.extend_from_slice(nv.row(i));
            }
            None => bail!("embedding row '{name}' lacks an origin prefix"),
        }
    }
    Ok((
        NodeVectors::new(names1, nv.dim, data1)?,
        NodeVectors::new(names2, nv.dim, data2)?,
    ))
}

/// Ranks cross-network pairs by normalized cosine into `m_emb.tsv`, or by
/// the degree-profile baseline when `sim.baseline=true` (comparison runs).
pub fn cmd_similarity(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    if cfg.sim_baseline {
        let (p1, p2) = cfg.require_graphs()?;
        let g1 = load_graph(p1, "graph1")?;
        let g2 = load_graph(p2, "graph2")?;
        let list = walkalign::crosssim::adjacency_baseline(&g1, &g2, None, cfg.top_k)?;
        write_manifest(cfg)?;
        write_file(&cfg.out.join(M_EMB_FILE), |w| list.write(w))?;
        eprintln!(
            "similarity: degree-profile baseline, {} entries at top_k={}",
            list.len(),
            cfg.top_k
        );
        return Ok(());
    }
    let (emb1, emb2) = match cfg.strategy {
        Strategy::Struct2vec => {
            let union = read_vectors(&cfg.out.join(EMBEDDINGS_UNION_FILE))?;
            split_union_vectors(&union)?
        }
        _ => {
            eprintln!(
                "warning: {} embeddings are trained independently per network; \
                 their latent spaces are not directly comparable. Cross-network \
                 cosine scores carry no alignment guarantee; prefer struct2vec.",
                cfg.strategy.as_str()
            );
            (
                read_vectors(&cfg.out.join(EMBEDDINGS_G1_FILE))?,
                read_vectors(&cfg.out.join(EMBEDDINGS_G2_FILE))?,
            )
        }
    };
    let (list, report) = build_seed_list_with_report(&emb1, &emb2, cfg.top_k)?;
    if !report.zero_norm_nodes.is_empty() {
        eprintln!(
            "warning: zero-norm embedding for {} node(s): {}",
            report.zero_norm_nodes.len(),
            report.zero_norm_nodes.join(", ")
        );
    }
    write_manifest(cfg)?;
    write_file(&cfg.out.join(M_EMB_FILE), |w| list.write(w))?;
    eprintln!("similarity: {} entries at top_k={}", list.len(), cfg.top_k);
    Ok(())
}

fn read_seed_list(path: &Path, missing_hint: &str) -> Result<SeedList> {
    let file = File::open(path)
        .with_context(|| format!("{} not found; {missing_hint}", path.display()))?;
    Ok(SeedList::read(BufReader::new(file))?)
}

/// Mixes `m_emb.tsv` with the contextual list into `m_final.tsv`. Without
/// a contextual list the embedding list passes through retagged.
pub fn cmd_mix(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    let m_emb = read_seed_list(&cfg.out.join(M_EMB_FILE), "run the similarity stage first")?;
    let (m_final, note) = match &cfg.contextual {
        Some(path) => {
            let (p1, p2) = cfg.require_graphs()?;
            let g1 = load_graph(p1, "graph1")?;
            let g2 = load_graph(p2, "graph2")?;
            let file = File::open(path)
                .with_context(|| format!("cannot open contextual list {}", path.display()))?;
            let (_, raw) = read_raw_entries(BufReader::new(file))?;
            let (m_w, report) = validate_contextual(raw, &g1, &g2)?;
            eprintln!("contextual: {report}");
            let mix_cfg = MixConfig {
                lambda: cfg.mix_lambda,
                policy: cfg.mix_policy,
            };
            (mix(&m_emb, &m_w, &mix_cfg)?, None)
        }
        None => (
            m_emb.retagged(SourceTag::Mixed),
            Some("no contextual list supplied; m_emb passed through as m_final"),
        ),
    };
    if let Some(note) = note {
        eprintln!("mix: {note}");
    }
    write_manifest(cfg)?;
    write_file(&cfg.out.join(M_FINAL_FILE), |w| m_final.write(w))?;
    eprintln!("mix: {} entries", m_final.len());
    Ok(())
}

/// Grows the alignment from `m_final.tsv`; writes metrics too when a
/// ground-truth file is configured.
pub fn cmd_align(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    let (p1, p2) = cfg.require_graphs()?;
    let g1 = load_graph(p1, "graph1")?;
    let g2 = load_graph(p2, "graph2")?;
    let m_final = read_seed_list(&cfg.out.join(M_FINAL_FILE), "run the mix stage first")?;
    let params = AlignParams {
        seed_threshold: cfg.align_seed_threshold,
        extend_threshold: cfg.align_extend_threshold,
        max_seeds: cfg.align_max_seeds,
        min_component_size: cfg.align_min_component_size,
    };
    let alignment = build_alignment(&g1, &g2, &m_final, &params)?;
    write_manifest(cfg)?;
    write_file(&cfg.out.join(ALIGNMENT_FILE), |w| alignment.write(w))?;
    eprintln!(
        "align: {} pairs, {} conserved edges, {} components",
        alignment.pairs.len(),
        alignment.conserved.len(),
        alignment.components.len()
    );
    if cfg.truth.is_some() {
        cmd_eval(cfg)?;
    }
    Ok(())
}

/// Scores the alignment (and seed lists, when present) against ground
/// truth; writes `metrics.txt` and prints the summary line.
pub fn cmd_eval(cfg: &PipelineConfig) -> Result<()> {
    cfg.validate()?;
    let truth_path = cfg
        .truth
        .as_deref()
        .ok_or_else(|| anyhow!("truth file is required (flag --truth or key truth=)"))?;
    let truth_file = File::open(truth_path)
        .with_context(|| format!("cannot open ground truth {}", truth_path.display()))?;
    let truth = GroundTruth::read(BufReader::new(truth_file))?;

    let alignment_path = cfg.out.join(ALIGNMENT_FILE);
    let alignment_file = File::open(&alignment_path).with_context(|| {
        format!(
            "{} not found; run the align stage first",
            alignment_path.display()
        )
    })?;
    let alignment = Alignment::read(BufReader::new(alignment_file))?;

    let (p1, _) = cfg.require_graphs()?;
    let g1 = load_graph(p1, "graph1")?;

    let mut report = MetricsReport::default();
    report.push("node_correctness", node_correctness(&alignment, &truth));
    report.push("edge_correctness", edge_correctness(&alignment, &g1));
    for (file, label) in [(M_EMB_FILE, "m_emb"), (M_FINAL_FILE, "m_final")] {
        let path = cfg.out.join(file);
        if path.exists() {
            let list = read_seed_list(&path, "unreachable")?;
            report.push(
                format!("seed_hit_rate@{}({})", cfg.eval_k, label),
                seed_hit_rate(&list, &truth, cfg.eval_k)?,
            );
        }
    }
    write_file(&cfg.out.join(METRICS_FILE), |w| report.write(w))?;
    println!("{}", report.summary_line());
    Ok(())
}

/// embed -> similarity -> mix -> align (plus eval when truth is given).
pub fn cmd_pipeline(cfg: &PipelineConfig) -> Result<()> {
    cmd_embed(cfg).context("embed stage")?;
    cmd_similarity(cfg).context("similarity stage")?;
    cmd_mix(cfg).context("mix stage")?;
    cmd_align(cfg).context("align stage")?;
    Ok(())
}

/// Stage names used for error attribution by the binary.
pub fn run_stage(stage: &str, cfg: &PipelineConfig) -> Result<()> {
    match stage {
        "embed" => cmd_embed(cfg).context("embed stage"),
        "similarity" => cmd_similarity(cfg).context("similarity stage"),
        "mix" => cmd_mix(cfg).context("mix stage"),
        "align" => cmd_align(cfg).context("align stage"),
        "eval" => cmd_eval(cfg).context("eval stage"),
        "pipeline" => cmd_pipeline(cfg).context("pipeline"),
        other => bail!("unknown stage '{other}'"),
    }
}

/// Convenience for tests: absolute paths of all current stage outputs.
pub fn output_files(out: &Path) -> Vec<PathBuf> {
    [
        EMBEDDINGS_UNION_FILE,
        EMBEDDINGS_G1_FILE,
        EMBEDDINGS_G2_FILE,
        M_EMB_FILE,
        M_FINAL_FILE,
        ALIGNMENT_FILE,
        METRICS_FILE,
        MANIFEST_FILE,
    ]
    .iter()
    .map(|f| out.join(f))
    .filter(|p| p.exists())
    .collect()
}
