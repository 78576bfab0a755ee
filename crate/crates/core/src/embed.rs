//! Skip-gram with negative sampling over walk corpora.
//!
//! Every node owns a target and a context vector; co-occurring pairs are
//! pushed to high dot product, sampled non-pairs to low. The exported
//! embedding is the target vector by convention (a flag selects the sum).

use std::io::{BufRead, Write};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::rng;
use crate::walk::WalkCorpus;

/// Training hyperparameters.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    pub dim: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub rng_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            dim: 64,
            window: 5,
            negatives: 5,
            epochs: 5,
            learning_rate: 0.025,
            rng_seed: 42,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.window == 0 || self.epochs == 0 {
            return Err(Error::Domain("dim, window and epochs must be positive".into()));
        }
        if self.learning_rate.is_nan() || self.learning_rate <= 0.0 {
            return Err(Error::Domain("learning_rate must be > 0".into()));
        }
        Ok(())
    }
}

/// Trained target and context vectors, one pair of d-vectors per node id.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    dim: usize,
    n: usize,
    targets: Vec<f64>,
    contexts: Vec<f64>,
}

/// Which vectors to export as "the" node embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorConvention {
    Target,
    Sum,
}

impl EmbeddingMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn target(&self, v: NodeId) -> &[f64] {
        let d = self.dim;
        &self.targets[v as usize * d..(v as usize + 1) * d]
    }

    pub fn context(&self, v: NodeId) -> &[f64] {
        let d = self.dim;
        &self.contexts[v as usize * d..(v as usize + 1) * d]
    }

    pub fn max_norm(&self) -> f64 {
        (0..self.n as NodeId)
            .map(|v| dot(self.target(v), self.target(v)).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.targets.iter().chain(self.contexts.iter()).all(|x| x.is_finite())
    }

    /// Attaches names and materializes per-node vectors for export.
    pub fn to_node_vectors(&self, names: &[String], convention: VectorConvention) -> Result<NodeVectors> {
        if names.len() != self.n {
            return Err(Error::Domain(format!(
                "name table size {} != node count {}",
                names.len(),
                self.n
            )));
        }
        let mut data = Vec::with_capacity(self.n * self.dim);
        for v in 0..self.n as NodeId {
            match convention {
                VectorConvention::Target => data.extend_from_slice(self.target(v)),
                VectorConvention::Sum => {
                    data.extend(self.target(v).iter().zip(self.context(v)).map(|(a, b)| a + b))
                }
            }
        }
        Ok(NodeVectors {
            dim: self.dim,
            names: names.to_vec(),
            data,
        })
    }
}

/// Named per-node vectors: the on-disk embedding artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeVectors {
    pub dim: usize,
    pub names: Vec<String>,
    data: Vec<f64>,
}

impl NodeVectors {
    pub fn new(names: Vec<String>, dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != names.len() * dim {
            return Err(Error::Domain("vector data length mismatch".into()));
        }
        Ok(NodeVectors { dim, names, data })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Text format: header "|V| d", then one line per node with the
    /// external name and d decimals. Round-trips within 1e-6.
    pub fn write<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "{} {}", self.names.len(), self.dim)?;
        for (i, name) in self.names.iter().enumerate() {
            write!(w, "{name}")?;
            for x in self.row(i) {
                write!(w, " {x:.6}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<NodeVectors> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Validation("empty embedding file".into()))?;
        let header = header?;
        let mut it = header.split_whitespace();
        let parse = |s: Option<&str>, line: usize| -> Result<usize> {
            s.and_then(|t| t.parse().ok()).ok_or(Error::Parse {
                line,
                msg: "expected '|V| d' header".into(),
            })
        };
        let n = parse(it.next(), 1)?;
        let dim = parse(it.next(), 1)?;
        let mut names = Vec::with_capacity(n);
        let mut data = Vec::with_capacity(n * dim);
        for (idx, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let name = tokens
                .next()
                .ok_or(Error::Parse {
                    line: idx + 1,
                    msg: "missing node name".into(),
                })?
                .to_string();
            let mut count = 0;
            for t in tokens {
                let x: f64 = t.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad float '{t}'"),
                })?;
                data.push(x);
                count += 1;
            }
            if count != dim {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected {dim} floats, found {count}"),
                });
            }
            names.push(name);
        }
        if names.len() != n {
            return Err(Error::Validation(format!(
                "header declares {n} rows, found {}",
                names.len()
            )));
        }
        NodeVectors::new(names, dim, data)
    }
}

/// Per-epoch mean pair losses plus the pre-training baseline.
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub initial_loss: f64,
    pub epoch_losses: Vec<f64>,
    pub pair_count: usize,
}

/// (target, context) pairs within `window` positions of each other, in
/// deterministic corpus order.
pub fn extract_pairs<'a>(
    corpus: &'a WalkCorpus,
    window: usize,
) -> Result<impl Iterator<Item = (NodeId, NodeId)> + 'a> {
    if window < 1 {
        return Err(Error::Domain("window must be >= 1".into()));
    }
    Ok(corpus.walks.iter().flat_map(move |walk| {
        (0..walk.len()).flat_map(move |i| {
            let lo = i.saturating_sub(window);
            let hi = (i + window).min(walk.len() - 1);
            (lo..=hi)
                .filter(move |&j| j != i)
                .map(move |j| (walk[i], walk[j]))
        })
    }))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// ln(1 + e^x), stable for large |x|.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn check_dims(t: &[f64], c: &[f64], negs: &[Vec<f64>]) -> Result<()> {
    if t.len() != c.len() || negs.iter().any(|n| n.len() != t.len()) {
        return Err(Error::Domain("vector dimension mismatch".into()));
    }
    Ok(())
}

/// SGNS loss for one pair: -ln sigma(t.c) - sum_neg ln sigma(-t.neg).
pub fn sgns_pair_loss(t: &[f64], c: &[f64], negs: &[Vec<f64>]) -> Result<f64> {
    check_dims(t, c, negs)?;
    let mut loss = softplus(-dot(t, c));
    for n in negs {
        loss += softplus(dot(t, n));
    }
    Ok(loss)
}

/// Gradients for the target, the context, and each negative vector.
pub type PairGradients = (Vec<f64>, Vec<f64>, Vec<Vec<f64>>);

/// Analytic gradients of `sgns_pair_loss` with respect to the target, the
/// context, and each negative vector.
pub fn sgns_gradients(t: &[f64], c: &[f64], negs: &[Vec<f64>]) -> Result<PairGradients> {
    check_dims(t, c, negs)?;
    let d = t.len();
    let gp = sigmoid(dot(t, c)) - 1.0;
    let mut grad_t: Vec<f64> = c.iter().map(|x| gp * x).collect();
    let grad_c: Vec<f64> = t.iter().map(|x| gp * x).collect();
    let mut grad_negs = Vec::with_capacity(negs.len());
    for n in negs {
        let gn = sigmoid(dot(t, n));
        for i in 0..d {
            grad_t[i] += gn * n[i];
        }
        grad_negs.push(t.iter().map(|x| gn * x).collect());
    }
    Ok((grad_t, grad_c, grad_negs))
}

/// Cumulative unigram^(3/4) table for negative sampling.
struct NegativeTable {
    cum: Vec<f64>,
    total: f64,
}

impl NegativeTable {
    fn from_corpus(corpus: &WalkCorpus) -> Self {
        let mut counts = vec![0u64; corpus.source_graph_size];
        for walk in &corpus.walks {
            for &v in walk {
                counts[v as usize] += 1;
            }
        }
        let mut cum = Vec::with_capacity(counts.len());
        let mut acc = 0.0;
        for c in counts {
            acc += (c as f64).powf(0.75);
            cum.push(acc);
        }
        NegativeTable { total: acc, cum }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> NodeId {
        let r = rng.gen::<f64>() * self.total;
        self.cum.partition_point(|&c| c <= r).min(self.cum.len() - 1) as NodeId
    }
}

/// One SGD step for a (target, context) pair with pre-drawn negatives.
/// Context-side vectors are updated with the pre-step target, then the
/// target absorbs the accumulated gradient. Returns the pre-step loss.
#[allow(clippy::too_many_arguments)]
fn pair_update(
    targets: &mut [f64],
    contexts: &mut [f64],
    dim: usize,
    t_id: usize,
    c_id: usize,
    negs: &[NodeId],
    lr: f64,
    grad_buf: &mut [f64],
) -> f64 {
    let t_off = t_id * dim;
    let mut loss;
    grad_buf.fill(0.0);
    {
        let t = &targets[t_off..t_off + dim];
        let c = &mut contexts[c_id * dim..(c_id + 1) * dim];
        let dp = dot(t, c);
        loss = softplus(-dp);
        let gp = sigmoid(dp) - 1.0;
        for i in 0..dim {
            grad_buf[i] += gp * c[i];
            c[i] -= lr * gp * t[i];
        }
    }
    for &neg in negs {
        let t = &targets[t_off..t_off + dim];
        let nv = &mut contexts[neg as usize * dim..(neg as usize + 1) * dim];
        let dn = dot(t, nv);
        loss += softplus(dn);
        let gn = sigmoid(dn);
        for i in 0..dim {
            grad_buf[i] += gn * nv[i];
            nv[i] -= lr * gn * t[i];
        }
    }
    for i in 0..dim {
        targets[t_off + i] -= lr * grad_buf[i];
    }
    loss
}

/// Trains an embedding matrix from a walk corpus by SGD over extracted
/// pairs, `negatives` samples per pair from the unigram^(3/4) law, and a
/// linear learning-rate decay. Deterministic for a fixed `rng_seed`.
pub fn train(corpus: &WalkCorpus, cfg: &TrainConfig) -> Result<(EmbeddingMatrix, TrainReport)> {
    cfg.validate()?;
    let n = corpus.source_graph_size;
    if corpus.walks.is_empty() {
        return Err(Error::Domain("corpus is empty".into()));
    }
    if cfg.dim >= n {
        return Err(Error::Domain(format!(
            "embedding dimension {} must be < node count {n}",
            cfg.dim
        )));
    }
    let mut seen = vec![false; n];
    for walk in &corpus.walks {
        for &v in walk {
            seen[v as usize] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::Domain(format!("node {missing} missing from corpus")));
    }

    let pairs: Vec<(NodeId, NodeId)> = extract_pairs(corpus, cfg.window)?.collect();
    if pairs.is_empty() {
        return Err(Error::Domain("corpus yields no training pairs".into()));
    }
    let table = NegativeTable::from_corpus(corpus);
    let d = cfg.dim;

    let mut init_rng = rng::labeled(cfg.rng_seed, 0x10);
    let bound = 0.5 / d as f64;
    let mut targets = vec![0.0f64; n * d];
    for x in &mut targets {
        *x = init_rng.gen_range(-bound..bound);
    }
    let mut contexts = vec![0.0f64; n * d];

    let draw_negs = |rng: &mut rand_chacha::ChaCha8Rng, c_id: NodeId, buf: &mut Vec<NodeId>| {
        buf.clear();
        for _ in 0..cfg.negatives {
            let neg = table.sample(rng);
            if neg != c_id {
                buf.push(neg);
            }
        }
    };

    // baseline loss at initialization (contexts are zero, so this is the
    // exact symmetric start, measured rather than assumed)
    let mut eval_rng = rng::labeled(cfg.rng_seed, 0x20);
    let mut negs = Vec::with_capacity(cfg.negatives);
    let mut initial_loss = 0.0;
    for &(t_id, c_id) in &pairs {
        draw_negs(&mut eval_rng, c_id, &mut negs);
        let t = &targets[t_id as usize * d..(t_id as usize + 1) * d];
        let c = &contexts[c_id as usize * d..(c_id as usize + 1) * d];
        let mut l = softplus(-dot(t, c));
        for &ng in &negs {
            l += softplus(dot(t, &contexts[ng as usize * d..(ng as usize + 1) * d]));
        }
        initial_loss += l;
    }
    initial_loss /= pairs.len() as f64;

    let mut train_rng = rng::labeled(cfg.rng_seed, 0x30);
    let total_steps = (pairs.len() * cfg.epochs) as f64;
    let mut step = 0usize;
    let mut grad_buf = vec![0.0f64; d];
    let mut epoch_losses = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let mut epoch_loss = 0.0;
        for &(t_id, c_id) in &pairs {
            let lr = cfg.learning_rate * (1.0 - step as f64 / total_steps).max(1e-4);
            draw_negs(&mut train_rng, c_id, &mut negs);
            let loss = pair_update(
                &mut targets,
                &mut contexts,
                d,
                t_id as usize,
                c_id as usize,
                &negs,
                lr,
                &mut grad_buf,
            );
            if !loss.is_finite() {
                return Err(Error::Training(format!(
                    "non-finite loss at epoch {epoch}, step {step}"
                )));
            }
            epoch_loss += loss;
            step += 1;
        }
        epoch_losses.push(epoch_loss / pairs.len() as f64);
    }

    let matrix = EmbeddingMatrix {
        dim: d,
        n,
        targets,
        contexts,
    };
    if !matrix.is_finite() {
        return Err(Error::Training("non-finite parameter after training".into()));
    }
    Ok((
        matrix,
        TrainReport {
            initial_loss,
            epoch_losses,
            pair_count: pairs.len(),
        },
    ))
}
