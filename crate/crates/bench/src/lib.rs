//! Benchmark harness for the two miners and the refinement techniques,
//! with a seeded synthetic corpus generator.

pub mod cluster;
pub mod mining;
pub mod synth;

use docmine_core::corpus::CorpusError;
use docmine_core::evalx::EvalError;
use docmine_core::miner::MineError;
use docmine_core::refine::RefineError;
use docmine_core::seeder::SeedError;
use docmine_core::{PreprocessedCorpus, Preprocessor, RawDocument, TermDocumentMatrix};
use thiserror::Error;

pub use cluster::{run_cluster_bench, ClusterBenchConfig, ClusterRow};
pub use mining::{run_mining_bench, write_gnuplot, MiningBenchConfig, MiningRow};
pub use synth::{stratified_order, SynthMode, SyntheticSpec};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("bad synthetic spec: {0}")]
    Spec(String),
    #[error("corpus has {available} documents, {requested} requested")]
    TooFewDocuments { requested: usize, available: usize },
    #[error("no sizes given")]
    NoSizes,
    #[error("repeats must be at least 1")]
    NoRepeats,
    #[error("correctness gate failed: miners disagree at n_docs={n_docs}, min_sup={min_sup}")]
    GateFailed { n_docs: usize, min_sup: usize },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Mine(#[from] MineError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Refine(#[from] RefineError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A preprocessed corpus plus the name written into the `dataset` column.
#[derive(Debug, Clone)]
pub struct BenchCorpus {
    pub name: String,
    corpus: PreprocessedCorpus,
    order: Vec<usize>,
}

impl BenchCorpus {
    pub fn new(name: impl Into<String>, docs: &[RawDocument], preprocessor: &Preprocessor) -> Self {
        let corpus = preprocessor.run(docs);
        let order = stratified_order(&corpus.docs, |d| d.label.as_deref());
        BenchCorpus { name: name.into(), corpus, order }
    }

    pub fn synthetic(spec: &SyntheticSpec) -> Self {
        BenchCorpus::new(spec.to_string(), &spec.generate(), &Preprocessor::default())
    }

    pub fn len(&self) -> usize {
        self.corpus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corpus.is_empty()
    }

    /// The first `n` documents in label-stratified order, kept in their
    /// original relative order.
    pub fn subset(&self, n: usize) -> Result<PreprocessedCorpus, BenchError> {
        if n > self.len() {
            return Err(BenchError::TooFewDocuments { requested: n, available: self.len() });
        }
        let mut picked: Vec<usize> = self.order[..n].to_vec();
        picked.sort_unstable();
        let docs = picked.iter().map(|&i| self.corpus.docs[i].clone()).collect::<Vec<_>>();
        let warnings = docs
            .iter()
            .filter(|d| d.tokens.is_empty())
            .map(|d| format!("document {} has no tokens after preprocessing", d.id))
            .collect();
        Ok(PreprocessedCorpus { docs, warnings })
    }

    pub fn matrix(&self, n: usize) -> Result<(PreprocessedCorpus, TermDocumentMatrix), BenchError> {
        let sub = self.subset(n)?;
        let tdm = TermDocumentMatrix::build(&sub)?;
        Ok((sub, tdm))
    }
}

pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

pub(crate) fn check_sizes(sizes: &[usize], available: usize) -> Result<(), BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    if let Some(&n) = sizes.iter().find(|&&n| n > available) {
        return Err(BenchError::TooFewDocuments { requested: n, available });
    }
    Ok(())
}
