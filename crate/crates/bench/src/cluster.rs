//! F-measure and runtime of the refinement techniques from shared seeds.

use std::io::{self, Write};
use std::time::Instant;

use docmine_core::refine::{refine, RefineConfig, Technique};
use docmine_core::{evaluate, mine_modified, seed_clusters, TransactionDB};

use crate::{check_sizes, BenchCorpus, BenchError};

pub const CLUSTER_HEADER: &str = "technique,dataset,n_docs,min_sup,k,f_measure,iterations,elapsed_ms";

#[derive(Debug, Clone)]
pub struct ClusterBenchConfig {
    pub sizes: Vec<usize>,
    pub min_sup: usize,
    pub techniques: Vec<Technique>,
    pub refine: RefineConfig,
}

impl Default for ClusterBenchConfig {
    fn default() -> Self {
        ClusterBenchConfig {
            sizes: vec![400, 600, 800, 1000],
            min_sup: 10,
            techniques: Technique::ALL.to_vec(),
            refine: RefineConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRow {
    pub technique: Technique,
    pub dataset: String,
    pub n_docs: usize,
    pub min_sup: usize,
    pub k: usize,
    pub f_measure: f64,
    pub iterations: usize,
    pub elapsed_ms: f64,
}

impl ClusterRow {
    pub fn write_csv<W: Write>(rows: &[ClusterRow], mut out: W) -> io::Result<()> {
        writeln!(out, "{CLUSTER_HEADER}")?;
        for r in rows {
            writeln!(
                out,
                "{},{},{},{},{},{:.6},{},{:.3}",
                r.technique, r.dataset, r.n_docs, r.min_sup, r.k, r.f_measure, r.iterations, r.elapsed_ms
            )?;
        }
        Ok(())
    }
}

/// For each size, mines and seeds once, then refines with every technique
/// from the same seeds. Elapsed time covers the refinement step only.
pub fn run_cluster_bench(corpus: &BenchCorpus, cfg: &ClusterBenchConfig) -> Result<Vec<ClusterRow>, BenchError> {
    check_sizes(&cfg.sizes, corpus.len())?;
    cfg.refine.validate()?;
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let (sub, tdm) = corpus.matrix(n)?;
        let db = TransactionDB::from_term_document_matrix(&tdm);
        let (mined, _) = mine_modified(&db, cfg.min_sup)?;
        let weights = tdm.tfidf();
        let seeds = seed_clusters(mined.maximal(), weights.documents())?;
        let labels = sub.labels();
        for &technique in &cfg.techniques {
            let start = Instant::now();
            let out = refine(technique, weights.documents(), &seeds, &cfg.refine)?;
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = evaluate(&out.assignment, &labels)?;
            rows.push(ClusterRow {
                technique,
                dataset: corpus.name.clone(),
                n_docs: n,
                min_sup: cfg.min_sup,
                k: seeds.k(),
                f_measure: report.overall_f,
                iterations: out.assignment.iterations,
                elapsed_ms,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SyntheticSpec;

    #[test]
    fn separable_corpus_scores_one_everywhere() {
        let spec: SyntheticSpec = "classes=3,docs=30,vocab=150,seed=3,mode=separable".parse().unwrap();
        let corpus = BenchCorpus::synthetic(&spec);
        let cfg = ClusterBenchConfig { sizes: vec![15, 30], min_sup: 4, ..Default::default() };
        let rows = run_cluster_bench(&corpus, &cfg).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert_eq!(r.f_measure, 1.0, "{r:?}");
            assert_eq!(r.k, 3);
        }
    }

    #[test]
    fn shared_seeds_give_equal_k() {
        let spec: SyntheticSpec = "classes=2,docs=48,vocab=400,seed=9".parse().unwrap();
        let corpus = BenchCorpus::synthetic(&spec);
        let cfg = ClusterBenchConfig { sizes: vec![48], min_sup: 10, ..Default::default() };
        let rows = run_cluster_bench(&corpus, &cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.k == rows[0].k));
        let mut buf = Vec::new();
        ClusterRow::write_csv(&rows, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with(CLUSTER_HEADER));
    }

    #[test]
    fn support_too_high_surfaces_seed_error() {
        let spec: SyntheticSpec = "classes=2,docs=20,vocab=100,mode=separable".parse().unwrap();
        let corpus = BenchCorpus::synthetic(&spec);
        let cfg = ClusterBenchConfig { sizes: vec![20], min_sup: 500, ..Default::default() };
        assert!(matches!(run_cluster_bench(&corpus, &cfg), Err(BenchError::Seed(_))));
    }
}
