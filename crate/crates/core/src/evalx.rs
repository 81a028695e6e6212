//! External evaluation of a clustering against class labels.

use std::collections::BTreeMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::refine::ClusterAssignment;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("precision and recall must lie in [0, 1], got p={p}, r={r}")]
    OutOfRange { p: f64, r: f64 },
    #[error("{labels} labels for {docs} documents")]
    LengthMismatch { labels: usize, docs: usize },
    #[error("documents without a class label: {0:?}")]
    Unlabeled(Vec<usize>),
    #[error("no documents to evaluate")]
    Empty,
}

/// Harmonic mean of precision and recall; 0 when both are 0.
pub fn f_measure(p: f64, r: f64) -> Result<f64, EvalError> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&r) {
        return Err(EvalError::OutOfRange { p, r });
    }
    if p + r == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * p * r / (p + r))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterScore {
    pub cluster: usize,
    pub size: usize,
    pub best_class: Option<String>,
    pub precision: f64,
    pub recall: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub clusters: Vec<ClusterScore>,
    /// Size-weighted mean of the per-cluster best F.
    pub overall_f: f64,
    pub n_docs: usize,
}

impl EvalReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "cluster_id,best_class,precision,recall,f")?;
        for c in &self.clusters {
            writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6}",
                c.cluster,
                c.best_class.as_deref().unwrap_or(""),
                c.precision,
                c.recall,
                c.f
            )?;
        }
        writeln!(out, "# overall_f={:.6}", self.overall_f)
    }
}

/// Scores each non-empty cluster by the class that maximises its F-measure
/// (first class in name order on ties), then weights by cluster size.
pub fn evaluate(assignment: &ClusterAssignment, labels: &[Option<String>]) -> Result<EvalReport, EvalError> {
    let n = assignment.labels.len();
    if labels.len() != n {
        return Err(EvalError::LengthMismatch { labels: labels.len(), docs: n });
    }
    if n == 0 {
        return Err(EvalError::Empty);
    }
    let missing: Vec<usize> = labels.iter().enumerate().filter(|(_, l)| l.is_none()).map(|(i, _)| i).collect();
    if !missing.is_empty() {
        return Err(EvalError::Unlabeled(missing));
    }
    let k = assignment.k.max(assignment.labels.iter().map(|&l| l + 1).max().unwrap_or(0));
    let mut class_sizes: BTreeMap<&str, usize> = BTreeMap::new();
    let mut table: Vec<BTreeMap<&str, usize>> = vec![BTreeMap::new(); k];
    let mut sizes = vec![0usize; k];
    for (&c, l) in assignment.labels.iter().zip(labels) {
        let l = l.as_deref().unwrap();
        *class_sizes.entry(l).or_default() += 1;
        *table[c].entry(l).or_default() += 1;
        sizes[c] += 1;
    }
    let mut clusters = Vec::new();
    let mut weighted = 0.0;
    for (c, row) in table.iter().enumerate() {
        if sizes[c] == 0 {
            continue;
        }
        let mut best: Option<ClusterScore> = None;
        for (&class, &nij) in row {
            let p = nij as f64 / sizes[c] as f64;
            let r = nij as f64 / class_sizes[class] as f64;
            let f = f_measure(p, r)?;
            if best.as_ref().is_none_or(|b| f > b.f) {
                best = Some(ClusterScore {
                    cluster: c,
                    size: sizes[c],
                    best_class: Some(class.to_string()),
                    precision: p,
                    recall: r,
                    f,
                });
            }
        }
        let best = best.expect("non-empty cluster has a class");
        weighted += sizes[c] as f64 * best.f;
        clusters.push(best);
    }
    Ok(EvalReport { clusters, overall_f: weighted / n as f64, n_docs: n })
}
