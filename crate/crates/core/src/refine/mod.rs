//! Refinement of seed clusters: fuzzy c-means, K-Means and cosine
//! reassignment. All three start from the seed centroids and break ties
//! toward the lowest cluster index.

mod fcm;
mod kmeans;
mod vsm;

use std::fmt;
use std::io::{self, Write};

use thiserror::Error;

use crate::seeder::SeedClusters;
use crate::vector::{DimensionMismatch, DocVectors, SparseVector};

pub use crate::vector::{cosine_similarity, euclidean_distance};
pub use fcm::{fcm, fcm_objective, FcmOutcome};
pub use kmeans::{kmeans_assign, within_cluster_ss};
pub use vsm::{assign_by_cosine, vsm_assign};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RefineError {
    #[error("invalid refinement config: {0}")]
    InvalidConfig(String),
    #[error("refinement needs at least one cluster")]
    NoClusters,
    #[error("input contains non-finite values")]
    NonFinite,
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineConfig {
    /// Fuzziness exponent, > 1.
    pub m: f64,
    /// Stop once the Frobenius norm of the membership change drops below this.
    pub epsilon: f64,
    pub max_iter: usize,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig { m: 2.0, epsilon: 1e-4, max_iter: 300 }
    }
}

impl RefineConfig {
    pub fn validate(&self) -> Result<(), RefineError> {
        if !(self.m > 1.0 && self.m.is_finite()) {
            return Err(RefineError::InvalidConfig(format!("m must be > 1, got {}", self.m)));
        }
        if self.epsilon.is_nan() || self.epsilon <= 0.0 {
            return Err(RefineError::InvalidConfig(format!("epsilon must be > 0, got {}", self.epsilon)));
        }
        if self.max_iter == 0 {
            return Err(RefineError::InvalidConfig("max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Documents × clusters fuzzy membership degrees; each row sums to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMatrix {
    u: Vec<Vec<f64>>,
    /// Iteration that produced this matrix; 0 for the seed-derived one.
    pub iteration: usize,
}

impl MembershipMatrix {
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.u
    }

    pub fn get(&self, doc: usize, cluster: usize) -> f64 {
        self.u[doc][cluster]
    }

    pub fn n_docs(&self) -> usize {
        self.u.len()
    }

    pub fn k(&self) -> usize {
        self.u.first().map_or(0, Vec::len)
    }

    fn frobenius_delta(&self, other: &MembershipMatrix) -> f64 {
        self.u
            .iter()
            .zip(&other.u)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)))
            .sum::<f64>()
            .sqrt()
    }
}

/// Per-document argmax membership, lowest index on ties.
pub fn harden(u: &MembershipMatrix) -> Vec<usize> {
    u.rows().iter().map(|row| argmax(row)).collect()
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (j, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = j;
        }
    }
    best
}

pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (j, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = j;
        }
    }
    best
}

/// Hard clustering outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAssignment {
    /// Cluster index per document, each `< k`.
    pub labels: Vec<usize>,
    pub k: usize,
    pub centroids: Vec<Vec<f64>>,
    pub iterations: usize,
    pub converged: bool,
    /// Objective per iteration, starting from the seeds (within-cluster sum
    /// of squares for K-Means, the fuzzy objective for FCM); empty for cosine
    /// reassignment.
    pub objective_trace: Vec<f64>,
    pub warnings: Vec<String>,
}

impl ClusterAssignment {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// `doc_id,cluster_id` rows.
    pub fn write_csv<W: Write>(&self, doc_ids: &[String], mut out: W) -> io::Result<()> {
        writeln!(out, "doc_id,cluster_id")?;
        for (id, l) in doc_ids.iter().zip(&self.labels) {
            writeln!(out, "{id},{l}")?;
        }
        Ok(())
    }

    /// `iteration,objective` rows.
    pub fn write_trace<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "iteration,objective")?;
        for (i, v) in self.objective_trace.iter().enumerate() {
            writeln!(out, "{i},{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Technique {
    Fcm,
    KMeans,
    Vsm,
}

impl Technique {
    pub const ALL: [Technique; 3] = [Technique::Fcm, Technique::KMeans, Technique::Vsm];

    pub fn name(self) -> &'static str {
        match self {
            Technique::Fcm => "fcm",
            Technique::KMeans => "kmeans",
            Technique::Vsm => "vsm",
        }
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Technique {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fcm" => Ok(Technique::Fcm),
            "kmeans" => Ok(Technique::KMeans),
            "vsm" => Ok(Technique::Vsm),
            _ => Err(format!("unknown technique {s:?} (expected fcm|kmeans|vsm)")),
        }
    }
}

/// Result of any refinement; `membership` is set for FCM only.
#[derive(Debug, Clone, PartialEq)]
pub struct RefineOutcome {
    pub assignment: ClusterAssignment,
    pub membership: Option<MembershipMatrix>,
}

pub fn refine(
    technique: Technique,
    docs: &DocVectors,
    seeds: &SeedClusters,
    cfg: &RefineConfig,
) -> Result<RefineOutcome, RefineError> {
    Ok(match technique {
        Technique::Fcm => {
            let out = fcm(docs, seeds, cfg)?;
            RefineOutcome { assignment: out.assignment(), membership: Some(out.membership) }
        }
        Technique::KMeans => RefineOutcome { assignment: kmeans_assign(docs, seeds, cfg.max_iter)?, membership: None },
        Technique::Vsm => RefineOutcome { assignment: vsm_assign(docs, seeds, cfg.max_iter)?, membership: None },
    })
}

/// `doc_id,cluster_id,u0,u1,...` rows.
pub fn write_membership_csv<W: Write>(
    doc_ids: &[String],
    labels: &[usize],
    u: &MembershipMatrix,
    mut out: W,
) -> io::Result<()> {
    write!(out, "doc_id,cluster_id")?;
    for j in 0..u.k() {
        write!(out, ",u{j}")?;
    }
    writeln!(out)?;
    for ((id, l), row) in doc_ids.iter().zip(labels).zip(u.rows()) {
        write!(out, "{id},{l}")?;
        for x in row {
            write!(out, ",{x}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub(crate) fn check_inputs(docs: &DocVectors, seeds: &SeedClusters) -> Result<(), RefineError> {
    if seeds.k() == 0 {
        return Err(RefineError::NoClusters);
    }
    if seeds.dim() != docs.dim() {
        return Err(DimensionMismatch { left: docs.dim(), right: seeds.dim() }.into());
    }
    let finite_docs = docs.rows().iter().all(SparseVector::is_finite);
    let finite_seeds = seeds.clusters().iter().all(|c| c.centroid.iter().all(|x| x.is_finite()));
    if !finite_docs || !finite_seeds {
        return Err(RefineError::NonFinite);
    }
    Ok(())
}

/// Means of the documents assigned to each cluster; clusters left empty
/// keep their previous centroid.
pub(crate) fn recompute_means(docs: &DocVectors, labels: &[usize], previous: &[Vec<f64>]) -> Vec<Vec<f64>> {
    use rayon::prelude::*;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); previous.len()];
    for (i, &l) in labels.iter().enumerate() {
        members[l].push(i);
    }
    members
        .par_iter()
        .zip(previous.par_iter())
        .map(|(m, prev)| if m.is_empty() { prev.clone() } else { docs.mean_of(m) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harden_examples() {
        let u = MembershipMatrix { u: vec![vec![0.2, 0.8], vec![0.5, 0.5]], iteration: 0 };
        assert_eq!(harden(&u), [1, 0]);
        let one = MembershipMatrix { u: vec![vec![1.0]; 3], iteration: 0 };
        assert_eq!(harden(&one), [0, 0, 0]);
    }

    #[test]
    fn config_validation() {
        assert!(RefineConfig::default().validate().is_ok());
        for bad in [
            RefineConfig { m: 1.0, ..Default::default() },
            RefineConfig { m: f64::NAN, ..Default::default() },
            RefineConfig { epsilon: 0.0, ..Default::default() },
            RefineConfig { max_iter: 0, ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(RefineError::InvalidConfig(_))), "{bad:?}");
        }
    }

    #[test]
    fn technique_names() {
        for t in Technique::ALL {
            assert_eq!(t.name().parse::<Technique>().unwrap(), t);
        }
        assert!("spectral".parse::<Technique>().is_err());
    }
}
