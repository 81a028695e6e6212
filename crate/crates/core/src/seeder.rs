//! Initial clusters from maximal frequent document-itemsets.

use std::collections::HashMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::txdb::Itemset;
use crate::vector::{DimensionMismatch, DocVectors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("no clusters at this support; lower min_sup")]
    NoClusters,
    #[error("itemset member {member} is not a document ({n_docs} documents)")]
    UnknownDocument { member: u32, n_docs: usize },
    #[error("centroid of zero vectors")]
    NoVectors,
    #[error(transparent)]
    Dimension(#[from] DimensionMismatch),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedCluster {
    /// Document indices, ascending.
    pub members: Vec<usize>,
    pub centroid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedClusters {
    clusters: Vec<SeedCluster>,
    dim: usize,
}

impl SeedClusters {
    /// Seeds from explicit centroids, without member sets.
    pub fn from_centroids(centroids: Vec<Vec<f64>>) -> Result<Self, SeedError> {
        let dim = centroids.first().ok_or(SeedError::NoClusters)?.len();
        if let Some(bad) = centroids.iter().find(|c| c.len() != dim) {
            return Err(DimensionMismatch { left: dim, right: bad.len() }.into());
        }
        Ok(SeedClusters {
            clusters: centroids.into_iter().map(|centroid| SeedCluster { members: Vec::new(), centroid }).collect(),
            dim,
        })
    }

    pub fn k(&self) -> usize {
        self.clusters.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clusters(&self) -> &[SeedCluster] {
        &self.clusters
    }

    pub fn centroids(&self) -> Vec<Vec<f64>> {
        self.clusters.iter().map(|c| c.centroid.clone()).collect()
    }

    /// `cluster_id,doc_id` rows.
    pub fn write_members<W: Write>(&self, doc_ids: &[String], mut out: W) -> io::Result<()> {
        writeln!(out, "cluster_id,doc_id")?;
        for (j, c) in self.clusters.iter().enumerate() {
            for &m in &c.members {
                writeln!(out, "{j},{}", doc_ids[m])?;
            }
        }
        Ok(())
    }

    /// `cluster_id,w0,w1,...` rows, one per centroid.
    pub fn write_centroids<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (j, c) in self.clusters.iter().enumerate() {
            write!(out, "{j}")?;
            for x in &c.centroid {
                write!(out, ",{x}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Component-wise arithmetic mean.
pub fn centroid(vectors: &[&[f64]]) -> Result<Vec<f64>, SeedError> {
    let first = vectors.first().ok_or(SeedError::NoVectors)?;
    let mut sum = vec![0.0; first.len()];
    for v in vectors {
        if v.len() != sum.len() {
            return Err(DimensionMismatch { left: sum.len(), right: v.len() }.into());
        }
        sum.iter_mut().zip(v.iter()).for_each(|(s, x)| *s += x);
    }
    let n = vectors.len() as f64;
    sum.iter_mut().for_each(|s| *s /= n);
    Ok(sum)
}

/// One seed per maximal itemset, centred on the mean of its documents'
/// vectors. Itemsets whose centroids coincide exactly are merged into the
/// first of them.
pub fn seed_clusters(maximal: &[Itemset], docs: &DocVectors) -> Result<SeedClusters, SeedError> {
    if maximal.is_empty() {
        return Err(SeedError::NoClusters);
    }
    let mut clusters: Vec<SeedCluster> = Vec::with_capacity(maximal.len());
    let mut by_centroid: HashMap<Vec<u64>, usize> = HashMap::new();
    for itemset in maximal {
        let members: Vec<usize> = itemset.items().iter().map(|&i| i as usize).collect();
        if let Some(&bad) = itemset.items().iter().find(|&&i| i as usize >= docs.len()) {
            return Err(SeedError::UnknownDocument { member: bad, n_docs: docs.len() });
        }
        let centroid = docs.mean_of(&members);
        let key: Vec<u64> = centroid.iter().map(|x| x.to_bits()).collect();
        match by_centroid.get(&key) {
            Some(&j) => {
                let merged = &mut clusters[j].members;
                merged.extend(members);
                merged.sort_unstable();
                merged.dedup();
            }
            None => {
                by_centroid.insert(key, clusters.len());
                clusters.push(SeedCluster { members, centroid });
            }
        }
    }
    Ok(SeedClusters { clusters, dim: docs.dim() })
}
