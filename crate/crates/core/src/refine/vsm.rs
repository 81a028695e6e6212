//! Cosine-similarity reassignment in the vector space model.

use rayon::prelude::*;

use super::{argmax, check_inputs, recompute_means, ClusterAssignment, RefineError};
use crate::seeder::SeedClusters;
use crate::vector::{norm_sq, DocVectors};

/// Assigns every document to its most cosine-similar centroid (lowest index
/// on ties); similarity with a zero vector is 0.
pub fn assign_by_cosine(docs: &DocVectors, centroids: &[Vec<f64>]) -> Vec<usize> {
    let norms: Vec<f64> = centroids.iter().map(|c| norm_sq(c).sqrt()).collect();
    docs.rows()
        .par_iter()
        .map(|d| {
            let dn = d.norm_sq().sqrt();
            let sims: Vec<f64> = centroids
                .iter()
                .zip(&norms)
                .map(|(c, &cn)| if dn == 0.0 || cn == 0.0 { 0.0 } else { d.dot_dense(c) / (dn * cn) })
                .collect();
            argmax(&sims)
        })
        .collect()
}

/// Repeats cosine assignment and mean recomputation until no document moves
/// or `max_iter` updates have run. All-zero documents land in cluster 0.
pub fn vsm_assign(docs: &DocVectors, seeds: &SeedClusters, max_iter: usize) -> Result<ClusterAssignment, RefineError> {
    check_inputs(docs, seeds)?;
    let warnings = docs
        .rows()
        .iter()
        .enumerate()
        .filter(|(_, d)| d.is_zero())
        .map(|(i, _)| format!("document {i} has a zero vector; assigned to cluster 0"))
        .collect();
    let mut centroids = seeds.centroids();
    let mut labels = assign_by_cosine(docs, &centroids);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        centroids = recompute_means(docs, &labels, &centroids);
        let next = assign_by_cosine(docs, &centroids);
        if next == labels {
            converged = true;
            break;
        }
        labels = next;
    }
    Ok(ClusterAssignment {
        labels,
        k: centroids.len(),
        centroids,
        iterations,
        converged,
        objective_trace: Vec::new(),
        warnings,
    })
}
