//! K-Means started from the seed centroids.

use rayon::prelude::*;

use super::{argmin, check_inputs, recompute_means, ClusterAssignment, RefineError};
use crate::seeder::SeedClusters;
use crate::vector::{norm_sq, DocVectors};

/// Assigns each document to its nearest centroid by Euclidean distance,
/// recomputes the means, and repeats until no assignment changes or
/// `max_iter` updates have run. A cluster that empties keeps its previous
/// centroid.
pub fn kmeans_assign(
    docs: &DocVectors,
    seeds: &SeedClusters,
    max_iter: usize,
) -> Result<ClusterAssignment, RefineError> {
    check_inputs(docs, seeds)?;
    let mut centroids = seeds.centroids();
    let (mut labels, wcss) = nearest(docs, &centroids);
    let mut trace = vec![wcss];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        centroids = recompute_means(docs, &labels, &centroids);
        let (next, wcss) = nearest(docs, &centroids);
        trace.push(wcss);
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
        objective_trace: trace,
        warnings: Vec::new(),
    })
}

/// Sum of squared distances from each document to its cluster's centroid.
pub fn within_cluster_ss(docs: &DocVectors, labels: &[usize], centroids: &[Vec<f64>]) -> f64 {
    let norms: Vec<f64> = centroids.iter().map(|c| norm_sq(c)).collect();
    docs.rows().iter().zip(labels).map(|(d, &l)| d.sq_distance_dense(&centroids[l], norms[l])).sum()
}

fn nearest(docs: &DocVectors, centroids: &[Vec<f64>]) -> (Vec<usize>, f64) {
    let norms: Vec<f64> = centroids.iter().map(|c| norm_sq(c)).collect();
    let picks: Vec<(usize, f64)> = docs
        .rows()
        .par_iter()
        .map(|d| {
            let d2: Vec<f64> = centroids.iter().zip(&norms).map(|(c, &n)| d.sq_distance_dense(c, n)).collect();
            let best = argmin(&d2);
            (best, d2[best])
        })
        .collect();
    let wcss = picks.iter().map(|&(_, d)| d).sum();
    (picks.into_iter().map(|(l, _)| l).collect(), wcss)
}
