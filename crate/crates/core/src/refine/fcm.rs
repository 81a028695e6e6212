//! Fuzzy c-means seeded from itemset centroids.
//!
//! Alternates the weighted-mean centre update
//! `c_j = Σ_i u_ij^m d_i / Σ_i u_ij^m` with the membership update
//! `u_ij = 1 / Σ_l (‖d_i − c_j‖ / ‖d_i − c_l‖)^(2/(m−1))`,
//! which never increases `T_m = Σ_i Σ_j u_ij^m ‖d_i − c_j‖²`.

use rayon::prelude::*;

use super::{check_inputs, harden, ClusterAssignment, MembershipMatrix, RefineConfig, RefineError};
use crate::seeder::SeedClusters;
use crate::vector::{norm_sq, DimensionMismatch, DocVectors, SparseVector};

#[derive(Debug, Clone, PartialEq)]
pub struct FcmOutcome {
    pub membership: MembershipMatrix,
    pub centroids: Vec<Vec<f64>>,
    /// Objective for the seed-derived memberships, then after each iteration.
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl FcmOutcome {
    pub fn assignment(&self) -> ClusterAssignment {
        ClusterAssignment {
            labels: harden(&self.membership),
            k: self.centroids.len(),
            centroids: self.centroids.clone(),
            iterations: self.iterations,
            converged: self.converged,
            objective_trace: self.objective_trace.clone(),
            warnings: Vec::new(),
        }
    }
}

pub fn fcm(docs: &DocVectors, seeds: &SeedClusters, cfg: &RefineConfig) -> Result<FcmOutcome, RefineError> {
    cfg.validate()?;
    check_inputs(docs, seeds)?;

    let mut centroids = seeds.centroids();
    let (mut u, objective) = update_memberships(docs, &centroids, cfg.m);
    let mut membership = MembershipMatrix { u, iteration: 0 };
    let mut trace = vec![objective];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iter {
        iterations += 1;
        centroids = update_centroids(docs, &membership, &centroids, cfg.m);
        let objective;
        (u, objective) = update_memberships(docs, &centroids, cfg.m);
        let next = MembershipMatrix { u, iteration: iterations };
        let delta = next.frobenius_delta(&membership);
        membership = next;
        trace.push(objective);
        if delta < cfg.epsilon {
            converged = true;
            break;
        }
    }

    Ok(FcmOutcome { membership, centroids, objective_trace: trace, iterations, converged })
}

/// `T_m` for the given memberships and centroids.
pub fn fcm_objective(
    u: &MembershipMatrix,
    centroids: &[Vec<f64>],
    docs: &DocVectors,
    m: f64,
) -> Result<f64, RefineError> {
    if u.n_docs() != docs.len() || u.k() != centroids.len() {
        return Err(DimensionMismatch { left: u.n_docs() * u.k(), right: docs.len() * centroids.len() }.into());
    }
    if let Some(c) = centroids.iter().find(|c| c.len() != docs.dim()) {
        return Err(DimensionMismatch { left: docs.dim(), right: c.len() }.into());
    }
    let norms: Vec<f64> = centroids.iter().map(|c| norm_sq(c)).collect();
    let per_doc: Vec<f64> = docs
        .rows()
        .par_iter()
        .zip(u.rows().par_iter())
        .map(|(d, row)| {
            row.iter()
                .zip(centroids.iter().zip(&norms))
                .map(|(&uij, (c, &n))| uij.powf(m) * d.sq_distance_dense(c, n))
                .sum::<f64>()
        })
        .collect();
    Ok(per_doc.iter().sum())
}

/// Memberships for every document, and `T_m` evaluated with them.
fn update_memberships(docs: &DocVectors, centroids: &[Vec<f64>], m: f64) -> (Vec<Vec<f64>>, f64) {
    let norms: Vec<f64> = centroids.iter().map(|c| norm_sq(c)).collect();
    let rows: Vec<(Vec<f64>, f64)> = docs.rows().par_iter().map(|d| membership_row(d, centroids, &norms, m)).collect();
    let objective = rows.iter().map(|(_, o)| o).sum();
    (rows.into_iter().map(|(r, _)| r).collect(), objective)
}

fn membership_row(doc: &SparseVector, centroids: &[Vec<f64>], norms: &[f64], m: f64) -> (Vec<f64>, f64) {
    let d2: Vec<f64> = centroids.iter().zip(norms).map(|(c, &n)| doc.sq_distance_dense(c, n)).collect();
    let mut row = vec![0.0; centroids.len()];
    if let Some(hit) = d2.iter().position(|&x| x == 0.0) {
        row[hit] = 1.0;
        return (row, 0.0);
    }
    // (d_min/d_l)^(2/(m−1)) keeps every weight in (0, 1].
    let exponent = 1.0 / (m - 1.0);
    let nearest = d2.iter().copied().fold(f64::INFINITY, f64::min);
    for (r, &x) in row.iter_mut().zip(&d2) {
        *r = (nearest / x).powf(exponent);
    }
    let total: f64 = row.iter().sum();
    row.iter_mut().for_each(|r| *r /= total);
    let objective = row.iter().zip(&d2).map(|(&u, &x)| u.powf(m) * x).sum();
    (row, objective)
}

fn update_centroids(docs: &DocVectors, u: &MembershipMatrix, previous: &[Vec<f64>], m: f64) -> Vec<Vec<f64>> {
    (0..previous.len())
        .into_par_iter()
        .map(|j| {
            let mut num = vec![0.0; docs.dim()];
            let mut den = 0.0;
            for (d, row) in docs.rows().iter().zip(u.rows()) {
                let w = row[j].powf(m);
                if w == 0.0 {
                    continue;
                }
                den += w;
                for (i, x) in d.iter() {
                    num[i] += w * x;
                }
            }
            if den == 0.0 {
                return previous[j].clone();
            }
            num.iter_mut().for_each(|x| *x /= den);
            num
        })
        .collect()
}
