//! Dense and sparse vector primitives shared by seeding and refinement.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("dimension mismatch: {left} vs {right}")]
pub struct DimensionMismatch {
    pub left: usize,
    pub right: usize,
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<(), DimensionMismatch> {
    if a.len() != b.len() {
        return Err(DimensionMismatch { left: a.len(), right: b.len() });
    }
    Ok(())
}

pub fn squared_euclidean(a: &[f64], b: &[f64]) -> Result<f64, DimensionMismatch> {
    check_dims(a, b)?;
    Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> Result<f64, DimensionMismatch> {
    squared_euclidean(a, b).map(f64::sqrt)
}

/// Cosine of the angle between `a` and `b`; 0 when either has zero norm.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64, DimensionMismatch> {
    check_dims(a, b)?;
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = norm_sq(a).sqrt();
    let nb = norm_sq(b).sqrt();
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (na * nb))
}

pub fn norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum()
}

/// Non-zero entries of a vector, ascending by index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseVector {
    /// Builds from `(index, value)` pairs; zeros are dropped and indices must
    /// be strictly increasing.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut v = SparseVector::default();
        for (i, x) in pairs {
            debug_assert!(v.indices.last().is_none_or(|&last| last < i));
            if x != 0.0 {
                v.indices.push(i);
                v.values.push(x);
            }
        }
        v
    }

    pub fn from_dense(dense: &[f64]) -> Self {
        Self::from_pairs(dense.iter().copied().enumerate())
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (i, x) in self.iter() {
            out[i] = x;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices.iter().copied().zip(self.values.iter().copied())
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn is_zero(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.indices.binary_search(&index) {
            Ok(pos) => self.values[pos],
            Err(_) => 0.0,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|x| x.is_finite())
    }

    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.iter().map(|(i, x)| x * dense[i]).sum()
    }

    /// `‖self − dense‖²`, given `dense_norm_sq = Σ dense[i]²` summed in index
    /// order. The off-support part is `dense_norm_sq` minus the on-support
    /// squares summed in the same order, so a vector equal to `dense` yields
    /// exactly zero.
    pub fn sq_distance_dense(&self, dense: &[f64], dense_norm_sq: f64) -> f64 {
        let mut on_support = 0.0;
        let mut dense_on_support = 0.0;
        for (i, x) in self.iter() {
            let c = dense[i];
            on_support += (x - c) * (x - c);
            dense_on_support += c * c;
        }
        on_support + (dense_norm_sq - dense_on_support).max(0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_pairs(self.iter().map(|(i, x)| (i, x * factor)))
    }
}

/// A fixed-dimension collection of sparse document vectors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DocVectors {
    dim: usize,
    rows: Vec<SparseVector>,
}

impl DocVectors {
    pub fn new(dim: usize, rows: Vec<SparseVector>) -> Self {
        debug_assert!(rows.iter().all(|r| r.indices.last().is_none_or(|&i| i < dim)));
        DocVectors { dim, rows }
    }

    /// All rows must share one length.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self, DimensionMismatch> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(DimensionMismatch { left: dim, right: bad.len() });
        }
        Ok(DocVectors { dim, rows: rows.iter().map(|r| SparseVector::from_dense(r)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.rows[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.to_dense(self.dim)).collect()
    }

    /// Component-wise mean of the selected rows, accumulated in the given
    /// order.
    pub fn mean_of(&self, members: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for &m in members {
            for (i, x) in self.rows[m].iter() {
                out[i] += x;
            }
        }
        let n = members.len() as f64;
        if n > 0.0 {
            out.iter_mut().for_each(|x| *x /= n);
        }
        out
    }
}
