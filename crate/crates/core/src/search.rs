//! Exhaustive cosine search over a fixed set of real vectors.
//!
//! Scores for a chunk of queries are one matrix product against the stored
//! rows, so a whole dataset pass runs at GEMM speed instead of one
//! memory-bound scan per query. Chunks are processed in parallel and results
//! are collected in query order; each query's argmax is taken sequentially
//! over rows with a strict `>`, so ties go to the lowest row index no matter
//! how the work was split.

use rayon::prelude::*;

use crate::error::{check_dim, Error, Result};

/// Queries scored per matrix product.
const CHUNK: usize = 96;

/// Row-major matrix of real vectors with cached Euclidean norms.
#[derive(Clone, Debug)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
    norms: Vec<f64>,
}

/// Best row for one query.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowMatch {
    pub row: usize,
    pub similarity: f64,
}

impl RealMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if data.len() % dim != 0 {
            return Err(Error::param("data", "length is not a multiple of dim"));
        }
        let norms = data.chunks_exact(dim).map(norm).collect();
        Ok(Self { dim, data, norms })
    }

    /// Gathers selected rows of another matrix.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.dim);
        let mut norms = Vec::with_capacity(rows.len());
        for &r in rows {
            data.extend_from_slice(self.row(r));
            norms.push(self.norms[r]);
        }
        Self {
            dim: self.dim,
            data,
            norms,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.norms.len()
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn norm(&self, r: usize) -> f64 {
        self.norms[r]
    }

    /// Cosine of every row against one query.
    pub fn scores(&self, query: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim, query.len())?;
        let qn = norm(query);
        if qn == 0.0 {
            return Err(Error::UndefinedSimilarity);
        }
        let mut dots = vec![0.0; self.rows()];
        gemm_nt(1, self.dim, self.rows(), query, &self.data, &mut dots);
        Ok(dots
            .iter()
            .zip(&self.norms)
            .map(|(dot, rn)| cosine_from(*dot, *rn, qn))
            .collect())
    }

    /// Best row for each of `count` queries. `fill(q, buf)` writes the real
    /// vector of query `q` into `buf` (length `dim`).
    pub fn best_matches<F>(&self, count: usize, fill: F) -> Result<Vec<RowMatch>>
    where
        F: Fn(usize, &mut [f64]) -> Result<()> + Sync,
    {
        if self.rows() == 0 {
            return Err(Error::Empty("no rows to search"));
        }
        let starts: Vec<usize> = (0..count).step_by(CHUNK).collect();
        let per_chunk: Vec<Result<Vec<RowMatch>>> = starts
            .par_iter()
            .map(|&start| {
                let len = CHUNK.min(count - start);
                let mut queries = vec![0.0; len * self.dim];
                for (q, buf) in queries.chunks_exact_mut(self.dim).enumerate() {
                    fill(start + q, buf)?;
                }
                self.best_for_chunk(&queries, len)
            })
            .collect();
        let mut out = Vec::with_capacity(count);
        for chunk in per_chunk {
            out.extend(chunk?);
        }
        Ok(out)
    }

    fn best_for_chunk(&self, queries: &[f64], len: usize) -> Result<Vec<RowMatch>> {
        let rows = self.rows();
        let mut dots = vec![0.0; len * rows];
        gemm_nt(len, self.dim, rows, queries, &self.data, &mut dots);
        queries
            .chunks_exact(self.dim)
            .zip(dots.chunks_exact(rows))
            .map(|(q, row_dots)| {
                let qn = norm(q);
                if qn == 0.0 {
                    return Err(Error::UndefinedSimilarity);
                }
                let mut best = RowMatch {
                    row: 0,
                    similarity: f64::NEG_INFINITY,
                };
                for (r, (dot, rn)) in row_dots.iter().zip(&self.norms).enumerate() {
                    let s = cosine_from(*dot, *rn, qn);
                    if s > best.similarity {
                        best = RowMatch {
                            row: r,
                            similarity: s,
                        };
                    }
                }
                Ok(best)
            })
            .collect()
    }
}

#[inline]
fn cosine_from(dot: f64, row_norm: f64, query_norm: f64) -> f64 {
    if row_norm == 0.0 {
        // a zero row has no defined similarity and can never be a best match
        f64::NEG_INFINITY
    } else {
        (dot / (row_norm * query_norm)).clamp(-1.0, 1.0)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `c (m x n) = a (m x k) * b^T` where `b` is stored row-major as `n x k`.
fn gemm_nt(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), n * k);
    debug_assert_eq!(c.len(), m * n);
    if m == 0 || n == 0 {
        return;
    }
    // SAFETY: the slices hold exactly m*k, n*k and m*n elements and the
    // strides below address them in bounds; `c` does not alias `a` or `b`.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            k as isize,
            1,
            b.as_ptr(),
            1,
            k as isize,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}
