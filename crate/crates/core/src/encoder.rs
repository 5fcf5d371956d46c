//! Local geometry encoders.
//!
//! Three routes to the same object:
//!
//! * [`encode_pointwise`]: one neighborhood at a time,
//!   `(1/n') Σ_k exp(i (x_k − x_0) A)` over points with `‖x_k − x_0‖ < r`.
//! * [`encode_dense_sharp`] / [`encode_dense_soft_exact`]: all points at once,
//!   `G = (J 𝒜) ./ 𝒜` with `𝒜 = exp(i X A)` and a sharp (radius) or soft
//!   (Gaussian decay) adjacency. Quadratic in `n`; these are reference paths.
//! * [`encode_dense_factorized`]: the soft adjacency approximated as
//!   `ℬ ℬᴴ / p`, `ℬ = exp(i X B)`, evaluated as `ℬ (ℬᴴ 𝒜)` so that no `n × n`
//!   quantity ever exists. Cost `Θ(n p d)`, auxiliary memory
//!   `O(block · p + p · d)` on top of the `n × d` input/output embeddings.
//!
//! Dense paths return raw sums (no `1/n'`); [`encode_pointwise`] averages.
//! Row `j` of the sharp path therefore equals `n'_j` times the pointwise
//! encoding of point `j`.

use matrixmultiply::CGemmOption;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{check_positive, Error, Result};
use crate::features::{embed_unchecked, validate_points, ComplexEmbedding, FeatureBasis};
use crate::kernel::dist_sq;
use crate::matrix::{norm, ComplexMatrix};

/// Rows of `ℬ` materialized at once by the factorized path.
pub const FACTORIZED_BLOCK_ROWS: usize = 512;

/// Adjacency notion an encoding was produced with.
#[derive(Debug, Clone, PartialEq)]
pub enum Neighborhood {
    /// Sharp adjacency, `‖x_j − x_k‖ < radius`.
    Radius(f64),
    /// Soft adjacency `exp(−β² ‖x_j − x_k‖² / 2)`.
    Beta(f64),
    /// Independent soft encodings per β, concatenated along the feature axis.
    MultiBeta(Vec<f64>),
}

/// `n × d` matrix of local geometry encodings plus provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingMatrix {
    pub rows: ComplexMatrix,
    pub normalized: bool,
    /// Rows carry the `1/n'` neighbor average (pointwise convention).
    pub averaged: bool,
    pub alpha: f64,
    pub neighborhood: Neighborhood,
}

impl EncodingMatrix {
    pub fn n(&self) -> usize {
        self.rows.rows()
    }

    pub fn d(&self) -> usize {
        self.rows.cols()
    }

    pub fn row(&self, j: usize) -> &[Complex64] {
        self.rows.row(j)
    }

    pub fn embedding(&self, j: usize) -> ComplexEmbedding {
        ComplexEmbedding(self.row(j).to_vec())
    }
}

fn check_cloud(points: &[[f64; 3]]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::Parameter {
            name: "points",
            reason: "must be non-empty".into(),
        });
    }
    validate_points(points)
}

/// Divide `acc` elementwise by the unit-modulus row `phase`.
fn divide_phase(acc: &mut [Complex64], phase: &[Complex64]) {
    for (z, w) in acc.iter_mut().zip(phase) {
        let m = w.norm_sqr();
        assert!(m > 0.0, "zero entry in exp(iXA)");
        *z = *z * w.conj() / m;
    }
}

/// Encoding of the neighborhood of `points[center]` within `radius`,
/// averaged over the `n'` neighbors (center included).
pub fn encode_pointwise(
    points: &[[f64; 3]],
    center: usize,
    radius: f64,
    basis: &FeatureBasis,
) -> Result<ComplexEmbedding> {
    check_positive("radius", radius)?;
    let x0 = *points.get(center).ok_or(Error::Index {
        index: center,
        len: points.len(),
    })?;
    validate_points(points)?;
    let r2 = radius * radius;
    let mut acc = vec![Complex64::new(0.0, 0.0); basis.dim()];
    let mut term = acc.clone();
    let mut count = 0usize;
    for &x in points {
        if dist_sq(x, x0) < r2 {
            let shifted = [x[0] - x0[0], x[1] - x0[1], x[2] - x0[2]];
            basis.embed_point_into(shifted, &mut term);
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
            count += 1;
        }
    }
    let inv = 1.0 / count as f64;
    acc.iter_mut().for_each(|z| *z *= inv);
    Ok(ComplexEmbedding(acc))
}

/// Mean embedding `(1/n) Σ_k exp(i x_k A)` of a whole cloud, taken as-is
/// (callers pass coordinates already relative to their center).
pub fn encode_cloud(points: &[[f64; 3]], basis: &FeatureBasis) -> Result<ComplexEmbedding> {
    check_cloud(points)?;
    let mut acc = vec![Complex64::new(0.0, 0.0); basis.dim()];
    let mut term = acc.clone();
    for &x in points {
        basis.embed_point_into(x, &mut term);
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += t;
        }
    }
    let inv = 1.0 / points.len() as f64;
    acc.iter_mut().for_each(|z| *z *= inv);
    Ok(ComplexEmbedding(acc))
}

/// `n'_j`: number of points strictly within `radius` of each point (itself included).
pub fn neighbor_counts(points: &[[f64; 3]], radius: f64) -> Vec<usize> {
    let r2 = radius * radius;
    points
        .par_iter()
        .map(|&x0| points.iter().filter(|&&x| dist_sq(x, x0) < r2).count())
        .collect()
}

/// Shared kernel of the two quadratic paths: row `j` is
/// `(Σ_k w(x_j, x_k) 𝒜_k) ./ 𝒜_j`.
fn dense_weighted<W>(points: &[[f64; 3]], basis: &FeatureBasis, weight: W) -> ComplexMatrix
where
    W: Fn([f64; 3], [f64; 3]) -> f64 + Sync,
{
    let phases = embed_unchecked(points, basis);
    let mut out = ComplexMatrix::zeros(points.len(), basis.dim());
    out.par_rows_mut().enumerate().for_each(|(j, acc)| {
        let xj = points[j];
        for (k, &xk) in points.iter().enumerate() {
            let w = weight(xj, xk);
            if w == 0.0 {
                continue;
            }
            for (a, z) in acc.iter_mut().zip(phases.row(k)) {
                *a += w * z;
            }
        }
        divide_phase(acc, phases.row(j));
    });
    out
}

/// Dense encoding with the sharp adjacency `J[j,k] = [‖x_j − x_k‖ < r]`.
///
/// `J` is evaluated on the fly row by row; time is `Θ(n² + |J| d)`.
pub fn encode_dense_sharp(
    points: &[[f64; 3]],
    radius: f64,
    basis: &FeatureBasis,
) -> Result<EncodingMatrix> {
    check_positive("radius", radius)?;
    check_cloud(points)?;
    let r2 = radius * radius;
    let rows = dense_weighted(
        points,
        basis,
        |a, b| {
            if dist_sq(a, b) < r2 {
                1.0
            } else {
                0.0
            }
        },
    );
    Ok(EncodingMatrix {
        rows,
        normalized: false,
        averaged: false,
        alpha: basis.bandwidth(),
        neighborhood: Neighborhood::Radius(radius),
    })
}

/// Sharp encoding with each row divided by its neighbor count, i.e. exactly
/// [`encode_pointwise`] for every point.
pub fn encode_dense_sharp_averaged(
    points: &[[f64; 3]],
    radius: f64,
    basis: &FeatureBasis,
) -> Result<EncodingMatrix> {
    let mut enc = encode_dense_sharp(points, radius, basis)?;
    let counts = neighbor_counts(points, radius);
    enc.rows
        .par_rows_mut()
        .zip(counts.par_iter())
        .for_each(|(row, &c)| {
            let inv = 1.0 / c as f64;
            row.iter_mut().for_each(|z| *z *= inv);
        });
    enc.averaged = true;
    Ok(enc)
}

/// Dense encoding with the exact soft adjacency `Ĵ[j,k] = exp(−β² ‖x_j − x_k‖² / 2)`.
///
/// This is the `p → ∞` limit of [`encode_dense_factorized`] (before
/// normalization, and with the factorized path's `1/p` scaling).
pub fn encode_dense_soft_exact(
    points: &[[f64; 3]],
    beta: f64,
    basis: &FeatureBasis,
) -> Result<EncodingMatrix> {
    check_positive("beta", beta)?;
    check_cloud(points)?;
    let half_b2 = 0.5 * beta * beta;
    let rows = dense_weighted(points, basis, |a, b| (-half_b2 * dist_sq(a, b)).exp());
    Ok(EncodingMatrix {
        rows,
        normalized: false,
        averaged: false,
        alpha: basis.bandwidth(),
        neighborhood: Neighborhood::Beta(beta),
    })
}

/// `c ← a · b + beta_c · c` for row-major `a: m × k`, `b: k × n`, `c: m × n`,
/// with `a` given by explicit strides.
#[allow(clippy::too_many_arguments)]
fn zgemm_into(
    m: usize,
    k: usize,
    n: usize,
    a: &[Complex64],
    rsa: usize,
    csa: usize,
    b: &[Complex64],
    c: &mut [Complex64],
    accumulate: bool,
) {
    if m == 0 || k == 0 || n == 0 {
        return;
    }
    assert!(a.len() > (m - 1) * rsa + (k - 1) * csa, "lhs too short");
    assert!(b.len() >= k * n, "rhs too short");
    assert!(c.len() >= m * n, "output too short");
    let beta = if accumulate { [1.0, 0.0] } else { [0.0, 0.0] };
    // SAFETY: bounds asserted above; Complex64 is repr(C) { re, im }, the
    // same layout as matrixmultiply's `[f64; 2]`.
    unsafe {
        matrixmultiply::zgemm(
            CGemmOption::Standard,
            CGemmOption::Standard,
            m,
            k,
            n,
            [1.0, 0.0],
            a.as_ptr().cast(),
            rsa as isize,
            csa as isize,
            b.as_ptr().cast(),
            n as isize,
            1,
            beta,
            c.as_mut_ptr().cast(),
            n as isize,
            1,
        );
    }
}

/// `ℬᴴ 𝒜 / p` accumulated over row blocks: a `p × d` matrix.
fn projected_geometry(
    points: &[[f64; 3]],
    phases: &ComplexMatrix,
    basis_b: &FeatureBasis,
) -> ComplexMatrix {
    let (p, d) = (basis_b.dim(), phases.cols());
    let mut proj = ComplexMatrix::zeros(p, d);
    // Rows of the output are split across threads; each thread reduces over
    // all points in the same fixed order, so results do not depend on the
    // thread count.
    let rows_per_task = p.div_ceil(rayon::current_num_threads().max(1)).max(16);
    let mut conj_b = ComplexMatrix::zeros(FACTORIZED_BLOCK_ROWS.min(points.len()), p);
    for (blk, chunk) in points.chunks(FACTORIZED_BLOCK_ROWS).enumerate() {
        let start = blk * FACTORIZED_BLOCK_ROWS;
        let rows = chunk.len();
        // exp(-i x B) = conj(exp(i x B)) exactly.
        conj_b
            .par_rows_mut()
            .take(rows)
            .zip(chunk.par_iter())
            .for_each(|(row, x)| basis_b.embed_point_into([-x[0], -x[1], -x[2]], row));
        let lhs = &conj_b.as_slice()[..rows * p];
        let rhs = &phases.as_slice()[start * d..(start + rows) * d];
        proj.as_mut_slice()
            .par_chunks_mut(rows_per_task * d)
            .enumerate()
            .for_each(|(t, out)| {
                let i0 = t * rows_per_task;
                let m = out.len() / d;
                // (ℬᴴ)[i, j] = conj(ℬ)[j, i]: row stride 1, column stride p.
                zgemm_into(m, rows, d, &lhs[i0..], 1, p, rhs, out, blk > 0);
            });
    }
    let inv_p = 1.0 / p as f64;
    proj.as_mut_slice().iter_mut().for_each(|z| *z *= inv_p);
    proj
}

/// Unnormalized factorized encoding, `(ℬ (ℬᴴ 𝒜) / p) ./ 𝒜`.
///
/// Converges to [`encode_dense_soft_exact`] as `p` grows.
pub fn encode_dense_factorized_raw(
    points: &[[f64; 3]],
    basis_a: &FeatureBasis,
    basis_b: &FeatureBasis,
) -> Result<EncodingMatrix> {
    check_cloud(points)?;
    let phases = embed_unchecked(points, basis_a);
    let proj = projected_geometry(points, &phases, basis_b);
    let (p, d) = (basis_b.dim(), basis_a.dim());

    let mut out = ComplexMatrix::zeros(points.len(), d);
    out.as_mut_slice()
        .par_chunks_mut(FACTORIZED_BLOCK_ROWS * d)
        .zip(points.par_chunks(FACTORIZED_BLOCK_ROWS))
        .enumerate()
        .for_each(|(blk, (out_blk, chunk))| {
            let rows = chunk.len();
            let mut b_blk = ComplexMatrix::zeros(rows, p);
            b_blk
                .row_iter_mut()
                .zip(chunk)
                .for_each(|(row, &x)| basis_b.embed_point_into(x, row));
            zgemm_into(
                rows,
                p,
                d,
                b_blk.as_slice(),
                p,
                1,
                proj.as_slice(),
                out_blk,
                false,
            );
            let start = blk * FACTORIZED_BLOCK_ROWS;
            for (i, acc) in out_blk.chunks_exact_mut(d).enumerate() {
                divide_phase(acc, phases.row(start + i));
            }
        });

    Ok(EncodingMatrix {
        rows: out,
        normalized: false,
        averaged: false,
        alpha: basis_a.bandwidth(),
        neighborhood: Neighborhood::Beta(basis_b.bandwidth()),
    })
}

/// Linear-time dense encoding, rows normalized to norm `√d`.
pub fn encode_dense_factorized(
    points: &[[f64; 3]],
    basis_a: &FeatureBasis,
    basis_b: &FeatureBasis,
) -> Result<EncodingMatrix> {
    normalize_rows(encode_dense_factorized_raw(points, basis_a, basis_b)?)
}

/// Factorized encodings for several adjacency bases, concatenated along the
/// feature axis. Each block is normalized on its own.
pub fn encode_multi_beta(
    points: &[[f64; 3]],
    basis_a: &FeatureBasis,
    bases_b: &[FeatureBasis],
) -> Result<EncodingMatrix> {
    if bases_b.is_empty() {
        return Err(Error::Parameter {
            name: "betas",
            reason: "need at least one β".into(),
        });
    }
    let parts = bases_b
        .iter()
        .map(|b| encode_dense_factorized(points, basis_a, b).map(|e| e.rows))
        .collect::<Result<Vec<_>>>()?;
    Ok(EncodingMatrix {
        rows: ComplexMatrix::hconcat(&parts),
        normalized: true,
        averaged: false,
        alpha: basis_a.bandwidth(),
        neighborhood: Neighborhood::MultiBeta(bases_b.iter().map(|b| b.bandwidth()).collect()),
    })
}

/// Scale every row to Euclidean norm `√d`.
pub fn normalize_rows(mut g: EncodingMatrix) -> Result<EncodingMatrix> {
    let d = g.d();
    let target = (d as f64).sqrt();
    let norms: Vec<f64> = g.rows.row_iter().map(norm).collect();
    if let Some(row) = norms
        .iter()
        .position(|&n| n.is_nan() || n <= f64::MIN_POSITIVE || !n.is_finite())
    {
        return Err(Error::DegenerateEncoding { row });
    }
    g.rows
        .par_rows_mut()
        .zip(norms.par_iter())
        .for_each(|(row, &n)| {
            let s = target / n;
            row.iter_mut().for_each(|z| *z *= s);
        });
    g.normalized = true;
    Ok(g)
}
