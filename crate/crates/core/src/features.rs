//! Deterministic random-feature bases and complex exponential embeddings.
//!
//! A [`FeatureBasis`] is a `3 × dim` matrix of frequencies. Instead of i.i.d.
//! Gaussian draws, every row holds the standard normal quantiles
//! `Φ⁻¹(j / (dim + 1))`, `j = 1..=dim`, in an order given by a seeded
//! Fisher-Yates shuffle, then scaled by the bandwidth. The shuffle is driven by
//! ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with the 64-bit basis seed, the
//! three rows shuffled in order `x, y, z` from the same stream.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_positive, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::quantile::normal_quantile;

/// Which of the two bases of the dense encoder a seed is derived for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisRole {
    /// Geometry basis (bandwidth α, dimension d).
    A,
    /// Adjacency basis (bandwidth β, dimension p).
    B,
}

impl BasisRole {
    fn tag(self) -> u64 {
        match self {
            BasisRole::A => 0x4153_4953_5f41, // "ASIS_A"
            BasisRole::B => 0x4153_4953_5f42,
        }
    }
}

/// Derive the basis seed for `role` from a user-facing seed (SplitMix64 finalizer).
pub fn role_seed(seed: u64, role: BasisRole) -> u64 {
    let mut z = seed ^ role.tag().wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureBasis {
    /// Unscaled quantiles, row-major `3 × dim`.
    quantiles: Vec<f64>,
    /// `quantiles * bandwidth`, row-major `3 × dim`.
    matrix: Vec<f64>,
    bandwidth: f64,
    dim: usize,
    seed: u64,
}

impl FeatureBasis {
    pub fn new(dim: usize, bandwidth: f64, seed: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter {
                name: "dim",
                reason: "must be at least 1".into(),
            });
        }
        check_positive("bandwidth", bandwidth)?;

        let levels: Vec<f64> = (1..=dim)
            .map(|j| normal_quantile(j as f64 / (dim + 1) as f64))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut quantiles = Vec::with_capacity(3 * dim);
        for _ in 0..3 {
            let mut row = levels.clone();
            row.shuffle(&mut rng);
            quantiles.extend_from_slice(&row);
        }
        let matrix = quantiles.iter().map(|q| q * bandwidth).collect();
        Ok(Self {
            quantiles,
            matrix,
            bandwidth,
            dim,
            seed,
        })
    }

    /// Basis for `role` derived from a shared user seed.
    pub fn for_role(dim: usize, bandwidth: f64, seed: u64, role: BasisRole) -> Result<Self> {
        Self::new(dim, bandwidth, role_seed(seed, role))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Row `axis` (0 = x, 1 = y, 2 = z) of the scaled matrix.
    pub fn row(&self, axis: usize) -> &[f64] {
        &self.matrix[axis * self.dim..(axis + 1) * self.dim]
    }

    /// Row `axis` of the unscaled quantile matrix.
    pub fn quantile_row(&self, axis: usize) -> &[f64] {
        &self.quantiles[axis * self.dim..(axis + 1) * self.dim]
    }

    /// Frequency vector `a_k`.
    pub fn column(&self, k: usize) -> [f64; 3] {
        [
            self.matrix[k],
            self.matrix[self.dim + k],
            self.matrix[2 * self.dim + k],
        ]
    }

    /// Write `exp(i x·A)` into `out` (length `dim`).
    pub fn embed_point_into(&self, x: [f64; 3], out: &mut [Complex64]) {
        debug_assert_eq!(out.len(), self.dim);
        let (r0, r1, r2) = (self.row(0), self.row(1), self.row(2));
        for (k, z) in out.iter_mut().enumerate() {
            let theta = x[0] * r0[k] + x[1] * r1[k] + x[2] * r2[k];
            let (s, c) = libm::sincos(theta);
            *z = Complex64::new(c, s);
        }
    }

    pub fn embed_point(&self, x: [f64; 3]) -> ComplexEmbedding {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        self.embed_point_into(x, &mut out);
        ComplexEmbedding(out)
    }
}

/// Shorthand for [`FeatureBasis::new`].
pub fn make_basis(dim: usize, bandwidth: f64, seed: u64) -> Result<FeatureBasis> {
    FeatureBasis::new(dim, bandwidth, seed)
}

/// A `dim`-length complex vector, either a single point's `exp(i x A)` or an
/// aggregate of those.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexEmbedding(pub Vec<Complex64>);

impl ComplexEmbedding {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }
}

pub(crate) fn validate_points(points: &[[f64; 3]]) -> Result<()> {
    match points.iter().position(|p| !p.iter().all(|c| c.is_finite())) {
        Some(row) => Err(Error::NonFinite { row }),
        None => Ok(()),
    }
}

/// `exp(i X A)` as an `n × dim` matrix.
pub fn embed(points: &[[f64; 3]], basis: &FeatureBasis) -> Result<ComplexMatrix> {
    if points.is_empty() {
        return Err(Error::Parameter {
            name: "points",
            reason: "must be non-empty".into(),
        });
    }
    validate_points(points)?;
    Ok(embed_unchecked(points, basis))
}

pub(crate) fn embed_unchecked(points: &[[f64; 3]], basis: &FeatureBasis) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(points.len(), basis.dim());
    out.par_rows_mut()
        .zip(points.par_iter())
        .for_each(|(row, &x)| basis.embed_point_into(x, row));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dim_one_is_zero_column() {
        let b = make_basis(1, 1.0, 99).unwrap();
        assert_eq!(b.column(0), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            make_basis(0, 1.0, 0),
            Err(Error::Parameter { name: "dim", .. })
        ));
        for bw in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                make_basis(4, bw, 0),
                Err(Error::Parameter {
                    name: "bandwidth",
                    ..
                })
            ));
        }
    }

    #[test]
    fn rows_are_permutations_of_the_same_levels() {
        let b = make_basis(64, 3.0, 5).unwrap();
        let mut rows: Vec<Vec<f64>> = (0..3).map(|r| b.quantile_row(r).to_vec()).collect();
        assert_ne!(rows[0], rows[1], "rows should be shuffled independently");
        for r in &mut rows {
            r.sort_by(f64::total_cmp);
        }
        assert_eq!(rows[0], rows[1]);
        assert_eq!(rows[1], rows[2]);
    }

    #[test]
    fn power_of_two_scaling_is_exact() {
        let one = make_basis(256, 1.0, 11).unwrap();
        let two = make_basis(256, 2.0, 11).unwrap();
        for axis in 0..3 {
            for (a, b) in one.row(axis).iter().zip(two.row(axis)) {
                assert_eq!(2.0 * a, *b);
            }
        }
    }

    #[test]
    fn origin_embeds_to_ones() {
        let b = make_basis(32, 7.0, 1).unwrap();
        let e = b.embed_point([0.0; 3]);
        assert!(e.values().iter().all(|z| *z == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn point_and_bandwidth_trade_off() {
        let x = [0.1, -0.3, 0.25];
        let a = make_basis(128, 4.0, 3).unwrap();
        let b = make_basis(128, 2.0, 3).unwrap();
        let ea = a.embed_point(x);
        let eb = b.embed_point([2.0 * x[0], 2.0 * x[1], 2.0 * x[2]]);
        assert_eq!(ea, eb);
    }

    #[test]
    fn non_finite_row_is_named() {
        let b = make_basis(8, 1.0, 0).unwrap();
        let pts = [[0.0; 3], [1.0, f64::NAN, 0.0]];
        assert!(matches!(embed(&pts, &b), Err(Error::NonFinite { row: 1 })));
        assert!(embed(&[], &b).is_err());
    }

    #[test]
    fn role_seeds_differ() {
        assert_ne!(role_seed(7, BasisRole::A), role_seed(7, BasisRole::B));
        assert_ne!(role_seed(7, BasisRole::A), role_seed(8, BasisRole::A));
    }
}
