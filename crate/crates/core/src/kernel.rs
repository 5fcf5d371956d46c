//! The Gaussian kernel realized by inner products of embeddings, and the
//! β ↔ neighborhood-radius rule of thumb.

use num_complex::Complex64;

use crate::error::{check_positive, Result};
use crate::features::FeatureBasis;
use crate::matrix::inner;

/// Tabulated `β · r` product used by [`radius_for_beta`].
pub const RADIUS_BETA_PRODUCT: f64 = 1.8;

/// A strictly positive bandwidth (α for the geometry basis, β for adjacency).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Bandwidth(f64);

impl Bandwidth {
    pub fn new(value: f64) -> Result<Self> {
        check_positive("bandwidth", value)?;
        Ok(Self(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub(crate) fn dist_sq(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
}

/// `exp(-α² ‖x − y‖² / 2)`.
pub fn gaussian_kernel(x: [f64; 3], y: [f64; 3], alpha: Bandwidth) -> f64 {
    let a = alpha.get();
    (-0.5 * a * a * dist_sq(x, y)).exp()
}

/// Monte Carlo estimate `(1/d) ⟨exp(ixA), exp(iyA)⟩` of the Gaussian kernel.
///
/// The real part converges to [`gaussian_kernel`]; the imaginary part to zero.
pub fn kernel_estimate_complex(x: [f64; 3], y: [f64; 3], basis: &FeatureBasis) -> Complex64 {
    let ex = basis.embed_point(x);
    let ey = basis.embed_point(y);
    inner(ex.values(), ey.values()) / basis.dim() as f64
}

pub fn kernel_estimate(x: [f64; 3], y: [f64; 3], basis: &FeatureBasis) -> f64 {
    kernel_estimate_complex(x, y, basis).re
}

/// Neighborhood radius matching adjacency bandwidth `beta`, `1.8 / β`.
pub fn radius_for_beta(beta: Bandwidth) -> f64 {
    radius_for_beta_with(beta, RADIUS_BETA_PRODUCT)
}

/// [`radius_for_beta`] with a caller-chosen `β · r` product.
pub fn radius_for_beta_with(beta: Bandwidth, product: f64) -> f64 {
    product / beta.get()
}
