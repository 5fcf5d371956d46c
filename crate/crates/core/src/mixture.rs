//! Gaussian kernel mixtures and what an encoding says about them.
//!
//! A raw (`1/n`-averaged) encoding `g` of samples `x_1..x_n` satisfies, as the
//! basis dimension grows,
//!
//! * `Re (1/d) ⟨exp(i x A), g⟩ → f̂(x) = (1/n) Σ_k G_α(x, x_k)` ([`reconstruct`]),
//! * `Re (1/d) ⟨g_1, g_2⟩ → (1/mn) Σ_{p,q} G_α(x_p, x'_q)` ([`encoding_similarity`]
//!   against [`mixture_similarity`]).
//!
//! On row-normalized encodings both quantities are rescaled by a per-row
//! constant.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::features::{ComplexEmbedding, FeatureBasis};
use crate::kernel::{gaussian_kernel, Bandwidth};
use crate::matrix::inner;

#[derive(Debug, Clone, Copy)]
pub struct KernelMixture<'a> {
    samples: &'a [[f64; 3]],
    alpha: Bandwidth,
}

impl<'a> KernelMixture<'a> {
    pub fn new(samples: &'a [[f64; 3]], alpha: Bandwidth) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Parameter {
                name: "samples",
                reason: "a kernel mixture needs at least one sample".into(),
            });
        }
        Ok(Self { samples, alpha })
    }

    pub fn samples(&self) -> &'a [[f64; 3]] {
        self.samples
    }

    pub fn alpha(&self) -> Bandwidth {
        self.alpha
    }

    /// `f̂(x) = (1/n) Σ_k G_α(x, x_k)`.
    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let s: f64 = self
            .samples
            .iter()
            .map(|&xk| gaussian_kernel(x, xk, self.alpha))
            .sum();
        s / self.samples.len() as f64
    }

    pub fn eval_many(&self, queries: &[[f64; 3]]) -> Vec<f64> {
        queries.par_iter().map(|&x| self.eval(x)).collect()
    }
}

pub fn mixture_eval(m: &KernelMixture<'_>, x: [f64; 3]) -> f64 {
    m.eval(x)
}

/// `Re (1/d) ⟨exp(i x A), g⟩` at each query point.
pub fn reconstruct(
    g: &ComplexEmbedding,
    basis: &FeatureBasis,
    queries: &[[f64; 3]],
) -> Result<Vec<f64>> {
    if g.dim() != basis.dim() {
        return Err(Error::Contract(format!(
            "encoding has dimension {} but basis has {}",
            g.dim(),
            basis.dim()
        )));
    }
    let inv_d = 1.0 / basis.dim() as f64;
    Ok(queries
        .par_iter()
        .map_init(
            || vec![num_complex::Complex64::new(0.0, 0.0); basis.dim()],
            |buf, &x| {
                basis.embed_point_into(x, buf);
                inner(buf, g.values()).re * inv_d
            },
        )
        .collect())
}

/// `(1/mn) Σ_{p,q} G_α(x_p, x'_q)`.
pub fn mixture_similarity(m1: &KernelMixture<'_>, m2: &KernelMixture<'_>) -> Result<f64> {
    if m1.alpha != m2.alpha {
        return Err(Error::Contract(format!(
            "mixtures have different bandwidths ({} vs {})",
            m1.alpha.get(),
            m2.alpha.get()
        )));
    }
    let total: f64 = m1
        .samples
        .par_iter()
        .map(|&xp| {
            m2.samples
                .iter()
                .map(|&xq| gaussian_kernel(xp, xq, m1.alpha))
                .sum::<f64>()
        })
        .collect::<Vec<_>>()
        .iter()
        .sum();
    Ok(total / (m1.samples.len() * m2.samples.len()) as f64)
}

/// `Re (1/d) ⟨g_1, g_2⟩`.
pub fn encoding_similarity(g1: &ComplexEmbedding, g2: &ComplexEmbedding) -> Result<f64> {
    if g1.dim() != g2.dim() {
        return Err(Error::Contract(format!(
            "encodings have dimensions {} and {}",
            g1.dim(),
            g2.dim()
        )));
    }
    Ok(inner(g1.values(), g2.values()).re / g1.dim() as f64)
}

/// `per_axis³` grid over the bounding box of `samples` padded by `2/α`,
/// x varying slowest.
pub fn reconstruction_grid(
    samples: &[[f64; 3]],
    alpha: Bandwidth,
    per_axis: usize,
) -> Vec<[f64; 3]> {
    let pad = 2.0 / alpha.get();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in samples {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    for i in 0..3 {
        lo[i] -= pad;
        hi[i] += pad;
    }
    cube_grid(lo, hi, per_axis)
}

/// `per_axis³` grid spanning `[lo, hi]` inclusive on each axis.
pub fn cube_grid(lo: [f64; 3], hi: [f64; 3], per_axis: usize) -> Vec<[f64; 3]> {
    let coord = |i: usize, t: usize| {
        if per_axis <= 1 {
            0.5 * (lo[i] + hi[i])
        } else {
            lo[i] + (hi[i] - lo[i]) * t as f64 / (per_axis - 1) as f64
        }
    };
    let mut out = Vec::with_capacity(per_axis.pow(3));
    for a in 0..per_axis {
        for b in 0..per_axis {
            for c in 0..per_axis {
                out.push([coord(0, a), coord(1, b), coord(2, c)]);
            }
        }
    }
    out
}

/// Pearson correlation coefficient. NaN when either input is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    sab / (saa * sbb).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode_cloud;
    use crate::features::make_basis;

    fn bw(v: f64) -> Bandwidth {
        Bandwidth::new(v).unwrap()
    }

    #[test]
    fn eval_closed_forms() {
        let one = [[0.2, 0.1, -0.3]];
        let m = KernelMixture::new(&one, bw(30.0)).unwrap();
        assert_eq!(m.eval(one[0]), 1.0);
        assert!(m.eval([0.9, 0.9, 0.9]) < 1e-6);

        let a = 13.0;
        let two = [[-1.0 / a, 0.0, 0.0], [1.0 / a, 0.0, 0.0]];
        let m = KernelMixture::new(&two, bw(a)).unwrap();
        assert!((m.eval([0.0; 3]) - (-0.5f64).exp()).abs() < 1e-15);
        assert!(KernelMixture::new(&[], bw(1.0)).is_err());
    }

    #[test]
    fn reconstruct_single_point_at_origin() {
        let b = make_basis(256, 30.0, 3).unwrap();
        let g = encode_cloud(&[[0.0; 3]], &b).unwrap();
        let v = reconstruct(&g, &b, &[[0.0; 3]]).unwrap();
        assert_eq!(v, vec![1.0]);
        let other = make_basis(128, 30.0, 3).unwrap();
        assert!(matches!(
            reconstruct(&g, &other, &[[0.0; 3]]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn similarity_contracts() {
        let p = [[0.0; 3]];
        let q = [[0.05, 0.0, 0.0]];
        let m1 = KernelMixture::new(&p, bw(10.0)).unwrap();
        let m2 = KernelMixture::new(&q, bw(10.0)).unwrap();
        assert_eq!(mixture_similarity(&m1, &m1).unwrap(), 1.0);
        assert_eq!(
            mixture_similarity(&m1, &m2).unwrap(),
            gaussian_kernel(p[0], q[0], bw(10.0))
        );
        let m3 = KernelMixture::new(&q, bw(11.0)).unwrap();
        assert!(mixture_similarity(&m1, &m3).is_err());

        let b = make_basis(64, 10.0, 1).unwrap();
        let g = encode_cloud(&p, &b).unwrap();
        assert_eq!(encoding_similarity(&g, &g).unwrap(), 1.0);
        let h = encode_cloud(&p, &make_basis(32, 10.0, 1).unwrap()).unwrap();
        assert!(encoding_similarity(&g, &h).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = cube_grid([0.0; 3], [1.0; 3], 4);
        assert_eq!(g.len(), 64);
        assert_eq!(g[0], [0.0; 3]);
        assert_eq!(g[63], [1.0; 3]);
        let samples = [[0.0; 3], [0.1, 0.0, 0.0]];
        let r = reconstruction_grid(&samples, bw(20.0), 3);
        assert!((r[0][0] + 0.1).abs() < 1e-15 && (r[26][0] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn pearson_basics() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((pearson(&a, &[2.0, 4.0, 6.0, 8.0]) - 1.0).abs() < 1e-15);
        assert!((pearson(&a, &[4.0, 3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
    }
}
