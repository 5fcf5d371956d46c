//! Synthetic point clouds with analytic normals, and corruption models
//! (Gaussian perturbation, density gradient, density stripes).

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{Error, Result};

pub const TORUS_MAJOR: f64 = 0.7;
pub const TORUS_MINOR: f64 = 0.25;
pub const CYLINDER_RADIUS: f64 = 0.5;
pub const CYLINDER_HALF_HEIGHT: f64 = 0.6;
pub const PLANE_HALF_WIDTH: f64 = 0.7;

/// Number of equal-width bands used by [`Corruption::DensityStripes`].
pub const STRIPE_BANDS: usize = 8;
/// Keep probability at the far end of [`Corruption::DensityGradient`].
pub const GRADIENT_MIN_KEEP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    coords: Vec<[f64; 3]>,
    normals: Option<Vec<[f64; 3]>>,
    name: String,
}

impl PointCloud {
    pub fn new(coords: Vec<[f64; 3]>, name: impl Into<String>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Parameter {
                name: "coords",
                reason: "a point cloud needs at least one point".into(),
            });
        }
        Ok(Self {
            coords,
            normals: None,
            name: name.into(),
        })
    }

    pub fn with_normals(mut self, normals: Vec<[f64; 3]>) -> Result<Self> {
        if normals.len() != self.coords.len() {
            return Err(Error::Contract(format!(
                "{} normals for {} points",
                normals.len(),
                self.coords.len()
            )));
        }
        if let Some(i) = normals.iter().position(|n| (norm3(*n) - 1.0).abs() > 1e-6) {
            return Err(Error::Contract(format!("normal {i} is not unit length")));
        }
        self.normals = Some(normals);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[[f64; 3]] {
        &self.coords
    }

    pub fn normals(&self) -> Option<&[[f64; 3]]> {
        self.normals.as_deref()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn select(&self, keep: &[bool], name: String) -> Result<Self> {
        let coords: Vec<_> = self
            .coords
            .iter()
            .zip(keep)
            .filter_map(|(p, &k)| k.then_some(*p))
            .collect();
        if coords.is_empty() {
            return Err(Error::DegenerateOutput(format!(
                "corruption removed every point of `{}`",
                self.name
            )));
        }
        let normals = self.normals.as_ref().map(|ns| {
            ns.iter()
                .zip(keep)
                .filter_map(|(n, &k)| k.then_some(*n))
                .collect()
        });
        Ok(Self {
            coords,
            normals,
            name,
        })
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Sphere,
    PlanePatch,
    Cylinder,
    Torus,
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sphere" => Ok(Self::Sphere),
            "plane_patch" | "plane-patch" | "plane" => Ok(Self::PlanePatch),
            "cylinder" => Ok(Self::Cylinder),
            "torus" => Ok(Self::Torus),
            other => Err(Error::Parameter {
                name: "kind",
                reason: format!(
                    "unknown shape `{other}` (expected sphere, plane_patch, cylinder or torus)"
                ),
            }),
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sphere => "sphere",
            Self::PlanePatch => "plane_patch",
            Self::Cylinder => "cylinder",
            Self::Torus => "torus",
        })
    }
}

/// Sample `n` points uniformly (by area) on a surface that fits inside the
/// unit ball, with analytic unit normals.
///
/// * sphere: unit sphere at the origin
/// * plane_patch: `[-0.7, 0.7]²` in the `z = 0` plane, normal `+z`
/// * cylinder: radius 0.5 around the z axis, `|z| ≤ 0.6`, radial normals
/// * torus: major radius 0.7, minor radius 0.25 around the z axis
pub fn gen_shape(kind: ShapeKind, n: usize, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            reason: "must be at least 1".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(n);
    let mut normals = Vec::with_capacity(n);
    for _ in 0..n {
        let (p, nrm) = match kind {
            ShapeKind::Sphere => {
                let v = unit_vector(&mut rng);
                (v, v)
            }
            ShapeKind::PlanePatch => {
                let x = rng.gen_range(-PLANE_HALF_WIDTH..PLANE_HALF_WIDTH);
                let y = rng.gen_range(-PLANE_HALF_WIDTH..PLANE_HALF_WIDTH);
                ([x, y, 0.0], [0.0, 0.0, 1.0])
            }
            ShapeKind::Cylinder => {
                let t = rng.gen_range(0.0..TAU);
                let z = rng.gen_range(-CYLINDER_HALF_HEIGHT..CYLINDER_HALF_HEIGHT);
                let (s, c) = t.sin_cos();
                ([CYLINDER_RADIUS * c, CYLINDER_RADIUS * s, z], [c, s, 0.0])
            }
            ShapeKind::Torus => {
                // Area element is proportional to R + r cos(v): rejection sample v.
                let v = loop {
                    let v = rng.gen_range(0.0..TAU);
                    let w: f64 = rng.gen();
                    if w * (TORUS_MAJOR + TORUS_MINOR) <= TORUS_MAJOR + TORUS_MINOR * v.cos() {
                        break v;
                    }
                };
                let u = rng.gen_range(0.0..TAU);
                let (su, cu) = u.sin_cos();
                let (sv, cv) = v.sin_cos();
                let ring = TORUS_MAJOR + TORUS_MINOR * cv;
                (
                    [ring * cu, ring * su, TORUS_MINOR * sv],
                    [cv * cu, cv * su, sv],
                )
            }
        };
        coords.push(p);
        normals.push(nrm);
    }
    PointCloud::new(coords, kind.to_string())?.with_normals(normals)
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        ];
        let n = norm3(v);
        if n > 1e-12 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// `n` points uniform in the ball of `radius` around the origin.
pub fn uniform_ball(n: usize, radius: f64, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let p: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            if norm3(p) <= 1.0 {
                break [radius * p[0], radius * p[1], radius * p[2]];
            }
        })
        .collect()
}

/// `n` points uniform on a flat disc of `radius` in the `z = 0` plane.
pub fn disc_patch(n: usize, radius: f64, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r = radius * rng.gen::<f64>().sqrt();
            let t = rng.gen_range(0.0..TAU);
            [r * t.cos(), r * t.sin(), 0.0]
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Corruption {
    /// i.i.d. Gaussian noise with this standard deviation per coordinate.
    Perturb(f64),
    /// Keep probability falls linearly along x from 1.0 to 0.1.
    DensityGradient,
    /// Drop every other one of 8 equal-width bands along x.
    DensityStripes,
}

impl Corruption {
    /// Parse a model name; `sigma` is only consulted for `perturb`.
    pub fn parse(model: &str, sigma: f64) -> Result<Self> {
        match model {
            "perturb" => Ok(Self::Perturb(sigma)),
            "density_gradient" | "density-gradient" | "gradient" => Ok(Self::DensityGradient),
            "density_stripes" | "density-stripes" | "stripes" => Ok(Self::DensityStripes),
            other => Err(Error::Parameter {
                name: "model",
                reason: format!(
                    "unknown corruption `{other}` (expected perturb, density_gradient or density_stripes)"
                ),
            }),
        }
    }
}

fn x_extent(pc: &PointCloud) -> (f64, f64) {
    pc.coords()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p[0]), hi.max(p[0]))
        })
}

/// Apply a corruption model. Surviving points keep their relative order.
pub fn corrupt(pc: &PointCloud, model: Corruption, seed: u64) -> Result<PointCloud> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        Corruption::Perturb(sigma) => {
            if !(sigma.is_finite() && sigma >= 0.0) {
                return Err(Error::Parameter {
                    name: "sigma",
                    reason: format!("must be a non-negative finite number, got {sigma}"),
                });
            }
            if sigma == 0.0 {
                return Ok(pc.clone());
            }
            let noise = Normal::new(0.0, sigma).expect("sigma validated above");
            let coords = pc
                .coords()
                .iter()
                .map(|p| {
                    [
                        p[0] + noise.sample(&mut rng),
                        p[1] + noise.sample(&mut rng),
                        p[2] + noise.sample(&mut rng),
                    ]
                })
                .collect();
            Ok(PointCloud {
                coords,
                normals: pc.normals.clone(),
                name: format!("{}+perturb({sigma})", pc.name),
            })
        }
        Corruption::DensityGradient => {
            let (lo, hi) = x_extent(pc);
            let span = hi - lo;
            let keep: Vec<bool> = pc
                .coords()
                .iter()
                .map(|p| {
                    let t = if span > 0.0 { (p[0] - lo) / span } else { 0.0 };
                    let prob = 1.0 - (1.0 - GRADIENT_MIN_KEEP) * t;
                    rng.gen::<f64>() < prob
                })
                .collect();
            pc.select(&keep, format!("{}+gradient", pc.name))
        }
        Corruption::DensityStripes => {
            let (lo, hi) = x_extent(pc);
            let span = hi - lo;
            let keep: Vec<bool> = pc
                .coords()
                .iter()
                .map(|p| {
                    if span <= 0.0 {
                        return true;
                    }
                    let band = (((p[0] - lo) / span) * STRIPE_BANDS as f64).floor() as usize;
                    band.min(STRIPE_BANDS - 1).is_multiple_of(2)
                })
                .collect();
            pc.select(&keep, format!("{}+stripes", pc.name))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_normal_is_position() {
        let pc = gen_shape(ShapeKind::Sphere, 500, 1).unwrap();
        for (p, n) in pc.coords().iter().zip(pc.normals().unwrap()) {
            let r = norm3(*p);
            for i in 0..3 {
                assert!((p[i] / r - n[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn plane_normals_identical() {
        let pc = gen_shape(ShapeKind::PlanePatch, 200, 2).unwrap();
        let ns = pc.normals().unwrap();
        assert!(ns.iter().all(|n| *n == ns[0]));
    }

    #[test]
    fn torus_satisfies_implicit_equation() {
        let pc = gen_shape(ShapeKind::Torus, 10_000, 3).unwrap();
        for p in pc.coords() {
            let ring = (p[0] * p[0] + p[1] * p[1]).sqrt() - TORUS_MAJOR;
            let residual = ring * ring + p[2] * p[2] - TORUS_MINOR * TORUS_MINOR;
            assert!(residual.abs() < 1e-9, "residual {residual}");
        }
    }

    #[test]
    fn all_shapes_in_unit_ball() {
        for kind in [
            ShapeKind::Sphere,
            ShapeKind::PlanePatch,
            ShapeKind::Cylinder,
            ShapeKind::Torus,
        ] {
            let pc = gen_shape(kind, 1000, 4).unwrap();
            assert!(
                pc.coords().iter().all(|p| norm3(*p) <= 1.0 + 1e-12),
                "{kind}"
            );
            assert!(pc
                .normals()
                .unwrap()
                .iter()
                .all(|n| (norm3(*n) - 1.0).abs() < 1e-6));
        }
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(matches!(
            "cube".parse::<ShapeKind>(),
            Err(Error::Parameter { name: "kind", .. })
        ));
        assert!(Corruption::parse("blur", 0.0).is_err());
    }

    #[test]
    fn perturb_zero_is_identity() {
        let pc = gen_shape(ShapeKind::Cylinder, 300, 5).unwrap();
        assert_eq!(corrupt(&pc, Corruption::Perturb(0.0), 9).unwrap(), pc);
    }

    #[test]
    fn perturb_keeps_normals_and_count() {
        let pc = gen_shape(ShapeKind::Sphere, 300, 5).unwrap();
        let noisy = corrupt(&pc, Corruption::Perturb(0.01), 9).unwrap();
        assert_eq!(noisy.len(), pc.len());
        assert_eq!(noisy.normals(), pc.normals());
        assert_ne!(noisy.coords(), pc.coords());
        assert!(corrupt(&pc, Corruption::Perturb(-1.0), 9).is_err());
    }

    #[test]
    fn stripes_on_a_uniform_line() {
        let coords = (0..800).map(|i| [i as f64 / 799.0, 0.0, 0.0]).collect();
        let pc = PointCloud::new(coords, "line").unwrap();
        let kept = corrupt(&pc, Corruption::DensityStripes, 0).unwrap();
        assert!((350..=450).contains(&kept.len()), "kept {}", kept.len());
        // Exactly the points in even bands survive.
        let expected = pc
            .coords()
            .iter()
            .filter(|p| ((p[0] * 8.0).floor() as usize).min(7).is_multiple_of(2))
            .count();
        assert_eq!(kept.len(), expected);
    }

    #[test]
    fn density_corruptions_preserve_order() {
        let pc = gen_shape(ShapeKind::Torus, 2000, 6).unwrap();
        for model in [Corruption::DensityGradient, Corruption::DensityStripes] {
            let out = corrupt(&pc, model, 1).unwrap();
            assert!(out.len() < pc.len());
            let mut it = pc.coords().iter();
            for p in out.coords() {
                assert!(it.any(|q| q == p), "order not preserved");
            }
        }
    }

    #[test]
    fn gradient_thins_the_far_end() {
        let coords = (0..20_000)
            .map(|i| [i as f64 / 19_999.0, 0.0, 0.0])
            .collect();
        let pc = PointCloud::new(coords, "line").unwrap();
        let out = corrupt(&pc, Corruption::DensityGradient, 3).unwrap();
        let low = out.coords().iter().filter(|p| p[0] < 0.1).count() as f64;
        let high = out.coords().iter().filter(|p| p[0] > 0.9).count() as f64;
        // Expected keep ratio ~0.955 vs ~0.145 over 2000-point windows.
        assert!(low > 1800.0 && high < 400.0, "low {low} high {high}");
    }

    #[test]
    fn single_point_survives_stripes() {
        let pc = PointCloud::new(vec![[0.5, 0.0, 0.0]], "one").unwrap();
        assert_eq!(
            corrupt(&pc, Corruption::DensityStripes, 0).unwrap().len(),
            1
        );
    }

    #[test]
    fn empty_selection_is_degenerate() {
        let pc = gen_shape(ShapeKind::PlanePatch, 10, 1).unwrap();
        assert!(matches!(
            pc.select(&[false; 10], "none".into()),
            Err(Error::DegenerateOutput(_))
        ));
        assert_eq!(pc.select(&[true; 10], "all".into()).unwrap().len(), 10);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_shape(ShapeKind::Torus, 100, 42).unwrap();
        let b = gen_shape(ShapeKind::Torus, 100, 42).unwrap();
        assert_eq!(a, b);
    }
}
