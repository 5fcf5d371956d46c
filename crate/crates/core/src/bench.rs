//! Runtime scaling harness and parameter sweeps.
//!
//! Timings wrap the same encoder functions the library exposes; nothing here
//! changes numerical output.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use crate::encoder::{
    encode_cloud, encode_dense_factorized, encode_dense_sharp, encode_dense_soft_exact,
    encode_pointwise,
};
use crate::error::Result;
use crate::features::{BasisRole, FeatureBasis};
use crate::kernel::{radius_for_beta, Bandwidth};
use crate::matrix::cosine;
use crate::mixture::{pearson, reconstruct, reconstruction_grid, KernelMixture};
use crate::shapes::{corrupt, disc_patch, gen_shape, uniform_ball, Corruption, ShapeKind};

/// Largest cloud the quadratic sharp path is timed on.
pub const SHARP_CAP: usize = 20_000;
const COMPLEX_BYTES: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchPath {
    Factorized,
    Sharp,
}

impl fmt::Display for BenchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Factorized => "factorized",
            Self::Sharp => "sharp",
        })
    }
}

/// Analytic working-set size in complex entries: `np + nd + pd` for the
/// factorized path, `n² + nd` for an explicit sharp adjacency.
pub fn mem_estimate_entries(path: BenchPath, n: u64, d: u64, p: u64) -> u64 {
    match path {
        BenchPath::Factorized => n * p + n * d + p * d,
        BenchPath::Sharp => n * n + n * d,
    }
}

pub fn mem_estimate_bytes(path: BenchPath, n: u64, d: u64, p: u64) -> u64 {
    mem_estimate_entries(path, n, d, p) * COMPLEX_BYTES
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub path: BenchPath,
    pub threads: usize,
    /// `None` when the path was skipped (sharp above [`SHARP_CAP`]).
    pub median_ms: Option<f64>,
    pub mem_estimate_bytes: u64,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    pub paths: Vec<BenchPath>,
    pub sharp_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            alpha: 30.0,
            beta: 6.0,
            seed: 0,
            paths: vec![BenchPath::Factorized, BenchPath::Sharp],
            sharp_cap: SHARP_CAP,
        }
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Time the dense encoders over uniform-ball clouds of each size.
pub fn bench_scaling(
    sizes: &[usize],
    d: usize,
    p: usize,
    reps: usize,
    config: &BenchConfig,
) -> Result<Vec<BenchRow>> {
    if reps < 3 {
        return Err(crate::Error::Parameter {
            name: "reps",
            reason: "need at least 3 repetitions".into(),
        });
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(crate::Error::Parameter {
            name: "sizes",
            reason: "must be strictly ascending".into(),
        });
    }
    let basis_a = FeatureBasis::for_role(d, config.alpha, config.seed, BasisRole::A)?;
    let basis_b = FeatureBasis::for_role(p, config.beta, config.seed, BasisRole::B)?;
    let radius = radius_for_beta(Bandwidth::new(config.beta)?);
    let threads = rayon::current_num_threads();

    let mut rows = Vec::new();
    for &n in sizes {
        let points = uniform_ball(n, 1.0, config.seed ^ n as u64);
        for &path in &config.paths {
            let skip = path == BenchPath::Sharp && n > config.sharp_cap;
            let median_ms = if skip {
                None
            } else {
                let mut times = Vec::with_capacity(reps);
                for _ in 0..reps {
                    let start = Instant::now();
                    let out = match path {
                        BenchPath::Factorized => {
                            encode_dense_factorized(&points, &basis_a, &basis_b)?
                        }
                        BenchPath::Sharp => encode_dense_sharp(&points, radius, &basis_a)?,
                    };
                    times.push(start.elapsed().as_secs_f64() * 1e3);
                    std::hint::black_box(out);
                }
                Some(median(&times))
            };
            rows.push(BenchRow {
                n,
                path,
                threads,
                median_ms,
                mem_estimate_bytes: mem_estimate_bytes(path, n as u64, d as u64, p as u64),
            });
        }
    }
    Ok(rows)
}

/// CSV with header `n,path,threads,median_ms,mem_estimate_bytes`; skipped
/// measurements are written as `skipped`.
pub fn write_bench_csv(rows: &[BenchRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "n,path,threads,median_ms,mem_estimate_bytes")?;
    for r in rows {
        let ms = r
            .median_ms
            .map_or_else(|| "skipped".to_string(), |m| format!("{m:.3}"));
        writeln!(
            w,
            "{},{},{},{},{}",
            r.n, r.path, r.threads, ms, r.mem_estimate_bytes
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub seeds: usize,
    /// Samples on the reconstruction disc patch.
    pub patch_points: usize,
    pub patch_radius: f64,
    /// Reconstruction grid resolution per axis.
    pub grid: usize,
    /// Points in the factorized-vs-exact cloud.
    pub dense_points: usize,
    pub noise_sigma: f64,
    /// Points on the torus used for cross-location similarity.
    pub shape_points: usize,
    pub locations: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seeds: 5,
            patch_points: 100,
            patch_radius: 0.15,
            grid: 32,
            dense_points: 200,
            noise_sigma: 0.01,
            shape_points: 2000,
            locations: 8,
        }
    }
}

/// Medians over seeds for one `(α, β, d, p)` combination.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub beta: f64,
    pub d: usize,
    pub p: usize,
    pub seeds: usize,
    /// Pearson correlation of the reconstruction with the kernel mixture.
    pub recon_corr: f64,
    /// `1 −` mean row cosine of factorized vs exact soft encodings.
    pub factorized_err: f64,
    /// Cosine between a patch encoding and its σ-perturbed copy.
    pub noise_self_sim: f64,
    /// Mean pairwise cosine between encodings at distinct torus locations.
    pub cross_sim: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub ds: Vec<usize>,
    pub ps: Vec<usize>,
}

struct CellSample {
    recon_corr: f64,
    factorized_err: f64,
    noise_self_sim: f64,
    cross_sim: f64,
}

fn sweep_cell(
    alpha: f64,
    beta: f64,
    d: usize,
    p: usize,
    seed: u64,
    cfg: &SweepConfig,
) -> Result<CellSample> {
    let bw_alpha = Bandwidth::new(alpha)?;
    let basis_a = FeatureBasis::for_role(d, alpha, seed, BasisRole::A)?;
    let basis_b = FeatureBasis::for_role(p, beta, seed, BasisRole::B)?;

    let patch = disc_patch(cfg.patch_points, cfg.patch_radius, seed.wrapping_add(101));
    let g = encode_cloud(&patch, &basis_a)?;
    let grid = reconstruction_grid(&patch, bw_alpha, cfg.grid);
    let recon = reconstruct(&g, &basis_a, &grid)?;
    let truth = KernelMixture::new(&patch, bw_alpha)?.eval_many(&grid);
    let recon_corr = pearson(&recon, &truth);

    let cloud = uniform_ball(cfg.dense_points, 1.0, seed.wrapping_add(202));
    let fact = encode_dense_factorized(&cloud, &basis_a, &basis_b)?;
    let exact = encode_dense_soft_exact(&cloud, beta, &basis_a)?;
    let mean_cos = (0..cloud.len())
        .map(|j| cosine(fact.row(j), exact.row(j)))
        .sum::<f64>()
        / cloud.len() as f64;

    let patch_cloud = crate::shapes::PointCloud::new(patch.clone(), "patch")?;
    let noisy = corrupt(
        &patch_cloud,
        Corruption::Perturb(cfg.noise_sigma),
        seed.wrapping_add(303),
    )?;
    let gn = encode_cloud(noisy.coords(), &basis_a)?;
    let noise_self_sim = cosine(g.values(), gn.values());

    let shape = gen_shape(ShapeKind::Torus, cfg.shape_points, seed.wrapping_add(404))?;
    let radius = radius_for_beta(Bandwidth::new(beta)?);
    let stride = shape.len() / cfg.locations.max(1);
    let encodings = (0..cfg.locations)
        .map(|i| encode_pointwise(shape.coords(), i * stride, radius, &basis_a))
        .collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    let mut pairs = 0usize;
    for i in 0..encodings.len() {
        for j in i + 1..encodings.len() {
            total += cosine(encodings[i].values(), encodings[j].values());
            pairs += 1;
        }
    }

    Ok(CellSample {
        recon_corr,
        factorized_err: 1.0 - mean_cos,
        noise_self_sim,
        cross_sim: total / pairs.max(1) as f64,
    })
}

/// Evaluate every combination of the grid; one row per combination.
pub fn sweep_params(grid: &SweepGrid, cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    for (name, empty) in [
        ("alphas", grid.alphas.is_empty()),
        ("betas", grid.betas.is_empty()),
        ("ds", grid.ds.is_empty()),
        ("ps", grid.ps.is_empty()),
    ] {
        if empty {
            return Err(crate::Error::Parameter {
                name,
                reason: "sweep grid must be non-empty".into(),
            });
        }
    }
    let mut rows = Vec::new();
    for &alpha in &grid.alphas {
        for &beta in &grid.betas {
            for &d in &grid.ds {
                for &p in &grid.ps {
                    let samples = (0..cfg.seeds as u64)
                        .map(|s| sweep_cell(alpha, beta, d, p, s, cfg))
                        .collect::<Result<Vec<_>>>()?;
                    let med = |f: fn(&CellSample) -> f64| {
                        median(&samples.iter().map(f).collect::<Vec<_>>())
                    };
                    rows.push(SweepRow {
                        alpha,
                        beta,
                        d,
                        p,
                        seeds: cfg.seeds,
                        recon_corr: med(|c| c.recon_corr),
                        factorized_err: med(|c| c.factorized_err),
                        noise_self_sim: med(|c| c.noise_self_sim),
                        cross_sim: med(|c| c.cross_sim),
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv(rows: &[SweepRow], mut w: impl Write) -> std::io::Result<()> {
    writeln!(
        w,
        "alpha,beta,d,p,seeds,recon_corr,factorized_err,noise_self_sim,cross_sim"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6}",
            r.alpha,
            r.beta,
            r.d,
            r.p,
            r.seeds,
            r.recon_corr,
            r.factorized_err,
            r.noise_self_sim,
            r.cross_sim
        )?;
    }
    Ok(())
}
