//! `veckm` command-line interface.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on runtime errors.
//! Work runs on a rayon pool of `--threads` workers (fallback `VECKM_THREADS`,
//! default 1). Outputs do not depend on the thread count.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench::{self, BenchConfig, BenchPath, SweepConfig, SweepGrid};
use crate::encoder::{self, Neighborhood};
use crate::error::{Error, Result};
use crate::features::{BasisRole, FeatureBasis};
use crate::kernel::{self, Bandwidth};
use crate::mixture::{self, KernelMixture};
use crate::pcio::{self, CloudFormat, Precision};
use crate::shapes::{self, Corruption, ShapeKind};
use crate::ComplexEmbedding;

#[derive(Debug, Parser)]
#[command(
    name = "veckm",
    version,
    about = "Linear-time local point-cloud geometry encodings"
)]
pub struct Cli {
    /// Worker threads (falls back to VECKM_THREADS, then 1).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a synthetic surface with analytic normals.
    Gen(GenArgs),
    /// Apply a corruption model to a point cloud.
    Corrupt(CorruptArgs),
    /// Compute dense local geometry encodings of a point cloud.
    Encode(EncodeArgs),
    /// Evaluate the kernel-mixture density an encoding row describes on a grid.
    Reconstruct(ReconstructArgs),
    /// Similarity of two encoding rows.
    Similarity(SimilarityArgs),
    /// Compare embedding inner products with the closed-form Gaussian kernel.
    KernelCheck(KernelCheckArgs),
    /// Time the dense encoders over growing clouds.
    Bench(BenchArgs),
    /// Sweep α, β, d, p and report quality metrics.
    Sweep(SweepArgs),
    /// Neighborhood radius matching a β.
    Radius(RadiusArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; `.ply` writes ASCII PLY, anything else xyz.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CorruptArgs {
    /// perturb, density_gradient or density_stripes.
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 0.01)]
    sigma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 256)]
    d: usize,
    /// Seed both bases are derived from.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Soft-adjacency bandwidth.
    #[arg(long, conflicts_with = "radius")]
    beta: Option<f64>,
    /// Adjacency basis dimension for the factorized path.
    #[arg(long, default_value_t = 4096)]
    p: usize,
    /// Sharp-adjacency radius (quadratic exact path).
    #[arg(long, conflicts_with_all = ["beta", "soft_exact", "multi_beta"])]
    radius: Option<f64>,
    /// Use the sharp path; requires --radius.
    #[arg(long, requires = "radius")]
    exact: bool,
    /// Exact soft adjacency (quadratic); requires --beta.
    #[arg(long, requires = "beta", conflicts_with = "multi_beta")]
    soft_exact: bool,
    /// Keep raw sums instead of scaling rows to norm √d.
    #[arg(long)]
    no_normalize: bool,
    /// Divide sharp-path rows by their neighbor count.
    #[arg(long, requires = "radius")]
    average: bool,
    /// Comma-separated β values; encodings are concatenated.
    #[arg(long, value_delimiter = ',', conflicts_with = "beta")]
    multi_beta: Option<Vec<f64>>,
    /// Payload precision: f64 or f32.
    #[arg(long, default_value = "f64")]
    precision: String,
    /// Also write a CSV copy of the encoding.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    #[arg(long)]
    encoding: PathBuf,
    /// The `--seed` the encoding was produced with.
    #[arg(long)]
    basis_seed: u64,
    /// Defaults to the α stored in the encoding header.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Encoding row (point) to reconstruct.
    #[arg(long, default_value_t = 0)]
    row: usize,
    /// Half-width of the cubic grid in coordinates relative to the point.
    #[arg(long, default_value_t = 0.25)]
    extent: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SimilarityArgs {
    #[arg(long)]
    enc_a: PathBuf,
    #[arg(long)]
    enc_b: PathBuf,
    #[arg(long, default_value_t = 0)]
    row_a: usize,
    #[arg(long, default_value_t = 0)]
    row_b: usize,
    /// Also print the kernel-mixture similarity of the two neighborhoods.
    #[arg(long, requires_all = ["cloud_a", "cloud_b"])]
    oracle: bool,
    #[arg(long)]
    cloud_a: Option<PathBuf>,
    #[arg(long)]
    cloud_b: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct KernelCheckArgs {
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 4096)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1000,2000,4000,8000,16000,32000,64000"
    )]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 256)]
    d: usize,
    #[arg(long, default_value_t = 1024)]
    p: usize,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// factorized, sharp, or both (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "factorized,sharp")]
    paths: Vec<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "30")]
    alphas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "6")]
    betas: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "256")]
    ds: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1024")]
    ps: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    seeds: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RadiusArgs {
    #[arg(long)]
    beta: f64,
    /// Override the β·r product.
    #[arg(long, default_value_t = kernel::RADIUS_BETA_PRODUCT)]
    product: f64,
}

/// Parse `argv` (program name first), run, and return the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let threads = cli.threads.or_else(env_threads).unwrap_or(1).max(1);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start thread pool: {e}");
            return 1;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| run(cli.command, &mut buf));
    let _ = std::io::stdout().write_all(&buf);
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn env_threads() -> Option<usize> {
    std::env::var("VECKM_THREADS").ok()?.trim().parse().ok()
}

fn run(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::Gen(a) => {
            let kind: ShapeKind = a.kind.parse()?;
            let pc = shapes::gen_shape(kind, a.n, a.seed)?;
            pcio::write_cloud(&pc, &a.out, CloudFormat::from_path(&a.out))
        }
        Command::Corrupt(a) => {
            let model = Corruption::parse(&a.model, a.sigma)?;
            let pc = pcio::read_cloud(&a.input, CloudFormat::from_path(&a.input))?;
            let res = shapes::corrupt(&pc, model, a.seed)?;
            pcio::write_cloud(&res, &a.out, CloudFormat::from_path(&a.out))
        }
        Command::Encode(a) => encode(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Similarity(a) => similarity(a, out),
        Command::KernelCheck(a) => kernel_check(a, out),
        Command::Bench(a) => {
            let paths = a
                .paths
                .iter()
                .map(|p| match p.as_str() {
                    "factorized" => Ok(BenchPath::Factorized),
                    "sharp" => Ok(BenchPath::Sharp),
                    other => Err(Error::Parameter {
                        name: "paths",
                        reason: format!("unknown path `{other}`"),
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            let cfg = BenchConfig {
                seed: a.seed,
                paths,
                ..Default::default()
            };
            let rows = bench::bench_scaling(&a.sizes, a.d, a.p, a.reps, &cfg)?;
            let mut w = BufWriter::new(File::create(&a.out)?);
            bench::write_bench_csv(&rows, &mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Sweep(a) => {
            let grid = SweepGrid {
                alphas: a.alphas,
                betas: a.betas,
                ds: a.ds,
                ps: a.ps,
            };
            let cfg = SweepConfig {
                seeds: a.seeds,
                ..Default::default()
            };
            let rows = bench::sweep_params(&grid, &cfg)?;
            let mut w = BufWriter::new(File::create(&a.out)?);
            bench::write_sweep_csv(&rows, &mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Radius(a) => {
            let r = kernel::radius_for_beta_with(Bandwidth::new(a.beta)?, a.product);
            writeln!(out, "{r:.3}")?;
            Ok(())
        }
    }
}

fn parse_precision(s: &str) -> Result<Precision> {
    match s {
        "f64" => Ok(Precision::F64),
        "f32" => Ok(Precision::F32),
        other => Err(Error::Parameter {
            name: "precision",
            reason: format!("expected f32 or f64, got `{other}`"),
        }),
    }
}

fn encode(a: EncodeArgs) -> Result<()> {
    let precision = parse_precision(&a.precision)?;
    let pc = pcio::read_cloud(&a.input, CloudFormat::from_path(&a.input))?;
    let pts = pc.coords();
    let basis_a = FeatureBasis::for_role(a.d, a.alpha, a.seed, BasisRole::A)?;

    let g = if let Some(radius) = a.radius {
        let g = if a.average {
            encoder::encode_dense_sharp_averaged(pts, radius, &basis_a)?
        } else {
            encoder::encode_dense_sharp(pts, radius, &basis_a)?
        };
        maybe_normalize(g, !a.no_normalize)?
    } else if let Some(betas) = a.multi_beta {
        if a.no_normalize {
            return Err(Error::Parameter {
                name: "no-normalize",
                reason: "multi-scale encodings are always normalized per block".into(),
            });
        }
        let bases = betas
            .iter()
            .map(|&b| FeatureBasis::for_role(a.p, b, a.seed, BasisRole::B))
            .collect::<Result<Vec<_>>>()?;
        encoder::encode_multi_beta(pts, &basis_a, &bases)?
    } else {
        let beta = a.beta.ok_or_else(|| Error::Parameter {
            name: "beta",
            reason: "one of --beta, --radius or --multi-beta is required".into(),
        })?;
        if a.soft_exact {
            maybe_normalize(
                encoder::encode_dense_soft_exact(pts, beta, &basis_a)?,
                !a.no_normalize,
            )?
        } else {
            let basis_b = FeatureBasis::for_role(a.p, beta, a.seed, BasisRole::B)?;
            let raw = encoder::encode_dense_factorized_raw(pts, &basis_a, &basis_b)?;
            maybe_normalize(raw, !a.no_normalize)?
        }
    };

    pcio::write_encoding(&g, &a.out, precision)?;
    if let Some(csv) = &a.csv {
        pcio::write_encoding_csv(&g, csv)?;
    }
    Ok(())
}

fn maybe_normalize(g: encoder::EncodingMatrix, normalize: bool) -> Result<encoder::EncodingMatrix> {
    if normalize {
        encoder::normalize_rows(g)
    } else {
        Ok(g)
    }
}

fn row_embedding(g: &encoder::EncodingMatrix, row: usize, path: &Path) -> Result<ComplexEmbedding> {
    if row >= g.n() {
        return Err(Error::Contract(format!(
            "{}: row {row} requested but the file has {} rows",
            path.display(),
            g.n()
        )));
    }
    Ok(g.embedding(row))
}

fn reconstruct(a: ReconstructArgs) -> Result<()> {
    let g = pcio::read_encoding(&a.encoding)?;
    if matches!(g.neighborhood, Neighborhood::MultiBeta(_)) {
        return Err(Error::Contract(
            "multi-scale encodings cannot be reconstructed with a single basis".into(),
        ));
    }
    let alpha = a.alpha.unwrap_or(g.alpha);
    let basis = FeatureBasis::for_role(g.d(), alpha, a.basis_seed, BasisRole::A)?;
    let row = row_embedding(&g, a.row, &a.encoding)?;
    let e = a.extent;
    let grid = mixture::cube_grid([-e; 3], [e; 3], a.grid);
    let values = mixture::reconstruct(&row, &basis, &grid)?;
    let mut w = BufWriter::new(File::create(&a.out)?);
    writeln!(w, "x,y,z,density")?;
    for (q, v) in grid.iter().zip(&values) {
        writeln!(w, "{},{},{},{}", q[0], q[1], q[2], v)?;
    }
    w.flush()?;
    Ok(())
}

/// Neighborhood of `points[center]` in coordinates relative to it.
fn local_neighborhood(points: &[[f64; 3]], center: usize, radius: f64) -> Result<Vec<[f64; 3]>> {
    let x0 = *points.get(center).ok_or(Error::Index {
        index: center,
        len: points.len(),
    })?;
    Ok(points
        .iter()
        .filter(|x| kernel::dist_sq(**x, x0) < radius * radius)
        .map(|x| [x[0] - x0[0], x[1] - x0[1], x[2] - x0[2]])
        .collect())
}

fn neighborhood_radius(n: &Neighborhood) -> Result<f64> {
    match n {
        Neighborhood::Radius(r) => Ok(*r),
        Neighborhood::Beta(b) => Ok(kernel::radius_for_beta(Bandwidth::new(*b)?)),
        Neighborhood::MultiBeta(_) => Err(Error::Contract(
            "no single neighborhood radius for a multi-scale encoding".into(),
        )),
    }
}

fn similarity(a: SimilarityArgs, out: &mut impl Write) -> Result<()> {
    let ga = pcio::read_encoding(&a.enc_a)?;
    let gb = pcio::read_encoding(&a.enc_b)?;
    let ea = row_embedding(&ga, a.row_a, &a.enc_a)?;
    let eb = row_embedding(&gb, a.row_b, &a.enc_b)?;
    let s = mixture::encoding_similarity(&ea, &eb)?;
    writeln!(out, "encoding_similarity {s}")?;

    if a.oracle {
        let (ca, cb) = match (&a.cloud_a, &a.cloud_b) {
            (Some(ca), Some(cb)) => (ca, cb),
            _ => unreachable!("clap enforces --cloud-a and --cloud-b with --oracle"),
        };
        let pa = pcio::read_cloud(ca, CloudFormat::from_path(ca))?;
        let pb = pcio::read_cloud(cb, CloudFormat::from_path(cb))?;
        let na = local_neighborhood(pa.coords(), a.row_a, neighborhood_radius(&ga.neighborhood)?)?;
        let nb = local_neighborhood(pb.coords(), a.row_b, neighborhood_radius(&gb.neighborhood)?)?;
        let ma = KernelMixture::new(&na, Bandwidth::new(ga.alpha)?)?;
        let mb = KernelMixture::new(&nb, Bandwidth::new(gb.alpha)?)?;
        writeln!(
            out,
            "mixture_similarity {}",
            mixture::mixture_similarity(&ma, &mb)?
        )?;
    }
    Ok(())
}

fn kernel_check(a: KernelCheckArgs, out: &mut impl Write) -> Result<()> {
    let alpha = Bandwidth::new(a.alpha)?;
    let basis = FeatureBasis::new(a.d, a.alpha, a.seed)?;
    let pts = shapes::uniform_ball(2 * a.pairs, 1.0, ChaCha8Rng::seed_from_u64(a.seed).gen());
    let (mut max_err, mut max_im) = (0.0f64, 0.0f64);
    for pair in pts.chunks_exact(2) {
        let z = kernel::kernel_estimate_complex(pair[0], pair[1], &basis);
        max_err = max_err.max((z.re - kernel::gaussian_kernel(pair[0], pair[1], alpha)).abs());
        max_im = max_im.max(z.im.abs());
    }
    writeln!(out, "max_abs_error {max_err:.6}")?;
    writeln!(out, "max_abs_imag {max_im:.6}")?;
    Ok(())
}
