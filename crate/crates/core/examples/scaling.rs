//! Runtime of the factorized and sharp encoders over growing clouds, with
//! fitted log-log slopes.
//!
//! cargo run --release --example scaling

use veckm::bench::{bench_scaling, loglog_slope, write_bench_csv, BenchConfig, BenchPath};

fn main() -> veckm::Result<()> {
    let sizes = [1000, 2000, 4000, 8000];
    let rows = bench_scaling(&sizes, 128, 512, 3, &BenchConfig::default())?;
    write_bench_csv(&rows, std::io::stdout())?;
    for path in [BenchPath::Factorized, BenchPath::Sharp] {
        let (xs, ys): (Vec<f64>, Vec<f64>) = rows
            .iter()
            .filter(|r| r.path == path)
            .filter_map(|r| r.median_ms.map(|m| (r.n as f64, m)))
            .unzip();
        println!("{path}: slope {:.2}", loglog_slope(&xs, &ys));
    }
    Ok(())
}
