//! How α, d and p move the quality metrics.
//!
//! cargo run --release --example sweep

use veckm::bench::{sweep_params, write_sweep_csv, SweepConfig, SweepGrid};

fn main() -> veckm::Result<()> {
    let grid = SweepGrid {
        alphas: vec![10.0, 30.0, 60.0],
        betas: vec![6.0],
        ds: vec![64, 256],
        ps: vec![256, 1024],
    };
    let cfg = SweepConfig {
        seeds: 3,
        grid: 20,
        ..SweepConfig::default()
    };
    let rows = sweep_params(&grid, &cfg)?;
    write_sweep_csv(&rows, std::io::stdout())?;
    Ok(())
}
