//! How closely embedding inner products track the Gaussian kernel as the
//! basis dimension grows.
//!
//! cargo run --release --example kernel_check

use veckm::shapes::uniform_ball;
use veckm::{gaussian_kernel, kernel_estimate, make_basis, Bandwidth};

fn main() -> veckm::Result<()> {
    let alpha = Bandwidth::new(1.0)?;
    let pts = uniform_ball(200, 1.0, 1);
    println!("{:>6}  {:>10}", "d", "max error");
    for d in [64, 256, 1024, 4096, 16384] {
        let basis = make_basis(d, alpha.get(), 7)?;
        let worst = pts
            .chunks_exact(2)
            .map(|p| {
                (kernel_estimate(p[0], p[1], &basis) - gaussian_kernel(p[0], p[1], alpha)).abs()
            })
            .fold(0.0, f64::max);
        println!("{d:>6}  {worst:>10.5}");
    }
    Ok(())
}
