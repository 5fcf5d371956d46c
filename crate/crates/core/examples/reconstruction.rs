//! Recover the kernel density of a local patch from its encoding and
//! compare it with the density computed directly from the points.
//!
//! cargo run --release --example reconstruction

use veckm::encoder::encode_cloud;
use veckm::mixture::{pearson, reconstruction_grid};
use veckm::shapes::disc_patch;
use veckm::{make_basis, reconstruct, Bandwidth, KernelMixture};

fn main() -> veckm::Result<()> {
    let alpha = Bandwidth::new(30.0)?;
    let patch = disc_patch(100, 0.15, 3);
    let grid = reconstruction_grid(&patch, alpha, 24);
    let truth = KernelMixture::new(&patch, alpha)?.eval_many(&grid);
    for d in [128, 512, 2048] {
        let basis = make_basis(d, alpha.get(), 11)?;
        let g = encode_cloud(&patch, &basis)?;
        let est = reconstruct(&g, &basis, &grid)?;
        println!(
            "d = {d:>4}: correlation with the true density {:.4}",
            pearson(&est, &truth)
        );
    }

    // A slice through the patch plane, for eyeballing.
    let basis = make_basis(2048, alpha.get(), 11)?;
    let g = encode_cloud(&patch, &basis)?;
    let line: Vec<[f64; 3]> = (0..=12)
        .map(|i| [-0.24 + 0.04 * i as f64, 0.0, 0.0])
        .collect();
    let est = reconstruct(&g, &basis, &line)?;
    let m = KernelMixture::new(&patch, alpha)?;
    for (q, e) in line.iter().zip(est) {
        println!(
            "x = {:+.2}  encoded {:+.4}  direct {:+.4}",
            q[0],
            e,
            m.eval(*q)
        );
    }
    Ok(())
}
