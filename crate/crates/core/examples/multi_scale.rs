//! Concatenated encodings at several adjacency bandwidths, so that each
//! point carries both fine and coarse context.
//!
//! cargo run --release --example multi_scale

use veckm::encoder::encode_multi_beta;
use veckm::features::{BasisRole, FeatureBasis};
use veckm::matrix::cosine;
use veckm::{gen_shape, ShapeKind};

fn main() -> veckm::Result<()> {
    let cloud = gen_shape(ShapeKind::Sphere, 2000, 2)?;
    let a = FeatureBasis::for_role(64, 30.0, 0, BasisRole::A)?;
    let betas = [3.0, 6.0, 12.0];
    let bases: Vec<FeatureBasis> = betas
        .iter()
        .enumerate()
        .map(|(i, &beta)| FeatureBasis::for_role(1024, beta, i as u64, BasisRole::B))
        .collect::<veckm::Result<_>>()?;
    let g = encode_multi_beta(cloud.coords(), &a, &bases)?;
    println!(
        "{} rows of {} complex entries ({:?})",
        g.n(),
        g.d(),
        g.neighborhood
    );

    // Each block can be used on its own; smaller β means a wider context.
    for (i, beta) in betas.iter().enumerate() {
        let block = |j: usize| &g.row(j)[i * 64..(i + 1) * 64];
        println!(
            "beta {beta:>4}: cosine between points 0 and 1: {:.4}",
            cosine(block(0), block(1))
        );
    }
    Ok(())
}
