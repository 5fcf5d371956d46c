//! The three dense encoders on one cloud: sharp radius, exact soft
//! adjacency, and the linear-time factorization of the soft one.
//!
//! cargo run --release --example dense_encoders

use std::time::Instant;

use veckm::features::{BasisRole, FeatureBasis};
use veckm::matrix::cosine;
use veckm::{
    encode_dense_factorized, encode_dense_sharp, encode_dense_soft_exact, gen_shape,
    radius_for_beta, Bandwidth, ShapeKind,
};

fn main() -> veckm::Result<()> {
    let (alpha, beta, d, p) = (30.0, 6.0, 128, 2048);
    let cloud = gen_shape(ShapeKind::Torus, 3000, 0)?;
    let pts = cloud.coords();
    let a = FeatureBasis::for_role(d, alpha, 0, BasisRole::A)?;
    let b = FeatureBasis::for_role(p, beta, 0, BasisRole::B)?;
    let radius = radius_for_beta(Bandwidth::new(beta)?);

    let t = Instant::now();
    let sharp = encode_dense_sharp(pts, radius, &a)?;
    println!("sharp (r = {radius:.3}):  {:?}", t.elapsed());

    let t = Instant::now();
    let soft = encode_dense_soft_exact(pts, beta, &a)?;
    println!("soft exact:          {:?}", t.elapsed());

    let t = Instant::now();
    let fact = encode_dense_factorized(pts, &a, &b)?;
    println!("factorized (p={p}): {:?}", t.elapsed());

    let mean = |x: &veckm::EncodingMatrix, y: &veckm::EncodingMatrix| {
        (0..pts.len())
            .map(|j| cosine(x.row(j), y.row(j)))
            .sum::<f64>()
            / pts.len() as f64
    };
    println!(
        "mean row cosine, factorized vs soft exact: {:.4}",
        mean(&fact, &soft)
    );
    println!(
        "mean row cosine, sharp vs soft exact:      {:.4}",
        mean(&sharp, &soft)
    );
    Ok(())
}
