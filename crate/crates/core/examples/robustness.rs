//! Encodings of a patch under noise and density corruptions, compared with
//! the clean patch and with an unrelated one.
//!
//! cargo run --release --example robustness

use veckm::encoder::encode_cloud;
use veckm::shapes::disc_patch;
use veckm::{
    corrupt, encoding_similarity, make_basis, mixture_similarity, Bandwidth, Corruption,
    KernelMixture, PointCloud,
};

fn main() -> veckm::Result<()> {
    let alpha = 30.0;
    let basis = make_basis(2048, alpha, 5)?;
    let clean = PointCloud::new(disc_patch(500, 0.15, 1), "patch")?;
    let g0 = encode_cloud(clean.coords(), &basis)?;

    let models = [
        ("clean", Corruption::Perturb(0.0)),
        ("noise 0.005", Corruption::Perturb(0.005)),
        ("noise 0.01", Corruption::Perturb(0.01)),
        ("noise 0.02", Corruption::Perturb(0.02)),
        ("density gradient", Corruption::DensityGradient),
        ("density stripes", Corruption::DensityStripes),
    ];
    let m0 = KernelMixture::new(clean.coords(), Bandwidth::new(alpha)?)?;
    for (name, model) in models {
        let pc = corrupt(&clean, model, 9)?;
        let g = encode_cloud(pc.coords(), &basis)?;
        let m = KernelMixture::new(pc.coords(), Bandwidth::new(alpha)?)?;
        println!(
            "{name:<17} {:>4} pts  encoded {:.4}  direct {:.4}",
            pc.len(),
            encoding_similarity(&g0, &g)?,
            mixture_similarity(&m0, &m)?
        );
    }

    let upright: Vec<[f64; 3]> = disc_patch(500, 0.15, 2)
        .into_iter()
        .map(|p| [p[0], 0.0, p[1]])
        .collect();
    let gu = encode_cloud(&upright, &basis)?;
    println!(
        "unrelated patch            encoded {:.4}",
        encoding_similarity(&g0, &gu)?
    );
    Ok(())
}
