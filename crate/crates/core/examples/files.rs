//! Generate a shape, write and read it back as xyz and PLY, encode it and
//! store the encoding in the binary format.
//!
//! cargo run --release --example files

use veckm::features::{BasisRole, FeatureBasis};
use veckm::pcio::{read_cloud, read_encoding, write_cloud, write_encoding, CloudFormat, Precision};
use veckm::{encode_dense_factorized, gen_shape, ShapeKind};

fn main() -> veckm::Result<()> {
    let dir = std::env::temp_dir().join("veckm-files-example");
    std::fs::create_dir_all(&dir)?;

    let cyl = gen_shape(ShapeKind::Cylinder, 2000, 4)?;
    let ply = dir.join("cylinder.ply");
    let xyz = dir.join("cylinder.xyz");
    write_cloud(&cyl, &ply, CloudFormat::PlyAscii)?;
    write_cloud(&cyl, &xyz, CloudFormat::Xyz)?;
    let back = read_cloud(&ply, CloudFormat::from_path(&ply))?;
    println!(
        "{}: {} points, normals: {}",
        ply.display(),
        back.len(),
        back.normals().is_some()
    );

    let a = FeatureBasis::for_role(64, 30.0, 0, BasisRole::A)?;
    let b = FeatureBasis::for_role(1024, 6.0, 0, BasisRole::B)?;
    let g = encode_dense_factorized(back.coords(), &a, &b)?;
    let out = dir.join("cylinder.vkm");
    write_encoding(&g, &out, Precision::F32)?;
    let loaded = read_encoding(&out)?;
    println!(
        "{}: {} x {} (alpha {}, {:?}, {} bytes)",
        out.display(),
        loaded.n(),
        loaded.d(),
        loaded.alpha,
        loaded.neighborhood,
        std::fs::metadata(&out)?.len()
    );
    Ok(())
}
