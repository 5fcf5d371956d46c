use num_complex::Complex64;
use proptest::prelude::*;
use veckm::encoder::{EncodingMatrix, Neighborhood};
use veckm::error::Error;
use veckm::matrix::ComplexMatrix;
use veckm::pcio::{
    read_cloud, read_encoding, read_encoding_from, write_cloud, write_encoding, write_encoding_to,
    CloudFormat, Precision, HEADER_LEN,
};
use veckm::shapes::{gen_shape, ShapeKind};

fn matrix(n: usize, d: usize, vals: &[f64]) -> EncodingMatrix {
    let data = (0..n * d)
        .map(|k| Complex64::new(vals[k % vals.len()], -vals[(k + 1) % vals.len()]))
        .collect();
    EncodingMatrix {
        rows: ComplexMatrix::from_vec(n, d, data),
        normalized: true,
        averaged: false,
        alpha: 30.0,
        neighborhood: Neighborhood::Beta(6.0),
    }
}

#[test]
fn clouds_round_trip_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let pc = gen_shape(ShapeKind::Torus, 300, 4).unwrap();
    for (name, fmt) in [
        ("a.xyz", CloudFormat::Xyz),
        ("a.ply", CloudFormat::PlyAscii),
    ] {
        let path = dir.path().join(name);
        write_cloud(&pc, &path, fmt).unwrap();
        let back = read_cloud(&path, CloudFormat::from_path(&path)).unwrap();
        assert_eq!(back.coords(), pc.coords());
        // Normals are renormalized on read.
        for (a, b) in back.normals().unwrap().iter().zip(pc.normals().unwrap()) {
            assert!((0..3).all(|i| (a[i] - b[i]).abs() < 1e-15));
        }
    }
}

#[test]
fn reader_errors_are_typed() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.xyz");
    std::fs::write(&bad, "0 0 0\n1 x 2\n").unwrap();
    match read_cloud(&bad, CloudFormat::Xyz) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    let empty = dir.path().join("empty.xyz");
    std::fs::write(&empty, "\n").unwrap();
    assert!(matches!(
        read_cloud(&empty, CloudFormat::Xyz),
        Err(Error::EmptyInput(_))
    ));
    let bin = dir.path().join("b.ply");
    std::fs::write(
        &bin,
        "ply\nformat binary_little_endian 1.0\nelement vertex 1\nend_header\n",
    )
    .unwrap();
    assert!(read_cloud(&bin, CloudFormat::PlyAscii).is_err());
}

#[test]
fn encoding_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = matrix(3, 5, &[0.5, -1.25, 3.0]);
    let path = dir.path().join("g.vkm");
    write_encoding(&g, &path, Precision::F64).unwrap();
    assert_eq!(
        std::fs::metadata(&path).unwrap().len() as usize,
        HEADER_LEN + 3 * 5 * 16
    );
    assert_eq!(read_encoding(&path).unwrap(), g);
}

#[test]
fn truncated_encoding_is_rejected() {
    let mut buf = Vec::new();
    write_encoding_to(&matrix(2, 4, &[1.0]), &mut buf, Precision::F64).unwrap();
    buf.pop();
    assert!(read_encoding_from(buf.as_slice()).is_err());
    assert!(read_encoding_from(&buf[..10]).is_err());
}

proptest! {
    #[test]
    fn f64_payload_round_trips_exactly(
        n in 1usize..6,
        d in 1usize..9,
        vals in prop::collection::vec(-1e3f64..1e3, 1..20),
    ) {
        let g = matrix(n, d, &vals);
        let mut buf = Vec::new();
        write_encoding_to(&g, &mut buf, Precision::F64).unwrap();
        prop_assert_eq!(read_encoding_from(buf.as_slice()).unwrap(), g);
    }

    #[test]
    fn f32_payload_round_trips_to_single_precision(
        vals in prop::collection::vec(-1e3f64..1e3, 1..20),
    ) {
        let g = matrix(2, 7, &vals);
        let mut buf = Vec::new();
        write_encoding_to(&g, &mut buf, Precision::F32).unwrap();
        let back = read_encoding_from(buf.as_slice()).unwrap();
        for (a, b) in back.rows.as_slice().iter().zip(g.rows.as_slice()) {
            prop_assert_eq!(a.re, b.re as f32 as f64);
            prop_assert_eq!(a.im, b.im as f32 as f64);
        }
    }
}
