use num_complex::Complex64;
use veckm::bench::median;
use veckm::encoder::{
    encode_dense_factorized, encode_dense_sharp, encode_dense_soft_exact, encode_pointwise,
    neighbor_counts, normalize_rows,
};
use veckm::features::make_basis;
use veckm::kernel::Bandwidth;
use veckm::matrix::{cosine, inner};
use veckm::mixture::KernelMixture;
use veckm::shapes::uniform_ball;

fn rel_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let base: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (diff / base).sqrt()
}

fn shift(points: &[[f64; 3]], t: [f64; 3]) -> Vec<[f64; 3]> {
    points
        .iter()
        .map(|p| [p[0] + t[0], p[1] + t[1], p[2] + t[2]])
        .collect()
}

#[test]
fn sharp_rows_are_scaled_pointwise_encodings() {
    for seed in 0..3 {
        let pts = uniform_ball(100, 1.0, seed);
        let a = make_basis(128, 30.0, seed + 100).unwrap();
        let g = encode_dense_sharp(&pts, 0.3, &a).unwrap();
        let counts = neighbor_counts(&pts, 0.3);
        for j in 0..pts.len() {
            let e = encode_pointwise(&pts, j, 0.3, &a).unwrap();
            let scaled: Vec<_> = e.values().iter().map(|z| z * counts[j] as f64).collect();
            assert!(rel_err(g.row(j), &scaled) < 1e-9, "seed {seed} row {j}");
        }
    }
}

#[test]
fn pointwise_encoding_reconstructs_its_own_neighborhood() {
    let alpha = 30.0;
    let pts = uniform_ball(50, 0.2, 5);
    let a = make_basis(1024, alpha, 6).unwrap();
    let g = encode_pointwise(&pts, 0, 1.0, &a).unwrap();
    let center = pts[0];
    let probe = |x: [f64; 3]| {
        let rel = [x[0] - center[0], x[1] - center[1], x[2] - center[2]];
        inner(a.embed_point(rel).values(), g.values()).re / 1024.0
    };
    let near = pts[7];
    let far = [center[0] + 0.5, center[1], center[2]];
    assert!(probe(near) > probe(far));

    // The mixture oracle agrees on the ordering.
    let local: Vec<_> = pts
        .iter()
        .map(|p| [p[0] - center[0], p[1] - center[1], p[2] - center[2]])
        .collect();
    let m = KernelMixture::new(&local, Bandwidth::new(alpha).unwrap()).unwrap();
    let rel = |x: [f64; 3]| [x[0] - center[0], x[1] - center[1], x[2] - center[2]];
    assert!(m.eval(rel(near)) > m.eval(rel(far)));
}

#[test]
fn factorized_converges_to_exact_soft() {
    let mut prev = 0.0;
    for p in [512usize, 2048, 4096] {
        let sims: Vec<f64> = (0..4)
            .map(|s| {
                let pts = uniform_ball(200, 1.0, 40 + s);
                let a = make_basis(128, 30.0, 2 * s).unwrap();
                let b = make_basis(p, 6.0, 2 * s + 1).unwrap();
                let f = encode_dense_factorized(&pts, &a, &b).unwrap();
                let e = encode_dense_soft_exact(&pts, 6.0, &a).unwrap();
                (0..pts.len())
                    .map(|j| cosine(f.row(j), e.row(j)))
                    .sum::<f64>()
                    / pts.len() as f64
            })
            .collect();
        let m = median(&sims);
        assert!(m >= prev, "p={p}: {m} < {prev}");
        prev = m;
    }
    assert!(prev > 0.97);
}

#[test]
fn translation_invariance() {
    let t = [0.3, -0.1, 0.7];
    let pts = uniform_ball(150, 1.0, 9);
    let moved = shift(&pts, t);
    let a = make_basis(64, 30.0, 1).unwrap();
    let b = make_basis(512, 6.0, 2).unwrap();

    let f0 = encode_dense_factorized(&pts, &a, &b).unwrap();
    let f1 = encode_dense_factorized(&moved, &a, &b).unwrap();
    let s0 = encode_dense_sharp(&pts, 0.3, &a).unwrap();
    let s1 = encode_dense_sharp(&moved, 0.3, &a).unwrap();
    let e0 = encode_dense_soft_exact(&pts, 6.0, &a).unwrap();
    let e1 = encode_dense_soft_exact(&moved, 6.0, &a).unwrap();
    for j in 0..pts.len() {
        assert!(rel_err(f1.row(j), f0.row(j)) < 1e-6, "factorized row {j}");
        assert!(rel_err(s1.row(j), s0.row(j)) < 1e-6, "sharp row {j}");
        assert!(rel_err(e1.row(j), e0.row(j)) < 1e-6, "soft row {j}");
    }
    for j in [0, 50, 149] {
        let p0 = encode_pointwise(&pts, j, 0.3, &a).unwrap();
        let p1 = encode_pointwise(&moved, j, 0.3, &a).unwrap();
        assert!(rel_err(p1.values(), p0.values()) < 1e-6);
    }
}

#[test]
fn factorized_rows_have_norm_sqrt_d() {
    let pts = uniform_ball(300, 1.0, 3);
    let a = make_basis(100, 20.0, 4).unwrap();
    let b = make_basis(256, 5.0, 5).unwrap();
    let g = encode_dense_factorized(&pts, &a, &b).unwrap();
    assert!(g.normalized);
    for row in g.rows.row_iter() {
        let n = veckm::matrix::norm(row);
        assert!((n - 10.0).abs() <= 1e-6 * 10.0);
    }
    let again = normalize_rows(g.clone()).unwrap();
    for j in 0..g.n() {
        assert!(rel_err(again.row(j), g.row(j)) < 1e-12);
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let pts = uniform_ball(1500, 1.0, 11);
    let a = make_basis(64, 30.0, 12).unwrap();
    let b = make_basis(256, 6.0, 13).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    encode_dense_factorized(&pts, &a, &b).unwrap(),
                    encode_dense_sharp(&pts, 0.3, &a).unwrap(),
                )
            })
    };
    let (f1, s1) = run(1);
    let (f4, s4) = run(4);
    assert_eq!(f1, f4);
    assert_eq!(s1, s4);
}
