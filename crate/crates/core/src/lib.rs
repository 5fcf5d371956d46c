//! # veckm
//!
//! Local point-cloud geometry encodings computed in linear time and space.
//!
//! Every point `x_j` of a cloud gets a `d`-dimensional complex vector that
//! summarizes its neighborhood as a Gaussian kernel mixture. Inner products
//! between encodings (and between an encoding and a point's embedding)
//! reproduce kernel-mixture similarities and densities, so the encodings are
//! both descriptive and cheap to compare.
//!
//! ## Modules
//!
//! | Module | Purpose |
//! |--------|---------|
//! | [`features`] | deterministic quantile bases and `exp(i x A)` embeddings |
//! | [`kernel`] | closed-form Gaussian kernel, its embedding estimate, β ↔ radius |
//! | [`encoder`] | pointwise, sharp-dense, exact-soft and factorized encoders |
//! | [`mixture`] | kernel-mixture oracle: density, reconstruction, similarity |
//! | [`shapes`] | synthetic surfaces and corruption models |
//! | [`pcio`] | xyz / ASCII PLY readers, `VKM1` encoding files, CSV export |
//! | [`bench`] | runtime scaling harness and parameter sweeps |
//! | [`cli`] | the `veckm` command-line front end |
//!
//! ## Quick start
//!
//! ```rust
//! use veckm::{encode_dense_factorized, gen_shape, FeatureBasis, ShapeKind};
//!
//! let cloud = gen_shape(ShapeKind::Torus, 500, 7).unwrap();
//! let a = FeatureBasis::new(64, 30.0, 1).unwrap(); // geometry basis, α = 30
//! let b = FeatureBasis::new(256, 6.0, 2).unwrap(); // adjacency basis, β = 6
//! let g = encode_dense_factorized(cloud.coords(), &a, &b).unwrap();
//! assert_eq!((g.n(), g.d()), (500, 64));
//! ```
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod bench;
pub mod cli;
pub mod encoder;
pub mod error;
pub mod features;
pub mod kernel;
pub mod matrix;
pub mod mixture;
pub mod pcio;
pub mod quantile;
pub mod shapes;

pub use encoder::{
    encode_cloud, encode_dense_factorized, encode_dense_sharp, encode_dense_soft_exact,
    encode_pointwise, normalize_rows, EncodingMatrix, Neighborhood,
};
pub use error::{Error, Result};
pub use features::{embed, make_basis, BasisRole, ComplexEmbedding, FeatureBasis};
pub use kernel::{gaussian_kernel, kernel_estimate, radius_for_beta, Bandwidth};
pub use mixture::{encoding_similarity, mixture_similarity, reconstruct, KernelMixture};
pub use shapes::{corrupt, gen_shape, Corruption, PointCloud, ShapeKind};
