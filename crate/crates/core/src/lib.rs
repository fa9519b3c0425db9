//! # homtree
//!
//! Harmonic analysis on the homogeneous tree of degree `q + 1`, computed
//! exactly on finite truncations `B(o, N)`.
//!
//! The boundary `Ω` (geodesic rays from the root `o`) is handled through its
//! sector algebra: a cylindrical function of level `m` is one complex value per
//! sector `E(y)`, `|y| = m`. Everything tree-side lives on a [`BallFunction`],
//! one value per vertex of the ball.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`tree`] | vertex encoding, spheres, geodesics, confluence |
//! | [`boundary`] | `ν`, cylindrical functions, `E_n`, `Δ_n`, martingales, `E*`, `T_a` |
//! | [`spectral`] | `γ(z)`, `c(z)`, `φ_z`, `B(j,l,z)`, `δ_p`, branch classification |
//! | [`transform`] | Poisson kernel and Poisson transform of cylindrical data and martingales |
//! | [`treeops`] | Laplacian, `ε_n`, `ε*`, sphere averages, Hardy-type norms |
//! | [`inversion`] | the averaging operator `T_n`, its coefficients and error functional |
//! | [`harness`] | seeded boundary data, experiment suites, CSV/JSON rows |
//!
//! ```rust
//! use homtree::{boundary::CylFunction, spectral::SpectralParam, transform, treeops, TreeParams};
//! use num_complex::Complex64;
//!
//! let params = TreeParams::new(2, 6).unwrap();
//! let f = CylFunction::constant(params, Complex64::new(1.0, 0.0));
//! let sp = SpectralParam::new(2, Complex64::new(0.3, 0.0)).unwrap();
//! let u = transform::poisson_transform(&f, &sp);
//! assert!(treeops::eigen_residual(&u, &sp).unwrap() < 1e-12);
//! ```
//!
//! Runnable walkthroughs for each module live in `crates/core/examples/`.

pub mod boundary;
pub mod error;
pub mod exponent;
pub mod harness;
pub mod inversion;
pub mod spectral;
pub mod transform;
pub mod tree;
pub mod treeops;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use transform::BallFunction;
pub use tree::{TreeParams, Vertex};

pub use num_complex::Complex64;
