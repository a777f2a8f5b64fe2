//! Trapped modes of locally deformed quantum layers.
//!
//! The crate computes the negative spectrum of the shifted Dirichlet Laplacian
//! `A_f = -Δ - π²/d²` on the layer `{0 < z < d + f(x, y)}` for axisymmetric
//! deformations, the spectra of two-dimensional Schrödinger operators
//! `-Δ + W` with radial potentials, and checks the logarithmic Lieb-Thirring
//! type estimates that link the two through the effective potential `V_f`.
//!
//! Module map:
//!
//! * [`profiles`] deformation profiles and their radial majorants,
//! * [`effpot`] the effective potential and its constants,
//! * [`schrodinger2d`] radial channel solver for `-Δ + W`,
//! * [`layer3d`] straightened `(r, ζ)` solver for the deformed layer,
//! * [`ltbounds`] `F_s` sums, potential norms, bound reports and sweeps,
//! * [`hardy`] the weighted Hardy-type quadratic form probe,
//! * [`cli`] config-driven batch runner.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod cli;
pub mod effpot;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod hardy;
pub mod layer3d;
pub mod ltbounds;
pub mod par;
pub mod profiles;
pub mod schrodinger2d;

pub use error::{Error, Result};
pub use grid::RadialGrid;
pub use par::Schedule;
