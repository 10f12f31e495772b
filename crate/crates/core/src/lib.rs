//! Radiation from asymptotically static accelerating charges and the
//! moving-mirror particle creation that mirrors it.
//!
//! Two rectilinear worldlines are covered, the time-symmetric self-dual
//! trajectory `x(t) = -(v/κ) ln(κ²t² + 1)` and the time-antisymmetric betaK
//! trajectory `x(t) = -(v₀/κ) asinh(κt)`. For each the crate computes
//!
//! * kinematics, Larmor and Feynman (radiation-reaction) power, and the total
//!   radiated energy by three independent routes ([`trajectories`]),
//! * Bogolyubov coefficient moduli, particle spectra, angular spectral
//!   distributions and their integrals ([`spectra`]),
//! * a brute-force evaluation of the radiation integral straight from the
//!   trajectory ([`oracle`]),
//! * the pointwise classical/quantum dictionary ([`correspondence`]),
//! * the relativistic projectile whose horizontal motion is the betaK
//!   worldline ([`pitcher`]).
//!
//! Natural units with unit charge throughout; `κ` is the only dimensionful
//! input.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod correspondence;
pub mod error;
pub mod oracle;
pub mod pitcher;
pub mod quadrature;
pub mod specfun;
pub mod spectra;
pub mod trajectories;

pub use error::{Error, Result};
pub use quadrature::{QuadratureResult, Tolerance};
pub use spectra::{AngularPoint, ModePair};
pub use trajectories::{TrajectoryKind, TrajectoryParams};

/// Crate version, stamped into every CLI output header.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
