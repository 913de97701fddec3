//! Upper and lower bounds for an eigenvalue whose eigenvector is positive,
//! computed from the extrema of the local energy `Re(Hφ)/Re(φ)`.
//!
//! * [`profile`] and [`optimize`]: the domain-independent machinery.
//! * [`discrete`]: band operators, periodic discrete Schrödinger operators,
//!   Harper/Hofstadter bounds and the dense oracle.
//! * [`manybody`]: N-body Coulomb local energies and the angular function `F_N`.
//! * [`continuum`]: grid-sampled Schrödinger and Zeeman local energies.
//! * [`cli`]: the command-line front end.
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod continuum;
pub mod discrete;
pub mod error;
pub mod io;
pub mod linalg;
pub mod manybody;
pub mod optimize;
pub mod profile;

pub use error::{Error, Result};
pub use optimize::{optimize_lower, optimize_upper, OptimizerConfig, TestFamily};
pub use profile::{extrema, rayleigh_quotient, BoundsResult, LocalEnergyProfile, Site};
