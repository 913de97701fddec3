//! Discrete Hamiltonians: band operators, periodic discrete Schrödinger
//! operators and their Bloch reduction, Harper bounds, and local-energy
//! bounds for non-symmetric matrices.

mod band;
mod nonsym;
mod periodic;
mod tighten;

pub use band::{apply_band, BandOperator, Boundary};
pub use nonsym::{nonsym_bounds, nonsym_bounds_real, NonsymBounds};
pub use periodic::{
    bloch_matrix, local_energy_discrete, BlochMatrix, DiscreteTestVector, HarperParams,
    PeriodicPotential,
};
pub use tighten::{
    coprime_fractions, hofstadter_bottom, tighten_bounds, ButterflyRow, Tightened, STALL_RATIO,
};

pub use crate::linalg::{exact_ground_energy, GroundState};
