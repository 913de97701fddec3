//! N-body local energies with pair-product test functions, the angular
//! function `F_N`, and identical-particle Coulomb bounds.
//!
//! The Hamiltonian here is `Σ -Δ_i/(2m_i) + Σ v_ij(r_ij)`.

mod angular;
mod bounds;
mod configuration;
mod energy;
mod maximize;
mod named;

pub use angular::{angles_sum_fn, angles_sum_fn_with_gradient, cluster_sum, AngularValue};
pub use bounds::{
    clustering_upper_bound, identical_coulomb_bounds, proposition_two_body_bounds, AlphaSource,
    IdenticalBounds,
};
pub use configuration::{Configuration, ParticleSystem, COINCIDENCE_THRESHOLD};
pub use energy::{
    default_check_radii, local_energy_coulomb, local_energy_identical, local_energy_nbody,
    PairFunction, PairFunctionSet,
};
pub use maximize::{maximize_fn, sphere_limit_check, FnMaximum, StartOutcome};
pub use named::{
    bipyramid_value, cube_value, fibonacci_sphere, h0_radical, h0_root, named_configuration,
    octahedron_value, square_pyramid_height, square_pyramid_value, twisted_squares_height,
    twisted_squares_value, ConfigurationName,
};
