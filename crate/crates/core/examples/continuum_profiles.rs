//! Grid-sampled local energies V - Δφ/φ for H = -Δ + V: exact eigenpairs
//! give flat profiles, a mismatched test function gives a spread.

use eigenbounds::continuum::{
    grid_extrema, local_energy_schrodinger, Axis, GridDomain, ScalarField,
};

fn radius(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn main() -> eigenbounds::Result<()> {
    let line = GridDomain::new(vec![Axis::new(-4.0, 4.0, 10_001)?])?;
    let gaussian = ScalarField::new(|x| (-x[0] * x[0] / 2.0).exp())
        .with_laplacian(|x| (x[0] * x[0] - 1.0) * (-x[0] * x[0] / 2.0).exp());
    let oscillator = ScalarField::new(|x| x[0] * x[0]);
    let b = grid_extrema(&local_energy_schrodinger(&oscillator, &gaussian, &line)?)?;
    println!(
        "oscillator, exact ground state: [{:.12}, {:.12}]",
        b.lower, b.upper
    );

    let quartic = ScalarField::new(|x| x[0].powi(4));
    let b = grid_extrema(&local_energy_schrodinger(&quartic, &gaussian, &line)?)?;
    println!(
        "quartic well, gaussian trial:   [{:.6}, {:.6}]",
        b.lower, b.upper
    );

    // hydrogen s-state on a grid that avoids the nucleus
    let cube = GridDomain::new(vec![Axis::new(0.05, 3.0, 21)?; 3])?;
    let coulomb = ScalarField::new(|x| -2.0 / radius(x));
    let s_state = ScalarField::new(|x| (-radius(x)).exp())
        .with_laplacian(|x| (1.0 - 2.0 / radius(x)) * (-radius(x)).exp());
    let b = grid_extrema(&local_energy_schrodinger(&coulomb, &s_state, &cube)?)?;
    println!(
        "hydrogen, V = -2/r, exp(-r):    [{:.12}, {:.12}]",
        b.lower, b.upper
    );
    Ok(())
}
