//! Optimizes the lower and upper bounds over a one-parameter family of test
//! vectors for a periodic discrete Schrödinger operator.

use eigenbounds::discrete::{
    bloch_matrix, local_energy_discrete, DiscreteTestVector, PeriodicPotential,
};
use eigenbounds::{optimize_lower, optimize_upper, OptimizerConfig, TestFamily};

fn main() -> eigenbounds::Result<()> {
    let potential = PeriodicPotential::harper(1, 5, 2.0)?;
    let n = potential.period();
    let exact = bloch_matrix(&potential, 0.0)?.exact_ground_energy()?.e0;

    // φ_q = exp(λ cos(2πq/5)) peaks where the potential is lowest
    let family = TestFamily::new(vec![(0.0, 3.0)], move |lambda: &[f64]| {
        let phi = (0..n)
            .map(|q| (lambda[0] * (std::f64::consts::TAU * q as f64 / n as f64).cos()).exp())
            .collect();
        DiscreteTestVector::new(phi).expect("exponentials are positive")
    })?;
    let build = |phi: &DiscreteTestVector| local_energy_discrete(&potential, phi, 0.0);
    let config = OptimizerConfig::default();
    let lower = optimize_lower(&family, build, &config)?;
    let upper = optimize_upper(&family, build, &config)?;
    println!(
        "best lower {:.8} at lambda = {:.6}",
        lower.bound, lower.lambda[0]
    );
    println!(
        "best upper {:.8} at lambda = {:.6}",
        upper.bound, upper.lambda[0]
    );
    println!("oracle     {exact:.8}");
    Ok(())
}
