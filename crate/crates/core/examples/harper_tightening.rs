//! Tightens the local-energy enclosure of the bottom of a Harper spectrum
//! starting from the constant test vector, and compares with the dense oracle.

use eigenbounds::discrete::{bloch_matrix, tighten_bounds, DiscreteTestVector, PeriodicPotential};
use eigenbounds::OptimizerConfig;

fn main() -> eigenbounds::Result<()> {
    let (m, n, v0) = (3, 7, 2.0);
    let potential = PeriodicPotential::harper(m, n, v0)?;
    let exact = bloch_matrix(&potential, 0.0)?.exact_ground_energy()?.e0;
    let config = OptimizerConfig {
        max_iterations: 100_000,
        tolerance: 1e-9,
        ..OptimizerConfig::default()
    };
    let t = tighten_bounds(&potential, &DiscreteTestVector::ones(n), 0.0, &config)?;

    println!("Harper M/N = {m}/{n}, V0 = {v0}");
    for (k, b) in t.trace.iter().enumerate().filter(|(k, _)| k % 20 == 0) {
        println!(
            "  iteration {k:4}: [{:.12}, {:.12}]  width {:.3e}",
            b.lower,
            b.upper,
            b.width()
        );
    }
    println!(
        "final [{:.12}, {:.12}] after {} iterations ({} power steps)",
        t.bounds.lower, t.bounds.upper, t.iterations, t.power_steps
    );
    println!(
        "oracle {exact:.12}, enclosed: {}",
        t.bounds.encloses(exact, 1e-12)
    );
    Ok(())
}
