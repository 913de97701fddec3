use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::Serialize;

use super::angular::{angles_sum_fn, angles_sum_fn_with_gradient, AngularValue};
use super::configuration::Configuration;
use super::named::fibonacci_sphere;
use crate::error::{Error, Result};
use crate::optimize::OptimizerConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct FnMaximum {
    pub best_value: f64,
    pub best_config: Configuration,
    /// Index of the start that produced the best value.
    pub best_start: usize,
    pub starts: Vec<StartOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StartOutcome {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

const MAX_STEP: f64 = 10.0;
const MIN_STEP: f64 = 1e-16;

fn start_rng(seed: u64, start: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    rng
}

fn gaussian_start(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Configuration {
    loop {
        let coords: Vec<f64> = (0..n * d).map(|_| StandardNormal.sample(rng)).collect();
        if let Ok(c) = Configuration::from_flat(d, &coords) {
            if c.check_distinct().is_ok() {
                return c.normalized();
            }
        }
    }
}

fn evaluate(c: &Configuration) -> f64 {
    angles_sum_fn(c).map_or(f64::NEG_INFINITY, |v| v.value)
}

fn ascend(start: Configuration, config: &OptimizerConfig) -> (Configuration, StartOutcome) {
    let mut x = start;
    let mut value = evaluate(&x);
    let mut step = 0.1;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        iterations += 1;
        let Ok(AngularValue {
            gradient: Some(g), ..
        }) = angles_sum_fn_with_gradient(&x)
        else {
            break;
        };
        let g2: f64 = g.iter().flatten().map(|v| v * v).sum();
        if g2.sqrt() <= config.tolerance {
            converged = true;
            break;
        }
        let mut accepted = false;
        while step >= MIN_STEP {
            let moved: Vec<Vec<f64>> = x
                .points()
                .iter()
                .zip(&g)
                .map(|(p, gp)| p.iter().zip(gp).map(|(a, b)| a + step * b).collect())
                .collect();
            let Ok(trial) = Configuration::new(x.dim(), moved) else {
                step *= 0.5;
                continue;
            };
            let trial = trial.normalized();
            let trial_value = evaluate(&trial);
            if trial_value >= value + 1e-4 * step * g2 {
                let stalled = trial_value - value <= f64::EPSILON * value.abs();
                x = trial;
                value = trial_value;
                step = (step * 2.0).min(MAX_STEP);
                accepted = !stalled;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            converged = step >= MIN_STEP;
            break;
        }
    }
    (
        x,
        StartOutcome {
            value,
            iterations,
            converged,
        },
    )
}

/// Multi-start gradient ascent on `F_N` with the analytic gradient.
///
/// Each start draws Gaussian points from its own ChaCha8 stream of
/// `config.seed`, so the result does not depend on thread scheduling.
/// After every step the configuration is recentred and rescaled to unit
/// RMS radius. The best value is attained by the returned configuration,
/// so it is a lower bound on `sup F_N`.
pub fn maximize_fn(n: usize, d: usize, config: &OptimizerConfig) -> Result<FnMaximum> {
    config.validate()?;
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need N >= 3, got {n}")));
    }
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let runs: Vec<(Configuration, StartOutcome)> = (0..config.restarts.max(1))
        .into_par_iter()
        .map(|s| {
            let mut rng = start_rng(config.seed, s);
            ascend(gaussian_start(n, d, &mut rng), config)
        })
        .collect();
    let mut best = 0;
    for (i, (_, outcome)) in runs.iter().enumerate() {
        if outcome.value > runs[best].1.value {
            best = i;
        }
    }
    let best_value = runs[best].1.value;
    let best_config = runs[best].0.clone();
    Ok(FnMaximum {
        best_value,
        best_config,
        best_start: best,
        starts: runs.into_iter().map(|(_, o)| o).collect(),
    })
}

/// `F_N / N³` for a Fibonacci lattice on the unit sphere; tends to `2/9`.
///
/// The seed only rotates the lattice about the polar axis.
pub fn sphere_limit_check(n: usize, seed: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need N >= 3, got {n}")));
    }
    let offset = if seed == 0 {
        0.0
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Uniform::new(0.0, std::f64::consts::TAU).sample(&mut rng)
    };
    let c = fibonacci_sphere(n, offset)?;
    Ok(angles_sum_fn(&c)?.value / (n as f64).powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(restarts: usize) -> OptimizerConfig {
        OptimizerConfig {
            max_iterations: 5000,
            tolerance: 1e-10,
            restarts,
            seed: 7,
        }
    }

    #[test]
    fn triangle_maximum() {
        let best = maximize_fn(3, 3, &config(4)).unwrap();
        assert!((best.best_value - 1.5).abs() < 1e-8);
        assert_eq!(best.starts.len(), 4);
        assert!((evaluate(&best.best_config) - best.best_value).abs() < 1e-12);
    }

    #[test]
    fn deterministic_under_parallelism() {
        let a = maximize_fn(5, 3, &config(6)).unwrap();
        let b = maximize_fn(5, 3, &config(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sphere_lattice_trend() {
        let a = sphere_limit_check(200, 0).unwrap();
        let b = sphere_limit_check(500, 0).unwrap();
        assert!((a - 2.0 / 9.0).abs() < 0.05 * 2.0 / 9.0);
        assert!((b - 2.0 / 9.0).abs() < (a - 2.0 / 9.0).abs());
        let rotated = sphere_limit_check(200, 3).unwrap();
        assert!((rotated - a).abs() < 1e-10);
    }

    #[test]
    fn rejects_small_inputs() {
        assert!(maximize_fn(2, 3, &config(1)).is_err());
        assert!(maximize_fn(4, 1, &config(1)).is_err());
    }
}
