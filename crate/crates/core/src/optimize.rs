//! Optimization of local-energy bounds over a parameterized family of test
//! functions.
//!
//! Every visited parameter yields a valid enclosure on an exactly enumerated
//! domain, so the optimizer only has to keep the best bound seen. The search
//! itself is a box-constrained Nelder–Mead simplex with seeded multi-start.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{extrema, BoundsResult, LocalEnergyProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub max_iterations: usize,
    /// Absolute tolerance on the objective.
    pub tolerance: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            tolerance: 1e-10,
            restarts: 4,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn new(max_iterations: usize, tolerance: f64, restarts: usize, seed: u64) -> Result<Self> {
        let config = Self {
            max_iterations,
            tolerance,
            restarts,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::InvalidArgument("max_iterations must be >= 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be > 0, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// A family `λ ↦ φ_λ` of test functions over a closed box of parameters.
pub struct TestFamily<F> {
    bounds: Vec<(f64, f64)>,
    evaluate: F,
}

impl<F> TestFamily<F> {
    pub fn new(bounds: Vec<(f64, f64)>, evaluate: F) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidArgument("parameter box is empty".into()));
        }
        for &(lo, hi) in &bounds {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidArgument(format!(
                    "invalid parameter interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { bounds, evaluate })
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn evaluate<T>(&self, lambda: &[f64]) -> T
    where
        F: Fn(&[f64]) -> T,
    {
        (self.evaluate)(lambda)
    }

    pub fn contains(&self, lambda: &[f64]) -> bool {
        lambda.len() == self.bounds.len()
            && lambda
                .iter()
                .zip(&self.bounds)
                .all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    fn clamp(&self, lambda: &mut [f64]) {
        for (x, &(lo, hi)) in lambda.iter_mut().zip(&self.bounds) {
            *x = x.clamp(lo, hi);
        }
    }

    fn center(&self) -> Vec<f64> {
        self.bounds.iter().map(|(lo, hi)| 0.5 * (lo + hi)).collect()
    }
}

/// Outcome of a bound optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimized {
    pub lambda: Vec<f64>,
    pub bound: f64,
    /// Extrema of the profile at `lambda`.
    pub bounds: BoundsResult,
    /// Best-so-far bound after each profile evaluation.
    pub history: Vec<f64>,
    pub evaluations: usize,
    /// No start met the tolerance within `max_iterations`. The bound is still valid.
    pub stalled: bool,
}

#[derive(Clone, Copy)]
enum Sense {
    Lower,
    Upper,
}

/// `sup_λ inf_q E_{φ_λ}(q)` over the visited parameters.
pub fn optimize_lower<F, T, B>(
    family: &TestFamily<F>,
    build_profile: B,
    config: &OptimizerConfig,
) -> Result<Optimized>
where
    F: Fn(&[f64]) -> T,
    B: Fn(&T) -> Result<LocalEnergyProfile>,
{
    optimize(family, build_profile, config, Sense::Lower)
}

/// `inf_λ sup_q E_{φ_λ}(q)` over the visited parameters.
pub fn optimize_upper<F, T, B>(
    family: &TestFamily<F>,
    build_profile: B,
    config: &OptimizerConfig,
) -> Result<Optimized>
where
    F: Fn(&[f64]) -> T,
    B: Fn(&T) -> Result<LocalEnergyProfile>,
{
    optimize(family, build_profile, config, Sense::Upper)
}

struct Tracker {
    best: Option<(f64, Vec<f64>, BoundsResult)>,
    history: Vec<f64>,
    evaluations: usize,
    sense: Sense,
}

impl Tracker {
    fn objective(&self, b: &BoundsResult) -> f64 {
        match self.sense {
            Sense::Lower => -b.lower,
            Sense::Upper => b.upper,
        }
    }

    fn record(&mut self, lambda: &[f64], b: BoundsResult) -> f64 {
        let f = self.objective(&b);
        self.evaluations += 1;
        if self.best.as_ref().is_none_or(|(fb, _, _)| f < *fb) {
            self.best = Some((f, lambda.to_vec(), b));
        }
        let fb = self.best.as_ref().map(|(fb, _, _)| *fb).unwrap_or(f);
        self.history.push(match self.sense {
            Sense::Lower => -fb,
            Sense::Upper => fb,
        });
        f
    }
}

fn optimize<F, T, B>(
    family: &TestFamily<F>,
    build_profile: B,
    config: &OptimizerConfig,
    sense: Sense,
) -> Result<Optimized>
where
    F: Fn(&[f64]) -> T,
    B: Fn(&T) -> Result<LocalEnergyProfile>,
{
    config.validate()?;
    let mut tracker = Tracker {
        best: None,
        history: Vec::new(),
        evaluations: 0,
        sense,
    };
    let eval = |lambda: &[f64], tracker: &mut Tracker| -> Result<f64> {
        let phi = family.evaluate(lambda);
        let b = extrema(&build_profile(&phi)?)?;
        Ok(tracker.record(lambda, b))
    };

    let free: Vec<usize> = (0..family.dimension())
        .filter(|&i| family.bounds[i].0 < family.bounds[i].1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut any_converged = free.is_empty();

    for start in 0..=config.restarts {
        let x0 = if start == 0 {
            family.center()
        } else {
            family
                .bounds
                .iter()
                .map(|&(lo, hi)| if lo < hi { rng.gen_range(lo..=hi) } else { lo })
                .collect()
        };
        if free.is_empty() {
            eval(&x0, &mut tracker)?;
            break;
        }
        any_converged |= nelder_mead(family, &free, x0, config, |x| eval(x, &mut tracker))?;
    }

    let (_, lambda, bounds) = tracker.best.expect("at least one evaluation");
    Ok(Optimized {
        bound: match sense {
            Sense::Lower => bounds.lower,
            Sense::Upper => bounds.upper,
        },
        lambda,
        bounds,
        history: tracker.history,
        evaluations: tracker.evaluations,
        stalled: !any_converged,
    })
}

/// Minimizes `f` over the free coordinates of the family box. Returns whether
/// the simplex spread dropped below the tolerance.
fn nelder_mead<F, G>(
    family: &TestFamily<F>,
    free: &[usize],
    x0: Vec<f64>,
    config: &OptimizerConfig,
    mut f: G,
) -> Result<bool>
where
    G: FnMut(&[f64]) -> Result<f64>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = free.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = f(&x0)?;
    simplex.push((x0.clone(), fx0));
    for &i in free {
        let (lo, hi) = family.bounds[i];
        let step = 0.1 * (hi - lo);
        let mut x = x0.clone();
        x[i] = if x[i] + step <= hi {
            x[i] + step
        } else {
            x[i] - step
        };
        let fx = f(&x)?;
        simplex.push((x, fx));
    }

    let point = |base: &[f64], toward: &[f64], t: f64| -> Vec<f64> {
        let mut x: Vec<f64> = base
            .iter()
            .zip(toward)
            .map(|(b, w)| b + t * (w - b))
            .collect();
        family.clamp(&mut x);
        x
    };

    for _ in 0..config.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        if spread.abs() <= config.tolerance
            || (simplex[n].1.is_infinite() && simplex[0].1 == simplex[n].1)
        {
            return Ok(true);
        }

        let mut centroid = vec![0.0; x0.len()];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let reflected = point(&centroid, &worst, -REFLECT);
        let fr = f(&reflected)?;

        if fr < simplex[0].1 {
            let expanded = point(&centroid, &worst, -EXPAND);
            let fe = f(&expanded)?;
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (target, ft) = if fr < simplex[n].1 {
                (reflected, fr)
            } else {
                (worst, simplex[n].1)
            };
            let contracted = point(&centroid, &target, CONTRACT);
            let fc = f(&contracted)?;
            if fc < ft {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x = point(&best, &entry.0, SHRINK);
                    let fx = f(&x)?;
                    *entry = (x, fx);
                }
            }
        }
    }
    Ok(false)
}
