//! Iterative tightening of the discrete local-energy enclosure.
//!
//! Each iteration lowers the maximum of the profile by moving the single
//! component `φ_{q_max}` until the local energy at `q_max` meets the larger of
//! its two neighbours, then raises the minimum the same way at `q_min`. Each
//! move only touches three profile values and never widens the enclosure.
//!
//! Single-component moves can lock up once an extremum is shared by two
//! adjacent sites. When a pair of moves fails to shrink the width by at least
//! [`STALL_RATIO`], one step of shifted power iteration `φ ← (c - H)φ` is taken
//! instead. For `c > max V` the matrix `c - H` is nonnegative and primitive, so
//! the Collatz–Wielandt bounds (which are the profile extrema) are monotone
//! under that step as well, up to rounding.
//!
//! The reported enclosure is the best lower and best upper bound over all
//! vectors visited; each side is a valid bound on its own.

use rayon::prelude::*;
use serde::Serialize;

use super::periodic::{
    bloch_matrix, check_eta2, gcd, profile_values, site_energy, DiscreteTestVector,
    PeriodicPotential,
};
use crate::error::{Error, Result};
use crate::optimize::OptimizerConfig;
use crate::profile::{extrema, BoundsResult, LocalEnergyProfile};

/// Relative width reduction below which an iteration counts as stalled.
pub const STALL_RATIO: f64 = 1e-3;

/// Iterations without any narrowing after which the search gives up.
const PATIENCE: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct Tightened {
    pub phi: DiscreteTestVector,
    /// Best enclosure seen; `phi` attains it up to rounding.
    pub bounds: BoundsResult,
    /// Enclosure before the first move and after every iteration.
    pub trace: Vec<BoundsResult>,
    pub iterations: usize,
    pub power_steps: usize,
    pub converged: bool,
}

#[derive(Clone, Copy)]
enum Side {
    Max,
    Min,
}

pub fn tighten_bounds(
    potential: &PeriodicPotential,
    phi0: &DiscreteTestVector,
    eta2: f64,
    config: &OptimizerConfig,
) -> Result<Tightened> {
    config.validate()?;
    check_eta2(eta2)?;
    let n = potential.period();
    if n <= 2 {
        return Err(Error::PeriodTooSmall(n));
    }
    if phi0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi0.len(),
        });
    }
    let v = potential.sampled(eta2);
    let shift = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 1.0;

    let mut phi = phi0.clone();
    // enclosure given by the current vector, and the best one seen so far
    let mut own = enclosure(&v, phi.as_slice())?;
    let mut current = own.clone();
    let mut trace = vec![current.clone()];
    let mut iterations = 0;
    let mut power_steps = 0;
    let mut converged = current.width() <= config.tolerance;
    let mut last_progress = 0;

    while !converged && iterations < config.max_iterations {
        let before = own.width();

        let mut trial = phi.clone();
        let q = own.argmax.index().expect("indexed profile");
        move_extremizer(&v, trial.components_mut(), q, Side::Max);
        let after_max = enclosure(&v, trial.as_slice())?;
        if no_wider(&after_max, &own) {
            phi = trial.clone();
            own = after_max;
        } else {
            trial = phi.clone();
        }
        let q = own.argmin.index().expect("indexed profile");
        move_extremizer(&v, trial.components_mut(), q, Side::Min);
        let after_min = enclosure(&v, trial.as_slice())?;
        if no_wider(&after_min, &own) {
            phi = trial;
            own = after_min;
        }

        if own.width() > before * (1.0 - STALL_RATIO) {
            let stepped = power_step(&v, shift, phi.as_slice());
            let after = enclosure(&v, &stepped)?;
            // exact arithmetic never widens here; allow for rounding only
            let slack = 8.0 * f64::EPSILON * own.lower.abs().max(own.upper.abs());
            if after.upper <= own.upper + slack && after.lower >= own.lower - slack {
                phi = DiscreteTestVector::new(stepped)?;
                own = after;
                power_steps += 1;
            }
        }

        let previous = current.width();
        current = tighter(&current, &own);
        iterations += 1;
        trace.push(current.clone());
        converged = current.width() <= config.tolerance;
        if current.width() < previous {
            last_progress = iterations;
        } else if iterations - last_progress >= PATIENCE {
            break;
        }
    }

    Ok(Tightened {
        phi,
        bounds: current,
        trace,
        iterations,
        power_steps,
        converged,
    })
}

fn enclosure(v: &[f64], phi: &[f64]) -> Result<BoundsResult> {
    extrema(&LocalEnergyProfile::from_values(profile_values(v, phi)))
}

/// Both bounds are rigorous on their own, so the intersection is too.
fn tighter(a: &BoundsResult, b: &BoundsResult) -> BoundsResult {
    let (lower, argmin) = if b.lower > a.lower {
        (b.lower, b.argmin.clone())
    } else {
        (a.lower, a.argmin.clone())
    };
    let (upper, argmax) = if b.upper < a.upper {
        (b.upper, b.argmax.clone())
    } else {
        (a.upper, a.argmax.clone())
    };
    BoundsResult {
        lower,
        upper,
        argmin,
        argmax,
        rigorous: a.rigorous && b.rigorous,
    }
}

fn no_wider(next: &BoundsResult, prev: &BoundsResult) -> bool {
    next.upper <= prev.upper && next.lower >= prev.lower
}

/// Moves `φ_q` so that `E(q)` meets the extreme of its two neighbours.
///
/// `t ↦ E(q)` is increasing and `t ↦ E(q±1)` decreasing in `t = φ_q`, so the
/// gap is monotone and bisection applies. The endpoint kept is the one on the
/// original side of the crossing, which keeps the move inside the current
/// enclosure.
fn move_extremizer(v: &[f64], phi: &mut [f64], q: usize, side: Side) {
    let n = v.len();
    let (prev, next) = ((q + n - 1) % n, (q + 1) % n);
    let gap = |phi: &mut [f64], t: f64| -> f64 {
        phi[q] = t;
        let own = site_energy(v, phi, q);
        let (a, b) = (site_energy(v, phi, prev), site_energy(v, phi, next));
        match side {
            Side::Max => own - a.max(b),
            Side::Min => own - a.min(b),
        }
    };
    let t0 = phi[q];
    let g0 = gap(phi, t0);
    let (mut lo, mut hi) = match side {
        Side::Max if g0 > 0.0 => {
            let mut lo = 0.5 * t0;
            while gap(phi, lo) > 0.0 {
                lo *= 0.5;
            }
            (lo, t0)
        }
        Side::Min if g0 < 0.0 => {
            let mut hi = 2.0 * t0;
            while gap(phi, hi) < 0.0 {
                hi *= 2.0;
            }
            (t0, hi)
        }
        _ => {
            phi[q] = t0;
            return;
        }
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(phi, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    phi[q] = match side {
        Side::Max => hi,
        Side::Min => lo,
    };
}

fn power_step(v: &[f64], shift: f64, phi: &[f64]) -> Vec<f64> {
    let n = v.len();
    let stepped: Vec<f64> = (0..n)
        .map(|q| (shift - v[q]) * phi[q] + phi[(q + 1) % n] + phi[(q + n - 1) % n])
        .collect();
    let top = stepped.iter().cloned().fold(0.0, f64::max);
    stepped.into_iter().map(|x| x / top).collect()
}

/// One row of the Hofstadter bottom-edge sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ButterflyRow {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    pub exact: f64,
    pub iterations: usize,
}

/// Coprime fractions `M/N` with `3 ≤ N ≤ n_max`, `1 ≤ M < N`, ordered by `N` then `M`.
pub fn coprime_fractions(n_max: usize) -> Vec<(usize, usize)> {
    (3..=n_max)
        .flat_map(|n| (1..n).filter(move |&m| gcd(m, n) == 1).map(move |m| (m, n)))
        .collect()
}

/// Bounds on the bottom of the Harper spectrum at each flux `M/N`, where the
/// minimum over Bloch phases sits at `η = (0, 0)`, next to the dense oracle value.
///
/// Rows are computed in parallel and returned in input order.
pub fn hofstadter_bottom(
    fractions: &[(usize, usize)],
    v0: f64,
    config: &OptimizerConfig,
) -> Result<Vec<ButterflyRow>> {
    config.validate()?;
    for &(m, n) in fractions {
        if n <= 2 {
            return Err(Error::PeriodTooSmall(n));
        }
        if m == 0 || gcd(m, n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
    }
    fractions
        .par_iter()
        .map(|&(m, n)| {
            let potential = PeriodicPotential::harper(m, n, v0)?;
            let t = tighten_bounds(&potential, &DiscreteTestVector::ones(n), 0.0, config)?;
            let exact = bloch_matrix(&potential, 0.0)?.exact_ground_energy()?.e0;
            Ok(ButterflyRow {
                m,
                n,
                lower: t.bounds.lower,
                upper: t.bounds.upper,
                exact,
                iterations: t.iterations,
            })
        })
        .collect()
}
