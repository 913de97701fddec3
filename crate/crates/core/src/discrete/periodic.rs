use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{exact_ground_energy, GroundState, Matrix};
use crate::profile::LocalEnergyProfile;

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarperParams {
    pub v0: f64,
    pub m: usize,
}

/// `N`-periodic potential on `ℤ`, optionally of Harper form
/// `V(q) = -V₀ cos(2π q M / N)`.
///
/// Tabulated potentials are extended to non-integer arguments `q + η₂` by
/// periodic linear interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPotential {
    values: Vec<f64>,
    harper: Option<HarperParams>,
}

impl PeriodicPotential {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("potential has no values".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "potential value {v} is not finite"
            )));
        }
        Ok(Self {
            values,
            harper: None,
        })
    }

    pub fn harper(m: usize, n: usize, v0: f64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!(
                "need M, N >= 1, got M = {m}, N = {n}"
            )));
        }
        if gcd(m, n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
        if !(v0 >= 0.0 && v0.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "V0 must be finite and >= 0, got {v0}"
            )));
        }
        let harper = HarperParams { v0, m };
        let values = (0..n).map(|q| harper_integer(harper, n, q)).collect();
        Ok(Self {
            values,
            harper: Some(harper),
        })
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn harper_params(&self) -> Option<HarperParams> {
        self.harper
    }

    /// `V(q + η₂)`.
    pub fn sample(&self, q: usize, eta2: f64) -> f64 {
        let n = self.period();
        let q = q % n;
        if eta2 == 0.0 {
            return self.values[q];
        }
        match self.harper {
            Some(h) => -h.v0 * (2.0 * PI * (q as f64 + eta2) * h.m as f64 / n as f64).cos(),
            None => (1.0 - eta2) * self.values[q] + eta2 * self.values[(q + 1) % n],
        }
    }

    pub fn sampled(&self, eta2: f64) -> Vec<f64> {
        (0..self.period()).map(|q| self.sample(q, eta2)).collect()
    }
}

// Reduces qM mod N to the representative nearest 0 so that (M, N) and
// (N - M, N) produce bitwise identical samples.
fn harper_integer(h: HarperParams, n: usize, q: usize) -> f64 {
    let k = (q * h.m) % n;
    let k = k.min(n - k);
    -h.v0 * (2.0 * PI * k as f64 / n as f64).cos()
}

pub(crate) fn check_eta2(eta2: f64) -> Result<()> {
    if (0.0..1.0).contains(&eta2) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "eta2 must lie in [0, 1), got {eta2}"
        )))
    }
}

/// Strictly positive test vector, indexed modulo its length.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTestVector(Vec<f64>);

impl DiscreteTestVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("test vector is empty".into()));
        }
        if let Some((index, &value)) = components
            .iter()
            .enumerate()
            .find(|(_, &p)| !(p > 0.0 && p.is_finite()))
        {
            return Err(Error::NonPositiveTestVector { index, value });
        }
        Ok(Self(components))
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn components_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

/// `E(q) = -(φ_{q+1} + φ_{q-1}) / φ_q + V(q + η₂)`, indices modulo `N`.
pub fn local_energy_discrete(
    potential: &PeriodicPotential,
    phi: &DiscreteTestVector,
    eta2: f64,
) -> Result<LocalEnergyProfile> {
    check_eta2(eta2)?;
    let n = potential.period();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.len(),
        });
    }
    let v = potential.sampled(eta2);
    Ok(LocalEnergyProfile::from_values(profile_values(
        &v,
        phi.as_slice(),
    )))
}

pub(crate) fn profile_values(v: &[f64], phi: &[f64]) -> Vec<f64> {
    let n = v.len();
    (0..n).map(|q| site_energy(v, phi, q)).collect()
}

#[inline]
pub(crate) fn site_energy(v: &[f64], phi: &[f64], q: usize) -> f64 {
    let n = v.len();
    -(phi[(q + 1) % n] + phi[(q + n - 1) % n]) / phi[q] + v[q]
}

/// The `N×N` Bloch matrix at `η = (0, η₂)`: diagonal `V(q + η₂)`, `-1` on
/// the wrapped first off-diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochMatrix {
    matrix: Matrix<f64>,
    eta2: f64,
}

impl BlochMatrix {
    pub fn matrix(&self) -> &Matrix<f64> {
        &self.matrix
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn exact_ground_energy(&self) -> Result<GroundState> {
        exact_ground_energy(&self.matrix)
    }
}

pub fn bloch_matrix(potential: &PeriodicPotential, eta2: f64) -> Result<BlochMatrix> {
    check_eta2(eta2)?;
    let n = potential.period();
    if n <= 2 {
        return Err(Error::PeriodTooSmall(n));
    }
    let mut matrix = Matrix::diagonal(&potential.sampled(eta2));
    for q in 0..n {
        let next = (q + 1) % n;
        matrix.set(q, next, -1.0);
        matrix.set(next, q, -1.0);
    }
    Ok(BlochMatrix { matrix, eta2 })
}
