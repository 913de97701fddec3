//! N-body local energies for factorized test functions `Φ = Π_{i<j} φ_ij(r_ij)`
//! with `H = Σ -Δ_i/(2m_i) + Σ v_ij(r_ij)`.

use std::sync::Arc;

use super::angular::angles_sum_fn;
use super::configuration::{Configuration, ParticleSystem};
use crate::error::{Error, Result};

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Radial factor `φ(r) > 0` with its log-derivative `S′ = φ′/φ` and `φ″`.
#[derive(Clone)]
pub struct PairFunction {
    phi: RadialFn,
    log_derivative: RadialFn,
    second_derivative: RadialFn,
    two_body_energy: Option<f64>,
}

impl std::fmt::Debug for PairFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairFunction")
            .field("two_body_energy", &self.two_body_energy)
            .finish_non_exhaustive()
    }
}

impl PairFunction {
    pub fn new(
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        log_derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
        second_derivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            phi: Arc::new(phi),
            log_derivative: Arc::new(log_derivative),
            second_derivative: Arc::new(second_derivative),
            two_body_energy: None,
        }
    }

    /// `φ(r) = e^{a r}`, constant log-derivative `a`.
    pub fn exponential(a: f64) -> Self {
        Self::new(
            move |r| (a * r).exp(),
            move |_| a,
            move |r| a * a * (a * r).exp(),
        )
    }

    pub fn with_two_body_energy(mut self, energy: f64) -> Self {
        self.two_body_energy = Some(energy);
        self
    }

    pub fn phi(&self, r: f64) -> f64 {
        (self.phi)(r)
    }

    pub fn log_derivative(&self, r: f64) -> f64 {
        (self.log_derivative)(r)
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        (self.second_derivative)(r)
    }

    pub fn two_body_energy(&self) -> Option<f64> {
        self.two_body_energy
    }

    /// Compares `S′` against a Richardson-extrapolated central difference of `ln φ`.
    fn check_consistency(&self, radii: &[f64], i: usize, j: usize) -> Result<()> {
        for &r in radii {
            let phi = self.phi(r);
            if !(phi > 0.0 && phi.is_finite()) {
                return Err(Error::UndefinedPairFunction { i, j, r });
            }
            let h = 1e-3 * r.max(1e-3);
            let log = |x: f64| self.phi(x).ln();
            let d1 = (log(r + h) - log(r - h)) / (2.0 * h);
            let d2 = (log(r + h / 2.0) - log(r - h / 2.0)) / h;
            let fd = (4.0 * d2 - d1) / 3.0;
            let s = self.log_derivative(r);
            if !fd.is_finite() || (fd - s).abs() > 1e-8 * (1.0 + s.abs()) {
                return Err(Error::InvalidArgument(format!(
                    "pair ({i},{j}): log-derivative {s} disagrees with finite difference {fd} at r = {r}"
                )));
            }
        }
        Ok(())
    }
}

/// Radii used by the construction-time consistency check.
pub fn default_check_radii() -> Vec<f64> {
    (0..9).map(|k| 0.25 * 1.5f64.powi(k)).collect()
}

/// One pair function for every unordered pair `i < j`.
#[derive(Debug, Clone)]
pub struct PairFunctionSet {
    n: usize,
    pairs: Vec<PairFunction>,
}

fn pair_slot(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl PairFunctionSet {
    /// `pair(i, j)` is called once per `i < j`.
    pub fn new(
        n: usize,
        mut pair: impl FnMut(usize, usize) -> PairFunction,
        check_radii: &[f64],
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 particles, got {n}"
            )));
        }
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let f = pair(i, j);
                f.check_consistency(check_radii, i, j)?;
                pairs.push(f);
            }
        }
        Ok(Self { n, pairs })
    }

    pub fn uniform(n: usize, pair: PairFunction, check_radii: &[f64]) -> Result<Self> {
        Self::new(n, |_, _| pair.clone(), check_radii)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn pair(&self, i: usize, j: usize) -> &PairFunction {
        &self.pairs[pair_slot(self.n, i, j)]
    }

    /// `max |S′_ij(r)|` over the given radii.
    pub fn sampled_s(&self, radii: &[f64]) -> f64 {
        self.pairs
            .iter()
            .flat_map(|p| radii.iter().map(move |&r| p.log_derivative(r).abs()))
            .fold(0.0, f64::max)
    }
}

fn check_sizes(c: &Configuration, sys: &ParticleSystem) -> Result<()> {
    if sys.len() != c.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            found: sys.len(),
        });
    }
    Ok(())
}

fn cosine(c: &Configuration, vertex: usize, j: usize, k: usize) -> f64 {
    let (o, a, b) = (c.point(vertex), c.point(j), c.point(k));
    let dot: f64 = (0..c.dim()).map(|t| (a[t] - o[t]) * (b[t] - o[t])).sum();
    dot / (c.distance(vertex, j) * c.distance(vertex, k))
}

/// Local energy of a factorized test function: pair kinetic and potential terms
/// plus the three-body angular cross terms.
pub fn local_energy_nbody(
    c: &Configuration,
    sys: &ParticleSystem,
    pairs: &PairFunctionSet,
    potential: impl Fn(usize, usize, f64) -> f64,
) -> Result<f64> {
    check_sizes(c, sys)?;
    if pairs.len() != c.len() {
        return Err(Error::DimensionMismatch {
            expected: c.len(),
            found: pairs.len(),
        });
    }
    c.check_distinct()?;
    let n = c.len();
    let dm1 = (c.dim() - 1) as f64;
    let mut energy = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let r = c.distance(i, j);
            let f = pairs.pair(i, j);
            let phi = f.phi(r);
            if !(phi > 0.0 && phi.is_finite()) {
                return Err(Error::UndefinedPairFunction { i, j, r });
            }
            let ratio = f.second_derivative(r) / phi;
            let kinetic = -(ratio + dm1 / r * f.log_derivative(r)) / (2.0 * sys.reduced_mass(i, j));
            let term = kinetic + potential(i, j, r);
            if !term.is_finite() {
                return Err(Error::UndefinedPairFunction { i, j, r });
            }
            energy += term;
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                if j == i || k == i {
                    continue;
                }
                let sj = pairs.pair(i, j).log_derivative(c.distance(i, j));
                let sk = pairs.pair(i, k).log_derivative(c.distance(i, k));
                energy -= sj * sk * cosine(c, i, j, k) / sys.mass(i);
            }
        }
    }
    Ok(energy)
}

/// Coulomb local energy with the constant log-derivatives `S′_ij = 2 e_ij m_ij / (d-1)`.
pub fn local_energy_coulomb(c: &Configuration, sys: &ParticleSystem) -> Result<f64> {
    check_sizes(c, sys)?;
    c.check_distinct()?;
    let n = c.len();
    let dm1 = (c.dim() - 1) as f64;
    let mut pair_sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let e = sys.charge(i, j);
            pair_sum -= 2.0 * sys.reduced_mass(i, j) * e * e;
        }
    }
    let mut angle_sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                if j == i || k == i {
                    continue;
                }
                let w = sys.reduced_mass(i, j)
                    * sys.reduced_mass(i, k)
                    * sys.charge(i, j)
                    * sys.charge(i, k);
                angle_sum += w / sys.mass(i) * cosine(c, i, j, k);
            }
        }
    }
    Ok((pair_sum - 4.0 * angle_sum) / (dm1 * dm1))
}

/// Identical unit-mass particles with `e_ij = -1`: `-(N(N-1)/2 + F_N)/(d-1)²`.
pub fn local_energy_identical(c: &Configuration) -> Result<f64> {
    let n = c.len() as f64;
    let dm1 = (c.dim() - 1) as f64;
    let f = angles_sum_fn(c)?.value;
    Ok(-(n * (n - 1.0) / 2.0 + f) / (dm1 * dm1))
}
