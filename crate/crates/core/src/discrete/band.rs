use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::profile::LocalEnergyProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    /// Dirichlet truncation: neighbours outside the box contribute nothing.
    Truncated,
}

/// Hermitian band operator `(Hφ)_q = Σ_{|ν|∞ ≤ N_b} H_{q,q+ν} φ_{q+ν}` on a
/// finite box of `ℤ^d`. Sites are numbered row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BandOperator {
    shape: Vec<usize>,
    half_width: usize,
    boundary: Boundary,
    coefficients: BTreeMap<(usize, Vec<i64>), Complex64>,
}

impl BandOperator {
    pub fn new(shape: Vec<usize>, half_width: usize, boundary: Boundary) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "invalid lattice box {shape:?}"
            )));
        }
        Ok(Self {
            shape,
            half_width,
            boundary,
            coefficients: BTreeMap::new(),
        })
    }

    /// `H = I` on the box.
    pub fn identity(shape: Vec<usize>) -> Result<Self> {
        let mut op = Self::new(shape, 0, Boundary::Periodic)?;
        let zero = vec![0; op.dimension()];
        for q in 0..op.site_count() {
            op.coefficients
                .insert((q, zero.clone()), Complex64::new(1.0, 0.0));
        }
        Ok(op)
    }

    /// One-dimensional discrete Schrödinger operator
    /// `(Hφ)_q = -φ_{q+1} - φ_{q-1} + V(q) φ_q`.
    pub fn discrete_schrodinger(potential: &[f64], boundary: Boundary) -> Result<Self> {
        let mut op = Self::new(vec![potential.len()], 1, boundary)?;
        let minus_one = Complex64::new(-1.0, 0.0);
        for (q, &v) in potential.iter().enumerate() {
            op.set(q, &[0], Complex64::new(v, 0.0))?;
            op.set(q, &[1], minus_one)?;
            op.set(q, &[-1], minus_one)?;
        }
        Ok(op)
    }

    pub fn dimension(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn site_count(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn site_index(&self, coords: &[i64]) -> Option<usize> {
        if coords.len() != self.shape.len() {
            return None;
        }
        let mut index = 0usize;
        for (&c, &n) in coords.iter().zip(&self.shape) {
            let n_i = n as i64;
            let c = match self.boundary {
                Boundary::Periodic => c.rem_euclid(n_i),
                Boundary::Truncated if (0..n_i).contains(&c) => c,
                Boundary::Truncated => return None,
            };
            index = index * n + c as usize;
        }
        Some(index)
    }

    pub fn site_coords(&self, mut index: usize) -> Vec<i64> {
        let mut coords = vec![0i64; self.shape.len()];
        for (c, &n) in coords.iter_mut().zip(&self.shape).rev() {
            *c = (index % n) as i64;
            index /= n;
        }
        coords
    }

    /// Site reached from `site` by `offset`, if it lies in the box.
    pub fn neighbor(&self, site: usize, offset: &[i64]) -> Option<usize> {
        let coords: Vec<i64> = self
            .site_coords(site)
            .iter()
            .zip(offset)
            .map(|(c, o)| c + o)
            .collect();
        self.site_index(&coords)
    }

    /// Stores `H_{q,q+ν}`. Does not touch the mirrored entry.
    pub fn set(&mut self, site: usize, offset: &[i64], value: Complex64) -> Result<()> {
        if offset.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: offset.len(),
            });
        }
        if site >= self.site_count() {
            return Err(Error::InvalidArgument(format!(
                "site {site} outside the box"
            )));
        }
        if offset
            .iter()
            .any(|o| o.unsigned_abs() as usize > self.half_width)
        {
            return Err(Error::InvalidArgument(format!(
                "offset {offset:?} exceeds half-width {}",
                self.half_width
            )));
        }
        self.coefficients.insert((site, offset.to_vec()), value);
        Ok(())
    }

    /// Stores `H_{q,q+ν} = value` and `H_{q+ν,q} = conj(value)`.
    pub fn set_hermitian(&mut self, site: usize, offset: &[i64], value: Complex64) -> Result<()> {
        self.set(site, offset, value)?;
        if let Some(target) = self.neighbor(site, offset) {
            let back: Vec<i64> = offset.iter().map(|o| -o).collect();
            self.set(target, &back, value.conj())?;
        }
        Ok(())
    }

    pub fn coefficient(&self, site: usize, offset: &[i64]) -> Complex64 {
        self.coefficients
            .get(&(site, offset.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// Checks `H_{q',q} = conj(H_{q,q'})` for every stored pair.
    pub fn check_hermitian(&self) -> Result<()> {
        for ((site, offset), value) in &self.coefficients {
            let Some(target) = self.neighbor(*site, offset) else {
                continue;
            };
            let back: Vec<i64> = offset.iter().map(|o| -o).collect();
            let mirror = self.coefficient(target, &back);
            if (mirror - value.conj()).norm() > 1e-12 * (1.0 + value.norm()) {
                return Err(Error::NonHermitian {
                    site: *site,
                    offset: offset.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn apply(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        if phi.len() != self.site_count() {
            return Err(Error::DimensionMismatch {
                expected: self.site_count(),
                found: phi.len(),
            });
        }
        self.check_hermitian()?;
        let mut out = vec![Complex64::default(); phi.len()];
        for ((site, offset), value) in &self.coefficients {
            if let Some(target) = self.neighbor(*site, offset) {
                out[*site] += value * phi[target];
            }
        }
        Ok(out)
    }

    /// `E(q) = Re(Hφ)_q / φ_q` for a strictly positive real test vector.
    pub fn local_energy(&self, phi: &[f64]) -> Result<LocalEnergyProfile> {
        if let Some((index, &value)) = phi.iter().enumerate().find(|(_, &p)| !(p > 0.0)) {
            return Err(Error::NonPositiveTestVector { index, value });
        }
        let complex: Vec<Complex64> = phi.iter().map(|&p| Complex64::new(p, 0.0)).collect();
        let h_phi: Vec<f64> = self.apply(&complex)?.iter().map(|z| z.re).collect();
        LocalEnergyProfile::from_action(&h_phi, phi)
    }

    /// Dense matrix; wrapped couplings landing on the same entry are summed.
    pub fn to_dense(&self) -> Matrix<Complex64> {
        let n = self.site_count();
        let mut m = Matrix::zeros(n, n);
        for ((site, offset), value) in &self.coefficients {
            if let Some(target) = self.neighbor(*site, offset) {
                let current = m.get(*site, target);
                m.set(*site, target, current + value);
            }
        }
        m
    }
}

/// `Hφ` for a band operator.
pub fn apply_band(op: &BandOperator, phi: &[Complex64]) -> Result<Vec<Complex64>> {
    op.apply(phi)
}
