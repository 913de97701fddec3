use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Relative distance below which two points count as coincident.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-12;

/// `N` labelled points in `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if points.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-finite coordinate in {p:?}"
                )));
            }
        }
        Ok(Self { dim, points })
    }

    /// Points stored consecutively, `dim` coordinates each.
    pub fn from_flat(dim: usize, coords: &[f64]) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len(),
            });
        }
        Self::new(dim, coords.chunks(dim).map(<[f64]>::to_vec).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn flat(&self) -> Vec<f64> {
        self.points.concat()
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.points[i]
            .iter()
            .zip(&self.points[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut d = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                d = d.max(self.distance(i, j));
            }
        }
        d
    }

    /// Fails when some `r_ij ≤ 10⁻¹² × diameter`.
    pub fn check_distinct(&self) -> Result<()> {
        let threshold = COINCIDENCE_THRESHOLD * self.diameter();
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.distance(i, j) <= threshold {
                    return Err(Error::CoincidentPoints { i, j });
                }
            }
        }
        Ok(())
    }

    /// Restricts to the listed points, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(
            self.dim,
            indices.iter().map(|&i| self.points[i].clone()).collect(),
        )
    }

    /// Translated to the centroid and scaled to unit RMS radius.
    pub fn normalized(&self) -> Self {
        let n = self.len() as f64;
        let mut centroid = vec![0.0; self.dim];
        for p in &self.points {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n;
            }
        }
        let mut points: Vec<Vec<f64>> = self
            .points
            .iter()
            .map(|p| p.iter().zip(&centroid).map(|(x, c)| x - c).collect())
            .collect();
        let rms = (points.iter().flatten().map(|x| x * x).sum::<f64>() / n).sqrt();
        if rms > 0.0 {
            for x in points.iter_mut().flatten() {
                *x /= rms;
            }
        }
        Self {
            dim: self.dim,
            points,
        }
    }
}

/// Masses and pairwise Coulomb couplings `v_ij(r) = e_ij / r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSystem {
    masses: Vec<f64>,
    charges: Matrix<f64>,
}

impl ParticleSystem {
    pub fn new(masses: Vec<f64>, charges: Matrix<f64>) -> Result<Self> {
        let n = masses.len();
        if let Some(m) = masses.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
            return Err(Error::InvalidArgument(format!("mass {m} is not positive")));
        }
        if charges.rows() != n || charges.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: charges.rows(),
            });
        }
        let asym = charges.asymmetry();
        if asym > 0.0 {
            return Err(Error::NotSymmetric(asym));
        }
        if charges.data().iter().any(|e| !e.is_finite()) {
            return Err(Error::InvalidArgument("charges must be finite".into()));
        }
        Ok(Self { masses, charges })
    }

    /// Unit masses, attractive unit couplings `e_ij = -1`.
    pub fn identical(n: usize) -> Self {
        let mut charges = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    charges.set(i, j, -1.0);
                }
            }
        }
        Self {
            masses: vec![1.0; n],
            charges,
        }
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    pub fn charge(&self, i: usize, j: usize) -> f64 {
        self.charges.get(i, j)
    }

    /// `m_i m_j / (m_i + m_j)`.
    pub fn reduced_mass(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (self.masses[i], self.masses[j]);
        a * b / (a + b)
    }
}
