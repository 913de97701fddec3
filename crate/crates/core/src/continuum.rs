//! Grid-sampled local energies for continuum operators `H = -Δ + V`.
//!
//! Sampling a continuum never certifies an extremum, so every profile built
//! here is marked non-rigorous. The Zeeman bound has a closed form that is
//! reported next to its sampled counterpart.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{extrema, BoundsResult, LocalEnergyProfile, Site};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) || count < 2 {
            return Err(Error::InvalidArgument(format!(
                "axis needs min < max and at least 2 points, got [{min}, {max}] x {count}"
            )));
        }
        Ok(Self { min, max, count })
    }

    pub fn value(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * k as f64 / (self.count - 1) as f64
    }
}

/// Rectangular lattice, uniform per axis, enumerated row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    axes: Vec<Axis>,
}

impl GridDomain {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        for a in &axes {
            Axis::new(a.min, a.max, a.count)?;
        }
        Ok(Self { axes })
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, mut index: usize) -> Vec<f64> {
        let mut x = vec![0.0; self.axes.len()];
        for (slot, axis) in x.iter_mut().zip(&self.axes).rev() {
            *slot = axis.value(index % axis.count);
            index /= axis.count;
        }
        x
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

type PointFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A real function on `ℝ^d`, optionally with its Laplacian.
pub struct ScalarField {
    evaluate: PointFn,
    laplacian: Option<PointFn>,
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("has_laplacian", &self.laplacian.is_some())
            .finish()
    }
}

impl ScalarField {
    pub fn new(evaluate: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            evaluate: Box::new(evaluate),
            laplacian: None,
        }
    }

    pub fn with_laplacian(
        mut self,
        laplacian: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.laplacian = Some(Box::new(laplacian));
        self
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.evaluate)(x)
    }

    pub fn laplacian(&self, x: &[f64]) -> Option<f64> {
        self.laplacian.as_ref().map(|l| l(x))
    }
}

/// `V(x) - Δφ(x)/φ(x)` at every grid point.
pub fn local_energy_schrodinger(
    potential: &ScalarField,
    phi: &ScalarField,
    grid: &GridDomain,
) -> Result<LocalEnergyProfile> {
    if phi.laplacian.is_none() {
        return Err(Error::InvalidArgument(
            "test function needs a Laplacian".into(),
        ));
    }
    let evaluated: Vec<Result<(Vec<f64>, f64)>> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let x = grid.point(i);
            let p = phi.evaluate(&x);
            if !(p > 0.0 && p.is_finite()) {
                return Err(Error::NonPositiveTestFunction { point: x, value: p });
            }
            let lap = phi.laplacian(&x).unwrap_or(f64::NAN);
            let e = potential.evaluate(&x) - lap / p;
            Ok((x, e))
        })
        .collect();
    let mut sites = Vec::with_capacity(evaluated.len());
    let mut values = Vec::with_capacity(evaluated.len());
    for item in evaluated {
        let (x, e) = item?;
        sites.push(Site::Point(x));
        values.push(Some(e));
    }
    LocalEnergyProfile::new(sites, values, false)
}

/// Cylindrical coordinates and field strength for the hydrogen atom in a
/// uniform magnetic field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeemanPoint {
    pub rho: f64,
    pub z: f64,
    pub b: f64,
}

impl ZeemanPoint {
    pub fn new(rho: f64, z: f64, b: f64) -> Result<Self> {
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "rho must be >= 0, got {rho}"
            )));
        }
        if !(b >= 0.0 && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("B must be >= 0, got {b}")));
        }
        if !z.is_finite() {
            return Err(Error::InvalidArgument(format!("z must be finite, got {z}")));
        }
        Ok(Self { rho, z, b })
    }
}

/// `-1/2 + B/2 - ρ²B / (2√(ρ²+z²))` for the test function
/// `exp(-√(ρ²+z²) - Bρ²/4)`; the last term is taken as 0 at the origin.
pub fn local_energy_zeeman(p: ZeemanPoint) -> f64 {
    let r2 = p.rho * p.rho + p.z * p.z;
    let tail = if r2 == 0.0 {
        0.0
    } else {
        p.rho * p.rho * p.b / (2.0 * r2.sqrt())
    };
    -0.5 + 0.5 * p.b - tail
}

/// The certified bound `-1/2 + B/2` and the maximum of the sampled local
/// energy over a `(ρ, z)` grid.
pub fn zeeman_upper_bound(b: f64, grid: &GridDomain) -> Result<(f64, f64)> {
    if grid.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: grid.dimension(),
        });
    }
    if grid.axes()[0].min < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "rho axis must start at 0 or above, got {}",
            grid.axes()[0].min
        )));
    }
    ZeemanPoint::new(0.0, 0.0, b)?;
    let sampled = zeeman_profile(b, grid)?;
    let bounds = grid_extrema(&sampled)?;
    Ok((-0.5 + 0.5 * b, bounds.upper))
}

/// Zeeman local energy at every `(ρ, z)` point of the grid.
pub fn zeeman_profile(b: f64, grid: &GridDomain) -> Result<LocalEnergyProfile> {
    let mut sites = Vec::with_capacity(grid.len());
    let mut values = Vec::with_capacity(grid.len());
    for x in grid.points() {
        let p = ZeemanPoint::new(x[0], x[1], b)?;
        values.push(Some(local_energy_zeeman(p)));
        sites.push(Site::Point(x));
    }
    LocalEnergyProfile::new(sites, values, false)
}

/// Extrema of a sampled profile, always flagged non-rigorous.
pub fn grid_extrema(profile: &LocalEnergyProfile) -> Result<BoundsResult> {
    let mut bounds = extrema(profile)?;
    bounds.rigorous = false;
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(min: f64, max: f64, count: usize) -> GridDomain {
        GridDomain::new(vec![Axis::new(min, max, count).unwrap()]).unwrap()
    }

    fn gaussian() -> ScalarField {
        ScalarField::new(|x| (-x[0] * x[0] / 2.0).exp())
            .with_laplacian(|x| (x[0] * x[0] - 1.0) * (-x[0] * x[0] / 2.0).exp())
    }

    #[test]
    fn oscillator_is_flat() {
        let v = ScalarField::new(|x| x[0] * x[0]);
        let profile = local_energy_schrodinger(&v, &gaussian(), &line(-3.0, 3.0, 61)).unwrap();
        let b = grid_extrema(&profile).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
        assert!(!b.rigorous);
    }

    #[test]
    fn free_gaussian() {
        let v = ScalarField::new(|_| 0.0);
        let profile = local_energy_schrodinger(&v, &gaussian(), &line(-2.0, 2.0, 41)).unwrap();
        let b = grid_extrema(&profile).unwrap();
        assert!((b.lower + 3.0).abs() < 1e-12);
        assert!((b.upper - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_phi() {
        let v = ScalarField::new(|_| 0.0);
        let phi = ScalarField::new(|x| x[0]).with_laplacian(|_| 0.0);
        assert!(matches!(
            local_energy_schrodinger(&v, &phi, &line(-1.0, 1.0, 3)),
            Err(Error::NonPositiveTestFunction { .. })
        ));
        assert!(
            local_energy_schrodinger(&v, &ScalarField::new(|_| 1.0), &line(0.0, 1.0, 2)).is_err()
        );
    }

    #[test]
    fn zeeman_values() {
        assert_eq!(
            local_energy_zeeman(ZeemanPoint::new(3.0, 1.0, 0.0).unwrap()),
            -0.5
        );
        assert_eq!(
            local_energy_zeeman(ZeemanPoint::new(0.0, 2.0, 3.0).unwrap()),
            1.0
        );
        assert_eq!(
            local_energy_zeeman(ZeemanPoint::new(1.0, 0.0, 2.0).unwrap()),
            -0.5
        );
        assert_eq!(
            local_energy_zeeman(ZeemanPoint::new(0.0, 0.0, 2.0).unwrap()),
            0.5
        );
        assert!(ZeemanPoint::new(-1.0, 0.0, 1.0).is_err());
        assert!(ZeemanPoint::new(1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn zeeman_grid() {
        let grid = |lo: f64| {
            GridDomain::new(vec![
                Axis::new(lo, 3.0, 11).unwrap(),
                Axis::new(-2.0, 2.0, 9).unwrap(),
            ])
            .unwrap()
        };
        assert_eq!(zeeman_upper_bound(0.0, &grid(0.0)).unwrap(), (-0.5, -0.5));
        assert_eq!(zeeman_upper_bound(1.0, &grid(0.0)).unwrap(), (0.0, 0.0));
        let (analytic, sampled) = zeeman_upper_bound(2.0, &grid(0.5)).unwrap();
        assert!(sampled < analytic);
        assert!(zeeman_upper_bound(1.0, &grid(-1.0)).is_err());
    }

    #[test]
    fn grid_enumeration() {
        let g = GridDomain::new(vec![
            Axis::new(0.0, 1.0, 2).unwrap(),
            Axis::new(0.0, 2.0, 3).unwrap(),
        ])
        .unwrap();
        let pts: Vec<Vec<f64>> = g.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0.0, 0.0]);
        assert_eq!(pts[2], vec![0.0, 2.0]);
        assert_eq!(pts[5], vec![1.0, 2.0]);
        assert!(Axis::new(1.0, 1.0, 3).is_err());
        assert!(Axis::new(0.0, 1.0, 1).is_err());
    }
}
