//! Local-energy profiles and their extrema.
//!
//! For an operator `H` and a test function `φ` with nonnegative real part, the
//! local energy at a site `q` is `Re(Hφ)(q) / Re(φ)(q)`. When `H` has an
//! eigenvalue `e₀` whose eigenvector is nonnegative, the infimum and supremum
//! of the local energy over the domain enclose `e₀`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Identifier of a point of the domain on which a profile is sampled.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Site {
    /// Lattice or matrix index.
    Index(usize),
    /// Grid coordinates of a sampled continuum point.
    Point(Vec<f64>),
}

impl Site {
    pub fn index(&self) -> Option<usize> {
        match self {
            Site::Index(i) => Some(*i),
            Site::Point(_) => None,
        }
    }
}

/// Sampled local energy. `None` marks a site where the real part of the
/// test function vanishes, so the ratio is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalEnergyProfile {
    sites: Vec<Site>,
    values: Vec<Option<f64>>,
    rigorous: bool,
}

impl LocalEnergyProfile {
    /// `rigorous` states whether `sites` enumerate the whole domain exactly.
    pub fn new(sites: Vec<Site>, values: Vec<Option<f64>>, rigorous: bool) -> Result<Self> {
        if sites.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: sites.len(),
                found: values.len(),
            });
        }
        let values = values
            .into_iter()
            .map(|v| v.filter(|x| !x.is_nan()))
            .collect();
        Ok(Self {
            sites,
            values,
            rigorous,
        })
    }

    /// Profile on sites `0..values.len()`, exact domain. NaN entries become undefined.
    pub fn from_values(values: Vec<f64>) -> Self {
        let sites = (0..values.len()).map(Site::Index).collect();
        let values = values
            .into_iter()
            .map(|v| if v.is_nan() { None } else { Some(v) })
            .collect();
        Self {
            sites,
            values,
            rigorous: true,
        }
    }

    /// Builds `E(q) = (Hφ)_q / φ_q` from the real parts of `Hφ` and `φ`.
    ///
    /// Zero components of `φ` give undefined sites; negative ones are rejected.
    pub fn from_action(h_phi: &[f64], phi: &[f64]) -> Result<Self> {
        if h_phi.len() != phi.len() {
            return Err(Error::DimensionMismatch {
                expected: phi.len(),
                found: h_phi.len(),
            });
        }
        let mut values = Vec::with_capacity(phi.len());
        for (index, (&hp, &p)) in h_phi.iter().zip(phi).enumerate() {
            if p.is_nan() || p < 0.0 {
                return Err(Error::NonPositiveTestVector { index, value: p });
            }
            values.push(if p == 0.0 { None } else { Some(hp / p) });
        }
        let sites = (0..phi.len()).map(Site::Index).collect();
        Self::new(sites, values, true)
    }

    /// Local energy of a real matrix-free operator at a nonnegative vector.
    pub fn from_operator<F>(apply_h: F, phi: &[f64]) -> Result<Self>
    where
        F: Fn(&[f64]) -> Vec<f64>,
    {
        let h_phi = apply_h(phi);
        Self::from_action(&h_phi, phi)
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn is_rigorous(&self) -> bool {
        self.rigorous
    }

    /// Marks the profile as sampled from a continuum.
    pub fn into_sampled(mut self) -> Self {
        self.rigorous = false;
        self
    }

    /// Defined values in site order.
    pub fn defined(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|x| (i, x)))
    }
}

/// Enclosure of the eigenvalue given by one profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsResult {
    pub lower: f64,
    pub upper: f64,
    pub argmin: Site,
    pub argmax: Site,
    /// True when the profile enumerated the domain exactly.
    pub rigorous: bool,
}

impl BoundsResult {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Whether `value` lies in `[lower - slack, upper + slack]`.
    pub fn encloses(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper + slack
    }
}

/// Infimum and supremum of a profile over its defined sites.
///
/// Ties go to the first site in profile order.
pub fn extrema(profile: &LocalEnergyProfile) -> Result<BoundsResult> {
    if profile.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let mut best: Option<(usize, f64, usize, f64)> = None;
    for (i, v) in profile.defined() {
        best = Some(match best {
            None => (i, v, i, v),
            Some((imin, lo, imax, hi)) => {
                let (imin, lo) = if v < lo { (i, v) } else { (imin, lo) };
                let (imax, hi) = if v > hi { (i, v) } else { (imax, hi) };
                (imin, lo, imax, hi)
            }
        });
    }
    let (imin, lower, imax, upper) = best.ok_or(Error::AllUndefined)?;
    Ok(BoundsResult {
        lower,
        upper,
        argmin: profile.sites[imin].clone(),
        argmax: profile.sites[imax].clone(),
        rigorous: profile.rigorous,
    })
}

/// Weighted Rayleigh quotient `⟨φ|Hφ⟩ / ⟨φ|φ⟩` with `⟨a|b⟩ = Σ w_q a_q b_q`.
///
/// It never exceeds the upper extremum of the local-energy profile of `φ`.
pub fn rayleigh_quotient<F>(apply_h: F, phi: &[f64], weights: &[f64]) -> Result<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if weights.len() != phi.len() {
        return Err(Error::DimensionMismatch {
            expected: phi.len(),
            found: weights.len(),
        });
    }
    if let Some((index, &value)) = phi.iter().enumerate().find(|(_, &p)| !(p > 0.0)) {
        return Err(Error::NonPositiveTestVector { index, value });
    }
    if let Some(w) = weights.iter().find(|&&w| !(w > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "weights must be strictly positive, found {w}"
        )));
    }
    let h_phi = apply_h(phi);
    if h_phi.len() != phi.len() {
        return Err(Error::DimensionMismatch {
            expected: phi.len(),
            found: h_phi.len(),
        });
    }
    let (num, den) = phi
        .iter()
        .zip(&h_phi)
        .zip(weights)
        .fold((0.0, 0.0), |(n, d), ((&p, &hp), &w)| {
            (n + w * p * hp, d + w * p * p)
        });
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_profile() {
        let b = extrema(&LocalEnergyProfile::from_values(vec![-2.0, -2.0, -2.0])).unwrap();
        assert_eq!((b.lower, b.upper), (-2.0, -2.0));
        assert_eq!(b.argmin, Site::Index(0));
        assert_eq!(b.argmax, Site::Index(0));
        assert!(b.rigorous);
    }

    #[test]
    fn infinite_values() {
        let b = extrema(&LocalEnergyProfile::from_values(vec![
            -0.5,
            -1.5,
            f64::INFINITY,
        ]))
        .unwrap();
        assert_eq!(b.lower, -1.5);
        assert_eq!(b.upper, f64::INFINITY);
        assert_eq!(b.argmin, Site::Index(1));
        assert_eq!(b.argmax, Site::Index(2));

        let b = extrema(&LocalEnergyProfile::from_values(vec![
            f64::NEG_INFINITY,
            3.0,
        ]))
        .unwrap();
        assert_eq!(b.lower, f64::NEG_INFINITY);
    }

    #[test]
    fn harper_three_site_constant_vector() {
        let b = extrema(&LocalEnergyProfile::from_values(vec![-3.0, -1.5, -1.5])).unwrap();
        assert_eq!((b.lower, b.upper), (-3.0, -1.5));
        assert_eq!(b.argmax, Site::Index(1));
    }

    #[test]
    fn empty_and_undefined() {
        let empty = LocalEnergyProfile::from_values(vec![]);
        assert!(matches!(extrema(&empty), Err(Error::EmptyProfile)));
        let undefined = LocalEnergyProfile::from_action(&[1.0, 2.0], &[0.0, 0.0]).unwrap();
        assert!(matches!(extrema(&undefined), Err(Error::AllUndefined)));
    }

    #[test]
    fn undefined_sites_are_skipped() {
        let p = LocalEnergyProfile::from_action(&[1.0, 5.0, -2.0], &[1.0, 0.0, 2.0]).unwrap();
        assert_eq!(p.values()[1], None);
        let b = extrema(&p).unwrap();
        assert_eq!((b.lower, b.upper), (-1.0, 1.0));
        assert!(LocalEnergyProfile::from_action(&[1.0], &[-1.0]).is_err());
    }

    #[test]
    fn rayleigh_identity() {
        let r = rayleigh_quotient(|v| v.to_vec(), &[0.3, 2.0, 1.1], &[1.0; 3]).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_harper_three_sites() {
        let v = [-1.0, 0.5, 0.5];
        let h = |p: &[f64]| -> Vec<f64> {
            (0..3)
                .map(|q| -p[(q + 1) % 3] - p[(q + 2) % 3] + v[q] * p[q])
                .collect()
        };
        let r = rayleigh_quotient(h, &[1.0; 3], &[1.0; 3]).unwrap();
        assert!((r + 2.0).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_errors() {
        assert!(matches!(
            rayleigh_quotient(|v| v.to_vec(), &[1.0, 1.0], &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            rayleigh_quotient(|v| v[..1].to_vec(), &[1.0, 1.0], &[1.0, 1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(rayleigh_quotient(|v| v.to_vec(), &[1.0, 0.0], &[1.0, 1.0]).is_err());
    }
}
