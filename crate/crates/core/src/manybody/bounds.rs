use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::named::{bipyramid_value, h0_root, octahedron_value, twisted_squares_value};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `N(N-1)(N-2) / (M(M-1)(M-2)) · sup F_M`, an upper bound on `sup F_N`.
pub fn clustering_upper_bound(n: usize, m: usize, sup_fm: f64) -> Result<f64> {
    if !(3 <= m && m <= n) {
        return Err(Error::InvalidClusterSize { n, m });
    }
    if !(sup_fm >= 0.0 && sup_fm.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "sup F_M must be non-negative, got {sup_fm}"
        )));
    }
    Ok(triangles(n) / triangles(m) * sup_fm)
}

fn triangles(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0)
}

/// Where the per-triangle density `α = sup F_M / (M(M-1)(M-2))` comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaSource {
    Lemma3,
    Lemma4,
    C5,
    C6,
    C8,
    CInf,
    Custom { sup_fm: f64, m: usize },
}

impl AlphaSource {
    pub fn alpha(&self) -> f64 {
        match *self {
            AlphaSource::Lemma3 | AlphaSource::Lemma4 => 0.25,
            AlphaSource::C5 => bipyramid_value(h0_root()) / triangles(5),
            AlphaSource::C6 => octahedron_value() / triangles(6),
            AlphaSource::C8 => twisted_squares_value() / triangles(8),
            AlphaSource::CInf => 2.0 / 9.0,
            AlphaSource::Custom { sup_fm, m } => sup_fm / triangles(m),
        }
    }

    /// Cluster size `M` the value was derived from, if finite.
    pub fn cluster_size(&self) -> Option<usize> {
        match *self {
            AlphaSource::Lemma3 => Some(3),
            AlphaSource::Lemma4 => Some(4),
            AlphaSource::C5 => Some(5),
            AlphaSource::C6 => Some(6),
            AlphaSource::C8 => Some(8),
            AlphaSource::CInf => None,
            AlphaSource::Custom { m, .. } => Some(m),
        }
    }

    /// True unless the value is a proven supremum.
    pub fn conjectural(&self) -> bool {
        !matches!(self, AlphaSource::Lemma3 | AlphaSource::Lemma4)
    }
}

impl fmt::Display for AlphaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSource::Lemma3 => f.write_str("lemma3"),
            AlphaSource::Lemma4 => f.write_str("lemma4"),
            AlphaSource::C5 => f.write_str("c5"),
            AlphaSource::C6 => f.write_str("c6"),
            AlphaSource::C8 => f.write_str("c8"),
            AlphaSource::CInf => f.write_str("cinf"),
            AlphaSource::Custom { sup_fm, m } => write!(f, "custom:{sup_fm}:{m}"),
        }
    }
}

/// Accepts the named sources and `custom:<supFM>:<M>`.
impl FromStr for AlphaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma3" => Ok(AlphaSource::Lemma3),
            "lemma4" => Ok(AlphaSource::Lemma4),
            "c5" => Ok(AlphaSource::C5),
            "c6" => Ok(AlphaSource::C6),
            "c8" => Ok(AlphaSource::C8),
            "cinf" => Ok(AlphaSource::CInf),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["custom", sup, m] => {
                        let sup_fm = sup
                            .parse()
                            .map_err(|_| Error::InvalidSource(format!("bad supFM in {s:?}")))?;
                        let m = m
                            .parse()
                            .map_err(|_| Error::InvalidSource(format!("bad M in {s:?}")))?;
                        Ok(AlphaSource::Custom { sup_fm, m })
                    }
                    _ => Err(Error::InvalidSource(s.to_string())),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdenticalBounds {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub lower: f64,
    pub upper: f64,
    pub alpha_source: String,
    pub alpha: f64,
    pub conjectural: bool,
}

/// Ground-energy bounds for `N` identical unit-mass particles with attractive
/// unit Coulomb couplings in `d` dimensions:
/// `-N(N-1)(1/2 + α(N-2))/(d-1)² ≤ e₀ ≤ -N(N-1)(N+1)/(6(d-1)²)`.
pub fn identical_coulomb_bounds(
    n: usize,
    d: usize,
    source: AlphaSource,
) -> Result<IdenticalBounds> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 particles, got {n}"
        )));
    }
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if let AlphaSource::Custom { sup_fm, m } = source {
        if m < 3 || !(sup_fm >= 0.0 && sup_fm.is_finite()) {
            return Err(Error::InvalidSource(format!(
                "custom source needs M >= 3 and supFM >= 0, got M = {m}, supFM = {sup_fm}"
            )));
        }
    }
    let numerically_derived = matches!(
        source,
        AlphaSource::C5 | AlphaSource::C6 | AlphaSource::C8 | AlphaSource::CInf
    );
    if numerically_derived && d > 3 {
        return Err(Error::InvalidSource(format!(
            "{source} was obtained for configurations in three dimensions, got d = {d}"
        )));
    }
    if !matches!(source, AlphaSource::Lemma3 | AlphaSource::Lemma4) {
        if let Some(m) = source.cluster_size() {
            if n > 2 && n < m {
                return Err(Error::InvalidSource(format!(
                    "{source} clusters {m} particles but only {n} are present"
                )));
            }
        }
    }
    let nf = n as f64;
    let dm1 = (d - 1) as f64;
    let alpha = source.alpha();
    Ok(IdenticalBounds {
        n,
        d,
        lower: -nf * (nf - 1.0) * (0.5 + alpha * (nf - 2.0)) / (dm1 * dm1),
        upper: -nf * (nf - 1.0) * (nf + 1.0) / (6.0 * dm1 * dm1),
        alpha_source: source.to_string(),
        alpha,
        conjectural: source.conjectural(),
    })
}

/// `Σ_{i<j} ε_ij ∓ s² N(N-1)(N-2) / (2m)`.
pub fn proposition_two_body_bounds(
    n: usize,
    epsilons: &Matrix<f64>,
    s: f64,
    m: f64,
) -> Result<(f64, f64)> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::NonPositiveS(s));
    }
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "mass must be positive, got {m}"
        )));
    }
    if epsilons.rows() != n || epsilons.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: epsilons.rows(),
        });
    }
    let asym = epsilons.asymmetry();
    if asym > 0.0 {
        return Err(Error::NotSymmetric(asym));
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += epsilons.get(i, j);
        }
    }
    let spread = s * s * triangles(n.max(2)) / (2.0 * m);
    Ok((sum - spread, sum + spread))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clustering() {
        assert_eq!(clustering_upper_bound(4, 3, 1.5).unwrap(), 6.0);
        assert_eq!(clustering_upper_bound(5, 3, 1.5).unwrap(), 15.0);
        assert_eq!(clustering_upper_bound(7, 7, 2.5).unwrap(), 2.5);
        assert!(matches!(
            clustering_upper_bound(4, 5, 1.0),
            Err(Error::InvalidClusterSize { .. })
        ));
        assert!(clustering_upper_bound(4, 2, 1.0).is_err());
    }

    #[test]
    fn alpha_values() {
        assert!((AlphaSource::C5.alpha() - 0.2432).abs() < 1e-4);
        assert!((AlphaSource::C6.alpha() - (1.0 + 2f64.sqrt()) / 10.0).abs() < 1e-15);
        assert!((AlphaSource::C8.alpha() - 0.2366).abs() < 1e-4);
        let parsed: AlphaSource = "custom:6:4".parse().unwrap();
        assert_eq!(parsed.alpha(), 0.25);
        assert!("c7".parse::<AlphaSource>().is_err());
        for s in ["lemma3", "lemma4", "c5", "c6", "c8", "cinf", "custom:1.5:3"] {
            assert_eq!(s.parse::<AlphaSource>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn identical_bounds() {
        let b = identical_coulomb_bounds(2, 3, AlphaSource::Lemma3).unwrap();
        assert_eq!((b.lower, b.upper), (-0.25, -0.25));
        let b = identical_coulomb_bounds(3, 3, AlphaSource::Lemma3).unwrap();
        assert!((b.upper + 1.0).abs() < 1e-15);
        assert!((b.lower + 9.0 / 8.0).abs() < 1e-15);
        assert!(!b.conjectural);
        let l3 = identical_coulomb_bounds(10, 3, AlphaSource::Lemma3).unwrap();
        let c5 = identical_coulomb_bounds(10, 3, AlphaSource::C5).unwrap();
        assert!(c5.lower > l3.lower && c5.conjectural);
        assert!(identical_coulomb_bounds(4, 3, AlphaSource::C5).is_err());
        assert!(identical_coulomb_bounds(10, 4, AlphaSource::C8).is_err());
        assert!(identical_coulomb_bounds(10, 1, AlphaSource::Lemma3).is_err());
    }

    #[test]
    fn two_body_proposition() {
        let pair = Matrix::from_rows(&[vec![0.0, -0.3], vec![-0.3, 0.0]]).unwrap();
        assert_eq!(
            proposition_two_body_bounds(2, &pair, 1.0, 1.0).unwrap(),
            (-0.3, -0.3)
        );
        let mut eps = Matrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    eps.set(i, j, -0.25);
                }
            }
        }
        let (lo, hi) = proposition_two_body_bounds(3, &eps, 0.5, 1.0).unwrap();
        assert!((lo + 1.5).abs() < 1e-15 && hi.abs() < 1e-15);
        assert!(matches!(
            proposition_two_body_bounds(3, &eps, 0.0, 1.0),
            Err(Error::NonPositiveS(_))
        ));
    }
}
