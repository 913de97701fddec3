use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use super::configuration::Configuration;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigurationName {
    /// `N` points on a line; parameter `N`.
    Aligned,
    Equilateral,
    Tetrahedron,
    /// Unit square base with apex at height `h`.
    SquarePyramid,
    /// Two tetrahedra sharing an equilateral base of unit edge, apices at `±h`.
    Bipyramid,
    Octahedron,
    Cube,
    /// Two unit squares at heights `0` and `h`, the second turned by `π/4`.
    TwistedSquares,
    /// `N` points on the unit sphere; parameter `N`.
    FibonacciSphere,
}

const NAMES: [(&str, ConfigurationName); 9] = [
    ("aligned", ConfigurationName::Aligned),
    ("equilateral", ConfigurationName::Equilateral),
    ("tetrahedron", ConfigurationName::Tetrahedron),
    ("square_pyramid", ConfigurationName::SquarePyramid),
    ("bipyramid", ConfigurationName::Bipyramid),
    ("octahedron", ConfigurationName::Octahedron),
    ("cube", ConfigurationName::Cube),
    ("twisted_squares", ConfigurationName::TwistedSquares),
    ("fibonacci_sphere", ConfigurationName::FibonacciSphere),
];

impl FromStr for ConfigurationName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

impl fmt::Display for ConfigurationName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = NAMES
            .iter()
            .find(|(_, v)| v == self)
            .map(|(n, _)| *n)
            .unwrap_or("?");
        f.write_str(name)
    }
}

fn quartic(h: f64) -> f64 {
    (((9.0 * h - 6.0) * h + 3.0) * h - 2.0) * h + 1.0 / 3.0
}

/// Largest real root of `9h⁴ - 6h³ + 3h² - 2h + 1/3`, by bisection.
pub fn h0_root() -> f64 {
    // every root lies below the Cauchy bound 1 + max|a_k/a_4|
    let mut hi = 1.0 + 6.0 / 9.0;
    let step = 1e-3;
    let mut lo = hi - step;
    while quartic(lo) > 0.0 {
        hi = lo;
        lo -= step;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if quartic(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed radical form of the same root.
pub fn h0_radical() -> f64 {
    let c = (7.0 + 4.0 * 3f64.sqrt()).cbrt();
    let a = -1.0 + c + 1.0 / c;
    (1.0 + a.sqrt() + (-2.0 - c - 1.0 / c + 8.0 / a.sqrt()).sqrt()) / 6.0
}

/// Apex height maximizing `F_5` over square pyramids with unit base.
pub fn square_pyramid_height() -> f64 {
    ((13.0 - 2.0 * SQRT_2) / (6.0 + 4.0 * SQRT_2)).sqrt()
}

pub fn twisted_squares_height() -> f64 {
    (1.0 + 2.0 * SQRT_2).sqrt() / 2.0
}

/// `F_5` at the bipyramid of apex height `h`.
pub fn bipyramid_value(h: f64) -> f64 {
    let q = h * h + 1.0 / 3.0;
    4.5 + 6.0 * (h + 1.0) / q.sqrt() - 1.0 / q
}

pub fn square_pyramid_value() -> f64 {
    7.5 + 5.0 * SQRT_2
}

pub fn octahedron_value() -> f64 {
    12.0 * (1.0 + SQRT_2)
}

pub fn cube_value() -> f64 {
    8.0 * (3.0 * SQRT_2 + 3f64.sqrt() + 1.5 + 6f64.sqrt())
}

/// `F_8` at the twisted squares of default height.
pub fn twisted_squares_value() -> f64 {
    let s5 = 5f64.sqrt();
    let w = 5.0 + 4.0 * SQRT_2;
    16.0 * (0.8
        + FRAC_1_SQRT_2
        + 1.0 / s5
        + 4.0 * (1.0 + SQRT_2) / (s5 * w.sqrt())
        + (3.0 + 2.0 * SQRT_2) / w.sqrt()
        - 1.0 / w)
}

fn count_parameter(name: ConfigurationName, parameter: Option<f64>) -> Result<usize> {
    match parameter {
        Some(p) if p >= 2.0 && p.fract() == 0.0 && p <= 1e7 => Ok(p as usize),
        _ => Err(Error::InvalidArgument(format!(
            "{name} needs an integer point count N >= 2, got {parameter:?}"
        ))),
    }
}

fn height_parameter(name: ConfigurationName, parameter: Option<f64>, default: f64) -> Result<f64> {
    match parameter {
        None => Ok(default),
        Some(h) if h.is_finite() => Ok(h),
        Some(h) => Err(Error::InvalidArgument(format!(
            "{name} height must be finite, got {h}"
        ))),
    }
}

/// Points `z = 1 - (2i+1)/N` on the unit sphere, azimuths advancing by the golden angle.
pub fn fibonacci_sphere(n: usize, azimuth_offset: f64) -> Result<Configuration> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let points = (0..n)
        .map(|i| {
            let z = 1.0 - (2 * i + 1) as f64 / n as f64;
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let theta = i as f64 * golden + azimuth_offset;
            vec![rho * theta.cos(), rho * theta.sin(), z]
        })
        .collect();
    Configuration::new(3, points)
}

/// Exact geometries in `ℝ³`. `parameter` is the point count for `aligned` and
/// `fibonacci_sphere`, and the height for the pyramids and twisted squares.
pub fn named_configuration(
    name: ConfigurationName,
    parameter: Option<f64>,
) -> Result<Configuration> {
    use ConfigurationName::*;
    let s3 = 3f64.sqrt();
    let points: Vec<Vec<f64>> = match name {
        Aligned => {
            let n = count_parameter(name, parameter)?;
            (0..n).map(|i| vec![i as f64, 0.0, 0.0]).collect()
        }
        FibonacciSphere => return fibonacci_sphere(count_parameter(name, parameter)?, 0.0),
        Equilateral => vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.5, s3 / 2.0, 0.0],
        ],
        Tetrahedron => vec![
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ],
        SquarePyramid => {
            let h = height_parameter(name, parameter, square_pyramid_height())?;
            vec![
                vec![0.5, 0.5, 0.0],
                vec![-0.5, 0.5, 0.0],
                vec![-0.5, -0.5, 0.0],
                vec![0.5, -0.5, 0.0],
                vec![0.0, 0.0, h],
            ]
        }
        Bipyramid => {
            let h = height_parameter(name, parameter, h0_root())?;
            let rc = 1.0 / s3;
            let mut pts: Vec<Vec<f64>> = (0..3)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / 3.0;
                    vec![rc * t.cos(), rc * t.sin(), 0.0]
                })
                .collect();
            pts.push(vec![0.0, 0.0, h]);
            pts.push(vec![0.0, 0.0, -h]);
            pts
        }
        Octahedron => (0..3)
            .flat_map(|axis| {
                [1.0, -1.0].map(|sign| {
                    let mut p = vec![0.0; 3];
                    p[axis] = sign;
                    p
                })
            })
            .collect(),
        Cube => (0..8)
            .map(|k| vec![(k & 1) as f64, ((k >> 1) & 1) as f64, ((k >> 2) & 1) as f64])
            .collect(),
        TwistedSquares => {
            let h = height_parameter(name, parameter, twisted_squares_height())?;
            let rc = FRAC_1_SQRT_2;
            let mut pts = Vec::with_capacity(8);
            for (z, twist) in [(0.0, 0.0), (h, PI / 4.0)] {
                for k in 0..4 {
                    let t = PI / 2.0 * k as f64 + twist;
                    pts.push(vec![rc * t.cos(), rc * t.sin(), z]);
                }
            }
            pts
        }
    };
    Configuration::new(3, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manybody::angular::angles_sum_fn;

    fn f(name: &str, p: Option<f64>) -> f64 {
        angles_sum_fn(&named_configuration(name.parse().unwrap(), p).unwrap())
            .unwrap()
            .value
    }

    #[test]
    fn h0_forms_agree() {
        let h = h0_root();
        assert!(h > 0.0 && h < 1.0);
        assert!(quartic(h).abs() < 1e-10);
        assert!((h - h0_radical()).abs() < 1e-10);
        assert!((h - 0.5668661122431559).abs() < 1e-12);
    }

    #[test]
    fn closed_forms() {
        assert!((f("bipyramid", None) - bipyramid_value(h0_root())).abs() < 1e-9);
        assert!((f("bipyramid", Some(0.8)) - bipyramid_value(0.8)).abs() < 1e-9);
        assert!((f("square_pyramid", None) - square_pyramid_value()).abs() < 1e-9);
        assert!((f("octahedron", None) - octahedron_value()).abs() < 1e-9);
        assert!((f("cube", None) - cube_value()).abs() < 1e-9);
        assert!((f("twisted_squares", None) - twisted_squares_value()).abs() < 1e-9);
        assert!((f("tetrahedron", None) - 6.0).abs() < 1e-12);
        assert!((f("equilateral", None) - 1.5).abs() < 1e-12);
        assert!((f("aligned", Some(6.0)) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn names() {
        assert!(matches!(
            "dodecahedron".parse::<ConfigurationName>(),
            Err(Error::UnknownName(_))
        ));
        for (name, value) in NAMES {
            assert_eq!(value.to_string(), name);
        }
        assert!(named_configuration(ConfigurationName::Aligned, None).is_err());
        assert!(named_configuration(ConfigurationName::Aligned, Some(2.5)).is_err());
    }
}
