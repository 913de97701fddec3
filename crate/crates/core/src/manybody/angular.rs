//! The angular function `F_N`: the sum of the cosines of every vertex angle
//! of every triangle formed by the configuration.
//!
//! With `S_i = Σ_{j≠i} û_ij` (unit vectors from point `i` to the others),
//! the angles at vertex `i` contribute `(|S_i|² - (N-1)) / 2`, so `F_N` and
//! its gradient cost `O(N² d)`.

use serde::Serialize;

use super::configuration::Configuration;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularValue {
    pub value: f64,
    /// `∂F_N/∂r_i` for every point, when requested.
    pub gradient: Option<Vec<Vec<f64>>>,
}

struct Frame {
    /// `units[i][j]`: unit vector from `i` to `j` (zero on the diagonal).
    units: Vec<Vec<Vec<f64>>>,
    dist: Vec<Vec<f64>>,
    sums: Vec<Vec<f64>>,
}

fn frame(c: &Configuration) -> Frame {
    let n = c.len();
    let d = c.dim();
    let mut units = vec![vec![vec![0.0; d]; n]; n];
    let mut dist = vec![vec![0.0; n]; n];
    let mut sums = vec![vec![0.0; d]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let r = c.distance(i, j);
            dist[i][j] = r;
            dist[j][i] = r;
            for k in 0..d {
                let u = (c.point(j)[k] - c.point(i)[k]) / r;
                units[i][j][k] = u;
                units[j][i][k] = -u;
                sums[i][k] += u;
                sums[j][k] -= u;
            }
        }
    }
    Frame { units, dist, sums }
}

fn value_from(frame: &Frame, n: usize) -> f64 {
    if n < 3 {
        return 0.0;
    }
    frame
        .sums
        .iter()
        .map(|s| 0.5 * (s.iter().map(|x| x * x).sum::<f64>() - (n - 1) as f64))
        .sum()
}

/// `F_N` at a configuration (`F_2 ≡ 0`).
pub fn angles_sum_fn(c: &Configuration) -> Result<AngularValue> {
    c.check_distinct()?;
    let f = frame(c);
    Ok(AngularValue {
        value: value_from(&f, c.len()),
        gradient: None,
    })
}

/// `F_N` and its analytic gradient
/// `∂F/∂r_j = Σ_{i≠j} (I - û_ij û_ijᵀ)(S_i - S_j) / r_ij`.
pub fn angles_sum_fn_with_gradient(c: &Configuration) -> Result<AngularValue> {
    c.check_distinct()?;
    let n = c.len();
    let d = c.dim();
    let f = frame(c);
    let mut gradient = vec![vec![0.0; d]; n];
    if n >= 3 {
        for j in 0..n {
            for i in 0..n {
                if i == j {
                    continue;
                }
                let u = &f.units[i][j];
                let diff: Vec<f64> = (0..d).map(|k| f.sums[i][k] - f.sums[j][k]).collect();
                let along: f64 = u.iter().zip(&diff).map(|(a, b)| a * b).sum();
                let r = f.dist[i][j];
                for k in 0..d {
                    gradient[j][k] += (diff[k] - along * u[k]) / r;
                }
            }
        }
    }
    Ok(AngularValue {
        value: value_from(&f, n),
        gradient: Some(gradient),
    })
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::with_capacity(m), &mut out);
    out
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `Σ_{M-subsets} (M-3)!(N-M)!/(N-3)! · F_M`, which reproduces `F_N` for `3 ≤ M ≤ N`.
pub fn cluster_sum(c: &Configuration, m: usize) -> Result<f64> {
    let n = c.len();
    if !(3 <= m && m <= n) {
        return Err(crate::error::Error::InvalidClusterSize { n, m });
    }
    let weight = factorial(m - 3) * factorial(n - m) / factorial(n - 3);
    let mut total = 0.0;
    for subset in combinations(n, m) {
        total += weight * angles_sum_fn(&c.subset(&subset)?)?.value;
    }
    Ok(total)
}
