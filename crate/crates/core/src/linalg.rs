//! Dense matrices and the eigen-solvers used as validation oracles.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::default(); rows * cols],
        }
    }

    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }
}

impl Matrix<f64> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Largest matrix the dense oracle accepts.
pub const ORACLE_SIZE_LIMIT: usize = 2048;

const JACOBI_THRESHOLD: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and eigenvectors (columns of the returned
/// matrix, same order) of a real symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigen(m: &Matrix<f64>) -> Result<(Vec<f64>, Matrix<f64>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let scale = m.data().iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
    let asym = m.asymmetry();
    if asym > 1e-12 * scale {
        return Err(Error::NotSymmetric(asym));
    }

    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let off = |a: &Matrix<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a.get(i, j) * a.get(i, j);
            }
        }
        s.sqrt()
    };

    let mut converged = off(&a) <= JACOBI_THRESHOLD * scale;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
        sweeps += 1;
        converged = off(&a) <= JACOBI_THRESHOLD * scale;
    }
    if !converged {
        return Err(Error::NotConverged("Jacobi eigensolver"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, col, v.get(k, i));
        }
    }
    Ok((values, vectors))
}

/// Smallest eigenvalue and its eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub e0: f64,
    /// Unit norm, largest-magnitude component positive.
    pub vector: Vec<f64>,
}

/// Dense-diagonalization oracle for the smallest eigenvalue of a real symmetric matrix.
pub fn exact_ground_energy(m: &Matrix<f64>) -> Result<GroundState> {
    if m.rows() > ORACLE_SIZE_LIMIT {
        return Err(Error::SizeExceeded {
            size: m.rows(),
            limit: ORACLE_SIZE_LIMIT,
        });
    }
    if m.rows() == 0 {
        return Err(Error::InvalidArgument(
            "empty matrix has no ground state".into(),
        ));
    }
    let (values, vectors) = jacobi_eigen(m)?;
    let n = m.rows();
    let mut vector: Vec<f64> = (0..n).map(|k| vectors.get(k, 0)).collect();
    let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
    let pivot = vector.iter().enumerate().fold(0, |best, (i, x)| {
        if x.abs() > vector[best].abs() {
            i
        } else {
            best
        }
    });
    let sign = if vector[pivot] < 0.0 { -1.0 } else { 1.0 };
    for x in &mut vector {
        *x *= sign / norm;
    }
    Ok(GroundState {
        e0: values[0],
        vector,
    })
}

/// Ground state of a complex Hermitian matrix through the real embedding
/// `[[Re, -Im], [Im, Re]]`. The vector is normalized with its
/// largest-magnitude component real and positive.
pub fn exact_ground_energy_hermitian(m: &Matrix<Complex64>) -> Result<(f64, Vec<Complex64>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if 2 * n > ORACLE_SIZE_LIMIT {
        return Err(Error::SizeExceeded {
            size: n,
            limit: ORACLE_SIZE_LIMIT / 2,
        });
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m.get(i, j) - m.get(j, i).conj()).norm());
        }
    }
    if worst > 1e-12 {
        return Err(Error::NotSymmetric(worst));
    }
    let mut real = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j);
            real.set(i, j, z.re);
            real.set(i + n, j + n, z.re);
            real.set(i, j + n, -z.im);
            real.set(i + n, j, z.im);
        }
    }
    let (values, vectors) = jacobi_eigen(&real)?;
    let mut vector: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(vectors.get(k, 0), vectors.get(k + n, 0)))
        .collect();
    let norm = vector.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let pivot = vector.iter().enumerate().fold(0, |best, (i, z)| {
        if z.norm() > vector[best].norm() {
            i
        } else {
            best
        }
    });
    let phase = vector[pivot].conj() / vector[pivot].norm();
    for z in &mut vector {
        *z = *z * phase / norm;
    }
    Ok((values[0], vector))
}

/// Whether the directed graph of nonzero entries is strongly connected.
pub fn is_irreducible(m: &Matrix<f64>) -> bool {
    let n = m.rows();
    if !m.is_square() || n == 0 {
        return false;
    }
    let reach = |forward: bool| -> bool {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                let w = if forward { m.get(i, j) } else { m.get(j, i) };
                if w != 0.0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Perron root and positive eigenvector of a nonnegative irreducible matrix.
///
/// Power iteration on `A + I` (primitive), stopped when the Collatz–Wielandt
/// enclosure `[min (Ax)_i/x_i, max (Ax)_i/x_i]` is narrower than `tolerance`.
pub fn perron_root(
    m: &Matrix<f64>,
    tolerance: f64,
    max_iterations: usize,
) -> Result<(f64, Vec<f64>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.data().iter().any(|&x| !(x >= 0.0)) {
        return Err(Error::InvalidArgument("matrix has negative entries".into()));
    }
    if !is_irreducible(m) {
        return Err(Error::InvalidArgument("matrix is reducible".into()));
    }
    let n = m.rows();
    let mut x = vec![1.0; n];
    for _ in 0..max_iterations {
        let y: Vec<f64> = m
            .mul_vec(&x)
            .iter()
            .zip(&x)
            .map(|(ax, xi)| ax + xi)
            .collect();
        let (lo, hi) = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| yi / xi)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                (lo.min(r), hi.max(r))
            });
        let top = y.iter().cloned().fold(0.0, f64::max);
        x = y.iter().map(|v| v / top).collect();
        if hi - lo <= tolerance {
            return Ok((0.5 * (lo + hi) - 1.0, x));
        }
    }
    Err(Error::NotConverged("power iteration"))
}
