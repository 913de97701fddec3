//! Plain-text input formats and CSV writers.
//!
//! * vectors (potentials, test vectors): one real per line;
//! * matrices: `rows cols`, then row-major reals, or `re im` pairs when complex;
//! * configurations: `N d`, then `N` lines of `d` reals;
//! * CSV numbers use 17 significant digits.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::discrete::ButterflyRow;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::manybody::Configuration;
use crate::profile::{LocalEnergyProfile, Site};

/// Non-empty lines with their 1-based line numbers; `#` starts a comment.
fn content_lines(input: impl BufRead) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.split('#').next().unwrap_or("").trim();
        if !text.is_empty() {
            out.push((i + 1, text.to_string()));
        }
    }
    Ok(out)
}

fn parse_real(line: usize, token: &str) -> Result<f64> {
    let value: f64 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a real number, got {token:?}"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("non-finite value {token:?}"),
        });
    }
    Ok(value)
}

fn parse_count(line: usize, token: &str) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer, got {token:?}"),
    })
}

fn header(lines: &[(usize, String)], what: &str) -> Result<(usize, usize)> {
    let Some((line, text)) = lines.first() else {
        return Err(Error::Parse {
            line: 0,
            message: format!("empty {what} file"),
        });
    };
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(Error::Parse {
            line: *line,
            message: format!("{what} header needs two integers"),
        });
    }
    Ok((
        parse_count(*line, tokens[0])?,
        parse_count(*line, tokens[1])?,
    ))
}

pub fn read_vector(input: impl BufRead) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (line, text) in content_lines(input)? {
        for token in text.split_whitespace() {
            values.push(parse_real(line, token)?);
        }
    }
    Ok(values)
}

pub fn write_vector(mut out: impl Write, values: &[f64]) -> Result<()> {
    for v in values {
        writeln!(out, "{v:.16e}")?;
    }
    Ok(())
}

fn matrix_tokens(input: impl BufRead, per_entry: usize) -> Result<(usize, usize, Vec<f64>)> {
    let lines = content_lines(input)?;
    let (rows, cols) = header(&lines, "matrix")?;
    let mut values = Vec::with_capacity(rows * cols * per_entry);
    for (line, text) in &lines[1..] {
        for token in text.split_whitespace() {
            values.push(parse_real(*line, token)?);
        }
    }
    if values.len() != rows * cols * per_entry {
        return Err(Error::Parse {
            line: lines.last().map_or(0, |l| l.0),
            message: format!(
                "expected {} numbers for a {rows}x{cols} matrix, got {}",
                rows * cols * per_entry,
                values.len()
            ),
        });
    }
    Ok((rows, cols, values))
}

pub fn read_matrix(input: impl BufRead) -> Result<Matrix<f64>> {
    let (rows, cols, values) = matrix_tokens(input, 1)?;
    Matrix::new(rows, cols, values)
}

pub fn read_complex_matrix(input: impl BufRead) -> Result<Matrix<Complex64>> {
    let (rows, cols, values) = matrix_tokens(input, 2)?;
    let entries = values
        .chunks(2)
        .map(|p| Complex64::new(p[0], p[1]))
        .collect();
    Matrix::new(rows, cols, entries)
}

pub fn write_matrix(mut out: impl Write, m: &Matrix<f64>) -> Result<()> {
    writeln!(out, "{} {}", m.rows(), m.cols())?;
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_configuration(input: impl BufRead) -> Result<Configuration> {
    let lines = content_lines(input)?;
    let (n, d) = header(&lines, "configuration")?;
    if lines.len() != n + 1 {
        return Err(Error::Parse {
            line: lines.last().map_or(0, |l| l.0),
            message: format!("expected {n} point lines, got {}", lines.len() - 1),
        });
    }
    let mut points = Vec::with_capacity(n);
    for (line, text) in &lines[1..] {
        let p = text
            .split_whitespace()
            .map(|t| parse_real(*line, t))
            .collect::<Result<Vec<f64>>>()?;
        if p.len() != d {
            return Err(Error::Parse {
                line: *line,
                message: format!("expected {d} coordinates, got {}", p.len()),
            });
        }
        points.push(p);
    }
    Configuration::new(d, points)
}

pub fn write_configuration(mut out: impl Write, c: &Configuration) -> Result<()> {
    writeln!(out, "{} {}", c.len(), c.dim())?;
    for p in c.points() {
        let row: Vec<String> = p.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Header `M,N,lower,upper,exact`.
pub fn write_butterfly_csv(mut out: impl Write, rows: &[ButterflyRow]) -> Result<()> {
    writeln!(out, "M,N,lower,upper,exact")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{:.16e},{:.16e},{:.16e}",
            r.m, r.n, r.lower, r.upper, r.exact
        )?;
    }
    Ok(())
}

/// One row per site: coordinates (or the index) then the value; undefined
/// sites get an empty value.
pub fn write_profile_csv(mut out: impl Write, profile: &LocalEnergyProfile) -> Result<()> {
    let width = match profile.sites().first() {
        Some(Site::Point(x)) => x.len(),
        _ => 1,
    };
    let mut head: Vec<String> = (0..width).map(|k| format!("x{k}")).collect();
    if matches!(profile.sites().first(), Some(Site::Index(_))) {
        head = vec!["site".into()];
    }
    head.push("value".into());
    writeln!(out, "{}", head.join(","))?;
    for (site, value) in profile.sites().iter().zip(profile.values()) {
        let mut cells: Vec<String> = match site {
            Site::Index(i) => vec![i.to_string()],
            Site::Point(x) => x.iter().map(|v| format!("{v:.16e}")).collect(),
        };
        cells.push(value.map(|v| format!("{v:.16e}")).unwrap_or_default());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_round_trip() {
        let v = vec![0.1, -2.5e-300, 1.0 / 3.0];
        let mut buf = Vec::new();
        write_vector(&mut buf, &v).unwrap();
        assert_eq!(read_vector(&buf[..]).unwrap(), v);
        let err = read_vector("1\n2\nx\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn matrices() {
        let m = read_matrix("# comment\n2 3\n1 2 3\n4 5 6\n".as_bytes()).unwrap();
        assert_eq!(m.get(1, 2), 6.0);
        let mut buf = Vec::new();
        write_matrix(&mut buf, &m).unwrap();
        assert_eq!(read_matrix(&buf[..]).unwrap(), m);
        assert!(read_matrix("2 2\n1 2 3\n".as_bytes()).is_err());
        let c = read_complex_matrix("1 2\n1 0.5 -2 3\n".as_bytes()).unwrap();
        assert_eq!(c.get(0, 1), Complex64::new(-2.0, 3.0));
    }

    #[test]
    fn configurations() {
        let c = read_configuration("3 2\n0 0\n1 0\n0 1\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_configuration(&mut buf, &c).unwrap();
        assert_eq!(read_configuration(&buf[..]).unwrap(), c);
        assert!(read_configuration("3 2\n0 0\n1 0\n".as_bytes()).is_err());
        assert!(read_configuration("2 2\n0 0\n1 0 0\n".as_bytes()).is_err());
    }

    #[test]
    fn butterfly_csv() {
        let rows = [ButterflyRow {
            m: 1,
            n: 3,
            lower: -2.5,
            upper: -2.25,
            exact: -2.4,
            iterations: 9,
        }];
        let mut buf = Vec::new();
        write_butterfly_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("M,N,lower,upper,exact"));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields[0], "1");
        assert_eq!(fields[2].parse::<f64>().unwrap(), -2.5);
        assert_eq!(fields[4].parse::<f64>().unwrap(), -2.4);
    }
}
