//! Matrix text files and circuit JSON inputs.
//!
//! A matrix file holds one row per line with whitespace-separated entries
//! such as `0.5`, `-0.25+0.5j` or `1j`. Blank lines and lines starting with
//! `#` are ignored. Rows and columns of a 4x4 matrix are in `(a1, a0)` order.

use std::fs;
use std::path::Path;

use deflation_core::linalg::{Mat2, Mat4, UNITARY_TOL};
use deflation_core::{Circuit, Complex};

use crate::CliError;

/// Inputs further than this from unitary are rejected; closer ones are
/// polished before use.
pub const INPUT_UNITARY_TOL: f64 = 1e-8;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_matrix<const N: usize>(text: &str) -> Result<[[Complex; N]; N], CliError> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if rows.len() != N {
        return Err(CliError::Input(format!(
            "expected {N} matrix rows, found {}",
            rows.len()
        )));
    }
    let mut m = [[Complex::new(0.0, 0.0); N]; N];
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split_whitespace().collect();
        if entries.len() != N {
            return Err(CliError::Input(format!(
                "row {}: expected {N} entries, found {}",
                i + 1,
                entries.len()
            )));
        }
        for (j, e) in entries.iter().enumerate() {
            let z: Complex = e
                .parse()
                .map_err(|_| CliError::Input(format!("row {}: cannot parse entry {e:?}", i + 1)))?;
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(CliError::Input(format!("row {}: entry {e:?} is not finite", i + 1)));
            }
            m[i][j] = z;
        }
    }
    Ok(m)
}

fn not_unitary(what: &str, deviation: f64) -> CliError {
    CliError::Input(format!(
        "input not unitary: {what} has |U^dagger U - I| = {deviation:.3e}"
    ))
}

pub fn unitary2(text: &str, what: &str) -> Result<Mat2, CliError> {
    let m = Mat2(parse_matrix::<2>(text)?);
    let dev = m.unitarity_error();
    if dev.is_nan() || dev > INPUT_UNITARY_TOL {
        return Err(not_unitary(what, dev));
    }
    Ok(if dev > UNITARY_TOL { m.polish_unitary() } else { m })
}

pub fn unitary4(m: Mat4, what: &str) -> Result<Mat4, CliError> {
    let dev = m.unitarity_error();
    if dev.is_nan() || dev > INPUT_UNITARY_TOL {
        return Err(not_unitary(what, dev));
    }
    Ok(if dev > UNITARY_TOL { m.polish_unitary() } else { m })
}

pub fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

pub fn circuit(text: &str, what: &str) -> Result<Circuit, CliError> {
    Circuit::from_json(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

/// A 4x4 unitary given either as a matrix file or as a circuit to evaluate.
pub fn target_unitary(text: &str, what: &str) -> Result<Mat4, CliError> {
    let m = if looks_like_json(text) {
        circuit(text, what)?.evaluate()
    } else {
        Mat4(parse_matrix::<4>(text)?)
    };
    unitary4(m, what)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries() {
        let m = parse_matrix::<2>("# comment\n1 0.5+0.25j\n\n-1e-3-2j j\n").unwrap();
        assert_eq!(m[0][1], Complex::new(0.5, 0.25));
        assert_eq!(m[1][0], Complex::new(-0.001, -2.0));
        assert_eq!(m[1][1], Complex::new(0.0, 1.0));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(parse_matrix::<2>("1 0\n").is_err());
        assert!(parse_matrix::<2>("1 0 0\n0 1\n").is_err());
        assert!(parse_matrix::<2>("1 x\n0 1\n").is_err());
        assert!(parse_matrix::<2>("1 nan\n0 1\n").is_err());
    }

    #[test]
    fn unitarity_policy() {
        assert!(unitary2("1 0\n0 1", "m").is_ok());
        let near = unitary2("1.000000001 0\n0 1", "m").unwrap();
        assert!(near.unitarity_error() <= 1e-12);
        let err = unitary2("2 0\n0 1", "m").unwrap_err().to_string();
        assert!(err.contains("input not unitary"));
    }
}
