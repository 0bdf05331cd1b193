//! System files and ideal strings.

use std::path::Path;

use diffgalois::difference::{y_ring, DifferenceSystem};
use diffgalois::groebner::{parse_poly, PolyIdeal, TermOrder};
use diffgalois::linalg::Matrix;
use diffgalois::scalar::parse_rational;
use diffgalois::{Error, RatFunc, Rational, Result};
use serde::Deserialize;

/// A matrix entry: a string in the scalar grammar or a bare integer.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Text(s) => s.clone(),
            Entry::Int(v) => v.to_string(),
        }
    }
}

/// `{"n": 2, "A": [["0","1"],["1","1"]]}` with optional `rho` and `Z`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemFile {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<Entry>>,
    rho: Option<i64>,
    #[serde(rename = "Z")]
    z: Option<Vec<Vec<Entry>>>,
}

pub struct SystemInput {
    pub system: DifferenceSystem,
    pub rho: Option<i64>,
    pub z_rho: Option<Matrix<Rational>>,
}

fn check_square<T>(rows: &[Vec<T>], n: usize, what: &str) -> Result<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{what} must be {n} x {n}")));
    }
    Ok(())
}

pub fn parse_system(text: &str) -> Result<SystemInput> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("system file: {e}")))?;
    if file.n == 0 {
        return Err(Error::Parse("n must be positive".into()));
    }
    check_square(&file.a, file.n, "A")?;
    let rows: Vec<Vec<String>> = file.a.iter().map(|r| r.iter().map(Entry::text).collect()).collect();
    let system = DifferenceSystem::from_strings(&rows)?;
    let z_rho = match file.z {
        Some(z) => {
            check_square(&z, file.n, "Z")?;
            let rows = z
                .iter()
                .map(|r| r.iter().map(|e| parse_rational(&e.text())).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Some(Matrix::from_rows(rows))
        }
        None => None,
    };
    Ok(SystemInput { system, rho: file.rho, z_rho })
}

pub fn read_system(path: &Path) -> Result<SystemInput> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}

/// Generators separated by commas or newlines, optionally inside `<…>`.
pub fn parse_ideal(text: &str, n: usize) -> Result<PolyIdeal<RatFunc>> {
    let ring = y_ring(n, TermOrder::GrevLex);
    let body = text.trim();
    let body = body.strip_prefix('<').and_then(|b| b.strip_suffix('>')).unwrap_or(body);
    let gens = body
        .split([',', '\n'])
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .map(|g| parse_poly(&ring, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyIdeal::new(&ring, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_with_integers_and_strings() {
        let s = parse_system(r#"{"n": 2, "A": [[0, 1], ["1", "x+1"]]}"#).unwrap();
        assert_eq!(s.system.n(), 2);
        assert!(s.rho.is_none());
    }

    #[test]
    fn wrong_shape_is_a_parse_error() {
        let err = parse_system(r#"{"n": 2, "A": [["1"]]}"#).err().unwrap();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn initial_term_override() {
        let s = parse_system(r#"{"n": 1, "A": [["2"]], "rho": 3, "Z": [["1/2"]]}"#).unwrap();
        assert_eq!(s.rho, Some(3));
        assert_eq!(s.z_rho.unwrap().get(0, 0).to_string(), "1/2");
    }

    #[test]
    fn ideal_text_round_trip() {
        let i = parse_ideal("<y11*y12, y21 - 1>", 2).unwrap();
        assert!(parse_ideal(&i.to_string(), 2).unwrap().equals(&i));
    }
}
