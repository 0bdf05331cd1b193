//! Hypergeometric solutions c·h of σ^δ(Y) = M·Y with c rational.

use super::petkovsek::{petkovsek, HyperCertificate};
use super::rational::{blocks, is_shift_quotient, rational_solutions, sigma_vec, submatrix};
use crate::difference::cyclic_vector_scalarize;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::scalar::RatFunc;

/// A solution Y = c·h where σ^δ(h) = r·h, so that σ^δ(c)·r = M·c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemHyperSolution {
    c: Vec<RatFunc>,
    certificate: HyperCertificate,
}

impl SystemHyperSolution {
    /// Checks σ^δ(c)·r = M·c before accepting the pair.
    pub fn new(c: Vec<RatFunc>, certificate: HyperCertificate, m: &Matrix<RatFunc>) -> Result<Self> {
        if c.iter().all(RatFunc::is_zero) {
            return Err(Error::Domain("a hypergeometric solution needs c ≠ 0".into()));
        }
        let lhs: Vec<RatFunc> = sigma_vec(&c, certificate.step).iter().map(|v| v.mul(&certificate.r)).collect();
        if lhs != m.mul_vec(&c) {
            return Err(Error::Internal(format!("σ^δ(c)·r ≠ M·c for r = {}", certificate.r)));
        }
        Ok(SystemHyperSolution { c, certificate })
    }

    pub fn c(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn certificate(&self) -> &HyperCertificate {
        &self.certificate
    }

    /// Whether c₁h₁ = f·c₂h₂ for some f ∈ ℚ(x): the vectors are
    /// proportional and the certificates differ by the matching shift quotient.
    pub fn similar(&self, other: &SystemHyperSolution) -> Result<bool> {
        if self.certificate.step != other.certificate.step || self.c.len() != other.c.len() {
            return Ok(false);
        }
        let Some(k) = other.c.iter().position(|v| !v.is_zero()) else { return Ok(false) };
        let f = self.c[k].div(&other.c[k]);
        if f.is_zero() || self.c.iter().zip(&other.c).any(|(a, b)| *a != b.mul(&f)) {
            return Ok(false);
        }
        // c₁h₁ = g·c₂h₂ with g ∈ ℚ(x)^× forces h₂/h₁·g = f, hence r₁/r₂ ~ 1.
        is_shift_quotient(&self.certificate.r.div(&other.certificate.r), self.certificate.step)
    }
}

/// One representative per similarity class of hypergeometric solutions.
pub fn system_hyper_solutions(m: &Matrix<RatFunc>, delta: usize) -> Result<Vec<SystemHyperSolution>> {
    if m.det().is_zero() {
        return Err(Error::Domain("hypergeometric solutions of a singular system".into()));
    }
    let n = m.rows();
    let mut out: Vec<SystemHyperSolution> = Vec::new();
    for idx in blocks(m) {
        let sub = submatrix(m, &idx);
        let red = cyclic_vector_scalarize(&sub, delta)?;
        let certs = petkovsek(&red.operator)?.require_rational("hypergeometric solutions of a system block")?;
        for cert in certs {
            let scaled = sub.map(|v| v.div(&cert.r));
            for c in rational_solutions(&scaled, delta)? {
                let mut full = vec![RatFunc::zero(); n];
                for (k, &i) in idx.iter().enumerate() {
                    full[i] = c[k].clone();
                }
                let sol = SystemHyperSolution::new(normalize(full), cert.clone(), m)?;
                let mut fresh = true;
                for s in &out {
                    if s.similar(&sol)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    out.push(sol);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.certificate.r.cmp_canonical(&b.certificate.r).then_with(|| {
            a.c.iter().zip(&b.c).map(|(x, y)| x.cmp_canonical(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    Ok(out)
}

/// Scales c by a rational constant so the first nonzero entry has a
/// primitive numerator with positive leading coefficient.
fn normalize(c: Vec<RatFunc>) -> Vec<RatFunc> {
    let Some(first) = c.iter().find(|v| !v.is_zero()) else { return c };
    let (k, _) = first.normalized_up_to_constant();
    let inv = RatFunc::constant(k.recip());
    c.iter().map(|v| v.mul(&inv)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[&str]]) -> Matrix<RatFunc> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect())
    }

    fn certs(sols: &[SystemHyperSolution]) -> Vec<String> {
        sols.iter().map(|s| s.certificate().to_string()).collect()
    }

    #[test]
    fn identity_gives_unit_solutions() {
        let sols = system_hyper_solutions(&mat(&[&["1", "0"], &["0", "1"]]), 1).unwrap();
        assert_eq!(certs(&sols), vec!["1", "1"]);
    }

    #[test]
    fn diagonal_step_two() {
        let m = mat(&[&["x", "0", "0"], &["0", "x+1", "0"], &["0", "0", "1/(x^2+x)"]]);
        let sols = system_hyper_solutions(&m, 2).unwrap();
        let mut got = certs(&sols);
        got.sort();
        assert_eq!(got, vec!["1/(x^2+x)", "x", "x+1"]);
        for s in &sols {
            assert_eq!(s.c().iter().filter(|v| !v.is_zero()).count(), 1);
        }
    }

    #[test]
    fn coupled_block_with_rational_gauge() {
        // Conjugating diag(x, 2) by [[1, 1/x], [0, 1]] keeps certificates x and 2.
        let p = mat(&[&["1", "1/x"], &["0", "1"]]);
        let d = mat(&[&["x", "0"], &["0", "2"]]);
        let pinv = p.inverse().unwrap();
        let shifted_p = p.map(|v| v.shift(1));
        let m = shifted_p.mul(&d).mul(&pinv);
        let sols = system_hyper_solutions(&m, 1).unwrap();
        assert_eq!(sols.len(), 2);
        for want in ["2", "x"] {
            let w = HyperCertificate::new(want.parse().unwrap(), 1).unwrap();
            let hits = sols.iter().filter(|s| s.certificate().similar(&w).unwrap()).count();
            assert_eq!(hits, 1, "{want}");
        }
    }
}
