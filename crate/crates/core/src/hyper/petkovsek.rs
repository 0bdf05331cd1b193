//! Hypergeometric solutions of scalar recurrences by Petkovšek's
//! enumeration over (A, B, Z, C) quadruples.

use std::fmt;

use super::polysol::{from_unipoly, polynomial_solutions, Poly};
use super::rational::is_shift_quotient;
use crate::difference::ScalarOperator;
use crate::error::{Error, Result};
use crate::field::{Field, NumberField};
use crate::scalar::{factor, int, monic_divisors, rat, RatFunc, Rational, UniPoly};

/// The class of h with σ^δ(h) = r·h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperCertificate {
    pub r: RatFunc,
    pub step: usize,
}

impl HyperCertificate {
    pub fn new(r: RatFunc, step: usize) -> Result<HyperCertificate> {
        if r.is_zero() || step == 0 {
            return Err(Error::Domain("a certificate needs r ≠ 0 and a positive step".into()));
        }
        Ok(HyperCertificate { r, step })
    }

    /// Whether the two classes coincide: r₁/r₂ = σ^δ(g)/g for some g.
    pub fn similar(&self, other: &HyperCertificate) -> Result<bool> {
        if self.step != other.step {
            return Ok(false);
        }
        is_shift_quotient(&self.r.div(&other.r), self.step)
    }
}

impl fmt::Display for HyperCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

/// Certificates found over ℚ, plus irreducible polynomials whose roots
/// would give further certificates over an extension of ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PetkovsekOutcome {
    pub certificates: Vec<HyperCertificate>,
    pub extension_needed: Vec<UniPoly>,
}

impl PetkovsekOutcome {
    /// The certificates, or an error naming the first blocking factor.
    pub fn require_rational(self, context: &str) -> Result<Vec<HyperCertificate>> {
        match self.extension_needed.first() {
            Some(g) => Err(Error::ExtensionNeeded { factor: g.to_string_in("z"), context: context.to_string() }),
            None => Ok(self.certificates),
        }
    }
}

/// Largest number of (A, B) pairs tried before reporting a cost limit.
pub const MAX_DIVISOR_PAIRS: usize = 50_000;

fn monic_divisors_of(p: &UniPoly) -> Result<Vec<UniPoly>> {
    Ok(monic_divisors(&factor(p)?.factors))
}

/// Σ_t Z^t·p_t(x)·C(x+t) = 0 coefficients for a given Z.
fn with_constant<F: Field>(p: &[UniPoly], z: &F) -> Vec<Poly<F>> {
    let mut zt = F::one();
    p.iter()
        .map(|pt| {
            let c = from_unipoly::<F>(pt).iter().map(|v| v.mul(&zt)).collect();
            zt = zt.mul(z);
            super::polysol::trim(c)
        })
        .collect()
}

/// All σ^δ-hypergeometric solution classes of L over ℚ(x), one certificate
/// per class, sorted canonically.
pub fn petkovsek(op: &ScalarOperator) -> Result<PetkovsekOutcome> {
    let l = op.order();
    if l == 0 {
        return Err(Error::Domain("Petkovšek needs an operator of order at least 1".into()));
    }
    let delta = op.step();
    // Work in u = x/δ, where E shifts u by 1.
    let a: Vec<UniPoly> = op.coeffs().iter().map(|c| c.scale_var(&int(delta as i64))).collect();
    let lead_divs = monic_divisors_of(&a[l].shift_int(1 - l as i64))?;
    let trail_divs = monic_divisors_of(&a[0])?;
    if lead_divs.len() * trail_divs.len() > MAX_DIVISOR_PAIRS {
        return Err(Error::CostLimit(format!(
            "{} × {} divisor pairs in Petkovšek's enumeration",
            trail_divs.len(),
            lead_divs.len()
        )));
    }
    let mut found: Vec<(usize, RatFunc)> = Vec::new();
    let mut extension: Vec<UniPoly> = Vec::new();
    for big_a in &trail_divs {
        for big_b in &lead_divs {
            let p: Vec<UniPoly> = (0..=l)
                .map(|t| {
                    let mut acc = a[t].clone();
                    for j in 0..t {
                        acc = acc.mul(&big_a.shift_int(j as i64));
                    }
                    for j in t..l {
                        acc = acc.mul(&big_b.shift_int(j as i64));
                    }
                    acc
                })
                .collect();
            let top = p.iter().map(|q| q.deg0()).max().unwrap_or(0);
            let zeq = UniPoly::from_coeffs(
                p.iter().map(|q| if q.is_zero() || q.deg0() < top { int(0) } else { q.coeff(top) }).collect(),
            );
            // Z ≠ 0: drop the factor Z^v.
            let zeq = UniPoly::from_coeffs(zeq.coeffs()[zeq.x_valuation()..].to_vec());
            if zeq.is_constant() {
                continue;
            }
            for (g, _) in factor(&zeq)?.factors {
                if g.deg0() == 1 {
                    let z = g.coeff(0).neg();
                    let sols = polynomial_solutions(&with_constant::<Rational>(&p, &z))?;
                    let Some(c) = sols.into_iter().min_by_key(Vec::len) else { continue };
                    let c = UniPoly::from_coeffs(c);
                    let r = RatFunc::new(big_a.mul(&c.shift_int(1)).scale(&z), big_b.mul(&c));
                    found.push((c.deg0(), r.scale_var(&rat(1, delta as i64))));
                } else if !extension.contains(&g) {
                    let z = NumberField::generator(&g);
                    if !polynomial_solutions(&with_constant::<NumberField>(&p, &z))?.is_empty() {
                        extension.push(g);
                    }
                }
            }
        }
    }
    // One representative per class: smallest C, then smallest certificate.
    found.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.height().cmp(&y.1.height())).then(x.1.cmp_canonical(&y.1)));
    let mut certificates: Vec<HyperCertificate> = Vec::new();
    for (_, r) in found {
        let cand = HyperCertificate::new(r, delta)?;
        let mut fresh = true;
        for c in &certificates {
            if c.similar(&cand)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            certificates.push(cand);
        }
    }
    certificates.sort_by(|x, y| x.r.cmp_canonical(&y.r));
    extension.sort_by(|x, y| x.cmp_canonical(y));
    Ok(PetkovsekOutcome { certificates, extension_needed: extension })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn first_order_returns_its_certificate() {
        for (r, step) in [("x+2", 3), ("x/(x+1)", 1), ("-3", 1), ("1/(x^2+x)", 2)] {
            let op = ScalarOperator::first_order(step, &rf(r)).unwrap();
            let out = petkovsek(&op).unwrap();
            assert_eq!(out.certificates.len(), 1, "{r}");
            assert!(out.certificates[0].similar(&HyperCertificate::new(rf(r), step).unwrap()).unwrap(), "{r}");
            assert!(out.extension_needed.is_empty());
        }
    }

    #[test]
    fn step_three_linear_certificate_is_reported_as_given() {
        let op = ScalarOperator::first_order(3, &rf("x+2")).unwrap();
        assert_eq!(petkovsek(&op).unwrap().certificates[0].r, rf("x+2"));
    }

    #[test]
    fn fibonacci_needs_the_golden_ratio() {
        let op = ScalarOperator::new(1, vec![UniPoly::from_i64s(&[-1]), UniPoly::from_i64s(&[-1]), UniPoly::one()]).unwrap();
        let out = petkovsek(&op).unwrap();
        assert!(out.certificates.is_empty());
        assert_eq!(out.extension_needed, vec![UniPoly::from_i64s(&[-1, -1, 1])]);
    }

    #[test]
    fn power_and_factorial_together() {
        // (x−1)E² − (x²+3x−2)E + 2x² + 2x annihilates 2^x and x!.
        let op = ScalarOperator::new(
            1,
            vec![UniPoly::from_i64s(&[0, 2, 2]), UniPoly::from_i64s(&[2, -3, -1]), UniPoly::from_i64s(&[-1, 1])],
        )
        .unwrap();
        let out = petkovsek(&op).unwrap();
        let texts: Vec<String> = out.certificates.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, vec!["2", "x+1"]);
    }

    #[test]
    fn only_one_factor_of_a_product_is_hypergeometric() {
        // (E − x)(E − 2) = E² − (x+2)E + 2x.
        let op = ScalarOperator::new(1, vec![UniPoly::from_i64s(&[0, 2]), UniPoly::from_i64s(&[-2, -1]), UniPoly::one()])
            .unwrap();
        let texts: Vec<String> = petkovsek(&op).unwrap().certificates.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, vec!["2"]);
    }
}
