use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::{RatFunc, Rational, UniPoly};

/// L = Σ a_t(m)·E^t where E^t y(m) = y(m + t·δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarOperator {
    step: usize,
    coeffs: Vec<UniPoly>,
}

impl ScalarOperator {
    /// Builds an operator, dropping zero leading terms. The trailing
    /// coefficient must be nonzero.
    pub fn new(step: usize, mut coeffs: Vec<UniPoly>) -> Result<ScalarOperator> {
        if step == 0 {
            return Err(Error::Domain("operator step must be positive".into()));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.first() {
            None => Err(Error::Domain("the zero operator".into())),
            Some(c) if c.is_zero() => Err(Error::Domain("trailing operator coefficient is zero".into())),
            _ => Ok(ScalarOperator { step, coeffs }),
        }
    }

    /// Clears denominators of rational coefficients; the result is primitive
    /// with a positive leading coefficient.
    pub fn from_ratfuncs(step: usize, coeffs: &[RatFunc]) -> Result<ScalarOperator> {
        ScalarOperator::new(step, clear_denominators(coeffs))
    }

    /// E^δ-free form of ∂ − r: den(r)·E − num(r).
    pub fn first_order(step: usize, r: &RatFunc) -> Result<ScalarOperator> {
        ScalarOperator::from_ratfuncs(step, &[r.neg(), RatFunc::one()])
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &UniPoly {
        self.coeffs.last().expect("operator is nonzero")
    }

    pub fn trailing(&self) -> &UniPoly {
        &self.coeffs[0]
    }

    /// (L y)(m) for a sequence given as a closure.
    pub fn apply_at(&self, seq: impl Fn(i64) -> Rational, m: i64) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(Rational::zero(), |acc, (t, a)| {
                acc.add(&a.eval_i64(m).mul(&seq(m + (t * self.step) as i64)))
            })
    }

    /// The operator applied to a rational function y(x): Σ a_t(x)·y(x + tδ).
    pub fn apply_ratfunc(&self, y: &RatFunc) -> RatFunc {
        self.coeffs.iter().enumerate().fold(RatFunc::zero(), |acc, (t, a)| {
            acc.add(&RatFunc::from_poly(a.clone()).mul(&y.shift((t * self.step) as i64)))
        })
    }
}

/// Multiplies by the lcm of the denominators, then makes the vector
/// primitive with a positive last nonzero entry.
pub fn clear_denominators(v: &[RatFunc]) -> Vec<UniPoly> {
    let mut den = UniPoly::one();
    for c in v {
        if !c.is_zero() {
            den = den.lcm(c.denom());
        }
    }
    let polys: Vec<UniPoly> = v.iter().map(|c| c.numer().mul(&den.exact_div(c.denom()))).collect();
    let mut g = UniPoly::zero();
    let mut content = Rational::zero();
    for p in &polys {
        if !p.is_zero() {
            g = g.gcd(p);
            content = if content.is_zero() { p.content() } else { gcd_rational(&content, &p.content()) };
        }
    }
    if g.is_zero() {
        return polys;
    }
    let lead = polys.iter().rev().find(|p| !p.is_zero()).map(|p| p.lc()).expect("nonzero vector");
    let sign = if lead.is_negative_display() { Rational::one().neg() } else { Rational::one() };
    let scale = sign.div(&content);
    polys.iter().map(|p| p.exact_div(&g).scale(&scale)).collect()
}

/// Scales a polynomial vector with coprime entries to integer coefficients
/// with content 1 and a positive last nonzero leading coefficient.
pub fn integer_primitive(polys: &[UniPoly]) -> Vec<UniPoly> {
    let mut content = Rational::zero();
    for p in polys.iter().filter(|p| !p.is_zero()) {
        content = if content.is_zero() { p.content() } else { gcd_rational(&content, &p.content()) };
    }
    let Some(lead) = polys.iter().rev().find(|p| !p.is_zero()).map(|p| p.lc()) else {
        return polys.to_vec();
    };
    let sign = if lead.is_negative_display() { Rational::one().neg() } else { Rational::one() };
    let scale = sign.div(&content);
    polys.iter().map(|p| p.scale(&scale)).collect()
}

fn gcd_rational(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rational::new(num, den)
}

impl fmt::Display for ScalarOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = if self.step == 1 { "E".to_string() } else { format!("E{}", self.step) };
        let mut first = true;
        for (t, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.lc().is_negative_display();
            let abs = if neg { a.neg() } else { a.clone() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = abs.to_string_in("x");
            let body = match t {
                0 => {
                    if abs.term_count() > 1 && !first {
                        format!("({coef})")
                    } else {
                        coef
                    }
                }
                _ => {
                    let pow = if t == 1 { e.clone() } else { format!("{e}^{t}") };
                    if abs.is_one() {
                        pow
                    } else if abs.term_count() > 1 {
                        format!("({coef})*{pow}")
                    } else {
                        format!("{coef}*{pow}")
                    }
                }
            };
            write!(f, "{sep}{body}")?;
            first = false;
        }
        Ok(())
    }
}
