//! Exact arithmetic over Q, Q[x] and Q(x).

mod factor;
pub mod modp;
pub mod parse;
mod ratfunc;
mod rational;
mod unipoly;

use std::str::FromStr;

use num_bigint::BigInt;

pub use factor::{factor, integer_roots, monic_divisors, rational_roots, squarefree, FactoredRatFunc};
pub use ratfunc::RatFunc;
pub use rational::{divisors, factor_integer, int, parse_rational, rat, rational_prime_exponents, Rational};
pub use unipoly::UniPoly;

use crate::error::{Error, Result};
use crate::field::Field;
use parse::{parse_expr, ExprAlgebra};

/// p(x + m).
pub fn shift(p: &UniPoly, m: i64) -> UniPoly {
    p.shift_int(m)
}

/// f(i) for an integer i that is not a pole of f.
pub fn eval_at_integer(f: &RatFunc, i: i64) -> Result<Rational> {
    f.eval_at_integer(i)
}

impl ExprAlgebra for RatFunc {
    fn from_int(v: &BigInt) -> Self {
        RatFunc::constant(Rational::from_integer(v.clone()))
    }
    fn var(name: &str) -> Result<Self> {
        if name == "x" {
            Ok(RatFunc::x())
        } else {
            Err(Error::Parse(format!("unknown variable {name:?} in a rational function")))
        }
    }
    fn add(&self, other: &Self) -> Self {
        Field::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Field::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Field::mul(self, other)
    }
    fn neg(&self) -> Self {
        Field::neg(self)
    }
    fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(Field::div(self, other))
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 && self.is_zero() {
            return Err(Error::Parse("negative power of zero".into()));
        }
        Ok(RatFunc::pow(self, e))
    }
}

impl ExprAlgebra for Rational {
    fn from_int(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }
    fn var(name: &str) -> Result<Self> {
        Err(Error::Parse(format!("unknown variable {name:?} in a rational number")))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Result<Self> {
        if Field::is_zero(other) {
            return Err(Error::Parse("division by zero".into()));
        }
        Ok(self / other)
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 && Field::is_zero(self) {
            return Err(Error::Parse("negative power of zero".into()));
        }
        Ok(num_traits::Pow::pow(self, e as i32))
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<RatFunc> {
        parse_expr(s)?.eval()
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<UniPoly> {
        let f: RatFunc = s.parse()?;
        f.as_polynomial()
            .cloned()
            .ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_examples() {
        for s in ["x/(x+1)", "1/(x^2+x)", "-3*x^2+1/2", "(x+1)/x", "1/x^2", "0", "-x+1", "(2*x-1)/(x^2+1)"] {
            let f: RatFunc = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(f.to_string().parse::<RatFunc>().unwrap(), f);
        }
    }

    #[test]
    fn parse_normalizes() {
        let f: RatFunc = "(2*x)/(2*x+2)".parse().unwrap();
        assert_eq!(f.to_string(), "x/(x+1)");
        let g: RatFunc = "1/(x*(x+1))".parse().unwrap();
        assert_eq!(g.to_string(), "1/(x^2+x)");
        assert!("1/(x-x)".parse::<RatFunc>().is_err());
        assert!("y".parse::<RatFunc>().is_err());
    }
}
