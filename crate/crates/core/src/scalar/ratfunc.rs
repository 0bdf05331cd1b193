use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};


use super::factor::{factor, FactoredRatFunc};
use super::{Rational, UniPoly};
use crate::error::{Error, Result};
use crate::field::Field;

/// An element of Q(x) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Builds `num/den` and brings it to canonical form.
    pub fn new(num: UniPoly, den: UniPoly) -> RatFunc {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let c = den.coeff(0).recip();
            return RatFunc { num: num.scale(&c), den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = den.lc();
        if One::is_one(&lc) {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: UniPoly) -> RatFunc {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn x() -> RatFunc {
        RatFunc::from_poly(UniPoly::x())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// f(x + m); the action of sigma^m on Q(x).
    pub fn shift(&self, m: i64) -> RatFunc {
        if m == 0 || self.is_constant() {
            return self.clone();
        }
        // Shifting preserves coprimality and monicity.
        RatFunc { num: self.num.shift_int(m), den: self.den.shift_int(m) }
    }

    /// f(c x); shifts by m become shifts by m/c.
    pub fn scale_var(&self, c: &Rational) -> RatFunc {
        RatFunc::new(self.num.scale_var(c), self.den.scale_var(c))
    }

    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(at) / d)
    }

    /// Exact value at an integer; fails with [`Error::Pole`] at a pole.
    pub fn eval_at_integer(&self, i: i64) -> Result<Rational> {
        self.eval(&Rational::from_integer(i.into())).ok_or(Error::Pole { at: i })
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        if e == 0 {
            return RatFunc::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        RatFunc { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// Unit times monic irreducible factors with signed exponents.
    pub fn factor(&self) -> Result<FactoredRatFunc> {
        if self.is_zero() {
            return Err(Error::Domain("factor of the zero rational function".into()));
        }
        let n = factor(&self.num)?;
        let d = factor(&self.den)?;
        let mut factors = n.factors;
        for (p, e) in d.factors {
            factors.push((p, -e));
        }
        factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        Ok(FactoredRatFunc { unit: n.unit / d.unit, factors })
    }

    /// Larger of numerator and denominator degree.
    pub fn height(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// Total order used for canonical sorting (denominator first, then numerator).
    pub fn cmp_canonical(&self, other: &RatFunc) -> Ordering {
        self.den.cmp_canonical(&other.den).then_with(|| self.num.cmp_canonical(&other.num))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.num.to_string_in(var);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.term_count() > 1 { format!("({n})") } else { n };
        let d = self.den.to_string_in(var);
        if self.den.term_count() == 1 {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl Field for RatFunc {
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn one() -> Self {
        RatFunc { num: UniPoly::one(), den: UniPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&other.num));
            }
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        if other.den.is_one() {
            return RatFunc::new(self.num.add(&other.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::new(self.num.mul(&other.den).add(&other.num), other.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let a = other.den.exact_div(&g);
        let b = self.den.exact_div(&g);
        RatFunc::new(self.num.mul(&a).add(&other.num.mul(&b)), self.den.mul(&a))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&other.num));
        }
        if let Some(c) = self.as_constant() {
            return RatFunc { num: other.num.scale(&c), den: other.den.clone() };
        }
        if let Some(c) = other.as_constant() {
            return RatFunc { num: self.num.scale(&c), den: self.den.clone() };
        }
        // Cross-cancel before multiplying to keep intermediate degrees low.
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (n1, d2) = if g1.is_one() { (self.num.clone(), other.den.clone()) } else { (self.num.exact_div(&g1), other.den.exact_div(&g1)) };
        let (n2, d1) = if g2.is_one() { (other.num.clone(), self.den.clone()) } else { (other.num.exact_div(&g2), self.den.exact_div(&g2)) };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lc();
        if One::is_one(&lc) {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero");
        let lc = self.num.lc();
        let inv = lc.recip();
        RatFunc { num: self.den.scale(&inv), den: self.num.scale(&inv) }
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn is_negative_display(&self) -> bool {
        num_traits::Signed::is_negative(&self.num.lc())
    }
    fn needs_parens(&self) -> bool {
        self.num.term_count() > 1 || !self.den.is_one()
            || self.as_constant().is_some_and(|c| !c.is_integer())
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        <RatFunc as Field>::zero()
    }

    pub fn one() -> RatFunc {
        <RatFunc as Field>::one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn from_i64(v: i64) -> RatFunc {
        RatFunc::constant(Rational::from_integer(v.into()))
    }

    /// Any nonzero rational multiple `c * self` with `c` chosen so that the
    /// numerator is primitive with positive leading coefficient.
    pub fn normalized_up_to_constant(&self) -> (Rational, RatFunc) {
        if self.is_zero() {
            return (<Rational as One>::one(), self.clone());
        }
        let c = self.num.content();
        (c.clone(), RatFunc { num: self.num.scale(&c.recip()), den: self.den.clone() })
    }
}
