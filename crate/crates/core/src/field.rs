//! Coefficient fields.
//!
//! The Gröbner engine, the linear algebra helpers and the Petkovšek
//! polynomial step are generic over [`Field`]. Three instances exist:
//! [`Rational`], [`RatFunc`](crate::scalar::RatFunc) and [`NumberField`]
//! elements (used only to decide whether an irrational hypergeometric
//! candidate is genuine).

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{Rational, UniPoly};

pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }

    /// Coordinates over Q (one entry for Q, `deg` entries for a number field).
    /// Only meaningful for fields that are finite-dimensional over Q.
    fn rational_coordinates(&self) -> Option<Vec<Rational>> {
        None
    }

    /// The value as a rational number when it lies in Q.
    fn as_rational(&self) -> Option<Rational> {
        None
    }

    /// Whether the printed form needs parentheses when used as a factor.
    fn needs_parens(&self) -> bool {
        false
    }

    /// Whether a term with this coefficient prints as a subtraction.
    fn is_negative_display(&self) -> bool {
        false
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
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
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn rational_coordinates(&self) -> Option<Vec<Rational>> {
        Some(vec![self.clone()])
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn needs_parens(&self) -> bool {
        !self.is_integer() && !Zero::is_zero(self)
    }
    fn is_negative_display(&self) -> bool {
        num_traits::Signed::is_negative(self)
    }
}

/// An element of Q[t]/(p) for a fixed irreducible `p`.
#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: std::sync::Arc<UniPoly>,
    value: UniPoly,
}

impl NumberField {
    /// The generator t of Q[t]/(modulus). `modulus` must be irreducible of
    /// degree at least 1.
    pub fn generator(modulus: &UniPoly) -> NumberField {
        let m = std::sync::Arc::new(modulus.monic());
        let value = UniPoly::x().rem(&m);
        NumberField { modulus: m, value }
    }

    pub fn constant(&self, c: &Rational) -> NumberField {
        NumberField { modulus: self.modulus.clone(), value: UniPoly::constant(c.clone()) }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    fn wrap(&self, value: UniPoly) -> NumberField {
        NumberField { modulus: self.modulus.clone(), value: value.rem(&self.modulus) }
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for NumberField {}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} mod {}]", self.value.to_string_in("t"), self.modulus.to_string_in("t"))
    }
}

// Number-field elements are only ever produced from a generator, so `zero`
// and `one` without a modulus are placeholders that get absorbed on the first
// binary operation with a real element.
impl Field for NumberField {
    fn zero() -> Self {
        NumberField { modulus: std::sync::Arc::new(UniPoly::zero()), value: UniPoly::zero() }
    }
    fn one() -> Self {
        NumberField { modulus: std::sync::Arc::new(UniPoly::zero()), value: UniPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn is_one(&self) -> bool {
        self.value.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        let m = pick_modulus(self, other);
        NumberField { modulus: m, value: self.value.add(&other.value) }
    }
    fn sub(&self, other: &Self) -> Self {
        let m = pick_modulus(self, other);
        NumberField { modulus: m, value: self.value.sub(&other.value) }
    }
    fn mul(&self, other: &Self) -> Self {
        let m = pick_modulus(self, other);
        let value = self.value.mul(&other.value);
        let value = if m.is_zero() { value } else { value.rem(&m) };
        NumberField { modulus: m, value }
    }
    fn neg(&self) -> Self {
        NumberField { modulus: self.modulus.clone(), value: self.value.neg() }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.modulus.is_zero() {
            let c = self.value.coeff(0).recip();
            return NumberField { modulus: self.modulus.clone(), value: UniPoly::constant(c) };
        }
        let (g, s, _) = self.value.ext_gcd(&self.modulus);
        debug_assert!(g.is_one(), "modulus not irreducible");
        self.wrap(s)
    }
    fn from_rational(r: &Rational) -> Self {
        NumberField { modulus: std::sync::Arc::new(UniPoly::zero()), value: UniPoly::constant(r.clone()) }
    }
    fn rational_coordinates(&self) -> Option<Vec<Rational>> {
        let d = self.modulus.degree().unwrap_or(1).max(1);
        Some((0..d).map(|i| self.value.coeff(i)).collect())
    }
    fn needs_parens(&self) -> bool {
        false
    }
}

fn pick_modulus(a: &NumberField, b: &NumberField) -> std::sync::Arc<UniPoly> {
    if a.modulus.is_zero() {
        b.modulus.clone()
    } else {
        a.modulus.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn golden_ratio_field_arithmetic() {
        // t^2 - t - 1
        let p = UniPoly::from_coeffs(vec![q(-1), q(-1), q(1)]);
        let t = NumberField::generator(&p);
        let t2 = t.mul(&t);
        let expect = t.add(&NumberField::one());
        assert_eq!(t2, expect);
        let inv = t.inv();
        assert!(inv.mul(&t).is_one());
        // 1/t = t - 1
        assert_eq!(inv, t.sub(&NumberField::one()));
    }
}
