//! Exact evaluation of the degree bounds κ₁, κ₂, κ₃, I(n) and d̃.

use malachite_base::num::arithmetic::traits::{BinomialCoefficient, CeilingSqrt, Pow};
use malachite_base::num::basic::traits::One;
use malachite_base::num::logic::traits::SignificantBits;
use malachite_nz::natural::Natural;

use crate::error::{Error, Result};

/// Largest exponent (I(n) − 1) for which d̃ is expanded.
pub const MAX_EXPANDED_EXPONENT: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoreticalBound {
    pub n: u64,
    pub kappa1: Natural,
    pub kappa2: Natural,
    pub kappa3: Natural,
    /// The argument m of the Jordan bound.
    pub jordan_arg: Natural,
    pub i_n: Natural,
    /// κ₃^(I(n)−1) when expansion was requested and the exponent is at
    /// most [`MAX_EXPANDED_EXPONENT`].
    pub d_tilde: Option<Natural>,
}

impl TheoreticalBound {
    pub fn kappa3_bits(&self) -> u64 {
        self.kappa3.significant_bits()
    }

    /// Bit length of d̃ when expanded.
    pub fn d_tilde_bits(&self) -> Option<u64> {
        self.d_tilde.as_ref().map(|d| d.significant_bits())
    }
}

/// max_{0 ≤ i ≤ k} C(m, i).
fn max_binomial(m: &Natural, k: u64) -> Natural {
    (0..=k)
        .map(|i| Natural::binomial_coefficient(m.clone(), Natural::from(i)))
        .max()
        .expect("nonempty range")
}

/// ⌈(√(8m)+1)^{2m²} − (√(8m)−1)^{2m²}⌉.
///
/// With s = √(8m) and k = 2m² even, the difference is s·T where
/// T = 2·Σ_{i odd} C(k, i)·(8m)^{(i−1)/2}, so the ceiling is ⌈√(8m·T²)⌉.
pub fn jordan_expression(m: &Natural) -> Natural {
    let k = Natural::from(2u32) * m * m;
    let eight_m = Natural::from(8u32) * m;
    let mut t = Natural::from(0u32);
    let mut power = Natural::ONE;
    let mut i = Natural::ONE;
    while i <= k {
        t += Natural::binomial_coefficient(k.clone(), i.clone()) * &power;
        power *= &eight_m;
        i += Natural::from(2u32);
    }
    t *= Natural::from(2u32);
    (eight_m * &t * &t).ceiling_sqrt()
}

/// The bounds for n × n systems. The unstated index range of the maxima is
/// taken as 0 ≤ i ≤ n². With `expand`, d̃ is computed as an integer.
pub fn theoretical_bound(n: u64, expand: bool) -> Result<TheoreticalBound> {
    if n == 0 {
        return Err(Error::Domain("the bound needs n ≥ 1".into()));
    }
    if n > 2 {
        return Err(Error::CostLimit(format!("(2n)^(3·8^(n²)) has more than 10^9 bits for n = {n}")));
    }
    let n2 = n * n;
    let e = 3 * 8u64.pow(n2 as u32);
    let big = Natural::from(2 * n).pow(e);
    let top = Natural::from(n2) + &big;
    let kappa1 = {
        let m = max_binomial(&top, n2);
        &m * &m
    };
    let kappa2 = &kappa1 * &big * Natural::binomial_coefficient(top.clone(), Natural::from(n2));
    let k1sq = &kappa1 * &kappa1 + Natural::ONE;
    let kappa3 = &kappa2 * &k1sq * max_binomial(&k1sq, n2);
    let jordan_arg = max_binomial(&Natural::from(n2 + 1), n2);
    let i_n = jordan_expression(&jordan_arg);
    let d_tilde = match u64::try_from(&(&i_n - Natural::ONE)) {
        Ok(exp) if expand && exp <= MAX_EXPANDED_EXPONENT => Some((&kappa3).pow(exp)),
        _ => None,
    };
    Ok(TheoreticalBound { n, kappa1, kappa2, kappa3, jordan_arg, i_n, d_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_at_one_and_two() {
        // 4√8 ≈ 11.31 and 5⁸ − 3⁸.
        assert_eq!(jordan_expression(&Natural::from(1u32)), Natural::from(12u32));
        assert_eq!(jordan_expression(&Natural::from(2u32)), Natural::from(390625u32 - 6561));
    }

    #[test]
    fn scalar_case_shape() {
        let b = theoretical_bound(1, true).unwrap();
        let e = Natural::from(16777217u64);
        assert_eq!(b.kappa1, &e * &e);
        assert_eq!(b.kappa2, &e * &e * &e * Natural::from(1u64 << 24));
        assert_eq!(b.jordan_arg, Natural::from(2u32));
        assert_eq!(b.i_n, Natural::from(384064u32));
        assert!(b.d_tilde.is_some());
        assert!(theoretical_bound(1, false).unwrap().d_tilde.is_none());
    }

    #[test]
    fn two_by_two_stays_symbolic() {
        let b = theoretical_bound(2, true).unwrap();
        assert_eq!(b.jordan_arg, Natural::from(10u32));
        assert!(b.d_tilde.is_none());
        assert!(theoretical_bound(3, false).is_err());
    }
}
