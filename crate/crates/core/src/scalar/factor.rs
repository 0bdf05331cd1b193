//! Factorization over Q: squarefree decomposition, rational roots, then
//! Kronecker's interpolation search for the remaining nonlinear pieces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::divisors;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// `unit * prod(p^e)` with monic irreducible `p` and nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRatFunc {
    pub unit: Rational,
    pub factors: Vec<(UniPoly, i64)>,
}

impl FactoredRatFunc {
    pub fn expand(&self) -> super::RatFunc {
        use crate::field::Field;
        let mut acc = super::RatFunc::constant(self.unit.clone());
        for (p, e) in &self.factors {
            acc = acc.mul(&super::RatFunc::from_poly(p.clone()).pow(*e));
        }
        acc
    }
}

/// Upper limit on Kronecker interpolation candidates before giving up.
const KRONECKER_BUDGET: u64 = 4_000_000;

/// Factors a nonzero polynomial into a rational unit times monic irreducibles.
pub fn factor(p: &UniPoly) -> Result<FactoredRatFunc> {
    if p.is_zero() {
        return Err(Error::Domain("factor of the zero polynomial".into()));
    }
    let unit = p.lc();
    let mut factors: Vec<(UniPoly, i64)> = Vec::new();
    for (part, mult) in squarefree(p) {
        for q in irreducible_factors(&part)? {
            factors.push((q, mult as i64));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Ok(FactoredRatFunc { unit, factors })
}

/// Yun's squarefree decomposition: monic pairwise coprime parts with multiplicities.
pub fn squarefree(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let f = p.monic();
    if f.is_constant() {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.monic(), i));
        }
        b = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Rational roots of a nonzero polynomial, ascending, without multiplicity.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<Rational>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let v = p.x_valuation();
    if v > 0 {
        roots.push(Rational::zero());
    }
    let f = UniPoly::from_coeffs(p.coeffs()[v..].to_vec());
    if f.is_constant() {
        return Ok(roots);
    }
    let ints = f.integer_coeffs();
    let bound = f.root_bound();
    let nums = divisors(&ints[0])?;
    let dens = divisors(ints.last().unwrap())?;
    for d in &dens {
        for n in &nums {
            if !n.gcd(d).is_one() {
                continue;
            }
            let cand = Rational::new(n.clone(), d.clone());
            if cand > bound {
                continue;
            }
            for r in [cand.clone(), -cand] {
                if f.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The integer zeros of a nonzero polynomial, ascending.
pub fn integer_roots(p: &UniPoly) -> Result<Vec<i64>> {
    if p.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let mut roots = Vec::new();
    let v = p.x_valuation();
    if v > 0 {
        roots.push(0);
    }
    let f = UniPoly::from_coeffs(p.coeffs()[v..].to_vec());
    if f.is_constant() {
        return Ok(roots);
    }
    let ints = f.integer_coeffs();
    // An integer root of a primitive integer polynomial divides the constant
    // term; below the root bound the divisors are sieved directly, which
    // avoids factoring large constant terms.
    let e = root_bound_log2(&ints);
    let candidates: Vec<BigInt> = if e <= SIEVE_LOG2 {
        (1..=1i64 << e).map(BigInt::from).filter(|d| (&ints[0] % d).is_zero()).collect()
    } else {
        divisors(&ints[0])?
    };
    for d in candidates {
        for r in [d.clone(), -d] {
            if eval_int(&ints, &r).is_zero() {
                let r = r.to_i64().ok_or_else(|| Error::CostLimit(format!("integer root {r} out of range")))?;
                roots.push(r);
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}

/// Largest sieve range, as a power of two, for integer root candidates.
const SIEVE_LOG2: u64 = 20;

/// e with every complex root of the polynomial below 2^e in absolute value
/// (Fujiwara's bound, with coefficient ratios rounded up to powers of two).
fn root_bound_log2(ints: &[BigInt]) -> u64 {
    let n = ints.len() - 1;
    let lead = ints[n].bits();
    let mut e = 0u64;
    for k in 1..=n {
        let c = &ints[n - k];
        if c.is_zero() {
            continue;
        }
        let ratio = (c.bits() + 2).saturating_sub(lead.saturating_sub(1));
        e = e.max(ratio.div_ceil(k as u64));
    }
    e + 1
}

fn eval_int(coeffs: &[BigInt], at: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * at + c;
    }
    acc
}

/// Monic irreducible factors of a squarefree polynomial.
fn irreducible_factors(p: &UniPoly) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    let mut rest = p.monic();
    for r in rational_roots(&rest)? {
        let lin = UniPoly::linear(-r);
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        match f.degree() {
            None | Some(0) => {}
            Some(1..=3) => out.push(f.monic()),
            Some(_) => match kronecker_split(&f)? {
                Some((g, h)) => {
                    stack.push(g);
                    stack.push(h);
                }
                None => out.push(f.monic()),
            },
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}

/// Finds a nontrivial factorization of a squarefree polynomial without
/// rational roots, or proves there is none.
fn kronecker_split(f: &UniPoly) -> Result<Option<(UniPoly, UniPoly)>> {
    let n = f.degree().unwrap_or(0);
    let ints = f.integer_coeffs();
    for k in 2..=n / 2 {
        let points = evaluation_points(&ints, k + 1);
        let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(points.len());
        let mut total: u64 = 1;
        for (_, v) in &points {
            let mut c = Vec::new();
            for d in divisors(v)? {
                c.push(d.clone());
                c.push(-d);
            }
            total = total.saturating_mul(c.len() as u64);
            choices.push(c);
        }
        if total > KRONECKER_BUDGET {
            return Err(Error::FactorizationTooHard(f.to_string()));
        }
        let xs: Vec<Rational> = points.iter().map(|(a, _)| Rational::from_integer(a.clone())).collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let ys: Vec<Rational> = idx.iter().zip(&choices).map(|(&i, c)| Rational::from_integer(c[i].clone())).collect();
            let g = UniPoly::interpolate(&xs, &ys);
            if g.degree() == Some(k) && g.coeffs().iter().all(|c| c.is_integer()) {
                let (qt, r) = f.div_rem(&g);
                if r.is_zero() {
                    return Ok(Some((g.monic(), qt.monic())));
                }
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// `count` integer points with nonzero values, preferring small |f(a)|.
fn evaluation_points(ints: &[BigInt], count: usize) -> Vec<(BigInt, BigInt)> {
    let mut cands: Vec<(BigInt, BigInt)> = Vec::new();
    let mut a = 0i64;
    while cands.len() < 4 * count + 8 {
        for s in [a, -a] {
            let at = BigInt::from(s);
            let v = eval_int(ints, &at);
            if !v.is_zero() && !cands.iter().any(|(b, _)| *b == at) {
                cands.push((at, v));
            }
        }
        a += 1;
    }
    cands.sort_by(|x, y| x.1.abs().cmp(&y.1.abs()).then(x.0.cmp(&y.0)));
    cands.truncate(count);
    cands
}

/// Monic divisors of `prod p^e` for a list of monic irreducible factors with
/// positive exponents.
pub fn monic_divisors(factors: &[(UniPoly, i64)]) -> Vec<UniPoly> {
    let mut divs = vec![UniPoly::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(p);
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        let f = factor(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(f.unit, int(1));
        assert_eq!(f.factors, vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1)]);
    }

    #[test]
    fn product_of_consecutive_linears() {
        let f = factor(&poly(&[0, 1, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(&[0, 1]), 1), (poly(&[1, 1]), 1)]);
    }

    #[test]
    fn x_squared_plus_one_irreducible() {
        let f = factor(&poly(&[1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(poly(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn quartic_splits_into_quadratics() {
        // (x^2+1)(x^2+x+2) = x^4 + x^3 + 3x^2 + x + 2
        let f = factor(&poly(&[2, 1, 3, 1, 1])).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand().numer(), &poly(&[2, 1, 3, 1, 1]));
    }

    #[test]
    fn repeated_factors_and_units() {
        // -3 (x-1)^2 (2x+1)
        let p = poly(&[-1, 1]).pow(2).mul(&poly(&[1, 2])).scale(&int(-3));
        let f = factor(&p).unwrap();
        assert_eq!(f.unit, int(-6));
        assert!(f.factors.contains(&(poly(&[-1, 1]), 2)));
        assert_eq!(f.expand().numer(), &p);
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(integer_roots(&poly(&[0, -3, 1])).unwrap(), vec![0, 3]);
        assert!(integer_roots(&poly(&[1, 0, 1])).unwrap().is_empty());
        assert!(integer_roots(&poly(&[-1, 2])).unwrap().is_empty());
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but reducible mod every prime.
        let f = factor(&poly(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
    }
}
