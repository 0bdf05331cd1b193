use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `-12`, `3/4`, ` 7 ` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad integer {den:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Prime factorization of |n| for n != 0, sorted by prime.
///
/// Values beyond 128 bits are rejected: every integer that reaches this
/// function comes from leading/trailing coefficients of small recurrences.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let m = n
        .abs()
        .to_u128()
        .ok_or_else(|| Error::FactorizationTooHard(n.to_string()))?;
    if m == 1 {
        return Ok(Vec::new());
    }
    Ok(num_prime::nt_funcs::factorize128(m)
        .into_iter()
        .map(|(p, e)| (BigInt::from(p), e as u32))
        .collect())
}

/// Positive divisors of |n|, ascending.
pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Signed prime exponents of a nonzero rational: `(sign_is_negative, [(p, e)])`.
pub fn rational_prime_exponents(r: &Rational) -> Result<(bool, Vec<(BigInt, i64)>)> {
    if r.is_zero() {
        return Err(Error::Domain("zero has no prime factorization".into()));
    }
    let mut out: Vec<(BigInt, i64)> = Vec::new();
    for (p, e) in factor_integer(r.numer())? {
        out.push((p, e as i64));
    }
    for (p, e) in factor_integer(r.denom())? {
        out.push((p, -(e as i64)));
    }
    out.sort();
    Ok((r.is_negative(), out))
}
