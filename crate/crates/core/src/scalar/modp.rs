//! Arithmetic modulo word-size primes, for multimodular reconstruction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, UniPoly};

/// Primes just below 2^62, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || loop {
        c -= 2;
        if num_prime::nt_funcs::is_prime64(c) {
            return Some(c);
        }
    })
}

/// The field Z/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Zp {
        Zp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    /// Inverses of nonzero elements with a single exponentiation.
    pub fn batch_inv(&self, xs: &[u64]) -> Vec<u64> {
        let mut prefix = Vec::with_capacity(xs.len());
        let mut acc = 1u64;
        for &x in xs {
            prefix.push(acc);
            acc = self.mul(acc, x);
        }
        let mut inv = self.inv(acc);
        let mut out = vec![0u64; xs.len()];
        for i in (0..xs.len()).rev() {
            out[i] = self.mul(inv, prefix[i]);
            inv = self.mul(inv, xs[i]);
        }
        out
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced below p")
    }

    /// The image of a rational, or `None` when p divides its denominator.
    pub fn from_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        (d != 0).then(|| self.mul(self.from_bigint(r.numer()), self.inv(d)))
    }

    pub fn poly(&self, f: &UniPoly) -> Option<Vec<u64>> {
        f.coeffs().iter().map(|c| self.from_rational(c)).collect()
    }

    pub fn eval(&self, f: &[u64], at: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, at), c))
    }

    /// Newton interpolation through distinct nodes.
    pub fn interpolate(&self, xs: &[u64], ys: &[u64]) -> Vec<u64> {
        let n = xs.len();
        let mut cache = std::collections::HashMap::new();
        let mut dd = ys.to_vec();
        for k in 1..n {
            for i in (k..n).rev() {
                let diff = self.sub(xs[i], xs[i - k]);
                let inv = *cache.entry(diff).or_insert_with(|| self.inv(diff));
                dd[i] = self.mul(self.sub(dd[i], dd[i - 1]), inv);
            }
        }
        let mut acc: Vec<u64> = Vec::with_capacity(n);
        for i in (0..n).rev() {
            // acc·(x − xs[i]) + dd[i]
            acc.insert(0, 0);
            for k in 0..acc.len() - 1 {
                let c = acc[k + 1];
                acc[k] = self.sub(acc[k], self.mul(c, xs[i]));
            }
            acc[0] = self.add(acc[0], dd[i]);
        }
        trim(&mut acc);
        acc
    }

    /// ∏ (x − x_i).
    pub fn node_polynomial(&self, xs: &[u64]) -> Vec<u64> {
        let mut modulus = vec![1u64];
        for &x in xs {
            modulus = self.mul_poly(&modulus, &[self.neg(x), 1]);
        }
        modulus
    }

    fn div_rem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(*b.last().expect("nonzero divisor"));
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = self.mul(*r.last().expect("nonempty"), inv);
            q[shift] = c;
            for (k, &bk) in b.iter().enumerate() {
                r[shift + k] = self.sub(r[shift + k], self.mul(c, bk));
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn mul_poly(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    fn sub_poly(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.sub(a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
        }
        trim(&mut out);
        out
    }

    /// Monic gcd.
    pub fn gcd_poly(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let (_, r) = self.div_rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        match a.last() {
            Some(&lc) => {
                let inv = self.inv(lc);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
            None => a,
        }
    }

    /// Exact quotient a / b.
    pub fn exact_div_poly(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (q, r) = self.div_rem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division mod p");
        q
    }

    /// Rational reconstruction of the values at distinct nodes: (num, den)
    /// with den monic and deg num < `num_len`, by default n/2, if one exists.
    /// `modulus` is the node polynomial of `xs`.
    pub fn reconstruct(&self, xs: &[u64], ys: &[u64], modulus: &[u64], num_len: Option<usize>) -> Option<(Vec<u64>, Vec<u64>)> {
        let n = xs.len();
        let num_len = num_len.unwrap_or(n.div_ceil(2));
        let (mut r0, mut r1) = (modulus.to_vec(), self.interpolate(xs, ys));
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while r1.len() > num_len {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let t = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r1.is_empty() {
            return Some((Vec::new(), vec![1]));
        }
        if r1.len() + t1.len() > n + 1 || xs.iter().any(|&x| self.eval(&t1, x) == 0) {
            return None;
        }
        let inv = self.inv(*t1.last().expect("nonzero"));
        let num = r1.iter().map(|&c| self.mul(c, inv)).collect();
        let den = t1.iter().map(|&c| self.mul(c, inv)).collect();
        Some((num, den))
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Chinese remaindering of (a mod m) with (b mod p), returning the residue
/// mod m·p in [0, m·p).
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let zp = Zp::new(p);
    let am = zp.from_bigint(a);
    let mm = zp.from_bigint(m);
    let k = zp.mul(zp.sub(b, am), zp.inv(mm));
    a + m * BigInt::from(k)
}

/// The rational r/s ≡ a (mod m) with |r|, |s| ≤ √(m/2), if it exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    let (num, den) = if s1.sign() == Sign::Minus { (-r1, -s1) } else { (r1, s1) };
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn reconstructs_rational_function() {
        let zp = Zp::new(primes().next().unwrap());
        // (x^2 + 3)/(x − 5)
        let xs: Vec<u64> = (10..18).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| zp.mul(zp.add(zp.mul(x, x), 3), zp.inv(x - 5))).collect();
        let (num, den) = zp.reconstruct(&xs, &ys, &zp.node_polynomial(&xs), None).unwrap();
        assert_eq!(num, vec![3, 0, 1]);
        assert_eq!(den, vec![zp.neg(5), 1]);
    }

    #[test]
    fn crt_then_rational_reconstruction() {
        let r = rat(-355, 113);
        let mut a = BigInt::zero();
        let mut m = BigInt::one();
        for p in primes().take(2) {
            a = crt(&a, &m, Zp::new(p).from_rational(&r).unwrap(), p);
            m *= BigInt::from(p);
        }
        assert_eq!(rational_reconstruct(&a, &m), Some(r));
    }
}
