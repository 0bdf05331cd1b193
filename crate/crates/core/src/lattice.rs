//! Multiplicative relations ∏ b_i^{z_i} = σ^δ(f)/f among certificates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hyper::shift_between;
use crate::scalar::{rational_prime_exponents, RatFunc, UniPoly};

/// Hermite normal form of the lattice spanned by `rows`: nonzero rows only,
/// positive pivots strictly increasing in column, entries above a pivot
/// reduced into [0, pivot).
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut top = 0;
    for c in 0..cols {
        if top == m.len() {
            break;
        }
        // Euclid on column c among rows top.. until one nonzero entry remains.
        loop {
            let Some(p) = (top..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].abs()) else {
                break;
            };
            m.swap(top, p);
            let mut done = true;
            for i in top + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[top][c]);
                let pivot = m[top].clone();
                for (v, w) in m[i].iter_mut().zip(&pivot) {
                    *v -= &q * w;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top == m.len() || m[top][c].is_zero() {
            continue;
        }
        if m[top][c].is_negative() {
            for v in m[top].iter_mut() {
                *v = -&*v;
            }
        }
        let pivot = m[top].clone();
        for i in 0..top {
            let q = m[i][c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for (v, w) in m[i].iter_mut().zip(&pivot) {
                    *v -= &q * w;
                }
            }
        }
        top += 1;
    }
    m.truncate(top);
    m
}

/// An HNF basis of {z ∈ ℤ^c : M·z = 0} for an r×c integer matrix.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let r = m.len();
    // Row j is (column j of M | e_j); unimodular row operations keep the
    // second block a record of the combination taken.
    let aug: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = m.iter().map(|mr| mr[j].clone()).collect();
            row.extend((0..cols).map(|k| BigInt::from((k == j) as i64)));
            row
        })
        .collect();
    let kernel: Vec<Vec<BigInt>> =
        hermite_normal_form(&aug).into_iter().filter(|row| row[..r].iter().all(Zero::is_zero)).map(|row| row[r..].to_vec()).collect();
    hermite_normal_form(&kernel)
}

/// Orbit of a monic irreducible polynomial under x → x + mδ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftClass {
    pub representative: UniPoly,
    pub step: usize,
}

impl ShiftClass {
    /// The m with q(x) = representative(x + mδ), if q is in the class.
    pub fn offset_of(&self, q: &UniPoly) -> Option<i64> {
        let h = shift_between(q, &self.representative)?;
        (h % self.step as i64 == 0).then(|| h / self.step as i64)
    }
}

/// Generators z of the relation module with witnesses f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentLattice {
    pub basis: Vec<Vec<i64>>,
    pub witnesses: Vec<RatFunc>,
    pub step: usize,
}

impl ExponentLattice {
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether z lies in the ℤ-span of the basis.
    pub fn contains(&self, z: &[i64]) -> bool {
        let mut rows: Vec<Vec<BigInt>> = self.basis.iter().map(|b| b.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let before = hermite_normal_form(&rows);
        rows.push(z.iter().map(|&v| BigInt::from(v)).collect());
        hermite_normal_form(&rows) == before
    }
}

impl fmt::Display for ExponentLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "{{0}}");
        }
        let parts: Vec<String> = self
            .basis
            .iter()
            .zip(&self.witnesses)
            .map(|(z, w)| {
                let z: Vec<String> = z.iter().map(i64::to_string).collect();
                format!("({}) with f = {}", z.join(", "), w)
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// ∏ b_i^{z_i}.
pub fn power_product(b: &[RatFunc], z: &[i64]) -> RatFunc {
    b.iter().zip(z).fold(RatFunc::one(), |acc, (bi, &zi)| acc.mul(&bi.pow(zi)))
}

/// p(x)·p(x+δ)⋯p(x+(m−1)δ), or the reciprocal of the factors below 0 when m < 0,
/// so that σ^δ(g)/g = p(x+mδ)/p(x).
fn telescope(p: &UniPoly, m: i64, delta: usize) -> RatFunc {
    let d = delta as i64;
    let prod = |range: std::ops::Range<i64>| range.fold(UniPoly::one(), |acc, j| acc.mul(&p.shift_int(j * d)));
    if m >= 0 {
        RatFunc::from_poly(prod(0..m))
    } else {
        RatFunc::new(UniPoly::one(), prod(m..0))
    }
}

/// The ℤ-module of z with ∏ b_i^{z_i} = σ^δ(f)/f for some f ∈ ℚ(x)^×, with
/// one witness per basis vector.
pub fn sigma_quotient_lattice(b: &[RatFunc], delta: usize) -> Result<ExponentLattice> {
    if delta == 0 {
        return Err(Error::Domain("the lattice needs a positive step".into()));
    }
    if b.iter().any(RatFunc::is_zero) {
        return Err(Error::Domain("certificates must be nonzero".into()));
    }
    let nu = b.len();
    let mut classes: Vec<ShiftClass> = Vec::new();
    // Per class: (certificate index, offset, exponent).
    let mut members: Vec<Vec<(usize, i64, i64)>> = Vec::new();
    let mut units = Vec::with_capacity(nu);
    for (i, bi) in b.iter().enumerate() {
        let fac = bi.factor()?;
        units.push(fac.unit.clone());
        for (p, e) in fac.factors {
            let hit = classes.iter().enumerate().find_map(|(k, c)| c.offset_of(&p).map(|m| (k, m)));
            match hit {
                Some((k, m)) => members[k].push((i, m, e)),
                None => {
                    classes.push(ShiftClass { representative: p, step: delta });
                    members.push(vec![(i, 0, e)]);
                }
            }
        }
    }
    // Columns: z_1..z_ν, then one slack w for the sign parity Σ s_i z_i = 2w.
    let cols = nu + 1;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for mem in &members {
        let mut row = vec![BigInt::zero(); cols];
        for &(i, _, e) in mem {
            row[i] += e;
        }
        rows.push(row);
    }
    let mut prime_rows: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut sign = vec![BigInt::zero(); cols];
    for (i, u) in units.iter().enumerate() {
        let (neg, primes) = rational_prime_exponents(u)?;
        if neg {
            sign[i] = BigInt::from(1);
        }
        for (p, e) in primes {
            let k = match prime_rows.iter().position(|(q, _)| *q == p) {
                Some(k) => k,
                None => {
                    prime_rows.push((p, vec![BigInt::zero(); cols]));
                    prime_rows.len() - 1
                }
            };
            prime_rows[k].1[i] += e;
        }
    }
    rows.extend(prime_rows.into_iter().map(|(_, r)| r));
    sign[nu] = BigInt::from(-2);
    rows.push(sign);
    let projected: Vec<Vec<BigInt>> = integer_kernel(&rows, cols).into_iter().map(|mut z| {
        z.truncate(nu);
        z
    }).collect();
    let basis: Vec<Vec<i64>> = hermite_normal_form(&projected)
        .into_iter()
        .map(|z| z.iter().map(|v| v.to_i64().ok_or_else(|| Error::CostLimit("lattice entry beyond 64 bits".into()))).collect())
        .collect::<Result<_>>()?;
    let mut witnesses = Vec::with_capacity(basis.len());
    for z in &basis {
        let mut f = RatFunc::one();
        for (class, mem) in classes.iter().zip(&members) {
            for &(i, m, e) in mem {
                let total = z[i] * e;
                if total != 0 && m != 0 {
                    f = f.mul(&telescope(&class.representative, m, delta).pow(total));
                }
            }
        }
        if power_product(b, z).mul(&f) != f.shift(delta as i64) {
            return Err(Error::Internal(format!("lattice witness {f} fails for {z:?}")));
        }
        witnesses.push(f);
    }
    Ok(ExponentLattice { basis, witnesses, step: delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper::is_shift_quotient;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn rfs(v: &[&str]) -> Vec<RatFunc> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = integer_kernel(&big(&[&[1, 1, 1]]), 3);
        // Same lattice as {(1,−1,0), (0,1,−1)}, in reduced form.
        assert_eq!(k, big(&[&[1, 0, -1], &[0, 1, -1]]));
        assert_eq!(hermite_normal_form(&big(&[&[1, -1, 0], &[0, 1, -1]])), k);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(integer_kernel(&big(&[&[1, 0], &[0, 1]]), 2).is_empty());
        assert_eq!(integer_kernel(&big(&[&[0, 0, 0]]), 3), big(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn kernel_is_saturated() {
        // 2a + 4b = 0 has kernel (2, −1), not the index-2 sublattice.
        assert_eq!(integer_kernel(&big(&[&[2, 4]]), 2), big(&[&[2, -1]]));
    }

    #[test]
    fn distinct_residue_classes_give_zero() {
        let lat = sigma_quotient_lattice(&rfs(&["x", "x+1", "x+2"]), 3).unwrap();
        assert!(lat.is_zero());
    }

    #[test]
    fn product_identically_one() {
        let lat = sigma_quotient_lattice(&rfs(&["x", "x+1", "1/(x^2+x)"]), 2).unwrap();
        assert_eq!(lat.basis, vec![vec![1, 1, 1]]);
        assert_eq!(lat.witnesses, vec![RatFunc::one()]);
    }

    #[test]
    fn telescoping_witness() {
        let lat = sigma_quotient_lattice(&rfs(&["x/(x+1)"]), 1).unwrap();
        assert_eq!(lat.basis, vec![vec![1]]);
        let (_, f) = lat.witnesses[0].normalized_up_to_constant();
        assert_eq!(f, "1/x".parse().unwrap());
    }

    #[test]
    fn sign_needs_even_exponent() {
        let lat = sigma_quotient_lattice(&rfs(&["-1"]), 1).unwrap();
        assert_eq!(lat.basis, vec![vec![2]]);
        assert_eq!(lat.witnesses, vec![RatFunc::one()]);
    }

    #[test]
    fn constants_and_shifts_mix() {
        // 2(x+3)/x = σ³-quotient times 2; 1/2 cancels the constant.
        let b = rfs(&["2*(x+3)/x", "1/2", "x"]);
        let lat = sigma_quotient_lattice(&b, 3).unwrap();
        assert_eq!(lat.basis, vec![vec![1, 1, 0]]);
        for z in [[1, 1, 0], [2, 2, 0], [1, 0, 0], [0, 0, 1]] {
            let oracle = is_shift_quotient(&power_product(&b, &z), 3).unwrap();
            assert_eq!(lat.contains(&z), oracle, "{z:?}");
        }
    }
}
