//! Rational solutions of scalar recurrences (Abramov's universal
//! denominator) and of first-order systems σ^δ(c) = M·c.

use super::polysol::{from_unipoly, polynomial_solutions};
use crate::difference::{cyclic_vector_scalarize, ScalarOperator};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::{factor, int, rat, RatFunc, Rational, UniPoly};

/// Integers h ≥ 0 with gcd(a(x), b(x+h)) ≠ 1, descending.
pub fn dispersion_set(a: &UniPoly, b: &UniPoly) -> Result<Vec<i64>> {
    if a.is_constant() || b.is_constant() {
        return Ok(Vec::new());
    }
    let fa = factor(a)?;
    let fb = factor(b)?;
    let mut out = Vec::new();
    for (f, _) in &fa.factors {
        for (g, _) in &fb.factors {
            if let Some(h) = shift_between(f, g) {
                if h >= 0 {
                    out.push(h);
                }
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out.dedup();
    Ok(out)
}

/// The integer h with g(x+h) = f(x) for monic f, g, if any.
pub fn shift_between(f: &UniPoly, g: &UniPoly) -> Option<i64> {
    let d = f.degree()?;
    if g.degree() != Some(d) || d == 0 {
        return None;
    }
    // The x^{d−1} coefficients differ by d·h.
    let h = (f.coeff(d - 1) - g.coeff(d - 1)) / int(d as i64);
    if !h.is_integer() {
        return None;
    }
    let h = num_traits::ToPrimitive::to_i64(h.numer())?;
    (g.shift_int(h) == *f).then_some(h)
}

/// A polynomial multiple of the denominator of every rational solution of a
/// step-1 operator.
pub fn universal_denominator(op: &ScalarOperator) -> Result<UniPoly> {
    let l = op.order() as i64;
    let mut a = op.leading().shift_int(-l);
    let mut b = op.trailing().clone();
    let mut u = UniPoly::one();
    for h in dispersion_set(&a, &b)? {
        let d = a.gcd(&b.shift_int(h));
        if d.is_constant() {
            continue;
        }
        a = a.exact_div(&d);
        b = b.exact_div(&d.shift_int(-h));
        for i in 0..=h {
            u = u.mul(&d.shift_int(-i));
        }
    }
    Ok(u)
}

/// The same operator in the variable u = x/δ, where E shifts u by 1.
fn to_unit_step(op: &ScalarOperator) -> Result<ScalarOperator> {
    let delta = int(op.step() as i64);
    ScalarOperator::new(1, op.coeffs().iter().map(|c| c.scale_var(&delta)).collect())
}

/// A ℚ-basis of the rational solutions y of L(y) = Σ a_t(x)·y(x + tδ) = 0.
pub fn scalar_rational_solutions(op: &ScalarOperator) -> Result<Vec<RatFunc>> {
    let unit = to_unit_step(op)?;
    let u = universal_denominator(&unit)?;
    // y = p/U: Σ a_t·(lcm/U(x+t))·p(x+t) = 0.
    let shifted: Vec<UniPoly> = (0..=unit.order() as i64).map(|t| u.shift_int(t)).collect();
    let lcm = shifted.iter().fold(UniPoly::one(), |acc, s| acc.lcm(s));
    let coeffs: Vec<Vec<Rational>> = unit
        .coeffs()
        .iter()
        .zip(&shifted)
        .map(|(a, s)| from_unipoly(&a.mul(&lcm.exact_div(s))))
        .collect();
    let back = rat(1, op.step() as i64);
    Ok(polynomial_solutions(&coeffs)?
        .into_iter()
        .map(|p| RatFunc::new(UniPoly::from_coeffs(p), u.clone()).scale_var(&back))
        .collect())
}

/// Whether q = σ^δ(g)/g for some nonzero g ∈ ℚ(x).
pub fn is_shift_quotient(q: &RatFunc, delta: usize) -> Result<bool> {
    Ok(!scalar_rational_solutions(&ScalarOperator::first_order(delta, q)?)?.is_empty())
}

/// Index sets of the connected components of the nonzero pattern of M.
pub fn blocks(m: &Matrix<RatFunc>) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(comp: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while comp[r] != r {
            r = comp[r];
        }
        comp[i] = r;
        r
    }
    for i in 0..n {
        for j in 0..n {
            if !m.get(i, j).is_zero() {
                let (a, b) = (root(&mut comp, i), root(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    for i in 0..n {
        let r = root(&mut comp, i);
        let k = *seen.entry(r).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[k].push(i);
    }
    out
}

pub(crate) fn submatrix(m: &Matrix<RatFunc>, idx: &[usize]) -> Matrix<RatFunc> {
    Matrix::from_rows(idx.iter().map(|&i| idx.iter().map(|&j| m.get(i, j).clone()).collect()).collect())
}

/// σ^δ applied entrywise.
pub fn sigma_vec(c: &[RatFunc], delta: usize) -> Vec<RatFunc> {
    c.iter().map(|v| v.shift(delta as i64)).collect()
}

/// Rational solutions of one indecomposable block via a cyclic vector.
fn block_rational_solutions(m: &Matrix<RatFunc>, delta: usize) -> Result<Vec<Vec<RatFunc>>> {
    let red = cyclic_vector_scalarize(m, delta)?;
    let n = m.rows();
    let winv = red.gauge.inverse().expect("the gauge is invertible");
    let mut out = Vec::new();
    for u in scalar_rational_solutions(&red.operator)? {
        let iterates: Vec<RatFunc> = (0..n).map(|k| u.shift((k * delta) as i64)).collect();
        out.push(winv.mul_vec(&iterates));
    }
    Ok(out)
}

/// A ℚ-basis of the rational vectors c with σ^δ(c) = M·c.
pub fn rational_solutions(m: &Matrix<RatFunc>, delta: usize) -> Result<Vec<Vec<RatFunc>>> {
    let n = m.rows();
    let mut out = Vec::new();
    for idx in blocks(m) {
        for c in block_rational_solutions(&submatrix(m, &idx), delta)? {
            let mut full = vec![RatFunc::zero(); n];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = c[k].clone();
            }
            debug_assert!(sigma_vec(&full, delta) == m.mul_vec(&full), "rational solution fails the system");
            out.push(full);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn one_by_one(s: &str) -> Matrix<RatFunc> {
        Matrix::from_rows(vec![vec![rf(s)]])
    }

    #[test]
    fn constants_solve_the_identity() {
        assert_eq!(rational_solutions(&one_by_one("1"), 1).unwrap(), vec![vec![RatFunc::one()]]);
    }

    #[test]
    fn reciprocal_of_x() {
        let sols = rational_solutions(&one_by_one("x/(x+1)"), 1).unwrap();
        assert_eq!(sols.len(), 1);
        let (_, c) = sols[0][0].normalized_up_to_constant();
        assert_eq!(c, rf("1/x"));
    }

    #[test]
    fn doubling_has_no_rational_solution() {
        assert!(rational_solutions(&one_by_one("2"), 1).unwrap().is_empty());
    }

    #[test]
    fn step_three_shift_quotient() {
        // σ³(x)/x = (x+3)/x.
        assert!(is_shift_quotient(&rf("(x+3)/x"), 3).unwrap());
        assert!(!is_shift_quotient(&rf("(x+1)/x"), 3).unwrap());
        assert!(is_shift_quotient(&rf("(x+1)/x"), 1).unwrap());
    }

    #[test]
    fn dispersion_of_shifted_factors() {
        let a = UniPoly::from_i64s(&[5, 1]).mul(&UniPoly::from_i64s(&[0, 1]));
        let b = UniPoly::from_i64s(&[2, 1]);
        assert_eq!(dispersion_set(&a, &b).unwrap(), vec![3]);
    }
}
