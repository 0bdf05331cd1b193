//! Polynomial solutions of Σ p_t(x)·y(x+t) = 0 by a degree bound and
//! undetermined coefficients, over any coefficient field.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::scalar::{int, integer_roots, Rational, UniPoly};

/// Largest degree bound accepted before reporting a cost limit.
pub const MAX_SOLUTION_DEGREE: usize = 600;

/// Dense polynomial over F, lowest degree first, no trailing zeros.
pub type Poly<F> = Vec<F>;

pub(crate) fn trim<F: Field>(mut p: Poly<F>) -> Poly<F> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn poly_add<F: Field>(a: &[F], b: &[F]) -> Poly<F> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x.add(y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => F::zero(),
            })
            .collect(),
    )
}

pub(crate) fn poly_mul<F: Field>(a: &[F], b: &[F]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(out)
}

pub(crate) fn poly_scale<F: Field>(a: &[F], c: &F) -> Poly<F> {
    trim(a.iter().map(|x| x.mul(c)).collect())
}

/// (x + t)^i for i = 0..=deg.
fn shifted_powers<F: Field>(t: i64, deg: usize) -> Vec<Poly<F>> {
    let lin = vec![F::from_i64(t), F::one()];
    let mut out = vec![vec![F::one()]];
    for i in 1..=deg {
        out.push(poly_mul(&out[i - 1], &lin));
    }
    out
}

pub(crate) fn from_unipoly<F: Field>(p: &UniPoly) -> Poly<F> {
    trim(p.coeffs().iter().map(F::from_rational).collect())
}

/// D(D−1)⋯(D−k+1) over ℚ.
fn falling(k: usize) -> UniPoly {
    (0..k as i64).fold(UniPoly::one(), |acc, j| acc.mul(&UniPoly::linear(int(-j))))
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = int(1);
    for j in 0..k {
        acc = acc * int((n - j) as i64) / int(j as i64 + 1);
    }
    acc
}

/// Coordinates of a coefficient over ℚ, padded to `len`.
fn coordinates<F: Field>(c: &F, len: usize) -> Vec<Rational> {
    let mut v = c.rational_coordinates().expect("coefficient field finite over Q");
    v.resize(len.max(v.len()), int(0));
    v
}

/// The largest degree a polynomial solution can have, or `None` when only
/// the zero polynomial solves the equation.
pub fn degree_bound<F: Field>(coeffs: &[Poly<F>]) -> Result<Option<usize>> {
    // Rewrite Σ p_t E^t as Σ q_k Δ^k with E = 1 + Δ.
    let q: Vec<Poly<F>> = (0..coeffs.len())
        .map(|k| {
            coeffs.iter().enumerate().skip(k).fold(Vec::new(), |acc, (t, p)| {
                poly_add(&acc, &poly_scale(p, &F::from_rational(&binomial(t, k))))
            })
        })
        .collect();
    let Some(b) = q.iter().enumerate().filter(|(_, qk)| !qk.is_empty()).map(|(k, qk)| qk.len() as i64 - 1 - k as i64).max()
    else {
        return Err(Error::Domain("polynomial solutions of the zero operator".into()));
    };
    // Leading coefficient of L(x^D) as a polynomial in D.
    let lead: Vec<(usize, F)> = q
        .iter()
        .enumerate()
        .filter(|(k, qk)| !qk.is_empty() && qk.len() as i64 - 1 - *k as i64 == b)
        .map(|(k, qk)| (k, qk.last().expect("nonempty").clone()))
        .collect();
    let width = lead.iter().map(|(_, c)| c.rational_coordinates().map_or(1, |v| v.len())).max().unwrap_or(1);
    let mut parts = vec![UniPoly::zero(); width];
    for (k, c) in &lead {
        let ff = falling(*k);
        for (i, x) in coordinates(c, width).iter().enumerate() {
            parts[i] = parts[i].add(&ff.scale(x));
        }
    }
    let Some(first) = parts.iter().find(|p| !p.is_zero()) else {
        return Err(Error::Internal("vanishing leading polynomial in the degree bound".into()));
    };
    let roots: Vec<i64> = integer_roots(first)?
        .into_iter()
        .filter(|&r| r >= 0 && parts.iter().all(|p| p.eval_i64(r).is_zero()))
        .collect();
    Ok(roots.into_iter().max().map(|r| r as usize))
}

/// A basis of the polynomial solutions y of Σ_t p_t(x)·y(x+t) = 0.
pub fn polynomial_solutions<F: Field>(coeffs: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let Some(deg) = degree_bound(coeffs)? else {
        return Ok(Vec::new());
    };
    if deg > MAX_SOLUTION_DEGREE {
        return Err(Error::CostLimit(format!("polynomial solutions of degree up to {deg}")));
    }
    // Column i holds L(x^i).
    let mut images: Vec<Poly<F>> = vec![Vec::new(); deg + 1];
    for (t, p) in coeffs.iter().enumerate() {
        if p.is_empty() {
            continue;
        }
        for (i, pw) in shifted_powers::<F>(t as i64, deg).iter().enumerate() {
            images[i] = poly_add(&images[i], &poly_mul(p, pw));
        }
    }
    let rows = images.iter().map(Vec::len).max().unwrap_or(0);
    if rows == 0 {
        return Ok((0..=deg).map(|i| {
            let mut v = vec![F::zero(); i + 1];
            v[i] = F::one();
            v
        }).collect());
    }
    let m = Matrix::from_rows(
        (0..rows).map(|r| images.iter().map(|col| col.get(r).cloned().unwrap_or_else(F::zero)).collect()).collect(),
    );
    Ok(m.kernel().into_iter().map(trim).collect())
}
