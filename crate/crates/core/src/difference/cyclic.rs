use super::operator::ScalarOperator;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::scalar::{RatFunc, UniPoly};

/// A scalar equation equivalent to σ^δ(Y) = M·Y: with u = w_0·Y, the rows
/// w_{k+1} = σ^δ(w_k)·M satisfy E^k u = w_k·Y.
#[derive(Clone, Debug)]
pub struct CyclicReduction {
    pub operator: ScalarOperator,
    /// Rows w_0, …, w_{n−1}; invertible.
    pub gauge: Matrix<RatFunc>,
}

impl CyclicReduction {
    pub fn cyclic_vector(&self) -> &[RatFunc] {
        self.gauge.row(0)
    }
}

fn candidates(n: usize) -> impl Iterator<Item = Vec<RatFunc>> {
    let units = (0..n).map(move |i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect());
    let ones = std::iter::once(vec![RatFunc::one(); n]);
    let powers = (0..8i64).map(move |k| {
        let base = RatFunc::from_poly(UniPoly::from_i64s(&[k, 1]));
        (0..n).map(|j| base.pow(j as i64)).collect()
    });
    let combos = (2..12i64).map(move |k| (0..n).map(|j| RatFunc::from_i64(k.pow(j as u32) + j as i64)).collect());
    units.chain(ones).chain(powers).chain(combos)
}

fn sigma_row(row: &[RatFunc], delta: usize, m: &Matrix<RatFunc>) -> Vec<RatFunc> {
    let shifted: Vec<RatFunc> = row.iter().map(|c| c.shift(delta as i64)).collect();
    (0..m.cols())
        .map(|j| (0..m.rows()).fold(RatFunc::zero(), |acc, i| acc.add(&shifted[i].mul(m.get(i, j)))))
        .collect()
}

/// Scalarizes σ^δ(Y) = M·Y by a cyclic vector chosen from a fixed
/// deterministic schedule.
pub fn cyclic_vector_scalarize(m: &Matrix<RatFunc>, delta: usize) -> Result<CyclicReduction> {
    let n = m.rows();
    if m.det().is_zero() {
        return Err(Error::Domain("cyclic vector of a singular matrix".into()));
    }
    for w0 in candidates(n) {
        let mut rows = vec![w0];
        for _ in 1..n {
            let next = sigma_row(rows.last().expect("nonempty"), delta, m);
            rows.push(next);
        }
        let gauge = Matrix::from_rows(rows.clone());
        if gauge.det().is_zero() {
            continue;
        }
        let wn = sigma_row(&rows[n - 1], delta, m);
        let beta = gauge.transpose().solve(&wn).expect("the gauge is invertible");
        let mut coeffs: Vec<RatFunc> = beta.iter().map(|b| b.neg()).collect();
        coeffs.push(RatFunc::one());
        let operator = ScalarOperator::from_ratfuncs(delta, &coeffs)?;
        return Ok(CyclicReduction { operator, gauge });
    }
    Err(Error::Internal("no cyclic vector in the candidate schedule".into()))
}
