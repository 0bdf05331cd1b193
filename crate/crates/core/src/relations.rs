//! The ideal of algebraic relations of bounded degree satisfied by a
//! fundamental matrix, computed from the germ of a sequence solution.

use crate::difference::{exterior_power_matrix, monomial_annihilator, monomial_transition, y_ring, DifferenceSystem, GermSequence, ScalarOperator};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Monomial, MultiPoly, PolyIdeal, TermOrder};
use crate::linalg::Matrix;
use crate::hyper::system_hyper_solutions;
use crate::scalar::{integer_roots, int, RatFunc, Rational, UniPoly};

/// Parameters of a relations computation.
#[derive(Clone, Debug)]
pub struct RelationsRequest {
    /// Total degree bound d in the matrix entries.
    pub degree: u32,
    /// Degree bound ℓ in x of the coefficients.
    pub coeff_degree: u32,
    /// Start of the germ; defaults to the least admissible index.
    pub rho: Option<i64>,
    /// Initial germ term; defaults to the identity.
    pub z_rho: Option<Matrix<Rational>>,
    pub order: TermOrder,
}

impl RelationsRequest {
    pub fn new(degree: u32, coeff_degree: u32) -> Self {
        RelationsRequest { degree, coeff_degree, rho: None, z_rho: None, order: TermOrder::GrevLex }
    }
}

/// The relations ideal together with the data that produced it.
#[derive(Clone, Debug)]
pub struct RelationsIdeal {
    pub ideal: PolyIdeal<RatFunc>,
    pub operator: ScalarOperator,
    pub rho: i64,
    pub kappa: i64,
    pub germ: GermSequence,
}

/// Z^m for a monomial m in the entries of Z (row-major variables).
pub fn monomial_at(m: &Monomial, z: &Matrix<Rational>) -> Rational {
    let n = z.rows();
    let mut acc = int(1);
    for (v, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            acc = acc.mul(z.get(v / n, v % n));
        }
    }
    acc
}

/// Generators of the ideal of polynomials P(x, Y) with total Y-degree ≤ d and
/// x-degree ≤ ℓ vanishing at the fundamental matrix.
pub fn relations_ideal(sys: &DifferenceSystem, req: &RelationsRequest) -> Result<RelationsIdeal> {
    if req.degree == 0 {
        return Err(Error::Domain("the relation degree must be at least 1".into()));
    }
    let min_rho = sys.choose_rho()?;
    let rho = match req.rho {
        Some(r) if r < min_rho => {
            return Err(Error::Domain(format!("rho = {r} is below the admissible start {min_rho}")));
        }
        Some(r) => r,
        None => min_rho,
    };
    let ring = y_ring(sys.n(), req.order);
    let monos = ring.monomials_up_to(req.degree);
    let ell = req.coeff_degree;
    let op = monomial_annihilator(sys, req.degree, ell)?;
    let mut kappa = rho + 1;
    for r in integer_roots(op.leading())?.into_iter().chain(integer_roots(op.trailing())?) {
        kappa = kappa.max(r + 1);
    }
    let l = op.order();
    let germ = sys.germ_terms(rho, (kappa - rho) as usize + l, req.z_rho.as_ref())?;
    // Column j(ℓ+1)+s holds x^s·Y^{m_j}.
    let width = monos.len() * (ell as usize + 1);
    let mut rows = Vec::with_capacity(l);
    for i in kappa..kappa + l as i64 {
        let z = germ.at(i);
        let mut row = Vec::with_capacity(width);
        for m in &monos {
            let base = monomial_at(m, z);
            let mut p = base;
            for _ in 0..=ell {
                row.push(p.clone());
                p = p.mul(&int(i));
            }
        }
        rows.push(row);
    }
    let kernel = if rows.is_empty() {
        (0..width).map(|k| (0..width).map(|c| if c == k { int(1) } else { int(0) }).collect()).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let gens: Vec<MultiPoly<RatFunc>> = kernel
        .iter()
        .map(|c| {
            let terms = monos
                .iter()
                .enumerate()
                .filter_map(|(j, m)| {
                    let coeffs = c[j * (ell as usize + 1)..(j + 1) * (ell as usize + 1)].to_vec();
                    let p = UniPoly::from_coeffs(coeffs);
                    (!p.is_zero()).then(|| (m.clone(), RatFunc::from_poly(p)))
                })
                .collect();
            MultiPoly::from_terms(&ring, terms)
        })
        .collect();
    log::debug!("relations: {} monomials, operator order {l}, kappa {kappa}, {} kernel vectors", monos.len(), gens.len());
    let ideal = PolyIdeal::new(&ring, gens).reduced();
    Ok(RelationsIdeal { ideal, operator: op, rho, kappa, germ })
}

/// Largest exterior power of the monomial transition matrix searched by
/// [`coefficient_bound`].
pub const MAX_EXTERIOR_DIM: usize = 64;

/// A bound ℓ on the x-degree of relation coefficients at degree d: twice the
/// largest numerator or denominator degree among hypergeometric solutions of
/// the exterior powers of the monomial transition system.
pub fn coefficient_bound(sys: &DifferenceSystem, degree: u32) -> Result<u32> {
    if sys.matrix().to_rows().iter().flatten().all(|a| a.is_constant()) {
        return Ok(0);
    }
    let ring = y_ring(sys.n(), TermOrder::GrevLex);
    let monos = ring.monomials_up_to(degree);
    let k = monos.len();
    let mut t = Matrix::zeros(k, k);
    for (j, row) in monomial_transition(sys, &monos).into_iter().enumerate() {
        for (c, v) in row {
            t.set(j, c, v);
        }
    }
    let mut max_deg = 0;
    for r in 1..=k {
        let dim = binomial(k, r);
        if dim > MAX_EXTERIOR_DIM {
            log::warn!("coefficient bound: exterior power {r} of a {k}-dimensional system has dimension {dim}");
            return Err(Error::CostLimit(format!(
                "the coefficient bound needs exterior powers of dimension {dim} > {MAX_EXTERIOR_DIM}; pass the coefficient degree explicitly"
            )));
        }
        for sol in system_hyper_solutions(&exterior_power_matrix(&t, r), 1)? {
            for c in sol.c() {
                max_deg = max_deg.max(c.numer().degree().unwrap_or(0)).max(c.denom().degree().unwrap_or(0));
            }
        }
    }
    Ok(2 * max_deg as u32)
}

fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}


#[cfg(test)]
mod example_tests {
    use super::*;
    use crate::groebner::parse_poly;

    fn sys(rows: &[&[&str]]) -> DifferenceSystem {
        DifferenceSystem::from_strings(
            &rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn cyclic_three_by_three() {
        let s = sys(&[&["0", "1", "0"], &["0", "0", "1"], &["x", "0", "0"]]);
        let rel = relations_ideal(&s, &RelationsRequest::new(2, 0)).unwrap();
        let lines = rel.ideal.canonical_lines();
        assert_eq!(lines.len(), 27, "{lines:?}");
        assert!(rel.ideal.groebner().iter().all(|g| g.len() == 1 && g.total_degree() == 2));
    }

    #[test]
    fn block_three_by_three() {
        let s = sys(&[&["0", "1", "0"], &["x", "0", "0"], &["0", "0", "1/x"]]);
        let rel = relations_ideal(&s, &RelationsRequest::new(2, 0)).unwrap();
        let r = rel.ideal.ring();
        let expected = PolyIdeal::new(
            r,
            ["y32", "y31", "y23", "y21*y22", "y13", "y12*y22", "y11*y21", "y11*y12"]
                .iter()
                .map(|g| parse_poly(r, g).unwrap())
                .collect(),
        );
        assert!(rel.ideal.equals(&expected), "{}", rel.ideal.canonical_text());
    }
}
