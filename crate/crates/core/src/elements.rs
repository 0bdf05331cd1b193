//! σ^δ-hypergeometric elements of k[Y, 1/det Y]/I_irr represented by
//! polynomials of bounded degree.

use std::fmt;

use crate::difference::{det_poly, DifferenceSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Monomial, MultiPoly, PolyIdeal};
use crate::hyper::system_hyper_solutions;
use crate::linalg::Matrix;
use crate::scalar::RatFunc;

/// P with σ^δ(P) − b·P ∈ I_irr and P invertible modulo I_irr.
#[derive(Clone, Debug)]
pub struct HyperElement {
    pub p: MultiPoly<RatFunc>,
    pub b: RatFunc,
    pub delta: usize,
}

impl HyperElement {
    /// Checks σ^δ(P) − b·P ∈ I.
    pub fn verify(&self, ideal: &PolyIdeal<RatFunc>, sys: &DifferenceSystem) -> bool {
        ideal.contains(&sys.sigma_poly(&self.p, self.delta).sub(&self.p.scale(&self.b)))
    }
}

impl fmt::Display for HyperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.b)
    }
}

/// The matrix of σ^δ on the span of `basis` modulo I: column i holds the
/// coordinates of the normal form of σ^δ(m_i).
pub fn sigma_delta_matrix(
    basis: &[Monomial],
    ideal: &PolyIdeal<RatFunc>,
    sys: &DifferenceSystem,
    delta: usize,
) -> Result<Matrix<RatFunc>> {
    let ring = ideal.ring();
    let k = basis.len();
    let mut out = Matrix::zeros(k, k);
    for (i, m) in basis.iter().enumerate() {
        let image = ideal.normal_form(&sys.sigma_poly(&MultiPoly::term(ring, m.clone(), RatFunc::one()), delta));
        for (t, c) in image.terms() {
            let Some(row) = basis.iter().position(|b| b == t) else {
                return Err(Error::SliceNotStable {
                    delta,
                    detail: format!("σ^{delta}({}) has the term {}", ring.monomial_text(m), ring.monomial_text(t)),
                });
            };
            out.set(row, i, c.clone());
        }
    }
    Ok(out)
}

/// Pairwise non-similar hypergeometric elements of degree ≤ d, excluding
/// the constants, each scaled to leading coefficient 1.
pub fn hyper_elements(
    ideal: &PolyIdeal<RatFunc>,
    sys: &DifferenceSystem,
    delta: usize,
    d: u32,
) -> Result<Vec<HyperElement>> {
    let ring = ideal.ring();
    let basis = ideal.standard_monomials(d);
    let a = sigma_delta_matrix(&basis, ideal, sys, delta)?;
    let ainv = a.inverse().ok_or_else(|| Error::Internal("σ^δ is singular on the quotient slice".into()))?;
    let det = det_poly(sys.n(), ring);
    let mut out: Vec<HyperElement> = Vec::new();
    // σ^δ(P) = b·P for P = Σ c_j m_j reads A·σ^δ(c) = b·c, i.e. σ^δ(c)·(1/b) = A⁻¹·c.
    for sol in system_hyper_solutions(&ainv, delta)? {
        let terms: Vec<(Monomial, RatFunc)> =
            basis.iter().zip(sol.c()).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())).collect();
        let p = MultiPoly::from_terms(ring, terms);
        if p.is_constant() || !ideal.is_unit_mod(&p, &det) {
            continue;
        }
        let lc = p.lc().clone();
        let b = sol.certificate().r.inv().mul(&lc).div(&lc.shift(delta as i64));
        let el = HyperElement { p: p.scale(&lc.inv()), b, delta };
        if !el.verify(ideal, sys) {
            return Err(Error::Internal(format!("hypergeometric element {el} fails its certificate")));
        }
        out.push(el);
    }
    let order = ring.order();
    out.sort_by(|x, y| order.cmp(y.p.lm(), x.p.lm()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difference::y_ring;
    use crate::groebner::{parse_poly, TermOrder};

    fn sys(rows: &[&[&str]]) -> DifferenceSystem {
        DifferenceSystem::from_strings(
            &rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> PolyIdeal<RatFunc> {
        let r = y_ring(n, TermOrder::GrevLex);
        PolyIdeal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect())
    }

    fn pairs(els: &[HyperElement]) -> Vec<String> {
        els.iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn identity_system_on_diagonal_component() {
        let i = ideal(2, &["y12", "y21"]);
        let s = sys(&[&["1", "0"], &["0", "1"]]);
        let basis = i.standard_monomials(1);
        assert_eq!(sigma_delta_matrix(&basis, &i, &s, 1).unwrap(), Matrix::identity(3));
        assert_eq!(pairs(&hyper_elements(&i, &s, 1, 1).unwrap()), vec!["(y11, 1)", "(y22, 1)"]);
    }

    #[test]
    fn block_three_by_three_component() {
        let i = ideal(3, &["y11", "y13", "y22", "y23", "y31", "y32"]);
        let s = sys(&[&["0", "1", "0"], &["x", "0", "0"], &["0", "0", "1/x"]]);
        let els = hyper_elements(&i, &s, 2, 1).unwrap();
        assert_eq!(pairs(&els), vec!["(y12, x)", "(y21, x+1)", "(y33, 1/(x^2+x))"]);
    }

    #[test]
    fn cyclic_three_by_three_component() {
        let i = ideal(3, &["y11", "y12", "y22", "y23", "y31", "y33"]);
        let s = sys(&[&["0", "1", "0"], &["0", "0", "1"], &["x", "0", "0"]]);
        let basis = i.standard_monomials(1);
        let a = sigma_delta_matrix(&basis, &i, &s, 3).unwrap();
        assert!(a.is_diagonal());
        let els = hyper_elements(&i, &s, 3, 1).unwrap();
        // σ³(Y) = diag(x, x+1, x+2)·Y, so row i picks up the i-th factor.
        assert_eq!(pairs(&els), vec!["(y13, x)", "(y21, x+1)", "(y32, x+2)"]);
    }
}
