//! Minimal primes of ideals in the splitting class, σ^δ-periods and
//! certified radicals of binomial torsor ideals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::difference::DifferenceSystem;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Monomial, MultiPoly, PolyIdeal};
use crate::lattice::{hermite_normal_form, integer_kernel};
use crate::scalar::{factor, RatFunc, UniPoly};

/// Why a component is known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PrimeClass {
    /// Generated by variables.
    Monomial,
    /// Generated by linear forms.
    Linear,
    /// Variables plus binomials of a saturated lattice, saturated by the
    /// remaining variables.
    BinomialLattice,
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeClass::Monomial => "monomial",
            PrimeClass::Linear => "linear",
            PrimeClass::BinomialLattice => "binomial-lattice",
        })
    }
}

#[derive(Clone, Debug)]
pub struct PrimeComponent<C> {
    pub ideal: PolyIdeal<C>,
    pub class: PrimeClass,
}

/// Generators listed from the largest leading monomial down; components
/// and ideals are ordered by this list.
pub fn component_key<C: Field>(ideal: &PolyIdeal<C>) -> Vec<String> {
    let mut lines = ideal.canonical_lines();
    lines.reverse();
    lines
}

/// Upper limit on branches explored while splitting.
pub const MAX_SPLIT_BRANCHES: usize = 20_000;

fn divide_by_monomial<C: Field>(p: &MultiPoly<C>, m: &Monomial) -> MultiPoly<C> {
    MultiPoly::from_terms(p.ring(), p.terms().iter().map(|(t, c)| (m.quotient_of(t), c.clone())).collect())
}

/// Ways to replace one generator by smaller ideals whose intersection has
/// the same radical, or `None` if no generator splits.
fn split_step<C: Field>(gb: &[MultiPoly<C>]) -> Result<Option<Vec<MultiPoly<C>>>> {
    for g in gb {
        let ring = g.ring();
        let n = ring.nvars();
        let content = g.terms().iter().skip(1).fold(g.lm().clone(), |acc, (m, _)| acc.gcd(m));
        if g.len() == 1 {
            let vars: Vec<usize> = (0..n).filter(|&i| content.exp(i) > 0).collect();
            if vars.len() > 1 || content.degree() > 1 {
                return Ok(Some(vars.into_iter().map(|i| MultiPoly::var(ring, i)).collect()));
            }
            continue;
        }
        if !content.is_one() {
            let mut out: Vec<MultiPoly<C>> =
                (0..n).filter(|&i| content.exp(i) > 0).map(|i| MultiPoly::var(ring, i)).collect();
            out.push(divide_by_monomial(g, &content));
            return Ok(Some(out));
        }
        if let Some(parts) = split_power_binomial(g)? {
            return Ok(Some(parts));
        }
        // A polynomial in one variable with constant coefficients.
        let supp = g.support();
        if supp.count_ones() == 1 {
            let v = supp.trailing_zeros() as usize;
            let Some(coeffs) = g
                .terms()
                .iter()
                .map(|(m, c)| c.as_rational().map(|q| (m.exp(v) as usize, q)))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let deg = coeffs.iter().map(|(e, _)| *e).max().unwrap_or(0);
            let mut dense = vec![crate::scalar::int(0); deg + 1];
            for (e, q) in coeffs {
                dense[e] = q;
            }
            let fac = factor(&UniPoly::from_coeffs(dense))?;
            if fac.factors.len() > 1 || fac.factors.iter().any(|(_, e)| *e > 1) {
                let back = |p: &UniPoly| {
                    let terms = p
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(e, q)| {
                            let mut exps = vec![0u16; n];
                            exps[v] = e as u16;
                            (Monomial::from_exps(&exps), C::from_rational(q))
                        })
                        .collect();
                    MultiPoly::from_terms(ring, terms)
                };
                return Ok(Some(fac.factors.iter().map(|(p, _)| back(p)).collect()));
            }
        }
    }
    Ok(None)
}

/// Factors c₁·N₁^k + c₂·N₂^k with k > 1 and rational coefficients through
/// t^k + c₂/c₁ at t = N₁/N₂, homogenized back.
fn split_power_binomial<C: Field>(g: &MultiPoly<C>) -> Result<Option<Vec<MultiPoly<C>>>> {
    if g.len() != 2 {
        return Ok(None);
    }
    let (m1, c1) = &g.terms()[0];
    let (m2, c2) = &g.terms()[1];
    let (Some(q1), Some(q2)) = (c1.as_rational(), c2.as_rational()) else {
        return Ok(None);
    };
    let k = m1.exps().iter().chain(m2.exps()).fold(0u16, |acc, &e| num_integer::Integer::gcd(&acc, &e));
    if k < 2 {
        return Ok(None);
    }
    let root = |m: &Monomial| Monomial::from_exps(&m.exps().iter().map(|e| e / k).collect::<Vec<_>>());
    let (n1, n2) = (root(m1), root(m2));
    let mut dense = vec![crate::scalar::int(0); k as usize + 1];
    dense[0] = q2.div(&q1);
    dense[k as usize] = crate::scalar::int(1);
    let fac = factor(&UniPoly::from_coeffs(dense))?;
    if fac.factors.len() < 2 && fac.factors.iter().all(|(_, e)| *e == 1) {
        return Ok(None);
    }
    let power = |m: &Monomial, e: usize| (0..e).fold(Monomial::one(m.nvars()), |acc, _| acc.mul(m));
    let back = |p: &UniPoly| {
        let deg = p.coeffs().len() - 1;
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(e, q)| (power(&n1, e).mul(&power(&n2, deg - e)), C::from_rational(q)))
            .collect();
        MultiPoly::from_terms(g.ring(), terms)
    };
    Ok(Some(fac.factors.iter().map(|(p, _)| back(p)).collect()))
}

/// Whether the ℤ-span of `rows` equals its saturation.
fn lattice_saturated(rows: &[Vec<BigInt>], cols: usize) -> bool {
    let spanned = hermite_normal_form(rows);
    let perp = integer_kernel(&spanned, cols);
    let saturation = integer_kernel(&perp, cols);
    spanned == saturation
}

/// Certifies a non-unit ideal none of whose generators split.
fn certify<C: Field>(ideal: &PolyIdeal<C>) -> Option<PrimeClass> {
    let gb = ideal.groebner();
    let ring = ideal.ring();
    let n = ring.nvars();
    let is_var = |g: &MultiPoly<C>| g.len() == 1 && g.total_degree() == 1;
    let rest: Vec<&MultiPoly<C>> = gb.iter().filter(|g| !is_var(g)).collect();
    if rest.is_empty() {
        return Some(PrimeClass::Monomial);
    }
    if rest.iter().all(|g| g.total_degree() == 1) {
        return Some(PrimeClass::Linear);
    }
    if !rest.iter().all(|g| g.len() == 2) {
        return None;
    }
    let killed: u64 = gb.iter().filter(|g| is_var(g)).fold(0, |m, g| m | g.support());
    let free: Vec<usize> = (0..n).filter(|&i| killed >> i & 1 == 0).collect();
    let rows: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|g| {
            let (a, b) = (&g.terms()[0].0, &g.terms()[1].0);
            free.iter().map(|&i| BigInt::from(a.exp(i) as i64 - b.exp(i) as i64)).collect()
        })
        .collect();
    if !lattice_saturated(&rows, free.len()) {
        return None;
    }
    let prod = free.iter().fold(MultiPoly::one(ring), |acc, &i| acc.mul(&MultiPoly::var(ring, i)));
    ideal.saturate(&prod).equals(ideal).then_some(PrimeClass::BinomialLattice)
}

/// Minimal primes of `ideal` by recursive factor splitting, discarding
/// primes that contain `det` when given. Sorted by [`component_key`].
pub fn associated_primes<C: Field>(
    ideal: &PolyIdeal<C>,
    det: Option<&MultiPoly<C>>,
) -> Result<Vec<PrimeComponent<C>>> {
    let ring = ideal.ring().clone();
    let mut work = vec![ideal.reduced()];
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let mut leaves: Vec<PrimeComponent<C>> = Vec::new();
    let mut branches = 0usize;
    while let Some(cur) = work.pop() {
        branches += 1;
        if branches > MAX_SPLIT_BRANCHES {
            return Err(Error::CostLimit(format!("more than {MAX_SPLIT_BRANCHES} branches splitting an ideal")));
        }
        if cur.is_unit() || det.is_some_and(|d| cur.contains(d)) {
            continue;
        }
        if !seen.insert(cur.canonical_lines()) {
            continue;
        }
        match split_step(cur.groebner())? {
            Some(parts) => {
                for p in parts {
                    work.push(PolyIdeal::new(&ring, [cur.generators().to_vec(), vec![p]].concat()).reduced());
                }
            }
            None => match certify(&cur) {
                Some(class) => leaves.push(PrimeComponent { ideal: cur, class }),
                None => {
                    return Err(Error::DecompositionUnsupported(format!(
                        "component {} is outside the monomial, linear and binomial-lattice classes",
                        cur
                    )))
                }
            },
        }
    }
    // Keep the minimal ones.
    let mut out: Vec<PrimeComponent<C>> = Vec::new();
    for (i, p) in leaves.iter().enumerate() {
        let dominated = leaves.iter().enumerate().any(|(j, q)| {
            j != i && p.ideal.contains_ideal(&q.ideal) && (!q.ideal.contains_ideal(&p.ideal) || j < i)
        });
        if !dominated {
            out.push(p.clone());
        }
    }
    out.sort_by_cached_key(|p| component_key(&p.ideal));
    Ok(out)
}

/// The least δ ≥ 1 with σ^δ(I) ⊆ I, searching up to `bound`.
pub fn sigma_period(ideal: &PolyIdeal<RatFunc>, sys: &DifferenceSystem, bound: usize) -> Result<usize> {
    let mut cur = ideal.clone();
    for delta in 1..=bound.max(1) {
        cur = sys.sigma_image_ideal(&cur, 1);
        if ideal.contains_ideal(&cur) {
            return Ok(delta);
        }
    }
    Err(Error::Internal(format!("no σ-period up to {bound} for {ideal}")))
}

/// √𝒫 in k[Y, 1/det Y] for 𝒫 = I_irr + binomials in the hypergeometric
/// elements `p`, returned as an ideal of k[Y].
///
/// With an empty lattice 𝒫 = I_irr is already prime. Otherwise I_irr must be
/// generated by variables and every element must be a single variable; the
/// elements and det are units modulo I_irr, so saturating by them does not
/// change 𝒫 in the localized ring, and the saturation is variables plus a
/// lattice ideal with nonzero coefficients, which is radical in
/// characteristic 0. The result is checked to be σ^δ-stable with a zero in
/// GL_n.
pub fn radical_binomial(
    p_ideal: &PolyIdeal<RatFunc>,
    irr: &PolyIdeal<RatFunc>,
    elements: &[MultiPoly<RatFunc>],
    lattice_is_zero: bool,
    sys: &DifferenceSystem,
    delta: usize,
    det: &MultiPoly<RatFunc>,
) -> Result<PolyIdeal<RatFunc>> {
    let radical = if lattice_is_zero {
        p_ideal.reduced()
    } else {
        let is_var = |g: &MultiPoly<RatFunc>| g.len() == 1 && g.total_degree() == 1;
        if !irr.groebner().iter().all(is_var) {
            return Err(Error::RadicalUnsupported(format!("{irr} is not generated by variables")));
        }
        if let Some(p) = elements.iter().find(|p| !(is_var(p) && p.lc().is_one())) {
            return Err(Error::RadicalUnsupported(format!("the hypergeometric element {p} is not a variable")));
        }
        let units = elements.iter().fold(det.clone(), |acc, p| acc.mul(p));
        p_ideal.saturate(&units).reduced()
    };
    if radical.is_unit() || radical.meets_no_invertible_point(det) {
        return Err(Error::RadicalUnsupported(format!("{radical} has no invertible zero")));
    }
    for g in radical.generators() {
        if !radical.contains(&sys.sigma_poly(g, delta)) {
            return Err(Error::RadicalUnsupported(format!("σ^{delta}({g}) leaves the ideal")));
        }
    }
    Ok(radical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difference::{det_poly, y_ring};
    use crate::groebner::{parse_poly, PolyRing, TermOrder};
    use crate::scalar::Rational;
    use std::sync::Arc;

    fn ideal<C: Field + crate::scalar::parse::ExprAlgebra>(r: &Arc<PolyRing>, gens: &[&str]) -> PolyIdeal<C> {
        PolyIdeal::new(r, gens.iter().map(|g| parse_poly(r, g).unwrap()).collect())
    }

    fn texts<C: Field>(ps: &[PrimeComponent<C>]) -> Vec<String> {
        ps.iter().map(|p| p.ideal.to_string()).collect()
    }

    #[test]
    fn product_of_two_variables() {
        let r = PolyRing::new(vec!["a".into(), "b".into()], TermOrder::GrevLex);
        let ps = associated_primes(&ideal::<Rational>(&r, &["a*b"]), None).unwrap();
        assert_eq!(texts(&ps), vec!["<a>", "<b>"]);
    }

    #[test]
    fn univariate_split_and_embedded_branch() {
        let r = PolyRing::new(vec!["a".into(), "b".into()], TermOrder::GrevLex);
        let ps = associated_primes(&ideal::<Rational>(&r, &["a^2-1", "a*b-b"]), None).unwrap();
        assert_eq!(texts(&ps), vec!["<b, a + 1>", "<a - 1>"]);
        assert!(ps.iter().all(|p| p.class == PrimeClass::Linear));
    }

    #[test]
    fn binomial_of_squares_splits() {
        let r = y_ring(2, TermOrder::GrevLex);
        let i: PolyIdeal<RatFunc> = ideal(&r, &["y12", "y21", "y11^2 - y22^2"]);
        let ps = associated_primes(&i, None).unwrap();
        assert_eq!(texts(&ps), vec!["<y21, y12, y11 + y22>", "<y21, y12, y11 - y22>"]);
    }

    #[test]
    fn binomial_torus_component() {
        let r = PolyRing::new(vec!["a".into(), "b".into(), "c".into()], TermOrder::GrevLex);
        let ps = associated_primes(&ideal::<Rational>(&r, &["a*b*c - 1"]), None).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].class, PrimeClass::BinomialLattice);
    }

    #[test]
    fn unsaturated_lattice_is_rejected() {
        let r = PolyRing::new(vec!["a".into()], TermOrder::GrevLex);
        let err = associated_primes(&ideal::<Rational>(&r, &["a^2+1"]), None).unwrap_err();
        assert!(err.is_unsupported_class());
    }

    #[test]
    fn determinant_filter_drops_singular_primes() {
        let r = y_ring(2, TermOrder::GrevLex);
        let det = det_poly(2, &r);
        let i: PolyIdeal<RatFunc> = ideal(&r, &["y11*y12", "y21*y22", "y11*y21", "y12*y22"]);
        let ps = associated_primes(&i, Some(&det)).unwrap();
        assert_eq!(texts(&ps), vec!["<y22, y11>", "<y21, y12>"]);
    }

    #[test]
    fn period_of_swapped_rows() {
        let s = DifferenceSystem::from_strings(&[vec!["0".into(), "1".into()], vec!["1".into(), "0".into()]]).unwrap();
        let r = y_ring(2, TermOrder::GrevLex);
        let i: PolyIdeal<RatFunc> = ideal(&r, &["y12", "y21"]);
        assert_eq!(sigma_period(&i, &s, 4).unwrap(), 2);
        let both: PolyIdeal<RatFunc> = ideal(&r, &["y12*y11", "y21*y22", "y12*y22", "y11*y21"]);
        assert_eq!(sigma_period(&both, &s, 4).unwrap(), 1);
    }
}
