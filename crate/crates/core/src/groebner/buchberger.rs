//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy (smallest lcm first).

use std::cmp::Ordering;

use super::monomial::{Monomial, TermOrder};
use super::poly::MultiPoly;
use crate::field::Field;

/// Full reduction of `p` by `basis` (any order of the basis elements).
pub fn reduce<C: Field>(p: &MultiPoly<C>, basis: &[MultiPoly<C>]) -> MultiPoly<C> {
    if p.is_zero() || basis.is_empty() {
        return p.clone();
    }
    let leads: Vec<(u64, &Monomial)> = basis.iter().map(|g| (g.lm().support(), g.lm())).collect();
    let ring = p.ring().clone();
    let mut done: Vec<(Monomial, C)> = Vec::new();
    let mut rest = p.clone();
    while !rest.is_zero() {
        let (m, c) = &rest.terms()[0];
        let sup = m.support();
        let hit = leads.iter().position(|(s, lm)| s & !sup == 0 && lm.divides(m));
        match hit {
            Some(k) => {
                let g = &basis[k];
                let q = g.lm().quotient_of(m);
                let coef = c.div(g.lc());
                rest = rest.sub_scaled(&coef, &q, g);
            }
            None => {
                let mut terms = rest.into_terms();
                let first = terms.remove(0);
                done.push(first);
                rest = MultiPoly::from_sorted_terms(&ring, terms);
            }
        }
    }
    MultiPoly::from_sorted_terms(&ring, done)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn pair_cmp(order: TermOrder, a: &Pair, b: &Pair) -> Ordering {
    a.lcm
        .degree()
        .cmp(&b.lcm.degree())
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

struct State<C> {
    polys: Vec<MultiPoly<C>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<C: Field> State<C> {
    fn basis(&self) -> Vec<MultiPoly<C>> {
        self.active.iter().map(|&k| self.polys[k].clone()).collect()
    }

    fn update(&mut self, h: MultiPoly<C>) {
        let hi = self.polys.len();
        let lm_h = h.lm().clone();
        self.polys.push(h);

        let cands: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lm_h.lcm(self.polys[g].lm()))).collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = lm_h.is_coprime(self.polys[*g].lm());
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone(), coprime));
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && lm_h.lcm(polys[p.i].lm()) != p.lcm
                && lm_h.lcm(polys[p.j].lm()) != p.lcm)
        });
        for (g, l, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: hi, lcm: l });
            }
        }
        self.active.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.active.push(hi);
    }
}

fn spoly<C: Field>(f: &MultiPoly<C>, g: &MultiPoly<C>, lcm: &Monomial) -> MultiPoly<C> {
    let a = f.mul_term(&f.lm().quotient_of(lcm), &f.lc().inv());
    let b = g.mul_term(&g.lm().quotient_of(lcm), &g.lc().inv());
    a.sub(&b)
}

/// The reduced Gröbner basis of `gens` under the order of their ring,
/// sorted ascending by leading monomial, every element monic.
pub fn groebner_basis<C: Field>(gens: &[MultiPoly<C>]) -> Vec<MultiPoly<C>> {
    let mut input: Vec<MultiPoly<C>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if input.is_empty() {
        return Vec::new();
    }
    let ring = input[0].ring().clone();
    let order = ring.order();
    if input.iter().any(|g| g.is_constant()) {
        return vec![MultiPoly::one(&ring)];
    }
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()).then(a.len().cmp(&b.len())));

    let mut st = State { polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in input {
        let h = reduce(&g, &st.basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![MultiPoly::one(&ring)];
        }
        st.update(h.monic());
    }

    while !st.pairs.is_empty() {
        let mut best = 0;
        for k in 1..st.pairs.len() {
            if pair_cmp(order, &st.pairs[k], &st.pairs[best]) == Ordering::Less {
                best = k;
            }
        }
        let p = st.pairs.swap_remove(best);
        let s = spoly(&st.polys[p.i], &st.polys[p.j], &p.lcm);
        let h = reduce(&s, &st.basis());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![MultiPoly::one(&ring)];
        }
        st.update(h.monic());
    }

    interreduce(st.basis())
}

/// Turns a Gröbner basis whose leading monomials are pairwise non-divisible
/// into the reduced basis.
pub fn interreduce<C: Field>(mut basis: Vec<MultiPoly<C>>) -> Vec<MultiPoly<C>> {
    let order = match basis.first() {
        Some(g) => g.ring().order(),
        None => return basis,
    };
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<MultiPoly<C>> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MultiPoly<C>> =
            minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, g)| g.clone()).collect();
        let g = &minimal[k];
        let lead = MultiPoly::term(g.ring(), g.lm().clone(), g.lc().clone());
        let tail = reduce(&g.sub(&lead), &others);
        out.push(lead.add(&tail).monic());
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::poly::{parse_poly, PolyRing};
    use crate::scalar::Rational;
    use std::sync::Arc;

    fn ring(names: &[&str], order: TermOrder) -> Arc<PolyRing> {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect(), order)
    }

    fn gb(r: &Arc<PolyRing>, gens: &[&str]) -> Vec<String> {
        let polys: Vec<MultiPoly<Rational>> = gens.iter().map(|g| parse_poly(r, g).unwrap()).collect();
        groebner_basis(&polys).iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn divisibility_collapses() {
        let r = ring(&["y1", "y2"], TermOrder::GrevLex);
        assert_eq!(gb(&r, &["y1", "y1*y2"]), vec!["y1"]);
    }

    #[test]
    fn membership_collapses() {
        let r = ring(&["y"], TermOrder::GrevLex);
        assert_eq!(gb(&r, &["y^2-1", "y-1"]), vec!["y - 1"]);
    }

    #[test]
    fn linear_system() {
        let r = ring(&["y1", "y2"], TermOrder::GrevLex);
        assert_eq!(gb(&r, &["y1+y2", "y1-y2"]), vec!["y2", "y1"]);
    }

    #[test]
    fn cyclic_three_lex() {
        let r = ring(&["a", "b", "c"], TermOrder::Lex);
        let basis = gb(&r, &["a+b+c", "a*b+b*c+c*a", "a*b*c-1"]);
        assert_eq!(basis, vec!["c^3 - 1", "b^2 + b*c + c^2", "a + b + c"]);
    }

    #[test]
    fn inconsistent_system() {
        let r = ring(&["y1", "y2"], TermOrder::GrevLex);
        assert_eq!(gb(&r, &["y1*y2-1", "y1"]), vec!["1"]);
    }
}
