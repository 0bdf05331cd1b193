use std::fmt;
use std::sync::{Arc, OnceLock};

use super::buchberger::{groebner_basis, reduce};
use super::monomial::{Monomial, TermOrder};
use super::poly::{MultiPoly, PolyRing};
use crate::field::Field;

/// A finitely generated ideal with a lazily computed, cached reduced
/// Gröbner basis under the order of its ring.
#[derive(Clone, Debug)]
pub struct PolyIdeal<C> {
    ring: Arc<PolyRing>,
    gens: Vec<MultiPoly<C>>,
    gb: OnceLock<Vec<MultiPoly<C>>>,
}

impl<C: Field> PolyIdeal<C> {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<MultiPoly<C>>) -> Self {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| if Arc::ptr_eq(g.ring(), ring) { g } else { g.with_ring(ring) })
            .collect();
        PolyIdeal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![MultiPoly::one(ring)])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed on first use.
    pub fn groebner(&self) -> &[MultiPoly<C>] {
        self.gb.get_or_init(|| groebner_basis(&self.gens))
    }

    /// Replaces the generators by the reduced Gröbner basis.
    pub fn reduced(&self) -> Self {
        let gb = self.groebner().to_vec();
        let out = PolyIdeal { ring: self.ring.clone(), gens: gb.clone(), gb: OnceLock::new() };
        let _ = out.gb.set(gb);
        out
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        if self.ring.order() == order {
            return self.clone();
        }
        Self::new(&self.ring.with_order(order), self.gens.clone())
    }

    pub fn normal_form(&self, p: &MultiPoly<C>) -> MultiPoly<C> {
        let p = if Arc::ptr_eq(p.ring(), &self.ring) { p.clone() } else { p.with_ring(&self.ring) };
        reduce(&p, self.groebner())
    }

    pub fn contains(&self, p: &MultiPoly<C>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &PolyIdeal<C>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality of ideals by mutual membership of generators.
    pub fn equals(&self, other: &PolyIdeal<C>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn sum(&self, other: &PolyIdeal<C>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn add_generators(&self, extra: Vec<MultiPoly<C>>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Self::new(&self.ring, gens)
    }

    /// I ∩ J via t·I + (1−t)·J and elimination of t.
    pub fn intersect(&self, other: &PolyIdeal<C>) -> Self {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let big = self.ring.extended(&["_t"], TermOrder::Elim { mask: 1 << n });
        let t = MultiPoly::var(&big, n);
        let one_minus_t = MultiPoly::one(&big).sub(&t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.embed_prefix(&big)));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.embed_prefix(&big)));
        }
        let kept: Vec<MultiPoly<C>> = groebner_basis(&gens)
            .iter()
            .filter_map(|g| g.restrict_prefix(&self.ring))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// I ∩ k[remaining variables], returned as an ideal of the same ring.
    pub fn eliminate(&self, vars: &[&str]) -> Self {
        let mask = self.ring.mask_of(vars);
        if mask == 0 {
            return self.clone();
        }
        let elim_ring = self.ring.with_order(TermOrder::Elim { mask });
        let gens: Vec<MultiPoly<C>> = self.gens.iter().map(|g| g.with_ring(&elim_ring)).collect();
        let kept: Vec<MultiPoly<C>> =
            groebner_basis(&gens).into_iter().filter(|g| g.support() & mask == 0).collect();
        Self::new(&self.ring, kept)
    }

    /// Whether `p` is invertible in k[Y, 1/det]/I, i.e. 1 ∈ ⟨I, p, det·z − 1⟩.
    pub fn is_unit_mod(&self, p: &MultiPoly<C>, det: &MultiPoly<C>) -> bool {
        if let Some(c) = p.as_constant() {
            return !c.is_zero() || self.meets_no_invertible_point(det);
        }
        let n = self.ring.nvars();
        let big = self.ring.extended(&["_z"], TermOrder::GrevLex);
        let z = MultiPoly::var(&big, n);
        let mut gens: Vec<MultiPoly<C>> = self.groebner().iter().map(|g| g.embed_prefix(&big)).collect();
        gens.push(p.with_ring(&self.ring).embed_prefix(&big));
        gens.push(det.with_ring(&self.ring).embed_prefix(&big).mul(&z).sub(&MultiPoly::one(&big)));
        let gb = groebner_basis(&gens);
        gb.len() == 1 && gb[0].is_constant()
    }

    /// Whether I has no zero with det ≠ 0, i.e. I becomes the unit ideal
    /// after localizing at det.
    pub fn meets_no_invertible_point(&self, det: &MultiPoly<C>) -> bool {
        let n = self.ring.nvars();
        let big = self.ring.extended(&["_z"], TermOrder::GrevLex);
        let z = MultiPoly::var(&big, n);
        let mut gens: Vec<MultiPoly<C>> = self.groebner().iter().map(|g| g.embed_prefix(&big)).collect();
        gens.push(det.with_ring(&self.ring).embed_prefix(&big).mul(&z).sub(&MultiPoly::one(&big)));
        let gb = groebner_basis(&gens);
        gb.len() == 1 && gb[0].is_constant()
    }

    /// Saturation I : f^∞, computed as (I + ⟨f·z − 1⟩) ∩ k[Y].
    pub fn saturate(&self, f: &MultiPoly<C>) -> Self {
        let n = self.ring.nvars();
        let big = self.ring.extended(&["_z"], TermOrder::Elim { mask: 1 << n });
        let z = MultiPoly::var(&big, n);
        let mut gens: Vec<MultiPoly<C>> = self.gens.iter().map(|g| g.embed_prefix(&big)).collect();
        gens.push(f.with_ring(&self.ring).embed_prefix(&big).mul(&z).sub(&MultiPoly::one(&big)));
        let kept: Vec<MultiPoly<C>> = groebner_basis(&gens)
            .iter()
            .filter_map(|g| g.restrict_prefix(&self.ring))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// Monomials of degree ≤ d outside the leading-term ideal, ascending by
    /// degree and descending in the ring order within a degree.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let leads: Vec<Monomial> = self.groebner().iter().map(|g| g.lm().clone()).collect();
        self.ring
            .monomials_up_to(d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// Reduced basis printed one generator per line, ascending by leading monomial.
    pub fn canonical_text(&self) -> String {
        self.canonical_lines().join("\n")
    }

    pub fn canonical_lines(&self) -> Vec<String> {
        self.groebner().iter().map(|g| g.to_string()).collect()
    }

    /// Moves the ideal into a ring whose first variables are this ring's.
    pub fn embed_prefix(&self, ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, self.gens.iter().map(|g| g.embed_prefix(ring)).collect())
    }
}

impl<C: Field> fmt::Display for PolyIdeal<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.canonical_lines().join(", "))
    }
}
