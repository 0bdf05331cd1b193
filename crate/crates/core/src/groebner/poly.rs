use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, TermOrder};
use crate::error::{Error, Result};
use crate::field::Field;

/// Variable names plus the active term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    names: Vec<String>,
    order: TermOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, order: TermOrder) -> Arc<PolyRing> {
        assert!(names.len() <= 64, "at most 64 variables are supported");
        Arc::new(PolyRing { names, order })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Arc<PolyRing> {
        PolyRing::new(self.names.clone(), order)
    }

    /// Same ring with extra variables appended.
    pub fn extended(&self, extra: &[&str], order: TermOrder) -> Arc<PolyRing> {
        let mut names = self.names.clone();
        names.extend(extra.iter().map(|s| s.to_string()));
        PolyRing::new(names, order)
    }

    /// Bitmask of the named variables.
    pub fn mask_of(&self, names: &[&str]) -> u64 {
        names.iter().filter_map(|n| self.index_of(n)).fold(0, |m, i| m | 1 << i)
    }

    pub fn monomial_text(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials of total degree at most `d`, ascending by degree and
    /// descending in the ring order within each degree.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        for deg in 0..=d {
            let mut layer = Vec::new();
            let mut exps = vec![0u16; n];
            compositions(&mut exps, 0, deg as u16, &mut layer);
            layer.sort_by(|a, b| self.order.cmp(b, a));
            out.extend(layer);
        }
        out
    }
}

fn compositions(exps: &mut Vec<u16>, i: usize, left: u16, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Monomial::from_exps(exps));
        exps[i] = 0;
        return;
    }
    if exps.is_empty() {
        if left == 0 {
            out.push(Monomial::from_exps(&[]));
        }
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        compositions(exps, i + 1, left - e, out);
    }
    exps[i] = 0;
}

/// Sparse polynomial with terms sorted strictly descending in the ring order.
#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, C)>,
}

impl<C: Field> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Field> Eq for MultiPoly<C> {}

impl<C: Field> MultiPoly<C> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        MultiPoly { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        MultiPoly { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), i), C::one())] }
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        MultiPoly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, C)>) -> Self {
        let mut map: HashMap<Monomial, C> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Wraps terms already sorted descending with no zero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, C)>) -> Self {
        MultiPoly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &C {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Union of variable supports.
    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn coeff_of(&self, m: &Monomial) -> C {
        let order = self.ring.order();
        match self.terms.binary_search_by(|(t, _)| order.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    fn same_ring(&self, other: &Self) {
        debug_assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    /// `self - c * m * other`, the reduction step.
    pub fn sub_scaled(&self, c: &C, m: &Monomial, other: &Self) -> Self {
        let shifted = other.mul_term(m, &c.neg());
        self.merge(&shifted, false)
    }

    pub fn neg(&self) -> Self {
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), if c.is_one() { a.clone() } else { a.mul(c) })).collect();
        MultiPoly { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                all.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::from_terms(&self.ring, all)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Same polynomial in a ring with the same variables but another order.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Self {
        debug_assert_eq!(ring.nvars(), self.ring.nvars());
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly { ring: ring.clone(), terms }
    }

    /// Re-embeds into `ring`, sending variable `i` to `map[i]`.
    pub fn embed(&self, ring: &Arc<PolyRing>, map: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(ring.nvars(), map), c.clone())).collect();
        Self::from_terms(ring, terms)
    }

    /// Embeds into a ring whose first variables coincide with this ring's.
    pub fn embed_prefix(&self, ring: &Arc<PolyRing>) -> Self {
        let map: Vec<usize> = (0..self.ring.nvars()).collect();
        self.embed(ring, &map)
    }

    /// Restricts to a ring whose variables are the first ones of this ring;
    /// fails if a dropped variable occurs.
    pub fn restrict_prefix(&self, ring: &Arc<PolyRing>) -> Option<Self> {
        let k = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exps()[k..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::from_exps(&m.exps()[..k]), c.clone()));
        }
        Some(Self::from_terms(ring, terms))
    }

    pub fn map_coeffs<D: Field>(&self, ring: &Arc<PolyRing>, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        MultiPoly::from_terms(ring, terms)
    }

    /// Substitutes `images[i]` (polynomials in `target`) for variable `i`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[MultiPoly<C>]) -> MultiPoly<C> {
        let mut cache: HashMap<(usize, u16), MultiPoly<C>> = HashMap::new();
        let mut acc: Vec<(Monomial, C)> = Vec::new();
        for (m, c) in &self.terms {
            let mut prod = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32)).clone();
                prod = prod.mul(&p);
            }
            acc.extend(prod.terms);
        }
        MultiPoly::from_terms(target, acc)
    }

    /// Evaluates at a point given by one field value per variable.
    pub fn eval(&self, point: &[C]) -> C {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&point[i]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Collects terms by their monomial in the variables of `mask`:
    /// returns `(masked monomial, remaining polynomial)` pairs.
    pub fn split_by_mask(&self, mask: u64) -> Vec<(Monomial, MultiPoly<C>)> {
        let n = self.ring.nvars();
        let mut groups: HashMap<Monomial, Vec<(Monomial, C)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut head = vec![0u16; n];
            let mut tail = vec![0u16; n];
            for (i, &e) in m.exps().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    head[i] = e;
                } else {
                    tail[i] = e;
                }
            }
            groups.entry(Monomial::from_exps(&head)).or_default().push((Monomial::from_exps(&tail), c.clone()));
        }
        let order = self.ring.order();
        let mut out: Vec<(Monomial, MultiPoly<C>)> =
            groups.into_iter().map(|(k, v)| (k, MultiPoly::from_terms(&self.ring, v))).collect();
        out.sort_by(|a, b| order.cmp(&b.0, &a.0));
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let a = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.ring.monomial_text(m);
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else if a.needs_parens() {
                out.push_str(&format!("({a})*{mono}"));
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl<C: Field> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses a polynomial over a coefficient field that can itself be parsed
/// from the same grammar (the coefficient variable, if any, is `x`).
pub fn parse_poly<C: Field + crate::scalar::parse::ExprAlgebra>(
    ring: &Arc<PolyRing>,
    text: &str,
) -> Result<MultiPoly<C>> {
    let expr = crate::scalar::parse::parse_expr(text)?;
    let value: PolyExpr<C> = expr.eval_with(&|name| {
        if let Some(i) = ring.index_of(name) {
            Ok(PolyExpr(MultiPoly::var(ring, i)))
        } else {
            C::var(name).map(|c| PolyExpr(MultiPoly::constant(ring, c)))
        }
    }, &|v| PolyExpr(MultiPoly::constant(ring, C::from_int(v))))?;
    Ok(value.0)
}

struct PolyExpr<C>(MultiPoly<C>);

impl<C: Field + crate::scalar::parse::ExprAlgebra> crate::scalar::parse::ExprAlgebra for PolyExpr<C> {
    fn from_int(_: &num_bigint::BigInt) -> Self {
        unreachable!("integers are lifted through the coefficient field")
    }
    fn var(_: &str) -> Result<Self> {
        unreachable!("variables are resolved by the caller")
    }
    fn add(&self, other: &Self) -> Self {
        PolyExpr(self.0.add(&other.0))
    }
    fn sub(&self, other: &Self) -> Self {
        PolyExpr(self.0.sub(&other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        PolyExpr(self.0.mul(&other.0))
    }
    fn neg(&self) -> Self {
        PolyExpr(self.0.neg())
    }
    fn div(&self, other: &Self) -> Result<Self> {
        match other.0.as_constant() {
            Some(c) if !c.is_zero() => Ok(PolyExpr(self.0.scale(&c.inv()))),
            _ => Err(Error::Parse(format!("cannot divide by {}", other.0))),
        }
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(PolyExpr(self.0.pow(e as u32)));
        }
        match self.0.as_constant() {
            Some(c) if !c.is_zero() => Ok(PolyExpr(MultiPoly::constant(self.0.ring(), c.inv()).pow((-e) as u32))),
            _ => Err(Error::Parse(format!("negative power of {}", self.0))),
        }
    }
}
