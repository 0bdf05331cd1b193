use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;

use super::operator::{integer_primitive, ScalarOperator};
use super::system::{y_ring, DifferenceSystem};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Monomial, MultiPoly, TermOrder};
use crate::scalar::modp::{self, crt, rational_reconstruct, Zp};
use crate::scalar::{RatFunc, UniPoly};

type SparseRow = Vec<(usize, RatFunc)>;

/// Transition matrix of the monomials: σ(m_j) = Σ_k T[j][k]·m_k with
/// the coefficients of A left unshifted, so that U(m+1) = T(m)·U(m).
pub fn monomial_transition(sys: &DifferenceSystem, monos: &[Monomial]) -> Vec<SparseRow> {
    let ring = y_ring(sys.n(), TermOrder::GrevLex);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let images = sys.substitution_images(&ring, sys.matrix());
    monos
        .iter()
        .map(|m| {
            let img = MultiPoly::term(&ring, m.clone(), RatFunc::one()).substitute(&ring, &images);
            let mut row: SparseRow = img
                .terms()
                .iter()
                .map(|(mm, c)| (*index.get(mm).expect("substitution preserves degree"), c.clone()))
                .collect();
            row.sort_by_key(|(k, _)| *k);
            row
        })
        .collect()
}

/// Incremental detection of the first linear dependence among pushed
/// vectors mod p, keeping an echelon basis whose pivot is each vector's
/// least key.
struct Dependence {
    zp: Zp,
    basis: BTreeMap<usize, (BTreeMap<usize, u64>, Vec<u64>)>,
    pushed: usize,
}

impl Dependence {
    fn new(zp: Zp) -> Self {
        Dependence { zp, basis: BTreeMap::new(), pushed: 0 }
    }

    /// Returns the coefficients (c_0 … c_k) of a relation Σ c_i v_i = 0 with
    /// c_k = 1 once the k-th vector is dependent on the earlier ones.
    fn push(&mut self, mut r: BTreeMap<usize, u64>) -> Option<Vec<u64>> {
        let zp = self.zp;
        let k = self.pushed;
        self.pushed += 1;
        let mut comb = vec![0u64; k + 1];
        comb[k] = 1;
        let mut cursor = 0usize;
        loop {
            let next = r.range(cursor..).map(|(p, _)| *p).find(|p| self.basis.contains_key(p));
            let Some(p) = next else { break };
            let f = r[&p];
            let (b, bc) = &self.basis[&p];
            for (key, val) in b {
                let nv = zp.sub(r.get(key).copied().unwrap_or(0), zp.mul(f, *val));
                if nv == 0 {
                    r.remove(key);
                } else {
                    r.insert(*key, nv);
                }
            }
            for (i, c) in bc.iter().enumerate() {
                comb[i] = zp.sub(comb[i], zp.mul(f, *c));
            }
            cursor = p + 1;
        }
        let Some((&p, &lead)) = r.iter().next() else {
            return Some(comb);
        };
        let inv = zp.inv(lead);
        let r = r.into_iter().map(|(key, val)| (key, zp.mul(val, inv))).collect();
        let comb = comb.iter().map(|c| zp.mul(*c, inv)).collect();
        self.basis.insert(p, (r, comb));
        None
    }
}

fn sparse_mul<C: Clone>(
    left: &[Vec<(usize, C)>],
    right: &[Vec<(usize, C)>],
    add: impl Fn(&C, &C) -> C,
    mul: impl Fn(&C, &C) -> C,
    is_zero: impl Fn(&C) -> bool,
) -> Vec<Vec<(usize, C)>> {
    left.iter()
        .map(|row| {
            let mut acc: BTreeMap<usize, C> = BTreeMap::new();
            for (k, a) in row {
                for (l, b) in &right[*k] {
                    let term = mul(a, b);
                    let e = match acc.get(l) {
                        Some(old) => add(old, &term),
                        None => term,
                    };
                    acc.insert(*l, e);
                }
            }
            acc.into_iter().filter(|(_, v)| !is_zero(v)).collect()
        })
        .collect()
}

/// The transition matrix reduced mod p as (numerator, denominator) pairs.
struct ModTransition {
    zp: Zp,
    rows: Vec<Vec<(usize, Vec<u64>, Vec<u64>)>>,
}

impl ModTransition {
    fn new(trans: &[SparseRow], zp: Zp) -> Option<ModTransition> {
        let rows = trans
            .iter()
            .map(|row| row.iter().map(|(k, c)| Some((*k, zp.poly(c.numer())?, zp.poly(c.denom())?))).collect())
            .collect::<Option<Vec<Vec<_>>>>()?;
        Some(ModTransition { zp, rows })
    }

    /// The flattened weighted matrices ((a+t)^s·Φ_t(a))_s for t = 0..=order,
    /// or `None` when a + t is a pole for some t < order.
    fn vectors_at(&self, a: u64, order: usize, ell: u32) -> Option<Vec<BTreeMap<usize, u64>>> {
        let zp = self.zp;
        let size = self.rows.len();
        let mut phi: Vec<Vec<(usize, u64)>> = (0..size).map(|j| vec![(j, 1)]).collect();
        let mut out = Vec::with_capacity(order + 1);
        for t in 0..=order as u64 {
            let at = zp.add(a, t);
            let mut v = BTreeMap::new();
            let mut factor = 1u64;
            for s in 0..=ell as usize {
                for (j, row) in phi.iter().enumerate() {
                    for (l, val) in row {
                        v.insert(s * size * size + j * size + l, zp.mul(*val, factor));
                    }
                }
                factor = zp.mul(factor, at);
            }
            out.push(v);
            if t == order as u64 {
                break;
            }
            let mut dens = Vec::new();
            for row in &self.rows {
                for (_, _, den) in row {
                    let d = zp.eval(den, at);
                    if d == 0 {
                        return None;
                    }
                    dens.push(d);
                }
            }
            let invs = zp.batch_inv(&dens);
            let mut next = invs.iter();
            let step: Vec<Vec<(usize, u64)>> = self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(k, num, _)| (*k, zp.mul(zp.eval(num, at), *next.next().expect("one inverse per entry"))))
                        .collect()
                })
                .collect();
            phi = sparse_mul(&step, &phi, |x, y| zp.add(*x, *y), |x, y| zp.mul(*x, *y), |x| *x == 0);
        }
        Some(out)
    }

    /// The first dependence at x = a, or `None` if a is unusable.
    fn dependence_at(&self, a: u64, max_order: usize, ell: u32) -> Option<Vec<u64>> {
        let mut dep = Dependence::new(self.zp);
        self.vectors_at(a, max_order, ell)?.into_iter().find_map(|v| dep.push(v))
    }

    /// The first dependence among the vectors mapped to `dim` pseudo-random
    /// linear forms. It agrees with the unprojected one unless the forms are
    /// degenerate on the span, which the exact check downstream detects.
    fn projected_dependence_at(&self, a: u64, order: usize, ell: u32, dim: usize) -> Option<Vec<u64>> {
        let zp = self.zp;
        let mut dep = Dependence::new(zp);
        self.vectors_at(a, order, ell)?.into_iter().find_map(|v| {
            let mut w = vec![0u64; dim];
            for (key, val) in &v {
                for (k, slot) in w.iter_mut().enumerate() {
                    let r = splitmix(((*key as u64) << 8) ^ k as u64) % zp.modulus();
                    *slot = zp.add(*slot, zp.mul(r, *val));
                }
            }
            dep.push(w.into_iter().enumerate().filter(|(_, x)| *x != 0).collect())
        })
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Residues of the coefficients of the polynomial operator, normalized so
/// that its leading coefficient is monic, mod a product of primes.
struct Accumulator {
    lengths: Vec<usize>,
    residues: Vec<BigInt>,
    modulus: BigInt,
}

impl Accumulator {
    fn new(polys: &[Vec<u64>], p: u64) -> Accumulator {
        Accumulator {
            lengths: polys.iter().map(Vec::len).collect(),
            residues: polys.iter().flatten().map(|&v| BigInt::from(v)).collect(),
            modulus: BigInt::from(p),
        }
    }

    fn absorb(&mut self, polys: &[Vec<u64>], p: u64) {
        let flat = polys.iter().flatten();
        self.residues = self.residues.iter().zip(flat).map(|(a, &b)| crt(a, &self.modulus, b, p)).collect();
        self.modulus *= BigInt::from(p);
    }

    fn rational(&self) -> Option<Vec<UniPoly>> {
        let mut vals = self.residues.iter().map(|a| rational_reconstruct(a, &self.modulus));
        self.lengths
            .iter()
            .map(|&len| Some(UniPoly::from_coeffs(vals.by_ref().take(len).collect::<Option<Vec<_>>>()?)))
            .collect()
    }
}

/// The dependence mod p as a polynomial operator: the coefficients c_t are
/// reconstructed from `points` good evaluation points (the last two held
/// out as a check) and multiplied by the lcm of their denominators.
/// `Err(Some(k))` reports a point with a larger dependence order k.
fn operator_mod(
    mt: &ModTransition,
    order: usize,
    bound: usize,
    ell: u32,
    points: usize,
    num_lengths: Option<&[usize]>,
) -> std::result::Result<(Vec<Vec<u64>>, Vec<usize>), Option<usize>> {
    let zp = mt.zp;
    let mut xs = Vec::with_capacity(points);
    let mut values: Vec<Vec<u64>> = Vec::with_capacity(points);
    let mut a = 1u64;
    while xs.len() < points {
        if let Some(c) = mt.projected_dependence_at(a, order, ell, order + 8) {
            if c.len() - 1 == order {
                xs.push(a);
                values.push(c);
            }
        } else if let Some(c) = mt.dependence_at(a, bound, ell) {
            if c.len() - 1 > order {
                return Err(Some(c.len() - 1));
            }
        }
        a += 1;
    }
    let fit = points - 2;
    let nodes = zp.node_polynomial(&xs[..fit]);
    let fractions = (0..=order)
        .map(|t| {
            let ys: Vec<u64> = values.iter().map(|c| c[t]).collect();
            let (num, den) = zp.reconstruct(&xs[..fit], &ys[..fit], &nodes, num_lengths.map(|ls| ls[t])).ok_or(None)?;
            let ok = (fit..points).all(|k| {
                let d = zp.eval(&den, xs[k]);
                d != 0 && zp.mul(zp.eval(&num, xs[k]), zp.inv(d)) == ys[k]
            });
            if ok {
                Ok((num, den))
            } else {
                Err(None)
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut lcm = vec![1u64];
    for (_, den) in &fractions {
        let g = zp.gcd_poly(&lcm, den);
        lcm = zp.mul_poly(&lcm, &zp.exact_div_poly(den, &g));
    }
    let polys = fractions.iter().map(|(num, den)| zp.mul_poly(num, &zp.exact_div_poly(&lcm, den))).collect();
    Ok((polys, fractions.iter().map(|(num, _)| num.len()).collect()))
}

/// A nonzero step-1 operator annihilating every sequence m^s·Z_m^{m_j} with
/// s ≤ ell and |m_j| ≤ d: the first ℚ(x)-linear dependence among the
/// matrices ((x+t)^s·Φ_t)_s with Φ_t = T(x+t−1)⋯T(x), denominators cleared.
///
/// The dependence is computed at integer points modulo word-size primes,
/// interpolated, lifted to ℚ[x] and then checked exactly.
pub fn monomial_annihilator(sys: &DifferenceSystem, d: u32, ell: u32) -> Result<ScalarOperator> {
    let ring = y_ring(sys.n(), TermOrder::GrevLex);
    let monos = ring.monomials_up_to(d);
    let size = monos.len();
    let trans = monomial_transition(sys, &monos);
    let bound = size * size * (ell as usize + 1);
    let mut primes = modp::primes().filter_map(|p| ModTransition::new(&trans, Zp::new(p)));
    let first = primes.next().expect("infinitely many primes");
    // The order over ℚ(x) is the largest order seen at a specialization.
    let mut order = 0usize;
    for a in [1_000_003u64, 2_000_029, 3_000_017] {
        if let Some(c) = first.dependence_at(a, bound, ell) {
            order = order.max(c.len() - 1);
        }
    }
    let mut used = 0usize;
    'restart: loop {
        let mut points = 16usize;
        let (first_polys, num_lengths) = loop {
            match operator_mod(&first, order, bound, ell, points, None) {
                Ok(found) => break found,
                Err(Some(larger)) => {
                    order = larger;
                    continue 'restart;
                }
                Err(None) => points *= 2,
            }
        };
        let mut acc = Accumulator::new(&first_polys, first.zp.modulus());
        let mut previous: Option<Vec<UniPoly>> = None;
        // Later primes need deg num + deg den + 1 points, plus the check.
        let points = first_polys.iter().map(Vec::len).max().unwrap_or(1) + num_lengths.iter().max().unwrap_or(&1) + 2;
        for mt in primes.by_ref() {
            used += 1;
            if used > MAX_PRIMES {
                return Err(Error::Internal("the annihilator did not lift to Q[x]".into()));
            }
            let polys = match operator_mod(&mt, order, bound, ell, points, Some(&num_lengths)) {
                Ok((polys, _)) => polys,
                Err(Some(larger)) => {
                    order = larger;
                    continue 'restart;
                }
                Err(None) => continue,
            };
            let lengths: Vec<usize> = polys.iter().map(Vec::len).collect();
            if lengths != acc.lengths {
                // Unlucky primes lose degree; keep the larger signature.
                if lengths.iter().sum::<usize>() > acc.lengths.iter().sum::<usize>() {
                    acc = Accumulator::new(&polys, mt.zp.modulus());
                    previous = None;
                }
                continue;
            }
            acc.absorb(&polys, mt.zp.modulus());
            let Some(candidate) = acc.rational() else { continue };
            if previous.as_ref() == Some(&candidate) {
                let coeffs = integer_primitive(&candidate);
                if verify(&trans, &coeffs, ell) {
                    log::debug!("monomial annihilator of order {order} over {size} monomials, {used} primes");
                    return ScalarOperator::new(1, coeffs);
                }
            }
            previous = Some(candidate);
        }
    }
}

const MAX_PRIMES: usize = 400;

/// Exact check of Σ_t P_t(x)·(x+t)^s·Φ_t = 0, entry by entry after clearing
/// the denominators of Φ.
fn verify(trans: &[SparseRow], coeffs: &[UniPoly], ell: u32) -> bool {
    let size = trans.len();
    let mut phi: Vec<SparseRow> = (0..size).map(|j| vec![(j, RatFunc::one())]).collect();
    let mut entries: BTreeMap<usize, Vec<(usize, UniPoly, UniPoly)>> = BTreeMap::new();
    for t in 0..coeffs.len() {
        let xt = UniPoly::from_i64s(&[t as i64, 1]);
        let mut weight = UniPoly::one();
        for s in 0..=ell as usize {
            for (j, row) in phi.iter().enumerate() {
                for (l, val) in row {
                    let key = s * size * size + j * size + l;
                    entries.entry(key).or_default().push((t, val.numer().mul(&weight), val.denom().clone()));
                }
            }
            weight = weight.mul(&xt);
        }
        if t + 1 < coeffs.len() {
            let shifted: Vec<SparseRow> =
                trans.iter().map(|row| row.iter().map(|(k, v)| (*k, v.shift(t as i64))).collect()).collect();
            phi = sparse_mul(&shifted, &phi, |a, b| a.add(b), |a, b| a.mul(b), |a| a.is_zero());
        }
    }
    let ints: Vec<Vec<BigInt>> = coeffs.iter().map(|c| c.coeffs().iter().map(|q| q.to_integer()).collect()).collect();
    entries.values().all(|terms| {
        let common = terms.iter().fold(UniPoly::one(), |acc, (_, _, den)| acc.lcm(den));
        let weights: Vec<(usize, UniPoly)> =
            terms.iter().map(|(t, num, den)| (*t, num.mul(&common.exact_div(den)))).collect();
        let scale = weights
            .iter()
            .flat_map(|(_, w)| w.coeffs().iter().map(|q| q.denom().clone()))
            .fold(<BigInt as num_traits::One>::one(), |acc, d| acc.lcm(&d));
        let mut total: Vec<BigInt> = Vec::new();
        for (t, w) in &weights {
            let p = &ints[*t];
            if p.is_empty() || w.is_zero() {
                continue;
            }
            if total.len() < p.len() + w.coeffs().len() - 1 {
                total.resize(p.len() + w.coeffs().len() - 1, <BigInt as num_traits::Zero>::zero());
            }
            for (i, q) in w.coeffs().iter().enumerate() {
                let wi = q.numer() * (&scale / q.denom());
                if num_traits::Zero::is_zero(&wi) {
                    continue;
                }
                for (k, pk) in p.iter().enumerate() {
                    total[i + k] += pk * &wi;
                }
            }
        }
        total.iter().all(num_traits::Zero::is_zero)
    })
}
