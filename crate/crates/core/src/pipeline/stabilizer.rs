//! stab(I) = {g ∈ GL_n : P(Y·g) ∈ I for all P ∈ I} as an ideal in ℚ[g].

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{groebner_basis, Monomial, MultiPoly, PolyIdeal, PolyRing, TermOrder};
use crate::linalg::Matrix;
use crate::scalar::{int, rat, rational_roots, RatFunc, Rational, UniPoly};
use crate::structure::{associated_primes, PrimeComponent};

/// Names `g11 … gnn`, or `g_i_j` once n ≥ 10.
pub fn g_names(n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            names.push(if n < 10 { format!("g{i}{j}") } else { format!("g_{i}_{j}") });
        }
    }
    names
}

/// det(g) in a ring whose variables are the g_ij in row-major order.
pub fn det_of_vars<C: Field>(n: usize, ring: &Arc<PolyRing>) -> MultiPoly<C> {
    fn go<C: Field>(ring: &Arc<PolyRing>, n: usize, rows: &[usize], cols: &[usize]) -> MultiPoly<C> {
        if rows.len() == 1 {
            return MultiPoly::var(ring, rows[0] * n + cols[0]);
        }
        let mut acc = MultiPoly::zero(ring);
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = MultiPoly::var(ring, rows[0] * n + c).mul(&go(ring, n, &rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..n).collect();
    go(ring, n, &idx, &idx)
}

#[derive(Clone, Debug)]
pub struct Stabilizer {
    pub n: usize,
    /// Defining equations in ℚ[g], saturated by det(g).
    pub ideal: PolyIdeal<Rational>,
    /// Irreducible components meeting GL_n.
    pub components: Vec<PrimeComponent<Rational>>,
}

impl Stabilizer {
    pub fn contains_point(&self, g: &Matrix<Rational>) -> bool {
        !g.det().is_zero() && self.ideal.groebner().iter().all(|p| p.eval(&flatten(g)).is_zero())
    }
}

fn flatten(g: &Matrix<Rational>) -> Vec<Rational> {
    (0..g.rows()).flat_map(|i| (0..g.cols()).map(move |j| (i, j))).map(|(i, j)| g.get(i, j).clone()).collect()
}

/// The stabilizer of `ideal` (an ideal of ℚ(x)[Y]) inside GL_n.
pub fn stabilizer(ideal: &PolyIdeal<RatFunc>, n: usize) -> Result<Stabilizer> {
    let nn = n * n;
    let y_mask: u64 = (1u64 << nn) - 1;
    let g_refs: Vec<String> = g_names(n);
    let g_strs: Vec<&str> = g_refs.iter().map(String::as_str).collect();
    let big = ideal.ring().extended(&g_strs, TermOrder::Elim { mask: y_mask });
    let g_ring = PolyRing::new(g_refs.clone(), TermOrder::GrevLex);
    let gb = groebner_basis(&ideal.groebner().iter().map(|p| p.embed_prefix(&big)).collect::<Vec<_>>());
    // (Y·g)_ij = Σ_k y_ik g_kj.
    let mut images: Vec<MultiPoly<RatFunc>> = Vec::with_capacity(big.nvars());
    for i in 0..n {
        for j in 0..n {
            let mut img = MultiPoly::zero(&big);
            for k in 0..n {
                img = img.add(&MultiPoly::var(&big, i * n + k).mul(&MultiPoly::var(&big, nn + k * n + j)));
            }
            images.push(img);
        }
    }
    for v in nn..big.nvars() {
        images.push(MultiPoly::var(&big, v));
    }
    let mut eqs: Vec<MultiPoly<Rational>> = Vec::new();
    for p in ideal.groebner() {
        let moved = p.embed_prefix(&big).substitute(&big, &images);
        let rem = crate::groebner::reduce(&moved, &gb);
        for (_, coeff) in rem.split_by_mask(y_mask) {
            eqs.extend(split_x_powers(&coeff, &g_ring, nn));
        }
    }
    let det = det_of_vars::<Rational>(n, &g_ring);
    let stab = PolyIdeal::new(&g_ring, eqs).saturate(&det).reduced();
    let components = associated_primes(&stab, Some(&det))?;
    Ok(Stabilizer { n, ideal: stab, components })
}

fn letter(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("t{}", k - 25)
    }
}

/// A component as a matrix pattern: entries fixed by a generator g_ij − c
/// print as c, the others as letters a, b, … in row-major order, followed
/// by the remaining equations in those letters.
pub fn describe_component(component: &PolyIdeal<Rational>, n: usize) -> String {
    let gb = component.reduced();
    let gens = gb.generators();
    let mut fixed: Vec<Option<Rational>> = vec![None; n * n];
    let mut rest: Vec<&MultiPoly<Rational>> = Vec::new();
    for g in gens {
        let (m, c) = &g.terms()[0];
        if g.total_degree() == 1 && m.degree() == 1 && g.len() <= 2 {
            let v = m.exps().iter().position(|&e| e == 1).expect("a variable");
            let value = if g.len() == 1 { Rational::zero() } else { g.terms()[1].1.neg().div(c) };
            fixed[v] = Some(value);
        } else {
            rest.push(g);
        }
    }
    let mut names = Vec::with_capacity(n * n);
    let mut next = 0;
    for f in &fixed {
        names.push(match f {
            Some(v) => v.to_string(),
            None => {
                next += 1;
                letter(next - 1)
            }
        });
    }
    let rows: Vec<String> = (0..n).map(|i| format!("[{}]", names[i * n..(i + 1) * n].join(", "))).collect();
    let lettered = PolyRing::new(names, TermOrder::GrevLex);
    let eqs: Vec<String> = rest
        .iter()
        .map(|g| {
            let konst = g.terms().iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.neg());
            let body = MultiPoly::from_terms(
                &lettered,
                g.terms().iter().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone())).collect(),
            );
            format!("{body} = {}", konst.unwrap_or_else(Rational::zero))
        })
        .collect();
    let matrix = format!("[{}]", rows.join(", "));
    if eqs.is_empty() {
        matrix
    } else {
        format!("{matrix} with {}", eqs.join(", "))
    }
}

/// Splits a polynomial in g with ℚ(x) coefficients into the ℚ-polynomials
/// multiplying each power of x after clearing denominators.
fn split_x_powers(p: &MultiPoly<RatFunc>, g_ring: &Arc<PolyRing>, offset: usize) -> Vec<MultiPoly<Rational>> {
    let den = p.terms().iter().fold(UniPoly::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut by_power: Vec<Vec<(Monomial, Rational)>> = Vec::new();
    for (m, c) in p.terms() {
        let num = c.numer().mul(&den.exact_div(c.denom()));
        let mono = Monomial::from_exps(&m.exps()[offset..]);
        for (s, q) in num.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if by_power.len() <= s {
                by_power.resize(s + 1, Vec::new());
            }
            by_power[s].push((mono.clone(), q.clone()));
        }
    }
    by_power.into_iter().filter(|t| !t.is_empty()).map(|t| MultiPoly::from_terms(g_ring, t)).collect()
}

/// A random rational point of a prime component, by back-substitution
/// through a lex Gröbner basis; `None` if a coordinate has no rational
/// solution on this attempt.
fn try_point(lex_gb: &[MultiPoly<Rational>], nvars: usize, rng: &mut ChaCha8Rng) -> Result<Option<Vec<Rational>>> {
    let mut point: Vec<Option<Rational>> = vec![None; nvars];
    for v in (0..nvars).rev() {
        let lower: u64 = if v + 1 >= 64 { 0 } else { !((1u64 << (v + 1)) - 1) };
        let here: Vec<&MultiPoly<Rational>> =
            lex_gb.iter().filter(|g| g.support() >> v & 1 == 1 && g.support() & !(lower | 1 << v) == 0).collect();
        let value = if here.is_empty() {
            let mut r = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            while r.is_zero() {
                r = rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            }
            r
        } else {
            let mut found = None;
            for g in here {
                let mut coeffs: Vec<Rational> = Vec::new();
                for (m, c) in g.terms() {
                    let mut t = c.clone();
                    for (i, &e) in m.exps().iter().enumerate() {
                        if i != v {
                            for _ in 0..e {
                                t = t.mul(point[i].as_ref().expect("later coordinates are set"));
                            }
                        }
                    }
                    let e = m.exp(v) as usize;
                    if coeffs.len() <= e {
                        coeffs.resize(e + 1, int(0));
                    }
                    coeffs[e] = coeffs[e].add(&t);
                }
                let u = UniPoly::from_coeffs(coeffs);
                if u.is_zero() {
                    continue;
                }
                if u.is_constant() {
                    return Ok(None);
                }
                let roots = rational_roots(&u)?;
                if roots.is_empty() {
                    return Ok(None);
                }
                found = Some(roots[rng.gen_range(0..roots.len())].clone());
                break;
            }
            match found {
                Some(r) => r,
                None => rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
            }
        };
        point[v] = Some(value);
    }
    let point: Vec<Rational> = point.into_iter().map(|p| p.expect("all coordinates set")).collect();
    Ok(lex_gb.iter().all(|g| g.eval(&point).is_zero()).then_some(point))
}

/// Up to `count` random invertible points on the given component.
pub fn sample_points(
    component: &PolyIdeal<Rational>,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Matrix<Rational>>> {
    let lex = component.with_order(TermOrder::Lex);
    let gb = lex.groebner().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err(Error::Internal(format!("could not sample invertible points on {component}")));
        }
        if let Some(p) = try_point(&gb, n * n, &mut rng)? {
            let m = Matrix::from_rows((0..n).map(|i| p[i * n..(i + 1) * n].to_vec()).collect());
            if !m.det().is_zero() {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Results of the group-axiom and ideal-fixing checks at sampled points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupCheck {
    pub points: usize,
    pub failures: Vec<String>,
}

impl GroupCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether P(Y·g) ∈ I for every generator P, at a numeric g.
pub fn fixes_ideal(ideal: &PolyIdeal<RatFunc>, g: &Matrix<Rational>) -> bool {
    let ring = ideal.ring();
    let gm = g.map(|q| RatFunc::constant(q.clone()));
    let n = g.rows();
    let mut images: Vec<MultiPoly<RatFunc>> = Vec::with_capacity(ring.nvars());
    for i in 0..n {
        for j in 0..n {
            let mut img = MultiPoly::zero(ring);
            for k in 0..n {
                img = img.add(&MultiPoly::var(ring, i * n + k).scale(gm.get(k, j)));
            }
            images.push(img);
        }
    }
    for v in n * n..ring.nvars() {
        images.push(MultiPoly::var(ring, v));
    }
    ideal.groebner().iter().all(|p| ideal.contains(&p.substitute(ring, &images)))
}

/// Samples points from every component (at least `per_run` in total) and
/// checks closure under products and inverses, and that each point fixes
/// `fixed` when given.
pub fn check_group(
    stab: &Stabilizer,
    fixed: Option<&PolyIdeal<RatFunc>>,
    per_run: usize,
    seed: u64,
) -> Result<GroupCheck> {
    let k = stab.components.len().max(1);
    let each = per_run.div_ceil(k);
    let mut pts = Vec::new();
    for (i, c) in stab.components.iter().enumerate() {
        pts.extend(sample_points(&c.ideal, stab.n, each, seed.wrapping_add(i as u64))?);
    }
    let mut check = GroupCheck { points: pts.len(), failures: Vec::new() };
    for (i, g) in pts.iter().enumerate() {
        if !stab.contains_point(g) {
            check.failures.push(format!("sample {g} is not on the stabilizer"));
        }
        let inv = g.inverse().expect("sampled points are invertible");
        if !stab.contains_point(&inv) {
            check.failures.push(format!("inverse of {g} leaves the stabilizer"));
        }
        let h = &pts[(i + 1) % pts.len()];
        if !stab.contains_point(&g.mul(h)) {
            check.failures.push(format!("product {g}·{h} leaves the stabilizer"));
        }
        if let Some(ideal) = fixed {
            if !fixes_ideal(ideal, g) {
                check.failures.push(format!("{g} does not fix the ideal"));
            }
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::difference::y_ring;
    use crate::groebner::parse_poly;

    fn ideal(n: usize, gens: &[&str]) -> PolyIdeal<RatFunc> {
        let r = y_ring(n, TermOrder::GrevLex);
        PolyIdeal::new(&r, gens.iter().map(|g| parse_poly(&r, g).unwrap()).collect())
    }

    #[test]
    fn identity_point_has_trivial_stabilizer() {
        let s = stabilizer(&ideal(2, &["y11 - 1", "y12", "y21", "y22 - 1"]), 2).unwrap();
        assert_eq!(s.ideal.to_string(), "<g22 - 1, g21, g12, g11 - 1>");
        assert_eq!(s.components.len(), 1);
    }

    #[test]
    fn sign_ideal_gives_order_two() {
        let s = stabilizer(&ideal(1, &["y11^2 - 1"]), 1).unwrap();
        assert_eq!(s.ideal.to_string(), "<g11^2 - 1>");
        assert_eq!(s.components.len(), 2);
        let chk = check_group(&s, Some(&ideal(1, &["y11^2 - 1"])), 20, 7).unwrap();
        assert!(chk.passed(), "{:?}", chk.failures);
    }

    #[test]
    fn zero_ideal_gives_everything() {
        let s = stabilizer(&PolyIdeal::zero(&y_ring(1, TermOrder::GrevLex)), 1).unwrap();
        assert!(s.ideal.is_zero());
    }

    #[test]
    fn diagonal_torus_with_product_one() {
        let i = ideal(2, &["y12", "y21", "y11*y22 - 1"]);
        let s = stabilizer(&i, 2).unwrap();
        assert_eq!(s.components.len(), 1);
        let chk = check_group(&s, Some(&i), 20, 3).unwrap();
        assert_eq!(chk.points, 20);
        assert!(chk.passed(), "{:?}", chk.failures);
        assert_eq!(describe_component(&s.components[0].ideal, 2), "[[a, 0], [0, b]] with a*b = 1");
    }

    #[test]
    fn identity_component_description() {
        let s = stabilizer(&ideal(2, &["y11 - 1", "y12", "y21", "y22 - 1"]), 2).unwrap();
        assert_eq!(describe_component(&s.components[0].ideal, 2), "[[1, 0], [0, 1]]");
    }
}
