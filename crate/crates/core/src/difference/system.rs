use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{MultiPoly, PolyIdeal, PolyRing, TermOrder};
use crate::linalg::Matrix;
use crate::scalar::{integer_roots, RatFunc, Rational};

/// Names of the matrix variables: `y11 … ynn`, or `y_i_j` once n ≥ 10.
pub fn y_names(n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            names.push(if n < 10 { format!("y{i}{j}") } else { format!("y_{i}_{j}") });
        }
    }
    names
}

/// The ring Q(x)[y11, …, ynn] with the given order.
pub fn y_ring(n: usize, order: TermOrder) -> Arc<PolyRing> {
    PolyRing::new(y_names(n), order)
}

/// det(Y) as a polynomial in the first n² variables of `ring`.
pub fn det_poly(n: usize, ring: &Arc<PolyRing>) -> MultiPoly<RatFunc> {
    let y: Vec<Vec<MultiPoly<RatFunc>>> =
        (0..n).map(|i| (0..n).map(|j| MultiPoly::var(ring, i * n + j)).collect()).collect();
    laplace_det(&y)
}

fn laplace_det(m: &[Vec<MultiPoly<RatFunc>>]) -> MultiPoly<RatFunc> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(m[0][0].ring());
    for j in 0..n {
        let minor: Vec<Vec<MultiPoly<RatFunc>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = m[0][j].mul(&laplace_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// σ(Y) = A·Y with A ∈ GL_n(Q(x)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSystem {
    a: Matrix<RatFunc>,
    det: RatFunc,
}

/// The solution germ Z_ρ, Z_{ρ+1}, … with Z_{i+1} = A(i)·Z_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermSequence {
    pub rho: i64,
    pub terms: Vec<Matrix<Rational>>,
}

impl GermSequence {
    /// Z_i for an absolute index i.
    pub fn at(&self, i: i64) -> &Matrix<Rational> {
        &self.terms[(i - self.rho) as usize]
    }
}

impl DifferenceSystem {
    pub fn new(a: Matrix<RatFunc>) -> Result<DifferenceSystem> {
        if a.rows() != a.cols() || a.rows() == 0 {
            return Err(Error::Domain("the system matrix must be square and non-empty".into()));
        }
        let det = a.det();
        if det.is_zero() {
            return Err(Error::Domain("the system matrix is singular over Q(x)".into()));
        }
        Ok(DifferenceSystem { a, det })
    }

    /// Parses a row-major matrix of rational-function strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<DifferenceSystem> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<RatFunc>()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if parsed.iter().any(|r| r.len() != parsed.len()) {
            return Err(Error::Parse("the matrix must be square".into()));
        }
        DifferenceSystem::new(Matrix::from_rows(parsed))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.a
    }

    pub fn det(&self) -> &RatFunc {
        &self.det
    }

    /// A_δ = σ^{δ−1}(A) ⋯ σ(A)·A.
    pub fn a_delta(&self, delta: usize) -> Matrix<RatFunc> {
        let mut acc = self.a.clone();
        for k in 1..delta {
            acc = self.a.map(|c| c.shift(k as i64)).mul(&acc);
        }
        acc
    }

    /// The least ρ ≥ 0 with A(i) defined and invertible for every i ≥ ρ.
    pub fn choose_rho(&self) -> Result<i64> {
        let mut bad: Vec<i64> = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                bad.extend(integer_roots(self.a.get(i, j).denom())?);
            }
        }
        bad.extend(integer_roots(self.det.numer())?);
        Ok(bad.into_iter().filter(|&r| r >= 0).max().map_or(0, |r| r + 1))
    }

    pub fn eval_at(&self, i: i64) -> Result<Matrix<Rational>> {
        self.a.try_map(|c| c.eval_at_integer(i))
    }

    /// The first `count` germ terms starting at Z_ρ (identity by default).
    pub fn germ_terms(&self, rho: i64, count: usize, z_rho: Option<&Matrix<Rational>>) -> Result<GermSequence> {
        let n = self.n();
        let z0 = z_rho.cloned().unwrap_or_else(|| Matrix::identity(n));
        if z0.det().is_zero() {
            return Err(Error::Domain("the initial germ matrix must be invertible".into()));
        }
        let mut terms = Vec::with_capacity(count);
        if count > 0 {
            terms.push(z0);
        }
        for k in 1..count {
            let i = rho + k as i64 - 1;
            let a = self
                .eval_at(i)
                .map_err(|e| Error::Internal(format!("germ step at {i} below the admissible start: {e}")))?;
            let next = a.mul(&terms[k - 1]);
            if next.det().is_zero() {
                return Err(Error::Internal(format!("germ term {} is singular", i + 1)));
            }
            terms.push(next);
        }
        Ok(GermSequence { rho, terms })
    }

    /// σ^δ applied to a polynomial whose first n² variables are the y_ij:
    /// coefficients are shifted by δ and Y is replaced by A_δ·Y.
    pub fn sigma_poly(&self, p: &MultiPoly<RatFunc>, delta: usize) -> MultiPoly<RatFunc> {
        if delta == 0 {
            return p.clone();
        }
        let ring = p.ring().clone();
        let ad = self.a_delta(delta);
        let images = self.substitution_images(&ring, &ad);
        let shifted = p.map_coeffs(&ring, |c| c.shift(delta as i64));
        shifted.substitute(&ring, &images)
    }

    /// Images of the ring variables under Y → M·Y (other variables fixed).
    pub fn substitution_images(&self, ring: &Arc<PolyRing>, m: &Matrix<RatFunc>) -> Vec<MultiPoly<RatFunc>> {
        let n = self.n();
        let mut images = Vec::with_capacity(ring.nvars());
        for i in 0..n {
            for j in 0..n {
                let mut img = MultiPoly::zero(ring);
                for k in 0..n {
                    let c = m.get(i, k);
                    if !c.is_zero() {
                        img = img.add(&MultiPoly::var(ring, k * n + j).scale(c));
                    }
                }
                images.push(img);
            }
        }
        for v in n * n..ring.nvars() {
            images.push(MultiPoly::var(ring, v));
        }
        images
    }

    /// The ideal generated by σ^δ of each generator.
    pub fn sigma_image_ideal(&self, ideal: &PolyIdeal<RatFunc>, delta: usize) -> PolyIdeal<RatFunc> {
        let gens = ideal.generators().iter().map(|g| self.sigma_poly(g, delta)).collect();
        PolyIdeal::new(ideal.ring(), gens)
    }

    /// The r-th exterior power: entries are r×r minors, subsets in lex order.
    pub fn exterior_power(&self, r: usize) -> Result<DifferenceSystem> {
        DifferenceSystem::new(exterior_power_matrix(&self.a, r))
    }
}

/// r-subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

pub fn exterior_power_matrix<C: Field>(a: &Matrix<C>, r: usize) -> Matrix<C> {
    let subs = subsets(a.rows(), r);
    let mut out = Matrix::zeros(subs.len(), subs.len());
    for (p, rows) in subs.iter().enumerate() {
        for (q, cols) in subs.iter().enumerate() {
            let minor = Matrix::from_rows(
                rows.iter().map(|&i| cols.iter().map(|&j| a.get(i, j).clone()).collect()).collect(),
            );
            out.set(p, q, minor.det());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::parse_poly;
    use crate::scalar::int;

    fn sys(rows: &[&[&str]]) -> DifferenceSystem {
        DifferenceSystem::from_strings(
            &rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(sys(&[&["2", "1"], &["1", "1"]]).choose_rho().unwrap(), 0);
        assert!(sys(&[&["1/x"]]).choose_rho().unwrap() >= 1);
        assert_eq!(sys(&[&["0", "1"], &["x-3", "0"]]).choose_rho().unwrap(), 4);
    }

    #[test]
    fn fibonacci_germ() {
        let s = sys(&[&["0", "1"], &["1", "1"]]);
        let g = s.germ_terms(0, 4, None).unwrap();
        let fib = |a: i64, b: i64, c: i64, d: i64| Matrix::from_rows(vec![vec![int(a), int(b)], vec![int(c), int(d)]]);
        assert_eq!(g.terms[0], Matrix::identity(2));
        assert_eq!(g.terms[1], fib(0, 1, 1, 1));
        assert_eq!(g.terms[2], fib(1, 1, 1, 2));
        assert_eq!(g.terms[3], fib(1, 2, 2, 3));
    }

    #[test]
    fn sigma_of_fibonacci_entry() {
        let s = sys(&[&["0", "1"], &["1", "1"]]);
        let r = y_ring(2, TermOrder::GrevLex);
        let y11 = parse_poly::<RatFunc>(&r, "y11").unwrap();
        assert_eq!(s.sigma_poly(&y11, 1).to_string(), "y21");
        let one = MultiPoly::one(&r);
        assert_eq!(s.sigma_poly(&one, 3), one);
    }

    #[test]
    fn sigma_composes() {
        let s = sys(&[&["0", "1", "0"], &["0", "0", "1"], &["x", "0", "0"]]);
        let r = y_ring(3, TermOrder::GrevLex);
        let p = parse_poly::<RatFunc>(&r, "x*y13*y21 - y32^2 + 1/(x+1)").unwrap();
        let twice = s.sigma_poly(&s.sigma_poly(&p, 1), 2);
        assert_eq!(twice, s.sigma_poly(&p, 3));
    }

    #[test]
    fn exterior_power_extremes() {
        let s = sys(&[&["0", "1", "0"], &["x", "0", "0"], &["0", "0", "1/x"]]);
        assert_eq!(s.exterior_power(1).unwrap().matrix(), s.matrix());
        let top = s.exterior_power(3).unwrap();
        assert_eq!(top.matrix().get(0, 0), s.det());
        assert_eq!(s.exterior_power(2).unwrap().n(), 3);
    }

    #[test]
    fn determinant_polynomial() {
        let r = y_ring(2, TermOrder::GrevLex);
        assert_eq!(det_poly(2, &r).to_string(), "-y12*y21 + y11*y22");
    }
}
