//! Multivariate polynomials, Buchberger's algorithm and ideal operations.

mod buchberger;
mod ideal;
mod monomial;
mod poly;

pub use buchberger::{groebner_basis, interreduce, reduce};
pub use ideal::PolyIdeal;
pub use monomial::{Monomial, TermOrder};
pub use poly::{parse_poly, MultiPoly, PolyRing};
