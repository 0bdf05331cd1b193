//! σ^δ-hypergeometric solutions of scalar recurrences and first-order
//! systems, together with the rational-solution machinery they rely on.

mod petkovsek;
mod polysol;
mod rational;
mod system;

pub use petkovsek::{petkovsek, HyperCertificate, PetkovsekOutcome, MAX_DIVISOR_PAIRS};
pub use polysol::{degree_bound, polynomial_solutions, Poly, MAX_SOLUTION_DEGREE};
pub use rational::{
    blocks, dispersion_set, is_shift_quotient, rational_solutions, scalar_rational_solutions, shift_between,
    sigma_vec, universal_denominator,
};
pub use system::{system_hyper_solutions, SystemHyperSolution};
