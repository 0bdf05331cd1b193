//! The system σ(Y) = A·Y: germs, the σ-action on polynomials, scalar
//! annihilators and cyclic vectors.

mod annihilator;
mod cyclic;
mod operator;
mod system;

pub use annihilator::{monomial_annihilator, monomial_transition};
pub use cyclic::{cyclic_vector_scalarize, CyclicReduction};
pub use operator::{clear_denominators, ScalarOperator};
pub use system::{det_poly, exterior_power_matrix, subsets, y_names, y_ring, DifferenceSystem, GermSequence};
