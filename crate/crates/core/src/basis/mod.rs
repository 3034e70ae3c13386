//! Factorial bases described section by section.

mod builders;
mod expand;
mod predicates;
mod sectioned;

pub use builders::{
    binomial_basis, falling_basis, generalized_binomial, power_basis, product_basis, scale_hypergeometric,
    shuffled_basis,
};
pub use expand::{evaluate_expansion, expand_polynomial, expand_sequence, sectioned_rhs};
pub use predicates::{
    d_compat_degree, e_compat_bound, is_d_compatible, is_e_compatible, is_quasi_triangular, quasi_triangular_witness,
    QtWitness,
};
pub(crate) use predicates::{shift_matching, shift_quotient_roots};
pub use sectioned::{Affine, SectionStep, SectionedBasis};

/// Default number of periods inspected by prefix checks.
pub const DEFAULT_DEPTH: usize = 100;
