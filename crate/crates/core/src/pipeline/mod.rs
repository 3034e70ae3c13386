//! From a polynomial-coefficient operator to recurrences on basis
//! coefficients, and back to solutions.

mod matrices;
mod reduce;
mod sections;
mod solve;

pub use matrices::{
    associated_column, associated_matrix, associated_operator, first_column, promote, sectioned_matrices,
    sectioned_matrix, SectionMatrices,
};
pub use reduce::{is_proportional, reduction_of_order, reduction_of_order_auto};
pub use sections::{interlace, multisection};
pub use solve::{
    evaluate_solution, solve_section, solve_section0, verify_annihilation, verify_on_values, HypergeomTerm,
    SectionSolve, SolutionDescriptor,
};
