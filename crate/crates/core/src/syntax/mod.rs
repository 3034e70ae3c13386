//! Text formats: operators, bases and closed-form sequences.

mod basis_dsl;
mod lexer;
mod operator;
mod seqexpr;

pub use basis_dsl::{parse_basis, BasisSpec, Number};
pub use operator::{parse_ore, parse_poly_op, parse_ratfunc, Dialect, ORE_DIALECT, POLY_DIALECT, SCALAR_DIALECT};
pub use seqexpr::SeqExpr;
