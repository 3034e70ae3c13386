//! Shift operators over Q(k) and Q[x], and matrices of them.

mod gcrd;
mod matrix;
mod modular;
mod op;
mod polyop;

pub use gcrd::{gcrd, right_divmod};
pub use matrix::OreMatrix;
pub use op::OreOp;
pub use polyop::PolyOp;
