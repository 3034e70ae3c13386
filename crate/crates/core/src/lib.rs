pub mod algebra;
pub mod basis;
pub mod compat;
pub mod error;
pub mod ore;
pub mod pipeline;
pub mod report;
pub mod syntax;

pub use error::{Error, Result};
