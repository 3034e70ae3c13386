//! Exact arithmetic over Q, Q[k] and Q(k).

mod linsolve;
mod poly;
mod rat;
mod ratfunc;

pub use linsolve::solve_linear_system;
pub use poly::Poly;
pub use rat::{as_i64, binomial, factorial, int, parse_rat, rat, rat_pow, ratio, render_rat, Rat};
pub(crate) use rat::{gcd_numers, lcm_denoms};
pub use ratfunc::RatFunc;
