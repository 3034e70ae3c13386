use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::op::OreOp;
use crate::algebra::{rat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Operator `sum p_i(x) E^i` with polynomial coefficients, `E p(x) = p(x+1) E`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyOp {
    c: Vec<Poly>,
}

impl PolyOp {
    pub fn new(mut c: Vec<Poly>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        PolyOp { c }
    }

    pub fn zero() -> Self {
        PolyOp { c: Vec::new() }
    }

    /// `E^i`
    pub fn e(i: usize) -> Self {
        let mut c = vec![Poly::zero(); i + 1];
        c[i] = Poly::one();
        PolyOp::new(c)
    }

    pub fn x() -> Self {
        PolyOp::new(vec![Poly::x()])
    }

    pub fn constant(r: Rat) -> Self {
        PolyOp::new(vec![Poly::constant(r)])
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Maximal coefficient degree.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().filter_map(|p| p.degree()).max()
    }

    pub fn to_ore(&self) -> OreOp {
        OreOp::from_dense(0, self.c.iter().cloned().map(RatFunc::from_poly).collect())
    }

    /// Requires co-order >= 0 and polynomial coefficients.
    pub fn from_ore(op: &OreOp) -> Result<Self> {
        if op.is_zero() {
            return Ok(PolyOp::zero());
        }
        if op.coorder().unwrap() < 0 {
            return Err(Error::Degenerate("operator has negative powers of the shift".into()));
        }
        let ord = op.order().unwrap();
        let mut c = Vec::with_capacity(ord as usize + 1);
        for i in 0..=ord {
            let f = op.coeff(i);
            if !f.is_poly() {
                return Err(Error::Degenerate("operator has non-polynomial coefficients".into()));
            }
            c.push(f.num().clone());
        }
        Ok(PolyOp::new(c))
    }

    /// `(L y)(n) = sum_i p_i(n) y(n+i)`
    pub fn apply_with(&self, y: &dyn Fn(i64) -> Rat, n: i64) -> Rat {
        let mut acc = Rat::zero();
        for (i, p) in self.c.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            acc += p.eval(&rat(n)) * y(n + i as i64);
        }
        acc
    }

    pub fn render(&self, var: &str, shift: &str) -> String {
        self.to_ore().render(var, shift)
    }
}

impl fmt::Debug for PolyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "E"))
    }
}

impl fmt::Display for PolyOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x", "E"))
    }
}

impl Add for &PolyOp {
    type Output = PolyOp;
    fn add(self, o: &PolyOp) -> PolyOp {
        let n = self.c.len().max(o.c.len());
        PolyOp::new(
            (0..n)
                .map(|i| {
                    let z = Poly::zero();
                    self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)
                })
                .collect(),
        )
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for &PolyOp {
    type Output = PolyOp;
    fn sub(self, o: &PolyOp) -> PolyOp {
        let neg = PolyOp::new(o.c.iter().map(|p| -p).collect());
        self + &neg
    }
}

impl Mul for &PolyOp {
    type Output = PolyOp;
    fn mul(self, o: &PolyOp) -> PolyOp {
        PolyOp::from_ore(&(&self.to_ore() * &o.to_ore())).expect("product of polynomial operators")
    }
}
