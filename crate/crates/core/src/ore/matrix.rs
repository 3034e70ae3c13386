use std::ops::{Add, Mul};

use super::op::OreOp;
use crate::algebra::RatFunc;
use crate::error::{Error, Result};

/// Square matrix of Ore operators, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OreMatrix {
    m: usize,
    e: Vec<OreOp>,
}

impl OreMatrix {
    pub fn zero(m: usize) -> Self {
        OreMatrix { m, e: vec![OreOp::zero(); m * m] }
    }

    pub fn identity(m: usize) -> Self {
        OreMatrix::scalar(m, &RatFunc::one())
    }

    /// `f * I_m`
    pub fn scalar(m: usize, f: &RatFunc) -> Self {
        let mut z = OreMatrix::zero(m);
        for i in 0..m {
            z.e[i * m + i] = OreOp::scalar(f.clone());
        }
        z
    }

    pub fn from_rows(rows: Vec<Vec<OreOp>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("matrix rows must have equal length".into()));
        }
        Ok(OreMatrix { m, e: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> &OreOp {
        &self.e[r * self.m + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: OreOp) {
        self.e[r * self.m + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<OreOp>> {
        self.e.chunks(self.m).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<OreOp> {
        (0..self.m).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[OreOp]) -> Vec<OreOp> {
        (0..self.m).map(|r| (0..self.m).fold(OreOp::zero(), |acc, c| &acc + &(self.get(r, c) * &v[c]))).collect()
    }

    pub fn pow(&self, e: usize) -> OreMatrix {
        let mut acc = OreMatrix::identity(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn render(&self, var: &str, shift: &str) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|o| o.render(var, shift)).collect()).collect()
    }
}

impl Add for &OreMatrix {
    type Output = OreMatrix;
    fn add(self, o: &OreMatrix) -> OreMatrix {
        assert_eq!(self.m, o.m);
        OreMatrix { m: self.m, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &OreMatrix {
    type Output = OreMatrix;
    fn mul(self, o: &OreMatrix) -> OreMatrix {
        assert_eq!(self.m, o.m);
        let m = self.m;
        let mut out = OreMatrix::zero(m);
        for r in 0..m {
            for c in 0..m {
                let mut acc = OreOp::zero();
                for t in 0..m {
                    let a = self.get(r, t);
                    let b = o.get(t, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }
}
