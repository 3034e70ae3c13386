use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{gcd_numers, lcm_denoms, rat, render_rat, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Poly::new(vec![r])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `a*x + b`
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|z| z.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.c.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|a| a * r).collect() }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// `p(a*x + b)`
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        let mut acc = Poly::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(x + s)`
    pub fn shift(&self, s: &Rat) -> Poly {
        if s.is_zero() || self.is_constant() {
            return self.clone();
        }
        // Taylor shift by repeated synthetic division.
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = d.lc().recip();
        let mut r = self.c.clone();
        let mut q = vec![Rat::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let t = &r[i + dd] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i + j] -= &t * dc;
            }
            q[i] = t;
        }
        r.truncate(dd);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Degenerate("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Rational content `c` and integer-coefficient primitive part `p` with
    /// `self = c * p` and the leading coefficient of `p` positive.
    pub fn integer_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::one(), Vec::new());
        }
        let l = lcm_denoms(&self.c);
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rat::from_integer(l.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|v| v / &g).collect();
        (Rat::new(g, l), prim)
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        let (_, p) = self.integer_primitive();
        Poly::new(p.into_iter().map(Rat::from_integer).collect())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        // Primitive remainder sequence over Z.
        let (_, mut u) = a.integer_primitive();
        let (_, mut v) = b.integer_primitive();
        if u.len() < v.len() {
            std::mem::swap(&mut u, &mut v);
        }
        while !v.is_empty() {
            let r = prem_int(&u, &v);
            u = v;
            v = prim_int(r);
        }
        Poly::new(u.into_iter().map(Rat::from_integer).collect()).monic()
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&render_rat(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&render_rat(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.c.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn integer_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        Rat::new(gcd_numers(&self.c), lcm_denoms(&self.c))
    }
}

fn prem_int(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = u.to_vec();
    let dv = v.len() - 1;
    let lv = &v[dv];
    while r.len() > dv && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lv;
        }
        for (j, vc) in v.iter().enumerate() {
            r[dr - dv + j] -= &lr * vc;
        }
        while r.last().is_some_and(|z| z.is_zero()) {
            r.pop();
        }
        r = prim_int(r);
    }
    r
}

fn prim_int(mut r: Vec<BigInt>) -> Vec<BigInt> {
    while r.last().is_some_and(|z| z.is_zero()) {
        r.pop();
    }
    let g = r.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for x in r.iter_mut() {
            *x /= &g;
        }
    }
    r
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;
owned_ops!(Poly);
