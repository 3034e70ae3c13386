use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::{owned_ops, Poly};
use super::rat::{rat, Rat};
use crate::error::{Error, Result};

/// Reduced quotient of polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.lc().recip();
            return RatFunc { num: num.scale(&inv), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        let l = den.lc();
        RatFunc { num: num.scale(&l.recip()), den: den.monic() }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(r: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(r))
    }

    pub fn int(n: i64) -> Self {
        RatFunc::constant(rat(n))
    }

    pub fn var() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(super::rat::render_rat(x)));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, r: &Rat) -> RatFunc {
        if r.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(r), den: self.den.clone() }
    }

    /// `f(k + s)`
    pub fn shift(&self, s: i64) -> RatFunc {
        if s == 0 {
            return self.clone();
        }
        let s = rat(s);
        RatFunc { num: self.num.shift(&s), den: self.den.shift(&s) }
    }

    /// `f(a*k + b)`
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> RatFunc {
        RatFunc::reduce(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Sign of the leading coefficient of the numerator.
    pub fn is_negative(&self) -> bool {
        self.num.lc().is_negative()
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        // Integer numerator and denominator, sign carried by the numerator.
        let (cn, pn) = self.num.integer_primitive();
        let (cd, pd) = self.den.integer_primitive();
        let c = cn / cd;
        let to_poly = |v: Vec<num_bigint::BigInt>| Poly::new(v.into_iter().map(Rat::from_integer).collect());
        let num = to_poly(pn).scale(&Rat::from_integer(c.numer().clone()));
        let den = to_poly(pd).scale(&Rat::from_integer(c.denom().clone()));
        let wrap = |p: &Poly| {
            let s = p.render(var);
            if p.term_count() > 1 || s.contains(['*', '^']) {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(&num), wrap(&den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("k"))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::reduce(&self.num + &o.num, self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b) + &(&o.num * &a);
        RatFunc::reduce(num, &a * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(&self.num * &o.num);
        }
        // Cross-cancel before multiplying.
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let l = den.lc();
        RatFunc { num: num.scale(&l.recip()), den: den.monic() }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self * &o.inv()?)
    }
}

owned_ops!(RatFunc);

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(r: Rat) -> Self {
        RatFunc::constant(r)
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}
