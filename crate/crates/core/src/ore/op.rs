use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::algebra::{lcm_denoms, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Laurent shift operator `sum c_i(k) S^i` with `S f(k) = f(k+1) S`.
///
/// Stored densely from the co-order up to the order; both ends nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OreOp {
    low: i64,
    c: Vec<RatFunc>,
}

impl OreOp {
    pub fn zero() -> Self {
        OreOp { low: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        OreOp::scalar(RatFunc::one())
    }

    pub fn scalar(f: RatFunc) -> Self {
        OreOp::from_dense(0, vec![f])
    }

    /// `S^i`
    pub fn s(i: i64) -> Self {
        OreOp::from_dense(i, vec![RatFunc::one()])
    }

    /// `f(k) S^i`
    pub fn term(f: RatFunc, i: i64) -> Self {
        OreOp::from_dense(i, vec![f])
    }

    pub fn from_dense(low: i64, mut c: Vec<RatFunc>) -> Self {
        while c.last().is_some_and(|z| z.is_zero()) {
            c.pop();
        }
        let lead = c.iter().take_while(|z| z.is_zero()).count();
        if lead == c.len() {
            return OreOp::zero();
        }
        c.drain(..lead);
        OreOp { low: low + lead as i64, c }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, RatFunc)>) -> Self {
        terms.into_iter().fold(OreOp::zero(), |acc, (i, f)| &acc + &OreOp::term(f, i))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.c.len() as i64 - 1)
    }

    pub fn coorder(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn coeff(&self, i: i64) -> RatFunc {
        if i < self.low {
            return RatFunc::zero();
        }
        self.c.get((i - self.low) as usize).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn leading_coeff(&self) -> RatFunc {
        self.c.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Nonzero terms, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.c.iter().enumerate().filter(|(_, f)| !f.is_zero()).map(move |(i, f)| (self.low + i as i64, f))
    }

    /// `f(k) * self`
    pub fn left_scale(&self, f: &RatFunc) -> OreOp {
        OreOp::from_dense(self.low, self.c.iter().map(|c| f * c).collect())
    }

    /// `S^t * self`
    pub fn shift_left(&self, t: i64) -> OreOp {
        if t == 0 || self.is_zero() {
            return self.clone();
        }
        OreOp { low: self.low + t, c: self.c.iter().map(|c| c.shift(t)).collect() }
    }

    /// Left-multiplies by `S^t` so that no negative exponent remains.
    pub fn clear_negative(&self) -> OreOp {
        match self.coorder() {
            Some(lo) if lo < 0 => self.shift_left(-lo),
            _ => self.clone(),
        }
    }

    /// Evaluates `(self c)(k0)` where `seq[j] = c_j`; terms reaching a
    /// negative index are dropped before their coefficient is evaluated.
    pub fn apply_at(&self, seq: &[Rat], k0: i64) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (i, f) in self.terms() {
            let j = k0 + i;
            if j < 0 {
                continue;
            }
            let v = seq.get(j as usize).ok_or(Error::WindowTooShort { needed: j, len: seq.len() })?;
            if v.is_zero() {
                continue;
            }
            acc += f.eval(&crate::algebra::rat(k0))? * v;
        }
        Ok(acc)
    }

    /// Like [`apply_at`](Self::apply_at) with the sequence given as a closure.
    pub fn apply_with(&self, seq: &dyn Fn(i64) -> Rat, k0: i64) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (i, f) in self.terms() {
            let j = k0 + i;
            if j < 0 {
                continue;
            }
            let v = seq(j);
            if v.is_zero() {
                continue;
            }
            acc += f.eval(&crate::algebra::rat(k0))? * v;
        }
        Ok(acc)
    }

    /// Representative of `self` up to left multiplication by units of the
    /// Laurent ring: co-order 0, coprime integer polynomial coefficients,
    /// positive leading coefficient.
    pub fn canonical(&self) -> OreOp {
        let Some(lo) = self.coorder() else {
            return OreOp::zero();
        };
        let op = self.shift_left(-lo);
        let mut den = Poly::one();
        for f in &op.c {
            let g = Poly::gcd(&den, f.den());
            den = &den * &f.den().div_exact(&g).unwrap();
        }
        let mut polys: Vec<Poly> = op.c.iter().map(|f| f.num() * &den.div_exact(f.den()).unwrap()).collect();
        let g = polys.iter().fold(Poly::zero(), |g, p| Poly::gcd(&g, p));
        if !g.is_one() {
            polys = polys.iter().map(|p| p.div_exact(&g).unwrap()).collect();
        }
        let all: Vec<Rat> = polys.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
        let l = lcm_denoms(&all);
        let n = crate::algebra::gcd_numers(&all);
        let mut s = Rat::new(l, n);
        if polys.last().unwrap().lc() < Rat::zero() {
            s = -s;
        }
        OreOp::from_dense(0, polys.iter().map(|p| RatFunc::from_poly(p.scale(&s))).collect())
    }

    /// Dense coefficient list over `[coorder, order]`.
    pub fn dense(&self) -> (i64, &[RatFunc]) {
        (self.low, &self.c)
    }

    pub fn render(&self, var: &str, shift: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, f) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = f.is_negative();
            let f = if neg { -f } else { f.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => shift.to_string(),
                _ => format!("{shift}^{i}"),
            };
            let body = f.render(var);
            let compound = f.is_poly() && f.num().term_count() > 1;
            if mono.is_empty() {
                if compound {
                    out.push_str(&format!("({body})"));
                } else {
                    out.push_str(&body);
                }
            } else if f.is_one() {
                out.push_str(&mono);
            } else if compound {
                out.push_str(&format!("({body})*{mono}"));
            } else {
                out.push_str(&format!("{body}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("k", "S"))
    }
}

impl fmt::Display for OreOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("k", "S"))
    }
}

impl Add for &OreOp {
    type Output = OreOp;
    fn add(self, o: &OreOp) -> OreOp {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.order().unwrap().max(o.order().unwrap());
        let c = (low..=high).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        OreOp::from_dense(low, c)
    }
}

impl Sub for &OreOp {
    type Output = OreOp;
    fn sub(self, o: &OreOp) -> OreOp {
        self + &(-o)
    }
}

impl Neg for &OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        OreOp { low: self.low, c: self.c.iter().map(|f| -f).collect() }
    }
}

/// Noncommutative product: `(a S^i)(b S^j) = a b(k+i) S^(i+j)`.
impl Mul for &OreOp {
    type Output = OreOp;
    fn mul(self, o: &OreOp) -> OreOp {
        if self.is_zero() || o.is_zero() {
            return OreOp::zero();
        }
        let mut c = vec![RatFunc::zero(); self.c.len() + o.c.len() - 1];
        for (di, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let i = self.low + di as i64;
            for (dj, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[di + dj] = &c[di + dj] + &(a * &b.shift(i));
            }
        }
        OreOp::from_dense(self.low + o.low, c)
    }
}

impl Add for OreOp {
    type Output = OreOp;
    fn add(self, o: OreOp) -> OreOp {
        &self + &o
    }
}
impl Sub for OreOp {
    type Output = OreOp;
    fn sub(self, o: OreOp) -> OreOp {
        &self - &o
    }
}
impl Mul for OreOp {
    type Output = OreOp;
    fn mul(self, o: OreOp) -> OreOp {
        &self * &o
    }
}
impl Neg for OreOp {
    type Output = OreOp;
    fn neg(self) -> OreOp {
        -&self
    }
}

impl From<RatFunc> for OreOp {
    fn from(f: RatFunc) -> Self {
        OreOp::scalar(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn k_plus(c: i64) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(&[c, 1]))
    }

    #[test]
    fn commutation_rule() {
        let s = OreOp::s(1);
        let k = OreOp::scalar(RatFunc::var());
        assert_eq!(&s * &k, OreOp::term(k_plus(1), 1));
        assert_eq!(&OreOp::s(-2) * &k, OreOp::term(k_plus(-2), -2));
        assert_eq!(&OreOp::s(3) * &OreOp::s(-3), OreOp::one());
    }

    #[test]
    fn apply_drops_negative_indices() {
        // S - k - k S^-1 on c = (1, 2, 3, ...)
        let op = OreOp::from_terms([(1, RatFunc::one()), (0, -RatFunc::var()), (-1, -RatFunc::var())]);
        let seq: Vec<Rat> = (1..10).map(rat).collect();
        assert_eq!(op.apply_at(&seq, 0).unwrap(), rat(2));
        assert_eq!(op.apply_at(&seq, 2).unwrap(), rat(4 - 6 - 4));
        assert!(op.apply_at(&seq, 8).is_err());
    }

    #[test]
    fn canonical_clears_denominators_and_sign() {
        let f = RatFunc::new(Poly::from_ints(&[2, 4]), Poly::from_ints(&[1, 1])).unwrap();
        let op = OreOp::from_terms([(1, RatFunc::one()), (0, -f)]).left_scale(&RatFunc::int(-3));
        let c = op.canonical();
        assert_eq!(c.render("k", "S"), "(k+1)*S - (4*k+2)");
        assert_eq!(OreOp::s(-1).left_scale(&RatFunc::var()).canonical(), OreOp::one());
    }
}
