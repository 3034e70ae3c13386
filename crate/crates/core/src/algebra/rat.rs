use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

/// Accepts `12`, `-3`, `7/4`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_pow(base: &Rat, e: i64) -> Result<Rat> {
    if e < 0 {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(rat_pow(base, -e)?.recip());
    }
    let mut acc = Rat::one();
    let mut b = base.clone();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    Ok(acc)
}

/// Exact integer value, if any.
pub fn as_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

pub(crate) fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub(crate) fn gcd_numers<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::zero(), |acc, r| acc.gcd(r.numer())).abs()
}

pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient with a rational top argument and integer bottom.
pub fn binomial(top: &Rat, k: i64) -> Rat {
    if k < 0 {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= top - rat(i);
        acc /= rat(i + 1);
    }
    acc
}
