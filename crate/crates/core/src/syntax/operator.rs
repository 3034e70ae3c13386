use super::lexer::{exponent, lex, Cursor, Tok};
use crate::algebra::{Rat, RatFunc};
use crate::error::{Error, Result};
use crate::ore::{OreOp, PolyOp};

/// Names accepted for the variable and the shift.
#[derive(Clone, Copy, Debug)]
pub struct Dialect<'a> {
    pub vars: &'a [&'a str],
    pub shifts: &'a [&'a str],
}

/// Polynomial operators: variable `x` or `n`, shift `E`.
pub const POLY_DIALECT: Dialect<'static> = Dialect { vars: &["x", "n"], shifts: &["E"] };
/// Shift operators on coefficient sequences: variable `k` or `n`, shift `S`.
pub const ORE_DIALECT: Dialect<'static> = Dialect { vars: &["k", "n"], shifts: &["S", "Sn"] };
/// Rational functions only.
pub const SCALAR_DIALECT: Dialect<'static> = Dialect { vars: &["k", "n", "x"], shifts: &[] };

/// Parses an operator expression.  Products do not commute: `S*k` is
/// `(k+1)*S`.  Division is allowed by scalar expressions only and divides
/// every coefficient.  Juxtaposition means multiplication.
pub fn parse_ore(s: &str, d: Dialect) -> Result<OreOp> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse(0, "empty expression"));
    }
    let mut c = Cursor::new(&toks, s.len());
    let v = sum(&mut c, d)?;
    if !c.done() {
        return Err(Error::parse(c.pos(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_poly_op(s: &str) -> Result<PolyOp> {
    let op = parse_ore(s, POLY_DIALECT)?;
    PolyOp::from_ore(&op).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let op = parse_ore(s, SCALAR_DIALECT)?;
    as_scalar(&op).ok_or_else(|| Error::parse(0, "expected a rational function"))
}

fn as_scalar(op: &OreOp) -> Option<RatFunc> {
    if op.is_zero() {
        return Some(RatFunc::zero());
    }
    (op.coorder() == Some(0) && op.order() == Some(0)).then(|| op.coeff(0))
}

fn sum(c: &mut Cursor, d: Dialect) -> Result<OreOp> {
    let mut acc = product(c, d)?;
    loop {
        if c.eat('+') {
            acc = &acc + &product(c, d)?;
        } else if c.eat('-') {
            acc = &acc - &product(c, d)?;
        } else {
            return Ok(acc);
        }
    }
}

fn product(c: &mut Cursor, d: Dialect) -> Result<OreOp> {
    let mut acc = unary(c, d)?;
    loop {
        if c.eat('*') {
            acc = &acc * &unary(c, d)?;
        } else if c.peek() == Some(&Tok::Sym('/')) {
            let pos = c.pos();
            c.bump();
            let den = unary(c, d)?;
            let f = as_scalar(&den).ok_or_else(|| Error::parse(pos, "can only divide by a scalar expression"))?;
            let inv = f.inv().map_err(|_| Error::parse(pos, "division by zero"))?;
            acc = acc.left_scale(&inv);
        } else if c.at_operand() {
            acc = &acc * &power(c, d)?;
        } else {
            return Ok(acc);
        }
    }
}

fn unary(c: &mut Cursor, d: Dialect) -> Result<OreOp> {
    if c.eat('-') {
        return Ok(-&unary(c, d)?);
    }
    if c.eat('+') {
        return unary(c, d);
    }
    power(c, d)
}

fn power(c: &mut Cursor, d: Dialect) -> Result<OreOp> {
    let pos = c.pos();
    let base = atom(c, d)?;
    if !c.eat('^') {
        return Ok(base);
    }
    let e = exponent(c)?;
    if e >= 0 {
        let mut acc = OreOp::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        return Ok(acc);
    }
    if let Some(f) = as_scalar(&base) {
        let inv = f.inv().map_err(|_| Error::parse(pos, "zero to a negative power"))?;
        return Ok(OreOp::scalar(inv.pow((-e) as u32)));
    }
    let terms: Vec<_> = base.terms().collect();
    if terms.len() == 1 && terms[0].1.is_one() {
        return Ok(OreOp::s(terms[0].0 * e));
    }
    Err(Error::parse(pos, "only scalars and shifts can have negative exponents"))
}

fn atom(c: &mut Cursor, d: Dialect) -> Result<OreOp> {
    let pos = c.pos();
    match c.bump() {
        Some(Tok::Num(n)) => Ok(OreOp::scalar(RatFunc::constant(Rat::from_integer(n.clone())))),
        Some(Tok::Ident(id)) => {
            if d.vars.contains(&id.as_str()) {
                Ok(OreOp::scalar(RatFunc::var()))
            } else if d.shifts.contains(&id.as_str()) {
                Ok(OreOp::s(1))
            } else {
                Err(Error::parse(pos, format!("unknown symbol {id:?}")))
            }
        }
        Some(Tok::Sym('(')) => {
            let v = sum(c, d)?;
            c.expect(')')?;
            Ok(v)
        }
        Some(Tok::Sym('{')) => {
            let v = sum(c, d)?;
            c.expect('}')?;
            Ok(v)
        }
        _ => Err(Error::parse(pos, "expected a number, symbol or '('")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;

    #[test]
    fn noncommutative_products() {
        let a = parse_ore("S*k", ORE_DIALECT).unwrap();
        assert_eq!(a, parse_ore("(k+1) S", ORE_DIALECT).unwrap());
        let e = parse_poly_op("E^2*x - 2x E").unwrap();
        assert_eq!(e.render("x", "E"), "(x+2)*E^2 - 2*x*E");
    }

    #[test]
    fn negative_powers_and_division() {
        let a = parse_ore("S - n - n*S^-1", ORE_DIALECT).unwrap();
        assert_eq!(a.coorder(), Some(-1));
        let b = parse_ore("(2k+1)S/(k+1) + S^{-1}", ORE_DIALECT).unwrap();
        let f = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[1, 1])).unwrap();
        assert_eq!(b.coeff(1), f);
        assert!(parse_ore("1/S", ORE_DIALECT).is_err());
    }

    #[test]
    fn render_parse_roundtrip() {
        for s in ["(k+1)*S - (4*k+2)", "-k*S^-1 + 3/2", "(2*k+1)/(k+1)*S^2 + S - k^2"] {
            let op = parse_ore(s, ORE_DIALECT).unwrap();
            assert_eq!(parse_ore(&op.render("k", "S"), ORE_DIALECT).unwrap(), op);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly_op("x*E + y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
    }
}
