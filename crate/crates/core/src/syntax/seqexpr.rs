use std::collections::HashMap;

use num_traits::{One, Zero};

use super::lexer::{lex, Cursor, Tok};
use crate::algebra::{as_i64, binomial, factorial, rat, rat_pow, Rat};
use crate::error::{Error, Result};

/// Closed-form sequence term such as `sum(k, 0, n, binom(n,k)^2)`.
///
/// Functions: `binom(a, b)`, `fact(a)` (also postfix `!`), and the bound
/// forms `sum(v, lo, hi, body)` and `prod(v, lo, hi, body)`.
#[derive(Clone, Debug)]
pub enum SeqExpr {
    Num(Rat),
    Var(String),
    Neg(Box<SeqExpr>),
    Bin(char, Box<SeqExpr>, Box<SeqExpr>),
    Pow(Box<SeqExpr>, Box<SeqExpr>),
    Fact(Box<SeqExpr>),
    Call(String, Vec<SeqExpr>),
    Bound { prod: bool, var: String, lo: Box<SeqExpr>, hi: Box<SeqExpr>, body: Box<SeqExpr> },
}

impl SeqExpr {
    pub fn parse(s: &str) -> Result<SeqExpr> {
        let toks = lex(s)?;
        let mut c = Cursor::new(&toks, s.len());
        let e = sum(&mut c)?;
        if !c.done() {
            return Err(Error::parse(c.pos(), "unexpected trailing input"));
        }
        Ok(e)
    }

    /// Value at `n`.
    pub fn at(&self, n: i64) -> Result<Rat> {
        let mut env = HashMap::new();
        env.insert("n".to_string(), rat(n));
        self.eval(&mut env)
    }

    pub fn eval(&self, env: &mut HashMap<String, Rat>) -> Result<Rat> {
        Ok(match self {
            SeqExpr::Num(r) => r.clone(),
            SeqExpr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::parse(0, format!("unbound variable {v:?}")))?,
            SeqExpr::Neg(a) => -a.eval(env)?,
            SeqExpr::Bin(op, a, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    _ => {
                        if y.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        x / y
                    }
                }
            }
            SeqExpr::Pow(a, e) => {
                let e = as_i64(&e.eval(env)?).ok_or_else(|| Error::parse(0, "non-integer exponent"))?;
                rat_pow(&a.eval(env)?, e)?
            }
            SeqExpr::Fact(a) => fact(&a.eval(env)?)?,
            SeqExpr::Call(f, args) => {
                let v: Vec<Rat> = args.iter().map(|a| a.eval(env)).collect::<Result<_>>()?;
                match (f.as_str(), v.as_slice()) {
                    ("binom", [a, b]) => {
                        let k = as_i64(b).ok_or_else(|| Error::parse(0, "binom needs an integer bottom"))?;
                        binomial(a, k)
                    }
                    ("fact", [a]) => fact(a)?,
                    _ => return Err(Error::parse(0, format!("unknown function {f}/{}", v.len()))),
                }
            }
            SeqExpr::Bound { prod, var, lo, hi, body } => {
                let lo = as_i64(&lo.eval(env)?).ok_or_else(|| Error::parse(0, "non-integer bound"))?;
                let hi = as_i64(&hi.eval(env)?).ok_or_else(|| Error::parse(0, "non-integer bound"))?;
                let saved = env.get(var).cloned();
                let mut acc = if *prod { Rat::one() } else { Rat::zero() };
                for i in lo..=hi {
                    env.insert(var.clone(), rat(i));
                    let v = body.eval(env)?;
                    if *prod {
                        acc *= v;
                    } else {
                        acc += v;
                    }
                }
                match saved {
                    Some(s) => env.insert(var.clone(), s),
                    None => env.remove(var),
                };
                acc
            }
        })
    }
}

fn fact(a: &Rat) -> Result<Rat> {
    match as_i64(a) {
        Some(v) if !v.is_negative() => Ok(factorial(v as u64)),
        _ => Err(Error::Pole(format!("factorial of {a}"))),
    }
}

fn sum(c: &mut Cursor) -> Result<SeqExpr> {
    let mut acc = product(c)?;
    loop {
        let op = if c.eat('+') {
            '+'
        } else if c.eat('-') {
            '-'
        } else {
            return Ok(acc);
        };
        acc = SeqExpr::Bin(op, Box::new(acc), Box::new(product(c)?));
    }
}

fn product(c: &mut Cursor) -> Result<SeqExpr> {
    let mut acc = unary(c)?;
    loop {
        let (op, jux) = if c.eat('*') {
            ('*', false)
        } else if c.eat('/') {
            ('/', false)
        } else if c.at_operand() {
            ('*', true)
        } else {
            return Ok(acc);
        };
        let rhs = if jux { postfix(c)? } else { unary(c)? };
        acc = SeqExpr::Bin(op, Box::new(acc), Box::new(rhs));
    }
}

fn unary(c: &mut Cursor) -> Result<SeqExpr> {
    if c.eat('-') {
        return Ok(SeqExpr::Neg(Box::new(unary(c)?)));
    }
    if c.eat('+') {
        return unary(c);
    }
    postfix(c)
}

fn postfix(c: &mut Cursor) -> Result<SeqExpr> {
    let mut e = atom(c)?;
    loop {
        if c.eat('!') {
            e = SeqExpr::Fact(Box::new(e));
        } else if c.eat('^') {
            let ex = if c.eat('-') { SeqExpr::Neg(Box::new(atom(c)?)) } else { atom(c)? };
            e = SeqExpr::Pow(Box::new(e), Box::new(ex));
        } else {
            return Ok(e);
        }
    }
}

fn atom(c: &mut Cursor) -> Result<SeqExpr> {
    let pos = c.pos();
    match c.bump() {
        Some(Tok::Num(n)) => Ok(SeqExpr::Num(Rat::from_integer(n.clone()))),
        Some(Tok::Sym('(')) => {
            let e = sum(c)?;
            c.expect(')')?;
            Ok(e)
        }
        Some(Tok::Ident(id)) => {
            if !c.eat('(') {
                return Ok(SeqExpr::Var(id.clone()));
            }
            if id == "sum" || id == "prod" {
                let var = match c.bump() {
                    Some(Tok::Ident(v)) => v.clone(),
                    _ => return Err(Error::parse(pos, "expected the bound variable")),
                };
                c.expect(',')?;
                let lo = sum(c)?;
                c.expect(',')?;
                let hi = sum(c)?;
                c.expect(',')?;
                let body = sum(c)?;
                c.expect(')')?;
                return Ok(SeqExpr::Bound {
                    prod: id == "prod",
                    var,
                    lo: Box::new(lo),
                    hi: Box::new(hi),
                    body: Box::new(body),
                });
            }
            let mut args = vec![sum(c)?];
            while c.eat(',') {
                args.push(sum(c)?);
            }
            c.expect(')')?;
            Ok(SeqExpr::Call(id.clone(), args))
        }
        _ => Err(Error::parse(pos, "expected a number, name or '('")),
    }
}
