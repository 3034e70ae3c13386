use serde::{Deserialize, Serialize};

use super::operator::parse_ratfunc;
use crate::algebra::{as_i64, parse_rat, render_rat, Rat};
use crate::basis::{
    binomial_basis, falling_basis, generalized_binomial, power_basis, product_basis, scale_hypergeometric,
    shuffled_basis, SectionedBasis,
};
use crate::error::{Error, Result};

/// A number written either as a JSON integer or as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn rat(&self) -> Result<Rat> {
        match self {
            Number::Int(v) => Ok(crate::algebra::rat(*v)),
            Number::Text(s) => parse_rat(s),
        }
    }

    fn from_rat(r: &Rat) -> Self {
        match as_i64(r) {
            Some(v) => Number::Int(v),
            None => Number::Text(render_rat(r)),
        }
    }
}

/// Description of a basis, written either in the textual form accepted by
/// `--basis` or as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BasisSpec {
    Binomial { a: Number, b: Number },
    Power { a: Number, b: Number },
    Falling { a: Number, b: Number, c: Number },
    Genbinom { a: Number, b: i64, c: Number, m: usize },
    Product { factors: Vec<BasisSpec> },
    Shuffle { factors: Vec<BasisSpec>, cycle: Vec<usize> },
    Scale { basis: Box<BasisSpec>, ratio: String, a0: Number },
}

impl BasisSpec {
    pub fn build(&self) -> Result<SectionedBasis> {
        match self {
            BasisSpec::Binomial { a, b } => binomial_basis(a.rat()?, b.rat()?),
            BasisSpec::Power { a, b } => power_basis(a.rat()?, b.rat()?),
            BasisSpec::Falling { a, b, c } => falling_basis(a.rat()?, b.rat()?, c.rat()?),
            BasisSpec::Genbinom { a, b, c, m } => generalized_binomial(a.rat()?, *b, c.rat()?, *m),
            BasisSpec::Product { factors } => {
                product_basis(&factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?)
            }
            BasisSpec::Shuffle { factors, cycle } => {
                shuffled_basis(&factors.iter().map(|f| f.build()).collect::<Result<Vec<_>>>()?, cycle)
            }
            BasisSpec::Scale { basis, ratio, a0 } => {
                scale_hypergeometric(&basis.build()?, &parse_ratfunc(ratio)?, a0.rat()?)
            }
        }
    }
}

/// Parses e.g. `shuffle([binomial(1,0), genbinom(1,1,0,2)], [2,1,2])`.
pub fn parse_basis(s: &str) -> Result<BasisSpec> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| Error::parse(0, "expected name(arguments)"))?;
    if !s.ends_with(')') {
        return Err(Error::parse(s.len(), "expected ')'"));
    }
    let name = s[..open].trim();
    let inner = &s[open + 1..s.len() - 1];
    let args = split_top(inner, open + 1)?;
    let want = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(Error::parse(open, format!("{name} takes {n} arguments, got {}", args.len())));
        }
        Ok(())
    };
    let num = |i: usize| -> Result<Number> {
        let (p, t) = &args[i];
        let r = parse_rat(t).map_err(|_| Error::parse(*p, format!("expected a rational number, got {t:?}")))?;
        Ok(Number::from_rat(&r))
    };
    let int = |i: usize| -> Result<i64> {
        let (p, t) = &args[i];
        t.trim().parse().map_err(|_| Error::parse(*p, format!("expected an integer, got {t:?}")))
    };
    match name {
        "binomial" => {
            want(2)?;
            Ok(BasisSpec::Binomial { a: num(0)?, b: num(1)? })
        }
        "power" => {
            want(2)?;
            Ok(BasisSpec::Power { a: num(0)?, b: num(1)? })
        }
        "falling" => {
            want(3)?;
            Ok(BasisSpec::Falling { a: num(0)?, b: num(1)?, c: num(2)? })
        }
        "genbinom" => {
            want(4)?;
            let m = int(3)?;
            if m < 1 {
                return Err(Error::parse(args[3].0, "m must be positive"));
            }
            Ok(BasisSpec::Genbinom { a: num(0)?, b: int(1)?, c: num(2)?, m: m as usize })
        }
        "product" => {
            let factors =
                args.iter().map(|(p, t)| parse_basis(t).map_err(|e| shift_err(e, *p))).collect::<Result<_>>()?;
            Ok(BasisSpec::Product { factors })
        }
        "shuffle" => {
            want(2)?;
            let factors = list(&args[0])?
                .iter()
                .map(|(p, t)| parse_basis(t).map_err(|e| shift_err(e, *p)))
                .collect::<Result<_>>()?;
            let cycle = list(&args[1])?
                .iter()
                .map(|(p, t)| t.trim().parse().map_err(|_| Error::parse(*p, format!("bad cycle entry {t:?}"))))
                .collect::<Result<_>>()?;
            Ok(BasisSpec::Shuffle { factors, cycle })
        }
        "scale" => {
            want(3)?;
            let (p, t) = &args[0];
            let basis = Box::new(parse_basis(t).map_err(|e| shift_err(e, *p))?);
            parse_ratfunc(&args[1].1).map_err(|e| shift_err(e, args[1].0))?;
            Ok(BasisSpec::Scale { basis, ratio: args[1].1.trim().to_string(), a0: num(2)? })
        }
        _ => Err(Error::parse(0, format!("unknown basis {name:?}"))),
    }
}

fn shift_err(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

fn list(arg: &(usize, String)) -> Result<Vec<(usize, String)>> {
    let t = arg.1.trim();
    let lead = arg.1.len() - arg.1.trim_start().len();
    if !(t.starts_with('[') && t.ends_with(']')) {
        return Err(Error::parse(arg.0, "expected a [list]"));
    }
    split_top(&t[1..t.len() - 1], arg.0 + lead + 1)
}

/// Splits at commas outside brackets, keeping byte offsets.
fn split_top(s: &str, base: usize) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut st = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(base + i, "unbalanced brackets"));
                }
            }
            ',' if depth == 0 => {
                out.push((base + st, s[st..i].to_string()));
                st = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(base + s.len(), "unbalanced brackets"));
    }
    if !s[st..].trim().is_empty() || !out.is_empty() {
        out.push((base + st, s[st..].to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_agree() {
        let t = parse_basis("shuffle([binomial(1,0), genbinom(1,1,0,2)], [2,1,2])").unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: BasisSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.build().unwrap().sections(), 3);
        let j: BasisSpec = serde_json::from_str(r#"{"kind":"binomial","a":1,"b":"1/2"}"#).unwrap();
        assert_eq!(j, parse_basis("binomial(1, 1/2)").unwrap());
    }

    #[test]
    fn scale_takes_an_expression() {
        let s = parse_basis("scale(product(falling(1,0,1), falling(1,1,-1)), 1/(n+1), 1)").unwrap();
        let b = s.build().unwrap();
        assert_eq!(b.sections(), 2);
    }

    #[test]
    fn reports_unknown_names() {
        assert!(matches!(parse_basis("binomal(1,0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_basis("binomial(1)"), Err(Error::Parse { .. })));
    }
}
