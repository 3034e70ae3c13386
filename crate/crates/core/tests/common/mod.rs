#![allow(dead_code)]

use std::collections::HashMap;

use fbm::algebra::{rat, Rat};
use fbm::basis::{binomial_basis, generalized_binomial, product_basis, shuffled_basis, SectionedBasis};
use fbm::ore::{OreMatrix, OreOp, PolyOp};
use fbm::syntax::{parse_ore, parse_poly_op, ORE_DIALECT};

const OPERATORS: &str = include_str!("../fixtures/operators.txt");

pub struct Fixtures(HashMap<String, String>);

impl Fixtures {
    pub fn load() -> Self {
        let mut map = HashMap::new();
        let mut name: Option<String> = None;
        let mut body = String::new();
        let mut flush = |name: &mut Option<String>, body: &mut String| {
            if let Some(n) = name.take() {
                map.insert(n, body.trim().to_string());
            }
            body.clear();
        };
        for line in OPERATORS.lines() {
            let t = line.trim();
            if t.starts_with('#') {
                continue;
            }
            if let Some(n) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                flush(&mut name, &mut body);
                name = Some(n.to_string());
            } else {
                body.push(' ');
                body.push_str(t);
            }
        }
        flush(&mut name, &mut body);
        Fixtures(map)
    }

    pub fn text(&self, name: &str) -> &str {
        self.0.get(name).unwrap_or_else(|| panic!("no fixture {name}"))
    }

    pub fn ore(&self, name: &str) -> OreOp {
        parse_ore(self.text(name), ORE_DIALECT).unwrap_or_else(|e| panic!("{name}: {e}"))
    }

    pub fn poly(&self, name: &str) -> PolyOp {
        parse_poly_op(self.text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
    }

    /// Entries `prefix.r.c` for `r, c < m`.
    pub fn matrix(&self, prefix: &str, m: usize) -> OreMatrix {
        let rows = (0..m).map(|r| (0..m).map(|c| self.ore(&format!("{prefix}.{r}.{c}"))).collect()).collect();
        OreMatrix::from_rows(rows).unwrap()
    }
}

pub fn binomial_c() -> SectionedBasis {
    binomial_basis(rat(1), rat(0)).unwrap()
}

/// `P_{2k} = binom(x,k)^2`, `P_{2k+1} = binom(x,k+1) binom(x,k)`.
pub fn xk2e_basis() -> SectionedBasis {
    product_basis(&[binomial_c(), binomial_c()]).unwrap()
}

/// Three-factor product of binomial bases.
pub fn franel_basis() -> SectionedBasis {
    product_basis(&[binomial_c(), binomial_c(), binomial_c()]).unwrap()
}

/// Even elements `binom(x+k, 2k)`.
pub fn binom_x_plus_n_2n() -> SectionedBasis {
    generalized_binomial(rat(1), 1, rat(0), 2).unwrap()
}

/// `P_{3k} = binom(x,k) binom(x+k,2k)`.
pub fn apery2_basis() -> SectionedBasis {
    shuffled_basis(&[binomial_c(), binom_x_plus_n_2n()], &[2, 1, 2]).unwrap()
}

/// `P_{4k} = binom(x+k,2k)^2`.
pub fn apery3_basis() -> SectionedBasis {
    shuffled_basis(&[binom_x_plus_n_2n(), binom_x_plus_n_2n()], &[1, 2, 1, 2]).unwrap()
}

pub fn canon_eq(a: &OreOp, b: &OreOp) -> bool {
    a.canonical() == b.canonical()
}

/// Integer binomial by the multiplicative formula, independent of the library.
pub fn binom_i(n: i64, k: i64) -> Rat {
    if k < 0 || (n >= 0 && k > n) {
        return Rat::from_integer(0.into());
    }
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rat::from_integer(acc)
}

pub fn fact_i(n: i64) -> Rat {
    Rat::from_integer((1..=n).fold(num_bigint::BigInt::from(1), |a, i| a * i))
}

/// Checks `L P_{mk+j}(x) = sum_i alpha_{k,j,i} P_{mk+j+i}(x)` as a polynomial
/// identity for each `k` in `ks`, building both sides from basis elements.
/// Elements with negative index are dropped together with their coefficient.
pub fn compat_identity(b: &SectionedBasis, c: &fbm::compat::Compatibility, ks: &[i64]) -> Result<(), String> {
    use fbm::algebra::Poly;
    use fbm::compat::OpKind;
    let m = b.sections() as i64;
    for j in 0..m {
        for &k in ks {
            let n = m * k + j;
            let p = b.element(n as usize).map_err(|e| e.to_string())?;
            let lhs = match c.operator {
                OpKind::E => p.shift(&rat(1)),
                OpKind::X => &Poly::x() * &p,
            };
            let mut rhs = Poly::zero();
            for i in -(c.a as i64)..=(c.b as i64) {
                if n + i < 0 {
                    continue;
                }
                let a = c.alpha(j as usize, i).eval(&rat(k)).map_err(|e| format!("section {j}, k = {k}: {e}"))?;
                rhs = &rhs + &b.element((n + i) as usize).map_err(|e| e.to_string())?.scale(&a);
            }
            if lhs != rhs {
                return Err(format!("{}: identity fails at section {j}, k = {k}", b.label()));
            }
        }
    }
    Ok(())
}
