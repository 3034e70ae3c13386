use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Solves `a * sol = b` over Q(k) for a square nonsingular `a`.
///
/// Rows are cleared to polynomials and eliminated fraction-free; each updated
/// row is divided by the gcd of its entries to keep degrees down.
pub fn solve_linear_system(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("{n}x? system with {} right-hand sides", b.len())));
    }
    let mut m: Vec<Vec<Poly>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut den = Poly::one();
            for e in row.iter().chain(std::iter::once(rhs)) {
                let g = Poly::gcd(&den, e.den());
                den = &den * &e.den().div_exact(&g).unwrap();
            }
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|e| &e.num().clone() * &den.div_exact(e.den()).unwrap())
                .collect()
        })
        .collect();
    for row in m.iter_mut() {
        strip_content(row);
    }

    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| m[r][col].degree()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..n {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let piv = m[rank][col].clone();
            let f = m[r][col].clone();
            let g = Poly::gcd(&piv, &f);
            let piv = piv.div_exact(&g).unwrap();
            let f = f.div_exact(&g).unwrap();
            let new: Vec<Poly> = (0..=n).map(|c| &(&m[r][c] * &piv) - &(&m[rank][c] * &f)).collect();
            m[r] = new;
            strip_content(&mut m[r]);
        }
        rank += 1;
    }
    if rank < n {
        return Err(Error::Singular { rank, size: n });
    }
    // Fully reduced: row i has a single pivot in column i.
    (0..n).map(|i| RatFunc::new(m[i][n].clone(), m[i][i].clone())).collect()
}

fn strip_content(row: &mut [Poly]) {
    let mut g = Poly::zero();
    for e in row.iter() {
        g = Poly::gcd(&g, e);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            *e = e.div_exact(&g).unwrap();
        }
    }
    // Clear rational scalars as well.
    let c = row.iter().filter(|e| !e.is_zero()).fold(None::<crate::algebra::Rat>, |acc, e| {
        let c = e.integer_content();
        Some(match acc {
            None => c,
            Some(a) => {
                use num_integer::Integer;
                crate::algebra::Rat::new(a.numer().gcd(c.numer()), a.denom().lcm(c.denom()))
            }
        })
    });
    if let Some(c) = c {
        let inv = c.recip();
        for e in row.iter_mut() {
            *e = e.scale(&inv);
        }
    }
}
