use num_traits::Zero;

use super::predicates::quasi_triangular_witness;
use super::sectioned::SectionedBasis;
use crate::algebra::{rat, Poly, Rat};
use crate::error::{Error, Result};

/// Coefficients `b_0, ..., b_{f(N-1)}` of `a_n = sum_k b_k P_k(n)` from the
/// first `N` terms.  Coefficients not pinned down by any `n` are set to 0.
pub fn expand_sequence(a: &[Rat], b: &SectionedBasis) -> Result<Vec<Rat>> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let w = quasi_triangular_witness(b, a.len())?;
    let mut coef = vec![Rat::zero(); w.f(a.len() - 1) + 1];
    for (n, an) in a.iter().enumerate() {
        let k = w.f(n);
        let vals = b.values_at(&rat(n as i64), k)?;
        let partial: Rat = coef[..k].iter().zip(&vals).map(|(c, v)| c * v).sum();
        coef[k] = (an - partial) / &vals[k];
    }
    Ok(coef)
}

/// `sum_k coef_k P_k(n)`, truncated where the basis vanishes at `n`.
pub fn evaluate_expansion(coef: &[Rat], b: &SectionedBasis, n: usize) -> Result<Rat> {
    let vals = b.values_at(&rat(n as i64), coef.len().saturating_sub(1))?;
    Ok(coef.iter().zip(&vals).map(|(c, v)| c * v).sum())
}

/// Coordinates of a polynomial in the basis.
pub fn expand_polynomial(p: &Poly, b: &SectionedBasis) -> Result<Vec<Rat>> {
    let Some(d) = p.degree() else {
        return Ok(Vec::new());
    };
    let elems: Vec<Poly> = (0..=d).map(|n| b.element(n)).collect::<Result<_>>()?;
    let mut rem = p.clone();
    let mut out = vec![Rat::zero(); d + 1];
    for i in (0..=d).rev() {
        let c = rem.coeff(i) / elems[i].lc();
        if !c.is_zero() {
            rem = &rem - &elems[i].scale(&c);
            out[i] = c;
        }
    }
    Ok(out)
}

/// Coordinates of `p` split by section: `out[j][k]` is the coefficient of
/// `P_{mk+j}`.
pub fn sectioned_rhs(p: &Poly, b: &SectionedBasis) -> Result<Vec<Vec<Rat>>> {
    let c = expand_polynomial(p, b)?;
    let m = b.sections();
    Ok((0..m).map(|j| c.iter().skip(j).step_by(m).cloned().collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::binomial_basis;

    #[test]
    fn fibonacci_in_binomial_basis() {
        let mut fib = vec![rat(0), rat(1)];
        for i in 2..15 {
            let v = &fib[i - 1] + &fib[i - 2];
            fib.push(v);
        }
        let b = binomial_basis(rat(1), rat(0)).unwrap();
        let c = expand_sequence(&fib, &b).unwrap();
        for (k, ck) in c.iter().enumerate() {
            let sign = if k % 2 == 0 { rat(-1) } else { rat(1) };
            assert_eq!(*ck, sign * &fib[k]);
        }
    }

    #[test]
    fn polynomial_coordinates() {
        let b = binomial_basis(rat(1), rat(0)).unwrap();
        // x^2 = 2 binom(x,2) + binom(x,1)
        let c = expand_polynomial(&Poly::from_ints(&[0, 0, 1]), &b).unwrap();
        assert_eq!(c, vec![rat(0), rat(1), rat(2)]);
    }
}
