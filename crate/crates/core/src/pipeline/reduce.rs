use num_traits::{One, Zero};

use crate::algebra::{rat, Rat};
use crate::error::{Error, Result};
use crate::ore::PolyOp;

/// Second solution of an order-2 `L = c_2(x) E^2 + c_1(x) E + c_0(x)` from a
/// solution `a`:
/// `b_n = a_n sum_{k<n} (-1)^k prod_{i=start}^{k} (1 + c_1(i-1)/c_2(i-1) a_i/a_{i+1})`.
///
/// Returns `b_0, ..., b_{N-1}` for `a` of length `N`.
pub fn reduction_of_order(l: &PolyOp, a: &[Rat], start: usize) -> Result<Vec<Rat>> {
    if l.order() != Some(2) {
        return Err(Error::WrongOrder(l.order().map_or(-1, |o| o as i64), 2));
    }
    let c1 = &l.coeffs()[1];
    let c2 = &l.coeffs()[2];
    let n = a.len();
    let mut out = Vec::with_capacity(n);
    let mut sum = Rat::zero();
    let mut prod = Rat::one();
    for idx in 0..n {
        out.push(&a[idx] * &sum);
        // term k = idx of the sum, needed for b_{idx+1}
        let k = idx;
        if k >= start {
            let i = rat(k as i64);
            let den = c2.eval(&(&i - rat(1)));
            if den.is_zero() {
                return Err(Error::Pole(format!("c_2({})", k as i64 - 1)));
            }
            if k + 1 >= n {
                break;
            }
            if a[k + 1].is_zero() {
                return Err(Error::Pole(format!("a_{}", k + 1)));
            }
            prod *= Rat::one() + c1.eval(&(&i - rat(1))) / den * &a[k] / &a[k + 1];
        }
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        sum += sign * &prod;
    }
    Ok(out)
}

/// Whether `b` is a constant multiple of `a` on the common range.
pub fn is_proportional(a: &[Rat], b: &[Rat]) -> bool {
    let Some(r) = a.iter().position(|v| !v.is_zero()) else {
        return true;
    };
    a.iter().zip(b).all(|(x, y)| x * &b[r] == y * &a[r])
}

/// Tries `start = first, first+1, ...` until the result is not a multiple of `a`.
pub fn reduction_of_order_auto(l: &PolyOp, a: &[Rat], first: usize, tries: usize) -> Result<(usize, Vec<Rat>)> {
    for start in first..first + tries {
        match reduction_of_order(l, a, start) {
            Ok(b) if !is_proportional(a, &b) => return Ok((start, b)),
            Ok(_) | Err(Error::Pole(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate("reduction of order only reproduced the input".into()))
}
