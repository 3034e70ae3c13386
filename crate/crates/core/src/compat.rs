//! Expansion coefficients of `E` and `X` acting on a sectioned basis.

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{rat, render_rat, solve_linear_system, Rat, RatFunc};
use crate::basis::{e_compat_bound, shift_matching, shift_quotient_roots, SectionedBasis, DEFAULT_DEPTH};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum OpKind {
    E,
    X,
}

/// `L P_{mk+j} = sum_{i=-a}^{b} alpha[j][i+a](k) P_{mk+j+i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub operator: OpKind,
    pub a: usize,
    pub b: usize,
    pub m: usize,
    pub alpha: Vec<Vec<RatFunc>>,
}

impl Compatibility {
    pub fn alpha(&self, j: usize, i: i64) -> RatFunc {
        let idx = i + self.a as i64;
        if idx < 0 || idx > (self.a + self.b) as i64 {
            return RatFunc::zero();
        }
        self.alpha[j][idx as usize].clone()
    }

    /// Rendered coefficients, outer index the section, inner `i = -a..=b`.
    pub fn rendered(&self) -> Vec<Vec<String>> {
        self.alpha.iter().map(|r| r.iter().map(|f| f.render("k")).collect()).collect()
    }
}

pub fn x_compatibility(b: &SectionedBasis) -> Result<Compatibility> {
    let alpha = b.steps().iter().map(|s| Ok(vec![s.rho.as_ratfunc(), s.lead.inv()?])).collect::<Result<_>>()?;
    Ok(Compatibility { operator: OpKind::X, a: 0, b: 1, m: b.sections(), alpha })
}

/// Polynomials in `x` over Q(K), lowest degree first.
type XPoly = Vec<RatFunc>;

fn xmul_linear(p: &XPoly, lead: &RatFunc, root: &RatFunc) -> XPoly {
    let mut out = vec![RatFunc::zero(); p.len() + 1];
    for (l, c) in p.iter().enumerate() {
        let t = lead * c;
        out[l + 1] = &out[l + 1] + &t;
        out[l] = &out[l] - &(&t * root);
    }
    out
}

/// Solves for the `E` coefficients of section `j` with lag `a`, symbolically
/// in `k`.  `None` when `a` is too small.
fn e_section(b: &SectionedBasis, matching: &[(usize, i64)], j: usize, a: usize) -> Option<Vec<RatFunc>> {
    let roots = shift_quotient_roots(b, matching, j, a)?;
    let m = b.sections() as i64;
    let mut q: Vec<XPoly> = vec![vec![RatFunc::one()]];
    let mut lead_total = RatFunc::one();
    for s in 0..a as i64 {
        let off = j as i64 - a as i64 + s;
        let js = off.rem_euclid(m) as usize;
        let kk = off.div_euclid(m);
        let st = b.step(js);
        let lead = st.lead.shift(kk);
        let root = &st.rho.as_ratfunc().shift(kk);
        let next = xmul_linear(q.last().unwrap(), &lead, root);
        lead_total = &lead_total * &lead;
        q.push(next);
    }
    let mut r: XPoly = vec![lead_total];
    for aff in &roots {
        r = xmul_linear(&r, &RatFunc::one(), &aff.as_ratfunc());
    }
    let n = a + 1;
    let mat: Vec<Vec<RatFunc>> =
        (0..n).map(|l| (0..n).map(|s| q[s].get(l).cloned().unwrap_or_default()).collect()).collect();
    let rhs: Vec<RatFunc> = (0..n).map(|l| r.get(l).cloned().unwrap_or_default()).collect();
    solve_linear_system(&mat, &rhs).ok()
}

/// `E` expansion with the least lag found by retrying smaller values, or
/// with the given lag kept as is when `fixed` is set.
pub fn e_compatibility(b: &SectionedBasis, a_hint: Option<usize>, fixed: bool) -> Result<Compatibility> {
    let matching = shift_matching(b)
        .ok_or_else(|| Error::NoCompatibility(format!("{} has no shift-invariant roots", b.label())))?;
    let a0 = match a_hint {
        Some(a) => a,
        None => e_compat_bound(b, DEFAULT_DEPTH)
            .ok_or_else(|| Error::NoCompatibility(format!("no lag bound for {}", b.label())))?,
    };
    let solve =
        |a: usize| -> Option<Vec<Vec<RatFunc>>> { (0..b.sections()).map(|j| e_section(b, &matching, j, a)).collect() };
    let mut best = solve(a0).map(|al| (a0, al));
    if !fixed {
        let mut a = a0;
        while a > 0 {
            a -= 1;
            match solve(a) {
                Some(al) => best = Some((a, al)),
                None => break,
            }
        }
    }
    let (a, alpha) = best.ok_or_else(|| Error::NoCompatibility(format!("lag {a0} is too small for {}", b.label())))?;
    let c = Compatibility { operator: OpKind::E, a, b: 0, m: b.sections(), alpha };
    check_points(b, &c, (0..12).flat_map(|k| (0..b.sections()).map(move |j| (k, j, 2 * k as i64 - 3))))
        .map_err(|e| Error::NoCompatibility(format!("expansion fails on the prefix: {e}")))?;
    Ok(c)
}

/// Checks the defining identity at `(k, j, x)` triples.  Terms with negative
/// basis index are dropped before their coefficient is evaluated.
fn check_points(
    b: &SectionedBasis,
    c: &Compatibility,
    pts: impl IntoIterator<Item = (usize, usize, i64)>,
) -> Result<()> {
    let m = b.sections();
    for (k, j, x) in pts {
        let n = m * k + j;
        let xr = rat(x);
        let vals = b.values_at(&xr, n + c.b)?;
        let lhs = match c.operator {
            OpKind::E => b.eval_element(n, &(&xr + rat(1)))?,
            OpKind::X => &xr * &vals[n],
        };
        let mut rhs = Rat::zero();
        for i in -(c.a as i64)..=c.b as i64 {
            let idx = n as i64 + i;
            if idx < 0 {
                continue;
            }
            let v = &vals[idx as usize];
            if v.is_zero() {
                continue;
            }
            rhs += c.alpha(j, i).eval(&rat(k as i64))? * v;
        }
        if lhs != rhs {
            return Err(Error::Verification(format!(
                "section {j}, k={k}, x={x}: {} != {}",
                render_rat(&lhs),
                render_rat(&rhs)
            )));
        }
    }
    Ok(())
}

/// Checks the identity at `samples` random points with `k, x` in `0..=50`.
pub fn verify_compatibility(b: &SectionedBasis, c: &Compatibility, samples: usize, seed: u64) -> Result<()> {
    if c.m != b.sections() {
        return Err(Error::DimensionMismatch(format!("{} sections vs {}", c.m, b.sections())));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let pts: Vec<_> = (0..samples)
        .map(|_| (rng.gen_range(0..=50usize), rng.gen_range(0..b.sections()), rng.gen_range(0..=50i64)))
        .collect();
    check_points(b, c, pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::basis::{binomial_basis, product_basis};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn binomial_e_and_x() {
        let b = binomial_basis(rat(1), rat(0)).unwrap();
        let e = e_compatibility(&b, None, false).unwrap();
        assert_eq!(e.a, 1);
        assert_eq!(e.alpha[0], vec![RatFunc::one(), RatFunc::one()]);
        let x = x_compatibility(&b).unwrap();
        assert_eq!(x.alpha[0], vec![RatFunc::var(), rf(&[1, 1], &[1])]);
        verify_compatibility(&b, &e, 50, 1).unwrap();
        verify_compatibility(&b, &x, 50, 2).unwrap();
    }

    #[test]
    fn two_fold_product() {
        let b1 = binomial_basis(rat(1), rat(0)).unwrap();
        let b = product_basis(&[b1.clone(), b1]).unwrap();
        let e = e_compatibility(&b, None, false).unwrap();
        assert_eq!(e.a, 2);
        assert_eq!(e.alpha[0], vec![RatFunc::one(), RatFunc::int(2), RatFunc::one()]);
        assert_eq!(e.alpha[1], vec![rf(&[0, 1], &[1, 1]), rf(&[1, 2], &[1, 1]), RatFunc::one()]);
        verify_compatibility(&b, &e, 80, 3).unwrap();
    }

    #[test]
    fn larger_hint_is_minimized_unless_fixed() {
        let b = binomial_basis(rat(1), rat(0)).unwrap();
        assert_eq!(e_compatibility(&b, Some(3), false).unwrap().a, 1);
        let f = e_compatibility(&b, Some(3), true).unwrap();
        assert_eq!(f.a, 3);
        assert!(f.alpha(0, -3).is_zero() && f.alpha(0, -2).is_zero());
    }
}
