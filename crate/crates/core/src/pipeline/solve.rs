use num_traits::{One, Zero};

use super::matrices::{associated_column, sectioned_matrices, SectionMatrices};
use crate::algebra::{rat, render_rat, Rat, RatFunc};
use crate::basis::{quasi_triangular_witness, SectionedBasis};
use crate::error::{Error, Result};
use crate::ore::{gcrd, OreOp, PolyOp};

/// `c_k = 0` for `k < start`, `c_start = initial`, `c_{k+1} = ratio(k) c_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeomTerm {
    pub ratio: RatFunc,
    pub initial: Rat,
    pub start: usize,
}

impl HypergeomTerm {
    pub fn new(ratio: RatFunc, initial: Rat) -> Self {
        HypergeomTerm { ratio, initial, start: 0 }
    }

    /// `c_0, ..., c_{n-1}`
    pub fn terms(&self, n: usize) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); n];
        let mut c = self.initial.clone();
        for (k, slot) in out.iter_mut().enumerate().skip(self.start) {
            *slot = c.clone();
            if c.is_zero() {
                break;
            }
            c *= self.ratio.eval(&rat(k as i64))?;
        }
        Ok(out)
    }
}

/// Sequence `y_n = sum_k c_k P_{mk+section}(n)`.
#[derive(Clone, Debug)]
pub struct SolutionDescriptor {
    pub section: usize,
    pub coeff: HypergeomTerm,
    pub basis: SectionedBasis,
}

impl SolutionDescriptor {
    /// `y_lo, ..., y_hi`
    pub fn values(&self, lo: usize, hi: usize) -> Result<Vec<Rat>> {
        let w = quasi_triangular_witness(&self.basis, hi + 1)?;
        let m = self.basis.sections();
        let kmax = w.f(hi) / m + 1;
        let c = self.coeff.terms(kmax + 1)?;
        (lo..=hi)
            .map(|n| {
                let top = w.f(n);
                let vals = self.basis.values_at(&rat(n as i64), top)?;
                let mut acc = Rat::zero();
                let mut k = 0;
                while m * k + self.section <= top {
                    if !c[k].is_zero() {
                        acc += &c[k] * &vals[m * k + self.section];
                    }
                    k += 1;
                }
                Ok(acc)
            })
            .collect()
    }

    /// A short human-readable description of the coefficient sequence.
    pub fn closed_form_hint(&self) -> String {
        format!(
            "c_(k+1)/c_k = {}, c_0 = {}, y_n = sum_k c_k P_({}k+{})(n)",
            self.coeff.ratio.render("k"),
            render_rat(&self.coeff.initial),
            self.basis.sections(),
            self.section
        )
    }
}

pub fn evaluate_solution(sol: &SolutionDescriptor, n: usize) -> Result<Rat> {
    Ok(sol.values(n, n)?.pop().unwrap())
}

/// Checks `(L y)(n) = 0` for `n` in `lo..=hi`.
pub fn verify_annihilation(l: &PolyOp, y: &dyn Fn(i64) -> Rat, lo: i64, hi: i64) -> Result<()> {
    for n in lo..=hi {
        let v = l.apply_with(y, n);
        if !v.is_zero() {
            return Err(Error::Verification(format!("(L y)({n}) = {}", render_rat(&v))));
        }
    }
    Ok(())
}

/// Verification over a slice holding `y_0, y_1, ...`.
pub fn verify_on_values(l: &PolyOp, y: &[Rat], lo: usize, hi: usize) -> Result<()> {
    let ord = l.order().unwrap_or(0);
    if hi + ord >= y.len() {
        return Err(Error::WindowTooShort { needed: (hi + ord) as i64, len: y.len() });
    }
    verify_annihilation(l, &|n| y[n as usize].clone(), lo as i64, hi as i64)
}

#[derive(Clone, Debug)]
pub struct SectionSolve {
    pub mats: SectionMatrices,
    pub column: Vec<OreOp>,
    pub gcrd: OreOp,
    pub solutions: Vec<SolutionDescriptor>,
}

/// Hypergeometric coefficient sequences supported on one section.
///
/// The gcrd of the nonzero column entries decides the outcome: order 1 gives
/// one solution, order 0 none, and higher orders are returned unsolved.
pub fn solve_section(l: &PolyOp, b: &SectionedBasis, section: usize, fixed_a: Option<usize>) -> Result<SectionSolve> {
    let mats = sectioned_matrices(b, fixed_a)?;
    let column = associated_column(l, &mats, section)?;
    let g = gcrd(&column)?;
    let mut solutions = Vec::new();
    if g.order() == Some(1) {
        let p = g.coeff(1);
        let q = -g.coeff(0);
        let ratio = (&q / &p)?;
        let sol = SolutionDescriptor { section, coeff: HypergeomTerm::new(ratio, Rat::one()), basis: b.clone() };
        let c = sol.coeff.terms(40)?;
        if column.iter().all(|op| (0..30).all(|k| op.apply_at(&c, k).is_ok_and(|v| v.is_zero()))) {
            solutions.push(sol);
        }
    }
    Ok(SectionSolve { mats, column, gcrd: g, solutions })
}

pub fn solve_section0(l: &PolyOp, b: &SectionedBasis, fixed_a: Option<usize>) -> Result<SectionSolve> {
    solve_section(l, b, 0, fixed_a)
}
