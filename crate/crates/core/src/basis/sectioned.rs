use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{rat, render_rat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// `u*k + v`
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Affine {
    pub u: Rat,
    pub v: Rat,
}

impl Affine {
    pub fn new(u: Rat, v: Rat) -> Self {
        Affine { u, v }
    }

    pub fn constant(v: Rat) -> Self {
        Affine { u: Rat::zero(), v }
    }

    pub fn at(&self, k: &Rat) -> Rat {
        &self.u * k + &self.v
    }

    /// `self(a*k + b)`
    pub fn compose(&self, a: &Rat, b: &Rat) -> Affine {
        Affine { u: &self.u * a, v: &self.u * b + &self.v }
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(Poly::linear(self.u.clone(), self.v.clone()))
    }

    pub fn render(&self, var: &str) -> String {
        Poly::linear(self.u.clone(), self.v.clone()).render(var)
    }
}

/// One step of a section: `P_{mk+j+1} = lead(k) * (x - rho(k)) * P_{mk+j}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionStep {
    pub rho: Affine,
    pub lead: RatFunc,
}

/// Factorial basis whose roots and leading-coefficient ratios are affine and
/// rational in `k` on each residue class of the index modulo `m`.
#[derive(Clone, PartialEq, Eq)]
pub struct SectionedBasis {
    steps: Vec<SectionStep>,
    p0: Rat,
    label: String,
}

impl SectionedBasis {
    pub fn new(steps: Vec<SectionStep>, p0: Rat, label: impl Into<String>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidBasis("a basis needs at least one section".into()));
        }
        if p0.is_zero() {
            return Err(Error::InvalidBasis("P_0 must be nonzero".into()));
        }
        if steps.iter().any(|s| s.lead.is_zero()) {
            return Err(Error::InvalidBasis("leading-coefficient ratio is zero".into()));
        }
        Ok(SectionedBasis { steps, p0, label: label.into() })
    }

    pub fn sections(&self) -> usize {
        self.steps.len()
    }

    pub fn steps(&self) -> &[SectionStep] {
        &self.steps
    }

    pub fn step(&self, j: usize) -> &SectionStep {
        &self.steps[j]
    }

    pub fn p0(&self) -> &Rat {
        &self.p0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Section and period index of step `t`.
    pub fn split(&self, t: usize) -> (usize, usize) {
        (t % self.sections(), t / self.sections())
    }

    /// Root added by step `t`, i.e. the root of `P_{t+1}` not in `P_t`.
    pub fn root(&self, t: usize) -> Rat {
        let (j, k) = self.split(t);
        self.steps[j].rho.at(&rat(k as i64))
    }

    pub fn lead_at(&self, t: usize) -> Result<Rat> {
        let (j, k) = self.split(t);
        let v = self.steps[j].lead.eval(&rat(k as i64))?;
        if v.is_zero() {
            return Err(Error::InvalidBasis(format!("leading-coefficient ratio vanishes at step {t}")));
        }
        Ok(v)
    }

    pub fn element(&self, n: usize) -> Result<Poly> {
        let mut p = Poly::constant(self.p0.clone());
        for t in 0..n {
            let f = Poly::linear(Rat::one(), -self.root(t)).scale(&self.lead_at(t)?);
            p = &p * &f;
        }
        Ok(p)
    }

    /// `P_0(x), ..., P_n(x)`.
    pub fn values_at(&self, x: &Rat, n: usize) -> Result<Vec<Rat>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = self.p0.clone();
        out.push(acc.clone());
        for t in 0..n {
            acc = acc * self.lead_at(t)? * (x - self.root(t));
            out.push(acc.clone());
        }
        Ok(out)
    }

    pub fn eval_element(&self, n: usize, x: &Rat) -> Result<Rat> {
        Ok(self.values_at(x, n)?.pop().unwrap())
    }

    /// Checks that every leading-coefficient ratio is finite and nonzero on
    /// the first `depth` periods.
    pub fn validate(&self, depth: usize) -> Result<()> {
        for t in 0..depth * self.sections() {
            self.lead_at(t)?;
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{} with {} section(s), P_0 = {}\n", self.label, self.sections(), render_rat(&self.p0));
        for (j, st) in self.steps.iter().enumerate() {
            s.push_str(&format!("  step {j}: root {}, ratio {}\n", st.rho.render("k"), st.lead.render("k")));
        }
        s
    }
}

impl fmt::Debug for SectionedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}
