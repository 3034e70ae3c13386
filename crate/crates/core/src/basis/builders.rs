use num_integer::Integer;
use num_traits::{One, Zero};

use super::sectioned::{Affine, SectionStep, SectionedBasis};
use crate::algebra::{rat, render_rat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

fn nonzero(a: &Rat, what: &str) -> Result<()> {
    if a.is_zero() {
        return Err(Error::InvalidBasis(format!("{what} must be nonzero")));
    }
    Ok(())
}

fn single(rho: Affine, lead: RatFunc, label: String) -> Result<SectionedBasis> {
    SectionedBasis::new(vec![SectionStep { rho, lead }], Rat::one(), label)
}

/// `P_n = binom(a*x + b, n)`
pub fn binomial_basis(a: Rat, b: Rat) -> Result<SectionedBasis> {
    nonzero(&a, "a")?;
    let rho = Affine::new(a.recip(), -&b / &a);
    let lead = RatFunc::new(Poly::constant(a.clone()), Poly::from_ints(&[1, 1]))?;
    single(rho, lead, format!("binomial({},{})", render_rat(&a), render_rat(&b)))
}

/// `P_n = (a*x + b)^n`
pub fn power_basis(a: Rat, b: Rat) -> Result<SectionedBasis> {
    nonzero(&a, "a")?;
    let rho = Affine::constant(-&b / &a);
    single(rho, RatFunc::constant(a.clone()), format!("power({},{})", render_rat(&a), render_rat(&b)))
}

/// `P_n = (a*x + b)(a*x + b - c) ... (a*x + b - (n-1)c)`
pub fn falling_basis(a: Rat, b: Rat, c: Rat) -> Result<SectionedBasis> {
    nonzero(&a, "a")?;
    let rho = Affine::new(&c / &a, -&b / &a);
    let label = format!("falling({},{},{})", render_rat(&a), render_rat(&b), render_rat(&c));
    single(rho, RatFunc::constant(a), label)
}

/// Multiplies each ratio `P_{n+1}/P_n` by `ratio(n)` and `P_0` by `a0`.
pub fn scale_hypergeometric(b: &SectionedBasis, ratio: &RatFunc, a0: Rat) -> Result<SectionedBasis> {
    nonzero(&a0, "a0")?;
    if ratio.is_zero() {
        return Err(Error::InvalidBasis("scaling ratio must be nonzero".into()));
    }
    let m = rat(b.sections() as i64);
    let steps = b
        .steps()
        .iter()
        .enumerate()
        .map(|(j, s)| SectionStep { rho: s.rho.clone(), lead: &s.lead * &ratio.compose_affine(&m, &rat(j as i64)) })
        .collect();
    let label = format!("scale({},{},{})", b.label(), ratio.render("n"), render_rat(&a0));
    SectionedBasis::new(steps, b.p0() * &a0, label)
}

/// `Q_{Fk+j}` is the product of the first `j` factors at index `k+1` and the
/// rest at index `k`.
pub fn product_basis(factors: &[SectionedBasis]) -> Result<SectionedBasis> {
    let cycle: Vec<usize> = (1..=factors.len()).collect();
    let label = format!("product({})", factors.iter().map(|f| f.label()).collect::<Vec<_>>().join(","));
    Ok(shuffled_basis(factors, &cycle)?.with_label(label))
}

/// Shuffled product: step `r` of every period advances factor `cycle[r]`
/// (factors are numbered from 1).
pub fn shuffled_basis(factors: &[SectionedBasis], cycle: &[usize]) -> Result<SectionedBasis> {
    if factors.is_empty() || cycle.is_empty() {
        return Err(Error::InvalidBasis("shuffle needs factors and a nonempty cycle".into()));
    }
    if let Some(&bad) = cycle.iter().find(|&&c| c == 0 || c > factors.len()) {
        return Err(Error::InvalidBasis(format!("cycle entry {bad} is out of range")));
    }
    let m = cycle.len();
    let count = |i: usize, upto: usize| cycle[..upto].iter().filter(|&&c| c == i + 1).count();
    // Period multiplier so that every factor's index is affine in k.
    let mut t = 1usize;
    for (i, f) in factors.iter().enumerate() {
        let s = count(i, m);
        if s > 0 {
            let ti = f.sections();
            t = t.lcm(&(ti / ti.gcd(&s)));
        }
    }
    let mut steps = Vec::with_capacity(m * t);
    for j0 in 0..t {
        for (j1, &ci) in cycle.iter().enumerate() {
            let i = ci - 1;
            let f = &factors[i];
            let tc = f.sections();
            let sm = count(i, m);
            let ac = t * sm / tc;
            let off = j0 * sm + count(i, j1);
            let (j2, j3) = (off / tc, off % tc);
            let st = f.step(j3);
            let (a, b) = (rat(ac as i64), rat(j2 as i64));
            steps.push(SectionStep { rho: st.rho.compose(&a, &b), lead: st.lead.compose_affine(&a, &b) });
        }
    }
    let p0 = factors.iter().fold(Rat::one(), |acc, f| acc * f.p0());
    let label = format!(
        "shuffle([{}],[{}])",
        factors.iter().map(|f| f.label()).collect::<Vec<_>>().join(","),
        cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    );
    SectionedBasis::new(steps, p0, label)
}

/// Basis whose elements at indices `m*n` are `binom(a*x + b*n + c, m*n)`,
/// built as a product of falling bases rescaled by `1/(n+1)`.
pub fn generalized_binomial(a: Rat, b: i64, c: Rat, m: usize) -> Result<SectionedBasis> {
    nonzero(&a, "a")?;
    let mi = m as i64;
    if m == 0 || b < 0 || b > mi {
        return Err(Error::InvalidBasis(format!("genbinom needs m >= 1 and 0 <= b <= m, got b={b}, m={m}")));
    }
    let mut factors = Vec::with_capacity(m);
    for l in 0..mi - b {
        factors.push(falling_basis(a.clone(), &c - rat(l), rat(mi - b))?);
    }
    for i in 1..=b {
        factors.push(falling_basis(a.clone(), &c + rat(i), rat(-b))?);
    }
    let prod = product_basis(&factors)?;
    let ratio = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]))?;
    let label = format!("genbinom({},{},{},{})", render_rat(&a), b, render_rat(&c), m);
    Ok(scale_hypergeometric(&prod, &ratio, Rat::one())?.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binomial;

    #[test]
    fn binomial_elements() {
        let b = binomial_basis(rat(2), rat(1)).unwrap();
        for n in 0..6 {
            for x in -3..5 {
                let top = rat(2 * x + 1);
                assert_eq!(b.eval_element(n, &rat(x)).unwrap(), binomial(&top, n as i64));
            }
        }
    }

    #[test]
    fn genbinom_even_elements() {
        let b = generalized_binomial(rat(1), 1, rat(0), 2).unwrap();
        assert_eq!(b.sections(), 2);
        for n in 0..5i64 {
            for x in -4..6i64 {
                let want = binomial(&rat(x + n), 2 * n);
                assert_eq!(b.eval_element(2 * n as usize, &rat(x)).unwrap(), want);
                let odd = binomial(&rat(x + n), 2 * n + 1);
                assert_eq!(b.eval_element(2 * n as usize + 1, &rat(x)).unwrap(), odd);
            }
        }
    }

    #[test]
    fn shuffle_roots_match_cycle() {
        let b1 = binomial_basis(rat(1), rat(0)).unwrap();
        let b2 = generalized_binomial(rat(1), 1, rat(0), 2).unwrap();
        let s = shuffled_basis(&[b1, b2], &[2, 1, 2]).unwrap();
        let roots: Vec<Rat> = (0..9).map(|t| s.root(t)).collect();
        let want: Vec<Rat> = [0, 0, -1, 1, 1, -2, 2, 2, -3].iter().map(|&v| rat(v)).collect();
        assert_eq!(roots, want);
    }

    #[test]
    fn shuffle_with_multi_section_factor_widens_period() {
        let b2 = generalized_binomial(rat(1), 1, rat(0), 2).unwrap();
        let b1 = binomial_basis(rat(1), rat(0)).unwrap();
        // Factor 1 advances once per period of length 2, so its index
        // alternates between sections.
        let s = shuffled_basis(&[b2.clone(), b1.clone()], &[1, 2]).unwrap();
        assert_eq!(s.sections(), 4);
        for n in 0..12usize {
            let (e1, e2) = (n.div_ceil(2), n / 2);
            for x in -2..4 {
                let x = rat(x);
                let want = b2.eval_element(e1, &x).unwrap() * b1.eval_element(e2, &x).unwrap();
                assert_eq!(s.eval_element(n, &x).unwrap(), want);
            }
        }
    }
}
