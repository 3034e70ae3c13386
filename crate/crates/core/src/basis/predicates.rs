use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::sectioned::{Affine, SectionedBasis};
use crate::algebra::{as_i64, rat, Rat};
use crate::error::{Error, Result};

/// Certificate that every natural number `n` is a root of the basis and first
/// appears at step `f(n)`, with `f` strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtWitness {
    /// Residue period of `f` beyond `stable_from`.
    pub period: usize,
    /// `f(n + period) - f(n)` for `n >= stable_from`.
    pub stride: usize,
    pub stable_from: usize,
    /// `f(0), f(1), ...` up to at least `stable_from + period`.
    pub prefix: Vec<usize>,
}

impl QtWitness {
    pub fn f(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            return self.prefix[n];
        }
        let d = n - self.stable_from;
        self.prefix[self.stable_from + d % self.period] + (d / self.period) * self.stride
    }

    /// Average growth `f(n)/n`.
    pub fn slope(&self) -> Rat {
        Rat::new((self.stride as i64).into(), (self.period as i64).into())
    }
}

fn nonneg_int(r: &Rat) -> Option<usize> {
    as_i64(r).and_then(|v| usize::try_from(v).ok())
}

/// First step whose root is `n`, if any.
fn first_step_with_root(b: &SectionedBasis, n: &Rat) -> Option<usize> {
    let m = b.sections();
    b.steps()
        .iter()
        .enumerate()
        .filter_map(|(j, st)| {
            let k = if st.rho.u.is_zero() {
                (st.rho.v == *n).then_some(0)?
            } else {
                nonneg_int(&((n - &st.rho.v) / &st.rho.u))?
            };
            Some(m * k + j)
        })
        .min()
}

pub fn quasi_triangular_witness(b: &SectionedBasis, depth: usize) -> Result<QtWitness> {
    let m = b.sections();
    let fams: Vec<&Affine> = b.steps().iter().map(|s| &s.rho).collect();
    let rising: Vec<usize> = (0..m).filter(|&j| fams[j].u.is_positive()).collect();
    if rising.is_empty() {
        return Err(Error::NotQuasiTriangular("no root family grows with k".into()));
    }
    let period = rising.iter().fold(1u64, |acc, &j| {
        let num = fams[j].u.numer().to_u64().unwrap_or(1);
        acc.lcm(&num)
    }) as usize;
    // Past every finite family and past the point where the lowest-slope
    // candidate wins for each residue.
    let mut stable = 0i64;
    for a in &fams {
        stable = stable.max(a.v.floor().to_integer().to_i64().unwrap_or(0) + 1);
    }
    for &i in &rising {
        for &j in &rising {
            // index_j(n) = m (n - v_j)/u_j + j
            let si = rat(m as i64) / &fams[i].u;
            let sj = rat(m as i64) / &fams[j].u;
            if si < sj {
                let bi = rat(i as i64) - &si * &fams[i].v;
                let bj = rat(j as i64) - &sj * &fams[j].v;
                let cross = (bi - bj) / (sj - si);
                stable = stable.max(cross.ceil().to_integer().to_i64().unwrap_or(0) + 1);
            }
        }
    }
    let stable = stable.max(0) as usize;
    let limit = depth.max(stable + 2 * period + 1);
    let mut prefix = Vec::with_capacity(limit);
    for n in 0..limit {
        let f = first_step_with_root(b, &rat(n as i64))
            .ok_or_else(|| Error::NotQuasiTriangular(format!("{n} is never a root")))?;
        if let Some(&prev) = prefix.last() {
            if f <= prev {
                return Err(Error::NotQuasiTriangular(format!(
                    "root {n} first appears at step {f}, not after root {} (step {prev})",
                    n - 1
                )));
            }
        }
        prefix.push(f);
    }
    let stride = prefix[stable + period] - prefix[stable];
    for n in stable..stable + period {
        if prefix[n + period] - prefix[n] != stride {
            return Err(Error::NotQuasiTriangular(format!("first appearances grow unevenly near {n}")));
        }
    }
    Ok(QtWitness { period, stride, stable_from: stable, prefix })
}

pub fn is_quasi_triangular(b: &SectionedBasis, depth: usize) -> bool {
    quasi_triangular_witness(b, depth).is_ok()
}

/// Pairs each root family `j` with a family `p` and an integer `d` such that
/// `rho_j(k) - 1 = rho_p(k - d)`, as a bijection on families.
pub(crate) fn shift_matching(b: &SectionedBasis) -> Option<Vec<(usize, i64)>> {
    let fams: Vec<&Affine> = b.steps().iter().map(|s| &s.rho).collect();
    let m = fams.len();
    let cand: Vec<Vec<(usize, i64)>> = (0..m)
        .map(|j| {
            let a = fams[j];
            if a.u.is_zero() {
                return Vec::new();
            }
            (0..m)
                .filter_map(|p| {
                    let q = fams[p];
                    if q.u != a.u {
                        return None;
                    }
                    let d = (&q.v - &a.v + rat(1)) / &a.u;
                    as_i64(&d).map(|d| (p, d))
                })
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; m];
    fn augment(j: usize, cand: &[Vec<(usize, i64)>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &(p, _) in &cand[j] {
            if seen[p] {
                continue;
            }
            seen[p] = true;
            if owner[p].is_none() || augment(owner[p].unwrap(), cand, seen, owner) {
                owner[p] = Some(j);
                return true;
            }
        }
        false
    }
    for j in 0..m {
        let mut seen = vec![false; m];
        if !augment(j, &cand, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out = vec![(0, 0); m];
    for (p, o) in owner.iter().enumerate() {
        let j = o.unwrap();
        let d = cand[j].iter().find(|c| c.0 == p).unwrap().1;
        out[j] = (p, d);
    }
    Some(out)
}

/// Roots of `P_{mK+j}(x+1) / P_{mK+j-a}(x)` as affine functions of `K`, for
/// generic `K`.  `None` when the quotient is not a polynomial.
pub(crate) fn shift_quotient_roots(
    b: &SectionedBasis,
    matching: &[(usize, i64)],
    j: usize,
    a: usize,
) -> Option<Vec<Affine>> {
    let m = b.sections() as i64;
    let ceil_div = |p: i64, q: i64| -(-p).div_euclid(q);
    let fam = |p: usize, k: Affine| -> Affine {
        let r = &b.step(p).rho;
        Affine::new(&r.u * &k.u, &r.u * &k.v + &r.v)
    };
    let mut num: BTreeMap<(Rat, Rat), i64> = BTreeMap::new();
    let mut add = |aff: Affine, w: i64| {
        *num.entry((aff.u, aff.v)).or_insert(0) += w;
    };
    let ji = j as i64;
    for (jp, &(p, d)) in matching.iter().enumerate() {
        // Numerator family p over [-d, K + b1), denominator over [0, K + b2).
        let b1 = ceil_div(ji - jp as i64, m) - d;
        let b2 = ceil_div(ji - a as i64 - p as i64, m);
        for kk in -d..0 {
            add(fam(p, Affine::constant(rat(kk))), 1);
        }
        for kk in 0..-d {
            add(fam(p, Affine::constant(rat(kk))), -1);
        }
        for e in b2..b1 {
            add(fam(p, Affine::new(rat(1), rat(e))), 1);
        }
        for e in b1..b2 {
            add(fam(p, Affine::new(rat(1), rat(e))), -1);
        }
    }
    let mut out = Vec::with_capacity(a);
    for ((u, v), w) in num {
        if w < 0 {
            return None;
        }
        for _ in 0..w {
            out.push(Affine::new(u.clone(), v.clone()));
        }
    }
    (out.len() == a).then_some(out)
}

/// `[rho_1+1, ..., rho_k+1]` is contained in `[rho_1, ..., rho_{k+a}]` as
/// multisets for all `k <= depth`.
fn shifted_inclusion_on_prefix(b: &SectionedBasis, a: usize, depth: usize) -> bool {
    let mut diff: BTreeMap<Rat, i64> = BTreeMap::new();
    let mut negative = 0usize;
    let mut bump = |diff: &mut BTreeMap<Rat, i64>, r: Rat, w: i64| {
        let e = diff.entry(r).or_insert(0);
        let before = *e < 0;
        *e += w;
        let after = *e < 0;
        match (before, after) {
            (false, true) => negative += 1,
            (true, false) => negative -= 1,
            _ => {}
        }
        negative
    };
    for t in 0..a {
        bump(&mut diff, b.root(t), 1);
    }
    for k in 0..depth {
        bump(&mut diff, b.root(k + a), 1);
        if bump(&mut diff, b.root(k) + rat(1), -1) > 0 {
            return false;
        }
    }
    true
}

/// Least `A` with the shifted root inclusion; `None` if the basis is not
/// E-compatible.
pub fn e_compat_bound(b: &SectionedBasis, depth: usize) -> Option<usize> {
    let matching = shift_matching(b)?;
    let m = b.sections();
    let dmax = matching.iter().map(|&(_, d)| d.unsigned_abs() as usize).max().unwrap_or(0);
    let cap = m * (dmax + 3);
    (0..=cap).find(|&a| {
        (0..m).all(|j| shift_quotient_roots(b, &matching, j, a).is_some()) && shifted_inclusion_on_prefix(b, a, depth)
    })
}

pub fn is_e_compatible(b: &SectionedBasis, depth: usize) -> bool {
    e_compat_bound(b, depth).is_some()
}

/// Least `p` with `{rho_1..rho_n}` contained in `{rho_{n+1}..rho_{n+p}}` for
/// all `n`; only bases with finitely many distinct roots qualify.
pub fn d_compat_degree(b: &SectionedBasis, depth: usize) -> Option<usize> {
    if b.steps().iter().any(|s| !s.rho.u.is_zero()) {
        return None;
    }
    let m = b.sections();
    let depth = depth.max(2 * m);
    let roots: Vec<Rat> = (0..depth + m).map(|t| b.root(t)).collect();
    (1..=m).find(|&p| {
        (1..depth).all(|n| {
            let later: BTreeSet<&Rat> = roots[n..n + p].iter().collect();
            roots[..n].iter().all(|r| later.contains(r))
        })
    })
}

pub fn is_d_compatible(b: &SectionedBasis, depth: usize) -> bool {
    d_compat_degree(b, depth).is_some()
}
