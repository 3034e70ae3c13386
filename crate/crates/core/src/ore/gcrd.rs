use super::modular::gcrd2_modular;
use super::op::OreOp;
use crate::algebra::{gcd_numers, lcm_denoms, rat, Poly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Right Euclidean division `a = q b + r` with `ord r < ord b`.
///
/// Both operands must be polynomial in the shift (co-order >= 0).
pub fn right_divmod(a: &OreOp, b: &OreOp) -> Result<(OreOp, OreOp)> {
    let db = b.order().ok_or(Error::DivisionByZero)?;
    if a.coorder().is_some_and(|c| c < 0) || b.coorder().unwrap() < 0 {
        return Err(Error::Degenerate("right division needs nonnegative powers of the shift".into()));
    }
    let lb = b.leading_coeff();
    let mut q = OreOp::zero();
    let mut r = a.clone();
    while let Some(dr) = r.order() {
        if dr < db {
            break;
        }
        let d = dr - db;
        let t = OreOp::term((&r.leading_coeff() / &lb.shift(d))?, d);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Ok((q, r))
}

/// Greatest common right divisor in canonical form.  Negative exponents are
/// cleared first; zero operands are skipped.
pub fn gcrd(ops: &[OreOp]) -> Result<OreOp> {
    let mut it = ops.iter().filter(|o| !o.is_zero()).map(|o| o.clear_negative().canonical());
    let Some(mut g) = it.next() else {
        return Err(Error::EmptyInput);
    };
    for o in it {
        g = gcrd2(&g, &o)?;
    }
    Ok(g)
}

fn gcrd2(a: &OreOp, b: &OreOp) -> Result<OreOp> {
    let (a, b) = (dense_polys(a), dense_polys(b));
    let divides = |g: &[Poly]| {
        let g = primitive_part(g.to_vec());
        pseudo_rem(&a, &g).is_empty() && pseudo_rem(&b, &g).is_empty()
    };
    let g = match gcrd2_modular(&a, &b, divides) {
        Some(g) => g,
        None => gcrd2_exact(a, b),
    };
    Ok(OreOp::from_dense(0, g.into_iter().map(RatFunc::from_poly).collect()).canonical())
}

fn gcrd2_exact(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive_part(r);
    }
    a
}

/// Coefficients of a canonical operator (co-order 0, polynomial entries).
fn dense_polys(op: &OreOp) -> Vec<Poly> {
    op.dense().1.iter().map(|f| f.num().clone()).collect()
}

/// Fraction-free right pseudo-remainder over `Z[k]<S>`: repeatedly
/// replaces `a` by `lb(k+d) a - la(k) S^d b`.
fn pseudo_rem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let d = r.len() - 1 - db;
        let la = r.last().unwrap().clone();
        let lb = b[db].shift(&rat(d as i64));
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + d] = &r[i + d] - &(&la * &bi.shift(&rat(d as i64)));
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Divides out the polynomial and integer content; the result has co-order 0.
fn primitive_part(mut r: Vec<Poly>) -> Vec<Poly> {
    let lead = r.iter().take_while(|c| c.is_zero()).count();
    r.drain(..lead);
    if r.is_empty() {
        return r;
    }
    let mut order: Vec<&Poly> = r.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| c.degree());
    let mut g = Poly::zero();
    for c in order {
        g = Poly::gcd(&g, c);
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        r = r.iter().map(|c| c.div_exact(&g).unwrap()).collect();
    }
    let all: Vec<Rat> = r.iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
    let s = Rat::new(lcm_denoms(&all), gcd_numers(&all));
    r.iter().map(|c| c.scale(&s)).collect()
}
