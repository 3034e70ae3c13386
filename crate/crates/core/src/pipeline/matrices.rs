use num_traits::Zero;

use crate::algebra::{Poly, RatFunc};
use crate::basis::SectionedBasis;
use crate::compat::{e_compatibility, x_compatibility, Compatibility};
use crate::error::{Error, Result};
use crate::ore::{OreMatrix, OreOp, PolyOp};

/// Matrix of a compatible operator on the sections:
/// `L_{r,j} = sum_{i : i+j = r mod m} alpha_{k+s,j,i} S^s`, `s = (r-i-j)/m`.
pub fn sectioned_matrix(c: &Compatibility) -> OreMatrix {
    let m = c.m as i64;
    let mut out = OreMatrix::zero(c.m);
    for j in 0..c.m {
        for i in -(c.a as i64)..=c.b as i64 {
            let f = c.alpha(j, i);
            if f.is_zero() {
                continue;
            }
            let r = (i + j as i64).rem_euclid(m);
            let s = (r - i - j as i64) / m;
            let cur = out.get(r as usize, j).clone();
            out.set(r as usize, j, &cur + &OreOp::term(f.shift(s), s));
        }
    }
    out
}

/// Matrices of `E` and `X` over the basis.
#[derive(Clone, Debug)]
pub struct SectionMatrices {
    pub e: OreMatrix,
    pub x: OreMatrix,
    pub e_compat: Compatibility,
    pub x_compat: Compatibility,
}

pub fn sectioned_matrices(b: &SectionedBasis, fixed_a: Option<usize>) -> Result<SectionMatrices> {
    let e_compat = e_compatibility(b, fixed_a, fixed_a.is_some())?;
    let x_compat = x_compatibility(b)?;
    Ok(SectionMatrices { e: sectioned_matrix(&e_compat), x: sectioned_matrix(&x_compat), e_compat, x_compat })
}

fn poly_of_matrix(p: &Poly, pow: &[OreMatrix], m: usize) -> OreMatrix {
    let mut acc = OreMatrix::zero(m);
    for (l, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = OreMatrix::scalar(m, &RatFunc::constant(c.clone()));
        acc = &acc + &(&s * &pow[l]);
    }
    acc
}

/// Image of `L = sum p_i(x) E^i` under `E -> [E]`, `x -> [X]`.
pub fn associated_matrix(l: &PolyOp, mats: &SectionMatrices) -> OreMatrix {
    let m = mats.e.size();
    let deg = l.degree().unwrap_or(0);
    let mut xp = vec![OreMatrix::identity(m)];
    for _ in 0..deg {
        let next = xp.last().unwrap() * &mats.x;
        xp.push(next);
    }
    let mut acc = OreMatrix::zero(m);
    let mut ep = OreMatrix::identity(m);
    for (i, p) in l.coeffs().iter().enumerate() {
        if i > 0 {
            ep = &ep * &mats.e;
        }
        if !p.is_zero() {
            acc = &acc + &(&poly_of_matrix(p, &xp, m) * &ep);
        }
    }
    acc
}

/// Column `j` of the associated matrix using matrix-vector products only.
pub fn associated_column(l: &PolyOp, mats: &SectionMatrices, j: usize) -> Result<Vec<OreOp>> {
    let m = mats.e.size();
    if j >= m {
        return Err(Error::DimensionMismatch(format!("column {j} of a {m}x{m} matrix")));
    }
    let mut v: Vec<OreOp> = (0..m).map(|r| if r == j { OreOp::one() } else { OreOp::zero() }).collect();
    let mut acc = vec![OreOp::zero(); m];
    for (i, p) in l.coeffs().iter().enumerate() {
        if i > 0 {
            v = mats.e.mul_vec(&v);
        }
        let Some(d) = p.degree() else { continue };
        // Horner in [X] applied to the vector.
        let scaled = |c: &crate::algebra::Rat, v: &[OreOp]| -> Vec<OreOp> {
            let f = RatFunc::constant(c.clone());
            v.iter().map(|o| o.left_scale(&f)).collect()
        };
        let mut w = scaled(&p.coeff(d), &v);
        for lidx in (0..d).rev() {
            let xw = mats.x.mul_vec(&w);
            let cv = scaled(&p.coeff(lidx), &v);
            w = xw.iter().zip(&cv).map(|(a, b)| a + b).collect();
        }
        acc = acc.iter().zip(&w).map(|(a, b)| a + b).collect();
    }
    Ok(acc)
}

pub fn first_column(l: &PolyOp, mats: &SectionMatrices) -> Vec<OreOp> {
    associated_column(l, mats, 0).expect("column 0 exists")
}

/// The single entry of the associated matrix over a one-section basis.
pub fn associated_operator(l: &PolyOp, b: &SectionedBasis) -> Result<OreOp> {
    if b.sections() != 1 {
        return Err(Error::DimensionMismatch(format!("{} has {} sections, expected 1", b.label(), b.sections())));
    }
    let mats = sectioned_matrices(b, None)?;
    Ok(first_column(l, &mats).pop().unwrap())
}

/// Reads a shift operator back as a polynomial operator: negative powers
/// cleared, denominators and content removed, `k` renamed to `x`.
pub fn promote(op: &OreOp) -> Result<PolyOp> {
    let c = op.clear_negative();
    let Some(lo) = c.coorder() else {
        return Ok(PolyOp::zero());
    };
    PolyOp::from_ore(&c.canonical().shift_left(lo))
}
