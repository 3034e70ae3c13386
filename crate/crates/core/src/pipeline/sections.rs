use crate::algebra::Rat;
use crate::error::{Error, Result};

/// `out[j][k] = a[m*k + j]`
pub fn multisection(a: &[Rat], m: usize) -> Result<Vec<Vec<Rat>>> {
    if m == 0 {
        return Err(Error::DimensionMismatch("zero sections".into()));
    }
    Ok((0..m).map(|j| a.iter().skip(j).step_by(m).cloned().collect()).collect())
}

/// Inverse of [`multisection`]; stops at the first missing entry.
pub fn interlace(sections: &[Vec<Rat>]) -> Vec<Rat> {
    let m = sections.len();
    let mut out = Vec::new();
    'outer: for k in 0.. {
        for s in sections {
            match s.get(k) {
                Some(v) => out.push(v.clone()),
                None => break 'outer,
            }
        }
    }
    debug_assert!(m == 0 || out.len() >= sections.iter().map(|s| s.len()).min().unwrap_or(0) * m);
    out
}
