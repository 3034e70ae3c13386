//! Serializable results shared by the command line and the C interface.

use serde::Serialize;

use crate::algebra::render_rat;
use crate::basis::SectionedBasis;
use crate::compat::{Compatibility, OpKind};
use crate::error::Result;
use crate::ore::{OreOp, PolyOp};
use crate::pipeline::{associated_matrix, sectioned_matrices, solve_section0, verify_on_values};

pub fn render_ore(op: &OreOp) -> String {
    op.render("k", "S")
}

/// `S^r + ...` with the leading coefficient divided out.
pub fn render_monic(op: &OreOp) -> String {
    match op.leading_coeff().inv() {
        Ok(i) => render_ore(&op.left_scale(&i)),
        Err(_) => render_ore(op),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub operator: OpKind,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    pub m: usize,
    pub alpha: Vec<Vec<String>>,
}

impl From<&Compatibility> for CompatReport {
    fn from(c: &Compatibility) -> Self {
        CompatReport { operator: c.operator, a: c.a, b: c.b, m: c.m, alpha: c.rendered() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    #[serde(rename = "RE")]
    pub re: Vec<Vec<String>>,
    #[serde(rename = "RX")]
    pub rx: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

pub fn matrix_report(l: Option<&PolyOp>, b: &SectionedBasis, fixed_a: Option<usize>) -> Result<MatrixReport> {
    let mats = sectioned_matrices(b, fixed_a)?;
    Ok(MatrixReport {
        re: mats.e.render("k", "S"),
        rx: mats.x.render("k", "S"),
        matrix: l.map(|l| associated_matrix(l, &mats).render("k", "S")),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionReport {
    pub section: usize,
    pub ratio: String,
    pub initial: String,
    pub closed_form_hint: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    /// Nothing to verify.
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub range: [usize; 2],
    pub status: Status,
    #[serde(skip)]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    pub first_column: Vec<String>,
    pub gcrd: String,
    /// Order of the canonical gcrd.
    #[serde(skip)]
    pub gcrd_order: i64,
    pub solutions: Vec<SolutionReport>,
    pub verification: Verification,
}

/// Runs the section-0 solver and checks every solution on `lo..=hi`.
/// A failed check is reported in `verification`, not as an error.
pub fn solve_report(
    l: &PolyOp,
    b: &SectionedBasis,
    (lo, hi): (usize, usize),
    fixed_a: Option<usize>,
    with_matrix: bool,
) -> Result<SolveReport> {
    let s = solve_section0(l, b, fixed_a)?;
    let ord = l.order().unwrap_or(0);
    let mut failure = None;
    let mut solutions = Vec::new();
    for sol in &s.solutions {
        if let Err(e) = sol.values(0, hi + ord).and_then(|y| verify_on_values(l, &y, lo, hi)) {
            failure.get_or_insert_with(|| e.to_string());
        }
        solutions.push(SolutionReport {
            section: sol.section,
            ratio: sol.coeff.ratio.render("k"),
            initial: render_rat(&sol.coeff.initial),
            closed_form_hint: sol.closed_form_hint(),
        });
    }
    let status = match (&failure, solutions.is_empty()) {
        (Some(_), _) => Status::Failed,
        (None, true) => Status::Skipped,
        (None, false) => Status::Ok,
    };
    Ok(SolveReport {
        matrix: with_matrix.then(|| associated_matrix(l, &s.mats).render("k", "S")),
        first_column: s.column.iter().map(render_ore).collect(),
        gcrd: render_monic(&s.gcrd),
        gcrd_order: s.gcrd.order().unwrap_or(0),
        solutions,
        verification: Verification { range: [lo, hi], status, failure },
    })
}
