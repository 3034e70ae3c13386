use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fbm::algebra::{parse_rat, render_rat, Rat};
use fbm::basis::{
    e_compat_bound, expand_sequence, is_d_compatible, is_e_compatible, quasi_triangular_witness, SectionedBasis,
    DEFAULT_DEPTH,
};
use fbm::compat::{e_compatibility, x_compatibility};
use fbm::ore::PolyOp;
use fbm::pipeline::{promote, verify_on_values};
use fbm::report::{matrix_report, solve_report, CompatReport};
use fbm::syntax::{parse_basis, parse_ore, parse_poly_op, BasisSpec, SeqExpr, ORE_DIALECT};
use fbm::Error;

const EXIT_OTHER: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_NO_COMPAT: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(name = "fbm", version, about = "Recurrences for definite sums over factorial bases")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Elements, roots and structural predicates of a basis.
    Basis {
        #[command(flatten)]
        basis: BasisArg,
        /// Periods inspected by the prefix checks.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Number of elements to print.
        #[arg(long, default_value_t = 6)]
        elements: usize,
    },
    /// Expansion coefficients of E or X.
    Compat {
        #[command(flatten)]
        basis: BasisArg,
        #[arg(long, value_enum, ignore_case = true, default_value_t = Which::E)]
        operator: Which,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long = "fixed-A")]
        fixed_a: Option<usize>,
    },
    /// Operator matrices [RE], [RX] and, with --op, [RL].
    Matrix {
        #[command(flatten)]
        basis: BasisArg,
        #[arg(long)]
        op: Option<String>,
        #[arg(long = "fixed-A")]
        fixed_a: Option<usize>,
    },
    /// Hypergeometric solutions supported on section 0.
    Solve {
        #[command(flatten)]
        basis: BasisArg,
        #[arg(long)]
        op: String,
        #[arg(long = "verify-range", default_value = "0..30")]
        range: String,
        #[arg(long = "fixed-A")]
        fixed_a: Option<usize>,
        /// Include [RL] in the output.
        #[arg(long)]
        with_matrix: bool,
    },
    /// Checks that an operator in x, E annihilates a sequence.
    Verify {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long = "verify-range", default_value = "0..30")]
        range: String,
    },
    /// Coefficients of a sequence in a quasi-triangular basis.
    Expand {
        #[command(flatten)]
        basis: BasisArg,
        #[command(flatten)]
        seq: SeqArg,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Reads an operator in k, S as one in x, E.
    Promote {
        #[arg(long)]
        op: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    E,
    X,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BasisArg {
    /// Basis in the textual form, e.g. "product(binomial(1,0),binomial(1,0))".
    #[arg(long)]
    basis: Option<String>,
    /// Basis as JSON.
    #[arg(long)]
    basis_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SeqArg {
    /// Closed form in n, e.g. "sum(k,0,n,binom(n,k)^3)".
    #[arg(long)]
    seq: Option<String>,
    /// Terms y_0, y_1, ... separated by whitespace or commas.
    #[arg(long)]
    seq_file: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Io(String),
    /// Message plus the report gathered before the failure.
    Verify(String, Option<(String, Value)>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(m) => Failure::Verify(m, None),
            e => Failure::Lib(e),
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Parse { .. }) => EXIT_PARSE,
            Failure::Lib(Error::NoCompatibility(_)) => EXIT_NO_COMPAT,
            Failure::Verify(..) => EXIT_VERIFY,
            _ => EXIT_OTHER,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
            Failure::Verify(m, _) => format!("verification failed: {m}"),
        }
    }
}

type Out = Result<(String, Value), Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let res = match &cli.cmd {
        Cmd::Basis { basis, depth, elements } => cmd_basis(basis, *depth, *elements),
        Cmd::Compat { basis, operator, depth, fixed_a } => cmd_compat(basis, *operator, *depth, *fixed_a),
        Cmd::Matrix { basis, op, fixed_a } => cmd_matrix(basis, op.as_deref(), *fixed_a),
        Cmd::Solve { basis, op, range, fixed_a, with_matrix } => cmd_solve(basis, op, range, *fixed_a, *with_matrix),
        Cmd::Verify { op, seq, range } => cmd_verify(op, seq, range),
        Cmd::Expand { basis, seq, terms } => cmd_expand(basis, seq, *terms),
        Cmd::Promote { op } => cmd_promote(op),
    };
    match res {
        Ok((text, value)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                print!("{text}");
            }
            0
        }
        Err(f) => {
            if let Failure::Verify(_, Some((text, value))) = &f {
                if cli.json {
                    println!("{}", serde_json::to_string_pretty(value).unwrap());
                } else {
                    print!("{text}");
                }
            } else if cli.json {
                println!("{}", json!({ "error": f.message(), "exit": f.code() }));
            }
            eprintln!("fbm: {}", f.message());
            f.code()
        }
    }
}

fn load_basis(a: &BasisArg) -> Result<SectionedBasis, Failure> {
    let spec: BasisSpec = match (&a.basis, &a.basis_file) {
        (Some(s), _) => parse_basis(s)?,
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::parse(e.column(), e.to_string())))?
        }
        (None, None) => unreachable!("clap requires one of the basis flags"),
    };
    Ok(spec.build()?)
}

fn load_seq(a: &SeqArg, len: usize) -> Result<Vec<Rat>, Failure> {
    match (&a.seq, &a.seq_file) {
        (Some(s), _) => {
            let e = SeqExpr::parse(s)?;
            Ok((0..len as i64).map(|n| e.at(n)).collect::<fbm::Result<_>>()?)
        }
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            let v = text
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(parse_rat)
                .collect::<fbm::Result<Vec<_>>>()?;
            if v.len() < len {
                return Err(Error::WindowTooShort { needed: len as i64 - 1, len: v.len() }.into());
            }
            Ok(v)
        }
        (None, None) => unreachable!("clap requires one of the sequence flags"),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Lib(Error::parse(0, format!("expected a range a..b, got {s:?}")));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn poly(op: &PolyOp) -> String {
    op.render("x", "E")
}

fn matrix_text(out: &mut String, name: &str, m: &[Vec<String>]) {
    let _ = writeln!(out, "{name}:");
    for (r, row) in m.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            let _ = writeln!(out, "  [{r},{c}] {s}");
        }
    }
}

fn cmd_basis(a: &BasisArg, depth: usize, elements: usize) -> Out {
    let b = load_basis(a)?;
    b.validate(depth)?;
    let els: Vec<String> = (0..elements).map(|n| b.element(n).map(|p| p.render("x"))).collect::<fbm::Result<_>>()?;
    let roots: Vec<String> = (0..elements.saturating_sub(1)).map(|t| render_rat(&b.root(t))).collect();
    let witness = quasi_triangular_witness(&b, depth).ok();
    let (e_ok, d_ok) = (is_e_compatible(&b, depth), is_d_compatible(&b, depth));
    let mut text = b.describe();
    for (n, p) in els.iter().enumerate() {
        let _ = writeln!(text, "P_{n} = {p}");
    }
    let _ = writeln!(text, "roots: {}", roots.join(", "));
    match &witness {
        Some(w) => {
            let _ = writeln!(
                text,
                "quasi-triangular: f(n) for n < {} = {:?}, then +{} every {}",
                w.prefix.len(),
                w.prefix,
                w.stride,
                w.period
            );
        }
        None => text.push_str("quasi-triangular: no witness\n"),
    }
    let _ = writeln!(text, "E-compatible: {e_ok}\nD-compatible: {d_ok}");
    let value = json!({
        "label": b.label(),
        "sections": b.sections(),
        "elements": els,
        "roots": roots,
        "witness": witness.map(|w| json!({
            "period": w.period, "stride": w.stride, "stable_from": w.stable_from, "prefix": w.prefix,
        })),
        "e_compatible": e_ok,
        "d_compatible": d_ok,
    });
    Ok((text, value))
}

fn cmd_compat(a: &BasisArg, which: Which, depth: Option<usize>, fixed_a: Option<usize>) -> Out {
    let b = load_basis(a)?;
    let c = match which {
        Which::X => x_compatibility(&b)?,
        Which::E => {
            let hint = match (fixed_a, depth) {
                (Some(a), _) => Some(a),
                (None, Some(d)) => Some(e_compat_bound(&b, d).ok_or_else(|| {
                    Error::NoCompatibility(format!("{} is not compatible with E: no A exists", b.label()))
                })?),
                (None, None) => None,
            };
            e_compatibility(&b, hint, fixed_a.is_some()).map_err(|e| match e {
                Error::NoCompatibility(m) => {
                    Error::NoCompatibility(format!("{} is not compatible with E: no A exists ({m})", b.label()))
                }
                e => e,
            })?
        }
    };
    let mut text = format!("{:?}-compatibility of {}: A = {}, B = {}, m = {}\n", c.operator, b.label(), c.a, c.b, c.m);
    for (j, row) in c.rendered().iter().enumerate() {
        for (idx, s) in row.iter().enumerate() {
            let _ = writeln!(text, "  alpha[{j}][{}] = {s}", idx as i64 - c.a as i64);
        }
    }
    Ok((text, json!(CompatReport::from(&c))))
}

fn cmd_matrix(a: &BasisArg, op: Option<&str>, fixed_a: Option<usize>) -> Out {
    let l = op.map(parse_poly_op).transpose()?;
    let b = load_basis(a)?;
    let r = matrix_report(l.as_ref(), &b, fixed_a)?;
    let mut text = String::new();
    matrix_text(&mut text, "[RE]", &r.re);
    matrix_text(&mut text, "[RX]", &r.rx);
    if let Some(m) = &r.matrix {
        matrix_text(&mut text, "[RL]", m);
    }
    Ok((text, json!(r)))
}

fn cmd_solve(a: &BasisArg, op: &str, range: &str, fixed_a: Option<usize>, with_matrix: bool) -> Out {
    let l = parse_poly_op(op)?;
    let (lo, hi) = parse_range(range)?;
    let b = load_basis(a)?;
    let r = solve_report(&l, &b, (lo, hi), fixed_a, with_matrix)?;
    let mut text = String::from("first column:\n");
    for (i, c) in r.first_column.iter().enumerate() {
        let _ = writeln!(text, "  L_{i},0 = {c}");
    }
    let _ = writeln!(text, "gcrd: {}", r.gcrd);
    for (i, sol) in r.solutions.iter().enumerate() {
        let _ = writeln!(text, "solution {}: {}", i + 1, sol.closed_form_hint);
    }
    if r.solutions.is_empty() {
        let _ = writeln!(text, "no first-order right factor (gcrd order {})", r.gcrd_order);
    }
    let status = serde_json::to_value(r.verification.status).unwrap();
    let _ = writeln!(text, "verification n = {lo}..{hi}: {}", status.as_str().unwrap());
    let value = json!(r);
    match r.verification.failure {
        Some(m) => Err(Failure::Verify(m, Some((text, value)))),
        None => Ok((text, value)),
    }
}

fn cmd_verify(op: &str, seq: &SeqArg, range: &str) -> Out {
    let l = parse_poly_op(op)?;
    let (lo, hi) = parse_range(range)?;
    let y = load_seq(seq, hi + l.order().unwrap_or(0) + 1)?;
    verify_on_values(&l, &y, lo, hi)?;
    let text = format!("verification n = {lo}..{hi}: ok\n");
    Ok((text, json!({ "range": [lo, hi], "status": "ok" })))
}

fn cmd_expand(a: &BasisArg, seq: &SeqArg, terms: usize) -> Out {
    let b = load_basis(a)?;
    let y = load_seq(seq, terms)?;
    let c = expand_sequence(&y[..terms], &b)?;
    let c: Vec<String> = c.iter().map(render_rat).collect();
    let mut text = String::new();
    for (n, v) in c.iter().enumerate() {
        let _ = writeln!(text, "c_{n} = {v}");
    }
    Ok((text, json!({ "basis": b.label(), "coefficients": c })))
}

fn cmd_promote(op: &str) -> Out {
    let o = parse_ore(op, ORE_DIALECT)?;
    let p = promote(&o)?;
    Ok((format!("{}\n", poly(&p)), json!({ "operator": poly(&p) })))
}
