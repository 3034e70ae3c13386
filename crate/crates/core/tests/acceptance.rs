//! Acceptance criteria, one PASS/FAIL line each.  Exits nonzero on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use fbm::algebra::{rat, Poly, Rat, RatFunc};
use fbm::basis::{
    binomial_basis, evaluate_expansion, expand_sequence, falling_basis, generalized_binomial, power_basis,
    product_basis, scale_hypergeometric, shuffled_basis, SectionedBasis,
};
use fbm::compat::{e_compatibility, x_compatibility};
use fbm::ore::{right_divmod, OreMatrix, OreOp, PolyOp};
use fbm::pipeline::{
    associated_matrix, associated_operator, first_column, interlace, is_proportional, promote, reduction_of_order,
    sectioned_matrices, solve_section0, verify_on_values, HypergeomTerm, SolutionDescriptor,
};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

/// Whole-suite time budget.
const TIME_BUDGET: Duration = Duration::from_secs(300);
/// Random operator pairs for the matrix homomorphism.
const HOM_PAIRS: usize = 100;
/// Random operators for leading-term preservation.
const LEAD_OPS: usize = 100;
/// Random sequences per basis for the expansion roundtrip.
const ROUNDTRIP_SEQS: usize = 20;
/// Sampled `k` values per section for compatibility identities.
const COMPAT_KS: usize = 10;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn mat_eq(name: &str, got: &OreMatrix, want: &OreMatrix) -> Check {
    ensure(got.size() == want.size(), || format!("{name}: size {} vs {}", got.size(), want.size()))?;
    for r in 0..got.size() {
        for c in 0..got.size() {
            ensure(got.get(r, c) == want.get(r, c), || {
                format!("{name}[{r},{c}]: got {}, want {}", got.get(r, c), want.get(r, c))
            })?;
        }
    }
    Ok(())
}

fn seq(n: usize, f: impl Fn(i64) -> Rat) -> Vec<Rat> {
    (0..n as i64).map(f).collect()
}

fn c1_substitution(fx: &Fixtures) -> Check {
    let c = binomial_c();
    for i in 1..=5 {
        let got = e(associated_operator(&fx.poly(&format!("transform.{i}.L")), &c))?;
        let want = fx.ore(&format!("transform.{i}.RL"));
        ensure(canon_eq(&got, &want), || format!("item {i}: got {got}, want {want}"))?;
    }
    // item 1 for several constants c: E - c maps to S - (c - 1)
    for cst in [rat(-2), rat(0), Rat::new(1.into(), 3.into()), rat(11)] {
        let l = PolyOp::new(vec![Poly::constant(-cst.clone()), Poly::one()]);
        let got = e(associated_operator(&l, &c))?;
        let want = &OreOp::s(1) - &OreOp::scalar(RatFunc::constant(&cst - rat(1)));
        ensure(canon_eq(&got, &want), || format!("E - {cst}: got {got}"))?;
    }
    Ok(())
}

fn c2_matrices(fx: &Fixtures) -> Check {
    for (name, b, m) in [("xk2E", xk2e_basis(), 2), ("apery2", apery2_basis(), 3), ("apery3", apery3_basis(), 4)] {
        let mats = e(sectioned_matrices(&b, None))?;
        mat_eq(&format!("{name} RE"), &mats.e, &fx.matrix(&format!("{name}.RE"), m))?;
        mat_eq(&format!("{name} RX"), &mats.x, &fx.matrix(&format!("{name}.RX"), m))?;
    }
    Ok(())
}

fn c3_order7_matrix(fx: &Fixtures) -> Check {
    let l = fx.poly("order7.L");
    let mats = e(sectioned_matrices(&xk2e_basis(), None))?;
    let rl = associated_matrix(&l, &mats);
    let fact = seq(60, fact_i);
    let pow2 = seq(60, |k| Rat::from_integer(num_bigint::BigInt::from(2).pow(k as u32)));
    let kernel = |name: &str, op: &OreOp, s: &[Rat]| -> Check {
        for k in 0..=50 {
            let v = e(op.apply_at(s, k))?;
            ensure(v.is_zero(), || format!("{name} at k = {k} gives {v}"))?;
        }
        Ok(())
    };
    kernel("L00 k!", rl.get(0, 0), &fact)?;
    kernel("L10 k!", rl.get(1, 0), &fact)?;
    kernel("L01 2^k", rl.get(0, 1), &pow2)?;
    kernel("L11 2^k", rl.get(1, 1), &pow2)?;
    let want = OreMatrix::from_rows(vec![
        vec![fx.ore("order7.L00"), fx.ore("order7.L01")],
        vec![fx.ore("order7.L10"), fx.ore("order7.L11")],
    ])
    .unwrap();
    mat_eq("[RL]", &rl, &want).map_err(|msg| {
        // Report whether the printed entry is itself consistent.
        match kernel("printed L11 2^k", want.get(1, 1), &pow2) {
            Err(k) => format!("{msg}; computed entries pass the kernel checks, {k}"),
            Ok(()) => msg,
        }
    })
}

fn c4_apery(fx: &Fixtures) -> Check {
    // y_n = sum_k binom(n,k)^2 binom(n+k,k)^power
    for (name, b, power) in [("apery2", apery2_basis(), 1), ("apery3", apery3_basis(), 2)] {
        let l = fx.poly(&format!("{name}.L"));
        let s = e(solve_section0(&l, &b, None))?;
        let want = fx.ore(&format!("{name}.gcrd"));
        ensure(canon_eq(&s.gcrd, &want), || format!("{name}: gcrd {} vs {want}", s.gcrd))?;
        ensure(s.solutions.len() == 1, || format!("{name}: {} solutions", s.solutions.len()))?;
        let sol = &s.solutions[0];
        let c = e(sol.coeff.terms(21))?;
        for k in 0..=20i64 {
            let want = binom_i(2 * k, k).pow(power);
            ensure(c[k as usize] == want, || format!("{name}: c_{k} = {} vs {want}", c[k as usize]))?;
        }
        let y = e(sol.values(0, 32))?;
        for n in 0..=32i64 {
            let direct: Rat = (0..=n).map(|k| binom_i(n, k).pow(2) * binom_i(n + k, k).pow(power)).sum();
            ensure(y[n as usize] == direct, || format!("{name}: y_{n} = {} vs {direct}", y[n as usize]))?;
        }
        e(verify_on_values(&l, &y, 0, 30))?;
    }
    Ok(())
}

fn order7_solutions(len: usize) -> std::result::Result<(Vec<Rat>, Vec<Rat>), String> {
    let b = xk2e_basis();
    let y1 = SolutionDescriptor {
        section: 0,
        coeff: HypergeomTerm::new(RatFunc::var() + RatFunc::one(), rat(1)),
        basis: b.clone(),
    };
    let y2 = SolutionDescriptor { section: 1, coeff: HypergeomTerm::new(RatFunc::int(2), rat(1)), basis: b };
    Ok((e(y1.values(0, len - 1))?, e(y2.values(0, len - 1))?))
}

fn c5_order7(fx: &Fixtures) -> Check {
    let l = fx.poly("order7.L");
    let (y1, y2) = order7_solutions(40)?;
    // the interlaced coefficient sequences expand to the same values
    let c1 = interlace(&[seq(21, fact_i), vec![Rat::zero(); 21]]);
    let c2 =
        interlace(&[vec![Rat::zero(); 21], seq(21, |k| Rat::from_integer(num_bigint::BigInt::from(2).pow(k as u32)))]);
    let b = xk2e_basis();
    for n in 0..=20i64 {
        let o1: Rat = (0..=n).map(|j| fact_i(j) * binom_i(n, j).pow(2)).sum();
        let o2: Rat = (0..n).map(|j| rat(2).pow(j as i32) * binom_i(n, j + 1) * binom_i(n, j)).sum();
        ensure(y1[n as usize] == o1, || format!("y1_{n} = {} vs {o1}", y1[n as usize]))?;
        ensure(y2[n as usize] == o2, || format!("y2_{n} = {} vs {o2}", y2[n as usize]))?;
        if n <= 10 {
            ensure(e(evaluate_expansion(&c1, &b, n as usize))? == o1, || format!("Lambda(k!,0) at {n}"))?;
            ensure(e(evaluate_expansion(&c2, &b, n as usize))? == o2, || format!("Lambda(0,2^k) at {n}"))?;
        }
    }
    e(verify_on_values(&l, &y1, 0, 30)).map_err(|m| format!("y1: {m}"))?;
    e(verify_on_values(&l, &y2, 0, 30)).map_err(|m| format!("y2: {m}"))?;
    let l1 = fx.poly("order7.L1");
    let l2 = fx.poly("order7.L2");
    let y3 = e(reduction_of_order(&l1, &y1, 1))?;
    ensure(!is_proportional(&y1, &y3), || "y3 is a multiple of y1".into())?;
    let same = e(reduction_of_order(&l2, &y2, 1))?;
    ensure(is_proportional(&y2, &same), || "start 1 on L2 should reproduce y2".into())?;
    let y4 = e(reduction_of_order(&l2, &y2, 2))?;
    ensure(!is_proportional(&y2, &y4), || "y4 is a multiple of y2".into())?;
    e(verify_on_values(&l1, &y3, 0, 25)).map_err(|m| format!("L1 y3: {m}"))?;
    e(verify_on_values(&l2, &y4, 1, 25)).map_err(|m| format!("L2 y4: {m}"))?;
    e(verify_on_values(&l, &y3, 1, 25)).map_err(|m| format!("L y3: {m}"))?;
    e(verify_on_values(&l, &y4, 1, 25)).map_err(|m| format!("L y4: {m}"))?;
    Ok(())
}

fn c6_factorization(fx: &Fixtures) -> Check {
    let l = fx.poly("order7.L").to_ore();
    let l3 = fx.ore_poly_dialect("order7.L3");
    let l1 = fx.poly("order7.L1").to_ore();
    let l2 = fx.poly("order7.L2").to_ore();
    let l1t = fx.ore_poly_dialect("order7.L1t");
    let l2t = fx.ore_poly_dialect("order7.L2t");
    let l4 = fx.poly("order7.L4").to_ore();
    let f1 = &(&l3 * &l1t) * &l1;
    let f2 = &(&l3 * &l2t) * &l2;
    ensure(canon_eq(&f1, &l), || "L3 L1~ L1 differs from L".into())?;
    ensure(canon_eq(&f2, &l), || "L3 L2~ L2 differs from L".into())?;
    ensure(canon_eq(&(&l1t * &l1), &l4), || "L1~ L1 differs from L4".into())?;
    ensure(canon_eq(&(&l2t * &l2), &l4), || "L2~ L2 differs from L4".into())?;
    ensure(canon_eq(&(&l3 * &l4), &l), || "L3 L4 differs from L".into())?;
    Ok(())
}

fn catalan(n: i64) -> Rat {
    binom_i(2 * n, n) / rat(n + 1)
}

fn c7_worked_examples(fx: &Fixtures) -> Check {
    let c = binomial_c();
    // (a) Catalan
    let rl = e(associated_operator(&fx.poly("catalan.L"), &c))?;
    ensure(canon_eq(&rl, &fx.ore("catalan.RL")), || format!("catalan: got {rl}"))?;
    let (p0, p1, p2) = (rl.coeff(0), rl.coeff(1), rl.coeff(2));
    ensure(rl.coorder() == Some(0) && rl.order() == Some(2), || "catalan: unexpected shape".into())?;
    // iterate from b0, b1 and confirm b2, b3 are reproduced
    let mut it = vec![rat(1), rat(1)];
    for n in 0..30i64 {
        let k = rat(n);
        let v = -(e(p1.eval(&k))? * &it[n as usize + 1] + e(p0.eval(&k))? * &it[n as usize]) / e(p2.eval(&k))?;
        it.push(v);
    }
    for n in 0..=30i64 {
        ensure(it[n as usize] == catalan(n), || format!("catalan: b_{n} = {}", it[n as usize]))?;
    }
    ensure(it[2] == rat(2) && it[3] == rat(5), || "catalan initial terms".into())?;
    let en = seq(35, |n| (0..=n).map(|k| catalan(k) * binom_i(n, k)).sum());
    e(verify_on_values(&fx.poly("catalan.L"), &en, 0, 30))?;

    // (b) Franel
    let fb = franel_basis();
    let mats = e(sectioned_matrices(&fb, None))?;
    mat_eq("franel RX", &mats.x, &fx.matrix("franel.RX", 3))?;
    mat_eq("franel RE", &mats.e, &fx.matrix("franel.RE", 3))?;
    let fl = fx.poly("franel.L");
    // The printed column is that of E*L; solving below uses L itself.
    let el = &e(fbm::syntax::parse_poly_op("E"))? * &fl;
    let col = first_column(&el, &mats);
    for (r, op) in col.iter().enumerate() {
        let want = fx.ore(&format!("franel.L{r}0"));
        ensure(op == &want, || format!("franel L{r}0: got {op}, want {want}"))?;
    }
    let s = e(solve_section0(&fl, &fb, None))?;
    ensure(canon_eq(&s.gcrd, &fx.ore("franel.gcrd")), || format!("franel gcrd {}", s.gcrd))?;
    ensure(s.solutions.len() == 1, || "franel: no solution".into())?;
    let y = e(s.solutions[0].values(0, 27))?;
    for n in 0..=27i64 {
        let direct: Rat = (0..=n).map(|k| binom_i(n, k).pow(3)).sum();
        ensure(y[n as usize] == direct, || format!("franel y_{n}"))?;
    }
    e(verify_on_values(&fl, &y, 0, 25))?;

    // (c) iterated transforms
    let d1 = e(associated_operator(&fx.poly("double1.L"), &c))?;
    ensure(canon_eq(&d1, &fx.ore("double1.RL")), || format!("double1 RL: got {d1}"))?;
    let d1b = e(associated_operator(&e(promote(&d1))?, &c))?;
    ensure(canon_eq(&d1b, &fx.ore("double1.RRL")), || format!("double1 RRL: got {d1b}"))?;
    let d2 = e(associated_operator(&fx.poly("double2.L"), &c))?;
    ensure(canon_eq(&d2, &fx.ore("double2.RL")), || format!("double2 RL: got {d2}"))?;
    let d2b = e(associated_operator(&e(promote(&d2))?, &c))?;
    ensure(canon_eq(&d2b, &fx.ore("double2.RSRL")), || format!("double2 RSRL: got {d2b}"))?;

    let al = fx.poly("artificial.L");
    let rl = e(associated_operator(&al, &c))?;
    ensure(canon_eq(&rl, &fx.ore("artificial.RL")), || "artificial RL".into())?;
    let m = e(promote(&rl))?;
    ensure(m == fx.poly("artificial.M"), || format!("artificial M: got {}", m.render("x", "E")))?;
    let rm = e(associated_operator(&m, &c))?;
    ensure(canon_eq(&rm, &fx.ore("artificial.RM")), || "artificial RM".into())?;
    let n = e(promote(&rm))?;
    ensure(n.order() == Some(14), || format!("N has order {:?}", n.order()))?;
    ensure(n == fx.poly("artificial.N"), || format!("artificial N: got {}", n.render("x", "E")))?;
    let no = n.to_ore();
    let v1 = seq(32, |k| fact_i(2 * k + 1));
    let v2 = seq(32, |k| Rat::one() / fact_i(k));
    for k in 0..=15 {
        ensure(e(no.apply_at(&v1, k))?.is_zero(), || format!("N (2k+1)! at {k}"))?;
        ensure(e(no.apply_at(&v2, k))?.is_zero(), || format!("N 1/k! at {k}"))?;
    }
    Ok(())
}

fn small_poly(rng: &mut StdRng, deg: usize) -> Poly {
    Poly::from_ints(&(0..=deg).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>())
}

fn random_polyop(rng: &mut StdRng) -> PolyOp {
    loop {
        let ord = rng.gen_range(0..=2);
        let c: Vec<Poly> = (0..=ord)
            .map(|_| {
                let d = rng.gen_range(0..=2);
                small_poly(rng, d)
            })
            .collect();
        let op = PolyOp::new(c);
        if !op.is_zero() {
            return op;
        }
    }
}

fn fixture_bases() -> Vec<SectionedBasis> {
    vec![
        binomial_c(),
        binomial_basis(rat(2), rat(1)).unwrap(),
        xk2e_basis(),
        franel_basis(),
        binom_x_plus_n_2n(),
        apery2_basis(),
        apery3_basis(),
    ]
}

fn c8_properties(fx: &Fixtures, started: Instant) -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    // matrix homomorphism
    let mats = e(sectioned_matrices(&xk2e_basis(), None))?;
    for t in 0..HOM_PAIRS {
        let (a, b) = (random_polyop(&mut rng), random_polyop(&mut rng));
        let lhs = associated_matrix(&(&a * &b), &mats);
        let rhs = &associated_matrix(&a, &mats) * &associated_matrix(&b, &mats);
        mat_eq(&format!("homomorphism pair {t}"), &lhs, &rhs)?;
    }
    // leading-term preservation over the binomial basis
    let c = binomial_c();
    for t in 0..LEAD_OPS {
        let l = random_polyop(&mut rng);
        let r = l.order().unwrap();
        let rl = e(associated_operator(&l, &c))?;
        ensure(rl.order() == Some(r as i64), || format!("operator {t}: order {:?} vs {r}", rl.order()))?;
        let lead = RatFunc::from_poly(l.coeffs()[r].clone());
        ensure(rl.leading_coeff() == lead, || format!("operator {t}: leading coefficient"))?;
    }
    // gcrd divisibility on the fixture columns
    for (l, b) in [
        (fx.poly("apery2.L"), apery2_basis()),
        (fx.poly("apery3.L"), apery3_basis()),
        (fx.poly("franel.L"), franel_basis()),
        (fx.poly("order7.L"), xk2e_basis()),
    ] {
        let s = e(solve_section0(&l, &b, None))?;
        for op in &s.column {
            let (_, r) = e(right_divmod(&op.clear_negative(), &s.gcrd))?;
            ensure(r.is_zero(), || format!("{}: gcrd does not divide {op}", b.label()))?;
        }
    }
    // expansion roundtrip
    for b in fixture_bases() {
        for _ in 0..ROUNDTRIP_SEQS {
            let a: Vec<Rat> = (0..12).map(|_| rat(rng.gen_range(-50..=50))).collect();
            let coef = e(expand_sequence(&a, &b))?;
            for (n, an) in a.iter().enumerate() {
                let back = e(evaluate_expansion(&coef, &b, n))?;
                ensure(&back == an, || format!("{}: roundtrip at n = {n}", b.label()))?;
            }
        }
    }
    // compatibility identities
    let mut bases = fixture_bases();
    bases.extend([
        power_basis(rat(1), rat(0)).unwrap(),
        falling_basis(rat(1), rat(0), rat(1)).unwrap(),
        falling_basis(rat(1), rat(1), rat(-1)).unwrap(),
        product_basis(&[
            falling_basis(rat(1), rat(0), rat(1)).unwrap(),
            falling_basis(rat(1), rat(1), rat(-1)).unwrap(),
        ])
        .unwrap(),
        generalized_binomial(rat(2), 1, rat(1), 3).unwrap(),
        scale_hypergeometric(&binomial_c(), &RatFunc::int(2), rat(1)).unwrap(),
        shuffled_basis(&[binom_x_plus_n_2n(), binomial_c()], &[1, 2]).unwrap(),
    ]);
    for b in &bases {
        let ks: Vec<i64> = (0..COMPAT_KS as i64).collect();
        compat_identity(b, &e(x_compatibility(b))?, &ks)?;
        if let Ok(ec) = e_compatibility(b, None, false) {
            compat_identity(b, &ec, &ks)?;
        } else {
            // E P_n has P_0-coefficient P_n(r_0 + 1) / P_0; nonzero for every n
            // means no finite A exists.
            let x = b.root(0) + Rat::one();
            for n in 1..=12 {
                let v = e(b.eval_element(n, &x))?;
                ensure(!v.is_zero(), || format!("{}: no E-compatibility, yet E P_{n} has no P_0 term", b.label()))?;
            }
        }
    }
    let el = started.elapsed();
    ensure(el < TIME_BUDGET, || format!("suite took {el:?}"))
}

impl Fixtures {
    /// Rational-coefficient operators in `n` and `E`, read as shift operators.
    fn ore_poly_dialect(&self, name: &str) -> OreOp {
        let d = fbm::syntax::Dialect { vars: &["n", "x"], shifts: &["E"] };
        fbm::syntax::parse_ore(self.text(name), d).unwrap_or_else(|e| panic!("{name}: {e}"))
    }
}

fn main() {
    let started = Instant::now();
    let fx = Fixtures::load();
    let criteria: Vec<Criterion> = vec![
        ("1 substitution over the binomial basis", Box::new(|| c1_substitution(&fx))),
        ("2 sectioned [RE], [RX] matrices", Box::new(|| c2_matrices(&fx))),
        ("3 order-7 operator matrix and kernels", Box::new(|| c3_order7_matrix(&fx))),
        ("4 Apery gcrds, coefficients and sums", Box::new(|| c4_apery(&fx))),
        ("5 order-7 definite-sum solutions", Box::new(|| c5_order7(&fx))),
        ("6 factorizations of the order-7 operator", Box::new(|| c6_factorization(&fx))),
        ("7 Catalan, Franel and iterated transforms", Box::new(|| c7_worked_examples(&fx))),
        ("8 property suites and time budget", Box::new(|| c8_properties(&fx, started))),
    ];
    let mut failed = 0;
    for (name, f) in &criteria {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match res {
            Ok(()) => println!("PASS  {name}  ({:.2?})", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
