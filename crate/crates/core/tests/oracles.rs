mod common;

use std::process::Command;

use basewright::actions::{build_action, degree_formula, ActionKind, ActionSpec, DEFAULT_CAP};
use basewright::audit::{
    audit_degrees, base_size, degree_suite, theorem_sweep, verify_table, witness_report, BaseSizeReport, DegreeAudit,
    SweepReport, VerificationReport, Verdict, VerifyOptions,
};
use basewright::bsgs::{exact_min_base, DEFAULT_BUDGET};
use basewright::clgroups::{enumerate_matrix_group, load_permgroup, Family, MatrixGroup, MATHIEU};
use basewright::forms::{ClassicalForm, Sign};
use basewright::gf::Field;
use basewright::linalg::Subspace;
use basewright::tables::TableId;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn gu32_brute_force_order() {
    let g = MatrixGroup::build(Family::GU, 3, 2).unwrap();
    let all = enumerate_matrix_group(&g.field, &g.gens, 10_000).unwrap();
    assert_eq!(all.len(), 648);
    assert!(all.iter().all(|m| g.form.is_isometry(m)));
}

/// Elements acting trivially on an orbit are exactly the scalars.
#[test]
fn action_kernel_is_scalars() {
    for (fam, d, q) in [(Family::GU, 3, 2), (Family::Sp, 4, 3), (Family::GOminus, 4, 3)] {
        let g = MatrixGroup::build(fam, d, q).unwrap();
        let spec = ActionSpec::subspaces(fam, d, q, 1, ActionKind::Singular);
        let a = build_action(&spec, None, DEFAULT_CAP).unwrap();
        let pts: Vec<Subspace> = a.orbit.points.iter().map(|p| p.as_subspace().unwrap().clone()).collect();
        let all = enumerate_matrix_group(&g.field, &g.gens, 200_000).unwrap();
        assert_eq!(BigUint::from(all.len()), g.order, "{}", g.name());
        let kernel: Vec<_> = all.iter().filter(|m| pts.iter().all(|u| u.act(&g.field, m) == *u)).collect();
        assert_eq!(kernel.len(), g.scalars.len(), "{}", g.name());
        assert!(kernel.iter().all(|m| m.is_scalar()));
    }
}

#[test]
fn degree_formulas_match_enumeration() {
    let rep = audit_degrees(&degree_suite(), DEFAULT_CAP).unwrap();
    assert!(rep.rows.len() >= 20);
    for r in &rep.rows {
        assert!(r.agree, "{}: formula {} enumerated {}", r.instance, r.formula, r.enumerated);
    }
    let has = |n: usize| rep.rows.iter().any(|r| r.enumerated == n);
    for n in [63, 35, 28, 15, 10] {
        assert!(has(n), "{}", n);
    }
}

#[test]
fn gu42_singular_planes() {
    let spec = ActionSpec::subspaces(Family::GU, 4, 2, 2, ActionKind::Singular);
    let a = build_action(&spec, None, DEFAULT_CAP).unwrap();
    assert_eq!(degree_formula(&spec).unwrap(), BigUint::from(a.degree()));
    assert_eq!(a.degree(), 27);
}

#[test]
fn mathieu_orders_and_bases() {
    for (name, b) in MATHIEU.iter().zip([4, 5, 6, 7]) {
        let (set, chain) = load_permgroup(name).unwrap();
        assert_eq!(chain.order(), set.expected_order);
        let rep = base_size(name, &chain, DEFAULT_BUDGET);
        assert_eq!(rep.exact, Some(b), "{}", name);
    }
}

#[test]
fn m24_line() {
    let (_, chain) = load_permgroup("M24").unwrap();
    assert_eq!(base_size("M24", &chain, DEFAULT_BUDGET).line(), "7 (lower=7 via |G|>n^6, upper=7 via greedy)");
}

#[test]
fn listed_candidates_are_bases() {
    let opts = VerifyOptions::default();
    for (table, fam, d, q, sign, size) in [
        (TableId::T1, Family::GU, 5, 2, Sign::None, 5),
        (TableId::T6, Family::Sp, 6, 2, Sign::Minus, 6),
        (TableId::T4, Family::GOcirc, 9, 3, Sign::None, 5),
        (TableId::T3, Family::Sp, 8, 2, Sign::None, 4),
        (TableId::N1, Family::GOcirc, 5, 3, Sign::Plus, 4),
        (TableId::T2, Family::Sp, 4, 3, Sign::None, 4),
    ] {
        let rep = verify_table(table, fam, d, q, sign, &opts).unwrap();
        assert_eq!(rep.verdict, Verdict::Base, "{}", rep.summary());
        assert_eq!(rep.candidate_size, size, "{}", rep.summary());
    }
}

/// With m = 2 the minus-type coset candidate leaves an involution.
#[test]
fn coset_minus_candidate_needs_m_at_least_3() {
    let rep = verify_table(TableId::T6, Family::Sp, 4, 2, Sign::Minus, &VerifyOptions::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::NotBase);
    assert_eq!(rep.perm.unwrap().stabilizer_order, "2");
}

#[test]
fn algebra_route_alone_past_the_cap() {
    let opts = VerifyOptions { cap: 1000, ..VerifyOptions::default() };
    let rep = verify_table(TableId::T2, Family::GU, 8, 2, Sign::None, &opts).unwrap();
    assert!(rep.perm.is_none());
    assert_eq!(rep.verdict, Verdict::Base);
}

#[test]
fn verdicts_are_reproducible() {
    let run = || {
        let mut r = verify_table(TableId::T1, Family::Sp, 6, 3, Sign::None, &VerifyOptions::default()).unwrap();
        r.micros = 0;
        r.algebra.as_mut().unwrap().micros = 0;
        r.perm.as_mut().unwrap().micros = 0;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn reports_round_trip() {
    let v = verify_table(TableId::N1, Family::GU, 4, 3, Sign::None, &VerifyOptions::default()).unwrap();
    assert_eq!(VerificationReport::from_json(&v.to_json()).unwrap(), v);
    let s = theorem_sweep(100, DEFAULT_BUDGET).unwrap();
    assert_eq!(SweepReport::from_json(&s.to_json()).unwrap(), s);
    let d = audit_degrees(&degree_suite()[..4], DEFAULT_CAP).unwrap();
    assert_eq!(DegreeAudit::from_json(&d.to_json()).unwrap(), d);
    let (_, chain) = load_permgroup("M11").unwrap();
    let b = base_size("M11", &chain, DEFAULT_BUDGET);
    let back: BaseSizeReport = serde_json::from_str(&b.to_json()).unwrap();
    assert_eq!(back, b);
}

#[test]
fn small_sweep_passes() {
    let rep = theorem_sweep(300, DEFAULT_BUDGET).unwrap();
    assert!(rep.pass, "{:?} {:?} {:?} {:?}", rep.unexpected, rep.missing, rep.bound_violations, rep.undetermined);
    assert!(rep.exceptional.iter().any(|r| r.starts_with("Sp(6,2) on cosets of GO-")));
    assert!(rep.exceptional.iter().any(|r| r == "M24"));
    assert_eq!(rep.bound_violations, vec!["M24".to_string()]);
}

#[test]
fn exact_equalities() {
    let cases: Vec<(ActionSpec, usize)> = vec![
        (ActionSpec::coset(3, 2, Sign::Minus), 6),
        (ActionSpec::subspaces(Family::GOminus, 4, 3, 1, ActionKind::Nondeg(Sign::Circ)), 4),
        (ActionSpec::subspaces(Family::GOplus, 6, 2, 1, ActionKind::Nonsingular1), 5),
        (ActionSpec::subspaces(Family::GOminus, 6, 2, 1, ActionKind::Nonsingular1), 5),
    ];
    for (spec, b) in cases {
        let a = build_action(&spec, None, DEFAULT_CAP).unwrap();
        let m = exact_min_base(&a.chain().unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(m.size, b, "{}", spec);
    }
}

/// Three pairs never pin down a pairing of six points under Sym(6): either two
/// points are uncovered or the pairs form a matching with swaps inside blocks.
#[test]
fn sym6_on_pairings_needs_four() {
    let a = build_action(&ActionSpec::partitions(6, 3, 2), None, DEFAULT_CAP).unwrap();
    assert_eq!(a.degree(), 15);
    let m = exact_min_base(&a.chain().unwrap(), DEFAULT_BUDGET).unwrap();
    assert_eq!(m.size, 4);
    assert_eq!(common::naive_min_base(15, &a.orbit.perm_gens.gens, 1000), Some(4));
}

#[test]
fn witnesses_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (fam, d, q) in [(Family::GOplus, 6, 2), (Family::GOminus, 6, 3)] {
        let f = Field::new(q).unwrap();
        let form = ClassicalForm::standard(fam.kind(), fam.sign(), d, &f).unwrap();
        for _ in 0..20 {
            let spaces: Vec<Subspace> = (0..d - 2).map(|_| common::random_anisotropic_point(&form, &mut rng)).collect();
            let rep = witness_report(fam, q, &form, &spaces).unwrap();
            assert!(rep.ok());
        }
    }
}

#[test]
fn witness_rejects_bad_input() {
    let f = Field::new(2).unwrap();
    let form = ClassicalForm::standard(Family::GOplus.kind(), Sign::Plus, 6, &f).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let three: Vec<Subspace> = (0..3).map(|_| common::random_anisotropic_point(&form, &mut rng)).collect();
    assert!(witness_report(Family::GOplus, 2, &form, &three).is_err());
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_basewright")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_exit_codes() {
    let dir = std::env::temp_dir().join(format!("basewright-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("r.json");
    let (code, _) = cli(&["verify-table", "--table", "1", "--family", "GU", "--d", "5", "--q", "2", "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let rep = VerificationReport::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rep.verdict, Verdict::Base);
    let (code, out) = cli(&["base-size", "--group", "M24"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "7 (lower=7 via |G|>n^6, upper=7 via greedy)");
    assert_eq!(cli(&["verify-table", "--table", "6", "--d", "4", "--q", "2", "--sign", "-"]).0, 1);
    assert_eq!(cli(&["verify-table", "--table", "1", "--family", "GL", "--d", "4", "--q", "2"]).0, 2);
    assert_eq!(cli(&["verify-table", "--table", "7"]).0, 2);
    assert_eq!(cli(&["sweep", "--no-such-flag"]).0, 2);
    let (code, out) = cli(&["degree", "--family", "Sp", "--d", "6", "--q", "2", "--enumerate"]);
    assert_eq!(code, 0);
    assert!(out.contains("n = 63") && out.contains("63 points"));
    let dump = dir.join("orbit.txt");
    assert_eq!(cli(&["degree", "--action", "partitions", "--d", "6", "--k", "3", "--dump", dump.to_str().unwrap()]).0, 0);
    assert_eq!(std::fs::read_to_string(&dump).unwrap().lines().count(), 10 + 2);
    let (code, out) = cli(&["witness", "--family", "GO-", "--d", "6", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("non_scalar=true"));
    std::fs::remove_dir_all(&dir).ok();
}
