mod common;

use basewright::bsgs::{exact_min_base, greedy_base, order_lower_bound, schreier_sims, Perm};
use basewright::clgroups::{Family, MatrixGroup};
use basewright::forms::{ClassicalForm, FormKind, Sign};
use basewright::gf::{Elt, Field};
use basewright::linalg::{Matrix, Subspace};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quadratic_forms() -> Vec<ClassicalForm> {
    let mut out = Vec::new();
    for q in [2, 3, 4, 5, 9] {
        let f = Field::new(q).unwrap();
        for (sign, d) in [(Sign::Plus, 4), (Sign::Minus, 6), (Sign::Circ, 5)] {
            if let Ok(form) = ClassicalForm::standard(FormKind::Quadratic, sign, d, &f) {
                out.push(form);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polarization(idx in 0usize..15, seed in any::<u64>()) {
        let forms = quadratic_forms();
        let form = &forms[idx % forms.len()];
        let f = &form.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let mut v = || (0..form.d).map(|_| rng.gen_range(0..f.order()) as Elt).collect::<Vec<_>>();
        let (x, y) = (v(), v());
        let sum: Vec<Elt> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let polar = f.sub(f.sub(form.q(&sum), form.q(&x)), form.q(&y));
        prop_assert_eq!(polar, form.b(&x, &y));
        // B(x, x) = 2 Q(x)
        prop_assert_eq!(form.b(&x, &x), f.add(form.q(&x), form.q(&x)));
    }

    #[test]
    fn rref_is_canonical(q in prop::sample::select(vec![2usize, 3, 4, 5, 7, 8, 9]), rows in 1usize..4, seed in any::<u64>()) {
        use rand::Rng;
        let f = Field::new(q).unwrap();
        let d = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vecs: Vec<Vec<Elt>> = (0..rows).map(|_| (0..d).map(|_| rng.gen_range(0..q) as Elt).collect()).collect();
        let u = Subspace::span(&f, d, &vecs);
        // a random invertible recombination spans the same space
        let g = loop {
            let m = Matrix::from_rows(&(0..rows).map(|_| (0..rows).map(|_| rng.gen_range(0..q) as Elt).collect()).collect::<Vec<_>>());
            if m.rank(&f) == rows { break m; }
        };
        let mixed: Vec<Vec<Elt>> = (0..rows)
            .map(|i| (0..d).map(|c| (0..rows).fold(0, |acc, j| f.add(acc, f.mul(g.get(i, j), vecs[j][c])))).collect())
            .collect();
        let w = Subspace::span(&f, d, &mixed);
        prop_assert_eq!(&u, &w);
        for v in &vecs {
            prop_assert!(u.contains(&f, v));
        }
    }

    #[test]
    fn sift_soundness(idx in 0usize..60, seed in any::<u64>()) {
        use rand::Rng;
        let groups = common::small_groups();
        let (_, n, gens) = &groups[idx % groups.len()];
        let chain = schreier_sims(*n, gens, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // random words lie in the group
        for _ in 0..20 {
            let mut w = Perm::identity(*n);
            for _ in 0..rng.gen_range(1..30) {
                let g = &gens[rng.gen_range(0..gens.len())];
                w = if rng.gen_bool(0.5) { w.then(g) } else { w.then(&g.inverse()) };
            }
            prop_assert!(chain.contains(&w));
        }
        // sifting agrees with the element list for random permutations
        let elements = basewright::bsgs::enumerate_elements(*n, gens, 20_000).unwrap();
        let set: std::collections::HashSet<Perm> = elements.into_iter().collect();
        for _ in 0..20 {
            let mut img: Vec<u32> = (0..*n as u32).collect();
            for i in (1..*n).rev() {
                img.swap(i, rng.gen_range(0..=i));
            }
            let p = Perm(img);
            prop_assert_eq!(chain.contains(&p), set.contains(&p));
        }
    }

    #[test]
    fn base_size_sandwich(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, gens) = common::random_group(&mut rng);
        let chain = schreier_sims(n, &gens, &[]);
        let lower = order_lower_bound(&chain.order(), n);
        let greedy = greedy_base(&chain).len();
        let exact = exact_min_base(&chain, 10_000_000).unwrap();
        prop_assert!(lower <= exact.size && exact.size <= greedy);
        if let Some(naive) = common::naive_min_base(n, &gens, 10_000) {
            prop_assert_eq!(naive, exact.size);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generators_are_isometries(idx in 0usize..12) {
        let cases = [
            (Family::GL, 3, 4), (Family::GU, 3, 3), (Family::GU, 4, 2), (Family::Sp, 4, 3),
            (Family::Sp, 6, 2), (Family::GOplus, 6, 3), (Family::GOminus, 6, 2), (Family::GOcirc, 5, 5),
            (Family::GOcirc, 7, 2), (Family::GOminus, 4, 3), (Family::GOplus, 8, 2), (Family::GU, 5, 2),
        ];
        let (fam, d, q) = cases[idx];
        let g = MatrixGroup::build(fam, d, q).unwrap();
        for m in &g.gens {
            prop_assert!(g.form.is_isometry(m));
        }
    }
}

#[test]
fn exact_matches_naive_on_named_groups() {
    for (name, n, gens) in common::small_groups() {
        let chain = schreier_sims(n, &gens, &[]);
        let naive = common::naive_min_base(n, &gens, 10_000).unwrap_or_else(|| panic!("{} too large", name));
        let exact = exact_min_base(&chain, 10_000_000).unwrap();
        assert_eq!(exact.size, naive, "{}", name);
        assert!(basewright::bsgs::is_base(&chain, &exact.base), "{}", name);
    }
}

#[test]
fn named_group_orders() {
    let fact = |n: u64| (1..=n).product::<u64>();
    for (name, n, gens) in common::small_groups() {
        let order = schreier_sims(n, &gens, &[]).order();
        let want: u64 = match name.as_str() {
            "L3(2)" => 168,
            "AGL(3,2)" => 1344,
            "S3wrS2 product" => 72,
            "S3wrS3" => 1296,
            "M11" => 7920,
            s if s.starts_with("AGL(1,") => (n * (n - 1)) as u64,
            s if s.starts_with('C') => n as u64,
            s if s.starts_with('D') => 2 * n as u64,
            s if s.starts_with('S') => fact(n as u64),
            s if s.starts_with('A') => fact(n as u64) / 2,
            _ => unreachable!(),
        };
        assert_eq!(order, want.into(), "{}", name);
    }
}
