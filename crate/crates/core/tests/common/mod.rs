//! Oracles shared by the property suites and the acceptance harness.
#![allow(dead_code)]

use basewright::bsgs::{enumerate_elements, Perm};
use basewright::forms::ClassicalForm;
use basewright::gf::Elt;
use basewright::linalg::{is_zero, Subspace};
use rand::Rng;

pub fn cycles(n: usize, cs: &[&[u32]]) -> Perm {
    let v: Vec<Vec<u32>> = cs.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(n, &v).unwrap()
}

pub fn n_cycle(n: usize) -> Perm {
    Perm((0..n as u32).map(|i| (i + 1) % n as u32).collect())
}

/// Named small permutation groups of degree at most 12 and order at most 10^4.
pub fn small_groups() -> Vec<(String, usize, Vec<Perm>)> {
    let mut out = Vec::new();
    for n in 3..=12 {
        out.push((format!("C{}", n), n, vec![n_cycle(n)]));
        let refl = Perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect());
        out.push((format!("D{}", 2 * n), n, vec![n_cycle(n), refl]));
    }
    for n in 3..=7 {
        out.push((format!("S{}", n), n, vec![cycles(n, &[&[0, 1]]), n_cycle(n)]));
        let three = cycles(n, &[&[0, 1, 2]]);
        let long = if n % 2 == 1 { n_cycle(n) } else { Perm((0..n as u32).map(|i| if i == 0 { 0 } else { i % (n as u32 - 1) + 1 }).collect()) };
        out.push((format!("A{}", n), n, vec![three, long]));
    }
    // x -> ax + b on Z/p
    for p in [5u32, 7, 11] {
        let a = (2..p).find(|&a| (1..p - 1).all(|e| a.pow(e) % p != 1)).unwrap();
        out.push((
            format!("AGL(1,{})", p),
            p as usize,
            vec![n_cycle(p as usize), Perm((0..p).map(|x| (a * x) % p).collect())],
        ));
    }
    // PSL(2,7) on 7 points and AGL(3,2) on 8
    out.push(("L3(2)".into(), 7, vec![cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]]), cycles(7, &[&[1, 2, 4], &[3, 6, 5]]), cycles(7, &[&[0, 1], &[2, 4]])]));
    out.push(("AGL(3,2)".into(), 8, vec![Perm((0..8).map(|x| x ^ 1).collect()), Perm((0..8).map(|x| x ^ ((x & 1) << 1)).collect()), Perm((0..8).map(|x| ((x << 1) | (x >> 2)) & 7).collect())]));
    // S3 wr S2 in product action on 9 points, S3 wr S3 imprimitive on 9
    let pa = |f: &dyn Fn(u32, u32) -> (u32, u32)| Perm((0..9).map(|x| { let (a, b) = f(x / 3, x % 3); a * 3 + b }).collect());
    out.push((
        "S3wrS2 product".into(),
        9,
        vec![pa(&|a, b| ((a + 1) % 3, b)), pa(&|a, b| (if a < 2 { 1 - a } else { a }, b)), pa(&|a, b| (b, a))],
    ));
    out.push((
        "S3wrS3".into(),
        9,
        vec![cycles(9, &[&[0, 1]]), cycles(9, &[&[0, 1, 2]]), cycles(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]), cycles(9, &[&[0, 3], &[1, 4], &[2, 5]])],
    ));
    // M11 on 11 points
    out.push((
        "M11".into(),
        11,
        vec![cycles(11, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]]), cycles(11, &[&[2, 6, 10, 7], &[3, 9, 4, 5]])],
    ));
    out
}

/// Random permutation group on at most 12 points with at most two generators.
pub fn random_group<R: Rng>(rng: &mut R) -> (usize, Vec<Perm>) {
    let n = rng.gen_range(3..=12);
    let k = rng.gen_range(1..=2);
    let gens = (0..k)
        .map(|_| {
            // a random permutation moving a random subset
            let mut img: Vec<u32> = (0..n as u32).collect();
            let moved = rng.gen_range(2..=n);
            for i in (1..moved).rev() {
                let j = rng.gen_range(0..=i);
                img.swap(i, j);
            }
            Perm(img)
        })
        .collect();
    (n, gens)
}

/// Minimum base size by exhaustive search over point subsets, from the full
/// element list.  `None` when the group exceeds `limit` elements.
pub fn naive_min_base(n: usize, gens: &[Perm], limit: usize) -> Option<usize> {
    let elements = enumerate_elements(n, gens, limit)?;
    let fixed: Vec<u32> = elements
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| (0..n).filter(|&i| g.apply(i as u32) == i as u32).fold(0u32, |m, i| m | 1 << i))
        .collect();
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    masks.into_iter().find(|&b| fixed.iter().all(|&f| b & !f != 0)).map(|b| b.count_ones() as usize)
}

/// Uniformly random 1-space whose spanning vector has `Q(v) != 0`.
pub fn random_anisotropic_point<R: Rng>(form: &ClassicalForm, rng: &mut R) -> Subspace {
    let q = form.field.order();
    loop {
        let v: Vec<Elt> = (0..form.d).map(|_| rng.gen_range(0..q) as Elt).collect();
        if !is_zero(&v) && form.q(&v) != 0 {
            return form.span(&[v]);
        }
    }
}
