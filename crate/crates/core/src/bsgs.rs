//! Permutation groups: stabilizer chains, base computations and an exact
//! minimum base search.
//!
//! Permutations act on the right: `p^(gh) = (p^g)^h`, stored as image arrays.
//! A [`StabChain`] is built either by deterministic Schreier-Sims or, when the
//! group order is known in advance, by random Schreier-Sims that stops exactly
//! when the product of the basic orbit lengths reaches that order.  The second
//! mode never returns a wrong chain: the product is always a lower bound for
//! the order of the group generated so far, and equality certifies completeness.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm(pub Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles_string())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, p: u32) -> u32 {
        self.0[p as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn then_in_place(&mut self, other: &Perm) {
        for x in self.0.iter_mut() {
            *x = other.0[*x as usize];
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Build from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a as usize >= n || seen[a as usize] {
                    return Err(Error::Parse(format!("bad cycle {:?} for degree {}", c, n)));
                }
                seen[a as usize] = true;
                img[a as usize] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm(img))
    }

    /// Parse 1-based disjoint cycle notation such as `(1,2,3)(4,5)`.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Perm> {
        let mut cycles = Vec::new();
        let t = text.trim();
        if t.is_empty() || t == "()" {
            return Ok(Perm::identity(n));
        }
        for chunk in t.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {:?}", chunk)))?;
            let mut cyc = Vec::new();
            for tok in body.split(',') {
                let v: u32 = tok.trim().parse().map_err(|_| Error::Parse(format!("bad point {:?}", tok)))?;
                if v == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                cyc.push(v - 1);
            }
            cycles.push(cyc);
        }
        Perm::from_cycles(n, &cycles)
    }

    /// 1-based disjoint cycle notation, fixed points omitted.
    pub fn to_cycles_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push((x + 1).to_string());
                x = self.0[x] as usize;
            }
            out.push_str(&format!("({})", c.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i as u32)
    }
}

/// Orbits of the group generated by `gens` on `0..n`, each sorted, listed by
/// smallest element.
pub fn orbits(n: usize, gens: &[&Perm]) -> Vec<Vec<u32>> {
    let mut comp = vec![u32::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        comp[s] = id;
        let mut orb = vec![s as u32];
        let mut k = 0;
        while k < orb.len() {
            let p = orb[k];
            for g in gens {
                let im = g.apply(p);
                if comp[im as usize] == u32::MAX {
                    comp[im as usize] = id;
                    orb.push(im);
                }
            }
            k += 1;
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// indices into the generator store of generators first added at this level
    own: Vec<usize>,
    orbit: Vec<u32>,
    /// Schreier vector: for an orbit point, the store index of the generator
    /// that reached it; `ROOT` for the base point
    edge: Vec<u32>,
}

/// A base and strong generating set with Schreier vectors.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    store: Vec<(Perm, Perm)>,
    levels: Vec<Level>,
}

impl StabChain {
    fn empty(degree: usize) -> StabChain {
        StabChain { degree, store: Vec::new(), levels: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }

    /// Strong generators of the whole group.
    pub fn generators(&self) -> Vec<&Perm> {
        self.gens_from(0)
    }

    fn gens_from(&self, level: usize) -> Vec<&Perm> {
        self.levels[level.min(self.levels.len())..]
            .iter()
            .flat_map(|l| l.own.iter().map(|&i| &self.store[i].0))
            .collect()
    }

    fn gen_indices_from(&self, level: usize) -> Vec<usize> {
        self.levels[level..].iter().flat_map(|l| l.own.iter().copied()).collect()
    }

    fn push_level(&mut self, point: u32) {
        let mut edge = vec![NOT_IN_ORBIT; self.degree];
        edge[point as usize] = ROOT;
        self.levels.push(Level { point, own: Vec::new(), orbit: vec![point], edge });
    }

    /// Extend the orbit of level `l` after generators were added at or below it.
    fn extend_orbit(&mut self, l: usize) {
        let gens = self.gen_indices_from(l);
        let level = &mut self.levels[l];
        let mut k = 0;
        while k < level.orbit.len() {
            let p = level.orbit[k];
            for &gi in &gens {
                let im = self.store[gi].0.apply(p);
                if level.edge[im as usize] == NOT_IN_ORBIT {
                    level.edge[im as usize] = gi as u32;
                    level.orbit.push(im);
                }
            }
            k += 1;
        }
    }

    fn add_generator(&mut self, g: Perm, level: usize) {
        let inv = g.inverse();
        self.store.push((g, inv));
        let idx = self.store.len() - 1;
        self.levels[level].own.push(idx);
        for l in 0..=level {
            self.extend_orbit(l);
        }
    }

    /// Transversal element mapping the base point of level `l` to `p`.
    fn transversal(&self, l: usize, p: u32) -> Perm {
        let level = &self.levels[l];
        let mut word = Vec::new();
        let mut x = p;
        while level.edge[x as usize] != ROOT {
            let gi = level.edge[x as usize] as usize;
            word.push(gi);
            x = self.store[gi].1.apply(x);
        }
        let mut u = Perm::identity(self.degree);
        for &gi in word.iter().rev() {
            u.then_in_place(&self.store[gi].0);
        }
        u
    }

    /// Sift `g` from level `start`.  Returns the residue and the first level
    /// where sifting stopped (`levels.len()` if it went through).
    fn strip_from(&self, mut g: Perm, start: usize) -> (Perm, usize) {
        for l in start..self.levels.len() {
            let level = &self.levels[l];
            let mut x = g.apply(level.point);
            if level.edge[x as usize] == NOT_IN_ORBIT {
                return (g, l);
            }
            while level.edge[x as usize] != ROOT {
                let gi = level.edge[x as usize] as usize;
                let inv = &self.store[gi].1;
                g.then_in_place(inv);
                x = inv.apply(x);
            }
        }
        let n = self.levels.len();
        (g, n)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let (h, _) = self.strip_from(g.clone(), 0);
        h.is_identity()
    }

    /// Chain of the pointwise stabilizer of the first `k` base points.
    pub fn tail(&self, k: usize) -> StabChain {
        StabChain { degree: self.degree, store: self.store.clone(), levels: self.levels[k.min(self.levels.len())..].to_vec() }
    }

    /// The pointwise stabilizer of the first `k` base points has a chain
    /// whose generator list is needed to seed further computations.
    pub fn subgroup_generators(&self, k: usize) -> Vec<Perm> {
        self.gens_from(k).into_iter().cloned().collect()
    }
}

/// Deterministic Schreier-Sims.  `prefix` points come first in the base.
pub fn schreier_sims(degree: usize, gens: &[Perm], prefix: &[u32]) -> StabChain {
    let mut chain = StabChain::empty(degree);
    for &p in prefix {
        if !chain.levels.iter().any(|l| l.point == p) {
            chain.push_level(p);
        }
    }
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    for g in &gens {
        if !chain.levels.iter().any(|l| g.apply(l.point) != l.point) {
            chain.push_level(g.first_moved().unwrap());
        }
    }
    if chain.levels.is_empty() {
        return chain;
    }
    for g in gens {
        let lvl = chain.levels.iter().position(|l| g.apply(l.point) != l.point).unwrap();
        let inv = g.inverse();
        chain.store.push((g, inv));
        let idx = chain.store.len() - 1;
        chain.levels[lvl].own.push(idx);
    }
    for l in 0..chain.levels.len() {
        chain.extend_orbit(l);
    }
    let mut i = chain.levels.len() as isize - 1;
    // cursor over (orbit position, generator position) per level
    let mut cursor: Vec<(usize, usize)> = vec![(0, 0); chain.levels.len()];
    while i >= 0 {
        let l = i as usize;
        let gens = chain.gen_indices_from(l);
        let mut restarted = false;
        'scan: while cursor[l].0 < chain.levels[l].orbit.len() {
            let p = chain.levels[l].orbit[cursor[l].0];
            while cursor[l].1 < gens.len() {
                let gi = gens[cursor[l].1];
                cursor[l].1 += 1;
                let img = chain.store[gi].0.apply(p);
                // Schreier generator u_p s u_{p^s}^-1
                let mut h = chain.transversal(l, p);
                h.then_in_place(&chain.store[gi].0);
                let back = chain.transversal(l, img).inverse();
                h.then_in_place(&back);
                if h.is_identity() {
                    continue;
                }
                let (res, j) = chain.strip_from(h, l + 1);
                if res.is_identity() {
                    continue;
                }
                if j == chain.levels.len() {
                    let pt = res.first_moved().unwrap();
                    chain.push_level(pt);
                    cursor.push((0, 0));
                }
                chain.add_generator(res, j);
                // generators at levels <= j changed, so their Schreier generators are rescanned
                for c in cursor.iter_mut().take(j + 1) {
                    *c = (0, 0);
                }
                i = j as isize;
                restarted = true;
                break 'scan;
            }
            cursor[l].0 += 1;
            cursor[l].1 = 0;
        }
        if !restarted {
            i -= 1;
        }
    }
    chain
}

/// Product replacement random element generator.
struct RandomElements {
    slots: Vec<Perm>,
    acc: Perm,
    rng: ChaCha8Rng,
}

impl RandomElements {
    fn new(degree: usize, gens: &[Perm], seed: u64) -> RandomElements {
        let mut slots: Vec<Perm> = gens.to_vec();
        if slots.is_empty() {
            slots.push(Perm::identity(degree));
        }
        while slots.len() < 10 {
            let k = slots.len() % gens.len().max(1);
            slots.push(slots[k].clone());
        }
        let mut r = RandomElements { slots, acc: Perm::identity(degree), rng: ChaCha8Rng::seed_from_u64(seed) };
        for _ in 0..50 {
            r.next();
        }
        r
    }

    fn next(&mut self) -> Perm {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let sj = if self.rng.gen_bool(0.5) { self.slots[j].clone() } else { self.slots[j].inverse() };
        if self.rng.gen_bool(0.5) {
            self.slots[i].then_in_place(&sj);
        } else {
            self.slots[i] = sj.then(&self.slots[i]);
        }
        self.acc.then_in_place(&self.slots[i]);
        self.acc.clone()
    }
}

/// Seed used for every randomized chain construction, so results are
/// reproducible run to run.
pub const CHAIN_SEED: u64 = 0x6261_7365_7772_6967;

/// Random Schreier-Sims that terminates when the chain order equals `target`.
///
/// Fails with [`Error::OrderMismatch`] if the order overshoots, or if
/// `stall` consecutive random elements sift trivially before the target is
/// reached (the generators then very likely generate a smaller group; the
/// reported order is a proven lower bound for it).
pub fn schreier_sims_known_order(
    degree: usize,
    gens: &[Perm],
    prefix: &[u32],
    target: &BigUint,
    stall: usize,
) -> Result<StabChain> {
    let mut chain = StabChain::empty(degree);
    for &p in prefix {
        if !chain.levels.iter().any(|l| l.point == p) {
            chain.push_level(p);
        }
    }
    let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    if target.is_one() {
        if gens.is_empty() {
            return Ok(chain);
        }
        return Err(Error::OrderMismatch { expected: target.clone(), got: BigUint::zero() });
    }
    for g in &gens {
        let (res, j) = chain.strip_from(g.clone(), 0);
        if res.is_identity() {
            continue;
        }
        if j == chain.levels.len() {
            chain.push_level(res.first_moved().unwrap());
        }
        chain.add_generator(res, j);
    }
    let mut rand = RandomElements::new(degree, &gens, CHAIN_SEED ^ degree as u64);
    let mut quiet = 0;
    loop {
        let ord = chain.order();
        if &ord == target {
            return Ok(chain);
        }
        if &ord > target || quiet >= stall {
            return Err(Error::OrderMismatch { expected: target.clone(), got: ord });
        }
        let g = rand.next();
        let (res, j) = chain.strip_from(g, 0);
        if res.is_identity() {
            quiet += 1;
            continue;
        }
        quiet = 0;
        if j == chain.levels.len() {
            chain.push_level(res.first_moved().unwrap());
        }
        chain.add_generator(res, j);
    }
}

const DEFAULT_STALL: usize = 400;

/// A permutation group given by generators, with a lazily supplied order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub degree: usize,
    pub gens: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> PermGroup {
        PermGroup { degree, gens }
    }

    /// Deterministic chain.
    pub fn chain(&self) -> StabChain {
        schreier_sims(self.degree, &self.gens, &[])
    }

    /// Chain certified against a known order.
    pub fn chain_with_order(&self, order: &BigUint) -> Result<StabChain> {
        schreier_sims_known_order(self.degree, &self.gens, &[], order, DEFAULT_STALL)
    }
}

/// Chain for the pointwise stabilizer of `points`, obtained by rebuilding
/// the chain with `points` as a base prefix.
pub fn pointwise_stabilizer(chain: &StabChain, points: &[u32]) -> StabChain {
    let mut distinct: Vec<u32> = Vec::new();
    for &p in points {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    let rebuilt = rebase(chain, &distinct);
    rebuilt.tail(distinct.len())
}

/// Same group, new chain whose base starts with `prefix`.
pub fn rebase(chain: &StabChain, prefix: &[u32]) -> StabChain {
    let gens: Vec<Perm> = chain.generators().into_iter().cloned().collect();
    let order = chain.order();
    if order.is_one() {
        let mut c = StabChain::empty(chain.degree);
        for &p in prefix {
            c.push_level(p);
        }
        return c;
    }
    match schreier_sims_known_order(chain.degree, &gens, prefix, &order, 4 * DEFAULT_STALL) {
        Ok(c) => c,
        // the random phase stalled; finish deterministically
        Err(_) => schreier_sims(chain.degree, &gens, prefix),
    }
}

/// Chain of the stabilizer of a single point.
pub fn stabilizer(chain: &StabChain, p: u32) -> StabChain {
    pointwise_stabilizer(chain, &[p])
}

pub fn is_base(chain: &StabChain, points: &[u32]) -> bool {
    pointwise_stabilizer(chain, points).order().is_one()
}

/// Smallest `b` with `n^b >= |G|`.
pub fn order_lower_bound(order: &BigUint, n: usize) -> usize {
    if order.is_one() || n < 2 {
        return 0;
    }
    let nn = BigUint::from(n);
    let mut pow = BigUint::one();
    let mut b = 0;
    while &pow < order {
        pow *= &nn;
        b += 1;
    }
    b
}

/// Greedy base: repeatedly fix a point with the longest orbit under the
/// current stabilizer (equivalently the smallest stabilizer), smallest point
/// on ties.
pub fn greedy_base(chain: &StabChain) -> Vec<u32> {
    let mut h = chain.clone();
    let mut base = Vec::new();
    while !h.order().is_one() {
        let gens = h.generators();
        let orbs = orbits(h.degree, &gens);
        let best = orbs.iter().max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0]))).unwrap();
        let p = best[0];
        base.push(p);
        h = stabilizer(&h, p);
    }
    base
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinBase {
    pub size: usize,
    pub base: Vec<u32>,
    pub lower_bound: usize,
    pub greedy_size: usize,
    pub nodes: u64,
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

struct Search {
    budget: u64,
    nodes: u64,
}

impl Search {
    /// Does `h` have a base of at most `r` further points?  On success the
    /// points are pushed onto `path`.
    fn run(&mut self, h: &StabChain, r: usize, path: &mut Vec<u32>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { lower: 0, upper: 0 });
        }
        let order = h.order();
        if order.is_one() {
            return Ok(true);
        }
        if r == 0 {
            return Ok(false);
        }
        let gens = h.generators();
        let mut orbs: Vec<Vec<u32>> = orbits(h.degree, &gens).into_iter().filter(|o| o.len() > 1).collect();
        let longest = orbs.iter().map(|o| o.len()).max().unwrap_or(1);
        // every basic orbit of a chain for h lies inside an orbit of h
        if BigUint::from(longest).pow(r as u32) < order {
            return Ok(false);
        }
        if r == 1 {
            let reg = orbs.iter().find(|o| BigUint::from(o.len()) == order);
            if let Some(o) = reg {
                path.push(o[0]);
                return Ok(true);
            }
            return Ok(false);
        }
        orbs.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        for o in orbs {
            let p = o[0];
            let k = stabilizer(h, p);
            path.push(p);
            if self.run(&k, r - 1, path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}

/// Exact minimum base size by depth-first search over orbit representatives
/// of successive stabilizers, with order-based pruning.  Sizes are tried from
/// the order lower bound upward; the greedy base caps the search.
pub fn exact_min_base(chain: &StabChain, budget: u64) -> Result<MinBase> {
    let n = chain.degree;
    let order = chain.order();
    let lower = order_lower_bound(&order, n);
    let greedy = greedy_base(chain);
    let mut search = Search { budget, nodes: 0 };
    for size in lower..greedy.len() {
        let mut path = Vec::new();
        match search.run(chain, size, &mut path) {
            Ok(true) => {
                return Ok(MinBase { size: path.len(), base: path, lower_bound: lower, greedy_size: greedy.len(), nodes: search.nodes })
            }
            Ok(false) => continue,
            Err(Error::BudgetExceeded { .. }) => {
                return Err(Error::BudgetExceeded { lower: size, upper: greedy.len() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(MinBase { size: greedy.len(), base: greedy.clone(), lower_bound: lower, greedy_size: greedy.len(), nodes: search.nodes })
}

/// Smallest block of imprimitivity containing `a` and `b`, as a class label
/// per point (Atkinson's union-find closure).
pub fn minimal_block(degree: usize, gens: &[Perm], a: u32, b: u32) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let mut pending = vec![(a, b)];
    let ra = find(&mut parent, a);
    let rb = find(&mut parent, b);
    if ra == rb {
        return (0..degree as u32).map(|x| find(&mut parent, x)).collect();
    }
    parent[rb as usize] = ra;
    while let Some((x, y)) = pending.pop() {
        for g in gens {
            let gx = find(&mut parent, g.apply(x));
            let gy = find(&mut parent, g.apply(y));
            if gx != gy {
                parent[gy as usize] = gx;
                pending.push((gx, gy));
            }
        }
    }
    (0..degree as u32).map(|x| find(&mut parent, x)).collect()
}

/// Whether a transitive group is primitive: every minimal block through
/// point 0 and another point is everything.
pub fn is_primitive(degree: usize, gens: &[Perm]) -> bool {
    if degree <= 2 {
        return true;
    }
    (1..degree as u32).all(|b| {
        let labels = minimal_block(degree, gens, 0, b);
        labels.iter().all(|&l| l == labels[0])
    })
}

/// `|G|` as a `u64` when it fits.
pub fn small_order(chain: &StabChain) -> Option<u64> {
    chain.order().to_u64()
}

/// All elements of a small group, by closure.  Test oracle only.
pub fn enumerate_elements(degree: usize, gens: &[Perm], limit: usize) -> Option<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let mut all = Vec::new();
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(h);
            }
        }
        all.push(g);
    }
    Some(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()]
    }

    #[test]
    fn symmetric_orders() {
        for n in 2..8 {
            let c = schreier_sims(n, &sym(n), &[]);
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.order(), BigUint::from(fact));
        }
    }

    #[test]
    fn known_order_mode_agrees() {
        let g = sym(7);
        let c = schreier_sims_known_order(7, &g, &[3, 5], &BigUint::from(5040u32), 200).unwrap();
        assert_eq!(c.base()[..2], [3, 5]);
        assert!(c.contains(&Perm::from_cycles(7, &[vec![0, 6, 2]]).unwrap()));
    }

    #[test]
    fn cycle_parse_roundtrip() {
        let p = Perm::parse_cycles("(1,2,3)(5,7)", 8).unwrap();
        assert_eq!(p.to_cycles_string(), "(1,2,3)(5,7)");
        assert!(Perm::parse_cycles("(1,2)(2,3)", 4).is_err());
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(order_lower_bound(&BigUint::from(244823040u64), 24), 7);
        assert_eq!(order_lower_bound(&BigUint::from(120u32), 5), 3);
    }
}
