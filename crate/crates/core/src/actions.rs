//! Primitive actions as explicit point sets: orbits of subspaces under the
//! classical groups, the Sp-on-GO coset action through the odd orthogonal
//! model, and Sym(l) on uniform partitions.  Closed degree formulas serve as
//! oracles for the enumerations.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bsgs::{schreier_sims_known_order, Perm, StabChain};
use crate::clgroups::{order_formula, sp_to_odd_orthogonal, Family, MatrixGroup, PermGenSet};
use crate::error::{Error, Result};
use crate::forms::{ClassicalForm, FormKind, OrbitTag, Sign, SubspaceClass};
use crate::gf::Elt;
use crate::linalg::{Subspace, Vector};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActionKind {
    /// totally singular k-spaces; all k-spaces for GL
    Singular,
    /// non-degenerate k-spaces of the given sign
    Nondeg(Sign),
    /// non-singular 1-spaces, q even orthogonal
    Nonsingular1,
    /// Sp_{2m}(q) on the cosets of GO^sign_{2m}(q), q even
    CosetSpGo(Sign),
    Partitions { s: usize, t: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActionSpec {
    /// the acting group; for the coset action the Sp family with d = 2m, for
    /// partitions ignored (Sym(l) with l = d)
    pub family: Family,
    pub d: usize,
    pub q: usize,
    pub k: usize,
    pub kind: ActionKind,
}

impl ActionSpec {
    pub fn subspaces(family: Family, d: usize, q: usize, k: usize, kind: ActionKind) -> ActionSpec {
        ActionSpec { family, d, q, k, kind }
    }

    pub fn coset(m: usize, q: usize, sign: Sign) -> ActionSpec {
        ActionSpec { family: Family::Sp, d: 2 * m, q, k: 2 * m, kind: ActionKind::CosetSpGo(sign) }
    }

    pub fn partitions(l: usize, s: usize, t: usize) -> ActionSpec {
        ActionSpec { family: Family::GL, d: l, q: 0, k: t, kind: ActionKind::Partitions { s, t } }
    }

    /// The matrix group that realizes the action.
    pub fn matrix_group(&self) -> Result<MatrixGroup> {
        match self.kind {
            ActionKind::CosetSpGo(_) => Ok(sp_to_odd_orthogonal(self.d / 2, self.q)?.group),
            ActionKind::Partitions { .. } => Err(Error::BadParams("partition actions have no matrix group".into())),
            _ => MatrixGroup::build(self.family, self.d, self.q),
        }
    }

    /// Subspace dimension and tag that the orbit points carry.
    fn expected_tag(&self, form: &ClassicalForm) -> Result<(usize, Option<SubspaceClass>)> {
        let class = match self.kind {
            ActionKind::Singular => SubspaceClass::TotallySingular,
            ActionKind::Nondeg(s) => SubspaceClass::Nondegenerate(s),
            ActionKind::Nonsingular1 => SubspaceClass::NonsingularOneSpace,
            ActionKind::CosetSpGo(s) => SubspaceClass::Nondegenerate(s),
            ActionKind::Partitions { .. } => return Ok((0, None)),
        };
        if self.k == 0 || self.k > form.d {
            return Err(Error::BadParams(format!("k = {} out of range", self.k)));
        }
        Ok((self.k, Some(class)))
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ActionKind::Singular => write!(f, "{}({},{}) on S(k={})", self.family, self.d, self.q, self.k),
            ActionKind::Nondeg(s) => write!(f, "{}({},{}) on N{}(k={})", self.family, self.d, self.q, s, self.k),
            ActionKind::Nonsingular1 => write!(f, "{}({},{}) on non-singular 1-spaces", self.family, self.d, self.q),
            ActionKind::CosetSpGo(s) => write!(f, "Sp({},{}) on cosets of GO{}({},{})", self.d, self.q, s, self.d, self.q),
            ActionKind::Partitions { s, t } => write!(f, "Sym({}) on partitions into {} blocks of {}", self.d, s, t),
        }
    }
}

/// A point of an action domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Subspace(Subspace),
    /// blocks sorted internally and by their least element
    Partition(Vec<Vec<u8>>),
}

impl Point {
    pub fn as_subspace(&self) -> Option<&Subspace> {
        match self {
            Point::Subspace(u) => Some(u),
            _ => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Subspace(u) => {
                let rows: Vec<String> = u
                    .basis()
                    .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "[{}]", rows.join(";"))
            }
            Point::Partition(blocks) => {
                let bs: Vec<String> = blocks
                    .iter()
                    .map(|b| b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "{{{}}}", bs.join("|"))
            }
        }
    }
}

/// A transitive permutation action with its point labels.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<Point>,
    pub index: HashMap<Point, u32>,
    pub perm_gens: PermGenSet,
    pub degree: usize,
}

impl Orbit {
    pub fn position(&self, p: &Point) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Breadth-first closure of `seed` under `act`, then renumbered in
    /// increasing point order.
    fn close(
        name: String,
        seed: Point,
        ngens: usize,
        cap: usize,
        act: impl Fn(usize, &Point) -> Point,
    ) -> Result<Orbit> {
        let mut points = vec![seed.clone()];
        let mut index: HashMap<Point, u32> = HashMap::new();
        index.insert(seed, 0);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); ngens];
        let mut i = 0;
        while i < points.len() {
            for (g, img) in images.iter_mut().enumerate() {
                let p = act(g, &points[i]);
                let j = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        if points.len() >= cap {
                            return Err(Error::OrbitTooLarge { cap });
                        }
                        let j = points.len() as u32;
                        index.insert(p.clone(), j);
                        points.push(p);
                        j
                    }
                };
                img.push(j);
            }
            i += 1;
        }
        // renumber so that position order is point order
        let n = points.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by(|&a, &b| points[a as usize].cmp(&points[b as usize]));
        let mut rank = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let gens: Vec<Perm> = images
            .iter()
            .map(|img| {
                let mut p = vec![0u32; n];
                for (old, &to) in img.iter().enumerate() {
                    p[rank[old] as usize] = rank[to as usize];
                }
                Perm(p)
            })
            .collect();
        let mut slots: Vec<Option<Point>> = points.into_iter().map(Some).collect();
        let points: Vec<Point> = order.iter().map(|&old| slots[old as usize].take().unwrap()).collect();
        for (new, p) in points.iter().enumerate() {
            *index.get_mut(p).unwrap() = new as u32;
        }
        Ok(Orbit {
            perm_gens: PermGenSet { name, degree: n, gens, expected_order: BigUint::zero() },
            points,
            index,
            degree: n,
        })
    }

    /// One point per line, then one line per generator image.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        for g in &self.perm_gens.gens {
            let line: Vec<String> = g.0.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// An action realized on an orbit, with the order of the permutation image.
pub struct Action {
    pub spec: ActionSpec,
    pub group: Option<MatrixGroup>,
    pub orbit: Orbit,
    pub image_order: BigUint,
}

impl Action {
    pub fn degree(&self) -> usize {
        self.orbit.degree
    }

    pub fn chain(&self) -> Result<StabChain> {
        self.chain_with_prefix(&[])
    }

    /// Stabilizer chain of the image with the given points heading the base.
    pub fn chain_with_prefix(&self, prefix: &[u32]) -> Result<StabChain> {
        schreier_sims_known_order(self.orbit.degree, &self.orbit.perm_gens.gens, prefix, &self.image_order, 1000)
    }

    pub fn form(&self) -> Option<&ClassicalForm> {
        self.group.as_ref().map(|g| &g.form)
    }

    /// Position of a subspace in the orbit.
    pub fn locate(&self, u: &Subspace) -> Option<u32> {
        self.orbit.position(&Point::Subspace(u.clone()))
    }
}

/// Build the action from a default or given seed point.
pub fn build_action(spec: &ActionSpec, seed: Option<Point>, cap: usize) -> Result<Action> {
    if let ActionKind::Partitions { s, t } = spec.kind {
        if spec.d != s * t {
            return Err(Error::BadShape(format!("l = {} is not s*t = {}*{}", spec.d, s, t)));
        }
        let orbit = partition_action(spec.d, s, t)?;
        let image_order = factorial(spec.d);
        return Ok(Action { spec: spec.clone(), group: None, orbit: with_order(orbit, &image_order), image_order });
    }
    let group = spec.matrix_group()?;
    let seed = match seed {
        Some(Point::Subspace(u)) => u,
        Some(Point::Partition(_)) => return Err(Error::SeedTagMismatch("partition seed for a subspace action".into())),
        None => default_seed(spec, &group.form)?,
    };
    let orbit = enumerate_orbit(spec, &group, seed, cap)?;
    let image_order = group.projective_order();
    Ok(Action { spec: spec.clone(), orbit: with_order(orbit, &image_order), group: Some(group), image_order })
}

fn with_order(mut orbit: Orbit, order: &BigUint) -> Orbit {
    orbit.perm_gens.expected_order = order.clone();
    orbit
}

pub fn enumerate_orbit(spec: &ActionSpec, group: &MatrixGroup, seed: Subspace, cap: usize) -> Result<Orbit> {
    let form = &group.form;
    let (k, class) = spec.expected_tag(form)?;
    let seed_tag = form.orbit_tag(&seed);
    if seed.dim != k || Some(seed_tag.class) != class {
        return Err(Error::SeedTagMismatch(format!(
            "seed {} has tag {:?}, wanted dimension {} and {:?}",
            form.fmt_subspace(&seed),
            seed_tag,
            k,
            class
        )));
    }
    if let Ok(n) = degree_formula(spec) {
        if n > BigUint::from(cap) {
            return Err(Error::OrbitTooLarge { cap });
        }
    }
    let f = group.field.clone();
    let gens = group.gens.clone();
    Orbit::close(spec.to_string(), Point::Subspace(seed), gens.len(), cap, |g, p| {
        let mut buf = Vec::new();
        Point::Subspace(p.as_subspace().unwrap().act_into(&f, &gens[g], &mut buf))
    })
}

/// Seed point for the spec: `<e_1..e_k>` for singular spaces; for the other
/// kinds the first point of the required tag in a seeded random stream, with
/// square discriminant where two equivalent orbits exist.
pub fn default_seed(spec: &ActionSpec, form: &ClassicalForm) -> Result<Subspace> {
    let f = &form.field;
    let (k, class) = spec.expected_tag(form)?;
    let class = class.unwrap();
    if spec.kind == ActionKind::Singular {
        let vecs: Vec<Vector> = if form.kind == FormKind::Linear {
            (0..k).map(|i| unit(form.d, i)).collect()
        } else {
            if k > form.witt_index() {
                return Err(Error::BadParams(format!("k = {} exceeds the Witt index {}", k, form.witt_index())));
            }
            (0..k).map(|i| unit(form.d, i)).collect()
        };
        return Ok(form.span(&vecs));
    }
    let want_square = |tag: &OrbitTag| form.d % 2 == 1 || tag.disc_square.unwrap_or(true);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (form.d as u64) << 8 ^ (k as u64));
    for _ in 0..200_000 {
        let vecs: Vec<Vector> = (0..k).map(|_| (0..form.d).map(|_| rng.gen_range(0..f.order()) as Elt).collect()).collect();
        let u = form.span(&vecs);
        if u.dim != k {
            continue;
        }
        let tag = form.orbit_tag(&u);
        if tag.class == class && want_square(&tag) {
            return Ok(u);
        }
    }
    Err(Error::BadParams(format!("no subspace of type {:?} and dimension {}", class, k)))
}

fn unit(d: usize, i: usize) -> Vector {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

/// Sym(l) on partitions into `s` blocks of size `t`, generated by the images
/// of `(1,2)` and `(1,2,...,l)`.
pub fn partition_action(l: usize, s: usize, t: usize) -> Result<Orbit> {
    if s < 2 || t < 2 || l != s * t || l < 5 {
        return Err(Error::BadShape(format!("l={} s={} t={} (need l = s*t, s,t >= 2, l >= 5)", l, s, t)));
    }
    let seed: Vec<Vec<u8>> = (0..s).map(|b| ((b * t) as u8..((b + 1) * t) as u8).collect()).collect();
    let transposition = |x: u8| match x {
        0 => 1,
        1 => 0,
        _ => x,
    };
    let cycle = move |x: u8| ((x as usize + 1) % l) as u8;
    Orbit::close(format!("Sym({}) on ({},{},{})", l, l, s, t), Point::Partition(seed), 2, usize::MAX, |g, p| {
        let Point::Partition(blocks) = p else { unreachable!() };
        let mut out: Vec<Vec<u8>> = blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<u8> = b.iter().map(|&x| if g == 0 { transposition(x) } else { cycle(x) }).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        out.sort_unstable();
        Point::Partition(out)
    })
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn pow(q: usize, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// `q^e - s` for `s` in {1, -1}.
fn pm(q: usize, e: usize, s: i64) -> BigUint {
    if s > 0 {
        pow(q, e) - 1u32
    } else {
        pow(q, e) + 1u32
    }
}

fn sgn(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Gaussian binomial coefficient.
pub fn gaussian_binomial(d: usize, k: usize, q: usize) -> BigUint {
    if k > d {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pm(q, d - i, 1);
        den *= pm(q, i + 1, 1);
    }
    num / den
}

/// Singular points of a non-degenerate quadratic space of dimension `n`
/// and type `eps` (ignored for odd `n`).
fn singular_points(n: usize, q: usize, eps: i64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    if n % 2 == 1 {
        return (pow(q, n - 1) - 1u32) / BigUint::from(q - 1);
    }
    let m = n / 2;
    let a = pm(q, m, eps);
    let b = if m == 0 { BigUint::zero() } else { pm(q, m - 1, -eps) };
    a * b / BigUint::from(q - 1)
}

fn quadratic_order(d: usize, q: usize, sign: Sign) -> Result<BigUint> {
    if d == 0 {
        return Ok(BigUint::one());
    }
    let fam = match sign {
        Sign::Plus => Family::GOplus,
        Sign::Minus => Family::GOminus,
        _ => Family::GOcirc,
    };
    if d == 1 {
        return Ok(BigUint::from(if q % 2 == 1 { 2u32 } else { 1u32 }));
    }
    order_formula(fam, d, q)
}

/// Closed form for the degree of the action.
pub fn degree_formula(spec: &ActionSpec) -> Result<BigUint> {
    let (d, q, k) = (spec.d, spec.q, spec.k);
    let none = || Err(Error::NoFormula(spec.to_string()));
    match spec.kind {
        ActionKind::Partitions { s, t } => {
            if s * t != d {
                return Err(Error::BadShape(format!("{} != {}*{}", d, s, t)));
            }
            Ok(factorial(d) / (factorial(t).pow(s as u32) * factorial(s)))
        }
        ActionKind::CosetSpGo(sign) => {
            let m = d / 2;
            let eps = match sign {
                Sign::Plus => 1,
                Sign::Minus => -1,
                _ => return none(),
            };
            Ok(pow(q, m) * pm(q, m, -eps) / 2u32)
        }
        ActionKind::Singular => match spec.family {
            Family::GL => Ok(gaussian_binomial(d, k, q)),
            Family::Sp => {
                if 2 * k > d {
                    return none();
                }
                let mut num = BigUint::one();
                let mut den = BigUint::one();
                for i in 1..=k {
                    num *= pm(q, d - 2 * k + 2 * i, 1);
                    den *= pm(q, i, 1);
                }
                Ok(num / den)
            }
            Family::GU => {
                if 2 * k > d {
                    return none();
                }
                let mut num = BigUint::one();
                let mut den = BigUint::one();
                for i in d - 2 * k + 1..=d {
                    num *= pm(q, i, sgn(i));
                }
                for i in 1..=k {
                    den *= pm(q, 2 * i, 1);
                }
                Ok(num / den)
            }
            fam => {
                // extend a totally singular (i-1)-space by a singular point of
                // U^perp / U, then divide by the number of hyperplanes of a k-space
                let eps = fam.sign().eps();
                let witt = if d % 2 == 1 { d / 2 } else if eps > 0 { d / 2 } else { d / 2 - 1 };
                if k > witt {
                    return none();
                }
                let mut num = BigUint::one();
                let mut den = BigUint::one();
                for i in 1..=k {
                    num *= singular_points(d - 2 * (i - 1), q, eps);
                    den *= pm(q, i, 1) / BigUint::from(q - 1);
                }
                Ok(num / den)
            }
        },
        ActionKind::Nonsingular1 => {
            if !spec.family.is_orthogonal() || q % 2 == 1 || k != 1 {
                return none();
            }
            let eps = spec.family.sign().eps();
            let total = (pow(q, d) - 1u32) / BigUint::from(q - 1);
            Ok(total - singular_points(d, q, eps))
        }
        ActionKind::Nondeg(sign) => match spec.family {
            Family::GU => {
                let mut num = pow(q, k * (d - k));
                let mut den = BigUint::one();
                for i in d - k + 1..=d {
                    num *= pm(q, i, sgn(i));
                }
                for i in 1..=k {
                    den *= pm(q, i, sgn(i));
                }
                Ok(num / den)
            }
            Family::Sp => {
                if k % 2 == 1 || k >= d {
                    return none();
                }
                let g = |n| order_formula(Family::Sp, n, q);
                Ok(g(d)? / (g(k)? * g(d - k)?))
            }
            Family::GL => none(),
            fam => {
                // stabilizer of a non-degenerate k-space is GO(U) x GO(U^perp)
                if k >= d || (q % 2 == 0 && k % 2 == 1) {
                    return none();
                }
                let ambient = fam.sign();
                let (sub, perp) = if k % 2 == 0 {
                    let perp = if d % 2 == 0 { Sign::from_eps(ambient.eps() * sign.eps()) } else { Sign::Circ };
                    (sign, perp)
                } else if d % 2 == 1 {
                    (Sign::Circ, sign)
                } else {
                    (Sign::Circ, Sign::Circ)
                };
                if matches!(sub, Sign::Circ | Sign::None) && k % 2 == 0 || matches!(perp, Sign::None) {
                    return none();
                }
                Ok(quadratic_order(d, q, ambient)? / (quadratic_order(k, q, sub)? * quadratic_order(d - k, q, perp)?))
            }
        },
    }
}

/// Bound formulas quoted alongside the tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `d/k + 10` for subspace actions of classical groups
    Subspace { d: usize, k: usize },
    /// `ceil(log_s t) + 3` for partitions
    Partitions { s: usize, t: usize },
    /// `ceil(log k / log |T|) + 2` for diagonal type
    Diagonal { k: usize, t_order: u64 },
    /// `ceil(ceil(log k) / floor(log m)) + b(H)` for product action
    Product { k: usize, m: usize, b_h: usize },
}

/// Smallest `e` with `base^e >= x`, for `base >= 2`.
fn ceil_log(x: &BigUint, base: u64) -> usize {
    let b = BigUint::from(base);
    let mut p = BigUint::one();
    let mut e = 0;
    while &p < x {
        p *= &b;
        e += 1;
    }
    e
}

/// Largest `e` with `base^e <= x`, for `x >= 1`.
fn floor_log(x: u64, base: u64) -> usize {
    let mut p = base;
    let mut e = 0;
    while p <= x {
        p = p.saturating_mul(base);
        e += 1;
    }
    e
}

pub fn bound_functions(kind: BoundKind) -> Result<usize> {
    let bad = |m: &str| Err(Error::BadParams(m.into()));
    match kind {
        BoundKind::Subspace { d, k } => {
            if k == 0 || k > d {
                return bad("need 1 <= k <= d");
            }
            Ok(d / k + 10)
        }
        BoundKind::Partitions { s, t } => {
            if s < 2 || t < 1 {
                return bad("need s >= 2");
            }
            Ok(ceil_log(&BigUint::from(t), s as u64) + 3)
        }
        BoundKind::Diagonal { k, t_order } => {
            if k < 2 || t_order < 2 {
                return bad("need k >= 2 and |T| >= 2");
            }
            Ok(ceil_log(&BigUint::from(k), t_order) + 2)
        }
        BoundKind::Product { k, m, b_h } => {
            if k < 1 || m < 2 {
                return bad("need k >= 1 and m >= 2");
            }
            let num = ceil_log(&BigUint::from(k), 2);
            let den = floor_log(m as u64, 2);
            Ok(num.div_ceil(den) + b_h)
        }
    }
}

/// Degree as a machine integer, if it fits.
pub fn small_degree(n: &BigUint) -> Option<usize> {
    n.to_usize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(spec: ActionSpec) -> u64 {
        degree_formula(&spec).unwrap().to_u64().unwrap()
    }

    #[test]
    fn formula_values() {
        assert_eq!(deg(ActionSpec::subspaces(Family::Sp, 6, 2, 1, ActionKind::Singular)), 63);
        assert_eq!(deg(ActionSpec::subspaces(Family::GOplus, 6, 2, 1, ActionKind::Singular)), 35);
        assert_eq!(deg(ActionSpec::subspaces(Family::GOplus, 6, 2, 1, ActionKind::Nonsingular1)), 28);
        assert_eq!(deg(ActionSpec::coset(3, 2, Sign::Minus)), 28);
        assert_eq!(deg(ActionSpec::coset(3, 2, Sign::Plus)), 36);
        assert_eq!(deg(ActionSpec::partitions(6, 3, 2)), 15);
        assert_eq!(deg(ActionSpec::partitions(8, 2, 4)), 35);
        assert_eq!(deg(ActionSpec::subspaces(Family::GOcirc, 5, 3, 1, ActionKind::Nondeg(Sign::Plus))), 45);
        assert_eq!(deg(ActionSpec::subspaces(Family::GOcirc, 5, 3, 1, ActionKind::Nondeg(Sign::Minus))), 36);
        assert_eq!(deg(ActionSpec::subspaces(Family::GU, 3, 2, 1, ActionKind::Nondeg(Sign::None))), 12);
    }

    #[test]
    fn bounds() {
        assert_eq!(bound_functions(BoundKind::Subspace { d: 12, k: 3 }).unwrap(), 14);
        assert_eq!(bound_functions(BoundKind::Partitions { s: 2, t: 8 }).unwrap(), 6);
        assert_eq!(bound_functions(BoundKind::Product { k: 4, m: 24, b_h: 7 }).unwrap(), 8);
    }

    #[test]
    fn partitions_enumerate() {
        assert_eq!(partition_action(6, 3, 2).unwrap().degree, 15);
        assert_eq!(partition_action(6, 2, 3).unwrap().degree, 10);
        assert!(matches!(partition_action(6, 4, 2), Err(Error::BadShape(_))));
    }
}
