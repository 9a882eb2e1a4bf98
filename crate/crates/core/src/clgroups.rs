//! Matrix groups preserving the standard forms, their orders, and the
//! Mathieu permutation groups loaded from data files.
//!
//! Generators are products of elementary isometries (transvections,
//! quasi-reflections, reflections, Eichler maps) drawn from a seeded stream.
//! A generating set is accepted only after its permutation image on all
//! 1-spaces reaches `|G| / |scalars|` in a stabilizer chain, which certifies
//! that it generates the full isometry group.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bsgs::{schreier_sims_known_order, Perm, StabChain};
use crate::error::{Error, Result};
use crate::forms::{ClassicalForm, FormKind, Sign};
use crate::gf::{Elt, Field};
use crate::linalg::{is_zero, normalize, vaxpy, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    GU,
    Sp,
    GOplus,
    GOminus,
    GOcirc,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "GL" | "PGL" | "SL" | "PSL" => Some(Family::GL),
            "GU" | "PGU" | "U" => Some(Family::GU),
            "Sp" | "PSp" | "SP" => Some(Family::Sp),
            "GO+" | "GOplus" | "PGO+" | "O+" => Some(Family::GOplus),
            "GO-" | "GOminus" | "PGO-" | "O-" => Some(Family::GOminus),
            "GO" | "GOo" | "GOcirc" | "GO0" | "PGO" | "O" => Some(Family::GOcirc),
            _ => None,
        }
    }

    pub fn kind(self) -> FormKind {
        match self {
            Family::GL => FormKind::Linear,
            Family::GU => FormKind::Unitary,
            Family::Sp => FormKind::Symplectic,
            _ => FormKind::Quadratic,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Family::GOplus => Sign::Plus,
            Family::GOminus => Sign::Minus,
            Family::GOcirc => Sign::Circ,
            _ => Sign::None,
        }
    }

    pub fn is_orthogonal(self) -> bool {
        self.kind() == FormKind::Quadratic
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::GU => "GU",
            Family::Sp => "Sp",
            Family::GOplus => "GO+",
            Family::GOminus => "GO-",
            Family::GOcirc => "GO",
        })
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `q^e` and `q^e - s` as big integers, with `s` in {-1, 0, 1}.
fn qpow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

fn qpm(q: u64, e: u32, s: i64) -> BigUint {
    let p = qpow(q, e);
    match s {
        1 => p - 1u32,
        -1 => p + 1u32,
        _ => p,
    }
}

/// Order of the full isometry group (of `GL` for the linear family).
pub fn order_formula(family: Family, d: usize, q: usize) -> Result<BigUint> {
    check_admissible(family, d, q)?;
    let q = q as u64;
    let d32 = d as u32;
    Ok(match family {
        Family::GL => {
            let mut o = qpow(q, d32 * (d32 - 1) / 2);
            for i in 1..=d32 {
                o *= qpm(q, i, 1);
            }
            o
        }
        Family::GU => {
            let mut o = qpow(q, d32 * (d32 - 1) / 2);
            for i in 1..=d32 {
                o *= qpm(q, i, if i % 2 == 0 { 1 } else { -1 });
            }
            o
        }
        Family::Sp => {
            let m = d32 / 2;
            let mut o = qpow(q, m * m);
            for i in 1..=m {
                o *= qpm(q, 2 * i, 1);
            }
            o
        }
        Family::GOcirc => {
            let m = d32 / 2;
            let mut o = qpow(q, m * m);
            for i in 1..=m {
                o *= qpm(q, 2 * i, 1);
            }
            if q % 2 == 1 {
                o *= 2u32;
            }
            o
        }
        Family::GOplus | Family::GOminus => {
            let m = d32 / 2;
            let eps = if family == Family::GOplus { 1 } else { -1 };
            let mut o = big(2) * qpow(q, m * (m - 1)) * qpm(q, m, eps);
            for i in 1..m {
                o *= qpm(q, 2 * i, 1);
            }
            o
        }
    })
}

pub fn check_admissible(family: Family, d: usize, q: usize) -> Result<()> {
    let bad = |r: &str| Err(Error::Inadmissible { family: family.to_string(), d, q, reason: r.into() });
    if Field::new(q).is_err() {
        return bad("q must be a prime power at most 16");
    }
    match family {
        Family::GL if d >= 1 => Ok(()),
        Family::GU if d >= 1 => Ok(()),
        Family::Sp if d >= 2 && d % 2 == 0 => Ok(()),
        Family::GOplus if d >= 2 && d % 2 == 0 => Ok(()),
        Family::GOminus if d >= 2 && d % 2 == 0 => Ok(()),
        Family::GOcirc if d >= 1 && d % 2 == 1 => Ok(()),
        Family::Sp | Family::GOplus | Family::GOminus => bad("d must be even"),
        Family::GOcirc => bad("d must be odd"),
        _ => bad("d must be positive"),
    }
}

/// A certified generating set for a full isometry group.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub family: Family,
    pub d: usize,
    /// base field order (the form field is GF(q^2) for GU)
    pub q: usize,
    pub field: Field,
    pub form: ClassicalForm,
    pub gens: Vec<Matrix>,
    pub order: BigUint,
    /// the values `lambda` with `lambda I` in the group
    pub scalars: Vec<Elt>,
}

impl MatrixGroup {
    /// Build and certify the group.
    pub fn build(family: Family, d: usize, q: usize) -> Result<MatrixGroup> {
        let mut g = MatrixGroup::uncertified(family, d, q)?;
        g.certify()?;
        Ok(g)
    }

    fn uncertified(family: Family, d: usize, q: usize) -> Result<MatrixGroup> {
        check_admissible(family, d, q)?;
        let field = if family == Family::GU { Field::quadratic(q)? } else { Field::new(q)? };
        let form = ClassicalForm::standard(family.kind(), family.sign(), d, &field)?;
        let order = order_formula(family, d, q)?;
        let scalars: Vec<Elt> =
            field.elements().filter(|&c| c != 0 && form.is_isometry(&Matrix::scalar(d, c))).collect();
        Ok(MatrixGroup { family, d, q, field, form, gens: Vec::new(), order, scalars })
    }

    pub fn projective_order(&self) -> BigUint {
        &self.order / BigUint::from(self.scalars.len())
    }

    pub fn scalar_matrices(&self) -> Vec<Matrix> {
        self.scalars.iter().map(|&c| Matrix::scalar(self.d, c)).collect()
    }

    pub fn name(&self) -> String {
        format!("{}({},{})", self.family, self.d, self.q)
    }

    fn seed(&self) -> u64 {
        (self.family as u64) << 40 | (self.d as u64) << 20 | self.q as u64
    }

    fn certify(&mut self) -> Result<()> {
        let target = self.projective_order();
        let space = ProjectiveSpace::new(&self.field, self.d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed());
        if self.d == 1 {
            // GL_1 and GU_1 are cyclic and consist of scalars
            let c = if self.family == Family::GU {
                let f = &self.field;
                f.elements().find(|&c| c != 0 && f.multiplicative_order(c) == Some(self.q as u64 + 1)).unwrap()
            } else {
                self.field.primitive_element()
            };
            self.gens = vec![Matrix::scalar(1, c)];
            return Ok(());
        }
        let mut gens: Vec<Matrix> = Vec::new();
        let mut last_err = None;
        for _ in 0..12 {
            gens.push(self.random_isometry(&mut rng));
            if gens.len() < 2 {
                continue;
            }
            let perms: Vec<Perm> = gens.iter().map(|g| space.perm(&self.field, g)).collect();
            match schreier_sims_known_order(space.len(), &perms, &[], &target, 300) {
                Ok(_) => {
                    for g in &gens {
                        if !self.form.is_isometry(g) {
                            return Err(Error::Postcondition(format!("generator of {} is not an isometry", self.name())));
                        }
                    }
                    self.gens = gens;
                    return Ok(());
                }
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or(Error::Postcondition("generation failed".into())))
    }

    /// A product of elementary isometries from the seeded stream.
    fn random_isometry(&self, rng: &mut ChaCha8Rng) -> Matrix {
        let f = &self.field;
        let mut g = Matrix::identity(self.d);
        // the factor count varies so that parity-type invariants are not constant
        let len = 3 * self.d + rng.gen_range(4..6);
        for _ in 0..len {
            let e = self.elementary(rng);
            g = g.mul(f, &e);
        }
        g
    }

    fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vector {
        loop {
            let v: Vector = (0..self.d).map(|_| rng.gen_range(0..self.field.order()) as Elt).collect();
            if !is_zero(&v) {
                return v;
            }
        }
    }

    fn random_nonzero(&self, rng: &mut ChaCha8Rng) -> Elt {
        rng.gen_range(1..self.field.order()) as Elt
    }

    /// Matrix of `x -> x + c(x) w` where `c(x)` is given on basis vectors.
    fn rank_one_update(&self, coeff: impl Fn(&[Elt]) -> Elt, w: &[Elt]) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::identity(self.d);
        for i in 0..self.d {
            let mut e = vec![0; self.d];
            e[i] = 1;
            let row = vaxpy(f, &e, coeff(&e), w);
            for j in 0..self.d {
                m.set(i, j, row[j]);
            }
        }
        m
    }

    fn elementary(&self, rng: &mut ChaCha8Rng) -> Matrix {
        let f = &self.field;
        let form = &self.form;
        let d = self.d;
        match self.family {
            Family::GL => {
                if rng.gen_bool(0.25) {
                    let mut m = Matrix::identity(d);
                    let i = rng.gen_range(0..d);
                    m.set(i, i, self.random_nonzero(rng));
                    m
                } else {
                    let i = rng.gen_range(0..d);
                    let mut j = rng.gen_range(0..d - 1);
                    if j >= i {
                        j += 1;
                    }
                    let mut m = Matrix::identity(d);
                    m.set(i, j, self.random_nonzero(rng));
                    m
                }
            }
            Family::Sp => {
                let v = self.random_vector(rng);
                let lam = self.random_nonzero(rng);
                self.rank_one_update(|x| f.mul(lam, form.b(x, &v)), &v)
            }
            Family::GU => {
                let v = self.random_vector(rng);
                let bvv = form.b(&v, &v);
                if bvv == 0 {
                    // unitary transvection, lambda + lambda^q = 0
                    let choices: Vec<Elt> = f.elements().filter(|&l| l != 0 && f.trace(l).unwrap() == 0).collect();
                    let lam = choices[rng.gen_range(0..choices.len())];
                    self.rank_one_update(|x| f.mul(lam, form.b(x, &v)), &v)
                } else {
                    // quasi-reflection with multiplier mu, mu^(q+1) = 1
                    let choices: Vec<Elt> = f.elements().filter(|&m| m != 0 && f.norm(m).unwrap() == 1).collect();
                    let mu = choices[rng.gen_range(0..choices.len())];
                    let c = f.mul(f.sub(mu, 1), f.inv_nz(bvv));
                    self.rank_one_update(|x| f.mul(c, form.b(x, &v)), &v)
                }
            }
            _ => {
                if rng.gen_bool(0.3) {
                    if let Some(m) = self.eichler(rng) {
                        return m;
                    }
                }
                loop {
                    let v = self.random_vector(rng);
                    if form.q(&v) != 0 {
                        return form.reflection(&v).unwrap();
                    }
                }
            }
        }
    }

    /// Eichler map `x -> x + B(x,u) w - B(x,w) u - Q(w) B(x,u) u` for singular
    /// `u` and `w` orthogonal to `u`.
    fn eichler(&self, rng: &mut ChaCha8Rng) -> Option<Matrix> {
        let f = &self.field;
        let form = &self.form;
        for _ in 0..50 {
            let u = self.random_vector(rng);
            if form.q(&u) != 0 || is_rad(form, &u) {
                continue;
            }
            let w = self.random_vector(rng);
            if form.b(&u, &w) != 0 {
                continue;
            }
            let qw = form.q(&w);
            let mut m = Matrix::identity(self.d);
            for i in 0..self.d {
                let mut e = vec![0; self.d];
                e[i] = 1;
                let bu = form.b(&e, &u);
                let bw = form.b(&e, &w);
                let mut row = vaxpy(f, &e, bu, &w);
                row = vaxpy(f, &row, f.neg(bw), &u);
                row = vaxpy(f, &row, f.neg(f.mul(qw, bu)), &u);
                for j in 0..self.d {
                    m.set(i, j, row[j]);
                }
            }
            return Some(m);
        }
        None
    }

    /// Permutation images of the generators on all 1-spaces.
    pub fn one_space_action(&self) -> Result<(ProjectiveSpace, Vec<Perm>)> {
        let space = ProjectiveSpace::new(&self.field, self.d)?;
        let perms = self.gens.iter().map(|g| space.perm(&self.field, g)).collect();
        Ok((space, perms))
    }

    /// Stabilizer chain of the image on all 1-spaces.
    pub fn one_space_chain(&self) -> Result<StabChain> {
        let (space, perms) = self.one_space_action()?;
        schreier_sims_known_order(space.len(), &perms, &[], &self.projective_order(), 300)
    }
}

fn is_rad(form: &ClassicalForm, u: &[Elt]) -> bool {
    (0..form.d).all(|i| {
        let mut e = vec![0; form.d];
        e[i] = 1;
        form.b(&e, u) == 0
    })
}

/// The 1-spaces of `F^d`, indexed in the order of their normalized vectors.
pub struct ProjectiveSpace {
    pub d: usize,
    q: usize,
    points: Vec<Vector>,
    dense: Vec<u32>,
}

/// Largest `|F|^d` for which the dense 1-space index is built.
const MAX_PROJECTIVE: usize = 1 << 24;

impl ProjectiveSpace {
    pub fn new(f: &Field, d: usize) -> Result<ProjectiveSpace> {
        let q = f.order();
        let total = q.checked_pow(d as u32).filter(|&t| t <= MAX_PROJECTIVE).ok_or(Error::OrbitTooLarge { cap: MAX_PROJECTIVE })?;
        let mut dense = vec![u32::MAX; total];
        let mut points = Vec::new();
        // big-endian code, so increasing codes list normalized vectors in lex order
        for code in 1..total {
            let mut v = vec![0; d];
            let mut c = code;
            for i in (0..d).rev() {
                v[i] = (c % q) as Elt;
                c /= q;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                dense[code] = points.len() as u32;
                points.push(v);
            }
        }
        Ok(ProjectiveSpace { d, q, points, dense })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Elt] {
        &self.points[i]
    }

    pub fn index(&self, f: &Field, v: &[Elt]) -> u32 {
        let n = normalize(f, v);
        let code = n.iter().fold(0usize, |acc, &x| acc * self.q + x as usize);
        self.dense[code]
    }

    pub fn perm(&self, f: &Field, g: &Matrix) -> Perm {
        let mut out = vec![0; self.d];
        Perm(
            self.points
                .iter()
                .map(|v| {
                    g.apply_into(f, v, &mut out);
                    self.index(f, &out)
                })
                .collect(),
        )
    }
}

/// GO_{2m+1}(q), q even, standing in for Sp_{2m}(q): the quotient by the
/// radical `<x>` carries the symplectic form of the first `2m` coordinates.
pub struct OddOrthogonalModel {
    pub group: MatrixGroup,
    pub symplectic: ClassicalForm,
}

impl OddOrthogonalModel {
    /// Induced map on `V / <x>`: drop the `x` row and column.
    pub fn project(&self, g: &Matrix) -> Matrix {
        let n = self.group.d - 1;
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, g.get(i, j));
            }
        }
        m
    }
}

pub fn sp_to_odd_orthogonal(m: usize, q: usize) -> Result<OddOrthogonalModel> {
    if q % 2 == 1 {
        return Err(Error::OddQ);
    }
    let group = MatrixGroup::build(Family::GOcirc, 2 * m + 1, q)?;
    let symplectic = ClassicalForm::standard(FormKind::Symplectic, Sign::None, 2 * m, &group.field)?;
    Ok(OddOrthogonalModel { group, symplectic })
}

/// Permutation generators with a stored expected order.
#[derive(Clone, Debug)]
pub struct PermGenSet {
    pub name: String,
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub expected_order: BigUint,
}

impl PermGenSet {
    pub fn parse(text: &str) -> Result<PermGenSet> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty generator file".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad header {:?}", header)));
        }
        let degree: usize = parts[1].parse().map_err(|_| Error::Parse("bad degree".into()))?;
        let expected_order: BigUint = parts[2].parse().map_err(|_| Error::Parse("bad order".into()))?;
        let gens = lines.map(|l| Perm::parse_cycles(l, degree)).collect::<Result<Vec<_>>>()?;
        Ok(PermGenSet { name: parts[0].to_string(), degree, gens, expected_order })
    }

    /// Chain certified against the stored order.
    pub fn chain(&self) -> Result<StabChain> {
        schreier_sims_known_order(self.degree, &self.gens, &[], &self.expected_order, 2000)
    }
}

/// Directory holding generator files: `$BASEWRIGHT_DATA`, else the crate's `data/`.
pub fn data_dir() -> PathBuf {
    std::env::var_os("BASEWRIGHT_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")))
}

pub const MATHIEU: [&str; 4] = ["M11", "M12", "M23", "M24"];

/// Load and certify one of the Mathieu groups in its natural action.
pub fn load_permgroup(name: &str) -> Result<(PermGenSet, StabChain)> {
    if !MATHIEU.contains(&name) {
        return Err(Error::BadParams(format!("unknown group {}", name)));
    }
    let path = data_dir().join("mathieu").join(format!("{}.txt", name));
    let text = std::fs::read_to_string(&path).map_err(|_| Error::MissingData(path.display().to_string()))?;
    let set = PermGenSet::parse(&text)?;
    let expected_degree: usize = name[1..].parse().unwrap();
    if set.degree != expected_degree || set.name != name {
        return Err(Error::Parse(format!("{} header does not describe {}", path.display(), name)));
    }
    let chain = set.chain()?;
    if chain.order() != set.expected_order {
        return Err(Error::OrderMismatch { expected: set.expected_order.clone(), got: chain.order() });
    }
    Ok((set, chain))
}

/// Every element of a small matrix group by closure.  Test oracle.
pub fn enumerate_matrix_group(f: &Field, gens: &[Matrix], limit: usize) -> Option<Vec<Matrix>> {
    let d = gens[0].rows;
    let mut seen: HashMap<Matrix, ()> = HashMap::new();
    seen.insert(Matrix::identity(d), ());
    let mut frontier = vec![Matrix::identity(d)];
    let mut all = vec![Matrix::identity(d)];
    while let Some(g) = frontier.pop() {
        for s in gens {
            let h = g.mul(f, s);
            if !seen.contains_key(&h) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(h.clone(), ());
                all.push(h.clone());
                frontier.push(h);
            }
        }
    }
    Some(all)
}

pub fn is_one(x: &BigUint) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(order_formula(Family::Sp, 4, 2).unwrap(), big(720));
        assert_eq!(order_formula(Family::GL, 2, 2).unwrap(), big(6));
        assert_eq!(order_formula(Family::GU, 3, 2).unwrap(), big(648));
        assert_eq!(order_formula(Family::Sp, 6, 2).unwrap(), big(1451520));
        assert_eq!(order_formula(Family::GOcirc, 7, 2).unwrap(), big(1451520));
    }

    #[test]
    fn scalar_subgroups() {
        assert_eq!(MatrixGroup::uncertified(Family::Sp, 4, 4).unwrap().scalars, vec![1]);
        assert_eq!(MatrixGroup::uncertified(Family::GL, 3, 3).unwrap().scalars, vec![1, 2]);
        assert_eq!(MatrixGroup::uncertified(Family::GU, 3, 2).unwrap().scalars.len(), 3);
    }

    #[test]
    fn build_sp62() {
        let g = MatrixGroup::build(Family::Sp, 6, 2).unwrap();
        assert_eq!(g.order, big(1451520));
        assert!(g.gens.iter().all(|m| g.form.is_isometry(m)));
    }
}
