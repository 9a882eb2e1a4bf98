//! Standard classical forms and the classification of subspaces.
//!
//! Basis order for unitary, symplectic and quadratic forms is
//! `e_1..e_a, f_1..f_a` followed by `x` (odd dimension, or minus type) and
//! `y` (minus type).  `B(e_i, f_j) = delta_ij`; in the unitary odd case
//! `B(x, x) = 1`.  For quadratic forms `Q(e_i) = Q(f_i) = 0`, `Q(x) = 1`, and in
//! the minus type `B(x, y) = 1`, `Q(y) = zeta` where `X^2 + X + zeta` is
//! irreducible.  The stored Gram matrix of a quadratic form is its polarization
//! `B(u, v) = Q(u + v) - Q(u) - Q(v)`.  Linear kind carries the zero form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elt, Field};
use crate::linalg::{is_zero, nullspace, vaxpy, vscale, Matrix, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Linear,
    Unitary,
    Symplectic,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    Circ,
    None,
}

impl Sign {
    pub fn eps(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            _ => 0,
        }
    }

    pub fn from_eps(e: i64) -> Sign {
        match e {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Circ,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" => Some(Sign::Plus),
            "-" | "minus" => Some(Sign::Minus),
            "o" | "circ" | "0" => Some(Sign::Circ),
            "" | "none" => Some(Sign::None),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Circ => "o",
            Sign::None => "",
        })
    }
}

/// Label of a standard basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bv {
    E(usize),
    F(usize),
    X,
    Y,
    V(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubspaceClass {
    TotallySingular,
    Nondegenerate(Sign),
    NonsingularOneSpace,
    DegenerateOther,
}

/// Finer invariant than [`SubspaceClass`]: together with the dimension it
/// determines the isometry type of the restricted form, hence the orbit under
/// the full isometry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitTag {
    pub dim: usize,
    pub class: SubspaceClass,
    /// square class of the discriminant, odd-dimensional non-degenerate
    /// subspaces of quadratic spaces in odd characteristic
    pub disc_square: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct ClassicalForm {
    pub kind: FormKind,
    pub sign: Sign,
    pub d: usize,
    pub field: Field,
    pub gram: Matrix,
    pub qvals: Vec<Elt>,
    pub labels: Vec<String>,
    /// number of hyperbolic pairs in the standard basis
    pub a: usize,
    pub has_x: bool,
    pub has_y: bool,
    pub zeta: Option<Elt>,
}

impl ClassicalForm {
    /// The standard form of the given kind.  For unitary forms `field` must be
    /// GF(q^2); the sign is ignored except for quadratic forms.
    pub fn standard(kind: FormKind, sign: Sign, d: usize, field: &Field) -> Result<ClassicalForm> {
        let f = field.clone();
        let bad = |m: &str| Err(Error::BadParams(format!("{:?} form, d={}: {}", kind, d, m)));
        if d == 0 {
            return bad("dimension must be positive");
        }
        let (a, has_x, has_y) = match kind {
            FormKind::Linear => (0, false, false),
            FormKind::Unitary => {
                if !f.is_quadratic_extension() {
                    return Err(Error::NotQuadraticExtension);
                }
                (d / 2, d % 2 == 1, false)
            }
            FormKind::Symplectic => {
                if d % 2 == 1 {
                    return bad("symplectic dimension must be even");
                }
                (d / 2, false, false)
            }
            FormKind::Quadratic => match sign {
                Sign::Plus if d % 2 == 0 => (d / 2, false, false),
                Sign::Minus if d % 2 == 0 => (d / 2 - 1, true, true),
                Sign::Circ if d % 2 == 1 => (d / 2, true, false),
                _ => return bad("sign does not match the parity of d"),
            },
        };
        let sign = match kind {
            FormKind::Quadratic => sign,
            _ => Sign::None,
        };
        let mut gram = Matrix::zero(d, d);
        let mut qvals = vec![0; d];
        let mut zeta = None;
        let mut labels = Vec::with_capacity(d);
        if kind == FormKind::Linear {
            labels.extend((1..=d).map(|i| format!("v{}", i)));
        } else {
            labels.extend((1..=a).map(|i| format!("e{}", i)));
            labels.extend((1..=a).map(|i| format!("f{}", i)));
            if has_x {
                labels.push("x".into());
            }
            if has_y {
                labels.push("y".into());
            }
            let minus_one = f.neg(1);
            for i in 0..a {
                gram.set(i, a + i, 1);
                gram.set(a + i, i, if kind == FormKind::Symplectic { minus_one } else { 1 });
            }
            let x = 2 * a;
            match kind {
                FormKind::Unitary if has_x => gram.set(x, x, 1),
                FormKind::Quadratic if has_x => {
                    qvals[x] = 1;
                    gram.set(x, x, f.add(1, 1));
                    if has_y {
                        let z = f.find_zeta();
                        zeta = Some(z);
                        qvals[x + 1] = z;
                        gram.set(x, x + 1, 1);
                        gram.set(x + 1, x, 1);
                        gram.set(x + 1, x + 1, f.add(z, z));
                    }
                }
                _ => {}
            }
        }
        Ok(ClassicalForm { kind, sign, d, field: f, gram, qvals, labels, a, has_x, has_y, zeta })
    }

    /// Witt index of the whole space.
    pub fn witt_index(&self) -> usize {
        self.a
    }

    pub fn index_of(&self, b: Bv) -> usize {
        let idx = match b {
            Bv::E(i) => {
                assert!(i >= 1 && i <= self.a, "e{} outside the basis", i);
                i - 1
            }
            Bv::F(i) => {
                assert!(i >= 1 && i <= self.a, "f{} outside the basis", i);
                self.a + i - 1
            }
            Bv::X => {
                assert!(self.has_x, "x outside the basis");
                2 * self.a
            }
            Bv::Y => {
                assert!(self.has_y, "y outside the basis");
                2 * self.a + 1
            }
            Bv::V(i) => i - 1,
        };
        assert!(idx < self.d);
        idx
    }

    /// The vector `sum c_i b_i`.
    pub fn vector(&self, terms: &[(Elt, Bv)]) -> Vector {
        let mut v = vec![0; self.d];
        for &(c, b) in terms {
            let i = self.index_of(b);
            v[i] = self.field.add(v[i], c);
        }
        v
    }

    pub fn span(&self, vectors: &[Vector]) -> Subspace {
        Subspace::span(&self.field, self.d, vectors)
    }

    /// `B(u, v)`, linear in `u` and semilinear in `v` for unitary forms.
    pub fn b(&self, u: &[Elt], v: &[Elt]) -> Elt {
        let f = &self.field;
        if self.kind == FormKind::Linear {
            return 0;
        }
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = self.gram.row(i);
            for (j, &vj) in v.iter().enumerate() {
                if vj != 0 && row[j] != 0 {
                    acc = f.add(acc, f.mul(ui, f.mul(row[j], f.sigma(vj))));
                }
            }
        }
        acc
    }

    /// `Q(v)`; zero for non-quadratic kinds.
    pub fn q(&self, v: &[Elt]) -> Elt {
        if self.kind != FormKind::Quadratic {
            return 0;
        }
        let f = &self.field;
        let mut acc = 0;
        for i in 0..self.d {
            if v[i] == 0 {
                continue;
            }
            if self.qvals[i] != 0 {
                acc = f.add(acc, f.mul(self.qvals[i], f.mul(v[i], v[i])));
            }
            for j in i + 1..self.d {
                let g = self.gram.get(i, j);
                if g != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(g, f.mul(v[i], v[j])));
                }
            }
        }
        acc
    }

    /// Q(v) = 0 for quadratic forms, B(v, v) = 0 otherwise.
    pub fn is_singular_vector(&self, v: &[Elt]) -> bool {
        match self.kind {
            FormKind::Quadratic => self.q(v) == 0,
            FormKind::Linear => true,
            _ => self.b(v, v) == 0,
        }
    }

    pub fn restricted_gram(&self, u: &Subspace) -> Matrix {
        let basis = u.basis_vecs();
        let k = basis.len();
        let mut g = Matrix::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, self.b(&basis[i], &basis[j]));
            }
        }
        g
    }

    /// `{ v : B(v, u) = 0 for all u in U }`
    pub fn perp(&self, u: &Subspace) -> Subspace {
        let f = &self.field;
        if self.kind == FormKind::Linear {
            return Subspace::whole(self.d);
        }
        // B(v, u) = sum_i v_i (G sigma(u))_i
        let rows: Vec<Vector> = u
            .basis()
            .map(|uv| {
                (0..self.d)
                    .map(|i| {
                        let mut acc = 0;
                        for j in 0..self.d {
                            acc = f.add(acc, f.mul(self.gram.get(i, j), f.sigma(uv[j])));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace(f, &rows, self.d);
        Subspace::span(f, self.d, &ns)
    }

    pub fn radical(&self, u: &Subspace) -> Subspace {
        u.meet(&self.field, &self.perp(u))
    }

    pub fn is_totally_singular(&self, u: &Subspace) -> bool {
        let basis = u.basis_vecs();
        basis.iter().all(|x| self.is_singular_vector(x))
            && basis.iter().all(|x| basis.iter().all(|y| self.b(x, y) == 0))
    }

    pub fn classify(&self, u: &Subspace) -> SubspaceClass {
        let f = &self.field;
        if self.kind == FormKind::Linear {
            return SubspaceClass::TotallySingular;
        }
        let even_q = f.characteristic() == 2;
        if self.kind == FormKind::Quadratic && even_q && u.dim == 1 {
            let v: Vec<Elt> = u.basis().next().unwrap().to_vec();
            if self.q(&v) != 0 {
                return SubspaceClass::NonsingularOneSpace;
            }
        }
        if self.is_totally_singular(u) {
            return SubspaceClass::TotallySingular;
        }
        let rad = self.radical(u);
        let q_nondeg_odd = self.kind == FormKind::Quadratic
            && even_q
            && u.dim % 2 == 1
            && rad.dim == 1
            && self.q(rad.basis().next().unwrap()) != 0;
        if rad.dim == 0 || q_nondeg_odd {
            return SubspaceClass::Nondegenerate(self.subspace_sign(u));
        }
        SubspaceClass::DegenerateOther
    }

    /// Sign attached to a non-degenerate subspace: its type when the
    /// dimension is even; the type of the perp when the dimension is odd and
    /// the ambient dimension is odd; otherwise circ.
    fn subspace_sign(&self, u: &Subspace) -> Sign {
        match self.kind {
            FormKind::Quadratic => {
                if u.dim % 2 == 0 {
                    if self.restricted_witt_index(u) == u.dim / 2 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                } else if self.d % 2 == 1 && self.field.characteristic() != 2 {
                    let w = self.perp(u);
                    if w.dim == 0 {
                        Sign::Circ
                    } else if self.restricted_witt_index(&w) == w.dim / 2 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                } else {
                    Sign::Circ
                }
            }
            _ => Sign::None,
        }
    }

    /// Witt index of `Q` restricted to a non-degenerate subspace, by explicit
    /// search for hyperbolic pairs.
    pub fn restricted_witt_index(&self, u: &Subspace) -> usize {
        let f = &self.field;
        let rad = self.radical(u);
        let mut current = u.clone();
        let mut index = 0;
        loop {
            let found = current
                .vectors(f)
                .into_iter()
                .find(|v| !is_zero(v) && self.is_singular_vector(v) && !rad.contains(f, v));
            let Some(v) = found else {
                return index;
            };
            let w0 = current.basis().find(|b| self.b(&v, b) != 0).map(|b| b.to_vec());
            let Some(w0) = w0 else {
                return index;
            };
            let w = vscale(f, f.inv_nz(self.b(&v, &w0)), &w0);
            let plane = self.span(&[v, w]);
            current = current.meet(f, &self.perp(&plane));
            index += 1;
        }
    }

    /// Sign of an even-dimensional non-degenerate subspace from its
    /// discriminant, odd characteristic only.  Used as a cross-check.
    pub fn discriminant_sign(&self, u: &Subspace) -> Result<Sign> {
        let f = &self.field;
        if self.kind != FormKind::Quadratic || f.characteristic() == 2 || u.dim % 2 == 1 {
            return Err(Error::KindMismatch("discriminant sign needs an even-dimensional quadratic subspace, q odd".into()));
        }
        let det = self.restricted_gram(u).det(f);
        if det == 0 {
            return Err(Error::BadParams("degenerate subspace".into()));
        }
        let m = if (u.dim / 2) % 2 == 1 { f.neg(det) } else { det };
        Ok(if f.is_square(m) { Sign::Plus } else { Sign::Minus })
    }

    pub fn orbit_tag(&self, u: &Subspace) -> OrbitTag {
        let class = self.classify(u);
        let f = &self.field;
        let disc_square = match class {
            SubspaceClass::Nondegenerate(_)
                if self.kind == FormKind::Quadratic && f.characteristic() != 2 && u.dim % 2 == 1 =>
            {
                Some(f.is_square(self.restricted_gram(u).det(f)))
            }
            _ => None,
        };
        OrbitTag { dim: u.dim, class, disc_square }
    }

    /// Whether `g` preserves the form (and is invertible).
    pub fn is_isometry(&self, g: &Matrix) -> bool {
        let f = &self.field;
        if g.rows != self.d || g.cols != self.d {
            return false;
        }
        if self.kind == FormKind::Linear {
            return g.rank(f) == self.d;
        }
        let rows = g.row_vecs();
        for i in 0..self.d {
            if self.kind == FormKind::Quadratic && self.q(&rows[i]) != self.qvals[i] {
                return false;
            }
            for j in 0..self.d {
                if self.b(&rows[i], &rows[j]) != self.gram.get(i, j) {
                    return false;
                }
            }
        }
        // the radical of a degenerate quadratic space must not be collapsed
        g.rank(f) == self.d
    }

    /// `(u, v)` with `B(u,u) = B(v,v) = 0`, `B(u,v) = 1`, and `Q(u) = Q(v) = 0`
    /// for quadratic forms.
    pub fn is_hyperbolic_pair(&self, u: &[Elt], v: &[Elt]) -> bool {
        self.b(u, u) == 0
            && self.b(v, v) == 0
            && self.b(u, v) == 1
            && (self.kind != FormKind::Quadratic || (self.q(u) == 0 && self.q(v) == 0))
    }

    /// `Q(u) = 1`, `Q(v) = zeta`, `B(u, v) = 1`.
    pub fn is_elliptic_pair(&self, u: &[Elt], v: &[Elt], zeta: Elt) -> bool {
        self.kind == FormKind::Quadratic && self.q(u) == 1 && self.q(v) == zeta && self.b(u, v) == 1
    }

    /// Render a vector in terms of the basis labels.
    pub fn fmt_vector(&self, v: &[Elt]) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                parts.push(self.labels[i].clone());
            } else if c == f.neg(1) {
                parts.push(format!("-{}", self.labels[i]));
            } else {
                parts.push(format!("({}){}", f.fmt_elt(c), self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }

    pub fn fmt_subspace(&self, u: &Subspace) -> String {
        let parts: Vec<String> = u.basis().map(|b| self.fmt_vector(b)).collect();
        format!("<{}>", parts.join(", "))
    }

    /// A reflection-like isometry in a non-singular vector `z`:
    /// `v -> v - B(v, z) Q(z)^-1 z`.  Fixes `z^perp` pointwise.
    pub fn reflection(&self, z: &[Elt]) -> Result<Matrix> {
        let f = &self.field;
        if self.kind != FormKind::Quadratic {
            return Err(Error::KindMismatch("reflections need a quadratic form".into()));
        }
        let qz = self.q(z);
        if qz == 0 {
            return Err(Error::BadParams("reflection in a singular vector".into()));
        }
        let c = f.neg(f.inv_nz(qz));
        let mut m = Matrix::identity(self.d);
        for i in 0..self.d {
            let mut e = vec![0; self.d];
            e[i] = 1;
            let row = vaxpy(f, &e, f.mul(c, self.b(&e, z)), z);
            for j in 0..self.d {
                m.set(i, j, row[j]);
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_minus_form() {
        let f = Field::new(3).unwrap();
        let form = ClassicalForm::standard(FormKind::Quadratic, Sign::Minus, 4, &f).unwrap();
        let x = form.vector(&[(1, Bv::X)]);
        let y = form.vector(&[(1, Bv::Y)]);
        assert!(form.is_elliptic_pair(&x, &y, form.zeta.unwrap()));
        let whole = Subspace::whole(4);
        assert_eq!(form.classify(&whole), SubspaceClass::Nondegenerate(Sign::Minus));
        assert_eq!(form.discriminant_sign(&whole).unwrap(), Sign::Minus);
    }

    #[test]
    fn radical_of_odd_even_char() {
        let f = Field::new(2).unwrap();
        let form = ClassicalForm::standard(FormKind::Quadratic, Sign::Circ, 7, &f).unwrap();
        let rad = form.radical(&Subspace::whole(7));
        assert_eq!(rad, form.span(&[form.vector(&[(1, Bv::X)])]));
    }

    #[test]
    fn pairs() {
        let f = Field::new(5).unwrap();
        let form = ClassicalForm::standard(FormKind::Symplectic, Sign::None, 4, &f).unwrap();
        let e1 = form.vector(&[(1, Bv::E(1))]);
        let f1 = form.vector(&[(1, Bv::F(1))]);
        assert!(form.is_hyperbolic_pair(&e1, &f1));
        assert!(!form.is_hyperbolic_pair(&f1, &e1));
    }
}
