//! Explicit base candidates for the subspace actions, one constructor per
//! table, and the witness that `d - 2` one-spaces never form a base for an
//! even-dimensional orthogonal group.
//!
//! Row labels follow the tables: `a` is the number of hyperbolic pairs that
//! the row's indices range over, and index ranges are encoded as written.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::actions::{ActionKind, ActionSpec};
use crate::clgroups::{check_admissible, Family};
use crate::error::{Error, Result};
use crate::forms::{Bv, ClassicalForm, FormKind, Sign, SubspaceClass};
use crate::gf::{Elt, Field};
use crate::linalg::{vaxpy, vscale, Matrix, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    /// totally singular 1-spaces
    T1,
    /// totally singular 2-spaces
    T2,
    /// non-degenerate and non-singular 1-spaces
    N1,
    /// non-degenerate 2-spaces, plus type for orthogonal groups
    T3,
    /// minus-type 2-spaces
    T4,
    /// the odd orthogonal model of Sp on cosets of GO
    T6,
}

impl TableId {
    pub fn parse(s: &str) -> Option<TableId> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "t1" => Some(TableId::T1),
            "2" | "t2" => Some(TableId::T2),
            "n1" | "5" | "t5" => Some(TableId::N1),
            "3" | "t3" => Some(TableId::T3),
            "4" | "t4" => Some(TableId::T4),
            "6" | "t6" => Some(TableId::T6),
            _ => None,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::T1 => "1",
            TableId::T2 => "2",
            TableId::N1 => "N1",
            TableId::T3 => "3",
            TableId::T4 => "4",
            TableId::T6 => "6",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub table: TableId,
    pub row: String,
    pub d: usize,
    pub q: usize,
    pub sign: String,
    /// parameter name to rendered field element
    pub chosen_params: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct BaseCandidate {
    pub spec: ActionSpec,
    pub form: ClassicalForm,
    pub points: Vec<Subspace>,
    pub provenance: Provenance,
}

impl BaseCandidate {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Each point has the spec's tag and no point repeats.
    pub fn check_membership(&self) -> Result<()> {
        let want = match self.spec.kind {
            ActionKind::Singular => SubspaceClass::TotallySingular,
            ActionKind::Nondeg(s) | ActionKind::CosetSpGo(s) => SubspaceClass::Nondegenerate(s),
            ActionKind::Nonsingular1 => SubspaceClass::NonsingularOneSpace,
            ActionKind::Partitions { .. } => return Err(Error::BadParams("not a subspace action".into())),
        };
        for (i, p) in self.points.iter().enumerate() {
            if p.dim != self.spec.k {
                return Err(Error::Postcondition(format!("point {} has dimension {}", i, p.dim)));
            }
            let got = self.form.classify(p);
            if got != want {
                return Err(Error::Postcondition(format!(
                    "point {} = {} is {:?}, not {:?}",
                    i,
                    self.form.fmt_subspace(p),
                    got,
                    want
                )));
            }
            if self.points[..i].contains(p) {
                return Err(Error::Postcondition(format!("point {} repeats", i)));
            }
        }
        Ok(())
    }

    pub fn render(&self) -> Vec<String> {
        self.points.iter().map(|p| self.form.fmt_subspace(p)).collect()
    }
}

fn inadmissible<T>(family: Family, d: usize, q: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Inadmissible { family: family.to_string(), d, q, reason: reason.into() })
}

/// Shorthand for building subspaces from basis-label terms.
struct Build {
    form: ClassicalForm,
    f: Field,
    params: BTreeMap<String, String>,
    notes: Vec<String>,
}

type Terms<'a> = &'a [(Elt, Bv)];

impl Build {
    fn new(family: Family, d: usize, q: usize) -> Result<Build> {
        check_admissible(family, d, q)?;
        let f = if family == Family::GU { Field::quadratic(q)? } else { Field::new(q)? };
        let form = ClassicalForm::standard(family.kind(), family.sign(), d, &f)?;
        Ok(Build { form, f, params: BTreeMap::new(), notes: Vec::new() })
    }

    fn m1(&self) -> Elt {
        self.f.neg(1)
    }

    fn v(&self, t: Terms) -> Vector {
        self.form.vector(t)
    }

    fn sp(&self, vecs: &[Terms]) -> Subspace {
        let vs: Vec<Vector> = vecs.iter().map(|t| self.v(t)).collect();
        self.form.span(&vs)
    }

    fn sp_vecs(&self, vecs: &[Vector]) -> Subspace {
        self.form.span(vecs)
    }

    fn param(&mut self, name: &str, c: Elt) {
        self.params.insert(name.into(), self.f.fmt_elt(c));
    }

    fn finish(self, table: TableId, row: &str, spec: ActionSpec, sign: Sign, points: Vec<Subspace>) -> Result<BaseCandidate> {
        let provenance = Provenance {
            table,
            row: row.into(),
            d: spec.d,
            q: spec.q,
            sign: sign.to_string(),
            chosen_params: self.params,
            notes: self.notes,
        };
        let c = BaseCandidate { spec, form: self.form, points, provenance };
        c.check_membership()?;
        Ok(c)
    }
}

/// Totally singular 1-spaces.
pub fn table1_base(family: Family, d: usize, q: usize) -> Result<BaseCandidate> {
    use Bv::*;
    if family == Family::GL {
        return inadmissible(family, d, q, "no row for the linear groups");
    }
    if family.is_orthogonal() && d < 5 || d < 3 {
        return inadmissible(family, d, q, "needs d >= 5 for orthogonal groups, d >= 3 otherwise");
    }
    let mut b = Build::new(family, d, q)?;
    let a = b.form.a;
    let m1 = b.m1();
    let mut pts = vec![b.sp(&[&[(1, E(1))]]), b.sp(&[&[(1, F(1))]])];
    let vi = |b: &Build, i| b.sp(&[&[(1, E(1)), (1, E(i))]]);
    let wi = |b: &Build, i| b.sp(&[&[(1, E(1)), (1, F(i))]]);
    let t = |b: &Build| b.sp(&[&[(m1, E(1)), (1, F(1)), (1, X)]]);
    let row = match family {
        Family::GU if d % 2 == 1 => {
            let f = &b.f;
            let mu = f.solve_trace(f.neg(1))?;
            for i in 2..=a {
                pts.push(vi(&b, i));
                pts.push(wi(&b, i));
            }
            pts.push(b.sp(&[&[(1, E(1)), (mu, F(1)), (1, X)]]));
            b.param("mu", mu);
            "PGU_{2a+1}(q)"
        }
        Family::GU | Family::Sp => {
            for i in 2..=a {
                pts.push(vi(&b, i));
                pts.push(wi(&b, i));
            }
            "PGU_{2a}(q), PSp_{2a}(q)"
        }
        Family::GOplus => {
            pts.extend((2..=a).map(|i| vi(&b, i)));
            pts.extend((2..a).map(|j| wi(&b, j)));
            "PGO+_{2a}(q)"
        }
        Family::GOcirc => {
            pts.extend((2..=a).map(|i| vi(&b, i)));
            pts.extend((2..a).map(|j| wi(&b, j)));
            pts.push(t(&b));
            "PGO_{2a+1}(q)"
        }
        Family::GOminus => {
            let zeta = b.form.zeta.unwrap();
            pts.extend((2..=a).map(|i| vi(&b, i)));
            pts.extend((2..a).map(|j| wi(&b, j)));
            pts.push(t(&b));
            pts.push(b.sp(&[&[(b.f.neg(zeta), E(1)), (1, F(1)), (1, Y)]]));
            b.param("zeta", zeta);
            "PGO-_{2a+2}(q)"
        }
        Family::GL => unreachable!(),
    };
    let spec = ActionSpec::subspaces(family, d, q, 1, ActionKind::Singular);
    b.finish(TableId::T1, row, spec, family.sign(), pts)
}

/// Totally singular 2-spaces; all 2-spaces for the linear groups.
pub fn table2_base(family: Family, d: usize, q: usize) -> Result<BaseCandidate> {
    use Bv::*;
    if d < 4 || family.is_orthogonal() && d < 7 {
        return inadmissible(family, d, q, "needs d >= 4, and d >= 7 for orthogonal groups");
    }
    let mut b = Build::new(family, d, q)?;
    let spec = ActionSpec::subspaces(family, d, q, 2, ActionKind::Singular);
    let a = d.div_ceil(2);
    let m1 = b.m1();
    if family == Family::GL {
        let vsum = |idx: &[usize]| -> Vector {
            let mut v = vec![0; d];
            for &i in idx {
                v[i - 1] = 1;
            }
            v
        };
        let (row, pts) = if d == 4 {
            let pts = vec![
                b.sp_vecs(&[vsum(&[1]), vsum(&[2])]),
                b.sp_vecs(&[vsum(&[3]), vsum(&[4])]),
                b.sp_vecs(&[vsum(&[1, 3]), vsum(&[2, 4])]),
                b.sp_vecs(&[vsum(&[2]), vsum(&[4])]),
                b.sp_vecs(&[vsum(&[1, 2]), vsum(&[3])]),
            ];
            ("PGL_4(q)", pts)
        } else {
            // X_i = <v_{2i-1}, v_{2i}> with v_{d+1} = v_1
            let wrap = |i: usize| if i > d { i - d } else { i };
            let mut pts: Vec<Subspace> =
                (1..=a).map(|i| b.sp_vecs(&[vsum(&[wrap(2 * i - 1)]), vsum(&[wrap(2 * i)])])).collect();
            let odd: Vec<usize> = (1..=a).map(|i| 2 * i - 1).collect();
            let even: Vec<usize> = (1..a).map(|i| 2 * i).collect();
            pts.push(b.sp_vecs(&[vsum(&odd), vsum(&even)]));
            pts.push(b.sp_vecs(&[vsum(&[1]), vsum(&[3, 2 * a - 2, d])]));
            ("PGL_d(q), d >= 5", pts)
        };
        return b.finish(TableId::T2, row, spec, Sign::None, pts);
    }
    let v1 = b.sp(&[&[(1, E(1))], &[(1, E(2))]]);
    let v2 = b.sp(&[&[(1, F(1))], &[(1, F(2))]]);
    let wi = |b: &Build, i| b.sp(&[&[(1, E(1)), (1, E(i))], &[(1, E(2)), (m1, F(1)), (1, F(i))]]);
    let small = |b: &mut Build| -> Result<(&'static str, Vec<Subspace>)> {
        let f = b.f.clone();
        Ok(match (family, d) {
            (Family::GU, 4) => {
                let mu = f.solve_trace_where(0, |m| m != 0)?;
                b.param("mu", mu);
                let pts = vec![
                    v1.clone(),
                    v2.clone(),
                    b.sp(&[&[(1, E(1)), (mu, F(1))], &[(1, E(2)), (mu, F(2))]]),
                    b.sp(&[&[(1, E(1))], &[(1, F(2))]]),
                    b.sp(&[&[(1, E(1)), (m1, E(2))], &[(1, F(1)), (1, F(2))]]),
                ];
                ("PGU_4(q)", pts)
            }
            (Family::Sp, 4) => {
                let first = b.sp(&[&[(1, E(1)), (1, F(1)), (1, F(2))], &[(1, E(2)), (1, F(1))]]);
                if q % 2 == 0 {
                    let last = b.sp(&[&[(1, E(1)), (1, F(2))], &[(1, E(2)), (1, F(1)), (1, F(2))]]);
                    ("PSp_4(q), q even", vec![v1.clone(), v2.clone(), first, last])
                } else {
                    let last = b.sp(&[&[(1, E(1)), (1, F(2))], &[(1, E(2)), (1, F(1))]]);
                    ("PSp_4(q), q odd", vec![v1.clone(), v2.clone(), first, last])
                }
            }
            (Family::GU, 5) => {
                let lambda = f.solve_trace(1)?;
                b.param("lambda", lambda);
                let pts = vec![
                    v1.clone(),
                    v2.clone(),
                    b.sp(&[&[(m1, E(2)), (lambda, F(2)), (1, X)], &[(1, F(1))]]),
                    b.sp(&[&[(m1, E(1)), (lambda, F(1)), (1, X)], &[(1, F(2))]]),
                ];
                ("PGU_5(q)", pts)
            }
            (Family::Sp | Family::GU, 6) => {
                let pts = vec![
                    v1.clone(),
                    v2.clone(),
                    b.sp(&[&[(1, E(1)), (1, E(3))], &[(1, E(2)), (m1, F(1)), (1, F(3))]]),
                    b.sp(&[&[(1, E(1)), (m1, E(2))], &[(1, F(1)), (1, F(2))]]),
                ];
                ("PSp_6(q), PGU_6(q)", pts)
            }
            _ => return inadmissible(family, d, q, "no small-d row"),
        })
    };
    if d <= 6 {
        let (row, pts) = small(&mut b)?;
        return b.finish(TableId::T2, row, spec, family.sign(), pts);
    }
    // a >= 4 from here on
    let mut pts = vec![v1.clone(), v2.clone()];
    pts.extend((3..a).map(|i| wi(&b, i)));
    let row = match family {
        Family::GU | Family::Sp | Family::GOplus if d % 2 == 0 => {
            pts.push(b.sp(&[&[(1, E(1)), (1, E(a))], &[(1, E(2)), (m1, E(a)), (m1, F(1)), (1, F(2)), (1, F(a))]]));
            "PGU_{2a}(q), PSp_{2a}(q), PGO+_{2a}(q)"
        }
        Family::GU => {
            let lambda = b.f.solve_trace(1)?;
            b.param("lambda", lambda);
            pts.push(b.sp(&[&[(m1, E(1)), (lambda, F(1)), (1, X)], &[(1, E(3)), (1, F(2))]]));
            "PGU_{2a-1}(q)"
        }
        Family::GOcirc => {
            pts.push(b.sp(&[&[(m1, E(1)), (1, F(1)), (1, X)], &[(1, E(3)), (1, F(2))]]));
            if d == 7 {
                b.notes.push("d = 7 read as the PGO_{2a-1} row with a = 4".into());
            }
            "PGO_{2a-1}(q)"
        }
        Family::GOminus => {
            let zeta = b.form.zeta.unwrap();
            b.param("zeta", zeta);
            let mz = b.f.neg(zeta);
            pts.push(b.sp(&[&[(m1, E(1)), (1, E(2)), (1, F(1)), (1, X)], &[(mz, E(1)), (1, F(1)), (zeta, F(2)), (1, Y)]]));
            "PGO-_{2a}(q)"
        }
        _ => return inadmissible(family, d, q, "no row"),
    };
    b.finish(TableId::T2, row, spec, family.sign(), pts)
}

/// Orthonormal basis for the standard unitary form: repeatedly take the
/// least vector with nonzero norm in the current perp and rescale.
pub fn orthonormal_basis(form: &ClassicalForm) -> Result<Vec<Vector>> {
    let f = &form.field;
    if form.kind != FormKind::Unitary {
        return Err(Error::KindMismatch("orthonormal bases are built for unitary forms".into()));
    }
    let mut basis: Vec<Vector> = Vec::new();
    let mut current = Subspace::whole(form.d);
    while current.dim > 0 {
        let v = current
            .one_spaces(f)
            .into_iter()
            .find(|v| form.b(v, v) != 0)
            .ok_or_else(|| Error::Postcondition("no anisotropic vector".into()))?;
        let n = form.b(&v, &v);
        // c^(q+1) = n^-1 has a solution since the norm map is onto
        let target = f.inv_nz(n);
        let c = f.elements().find(|&c| c != 0 && f.norm(c).unwrap() == target).unwrap();
        let v = vscale(f, c, &v);
        basis.push(v.clone());
        let perp = form.perp(&form.span(&[v]));
        current = current.meet(f, &perp);
    }
    Ok(basis)
}

/// Non-degenerate 1-spaces for the unitary groups, and the orbit of
/// non-degenerate or non-singular 1-spaces labelled by `sign` for the
/// orthogonal groups (the sign of the perp for odd `d`, circ for even `d`).
pub fn table_n1_base(family: Family, d: usize, q: usize, sign: Sign) -> Result<BaseCandidate> {
    use Bv::*;
    let mut b = Build::new(family, d, q)?;
    let f = b.f.clone();
    if family == Family::GU {
        if d < 3 {
            return inadmissible(family, d, q, "needs d >= 3");
        }
        let on = orthonormal_basis(&b.form)?;
        b.notes.push(format!(
            "orthonormal basis v1..v{} = {}",
            d,
            on.iter().map(|v| b.form.fmt_vector(v)).collect::<Vec<_>>().join("; ")
        ));
        let one = |v: &Vector| b.form.span(&[v.clone()]);
        let (row, pts) = if d % 2 == 1 || q > 2 {
            let alpha = f.primitive_element();
            let head = on[..d - 1].iter().fold(vec![0; d], |acc, v| vaxpy(&f, &acc, 1, v));
            let mu = [alpha, f.inv_nz(alpha), f.mul(alpha, alpha)]
                .into_iter()
                .find(|&mu| {
                    let v = vaxpy(&f, &head, mu, &on[d - 1]);
                    b.form.b(&v, &v) != 0
                })
                .ok_or_else(|| Error::Postcondition("no admissible mu".into()))?;
            let mut pts: Vec<Subspace> = on[..d - 1].iter().map(one).collect();
            pts.push(one(&vaxpy(&f, &head, mu, &on[d - 1])));
            b.param("alpha", alpha);
            b.param("mu", mu);
            ("d odd or q > 2", pts)
        } else {
            let s12 = vaxpy(&f, &on[0], 1, &on[1]);
            let mut pts = vec![one(&on[0]), one(&on[1])];
            pts.extend((2..d).map(|i| one(&vaxpy(&f, &s12, 1, &on[i]))));
            ("d even and q = 2", pts)
        };
        let spec = ActionSpec::subspaces(family, d, q, 1, ActionKind::Nondeg(Sign::None));
        return b.finish(TableId::N1, row, spec, Sign::None, pts);
    }
    if !family.is_orthogonal() {
        return inadmissible(family, d, q, "no row for this family");
    }
    if q % 2 == 0 && d % 2 == 1 {
        return inadmissible(family, d, q, "odd d with q even has no row");
    }
    let a = b.form.a;
    let m1 = b.m1();
    // w_k(nu) = e_k - nu f_k
    let w = |k: usize, nu: Elt| -> Vec<(Elt, Bv)> { vec![(1, E(k)), (f.neg(nu), F(k))] };
    let with = |mut t: Vec<(Elt, Bv)>, extra: &[(Elt, Bv)]| {
        t.extend_from_slice(extra);
        t
    };
    // -alpha non-square, q odd
    let alpha = || f.elements().find(|&c| c != 0 && !f.is_square(f.neg(c))).unwrap();
    let kind = if q % 2 == 0 { ActionKind::Nonsingular1 } else { ActionKind::Nondeg(sign) };
    let (row, pts) = match (family, d, sign) {
        (Family::GOminus, 4, _) if q == 3 => {
            return inadmissible(family, d, q, "the (4,o,-) row excludes q = 3; b = 4 is checked by search");
        }
        (Family::GOminus, _, Sign::Circ | Sign::None) if d >= 4 && (d == 4 || d >= 6) && q != 3 => {
            let (v1, v2) = minus_pair(&b.form)?;
            b.params.insert("v1".into(), b.form.fmt_vector(&v1));
            b.params.insert("v2".into(), b.form.fmt_vector(&v2));
            let x = b.v(&[(1, X)]);
            let mut pts = vec![b.sp_vecs(&[x.clone()]), b.sp_vecs(&[v1])];
            for i in 1..=a {
                pts.push(b.sp_vecs(&[vaxpy(&f, &v2, 1, &b.v(&[(1, E(i))]))]));
            }
            for j in 1..a {
                pts.push(b.sp(&[&[(1, F(j)), (1, X)]]));
            }
            (if d == 4 { "(4,o,-), q != 3" } else { "(>=6,o,-), q != 3" }, pts)
        }
        (Family::GOminus, _, Sign::Circ | Sign::None) if d >= 6 => {
            let mut pts = vec![b.sp(&[&[(1, X)]])];
            pts.extend((1..=a).map(|i| b.sp(&[&[(1, E(i)), (1, X)]])));
            pts.push(b.sp(&[&with(w(1, 1), &[(1, Y)])]));
            pts.extend((1..a).map(|j| b.sp(&[&[(1, F(j)), (1, X)]])));
            ("(>=6,o,-), q = 3", pts)
        }
        (Family::GOplus, _, Sign::Circ | Sign::None) if d >= 6 => {
            let w1 = w(1, m1);
            let mut pts = vec![b.sp(&[&w1])];
            pts.extend((2..=a).map(|i| b.sp(&[&with(w1.clone(), &[(1, E(i))])])));
            pts.extend((2..a).map(|j| b.sp(&[&with(w1.clone(), &[(1, F(j))])])));
            pts.push(b.sp(&[&with(w(2, m1), &[(1, E(1))])]));
            ("(>=6,o,+)", pts)
        }
        (Family::GOcirc, 5, Sign::Plus) => {
            let pts = vec![
                b.sp(&[&[(1, X)]]),
                b.sp(&[&[(1, E(1)), (1, X)]]),
                b.sp(&[&[(1, F(1)), (1, X)]]),
                b.sp(&[&[(1, E(2)), (1, X)]]),
            ];
            ("(5,+,o)", pts)
        }
        (Family::GOcirc, 7.., Sign::Plus) => {
            let mut pts = vec![b.sp(&[&[(1, X)]])];
            pts.extend((1..=a).map(|i| b.sp(&[&[(1, E(i)), (1, X)]])));
            pts.extend((1..a).map(|j| b.sp(&[&[(1, F(j)), (1, X)]])));
            ("(>=7,+,o)", pts)
        }
        (Family::GOcirc, 5, Sign::Minus) | (Family::GOcirc, 7.., Sign::Minus) => {
            let al = alpha();
            b.param("alpha", al);
            let w1 = w(1, al);
            let op = f.add(1, al);
            let mut pts = vec![b.sp(&[&w1])];
            let row = if d == 5 {
                pts.push(b.sp(&[&with(w1.clone(), &[(1, E(2))])]));
                pts.push(b.sp(&[&with(w1.clone(), &[(1, F(2))])]));
                pts.push(b.sp(&[&with(w(2, al), &[(1, E(1))])]));
                "(5,-,o)"
            } else {
                pts.extend((2..=a).map(|i| b.sp(&[&with(w1.clone(), &[(1, E(i))])])));
                pts.extend((2..a).map(|j| b.sp(&[&with(w1.clone(), &[(1, F(j))])])));
                pts.push(b.sp(&[&with(w(2, al), &[(1, E(1))])]));
                "(>=7,-,o)"
            };
            pts.push(b.sp(&[&with(w(2, op), &[(1, F(1)), (1, X)])]));
            (row, pts)
        }
        _ => return inadmissible(family, d, q, format!("no row for orbit sign {}", sign)),
    };
    let spec = ActionSpec::subspaces(family, d, q, 1, kind);
    let sign = if q % 2 == 0 { Sign::None } else { sign };
    b.finish(TableId::N1, row, spec, sign, pts)
}

/// `v1, v2` in `<x, y>` with square `Q` values, `<x>, <v1>, <v2>` distinct;
/// the first two such 1-spaces in point order.
fn minus_pair(form: &ClassicalForm) -> Result<(Vector, Vector)> {
    let f = &form.field;
    let x = form.vector(&[(1, Bv::X)]);
    let y = form.vector(&[(1, Bv::Y)]);
    let plane = form.span(&[x.clone(), y]);
    let xs = form.span(&[x]);
    let mut found = plane
        .one_spaces(f)
        .into_iter()
        .filter(|v| form.q(v) != 0 && f.is_square(form.q(v)) && form.span(&[v.clone()]) != xs);
    match (found.next(), found.next()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Postcondition("fewer than two square-valued points in <x, y>".into())),
    }
}

/// Non-degenerate 2-spaces, plus type for orthogonal groups.
pub fn table3_base(family: Family, d: usize, q: usize) -> Result<BaseCandidate> {
    use Bv::*;
    if d < 5 || family.is_orthogonal() && d < 7 {
        return inadmissible(family, d, q, "needs d >= 5, and d >= 7 for orthogonal groups");
    }
    if family == Family::GL {
        return inadmissible(family, d, q, "no row for the linear groups");
    }
    let mut b = Build::new(family, d, q)?;
    let a = d.div_ceil(2);
    let m1 = b.m1();
    let v1 = b.sp(&[&[(1, E(1))], &[(1, F(1))]]);
    let v2 = b.sp(&[&[(1, E(2))], &[(1, F(1)), (1, F(2))]]);
    let wi = |b: &Build, i| b.sp(&[&[(1, E(1)), (1, E(i))], &[(1, F(2)), (1, F(i))]]);
    let mut pts = vec![v1, v2];
    let row = match family {
        Family::Sp | Family::GU if d == 6 => {
            if q % 2 == 0 {
                return inadmissible(family, d, q, "d = 6 rows exist only for q odd");
            }
            pts.push(wi(&b, 3));
            pts.push(b.sp(&[&[(1, E(1)), (1, E(2))], &[(1, E(1)), (1, F(2)), (1, F(3))]]));
            "PSp_6(q), PGU_6(q), q odd"
        }
        Family::GU if d % 2 == 1 => {
            if a < 3 {
                return inadmissible(family, d, q, "needs a >= 3");
            }
            let lambda = b.f.solve_trace(1)?;
            b.param("lambda", lambda);
            let mf = b.f.neg(1);
            pts.extend((3..a).map(|i| wi(&b, i)));
            pts.push(b.sp(&[&[(lambda, E(1)), (mf, F(1)), (1, X)], &[(lambda, E(2)), (mf, F(2)), (1, X)]]));
            "PGU_{2a-1}(q)"
        }
        _ if a < 4 => return inadmissible(family, d, q, "needs a >= 4"),
        Family::GU | Family::Sp | Family::GOplus if d % 2 == 0 => {
            pts.extend((3..a).map(|i| wi(&b, i)));
            if q % 2 == 0 {
                pts.push(b.sp(&[&[(1, E(2)), (1, E(a)), (1, F(1))], &[(1, E(1)), (1, F(2)), (1, F(a))]]));
                "PGU_{2a}(q), PSp_{2a}(q), PGO+_{2a}(q), q even"
            } else {
                pts.push(b.sp(&[&[(1, E(a)), (1, F(1))], &[(1, E(2)), (1, F(1)), (1, F(a))]]));
                "PGU_{2a}(q), PSp_{2a}(q), PGO+_{2a}(q), q odd"
            }
        }
        Family::GOminus => {
            let zeta = b.form.zeta.unwrap();
            b.param("zeta", zeta);
            pts.extend((3..a).map(|i| wi(&b, i)));
            pts.push(b.sp(&[&[(1, E(1)), (m1, F(1)), (1, X)], &[(zeta, E(2)), (m1, F(2)), (1, Y)]]));
            "PGO-_{2a}(q)"
        }
        Family::GOcirc => {
            pts.extend((3..a).map(|i| wi(&b, i)));
            pts.push(b.sp(&[&[(1, E(1)), (m1, F(1)), (1, X)], &[(1, E(2)), (m1, F(2)), (1, X)]]));
            "PGO_{2a-1}(q)"
        }
        _ => return inadmissible(family, d, q, "no row"),
    };
    let sign = if family.is_orthogonal() { Sign::Plus } else { Sign::None };
    let spec = ActionSpec::subspaces(family, d, q, 2, ActionKind::Nondeg(sign));
    b.finish(TableId::T3, row, spec, sign, pts)
}

/// Minus-type 2-spaces for the orthogonal groups, `d >= 7`.
pub fn table4_base(family: Family, d: usize, q: usize) -> Result<BaseCandidate> {
    use Bv::*;
    if !family.is_orthogonal() || d < 7 {
        return inadmissible(family, d, q, "orthogonal groups with d >= 7 only");
    }
    let mut b = Build::new(family, d, q)?;
    let a = d.div_ceil(2);
    let m1 = b.m1();
    let zeta = b.form.zeta.unwrap_or_else(|| b.f.find_zeta());
    b.param("zeta", zeta);
    let v1 = b.sp(&[&[(1, E(1)), (1, F(1))], &[(1, E(2)), (1, F(1)), (zeta, F(2))]]);
    let v2 = if zeta != 1 {
        b.sp(&[&[(1, E(2)), (1, F(1)), (1, F(2))], &[(1, E(1)), (zeta, F(1))]])
    } else {
        b.sp(&[&[(1, E(1)), (1, F(1)), (1, F(2))], &[(1, E(2)), (1, F(2))]])
    };
    let mut pts = vec![v1, v2];
    pts.extend((3..a).map(|i| b.sp(&[&[(1, E(1)), (1, E(i)), (1, F(1))], &[(1, E(2)), (zeta, E(i)), (1, F(i))]])));
    let row = match family {
        Family::GOcirc => {
            pts.push(b.sp(&[&[(1, E(2)), (1, F(1)), (1, X)], &[(1, E(1)), (1, E(3)), (zeta, F(3))]]));
            "PGO_{2a-1}(q)"
        }
        Family::GOplus => {
            pts.push(b.sp(&[&[(1, E(1)), (1, E(2)), (1, F(2)), (1, F(a))], &[(1, E(3)), (1, F(1)), (zeta, F(3))]]));
            "PGO+_{2a}(q)"
        }
        _ => {
            pts.push(b.sp(&[&[(1, E(1)), (m1, E(3)), (1, X)], &[(1, F(1)), (1, F(3)), (1, Y)]]));
            "PGO-_{2a}(q)"
        }
    };
    let spec = ActionSpec::subspaces(family, d, q, 2, ActionKind::Nondeg(Sign::Minus));
    b.finish(TableId::T4, row, spec, Sign::Minus, pts)
}

/// Non-degenerate 2-spaces of the given sign: plus (or unsigned) rows from
/// Table 3, minus rows from Table 4.
pub fn table3_table4_base(family: Family, d: usize, q: usize, sign: Sign) -> Result<BaseCandidate> {
    if sign == Sign::Minus {
        table4_base(family, d, q)
    } else {
        table3_base(family, d, q)
    }
}

/// GO_{2m+1}(q), q even, on non-degenerate 2m-spaces of the given sign.
pub fn table6_base(m: usize, q: usize, sign: Sign) -> Result<BaseCandidate> {
    use Bv::*;
    if q % 2 == 1 {
        return Err(Error::OddQ);
    }
    if m < 2 {
        return inadmissible(Family::Sp, 2 * m, q, "needs m >= 2");
    }
    let d = 2 * m + 1;
    let mut b = Build::new(Family::GOcirc, d, q)?;
    let f = b.f.clone();
    let lambda = f.sqrt(f.find_zeta()).unwrap();
    b.param("lambda", lambda);
    // A_i = <e_i, f_i>, B_i = <e_i + x, f_i + lambda x>
    let a_i = |i| vec![b.v(&[(1, E(i))]), b.v(&[(1, F(i))])];
    let b_i = |i| vec![b.v(&[(1, E(i)), (1, X)]), b.v(&[(1, F(i)), (lambda, X)])];
    let e_fx = |i| vec![b.v(&[(1, E(i))]), b.v(&[(1, F(i)), (1, X)])];
    let ex_f = |i| vec![b.v(&[(1, E(i)), (1, X)]), b.v(&[(1, F(i))])];
    // direct sum with slot `i` replaced
    let sum = |first: Vec<Vector>, slot: usize, piece: Vec<Vector>| -> Subspace {
        let mut vs = Vec::new();
        for k in 1..=m {
            if k == slot {
                vs.extend(piece.clone());
            } else if k == 1 {
                vs.extend(first.clone());
            } else {
                vs.extend(a_i(k));
            }
        }
        b.form.span(&vs)
    };
    let (row, pts) = match sign {
        Sign::Plus => {
            let mut pts = vec![sum(a_i(1), 0, vec![])];
            pts.extend((1..=m).map(|i| sum(a_i(1), i, e_fx(i))));
            pts.extend((1..m).map(|j| sum(a_i(1), j, ex_f(j))));
            ("N+(H, 2m)", pts)
        }
        Sign::Minus => {
            let mut pts = vec![sum(b_i(1), 0, vec![])];
            pts.extend((2..=m).map(|i| sum(b_i(1), i, e_fx(i))));
            pts.extend((2..m).map(|j| sum(b_i(1), j, ex_f(j))));
            pts.push(sum(a_i(1), 2, b_i(2)));
            pts.push(sum(e_fx(1), 2, b_i(2)));
            b.notes.push("V_j read with the summand <e_j + x, f_j> in slot j".into());
            ("N-(H, 2m)", pts)
        }
        _ => return Err(Error::BadParams("the coset action needs sign + or -".into())),
    };
    let spec = ActionSpec::coset(m, q, sign);
    let mut c = b.finish(TableId::T6, row, spec, sign, pts)?;
    c.provenance.d = 2 * m;
    Ok(c)
}

/// Candidate for any table by id.
pub fn table_base(table: TableId, family: Family, d: usize, q: usize, sign: Sign) -> Result<BaseCandidate> {
    match table {
        TableId::T1 => table1_base(family, d, q),
        TableId::T2 => table2_base(family, d, q),
        TableId::N1 => table_n1_base(family, d, q, sign),
        TableId::T3 => table3_base(family, d, q),
        TableId::T4 => table4_base(family, d, q),
        TableId::T6 => {
            if d % 2 == 1 {
                return Err(Error::BadParams("Table 6 takes d = 2m".into()));
            }
            table6_base(d / 2, q, sign)
        }
    }
}

/// A non-scalar isometry fixing each of `d - 2` given 1-spaces of an
/// even-dimensional quadratic space.
pub fn tightness_witness(form: &ClassicalForm, spaces: &[Subspace]) -> Result<Matrix> {
    let f = &form.field;
    let d = form.d;
    if form.kind != FormKind::Quadratic || d % 2 == 1 || d < 6 {
        return Err(Error::BadParams("needs a quadratic form with d even, d >= 6".into()));
    }
    if spaces.len() != d - 2 || spaces.iter().any(|s| s.dim != 1 || s.ambient != d) {
        return Err(Error::BadParams(format!("needs exactly {} one-spaces", d - 2)));
    }
    // W: the span, extended by standard basis vectors to dimension d - 2
    let mut w = spaces.iter().fold(Subspace::zero(d), |acc, s| acc.join(f, s));
    for i in 0..d {
        if w.dim == d - 2 {
            break;
        }
        let mut e = vec![0; d];
        e[i] = 1;
        if !w.contains(f, &e) {
            w = w.join(f, &form.span(&[e]));
        }
    }
    let rad = form.radical(&w);
    let g = if rad.dim == 0 {
        let z = form
            .perp(&w)
            .vectors(f)
            .into_iter()
            .find(|z| form.q(z) != 0)
            .ok_or_else(|| Error::Postcondition("non-degenerate complement without a non-singular vector".into()))?;
        form.reflection(&z)?
    } else if let Some(u) = rad.vectors(f).into_iter().find(|u| form.q(u) != 0) {
        form.reflection(&u)?
    } else if rad.dim == 1 {
        let u = rad.basis_vecs().remove(0);
        let u2 = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .find(|e| form.b(&u, e) != 0)
            .unwrap();
        let w1 = w.join(f, &form.span(&[u2]));
        let z = form.perp(&w1).basis_vecs().remove(0);
        form.reflection(&z)?
    } else {
        two_dim_radical_shear(form, &w, &rad)?
    };
    let ok = form.is_isometry(&g)
        && spaces.iter().all(|s| s.act(f, &g) == *s)
        && !g.is_scalar();
    if !ok {
        return Err(Error::Postcondition("tightness witness failed its checks".into()));
    }
    Ok(g)
}

/// `t1 -> t1 + u2`, `t2 -> t2 - u1`, identity on `W`, where `U = rad W` is a
/// totally singular 2-space and `(u_i, t_i)` are hyperbolic pairs.
fn two_dim_radical_shear(form: &ClassicalForm, w: &Subspace, rad: &Subspace) -> Result<Matrix> {
    let f = &form.field;
    let d = form.d;
    let pair_for = |u: &[Elt], inside: &Subspace| -> Option<Vector> {
        let t = inside.basis().find(|b| form.b(u, b) != 0)?.to_vec();
        let t = vscale(f, f.inv_nz(form.b(u, &t)), &t);
        Some(vaxpy(f, &t, f.neg(form.q(&t)), u))
    };
    let u1 = rad.basis_vecs().remove(0);
    let t1 = pair_for(&u1, &Subspace::whole(d)).ok_or(Error::Singular)?;
    let h1 = form.span(&[u1.clone(), t1.clone()]);
    let h1perp = form.perp(&h1);
    let u2 = rad.meet(f, &h1perp).basis_vecs().remove(0);
    let t2 = pair_for(&u2, &h1perp).ok_or(Error::Singular)?;
    let mut src = w.basis_vecs();
    let mut dst = w.basis_vecs();
    src.push(t1.clone());
    src.push(t2.clone());
    dst.push(vaxpy(f, &t1, 1, &u2));
    dst.push(vaxpy(f, &t2, f.neg(1), &u1));
    let m = Matrix::from_rows(&src);
    let c = Matrix::from_rows(&dst);
    Ok(m.inverse(f)?.mul(f, &c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(table1_base(Family::GU, 5, 2).unwrap().len(), 5);
        assert_eq!(table1_base(Family::GOplus, 6, 2).unwrap().len(), 5);
        assert_eq!(table1_base(Family::Sp, 4, 3).unwrap().len(), 4);
        assert_eq!(table2_base(Family::GL, 4, 2).unwrap().len(), 5);
        assert_eq!(table2_base(Family::GU, 8, 2).unwrap().len(), 4);
        assert_eq!(table3_base(Family::Sp, 8, 2).unwrap().len(), 4);
        assert_eq!(table4_base(Family::GOcirc, 9, 3).unwrap().len(), 5);
        assert_eq!(table6_base(3, 2, Sign::Minus).unwrap().len(), 6);
        assert_eq!(table6_base(3, 2, Sign::Plus).unwrap().len(), 6);
    }

    #[test]
    fn inadmissible_rows() {
        assert!(matches!(table3_base(Family::Sp, 6, 2), Err(Error::Inadmissible { .. })));
        assert!(matches!(table6_base(3, 3, Sign::Plus), Err(Error::OddQ)));
        assert!(matches!(table_n1_base(Family::GOminus, 4, 3, Sign::Circ), Err(Error::Inadmissible { .. })));
    }
}
