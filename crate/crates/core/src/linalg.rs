//! Vectors, matrices and canonical subspaces over a [`Field`].
//!
//! Row vectors, right action: a matrix `g` sends `v` to `v g`, and a subspace
//! `U` to `U g`.  Subspaces are stored by their reduced row echelon basis, so
//! structural equality and hashing coincide with equality of subspaces.

use crate::error::{Error, Result};
use crate::gf::{Elt, Field};

pub type Vector = Vec<Elt>;

pub fn vadd(f: &Field, a: &[Elt], b: &[Elt]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vsub(f: &Field, a: &[Elt], b: &[Elt]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vscale(f: &Field, c: Elt, a: &[Elt]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `a + c b`
pub fn vaxpy(f: &Field, a: &[Elt], c: Elt, b: &[Elt]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, f.mul(c, y))).collect()
}

pub fn is_zero(v: &[Elt]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Scale so that the first nonzero coordinate is 1.
pub fn normalize(f: &Field, v: &[Elt]) -> Vector {
    match v.iter().find(|&&x| x != 0) {
        Some(&lead) => vscale(f, f.inv_nz(lead), v),
        None => v.to_vec(),
    }
}

/// Reduce the `nrows x ncols` row-major block to reduced row echelon form in
/// place and return the rank.  Nonzero rows end up first.
pub fn rref_in_place(f: &Field, data: &mut [Elt], nrows: usize, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| data[r * ncols + col] != 0) else {
            continue;
        };
        if piv != rank {
            for c in 0..ncols {
                data.swap(piv * ncols + c, rank * ncols + c);
            }
        }
        let inv = f.inv_nz(data[rank * ncols + col]);
        for c in col..ncols {
            data[rank * ncols + c] = f.mul(inv, data[rank * ncols + c]);
        }
        for r in 0..nrows {
            if r == rank {
                continue;
            }
            let factor = data[r * ncols + col];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for c in col..ncols {
                let t = data[rank * ncols + c];
                if t != 0 {
                    data[r * ncols + c] = f.add(data[r * ncols + c], f.mul(nf, t));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{ x : M x^T = 0 }` for the given rows of length `ncols`.
pub fn nullspace(f: &Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut data: Vec<Elt> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    let rank = rref_in_place(f, &mut data, rows.len(), ncols);
    let mut pivots = Vec::with_capacity(rank);
    for r in 0..rank {
        pivots.push((0..ncols).find(|&c| data[r * ncols + c] != 0).unwrap());
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(data[r * ncols + free]);
        }
        basis.push(v);
    }
    basis
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elt>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: Elt) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix { rows: rows.len(), cols, data: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Apply a field map entrywise (e.g. the Frobenius twist).
    pub fn map(&self, g: impl Fn(Elt) -> Elt) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| g(x)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// `v M` for a row vector `v`.
    pub fn apply(&self, f: &Field, v: &[Elt]) -> Vector {
        let mut out = vec![0; self.cols];
        self.apply_into(f, v, &mut out);
        out
    }

    #[inline]
    pub fn apply_into(&self, f: &Field, v: &[Elt], out: &mut [Elt]) {
        out.iter_mut().for_each(|x| *x = 0);
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &self.data[k * self.cols..(k + 1) * self.cols];
            for (o, &b) in out.iter_mut().zip(row) {
                if b != 0 {
                    *o = f.add(*o, f.mul(a, b));
                }
            }
        }
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut d = self.data.clone();
        rref_in_place(f, &mut d, self.rows, self.cols)
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rank = rref_in_place(f, &mut aug.data, n, 2 * n);
        if rank < n || (0..n).any(|i| aug.get(i, i) != 1) {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn det(&self, f: &Field) -> Elt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let inv = f.inv_nz(p);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    a[r * n + c] = f.sub(a[r * n + c], f.mul(factor, a[col * n + c]));
                }
            }
        }
        det
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { 0 }))
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.get(0, 0) == 1
    }
}

/// A subspace of `F^ambient` held in reduced row echelon form.
///
/// The derived ordering (dimension, then echelon rows lexicographically) is the
/// canonical order used to number orbit points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub dim: usize,
    pub ambient: usize,
    pub rows: Vec<Elt>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { dim: 0, ambient, rows: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Subspace {
        Subspace { dim: ambient, ambient, rows: Matrix::identity(ambient).data }
    }

    /// Span of the given vectors.
    pub fn span(f: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        let mut data: Vec<Elt> = vectors.iter().flat_map(|v| v.iter().copied()).collect();
        Subspace::from_flat(f, &mut data, vectors.len(), ambient)
    }

    /// Span of `nrows` row-major vectors; clobbers the buffer.
    pub fn from_flat(f: &Field, data: &mut [Elt], nrows: usize, ambient: usize) -> Subspace {
        let rank = rref_in_place(f, data, nrows, ambient);
        Subspace { dim: rank, ambient, rows: data[..rank * ambient].to_vec() }
    }

    pub fn basis(&self) -> impl Iterator<Item = &[Elt]> {
        self.rows.chunks(self.ambient.max(1)).take(self.dim)
    }

    pub fn basis_vecs(&self) -> Vec<Vector> {
        self.basis().map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, f: &Field, v: &[Elt]) -> bool {
        let mut rows = self.basis_vecs();
        rows.push(v.to_vec());
        Subspace::span(f, self.ambient, &rows).dim == self.dim
    }

    pub fn contains_subspace(&self, f: &Field, other: &Subspace) -> bool {
        self.join(f, other).dim == self.dim
    }

    /// `U g`
    pub fn act(&self, f: &Field, g: &Matrix) -> Subspace {
        let mut buf = vec![0; self.dim * self.ambient];
        self.act_into(f, g, &mut buf)
    }

    pub fn act_into(&self, f: &Field, g: &Matrix, buf: &mut Vec<Elt>) -> Subspace {
        let n = self.ambient;
        buf.resize(self.dim * n, 0);
        for (i, r) in self.basis().enumerate() {
            g.apply_into(f, r, &mut buf[i * n..(i + 1) * n]);
        }
        Subspace::from_flat(f, buf, self.dim, n)
    }

    pub fn join(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut data = self.rows.clone();
        data.extend_from_slice(&other.rows);
        Subspace::from_flat(f, &mut data, self.dim + other.dim, self.ambient)
    }

    /// `{ x : u . x = 0 for all u in U }` for the standard dot product.
    pub fn annihilator(&self, f: &Field) -> Subspace {
        let ns = nullspace(f, &self.basis_vecs(), self.ambient);
        Subspace::span(f, self.ambient, &ns)
    }

    pub fn meet(&self, f: &Field, other: &Subspace) -> Subspace {
        self.annihilator(f).join(f, &other.annihilator(f)).annihilator(f)
    }

    /// Indices of coordinates that are nonzero on some vector of the subspace.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ambient).filter(|&c| self.basis().any(|r| r[c] != 0)).collect()
    }

    /// Every vector of the subspace, including zero.
    pub fn vectors(&self, f: &Field) -> Vec<Vector> {
        let q = f.order();
        let total = q.pow(self.dim as u32);
        let basis = self.basis_vecs();
        (0..total)
            .map(|mut code| {
                let mut v = vec![0; self.ambient];
                for b in &basis {
                    let c = (code % q) as Elt;
                    code /= q;
                    if c != 0 {
                        v = vaxpy(f, &v, c, b);
                    }
                }
                v
            })
            .collect()
    }

    /// Normalized spanning vectors of the 1-spaces contained in the subspace.
    pub fn one_spaces(&self, f: &Field) -> Vec<Vector> {
        self.vectors(f).into_iter().filter(|v| !is_zero(v) && v.iter().find(|&&x| x != 0) == Some(&1)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 1], vec![2, 0, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
    }

    #[test]
    fn meet_and_join() {
        let f = Field::new(2).unwrap();
        let u = Subspace::span(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.meet(&f, &w), Subspace::span(&f, 3, &[vec![0, 1, 0]]));
        assert_eq!(u.join(&f, &w).dim, 3);
        assert_eq!(u.support(), vec![0, 1]);
    }

    #[test]
    fn canonical_form() {
        let f = Field::new(5).unwrap();
        let a = Subspace::span(&f, 3, &[vec![2, 4, 1], vec![1, 1, 1]]);
        let b = Subspace::span(&f, 3, &[vec![3, 0, 3], vec![1, 1, 1]]);
        assert_eq!(a == b, a.contains(&f, &[3, 0, 3]));
    }
}
