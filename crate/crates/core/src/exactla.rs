//! Exact linear algebra over a [`Field`].
//!
//! [`Matrix`] is a dense row-major grid of bare elements. Elimination runs on
//! sparse rows internally: the systems that show up here (commutation
//! equations, lifting equations) are mostly zeros, and dense elimination over
//! Q(ω) would dominate the runtime.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Elem, Field};

pub type Vector = Vec<Elem>;

/// Sorted `(column, nonzero value)` pairs.
pub type SparseRow = Vec<(usize, Elem)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.format(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &Field, rows: Vec<Vector>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vector]) -> Matrix {
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn row_vector(field: &Field, v: Vector) -> Matrix {
        Matrix { field: field.clone(), rows: 1, cols: v.len(), data: v }
    }

    pub fn column_vector(field: &Field, v: Vector) -> Matrix {
        Matrix { field: field.clone(), rows: v.len(), cols: 1, data: v }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product {}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = r * o.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Elem]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector product");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, o: &Matrix, op: impl Fn(&Elem, &Elem) -> Elem) -> Matrix {
        assert_eq!(self.shape(), o.shape(), "elementwise shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let f = self.field.clone();
        self.zip_with(o, |a, b| f.add(a, b))
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let f = self.field.clone();
        self.zip_with(o, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: &Elem) -> Matrix {
        let f = &self.field;
        if f.is_one(s) {
            return self.clone();
        }
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    /// Multiplies by ±1.
    pub fn signed(&self, negative: bool) -> Matrix {
        if negative {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product, indexing (i, j) ↦ i * other.dim + j.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows * o.rows, self.cols * o.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if f.is_zero(a) {
                    continue;
                }
                for r2 in 0..o.rows {
                    for c2 in 0..o.cols {
                        let b = o.get(r2, c2);
                        if !f.is_zero(b) {
                            out.set(r1 * o.rows + r2, c1 * o.cols + c2, f.mul(a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                let v = b.get(r, c);
                if !self.field.is_zero(v) {
                    let cur = self.get(r0 + r, c0 + c);
                    let s = self.field.add(cur, v);
                    self.set(r0 + r, c0 + c, s);
                }
            }
        }
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let rows = parts[0].rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(&parts[0].field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(&parts[0].field, rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols);
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !self.field.is_zero(e))
                    .map(|(c, e)| (c, e.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::build(&self.field, self.cols, self.sparse_rows()).pivots.len()
    }

    /// Rows of scalars in text form.
    pub fn to_text(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|e| self.field.format(e)).collect()).collect()
    }

    pub fn from_text(field: &Field, rows: usize, cols: usize, text: &[Vec<String>]) -> Result<Matrix> {
        if text.len() != rows || text.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("expected a {rows}x{cols} matrix")));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (r, row) in text.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, field.parse(s)?);
            }
        }
        Ok(m)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        solve_matrix(self, &Matrix::identity(&self.field, self.rows)).ok().flatten()
    }
}

/// Reduced echelon data from sparse elimination.
pub(crate) struct Echelon {
    /// Rows in increasing pivot order; each pivot entry is 1.
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

fn axpy_sparse(field: &Field, a: &SparseRow, s: &Elem, b: &SparseRow) -> SparseRow {
    // a - s * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.neg(&field.mul(s, &b[j].1))));
            j += 1;
        } else {
            let v = field.sub(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    /// Full reduction of the row space spanned by `rows`.
    pub fn build(field: &Field, ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Echelon {
        let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
        let mut stored: Vec<SparseRow> = Vec::new();
        let mut lead: Vec<usize> = Vec::new();
        for row in rows {
            let mut acc = row;
            while let Some((c, v)) = acc.first().cloned() {
                match pivot_of[c] {
                    Some(k) => acc = axpy_sparse(field, &acc, &v, &stored[k]),
                    None => break,
                }
            }
            let Some((c, v)) = acc.first().cloned() else { continue };
            if !field.is_one(&v) {
                let inv = field.inv(&v).expect("nonzero pivot");
                for e in acc.iter_mut() {
                    e.1 = field.mul(&e.1, &inv);
                }
            }
            pivot_of[c] = Some(stored.len());
            stored.push(acc);
            lead.push(c);
        }
        // Back substitution, largest pivot first.
        let mut order: Vec<usize> = (0..stored.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(lead[k]));
        for &k in &order {
            loop {
                let hit = stored[k]
                    .iter()
                    .skip(1)
                    .find(|(c, _)| pivot_of[*c].is_some())
                    .cloned();
                let Some((c, v)) = hit else { break };
                let j = pivot_of[c].unwrap();
                let reduced = axpy_sparse(field, &stored[k], &v, &stored[j]);
                stored[k] = reduced;
            }
        }
        order.reverse();
        let pivots = order.iter().map(|&k| lead[k]).collect();
        let mut slots: Vec<Option<SparseRow>> = stored.into_iter().map(Some).collect();
        let rows = order.iter().map(|&k| slots[k].take().unwrap()).collect();
        Echelon { rows, pivots }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let e = Echelon::build(&m.field, m.cols, m.sparse_rows());
    let mut out = Matrix::zeros(&m.field, m.rows, m.cols);
    for (r, row) in e.rows.iter().enumerate() {
        for (c, v) in row {
            out.set(r, *c, v.clone());
        }
    }
    (out, e.pivots)
}

/// Like [`rref`], also returning an invertible `T` with `T · m = rref(m)`.
pub fn rref_with_transform(m: &Matrix) -> (Matrix, Vec<usize>, Matrix) {
    let aug = Matrix::hstack(&[m, &Matrix::identity(&m.field, m.rows)]);
    // Pivots are restricted to the left block by construction of a full-rank
    // right block: reduce, then split.
    let (r, _) = rref(&aug);
    let left = r.block(0, 0, m.rows, m.cols);
    let right = r.block(0, m.cols, m.rows, m.rows);
    let (_, pivots) = rref(m);
    (left, pivots, right)
}

/// A sparse linear system `A x = b` with possibly several right-hand sides.
pub struct SparseSystem {
    field: Field,
    nvars: usize,
    nrhs: usize,
    rows: Vec<SparseRow>,
}

impl SparseSystem {
    pub fn new(field: &Field, nvars: usize, nrhs: usize) -> SparseSystem {
        SparseSystem { field: field.clone(), nvars, nrhs, rows: Vec::new() }
    }

    /// Adds one equation. `lhs` columns are variable indices; `rhs` columns
    /// index the right-hand sides.
    pub fn push(&mut self, mut lhs: SparseRow, rhs: SparseRow) {
        lhs.sort_by_key(|e| e.0);
        let mut row: SparseRow = Vec::with_capacity(lhs.len() + rhs.len());
        for (c, v) in lhs {
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 = self.field.add(&last.1, &v),
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !self.field.is_zero(v));
        for (c, v) in rhs {
            if !self.field.is_zero(&v) {
                row.push((self.nvars + c, v));
            }
        }
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Some particular solution (free variables zero) for every right-hand
    /// side at once, or `None` if any is inconsistent.
    pub fn solve(self) -> Option<Vec<Vector>> {
        let f = self.field.clone();
        let nvars = self.nvars;
        let e = Echelon::build(&f, nvars + self.nrhs, self.rows);
        if e.pivots.iter().any(|&p| p >= nvars) {
            return None;
        }
        let mut sols = vec![vec![f.zero(); nvars]; self.nrhs];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            for (c, v) in row {
                if *c >= nvars {
                    sols[c - nvars][p] = v.clone();
                }
            }
        }
        Some(sols)
    }

    /// Null space basis indexed by free variables: basis vector `k` has a 1
    /// at `free[k]` and zeros at every other free variable.
    pub fn kernel(self) -> (Vec<Vector>, Vec<usize>) {
        let f = self.field.clone();
        let e = Echelon::build(&f, self.nvars, self.rows.into_iter().map(|mut r| {
            r.retain(|(c, _)| *c < self.nvars);
            r
        }));
        kernel_from_echelon(&f, self.nvars, &e)
    }
}

fn kernel_from_echelon(f: &Field, ncols: usize, e: &Echelon) -> (Vec<Vector>, Vec<usize>) {
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut index_of_free = vec![usize::MAX; ncols];
    for (k, &c) in free.iter().enumerate() {
        index_of_free[c] = k;
    }
    let mut basis = vec![vec![f.zero(); ncols]; free.len()];
    for (k, &c) in free.iter().enumerate() {
        basis[k][c] = f.one();
    }
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        for (c, v) in row.iter().skip(1) {
            let k = index_of_free[*c];
            debug_assert!(k != usize::MAX, "reduced row touches another pivot");
            basis[k][p] = f.neg(v);
        }
    }
    (basis, free)
}

/// Returns some `x` with `M x = b`, or `None` when `b` is not in the image.
pub fn solve(m: &Matrix, b: &[Elem]) -> Result<Option<Vector>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!("rhs length {} vs {} rows", b.len(), m.rows)));
    }
    let rhs = Matrix::column_vector(&m.field, b.to_vec());
    Ok(solve_matrix(m, &rhs)?.map(|x| x.column(0)))
}

/// Solves `M X = B` for a matrix `X`.
pub fn solve_matrix(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if b.rows != m.rows {
        return Err(Error::DimensionMismatch(format!("rhs has {} rows, matrix {}", b.rows, m.rows)));
    }
    let mut sys = SparseSystem::new(&m.field, m.cols, b.cols);
    let lhs = m.sparse_rows();
    let rhs = b.sparse_rows();
    for (l, r) in lhs.into_iter().zip(rhs) {
        sys.push(l, r);
    }
    Ok(sys.solve().map(|cols| Matrix::from_columns(&m.field, m.cols, &cols)))
}

/// A subspace stored by a reduced-row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient_dim: usize) -> Subspace {
        Subspace { field: field.clone(), ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(field: &Field, ambient_dim: usize, vectors: &[Vector]) -> Subspace {
        let rows = vectors.iter().map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, e)| !field.is_zero(e))
                .map(|(c, e)| (c, e.clone()))
                .collect()
        });
        let e = Echelon::build(field, ambient_dim, rows);
        let basis = e
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![field.zero(); ambient_dim];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        Subspace { field: field.clone(), ambient_dim, basis, pivots: e.pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Elem]) -> Result<Option<Vector>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!("vector of length {} in ambient {}", v.len(), self.ambient_dim)));
        }
        let f = &self.field;
        let coords: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (b, c) in self.basis.iter().zip(&coords) {
            if f.is_zero(c) {
                continue;
            }
            for (r, x) in rest.iter_mut().zip(b) {
                if !f.is_zero(x) {
                    *r = f.sub(r, &f.mul(c, x));
                }
            }
        }
        Ok(if rest.iter().all(|e| f.is_zero(e)) { Some(coords) } else { None })
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }
}

pub fn kernel(m: &Matrix) -> Subspace {
    let e = Echelon::build(&m.field, m.cols, m.sparse_rows());
    let (basis, _) = kernel_from_echelon(&m.field, m.cols, &e);
    Subspace::span(&m.field, m.cols, &basis)
}

pub fn image(m: &Matrix) -> Subspace {
    let cols: Vec<Vector> = (0..m.cols).map(|c| m.column(c)).collect();
    Subspace::span(&m.field, m.rows, &cols)
}

pub fn contains(s: &Subspace, v: &[Elem]) -> Result<bool> {
    s.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rng: &mut ChaCha8Rng, r: usize, c: usize, density: f64) -> Matrix {
        Matrix::from_fn(f, r, c, |_, _| {
            if rng.gen_bool(density) {
                let a = f.from_i64(rng.gen_range(-3..=3));
                let b = f.mul(&f.from_i64(rng.gen_range(-2..=2)), &f.omega());
                f.add(&a, &b)
            } else {
                f.zero()
            }
        })
    }

    #[test]
    fn rref_trivial_cases() {
        let f = Field::cyclotomic(3).unwrap();
        let (r, p) = rref(&Matrix::identity(&f, 4));
        assert!(r.is_identity());
        assert_eq!(p, vec![0, 1, 2, 3]);
        let (r, p) = rref(&Matrix::zeros(&f, 3, 5));
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_replays_row_operations() {
        let f = Field::cyclotomic(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = random_matrix(&f, &mut rng, 6, 6, 0.6);
            let (r, pivots, t) = rref_with_transform(&m);
            assert_eq!(t.mul(&m), r);
            let tinv = t.inverse().expect("row operations are invertible");
            assert_eq!(tinv.mul(&r), m);
            assert_eq!(pivots.len(), m.rank());
            // Reduced: pivot columns are unit vectors.
            for (i, &p) in pivots.iter().enumerate() {
                for row in 0..6 {
                    let e = r.get(row, p);
                    assert!(if row == i { f.is_one(e) } else { f.is_zero(e) });
                }
            }
        }
    }

    #[test]
    fn solve_cases() {
        let f = Field::cyclotomic(4).unwrap();
        let id = Matrix::identity(&f, 3);
        let b = vec![f.one(), f.omega(), f.from_i64(5)];
        assert_eq!(solve(&id, &b).unwrap().unwrap(), b);
        let zero = vec![f.zero(); 3];
        let m = Matrix::from_rows(&f, vec![vec![f.one(), f.one(), f.zero()], vec![f.from_i64(2), f.from_i64(2), f.zero()], vec![f.zero(), f.zero(), f.zero()]]).unwrap();
        assert_eq!(solve(&m, &zero).unwrap().unwrap(), zero);
        // Inconsistent: second row is twice the first, rhs is not.
        let bad = vec![f.one(), f.one(), f.zero()];
        assert!(solve(&m, &bad).unwrap().is_none());
        let aug = Matrix::hstack(&[&m, &Matrix::column_vector(&f, bad)]);
        assert!(aug.rank() > m.rank());
        assert!(solve(&m, &[f.one()]).is_err());
    }

    #[test]
    fn kernel_image_rank_nullity() {
        let f = Field::cyclotomic(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(kernel(&Matrix::identity(&f, 4)).dim(), 0);
        assert_eq!(image(&Matrix::zeros(&f, 3, 4)).dim(), 0);
        for _ in 0..6 {
            let m = random_matrix(&f, &mut rng, 5, 7, 0.4);
            let k = kernel(&m);
            assert_eq!(k.dim() + m.rank(), m.cols());
            for v in k.basis() {
                assert!(m.apply(v).iter().all(|e| f.is_zero(e)));
            }
            let im = image(&m);
            assert_eq!(im.dim(), m.rank());
            let x: Vector = (0..7).map(|i| f.from_i64(i as i64 - 3)).collect();
            assert!(contains(&im, &m.apply(&x)).unwrap());
            let sol = solve(&m, &m.apply(&x)).unwrap().unwrap();
            assert_eq!(m.apply(&sol), m.apply(&x));
        }
    }

    #[test]
    fn subspace_coordinates() {
        let f = Field::prime(7, 3, None).unwrap();
        let v1 = vec![f.one(), f.from_i64(2), f.zero()];
        let v2 = vec![f.zero(), f.one(), f.from_i64(3)];
        let s = Subspace::span(&f, 3, &[v1.clone(), v2.clone(), v1.clone()]);
        assert_eq!(s.dim(), 2);
        let w: Vector = v1.iter().zip(&v2).map(|(a, b)| f.add(a, &f.mul(&f.from_i64(4), b))).collect();
        let c = s.coordinates(&w).unwrap().unwrap();
        let rebuilt: Vector = (0..3)
            .map(|i| f.add(&f.mul(&c[0], &s.basis()[0][i]), &f.mul(&c[1], &s.basis()[1][i])))
            .collect();
        assert_eq!(rebuilt, w);
        assert!(!s.contains(&[f.zero(), f.zero(), f.one()]).unwrap());
    }
}
