//! Dense matrices over a [`Field`], exact row reduction, null spaces and
//! subspaces with canonical coset representatives.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeError("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Builds a matrix of the given shape; `data` is row-major.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_valid_over(&self, field: &Field) -> bool {
        self.data.iter().all(|&e| e < field.order())
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, field.add(cur, field.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Result<Vector> {
        if self.cols != v.len() {
            return Err(Error::ShapeError(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self.apply(field, v))
    }

    /// Matrix–vector product without the shape check.
    #[inline]
    pub fn apply(&self, field: &Field, v: &[Elem]) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn sub(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("subtraction of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.sub(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// `self − I` for a square matrix.
    pub fn minus_identity(&self, field: &Field) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let d = m.get(i, i);
            m.set(i, i, field.sub(d, 1));
        }
        m
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[&Matrix]) -> Result<Matrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::ShapeError("stacking matrices with different widths".into()));
        }
        let mut data = Vec::new();
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Matrix { rows: data.len() / cols.max(1), cols, data })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, field.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    /// Reduced-echelon basis of the null space `{v : Mv = 0}`.
    pub fn kernel(&self, field: &Field) -> Vec<Vector> {
        let (r, pivots) = self.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vector> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(r.get(row, f));
                }
                v
            })
            .collect();
        Subspace::span(field, self.cols, &basis).basis
    }

    /// One solution of `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve_right(&self, field: &Field, b: &[Elem]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::ShapeError(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// A subspace of `field^dim`, stored as its reduced-echelon basis.
///
/// The canonical representative of a coset `v + W` is `v` with all pivot
/// coordinates cleared; it is the lexicographically least vector of the coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vector]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors).expect("vectors of equal length");
        let (r, pivots) = m.rref(field);
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    /// Null space of `m`.
    pub fn kernel_of(field: &Field, m: &Matrix) -> Subspace {
        let basis = m.kernel(field);
        Subspace::span(field, m.cols(), &basis)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; canonical coset representatives are
    /// exactly the vectors supported on these.
    pub fn free_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, field: &Field, v: &[Elem]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p];
            if c == 0 {
                continue;
            }
            for (o, &bj) in out.iter_mut().zip(b) {
                *o = field.sub(*o, field.mul(c, bj));
            }
        }
        out
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        self.reduce(field, v).iter().all(|&c| c == 0)
    }

    pub fn contains_subspace(&self, field: &Field, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    pub fn intersect(&self, field: &Field, other: &Subspace) -> Subspace {
        // v ∈ W1 ∩ W2 iff v annihilates both orthogonal complements; compute the
        // kernel of the stacked "complement equations".
        let eq1 = self.equations(field);
        let eq2 = other.equations(field);
        let mut rows = eq1;
        rows.extend(eq2);
        if rows.is_empty() {
            return Subspace::full(self.ambient);
        }
        let m = Matrix::from_rows(&rows).expect("equations share the ambient dimension");
        Subspace::kernel_of(field, &m)
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(field, self.ambient, &vs)
    }

    /// Rows of a matrix whose null space is this subspace.
    fn equations(&self, field: &Field) -> Vec<Vector> {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient).basis;
        }
        let m = Matrix::from_rows(&self.basis).expect("basis rows share a length");
        m.kernel(field)
    }

    /// All canonical coset representatives in lexicographic order.
    pub fn coset_representatives(&self, field: &Field) -> CosetReps {
        CosetReps::new(self.free_coordinates(), self.ambient, field.order())
    }

    /// Number of cosets, `q^codim`, if it fits in a u64.
    pub fn index(&self, field: &Field) -> Option<u64> {
        crate::arith::pow_u128(field.order() as u64, self.codim() as u32)
            .and_then(|v| u64::try_from(v).ok())
    }
}

/// Iterator over vectors supported on `free` coordinates, in lexicographic order.
#[derive(Clone, Debug)]
pub struct CosetReps {
    free: Vec<usize>,
    ambient: usize,
    base: u32,
    current: Option<Vec<u32>>,
}

impl CosetReps {
    fn new(free: Vec<usize>, ambient: usize, base: u32) -> CosetReps {
        let current = Some(vec![0; free.len()]);
        CosetReps { free, ambient, base, current }
    }
}

impl Iterator for CosetReps {
    type Item = Vector;
    fn next(&mut self) -> Option<Vector> {
        let digits = self.current.as_mut()?;
        let mut out = vec![0; self.ambient];
        for (&pos, &d) in self.free.iter().zip(digits.iter()) {
            out[pos] = d;
        }
        // advance, last free coordinate fastest so the output is lexicographic
        let mut i = digits.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < self.base {
                break;
            }
            digits[i] = 0;
        }
        Some(out)
    }
}

/// Integer codes for vectors: the first coordinate is most significant, so codes
/// compare like the vectors do lexicographically.
#[derive(Clone, Copy, Debug)]
pub struct VectorCodec {
    base: u64,
    dim: usize,
}

impl VectorCodec {
    /// `None` if `base^dim` does not fit in a u64.
    pub fn new(base: u32, dim: usize) -> Option<VectorCodec> {
        crate::arith::pow_u128(base as u64, dim as u32)
            .filter(|&n| n <= u64::MAX as u128)
            .map(|_| VectorCodec { base: base as u64, dim })
    }

    pub fn size(&self) -> u64 {
        self.base.pow(self.dim as u32)
    }

    #[inline]
    pub fn encode(&self, v: &[Elem]) -> u64 {
        v.iter().fold(0, |acc, &c| acc * self.base + c as u64)
    }

    pub fn decode(&self, mut code: u64) -> Vector {
        let mut v = vec![0; self.dim];
        for slot in v.iter_mut().rev() {
            *slot = (code % self.base) as Elem;
            code /= self.base;
        }
        v
    }
}
