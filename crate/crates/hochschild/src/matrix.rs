//! Dense exact matrices, row reduction and subspaces.

use crate::error::{HhError, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Everything `rref_analyze` reports about a matrix.
#[derive(Clone, Debug)]
pub struct RrefAnalysis<K: Field> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// Kernel basis vectors (length = cols).
    pub kernel: Vec<Vec<K::Elem>>,
    /// The pivot columns of the original matrix, a basis of the column space.
    pub image: Vec<Vec<K::Elem>>,
    /// The nonzero rows of the reduced row echelon form.
    pub reduced: Matrix<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_rows(field: &K, cols: usize, rows: &[Vec<K::Elem>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_cols(field: &K, rows: usize, cols: &[Vec<K::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x.clone();
            }
        }
        m
    }

    /// Builds a matrix from a function of (row, col).
    pub fn from_fn(field: &K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<K::Elem> {
        self.data
    }
    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn add_at(&mut self, i: usize, j: usize, v: &K::Elem) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(&self.data[idx], v);
    }
    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<K::Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    pub fn mul(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows, "matrix product shapes {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if !f.is_zero(a) {
                    f.axpy(orow, a, &other.data[k * other.cols..(k + 1) * other.cols]);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shapes");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shapes");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &K::Elem) -> Matrix<K> {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix<K> {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix<K> {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    /// (M⊗N)[(i,i'),(j,j')] = M[i,j]·N[i',j'] with (i,i') ↦ i·rows(N)+i'.
    pub fn kronecker(&self, other: &Matrix<K>) -> Matrix<K> {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = &other.data[i2 * other.cols + j2];
                        if !f.is_zero(b) {
                            out.data[(i * other.rows + i2) * c + j * other.cols + j2] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation [A B ...].
    pub fn hstack(field: &K, rows: usize, blocks: &[&Matrix<K>]) -> Matrix<K> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                out.data[i * cols + off..i * cols + off + b.cols].clone_from_slice(b.row(i));
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(field: &K, cols: usize, blocks: &[&Matrix<K>]) -> Matrix<K> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Block diagonal matrix.
    pub fn block_diag(field: &K, blocks: &[&Matrix<K>]) -> Matrix<K> {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<K>) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].clone_from_slice(b.row(i));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<K> {
        let mut out = Self::zeros(&self.field, rows, cols);
        for i in 0..rows {
            let src = (r0 + i) * self.cols + c0;
            out.data[i * cols..(i + 1) * cols].clone_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<K> {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<K> {
        Matrix::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Reduced row echelon form with pivots among the first `limit` columns.
    pub fn echelon_limited(&self, limit: usize) -> (Matrix<K>, Vec<usize>) {
        let mut data = self.data.clone();
        let piv = self.field.echelon(&mut data, self.rows, self.cols, limit);
        (Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }, piv)
    }

    pub fn rank(&self) -> usize {
        self.echelon_limited(self.cols).1.len()
    }

    pub fn rref_analyze(&self) -> RrefAnalysis<K> {
        let (red, pivots) = self.echelon_limited(self.cols);
        let rank = pivots.len();
        let reduced = red.block(0, 0, rank, self.cols);
        let kernel = kernel_from_rref(&reduced, &pivots);
        let image = pivots.iter().map(|&j| self.col(j)).collect();
        RrefAnalysis { rank, pivots, kernel, image, reduced }
    }

    /// Kernel basis as column vectors.
    pub fn kernel(&self) -> Vec<Vec<K::Elem>> {
        let (red, pivots) = self.echelon_limited(self.cols);
        kernel_from_rref(&red.block(0, 0, pivots.len(), self.cols), &pivots)
    }

    /// Solves `self · x = b`. `Ok(None)` means the system is inconsistent.
    pub fn solve(&self, b: &[K::Elem]) -> Result<Option<Vec<K::Elem>>> {
        if b.len() != self.rows {
            return Err(HhError::Dimension(format!("rhs has {} entries, matrix has {} rows", b.len(), self.rows)));
        }
        let rhs = Matrix::from_vec(&self.field, self.rows, 1, b.to_vec());
        Ok(self.solve_many(&rhs)?.map(|x| x.col(0)))
    }

    /// Solves `self · X = B` for all columns of `B` at once.
    pub fn solve_many(&self, b: &Matrix<K>) -> Result<Option<Matrix<K>>> {
        match self.solve_columns(b)? {
            sols if sols.iter().all(Option::is_some) => {
                let cols: Vec<Vec<K::Elem>> = sols.into_iter().map(Option::unwrap).collect();
                Ok(Some(Matrix::from_cols(&self.field, self.cols, &cols)))
            }
            _ => Ok(None),
        }
    }

    /// Solves column by column, reporting each column's solvability.
    pub fn solve_columns(&self, b: &Matrix<K>) -> Result<Vec<Option<Vec<K::Elem>>>> {
        if b.rows != self.rows {
            return Err(HhError::Dimension(format!("rhs has {} rows, matrix has {}", b.rows, self.rows)));
        }
        let f = &self.field;
        let aug = Matrix::hstack(f, self.rows, &[self, b]);
        let (red, piv) = aug.echelon_limited(self.cols);
        let rank = piv.len();
        let mut out = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            let cj = self.cols + j;
            if (rank..self.rows).any(|i| !f.is_zero(red.get(i, cj))) {
                out.push(None);
                continue;
            }
            let mut x = vec![f.zero(); self.cols];
            for (r, &p) in piv.iter().enumerate() {
                x[p] = red.get(r, cj).clone();
            }
            out.push(Some(x));
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Option<Matrix<K>> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(&self.field, self.rows);
        let (red, piv) = Matrix::hstack(&self.field, self.rows, &[self, &id]).echelon_limited(self.cols);
        if piv.len() != self.rows {
            return None;
        }
        Some(red.block(0, self.cols, self.rows, self.cols))
    }
}

fn kernel_from_rref<K: Field>(reduced: &Matrix<K>, pivots: &[usize]) -> Vec<Vec<K::Elem>> {
    let f = reduced.field();
    let cols = reduced.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(reduced.get(r, free));
        }
        out.push(v);
    }
    out
}

/// A subspace of K^n held as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace<K: Field> {
    field: K,
    ambient: usize,
    basis: Vec<Vec<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> Subspace<K> {
    pub fn zero(field: &K, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(field: &K, ambient: usize, vectors: &[Vec<K::Elem>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors);
        Self::row_space(&m)
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix<K>) -> Self {
        let (red, pivots) = m.echelon_limited(m.cols());
        let basis = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace { field: m.field().clone(), ambient: m.cols(), basis, pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<K>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn basis(&self) -> &[Vec<K::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The unique vector of `v + self` vanishing at every pivot column.
    pub fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = &self.field;
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&w[p]) {
                let c = f.neg(&w[p]);
                f.axpy(&mut w, &c, b);
            }
        }
        w
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates with respect to the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis_matrix(&self) -> Matrix<K> {
        Matrix::from_cols(&self.field, self.ambient, &self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn identity_has_full_rank() {
        let a = Matrix::identity(&Rationals, 3).rref_analyze();
        assert_eq!(a.rank, 3);
        assert!(a.kernel.is_empty());
    }

    #[test]
    fn all_ones_over_gf2() {
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::from_vec(&f, 2, 2, vec![1, 1, 1, 1]);
        let a = m.rref_analyze();
        assert_eq!(a.rank, 1);
        assert_eq!(a.kernel, vec![vec![1, 1]]);
    }

    /// Hand row-reduction oracle: the rank of a 4×6 rational matrix with
    /// two duplicated columns, computed by plain fraction-free elimination
    /// on i128 cross-multiplication.
    fn oracle_rank(rows: &[[i64; 6]]) -> usize {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut rank = 0;
        for c in 0..6 {
            let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && m[i][c] != 0 {
                    let (a, b) = (m[rank][c], m[i][c]);
                    for j in 0..6 {
                        m[i][j] = m[i][j] * a - m[rank][j] * b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_independent_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let mut rows = [[0i64; 6]; 4];
            for r in rows.iter_mut() {
                for c in 0..4 {
                    r[c] = rng.gen_range(-3..=3);
                }
                r[4] = r[0];
                r[5] = r[2];
            }
            let m = Matrix::from_rows(&Rationals, 6, &rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>());
            assert_eq!(m.rank(), oracle_rank(&rows));
        }
    }

    #[test]
    fn solve_identity_and_zero() {
        let f = PrimeField::new(7).unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.solve(&[1, 2, 3]).unwrap(), Some(vec![1, 2, 3]));
        let z = Matrix::zeros(&f, 3, 3);
        assert_eq!(z.solve(&[1, 0, 0]).unwrap(), None);
        assert!(z.solve(&[1, 0]).is_err());
    }

    #[test]
    fn solve_consistent_gf5_system() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let m = Matrix::from_fn(&f, 3, 3, |_, _| rng.gen_range(0..5));
            let x0: Vec<u32> = (0..3).map(|_| rng.gen_range(0..5)).collect();
            let b = m.apply(&x0);
            let x = m.solve(&b).unwrap().expect("consistent");
            assert_eq!(m.apply(&x), b);
        }
    }

    #[test]
    fn kronecker_identities() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(Matrix::identity(&f, 2).kronecker(&Matrix::identity(&f, 3)), Matrix::identity(&f, 6));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = Matrix::from_fn(&f, 2, 2, |_, _| rng.gen_range(0..3));
            let b = Matrix::from_fn(&f, 2, 2, |_, _| rng.gen_range(0..3));
            assert_eq!(a.kronecker(&b).rank(), a.rank() * b.rank());
            let u: Vec<u32> = (0..2).map(|_| rng.gen_range(0..3)).collect();
            let v: Vec<u32> = (0..2).map(|_| rng.gen_range(0..3)).collect();
            let uv: Vec<u32> = u.iter().flat_map(|x| v.iter().map(move |y| f.mul(x, y))).collect();
            let au = a.apply(&u);
            let bv = b.apply(&v);
            let expect: Vec<u32> = au.iter().flat_map(|x| bv.iter().map(move |y| f.mul(x, y))).collect();
            assert_eq!(a.kronecker(&b).apply(&uv), expect);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_vec(&f, 2, 2, vec![1, 2, 3, 4]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_vec(&f, 2, 2, vec![1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn subspace_reduce_is_canonical() {
        let f = PrimeField::new(5).unwrap();
        let s = Subspace::spanned_by(&f, 3, &[vec![1, 1, 0], vec![2, 2, 0]]);
        assert_eq!(s.dim(), 1);
        let v = vec![3, 4, 2];
        let w = vec![f.add(&3, &2), f.add(&4, &2), 2];
        assert_eq!(s.reduce(&v), s.reduce(&w));
        assert!(s.contains(&[4, 4, 0]));
        assert!(!s.contains(&[1, 0, 0]));
    }
}
