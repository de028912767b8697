//! Finite-dimensional left modules given by action matrices, and the
//! constructions of the module category used by extensions.

use std::sync::Arc;

use crate::algebra::{Algebra, Report};
use crate::error::{HhError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};

/// A left module: one matrix ρ_i per basis element of the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Module<K: Field> {
    ring: Arc<Algebra<K>>,
    dim: usize,
    action: Vec<Matrix<K>>,
}

impl<K: Field> Module<K> {
    pub fn new(ring: &Arc<Algebra<K>>, dim: usize, action: Vec<Matrix<K>>) -> Result<Self> {
        if action.len() != ring.dim() {
            return Err(HhError::Dimension(format!("{} action matrices for a ring of dim {}", action.len(), ring.dim())));
        }
        if let Some(m) = action.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(HhError::Dimension(format!("action matrix {}x{} on a module of dim {dim}", m.rows(), m.cols())));
        }
        Ok(Module { ring: ring.clone(), dim, action })
    }

    pub fn zero(ring: &Arc<Algebra<K>>) -> Self {
        let f = ring.field();
        Module { ring: ring.clone(), dim: 0, action: vec![Matrix::zeros(f, 0, 0); ring.dim()] }
    }

    /// The ring acting on itself by left multiplication.
    pub fn regular(ring: &Arc<Algebra<K>>) -> Self {
        let action = (0..ring.dim()).map(|i| ring.left_mul(i)).collect();
        Module { ring: ring.clone(), dim: ring.dim(), action }
    }

    /// Λ^r; generator t occupies coordinates t·dim Λ .. (t+1)·dim Λ.
    pub fn free(ring: &Arc<Algebra<K>>, rank: usize) -> Self {
        let reg = Self::regular(ring);
        Self::direct_sum(ring, &vec![&reg; rank])
    }

    pub fn ring(&self) -> &Arc<Algebra<K>> {
        &self.ring
    }
    pub fn field(&self) -> &K {
        self.ring.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Matrix<K> {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix<K>] {
        &self.action
    }

    /// Matrix of the action of an arbitrary ring element.
    pub fn action_of(&self, a: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                out = out.add(&self.action[i].scale(c));
            }
        }
        out
    }

    pub fn identity(&self) -> Matrix<K> {
        Matrix::identity(self.field(), self.dim)
    }

    pub fn check(&self) -> Report {
        let mut report = Report::default();
        let r = &self.ring;
        if !self.action_of(r.unit()).is_identity() {
            report.fail("the unit does not act as the identity");
        }
        'outer: for i in 0..r.dim() {
            for j in 0..r.dim() {
                let lhs = self.action[i].mul(&self.action[j]);
                let mut rhs = Matrix::zeros(self.field(), self.dim, self.dim);
                for (k, c) in r.product_terms(i, j) {
                    rhs = rhs.add(&self.action[*k].scale(c));
                }
                if lhs != rhs {
                    report.fail(format!("ρ({})ρ({}) differs from ρ({}·{})", r.labels()[i], r.labels()[j], r.labels()[i], r.labels()[j]));
                    break 'outer;
                }
            }
        }
        report
    }

    pub fn direct_sum(ring: &Arc<Algebra<K>>, parts: &[&Module<K>]) -> Self {
        let f = ring.field();
        let dim = parts.iter().map(|m| m.dim).sum();
        let action = (0..ring.dim())
            .map(|i| {
                let blocks: Vec<&Matrix<K>> = parts.iter().map(|m| &m.action[i]).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Module { ring: ring.clone(), dim, action }
    }

    /// Whether `f: self → other` commutes with every ρ_i.
    pub fn is_hom_to(&self, other: &Module<K>, f: &Matrix<K>) -> bool {
        f.rows() == other.dim
            && f.cols() == self.dim
            && (0..self.ring.dim()).all(|i| f.mul(&self.action[i]) == other.action[i].mul(f))
    }

    /// The submodule with basis the columns of `basis`, where the coordinates
    /// of a vector in that basis are its entries at `coord_rows`. Returns the
    /// submodule and its inclusion.
    fn restrict(&self, basis: Matrix<K>, coord_rows: &[usize]) -> (Module<K>, Matrix<K>) {
        let action = self.action.iter().map(|a| a.mul(&basis).select_rows(coord_rows)).collect();
        (Module { ring: self.ring.clone(), dim: basis.cols(), action }, basis)
    }

    /// Submodule on an invariant subspace; returns it with its inclusion.
    pub fn submodule(&self, s: &Subspace<K>) -> Result<(Module<K>, Matrix<K>)> {
        let basis = s.basis_matrix();
        for (i, a) in self.action.iter().enumerate() {
            let img = a.mul(&basis);
            if img.columns().iter().any(|c| !s.contains(c)) {
                return Err(HhError::Shape(format!("subspace is not invariant under basis element {i}")));
            }
        }
        let piv = s.pivots().to_vec();
        Ok(self.restrict(basis, &piv))
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_subspace(&self, vectors: &[Vec<K::Elem>]) -> Subspace<K> {
        let f = self.field();
        let mut span: Vec<Vec<K::Elem>> = Vec::new();
        for v in vectors {
            for a in &self.action {
                span.push(a.apply(v));
            }
        }
        Subspace::spanned_by(f, self.dim, &span)
    }

    /// Quotient by an invariant subspace; returns it with the projection.
    pub fn quotient(&self, s: &Subspace<K>) -> (Module<K>, Matrix<K>) {
        let f = self.field();
        let m = self.dim;
        let mut is_pivot = vec![false; m];
        for &p in s.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..m).filter(|&j| !is_pivot[j]).collect();
        let mut proj = Matrix::zeros(f, free.len(), m);
        for (t, &j) in free.iter().enumerate() {
            proj.set(t, j, f.one());
        }
        for (b, &p) in s.basis().iter().zip(s.pivots()) {
            for (t, &j) in free.iter().enumerate() {
                if !f.is_zero(&b[j]) {
                    proj.set(t, p, f.neg(&b[j]));
                }
            }
        }
        let lift = Matrix::from_fn(f, m, free.len(), |i, t| if free[t] == i { f.one() } else { f.zero() });
        let action = self.action.iter().map(|a| proj.mul(&a.mul(&lift))).collect();
        (Module { ring: self.ring.clone(), dim: free.len(), action }, proj)
    }

    /// Kernel of a homomorphism `f: self → _` with its inclusion.
    pub fn kernel(&self, f: &Matrix<K>) -> (Module<K>, Matrix<K>) {
        let fld = self.field();
        let an = f.rref_analyze();
        let mut is_pivot = vec![false; self.dim];
        for &p in &an.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&j| !is_pivot[j]).collect();
        let basis = Matrix::from_cols(fld, self.dim, &an.kernel);
        self.restrict(basis, &free)
    }

    /// Cokernel of a homomorphism `f: _ → self` with the projection.
    pub fn cokernel(&self, f: &Matrix<K>) -> (Module<K>, Matrix<K>) {
        self.quotient(&Subspace::column_space(f))
    }

    /// Image of a homomorphism `f: _ → self` with its inclusion.
    pub fn image(&self, f: &Matrix<K>) -> (Module<K>, Matrix<K>) {
        let s = Subspace::column_space(f);
        let piv = s.pivots().to_vec();
        self.restrict(s.basis_matrix(), &piv)
    }
}

/// Pullback of `f: m → x` and `g: n → x`: the kernel of [f, −g] on m ⊕ n.
/// Returns (P, P → m, P → n).
pub fn pullback<K: Field>(m: &Module<K>, n: &Module<K>, f: &Matrix<K>, g: &Matrix<K>) -> (Module<K>, Matrix<K>, Matrix<K>) {
    let fld = m.field();
    let sum = Module::direct_sum(m.ring(), &[m, n]);
    let map = Matrix::hstack(fld, f.rows(), &[f, &g.neg()]);
    let (p, inc) = sum.kernel(&map);
    let p1 = inc.block(0, 0, m.dim(), p.dim());
    let p2 = inc.block(m.dim(), 0, n.dim(), p.dim());
    (p, p1, p2)
}

/// Pushout of `f: y → m` and `g: y → n`: the cokernel of [f; −g] into m ⊕ n.
/// Returns (Q, m → Q, n → Q).
pub fn pushout<K: Field>(m: &Module<K>, n: &Module<K>, f: &Matrix<K>, g: &Matrix<K>) -> (Module<K>, Matrix<K>, Matrix<K>) {
    let fld = m.field();
    let sum = Module::direct_sum(m.ring(), &[m, n]);
    let map = Matrix::vstack(fld, f.cols(), &[f, &g.neg()]);
    let (q, proj) = sum.cokernel(&map);
    let q1 = proj.block(0, 0, q.dim(), m.dim());
    let q2 = proj.block(0, m.dim(), q.dim(), n.dim());
    (q, q1, q2)
}

/// A as a left A^ev-module: (b_i ⊗ b_j°)·a = b_i a b_j.
pub fn regular_bimodule<K: Field>(a: &Algebra<K>, ev: &Arc<Algebra<K>>) -> Module<K> {
    let d = a.dim();
    let action = (0..d * d).map(|ij| a.left_mul(ij / d).mul(&a.right_mul(ij % d))).collect();
    Module { ring: ev.clone(), dim: d, action }
}

/// Left A-action Σ_j u_j ρ_{(i,j)} of a bimodule.
pub fn bimodule_left<K: Field>(a: &Algebra<K>, m: &Module<K>, i: usize) -> Matrix<K> {
    let d = a.dim();
    let mut coeffs = vec![a.field().zero(); d * d];
    for j in 0..d {
        coeffs[i * d + j] = a.unit()[j].clone();
    }
    m.action_of(&coeffs)
}

/// Right A-action Σ_i u_i ρ_{(i,j)} of a bimodule.
pub fn bimodule_right<K: Field>(a: &Algebra<K>, m: &Module<K>, j: usize) -> Matrix<K> {
    let d = a.dim();
    let mut coeffs = vec![a.field().zero(); d * d];
    for i in 0..d {
        coeffs[i * d + j] = a.unit()[i].clone();
    }
    m.action_of(&coeffs)
}

/// M ⊗_A N for bimodules, as the quotient of M ⊗_k N by the span of
/// m·a ⊗ n − m ⊗ a·n. Returns the module and the projection from M ⊗_k N
/// (basis m_s ⊗ n_t at s·dim N + t).
pub fn tensor_over<K: Field>(a: &Algebra<K>, m: &Module<K>, n: &Module<K>) -> Result<(Module<K>, Matrix<K>)> {
    if !Arc::ptr_eq(m.ring(), n.ring()) && **m.ring() != **n.ring() {
        return Err(HhError::Shape("bimodules over different enveloping algebras".into()));
    }
    if m.ring().dim() != a.dim() * a.dim() {
        return Err(HhError::Shape("modules are not over the enveloping algebra of A".into()));
    }
    let f = a.field();
    let d = a.dim();
    let im = Matrix::identity(f, m.dim());
    let in_ = Matrix::identity(f, n.dim());
    let rels: Vec<Matrix<K>> = (0..d)
        .map(|x| bimodule_right(a, m, x).kronecker(&in_).sub(&im.kronecker(&bimodule_left(a, n, x))))
        .collect();
    let refs: Vec<&Matrix<K>> = rels.iter().collect();
    let rel = Matrix::hstack(f, m.dim() * n.dim(), &refs);
    let outer: Vec<Matrix<K>> = (0..d * d)
        .map(|ij| bimodule_left(a, m, ij / d).kronecker(&bimodule_right(a, n, ij % d)))
        .collect();
    let tot = Module::new(m.ring(), m.dim() * n.dim(), outer)?;
    Ok(tot.cokernel(&rel))
}
