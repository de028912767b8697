//! Chain and cochain complexes, cohomology with canonical representatives.

use std::sync::Arc;

use crate::algebra::{Algebra, Report};
use crate::error::{HhError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::module::Module;

/// Spaces C^0..C^N with ∂^n: C^n → C^{n+1} for n < N.
#[derive(Clone, Debug)]
pub struct CochainComplex<K: Field> {
    field: K,
    dims: Vec<usize>,
    diffs: Vec<Matrix<K>>,
}

impl<K: Field> CochainComplex<K> {
    pub fn new(field: &K, dims: Vec<usize>, diffs: Vec<Matrix<K>>) -> Result<Self> {
        if diffs.len() + 1 != dims.len() {
            return Err(HhError::Dimension(format!("{} spaces need {} differentials, got {}", dims.len(), dims.len() - 1, diffs.len())));
        }
        for (n, d) in diffs.iter().enumerate() {
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(HhError::Dimension(format!("∂^{n} is {}x{}, expected {}x{}", d.rows(), d.cols(), dims[n + 1], dims[n])));
            }
        }
        Ok(CochainComplex { field: field.clone(), dims, diffs })
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    /// Highest degree whose differential is known.
    pub fn top(&self) -> usize {
        self.diffs.len()
    }
    pub fn diff(&self, n: usize) -> &Matrix<K> {
        &self.diffs[n]
    }

    /// ∂^{n+1}∂^n = 0 for every stored pair.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        for n in 1..self.diffs.len() {
            if !self.diffs[n].mul(&self.diffs[n - 1]).is_zero() {
                r.fail(format!("∂^{}∂^{} ≠ 0", n, n - 1));
            }
        }
        r
    }

    /// Cohomology in degree n; needs ∂^n.
    pub fn cohomology(&self, n: usize) -> Result<Cohomology<K>> {
        if n >= self.diffs.len() {
            return Err(HhError::Truncation { need: n + 1, have: self.diffs.len() });
        }
        let f = &self.field;
        let boundaries = if n == 0 {
            Subspace::zero(f, self.dims[0])
        } else {
            Subspace::column_space(&self.diffs[n - 1])
        };
        Ok(Cohomology::from_parts(n, self.diffs[n].clone(), boundaries))
    }
}

/// H^n = ker ∂^n / im ∂^{n−1}, with a reduced echelon basis of the
/// boundaries and canonical class representatives.
#[derive(Clone, Debug)]
pub struct Cohomology<K: Field> {
    degree: usize,
    diff: Matrix<K>,
    boundaries: Subspace<K>,
    classes: Subspace<K>,
}

/// A cohomology class: its coordinates in the canonical basis and its
/// canonical representative (zero at every boundary pivot).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass<E> {
    pub degree: usize,
    pub coords: Vec<E>,
    pub rep: Vec<E>,
}

impl<K: Field> Cohomology<K> {
    /// `diff` is ∂^n; `boundaries` is im ∂^{n−1}.
    pub fn from_parts(degree: usize, diff: Matrix<K>, boundaries: Subspace<K>) -> Self {
        let f = diff.field().clone();
        let cycles = diff.kernel();
        let reduced: Vec<Vec<K::Elem>> = cycles.iter().map(|z| boundaries.reduce(z)).collect();
        let classes = Subspace::spanned_by(&f, diff.cols(), &reduced);
        Cohomology { degree, diff, boundaries, classes }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }
    pub fn ambient(&self) -> usize {
        self.diff.cols()
    }
    pub fn boundaries(&self) -> &Subspace<K> {
        &self.boundaries
    }
    pub fn field(&self) -> &K {
        self.diff.field()
    }

    /// Canonical representatives of the basis classes.
    pub fn basis(&self) -> &[Vec<K::Elem>] {
        self.classes.basis()
    }

    pub fn basis_class(&self, i: usize) -> CohomologyClass<K::Elem> {
        let f = self.field();
        let mut coords = vec![f.zero(); self.dim()];
        coords[i] = f.one();
        CohomologyClass { degree: self.degree, coords, rep: self.classes.basis()[i].clone() }
    }

    pub fn zero_class(&self) -> CohomologyClass<K::Elem> {
        let f = self.field();
        CohomologyClass { degree: self.degree, coords: vec![f.zero(); self.dim()], rep: vec![f.zero(); self.ambient()] }
    }

    pub fn is_cocycle(&self, v: &[K::Elem]) -> bool {
        v.len() == self.ambient() && self.diff.apply(v).iter().all(|x| self.field().is_zero(x))
    }

    pub fn is_coboundary(&self, v: &[K::Elem]) -> bool {
        self.boundaries.contains(v)
    }

    /// The class of a cocycle.
    pub fn class_of(&self, v: &[K::Elem]) -> Result<CohomologyClass<K::Elem>> {
        if v.len() != self.ambient() {
            return Err(HhError::Dimension(format!("cochain of length {} in a space of dim {}", v.len(), self.ambient())));
        }
        if !self.is_cocycle(v) {
            return Err(HhError::NotCocycle(self.degree));
        }
        let rep = self.boundaries.reduce(v);
        let coords = self.classes.coordinates(&rep).expect("reduced cocycles lie in the class span");
        Ok(CohomologyClass { degree: self.degree, coords, rep })
    }

    /// The class with the given coordinates.
    pub fn class_from_coords(&self, coords: &[K::Elem]) -> Result<CohomologyClass<K::Elem>> {
        if coords.len() != self.dim() {
            return Err(HhError::Dimension(format!("{} coordinates for a space of dim {}", coords.len(), self.dim())));
        }
        let f = self.field();
        let mut rep = vec![f.zero(); self.ambient()];
        for (c, b) in coords.iter().zip(self.classes.basis()) {
            if !f.is_zero(c) {
                f.axpy(&mut rep, c, b);
            }
        }
        Ok(CohomologyClass { degree: self.degree, coords: coords.to_vec(), rep })
    }
}

impl<E> CohomologyClass<E> {
    pub fn is_zero_with(&self, is_zero: impl Fn(&E) -> bool) -> bool {
        self.coords.iter().all(is_zero)
    }
}

/// Modules C_0..C_N with d_n: C_n → C_{n−1}, optionally augmented onto a
/// module C_{−1}.
#[derive(Clone, Debug)]
pub struct ChainComplex<K: Field> {
    ring: Arc<Algebra<K>>,
    terms: Vec<Module<K>>,
    diffs: Vec<Matrix<K>>,
    augmentation: Option<(Module<K>, Matrix<K>)>,
}

impl<K: Field> ChainComplex<K> {
    /// `diffs[n−1]` is d_n: C_n → C_{n−1}.
    pub fn new(ring: &Arc<Algebra<K>>, terms: Vec<Module<K>>, diffs: Vec<Matrix<K>>, augmentation: Option<(Module<K>, Matrix<K>)>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(HhError::Dimension("a chain complex needs one differential fewer than terms".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != terms[i + 1].dim() || d.rows() != terms[i].dim() {
                return Err(HhError::Dimension(format!("d_{} has the wrong shape", i + 1)));
            }
        }
        if let Some((x, e)) = &augmentation {
            if e.rows() != x.dim() || e.cols() != terms[0].dim() {
                return Err(HhError::Dimension("augmentation has the wrong shape".into()));
            }
        }
        Ok(ChainComplex { ring: ring.clone(), terms, diffs, augmentation })
    }

    pub fn ring(&self) -> &Arc<Algebra<K>> {
        &self.ring
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn term(&self, n: usize) -> &Module<K> {
        &self.terms[n]
    }
    /// d_n for n ≥ 1.
    pub fn diff(&self, n: usize) -> &Matrix<K> {
        &self.diffs[n - 1]
    }
    pub fn augmentation(&self) -> Option<&(Module<K>, Matrix<K>)> {
        self.augmentation.as_ref()
    }

    /// d² = 0, Λ-linearity of every map, and exactness where claimed.
    pub fn check(&self, exact: bool) -> Report {
        let mut r = Report::default();
        for (n, t) in self.terms.iter().enumerate() {
            r.merge(&format!("term {n}"), t.check());
        }
        for n in 1..=self.diffs.len() {
            if !self.terms[n].is_hom_to(&self.terms[n - 1], self.diff(n)) {
                r.fail(format!("d_{n} is not linear over the ring"));
            }
            if n >= 2 && !self.diff(n - 1).mul(self.diff(n)).is_zero() {
                r.fail(format!("d_{}d_{} ≠ 0", n - 1, n));
            }
        }
        if let Some((x, e)) = &self.augmentation {
            if !self.terms[0].is_hom_to(x, e) {
                r.fail("augmentation is not linear over the ring");
            }
            if !self.diffs.is_empty() && !e.mul(self.diff(1)).is_zero() {
                r.fail("ε d_1 ≠ 0");
            }
            if exact && e.rank() != x.dim() {
                r.fail("augmentation is not surjective");
            }
            if exact && !self.diffs.is_empty() && self.terms[0].dim() - e.rank() != self.diff(1).rank() {
                r.fail("not exact in degree 0");
            }
        }
        if exact {
            for n in 1..self.diffs.len() {
                if self.terms[n].dim() - self.diff(n).rank() != self.diff(n + 1).rank() {
                    r.fail(format!("not exact in degree {n}"));
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// k → k² → k with ∂^0 = (1,0)ᵀ and ∂^1 = 0.
    fn small() -> CochainComplex<PrimeField> {
        let f = gf(3);
        let d0 = Matrix::from_vec(&f, 2, 1, vec![1, 0]);
        let d1 = Matrix::from_vec(&f, 1, 2, vec![0, 0]);
        CochainComplex::new(&f, vec![1, 2, 1], vec![d0, d1]).unwrap()
    }

    #[test]
    fn cohomology_of_small_complex() {
        let c = small();
        assert!(c.check().ok());
        assert_eq!(c.cohomology(0).unwrap().dim(), 0);
        assert_eq!(c.cohomology(1).unwrap().dim(), 1);
        assert!(matches!(c.cohomology(2), Err(HhError::Truncation { .. })));
    }

    #[test]
    fn classes_are_canonical() {
        let c = small();
        let h = c.cohomology(1).unwrap();
        let a = h.class_of(&[1, 2]).unwrap();
        let b = h.class_of(&[2, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rep, vec![0, 2]);
        assert!(h.class_of(&[1, 0]).unwrap().is_zero_with(|x| *x == 0));
        assert_eq!(h.class_of(&h.basis()[0]).unwrap(), h.basis_class(0));
    }

    #[test]
    fn non_cocycle_rejected() {
        let f = gf(2);
        let d0 = Matrix::from_vec(&f, 1, 1, vec![1]);
        let c = CochainComplex::new(&f, vec![1, 1], vec![d0]).unwrap();
        assert_eq!(c.cohomology(0).unwrap().class_of(&[1]), Err(HhError::NotCocycle(0)));
    }
}
