//! Finite-dimensional associative unital algebras given by structure constants.

use std::fmt;

use crate::error::{HhError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};

/// Outcome of an axiom check. `failures` is empty iff the check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        self.failures.extend(other.failures.into_iter().map(|f| format!("{prefix}: {f}")));
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(HhError::Axiom(f.clone())),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "pass")
        } else {
            write!(f, "fail: {}", self.failures.join("; "))
        }
    }
}

/// b_i·b_j = Σ_k c_{ij}^k b_k, stored densely at index (i·d + j)·d + k.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<K: Field> {
    field: K,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<K::Elem>,
    unit: Vec<K::Elem>,
    terms: Vec<Vec<(usize, K::Elem)>>,
}

impl<K: Field> Algebra<K> {
    /// Builds an algebra without checking the axioms; see [`Algebra::check`].
    pub fn new(field: &K, labels: Vec<String>, mult: Vec<K::Elem>, unit: Vec<K::Elem>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(HhError::Dimension("algebra dimension must be positive".into()));
        }
        if mult.len() != dim * dim * dim {
            return Err(HhError::Dimension(format!("expected {} structure constants, got {}", dim * dim * dim, mult.len())));
        }
        if unit.len() != dim {
            return Err(HhError::Dimension(format!("unit has {} entries, dim is {dim}", unit.len())));
        }
        let terms = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter(|&k| !field.is_zero(&mult[ij * dim + k]))
                    .map(|k| (k, mult[ij * dim + k].clone()))
                    .collect()
            })
            .collect();
        Ok(Algebra { field: field.clone(), dim, labels, mult, unit, terms })
    }

    /// Builds from sparse triples (i, j, k, c) meaning c_{ij}^k = c.
    pub fn from_triples(field: &K, labels: Vec<String>, triples: &[(usize, usize, usize, K::Elem)], unit: Vec<K::Elem>) -> Result<Self> {
        let d = labels.len();
        let mut mult = vec![field.zero(); d * d * d];
        for (i, j, k, c) in triples {
            if *i >= d || *j >= d || *k >= d {
                return Err(HhError::OutOfRange(format!("structure constant index ({i},{j},{k}) with dim {d}")));
            }
            let idx = (i * d + j) * d + k;
            mult[idx] = field.add(&mult[idx], c);
        }
        Self::new(field, labels, mult, unit)
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[K::Elem] {
        &self.unit
    }
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &K::Elem {
        &self.mult[(i * self.dim + j) * self.dim + k]
    }
    pub fn structure_constants(&self) -> &[K::Elem] {
        &self.mult
    }

    /// Nonzero terms of b_i·b_j.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.terms[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Product of two elements given as coordinate vectors.
    pub fn mul(&self, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.product_terms(i, j) {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    /// Matrix of a ↦ b_i·a.
    pub fn left_mul(&self, i: usize) -> Matrix<K> {
        let d = self.dim;
        Matrix::from_fn(&self.field, d, d, |k, j| self.coeff(i, j, k).clone())
    }

    /// Matrix of a ↦ a·b_j.
    pub fn right_mul(&self, j: usize) -> Matrix<K> {
        let d = self.dim;
        Matrix::from_fn(&self.field, d, d, |k, i| self.coeff(i, j, k).clone())
    }

    /// Matrix of x ↦ a·x for an arbitrary element a.
    pub fn left_mul_by(&self, a: &[K::Elem]) -> Matrix<K> {
        let d = self.dim;
        let cols: Vec<_> = (0..d).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_cols(&self.field, d, &cols)
    }

    /// Matrix of x ↦ x·a.
    pub fn right_mul_by(&self, a: &[K::Elem]) -> Matrix<K> {
        let d = self.dim;
        let cols: Vec<_> = (0..d).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_cols(&self.field, d, &cols)
    }

    /// Associativity and both unit laws; reports the first violation of each.
    pub fn check(&self) -> Report {
        let f = &self.field;
        let d = self.dim;
        let mut report = Report::default();
        'assoc: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.mul(&self.mul(&self.basis_vector(i), &self.basis_vector(j)), &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.mul(&self.basis_vector(j), &self.basis_vector(k)));
                    if let Some(l) = (0..d).find(|&l| lhs[l] != rhs[l]) {
                        report.fail(format!(
                            "associativity fails at (i,j,k,l) = ({i},{j},{k},{l}): ({}{}){} has {} but {}({}{}) has {}",
                            self.labels[i], self.labels[j], self.labels[k], f.format(&lhs[l]),
                            self.labels[i], self.labels[j], self.labels[k], f.format(&rhs[l])
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        for j in 0..d {
            let e = self.basis_vector(j);
            if self.mul(&self.unit, &e) != e {
                report.fail(format!("left unit law fails on {}", self.labels[j]));
                break;
            }
        }
        for j in 0..d {
            let e = self.basis_vector(j);
            if self.mul(&e, &self.unit) != e {
                report.fail(format!("right unit law fails on {}", self.labels[j]));
                break;
            }
        }
        report
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.coeff(i, j, k) == self.coeff(j, i, k))))
    }

    /// c'_{ij}^k = c_{ji}^k.
    pub fn opposite(&self) -> Algebra<K> {
        let d = self.dim;
        let mut mult = vec![self.field.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mult[(i * d + j) * d + k] = self.coeff(j, i, k).clone();
                }
            }
        }
        let labels = self.labels.clone();
        Algebra::new(&self.field, labels, mult, self.unit.clone()).expect("shape preserved")
    }

    /// A ⊗ B with basis a_i ⊗ b_j at index i·dim(B) + j.
    pub fn tensor(&self, other: &Algebra<K>) -> Result<Algebra<K>> {
        if self.field != other.field {
            return Err(HhError::FieldMismatch("tensor product of algebras over different fields".into()));
        }
        let f = &self.field;
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let mut mult = vec![f.zero(); d * d * d];
        for i in 0..da {
            for j in 0..db {
                for i2 in 0..da {
                    for j2 in 0..db {
                        let row = ((i * db + j) * d + i2 * db + j2) * d;
                        for (k, c) in self.product_terms(i, i2) {
                            for (l, c2) in other.product_terms(j, j2) {
                                mult[row + k * db + l] = f.mul(c, c2);
                            }
                        }
                    }
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        let unit = self.unit.iter().flat_map(|x| other.unit.iter().map(move |y| f.mul(x, y))).collect();
        Algebra::new(f, labels, mult, unit)
    }

    /// A^ev = A ⊗ A^op. Basis element (i, j) = b_i ⊗ b_j° sits at index i·d + j.
    pub fn enveloping(&self) -> Algebra<K> {
        self.tensor(&self.opposite()).expect("same field")
    }

    /// n×n matrices over A. Basis E_{rs}⊗b_i at index (r·n + s)·d + i.
    pub fn matrix_algebra(&self, n: usize) -> Result<Algebra<K>> {
        if n == 0 {
            return Err(HhError::Dimension("matrix size must be positive".into()));
        }
        let f = &self.field;
        let d = self.dim;
        let dim = n * n * d;
        let mut mult = vec![f.zero(); dim * dim * dim];
        for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    for i in 0..d {
                        for j in 0..d {
                            let a = (r * n + s) * d + i;
                            let b = (s * n + t) * d + j;
                            for (k, c) in self.product_terms(i, j) {
                                mult[(a * dim + b) * dim + (r * n + t) * d + k] = c.clone();
                            }
                        }
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(dim);
        for r in 0..n {
            for s in 0..n {
                for l in &self.labels {
                    labels.push(if n == 1 { l.clone() } else { format!("E{r}{s}·{l}") });
                }
            }
        }
        let mut unit = vec![f.zero(); dim];
        for r in 0..n {
            for i in 0..d {
                unit[(r * n + r) * d + i] = self.unit[i].clone();
            }
        }
        Algebra::new(f, labels, mult, unit)
    }

    /// The center as a subspace of A.
    pub fn center(&self) -> Subspace<K> {
        let d = self.dim;
        let blocks: Vec<Matrix<K>> = (0..d).map(|j| self.right_mul(j).sub(&self.left_mul(j))).collect();
        let refs: Vec<&Matrix<K>> = blocks.iter().collect();
        let stacked = Matrix::vstack(&self.field, d, &refs);
        Subspace::spanned_by(&self.field, d, &stacked.kernel())
    }

    /// The same algebra written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<K>) -> Result<Algebra<K>> {
        let d = self.dim;
        let pinv = p.inverse().ok_or_else(|| HhError::Dimension("change of basis is singular".into()))?;
        let f = &self.field;
        let new_basis: Vec<Vec<K::Elem>> = p.columns();
        let mut mult = vec![f.zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = pinv.apply(&self.mul(&new_basis[i], &new_basis[j]));
                for (k, c) in prod.into_iter().enumerate() {
                    mult[(i * d + j) * d + k] = c;
                }
            }
        }
        let labels = (0..d).map(|i| format!("e{i}")).collect();
        Algebra::new(f, labels, mult, pinv.apply(&self.unit))
    }

    /// Drops the sparse cache; used by tests that perturb constants.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, c: K::Elem) -> Algebra<K> {
        let mut mult = self.mult.clone();
        mult[(i * self.dim + j) * self.dim + k] = c;
        Algebra::new(&self.field, self.labels.clone(), mult, self.unit.clone()).expect("shape preserved")
    }
}

/// k[x]/(x^n) with basis 1, x, …, x^{n−1}.
pub fn truncated_polynomial<K: Field>(field: &K, n: usize) -> Algebra<K> {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            triples.push((i, j, i + j, field.one()));
        }
    }
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    Algebra::from_triples(field, labels, &triples, unit).expect("valid shape")
}

/// The dual numbers k[x]/(x²).
pub fn dual_numbers<K: Field>(field: &K) -> Algebra<K> {
    truncated_polynomial(field, 2)
}

/// The base field as a 1-dimensional algebra.
pub fn ground<K: Field>(field: &K) -> Algebra<K> {
    truncated_polynomial(field, 1)
}

/// Upper triangular 2×2 matrices, basis e11, e12, e22.
pub fn upper_triangular<K: Field>(field: &K) -> Algebra<K> {
    let one = field.one();
    let triples = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 2, 1, one.clone()), (2, 2, 2, one.clone())];
    Algebra::from_triples(field, vec!["e11".into(), "e12".into(), "e22".into()], &triples, vec![one.clone(), field.zero(), one])
        .expect("valid shape")
}

/// Product of two algebras, basis of the first followed by the second.
pub fn product<K: Field>(a: &Algebra<K>, b: &Algebra<K>) -> Algebra<K> {
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let mut triples = Vec::new();
    for i in 0..da {
        for j in 0..da {
            for (k, c) in a.product_terms(i, j) {
                triples.push((i, j, *k, c.clone()));
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for (k, c) in b.product_terms(i, j) {
                triples.push((da + i, da + j, da + k, c.clone()));
            }
        }
    }
    let labels = a.labels().iter().map(|l| format!("{l}'")).chain(b.labels().iter().map(|l| format!("{l}\""))).collect();
    let unit = a.unit().iter().chain(b.unit()).cloned().collect();
    Algebra::from_triples(f, labels, &triples, unit).expect("valid shape")
}

/// k[x,y]/(x,y)², basis 1, x, y.
pub fn square_zero_plane<K: Field>(field: &K) -> Algebra<K> {
    let one = field.one();
    let triples = vec![(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone()), (0, 2, 2, one.clone()), (2, 0, 2, one.clone())];
    Algebra::from_triples(field, vec!["1".into(), "x".into(), "y".into()], &triples, vec![one, field.zero(), field.zero()])
        .expect("valid shape")
}

/// A seeded random 3-dimensional algebra: one of five isomorphism types in a
/// random basis.
pub fn random_three_dim<K: Field>(field: &K, rng: &mut dyn rand::RngCore) -> Algebra<K> {
    let base = match rng.next_u32() % 5 {
        0 => truncated_polynomial(field, 3),
        1 => upper_triangular(field),
        2 => product(&ground(field), &dual_numbers(field)),
        3 => product(&ground(field), &product(&ground(field), &ground(field))),
        _ => square_zero_plane(field),
    };
    loop {
        let p = Matrix::from_fn(field, 3, 3, |_, _| field.random(rng));
        if let Ok(a) = base.change_basis(&p) {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn dual_numbers_pass() {
        assert!(dual_numbers(&Rationals).check().ok());
        assert!(dual_numbers(&PrimeField::new(2).unwrap()).check().ok());
    }

    #[test]
    fn perturbed_constant_fails_associativity() {
        let a = dual_numbers(&Rationals).with_constant(0, 0, 0, Rationals.from_i64(2));
        let r = a.check();
        assert!(r.failures[0].starts_with("associativity fails at (i,j,k,l) = (0,0,1,1)"), "{r}");
    }

    #[test]
    fn opposite_is_involutive() {
        let f = PrimeField::new(3).unwrap();
        let m2 = ground(&f).matrix_algebra(2).unwrap();
        assert_eq!(m2.opposite().opposite(), m2);
        assert!(m2.opposite().check().ok());
        let a = dual_numbers(&f);
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn tensor_with_ground() {
        let a = upper_triangular(&Rationals);
        let t = a.tensor(&ground(&Rationals)).unwrap();
        assert_eq!(t.structure_constants(), a.structure_constants());
        let d = dual_numbers(&Rationals);
        let dd = d.tensor(&d).unwrap();
        assert_eq!(dd.dim(), 4);
        assert!(dd.check().ok());
    }

    #[test]
    fn enveloping_of_dual_numbers_is_commutative() {
        let f = PrimeField::new(2).unwrap();
        let ev = dual_numbers(&f).enveloping();
        assert_eq!(ev.dim(), 4);
        assert!(ev.is_commutative());
        assert!(ev.check().ok());
    }

    #[test]
    fn matrix_algebras() {
        let f = PrimeField::new(2).unwrap();
        let m2 = ground(&f).matrix_algebra(2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.center().dim(), 1);
        let md = dual_numbers(&f).matrix_algebra(2).unwrap();
        assert!(md.check().ok());
        assert_eq!(dual_numbers(&f).matrix_algebra(1).unwrap().structure_constants(), dual_numbers(&f).structure_constants());
    }

    #[test]
    fn random_algebras_are_associative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!(random_three_dim(&Rationals, &mut rng).check().ok());
        }
    }
}
