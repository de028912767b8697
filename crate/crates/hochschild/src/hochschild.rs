//! Hochschild cochains C^n(A,A) = Hom_k(A^{⊗n}, A) and the Gerstenhaber
//! operations on them.
//!
//! A cochain of degree n is a vector of length d^{n+1}: the value on the
//! basis tuple t = (a_1..a_n) occupies coordinates t·d .. t·d + d, with t
//! encoded by [`tuple_index`]. This is exactly the layout of
//! Hom_{A^ev}(B_n, A) ≅ A^{d^n} used by [`FreeResolution::hom_complex`] on
//! the bar resolution.

use std::sync::{Arc, Mutex, OnceLock};

use rand::RngCore;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::complex::{CochainComplex, Cohomology, CohomologyClass};
use crate::error::{HhError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::module::regular_bimodule;
use crate::resolution::{tuple_index, tuple_of, FreeResolution};

/// (−1)^k as a field element.
pub fn sign<K: Field>(f: &K, k: usize) -> K::Elem {
    if k % 2 == 0 {
        f.one()
    } else {
        f.neg(&f.one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain<E> {
    pub degree: usize,
    pub values: Vec<E>,
}

impl<E: Clone> Cochain<E> {
    /// Value on the basis tuple with index `t`.
    pub fn value(&self, t: usize, d: usize) -> &[E] {
        &self.values[t * d..(t + 1) * d]
    }
}

pub fn zero_cochain<K: Field>(a: &Algebra<K>, degree: usize) -> Cochain<K::Elem> {
    Cochain { degree, values: vec![a.field().zero(); a.dim().pow(degree as u32 + 1)] }
}

/// The degree-0 cochain 1_A.
pub fn unit_cochain<K: Field>(a: &Algebra<K>) -> Cochain<K::Elem> {
    Cochain { degree: 0, values: a.unit().to_vec() }
}

/// id_A as a degree-1 cochain.
pub fn identity_cochain<K: Field>(a: &Algebra<K>) -> Cochain<K::Elem> {
    let d = a.dim();
    let mut c = zero_cochain(a, 1);
    for i in 0..d {
        c.values[i * d + i] = a.field().one();
    }
    c
}

pub fn random_cochain<K: Field>(a: &Algebra<K>, degree: usize, rng: &mut dyn RngCore) -> Cochain<K::Elem> {
    let n = a.dim().pow(degree as u32 + 1);
    Cochain { degree, values: (0..n).map(|_| a.field().random(rng)).collect() }
}

pub fn add<K: Field>(f: &K, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Cochain<K::Elem> {
    assert_eq!(x.degree, y.degree, "adding cochains of different degrees");
    Cochain { degree: x.degree, values: x.values.iter().zip(&y.values).map(|(a, b)| f.add(a, b)).collect() }
}

pub fn sub<K: Field>(f: &K, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Cochain<K::Elem> {
    assert_eq!(x.degree, y.degree, "subtracting cochains of different degrees");
    Cochain { degree: x.degree, values: x.values.iter().zip(&y.values).map(|(a, b)| f.sub(a, b)).collect() }
}

pub fn scale<K: Field>(f: &K, c: &K::Elem, x: &Cochain<K::Elem>) -> Cochain<K::Elem> {
    Cochain { degree: x.degree, values: x.values.iter().map(|a| f.mul(c, a)).collect() }
}

pub fn is_zero<K: Field>(f: &K, x: &Cochain<K::Elem>) -> bool {
    x.values.iter().all(|v| f.is_zero(v))
}

fn check_shape<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>) -> Result<()> {
    let want = a.dim().pow(x.degree as u32 + 1);
    if x.values.len() != want {
        return Err(HhError::Dimension(format!("degree-{} cochain has {} entries, expected {want}", x.degree, x.values.len())));
    }
    Ok(())
}

/// Fills a fresh cochain of the given degree, one output tuple at a time.
fn build<K: Field>(a: &Algebra<K>, degree: usize, value: impl Fn(&[usize], &mut [K::Elem]) + Sync) -> Cochain<K::Elem> {
    let d = a.dim();
    let f = a.field();
    let mut values = vec![f.zero(); d.pow(degree as u32 + 1)];
    values.par_chunks_mut(d).enumerate().for_each(|(t, out)| {
        let tuple = tuple_of(t, d, degree);
        value(&tuple, out);
    });
    Cochain { degree, values }
}

/// out += c · (x·y) for elements x, y of A.
fn mul_acc<K: Field>(a: &Algebra<K>, out: &mut [K::Elem], c: &K::Elem, x: &[K::Elem], y: &[K::Elem]) {
    let f = a.field();
    for (i, xi) in x.iter().enumerate() {
        if f.is_zero(xi) {
            continue;
        }
        let cx = f.mul(c, xi);
        for (j, yj) in y.iter().enumerate() {
            if f.is_zero(yj) {
                continue;
            }
            let cxy = f.mul(&cx, yj);
            for (k, s) in a.product_terms(i, j) {
                out[*k] = f.add(&out[*k], &f.mul(&cxy, s));
            }
        }
    }
}

/// The Hochschild differential
/// (∂f)(a_1..a_{n+1}) = a_1 f(a_2..) + Σ_{i=1}^n (−1)^i f(..a_i a_{i+1}..) + (−1)^{n+1} f(a_1..a_n) a_{n+1}.
pub fn hoch_diff<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>) -> Result<Cochain<K::Elem>> {
    check_shape(a, x)?;
    let n = x.degree;
    let d = a.dim();
    let f = a.field();
    let one = f.one();
    Ok(build(a, n + 1, |t, out| {
        let e0 = a.basis_vector(t[0]);
        mul_acc(a, out, &one, &e0, x.value(tuple_index(&t[1..], d), d));
        for i in 1..=n {
            let s = sign(f, i);
            for (m, c) in a.product_terms(t[i - 1], t[i]) {
                let mut merged = t[..i - 1].to_vec();
                merged.push(*m);
                merged.extend_from_slice(&t[i + 1..]);
                let coef = f.mul(&s, c);
                f.axpy(out, &coef, x.value(tuple_index(&merged, d), d));
            }
        }
        let el = a.basis_vector(t[n]);
        mul_acc(a, out, &sign(f, n + 1), x.value(tuple_index(&t[..n], d), d), &el);
    }))
}

/// ∂^n as a matrix C^n → C^{n+1}.
pub fn diff_matrix<K: Field>(a: &Algebra<K>, n: usize) -> Matrix<K> {
    let d = a.dim();
    let f = a.field();
    let rows = d.pow(n as u32 + 2);
    let cols = d.pow(n as u32 + 1);
    let mut data = vec![f.zero(); rows * cols];
    data.par_chunks_mut(d * cols).enumerate().for_each(|(t, block)| {
        let t = tuple_of(t, d, n + 1);
        let head = tuple_index(&t[1..], d);
        let tail = tuple_index(&t[..n], d);
        for k in 0..d {
            for (kk, c) in a.product_terms(t[0], k) {
                let idx = kk * cols + head * d + k;
                block[idx] = f.add(&block[idx], c);
            }
        }
        for i in 1..=n {
            let s = sign(f, i);
            for (m, c) in a.product_terms(t[i - 1], t[i]) {
                let mut merged = t[..i - 1].to_vec();
                merged.push(*m);
                merged.extend_from_slice(&t[i + 1..]);
                let col = tuple_index(&merged, d) * d;
                let coef = f.mul(&s, c);
                for k in 0..d {
                    let idx = k * cols + col + k;
                    block[idx] = f.add(&block[idx], &coef);
                }
            }
        }
        let s = sign(f, n + 1);
        for k in 0..d {
            for (kk, c) in a.product_terms(k, t[n]) {
                let idx = kk * cols + tail * d + k;
                block[idx] = f.add(&block[idx], &f.mul(&s, c));
            }
        }
    });
    Matrix::from_vec(f, rows, cols, data)
}

/// (f∪g)(a_1..a_{m+n}) = f(a_1..a_m)·g(a_{m+1}..a_{m+n}).
pub fn cup<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Result<Cochain<K::Elem>> {
    check_shape(a, x)?;
    check_shape(a, y)?;
    let (m, n) = (x.degree, y.degree);
    let d = a.dim();
    let one = a.field().one();
    Ok(build(a, m + n, |t, out| {
        mul_acc(a, out, &one, x.value(tuple_index(&t[..m], d), d), y.value(tuple_index(&t[m..], d), d));
    }))
}

/// f •_i g: g substituted into slot i of f, 0 ≤ i ≤ m−1.
pub fn circle_i<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>, i: usize) -> Result<Cochain<K::Elem>> {
    check_shape(a, x)?;
    check_shape(a, y)?;
    let m = x.degree;
    if i >= m {
        return Err(HhError::OutOfRange(format!("slot {i} for a degree-{m} cochain")));
    }
    Ok(circle_sum(a, x, y, &[(i, a.field().one())]))
}

/// Σ c_i f •_i g over the given (slot, coefficient) pairs.
fn circle_sum<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>, slots: &[(usize, K::Elem)]) -> Cochain<K::Elem> {
    let (m, n) = (x.degree, y.degree);
    let d = a.dim();
    let f = a.field();
    build(a, m + n - 1, |t, out| {
        let mut s = vec![0usize; m];
        for (i, c) in slots {
            let inner = y.value(tuple_index(&t[*i..*i + n], d), d);
            s[..*i].copy_from_slice(&t[..*i]);
            s[i + 1..].copy_from_slice(&t[i + n..]);
            for (k, gk) in inner.iter().enumerate() {
                if f.is_zero(gk) {
                    continue;
                }
                s[*i] = k;
                let coef = f.mul(c, gk);
                f.axpy(out, &coef, x.value(tuple_index(&s, d), d));
            }
        }
    })
}

/// f•g = Σ_{i=0}^{m−1} (−1)^{i(n−1)} f •_i g.
pub fn circle<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Result<Cochain<K::Elem>> {
    check_shape(a, x)?;
    check_shape(a, y)?;
    let (m, n) = (x.degree, y.degree);
    if m == 0 {
        if n == 0 {
            return Err(HhError::OutOfRange("the circle product of two degree-0 cochains has degree −1".into()));
        }
        return Ok(zero_cochain(a, n - 1));
    }
    let f = a.field();
    let slots: Vec<(usize, K::Elem)> = (0..m).map(|i| (i, sign(f, i * (n + 1)))).collect();
    Ok(circle_sum(a, x, y, &slots))
}

/// {f,g} = f•g − (−1)^{(m−1)(n−1)} g•f.
pub fn bracket<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Result<Cochain<K::Elem>> {
    let f = a.field();
    let (m, n) = (x.degree, y.degree);
    if m + n == 0 {
        return Err(HhError::OutOfRange("the bracket of two degree-0 cochains has degree −1".into()));
    }
    let fg = circle(a, x, y)?;
    let gf = circle(a, y, x)?;
    let s = sign(f, (m + 1) * (n + 1));
    Ok(sub(f, &fg, &scale(f, &s, &gf)))
}

/// sq(f) = f•f for f of positive even degree.
pub fn sq<K: Field>(a: &Algebra<K>, x: &Cochain<K::Elem>) -> Result<Cochain<K::Elem>> {
    if x.degree % 2 == 1 {
        return Err(HhError::OutOfRange(format!("sq needs even degree, got {}", x.degree)));
    }
    circle(a, x, x)
}

/// Bar-complex cohomology of C(A,A) with an optional comparison map for
/// degrees whose bar differentials are too large to store.
pub struct Hochschild<K: Field> {
    alg: Arc<Algebra<K>>,
    bar_limit: usize,
    diffs: Vec<OnceLock<Matrix<K>>>,
    boundaries: Vec<OnceLock<Subspace<K>>>,
    cohom: Vec<OnceLock<Cohomology<K>>>,
    comparison: Mutex<Option<Arc<Comparison<K>>>>,
}

/// Largest ∂ matrix (entries) materialized by default.
pub const DEFAULT_ENTRY_LIMIT: usize = 1 << 23;

const MAX_DEGREE: usize = 24;

impl<K: Field> Hochschild<K> {
    pub fn new(alg: Arc<Algebra<K>>) -> Self {
        Self::with_limit(alg, DEFAULT_ENTRY_LIMIT)
    }

    /// `entry_limit` bounds the size of the ∂ matrices that are built.
    pub fn with_limit(alg: Arc<Algebra<K>>, entry_limit: usize) -> Self {
        let d = alg.dim();
        let mut bar_limit = 0;
        while bar_limit < MAX_DEGREE && d.pow(2 * bar_limit as u32 + 3) <= entry_limit {
            bar_limit += 1;
        }
        Hochschild {
            alg,
            bar_limit,
            diffs: (0..MAX_DEGREE).map(|_| OnceLock::new()).collect(),
            boundaries: (0..MAX_DEGREE).map(|_| OnceLock::new()).collect(),
            cohom: (0..MAX_DEGREE).map(|_| OnceLock::new()).collect(),
            comparison: Mutex::new(None),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<K>> {
        &self.alg
    }
    pub fn field(&self) -> &K {
        self.alg.field()
    }

    /// Number of bar differentials ∂^0..∂^{limit−1} that may be built.
    pub fn bar_limit(&self) -> usize {
        self.bar_limit
    }

    pub fn diff(&self, n: usize) -> Result<&Matrix<K>> {
        if n >= self.bar_limit {
            return Err(HhError::Truncation { need: n + 1, have: self.bar_limit });
        }
        Ok(self.diffs[n].get_or_init(|| diff_matrix(&self.alg, n)))
    }

    /// The cochain complex through ∂^{top−1}.
    pub fn complex(&self, top: usize) -> Result<CochainComplex<K>> {
        let d = self.alg.dim();
        let dims = (0..=top).map(|n| d.pow(n as u32 + 1)).collect();
        let diffs = (0..top).map(|n| self.diff(n).cloned()).collect::<Result<Vec<_>>>()?;
        CochainComplex::new(self.field(), dims, diffs)
    }

    /// HH^n with canonical basis; needs ∂^n within the bar limit.
    pub fn cohomology(&self, n: usize) -> Result<&Cohomology<K>> {
        if let Some(c) = self.cohom[n].get() {
            return Ok(c);
        }
        let diff = self.diff(n)?.clone();
        let b = self.boundary_space(n)?.clone();
        Ok(self.cohom[n].get_or_init(|| Cohomology::from_parts(n, diff, b)))
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        if n < self.bar_limit {
            Ok(self.cohomology(n)?.dim())
        } else {
            self.comparison(n)?.dim(n)
        }
    }

    fn boundary_space(&self, n: usize) -> Result<&Subspace<K>> {
        if let Some(b) = self.boundaries[n].get() {
            return Ok(b);
        }
        let b = if n == 0 {
            Subspace::zero(self.field(), self.alg.dim())
        } else {
            Subspace::column_space(self.diff(n - 1)?)
        };
        Ok(self.boundaries[n].get_or_init(|| b))
    }

    /// A comparison map reaching degree `n`, rebuilt when a higher degree
    /// is requested than the cached one covers.
    pub fn comparison(&self, n: usize) -> Result<Arc<Comparison<K>>> {
        if n + 2 > MAX_DEGREE {
            return Err(HhError::OutOfRange(format!("degree {n} exceeds {}", MAX_DEGREE - 2)));
        }
        let mut slot = self.comparison.lock().expect("comparison cache poisoned");
        if let Some(c) = slot.as_ref() {
            if c.top() >= n {
                return Ok(c.clone());
            }
        }
        let c = Arc::new(Comparison::new(&self.alg, n)?);
        *slot = Some(c.clone());
        Ok(c)
    }

    /// Whether a cochain is a coboundary. Uses im ∂^{n−1} when that matrix
    /// is within the bar limit and the comparison map otherwise.
    pub fn is_coboundary(&self, x: &Cochain<K::Elem>) -> Result<bool> {
        check_shape(&self.alg, x)?;
        if x.degree < self.bar_limit + 1 {
            Ok(self.boundary_space(x.degree)?.contains(&x.values))
        } else {
            self.comparison(x.degree)?.is_coboundary(x)
        }
    }

    pub fn is_cocycle(&self, x: &Cochain<K::Elem>) -> Result<bool> {
        Ok(is_zero(self.field(), &hoch_diff(&self.alg, x)?))
    }

    /// Class of a cocycle in a degree with a stored basis.
    pub fn class_of(&self, x: &Cochain<K::Elem>) -> Result<CohomologyClass<K::Elem>> {
        self.cohomology(x.degree)?.class_of(&x.values)
    }

    /// Whether two cocycles of equal degree define the same class.
    pub fn same_class(&self, x: &Cochain<K::Elem>, y: &Cochain<K::Elem>) -> Result<bool> {
        if x.degree != y.degree {
            return Err(HhError::Dimension("classes of different degrees".into()));
        }
        self.is_coboundary(&sub(self.field(), x, y))
    }

    pub fn basis_cochains(&self, n: usize) -> Result<Vec<Cochain<K::Elem>>> {
        Ok(self.cohomology(n)?.basis().iter().map(|v| Cochain { degree: n, values: v.clone() }).collect())
    }
}

/// A small free resolution P of A over A^ev together with a chain map
/// ι: P → bar resolution. Pulling cochains back along ι is a
/// quasi-isomorphism Hom(B, A) → Hom(P, A), so coboundaries can be detected
/// in the much smaller complex Hom(P, A).
pub struct Comparison<K: Field> {
    alg: Arc<Algebra<K>>,
    resolution: FreeResolution<K>,
    hom: CochainComplex<K>,
    iota: Vec<Vec<Vec<K::Elem>>>,
    boundaries: Vec<OnceLock<Subspace<K>>>,
}

impl<K: Field> Comparison<K> {
    /// Resolution and comparison map through degree `top`.
    pub fn new(alg: &Arc<Algebra<K>>, top: usize) -> Result<Self> {
        let ev = Arc::new(alg.enveloping());
        let resolution = FreeResolution::greedy(&ev, &regular_bimodule(alg, &ev), top + 1);
        let hom = resolution.hom_complex(&regular_bimodule(alg, &ev));
        let mut c = Comparison { alg: alg.clone(), resolution, hom, iota: Vec::new(), boundaries: (0..=top + 1).map(|_| OnceLock::new()).collect() };
        c.extend_iota(top)?;
        Ok(c)
    }

    /// Builds ι lazily: ι_0(g) = 1⊗ε(g) and ι_n(g) = s(ι_{n−1}(d g)), with s
    /// the contracting homotopy x ↦ 1⊗x of the bar resolution.
    fn extend_iota(&mut self, top: usize) -> Result<()> {
        let a = self.alg.clone();
        let f = a.field();
        let d = a.dim();
        let u = a.unit().to_vec();
        let dl = d * d;
        while self.iota.len() <= top {
            let n = self.iota.len();
            let len = d.pow(n as u32 + 2);
            let gens: Vec<Vec<K::Elem>> = if n == 0 {
                self.resolution
                    .augmentation_values()
                    .iter()
                    .map(|e| {
                        let mut v = vec![f.zero(); len];
                        for (k, uk) in u.iter().enumerate() {
                            for (j, ej) in e.iter().enumerate() {
                                v[k * d + j] = f.mul(uk, ej);
                            }
                        }
                        v
                    })
                    .collect()
            } else {
                let prev = &self.iota[n - 1];
                (0..self.resolution.rank(n))
                    .into_par_iter()
                    .map(|g| {
                        let plen = len / d;
                        let mut y = vec![f.zero(); plen];
                        for (idx, c) in self.resolution.image(n, g) {
                            let (g2, l) = (*idx / dl, *idx % dl);
                            act_outer(&a, &mut y, c, l / d, l % d, &prev[g2], n + 1);
                        }
                        let mut v = vec![f.zero(); len];
                        for (k, uk) in u.iter().enumerate() {
                            if !f.is_zero(uk) {
                                f.axpy(&mut v[k * plen..(k + 1) * plen], uk, &y);
                            }
                        }
                        v
                    })
                    .collect()
            };
            self.iota.push(gens);
        }
        Ok(())
    }

    pub fn resolution(&self) -> &FreeResolution<K> {
        &self.resolution
    }

    pub fn top(&self) -> usize {
        self.iota.len() - 1
    }

    /// ι^*(x) ∈ Hom_{A^ev}(P_n, A) ≅ A^{r_n}.
    pub fn pullback(&self, x: &Cochain<K::Elem>) -> Result<Vec<K::Elem>> {
        let n = x.degree;
        if n > self.top() {
            return Err(HhError::Truncation { need: n, have: self.top() });
        }
        let a = &self.alg;
        let f = a.field();
        let d = a.dim();
        let mid = d.pow(n as u32);
        let out: Vec<Vec<K::Elem>> = self.iota[n]
            .par_iter()
            .map(|v| {
                let mut val = vec![f.zero(); d];
                for (idx, c) in v.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let last = idx % d;
                    let m = (idx / d) % mid;
                    let first = idx / d / mid;
                    let inner = a.mul(&a.basis_vector(first), x.value(m, d));
                    mul_acc(a, &mut val, c, &inner, &a.basis_vector(last));
                }
                val
            })
            .collect();
        Ok(out.concat())
    }

    fn boundaries(&self, n: usize) -> &Subspace<K> {
        self.boundaries[n].get_or_init(|| {
            if n == 0 {
                Subspace::zero(self.alg.field(), self.hom.dims()[0])
            } else {
                Subspace::column_space(self.hom.diff(n - 1))
            }
        })
    }

    pub fn is_coboundary(&self, x: &Cochain<K::Elem>) -> Result<bool> {
        let v = self.pullback(x)?;
        Ok(self.boundaries(x.degree).contains(&v))
    }

    /// dim HH^n computed from Hom(P, A).
    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.hom.cohomology(n)?.dim())
    }

    pub fn hom_complex(&self) -> &CochainComplex<K> {
        &self.hom
    }
}

/// y += c · (b_i ⊗ … ⊗ b_j°)·x on A^{⊗len}: left multiplication of the first
/// factor by b_i, right multiplication of the last by b_j.
fn act_outer<K: Field>(a: &Algebra<K>, y: &mut [K::Elem], c: &K::Elem, i: usize, j: usize, x: &[K::Elem], len: usize) {
    let f = a.field();
    let d = a.dim();
    let mid = d.pow(len as u32 - 2);
    for (idx, v) in x.iter().enumerate() {
        if f.is_zero(v) {
            continue;
        }
        let last = idx % d;
        let m = (idx / d) % mid;
        let first = idx / d / mid;
        let cv = f.mul(c, v);
        for (p, s) in a.product_terms(i, first) {
            let cvs = f.mul(&cv, s);
            for (q, t) in a.product_terms(last, j) {
                let o = (p * mid + m) * d + q;
                y[o] = f.add(&y[o], &f.mul(&cvs, t));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, upper_triangular};
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diff_squares_to_zero() {
        let a = dual_numbers(&Rationals);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 0..4 {
            let x = random_cochain(&a, m, &mut rng);
            let dd = hoch_diff(&a, &hoch_diff(&a, &x).unwrap()).unwrap();
            assert!(is_zero(&Rationals, &dd));
        }
        assert!(is_zero(&Rationals, &hoch_diff(&a, &unit_cochain(&a)).unwrap()));
    }

    #[test]
    fn matrix_agrees_with_direct_evaluation() {
        let f = PrimeField::new(5).unwrap();
        let a = upper_triangular(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 0..3 {
            let x = random_cochain(&a, n, &mut rng);
            assert_eq!(diff_matrix(&a, n).apply(&x.values), hoch_diff(&a, &x).unwrap().values);
        }
    }

    /// On k[x]/(x²) over GF(2), (∂ id)(a,b) = a·b − ab + ab = ab, computed by hand.
    #[test]
    fn diff_of_identity_on_dual_numbers() {
        let f = PrimeField::new(2).unwrap();
        let a = dual_numbers(&f);
        let did = hoch_diff(&a, &identity_cochain(&a)).unwrap();
        let expect = [[vec![1, 0], vec![0, 1]], [vec![0, 1], vec![0, 0]]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(did.value(i * 2 + j, 2), &expect[i][j][..]);
            }
        }
    }

    #[test]
    fn bar_hom_complex_is_the_hochschild_complex() {
        let a = upper_triangular(&Rationals);
        let ev = Arc::new(a.enveloping());
        let bar = FreeResolution::bar(&a, &ev, 3);
        let hom = bar.hom_complex(&regular_bimodule(&a, &ev));
        for n in 0..3 {
            assert_eq!(hom.diff(n), &diff_matrix(&a, n));
        }
    }

    #[test]
    fn unit_is_a_cup_identity() {
        let a = upper_triangular(&Rationals);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_cochain(&a, 2, &mut rng);
        let u = unit_cochain(&a);
        assert_eq!(cup(&a, &u, &x).unwrap(), x);
        assert_eq!(cup(&a, &x, &u).unwrap(), x);
    }

    #[test]
    fn slot_out_of_range() {
        let a = dual_numbers(&Rationals);
        let x = zero_cochain(&a, 2);
        assert!(circle_i(&a, &x, &x, 2).is_err());
        assert!(sq(&a, &zero_cochain(&a, 1)).is_err());
    }

    #[test]
    fn dimensions_of_small_algebras() {
        let f2 = PrimeField::new(2).unwrap();
        let hh = Hochschild::new(Arc::new(dual_numbers(&f2)));
        assert_eq!((0..5).map(|n| hh.dim(n).unwrap()).collect::<Vec<_>>(), vec![2; 5]);
        let hq = Hochschild::new(Arc::new(dual_numbers(&Rationals)));
        assert_eq!((0..5).map(|n| hq.dim(n).unwrap()).collect::<Vec<_>>(), vec![2, 1, 1, 1, 1]);
        let ut = Hochschild::new(Arc::new(upper_triangular(&Rationals)));
        assert_eq!((0..3).map(|n| ut.dim(n).unwrap()).collect::<Vec<_>>(), vec![1, 0, 0]);
    }

    #[test]
    fn unit_bracket_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let a = Arc::new(dual_numbers(&f));
        let hh = Hochschild::new(a.clone());
        let x = Cochain { degree: 0, values: vec![0, 1] };
        let eta = Cochain { degree: 1, values: vec![0, 0, 1, 0] };
        assert!(hh.is_cocycle(&x).unwrap() && hh.is_cocycle(&eta).unwrap());
        let b = bracket(&a, &x, &eta).unwrap();
        assert_eq!(b, unit_cochain(&a));
        assert!(!hh.is_coboundary(&b).unwrap());
    }

    #[test]
    fn comparison_agrees_with_bar() {
        let f = PrimeField::new(3).unwrap();
        let a = Arc::new(upper_triangular(&f));
        let hh = Hochschild::new(a.clone());
        let cmp = Comparison::new(&a, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..4 {
            let u = random_cochain(&a, n - 1, &mut rng);
            let b = hoch_diff(&a, &u).unwrap();
            assert!(cmp.is_coboundary(&b).unwrap());
            assert_eq!(cmp.dim(n).unwrap(), hh.dim(n).unwrap());
        }
    }
}
