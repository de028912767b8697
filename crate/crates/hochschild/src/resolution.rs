//! Free resolutions stored by generator images, Hom complexes out of them and
//! lifting of chain maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Report};
use crate::complex::{ChainComplex, CochainComplex};
use crate::error::{HhError, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::module::{regular_bimodule, Module};

/// Sparse element of a free module Λ^r: entries (g·dim Λ + l, c) stand for
/// c·b_l·g.
pub type FreeElem<E> = Vec<(usize, E)>;

/// A free resolution P_N → … → P_0 → X, P_n = Λ^{r_n}.
#[derive(Clone, Debug)]
pub struct FreeResolution<K: Field> {
    ring: Arc<Algebra<K>>,
    ranks: Vec<usize>,
    images: Vec<Vec<FreeElem<K::Elem>>>,
    target: Module<K>,
    augmentation: Vec<Vec<K::Elem>>,
}

fn collect<K: Field>(f: &K, acc: BTreeMap<usize, K::Elem>) -> FreeElem<K::Elem> {
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
}

fn push<K: Field>(f: &K, acc: &mut BTreeMap<usize, K::Elem>, idx: usize, c: K::Elem) {
    let e = acc.entry(idx).or_insert_with(|| f.zero());
    *e = f.add(e, &c);
}

/// Index of a tuple of basis indices in base d, most significant first.
pub fn tuple_index(t: &[usize], d: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * d + x)
}

/// Inverse of [`tuple_index`].
pub fn tuple_of(mut idx: usize, d: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    t
}

impl<K: Field> FreeResolution<K> {
    /// `images[n−1][g]` is d_n(g) for a generator g of P_n.
    pub fn new(
        ring: &Arc<Algebra<K>>,
        ranks: Vec<usize>,
        images: Vec<Vec<FreeElem<K::Elem>>>,
        target: Module<K>,
        augmentation: Vec<Vec<K::Elem>>,
    ) -> Result<Self> {
        if ranks.is_empty() || images.len() + 1 != ranks.len() || augmentation.len() != ranks[0] {
            return Err(HhError::Dimension("inconsistent resolution data".into()));
        }
        Ok(FreeResolution { ring: ring.clone(), ranks, images, target, augmentation })
    }

    /// The bar resolution of A over A^ev up to degree `top`; the generator of
    /// B_n indexed by (a_1..a_n) is 1⊗a_1⊗…⊗a_n⊗1.
    pub fn bar(a: &Algebra<K>, ev: &Arc<Algebra<K>>, top: usize) -> Self {
        let f = a.field();
        let d = a.dim();
        let u = a.unit();
        let mut ranks = vec![1];
        let mut images = Vec::new();
        for n in 1..=top {
            let r = d.pow(n as u32);
            ranks.push(r);
            let rprev = d.pow(n as u32 - 1);
            let mut imgs = Vec::with_capacity(r);
            for g in 0..r {
                let t = tuple_of(g, d, n);
                let mut acc = BTreeMap::new();
                let head = tuple_index(&t[1..], d);
                for (j, uj) in u.iter().enumerate() {
                    if !f.is_zero(uj) {
                        push(f, &mut acc, head * d * d + t[0] * d + j, uj.clone());
                    }
                }
                for i in 1..n {
                    for (m, c) in a.product_terms(t[i - 1], t[i]) {
                        let mut s = t[..i - 1].to_vec();
                        s.push(*m);
                        s.extend_from_slice(&t[i + 1..]);
                        let sg = tuple_index(&s, d);
                        let c = if i % 2 == 1 { f.neg(c) } else { c.clone() };
                        for (i0, ui) in u.iter().enumerate() {
                            for (j0, uj) in u.iter().enumerate() {
                                if !f.is_zero(ui) && !f.is_zero(uj) {
                                    push(f, &mut acc, sg * d * d + i0 * d + j0, f.mul(&c, &f.mul(ui, uj)));
                                }
                            }
                        }
                    }
                }
                let tail = tuple_index(&t[..n - 1], d);
                for (i0, ui) in u.iter().enumerate() {
                    if !f.is_zero(ui) {
                        let c = if n % 2 == 1 { f.neg(ui) } else { ui.clone() };
                        push(f, &mut acc, tail * d * d + i0 * d + t[n - 1], c);
                    }
                }
                debug_assert!(tail < rprev && head < rprev);
                imgs.push(collect(f, acc));
            }
            images.push(imgs);
        }
        let target = regular_bimodule(a, ev);
        FreeResolution { ring: ev.clone(), ranks, images, target, augmentation: vec![u.to_vec()] }
    }

    /// The bar resolution B^{⊗(n+1)} of the trivial module over B, where the
    /// trivial module is k with B acting through `counit`. The generator of
    /// P_n indexed by (b_1..b_n) is 1⊗b_1⊗…⊗b_n.
    pub fn trivial_bar(b: &Arc<Algebra<K>>, counit: &[K::Elem], top: usize) -> Result<Self> {
        let f = b.field();
        let d = b.dim();
        if counit.len() != d {
            return Err(HhError::Dimension("counit length".into()));
        }
        let u = b.unit();
        let trivial = trivial_module(b, counit)?;
        let mut ranks = vec![1];
        let mut images = Vec::new();
        for n in 1..=top {
            let r = d.pow(n as u32);
            ranks.push(r);
            let mut imgs = Vec::with_capacity(r);
            for g in 0..r {
                let t = tuple_of(g, d, n);
                let mut acc = BTreeMap::new();
                push(f, &mut acc, tuple_index(&t[1..], d) * d + t[0], f.one());
                for i in 1..n {
                    for (m, c) in b.product_terms(t[i - 1], t[i]) {
                        let mut s = t[..i - 1].to_vec();
                        s.push(*m);
                        s.extend_from_slice(&t[i + 1..]);
                        let c = if i % 2 == 1 { f.neg(c) } else { c.clone() };
                        for (l, ul) in u.iter().enumerate() {
                            if !f.is_zero(ul) {
                                push(f, &mut acc, tuple_index(&s, d) * d + l, f.mul(&c, ul));
                            }
                        }
                    }
                }
                let e = &counit[t[n - 1]];
                if !f.is_zero(e) {
                    let e = if n % 2 == 1 { f.neg(e) } else { e.clone() };
                    for (l, ul) in u.iter().enumerate() {
                        if !f.is_zero(ul) {
                            push(f, &mut acc, tuple_index(&t[..n - 1], d) * d + l, f.mul(&e, ul));
                        }
                    }
                }
                imgs.push(collect(f, acc));
            }
            images.push(imgs);
        }
        Ok(FreeResolution { ring: b.clone(), ranks, images, target: trivial, augmentation: vec![vec![f.one()]] })
    }

    /// A free resolution of `x` built by choosing generators greedily from
    /// kernel bases and pruning redundant ones. Not minimal in general, but
    /// far smaller than a bar resolution.
    pub fn greedy(ring: &Arc<Algebra<K>>, x: &Module<K>, top: usize) -> Self {
        let f = ring.field();
        let candidates: Vec<Vec<K::Elem>> = (0..x.dim())
            .map(|i| {
                let mut v = vec![f.zero(); x.dim()];
                v[i] = f.one();
                v
            })
            .collect();
        let augmentation = pick_generators(x, &candidates, x.dim());
        let mut res = FreeResolution { ring: ring.clone(), ranks: vec![augmentation.len()], images: Vec::new(), target: x.clone(), augmentation };
        for n in 1..=top {
            let map = if n == 1 { res.augmentation_matrix() } else { res.diff_matrix(n - 1) };
            let kernel = map.kernel();
            let free = Module::free(ring, res.ranks[n - 1]);
            let gens = pick_generators(&free, &kernel, kernel.len());
            res.ranks.push(gens.len());
            res.images.push(gens.iter().map(|v| v.iter().cloned().enumerate().filter(|(_, c)| !f.is_zero(c)).collect()).collect());
        }
        res
    }

    pub fn ring(&self) -> &Arc<Algebra<K>> {
        &self.ring
    }
    pub fn field(&self) -> &K {
        self.ring.field()
    }
    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }
    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
    pub fn target(&self) -> &Module<K> {
        &self.target
    }
    /// d_n(g) for n ≥ 1.
    pub fn image(&self, n: usize, g: usize) -> &FreeElem<K::Elem> {
        &self.images[n - 1][g]
    }
    pub fn augmentation_values(&self) -> &[Vec<K::Elem>] {
        &self.augmentation
    }

    pub fn module(&self, n: usize) -> Module<K> {
        Module::free(&self.ring, self.ranks[n])
    }

    /// Evaluates a Λ-linear map on `elem` given its values on generators
    /// (columns of `values`) and the target's action.
    pub fn evaluate(&self, elem: &FreeElem<K::Elem>, values: &Matrix<K>, target: &Module<K>) -> Vec<K::Elem> {
        let f = self.field();
        let dl = self.ring.dim();
        let mut out = vec![f.zero(); target.dim()];
        let mut by_gen: BTreeMap<usize, Vec<K::Elem>> = BTreeMap::new();
        for (idx, c) in elem {
            let (g, l) = (idx / dl, idx % dl);
            let coeffs = by_gen.entry(g).or_insert_with(|| vec![f.zero(); dl]);
            coeffs[l] = f.add(&coeffs[l], c);
        }
        for (g, coeffs) in by_gen {
            let v = values.col(g);
            for (l, c) in coeffs.iter().enumerate() {
                if !f.is_zero(c) {
                    let w = target.action(l).apply(&v);
                    f.axpy(&mut out, c, &w);
                }
            }
        }
        out
    }

    /// The Λ-linear map determined by generator values, as a matrix on the
    /// free module of rank `values.cols()`.
    pub fn linear_map(&self, values: &Matrix<K>, target: &Module<K>) -> Matrix<K> {
        let f = self.field();
        let dl = self.ring.dim();
        let mut out = Matrix::zeros(f, target.dim(), values.cols() * dl);
        for g in 0..values.cols() {
            let v = values.col(g);
            for l in 0..dl {
                let w = target.action(l).apply(&v);
                for (i, x) in w.into_iter().enumerate() {
                    out.set(i, g * dl + l, x);
                }
            }
        }
        out
    }

    fn elem_to_dense(&self, elem: &FreeElem<K::Elem>, rank: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field().zero(); rank * self.ring.dim()];
        for (i, c) in elem {
            v[*i] = self.field().add(&v[*i], c);
        }
        v
    }

    /// d_n as a matrix Λ^{r_n} → Λ^{r_{n−1}}.
    pub fn diff_matrix(&self, n: usize) -> Matrix<K> {
        let prev = Module::free(&self.ring, self.ranks[n - 1]);
        let cols: Vec<Vec<K::Elem>> = self.images[n - 1].iter().map(|e| self.elem_to_dense(e, self.ranks[n - 1])).collect();
        let values = Matrix::from_cols(self.field(), prev.dim(), &cols);
        self.linear_map(&values, &prev)
    }

    /// ε: Λ^{r_0} → X.
    pub fn augmentation_matrix(&self) -> Matrix<K> {
        let values = Matrix::from_cols(self.field(), self.target.dim(), &self.augmentation);
        self.linear_map(&values, &self.target)
    }

    /// The resolution as a chain complex of materialized free modules.
    pub fn to_chain_complex(&self) -> ChainComplex<K> {
        let terms = (0..=self.top()).map(|n| self.module(n)).collect();
        let diffs = (1..=self.top()).map(|n| self.diff_matrix(n)).collect();
        ChainComplex::new(&self.ring, terms, diffs, Some((self.target.clone(), self.augmentation_matrix()))).expect("consistent shapes")
    }

    /// d² = 0, ε d_1 = 0 and exactness, checked on the materialized complex.
    pub fn check(&self) -> Report {
        self.to_chain_complex().check(true)
    }

    /// Hom_Λ(P, M) ≅ M^{r_n}, with the value at generator g in coordinates
    /// g·dim M .. (g+1)·dim M; the differential is precomposition with d.
    pub fn hom_complex(&self, m: &Module<K>) -> CochainComplex<K> {
        let f = self.field();
        let dm = m.dim();
        let dl = self.ring.dim();
        let dims: Vec<usize> = self.ranks.iter().map(|r| r * dm).collect();
        let mut diffs = Vec::with_capacity(self.top());
        for n in 0..self.top() {
            let mut mat = Matrix::zeros(f, dims[n + 1], dims[n]);
            for (g, img) in self.images[n].iter().enumerate() {
                for (idx, c) in img {
                    let (g2, l) = (idx / dl, idx % dl);
                    let a = m.action(l);
                    for i in 0..dm {
                        for j in 0..dm {
                            let x = a.get(i, j);
                            if !f.is_zero(x) {
                                mat.add_at(g * dm + i, g2 * dm + j, &f.mul(c, x));
                            }
                        }
                    }
                }
            }
            diffs.push(mat);
        }
        CochainComplex::new(f, dims, diffs).expect("consistent shapes")
    }

    /// Lifts `f_minus: X → Y` to a chain map into the exact augmented complex
    /// `target` (onto Y), through degree `upto`. Returns, per degree, the
    /// values on generators as columns. With an rng, each value is shifted by
    /// a random kernel element, producing an independent lift.
    pub fn lift(&self, target: &ChainComplex<K>, f_minus: &Matrix<K>, upto: usize, mut rng: Option<&mut dyn RngCore>) -> Result<Vec<Matrix<K>>> {
        let f = self.field();
        if upto > self.top() || upto >= target.len() {
            return Err(HhError::Truncation { need: upto, have: self.top().min(target.len().saturating_sub(1)) });
        }
        let (ty, eps_t) = target.augmentation().ok_or_else(|| HhError::Shape("target complex is not augmented".into()))?;
        if f_minus.rows() != ty.dim() || f_minus.cols() != self.target.dim() {
            return Err(HhError::Dimension("f₋₁ has the wrong shape".into()));
        }
        let mut out: Vec<Matrix<K>> = Vec::with_capacity(upto + 1);
        for n in 0..=upto {
            let (map, rhs_cols): (&Matrix<K>, Vec<Vec<K::Elem>>) = if n == 0 {
                (eps_t, self.augmentation.iter().map(|x| f_minus.apply(x)).collect())
            } else {
                let prev = &out[n - 1];
                let cols = self.images[n - 1].iter().map(|e| self.evaluate(e, prev, target.term(n - 1))).collect();
                (target.diff(n), cols)
            };
            let rhs = Matrix::from_cols(f, map.rows(), &rhs_cols);
            let sols = map.solve_columns(&rhs)?;
            let kernel = if rng.is_some() { map.kernel() } else { Vec::new() };
            let mut cols = Vec::with_capacity(sols.len());
            for (g, s) in sols.into_iter().enumerate() {
                let mut x = s.ok_or_else(|| HhError::NoSolution(format!("cannot lift generator {g} in degree {n}")))?;
                if let Some(r) = rng.as_deref_mut() {
                    for k in &kernel {
                        let c = f.random(r);
                        f.axpy(&mut x, &c, k);
                    }
                }
                cols.push(x);
            }
            out.push(Matrix::from_cols(f, target.term(n).dim(), &cols));
        }
        Ok(out)
    }

    /// A homotopy h with f − f' = d h + h d between two lifts, through degree
    /// `upto − 1`; fails if the linear systems are inconsistent.
    pub fn homotopy(&self, target: &ChainComplex<K>, a: &[Matrix<K>], b: &[Matrix<K>]) -> Result<Vec<Matrix<K>>> {
        let f = self.field();
        let upto = a.len().min(b.len());
        let mut hs: Vec<Matrix<K>> = Vec::new();
        for n in 0..upto.saturating_sub(1) {
            let diff = a[n].sub(&b[n]);
            let mut cols = Vec::with_capacity(self.ranks[n]);
            for g in 0..self.ranks[n] {
                let mut v = diff.col(g);
                if n > 0 {
                    let hd = self.evaluate(&self.images[n - 1][g], &hs[n - 1], target.term(n));
                    v = v.iter().zip(&hd).map(|(x, y)| f.sub(x, y)).collect();
                }
                cols.push(v);
            }
            let rhs = Matrix::from_cols(f, target.term(n).dim(), &cols);
            let sol = target
                .diff(n + 1)
                .solve_many(&rhs)?
                .ok_or_else(|| HhError::NoSolution(format!("homotopy system inconsistent in degree {n}")))?;
            hs.push(sol);
        }
        Ok(hs)
    }
}

/// The trivial module: k with b acting as ε(b).
pub fn trivial_module<K: Field>(b: &Arc<Algebra<K>>, counit: &[K::Elem]) -> Result<Module<K>> {
    let f = b.field();
    let action = counit.iter().map(|e| Matrix::from_vec(f, 1, 1, vec![e.clone()])).collect();
    Module::new(b, 1, action)
}

/// Chooses generators of the submodule spanned by `candidates` (of
/// dimension `target_dim`). Each new generator is the best of a few random
/// combinations of the candidates, which keeps free covers close to minimal
/// over non-local rings; redundant generators are dropped at the end.
pub fn pick_generators<K: Field>(m: &Module<K>, candidates: &[Vec<K::Elem>], target_dim: usize) -> Vec<Vec<K::Elem>> {
    const TRIALS: usize = 6;
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ candidates.len() as u64);
    let mut chosen: Vec<Vec<K::Elem>> = Vec::new();
    let mut span = Subspace::zero(f, m.dim());
    let mut next = 0;
    while span.dim() < target_dim {
        let mut best: Option<(usize, Vec<K::Elem>, Subspace<K>)> = None;
        for _ in 0..TRIALS {
            let mut v = vec![f.zero(); m.dim()];
            for c in candidates {
                let r = f.random(&mut rng);
                if !f.is_zero(&r) {
                    f.axpy(&mut v, &r, c);
                }
            }
            let mut trial = chosen.clone();
            trial.push(v.clone());
            let s = m.generated_subspace(&trial);
            if best.as_ref().map_or(true, |b| s.dim() > b.0) {
                best = Some((s.dim(), v, s));
            }
        }
        match best {
            Some((dim, v, s)) if dim > span.dim() => {
                chosen.push(v);
                span = s;
            }
            _ => {
                while next < candidates.len() && span.contains(&candidates[next]) {
                    next += 1;
                }
                if next == candidates.len() {
                    break;
                }
                chosen.push(candidates[next].clone());
                span = m.generated_subspace(&chosen);
            }
        }
    }
    let mut i = chosen.len();
    while i > 0 {
        i -= 1;
        let mut others = chosen.clone();
        others.remove(i);
        if m.generated_subspace(&others).dim() == target_dim {
            chosen = others;
        }
    }
    chosen
}

/// Hom_Λ(C_n, M) for a materialized complex, each space given by a basis of
/// the solutions of the Λ-linearity equations; a map X: C_n → M is stored
/// row-major. Returns the cochain complex and the bases.
pub fn hom_complex_general<K: Field>(c: &ChainComplex<K>, m: &Module<K>) -> (CochainComplex<K>, Vec<Vec<Vec<K::Elem>>>) {
    let f = m.field();
    let dm = m.dim();
    let ring = c.ring();
    let mut bases = Vec::new();
    let mut frees = Vec::new();
    for n in 0..c.len() {
        let cn = c.term(n).dim();
        let eqs: Vec<Matrix<K>> = (0..ring.dim())
            .map(|i| {
                Matrix::identity(f, dm)
                    .kronecker(&c.term(n).action(i).transpose())
                    .sub(&m.action(i).kronecker(&Matrix::identity(f, cn)))
            })
            .collect();
        let refs: Vec<&Matrix<K>> = eqs.iter().collect();
        let an = Matrix::vstack(f, dm * cn, &refs).rref_analyze();
        let mut is_pivot = vec![false; dm * cn];
        for &p in &an.pivots {
            is_pivot[p] = true;
        }
        frees.push((0..dm * cn).filter(|&j| !is_pivot[j]).collect::<Vec<_>>());
        bases.push(an.kernel);
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut diffs = Vec::new();
    for n in 0..c.len() - 1 {
        let d = c.diff(n + 1);
        let cn = c.term(n).dim();
        let cols: Vec<Vec<K::Elem>> = bases[n]
            .iter()
            .map(|v| {
                let x = Matrix::from_vec(f, dm, cn, v.clone());
                let y = x.mul(d);
                frees[n + 1].iter().map(|&j| y.data()[j].clone()).collect()
            })
            .collect();
        diffs.push(Matrix::from_cols(f, dims[n + 1], &cols));
    }
    (CochainComplex::new(f, dims, diffs).expect("consistent shapes"), bases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_numbers;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;

    #[test]
    fn tuple_roundtrip() {
        for i in 0..27 {
            assert_eq!(tuple_index(&tuple_of(i, 3, 3), 3), i);
        }
    }

    #[test]
    fn bar_resolution_of_dual_numbers() {
        let a = dual_numbers(&Rationals);
        let ev = Arc::new(a.enveloping());
        let bar = FreeResolution::bar(&a, &ev, 3);
        for n in 0..=3 {
            assert_eq!(bar.module(n).dim(), 2usize.pow(n as u32 + 2));
        }
        assert!(bar.check().ok(), "{}", bar.check());
    }

    #[test]
    fn trivial_bar_over_group_algebra() {
        let f = PrimeField::new(2).unwrap();
        let kz2 = Arc::new(dual_numbers(&f).change_basis(&Matrix::from_vec(&f, 2, 2, vec![1, 1, 0, 1])).unwrap());
        // basis 1, g with g = 1 + x, ε(g) = 1
        let res = FreeResolution::trivial_bar(&kz2, &[1, 1], 3).unwrap();
        assert!(res.check().ok());
        assert_eq!(res.module(2).dim(), 8);
    }

    #[test]
    fn greedy_resolution_is_exact_and_small() {
        let f = PrimeField::new(3).unwrap();
        let a = dual_numbers(&f);
        let ev = Arc::new(a.enveloping());
        let p = FreeResolution::greedy(&ev, &regular_bimodule(&a, &ev), 4);
        assert!(p.check().ok());
        assert!(p.ranks().iter().all(|&r| r <= 2), "{:?}", p.ranks());
    }

    #[test]
    fn two_lifts_are_homotopic() {
        let f = PrimeField::new(2).unwrap();
        let a = dual_numbers(&f);
        let ev = Arc::new(a.enveloping());
        let bar = FreeResolution::bar(&a, &ev, 3);
        let cc = bar.to_chain_complex();
        let id = Matrix::identity(&f, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let l1 = bar.lift(&cc, &id, 3, None).unwrap();
        let l2 = bar.lift(&cc, &id, 3, Some(&mut rng)).unwrap();
        assert_ne!(l1, l2);
        for n in 1..=3 {
            let lhs = cc.diff(n).mul(&bar.linear_map(&l2[n], cc.term(n)));
            let rhs = bar.linear_map(&l2[n - 1], cc.term(n - 1)).mul(&bar.diff_matrix(n));
            assert_eq!(lhs, rhs);
        }
        assert!(bar.homotopy(&cc, &l1, &l2).is_ok());
    }

    #[test]
    fn general_hom_complex_matches_free_form() {
        let a = dual_numbers(&Rationals);
        let ev = Arc::new(a.enveloping());
        let bar = FreeResolution::bar(&a, &ev, 3);
        let m = regular_bimodule(&a, &ev);
        let (general, _) = hom_complex_general(&bar.to_chain_complex(), &m);
        let free = bar.hom_complex(&m);
        assert_eq!(general.dims(), free.dims());
        assert!(general.check().ok());
        for n in 0..3 {
            assert_eq!(general.cohomology(n).unwrap().dim(), free.cohomology(n).unwrap().dim());
        }
    }
}
