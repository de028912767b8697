//! Admissible n-extensions 0 → Y → E_{n−1} → … → E_0 → X → 0 of modules,
//! their morphisms, Baer sum, scalar actions and Yoneda splice, and the
//! passage between extensions and cocycles of a free resolution.

use std::sync::Arc;

use crate::algebra::{Algebra, Report};
use crate::complex::ChainComplex;
use crate::error::{HhError, Result};
use crate::field::Field;
use crate::hochschild::{Cochain, Hochschild};
use crate::matrix::{Matrix, Subspace};
use crate::module::{pullback, regular_bimodule, Module};
use crate::resolution::FreeResolution;

/// `maps[0] = e_0: E_0 → X`, `maps[i] = e_i: E_i → E_{i−1}` and
/// `maps[n] = e_n: Y → E_{n−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extension<K: Field> {
    ring: Arc<Algebra<K>>,
    y: Module<K>,
    x: Module<K>,
    middle: Vec<Module<K>>,
    maps: Vec<Matrix<K>>,
}

/// Right inverse of a surjection, as a plain linear map.
pub(crate) fn section<K: Field>(proj: &Matrix<K>) -> Matrix<K> {
    let id = Matrix::identity(proj.field(), proj.rows());
    proj.solve_many(&id).ok().flatten().expect("projection is surjective")
}

/// The unique g with inc·g = v for an injective `inc`.
pub(crate) fn factor_through<K: Field>(inc: &Matrix<K>, v: &Matrix<K>) -> Matrix<K> {
    inc.solve_many(v).ok().flatten().expect("map factors through the subobject")
}

pub fn same_module<K: Field>(a: &Module<K>, b: &Module<K>) -> bool {
    a.dim() == b.dim() && a.actions() == b.actions()
}

impl<K: Field> Extension<K> {
    /// Checks shapes only; see [`Extension::check_admissible`].
    pub fn new(ring: &Arc<Algebra<K>>, y: Module<K>, middle: Vec<Module<K>>, x: Module<K>, maps: Vec<Matrix<K>>) -> Result<Self> {
        let n = middle.len();
        if n == 0 {
            return Err(HhError::Shape("an extension needs degree at least 1".into()));
        }
        if maps.len() != n + 1 {
            return Err(HhError::Shape(format!("degree {n} needs {} maps, got {}", n + 1, maps.len())));
        }
        let dims: Vec<usize> = std::iter::once(x.dim()).chain(middle.iter().map(|m| m.dim())).chain(std::iter::once(y.dim())).collect();
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i] || m.cols() != dims[i + 1] {
                return Err(HhError::Shape(format!("e_{i} is {}x{}, expected {}x{}", m.rows(), m.cols(), dims[i], dims[i + 1])));
            }
        }
        Ok(Extension { ring: ring.clone(), y, x, middle, maps })
    }

    pub fn ring(&self) -> &Arc<Algebra<K>> {
        &self.ring
    }
    pub fn field(&self) -> &K {
        self.ring.field()
    }
    pub fn degree(&self) -> usize {
        self.middle.len()
    }
    pub fn y(&self) -> &Module<K> {
        &self.y
    }
    pub fn x(&self) -> &Module<K> {
        &self.x
    }
    /// E_i for 0 ≤ i < n.
    pub fn term(&self, i: usize) -> &Module<K> {
        &self.middle[i]
    }
    pub fn terms(&self) -> &[Module<K>] {
        &self.middle
    }
    /// e_i for 0 ≤ i ≤ n.
    pub fn map(&self, i: usize) -> &Matrix<K> {
        &self.maps[i]
    }
    pub fn maps(&self) -> &[Matrix<K>] {
        &self.maps
    }

    /// Module at position i, where −1 is X and n is Y.
    pub fn position(&self, i: isize) -> &Module<K> {
        if i < 0 {
            &self.x
        } else if i as usize == self.degree() {
            &self.y
        } else {
            &self.middle[i as usize]
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.middle.iter().map(|m| m.dim()).collect()
    }

    /// Linearity, composites zero, exactness, e_n injective and e_0 surjective.
    pub fn check_admissible(&self) -> Report {
        let mut r = Report::default();
        let n = self.degree();
        for i in -1..=n as isize {
            r.merge(&format!("module at {i}"), self.position(i).check());
        }
        for i in 0..=n {
            if !self.position(i as isize).is_hom_to(self.position(i as isize - 1), &self.maps[i]) {
                r.fail(format!("e_{i} is not linear"));
            }
        }
        for i in 0..n {
            if !self.maps[i].mul(&self.maps[i + 1]).is_zero() {
                r.fail(format!("e_{}e_{} ≠ 0", i, i + 1));
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        if ranks[0] != self.x.dim() {
            r.fail("e_0 is not surjective");
        }
        if ranks[n] != self.y.dim() {
            r.fail(format!("e_{n} is not injective"));
        }
        for i in 0..n {
            if self.middle[i].dim() - ranks[i] != ranks[i + 1] {
                r.fail(format!("not exact at E_{i}"));
            }
        }
        r
    }

    /// The extension as an augmented complex E_0, …, E_{n−1}, Y over X.
    pub fn to_chain_complex(&self) -> ChainComplex<K> {
        let mut terms = self.middle.clone();
        terms.push(self.y.clone());
        let diffs = self.maps[1..].to_vec();
        ChainComplex::new(&self.ring, terms, diffs, Some((self.x.clone(), self.maps[0].clone()))).expect("consistent shapes")
    }

    fn same_ends(&self, other: &Extension<K>) -> Result<()> {
        if self.degree() != other.degree() || !same_module(&self.x, &other.x) || !same_module(&self.y, &other.y) {
            return Err(HhError::Shape("extensions differ in degree or end modules".into()));
        }
        Ok(())
    }
}

/// σ_n(X, Y): the split sequence for n = 1, and Y = Y → 0 → … → 0 → X = X
/// otherwise.
pub fn trivial_extension<K: Field>(ring: &Arc<Algebra<K>>, x: &Module<K>, y: &Module<K>, n: usize) -> Result<Extension<K>> {
    let f = ring.field();
    let (dx, dy) = (x.dim(), y.dim());
    match n {
        0 => Err(HhError::Shape("σ_n needs n ≥ 1".into())),
        1 => {
            let e = Module::direct_sum(ring, &[y, x]);
            let mut inc = Matrix::zeros(f, dy + dx, dy);
            inc.set_block(0, 0, &Matrix::identity(f, dy));
            let mut proj = Matrix::zeros(f, dx, dy + dx);
            proj.set_block(0, dy, &Matrix::identity(f, dx));
            Extension::new(ring, y.clone(), vec![e], x.clone(), vec![proj, inc])
        }
        _ => {
            let zero = Module::zero(ring);
            let mut middle = vec![x.clone()];
            middle.extend((1..n - 1).map(|_| zero.clone()));
            middle.push(y.clone());
            let dims: Vec<usize> = std::iter::once(dx).chain(middle.iter().map(|m| m.dim())).chain(std::iter::once(dy)).collect();
            let mut maps: Vec<Matrix<K>> = (0..=n).map(|i| Matrix::zeros(f, dims[i], dims[i + 1])).collect();
            maps[0] = Matrix::identity(f, dx);
            maps[n] = Matrix::identity(f, dy);
            Extension::new(ring, y.clone(), middle, x.clone(), maps)
        }
    }
}

/// A morphism of extensions with identity end maps; `maps[i]: E_i → E'_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtMorphism<K: Field> {
    pub source: Extension<K>,
    pub target: Extension<K>,
    pub maps: Vec<Matrix<K>>,
}

impl<K: Field> ExtMorphism<K> {
    pub fn new(source: Extension<K>, target: Extension<K>, maps: Vec<Matrix<K>>) -> Result<Self> {
        source.same_ends(&target)?;
        if maps.len() != source.degree() {
            return Err(HhError::Shape("one component per middle term".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != target.term(i).dim() || m.cols() != source.term(i).dim() {
                return Err(HhError::Shape(format!("component {i} has the wrong shape")));
            }
        }
        Ok(ExtMorphism { source, target, maps })
    }

    pub fn identity(e: &Extension<K>) -> Self {
        let f = e.field();
        let maps = e.terms().iter().map(|m| Matrix::identity(f, m.dim())).collect();
        ExtMorphism { source: e.clone(), target: e.clone(), maps }
    }

    pub fn degree(&self) -> usize {
        self.maps.len()
    }

    /// Linearity of each component and every commuting square, including
    /// the identity ends.
    pub fn check(&self) -> Report {
        let mut r = Report::default();
        let (s, t) = (&self.source, &self.target);
        let n = self.degree();
        for i in 0..n {
            if !s.term(i).is_hom_to(t.term(i), &self.maps[i]) {
                r.fail(format!("α_{i} is not linear"));
            }
        }
        if t.map(0).mul(&self.maps[0]) != *s.map(0) {
            r.fail("square at X does not commute");
        }
        for i in 1..n {
            if self.maps[i - 1].mul(s.map(i)) != t.map(i).mul(&self.maps[i]) {
                r.fail(format!("square at e_{i} does not commute"));
            }
        }
        if self.maps[n - 1].mul(s.map(n)) != *t.map(n) {
            r.fail("square at Y does not commute");
        }
        r
    }

    /// self followed by `next`.
    pub fn then(&self, next: &ExtMorphism<K>) -> Result<ExtMorphism<K>> {
        if self.target != next.source {
            return Err(HhError::Shape("morphisms are not composable".into()));
        }
        let maps = self.maps.iter().zip(&next.maps).map(|(a, b)| b.mul(a)).collect();
        Ok(ExtMorphism { source: self.source.clone(), target: next.target.clone(), maps })
    }
}

/// Pulls an extension back along f: X' → X at degree 0. Returns ξ ⊣ f and,
/// when X' = X, nothing else; the projection P → E_0 is the second value.
pub fn pull_back_along<K: Field>(xi: &Extension<K>, x_new: &Module<K>, fmap: &Matrix<K>) -> Result<(Extension<K>, Matrix<K>)> {
    if fmap.rows() != xi.x().dim() || fmap.cols() != x_new.dim() {
        return Err(HhError::Dimension("f does not map into X".into()));
    }
    let (p, to_e0, to_x) = pullback(xi.term(0), x_new, xi.map(0), fmap);
    let inc = Matrix::vstack(xi.field(), p.dim(), &[&to_e0, &to_x]);
    let mut middle = xi.terms().to_vec();
    middle[0] = p;
    let mut maps = xi.maps().to_vec();
    maps[0] = to_x;
    let e1 = xi.map(1);
    let zero = Matrix::zeros(xi.field(), x_new.dim(), e1.cols());
    maps[1] = factor_through(&inc, &Matrix::vstack(xi.field(), e1.cols(), &[e1, &zero]));
    Ok((Extension::new(xi.ring(), xi.y().clone(), middle, x_new.clone(), maps)?, to_e0))
}

/// Pushes an extension out along g: Y → Y' at degree n−1. Returns g ⊢ ξ and
/// the map E_{n−1} → Q.
pub fn push_out_along<K: Field>(xi: &Extension<K>, y_new: &Module<K>, gmap: &Matrix<K>) -> Result<(Extension<K>, Matrix<K>)> {
    let f = xi.field();
    let n = xi.degree();
    if gmap.cols() != xi.y().dim() || gmap.rows() != y_new.dim() {
        return Err(HhError::Dimension("g does not map out of Y".into()));
    }
    let top = xi.term(n - 1);
    let sum = Module::direct_sum(xi.ring(), &[top, y_new]);
    let rel = Matrix::vstack(f, xi.y().dim(), &[xi.map(n), &gmap.neg()]);
    let (q, proj) = sum.cokernel(&rel);
    let from_e = proj.block(0, 0, q.dim(), top.dim());
    let from_y = proj.block(0, top.dim(), q.dim(), y_new.dim());
    let s = section(&proj);
    let below = xi.map(n - 1);
    let down = Matrix::hstack(f, below.rows(), &[below, &Matrix::zeros(f, below.rows(), y_new.dim())]).mul(&s);
    let mut middle = xi.terms().to_vec();
    middle[n - 1] = q;
    let mut maps = xi.maps().to_vec();
    maps[n - 1] = down;
    maps[n] = from_y;
    Ok((Extension::new(xi.ring(), y_new.clone(), middle, xi.x().clone(), maps)?, from_e))
}

/// ξ ⊣ f for an endomorphism f of X.
pub fn act_right<K: Field>(xi: &Extension<K>, fmap: &Matrix<K>) -> Result<Extension<K>> {
    Ok(pull_back_along(xi, &xi.x().clone(), fmap)?.0)
}

/// g ⊢ ξ for an endomorphism g of Y.
pub fn act_left<K: Field>(gmap: &Matrix<K>, xi: &Extension<K>) -> Result<Extension<K>> {
    Ok(push_out_along(xi, &xi.y().clone(), gmap)?.0)
}

/// −ξ := (−id_Y) ⊢ ξ.
pub fn negate<K: Field>(xi: &Extension<K>) -> Result<Extension<K>> {
    let id = Matrix::identity(xi.field(), xi.y().dim());
    act_left(&id.neg(), xi)
}

/// ξ ⊞ ζ together with the inclusion P → E_0 ⊕ F_0 of the degree-0
/// pullback and the projection onto the top term (from D_{n−1}, or from P
/// when n = 1).
pub(crate) struct BaerParts<K: Field> {
    pub ext: Extension<K>,
    pub inc_p: Matrix<K>,
    pub proj: Matrix<K>,
}

/// ξ ⊞ ζ: pullback over X at degree 0, direct sums in between and pushout
/// of the antidiagonal Y at degree n−1.
pub fn baer_sum<K: Field>(xi: &Extension<K>, zeta: &Extension<K>) -> Result<Extension<K>> {
    Ok(baer_parts(xi, zeta)?.ext)
}

pub(crate) fn baer_parts<K: Field>(xi: &Extension<K>, zeta: &Extension<K>) -> Result<BaerParts<K>> {
    xi.same_ends(zeta)?;
    let f = xi.field();
    let ring = xi.ring();
    let n = xi.degree();
    let sums: Vec<Module<K>> = (0..n).map(|i| Module::direct_sum(ring, &[xi.term(i), zeta.term(i)])).collect();
    let diag = |i: usize| Matrix::block_diag(f, &[xi.map(i), zeta.map(i)]);
    let map0 = Matrix::hstack(f, xi.x().dim(), &[xi.map(0), &zeta.map(0).neg()]);
    let (p, inc_p) = sums[0].kernel(&map0);
    // Y → D_{n−1}, y ↦ (e_n y, −f_n y)
    let anti = Matrix::vstack(f, xi.y().dim(), &[xi.map(n), &zeta.map(n).neg()]);
    let with_y = Matrix::vstack(f, xi.y().dim(), &[xi.map(n), &Matrix::zeros(f, zeta.term(n - 1).dim(), xi.y().dim())]);
    let mut middle = sums.clone();
    middle[0] = p.clone();
    let mut maps: Vec<Matrix<K>> = (0..=n).map(|i| if i == 0 || i == n { Matrix::zeros(f, 0, 0) } else { diag(i) }).collect();
    maps[0] = Matrix::hstack(f, xi.x().dim(), &[xi.map(0), &Matrix::zeros(f, xi.x().dim(), zeta.term(0).dim())]).mul(&inc_p);
    if n >= 2 {
        maps[1] = factor_through(&inc_p, &diag(1));
    }
    // the top term, as a quotient of D_{n−1} (or of P when n = 1)
    let (top_src, anti, with_y, lift_down): (Module<K>, Matrix<K>, Matrix<K>, Option<Matrix<K>>) = if n == 1 {
        (p.clone(), factor_through(&inc_p, &anti), factor_through(&inc_p, &with_y), None)
    } else {
        (sums[n - 1].clone(), anti, with_y, Some(maps[n - 1].clone()))
    };
    let (q, proj) = top_src.cokernel(&anti);
    let s = section(&proj);
    middle[n - 1] = q;
    maps[n] = proj.mul(&with_y);
    maps[n - 1] = match lift_down {
        Some(m) => m.mul(&s),
        None => maps[0].mul(&s),
    };
    let ext = Extension::new(ring, xi.y().clone(), middle, xi.x().clone(), maps)?;
    Ok(BaerParts { ext, inc_p, proj })
}

/// φ ⊞ ζ: (χ ⊞ ζ) → (χ' ⊞ ζ) for a morphism φ: χ → χ'.
pub fn baer_morphism<K: Field>(phi: &ExtMorphism<K>, zeta: &Extension<K>) -> Result<ExtMorphism<K>> {
    let f = zeta.field();
    let n = phi.degree();
    let a = baer_parts(&phi.source, zeta)?;
    let b = baer_parts(&phi.target, zeta)?;
    let comp = |i: usize| Matrix::block_diag(f, &[&phi.maps[i], &Matrix::identity(f, zeta.term(i).dim())]);
    let at_p = factor_through(&b.inc_p, &comp(0).mul(&a.inc_p));
    let maps = if n == 1 {
        vec![b.proj.mul(&at_p).mul(&section(&a.proj))]
    } else {
        let mut maps = vec![at_p];
        maps.extend((1..n - 1).map(comp));
        maps.push(b.proj.mul(&comp(n - 1)).mul(&section(&a.proj)));
        maps
    };
    ExtMorphism::new(a.ext, b.ext, maps)
}

/// Yoneda splice of ξ: 0 → C → … → B → 0 and ζ: 0 → B → … → A → 0 into an
/// (m+n)-extension of A by C, joined by f_n ∘ e_0.
pub fn splice<K: Field>(xi: &Extension<K>, zeta: &Extension<K>) -> Result<Extension<K>> {
    if !same_module(xi.x(), zeta.y()) {
        return Err(HhError::Shape("ends do not match for splicing".into()));
    }
    let (m, n) = (xi.degree(), zeta.degree());
    let mut middle = zeta.terms().to_vec();
    middle.extend_from_slice(xi.terms());
    let mut maps = zeta.maps()[..n].to_vec();
    maps.push(zeta.map(n).mul(xi.map(0)));
    maps.extend_from_slice(&xi.maps()[1..=m]);
    Extension::new(xi.ring(), xi.y().clone(), middle, zeta.x().clone(), maps)
}

/// Decides classes of n-extensions of X by Y through a free resolution of X.
pub struct ExtClassifier<K: Field> {
    resolution: FreeResolution<K>,
    y: Module<K>,
    hom: crate::complex::CochainComplex<K>,
    boundaries: Vec<std::sync::OnceLock<Subspace<K>>>,
}

impl<K: Field> ExtClassifier<K> {
    /// `resolution` must reach degree n+1 for the n-extensions classified.
    pub fn new(resolution: FreeResolution<K>, y: &Module<K>) -> Self {
        let hom = resolution.hom_complex(y);
        let top = resolution.top();
        ExtClassifier { resolution, y: y.clone(), hom, boundaries: (0..=top).map(|_| std::sync::OnceLock::new()).collect() }
    }

    pub fn resolution(&self) -> &FreeResolution<K> {
        &self.resolution
    }
    pub fn hom_complex(&self) -> &crate::complex::CochainComplex<K> {
        &self.hom
    }

    /// φ_n of a lift of id_X, as generator values in Y^{r_n}.
    pub fn cocycle(&self, xi: &Extension<K>) -> Result<Vec<K::Elem>> {
        let n = xi.degree();
        if !same_module(xi.x(), self.resolution.target()) || !same_module(xi.y(), &self.y) {
            return Err(HhError::Shape("extension ends differ from the classifier's".into()));
        }
        let id = Matrix::identity(xi.field(), xi.x().dim());
        let lift = self.resolution.lift(&xi.to_chain_complex(), &id, n, None)?;
        Ok(lift[n].columns().concat())
    }

    pub fn is_coboundary(&self, n: usize, v: &[K::Elem]) -> bool {
        let b = self.boundaries[n].get_or_init(|| {
            if n == 0 {
                Subspace::zero(self.y.field(), self.hom.dims()[0])
            } else {
                Subspace::column_space(self.hom.diff(n - 1))
            }
        });
        b.contains(v)
    }

    pub fn is_trivial(&self, xi: &Extension<K>) -> Result<bool> {
        Ok(self.is_coboundary(xi.degree(), &self.cocycle(xi)?))
    }

    pub fn classes_equal(&self, xi: &Extension<K>, zeta: &Extension<K>) -> Result<bool> {
        if xi.degree() != zeta.degree() {
            return Ok(false);
        }
        let f = xi.field();
        let a = self.cocycle(xi)?;
        let b = self.cocycle(zeta)?;
        let diff: Vec<K::Elem> = a.iter().zip(&b).map(|(x, y)| f.sub(x, y)).collect();
        Ok(self.is_coboundary(xi.degree(), &diff))
    }

    /// κ(φ): the pushout of the truncated resolution along a cocycle
    /// φ: P_n → Y, 0 → Y → coker(φ ⊕ −d_n) → P_{n−2} → … → P_0 → X → 0.
    pub fn cocycle_to_extension(&self, n: usize, phi: &[K::Elem]) -> Result<Extension<K>> {
        let r = &self.resolution;
        let f = self.y.field();
        let ring = r.ring();
        if n == 0 || n > r.top() {
            return Err(HhError::OutOfRange(format!("degree {n} outside 1..={}", r.top())));
        }
        if phi.len() != self.hom.dims()[n] {
            return Err(HhError::Dimension("φ has the wrong length".into()));
        }
        if n < self.hom.top() {
            let dphi = self.hom.diff(n).apply(phi);
            if dphi.iter().any(|c| !f.is_zero(c)) {
                return Err(HhError::NotCocycle(n));
            }
        }
        let cols: Vec<Vec<K::Elem>> = phi.chunks(self.y.dim().max(1)).map(|c| c.to_vec()).collect();
        let values = Matrix::from_cols(f, self.y.dim(), &cols[..r.rank(n)]);
        let phi_map = r.linear_map(&values, &self.y);
        let pn1 = r.module(n - 1);
        let dn = r.diff_matrix(n);
        let sum = Module::direct_sum(ring, &[&self.y, &pn1]);
        let rel = Matrix::vstack(f, dn.cols(), &[&phi_map, &dn.neg()]);
        let (q, proj) = sum.cokernel(&rel);
        let s = section(&proj);
        let y_to_q = proj.block(0, 0, q.dim(), self.y.dim());
        let below = if n == 1 { r.augmentation_matrix() } else { r.diff_matrix(n - 1) };
        let down = Matrix::hstack(f, below.rows(), &[&Matrix::zeros(f, below.rows(), self.y.dim()), &below]).mul(&s);
        let mut middle: Vec<Module<K>> = (0..n - 1).map(|i| r.module(i)).collect();
        middle.push(q);
        let mut maps = vec![if n == 1 { down.clone() } else { r.augmentation_matrix() }];
        for i in 1..n - 1 {
            maps.push(r.diff_matrix(i));
        }
        if n >= 2 {
            maps.push(down);
        }
        maps.push(y_to_q);
        Extension::new(ring, self.y.clone(), middle, r.target().clone(), maps)
    }
}

/// Classifier for extensions of A by A over A^ev, using the bar resolution
/// so that cocycles are Hochschild cochains.
pub struct HochschildExt<K: Field> {
    pub algebra: Arc<Algebra<K>>,
    pub ev: Arc<Algebra<K>>,
    pub classifier: ExtClassifier<K>,
    pub hochschild: Hochschild<K>,
}

impl<K: Field> HochschildExt<K> {
    /// Handles extensions of degree ≤ `top`.
    pub fn new(a: &Arc<Algebra<K>>, top: usize) -> Self {
        let ev = Arc::new(a.enveloping());
        let bar = FreeResolution::bar(a, &ev, top + 1);
        let reg = regular_bimodule(a, &ev);
        HochschildExt { algebra: a.clone(), ev: ev.clone(), classifier: ExtClassifier::new(bar, &reg), hochschild: Hochschild::new(a.clone()) }
    }

    pub fn bimodule(&self) -> &Module<K> {
        self.classifier.resolution().target()
    }

    pub fn cochain(&self, xi: &Extension<K>) -> Result<Cochain<K::Elem>> {
        Ok(Cochain { degree: xi.degree(), values: self.classifier.cocycle(xi)? })
    }

    pub fn extension(&self, c: &Cochain<K::Elem>) -> Result<Extension<K>> {
        self.classifier.cocycle_to_extension(c.degree, &c.values)
    }

    pub fn trivial(&self, n: usize) -> Result<Extension<K>> {
        trivial_extension(&self.ev, self.bimodule(), self.bimodule(), n)
    }

    pub fn classes_equal(&self, xi: &Extension<K>, zeta: &Extension<K>) -> Result<bool> {
        self.classifier.classes_equal(xi, zeta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::dual_numbers;
    use crate::field::{PrimeField, Rationals};
    use crate::hochschild::{add, scale};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hx<K: Field>(f: &K) -> HochschildExt<K> {
        HochschildExt::new(&Arc::new(dual_numbers(f)), 3)
    }

    #[test]
    fn trivial_extensions_are_admissible_and_zero() {
        let h = hx(&PrimeField::new(2).unwrap());
        for n in 1..=3 {
            let s = h.trivial(n).unwrap();
            assert!(s.check_admissible().ok(), "{}", s.check_admissible());
            assert!(h.classifier.is_trivial(&s).unwrap());
        }
    }

    #[test]
    fn non_surjective_end_fails() {
        let h = hx(&Rationals);
        let s = h.trivial(1).unwrap();
        let mut maps = s.maps().to_vec();
        maps[0] = Matrix::zeros(&Rationals, 2, 4);
        let bad = Extension::new(s.ring(), s.y().clone(), s.terms().to_vec(), s.x().clone(), maps).unwrap();
        assert!(bad.check_admissible().failures.iter().any(|m| m.contains("surjective")));
    }

    #[test]
    fn roundtrip_and_additivity() {
        let f = PrimeField::new(3).unwrap();
        let h = hx(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=2 {
            let basis: Vec<_> = h.hochschild.basis_cochains(n).unwrap();
            let pick = |rng: &mut ChaCha8Rng| {
                let mut c = crate::hochschild::zero_cochain(&h.algebra, n);
                for b in &basis {
                    c = add(&f, &c, &scale(&f, &f.random(rng), b));
                }
                c
            };
            for _ in 0..4 {
                let (u, v) = (pick(&mut rng), pick(&mut rng));
                let (xu, xv) = (h.extension(&u).unwrap(), h.extension(&v).unwrap());
                assert!(xu.check_admissible().ok());
                assert!(h.hochschild.same_class(&h.cochain(&xu).unwrap(), &u).unwrap());
                let s = baer_sum(&xu, &xv).unwrap();
                assert!(s.check_admissible().ok(), "{}", s.check_admissible());
                assert!(h.hochschild.same_class(&h.cochain(&s).unwrap(), &add(&f, &u, &v)).unwrap());
                let neg = negate(&xu).unwrap();
                assert!(h.hochschild.same_class(&h.cochain(&neg).unwrap(), &scale(&f, &f.neg(&f.one()), &u)).unwrap());
                assert!(h.classifier.is_trivial(&baer_sum(&xu, &neg).unwrap()).unwrap());
                assert!(h.classes_equal(&baer_sum(&xu, &h.trivial(n).unwrap()).unwrap(), &xu).unwrap());
                let two = f.from_i64(2);
                let id = Matrix::identity(&f, 2).scale(&two);
                let r = act_right(&xu, &id).unwrap();
                let l = act_left(&id, &xu).unwrap();
                assert!(h.classes_equal(&r, &l).unwrap());
                assert!(h.hochschild.same_class(&h.cochain(&r).unwrap(), &scale(&f, &two, &u)).unwrap());
            }
        }
    }

    #[test]
    fn coboundary_shift_keeps_class() {
        let f = Rationals;
        let h = hx(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let z = &h.hochschild.basis_cochains(1).unwrap()[0];
        let psi = crate::hochschild::random_cochain(&h.algebra, 0, &mut rng);
        let shifted = add(&f, z, &crate::hochschild::hoch_diff(&h.algebra, &psi).unwrap());
        assert!(h.classes_equal(&h.extension(z).unwrap(), &h.extension(&shifted).unwrap()).unwrap());
        assert!(!h.classifier.is_trivial(&h.extension(z).unwrap()).unwrap());
    }

    #[test]
    fn splice_is_cup() {
        let f = PrimeField::new(2).unwrap();
        let h = hx(&f);
        let b1 = h.hochschild.basis_cochains(1).unwrap();
        for u in &b1 {
            for v in &b1 {
                let s = splice(&h.extension(u).unwrap(), &h.extension(v).unwrap()).unwrap();
                assert!(s.check_admissible().ok());
                let c = crate::hochschild::cup(&h.algebra, u, v).unwrap();
                assert!(h.hochschild.same_class(&h.cochain(&s).unwrap(), &c).unwrap());
            }
        }
    }
}
