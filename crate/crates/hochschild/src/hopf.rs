//! Bialgebras over a field, R-matrices, the ⊠_k product of modules, the
//! functor M ↦ M ⊠_k B into bimodules, and the induced embedding
//! H•(B, k) → HH•(B).

use std::sync::Arc;

use crate::algebra::{Algebra, Report};
use crate::complex::Cohomology;
use crate::error::{HhError, Result};
use crate::extension::{ExtClassifier, Extension, HochschildExt};
use crate::field::Field;
use crate::hochschild::{unit_cochain, Cochain};
use crate::matrix::Matrix;
use crate::module::{regular_bimodule, Module};
use crate::resolution::{trivial_module, FreeResolution};

/// B with Δ (column i is Δ(b_i) in the basis b_j ⊗ b_k at j·d + k), ε, an
/// optional antipode and an optional r ∈ B ⊗ B.
#[derive(Clone, Debug, PartialEq)]
pub struct Bialgebra<K: Field> {
    algebra: Arc<Algebra<K>>,
    comul: Matrix<K>,
    counit: Vec<K::Elem>,
    antipode: Option<Matrix<K>>,
    r: Option<Vec<K::Elem>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMode {
    Semi,
    Canonical,
}

/// Outcome of the R-matrix axioms, each reported on its own.
#[derive(Clone, Debug, Default)]
pub struct RReport {
    pub qt1: bool,
    pub qt2: bool,
    pub qt3: bool,
    /// ε(r₁ ε(r₂)) = 1
    pub counit_normalized: bool,
    /// ε(r₁ r₂) = 1
    pub product_normalized: bool,
    pub invertible: bool,
    pub failures: Vec<String>,
}

impl RReport {
    pub fn passes(&self, mode: RMode) -> bool {
        let axioms = self.qt1 && self.qt2 && self.qt3;
        match mode {
            RMode::Semi => axioms && self.counit_normalized,
            RMode::Canonical => axioms && self.invertible,
        }
    }
}

impl<K: Field> Bialgebra<K> {
    pub fn new(algebra: Arc<Algebra<K>>, comul: Matrix<K>, counit: Vec<K::Elem>, antipode: Option<Matrix<K>>, r: Option<Vec<K::Elem>>) -> Result<Self> {
        let d = algebra.dim();
        if comul.rows() != d * d || comul.cols() != d {
            return Err(HhError::Shape(format!("Δ must be {}x{d}", d * d)));
        }
        if counit.len() != d {
            return Err(HhError::Shape(format!("ε must have {d} entries")));
        }
        if let Some(s) = &antipode {
            if s.rows() != d || s.cols() != d {
                return Err(HhError::Shape(format!("S must be {d}x{d}")));
            }
        }
        if let Some(r) = &r {
            if r.len() != d * d {
                return Err(HhError::Shape(format!("r must have {} entries", d * d)));
            }
        }
        Ok(Bialgebra { algebra, comul, counit, antipode, r })
    }

    pub fn algebra(&self) -> &Arc<Algebra<K>> {
        &self.algebra
    }
    pub fn field(&self) -> &K {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn comul(&self) -> &Matrix<K> {
        &self.comul
    }
    pub fn counit(&self) -> &[K::Elem] {
        &self.counit
    }
    pub fn antipode(&self) -> Option<&Matrix<K>> {
        self.antipode.as_ref()
    }
    pub fn r_matrix(&self) -> Option<&[K::Elem]> {
        self.r.as_deref()
    }
    pub fn with_r(&self, r: Option<Vec<K::Elem>>) -> Self {
        Bialgebra { r, ..self.clone() }
    }

    fn delta(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        self.comul.apply(v)
    }

    fn eps(&self, v: &[K::Elem]) -> K::Elem {
        let f = self.field();
        v.iter().zip(&self.counit).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// Product in B^{⊗k} of coordinate vectors (basis index in base d).
    fn mul_power(&self, k: usize, u: &[K::Elem], v: &[K::Elem]) -> Vec<K::Elem> {
        let f = self.field();
        let d = self.dim();
        let n = d.pow(k as u32);
        let mut out = vec![f.zero(); n];
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let mut terms: Vec<(usize, K::Elem)> = vec![(0, f.mul(a, b))];
                let (mut x, mut y) = (i, j);
                let mut place = 1;
                for _ in 0..k {
                    let (xi, yi) = (x % d, y % d);
                    x /= d;
                    y /= d;
                    let prod = self.algebra.product_terms(xi, yi);
                    let mut next = Vec::with_capacity(terms.len() * prod.len());
                    for (idx, c) in &terms {
                        for (l, c2) in prod {
                            next.push((idx + l * place, f.mul(c, c2)));
                        }
                    }
                    terms = next;
                    place *= d;
                }
                for (idx, c) in terms {
                    out[idx] = f.add(&out[idx], &c);
                }
            }
        }
        out
    }

    fn unit_power(&self, k: usize) -> Vec<K::Elem> {
        let mut u = vec![self.field().one()];
        for _ in 0..k {
            u = kron_vec(self.field(), &u, self.algebra.unit());
        }
        u
    }

    /// Coassociativity, counit laws, Δ and ε multiplicative and unital, and
    /// the antipode identities when S is present.
    pub fn check(&self) -> Report {
        let mut rep = Report::default();
        let f = self.field();
        let d = self.dim();
        rep.merge("algebra", self.algebra.check());
        let id = Matrix::identity(f, d);
        let left = self.comul.kronecker(&id).mul(&self.comul);
        let right = id.kronecker(&self.comul).mul(&self.comul);
        if left != right {
            rep.fail("Δ is not coassociative");
        }
        let eps = Matrix::from_vec(f, 1, d, self.counit.clone());
        if eps.kronecker(&id).mul(&self.comul) != id || id.kronecker(&eps).mul(&self.comul) != id {
            rep.fail("ε is not a counit");
        }
        if self.delta(self.algebra.unit()) != self.unit_power(2) {
            rep.fail("Δ(1) ≠ 1⊗1");
        }
        if !f.is_one(&self.eps(self.algebra.unit())) {
            rep.fail("ε(1) ≠ 1");
        }
        let labels = self.algebra.labels();
        for i in 0..d {
            for j in 0..d {
                let (bi, bj) = (self.algebra.basis_vector(i), self.algebra.basis_vector(j));
                let prod = self.algebra.mul(&bi, &bj);
                if self.delta(&prod) != self.mul_power(2, &self.delta(&bi), &self.delta(&bj)) {
                    rep.fail(format!("Δ({}·{}) ≠ Δ({})Δ({})", labels[i], labels[j], labels[i], labels[j]));
                }
                if self.eps(&prod) != f.mul(&self.counit[i], &self.counit[j]) {
                    rep.fail(format!("ε({}·{}) ≠ ε({})ε({})", labels[i], labels[j], labels[i], labels[j]));
                }
            }
        }
        if let Some(s) = &self.antipode {
            for i in 0..d {
                let dl = self.comul.col(i);
                let mut a = vec![f.zero(); d];
                let mut b = vec![f.zero(); d];
                for (jk, c) in dl.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let (bj, bk) = (self.algebra.basis_vector(jk / d), self.algebra.basis_vector(jk % d));
                    f.axpy(&mut a, c, &self.algebra.mul(&s.apply(&bj), &bk));
                    f.axpy(&mut b, c, &self.algebra.mul(&bj, &s.apply(&bk)));
                }
                let want: Vec<K::Elem> = self.algebra.unit().iter().map(|u| f.mul(u, &self.counit[i])).collect();
                if a != want || b != want {
                    rep.fail(format!("antipode identity fails on {}", labels[i]));
                }
            }
        }
        rep
    }

    /// QT1–QT3, both counit normalizations and invertibility in B ⊗ B.
    pub fn check_r_matrix(&self, r: &[K::Elem]) -> RReport {
        let f = self.field();
        let d = self.dim();
        let mut out = RReport::default();
        if r.len() != d * d {
            out.failures.push(format!("r must have {} entries", d * d));
            return out;
        }
        out.qt1 = true;
        for i in 0..d {
            let db = self.comul.col(i);
            let flipped = flip_vec(f, &db, d, d);
            if self.mul_power(2, r, &db) != self.mul_power(2, &flipped, r) {
                out.qt1 = false;
                out.failures.push(format!("QT1 fails on {}", self.algebra.labels()[i]));
            }
        }
        let one = self.algebra.unit();
        let mut r13 = vec![f.zero(); d * d * d];
        let mut r23 = vec![f.zero(); d * d * d];
        let mut r12 = vec![f.zero(); d * d * d];
        for (jk, c) in r.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let (j, k) = (jk / d, jk % d);
            for (u, cu) in one.iter().enumerate() {
                let cc = f.mul(c, cu);
                if f.is_zero(&cc) {
                    continue;
                }
                let i13 = (j * d + u) * d + k;
                let i23 = (u * d + j) * d + k;
                let i12 = (j * d + k) * d + u;
                r13[i13] = f.add(&r13[i13], &cc);
                r23[i23] = f.add(&r23[i23], &cc);
                r12[i12] = f.add(&r12[i12], &cc);
            }
        }
        let id = Matrix::identity(f, d);
        let delta_left = self.comul.kronecker(&id).apply(r);
        let delta_right = id.kronecker(&self.comul).apply(r);
        out.qt2 = delta_left == self.mul_power(3, &r13, &r23);
        if !out.qt2 {
            out.failures.push("QT2 fails".into());
        }
        out.qt3 = delta_right == self.mul_power(3, &r13, &r12);
        if !out.qt3 {
            out.failures.push("QT3 fails".into());
        }
        let mut e1 = f.zero();
        let mut e2 = vec![f.zero(); d];
        for (jk, c) in r.iter().enumerate() {
            let (j, k) = (jk / d, jk % d);
            e1 = f.add(&e1, &f.mul(c, &f.mul(&self.counit[j], &self.counit[k])));
            let prod = self.algebra.mul(&self.algebra.basis_vector(j), &self.algebra.basis_vector(k));
            f.axpy(&mut e2, c, &prod);
        }
        out.counit_normalized = f.is_one(&e1);
        out.product_normalized = f.is_one(&self.eps(&e2));
        let cols: Vec<Vec<K::Elem>> = (0..d * d)
            .map(|b| {
                let mut e = vec![f.zero(); d * d];
                e[b] = f.one();
                self.mul_power(2, r, &e)
            })
            .collect();
        out.invertible = Matrix::from_cols(f, d * d, &cols).rank() == d * d;
        if !out.invertible {
            out.failures.push("r is not invertible in B⊗B".into());
        }
        out
    }

    /// The trivial module k.
    pub fn trivial(&self) -> Module<K> {
        trivial_module(&self.algebra, &self.counit).expect("counit has one entry per basis element")
    }

    /// M ⊠_k N with b acting through Δ(b).
    pub fn boxtimes(&self, m: &Module<K>, n: &Module<K>) -> Module<K> {
        let f = self.field();
        let d = self.dim();
        let action = (0..d)
            .map(|i| {
                let mut a = Matrix::zeros(f, m.dim() * n.dim(), m.dim() * n.dim());
                for (jk, c) in self.comul.col(i).iter().enumerate() {
                    if !f.is_zero(c) {
                        a = a.add(&m.action(jk / d).kronecker(n.action(jk % d)).scale(c));
                    }
                }
                a
            })
            .collect();
        Module::new(&self.algebra, m.dim() * n.dim(), action).expect("shapes agree")
    }

    /// γ_{M,N}(m ⊗ n) = τ(r·(m ⊗ n)).
    pub fn braiding(&self, m: &Module<K>, n: &Module<K>, r: &[K::Elem]) -> Matrix<K> {
        let f = self.field();
        let d = self.dim();
        let mut act = Matrix::zeros(f, m.dim() * n.dim(), m.dim() * n.dim());
        for (jk, c) in r.iter().enumerate() {
            if !f.is_zero(c) {
                act = act.add(&m.action(jk / d).kronecker(n.action(jk % d)).scale(c));
            }
        }
        flip(f, m.dim(), n.dim()).mul(&act)
    }

    /// L_B(M) = M ⊠_k B over B^ev: b acts on the left through Δ, and on the
    /// right by multiplication on the B factor.
    pub fn lb_module(&self, m: &Module<K>, ev: &Arc<Algebra<K>>) -> Result<Module<K>> {
        let f = self.field();
        let d = self.dim();
        if ev.dim() != d * d {
            return Err(HhError::Shape("ring is not the enveloping algebra of B".into()));
        }
        let im = Matrix::identity(f, m.dim());
        let lefts: Vec<Matrix<K>> = (0..d)
            .map(|i| {
                let mut a = Matrix::zeros(f, m.dim() * d, m.dim() * d);
                for (jk, c) in self.comul.col(i).iter().enumerate() {
                    if !f.is_zero(c) {
                        a = a.add(&m.action(jk / d).kronecker(&self.algebra.left_mul(jk % d)).scale(c));
                    }
                }
                a
            })
            .collect();
        let rights: Vec<Matrix<K>> = (0..d).map(|j| im.kronecker(&self.algebra.right_mul(j))).collect();
        let action = (0..d * d).map(|ij| lefts[ij / d].mul(&rights[ij % d])).collect();
        Module::new(ev, m.dim() * d, action)
    }

    /// L_B on a B-linear map.
    pub fn lb_map(&self, fmap: &Matrix<K>) -> Matrix<K> {
        fmap.kronecker(&Matrix::identity(self.field(), self.dim()))
    }

    /// L_B applied termwise to an extension of k by k, with L_B(k)
    /// identified with the regular bimodule B.
    pub fn lb_extension(&self, xi: &Extension<K>, ev: &Arc<Algebra<K>>) -> Result<Extension<K>> {
        let k = self.trivial();
        if xi.x() != &k || xi.y() != &k {
            return Err(HhError::Shape("L_B is applied to extensions of k by k".into()));
        }
        let reg = regular_bimodule(&self.algebra, ev);
        let middle = xi.terms().iter().map(|m| self.lb_module(m, ev)).collect::<Result<Vec<_>>>()?;
        let maps = xi.maps().iter().map(|e| self.lb_map(e)).collect();
        Extension::new(ev, reg.clone(), middle, reg, maps)
    }
}

fn kron_vec<K: Field>(f: &K, u: &[K::Elem], v: &[K::Elem]) -> Vec<K::Elem> {
    u.iter().flat_map(|a| v.iter().map(move |b| f.mul(a, b))).collect()
}

fn flip_vec<K: Field>(f: &K, v: &[K::Elem], dm: usize, dn: usize) -> Vec<K::Elem> {
    let mut out = vec![f.zero(); v.len()];
    for s in 0..dm {
        for t in 0..dn {
            out[t * dm + s] = v[s * dn + t].clone();
        }
    }
    out
}

/// τ: M ⊗ N → N ⊗ M.
pub fn flip<K: Field>(f: &K, dm: usize, dn: usize) -> Matrix<K> {
    let mut out = Matrix::zeros(f, dm * dn, dm * dn);
    for s in 0..dm {
        for t in 0..dn {
            out.set(t * dm + s, s * dn + t, f.one());
        }
    }
    out
}

/// The group algebra of a finite group given by its multiplication table,
/// with Δ(g) = g ⊗ g, ε(g) = 1, S(g) = g⁻¹ and r = 1 ⊗ 1.
pub fn group_algebra<K: Field>(f: &K, table: &[Vec<usize>]) -> Result<Bialgebra<K>> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
        return Err(HhError::Schema("group table must be a square table of indices".into()));
    }
    for row in table {
        let mut seen = vec![false; n];
        for &x in row {
            seen[x] = true;
        }
        if seen.contains(&false) {
            return Err(HhError::Axiom("group table is not a Latin square".into()));
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| HhError::Axiom("group table has no identity".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(HhError::Axiom("group table is not associative".into()));
                }
            }
        }
    }
    let labels = (0..n).map(|g| if g == e { "e".to_string() } else { format!("g{g}") }).collect();
    let mut triples = Vec::new();
    for (a, row) in table.iter().enumerate() {
        for (b, &c) in row.iter().enumerate() {
            triples.push((a, b, c, f.one()));
        }
    }
    let mut unit = vec![f.zero(); n];
    unit[e] = f.one();
    let alg = Arc::new(Algebra::from_triples(f, labels, &triples, unit.clone())?);
    let comul = Matrix::from_fn(f, n * n, n, |jk, i| if jk == i * n + i { f.one() } else { f.zero() });
    let inv: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| table[g][h] == e).expect("Latin square")).collect();
    let antipode = Matrix::from_fn(f, n, n, |j, i| if inv[i] == j { f.one() } else { f.zero() });
    let r = kron_vec(f, &unit, &unit);
    Bialgebra::new(alg, comul, vec![f.one(); n], Some(antipode), Some(r))
}

/// k[Z_n] with generator g.
pub fn cyclic_group<K: Field>(f: &K, n: usize) -> Result<Bialgebra<K>> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let mut b = group_algebra(f, &table)?;
    let labels: Vec<String> = (0..n).map(|i| match i {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{i}"),
    }).collect();
    b.algebra = Arc::new(Algebra::new(f, labels, b.algebra.structure_constants().to_vec(), b.algebra.unit().to_vec())?);
    Ok(b)
}

/// The Taft algebra k⟨g, x⟩/(g^N − 1, x^N, xg − ζgx) with basis g^i x^j at
/// i + N·j, Δ(g) = g⊗g, Δ(x) = x⊗1 + g⊗x. For N = 2 and `alpha` given,
/// r_α is attached (2 must be invertible).
pub fn taft<K: Field>(f: &K, n: usize, zeta: &K::Elem, alpha: Option<&K::Elem>) -> Result<Bialgebra<K>> {
    if n < 2 {
        return Err(HhError::Axiom("Taft algebras need N ≥ 2".into()));
    }
    let pow = |e: &K::Elem, k: usize| (0..k).fold(f.one(), |acc, _| f.mul(&acc, e));
    if f.is_one(zeta) || !f.is_one(&pow(zeta, n)) {
        return Err(HhError::Axiom("ζ must be an N-th root of unity different from 1".into()));
    }
    let d = n * n;
    let idx = |i: usize, j: usize| (i % n) + n * j;
    let mut triples = Vec::new();
    for j in 0..n {
        for i in 0..n {
            for l in 0..n {
                for k in 0..n {
                    // g^i x^j · g^k x^l = ζ^{jk} g^{i+k} x^{j+l}
                    if j + l < n {
                        triples.push((idx(i, j), idx(k, l), idx(i + k, j + l), pow(zeta, j * k)));
                    }
                }
            }
        }
    }
    let labels = (0..d)
        .map(|b| {
            let (i, j) = (b % n, b / n);
            let g = match i {
                0 => String::new(),
                1 => "g".into(),
                _ => format!("g^{i}"),
            };
            let x = match j {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{j}"),
            };
            if i == 0 && j == 0 {
                "1".into()
            } else {
                g + &x
            }
        })
        .collect();
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    let alg = Arc::new(Algebra::from_triples(f, labels, &triples, unit.clone())?);
    let e = |b: usize| alg.basis_vector(b);
    let (g, x) = (e(idx(1, 0)), e(idx(0, 1)));
    let dg = kron_vec(f, &g, &g);
    let mut dx = kron_vec(f, &x, &unit);
    f.axpy(&mut dx, &f.one(), &kron_vec(f, &g, &x));
    let ginv = e(idx(n - 1, 0));
    let sg = ginv.clone();
    let sx: Vec<K::Elem> = alg.mul(&ginv, &x).iter().map(|c| f.neg(c)).collect();
    let tmp = Bialgebra::new(alg.clone(), Matrix::zeros(f, d * d, d), vec![f.zero(); d], None, None)?;
    let mut comul_cols = Vec::with_capacity(d);
    let mut s_cols = Vec::with_capacity(d);
    let mut counit = vec![f.zero(); d];
    for b in 0..d {
        let (i, j) = (b % n, b / n);
        let mut c = tmp.unit_power(2);
        let mut s = unit.clone();
        for _ in 0..i {
            c = tmp.mul_power(2, &c, &dg);
        }
        for _ in 0..j {
            c = tmp.mul_power(2, &c, &dx);
        }
        // S(g^i x^j) = S(x)^j S(g)^i
        for _ in 0..j {
            s = alg.mul(&s, &sx);
        }
        for _ in 0..i {
            s = alg.mul(&s, &sg);
        }
        comul_cols.push(c);
        s_cols.push(s);
        if j == 0 {
            counit[b] = f.one();
        }
    }
    let comul = Matrix::from_cols(f, d * d, &comul_cols);
    let antipode = Matrix::from_cols(f, d, &s_cols);
    let r = match alpha {
        Some(a) if n == 2 => {
            let half = f.inv(&f.from_i64(2)).ok_or_else(|| HhError::Axiom("2 is not invertible".into()))?;
            let (one, g, x, gx) = (0, 1, 2, 3);
            let mut r = vec![f.zero(); 16];
            let mut put = |i: usize, j: usize, c: K::Elem| {
                r[i * 4 + j] = f.add(&r[i * 4 + j], &c);
            };
            let ah = f.mul(a, &half);
            put(one, one, half.clone());
            put(one, g, half.clone());
            put(g, one, half.clone());
            put(g, g, f.neg(&half));
            put(x, x, ah.clone());
            put(x, gx, f.neg(&ah));
            put(gx, x, ah.clone());
            put(gx, gx, ah);
            Some(r)
        }
        Some(_) => return Err(HhError::Axiom("R-matrices are only emitted for N = 2".into())),
        None => None,
    };
    Bialgebra::new(alg, comul, counit, Some(antipode), r)
}

/// Λ(x_1, …, x_n) with basis the subsets of {1..n} (bit masks), the shuffle
/// coproduct with primitive generators, and S(x_S) = (−1)^{|S|} x_S.
pub fn exterior<K: Field>(f: &K, n: usize) -> Result<Bialgebra<K>> {
    let d = 1usize << n;
    // sign of the permutation sorting the concatenation of S then T
    let shuffle_sign = |s: usize, t: usize| -> i64 {
        let mut inv = 0;
        for a in 0..n {
            if s >> a & 1 == 1 {
                inv += (0..a).filter(|&b| t >> b & 1 == 1).count();
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut triples = Vec::new();
    for s in 0..d {
        for t in 0..d {
            if s & t == 0 {
                triples.push((s, t, s | t, f.from_i64(shuffle_sign(s, t))));
            }
        }
    }
    let labels = (0..d)
        .map(|s| {
            if s == 0 {
                "1".to_string()
            } else {
                (0..n).filter(|a| s >> a & 1 == 1).map(|a| if n == 1 { "x".to_string() } else { format!("x{}", a + 1) }).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let mut unit = vec![f.zero(); d];
    unit[0] = f.one();
    let alg = Arc::new(Algebra::from_triples(f, labels, &triples, unit)?);
    let comul = Matrix::from_fn(f, d * d, d, |jk, s| {
        let (a, b) = (jk / d, jk % d);
        if a & b == 0 && a | b == s {
            f.from_i64(shuffle_sign(a, b))
        } else {
            f.zero()
        }
    });
    let mut counit = vec![f.zero(); d];
    counit[0] = f.one();
    let antipode = Matrix::from_fn(f, d, d, |j, s| {
        if j == s {
            f.from_i64(if s.count_ones() % 2 == 0 { 1 } else { -1 })
        } else {
            f.zero()
        }
    });
    Bialgebra::new(alg, comul, counit, Some(antipode), None)
}

/// The map H•(B, k) → HH•(B) through L_B: a cocycle over a small resolution
/// of k becomes an extension, L_B turns it into a self-extension of B, and
/// the bar resolution reads off a Hochschild cochain.
pub struct HopfEmbedding<K: Field> {
    pub bialgebra: Arc<Bialgebra<K>>,
    pub group: ExtClassifier<K>,
    pub hochschild: HochschildExt<K>,
    top: usize,
}

impl<K: Field> HopfEmbedding<K> {
    /// Handles classes of degree ≤ `top`.
    pub fn new(b: &Arc<Bialgebra<K>>, top: usize) -> Result<Self> {
        let report = b.check();
        if !report.ok() {
            return Err(HhError::Axiom(format!("not a bialgebra: {report}")));
        }
        let k = b.trivial();
        let res = FreeResolution::greedy(b.algebra(), &k, top + 1);
        Ok(HopfEmbedding { bialgebra: b.clone(), group: ExtClassifier::new(res, &k), hochschild: HochschildExt::new(b.algebra(), top), top })
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// H^n(B, k) on the small resolution.
    pub fn cohomology(&self, n: usize) -> Result<Cohomology<K>> {
        if n > self.top {
            return Err(HhError::Truncation { need: n, have: self.top });
        }
        self.group.hom_complex().cohomology(n)
    }

    /// The Hochschild cochain representing the image of the class of φ.
    pub fn embed(&self, n: usize, phi: &[K::Elem]) -> Result<Cochain<K::Elem>> {
        if n > self.top {
            return Err(HhError::Truncation { need: n, have: self.top });
        }
        if n == 0 {
            let f = self.bialgebra.field();
            let c = phi.first().cloned().unwrap_or_else(|| f.zero());
            let mut u = unit_cochain(self.bialgebra.algebra());
            u.values.iter_mut().for_each(|v| *v = f.mul(v, &c));
            return Ok(u);
        }
        let xi = self.group.cocycle_to_extension(n, phi)?;
        let lb = self.bialgebra.lb_extension(&xi, &self.hochschild.ev)?;
        self.hochschild.cochain(&lb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn h4(alpha: u32) -> Bialgebra<PrimeField> {
        let f = gf(5);
        taft(&f, 2, &4, Some(&alpha)).unwrap()
    }

    #[test]
    fn group_algebras_are_hopf() {
        let b = cyclic_group(&gf(2), 2).unwrap();
        assert!(b.check().ok(), "{}", b.check());
        let r = b.r_matrix().unwrap().to_vec();
        let rep = b.check_r_matrix(&r);
        assert!(rep.passes(RMode::Canonical) && rep.passes(RMode::Semi));
        let s3 = vec![vec![0, 1, 2, 3, 4, 5], vec![1, 0, 4, 5, 2, 3], vec![2, 5, 0, 4, 3, 1], vec![3, 4, 5, 0, 1, 2], vec![4, 3, 1, 2, 5, 0], vec![5, 2, 3, 1, 0, 4]];
        assert!(group_algebra(&Rationals, &s3).is_ok());
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(group_algebra(&Rationals, &bad).is_err());
    }

    #[test]
    fn taft_algebra_and_its_r_matrices() {
        for alpha in 0..3 {
            let b = h4(alpha);
            assert!(b.check().ok(), "{}", b.check());
            let rep = b.check_r_matrix(b.r_matrix().unwrap());
            assert!(rep.passes(RMode::Canonical), "{:?}", rep.failures);
            assert!(rep.counit_normalized && rep.product_normalized);
        }
        let b = h4(1);
        let mut one = vec![0; 16];
        one[0] = 1;
        let rep = b.check_r_matrix(&one);
        assert!(!rep.qt1);
        // S(x) = −g⁻¹x = −gx
        assert_eq!(b.antipode().unwrap().col(2), vec![0, 0, 0, 4]);
    }

    #[test]
    fn perturbed_counit_fails() {
        let b = h4(0);
        let mut eps = b.counit().to_vec();
        eps[2] = 1;
        let bad = Bialgebra::new(b.algebra().clone(), b.comul().clone(), eps, None, None).unwrap();
        assert!(!bad.check().ok());
    }

    #[test]
    fn exterior_on_one_generator_is_not_multiplicative() {
        let b = exterior(&Rationals, 1).unwrap();
        assert_eq!(b.dim(), 2);
        let rep = b.check();
        assert!(!rep.ok());
        assert!(rep.to_string().contains("Δ(x·x)"));
    }

    #[test]
    fn boxtimes_and_braiding() {
        let b = h4(1);
        let k = b.trivial();
        let reg = Module::regular(b.algebra());
        let kr = b.boxtimes(&k, &reg);
        assert_eq!(kr.actions(), reg.actions());
        let rr = b.boxtimes(&reg, &reg);
        assert!(rr.check().ok());
        assert_eq!(rr.dim(), 16);
        let r = b.r_matrix().unwrap();
        let g = b.braiding(&reg, &reg, r);
        assert!(rr.is_hom_to(&rr, &g));
        assert!(g.inverse().is_some());
        let z2 = cyclic_group(&gf(2), 2).unwrap();
        let m = Module::regular(z2.algebra());
        let one = z2.r_matrix().unwrap();
        let g = z2.braiding(&m, &m, one);
        assert_eq!(g, flip(z2.field(), 2, 2));
        assert!(g.mul(&g).is_identity());
    }

    #[test]
    fn lb_of_trivial_module_is_regular_bimodule() {
        let b = h4(0);
        let ev = Arc::new(b.algebra().enveloping());
        let lk = b.lb_module(&b.trivial(), &ev).unwrap();
        assert_eq!(lk, regular_bimodule(b.algebra(), &ev));
        let m = b.lb_module(&Module::regular(b.algebra()), &ev).unwrap();
        assert_eq!(m.dim(), 16);
        assert!(m.check().ok());
    }

    #[test]
    fn embedding_of_group_cohomology_of_z2() {
        let f = gf(2);
        let b = Arc::new(cyclic_group(&f, 2).unwrap());
        let e = HopfEmbedding::new(&b, 3).unwrap();
        let hh = &e.hochschild.hochschild;
        let unit = e.embed(0, &[1]).unwrap();
        assert_eq!(unit, unit_cochain(b.algebra()));
        let mut images = Vec::new();
        for n in 1..=3 {
            let h = e.cohomology(n).unwrap();
            assert_eq!(h.dim(), 1);
            let c = e.embed(n, &h.basis()[0]).unwrap();
            assert!(hh.is_cocycle(&c).unwrap());
            assert!(!hh.is_coboundary(&c).unwrap());
            images.push(c);
        }
        // t·t = t² and the brackets vanish
        let sq = crate::hochschild::cup(b.algebra(), &images[0], &images[0]).unwrap();
        assert!(hh.same_class(&sq, &images[1]).unwrap());
        for (i, x) in images.iter().enumerate() {
            for y in &images[..3 - i - 1 + 1] {
                if x.degree + y.degree <= 4 {
                    let br = crate::hochschild::bracket(b.algebra(), x, y).unwrap();
                    assert!(hh.is_coboundary(&br).unwrap());
                }
            }
        }
    }

    #[test]
    fn taft_embedding_brackets_vanish() {
        let b = Arc::new(h4(1));
        let t = std::time::Instant::now();
        let e = HopfEmbedding::new(&b, 4).unwrap();
        let dims: Vec<usize> = (0..=4).map(|n| e.cohomology(n).unwrap().dim()).collect();
        eprintln!("H(H4,k) dims {dims:?} {:?}", t.elapsed());
        let mut images = Vec::new();
        for n in 1..=4 {
            let h = e.cohomology(n).unwrap();
            for v in h.basis() {
                images.push(e.embed(n, v).unwrap());
            }
        }
        eprintln!("embedded {} classes {:?}", images.len(), t.elapsed());
        let hh = &e.hochschild.hochschild;
        for x in &images {
            for y in &images {
                if x.degree + y.degree <= 4 {
                    let br = crate::hochschild::bracket(b.algebra(), x, y).unwrap();
                    assert!(hh.is_coboundary(&br).unwrap());
                }
            }
        }
        eprintln!("done {:?}", t.elapsed());
    }
}
