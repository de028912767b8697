//! Identity suites: cochain-level Gerstenhaber identities on random input,
//! the G-algebra axioms on cohomology classes, and the extension-side checks
//! (Retakh roundtrip, agreement of loop and bar brackets, braided vanishing,
//! vanishing on the image of H•(B, k)).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::extension::{baer_sum, ExtClassifier, HochschildExt};
use crate::field::Field;
use crate::hochschild::{self as hc, Cochain, Hochschild};
use crate::hopf::{Bialgebra, HopfEmbedding};
use crate::loops::{gamma_morphism, loop_bracket, lr_morphisms, r_morphism, sign_twist, u_minus, xi_plus, Product};
use crate::matrix::Matrix;
use crate::resolution::FreeResolution;

/// One identity and how it fared.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.into(), ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>, notes: Vec<String>) -> Self {
        let pass = checks.iter().all(|c| c.passed());
        SuiteReport { suite: suite.into(), pass, checks, notes }
    }

    fn failed(suite: &str, why: String) -> Self {
        let mut c = Check::new("setup");
        c.record(false, || why);
        SuiteReport::new(suite, vec![c], Vec::new())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn lin<K: Field>(f: &K, terms: &[(i64, &Cochain<K::Elem>)]) -> Cochain<K::Elem> {
    let mut out = hc::scale(f, &f.from_i64(terms[0].0), terms[0].1);
    for (c, x) in &terms[1..] {
        out = hc::add(f, &out, &hc::scale(f, &f.from_i64(*c), x));
    }
    out
}

fn pm(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cochain-level identities on seeded random cochains of degree ≤ 2:
/// the fundamental formula
/// ∂(f•g) = (−1)^{n−1} ∂f•g + f•∂g + (−1)^{n+1+mn} (f∪g − (−1)^{mn} g∪f),
/// anticommutativity and Jacobi for the bracket, the slot identities of the
/// pre-Lie system and the graded pre-Lie identity for •, and the Leibniz rule
/// ∂(f∪g) = ∂f∪g + (−1)^m f∪∂g.
pub fn gerstenhaber_suite<K: Field>(a: &Algebra<K>, seed: u64, trials: usize) -> Result<SuiteReport> {
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ff = Check::new("fundamental_formula");
    let mut anti = Check::new("anticommutativity");
    let mut jacobi = Check::new("jacobi");
    let mut slots = Check::new("pre_lie_slots");
    let mut prelie = Check::new("pre_lie");
    let mut leibniz = Check::new("dg_leibniz");
    for t in 0..trials {
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(1..=2);
        let p = rng.gen_range(1..=2);
        let x = hc::random_cochain(a, m, &mut rng);
        let y = hc::random_cochain(a, n, &mut rng);
        let z = hc::random_cochain(a, p, &mut rng);
        let tag = || format!("trial {t}, degrees ({m},{n},{p})");

        let lhs = hc::hoch_diff(a, &hc::circle(a, &x, &y)?)?;
        let t1 = hc::circle(a, &hc::hoch_diff(a, &x)?, &y)?;
        let t2 = hc::circle(a, &x, &hc::hoch_diff(a, &y)?)?;
        let cup_xy = hc::cup(a, &x, &y)?;
        let cup_yx = hc::cup(a, &y, &x)?;
        let comm = lin(f, &[(1, &cup_xy), (-pm(m * n), &cup_yx)]);
        let rhs = lin(f, &[(pm(n + 1), &t1), (1, &t2), (pm(n + 1 + m * n), &comm)]);
        ff.record(lhs == rhs, tag);

        let bxy = hc::bracket(a, &x, &y)?;
        let byx = hc::bracket(a, &y, &x)?;
        anti.record(hc::is_zero(f, &lin(f, &[(1, &bxy), (pm((m + 1) * (n + 1)), &byx)])), tag);

        let j1 = hc::bracket(a, &x, &hc::bracket(a, &y, &z)?)?;
        let j2 = hc::bracket(a, &bxy, &z)?;
        let j3 = hc::bracket(a, &y, &hc::bracket(a, &x, &z)?)?;
        jacobi.record(j1 == lin(f, &[(1, &j2), (pm((m + 1) * (n + 1)), &j3)]), tag);

        // (f•_i g)•_j h = (f•_j h)•_{i+p−1} g for j < i, and
        // (f•_i g)•_j h = f•_i (g•_{j−i} h) for i ≤ j < i + n
        for i in 0..m {
            let fg = hc::circle_i(a, &x, &y, i)?;
            for j in 0..m + n - 1 {
                let left = hc::circle_i(a, &fg, &z, j)?;
                let right = if j < i {
                    hc::circle_i(a, &hc::circle_i(a, &x, &z, j)?, &y, i + p - 1)?
                } else if j < i + n {
                    hc::circle_i(a, &x, &hc::circle_i(a, &y, &z, j - i)?, i)?
                } else {
                    continue;
                };
                slots.record(left == right, || format!("{}, slots ({i},{j})", tag()));
            }
        }

        let assoc = |u: &Cochain<K::Elem>, v: &Cochain<K::Elem>, w: &Cochain<K::Elem>| -> Result<Cochain<K::Elem>> {
            let l = hc::circle(a, &hc::circle(a, u, v)?, w)?;
            let r = hc::circle(a, u, &hc::circle(a, v, w)?)?;
            Ok(hc::sub(f, &l, &r))
        };
        let lhs = assoc(&x, &y, &z)?;
        let rhs = assoc(&x, &z, &y)?;
        prelie.record(lhs == lin(f, &[(pm((n + 1) * (p + 1)), &rhs)]), tag);

        let m0 = rng.gen_range(0..=2);
        let x0 = hc::random_cochain(a, m0, &mut rng);
        let lhs = hc::hoch_diff(a, &hc::cup(a, &x0, &y)?)?;
        let d1 = hc::cup(a, &hc::hoch_diff(a, &x0)?, &y)?;
        let d2 = hc::cup(a, &x0, &hc::hoch_diff(a, &y)?)?;
        leibniz.record(lhs == lin(f, &[(1, &d1), (pm(m0), &d2)]), || format!("trial {t}, degrees ({m0},{n})"));
    }
    Ok(SuiteReport::new("gerstenhaber", vec![ff, anti, jacobi, slots, prelie, leibniz], Vec::new()))
}

/// A cochain, or zero in a negative degree (written `None`).
type Term<E> = Option<Cochain<E>>;

struct ClassOps<'a, K: Field> {
    a: &'a Algebra<K>,
}

impl<K: Field> ClassOps<'_, K> {
    fn cup(&self, x: &Term<K::Elem>, y: &Term<K::Elem>) -> Result<Term<K::Elem>> {
        match (x, y) {
            (Some(x), Some(y)) => Ok(Some(hc::cup(self.a, x, y)?)),
            _ => Ok(None),
        }
    }

    fn br(&self, x: &Term<K::Elem>, y: &Term<K::Elem>) -> Result<Term<K::Elem>> {
        match (x, y) {
            (Some(x), Some(y)) if x.degree + y.degree > 0 => Ok(Some(hc::bracket(self.a, x, y)?)),
            _ => Ok(None),
        }
    }

    fn sq(&self, x: &Term<K::Elem>) -> Result<Term<K::Elem>> {
        match x {
            Some(x) if x.degree > 0 => Ok(Some(hc::sq(self.a, x)?)),
            _ => Ok(None),
        }
    }

    /// Σ c·t over the terms that exist, or `None` when none does.
    fn sum(&self, terms: &[(i64, &Term<K::Elem>)]) -> Term<K::Elem> {
        let f = self.a.field();
        let present: Vec<(i64, &Cochain<K::Elem>)> = terms.iter().filter_map(|(c, t)| t.as_ref().map(|t| (*c, t))).collect();
        if present.is_empty() {
            None
        } else {
            Some(lin(f, &present))
        }
    }
}

/// The G-algebra axioms (G1)–(G10) on basis classes of HH^{≤ max}. An
/// instance is included when the identity lives in degree ≤ `max`; terms
/// that would land in a negative degree are zero, and instances made only
/// of such terms are skipped.
pub fn axiom_suite<K: Field>(hh: &Hochschild<K>, max: usize) -> Result<SuiteReport> {
    let a = hh.algebra().as_ref();
    let f = a.field();
    let ops = ClassOps { a };
    let mut classes: Vec<(String, Term<K::Elem>)> = Vec::new();
    for n in 0..=max {
        for (i, c) in hh.basis_cochains(n)?.into_iter().enumerate() {
            classes.push((format!("h{n}_{i}"), Some(c)));
        }
    }
    let deg = |t: &Term<K::Elem>| t.as_ref().map_or(0, |c| c.degree);
    let scalars: Vec<i64> = match f.characteristic() {
        0 => vec![0, 1, 2, 3],
        p => (0..(p as i64).min(4)).collect(),
    };

    let mut checks: Vec<Check> = ["G1", "G2", "G3", "G4", "G5", "G6", "G7", "G8", "G9", "G10"].iter().map(|n| Check::new(n)).collect();
    let mut test = |idx: usize, t: Term<K::Elem>, label: String| -> Result<()> {
        if let Some(c) = t {
            if c.degree <= max {
                let ok = hh.is_coboundary(&c)?;
                checks[idx].record(ok, || label);
            }
        }
        Ok(())
    };

    for (la, x) in &classes {
        let m = deg(x);
        if m % 2 == 1 && 2 * m <= max + 1 {
            test(2, ops.br(x, x)?, format!("[{la},{la}]"))?;
        } else if 3 * m >= 2 && 3 * m - 2 <= max {
            test(3, ops.br(&ops.br(x, x)?, x)?, format!("[[{la},{la}],{la}]"))?;
        }
        if m % 2 == 0 && 2 * m <= max + 1 {
            let sx = ops.sq(x)?;
            for r in &scalars {
                let rx = x.as_ref().map(|c| hc::scale(f, &f.from_i64(*r), c));
                let t = ops.sum(&[(1, &ops.sq(&rx)?), (-(r * r), &sx)]);
                test(6, t, format!("sq({r}·{la})"))?;
            }
        }
        for (lb, y) in &classes {
            let n = deg(y);
            if m + n <= max {
                let t = ops.sum(&[(1, &ops.cup(x, y)?), (-pm(m * n), &ops.cup(y, x)?)]);
                test(0, t, format!("{la}{lb} vs {lb}{la}"))?;
            }
            if m + n <= max + 1 {
                let t = ops.sum(&[(1, &ops.br(x, y)?), (pm((m + 1) * (n + 1)), &ops.br(y, x)?)]);
                test(1, t, format!("[{la},{lb}]"))?;
            }
            if m % 2 == 0 && n % 2 == 0 {
                if m == n && 2 * m <= max + 1 {
                    let s = x.as_ref().zip(y.as_ref()).map(|(u, v)| hc::add(f, u, v));
                    let t = ops.sum(&[(1, &ops.sq(&s)?), (-1, &ops.sq(x)?), (-1, &ops.sq(y)?), (-1, &ops.br(x, y)?)]);
                    test(7, t, format!("sq({la}+{lb})"))?;
                }
                if m + 2 * n <= max + 2 {
                    let t = ops.sum(&[(1, &ops.br(x, &ops.sq(y)?)?), (-1, &ops.br(&ops.br(x, y)?, y)?)]);
                    test(8, t, format!("[{la},sq({lb})]"))?;
                }
                if 2 * (m + n) <= max + 1 {
                    let xy = ops.cup(x, y)?;
                    let t = ops.sum(&[
                        (1, &ops.sq(&xy)?),
                        (-1, &ops.cup(&ops.cup(x, x)?, &ops.sq(y)?)?),
                        (-1, &ops.cup(&ops.sq(x)?, &ops.cup(y, y)?)?),
                        (-1, &ops.cup(&ops.cup(x, &ops.br(x, y)?)?, y)?),
                    ]);
                    test(9, t, format!("sq({la}{lb})"))?;
                }
            }
            for (lc, z) in &classes {
                let p = deg(z);
                if m + n + p <= max + 2 {
                    let t = ops.sum(&[
                        (1, &ops.br(x, &ops.br(y, z)?)?),
                        (-1, &ops.br(&ops.br(x, y)?, z)?),
                        (-pm((m + 1) * (n + 1)), &ops.br(y, &ops.br(x, z)?)?),
                    ]);
                    test(4, t, format!("Jacobi({la},{lb},{lc})"))?;
                }
                if m + n + p <= max + 1 {
                    let t = ops.sum(&[
                        (1, &ops.br(x, &ops.cup(y, z)?)?),
                        (-1, &ops.cup(&ops.br(x, y)?, z)?),
                        (-pm((m + 1) * n), &ops.cup(y, &ops.br(x, z)?)?),
                    ]);
                    test(5, t, format!("Poisson({la},{lb},{lc})"))?;
                }
            }
        }
    }
    Ok(SuiteReport::new("axioms", checks, Vec::new()))
}

fn random_combination<K: Field>(f: &K, basis: &[Cochain<K::Elem>], rng: &mut ChaCha8Rng) -> Cochain<K::Elem> {
    let mut out = hc::scale(f, &f.zero(), &basis[0]);
    for b in basis {
        out = hc::add(f, &out, &hc::scale(f, &f.random(rng), b));
    }
    out
}

/// u⁻(ξ₊) = [ξ] for every basis class of Ext^n_{A^ev}(A, A), n ∈ {1, 2}, and
/// u⁻(ξ₊·ζ₊) = ξ ⊞ ζ on `pairs` seeded random pairs.
pub fn retakh_suite<K: Field>(a: &Arc<Algebra<K>>, seed: u64, pairs: usize) -> Result<SuiteReport> {
    let f = a.field();
    let hx = HochschildExt::new(a, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut round = Check::new("roundtrip");
    let mut additive = Check::new("additivity");
    for n in 1..=2 {
        let basis = hx.hochschild.basis_cochains(n)?;
        for (i, c) in basis.iter().enumerate() {
            let xi = hx.extension(c)?;
            let back = u_minus(&xi_plus(&xi)?)?;
            let ok = match back.as_ext() {
                Some(e) => hx.classes_equal(e, &xi)?,
                None => false,
            };
            round.record(ok, || format!("degree {n}, class {i}"));
        }
    }
    for t in 0..pairs {
        let n = 1 + t % 2;
        let basis = hx.hochschild.basis_cochains(n)?;
        if basis.is_empty() {
            continue;
        }
        let (c1, c2) = (random_combination(f, &basis, &mut rng), random_combination(f, &basis, &mut rng));
        let (x1, x2) = (hx.extension(&c1)?, hx.extension(&c2)?);
        let w = xi_plus(&x1)?.concat(&xi_plus(&x2)?)?;
        let ok = match u_minus(&w)?.as_ext() {
            Some(e) => hx.classes_equal(e, &baer_sum(&x1, &x2)?)?,
            None => false,
        };
        additive.record(ok, || format!("pair {t} in degree {n}"));
    }
    Ok(SuiteReport::new("retakh", vec![round, additive], Vec::new()))
}

/// Loop bracket against bar bracket on all pairs of HH^m × HH^n basis
/// classes. The two must agree up to one sign shared by every pair; the
/// notes list which global signs are consistent.
pub fn schwede_suite<K: Field>(a: &Arc<Algebra<K>>, m: usize, n: usize) -> Result<SuiteReport> {
    let f = a.field();
    let hx = HochschildExt::new(a, m + n);
    let product = Product::Bimodule(a.clone());
    let mut agree = Check::new("agreement");
    let (mut plus, mut minus) = (true, true);
    let bm = hx.hochschild.basis_cochains(m)?;
    let bn = hx.hochschild.basis_cochains(n)?;
    for (i, x) in bm.iter().enumerate() {
        for (j, y) in bn.iter().enumerate() {
            let (ex, ey) = (hx.extension(x)?, hx.extension(y)?);
            let got = match loop_bracket(&product, &ex, &ey)?.as_ext() {
                Some(e) => hx.cochain(e)?,
                None => {
                    agree.record(false, || format!("pair ({i},{j}) gave a map"));
                    continue;
                }
            };
            let want = hc::bracket(a, x, y)?;
            let p = hx.hochschild.same_class(&got, &want)?;
            let q = hx.hochschild.same_class(&got, &hc::scale(f, &f.from_i64(-1), &want))?;
            plus &= p;
            minus &= q;
            agree.record(p || q, || format!("pair ({i},{j})"));
        }
    }
    let mut global = Check::new("global_sign");
    global.record(plus || minus, || "no single sign fits every pair".into());
    let notes = vec![format!("sign +1 consistent: {plus}"), format!("sign -1 consistent: {minus}")];
    Ok(SuiteReport::new("schwede", vec![agree, global], notes))
}

/// In (Mod B, ⊠_k) with the attached r: the loop bracket vanishes on all
/// pairs of basis classes of Ext^1_B(k, k), and R∘Γ = L, Γ∘Γ = ±id hold on
/// the nose.
pub fn braided_suite<K: Field>(b: &Arc<Bialgebra<K>>) -> Result<SuiteReport> {
    if b.r_matrix().is_none() {
        return Ok(SuiteReport::failed("braided-vanish", "the bialgebra carries no r_matrix".into()));
    }
    let k = b.trivial();
    let cl = ExtClassifier::new(FreeResolution::greedy(b.algebra(), &k, 3), &k);
    let h1 = cl.hom_complex().cohomology(1)?;
    let product = Product::Hopf(b.clone());
    let mut vanish = Check::new("bracket_vanishes");
    let mut rl = Check::new("r_gamma_is_l");
    let mut gg = Check::new("gamma_squared");
    let exts = h1.basis().iter().map(|v| cl.cocycle_to_extension(1, v)).collect::<Result<Vec<_>>>()?;
    for (i, xi) in exts.iter().enumerate() {
        for (j, zeta) in exts.iter().enumerate() {
            let (l, _) = lr_morphisms(&product, xi, zeta)?;
            let g = gamma_morphism(&product, xi, zeta)?;
            let zt = sign_twist(zeta, true);
            let r2 = r_morphism(&product, &zt, xi)?;
            rl.record(g.then(&r2)?.maps == l.maps, || format!("pair ({i},{j})"));
            let g2 = gamma_morphism(&product, &zt, xi)?;
            let gg_maps = g.then(&g2)?.maps;
            let ok = gg_maps.iter().all(|m| m.is_identity()) || gg_maps.iter().all(|m| m.neg().is_identity());
            gg.record(ok, || format!("pair ({i},{j})"));
            let ok = match loop_bracket(&product, xi, zeta)?.as_ext() {
                Some(e) => cl.is_trivial(e)?,
                None => false,
            };
            vanish.record(ok, || format!("pair ({i},{j})"));
        }
    }
    Ok(SuiteReport::new("braided-vanish", vec![vanish, rl, gg], Vec::new()))
}

/// Images of H^{≥1}(B, k) in HH•(B): pairwise brackets of total degree
/// ≤ `max` vanish and each degree's images are linearly independent.
pub fn hopf_vanish_suite<K: Field>(b: &Arc<Bialgebra<K>>, max: usize) -> Result<SuiteReport> {
    let e = match HopfEmbedding::new(b, max) {
        Ok(e) => e,
        Err(err) => return Ok(SuiteReport::failed("hopf-vanish", err.to_string())),
    };
    let a = b.algebra();
    let hh = &e.hochschild.hochschild;
    let mut independent = Check::new("split_mono");
    let mut vanish = Check::new("bracket_vanishes");
    let mut images: Vec<Cochain<K::Elem>> = Vec::new();
    let mut dims = Vec::new();
    for n in 1..=max {
        let h = e.cohomology(n)?;
        dims.push(h.dim());
        let imgs = h.basis().iter().map(|v| e.embed(n, v)).collect::<Result<Vec<_>>>()?;
        if !imgs.is_empty() {
            let coords = imgs.iter().map(|c| hh.class_of(c).map(|k| k.coords)).collect::<Result<Vec<_>>>()?;
            let rank = Matrix::from_rows(b.field(), coords[0].len(), &coords).rank();
            independent.record(rank == imgs.len(), || format!("degree {n}: rank {rank} of {}", imgs.len()));
        }
        images.extend(imgs);
    }
    for x in &images {
        for y in &images {
            if x.degree + y.degree <= max {
                let br = hc::bracket(a, x, y)?;
                vanish.record(hh.is_coboundary(&br)?, || format!("degrees ({},{})", x.degree, y.degree));
            }
        }
    }
    let notes = vec![format!("dims of H^1..H^{max}(B,k): {dims:?}")];
    Ok(SuiteReport::new("hopf-vanish", vec![independent, vanish], notes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, random_three_dim};
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn gerstenhaber_identities_hold() {
        let r = gerstenhaber_suite(&dual_numbers(&PrimeField::new(2).unwrap()), 7, 10).unwrap();
        assert!(r.pass, "{r:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_three_dim(&Rationals, &mut rng);
        let r = gerstenhaber_suite(&a, 1, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn a_broken_product_is_caught() {
        // not associative: the fundamental formula and Leibniz rule break
        let a = dual_numbers(&Rationals).with_constant(0, 1, 0, Rationals.one());
        let r = gerstenhaber_suite(&a, 3, 10).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn axioms_on_dual_numbers() {
        let hh = Hochschild::new(Arc::new(dual_numbers(&PrimeField::new(3).unwrap())));
        let r = axiom_suite(&hh, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.checks.iter().all(|c| c.instances > 0), "{r:?}");
    }
}
