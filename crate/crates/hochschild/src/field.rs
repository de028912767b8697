//! Exact scalar fields: the rationals and prime fields GF(p).

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HhError, Result};

/// Serializable description of a base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldDesc {
    Rationals,
    Prime(u32),
}

impl FieldDesc {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldDesc::Rationals => Ok(()),
            FieldDesc::Prime(p) if is_prime(p) => Ok(()),
            FieldDesc::Prime(p) => Err(HhError::InvalidField(format!("{p} is not prime"))),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// A field with exact arithmetic. Instances carry runtime data (the prime).
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u32;
    fn desc(&self) -> FieldDesc;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `y += c * x`
    fn axpy(&self, y: &mut [Self::Elem], c: &Self::Elem, x: &[Self::Elem]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                *yi = self.add(yi, &self.mul(c, xi));
            }
        }
    }

    /// Row-reduce a row-major buffer in place, choosing pivots only among the
    /// first `limit` columns. Returns the pivot columns; the first
    /// `pivots.len()` rows hold the reduced echelon rows.
    fn echelon(&self, data: &mut [Self::Elem], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
        generic_echelon(self, data, rows, cols, limit)
    }
}

const PAR_THRESHOLD: usize = 1 << 15;

pub(crate) fn generic_echelon<K: Field>(
    k: &K,
    data: &mut [K::Elem],
    rows: usize,
    cols: usize,
    limit: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = k.inv(&data[r * cols + c]).expect("nonzero pivot");
        for j in c..cols {
            data[r * cols + j] = k.mul(&data[r * cols + j], &inv);
        }
        let (before, rest) = data.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let prow = &prow[c..];
        let work = |row: &mut [K::Elem]| {
            if !k.is_zero(&row[c]) {
                let f = k.neg(&row[c]);
                k.axpy(&mut row[c..], &f, prow);
            }
        };
        if rows * (cols - c) > PAR_THRESHOLD {
            before.par_chunks_mut(cols).for_each(work);
            after.par_chunks_mut(cols).for_each(work);
        } else {
            before.chunks_mut(cols).for_each(work);
            after.chunks_mut(cols).for_each(work);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u32 {
        0
    }
    fn desc(&self) -> FieldDesc {
        FieldDesc::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || HhError::Parse(format!("not a rational number: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        let n: i64 = rng.gen_range(-4..=4);
        let d: i64 = rng.gen_range(1..=3);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }
    fn axpy(&self, y: &mut [BigRational], c: &BigRational, x: &[BigRational]) {
        if c.is_zero() {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !xi.is_zero() {
                *yi += c * xi;
            }
        }
    }
}

/// GF(p) with canonical residues `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldDesc::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut r = 1u64;
        let mut b = a as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + (self.p - *b) as u64;
        (s % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn desc(&self) -> FieldDesc {
        FieldDesc::Prime(self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let bad = || HhError::Parse(format!("not an element of GF({}): {s:?}", self.p));
        let int = |t: &str| -> Result<u32> {
            let v: BigInt = t.trim().parse().map_err(|_| bad())?;
            let p = BigInt::from(self.p);
            let mut r = v % &p;
            if r.is_negative() {
                r += &p;
            }
            Ok(u32::try_from(r).expect("residue fits"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = self.inv(&int(d)?).ok_or_else(bad)?;
                Ok(self.mul(&int(n)?, &d))
            }
            None => int(s),
        }
    }
    fn random(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn axpy(&self, y: &mut [u32], c: &u32, x: &[u32]) {
        if *c == 0 {
            return;
        }
        let p = self.p as u64;
        let c = *c as u64;
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = ((*yi as u64 + c * *xi as u64) % p) as u32;
        }
    }
    fn echelon(&self, data: &mut [u32], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
        if self.p == 2 {
            crate::gf2::echelon(data, rows, cols, limit)
        } else {
            lazy_echelon(self.p, data, rows, cols, limit)
        }
    }
}

/// Elimination over GF(p) in 64-bit accumulators, reducing modulo p only when
/// an entry is inspected or the accumulators could overflow.
fn lazy_echelon(p: u32, data: &mut [u32], rows: usize, cols: usize, limit: usize) -> Vec<usize> {
    let f = PrimeField { p };
    let pw = p as u64;
    let mut work: Vec<u64> = data.iter().map(|&x| x as u64).collect();
    let step_budget = ((u64::MAX - pw) / ((pw - 1) * (pw - 1)).max(1)).max(1);
    let mut steps = 0u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| work[i * cols + c] % pw != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                work.swap(piv * cols + j, r * cols + j);
            }
        }
        if steps >= step_budget {
            work.par_iter_mut().for_each(|x| *x %= pw);
            steps = 0;
        }
        let inv = f.inv(&((work[r * cols + c] % pw) as u32)).unwrap() as u64;
        for j in c..cols {
            let v = work[r * cols + j] % pw;
            work[r * cols + j] = v * inv % pw;
        }
        let (before, rest) = work.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let prow = &prow[c..];
        let elim = |row: &mut [u64]| {
            let e = row[c] % pw;
            if e != 0 {
                let m = pw - e;
                for (y, x) in row[c..].iter_mut().zip(prow) {
                    *y += m * *x;
                }
            }
            row[c] = 0;
        };
        if rows * (cols - c) > PAR_THRESHOLD {
            before.par_chunks_mut(cols).for_each(elim);
            after.par_chunks_mut(cols).for_each(elim);
        } else {
            before.chunks_mut(cols).for_each(elim);
            after.chunks_mut(cols).for_each(elim);
        }
        steps += 1;
        pivots.push(c);
        r += 1;
    }
    for (d, w) in data.iter_mut().zip(&work) {
        *d = (*w % pw) as u32;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(65521));
        assert!(!is_prime(0) && !is_prime(1) && !is_prime(4) && !is_prime(91));
        assert!(PrimeField::new(4).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert_eq!(f.parse("-7").unwrap(), 3);
        assert!(f.parse("1/0").is_err());
    }

    #[test]
    fn rational_parse_and_format() {
        let q = Rationals;
        let a = q.parse("6/4").unwrap();
        assert_eq!(q.format(&a), "3/2");
        assert_eq!(q.format(&q.parse("-2").unwrap()), "-2");
        assert!(q.parse("x").is_err());
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn inverses_are_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u32, 3, 5, 7, 65521] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..50 {
                let a = f.random(&mut rng);
                if let Some(b) = f.inv(&a) {
                    assert_eq!(f.mul(&a, &b), 1);
                }
            }
        }
    }
}
