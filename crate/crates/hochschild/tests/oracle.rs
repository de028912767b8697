mod common;

use std::sync::Arc;

use common::{hh_dims, rank_p, rank_q, IntAlgebra};
use hochschild::algebra::{truncated_polynomial, Algebra};
use hochschild::hochschild::{diff_matrix, Hochschild};
use hochschild::hopf::cyclic_group;
use hochschild::{Field, Matrix, PrimeField, Rationals};
use proptest::prelude::*;

fn to_matrix<K: Field>(f: &K, m: &[Vec<i128>], cols: usize) -> Matrix<K> {
    Matrix::from_fn(f, m.len(), cols, |i, j| f.from_i64(m[i][j] as i64))
}

fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i128>>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| (Just(c), proptest::collection::vec(proptest::collection::vec(-3i128..=3, c), r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn rank_nullity_over_q((cols, m) in small_matrix()) {
        let a = to_matrix(&Rationals, &m, cols);
        let rank = a.rank();
        prop_assert_eq!(rank + a.kernel().len(), cols);
        prop_assert_eq!(rank, rank_q(m));
        for v in a.kernel() {
            prop_assert!(a.apply(&v).iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn rank_nullity_over_gf2((cols, m) in small_matrix()) {
        let f = PrimeField::new(2).unwrap();
        let a = to_matrix(&f, &m, cols);
        prop_assert_eq!(a.rank() + a.kernel().len(), cols);
        prop_assert_eq!(a.rank(), rank_p(&m, 2));
    }

    #[test]
    fn rank_nullity_over_gf5((cols, m) in small_matrix()) {
        let f = PrimeField::new(5).unwrap();
        let a = to_matrix(&f, &m, cols);
        prop_assert_eq!(a.rank() + a.kernel().len(), cols);
        prop_assert_eq!(a.rank(), rank_p(&m, 5));
    }
}

fn library_dims<K: Field>(a: Algebra<K>, top: usize) -> Vec<usize> {
    let hh = Hochschild::new(Arc::new(a));
    (0..=top).map(|n| hh.dim(n).unwrap()).collect()
}

#[test]
fn differentials_match_the_oracle_up_to_rank() {
    let a = truncated_polynomial(&Rationals, 3);
    let o = IntAlgebra::truncated(3);
    for n in 0..3 {
        assert_eq!(diff_matrix(&a, n).rank(), rank_q(common::differential(&o, n)));
    }
}

#[test]
fn truncated_polynomials_agree_with_the_oracle() {
    for n in 2..=4 {
        assert_eq!(library_dims(truncated_polynomial(&Rationals, n), 3), hh_dims(&IntAlgebra::truncated(n), 3, None), "k[x]/x^{n} over Q");
        for p in [2u32, 3] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(library_dims(truncated_polynomial(&f, n), 3), hh_dims(&IntAlgebra::truncated(n), 3, Some(p as i128)), "k[x]/x^{n} over GF({p})");
        }
    }
}

#[test]
fn cyclic_group_algebras_agree_with_the_oracle() {
    for (n, p) in [(2, 2u32), (2, 3), (3, 3), (3, 2), (4, 2)] {
        let f = PrimeField::new(p).unwrap();
        let b = cyclic_group(&f, n).unwrap();
        let lib = library_dims((**b.algebra()).clone(), 2);
        assert_eq!(lib, hh_dims(&IntAlgebra::cyclic(n), 2, Some(p as i128)), "kZ{n} over GF({p})");
    }
}

#[test]
fn comparison_map_agrees_beyond_the_bar_limit() {
    // a tiny entry limit pushes degrees ≥ 2 onto the comparison map
    let f = PrimeField::new(2).unwrap();
    let hh = Hochschild::with_limit(Arc::new(truncated_polynomial(&f, 2)), 100);
    let dims: Vec<usize> = (0..=5).map(|n| hh.dim(n).unwrap()).collect();
    assert!(hh.bar_limit() < 5);
    assert_eq!(dims, hh_dims(&IntAlgebra::truncated(2), 5, Some(2)));
}
