use std::sync::Arc;

use hochschild::algebra::{random_three_dim, truncated_polynomial};
use hochschild::extension::{baer_sum, splice, HochschildExt};
use hochschild::hochschild::{self as hc, Hochschild};
use hochschild::verify::gerstenhaber_suite;
use hochschild::{PrimeField, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cochain_identities_on_random_algebras(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_three_dim(&f, &mut rng);
        let r = gerstenhaber_suite(&a, seed, 4).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn cochain_identities_over_q(seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let a = random_three_dim(&Rationals, &mut rng);
        let r = gerstenhaber_suite(&a, seed, 2).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn cup_is_graded_commutative_on_classes(i in 0usize..2, j in 0usize..2, m in 0usize..3, n in 0usize..3) {
        let f = PrimeField::new(3).unwrap();
        let a = Arc::new(truncated_polynomial(&f, 3));
        let hh = Hochschild::new(a.clone());
        let (bm, bn) = (hh.basis_cochains(m).unwrap(), hh.basis_cochains(n).unwrap());
        let (x, y) = (&bm[i % bm.len()], &bn[j % bn.len()]);
        let xy = hc::cup(&a, x, y).unwrap();
        let yx = hc::cup(&a, y, x).unwrap();
        let s = hc::sign(&f, m * n);
        prop_assert!(hh.same_class(&xy, &hc::scale(&f, &s, &yx)).unwrap());
    }
}

#[test]
fn baer_sum_and_splice_realize_addition_and_cup() {
    let f = PrimeField::new(3).unwrap();
    let a = Arc::new(truncated_polynomial(&f, 2));
    let hx = HochschildExt::new(&a, 2);
    let b1 = hx.hochschild.basis_cochains(1).unwrap();
    for x in &b1 {
        for y in &b1 {
            let (ex, ey) = (hx.extension(x).unwrap(), hx.extension(y).unwrap());
            let sum = hx.cochain(&baer_sum(&ex, &ey).unwrap()).unwrap();
            assert!(hx.hochschild.same_class(&sum, &hc::add(&f, x, y)).unwrap());
            let spliced = hx.cochain(&splice(&ex, &ey).unwrap()).unwrap();
            let cup = hc::cup(&a, x, y).unwrap();
            let neg = hc::scale(&f, &2, &cup);
            assert!(hx.hochschild.same_class(&spliced, &cup).unwrap() || hx.hochschild.same_class(&spliced, &neg).unwrap());
        }
    }
}
