//! Property tests for the exact linear algebra layer and the word calculus.

mod common;

use ellconv::braid::{braid_action, free_reduce, BraidWord, TupleDeformation};
use ellconv::linalg::{
    factor_squarefree_rational, kernel, kronecker, min_poly, rref, IntPoly, Mat, Rat, Subspace,
};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(small_rat(), rows * cols).prop_map(move |entries| {
        let mut it = entries.into_iter();
        Mat::from_fn(rows, cols, |_, _| it.next().unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in small_mat(4, 5)) {
        let (r1, rank1) = rref(&m);
        let (r2, rank2) = rref(&r1);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(rank1, rank2);
    }

    #[test]
    fn rank_nullity(m in small_mat(3, 5)) {
        let (_, rank) = rref(&m);
        prop_assert_eq!(rank + kernel(&m).dim(), m.cols());
    }

    #[test]
    fn subspace_dimension_formula(a in small_mat(3, 4), b in small_mat(2, 4)) {
        let s1 = Subspace::row_space(&a);
        let s2 = Subspace::row_space(&b);
        let sum = s1.sum(&s2);
        let meet = s1.intersect(&s2);
        prop_assert_eq!(s1.dim() + s2.dim(), sum.dim() + meet.dim());
        prop_assert!(sum.contains_subspace(&s1));
        prop_assert!(s1.contains_subspace(&meet));
    }

    #[test]
    fn kronecker_mixed_product(
        a in small_mat(2, 2),
        b in small_mat(2, 2),
        c in small_mat(2, 2),
        d in small_mat(2, 2),
    ) {
        let lhs = &kronecker(&a, &b) * &kronecker(&c, &d);
        let rhs = kronecker(&(&a * &c), &(&b * &d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn min_poly_annihilates(m in small_mat(3, 3)) {
        let p = min_poly(&m);
        prop_assert!(p.eval_mat(&m).is_zero());
        prop_assert!(p.degree().unwrap_or(0) <= 3);
    }

    #[test]
    fn factorization_multiplies_back(coeffs in proptest::collection::vec(-9i64..=9, 2..=6)) {
        let p = IntPoly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let factors = factor_squarefree_rational(&p).unwrap();
        let mut product = IntPoly::one();
        for (f, mult) in &factors {
            for _ in 0..*mult {
                product = product.mul(f);
            }
        }
        prop_assert_eq!(product.primitive(), p.primitive());
    }

    #[test]
    fn braid_words_invert(word in proptest::collection::vec((1i32..=4, proptest::bool::ANY), 0..8)) {
        let letters: Vec<i32> = word.iter().map(|&(k, neg)| if neg { -k } else { k }).collect();
        let w = BraidWord(letters);
        let id = TupleDeformation::identity(5);
        let there = braid_action(&w, &id).unwrap();
        let back = braid_action(&w.inverse(), &there).unwrap();
        let reduced: Vec<_> = back.components.iter().map(free_reduce).collect();
        let expected: Vec<_> = id.components.iter().map(free_reduce).collect();
        prop_assert_eq!(reduced, expected);
    }

    #[test]
    fn braid_action_preserves_local_product(
        word in proptest::collection::vec((1i32..=4, proptest::bool::ANY), 0..10)
    ) {
        let letters: Vec<i32> = word.iter().map(|&(k, neg)| if neg { -k } else { k }).collect();
        let id = TupleDeformation::identity(5);
        let deformed = braid_action(&BraidWord(letters), &id).unwrap();
        prop_assert_eq!(
            free_reduce(&deformed.local_product()),
            free_reduce(&id.local_product())
        );
    }
}
