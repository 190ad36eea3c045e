mod common;

use proptest::prelude::*;
use ratgit::limit::{self, flatten, unflatten, ActionModel, Cocharacter, ConjugationModel, Membership, NaturalModel};

fn weights(n: usize, seed: u64) -> Vec<i64> {
    let mut r = common::rng(seed ^ 0xabcd);
    (0..n).map(|_| rand::Rng::gen_range(&mut r, -3..=3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn limit_is_fixed_and_idempotent(seed in any::<u64>(), which in 0usize..5, n in 1usize..4, conj in any::<bool>()) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let model = ConjugationModel::endo(f, n);
        let w = weights(n, seed);
        let lambda = if conj {
            Cocharacter::with_conjugator(w.clone(), common::invertible(f, n, &mut r)).unwrap()
        } else {
            Cocharacter::new(w.clone())
        };
        let v = flatten(&[common::matrix(f, n, &mut r)]);
        let grading = limit::grade_vector(&v, &lambda, &model).unwrap();
        prop_assert_eq!(grading.reassemble(f, v.len()), v.clone());
        let res = limit::limit(&v, &lambda, &model).unwrap();
        let has_negative = grading.weights().iter().any(|&x| x < 0);
        prop_assert_eq!(res.exists, !has_negative);
        if let Some(l) = res.value {
            let g = limit::grade_vector(&l, &lambda, &model).unwrap();
            prop_assert!(g.weights().iter().all(|&x| x == 0));
            prop_assert_eq!(limit::limit(&l, &lambda, &model).unwrap().value, Some(l));
        }
    }

    #[test]
    fn conjugation_equivariance(seed in any::<u64>(), which in 0usize..5, n in 1usize..4) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let model = NaturalModel { field: f.clone(), n };
        let w = weights(n, seed);
        let g = common::invertible(f, n, &mut r);
        let v: Vec<_> = (0..n).map(|_| common::sparse_elem(f, &mut r)).collect();
        let plain = limit::limit(&v, &Cocharacter::new(w.clone()), &model).unwrap();
        let moved = limit::limit(&model.act(&g, &v).unwrap(), &Cocharacter::with_conjugator(w, g.clone()).unwrap(), &model).unwrap();
        prop_assert_eq!(plain.exists, moved.exists);
        if let (Some(a), Some(b)) = (plain.value, moved.value) {
            prop_assert_eq!(model.act(&g, &a).unwrap(), b);
        }
    }

    #[test]
    fn torus_cocharacter_pairs_nonzero(chars in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..8)) {
        let mu = limit::torus_to_cocharacter(&chars, 3).unwrap();
        for c in chars.iter().filter(|c| c.iter().any(|&x| x != 0)) {
            let s: i64 = c.iter().zip(&mu.weights).map(|(a, b)| a * b).sum();
            prop_assert_ne!(s, 0);
        }
    }

    #[test]
    fn levi_membership(seed in any::<u64>(), n in 1usize..4) {
        let f = ratgit::Field::prime(5).unwrap();
        let mut r = common::rng(seed);
        let g = common::invertible(&f, n, &mut r);
        let lambda = Cocharacter::zero(n);
        prop_assert_eq!(limit::p_lambda_membership(&g, &lambda).unwrap(), Membership::InLevi);
    }

    #[test]
    fn flatten_round_trip(seed in any::<u64>(), which in 0usize..5, n in 1usize..4, k in 1usize..3) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let ms: Vec<_> = (0..k).map(|_| common::matrix(f, n, &mut r)).collect();
        prop_assert_eq!(unflatten(f, n, &flatten(&ms)).unwrap(), ms);
    }

    #[test]
    fn cocharacter_json_round_trip(seed in any::<u64>(), n in 1usize..4) {
        let f = ratgit::Field::rationals();
        let mut r = common::rng(seed);
        let c = Cocharacter::with_conjugator(weights(n, seed), common::invertible(&f, n, &mut r)).unwrap();
        prop_assert_eq!(Cocharacter::from_json(&f, &c.to_json()).unwrap(), c);
    }
}

#[test]
fn unipotent_radical_membership() {
    let f = ratgit::Field::rationals();
    let u = ratgit::Matrix::from_ints(&f, &[&[1, 5], &[0, 1]]);
    let lambda = Cocharacter::new(vec![1, -1]);
    assert_eq!(limit::p_lambda_membership(&u, &lambda).unwrap(), Membership::InRuP);
    assert_eq!(limit::p_lambda_membership(&u.transpose(), &lambda).unwrap(), Membership::NotInP);
}

#[test]
fn nonlinear_rank_mismatch_is_error() {
    let f = ratgit::Field::rationals();
    let model = NaturalModel { field: f.clone(), n: 2 };
    assert!(limit::limit(&[f.one(), f.one()], &Cocharacter::new(vec![1]), &model).is_err());
}
