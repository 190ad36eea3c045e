mod common;

use proptest::prelude::*;
use ratgit::poly::{self, Poly};
use ratgit::Field;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>(), which in 0usize..5) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let (a, b, c) = (f.random(&mut r), f.random(&mut r), f.random(&mut r));
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert!(f.is_zero(&f.sub(&a, &a)));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn division_with_remainder(seed in any::<u64>(), which in 0usize..5, da in 0usize..7, db in 0usize..4) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let (a, b) = (common::poly(f, da, &mut r), common::poly(f, db, &mut r));
        let (q, rem) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&rem), a.clone());
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
    }

    #[test]
    fn factorization_reassembles(seed in any::<u64>(), which in 0usize..4, d in 1usize..7) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let p = common::poly(f, d, &mut r);
        let rep = poly::factor(&p).unwrap();
        prop_assert_eq!(rep.product(f), p.clone());
        for (q, _) in &rep.factors {
            prop_assert!(q.is_monic());
            prop_assert!(poly::factor(q).unwrap().is_irreducible());
        }
    }

    #[test]
    fn squarefree_parts(seed in any::<u64>(), which in 0usize..5, d in 1usize..6) {
        let f = &common::fields()[which];
        let mut r = common::rng(seed);
        let a = common::poly(f, d, &mut r).monic();
        let sq = a.mul(&a);
        prop_assert!(!poly::squarefree_test(&sq).unwrap() || a.deg() == 0);
        let parts = poly::squarefree_decomposition(&a).unwrap();
        let prod = parts.iter().fold(Poly::one(f), |acc, (g, m)| acc.mul(&g.pow(*m as u64)));
        prop_assert_eq!(prod, a.clone());
        prop_assert!(poly::squarefree_test(&poly::radical(&a).unwrap()).unwrap());
    }
}

#[test]
fn inseparable_irreducible() {
    let k = ratgit::fields::parse_descriptor("Fp(t):p=2").unwrap();
    let p = Poly::parse(&k, "T^2+t").unwrap();
    assert!(poly::squarefree_test(&p).unwrap());
    assert!(!poly::is_separable(&p).unwrap());
    assert!(poly::factor(&p).unwrap().is_irreducible());
}

#[test]
fn finite_roots() {
    let f = Field::prime(7).unwrap();
    let p = Poly::parse(&f, "T^3-1").unwrap();
    assert_eq!(poly::roots_finite(&p).unwrap().len(), 3);
}
