mod common;

use proptest::prelude::*;
use ratgit::g2::{self, pairing, Convention, Letter, Strategy, POSITIVE};
use ratgit::{Coweight, Field, RootSystem, Word};

fn convention(i: usize) -> Convention {
    Convention::all()[i % 16]
}

fn field(i: usize) -> Field {
    match i % 5 {
        0 => Field::rationals(),
        1 => Field::prime(2).unwrap(),
        2 => Field::prime(3).unwrap(),
        3 => Field::prime(5).unwrap(),
        _ => Field::finite(3, 2).unwrap(),
    }
}

fn word(f: &Field, seed: u64, len: usize) -> Word {
    let mut r = common::rng(seed);
    let letters = (0..len)
        .map(|_| Letter {
            root: POSITIVE[rand::Rng::gen_range(&mut r, 0..6)],
            coeff: f.random(&mut r),
        })
        .collect();
    Word { field: f.clone(), letters }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree(seed in any::<u64>(), c in 0usize..16, fi in 0usize..5, len in 0usize..9) {
        let rs = RootSystem::new(convention(c)).unwrap();
        let f = field(fi);
        let w = word(&f, seed, len);
        let a = rs.collect(&w, Strategy::LeftmostFirst).unwrap();
        let b = rs.collect(&w, Strategy::RightmostFirst).unwrap();
        prop_assert!(a.is_normal());
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(rs.collect(&a, Strategy::LeftmostFirst).unwrap(), a.clone());
        prop_assert!(rs.collect(&w.concat(&w.inverse()), Strategy::LeftmostFirst).unwrap().letters.is_empty());
        let text = a.to_string();
        let back = Word::parse(&f, &text);
        prop_assert!(back.is_ok(), "{} over {}: {:?}", text, f.descriptor(), back);
        prop_assert_eq!(back.unwrap(), a);
    }

    #[test]
    fn collection_commutes_with_torus(seed in any::<u64>(), c in 0usize..16, fi in 0usize..5, x in -3i64..=3, y in -3i64..=3) {
        let rs = RootSystem::new(convention(c)).unwrap();
        let f = field(fi);
        let mut r = common::rng(!seed);
        let a = f.random_nonzero(&mut r);
        let l = Coweight::new(x, y);
        let w = word(&f, seed, 6);
        let lhs = rs.collect(&w.torus_conjugate(l, &a).unwrap(), Strategy::LeftmostFirst).unwrap();
        let rhs = rs.collect(&w, Strategy::LeftmostFirst).unwrap().torus_conjugate(l, &a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrices_match_over_q(seed in any::<u64>(), c in 0usize..16, len in 0usize..6) {
        let rs = RootSystem::new(convention(c)).unwrap();
        let q = Field::rationals();
        let w = word(&q, seed, len);
        let collected = rs.collect(&w, Strategy::RightmostFirst).unwrap();
        prop_assert_eq!(rs.word_matrix(&collected).unwrap(), rs.word_matrix(&w).unwrap());
    }

    #[test]
    fn limits_are_centralised(seed in any::<u64>(), c in 0usize..16, fi in 0usize..5, x in -3i64..=3, y in -3i64..=3) {
        let rs = RootSystem::new(convention(c)).unwrap();
        let f = field(fi);
        let l = Coweight::new(x, y);
        let w = word(&f, seed, 5);
        let collected = rs.collect(&w, Strategy::LeftmostFirst).unwrap();
        match rs.word_limit(&w, l).unwrap() {
            Some(lim) => {
                prop_assert!(lim.letters.iter().all(|x| pairing(x.root, l) == 0));
                prop_assert!(collected.letters.iter().all(|x| pairing(x.root, l) >= 0));
                prop_assert_eq!(rs.word_limit(&lim, l).unwrap(), Some(lim.clone()));
            }
            None => prop_assert!(collected.letters.iter().any(|x| pairing(x.root, l) < 0)),
        }
        prop_assert!(rs.word_limit(&w, Coweight::RHO).unwrap().unwrap().letters.is_empty());
    }
}

#[test]
fn jacobi_for_every_convention() {
    for c in Convention::all() {
        let rs = RootSystem::new(c).unwrap();
        assert_eq!(rs.jacobi_violations(), 0);
        assert!(rs.derived_sign() == 1 || rs.derived_sign() == -1);
    }
}

#[test]
fn negative_letters_are_rejected() {
    let rs = RootSystem::new(Convention::default()).unwrap();
    let q = Field::rationals();
    let w = Word::parse(&q, "u(-b;1)*u(a;2)").unwrap();
    assert!(matches!(
        rs.collect(&w, Strategy::LeftmostFirst),
        Err(ratgit::Error::NonClosedSupport(_))
    ));
}

#[test]
fn representatives_collect_to_themselves() {
    let rs = RootSystem::new(Convention::default()).unwrap();
    for p in [2, 3, 5] {
        let f = g2::figure_field(p).unwrap();
        for label in g2::class_labels(p) {
            let w = g2::representative(&f, label).unwrap();
            assert_eq!(rs.collect(&w, Strategy::LeftmostFirst).unwrap(), w, "{label} at p={p}");
        }
    }
}
