mod common;

use proptest::prelude::*;
use ratgit::limit::flatten;
use ratgit::orbit::{self, is_closed_by_enumeration, Budget, FlagModel};
use ratgit::tuple;
use ratgit::Field;

fn perfect_fields() -> Vec<Field> {
    let mut fs = common::fields();
    fs.remove(3);
    fs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn semisimplified_tuple_is_semisimple(seed in any::<u64>(), which in 0usize..4, n in 1usize..4, r in 1usize..3) {
        let f = &perfect_fields()[which];
        let mut rng = common::rng(seed);
        let t: Vec<_> = (0..r).map(|_| common::matrix(f, n, &mut rng)).collect();
        let report = tuple::is_semisimple(&t).unwrap();
        prop_assert_eq!(report.composition_factors.iter().map(|c| c.dim).sum::<usize>(), n);
        prop_assert_eq!(report.semisimple, report.radical_dim == 0);
        prop_assert_eq!(report.semisimple, report.radical_witness.is_none());
        let s = tuple::semisimplify_tuple(&t).unwrap();
        let sr = tuple::is_semisimple(&s).unwrap();
        prop_assert!(sr.semisimple);
        let dims = |rep: &ratgit::ModuleReport| {
            let mut d: Vec<_> = rep.composition_factors.iter().map(|c| c.dim).collect();
            d.sort();
            d
        };
        prop_assert_eq!(dims(&sr), dims(&report));
        if report.semisimple {
            prop_assert_eq!(sr.algebra_dim, report.algebra_dim);
        }
    }

    #[test]
    fn radical_is_conjugation_invariant(seed in any::<u64>(), which in 0usize..4, n in 1usize..4, r in 1usize..3) {
        let f = &perfect_fields()[which];
        let mut rng = common::rng(seed);
        let t: Vec<_> = (0..r).map(|_| common::matrix(f, n, &mut rng)).collect();
        let g = common::invertible(f, n, &mut rng);
        let gi = g.inverse().unwrap();
        let c: Vec<_> = t.iter().map(|m| g.mul(m).mul(&gi)).collect();
        let (a, b) = (tuple::is_semisimple(&t).unwrap(), tuple::is_semisimple(&c).unwrap());
        prop_assert_eq!(a.algebra_dim, b.algebra_dim);
        prop_assert_eq!(a.radical_dim, b.radical_dim);
        prop_assert_eq!(a.semisimple, b.semisimple);
    }

    #[test]
    fn seed_does_not_change_verdict(seed in any::<u64>(), n in 1usize..4) {
        let f = Field::prime(3).unwrap();
        let mut rng = common::rng(seed);
        let t = vec![common::matrix(&f, n, &mut rng), common::matrix(&f, n, &mut rng)];
        let a = tuple::is_semisimple_seeded(&t, 1).unwrap();
        let b = tuple::is_semisimple_seeded(&t, seed).unwrap();
        prop_assert_eq!(a.semisimple, b.semisimple);
        prop_assert_eq!(a.radical_dim, b.radical_dim);
    }
}

#[test]
fn pairs_over_f2_match_brute_force() {
    let f = Field::prime(2).unwrap();
    let model = FlagModel::new(&f, 2, 2, Budget::default()).unwrap();
    let mats = orbit::all_matrices(&f, 2, 64).unwrap();
    for a in &mats {
        for b in &mats {
            let t = vec![a.clone(), b.clone()];
            let ss = tuple::is_semisimple(&t).unwrap().semisimple;
            let brute = is_closed_by_enumeration(&model, &flatten(&t)).unwrap();
            assert_eq!(ss, brute, "{} ; {}", a.to_text(), b.to_text());
        }
    }
}

#[test]
fn gcr_needs_invertible_generators() {
    let f = Field::rationals();
    let s = ratgit::Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
    assert!(tuple::gcr_over_k(&[s.clone()]).unwrap().gcr);
    let u = ratgit::Matrix::from_ints(&f, &[&[1, 1], &[0, 1]]);
    assert!(!tuple::gcr_over_k(&[u]).unwrap().gcr);
    assert!(tuple::gcr_over_k(&[ratgit::Matrix::zeros(&f, 2, 2)]).is_err());
}

#[test]
fn imperfect_field_pairs_are_unsupported() {
    let k = ratgit::fields::parse_descriptor("Fp(t):p=2").unwrap();
    let m = ratgit::Matrix::identity(&k, 2);
    let err = tuple::is_semisimple(&[m.clone(), m]).unwrap_err();
    assert!(matches!(err, ratgit::Error::UnsupportedField(_)));
}
