mod common;

use proptest::prelude::*;
use ratgit::endo;
use ratgit::limit::{flatten, unflatten};
use ratgit::orbit::{self, accessibility_graph, check_antisymmetry, export_dot, Budget, FlagModel, OrbitModel};
use ratgit::{Field, Matrix};

fn key_of(m: &Matrix) -> String {
    endo::invariant_factors(m).unwrap().key()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graphs_are_deterministic_and_descend(seed in any::<u64>(), n in 1usize..4, over_f3 in any::<bool>()) {
        let f = if over_f3 { Field::prime(3).unwrap() } else { Field::prime(2).unwrap() };
        let n = if over_f3 { n.min(2) } else { n };
        let mut r = common::rng(seed);
        let m = common::matrix(&f, n, &mut r);
        let model = FlagModel::endo(&f, n).unwrap();
        let budget = Budget::default();
        let p = flatten(std::slice::from_ref(&m));
        let g1 = accessibility_graph(&p, &model, &budget).unwrap();
        let g2 = accessibility_graph(&p, &model, &budget).unwrap();
        prop_assert_eq!(export_dot(&g1), export_dot(&g2));
        prop_assert_eq!(&g1, &g2);
        let dim = |id: &str| {
            let node = g1.node(id).unwrap();
            endo::invariant_factors(&unflatten(&f, n, &node.representative).unwrap()[0]).unwrap().orbit_dimension()
        };
        for e in &g1.edges {
            prop_assert!(dim(&e.from) > dim(&e.to), "{} -> {}", e.from, e.to);
            prop_assert_eq!(orbit::replay(&model, &g1.node(&e.from).unwrap().representative, &e.cocharacter).unwrap(), Some(e.to.clone()));
        }
        let minimal = g1.minimal.clone().unwrap();
        prop_assert_eq!(minimal, endo::semisimplification(&m).unwrap().key());
    }
}

#[test]
fn nilpotent_chain_over_f2() {
    let f = Field::prime(2).unwrap();
    let j3 = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let j21 = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
    let zero = Matrix::zeros(&f, 3, 3);
    let model = FlagModel::endo(&f, 3).unwrap();
    let g = accessibility_graph(&flatten(&[j3.clone()]), &model, &Budget::default()).unwrap();
    let (a, b, c) = (key_of(&j3), key_of(&j21), key_of(&zero));
    assert_eq!(g.nodes.len(), 3);
    assert!(g.has_edge(&a, &b));
    assert!(g.has_edge(&b, &c));
    assert!(g.has_edge(&a, &c));
    assert_eq!(g.minimal.as_deref(), Some(c.as_str()));
    assert_eq!(g.node(&c).unwrap().depth, 1);
}

#[test]
fn companion_reaches_diagonal_over_f5() {
    let f = Field::prime(5).unwrap();
    let m = endo::companion_of(&f, "(T-1)^2*(T-2)").unwrap();
    let model = FlagModel::endo(&f, 3).unwrap();
    let g = accessibility_graph(&flatten(&[m]), &model, &Budget::default()).unwrap();
    let d = Matrix::diagonal(&f, &[f.from_int(1), f.from_int(1), f.from_int(2)]);
    assert_eq!(g.minimal, Some(key_of(&d)));
    assert_eq!(g.nodes.len(), 2);
}

#[test]
fn antisymmetry_on_f2_triples() {
    let f = Field::prime(2).unwrap();
    let model = FlagModel::endo(&f, 3).unwrap();
    let corpus: Vec<_> = orbit::all_matrices(&f, 3, 1 << 10)
        .unwrap()
        .iter()
        .map(|m| flatten(std::slice::from_ref(m)))
        .collect();
    let report = check_antisymmetry(&model, &corpus, &Budget::default()).unwrap();
    assert!(report.holds());
    assert_eq!(report.points, 512);
}

#[test]
fn small_budget_is_reported() {
    let f = Field::prime(2).unwrap();
    let model = FlagModel::endo(&f, 3).unwrap();
    let j3 = Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let budget = Budget { max_nodes: 1, ..Budget::default() };
    let err = accessibility_graph(&flatten(&[j3]), &model, &budget).unwrap_err();
    assert!(matches!(err, ratgit::Error::EnumerationBudgetExceeded(_)));
}

#[test]
fn square_classes_over_q() {
    let q = Field::rationals();
    let model = orbit::SquaresLineModel::new(&q).unwrap();
    let two = model.orbit_key(&[q.from_int(2)]).unwrap();
    assert_eq!(two, model.orbit_key(&[q.from_int(8)]).unwrap());
    assert_ne!(two, model.orbit_key(&[q.from_int(3)]).unwrap());
}
