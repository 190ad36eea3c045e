use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ratgit::g2::{self, Convention, RootSystem, Strategy, Word};
use ratgit::limit::flatten;
use ratgit::orbit::{accessibility_graph, Budget, FlagModel};
use ratgit::{endo, poly, tuple, Field};
use ratgit_bench::{inseparable_companion, nilpotent, rational_poly};

fn fields_and_polys(c: &mut Criterion) {
    let p = rational_poly();
    c.bench_function("factor_rational_octic", |b| b.iter(|| poly::factor(black_box(&p)).unwrap()));
}

fn endomorphisms(c: &mut Criterion) {
    let m = inseparable_companion();
    c.bench_function("closedness_T12_plus_t", |b| b.iter(|| endo::is_cocharacter_closed(black_box(&m)).unwrap()));
    let q = Field::rationals();
    let j = nilpotent(&q, 6);
    c.bench_function("semisimplify_nilpotent_6", |b| b.iter(|| endo::semisimplification(black_box(&j)).unwrap()));
}

fn graphs(c: &mut Criterion) {
    let f = Field::prime(2).unwrap();
    let j = nilpotent(&f, 3);
    let model = FlagModel::endo(&f, 3).unwrap();
    let budget = Budget::default();
    c.bench_function("access_graph_j3_f2", |b| {
        b.iter(|| accessibility_graph(black_box(&flatten(&[j.clone()])), &model, &budget).unwrap())
    });
}

fn tuples(c: &mut Criterion) {
    let f = Field::prime(3).unwrap();
    let t = vec![nilpotent(&f, 4), nilpotent(&f, 4).transpose()];
    c.bench_function("meataxe_pair_f3", |b| b.iter(|| tuple::is_semisimple(black_box(&t)).unwrap()));
}

fn root_groups(c: &mut Criterion) {
    let sys = RootSystem::new(Convention::default()).unwrap();
    let q = Field::rationals();
    let w = Word::parse(&q, "u(3a+2b;1)*u(3a+b;2)*u(2a+b;-1)*u(a+b;3)*u(b;1)*u(a;1)").unwrap();
    c.bench_function("collect_reversed_word", |b| b.iter(|| sys.collect(black_box(&w), Strategy::LeftmostFirst).unwrap()));
    c.bench_function("figure_p3", |b| b.iter(|| g2::figure_edges(3, Convention::default()).unwrap()));
}

criterion_group!(benches, fields_and_polys, endomorphisms, graphs, tuples, root_groups);
criterion_main!(benches);
