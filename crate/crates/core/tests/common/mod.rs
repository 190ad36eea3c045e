#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratgit::fields::parse_descriptor;
use ratgit::{Elem, Field, Matrix, Poly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::prime(5).unwrap(),
        Field::finite(2, 2).unwrap(),
        parse_descriptor("Fp(t):p=2").unwrap(),
        parse_descriptor("ext(Q;X^2-2;r)").unwrap(),
    ]
}

pub fn sparse_elem(f: &Field, rng: &mut ChaCha8Rng) -> Elem {
    if rand::Rng::gen_bool(rng, 0.4) {
        f.zero()
    } else {
        f.random(rng)
    }
}

pub fn matrix(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| sparse_elem(f, rng)).collect()).collect();
    Matrix::from_rows(f, rows).unwrap()
}

pub fn invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
        let m = Matrix::from_rows(f, rows).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn poly(f: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    let mut c: Vec<Elem> = (0..deg).map(|_| sparse_elem(f, rng)).collect();
    c.push(f.random_nonzero(rng));
    Poly::new(f, c)
}
