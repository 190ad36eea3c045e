//! Benchmark fixtures for the core kernels.

use ratgit::endo::companion_of;
use ratgit::fields::parse_descriptor;
use ratgit::{Field, Matrix, Poly};

pub fn inseparable_companion() -> Matrix {
    let k = parse_descriptor("Fp(t):p=2").expect("descriptor");
    companion_of(&k, "T^12+t").expect("companion")
}

pub fn rational_poly() -> Poly {
    let q = Field::rationals();
    Poly::parse(&q, "T^8-2*T^6+3*T^4-T^2+5").expect("literal")
}

pub fn nilpotent(field: &Field, n: usize) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, field.one());
    }
    m
}
