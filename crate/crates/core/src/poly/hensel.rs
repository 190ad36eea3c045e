//! Linear Hensel lifting of a coprime factorization modulo a prime element π
//! of a Euclidean base ring (Z with π = p, or F_p[t] with π irreducible).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::raw;
use crate::error::Result;
use crate::fields::fpx::{self, Fpx};
use crate::fields::{Elem, Field};

pub(crate) trait LiftBase {
    type R: Clone;
    fn residue(&self) -> &Field;
    fn zero(&self) -> Self::R;
    fn add(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn sub(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn mul(&self, a: &Self::R, b: &Self::R) -> Self::R;
    fn to_residue(&self, a: &Self::R) -> Elem;
    fn from_residue(&self, e: &Elem) -> Self::R;
    /// Canonical representative of a modulo π^k.
    fn reduce(&self, a: &Self::R, k: usize) -> Self::R;
    /// Exact quotient a / π^k.
    fn shift_down(&self, a: &Self::R, k: usize) -> Self::R;
    fn shift_up(&self, a: &Self::R, k: usize) -> Self::R;
}

fn pmul<B: LiftBase>(b: &B, x: &[B::R], y: &[B::R]) -> Vec<B::R> {
    if x.is_empty() || y.is_empty() {
        return vec![];
    }
    let mut out = vec![b.zero(); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, c) in y.iter().enumerate() {
            out[i + j] = b.add(&out[i + j], &b.mul(a, c));
        }
    }
    out
}

fn to_residue_poly<B: LiftBase>(b: &B, x: &[B::R]) -> Vec<Elem> {
    let f = b.residue();
    let mut v: Vec<Elem> = x.iter().map(|c| b.to_residue(c)).collect();
    raw::trim(f, &mut v);
    v
}

fn from_residue_poly<B: LiftBase>(b: &B, x: &[Elem], len: usize) -> Vec<B::R> {
    let mut v: Vec<B::R> = x.iter().map(|c| b.from_residue(c)).collect();
    v.resize(len, b.zero());
    v
}

/// Lifts f ≡ a0·b0 (mod π) to f ≡ a·b (mod π^n). f, a0, b0 monic, gcd(a0, b0) = 1.
fn lift_pair<B: LiftBase>(
    b: &B,
    f: &[B::R],
    a0: &[Elem],
    b0: &[Elem],
    n: usize,
) -> Result<(Vec<B::R>, Vec<B::R>)> {
    let field = b.residue();
    // u·b0 ≡ 1 (mod a0)
    let (g, _, u) = raw::xgcd(field, a0, b0)?;
    debug_assert_eq!(g.len(), 1);
    let ginv = field.inv(&g[0])?;
    let u = raw::scale(field, &u, &ginv);
    let mut a = from_residue_poly(b, a0, a0.len());
    let mut bb = from_residue_poly(b, b0, b0.len());
    for k in 1..n {
        let prod = pmul(b, &a, &bb);
        let e: Vec<B::R> = f
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let d = match prod.get(i) {
                    Some(x) => b.sub(c, x),
                    None => c.clone(),
                };
                b.shift_down(&b.reduce(&d, k + 1), k)
            })
            .collect();
        let eb = to_residue_poly(b, &e);
        if eb.is_empty() {
            continue;
        }
        let sa = raw::rem(field, &raw::mul(field, &eb, &u), a0)?;
        let t = raw::sub(field, &eb, &raw::mul(field, b0, &sa));
        let sb = raw::div_exact(field, &t, a0)?.expect("lifting step divides");
        for (i, c) in sa.iter().enumerate() {
            let up = b.shift_up(&b.from_residue(c), k);
            a[i] = b.reduce(&b.add(&a[i], &up), k + 1);
        }
        for (i, c) in sb.iter().enumerate() {
            let up = b.shift_up(&b.from_residue(c), k);
            bb[i] = b.reduce(&b.add(&bb[i], &up), k + 1);
        }
    }
    Ok((a, bb))
}

/// Lifts the monic residue factorization of monic f to precision π^n.
pub(crate) fn lift_factors<B: LiftBase>(
    b: &B,
    f: &[B::R],
    factors: &[Vec<Elem>],
    n: usize,
) -> Result<Vec<Vec<B::R>>> {
    let field = b.residue();
    let mut out = Vec::with_capacity(factors.len());
    let mut cur: Vec<B::R> = f.iter().map(|c| b.reduce(c, n)).collect();
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(cur.clone());
            break;
        }
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![field.one()], |acc, g| raw::mul(field, &acc, g));
        let (a, r) = lift_pair(b, &cur, &factors[i], &rest, n)?;
        out.push(a);
        cur = r;
    }
    Ok(out)
}

/// Z with a prime p.
pub(crate) struct IntBase {
    pub p: u64,
    field: Field,
    pows: Vec<BigInt>,
}

impl IntBase {
    pub fn new(p: u64, n: usize) -> IntBase {
        let mut pows = vec![BigInt::from(1)];
        for _ in 0..=n + 1 {
            let last = pows.last().unwrap().clone();
            pows.push(last * p);
        }
        IntBase {
            p,
            field: Field::prime(p).expect("prime"),
            pows,
        }
    }

    pub fn modulus(&self, k: usize) -> &BigInt {
        &self.pows[k]
    }
}

impl LiftBase for IntBase {
    type R = BigInt;
    fn residue(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn to_residue(&self, a: &BigInt) -> Elem {
        let r = a.mod_floor(&BigInt::from(self.p));
        Elem::Fp(r.to_u64().unwrap())
    }
    fn from_residue(&self, e: &Elem) -> BigInt {
        match e {
            Elem::Fp(v) => BigInt::from(*v),
            _ => unreachable!(),
        }
    }
    fn reduce(&self, a: &BigInt, k: usize) -> BigInt {
        a.mod_floor(&self.pows[k])
    }
    fn shift_down(&self, a: &BigInt, k: usize) -> BigInt {
        debug_assert!((a % &self.pows[k]).is_zero());
        a / &self.pows[k]
    }
    fn shift_up(&self, a: &BigInt, k: usize) -> BigInt {
        a * &self.pows[k]
    }
}

/// Symmetric representative in (-m/2, m/2].
pub(crate) fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if (&r * 2u32) > *m {
        r - m
    } else {
        r
    }
}

/// F_p[t] with an irreducible π; the residue field is GF(p^deg π) presented by π.
pub(crate) struct FpxBase {
    pub p: u64,
    pub pi: Fpx,
    field: Field,
    pows: std::cell::RefCell<Vec<Fpx>>,
}

impl FpxBase {
    pub fn new(p: u64, pi: Fpx) -> FpxBase {
        let field = Field::galois_with_modulus(p, pi.clone());
        FpxBase {
            p,
            pi,
            field,
            pows: std::cell::RefCell::new(vec![vec![1]]),
        }
    }

    pub fn pi_pow(&self, k: usize) -> Fpx {
        let mut pows = self.pows.borrow_mut();
        while pows.len() <= k {
            let next = fpx::mul(pows.last().unwrap(), &self.pi, self.p);
            pows.push(next);
        }
        pows[k].clone()
    }
}

impl LiftBase for FpxBase {
    type R = Fpx;
    fn residue(&self) -> &Field {
        &self.field
    }
    fn zero(&self) -> Fpx {
        vec![]
    }
    fn add(&self, a: &Fpx, b: &Fpx) -> Fpx {
        fpx::add(a, b, self.p)
    }
    fn sub(&self, a: &Fpx, b: &Fpx) -> Fpx {
        fpx::sub(a, b, self.p)
    }
    fn mul(&self, a: &Fpx, b: &Fpx) -> Fpx {
        fpx::mul(a, b, self.p)
    }
    fn to_residue(&self, a: &Fpx) -> Elem {
        let mut r = fpx::rem(a, &self.pi, self.p);
        let e = self.pi.len() - 1;
        if e == 1 {
            return Elem::Fp(r.first().copied().unwrap_or(0));
        }
        r.resize(e, 0);
        Elem::Gf(r)
    }
    fn from_residue(&self, e: &Elem) -> Fpx {
        let mut v = match e {
            Elem::Fp(x) => vec![*x],
            Elem::Gf(v) => v.clone(),
            _ => unreachable!(),
        };
        fpx::trim(&mut v);
        v
    }
    fn reduce(&self, a: &Fpx, k: usize) -> Fpx {
        fpx::rem(a, &self.pi_pow(k), self.p)
    }
    fn shift_down(&self, a: &Fpx, k: usize) -> Fpx {
        fpx::div_exact(a, &self.pi_pow(k), self.p).expect("exact division by π^k")
    }
    fn shift_up(&self, a: &Fpx, k: usize) -> Fpx {
        fpx::mul(a, &self.pi_pow(k), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_integer_factorization() {
        // (T - 3)(T + 5) = T^2 + 2T - 15 modulo 7
        let b = IntBase::new(7, 6);
        let f: Vec<BigInt> = [-15, 2, 1].iter().map(|&c| BigInt::from(c)).collect();
        let field = b.residue().clone();
        let a0 = vec![field.from_int(-3), field.one()];
        let b0 = vec![field.from_int(5), field.one()];
        let lifted = lift_factors(&b, &f, &[a0, b0], 4).unwrap();
        let m = b.modulus(4).clone();
        assert_eq!(symmetric(&lifted[0][0], &m), BigInt::from(-3));
        assert_eq!(symmetric(&lifted[1][0], &m), BigInt::from(5));
    }
}
