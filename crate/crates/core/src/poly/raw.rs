//! Coefficient-vector polynomial arithmetic over a `Field`, low degree first,
//! trimmed of trailing zeros.

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

pub fn trim(f: &Field, v: &mut Vec<Elem>) {
    while let Some(last) = v.last() {
        if f.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

pub fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        r.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, &mut r);
    r
}

pub fn neg(f: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(f, a, &neg(f, b))
}

pub fn scale(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    if f.is_zero(c) {
        return vec![];
    }
    let mut r: Vec<Elem> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut r);
    r
}

pub fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if f.is_zero(y) {
                continue;
            }
            r[i + j] = f.add(&r[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut r);
    r
}

/// Quotient and remainder of a by b.
pub fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    if b.is_empty() {
        return Err(Error::Domain("division by the zero polynomial".into()));
    }
    if a.len() < b.len() {
        return Ok((vec![], a.to_vec()));
    }
    let db = b.len() - 1;
    let inv = f.inv(b.last().unwrap())?;
    let monic_b = f.is_one(b.last().unwrap());
    let mut r = a.to_vec();
    let mut q = vec![f.zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if f.is_zero(top) {
            continue;
        }
        let c = if monic_b { top.clone() } else { f.mul(top, &inv) };
        for (j, y) in b.iter().enumerate().take(db) {
            if f.is_zero(y) {
                continue;
            }
            r[k + j] = f.sub(&r[k + j], &f.mul(&c, y));
        }
        r[k + db] = f.zero();
        q[k] = c;
    }
    r.truncate(db);
    trim(f, &mut r);
    trim(f, &mut q);
    Ok((q, r))
}

pub fn rem(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    Ok(divrem(f, a, b)?.1)
}

/// Exact quotient, or None if b does not divide a.
pub fn div_exact(f: &Field, a: &[Elem], b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let (q, r) = divrem(f, a, b)?;
    Ok(if r.is_empty() { Some(q) } else { None })
}

pub fn monic(f: &Field, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => vec![],
        Some(l) if f.is_one(l) => a.to_vec(),
        Some(l) => {
            let inv = f.inv(l).expect("nonzero leading coefficient");
            a.iter().map(|x| f.mul(x, &inv)).collect()
        }
    }
}

pub fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns (g, s, t) with s·a + t·b = g and g monic.
pub fn xgcd(f: &Field, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>, Vec<Elem>)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1)?;
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => Ok((vec![], vec![], vec![])),
        Some(l) => {
            let inv = f.inv(l)?;
            Ok((scale(f, &r0, &inv), scale(f, &s0, &inv), scale(f, &t0, &inv)))
        }
    }
}

pub fn derivative(f: &Field, a: &[Elem]) -> Vec<Elem> {
    let mut r: Vec<Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
        .collect();
    trim(f, &mut r);
    r
}

pub fn eval(f: &Field, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Composition a(b).
pub fn compose(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut acc: Vec<Elem> = vec![];
    for c in a.iter().rev() {
        acc = add(f, &mul(f, &acc, b), std::slice::from_ref(c));
    }
    acc
}

/// Substitution T -> T^k.
pub fn inflate(f: &Field, a: &[Elem], k: usize) -> Vec<Elem> {
    if a.is_empty() {
        return vec![];
    }
    let mut r = vec![f.zero(); (a.len() - 1) * k + 1];
    for (i, c) in a.iter().enumerate() {
        r[i * k] = c.clone();
    }
    r
}

pub fn mulmod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    rem(f, &mul(f, a, b), m).expect("nonzero modulus")
}

pub fn powmod_big(f: &Field, a: &[Elem], e: &num_bigint::BigUint, m: &[Elem]) -> Vec<Elem> {
    let base = rem(f, a, m).expect("nonzero modulus");
    let mut r = rem(f, &[f.one()], m).expect("nonzero modulus");
    for i in (0..e.bits()).rev() {
        r = mulmod(f, &r, &r, m);
        if e.bit(i) {
            r = mulmod(f, &r, &base, m);
        }
    }
    r
}

pub fn pow(f: &Field, a: &[Elem], mut e: u64) -> Vec<Elem> {
    let mut base = a.to_vec();
    let mut r = vec![f.one()];
    while e > 0 {
        if e & 1 == 1 {
            r = mul(f, &r, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    r
}

/// Maps every coefficient through `g`.
pub fn map(a: &[Elem], g: impl Fn(&Elem) -> Elem) -> Vec<Elem> {
    a.iter().map(g).collect()
}

/// Embeds a polynomial over a subfield into `f`.
pub fn embed(f: &Field, sub: &Field, a: &[Elem]) -> Result<Vec<Elem>> {
    a.iter().map(|c| f.embed(sub, c)).collect()
}

/// Taylor shift T -> T + c.
pub fn shift(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    compose(f, a, &[c.clone(), f.one()])
}
