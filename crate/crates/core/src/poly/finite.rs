//! Cantor–Zassenhaus factorization over finite fields: distinct-degree then
//! equal-degree splitting, with the trace map in characteristic 2.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{raw, Poly};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

fn field_size(f: &Field) -> Result<BigUint> {
    f.size()
        .ok_or_else(|| Error::Domain(format!("{} is not finite", f.descriptor())))
}

/// Splits a monic square-free polynomial into products of irreducibles of equal degree.
pub(crate) fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field_size(field)?;
    let x = vec![field.zero(), field.one()];
    let mut rest = f.coeffs().to_vec();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((Poly::new(field, rest.clone()), rest.len() - 1));
            break;
        }
        h = raw::powmod_big(field, &h, &q, &rest);
        let g = raw::gcd(field, &rest, &raw::sub(field, &h, &x));
        if g.len() > 1 {
            rest = raw::div_exact(field, &rest, &g)?.expect("gcd divides");
            h = raw::rem(field, &h, &rest)?;
            out.push((Poly::new(field, g), d));
        }
    }
    Ok(out)
}

/// Splits a product of distinct irreducibles of degree d.
pub(crate) fn equal_degree(g: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = g.deg();
    if n == d {
        return Ok(vec![g.clone()]);
    }
    let field = g.field();
    let q = field_size(field)?;
    let p = field.characteristic();
    let m = g.coeffs();
    for _ in 0..10_000 {
        let mut a: Vec<Elem> = (0..n).map(|_| field.random(rng)).collect();
        raw::trim(field, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // trace from GF(q^d) to GF(2)
            let bits = (q.bits() - 1) as usize * d;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..bits {
                cur = raw::mulmod(field, &cur, &cur, m);
                acc = raw::add(field, &acc, &cur);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / 2u32;
            let pw = raw::powmod_big(field, &a, &e, m);
            raw::sub(field, &pw, &[field.one()])
        };
        let h = raw::gcd(field, m, &b);
        if h.len() > 1 && h.len() < m.len() {
            let hp = Poly::new(field, h);
            let other = g.div_exact(&hp)?.expect("gcd divides");
            let mut out = equal_degree(&hp, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
    Err(Error::Domain("equal-degree splitting did not converge".into()))
}

pub(crate) fn factor_squarefree_finite(f: &Poly) -> Result<Vec<Poly>> {
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f)? {
        out.extend(equal_degree(&g, d, &mut rng)?);
    }
    Ok(out)
}

/// All roots in the field, sorted canonically.
pub fn roots_finite(f: &Poly) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let q = field_size(field)?;
    let f = f.monic();
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    let x = vec![field.zero(), field.one()];
    let xq = raw::powmod_big(field, &x, &q, f.coeffs());
    let g = raw::gcd(field, f.coeffs(), &raw::sub(field, &xq, &x));
    if g.len() <= 1 {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7007);
    let lin = equal_degree(&Poly::new(field, g), 1, &mut rng)?;
    let mut roots: Vec<Elem> = lin.iter().map(|l| field.neg(&l.coeff(0))).collect();
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_over_gf2() {
        let f2 = Field::prime(2).unwrap();
        let f = Poly::parse(&f2, "T^4+T").unwrap();
        let fs = factor_squarefree_finite(&f).unwrap();
        let prod = fs.iter().fold(Poly::one(&f2), |a, b| a.mul(b));
        assert_eq!(prod, f);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn roots_in_gf4() {
        let f4 = Field::finite(2, 2).unwrap();
        let f = Poly::parse(&f4, "T^2+T+1").unwrap();
        assert_eq!(roots_finite(&f).unwrap().len(), 2);
    }
}
