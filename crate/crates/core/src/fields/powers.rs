use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{fpx, rf_normalize, Elem, Field, Kind};
use crate::error::{Error, Result};
use crate::poly::{factor, roots_finite, Poly};

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// The least n-th root of x in the field, if any.
pub(crate) fn is_nth_power(field: &Field, x: &Elem, n: u64) -> Result<Option<Elem>> {
    if n == 0 {
        return Err(Error::Domain("exponent must be positive".into()));
    }
    if field.is_zero(x) || n == 1 {
        return Ok(Some(x.clone()));
    }
    if field.is_finite() {
        return least_root_of_binomial(field, x, n);
    }
    match (field.kind(), x) {
        (Kind::Rationals, Elem::Q(q)) => {
            let k = u32::try_from(n).map_err(|_| Error::Domain("exponent too large".into()))?;
            let neg = q.is_negative();
            if neg && n % 2 == 0 {
                return Ok(None);
            }
            let num = q.numer().abs();
            let (Some(a), Some(b)) = (exact_root(&num, k), exact_root(q.denom(), k)) else {
                return Ok(None);
            };
            let a = if neg { -a } else { a };
            Ok(Some(Elem::Q(BigRational::new(a, b))))
        }
        (Kind::RationalFunctions { p, .. }, Elem::Rf(num, den)) => rf_root(*p, num, den, n),
        (Kind::Extension { .. }, _) => {
            let p = field.characteristic();
            if p > 0 && n % p == 0 && !field.is_perfect() {
                return match field.pth_root(x)? {
                    Some(r) => is_nth_power(field, &r, n / p),
                    None => Ok(None),
                };
            }
            least_root_of_binomial(field, x, n)
        }
        _ => Err(Error::Domain("element does not belong to the field".into())),
    }
}

fn least_root_of_binomial(field: &Field, x: &Elem, n: u64) -> Result<Option<Elem>> {
    let mut coeffs = vec![field.zero(); n as usize + 1];
    coeffs[0] = field.neg(x);
    coeffs[n as usize] = field.one();
    let f = Poly::new(field, coeffs);
    if field.is_finite() {
        return Ok(roots_finite(&f)?.into_iter().next());
    }
    let mut roots: Vec<Elem> = factor(&f)?
        .factors
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| field.neg(&g.coeff(0)))
        .collect();
    roots.sort();
    Ok(roots.into_iter().next())
}

/// Root of N/D in F_p(t) from the factorizations of N and D over F_p.
fn rf_root(p: u64, num: &[u64], den: &[u64], n: u64) -> Result<Option<Elem>> {
    let fp = Field::prime(p)?;
    let to_poly = |v: &[u64]| Poly::new(&fp, v.iter().map(|&c| Elem::Fp(c)).collect());
    let root_part = |v: &[u64]| -> Result<Option<(u64, Vec<u64>)>> {
        let rep = factor(&to_poly(v))?;
        let mut acc = vec![1u64];
        for (g, m) in &rep.factors {
            if *m as u64 % n != 0 {
                return Ok(None);
            }
            let gv: Vec<u64> = g
                .coeffs()
                .iter()
                .map(|c| match c {
                    Elem::Fp(x) => *x,
                    _ => unreachable!(),
                })
                .collect();
            acc = fpx::mul(&acc, &fpx::pow(&gv, *m as u64 / n, p), p);
        }
        let Elem::Fp(u) = rep.unit else { unreachable!() };
        Ok(Some((u, acc)))
    };
    let Some((c, ny)) = root_part(num)? else {
        return Ok(None);
    };
    let Some((_, dy)) = root_part(den)? else {
        return Ok(None);
    };
    // n-th roots of the leading constant; pick the least resulting element
    let mut best: Option<Elem> = None;
    for r in roots_finite(&Poly::new(
        &fp,
        {
            let mut v = vec![fp.zero(); n as usize + 1];
            v[0] = fp.neg(&Elem::Fp(c));
            v[n as usize] = fp.one();
            v
        },
    ))? {
        let Elem::Fp(r) = r else { unreachable!() };
        let cand = rf_normalize(fpx::scale(&ny, r, p), dy.clone(), p);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(best)
}
