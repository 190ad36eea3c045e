//! Factorization over Q: modular factorization, Hensel lifting to a Mignotte
//! bound and subset recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hensel::{self, IntBase, LiftBase};
use super::{finite, raw, Poly};
use crate::error::{Error, Result};
use crate::fields::{fpx, Elem, Field};

/// Primitive integer polynomial with positive leading coefficient, proportional to f.
pub(crate) fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f.coeffs().iter().map(|c| c.as_q().unwrap()).collect();
    let den = qs
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs
        .iter()
        .map(|q| (q.numer() * &den) / q.denom())
        .collect();
    primitive_part(&ints)
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if v.last().map(|c| c.is_negative()).unwrap_or(false) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    v.iter().map(|c| c / &g * &sign).collect()
}

fn to_q_poly(q: &Field, v: &[BigInt]) -> Poly {
    Poly::new(q, v.iter().map(|c| Elem::Q(BigRational::from(c.clone()))).collect())
}

/// Exact quotient over Z when b divides a.
fn int_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let q = Field::rationals();
    let (quo, rem) = to_q_poly(&q, a).divrem(&to_q_poly(&q, b)).ok()?;
    if !rem.is_zero() {
        return None;
    }
    let mut out = Vec::with_capacity(quo.coeffs().len());
    for c in quo.coeffs() {
        let r = c.as_q().unwrap();
        if !r.is_integer() {
            return None;
        }
        out.push(r.to_integer());
    }
    Some(out)
}

fn reduce_mod_p(fp: &Field, v: &[BigInt], p: u64) -> Vec<Elem> {
    let mut out: Vec<Elem> = v
        .iter()
        .map(|c| fp.from_bigint(&c.mod_floor(&BigInt::from(p))))
        .collect();
    raw::trim(fp, &mut out);
    out
}

/// Visits index subsets of size s in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let s = idx.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if idx[i] < n - s + i {
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn factor_squarefree_q(f: &Poly) -> Result<Vec<Poly>> {
    let q = f.field().clone();
    let big = primitive_integer(f);
    let n = big.len() - 1;
    if n <= 1 {
        return Ok(vec![f.monic()]);
    }
    let lc = big[n].clone();
    // choose a good prime with few modular factors
    let mut best: Option<(u64, Vec<Vec<Elem>>)> = None;
    let mut found = 0;
    let mut p = 2u64;
    while found < 6 && p < 20_000 {
        p += 1;
        if !fpx::is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = Field::prime(p)?;
        let red = reduce_mod_p(&fp, &big, p);
        if red.len() != n + 1 {
            continue;
        }
        let d = raw::derivative(&fp, &red);
        if raw::gcd(&fp, &red, &d).len() != 1 {
            continue;
        }
        found += 1;
        let fs = finite::factor_squarefree_finite(&Poly::new(&fp, red))?;
        let fs: Vec<Vec<Elem>> = fs.into_iter().map(|g| g.into_coeffs()).collect();
        if fs.len() == 1 {
            return Ok(vec![f.monic()]);
        }
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
    }
    let (p, modular) = best.ok_or_else(|| Error::Domain("no good prime found".into()))?;
    // coefficient bound for lc·g with g | F
    let norm2 = big.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = lc.abs() * (BigInt::one() << n) * norm2 * 2;
    let mut k = 1usize;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let base = IntBase::new(p, k);
    let lc_inv_mod = {
        let m = base.modulus(k);
        let e = lc.extended_gcd(m);
        e.x.mod_floor(m)
    };
    let monic: Vec<BigInt> = big.iter().map(|c| base.reduce(&(c * &lc_inv_mod), k)).collect();
    let mut modular = modular;
    modular.sort_by_key(|g| g.len());
    let lifted = hensel::lift_factors(&base, &monic, &modular, k)?;
    let m = base.modulus(k).clone();

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = big.clone();
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        let mut hit = None;
        loop {
            let lcc = current.last().unwrap().clone();
            let mut prod = vec![lcc];
            for &i in &idx {
                let g = &lifted[remaining[i]];
                let mut next = vec![BigInt::zero(); prod.len() + g.len() - 1];
                for (a, x) in prod.iter().enumerate() {
                    for (b, y) in g.iter().enumerate() {
                        next[a + b] += x * y;
                    }
                }
                prod = next.iter().map(|c| c.mod_floor(&m)).collect();
            }
            let cand: Vec<BigInt> = prod.iter().map(|c| hensel::symmetric(c, &m)).collect();
            let cand = primitive_part(&cand);
            if let Some(quo) = int_div(&current, &cand) {
                hit = Some((idx.clone(), cand, quo));
                break;
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        match hit {
            Some((idx, cand, quo)) => {
                out.push(cand);
                current = quo;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if current.len() > 1 {
        out.push(current);
    }
    Ok(out.iter().map(|g| to_q_poly(&q, g).monic()).collect())
}
