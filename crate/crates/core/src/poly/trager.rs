//! Factorization over a separable simple extension L = K(α) by norms:
//! for a shift h(T) = f(T - cα) with square-free norm N = ∏ N_j over K,
//! the irreducible factors of h are gcd(h, N_j).

use super::squarefree::squarefree_test;
use super::{factor_squarefree, raw, Poly};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

const MAX_SHIFTS: usize = 40;

pub(crate) fn factor_squarefree_ext(f: &Poly) -> Result<Vec<Poly>> {
    let l = f.field().clone();
    let k = l.base().expect("extension").clone();
    if let Some(fk) = f.restrict(&k) {
        let mut out = Vec::new();
        for g in factor_squarefree(&fk)? {
            let gl = g.embed(&l)?;
            out.extend(trager(&gl)?);
        }
        return Ok(out);
    }
    trager(f)
}

/// Candidate shifts: small integers, then small polynomials in the generators of K.
fn shift_candidates(k: &Field) -> Vec<Elem> {
    let p = k.characteristic();
    let bound = if p == 0 { 12 } else { p.min(12) };
    let mut out: Vec<Elem> = (0..bound as i64).map(|i| k.from_int(i)).collect();
    let mut gens = Vec::new();
    let mut cur = Some(k.clone());
    while let Some(f) = cur {
        if let Some(name) = f.generator_name() {
            if let Some(g) = k.variable(name) {
                gens.push(g);
            }
        }
        cur = f.base().cloned();
    }
    let shapes: [&[i64]; 8] = [
        &[0, 1],
        &[1, 1],
        &[0, 0, 1],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
        &[0, 0, 0, 1],
        &[1, 0, 0, 1],
    ];
    for g in &gens {
        for s in shapes {
            let v: Vec<Elem> = s.iter().map(|&c| k.from_int(c)).collect();
            out.push(raw::eval(k, &v, g));
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            out.push(k.mul(a, b));
            out.push(k.add(a, b));
        }
    }
    let mut seen = Vec::new();
    out.retain(|x| {
        if seen.contains(x) {
            false
        } else {
            seen.push(x.clone());
            true
        }
    });
    out.truncate(MAX_SHIFTS);
    out
}

/// N_{L/K}(h) for h ∈ L[T] as the determinant of multiplication by h on L[T] over K[T].
pub(crate) fn norm(h: &Poly) -> Result<Poly> {
    let l = h.field();
    let k = l.base().expect("extension").clone();
    let m = l.minpoly().unwrap().to_vec();
    let d = m.len() - 1;
    // coordinates of h: d polynomials over K
    let mut coords: Vec<Vec<Elem>> = vec![vec![]; d];
    for (i, c) in h.coeffs().iter().enumerate() {
        let Elem::Ext(v) = c else { unreachable!() };
        for (j, x) in v.iter().enumerate() {
            if coords[j].len() <= i {
                coords[j].resize(i + 1, k.zero());
            }
            coords[j][i] = x.clone();
        }
    }
    for c in coords.iter_mut() {
        raw::trim(&k, c);
    }
    // columns: h·α^i
    let mut cols = Vec::with_capacity(d);
    let mut cur = coords;
    for _ in 0..d {
        cols.push(cur.clone());
        // multiply by α
        let top = cur[d - 1].clone();
        let mut next = vec![vec![]; d];
        for j in (1..d).rev() {
            next[j] = cur[j - 1].clone();
        }
        for j in 0..d {
            let t = raw::scale(&k, &top, &m[j]);
            next[j] = raw::sub(&k, &next[j], &t);
        }
        cur = next;
    }
    let mut a: Vec<Vec<Vec<Elem>>> = (0..d)
        .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
        .collect();
    Ok(Poly::new(&k, bareiss_det(&k, &mut a)?))
}

/// Fraction-free determinant of a matrix over K[T].
pub(crate) fn bareiss_det(k: &Field, a: &mut [Vec<Vec<Elem>>]) -> Result<Vec<Elem>> {
    let n = a.len();
    let mut sign = false;
    let mut prev = vec![k.one()];
    for col in 0..n {
        if a[col][col].is_empty() {
            match (col + 1..n).find(|&r| !a[r][col].is_empty()) {
                Some(r) => {
                    a.swap(col, r);
                    sign = !sign;
                }
                None => return Ok(vec![]),
            }
        }
        for i in col + 1..n {
            for j in col + 1..n {
                let x = raw::sub(
                    k,
                    &raw::mul(k, &a[i][j], &a[col][col]),
                    &raw::mul(k, &a[i][col], &a[col][j]),
                );
                a[i][j] = raw::div_exact(k, &x, &prev)?.expect("Bareiss division is exact");
            }
            a[i][col] = vec![];
        }
        prev = a[col][col].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign { raw::neg(k, &det) } else { det })
}

fn trager(f: &Poly) -> Result<Vec<Poly>> {
    if f.deg() <= 1 {
        return Ok(vec![f.monic()]);
    }
    let l = f.field().clone();
    let k = l.base().expect("extension").clone();
    let alpha = l.generator().unwrap();
    for c in shift_candidates(&k) {
        let ca = l.mul(&l.lift_from_base(&c), &alpha);
        let h = Poly::new(&l, raw::shift(&l, f.coeffs(), &l.neg(&ca)));
        let n = norm(&h)?;
        if !squarefree_test(&n)? {
            continue;
        }
        let parts = factor_squarefree(&n.monic())?;
        if parts.len() == 1 {
            return Ok(vec![f.monic()]);
        }
        let mut out = Vec::with_capacity(parts.len());
        for nj in parts {
            let g = h.gcd(&nj.embed(&l)?);
            out.push(Poly::new(&l, raw::shift(&l, g.coeffs(), &ca)).monic());
        }
        return Ok(out);
    }
    Err(Error::Domain(format!(
        "no shift with square-free norm found over {}",
        l.descriptor()
    )))
}
