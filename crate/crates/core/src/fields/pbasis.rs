//! p-bases of imperfect fields. Every field in a tower over F_p(t) satisfies
//! [L : L^p] = p, so each element decomposes uniquely as Σ z^i y_i^p.

use super::{fpx, rf_normalize, Elem, Field, Kind, Separability};
use crate::error::{Error, Result};
use crate::linalg;

pub(crate) fn p_basis_element(l: &Field) -> Result<Elem> {
    match l.kind() {
        Kind::RationalFunctions { .. } => Ok(l.generator().unwrap()),
        Kind::Extension {
            base, separability, ..
        } => match separability {
            _ if l.is_perfect() => Err(Error::Domain("perfect fields have no p-basis".into())),
            Separability::Separable => Ok(l.lift_from_base(&p_basis_element(base)?)),
            Separability::PurelyInseparable => Ok(l.generator().unwrap()),
            Separability::Inseparable => Err(Error::UnsupportedField(format!(
                "p-basis over the inseparable extension {}",
                l.descriptor()
            ))),
        },
        _ => Err(Error::Domain(format!(
            "{} is perfect and has no p-basis",
            l.descriptor()
        ))),
    }
}

pub(crate) fn p_decompose(l: &Field, x: &Elem) -> Result<Vec<Elem>> {
    let p = l.characteristic() as usize;
    match (l.kind(), x) {
        (Kind::RationalFunctions { p: pp, .. }, Elem::Rf(n, d)) => {
            let pp = *pp;
            // x = n d^(p-1) / d^p
            let num = fpx::mul(n, &fpx::pow(d, (p - 1) as u64, pp), pp);
            let mut parts = vec![Vec::new(); p];
            for (k, &c) in num.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let (i, j) = (k % p, k / p);
                let v = &mut parts[i];
                if v.len() <= j {
                    v.resize(j + 1, 0);
                }
                v[j] = c;
            }
            Ok(parts
                .into_iter()
                .map(|mut v| {
                    fpx::trim(&mut v);
                    rf_normalize(v, d.clone(), pp)
                })
                .collect())
        }
        (
            Kind::Extension {
                base,
                separability,
                minpoly,
                ..
            },
            Elem::Ext(coords),
        ) => {
            if l.is_perfect() {
                return Err(Error::Domain("perfect fields have no p-basis".into()));
            }
            let d = minpoly.len() - 1;
            match separability {
                Separability::Separable => {
                    // basis β^j with β = α^p; solve for coordinates over the base
                    let alpha = l.generator().unwrap();
                    let beta = l.pow_u(&alpha, p as u64);
                    let mut cols = Vec::with_capacity(d);
                    let mut cur = l.one();
                    for _ in 0..d {
                        cols.push(match &cur {
                            Elem::Ext(v) => v.clone(),
                            _ => unreachable!(),
                        });
                        cur = l.mul(&cur, &beta);
                    }
                    let a = linalg::transpose(&cols);
                    let w = linalg::solve(base, &a, coords)?
                        .ok_or_else(|| Error::Domain("p-th powers of the basis are dependent".into()))?;
                    let mut ys = vec![vec![base.zero(); d]; p];
                    for (j, wj) in w.iter().enumerate() {
                        let dec = p_decompose(base, wj)?;
                        for (i, c) in dec.into_iter().enumerate() {
                            ys[i][j] = c;
                        }
                    }
                    Ok(ys.into_iter().map(Elem::Ext).collect())
                }
                Separability::PurelyInseparable => {
                    let a = base.neg(&minpoly[0]);
                    coords
                        .iter()
                        .map(|xi| root_of_base_element(l, base, &a, xi))
                        .collect()
                }
                Separability::Inseparable => Err(Error::UnsupportedField(format!(
                    "p-basis over the inseparable extension {}",
                    l.descriptor()
                ))),
            }
        }
        _ => Err(Error::Domain(format!(
            "{} is perfect and has no p-basis",
            l.descriptor()
        ))),
    }
}

/// For L = K(α), α^p = a, the p-th root in L of u ∈ K: Σ v_j α^j with
/// Σ a^j v_j^p = u.
fn root_of_base_element(l: &Field, k: &Field, a: &Elem, u: &Elem) -> Result<Elem> {
    let p = l.characteristic() as usize;
    let mut rows = vec![vec![k.zero(); p]; p];
    let mut aj = k.one();
    for j in 0..p {
        let dec = p_decompose(k, &aj)?;
        for (lidx, c) in dec.into_iter().enumerate() {
            rows[lidx][j] = c;
        }
        aj = k.mul(&aj, a);
    }
    let rhs = p_decompose(k, u)?;
    let v = linalg::solve(k, &rows, &rhs)?
        .ok_or_else(|| Error::Domain("powers of a do not form a p-basis".into()))?;
    Ok(Elem::Ext(v))
}

pub(crate) fn pth_root(l: &Field, x: &Elem) -> Result<Option<Elem>> {
    let p = l.characteristic();
    if p == 0 {
        return Err(Error::Domain("p-th roots need positive characteristic".into()));
    }
    if let Some(q) = l.size() {
        return Ok(Some(l.pow_big(x, &(q / p))));
    }
    let dec = p_decompose(l, x)?;
    if dec[1..].iter().all(|y| l.is_zero(y)) {
        Ok(Some(dec[0].clone()))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_reassembles() {
        let k = Field::rational_functions(3, "t").unwrap();
        let x = k.parse("(t^5+2*t+1)/(t^2+1)").unwrap();
        let z = k.p_basis_element().unwrap();
        let ys = k.p_decompose(&x).unwrap();
        let mut acc = k.zero();
        for (i, y) in ys.iter().enumerate() {
            acc = k.add(&acc, &k.mul(&k.pow_u(&z, i as u64), &k.pow_u(y, 3)));
        }
        assert_eq!(acc, x);
    }

    #[test]
    fn roots_over_purely_inseparable() {
        let k = Field::rational_functions(2, "t").unwrap();
        let m = vec![k.parse("t").unwrap(), k.zero(), k.one()];
        let l = Field::extension_unchecked(&k, &m, "x");
        let t = l.parse("t").unwrap();
        assert_eq!(l.pth_root(&t).unwrap(), Some(l.parse("x").unwrap()));
        let x = l.parse("x").unwrap();
        assert_eq!(l.pth_root(&x).unwrap(), None);
    }
}
