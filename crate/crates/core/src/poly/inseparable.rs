//! Factorization over a purely inseparable extension L = K(α), α^p ∈ K.
//!
//! f^p has coefficients in K. Over L an irreducible q ∈ K[T] either stays
//! irreducible or becomes g^p, so the factors of f are read off from the
//! K-factorization of f^p.

use super::{factor, Poly};
use crate::error::{Error, Result};

pub(crate) fn factor_purely_inseparable(f: &Poly) -> Result<Vec<Poly>> {
    let l = f.field().clone();
    let k = l.base().expect("extension").clone();
    let p = l.characteristic();
    let fp = f.pow(p);
    let fk = fp
        .restrict(&k)
        .ok_or_else(|| Error::Domain("p-th power did not descend to the base".into()))?;
    let mut out: Vec<Poly> = Vec::new();
    for (q, _) in factor(&fk)?.factors {
        let ql = q.embed(&l)?;
        let pu = p as usize;
        let in_tp = ql
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| i % pu == 0 || l.is_zero(c));
        let roots: Option<Vec<_>> = if in_tp {
            ql.coeffs()
                .iter()
                .step_by(pu)
                .map(|c| l.pth_root(c).ok().flatten())
                .collect()
        } else {
            None
        };
        let g = match roots {
            Some(r) => Poly::new(&l, r),
            None => ql,
        };
        if !out.contains(&g) {
            out.push(g.monic());
        }
    }
    let prod = out.iter().fold(Poly::one(&l), |a, b| a.mul(b));
    if prod != f.monic() {
        return Err(Error::Domain("inconsistent purely inseparable factorization".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_descriptor;

    #[test]
    fn square_root_of_t() {
        let l = parse_descriptor("ext(Fp(t):p=2;X^2+t;x)").unwrap();
        let f = Poly::parse(&l, "T^2+t").unwrap();
        // T^2 + t = (T + x)^2 is not square-free over L; a square-free example:
        let g = Poly::parse(&l, "(T+x)*(T^2+T+x)").unwrap();
        let fs = factor_purely_inseparable(&g).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(!crate::poly::squarefree_test(&f).unwrap());
    }
}
