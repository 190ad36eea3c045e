//! Square-free decomposition valid over imperfect fields.
//!
//! After the usual gcd(f, f') recursion the residue r lies in K[T^p]. Writing
//! r = Σ z^i G_i^p with z a p-basis element and D = gcd(G_i) gives r = D^p · s
//! where s has no p-th power factor; then s = s̃(T^p) and every irreducible
//! factor of s̃ inflates to an irreducible factor of s.

use super::{raw, Poly};
use crate::error::{Error, Result};

/// Pairwise coprime monic parts with multiplicities, one part per multiplicity,
/// sorted by multiplicity.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let parts = decompose(&f.monic())?;
    let refined = coprime_refine(parts);
    let mut by_mult: std::collections::BTreeMap<usize, Poly> = Default::default();
    for (g, m) in refined {
        let e = by_mult
            .entry(m)
            .or_insert_with(|| Poly::one(f.field()));
        *e = e.mul(&g);
    }
    Ok(by_mult.into_iter().map(|(m, g)| (g, m)).collect())
}

/// True iff f has no repeated irreducible factor over its own field.
pub fn squarefree_test(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() <= 1 {
        return Ok(true);
    }
    let d = f.derivative();
    if !d.is_zero() && f.gcd(&d).is_one() {
        return Ok(true);
    }
    Ok(squarefree_decomposition(f)?.iter().all(|(_, m)| *m == 1))
}

/// Monic product of the distinct irreducible factors.
pub fn radical(f: &Poly) -> Result<Poly> {
    let mut acc = Poly::one(f.field());
    for (g, _) in squarefree_decomposition(f)? {
        acc = acc.mul(&g);
    }
    Ok(acc)
}

fn decompose(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field().clone();
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let d = f.derivative();
    let residue = if d.is_zero() {
        f.clone()
    } else {
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c)?.expect("gcd divides");
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y)?.expect("gcd divides");
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            c = c.div_exact(&y)?.expect("gcd divides");
            w = y;
        }
        c
    };
    if residue.deg() == 0 {
        return Ok(out);
    }
    let p = field.characteristic() as usize;
    debug_assert!(p > 0, "residue with zero derivative in characteristic 0");
    // residue = g(T^p)
    let g: Vec<_> = residue.coeffs().iter().step_by(p).cloned().collect();
    if field.is_perfect() {
        let roots = g
            .iter()
            .map(|c| field.pth_root(c).map(|r| r.expect("perfect field")))
            .collect::<Result<Vec<_>>>()?;
        let h = Poly::new(&field, roots);
        for (q, m) in decompose(&h)? {
            out.push((q, m * p));
        }
        return Ok(out);
    }
    let mut gs = vec![vec![field.zero(); g.len()]; p];
    for (j, c) in g.iter().enumerate() {
        for (i, y) in field.p_decompose(c)?.into_iter().enumerate() {
            gs[i][j] = y;
        }
    }
    let mut dd: Vec<_> = vec![];
    for gi in &gs {
        let mut gi = gi.clone();
        raw::trim(&field, &mut gi);
        dd = raw::gcd(&field, &dd, &gi);
    }
    let dpoly = Poly::new(&field, dd);
    let rest = if dpoly.deg() > 0 {
        for (q, m) in decompose(&dpoly)? {
            out.push((q, m * p));
        }
        residue
            .div_exact(&dpoly.pow(p as u64))?
            .expect("D^p divides the residue")
    } else {
        residue
    };
    if rest.deg() > 0 {
        let s: Vec<_> = rest.coeffs().iter().step_by(p).cloned().collect();
        let s = Poly::new(&field, s);
        for (q, m) in decompose(&s)? {
            out.push((q.inflate(p), m));
        }
    }
    Ok(out)
}

/// Refines (poly, multiplicity) pairs into pairwise coprime pieces.
fn coprime_refine(parts: Vec<(Poly, usize)>) -> Vec<(Poly, usize)> {
    let mut parts: Vec<(Poly, usize)> = parts.into_iter().filter(|(g, _)| g.deg() > 0).collect();
    'outer: loop {
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let g = parts[i].0.gcd(&parts[j].0);
                if g.deg() > 0 {
                    let (a, m) = parts[i].clone();
                    let (b, n) = parts[j].clone();
                    let a2 = a.div_exact(&g).unwrap().unwrap();
                    let b2 = b.div_exact(&g).unwrap().unwrap();
                    parts.remove(j);
                    parts.remove(i);
                    for (x, k) in [(a2, m), (b2, n), (g, m + n)] {
                        if x.deg() > 0 {
                            parts.push((x, k));
                        }
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    #[test]
    fn char_p_trap() {
        let k = Field::rational_functions(2, "t").unwrap();
        let f = Poly::parse(&k, "(T^2+t)*(T+1)").unwrap();
        assert!(squarefree_test(&f).unwrap());
        let g = Poly::parse(&k, "T^12+t").unwrap();
        assert!(squarefree_test(&g).unwrap());
        let h = Poly::parse(&k, "(T^2+t)^2").unwrap();
        assert_eq!(radical(&h).unwrap(), Poly::parse(&k, "T^2+t").unwrap());
    }

    #[test]
    fn overlapping_parts_merge() {
        // q^(p+1) with q inseparable
        let k = Field::rational_functions(3, "t").unwrap();
        let q = Poly::parse(&k, "T^3-t").unwrap();
        let f = q.pow(4);
        assert_eq!(squarefree_decomposition(&f).unwrap(), vec![(q, 4)]);
    }

    #[test]
    fn rational_multiplicities() {
        let q = Field::rationals();
        let f = Poly::parse(&q, "(T-1)^2*(T-2)").unwrap();
        assert_eq!(radical(&f).unwrap(), Poly::parse(&q, "(T-1)*(T-2)").unwrap());
    }
}
