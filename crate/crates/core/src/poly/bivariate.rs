//! Factorization over F_p(t) via F_p[t][T]: reduction modulo an irreducible
//! π(t), factorization over F_p[t]/(π), Hensel lifting in the π-adic
//! topology and recombination. Polynomials inseparable in T are handled by
//! swapping the roles of T and t.

use super::hensel::{self, FpxBase, LiftBase};
use super::rational::next_combination;
use super::{finite, Poly};
use crate::error::{Error, Result};
use crate::fields::fpx::{self, Fpx};
use crate::fields::{rational_function, Elem, Field, Kind};

/// Polynomial in a main variable X with coefficients in F_p[y], low degree first.
type Biv = Vec<Fpx>;

fn trim(b: &mut Biv) {
    while b.last().map_or(false, |c| c.is_empty()) {
        b.pop();
    }
}

fn deg(b: &Biv) -> usize {
    b.len().saturating_sub(1)
}

fn deg_y(b: &Biv) -> usize {
    b.iter().filter_map(|c| fpx::degree(c)).max().unwrap_or(0)
}

fn content(b: &Biv, p: u64) -> Fpx {
    b.iter().fold(vec![], |acc, c| fpx::gcd(&acc, c, p))
}

fn primitive(b: &Biv, p: u64) -> Biv {
    let c = content(b, p);
    let mut out: Biv = if c.is_empty() {
        b.clone()
    } else {
        b.iter().map(|x| fpx::div_exact(x, &c, p).unwrap()).collect()
    };
    trim(&mut out);
    if let Some(l) = out.last() {
        let inv = fpx::invmod(*l.last().unwrap(), p);
        out = out.iter().map(|x| fpx::scale(x, inv, p)).collect();
    }
    out
}

fn swap(b: &Biv) -> Biv {
    let dy = deg_y(b);
    let mut out = vec![vec![]; dy + 1];
    for (i, c) in b.iter().enumerate() {
        for (j, &v) in c.iter().enumerate() {
            if v != 0 {
                let row = &mut out[j];
                if row.len() <= i {
                    row.resize(i + 1, 0);
                }
                row[i] = v;
            }
        }
    }
    trim(&mut out);
    out
}

fn mul(a: &Biv, b: &Biv, p: u64) -> Biv {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![vec![]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_empty() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = fpx::add(&out[i + j], &fpx::mul(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Exact division in F_p[y][X], failing fast on the first non-divisible coefficient.
fn div_exact(a: &Biv, b: &Biv, p: u64) -> Option<Biv> {
    if b.is_empty() || a.len() < b.len() {
        return if a.is_empty() { Some(vec![]) } else { None };
    }
    let mut r = a.clone();
    let db = deg(b);
    let lb = b.last().unwrap();
    let mut q = vec![vec![]; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + db];
        if c.is_empty() {
            continue;
        }
        let qk = fpx::div_exact(c, lb, p)?;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = fpx::sub(&r[k + j], &fpx::mul(&qk, bj, p), p);
        }
        q[k] = qk;
    }
    if r.iter().any(|c| !c.is_empty()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

fn deriv_x(b: &Biv, p: u64) -> Biv {
    let mut out: Biv = b
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| fpx::scale(c, (i as u64) % p, p))
        .collect();
    trim(&mut out);
    out
}

fn deriv_y(b: &Biv, p: u64) -> Biv {
    let mut out: Biv = b.iter().map(|c| fpx::derivative(c, p)).collect();
    trim(&mut out);
    out
}

fn rf_field(p: u64) -> Field {
    Field::rational_functions(p, "y").expect("prime")
}

fn to_poly(field: &Field, b: &Biv) -> Poly {
    Poly::new(
        field,
        b.iter()
            .map(|c| rational_function(field, c.clone(), vec![1]).unwrap())
            .collect(),
    )
}

fn from_poly(f: &Poly, p: u64) -> Biv {
    let dens: Vec<&Fpx> = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rf(_, d) => d,
            _ => unreachable!(),
        })
        .collect();
    let mut l = vec![1u64];
    for d in dens {
        let g = fpx::gcd(&l, d, p);
        l = fpx::div_exact(&fpx::mul(&l, d, p), &g, p).unwrap();
    }
    let b: Biv = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rf(n, d) => fpx::mul(n, &fpx::div_exact(&l, d, p).unwrap(), p),
            _ => unreachable!(),
        })
        .collect();
    primitive(&b, p)
}

/// gcd over F_p(y) in X, returned primitive in F_p[y][X].
fn gcd(a: &Biv, b: &Biv, p: u64) -> Biv {
    let k = rf_field(p);
    let g = to_poly(&k, a).gcd(&to_poly(&k, b));
    from_poly(&g, p)
}

pub(crate) fn factor_squarefree_rf(f: &Poly) -> Result<Vec<Poly>> {
    let field = f.field().clone();
    let p = match field.kind() {
        Kind::RationalFunctions { p, .. } => *p,
        _ => unreachable!(),
    };
    let b = from_poly(f, p);
    let parts = factor_biv(&b, p)?;
    Ok(parts.iter().map(|g| to_poly(&field, g).monic()).collect())
}

/// Irreducible factors of positive X-degree of a square-free, y-primitive polynomial.
fn factor_biv(f: &Biv, p: u64) -> Result<Vec<Biv>> {
    if deg(f) == 0 {
        return Ok(vec![]);
    }
    let sw = swap(f);
    let c = content(&sw, p);
    if fpx::degree(&c).unwrap_or(0) > 0 {
        let fp = Field::prime(p)?;
        let cp = Poly::new(&fp, c.iter().map(|&v| Elem::Fp(v)).collect());
        let mut out: Vec<Biv> = Vec::new();
        for q in finite::factor_squarefree_finite(&cp)? {
            out.push(
                q.coeffs()
                    .iter()
                    .map(|e| match e {
                        Elem::Fp(v) => fpx::constant(*v, p),
                        _ => unreachable!(),
                    })
                    .collect(),
            );
        }
        let rest: Biv = sw.iter().map(|x| fpx::div_exact(x, &c, p).unwrap()).collect();
        out.extend(factor_biv(&swap(&rest), p)?);
        return Ok(out);
    }
    if deg(f) == 1 {
        return Ok(vec![f.clone()]);
    }
    let dx = deriv_x(f, p);
    if !dx.is_empty() {
        let g = gcd(f, &dx, p);
        if deg(&g) > 0 {
            let h = div_exact(f, &g, p).expect("gcd divides");
            let mut out = factor_biv(&g, p)?;
            out.extend(factor_biv(&h, p)?);
            return Ok(out);
        }
        return factor_separable(f, p);
    }
    let dy = deriv_y(f, p);
    if dy.is_empty() {
        return Err(Error::Domain("polynomial is a p-th power".into()));
    }
    let g = swap(&gcd(&sw, &swap(&dy), p));
    if deg_y(&g) > 0 {
        let h = div_exact(f, &g, p).expect("gcd divides");
        let mut out = factor_biv(&primitive(&g, p), p)?;
        out.extend(factor_biv(&primitive(&h, p), p)?);
        return Ok(out);
    }
    Ok(factor_separable(&sw, p)?
        .iter()
        .map(|g| primitive(&swap(g), p))
        .collect())
}

struct Reduction {
    pi: Fpx,
    field: Field,
    factors: Vec<Vec<Elem>>,
}

fn reduce_at(f: &Biv, pi: &Fpx, p: u64) -> Result<Option<Reduction>> {
    let lc = f.last().unwrap();
    if fpx::rem(lc, pi, p).is_empty() {
        return Ok(None);
    }
    let base = FpxBase::new(p, pi.clone());
    let field = base.residue().clone();
    let red = Poly::new(&field, f.iter().map(|c| base.to_residue(c)).collect());
    let d = red.derivative();
    if d.is_zero() || !red.gcd(&d).is_one() {
        return Ok(None);
    }
    let fs = finite::factor_squarefree_finite(&red.monic())?;
    Ok(Some(Reduction {
        pi: pi.clone(),
        field,
        factors: fs.into_iter().map(|g| g.into_coeffs()).collect(),
    }))
}

fn choose_reduction(f: &Biv, p: u64) -> Result<Reduction> {
    let mut good: Vec<Reduction> = Vec::new();
    for d in 1..=24usize {
        let mut tried = 0;
        for pi in fpx::monic_of_degree(d, p) {
            if !fpx::is_irreducible(&pi, p) {
                continue;
            }
            tried += 1;
            if tried > 12 {
                break;
            }
            if let Some(r) = reduce_at(f, &pi, p)? {
                if r.factors.len() == 1 {
                    return Ok(r);
                }
                good.push(r);
                if good.len() >= 4 {
                    break;
                }
            }
        }
        if good.len() >= 4 || (!good.is_empty() && d >= 2 && good[0].pi.len() < d + 1) {
            break;
        }
    }
    good.into_iter()
        .min_by_key(|r| r.factors.len())
        .ok_or_else(|| Error::Domain("no good reduction found".into()))
}

/// Factors a y-primitive polynomial separable in X without F_p[X] content.
fn factor_separable(f: &Biv, p: u64) -> Result<Vec<Biv>> {
    if deg(f) <= 1 {
        return Ok(vec![f.clone()]);
    }
    let red = choose_reduction(f, p)?;
    if red.factors.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let d = red.pi.len() - 1;
    let lc = f.last().unwrap().clone();
    let need = fpx::degree(&lc).unwrap_or(0) + deg_y(f);
    let n = need / d + 1;
    let base = FpxBase::new(p, red.pi.clone());
    debug_assert_eq!(base.residue(), &red.field);
    let m = base.pi_pow(n);
    let (_, lc_inv, _) = fpx::xgcd(&lc, &m, p);
    let monic: Biv = f
        .iter()
        .map(|c| base.reduce(&fpx::mul(c, &lc_inv, p), n))
        .collect();
    let mut modular = red.factors;
    modular.sort_by_key(|g| g.len());
    let lifted = hensel::lift_factors(&base, &monic, &modular, n)?;

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        let mut hit = None;
        let dyc = deg_y(&current);
        loop {
            let mut prod: Biv = vec![current.last().unwrap().clone()];
            for &i in &idx {
                prod = mul(&prod, &lifted[remaining[i]], p)
                    .iter()
                    .map(|c| fpx::rem(c, &m, p))
                    .collect();
            }
            let cand = primitive(&prod, p);
            if deg_y(&cand) <= dyc {
                if let Some(q) = div_exact(&current, &cand, p) {
                    hit = Some((idx.clone(), cand, q));
                    break;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        match hit {
            Some((idx, cand, q)) => {
                out.push(cand);
                current = q;
                for &i in idx.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if deg(&current) > 0 {
        out.push(primitive(&current, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(field: &Field, lit: &str, count: usize) {
        let f = Poly::parse(field, lit).unwrap().monic();
        let fs = factor_squarefree_rf(&f).unwrap();
        let prod = fs.iter().fold(Poly::one(field), |a, b| a.mul(b));
        assert_eq!(prod, f, "{lit}");
        assert_eq!(fs.len(), count, "{lit}");
    }

    #[test]
    fn factors_over_fp_t() {
        let k = Field::rational_functions(2, "t").unwrap();
        check(&k, "T^2+t", 1);
        check(&k, "(T^2+t)*(T+1)", 2);
        check(&k, "(T^3+t*T+1)*(T^2+T+t)", 2);
        check(&k, "T^12+t", 1);
        check(&k, "(T^4+t)*(T^4+t+1)", 2);
        let k3 = Field::rational_functions(3, "t").unwrap();
        check(&k3, "(T^3-t)*(T^2-t)*(T-t^2)", 3);
        check(&k3, "T^2-t^2*(t+1)^2", 2);
    }
}
