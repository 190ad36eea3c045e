//! GL(W) acting on End(W) by conjugation.
//!
//! Orbits are identified by invariant factors. An endomorphism has a
//! cocharacter-closed orbit exactly when its minimal polynomial is square-free
//! over k; the limit along the radical filtration of W realizes the
//! semisimplification.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::limit::{self, Cocharacter, ConjugationModel};
use crate::linalg::{self, Matrix};
use crate::poly::{self, bareiss_det, FactorReport, Poly};

/// Rational canonical data of one GL_n(k)-orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoClass {
    pub representative: Matrix,
    /// Monic, d_1 | d_2 | ... | d_r, all of positive degree.
    pub invariant_factors: Vec<Poly>,
    pub min_poly: Poly,
    pub char_poly: Poly,
    pub commutant_dimension: usize,
}

impl EndoClass {
    /// Canonical orbit identifier.
    pub fn key(&self) -> String {
        invariant_key(&self.invariant_factors)
    }

    pub fn orbit_dimension(&self) -> usize {
        let n = self.representative.rows;
        n * n - self.commutant_dimension
    }

    pub fn to_json(&self) -> Value {
        json!({
            "representative": self.representative.to_string_rows(),
            "invariant_factors": self.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "min_poly": self.min_poly.to_string(),
            "char_poly": self.char_poly.to_string(),
            "commutant_dimension": self.commutant_dimension,
        })
    }
}

pub fn invariant_key(factors: &[Poly]) -> String {
    let parts: Vec<String> = factors.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(" | "))
}

fn square(f: &Matrix) -> Result<()> {
    if f.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare)
    }
}

/// det(T·I − f) by fraction-free elimination over k[T].
pub fn char_poly(f: &Matrix) -> Result<Poly> {
    square(f)?;
    let k = &f.field;
    let n = f.rows;
    if n == 0 {
        return Ok(Poly::one(k));
    }
    let mut a: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![k.neg(f.get(i, j))];
                    if i == j {
                        c.push(k.one());
                    }
                    poly::raw::trim(k, &mut c);
                    c
                })
                .collect()
        })
        .collect();
    Ok(Poly::new(k, bareiss_det(k, &mut a)?))
}

/// Minimal polynomial of v under f from the first linear dependency in the Krylov sequence.
fn krylov_annihilator(f: &Matrix, v: &[Elem]) -> Result<Poly> {
    let k = &f.field;
    if v.iter().all(|x| k.is_zero(x)) {
        return Ok(Poly::one(k));
    }
    let mut seq: Vec<Vec<Elem>> = vec![v.to_vec()];
    loop {
        let next = f.mul_vec(seq.last().unwrap());
        let a = linalg::transpose(&seq);
        if let Some(c) = linalg::solve(k, &a, &next)? {
            let mut coeffs: Vec<Elem> = c.iter().map(|x| k.neg(x)).collect();
            coeffs.push(k.one());
            return Ok(Poly::new(k, coeffs));
        }
        seq.push(next);
    }
}

pub fn min_poly(f: &Matrix) -> Result<Poly> {
    square(f)?;
    let k = &f.field;
    let mut acc = Poly::one(k);
    for i in 0..f.rows {
        let m = krylov_annihilator(f, &linalg::unit_vector(k, f.rows, i))?;
        let g = acc.gcd(&m);
        acc = acc.mul(&m).div_exact(&g)?.expect("gcd divides");
    }
    Ok(acc.monic())
}

/// Diagonal of the Smith normal form of T·I − f over k[T], nonconstant part.
fn smith_invariants(f: &Matrix) -> Result<Vec<Poly>> {
    let k = &f.field;
    let n = f.rows;
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![k.neg(f.get(i, j))];
                    if i == j {
                        c.push(k.one());
                    }
                    Poly::new(k, c)
                })
                .collect()
        })
        .collect();
    for s in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in s..n {
                for j in s..n {
                    if !a[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| a[i][j].deg() < a[bi][bj].deg())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Err(Error::Domain("T·I − f is singular".into()));
            };
            a.swap(s, pi);
            for row in a.iter_mut() {
                row.swap(s, pj);
            }
            let mut clean = true;
            for i in s + 1..n {
                if a[i][s].is_zero() {
                    continue;
                }
                let (q, r) = a[i][s].divrem(&a[s][s])?;
                for j in s..n {
                    let t = q.mul(&a[s][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in s + 1..n {
                if a[s][j].is_zero() {
                    continue;
                }
                let (q, r) = a[s][j].divrem(&a[s][s])?;
                for row in a.iter_mut().skip(s) {
                    let t = q.mul(&row[s]);
                    row[j] = row[j].sub(&t);
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let mut bad = None;
            'scan: for i in s + 1..n {
                for j in s + 1..n {
                    if !a[s][s].divides(&a[i][j])? {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => {
                    for j in s..n {
                        let t = a[i][j].clone();
                        a[s][j] = a[s][j].add(&t);
                    }
                }
                None => break,
            }
        }
    }
    let mut out: Vec<Poly> = (0..n)
        .map(|i| a[i][i].monic())
        .filter(|d| d.deg() > 0)
        .collect();
    out.sort_by_key(|d| d.deg());
    Ok(out)
}

/// Commutant dimension from invariant factors: Σ_{i,j} deg gcd(d_i, d_j).
fn commutant_from_factors(ds: &[Poly]) -> usize {
    let r = ds.len();
    (0..r).map(|i| (2 * (r - i) - 1) * ds[i].deg()).sum()
}

pub fn invariant_factors(f: &Matrix) -> Result<EndoClass> {
    square(f)?;
    let ds = smith_invariants(f)?;
    let k = &f.field;
    let char_poly = ds.iter().fold(Poly::one(k), |acc, d| acc.mul(d));
    Ok(EndoClass {
        representative: f.clone(),
        min_poly: ds.last().cloned().unwrap_or_else(|| Poly::one(k)),
        char_poly,
        commutant_dimension: commutant_from_factors(&ds),
        invariant_factors: ds,
    })
}

/// dim {x : x f = f x}, from the nullspace of x ↦ x f − f x.
pub fn commutant_dimension(f: &Matrix) -> Result<usize> {
    square(f)?;
    let k = &f.field;
    let n = f.rows;
    let mut rows = vec![vec![k.zero(); n * n]; n * n];
    // (xf − fx)_{ij} = Σ_l x_{il} f_{lj} − Σ_l f_{il} x_{lj}
    for i in 0..n {
        for j in 0..n {
            let r = &mut rows[i * n + j];
            for l in 0..n {
                let a = &mut r[i * n + l];
                *a = k.add(a, f.get(l, j));
                let b = &mut r[l * n + j];
                *b = k.sub(b, f.get(i, l));
            }
        }
    }
    Ok(linalg::nullspace(k, &rows, n * n).len())
}

pub fn is_geometrically_closed(f: &Matrix) -> Result<bool> {
    poly::is_separable(&min_poly(f)?)
}

/// Proof that an orbit is not cocharacter-closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Destabilization {
    /// Basis of a proper nonzero f-stable subspace.
    pub subspace: Vec<Vec<Elem>>,
    pub cocharacter: Cocharacter,
    pub limit: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedVerdict {
    pub closed: bool,
    pub min_poly: Poly,
    /// Irreducible factorization of μ when closed and the field supports it.
    pub factorization: Option<FactorReport>,
    pub certificate: Option<Destabilization>,
}

impl ClosedVerdict {
    pub fn to_json(&self) -> Value {
        let f = self.min_poly.field();
        json!({
            "cocharacter_closed": self.closed,
            "min_poly": self.min_poly.to_string(),
            "factorization": self.factorization.as_ref().map(|r| r.to_json(f)),
            "certificate": self.certificate.as_ref().map(|c| json!({
                "subspace": c.subspace.iter().map(|v| v.iter().map(|x| f.format(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "cocharacter": c.cocharacter.to_json(),
                "limit": c.limit.to_string_rows(),
            })),
        })
    }
}

pub fn is_cocharacter_closed(f: &Matrix) -> Result<ClosedVerdict> {
    let mu = min_poly(f)?;
    if poly::squarefree_test(&mu)? {
        let factorization = match poly::factor(&mu) {
            Ok(r) => Some(r),
            Err(Error::UnsupportedField(_)) | Err(Error::DegreeTooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        return Ok(ClosedVerdict {
            closed: true,
            min_poly: mu,
            factorization,
            certificate: None,
        });
    }
    let r = poly::radical(&mu)?;
    let subspace = f.eval_poly(r.coeffs()).image();
    let (cocharacter, limit) = witness_cocharacter(f)?;
    Ok(ClosedVerdict {
        closed: false,
        min_poly: mu,
        factorization: None,
        certificate: Some(Destabilization {
            subspace,
            cocharacter,
            limit,
        }),
    })
}

/// The unique cocharacter-closed class in the closure: elementary divisors are
/// the irreducible factors of μ with their multiplicities in χ.
pub fn semisimplification(f: &Matrix) -> Result<EndoClass> {
    square(f)?;
    let k = &f.field;
    let n = f.rows;
    let chi = char_poly(f)?;
    if n == 0 {
        return invariant_factors(f);
    }
    let parts = poly::squarefree_decomposition(&chi)?;
    let top = parts.iter().map(|(_, m)| *m).max().unwrap_or(0);
    // d_{top-j} = ∏_{l > j} s_l
    let mut ds = Vec::with_capacity(top);
    for j in (0..top).rev() {
        let d = parts
            .iter()
            .filter(|(_, l)| *l > j)
            .fold(Poly::one(k), |acc, (s, _)| acc.mul(s));
        ds.push(d);
    }
    let mut elementary: Option<Vec<Poly>> = Some(Vec::new());
    for (s, l) in &parts {
        match poly::factor_squarefree(s) {
            Ok(qs) => {
                if let Some(e) = elementary.as_mut() {
                    for q in qs {
                        for _ in 0..*l {
                            e.push(q.clone());
                        }
                    }
                }
            }
            Err(Error::UnsupportedField(_)) | Err(Error::DegreeTooLarge(_)) => elementary = None,
            Err(e) => return Err(e),
        }
    }
    let blocks_from = |ps: &[Poly]| -> Matrix {
        let blocks: Vec<Matrix> = ps.iter().map(|p| Matrix::companion(k, p.coeffs())).collect();
        Matrix::block_diagonal(k, &blocks)
    };
    let representative = match elementary {
        Some(mut e) => {
            e.sort_by_key(|a| (a.deg(), a.to_string()));
            blocks_from(&e)
        }
        None => blocks_from(&ds),
    };
    Ok(EndoClass {
        representative,
        min_poly: ds.last().cloned().unwrap(),
        char_poly: chi,
        commutant_dimension: commutant_from_factors(&ds),
        invariant_factors: ds,
    })
}

/// Cocharacter adapted to W ⊇ rW ⊇ r²W ⊇ ... ⊇ 0 with r = radical(μ_f).
/// The basis lists the deepest layer first; layer j (vectors of r^jW beyond
/// r^{j+1}W) gets weight 2j − (depth − 1).
pub fn witness_cocharacter(f: &Matrix) -> Result<(Cocharacter, Matrix)> {
    square(f)?;
    let k = &f.field;
    let n = f.rows;
    let mu = min_poly(f)?;
    if poly::squarefree_test(&mu)? {
        return Ok((Cocharacter::zero(n), f.clone()));
    }
    let r = poly::radical(&mu)?;
    let rf = f.eval_poly(r.coeffs());
    // images of r(f)^j until zero
    let mut images: Vec<Vec<Vec<Elem>>> = Vec::new();
    let mut power = Matrix::identity(k, n);
    loop {
        let img = power.image();
        if img.is_empty() {
            break;
        }
        images.push(img);
        power = power.mul(&rf);
    }
    let depth = images.len();
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut weights: Vec<i64> = Vec::new();
    for j in (0..depth).rev() {
        let candidates = if j == 0 {
            (0..n).map(|i| linalg::unit_vector(k, n, i)).collect()
        } else {
            images[j].clone()
        };
        let added = linalg::extend_basis(k, &basis, &candidates);
        for v in added {
            basis.push(v);
            weights.push(2 * j as i64 - (depth as i64 - 1));
        }
    }
    let c = Matrix::from_cols(k, &basis)?;
    let lambda = if c == Matrix::identity(k, n) {
        Cocharacter::new(weights)
    } else {
        Cocharacter::with_conjugator(weights, c)?
    };
    let model = ConjugationModel::endo(k, n);
    let res = limit::limit(&f.data, &lambda, &model)?;
    let Some(value) = res.value else {
        return Err(Error::Domain("radical filtration cocharacter has no limit".into()));
    };
    let lim = Matrix {
        field: k.clone(),
        rows: n,
        cols: n,
        data: value,
    };
    if invariant_factors(&lim)?.invariant_factors != semisimplification(f)?.invariant_factors {
        return Err(Error::Domain("witness limit differs from the semisimplification".into()));
    }
    Ok((lambda, lim))
}

/// u ∈ R_u(P_λ)(k) with u f u⁻¹ = f_limit.
pub fn ru_conjugator(f: &Matrix, f_limit: &Matrix, lambda: &Cocharacter) -> Result<Matrix> {
    square(f)?;
    square(f_limit)?;
    let k = &f.field;
    let n = f.rows;
    if f_limit.rows != n || lambda.rank() != n {
        return Err(Error::DimensionMismatch("sizes of f, its limit and λ differ".into()));
    }
    let model = ConjugationModel::endo(k, n);
    let res = limit::limit(&f.data, lambda, &model)?;
    if res.value.as_ref() != Some(&f_limit.data) {
        return Err(Error::PreconditionFailed(
            "f_limit is not the limit of f along λ".into(),
        ));
    }
    if invariant_factors(f)?.invariant_factors != invariant_factors(f_limit)?.invariant_factors {
        return Err(Error::NotRuConjugate);
    }
    let (fd, ld, c) = match &lambda.conjugator {
        Some(c) => {
            let ci = c.inverse()?;
            (ci.mul(f).mul(c), ci.mul(f_limit).mul(c), Some(c.clone()))
        }
        None => (f.clone(), f_limit.clone(), None),
    };
    let w = &lambda.weights;
    // unknown entries N_{ij} with w_i > w_j; equation N F − L N = L − F
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .collect();
    let mut a = vec![vec![k.zero(); vars.len()]; n * n];
    let mut b = vec![k.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            b[row] = k.sub(ld.get(i, j), fd.get(i, j));
            for (v, &(p, q)) in vars.iter().enumerate() {
                // (N F)_{ij} picks N_{iq} F_{qj} with p = i
                if p == i {
                    a[row][v] = k.add(&a[row][v], fd.get(q, j));
                }
                // (L N)_{ij} picks L_{ip} N_{pj} with q = j
                if q == j {
                    a[row][v] = k.sub(&a[row][v], ld.get(i, p));
                }
            }
        }
    }
    let Some(x) = linalg::solve(k, &a, &b)? else {
        return Err(Error::NotRuConjugate);
    };
    let mut u = Matrix::identity(k, n);
    for (v, &(p, q)) in vars.iter().enumerate() {
        u.set(p, q, x[v].clone());
    }
    Ok(match c {
        Some(c) => c.mul(&u).mul(&c.inverse()?),
        None => u,
    })
}

/// Field-agnostic helper: companion matrix of a polynomial given as a literal.
pub fn companion_of(field: &Field, literal: &str) -> Result<Matrix> {
    let p = Poly::parse(field, literal)?;
    if p.deg() == 0 {
        return Err(Error::Domain("companion of a constant".into()));
    }
    Ok(Matrix::companion(field, p.monic().coeffs()))
}
