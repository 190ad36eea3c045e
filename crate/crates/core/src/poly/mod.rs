//! Univariate polynomials over exact fields: gcd, separability, square-free
//! decomposition over imperfect fields and irreducible factorization.

mod bivariate;
mod finite;
mod hensel;
mod inseparable;
pub mod raw;
mod rational;
mod squarefree;
mod trager;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, Kind, Separability};

pub use finite::roots_finite;
pub use squarefree::{radical, squarefree_decomposition, squarefree_test};
pub(crate) use trager::bareiss_det;

/// Desk-scale bound on the degree accepted by the factorization backends.
pub const MAX_FACTOR_DEGREE: usize = 96;

/// Univariate polynomial in T, coefficients low degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("T"))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        raw::trim(field, &mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    /// The indeterminate T.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Parses a literal in the variable T.
    pub fn parse(field: &Field, literal: &str) -> Result<Poly> {
        Self::parse_in(field, literal, "T")
    }

    pub fn parse_in(field: &Field, literal: &str, var: &str) -> Result<Poly> {
        let c = crate::fields::parse_poly(field, literal, var)?;
        Ok(Poly::new(field, c))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the zero polynomial treated as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Elem {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|l| self.field.is_one(l))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, raw::add(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, raw::sub(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, raw::neg(&self.field, &self.coeffs))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, raw::mul(&self.field, &self.coeffs, &o.coeffs))
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(&self.field, raw::scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, e: u64) -> Poly {
        Poly::new(&self.field, raw::pow(&self.field, &self.coeffs, e))
    }

    pub fn divrem(&self, o: &Poly) -> Result<(Poly, Poly)> {
        let (q, r) = raw::divrem(&self.field, &self.coeffs, &o.coeffs)?;
        Ok((Poly::new(&self.field, q), Poly::new(&self.field, r)))
    }

    pub fn rem(&self, o: &Poly) -> Result<Poly> {
        Ok(self.divrem(o)?.1)
    }

    /// Exact quotient when o divides self.
    pub fn div_exact(&self, o: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(o)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn divides(&self, o: &Poly) -> Result<bool> {
        Ok(o.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Poly {
        Poly::new(&self.field, raw::monic(&self.field, &self.coeffs))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(&self.field, raw::derivative(&self.field, &self.coeffs))
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        raw::eval(&self.field, &self.coeffs, x)
    }

    pub fn compose(&self, g: &Poly) -> Poly {
        Poly::new(&self.field, raw::compose(&self.field, &self.coeffs, &g.coeffs))
    }

    /// Substitution T -> T^k.
    pub fn inflate(&self, k: usize) -> Poly {
        Poly::new(&self.field, raw::inflate(&self.field, &self.coeffs, k))
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        Poly::new(&self.field, raw::gcd(&self.field, &self.coeffs, &o.coeffs))
    }

    /// Base change into an extension field of the tower.
    pub fn embed(&self, target: &Field) -> Result<Poly> {
        Ok(Poly::new(
            target,
            raw::embed(target, &self.field, &self.coeffs)?,
        ))
    }

    /// Restriction of coefficients to a subfield of the tower, when possible.
    pub fn restrict(&self, sub: &Field) -> Option<Poly> {
        let c = self
            .coeffs
            .iter()
            .map(|x| self.field.restrict_to(sub, x))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::new(sub, c))
    }

    pub fn format_in(&self, var: &str) -> String {
        crate::fields::format_poly_in(&self.field, &self.coeffs, var)
    }

    /// Canonical order: degree, then coefficients from the lowest.
    pub fn canonical_cmp(&self, o: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.cmp(&o.coeffs))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.field.format(c)).collect()
    }
}

fn same_field(f: &Poly, g: &Poly) -> Result<()> {
    if f.field != g.field {
        return Err(Error::DimensionMismatch(format!(
            "polynomials over {} and {}",
            f.field, g.field
        )));
    }
    Ok(())
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    same_field(f, g)?;
    Ok(f.gcd(g))
}

pub fn derivative(f: &Poly) -> Poly {
    f.derivative()
}

/// Square-free over the algebraic closure.
pub fn is_separable(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg() <= 1 {
        return Ok(true);
    }
    let d = f.derivative();
    if d.is_zero() {
        return Ok(false);
    }
    Ok(f.gcd(&d).is_one())
}

/// Irreducible factorization: unit times monic irreducibles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

#[derive(Serialize)]
struct FactorJson {
    unit: String,
    factors: Vec<FactorEntryJson>,
}

#[derive(Serialize)]
struct FactorEntryJson {
    factor: String,
    multiplicity: usize,
}

impl FactorReport {
    /// Reassembles unit · ∏ factor^multiplicity.
    pub fn product(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m as u64));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn to_json(&self, field: &Field) -> serde_json::Value {
        serde_json::to_value(FactorJson {
            unit: field.format(&self.unit),
            factors: self
                .factors
                .iter()
                .map(|(g, m)| FactorEntryJson {
                    factor: g.to_string(),
                    multiplicity: *m,
                })
                .collect(),
        })
        .expect("serializable")
    }
}

/// Complete irreducible factorization over the coefficient field.
pub fn factor(f: &Poly) -> Result<FactorReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let unit = f.lc();
    let monic = f.monic();
    if monic.deg() > MAX_FACTOR_DEGREE {
        return Err(Error::DegreeTooLarge(format!(
            "degree {} exceeds {}",
            monic.deg(),
            MAX_FACTOR_DEGREE
        )));
    }
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic)? {
        for g in factor_squarefree(&part)? {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    let _ = &field;
    Ok(FactorReport { unit, factors })
}

/// Monic irreducible factors of a monic square-free polynomial, sorted canonically.
pub fn factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    if f.deg() == 0 {
        return Ok(vec![]);
    }
    if f.deg() == 1 {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let mut out = if field.is_finite() {
        finite::factor_squarefree_finite(f)?
    } else {
        match field.kind() {
            Kind::Rationals => rational::factor_squarefree_q(f)?,
            Kind::RationalFunctions { .. } => bivariate::factor_squarefree_rf(f)?,
            Kind::Extension { separability, .. } => match separability {
                Separability::Separable => trager::factor_squarefree_ext(f)?,
                Separability::PurelyInseparable => inseparable::factor_purely_inseparable(f)?,
                Separability::Inseparable => {
                    return Err(Error::UnsupportedField(format!(
                        "factorization over the inseparable extension {}",
                        field.descriptor()
                    )))
                }
            },
            _ => unreachable!("finite fields handled above"),
        }
    };
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let q = Field::rationals();
        let a = Poly::parse(&q, "T^2-1").unwrap();
        let b = Poly::parse(&q, "T-1").unwrap();
        assert_eq!(gcd(&a, &b).unwrap(), b);
        assert_eq!(gcd(&a.scale(&q.from_int(3)), &Poly::zero(&q)).unwrap(), a);
        let k = Field::rational_functions(2, "t").unwrap();
        let f = Poly::parse(&k, "(T^2+t)*(T+1)").unwrap();
        let g = Poly::parse(&k, "T^2+t").unwrap();
        assert_eq!(f.derivative(), g);
        assert_eq!(gcd(&f, &f.derivative()).unwrap(), g);
    }

    #[test]
    fn separability_examples() {
        let k = Field::rational_functions(2, "t").unwrap();
        assert!(!is_separable(&Poly::parse(&k, "T^2+t").unwrap()).unwrap());
        assert!(is_separable(&Poly::parse(&k, "T^2+T+t").unwrap()).unwrap());
        let q = Field::rationals();
        assert!(!is_separable(&Poly::parse(&q, "(T-1)^2").unwrap()).unwrap());
        assert_eq!(is_separable(&Poly::zero(&q)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn derivative_examples() {
        let k = Field::rational_functions(2, "t").unwrap();
        assert!(Poly::parse(&k, "T^12+t").unwrap().derivative().is_zero());
        assert_eq!(
            Poly::parse(&k, "T^3+t").unwrap().derivative(),
            Poly::parse(&k, "T^2").unwrap()
        );
    }
}
