//! Exact coefficient fields: the rationals, finite fields GF(p^e), rational
//! function fields F_p(t) and simple extensions stacked into towers.

pub mod fpx;
mod format;
mod parse;
mod pbasis;
mod powers;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::raw;
use fpx::Fpx;

pub use parse::parse_descriptor;
pub(crate) use format::format_poly_in;
pub(crate) use parse::parse_poly;

/// A field element in canonical form. Equality is representational equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Reduced fraction with positive denominator.
    Q(BigRational),
    /// Element of a prime field, in `0..p`.
    Fp(u64),
    /// Element of GF(p^e), e > 1: coordinates in the power basis of the generator.
    Gf(Vec<u64>),
    /// Element of F_p(t): coprime numerator and monic denominator.
    Rf(Fpx, Fpx),
    /// Element of a simple extension: coordinates over the base field.
    Ext(Vec<Elem>),
}

/// How the minimal polynomial of a simple extension relates to the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separability {
    Separable,
    /// Minimal polynomial of the form X^p - a.
    PurelyInseparable,
    /// Any other inseparable minimal polynomial.
    Inseparable,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Kind {
    Rationals,
    Prime {
        p: u64,
    },
    Galois {
        p: u64,
        e: usize,
        modulus: Fpx,
        generator: String,
    },
    RationalFunctions {
        p: u64,
        variable: String,
    },
    Extension {
        base: Field,
        minpoly: Vec<Elem>,
        generator: String,
        separability: Separability,
    },
}

/// Cheaply clonable handle to a field descriptor.
#[derive(Clone)]
pub struct Field(Arc<Kind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.descriptor().hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(Kind::Rationals))
    }

    /// GF(p^e) with the lexicographically least monic irreducible modulus.
    pub fn finite(p: u64, e: usize) -> Result<Field> {
        Self::finite_named(p, e, "g")
    }

    pub fn finite_named(p: u64, e: usize, generator: &str) -> Result<Field> {
        if !fpx::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Domain("extension degree must be at least 1".into()));
        }
        if p >= (1u64 << 31) {
            return Err(Error::UnsupportedField(format!("prime {p} too large")));
        }
        if e == 1 {
            return Ok(Field(Arc::new(Kind::Prime { p })));
        }
        Ok(Field(Arc::new(Kind::Galois {
            p,
            e,
            modulus: fpx::least_irreducible(e, p),
            generator: generator.to_string(),
        })))
    }

    /// GF(p^e) presented by a caller-supplied monic irreducible modulus.
    pub(crate) fn galois_with_modulus(p: u64, modulus: Fpx) -> Field {
        let e = modulus.len() - 1;
        if e == 1 {
            return Field(Arc::new(Kind::Prime { p }));
        }
        Field(Arc::new(Kind::Galois {
            p,
            e,
            modulus,
            generator: "u".to_string(),
        }))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Self::finite(p, 1)
    }

    /// The rational function field F_p(variable).
    pub fn rational_functions(p: u64, variable: &str) -> Result<Field> {
        if !fpx::is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if p >= (1u64 << 31) {
            return Err(Error::UnsupportedField(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(Kind::RationalFunctions {
            p,
            variable: variable.to_string(),
        })))
    }

    /// Simple extension base[X]/(m). The polynomial is made monic and checked for
    /// irreducibility with the factorization backend.
    pub fn extension(base: &Field, minpoly: &[Elem], generator: &str) -> Result<Field> {
        let m = crate::poly::Poly::new(base, minpoly.to_vec());
        if m.degree().unwrap_or(0) < 1 {
            return Err(Error::NotIrreducible("minimal polynomial must have degree ≥ 1".into()));
        }
        let report = crate::poly::factor(&m)?;
        if report.factors.len() != 1 || report.factors[0].1 != 1 {
            return Err(Error::NotIrreducible(m.to_string()));
        }
        Ok(Self::extension_unchecked(base, minpoly, generator))
    }

    /// Simple extension without the irreducibility check. The caller guarantees
    /// irreducibility (used for residue fields of known irreducibles).
    pub fn extension_unchecked(base: &Field, minpoly: &[Elem], generator: &str) -> Field {
        let mut m = minpoly.to_vec();
        raw::trim(base, &mut m);
        let lc = m.last().cloned().expect("nonzero minimal polynomial");
        let inv = base.inv(&lc).expect("nonzero leading coefficient");
        let m: Vec<Elem> = m.iter().map(|c| base.mul(c, &inv)).collect();
        let separability = classify_separability(base, &m);
        Field(Arc::new(Kind::Extension {
            base: base.clone(),
            minpoly: m,
            generator: generator.to_string(),
            separability,
        }))
    }

    pub fn kind(&self) -> &Kind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Kind::Rationals => 0,
            Kind::Prime { p } | Kind::Galois { p, .. } | Kind::RationalFunctions { p, .. } => *p,
            Kind::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements for finite fields.
    pub fn size(&self) -> Option<BigUint> {
        match &*self.0 {
            Kind::Rationals | Kind::RationalFunctions { .. } => None,
            Kind::Prime { p } => Some(BigUint::from(*p)),
            Kind::Galois { p, e, .. } => Some(BigUint::from(*p).pow(*e as u32)),
            Kind::Extension { base, minpoly, .. } => {
                base.size().map(|q| q.pow((minpoly.len() - 1) as u32))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Perfect fields: characteristic zero or finite.
    pub fn is_perfect(&self) -> bool {
        self.characteristic() == 0 || self.is_finite()
    }

    /// The field at the bottom of the tower (Q, GF(q) or F_p(t)).
    pub fn ground(&self) -> Field {
        match &*self.0 {
            Kind::Extension { base, .. } => base.ground(),
            _ => self.clone(),
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            Kind::Extension { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Degree over the immediate base (1 for non-extensions).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Kind::Extension { minpoly, .. } => minpoly.len() - 1,
            _ => 1,
        }
    }

    pub fn minpoly(&self) -> Option<&[Elem]> {
        match &*self.0 {
            Kind::Extension { minpoly, .. } => Some(minpoly),
            _ => None,
        }
    }

    pub fn separability(&self) -> Option<Separability> {
        match &*self.0 {
            Kind::Extension { separability, .. } => Some(*separability),
            _ => None,
        }
    }

    pub fn descriptor(&self) -> String {
        match &*self.0 {
            Kind::Rationals => "Q".into(),
            Kind::Prime { p } => format!("GF({p})"),
            Kind::Galois { p, e, .. } => format!("GF({p}^{e})"),
            Kind::RationalFunctions { p, variable } => format!("Fp({variable}):p={p}"),
            Kind::Extension {
                base,
                minpoly,
                generator,
                ..
            } => {
                let poly = format::format_poly_in(base, minpoly, "X");
                format!("ext({};{};{})", base.descriptor(), poly, generator)
            }
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::zero()),
            Kind::Prime { .. } => Elem::Fp(0),
            Kind::Galois { e, .. } => Elem::Gf(vec![0; *e]),
            Kind::RationalFunctions { .. } => Elem::Rf(vec![], vec![1]),
            Kind::Extension { base, minpoly, .. } => {
                Elem::Ext(vec![base.zero(); minpoly.len() - 1])
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            Kind::Rationals => Elem::Q(BigRational::from_integer(n.clone())),
            Kind::Prime { p } => Elem::Fp(reduce_bigint(n, *p)),
            Kind::Galois { p, e, .. } => {
                let mut v = vec![0; *e];
                v[0] = reduce_bigint(n, *p);
                Elem::Gf(v)
            }
            Kind::RationalFunctions { p, .. } => {
                Elem::Rf(fpx::constant(reduce_bigint(n, *p), *p), vec![1])
            }
            Kind::Extension { base, minpoly, .. } => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = base.from_bigint(n);
                Elem::Ext(v)
            }
        }
    }

    /// Rational number into a characteristic-zero field, or reduced mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(q) => q.is_zero(),
            Elem::Fp(v) => *v == 0,
            Elem::Gf(v) => v.iter().all(|&c| c == 0),
            Elem::Rf(n, _) => n.is_empty(),
            Elem::Ext(v) => match &*self.0 {
                Kind::Extension { base, .. } => v.iter().all(|c| base.is_zero(c)),
                _ => false,
            },
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % p),
            (Kind::Galois { p, .. }, Elem::Gf(x), Elem::Gf(y)) => {
                Elem::Gf(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            (Kind::RationalFunctions { p, .. }, Elem::Rf(n1, d1), Elem::Rf(n2, d2)) => {
                let p = *p;
                if d1 == d2 {
                    return rf_normalize(fpx::add(n1, n2, p), d1.clone(), p);
                }
                let n = fpx::add(&fpx::mul(n1, d2, p), &fpx::mul(n2, d1, p), p);
                rf_normalize(n, fpx::mul(d1, d2, p), p)
            }
            (Kind::Extension { base, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(u, v)| base.add(u, v)).collect())
            }
            _ => panic!("element does not belong to {}", self.descriptor()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (Kind::Rationals, Elem::Q(x)) => Elem::Q(-x),
            (Kind::Prime { p }, Elem::Fp(x)) => Elem::Fp((p - x) % p),
            (Kind::Galois { p, .. }, Elem::Gf(x)) => {
                Elem::Gf(x.iter().map(|u| (p - u) % p).collect())
            }
            (Kind::RationalFunctions { p, .. }, Elem::Rf(n, d)) => {
                Elem::Rf(fpx::neg(n, *p), d.clone())
            }
            (Kind::Extension { base, .. }, Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("element does not belong to {}", self.descriptor()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (Kind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Kind::Prime { p }, Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(fpx::mulmod(*x, *y, *p)),
            (Kind::Galois { p, e, modulus, .. }, Elem::Gf(x), Elem::Gf(y)) => {
                let prod = fpx::mul(x, y, *p);
                let mut r = fpx::rem(&prod, modulus, *p);
                r.resize(*e, 0);
                Elem::Gf(r)
            }
            (Kind::RationalFunctions { p, .. }, Elem::Rf(n1, d1), Elem::Rf(n2, d2)) => {
                let p = *p;
                if n1.is_empty() || n2.is_empty() {
                    return self.zero();
                }
                // cross-cancel before multiplying to keep degrees small
                let g1 = fpx::gcd(n1, d2, p);
                let g2 = fpx::gcd(n2, d1, p);
                let a1 = fpx::div_exact(n1, &g1, p).unwrap();
                let b2 = fpx::div_exact(d2, &g1, p).unwrap();
                let a2 = fpx::div_exact(n2, &g2, p).unwrap();
                let b1 = fpx::div_exact(d1, &g2, p).unwrap();
                let n = fpx::mul(&a1, &a2, p);
                let d = fpx::mul(&b1, &b2, p);
                let lc = *d.last().unwrap();
                let inv = fpx::invmod(lc, p);
                Elem::Rf(fpx::scale(&n, inv, p), fpx::scale(&d, inv, p))
            }
            (Kind::Extension { base, minpoly, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                let prod = raw::mul(base, x, y);
                Elem::Ext(reduce_mod_monic(base, prod, minpoly))
            }
            _ => panic!("element does not belong to {}", self.descriptor()),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(match (&*self.0, a) {
            (Kind::Rationals, Elem::Q(x)) => Elem::Q(x.recip()),
            (Kind::Prime { p }, Elem::Fp(x)) => Elem::Fp(fpx::invmod(*x, *p)),
            (Kind::Galois { p, e, modulus, .. }, Elem::Gf(x)) => {
                let mut xx = x.clone();
                fpx::trim(&mut xx);
                let (_, s, _) = fpx::xgcd(&xx, modulus, *p);
                let mut s = s;
                s.resize(*e, 0);
                Elem::Gf(s)
            }
            (Kind::RationalFunctions { p, .. }, Elem::Rf(n, d)) => {
                let p = *p;
                let inv = fpx::invmod(*n.last().unwrap(), p);
                Elem::Rf(fpx::scale(d, inv, p), fpx::scale(n, inv, p))
            }
            (Kind::Extension { base, minpoly, .. }, Elem::Ext(x)) => {
                let mut xx = x.clone();
                raw::trim(base, &mut xx);
                let (g, s, _) = raw::xgcd(base, &xx, minpoly)?;
                if g.len() != 1 {
                    return Err(Error::Domain(
                        "element is a zero divisor: minimal polynomial is reducible".into(),
                    ));
                }
                let mut s = s;
                s.resize(minpoly.len() - 1, base.zero());
                Elem::Ext(s)
            }
            _ => panic!("element does not belong to {}", self.descriptor()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e < 0 {
            let inv = self.inv(a)?;
            return Ok(self.pow_u(&inv, e.unsigned_abs()));
        }
        Ok(self.pow_u(a, e as u64))
    }

    pub fn pow_u(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut r = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    /// Sum of a slice.
    pub fn sum<'a, I: IntoIterator<Item = &'a Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Generator of this level of the tower, if any.
    pub fn generator(&self) -> Option<Elem> {
        match &*self.0 {
            Kind::Galois { e, .. } => {
                let mut v = vec![0; *e];
                v[1] = 1;
                Some(Elem::Gf(v))
            }
            Kind::RationalFunctions { .. } => Some(Elem::Rf(vec![0, 1], vec![1])),
            Kind::Extension { base, minpoly, .. } => {
                let d = minpoly.len() - 1;
                let mut v = vec![base.zero(); d];
                if d == 1 {
                    v[0] = base.neg(&minpoly[0]);
                } else {
                    v[1] = base.one();
                }
                Some(Elem::Ext(v))
            }
            _ => None,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            Kind::Galois { generator, .. } | Kind::Extension { generator, .. } => {
                Some(generator)
            }
            Kind::RationalFunctions { variable, .. } => Some(variable),
            _ => None,
        }
    }

    /// Resolves a named generator anywhere in the tower, embedded into self.
    pub fn variable(&self, name: &str) -> Option<Elem> {
        if self.generator_name() == Some(name) {
            return self.generator();
        }
        match &*self.0 {
            Kind::Extension { base, .. } => {
                let x = base.variable(name)?;
                Some(self.lift_from_base(&x))
            }
            _ => None,
        }
    }

    /// Embeds an element of the immediate base (or of GF(p) into GF(p^e)).
    pub fn lift_from_base(&self, x: &Elem) -> Elem {
        match (&*self.0, x) {
            (Kind::Extension { base, minpoly, .. }, _) => {
                let mut v = vec![base.zero(); minpoly.len() - 1];
                v[0] = x.clone();
                Elem::Ext(v)
            }
            (Kind::Galois { e, .. }, Elem::Fp(c)) => {
                let mut v = vec![0; *e];
                v[0] = *c;
                Elem::Gf(v)
            }
            _ => x.clone(),
        }
    }

    /// True when `sub` occurs in the tower below (or equals) self.
    pub fn contains_subfield(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match &*self.0 {
            Kind::Extension { base, .. } => base.contains_subfield(sub),
            Kind::Galois { p, .. } => matches!(&*sub.0, Kind::Prime { p: q } if q == p),
            _ => false,
        }
    }

    /// Canonical embedding of an element of a subfield of the tower.
    pub fn embed(&self, sub: &Field, x: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match &*self.0 {
            Kind::Extension { base, .. } if base.contains_subfield(sub) => {
                let y = base.embed(sub, x)?;
                Ok(self.lift_from_base(&y))
            }
            Kind::Galois { p, .. } => match (&*sub.0, x) {
                (Kind::Prime { p: q }, Elem::Fp(_)) if p == q => Ok(self.lift_from_base(x)),
                _ => Err(Error::Domain(format!(
                    "{} does not embed into {}",
                    sub.descriptor(),
                    self.descriptor()
                ))),
            },
            _ => Err(Error::Domain(format!(
                "{} does not embed into {}",
                sub.descriptor(),
                self.descriptor()
            ))),
        }
    }

    /// Coordinates over the subfield one level down: the immediate base for
    /// extensions, GF(p) for GF(p^e).
    pub fn coordinates(&self, x: &Elem) -> Option<(Field, Vec<Elem>)> {
        match (&*self.0, x) {
            (Kind::Extension { base, .. }, Elem::Ext(v)) => Some((base.clone(), v.clone())),
            (Kind::Galois { p, .. }, Elem::Gf(v)) => {
                let f = Field::prime(*p).ok()?;
                Some((f, v.iter().map(|&c| Elem::Fp(c)).collect()))
            }
            _ => None,
        }
    }

    /// The subfield one level down together with the degree over it.
    pub fn coordinate_subfield(&self) -> Option<(Field, usize)> {
        match &*self.0 {
            Kind::Extension { base, minpoly, .. } => Some((base.clone(), minpoly.len() - 1)),
            Kind::Galois { p, e, .. } => Some((Field::prime(*p).ok()?, *e)),
            _ => None,
        }
    }

    pub fn from_coordinates(&self, coords: &[Elem]) -> Result<Elem> {
        match &*self.0 {
            Kind::Extension { minpoly, .. } if coords.len() == minpoly.len() - 1 => {
                Ok(Elem::Ext(coords.to_vec()))
            }
            Kind::Galois { e, .. } if coords.len() == *e => Ok(Elem::Gf(
                coords
                    .iter()
                    .map(|c| match c {
                        Elem::Fp(v) => Ok(*v),
                        _ => Err(Error::Domain("expected prime field coordinates".into())),
                    })
                    .collect::<Result<_>>()?,
            )),
            _ => Err(Error::DimensionMismatch(
                "coordinate vector does not match field degree".into(),
            )),
        }
    }

    /// If x lies in the immediate base (all higher coordinates vanish), returns it.
    pub fn restrict_to_base(&self, x: &Elem) -> Option<Elem> {
        match (&*self.0, x) {
            (Kind::Extension { base, .. }, Elem::Ext(v)) => {
                if v[1..].iter().all(|c| base.is_zero(c)) {
                    Some(v[0].clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Restricts x to a subfield of the tower when it lies there.
    pub fn restrict_to(&self, sub: &Field, x: &Elem) -> Option<Elem> {
        if self == sub {
            return Some(x.clone());
        }
        match &*self.0 {
            Kind::Extension { base, .. } => {
                let y = self.restrict_to_base(x)?;
                base.restrict_to(sub, &y)
            }
            Kind::Galois { .. } => match (&*sub.0, x) {
                (Kind::Prime { .. }, Elem::Gf(v)) if v[1..].iter().all(|&c| c == 0) => {
                    Some(Elem::Fp(v[0]))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let size = self
            .size()
            .ok_or_else(|| Error::Domain("field is infinite".into()))?;
        let n = size
            .to_u64()
            .filter(|&n| n <= 1 << 20)
            .ok_or_else(|| Error::EnumerationBudgetExceeded("field too large".into()))?;
        let mut out = Vec::with_capacity(n as usize);
        match &*self.0 {
            Kind::Prime { p } => out.extend((0..*p).map(Elem::Fp)),
            Kind::Galois { p, e, .. } => {
                for mut idx in 0..n {
                    let mut v = vec![0; *e];
                    for c in v.iter_mut() {
                        *c = idx % p;
                        idx /= p;
                    }
                    out.push(Elem::Gf(v));
                }
            }
            Kind::Extension { base, minpoly, .. } => {
                let be = base.elements()?;
                let d = minpoly.len() - 1;
                let bl = be.len() as u64;
                for mut idx in 0..n {
                    let mut v = Vec::with_capacity(d);
                    for _ in 0..d {
                        v.push(be[(idx % bl) as usize].clone());
                        idx /= bl;
                    }
                    out.push(Elem::Ext(v));
                }
            }
            _ => unreachable!(),
        }
        out.sort();
        Ok(out)
    }

    /// Uniformly random element of a finite field; small random element otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            Kind::Rationals => {
                let n: i64 = rng.gen_range(-6..=6);
                let d: i64 = rng.gen_range(1..=4);
                Elem::Q(BigRational::new(n.into(), d.into()))
            }
            Kind::Prime { p } => Elem::Fp(rng.gen_range(0..*p)),
            Kind::Galois { p, e, .. } => Elem::Gf((0..*e).map(|_| rng.gen_range(0..*p)).collect()),
            Kind::RationalFunctions { p, .. } => {
                let dn = rng.gen_range(0..=2usize);
                let mut n: Fpx = (0..=dn).map(|_| rng.gen_range(0..*p)).collect();
                fpx::trim(&mut n);
                let dd = rng.gen_range(0..=1usize);
                let mut d: Fpx = (0..dd).map(|_| rng.gen_range(0..*p)).collect();
                d.push(1);
                rf_normalize(n, d, *p)
            }
            Kind::Extension { base, minpoly, .. } => {
                Elem::Ext((0..minpoly.len() - 1).map(|_| base.random(rng)).collect())
            }
        }
    }

    /// Random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        format::format_elem(self, a)
    }

    pub fn parse(&self, literal: &str) -> Result<Elem> {
        parse::parse_element(self, literal)
    }

    /// The p-th root of x when it exists in the field.
    pub fn pth_root(&self, x: &Elem) -> Result<Option<Elem>> {
        pbasis::pth_root(self, x)
    }

    /// Writes x = Σ z^i y_i^p over a field with [L : L^p] = p, where z is
    /// `p_basis_element`.
    pub fn p_decompose(&self, x: &Elem) -> Result<Vec<Elem>> {
        pbasis::p_decompose(self, x)
    }

    /// The element z whose powers 1, z, …, z^(p-1) form a basis over L^p.
    pub fn p_basis_element(&self) -> Result<Elem> {
        pbasis::p_basis_element(self)
    }

    /// An n-th root of x in the field, if one exists.
    pub fn is_nth_power(&self, x: &Elem, n: u64) -> Result<Option<Elem>> {
        powers::is_nth_power(self, x, n)
    }
}

fn classify_separability(base: &Field, m: &[Elem]) -> Separability {
    let d = raw::derivative(base, m);
    if !d.is_empty() {
        return Separability::Separable;
    }
    let p = base.characteristic() as usize;
    let deg = m.len() - 1;
    if deg == p && m[1..p].iter().all(|c| base.is_zero(c)) {
        Separability::PurelyInseparable
    } else {
        Separability::Inseparable
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

pub(crate) fn rf_normalize(n: Fpx, d: Fpx, p: u64) -> Elem {
    if n.is_empty() {
        return Elem::Rf(vec![], vec![1]);
    }
    let g = fpx::gcd(&n, &d, p);
    let (mut n, mut d) = if fpx::is_one(&g) {
        (n, d)
    } else {
        (
            fpx::div_exact(&n, &g, p).unwrap(),
            fpx::div_exact(&d, &g, p).unwrap(),
        )
    };
    let lc = *d.last().unwrap();
    if lc != 1 {
        let inv = fpx::invmod(lc, p);
        n = fpx::scale(&n, inv, p);
        d = fpx::scale(&d, inv, p);
    }
    Elem::Rf(n, d)
}

/// Reduces a coefficient vector modulo a monic polynomial, padding to its degree.
pub(crate) fn reduce_mod_monic(base: &Field, mut v: Vec<Elem>, m: &[Elem]) -> Vec<Elem> {
    let d = m.len() - 1;
    if v.len() > d {
        for k in (d..v.len()).rev() {
            let c = v[k].clone();
            if base.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let t = base.mul(&c, &m[j]);
                v[k - d + j] = base.sub(&v[k - d + j], &t);
            }
            v[k] = base.zero();
        }
        v.truncate(d);
    }
    v.resize(d, base.zero());
    v
}

/// Builds an F_p(t) element from numerator and denominator polynomials.
pub fn rational_function(field: &Field, num: Fpx, den: Fpx) -> Result<Elem> {
    match field.kind() {
        Kind::RationalFunctions { p, .. } => {
            let mut den = den;
            fpx::trim(&mut den);
            if den.is_empty() {
                return Err(Error::Domain("denominator zero".into()));
            }
            let mut num = num;
            fpx::trim(&mut num);
            Ok(rf_normalize(num, den, *p))
        }
        _ => Err(Error::Domain("not a rational function field".into())),
    }
}

impl Elem {
    pub fn as_q(&self) -> Option<&BigRational> {
        match self {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }
}

/// Convenience: a rational element from an integer ratio.
pub fn q(n: i64, d: i64) -> Elem {
    Elem::Q(BigRational::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_generator_squared() {
        let f = Field::finite(2, 2).unwrap();
        let g = f.generator().unwrap();
        let g2 = f.mul(&g, &g);
        assert_eq!(f.format(&g2), "g+1");
    }

    #[test]
    fn rational_function_cancellation() {
        let f = Field::rational_functions(2, "t").unwrap();
        let x = f.parse("(t^2+t)/(t)").unwrap();
        assert_eq!(f.format(&x), "t+1");
    }

    #[test]
    fn rational_reduction() {
        let f = Field::rationals();
        assert_eq!(f.format(&f.parse("−3/6").unwrap()), "-1/2");
    }

    #[test]
    fn extension_inverse() {
        let q = Field::rationals();
        let i = Field::extension(&q, &[q.one(), q.zero(), q.one()], "i").unwrap();
        let x = i.parse("1+i").unwrap();
        let y = i.inv(&x).unwrap();
        assert_eq!(i.format(&y), "-1/2*i+1/2");
        assert!(i.is_one(&i.mul(&x, &y)));
    }
}
