//! Cocharacters as integer weight vectors, weight gradings and limits.
//!
//! A cocharacter is stored as diagonal weights together with an optional
//! conjugator `C`, meaning λ(a) = C · diag(a^w) · C⁻¹. Every operation moves
//! the input into the diagonal coordinates with `C⁻¹`, works with integer
//! weights there, and moves the result back with `C`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter {
    pub weights: Vec<i64>,
    pub conjugator: Option<Matrix>,
}

impl Cocharacter {
    pub fn new(weights: Vec<i64>) -> Cocharacter {
        Cocharacter {
            weights,
            conjugator: None,
        }
    }

    pub fn zero(rank: usize) -> Cocharacter {
        Self::new(vec![0; rank])
    }

    /// λ conjugated by g: (g·λ)(a) = g λ(a) g⁻¹.
    pub fn with_conjugator(weights: Vec<i64>, g: Matrix) -> Result<Cocharacter> {
        if !g.is_square() {
            return Err(Error::NonSquare);
        }
        if !g.is_invertible() {
            return Err(Error::Domain("conjugator is not invertible".into()));
        }
        Ok(Cocharacter {
            weights,
            conjugator: Some(g),
        })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn scaled(&self, n: i64) -> Cocharacter {
        Cocharacter {
            weights: self.weights.iter().map(|w| w * n).collect(),
            conjugator: self.conjugator.clone(),
        }
    }

    pub fn negated(&self) -> Cocharacter {
        self.scaled(-1)
    }

    /// Sum of two cocharacters diagonal in the same coordinates.
    pub fn add(&self, other: &Cocharacter) -> Result<Cocharacter> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch("cocharacter ranks differ".into()));
        }
        if !same_conjugator(&self.conjugator, &other.conjugator) {
            return Err(Error::PreconditionFailed(
                "cocharacters are not diagonal in a common basis".into(),
            ));
        }
        Ok(Cocharacter {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a + b)
                .collect(),
            conjugator: self.conjugator.clone().or_else(|| other.conjugator.clone()),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weights": self.weights,
            "conjugator": self.conjugator.as_ref().map(|c| c.to_string_rows()),
        })
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Cocharacter> {
        let weights = v
            .get("weights")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Syntax("cocharacter needs a \"weights\" array".into()))?
            .iter()
            .map(|w| {
                w.as_i64()
                    .ok_or_else(|| Error::Syntax("weights must be integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        match v.get("conjugator") {
            None | Some(Value::Null) => Ok(Self::new(weights)),
            Some(c) => Self::with_conjugator(weights, matrix_from_json_rows(field, c)?),
        }
    }
}

fn same_conjugator(a: &Option<Matrix>, b: &Option<Matrix>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x == y,
        (Some(x), None) | (None, Some(x)) => *x == Matrix::identity(&x.field, x.rows),
    }
}

/// Parses `[[...],...]` with string or integer entries.
pub fn matrix_from_json_rows(field: &Field, v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Syntax("matrix rows must be an array".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Syntax("matrix row must be an array".into()))?
                .iter()
                .map(|x| elem_from_json(field, x))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => field.parse(&n.to_string()),
        _ => Err(Error::Syntax(format!("bad field element literal {v}"))),
    }
}

/// A linear action of a group on a model space with a diagonal maximal torus.
pub trait ActionModel {
    fn name(&self) -> &str;
    fn field(&self) -> &Field;
    /// Dimension of the model space V.
    fn dim(&self) -> usize;
    /// Length of cocharacter weight vectors.
    fn rank(&self) -> usize;
    /// Weight of each coordinate of V under the diagonal cocharacter.
    fn coordinate_weights(&self, weights: &[i64]) -> Result<Vec<i64>>;
    /// g · v for a group element in the model's matrix form.
    fn act(&self, g: &Matrix, v: &[Elem]) -> Result<Vec<Elem>>;
    /// Whether two points lie in one G(k)-orbit, when the model can decide it.
    fn same_orbit(&self, _a: &[Elem], _b: &[Elem]) -> Result<Option<bool>> {
        Ok(None)
    }
    fn is_linear(&self) -> bool {
        true
    }
}

/// Decomposition of a point into weight components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGrading {
    pub components: BTreeMap<i64, Vec<Elem>>,
}

impl WeightGrading {
    pub fn weights(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    pub fn reassemble(&self, field: &Field, dim: usize) -> Vec<Elem> {
        let mut acc = vec![field.zero(); dim];
        for c in self.components.values() {
            for (a, x) in acc.iter_mut().zip(c) {
                *a = field.add(a, x);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitClass {
    FixesPoint,
    DestabilizesWithinRationalOrbit,
    ProperlyDestabilizes,
    Unknown,
}

impl LimitClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            LimitClass::FixesPoint => "FixesPoint",
            LimitClass::DestabilizesWithinRationalOrbit => "DestabilizesWithinRationalOrbit",
            LimitClass::ProperlyDestabilizes => "ProperlyDestabilizes",
            LimitClass::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub exists: bool,
    pub value: Option<Vec<Elem>>,
    pub classification: LimitClass,
}

impl LimitResult {
    pub fn to_json(&self, field: &Field) -> Value {
        json!({
            "exists": self.exists,
            "value": self.value.as_ref().map(|v| v.iter().map(|x| field.format(x)).collect::<Vec<_>>()),
            "classification": self.classification.as_str(),
        })
    }
}

fn check_model(v: &[Elem], lambda: &Cocharacter, model: &dyn ActionModel) -> Result<Vec<i64>> {
    if !model.is_linear() {
        return Err(Error::NotLinearizable);
    }
    if v.len() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, model space has {}",
            v.len(),
            model.dim()
        )));
    }
    if lambda.rank() != model.rank() {
        return Err(Error::DimensionMismatch(format!(
            "cocharacter rank {} but model rank {}",
            lambda.rank(),
            model.rank()
        )));
    }
    model.coordinate_weights(&lambda.weights)
}

fn to_diagonal(v: &[Elem], lambda: &Cocharacter, model: &dyn ActionModel) -> Result<Vec<Elem>> {
    match &lambda.conjugator {
        Some(c) => model.act(&c.inverse()?, v),
        None => Ok(v.to_vec()),
    }
}

fn from_diagonal(v: &[Elem], lambda: &Cocharacter, model: &dyn ActionModel) -> Result<Vec<Elem>> {
    match &lambda.conjugator {
        Some(c) => model.act(c, v),
        None => Ok(v.to_vec()),
    }
}

pub fn grade_vector(v: &[Elem], lambda: &Cocharacter, model: &dyn ActionModel) -> Result<WeightGrading> {
    let cw = check_model(v, lambda, model)?;
    let f = model.field();
    let d = to_diagonal(v, lambda, model)?;
    let mut components = BTreeMap::new();
    for (i, x) in d.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        components
            .entry(cw[i])
            .or_insert_with(|| vec![f.zero(); d.len()])[i] = x.clone();
    }
    let mut out = BTreeMap::new();
    for (w, c) in components {
        out.insert(w, from_diagonal(&c, lambda, model)?);
    }
    Ok(WeightGrading { components: out })
}

pub fn limit(v: &[Elem], lambda: &Cocharacter, model: &dyn ActionModel) -> Result<LimitResult> {
    let cw = check_model(v, lambda, model)?;
    let f = model.field();
    let d = to_diagonal(v, lambda, model)?;
    if d.iter().zip(&cw).any(|(x, &w)| w < 0 && !f.is_zero(x)) {
        return Ok(LimitResult {
            exists: false,
            value: None,
            classification: LimitClass::Unknown,
        });
    }
    let proj: Vec<Elem> = d
        .iter()
        .zip(&cw)
        .map(|(x, &w)| if w == 0 { x.clone() } else { f.zero() })
        .collect();
    let value = from_diagonal(&proj, lambda, model)?;
    let classification = if value == v {
        LimitClass::FixesPoint
    } else {
        match model.same_orbit(v, &value)? {
            Some(true) => LimitClass::DestabilizesWithinRationalOrbit,
            Some(false) => LimitClass::ProperlyDestabilizes,
            None => LimitClass::Unknown,
        }
    };
    Ok(LimitResult {
        exists: true,
        value: Some(value),
        classification,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InRuP,
    InLevi,
    InPNotLevi,
    NotInP,
}

/// Position of g relative to P_λ, its Levi L_λ and unipotent radical R_u(P_λ).
pub fn p_lambda_membership(g: &Matrix, lambda: &Cocharacter) -> Result<Membership> {
    if !g.is_square() {
        return Err(Error::NonSquare);
    }
    if g.rows != lambda.rank() {
        return Err(Error::DimensionMismatch(format!(
            "matrix size {} but cocharacter rank {}",
            g.rows,
            lambda.rank()
        )));
    }
    if !g.is_invertible() {
        return Err(Error::Domain("matrix is not invertible".into()));
    }
    let f = &g.field;
    let h = match &lambda.conjugator {
        Some(c) => c.inverse()?.mul(g).mul(c),
        None => g.clone(),
    };
    let w = &lambda.weights;
    let n = h.rows;
    let mut in_p = true;
    let mut block_diag = true;
    let mut levi_identity = true;
    for i in 0..n {
        for j in 0..n {
            let x = h.get(i, j);
            if w[i] < w[j] && !f.is_zero(x) {
                in_p = false;
            }
            if w[i] != w[j] && !f.is_zero(x) {
                block_diag = false;
            }
            if w[i] == w[j] {
                let expect = if i == j { f.one() } else { f.zero() };
                if *x != expect {
                    levi_identity = false;
                }
            }
        }
    }
    Ok(if block_diag {
        Membership::InLevi
    } else if in_p && levi_identity {
        Membership::InRuP
    } else if in_p {
        Membership::InPNotLevi
    } else {
        Membership::NotInP
    })
}

/// First point μ_j = (1, -j, j², ...) of the moment curve, j = 0, 1, 2, ...,
/// pairing nonzero with every character. A nonzero character vanishes at
/// fewer than `rank` such points, so the search terminates.
pub fn torus_to_cocharacter(characters: &[Vec<i64>], rank: usize) -> Result<Cocharacter> {
    let chars: Vec<&Vec<i64>> = characters.iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    if chars.iter().any(|c| c.len() != rank) {
        return Err(Error::DimensionMismatch("character length differs from rank".into()));
    }
    if chars.is_empty() {
        return Ok(Cocharacter::zero(rank));
    }
    for j in 0i64.. {
        let mu: Vec<i64> = (0..rank as u32).map(|i| (-j).pow(i)).collect();
        let ok = chars
            .iter()
            .all(|c| c.iter().zip(&mu).map(|(a, b)| a * b).sum::<i64>() != 0);
        if ok {
            return Ok(Cocharacter::new(mu));
        }
    }
    unreachable!()
}

/// Smallest N such that the limit along nλ+μ equals the two-step limit
/// lim_μ(lim_λ v) for every n ≥ N. Beyond 1 + max |μ-weight on V| all n agree.
pub fn iterated_limit_check(
    v: &[Elem],
    lambda: &Cocharacter,
    mu: &Cocharacter,
    model: &dyn ActionModel,
) -> Result<(i64, LimitResult)> {
    if !same_conjugator(&lambda.conjugator, &mu.conjugator) {
        return Err(Error::PreconditionFailed(
            "cocharacters are not diagonal in a common basis".into(),
        ));
    }
    let first = limit(v, lambda, model)?;
    let Some(v1) = first.value else {
        return Err(Error::PreconditionFailed("limit along λ does not exist".into()));
    };
    let second = limit(&v1, mu, model)?;
    let Some(v2) = second.value.clone() else {
        return Err(Error::PreconditionFailed(
            "limit along μ of the λ-limit does not exist".into(),
        ));
    };
    let mw = model.coordinate_weights(&mu.weights)?;
    let bound = 1 + mw.iter().map(|w| w.abs()).max().unwrap_or(0);
    let mut n_min = bound;
    let mut witness = limit(v, &lambda.scaled(bound).add(mu)?, model)?;
    if witness.value.as_ref() != Some(&v2) {
        return Err(Error::Domain("combined limit disagrees at the bound".into()));
    }
    for n in (1..bound).rev() {
        let r = limit(v, &lambda.scaled(n).add(mu)?, model)?;
        if r.value.as_ref() != Some(&v2) {
            break;
        }
        n_min = n;
        witness = r;
    }
    Ok((n_min, witness))
}

// ---------------------------------------------------------------------------
// built-in linear models

/// GL_n acting on k^n.
#[derive(Clone, Debug)]
pub struct NaturalModel {
    pub field: Field,
    pub n: usize,
}

impl ActionModel for NaturalModel {
    fn name(&self) -> &str {
        "natural"
    }
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn rank(&self) -> usize {
        self.n
    }
    fn coordinate_weights(&self, weights: &[i64]) -> Result<Vec<i64>> {
        Ok(weights.to_vec())
    }
    fn act(&self, g: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
        Ok(g.mul_vec(v))
    }
    fn same_orbit(&self, a: &[Elem], b: &[Elem]) -> Result<Option<bool>> {
        let za = a.iter().all(|x| self.field.is_zero(x));
        let zb = b.iter().all(|x| self.field.is_zero(x));
        Ok(Some(za == zb))
    }
}

/// GL_n acting on r-tuples of n×n matrices by simultaneous conjugation;
/// points are the row-major entries of the matrices, concatenated.
#[derive(Clone, Debug)]
pub struct ConjugationModel {
    pub field: Field,
    pub n: usize,
    pub r: usize,
}

impl ConjugationModel {
    pub fn endo(field: &Field, n: usize) -> ConjugationModel {
        ConjugationModel {
            field: field.clone(),
            n,
            r: 1,
        }
    }

    pub fn tuples(field: &Field, n: usize, r: usize) -> ConjugationModel {
        ConjugationModel {
            field: field.clone(),
            n,
            r,
        }
    }

    pub fn matrices(&self, v: &[Elem]) -> Result<Vec<Matrix>> {
        unflatten(&self.field, self.n, v)
    }
}

pub fn flatten(ms: &[Matrix]) -> Vec<Elem> {
    ms.iter().flat_map(|m| m.data.iter().cloned()).collect()
}

pub fn unflatten(field: &Field, n: usize, v: &[Elem]) -> Result<Vec<Matrix>> {
    if n == 0 || v.len() % (n * n) != 0 {
        return Err(Error::DimensionMismatch("point is not a tuple of square matrices".into()));
    }
    Ok(v.chunks(n * n)
        .map(|c| Matrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data: c.to_vec(),
        })
        .collect())
}

impl ActionModel for ConjugationModel {
    fn name(&self) -> &str {
        if self.r == 1 {
            "conjugation"
        } else {
            "tuple-conjugation"
        }
    }
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        self.r * self.n * self.n
    }
    fn rank(&self) -> usize {
        self.n
    }
    fn coordinate_weights(&self, w: &[i64]) -> Result<Vec<i64>> {
        let n = self.n;
        Ok((0..self.r)
            .flat_map(|_| (0..n * n).map(move |k| w[k / n] - w[k % n]))
            .collect())
    }
    fn act(&self, g: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
        let gi = g.inverse()?;
        let ms = self.matrices(v)?;
        Ok(flatten(
            &ms.iter().map(|m| g.mul(m).mul(&gi)).collect::<Vec<_>>(),
        ))
    }
    fn same_orbit(&self, a: &[Elem], b: &[Elem]) -> Result<Option<bool>> {
        if self.r != 1 {
            return Ok(None);
        }
        let fa = crate::endo::invariant_factors(&self.matrices(a)?[0])?;
        let fb = crate::endo::invariant_factors(&self.matrices(b)?[0])?;
        Ok(Some(fa.invariant_factors == fb.invariant_factors))
    }
}

/// G_m acting on the line by a·z = a^weight z.
#[derive(Clone, Debug)]
pub struct WeightLineModel {
    pub field: Field,
    pub weight: i64,
}

impl ActionModel for WeightLineModel {
    fn name(&self) -> &str {
        "weight-line"
    }
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        1
    }
    fn rank(&self) -> usize {
        1
    }
    fn coordinate_weights(&self, w: &[i64]) -> Result<Vec<i64>> {
        Ok(vec![w[0] * self.weight])
    }
    fn act(&self, g: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
        if g.rows != 1 || g.cols != 1 {
            return Err(Error::DimensionMismatch("G_m elements are 1×1".into()));
        }
        let a = self.field.pow(g.get(0, 0), self.weight)?;
        Ok(vec![self.field.mul(&a, &v[0])])
    }
    fn same_orbit(&self, a: &[Elem], b: &[Elem]) -> Result<Option<bool>> {
        let f = &self.field;
        match (f.is_zero(&a[0]), f.is_zero(&b[0])) {
            (true, true) => Ok(Some(true)),
            (false, false) => {
                let q = f.div(&b[0], &a[0])?;
                Ok(Some(f.is_nth_power(&q, self.weight.unsigned_abs())?.is_some()))
            }
            _ => Ok(Some(false)),
        }
    }
}
