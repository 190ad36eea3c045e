//! Tuples of matrices as modules over the algebra they generate.
//!
//! Composition series are found with a Holt–Rees style MeatAxe: a singular
//! element q(x) of the algebra yields candidate vectors that either spin to a
//! proper submodule (of the module or its dual) or prove irreducibility when
//! dim ker q(x) = deg q. The Jacobson radical is the set of algebra elements
//! acting as zero on every composition factor.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::endo;
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::{self, Matrix};
use crate::poly::{self, Poly};

pub const DEFAULT_SEED: u64 = 0x5eed;
const MAX_ATTEMPTS: usize = 400;

/// Incrementally maintained reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field) -> Echelon {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        v
    }

    /// Adds v if independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let f = self.field.clone();
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero pivot");
        let w: Vec<Elem> = w.iter().map(|x| f.mul(x, &inv)).collect();
        for r in self.rows.iter_mut() {
            if !f.is_zero(&r[p]) {
                let c = r[p].clone();
                for (x, y) in r.iter_mut().zip(&w) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}

fn check_tuple(t: &[Matrix]) -> Result<(Field, usize)> {
    let first = t
        .first()
        .ok_or_else(|| Error::DimensionMismatch("empty tuple".into()))?;
    let n = first.rows;
    for m in t {
        if !m.is_square() {
            return Err(Error::NonSquare);
        }
        if m.rows != n || m.field != first.field {
            return Err(Error::DimensionMismatch("tuple matrices differ in size or field".into()));
        }
    }
    Ok((first.field.clone(), n))
}

/// Basis of the unital algebra generated by the tuple, breadth-first over words.
pub fn enveloping_basis(t: &[Matrix]) -> Result<Vec<Matrix>> {
    let (f, n) = check_tuple(t)?;
    let mut ech = Echelon::new(&f);
    let mut basis = Vec::new();
    let id = Matrix::identity(&f, n);
    ech.insert(&id.data);
    basis.push(id);
    let mut i = 0;
    while i < basis.len() {
        for g in t {
            let w = basis[i].mul(g);
            if ech.insert(&w.data) {
                basis.push(w);
            }
        }
        i += 1;
    }
    Ok(basis)
}

/// Smallest subspace containing the seeds and stable under the generators.
fn spin(f: &Field, gens: &[Matrix], seeds: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut ech = Echelon::new(f);
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        if ech.insert(s) {
            basis.push(s.clone());
        }
    }
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let w = g.mul_vec(&basis[i]);
            if ech.insert(&w) {
                basis.push(w);
            }
        }
        i += 1;
    }
    basis
}

fn random_element(f: &Field, alg: &[Matrix], rng: &mut ChaCha8Rng, attempt: usize) -> Matrix {
    // first try the basis elements themselves, then random combinations
    if attempt < alg.len() {
        return alg[attempt].clone();
    }
    let n = alg[0].rows;
    let mut acc = Matrix::zeros(f, n, n);
    for b in alg {
        let c = f.random(rng);
        acc = acc.add(&b.scale(&c));
    }
    acc
}

/// A proper nonzero submodule, or None with a proof of irreducibility.
fn find_submodule(
    f: &Field,
    gens: &[Matrix],
    rng: &mut ChaCha8Rng,
) -> Result<Option<Vec<Vec<Elem>>>> {
    let m = gens[0].rows;
    if m <= 1 {
        return Ok(None);
    }
    let alg = enveloping_basis(gens)?;
    let transposed: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    for attempt in 0..MAX_ATTEMPTS {
        let x = random_element(f, &alg, rng, attempt);
        let chi = endo::char_poly(&x)?;
        let mut qs: Vec<Poly> = poly::factor(&chi)?.factors.into_iter().map(|(q, _)| q).collect();
        qs.sort_by_key(|q| q.deg());
        for q in qs {
            let qx = x.eval_poly(q.coeffs());
            let kernel = qx.kernel();
            let s = spin(f, gens, &kernel[..1]);
            if s.len() < m {
                return Ok(Some(s));
            }
            let dual_kernel = qx.transpose().kernel();
            let sd = spin(f, &transposed, &dual_kernel[..1]);
            if sd.len() < m {
                let ann = linalg::nullspace(f, &sd, m);
                return Ok(Some(ann));
            }
            if kernel.len() == q.deg() {
                return Ok(None);
            }
        }
    }
    Err(Error::Domain(format!(
        "irreducibility test did not settle after {MAX_ATTEMPTS} elements"
    )))
}

/// Block upper triangular form from a composition series.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// Columns are the adapted basis.
    pub basis: Matrix,
    /// Block boundaries 0 = b_0 < b_1 < ... < b_s = n.
    pub breaks: Vec<usize>,
}

impl CompositionSeries {
    pub fn factor_dims(&self) -> Vec<usize> {
        self.breaks.windows(2).map(|w| w[1] - w[0]).collect()
    }

    fn blocks(&self, m: &Matrix) -> Result<Vec<Matrix>> {
        let conj = self.basis.inverse()?.mul(m).mul(&self.basis);
        Ok(self
            .breaks
            .windows(2)
            .map(|w| submatrix(&conj, w[0], w[1]))
            .collect())
    }
}

fn submatrix(m: &Matrix, a: usize, b: usize) -> Matrix {
    let mut out = Matrix::zeros(&m.field, b - a, b - a);
    for i in a..b {
        for j in a..b {
            out.set(i - a, j - a, m.get(i, j).clone());
        }
    }
    out
}

pub fn composition_series(t: &[Matrix], seed: u64) -> Result<CompositionSeries> {
    let (f, n) = check_tuple(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = Matrix::identity(&f, n);
    let mut breaks = vec![0, n];
    let mut i = 0;
    while i + 1 < breaks.len() {
        let (a, b) = (breaks[i], breaks[i + 1]);
        let pinv = basis.inverse()?;
        let gens: Vec<Matrix> = t
            .iter()
            .map(|m| submatrix(&pinv.mul(m).mul(&basis), a, b))
            .collect();
        match find_submodule(&f, &gens, &mut rng)? {
            None => i += 1,
            Some(sub) => {
                let d = b - a;
                let mut local = sub.clone();
                local.extend(linalg::extend_basis(
                    &f,
                    &sub,
                    &(0..d).map(|j| linalg::unit_vector(&f, d, j)).collect::<Vec<_>>(),
                ));
                // new columns a..b of the global basis
                let old: Vec<Vec<Elem>> = (a..b).map(|j| basis.col(j)).collect();
                let mut cols: Vec<Vec<Elem>> = (0..n).map(|j| basis.col(j)).collect();
                for (k, lv) in local.iter().enumerate() {
                    let mut v = vec![f.zero(); n];
                    for (c, ov) in lv.iter().zip(&old) {
                        for (x, y) in v.iter_mut().zip(ov) {
                            *x = f.add(x, &f.mul(c, y));
                        }
                    }
                    cols[a + k] = v;
                }
                basis = Matrix::from_cols(&f, &cols)?;
                breaks.insert(i + 1, a + sub.len());
            }
        }
    }
    Ok(CompositionSeries { basis, breaks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionFactor {
    pub dim: usize,
    /// Minimal polynomials of the generators on the factor.
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReport {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub composition_factors: Vec<CompositionFactor>,
    pub semisimple: bool,
    pub seed: u64,
    /// A nonzero radical element when not semisimple.
    pub radical_witness: Option<Matrix>,
    /// Adapted basis of the composition series.
    pub adapted_basis: Matrix,
}

impl ModuleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "algebra_dim": self.algebra_dim,
            "radical_dim": self.radical_dim,
            "semisimple": self.semisimple,
            "seed": self.seed,
            "composition_factors": self.composition_factors.iter().map(|c| json!({
                "dim": c.dim,
                "fingerprint": c.fingerprint,
            })).collect::<Vec<_>>(),
            "radical_witness": self.radical_witness.as_ref().map(|m| m.to_string_rows()),
            "adapted_basis": self.adapted_basis.to_string_rows(),
        })
    }
}

fn supported(f: &Field, r: usize) -> Result<()> {
    let imperfect = f.characteristic() > 0 && !f.is_perfect();
    if imperfect && r > 1 {
        return Err(Error::UnsupportedField(format!(
            "semisimplicity of multi-matrix tuples over the imperfect field {}",
            f.descriptor()
        )));
    }
    Ok(())
}

/// Kernel of the trace form (a, b) ↦ tr(ab) on the algebra.
pub fn trace_radical_dim(alg: &[Matrix]) -> Result<usize> {
    let f = alg[0].field.clone();
    let d = alg.len();
    let trace = |m: &Matrix| f.sum((0..m.rows).map(|i| m.get(i, i)));
    let rows: Vec<Vec<Elem>> = (0..d)
        .map(|i| (0..d).map(|j| trace(&alg[i].mul(&alg[j]))).collect())
        .collect();
    Ok(linalg::nullspace(&f, &rows, d).len())
}

pub fn is_semisimple(t: &[Matrix]) -> Result<ModuleReport> {
    is_semisimple_seeded(t, DEFAULT_SEED)
}

pub fn is_semisimple_seeded(t: &[Matrix], seed: u64) -> Result<ModuleReport> {
    let (f, _) = check_tuple(t)?;
    supported(&f, t.len())?;
    let alg = enveloping_basis(t)?;
    let series = composition_series(t, seed)?;
    let pinv = series.basis.inverse()?;
    // coefficients c with Σ c_k B_k zero on every diagonal block
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let conj: Vec<Matrix> = alg.iter().map(|b| pinv.mul(b).mul(&series.basis)).collect();
    for w in series.breaks.windows(2) {
        for i in w[0]..w[1] {
            for j in w[0]..w[1] {
                rows.push(conj.iter().map(|c| c.get(i, j).clone()).collect());
            }
        }
    }
    let kernel = linalg::nullspace(&f, &rows, alg.len());
    let mut radical_dim = kernel.len();
    if f.characteristic() == 0 {
        let tr = trace_radical_dim(&alg)?;
        if tr != radical_dim {
            return Err(Error::Domain(format!(
                "trace-form radical {tr} disagrees with composition radical {radical_dim}"
            )));
        }
        radical_dim = tr;
    }
    let radical_witness = kernel.first().map(|c| {
        let n = alg[0].rows;
        alg.iter()
            .zip(c)
            .fold(Matrix::zeros(&f, n, n), |acc, (b, x)| acc.add(&b.scale(x)))
    });
    let mut composition_factors = Vec::new();
    let blocks: Vec<Vec<Matrix>> = t.iter().map(|m| series.blocks(m)).collect::<Result<_>>()?;
    for (idx, dim) in series.factor_dims().into_iter().enumerate() {
        let mus: Vec<String> = blocks
            .iter()
            .map(|bs| endo::min_poly(&bs[idx]).map(|p| p.to_string()))
            .collect::<Result<_>>()?;
        composition_factors.push(CompositionFactor {
            dim,
            fingerprint: format!("dim {dim}; mu [{}]", mus.join(", ")),
        });
    }
    Ok(ModuleReport {
        algebra_dim: alg.len(),
        radical_dim,
        semisimple: radical_dim == 0,
        composition_factors,
        seed,
        radical_witness,
        adapted_basis: series.basis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcrReport {
    pub gcr: bool,
    pub module: ModuleReport,
}

/// Complete reducibility of the subgroup generated by invertible matrices.
pub fn gcr_over_k(generators: &[Matrix]) -> Result<GcrReport> {
    check_tuple(generators)?;
    if generators.iter().any(|g| !g.is_invertible()) {
        return Err(Error::Domain("group generators must be invertible".into()));
    }
    // the algebra generated by invertible matrices contains their inverses
    let module = is_semisimple(generators)?;
    Ok(GcrReport {
        gcr: module.semisimple,
        module,
    })
}

/// Associated graded of a composition series: block diagonal tuple.
pub fn semisimplify_tuple(t: &[Matrix]) -> Result<Vec<Matrix>> {
    let (f, _) = check_tuple(t)?;
    supported(&f, t.len())?;
    let series = composition_series(t, DEFAULT_SEED)?;
    t.iter()
        .map(|m| Ok(Matrix::block_diagonal(&f, &series.blocks(m)?)))
        .collect()
}

/// Splits v ∈ k₁ⁿ as Σ α_i v_i with v_i ∈ kⁿ for a basis α of k₁ over the
/// subfield one level down (or k₁ itself for a one-element basis).
pub fn tuple_from_extension_point(
    v: &[Elem],
    field: &Field,
    basis: &[Elem],
) -> Result<(Field, Vec<Vec<Elem>>)> {
    if basis.len() == 1 {
        let inv = field
            .inv(&basis[0])
            .map_err(|_| Error::BasisMismatch("zero basis element".into()))?;
        return Ok((field.clone(), vec![v.iter().map(|x| field.mul(x, &inv)).collect()]));
    }
    let Some((k, d)) = field.coordinate_subfield() else {
        return Err(Error::BasisMismatch(format!(
            "{} has no designated subfield",
            field.descriptor()
        )));
    };
    if basis.len() != d {
        return Err(Error::BasisMismatch(format!(
            "basis has {} elements but the degree is {d}",
            basis.len()
        )));
    }
    let coords = |x: &Elem| -> Result<Vec<Elem>> {
        field
            .coordinates(x)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::BasisMismatch("element has no coordinates".into()))
    };
    // column i of a: coordinates of α_i
    let cols: Vec<Vec<Elem>> = basis.iter().map(|a| coords(a)).collect::<Result<_>>()?;
    let a = linalg::transpose(&cols);
    if linalg::span_rank(&k, &cols) != d {
        return Err(Error::BasisMismatch("elements are linearly dependent".into()));
    }
    let mut out = vec![Vec::with_capacity(v.len()); d];
    for x in v {
        let c = linalg::solve(&k, &a, &coords(x)?)?
            .ok_or_else(|| Error::BasisMismatch("element outside the span".into()))?;
        for (slot, ci) in out.iter_mut().zip(c) {
            slot.push(ci);
        }
    }
    Ok((k, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse_descriptor;

    #[test]
    fn envelopes() {
        let q = Field::rationals();
        assert_eq!(enveloping_basis(&[Matrix::identity(&q, 2)]).unwrap().len(), 1);
        let j2 = Matrix::from_ints(&q, &[&[0, 1], &[0, 0]]);
        assert_eq!(enveloping_basis(&[j2]).unwrap().len(), 2);
    }

    #[test]
    fn jordan_block() {
        let q = Field::rationals();
        let j2 = Matrix::from_ints(&q, &[&[0, 1], &[0, 0]]);
        let r = is_semisimple(&[j2.clone()]).unwrap();
        assert!(!r.semisimple);
        assert_eq!(r.radical_dim, 1);
        assert_eq!(semisimplify_tuple(&[j2]).unwrap()[0], Matrix::zeros(&q, 2, 2));
    }

    #[test]
    fn permutation_module() {
        let q = Field::rationals();
        let s = Matrix::from_ints(&q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let c = Matrix::from_ints(&q, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let r = gcr_over_k(&[s, c]).unwrap();
        assert!(r.gcr);
        assert_eq!(r.module.algebra_dim, 5);
        assert_eq!(r.module.composition_factors.len(), 2);
    }

    #[test]
    fn unipotent_pair() {
        let f2 = Field::prime(2).unwrap();
        let u = Matrix::from_ints(&f2, &[&[1, 1], &[0, 1]]);
        assert!(!gcr_over_k(&[u.clone(), Matrix::identity(&f2, 2)]).unwrap().gcr);
        assert!(!is_semisimple(&[u, Matrix::identity(&f2, 2)]).unwrap().semisimple);
    }

    #[test]
    fn extension_points() {
        let l = parse_descriptor("ext(Q;X^2+1;i)").unwrap();
        let v = vec![l.parse("1+i").unwrap(), l.parse("2").unwrap()];
        let basis = vec![l.one(), l.parse("i").unwrap()];
        let (k, t) = tuple_from_extension_point(&v, &l, &basis).unwrap();
        assert_eq!(k, Field::rationals());
        assert_eq!(t, vec![vec![k.from_int(1), k.from_int(2)], vec![k.from_int(1), k.zero()]]);
        assert!(matches!(
            tuple_from_extension_point(&v, &l, &[l.one(), l.one()]),
            Err(Error::BasisMismatch(_))
        ));
    }
}
