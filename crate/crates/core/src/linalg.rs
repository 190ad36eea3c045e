//! Dense exact linear algebra over any `Field`.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

/// Dense matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses rows of element literals.
    pub fn parse(field: &Field, rows: &[Vec<&str>]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, rows)
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular")
    }

    pub fn diagonal(field: &Field, entries: &[Elem]) -> Matrix {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Companion matrix of a monic polynomial (coefficients low first): ones on
    /// the subdiagonal, negated coefficients in the last column.
    pub fn companion(field: &Field, monic: &[Elem]) -> Matrix {
        let n = monic.len() - 1;
        let mut m = Self::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, field.neg(&monic[i]));
        }
        m
    }

    /// Block diagonal matrix.
    pub fn block_diagonal(field: &Field, blocks: &[Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(field, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn from_cols(field: &Field, cols: &[Vec<Elem>]) -> Result<Matrix> {
        Self::from_rows(field, transpose(cols))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut m = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    m.data[idx] = f.add(&m.data[idx], &f.mul(a, b));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut r = Self::identity(&self.field, self.rows);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Evaluates a polynomial (coefficients low first) at the matrix.
    pub fn eval_poly(&self, coeffs: &[Elem]) -> Matrix {
        let mut acc = Self::zeros(&self.field, self.rows, self.cols);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.rows {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rref(&self.field, &self.to_rows()).1.len()
    }

    pub fn determinant(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = f.one();
        for c in 0..n {
            let piv = (c..n).find(|&r| !f.is_zero(&a[r][c]));
            let Some(piv) = piv else {
                return Ok(f.zero());
            };
            if piv != c {
                a.swap(piv, c);
                det = f.neg(&det);
            }
            let inv = f.inv(&a[c][c])?;
            det = f.mul(&det, &a[c][c]);
            for r in c + 1..n {
                if f.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = f.mul(&a[r][c], &inv);
                for k in c..n {
                    let t = f.mul(&factor, &a[c][k]);
                    a[r][k] = f.sub(&a[r][k], &t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare);
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let (_, pivots) = rref_in_place(f, &mut aug, n);
        if pivots.len() < n {
            return Err(Error::Domain("matrix is singular".into()));
        }
        let rows = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(f, rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the right kernel {x : A x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        nullspace(&self.field, &self.to_rows(), self.cols)
    }

    /// Basis of the column space in reduced echelon form.
    pub fn image(&self) -> Vec<Vec<Elem>> {
        let (r, _) = rref(&self.field, &self.transpose().to_rows());
        r
    }

    /// Conjugation g · self · g⁻¹.
    pub fn conjugate_by(&self, g: &Matrix) -> Result<Matrix> {
        Ok(g.mul(self).mul(&g.inverse()?))
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }

    /// Base change into an extension field of the tower.
    pub fn embed(&self, target: &Field) -> Result<Matrix> {
        Ok(Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|x| target.embed(&self.field, x))
                .collect::<Result<_>>()?,
        })
    }
}

pub fn transpose(rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if rows.is_empty() {
        return vec![];
    }
    let c = rows[0].len();
    (0..c)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Reduced row echelon form restricted to the first `ncols` columns for pivot
/// search. Returns (rank, pivot columns); the matrix is modified in place.
pub fn rref_in_place(f: &Field, a: &mut [Vec<Elem>], ncols: usize) -> (usize, Vec<usize>) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(piv, r);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in a[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (k, x) in row.iter_mut().enumerate() {
                if !f.is_zero(&pivot_row[k]) {
                    *x = f.sub(x, &f.mul(&factor, &pivot_row[k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Nonzero rows of the reduced row echelon form, and the pivot columns.
pub fn rref(f: &Field, rows: &[Vec<Elem>]) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let (rank, pivots) = rref_in_place(f, &mut a, ncols);
    a.truncate(rank);
    (a, pivots)
}

pub fn nullspace(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let (r, pivots) = if rows.is_empty() {
        (vec![], vec![])
    } else {
        rref(f, rows)
    };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&r[i][fc]);
            }
            v
        })
        .collect()
}

/// Solves A x = b; free variables are set to zero. None if inconsistent.
pub fn solve(f: &Field, a: &[Vec<Elem>], b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let n = a.first().map_or(0, |r| r.len());
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let mut aug: Vec<Vec<Elem>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (rank, pivots) = rref_in_place(f, &mut aug, n);
    for row in aug.iter().skip(rank) {
        if !f.is_zero(&row[n]) {
            return Ok(None);
        }
    }
    let mut x = vec![f.zero(); n];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][n].clone();
    }
    Ok(Some(x))
}

/// Extends the independent vectors `basis` to a basis of the span of
/// `basis ∪ candidates`, greedily in candidate order. Returns only the added vectors.
pub fn extend_basis(f: &Field, basis: &[Vec<Elem>], candidates: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut current: Vec<Vec<Elem>> = basis.to_vec();
    let mut rank = if current.is_empty() {
        0
    } else {
        rref(f, &current).1.len()
    };
    let mut added = Vec::new();
    for v in candidates {
        current.push(v.clone());
        let r = rref(f, &current).1.len();
        if r > rank {
            rank = r;
            added.push(v.clone());
        } else {
            current.pop();
        }
    }
    added
}

/// Dimension of the span of a set of vectors.
pub fn span_rank(f: &Field, vectors: &[Vec<Elem>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        rref(f, vectors).1.len()
    }
}

/// Standard basis vector.
pub fn unit_vector(f: &Field, n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}
