//! The Chevalley group of type G2: roots, structure constants, commutator
//! collection of unipotent words, limits along coroot-lattice cocharacters,
//! and replay of the 1-accessibility edges between unipotent classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::Matrix;

/// A root cα + dβ, with α short and β long.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub a: i64,
    pub b: i64,
}

/// Positive roots in collection order: by height, α before β.
pub const POSITIVE: [Root; 6] = [
    Root::new(1, 0),
    Root::new(0, 1),
    Root::new(1, 1),
    Root::new(2, 1),
    Root::new(3, 1),
    Root::new(3, 2),
];

pub const ALPHA: Root = Root::new(1, 0);
pub const BETA: Root = Root::new(0, 1);

impl Root {
    pub const fn new(a: i64, b: i64) -> Root {
        Root { a, b }
    }

    pub fn height(self) -> i64 {
        self.a + self.b
    }

    pub fn neg(self) -> Root {
        Root::new(-self.a, -self.b)
    }

    pub fn add(self, o: Root) -> Root {
        Root::new(self.a + o.a, self.b + o.b)
    }

    pub fn is_positive(self) -> bool {
        POSITIVE.contains(&self)
    }

    pub fn is_root(self) -> bool {
        self.is_positive() || self.neg().is_positive()
    }

    /// Position in [`POSITIVE`].
    pub fn order_index(self) -> Option<usize> {
        POSITIVE.iter().position(|&r| r == self)
    }

    /// Squared length for the form with (α,α) = 2, (β,β) = 6.
    pub fn norm(self) -> i64 {
        2 * self.a * self.a - 6 * self.a * self.b + 6 * self.b * self.b
    }

    pub fn is_long(self) -> bool {
        self.norm() == 6
    }

    pub fn coroot(self) -> Coweight {
        if self.is_long() {
            Coweight::new(self.a / 3, self.b)
        } else {
            Coweight::new(self.a, 3 * self.b)
        }
    }

    /// Parses `a`, `3a+2b`, `-b`, `-(a+b)`.
    pub fn parse(s: &str) -> Result<Root> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = s.strip_prefix('-') {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .unwrap_or(rest);
            return Root::parse(inner).map(Root::neg);
        }
        let mut root = Root::new(0, 0);
        for term in s.split('+') {
            let (coef, var) = term.split_at(term.len().saturating_sub(1));
            let c: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse()
                    .map_err(|_| Error::Syntax(format!("bad root term '{term}'")))?
            };
            match var {
                "a" => root.a += c,
                "b" => root.b += c,
                _ => return Err(Error::Syntax(format!("bad root term '{term}'"))),
            }
        }
        if !root.is_root() {
            return Err(Error::Domain(format!("{s} is not a root of G2")));
        }
        Ok(root)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() && self.neg().is_positive() {
            let n = self.neg();
            return if n.a != 0 && n.b != 0 {
                write!(f, "-({n})")
            } else {
                write!(f, "-{n}")
            };
        }
        let term = |c: i64, v: &str| match c {
            1 => v.to_string(),
            _ => format!("{c}{v}"),
        };
        match (self.a, self.b) {
            (0, b) => write!(f, "{}", term(b, "b")),
            (a, 0) => write!(f, "{}", term(a, "a")),
            (a, b) => write!(f, "{}+{}", term(a, "a"), term(b, "b")),
        }
    }
}

/// A coroot-lattice vector xα^∨ + yβ^∨.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight {
    pub x: i64,
    pub y: i64,
}

impl Coweight {
    pub const fn new(x: i64, y: i64) -> Coweight {
        Coweight { x, y }
    }

    /// ρ^∨, pairing to 1 with both simple roots.
    pub const RHO: Coweight = Coweight::new(3, 5);

    pub fn neg(self) -> Coweight {
        Coweight::new(-self.x, -self.y)
    }

    /// Parses `x,y`.
    pub fn parse(s: &str) -> Result<Coweight> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Syntax(format!("expected 'x,y', got '{s}'")));
        }
        let p = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| Error::Syntax(format!("bad integer '{t}'")))
        };
        Ok(Coweight::new(p(parts[0])?, p(parts[1])?))
    }

    /// Parses a root literal and returns its coroot.
    pub fn parse_coroot(s: &str) -> Result<Coweight> {
        Ok(Root::parse(s)?.coroot())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}a^ + {}b^", self.x, self.y)
    }
}

/// ⟨γ, λ⟩ from the Cartan matrix.
pub fn pairing(g: Root, l: Coweight) -> i64 {
    l.x * (2 * g.a - 3 * g.b) + l.y * (-g.a + 2 * g.b)
}

/// Extraspecial pairs whose structure-constant signs are free.
pub const EXTRASPECIAL: [(Root, Root); 4] = [
    (Root::new(1, 0), Root::new(0, 1)),
    (Root::new(1, 0), Root::new(1, 1)),
    (Root::new(1, 0), Root::new(2, 1)),
    (Root::new(0, 1), Root::new(3, 1)),
];

/// Signs of N on the extraspecial pairs, in [`EXTRASPECIAL`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convention {
    pub signs: [i64; 4],
}

impl Default for Convention {
    fn default() -> Self {
        Convention { signs: [1; 4] }
    }
}

impl Convention {
    pub fn all() -> Vec<Convention> {
        (0..16)
            .map(|m| Convention {
                signs: std::array::from_fn(|i| if m >> i & 1 == 1 { -1 } else { 1 }),
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = EXTRASPECIAL
            .iter()
            .zip(self.signs)
            .map(|((r, s), e)| json!({"pair": [r.to_string(), s.to_string()], "sign": e}))
            .collect();
        json!(pairs)
    }
}

/// Order in which the commutator terms of a pair are applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostFirst,
    RightmostFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub root: Root,
    pub coeff: Elem,
}

/// A product of root-group elements u_γ(c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub field: Field,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn empty(field: &Field) -> Word {
        Word {
            field: field.clone(),
            letters: Vec::new(),
        }
    }

    pub fn from_ints(field: &Field, letters: &[(Root, i64)]) -> Word {
        Word {
            field: field.clone(),
            letters: letters
                .iter()
                .map(|&(root, c)| Letter {
                    root,
                    coeff: field.from_int(c),
                })
                .collect(),
        }
    }

    /// Parses `u(3a+b;1)*u(b;-1)`; `1` or the empty string is the identity.
    pub fn parse(field: &Field, s: &str) -> Result<Word> {
        let s = s.trim();
        let mut w = Word::empty(field);
        if s.is_empty() || s == "1" {
            return Ok(w);
        }
        for part in split_top_level(s) {
            let body = part
                .trim()
                .strip_prefix("u(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Syntax(format!("expected u(root;coeff), got '{part}'")))?;
            let (root, coeff) = body
                .split_once(';')
                .ok_or_else(|| Error::Syntax(format!("missing ';' in '{part}'")))?;
            w.letters.push(Letter {
                root: Root::parse(root)?,
                coeff: field.parse(coeff.trim())?,
            });
        }
        Ok(w)
    }

    pub fn inverse(&self) -> Word {
        Word {
            field: self.field.clone(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    root: l.root,
                    coeff: self.field.neg(&l.coeff),
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word {
            field: self.field.clone(),
            letters,
        }
    }

    /// Image under conjugation by λ(a): u_γ(c) ↦ u_γ(a^⟨γ,λ⟩ c).
    pub fn torus_conjugate(&self, l: Coweight, a: &Elem) -> Result<Word> {
        let f = &self.field;
        let letters = self
            .letters
            .iter()
            .map(|x| {
                Ok(Letter {
                    root: x.root,
                    coeff: f.mul(&f.pow(a, pairing(x.root, l))?, &x.coeff),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Word {
            field: f.clone(),
            letters,
        })
    }

    pub fn is_normal(&self) -> bool {
        self.letters.iter().all(|l| !self.field.is_zero(&l.coeff))
            && self
                .letters
                .windows(2)
                .all(|w| w[0].root.order_index() < w[1].root.order_index())
    }
}

/// Splits on `*` outside parentheses, so coefficients may contain products.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("u({};{})", l.root, self.field.format(&l.coeff)))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// One commutator term: u_{ir+js}(K a^i b^j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub root: Root,
    pub i: u32,
    pub j: u32,
    pub k: BigInt,
}

const DIM: usize = 14;

/// Roots, structure constants and the commutator table under one sign convention.
#[derive(Clone, Debug)]
pub struct RootSystem {
    convention: Convention,
    derived_sign: i64,
    structure: BTreeMap<(Root, Root), i64>,
    /// Keyed by (index of r, index of s) with r before s.
    commutators: BTreeMap<(usize, usize), Vec<CommutatorTerm>>,
}

/// All twelve roots: positive ones in collection order, then their negatives.
pub fn roots() -> Vec<Root> {
    POSITIVE
        .iter()
        .copied()
        .chain(POSITIVE.iter().map(|r| r.neg()))
        .collect()
}

fn basis_index(r: Root) -> usize {
    roots().iter().position(|&x| x == r).expect("root")
}

fn string_length(r: Root, s: Root) -> i64 {
    let mut p = 0;
    while Root::new(s.a - (p + 1) * r.a, s.b - (p + 1) * r.b).is_root() {
        p += 1;
    }
    p + 1
}

fn constants(convention: &Convention, derived_sign: i64) -> BTreeMap<(Root, Root), i64> {
    let mut special: Vec<((Root, Root), i64)> = EXTRASPECIAL
        .iter()
        .copied()
        .zip(convention.signs)
        .collect();
    special.push(((Root::new(1, 1), Root::new(2, 1)), derived_sign));
    let positive = |r: Root, s: Root| -> i64 {
        let m = string_length(r, s);
        for &((x, y), e) in &special {
            if (x, y) == (r, s) {
                return e * m;
            }
            if (y, x) == (r, s) {
                return -e * m;
            }
        }
        unreachable!("every positive sum comes from a listed pair")
    };
    let same_sign = |r: Root, s: Root| r.is_positive() == s.is_positive();
    let direct = |r: Root, s: Root| {
        if r.is_positive() {
            positive(r, s)
        } else {
            -positive(r.neg(), s.neg())
        }
    };
    let mut out = BTreeMap::new();
    for r in roots() {
        for s in roots() {
            let sum = r.add(s);
            if !sum.is_root() {
                continue;
            }
            let n = if same_sign(r, s) {
                direct(r, s)
            } else {
                let t = sum.neg();
                if same_sign(s, t) {
                    direct(s, t) * t.norm() / r.norm()
                } else {
                    direct(t, r) * t.norm() / s.norm()
                }
            };
            out.insert((r, s), n);
        }
    }
    out
}

fn bracket_with(structure: &BTreeMap<(Root, Root), i64>, i: usize, j: usize) -> [i64; DIM] {
    let rs = roots();
    let mut v = [0i64; DIM];
    let simple = [Coweight::new(1, 0), Coweight::new(0, 1)];
    match (i < 12, j < 12) {
        (true, true) => {
            let (r, s) = (rs[i], rs[j]);
            let sum = r.add(s);
            if sum == Root::new(0, 0) {
                let h = r.coroot();
                v[12] = h.x;
                v[13] = h.y;
            } else if let Some(n) = structure.get(&(r, s)) {
                v[basis_index(sum)] = *n;
            }
        }
        (true, false) => v[i] = -pairing(rs[i], simple[j - 12]),
        (false, true) => v[j] = pairing(rs[j], simple[i - 12]),
        (false, false) => {}
    }
    v
}

fn jacobi_count(structure: &BTreeMap<(Root, Root), i64>) -> usize {
    let table: Vec<Vec<[i64; DIM]>> = (0..DIM)
        .map(|i| (0..DIM).map(|j| bracket_with(structure, i, j)).collect())
        .collect();
    let bracket_vec = |u: &[i64; DIM], k: usize| {
        let mut out = [0i64; DIM];
        for (m, &c) in u.iter().enumerate() {
            if c != 0 {
                for (o, x) in out.iter_mut().zip(&table[m][k]) {
                    *o += c * x;
                }
            }
        }
        out
    };
    let mut bad = 0;
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let a = bracket_vec(&table[i][j], k);
                let b = bracket_vec(&table[j][k], i);
                let c = bracket_vec(&table[k][i], j);
                if (0..DIM).any(|m| a[m] + b[m] + c[m] != 0) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

impl RootSystem {
    /// Completes the structure constants from the extraspecial signs.
    pub fn new(convention: Convention) -> Result<RootSystem> {
        if let Some(e) = convention.signs.iter().find(|e| e.abs() != 1) {
            return Err(Error::InvalidConvention(format!(
                "extraspecial signs must be +1 or -1, got {e}"
            )));
        }
        let mut chosen = None;
        for sign in [1, -1] {
            let structure = constants(&convention, sign);
            if jacobi_count(&structure) == 0 {
                chosen = Some((sign, structure));
                break;
            }
        }
        let (derived_sign, structure) = chosen.ok_or_else(|| {
            Error::InvalidConvention("no completion satisfies the Jacobi identity".into())
        })?;
        let mut sys = RootSystem {
            convention,
            derived_sign,
            structure,
            commutators: BTreeMap::new(),
        };
        sys.commutators = sys.commutator_table()?;
        Ok(sys)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Sign of N on the remaining special pair (α+β, 2α+β).
    pub fn derived_sign(&self) -> i64 {
        self.derived_sign
    }

    /// N_{r,s}, zero when r + s is not a root.
    pub fn structure_constant(&self, r: Root, s: Root) -> i64 {
        self.structure.get(&(r, s)).copied().unwrap_or(0)
    }

    /// Bracket of two basis vectors: twelve root vectors, then h_α, h_β.
    pub fn bracket(&self, i: usize, j: usize) -> [i64; DIM] {
        bracket_with(&self.structure, i, j)
    }

    /// Number of basis triples violating the Jacobi identity.
    pub fn jacobi_violations(&self) -> usize {
        jacobi_count(&self.structure)
    }

    /// ad(e_γ) on the 14-dimensional Lie algebra over Q.
    pub fn ad_matrix(&self, g: Root) -> Matrix {
        let q = Field::rationals();
        let i = basis_index(g);
        let mut m = Matrix::zeros(&q, DIM, DIM);
        for j in 0..DIM {
            for (r, &x) in self.bracket(i, j).iter().enumerate() {
                if x != 0 {
                    m.set(r, j, q.from_int(x));
                }
            }
        }
        m
    }

    /// exp(c · ad e_γ) over Q.
    pub fn root_element(&self, g: Root, c: &Elem) -> Matrix {
        let q = Field::rationals();
        let ad = self.ad_matrix(g).scale(c);
        let mut term = Matrix::identity(&q, DIM);
        let mut acc = term.clone();
        for k in 1..=6 {
            term = term.mul(&ad).scale(&crate::fields::q(1, k));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Adjoint matrix of a word over Q.
    pub fn word_matrix(&self, w: &Word) -> Result<Matrix> {
        if w.field != Field::rationals() {
            return Err(Error::UnsupportedField(
                "adjoint matrices are built over Q".into(),
            ));
        }
        Ok(w.letters.iter().fold(Matrix::identity(&w.field, DIM), |m, l| {
            m.mul(&self.root_element(l.root, &l.coeff))
        }))
    }

    /// Writes a unipotent adjoint matrix as an ordered product over positive roots.
    pub fn factor_unipotent(&self, m: &Matrix) -> Result<Vec<(Root, BigRational)>> {
        let q = Field::rationals();
        let mut h = vec![q.zero(); DIM];
        h[12] = q.from_int(Coweight::RHO.x);
        h[13] = q.from_int(Coweight::RHO.y);
        let mut m = m.clone();
        let mut out = Vec::new();
        for _ in 0..64 {
            let v = m.mul_vec(&h);
            let Some(idx) = (0..6).find(|&i| !q.is_zero(&v[i])) else {
                if m != Matrix::identity(&q, DIM) {
                    return Err(Error::Domain("matrix is not in the positive unipotent group".into()));
                }
                return Ok(out);
            };
            let g = POSITIVE[idx];
            let k = q.neg(&q.div(&v[idx], &q.from_int(g.height()))?);
            m = self.root_element(g, &q.neg(&k)).mul(&m);
            out.push((g, k.as_q().expect("rational").clone()));
        }
        Err(Error::Domain("unipotent factorization did not terminate".into()))
    }

    fn commutator_table(&self) -> Result<BTreeMap<(usize, usize), Vec<CommutatorTerm>>> {
        let q = Field::rationals();
        let (one, minus) = (q.one(), q.from_int(-1));
        let mut table = BTreeMap::new();
        for ri in 0..6 {
            for si in ri + 1..6 {
                let (r, s) = (POSITIVE[ri], POSITIVE[si]);
                let m = self
                    .root_element(s, &minus)
                    .mul(&self.root_element(r, &minus))
                    .mul(&self.root_element(s, &one))
                    .mul(&self.root_element(r, &one));
                let mut terms = Vec::new();
                for (g, k) in self.factor_unipotent(&m)? {
                    let (i, j) = decompose(g, r, s).ok_or_else(|| {
                        Error::Domain(format!("{g} is not a combination of {r} and {s}"))
                    })?;
                    if !k.is_integer() {
                        return Err(Error::Domain(format!("non-integral commutator constant {k}")));
                    }
                    terms.push(CommutatorTerm {
                        root: g,
                        i,
                        j,
                        k: k.to_integer(),
                    });
                }
                table.insert((ri, si), terms);
            }
        }
        Ok(table)
    }

    /// Terms of u_s(b)u_r(a) = u_r(a)u_s(b) ∏ u_{ir+js}(K a^i b^j), r before s.
    pub fn commutator_terms(&self, r: Root, s: Root) -> Option<&[CommutatorTerm]> {
        let key = (r.order_index()?, s.order_index()?);
        self.commutators.get(&key).map(Vec::as_slice)
    }

    /// Normal form: one letter per root, in collection order, no zero arguments.
    pub fn collect(&self, w: &Word, strategy: Strategy) -> Result<Word> {
        let f = &w.field;
        if let Some(l) = w.letters.iter().find(|l| !l.root.is_positive()) {
            return Err(Error::NonClosedSupport(format!(
                "letter on {} is outside the positive unipotent subgroup",
                l.root
            )));
        }
        let mut letters: Vec<(usize, Elem)> = w
            .letters
            .iter()
            .filter(|l| !f.is_zero(&l.coeff))
            .map(|l| (l.root.order_index().expect("positive"), l.coeff.clone()))
            .collect();
        for _ in 0..1_000_000 {
            let mut bad = (0..letters.len().saturating_sub(1)).filter(|&i| letters[i].0 >= letters[i + 1].0);
            let pos = match strategy {
                Strategy::LeftmostFirst => bad.next(),
                Strategy::RightmostFirst => bad.last(),
            };
            let Some(i) = pos else {
                return Ok(Word {
                    field: f.clone(),
                    letters: letters
                        .into_iter()
                        .map(|(idx, coeff)| Letter {
                            root: POSITIVE[idx],
                            coeff,
                        })
                        .collect(),
                });
            };
            let (si, b) = letters[i].clone();
            let (ri, a) = letters[i + 1].clone();
            let mut repl = Vec::new();
            if si == ri {
                let c = f.add(&a, &b);
                if !f.is_zero(&c) {
                    repl.push((si, c));
                }
            } else {
                repl.push((ri, a.clone()));
                repl.push((si, b.clone()));
                for t in &self.commutators[&(ri, si)] {
                    let c = f.mul(
                        &f.from_bigint(&t.k),
                        &f.mul(&f.pow_u(&a, t.i as u64), &f.pow_u(&b, t.j as u64)),
                    );
                    if !f.is_zero(&c) {
                        repl.push((t.root.order_index().expect("positive"), c));
                    }
                }
            }
            letters.splice(i..i + 2, repl);
        }
        Err(Error::Domain("collection did not terminate".into()))
    }

    /// lim_{a→0} λ(a) w λ(a)⁻¹, or None when it does not exist.
    pub fn word_limit(&self, w: &Word, l: Coweight) -> Result<Option<Word>> {
        let c = self.collect(w, Strategy::LeftmostFirst)?;
        if c.letters.iter().any(|x| pairing(x.root, l) < 0) {
            return Ok(None);
        }
        Ok(Some(Word {
            field: c.field.clone(),
            letters: c
                .letters
                .into_iter()
                .filter(|x| pairing(x.root, l) == 0)
                .collect(),
        }))
    }

    /// Collected form of g w g⁻¹.
    pub fn conjugate(&self, g: &Word, w: &Word) -> Result<Word> {
        self.collect(&g.concat(w).concat(&g.inverse()), Strategy::LeftmostFirst)
    }

    pub fn to_json(&self) -> Value {
        let constants: Vec<Value> = self
            .structure
            .iter()
            .filter(|((r, s), _)| r.is_positive() && s.is_positive() && r < s)
            .map(|((r, s), n)| json!({"r": r.to_string(), "s": s.to_string(), "N": n}))
            .collect();
        json!({
            "convention": self.convention.to_json(),
            "derived_sign": self.derived_sign,
            "positive_structure_constants": constants,
            "jacobi_violations": self.jacobi_violations(),
        })
    }
}

fn decompose(g: Root, r: Root, s: Root) -> Option<(u32, u32)> {
    for i in 1..=4i64 {
        for j in 1..=4i64 {
            if Root::new(i * r.a + j * s.a, i * r.b + j * s.b) == g {
                return Some((i as u32, j as u32));
            }
        }
    }
    None
}

/// Unipotent class labels in display order.
pub fn class_labels(p: u64) -> Vec<&'static str> {
    let mut v = vec!["G2", "G2(a1)"];
    if p == 3 {
        v.push("(~A1)3");
    }
    v.extend(["~A1", "A1", "1"]);
    v
}

/// Representative word of a class label.
pub fn representative(field: &Field, label: &str) -> Result<Word> {
    let r = |x: &[(Root, i64)]| Word::from_ints(field, x);
    Ok(match label {
        "G2" => r(&[(ALPHA, 1), (BETA, 1)]),
        "G2(a1)" => r(&[(BETA, 1), (Root::new(2, 1), 1)]),
        "(~A1)3" => r(&[(BETA, 1), (Root::new(1, 1), 1)]),
        "~A1" => r(&[(ALPHA, 1)]),
        "A1" => r(&[(BETA, 1)]),
        "1" => Word::empty(field),
        _ => return Err(Error::Domain(format!("unknown class label '{label}'"))),
    })
}

enum Target {
    Exact(Vec<(Root, i64)>),
    /// A single letter u_γ(±c).
    PlusMinus(Root, i64),
}

impl Target {
    fn matches(&self, w: &Word) -> bool {
        let f = &w.field;
        match self {
            Target::Exact(v) => *w == Word::from_ints(f, v),
            Target::PlusMinus(g, c) => {
                w.letters.len() == 1
                    && w.letters[0].root == *g
                    && (w.letters[0].coeff == f.from_int(*c) || w.letters[0].coeff == f.from_int(-*c))
                    && !f.is_zero(&w.letters[0].coeff)
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            Target::Exact(v) => v
                .iter()
                .map(|(g, c)| format!("u({g};{c})"))
                .collect::<Vec<_>>()
                .join("*"),
            Target::PlusMinus(g, c) => format!("u({g};±{c})"),
        }
    }
}

struct EdgeSpec {
    from: &'static str,
    to: &'static str,
    conjugator: Option<(Root, i64)>,
    cocharacter: Coweight,
    label: &'static str,
    target: Target,
}

fn edge_specs(p: u64) -> Vec<EdgeSpec> {
    let rho = |from| EdgeSpec {
        from,
        to: "1",
        conjugator: None,
        cocharacter: Coweight::RHO,
        label: "rho^",
        target: Target::Exact(vec![]),
    };
    let c = |a, b| Root::new(a, b).coroot();
    let mut v = vec![
        EdgeSpec {
            from: "G2",
            to: "~A1",
            conjugator: None,
            cocharacter: c(3, 2),
            label: "(3a+2b)^",
            target: Target::Exact(vec![(ALPHA, 1)]),
        },
        EdgeSpec {
            from: "G2",
            to: "A1",
            conjugator: None,
            cocharacter: c(2, 1),
            label: "(2a+b)^",
            target: Target::Exact(vec![(BETA, 1)]),
        },
        rho("G2"),
        EdgeSpec {
            from: "G2(a1)",
            to: "~A1",
            conjugator: None,
            cocharacter: c(0, 1),
            label: "b^",
            target: Target::Exact(vec![(Root::new(2, 1), 1)]),
        },
        EdgeSpec {
            from: "G2(a1)",
            to: "A1",
            conjugator: None,
            cocharacter: c(2, 1),
            label: "(2a+b)^",
            target: Target::Exact(vec![(BETA, 1)]),
        },
        rho("G2(a1)"),
    ];
    if p == 3 {
        v.push(EdgeSpec {
            from: "(~A1)3",
            to: "~A1",
            conjugator: None,
            cocharacter: c(3, 1).neg(),
            label: "-(3a+b)^",
            target: Target::Exact(vec![(Root::new(1, 1), 1)]),
        });
        v.push(EdgeSpec {
            from: "(~A1)3",
            to: "A1",
            conjugator: None,
            cocharacter: c(2, 1),
            label: "(2a+b)^",
            target: Target::Exact(vec![(BETA, 1)]),
        });
        v.push(rho("(~A1)3"));
    } else {
        v.push(EdgeSpec {
            from: "~A1",
            to: "A1",
            conjugator: Some((Root::new(2, 1), 1)),
            cocharacter: c(1, 1).neg(),
            label: "-(a+b)^",
            target: Target::PlusMinus(Root::new(3, 1), 3),
        });
    }
    v.push(rho("~A1"));
    v.push(rho("A1"));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureEdge {
    pub from: String,
    pub to: String,
    pub conjugator: Option<Word>,
    /// The representative after conjugation, when a conjugator is used.
    pub conjugated: Option<Word>,
    pub cocharacter: Coweight,
    pub cocharacter_label: String,
    pub result: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FigureReport {
    pub p: u64,
    pub field: Field,
    pub convention: Convention,
    pub derived_sign: i64,
    pub classes: Vec<(String, Word)>,
    pub edges: Vec<FigureEdge>,
    /// Extra replayed facts, such as the vanishing of ±3 in characteristic 3.
    pub checks: Vec<String>,
    pub jacobi_violations: usize,
}

/// Field used for characteristic p: Q for p = 0, otherwise F_p.
pub fn figure_field(p: u64) -> Result<Field> {
    if p == 0 {
        Ok(Field::rationals())
    } else {
        Field::prime(p)
    }
}

/// Replays every positive 1-accessibility edge between unipotent classes.
pub fn figure_edges(p: u64, convention: Convention) -> Result<FigureReport> {
    let sys = RootSystem::new(convention)?;
    let field = figure_field(p)?;
    let mut edges = Vec::new();
    for spec in edge_specs(p) {
        let rep = representative(&field, spec.from)?;
        let (conjugator, start) = match spec.conjugator {
            Some(g) => {
                let g = Word::from_ints(&field, &[g]);
                let c = sys.conjugate(&g, &rep)?;
                (Some(g), c)
            }
            None => (None, rep.clone()),
        };
        let result = sys.word_limit(&start, spec.cocharacter)?.ok_or_else(|| {
            Error::ReplayMismatch(format!(
                "{} -> {}: no limit of {start} along {}",
                spec.from, spec.to, spec.label
            ))
        })?;
        if !spec.target.matches(&result) {
            return Err(Error::ReplayMismatch(format!(
                "{} -> {}: expected {}, got {result}",
                spec.from,
                spec.to,
                spec.target.describe()
            )));
        }
        edges.push(FigureEdge {
            from: spec.from.into(),
            to: spec.to.into(),
            conjugated: conjugator.as_ref().map(|_| start.clone()),
            conjugator,
            cocharacter: spec.cocharacter,
            cocharacter_label: spec.label.into(),
            result,
        });
    }
    let mut checks = Vec::new();
    if p == 3 {
        let g = Word::from_ints(&field, &[(Root::new(2, 1), 1)]);
        let rep = representative(&field, "~A1")?;
        let c = sys.conjugate(&g, &rep)?;
        if c != rep {
            return Err(Error::ReplayMismatch(format!(
                "conjugating {rep} by {g} should give {rep} in characteristic 3, got {c}"
            )));
        }
        checks.push(format!("{g} conjugates {rep} to {c}: the u(3a+b;±3) term vanishes"));
    }
    let classes = class_labels(p)
        .into_iter()
        .map(|l| Ok((l.to_string(), representative(&field, l)?)))
        .collect::<Result<_>>()?;
    Ok(FigureReport {
        p,
        field,
        convention,
        derived_sign: sys.derived_sign(),
        classes,
        edges,
        checks,
        jacobi_violations: sys.jacobi_violations(),
    })
}

impl FigureReport {
    pub fn edge_pairs(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|e| (e.from.clone(), e.to.clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "field": self.field.descriptor(),
            "convention": self.convention.to_json(),
            "derived_sign": self.derived_sign,
            "jacobi_violations": self.jacobi_violations,
            "classes": self.classes.iter().map(|(l, w)| json!({"label": l, "representative": w.to_string()})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": e.from,
                "to": e.to,
                "conjugator": e.conjugator.as_ref().map(|w| w.to_string()),
                "conjugated": e.conjugated.as_ref().map(|w| w.to_string()),
                "cocharacter": [e.cocharacter.x, e.cocharacter.y],
                "cocharacter_label": e.cocharacter_label,
                "limit": e.result.to_string(),
            })).collect::<Vec<_>>(),
            "checks": self.checks,
        })
    }

    /// DOT digraph; absent arrows are listed as comments since only positive edges are replayed.
    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph g2_p{} {{\n  rankdir=TB;\n", self.p);
        for (label, w) in &self.classes {
            s += &format!("  \"{label}\" [label=\"{label}\\n{w}\"];\n");
        }
        for e in &self.edges {
            s += &format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                e.from, e.to, e.cocharacter_label
            );
        }
        let pairs = self.edge_pairs();
        for (a, _) in &self.classes {
            for (b, _) in &self.classes {
                if a != b && !pairs.contains(&(a.clone(), b.clone())) {
                    s += &format!("  // no edge {a} -> {b}: asserted, not machine-checked\n");
                }
            }
        }
        s += "}\n";
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("G2 unipotent classes, p = {}\n", self.p);
        for e in &self.edges {
            let via = match &e.conjugator {
                Some(g) => format!("conjugate by {g}, then {}", e.cocharacter_label),
                None => e.cocharacter_label.clone(),
            };
            s += &format!("{} -> {} via {via}: {}\n", e.from, e.to, e.result);
        }
        for c in &self.checks {
            s += &format!("check: {c}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_pairings() {
        assert_eq!(pairing(ALPHA, ALPHA.coroot()), 2);
        assert_eq!(pairing(BETA, BETA.coroot()), 2);
        assert_eq!(pairing(BETA, ALPHA.coroot()), -3);
        assert_eq!(pairing(ALPHA, BETA.coroot()), -1);
        assert_eq!(pairing(ALPHA, Root::new(3, 2).coroot()), 0);
        assert_eq!(pairing(BETA, Root::new(2, 1).coroot()), 0);
        assert_eq!(pairing(Root::new(2, 1), Root::new(2, 1).coroot()), 2);
        assert_eq!(pairing(ALPHA, Coweight::RHO), 1);
        assert_eq!(pairing(BETA, Coweight::RHO), 1);
    }

    #[test]
    fn roots_parse_and_print() {
        for r in roots() {
            assert_eq!(Root::parse(&r.to_string()).unwrap(), r);
        }
        assert!(Root::parse("2a+2b").is_err());
        assert_eq!(Coweight::parse_coroot("-(a+b)").unwrap(), Coweight::new(-1, -3));
    }

    #[test]
    fn magnitudes() {
        let sys = RootSystem::new(Convention::default()).unwrap();
        assert_eq!(sys.structure_constant(ALPHA, BETA), 1);
        assert_eq!(sys.structure_constant(ALPHA, Root::new(1, 1)).abs(), 2);
        assert_eq!(sys.structure_constant(ALPHA, Root::new(2, 1)).abs(), 3);
        assert_eq!(sys.jacobi_violations(), 0);
    }

    #[test]
    fn bad_convention() {
        let c = Convention { signs: [1, 2, 1, 1] };
        assert!(matches!(RootSystem::new(c), Err(Error::InvalidConvention(_))));
    }

    #[test]
    fn words() {
        let q = Field::rationals();
        let w = Word::parse(&q, "u(3a+b;1)*u(b;-1)").unwrap();
        assert_eq!(w.to_string(), "u(3a+b;1)*u(b;-1)");
        assert_eq!(Word::parse(&q, "1").unwrap(), Word::empty(&q));
    }

    #[test]
    fn char_two_cancellation() {
        let f2 = Field::prime(2).unwrap();
        let sys = RootSystem::new(Convention::default()).unwrap();
        let w = Word::from_ints(&f2, &[(ALPHA, 1), (ALPHA, 1)]);
        assert_eq!(sys.collect(&w, Strategy::LeftmostFirst).unwrap(), Word::empty(&f2));
    }

    #[test]
    fn conjugation_produces_three() {
        let q = Field::rationals();
        let sys = RootSystem::new(Convention::default()).unwrap();
        let w = Word::parse(&q, "u(2a+b;1)*u(a;1)*u(2a+b;-1)").unwrap();
        let c = sys.collect(&w, Strategy::LeftmostFirst).unwrap();
        assert_eq!(c.letters.len(), 2);
        assert_eq!(c.letters[0], Letter { root: ALPHA, coeff: q.one() });
        assert_eq!(c.letters[1].root, Root::new(3, 1));
        assert!(c.letters[1].coeff == q.from_int(3) || c.letters[1].coeff == q.from_int(-3));
        assert_eq!(sys.word_matrix(&w).unwrap(), sys.word_matrix(&c).unwrap());
        let f3 = Field::prime(3).unwrap();
        let w3 = Word::parse(&f3, "u(2a+b;1)*u(a;1)*u(2a+b;-1)").unwrap();
        assert_eq!(sys.collect(&w3, Strategy::LeftmostFirst).unwrap().to_string(), "u(a;1)");
    }

    #[test]
    fn figure_all_conventions() {
        for conv in Convention::all() {
            for p in [0, 2, 3, 5] {
                let r = figure_edges(p, conv).unwrap();
                assert_eq!(r.edges.len(), if p == 3 { 11 } else { 9 });
                assert_eq!(r.jacobi_violations, 0);
            }
        }
    }
}
