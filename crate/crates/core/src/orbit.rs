//! One-step limits, accessibility graphs and minimal orbits at desk scale.
//!
//! An [`OrbitModel`] supplies orbit identifiers and the complete list of
//! one-step limits of a point, each with a witnessing cocharacter that the
//! limit engine replays. Points are flat coordinate vectors of the model's
//! linear space.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::endo;
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::limit::{self, flatten, unflatten, ActionModel, Cocharacter, ConjugationModel, WeightLineModel};
use crate::linalg::{self, Matrix};

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_group: usize,
    pub max_nodes: usize,
    pub max_subspaces: usize,
    pub max_chains: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group: 100_000,
            max_nodes: 10_000,
            max_subspaces: 5_000,
            max_chains: 200_000,
        }
    }
}

/// A limit of a point along one cocharacter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub key: String,
    pub point: Vec<Elem>,
    pub cocharacter: Cocharacter,
}

pub trait OrbitModel {
    fn name(&self) -> &str;
    fn action(&self) -> &dyn ActionModel;
    fn orbit_key(&self, p: &[Elem]) -> Result<String>;
    /// Limits along all k-defined cocharacters, one witness per target orbit,
    /// sorted by key. Always contains the point's own orbit (zero cocharacter).
    fn one_step_limits(&self, p: &[Elem]) -> Result<Vec<Step>>;
    fn render(&self, p: &[Elem]) -> String {
        let f = self.action().field();
        let parts: Vec<String> = p.iter().map(|x| f.format(x)).collect();
        format!("({})", parts.join(", "))
    }
    /// Dimension of the orbit as a variety, when known.
    fn orbit_dimension(&self, _p: &[Elem]) -> Result<Option<usize>> {
        Ok(None)
    }
}

fn dedupe_steps(mut steps: Vec<Step>) -> Vec<Step> {
    let mut seen = BTreeSet::new();
    steps.retain(|s| seen.insert(s.key.clone()));
    steps.sort_by(|a, b| a.key.cmp(&b.key));
    steps
}

/// Brute-force cocharacter-closedness: every one-step limit stays in the orbit.
pub fn is_closed_by_enumeration(model: &dyn OrbitModel, p: &[Elem]) -> Result<bool> {
    let key = model.orbit_key(p)?;
    Ok(model.one_step_limits(p)?.iter().all(|s| s.key == key))
}

/// Replays a witness through the limit engine and returns the target key.
pub fn replay(model: &dyn OrbitModel, p: &[Elem], lambda: &Cocharacter) -> Result<Option<String>> {
    let r = limit::limit(p, lambda, model.action())?;
    match r.value {
        Some(v) => Ok(Some(model.orbit_key(&v)?)),
        None => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// graphs

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub representative: Vec<Elem>,
    pub rendered: String,
    pub depth: usize,
    /// All one-step limits stay in this orbit.
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: String,
    pub to: String,
    pub cocharacter: Cocharacter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessibilityGraph {
    pub field: Field,
    pub seed: String,
    /// BFS order.
    pub nodes: Vec<Node>,
    /// Proper 1-accessibility arrows (source and target orbits differ).
    pub edges: Vec<Edge>,
    pub minimal: Option<String>,
}

impl AccessibilityGraph {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        self.edges.iter().any(|e| e.from == from && e.to == to)
    }

    pub fn successors(&self, id: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|e| e.from == id)
            .map(|e| e.to.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|n| json!({
                "id": n.id,
                "representative": n.rendered,
                "depth": n.depth,
                "closed": n.closed,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": e.from,
                "to": e.to,
                "cocharacter": e.cocharacter.to_json(),
            })).collect::<Vec<_>>(),
            "minimal": self.minimal,
        })
    }
}

pub fn accessibility_graph(
    seed: &[Elem],
    model: &dyn OrbitModel,
    budget: &Budget,
) -> Result<AccessibilityGraph> {
    let seed_key = model.orbit_key(seed)?;
    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    index.insert(seed_key.clone(), 0);
    nodes.push(Node {
        id: seed_key.clone(),
        representative: seed.to_vec(),
        rendered: model.render(seed),
        depth: 0,
        closed: true,
    });
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        let rep = nodes[i].representative.clone();
        let id = nodes[i].id.clone();
        let depth = nodes[i].depth;
        let steps = model.one_step_limits(&rep)?;
        for s in steps {
            if s.key == id {
                continue;
            }
            nodes[i].closed = false;
            if !index.contains_key(&s.key) {
                if nodes.len() >= budget.max_nodes {
                    return Err(Error::EnumerationBudgetExceeded(format!(
                        "more than {} orbits in the closure",
                        budget.max_nodes
                    )));
                }
                index.insert(s.key.clone(), nodes.len());
                nodes.push(Node {
                    id: s.key.clone(),
                    rendered: model.render(&s.point),
                    representative: s.point.clone(),
                    depth: depth + 1,
                    closed: true,
                });
                queue.push_back(nodes.len() - 1);
            }
            edges.push(Edge {
                from: id.clone(),
                to: s.key,
                cocharacter: s.cocharacter,
            });
        }
    }
    let mut g = AccessibilityGraph {
        field: model.action().field().clone(),
        seed: seed_key,
        nodes,
        edges,
        minimal: None,
    };
    g.minimal = Some(minimal_orbit(&g)?);
    Ok(g)
}

/// The unique node whose one-step limits all stay in its own orbit.
pub fn minimal_orbit(graph: &AccessibilityGraph) -> Result<String> {
    let closed: Vec<&Node> = graph.nodes.iter().filter(|n| n.closed).collect();
    match closed.as_slice() {
        [one] => Ok(one.id.clone()),
        _ => Err(Error::NonUniqueMinimal(format!(
            "{} cocharacter-closed orbits among {} nodes",
            closed.len(),
            graph.nodes.len()
        ))),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn export_dot(graph: &AccessibilityGraph) -> String {
    let mut out = String::from("digraph accessibility {\n");
    let ids: HashMap<&str, usize> = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.id.as_str(), i))
        .collect();
    for (i, n) in graph.nodes.iter().enumerate() {
        let shape = if graph.minimal.as_deref() == Some(n.id.as_str()) {
            ", shape=doublecircle"
        } else {
            ""
        };
        out.push_str(&format!("  n{} [label=\"{}\"{}];\n", i, dot_escape(&n.id), shape));
    }
    for e in &graph.edges {
        let w: Vec<String> = e.cocharacter.weights.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "  n{} -> n{} [label=\"({})\"];\n",
            ids[e.from.as_str()],
            ids[e.to.as_str()],
            w.join(",")
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntisymmetryReport {
    pub points: usize,
    pub orbits: usize,
    pub violations: Vec<(String, String)>,
}

impl AntisymmetryReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "points": self.points,
            "orbits": self.orbits,
            "antisymmetric": self.holds(),
            "violations": self.violations,
        })
    }
}

/// Checks that no two distinct orbits met by the corpus are mutually accessible.
pub fn check_antisymmetry(
    model: &dyn OrbitModel,
    corpus: &[Vec<Elem>],
    budget: &Budget,
) -> Result<AntisymmetryReport> {
    let mut reps: BTreeMap<String, Vec<Elem>> = BTreeMap::new();
    for p in corpus {
        let k = model.orbit_key(p)?;
        reps.entry(k).or_insert_with(|| p.clone());
    }
    // one-step successor keys, explored beyond the corpus where needed
    let mut succ: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut todo: Vec<(String, Vec<Elem>)> = reps.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    while let Some((k, p)) = todo.pop() {
        if succ.contains_key(&k) {
            continue;
        }
        if succ.len() >= budget.max_nodes {
            return Err(Error::EnumerationBudgetExceeded("too many orbits".into()));
        }
        let steps = model.one_step_limits(&p)?;
        let mut out = Vec::new();
        for s in steps {
            if s.key != k {
                if !succ.contains_key(&s.key) {
                    todo.push((s.key.clone(), s.point.clone()));
                }
                out.push(s.key);
            }
        }
        succ.insert(k, out);
    }
    let reach = |start: &String| -> BTreeSet<String> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![start.clone()];
        while let Some(x) = stack.pop() {
            for y in succ.get(&x).into_iter().flatten() {
                if seen.insert(y.clone()) {
                    stack.push(y.clone());
                }
            }
        }
        seen
    };
    let reaches: BTreeMap<String, BTreeSet<String>> =
        reps.keys().map(|k| (k.clone(), reach(k))).collect();
    let mut violations = Vec::new();
    for (a, ra) in &reaches {
        for b in ra {
            if b > a && b != a {
                let rb = reaches.get(b).cloned().unwrap_or_else(|| reach(b));
                if rb.contains(a) {
                    violations.push((a.clone(), b.clone()));
                }
            }
        }
        if ra.contains(a) {
            violations.push((a.clone(), a.clone()));
        }
    }
    Ok(AntisymmetryReport {
        points: corpus.len(),
        orbits: reps.len(),
        violations,
    })
}

// ---------------------------------------------------------------------------
// finite-field helpers

/// All vectors of F_q^n.
pub fn all_vectors(field: &Field, n: usize, limit: usize) -> Result<Vec<Vec<Elem>>> {
    let els = field.elements()?;
    let total = (els.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::EnumerationBudgetExceeded(format!(
            "{total} vectors exceed the budget {limit}"
        )));
    }
    let mut out: Vec<Vec<Elem>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * els.len());
        for v in &out {
            for e in &els {
                let mut w = v.clone();
                w.push(e.clone());
                next.push(w);
            }
        }
        out = next;
    }
    Ok(out)
}

/// All n×n matrices over a finite field.
pub fn all_matrices(field: &Field, n: usize, limit: usize) -> Result<Vec<Matrix>> {
    Ok(all_vectors(field, n * n, limit)?
        .into_iter()
        .map(|v| Matrix {
            field: field.clone(),
            rows: n,
            cols: n,
            data: v,
        })
        .collect())
}

/// GL_n over a finite field, by filtering all matrices.
pub fn general_linear_group(field: &Field, n: usize, budget: &Budget) -> Result<Vec<Matrix>> {
    let ms = all_matrices(field, n, budget.max_group.saturating_mul(8))?;
    let g: Vec<Matrix> = ms.into_iter().filter(|m| m.is_invertible()).collect();
    if g.len() > budget.max_group {
        return Err(Error::EnumerationBudgetExceeded(format!(
            "|GL_{n}| = {} exceeds {}",
            g.len(),
            budget.max_group
        )));
    }
    Ok(g)
}

fn canonical_subspace(field: &Field, vectors: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    if vectors.is_empty() {
        return vec![];
    }
    linalg::rref(field, vectors).0
}

/// Smallest subspace containing v and stable under every generator.
pub fn spin(field: &Field, gens: &[Matrix], seeds: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut basis: Vec<Vec<Elem>> = Vec::new();
    let mut queue: VecDeque<Vec<Elem>> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        let added = linalg::extend_basis(field, &basis, &[v.clone()]);
        if added.is_empty() {
            continue;
        }
        basis.push(v.clone());
        for g in gens {
            queue.push_back(g.mul_vec(&v));
        }
    }
    canonical_subspace(field, &basis)
}

/// All subspaces stable under every generator, as canonical bases, sorted by dimension.
pub fn invariant_subspaces(
    field: &Field,
    gens: &[Matrix],
    n: usize,
    budget: &Budget,
) -> Result<Vec<Vec<Vec<Elem>>>> {
    let mut set: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    set.insert(vec![]);
    for v in all_vectors(field, n, budget.max_group)? {
        if v.iter().all(|x| field.is_zero(x)) {
            continue;
        }
        set.insert(spin(field, gens, &[v]));
    }
    loop {
        let cur: Vec<Vec<Vec<Elem>>> = set.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                let mut all = a.clone();
                all.extend(b.iter().cloned());
                let s = canonical_subspace(field, &all);
                if set.insert(s) {
                    grew = true;
                }
            }
        }
        if set.len() > budget.max_subspaces {
            return Err(Error::EnumerationBudgetExceeded(format!(
                "more than {} invariant subspaces",
                budget.max_subspaces
            )));
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort_by_key(|s| s.len());
    Ok(out)
}

fn contains(field: &Field, big: &[Vec<Elem>], small: &[Vec<Elem>]) -> bool {
    if small.is_empty() {
        return true;
    }
    let mut all = big.to_vec();
    all.extend(small.iter().cloned());
    linalg::span_rank(field, &all) == big.len()
}

/// All chains 0 ⊊ V_1 ⊊ ... ⊊ V_m = W of invariant subspaces.
fn chains(
    field: &Field,
    subspaces: &[Vec<Vec<Elem>>],
    n: usize,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let full = subspaces
        .iter()
        .position(|s| s.len() == n)
        .expect("whole space is invariant");
    let m = subspaces.len();
    let mut above: Vec<Vec<usize>> = vec![vec![]; m];
    for i in 0..m {
        for j in 0..m {
            if subspaces[j].len() > subspaces[i].len() && contains(field, &subspaces[j], &subspaces[i]) {
                above[i].push(j);
            }
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(ch) = stack.pop() {
        let last = *ch.last().unwrap();
        if last == full {
            out.push(ch[1..].to_vec());
            if out.len() > budget.max_chains {
                return Err(Error::EnumerationBudgetExceeded("too many invariant flags".into()));
            }
            continue;
        }
        for &j in above[last].iter().rev() {
            let mut c = ch.clone();
            c.push(j);
            stack.push(c);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// GL_n on tuples of matrices by simultaneous conjugation

/// Simultaneous conjugation on r-tuples of n×n matrices over a finite field;
/// one-step limits come from flags of common invariant subspaces.
pub struct FlagModel {
    action: ConjugationModel,
    budget: Budget,
    group: Mutex<Option<Vec<Matrix>>>,
    keys: Mutex<HashMap<Vec<Elem>, String>>,
}

impl FlagModel {
    pub fn new(field: &Field, n: usize, r: usize, budget: Budget) -> Result<FlagModel> {
        if !field.is_finite() {
            return Err(Error::UnsupportedField(format!(
                "flag enumeration needs a finite field, got {}",
                field.descriptor()
            )));
        }
        Ok(FlagModel {
            action: ConjugationModel::tuples(field, n, r),
            budget,
            group: Mutex::new(None),
            keys: Mutex::new(HashMap::new()),
        })
    }

    pub fn endo(field: &Field, n: usize) -> Result<FlagModel> {
        Self::new(field, n, 1, Budget::default())
    }

    pub fn n(&self) -> usize {
        self.action.n
    }

    pub fn r(&self) -> usize {
        self.action.r
    }

    fn field(&self) -> &Field {
        &self.action.field
    }

    fn group(&self) -> Result<Vec<Matrix>> {
        let mut g = self.group.lock().unwrap();
        if g.is_none() {
            *g = Some(general_linear_group(self.field(), self.n(), &self.budget)?);
        }
        Ok(g.clone().unwrap())
    }

    fn compute_key(&self, p: &[Elem]) -> Result<String> {
        let ms = self.action.matrices(p)?;
        if self.r() == 1 {
            return Ok(endo::invariant_factors(&ms[0])?.key());
        }
        let mut best: Option<Vec<Elem>> = None;
        for g in self.group()? {
            let gi = g.inverse()?;
            let img = flatten(&ms.iter().map(|m| g.mul(m).mul(&gi)).collect::<Vec<_>>());
            if best.as_ref().map_or(true, |b| img < *b) {
                best = Some(img);
            }
        }
        let f = self.field();
        let best = unflatten(f, self.n(), &best.unwrap())?;
        let parts: Vec<String> = best.iter().map(|m| m.to_text()).collect();
        Ok(parts.join(" ; "))
    }

    /// Invariant subspace chains and the resulting limits.
    fn flag_limits(&self, p: &[Elem]) -> Result<Vec<Step>> {
        let f = self.field().clone();
        let n = self.n();
        let gens = self.action.matrices(p)?;
        let subs = invariant_subspaces(&f, &gens, n, &self.budget)?;
        let mut steps = Vec::new();
        let mut seen_limits: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for ch in chains(&f, &subs, n, &self.budget)? {
            let m = ch.len();
            let mut basis: Vec<Vec<Elem>> = Vec::new();
            let mut weights = Vec::new();
            for (layer, &s) in ch.iter().enumerate() {
                for v in linalg::extend_basis(&f, &basis, &subs[s]) {
                    basis.push(v);
                    weights.push(m as i64 - 1 - 2 * layer as i64);
                }
            }
            let c = Matrix::from_cols(&f, &basis)?;
            let lambda = if c == Matrix::identity(&f, n) {
                Cocharacter::new(weights)
            } else {
                Cocharacter::with_conjugator(weights, c)?
            };
            let r = limit::limit(p, &lambda, &self.action)?;
            let Some(v) = r.value else {
                return Err(Error::Domain("invariant flag without a limit".into()));
            };
            if !seen_limits.insert(v.clone()) {
                continue;
            }
            steps.push(Step {
                key: self.orbit_key(&v)?,
                point: v,
                cocharacter: lambda,
            });
        }
        Ok(steps)
    }
}

impl OrbitModel for FlagModel {
    fn name(&self) -> &str {
        if self.r() == 1 {
            "endo"
        } else {
            "tuple"
        }
    }

    fn action(&self) -> &dyn ActionModel {
        &self.action
    }

    fn orbit_key(&self, p: &[Elem]) -> Result<String> {
        if let Some(k) = self.keys.lock().unwrap().get(p) {
            return Ok(k.clone());
        }
        let k = self.compute_key(p)?;
        self.keys.lock().unwrap().insert(p.to_vec(), k.clone());
        Ok(k)
    }

    fn one_step_limits(&self, p: &[Elem]) -> Result<Vec<Step>> {
        let mut steps = vec![Step {
            key: self.orbit_key(p)?,
            point: p.to_vec(),
            cocharacter: Cocharacter::zero(self.n()),
        }];
        steps.extend(self.flag_limits(p)?);
        Ok(dedupe_steps(steps))
    }

    fn render(&self, p: &[Elem]) -> String {
        match self.action.matrices(p) {
            Ok(ms) => ms.iter().map(|m| m.to_text()).collect::<Vec<_>>().join(" ; "),
            Err(_) => String::from("?"),
        }
    }

    fn orbit_dimension(&self, p: &[Elem]) -> Result<Option<usize>> {
        if self.r() != 1 {
            return Ok(None);
        }
        Ok(Some(endo::invariant_factors(&self.action.matrices(p)?[0])?.orbit_dimension()))
    }
}

// ---------------------------------------------------------------------------
// group representations given by a weight table

/// A linear representation whose maximal torus acts diagonally with the
/// given weight table (one row of group weights per coordinate); group
/// elements are passed as matrices on V.
#[derive(Clone, Debug)]
pub struct RepresentationModel {
    pub name: String,
    pub field: Field,
    pub weight_table: Vec<Vec<i64>>,
}

impl ActionModel for RepresentationModel {
    fn name(&self) -> &str {
        &self.name
    }
    fn field(&self) -> &Field {
        &self.field
    }
    fn dim(&self) -> usize {
        self.weight_table.len()
    }
    fn rank(&self) -> usize {
        self.weight_table.first().map_or(0, |r| r.len())
    }
    fn coordinate_weights(&self, w: &[i64]) -> Result<Vec<i64>> {
        Ok(self
            .weight_table
            .iter()
            .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
            .collect())
    }
    fn act(&self, g: &Matrix, v: &[Elem]) -> Result<Vec<Elem>> {
        if g.rows != v.len() || g.cols != v.len() {
            return Err(Error::DimensionMismatch("representation matrix size".into()));
        }
        Ok(g.mul_vec(v))
    }
}

/// A finite group G(k) acting through explicit matrices on V, with a split
/// maximal torus diagonal in the coordinates. Every k-defined cocharacter is
/// G(k)-conjugate into that torus, and a limit depends only on the sign
/// pattern of the coordinate weights, so one-step limits are enumerated over
/// pairs (group element, weight pattern).
pub struct EnumerableModel {
    action: RepresentationModel,
    group: Vec<Matrix>,
    patterns: Vec<Vec<i64>>,
    keys: Mutex<HashMap<Vec<Elem>, String>>,
}

impl EnumerableModel {
    pub fn new(action: RepresentationModel, group: Vec<Matrix>, budget: &Budget) -> Result<EnumerableModel> {
        if group.len() > budget.max_group {
            return Err(Error::EnumerationBudgetExceeded(format!(
                "|G(k)| = {} exceeds {}",
                group.len(),
                budget.max_group
            )));
        }
        let rank = action.rank();
        // weights in a small box realize every sign pattern of the coordinate weights
        let bound = 2i64;
        let mut patterns = Vec::new();
        let mut signs_seen = BTreeSet::new();
        let mut cur = vec![-bound; rank];
        loop {
            let cw = action.coordinate_weights(&cur)?;
            let signs: Vec<i64> = cw.iter().map(|w| w.signum()).collect();
            if signs_seen.insert(signs) {
                patterns.push(cur.clone());
            }
            let mut i = 0;
            while i < rank && cur[i] == bound {
                cur[i] = -bound;
                i += 1;
            }
            if i == rank {
                break;
            }
            cur[i] += 1;
        }
        patterns.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), p.clone()));
        Ok(EnumerableModel {
            action,
            group,
            patterns,
            keys: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &[Matrix] {
        &self.group
    }

    pub fn patterns(&self) -> &[Vec<i64>] {
        &self.patterns
    }

    /// The orbit of a point, sorted.
    pub fn orbit(&self, p: &[Elem]) -> Vec<Vec<Elem>> {
        let set: BTreeSet<Vec<Elem>> = self.group.iter().map(|g| g.mul_vec(p)).collect();
        set.into_iter().collect()
    }
}

impl OrbitModel for EnumerableModel {
    fn name(&self) -> &str {
        &self.action.name
    }

    fn action(&self) -> &dyn ActionModel {
        &self.action
    }

    fn orbit_key(&self, p: &[Elem]) -> Result<String> {
        if let Some(k) = self.keys.lock().unwrap().get(p) {
            return Ok(k.clone());
        }
        let orbit = self.orbit(p);
        let key = self.render(&orbit[0]);
        let mut keys = self.keys.lock().unwrap();
        for q in orbit {
            keys.insert(q, key.clone());
        }
        Ok(key)
    }

    fn one_step_limits(&self, p: &[Elem]) -> Result<Vec<Step>> {
        let f = self.action.field.clone();
        let mut steps = Vec::new();
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for g in &self.group {
            let gp = g.mul_vec(p);
            for w in &self.patterns {
                let cw = self.action.coordinate_weights(w)?;
                if gp.iter().zip(&cw).any(|(x, &c)| c < 0 && !f.is_zero(x)) {
                    continue;
                }
                let lim: Vec<Elem> = gp
                    .iter()
                    .zip(&cw)
                    .map(|(x, &c)| if c == 0 { x.clone() } else { f.zero() })
                    .collect();
                if !seen.insert(lim.clone()) {
                    continue;
                }
                // g⁻¹·λ·g has limit g⁻¹ · lim, in the same orbit
                let gi = g.inverse()?;
                steps.push(Step {
                    key: self.orbit_key(&lim)?,
                    point: gi.mul_vec(&lim),
                    cocharacter: Cocharacter::with_conjugator(w.clone(), gi)?,
                });
            }
        }
        Ok(dedupe_steps(steps))
    }
}

/// SL_2 × G_m acting on V = S²E ⊕ E by (h, b) ↦ b²·S²h ⊕ b⁻¹·h.
/// Coordinates: x², xy, y², e1, e2. Torus: (diag(a^m, a^-m), a^n).
pub fn sl2_gm_model(field: &Field, budget: &Budget) -> Result<EnumerableModel> {
    if !field.is_finite() {
        return Err(Error::UnsupportedField("the SL2×Gm model enumerates G(k)".into()));
    }
    let els = field.elements()?;
    let f = field;
    let mut group = Vec::new();
    for q in &els {
        for r in &els {
            for s in &els {
                for t in &els {
                    let det = f.sub(&f.mul(q, t), &f.mul(r, s));
                    if !f.is_one(&det) {
                        continue;
                    }
                    for b in els.iter().filter(|b| !f.is_zero(b)) {
                        group.push(sl2_gm_matrix(f, [q, r, s, t], b)?);
                    }
                }
            }
        }
    }
    let action = RepresentationModel {
        name: "sl2xgm".into(),
        field: field.clone(),
        weight_table: vec![vec![2, 2], vec![0, 2], vec![-2, 2], vec![1, -1], vec![-1, -1]],
    };
    EnumerableModel::new(action, group, budget)
}

/// Matrix of (h, b) on V for h = [[q, r], [s, t]].
pub fn sl2_gm_matrix(f: &Field, h: [&Elem; 4], b: &Elem) -> Result<Matrix> {
    let [q, r, s, t] = h;
    let two = f.from_int(2);
    let b2 = f.mul(b, b);
    let bi = f.inv(b)?;
    let m = |x: &Elem, y: &Elem| f.mul(x, y);
    // columns: images of x², xy, y², e1, e2
    let cols = vec![
        vec![m(q, q), m(&two, &m(q, s)), m(s, s), f.zero(), f.zero()],
        vec![m(q, r), f.add(&m(q, t), &m(r, s)), m(s, t), f.zero(), f.zero()],
        vec![m(r, r), m(&two, &m(r, t)), m(t, t), f.zero(), f.zero()],
        vec![f.zero(), f.zero(), f.zero(), q.clone(), s.clone()],
        vec![f.zero(), f.zero(), f.zero(), r.clone(), t.clone()],
    ];
    let cols: Vec<Vec<Elem>> = cols
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let scale = if j < 3 { &b2 } else { &bi };
            c.iter().map(|x| f.mul(x, scale)).collect()
        })
        .collect();
    Matrix::from_cols(f, &cols)
}

// ---------------------------------------------------------------------------
// G_m on the line with a·z = a²z

/// Square classes: the orbits of k^× acting by a·z = a²z.
pub struct SquaresLineModel {
    action: WeightLineModel,
}

impl SquaresLineModel {
    pub fn new(field: &Field) -> Result<SquaresLineModel> {
        match field.kind() {
            crate::fields::Kind::Rationals => {}
            _ if field.is_finite() => {}
            _ => {
                return Err(Error::UnsupportedField(format!(
                    "square classes over {}",
                    field.descriptor()
                )))
            }
        }
        Ok(SquaresLineModel {
            action: WeightLineModel {
                field: field.clone(),
                weight: 2,
            },
        })
    }
}

fn squarefree_part(n: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * n
}

impl OrbitModel for SquaresLineModel {
    fn name(&self) -> &str {
        "rsquares"
    }

    fn action(&self) -> &dyn ActionModel {
        &self.action
    }

    fn orbit_key(&self, p: &[Elem]) -> Result<String> {
        let f = &self.action.field;
        if p.len() != 1 {
            return Err(Error::DimensionMismatch("points of the line have one coordinate".into()));
        }
        if f.is_zero(&p[0]) {
            return Ok("0".into());
        }
        if let Some(q) = p[0].as_q() {
            let m = q.numer() * q.denom();
            let s = squarefree_part(&m);
            let s = if m.is_negative() { -s } else { s };
            return Ok(format!("{s}·k^2"));
        }
        for c in f.elements()? {
            if f.is_zero(&c) {
                continue;
            }
            if f.is_nth_power(&f.div(&p[0], &c)?, 2)?.is_some() {
                return Ok(format!("{}·k^2", f.format(&c)));
            }
        }
        unreachable!("1 divides every element")
    }

    fn one_step_limits(&self, p: &[Elem]) -> Result<Vec<Step>> {
        let mut steps = Vec::new();
        for w in [0i64, 1, -1] {
            let lambda = Cocharacter::new(vec![w]);
            let r = limit::limit(p, &lambda, &self.action)?;
            if let Some(v) = r.value {
                steps.push(Step {
                    key: self.orbit_key(&v)?,
                    point: v,
                    cocharacter: lambda,
                });
            }
        }
        Ok(dedupe_steps(steps))
    }
}

// ---------------------------------------------------------------------------
// PGL_2 acting on its Lie algebra in characteristic 2

/// PGL_2 acting on pgl_2 = gl_2 / scalars by conjugation, characteristic 2,
/// points given by a trace-zero lift X ∈ gl_2. A nontrivial cocharacter
/// defines a line ℓ ⊂ k², and the limit exists iff ℓ is X-stable, i.e. an
/// eigenline over k. With trace zero the characteristic polynomial is
/// T² + det X, so eigenlines exist iff det X is a square in k.
pub struct Pgl2Model {
    action: ConjugationModel,
}

impl Pgl2Model {
    pub fn new(field: &Field) -> Result<Pgl2Model> {
        if field.characteristic() != 2 {
            return Err(Error::UnsupportedField(
                "the PGL2 adjoint model is implemented in characteristic 2".into(),
            ));
        }
        Ok(Pgl2Model {
            action: ConjugationModel::endo(field, 2),
        })
    }

    fn matrix(&self, p: &[Elem]) -> Result<Matrix> {
        let m = self.action.matrices(p)?.remove(0);
        let f = &self.action.field;
        if !f.is_zero(&f.add(m.get(0, 0), m.get(1, 1))) {
            return Err(Error::Domain("PGL2 points are given by trace-zero lifts".into()));
        }
        Ok(m)
    }

    fn is_scalar(&self, m: &Matrix) -> bool {
        let f = &self.action.field;
        f.is_zero(m.get(0, 1)) && f.is_zero(m.get(1, 0)) && m.get(0, 0) == m.get(1, 1)
    }

    /// The eigenvalue certificate: a square root of det X, if any.
    pub fn eigenvalue(&self, p: &[Elem]) -> Result<Option<Elem>> {
        let m = self.matrix(p)?;
        self.action.field.is_nth_power(&m.determinant()?, 2)
    }
}

impl OrbitModel for Pgl2Model {
    fn name(&self) -> &str {
        "pgl2"
    }

    fn action(&self) -> &dyn ActionModel {
        &self.action
    }

    /// Scalar class: "0". Otherwise det X modulo the additive subgroup k², named
    /// by the part of det X outside k² in the p-basis decomposition.
    fn orbit_key(&self, p: &[Elem]) -> Result<String> {
        let m = self.matrix(p)?;
        if self.is_scalar(&m) {
            return Ok("0".into());
        }
        let f = &self.action.field;
        let det = m.determinant()?;
        let rep = if f.is_perfect() {
            f.zero()
        } else {
            let parts = f.p_decompose(&det)?;
            let z = f.p_basis_element()?;
            let y1 = &parts[1];
            f.mul(&z, &f.mul(y1, y1))
        };
        Ok(format!("regular, det ≡ {} mod k^2", f.format(&rep)))
    }

    fn one_step_limits(&self, p: &[Elem]) -> Result<Vec<Step>> {
        let f = self.action.field.clone();
        let m = self.matrix(p)?;
        let mut steps = vec![Step {
            key: self.orbit_key(p)?,
            point: p.to_vec(),
            cocharacter: Cocharacter::zero(2),
        }];
        if !self.is_scalar(&m) {
            if let Some(r) = self.eigenvalue(p)? {
                let shifted = m.sub(&Matrix::identity(&f, 2).scale(&r));
                let line = shifted.kernel();
                let basis = {
                    let mut b = line.clone();
                    b.extend(linalg::extend_basis(
                        &f,
                        &line,
                        &[linalg::unit_vector(&f, 2, 0), linalg::unit_vector(&f, 2, 1)],
                    ));
                    b
                };
                let c = Matrix::from_cols(&f, &basis)?;
                let lambda = Cocharacter::with_conjugator(vec![1, -1], c)?;
                let res = limit::limit(p, &lambda, &self.action)?;
                let v = res
                    .value
                    .ok_or_else(|| Error::Domain("eigenline flag without a limit".into()))?;
                steps.push(Step {
                    key: self.orbit_key(&v)?,
                    point: v,
                    cocharacter: lambda,
                });
            }
        }
        Ok(dedupe_steps(steps))
    }

    fn render(&self, p: &[Elem]) -> String {
        match self.action.matrices(p) {
            Ok(ms) => ms[0].to_text(),
            Err(_) => "?".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endo_point(f: &Field, rows: &[&[i64]]) -> Vec<Elem> {
        Matrix::from_ints(f, rows).data
    }

    #[test]
    fn nilpotent_two() {
        let f2 = Field::prime(2).unwrap();
        let m = FlagModel::endo(&f2, 2).unwrap();
        let j2 = endo_point(&f2, &[&[0, 1], &[0, 0]]);
        let steps = m.one_step_limits(&j2).unwrap();
        assert_eq!(steps.len(), 2);
        let g = accessibility_graph(&j2, &m, &Budget::default()).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.minimal.as_deref(), Some(m.orbit_key(&vec![f2.zero(); 4]).unwrap().as_str()));
    }

    #[test]
    fn diagonal_is_closed() {
        let f3 = Field::prime(3).unwrap();
        let m = FlagModel::endo(&f3, 2).unwrap();
        let d = endo_point(&f3, &[&[1, 0], &[0, 2]]);
        assert_eq!(m.one_step_limits(&d).unwrap().len(), 1);
    }

    #[test]
    fn squares_line() {
        let q = Field::rationals();
        let m = SquaresLineModel::new(&q).unwrap();
        let g = accessibility_graph(&[q.one()], &m, &Budget::default()).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert_eq!(g.minimal.as_deref(), Some("0"));
        assert_ne!(m.orbit_key(&[q.from_int(-1)]).unwrap(), m.orbit_key(&[q.one()]).unwrap());
        assert_eq!(m.orbit_key(&[q.from_int(4)]).unwrap(), m.orbit_key(&[q.one()]).unwrap());
    }

    #[test]
    fn dot_output() {
        let f2 = Field::prime(2).unwrap();
        let m = FlagModel::endo(&f2, 2).unwrap();
        let j2 = endo_point(&f2, &[&[0, 1], &[0, 0]]);
        let g = accessibility_graph(&j2, &m, &Budget::default()).unwrap();
        let dot = export_dot(&g);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), 1);
    }
}
