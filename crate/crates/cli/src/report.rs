//! Output envelope and the scripted demos.

use anyhow::{anyhow, bail};
use clap::ValueEnum;
use ratgit::endo::{self, companion_of};
use ratgit::fields::parse_descriptor;
use ratgit::limit::{self, Cocharacter};
use ratgit::orbit::{self, Budget, OrbitModel};
use ratgit::{Elem, Field, Matrix};
use serde_json::{json, Value};

use crate::matrix_json;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

pub struct Report {
    op: &'static str,
    descriptor: String,
    inputs: Value,
    result: Value,
    text: String,
    dot: Option<String>,
}

impl Report {
    pub fn new(op: &'static str, field: &Field, inputs: Value, result: Value, text: String) -> Report {
        Report {
            op,
            descriptor: field.descriptor(),
            inputs,
            result,
            text,
            dot: None,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Report {
        self.dot = Some(dot);
        self
    }

    /// The whole output as one string, written once by the caller.
    pub fn render(self, group: &str, format: Format, seed: u64) -> anyhow::Result<String> {
        let version = env!("CARGO_PKG_VERSION");
        let command = format!("{group} {}", self.op);
        match format {
            Format::Json => {
                let doc = json!({
                    "tool": "ratgit",
                    "version": version,
                    "command": command,
                    "descriptor": self.descriptor,
                    "seed": seed,
                    "inputs": self.inputs,
                    "result": self.result,
                });
                Ok(serde_json::to_string_pretty(&doc)? + "\n")
            }
            Format::Dot => {
                let dot = self.dot.ok_or_else(|| anyhow!("'{command}' has no DOT output"))?;
                Ok(format!(
                    "// ratgit {version}: {command}\n// descriptor: {}\n// seed: {seed}\n// inputs: {}\n{dot}",
                    self.descriptor,
                    serde_json::to_string(&self.inputs)?
                ))
            }
            Format::Text => Ok(format!(
                "# ratgit {version}: {command}\n# descriptor: {}\n# seed: {seed}\n# inputs: {}\n{}",
                self.descriptor,
                serde_json::to_string(&self.inputs)?,
                self.text
            )),
        }
    }
}

fn check(cond: bool, what: &str) -> anyhow::Result<()> {
    if !cond {
        bail!(ratgit::Error::ReplayMismatch(what.to_string()));
    }
    Ok(())
}

pub fn demo_rsquares(budget: &Budget) -> anyhow::Result<Report> {
    let q = Field::rationals();
    let model = orbit::SquaresLineModel::new(&q)?;
    let mut graphs = Vec::new();
    let mut text = String::new();
    for seed in [1, -1] {
        let g = orbit::accessibility_graph(&[q.from_int(seed)], &model, budget)?;
        let ids: Vec<&str> = g.nodes.iter().map(|n| n.id.as_str()).collect();
        text += &format!("closure of orbit({seed}): {}; minimal {}\n", ids.join(", "), g.minimal.as_deref().unwrap_or("?"));
        graphs.push(json!({"seed": seed, "graph": g.to_json()}));
    }
    let one = model.orbit_key(&[q.one()])?;
    let minus = model.orbit_key(&[q.from_int(-1)])?;
    check(one != minus, "1 and -1 share an orbit")?;
    Ok(Report::new(
        "rsquares",
        &q,
        json!({"model": model.name()}),
        json!({"graphs": graphs, "distinct_orbits": one != minus}),
        text,
    ))
}

pub fn demo_pgl2() -> anyhow::Result<Report> {
    let k = parse_descriptor("Fp(t):p=2")?;
    let point = |f: &Field| -> anyhow::Result<Vec<Elem>> { Ok(vec![f.zero(), f.one(), f.parse("t")?, f.zero()]) };
    let model = orbit::Pgl2Model::new(&k)?;
    let v = point(&k)?;
    let root = k.is_nth_power(&k.parse("t")?, 2)?;
    let key = model.orbit_key(&v)?;
    let proper_over_k: Vec<String> = model
        .one_step_limits(&v)?
        .into_iter()
        .filter(|s| s.key != key)
        .map(|s| s.key)
        .collect();

    let l = parse_descriptor("ext(Fp(t):p=2;X^2+t;x)")?;
    let lm = orbit::Pgl2Model::new(&l)?;
    let vl = point(&l)?;
    let steps = lm.one_step_limits(&vl)?;
    let zero = steps
        .iter()
        .find(|s| s.key == "0")
        .ok_or_else(|| ratgit::Error::ReplayMismatch("no limit to 0 over k(x)".into()))?;
    let replayed = limit::limit(&vl, &zero.cocharacter, lm.action())?;
    let value = replayed.value.ok_or_else(|| ratgit::Error::ReplayMismatch("witness has no limit".into()))?;
    check(lm.orbit_key(&value)? == "0", "witness limit is not 0")?;
    let lim = limit::unflatten(&l, 2, &value)?.remove(0);
    let text = format!(
        "over {}: t is a square: {}; proper one-step limits: {}\nover {}: cocharacter {:?} sends the point to 0 (scalar limit {})\n",
        k.descriptor(),
        root.is_some(),
        proper_over_k.len(),
        l.descriptor(),
        zero.cocharacter.weights,
        lim.to_text()
    );
    Ok(Report::new(
        "pgl2",
        &k,
        json!({"point": [[0, 1], ["t", 0]], "extension": l.descriptor()}),
        json!({
            "base": {"t_is_square": root.is_some(), "orbit_key": key, "proper_limits": proper_over_k},
            "extension": {
                "descriptor": l.descriptor(),
                "cocharacter": zero.cocharacter.to_json(),
                "limit": matrix_json(&lim),
                "limit_key": "0",
            },
        }),
        text,
    ))
}

pub fn demo_fromf4(budget: &Budget) -> anyhow::Result<Report> {
    let f = Field::prime(5)?;
    let model = orbit::sl2_gm_model(&f, budget)?;
    let el = |c: [i64; 5]| c.iter().map(|&x| f.from_int(x)).collect::<Vec<Elem>>();
    let v = el([0, 1, 0, 1, 0]);
    let xy = el([0, 1, 0, 0, 0]);
    let x2 = el([1, 0, 0, 0, 0]);
    let lambda = Cocharacter::new(vec![1, 0]);
    let v1 = limit::limit(&v, &lambda, model.action())?.value;
    check(v1.as_ref() == Some(&xy), "lim along (1,0) is not xy")?;
    let (o, z) = (f.one(), f.zero());
    let u = orbit::sl2_gm_matrix(&f, [&o, &o, &z, &o], &o)?;
    let uxy = u.mul_vec(&xy);
    let sigma = Cocharacter::new(vec![-1, 1]);
    let v2 = limit::limit(&uxy, &sigma, model.action())?.value;
    check(v2.as_ref() == Some(&x2), "lim along (-1,1) of u.xy is not x^2")?;
    let steps: Vec<String> = model.one_step_limits(&v)?.into_iter().map(|s| s.key).collect();
    let kx2 = model.orbit_key(&x2)?;
    let g = orbit::accessibility_graph(&v, &model, budget)?;
    let depth = g.node(&kx2).map(|n| n.depth);
    let text = format!(
        "v = xy + e1 -> xy along (1,0); u.xy = x^2 + xy -> x^2 along (-1,1)\nx^2 one-step from v: {}; depth of x^2 in the graph: {}\n",
        steps.contains(&kx2),
        depth.map_or("unreached".into(), |d| d.to_string())
    );
    Ok(Report::new(
        "fromf4",
        &f,
        json!({"point": model.render(&v)}),
        json!({
            "first_limit": model.render(&xy),
            "second_limit": model.render(&x2),
            "one_step_keys": steps,
            "x2_one_step": steps.contains(&kx2),
            "x2_depth": depth,
            "graph": g.to_json(),
        }),
        text,
    ))
}

pub fn demo_insepext() -> anyhow::Result<Report> {
    let k = parse_descriptor("Fp(t):p=2")?;
    let f = companion_of(&k, "T^12+t")?;
    let v = endo::is_cocharacter_closed(&f)?;
    let geo = endo::is_geometrically_closed(&f)?;
    let tower = parse_descriptor("ext(ext(Fp(t):p=2;X^3+t;s);X^2+X+1;z)")?;
    let vt = endo::is_cocharacter_closed(&f.embed(&tower)?)?;
    let kb = parse_descriptor("ext(Fp(s):p=2;X^2+s;b)")?;
    let block = Matrix::parse(
        &kb,
        &[
            vec!["0", "b", "0", "b"],
            vec!["1", "0", "0", "0"],
            vec!["0", "0", "0", "b"],
            vec!["0", "0", "1", "0"],
        ],
    )?;
    let vb = endo::is_cocharacter_closed(&block)?;
    let text = format!(
        "T^12+t over {}: cocharacter-closed {}, geometrically closed {}\nover {}: closed {}\n4x4 block over {}: closed {}\n",
        k.descriptor(),
        v.closed,
        geo,
        tower.descriptor(),
        vt.closed,
        kb.descriptor(),
        vb.closed
    );
    Ok(Report::new(
        "insepext",
        &k,
        json!({"matrix": matrix_json(&f)}),
        json!({
            "base": {"cocharacter_closed": v.closed, "geometrically_closed": geo},
            "tower": {"descriptor": tower.descriptor(), "verdict": vt.to_json()},
            "block": {"matrix": matrix_json(&block), "verdict": vb.to_json()},
        }),
        text,
    ))
}
