//! Reading fields, matrices, tuples and points from flags, files or inline JSON.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use ratgit::fields::parse_descriptor;
use ratgit::limit::{elem_from_json, matrix_from_json_rows, Cocharacter};
use ratgit::{Elem, Field, Matrix, Poly};
use serde_json::Value;

/// Raw text of an argument that is either a path to a file or the value itself.
pub fn read_arg(arg: &str) -> anyhow::Result<String> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(t.to_string());
    }
    let p = Path::new(t);
    if p.is_file() {
        return std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    }
    Ok(t.to_string())
}

fn as_json(arg: &str) -> anyhow::Result<Value> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).with_context(|| format!("'{arg}' is neither a JSON document nor a readable JSON file"))
}

fn descriptor_of(v: &Value) -> Option<&str> {
    v.get("descriptor").and_then(Value::as_str)
}

/// The working field: `--field` wins, then a descriptor embedded in the input, then Q.
pub fn resolve_field(flag: Option<&str>, embedded: Option<&str>) -> anyhow::Result<Field> {
    let d = flag.or(embedded).unwrap_or("Q");
    Ok(parse_descriptor(d)?)
}

pub struct Loaded<T> {
    pub field: Field,
    pub value: T,
    pub raw: Value,
}

pub fn matrix(arg: &str, field_flag: Option<&str>) -> anyhow::Result<Loaded<Matrix>> {
    let raw = as_json(arg)?;
    let field = resolve_field(field_flag, descriptor_of(&raw))?;
    let rows = raw.get("rows").unwrap_or(&raw);
    let value = matrix_from_json_rows(&field, rows)?;
    Ok(Loaded { field, value, raw })
}

pub fn tuple(arg: &str, field_flag: Option<&str>) -> anyhow::Result<Loaded<Vec<Matrix>>> {
    let raw = as_json(arg)?;
    let field = resolve_field(field_flag, descriptor_of(&raw))?;
    let list = raw
        .get("matrices")
        .unwrap_or(&raw)
        .as_array()
        .ok_or_else(|| anyhow!("a tuple is a JSON list of matrices"))?;
    if list.is_empty() {
        bail!("a tuple needs at least one matrix");
    }
    let value = list
        .iter()
        .map(|m| matrix_from_json_rows(&field, m.get("rows").unwrap_or(m)))
        .collect::<ratgit::Result<Vec<_>>>()?;
    Ok(Loaded { field, value, raw })
}

/// A polynomial literal, or a JSON document {"descriptor", "coeffs"}.
pub fn poly(arg: &str, field_flag: Option<&str>) -> anyhow::Result<(Field, Poly)> {
    let text = read_arg(arg)?;
    if text.trim_start().starts_with('{') {
        let raw: Value = serde_json::from_str(&text)?;
        let field = resolve_field(field_flag, descriptor_of(&raw))?;
        let coeffs = raw
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("polynomial JSON needs a \"coeffs\" list"))?
            .iter()
            .map(|c| elem_from_json(&field, c))
            .collect::<ratgit::Result<Vec<_>>>()?;
        return Ok((field.clone(), Poly::new(&field, coeffs)));
    }
    let field = resolve_field(field_flag, None)?;
    let p = Poly::parse(&field, text.trim())?;
    Ok((field, p))
}

/// Comma-separated field elements, or a JSON list.
pub fn point(field: &Field, arg: &str) -> anyhow::Result<Vec<Elem>> {
    let text = read_arg(arg)?;
    if text.starts_with('[') {
        let v: Value = serde_json::from_str(&text)?;
        return Ok(v
            .as_array()
            .ok_or_else(|| anyhow!("point must be a list"))?
            .iter()
            .map(|x| elem_from_json(field, x))
            .collect::<ratgit::Result<Vec<_>>>()?);
    }
    Ok(text
        .split(',')
        .map(|s| field.parse(s.trim()))
        .collect::<ratgit::Result<Vec<_>>>()?)
}

pub fn weights(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("bad weight '{t}'")))
        .collect()
}

/// `--cocharacter` JSON or `--weights` list.
pub fn cocharacter(field: &Field, json: Option<&str>, weights_flag: Option<&str>) -> anyhow::Result<Cocharacter> {
    match (json, weights_flag) {
        (Some(j), None) => Ok(Cocharacter::from_json(field, &as_json(j)?)?),
        (None, Some(w)) => Ok(Cocharacter::new(weights(w)?)),
        (None, None) => bail!("give a cocharacter with --cocharacter or --weights"),
        (Some(_), Some(_)) => bail!("--cocharacter and --weights are exclusive"),
    }
}
