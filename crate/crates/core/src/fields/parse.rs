use num_bigint::BigInt;

use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::poly::raw;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[st..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Syntax(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// Expression evaluator into the polynomial ring field[var] (var optional).
struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    var: Option<&'a str>,
}

type P = Vec<Elem>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                raw::add(self.field, &acc, &rhs)
            } else {
                raw::sub(self.field, &acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = raw::mul(self.field, &acc, &rhs);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.divide(&acc, &rhs)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let rhs = self.unary()?;
                    acc = raw::mul(self.field, &acc, &rhs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn divide(&self, a: &P, b: &P) -> Result<P> {
        if b.is_empty() {
            return Err(Error::Domain("denominator zero".into()));
        }
        if b.len() > 1 {
            return Err(Error::Syntax("division by a non-constant polynomial".into()));
        }
        let inv = self.field.inv(&b[0])?;
        Ok(raw::scale(self.field, a, &inv))
    }

    fn unary(&mut self) -> Result<P> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(raw::neg(self.field, &v))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<P> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let mut neg = false;
            if let Some(Tok::Op('-')) = self.peek() {
                neg = true;
                self.pos += 1;
            }
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(Error::Syntax("expected integer exponent".into())),
            };
            self.pos += 1;
            let e: u64 = e
                .try_into()
                .map_err(|_| Error::Syntax("exponent too large".into()))?;
            if e > 100_000 {
                return Err(Error::Syntax("exponent too large".into()));
            }
            let mut r = vec![self.field.one()];
            for _ in 0..e {
                r = raw::mul(self.field, &r, &base);
            }
            if neg {
                return self.divide(&vec![self.field.one()], &r);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<P> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Syntax("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let mut v = vec![self.field.from_bigint(&n)];
                raw::trim(self.field, &mut v);
                Ok(v)
            }
            Tok::Ident(name) => {
                if Some(name.as_str()) == self.var {
                    return Ok(vec![self.field.zero(), self.field.one()]);
                }
                match self.field.variable(&name) {
                    Some(x) => {
                        let mut v = vec![x];
                        raw::trim(self.field, &mut v);
                        Ok(v)
                    }
                    None => Err(Error::Syntax(format!("unknown identifier '{name}'"))),
                }
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::Syntax("expected ')'".into())),
                }
            }
            Tok::Op(c) => Err(Error::Syntax(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses a polynomial in `var` with coefficients in `field`.
pub(crate) fn parse_poly(field: &Field, literal: &str, var: &str) -> Result<Vec<Elem>> {
    let toks = tokenize(literal)?;
    if toks.is_empty() {
        return Err(Error::Syntax("empty literal".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        var: Some(var),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax(format!("trailing input in '{literal}'")));
    }
    Ok(v)
}

pub(crate) fn parse_element(field: &Field, literal: &str) -> Result<Elem> {
    let toks = tokenize(literal)?;
    if toks.is_empty() {
        return Err(Error::Syntax("empty literal".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        var: None,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax(format!("trailing input in '{literal}'")));
    }
    Ok(v.into_iter().next().unwrap_or_else(|| field.zero()))
}

/// Parses `Q | GF(p^e) | Fp(t):p=<p> | ext(<base>;<minpoly>;<gen>)`.
pub fn parse_descriptor(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(Field::rationals());
    }
    if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let (p, e) = match rest.split_once('^') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (rest.trim(), "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Syntax(format!("bad prime in '{s}'")))?;
        let e: usize = e
            .parse()
            .map_err(|_| Error::Syntax(format!("bad exponent in '{s}'")))?;
        return Field::finite(p, e);
    }
    if let Some(rest) = s.strip_prefix("Fp(") {
        let (var, tail) = rest
            .split_once(')')
            .ok_or_else(|| Error::Syntax(format!("malformed descriptor '{s}'")))?;
        let p = tail
            .trim()
            .strip_prefix(":p=")
            .ok_or_else(|| Error::Syntax(format!("missing ':p=' in '{s}'")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("bad prime in '{s}'")))?;
        let var = var.trim();
        if var.is_empty() || !var.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Syntax(format!("bad variable in '{s}'")));
        }
        return Field::rational_functions(p, var);
    }
    if let Some(rest) = s.strip_prefix("ext(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top_level(rest, ';');
        if parts.len() != 3 {
            return Err(Error::Syntax(format!("ext needs three ';'-separated parts: '{s}'")));
        }
        let base = parse_descriptor(parts[0])?;
        let gen = parts[2].trim();
        if gen.is_empty() || !gen.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::Syntax(format!("bad generator name in '{s}'")));
        }
        if base.variable(gen).is_some() || gen == "X" {
            return Err(Error::Syntax(format!("generator name '{gen}' already in use")));
        }
        let m = parse_poly(&base, parts[1], "X")?;
        return Field::extension(&base, &m, gen);
    }
    Err(Error::Syntax(format!("unknown field descriptor '{s}'")))
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for d in ["Q", "GF(5)", "GF(2^4)", "Fp(t):p=2"] {
            assert_eq!(parse_descriptor(d).unwrap().descriptor(), d);
        }
    }

    #[test]
    fn malformed_literals() {
        let f = Field::rationals();
        assert!(matches!(f.parse("1+"), Err(Error::Syntax(_))));
        assert!(matches!(f.parse("1/0"), Err(Error::Domain(_))));
        assert!(matches!(f.parse("x"), Err(Error::Syntax(_))));
    }
}
