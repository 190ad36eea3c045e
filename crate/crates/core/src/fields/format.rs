use super::{fpx, Elem, Field, Kind};

pub(crate) fn format_elem(field: &Field, a: &Elem) -> String {
    match (field.kind(), a) {
        (Kind::Rationals, Elem::Q(q)) => {
            if q.denom() == &1.into() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        (Kind::Prime { .. }, Elem::Fp(v)) => v.to_string(),
        (Kind::Galois { generator, .. }, Elem::Gf(v)) => format_fpx(v, generator),
        (Kind::RationalFunctions { variable, .. }, Elem::Rf(n, d)) => {
            let ns = format_fpx(n, variable);
            if fpx::is_one(d) {
                return ns;
            }
            let ds = format_fpx(d, variable);
            let ns = if is_composite(&ns) { format!("({ns})") } else { ns };
            let ds = if ds.contains(['+', '-', '*', '/']) {
                format!("({ds})")
            } else {
                ds
            };
            format!("{ns}/{ds}")
        }
        (Kind::Extension { base, generator, .. }, Elem::Ext(v)) => {
            format_poly_in(base, v, generator)
        }
        _ => format!("{a:?}"),
    }
}

/// True when the string has a top-level `+` or `-` after its first character.
pub(crate) fn is_composite(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

fn format_fpx(v: &[u64], var: &str) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (k, &c) in v.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let t = if k == 0 {
            c.to_string()
        } else if c == 1 {
            mono
        } else {
            format!("{c}*{mono}")
        };
        terms.push((false, t));
    }
    join_terms(terms)
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, t)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        out.push_str(&t);
    }
    out
}

/// Formats a polynomial with coefficients in `field` in the variable `var`.
pub(crate) fn format_poly_in(field: &Field, coeffs: &[Elem], var: &str) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let mut cs = field.format(c);
        let mut neg = false;
        if cs.starts_with('-') && !is_composite(&cs) {
            neg = true;
            cs.remove(0);
        }
        let t = if k == 0 {
            if is_composite(&cs) && !terms.is_empty() {
                format!("({cs})")
            } else {
                cs
            }
        } else if cs == "1" {
            mono
        } else if is_composite(&cs) {
            format!("({cs})*{mono}")
        } else {
            format!("{cs}*{mono}")
        };
        terms.push((neg, t));
    }
    join_terms(terms)
}
