//! Ideal file formats.
//!
//! Text form, one ideal per file:
//!
//! ```text
//! vars: 4
//! gens:
//! x1*x2*x3
//! x3^2*x4
//! ```
//!
//! Monomials may also be separated by commas. `1` is the unit monomial and
//! `#` starts a comment. The JSON form is `{"n": 4, "gens": [[1,1,1,0], ...]}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Serialize, Deserialize)]
struct IdealJsonRaw {
    n: usize,
    gens: Vec<Vec<i64>>,
}

/// Parse either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    if text.trim_start().starts_with('{') {
        parse_ideal_json(text)
    } else {
        parse_ideal_text(text)
    }
}

pub fn parse_ideal_json(text: &str) -> Result<MonomialIdeal> {
    let raw: IdealJsonRaw = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    ideal_from_raw(raw)
}

pub fn ideal_from_json_value(value: &Value) -> Result<MonomialIdeal> {
    let raw: IdealJsonRaw =
        serde_json::from_value(value.clone()).map_err(|e| Error::parse(0, 0, e.to_string()))?;
    ideal_from_raw(raw)
}

fn ideal_from_raw(raw: IdealJsonRaw) -> Result<MonomialIdeal> {
    let mut gens = Vec::with_capacity(raw.gens.len());
    for (k, g) in raw.gens.iter().enumerate() {
        if g.len() != raw.n {
            return Err(Error::parse(
                0,
                0,
                format!("generator {k} has {} exponents, expected {}", g.len(), raw.n),
            ));
        }
        let mut exps = Vec::with_capacity(g.len());
        for &e in g {
            let e = u32::try_from(e).map_err(|_| {
                Error::parse(0, 0, format!("generator {k}: invalid exponent {e}"))
            })?;
            exps.push(e);
        }
        gens.push(Monomial::new(exps));
    }
    MonomialIdeal::new(raw.n, gens)
}

pub fn ideal_to_json(ideal: &MonomialIdeal) -> Value {
    serde_json::json!({
        "n": ideal.n(),
        "gens": ideal.gens().iter().map(|g| g.exponents().to_vec()).collect::<Vec<_>>(),
    })
}

pub fn ideal_to_text(ideal: &MonomialIdeal) -> String {
    let mut out = format!("vars: {}\ngens:\n", ideal.n());
    for g in ideal.gens() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_ideal_text(text: &str) -> Result<MonomialIdeal> {
    let mut n: Option<usize> = None;
    let mut in_gens = false;
    let mut gens = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let trimmed = line.trim_start();
        let indent = line.len() - trimmed.len();
        if n.is_none() {
            let rest = trimmed.strip_prefix("vars:").ok_or_else(|| {
                Error::parse(line_no, indent + 1, "expected `vars: n`")
            })?;
            let value = rest.trim();
            n = Some(value.parse().map_err(|_| {
                Error::parse(line_no, indent + 6, format!("invalid variable count `{value}`"))
            })?);
            continue;
        }
        let nvars = n.expect("checked above");
        let (body, offset) = if !in_gens {
            let rest = trimmed
                .strip_prefix("gens:")
                .ok_or_else(|| Error::parse(line_no, indent + 1, "expected `gens:`"))?;
            in_gens = true;
            (rest, indent + 5)
        } else {
            (trimmed, indent)
        };
        let mut col = offset;
        for piece in body.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let token = piece.trim();
            if !token.is_empty() {
                gens.push(parse_monomial(token, nvars, line_no, col + lead + 1)?);
            }
            col += piece.len() + 1;
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, 1, "missing `vars:` line"))?;
    if !in_gens {
        return Err(Error::parse(text.lines().count().max(1), 1, "missing `gens:` line"));
    }
    MonomialIdeal::new(n, gens)
}

/// Parse `x1^2*x3` (or `1`) in `n` variables. `col` is the 1-based column of
/// the token, used for error positions.
pub fn parse_monomial(token: &str, n: usize, line: usize, col: usize) -> Result<Monomial> {
    let mut exps = vec![0u32; n];
    if token == "1" {
        return Ok(Monomial::new(exps));
    }
    let mut pos = 0;
    for factor in token.split('*') {
        let lead = factor.len() - factor.trim_start().len();
        let f = factor.trim();
        let fcol = col + pos + lead;
        pos += factor.len() + 1;
        let body = f
            .strip_prefix('x')
            .ok_or_else(|| Error::parse(line, fcol, format!("expected a variable, found `{f}`")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i.trim(), Some(e.trim())),
            None => (body.trim(), None),
        };
        let index: usize = idx
            .parse()
            .map_err(|_| Error::parse(line, fcol + 1, format!("invalid variable index `{idx}`")))?;
        if index == 0 || index > n {
            return Err(Error::parse(
                line,
                fcol + 1,
                format!("variable index {index} out of range 1..={n}"),
            ));
        }
        let e = match exp {
            None => 1,
            Some(e) => {
                if e.starts_with('-') {
                    return Err(Error::parse(line, fcol, format!("negative exponent `{e}`")));
                }
                e.parse::<u32>()
                    .map_err(|_| Error::parse(line, fcol, format!("invalid exponent `{e}`")))?
            }
        };
        exps[index - 1] += e;
    }
    Ok(Monomial::new(exps))
}
