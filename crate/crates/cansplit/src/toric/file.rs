//! Text format for a rank-2 toric variety with an optional ideal.
//!
//! ```text
//! # comment
//! vars: u x | y z alpha xi t
//! row: 0 1 1 1 3 5 1
//! row: -1 0 1 1 3 6 2
//! exceptional: u
//! weights: a_2=2, C_5=5
//! param_class: y
//! ideal: -x*xi + alpha^2 - D_6
//! ```
//!
//! The bar in `vars` marks the split of the irrelevant ideal; `wall: k` may be
//! given instead. A symbol of weight `k` has bidegree `k` times the column of
//! the `param_class` variable. Lines without a key continue the previous `ideal`. A
//! separate ideal text holds one generator per `ideal:` entry or per line.

use std::sync::Arc;

use super::Rank2Toric;
use crate::error::{Error, Result};
use crate::poly::{parse, rat, Poly, Rat, VarTable};

#[derive(Clone, Debug)]
pub struct LinkFile {
    pub toric: Rank2Toric,
    pub ideal: Vec<Poly>,
    /// Variable contracted by the blowup whose strict transforms are wanted.
    pub exceptional: Option<String>,
    /// Pullback weights of symbols outside the toric variables.
    pub weights: Vec<(String, u32)>,
    pub param_class: Option<String>,
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Input(format!("line {line}: {}", msg.into()))
}

fn ideal_lines(text: &str, keyed_only: bool) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.split_once(':') {
            Some((k, v)) if k.trim() == "ideal" => out.push(v.trim().to_string()),
            Some((k, _)) if is_key(k.trim()) => {
                if !keyed_only {
                    return Err(syntax(no + 1, format!("unexpected key `{}` in an ideal", k.trim())));
                }
            }
            _ => match out.last_mut() {
                Some(last) if keyed_only || raw.starts_with(char::is_whitespace) => {
                    last.push(' ');
                    last.push_str(line);
                }
                _ if keyed_only => return Err(syntax(no + 1, format!("cannot read `{line}`"))),
                _ => out.push(line.to_string()),
            },
        }
    }
    Ok(out)
}

fn is_key(k: &str) -> bool {
    matches!(k, "vars" | "row" | "wall" | "exceptional" | "weights" | "param_class" | "ideal")
}

/// Parses generators over the toric variables, adding any further symbols in order.
pub fn parse_ideal(toric: &Rank2Toric, texts: &[String]) -> Result<Vec<Poly>> {
    let mut table: Arc<VarTable> = VarTable::new(toric.names())?;
    for t in texts {
        let p = crate::poly::parse_with_new_vars(t, &table)?;
        table = p.table().clone();
    }
    texts.iter().map(|t| parse(t, &table)).collect()
}

pub fn parse_link_file(text: &str, extra_ideal: Option<&str>) -> Result<LinkFile> {
    let mut names: Option<(Vec<String>, Option<usize>)> = None;
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut wall: Option<usize> = None;
    let mut exceptional = None;
    let mut weights = Vec::new();
    let mut param_class = None;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else { continue };
        let value = value.trim();
        match key.trim() {
            "vars" => {
                let mut v = Vec::new();
                let mut bar = None;
                for tok in value.split_whitespace() {
                    if tok == "|" {
                        bar = Some(v.len());
                    } else {
                        v.push(tok.to_string());
                    }
                }
                names = Some((v, bar));
            }
            "row" => {
                let r = value
                    .split_whitespace()
                    .filter(|t| *t != "|")
                    .map(|t| rat::parse(t).ok_or_else(|| syntax(no + 1, format!("`{t}` is not a number"))))
                    .collect::<Result<Vec<Rat>>>()?;
                rows.push(r);
            }
            "wall" => {
                wall = Some(value.parse().map_err(|_| syntax(no + 1, format!("`{value}` is not a column count")))?)
            }
            "exceptional" => exceptional = Some(value.to_string()),
            "param_class" => param_class = Some(value.to_string()),
            "weights" => {
                for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (n, k) = item
                        .split_once('=')
                        .ok_or_else(|| syntax(no + 1, format!("expected name=weight, got `{item}`")))?;
                    let k = k.trim().parse().map_err(|_| syntax(no + 1, format!("bad weight in `{item}`")))?;
                    weights.push((n.trim().to_string(), k));
                }
            }
            "ideal" => {}
            k => return Err(syntax(no + 1, format!("unknown key `{k}`"))),
        }
    }
    let (names, bar) = names.ok_or_else(|| Error::Input("missing `vars:` line".into()))?;
    if rows.len() != 2 {
        return Err(Error::Input(format!("expected two `row:` lines, found {}", rows.len())));
    }
    let wall = match (bar, wall) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Input(format!("the bar is after column {a} but `wall: {b}`")));
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Input("missing bar in `vars:` or a `wall:` line".into())),
    };
    let r1 = rows.pop().unwrap_or_default();
    let r0 = rows.pop().unwrap_or_default();
    let toric = Rank2Toric::new(&names, [r0, r1], wall)?;
    let mut texts = ideal_lines(text, true)?;
    if let Some(extra) = extra_ideal {
        texts.extend(ideal_lines(extra, false)?);
    }
    let ideal = parse_ideal(&toric, &texts)?;
    for name in exceptional.iter().chain(&param_class) {
        toric.var(name)?;
    }
    Ok(LinkFile { toric, ideal, exceptional, weights, param_class })
}

impl LinkFile {
    /// Bidegrees of the symbols listed under `weights`, when `param_class` is set.
    pub fn param_degrees(&self) -> Vec<(String, [Rat; 2])> {
        let Some(c) = self.param_class.as_deref().and_then(|c| self.toric.index_of(c)) else {
            return Vec::new();
        };
        let col = self.toric.column(c);
        self.weights
            .iter()
            .map(|(n, k)| {
                let k = rat::int(i64::from(*k));
                (n.clone(), [&k * &col[0], &k * &col[1]])
            })
            .collect()
    }
}
