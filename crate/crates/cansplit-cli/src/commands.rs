use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use cansplit::poly::{parse_with_new_vars, rat};
use cansplit::sds::{
    check_generality, check_membership, construct, param_dim, parse_family_file, Coefficients, FamilyFile, FamilyId,
};
use cansplit::singularity::{classify_can, CaIndex, GermPresentation};
use cansplit::splitting::{iterated_split, split, verify_split, SplitRequest};
use cansplit::toric::{
    bidegree, catalog, catalog_entry, link_transcript, parse_link_file, replay, restrict_wall, strict_transform,
    walk_link_on, LinkEntry, Replay, StepKind,
};
use cansplit::{parse, Error, Poly, Rat, VarTable};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{digest, RunReport};
use crate::{Cli, ClassifyArgs, Command, DimsArgs, Emit, FamilyArgs, FamilyCommand, Format, SplitArgs, ToricArgs};

pub struct Output {
    pub text: String,
    pub code: u8,
}

struct Done {
    command: &'static str,
    args: Vec<String>,
    inputs: Vec<String>,
    results: Value,
    text: String,
    code: u8,
}

pub fn run(cli: &Cli) -> Result<Output> {
    let start = Instant::now();
    let done = match &cli.command {
        Command::Split(a) => split_cmd(a)?,
        Command::Classify(a) => classify_cmd(a)?,
        Command::Family(FamilyCommand::Construct(a)) => construct_cmd(a)?,
        Command::Family(FamilyCommand::Check(a)) => check_cmd(a)?,
        Command::Family(FamilyCommand::Dims(a)) => dims_cmd(a)?,
        Command::Family(FamilyCommand::Generality(a)) => generality_cmd(a)?,
        Command::ToricLink(a) => toric_cmd(a)?,
    };
    let timing = cli.timing.then(|| start.elapsed());
    let text = match cli.format {
        Format::Json => {
            let inputs: Vec<&str> = done.inputs.iter().map(String::as_str).collect();
            RunReport {
                command: done.command.to_string(),
                digest: digest(done.command, &done.args, &inputs),
                results: done.results,
                timing,
            }
            .to_json()
        }
        Format::Text => {
            let mut t = done.text;
            if let Some(d) = timing {
                let _ = writeln!(t, "time {:.3} s", d.as_secs_f64());
            }
            t
        }
    };
    Ok(Output { text, code: done.code })
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("cannot read stdin")?;
            Ok(s)
        }
    }
}

/// Parses a polynomial over `names`, or over the identifiers of the text in
/// order of appearance followed by any of `required` not yet seen.
fn read_poly(text: &str, names: &[String], required: &[String]) -> Result<Poly> {
    let text = text.trim();
    if !names.is_empty() {
        return Ok(parse(text, &VarTable::new(names)?)?);
    }
    let p = parse_with_new_vars(text, &VarTable::new::<&str>(&[])?)?;
    let missing: Vec<&String> = required.iter().filter(|n| p.table().index_of(n).is_none()).collect();
    if missing.is_empty() {
        return Ok(p);
    }
    let table = p.table().extended(&missing)?;
    Ok(p.embed(&table)?)
}

/// Substitutes `NAME=VALUE` pairs and drops those variables from the table.
fn apply_sets(f: Poly, sets: &[String]) -> Result<Poly> {
    if sets.is_empty() {
        return Ok(f);
    }
    let mut assign = Vec::new();
    for s in sets {
        let (n, v) = s
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected NAME=VALUE, got `{s}`")))?;
        assign.push((f.table().var(n.trim())?, rational(v)?));
    }
    let g = f.evaluate(&assign);
    let keep: Vec<&String> = f
        .table()
        .names()
        .iter()
        .enumerate()
        .filter(|(i, _)| !assign.iter().any(|(j, _)| j == i))
        .map(|(_, n)| n)
        .collect();
    Ok(g.embed(&VarTable::new(&keep)?)?)
}

fn rational(s: &str) -> Result<Rat> {
    rat::parse(s.trim()).ok_or_else(|| Error::Input(format!("`{}` is not a rational number", s.trim())).into())
}

fn split_cmd(a: &SplitArgs) -> Result<Done> {
    let input = read_input(a.input.as_ref())?;
    let f = apply_sets(read_poly(&input, &a.table, &a.vars)?, &a.set)?;
    let vars: Vec<usize> = a.vars.iter().map(|v| f.table().var(v)).collect::<cansplit::Result<_>>()?;
    let mut args = vec![format!("degree={}", a.degree), format!("emit={:?}", a.emit)];
    args.extend(a.vars.iter().map(|v| format!("var={v}")));
    args.extend(a.set.iter().map(|s| format!("set={s}")));
    args.extend(a.table.iter().map(|s| format!("table={s}")));
    let mut text = String::new();
    let results = if vars.len() > 1 {
        if a.emit != Emit::H {
            return Err(Error::Input("only h is available when splitting several variables".into()).into());
        }
        let h = iterated_split(&f, &vars, a.degree)?;
        let _ = writeln!(text, "h = {h}");
        json!({ "vars": a.vars, "degree": a.degree, "h": h.render() })
    } else {
        let s = split(&SplitRequest::new(f.clone(), vars[0], a.degree))?;
        let verified = verify_split(&f, &s);
        if !verified {
            return Err(Error::Identity("split series fail the splitting identity".into()).into());
        }
        let mut r = json!({ "vars": a.vars, "degree": a.degree });
        let parts = [(Emit::G, "g", &s.g), (Emit::H, "h", &s.h), (Emit::P, "p", &s.p), (Emit::V, "v", &s.v)];
        for (e, name, p) in parts {
            if a.emit == e || a.emit == Emit::All {
                let _ = writeln!(text, "{name} = {p}");
                r[name] = json!(p.render());
            }
        }
        if a.emit == Emit::All {
            let _ = writeln!(text, "verify_split = {verified}");
            r["verify_split"] = json!(verified);
        }
        r
    };
    Ok(Done { command: "split", args, inputs: vec![input], results, text, code: 0 })
}

fn index_json(i: &CaIndex) -> Value {
    match i {
        CaIndex::Smooth => json!({ "kind": "smooth" }),
        CaIndex::Finite(n) => json!({ "kind": "finite", "n": n }),
        CaIndex::AtLeast(n) => json!({ "kind": "at_least", "n": n }),
        CaIndex::NotCa => json!({ "kind": "not_ca" }),
    }
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Done> {
    let input = read_input(a.input.as_ref())?;
    let f = apply_sets(read_poly(&input, &a.table, &[])?, &a.set)?;
    let point: Vec<Rat> = a.point.iter().map(|s| rational(s)).collect::<Result<_>>()?;
    if !point.is_empty() && point.len() != f.table().len() {
        return Err(Error::Input(format!(
            "the point has {} coordinates but the polynomial has {} variables ({})",
            point.len(),
            f.table().len(),
            f.table().names().join(", ")
        ))
        .into());
    }
    let r = classify_can(&GermPresentation::new(f.clone(), a.degree_bound).at(point))?;
    let diagonal: Vec<String> = r.diagonal.iter().map(rat::render).collect();
    let residual = r.residual_h.as_ref().map(Poly::render);
    let mut text = String::new();
    let _ = writeln!(text, "{}", r.label());
    let _ = writeln!(
        text,
        "quadratic rank {}{}",
        r.quad_rank,
        if r.hyperbolic { " (hyperbolic pair)" } else { "" }
    );
    if !diagonal.is_empty() {
        let _ = writeln!(text, "diagonal {}", diagonal.join(", "));
    }
    if let Some(h) = &residual {
        let _ = writeln!(text, "residual h = {h}");
    }
    let results = json!({
        "variables": f.table().names(),
        "label": r.label(),
        "index": index_json(&r.index),
        "quad_rank": r.quad_rank,
        "hyperbolic": r.hyperbolic,
        "diagonal": diagonal,
        "residual_h": residual,
        "trunc_degree": r.trunc_degree,
    });
    let mut args = vec![format!("degree_bound={}", a.degree_bound)];
    args.extend(a.point.iter().map(|p| format!("point={p}")));
    args.extend(a.set.iter().map(|s| format!("set={s}")));
    args.extend(a.table.iter().map(|s| format!("table={s}")));
    Ok(Done { command: "classify", args, inputs: vec![input], results, text, code: 0 })
}

fn family_of(flag: Option<&String>, file: Option<&FamilyFile>) -> Result<FamilyId> {
    let from_file = file.and_then(|f| f.family);
    match (flag, from_file) {
        (Some(s), Some(f)) => {
            let id: FamilyId = s.parse()?;
            if id != f {
                return Err(Error::Input(format!("--family {id} but the file says family = {f}")).into());
            }
            Ok(id)
        }
        (Some(s), None) => Ok(s.parse()?),
        (None, Some(f)) => Ok(f),
        (None, None) => Err(Error::Input("give --family or a `family =` line".into()).into()),
    }
}

fn family_file(a: &FamilyArgs, required: bool) -> Result<(Option<FamilyFile>, String)> {
    if a.input.is_none() && !required {
        return Ok((None, String::new()));
    }
    let text = read_input(a.input.as_ref())?;
    Ok((Some(parse_family_file(&text)?), text))
}

fn construct_cmd(a: &FamilyArgs) -> Result<Done> {
    let (file, text) = family_file(a, false)?;
    let id = family_of(a.family.as_ref(), file.as_ref())?;
    let c = file.map(|f| f.coefficients).unwrap_or_default();
    let f = construct(id, &c)?;
    Ok(Done {
        command: "family construct",
        args: vec![format!("family={id}")],
        inputs: vec![text],
        results: json!({ "family": id.to_string(), "f": f.render() }),
        text: format!("f = {f}\n"),
        code: 0,
    })
}

fn check_cmd(a: &FamilyArgs) -> Result<Done> {
    let (file, text) = family_file(a, true)?;
    let id = family_of(a.family.as_ref(), file.as_ref())?;
    let c: Coefficients = file.map(|f| f.coefficients).unwrap_or_default();
    let r = check_membership(&c, id)?;
    let mut out = String::new();
    for k in &r.conditions {
        let _ = match (&k.witness, k.holds) {
            (_, true) => writeln!(out, "condition {}: pass", k.label),
            (Some(w), false) => writeln!(out, "condition {}: FAIL, nonzero {w}", k.label),
            (None, false) => writeln!(out, "condition {}: FAIL", k.label),
        };
    }
    for (k, v) in &r.derived {
        let _ = writeln!(out, "{k} = {v}");
    }
    if let Some(g) = r.isolated_guard {
        let _ = writeln!(out, "isolated point guard: {}", if g { "pass" } else { "FAIL" });
    }
    if !r.nonzero_residuals.is_empty() {
        let list: Vec<String> = r.nonzero_residuals.iter().map(|k| format!("h_{k}")).collect();
        let _ = writeln!(out, "nonzero residuals: {}", list.join(", "));
    }
    let _ = writeln!(out, "next residual: {}", r.next_residual);
    let _ = writeln!(out, "member of family {id}: {}", if r.member { "yes" } else { "no" });
    Ok(Done {
        command: "family check",
        args: vec![format!("family={id}")],
        inputs: vec![text],
        results: serde_json::to_value(&r)?,
        text: out,
        code: 0,
    })
}

fn generality_cmd(a: &FamilyArgs) -> Result<Done> {
    let (file, text) = family_file(a, false)?;
    let id = family_of(a.family.as_ref(), file.as_ref())?;
    let c = file.map(|f| f.coefficients).unwrap_or_default();
    let r = check_generality(id, &c)?;
    let mut out = String::new();
    if !r.applicable {
        let _ = writeln!(out, "family {id} has no generality condition");
    }
    for k in &r.checks {
        let _ = match &k.witness {
            Some(w) => writeln!(out, "{}: {} ({w})", k.label, if k.holds { "pass" } else { "FAIL" }),
            None => writeln!(out, "{}: {}", k.label, if k.holds { "pass" } else { "FAIL" }),
        };
    }
    if let Some(p) = r.points {
        let _ = writeln!(out, "base of the flop: {p} points");
    }
    if r.applicable {
        let _ = writeln!(out, "general: {}", if r.passed { "yes" } else { "no" });
    }
    Ok(Done {
        command: "family generality",
        args: vec![format!("family={id}")],
        inputs: vec![text],
        results: serde_json::to_value(&r)?,
        text: out,
        code: 0,
    })
}

fn dims_cmd(a: &DimsArgs) -> Result<Done> {
    let ids = match &a.family {
        Some(s) => vec![s.parse::<FamilyId>()?],
        None => FamilyId::all(),
    };
    let dims: Vec<cansplit::Result<u64>> = ids.par_iter().map(|&id| param_dim(id)).collect();
    let mut text = String::new();
    let mut rows = Vec::new();
    for (id, d) in ids.iter().zip(dims) {
        let d = d?;
        let _ = writeln!(text, "cA_{id}: {d}");
        rows.push(json!({ "family": id.to_string(), "dim": d }));
    }
    Ok(Done {
        command: "family dims",
        args: a.family.iter().map(|f| format!("family={f}")).collect(),
        inputs: Vec::new(),
        results: json!({ "dims": rows }),
        text,
        code: 0,
    })
}

fn toric_cmd(a: &ToricArgs) -> Result<Done> {
    match &a.catalog {
        Some(key) => catalog_cmd(key, a.bound),
        None => link_file_cmd(a),
    }
}

fn catalog_cmd(key: &str, bound: u32) -> Result<Done> {
    if bound != cansplit::toric::DEFAULT_EXPONENT_BOUND {
        return Err(Error::Input("--bound applies to link files; catalog replays use the default bound".into()).into());
    }
    let entries: Vec<&'static LinkEntry> = if key == "all" { catalog().iter().collect() } else { vec![catalog_entry(key)?] };
    let replays: Vec<cansplit::Result<Replay>> = entries.par_iter().map(|e| replay(e)).collect();
    let replays: Vec<Replay> = replays.into_iter().collect::<cansplit::Result<_>>()?;
    let text: String = replays.iter().map(|r| r.render()).collect::<Vec<_>>().join("\n");
    let passed = replays.iter().all(Replay::passed);
    let results = if key == "all" {
        json!({ "replays": replays.iter().map(Replay::to_json).collect::<Vec<_>>() })
    } else {
        replays[0].to_json()
    };
    Ok(Done {
        command: "toric-link",
        args: vec![format!("catalog={key}")],
        inputs: Vec::new(),
        results,
        text,
        code: if passed { 0 } else { 4 },
    })
}

fn link_file_cmd(a: &ToricArgs) -> Result<Done> {
    let link = match &a.link {
        Some(p) => read_input(Some(p))?,
        None => read_input(None)?,
    };
    let ideal_text = match &a.ideal {
        Some(p) => Some(read_input(Some(p))?),
        None => None,
    };
    let file = parse_link_file(&link, ideal_text.as_deref())?;
    let t = &file.toric;
    let ideal: Vec<Poly> = file.ideal.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut text = String::new();
    let mut results = json!({
        "variables": t.names(),
        "rows": [t.row(0).iter().map(rat::render).collect::<Vec<_>>(), t.row(1).iter().map(rat::render).collect::<Vec<_>>()],
        "wall": t.wall(),
    });

    let mut gens = ideal.clone();
    if let (Some(exc), false) = (&file.exceptional, ideal.is_empty()) {
        let params: Vec<(&str, u32)> = file.weights.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let st = strict_transform(t, &ideal, exc, &params)?;
        let _ = writeln!(text, "strict transforms under the blowup contracting V({exc}):");
        for s in &st {
            let _ = writeln!(text, "  {} = {exc}^{} * ({})", s.original, s.order, s.transform);
        }
        results["strict_transforms"] = json!(st
            .iter()
            .map(|s| json!({ "original": s.original.render(), "order": s.order, "transform": s.transform.render() }))
            .collect::<Vec<_>>());
        gens = st.into_iter().map(|s| s.transform).collect();
    }

    let extra = file.param_degrees();
    let degrees: std::result::Result<Vec<_>, Error> = gens.iter().map(|g| bidegree(t, g, &extra)).collect();
    let degrees = match degrees {
        Ok(d) => d,
        Err(e) => {
            let note = format!("walls classified on the ambient space: {e}");
            let _ = writeln!(text, "{note}");
            results["note"] = json!(note);
            Vec::new()
        }
    };
    let steps = walk_link_on(t, a.bound, &degrees)?;
    text.push_str(&link_transcript(t, &steps));
    results["steps"] = json!(steps.iter().map(|s| s.to_json()).collect::<Vec<_>>());

    if !gens.is_empty() {
        let mut walls = Vec::new();
        for (i, s) in steps.iter().enumerate() {
            if s.kind != StepKind::Wall {
                continue;
            }
            let r = restrict_wall(s, &gens)?;
            let _ = writeln!(text, "step {}: exceptional locus over {}", i + 1, r.render());
            walls.push(json!({ "step": i + 1, "restriction": r.render(), "degenerate": r.degenerate }));
        }
        results["walls"] = json!(walls);
    }
    let mut inputs = vec![link];
    inputs.extend(ideal_text);
    Ok(Done {
        command: "toric-link",
        args: vec![format!("bound={}", a.bound)],
        inputs,
        results,
        text,
        code: 0,
    })
}
