//! The 2-ray link of a rank-2 toric variety and its restriction to a
//! subvariety: strict transforms, flopping loci and local charts.

use std::fmt;
use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::model::{ample_model, integral_weights, AmpleModel};
use super::{side, wall_basis, Rank2Toric};
use crate::error::{Error, Result};
use crate::poly::{rat, weight, BinaryForm, Matrix, Poly, Rat, VarTable, Weight};
use crate::singularity::{kawakita_check, pullback_chart, KawakitaVerdict, KawakitaWeights};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Contraction of the divisor of the variable beyond the ray.
    Divisorial,
    /// Crossing a wall inside the movable cone.
    Wall,
    /// Fibration onto the space of the variables on the ray.
    Fibration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WallClass {
    Flop,
    Flip,
    Antiflip,
}

impl fmt::Display for WallClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WallClass::Flop => "flop",
            WallClass::Flip => "flip",
            WallClass::Antiflip => "antiflip",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LinkStep {
    pub kind: StepKind,
    /// Index into the rays of the chambers.
    pub ray: usize,
    pub on_ray: Vec<usize>,
    /// Weights of the variables on the ray.
    pub multiples: Vec<u64>,
    /// `v_1 ρ_2 - v_2 ρ_1` for each column `v`; positive before the ray.
    pub signature: Vec<Rat>,
    /// Unimodular change of basis putting the ray on the second axis.
    pub basis_change: Matrix,
    /// Sum of the signature less the signatures of the equations.
    pub sigma: Rat,
    pub class: Option<WallClass>,
    /// Variables contracted from the side after the ray.
    pub positive: Vec<usize>,
    /// Variables contracted from the side before the ray.
    pub negative: Vec<usize>,
    pub model: AmpleModel,
    pub annotation: Option<String>,
}

impl LinkStep {
    /// The variable beyond a divisorial step.
    pub fn exceptional(&self) -> Option<usize> {
        match self.model.kind {
            super::ModelKind::Divisorial { exceptional } => Some(exceptional),
            _ => None,
        }
    }

    fn names(&self, vars: &[usize]) -> String {
        vars.iter().map(|&v| self.model.names[v].as_str()).collect::<Vec<_>>().join(", ")
    }

    pub fn render(&self) -> String {
        let ray = format!("({}, {})", self.model.ray[0], self.model.ray[1]);
        let mut s = match self.kind {
            StepKind::Divisorial => format!(
                "divisorial contraction of V({}) at ray {ray}: [{}] -> {}",
                self.names(&[self.exceptional().unwrap_or(0)]),
                self.model.generator_texts().join(", "),
                self.model.target
            ),
            StepKind::Fibration => format!(
                "fibration at ray {ray}: [{}] -> {}",
                self.model.generator_texts().join(", "),
                self.model.target
            ),
            StepKind::Wall => format!(
                "{} at ray {ray} [{}]: contracts V({}) then extracts V({}); model [{}] in {}",
                self.class.map_or("wall".into(), |c| c.to_string()),
                self.names(&self.on_ray),
                self.names(&self.negative),
                self.names(&self.positive),
                self.model.generator_texts().join(", "),
                self.model.target
            ),
        };
        let sig: Vec<String> = self
            .model
            .names
            .iter()
            .zip(&self.signature)
            .map(|(n, k)| format!("{n} {}", rat::render(k)))
            .collect();
        let _ = write!(s, "\n    signature {}", sig.join(", "));
        if !self.model.scale.is_one() {
            let _ = write!(s, "; weights scaled by {}", rat::render(&self.model.scale));
        }
        if let Some(a) = &self.annotation {
            let _ = write!(s, "\n    {a}");
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind {
                StepKind::Divisorial => "divisorial",
                StepKind::Wall => "wall",
                StepKind::Fibration => "fibration",
            },
            "on_ray": self.on_ray.iter().map(|&v| self.model.names[v].clone()).collect::<Vec<_>>(),
            "signature": self.signature.iter().map(rat::render).collect::<Vec<_>>(),
            "basis_change": self.basis_change.iter()
                .map(|r| r.iter().map(rat::render).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "sigma": rat::render(&self.sigma),
            "class": self.class.map(|c| c.to_string()),
            "contracted_before": self.negative.iter().map(|&v| self.model.names[v].clone()).collect::<Vec<_>>(),
            "contracted_after": self.positive.iter().map(|&v| self.model.names[v].clone()).collect::<Vec<_>>(),
            "model": self.model.to_json(),
            "annotation": self.annotation,
        })
    }
}

/// Bidegree of a polynomial homogeneous for the action; `extra` gives the
/// bidegrees of symbols outside the toric variables and the rest have degree zero.
pub fn bidegree(t: &Rank2Toric, p: &Poly, extra: &[(String, [Rat; 2])]) -> Result<[Rat; 2]> {
    let table = p.table();
    let cols: Vec<[Rat; 2]> = table
        .names()
        .iter()
        .map(|n| match t.index_of(n) {
            Some(i) => t.column(i).clone(),
            None => extra
                .iter()
                .find(|(m, _)| m == n)
                .map_or([Rat::zero(), Rat::zero()], |(_, d)| d.clone()),
        })
        .collect();
    let mut out: Option<[Rat; 2]> = None;
    for (m, _) in p.terms() {
        let mut d = [Rat::zero(), Rat::zero()];
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                let k = rat::int(i64::from(e));
                d[0] += &k * &cols[i][0];
                d[1] += &k * &cols[i][1];
            }
        }
        match &out {
            None => out = Some(d),
            Some(o) if *o == d => {}
            Some(o) => {
                return Err(Error::Input(format!(
                    "{p} is not homogeneous: degrees ({}, {}) and ({}, {})",
                    rat::render(&o[0]),
                    rat::render(&o[1]),
                    rat::render(&d[0]),
                    rat::render(&d[1])
                )))
            }
        }
    }
    out.ok_or_else(|| Error::Input("the zero polynomial has no degree".into()))
}

/// The steps of the 2-ray link from one end of the movable cone to the other.
pub fn walk_link(t: &Rank2Toric, bound: u32) -> Result<Vec<LinkStep>> {
    walk_link_on(t, bound, &[])
}

/// The link restricted to a complete intersection with equations of the given
/// bidegrees; wall classes account for the equations.
pub fn walk_link_on(t: &Rank2Toric, bound: u32, degrees: &[[Rat; 2]]) -> Result<Vec<LinkStep>> {
    let ch = t.chambers()?;
    let last = ch.rays.len() - 1;
    (ch.mov.0..=ch.mov.1)
        .map(|k| {
            let ray = &ch.rays[k];
            let signature: Vec<Rat> = (0..t.len()).map(|i| -side(&ray.dir, t.column(i))).collect();
            let sigma = signature.iter().fold(Rat::zero(), |a, b| a + b)
                + degrees.iter().fold(Rat::zero(), |a, d| a + side(&ray.dir, d));
            let positive: Vec<usize> = (0..t.len()).filter(|&i| signature[i].is_positive()).collect();
            let negative: Vec<usize> = (0..t.len()).filter(|&i| signature[i].is_negative()).collect();
            let boundary = (k == ch.mov.0 && k == 0) || (k == ch.mov.1 && k == last);
            let kind = if k > ch.mov.0 && k < ch.mov.1 {
                StepKind::Wall
            } else if boundary {
                StepKind::Fibration
            } else {
                StepKind::Divisorial
            };
            let class = (kind == StepKind::Wall).then(|| {
                if sigma.is_zero() {
                    WallClass::Flop
                } else if sigma.is_positive() {
                    WallClass::Flip
                } else {
                    WallClass::Antiflip
                }
            });
            Ok(LinkStep {
                kind,
                ray: k,
                on_ray: ray.vars.clone(),
                multiples: integral_weights(&ray.multiples)?.0,
                basis_change: wall_basis(&ray.dir),
                signature,
                sigma,
                class,
                positive,
                negative,
                model: ample_model(t, k, bound)?,
                annotation: None,
            })
        })
        .collect()
}

/// Text transcript of a link.
pub fn link_transcript(t: &Rank2Toric, steps: &[LinkStep]) -> String {
    let mut s = String::new();
    s.push_str(&t.table_text());
    for (i, st) in steps.iter().enumerate() {
        let _ = writeln!(s, "{}. {}", i + 1, st.render());
    }
    s
}

/// Weights `e_v` of the weighted blowup at the divisorial step contracting
/// `V(exceptional)`.
pub fn pullback_weights(t: &Rank2Toric, exceptional: &str) -> Result<Vec<Rat>> {
    let c = t.var(exceptional)?;
    let ch = t.chambers()?;
    let last = ch.rays.len() - 1;
    let k = if ch.mov.0 == 1 && ch.rays[0].vars == [c] {
        1
    } else if ch.mov.1 + 1 == last && ch.rays[last].vars == [c] {
        ch.mov.1
    } else {
        return Err(Error::Input(format!("`{exceptional}` is not contracted at either end of the link")));
    };
    let rho = &ch.rays[k].dir;
    let lc = side(rho, t.column(c));
    Ok((0..t.len())
        .map(|v| if v == c { Rat::zero() } else { -side(rho, t.column(v)) / &lc })
        .collect())
}

#[derive(Clone, Debug)]
pub struct StrictGenerator {
    pub original: Poly,
    pub transform: Poly,
    /// Power of the exceptional variable divided out.
    pub order: u64,
}

/// Strict transforms of `gens` under the blowup contracting `V(exceptional)`.
/// Variables of `t` get their pullback weights, `params` the given weights and
/// every other symbol weight zero.
pub fn strict_transform(
    t: &Rank2Toric,
    gens: &[Poly],
    exceptional: &str,
    params: &[(&str, u32)],
) -> Result<Vec<StrictGenerator>> {
    let e = pullback_weights(t, exceptional)?;
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let table = if first.table().index_of(exceptional).is_some() {
        first.table().clone()
    } else {
        first.table().extended(&[exceptional])?
    };
    let mut w = vec![0u32; table.len()];
    for (i, name) in t.names().iter().enumerate() {
        if let Some(j) = table.index_of(name) {
            let k = &e[i];
            if !k.is_integer() || k.is_negative() {
                return Err(Error::Precondition(format!(
                    "pullback weight {} of `{name}` is not a nonnegative integer",
                    rat::render(k)
                )));
            }
            w[j] = k.to_integer().to_u32().ok_or_else(|| Error::Resource("pullback weight too large".into()))?;
        }
    }
    for (name, k) in params {
        if let Some(j) = table.index_of(name) {
            w[j] = *k;
        }
    }
    let u = table.var(exceptional)?;
    gens.iter()
        .map(|g| {
            let ge = g.embed(&table)?;
            let (transform, order) = pullback_chart(&ge, &w, u)?;
            Ok(StrictGenerator { original: g.clone(), transform, order })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointCount {
    Finite(u32),
    Infinite,
    /// The equations are not of a shape the counter handles.
    NotCounted,
}

impl fmt::Display for PointCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointCount::Finite(1) => f.write_str("1 point"),
            PointCount::Finite(k) => write!(f, "{k} points"),
            PointCount::Infinite => f.write_str("infinitely many points"),
            PointCount::NotCounted => f.write_str("not counted"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WallRestriction {
    /// Nonzero equations after setting the variables contracted before the wall to zero.
    pub equations: Vec<Poly>,
    /// Variables on the ray with their weights.
    pub space: Vec<(String, u64)>,
    /// True when a variable contracted after the wall survives.
    pub degenerate: bool,
    pub points: PointCount,
}

impl WallRestriction {
    pub fn render(&self) -> String {
        let eqs: Vec<String> = self.equations.iter().map(|p| p.to_string()).collect();
        let (vars, ws): (Vec<&str>, Vec<String>) =
            self.space.iter().map(|(n, k)| (n.as_str(), k.to_string())).unzip();
        format!(
            "V({}) in ℙ({})[{}]: {}{}",
            eqs.join(", "),
            ws.join(", "),
            vars.join(", "),
            self.points,
            if self.degenerate { " (degenerate)" } else { "" }
        )
    }
}

/// The base of the exceptional locus of a wall on the subvariety cut out by `gens`.
pub fn restrict_wall(step: &LinkStep, gens: &[Poly]) -> Result<WallRestriction> {
    let names = &step.model.names;
    let Some(first) = gens.first() else {
        return Err(Error::Input("no equations to restrict".into()));
    };
    let table = first.table().clone();
    let zero: Vec<(usize, Rat)> = step
        .negative
        .iter()
        .filter_map(|&v| table.index_of(&names[v]))
        .map(|j| (j, Rat::zero()))
        .collect();
    let mut equations: Vec<Poly> = Vec::new();
    for g in gens {
        let r = g.embed(&table)?.evaluate(&zero);
        if !r.is_zero() && !equations.contains(&r) {
            equations.push(r);
        }
    }
    let positive: Vec<usize> = step.positive.iter().filter_map(|&v| table.index_of(&names[v])).collect();
    let degenerate = equations.iter().any(|p| positive.iter().any(|&j| p.contains_var(j)));
    let space: Vec<(String, u64)> = step
        .on_ray
        .iter()
        .zip(&step.multiples)
        .map(|(&v, k)| (names[v].clone(), *k))
        .collect();
    let points = if degenerate { PointCount::NotCounted } else { count_points(&table, &space, &equations)? };
    Ok(WallRestriction { equations, space, degenerate, points })
}

fn count_points(table: &std::sync::Arc<VarTable>, space: &[(String, u64)], eqs: &[Poly]) -> Result<PointCount> {
    let on: Vec<usize> = space.iter().filter_map(|(n, _)| table.index_of(n)).collect();
    if on.len() != space.len() || eqs.iter().any(|p| p.vars().iter().any(|v| !on.contains(v))) {
        return Ok(PointCount::NotCounted);
    }
    if eqs.iter().any(|p| p.is_constant()) {
        return Ok(PointCount::Finite(0));
    }
    let ones: Vec<usize> = on.iter().zip(space).filter(|(_, (_, k))| *k == 1).map(|(&v, _)| v).collect();
    let others: Vec<usize> = on.iter().zip(space).filter(|(_, (_, k))| *k != 1).map(|(&v, _)| v).collect();
    if ones.len() != 2 || others.len() > 1 {
        return Ok(PointCount::NotCounted);
    }
    let bf = BinaryForm::new(ones[0], ones[1]);
    let count = |o: Option<u32>| o.map_or(PointCount::Infinite, PointCount::Finite);
    let Some(&a) = others.first() else {
        let g = eqs.iter().skip(1).try_fold(eqs[0].clone(), |g, p| bf.gcd(&g, p))?;
        return Ok(count(bf.distinct_roots(&g)?));
    };
    let (free, with): (Vec<&Poly>, Vec<&Poly>) = eqs.iter().partition(|p| !p.contains_var(a));
    let quad = |p: &Poly| -> Option<Poly> {
        let c = p.coeff(a, 2);
        (p.degree_in(a) == Some(2) && p.coeff(a, 1).is_zero() && c.is_constant())
            .then(|| p.coeff(a, 0).scale(&(-Rat::one() / c.constant_term())))
    };
    match (free.as_slice(), with.as_slice()) {
        ([], []) => Ok(PointCount::Infinite),
        ([p], []) => {
            if bf.degree(p)? == Some(0) {
                Ok(PointCount::Finite(0))
            } else {
                Ok(PointCount::Infinite)
            }
        }
        ([p], [q]) => match quad(q) {
            Some(d) => Ok(count(crate::sds::form_double_cover_points(&bf, p, &d)?)),
            None => Ok(PointCount::NotCounted),
        },
        ([], [p, q]) => {
            let (lin, qd) = if p.degree_in(a) == Some(1) { (p, q) } else { (q, p) };
            match (lin.degree_in(a), quad(qd)) {
                (Some(1), Some(d)) => Ok(count(crate::sds::linear_double_cover_points(
                    &bf,
                    &lin.coeff(a, 1),
                    &lin.coeff(a, 0),
                    &d,
                )?)),
                _ => Ok(PointCount::NotCounted),
            }
        }
        _ => Ok(PointCount::NotCounted),
    }
}

/// A local check of a weighted blowup: set some variables to one, solve the
/// remaining linear equations, and test the last equation as a Kawakita blowup.
#[derive(Clone, Debug)]
pub struct ChartCheck {
    pub label: String,
    pub set_one: Vec<String>,
    /// Generator index and the variable it is solved for, in order.
    pub eliminate: Vec<(usize, String)>,
    pub hypersurface: usize,
    pub coords: [String; 4],
    pub kw: KawakitaWeights,
}

#[derive(Clone, Debug)]
pub struct ChartOutcome {
    pub label: String,
    /// Solved variables with their truncated power series.
    pub solved: Vec<(String, Poly)>,
    /// The hypersurface up to weight `r1 + r2`.
    pub equation: Poly,
    pub verdict: KawakitaVerdict,
}

impl ChartOutcome {
    pub fn passed(&self) -> bool {
        self.verdict.passed
    }
}

/// Runs a chart check; `weights` covers the whole table of `gens`.
pub fn chart_check(gens: &[Poly], weights: &[u32], spec: &ChartCheck) -> Result<ChartOutcome> {
    let Some(first) = gens.first() else {
        return Err(Error::Input("no equations for the chart".into()));
    };
    let table = first.table().clone();
    if weights.len() != table.len() {
        return Err(Error::Input(format!("{} weights for {} symbols", weights.len(), table.len())));
    }
    let n = u64::from(spec.kw.r1 + spec.kw.r2);
    let ones: Vec<(usize, Rat)> = spec
        .set_one
        .iter()
        .map(|s| Ok((table.var(s)?, Rat::one())))
        .collect::<Result<_>>()?;
    let coords: Vec<usize> = spec.coords.iter().map(|s| table.var(s)).collect::<Result<_>>()?;
    let coords: [usize; 4] = [coords[0], coords[1], coords[2], coords[3]];
    for (c, k) in coords.iter().zip(spec.kw.weights()) {
        if weights[*c] != k {
            return Err(Error::Precondition(format!(
                "`{}` has weight {} but the blowup weights it {k}",
                table.name(*c),
                weights[*c]
            )));
        }
    }
    let mut gs: Vec<Poly> = gens
        .iter()
        .map(|g| Ok(g.embed(&table)?.evaluate(&ones)))
        .collect::<Result<_>>()?;
    let mut graded = true;
    let mut solved = Vec::new();
    for (gi, name) in &spec.eliminate {
        let v = table.var(name)?;
        let g = gs
            .get(*gi)
            .ok_or_else(|| Error::Input(format!("no generator {gi}")))?
            .clone();
        if g.degree_in(v) != Some(1) {
            return Err(Error::Precondition(format!("generator {gi} is not linear in `{name}`")));
        }
        let c = g.coeff(v, 1);
        let rest = g.coeff(v, 0);
        let c0 = c.constant_term();
        if c0.is_zero() {
            return Err(Error::Precondition(format!("the coefficient of `{name}` vanishes at the origin")));
        }
        let inv = Rat::one() / &c0;
        let q = (&c - &Poly::constant(&table, c0.clone())).scale(&-&inv);
        if weight(&q, weights) == Weight::Finite(0) {
            return Err(Error::Precondition(format!("the coefficient of `{name}` has a weight-zero part")));
        }
        let mut series = Poly::one(&table);
        let mut term = Poly::one(&table);
        loop {
            term = (&term * &q).truncate_weighted(weights, n);
            if term.is_zero() {
                break;
            }
            series = &series + &term;
        }
        let value = (&rest * &series).scale(&-&inv).truncate_weighted(weights, n);
        graded &= weight(&value, weights) >= Weight::Finite(u64::from(weights[v]));
        gs = gs.iter().map(|h| h.substitute(&[(v, value.clone())])).collect::<Result<_>>()?;
        if graded {
            gs[spec.hypersurface] = gs[spec.hypersurface].truncate_weighted(weights, n);
        }
        solved.push((name.clone(), value));
    }
    let equation = gs
        .get(spec.hypersurface)
        .ok_or_else(|| Error::Input(format!("no generator {}", spec.hypersurface)))?
        .truncate_weighted(weights, n);
    let params: Vec<(usize, u32)> = (0..table.len())
        .filter(|i| !coords.contains(i) && weights[*i] > 0)
        .map(|i| (i, weights[i]))
        .collect();
    let verdict = kawakita_check(&equation, &spec.kw, coords, &params);
    Ok(ChartOutcome { label: spec.label.clone(), solved, equation, verdict })
}
