//! The links from sextic double solids with a cA_n point: toric data,
//! equations, normalizing basis changes, strict transforms and local charts.

use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use super::link::{
    bidegree, chart_check, link_transcript, pullback_weights, restrict_wall, strict_transform, walk_link_on,
};
use super::{int_matrix, normalize, ChartCheck, LinkStep, PointCount, Rank2Toric, DEFAULT_EXPONENT_BOUND};
use crate::error::{Error, Result};
use crate::poly::{parse, rat, Poly, Rat, VarTable};
use crate::sds::FamilyId;
use crate::singularity::KawakitaWeights;

/// A basis change `M` applied to a table, with the expected result.
#[derive(Clone, Debug)]
pub struct Display {
    pub matrix: [[i64; 2]; 2],
    /// Index of the display whose result is transformed; `None` for the first table.
    pub from: Option<usize>,
    /// Bar position of the transformed table when it differs from the source.
    pub wall: Option<usize>,
    pub expected: [&'static [i64]; 2],
}

#[derive(Clone, Debug)]
pub struct ChartData {
    pub label: &'static str,
    pub exceptional: &'static str,
    /// Work on the strict transforms rather than the original equations.
    pub strict: bool,
    pub set_one: &'static [&'static str],
    pub eliminate: &'static [(usize, &'static str)],
    pub hypersurface: usize,
    pub coords: [&'static str; 4],
    pub kw: (u32, u32, u32),
    /// Specialization of parameters made before the chart is computed.
    pub instance: &'static [(&'static str, &'static str)],
    pub expected: Option<&'static str>,
}

/// The base of the flopping locus at the wall through `on_ray`.
#[derive(Clone, Debug)]
pub struct WallCheck {
    pub on_ray: &'static str,
    pub equations: &'static [&'static str],
    /// Values making the base finite.
    pub instance: &'static [(&'static str, &'static str)],
    pub points: u32,
}

#[derive(Clone, Debug)]
pub struct LinkEntry {
    pub name: &'static str,
    pub family: &'static str,
    pub names: &'static [&'static str],
    pub rows: [&'static [i64]; 2],
    pub wall: usize,
    pub generators: &'static [&'static str],
    /// Further generators of the ideal upstairs, with forms evaluated at `t ↦ u·t`.
    pub extra: &'static [&'static str],
    /// Forms in `y, z, t` of the given degree, expanded as `Σ t^l F_l`.
    pub forms: &'static [(&'static str, u32)],
    /// Forms in `y, z` of the given degree.
    pub params: &'static [(&'static str, u32)],
    /// Division orders of the generators under the blowup contracting `V(u)`.
    pub orders: &'static [u64],
    /// Expected strict transforms, with forms evaluated at `t ↦ u·t`.
    pub strict: &'static [(usize, &'static str)],
    pub displays: &'static [Display],
    pub charts: &'static [ChartData],
    pub wall_check: Option<WallCheck>,
}

impl LinkEntry {
    pub fn family_id(&self) -> FamilyId {
        self.family.parse().expect("static family ids parse")
    }

    pub fn toric(&self) -> Result<Rank2Toric> {
        Rank2Toric::from_ints(self.names, self.rows, self.wall)
    }

    fn coefficient_names(&self) -> Vec<(String, u32)> {
        self.forms
            .iter()
            .flat_map(|(f, d)| (0..=*d).map(move |l| (format!("{f}_{l}"), d - l)))
            .collect()
    }

    /// Toric variables, parameters, forms and the coefficients of the forms.
    pub fn table(&self) -> Result<Arc<VarTable>> {
        let mut names: Vec<String> = self.names.iter().map(|s| s.to_string()).collect();
        names.extend(self.params.iter().map(|(p, _)| p.to_string()));
        names.extend(self.forms.iter().map(|(f, _)| f.to_string()));
        names.extend(self.coefficient_names().into_iter().map(|(n, _)| n));
        VarTable::new(&names)
    }

    fn expand(&self, text: &str, table: &Arc<VarTable>, tval: &str) -> Result<Poly> {
        let p = parse(text, table)?;
        let tv = parse(tval, table)?;
        let assign = self
            .forms
            .iter()
            .map(|(f, d)| {
                let mut s = Poly::zero(table);
                for l in 0..=*d {
                    s = &s + &(&tv.pow(l) * &Poly::var_named(table, &format!("{f}_{l}"))?);
                }
                Ok((table.var(f)?, s))
            })
            .collect::<Result<Vec<_>>>()?;
        p.substitute(&assign)
    }

    /// Generators of the ideal with the forms expanded.
    pub fn ideal(&self) -> Result<Vec<Poly>> {
        let table = self.table()?;
        self.generators.iter().map(|g| self.expand(g, &table, "t")).collect()
    }

    /// Weights of parameters and form coefficients when `y` and `z` have weight `ey`.
    pub fn param_weights(&self, ey: u32) -> Vec<(String, u32)> {
        let mut out: Vec<(String, u32)> = self.params.iter().map(|(p, d)| (p.to_string(), d * ey)).collect();
        out.extend(self.coefficient_names().into_iter().map(|(n, d)| (n, d * ey)));
        out
    }

    /// Full weight vector over `table()` for the blowup contracting `V(exceptional)`.
    pub fn weights(&self, exceptional: &str) -> Result<Vec<u32>> {
        let t = self.toric()?;
        let e = pullback_weights(&t, exceptional)?;
        let table = self.table()?;
        let mut w = vec![0u32; table.len()];
        for (i, k) in e.iter().enumerate() {
            if k.is_integer() && !k.is_negative() {
                w[i] = k.to_integer().to_u32().unwrap_or(0);
            }
        }
        let ey = w[t.var("y")?];
        for (n, k) in self.param_weights(ey) {
            w[table.var(&n)?] = k;
        }
        Ok(w)
    }

    fn chart(&self, c: &ChartData) -> Result<ChartCheck> {
        Ok(ChartCheck {
            label: c.label.to_string(),
            set_one: c.set_one.iter().map(|s| s.to_string()).collect(),
            eliminate: c.eliminate.iter().map(|(i, v)| (*i, v.to_string())).collect(),
            hypersurface: c.hypersurface,
            coords: c.coords.map(String::from),
            kw: match c.kw {
                (1, 1, 1) => KawakitaWeights { r1: 1, r2: 1, a: 1 },
                (r1, r2, a) => KawakitaWeights::new(r1, r2, a)?,
            },
        })
    }
}

#[derive(Clone, Debug)]
pub struct ReplayCheck {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Replay {
    pub name: String,
    pub toric: Rank2Toric,
    pub steps: Vec<LinkStep>,
    pub checks: Vec<ReplayCheck>,
}

impl Replay {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}\n{}", self.name, link_transcript(&self.toric, &self.steps));
        for c in &self.checks {
            s.push_str(&format!("[{}] {}: {}\n", if c.passed { "pass" } else { "FAIL" }, c.label, c.detail));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "steps": self.steps.iter().map(LinkStep::to_json).collect::<Vec<_>>(),
            "checks": self.checks.iter().map(|c| json!({
                "label": c.label,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

fn rows_text(r: &[Vec<i64>; 2]) -> String {
    let f = |v: &Vec<i64>| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
    format!("({} / {})", f(&r[0]), f(&r[1]))
}

fn same_set(a: &[Poly], b: &[Poly]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| q == p || *q == -p))
}

/// Rebuilds a link from the catalog and checks every recorded value.
pub fn replay(e: &LinkEntry) -> Result<Replay> {
    let t = e.toric()?;
    let mut checks = Vec::new();
    let mut push = |label: String, passed: bool, detail: String| checks.push(ReplayCheck { label, passed, detail });

    let mut results: Vec<Rank2Toric> = Vec::new();
    for (i, d) in e.displays.iter().enumerate() {
        let src = match d.from {
            Some(j) => results
                .get(j)
                .cloned()
                .ok_or_else(|| Error::Input(format!("display {i} refers to display {j}")))?,
            None => t.clone(),
        };
        let src = match d.wall {
            Some(w) => src.with_wall(w)?,
            None => src,
        };
        let r = normalize(&src, &int_matrix(d.matrix))?;
        let got = r.int_rows();
        let want = [d.expected[0].to_vec(), d.expected[1].to_vec()];
        let m = d.matrix;
        push(
            format!("basis change ({} {} / {} {})", m[0][0], m[0][1], m[1][0], m[1][1]),
            got.as_ref() == Some(&want),
            got.as_ref().map_or("rational entries".into(), rows_text),
        );
        results.push(r);
    }

    let ideal = e.ideal()?;
    let table = e.table()?;
    let w_u = e.weights("u")?;
    let params: Vec<(String, u32)> = table.names().iter().cloned().zip(w_u.iter().copied()).skip(t.len()).collect();
    let params_ref: Vec<(&str, u32)> = params.iter().map(|(n, k)| (n.as_str(), *k)).collect();
    let strict = strict_transform(&t, &ideal, "u", &params_ref)?;
    let orders: Vec<u64> = strict.iter().map(|s| s.order).collect();
    push(
        "division orders".into(),
        orders == e.orders,
        format!("{orders:?}"),
    );
    for (i, text) in e.strict {
        let want = e.expand(text, &table, "u*t")?;
        let got = &strict[*i].transform;
        push(format!("strict transform {i}"), *got == want, got.to_string());
    }
    let mut transforms: Vec<Poly> = strict.iter().map(|s| s.transform.clone()).collect();
    for x in e.extra {
        transforms.push(e.expand(x, &table, "u*t")?);
    }
    let y = t.column(t.var("y")?).clone();
    let extra: Vec<(String, [Rat; 2])> = e
        .param_weights(1)
        .into_iter()
        .map(|(n, d)| {
            let k = rat::int(i64::from(d));
            (n, [&k * &y[0], &k * &y[1]])
        })
        .collect();
    let degrees: Vec<[Rat; 2]> = if e.extra.is_empty() {
        transforms.iter().map(|g| bidegree(&t, g, &extra)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let mut steps = walk_link_on(&t, DEFAULT_EXPONENT_BOUND, &degrees)?;

    for c in e.charts {
        let gens = if c.strict { &transforms } else { &ideal };
        let w = e.weights(c.exceptional)?;
        let assign: Vec<(usize, Poly)> = c
            .instance
            .iter()
            .map(|(n, v)| Ok((table.var(n)?, parse(v, &table)?)))
            .collect::<Result<_>>()?;
        let gens: Vec<Poly> = gens.iter().map(|g| g.substitute(&assign)).collect::<Result<_>>()?;
        let out = chart_check(&gens, &w, &e.chart(c)?)?;
        let mut ok = out.passed();
        let mut detail = format!("weight {} (expected {})", out.verdict.weight, out.verdict.expected);
        if let Some(x) = c.expected {
            let want = e.expand(x, &table, "t")?;
            let same = out.equation == want.truncate_weighted(&w, out.verdict.expected);
            ok &= same;
            if !same {
                detail.push_str(&format!("; equation {}", out.equation));
            }
        }
        push(format!("chart {}", c.label), ok, detail);
    }

    if let Some(wc) = &e.wall_check {
        let ch = t.chambers()?;
        let k = ch.ray_of(t.var(wc.on_ray)?);
        let si = steps
            .iter()
            .position(|s| s.ray == k)
            .ok_or_else(|| Error::Input(format!("no step at the ray of `{}`", wc.on_ray)))?;
        let r = restrict_wall(&steps[si], &transforms)?;
        let want: Vec<Poly> = wc.equations.iter().map(|s| parse(s, &table)).collect::<Result<_>>()?;
        push(
            "flopping locus".into(),
            same_set(&r.equations, &want) && !r.degenerate,
            r.render(),
        );
        let assign: Vec<(usize, Poly)> = wc
            .instance
            .iter()
            .map(|(n, v)| Ok((table.var(n)?, parse(v, &table)?)))
            .collect::<Result<_>>()?;
        let concrete: Vec<Poly> = transforms.iter().map(|g| g.substitute(&assign)).collect::<Result<_>>()?;
        let rc = restrict_wall(&steps[si], &concrete)?;
        push(
            format!("flopping locus is {} point{}", wc.points, if wc.points == 1 { "" } else { "s" }),
            rc.points == PointCount::Finite(wc.points),
            rc.render(),
        );
        let base = r.equations.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        steps[si].annotation = match rc.points {
            PointCount::Finite(0) => Some(format!("V({base}) is empty in general: an isomorphism on the subvariety")),
            PointCount::Finite(1) => Some(format!("an Atiyah flop over V({base}) in general")),
            PointCount::Finite(n) => Some(format!("{n} Atiyah flops over V({base}) in general")),
            _ => None,
        };
    }
    Ok(Replay { name: e.name.to_string(), toric: t, steps, checks })
}

const F4: &str = "-xi + 2*alpha*a_2 + 2*alpha*x*t + x^2*t^2*A_1 + x*t*B_3 + C_5";

const F5: &str = "-w^2 + x*beta*(2*b_3 - 4*beta*a_1 + 8*x*t*a_1 + x*beta) + 4*x^3*t^3*a_0 \
    + x^2*t^2*B_2 + x*t*C_4 + D_6";

const F6: &str = "alpha*(-alpha + 2*(b_3 - 4*beta*a_1 + 4*x*t*a_1 + x*beta)) \
    + 2*beta*(c_4 - beta*b_2 + 2*x*t*b_2 + 2*x*beta*a_1 + 2*beta^2*a_0 - 6*x*t*beta*a_0 + 6*x^2*t^2*a_0) \
    + x^2*t^3*B_1 + x*t^2*C_3 + t*D_5";

const F71: &str = "-w^2 + gamma^2 - 2*t*gamma*e_2 + 2*beta^2*e_2 + 2*t*beta*c_3 + 4*t*gamma*b_2 \
    - 2*beta^2*b_2 - 2*t*beta^2*b_1 + 4*x*t^2*beta*b_1 + 2*x^2*t^4*b_0 - 16*t*gamma*a_1^2 \
    + 16*beta^2*a_1^2 + 4*beta*gamma*a_1 - 8*beta^3*a_0 + 12*x*t*beta^2*a_0 + x*t^3*C_2 + t^2*D_4";

const F72: &str = "-w^2 + gamma^2 + 2*t*beta*c_3 + 4*t*gamma*b_2 - 2*beta^2*b_2 - 2*t*beta^2*b_1 \
    + 4*x*t^2*beta*b_1 + 2*x^2*t^4*b_0 - 16*t*gamma*a_1^2 + 16*beta^2*a_1^2 + 4*beta*gamma*a_1 \
    - 8*beta^3*a_0 + 12*x*t*beta^2*a_0 + x*t^3*C_2 + t^2*D_4 - 2*e_3*xi";

const F73: &str = "-w^2 + x^2*xi^2 - 2*xi*e_4 \
    + xi^2*(s_1^2 + 4*a_1*s_1 + 2*x*s_1 - 2*b_2 + 16*a_1^2 + 4*x*a_1 + 8*xi*a_0) \
    + t*(t*s_1^4 + 4*t*a_1*s_1^3 - 8*t^2*a_0*s_1^3 - 2*xi*s_1^3 + 2*t*b_2*s_1^2 - 2*t^2*b_1*s_1^2 \
    - 8*xi*a_1*s_1^2 + 24*t*xi*a_0*s_1^2 + 12*x*t^2*a_0*s_1^2 - 2*x*xi*s_1^2 + 2*t*c_3*s_1 \
    + 4*t*xi*b_1*s_1 + 4*x*t^2*b_1*s_1 - 16*xi*a_1^2*s_1 - 4*x*xi*a_1*s_1 - 24*xi^2*a_0*s_1 \
    - 24*x*t*xi*a_0*s_1 - 2*xi*c_3 - 4*x*xi*b_2 - 2*xi^2*b_1 - 4*x*t*xi*b_1 + 2*x^2*t^3*b_0 \
    + 16*x*xi*a_1^2 + 12*x*xi^2*a_0 + x*t^2*C_2 + t*D_4)";

const F8: &str = "8*beta^3*(A_0 - a_0) \
    + xi*(-xi + 2*gamma - 8*t*A_0*r_2 + 2*t*b_2 - 4*t*a_1^2 + 4*beta*a_1) \
    + t*(-16*t*beta*A_0^2*r_2 + 2*t*beta*c_2 + 4*t*gamma*b_1 - 2*beta^2*b_1 - 2*t*beta^2*b_0 \
    + 4*x*t^2*beta*b_0 - 8*t*gamma*a_0*a_1 + 8*beta^2*a_0*a_1 + 12*beta*gamma*a_0 - 2*t*gamma*B_1 \
    + 2*beta^2*B_1 + 16*t*beta^2*A_0^2 - 16*x*t^2*beta*A_0^2 - 8*beta*gamma*A_0 + x*t^3*C_1 + t^2*D_3)";

const fn phi(
    eliminate: &'static [(usize, &'static str)],
    coords: [&'static str; 4],
    kw: (u32, u32, u32),
    expected: Option<&'static str>,
) -> ChartData {
    ChartData {
        label: "x = 1 on the blowup of P_x",
        exceptional: "u",
        strict: false,
        set_one: &["x"],
        eliminate,
        hypersurface: 0,
        coords,
        kw,
        instance: &[],
        expected,
    }
}

static CATALOG: &[LinkEntry] = &[
    LinkEntry {
        name: "cA4",
        family: "4",
        names: &["u", "x", "y", "z", "alpha", "xi", "t"],
        rows: [&[0, 1, 1, 1, 3, 5, 1], &[-1, 0, 1, 1, 3, 6, 2]],
        wall: 2,
        generators: &[F4, "-x*xi + alpha^2 - D_6"],
        extra: &[],
        forms: &[("A_1", 1), ("B_3", 3), ("C_5", 5), ("D_6", 6)],
        params: &[("a_2", 2)],
        orders: &[5, 6],
        strict: &[
            (0, "-u*xi + 2*alpha*a_2 + 2*alpha*x*t + x^2*t^2*A_1 + x*t*B_3 + C_5"),
            (1, "-x*xi + alpha^2 - D_6"),
        ],
        displays: &[
            Display {
                matrix: [[1, 0], [-1, 1]],
                from: None,
                wall: None,
                expected: [&[0, 1, 1, 1, 3, 5, 1], &[-1, -1, 0, 0, 0, 1, 1]],
            },
            Display {
                matrix: [[6, -5], [2, -1]],
                from: None,
                wall: None,
                expected: [&[5, 6, 1, 1, 3, 0, -4], &[1, 2, 1, 1, 3, 4, 0]],
            },
        ],
        charts: &[phi(
            &[(1, "xi")],
            ["alpha", "t", "y", "z"],
            (3, 2, 1),
            Some("-alpha^2 + 2*alpha*a_2 + 2*alpha*t + t^2*A_1 + t*B_3 + C_5 + D_6"),
        )],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["2*alpha*a_2 + C_5_0", "alpha^2 - D_6_0"],
            instance: &[("a_2", "y*z"), ("C_5_0", "y^5 + z^5"), ("D_6_0", "y^6 + 2*z^6 + y^3*z^3")],
            points: 10,
        }),
    },
    LinkEntry {
        name: "cA5",
        family: "5",
        names: &["u", "x", "y", "z", "w", "beta", "t"],
        rows: [&[0, 1, 1, 1, 3, 2, 1], &[-1, 0, 1, 1, 3, 3, 2]],
        wall: 2,
        generators: &[F5, "-beta + x*t + a_2"],
        extra: &[],
        forms: &[("B_2", 2), ("C_4", 4), ("D_6", 6)],
        params: &[("a_0", 0), ("a_1", 1), ("a_2", 2), ("b_3", 3)],
        orders: &[6, 2],
        strict: &[(1, "-u*beta + x*t + a_2")],
        displays: &[
            Display {
                matrix: [[1, 0], [-1, 1]],
                from: None,
                wall: None,
                expected: [&[0, 1, 1, 1, 3, 2, 1], &[-1, -1, 0, 0, 0, 1, 1]],
            },
            Display {
                matrix: [[3, -2], [2, -1]],
                from: None,
                wall: None,
                expected: [&[2, 3, 1, 1, 3, 0, -1], &[1, 2, 1, 1, 3, 1, 0]],
            },
        ],
        charts: &[
            phi(&[(1, "t")], ["w", "beta", "y", "z"], (3, 3, 1), None),
            ChartData {
                label: "t = beta = 1 on the far side",
                exceptional: "t",
                strict: true,
                set_one: &["t", "beta"],
                eliminate: &[(1, "u")],
                hypersurface: 0,
                coords: ["x", "w", "y", "z"],
                kw: (3, 3, 1),
                instance: &[],
                expected: None,
            },
        ],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["a_2", "-w^2 + D_6_0"],
            instance: &[("a_2", "y*z"), ("D_6_0", "y^6 + z^6")],
            points: 4,
        }),
    },
    LinkEntry {
        name: "cA6",
        family: "6",
        names: &["u", "x", "y", "z", "alpha", "beta", "t"],
        rows: [&[0, 1, 1, 1, 3, 2, 1], &[-1, 0, 1, 1, 4, 3, 2]],
        wall: 2,
        generators: &[F6, "-beta + x*t + a_2"],
        extra: &[],
        forms: &[("B_1", 1), ("C_3", 3), ("D_5", 5)],
        params: &[("a_0", 0), ("a_1", 1), ("a_2", 2), ("b_2", 2), ("b_3", 3), ("c_4", 4)],
        orders: &[7, 2],
        strict: &[(1, "-u*beta + x*t + a_2")],
        displays: &[
            Display {
                matrix: [[4, -3], [-1, 1]],
                from: None,
                wall: Some(4),
                expected: [&[3, 4, 1, 1, 0, -1, -2], &[-1, -1, 0, 0, 1, 1, 1]],
            },
            Display {
                matrix: [[3, -2], [2, -1]],
                from: None,
                wall: None,
                expected: [&[2, 3, 1, 1, 1, 0, -1], &[1, 2, 1, 1, 2, 1, 0]],
            },
        ],
        charts: &[
            phi(&[(1, "t")], ["alpha", "beta", "y", "z"], (4, 3, 1), None),
            ChartData {
                label: "t = beta = 1 on the far side",
                exceptional: "t",
                strict: true,
                set_one: &["t", "beta"],
                eliminate: &[(1, "u")],
                hypersurface: 0,
                coords: ["x", "alpha", "y", "z"],
                kw: (3, 1, 1),
                instance: &[],
                expected: None,
            },
        ],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["a_2"],
            instance: &[("a_2", "y*z")],
            points: 2,
        }),
    },
    LinkEntry {
        name: "cA7-1",
        family: "7.1",
        names: &["u", "x", "y", "z", "w", "gamma", "beta", "t"],
        rows: [&[0, 1, 1, 1, 3, 3, 2, 1], &[-1, 0, 1, 1, 4, 4, 3, 2]],
        wall: 2,
        generators: &[F71, "beta - x*t - r_2", "gamma - x*beta - s_3"],
        extra: &[],
        forms: &[("C_2", 2), ("D_4", 4)],
        params: &[
            ("a_0", 0),
            ("a_1", 1),
            ("b_0", 0),
            ("b_1", 1),
            ("b_2", 2),
            ("c_3", 3),
            ("e_2", 2),
            ("r_2", 2),
            ("s_3", 3),
        ],
        orders: &[8, 2, 3],
        strict: &[(1, "u*beta - r_2 - x*t"), (2, "u*gamma - s_3 - x*beta")],
        displays: &[
            Display {
                matrix: [[4, -3], [-1, 1]],
                from: None,
                wall: Some(4),
                expected: [&[3, 4, 1, 1, 0, 0, -1, -2], &[-1, -1, 0, 0, 1, 1, 1, 1]],
            },
            Display {
                matrix: [[3, -2], [2, -1]],
                from: None,
                wall: None,
                expected: [&[2, 3, 1, 1, 1, 1, 0, -1], &[1, 2, 1, 1, 2, 2, 1, 0]],
            },
        ],
        charts: &[
            phi(&[(2, "beta"), (1, "t")], ["w", "gamma", "y", "z"], (4, 4, 1), None),
            ChartData {
                label: "t = beta = 1 on the far side",
                exceptional: "t",
                strict: true,
                set_one: &["t", "beta"],
                eliminate: &[(1, "x"), (2, "u")],
                hypersurface: 0,
                coords: ["w", "gamma", "y", "z"],
                kw: (1, 1, 1),
                instance: &[],
                expected: None,
            },
        ],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["r_2", "s_3"],
            instance: &[("r_2", "y^2 + z^2"), ("s_3", "y^3")],
            points: 0,
        }),
    },
    LinkEntry {
        name: "cA7-2",
        family: "7.2",
        names: &["u", "x", "y", "z", "w", "gamma", "beta", "xi", "t"],
        rows: [&[0, 1, 1, 1, 3, 3, 2, 3, 1], &[-1, 0, 1, 1, 4, 4, 3, 5, 2]],
        wall: 2,
        generators: &[
            F72,
            "beta - q_1*r_1 - x*t",
            "gamma - q_1*s_2 - x*beta",
            "-xi + t*s_2 - beta*r_1",
        ],
        extra: &["-x*xi + beta*s_2 - gamma*r_1", "-q_1*xi + t*gamma - beta^2"],
        forms: &[("C_2", 2), ("D_4", 4)],
        params: &[
            ("a_0", 0),
            ("a_1", 1),
            ("b_0", 0),
            ("b_1", 1),
            ("b_2", 2),
            ("c_3", 3),
            ("e_3", 3),
            ("q_1", 1),
            ("r_1", 1),
            ("s_2", 2),
        ],
        orders: &[8, 2, 3, 4],
        strict: &[
            (1, "u*beta - q_1*r_1 - x*t"),
            (2, "u*gamma - q_1*s_2 - x*beta"),
            (3, "-u*xi + t*s_2 - beta*r_1"),
        ],
        displays: &[
            Display {
                matrix: [[4, -3], [-1, 1]],
                from: None,
                wall: Some(4),
                expected: [&[3, 4, 1, 1, 0, 0, -1, -3, -2], &[-1, -1, 0, 0, 1, 1, 1, 2, 1]],
            },
            Display {
                matrix: [[2, 3], [1, 2]],
                from: Some(0),
                wall: None,
                expected: [&[3, 5, 2, 2, 3, 3, 1, 0, -1], &[1, 2, 1, 1, 2, 2, 1, 1, 0]],
            },
        ],
        charts: &[
            phi(&[(2, "beta"), (1, "t"), (3, "xi")], ["w", "gamma", "y", "z"], (4, 4, 1), None),
            ChartData {
                label: "t = xi = 1 on the far side, q_1 = z, r_1 = y",
                exceptional: "t",
                strict: true,
                set_one: &["t", "xi"],
                eliminate: &[(3, "u"), (4, "x"), (5, "z")],
                hypersurface: 0,
                coords: ["w", "gamma", "y", "beta"],
                kw: (3, 3, 2),
                instance: &[("q_1", "z"), ("r_1", "y")],
                expected: None,
            },
        ],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["q_1*r_1", "q_1*s_2"],
            instance: &[("q_1", "z"), ("r_1", "y"), ("s_2", "y^2 + z^2")],
            points: 1,
        }),
    },
    LinkEntry {
        name: "cA7-3",
        family: "7.3",
        names: &["u", "x", "y", "z", "w", "xi", "t"],
        rows: [&[0, 1, 1, 1, 3, 2, 1], &[-1, 0, 1, 1, 4, 4, 2]],
        wall: 2,
        generators: &[F73, "-xi + t*s_1 - q_2 - x*t"],
        extra: &[],
        forms: &[("C_2", 2), ("D_4", 4)],
        params: &[
            ("a_0", 0),
            ("a_1", 1),
            ("b_0", 0),
            ("b_1", 1),
            ("b_2", 2),
            ("c_3", 3),
            ("e_4", 4),
            ("q_2", 2),
            ("s_1", 1),
        ],
        orders: &[8, 2],
        strict: &[(1, "-u^2*xi + u*t*s_1 - q_2 - x*t")],
        displays: &[
            Display {
                matrix: [[1, -1], [0, 1]],
                from: None,
                wall: None,
                expected: [&[1, 1, 0, 0, -1, -2, -1], &[-1, 0, 1, 1, 4, 4, 2]],
            },
            Display {
                matrix: [[1, 0], [2, -1]],
                from: None,
                wall: None,
                expected: [&[0, 1, 1, 1, 3, 2, 1], &[1, 2, 1, 1, 2, 0, 0]],
            },
        ],
        charts: &[phi(&[(1, "t")], ["w", "xi", "y", "z"], (4, 4, 1), None)],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["q_2"],
            instance: &[("q_2", "y*z")],
            points: 2,
        }),
    },
    LinkEntry {
        name: "cA8",
        family: "8",
        names: &["u", "x", "y", "z", "gamma", "beta", "xi", "t"],
        rows: [&[0, 1, 1, 1, 3, 2, 3, 1], &[-1, 0, 1, 1, 4, 3, 5, 2]],
        wall: 2,
        generators: &[F8, "beta - x*t - r_2", "gamma - x*beta - s_3"],
        extra: &[],
        forms: &[("C_1", 1), ("D_3", 3)],
        params: &[
            ("A_0", 0),
            ("B_1", 1),
            ("a_0", 0),
            ("a_1", 1),
            ("b_0", 0),
            ("b_1", 1),
            ("b_2", 2),
            ("c_2", 2),
            ("r_2", 2),
            ("s_3", 3),
        ],
        orders: &[9, 2, 3],
        strict: &[(1, "u*beta - x*t - r_2"), (2, "u*gamma - x*beta - s_3")],
        displays: &[
            Display {
                matrix: [[4, -3], [3, -2]],
                from: None,
                wall: Some(4),
                expected: [&[3, 4, 1, 1, 0, -1, -3, -2], &[2, 3, 1, 1, 1, 0, -1, -1]],
            },
            Display {
                matrix: [[5, -3], [2, -1]],
                from: None,
                wall: None,
                expected: [&[3, 5, 2, 2, 3, 1, 0, -1], &[1, 2, 1, 1, 2, 1, 1, 0]],
            },
        ],
        charts: &[phi(&[(2, "beta"), (1, "t")], ["xi", "gamma", "y", "z"], (5, 4, 1), None)],
        wall_check: Some(WallCheck {
            on_ray: "y",
            equations: &["r_2", "s_3"],
            instance: &[("r_2", "y^2 + z^2"), ("s_3", "y^3")],
            points: 0,
        }),
    },
];

pub fn catalog() -> &'static [LinkEntry] {
    CATALOG
}

/// Looks up an entry by name (`cA7-2`) or family (`7.2`).
pub fn catalog_entry(key: &str) -> Result<&'static LinkEntry> {
    if let Some(e) = CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(key)) {
        return Ok(e);
    }
    let id: FamilyId = key.parse()?;
    CATALOG.iter().find(|e| e.family_id() == id).ok_or_else(|| {
        Error::Input(format!(
            "family {id} has no link in the catalog; links exist for {}",
            CATALOG.iter().map(|e| e.name).collect::<Vec<_>>().join(", ")
        ))
    })
}
