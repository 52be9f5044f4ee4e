//! One line per acceptance criterion. Exits nonzero when a criterion fails
//! for a reason other than a known erratum in the displayed formulas.

use std::time::{Duration, Instant};

use cansplit::poly::{linear_change, mat_det, parse, rat, weight, Matrix, VarTable, Weight};
use cansplit::sds::{
    check_extended, check_generality, family_f, param_dim, residual_h, residual_parts, ring, Coefficients, FamilyId,
};
use cansplit::singularity::{classify_can, CaIndex, GermPresentation};
use cansplit::splitting::{h_symbolic, iterated_split, split, verify_split, SplitRequest};
use cansplit::toric::{
    catalog, catalog_entry, int_matrix, normalize, replay, walk_link, Rank2Toric, StepKind, DEFAULT_EXPONENT_BOUND,
};
use cansplit::{Mono, Poly, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const QUARTIC: &str = "1/16*(16*(x^2 + y^2)*t^2 + 32*x*z^2*t - 16*y^3*t + 16*z^4 - 32*y*z^3 \
  + 8*(2*x^2 - 2*x*y + 5*y^2)*z^2 + 8*(2*x^3 - 5*x^2*y - 6*x*y^2 - 7*y^3)*z \
  + 20*x^4 + 44*x^3*y + 65*x^2*y^2 + 40*x*y^3 + 41*y^4)";

struct Outcome {
    passed: bool,
    detail: String,
    /// Failure explained by a sign misprint in a displayed formula.
    erratum: bool,
}

type Check = fn() -> Result<Outcome, String>;

fn ok(passed: bool, detail: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome { passed, detail: detail.into(), erratum: false })
}

fn fam(s: &str) -> FamilyId {
    s.parse().expect("family id")
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn a19() -> Result<Outcome, String> {
    let table = e(VarTable::new(&["x", "y", "z", "t"]))?;
    let f = e(parse(QUARTIC, &table))?.evaluate(&[(3, rat::int(1))]);
    let h19 = e(iterated_split(&f, &[0, 1], 19))?;
    let h20 = e(iterated_split(&f, &[0, 1], 20))?;
    ok(
        h19.is_zero() && h20.render() == "z^20",
        format!("degree 19: {h19}; degree 20: {h20}"),
    )
}

fn h_formulas() -> Result<Outcome, String> {
    let (table, h) = e(h_symbolic(6))?;
    let shown = [
        "f_0_2",
        "f_0_3",
        "f_0_4 - f_1_2^2/4",
        "f_0_5 - f_1_2^2*f_2_1/4 - f_1_2*f_1_3/2",
        "f_0_6 - f_1_2^3*f_3_0/8 + f_1_2^2*f_2_2/4 - f_1_2^2*f_2_1^2/4 + f_1_2*f_1_3*f_2_1/2 - f_1_2*f_1_4/2 - f_1_3^2/4",
    ];
    let mut verbatim = Vec::new();
    for (k, s) in shown.iter().enumerate() {
        verbatim.push(h[k + 2] == e(parse(s, &table))?);
    }
    let sign = e(parse("f_1_2^2*f_2_1/2", &table))?;
    let h5_off_by_sign = h[5] == e(parse(shown[3], &table))? + sign;
    let passed = verbatim.iter().all(|&b| b);
    let marks: Vec<String> = verbatim
        .iter()
        .enumerate()
        .map(|(k, b)| format!("h_{} {}", k + 2, if *b { "ok" } else { "differs" }))
        .collect();
    let mut detail = marks.join(", ");
    if !verbatim[3] && h5_off_by_sign {
        detail.push_str(&format!("; computed h_5 = {} (sign of f_1_2^2*f_2_1/4 flipped)", h[5]));
    }
    let erratum = !passed && h5_off_by_sign && verbatim.iter().enumerate().all(|(k, &b)| b || k == 3);
    Ok(Outcome { passed, detail, erratum })
}

fn conditions() -> Result<Outcome, String> {
    let mut bad = Vec::new();
    for id in FamilyId::all() {
        let n = u64::from(id.n);
        let parts = e(residual_parts(&e(family_f(id))?, n + 1, None))?;
        if (2..=n).any(|k| !parts[k as usize].is_zero()) || parts[n as usize + 1].is_zero() {
            bad.push(id.to_string());
        }
    }
    let h7 = e(residual_h(fam("6"), 7, false))?;
    let r = ring();
    let sub = [("a_2", e(r.parse("q*r"))?), ("b_3", e(r.parse("q*s + 4*a_1*q*r"))?)];
    let sub: Vec<(&str, Poly)> = sub.iter().map(|(n, p)| (*n, p.clone())).collect();
    let h7 = e(h7.substitute_named(&sub))?;
    let shown = e(r.parse(
        "q*(r*(-12*a_0*q^2*r*s + 4*b_2*q*s - 2*b_1*q^2*r^2 + 2*c_3*q*r - 2*d_5) - s*(2*c_4 - 4*a_1*q*s))",
    ))?;
    let h7_ok = h7 == shown;
    ok(
        bad.is_empty() && h7_ok,
        format!(
            "11 families, h_2..h_n vanish{}; h_7 {}",
            if bad.is_empty() { String::new() } else { format!(" except {}", bad.join(", ")) },
            if h7_ok { "matches" } else { "differs" }
        ),
    )
}

fn dims() -> Result<Outcome, String> {
    let want = [
        ("1", 77),
        ("2", 74),
        ("3", 70),
        ("4", 65),
        ("5", 59),
        ("6", 52),
        ("7.1", 44),
        ("7.2", 44),
        ("7.3", 44),
        ("7.4", 44),
        ("8", 35),
    ];
    let mut got = Vec::new();
    for (id, _) in want {
        got.push(e(param_dim(fam(id)))?);
    }
    let passed = want.iter().zip(&got).all(|((_, w), g)| w == g);
    ok(passed, format!("{got:?}"))
}

fn extended() -> Result<Outcome, String> {
    let r = e(check_extended(9))?;
    let holds: Vec<bool> = r.identities.iter().map(|i| i.holds).collect();
    ok(
        holds.len() == 2 && holds.iter().all(|&b| b),
        format!("{} identities after condition 9: {holds:?}; ℓ = {}", holds.len(), r.curve),
    )
}

fn example_link() -> Result<Outcome, String> {
    let t = e(Rank2Toric::from_ints(
        &["u", "x", "y", "z", "alpha", "xi", "t"],
        [&[0, 1, 1, 1, 3, 5, 1], &[-1, 0, 1, 1, 3, 6, 2]],
        2,
    ))?;
    let ch = e(t.chambers())?;
    let rays: Vec<Vec<&str>> =
        ch.rays.iter().map(|r| r.vars.iter().map(|&v| t.names()[v].as_str()).collect()).collect();
    let rays_ok = rays == [vec!["u"], vec!["x"], vec!["y", "z", "alpha"], vec!["xi"], vec!["t"]]
        && ch.mov == (1, 3)
        && ch.chamber == 1;
    let steps = e(walk_link(&t, DEFAULT_EXPONENT_BOUND))?;
    let maps: Vec<Vec<String>> = steps.iter().map(|s| s.model.generator_texts()).collect();
    let kinds: Vec<StepKind> = steps.iter().map(|s| s.kind).collect();
    let models_ok = kinds == [StepKind::Divisorial, StepKind::Wall, StepKind::Divisorial]
        && maps[0] == ["x", "u*y", "u*z", "u^2*t", "u^3*alpha", "u^6*xi"]
        && maps[1] == ["y", "z", "alpha", "u*xi", "u*t", "x*xi", "x*t"]
        && steps[2].model.target.weights() == [1, 1, 1, 2, 3, 4];
    let a = e(normalize(&t, &int_matrix([[1, 0], [-1, 1]])))?.int_rows();
    let b = e(normalize(&t, &int_matrix([[6, -5], [2, -1]])))?.int_rows();
    let mats_ok = a == Some([vec![0, 1, 1, 1, 3, 5, 1], vec![-1, -1, 0, 0, 0, 1, 1]])
        && b == Some([vec![5, 6, 1, 1, 3, 0, -4], vec![1, 2, 1, 1, 3, 4, 0]]);
    ok(
        rays_ok && models_ok && mats_ok,
        format!(
            "chambers {}, models {}, matrices {}; last target {}",
            if rays_ok { "ok" } else { "differ" },
            if models_ok { "ok" } else { "differ" },
            if mats_ok { "ok" } else { "differ" },
            steps.last().map(|s| s.model.target.to_string()).unwrap_or_default()
        ),
    )
}

fn divisibility() -> Result<Outcome, String> {
    let mut orders = Vec::new();
    let mut charts = 0;
    let mut failed = Vec::new();
    for entry in catalog() {
        let r = e(replay(entry))?;
        for c in &r.checks {
            let relevant = c.label == "division orders" || c.label.starts_with("strict") || c.label.starts_with("chart");
            if relevant && !c.passed {
                failed.push(format!("{} {}", entry.name, c.label));
            }
            if c.label.starts_with("chart") && c.passed {
                charts += 1;
            }
        }
        let t = e(entry.toric())?;
        let ideal = e(entry.ideal())?;
        let params = entry.param_weights(1);
        let params: Vec<(&str, u32)> = params.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let st = e(cansplit::toric::strict_transform(&t, &ideal[..1], "u", &params))?;
        orders.push(st[0].order);
    }
    let orders_ok = orders == [5, 6, 7, 8, 8, 8, 9];
    ok(
        orders_ok && failed.is_empty(),
        format!(
            "orders u^{orders:?}; {charts} Kawakita charts pass{}",
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
        ),
    )
}

fn coeffs(pairs: &[(&str, &str)]) -> Result<Coefficients, String> {
    let mut c = Coefficients::new();
    for (k, v) in pairs {
        e(c.set(k, v))?;
    }
    Ok(c)
}

fn walls() -> Result<Outcome, String> {
    let mut notes = Vec::new();
    let mut passed = true;
    for name in ["cA4", "cA5"] {
        let r = e(replay(e(catalog_entry(name))?))?;
        for c in r.checks.iter().filter(|c| c.label.starts_with("flopping locus")) {
            passed &= c.passed;
            if c.label != "flopping locus" {
                notes.push(format!("{name} {}", c.label.trim_start_matches("flopping locus is ")));
            }
        }
    }
    let verdicts: [(&str, &[(&str, &str)], bool); 12] = [
        ("4", &[("a_2", "y*z"), ("c_5", "y^5 + z^5"), ("d_6", "y^6 + 2*z^6 + y^3*z^3")], true),
        ("4", &[("a_2", "y^2"), ("d_6", "y^6 + z^6")], false),
        ("5", &[("a_2", "y*z"), ("d_6", "y^6 + z^6")], true),
        ("5", &[("a_2", "y*z"), ("d_6", "y^6")], false),
        ("6", &[("a_2", "y*z"), ("c_4", "z^4"), ("d_5", "y^5")], true),
        ("6", &[("a_2", "y^2"), ("c_4", "z^4")], false),
        ("7.1", &[("e_2", "y*z")], true),
        ("7.1", &[("e_2", "y^2")], false),
        ("7.2", &[("r_1", "y"), ("q_1", "z")], true),
        ("7.3", &[("q_2", "y^2 + 2*y*z + z^2")], false),
        ("8", &[("a_0", "1"), ("A_0", "2")], true),
        ("8", &[("a_0", "1"), ("A_0", "1")], false),
    ];
    let mut agree = 0;
    for (id, c, want) in verdicts {
        let r = e(check_generality(fam(id), &coeffs(c)?))?;
        if r.passed == want {
            agree += 1;
        }
    }
    passed &= agree == verdicts.len();
    ok(passed, format!("{}; {agree}/{} generality verdicts as expected", notes.join(", "), verdicts.len()))
}

fn random_germ(rng: &mut ChaCha8Rng) -> Poly {
    let table = VarTable::new(&["x", "y", "z"]).expect("table");
    let mut f = Poly::var(&table, 0).pow(2);
    for _ in 0..rng.gen_range(1..=6) {
        let d = rng.gen_range(2..=5u32);
        let a = rng.gen_range(0..=d);
        let b = rng.gen_range(0..=d - a);
        let exps = [a, b, d - a - b];
        if d == 2 && exps[0] > 0 {
            continue;
        }
        let c = Rat::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
        f = f + Poly::monomial(&table, Mono(exps.to_vec().into_boxed_slice()), c);
    }
    f
}

fn random_poly(rng: &mut ChaCha8Rng, table: &std::sync::Arc<VarTable>) -> Poly {
    loop {
        let terms = (0..rng.gen_range(1..=5)).map(|_| {
            let m = Mono((0..table.len()).map(|_| rng.gen_range(0..=3)).collect::<Vec<u32>>().into_boxed_slice());
            (m, rat::int(rng.gen_range(-4..=4)))
        });
        let p = Poly::from_terms(table, terms.collect::<Vec<_>>());
        if !p.is_zero() {
            return p;
        }
    }
}

fn properties() -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut split_ok = 0;
    for _ in 0..200 {
        let f = random_germ(&mut rng);
        let n = rng.gen_range(3..=12);
        let s = e(split(&SplitRequest::new(f.clone(), 0, n)))?;
        if verify_split(&f, &s) && !s.h.contains_var(0) {
            split_ok += 1;
        }
    }
    let table = e(VarTable::new(&["x1", "x2", "x3", "x4"]))?;
    let mut weight_ok = 0;
    for _ in 0..200 {
        let p = random_poly(&mut rng, &table);
        let q = random_poly(&mut rng, &table);
        let w: Vec<u32> = (0..4).map(|_| rng.gen_range(1..=4)).collect();
        if let (Weight::Finite(a), Weight::Finite(b)) = (weight(&p, &w), weight(&q, &w)) {
            if weight(&(&p * &q), &w) == Weight::Finite(a + b) {
                weight_ok += 1;
            }
        }
    }
    let mut classify_ok = 0;
    for n in 2..=10u64 {
        let f = e(parse(&format!("x1*x2 + x3^{} + x4^{}", n + 1, n + 1), &table))?;
        if e(classify_can(&GermPresentation::new(f, 20)))?.index == CaIndex::Finite(n) {
            classify_ok += 1;
        }
    }
    let germs = [
        ("x1*x2 + x3^3 + x4^3", 2u64),
        ("x1^2 - x2^2 + x3^4 + x3*x4^4", 3),
        ("x1^2 + x2^2 + x3^5 + x4^6 + x1*x3^3", 4),
        ("x1*x2 + x3^6 + x4^6 + x1*x3^2", 5),
    ];
    let mut invariant = 0;
    for k in 0..50 {
        let (text, n) = germs[k % germs.len()];
        let m: Matrix = loop {
            let m: Matrix = (0..4).map(|_| (0..4).map(|_| rat::int(rng.gen_range(-2..=2))).collect()).collect();
            if !mat_det(&m).is_zero() {
                break m;
            }
        };
        let g = e(linear_change(&e(parse(text, &table))?, &[0, 1, 2, 3], &m))?;
        if e(classify_can(&GermPresentation::new(g, 16)))?.index == CaIndex::Finite(n) {
            invariant += 1;
        }
    }
    ok(
        split_ok == 200 && weight_ok == 200 && classify_ok == 9 && invariant == 50,
        format!(
            "split round trip {split_ok}/200, weight additivity {weight_ok}/200, normal forms {classify_ok}/9, linear changes {invariant}/50"
        ),
    )
}

fn main() {
    let criteria: [(&str, Check, u64); 9] = [
        ("A_19 quartic: iterated split gives 0 at degree 19 and z^20 at degree 20", a19, 10),
        ("symbolic h_2..h_6 against the displayed formulas", h_formulas, 5),
        ("condition pipeline: residuals vanish, displayed h_7", conditions, 300),
        ("parameter dimensions of the eleven families", dims, 1),
        ("factorizations after condition 9", extended, 5),
        ("2-ray link of the weighted example: chambers, models, basis changes", example_link, 5),
        ("division orders and Kawakita charts of the blowups", divisibility, 60),
        ("wall restrictions and generality verdicts", walls, 60),
        ("property suites", properties, 120),
    ];
    let mut unexpected = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(*limit);
        let (status, detail) = match outcome {
            Ok(o) if o.passed && !slow => ("PASS", o.detail),
            Ok(o) if o.passed => ("FAIL", format!("{}; over the {limit} s budget", o.detail)),
            Ok(o) if o.erratum => ("FAIL", format!("{}; erratum in the displayed formula", o.detail)),
            Ok(o) => {
                unexpected += 1;
                ("FAIL", o.detail)
            }
            Err(err) => {
                unexpected += 1;
                ("FAIL", format!("error: {err}"))
            }
        };
        if status == "FAIL" && slow {
            unexpected += 1;
        }
        println!("criterion {}: {status} {name} ({:.2} s): {detail}", i + 1, took.as_secs_f64());
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
