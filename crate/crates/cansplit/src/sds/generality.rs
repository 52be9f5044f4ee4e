//! Generality conditions for the families with a Sarkisov link.

use serde::Serialize;

use super::{ring, Coefficients, ConditionCheck, FamilyId};
use crate::error::Result;
use crate::poly::{BinaryForm, Poly};

#[derive(Clone, Debug, Serialize)]
pub struct GeneralityReport {
    pub family: String,
    /// False for families without a generality condition.
    pub applicable: bool,
    pub checks: Vec<ConditionCheck>,
    /// Number of points of the base of the flop, where it is finite and counted.
    pub points: Option<u32>,
    pub passed: bool,
}

fn form() -> BinaryForm {
    let t = ring().table();
    BinaryForm::new(t.var("y").unwrap(), t.var("z").unwrap())
}

fn check(label: &str, holds: bool, witness: impl FnOnce() -> String) -> ConditionCheck {
    ConditionCheck {
        label: label.to_string(),
        holds,
        witness: (!holds).then(witness),
    }
}

/// Points of `V(w^2 - d)` over the zeros of `g` in `ℙ(1,1,k)`: two over each
/// zero, one where `d` also vanishes.
fn double_cover_points(bf: &BinaryForm, g: &Poly, d: &Poly) -> Result<u32> {
    let Some(k) = bf.distinct_roots(g)? else { return Ok(0) };
    let common = if d.is_zero() {
        k
    } else {
        bf.distinct_roots(&bf.gcd(g, d)?)?.unwrap_or(0)
    };
    Ok(2 * k - common)
}

/// Counts `V(w·a + b, w^2 - d) ⊆ ℙ(1,1,k)` for forms `a, b, d` in the
/// variables of `bf`; `None` when infinite.
pub fn linear_double_cover_points(bf: &BinaryForm, a: &Poly, b: &Poly, d: &Poly) -> Result<Option<u32>> {
    let res = b.pow(2) - &(&a.pow(2) * d);
    let Some(total) = bf.distinct_roots(&res)? else { return Ok(None) };
    if a.is_zero() {
        return Ok(if b.is_zero() { None } else { Some(double_cover_points(bf, b, d)?) });
    }
    let g = bf.gcd(a, b)?;
    let on_a = if bf.degree(&g)? == Some(0) { 0 } else { bf.distinct_roots(&g)?.unwrap_or(0) };
    let over = if on_a == 0 { 0 } else { double_cover_points(bf, &g, d)? };
    Ok(Some(total - on_a + over))
}

/// Counts `V(p, w^2 - d) ⊆ ℙ(1,1,k)`; `None` when infinite.
pub fn form_double_cover_points(bf: &BinaryForm, p: &Poly, d: &Poly) -> Result<Option<u32>> {
    if p.is_zero() {
        return Ok(None);
    }
    if bf.degree(p)? == Some(0) {
        return Ok(Some(0));
    }
    Ok(Some(double_cover_points(bf, p, d)?))
}

/// Counts `V(2w a_2 + c_5, w^2 - d_6) ⊆ ℙ(1,1,3)`; `None` when infinite.
pub fn ca4_base_points(a2: &Poly, c5: &Poly, d6: &Poly) -> Result<Option<u32>> {
    linear_double_cover_points(&form(), &a2.scale(&crate::poly::rat::int(2)), c5, d6)
}

/// Counts `V(a_2, w^2 - d_6) ⊆ ℙ(1,1,3)`; `None` when infinite.
pub fn ca5_base_points(a2: &Poly, d6: &Poly) -> Result<Option<u32>> {
    form_double_cover_points(&form(), a2, d6)
}

fn two_distinct(p: &Poly) -> Result<bool> {
    Ok(form().degree(p)? == Some(2) && form().is_squarefree(p)?)
}

fn concrete(text: &str, c: &Coefficients) -> Result<Poly> {
    let p = ring().parse(text)?;
    let f = c.substitute_into(&p)?;
    let t = ring().table();
    let zero: Vec<(usize, Poly)> = f.vars().into_iter().filter(|&i| i >= 5).map(|i| (i, Poly::zero(t))).collect();
    f.substitute(&zero)
}

/// Checks the generality condition for a family with explicit coefficients;
/// missing coefficients are zero.
pub fn check_generality(id: FamilyId, c: &Coefficients) -> Result<GeneralityReport> {
    let v = |n: &str| c.value(n);
    let mut checks = Vec::new();
    let mut points = None;
    match (id.n, id.sub) {
        (4, None) => {
            points = ca4_base_points(&v("a_2"), &v("c_5"), &v("d_6"))?;
            checks.push(check("V(2*w*a_2 + c_5, w^2 - d_6) is 10 points", points == Some(10), || {
                format!("{} points", points.map_or("infinitely many".into(), |p| p.to_string()))
            }));
        }
        (5, None) => {
            points = ca5_base_points(&v("a_2"), &v("d_6"))?;
            checks.push(check("V(a_2, w^2 - d_6) is 4 points", points == Some(4), || {
                format!("{} points", points.map_or("infinitely many".into(), |p| p.to_string()))
            }));
        }
        (6, None) => {
            let k = concrete("c_4 - 2*a_1*b_3 - a_2*b_2 + 2*a_0*a_2^2 + 6*a_1^2*a_2", c)?;
            checks.push(check(
                "c_4 - 2*a_1*b_3 - a_2*b_2 + 2*a_0*a_2^2 + 6*a_1^2*a_2 is nonzero",
                !k.is_zero(),
                || "it vanishes".into(),
            ));
            let a2 = v("a_2");
            checks.push(check("V(a_2) is two distinct points", two_distinct(&a2)?, || {
                format!("a_2 = {a2}")
            }));
            let mut g = a2.clone();
            for n in ["b_3", "c_4", "d_5"] {
                if !g.is_zero() {
                    g = form().gcd(&g, &v(n))?;
                }
            }
            let free = !g.is_zero() && form().degree(&g)? == Some(0);
            checks.push(check("b_3, c_4 or d_5 is nonzero at each zero of a_2", free, || {
                format!("common factor {g}")
            }));
        }
        (7, Some(1)) => {
            let p = concrete("-e_2 + 4*a_0*r_2 + b_2 - 6*a_1^2", c)?;
            checks.push(check(
                "V(-e_2 + 4*a_0*r_2 + b_2 - 6*a_1^2) is two distinct points",
                two_distinct(&p)?,
                || format!("the form is {p}"),
            ));
        }
        (7, Some(2)) => {
            let (r1, q1) = (v("r_1"), v("q_1"));
            let coprime = !(r1.is_zero() && q1.is_zero()) && form().degree(&form().gcd(&r1, &q1)?)? == Some(0);
            checks.push(check("r_1 and q_1 are coprime", coprime, || format!("r_1 = {r1}, q_1 = {q1}")));
        }
        (7, Some(3)) => {
            let q2 = v("q_2");
            let ok = form().degree(&q2)? == Some(2) && form().is_squarefree(&q2)?;
            checks.push(check("q_2 is not a square", ok, || format!("q_2 = {q2}")));
        }
        (8, None) => {
            let d = v("a_0") - v("A_0");
            checks.push(check("a_0 differs from A_0", !d.is_zero(), || "a_0 = A_0".into()));
        }
        _ => {}
    }
    let applicable = !checks.is_empty();
    Ok(GeneralityReport {
        family: id.to_string(),
        applicable,
        passed: checks.iter().all(|k| k.holds),
        checks,
        points,
    })
}
