//! Membership of a concrete sextic in a family, extended conditions and
//! Jacobian values at coordinate points.

use std::sync::Arc;

use serde::Serialize;

use super::chains::COND6;
use super::{apply_chain, extended_chain, generic_f, residual_parts, ring, Coefficients, FamilyId, PARAMS};
use crate::error::Result;
use crate::poly::{rat, BinaryForm, Poly, Rat, VarTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub label: String,
    pub holds: bool,
    /// Nonzero difference or reason when the condition fails.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub family: String,
    pub conditions: Vec<ConditionCheck>,
    /// Symbols solved for while checking, such as `q_1` or `A_0`.
    pub derived: Vec<(String, String)>,
    /// `a_2 ≠ 0` or `b_3 ≠ 0`, required from cA_7 on.
    pub isolated_guard: Option<bool>,
    /// Indices `k ≤ n` with `h_k ≠ 0`.
    pub nonzero_residuals: Vec<u64>,
    pub next_residual: String,
    pub member: bool,
    /// Member with `h_{n+1} ≠ 0`, so the point is exactly cA_n.
    pub exact: bool,
}

fn concrete(text: &str, c: &Coefficients) -> Result<Poly> {
    let p = ring().parse(text)?;
    let t = ring().table();
    let assign: Vec<(usize, Poly)> = PARAMS
        .iter()
        .map(|(n, _)| (t.var(n).unwrap(), c.value(n)))
        .collect();
    p.substitute(&assign)
}

fn zero_check(label: &str, diff: Poly) -> ConditionCheck {
    ConditionCheck {
        label: label.to_string(),
        holds: diff.is_zero(),
        witness: (!diff.is_zero()).then(|| diff.render()),
    }
}

fn fail(label: &str, why: String) -> ConditionCheck {
    ConditionCheck {
        label: label.to_string(),
        holds: false,
        witness: Some(why),
    }
}

fn form() -> BinaryForm {
    let t = ring().table();
    BinaryForm::new(t.var("y").unwrap(), t.var("z").unwrap())
}

fn exact_div(a: &Poly, b: &Poly) -> Result<Option<Poly>> {
    if b.is_zero() {
        return Ok(a.is_zero().then(|| Poly::zero(a.table())));
    }
    a.divide_exact(b)
}

/// Solves condition 7 for subfamily `sub`: returns the symbols `q, r, s, e`
/// in subfamily notation, or the reason no solution exists.
fn solve_seven(c: &Coefficients, sub: u8) -> Result<std::result::Result<[(String, Poly); 4], String>> {
    let table = ring().table();
    let one = Poly::one(table);
    let a1 = c.value("a_1");
    let a2 = c.value("a_2");
    let u = c.value("b_3") - concrete("4*a_1*a_2", c)?;
    let (q, r, s) = match sub {
        1 => (one.clone(), a2.clone(), u.clone()),
        2 => {
            if a2.is_zero() && u.is_zero() {
                return Ok(Err("a_2 and b_3 both vanish".into()));
            }
            let g = form().gcd(&a2, &u)?;
            if form().degree(&g)? != Some(1) {
                return Ok(Err(format!(
                    "gcd(a_2, b_3 - 4*a_1*a_2) = {g} does not have degree 1"
                )));
            }
            let r = exact_div(&a2, &g)?.unwrap();
            let s = exact_div(&u, &g)?.unwrap();
            (g, r, s)
        }
        3 => match exact_div(&u, &a2)? {
            Some(s) if !a2.is_zero() => (a2.clone(), one.clone(), s),
            _ => return Ok(Err("a_2 does not divide b_3 - 4*a_1*a_2".into())),
        },
        _ => {
            if !a2.is_zero() {
                return Ok(Err("a_2 is nonzero".into()));
            }
            (u.clone(), Poly::zero(table), one.clone())
        }
    };
    let c4 = c.value("c_4");
    let d5 = c.value("d_5");
    let a0 = c.value("a_0");
    let b1 = c.value("b_1");
    let b2 = c.value("b_2");
    let c3 = c.value("c_3");
    let two = rat::int(2);
    let known_c4 = (&a1 * &q * &s).scale(&two) - (&a0 * &q.pow(2) * &r.pow(2)).scale(&rat::int(6))
        + (&a1.pow(2) * &q * &r).scale(&rat::int(8));
    let base_d5 = (&b2 * &q * &s).scale(&two) - (&a1.pow(2) * &q * &s).scale(&rat::int(8))
        - &b1 * &q.pow(2) * &r.pow(2)
        + &c3 * &q * &r;
    let e = if r.is_zero() {
        if c4 != known_c4 {
            return Ok(Err(format!("c_4 - 2*a_1*q*s = {}", (&c4 - &known_c4).render())));
        }
        match exact_div(&(&base_d5 - &d5), &s)? {
            Some(e) => e,
            None => return Ok(Err("s does not divide the d_5 remainder".into())),
        }
    } else {
        match exact_div(&(&c4 - &known_c4), &r)? {
            Some(e) => e,
            None => return Ok(Err("r does not divide c_4 - 2*a_1*q*s + 6*a_0*q^2*r^2 - 8*a_1^2*q*r".into())),
        }
    };
    let d5_diff = &d5 - &(&base_d5 - &e * &s);
    if !d5_diff.is_zero() {
        return Ok(Err(format!("d_5 differs by {}", d5_diff.render())));
    }
    let names: [&str; 4] = match sub {
        1 => ["q", "r_2", "s_3", "e_2"],
        2 => ["q_1", "r_1", "s_2", "e_3"],
        3 => ["q_2", "r", "s_1", "e_4"],
        _ => ["q_3", "r", "s", "e_5"],
    };
    Ok(Ok([
        (names[0].to_string(), q),
        (names[1].to_string(), r),
        (names[2].to_string(), s),
        (names[3].to_string(), e),
    ]))
}

/// Checks conditions `2, …, n` for a concrete sextic, with witnesses, and
/// the vanishing of `h_2, …, h_n`.
pub fn check_membership(c: &Coefficients, id: FamilyId) -> Result<MembershipReport> {
    let mut checks = Vec::new();
    let mut derived: Vec<(String, String)> = Vec::new();
    let n = id.n;
    if n >= 2 {
        checks.push(zero_check("2", c.value("xi_2")));
    }
    if n >= 3 {
        checks.push(zero_check("3", c.value("a_3")));
    }
    if n >= 4 {
        checks.push(zero_check("4", c.value("b_4") - concrete("a_2^2", c)?));
    }
    if n >= 5 {
        checks.push(zero_check("5", c.value("c_5") - concrete("2*a_2*b_3 - 4*a_1*a_2^2", c)?));
    }
    if n >= 6 {
        checks.push(zero_check("6", c.value("d_6") - concrete(COND6, c)?));
    }
    let mut solved = c.clone();
    if let Some(sub) = id.seven() {
        let label = format!("7.{sub}");
        match solve_seven(c, sub)? {
            Ok(vals) => {
                for (name, v) in vals {
                    if name.len() > 1 {
                        solved.insert(&name, v.clone())?;
                    }
                    derived.push((name, v.render()));
                }
                checks.push(zero_check(&label, Poly::zero(ring().table())));
            }
            Err(why) => checks.push(fail(&label, why)),
        }
    }
    if n >= 8 {
        checks.push(check_eight(&mut solved, &mut derived)?);
    }
    let guard = (n >= 7).then(|| !(c.value("a_2").is_zero() && c.value("b_3").is_zero()));
    let f = c.sextic()?;
    let parts = residual_parts(&f, u64::from(n) + 1, None)?;
    let nonzero: Vec<u64> = (2..=u64::from(n)).filter(|&k| !parts[k as usize].is_zero()).collect();
    let next = parts[usize::from(n) + 1].clone();
    let member = checks.iter().all(|k| k.holds) && guard != Some(false);
    Ok(MembershipReport {
        family: id.to_string(),
        conditions: checks,
        derived,
        isolated_guard: guard,
        nonzero_residuals: nonzero,
        next_residual: next.render(),
        member,
        exact: member && !next.is_zero(),
    })
}

fn check_eight(c: &mut Coefficients, derived: &mut Vec<(String, String)>) -> Result<ConditionCheck> {
    let Some(r2) = c.get("r_2").cloned() else {
        return Ok(fail("8", "condition 7.1 does not hold".into()));
    };
    if r2.is_zero() {
        return Ok(fail("8", "r_2 = 0".into()));
    }
    let num = concrete("e_2 - b_2 + 6*a_1^2", c)?;
    let a0_cap = match exact_div(&num, &r2.scale(&rat::int(4)))? {
        Some(q) if q.is_constant() => q,
        _ => return Ok(fail("8", format!("(e_2 - b_2 + 6*a_1^2)/(4*r_2) is not a constant: {}", num.render()))),
    };
    c.insert("A_0", a0_cap.clone())?;
    let rest = concrete(
        "c_3 - (6*a_0*s_3 - 4*A_0*s_3 + 4*a_0*a_1*r_2 - 8*A_0*a_1*r_2 + 2*a_1*b_2 - 4*a_1^3)",
        c,
    )?;
    let b1_cap = match exact_div(&rest, &r2)? {
        Some(q) => q,
        None => return Ok(fail("8", format!("r_2 does not divide {}", rest.render()))),
    };
    c.insert("B_1", b1_cap.clone())?;
    derived.push(("A_0".into(), a0_cap.render()));
    derived.push(("B_1".into(), b1_cap.render()));
    let d4 = concrete(
        "-2*s_3*B_1 + 16*r_2^2*A_0^2 - 8*b_2*r_2*A_0 + 16*a_1^2*r_2*A_0 + 4*b_1*s_3 \
         - 8*a_0*a_1*s_3 - 2*b_0*r_2^2 + 2*c_2*r_2 + b_2^2 - 4*a_1^2*b_2 + 4*a_1^4",
        c,
    )?;
    Ok(zero_check("8", c.value("d_4") - d4))
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedReport {
    pub n: u8,
    pub conditions: Vec<String>,
    pub identities: Vec<Identity>,
    /// Generators of the curve along which the sextic is singular.
    pub curve: String,
    /// The sextic lies in the square of the curve's ideal.
    pub singular_along_curve: bool,
}

pub const CURVE_FORM: &str = "s_3 + 2*a_1*r_2 + x*r_2";

/// Conditions `9, …, n` on top of family 8, with the two factorization
/// identities and the singular curve.
pub fn check_extended(n: u8) -> Result<ExtendedReport> {
    let steps = extended_chain(n)?;
    let nine = extended_chain(9)?;
    let r = ring();
    let ell = r.parse(CURVE_FORM)?;
    let pairs = [
        ("x^3*a_3 + x^2*b_4 + x*c_5 + d_6", ell.pow(2)),
        (
            "x^3*a_2 + x^2*b_3 + x*c_4 + d_5",
            &ell * &r.parse("-2*a_0*r_2 + b_2 - 2*a_1^2 + 2*x*a_1 + x^2")?,
        ),
    ];
    let mut identities = Vec::new();
    for (lhs, rhs) in pairs {
        let got = apply_chain(&r.parse(lhs)?, &nine)?;
        identities.push(Identity {
            lhs: lhs.to_string(),
            rhs: rhs.render(),
            holds: got == rhs,
        });
    }
    let f = apply_chain(&generic_f(), &steps)?;
    let singular = in_curve_square(&f)?;
    Ok(ExtendedReport {
        n,
        conditions: steps.iter().map(|s| s.label.clone()).collect(),
        identities,
        curve: format!("(w, t, {CURVE_FORM})"),
        singular_along_curve: singular,
    })
}

/// Whether `f ∈ (w, t, ℓ)^2` with `ℓ = s_3 + 2a_1r_2 + xr_2`: rewrite `s_3`
/// as `ℓ - 2a_1r_2 - xr_2` and look at the order in `w, t, ℓ`.
fn in_curve_square(f: &Poly) -> Result<bool> {
    let table = f.table().extended(&["ell"])?;
    let f = f.embed(&table)?;
    let s3 = crate::poly::parse("ell - 2*a_1*r_2 - x*r_2", &table)?;
    let g = f.substitute(&[(table.var("s_3")?, s3)])?;
    let idx = [table.var("w")?, table.var("t")?, table.var("ell")?];
    Ok(g.terms().iter().all(|(m, _)| idx.iter().map(|&i| m.exps()[i]).sum::<u32>() >= 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointJacobian {
    pub value: Poly,
    pub dx: Poly,
    pub dy: Poly,
    pub dz: Poly,
    pub dt: Poly,
}

/// `f` and its partial derivatives in `x, y, z, t` at a point `[x, y, z, t, w]`.
pub fn point_jacobian(f: &Poly, point: &[Rat; 5]) -> Result<PointJacobian> {
    let t = f.table();
    let idx = ["x", "y", "z", "t", "w"]
        .iter()
        .map(|n| t.var(n))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<(usize, Rat)> = idx.iter().copied().zip(point.iter().cloned()).collect();
    let at = |p: &Poly| p.evaluate(&values);
    Ok(PointJacobian {
        value: at(f),
        dx: at(&f.derivative(idx[0])),
        dy: at(&f.derivative(idx[1])),
        dz: at(&f.derivative(idx[2])),
        dt: at(&f.derivative(idx[3])),
    })
}

/// Replaces every parameter of degree `k` by a generic binary form
/// `Σ name_j y^(k-j) z^j` with fresh coefficient symbols.
pub fn expand_forms(p: &Poly) -> Result<Poly> {
    let src = p.table();
    let present: Vec<(&str, u32)> = PARAMS
        .iter()
        .filter(|(n, _)| src.index_of(n).is_some_and(|i| p.contains_var(i)))
        .copied()
        .collect();
    let mut fresh = Vec::new();
    for (n, d) in &present {
        fresh.extend((0..=*d).map(|j| format!("{n}_{j}")));
    }
    let table: Arc<VarTable> = src.extended(&fresh)?;
    let p = p.embed(&table)?;
    let mut assign = Vec::new();
    for (n, d) in &present {
        let text: Vec<String> = (0..=*d).map(|j| format!("{n}_{j}*y^{}*z^{j}", d - j)).collect();
        assign.push((table.var(n)?, crate::poly::parse(&text.join(" + "), &table)?));
    }
    p.substitute(&assign)
}
