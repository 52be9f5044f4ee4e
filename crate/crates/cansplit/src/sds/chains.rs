//! Substitution chains cutting out each family from the generic sextic.

use super::{ring, FamilyId};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// One condition: a simultaneous substitution `symbol ↦ polynomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionStep {
    pub label: String,
    pub assignments: Vec<(String, String)>,
}

impl ConditionStep {
    fn new(label: &str, assignments: &[(&str, &str)]) -> ConditionStep {
        ConditionStep {
            label: label.to_string(),
            assignments: assignments.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    pub fn parsed(&self) -> Result<Vec<(String, Poly)>> {
        self.assignments
            .iter()
            .map(|(n, text)| Ok((n.clone(), ring().parse(text)?)))
            .collect()
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let table = p.table().clone();
        let assign = self
            .parsed()?
            .into_iter()
            .map(|(n, img)| Ok((table.var(&n)?, img.embed(&table)?)))
            .collect::<Result<Vec<_>>>()?;
        p.substitute(&assign)
    }
}

pub fn apply_chain(p: &Poly, chain: &[ConditionStep]) -> Result<Poly> {
    chain.iter().try_fold(p.clone(), |acc, s| s.apply(&acc))
}

pub const COND6: &str =
    "2*a_2*c_4 + b_3^2 - 8*a_1*a_2*b_3 - 2*a_2^2*b_2 + 4*a_0*a_2^3 + 16*a_1^2*a_2^2";

const COND7: [(&str, &str); 4] = [
    ("a_2", "q*r"),
    ("b_3", "q*s + 4*a_1*q*r"),
    ("c_4", "2*a_1*q*s - 6*a_0*q^2*r^2 + 8*a_1^2*q*r + e*r"),
    ("d_5", "2*b_2*q*s - 8*a_1^2*q*s - e*s - b_1*q^2*r^2 + c_3*q*r"),
];

const SUB7: [[(&str, &str); 4]; 4] = [
    [("q", "1"), ("r", "r_2"), ("s", "s_3"), ("e", "e_2")],
    [("q", "q_1"), ("r", "r_1"), ("s", "s_2"), ("e", "e_3")],
    [("q", "q_2"), ("r", "1"), ("s", "s_1"), ("e", "e_4")],
    [("q", "q_3"), ("r", "0"), ("s", "1"), ("e", "e_5")],
];

const COND8: [(&str, &str); 3] = [
    ("e_2", "4*A_0*r_2 + b_2 - 6*a_1^2"),
    (
        "c_3",
        "6*a_0*s_3 - 4*A_0*s_3 + 4*a_0*a_1*r_2 - 8*A_0*a_1*r_2 + B_1*r_2 + 2*a_1*b_2 - 4*a_1^3",
    ),
    (
        "d_4",
        "-2*s_3*B_1 + 16*r_2^2*A_0^2 - 8*b_2*r_2*A_0 + 16*a_1^2*r_2*A_0 + 4*b_1*s_3 \
         - 8*a_0*a_1*s_3 - 2*b_0*r_2^2 + 2*c_2*r_2 + b_2^2 - 4*a_1^2*b_2 + 4*a_1^4",
    ),
];

const COND9: [(&str, &str); 4] = [
    ("A_0", "a_0"),
    ("B_1", "b_1"),
    (
        "d_3",
        "-s_3*B_0 + 2*b_0*s_3 - 2*a_0^2*s_3 + c_1*r_2 - 4*a_0*b_1*r_2 + 16*a_0^2*a_1*r_2 \
         + b_1*b_2 - 4*a_0*a_1*b_2 - 2*a_1^2*b_1 + 8*a_0*a_1^3",
    ),
    ("c_2", "r_2*B_0 - 6*a_0^2*r_2 + 2*a_0*b_2 + 2*a_1*b_1 - 12*a_0*a_1^2"),
];

const COND10: [(&str, &str); 3] = [
    ("B_0", "b_0"),
    (
        "d_2",
        "2*c_0*r_2 - 8*a_0*b_0*r_2 + 16*a_0^3*r_2 + 2*b_0*b_2 - 4*a_0^2*b_2 + b_1^2 \
         - 8*a_0*a_1*b_1 - 4*a_1^2*b_0 + 24*a_0^2*a_1^2",
    ),
    ("c_1", "2*a_0*b_1 + 2*a_1*b_0 - 12*a_0^2*a_1"),
];

const COND11: [(&str, &str); 2] = [
    ("c_0", "2*a_0*b_0 - 4*a_0^3"),
    ("d_1", "b_0*b_1 - 2*a_0^2*b_1 - 4*a_0*a_1*b_0 + 8*a_0^3*a_1"),
];

const COND12: [(&str, &str); 1] = [("d_0", "b_0^2 - 4*a_0^2*b_0 + 4*a_0^4")];

/// Condition 7 written directly in the subfamily symbols.
fn seven(sub: u8) -> ConditionStep {
    let spec = &SUB7[usize::from(sub - 1)];
    let specialize = |text: &str| {
        let p = ring().parse(text).expect("static text parses");
        let assign: Vec<(&str, Poly)> = spec
            .iter()
            .map(|(n, v)| (*n, ring().parse(v).expect("static text parses")))
            .collect();
        p.substitute_named(&assign).expect("known symbols").render()
    };
    ConditionStep {
        label: format!("7.{sub}"),
        assignments: COND7.iter().map(|(n, v)| (n.to_string(), specialize(v))).collect(),
    }
}

/// The steps `2, …, n` defining a family, in order of application.
pub fn chain(id: FamilyId) -> Vec<ConditionStep> {
    let mut steps = Vec::new();
    let n = id.n;
    if n >= 2 {
        steps.push(ConditionStep::new("2", &[("xi_2", "0")]));
    }
    if n >= 3 {
        steps.push(ConditionStep::new("3", &[("a_3", "0")]));
    }
    if n >= 4 {
        steps.push(ConditionStep::new("4", &[("b_4", "a_2^2")]));
    }
    if n >= 5 {
        steps.push(ConditionStep::new("5", &[("c_5", "2*a_2*b_3 - 4*a_1*a_2^2")]));
    }
    if n >= 6 {
        steps.push(ConditionStep::new("6", &[("d_6", COND6)]));
    }
    if let Some(sub) = id.seven() {
        steps.push(seven(sub));
    }
    if n >= 8 {
        steps.push(ConditionStep::new("8", &COND8));
    }
    steps
}

/// The chain for family 8 followed by conditions `9, …, n`, `9 ≤ n ≤ 12`.
pub fn extended_chain(n: u8) -> Result<Vec<ConditionStep>> {
    if !(9..=12).contains(&n) {
        return Err(Error::Input(format!("extended conditions run from 9 to 12, not {n}")));
    }
    let mut steps = chain(FamilyId { n: 8, sub: None });
    let extra: [&[(&str, &str)]; 4] = [&COND9, &COND10, &COND11, &COND12];
    for (k, a) in extra.iter().enumerate().take(usize::from(n - 8)) {
        steps.push(ConditionStep::new(&(k + 9).to_string(), a));
    }
    Ok(steps)
}

/// The chain applied one symbol at a time in the nesting order of the
/// original Maxima listing, with condition 8 substituting `d_4`, then `c_3`
/// with its `e_2` form, then `e_2`.
pub fn listing_chain(id: FamilyId) -> Vec<ConditionStep> {
    let mut steps = Vec::new();
    for step in chain(id) {
        if step.label == "8" {
            steps.push(ConditionStep::new("8", &[COND8[2]]));
            steps.push(ConditionStep::new(
                "8",
                &[(
                    "c_3",
                    "r_2*B_1 - 4*s_3*A_0 + 6*a_0*s_3 + 4*a_0*a_1*r_2 - 2*a_1*e_2 + 4*a_1*b_2 - 16*a_1^3",
                )],
            ));
            steps.push(ConditionStep::new("8", &[COND8[0]]));
        } else if step.label.starts_with('7') {
            let sub = id.seven().unwrap();
            for a in COND7.iter().rev() {
                steps.push(ConditionStep::new("7", &[*a]));
            }
            let spec = &SUB7[usize::from(sub - 1)];
            for a in spec.iter().rev() {
                steps.push(ConditionStep::new(&step.label, &[*a]));
            }
        } else {
            steps.extend(step.assignments.iter().map(|(n, v)| ConditionStep {
                label: step.label.clone(),
                assignments: vec![(n.clone(), v.clone())],
            }));
        }
    }
    steps
}
