//! Sextic double solids `w^2 = f_6(x, y, z, t)` with a cA_n point at
//! `P_x = [1, 0, 0, 0, 0]`: the generic equation, the condition chains cutting
//! out each family, residuals of the splitting lemma, membership and
//! generality checks.

mod chains;
mod file;
mod generality;
mod membership;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{parse, Poly, VarTable};
use crate::splitting::{split_h_parts, SplitRequest};

pub use chains::{apply_chain, chain, extended_chain, listing_chain, ConditionStep};
pub use file::{parse_family_file, Coefficients, FamilyFile};
pub use generality::{
    ca4_base_points, ca5_base_points, check_generality, form_double_cover_points, linear_double_cover_points,
    GeneralityReport,
};
pub use membership::{
    check_extended, check_membership, expand_forms, point_jacobian, ConditionCheck, ExtendedReport, MembershipReport,
    PointJacobian,
};

/// Coordinates of `ℙ(1,1,1,1,3)`.
pub const COORDS: [&str; 5] = ["x", "y", "z", "t", "w"];

/// Parameter symbols with the degree of the binary form they stand for.
pub const PARAMS: &[(&str, u32)] = &[
    ("xi_2", 2),
    ("a_0", 0),
    ("a_1", 1),
    ("a_2", 2),
    ("a_3", 3),
    ("b_0", 0),
    ("b_1", 1),
    ("b_2", 2),
    ("b_3", 3),
    ("b_4", 4),
    ("c_0", 0),
    ("c_1", 1),
    ("c_2", 2),
    ("c_3", 3),
    ("c_4", 4),
    ("c_5", 5),
    ("d_0", 0),
    ("d_1", 1),
    ("d_2", 2),
    ("d_3", 3),
    ("d_4", 4),
    ("d_5", 5),
    ("d_6", 6),
    ("q", 0),
    ("r", 0),
    ("s", 0),
    ("e", 0),
    ("q_1", 1),
    ("r_1", 1),
    ("s_2", 2),
    ("e_3", 3),
    ("q_2", 2),
    ("s_1", 1),
    ("e_4", 4),
    ("q_3", 3),
    ("e_5", 5),
    ("r_2", 2),
    ("s_3", 3),
    ("e_2", 2),
    ("A_0", 0),
    ("B_1", 1),
    ("B_0", 0),
];

/// Parameters whose degree depends on the subfamily and which never reach a
/// splitting computation.
const UNGRADED: [&str; 4] = ["q", "r", "s", "e"];

pub const GENERIC_F: &str = "-w^2 + x^4*t^2 + x^4*xi_2 \
    + x^3*(4*t^3*a_0 + 4*t^2*a_1 + 2*t*a_2 + a_3) \
    + x^2*(2*t^4*b_0 + 2*t^3*b_1 + 2*t^2*b_2 + 2*t*b_3 + b_4) \
    + x*(2*t^5*c_0 + 2*t^4*c_1 + 2*t^3*c_2 + 2*t^2*c_3 + 2*t*c_4 + c_5) \
    + t^6*d_0 + 2*t^5*d_1 + t^4*d_2 + 2*t^3*d_3 + t^2*d_4 + 2*t*d_5 + d_6";

pub struct SdsRing {
    table: Arc<VarTable>,
}

impl SdsRing {
    fn build() -> SdsRing {
        let names: Vec<&str> = COORDS.iter().copied().chain(PARAMS.iter().map(|(n, _)| *n)).collect();
        SdsRing {
            table: VarTable::new(&names).expect("static names are valid"),
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse(text, &self.table)
    }

    pub fn var(&self, name: &str) -> Poly {
        Poly::var_named(&self.table, name).expect("known symbol")
    }
}

pub fn ring() -> &'static SdsRing {
    static RING: OnceLock<SdsRing> = OnceLock::new();
    RING.get_or_init(SdsRing::build)
}

pub fn param_degree(name: &str) -> Option<u32> {
    PARAMS.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

/// The generic sextic with a double point at `P_x`, including `xi_2`.
pub fn generic_f() -> Poly {
    ring().parse(GENERIC_F).expect("static text parses")
}

/// A family of sextic double solids with a cA_n point at `P_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyId {
    pub n: u8,
    pub sub: Option<u8>,
}

impl FamilyId {
    pub fn new(n: u8, sub: Option<u8>) -> Result<FamilyId> {
        let ok = match (n, sub) {
            (1..=6, None) | (8, None) => true,
            (7, Some(1..=4)) => true,
            _ => false,
        };
        if ok {
            Ok(FamilyId { n, sub })
        } else {
            Err(Error::Input(format!(
                "no family cA_{n}{}; use 1..6, 7.1..7.4 or 8",
                sub.map(|s| format!(".{s}")).unwrap_or_default()
            )))
        }
    }

    pub fn all() -> Vec<FamilyId> {
        let mut v: Vec<FamilyId> = (1..=6).map(|n| FamilyId { n, sub: None }).collect();
        v.extend((1..=4).map(|s| FamilyId { n: 7, sub: Some(s) }));
        v.push(FamilyId { n: 8, sub: None });
        v
    }

    /// The cA_7 subfamily the chain passes through.
    pub fn seven(&self) -> Option<u8> {
        match self.n {
            7 => self.sub,
            8 => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sub {
            Some(s) => write!(f, "{}.{}", self.n, s),
            None => write!(f, "{}", self.n),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilyId> {
        let s = s.trim();
        let s = s.strip_prefix("cA").map(|r| r.trim_start_matches(['_', '-'])).unwrap_or(s);
        let bad = || Error::Input(format!("cannot read family `{s}`; expected e.g. 5, 7.2 or cA7-3"));
        let (n, sub) = match s.split_once(['.', '-']) {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, Some(b.parse().map_err(|_| bad())?)),
            None => (s.parse().map_err(|_| bad())?, None),
        };
        FamilyId::new(n, sub)
    }
}

/// The generic member of a family: the condition chain applied to the generic sextic.
pub fn family_f(id: FamilyId) -> Result<Poly> {
    apply_chain(&generic_f(), &chain(id))
}

/// Free parameters of a family, in table order.
pub fn free_params(id: FamilyId) -> Result<Vec<(&'static str, u32)>> {
    let f = family_f(id)?;
    let t = f.table();
    Ok(PARAMS
        .iter()
        .filter(|(n, _)| f.contains_var(t.index_of(n).unwrap()))
        .copied()
        .collect())
}

/// Dimension of the parameter space: each free parameter of degree `k`
/// contributes `k + 1` coefficients, less one for the monic `q_1`.
pub fn param_dim(id: FamilyId) -> Result<u64> {
    let params = free_params(id)?;
    let total: u64 = params.iter().map(|(_, d)| u64::from(*d) + 1).sum();
    let monic = params.iter().any(|(n, _)| *n == "q_1");
    Ok(total - u64::from(monic))
}

/// Weights of the grading used when splitting a sextic at `P_x`: `y, z, t, w`
/// have weight one and a parameter has the degree of its binary form.
pub fn grading(table: &VarTable) -> Result<Vec<u32>> {
    table
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "x" => Ok(0),
            "y" | "z" | "t" | "w" => Ok(1),
            n if UNGRADED.contains(&n) => Err(Error::Input(format!(
                "`{n}` has no fixed degree; specialize to a cA_7 subfamily before splitting"
            ))),
            n => param_degree(n).ok_or_else(|| Error::UnknownIdentifier(n.to_string())),
        })
        .collect()
}

/// Graded parts `h_0, …, h_k` of the residual of `f + w^2` at `x = 1`, split on `t`.
pub fn residual_parts(f: &Poly, k: u64, max_terms: Option<usize>) -> Result<Vec<Poly>> {
    let table = f.table().clone();
    let x = table.var("x")?;
    let w = table.var("w")?;
    let g = (f + &Poly::var(&table, w).pow(2)).evaluate(&[(x, crate::poly::rat::one())]);
    let t = table.var("t")?;
    let mut used = g.vars();
    if !used.contains(&t) {
        used.push(t);
        used.sort_unstable();
    }
    let names: Vec<&str> = used.iter().map(|&i| table.name(i)).collect();
    let small = VarTable::new(&names)?;
    let g = g.embed(&small)?;
    let mut req = SplitRequest::new(g, small.var("t")?, k).with_grading(grading(&small)?);
    if let Some(m) = max_terms {
        req = req.with_max_terms(m);
    }
    split_h_parts(&req)?.iter().map(|h| h.embed(&table)).collect()
}

/// `h_k` for the generic member of a family; `k` beyond `n + 2` needs `force`.
pub fn residual_h(id: FamilyId, k: u64, force: bool) -> Result<Poly> {
    if k > u64::from(id.n) + 2 && !force {
        return Err(Error::Resource(format!(
            "h_{k} for family {id} is beyond the default guard n + 2 = {}",
            id.n + 2
        )));
    }
    let parts = residual_parts(&family_f(id)?, k, None)?;
    Ok(parts[k as usize].clone())
}

/// A member of a family with the given values for some free parameters;
/// the others stay symbolic.
pub fn construct(id: FamilyId, values: &Coefficients) -> Result<Poly> {
    let free = free_params(id)?;
    for (k, _) in values.iter() {
        if !free.iter().any(|(n, _)| n == k) {
            return Err(Error::Input(format!("`{k}` is not a free parameter of family {id}")));
        }
    }
    values.substitute_into(&family_f(id)?)
}
