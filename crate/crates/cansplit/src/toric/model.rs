//! Ample models along a ray: the monomial map and its target.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{dir_rat, side, Chambers, Dir, Rank2Toric};
use crate::error::{Error, Result};
use crate::poly::{rat, Rat};

/// Default bound on the total exponent of a generator of the section ring.
pub const DEFAULT_EXPONENT_BOUND: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Boundary of the movable cone next to a ray holding one variable, which
    /// the model contracts.
    Divisorial { exceptional: usize },
    /// Boundary of the effective cone: projection to the variables on the ray.
    Fibration,
    /// Any other ray: generators of the section semigroup.
    Sections,
}

/// A Laurent monomial `∏ v^{e_v}` with its degree along the ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialGen {
    pub exps: Vec<Rat>,
    pub weight: u64,
}

impl MonomialGen {
    /// `lead` is rendered first when it occurs.
    pub fn render(&self, names: &[String], lead: Option<usize>) -> String {
        let mut order: Vec<usize> = Vec::new();
        if let Some(l) = lead {
            order.push(l);
        }
        order.extend((0..names.len()).filter(|&i| Some(i) != lead));
        let parts: Vec<String> = order
            .into_iter()
            .filter(|&i| !self.exps[i].is_zero())
            .map(|i| {
                let e = &self.exps[i];
                if e.is_one() {
                    names[i].clone()
                } else if e.is_integer() {
                    format!("{}^{}", names[i], e)
                } else {
                    format!("{}^{{{}}}", names[i], rat::render(e))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// The generators are variables times powers of one further variable.
    Weighted { weights: Vec<u64> },
    /// A subvariety of the weighted projective space on the generators.
    Proj { weights: Vec<u64> },
}

impl Target {
    pub fn weights(&self) -> &[u64] {
        match self {
            Target::Weighted { weights } | Target::Proj { weights } => weights,
        }
    }

    pub fn space(&self) -> String {
        let w: Vec<String> = self.weights().iter().map(|k| k.to_string()).collect();
        format!("ℙ({})", w.join(", "))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Weighted { .. } => write!(f, "{}", self.space()),
            Target::Proj { .. } => write!(f, "Proj ⊆ {}", self.space()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleModel {
    pub ray: Dir,
    pub kind: ModelKind,
    pub names: Vec<String>,
    pub generators: Vec<MonomialGen>,
    /// Factor turning degrees along the primitive ray into the target weights.
    pub scale: Rat,
    pub target: Target,
}

impl AmpleModel {
    fn lead(&self) -> Option<usize> {
        match self.kind {
            ModelKind::Divisorial { exceptional } => Some(exceptional),
            _ => None,
        }
    }

    pub fn generator_texts(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(&self.names, self.lead())).collect()
    }

    pub fn map_text(&self) -> String {
        format!("[{}] ↦ [{}]", self.names.join(", "), self.generator_texts().join(", "))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ray": [self.ray[0].to_string(), self.ray[1].to_string()],
            "kind": match self.kind {
                ModelKind::Divisorial { .. } => "divisorial",
                ModelKind::Fibration => "fibration",
                ModelKind::Sections => "sections",
            },
            "generators": self.generator_texts(),
            "weights": self.target.weights(),
            "scale": rat::render(&self.scale),
            "target": self.target.to_string(),
        })
    }
}

/// Scales positive rationals to coprime positive integers; returns the factor.
pub(crate) fn integral_weights(ws: &[Rat]) -> Result<(Vec<u64>, Rat)> {
    let l = ws.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints: Vec<BigInt> = ws.iter().map(|w| (w * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, k| acc.gcd(k));
    if g.is_zero() || ints.iter().any(|k| !k.is_positive()) {
        return Err(Error::Input("ample model with a non-positive degree".into()));
    }
    let out = ints
        .iter()
        .map(|k| (k / &g).to_u64().ok_or_else(|| Error::Resource("weight does not fit in 64 bits".into())))
        .collect::<Result<Vec<u64>>>()?;
    Ok((out, Rat::new(l, g)))
}

/// Degree of a monomial with exponents `e` along the primitive direction `rho`.
fn degree_along(t: &Rank2Toric, rho: &Dir, e: &[Rat]) -> Rat {
    let r = dir_rat(rho);
    let mut v = [Rat::zero(), Rat::zero()];
    for (i, k) in e.iter().enumerate() {
        if !k.is_zero() {
            v[0] += k * &t.column(i)[0];
            v[1] += k * &t.column(i)[1];
        }
    }
    (&v[0] * &r[0] + &v[1] * &r[1]) / (&r[0] * &r[0] + &r[1] * &r[1])
}

/// True when every generator is a single variable times a power of one
/// common further variable.
fn single_auxiliary(gens: &[MonomialGen], n: usize) -> bool {
    let fits = |aux: Option<usize>| {
        let mut seen = vec![false; n];
        gens.iter().all(|g| {
            let rest: Vec<usize> = (0..n).filter(|&i| Some(i) != aux && !g.exps[i].is_zero()).collect();
            match rest.as_slice() {
                [v] if g.exps[*v].is_one() && !seen[*v] => {
                    seen[*v] = true;
                    true
                }
                _ => false,
            }
        })
    };
    fits(None) || (0..n).any(|a| fits(Some(a)))
}

fn finish(t: &Rank2Toric, rho: &Dir, kind: ModelKind, mut gens: Vec<(Vec<Rat>, Rat)>, sort: bool) -> Result<AmpleModel> {
    let degs: Vec<Rat> = gens.iter().map(|(_, d)| d.clone()).collect();
    let (weights, scale) = integral_weights(&degs)?;
    let mut items: Vec<MonomialGen> = gens
        .drain(..)
        .zip(weights)
        .map(|((exps, _), weight)| MonomialGen { exps, weight })
        .collect();
    if sort {
        items.sort_by_key(|g| g.weight);
    }
    let weights: Vec<u64> = items.iter().map(|g| g.weight).collect();
    let target = if single_auxiliary(&items, t.len()) {
        Target::Weighted { weights }
    } else {
        Target::Proj { weights }
    };
    Ok(AmpleModel {
        ray: rho.clone(),
        kind,
        names: t.names().to_vec(),
        generators: items,
        scale,
        target,
    })
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut e = vec![Rat::zero(); n];
    e[i] = Rat::one();
    e
}

/// All vectors of nonnegative integers of length `n` with sum at most `max`.
fn compositions(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for k in 0..=max - used {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn sections(t: &Rank2Toric, ch: &Chambers, k: usize, bound: u32) -> Result<AmpleModel> {
    let ray = &ch.rays[k];
    let n = t.len();
    let ells: Vec<Rat> = (0..n).map(|i| side(&ray.dir, t.column(i))).collect();
    let l = ells.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = ells.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let ints: Vec<i64> = scaled
        .iter()
        .map(|x| {
            if g.is_zero() { Some(0) } else { (x / &g).to_i64() }
                .ok_or_else(|| Error::Resource("wall signature does not fit in 64 bits".into()))
        })
        .collect::<Result<_>>()?;
    let left: Vec<usize> = (0..n).filter(|&i| ints[i] < 0).collect();
    let right: Vec<usize> = (0..n).filter(|&i| ints[i] > 0).collect();
    let mut gens: Vec<(Vec<Rat>, Rat)> = ray
        .vars
        .iter()
        .map(|&v| {
            let e = unit(n, v);
            let d = degree_along(t, &ray.dir, &e);
            (e, d)
        })
        .collect();
    if !left.is_empty() && !right.is_empty() {
        let max_l = left.iter().map(|&i| ints[i].unsigned_abs()).max().unwrap_or(0);
        let max_r = right.iter().map(|&i| ints[i].unsigned_abs()).max().unwrap_or(0);
        if max_l + max_r > u64::from(bound) {
            return Err(Error::Resource(format!(
                "generators of the sections along ray ({}, {}) may need total exponent {}, beyond the bound {bound}",
                ray.dir[0],
                ray.dir[1],
                max_l + max_r
            )));
        }
        let side_sums = |vars: &[usize], max: u64| -> Vec<(u64, Vec<u32>)> {
            compositions(vars.len(), max as u32)
                .into_iter()
                .filter(|c| c.iter().any(|&k| k > 0))
                .map(|c| {
                    let s: u64 = c.iter().zip(vars).map(|(&k, &i)| u64::from(k) * ints[i].unsigned_abs()).sum();
                    (s, c)
                })
                .collect()
        };
        let ls = side_sums(&left, max_r);
        let rs = side_sums(&right, max_l);
        let mut cands: Vec<Vec<u32>> = Vec::new();
        for (sl, a) in &ls {
            for (sr, b) in &rs {
                if sl == sr {
                    let mut e = vec![0u32; n];
                    for (&k, &i) in a.iter().zip(&left) {
                        e[i] = k;
                    }
                    for (&k, &i) in b.iter().zip(&right) {
                        e[i] = k;
                    }
                    cands.push(e);
                }
            }
        }
        cands.sort_by_key(|e| e.iter().sum::<u32>());
        let mut minimal: Vec<Vec<u32>> = Vec::new();
        for e in cands {
            if !minimal.iter().any(|m| m.iter().zip(&e).all(|(a, b)| a <= b)) {
                minimal.push(e);
            }
        }
        minimal.sort_by(|a, b| b.cmp(a));
        for e in minimal {
            let exps: Vec<Rat> = e.iter().map(|&k| rat::int(i64::from(k))).collect();
            let d = degree_along(t, &ray.dir, &exps);
            gens.push((exps, d));
        }
    }
    let kind = if k == 0 || k + 1 == ch.rays.len() { ModelKind::Fibration } else { ModelKind::Sections };
    finish(t, &ray.dir, kind, gens, false)
}

fn divisorial(t: &Rank2Toric, ch: &Chambers, k: usize, c: usize) -> Result<AmpleModel> {
    let rho = &ch.rays[k].dir;
    let lc = side(rho, t.column(c));
    let r = dir_rat(rho);
    let cc = t.column(c);
    let rc = &r[0] * &cc[1] - &r[1] * &cc[0];
    let gens: Vec<(Vec<Rat>, Rat)> = (0..t.len())
        .filter(|&v| v != c)
        .map(|v| {
            let col = t.column(v);
            let mut e = unit(t.len(), v);
            e[c] = -side(rho, col) / &lc;
            let d = (&col[0] * &cc[1] - &col[1] * &cc[0]) / &rc;
            (e, d)
        })
        .collect();
    finish(t, rho, ModelKind::Divisorial { exceptional: c }, gens, true)
}

/// Ample model of the divisor classes on ray `k` of `t.chambers()`.
pub fn ample_model(t: &Rank2Toric, k: usize, bound: u32) -> Result<AmpleModel> {
    let ch = t.chambers()?;
    if k >= ch.rays.len() {
        return Err(Error::Input(format!("ray {k} out of range; there are {} rays", ch.rays.len())));
    }
    let last = ch.rays.len() - 1;
    if k == ch.mov.0 && k == 1 {
        return divisorial(t, &ch, k, ch.rays[0].vars[0]);
    }
    if k == ch.mov.1 && k + 1 == last {
        return divisorial(t, &ch, k, ch.rays[last].vars[0]);
    }
    sections(t, &ch, k, bound)
}

/// Ample model of the ray through the bidegree of `var`.
pub fn ample_model_of(t: &Rank2Toric, var: &str, bound: u32) -> Result<AmpleModel> {
    let ch = t.chambers()?;
    let k = ch.ray_of(t.var(var)?);
    ample_model(t, k, bound)
}
