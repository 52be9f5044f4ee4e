//! Concrete coefficients of a sextic and the `key = polynomial` file format.

use std::collections::BTreeMap;

use super::{generic_f, param_degree, ring, FamilyId};
use crate::error::{Error, Result};
use crate::poly::{rat, Mono, Poly, Rat};

/// Binary forms in `y, z` assigned to parameter symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coefficients {
    values: BTreeMap<String, Poly>,
}

impl Coefficients {
    pub fn new() -> Coefficients {
        Coefficients::default()
    }

    /// Checks that `value` is a form of the right degree in `y, z` and stores it.
    pub fn insert(&mut self, name: &str, value: Poly) -> Result<()> {
        let deg = param_degree(name)
            .ok_or_else(|| Error::Input(format!("`{name}` is not a parameter of the sextic")))?;
        let value = value.embed(ring().table())?;
        let t = ring().table();
        let (y, z) = (t.var("y")?, t.var("z")?);
        for (m, _) in value.terms() {
            let e = m.exps();
            if e.iter().enumerate().any(|(i, &k)| k > 0 && i != y && i != z) {
                return Err(Error::Input(format!("`{name} = {value}` must be a form in y and z")));
            }
            if e[y] + e[z] != deg {
                return Err(Error::Input(format!(
                    "`{name} = {value}` must be homogeneous of degree {deg}"
                )));
            }
        }
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    pub fn set(&mut self, name: &str, text: &str) -> Result<()> {
        let p = ring().parse(text)?;
        self.insert(name, p)
    }

    pub fn get(&self, name: &str) -> Option<&Poly> {
        self.values.get(name)
    }

    /// The stored value, or zero when the key is absent.
    pub fn value(&self, name: &str) -> Poly {
        self.values.get(name).cloned().unwrap_or_else(|| Poly::zero(ring().table()))
    }

    pub fn require(&self, name: &str) -> Result<Poly> {
        self.values
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Input(format!("missing coefficient `{name}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Poly)> {
        self.values.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Substitutes the stored values into `p`; other symbols stay symbolic.
    pub fn substitute_into(&self, p: &Poly) -> Result<Poly> {
        let assign: Vec<(usize, Poly)> = self
            .values
            .iter()
            .map(|(n, v)| Ok((p.table().var(n)?, v.embed(p.table())?)))
            .collect::<Result<_>>()?;
        p.substitute(&assign)
    }

    /// The sextic with these coefficients; missing coefficients are zero.
    pub fn sextic(&self) -> Result<Poly> {
        let f = self.substitute_into(&generic_f())?;
        let t = ring().table();
        let zero: Vec<(usize, Poly)> = super::PARAMS
            .iter()
            .map(|(n, _)| (t.var(n).unwrap(), Poly::zero(t)))
            .collect();
        f.substitute(&zero)
    }

    /// Reads the coefficients off a sextic of the form of the generic equation.
    pub fn from_sextic(f: &Poly) -> Result<Coefficients> {
        let table = ring().table().clone();
        let f = f.embed(&table)?;
        let (x, t, w) = (table.var("x")?, table.var("t")?, table.var("w")?);
        let mut buckets: BTreeMap<(u32, u32), Vec<(Mono, Rat)>> = BTreeMap::new();
        let mut wterm = Poly::zero(&table);
        for (m, c) in f.terms() {
            let e = m.exps();
            if e[w] > 0 {
                wterm = wterm + Poly::monomial(&table, m.clone(), c.clone());
                continue;
            }
            if e.iter().enumerate().skip(5).any(|(_, &k)| k > 0) {
                return Err(Error::Input(format!("the sextic must be in x, y, z, t, w only: {f}")));
            }
            buckets
                .entry((e[x], e[t]))
                .or_default()
                .push((m.with(x, 0).with(t, 0), c.clone()));
        }
        if wterm != -Poly::var(&table, w).pow(2) {
            return Err(Error::Input(format!("the w-part must be -w^2, found {wterm}")));
        }
        let mut out = Coefficients::new();
        let mut x4t2 = false;
        for ((i, j), terms) in buckets {
            let form = Poly::from_terms(&table, terms);
            let slot = match (i, j) {
                (4, 2) => {
                    if form != Poly::one(&table) {
                        return Err(Error::Input("the coefficient of x^4*t^2 must be 1".into()));
                    }
                    x4t2 = true;
                    continue;
                }
                (4, 0) => Some(("xi_2".to_string(), rat::one())),
                (3, j) if j <= 3 => Some((format!("a_{}", 3 - j), rat::int([1, 2, 4, 4][j as usize]))),
                (2, j) if j <= 4 => Some((format!("b_{}", 4 - j), rat::int(if j == 0 { 1 } else { 2 }))),
                (1, j) if j <= 5 => Some((format!("c_{}", 5 - j), rat::int(if j == 0 { 1 } else { 2 }))),
                (0, j) if j <= 6 => Some((format!("d_{}", 6 - j), rat::int(if j % 2 == 1 { 2 } else { 1 }))),
                _ => None,
            };
            let Some((name, factor)) = slot else {
                return Err(Error::Input(format!(
                    "x^{i}*t^{j} cannot occur in a sextic with a double point at P_x in normal form"
                )));
            };
            out.insert(&name, form.scale(&(rat::one() / factor)))
                .map_err(|_| Error::Input(format!("the coefficient of x^{i}*t^{j} is not a form of degree {}", 6 - i - j)))?;
        }
        if !x4t2 {
            return Err(Error::Input("the sextic needs the term x^4*t^2".into()));
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// A parsed family file: optional `family = …`, optional `f = …` and
/// `symbol = form` lines; `#` starts a comment.
#[derive(Clone, Debug, Default)]
pub struct FamilyFile {
    pub family: Option<FamilyId>,
    pub coefficients: Coefficients,
}

pub fn parse_family_file(text: &str) -> Result<FamilyFile> {
    let mut out = FamilyFile::default();
    let mut sextic: Option<Poly> = None;
    let mut lines: Vec<(usize, String)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match lines.last_mut() {
            Some((_, prev)) if !line.contains('=') => {
                prev.push(' ');
                prev.push_str(line);
            }
            _ => lines.push((no + 1, line.to_string())),
        }
    }
    for (no, line) in lines {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("line {no}: expected `key = value`")))?;
        let (key, value) = (key.trim(), value.trim());
        let at = |e: Error| Error::Input(format!("line {no}: {e}"));
        match key {
            "family" => out.family = Some(value.parse().map_err(at)?),
            "f" => sextic = Some(ring().parse(value).map_err(at)?),
            _ => out.coefficients.set(key, value).map_err(at)?,
        }
    }
    if let Some(f) = sextic {
        let mut c = Coefficients::from_sextic(&f)?;
        for (k, v) in out.coefficients.iter() {
            c.insert(k, v.clone())?;
        }
        out.coefficients = c;
    }
    Ok(out)
}
