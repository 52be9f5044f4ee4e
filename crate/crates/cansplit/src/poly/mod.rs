//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in graded reverse lexicographic order (largest first) over
//! the order of the variable table, without zero coefficients, so equality is
//! structural.

mod binary;
mod grade;
mod linear;
mod mono;
mod parse;
pub mod rat;
mod table;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

pub use binary::{binary_gcd, is_squarefree, resultant, BinaryForm};
pub use grade::{coeff_slice, coeff_slice_weighted, graded_part, homogeneous_parts, weight, Weight};
pub use linear::{linear_change, mat_det, mat_inverse, mat_mul, Matrix};
pub use mono::Mono;
pub use parse::{parse, parse_with_new_vars};
pub use rat::Rat;
pub use table::{is_identifier, VarTable};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: Vec<(Mono, Rat)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Poly {}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Poly {
        Poly {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: Rat) -> Poly {
        let mut p = Poly::zero(table);
        if !c.is_zero() {
            p.terms.push((Mono::one(table.len()), c));
        }
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Poly {
        Poly::constant(table, Rat::one())
    }

    pub fn int(table: &Arc<VarTable>, n: i64) -> Poly {
        Poly::constant(table, rat::int(n))
    }

    /// The variable with index `i`.
    pub fn var(table: &Arc<VarTable>, i: usize) -> Poly {
        Poly::monomial(table, Mono::var(table.len(), i, 1), Rat::one())
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Poly> {
        Ok(Poly::var(table, table.var(name)?))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Mono, c: Rat) -> Poly {
        let mut p = Poly::zero(table);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Rat)>>(table: &Arc<VarTable>, terms: I) -> Poly {
        let mut acc: HashMap<Mono, Rat> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), table.len());
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Poly::from_map(table, acc)
    }

    fn from_map(table: &Arc<VarTable>, acc: HashMap<Mono, Rat>) -> Poly {
        let mut terms: Vec<(Mono, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.grevlex(&a.0));
        Poly {
            table: table.clone(),
            terms,
        }
    }

    /// Builds from terms already sorted and merged.
    fn from_sorted(table: &Arc<VarTable>, terms: Vec<(Mono, Rat)>) -> Poly {
        Poly {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Coefficient of the monomial `m`.
    pub fn coeff_of(&self, m: &Mono) -> Rat {
        self.terms
            .binary_search_by(|(t, _)| m.grevlex(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    /// Largest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[var]).max()
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of the variables that occur.
    pub fn vars(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&v| self.contains_var(v)).collect()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Rat| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.grevlex(&b[j].0) {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly::from_sorted(&self.table, out)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.table);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Mono, Rat> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_map(&self.table, acc)
    }

    /// Multiplication by a single term keeps the order.
    pub fn mul_term(&self, m: &Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect();
        Poly::from_sorted(&self.table, terms)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect();
        Poly::from_sorted(&self.table, terms)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.table);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter<F: Fn(&Mono) -> bool>(&self, keep: F) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect();
        Poly::from_sorted(&self.table, terms)
    }

    /// Terms of total degree at most `n`.
    pub fn truncate(&self, n: u64) -> Poly {
        self.filter(|m| m.degree() <= n)
    }

    /// Terms of weighted degree at most `n`.
    pub fn truncate_weighted(&self, w: &[u32], n: u64) -> Poly {
        self.filter(|m| m.weighted_degree(w) <= n)
    }

    /// Coefficient of `var^i`, as a polynomial free of `var`.
    pub fn coeff(&self, var: usize, i: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] == i)
            .map(|(m, c)| (m.with(var, 0), c.clone()));
        Poly::from_terms(&self.table, terms)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let e = m.0[var];
            (m.with(var, e - 1), c * rat::int(e as i64))
        });
        Poly::from_terms(&self.table, terms)
    }

    /// Simultaneous substitution `var ↦ image`, fully expanded.
    pub fn substitute(&self, assignments: &[(usize, Poly)]) -> Result<Poly> {
        for (v, img) in assignments {
            self.check(img)?;
            if *v >= self.table.len() {
                return Err(Error::Table(format!("variable index {v} out of range")));
            }
        }
        if assignments.is_empty() || self.is_zero() {
            return Ok(self.clone());
        }
        let mut powers: Vec<(usize, Vec<Poly>)> = assignments
            .iter()
            .map(|(v, img)| (*v, vec![Poly::one(&self.table), img.clone()]))
            .collect();
        let mut groups: HashMap<Vec<u32>, Vec<(Mono, Rat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = assignments.iter().map(|(v, _)| m.0[*v]).collect();
            let mut rest = m.clone();
            for (v, _) in assignments {
                rest.0[*v] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut acc: HashMap<Mono, Rat> = HashMap::new();
        let mut keys: Vec<_> = groups.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for (key, rest) in keys {
            let mut factor = Poly::one(&self.table);
            for (slot, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[slot].1;
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul_unchecked(&cache[1]);
                    cache.push(next);
                }
                factor = factor.mul_unchecked(&cache[e as usize]);
            }
            let rest = Poly::from_terms(&self.table, rest);
            for (m, c) in rest.mul_unchecked(&factor).terms {
                *acc.entry(m).or_insert_with(Rat::zero) += c;
            }
        }
        Ok(Poly::from_map(&self.table, acc))
    }

    /// Substitution by variable name.
    pub fn substitute_named(&self, assignments: &[(&str, Poly)]) -> Result<Poly> {
        let a = assignments
            .iter()
            .map(|(n, p)| Ok((self.table.var(n)?, p.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&a)
    }

    /// Sets the listed variables to rational values.
    pub fn evaluate(&self, values: &[(usize, Rat)]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            let mut c = c.clone();
            for (v, x) in values {
                let e = m.0[*v];
                if e > 0 {
                    c *= num_traits::pow(x.clone(), e as usize);
                    m.0[*v] = 0;
                }
            }
            (m, c)
        });
        Poly::from_terms(&self.table, terms)
    }

    /// Value at a full rational point.
    pub fn eval_point(&self, point: &[Rat]) -> Rat {
        let values: Vec<(usize, Rat)> = point.iter().cloned().enumerate().collect();
        self.evaluate(&values).constant_term()
    }

    /// Re-expresses the polynomial over `table`, matching variables by name.
    pub fn embed(&self, table: &Arc<VarTable>) -> Result<Poly> {
        if same_table(&self.table, table) {
            return Ok(Poly::from_sorted(table, self.terms.clone()));
        }
        let map: Vec<Option<usize>> = self
            .table
            .names()
            .iter()
            .map(|n| table.index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; table.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    match map[i] {
                        Some(j) => e[j] = k,
                        None => return Err(Error::UnknownIdentifier(self.table.name(i).to_string())),
                    }
                }
            }
            terms.push((Mono(e.into_boxed_slice()), c.clone()));
        }
        Ok(Poly::from_terms(table, terms))
    }

    /// Multivariate division by `d` in term order; returns quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d)?;
        let (lm, lc) = d
            .leading()
            .cloned()
            .ok_or_else(|| Error::Undefined("division by zero polynomial".into()))?;
        let mut q = Poly::zero(&self.table);
        let mut r_terms = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.leading().cloned() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = &c / &lc;
                q = q.merge(&Poly::monomial(&self.table, qm.clone(), qc.clone()), false);
                p = p.merge(&d.mul_term(&qm, &qc), true);
            } else {
                r_terms.push((m, c));
                p.terms.remove(0);
            }
        }
        Ok((q, Poly::from_sorted(&self.table, r_terms)))
    }

    /// Exact quotient, or `None` when `d` does not divide.
    pub fn divide_exact(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(rat::render(&a));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.table.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.table.name(i), e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial operands over different tables")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Poly::from_sorted(&self.table, terms)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Sum of polynomials over a common table.
pub fn sum<'a, I: IntoIterator<Item = &'a Poly>>(table: &Arc<VarTable>, items: I) -> Poly {
    let mut acc: HashMap<Mono, Rat> = HashMap::new();
    for p in items {
        for (m, c) in &p.terms {
            match acc.get_mut(m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m.clone(), c.clone());
                }
            }
        }
    }
    Poly::from_map(table, acc)
}

/// Accumulates sums of products without intermediate canonicalization.
pub struct Accumulator {
    table: Arc<VarTable>,
    acc: HashMap<Mono, Rat>,
}

impl Accumulator {
    pub fn new(table: &Arc<VarTable>) -> Accumulator {
        Accumulator {
            table: table.clone(),
            acc: HashMap::new(),
        }
    }

    pub fn add(&mut self, p: &Poly, c: &Rat) {
        for (m, d) in &p.terms {
            let t = d * c;
            match self.acc.get_mut(m) {
                Some(v) => *v += t,
                None => {
                    self.acc.insert(m.clone(), t);
                }
            }
        }
    }

    /// Adds `c·a·b`.
    pub fn add_product(&mut self, a: &Poly, b: &Poly, c: &Rat) {
        for (ma, ca) in &a.terms {
            let ca = ca * c;
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let t = &ca * cb;
                match self.acc.get_mut(&m) {
                    Some(v) => *v += t,
                    None => {
                        self.acc.insert(m, t);
                    }
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.acc.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acc.is_empty()
    }

    pub fn finish(self) -> Poly {
        Poly::from_map(&self.table, self.acc)
    }
}
