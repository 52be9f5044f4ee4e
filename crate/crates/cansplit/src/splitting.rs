//! The explicit splitting lemma.
//!
//! For `f` whose degree-two part is `x^2 + (terms without x)`, the series
//! `g, h, p, v` satisfy `f = (x + g)^2 + h = (v (x + p))^2 + h` with `h` and
//! `p` free of `x`. Writing `f = Σ x^i f_{i,d}` with `f_{i,d}` homogeneous of
//! degree `d` in the other variables, they are computed degree by degree:
//!
//! ```text
//! g_{1,0} = 0
//! g_{i,d} = (f_{i+1,d} - Σ_{k=0}^{d} Σ_{j=max(0,2-k)}^{min(i+1,i+d-k-1)} g_{j,k} g_{i+1-j,d-k}) / 2
//! h_d     = f_{0,d} - Σ_{j=2}^{d-2} g_{0,j} g_{0,d-j}
//! p_d     = g_{0,d} - Σ_{j=2}^{d-1} v_{0,d-j} p_j
//! v_{0,0} = 1
//! v_{i,d} = g_{i+1,d} - Σ_{j=2}^{d} v_{i+1,d-j} p_j
//! ```
//!
//! Degrees may be measured by a grading in which the split variable has
//! weight one and other variables have non-negative weights.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{self, graded_part, rat, Accumulator, Mono, Poly, Rat, VarTable};

#[derive(Clone, Debug)]
pub struct SplitRequest {
    pub f: Poly,
    pub split_var: usize,
    pub trunc_degree: u64,
    /// Weights of all variables; `None` means every weight is one.
    pub grading: Option<Vec<u32>>,
    /// Largest number of terms allowed in any intermediate series.
    pub max_terms: Option<usize>,
}

impl SplitRequest {
    pub fn new(f: Poly, split_var: usize, trunc_degree: u64) -> SplitRequest {
        SplitRequest {
            f,
            split_var,
            trunc_degree,
            grading: None,
            max_terms: None,
        }
    }

    pub fn with_grading(mut self, w: Vec<u32>) -> SplitRequest {
        self.grading = Some(w);
        self
    }

    pub fn with_max_terms(mut self, n: usize) -> SplitRequest {
        self.max_terms = Some(n);
        self
    }
}

/// Truncated splitting data; every series stops at degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSeries {
    pub g: Poly,
    pub h: Poly,
    pub p: Poly,
    pub v: Poly,
    pub n: u64,
    pub split_var: usize,
    pub grading: Vec<u32>,
}

/// Memoized recurrences over a table of slices `f_{i,d}`.
pub struct Recurrence {
    table: Arc<VarTable>,
    x: usize,
    n: u64,
    f: HashMap<(u64, u64), Poly>,
    g: HashMap<(u64, u64), Poly>,
    max_terms: Option<usize>,
}

impl Recurrence {
    /// `slices[(i, d)] = f_{i,d}`; missing entries are zero.
    pub fn new(table: &Arc<VarTable>, x: usize, n: u64, slices: HashMap<(u64, u64), Poly>) -> Recurrence {
        Recurrence {
            table: table.clone(),
            x,
            n,
            f: slices,
            g: HashMap::new(),
            max_terms: None,
        }
    }

    pub fn with_max_terms(mut self, m: Option<usize>) -> Recurrence {
        self.max_terms = m;
        self
    }

    fn zero(&self) -> Poly {
        Poly::zero(&self.table)
    }

    fn fs(&self, i: u64, d: u64) -> Poly {
        self.f.get(&(i, d)).cloned().unwrap_or_else(|| self.zero())
    }

    fn gs(&self, i: u64, d: u64) -> &Poly {
        &self.g[&(i, d)]
    }

    fn guard(&self, p: &Poly, what: &str) -> Result<()> {
        match self.max_terms {
            Some(m) if p.len() > m => Err(Error::Resource(format!(
                "{what} has {} terms, above the ceiling of {m}",
                p.len()
            ))),
            _ => Ok(()),
        }
    }

    /// Fills `g_{i,d}` for all `i + d <= total`.
    pub fn fill_g(&mut self, total: u64) -> Result<()> {
        let half = rat::frac(1, 2);
        let minus_half = rat::frac(-1, 2);
        for t in 0..=total {
            for i in 0..=t {
                let d = t - i;
                if self.g.contains_key(&(i, d)) {
                    continue;
                }
                let val = if t < 2 {
                    self.zero()
                } else {
                    let mut acc = Accumulator::new(&self.table);
                    acc.add(&self.fs(i + 1, d), &half);
                    for k in 0..=d {
                        let lo = 2u64.saturating_sub(k);
                        let hi = (i + 1).min((i + d).saturating_sub(k + 1));
                        if i + d < k + 1 {
                            continue;
                        }
                        for j in lo..=hi {
                            acc.add_product(self.gs(j, k), self.gs(i + 1 - j, d - k), &minus_half);
                        }
                    }
                    acc.finish()
                };
                self.guard(&val, &format!("g_{{{i},{d}}}"))?;
                self.g.insert((i, d), val);
            }
        }
        Ok(())
    }

    /// `h_d` for `d = 0..=n`.
    pub fn h(&mut self) -> Result<Vec<Poly>> {
        self.fill_g(self.n.saturating_sub(2))?;
        let mut out = Vec::new();
        for d in 0..=self.n {
            let mut acc = Accumulator::new(&self.table);
            acc.add(&self.fs(0, d), &Rat::one());
            for j in 2..=d.saturating_sub(2) {
                acc.add_product(self.gs(0, j), self.gs(0, d - j), &rat::int(-1));
            }
            let hd = acc.finish();
            self.guard(&hd, &format!("h_{d}"))?;
            out.push(hd);
        }
        Ok(out)
    }

    /// Full series truncated at `n`.
    pub fn series(&mut self, grading: Vec<u32>) -> Result<SplitSeries> {
        let n = self.n;
        let x = self.x;
        self.fill_g(n + 1)?;
        let h = self.h()?;
        let mut p: Vec<Poly> = Vec::new();
        let mut v: HashMap<(u64, u64), Poly> = HashMap::new();
        for t in 0..=n {
            let mut acc = Accumulator::new(&self.table);
            acc.add(self.gs(0, t), &Rat::one());
            for j in 2..t {
                acc.add_product(&v[&(0, t - j)], &p[j as usize], &rat::int(-1));
            }
            p.push(acc.finish());
            for i in 0..=t {
                let d = t - i;
                let val = if i == 0 && d == 0 {
                    Poly::one(&self.table)
                } else {
                    let mut acc = Accumulator::new(&self.table);
                    acc.add(self.gs(i + 1, d), &Rat::one());
                    for j in 2..=d {
                        acc.add_product(&v[&(i + 1, d - j)], &p[j as usize], &rat::int(-1));
                    }
                    acc.finish()
                };
                v.insert((i, d), val);
            }
        }
        let xpow = |i: u64| Mono::var(self.table.len(), x, i as u32);
        let mut g_acc = Accumulator::new(&self.table);
        let mut v_acc = Accumulator::new(&self.table);
        for t in 0..=n {
            for i in 0..=t {
                let m = xpow(i);
                g_acc.add(&self.gs(i, t - i).mul_term(&m, &Rat::one()), &Rat::one());
                v_acc.add(&v[&(i, t - i)].mul_term(&m, &Rat::one()), &Rat::one());
            }
        }
        let table = self.table.clone();
        Ok(SplitSeries {
            g: g_acc.finish(),
            h: poly::sum(&table, h.iter()),
            p: poly::sum(&table, p.iter()),
            v: v_acc.finish(),
            n,
            split_var: x,
            grading,
        })
    }
}

fn grading_of(req: &SplitRequest) -> Result<Vec<u32>> {
    let nvars = req.f.table().len();
    let w = req.grading.clone().unwrap_or_else(|| vec![1; nvars]);
    if w.len() != nvars {
        return Err(Error::Input(format!("grading has {} weights for {nvars} variables", w.len())));
    }
    if req.split_var >= nvars {
        return Err(Error::Input("split variable out of range".into()));
    }
    if w[req.split_var] != 1 {
        return Err(Error::Input("the split variable must have weight one".into()));
    }
    Ok(w)
}

/// Checks that `f` has multiplicity at least two and degree-two part
/// `x^2 + (terms without x)`.
pub fn check_precondition(f: &Poly, x: usize, w: &[u32]) -> Result<()> {
    let name = f.table().name(x).to_string();
    if f.is_zero() {
        return Err(Error::Precondition(format!(
            "multiplicity precondition: the zero polynomial has no `{name}^2` term"
        )));
    }
    let low = f.filter(|m| m.weighted_degree(w) < 2);
    if !low.is_zero() {
        return Err(Error::Precondition(format!(
            "multiplicity precondition: terms of degree below two: {low}"
        )));
    }
    let q = graded_part(f, w, 2);
    let bad = q.filter(|m| m.exps()[x] > 0) - Poly::var(f.table(), x).pow(2);
    if !bad.is_zero() {
        return Err(Error::Precondition(format!(
            "degree-2 part must be {name}^2 + (terms without {name}); offending terms: {}",
            -bad
        )));
    }
    Ok(())
}

/// Slices `f_{i,d}` of `f` with respect to `x` and the grading `w`.
pub fn slices(f: &Poly, x: usize, w: &[u32]) -> HashMap<(u64, u64), Poly> {
    let mut buckets: HashMap<(u64, u64), Vec<(Mono, Rat)>> = HashMap::new();
    for (m, c) in f.terms() {
        let i = m.exps()[x] as u64;
        let d = m.weighted_degree(w) - i;
        buckets.entry((i, d)).or_default().push((m.with(x, 0), c.clone()));
    }
    buckets
        .into_iter()
        .map(|(k, t)| (k, Poly::from_terms(f.table(), t)))
        .collect()
}

pub fn split(req: &SplitRequest) -> Result<SplitSeries> {
    let w = grading_of(req)?;
    check_precondition(&req.f, req.split_var, &w)?;
    let mut rec = Recurrence::new(
        req.f.table(),
        req.split_var,
        req.trunc_degree,
        slices(&req.f, req.split_var, &w),
    )
    .with_max_terms(req.max_terms);
    let s = rec.series(w)?;
    if !verify_split(&req.f, &s) {
        return Err(Error::Identity("split series fail the splitting identity".into()));
    }
    Ok(s)
}

/// Only the residual `h`, truncated at the requested degree.
pub fn split_h(req: &SplitRequest) -> Result<Poly> {
    Ok(poly::sum(req.f.table(), split_h_parts(req)?.iter()))
}

/// Graded parts `h_0, …, h_N` of the residual.
pub fn split_h_parts(req: &SplitRequest) -> Result<Vec<Poly>> {
    let w = grading_of(req)?;
    check_precondition(&req.f, req.split_var, &w)?;
    Recurrence::new(
        req.f.table(),
        req.split_var,
        req.trunc_degree,
        slices(&req.f, req.split_var, &w),
    )
    .with_max_terms(req.max_terms)
    .h()
}

fn truncated_square(a: &Poly, w: &[u32], n: u64) -> Poly {
    let a = a.truncate_weighted(w, n);
    let mut acc = Accumulator::new(a.table());
    for (ma, ca) in a.terms() {
        let da = ma.weighted_degree(w);
        for (mb, cb) in a.terms() {
            if da + mb.weighted_degree(w) <= n {
                acc.add(&Poly::monomial(a.table(), ma.mul(mb), ca * cb), &Rat::one());
            }
        }
    }
    acc.finish()
}

/// Checks `f ≡ (x+g)^2 + h ≡ (v(x+p))^2 + h` up to degree `N`.
pub fn verify_split(f: &Poly, s: &SplitSeries) -> bool {
    let w = &s.grading;
    let n = s.n;
    let table = f.table();
    if !poly::same_table(table, s.g.table()) {
        return false;
    }
    let x = Poly::var(table, s.split_var);
    let ft = f.truncate_weighted(w, n);
    let h = s.h.truncate_weighted(w, n);
    let first = truncated_square(&(&x + &s.g), w, n) + &h;
    if first != ft {
        return false;
    }
    let xp = &x + &s.p;
    let vxp = (&s.v * &xp).truncate_weighted(w, n);
    let second = truncated_square(&vxp, w, n) + &h;
    second == ft
}

/// Splits off each variable in turn and returns the final residual.
pub fn iterated_split(f: &Poly, split_vars: &[usize], n: u64) -> Result<Poly> {
    let mut cur = f.clone();
    for (stage, &x) in split_vars.iter().enumerate() {
        let req = SplitRequest::new(cur, x, n);
        cur = split_h(&req).map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })?;
    }
    Ok(cur.truncate(n))
}

/// The residuals `h_0, …, h_{up_to}` over symbolic slices `f_i_d`, with
/// `f_{0,0} = f_{1,0} = f_{0,1} = f_{1,1} = 0` and `f_{2,0} = 1`.
pub fn h_symbolic(up_to: u64) -> Result<(Arc<VarTable>, Vec<Poly>)> {
    let mut names = Vec::new();
    let mut keys = Vec::new();
    for t in 2..=up_to {
        for i in 0..=t {
            let d = t - i;
            if (i, d) == (2, 0) || (i, d) == (1, 1) {
                continue;
            }
            names.push(format!("f_{i}_{d}"));
            keys.push((i, d));
        }
    }
    let table = VarTable::new(&names)?;
    let mut sl = HashMap::new();
    for (k, key) in keys.into_iter().enumerate() {
        sl.insert(key, Poly::var(&table, k));
    }
    sl.insert((2, 0), Poly::one(&table));
    let mut rec = Recurrence::new(&table, 0, up_to, sl);
    Ok((table, rec.h()?))
}
