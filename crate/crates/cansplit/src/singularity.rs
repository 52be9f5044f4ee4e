//! Hypersurface germs: cA_n classification, Kawakita weight checks and the
//! affine blowup presentations built from two splittings.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{graded_part, linear_change, rat, weight, Matrix, Mono, Poly, Rat, VarTable, Weight};
use crate::splitting::{split, split_h, SplitRequest};

/// Congruence diagonalization of the quadratic part.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub rank: usize,
    /// Variables of the change, in the order of `matrix` rows and columns.
    pub vars: Vec<usize>,
    /// `vars[i] ↦ Σ_j matrix[i][j] vars[j]`.
    pub matrix: Matrix,
    /// Diagonal entries, nonzero ones first.
    pub diagonal: Vec<Rat>,
    /// `f` after the change; its quadratic part is `Σ diagonal[i] vars[i]^2`.
    pub f: Poly,
    /// Whether `λ_1 x_1^2 + λ_2 x_2^2` is a hyperbolic plane over ℚ.
    pub hyperbolic: bool,
}

fn quadratic_matrix(q: &Poly, vars: &[usize]) -> Matrix {
    let n = vars.len();
    let mut a = vec![vec![Rat::zero(); n]; n];
    let half = rat::frac(1, 2);
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| m.exps()[vars[i]] > 0).collect();
        match idx.as_slice() {
            [i] => a[*i][*i] += c,
            [i, j] => {
                a[*i][*j] += c * &half;
                a[*j][*i] += c * &half;
            }
            _ => {}
        }
    }
    a
}

fn add_multiple(a: &mut Matrix, p: &mut Matrix, target: usize, src: usize, c: &Rat) {
    let n = a.len();
    for r in 0..n {
        let t = &a[r][src] * c;
        a[r][target] += t;
    }
    for k in 0..n {
        let t = &a[src][k] * c;
        a[target][k] += t;
    }
    for r in 0..n {
        let t = &p[r][src] * c;
        p[r][target] += t;
    }
}

fn swap_both(a: &mut Matrix, p: &mut Matrix, i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in p.iter_mut() {
        row.swap(i, j);
    }
}

/// Diagonalizes the quadratic part of `f` over ℚ by a congruence on all
/// variables of its table.
pub fn quad_diagonalize(f: &Poly) -> Result<Diagonalization> {
    let table = f.table();
    let vars: Vec<usize> = (0..table.len()).collect();
    let n = vars.len();
    let ones = vec![1u32; n];
    let low = f.filter(|m| m.degree() < 2);
    if !low.is_zero() {
        return Err(Error::Precondition(format!(
            "constant and linear part must vanish, found {low}"
        )));
    }
    let mut a = quadratic_matrix(&graded_part(f, &ones, 2), &vars);
    let mut p: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_both(&mut a, &mut p, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                add_multiple(&mut a, &mut p, k, j, &Rat::one());
            } else {
                continue;
            }
        }
        let piv = a[k][k].clone();
        for j in k + 1..n {
            if a[k][j].is_zero() {
                continue;
            }
            let c = -(&a[k][j] / &piv);
            add_multiple(&mut a, &mut p, j, k, &c);
        }
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| !a[i][i].is_zero()).collect();
    let rank = order.len();
    order.extend((0..n).filter(|&i| a[i][i].is_zero()));
    let diagonal: Vec<Rat> = order.iter().map(|&i| a[i][i].clone()).collect();
    let matrix: Matrix = (0..n)
        .map(|r| order.iter().map(|&c| p[r][c].clone()).collect())
        .collect();
    let g = linear_change(f, &vars, &matrix)?;
    let expect = vars.iter().zip(&diagonal).fold(Poly::zero(table), |acc, (&v, d)| {
        acc + Poly::var(table, v).pow(2).scale(d)
    });
    if graded_part(&g, &ones, 2) != expect {
        return Err(Error::Identity("quadratic part not diagonal after congruence".into()));
    }
    let hyperbolic = rank >= 2 && rat::is_square(&-(&diagonal[0] * &diagonal[1]));
    Ok(Diagonalization {
        rank,
        vars,
        matrix,
        diagonal,
        f: g,
        hyperbolic,
    })
}

#[derive(Clone, Debug)]
pub struct GermPresentation {
    pub f: Poly,
    /// Rational point; empty means the origin.
    pub base_point: Vec<Rat>,
    /// Largest truncation degree used for the residual.
    pub trunc_degree: u64,
}

impl GermPresentation {
    pub fn new(f: Poly, trunc_degree: u64) -> GermPresentation {
        GermPresentation {
            f,
            base_point: Vec::new(),
            trunc_degree,
        }
    }

    pub fn at(mut self, point: Vec<Rat>) -> GermPresentation {
        self.base_point = point;
        self
    }

    /// `f` translated so that the base point is the origin.
    pub fn translated(&self) -> Result<Poly> {
        let table = self.f.table();
        if self.base_point.is_empty() {
            if !self.f.constant_term().is_zero() {
                return Err(Error::Input("the origin does not lie on the hypersurface".into()));
            }
            return Ok(self.f.clone());
        }
        if self.base_point.len() != table.len() {
            return Err(Error::Input(format!(
                "point has {} coordinates for {} variables",
                self.base_point.len(),
                table.len()
            )));
        }
        if !self.f.eval_point(&self.base_point).is_zero() {
            return Err(Error::Input("the base point does not lie on the hypersurface".into()));
        }
        let shift: Vec<(usize, Poly)> = self
            .base_point
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, Poly::var(table, i) + Poly::constant(table, c.clone())))
            .collect();
        self.f.substitute(&shift)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaIndex {
    /// The germ is smooth.
    Smooth,
    Finite(u64),
    /// The residual vanishes up to the truncation degree.
    AtLeast(u64),
    /// Quadratic rank at most one.
    NotCa,
}

#[derive(Clone, Debug)]
pub struct GermReport {
    pub nvars: usize,
    pub quad_rank: usize,
    pub diagonal: Vec<Rat>,
    pub hyperbolic: bool,
    pub residual_h: Option<Poly>,
    pub index: CaIndex,
    pub trunc_degree: u64,
}

impl GermReport {
    /// `cA_n` for threefold germs, `A_n` for surface germs.
    pub fn label(&self) -> String {
        let prefix = if self.nvars == 3 { "A" } else { "cA" };
        match &self.index {
            CaIndex::Smooth => "smooth".to_string(),
            CaIndex::Finite(n) => format!("{prefix}_{n}"),
            CaIndex::AtLeast(n) => format!("{prefix}_n with n >= {n} (indeterminate at this truncation)"),
            CaIndex::NotCa => format!("not {prefix} (corank > 2)"),
        }
    }
}

impl fmt::Display for GermReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Splits off the first two diagonal squares and returns the residual.
fn residual_after_two(d: &Diagonalization, n: u64) -> Result<Poly> {
    let (x1, x2) = (d.vars[0], d.vars[1]);
    let (l1, l2) = (&d.diagonal[0], &d.diagonal[1]);
    let f1 = d.f.scale(&(Rat::one() / l1)).truncate(n);
    let h1 = split_h(&SplitRequest::new(f1, x1, n)).map_err(|e| Error::Stage {
        stage: 0,
        source: Box::new(e),
    })?;
    let f2 = h1.scale(&(l1 / l2));
    split_h(&SplitRequest::new(f2, x2, n)).map_err(|e| Error::Stage {
        stage: 1,
        source: Box::new(e),
    })
}

/// Classifies the germ of `V(f)` at its base point.
pub fn classify_can(g: &GermPresentation) -> Result<GermReport> {
    let f = g.translated()?;
    let nvars = f.table().len();
    let mut report = GermReport {
        nvars,
        quad_rank: 0,
        diagonal: Vec::new(),
        hyperbolic: false,
        residual_h: None,
        index: CaIndex::Smooth,
        trunc_degree: g.trunc_degree,
    };
    if !f.filter(|m| m.degree() == 1).is_zero() {
        return Ok(report);
    }
    let d = quad_diagonalize(&f)?;
    report.quad_rank = d.rank;
    report.diagonal = d.diagonal.clone();
    report.hyperbolic = d.hyperbolic;
    if d.rank <= 1 {
        report.index = CaIndex::NotCa;
        return Ok(report);
    }
    let bound = g.trunc_degree.max(2);
    let mut n = bound.min(6);
    loop {
        let h = residual_after_two(&d, n)?;
        if let Weight::Finite(m) = weight(&h, &vec![1; nvars]) {
            report.index = CaIndex::Finite(m - 1);
            report.residual_h = Some(h);
            report.trunc_degree = n;
            return Ok(report);
        }
        if n >= bound {
            report.index = CaIndex::AtLeast(n);
            report.residual_h = Some(h);
            report.trunc_degree = n;
            return Ok(report);
        }
        n = (2 * n).min(bound);
    }
}

/// Weights `(r_1, r_2, a, 1)` of a Kawakita blowup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KawakitaWeights {
    pub r1: u32,
    pub r2: u32,
    pub a: u32,
}

impl KawakitaWeights {
    pub fn new(r1: u32, r2: u32, a: u32) -> Result<KawakitaWeights> {
        if r1 == 0 || r2 == 0 || a == 0 {
            return Err(Error::Input("weights must be positive".into()));
        }
        if r1 < r2 {
            return Err(Error::Input(format!("expected r1 >= r2, got ({r1}, {r2})")));
        }
        if (r1 + r2) % a != 0 {
            return Err(Error::Input(format!("a = {a} does not divide r1 + r2 = {}", r1 + r2)));
        }
        if r1.gcd(&a) != 1 || r2.gcd(&a) != 1 {
            return Err(Error::Input(format!("a = {a} must be coprime to r1 and r2")));
        }
        let kw = KawakitaWeights { r1, r2, a };
        if kw.n() < 2 {
            return Err(Error::Input(format!("n = {} must be at least 2", kw.n())));
        }
        Ok(kw)
    }

    pub fn n(&self) -> u32 {
        (self.r1 + self.r2) / self.a - 1
    }

    pub fn weights(&self) -> [u32; 4] {
        [self.r1, self.r2, self.a, 1]
    }
}

impl fmt::Display for KawakitaWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, 1)", self.r1, self.r2, self.a)
    }
}

#[derive(Clone, Debug)]
pub struct KawakitaVerdict {
    pub weight: Weight,
    pub expected: u64,
    pub weight_ok: bool,
    /// Terms of weight below `r1 + r2`.
    pub low_terms: Poly,
    /// Whether `f = c·x1·x2 + g(x3, x4)`.
    pub normal_form: bool,
    /// For the normal form: whether `x3^{(r1+r2)/a}` occurs in `g`.
    pub x3_power: Option<bool>,
    pub passed: bool,
}

/// Full weight vector with `coords` weighted by `kw`, `params` by their
/// stated weights and every other variable by zero.
pub fn kawakita_weighting(table: &VarTable, kw: &KawakitaWeights, coords: [usize; 4], params: &[(usize, u32)]) -> Vec<u32> {
    let mut w = vec![0u32; table.len()];
    for &(v, k) in params {
        w[v] = k;
    }
    for (v, k) in coords.iter().zip(kw.weights()) {
        w[*v] = k;
    }
    w
}

/// Splits `f` as `c·x1·x2 + g(x3, x4, params)` when it has that shape.
fn normal_form_rest(f: &Poly, coords: [usize; 4]) -> Option<Poly> {
    let [x1, x2, _, _] = coords;
    let mixed = f.filter(|m| m.exps()[x1] > 0 || m.exps()[x2] > 0);
    let target = Mono::var(f.table().len(), x1, 1).mul(&Mono::var(f.table().len(), x2, 1));
    match mixed.terms() {
        [(m, c)] if *m == target && !c.is_zero() => Some(f - &mixed),
        _ => None,
    }
}

pub fn kawakita_check(f: &Poly, kw: &KawakitaWeights, coords: [usize; 4], params: &[(usize, u32)]) -> KawakitaVerdict {
    let w = kawakita_weighting(f.table(), kw, coords, params);
    let expected = (kw.r1 + kw.r2) as u64;
    let wt = weight(f, &w);
    let low_terms = f.filter(|m| m.weighted_degree(&w) < expected);
    let weight_ok = wt == Weight::Finite(expected);
    let rest = normal_form_rest(f, coords);
    let x3_power = rest.as_ref().map(|g| {
        let k = (expected / kw.a as u64) as u32;
        let [_, _, x3, x4] = coords;
        !g.filter(|m| m.exps()[x3] == k && m.exps()[x4] == 0).is_zero()
    });
    KawakitaVerdict {
        weight: wt,
        expected,
        weight_ok,
        low_terms,
        normal_form: rest.is_some(),
        x3_power,
        passed: weight_ok && x3_power != Some(false),
    }
}

/// Largest `a` with `wt_{(a,1)}(g) = a(n+1)` for `f = x1·x2 + g(x3, x4)`;
/// `None` when `f` is not in that form or `g` vanishes.
pub fn type_a(f: &Poly, coords: [usize; 4]) -> Option<u32> {
    let g = normal_form_rest(f, coords)?;
    let [_, _, x3, x4] = coords;
    let mut ones = vec![0u32; f.table().len()];
    ones[x3] = 1;
    ones[x4] = 1;
    let mult = weight(&g, &ones).finite()?;
    let top = g.terms().iter().map(|(m, _)| m.weighted_degree(&ones)).max()?;
    (1..=top.max(1) as u32).rev().find(|&a| {
        let mut w = ones.clone();
        w[x3] = a;
        weight(&g, &w) == Weight::Finite(a as u64 * mult)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlowupKind {
    /// `(f, −α + (x1+q)w + (x2+p)v, −β + x2 + p)`.
    I,
    /// `(−(α − (x2+p)v)^2 + x2^2 + F, −β + x2 + p)`, for `F` free of `x1`.
    J,
    /// `(f, −β + x2 + p)`, for `F` free of `x1` and `r1 = r2`.
    JPrime,
}

#[derive(Clone, Debug)]
pub struct BlowupPresentation {
    pub kind: BlowupKind,
    pub table: Arc<VarTable>,
    pub generators: Vec<Poly>,
    /// Blowup weight of each ambient variable, by name.
    pub ambient_weights: Vec<(String, u32)>,
    /// `α`, `β` as polynomials in the original coordinates.
    pub section: Vec<(usize, Poly)>,
    pub q: Poly,
    pub w: Poly,
    pub p: Poly,
    pub v: Poly,
    pub trunc_degree: u64,
}

impl BlowupPresentation {
    /// Chart substitutions `var ↦ u^k·var` of the weighted blowup.
    pub fn chart_maps(&self) -> Vec<String> {
        self.ambient_weights
            .iter()
            .map(|(n, k)| match k {
                0 => format!("{n} ↦ {n}"),
                1 => format!("{n} ↦ u*{n}"),
                _ => format!("{n} ↦ u^{k}*{n}"),
            })
            .collect()
    }

    /// Substitutes the section map; the first generator must become `f`
    /// and the rest zero.
    pub fn recovers(&self, f: &Poly) -> Result<bool> {
        let f = f.embed(&self.table)?;
        let images: Vec<Poly> = self
            .generators
            .iter()
            .map(|g| g.substitute(&self.section))
            .collect::<Result<_>>()?;
        Ok(images[0] == f && images[1..].iter().all(Poly::is_zero))
    }
}

/// Terms of `s` of weight below `k`; by convention `s_{<0} = 1`.
fn below(s: &Poly, w: &[u32], k: i64) -> Poly {
    if k <= 0 {
        return Poly::one(s.table());
    }
    s.filter(|m| (m.weighted_degree(w) as i64) < k)
}

fn mult(p: &Poly, w: &[u32]) -> Weight {
    weight(p, w)
}

/// Builds the blowup ideal of `f = −x1^2 + x2^2 + F` from the splittings of
/// `−f` in `x1` and of the residual in `x2`. `coords` lists
/// `(x1, x2, x3, x4)`; other variables are treated as constants.
pub fn build_blowup_ideal(
    f: &Poly,
    kw: &KawakitaWeights,
    coords: [usize; 4],
    trunc_degree: Option<u64>,
) -> Result<BlowupPresentation> {
    let src = f.table();
    for name in ["alpha", "beta"] {
        if src.index_of(name).is_some() {
            return Err(Error::Input(format!("variable name `{name}` is reserved for the blowup")));
        }
    }
    let table = src.extended(&["alpha", "beta"])?;
    let f = f.embed(&table)?;
    let [x1, x2, x3, x4] = coords;
    let (alpha, beta) = (table.len() - 2, table.len() - 1);
    let mut std = vec![0u32; table.len()];
    for c in coords {
        std[c] = 1;
    }
    let var = |i: usize| Poly::var(&table, i);
    let big_f = &f + var(x1).pow(2) - var(x2).pow(2);
    if let Weight::Finite(m) = mult(&big_f, &std) {
        if m < 3 {
            return Err(Error::Precondition(format!(
                "F = f + x1^2 - x2^2 must have multiplicity at least 3, found {m}"
            )));
        }
    }
    let (r1, r2) = (kw.r1 as i64, kw.r2 as i64);
    let n = trunc_degree.unwrap_or(2 * (kw.r1 + kw.r2) as u64);
    if n < kw.r1 as u64 {
        return Err(Error::Input(format!("truncation {n} is below r1 = {r1}")));
    }
    let s1 = split(&SplitRequest::new(-&f, x1, n).with_grading(std.clone())).map_err(|e| Error::Stage {
        stage: 0,
        source: Box::new(e),
    })?;
    let s2 = split(&SplitRequest::new(-&s1.h, x2, n).with_grading(std.clone())).map_err(|e| Error::Stage {
        stage: 1,
        source: Box::new(e),
    })?;
    let (q, w, p, v) = (s1.p.clone(), s1.v.clone(), s2.p.clone(), s2.v.clone());
    let cap = |m: Weight| match m {
        Weight::Finite(k) => (k as u32).min(kw.r2),
        Weight::Infinite => kw.r2,
    };
    let m = cap(mult(&q, &std));
    let mp = cap(mult(&p, &std));
    let mut wp = vec![0u32; table.len()];
    wp[x1] = m;
    wp[x2] = mp;
    wp[x3] = kw.a;
    wp[x4] = 1;
    let p_r1 = below(&p, &wp, r1);
    let p_r2 = below(&p, &wp, r2);
    let v_r = if r1 == r2 { Poly::one(&table) } else { below(&v, &wp, r1 - r2) };
    let beta_img = &var(x2) + &p_r2;
    let second = &(&var(x2) + &p_r1) * &v_r;
    let x1_free = !big_f.contains_var(x1);
    let name = |i: usize| table.name(i).to_string();
    let (kind, generators, section, ambient) = if x1_free && r1 == r2 {
        (
            BlowupKind::JPrime,
            vec![f.clone(), -var(beta) + &beta_img],
            vec![(beta, beta_img)],
            vec![(name(x1), kw.r1), (name(beta), kw.r2), (name(x2), mp), (name(x3), kw.a), (name(x4), 1)],
        )
    } else if x1_free {
        let g0 = -(&var(alpha) - &second).pow(2) + var(x2).pow(2) + &big_f;
        (
            BlowupKind::J,
            vec![g0, -var(beta) + &beta_img],
            vec![(alpha, &var(x1) + &second), (beta, beta_img)],
            vec![(name(alpha), kw.r1), (name(beta), kw.r2), (name(x2), mp), (name(x3), kw.a), (name(x4), 1)],
        )
    } else {
        let w_r = below(&w, &wp, r1 - m as i64);
        let first = &(&var(x1) + &below(&q, &wp, r1)) * &w_r;
        let alpha_img = &first + &second;
        (
            BlowupKind::I,
            vec![f.clone(), -var(alpha) + &alpha_img, -var(beta) + &beta_img],
            vec![(alpha, alpha_img), (beta, beta_img)],
            vec![
                (name(alpha), kw.r1),
                (name(beta), kw.r2),
                (name(x1), m),
                (name(x2), mp),
                (name(x3), kw.a),
                (name(x4), 1),
            ],
        )
    };
    Ok(BlowupPresentation {
        kind,
        table,
        generators,
        ambient_weights: ambient,
        section,
        q,
        w,
        p,
        v,
        trunc_degree: n,
    })
}

/// Substitutes `x_i ↦ u^{w_i}·x_i` and divides by the largest power of `u`.
/// Returns the quotient and the division order.
pub fn pullback_chart(g: &Poly, w: &[u32], u: usize) -> Result<(Poly, u64)> {
    if g.is_zero() {
        return Err(Error::Input("cannot pull back the zero polynomial".into()));
    }
    if w.len() != g.table().len() {
        return Err(Error::Input(format!(
            "weighting has {} entries for {} variables",
            w.len(),
            g.table().len()
        )));
    }
    let mut w = w.to_vec();
    w[u] = 0;
    let raised: Vec<(Mono, u64)> = g
        .terms()
        .iter()
        .map(|(m, _)| (m.clone(), m.exps()[u] as u64 + m.weighted_degree(&w)))
        .collect();
    let order = raised.iter().map(|(_, k)| *k).min().unwrap_or(0);
    let terms = raised
        .into_iter()
        .zip(g.terms())
        .map(|((m, k), (_, c))| (m.with(u, (k - order) as u32), c.clone()));
    Ok((Poly::from_terms(g.table(), terms), order))
}

/// Multiplicity of `p` over all variables.
pub fn multiplicity(p: &Poly) -> Weight {
    weight(p, &vec![1; p.table().len()])
}
