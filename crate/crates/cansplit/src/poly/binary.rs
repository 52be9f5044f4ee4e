//! Binary forms: gcd, Sylvester resultant and squarefreeness.

use num_traits::{One, Zero};

use super::{Mono, Poly, Rat};
use crate::error::{Error, Result};

/// The pair of variables `(y, z)` carrying a binary form, ordered `y < z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub y: usize,
    pub z: usize,
}

type Uni = Vec<Rat>;

fn trim(mut a: Uni) -> Uni {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn uni_rem(a: &Uni, b: &Uni) -> Uni {
    let mut r = trim(a.clone());
    let db = b.len() - 1;
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        r = trim(r);
    }
    r
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn uni_derivative(a: &Uni) -> Uni {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer((i as i64).into()))
            .collect(),
    )
}

impl BinaryForm {
    pub fn new(y: usize, z: usize) -> BinaryForm {
        BinaryForm { y, z }
    }

    /// Checks that `a` is a form in `y, z` and returns its degree (`None` for zero).
    pub fn degree(&self, a: &Poly) -> Result<Option<u32>> {
        let mut deg = None;
        for (m, _) in a.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 && i != self.y && i != self.z {
                    return Err(Error::Input(format!(
                        "`{a}` involves `{}` besides the binary-form variables",
                        a.table().name(i)
                    )));
                }
            }
            let d = m.exps()[self.y] + m.exps()[self.z];
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::Input(format!("`{a}` is not homogeneous")));
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Splits `a = z^k · A(y, z)` with `A(y, 1)` returned as a dense univariate polynomial.
    fn dehomogenize(&self, a: &Poly) -> (u32, Uni) {
        let k = a.terms().iter().map(|(m, _)| m.exps()[self.z]).min().unwrap_or(0);
        let deg = a.terms().iter().map(|(m, _)| m.exps()[self.y]).max().unwrap_or(0) as usize;
        let mut u = vec![Rat::zero(); deg + 1];
        for (m, c) in a.terms() {
            u[m.exps()[self.y] as usize] += c;
        }
        (k, trim(u))
    }

    fn homogenize(&self, a: &Poly, k: u32, u: &Uni) -> Poly {
        let n = a.table().len();
        let d = u.len().saturating_sub(1) as u32;
        let terms = u.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
            let mut e = vec![0u32; n];
            e[self.y] = i as u32;
            e[self.z] = d - i as u32 + k;
            (Mono(e.into_boxed_slice()), c.clone())
        });
        Poly::from_terms(a.table(), terms)
    }

    /// Scales so that the coefficient of the largest power of `z` is one.
    pub fn normalize(&self, a: &Poly) -> Poly {
        match a.terms().iter().max_by_key(|(m, _)| m.exps()[self.z]) {
            Some((_, c)) => a.scale(&(Rat::one() / c)),
            None => a.clone(),
        }
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let da = self.degree(a)?;
        let db = self.degree(b)?;
        match (da, db) {
            (None, None) => Err(Error::Undefined("gcd of two zero forms".into())),
            (None, _) => Ok(self.normalize(b)),
            (_, None) => Ok(self.normalize(a)),
            _ => {
                let (ka, ua) = self.dehomogenize(a);
                let (kb, ub) = self.dehomogenize(b);
                let g = uni_gcd(&ua, &ub);
                Ok(self.normalize(&self.homogenize(a, ka.min(kb), &g)))
            }
        }
    }

    pub fn is_squarefree(&self, a: &Poly) -> Result<bool> {
        if self.degree(a)?.is_none() {
            return Ok(false);
        }
        let (k, u) = self.dehomogenize(a);
        Ok(k <= 1 && uni_gcd(&u, &uni_derivative(&u)).len() <= 1)
    }

    /// Number of distinct zeros in ℙ¹ (over ℂ); `None` for the zero form.
    pub fn distinct_roots(&self, a: &Poly) -> Result<Option<u32>> {
        if self.degree(a)?.is_none() {
            return Ok(None);
        }
        let (k, u) = self.dehomogenize(a);
        let g = uni_gcd(&u, &uni_derivative(&u));
        let squarefree_deg = (u.len() - 1) - (g.len() - 1);
        Ok(Some(squarefree_deg as u32 + u32::from(k > 0)))
    }

    /// Squarefree part, normalized.
    pub fn squarefree_part(&self, a: &Poly) -> Result<Poly> {
        if self.degree(a)?.is_none() {
            return Err(Error::Undefined("squarefree part of the zero form".into()));
        }
        let (k, u) = self.dehomogenize(a);
        let g = uni_gcd(&u, &uni_derivative(&u));
        let q = uni_div(&u, &g);
        Ok(self.normalize(&self.homogenize(a, k.min(1), &q)))
    }
}

fn uni_div(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return vec![];
    }
    let mut q = vec![Rat::zero(); a.len() - db];
    for dr in (db..a.len()).rev() {
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            let t = &f * &b[i];
            r[dr - db + i] -= t;
        }
        q[dr - db] = f;
    }
    trim(q)
}

/// gcd of two binary forms in the two variables that occur, monic under `y < z`.
pub fn binary_gcd(a: &Poly, b: &Poly, form: BinaryForm) -> Result<Poly> {
    form.gcd(a, b)
}

pub fn is_squarefree(a: &Poly, form: BinaryForm) -> Result<bool> {
    form.is_squarefree(a)
}

/// Sylvester resultant of `a` and `b` with respect to `var`.
pub fn resultant(a: &Poly, b: &Poly, var: usize) -> Result<Poly> {
    let table = a.table().clone();
    a.checked_add(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(&table));
    }
    let m = a.degree_in(var).unwrap() as usize;
    let n = b.degree_in(var).unwrap() as usize;
    let ca: Vec<Poly> = (0..=m).rev().map(|i| a.coeff(var, i as u32)).collect();
    let cb: Vec<Poly> = (0..=n).rev().map(|i| b.coeff(var, i as u32)).collect();
    let size = m + n;
    if size == 0 {
        return Ok(Poly::one(&table));
    }
    let mut mat = vec![vec![Poly::zero(&table); size]; size];
    for r in 0..n {
        for (k, c) in ca.iter().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in cb.iter().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss(mat)
}

/// Fraction-free determinant of a polynomial matrix.
pub(crate) fn bareiss(mut a: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = a.len();
    let table = a[0][0].table().clone();
    let mut sign = false;
    let mut prev = Poly::one(&table);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(Poly::zero(&table)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = num
                    .divide_exact(&prev)?
                    .ok_or_else(|| Error::Identity("Bareiss step not exact".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}
