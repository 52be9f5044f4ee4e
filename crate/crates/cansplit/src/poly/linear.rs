//! Invertible linear coordinate changes.

use num_traits::{One, Zero};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Dense rational matrix, row major.
pub type Matrix = Vec<Vec<Rat>>;

pub fn mat_det(m: &Matrix) -> Rat {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

pub fn mat_inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Input("matrix is not square".into()));
    }
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for k in 0..2 * n {
            a[c][k] = &a[c][k] / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rat::zero(), |s, l| s + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

/// Replaces `vars[i]` by `Σ_j M[i][j] vars[j]`.
pub fn linear_change(p: &Poly, vars: &[usize], m: &Matrix) -> Result<Poly> {
    let n = vars.len();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::Input(format!("matrix must be {n}×{n}")));
    }
    if mat_det(m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let table = p.table();
    let images: Vec<(usize, Poly)> = vars
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let img = vars.iter().enumerate().fold(Poly::zero(table), |acc, (j, &w)| {
                acc + Poly::var(table, w).scale(&m[i][j])
            });
            (v, img)
        })
        .collect();
    p.substitute(&images)
}
