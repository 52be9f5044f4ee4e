//! Rank-2 toric varieties `ℂ^n ∖ V(I) / (ℂ^*)^2` given by a 2×n action matrix
//! and the position of the irrelevant-ideal bar: chambers, ample models along
//! rays, the 2-ray link and the bookkeeping that restricts it to subvarieties.

mod catalog;
mod file;
mod link;
mod model;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Matrix;
use crate::poly::{rat, Rat};

pub use catalog::{catalog, catalog_entry, replay, ChartData, Display, LinkEntry, Replay, ReplayCheck, WallCheck};
pub use file::{parse_ideal, parse_link_file, LinkFile};
pub use link::{
    bidegree, chart_check, link_transcript, pullback_weights, restrict_wall, strict_transform, walk_link, walk_link_on, ChartCheck,
    ChartOutcome, LinkStep, PointCount, StepKind, StrictGenerator, WallClass, WallRestriction,
};
pub use model::{ample_model, ample_model_of, AmpleModel, ModelKind, MonomialGen, Target, DEFAULT_EXPONENT_BOUND};

/// Action matrix with named columns; columns `0..wall` form the first block of
/// the irrelevant ideal and `wall..n` the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Toric {
    names: Vec<String>,
    cols: Vec<[Rat; 2]>,
    wall: usize,
}

/// Primitive integral direction in `ℤ^2`.
pub type Dir = [BigInt; 2];

/// Variables sharing one ray, in column order, with their bidegrees as
/// multiples of the primitive direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub dir: Dir,
    pub vars: Vec<usize>,
    pub multiples: Vec<Rat>,
}

/// Rays in anticlockwise order with the effective and movable cones and the
/// chamber of the given variety.
#[derive(Clone, Debug)]
pub struct Chambers {
    pub rays: Vec<Ray>,
    /// Indices of the rays bounding the movable cone.
    pub mov: (usize, usize),
    /// The variety lives in the chamber between rays `chamber` and `chamber + 1`.
    pub chamber: usize,
}

impl Chambers {
    /// Chambers of the movable cone as pairs of consecutive ray indices.
    pub fn mori_chambers(&self) -> Vec<(usize, usize)> {
        (self.mov.0..self.mov.1).map(|i| (i, i + 1)).collect()
    }

    /// The two blocks of variables of the chamber between rays `k` and `k + 1`.
    pub fn blocks(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        let mut a: Vec<usize> = self.rays[..=k].iter().flat_map(|r| r.vars.clone()).collect();
        let mut b: Vec<usize> = self.rays[k + 1..].iter().flat_map(|r| r.vars.clone()).collect();
        a.sort_unstable();
        b.sort_unstable();
        (a, b)
    }

    pub fn ray_of(&self, var: usize) -> usize {
        self.rays.iter().position(|r| r.vars.contains(&var)).expect("every column lies on a ray")
    }
}

fn cross(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1]
}

pub(crate) fn dir_rat(d: &Dir) -> [Rat; 2] {
    [Rat::from_integer(d[0].clone()), Rat::from_integer(d[1].clone())]
}

/// Primitive integral vector on the ray of a nonzero rational vector.
fn primitive(v: &[Rat; 2]) -> Dir {
    let l = v[0].denom().lcm(v[1].denom());
    let a = (&v[0] * Rat::from_integer(l.clone())).to_integer();
    let b = (&v[1] * Rat::from_integer(l)).to_integer();
    let g = a.gcd(&b);
    [a / &g, b / &g]
}

/// `ρ_1 v_2 - ρ_2 v_1`; positive when `v` lies anticlockwise of `ρ`.
pub(crate) fn side(rho: &Dir, v: &[Rat; 2]) -> Rat {
    cross(&dir_rat(rho), v)
}

impl Rank2Toric {
    pub fn new<S: AsRef<str>>(names: &[S], rows: [Vec<Rat>; 2], wall: usize) -> Result<Rank2Toric> {
        let n = names.len();
        if rows[0].len() != n || rows[1].len() != n {
            return Err(Error::Input(format!(
                "{n} variables but rows of length {} and {}",
                rows[0].len(),
                rows[1].len()
            )));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if !crate::poly::is_identifier(a) {
                return Err(Error::Input(format!("`{a}` is not a valid variable name")));
            }
            if names[..i].contains(a) {
                return Err(Error::Input(format!("variable `{a}` appears twice")));
            }
        }
        let cols: Vec<[Rat; 2]> = (0..n).map(|i| [rows[0][i].clone(), rows[1][i].clone()]).collect();
        if let Some(i) = cols.iter().position(|c| c[0].is_zero() && c[1].is_zero()) {
            return Err(Error::Input(format!("the column of `{}` is zero", names[i])));
        }
        let t = Rank2Toric { names, cols, wall };
        t.chambers()?;
        Ok(t)
    }

    pub fn from_ints<S: AsRef<str>>(names: &[S], rows: [&[i64]; 2], wall: usize) -> Result<Rank2Toric> {
        let r = |v: &[i64]| v.iter().map(|&k| rat::int(k)).collect::<Vec<_>>();
        Rank2Toric::new(names, [r(rows[0]), r(rows[1])], wall)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn column(&self, i: usize) -> &[Rat; 2] {
        &self.cols[i]
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        self.cols.iter().map(|c| c[r].clone()).collect()
    }

    pub fn wall(&self) -> usize {
        self.wall
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::Input(format!("`{name}` is not a variable of the toric variety")))
    }

    /// Same action with the bar moved.
    pub fn with_wall(&self, wall: usize) -> Result<Rank2Toric> {
        Rank2Toric::new(&self.names, [self.row(0), self.row(1)], wall)
    }

    /// Rows as integers when every entry is integral.
    pub fn int_rows(&self) -> Option<[Vec<i64>; 2]> {
        let conv = |r: usize| -> Option<Vec<i64>> {
            self.cols
                .iter()
                .map(|c| {
                    let x = &c[r];
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).ok()
                    } else {
                        None
                    }
                })
                .collect()
        };
        Some([conv(0)?, conv(1)?])
    }

    /// Rays sorted anticlockwise with the movable cone and the chamber of `self`.
    pub fn chambers(&self) -> Result<Chambers> {
        let n = self.cols.len();
        (0..n)
            .find(|&i| {
                (0..n).all(|j| {
                    let c = cross(&self.cols[i], &self.cols[j]);
                    c.is_positive() || (c.is_zero() && dot(&self.cols[i], &self.cols[j]).is_positive())
                })
            })
            .ok_or_else(|| Error::Input("the columns do not lie in a strictly convex cone".into()))?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            let c = cross(&self.cols[a], &self.cols[b]);
            if c.is_positive() {
                std::cmp::Ordering::Less
            } else if c.is_negative() {
                std::cmp::Ordering::Greater
            } else {
                a.cmp(&b)
            }
        });
        let mut rays: Vec<Ray> = Vec::new();
        for i in order {
            let d = primitive(&self.cols[i]);
            let m = {
                let dr = dir_rat(&d);
                if dr[0].is_zero() {
                    &self.cols[i][1] / &dr[1]
                } else {
                    &self.cols[i][0] / &dr[0]
                }
            };
            match rays.last_mut() {
                Some(r) if r.dir == d => {
                    r.vars.push(i);
                    r.multiples.push(m);
                }
                _ => rays.push(Ray {
                    dir: d,
                    vars: vec![i],
                    multiples: vec![m],
                }),
            }
        }
        if rays.len() < 2 {
            return Err(Error::Input("all columns lie on one ray; the quotient is degenerate".into()));
        }
        let last = rays.len() - 1;
        let mov = if rays.len() == 2 {
            (0, 1)
        } else {
            let s = if rays[0].vars.len() >= 2 { 0 } else { 1 };
            let e = if rays[last].vars.len() >= 2 { last } else { last - 1 };
            (s, e)
        };
        if mov.0 >= mov.1 {
            return Err(Error::Input("the movable cone has empty interior".into()));
        }
        if self.wall == 0 || self.wall >= n {
            return Err(Error::Input(format!("the bar must split the {n} columns into two nonempty blocks")));
        }
        let mut block: Vec<usize> = (0..self.wall).collect();
        block.sort_unstable();
        let chamber = (0..last)
            .find(|&k| {
                let mut a: Vec<usize> = rays[..=k].iter().flat_map(|r| r.vars.clone()).collect();
                let mut b: Vec<usize> = rays[k + 1..].iter().flat_map(|r| r.vars.clone()).collect();
                a.sort_unstable();
                b.sort_unstable();
                a == block || b == block
            })
            .ok_or_else(|| {
                Error::Input(format!(
                    "the block ({}) is not a run of consecutive rays at either end",
                    self.names[..self.wall].join(", ")
                ))
            })?;
        if chamber < mov.0 || chamber >= mov.1 {
            return Err(Error::Input(format!(
                "the block ({}) cuts out a chamber outside the movable cone",
                self.names[..self.wall].join(", ")
            )));
        }
        Ok(Chambers { rays, mov, chamber })
    }

    /// Weight table: a header of names, then the two rows with a bar.
    pub fn table_text(&self) -> String {
        let cells: Vec<[String; 3]> = self
            .names
            .iter()
            .zip(&self.cols)
            .map(|(n, c)| [n.clone(), rat::render(&c[0]), rat::render(&c[1])])
            .collect();
        let mut lines = [String::new(), String::new(), String::new()];
        for (i, cell) in cells.iter().enumerate() {
            if i == self.wall {
                for l in lines.iter_mut() {
                    l.push_str(" |");
                }
            }
            let w = cell.iter().map(|s| s.chars().count()).max().unwrap_or(1);
            for (l, s) in lines.iter_mut().zip(cell) {
                l.push_str(&format!(" {s:>w$}"));
            }
        }
        lines.iter().map(|l| l.trim_end().to_string() + "\n").collect()
    }
}

impl fmt::Display for Rank2Toric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table_text())
    }
}

/// Changes the basis of `(ℂ^*)^2`: the action matrix becomes `M·action`.
pub fn normalize(t: &Rank2Toric, m: &Matrix) -> Result<Rank2Toric> {
    if m.len() != 2 || m.iter().any(|r| r.len() != 2) {
        return Err(Error::Input("the basis change must be a 2×2 matrix".into()));
    }
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let rows = [0, 1].map(|r| {
        t.cols
            .iter()
            .map(|c| &m[r][0] * &c[0] + &m[r][1] * &c[1])
            .collect::<Vec<Rat>>()
    });
    Rank2Toric::new(&t.names, rows, t.wall)
}

pub fn int_matrix(m: [[i64; 2]; 2]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&k| rat::int(k)).collect()).collect()
}

/// A unimodular basis change sending the primitive direction `rho` to `(0, 1)`:
/// its first row evaluates to the wall signature.
pub fn wall_basis(rho: &Dir) -> Matrix {
    let e = rho[0].extended_gcd(&rho[1]);
    let (a, b) = if e.gcd.is_negative() { (-e.x, -e.y) } else { (e.x, e.y) };
    let z = |k: BigInt| Rat::from_integer(k);
    vec![vec![z(rho[1].clone()), z(-rho[0].clone())], vec![z(a), z(b)]]
}
