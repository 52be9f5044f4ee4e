//! Weighted gradings: weights, graded parts and the slices `f_{i,d}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use super::Poly;

/// Least weighted degree of a polynomial; the zero polynomial has weight ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(n) => Some(n),
            Weight::Infinite => None,
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        match (self, rhs) {
            (Weight::Finite(a), Weight::Finite(b)) => Weight::Finite(a + b),
            _ => Weight::Infinite,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(n) => write!(f, "{n}"),
            Weight::Infinite => f.write_str("∞"),
        }
    }
}

/// `wt_w(p)`; with all weights one this is the multiplicity.
pub fn weight(p: &Poly, w: &[u32]) -> Weight {
    p.terms()
        .iter()
        .map(|(m, _)| m.weighted_degree(w))
        .min()
        .map_or(Weight::Infinite, Weight::Finite)
}

/// The part of `p` of weighted degree exactly `d`.
pub fn graded_part(p: &Poly, w: &[u32], d: u64) -> Poly {
    p.filter(|m| m.weighted_degree(w) == d)
}

/// All nonzero graded parts, keyed by degree.
pub fn homogeneous_parts(p: &Poly, w: &[u32]) -> BTreeMap<u64, Poly> {
    let mut buckets: BTreeMap<u64, Vec<_>> = BTreeMap::new();
    for (m, c) in p.terms() {
        buckets.entry(m.weighted_degree(w)).or_default().push((m.clone(), c.clone()));
    }
    buckets
        .into_iter()
        .map(|(d, t)| (d, Poly::from_sorted(p.table(), t)))
        .collect()
}

/// `f_{i,d}`: the degree-`d` part (standard grading) of the coefficient of `x^i`.
pub fn coeff_slice(p: &Poly, x: usize, i: u32, d: u64) -> Poly {
    let n = p.table().len();
    let w = vec![1; n];
    coeff_slice_weighted(p, x, i, d, &w)
}

/// As [`coeff_slice`] with the degree of the remaining variables measured by `w`.
pub fn coeff_slice_weighted(p: &Poly, x: usize, i: u32, d: u64, w: &[u32]) -> Poly {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.0[x] == i && m.weighted_degree(w) - (i as u64) * (w[x] as u64) == d)
        .map(|(m, c)| (m.with(x, 0), c.clone()))
        .collect();
    Poly::from_sorted(p.table(), terms)
}
