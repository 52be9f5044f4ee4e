use std::cmp::Ordering;

/// Exponent vector aligned with a [`VarTable`](super::VarTable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Box<[u32]>);

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono(vec![0; n].into_boxed_slice())
    }

    pub fn var(n: usize, i: usize, e: u32) -> Mono {
        let mut v = vec![0; n];
        v[i] = e;
        Mono(v.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.0.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn with(&self, i: usize, e: u32) -> Mono {
        let mut v = self.0.clone();
        v[i] = e;
        Mono(v)
    }

    /// Graded reverse lexicographic comparison; `Greater` means earlier in
    /// rendering order.
    pub fn grevlex(&self, other: &Mono) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}
