use std::sync::Arc;

use cansplit::poly::{binary_gcd, graded_part, linear_change, mat_inverse, weight, BinaryForm, Matrix, Weight};
use cansplit::splitting::{split, verify_split, SplitRequest};
use cansplit::{parse, Mono, Poly, Rat, VarTable};
use num_traits::Zero;
use proptest::prelude::*;

fn table() -> Arc<VarTable> {
    VarTable::new(&["x", "y", "z"]).unwrap()
}

fn coeff() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| Rat::new(a.into(), b.into()))
}

fn poly_in(table: Arc<VarTable>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = table.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coeff()), 0..=max_terms)
        .prop_map(move |ts| Poly::from_terms(&table, ts.into_iter().map(|(e, c)| (Mono(e.into_boxed_slice()), c))))
}

fn small() -> impl Strategy<Value = Poly> {
    poly_in(table(), 3, 5)
}

fn nonzero() -> impl Strategy<Value = Poly> {
    small().prop_filter("nonzero", |p| !p.is_zero())
}

fn weights() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=4, 3)
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(|k| Rat::from_integer(k.into())).collect()).collect::<Matrix>())
        .prop_filter("invertible", |m| mat_inverse(m).is_ok())
}

/// `x^2 + q(y, z) + terms of degree 3..=5` in three variables.
fn germ() -> impl Strategy<Value = Poly> {
    let t = table();
    (poly_in(t.clone(), 2, 3), poly_in(t.clone(), 4, 6)).prop_map(move |(q, rest)| {
        let x2 = Poly::var(&t, 0).pow(2);
        let q = graded_part(&q, &[1, 1, 1], 2).filter(|m| m.exps()[0] == 0);
        let rest = rest.filter(|m| (3..=5).contains(&m.degree()));
        x2 + q + rest
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in small(), b in small(), c in small()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.table()), a.clone());
        prop_assert_eq!(a.pow(2), &a * &a);
    }

    #[test]
    fn weight_is_additive(p in nonzero(), q in nonzero(), w in weights()) {
        let (Weight::Finite(a), Weight::Finite(b)) = (weight(&p, &w), weight(&q, &w)) else {
            return Err(TestCaseError::fail("nonzero polynomial of infinite weight"));
        };
        prop_assert_eq!(weight(&(&p * &q), &w), Weight::Finite(a + b));
    }

    #[test]
    fn graded_parts_sum_to_the_polynomial(p in small(), w in weights()) {
        let top = p.terms().iter().map(|(m, _)| m.weighted_degree(&w)).max().unwrap_or(0);
        let mut total = Poly::zero(p.table());
        for d in 0..=top {
            let g = graded_part(&p, &w, d);
            prop_assert!(g.terms().iter().all(|(m, _)| m.weighted_degree(&w) == d));
            total = total + g;
        }
        prop_assert_eq!(total, p);
    }

    #[test]
    fn parse_render_round_trip(p in poly_in(table(), 5, 8)) {
        let text = p.render();
        let q = parse(&text, p.table()).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.render(), text);
    }

    #[test]
    fn linear_change_then_inverse(p in small(), m in invertible(3)) {
        let inv = mat_inverse(&m).unwrap();
        let q = linear_change(&p, &[0, 1, 2], &m).unwrap();
        prop_assert_eq!(linear_change(&q, &[0, 1, 2], &inv).unwrap(), p);
    }

    #[test]
    fn gcd_divides_both(a in poly_in(table(), 3, 4), b in poly_in(table(), 3, 4), c in poly_in(table(), 2, 3)) {
        let form = BinaryForm::new(1, 2);
        let hom = |p: &Poly| {
            let p = p.filter(|m| m.exps()[0] == 0);
            let d = p.total_degree().unwrap_or(0);
            graded_part(&p, &[1, 1, 1], d)
        };
        let (a, b, c) = (hom(&a), hom(&b), hom(&c));
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (a, b) = (&a * &c, &b * &c);
        let g = binary_gcd(&a, &b, form).unwrap();
        for f in [&a, &b] {
            if !f.is_zero() {
                prop_assert!(f.divide_exact(&g).unwrap().is_some(), "{} ∤ {}", g, f);
            }
        }
        prop_assert!(g.divide_exact(&c).unwrap().is_some(), "{} ∤ {}", c, g);
    }

    #[test]
    fn split_round_trip(f in germ(), n in 3u64..=12) {
        let s = split(&SplitRequest::new(f.clone(), 0, n)).unwrap();
        prop_assert!(verify_split(&f, &s));
        prop_assert!(!s.h.contains_var(0));
        prop_assert!(!s.p.contains_var(0));
        prop_assert!(s.v.constant_term() == Rat::from_integer(1.into()));
        prop_assert!(s.h.terms().iter().all(|(m, _)| m.degree() <= n));
    }
}

#[test]
fn zero_has_infinite_weight() {
    assert_eq!(weight(&Poly::zero(&table()), &[1, 1, 1]), Weight::Infinite);
    assert!(Rat::zero().is_zero());
}
