use cansplit::poly::{mat_inverse, rat, Matrix};
use cansplit::toric::*;
use cansplit::{Error, Poly, Rat, VarTable};
use num_traits::Zero;
use proptest::prelude::*;

fn example() -> Rank2Toric {
    Rank2Toric::from_ints(
        &["u", "x", "y", "z", "alpha", "xi", "t"],
        [&[0, 1, 1, 1, 3, 5, 1], &[-1, 0, 1, 1, 3, 6, 2]],
        2,
    )
    .unwrap()
}

fn ray_names(t: &Rank2Toric) -> Vec<Vec<String>> {
    let ch = t.chambers().unwrap();
    ch.rays.iter().map(|r| r.vars.iter().map(|&v| t.names()[v].clone()).collect()).collect()
}

fn ints(v: &[Rat]) -> Vec<i64> {
    v.iter().map(|r| r.to_integer().try_into().unwrap()).collect()
}

#[test]
fn example_chambers() {
    let t = example();
    assert_eq!(
        ray_names(&t),
        vec![vec!["u"], vec!["x"], vec!["y", "z", "alpha"], vec!["xi"], vec!["t"]]
    );
    let ch = t.chambers().unwrap();
    assert_eq!(ch.mov, (1, 3));
    assert_eq!(ch.chamber, 1);
    assert_eq!(ch.mori_chambers(), vec![(1, 2), (2, 3)]);
    assert_eq!(ch.rays[2].multiples, vec![rat::int(1), rat::int(1), rat::int(3)]);
}

#[test]
fn example_models() {
    let t = example();
    let steps = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
    assert_eq!(steps.len(), 3);
    assert_eq!(steps[0].kind, StepKind::Divisorial);
    assert_eq!(steps[0].model.generator_texts(), ["x", "u*y", "u*z", "u^2*t", "u^3*alpha", "u^6*xi"]);
    assert_eq!(steps[0].model.target.weights(), [1, 1, 1, 1, 3, 5]);
    assert_eq!(steps[0].exceptional(), Some(0));

    assert_eq!(steps[1].kind, StepKind::Wall);
    assert_eq!(steps[1].class, Some(WallClass::Flop));
    assert_eq!(steps[1].model.generator_texts(), ["y", "z", "alpha", "u*xi", "u*t", "x*xi", "x*t"]);
    assert!(matches!(steps[1].model.target, Target::Proj { .. }));
    assert_eq!(steps[1].model.target.weights(), [1, 1, 3, 5, 1, 6, 2]);
    let names = |v: &[usize]| v.iter().map(|&i| t.names()[i].as_str()).collect::<Vec<_>>();
    assert_eq!(names(&steps[1].negative), ["xi", "t"]);
    assert_eq!(names(&steps[1].positive), ["u", "x"]);

    assert_eq!(steps[2].kind, StepKind::Divisorial);
    assert_eq!(steps[2].exceptional(), Some(6));
    assert_eq!(steps[2].model.target.weights(), [1, 1, 1, 2, 3, 4]);
    assert_eq!(steps[2].model.scale, rat::int(4));
    assert_eq!(
        steps[2].model.generator_texts(),
        ["t^{5/4}*u", "t^{1/4}*y", "t^{1/4}*z", "t^{3/2}*x", "t^{3/4}*alpha", "xi"]
    );
}

#[test]
fn example_displayed_matrices() {
    let t = example();
    let a = normalize(&t, &int_matrix([[1, 0], [-1, 1]])).unwrap();
    assert_eq!(a.int_rows().unwrap(), [vec![0, 1, 1, 1, 3, 5, 1], vec![-1, -1, 0, 0, 0, 1, 1]]);
    let b = normalize(&t, &int_matrix([[6, -5], [2, -1]])).unwrap();
    assert_eq!(b.int_rows().unwrap(), [vec![5, 6, 1, 1, 3, 0, -4], vec![1, 2, 1, 1, 3, 4, 0]]);
    assert_eq!(ints(&a.row(1)), vec![-1, -1, 0, 0, 0, 1, 1]);
}

#[test]
fn example_transcript_mentions_every_model() {
    let t = example();
    let steps = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
    let text = link_transcript(&t, &steps);
    assert!(text.contains("[x, u*y, u*z, u^2*t, u^3*alpha, u^6*xi]"), "{text}");
    assert!(text.contains("[y, z, alpha, u*xi, u*t, x*xi, x*t]"), "{text}");
    assert!(text.contains("ℙ(1, 1, 1, 2, 3, 4)"), "{text}");
    assert_eq!(text, link_transcript(&t, &walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap()));
}

#[test]
fn ca6_ray_order() {
    let t = catalog_entry("cA6").unwrap().toric().unwrap();
    assert_eq!(
        ray_names(&t),
        vec![vec!["u"], vec!["x"], vec!["y", "z"], vec!["alpha"], vec!["beta"], vec!["t"]]
    );
}

#[test]
fn catalog_replays_pass() {
    assert_eq!(catalog().len(), 7);
    for e in catalog() {
        let r = replay(e).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert!(!r.checks.is_empty());
    }
}

#[test]
fn catalog_division_orders() {
    let expect = [("cA4", 5), ("cA5", 6), ("cA6", 7), ("cA7-1", 8), ("cA7-2", 8), ("cA7-3", 8), ("cA8", 9)];
    for (name, order) in expect {
        let e = catalog_entry(name).unwrap();
        let t = e.toric().unwrap();
        let ideal = e.ideal().unwrap();
        let params: Vec<(String, u32)> = e.param_weights(1);
        let params: Vec<(&str, u32)> = params.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let st = strict_transform(&t, &ideal[..1], "u", &params).unwrap();
        assert_eq!(st[0].order, order, "{name}");
    }
}

#[test]
fn catalog_lookup_by_family() {
    assert_eq!(catalog_entry("7.2").unwrap().name, "cA7-2");
    assert_eq!(catalog_entry("4").unwrap().name, "cA4");
    assert!(matches!(catalog_entry("cA9"), Err(Error::Input(_))));
}

#[test]
fn ca4_base_of_flop() {
    let e = catalog_entry("cA4").unwrap();
    let r = replay(e).unwrap();
    let wall = r.steps.iter().find(|s| s.kind == StepKind::Wall).unwrap();
    let ann = wall.annotation.as_deref().unwrap();
    assert_eq!(ann, "10 Atiyah flops over V(2*alpha*a_2 + C_5_0, alpha^2 - D_6_0) in general");
}

#[test]
fn projective_line_gives_two_fibrations() {
    let t = Rank2Toric::from_ints(&["a", "b"], [&[1, 0], &[0, 1]], 1).unwrap();
    let steps = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
    assert_eq!(steps.len(), 2);
    assert!(steps.iter().all(|s| s.kind == StepKind::Fibration));
    assert!(steps.iter().all(|s| s.model.kind == ModelKind::Fibration));
}

#[test]
fn product_of_lines() {
    let t = Rank2Toric::from_ints(&["a", "b", "c", "d"], [&[1, 1, 0, 0], &[0, 0, 1, 1]], 2).unwrap();
    let steps = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
    assert_eq!(steps.len(), 2);
    for s in &steps {
        assert_eq!(s.kind, StepKind::Fibration);
        assert_eq!(s.model.target.weights(), [1, 1]);
    }
}

#[test]
fn invalid_tables() {
    let cols: [&[i64]; 2] = [&[0, 1, 1], &[-1, 0, 1]];
    assert!(Rank2Toric::from_ints(&["u", "x", "y"], cols, 0).is_err());
    assert!(Rank2Toric::from_ints(&["u", "x", "y"], cols, 1).is_err());
    assert!(Rank2Toric::from_ints(&["u", "x", "y", "z"], [&[0, 1, 1, 2], &[-1, 0, 1, 1]], 1).is_err());
    assert!(Rank2Toric::from_ints(&["u", "x", "y", "z"], [&[0, 1, 1, 1], &[-1, 0, 1, 2]], 2).is_ok());
    assert!(Rank2Toric::from_ints(&["u", "u"], [&[1, 0], &[0, 1]], 1).is_err());
    assert!(Rank2Toric::from_ints(&["u", "x"], [&[0, 1], &[0, 0]], 1).is_err());
    assert!(normalize(&example(), &int_matrix([[1, 2], [2, 4]])).is_err());
}

#[test]
fn exponent_bound_is_a_resource_guard() {
    let t = example();
    assert!(matches!(walk_link(&t, 1), Err(Error::Resource(_))));
}

#[test]
fn zero_ideal_is_the_whole_quotient() {
    let f = parse_link_file("vars: u x | y z alpha xi t\nrow: 0 1 1 1 3 5 1\nrow: -1 0 1 1 3 6 2\n", Some("0\n")).unwrap();
    let degrees: Vec<[Rat; 2]> = f.ideal.iter().filter(|p| !p.is_zero()).map(|p| bidegree(&f.toric, p, &[]).unwrap()).collect();
    assert!(degrees.is_empty());
    let plain = walk_link(&f.toric, DEFAULT_EXPONENT_BOUND).unwrap();
    let on = walk_link_on(&f.toric, DEFAULT_EXPONENT_BOUND, &degrees).unwrap();
    assert_eq!(link_transcript(&f.toric, &plain), link_transcript(&f.toric, &on));
}

#[test]
fn link_file_parsing() {
    let text = "# example\nvars: u x | y z alpha xi t\nrow: 0 1 | 1 1 3 5 1\nrow: -1 0 | 1 1 3 6 2\nexceptional: u\nweights: a_2=2, C_5=5\nideal: -x*xi + alpha^2\n  - D_6\n";
    let f = parse_link_file(text, Some("ideal: a_2*y + C_5\n")).unwrap();
    assert_eq!(f.toric, example());
    assert_eq!(f.exceptional.as_deref(), Some("u"));
    assert_eq!(f.weights, vec![("a_2".to_string(), 2), ("C_5".to_string(), 5)]);
    assert_eq!(f.ideal.len(), 2);
    assert_eq!(f.ideal[0].render(), "alpha^2 - x*xi - D_6");
    assert_eq!(f.ideal[1].render(), "y*a_2 + C_5");

    let half = parse_link_file("vars: a b\nrow: 1/2 0\nrow: 0 1\nwall: 1\n", None).unwrap();
    assert_eq!(half.toric.column(0), &[Rat::new(1.into(), 2.into()), Rat::zero()]);

    for bad in [
        "row: 1 0\nrow: 0 1\n",
        "vars: a | b\nrow: 1 0\n",
        "vars: a | b\nrow: 1 q\nrow: 0 1\n",
        "vars: a | b\nrow: 1 0\nrow: 0 1\nwall: 0\n",
        "vars: a | b\nrow: 1 0\nrow: 0 1\ncolour: red\n",
    ] {
        assert!(matches!(parse_link_file(bad, None), Err(Error::Input(_))), "{bad}");
    }
    let err = parse_link_file("vars: a | b\nrow: 1 0\nrow: 0 x\n", None).unwrap_err();
    assert_eq!(err.to_string(), "invalid input: line 3: `x` is not a number");
}

#[test]
fn strict_transforms_of_the_example() {
    let t = example();
    let e = pullback_weights(&t, "u").unwrap();
    assert_eq!(ints(&e), vec![0, 0, 1, 1, 3, 6, 2]);
    let table = VarTable::new(t.names()).unwrap();
    let g = cansplit::parse("-x*xi + alpha^2 - t^3 + y^6", &table).unwrap();
    let st = strict_transform(&t, &[g], "u", &[]).unwrap();
    assert_eq!(st[0].order, 6);
    assert_eq!(st[0].transform.render(), "y^6 - t^3 + alpha^2 - x*xi");
}

fn invertible() -> impl Strategy<Value = [[i64; 2]; 2]> {
    [[-4i64..=4, -4i64..=4], [-4i64..=4, -4i64..=4]].prop_filter("invertible", |m| m[0][0] * m[1][1] != m[0][1] * m[1][0])
}

fn as_matrix(m: &[[i64; 2]; 2]) -> Matrix {
    int_matrix(*m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn basis_change_then_inverse(m in invertible()) {
        let t = example();
        let a = as_matrix(&m);
        let back = normalize(&normalize(&t, &a).unwrap(), &mat_inverse(&a).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn models_do_not_depend_on_the_basis(m in invertible(), k in 0usize..7) {
        let e = &catalog()[k];
        let t = e.toric().unwrap();
        let s = normalize(&t, &as_matrix(&m)).unwrap();
        let a = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
        let mut b = walk_link(&s, DEFAULT_EXPONENT_BOUND).unwrap();
        if m[0][0] * m[1][1] < m[0][1] * m[1][0] {
            b.reverse();
        }
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.kind, y.kind);
            prop_assert_eq!(&x.on_ray, &y.on_ray);
            prop_assert_eq!(x.model.generator_texts(), y.model.generator_texts());
            prop_assert_eq!(x.model.target.weights(), y.model.target.weights());
        }
        for v in ["x", "t"] {
            let p = ample_model_of(&t, v, DEFAULT_EXPONENT_BOUND).unwrap();
            let q = ample_model_of(&s, v, DEFAULT_EXPONENT_BOUND).unwrap();
            prop_assert_eq!(p.generators, q.generators);
        }
    }

    #[test]
    fn strict_order_is_the_pullback_weight(terms in prop::collection::vec((prop::array::uniform6(0u32..4), -3i64..=3), 1..6)) {
        let t = example();
        let e = ints(&pullback_weights(&t, "u").unwrap());
        let table = VarTable::new(&t.names()[1..]).unwrap();
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        prop_assume!(!terms.is_empty());
        let mut g = Poly::zero(&table);
        for (exps, c) in &terms {
            let mut m = Poly::int(&table, *c);
            for (i, k) in exps.iter().enumerate() {
                m = m.checked_mul(&Poly::var(&table, i).pow(*k)).unwrap();
            }
            g = g.checked_add(&m).unwrap();
        }
        prop_assume!(!g.is_zero());
        let expected = g
            .terms()
            .iter()
            .map(|(m, _)| (0..6).map(|i| m.exps()[i] as i64 * e[i + 1]).sum::<i64>())
            .min()
            .unwrap();
        let st = strict_transform(&t, std::slice::from_ref(&g), "u", &[]).unwrap();
        prop_assert_eq!(st[0].order as i64, expected);
        prop_assert!(st[0].transform.table().index_of("u").is_some());
        let u = st[0].transform.table().index_of("u").unwrap();
        prop_assert!(!st[0].transform.coeff(u, 0).is_zero());
    }

    #[test]
    fn signatures_sum_to_the_wall_class(m in invertible()) {
        let t = normalize(&example(), &as_matrix(&m)).unwrap();
        let flipped = m[0][0] * m[1][1] < m[0][1] * m[1][0];
        let steps = walk_link(&t, DEFAULT_EXPONENT_BOUND).unwrap();
        let wall = steps.iter().find(|s| s.kind == StepKind::Wall).unwrap();
        let sum: Rat = wall.signature.iter().sum();
        prop_assert_eq!(&wall.sigma, &sum);
        prop_assert!(wall.sigma.is_zero());
        let names = |v: &[usize]| v.iter().map(|&i| t.names()[i].as_str()).collect::<Vec<_>>();
        let (before, after) = if flipped { (["u", "x"], ["xi", "t"]) } else { (["xi", "t"], ["u", "x"]) };
        prop_assert_eq!(names(&wall.negative), before);
        prop_assert_eq!(names(&wall.positive), after);
    }
}
