use cansplit::poly::{parse, rat, Poly, VarTable};
use cansplit::sds::{
    apply_chain, ca4_base_points, ca5_base_points, chain, check_extended, check_generality, check_membership,
    construct, expand_forms, extended_chain, family_f, free_params, generic_f, listing_chain, param_dim,
    parse_family_file, point_jacobian, residual_h, residual_parts, ring, Coefficients, FamilyId,
};
use cansplit::singularity::{classify_can, CaIndex, GermPresentation};
use cansplit::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fam(s: &str) -> FamilyId {
    s.parse().unwrap()
}

fn p(text: &str) -> Poly {
    ring().parse(text).unwrap()
}

fn random_form(rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    let terms: Vec<String> = (0..=deg)
        .map(|k| format!("({})*y^{}*z^{k}", rng.gen_range(-3..=3), deg - k))
        .collect();
    p(&terms.join(" + "))
}

fn random_values(id: FamilyId, rng: &mut ChaCha8Rng) -> Coefficients {
    let mut c = Coefficients::new();
    for (name, deg) in free_params(id).unwrap() {
        let v = if name == "q_1" {
            p(&format!("z + ({})*y", rng.gen_range(-3..=3)))
        } else {
            random_form(rng, deg)
        };
        c.insert(name, v).unwrap();
    }
    c
}

#[test]
fn low_residuals_of_the_generic_sextic() {
    let parts = residual_parts(&generic_f(), 3, None).unwrap();
    assert_eq!(parts[2], p("xi_2"));
    let parts = residual_parts(&family_f(fam("2")).unwrap(), 3, None).unwrap();
    assert_eq!(parts[3], p("a_3"));
}

#[test]
fn residuals_vanish_up_to_n_for_every_family() {
    for id in FamilyId::all() {
        let n = u64::from(id.n);
        let parts = residual_parts(&family_f(id).unwrap(), n + 1, None).unwrap();
        for k in 2..=n {
            assert!(parts[k as usize].is_zero(), "family {id}: h_{k} = {}", parts[k as usize]);
        }
        assert!(!parts[n as usize + 1].is_zero(), "family {id}: h_{} vanishes", n + 1);
    }
}

#[test]
fn displayed_h7() {
    let h7 = residual_h(fam("6"), 7, false).unwrap();
    let a = [("a_2", p("q*r")), ("b_3", p("q*s + 4*a_1*q*r"))];
    let got = h7.substitute_named(&a.iter().map(|(n, v)| (*n, v.clone())).collect::<Vec<_>>()).unwrap();
    let shown = p("q*(r*(-12*a_0*q^2*r*s + 4*b_2*q*s - 2*b_1*q^2*r^2 + 2*c_3*q*r - 2*d_5) \
                   - s*(2*c_4 - 4*a_1*q*s))");
    assert_eq!(got, shown);
}

#[test]
fn h8_of_second_subfamily_is_divisible_by_q1() {
    let h8 = residual_h(fam("7.2"), 8, false).unwrap();
    let g = h8 + p("e_3^2*r_1^2");
    let q1 = ring().table().var("q_1").unwrap();
    assert!(g.terms().iter().all(|(m, _)| m.exps()[q1] > 0));
}

#[test]
fn residual_guard() {
    assert!(matches!(residual_h(fam("5"), 8, false), Err(Error::Resource(_))));
    assert!(residual_h(fam("5"), 7, false).is_ok());
}

#[test]
fn parameter_dimensions() {
    let expected = [
        ("1", 77),
        ("2", 74),
        ("3", 70),
        ("4", 65),
        ("5", 59),
        ("6", 52),
        ("7.1", 44),
        ("7.2", 44),
        ("7.3", 44),
        ("7.4", 44),
        ("8", 35),
    ];
    for (id, d) in expected {
        assert_eq!(param_dim(fam(id)).unwrap(), d, "family {id}");
    }
}

#[test]
fn listing_order_agrees_with_simultaneous_substitution() {
    let f = generic_f();
    for id in FamilyId::all() {
        let a = apply_chain(&f, &chain(id)).unwrap();
        let b = apply_chain(&f, &listing_chain(id)).unwrap();
        assert_eq!(a, b, "family {id}");
    }
}

#[test]
fn chains_are_idempotent() {
    for id in FamilyId::all() {
        let once = family_f(id).unwrap();
        assert_eq!(apply_chain(&once, &chain(id)).unwrap(), once, "family {id}");
    }
    for n in 9..=12 {
        let c = extended_chain(n).unwrap();
        let once = apply_chain(&generic_f(), &c).unwrap();
        assert_eq!(apply_chain(&once, &c).unwrap(), once);
    }
}

#[test]
fn extended_conditions() {
    for n in 9..=12u8 {
        let r = check_extended(n).unwrap();
        assert!(r.identities.iter().all(|i| i.holds), "n = {n}");
        assert!(r.singular_along_curve, "n = {n}");
        let f = apply_chain(&generic_f(), &extended_chain(n).unwrap()).unwrap();
        let k = u64::from(n).min(11) + 1;
        let parts = residual_parts(&f, k, None).unwrap();
        for j in 2..=u64::from(n).min(k) {
            assert!(parts[j as usize].is_zero(), "n = {n}: h_{j}");
        }
        if n <= 11 {
            assert!(!parts[k as usize].is_zero(), "n = {n}: h_{k}");
        }
    }
    assert!(extended_chain(8).is_err());
}

fn same(a: &Poly, b: &Poly) {
    assert_eq!(*a, b.embed(a.table()).unwrap());
}

#[test]
fn jacobian_at_points_with_t_zero() {
    let f = expand_forms(&generic_f()).unwrap();
    let pt = [rat::int(0), rat::int(2), rat::int(3), rat::int(0), rat::int(0)];
    let j = point_jacobian(&f, &pt).unwrap();
    let at = |text: &str| {
        let g = expand_forms(&p(text)).unwrap().embed(f.table()).unwrap();
        let t = f.table();
        g.evaluate(&[(t.var("y").unwrap(), rat::int(2)), (t.var("z").unwrap(), rat::int(3))])
    };
    same(&j.value, &at("d_6"));
    same(&j.dx, &at("c_5"));
    let d6 = expand_forms(&p("d_6")).unwrap().embed(f.table()).unwrap();
    let t = f.table().clone();
    let pt_yz = [(t.var("y").unwrap(), rat::int(2)), (t.var("z").unwrap(), rat::int(3))];
    same(&j.dy, &d6.derivative(t.var("y").unwrap()).evaluate(&pt_yz));
    same(&j.dz, &d6.derivative(t.var("z").unwrap()).evaluate(&pt_yz));
    same(&j.dt, &at("2*d_5"));
}

#[test]
fn jacobian_at_p_t() {
    let f = expand_forms(&generic_f()).unwrap();
    let t = f.table().clone();
    let pt = [rat::int(0), rat::int(0), rat::int(0), rat::int(1), rat::int(0)];
    let j = point_jacobian(&f, &pt).unwrap();
    let d1 = expand_forms(&p("d_1")).unwrap().embed(&t).unwrap();
    let e = |text: &str| expand_forms(&p(text)).unwrap();
    same(&j.value, &e("d_0"));
    same(&j.dx, &e("2*c_0"));
    same(&j.dy, &d1.derivative(t.var("y").unwrap()).scale(&rat::int(2)));
    same(&j.dz, &d1.derivative(t.var("z").unwrap()).scale(&rat::int(2)));
    same(&j.dt, &e("6*d_0"));
}

#[test]
fn random_members_pass_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in FamilyId::all() {
        for _ in 0..3 {
            let values = random_values(id, &mut rng);
            let f = construct(id, &values).unwrap();
            let c = Coefficients::from_sextic(&f).unwrap();
            let r = check_membership(&c, id).unwrap();
            assert!(r.member, "family {id}: {:?}", r.conditions);
            assert!(r.nonzero_residuals.is_empty(), "family {id}");
            assert!(r.exact, "family {id}: h_(n+1) vanished");
        }
    }
}

#[test]
fn membership_failures_carry_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = construct(fam("5"), &random_values(fam("5"), &mut rng)).unwrap();
    let c = Coefficients::from_sextic(&f).unwrap();
    let r = check_membership(&c, fam("6")).unwrap();
    assert!(!r.member);
    let six = r.conditions.iter().find(|k| k.label == "6").unwrap();
    assert!(!six.holds && six.witness.is_some());
    assert_eq!(r.nonzero_residuals, vec![6]);

    let mut c = Coefficients::new();
    c.set("b_4", "y^4").unwrap();
    let r = check_membership(&c, fam("4")).unwrap();
    let four = r.conditions.iter().find(|k| k.label == "4").unwrap();
    assert_eq!(four.witness.as_deref(), Some("y^4"));

    let r = check_membership(&Coefficients::new(), fam("7.1")).unwrap();
    assert_eq!(r.isolated_guard, Some(false));
    assert!(!r.member);
}

#[test]
fn two_ca5_points() {
    let f = p("-w^2 + x^4*t^2 + x^2*t^4 + y^6 + z^6");
    let c = Coefficients::from_sextic(&f).unwrap();
    assert_eq!(c.get("b_0"), Some(&p("1/2")));
    let r = check_membership(&c, fam("5")).unwrap();
    assert!(r.member && r.exact);
    assert_eq!(r.next_residual, "y^6 + z^6");
    let t4 = VarTable::new(&["x", "y", "z", "w"]).unwrap();
    let g = parse("-w^2 + x^4 + x^2 + y^6 + z^6", &t4).unwrap();
    let k = classify_can(&GermPresentation::new(g, 12)).unwrap();
    assert_eq!(k.index, CaIndex::Finite(5));
}

#[test]
fn coefficient_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let values = random_values(fam("1"), &mut rng);
    let f = construct(fam("1"), &values).unwrap();
    let c = Coefficients::from_sextic(&f).unwrap();
    assert_eq!(c.sextic().unwrap(), f);
    assert!(Coefficients::from_sextic(&p("-w^2 + x^5*t")).is_err());
    assert!(Coefficients::from_sextic(&p("-w^2 + x^4*t^2 + x^4*y*t")).is_err());
}

#[test]
fn coefficient_validation() {
    let mut c = Coefficients::new();
    assert!(c.set("a_2", "y^3").is_err());
    assert!(c.set("a_2", "x*y").is_err());
    assert!(c.set("nope", "y").is_err());
    assert!(c.set("a_2", "y*z - 2*z^2").is_ok());
    assert!(construct(fam("7.1"), &c).is_err());
}

#[test]
fn family_ids() {
    assert_eq!(fam("cA7-2"), FamilyId::new(7, Some(2)).unwrap());
    assert_eq!(fam("7.3").to_string(), "7.3");
    for bad in ["7", "9", "6.1", "x"] {
        assert!(bad.parse::<FamilyId>().is_err(), "{bad}");
    }
}

#[test]
fn family_file() {
    let text = "# a cA4 example\nfamily = 4\na_2 = y*z\nc_5 = y^5\n  + z^5\nd_6 = y^6 + z^6 # sextic\n";
    let file = parse_family_file(text).unwrap();
    assert_eq!(file.family, Some(fam("4")));
    assert_eq!(file.coefficients.get("c_5"), Some(&p("y^5 + z^5")));
    let err = parse_family_file("a_2 = y\n").unwrap_err();
    assert!(err.to_string().contains("line 1"));
    let file = parse_family_file("f = -w^2 + x^4*t^2 + y^6\nA_0 = 1\n").unwrap();
    assert_eq!(file.coefficients.get("d_6"), Some(&p("y^6")));
    assert_eq!(file.coefficients.get("A_0"), Some(&p("1")));
}

fn coeffs(pairs: &[(&str, &str)]) -> Coefficients {
    let mut c = Coefficients::new();
    for (k, v) in pairs {
        c.set(k, v).unwrap();
    }
    c
}

#[test]
fn ca4_base_of_flop() {
    let c = coeffs(&[("a_2", "y*z"), ("c_5", "y^5 + z^5"), ("d_6", "y^6 + 2*z^6 + y^3*z^3")]);
    let r = check_generality(fam("4"), &c).unwrap();
    assert_eq!(r.points, Some(10));
    assert!(r.passed);
    assert_eq!(ca4_base_points(&p("y*z"), &p("0"), &p("y^6 + z^6")).unwrap(), Some(10));
    let c = coeffs(&[("a_2", "y^2"), ("d_6", "y^6 + z^6")]);
    let r = check_generality(fam("4"), &c).unwrap();
    assert_eq!(r.points, Some(8));
    assert!(!r.passed);
    assert_eq!(ca4_base_points(&p("0"), &p("0"), &p("y^6")).unwrap(), None);
}

#[test]
fn ca5_base_of_flop() {
    let r = check_generality(fam("5"), &coeffs(&[("a_2", "y*z"), ("d_6", "y^6 + z^6")])).unwrap();
    assert_eq!(r.points, Some(4));
    assert!(r.passed);
    assert_eq!(ca5_base_points(&p("y*z"), &p("y^6")).unwrap(), Some(3));
    assert_eq!(ca5_base_points(&p("y^2"), &p("z^6")).unwrap(), Some(2));
    assert_eq!(ca5_base_points(&p("0"), &p("z^6")).unwrap(), None);
}

#[test]
fn generality_of_the_other_families() {
    let pass = |id: &str, c: &[(&str, &str)]| check_generality(fam(id), &coeffs(c)).unwrap().passed;
    assert!(pass("6", &[("a_2", "y*z"), ("c_4", "z^4"), ("d_5", "y^5")]));
    assert!(!pass("6", &[("a_2", "y^2"), ("c_4", "z^4")]));
    assert!(!pass("6", &[("a_2", "y*z"), ("c_4", "y*z^3")]));
    assert!(pass("7.1", &[("e_2", "y*z")]));
    assert!(!pass("7.1", &[("e_2", "y^2")]));
    assert!(pass("7.2", &[("r_1", "y"), ("q_1", "z")]));
    assert!(!pass("7.2", &[("r_1", "z"), ("q_1", "z")]));
    assert!(pass("7.3", &[("q_2", "y*z")]));
    assert!(!pass("7.3", &[("q_2", "y^2 + 2*y*z + z^2")]));
    assert!(pass("8", &[("a_0", "1"), ("A_0", "2")]));
    assert!(!pass("8", &[("a_0", "1"), ("A_0", "1")]));
    let r = check_generality(fam("7.4"), &Coefficients::new()).unwrap();
    assert!(!r.applicable);
}

#[test]
fn concrete_residuals_match_symbolic_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for id in [fam("5"), fam("7.3"), fam("8")] {
        let values = random_values(id, &mut rng);
        let k = u64::from(id.n) + 1;
        let symbolic = residual_h(id, k, false).unwrap();
        let concrete = residual_parts(&construct(id, &values).unwrap(), k, None).unwrap();
        let expected = values.substitute_into(&symbolic).unwrap();
        assert_eq!(concrete[k as usize], expected, "family {id}");
    }
}
