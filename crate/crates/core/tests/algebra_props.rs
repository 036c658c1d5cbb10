use foliation_loci::algebra::{
    eliminate, groebner_basis, parse_poly, rat, reduce_mod_ideal, Ideal, MultiPoly, TermOrder, Vars,
};
use proptest::prelude::*;

fn vars() -> Vars {
    Vars::new(&["x", "y", "z"])
}

fn poly_strategy(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0..=max_deg, 3), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        let v = vars();
        let mut p = MultiPoly::zero(&v);
        for (e, n, d) in terms {
            p += &MultiPoly::monomial(&v, e, rat(n, d));
        }
        p
    })
}

fn fixed_ideal() -> Ideal {
    let v = vars();
    let gens = ["x^2 - y*z", "y^2 - x + 1", "x*z - 2*z"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    groebner_basis(&Ideal::new(&v, gens).unwrap(), TermOrder::GrevLex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_sub_roundtrip(a in poly_strategy(4, 6), b in poly_strategy(4, 6)) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn distributive(a in poly_strategy(3, 4), b in poly_strategy(3, 4), c in poly_strategy(3, 4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn printed_form_reparses(a in poly_strategy(5, 8)) {
        prop_assert_eq!(parse_poly(&a.to_string(), &vars()).unwrap(), a);
    }

    #[test]
    fn leibniz(a in poly_strategy(3, 4), b in poly_strategy(3, 4), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_linear_and_kills_the_ideal(
        a in poly_strategy(4, 5),
        b in poly_strategy(4, 5),
        h in poly_strategy(2, 3),
    ) {
        let gb = fixed_ideal();
        let nf = |p: &MultiPoly| reduce_mod_ideal(p, &gb).unwrap();
        prop_assert_eq!(nf(&(&a + &b)), &nf(&a) + &nf(&b));
        prop_assert_eq!(nf(&nf(&a)), nf(&a));
        let g = parse_poly("y^2 - x + 1", &vars()).unwrap();
        prop_assert!(nf(&(&h * &g)).is_zero());
        prop_assert_eq!(nf(&(&a + &(&h * &g))), nf(&a));
    }

    #[test]
    fn elimination_stays_in_the_ideal(
        p in poly_strategy(2, 3),
        q in poly_strategy(2, 3),
    ) {
        // graph ideal (x − p, y − q): eliminating x leaves y − q once x is gone
        let v = vars();
        let x = MultiPoly::var(&v, 0);
        let y = MultiPoly::var(&v, 1);
        let z = MultiPoly::var(&v, 2);
        let p = p.partial_eval(&[(0, rat(0, 1)), (1, rat(0, 1))]);
        let q = q.partial_eval(&[(0, rat(0, 1)), (1, rat(0, 1))]);
        let i = Ideal::new(&v, vec![&x - &p, &y - &(&q * &z)]).unwrap();
        let e = eliminate(&i, &["x"]).unwrap();
        for g in e.gens() {
            prop_assert!(!g.vars().contains("x"));
            prop_assert!(i.contains(&g.with_vars(&v).unwrap()).unwrap());
        }
        let target = (&y - &(&q * &z)).with_vars(e.vars()).unwrap();
        prop_assert!(e.contains(&target).unwrap());
    }
}

#[test]
fn elimination_drops_variables_monotonically() {
    let v = vars();
    let gens = ["x - y^2", "y - z^3"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let i = Ideal::new(&v, gens).unwrap();
    let e1 = eliminate(&i, &["y"]).unwrap();
    let e2 = eliminate(&i, &["y", "z"]).unwrap();
    assert!(e2.is_zero_ideal());
    let twisted = parse_poly("x - z^6", e1.vars()).unwrap();
    assert!(e1.contains(&twisted).unwrap());
}
