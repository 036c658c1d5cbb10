use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use foliation_loci::algebra::{parse_poly, rat, MultiPoly, Rational, RationalFunc, Vars};
use foliation_loci::foliation::from_connection;
use foliation_loci::gauss_manin::{
    gauss_manin_matrix, griffiths_dwork_reduce, DeRhamForm, HyperellipticFamily,
};
use foliation_loci::oracle::picard_flow;
use foliation_loci::periods::{
    pairing_flatness_defect, pairing_matrix, symplectic_defect, symplectic_normalize, PeriodOracle,
};

fn family(f: &str, base: &[&str]) -> HyperellipticFamily {
    let mut names = vec!["x"];
    names.extend_from_slice(base);
    let v = Vars::new(&names);
    HyperellipticFamily::new(&parse_poly(f, &v).unwrap(), "x", base).unwrap()
}

fn catalog() -> Vec<HyperellipticFamily> {
    vec![
        family("x^3 - x^2 - l*x^2 + l*x", &["l"]),
        family("x^5 + l*x + 1", &["l"]),
        family("x^3 + a*x + b", &["a", "b"]),
        family("x^5 - x + l", &["l"]),
        family("x^7 + l*x^2 + 1", &["l"]),
    ]
}

#[test]
fn pairing_is_flat_and_normalizes_to_j() {
    for fam in catalog() {
        let lam = pairing_matrix(&fam).unwrap();
        assert!(lam.is_antisymmetric() && lam.is_isotropic(), "{}", fam.f());
        let conn = gauss_manin_matrix(&fam).unwrap();
        for d in pairing_flatness_defect(&lam, &conn) {
            assert!(d.is_zero(), "{}", fam.f());
        }
        let norm = symplectic_normalize(&fam, &lam, &conn).unwrap();
        for d in symplectic_defect(&norm.connection) {
            assert!(d.is_zero(), "{}", fam.f());
        }
    }
}

fn to_c(r: &Rational) -> C64 {
    C64::new(r.to_f64().unwrap(), 0.0)
}

#[test]
fn flow_of_the_connection_transports_periods() {
    // leaf of the connection foliation through (λ₀, I) is the fundamental
    // solution G with Π(λ₀ + h) = G(h) Π(λ₀)
    let fam = family("x^3 - x^2 - l*x^2 + l*x", &["l"]);
    let conn = gauss_manin_matrix(&fam).unwrap();
    let fol = from_connection(&conn, "g").unwrap();
    let l0 = rat(3, 7);
    let mut point = vec![l0.clone()];
    point.extend([rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
    let order = 14;
    let flow = picard_flow(&fol, &point, order).unwrap();
    let oracle = PeriodOracle::new(&fam, &l0, 14).unwrap();
    let (p0, _) = oracle.periods_at_offset(0.0);
    for h in [0.01f64, -0.02] {
        let g: Vec<C64> = flow[1..]
            .iter()
            .map(|s| {
                (0..=order).fold(C64::zero(), |acc, j| {
                    acc + to_c(&s.coeff(&[j])) * h.powi(j as i32)
                })
            })
            .collect();
        let (ph, _) = oracle.periods_at_offset(h);
        for r in 0..2 {
            for c in 0..2 {
                let v = g[2 * r] * p0[0][c] + g[2 * r + 1] * p0[1][c];
                assert!((v - ph[r][c]).norm() < 1e-9, "h = {h}: {v} vs {}", ph[r][c]);
            }
        }
    }
}

#[test]
fn scalar_factor_moves_through_the_connection() {
    // ∂(g ω_i) = g′ ω_i + g ∇ω_i for a base function g
    let fam = family("x^5 + l*x + 1", &["l"]);
    let conn = gauss_manin_matrix(&fam).unwrap();
    let v = fam.vars().clone();
    let g = parse_poly("l^2 + 3*l", &v).unwrap();
    let gb = RationalFunc::from_poly(parse_poly("l^2 + 3*l", fam.base_vars()).unwrap());
    let dg = gb.derivative(0);
    for i in 0..4 {
        let xi = MultiPoly::monomial(&v, vec![i, 0], rat(1, 1));
        let form = DeRhamForm::new(&g * &xi, 1).unwrap();
        let lhs = fam.derivative_coords(&form, 0).unwrap();
        for (c, l) in lhs.iter().enumerate() {
            let mut want = &gb * conn.matrix(0).get(i as usize, c);
            if c == i as usize {
                want = &want + &dg;
            }
            assert_eq!(l, &want.with_vars(l.vars()).unwrap(), "i = {i}, c = {c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_forms_do_not_change_the_class(
        which in 0usize..3,
        coeffs in proptest::collection::vec(-4i64..=4, 6),
        pole_idx in 0usize..3,
        exact in proptest::collection::vec((0u32..5, -3i64..=3), 1..4),
    ) {
        let fams = [
            family("x^3 - x^2 - l*x^2 + l*x", &["l"]),
            family("x^5 + l*x + 1", &["l"]),
            family("x^3 + a*x + b", &["a", "b"]),
        ];
        let fam = &fams[which];
        let pole = [1u32, 3, 5][pole_idx];
        let v = fam.vars().clone();
        let mut num = MultiPoly::zero(&v);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; v.len()];
            e[0] = j as u32;
            num += &MultiPoly::monomial(&v, e, rat(*c, 1));
        }
        let base = griffiths_dwork_reduce(&DeRhamForm::new(num.clone(), pole).unwrap(), fam).unwrap();
        let mut shifted = num;
        for (j, c) in exact {
            let ex = fam.exact_form(j, pole);
            shifted += &ex.num.scale(&rat(c, 1));
        }
        let moved = griffiths_dwork_reduce(&DeRhamForm::new(shifted, pole).unwrap(), fam).unwrap();
        prop_assert_eq!(base, moved);
    }
}
