use num_traits::Zero;
use foliation_loci::algebra::{parse_poly, parse_ratfunc, rat, Ideal, Rational, Vars};
use foliation_loci::foliation::{from_graph_coefficients, AffineChart, Foliation};
use foliation_loci::multiplicity::OrderBoundPolicy;
use foliation_loci::sigma::{sigma_equations, SigmaLocusResult, SigmaOptions};

fn graph(names: &[&str], leaf: &[&str], c: &[&[&str]]) -> Foliation {
    let v = Vars::new(names);
    from_graph_coefficients(
        c.iter()
            .map(|r| r.iter().map(|s| parse_ratfunc(s, &v).unwrap()).collect())
            .collect(),
        AffineChart::affine_space(&v),
        &leaf.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    )
    .unwrap()
}

fn ideal(f: &Foliation, gens: &[&str]) -> Ideal {
    Ideal::new(f.vars(), gens.iter().map(|g| parse_poly(g, f.vars()).unwrap()).collect()).unwrap()
}

fn on(i: &Ideal, p: &[Rational]) -> bool {
    i.gens().iter().all(|g| g.eval(p).is_zero())
}

fn grid(dim: usize) -> Vec<Vec<Rational>> {
    let vals: Vec<Rational> = (-2..=2).map(|a| rat(a, 1)).chain([rat(1, 2), rat(-3, 2)]).collect();
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn fixed(mu: u32) -> SigmaOptions {
    SigmaOptions::with_policy(OrderBoundPolicy::Fixed(mu))
}

fn pattern(r: &SigmaLocusResult, v: &Ideal, pts: &[Vec<Rational>]) -> Vec<bool> {
    pts.iter().filter(|p| on(v, p)).map(|p| r.contains(p)).collect()
}

#[test]
fn locus_shrinks_as_k_grows() {
    // leaves z = const; V(xz) contains the leaf z = 0 and meets the others in lines
    let f = graph(&["x", "y", "z"], &["x", "y"], &[&["0"], &["0"]]);
    let v = ideal(&f, &["x*z"]);
    let s1 = sigma_equations(&v, &f, 1, &fixed(2)).unwrap();
    let s2 = sigma_equations(&v, &f, 2, &fixed(2)).unwrap();
    for p in grid(3).iter().filter(|p| on(&v, p)) {
        assert!(s1.contains(p));
        assert_eq!(s2.contains(p), p[2].is_zero(), "{p:?}");
        if s2.contains(p) {
            assert!(s1.contains(p));
        }
    }
    for r in [&s1, &s2] {
        assert!(u128::from(r.max_degree) <= r.degree_bound);
    }
}

#[test]
fn raising_the_order_keeps_the_membership_pattern() {
    let cases: [(&[&str], &[&[&str]], &[&str]); 3] = [
        (&["x"], &[&["0"]], &["x*y"]),
        (&["x"], &[&["y"]], &["y"]),
        (&["x"], &[&["y"]], &["y - 1"]),
    ];
    let pts = grid(2);
    for (leaf, c, gens) in cases {
        let f = graph(&["x", "y"], leaf, c);
        let v = ideal(&f, gens);
        let base = sigma_equations(&v, &f, 1, &fixed(2)).unwrap();
        let higher = sigma_equations(&v, &f, 1, &fixed(4)).unwrap();
        assert_eq!(pattern(&base, &v, &pts), pattern(&higher, &v, &pts), "{gens:?}");
        assert!(higher.max_degree >= base.max_degree || higher.is_empty_locus());
        assert!(higher.degree_bound >= base.degree_bound);
    }
}

#[test]
fn reversed_generators_give_the_same_locus() {
    // V = V(y) ∪ V(x) as (xy, x^2 y) in a 1-leaf foliation of the plane
    let f = graph(&["x", "y"], &["x"], &[&["0"]]);
    let a = ideal(&f, &["x*y", "x^2*y + y^2"]);
    let b = ideal(&f, &["x^2*y + y^2", "x*y"]);
    let ra = sigma_equations(&a, &f, 1, &fixed(3)).unwrap();
    let rb = sigma_equations(&b, &f, 1, &fixed(3)).unwrap();
    assert_eq!(ra.generators.gens(), rb.generators.gens());
    for p in grid(2).iter().filter(|p| on(&a, p)) {
        assert_eq!(ra.contains(p), p[1].is_zero(), "{p:?}");
    }
}

#[test]
fn provenance_is_sorted_and_complete() {
    let f = graph(&["x", "y"], &["x"], &[&["0"]]);
    let v = ideal(&f, &["x*y", "y^2", "x^2*y"]);
    let r = sigma_equations(&v, &f, 1, &fixed(2)).unwrap();
    assert_eq!(r.subsets_used, 3);
    let subsets: Vec<_> = r.provenance.iter().map(|s| s.subset.clone()).collect();
    let mut sorted = subsets.clone();
    sorted.sort();
    assert_eq!(subsets, sorted);
    assert!(r.rigorous);
    for s in &r.provenance {
        assert!(u128::from(s.max_degree) <= s.degree_bound);
    }
}
