//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use foliation_loci::algebra::{parse_poly, parse_ratfunc, rat, Ideal, MultiPoly, Rational, Vars};
use foliation_loci::foliation::{from_graph_coefficients, AffineChart, Foliation};
use foliation_loci::gauss_manin::{gauss_manin_matrix, picard_fuchs, DeRhamForm, HyperellipticFamily};
use foliation_loci::multiplicity::{macaulay_system, multiplicity_operators, OrderBoundPolicy};
use foliation_loci::oracle::{leaf_multiplicity_oracle, Multiplicity};
use foliation_loci::periods::{
    beta_blocks, eval_matrix, imaginary_part_positive, pairing_flatness_defect, pairing_matrix,
    riemann_scalar, symplectic_defect, symplectic_normalize, PeriodOracle,
};
use foliation_loci::sigma::{a_locus, sigma_equations, SigmaLocusResult, SigmaOptions};

struct Report {
    pass: bool,
    detail: String,
}

fn report(pass: bool, detail: impl Into<String>) -> Report {
    Report {
        pass,
        detail: detail.into(),
    }
}

fn seconds(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

// ---------------------------------------------------------------- helpers

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

fn fields(names: &[&str], comps: &[&[&str]], invert: &[&str]) -> Foliation {
    let v = Vars::new(names);
    let inv = invert.iter().map(|s| parse_poly(s, &v).unwrap()).collect();
    let chart = AffineChart::new(&v, vec![], inv).unwrap();
    Foliation::new(
        chart,
        comps
            .iter()
            .map(|r| r.iter().map(|s| parse_ratfunc(s, &v).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

fn ideal(f: &Foliation, gens: &[&str]) -> Ideal {
    Ideal::new(f.vars(), gens.iter().map(|g| parse_poly(g, f.vars()).unwrap()).collect()).unwrap()
}

fn family(f: &str) -> HyperellipticFamily {
    let v = Vars::new(&["x", "l"]);
    HyperellipticFamily::new(&parse_poly(f, &v).unwrap(), "x", &["l"]).unwrap()
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap()
}

/// Rationals `p/q` with small height in `(lo, hi)`, avoiding `bad`.
fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, bad: &[Rational]) -> Rational {
    loop {
        let q = rng.gen_range(2i64..=13);
        let p = rng.gen_range(lo * q + 1..hi * q);
        let r = rat(p, q);
        if !bad.contains(&r) && !r.is_integer() {
            return r;
        }
    }
}

// ---------------------------------------------------------------- criterion 1

/// Symbolic emission is used up to this many determinants; above it the
/// exact rank test decides.
const EMISSION_CAP: u128 = 500;

/// A foliation from the germ catalog together with its shifted coordinates.
struct GermSetting {
    foliation: Foliation,
    label: &'static str,
}

fn germ_settings() -> Vec<GermSetting> {
    vec![
        GermSetting {
            foliation: fields(&["x"], &[&["1"]], &[]),
            label: "d/dx on A1",
        },
        GermSetting {
            foliation: fields(&["x", "y"], &[&["1", "0"], &["0", "1"]], &[]),
            label: "coordinate A2",
        },
        GermSetting {
            foliation: fields(&["x", "y", "z"], &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]], &[]),
            label: "coordinate A3",
        },
        GermSetting {
            foliation: graph(&["x", "y"], &["x"], &[&["y"]]),
            label: "d/dx + y d/dy",
        },
        GermSetting {
            foliation: fields(&["x", "y", "z"], &[&["1", "0", "z"], &["0", "1", "0"]], &[]),
            label: "d/dx + z d/dz, d/dy",
        },
        GermSetting {
            foliation: fields(&["x", "y"], &[&["1", "(y)/(x + 3)"]], &[]),
            label: "d/dx + y/(x+3) d/dy",
        },
    ]
}

/// `u_i^{a_i}` plus higher weighted terms, in sheared shifted coordinates.
fn coordinate_germ(rng: &mut ChaCha8Rng, vars: &Vars, point: &[i64]) -> Vec<MultiPoly> {
    let n = vars.len();
    let exps: Vec<u32> = loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(1u32..=12)).collect();
        if e.iter().product::<u32>() <= 12 {
            break e;
        }
    };
    let shifted: Vec<MultiPoly> = (0..n)
        .map(|i| &MultiPoly::var(vars, i) - &MultiPoly::from_int(vars, point[i]))
        .collect();
    let images: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut u = shifted[i].clone();
            for s in shifted.iter().skip(i + 1) {
                u += &s.scale(&rat(rng.gen_range(-2i64..=2), 1));
            }
            u
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = exps[i];
            let mut p = MultiPoly::monomial(vars, e, rat(1, 1));
            for _ in 0..rng.gen_range(0..3) {
                let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0u32..5)).collect();
                let w: f64 = m.iter().zip(&exps).map(|(a, b)| *a as f64 / *b as f64).sum();
                if w > 1.0 {
                    p += &MultiPoly::monomial(vars, m, rat(rng.gen_range(-3i64..=3), 1));
                }
            }
            p.compose(&images)
        })
        .collect()
}

/// Sparse polynomials of degree 1..3 in shifted coordinates, vanishing at the point.
fn curved_germ(rng: &mut ChaCha8Rng, vars: &Vars, point: &[i64], n: usize) -> Vec<MultiPoly> {
    let dim = vars.len();
    let shifted: Vec<MultiPoly> = (0..dim)
        .map(|i| &MultiPoly::var(vars, i) - &MultiPoly::from_int(vars, point[i]))
        .collect();
    (0..n)
        .map(|_| {
            let mut p = MultiPoly::zero(vars);
            for _ in 0..rng.gen_range(1..4) {
                let mut m = MultiPoly::from_int(vars, rng.gen_range(-3i64..=3));
                for _ in 0..rng.gen_range(1..=3) {
                    m = &m * &shifted[rng.gen_range(0..dim)];
                }
                p += &m;
            }
            p
        })
        .collect()
}

fn criterion_1() -> Report {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let settings = germ_settings();
    let mut cases = 0;
    let mut disagreements = Vec::new();
    let mut by_emission = 0;
    let mut by_rank = 0;
    let mut rejected = 0;
    let mut histogram = [0usize; 13];
    let mut per_setting = vec![0usize; settings.len()];
    while cases < 60 {
        let which = cases % settings.len();
        let s = &settings[which];
        let f = &s.foliation;
        let vars = f.vars().clone();
        let point: Vec<i64> = (0..vars.len()).map(|_| rng.gen_range(-2i64..=2)).collect();
        let p = if which < 3 {
            coordinate_germ(&mut rng, &vars, &point)
        } else {
            curved_germ(&mut rng, &vars, &point, f.leaf_dim())
        };
        let pt: Vec<Rational> = point.iter().map(|&c| rat(c, 1)).collect();
        let o = leaf_multiplicity_oracle(&p, f, &pt, 13).unwrap();
        let mult = match o {
            Multiplicity::Finite(m) if (1..=12).contains(&m) => m,
            _ => {
                rejected += 1;
                continue;
            }
        };
        cases += 1;
        per_setting[which] += 1;
        histogram[mult as usize] += 1;
        for k in 1..=12u32 {
            let sys = macaulay_system(&p, f, k).unwrap();
            let vanishes = if sys.emission_cost() <= EMISSION_CAP {
                by_emission += 1;
                multiplicity_operators(&p, f, k).unwrap().vanishes_at(&pt)
            } else {
                by_rank += 1;
                sys.vanishes_at(&pt).unwrap()
            };
            if vanishes != (mult > k) {
                disagreements.push(format!("{} k={k} mult={mult}", s.label));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = disagreements.is_empty() && elapsed < Duration::from_secs(60);
    let hist: Vec<String> = histogram
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(m, c)| format!("{m}:{c}"))
        .collect();
    report(
        pass,
        format!(
            "{cases} germs over {} foliations (per foliation {:?}, {rejected} resampled), multiplicities {{{}}}; \
             {by_emission} checks by emitted operators, {by_rank} by the rank test; {} disagreements; {}",
            settings.len(),
            per_setting,
            hist.join(" "),
            disagreements.len(),
            seconds(elapsed)
        ),
    )
}

// ---------------------------------------------------------------- criterion 2

struct SigmaCase {
    label: &'static str,
    foliation: Foliation,
    v: Vec<&'static str>,
    k: usize,
    policy: OrderBoundPolicy,
    /// Sample points on `V`.
    points: Vec<Vec<Rational>>,
    /// Ground truth from leaf analysis.
    truth: fn(&[Rational]) -> bool,
    /// Whether the oracle (AboveCap for every generator of `V`) also applies.
    oracle: bool,
}

fn grid_values(count: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut d = 1;
    while out.len() < count {
        for n in -3 * d..=3 * d {
            let r = rat(n, d);
            if !out.contains(&r) {
                out.push(r);
            }
            if out.len() == count {
                break;
            }
        }
        d += 1;
    }
    out
}

fn sigma_cases() -> Vec<SigmaCase> {
    let line = grid_values(110);
    let plane: Vec<Vec<Rational>> = {
        let g = grid_values(11);
        g.iter().flat_map(|a| g.iter().map(move |b| vec![a.clone(), b.clone()])).collect()
    };
    let zero = rat(0, 1);
    let one = rat(1, 1);
    let on_axes: Vec<Vec<Rational>> = line
        .iter()
        .take(60)
        .flat_map(|r| [vec![r.clone(), zero.clone()], vec![zero.clone(), r.clone()]])
        .collect();
    let on_x_axis: Vec<Vec<Rational>> = line.iter().map(|r| vec![r.clone(), zero.clone()]).collect();
    let on_y1: Vec<Vec<Rational>> = line.iter().map(|r| vec![r.clone(), one.clone()]).collect();
    let circle: Vec<Vec<Rational>> = line
        .iter()
        .map(|t| {
            let d = rat(1, 1) + t * t;
            vec![(rat(1, 1) - t * t) / &d, (t * rat(2, 1)) / &d]
        })
        .collect();
    let g8 = grid_values(8);
    let xz: Vec<Vec<Rational>> = g8
        .iter()
        .flat_map(|a| {
            let zero = zero.clone();
            g8.iter().flat_map(move |b| {
                [
                    vec![zero.clone(), a.clone(), b.clone()],
                    vec![a.clone(), b.clone(), zero.clone()],
                ]
            })
        })
        .collect();
    let horizontal = || graph(&["x", "y"], &["x"], &[&["0"]]);
    let growth = || graph(&["x", "y"], &["x"], &[&["y"]]);
    vec![
        SigmaCase {
            label: "V(xy), d/dx",
            foliation: horizontal(),
            v: vec!["x*y"],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: on_axes,
            truth: |p| p[1].is_zero(),
            oracle: true,
        },
        SigmaCase {
            label: "V(y), d/dx + y d/dy",
            foliation: growth(),
            v: vec!["y"],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: on_x_axis.clone(),
            truth: |_| true,
            oracle: true,
        },
        SigmaCase {
            label: "V(y - 1), d/dx + y d/dy",
            foliation: growth(),
            v: vec!["y - 1"],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: on_y1,
            truth: |_| false,
            oracle: true,
        },
        SigmaCase {
            label: "V = X, d/dx",
            foliation: horizontal(),
            v: vec![],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: plane.clone(),
            truth: |_| true,
            oracle: true,
        },
        SigmaCase {
            label: "V = X, d/dx + y d/dy",
            foliation: growth(),
            v: vec![],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: plane,
            truth: |_| true,
            oracle: true,
        },
        SigmaCase {
            label: "V(y), d/dx",
            foliation: horizontal(),
            v: vec!["y"],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: on_x_axis,
            truth: |_| true,
            oracle: true,
        },
        SigmaCase {
            label: "circle, d/dx + y d/dy",
            foliation: growth(),
            v: vec!["x^2 + y^2 - 1"],
            k: 1,
            policy: OrderBoundPolicy::Heuristic,
            points: circle,
            truth: |_| false,
            oracle: true,
        },
        SigmaCase {
            label: "V(xz), leaves z = const, k = 2",
            foliation: graph(&["x", "y", "z"], &["x", "y"], &[&["0"], &["0"]]),
            v: vec!["x*z"],
            k: 2,
            policy: OrderBoundPolicy::Fixed(2),
            points: xz,
            truth: |p| p[2].is_zero(),
            oracle: false,
        },
    ]
}

fn sigma_run(c: &SigmaCase) -> SigmaLocusResult {
    let v = ideal(&c.foliation, &c.v);
    sigma_equations(&v, &c.foliation, c.k, &SigmaOptions::with_policy(c.policy)).unwrap()
}

fn criterion_2() -> Report {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for c in sigma_cases() {
        let r = sigma_run(&c);
        let v = ideal(&c.foliation, &c.v);
        let mu = r.mu.max(1);
        let mut bad = 0;
        for p in &c.points {
            assert!(v.gens().iter().all(|g| g.eval(p).is_zero()), "sample off V in {}", c.label);
            let got = r.contains(p);
            let mut want = (c.truth)(p);
            if c.oracle {
                let leaf_in_v = v.gens().iter().all(|g| {
                    leaf_multiplicity_oracle(std::slice::from_ref(g), &c.foliation, p, 2 * mu)
                        .unwrap()
                        == Multiplicity::AboveCap
                });
                if leaf_in_v != want {
                    bad += 1;
                    want = leaf_in_v;
                }
            }
            if got != want {
                bad += 1;
            }
        }
        ok &= bad == 0 && c.points.len() >= 100;
        lines.push(format!("{} [{} pts, {} bad]", c.label, c.points.len(), bad));
    }
    let elapsed = start.elapsed();
    report(
        ok && elapsed < Duration::from_secs(60),
        format!("{}; {}", lines.join(", "), seconds(elapsed)),
    )
}

// ---------------------------------------------------------------- criterion 3

fn criterion_3() -> Report {
    let params = ["c".to_string()];
    let grid: Vec<Vec<Rational>> = {
        let g = grid_values(5);
        let mut pts = Vec::new();
        for a in &g {
            for b in &g {
                for c in &g {
                    pts.push(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        // points on the expected loci as well
        for a in grid_values(20) {
            for b in grid_values(5) {
                pts.push(vec![a.clone(), b.clone(), b.clone()]);
            }
        }
        pts
    };
    let cases: [(&str, &[&str], fn(&[Rational]) -> bool); 2] = [
        ("d/dx: y = c", &["0", "0"], |p| p[1] == p[2]),
        ("d/dx + y d/dy: y = c = 0", &["y", "0"], |p| p[1].is_zero() && p[2].is_zero()),
    ];
    let mut ok = true;
    let mut lines = Vec::new();
    for (label, row, truth) in cases {
        let f = graph(&["x", "y", "c"], &["x"], &[row]);
        let v = ideal(&f, &["y - c"]);
        let r = a_locus(&v, &f, 1, &params, &SigmaOptions::default()).unwrap();
        let bad = grid.iter().filter(|p| r.contains(p) != truth(p)).count();
        let plain = sigma_equations(&v, &f, 1, &SigmaOptions::default()).unwrap();
        let no_params = a_locus(&v, &f, 1, &[], &SigmaOptions::default()).unwrap();
        let same = no_params.generators.gens() == plain.generators.gens()
            && format!("{:?}", no_params.provenance) == format!("{:?}", plain.provenance);
        ok &= bad == 0 && same;
        lines.push(format!(
            "{label} [{} pts, {bad} bad, generators {:?}, empty params identical: {same}]",
            grid.len(),
            r.generators.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()
        ));
    }
    report(ok, lines.join(", "))
}

// ---------------------------------------------------------------- criterion 4

fn criterion_4() -> Report {
    let start = Instant::now();
    let fam = family("x^3 - x^2 - l*x^2 + l*x");
    let form = DeRhamForm::new(parse_poly("1", fam.vars()).unwrap(), 1).unwrap();
    let op = picard_fuchs(&fam, &form).unwrap();
    let base = fam.base_vars().clone();
    let target: Vec<MultiPoly> = ["-1/4", "1 - 2*l", "l - l^2"]
        .iter()
        .map(|s| parse_poly(s, &base).unwrap())
        .collect();
    let cleared = op.cleared();
    // proportional: a_i * t_j == a_j * t_i
    let proportional = op.order() == 2
        && (0..3).all(|i| (0..3).all(|j| &cleared[i] * &target[j] == &cleared[j] * &target[i]));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst = 0.0f64;
    let mut points = Vec::new();
    for _ in 0..5 {
        let l0 = random_rational(&mut rng, -3, 3, &[rat(0, 1), rat(1, 1)]);
        let oracle = PeriodOracle::new(&fam, &l0, 14).unwrap();
        let d = oracle.form_derivatives(&form, 2).unwrap();
        let coeffs: Vec<f64> = target.iter().map(|t| to_f64(&t.eval(&[l0.clone()]))).collect();
        let scale = d[0].iter().map(|z| z.norm()).fold(0.0, f64::max);
        for c in 0..d[0].len() {
            let r: C64 = (0..3).map(|j| d[j][c] * coeffs[j]).sum();
            worst = worst.max(r.norm() / scale.max(1.0));
        }
        points.push(l0.to_string());
    }
    let elapsed = start.elapsed();
    report(
        proportional && worst < 1e-8 && elapsed < Duration::from_secs(120),
        format!(
            "operator `{op}` proportional to l(1-l)d^2 + (1-2l)d - 1/4: {proportional}; \
             max |L(period)| = {worst:.2e} at l0 in {{{}}}; {}",
            points.join(", "),
            seconds(elapsed)
        ),
    )
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Report {
    let mut ok = true;
    let mut lines = Vec::new();
    for f in ["x^3 - x^2 - l*x^2 + l*x", "x^5 + l*x + 1"] {
        let fam = family(f);
        let lam = pairing_matrix(&fam).unwrap();
        let conn = gauss_manin_matrix(&fam).unwrap();
        let anti = lam.is_antisymmetric();
        let iso = lam.is_isotropic();
        let flat = pairing_flatness_defect(&lam, &conn).iter().all(|d| d.is_zero());
        let norm = symplectic_normalize(&fam, &lam, &conn).unwrap();
        let sp = symplectic_defect(&norm.connection).iter().all(|d| d.is_zero());
        let mut line = format!("{f}: antisymmetric {anti}, isotropic {iso}, flat {flat}, symplectic {sp}");
        let mut case_ok = anti && iso && flat && sp;
        if fam.genus() == 1 {
            let e = lam.matrix().get(0, 1).to_string();
            case_ok &= e == "4" || e == "-4";
            line.push_str(&format!(", entry(dx/y, x dx/y) = {e}"));
        }
        ok &= case_ok;
        lines.push(line);
    }
    report(ok, lines.join("; "))
}

// ---------------------------------------------------------------- criterion 6

fn criterion_6() -> Report {
    let fam = family("x^3 - x^2 - l*x^2 + l*x");
    let conn = gauss_manin_matrix(&fam).unwrap();
    let lam = pairing_matrix(&fam).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut ok = true;
    let mut riemann = 0.0f64;
    let mut fitted = 0.0f64;
    let mut section = 0.0f64;
    let mut all_positive = true;
    let mut points = Vec::new();
    let c = riemann_scalar();
    for _ in 0..3 {
        let l0 = random_rational(&mut rng, -3, 3, &[rat(0, 1), rat(1, 1)]);
        let oracle = PeriodOracle::new(&fam, &l0, 14).unwrap();
        let pm = oracle.period_matrix();
        let p = &pm.periods;
        let lv = eval_matrix(lam.matrix(), &[l0.clone()]).unwrap();
        // Π J Πᵀ against the fixed constant times the exact pairing
        let n = p.len();
        let g = n / 2;
        for i in 0..n {
            for j in 0..n {
                let mut s = C64::zero();
                for a in 0..g {
                    s += p[i][a] * p[j][a + g] - p[i][a + g] * p[j][a];
                }
                riemann = riemann.max((s - c * lv[i][j]).norm());
            }
        }
        fitted = fitted.max(pm.riemann_residual);
        let h = 1e-4;
        let (plus, _) = oracle.periods_at_offset(h);
        let (minus, _) = oracle.periods_at_offset(-h);
        let om = eval_matrix(conn.matrix(0), &[l0.clone()]).unwrap();
        for i in 0..n {
            for col in 0..n {
                let fd = (plus[i][col] - minus[i][col]) / (2.0 * h);
                let rhs: C64 = (0..n).map(|k| om[i][k] * p[k][col]).sum();
                section = section.max((fd - rhs).norm());
            }
        }
        let tau = beta_blocks(&pm).unwrap();
        all_positive &= imaginary_part_positive(&tau);
        points.push(format!("{l0} (tau = {:.6}+{:.6}i)", tau[0][0].re, tau[0][0].im));
    }
    ok &= riemann < 1e-8 && fitted < 1e-8 && section < 1e-6 && all_positive;
    report(
        ok,
        format!(
            "|PJP^T - (-2 pi i)Lambda| = {riemann:.2e}, normalized fitted residual = {fitted:.2e}, \
             |dP/dl - Omega P| (h = 1e-4) = {section:.2e}, Im tau > 0: {all_positive}; l0 in {{{}}}",
            points.join(", ")
        ),
    )
}

// ---------------------------------------------------------------- criterion 7

fn ledger_ok(r: &SigmaLocusResult) -> bool {
    u128::from(r.max_degree) <= r.degree_bound
        && r.provenance.iter().all(|s| u128::from(s.max_degree) <= s.degree_bound)
}

/// Largest degree among the coefficients emitted by the stages (before the
/// generators are merged), or of `V` when no stage ran.
fn stage_degree(r: &SigmaLocusResult) -> u32 {
    r.provenance.iter().map(|s| s.max_degree).max().unwrap_or(r.max_degree)
}

fn monotone(xs: &[u128]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1]) || xs.windows(2).all(|w| w[0] >= w[1])
}

fn criterion_7() -> Report {
    let mut runs = 0;
    let mut bounded = true;
    let mut mono_mu = true;
    let mut mono_k = true;
    let mut notes = Vec::new();
    for c in sigma_cases() {
        let v = ideal(&c.foliation, &c.v);
        let mus: &[u32] = if c.foliation.leaf_dim() == 1 { &[1, 2, 3, 4] } else { &[1, 2] };
        let mut bounds = Vec::new();
        let mut degs = Vec::new();
        for &mu in mus {
            let r = sigma_equations(&v, &c.foliation, c.k, &SigmaOptions::with_policy(OrderBoundPolicy::Fixed(mu)))
                .unwrap();
            runs += 1;
            bounded &= ledger_ok(&r);
            bounds.push(r.degree_bound);
            degs.push(u128::from(stage_degree(&r)));
        }
        let b_up = bounds.windows(2).all(|w| w[0] <= w[1]);
        let d_up = degs.windows(2).all(|w| w[0] <= w[1]);
        if !(b_up && d_up) {
            mono_mu = false;
            notes.push(format!("{}: bound {:?}, stage degree {:?} over mu {:?}", c.label, bounds, degs, mus));
        }
    }
    // k from 1 to n on two-dimensional leaves
    let f = graph(&["x", "y", "z"], &["x", "y"], &[&["0"], &["0"]]);
    for gens in [&["x*z"][..], &["x*z", "y*z"][..]] {
        let v = ideal(&f, gens);
        let mut bounds = Vec::new();
        let mut degs = Vec::new();
        for k in 1..=2 {
            let r = sigma_equations(&v, &f, k, &SigmaOptions::with_policy(OrderBoundPolicy::Fixed(2))).unwrap();
            runs += 1;
            bounded &= ledger_ok(&r);
            bounds.push(r.degree_bound);
            degs.push(u128::from(stage_degree(&r)));
        }
        let ok = monotone(&bounds) && monotone(&degs);
        mono_k &= ok;
        notes.push(format!("V({}) over k = 1, 2: bound {:?}, stage degree {:?}", gens.join(", "), bounds, degs));
    }
    report(
        bounded && mono_mu && mono_k,
        format!(
            "{runs} runs, all ledgers within the bound: {bounded}; monotone in mu: {mono_mu}; \
             monotone in k: {mono_k}; {}",
            notes.join("; ")
        ),
    )
}

// ---------------------------------------------------------------- criterion 8

fn catalog() -> Vec<(&'static str, &'static str, Vec<&'static str>)> {
    vec![
        ("sigma", "lines_union.job", vec![]),
        ("sigma", "invariant_line.job", vec![]),
        ("sigma", "transverse_line.job", vec![]),
        ("sigma", "whole_plane.job", vec![]),
        ("sigma", "planes_xz.job", vec![]),
        ("a-locus", "parameter_line.job", vec![]),
        ("a-locus", "parameter_growth.job", vec![]),
        ("check-foliation", "coordinate_foliation.job", vec![]),
        ("check-foliation", "noncommuting.job", vec![]),
        ("mult-ops", "simple_zero.job", vec![]),
        ("mult-ops", "double_zero.job", vec![]),
        ("gauss-manin", "legendre.job", vec![]),
        ("picard-fuchs", "legendre.job", vec![]),
        ("picard-fuchs", "constant_family.job", vec![]),
        ("pairing", "legendre.job", vec![]),
        ("normalize", "legendre.job", vec![]),
        ("periods", "legendre.job", vec![]),
        ("gauss-manin", "genus_two.job", vec![]),
        ("pairing", "genus_two.job", vec![]),
        ("normalize", "genus_two.job", vec![]),
        ("periods", "genus_two.job", vec![]),
    ]
}

fn criterion_8() -> Report {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("jobs");
    let mut differing = Vec::new();
    let mut count = 0;
    for (cmd, job, extra) in catalog() {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_foliation-loci"))
                .arg(cmd)
                .args(&extra)
                .arg(dir.join(job))
                .output()
                .expect("binary runs")
        };
        let a = run();
        let b = run();
        count += 1;
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            differing.push(format!("{cmd} {job}"));
        }
    }
    report(
        differing.is_empty(),
        format!("{count} catalog jobs run twice, differing: {differing:?}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Report); 8] = [
        ("multiplicity oracle agreement", criterion_1),
        ("sigma catalog", criterion_2),
        ("A(k) with parameters", criterion_3),
        ("Legendre Picard-Fuchs", criterion_4),
        ("symplectic identities", criterion_5),
        ("numeric Riemann relations", criterion_6),
        ("degree ledgers", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    let mut ran = 0;
    let mut err = std::io::stderr();
    // ACCEPTANCE_ONLY=4,6 runs a subset
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(i + 1))) {
            continue;
        }
        let r = f();
        ran += 1;
        if !r.pass {
            failed += 1;
        }
        let _ = writeln!(
            err,
            "criterion {}: {} ({name}): {}",
            i + 1,
            if r.pass { "PASS" } else { "FAIL" },
            r.detail
        );
    }
    let _ = writeln!(err, "acceptance: {} of {} criteria passed", ran - failed, ran);
    if failed > 0 {
        std::process::exit(1);
    }
}
