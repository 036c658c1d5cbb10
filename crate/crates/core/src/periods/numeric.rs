//! Floating-point period matrices over a one-dimensional base.
//!
//! Cycles: the finite branch points are sorted by (real, imaginary) part and
//! joined into a monotone polygonal chain; `γ_k` is a rectangle around the
//! k-th link that excludes every other branch point. On such a rectangle the
//! branch `√f = (x − m)·√(1 − (r/(x − m))²) · Π_j √(x − e_j)` is continuous,
//! each factor `√(x − e_j)` being taken as `√w_j·√((x − e_j)/w_j)` with
//! `w_j = m − e_j`. The intersection matrix of the `γ_k` is tridiagonal with
//! unknown signs; the signs are fixed by the Riemann equality against the
//! exact pairing and the orientation by the Riemann inequality.

use std::sync::OnceLock;

use num_complex::Complex64 as C64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{Matrix, MultiPoly, Rational, RationalFunc, Vars};
use crate::error::{Error, Result};
use crate::gauss_manin::{DeRhamForm, HyperellipticFamily};

use super::pairing::{normalizing_change, pairing_matrix};

const GL_NODES: usize = 20;
const MAX_DEPTH: u32 = 40;

#[derive(Clone, Debug)]
pub struct PeriodMatrixNumeric {
    pub lambda: Rational,
    /// Row `i` integrates `xⁱ dx/y`; columns are `δ_1..δ_2g = b_1..b_g, a_1..a_g`.
    pub periods: Vec<Vec<C64>>,
    pub error_estimate: f64,
    /// `c` with `Π J Πᵀ ≈ c·Λ`.
    pub scalar: C64,
    /// `max |N J Nᵀ − c J|` for the symplectically normalized periods `N = MΠ`.
    pub riemann_residual: f64,
}

impl PeriodMatrixNumeric {
    pub fn genus(&self) -> usize {
        self.periods.len() / 2
    }
}

fn gauss_legendre() -> &'static (Vec<f64>, Vec<f64>) {
    static GL: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    GL.get_or_init(|| {
        let n = GL_NODES;
        let mut xs = vec![0.0; n];
        let mut ws = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

fn eval_poly(c: &[C64], x: C64) -> C64 {
    c.iter().rev().fold(C64::zero(), |acc, a| acc * x + a)
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Simple roots of a monic polynomial (ascending coefficients) by
/// Durand–Kerner followed by Newton polishing.
pub fn polynomial_roots(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let bound = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(bound * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for i in 0..n {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = eval_poly(coeffs, z[i]) / den;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * bound {
            break;
        }
    }
    let deriv: Vec<C64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();
    for r in &mut z {
        for _ in 0..3 {
            let d = eval_poly(&deriv, *r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval_poly(coeffs, *r) / d;
        }
    }
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    z
}

fn dist_to_segment(p: C64, a: C64, b: C64) -> f64 {
    let d = b - a;
    let t = ((p - a) * d.conj()).re / d.norm_sqr();
    let t = t.clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

#[derive(Clone, Debug)]
struct Loop {
    m: C64,
    r: C64,
    corners: [C64; 4],
    // (e_j, w_j, √w_j) for the branch points off this link
    others: Vec<(C64, C64, C64)>,
}

impl Loop {
    fn new(roots: &[C64], k: usize) -> Loop {
        let (a, b) = (roots[k], roots[k + 1]);
        let m = (a + b) * 0.5;
        let r = (b - a) * 0.5;
        let len = (b - a).norm();
        let clear = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k && *j != k + 1)
            .map(|(_, e)| dist_to_segment(*e, a, b))
            .fold(f64::INFINITY, f64::min);
        let delta = (0.4 * len).min(0.6 * clear);
        let u = (b - a) / len;
        let n = u * C64::i();
        let corners = [
            a - u * delta - n * delta,
            b + u * delta - n * delta,
            b + u * delta + n * delta,
            a - u * delta + n * delta,
        ];
        let others = roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k && *j != k + 1)
            .map(|(_, e)| {
                let w = m - e;
                (*e, w, w.sqrt())
            })
            .collect();
        Loop {
            m,
            r,
            corners,
            others,
        }
    }

    /// The continuous branch of `√f` on the rectangle.
    fn branch(&self, x: C64) -> C64 {
        let z = x - self.m;
        let q = self.r / z;
        let mut out = z * (C64::new(1.0, 0.0) - q * q).sqrt();
        for (e, w, sw) in &self.others {
            out *= sw * ((x - e) / w).sqrt();
        }
        out
    }
}

type Kernel<'a> = dyn Fn(C64, C64, &mut [C64]) + Sync + 'a;

fn panel(kernel: &Kernel<'_>, lp: &Loop, p: C64, q: C64, width: usize) -> Vec<C64> {
    let (xs, ws) = gauss_legendre();
    let half = (q - p) * 0.5;
    let mid = (p + q) * 0.5;
    let mut acc = vec![C64::zero(); width];
    let mut buf = vec![C64::zero(); width];
    for (s, w) in xs.iter().zip(ws) {
        let x = mid + half * *s;
        kernel(x, lp.branch(x), &mut buf);
        for (a, v) in acc.iter_mut().zip(&buf) {
            *a += v * half * *w;
        }
    }
    acc
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    kernel: &Kernel<'_>,
    lp: &Loop,
    p: C64,
    q: C64,
    whole: Vec<C64>,
    tol: f64,
    depth: u32,
    out: &mut [C64],
    err: &mut f64,
) {
    let mid = (p + q) * 0.5;
    let left = panel(kernel, lp, p, mid, whole.len());
    let right = panel(kernel, lp, mid, q, whole.len());
    let diff = whole
        .iter()
        .zip(left.iter().zip(&right))
        .map(|(w, (l, r))| (w - l - r).norm())
        .fold(0.0, f64::max);
    // below roundoff of the panel itself further splitting cannot help
    let mag = whole.iter().map(|w| w.norm()).fold(0.0, f64::max);
    if diff <= tol.max(64.0 * f64::EPSILON * mag) || depth >= MAX_DEPTH {
        for (o, (l, r)) in out.iter_mut().zip(left.iter().zip(&right)) {
            *o += l + r;
        }
        *err += diff;
        return;
    }
    adapt(kernel, lp, p, mid, left, tol / 2.0, depth + 1, out, err);
    adapt(kernel, lp, mid, q, right, tol / 2.0, depth + 1, out, err);
}

fn integrate_loop(kernel: &Kernel<'_>, lp: &Loop, width: usize, tol: f64) -> (Vec<C64>, f64) {
    let mut out = vec![C64::zero(); width];
    let mut err = 0.0;
    for e in 0..4 {
        let (p, q) = (lp.corners[e], lp.corners[(e + 1) % 4]);
        let whole = panel(kernel, lp, p, q, width);
        adapt(kernel, lp, p, q, whole, tol / 4.0, 0, &mut out, &mut err);
    }
    (out, err)
}

/// Integer rows `b_1..b_g, a_1..a_g` with `⟨a_j, b_j⟩ = 1` and all other
/// pairings zero, for a unimodular antisymmetric `k`.
fn symplectic_basis(k: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = k.len();
    let pair = |u: &[i64], v: &[i64]| -> i64 {
        (0..n)
            .map(|i| (0..n).map(|j| u[i] * k[i][j] * v[j]).sum::<i64>())
            .sum()
    };
    let mut rest: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let (mut bs, mut as_) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let mut found = None;
        'search: for i in 0..rest.len() {
            for j in 0..rest.len() {
                let p = pair(&rest[i], &rest[j]);
                if p == 1 || p == -1 {
                    found = Some((i, j, p));
                    break 'search;
                }
            }
        }
        let (i, j, s) = found?;
        let a = rest[i].clone();
        let b: Vec<i64> = rest[j].iter().map(|x| x * s).collect();
        rest = rest
            .into_iter()
            .enumerate()
            .filter(|(t, _)| *t != i && *t != j)
            .map(|(_, v)| {
                let vb = pair(&v, &b);
                let va = pair(&v, &a);
                v.iter()
                    .zip(a.iter().zip(&b))
                    .map(|(x, (y, z))| x - vb * y + va * z)
                    .collect()
            })
            .collect();
        as_.push(a);
        bs.push(b);
    }
    bs.extend(as_);
    Some(bs)
}

fn cmat_mul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let m = b[0].len();
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<C64>]) -> Vec<Vec<C64>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// `X` with `B X = A` by Gaussian elimination with partial pivoting.
fn csolve(b: &[Vec<C64>], a: &[Vec<C64>]) -> Option<Vec<Vec<C64>>> {
    let n = b.len();
    let scale = b.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let mut m: Vec<Vec<C64>> = b
        .iter()
        .zip(a)
        .map(|(r, s)| r.iter().chain(s.iter()).copied().collect())
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].norm().total_cmp(&m[j][c].norm()))?;
        if m[p][c].norm() < 1e-12 * scale {
            return None;
        }
        m.swap(c, p);
        let piv = m[c][c];
        for v in m[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = m[r][c];
                if f != C64::zero() {
                    let row = m[c].clone();
                    for (x, y) in m[r].iter_mut().zip(&row) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Whether the symmetric part of `a` is positive definite (Cholesky).
fn positive_definite(a: &[Vec<f64>]) -> bool {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            let aij = 0.5 * (a[i][j] + a[j][i]);
            if i == j {
                let d = aij - s;
                if d <= 0.0 {
                    return false;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (aij - s) / l[j][j];
            }
        }
    }
    true
}

/// `β = B⁻¹A` from the blocks `A = ∫_{b_j} ω_i`, `B = ∫_{a_j} ω_i` of the
/// holomorphic rows.
pub fn beta_blocks(pi: &PeriodMatrixNumeric) -> Result<Vec<Vec<C64>>> {
    let g = pi.genus();
    let a: Vec<Vec<C64>> = (0..g).map(|i| pi.periods[i][..g].to_vec()).collect();
    let b: Vec<Vec<C64>> = (0..g).map(|i| pi.periods[i][g..].to_vec()).collect();
    csolve(&b, &a).ok_or(Error::SingularBBlock)
}

/// `max |τ − τᵀ|`.
pub fn symmetry_residual(tau: &[Vec<C64>]) -> f64 {
    let n = tau.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (tau[i][j] - tau[j][i]).norm())
        .fold(0.0, f64::max)
}

pub fn imaginary_part_positive(tau: &[Vec<C64>]) -> bool {
    positive_definite(&tau.iter().map(|r| r.iter().map(|z| z.im).collect()).collect::<Vec<_>>())
}

/// The constant `c` in `Π J Πᵀ = c·Λ` for the residue pairing `Λ` and a
/// symplectic cycle basis with `Im(B⁻¹A) > 0`: `c = −2πi`.
pub fn riemann_scalar() -> C64 {
    C64::new(0.0, -2.0 * std::f64::consts::PI)
}

/// Numerical evaluation of a matrix of rational functions.
pub fn eval_matrix(m: &Matrix<RationalFunc>, point: &[Rational]) -> Option<Vec<Vec<C64>>> {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| c.eval(point).map(|q| C64::new(to_f64(&q), 0.0)))
                .collect()
        })
        .collect()
}

/// Expansion of `p(x, λ₀ + ε)` as `Σ_k ε^k p_k(x)`, `p_k` as ascending
/// coefficient lists.
fn expand_at(p: &MultiPoly, fam: &HyperellipticFamily, lambda: &Rational) -> Result<Vec<Vec<C64>>> {
    let p = p.with_vars(fam.vars())?;
    let eps = fam.vars().fresh("e");
    let ext = Vars::new(&[fam.x().to_string(), eps]);
    let images = [
        MultiPoly::var(&ext, 0),
        &MultiPoly::var(&ext, 1) + &MultiPoly::constant(&ext, lambda.clone()),
    ];
    let q = p.compose(&images).with_vars(&ext)?;
    Ok(q.univariate_coeffs(1)
        .iter()
        .map(|c| {
            c.univariate_coeffs(0)
                .iter()
                .map(|t| C64::new(to_f64(&t.constant_value().unwrap_or_default()), 0.0))
                .collect()
        })
        .collect())
}

/// Coefficients of `(1 + u)^r` from those of `u` (with `u_0 = 0`).
fn binomial_series(u: &[C64], r: f64, n: usize) -> Vec<C64> {
    let mut h = vec![C64::new(1.0, 0.0)];
    for k in 1..n {
        let mut acc = C64::zero();
        for j in 1..=k.min(u.len() - 1) {
            acc += u[j] * h[k - j] * (r * j as f64 - (k - j) as f64);
        }
        h.push(acc / k as f64);
    }
    h
}

/// Contours, cycle basis and normalization at a fixed base point.
pub struct PeriodOracle {
    genus: usize,
    lambda: Rational,
    fk: Vec<Vec<C64>>,
    roots: Vec<C64>,
    loops: Vec<Loop>,
    cycles: Vec<Vec<i64>>,
    normalizer: Vec<Vec<C64>>,
    tol: f64,
    fam: HyperellipticFamily,
}

impl PeriodOracle {
    /// `prec` is the requested number of correct decimal digits (at most 15).
    pub fn new(fam: &HyperellipticFamily, lambda: &Rational, prec: u32) -> Result<PeriodOracle> {
        if fam.base_vars().len() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "numeric periods need a one-dimensional base, got {}",
                fam.base_vars().len()
            )));
        }
        let tol = 10f64.powi(-(prec.clamp(1, 15) as i32));
        let point = [lambda.clone()];
        if fam.discriminant().eval(&point).is_zero() {
            return Err(Error::BranchPointCollision { separation: 0.0 });
        }
        let fk = expand_at(fam.f(), fam, lambda)?;
        let roots = polynomial_roots(&fk[0]);
        let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let sep = (0..roots.len())
            .flat_map(|i| (i + 1..roots.len()).map(move |j| (i, j)))
            .map(|(i, j)| (roots[i] - roots[j]).norm())
            .fold(f64::INFINITY, f64::min);
        if sep < 1e-6 * scale {
            return Err(Error::BranchPointCollision { separation: sep });
        }
        let g = fam.genus();
        let loops = (0..2 * g).map(|k| Loop::new(&roots, k)).collect();
        let lam = pairing_matrix(fam)?;
        let normalizer = eval_matrix(&normalizing_change(&lam, fam.base_vars())?, &point)
            .ok_or(Error::PointOffChart(format!("{} = {}", fam.base_vars().names()[0], lambda)))?;
        let mut oracle = PeriodOracle {
            genus: g,
            lambda: lambda.clone(),
            fk,
            roots,
            loops,
            cycles: Vec::new(),
            normalizer,
            tol,
            fam: fam.clone(),
        };
        oracle.fix_cycles()?;
        Ok(oracle)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn branch_points(&self) -> &[C64] {
        &self.roots
    }

    /// Cycles `δ_j` as integer combinations of the loops `γ_k`.
    pub fn cycles(&self) -> &[Vec<i64>] {
        &self.cycles
    }

    fn loop_integrals(&self, width: usize, kernel: &Kernel<'_>) -> (Vec<Vec<C64>>, f64) {
        let res: Vec<(Vec<C64>, f64)> = self
            .loops
            .par_iter()
            .map(|lp| integrate_loop(kernel, lp, width, self.tol))
            .collect();
        let err = res.iter().map(|r| r.1).sum();
        // rows are components, columns loops
        let rows = (0..width)
            .map(|c| res.iter().map(|r| r.0[c]).collect())
            .collect();
        (rows, err)
    }

    fn to_cycles(&self, per_loop: &[Vec<C64>]) -> Vec<Vec<C64>> {
        per_loop
            .iter()
            .map(|row| {
                self.cycles
                    .iter()
                    .map(|d| d.iter().zip(row).map(|(c, v)| v * *c as f64).sum())
                    .collect()
            })
            .collect()
    }

    /// Periods of `xⁱ dx/y` over the loops at `λ₀ + h`.
    fn raw_periods(&self, h: f64) -> (Vec<Vec<C64>>, f64) {
        let n = 2 * self.genus;
        let fk = &self.fk;
        let kernel = move |x: C64, b: C64, out: &mut [C64]| {
            let f0 = eval_poly(&fk[0], x);
            let root = b * (f0 / (b * b)).sqrt();
            let mut u = C64::zero();
            let mut hk = 1.0;
            for p in &fk[1..] {
                hk *= h;
                u += eval_poly(p, x) * hk;
            }
            let inv = 1.0 / (root * (C64::new(1.0, 0.0) + u / f0).sqrt());
            let mut xi = C64::new(1.0, 0.0);
            for o in out.iter_mut().take(n) {
                *o = xi * inv;
                xi *= x;
            }
        };
        self.loop_integrals(n, &kernel)
    }

    /// `N J Nᵀ` for `N = M Π`, with `Π` in cycle coordinates.
    fn riemann_form(&self, pi: &[Vec<C64>]) -> Vec<Vec<C64>> {
        let g = self.genus;
        let n = cmat_mul(&self.normalizer, pi);
        let nj: Vec<Vec<C64>> = n
            .iter()
            .map(|r| {
                (0..2 * g)
                    .map(|j| if j < g { -r[j + g] } else { r[j - g] })
                    .collect()
            })
            .collect();
        cmat_mul(&nj, &transpose(&n))
    }

    fn riemann_fit(&self, pi: &[Vec<C64>]) -> (C64, f64) {
        let g = self.genus;
        let r = self.riemann_form(pi);
        let c = r[0][g];
        let mut res: f64 = 0.0;
        for i in 0..2 * g {
            for j in 0..2 * g {
                let want = if j == i + g {
                    c
                } else if i == j + g {
                    -c
                } else {
                    C64::zero()
                };
                res = res.max((r[i][j] - want).norm());
            }
        }
        (c, res)
    }

    fn fix_cycles(&mut self) -> Result<()> {
        let n = 2 * self.genus;
        let (raw, _) = self.raw_periods(0.0);
        let mut best: Option<(f64, Vec<Vec<i64>>)> = None;
        for mask in 0..(1u32 << (n - 2)) {
            let mut k = vec![vec![0i64; n]; n];
            for i in 0..n - 1 {
                let s = if i == 0 || mask >> (i - 1) & 1 == 0 { 1 } else { -1 };
                k[i][i + 1] = s;
                k[i + 1][i] = -s;
            }
            let Some(basis) = symplectic_basis(&k) else {
                continue;
            };
            self.cycles = basis.clone();
            let (c, res) = self.riemann_fit(&self.to_cycles(&raw));
            let rel = res / c.norm().max(f64::MIN_POSITIVE);
            if best.as_ref().map_or(true, |b| rel < b.0) {
                best = Some((rel, basis));
            }
        }
        let (rel, basis) = best.ok_or_else(|| Error::HomologyBasis("no symplectic basis".into()))?;
        if rel > 1e-4 {
            return Err(Error::HomologyBasis(format!(
                "Riemann equality fails for every sign pattern (relative residual {:e})",
                rel
            )));
        }
        self.cycles = basis;
        let pi = self.to_cycles(&raw);
        let g = self.genus;
        let a: Vec<Vec<C64>> = (0..g).map(|i| pi[i][..g].to_vec()).collect();
        let b: Vec<Vec<C64>> = (0..g).map(|i| pi[i][g..].to_vec()).collect();
        let tau = csolve(&b, &a).ok_or(Error::SingularBBlock)?;
        if !imaginary_part_positive(&tau) {
            let neg: Vec<Vec<C64>> = tau.iter().map(|r| r.iter().map(|z| -z).collect()).collect();
            if !imaginary_part_positive(&neg) {
                return Err(Error::HomologyBasis("Im(B^-1 A) is indefinite".into()));
            }
            for d in self.cycles.iter_mut().skip(g) {
                for c in d.iter_mut() {
                    *c = -*c;
                }
            }
        }
        Ok(())
    }

    /// Period matrix at `λ₀ + h` in the fixed cycle basis, with the
    /// quadrature error estimate.
    pub fn periods_at_offset(&self, h: f64) -> (Vec<Vec<C64>>, f64) {
        let (raw, err) = self.raw_periods(h);
        (self.to_cycles(&raw), err)
    }

    pub fn period_matrix(&self) -> PeriodMatrixNumeric {
        let (periods, err) = self.periods_at_offset(0.0);
        let (scalar, riemann_residual) = self.riemann_fit(&periods);
        PeriodMatrixNumeric {
            lambda: self.lambda.clone(),
            periods,
            error_estimate: err.max(riemann_residual),
            scalar,
            riemann_residual,
        }
    }

    /// `∂^j_λ ∫_{δ_c} form` for `j = 0..=order`, differentiating under the
    /// integral sign.
    pub fn form_derivatives(&self, form: &DeRhamForm, order: usize) -> Result<Vec<Vec<C64>>> {
        if form.pole % 2 == 0 {
            return Err(Error::PoleOrderParity(form.pole));
        }
        let ak = expand_at(&form.num, &self.fam, &self.lambda)?;
        let fk = &self.fk;
        let m = form.pole as i32;
        let width = order + 1;
        let kernel = |x: C64, b: C64, out: &mut [C64]| {
            let f0 = eval_poly(&fk[0], x);
            let root = b * (f0 / (b * b)).sqrt();
            let u: Vec<C64> = (0..fk.len())
                .map(|k| if k == 0 { C64::zero() } else { eval_poly(&fk[k], x) / f0 })
                .collect();
            let h = binomial_series(&u, -(m as f64) / 2.0, width);
            let a: Vec<C64> = (0..width)
                .map(|k| ak.get(k).map_or(C64::zero(), |p| eval_poly(p, x)))
                .collect();
            let lead = root.powi(-m);
            let mut fact = 1.0;
            for (j, o) in out.iter_mut().enumerate() {
                if j > 0 {
                    fact *= j as f64;
                }
                let s: C64 = (0..=j).map(|i| a[i] * h[j - i]).sum();
                *o = s * lead * fact;
            }
        };
        let (raw, _) = self.loop_integrals(width, &kernel);
        Ok(self.to_cycles(&raw))
    }
}

/// Periods of the basis `xⁱ dx/y` at `λ₀` over a symplectic cycle basis.
pub fn numeric_period_oracle(
    fam: &HyperellipticFamily,
    lambda: &Rational,
    prec: u32,
) -> Result<PeriodMatrixNumeric> {
    Ok(PeriodOracle::new(fam, lambda, prec)?.period_matrix())
}
