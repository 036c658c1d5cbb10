//! Hyperelliptic families `y² = f(x, λ)` with `f` monic of odd degree in `x`,
//! their de Rham bases, Griffiths–Dwork reduction and the Gauss–Manin
//! connection.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{
    common_denominator, rat, Field, Matrix, MultiPoly, Rational, RationalFunc, UniPoly, Vars,
};
use crate::connection::ConnectionMatrix;
use crate::error::{Error, Result};
use crate::foliation::AffineChart;

type Poly = UniPoly<RationalFunc>;

#[derive(Clone, Debug)]
pub struct HyperellipticFamily {
    x: String,
    vars: Vars,
    f: MultiPoly,
    chart: AffineChart,
    genus: usize,
    discriminant: MultiPoly,
    f_uni: Poly,
    f_prime: Poly,
    // u f + w f' = 1 over the function field of the base
    u: Poly,
    w: Poly,
}

/// `num · dx / y^pole`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeRhamForm {
    pub num: MultiPoly,
    pub pole: u32,
}

impl DeRhamForm {
    pub fn new(num: MultiPoly, pole: u32) -> Result<Self> {
        if pole % 2 == 0 {
            return Err(Error::PoleOrderParity(pole));
        }
        Ok(DeRhamForm { num, pole })
    }
}

fn rf_int(vars: &Vars, n: i64) -> RationalFunc {
    RationalFunc::constant(vars, Rational::from_integer(n.into()))
}

/// Resultant of two univariate polynomials via the Sylvester determinant.
pub fn resultant<F: Field>(a: &UniPoly<F>, b: &UniPoly<F>) -> F {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return F::zero();
    };
    let size = m + n;
    if size == 0 {
        return F::one();
    }
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.coeffs().iter().enumerate() {
            s.set(i, i + m - j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs().iter().enumerate() {
            s.set(n + i, i + n - j, c.clone());
        }
    }
    s.det()
}

impl HyperellipticFamily {
    /// `f` must be a polynomial in `x` and the base variables, monic of odd
    /// degree at least 3 in `x` and squarefree over the base function field.
    pub fn new<S: AsRef<str>>(f: &MultiPoly, x: &str, base: &[S]) -> Result<Self> {
        let mut names = vec![x.to_string()];
        for b in base {
            let b = b.as_ref();
            if b == x || names.iter().any(|n| n == b) {
                return Err(Error::InvalidFamily(format!("repeated variable `{}`", b)));
            }
            names.push(b.to_string());
        }
        let vars = Vars::new(&names);
        let base_vars = Vars::new(&names[1..]);
        let f = f.with_vars(&vars)?;
        let deg = f.degree_in(0).unwrap_or(0) as usize;
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::InvalidFamily(format!(
                "degree {} in {} is not odd and at least 3",
                deg, x
            )));
        }
        let coeffs: Vec<RationalFunc> = f
            .univariate_coeffs(0)
            .iter()
            .map(|c| Ok(RationalFunc::from_poly(c.with_vars(&base_vars)?)))
            .collect::<Result<_>>()?;
        if !coeffs[deg].num().is_one() {
            return Err(Error::InvalidFamily(format!("not monic in {}", x)));
        }
        let f_uni = UniPoly::new(coeffs);
        let f_prime = f_uni.derivative();
        let (g, u, w) = f_uni.ext_gcd(&f_prime);
        if g.degree() != Some(0) {
            return Err(Error::InvalidFamily(format!("not squarefree in {}", x)));
        }
        let disc = resultant(&f_uni, &f_prime);
        let disc = disc.num().with_vars(&base_vars)?.primitive();
        let inverted = if disc.is_constant() {
            vec![]
        } else {
            vec![disc.clone()]
        };
        let chart = AffineChart::new(&base_vars, vec![], inverted)?;
        Ok(HyperellipticFamily {
            x: x.to_string(),
            vars,
            f,
            chart,
            genus: (deg - 1) / 2,
            discriminant: disc,
            f_uni,
            f_prime,
            u,
            w,
        })
    }

    pub fn x(&self) -> &str {
        &self.x
    }

    /// `x` followed by the base variables.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn base_vars(&self) -> &Vars {
        self.chart.vars()
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        2 * self.genus + 1
    }

    /// Primitive part of the resultant of `f` and `∂f/∂x`.
    pub fn discriminant(&self) -> &MultiPoly {
        &self.discriminant
    }

    /// Numerator as a polynomial in `x` over the base function field.
    pub fn to_uni(&self, num: &MultiPoly) -> Result<Poly> {
        let num = num.with_vars(&self.vars)?;
        let base = self.base_vars();
        Ok(UniPoly::new(
            num.univariate_coeffs(0)
                .iter()
                .map(|c| Ok(RationalFunc::from_poly(c.with_vars(base)?)))
                .collect::<Result<_>>()?,
        ))
    }

    /// `xⁱ dx/y`.
    pub fn basis_form(&self, i: usize) -> DeRhamForm {
        let mut e = vec![0; self.vars.len()];
        e[0] = i as u32;
        DeRhamForm {
            num: MultiPoly::monomial(&self.vars, e, Rational::one()),
            pole: 1,
        }
    }

    /// The exact form `d(xʲ y^{2−m})` written as `num · dx / y^m`.
    pub fn exact_form(&self, j: u32, m: u32) -> DeRhamForm {
        let x = MultiPoly::var(&self.vars, 0);
        let xj = x.pow(j);
        let fp = self.f.derivative(0);
        let mut num = (&xj * &fp).scale(&rat(-(m as i64 - 2), 2));
        if j > 0 {
            num += &(&x.pow(j - 1) * &self.f).scale(&rat(j as i64, 1));
        }
        DeRhamForm { num, pole: m }
    }

    fn zero_rf(&self) -> RationalFunc {
        RationalFunc::zero().with_vars(self.base_vars()).expect("constant")
    }

    /// Coordinates of `a dx / y^m` in the basis `xⁱ dx/y`, `i < 2g`.
    pub fn reduce_uni(&self, a: &Poly, m: u32) -> Result<Vec<RationalFunc>> {
        if m % 2 == 0 {
            return Err(Error::PoleOrderParity(m));
        }
        let base = self.base_vars();
        let mut a = a.clone();
        let mut m = m;
        while m >= 3 {
            // a = q f + r, then r = r u f + r w f' and r w f' dx/y^m is
            // exact up to 2/(m-2) (r w)' dx/y^{m-2}
            let (q, r) = a.div_rem(&self.f_uni);
            let rw = r.mul(&self.w);
            let c = RationalFunc::constant(base, rat(2, m as i64 - 2));
            a = q.add(&r.mul(&self.u)).add(&rw.derivative().scale(&c));
            m -= 2;
        }
        let g2 = 2 * self.genus;
        let half = RationalFunc::constant(base, rat(1, 2));
        while let Some(d) = a.degree() {
            if d < g2 {
                break;
            }
            let j = d - g2;
            // d(x^j y) = (j x^{j-1} f + x^j f'/2) dx/y
            let mut rel = UniPoly::monomial(j, RationalFunc::one())
                .mul(&self.f_prime)
                .scale(&half);
            if j > 0 {
                rel = rel.add(
                    &UniPoly::monomial(j - 1, rf_int(base, j as i64)).mul(&self.f_uni),
                );
            }
            let c = a.leading().unwrap().clone() / rel.leading().unwrap();
            a = a.sub(&rel.scale(&c));
        }
        Ok((0..g2)
            .map(|i| {
                let c = a.coeff(i);
                if c.is_zero() {
                    self.zero_rf()
                } else {
                    c.with_vars(base).expect("base coefficient")
                }
            })
            .collect())
    }

    /// `∂/∂λ_i` of `a dx/y^m`, as two pieces `(a_λ, m)` and `(−(m/2) a f_λ, m+2)`.
    fn derivative_pieces(&self, a: &Poly, m: u32, i: usize) -> Vec<(Poly, u32)> {
        let da = a.map(|c| c.derivative(i));
        let df = self.f_uni.map(|c| c.derivative(i));
        let c = RationalFunc::constant(self.base_vars(), rat(-(m as i64), 2));
        vec![(da, m), (a.mul(&df).scale(&c), m + 2)]
    }

    /// Coordinates of the Gauss–Manin derivative `∇_{∂/∂λ_i}` of a form.
    pub fn derivative_coords(&self, form: &DeRhamForm, i: usize) -> Result<Vec<RationalFunc>> {
        if form.pole % 2 == 0 {
            return Err(Error::PoleOrderParity(form.pole));
        }
        let a = self.to_uni(&form.num)?;
        let mut out = vec![self.zero_rf(); 2 * self.genus];
        for (p, m) in self.derivative_pieces(&a, form.pole, i) {
            for (o, c) in out.iter_mut().zip(self.reduce_uni(&p, m)?) {
                *o = o.clone() + &c;
            }
        }
        Ok(out)
    }
}

/// `xⁱ dx/y` for `i = 0..2g`; the first `g` are holomorphic.
pub fn derham_basis(fam: &HyperellipticFamily) -> Vec<DeRhamForm> {
    (0..2 * fam.genus()).map(|i| fam.basis_form(i)).collect()
}

pub fn griffiths_dwork_reduce(
    form: &DeRhamForm,
    fam: &HyperellipticFamily,
) -> Result<Vec<RationalFunc>> {
    if form.pole % 2 == 0 {
        return Err(Error::PoleOrderParity(form.pole));
    }
    fam.reduce_uni(&fam.to_uni(&form.num)?, form.pole)
}

/// Row `r` of `Ω_i` holds the coordinates of `∇_{∂/∂λ_i} ω_r`, so that the
/// period matrix (rows indexed by forms) satisfies `∂_i Π = Ω_i Π`.
pub fn gauss_manin_matrix(fam: &HyperellipticFamily) -> Result<ConnectionMatrix> {
    let n = 2 * fam.genus();
    let nb = fam.base_vars().len();
    let jobs: Vec<(usize, usize)> = (0..nb).flat_map(|i| (0..n).map(move |r| (i, r))).collect();
    let rows: Vec<Vec<RationalFunc>> = jobs
        .par_iter()
        .map(|&(i, r)| fam.derivative_coords(&fam.basis_form(r), i))
        .collect::<Result<_>>()?;
    let mats = rows
        .chunks(n.max(1))
        .take(nb)
        .map(|c| Matrix::from_rows(c.to_vec()))
        .collect();
    let conn = ConnectionMatrix::new(fam.chart().clone(), mats)?;
    if nb > 1 {
        conn.check_flat()?;
    }
    Ok(conn)
}

/// Monic `Σ a_j ∂^j` over a one-dimensional base.
#[derive(Clone, Debug, PartialEq)]
pub struct PicardFuchsOperator {
    var: String,
    coeffs: Vec<RationalFunc>,
}

impl PicardFuchsOperator {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// `a_0, …, a_r` with `a_r = 1`.
    pub fn coeffs(&self) -> &[RationalFunc] {
        &self.coeffs
    }

    /// Coefficients multiplied by their common denominator, made primitive.
    pub fn cleared(&self) -> Vec<MultiPoly> {
        let den = common_denominator(&self.coeffs);
        let d = den.vars().fresh("d");
        let ext = den.vars().extended(&[d]);
        let polys: Vec<MultiPoly> = self
            .coeffs
            .iter()
            .map(|c| &den.div_exact(c.den()).expect("common denominator") * c.num())
            .collect();
        let i = ext.len() - 1;
        let whole = MultiPoly::from_univariate_coeffs(&ext, i, &polys).primitive();
        whole
            .univariate_coeffs(i)
            .iter()
            .map(|p| p.with_vars(den.vars()).expect("base coefficient"))
            .collect()
    }

    /// Coefficients at a base point, `None` on a pole.
    pub fn eval_coeffs(&self, at: &Rational) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval(std::slice::from_ref(at))).collect()
    }
}

impl fmt::Display for PicardFuchsOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = match j {
                0 => String::new(),
                1 => "d".to_string(),
                _ => format!("d^{}", j),
            };
            let coef = if c.is_one() {
                None
            } else if c.is_polynomial() {
                Some(format!("({})", c.num()))
            } else {
                Some(format!("({})/({})", c.num(), c.den()))
            };
            parts.push(match (coef, d.is_empty()) {
                (None, true) => "1".to_string(),
                (None, false) => d,
                (Some(c), true) => c,
                (Some(c), false) => format!("{}*{}", c, d),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Minimal monic operator annihilating the class of `form`, by cyclic vectors
/// `v_0 = [form]`, `v_{j+1} = v_j' + v_j Ω`.
pub fn picard_fuchs(fam: &HyperellipticFamily, form: &DeRhamForm) -> Result<PicardFuchsOperator> {
    if fam.base_vars().len() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "Picard-Fuchs needs a one-dimensional base, got {}",
            fam.base_vars().len()
        )));
    }
    let var = fam.base_vars().names()[0].clone();
    let omega = gauss_manin_matrix(fam)?.matrix(0).clone();
    let v0 = griffiths_dwork_reduce(form, fam)?;
    let base = fam.base_vars().clone();
    let one = RationalFunc::one().with_vars(&base)?;
    if v0.iter().all(|c| c.is_zero()) {
        return Ok(PicardFuchsOperator { var, coeffs: vec![one] });
    }
    let n = v0.len();
    let mut vs = vec![v0];
    loop {
        let last = vs.last().unwrap();
        let mut next = omega.vec_mul(last);
        for (x, c) in next.iter_mut().zip(last) {
            *x = x.clone() + &c.derivative(0);
        }
        vs.push(next);
        let cols = vs.len();
        let m = Matrix::from_fn(n, cols, |r, c| vs[c][r].clone());
        let ker = m.kernel();
        if let Some(k) = ker.into_iter().find(|k| !k[cols - 1].is_zero()) {
            let lead = k[cols - 1].clone();
            let coeffs = k
                .iter()
                .map(|c| (c.clone() / &lead).with_vars(&base))
                .collect::<Result<_>>()?;
            return Ok(PicardFuchsOperator { var, coeffs });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfunc};

    fn fam(f: &str, base: &[&str]) -> HyperellipticFamily {
        let mut names = vec!["x"];
        names.extend_from_slice(base);
        let v = Vars::new(&names);
        HyperellipticFamily::new(&parse_poly(f, &v).unwrap(), "x", base).unwrap()
    }

    fn rf(s: &str, fam: &HyperellipticFamily) -> RationalFunc {
        parse_ratfunc(s, fam.base_vars()).unwrap()
    }

    fn form(s: &str, m: u32, fam: &HyperellipticFamily) -> DeRhamForm {
        DeRhamForm::new(parse_poly(s, fam.vars()).unwrap(), m).unwrap()
    }

    #[test]
    fn invalid_families() {
        let v = Vars::new(&["x", "a"]);
        let bad = |s: &str| HyperellipticFamily::new(&parse_poly(s, &v).unwrap(), "x", &["a"]);
        assert!(matches!(bad("x^4 + a"), Err(Error::InvalidFamily(_))));
        assert!(matches!(bad("2*x^3 + a"), Err(Error::InvalidFamily(_))));
        assert!(matches!(bad("x^3 - x^2"), Err(Error::InvalidFamily(_))));
        assert!(matches!(bad("x + a"), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn cubic_hand_reductions() {
        let f = fam("x^3 + a*x + b", &["a", "b"]);
        assert_eq!(f.genus(), 1);
        let r = griffiths_dwork_reduce(&form("x^2", 1, &f), &f).unwrap();
        assert_eq!(r, vec![rf("-1/3*a", &f), rf("0", &f)]);
        let r = griffiths_dwork_reduce(&form("x^3", 1, &f), &f).unwrap();
        assert_eq!(r, vec![rf("-2/5*b", &f), rf("-3/5*a", &f)]);
        let r = griffiths_dwork_reduce(&form("1", 1, &f), &f).unwrap();
        assert_eq!(r, vec![rf("1", &f), rf("0", &f)]);
        assert_eq!(
            griffiths_dwork_reduce(&DeRhamForm { num: parse_poly("1", f.vars()).unwrap(), pole: 2 }, &f),
            Err(Error::PoleOrderParity(2))
        );
        assert_eq!(f.discriminant(), &parse_poly("4*a^3 + 27*b^2", f.base_vars()).unwrap());
    }

    #[test]
    fn exact_forms_reduce_to_zero() {
        let f = fam("x^5 + l*x + 1", &["l"]);
        for m in [1, 3, 5] {
            for j in 0..6 {
                let r = griffiths_dwork_reduce(&f.exact_form(j, m), &f).unwrap();
                assert!(r.iter().all(|c| c.is_zero()), "j={} m={}", j, m);
            }
        }
    }

    #[test]
    fn constant_family() {
        let f = fam("x^3 - x", &["l"]);
        let gm = gauss_manin_matrix(&f).unwrap();
        assert!(gm.matrix(0).is_zero());
        let pf = picard_fuchs(&f, &f.basis_form(0)).unwrap();
        assert_eq!(pf.order(), 1);
        assert_eq!(pf.to_string(), "d");
    }

    #[test]
    fn legendre() {
        let f = fam("x^3 - x^2 - l*x^2 + l*x", &["l"]);
        let pf = picard_fuchs(&f, &f.basis_form(0)).unwrap();
        assert_eq!(pf.order(), 2);
        let expect = [
            rf("(-1)/(4*l - 4*l^2)", &f),
            rf("(1 - 2*l)/(l - l^2)", &f),
            rf("1", &f),
        ];
        assert_eq!(pf.coeffs(), &expect);
        let cleared = pf.cleared();
        let v = f.base_vars();
        let want = ["1", "8*l - 4", "4*l^2 - 4*l"].map(|s| parse_poly(s, v).unwrap());
        let neg: Vec<_> = want.iter().map(|p| -p.clone()).collect();
        assert!(cleared == want || cleared == neg, "{:?}", cleared);
        // poles of Omega only along the discriminant
        let gm = gauss_manin_matrix(&f).unwrap();
        let disc = f.discriminant();
        for r in gm.matrix(0).to_rows() {
            for c in r {
                let d = c.den();
                let deg = d.total_degree().unwrap_or(0);
                assert!(disc.pow(deg).div_exact(d).is_some(), "{}", d);
            }
        }
    }

    #[test]
    fn quintic_scaling() {
        let f = fam("x^5 + l", &["l"]);
        assert_eq!(f.genus(), 2);
        let pf = picard_fuchs(&f, &f.basis_form(0)).unwrap();
        assert_eq!(pf.coeffs(), &[rf("(3)/(10*l)", &f), rf("1", &f)]);
        assert_eq!(pf.to_string(), "d + (3/10)/(l)");
        // x^i dx/y scales as l^{(2i-3)/10}
        let gm = gauss_manin_matrix(&f).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    rf(&format!("({})/(10*l)", 2 * i as i64 - 3), &f)
                } else {
                    rf("0", &f)
                };
                assert_eq!(gm.matrix(0).get(i, j), &want);
            }
        }
    }

    #[test]
    fn two_parameter_family_is_flat() {
        let f = fam("x^3 + a*x + b", &["a", "b"]);
        let gm = gauss_manin_matrix(&f).unwrap();
        assert!(gm.check_flat().is_ok());
        assert!(matches!(
            picard_fuchs(&f, &f.basis_form(0)),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
