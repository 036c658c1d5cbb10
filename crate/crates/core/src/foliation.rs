//! Foliations given by commuting rational vector fields on affine charts.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    groebner_basis, reduce_mod_ideal, Exponents, Ideal, Matrix, MultiPoly, MultiSeries, Rational,
    RationalFunc, TermOrder, Vars,
};
use crate::connection::ConnectionMatrix;
use crate::error::{Error, Result};

const INDEPENDENCE_SEED: u64 = 0x5eed_f01a;
const INDEPENDENCE_TRIES: usize = 3;

/// Affine chart: the zero set of `ideal` with the `inverted` polynomials
/// made units.
#[derive(Clone, Debug)]
pub struct AffineChart {
    vars: Vars,
    ideal: Ideal,
    inverted: Vec<MultiPoly>,
    local: Ideal,
}

impl AffineChart {
    pub fn new(vars: &Vars, ideal: Vec<MultiPoly>, inverted: Vec<MultiPoly>) -> Result<Self> {
        let ideal = Ideal::new(vars, ideal)?;
        let mut inv: Vec<MultiPoly> = Vec::new();
        for q in inverted {
            let q = q.with_vars(vars)?.primitive();
            if q.is_zero() {
                return Err(Error::ChartDenominator("0".into()));
            }
            if !q.is_constant() && !inv.contains(&q) {
                inv.push(q);
            }
        }
        let mut chart = AffineChart {
            vars: vars.clone(),
            local: Ideal::zero(vars),
            ideal,
            inverted: Vec::new(),
        };
        chart.set_inverted(inv)?;
        Ok(chart)
    }

    pub fn affine_space(vars: &Vars) -> Self {
        AffineChart {
            vars: vars.clone(),
            ideal: Ideal::zero(vars),
            inverted: Vec::new(),
            local: groebner_basis(&Ideal::zero(vars), TermOrder::GrevLex),
        }
    }

    fn set_inverted(&mut self, inv: Vec<MultiPoly>) -> Result<()> {
        if self.ideal.is_zero_ideal() {
            self.inverted = inv;
            self.local = groebner_basis(&Ideal::zero(&self.vars), TermOrder::GrevLex);
            return Ok(());
        }
        let gb = groebner_basis(&self.ideal, TermOrder::GrevLex);
        for q in &inv {
            if reduce_mod_ideal(q, &gb)?.is_zero() {
                return Err(Error::ChartDenominator(q.to_string()));
            }
        }
        let prod = inv
            .iter()
            .fold(MultiPoly::one(&self.vars), |acc, q| &acc * q);
        self.local = self.ideal.saturate(&prod)?;
        if self.local.has_unit_generator() {
            return Err(Error::ChartDenominator(prod.to_string()));
        }
        self.inverted = inv;
        Ok(())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn inverted(&self) -> &[MultiPoly] {
        &self.inverted
    }

    /// Groebner basis of the ideal localized at the inverted polynomials.
    pub fn localized(&self) -> &Ideal {
        &self.local
    }

    pub fn is_affine_space(&self) -> bool {
        self.ideal.is_zero_ideal()
    }

    /// Product of the inverted polynomials.
    pub fn localizer(&self) -> MultiPoly {
        self.inverted
            .iter()
            .fold(MultiPoly::one(&self.vars), |acc, q| &acc * q)
    }

    /// True when `f` is zero as a function on the chart.
    pub fn vanishes(&self, f: &RationalFunc) -> bool {
        if f.is_zero() {
            return true;
        }
        if self.local.is_zero_ideal() {
            return false;
        }
        let num = f.num().with_vars(&self.vars).expect("chart variables");
        reduce_mod_ideal(&num, &self.local).unwrap().is_zero()
    }

    /// True when `p` lies in the localized ideal.
    pub fn contains_poly(&self, p: &MultiPoly) -> Result<bool> {
        Ok(reduce_mod_ideal(p, &self.local)?.is_zero())
    }

    /// Same chart with more polynomials inverted.
    pub fn with_inverted(&self, extra: &[MultiPoly]) -> Result<Self> {
        let mut inv = self.inverted.clone();
        let mut changed = false;
        for q in extra {
            let q = q.with_vars(&self.vars)?.primitive();
            if !q.is_constant() && !inv.contains(&q) {
                inv.push(q);
                changed = true;
            }
        }
        if !changed {
            return Ok(self.clone());
        }
        let mut c = self.clone();
        c.set_inverted(inv)?;
        Ok(c)
    }

    /// Product with affine space on the extra variables.
    pub fn extended(&self, names: &[String]) -> Result<Self> {
        let vars = self.vars.extended(names);
        Ok(AffineChart {
            ideal: self.ideal.with_vars(&vars)?,
            inverted: self
                .inverted
                .iter()
                .map(|q| q.with_vars(&vars))
                .collect::<Result<_>>()?,
            local: {
                let mut l = self.local.with_vars(&vars)?;
                if self.local.basis_order().is_some() {
                    l = groebner_basis(&l, TermOrder::GrevLex);
                }
                l
            },
            vars,
        })
    }

    /// Checks that `point` lies on the chart.
    pub fn check_point(&self, point: &[Rational]) -> Result<()> {
        if point.len() != self.vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, chart has {}",
                point.len(),
                self.vars.len()
            )));
        }
        for g in self.ideal.gens() {
            if !g.eval(point).is_zero() {
                return Err(Error::PointOffChart(format!("generator {} does not vanish", g)));
            }
        }
        for q in &self.inverted {
            if q.eval(point).is_zero() {
                return Err(Error::PointOffChart(format!("inverted {} vanishes", q)));
            }
        }
        Ok(())
    }
}

/// Foliation by `n` pairwise commuting rational vector fields, stored as
/// ambient components over the chart variables.
#[derive(Clone, Debug)]
pub struct Foliation {
    chart: AffineChart,
    fields: Vec<Vec<RationalFunc>>,
}

impl Foliation {
    /// Validates commutation, tangency and generic independence. Field
    /// denominators are added to the chart's inverted polynomials.
    pub fn new(chart: AffineChart, fields: Vec<Vec<RationalFunc>>) -> Result<Self> {
        let f = Self::assemble(chart, fields)?;
        f.check_commutation()?;
        f.check_tangency()?;
        f.check_independence()?;
        Ok(f)
    }

    fn assemble(chart: AffineChart, fields: Vec<Vec<RationalFunc>>) -> Result<Self> {
        let vars = chart.vars().clone();
        let mut dens = Vec::new();
        let mut aligned = Vec::with_capacity(fields.len());
        for (i, fld) in fields.into_iter().enumerate() {
            if fld.len() != vars.len() {
                return Err(Error::DimensionMismatch(format!(
                    "field {} has {} components, chart has {} variables",
                    i,
                    fld.len(),
                    vars.len()
                )));
            }
            let fld = fld
                .iter()
                .map(|c| c.with_vars(&vars))
                .collect::<Result<Vec<_>>>()?;
            for c in &fld {
                if !c.is_polynomial() {
                    dens.push(c.den().clone());
                }
            }
            aligned.push(fld);
        }
        let chart = chart.with_inverted(&dens)?;
        Ok(Foliation {
            chart,
            fields: aligned,
        })
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn vars(&self) -> &Vars {
        self.chart.vars()
    }

    /// Number of fields.
    pub fn leaf_dim(&self) -> usize {
        self.fields.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vars().len()
    }

    pub fn fields(&self) -> &[Vec<RationalFunc>] {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &[RationalFunc] {
        &self.fields[i]
    }

    /// Largest degree of a numerator or denominator among all components.
    pub fn degree(&self) -> u32 {
        self.fields
            .iter()
            .flatten()
            .map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// `ξ_i(f)`.
    pub fn apply(&self, i: usize, f: &RationalFunc) -> RationalFunc {
        let f = f.with_vars(self.vars()).expect("chart variables");
        let mut acc = RationalFunc::from_poly(MultiPoly::zero(self.vars()));
        for (j, c) in self.fields[i].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(j);
            if d.is_zero() {
                continue;
            }
            acc = &acc + &(c * &d);
        }
        acc
    }

    /// Iterated derivatives `ξ^α f` for all `|α| ≤ order`.
    pub fn lie_table(&self, f: &RationalFunc, order: u32) -> BTreeMap<Exponents, RationalFunc> {
        let n = self.leaf_dim();
        let mut table = BTreeMap::new();
        table.insert(vec![0; n], f.with_vars(self.vars()).expect("chart variables"));
        for alpha in exponents_up_to(n, order) {
            if alpha.iter().all(|&a| a == 0) {
                continue;
            }
            let i = alpha.iter().position(|&a| a > 0).unwrap();
            let mut parent = alpha.clone();
            parent[i] -= 1;
            let v = self.apply(i, &table[&parent]);
            table.insert(alpha, v);
        }
        table
    }

    /// Components of `[ξ_i, ξ_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<RationalFunc> {
        (0..self.ambient_dim())
            .map(|k| &self.apply(i, &self.fields[j][k]) - &self.apply(j, &self.fields[i][k]))
            .collect()
    }

    pub fn check_commutation(&self) -> Result<()> {
        for i in 0..self.leaf_dim() {
            for j in i + 1..self.leaf_dim() {
                for (k, c) in self.bracket(i, j).iter().enumerate() {
                    if !self.chart.vanishes(c) {
                        return Err(Error::CommutationFailure {
                            i,
                            j,
                            var: self.vars().names()[k].clone(),
                            component: c.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_tangency(&self) -> Result<()> {
        for i in 0..self.leaf_dim() {
            for g in self.chart.ideal().gens() {
                let image = self.apply(i, &RationalFunc::from_poly(g.clone()));
                if !self.chart.vanishes(&image) {
                    return Err(Error::TangencyFailure {
                        field: i,
                        generator: g.to_string(),
                        image: image.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Generic linear independence. On affine space the coefficient matrix
    /// is evaluated at seeded random integer points (three tries); on a
    /// subvariety some maximal minor must not vanish on the chart.
    pub fn check_independence(&self) -> Result<()> {
        let n = self.leaf_dim();
        let big_n = self.ambient_dim();
        if n == 0 {
            return Ok(());
        }
        if n > big_n {
            return Err(Error::DependentFields);
        }
        if self.chart.is_affine_space() {
            let mut rng = ChaCha8Rng::seed_from_u64(INDEPENDENCE_SEED);
            let mut tries = 0;
            while tries < INDEPENDENCE_TRIES {
                let point: Vec<Rational> = (0..big_n)
                    .map(|_| Rational::from_integer(rng.gen_range(-97i64..=97).into()))
                    .collect();
                if self.chart.inverted().iter().any(|q| q.eval(&point).is_zero()) {
                    tries += 1;
                    continue;
                }
                let mut rows = Vec::with_capacity(n);
                for f in &self.fields {
                    rows.push(f.iter().map(|c| c.eval(&point)).collect::<Option<Vec<_>>>());
                }
                if let Some(rows) = rows.into_iter().collect::<Option<Vec<_>>>() {
                    if Matrix::from_rows(rows).rank() == n {
                        return Ok(());
                    }
                }
                tries += 1;
            }
            return Err(Error::DependentFields);
        }
        let q = self.chart.localizer();
        for cols in (0..big_n).combinations(n) {
            let m = Matrix::from_fn(n, n, |r, c| self.fields[r][cols[c]].clone());
            let d = m.det();
            if d.is_zero() {
                continue;
            }
            let num = d.num().with_vars(self.vars())?;
            if !self.chart.ideal().radical_contains(&(&num * &q))? {
                return Ok(());
            }
        }
        Err(Error::DependentFields)
    }

    /// Formal flow `φ(t)` of order `m`: the coefficient of `t^α` in the
    /// series for `x_j` is `ξ^α(x_j)/α!`.
    pub fn flow_jet(&self, m: u32) -> FlowJet {
        let n = self.leaf_dim();
        let series = (0..self.ambient_dim())
            .map(|j| {
                let xj = RationalFunc::from_poly(MultiPoly::var(self.vars(), j));
                let table = self.lie_table(&xj, m);
                let mut s = MultiSeries::zero(n, m);
                for (alpha, v) in table {
                    let f = factorial_multi(&alpha);
                    s.add_term(alpha, v.scale(&f.recip()));
                }
                s
            })
            .collect();
        FlowJet {
            vars: self.vars().clone(),
            order: m,
            series,
        }
    }

    /// Family of `n − k + 1` fields `ξ_i + Σ_j c_ij ξ_j` (`j` over the last
    /// `k − 1` fields) on the chart extended by the symbols `c_ij`, which
    /// every field annihilates. Returns the family and the symbol names.
    pub fn subfoliation_family(&self, k: usize) -> Result<(Foliation, Vec<String>)> {
        let n = self.leaf_dim();
        if k < 1 || k > n {
            return Err(Error::KOutOfRange { k, n });
        }
        let m = n - k + 1;
        let mut names = Vec::new();
        let mut taken = self.vars().clone();
        for i in 1..=m {
            for j in m + 1..=n {
                let name = taken.fresh(&format!("c{}_{}", i, j));
                taken = taken.extended(&[name.as_str()]);
                names.push(name);
            }
        }
        let chart = self.chart.extended(&names)?;
        let vars = chart.vars().clone();
        let embed = |c: &RationalFunc| c.with_vars(&vars).expect("extended chart");
        let mut fields = Vec::with_capacity(m);
        for i in 0..m {
            let mut comps: Vec<RationalFunc> = self.fields[i].iter().map(embed).collect();
            for (jj, j) in (m..n).enumerate() {
                let c = RationalFunc::from_poly(MultiPoly::var_named(
                    &vars,
                    &names[i * (k - 1) + jj],
                )?);
                for (x, comp) in comps.iter_mut().zip(&self.fields[j]) {
                    *x = &*x + &(&c * &embed(comp));
                }
            }
            comps.extend(
                (0..names.len()).map(|_| RationalFunc::from_poly(MultiPoly::zero(&vars))),
            );
            fields.push(comps);
        }
        Ok((
            Foliation {
                chart,
                fields,
            },
            names,
        ))
    }

    /// Checks that no field moves any of the named variables.
    pub fn check_parameters(&self, params: &[String]) -> Result<()> {
        for p in params {
            let idx = self.vars().require(p)?;
            for (i, f) in self.fields.iter().enumerate() {
                if !self.chart.vanishes(&f[idx]) {
                    return Err(Error::ParameterNotConstant {
                        field: i,
                        param: p.clone(),
                        component: f[idx].to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// `ξ_i = ∂/∂x_i + Σ_j c_ij ∂/∂y_j` with `x` the leaf variables and `y` the
/// remaining chart variables in chart order.
pub fn from_graph_coefficients(
    c: Vec<Vec<RationalFunc>>,
    chart: AffineChart,
    leaf: &[String],
) -> Result<Foliation> {
    let vars = chart.vars().clone();
    let leaf_idx = leaf
        .iter()
        .map(|v| vars.require(v))
        .collect::<Result<Vec<_>>>()?;
    let trans: Vec<usize> = (0..vars.len()).filter(|i| !leaf_idx.contains(i)).collect();
    if c.len() != leaf_idx.len() || c.iter().any(|r| r.len() != trans.len()) {
        return Err(Error::DimensionMismatch(format!(
            "coefficient matrix must be {} x {}",
            leaf_idx.len(),
            trans.len()
        )));
    }
    let zero = RationalFunc::from_poly(MultiPoly::zero(&vars));
    let one = RationalFunc::from_poly(MultiPoly::one(&vars));
    let fields = c
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut comps = vec![zero.clone(); vars.len()];
            comps[leaf_idx[i]] = one.clone();
            for (t, v) in trans.iter().zip(row) {
                comps[*t] = v;
            }
            comps
        })
        .collect();
    Foliation::new(chart, fields)
}

/// Names `stem{a}_{b}` (1-based) of the entries of an `m × m` matrix,
/// made fresh against `taken`.
pub fn group_var_names(taken: &Vars, stem: &str, m: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(m * m);
    let mut t = taken.clone();
    for a in 1..=m {
        for b in 1..=m {
            let name = t.fresh(&format!("{}{}_{}", stem, a, b));
            t = t.extended(&[name.as_str()]);
            names.push(name);
        }
    }
    names
}

/// Fields `∂/∂x_i + Σ_{a,b} (Ω_i g)_{ab} ∂/∂g_{ab}` on base × matrix space.
pub fn from_connection(omega: &ConnectionMatrix, stem: &str) -> Result<Foliation> {
    omega.check_flat()?;
    let base = omega.base();
    let m = omega.size();
    let names = group_var_names(base.vars(), stem, m);
    let chart = base.extended(&names)?;
    let vars = chart.vars().clone();
    let nb = base.vars().len();
    let g: Vec<RationalFunc> = names
        .iter()
        .map(|s| RationalFunc::from_poly(MultiPoly::var_named(&vars, s).unwrap()))
        .collect();
    let zero = RationalFunc::from_poly(MultiPoly::zero(&vars));
    let mut fields = Vec::with_capacity(nb);
    for i in 0..nb {
        let om = omega.matrix(i);
        let mut comps = vec![zero.clone(); vars.len()];
        comps[i] = RationalFunc::from_poly(MultiPoly::one(&vars));
        for a in 0..m {
            for b in 0..m {
                let mut acc = zero.clone();
                for c in 0..m {
                    let e = om.get(a, c);
                    if !e.is_zero() {
                        acc = &acc + &(&e.with_vars(&vars)? * &g[c * m + b]);
                    }
                }
                comps[nb + a * m + b] = acc;
            }
        }
        fields.push(comps);
    }
    Foliation::new(chart, fields)
}

/// Truncated formal flow of a foliation.
#[derive(Clone, Debug)]
pub struct FlowJet {
    vars: Vars,
    order: u32,
    series: Vec<MultiSeries<RationalFunc>>,
}

impl FlowJet {
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn series(&self) -> &[MultiSeries<RationalFunc>] {
        &self.series
    }

    /// Series of the chart variable `name`.
    pub fn series_of(&self, name: &str) -> Result<&MultiSeries<RationalFunc>> {
        Ok(&self.series[self.vars.require(name)?])
    }

    /// `p(φ(t))`.
    pub fn substitute(&self, p: &MultiPoly) -> Result<MultiSeries<RationalFunc>> {
        let p = p.with_vars(&self.vars)?;
        Ok(MultiSeries::eval_poly(&p, &self.series))
    }
}

/// All exponent vectors of length `n` and total degree `≤ d`, graded by
/// degree, each degree in descending lexicographic order.
pub fn exponents_up_to(n: usize, d: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for total in 0..=d {
        exponents_of_degree(n, total, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn exponents_of_degree(n: usize, rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponents>) {
    if prefix.len() + 1 == n {
        prefix.push(rest);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        if rest == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for a in (0..=rest).rev() {
        prefix.push(a);
        exponents_of_degree(n, rest - a, prefix, out);
        prefix.pop();
    }
}

/// `α! = Π α_i!` as a rational.
pub fn factorial_multi(alpha: &[u32]) -> Rational {
    let mut f = Rational::one();
    for &a in alpha {
        for k in 2..=a {
            f *= Rational::from_integer(k.into());
        }
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfunc, rat};

    fn chart(names: &[&str]) -> AffineChart {
        AffineChart::affine_space(&Vars::new(names))
    }

    fn rf(v: &Vars, s: &str) -> RationalFunc {
        parse_ratfunc(s, v).unwrap()
    }

    fn strings(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn coordinate_and_linear_fields() {
        let c = chart(&["x", "y"]);
        let v = c.vars().clone();
        let f = from_graph_coefficients(vec![vec![rf(&v, "0")]], c.clone(), &strings(&["x"])).unwrap();
        assert_eq!(f.field(0), &[rf(&v, "1"), rf(&v, "0")]);
        let f = from_graph_coefficients(vec![vec![rf(&v, "y")]], c, &strings(&["x"])).unwrap();
        assert_eq!(f.field(0), &[rf(&v, "1"), rf(&v, "y")]);
    }

    #[test]
    fn commutation_failure_names_the_pair() {
        let c = chart(&["x", "y", "z"]);
        let v = c.vars().clone();
        let ok = from_graph_coefficients(
            vec![vec![rf(&v, "y")], vec![rf(&v, "x")]],
            c.clone(),
            &strings(&["x", "y"]),
        );
        assert!(ok.is_ok());
        let bad = from_graph_coefficients(
            vec![vec![rf(&v, "y")], vec![rf(&v, "-x")]],
            c,
            &strings(&["x", "y"]),
        );
        match bad {
            Err(Error::CommutationFailure { i, j, var, component }) => {
                assert_eq!((i, j, var.as_str(), component.as_str()), (0, 1, "z", "-2"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn tangency_is_checked() {
        let v = Vars::new(&["x", "y"]);
        let circle = AffineChart::new(&v, vec![parse_poly("x^2 + y^2 - 1", &v).unwrap()], vec![]).unwrap();
        let rot = vec![vec![rf(&v, "-y"), rf(&v, "x")]];
        assert!(Foliation::new(circle.clone(), rot).is_ok());
        let bad = vec![vec![rf(&v, "1"), rf(&v, "0")]];
        assert!(matches!(
            Foliation::new(circle, bad),
            Err(Error::TangencyFailure { .. })
        ));
    }

    #[test]
    fn dependent_fields_rejected() {
        let c = chart(&["x", "y"]);
        let v = c.vars().clone();
        let f = vec![vec![rf(&v, "1"), rf(&v, "0")], vec![rf(&v, "y"), rf(&v, "0")]];
        assert_eq!(Foliation::new(c, f).unwrap_err(), Error::DependentFields);
    }

    #[test]
    fn flow_jet_examples() {
        let c = chart(&["x", "y"]);
        let v = c.vars().clone();
        let f = from_graph_coefficients(vec![vec![rf(&v, "0")]], c.clone(), &strings(&["x"])).unwrap();
        let jet = f.flow_jet(3);
        assert_eq!(jet.series()[0].coeff(&[0]), rf(&v, "x"));
        assert_eq!(jet.series()[0].coeff(&[1]), rf(&v, "1"));
        assert_eq!(jet.series()[0].coeff(&[2]), rf(&v, "0"));
        assert_eq!(jet.series()[1].terms().count(), 1);

        let f = from_graph_coefficients(vec![vec![rf(&v, "y")]], c.clone(), &strings(&["x"])).unwrap();
        let jet = f.flow_jet(3);
        let ys = &jet.series()[1];
        assert_eq!(ys.coeff(&[0]), rf(&v, "y"));
        assert_eq!(ys.coeff(&[1]), rf(&v, "y"));
        assert_eq!(ys.coeff(&[2]), rf(&v, "1/2*y"));
        assert_eq!(ys.coeff(&[3]), rf(&v, "1/6*y"));

        let f = from_graph_coefficients(vec![vec![rf(&v, "x")]], c, &strings(&["x"])).unwrap();
        let jet = f.flow_jet(2);
        let ys = &jet.series()[1];
        assert_eq!(ys.coeff(&[1]), rf(&v, "x"));
        assert_eq!(ys.coeff(&[2]), RationalFunc::constant(&v, rat(1, 2)));
    }

    #[test]
    fn jets_restrict() {
        let c = chart(&["x", "y", "z"]);
        let v = c.vars().clone();
        let f = from_graph_coefficients(
            vec![vec![rf(&v, "z")], vec![rf(&v, "z")]],
            c,
            &strings(&["x", "y"]),
        )
        .unwrap();
        let long = f.flow_jet(5);
        let short = f.flow_jet(3);
        for (a, b) in long.series().iter().zip(short.series()) {
            assert_eq!(&a.truncated(3), b);
        }
    }

    #[test]
    fn subfoliation_counts() {
        let c = chart(&["x", "y", "z"]);
        let v = c.vars().clone();
        let one = rf(&v, "1");
        let zero = rf(&v, "0");
        let f = Foliation::new(
            c,
            vec![
                vec![one.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), one.clone()],
            ],
        )
        .unwrap();
        let (g, names) = f.subfoliation_family(1).unwrap();
        assert!(names.is_empty());
        assert_eq!(g.leaf_dim(), 3);
        let (g, names) = f.subfoliation_family(2).unwrap();
        assert_eq!(names, strings(&["c1_3", "c2_3"]));
        assert_eq!(g.leaf_dim(), 2);
        g.check_commutation().unwrap();
        g.check_parameters(&names).unwrap();
        let (g, names) = f.subfoliation_family(3).unwrap();
        assert_eq!(names.len(), 2);
        assert_eq!(g.leaf_dim(), 1);
        assert!(matches!(f.subfoliation_family(4), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn exponent_enumeration() {
        assert_eq!(exponents_up_to(2, 2).len(), 6);
        assert_eq!(exponents_up_to(3, 2).len(), 10);
        assert_eq!(exponents_up_to(1, 3), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(factorial_multi(&[3, 2]), rat(12, 1));
    }
}
