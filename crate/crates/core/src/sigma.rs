//! Equations for the locus of points of `V` whose leaf meets `V` in
//! dimension at least `k`, and small constructible-set helpers.
//!
//! A point `p ∈ V` lies in the locus iff for every choice `P′` of
//! `n − k + 1` generators of `V` and a generic `(n − k + 1)`-dimensional
//! subfoliation `F′(c)`, the restriction of `P′` to the leaf of `F′(c)`
//! through `p` has a non-isolated zero. With the order bound `μ` this is
//! the simultaneous vanishing of all multiplicity operators of order `μ`,
//! for all `c`, i.e. of every coefficient of those operators as
//! polynomials in the symbols `c`.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{eliminate, groebner_basis, Ideal, MultiPoly, Rational, TermOrder};
use crate::error::{Error, Result};
use crate::foliation::{AffineChart, Foliation};
use crate::multiplicity::{
    binomial, canonical_set, macaulay_system, operator_degree_bound, order_bound, FieldDegrees,
    OrderBoundPolicy, DEFAULT_MINOR_BUDGET,
};

/// Default cap on the number of generator subsets.
pub const DEFAULT_SUBSET_CAP: u128 = 2000;

#[derive(Clone, Copy, Debug)]
pub struct SigmaOptions {
    pub policy: OrderBoundPolicy,
    pub subset_cap: u128,
    pub minor_budget: u128,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions {
            policy: OrderBoundPolicy::Heuristic,
            subset_cap: DEFAULT_SUBSET_CAP,
            minor_budget: DEFAULT_MINOR_BUDGET,
        }
    }
}

impl SigmaOptions {
    pub fn with_policy(policy: OrderBoundPolicy) -> Self {
        SigmaOptions {
            policy,
            ..Default::default()
        }
    }
}

/// Contribution of one generator subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetStage {
    /// Indices into the generator list of `V`.
    pub subset: Vec<usize>,
    pub mu: u32,
    pub operators: usize,
    pub coefficients: usize,
    pub max_degree: u32,
    pub degree_bound: u128,
}

/// How the result was obtained when no subset stage ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shortcut {
    /// `V` is empty.
    UnitIdeal,
    /// `V` has fewer than `n − k + 1` generators, so every leaf meets it in
    /// dimension at least `k`.
    FewGenerators,
}

#[derive(Clone, Debug)]
pub struct SigmaLocusResult {
    pub generators: Ideal,
    pub k: usize,
    /// Largest order bound used by any stage (0 if none ran).
    pub mu: u32,
    pub rigorous: bool,
    pub max_degree: u32,
    pub sum_degree: u64,
    /// `max(deg V, max over stages of the operator degree bound)`.
    pub degree_bound: u128,
    pub subsets_used: usize,
    pub parameters: Vec<String>,
    pub provenance: Vec<SubsetStage>,
    pub shortcut: Option<Shortcut>,
}

impl SigmaLocusResult {
    /// True when every generator vanishes at `point` (chart coordinates).
    pub fn contains(&self, point: &[Rational]) -> bool {
        self.generators.gens().iter().all(|g| g.eval(point).is_zero())
    }

    pub fn is_empty_locus(&self) -> bool {
        self.generators.gens().iter().any(|g| g.is_constant())
    }
}

/// True when `gens` have no common zero on the chart.
fn empty_on_chart(chart: &AffineChart, gens: &[MultiPoly]) -> Result<bool> {
    if gens.is_empty() {
        return Ok(false);
    }
    let i = Ideal::new(chart.vars(), gens.to_vec())?.sum(chart.ideal())?;
    let q = chart.localizer();
    let sat = if q.is_constant() {
        groebner_basis(&i, TermOrder::GrevLex)
    } else {
        i.saturate(&q)?
    };
    Ok(sat.has_unit_generator())
}

fn degree_of(p: &MultiPoly) -> u32 {
    p.total_degree().unwrap_or(0)
}

fn finish(
    chart: &AffineChart,
    gens: Vec<MultiPoly>,
    k: usize,
    policy: OrderBoundPolicy,
    provenance: Vec<SubsetStage>,
    shortcut: Option<Shortcut>,
    base_bound: u128,
    parameters: Vec<String>,
) -> Result<SigmaLocusResult> {
    let vars = chart.vars();
    let mut gens = canonical_set(gens);
    if gens.iter().any(|g| g.is_constant()) || empty_on_chart(chart, &gens)? {
        gens = vec![MultiPoly::one(vars)];
    }
    let max_degree = gens.iter().map(degree_of).max().unwrap_or(0);
    let sum_degree = gens.iter().map(|g| degree_of(g) as u64).sum();
    let degree_bound = provenance
        .iter()
        .map(|s| s.degree_bound)
        .fold(base_bound, u128::max);
    Ok(SigmaLocusResult {
        generators: Ideal::new(vars, gens)?,
        k,
        mu: provenance.iter().map(|s| s.mu).max().unwrap_or(0),
        rigorous: policy.is_rigorous(),
        max_degree,
        sum_degree,
        degree_bound,
        subsets_used: provenance.len(),
        parameters,
        provenance,
        shortcut,
    })
}

/// Generators for `{p ∈ V : dim(L_p ∩ V) ≥ k}` on the chart of `f`.
pub fn sigma_equations(
    v: &Ideal,
    f: &Foliation,
    k: usize,
    opts: &SigmaOptions,
) -> Result<SigmaLocusResult> {
    let n = f.leaf_dim();
    if k < 1 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let vars = f.vars().clone();
    let v = v.with_vars(&vars)?;
    let gens: Vec<MultiPoly> = canonical_set(v.gens().to_vec());
    let base_bound = gens.iter().map(degree_of).max().unwrap_or(0) as u128;

    if groebner_basis(&v, TermOrder::GrevLex).has_unit_generator() {
        return finish(f.chart(), vec![MultiPoly::one(&vars)], k, opts.policy, vec![], Some(Shortcut::UnitIdeal), base_bound, vec![]);
    }
    let m = n - k + 1;
    if gens.len() < m {
        return finish(f.chart(), gens, k, opts.policy, vec![], Some(Shortcut::FewGenerators), base_bound, vec![]);
    }
    let count = binomial(gens.len() as u128, m as u128);
    if count > opts.subset_cap {
        return Err(Error::SubsetCapExceeded {
            count,
            cap: opts.subset_cap,
        });
    }

    let (sub, cnames) = f.subfoliation_family(k)?;
    let sub_vars = sub.vars().clone();
    let c_idx: Vec<usize> = cnames.iter().map(|c| sub_vars.require(c)).collect::<Result<_>>()?;
    let fd = FieldDegrees::of(&sub);
    let deg_xi = sub.degree();
    let subsets: Vec<Vec<usize>> = (0..gens.len()).combinations(m).collect();

    let stages: Vec<Result<(SubsetStage, Vec<MultiPoly>)>> = subsets
        .par_iter()
        .map(|subset| {
            let ps: Vec<MultiPoly> = subset
                .iter()
                .map(|&i| gens[i].with_vars(&sub_vars))
                .collect::<Result<_>>()?;
            let deg_p = ps.iter().map(degree_of).max().unwrap_or(0);
            let mu = order_bound(opts.policy, m as u32, deg_xi, deg_p);
            let ops = macaulay_system(&ps, &sub, mu)?.emit(opts.minor_budget)?;
            let mut coeffs = Vec::new();
            for e in &ops.emitted {
                for (_, c) in e.coefficients_in(&c_idx) {
                    coeffs.push(c.with_vars(&vars)?);
                }
            }
            let coeffs = canonical_set(coeffs);
            let stage = SubsetStage {
                subset: subset.clone(),
                mu,
                operators: ops.emitted.len(),
                coefficients: coeffs.len(),
                max_degree: coeffs.iter().map(degree_of).max().unwrap_or(0),
                degree_bound: operator_degree_bound(deg_p, fd, m, mu),
            };
            Ok((stage, coeffs))
        })
        .collect();

    let mut provenance = Vec::with_capacity(stages.len());
    let mut all = gens.clone();
    for s in stages {
        let (stage, coeffs) = s?;
        provenance.push(stage);
        all.extend(coeffs);
    }
    provenance.sort_by(|a, b| a.subset.cmp(&b.subset));
    finish(f.chart(), all, k, opts.policy, provenance, None, base_bound, cnames)
}

/// `sigma_equations` for a foliation carrying parameter variables that
/// every field must annihilate.
pub fn a_locus(
    v: &Ideal,
    f: &Foliation,
    k: usize,
    params: &[String],
    opts: &SigmaOptions,
) -> Result<SigmaLocusResult> {
    f.check_parameters(params)?;
    sigma_equations(v, f, k, opts)
}

/// `V(closure) \ V(boundary)`.
#[derive(Clone, Debug)]
pub struct ConstructibleSet {
    pub closure: Ideal,
    pub boundary: Ideal,
    /// Largest generator degree of the closure plus that of the boundary.
    pub complexity: u32,
}

impl ConstructibleSet {
    pub fn contains(&self, point: &[Rational]) -> bool {
        let on = |i: &Ideal| i.gens().iter().all(|g| g.eval(point).is_zero());
        on(&self.closure) && !on(&self.boundary)
    }
}

/// `V(A) \ V(B)`, stored with boundary `A + B`.
pub fn constructible_difference(a: &Ideal, b: &Ideal) -> Result<ConstructibleSet> {
    if !a.vars().same_as(b.vars()) {
        return Err(Error::DimensionMismatch(
            "constructible difference needs one variable list".into(),
        ));
    }
    let boundary = a.sum(b)?;
    let deg = |i: &Ideal| i.gens().iter().map(degree_of).max().unwrap_or(0);
    Ok(ConstructibleSet {
        complexity: deg(a) + deg(&boundary),
        closure: a.clone(),
        boundary,
    })
}

/// Zariski closure of the projection forgetting `drop`.
pub fn project_closure(a: &Ideal, drop: &[&str]) -> Result<Ideal> {
    eliminate(a, drop)
}
