//! Ideals, Buchberger's algorithm with the sugar strategy and
//! Gebauer-Moeller pair criteria, elimination and saturation.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::field::Rational;
use super::order::TermOrder;
use super::poly::{add_exps, exps_div, exps_divides, exps_lcm, Exponents, MultiPoly};
use super::vars::Vars;
use crate::error::{Error, Result};

/// Polynomial ideal over a fixed variable list. `basis_order` is set when
/// the generators form a reduced Groebner basis under that order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    vars: Vars,
    gens: Vec<MultiPoly>,
    basis_order: Option<TermOrder>,
}

impl Ideal {
    /// Embeds every generator into `vars`; zero generators are dropped.
    pub fn new(vars: &Vars, gens: Vec<MultiPoly>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.with_vars(vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            vars: vars.clone(),
            gens,
            basis_order: None,
        })
    }

    pub fn zero(vars: &Vars) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: Vec::new(),
            basis_order: None,
        }
    }

    pub fn unit(vars: &Vars) -> Self {
        Ideal {
            vars: vars.clone(),
            gens: vec![MultiPoly::one(vars)],
            basis_order: Some(TermOrder::GrevLex),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn basis_order(&self) -> Option<TermOrder> {
        self.basis_order
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when some generator is a nonzero constant. Exact for bases.
    pub fn has_unit_generator(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// `self + other` by concatenating generators.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let vars = self.vars.union(&other.vars);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&vars, gens)
    }

    pub fn with_generators(&self, extra: Vec<MultiPoly>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.vars, gens)
    }

    pub fn with_vars(&self, vars: &Vars) -> Result<Ideal> {
        Ideal::new(vars, self.gens.clone())
    }

    /// Membership test; computes a basis when the ideal is not one already.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        let gb = match self.basis_order {
            Some(_) => self.clone(),
            None => groebner_basis(self, TermOrder::GrevLex),
        };
        Ok(reduce_mod_ideal(p, &gb)?.is_zero())
    }

    /// `p` lies in the radical iff `1` lies in `I + (1 - u p)`.
    pub fn radical_contains(&self, p: &MultiPoly) -> Result<bool> {
        let p = p.with_vars(&self.vars)?;
        if p.is_zero() {
            return Ok(true);
        }
        let u = self.vars.fresh("u");
        let ext = self.vars.extended(&[u.as_str()]);
        let uvar = MultiPoly::var_named(&ext, &u)?;
        let rab = &MultiPoly::one(&ext) - &(&uvar * &p.with_vars(&ext)?);
        let big = self.with_vars(&ext)?.with_generators(vec![rab])?;
        Ok(groebner_basis(&big, TermOrder::GrevLex).has_unit_generator())
    }

    /// `I : q^infinity`, computed with an extra variable `u` and `u q - 1`.
    pub fn saturate(&self, q: &MultiPoly) -> Result<Ideal> {
        let q = q.with_vars(&self.vars)?;
        if q.is_constant() {
            return Ok(groebner_basis(self, TermOrder::GrevLex));
        }
        let u = self.vars.fresh("u");
        let ext = Vars::new(&[u.as_str()]).union(&self.vars);
        let uvar = MultiPoly::var_named(&ext, &u)?;
        let rab = &(&uvar * &q.with_vars(&ext)?) - &MultiPoly::one(&ext);
        let big = self.with_vars(&ext)?.with_generators(vec![rab])?;
        let out = eliminate(&big, &[u.as_str()])?;
        out.with_vars(&self.vars).map(|mut i| {
            i.basis_order = out.basis_order;
            i
        })
    }
}

/// Internal polynomial: terms sorted decreasingly, first coefficient 1.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Exponents, Rational)>,
    sugar: u32,
}

impl GPoly {
    fn lm(&self) -> &Exponents {
        &self.terms[0].0
    }
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn to_sorted(p: &MultiPoly, order: TermOrder) -> Vec<(Exponents, Rational)> {
    p.sorted_terms(order)
}

fn make_monic(mut t: Vec<(Exponents, Rational)>) -> Vec<(Exponents, Rational)> {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.recip();
            for (_, x) in t.iter_mut() {
                *x *= &inv;
            }
        }
    }
    t
}

/// `a - c * x^shift * b` on sorted term lists.
fn sub_scaled(
    a: &[(Exponents, Rational)],
    c: &Rational,
    shift: &[u32],
    b: &[(Exponents, Rational)],
    order: TermOrder,
) -> Vec<(Exponents, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(e, x)| (add_exps(e, shift), x * c)).peekable();
    while i < a.len() || bi.peek().is_some() {
        match (a.get(i), bi.peek()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, v) = bi.next().unwrap();
                    out.push((e, -v));
                }
                Ordering::Equal => {
                    let (e, v) = bi.next().unwrap();
                    let s = &x.1 - v;
                    if !s.is_zero() {
                        out.push((e, s));
                    }
                    i += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (e, v) = bi.next().unwrap();
                out.push((e, -v));
            }
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `p` by the active basis elements.
fn normal_form(
    p: Vec<(Exponents, Rational)>,
    basis: &[GPoly],
    active: &[bool],
    order: TermOrder,
) -> Vec<(Exponents, Rational)> {
    let mut rem = p;
    let mut out: Vec<(Exponents, Rational)> = Vec::new();
    while !rem.is_empty() {
        let (lead, lc) = rem[0].clone();
        let divisor = basis
            .iter()
            .zip(active)
            .find(|(g, &a)| a && exps_divides(g.lm(), &lead));
        match divisor {
            Some((g, _)) => {
                let shift = exps_div(&lead, g.lm()).unwrap();
                rem = sub_scaled(&rem, &lc, &shift, &g.terms, order);
            }
            None => {
                out.push(rem.remove(0));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exponents,
    sugar: u32,
}

fn spoly(f: &GPoly, g: &GPoly, lcm: &[u32], order: TermOrder) -> Vec<(Exponents, Rational)> {
    let sf = exps_div(lcm, f.lm()).unwrap();
    let sg = exps_div(lcm, g.lm()).unwrap();
    let ft: Vec<(Exponents, Rational)> = f.terms.iter().map(|(e, c)| (add_exps(e, &sf), c.clone())).collect();
    sub_scaled(&ft, &Rational::one(), &sg, &g.terms, order)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn make_pair(basis: &[GPoly], i: usize, j: usize) -> Pair {
    let lcm = exps_lcm(basis[i].lm(), basis[j].lm());
    let d = deg(&lcm);
    let si = basis[i].sugar + d - deg(basis[i].lm());
    let sj = basis[j].sugar + d - deg(basis[j].lm());
    Pair {
        i,
        j,
        lcm,
        sugar: si.max(sj),
    }
}

/// Gebauer-Moeller update with the new element at index `h`.
fn update(basis: &[GPoly], active: &mut [bool], pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis[h].lm().clone();
    let mut candidates: Vec<Pair> = (0..h)
        .filter(|&i| active[i])
        .map(|i| make_pair(basis, i, h))
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let cop = coprime(basis[p.i].lm(), &lh);
        let dominated = candidates
            .iter()
            .chain(kept.iter())
            .any(|q| exps_divides(&q.lcm, &p.lcm));
        if cop || !dominated {
            kept.push(p);
        }
    }
    kept.retain(|p| !coprime(basis[p.i].lm(), &lh));
    pairs.retain(|p| {
        !(exps_divides(&lh, &p.lcm)
            && exps_lcm(basis[p.i].lm(), &lh) != p.lcm
            && exps_lcm(basis[p.j].lm(), &lh) != p.lcm)
    });
    pairs.extend(kept);
    for i in 0..h {
        if active[i] && exps_divides(&lh, basis[i].lm()) {
            active[i] = false;
        }
    }
    active[h] = true;
}

fn select(pairs: &mut Vec<Pair>, order: TermOrder) -> Pair {
    let mut best = 0;
    for k in 1..pairs.len() {
        let a = &pairs[k];
        let b = &pairs[best];
        let better = match a.sugar.cmp(&b.sugar) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => order.cmp(&a.lcm, &b.lcm) == Ordering::Less,
        };
        if better {
            best = k;
        }
    }
    pairs.swap_remove(best)
}

fn from_sorted(vars: &Vars, terms: Vec<(Exponents, Rational)>) -> MultiPoly {
    MultiPoly::from_terms(vars, terms)
}

/// Reduced Groebner basis of `ideal` under `order`. Elements are primitive
/// with integer coefficients and positive leading coefficient, sorted by
/// increasing leading monomial. The unit ideal returns `{1}`.
pub fn groebner_basis(ideal: &Ideal, order: TermOrder) -> Ideal {
    let vars = ideal.vars.clone();
    if ideal.basis_order == Some(order) {
        return ideal.clone();
    }
    let mut basis: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Vec<(Exponents, Rational)>> = ideal
        .gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_sorted(g, order))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));

    let unit = || Ideal::unit(&vars).with_order(order);

    for t in inputs {
        let r = normal_form(t, &basis, &active, order);
        if r.is_empty() {
            continue;
        }
        if r.len() == 1 && deg(&r[0].0) == 0 {
            return unit();
        }
        let sugar = r.iter().map(|(e, _)| deg(e)).max().unwrap();
        basis.push(GPoly {
            terms: make_monic(r),
            sugar,
        });
        active.push(false);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let p = select(&mut pairs, order);
        let s = spoly(&basis[p.i], &basis[p.j], &p.lcm, order);
        let r = normal_form(s, &basis, &active, order);
        if r.is_empty() {
            continue;
        }
        if r.len() == 1 && deg(&r[0].0) == 0 {
            return unit();
        }
        basis.push(GPoly {
            terms: make_monic(r),
            sugar: p.sugar,
        });
        active.push(false);
        let h = basis.len() - 1;
        update(&basis, &mut active, &mut pairs, h);
    }

    // minimal basis, then interreduce
    let mut minimal: Vec<GPoly> = basis
        .iter()
        .zip(&active)
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.clone())
        .collect();
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut keep = vec![true; minimal.len()];
    for i in 0..minimal.len() {
        for j in 0..minimal.len() {
            if i != j && keep[j] && exps_divides(minimal[j].lm(), minimal[i].lm()) {
                if minimal[j].lm() != minimal[i].lm() || j < i {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let minimal: Vec<GPoly> = minimal
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(g, _)| g)
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<bool> = (0..minimal.len()).map(|j| j != i).collect();
        let head = minimal[i].terms[0].clone();
        let tail = minimal[i].terms[1..].to_vec();
        let mut t = vec![head];
        t.extend(normal_form(tail, &minimal, &others, order));
        reduced.push(from_sorted(&vars, t).primitive_under(order));
    }
    Ideal {
        vars,
        gens: reduced,
        basis_order: Some(order),
    }
}

impl Ideal {
    fn with_order(mut self, order: TermOrder) -> Self {
        self.basis_order = Some(order);
        self
    }
}

impl MultiPoly {
    /// Primitive integer form with positive leading coefficient under `order`.
    fn primitive_under(&self, order: TermOrder) -> MultiPoly {
        let p = self.primitive();
        match p.leading_coeff(order) {
            Some(c) if c < &Rational::zero() => -p,
            _ => p,
        }
    }
}

/// Normal form of `p` modulo a Groebner basis.
pub fn reduce_mod_ideal(p: &MultiPoly, gb: &Ideal) -> Result<MultiPoly> {
    let order = gb.basis_order.ok_or(Error::NotGroebnerBasis)?;
    let p = p.with_vars(&gb.vars)?;
    let basis: Vec<GPoly> = gb
        .gens
        .iter()
        .map(|g| GPoly {
            terms: make_monic(to_sorted(g, order)),
            sugar: 0,
        })
        .collect();
    let active = vec![true; basis.len()];
    let r = normal_form(to_sorted(&p, order), &basis, &active, order);
    Ok(from_sorted(&gb.vars, r))
}

/// Generators of `I ∩ Q[remaining variables]`, as a reduced basis over the
/// remaining variables (original relative order).
pub fn eliminate(ideal: &Ideal, drop: &[&str]) -> Result<Ideal> {
    for d in drop {
        ideal.vars.require(d)?;
    }
    let remaining: Vec<&str> = ideal.vars.iter().filter(|v| !drop.contains(v)).collect();
    let rem_vars = Vars::new(&remaining);
    if drop.is_empty() {
        return Ok(groebner_basis(&ideal.with_vars(&rem_vars)?, TermOrder::GrevLex));
    }
    let mut perm: Vec<&str> = drop.to_vec();
    perm.extend(remaining.iter().copied());
    let pvars = Vars::new(&perm);
    let gb = groebner_basis(&ideal.with_vars(&pvars)?, TermOrder::Block { first: drop.len() });
    let gens: Vec<MultiPoly> = gb
        .gens
        .iter()
        .filter(|g| (0..drop.len()).all(|i| !g.uses_var(i)))
        .map(|g| g.with_vars(&rem_vars))
        .collect::<Result<_>>()?;
    Ok(Ideal {
        vars: rem_vars,
        gens,
        basis_order: Some(TermOrder::GrevLex),
    })
}
