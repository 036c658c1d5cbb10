use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Rational;
use super::order::TermOrder;
use super::vars::Vars;
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in a map keyed by exponent vector; no stored coefficient is
/// zero. Binary operations between polynomials over different variable
/// lists first embed both into the union of the lists.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, Rational::from_integer(BigInt::from(n)))
    }

    /// The variable with index `i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, unit_exponent(vars.len(), i), Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self> {
        Ok(Self::var(vars, vars.require(name)?))
    }

    pub fn monomial(vars: &Vars, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    /// Total degree counting only the variables whose index satisfies `keep`.
    pub fn partial_degree(&self, keep: impl Fn(usize) -> bool) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .filter(|(i, _)| keep(*i))
                    .map(|(_, &x)| x)
                    .sum::<u32>()
            })
            .max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Indices of variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Re-expresses the polynomial over `target`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, target: &Vars) -> Result<MultiPoly> {
        if self.vars.same_as(target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.uses_var(i) => return Err(Error::UnknownVariable(name.to_string())),
                None => map.push(None),
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0u32; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = x;
                }
            }
            terms.insert(ne, c.clone());
        }
        Ok(MultiPoly {
            vars: target.clone(),
            terms,
        })
    }

    /// Embeds both operands into a common ring.
    pub fn align(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars.same_as(&other.vars) {
            return (self.clone(), other.clone());
        }
        let u = self.vars.union(&other.vars);
        (
            self.with_vars(&u).expect("union contains all"),
            other.with_vars(&u).expect("union contains all"),
        )
    }

    /// Drops variables that do not occur.
    pub fn trimmed(&self) -> MultiPoly {
        let keep = self.support();
        let names: Vec<&str> = keep.iter().map(|&i| self.vars.names()[i].as_str()).collect();
        self.with_vars(&Vars::new(&names)).expect("support kept")
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^shift`.
    pub fn mul_monomial(&self, shift: &[u32], c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exps(e, shift), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Derivative with respect to a named variable; zero if the name is absent.
    pub fn derivative_named(&self, name: &str) -> MultiPoly {
        match self.vars.index_of(name) {
            Some(i) => self.derivative(i),
            None => MultiPoly::zero(&self.vars),
        }
    }

    /// Value at a point; a polynomial over no variables is a constant and
    /// accepts any point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert!(
            self.nvars() == 0 || point.len() == self.nvars(),
            "point dimension mismatch"
        );
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes values for some variables (by index) and keeps the rest.
    pub fn partial_eval(&self, values: &[(usize, Rational)]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut t = c.clone();
            for (i, v) in values {
                let k = e[*i];
                if k > 0 {
                    t *= num_traits::pow(v.clone(), k as usize);
                    ne[*i] = 0;
                }
            }
            out.add_term(ne, t);
        }
        out
    }

    /// Substitutes polynomials for variables. `images[i]` replaces variable
    /// `i`; the result lives in the ring of the images.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .iter()
            .fold(Vars::empty(), |acc, p| acc.union(p.vars()));
        let images: Vec<MultiPoly> = images.iter().map(|p| p.with_vars(&target).unwrap()).collect();
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one(&target)]; images.len()];
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out += &t;
        }
        out
    }

    /// Leading exponent and coefficient under `order`.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Exponents, &Rational)> {
        match order {
            TermOrder::Lex => self.terms.iter().next_back(),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(a.0, b.0)),
        }
    }

    pub fn leading_coeff(&self, order: TermOrder) -> Option<&Rational> {
        self.leading_term(order).map(|t| t.1)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(Exponents, Rational)> {
        let mut v: Vec<(Exponents, Rational)> =
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.cmp(&b.0, &a.0));
        v
    }

    pub fn monic(&self, order: TermOrder) -> MultiPoly {
        match self.leading_coeff(order) {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with gcd 1 and positive grevlex-leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm_den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = BigRational::new(lcm_den, g);
        if self.leading_coeff(TermOrder::GrevLex).unwrap().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (a, d) = self.align(d);
        if let Some(c) = d.constant_value() {
            return Some(a.scale(&c.recip()));
        }
        let (dlm, dlc) = {
            let (e, c) = d.terms.iter().next_back().unwrap();
            (e.clone(), c.clone())
        };
        let mut r = a;
        let mut q = MultiPoly::zero(&d.vars);
        while let Some((e, c)) = r.terms.iter().next_back() {
            let shift = exps_div(e, &dlm)?;
            let factor = c / &dlc;
            q.add_term(shift.clone(), factor.clone());
            r -= &d.mul_monomial(&shift, &factor);
        }
        Some(q)
    }

    /// Coefficients with respect to the variables in `selected`: maps each
    /// exponent vector over `selected` to the polynomial coefficient in the
    /// remaining variables (still expressed over the full variable list).
    pub fn coefficients_in(&self, selected: &[usize]) -> BTreeMap<Exponents, MultiPoly> {
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let key: Exponents = selected.iter().map(|&i| e[i]).collect();
            let mut rest = e.clone();
            for &i in selected {
                rest[i] = 0;
            }
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient list in variable `i`: entry `j` is the coefficient of `x_i^j`.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); deg + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            out[e[i] as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_univariate_coeffs(vars: &Vars, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (j, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(vars).expect("coefficient ring");
            out += &c.mul_monomial(&unit_exponent(vars.len(), i).iter().map(|&x| x * j as u32).collect::<Vec<_>>(), &Rational::one());
        }
        out
    }
}

pub(crate) fn unit_exponent(n: usize, i: usize) -> Exponents {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

pub(crate) fn add_exps(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a / b` on monomials when `b | a`.
pub(crate) fn exps_div(a: &[u32], b: &[u32]) -> Option<Exponents> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_sub(*y))
        .collect()
}

pub(crate) fn exps_divides(b: &[u32], a: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

pub(crate) fn exps_lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.same_as(&other.vars) {
            return self.terms == other.terms;
        }
        let (a, b) = self.align(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> AddAssign<&'a MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &'a MultiPoly) {
        if !self.vars.same_as(&rhs.vars) {
            let (a, b) = self.align(rhs);
            *self = a;
            for (e, c) in b.terms {
                self.add_term(e, c);
            }
            return;
        }
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &'a MultiPoly) {
        if !self.vars.same_as(&rhs.vars) {
            let (a, b) = self.align(rhs);
            *self = a;
            for (e, c) in b.terms {
                self.add_term(e, -c);
            }
            return;
        }
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        if !self.vars.same_as(&rhs.vars) {
            let (a, b) = self.align(rhs);
            return &a * &b;
        }
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = add_exps(ea, eb);
                let c = ca * cb;
                match acc.entry(e) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc,
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &'a MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
