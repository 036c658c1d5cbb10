//! Truncated series: univariate Laurent series in a local parameter and
//! multivariate power series truncated in total degree.

use std::collections::BTreeMap;

use super::field::{Field, Rational};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// `Σ_{e = low}^{trunc - 1} c_e t^e + O(t^trunc)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<C> {
    symbol: String,
    low: i64,
    coeffs: Vec<C>,
}

impl<C: Field> LaurentSeries<C> {
    pub fn new(symbol: &str, low: i64, coeffs: Vec<C>) -> Self {
        LaurentSeries {
            symbol: symbol.to_string(),
            low,
            coeffs,
        }
    }

    /// `c·t^e + O(t^trunc)`; requires `e < trunc`.
    pub fn monomial(symbol: &str, e: i64, c: C, trunc: i64) -> Self {
        assert!(e < trunc, "monomial beyond truncation");
        let mut coeffs = vec![C::zero(); (trunc - e) as usize];
        coeffs[0] = c;
        Self::new(symbol, e, coeffs)
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// First exponent that is not known.
    pub fn trunc(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Result<C> {
        if e >= self.trunc() {
            return Err(Error::BeyondTruncation {
                exponent: e,
                truncation: self.trunc(),
            });
        }
        if e < self.low {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(e - self.low) as usize].clone())
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.low + i as i64)
    }

    /// Drops leading zero coefficients.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => Self::new(
                &self.symbol,
                v,
                self.coeffs[(v - self.low) as usize..].to_vec(),
            ),
            None => Self::new(&self.symbol, self.trunc(), Vec::new()),
        }
    }

    pub fn truncated(&self, trunc: i64) -> Result<Self> {
        if trunc > self.trunc() {
            return Err(Error::BeyondTruncation {
                exponent: trunc - 1,
                truncation: self.trunc(),
            });
        }
        let low = self.low.min(trunc);
        let coeffs = (low..trunc).map(|e| self.coeff(e)).collect::<Result<_>>()?;
        Ok(Self::new(&self.symbol, low, coeffs))
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        let low = self.low.min(o.low);
        let trunc = self.trunc().min(o.trunc());
        let coeffs = (low..trunc)
            .map(|e| {
                let a = self.coeff(e).unwrap();
                let b = o.coeff(e).unwrap();
                if sign {
                    a + &b
                } else {
                    a - &b
                }
            })
            .collect();
        Self::new(&self.symbol, low, coeffs)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            &self.symbol,
            self.low,
            self.coeffs.iter().map(|x| x.clone() * c).collect(),
        )
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(&self.symbol, self.low + k, self.coeffs.clone())
    }

    /// Product; precision is limited by the less precise factor.
    pub fn mul(&self, o: &Self) -> Self {
        let a = self.normalized();
        let b = o.normalized();
        let low = a.low + b.low;
        let trunc = (a.low + b.trunc()).min(b.low + a.trunc());
        let len = (trunc - low).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                let cur = std::mem::replace(&mut coeffs[i + j], C::zero());
                coeffs[i + j] = cur + &(x.clone() * y);
            }
        }
        Self::new(&self.symbol, low, coeffs)
    }

    /// `self^r` for a series of the form `1 + O(t)`, by the power
    /// recurrence `n h_n = Σ_{k=1}^{n} (r k − n + k) u_k h_{n−k}`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self> {
        if self.low != 0 || self.coeffs.first().map_or(true, |c| !c.is_one()) {
            return Err(Error::DimensionMismatch(
                "rational power needs a series starting 1 + O(t)".into(),
            ));
        }
        let len = self.coeffs.len();
        let u = &self.coeffs;
        let mut h: Vec<C> = Vec::with_capacity(len);
        h.push(C::one());
        for n in 1..len {
            let mut acc = C::zero();
            for k in 1..=n {
                if u[k].is_zero() {
                    continue;
                }
                let w = r * Rational::from_integer((k as i64).into())
                    - Rational::from_integer(((n - k) as i64).into());
                acc = acc + &(C::from_rational(&w) * &u[k] * &h[n - k]);
            }
            h.push(acc / &C::from_int(n as i64));
        }
        Ok(Self::new(&self.symbol, 0, h))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::new(&self.symbol, self.low - 1, Vec::new());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.clone() * &C::from_int(self.low + i as i64))
            .collect();
        Self::new(&self.symbol, self.low - 1, coeffs)
    }

    /// Coefficient of `t^-1`.
    pub fn residue(&self) -> Result<C> {
        self.coeff(-1)
    }

    /// Formal primitive with zero constant term; refuses a nonzero residue.
    pub fn integrate(&self) -> Result<Self> {
        let res = self.residue()?;
        if !res.is_zero() {
            return Err(Error::NotSecondKind(format!("{:?}", res)));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.low + i as i64;
                if e == -1 {
                    C::zero()
                } else {
                    c.clone() / &C::from_int(e + 1)
                }
            })
            .collect();
        Ok(Self::new(&self.symbol, self.low + 1, coeffs))
    }
}

/// Power series in `n` variables truncated above total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<C> {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Field> MultiSeries<C> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        MultiSeries {
            nvars,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: C) -> Self {
        let mut s = Self::zero(nvars, order);
        s.add_term(vec![0; nvars], c);
        s
    }

    /// The variable `t_i`.
    pub fn var(nvars: usize, order: u32, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, order);
        s.add_term(e, C::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() || e.iter().sum::<u32>() > self.order {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn truncated(&self, order: u32) -> Self {
        let mut s = Self::zero(self.nvars, order.min(self.order));
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.truncated(o.order);
        for (e, c) in &o.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, x) in &self.terms {
            s.add_term(e.clone(), x.clone() * c);
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut s = Self::zero(self.nvars, order);
        for (a, x) in &self.terms {
            let da: u32 = a.iter().sum();
            if da > order {
                continue;
            }
            for (b, y) in &o.terms {
                if da + b.iter().sum::<u32>() > order {
                    continue;
                }
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                s.add_term(e, x.clone() * y);
            }
        }
        s
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(&vec![0; self.nvars]);
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.inv();
        // 1/(c0 (1 + u)) = c0^{-1} Σ (−u)^j
        let mut u = self.scale(&inv0);
        u.terms.remove(&vec![0; self.nvars]);
        let neg_u = u.neg();
        let mut acc = Self::constant(self.nvars, self.order, C::one());
        let mut pw = acc.clone();
        for _ in 0..self.order {
            pw = pw.mul(&neg_u);
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Some(acc.scale(&inv0))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            s.add_term(f, c.clone() * &C::from_int(e[i] as i64));
        }
        s
    }

    /// Primitive in `t_i` vanishing on `t_i = 0`.
    pub fn integrate(&self, i: usize) -> Self {
        let mut s = Self::zero(self.nvars, self.order);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[i] += 1;
            let k = f[i] as i64;
            s.add_term(f, c.clone() / &C::from_int(k));
        }
        s
    }

    /// Evaluates a rational polynomial at series arguments.
    pub fn eval_poly(p: &MultiPoly, args: &[MultiSeries<C>]) -> Self {
        assert_eq!(p.nvars(), args.len(), "argument count");
        let nv = args.first().map_or(0, |a| a.nvars);
        let order = args.iter().map(|a| a.order).min().unwrap_or(0);
        let mut powers: Vec<Vec<MultiSeries<C>>> = args
            .iter()
            .map(|a| vec![Self::constant(nv, order, C::one()), a.truncated(order)])
            .collect();
        let mut out = Self::zero(nv, order);
        for (e, c) in p.terms() {
            let mut term = Self::constant(nv, order, C::from_rational(c));
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&powers[i][1]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out = out.add(&term);
        }
        out
    }
}
