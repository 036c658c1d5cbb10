use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, Rational};
use super::gcd::{gcd, lcm};
use super::order::TermOrder;
use super::poly::MultiPoly;
use super::vars::Vars;
use crate::error::Result;

/// Quotient of two polynomials in lowest terms, denominator with leading
/// grevlex coefficient 1.
#[derive(Clone)]
pub struct RationalFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunc {
    /// Builds `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = num.align(&den);
        if num.is_zero() {
            return RationalFunc {
                den: MultiPoly::one(num.vars()),
                num,
            };
        }
        if let Some(c) = den.constant_value() {
            return RationalFunc {
                num: num.scale(&c.recip()),
                den: MultiPoly::one(den.vars()),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coeff(TermOrder::GrevLex).unwrap().recip();
        RationalFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunc { num: p, den }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn with_vars(&self, vars: &Vars) -> Result<Self> {
        Ok(RationalFunc {
            num: self.num.with_vars(vars)?,
            den: self.den.with_vars(vars)?,
        })
    }

    pub fn derivative(&self, i: usize) -> RationalFunc {
        let dn = self.num.derivative(i);
        if self.den.is_one() {
            return RationalFunc::from_poly(dn);
        }
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return RationalFunc::new(dn, self.den.clone());
        }
        RationalFunc::new(
            &(&dn * &self.den) - &(&self.num * &dd),
            &self.den * &self.den,
        )
    }

    pub fn derivative_named(&self, name: &str) -> RationalFunc {
        match self.vars().index_of(name) {
            Some(i) => self.derivative(i),
            None => RationalFunc::zero(),
        }
    }

    /// Value at a point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn partial_eval(&self, values: &[(usize, Rational)]) -> Option<RationalFunc> {
        let d = self.den.partial_eval(values);
        if d.is_zero() {
            return None;
        }
        Some(RationalFunc::new(self.num.partial_eval(values), d))
    }

    pub fn scale(&self, c: &Rational) -> RationalFunc {
        RationalFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Largest total degree of numerator and denominator.
    pub fn degree(&self) -> u32 {
        self.num
            .total_degree()
            .unwrap_or(0)
            .max(self.den.total_degree().unwrap_or(0))
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a RationalFunc>>(items: I) -> MultiPoly {
    let mut acc: Option<MultiPoly> = None;
    for r in items {
        acc = Some(match acc {
            None => r.den.primitive(),
            Some(a) if r.den.is_one() => a,
            Some(a) => lcm(&a, &r.den),
        });
    }
    acc.unwrap_or_else(|| MultiPoly::one(&Vars::empty()))
}

impl PartialEq for RationalFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den.is_one() && other.den.is_one() {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Zero for RationalFunc {
    fn zero() -> Self {
        RationalFunc::from_poly(MultiPoly::zero(&Vars::empty()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunc {
    fn one() -> Self {
        RationalFunc::from_poly(MultiPoly::one(&Vars::empty()))
    }
}

impl From<MultiPoly> for RationalFunc {
    fn from(p: MultiPoly) -> Self {
        RationalFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &'a RationalFunc) -> RationalFunc {
        if rhs.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return rhs.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &'a RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &'a RationalFunc) -> RationalFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_poly(&self.num * &rhs.num);
        }
        RationalFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a RationalFunc> for &'a RationalFunc {
    type Output = RationalFunc;
    fn div(self, rhs: &'a RationalFunc) -> RationalFunc {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RationalFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunc> for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunc> for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, rhs: &'a RationalFunc) -> RationalFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Field for RationalFunc {
    fn from_rational(q: &Rational) -> Self {
        RationalFunc::constant(&Vars::empty(), q.clone())
    }
}
