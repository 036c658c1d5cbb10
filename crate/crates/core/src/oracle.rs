//! Leafwise multiplicity computed directly from a numerically exact flow.
//!
//! The flow through `p` is built by Picard iteration, one field at a time
//! (`φ(t) = Φ^n_{t_n} ∘ … ∘ Φ^1_{t_1}(p)`), which does not use the
//! Lie-derivative tables of the multiplicity engine. The dimensions
//! `d_s = dim Q[[t]]/(I + m^{s+1})` are then obtained by linear algebra on
//! truncated series until they stabilize.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::algebra::{MultiPoly, MultiSeries, Rational, RationalFunc};
use crate::error::{Error, Result};
use crate::foliation::{exponents_up_to, Foliation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u32),
    AboveCap,
}

impl Multiplicity {
    /// `mult > k`, with `AboveCap` treated as infinite.
    pub fn exceeds(&self, k: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => *m > k,
            Multiplicity::AboveCap => true,
        }
    }
}

fn eval_rf(
    f: &RationalFunc,
    args: &[MultiSeries<Rational>],
) -> Result<MultiSeries<Rational>> {
    let num = MultiSeries::eval_poly(f.num(), args);
    if f.is_polynomial() {
        return Ok(num);
    }
    let den = MultiSeries::eval_poly(f.den(), args);
    let inv = den
        .inverse()
        .ok_or_else(|| Error::PointOffChart(format!("denominator {} vanishes", f.den())))?;
    Ok(num.mul(&inv))
}

/// Flow of the foliation through `p`, exact to total degree `order`.
pub fn picard_flow(f: &Foliation, p: &[Rational], order: u32) -> Result<Vec<MultiSeries<Rational>>> {
    f.chart().check_point(p)?;
    let n = f.leaf_dim();
    let vars = f.vars();
    let mut x: Vec<MultiSeries<Rational>> = p
        .iter()
        .map(|c| MultiSeries::constant(n, order, c.clone()))
        .collect();
    for i in 0..n {
        let comps: Vec<RationalFunc> = f
            .field(i)
            .iter()
            .map(|c| c.with_vars(vars))
            .collect::<Result<_>>()?;
        let start = x.clone();
        // each sweep fixes one more power of t_i
        for _ in 0..=order {
            let mut next = Vec::with_capacity(x.len());
            for (j, c) in comps.iter().enumerate() {
                let rhs = if c.is_zero() {
                    MultiSeries::zero(n, order)
                } else {
                    eval_rf(c, &x)?
                };
                next.push(start[j].add(&rhs.integrate(i)));
            }
            if next == x {
                break;
            }
            x = next;
        }
    }
    Ok(x)
}

/// Rank by elimination with pivots on the highest column.
fn rank_high_pivot(rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut basis: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&col, val)) = row.iter().next_back() {
            let Some(piv) = basis.get(&col) else {
                break;
            };
            let factor = val / &piv[&col];
            for (c, v) in piv {
                let e = row.entry(*c).or_insert_with(Rational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
        if let Some((&col, _)) = row.iter().next_back() {
            basis.insert(col, row);
        }
    }
    basis.len()
}

/// `dim Q[[t]]/(I + m^{s+1})` for series generators `gens`.
pub fn truncated_colength(gens: &[MultiSeries<Rational>], n: usize, s: u32) -> usize {
    let monos = exponents_up_to(n, s);
    let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for beta in &monos {
            let mut row = BTreeMap::new();
            for (e, c) in g.terms() {
                let sum: Vec<u32> = e.iter().zip(beta).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(&sum) {
                    row.insert(col, c.clone());
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    monos.len() - rank_high_pivot(rows)
}

/// Multiplicity at `p` of `P` restricted to the leaf through `p`, or
/// `AboveCap` when it is at least `cap` (including non-isolated zeros).
pub fn leaf_multiplicity_oracle(
    p: &[MultiPoly],
    f: &Foliation,
    point: &[Rational],
    cap: u32,
) -> Result<Multiplicity> {
    let n = f.leaf_dim();
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} polynomials for {} fields",
            p.len(),
            n
        )));
    }
    let flow = picard_flow(f, point, cap)?;
    let gens: Vec<MultiSeries<Rational>> = p
        .iter()
        .map(|q| Ok(MultiSeries::eval_poly(&q.with_vars(f.vars())?, &flow)))
        .collect::<Result<_>>()?;
    let mut prev = truncated_colength(&gens, n, 0);
    if prev == 0 {
        return Ok(Multiplicity::Finite(0));
    }
    for s in 1..=cap {
        let d = truncated_colength(&gens, n, s);
        if d == prev {
            return Ok(if (d as u32) < cap {
                Multiplicity::Finite(d as u32)
            } else {
                Multiplicity::AboveCap
            });
        }
        if d as u32 >= cap {
            return Ok(Multiplicity::AboveCap);
        }
        prev = d;
    }
    Ok(Multiplicity::AboveCap)
}
