//! Multiplicity operators along the leaves of a foliation.
//!
//! For a tuple `P = (P_1..P_n)` and the formal flow `φ_p(t)` through `p`,
//! write `F_i(t) = P_i(φ_p(t))` and `I = (F_1..F_n)` in `Q[[t_1..t_n]]`.
//! With `d_s = dim Q[[t]]/(I + m^{s+1})`, the zero of `F` at `t = 0` has
//! multiplicity `> k` exactly when `d_k ≥ k + 1`: the sequence `d_s`
//! increases strictly until it stabilizes, and it stabilizes at the
//! multiplicity. `d_k` is `N − rank M_k(p)` where `M_k` is the truncated
//! Macaulay matrix with rows `t^β F_i` (`|β| ≤ k`) over the `N` monomials
//! of degree `≤ k`. The operators of order `k` are therefore the
//! `(N − k)`-minors of `M_k`, whose entries are the leaf Taylor
//! coefficients `ξ^α P_i / α!` with denominators cleared per row block.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{
    common_denominator, Exponents, MultiPoly, Rational, RationalFunc, Vars,
};
use crate::error::{Error, Result};
use crate::foliation::{exponents_up_to, factorial_multi, Foliation};

/// Default cap on the number of determinants evaluated when emitting.
pub const DEFAULT_MINOR_BUDGET: u128 = 200_000;

/// How the truncation order `μ` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderBoundPolicy {
    /// A value supplied by the caller, e.g. from the literature.
    Fixed(u32),
    /// `(deg P · (deg ξ + 1))^d`. Not a proven bound.
    Heuristic,
}

impl OrderBoundPolicy {
    pub fn is_rigorous(&self) -> bool {
        matches!(self, OrderBoundPolicy::Fixed(_))
    }
}

/// Truncation order for leaf dimension `d`. Never below 1.
pub fn order_bound(policy: OrderBoundPolicy, d: u32, deg_xi: u32, deg_p: u32) -> u32 {
    match policy {
        OrderBoundPolicy::Fixed(mu) => mu.max(1),
        OrderBoundPolicy::Heuristic => {
            let base = (deg_p as u64) * (deg_xi as u64 + 1);
            let v = base.saturating_pow(d);
            v.clamp(1, u32::MAX as u64) as u32
        }
    }
}

/// `C(n, r)` saturating at `u128::MAX`.
pub fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Degree data of a foliation written as `ξ_l = η_l / q` with one common
/// denominator `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldDegrees {
    /// `max deg η_l`.
    pub numerator: u32,
    /// `deg q`.
    pub denominator: u32,
}

impl FieldDegrees {
    pub fn of(f: &Foliation) -> Self {
        let comps: Vec<&RationalFunc> = f.fields().iter().flatten().collect();
        let q = common_denominator(comps.iter().copied());
        let dq = q.total_degree().unwrap_or(0);
        let numerator = comps
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| {
                let dn = c.num().total_degree().unwrap_or(0);
                let dd = c.den().total_degree().unwrap_or(0);
                dn + dq - dd
            })
            .max()
            .unwrap_or(0);
        FieldDegrees {
            numerator,
            denominator: dq,
        }
    }
}

/// Bound on the degree of one cleared matrix entry of order `k`.
///
/// `ξ^α P` with `|α| = j` equals `num_j / q^{m_j}` with `m_0 = 0`,
/// `m_j = 2j − 1` and `deg num_j ≤ deg P + j (a + d_q − 1)`. Each row block
/// is multiplied by a divisor of `q^{2k−1}`, so a cleared entry of order
/// `j` has degree at most `deg num_j + (2k − 1 − m_j) d_q`.
pub fn entry_degree_bound(deg_p: u32, fd: FieldDegrees, k: u32) -> u64 {
    let a = fd.numerator as i64;
    let dq = fd.denominator as i64;
    let k = k as i64;
    (0..=k)
        .map(|j| {
            let num = (deg_p as i64 + j * (a + dq - 1)).max(0);
            let m = if j == 0 { 0 } else { 2 * j - 1 };
            let clear = if dq == 0 { 0 } else { (2 * k - 1 - m) * dq };
            (num + clear) as u64
        })
        .max()
        .unwrap_or(0)
}

/// Degree bound for the operators of order `k` in leaf dimension `n`:
/// minor size `C(n + k, n) − k` times the entry bound.
pub fn operator_degree_bound(deg_p: u32, fd: FieldDegrees, n: usize, k: u32) -> u128 {
    let size = binomial(n as u128 + k as u128, n as u128) - k as u128;
    size.saturating_mul(entry_degree_bound(deg_p, fd, k) as u128)
}

/// The cleared truncated Macaulay matrix of order `k`, kept symbolically.
#[derive(Clone, Debug)]
pub struct MacaulaySystem {
    k: u32,
    vars: Vars,
    inputs: Vec<MultiPoly>,
    columns: Vec<Exponents>,
    column_index: HashMap<Exponents, usize>,
    /// Per input: cleared Taylor coefficients indexed by `α`.
    taylor: Vec<BTreeMap<Exponents, MultiPoly>>,
    row_factors: Vec<MultiPoly>,
    foliation: Foliation,
}

/// Builds the symbolic Macaulay matrix of order `k` for `P` along `f`.
pub fn macaulay_system(p: &[MultiPoly], f: &Foliation, k: u32) -> Result<MacaulaySystem> {
    let n = f.leaf_dim();
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} polynomials for a foliation with {} fields",
            p.len(),
            n
        )));
    }
    if k < 1 {
        return Err(Error::KOutOfRange {
            k: k as usize,
            n: usize::MAX,
        });
    }
    let vars = f.vars().clone();
    let inputs = p
        .iter()
        .map(|q| q.with_vars(&vars))
        .collect::<Result<Vec<_>>>()?;
    let columns = exponents_up_to(n, k);
    let column_index = columns
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    let mut taylor = Vec::with_capacity(n);
    let mut row_factors = Vec::with_capacity(n);
    for pi in &inputs {
        let table = f.lie_table(&RationalFunc::from_poly(pi.clone()), k);
        let scaled: Vec<(Exponents, RationalFunc)> = table
            .into_iter()
            .map(|(a, v)| {
                let fac = factorial_multi(&a).recip();
                (a, v.scale(&fac))
            })
            .collect();
        let l = common_denominator(scaled.iter().map(|(_, v)| v)).with_vars(&vars)?;
        if !l.is_constant() && f.chart().contains_poly(&l)? {
            return Err(Error::ChartDenominator(l.to_string()));
        }
        let lr = RationalFunc::from_poly(l.clone());
        let mut cleared = BTreeMap::new();
        for (a, v) in scaled {
            if v.is_zero() {
                continue;
            }
            let c = &v * &lr;
            debug_assert!(c.is_polynomial());
            cleared.insert(a, c.num().with_vars(&vars)?);
        }
        taylor.push(cleared);
        row_factors.push(l);
    }
    Ok(MacaulaySystem {
        k,
        vars,
        inputs,
        columns,
        column_index,
        taylor,
        row_factors,
        foliation: f.clone(),
    })
}

impl MacaulaySystem {
    pub fn order(&self) -> u32 {
        self.k
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Size of the minors that serve as operators.
    pub fn minor_size(&self) -> usize {
        self.columns.len() - self.k as usize
    }

    /// Denominator-clearing factor for each input's row block.
    pub fn row_factors(&self) -> &[MultiPoly] {
        &self.row_factors
    }

    /// Rows `(i, β)`, each a sparse list of `(column, entry)`.
    fn symbolic_rows(&self) -> Vec<Vec<(usize, MultiPoly)>> {
        let mut rows = Vec::new();
        for t in &self.taylor {
            for beta in &self.columns {
                let mut row: Vec<(usize, MultiPoly)> = t
                    .iter()
                    .filter_map(|(a, c)| {
                        let g: Exponents = a.iter().zip(beta).map(|(x, y)| x + y).collect();
                        self.column_index.get(&g).map(|&col| (col, c.clone()))
                    })
                    .collect();
                if row.is_empty() {
                    continue;
                }
                row.sort_by_key(|e| e.0);
                if !rows.contains(&row) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    /// Rank of the matrix evaluated at `point`, which must lie on the chart.
    pub fn rank_at(&self, point: &[Rational]) -> Result<usize> {
        self.foliation.chart().check_point(point)?;
        let evaluated: Vec<BTreeMap<Exponents, Rational>> = self
            .taylor
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(a, c)| (a.clone(), c.eval(point)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let mut rows = Vec::new();
        for t in &evaluated {
            for beta in &self.columns {
                let row: Vec<(usize, Rational)> = t
                    .iter()
                    .filter_map(|(a, c)| {
                        let g: Exponents = a.iter().zip(beta).map(|(x, y)| x + y).collect();
                        self.column_index.get(&g).map(|&col| (col, c.clone()))
                    })
                    .sorted_by_key(|e| e.0)
                    .collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        Ok(sparse_rank(rows))
    }

    /// True when every operator of this order vanishes at `point`, i.e.
    /// when the evaluated matrix has no nonzero minor of the operator size.
    pub fn vanishes_at(&self, point: &[Rational]) -> Result<bool> {
        Ok(self.rank_at(point)? < self.minor_size())
    }

    /// Number of determinants an emission would evaluate.
    pub fn emission_cost(&self) -> u128 {
        let rows = self.symbolic_rows();
        let cols = nonzero_columns(&rows, self.columns.len());
        let s = self.minor_size() as u128;
        binomial(rows.len() as u128, s).saturating_mul(binomial(cols.len() as u128, s))
    }

    /// Enumerates all operator minors, refusing above `budget` determinants.
    pub fn emit(&self, budget: u128) -> Result<MultiplicityOperatorSet> {
        let rows = self.symbolic_rows();
        let cols = nonzero_columns(&rows, self.columns.len());
        let s = self.minor_size();
        let needed =
            binomial(rows.len() as u128, s as u128).saturating_mul(binomial(cols.len() as u128, s as u128));
        if needed > budget {
            return Err(Error::MinorBudgetExceeded { needed, budget });
        }
        let zero = MultiPoly::zero(&self.vars);
        let dense: Vec<Vec<MultiPoly>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![zero.clone(); self.columns.len()];
                for (c, v) in r {
                    d[*c] = v.clone();
                }
                d
            })
            .collect();
        let row_sets: Vec<Vec<usize>> = if rows.len() >= s {
            (0..rows.len()).combinations(s).collect()
        } else {
            Vec::new()
        };
        let col_sets: Vec<Vec<usize>> = if cols.len() >= s {
            cols.iter().copied().combinations(s).collect()
        } else {
            Vec::new()
        };
        let minors: Vec<Vec<MultiPoly>> = row_sets
            .par_iter()
            .map(|rs| {
                col_sets
                    .iter()
                    .filter_map(|cs| {
                        let m: Vec<Vec<MultiPoly>> = rs
                            .iter()
                            .map(|&r| cs.iter().map(|&c| dense[r][c].clone()).collect())
                            .collect();
                        let d = bareiss_det(m);
                        (!d.is_zero()).then(|| d.primitive())
                    })
                    .collect()
            })
            .collect();
        let emitted = canonical_set(minors.into_iter().flatten().collect());
        let max_degree = emitted
            .iter()
            .map(|g| g.total_degree().unwrap_or(0))
            .max()
            .unwrap_or(0);
        let fd = FieldDegrees::of(&self.foliation);
        let deg_p = self
            .inputs
            .iter()
            .map(|p| p.total_degree().unwrap_or(0))
            .max()
            .unwrap_or(0);
        Ok(MultiplicityOperatorSet {
            order: self.k,
            vars: self.vars.clone(),
            inputs: self.inputs.clone(),
            emitted,
            max_degree,
            degree_bound: operator_degree_bound(deg_p, fd, self.foliation.leaf_dim(), self.k),
            row_factors: self.row_factors.clone(),
            minor_size: s,
            determinants: needed,
        })
    }
}

fn nonzero_columns<T>(rows: &[Vec<(usize, T)>], ncols: usize) -> Vec<usize> {
    let mut used = vec![false; ncols];
    for r in rows {
        for (c, _) in r {
            used[*c] = true;
        }
    }
    (0..ncols).filter(|&c| used[c]).collect()
}

/// Deduplicates, then sorts by degree and printed form.
pub fn canonical_set(mut polys: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut keyed: Vec<(u32, String, MultiPoly)> = polys
        .drain(..)
        .filter(|p| !p.is_zero())
        .map(|p| {
            let p = p.primitive();
            (p.total_degree().unwrap_or(0), p.to_string(), p)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|t| t.2).collect()
}

/// Fraction-free determinant.
pub fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(&Vars::empty());
    }
    let vars = m[0][0].vars().clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(&vars);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return MultiPoly::zero(&vars);
        };
        if p != c {
            m.swap(p, c);
            sign = !sign;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                let v = &(&m[c][c] * &m[r][j]) - &(&m[r][c] * &m[c][j]);
                m[r][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][c] = MultiPoly::zero(&vars);
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Rank of sparse rational rows (entries sorted by column).
pub fn sparse_rank(rows: Vec<Vec<(usize, Rational)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for mut row in rows {
        loop {
            let Some((lead, lc)) = row.first().cloned() else {
                break;
            };
            match pivots.get(&lead) {
                Some(piv) => row = axpy(&row, &lc, piv),
                None => {
                    let inv = lc.recip();
                    let normed = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    pivots.insert(lead, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row − c·piv` for sorted sparse rows.
fn axpy(row: &[(usize, Rational)], c: &Rational, piv: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        let take_row = j == piv.len() || (i < row.len() && row[i].0 < piv[j].0);
        let take_piv = i == row.len() || (j < piv.len() && piv[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, -(c * &piv[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &piv[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Emitted multiplicity operators of one order with their metadata.
#[derive(Clone, Debug)]
pub struct MultiplicityOperatorSet {
    pub order: u32,
    pub vars: Vars,
    pub inputs: Vec<MultiPoly>,
    pub emitted: Vec<MultiPoly>,
    /// Largest total degree among `emitted`.
    pub max_degree: u32,
    /// Value of [`operator_degree_bound`] for this run.
    pub degree_bound: u128,
    /// Factor multiplied into each input's row block to clear denominators.
    pub row_factors: Vec<MultiPoly>,
    pub minor_size: usize,
    pub determinants: u128,
}

impl MultiplicityOperatorSet {
    /// True when all emitted polynomials vanish at `point`.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.emitted.iter().all(|g| g.eval(point).is_zero())
    }
}

/// Operators of order `k` for `P` along `f` with the default budget.
pub fn multiplicity_operators(
    p: &[MultiPoly],
    f: &Foliation,
    k: u32,
) -> Result<MultiplicityOperatorSet> {
    macaulay_system(p, f, k)?.emit(DEFAULT_MINOR_BUDGET)
}

/// Whether an operator set certifies "multiplicity `≤ k`" everywhere,
/// i.e. it contains a nonzero constant.
pub fn has_unit(set: &MultiplicityOperatorSet) -> bool {
    set.emitted.iter().any(|g| g.is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfunc, rat};
    use crate::foliation::{from_graph_coefficients, AffineChart};

    fn coord_foliation(names: &[&str]) -> Foliation {
        let v = Vars::new(names);
        let n = names.len();
        let fields = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| parse_ratfunc(if i == j { "1" } else { "0" }, &v).unwrap())
                    .collect()
            })
            .collect();
        Foliation::new(AffineChart::affine_space(&v), fields).unwrap()
    }

    fn origin(n: usize) -> Vec<Rational> {
        vec![rat(0, 1); n]
    }

    #[test]
    fn order_bounds() {
        assert_eq!(order_bound(OrderBoundPolicy::Fixed(8), 3, 4, 5), 8);
        assert_eq!(order_bound(OrderBoundPolicy::Heuristic, 1, 0, 2), 2);
        assert_eq!(order_bound(OrderBoundPolicy::Heuristic, 2, 1, 2), 16);
        assert_eq!(order_bound(OrderBoundPolicy::Heuristic, 1, 0, 0), 1);
    }

    #[test]
    fn simple_zero() {
        let f = coord_foliation(&["x"]);
        let p = parse_poly("x", f.vars()).unwrap();
        let ops = multiplicity_operators(&[p], &f, 1).unwrap();
        assert!(!ops.vanishes_at(&origin(1)));
    }

    #[test]
    fn double_zero() {
        let f = coord_foliation(&["x"]);
        let p = parse_poly("x^2", f.vars()).unwrap();
        let k1 = multiplicity_operators(&[p.clone()], &f, 1).unwrap();
        assert!(k1.vanishes_at(&origin(1)));
        let k2 = multiplicity_operators(&[p], &f, 2).unwrap();
        assert!(!k2.vanishes_at(&origin(1)));
        assert!(has_unit(&k2));
    }

    #[test]
    fn monomial_complete_intersection() {
        let f = coord_foliation(&["x", "y"]);
        let p = vec![
            parse_poly("x^2", f.vars()).unwrap(),
            parse_poly("y^3", f.vars()).unwrap(),
        ];
        for k in 1..=7 {
            let sys = macaulay_system(&p, &f, k).unwrap();
            assert_eq!(sys.vanishes_at(&origin(2)).unwrap(), k <= 5, "k = {}", k);
        }
        // small orders are cheap enough to emit and must agree
        for k in 1..=2 {
            let sys = macaulay_system(&p, &f, k).unwrap();
            let ops = sys.emit(DEFAULT_MINOR_BUDGET).unwrap();
            assert!(ops.vanishes_at(&origin(2)));
            assert!(ops.max_degree as u128 <= ops.degree_bound);
        }
    }

    #[test]
    fn emitted_minors_match_rank_test() {
        let v = Vars::new(&["x", "y"]);
        let chart = AffineChart::affine_space(&v);
        let f = from_graph_coefficients(
            vec![vec![parse_ratfunc("y", &v).unwrap()]],
            chart,
            &["x".to_string()],
        )
        .unwrap();
        let p = parse_poly("x^2 - y + 1", &v).unwrap();
        for k in 1..=4 {
            let sys = macaulay_system(&[p.clone()], &f, k).unwrap();
            let ops = sys.emit(DEFAULT_MINOR_BUDGET).unwrap();
            for a in -3..=3 {
                for b in -3..=3 {
                    let pt = vec![rat(a, 1), rat(b, 1)];
                    assert_eq!(ops.vanishes_at(&pt), sys.vanishes_at(&pt).unwrap());
                }
            }
            assert!(ops.max_degree as u128 <= ops.degree_bound);
        }
    }

    #[test]
    fn rational_fields_are_cleared() {
        let v = Vars::new(&["x", "y"]);
        let chart = AffineChart::affine_space(&v);
        let f = from_graph_coefficients(
            vec![vec![parse_ratfunc("(1)/(y)", &v).unwrap()]],
            chart,
            &["x".to_string()],
        )
        .unwrap();
        let p = parse_poly("y^3 - x", &v).unwrap();
        let ops = multiplicity_operators(&[p], &f, 2).unwrap();
        assert!(ops.emitted.iter().all(|g| g.vars().len() == 2));
        assert!(!ops.row_factors[0].is_constant());
        assert!(ops.max_degree as u128 <= ops.degree_bound);
    }

    #[test]
    fn degree_bounds() {
        let fd = FieldDegrees {
            numerator: 1,
            denominator: 0,
        };
        assert_eq!(entry_degree_bound(2, fd, 5), 2);
        let fd = FieldDegrees {
            numerator: 3,
            denominator: 0,
        };
        assert_eq!(entry_degree_bound(2, fd, 3), 8);
        assert_eq!(operator_degree_bound(2, fd, 1, 3), 8);
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn bareiss_matches_expansion() {
        let v = Vars::new(&["a", "b"]);
        let p = |s: &str| parse_poly(s, &v).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("1")],
            vec![p("1"), p("a"), p("b")],
            vec![p("b"), p("1"), p("a")],
        ];
        assert_eq!(bareiss_det(m), p("a^3 + b^3 + 1 - 3*a*b"));
    }
}
