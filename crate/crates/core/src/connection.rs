use crate::algebra::{Matrix, RationalFunc, Vars};
use crate::error::{Error, Result};
use crate::foliation::AffineChart;

/// Connection `d − Σ Ω_i dλ_i` on a trivial bundle: one square matrix of
/// rational functions per base variable, sections satisfying `∂_i Π = Ω_i Π`.
#[derive(Clone, Debug)]
pub struct ConnectionMatrix {
    base: AffineChart,
    mats: Vec<Matrix<RationalFunc>>,
}

impl ConnectionMatrix {
    /// One matrix per base variable, all of the same square size.
    pub fn new(base: AffineChart, mats: Vec<Matrix<RationalFunc>>) -> Result<Self> {
        if mats.len() != base.vars().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} connection matrices for {} base variables",
                mats.len(),
                base.vars().len()
            )));
        }
        let size = mats.first().map_or(0, |m| m.rows());
        if mats.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::DimensionMismatch(
                "connection matrices must be square of one size".into(),
            ));
        }
        let vars = base.vars().clone();
        let mats = mats
            .into_iter()
            .map(|m| {
                let rows = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.with_vars(&vars)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                Ok(Matrix::from_rows(rows))
            })
            .collect::<Result<_>>()?;
        Ok(ConnectionMatrix { base, mats })
    }

    pub fn base(&self) -> &AffineChart {
        &self.base
    }

    pub fn base_vars(&self) -> &Vars {
        self.base.vars()
    }

    pub fn size(&self) -> usize {
        self.mats.first().map_or(0, |m| m.rows())
    }

    pub fn matrices(&self) -> &[Matrix<RationalFunc>] {
        &self.mats
    }

    pub fn matrix(&self, i: usize) -> &Matrix<RationalFunc> {
        &self.mats[i]
    }

    /// `∂_i Ω_j − ∂_j Ω_i − [Ω_i, Ω_j]`.
    pub fn curvature(&self, i: usize, j: usize) -> Matrix<RationalFunc> {
        let di = self.mats[j].map(|x| x.derivative(i));
        let dj = self.mats[i].map(|x| x.derivative(j));
        di.sub(&dj).sub(&self.mats[i].commutator(&self.mats[j]))
    }

    /// Verifies flatness, naming the first nonzero curvature entry.
    pub fn check_flat(&self) -> Result<()> {
        for i in 0..self.mats.len() {
            for j in i + 1..self.mats.len() {
                let c = self.curvature(i, j);
                for r in 0..c.rows() {
                    for s in 0..c.cols() {
                        let v = c.get(r, s);
                        if !self.base.vanishes(v) {
                            return Err(Error::FlatnessFailure {
                                i,
                                j,
                                row: r,
                                col: s,
                                component: v.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_ratfunc;

    fn mat(vars: &Vars, rows: &[&[&str]]) -> Matrix<RationalFunc> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_ratfunc(s, vars).unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn flat_and_curved() {
        let v = Vars::new(&["x", "y"]);
        let chart = AffineChart::affine_space(&v);
        let ok = ConnectionMatrix::new(
            chart.clone(),
            vec![mat(&v, &[&["1", "0"], &["0", "0"]]), mat(&v, &[&["0", "0"], &["0", "1"]])],
        )
        .unwrap();
        assert!(ok.check_flat().is_ok());
        let bad = ConnectionMatrix::new(
            chart,
            vec![mat(&v, &[&["0", "1"], &["0", "0"]]), mat(&v, &[&["0", "0"], &["1", "0"]])],
        )
        .unwrap();
        assert!(matches!(bad.check_flat(), Err(Error::FlatnessFailure { .. })));
    }
}
