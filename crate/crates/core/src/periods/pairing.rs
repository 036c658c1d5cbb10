use num_traits::{One, Zero};

use crate::algebra::{LaurentSeries, Matrix, MultiPoly, Rational, RationalFunc, Vars};
use crate::connection::ConnectionMatrix;
use crate::error::{Error, Result};
use crate::gauss_manin::{derham_basis, griffiths_dwork_reduce, DeRhamForm, HyperellipticFamily};

/// Local parameter at the point at infinity.
pub const LOCAL_PARAMETER: &str = "t";

fn rf_zero(vars: &Vars) -> RationalFunc {
    RationalFunc::from_poly(MultiPoly::zero(vars))
}

/// `t`-adic valuation of `num · dx / y^m` at infinity, assuming `num ≠ 0`.
fn valuation_at_infinity(deg_num: usize, m: u32, fam: &HyperellipticFamily) -> i64 {
    m as i64 * fam.degree() as i64 - 3 - 2 * deg_num as i64
}

/// Expansion of `form` as `(Σ c_e t^e) dt` with `x = t⁻²` and
/// `y = t^{−(2g+1)}(1 + …)`, exact for all exponents below `order`.
pub fn expansion_at_infinity(
    form: &DeRhamForm,
    fam: &HyperellipticFamily,
    order: i64,
) -> Result<LaurentSeries<RationalFunc>> {
    if form.pole % 2 == 0 {
        return Err(Error::PoleOrderParity(form.pole));
    }
    let base = fam.base_vars();
    let a = fam.to_uni(&form.num)?;
    let Some(deg_a) = a.degree() else {
        return Ok(LaurentSeries::new(LOCAL_PARAMETER, order, vec![]));
    };
    let val = valuation_at_infinity(deg_a, form.pole, fam);
    let pole = (-val).max(0);
    if order < pole {
        return Err(Error::TruncationTooSmall {
            requested: order,
            needed: pole,
        });
    }
    if order <= val {
        return Ok(LaurentSeries::new(LOCAL_PARAMETER, order, vec![]));
    }
    let len = (order - val) as usize;
    let d = fam.degree();
    // t^{2d} f(t^{-2}) = Σ c_j t^{2(d-j)}
    let mut s = vec![rf_zero(base); len];
    let f = fam.to_uni(fam.f())?;
    for j in 0..=d {
        let e = 2 * (d - j);
        if e < len {
            s[e] = f.coeff(j).with_vars(base)?;
        }
    }
    let m = form.pole as i64;
    let sm = LaurentSeries::new(LOCAL_PARAMETER, 0, s).pow_rational(&Rational::new(
        (-m).into(),
        2.into(),
    ))?;
    let minus_two = RationalFunc::constant(base, Rational::from_integer((-2).into()));
    let mut out = LaurentSeries::new(LOCAL_PARAMETER, val, vec![rf_zero(base); len]);
    for (i, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = sm
            .scale(&(c.clone() * &minus_two))
            .shift(m * d as i64 - 3 - 2 * i as i64);
        out = out.add(&term);
    }
    out.truncated(order)
}

/// `res_∞(F_ω · η)` for forms with poles only at infinity (`m = 1`), with
/// `F_ω` the formal primitive of `ω`; other forms are paired through their
/// reduced coordinates.
pub fn residue_pairing(
    omega: &DeRhamForm,
    eta: &DeRhamForm,
    fam: &HyperellipticFamily,
) -> Result<RationalFunc> {
    if omega.pole == 1 && eta.pole == 1 {
        return residue_pairing_at_infinity(omega, eta, fam);
    }
    let a = griffiths_dwork_reduce(omega, fam)?;
    let b = griffiths_dwork_reduce(eta, fam)?;
    let lam = pairing_matrix(fam)?;
    let lb = lam.matrix().mul_vec(&b);
    Ok(a.iter()
        .zip(&lb)
        .fold(rf_zero(fam.base_vars()), |acc, (x, y)| acc + &(x.clone() * y)))
}

fn residue_pairing_at_infinity(
    omega: &DeRhamForm,
    eta: &DeRhamForm,
    fam: &HyperellipticFamily,
) -> Result<RationalFunc> {
    let base = fam.base_vars();
    let deg = |f: &DeRhamForm| -> Result<Option<usize>> { Ok(fam.to_uni(&f.num)?.degree()) };
    let (Some(da), Some(db)) = (deg(omega)?, deg(eta)?) else {
        return Ok(rf_zero(base));
    };
    let va = valuation_at_infinity(da, omega.pole, fam);
    let vb = valuation_at_infinity(db, eta.pole, fam);
    // F_ω needs exponents up to -1 - v_η, η up to -2 - v_ω
    let oa = (-vb).max((-va).max(0));
    let ob = (-va).max((-vb).max(0));
    let sa = expansion_at_infinity(omega, fam, oa)?;
    let sb = expansion_at_infinity(eta, fam, ob)?;
    for s in [&sa, &sb] {
        let r = s.residue()?;
        if !r.is_zero() {
            return Err(Error::NotSecondKind(r.to_string()));
        }
    }
    let prim = sa.integrate()?;
    Ok(prim.mul(&sb).residue()?.with_vars(base)?)
}

/// Residue pairing on the basis `xⁱ dx/y`, normalized by `2πi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingMatrix {
    genus: usize,
    mat: Matrix<RationalFunc>,
}

impl PairingMatrix {
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &Matrix<RationalFunc> {
        &self.mat
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.mat.add(&self.mat.transpose()).is_zero()
    }

    /// The holomorphic block (first `g` rows and columns) vanishes.
    pub fn is_isotropic(&self) -> bool {
        (0..self.genus).all(|i| (0..self.genus).all(|j| self.mat.get(i, j).is_zero()))
    }
}

pub fn pairing_matrix(fam: &HyperellipticFamily) -> Result<PairingMatrix> {
    let basis = derham_basis(fam);
    let n = basis.len();
    let base = fam.base_vars();
    let mut mat = Matrix::from_fn(n, n, |_, _| rf_zero(base));
    for i in 0..n {
        for j in i + 1..n {
            let v = residue_pairing_at_infinity(&basis[i], &basis[j], fam)?;
            mat.set(j, i, -v.clone());
            mat.set(i, j, v);
        }
    }
    if mat.det().is_zero() {
        return Err(Error::DegeneratePairing);
    }
    Ok(PairingMatrix {
        genus: fam.genus(),
        mat,
    })
}

/// `∂_i Λ − Ω_i Λ − Λ Ω_iᵀ`, one matrix per base variable.
pub fn pairing_flatness_defect(
    lam: &PairingMatrix,
    conn: &ConnectionMatrix,
) -> Vec<Matrix<RationalFunc>> {
    let l = lam.matrix();
    (0..conn.base_vars().len())
        .map(|i| {
            let om = conn.matrix(i);
            l.map(|x| x.derivative(i))
                .sub(&om.mul(l))
                .sub(&l.mul(&om.transpose()))
        })
        .collect()
}

/// The standard form `[[0, I], [−I, 0]]` of size `2g`.
pub fn standard_j(g: usize, vars: &Vars) -> Matrix<RationalFunc> {
    Matrix::from_fn(2 * g, 2 * g, |i, j| {
        let c = if j == i + g {
            1
        } else if i == j + g {
            -1
        } else {
            0
        };
        RationalFunc::constant(vars, Rational::from_integer(c.into()))
    })
}

/// `Ω′ᵀJ + JΩ′` for each base variable.
pub fn symplectic_defect(conn: &ConnectionMatrix) -> Vec<Matrix<RationalFunc>> {
    let g = conn.size() / 2;
    let j = standard_j(g, conn.base_vars());
    conn.matrices()
        .iter()
        .map(|om| om.transpose().mul(&j).add(&j.mul(om)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SymplecticNormalization {
    /// Rows are the new basis forms in the coordinates `xⁱ dx/y`.
    pub change: Matrix<RationalFunc>,
    pub connection: ConnectionMatrix,
}

/// Base change `M = [[I, 0], [X, Y]]` with `M Λ Mᵀ = J`, where
/// `Y = Λ₁₂^{−T}` and `X = −½ Y Λ₂₂ Yᵀ`.
pub fn normalizing_change(lam: &PairingMatrix, base: &Vars) -> Result<Matrix<RationalFunc>> {
    let g = lam.genus();
    let l = lam.matrix();
    if !lam.is_isotropic() || !lam.is_antisymmetric() {
        return Err(Error::DegeneratePairing);
    }
    let l12 = Matrix::from_fn(g, g, |i, j| l.get(i, j + g).clone());
    let l22 = Matrix::from_fn(g, g, |i, j| l.get(i + g, j + g).clone());
    let y = l12.transpose().inverse().ok_or(Error::DegeneratePairing)?;
    let half = RationalFunc::constant(base, Rational::new((-1).into(), 2.into()));
    let x = y.mul(&l22).mul(&y.transpose()).scale(&half);
    Ok(Matrix::from_fn(2 * g, 2 * g, |i, j| match (i < g, j < g) {
        (true, true) => {
            if i == j {
                RationalFunc::one().with_vars(base).expect("constant")
            } else {
                rf_zero(base)
            }
        }
        (true, false) => rf_zero(base),
        (false, true) => x.get(i - g, j).clone(),
        (false, false) => y.get(i - g, j - g).clone(),
    }))
}

/// [`normalizing_change`] together with the gauge-transformed connection
/// `Ω′ = (dM)M⁻¹ + MΩM⁻¹`.
pub fn symplectic_normalize(
    fam: &HyperellipticFamily,
    lam: &PairingMatrix,
    conn: &ConnectionMatrix,
) -> Result<SymplecticNormalization> {
    let base = fam.base_vars();
    let m = normalizing_change(lam, base)?;
    let minv = m.inverse().ok_or(Error::DegeneratePairing)?;
    let mats = (0..base.len())
        .map(|i| {
            let dm = m.map(|c| c.derivative(i));
            dm.mul(&minv).add(&m.mul(conn.matrix(i)).mul(&minv))
        })
        .collect();
    let connection = ConnectionMatrix::new(conn.base().clone(), mats)?;
    Ok(SymplecticNormalization {
        change: m,
        connection,
    })
}
