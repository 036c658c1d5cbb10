//! Residue pairing, symplectic normalization and numeric periods.

pub mod numeric;
pub mod pairing;

pub use numeric::{
    beta_blocks, eval_matrix, imaginary_part_positive, numeric_period_oracle, riemann_scalar,
    symmetry_residual, PeriodMatrixNumeric, PeriodOracle,
};
pub use pairing::{
    expansion_at_infinity, normalizing_change, pairing_flatness_defect, pairing_matrix, residue_pairing,
    standard_j, symplectic_defect, symplectic_normalize, PairingMatrix, SymplecticNormalization,
};
