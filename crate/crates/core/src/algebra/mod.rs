//! Exact algebra over the rationals: sparse multivariate polynomials,
//! rational functions, ideals, truncated series and small dense linear
//! algebra over any exact field.

mod field;
mod gcd;
mod groebner;
mod matrix;
mod order;
mod parse;
mod poly;
mod ratfunc;
mod series;
mod unipoly;
mod vars;

pub use field::{rat, Field, Rational};
pub use groebner::{eliminate, groebner_basis, reduce_mod_ideal, Ideal};
pub use matrix::Matrix;
pub use order::TermOrder;
pub use parse::{parse_poly, parse_poly_auto, parse_ratfunc, parse_rational};
pub use poly::{Exponents, MultiPoly};
pub use ratfunc::{common_denominator, RationalFunc};
pub use series::{LaurentSeries, MultiSeries};
pub use unipoly::UniPoly;
pub use vars::Vars;
