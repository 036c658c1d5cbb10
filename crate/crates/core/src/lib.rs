pub mod algebra;
pub mod connection;
pub mod error;
pub mod foliation;
pub mod gauss_manin;
pub mod multiplicity;
pub mod oracle;
pub mod periods;
pub mod sigma;

pub use error::{Error, Result};
