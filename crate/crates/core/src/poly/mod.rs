//! Exact multivariate Laurent polynomial arithmetic over the rationals.

mod gcd;
mod laurent;
mod monomial;
mod parse;
mod registry;

pub use laurent::LaurentPoly;
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use registry::{compatible, Reg, VarId, VarRegistry};

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials use incompatible variable registries")]
    RegistryMismatch,
    #[error("variable '{0}' may only be bound to an invertible monomial here")]
    NonInvertibleBinding(String),
    #[error("unexpected variable '{0}'")]
    StrayVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}
