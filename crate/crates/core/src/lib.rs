//! Exact symbolic computation of spherical functions on the unitary group
//! `U(n,n)` over an unramified quadratic extension of a local field.

pub mod binomial;
pub mod error;
pub mod field;
pub mod gamma;
pub mod json;
pub mod latex;
pub mod laurent;
pub mod monomial;
pub mod oracle;
pub mod ratfunc;
pub mod scalar;
pub mod siegel;
pub mod spherical;
pub mod surd;
pub mod verify;
pub mod weyl;

pub use binomial::BinomialFactor;
pub use error::{AlgebraError, Error, Result};
pub use field::{Field, Rational};
pub use laurent::LaurentPolynomial;
pub use monomial::Monomial;
pub use ratfunc::{FactorizedRatFunc, VarImage};
pub use scalar::ExactScalar;
pub use siegel::SVarFunc;
pub use surd::SqrtExt;

/// Laurent polynomials over `Q(q^{1/2})`.
pub type LaurentPoly = LaurentPolynomial<ExactScalar>;
/// Rational functions over `Q(q^{1/2})`.
pub type RatFunc = FactorizedRatFunc<ExactScalar>;
/// Rational functions over the rationals, for numeric evaluation.
pub type RationalRatFunc = FactorizedRatFunc<Rational>;
/// Rational functions over `Q(sqrt p)`, for specializing `q = p`.
pub type SurdRatFunc = FactorizedRatFunc<SqrtExt>;
