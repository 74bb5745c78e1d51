//! Exact computer algebra for logarithmic vector fields along divisors, the V-filtration on
//! differential operators, and symmetric algebras of derivation modules.

pub mod arrangements;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod logder;
pub mod poly;
pub mod symalg;
pub mod syntax;
pub mod vfilt;
pub mod weyl;

pub use error::{Error, Result};
pub use groebner::{FreeModuleVector, GroebnerBasis};
pub use poly::{Monomial, Polynomial, Rational, TermOrder};
pub use weyl::WeylOperator;
