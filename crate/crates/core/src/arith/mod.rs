//! Exact arithmetic kernel: integers, rationals, finite fields,
//! polynomials and rational functions over finite fields.

mod conway;
pub mod field;
pub mod finite_field;
pub mod integer;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod rational_function;

pub use field::{FiniteFieldOps, PrimeField};
pub use finite_field::{FiniteField, Fq};
pub use integer::{factor_integer, factor_integer_bounded, IntegerFactorization};
pub use poly::{Poly, PolyFactorization};
pub use quotient::QuotientField;
pub use rational::Rational;
pub use rational_function::RationalFunction;
