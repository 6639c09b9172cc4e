//! Exact polynomial arithmetic over the rationals.
//!
//! [`MultiPoly`] is the sparse multivariate carrier used everywhere, [`UniPoly`]
//! a dense univariate companion for eliminants and number-field moduli.

mod matrix;
pub mod modp;
mod groebner;
mod monomial;
mod multi;
mod resultant;
mod ring;
mod uni;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use groebner::{groebner_basis, is_unit_ideal, is_zero_dimensional, normal_form};
pub use matrix::{bareiss_determinant, bareiss_rank, rank_and_kernel, rref, solve_linear, RationalMatrix};
pub use monomial::{Monomial, MAX_VARS};
pub use multi::MultiPoly;
pub use resultant::{resultant, resultant_coeffs, sylvester_matrix};
pub use ring::ExactRing;
pub use uni::{squarefree_part, UniPoly};
pub(crate) use uni::rational_content;

/// Reduced fraction with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("constant in elimination variable x{0}")]
    ConstantInEliminationVariable(usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected a univariate polynomial")]
    NotUnivariate,
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a` or `a/b`, the form the expression grammar accepts.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
