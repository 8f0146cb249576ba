//! Commutative algebra over Q: polynomials, monomial orders, Gröbner bases
//! and quotient bases.

pub mod groebner;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod quotient;
pub mod univariate;
pub mod varset;

pub use groebner::{groebner_basis, ideal_membership, normal_form, Ideal};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, parse_polynomial_auto};
pub use polynomial::{poly_arith, weighted_degree, ArithOp, Polynomial};
pub use quotient::{standard_monomials, QuotientBasis, DEFAULT_CAP};
pub use univariate::UniPoly;
pub use varset::VarSet;
