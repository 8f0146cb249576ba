//! Exact computer algebra for Bernstein–Sato polynomials, V-filtrations on
//! `B_f` and monomial multiplier ideals.
//!
//! All arithmetic is over the rationals with arbitrary precision.

pub mod algebra;
pub mod bs;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod multiplier;
pub mod rational;
pub mod vfilt;
pub mod weyl;

pub use algebra::{
    groebner_basis, ideal_membership, normal_form, parse_polynomial, parse_polynomial_auto,
    standard_monomials, Ideal, Monomial, MonomialOrder, Polynomial, QuotientBasis, UniPoly,
    VarSet,
};
pub use bs::{
    bs_weighted_homogeneous, find_minimal_b_bounded, infer_weights, lct_from_bfunction,
    minimal_exponent, reduced_bfunction, shifted_bfunction, sigma_set, solve_functional_equation,
    validate_weighted_homogeneous, BFunction, FunctionalEquationCertificate, SigmaSet,
    WeightVector,
};
pub use error::{Error, Result};
pub use multiplier::{
    budur_saito_consistency, check_jumping_roots, i_lambda, jumping_numbers_monomial,
    lct_from_resolution, lct_g_from_resolution, microlocal_triviality_threshold,
    min_exponent_lower_bound, multiplier_ideal_monomial, root_bound_candidates,
    LogResolutionData, MonomialDivisor, MonomialIdeal, ResolutionRow, RootBound,
    RootBoundResult,
};
pub use rational::{Extended, Rational};
pub use vfilt::{
    check_axioms, gr_action_maps, membership_certify, tau, truncated_subspace, v_generators,
    AxiomReport, BfElement, BfModule, Membership, SubspaceSnapshot, Truncation, VModel,
};
pub use weyl::{
    act_on_twisted, check_s_identity, parse_operator, SIdentity, TwistedElement, WeylContext,
    WeylOperator,
};
