//! Bernstein–Sato polynomials: the weighted-homogeneous formula, derived
//! invariants, and a brute-force functional-equation oracle.

pub mod bfunction;
pub mod oracle;
pub mod qhom;
pub mod weights;

pub use bfunction::{
    lct_from_bfunction, minimal_exponent, reduced_bfunction, shifted_bfunction, BFunction,
};
pub use oracle::{find_minimal_b_bounded, solve_functional_equation, FunctionalEquationCertificate};
pub use qhom::{
    bs_weighted_homogeneous, jacobian_ideal, sigma_set, sigma_set_with_order,
    yano_annihilator_generators, SigmaSet,
};
pub use weights::{infer_weights, validate_weighted_homogeneous, WeightVector};
