//! V-filtrations on `B_f` for the smooth, normal crossing and weighted
//! homogeneous models, with a truncated checker for the axioms.

mod axioms;
mod element;
mod elementary;
mod model;
mod snapshot;

pub use axioms::{
    check_axioms, gr_action_maps, membership_certify, AxiomReport, Containments, GrMaps,
    LevelReport, Membership,
};
pub use element::{act_derivation, act_dt, act_s, act_t, act_x, tau, BfElement, BfModule};
pub use elementary::{dual_elementary_graded_annihilators, elementary_graded_annihilators};
pub use model::{monomial_variable_names, v_generators, VModel};
pub use snapshot::{truncated_subspace, SubspaceSnapshot, Truncation};
