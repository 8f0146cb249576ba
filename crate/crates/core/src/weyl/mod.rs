//! Weyl algebra with optional central parameters, the `s = -dt*t`
//! calculus, and the twisted module `Q[x, s][1/f] f^s`.

pub mod operator;
pub mod s_calculus;
pub mod twisted;

pub use operator::{classical_adjoint, parse_operator, weyl_mul, WeylContext, WeylOperator};
pub use s_calculus::{check_s_identity, SIdentity};
pub use twisted::{act_on_twisted, specialize_s, twisted_context, Specialized, TwistedElement};
