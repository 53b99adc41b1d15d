//! Kauffman bracket, auxiliary polynomial and Jones polynomial of the twisted
//! torus links `T((p,q),(2,s))`, in exact integer arithmetic.
//!
//! Two independent routes are provided: [`closed_form`] evaluates the
//! explicit formulas, and [`oracle`] enumerates every smoothing state of the
//! braid-closure diagram. [`classify`] decides Jones triviality and compares
//! it against the known list of unknotted twisted torus knots.

pub mod braid;
pub mod classify;
pub mod closed_form;
mod dsu;
pub mod laurent;
pub mod oracle;
pub mod verify;

pub use braid::{closure_diagram, torus_braid, ttl_braid, BraidWord, Diagram, TwistedTorusParams};
pub use classify::{classify, is_jones_trivial, lee_lookup, ClassificationResult, Verdict};
pub use closed_form::{
    compute_kl, ttl_aux_closed, ttl_bracket_closed, ttl_bracket_recursive, ttl_jones, KlData,
};
pub use laurent::{LaurentPoly, Substitution, Variable};
pub use oracle::{aux_via_oracle, jones_via_oracle, kauffman_bracket};
