//! Bound states of two planar ring-shaped potential families.
//!
//! The crate solves the separated Schroedinger problem three independent
//! ways and adjudicates between them:
//!
//! * `paper` -- the closed-form expressions exactly as printed in the source
//!   publication, kept verbatim for comparison;
//! * `nu` / `derived` -- a generic Nikiforov-Uvarov engine for the angular
//!   equation plus standard closed-form derivations for the radial ones;
//! * `oracle` -- an independent finite-difference eigensolver (Sturm
//!   bisection with Richardson extrapolation) that never touches the other
//!   two routes.
//!
//! The `nubound` binary exposes `spectrum`, `wavefunction` and `verify`
//! subcommands over a line-based config file; `verify` reports every
//! printed-vs-derived discrepancy without failing on them.

pub mod angular;
pub mod assembly;
pub mod config;
pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod poly;
pub mod radial;
pub mod report;
pub mod specfun;

pub use error::{Error, Result};
