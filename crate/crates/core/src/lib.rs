//! Qutrit sequential-measurement statistics under the Lüders and the
//! degeneracy-breaking von Neumann state-update rules.
//!
//! * [`matcore`] small dense complex linear algebra and the spin-1 propagator
//! * [`measure`] projectors, update rules and two-point sequential correlators
//! * [`lgi`] three-time Leggett-Garg combinations for the `M1` scenario
//! * [`nci`] noncontextual combinations for three commuting qutrit observables
//! * [`optim`] deterministic grid scan plus Nelder-Mead refinement

pub mod error;
pub mod lgi;
pub mod matcore;
pub mod measure;
pub mod nci;
pub mod optim;

pub use error::{Error, Result};
