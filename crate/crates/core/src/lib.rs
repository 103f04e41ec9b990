//! Analysis toolkit for concept-combination experiments.
//!
//! The crate is organised around five groups of functionality:
//!
//! * [`data`]: membership tables, coincidence tables, count datasets and a
//!   small State-Context-Property (SCoP) store, with CSV/JSON ingestion.
//! * [`classicality`]: Kolmogorovian representability conditions for
//!   conjunction, disjunction and negation data, plus the deviation profile
//!   and its regression statistics.
//! * [`fock`]: two-sector Fock-space interference models, their evaluation
//!   and inversion.
//! * [`hilbert`]: CHSH and marginal-law analysis of coincidence data, and
//!   entanglement diagnostics for states and observables on ℂ⁴ ≅ ℂ²⊗ℂ².
//! * [`stats`]: Maxwell-Boltzmann and Bose-Einstein distributions over
//!   `N + 1` occupation states, least-squares fitting and BIC comparison.
//!
//! The [`cli`] module drives the `qcm` binary and renders reports. Runnable
//! walkthroughs of every capability live in the crate's `examples/`
//! directory (`cargo run -p qcm --example <name>`).

pub mod classicality;
pub mod cli;
pub mod data;
mod error;
pub mod fmt;
pub mod fock;
pub mod hilbert;
pub mod optim;
pub mod stats;

pub use error::{Error, Result};
