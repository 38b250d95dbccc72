//! Quantum error-correcting codes for qudit amplitude-damping channels.
//!
//! This crate builds code families from self-complementary classical
//! asymmetric codes and generalized concatenation, and verifies them two
//! ways:
//!
//! - combinatorially, through asymmetric-distance and parity conditions
//!   ([`metrics`], [`verifier::verify_single_ad_combinatorial`],
//!   [`verifier::verify_parity_structure`]);
//! - numerically, by evaluating approximate Knill–Laflamme deviations on a
//!   channel-parameter grid and fitting their order in the decay time
//!   ([`verifier::order_slope`]).
//!
//! [`search`] holds the exhaustive and greedy searches for disjoint
//! self-complementary single-error-correcting codes, and [`constructions`]
//! the code families themselves together with the reference dimension
//! tables.

pub mod channels;
pub mod constructions;
mod error;
pub mod metrics;
pub mod qudit;
pub mod search;
pub mod verifier;

pub use error::{Error, Result};
pub use qudit::{ChannelKind, ClassicalCode, QuantumCode, QuditString, SparseState};
