//! Code constructions: the self-complementary lift, inner and outer code
//! registries, generalized concatenation, the parity multi-error
//! construction, the V/Lambda substitution construction, the explicit
//! five-qudit encoder, and the reference dimension tables.

mod five_qudit;
mod gc;
mod inner;
mod outer;
mod parity;
mod tables;
mod vlambda;

pub use five_qudit::{encode_5_1_3_5, five_one_three_five, pauli_kl_deviation};
pub use gc::{gc_classical, gc_construct, gc_from_registry, gc_plan, GcPlan};
pub use inner::{inner_entry, inner_registry, InducedChannel, InnerCodeEntry, InnerFamily};
pub use outer::{outer_from_words, outer_registry, repetition_code, trivial_code, OuterCodeEntry, OuterProperty};
pub use parity::{k_formula, multi_error_construct, parity_inner_set};
pub use tables::{table_ii, table_iii, TableIIRow, TableIIIRow};
pub use vlambda::{v_lambda_construct, v_lambda_sets, VLambdaPattern};

use crate::error::{Error, Result};
use crate::qudit::{ChannelKind, ClassicalCode, QuantumCode, SparseState};
use num_complex::Complex64;
use std::collections::BTreeSet;

/// Construction flavor selected for generalized concatenation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcFlavor {
    /// Linear inner codes at every block.
    Linear,
    /// The largest nonlinear inner family for the given q.
    Nonlinear,
    /// q = 5 only: the length-3 nonlinear inner family.
    NonlinearLen3,
}

impl std::fmt::Display for GcFlavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GcFlavor::Linear => write!(f, "linear"),
            GcFlavor::Nonlinear => write!(f, "nonlinear"),
            GcFlavor::NonlinearLen3 => write!(f, "nonlinear-len3"),
        }
    }
}

/// Lifts a transversal into the quantum code whose basis states are the
/// uniform superpositions over each all-one-shift orbit,
/// `|ψ_u⟩ = (1/√q) Σ_a |u + a·1⟩`.
pub fn lift(
    code: &ClassicalCode,
    claimed_t: u32,
    channel_scope: BTreeSet<ChannelKind>,
    provenance: impl Into<String>,
) -> Result<QuantumCode> {
    let tilde = code
        .tilde()
        .ok_or_else(|| Error::Construction("lift requires a transversal".into()))?;
    let q = code.q();
    let amp = Complex64::new(1.0 / (q as f64).sqrt(), 0.0);
    let mut basis = Vec::with_capacity(tilde.len());
    for rep in tilde {
        let state = SparseState::from_terms(
            q,
            code.n(),
            rep.orbit().into_iter().map(|w| (w, amp)),
        )?;
        basis.push(state);
    }
    QuantumCode::new(q, code.n(), basis, claimed_t, channel_scope, provenance)
}
