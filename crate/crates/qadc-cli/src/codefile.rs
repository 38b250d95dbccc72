//! JSON file formats for codes and reports.
//!
//! Self-complementary codes are stored exactly as their transversal word
//! lists; codes with nontrivial amplitudes store every basis state as a
//! list of `(string, re, im)` terms. Classical outer codes are plain word
//! lists with the property they must satisfy.

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use qadc::constructions::{lift, OuterCodeEntry, OuterProperty};
use qadc::{ChannelKind, ClassicalCode, QuantumCode, QuditString, SparseState};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    SelfComplementary,
    General,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmpTerm {
    pub string: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuantumCodeFile {
    pub q: u8,
    pub n: usize,
    pub kind: CodeKind,
    pub claimed_t: u32,
    pub channel_scope: Vec<ChannelKind>,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tilde_codewords: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<AmpTerm>>>,
}

impl QuantumCodeFile {
    pub fn from_transversal(code: &ClassicalCode, quantum: &QuantumCode) -> Result<Self> {
        let tilde = code
            .tilde()
            .context("self-complementary file needs a transversal")?;
        Ok(Self {
            q: code.q(),
            n: code.n(),
            kind: CodeKind::SelfComplementary,
            claimed_t: quantum.claimed_t,
            channel_scope: quantum.channel_scope.iter().copied().collect(),
            provenance: quantum.provenance.clone(),
            tilde_codewords: Some(tilde.iter().map(|w| w.to_string()).collect()),
            basis: None,
        })
    }

    pub fn from_general(quantum: &QuantumCode) -> Self {
        let basis = quantum
            .basis()
            .iter()
            .map(|st| {
                st.terms()
                    .map(|(s, amp)| AmpTerm {
                        string: s.to_string(),
                        re: amp.re,
                        im: amp.im,
                    })
                    .collect()
            })
            .collect();
        Self {
            q: quantum.q(),
            n: quantum.n(),
            kind: CodeKind::General,
            claimed_t: quantum.claimed_t,
            channel_scope: quantum.channel_scope.iter().copied().collect(),
            provenance: quantum.provenance.clone(),
            tilde_codewords: None,
            basis: Some(basis),
        }
    }

    /// Rebuilds the quantum code; for self-complementary files also
    /// returns the classical code with its transversal.
    pub fn load(&self) -> Result<(QuantumCode, Option<ClassicalCode>)> {
        let scope: BTreeSet<ChannelKind> = self.channel_scope.iter().copied().collect();
        match self.kind {
            CodeKind::SelfComplementary => {
                let words = self
                    .tilde_codewords
                    .as_ref()
                    .context("missing tilde_codewords")?;
                let reps = words
                    .iter()
                    .map(|w| QuditString::parse(self.q, w))
                    .collect::<qadc::Result<Vec<_>>>()?;
                let classical = ClassicalCode::from_tilde(self.q, self.n, reps)?;
                let quantum = lift(
                    &classical,
                    self.claimed_t,
                    scope,
                    self.provenance.clone(),
                )?;
                Ok((quantum, Some(classical)))
            }
            CodeKind::General => {
                let basis_terms = self.basis.as_ref().context("missing basis")?;
                let basis = basis_terms
                    .iter()
                    .map(|terms| {
                        let parsed = terms
                            .iter()
                            .map(|t| {
                                Ok((
                                    QuditString::parse(self.q, &t.string)?,
                                    Complex64::new(t.re, t.im),
                                ))
                            })
                            .collect::<qadc::Result<Vec<_>>>()?;
                        SparseState::from_terms(self.q, self.n, parsed)
                    })
                    .collect::<qadc::Result<Vec<_>>>()?;
                let quantum = QuantumCode::new(
                    self.q,
                    self.n,
                    basis,
                    self.claimed_t,
                    scope,
                    self.provenance.clone(),
                )?;
                Ok((quantum, None))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassicalCodeFile {
    pub q: u8,
    pub n: usize,
    pub codewords: Vec<String>,
    pub property: String,
}

impl ClassicalCodeFile {
    pub fn load_outer(&self) -> Result<OuterCodeEntry> {
        let property = match self.property.as_str() {
            "hamming_d3" => OuterProperty::HammingD3,
            "rq_single" => OuterProperty::RqSingle,
            other => bail!("unknown outer property {other:?}"),
        };
        let words = self
            .codewords
            .iter()
            .map(|w| QuditString::parse(self.q, w))
            .collect::<qadc::Result<Vec<_>>>()?;
        Ok(qadc::constructions::outer_from_words(
            self.q, self.n, words, property,
        )?)
    }
}
