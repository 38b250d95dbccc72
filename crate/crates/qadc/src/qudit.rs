//! Qudit strings, sparse superposition states, and code containers.
//!
//! A [`QuditString`] is a length-`n` word over the alphabet `{0, …, q-1}`;
//! it doubles as a classical codeword and as a computational-basis label.
//! A [`SparseState`] is a finite map from basis strings to complex
//! amplitudes, which is all that is needed here: every code basis state in
//! this crate has small support, and every channel error operator is
//! monomial (maps a basis string to at most one basis string).

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Largest supported alphabet size; strings render as base-36 digits.
pub const MAX_Q: u8 = 36;
/// Amplitudes below this magnitude are dropped from sparse states.
pub const PRUNE_FLOOR: f64 = 1e-15;
/// Tolerance for the normalization check on sparse states.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for basis orthonormality checks.
pub const ORTHO_TOL: f64 = 1e-10;

const DIGIT_CHARS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Length-`n` word over `{0, …, q-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuditString {
    q: u8,
    digits: Vec<u8>,
}

impl QuditString {
    pub fn new(q: u8, digits: Vec<u8>) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} outside 2..={MAX_Q}"
            )));
        }
        if digits.is_empty() {
            return Err(Error::InvalidParameter("empty qudit string".into()));
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= q) {
            return Err(Error::InvalidDigit { digit: d, q });
        }
        Ok(Self { q, digits })
    }

    /// Parses a base-36 digit string such as `"0120"` or `"0a3"`.
    pub fn parse(q: u8, text: &str) -> Result<Self> {
        let digits = text
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidParameter(format!("bad digit char {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(q, digits)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.digits[i]
    }

    /// Digit-wise shift `d ↦ (d + alpha) mod q`, the transversal generalized-X action.
    pub fn shifted(&self, alpha: u8) -> Self {
        let a = alpha % self.q;
        Self {
            q: self.q,
            digits: self.digits.iter().map(|&d| (d + a) % self.q).collect(),
        }
    }

    /// All `q` shifts of this string, in shift order `alpha = 0, …, q-1`.
    pub fn orbit(&self) -> Vec<QuditString> {
        (0..self.q).map(|a| self.shifted(a)).collect()
    }

    /// The unique orbit member whose first digit is 0.
    pub fn orbit_representative(&self) -> QuditString {
        self.shifted((self.q - self.digits[0] % self.q) % self.q)
    }

    /// Digit-wise sum mod q.
    pub fn add(&self, other: &QuditString) -> Result<QuditString> {
        check_same_shape(self, other)?;
        Ok(Self {
            q: self.q,
            digits: self
                .digits
                .iter()
                .zip(other.digits.iter())
                .map(|(&a, &b)| (a + b) % self.q)
                .collect(),
        })
    }
}

pub(crate) fn check_same_shape(a: &QuditString, b: &QuditString) -> Result<()> {
    if a.q != b.q || a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "(q={}, n={}) vs (q={}, n={})",
            a.q,
            a.len(),
            b.q,
            b.len()
        )));
    }
    Ok(())
}

impl fmt::Display for QuditString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", DIGIT_CHARS[d as usize] as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuditString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}:{}", self.q, self)
    }
}

/// Finite superposition over computational-basis strings.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    q: u8,
    n: usize,
    terms: BTreeMap<QuditString, Complex64>,
}

impl SparseState {
    pub fn zero(q: u8, n: usize) -> Result<Self> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} outside 2..={MAX_Q}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("length must be >= 1".into()));
        }
        Ok(Self {
            q,
            n,
            terms: BTreeMap::new(),
        })
    }

    /// The basis state `|s⟩`.
    pub fn basis(s: QuditString) -> Self {
        let mut terms = BTreeMap::new();
        let (q, n) = (s.q(), s.len());
        terms.insert(s, Complex64::new(1.0, 0.0));
        Self { q, n, terms }
    }

    /// Builds a state from `(string, amplitude)` terms, accumulating
    /// duplicates and pruning amplitudes below [`PRUNE_FLOOR`].
    pub fn from_terms<I>(q: u8, n: usize, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (QuditString, Complex64)>,
    {
        let mut state = Self::zero(q, n)?;
        for (s, amp) in it {
            if s.q() != q || s.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "term {s} does not match (q={q}, n={n})"
                )));
            }
            *state.terms.entry(s).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        state.prune();
        Ok(state)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm() >= PRUNE_FLOOR);
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QuditString, &Complex64)> {
        self.terms.iter()
    }

    pub fn amplitude(&self, s: &QuditString) -> Complex64 {
        self.terms
            .get(s)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// `⟨self|other⟩`, summed over shared support.
    pub fn inner(&self, other: &SparseState) -> Result<Complex64> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "(q={}, n={}) vs (q={}, n={})",
                self.q, self.n, other.q, other.n
            )));
        }
        let (small, big, conj_small) = if self.terms.len() <= other.terms.len() {
            (&self.terms, &other.terms, true)
        } else {
            (&other.terms, &self.terms, false)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, a) in small {
            if let Some(b) = big.get(s) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sq() - 1.0).abs() <= NORM_TOL
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.terms.values_mut() {
            *a *= c;
        }
        out.prune();
        out
    }
}

/// Set of classical codewords over a fixed `(q, n)`, optionally carrying a
/// transversal of representatives, one per all-one-shift orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCode {
    q: u8,
    n: usize,
    codewords: BTreeSet<QuditString>,
    tilde: Option<BTreeSet<QuditString>>,
}

impl ClassicalCode {
    pub fn new<I>(q: u8, n: usize, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = QuditString>,
    {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "alphabet size {q} outside 2..={MAX_Q}"
            )));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w.q() != q || w.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "codeword {w} does not match (q={q}, n={n})"
                )));
            }
            set.insert(w);
        }
        Ok(Self {
            q,
            n,
            codewords: set,
            tilde: None,
        })
    }

    /// Builds the full code as the union of the shift orbits of `reps` and
    /// stores `reps` as the transversal. Two representatives sharing an
    /// orbit is an error.
    pub fn from_tilde<I>(q: u8, n: usize, reps: I) -> Result<Self>
    where
        I: IntoIterator<Item = QuditString>,
    {
        let reps: Vec<QuditString> = reps.into_iter().collect();
        let mut seen_orbits = BTreeSet::new();
        let mut words = BTreeSet::new();
        for r in &reps {
            if r.q() != q || r.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "representative {r} does not match (q={q}, n={n})"
                )));
            }
            if !seen_orbits.insert(r.orbit_representative()) {
                return Err(Error::Construction(format!(
                    "representatives {r} and an earlier one share a shift orbit"
                )));
            }
            words.extend(r.orbit());
        }
        Ok(Self {
            q,
            n,
            codewords: words,
            tilde: Some(reps.into_iter().collect()),
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, w: &QuditString) -> bool {
        self.codewords.contains(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuditString> {
        self.codewords.iter()
    }

    pub fn codewords(&self) -> &BTreeSet<QuditString> {
        &self.codewords
    }

    pub fn tilde(&self) -> Option<&BTreeSet<QuditString>> {
        self.tilde.as_ref()
    }

    /// True when the codeword set is closed under the all-one shift.
    pub fn is_shift_closed(&self) -> bool {
        self.codewords
            .iter()
            .all(|w| self.codewords.contains(&w.shifted(1)))
    }

    /// Populates the transversal by picking the orbit member with first
    /// digit 0. Errors when the code is not self-complementary.
    pub fn orbit_transversal(&self) -> Result<ClassicalCode> {
        if !self.is_shift_closed() {
            return Err(Error::Construction(
                "orbit transversal requires a self-complementary code".into(),
            ));
        }
        let reps: BTreeSet<QuditString> = self
            .codewords
            .iter()
            .filter(|w| w.digit(0) == 0)
            .cloned()
            .collect();
        debug_assert_eq!(reps.len() * self.q as usize, self.codewords.len());
        Ok(Self {
            q: self.q,
            n: self.n,
            codewords: self.codewords.clone(),
            tilde: Some(reps),
        })
    }

    /// The coset `C + v`. The transversal, if any, is dropped.
    pub fn translate(&self, v: &QuditString) -> Result<ClassicalCode> {
        if v.q() != self.q || v.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "offset {v} does not match (q={}, n={})",
                self.q, self.n
            )));
        }
        let words = self
            .codewords
            .iter()
            .map(|w| w.add(v))
            .collect::<Result<Vec<_>>>()?;
        ClassicalCode::new(self.q, self.n, words)
    }
}

/// Channels a code is claimed to protect against.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    /// Bosonic amplitude damping (Fock basis truncated at occupation q-1).
    Bosonic,
    /// Cascade decay of a multi-level atom (transitions j -> i for all i < j).
    Cascade,
    /// Qutrit V pattern (1 -> 0 and 2 -> 0).
    V,
    /// Qutrit Lambda pattern (2 -> 0 and 2 -> 1).
    Lambda,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelKind::Bosonic => "bosonic",
            ChannelKind::Cascade => "cascade",
            ChannelKind::V => "v",
            ChannelKind::Lambda => "lambda",
        };
        write!(f, "{s}")
    }
}

/// Ordered orthonormal basis of sparse states plus construction metadata.
#[derive(Clone, Debug)]
pub struct QuantumCode {
    q: u8,
    n: usize,
    basis: Vec<SparseState>,
    pub claimed_t: u32,
    pub channel_scope: BTreeSet<ChannelKind>,
    pub provenance: String,
}

impl QuantumCode {
    /// Builds a code after checking mutual orthonormality within
    /// [`ORTHO_TOL`]. Bases with pairwise-disjoint supports (every lifted
    /// code here) are checked in linear time; overlapping supports fall
    /// back to a full Gram matrix for dimensions up to 2048.
    pub fn new(
        q: u8,
        n: usize,
        basis: Vec<SparseState>,
        claimed_t: u32,
        channel_scope: BTreeSet<ChannelKind>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Construction("empty basis".into()));
        }
        for st in &basis {
            if st.q() != q || st.n() != n {
                return Err(Error::DimensionMismatch(format!(
                    "basis state does not match (q={q}, n={n})"
                )));
            }
            if (st.norm_sq() - 1.0).abs() > ORTHO_TOL {
                return Err(Error::Construction(format!(
                    "basis state has norm^2 {}",
                    st.norm_sq()
                )));
            }
        }
        let mut owner: HashMap<&QuditString, usize> = HashMap::new();
        let mut disjoint = true;
        'outer: for (i, st) in basis.iter().enumerate() {
            for (s, _) in st.terms() {
                if let Some(&j) = owner.get(s) {
                    if j != i {
                        disjoint = false;
                        break 'outer;
                    }
                } else {
                    owner.insert(s, i);
                }
            }
        }
        if !disjoint {
            if basis.len() > 2048 {
                return Err(Error::Unsupported(
                    "orthonormality check for overlapping supports beyond dimension 2048".into(),
                ));
            }
            for i in 0..basis.len() {
                for j in (i + 1)..basis.len() {
                    let ip = basis[i].inner(&basis[j])?;
                    if ip.norm() > ORTHO_TOL {
                        return Err(Error::Construction(format!(
                            "basis states {i} and {j} overlap: |<i|j>| = {}",
                            ip.norm()
                        )));
                    }
                }
            }
        }
        Ok(Self {
            q,
            n,
            basis,
            claimed_t,
            channel_scope,
            provenance: provenance.into(),
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseState] {
        &self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(q: u8, s: &str) -> QuditString {
        QuditString::parse(q, s).unwrap()
    }

    #[test]
    fn shift_wraps_digits() {
        assert_eq!(qs(3, "012").shifted(1), qs(3, "120"));
        assert_eq!(qs(5, "00").shifted(0), qs(5, "00"));
        assert_eq!(qs(4, "33").shifted(1), qs(4, "00"));
    }

    #[test]
    fn shift_q_times_is_identity() {
        for q in [2u8, 3, 5, 7] {
            let s = QuditString::new(q, vec![0, 1 % q, q - 1]).unwrap();
            let mut t = s.clone();
            for _ in 0..q {
                t = t.shifted(1);
            }
            assert_eq!(t, s);
        }
    }

    #[test]
    fn rejects_bad_digits() {
        assert!(QuditString::new(3, vec![0, 3]).is_err());
        assert!(QuditString::new(1, vec![0]).is_err());
        assert!(QuditString::new(37, vec![0]).is_err());
    }

    #[test]
    fn base36_round_trip() {
        let s = QuditString::new(12, vec![0, 10, 11]).unwrap();
        assert_eq!(s.to_string(), "0ab");
        assert_eq!(QuditString::parse(12, "0ab").unwrap(), s);
    }

    #[test]
    fn inner_product_examples() {
        // normalized state against itself
        let q = 3;
        let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let psi = SparseState::from_terms(
            q,
            3,
            ["000", "111", "222"].map(|w| (qs(q, w), amp)),
        )
        .unwrap();
        assert!((psi.inner(&psi).unwrap().re - 1.0).abs() < 1e-14);
        assert!(psi.is_normalized());

        // disjoint supports
        let a = SparseState::basis(qs(3, "000"));
        let b = SparseState::basis(qs(3, "111"));
        assert_eq!(a.inner(&b).unwrap(), Complex64::new(0.0, 0.0));

        // mismatched shapes
        let c = SparseState::basis(qs(3, "00"));
        assert!(a.inner(&c).is_err());
    }

    #[test]
    fn inner_product_conjugate_symmetry() {
        let a = SparseState::from_terms(
            3,
            2,
            [
                (qs(3, "00"), Complex64::new(0.6, 0.3)),
                (qs(3, "12"), Complex64::new(-0.2, 0.7)),
            ],
        )
        .unwrap();
        let b = SparseState::from_terms(
            3,
            2,
            [
                (qs(3, "00"), Complex64::new(0.1, -0.4)),
                (qs(3, "21"), Complex64::new(0.9, 0.0)),
            ],
        )
        .unwrap();
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn from_terms_accumulates_and_prunes() {
        let st = SparseState::from_terms(
            3,
            1,
            [
                (qs(3, "0"), Complex64::new(0.5, 0.0)),
                (qs(3, "0"), Complex64::new(-0.5, 0.0)),
                (qs(3, "1"), Complex64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st.amplitude(&qs(3, "1")), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn orbit_transversal_examples() {
        let c = ClassicalCode::new(3, 2, ["00", "11", "22"].map(|w| qs(3, w))).unwrap();
        let t = c.orbit_transversal().unwrap();
        assert_eq!(t.tilde().unwrap().len(), 1);
        assert!(t.tilde().unwrap().contains(&qs(3, "00")));

        // all of Z_3^2 splits into 3 orbits
        let mut all = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                all.push(QuditString::new(3, vec![a, b]).unwrap());
            }
        }
        let full = ClassicalCode::new(3, 2, all).unwrap();
        assert_eq!(full.orbit_transversal().unwrap().tilde().unwrap().len(), 3);

        // non-closed set is rejected
        let bad = ClassicalCode::new(3, 2, ["00", "11"].map(|w| qs(3, w))).unwrap();
        assert!(bad.orbit_transversal().is_err());
    }

    #[test]
    fn relifting_transversal_reproduces_code() {
        let words = ["00", "11", "22", "01", "12", "20"].map(|w| qs(3, w));
        let c = ClassicalCode::new(3, 2, words).unwrap();
        let t = c.orbit_transversal().unwrap();
        let relift =
            ClassicalCode::from_tilde(3, 2, t.tilde().unwrap().iter().cloned()).unwrap();
        assert_eq!(relift.codewords(), c.codewords());
    }

    #[test]
    fn duplicate_orbit_is_rejected() {
        let reps = [qs(3, "00"), qs(3, "11")];
        assert!(ClassicalCode::from_tilde(3, 2, reps).is_err());
    }

    #[test]
    fn quantum_code_rejects_overlapping_basis() {
        let amp = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let a = SparseState::from_terms(3, 1, [(qs(3, "0"), amp), (qs(3, "1"), amp)]).unwrap();
        let b = SparseState::from_terms(3, 1, [(qs(3, "0"), amp), (qs(3, "2"), amp)]).unwrap();
        let err = QuantumCode::new(3, 1, vec![a, b], 1, BTreeSet::new(), "test");
        assert!(err.is_err());
    }
}
