//! Inner sets and substitution construction for the qutrit V and Lambda
//! channels.
//!
//! Binary parity classes are pushed through a digit substitution: for the
//! V channel's classical counterpart a binary 0 becomes symbol 1 or 2 and
//! a binary 1 becomes 0; for the Lambda counterpart a binary 0 becomes 0
//! or 1 and a binary 1 becomes 2. One allowed channel transition always
//! flips the underlying parity class, so a damping event is detectable at
//! the block level, mirroring the even-parity construction.

use crate::error::{Error, Result};
use crate::qudit::{ChannelKind, ClassicalCode, QuantumCode, QuditString, SparseState};

/// Classical trit channel mirrored by the substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VLambdaPattern {
    /// Counterpart of the V channel: transitions 1 -> 0 and 2 -> 0.
    L1,
    /// Counterpart of the Lambda channel: transitions 2 -> 0 and 2 -> 1.
    L2,
}

impl VLambdaPattern {
    pub fn channel(self) -> ChannelKind {
        match self {
            VLambdaPattern::L1 => ChannelKind::V,
            VLambdaPattern::L2 => ChannelKind::Lambda,
        }
    }

    fn digit_images(self, bit: u8) -> &'static [u8] {
        match (self, bit) {
            (VLambdaPattern::L1, 0) => &[1, 2],
            (VLambdaPattern::L1, 1) => &[0],
            (VLambdaPattern::L2, 0) => &[0, 1],
            (VLambdaPattern::L2, 1) => &[2],
            _ => unreachable!("bits are 0 or 1"),
        }
    }
}

impl std::fmt::Display for VLambdaPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VLambdaPattern::L1 => write!(f, "l1"),
            VLambdaPattern::L2 => write!(f, "l2"),
        }
    }
}

/// Images `(S_0, S_1)` of the even- and odd-parity binary strings under
/// the pattern's digit substitution.
pub fn v_lambda_sets(pattern: VLambdaPattern, m: usize) -> Result<(ClassicalCode, ClassicalCode)> {
    if m == 0 {
        return Err(Error::InvalidParameter("block length 0".into()));
    }
    let mut sets = [Vec::new(), Vec::new()];
    for bits in 0..(1u32 << m) {
        let parity = (bits.count_ones() % 2) as usize;
        let mut images: Vec<Vec<u8>> = vec![Vec::new()];
        for pos in 0..m {
            let bit = ((bits >> pos) & 1) as u8;
            let mut next = Vec::with_capacity(images.len() * 2);
            for prefix in &images {
                for &d in pattern.digit_images(bit) {
                    let mut ext = prefix.clone();
                    ext.push(d);
                    next.push(ext);
                }
            }
            images = next;
        }
        for digits in images {
            sets[parity].push(QuditString::new(3, digits)?);
        }
    }
    let [s0, s1] = sets;
    Ok((
        ClassicalCode::new(3, m, s0)?,
        ClassicalCode::new(3, m, s1)?,
    ))
}

/// Substitution construction over `S_0` (the larger set): each outer-site
/// ket is replaced by its image, giving a code of length `outer.n() * m`
/// for the V channel (pattern L1) or the Lambda channel (pattern L2).
pub fn v_lambda_construct(
    outer: &QuantumCode,
    pattern: VLambdaPattern,
    m: usize,
    symbol_map: Option<&[QuditString]>,
) -> Result<QuantumCode> {
    let (s0, _) = v_lambda_sets(pattern, m)?;
    let alphabet = outer.q() as usize;
    if alphabet > s0.len() {
        return Err(Error::Construction(format!(
            "outer alphabet {alphabet} exceeds |S0| = {}",
            s0.len()
        )));
    }
    let default_map: Vec<QuditString>;
    let map: &[QuditString] = match symbol_map {
        Some(m) => m,
        None => {
            default_map = s0.iter().take(alphabet).cloned().collect();
            &default_map
        }
    };
    super::parity::validate_symbol_map(map, &s0, alphabet)?;
    let n_out = outer.n() * m;
    let basis = outer
        .basis()
        .iter()
        .map(|st| {
            let terms = st
                .terms()
                .map(|(s, amp)| {
                    let mut digits = Vec::with_capacity(n_out);
                    for &d in s.digits() {
                        digits.extend_from_slice(map[d as usize].digits());
                    }
                    Ok((QuditString::new(3, digits)?, *amp))
                })
                .collect::<Result<Vec<_>>>()?;
            SparseState::from_terms(3, n_out, terms)
        })
        .collect::<Result<Vec<_>>>()?;
    QuantumCode::new(
        3,
        n_out,
        basis,
        2 * outer.claimed_t,
        [pattern.channel()].into_iter().collect(),
        format!(
            "{} blocks m={m} with outer {}",
            pattern, outer.provenance
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(code: &ClassicalCode) -> Vec<String> {
        code.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn sets_for_m2() {
        let (s0, s1) = v_lambda_sets(VLambdaPattern::L1, 2).unwrap();
        assert_eq!(words(&s0), ["00", "11", "12", "21", "22"]);
        assert_eq!(words(&s1), ["01", "02", "10", "20"]);

        let (s0, s1) = v_lambda_sets(VLambdaPattern::L2, 2).unwrap();
        assert_eq!(words(&s0), ["00", "01", "10", "11", "22"]);
        // enumerated image of the odd-parity class
        assert_eq!(words(&s1), ["02", "12", "20", "21"]);
    }

    #[test]
    fn sets_for_m1() {
        let (s0, s1) = v_lambda_sets(VLambdaPattern::L1, 1).unwrap();
        assert_eq!(words(&s0), ["1", "2"]);
        assert_eq!(words(&s1), ["0"]);
    }

    #[test]
    fn sizes_match_closed_form_and_recurrences() {
        for pattern in [VLambdaPattern::L1, VLambdaPattern::L2] {
            let mut prev: Option<(usize, usize)> = None;
            for m in 1..=8usize {
                let (s0, s1) = v_lambda_sets(pattern, m).unwrap();
                let (a, b) = (s0.len(), s1.len());
                let total = 3usize.pow(m as u32);
                assert_eq!(a, (total + 1) / 2, "{pattern} m={m}");
                assert_eq!(b, (total - 1) / 2);
                assert_eq!(a + b, total);
                if let Some((pa, pb)) = prev {
                    assert_eq!(a, 2 * pa + pb, "alpha recurrence at m={m}");
                }
                prev = Some((a, b));
            }
        }
    }

    #[test]
    fn single_transition_flips_the_class() {
        for pattern in [VLambdaPattern::L1, VLambdaPattern::L2] {
            let transitions: &[(u8, u8)] = match pattern {
                VLambdaPattern::L1 => &[(1, 0), (2, 0)],
                VLambdaPattern::L2 => &[(2, 0), (2, 1)],
            };
            for m in 1..=5usize {
                let (s0, s1) = v_lambda_sets(pattern, m).unwrap();
                for (label, set, other) in [("S0", &s0, &s1), ("S1", &s1, &s0)] {
                    for w in set.iter() {
                        for pos in 0..m {
                            for &(from, to) in transitions {
                                if w.digit(pos) == from {
                                    let mut digits = w.digits().to_vec();
                                    digits[pos] = to;
                                    let v = QuditString::new(3, digits).unwrap();
                                    assert!(
                                        other.contains(&v),
                                        "{pattern} m={m}: {w} in {label} moved to {v}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn default_map_m2_matches_lex_order() {
        let basis = (0..5u8)
            .map(|d| SparseState::basis(QuditString::new(5, vec![d]).unwrap()))
            .collect();
        let outer = QuantumCode::new(
            5,
            1,
            basis,
            0,
            std::collections::BTreeSet::new(),
            "site",
        )
        .unwrap();
        let code = v_lambda_construct(&outer, VLambdaPattern::L1, 2, None).unwrap();
        assert_eq!(code.dimension(), 5);
        let support: Vec<String> = code
            .basis()
            .iter()
            .map(|st| st.terms().next().unwrap().0.to_string())
            .collect();
        assert_eq!(support, ["00", "11", "12", "21", "22"]);
    }
}
