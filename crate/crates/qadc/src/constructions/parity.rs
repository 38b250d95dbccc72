//! Multi-error construction from even-parity inner blocks.
//!
//! The inner space is spanned by the length-m strings of even digit sum;
//! one damping event always leaves it, so damping acts as a detectable
//! erasure at the block level and an outer code of quantum distance t+1
//! over the block alphabet yields a t-error-correcting code.

use crate::error::{Error, Result};
use crate::qudit::{ChannelKind, ClassicalCode, QuantumCode, QuditString, SparseState};
use std::collections::BTreeSet;

/// All length-m strings over Z_q with even digit sum.
pub fn parity_inner_set(q: u8, m: usize) -> Result<ClassicalCode> {
    if m == 0 {
        return Err(Error::InvalidParameter("block length 0".into()));
    }
    let mut words = Vec::new();
    let mut digits = vec![0u8; m];
    loop {
        let sum: u32 = digits.iter().map(|&d| d as u32).sum();
        if sum % 2 == 0 {
            words.push(QuditString::new(q, digits.clone())?);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return ClassicalCode::new(q, m, words);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Closed form for the even-parity count: `q^m / 2` for even q,
/// `(q^m + 1) / 2` for odd q.
pub fn k_formula(q: u8, m: usize) -> u128 {
    let total = (q as u128).pow(m as u32);
    if q % 2 == 0 {
        total / 2
    } else {
        (total + 1) / 2
    }
}

fn substitute_state(
    state: &SparseState,
    map: &[QuditString],
    q: u8,
    n_out: usize,
) -> Result<SparseState> {
    let terms = state
        .terms()
        .map(|(s, amp)| {
            let mut digits = Vec::with_capacity(n_out);
            for &d in s.digits() {
                digits.extend_from_slice(map[d as usize].digits());
            }
            Ok((QuditString::new(q, digits)?, *amp))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseState::from_terms(q, n_out, terms)
}

pub(crate) fn validate_symbol_map(
    map: &[QuditString],
    allowed: &ClassicalCode,
    alphabet: usize,
) -> Result<()> {
    if map.len() != alphabet {
        return Err(Error::InvalidParameter(format!(
            "symbol map has {} entries, outer alphabet needs {alphabet}",
            map.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for w in map {
        if !allowed.contains(w) {
            return Err(Error::Construction(format!(
                "symbol image {w} is outside the inner set"
            )));
        }
        if !seen.insert(w) {
            return Err(Error::Construction(format!("symbol image {w} repeats")));
        }
    }
    Ok(())
}

/// Substitutes each outer-site basis ket with its image under an injective
/// map into the even-parity set, producing a code of length
/// `outer.n() * m` over Z_q. The default map is the lexicographic
/// enumeration of the set; any injection gives an equivalent code.
pub fn multi_error_construct(
    outer: &QuantumCode,
    q: u8,
    m: usize,
    symbol_map: Option<&[QuditString]>,
) -> Result<QuantumCode> {
    let inner = parity_inner_set(q, m)?;
    let alphabet = outer.q() as usize;
    if alphabet > inner.len() {
        return Err(Error::Construction(format!(
            "outer alphabet {alphabet} exceeds the {} even-parity strings",
            inner.len()
        )));
    }
    let default_map: Vec<QuditString>;
    let map: &[QuditString] = match symbol_map {
        Some(m) => m,
        None => {
            default_map = inner.iter().take(alphabet).cloned().collect();
            &default_map
        }
    };
    validate_symbol_map(map, &inner, alphabet)?;
    let n_out = outer.n() * m;
    let basis = outer
        .basis()
        .iter()
        .map(|st| substitute_state(st, map, q, n_out))
        .collect::<Result<Vec<_>>>()?;
    let t = 2 * outer.claimed_t;
    QuantumCode::new(
        q,
        n_out,
        basis,
        t,
        [ChannelKind::Bosonic, ChannelKind::Cascade]
            .into_iter()
            .collect(),
        format!(
            "parity blocks m={m} over {} with outer {}",
            q, outer.provenance
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_set_examples() {
        let s = parity_inner_set(3, 2).unwrap();
        let words: Vec<String> = s.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["00", "02", "11", "20", "22"]);
        assert_eq!(s.len(), 5);

        assert_eq!(parity_inner_set(2, 3).unwrap().len(), 4);
        let s = parity_inner_set(3, 1).unwrap();
        let words: Vec<String> = s.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["0", "2"]);
    }

    #[test]
    fn k_formula_examples() {
        assert_eq!(k_formula(3, 2), 5);
        assert_eq!(k_formula(4, 2), 8);
        assert_eq!(k_formula(5, 3), 63);
    }

    #[test]
    fn k_formula_matches_enumeration() {
        for q in 2..=7u8 {
            for m in 1..=6usize {
                assert_eq!(
                    k_formula(q, m),
                    parity_inner_set(q, m).unwrap().len() as u128,
                    "q={q} m={m}"
                );
            }
        }
    }

    #[test]
    fn degenerate_outer_gives_inner_alone() {
        // unencoded 5-level site as outer code
        let basis = (0..5u8)
            .map(|d| SparseState::basis(QuditString::new(5, vec![d]).unwrap()))
            .collect();
        let outer =
            QuantumCode::new(5, 1, basis, 0, BTreeSet::new(), "unencoded site").unwrap();
        let code = multi_error_construct(&outer, 3, 2, None).unwrap();
        assert_eq!(code.dimension(), 5);
        assert_eq!(code.n(), 2);
        assert_eq!(code.claimed_t, 0);
    }

    #[test]
    fn capacity_error() {
        let basis = (0..5u8)
            .map(|d| SparseState::basis(QuditString::new(5, vec![d]).unwrap()))
            .collect();
        let outer = QuantumCode::new(5, 1, basis, 0, BTreeSet::new(), "site").unwrap();
        // q=2, m=2 has only 2 even-parity strings
        assert!(multi_error_construct(&outer, 2, 2, None).is_err());
    }
}
