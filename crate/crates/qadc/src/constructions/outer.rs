//! Outer-code registry for generalized concatenation.
//!
//! Ternary distance-3 codes come from parity-check matrices whose columns
//! are distinct projective points, which shortens the Hamming family to any
//! length; other alphabets fall back to repetition codes. Every code is
//! re-verified against its required property when it is produced.

use crate::error::{Error, Result};
use crate::metrics;
use crate::qudit::{ClassicalCode, QuditString};

/// Property an outer code must guarantee for the concatenation to correct
/// a single inner error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OuterProperty {
    /// Minimum Hamming distance 3.
    HammingD3,
    /// Corrects one error of the neighbor channel (cyclically adjacent
    /// symbol transitions).
    RqSingle,
}

impl std::fmt::Display for OuterProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OuterProperty::HammingD3 => write!(f, "hamming_d3"),
            OuterProperty::RqSingle => write!(f, "rq_single"),
        }
    }
}

/// An outer code together with the property it was verified for.
#[derive(Clone, Debug)]
pub struct OuterCodeEntry {
    pub code: ClassicalCode,
    pub property: OuterProperty,
}

pub(crate) fn property_holds(code: &ClassicalCode, property: OuterProperty) -> bool {
    match property {
        OuterProperty::HammingD3 => metrics::is_hamming_distance_at_least(code, 3),
        OuterProperty::RqSingle => metrics::is_rq_single_corrector(code),
    }
}

/// The single-codeword code `{0…0}`.
pub fn trivial_code(q: u8, n: usize) -> Result<ClassicalCode> {
    ClassicalCode::new(q, n, [QuditString::new(q, vec![0; n])?])
}

/// The q-word repetition code of the given length.
pub fn repetition_code(q: u8, n: usize) -> Result<ClassicalCode> {
    ClassicalCode::new(q, n, (0..q).map(|d| QuditString::new(q, vec![d; n]).unwrap()))
}

/// Projective points of GF(3)^r (first nonzero coordinate 1), in
/// lexicographic order.
fn ternary_projective_points(r: usize) -> Vec<Vec<u8>> {
    let mut pts = Vec::new();
    let total = 3usize.pow(r as u32);
    for v in 0..total {
        let mut digits = Vec::with_capacity(r);
        let mut x = v;
        for _ in 0..r {
            digits.push((x % 3) as u8);
            x /= 3;
        }
        digits.reverse();
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            pts.push(digits);
        }
    }
    pts
}

/// Kernel of the r x n ternary parity-check matrix with the first n
/// projective points as columns: an [n, n-r, 3] code.
fn ternary_checked_code(n: usize, r: usize) -> Result<ClassicalCode> {
    let pts = ternary_projective_points(r);
    if n > pts.len() {
        return Err(Error::Unsupported(format!(
            "length {n} exceeds the {} projective points of GF(3)^{r}",
            pts.len()
        )));
    }
    let cols = &pts[..n];
    let mut words = Vec::new();
    for v in 0..3usize.pow(n as u32) {
        let mut digits = Vec::with_capacity(n);
        let mut x = v;
        for _ in 0..n {
            digits.push((x % 3) as u8);
            x /= 3;
        }
        let in_kernel = (0..r).all(|row| {
            cols.iter()
                .zip(&digits)
                .map(|(col, &d)| col[row] as u32 * d as u32)
                .sum::<u32>()
                % 3
                == 0
        });
        if in_kernel {
            words.push(QuditString::new(3, digits)?);
        }
    }
    let code = ClassicalCode::new(3, n, words)?;
    if code.len() != 3usize.pow((n - r) as u32) {
        return Err(Error::Construction(format!(
            "parity-check matrix for n = {n} is not full rank"
        )));
    }
    Ok(code)
}

/// Best registered ternary distance-3 code of each length: trivial for
/// lengths 1 and 2, repetition at 3, then [n, n-2, 3] and [n, n-3, 3]
/// parity-check kernels.
fn ternary_d3(n: usize) -> Result<ClassicalCode> {
    match n {
        0 => Err(Error::InvalidParameter("outer length 0".into())),
        1 | 2 => trivial_code(3, n),
        3 => repetition_code(3, 3),
        4 => ternary_checked_code(4, 2),
        5..=13 => ternary_checked_code(n, 3),
        _ => Err(Error::Unsupported(format!(
            "no registered ternary distance-3 code of length {n}"
        ))),
    }
}

/// Returns a registered outer code with the requested property, verified
/// on the way out.
pub fn outer_registry(q: u8, length: usize, property: OuterProperty) -> Result<OuterCodeEntry> {
    let code = if q == 3 {
        ternary_d3(length)?
    } else if length <= 2 {
        trivial_code(q, length)?
    } else {
        repetition_code(q, length)?
    };
    let entry = OuterCodeEntry { code, property };
    if !property_holds(&entry.code, property) {
        return Err(Error::Construction(format!(
            "registry code (q={q}, n={length}) fails {property}"
        )));
    }
    Ok(entry)
}

/// Wraps user-supplied codewords after verifying the claimed property.
pub fn outer_from_words(
    q: u8,
    n: usize,
    words: Vec<QuditString>,
    property: OuterProperty,
) -> Result<OuterCodeEntry> {
    let code = ClassicalCode::new(q, n, words)?;
    if !property_holds(&code, property) {
        return Err(Error::Construction(format!(
            "supplied outer code fails {property}"
        )));
    }
    Ok(OuterCodeEntry { code, property })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length3_is_repetition() {
        let e = outer_registry(3, 3, OuterProperty::HammingD3).unwrap();
        assert_eq!(e.code.len(), 3);
        assert!(e.code.contains(&QuditString::parse(3, "111").unwrap()));
    }

    #[test]
    fn length4_is_a_tetracode() {
        let e = outer_registry(3, 4, OuterProperty::HammingD3).unwrap();
        assert_eq!(e.code.len(), 9);
        assert_eq!(metrics::min_hamming_distance(&e.code), Some(3));
    }

    #[test]
    fn shortened_family_dimensions() {
        for (n, k) in [(5usize, 2u32), (6, 3), (7, 4), (8, 5)] {
            let e = outer_registry(3, n, OuterProperty::HammingD3).unwrap();
            assert_eq!(e.code.len(), 3usize.pow(k), "length {n}");
            assert!(metrics::is_hamming_distance_at_least(&e.code, 3));
        }
    }

    #[test]
    fn rq_property_via_registry() {
        let e = outer_registry(4, 3, OuterProperty::RqSingle).unwrap();
        assert_eq!(e.code.len(), 4);
        let e = outer_registry(3, 4, OuterProperty::RqSingle).unwrap();
        assert_eq!(e.code.len(), 9);
    }

    #[test]
    fn user_code_verification() {
        let words: Vec<QuditString> = ["000", "111", "222"]
            .iter()
            .map(|w| QuditString::parse(3, w).unwrap())
            .collect();
        assert!(outer_from_words(3, 3, words.clone(), OuterProperty::HammingD3).is_ok());
        let bad: Vec<QuditString> = ["000", "011"]
            .iter()
            .map(|w| QuditString::parse(3, w).unwrap())
            .collect();
        assert!(outer_from_words(3, 3, bad, OuterProperty::HammingD3).is_err());
    }
}
