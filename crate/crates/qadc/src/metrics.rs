//! Classical asymmetric-channel metrics and code predicates.
//!
//! The asymmetric distance between words `x` and `y` is
//! `Δ(x, y) = max{N(x, y), N(y, x)}` with `N(x, y) = Σ max{y_i - x_i, 0}`;
//! a code corrects `t` decrement errors exactly when all distinct codeword
//! pairs have `Δ > t`.

use crate::error::{Error, Result};
use crate::qudit::{check_same_shape, ClassicalCode, QuditString};
use std::collections::HashMap;

/// Digit sum of a word, over the integers.
pub fn weight(x: &QuditString) -> u64 {
    x.digits().iter().map(|&d| d as u64).sum()
}

/// Directed asymmetric distance `N(x, y) = Σ max{y_i - x_i, 0}`.
pub fn n_asym(x: &QuditString, y: &QuditString) -> Result<u64> {
    check_same_shape(x, y)?;
    Ok(x.digits()
        .iter()
        .zip(y.digits())
        .map(|(&a, &b)| (b as i64 - a as i64).max(0) as u64)
        .sum())
}

/// Asymmetric distance `Δ(x, y) = max{N(x, y), N(y, x)}`.
pub fn delta(x: &QuditString, y: &QuditString) -> Result<u64> {
    Ok(n_asym(x, y)?.max(n_asym(y, x)?))
}

/// Pairwise-distance summary of a classical code.
///
/// `min_delta` is `None` for empty and singleton codes, which count as
/// `t`-codes for every `t`.
#[derive(Clone, Debug)]
pub struct AsymReport {
    pub min_delta: Option<u64>,
    pub witness_pair: Option<(QuditString, QuditString)>,
    pub is_self_complementary: bool,
}

impl AsymReport {
    pub fn is_t_code(&self, t: u64) -> bool {
        self.min_delta.map_or(true, |d| d > t)
    }
}

/// Scans all codeword pairs for the minimum asymmetric distance.
pub fn asym_report(code: &ClassicalCode) -> AsymReport {
    let words: Vec<&QuditString> = code.iter().collect();
    let mut min: Option<u64> = None;
    let mut witness = None;
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let d = delta(words[i], words[j]).expect("codewords share (q, n)");
            if min.map_or(true, |m| d < m) {
                min = Some(d);
                witness = Some((words[i].clone(), words[j].clone()));
            }
        }
    }
    AsymReport {
        min_delta: min,
        witness_pair: witness,
        is_self_complementary: is_self_complementary(code),
    }
}

/// True when the code corrects `t` asymmetric errors (`min Δ > t`).
pub fn is_t_code(code: &ClassicalCode, t: u64) -> bool {
    asym_report(code).is_t_code(t)
}

/// True when the codeword set is closed under every all-one shift.
pub fn is_self_complementary(code: &ClassicalCode) -> bool {
    code.is_shift_closed()
}

/// Independent characterization of `Δ(x, y) = 1` for length-3 words: the
/// integer difference `x - y` is, up to permutation and global sign, one of
/// `(1, 0, 0)` or `(1, -1, 0)`. Used as a cross-check oracle for [`delta`].
pub fn delta1_profile(x: &QuditString, y: &QuditString) -> Result<bool> {
    check_same_shape(x, y)?;
    if x.len() != 3 {
        return Err(Error::Unsupported(format!(
            "delta1_profile is defined for n = 3, got n = {}",
            x.len()
        )));
    }
    let mut diff: Vec<i64> = x
        .digits()
        .iter()
        .zip(y.digits())
        .map(|(&a, &b)| a as i64 - b as i64)
        .collect();
    diff.sort_unstable();
    Ok(diff == [0, 0, 1] || diff == [-1, 0, 0] || diff == [-1, 0, 1])
}

/// Brute-force check that a code corrects a single error of the neighbor
/// channel: in every coordinate a symbol may move to an adjacent value mod
/// q, and the error balls of distinct codewords must be disjoint.
pub fn is_rq_single_corrector(code: &ClassicalCode) -> bool {
    let q = code.q();
    let mut owner: HashMap<QuditString, &QuditString> = HashMap::new();
    for w in code.iter() {
        let mut ball = vec![w.clone()];
        for i in 0..w.len() {
            for step in [1, q - 1] {
                let mut digits = w.digits().to_vec();
                digits[i] = (digits[i] + step) % q;
                ball.push(QuditString::new(q, digits).expect("digits stay in range"));
            }
        }
        for b in ball {
            if let Some(prev) = owner.get(&b) {
                if *prev != w {
                    return false;
                }
            } else {
                owner.insert(b, w);
            }
        }
    }
    true
}

/// Minimum pairwise Hamming distance; `None` for codes with fewer than two
/// codewords.
pub fn min_hamming_distance(code: &ClassicalCode) -> Option<u64> {
    let words: Vec<&QuditString> = code.iter().collect();
    let mut min: Option<u64> = None;
    for i in 0..words.len() {
        for j in (i + 1)..words.len() {
            let d = words[i]
                .digits()
                .iter()
                .zip(words[j].digits())
                .filter(|(a, b)| a != b)
                .count() as u64;
            if min.map_or(true, |m| d < m) {
                min = Some(d);
            }
        }
    }
    min
}

pub fn is_hamming_distance_at_least(code: &ClassicalCode, d: u64) -> bool {
    min_hamming_distance(code).map_or(true, |m| m >= d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::QuditString;

    fn qs(q: u8, s: &str) -> QuditString {
        QuditString::parse(q, s).unwrap()
    }

    fn code(q: u8, n: usize, words: &[&str]) -> ClassicalCode {
        ClassicalCode::new(q, n, words.iter().map(|w| qs(q, w))).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&qs(3, "000")), 0);
        assert_eq!(weight(&qs(3, "012")), 3);
        assert_eq!(weight(&qs(5, "44")), 8);
    }

    #[test]
    fn n_asym_examples() {
        assert_eq!(n_asym(&qs(3, "00"), &qs(3, "12")).unwrap(), 3);
        assert_eq!(n_asym(&qs(3, "12"), &qs(3, "00")).unwrap(), 0);
        assert_eq!(n_asym(&qs(3, "021"), &qs(3, "201")).unwrap(), 2);
        assert!(n_asym(&qs(3, "00"), &qs(3, "000")).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&qs(3, "01"), &qs(3, "01")).unwrap(), 0);
        assert_eq!(delta(&qs(3, "00"), &qs(3, "11")).unwrap(), 2);
        assert_eq!(delta(&qs(3, "00"), &qs(3, "12")).unwrap(), 3);
    }

    #[test]
    fn t_code_examples() {
        let rep = code(3, 2, &["00", "11", "22"]);
        let r = asym_report(&rep);
        assert_eq!(r.min_delta, Some(2));
        assert!(r.is_t_code(1));
        assert!(r.is_self_complementary);

        let adj = code(3, 2, &["00", "01"]);
        let r = asym_report(&adj);
        assert_eq!(r.min_delta, Some(1));
        assert!(!r.is_t_code(1));

        // singleton and empty codes are t-codes for every t
        let single = code(5, 2, &["00"]);
        assert!(asym_report(&single).is_t_code(100));
        let empty = ClassicalCode::new(5, 2, []).unwrap();
        assert!(asym_report(&empty).is_t_code(100));
    }

    #[test]
    fn self_complementary_examples() {
        assert!(is_self_complementary(&code(3, 2, &["00", "11", "22"])));
        assert!(!is_self_complementary(&code(3, 2, &["00", "11"])));
    }

    #[test]
    fn delta1_profile_examples() {
        assert!(delta1_profile(&qs(3, "111"), &qs(3, "110")).unwrap());
        assert!(delta1_profile(&qs(3, "120"), &qs(3, "210")).unwrap());
        assert!(!delta1_profile(&qs(3, "000"), &qs(3, "011")).unwrap());
        assert!(delta1_profile(&qs(3, "00"), &qs(3, "11")).is_err());
    }

    #[test]
    fn delta1_profile_matches_delta_exhaustively() {
        for q in 3..=8u8 {
            let mut words = Vec::new();
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        words.push(QuditString::new(q, vec![a, b, c]).unwrap());
                    }
                }
            }
            for x in &words {
                for y in &words {
                    let d1 = delta(x, y).unwrap() == 1;
                    assert_eq!(d1, delta1_profile(x, y).unwrap(), "x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn rq_corrector_examples() {
        assert!(is_rq_single_corrector(&code(3, 3, &["000", "111", "222"])));
        assert!(!is_rq_single_corrector(&code(4, 2, &["00", "01"])));
        // balls around 0 and 2 share the symbol 1
        assert!(!is_rq_single_corrector(&code(5, 1, &["0", "2"])));
    }

    #[test]
    fn hamming_distance_examples() {
        assert!(is_hamming_distance_at_least(
            &code(3, 3, &["000", "111", "222"]),
            3
        ));
        assert!(!is_hamming_distance_at_least(&code(3, 2, &["00", "01"]), 2));
    }

    #[test]
    fn single_decrement_balls_disjoint_for_1_codes() {
        // brute-force simulation of the asymmetric channel: one unit
        // decrement in one coordinate
        let candidates = [
            code(3, 2, &["00", "11", "22"]),
            code(3, 2, &["01", "12", "20"]),
            code(4, 2, &["00", "11", "22", "33"]),
            code(5, 2, &["00", "11", "22", "33", "44"]),
            code(3, 2, &["00", "01", "11"]),
        ];
        for c in candidates {
            if !is_t_code(&c, 1) {
                continue;
            }
            let mut owner: HashMap<QuditString, QuditString> = HashMap::new();
            let mut ok = true;
            for w in c.iter() {
                let mut ball = vec![w.clone()];
                for i in 0..w.len() {
                    if w.digit(i) > 0 {
                        let mut d = w.digits().to_vec();
                        d[i] -= 1;
                        ball.push(QuditString::new(c.q(), d).unwrap());
                    }
                }
                for b in ball {
                    if let Some(prev) = owner.get(&b) {
                        if prev != w {
                            ok = false;
                        }
                    } else {
                        owner.insert(b, w.clone());
                    }
                }
            }
            assert!(ok, "1-code failed the decrement-ball simulation");
        }
    }
}
