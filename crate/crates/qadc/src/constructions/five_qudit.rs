//! The five-qudit distance-3 code over Z_5 used as the outer code of the
//! multi-error constructions, with a brute-force generalized-Pauli
//! distance check.

use crate::error::{Error, Result};
use crate::qudit::{QuantumCode, QuditString, SparseState};
use num_complex::Complex64;
use std::collections::BTreeSet;
use std::f64::consts::TAU;

/// Logical basis state `|k_L⟩` of the `[[5,1,3]]_5` code:
/// `(1/(5*sqrt(5))) Σ_{p,q,r} ω^(k(p+q+r)+pr) |p+q+k, p+r, q+r, p, q⟩`
/// with `ω = exp(2πi/5)` and sums mod 5.
pub fn encode_5_1_3_5(k: u8) -> Result<SparseState> {
    if k > 4 {
        return Err(Error::InvalidParameter(format!("logical index {k} > 4")));
    }
    let amp = 1.0 / (5.0 * 5f64.sqrt());
    let mut terms = Vec::with_capacity(125);
    for p in 0u32..5 {
        for q in 0u32..5 {
            for r in 0u32..5 {
                let phase = (k as u32 * (p + q + r) + p * r) % 5;
                let angle = TAU * phase as f64 / 5.0;
                let digits = vec![
                    ((p + q + k as u32) % 5) as u8,
                    ((p + r) % 5) as u8,
                    ((q + r) % 5) as u8,
                    p as u8,
                    q as u8,
                ];
                terms.push((
                    QuditString::new(5, digits)?,
                    Complex64::from_polar(amp, angle),
                ));
            }
        }
    }
    SparseState::from_terms(5, 5, terms)
}

/// The full five-dimensional code. Its distance-3 property makes it
/// correct one arbitrary single-site error, recorded as `claimed_t = 1`.
pub fn five_one_three_five() -> Result<QuantumCode> {
    let basis = (0..5).map(encode_5_1_3_5).collect::<Result<Vec<_>>>()?;
    QuantumCode::new(5, 5, basis, 1, BTreeSet::new(), "[[5,1,3]]_5")
}

fn apply_pauli(
    state: &SparseState,
    sites: &[(usize, u8, u8)], // (site, x power, z power)
) -> Result<SparseState> {
    let q = state.q() as u32;
    let terms = state
        .terms()
        .map(|(s, amp)| {
            let mut digits = s.digits().to_vec();
            let mut phase = 0u32;
            for &(site, a, b) in sites {
                phase = (phase + b as u32 * digits[site] as u32) % q;
                digits[site] = ((digits[site] as u32 + a as u32) % q) as u8;
            }
            let angle = TAU * phase as f64 / q as f64;
            Ok((
                QuditString::new(state.q(), digits)?,
                amp * Complex64::from_polar(1.0, angle),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseState::from_terms(state.q(), state.n(), terms)
}

/// Max Knill–Laflamme deviation `|⟨c_i|E|c_j⟩ - δ_ij c_E|` over all
/// generalized-Pauli operators of weight 1..=max_weight, with `c_E` the
/// mean diagonal element. A code of distance `d` keeps this at numerical
/// zero for `max_weight = d - 1`.
pub fn pauli_kl_deviation(code: &QuantumCode, max_weight: usize) -> Result<f64> {
    let q = code.q();
    let n = code.n();
    let k_dim = code.dimension();
    let mut site_sets: Vec<Vec<(usize, u8, u8)>> = Vec::new();
    let single: Vec<(u8, u8)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    match max_weight {
        1 => {}
        2 => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for &(a1, b1) in &single {
                        for &(a2, b2) in &single {
                            site_sets.push(vec![(i, a1, b1), (j, a2, b2)]);
                        }
                    }
                }
            }
        }
        w => {
            return Err(Error::Unsupported(format!(
                "pauli_kl_deviation supports weight 1 or 2, got {w}"
            )));
        }
    }
    for i in 0..n {
        for &(a, b) in &single {
            site_sets.push(vec![(i, a, b)]);
        }
    }

    let mut worst = 0.0f64;
    for sites in &site_sets {
        let images = code
            .basis()
            .iter()
            .map(|st| apply_pauli(st, sites))
            .collect::<Result<Vec<_>>>()?;
        let mut gram = vec![Complex64::new(0.0, 0.0); k_dim * k_dim];
        let mut diag = Complex64::new(0.0, 0.0);
        for i in 0..k_dim {
            for j in 0..k_dim {
                let v = code.basis()[i].inner(&images[j])?;
                gram[i * k_dim + j] = v;
                if i == j {
                    diag += v;
                }
            }
        }
        let c = diag / k_dim as f64;
        for i in 0..k_dim {
            for j in 0..k_dim {
                let expected = if i == j { c } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((gram[i * k_dim + j] - expected).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal() {
        let code = five_one_three_five().unwrap();
        assert_eq!(code.dimension(), 5);
        for st in code.basis() {
            assert_eq!(st.len(), 125);
            assert!((st.norm_sq() - 1.0).abs() < 1e-12);
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let ip = code.basis()[i].inner(&code.basis()[j]).unwrap();
                assert!(ip.norm() < 1e-12, "<{i}|{j}> = {ip}");
            }
        }
    }

    #[test]
    fn detects_all_single_site_paulis() {
        let code = five_one_three_five().unwrap();
        assert!(pauli_kl_deviation(&code, 1).unwrap() < 1e-12);
    }
}
