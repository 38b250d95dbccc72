//! Kraus-operator builders for the amplitude-damping channels and
//! enumeration of tensor-product error operators.
//!
//! Every single-site Kraus operator of the four channels is monomial: it
//! maps each basis digit to at most one digit with a real coefficient. A
//! [`SiteKraus`] stores that partial map together with a damping weight,
//! the number of `sqrt(tau)` factors in its leading coefficient. Tensor
//! products are [`ErrorOp`]s inside an [`ErrorEnsemble`].

use crate::error::{Error, Result};
use crate::qudit::{ChannelKind, QuditString, SparseState, MAX_Q};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Single-site monomial Kraus operator.
#[derive(Clone, Debug)]
pub struct SiteKraus {
    pub label: String,
    q: u8,
    /// `map[r] = Some((r', c))` when the operator sends `|r⟩` to `c |r'⟩`.
    map: Vec<Option<(u8, f64)>>,
    /// Number of `sqrt(tau)` factors carried by the coefficient.
    pub damping_weight: u32,
}

impl SiteKraus {
    fn new(label: impl Into<String>, q: u8, map: Vec<Option<(u8, f64)>>, weight: u32) -> Self {
        debug_assert_eq!(map.len(), q as usize);
        Self {
            label: label.into(),
            q,
            map,
            damping_weight: weight,
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Leading order of the coefficient in `tau`.
    pub fn order_in_tau(&self) -> f64 {
        self.damping_weight as f64 / 2.0
    }

    pub fn apply_digit(&self, d: u8) -> Option<(u8, f64)> {
        self.map[d as usize]
    }

    pub fn max_coeff(&self) -> f64 {
        self.map
            .iter()
            .flatten()
            .map(|&(_, c)| c.abs())
            .fold(0.0, f64::max)
    }
}

/// `max_r |Σ_k coeff_k(r)^2 - 1|` over input digits: the trace-preservation
/// defect of a complete single-site Kraus set.
pub fn completeness_deviation(ops: &[SiteKraus]) -> f64 {
    let q = ops[0].q;
    (0..q)
        .map(|r| {
            let s: f64 = ops
                .iter()
                .filter_map(|op| op.apply_digit(r))
                .map(|(_, c)| c * c)
                .sum();
            (s - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

fn binomial(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Kraus operators of the bosonic amplitude-damping channel truncated at
/// occupation number `q - 1`:
/// `A_k = Σ_{r=k}^{q-1} sqrt(C(r,k)) sqrt((1-γ)^{r-k} γ^k) |r-k⟩⟨r|`.
pub fn bosonic_kraus(q: u8, gamma: f64) -> Result<Vec<SiteKraus>> {
    if !(2..=MAX_Q).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q}")));
    }
    if !(0.0..1.0).contains(&gamma) || gamma <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} outside (0, 1)"
        )));
    }
    let mut ops = Vec::with_capacity(q as usize);
    for k in 0..q as u32 {
        let mut map = vec![None; q as usize];
        for r in k..q as u32 {
            let c = binomial(r, k).sqrt()
                * ((1.0 - gamma).powi((r - k) as i32) * gamma.powi(k as i32)).sqrt();
            map[r as usize] = Some(((r - k) as u8, c));
        }
        ops.push(SiteKraus::new(format!("A{k}"), q, map, k));
    }
    Ok(ops)
}

/// Coefficients `c_ij` for the cascade channel rates `γ_ij = c_ij τ^(j-i)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CascadeCoefficient {
    /// Upper level `j` of the transition `j -> i`.
    pub from: u8,
    /// Lower level `i`.
    pub to: u8,
    pub c: f64,
}

fn cascade_rate(coeffs: &[CascadeCoefficient], i: u8, j: u8) -> f64 {
    coeffs
        .iter()
        .find(|cc| cc.to == i && cc.from == j)
        .map_or(1.0, |cc| cc.c)
}

/// Kraus operators of the cascade channel: `A_ij = sqrt(c_ij τ^(j-i)) |i⟩⟨j|`
/// for `0 <= i < j <= q-1`, plus the diagonal `A_0` that completes the set.
/// Unlisted coefficients default to 1.
pub fn cascade_kraus(q: u8, coeffs: &[CascadeCoefficient], tau: f64) -> Result<Vec<SiteKraus>> {
    if !(2..=MAX_Q).contains(&q) {
        return Err(Error::InvalidParameter(format!("q = {q}")));
    }
    if tau <= 0.0 {
        return Err(Error::InvalidParameter(format!("tau = {tau}")));
    }
    let mut diag = vec![None; q as usize];
    for j in 0..q {
        let loss: f64 = (0..j)
            .map(|i| cascade_rate(coeffs, i, j) * tau.powi((j - i) as i32))
            .sum();
        if loss > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "level {j} loses probability {loss} > 1 at tau = {tau}"
            )));
        }
        diag[j as usize] = Some((j, (1.0 - loss).sqrt()));
    }
    let mut ops = vec![SiteKraus::new("A0", q, diag, 0)];
    for j in 1..q {
        for i in 0..j {
            let gamma_ij = cascade_rate(coeffs, i, j) * tau.powi((j - i) as i32);
            let mut map = vec![None; q as usize];
            map[j as usize] = Some((i, gamma_ij.sqrt()));
            ops.push(SiteKraus::new(format!("A{i}{j}"), q, map, (j - i) as u32));
        }
    }
    Ok(ops)
}

/// Kraus operators of the qutrit V and Lambda decay patterns.
///
/// V: `A_0 = diag(1, sqrt(1-γ_1), sqrt(1-γ_2))`, `A_1 = sqrt(γ_1)|0⟩⟨1|`,
/// `A_2 = sqrt(γ_2)|0⟩⟨2|` with `γ_i = 1 - exp(-2 k_i τ)`.
///
/// Lambda: `A_0 = diag(1, 1, sqrt(1-γ_1-γ_2))`, `A_1 = sqrt(γ_1)|0⟩⟨2|`,
/// `A_2 = sqrt(γ_2)|1⟩⟨2|` with
/// `γ_1 = k_2/(k_1+k_2) (1 - exp(-2(k_1+k_2)τ))` and
/// `γ_2 = k_1/(k_1+k_2) (1 - exp(-2(k_1+k_2)τ))`.
///
/// Both damping operators are first order in `sqrt(tau)`.
pub fn v_lambda_kraus(pattern: ChannelKind, k1: f64, k2: f64, tau: f64) -> Result<Vec<SiteKraus>> {
    if k1 <= 0.0 || k2 <= 0.0 || tau <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "k1 = {k1}, k2 = {k2}, tau = {tau} must be positive"
        )));
    }
    let q = 3u8;
    match pattern {
        ChannelKind::V => {
            let g1 = 1.0 - (-2.0 * k1 * tau).exp();
            let g2 = 1.0 - (-2.0 * k2 * tau).exp();
            let a0 = vec![
                Some((0, 1.0)),
                Some((1, (1.0 - g1).sqrt())),
                Some((2, (1.0 - g2).sqrt())),
            ];
            Ok(vec![
                SiteKraus::new("A0", q, a0, 0),
                SiteKraus::new("A1", q, vec![None, Some((0, g1.sqrt())), None], 1),
                SiteKraus::new("A2", q, vec![None, None, Some((0, g2.sqrt()))], 1),
            ])
        }
        ChannelKind::Lambda => {
            let total = 1.0 - (-2.0 * (k1 + k2) * tau).exp();
            let g1 = k2 / (k1 + k2) * total;
            let g2 = k1 / (k1 + k2) * total;
            if g1 + g2 > 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "gamma_1 + gamma_2 = {} > 1",
                    g1 + g2
                )));
            }
            let a0 = vec![
                Some((0, 1.0)),
                Some((1, 1.0)),
                Some((2, (1.0 - g1 - g2).sqrt())),
            ];
            Ok(vec![
                SiteKraus::new("A0", q, a0, 0),
                SiteKraus::new("A1", q, vec![None, None, Some((0, g1.sqrt()))], 1),
                SiteKraus::new("A2", q, vec![None, None, Some((1, g2.sqrt()))], 1),
            ])
        }
        other => Err(Error::Unsupported(format!(
            "v_lambda_kraus got {other}, expected v or lambda"
        ))),
    }
}

/// Channel family plus its rate parameters; the grid point supplied at
/// build time is `γ` for the bosonic channel and `τ` otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    Bosonic {
        q: u8,
    },
    Cascade {
        q: u8,
        #[serde(default)]
        coefficients: Vec<CascadeCoefficient>,
    },
    V {
        k1: f64,
        k2: f64,
    },
    Lambda {
        k1: f64,
        k2: f64,
    },
}

impl ChannelSpec {
    pub fn q(&self) -> u8 {
        match self {
            ChannelSpec::Bosonic { q } | ChannelSpec::Cascade { q, .. } => *q,
            ChannelSpec::V { .. } | ChannelSpec::Lambda { .. } => 3,
        }
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            ChannelSpec::Bosonic { .. } => ChannelKind::Bosonic,
            ChannelSpec::Cascade { .. } => ChannelKind::Cascade,
            ChannelSpec::V { .. } => ChannelKind::V,
            ChannelSpec::Lambda { .. } => ChannelKind::Lambda,
        }
    }

    /// Builds the single-site Kraus set at the given grid point.
    pub fn site_kraus(&self, point: f64) -> Result<Vec<SiteKraus>> {
        match self {
            ChannelSpec::Bosonic { q } => bosonic_kraus(*q, point),
            ChannelSpec::Cascade { q, coefficients } => cascade_kraus(*q, coefficients, point),
            ChannelSpec::V { k1, k2 } => v_lambda_kraus(ChannelKind::V, *k1, *k2, point),
            ChannelSpec::Lambda { k1, k2 } => v_lambda_kraus(ChannelKind::Lambda, *k1, *k2, point),
        }
    }
}

/// Tensor product of single-site Kraus operators, stored as indices into
/// the ensemble's site-operator basis.
#[derive(Clone, Debug)]
pub struct ErrorOp {
    pub site_indices: Vec<u8>,
    pub damping_weight: u32,
}

impl ErrorOp {
    pub fn order_in_tau(&self) -> f64 {
        self.damping_weight as f64 / 2.0
    }
}

/// All tensor-product error operators of a channel on `n` sites up to a
/// damping-weight cutoff, in lexicographic order of site indices.
#[derive(Clone, Debug)]
pub struct ErrorEnsemble {
    pub q: u8,
    pub n: usize,
    pub site_ops: Vec<SiteKraus>,
    pub ops: Vec<ErrorOp>,
}

impl ErrorEnsemble {
    /// Applies `op` to a basis string; `None` when annihilated.
    pub fn apply_to_string(&self, op: &ErrorOp, s: &QuditString) -> Option<(QuditString, f64)> {
        let mut coeff = 1.0;
        let mut digits = Vec::with_capacity(s.len());
        for (i, &d) in s.digits().iter().enumerate() {
            let (out, c) = self.site_ops[op.site_indices[i] as usize].apply_digit(d)?;
            digits.push(out);
            coeff *= c;
        }
        Some((
            QuditString::new(self.q, digits).expect("output digits stay in range"),
            coeff,
        ))
    }

    /// Applies `op` to a sparse state; the output has at most as many terms.
    pub fn apply(&self, op: &ErrorOp, state: &SparseState) -> Result<SparseState> {
        if state.q() != self.q || state.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "state (q={}, n={}) vs ensemble (q={}, n={})",
                state.q(),
                state.n(),
                self.q,
                self.n
            )));
        }
        let terms = state.terms().filter_map(|(s, amp)| {
            self.apply_to_string(op, s)
                .map(|(out, c)| (out, amp * Complex64::new(c, 0.0)))
        });
        SparseState::from_terms(self.q, self.n, terms.collect::<Vec<_>>())
    }

    /// Label such as `A0⊗A1⊗A0`.
    pub fn label(&self, op: &ErrorOp) -> String {
        op.site_indices
            .iter()
            .map(|&i| self.site_ops[i as usize].label.clone())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

/// Number of `n`-site products with total damping weight at most
/// `max_damping`, by dynamic programming over sites.
pub fn count_error_ops(site_weights: &[u32], n: usize, max_damping: u32) -> u128 {
    let cap = max_damping as usize;
    let mut counts = vec![0u128; cap + 1];
    counts[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; cap + 1];
        for (w, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &sw in site_weights {
                let t = w + sw as usize;
                if t <= cap {
                    next[t] += c;
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

/// Enumerates all `n`-site error operators with total damping weight at
/// most `max_damping`, erroring when the count would exceed `cap`.
pub fn enumerate_error_ops(
    spec: &ChannelSpec,
    n: usize,
    max_damping: u32,
    cap: usize,
    point: f64,
) -> Result<ErrorEnsemble> {
    let site_ops = spec.site_kraus(point)?;
    let weights: Vec<u32> = site_ops.iter().map(|o| o.damping_weight).collect();
    let total = count_error_ops(&weights, n, max_damping);
    if total > cap as u128 {
        return Err(Error::ResourceCap(format!(
            "{total} error operators exceed the cap of {cap}"
        )));
    }
    let mut ops = Vec::with_capacity(total as usize);
    let mut prefix = Vec::with_capacity(n);
    enumerate_rec(&weights, n, max_damping, &mut prefix, 0, &mut ops);
    Ok(ErrorEnsemble {
        q: spec.q(),
        n,
        site_ops,
        ops,
    })
}

fn enumerate_rec(
    weights: &[u32],
    n: usize,
    max_damping: u32,
    prefix: &mut Vec<u8>,
    weight: u32,
    out: &mut Vec<ErrorOp>,
) {
    if prefix.len() == n {
        out.push(ErrorOp {
            site_indices: prefix.clone(),
            damping_weight: weight,
        });
        return;
    }
    for (idx, &w) in weights.iter().enumerate() {
        if weight + w <= max_damping {
            prefix.push(idx as u8);
            enumerate_rec(weights, n, max_damping, prefix, weight + w, out);
            prefix.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bosonic_q2_matches_qubit_channel() {
        let g = 0.3;
        let ops = bosonic_kraus(2, g).unwrap();
        assert_eq!(ops.len(), 2);
        assert_eq!(ops[0].apply_digit(0), Some((0, 1.0)));
        let (d, c) = ops[0].apply_digit(1).unwrap();
        assert_eq!(d, 1);
        assert!((c - (1.0 - g).sqrt()).abs() < 1e-15);
        let (d, c) = ops[1].apply_digit(1).unwrap();
        assert_eq!(d, 0);
        assert!((c - g.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bosonic_q3_entries() {
        let g = 0.17;
        let ops = bosonic_kraus(3, g).unwrap();
        // A1 = sqrt(g)|0><1| + sqrt(2 g (1-g))|1><2|
        let (d, c) = ops[1].apply_digit(1).unwrap();
        assert_eq!(d, 0);
        assert!((c - g.sqrt()).abs() < 1e-15);
        let (d, c) = ops[1].apply_digit(2).unwrap();
        assert_eq!(d, 1);
        assert!((c - (2.0 * g * (1.0 - g)).sqrt()).abs() < 1e-15);
        // A2 = g |0><2|
        let (d, c) = ops[2].apply_digit(2).unwrap();
        assert_eq!(d, 0);
        assert!((c - g).abs() < 1e-15);
        assert_eq!(ops[2].apply_digit(1), None);
    }

    #[test]
    fn completeness_at_various_parameters() {
        assert!(completeness_deviation(&bosonic_kraus(5, 0.01).unwrap()) < 1e-12);
        assert!(completeness_deviation(&cascade_kraus(4, &[], 1e-3).unwrap()) < 1e-12);
        assert!(
            completeness_deviation(&v_lambda_kraus(ChannelKind::Lambda, 1.0, 2.0, 1e-2).unwrap())
                < 1e-12
        );
        assert!(
            completeness_deviation(&v_lambda_kraus(ChannelKind::V, 1.0, 1.0, 1e-2).unwrap())
                < 1e-12
        );
    }

    #[test]
    fn cascade_q3_rates() {
        let (k1, k2) = (0.7, 1.3);
        let coeffs = vec![
            CascadeCoefficient { to: 0, from: 1, c: 2.0 * k2 },
            CascadeCoefficient { to: 1, from: 2, c: 2.0 * k1 },
            CascadeCoefficient { to: 0, from: 2, c: 2.0 * k1 * k2 },
        ];
        let tau = 1e-3;
        let ops = cascade_kraus(3, &coeffs, tau).unwrap();
        let a01 = ops.iter().find(|o| o.label == "A01").unwrap();
        let (_, c) = a01.apply_digit(1).unwrap();
        assert!((c * c - 2.0 * k2 * tau).abs() < 1e-15);
        let a02 = ops.iter().find(|o| o.label == "A02").unwrap();
        let (_, c) = a02.apply_digit(2).unwrap();
        assert!((c * c - 2.0 * k1 * k2 * tau * tau).abs() < 1e-18);
        let a12 = ops.iter().find(|o| o.label == "A12").unwrap();
        assert_eq!(a12.damping_weight, 1);
        assert_eq!(a02.damping_weight, 2);
    }

    #[test]
    fn cascade_q2_reduces_to_bosonic() {
        let tau = 1e-3;
        let casc = cascade_kraus(2, &[], tau).unwrap();
        let bos = bosonic_kraus(2, tau).unwrap();
        for r in 0..2 {
            let a = casc[0].apply_digit(r).unwrap();
            let b = bos[0].apply_digit(r).unwrap();
            assert!((a.1 - b.1).abs() < 1e-15);
        }
        let a = casc[1].apply_digit(1).unwrap();
        let b = bos[1].apply_digit(1).unwrap();
        assert_eq!(a.0, b.0);
        assert!((a.1 - b.1).abs() < 1e-15);
    }

    #[test]
    fn v_rates_first_order() {
        // gamma = 1 - exp(-2 k tau) = 2 k tau + O(tau^2)
        let tau = 1e-6;
        let ops = v_lambda_kraus(ChannelKind::V, 1.0, 1.0, tau).unwrap();
        let (_, c) = ops[1].apply_digit(1).unwrap();
        assert!((c * c - 2.0 * tau).abs() < 3.0 * tau * tau);
    }

    #[test]
    fn lambda_vanishes_at_small_tau() {
        let ops = v_lambda_kraus(ChannelKind::Lambda, 1.0, 2.0, 1e-12).unwrap();
        let (_, c0) = ops[0].apply_digit(2).unwrap();
        assert!((c0 - 1.0).abs() < 1e-10);
        let (_, c1) = ops[1].apply_digit(2).unwrap();
        assert!(c1 < 1e-5);
    }

    #[test]
    fn enumeration_counts() {
        // n=2, q=3, bosonic, max damping 1: A0⊗A0, A1⊗A0, A0⊗A1
        let spec = ChannelSpec::Bosonic { q: 3 };
        let ens = enumerate_error_ops(&spec, 2, 1, 1 << 20, 1e-3).unwrap();
        assert_eq!(ens.ops.len(), 3);

        // Lambda on two sites, max damping 1: identity plus one damping op per site
        let spec = ChannelSpec::Lambda { k1: 1.0, k2: 2.0 };
        let ens = enumerate_error_ops(&spec, 2, 1, 1 << 20, 1e-3).unwrap();
        assert_eq!(ens.ops.len(), 5);
    }

    #[test]
    fn enumeration_matches_dp_count() {
        let spec = ChannelSpec::Bosonic { q: 3 };
        let ens = enumerate_error_ops(&spec, 10, 6, 1 << 24, 1e-3).unwrap();
        // independent count: number of digit vectors with bounded sum
        let mut expected = 0u128;
        fn rec(n: usize, left: i64, expected: &mut u128) {
            if n == 0 {
                *expected += 1;
                return;
            }
            for k in 0..3i64 {
                if k <= left {
                    rec(n - 1, left - k, expected);
                }
            }
        }
        rec(10, 6, &mut expected);
        assert_eq!(ens.ops.len() as u128, expected);
        assert_eq!(
            count_error_ops(&[0, 1, 2], 10, 6),
            expected,
        );
    }

    #[test]
    fn cap_is_enforced() {
        let spec = ChannelSpec::Bosonic { q: 3 };
        let err = enumerate_error_ops(&spec, 10, 6, 10, 1e-3);
        assert!(matches!(err, Err(Error::ResourceCap(_))));
    }

    #[test]
    fn product_order_scales_with_tau() {
        // fitted log-log slope of the max coefficient against tau matches
        // the declared order within 0.1
        let spec = ChannelSpec::Bosonic { q: 4 };
        let grid = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4];
        let ens0 = enumerate_error_ops(&spec, 3, 4, 1 << 20, grid[0]).unwrap();
        for (opi, op) in ens0.ops.iter().enumerate() {
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for &g in &grid {
                let ens = enumerate_error_ops(&spec, 3, 4, 1 << 20, g).unwrap();
                let coeff: f64 = ens.ops[opi]
                    .site_indices
                    .iter()
                    .map(|&i| ens.site_ops[i as usize].max_coeff())
                    .product();
                xs.push(g.ln());
                ys.push(coeff.ln());
            }
            let xm = xs.iter().sum::<f64>() / xs.len() as f64;
            let ym = ys.iter().sum::<f64>() / ys.len() as f64;
            let slope = xs
                .iter()
                .zip(&ys)
                .map(|(x, y)| (x - xm) * (y - ym))
                .sum::<f64>()
                / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
            let expected = op.order_in_tau();
            if expected == 0.0 {
                assert!(slope.abs() < 0.1 || slope.is_nan());
            } else {
                assert!(
                    (slope - expected).abs() < 0.1,
                    "op {} slope {} vs order {}",
                    ens0.label(op),
                    slope,
                    expected
                );
            }
        }
    }

}
