//! Single-link entanglement algebra.
//!
//! Schmidt coefficients are stored as probabilities (squared amplitudes), so a
//! two-qubit pure state is the pair `(lambda1, lambda2)` with
//! `lambda1 + lambda2 = 1` and `lambda1 >= lambda2`. Amplitudes only appear
//! inside [`procrustean_oracle`], which builds the explicit state vector.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for exact-algebra identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance on normalisation of user supplied coefficients.
pub const INPUT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("Schmidt coefficients must be non-negative, got {0}")]
    Negative(f64),
    #[error("Schmidt coefficients must sum to 1, got {0}")]
    NotNormalized(f64),
    #[error("Schmidt coefficients must be sorted in non-increasing order")]
    Unsorted,
    #[error("empty Schmidt vector")]
    Empty,
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("unentangled input: lambda2 = 0, there is nothing to concentrate")]
    UnentangledInput,
}

/// Singlet conversion probability of a link, always in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Scp(f64);

impl Scp {
    pub const ZERO: Scp = Scp(0.0);
    pub const ONE: Scp = Scp(1.0);

    pub fn new(p: f64) -> Result<Self, StateError> {
        if (0.0..=1.0).contains(&p) {
            Ok(Scp(p))
        } else {
            Err(StateError::ProbabilityOutOfRange(p))
        }
    }

    /// Clamps into `[0, 1]`; NaN maps to 0.
    pub fn clamped(p: f64) -> Self {
        Scp(clamp01(p))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

#[inline]
pub(crate) fn clamp01(p: f64) -> f64 {
    if p.is_nan() {
        0.0
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// A two-qubit pure state given by its Schmidt probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitPairState {
    lambda1: f64,
    lambda2: f64,
}

impl QubitPairState {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self, StateError> {
        for l in [lambda1, lambda2] {
            if l.is_nan() || l < 0.0 {
                return Err(StateError::Negative(l));
            }
        }
        let sum = lambda1 + lambda2;
        if (sum - 1.0).abs() > INPUT_TOL {
            return Err(StateError::NotNormalized(sum));
        }
        if lambda2 > lambda1 {
            return Err(StateError::Unsorted);
        }
        Ok(Self {
            lambda1: lambda1 / sum,
            lambda2: lambda2 / sum,
        })
    }

    /// State with smaller Schmidt coefficient `lambda2 in [0, 1/2]`.
    pub fn from_lambda2(lambda2: f64) -> Result<Self, StateError> {
        Self::new(1.0 - lambda2, lambda2)
    }

    /// The state whose SCP is `p`, i.e. `lambda2 = p / 2`.
    pub fn from_scp(p: Scp) -> Self {
        let lambda2 = p.value() / 2.0;
        Self {
            lambda1: 1.0 - lambda2,
            lambda2,
        }
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }

    pub fn schmidt(&self) -> SchmidtVector {
        SchmidtVector(vec![self.lambda1, self.lambda2])
    }
}

/// Schmidt probabilities of a bipartite pure state, non-increasing and
/// summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtVector(Vec<f64>);

impl SchmidtVector {
    pub fn new(coefficients: Vec<f64>) -> Result<Self, StateError> {
        if coefficients.is_empty() {
            return Err(StateError::Empty);
        }
        if let Some(&bad) = coefficients.iter().find(|c| c.is_nan() || **c < 0.0) {
            return Err(StateError::Negative(bad));
        }
        if coefficients.windows(2).any(|w| w[1] > w[0]) {
            return Err(StateError::Unsorted);
        }
        let sum: f64 = coefficients.iter().sum();
        if (sum - 1.0).abs() > INPUT_TOL {
            return Err(StateError::NotNormalized(sum));
        }
        Ok(Self(coefficients.into_iter().map(|c| c / sum).collect()))
    }

    /// Sorts and normalises arbitrary non-negative weights.
    pub fn from_weights(mut weights: Vec<f64>) -> Result<Self, StateError> {
        if weights.is_empty() {
            return Err(StateError::Empty);
        }
        if let Some(&bad) = weights.iter().find(|c| c.is_nan() || **c < 0.0) {
            return Err(StateError::Negative(bad));
        }
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(StateError::NotNormalized(sum));
        }
        weights.sort_by(|a, b| b.total_cmp(a));
        Ok(Self(weights.into_iter().map(|c| c / sum).collect()))
    }

    /// The `d`-level maximally entangled state.
    pub fn maximally_entangled(d: usize) -> Self {
        assert!(d > 0);
        Self(vec![1.0 / d as f64; d])
    }

    /// Schmidt vector of the tensor product of two states.
    pub fn tensor(&self, other: &SchmidtVector) -> SchmidtVector {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a * b);
            }
        }
        out.sort_by(|a, b| b.total_cmp(a));
        SchmidtVector(out)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn padded(&self, len: usize) -> Vec<f64> {
        let mut v = self.0.clone();
        v.resize(len, 0.0);
        v
    }
}

/// `min{1, 2 lambda2}`.
pub fn scp(state: &QubitPairState) -> Scp {
    Scp::clamped(2.0 * state.lambda2)
}

/// Optimal probability of converting `source` into `target` by SLOCC:
/// the minimum over `k` of the ratio of tail sums from `k` onward. Terms with
/// a vanishing target tail are skipped; shorter vectors are zero padded.
pub fn vidal_probability(source: &SchmidtVector, target: &SchmidtVector) -> f64 {
    let d = source.len().max(target.len());
    let src = source.padded(d);
    let tgt = target.padded(d);
    let mut src_tail = 0.0;
    let mut tgt_tail = 0.0;
    let mut best = f64::INFINITY;
    for k in (0..d).rev() {
        src_tail += src[k];
        tgt_tail += tgt[k];
        if tgt_tail > 0.0 {
            best = best.min(src_tail / tgt_tail);
        }
    }
    clamp01(best)
}

/// True when `psi` is majorized by `phi`, i.e. `psi` can be turned into `phi`
/// deterministically by LOCC.
pub fn majorizes(phi: &SchmidtVector, psi: &SchmidtVector) -> bool {
    let d = phi.len().max(psi.len());
    let phi = phi.padded(d);
    let psi = psi.padded(d);
    let mut acc_phi = 0.0;
    let mut acc_psi = 0.0;
    for k in 0..d {
        acc_phi += phi[k];
        acc_psi += psi[k];
        if acc_psi > acc_phi + EXACT_TOL {
            return false;
        }
    }
    true
}

/// Result of applying the two-outcome Procrustean measurement to
/// `sqrt(l1)|00> + sqrt(l2)|11>`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcrusteanOutcome {
    /// Max-norm of `M1^T M1 + M2^T M2 - 1`.
    pub completeness_residual: f64,
    pub p_success: f64,
    pub p_failure: f64,
    pub success_state: SchmidtVector,
    /// Vacuously true when the failure outcome never occurs.
    pub failure_is_product: bool,
    pub m1: [[f64; 2]; 2],
    pub m2: [[f64; 2]; 2],
}

type Mat2 = [[f64; 2]; 2];

fn mat_t_mat(m: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = m[0][i] * m[0][j] + m[1][i] * m[1][j];
        }
    }
    out
}

/// `(M ⊗ 1)` acting on a two-qubit amplitude vector in the basis
/// `|00>, |01>, |10>, |11>` (first factor on Alice).
fn apply_local(m: &Mat2, psi: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for a_out in 0..2 {
        for a_in in 0..2 {
            for b in 0..2 {
                out[2 * a_out + b] += m[a_out][a_in] * psi[2 * a_in + b];
            }
        }
    }
    out
}

/// Schmidt probabilities of a normalised two-qubit vector: eigenvalues of
/// `C C^T` where `C` is the 2x2 coefficient matrix.
fn two_qubit_schmidt(psi: &[f64; 4]) -> [f64; 2] {
    let c = [[psi[0], psi[1]], [psi[2], psi[3]]];
    let g00 = c[0][0] * c[0][0] + c[0][1] * c[0][1];
    let g11 = c[1][0] * c[1][0] + c[1][1] * c[1][1];
    let g01 = c[0][0] * c[1][0] + c[0][1] * c[1][1];
    let half_tr = 0.5 * (g00 + g11);
    let det = g00 * g11 - g01 * g01;
    let disc = (half_tr * half_tr - det).max(0.0).sqrt();
    [half_tr + disc, (half_tr - disc).max(0.0)]
}

pub fn procrustean_oracle(state: &QubitPairState) -> Result<ProcrusteanOutcome, StateError> {
    let (l1, l2) = (state.lambda1, state.lambda2);
    if l2 <= 0.0 {
        return Err(StateError::UnentangledInput);
    }
    let ratio = l2 / l1;
    let m1: Mat2 = [[ratio.sqrt(), 0.0], [0.0, 1.0]];
    let m2: Mat2 = [[(1.0 - ratio).max(0.0).sqrt(), 0.0], [0.0, 0.0]];

    let a = mat_t_mat(&m1);
    let b = mat_t_mat(&m2);
    let mut residual: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let id = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((a[i][j] + b[i][j] - id).abs());
        }
    }

    let psi = [l1.sqrt(), 0.0, 0.0, l2.sqrt()];
    let out1 = apply_local(&m1, &psi);
    let out2 = apply_local(&m2, &psi);
    let p1: f64 = out1.iter().map(|x| x * x).sum();
    let p2: f64 = out2.iter().map(|x| x * x).sum();

    let normalise = |v: [f64; 4], p: f64| v.map(|x| x / p.sqrt());
    let s1 = two_qubit_schmidt(&normalise(out1, p1));
    let failure_is_product = if p2 > 0.0 {
        two_qubit_schmidt(&normalise(out2, p2))[1] < EXACT_TOL
    } else {
        true
    };

    Ok(ProcrusteanOutcome {
        completeness_residual: residual,
        p_success: p1,
        p_failure: p2,
        success_state: SchmidtVector(s1.to_vec()),
        failure_is_product,
        m1,
        m2,
    })
}

/// SCP after entanglement swapping two links: `min{p_alpha, p_beta}`.
pub fn swap_scp(p_alpha: Scp, p_beta: Scp) -> Scp {
    if p_alpha <= p_beta {
        p_alpha
    } else {
        p_beta
    }
}

/// Optimal single-singlet distillation from `copies` identical links:
/// `min{1, 2 (1 - lambda1^copies)}` with `lambda1 = 1 - p/2`. Zero copies
/// give 0.
pub fn distill_equal(p: Scp, copies: u32) -> Scp {
    let lambda1 = 1.0 - p.value() / 2.0;
    Scp::clamped(2.0 * (1.0 - lambda1.powi(copies as i32)))
}

/// Optimal distillation of two links with different SCPs:
/// `min{1, p1 + p2 - p1 p2 / 2}`.
pub fn distill_independent(p1: Scp, p2: Scp) -> Scp {
    let (a, b) = (p1.value(), p2.value());
    Scp::clamped(a + b - a * b / 2.0)
}

/// Optimal distillation of any number of links:
/// `min{1, 2 (1 - prod lambda1_i)}`.
pub fn distill_many(ps: &[Scp]) -> Scp {
    Scp::clamped(distill_many_raw(ps.iter().map(|p| p.value())))
}

#[inline]
pub(crate) fn distill_many_raw(ps: impl Iterator<Item = f64>) -> f64 {
    let prod: f64 = ps.map(|p| 1.0 - p / 2.0).product();
    clamp01(2.0 * (1.0 - prod))
}

/// Converting each link on its own and keeping any success:
/// `1 - (1 - p1)(1 - p2)`.
pub fn separate_conversion(p1: Scp, p2: Scp) -> Scp {
    Scp::clamped(1.0 - (1.0 - p1.value()) * (1.0 - p2.value()))
}

/// Per-bond SCP needed on a double-bond lattice whose single-bond threshold
/// is `p_c`: `2 - sqrt(4 - 2 p_c)`.
pub fn double_bond_cep_threshold(p_c: f64) -> Result<f64, StateError> {
    if !(0.0..=1.0).contains(&p_c) {
        return Err(StateError::ProbabilityOutOfRange(p_c));
    }
    Ok(clamp01(2.0 - (4.0 - 2.0 * p_c).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(v: &[f64]) -> SchmidtVector {
        SchmidtVector::new(v.to_vec()).unwrap()
    }

    fn p(x: f64) -> Scp {
        Scp::new(x).unwrap()
    }

    #[test]
    fn scp_examples() {
        assert_eq!(scp(&QubitPairState::new(0.5, 0.5).unwrap()).value(), 1.0);
        assert_eq!(scp(&QubitPairState::new(1.0, 0.0).unwrap()).value(), 0.0);
        assert_eq!(scp(&QubitPairState::new(0.875, 0.125).unwrap()).value(), 0.25);
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert_eq!(QubitPairState::new(0.4, 0.6), Err(StateError::Unsorted));
        assert!(matches!(
            QubitPairState::new(0.7, 0.2),
            Err(StateError::NotNormalized(_))
        ));
        assert!(matches!(QubitPairState::new(1.1, -0.1), Err(StateError::Negative(_))));
        assert!(SchmidtVector::new(vec![0.3, 0.7]).is_err());
        assert!(SchmidtVector::new(vec![]).is_err());
    }

    #[test]
    fn vidal_examples() {
        let v = vidal_probability(&sv(&[0.8, 0.2]), &sv(&[0.5, 0.5]));
        assert!((v - 0.4).abs() < EXACT_TOL);
        let s = sv(&[0.6, 0.25, 0.15]);
        assert!((vidal_probability(&s, &s) - 1.0).abs() < EXACT_TOL);

        // Tail ratios by hand: 1/1, 0.5/0.4, 0.2/0.1.
        let src = sv(&[0.5, 0.3, 0.2]);
        let tgt = sv(&[0.6, 0.3, 0.1]);
        let by_hand = [1.0f64, 0.5 / 0.4, 0.2 / 0.1]
            .into_iter()
            .fold(f64::INFINITY, f64::min)
            .min(1.0);
        assert!((vidal_probability(&src, &tgt) - by_hand).abs() < EXACT_TOL);
        // Reverse direction is genuinely stochastic: 0.1/0.2 at k = 3.
        assert!((vidal_probability(&tgt, &src) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn vidal_pads_unequal_lengths() {
        // Schmidt rank cannot grow.
        let v = vidal_probability(&sv(&[0.5, 0.5]), &SchmidtVector::maximally_entangled(3));
        assert_eq!(v, 0.0);
        let v = vidal_probability(&SchmidtVector::maximally_entangled(3), &sv(&[0.5, 0.5]));
        assert!((v - 1.0).abs() < EXACT_TOL);
        let v = vidal_probability(&sv(&[0.6, 0.3, 0.1]), &sv(&[0.5, 0.5]));
        assert!((v - 0.8).abs() < EXACT_TOL);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&sv(&[0.8, 0.2]), &sv(&[0.5, 0.5])));
        assert!(!majorizes(&sv(&[0.5, 0.5]), &sv(&[0.8, 0.2])));
        assert!(majorizes(&sv(&[0.6, 0.4]), &sv(&[0.6, 0.4])));
    }

    #[test]
    fn procrustean_examples() {
        let o = procrustean_oracle(&QubitPairState::new(0.8, 0.2).unwrap()).unwrap();
        assert!((o.p_success - 0.4).abs() < EXACT_TOL);
        assert!(o.completeness_residual < EXACT_TOL);
        assert!((o.success_state.coefficients()[0] - 0.5).abs() < 1e-10);
        assert!((o.success_state.coefficients()[1] - 0.5).abs() < 1e-10);
        assert!(o.failure_is_product);

        let o = procrustean_oracle(&QubitPairState::new(0.5, 0.5).unwrap()).unwrap();
        assert!((o.p_success - 1.0).abs() < EXACT_TOL);
        assert_eq!(o.m1, [[1.0, 0.0], [0.0, 1.0]]);

        let o = procrustean_oracle(&QubitPairState::new(0.99, 0.01).unwrap()).unwrap();
        assert!((o.p_success - 0.02).abs() < EXACT_TOL);
        assert!((o.p_failure - 0.98).abs() < EXACT_TOL);
        assert!(o.failure_is_product);
    }

    #[test]
    fn procrustean_rejects_product_input() {
        assert_eq!(
            procrustean_oracle(&QubitPairState::new(1.0, 0.0).unwrap()),
            Err(StateError::UnentangledInput)
        );
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap_scp(p(0.6), p(0.8)), p(0.6));
        assert_eq!(swap_scp(p(1.0), p(1.0)), p(1.0));
        assert_eq!(swap_scp(p(0.347), p(0.5)), p(0.347));
    }

    #[test]
    fn distillation_examples() {
        // 2(1 - 0.8^2) and 2p - p^2/2 at p = 0.4.
        let d = distill_equal(p(0.4), 2).value();
        assert!((d - 2.0 * (1.0 - 0.8f64 * 0.8)).abs() < EXACT_TOL);
        assert!((d - (0.8 - 0.16 / 2.0)).abs() < EXACT_TOL);
        assert!((d - 0.72).abs() < EXACT_TOL);
        for x in [0.0, 0.13, 0.5, 0.99] {
            assert!((distill_equal(p(x), 1).value() - x).abs() < EXACT_TOL);
        }
        for n in 1..6 {
            assert_eq!(distill_equal(p(1.0), n).value(), 1.0);
        }

        // 2(1 - 0.8 * 0.7).
        let d = distill_independent(p(0.4), p(0.6)).value();
        assert!((d - 2.0 * (1.0 - 0.8 * 0.7)).abs() < EXACT_TOL);
        assert!((d - 0.88).abs() < EXACT_TOL);
        assert!((distill_independent(p(0.0), p(0.37)).value() - 0.37).abs() < EXACT_TOL);
        assert_eq!(distill_independent(p(1.0), p(0.3)).value(), 1.0);

        assert!((separate_conversion(p(0.4), p(0.4)).value() - 0.64).abs() < EXACT_TOL);
        assert_eq!(separate_conversion(p(0.0), p(0.0)).value(), 0.0);
        assert_eq!(separate_conversion(p(1.0), p(0.2)).value(), 1.0);
    }

    #[test]
    fn distill_formulas_agree_with_vidal_on_tensor_products() {
        let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
        for &a in &grid {
            for &b in &grid {
                let sa = QubitPairState::from_scp(p(a)).schmidt();
                let sb = QubitPairState::from_scp(p(b)).schmidt();
                let oracle = vidal_probability(&sa.tensor(&sb), &sv(&[0.5, 0.5]));
                let closed = distill_independent(p(a), p(b)).value();
                assert!((oracle - closed).abs() < 1e-12, "a={a} b={b}");
            }
            let s = QubitPairState::from_scp(p(a)).schmidt();
            let s3 = s.tensor(&s).tensor(&s);
            let oracle = vidal_probability(&s3, &sv(&[0.5, 0.5]));
            assert!((oracle - distill_equal(p(a), 3).value()).abs() < 1e-12);
            assert!((oracle - distill_many(&[p(a), p(a), p(a)]).value()).abs() < 1e-12);
        }
    }

    #[test]
    fn double_bond_threshold_examples() {
        let pc_hex = 1.0 - 2.0 * (std::f64::consts::PI / 18.0).sin();
        let t = double_bond_cep_threshold(pc_hex).unwrap();
        assert!((t - 0.358).abs() < 1e-3);
        assert_eq!(double_bond_cep_threshold(0.0).unwrap(), 0.0);
        assert!((double_bond_cep_threshold(0.5).unwrap() - (2.0 - 3f64.sqrt())).abs() < 1e-12);
        assert!(double_bond_cep_threshold(1.2).is_err());
        assert!(double_bond_cep_threshold(-0.1).is_err());
        // Inverting the 2-state distillation formula recovers p_c.
        assert!((distill_equal(p(t), 2).value() - pc_hex).abs() < 1e-12);
    }

    fn schmidt_strategy() -> impl Strategy<Value = SchmidtVector> {
        prop::collection::vec(0.0f64..1.0, 1..=4)
            .prop_filter_map("zero weight", |w| SchmidtVector::from_weights(w).ok())
    }

    proptest! {
        #[test]
        fn scp_matches_vidal_against_singlet(l2 in 0.0f64..=0.5) {
            let s = QubitPairState::from_lambda2(l2).unwrap();
            let v = vidal_probability(&s.schmidt(), &sv(&[0.5, 0.5]));
            prop_assert!((scp(&s).value() - v).abs() < EXACT_TOL);
        }

        #[test]
        fn majorization_implies_certain_conversion(phi in schmidt_strategy(), psi in schmidt_strategy()) {
            if majorizes(&phi, &psi) {
                prop_assert!((vidal_probability(&psi, &phi) - 1.0).abs() < EXACT_TOL);
            }
        }

        #[test]
        fn distillation_dominates_trivial_strategies(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let d = distill_independent(p(a), p(b)).value();
            prop_assert!(d + EXACT_TOL >= a.max(b));
            prop_assert!(d + EXACT_TOL >= separate_conversion(p(a), p(b)).value());
            prop_assert!((distill_independent(p(a), p(b)).value() - distill_independent(p(b), p(a)).value()).abs() < EXACT_TOL);
        }

        #[test]
        fn swap_never_improves(a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
            let s = swap_scp(p(a), p(b)).value();
            prop_assert_eq!(s, a.min(b));
        }

        #[test]
        fn distill_equal_is_monotone_in_copies(a in 0.001f64..=1.0) {
            let mut prev = 0.0;
            for n in 1..=400 {
                let d = distill_equal(p(a), n).value();
                prop_assert!(d + EXACT_TOL >= prev);
                prev = d;
            }
            prop_assert!(distill_equal(p(a), 50_000).value() > 1.0 - 1e-6);
        }

        #[test]
        fn procrustean_contract(l2 in 1e-6f64..=0.5) {
            let s = QubitPairState::from_lambda2(l2).unwrap();
            let o = procrustean_oracle(&s).unwrap();
            prop_assert!(o.completeness_residual < EXACT_TOL);
            prop_assert!((o.p_success + o.p_failure - 1.0).abs() < EXACT_TOL);
            prop_assert!((o.p_success - scp(&s).value()).abs() < EXACT_TOL);
            prop_assert!(o.failure_is_product);
        }
    }
}
