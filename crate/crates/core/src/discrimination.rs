//! State discrimination: minimum error, unambiguous, pretty-good measurement,
//! and the quantum Chernoff exponent.

use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::tensor::{
    eig_hermitian, eig_of_matrix, ensure_density, r, trace_norm, CMatrix, CVector,
    DenseOperator, PureState, RANK_TOL, STRUCT_TOL,
};

/// States with prior probabilities.
#[derive(Clone, Debug, Serialize)]
pub struct Ensemble {
    states: Vec<DenseOperator>,
    priors: Vec<f64>,
}

impl Ensemble {
    pub fn new(states: Vec<DenseOperator>, priors: Vec<f64>) -> Result<Self> {
        if states.is_empty() || states.len() != priors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} states with {} priors",
                states.len(),
                priors.len()
            )));
        }
        if let Some(&p) = priors.iter().find(|&&p| !(p >= 0.0)) {
            return Err(param("prior", p, "priors must be nonnegative"));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(param("sum of priors", total, "priors must sum to 1"));
        }
        let dims = states[0].dims().to_vec();
        for s in &states {
            if s.dims() != dims.as_slice() {
                return Err(Error::DimensionMismatch("states differ in dims".into()));
            }
            ensure_density(s)?;
        }
        Ok(Self { states, priors })
    }

    pub fn equiprobable(states: Vec<DenseOperator>) -> Result<Self> {
        let n = states.len();
        Self::new(states, vec![1.0 / n as f64; n])
    }

    pub fn from_pure(states: &[PureState], priors: Vec<f64>) -> Result<Self> {
        Self::new(states.iter().map(PureState::projector).collect(), priors)
    }

    pub fn states(&self) -> &[DenseOperator] {
        &self.states
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        self.states[0].dims()
    }

    /// `Σ p_k ρ_k`.
    pub fn average(&self) -> DenseOperator {
        let mut m = DenseOperator::zeros(self.dims());
        for (s, &p) in self.states.iter().zip(&self.priors) {
            m = &m + &s.scale(p);
        }
        m
    }
}

/// Effects `E_k ≥ 0` with `Σ E_k = I`.
#[derive(Clone, Debug, Serialize)]
pub struct Povm {
    effects: Vec<DenseOperator>,
}

impl Povm {
    pub fn new(effects: Vec<DenseOperator>) -> Result<Self> {
        let first = effects
            .first()
            .ok_or_else(|| Error::InvalidPovm("no effects".into()))?;
        let dims = first.dims().to_vec();
        let mut sum = DenseOperator::zeros(&dims);
        for (k, e) in effects.iter().enumerate() {
            if e.dim() != first.dim() {
                return Err(Error::InvalidPovm("effects differ in dimension".into()));
            }
            let min = eig_hermitian(e)
                .map_err(|_| Error::InvalidPovm(format!("effect {k} is not Hermitian")))?
                .min();
            if min < -STRUCT_TOL {
                return Err(Error::InvalidPovm(format!(
                    "effect {k} has negative eigenvalue {min:.3e}"
                )));
            }
            sum = &sum + e;
        }
        let defect = sum.max_abs_diff(&DenseOperator::identity(&dims));
        if defect > STRUCT_TOL {
            return Err(Error::InvalidPovm(format!(
                "effects sum to identity only within {defect:.3e}"
            )));
        }
        Ok(Self { effects })
    }

    pub fn effects(&self) -> &[DenseOperator] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    /// `Tr(E_k ρ)` for every effect.
    pub fn probabilities(&self, rho: &DenseOperator) -> Vec<f64> {
        self.effects.iter().map(|e| rho.expect(e)).collect()
    }
}

/// `Σ_k p_k Tr(E_k ρ_k)` for the first `ensemble.len()` effects.
pub fn success_probability(povm: &Povm, ensemble: &Ensemble) -> f64 {
    ensemble
        .states
        .iter()
        .zip(&ensemble.priors)
        .zip(&povm.effects)
        .map(|((s, &p), e)| p * s.expect(e))
        .sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct HelstromResult {
    /// `½[1 − Tr|η₁ρ₁ − η₂ρ₂|]`.
    pub p_error: f64,
    /// Error probability obtained by applying `measurement` to the ensemble.
    pub p_error_measured: f64,
    /// Projectors onto the nonnegative and negative eigenspaces of `η₁ρ₁ − η₂ρ₂`.
    pub measurement: Povm,
}

/// Minimum-error discrimination of two states.
///
/// Zero eigenvalues of `η₁ρ₁ − η₂ρ₂` go to outcome 1; this does not change the error.
pub fn helstrom(e: &Ensemble) -> Result<HelstromResult> {
    if e.len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "minimum-error discrimination needs 2 states, got {}",
            e.len()
        )));
    }
    let m = &e.states[0].scale(e.priors[0]) - &e.states[1].scale(e.priors[1]);
    let eig = eig_hermitian(&m)?;
    let norm: f64 = eig.eigenvalues.iter().map(|l| l.abs()).sum();
    let p_error = 0.5 * (1.0 - norm);
    let dims = m.dims().to_vec();
    let pi1 = DenseOperator::new(eig.spectral_projector(|l| l >= -RANK_TOL), dims.clone())?;
    let pi2 = &DenseOperator::identity(&dims) - &pi1;
    let p_error_measured =
        e.priors[0] * e.states[0].expect(&pi2) + e.priors[1] * e.states[1].expect(&pi1);
    Ok(HelstromResult {
        p_error,
        p_error_measured,
        measurement: Povm::new(vec![pi1, pi2])?,
    })
}

/// `½ Tr|ρ − σ|`.
pub fn trace_distance(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(0.5 * trace_norm(&(rho - sigma))?)
}

#[derive(Clone, Debug, Serialize)]
pub struct UsdTwoPure {
    pub alpha: f64,
    /// `cos α|H⟩ ± sin α|V⟩`.
    pub states: [PureState; 2],
    /// Measurement operators `A₊`, `A₋` mapping onto the output modes `|±⟩`.
    pub kraus: [DenseOperator; 2],
    /// Effects `A₊†A₊`, `A₋†A₋` and the inconclusive remainder.
    pub povm: Povm,
    pub p_success: f64,
    /// Largest probability of a wrong conclusive outcome.
    pub misidentification: f64,
}

/// Unambiguous discrimination of `cos α|H⟩ ± sin α|V⟩` with equal priors.
pub fn usd_two_pure(alpha: f64) -> Result<UsdTwoPure> {
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_4) {
        return Err(param("alpha", alpha, "need 0 < alpha < pi/4"));
    }
    let (ca, sa) = (alpha.cos(), alpha.sin());
    let vec2 = |a: f64, b: f64| CVector::from_vec(vec![r(a), r(b)]);
    let psi_p = PureState::new(vec2(ca, sa), vec![2])?;
    let psi_m = PureState::new(vec2(ca, -sa), vec![2])?;
    // ψ±⊥ = sin α|H⟩ ∓ cos α|V⟩
    let perp_p = vec2(sa, -ca);
    let perp_m = vec2(sa, ca);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let out_p = vec2(h, h);
    let out_m = vec2(h, -h);
    let eta = 1.0 / (std::f64::consts::SQRT_2 * ca);
    let a_p = DenseOperator::new(&out_p * perp_m.adjoint() * r(eta), vec![2])?;
    let a_m = DenseOperator::new(&out_m * perp_p.adjoint() * r(eta), vec![2])?;
    let e_p = a_p.dagger() * a_p.clone();
    let e_m = a_m.dagger() * a_m.clone();
    let inconclusive = &DenseOperator::identity(&[2]) - &(&e_p + &e_m);
    let povm = Povm::new(vec![e_p.clone(), e_m.clone(), inconclusive])?;
    let rp = psi_p.projector();
    let rm = psi_m.projector();
    let p_success = 0.5 * (rp.expect(&e_p) + rm.expect(&e_m));
    let misidentification = rp.expect(&e_m).max(rm.expect(&e_p));
    Ok(UsdTwoPure {
        alpha,
        states: [psi_p, psi_m],
        kraus: [a_p, a_m],
        povm,
        p_success,
        misidentification,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UsdMeasurement {
    /// Conclusive effects in input order, then the inconclusive effect when nonzero.
    pub povm: Povm,
    pub has_inconclusive: bool,
    /// Largest eigenvalue of `Σ P_k`.
    pub lambda: f64,
    /// `Tr(E_k |ψ_k⟩⟨ψ_k|)` per state.
    pub success: Vec<f64>,
    /// Average success for equal priors.
    pub average_success: f64,
    /// `1 − |⟨ψ₁|ψ₂⟩|` for two states; no closed-form optimum is known otherwise.
    pub known_optimum: Option<f64>,
    /// Whether `average_success` reaches `known_optimum` within 1e-9.
    pub optimal: Option<bool>,
}

/// USD of linearly independent pure states via reciprocal vectors.
pub fn usd_linear_independent(states: &[PureState]) -> Result<UsdMeasurement> {
    let n = states.len();
    let first = states
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no states".into()))?;
    let d = first.dim();
    if states.iter().any(|s| s.dim() != d) {
        return Err(Error::DimensionMismatch("states differ in dimension".into()));
    }
    if n > d {
        return Err(Error::TooManyStates { states: n, dim: d });
    }
    let psi = CMatrix::from_fn(d, n, |i, k| states[k].amplitudes()[i]);
    let gram = psi.adjoint() * &psi;
    let geig = eig_of_matrix(&gram);
    let condition = if geig.min() > 0.0 {
        geig.max() / geig.min()
    } else {
        f64::INFINITY
    };
    if condition > 1e8 {
        return Err(Error::LinearlyDependent { condition });
    }
    let gram_inv = geig.map_spectrum(|l| 1.0 / l);
    let dual = &psi * gram_inv;
    let dims = first.dims().to_vec();
    let projectors: Vec<DenseOperator> = (0..n)
        .map(|k| {
            let phi = PureState::normalized(dual.column(k).into_owned(), dims.clone())?;
            Ok(phi.projector())
        })
        .collect::<Result<_>>()?;
    let mut sum = DenseOperator::zeros(&dims);
    for p in &projectors {
        sum = &sum + p;
    }
    let lambda = eig_hermitian(&sum)?.max();
    let mut effects: Vec<DenseOperator> = projectors.iter().map(|p| p.scale(1.0 / lambda)).collect();
    let inconclusive = &DenseOperator::identity(&dims) - &sum.scale(1.0 / lambda);
    let has_inconclusive = inconclusive.matrix().norm() > 1e-12;
    if has_inconclusive {
        effects.push(inconclusive);
    }
    let povm = Povm::new(effects)?;
    let success: Vec<f64> = (0..n)
        .map(|k| states[k].projector().expect(&povm.effects[k]))
        .collect();
    let average_success = success.iter().sum::<f64>() / n as f64;
    let known_optimum = (n == 2).then(|| 1.0 - states[0].inner(&states[1]).norm());
    let optimal = known_optimum.map(|opt| (average_success - opt).abs() <= 1e-9);
    Ok(UsdMeasurement {
        povm,
        has_inconclusive,
        lambda,
        success,
        average_success,
        known_optimum,
        optimal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TimeBinReport {
    pub mean_photons: f64,
    pub detector_eta: f64,
    pub dark_prob: f64,
    pub cutoff: usize,
    pub truncated_norm: f64,
    /// Probability that exactly one time bin fires.
    pub p_conclusive: f64,
    /// Probability of a conclusive but wrong identification.
    pub error_probability: f64,
    pub unambiguous: bool,
    /// `1 − |⟨ψ₁|ψ₂⟩|` for the two time-bin states.
    pub optimal_success: f64,
}

/// Default photon-number cutoff `⌈|α|² + 10|α| + 20⌉`.
pub fn default_cutoff(mean_photons: f64) -> usize {
    (mean_photons + 10.0 * mean_photons.sqrt() + 20.0).ceil() as usize
}

/// Discriminates `|0⟩|α⟩` from `|α⟩|0⟩` by watching which time bin fires.
///
/// Each photon is detected with probability `detector_eta`; each bin also fires
/// spuriously with probability `dark_prob`. Exactly one click names the state;
/// no click or two clicks are inconclusive.
pub fn usd_time_bin(
    alpha_amp: crate::tensor::C64,
    detector_eta: f64,
    dark_prob: f64,
    cutoff: Option<usize>,
) -> Result<TimeBinReport> {
    if !(0.0..=1.0).contains(&detector_eta) {
        return Err(param("detector_eta", detector_eta, "efficiency must lie in [0, 1]"));
    }
    if !(0.0..=1.0).contains(&dark_prob) {
        return Err(param("dark_prob", dark_prob, "dark-count probability must lie in [0, 1]"));
    }
    if !alpha_amp.norm().is_finite() {
        return Err(param("alpha", alpha_amp.norm(), "amplitude must be finite"));
    }
    let mean = alpha_amp.norm_sqr();
    let cutoff = cutoff.unwrap_or_else(|| default_cutoff(mean));
    // Poisson weights |⟨n|α⟩|² for n = 0..=cutoff.
    let mut weight = (-mean).exp();
    let mut norm = 0.0;
    let mut no_click = 0.0;
    let mut loss = 1.0;
    for n in 0..=cutoff {
        if n > 0 {
            weight *= mean / n as f64;
            loss *= 1.0 - detector_eta;
        }
        norm += weight;
        no_click += weight * loss;
    }
    if norm < 1.0 - 1e-10 {
        return Err(Error::CutoffTooSmall { cutoff, norm });
    }
    let signal_click = norm - no_click;
    let vacuum = (-mean).exp();
    // The pulse bin stays silent only if no photon and no dark count register.
    let pulse_silent = (1.0 - signal_click) * (1.0 - dark_prob);
    let correct = (1.0 - pulse_silent) * (1.0 - dark_prob);
    let error = pulse_silent * dark_prob;
    Ok(TimeBinReport {
        mean_photons: mean,
        detector_eta,
        dark_prob,
        cutoff,
        truncated_norm: norm,
        p_conclusive: correct + error,
        error_probability: error,
        unambiguous: dark_prob == 0.0,
        optimal_success: 1.0 - vacuum,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PgmResult {
    /// `E_k = p_k M^{−1/2} ρ_k M^{−1/2}` in ensemble order.
    pub effects: Vec<DenseOperator>,
    /// Projector onto the support of `M = Σ p_k ρ_k`.
    pub support: DenseOperator,
    /// The effects completed by `I − support` when `M` is singular.
    pub povm: Povm,
    pub success_probability: f64,
}

pub fn pgm(e: &Ensemble) -> Result<PgmResult> {
    let m = e.average();
    let eig = eig_hermitian(&m)?;
    let dims = m.dims().to_vec();
    let inv_sqrt = DenseOperator::new(
        eig.map_spectrum(|l| if l > RANK_TOL { 1.0 / l.sqrt() } else { 0.0 }),
        dims.clone(),
    )?;
    let support = DenseOperator::new(eig.spectral_projector(|l| l > RANK_TOL), dims.clone())?;
    for s in &e.states {
        if s.expect(&support) < 1.0 - STRUCT_TOL {
            return Err(Error::OutsideSupport);
        }
    }
    let effects: Vec<DenseOperator> = e
        .states
        .iter()
        .zip(&e.priors)
        .map(|(s, &p)| s.conjugate(&inv_sqrt).scale(p))
        .collect();
    let mut all = effects.clone();
    let complement = &DenseOperator::identity(&dims) - &support;
    if complement.matrix().norm() > 1e-12 {
        all.push(complement);
    }
    let povm = Povm::new(all)?;
    let success_probability = success_probability(&povm, e);
    Ok(PgmResult {
        effects,
        support,
        povm,
        success_probability,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChernoffResult {
    /// `−ln min_s Tr(ρ₀^s ρ₁^{1−s})`; `+∞` for orthogonal supports.
    pub xi: f64,
    pub s_opt: f64,
    pub q_min: f64,
}

fn matrix_power(eig: &crate::tensor::EigenDecomposition, s: f64) -> CMatrix {
    eig.map_spectrum(|l| if l > RANK_TOL { l.powf(s) } else { 0.0 })
}

/// `Tr(ρ₀^s ρ₁^{1−s})` with the pseudo-inverse convention for zero eigenvalues.
pub fn chernoff_q(rho0: &DenseOperator, rho1: &DenseOperator, s: f64) -> Result<f64> {
    let e0 = eig_hermitian(rho0)?;
    let e1 = eig_hermitian(rho1)?;
    Ok((matrix_power(&e0, s) * matrix_power(&e1, 1.0 - s)).trace().re)
}

pub fn chernoff_exponent(rho0: &DenseOperator, rho1: &DenseOperator) -> Result<ChernoffResult> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch("states differ in dimension".into()));
    }
    ensure_density(rho0)?;
    ensure_density(rho1)?;
    let e0 = eig_hermitian(rho0)?;
    let e1 = eig_hermitian(rho1)?;
    let q = |s: f64| (matrix_power(&e0, s) * matrix_power(&e1, 1.0 - s)).trace().re;
    let overlap = (e0.spectral_projector(|l| l > RANK_TOL) * e1.spectral_projector(|l| l > RANK_TOL))
        .trace()
        .re;
    if overlap < RANK_TOL {
        return Ok(ChernoffResult {
            xi: f64::INFINITY,
            s_opt: 0.5,
            q_min: 0.0,
        });
    }
    const SCAN: usize = 100;
    let grid: Vec<f64> = (0..SCAN).map(|i| i as f64 / (SCAN - 1) as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&s| q(s)).collect();
    let best = (0..SCAN)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty grid");
    let (mut lo, mut hi) = (grid[best.saturating_sub(1)], grid[(best + 1).min(SCAN - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (q(x1), q(x2));
    while hi - lo > 1e-8 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = q(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = q(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    let (s_opt, q_min) = [(mid, q(mid)), (grid[best], values[best])]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("two candidates");
    Ok(ChernoffResult {
        xi: -q_min.ln(),
        s_opt,
        q_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::spin_state;
    use crate::tensor::{kron, C64};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pure_pair(theta: f64) -> (PureState, PureState) {
        // overlap cos 2θ
        let a = PureState::from_amplitudes(vec![2], &[r(theta.cos()), r(theta.sin())]).unwrap();
        let b = PureState::from_amplitudes(vec![2], &[r(theta.cos()), r(-theta.sin())]).unwrap();
        (a, b)
    }

    #[test]
    fn ensemble_validation() {
        let s = DenseOperator::maximally_mixed(&[2]);
        assert!(Ensemble::new(vec![s.clone()], vec![0.5]).is_err());
        assert!(Ensemble::new(vec![s.clone(), s.clone()], vec![1.2, -0.2]).is_err());
        assert!(Ensemble::new(vec![s.clone(), DenseOperator::maximally_mixed(&[3])], vec![0.5, 0.5]).is_err());
        assert!(Ensemble::new(vec![s.clone(), s], vec![0.5, 0.5]).is_ok());
    }

    #[test]
    fn helstrom_examples() {
        let s = spin_state(0.4, 0.1).projector();
        let h = helstrom(&Ensemble::equiprobable(vec![s.clone(), s]).unwrap()).unwrap();
        assert!((h.p_error - 0.5).abs() < 1e-15);
        assert!((h.p_error_measured - 0.5).abs() < 1e-12);

        let zero = PureState::basis(&[2], 0).projector();
        let one = PureState::basis(&[2], 1).projector();
        let h = helstrom(&Ensemble::equiprobable(vec![zero, one]).unwrap()).unwrap();
        assert!(h.p_error.abs() < 1e-15);

        let theta = 0.3;
        let (a, b) = pure_pair(theta);
        assert!((a.inner(&b).re - (2.0 * theta).cos()).abs() < 1e-15);
        let h = helstrom(&Ensemble::from_pure(&[a, b], vec![0.5, 0.5]).unwrap()).unwrap();
        assert!((h.p_error - 0.5 * (1.0 - (2.0 * theta).sin())).abs() < 1e-14);
        assert!((h.p_error - h.p_error_measured).abs() < 1e-12);
    }

    #[test]
    fn helstrom_requires_two() {
        let s = DenseOperator::maximally_mixed(&[2]);
        let e = Ensemble::equiprobable(vec![s.clone(), s.clone(), s]).unwrap();
        assert!(helstrom(&e).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let s = spin_state(1.0, 1.0).projector();
        assert!(trace_distance(&s, &s).unwrap().abs() < 1e-15);
        let zero = PureState::basis(&[2], 0).projector();
        let one = PureState::basis(&[2], 1).projector();
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-15);
        let (a, b) = pure_pair(0.2);
        let d = trace_distance(&a.projector(), &b.projector()).unwrap();
        assert!((d - (1.0 - a.overlap_sq(&b)).sqrt()).abs() < 1e-14);
        assert!(trace_distance(&zero, &DenseOperator::maximally_mixed(&[2, 2])).is_err());
    }

    #[test]
    fn ex31_trace_norm_of_difference() {
        let theta = 0.35;
        let (a, b) = pure_pair(theta);
        let diff = &a.projector() - &b.projector();
        assert!((trace_norm(&diff).unwrap() - 2.0 * (2.0 * theta).sin()).abs() < 1e-14);
    }

    #[test]
    fn usd_two_pure_examples() {
        for &alpha in &[0.1, 0.4, 0.7] {
            let u = usd_two_pure(alpha).unwrap();
            let overlap = u.states[0].inner(&u.states[1]).norm();
            assert!((u.p_success - (1.0 - overlap)).abs() < 1e-14);
            assert!((u.p_success - 2.0 * alpha.sin().powi(2)).abs() < 1e-14);
            assert!(u.misidentification < 1e-15);
            let sum = &u.povm.effects()[0] + &u.povm.effects()[1];
            assert!((eig_hermitian(&sum).unwrap().max() - 1.0).abs() < 1e-12);
        }
        let near = usd_two_pure(std::f64::consts::FRAC_PI_4 - 1e-9).unwrap();
        assert!((near.p_success - 1.0).abs() < 1e-8);
        assert!(usd_two_pure(0.0).is_err());
        assert!(usd_two_pure(std::f64::consts::FRAC_PI_4).is_err());
    }

    #[test]
    fn usd_linear_independent_orthonormal() {
        let states: Vec<PureState> = (0..3).map(|k| PureState::basis(&[3], k)).collect();
        let u = usd_linear_independent(&states).unwrap();
        assert!(!u.has_inconclusive);
        assert!((u.lambda - 1.0).abs() < 1e-14);
        for k in 0..3 {
            assert!(u.povm.effects()[k].approx_eq(&states[k].projector(), 1e-14));
        }
    }

    #[test]
    fn usd_linear_independent_two_states_reach_bound() {
        let alpha = 0.5;
        let pair = usd_two_pure(alpha).unwrap();
        let u = usd_linear_independent(&pair.states).unwrap();
        assert_eq!(u.optimal, Some(true));
        assert!((u.average_success - pair.p_success).abs() < 1e-12);
    }

    #[test]
    fn usd_linear_independent_qutrit_cross_firing() {
        let mk = |v: [f64; 3]| {
            PureState::normalized(CVector::from_vec(v.iter().map(|&x| r(x)).collect()), vec![3]).unwrap()
        };
        let states = vec![mk([1.0, 0.3, 0.2]), mk([0.2, 1.0, -0.4]), mk([-0.3, 0.1, 1.0])];
        let u = usd_linear_independent(&states).unwrap();
        assert!(u.has_inconclusive);
        for (j, s) in states.iter().enumerate() {
            let probs = u.povm.probabilities(&s.projector());
            for k in 0..3 {
                if k != j {
                    assert!(probs[k] < 1e-10, "effect {k} fires on state {j}");
                }
            }
            assert!(probs[j] > 0.0);
        }
        assert_eq!(u.known_optimum, None);
    }

    #[test]
    fn usd_linear_independent_errors() {
        let a = PureState::basis(&[2], 0);
        let b = spin_state(1.0, 0.0);
        assert!(matches!(
            usd_linear_independent(&[a.clone(), b.clone(), spin_state(2.0, 1.0)]),
            Err(Error::TooManyStates { .. })
        ));
        assert!(matches!(
            usd_linear_independent(&[a.clone(), a]),
            Err(Error::LinearlyDependent { .. })
        ));
    }

    #[test]
    fn time_bin_examples() {
        let rep = usd_time_bin(C64::new(1.0, 0.0), 1.0, 0.0, None).unwrap();
        assert!((rep.p_conclusive - (1.0 - (-1.0f64).exp())).abs() < 1e-10);
        assert!(rep.unambiguous && rep.error_probability == 0.0);
        let rep = usd_time_bin(C64::new(0.0, 1.0), 0.5, 0.0, None).unwrap();
        assert!((rep.p_conclusive - (1.0 - (-0.5f64).exp())).abs() < 1e-10);
        let rep = usd_time_bin(C64::new(0.0, 0.0), 1.0, 0.0, None).unwrap();
        assert_eq!(rep.p_conclusive, 0.0);
        let rep = usd_time_bin(C64::new(1.0, 0.0), 1.0, 0.01, None).unwrap();
        assert!(!rep.unambiguous && rep.error_probability > 0.0);
        assert!(usd_time_bin(C64::new(1.0, 0.0), 1.5, 0.0, None).is_err());
        assert!(usd_time_bin(C64::new(1.0, 0.0), 0.5, -0.1, None).is_err());
        assert!(matches!(
            usd_time_bin(C64::new(3.0, 0.0), 1.0, 0.0, Some(2)),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert_eq!(default_cutoff(1.0), 31);
    }

    #[test]
    fn pgm_examples() {
        let states: Vec<DenseOperator> = (0..3).map(|k| PureState::basis(&[3], k).projector()).collect();
        let p = pgm(&Ensemble::equiprobable(states.clone()).unwrap()).unwrap();
        for k in 0..3 {
            assert!(p.effects[k].approx_eq(&states[k], 1e-14));
        }

        let (a, b) = pure_pair(0.3);
        let e = Ensemble::from_pure(&[a, b], vec![0.5, 0.5]).unwrap();
        let p = pgm(&e).unwrap();
        let h = helstrom(&e).unwrap();
        assert!((p.success_probability - (1.0 - h.p_error)).abs() < 1e-12);
    }

    #[test]
    fn pgm_on_proper_support() {
        // Two qubit states embedded in a qutrit.
        let mk = |a: f64, b: f64| PureState::normalized(CVector::from_vec(vec![r(a), r(b), r(0.0)]), vec![3]).unwrap();
        let e = Ensemble::from_pure(&[mk(1.0, 0.2), mk(0.3, 1.0)], vec![0.4, 0.6]).unwrap();
        let p = pgm(&e).unwrap();
        let sum = &p.effects[0] + &p.effects[1];
        assert!(sum.approx_eq(&p.support, 1e-9));
        assert_eq!(p.povm.len(), 3);
        let outside = PureState::basis(&[3], 2).projector();
        let e = Ensemble::new(vec![mk(1.0, 0.0).projector(), outside], vec![1.0, 0.0]).unwrap();
        assert!(matches!(pgm(&e), Err(Error::OutsideSupport)));
    }

    #[test]
    fn chernoff_examples() {
        let rho = spin_state(0.6, 0.2).projector();
        let mixed = &rho.scale(0.7) + &DenseOperator::maximally_mixed(&[2]).scale(0.3);
        assert!(chernoff_exponent(&mixed, &mixed).unwrap().xi.abs() < 1e-12);

        let zero = PureState::basis(&[2], 0).projector();
        let one = PureState::basis(&[2], 1).projector();
        assert_eq!(chernoff_exponent(&zero, &one).unwrap().xi, f64::INFINITY);

        // Classical oracle: scan Σ p^s q^{1−s} on 10⁴ points.
        let p = [0.9f64, 0.1];
        let q = [0.1f64, 0.9];
        let classical = (0..=10_000)
            .map(|i| {
                let s = i as f64 / 10_000.0;
                p[0].powf(s) * q[0].powf(1.0 - s) + p[1].powf(s) * q[1].powf(1.0 - s)
            })
            .fold(f64::INFINITY, f64::min);
        let d0 = DenseOperator::from_real(vec![2], &[&[0.9, 0.0], &[0.0, 0.1]]).unwrap();
        let d1 = DenseOperator::from_real(vec![2], &[&[0.1, 0.0], &[0.0, 0.9]]).unwrap();
        let ch = chernoff_exponent(&d0, &d1).unwrap();
        assert!((ch.xi + classical.ln()).abs() < 1e-9);
    }

    #[test]
    fn chernoff_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let a = crate::random::mixed_state(&[2], &mut rng);
            let b = crate::random::density(&[2], 1, &mut rng);
            let ab = chernoff_exponent(&a, &b).unwrap();
            let ba = chernoff_exponent(&b, &a).unwrap();
            assert!((ab.xi - ba.xi).abs() < 1e-9);
            assert!(ab.xi >= 0.0);
        }
    }

    #[test]
    fn chernoff_predicts_error_decay() {
        let rho0 = DenseOperator::from_real(vec![2], &[&[0.95, 0.2], &[0.2, 0.05]]).unwrap();
        let rho1 = DenseOperator::from_real(vec![2], &[&[0.5, -0.45], &[-0.45, 0.5]]).unwrap();
        let xi = chernoff_exponent(&rho0, &rho1).unwrap().xi;
        let mut p0 = rho0.clone();
        let mut p1 = rho1.clone();
        let mut rows = Vec::new();
        let mut logs = Vec::new();
        for n in 1..=6 {
            let perr = 0.5 * (1.0 - 0.5 * trace_norm(&(&p0 - &p1)).unwrap());
            rows.extend_from_slice(&[n as f64, (n as f64).ln(), 1.0]);
            logs.push(-perr.ln());
            p0 = kron(&p0, &rho0);
            p1 = kron(&p1, &rho1);
        }
        // Least squares for −ln p_err ≈ ξN + a ln N + b.
        let a = nalgebra::DMatrix::from_row_slice(6, 3, &rows);
        let y = nalgebra::DVector::from_vec(logs);
        let coef = (a.transpose() * &a).try_inverse().unwrap() * a.transpose() * y;
        assert!((coef[0] - xi).abs() / xi < 0.2, "slope {} vs xi {xi}", coef[0]);
    }
}
