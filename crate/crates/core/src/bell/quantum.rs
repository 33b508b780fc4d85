//! CHSH with qubit observables and the quantum bounds around it.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use super::table::Behavior;
use crate::error::{param, Error, Result};
use crate::qubit::{werner_state, MeasurementDirection};
use crate::tensor::{eig_hermitian, ensure_density, kron, r, DenseOperator, PureState};

/// Settings `(a, a′, b, b′)`.
pub type ChshSettings = [MeasurementDirection; 4];

/// `a = ẑ`, `a′ = x̂`, `b = (ẑ+x̂)/√2`, `b′ = (ẑ−x̂)/√2`.
pub fn standard_settings() -> ChshSettings {
    let h = FRAC_1_SQRT_2;
    [
        MeasurementDirection::z(),
        MeasurementDirection::x(),
        MeasurementDirection::new([h, 0.0, h]).expect("unit"),
        MeasurementDirection::new([-h, 0.0, h]).expect("unit"),
    ]
}

/// `A⊗B + A′⊗B + A⊗B′ − A′⊗B′`.
pub fn chsh_operator(s: &ChshSettings) -> DenseOperator {
    let [a, a2, b, b2] = s.map(|d| d.observable());
    let terms = [
        kron(&a, &b),
        kron(&a2, &b),
        kron(&a, &b2),
        kron(&a2, &b2).scale(-1.0),
    ];
    &(&terms[0] + &terms[1]) + &(&terms[2] + &terms[3])
}

fn ensure_two_qubit(state: &DenseOperator) -> Result<()> {
    if state.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "expected a two-qubit state, got dims {:?}",
            state.dims()
        )));
    }
    ensure_density(state)
}

/// `Tr(ρ𝒮)`.
pub fn chsh_value(state: &DenseOperator, s: &ChshSettings) -> Result<f64> {
    ensure_two_qubit(state)?;
    Ok(state.expect(&chsh_operator(s)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TsirelsonReport {
    pub max_eig_s: f64,
    pub max_eig_s2: f64,
    /// `‖𝒮² − 4I + [A,A′]⊗[B,B′]‖_max`.
    pub identity_defect: f64,
    /// Same check with the opposite sign on the commutator term.
    pub plus_sign_defect: f64,
}

/// Spectrum of `𝒮` and `𝒮²` together with the identity `𝒮² = 4I − [A,A′]⊗[B,B′]`.
///
/// The commutator product has a spectrum symmetric about zero, so `max eig 𝒮² ≤ 8` holds with either sign.
pub fn tsirelson_check(s: &ChshSettings) -> TsirelsonReport {
    let op = chsh_operator(s);
    let sq = &op * &op;
    let [a, a2, b, b2] = s.map(|d| d.observable());
    let four = DenseOperator::identity(&[2, 2]).scale(4.0);
    let comm = kron(&a.commutator(&a2), &b.commutator(&b2));
    TsirelsonReport {
        max_eig_s: eig_hermitian(&op).expect("Hermitian").max(),
        max_eig_s2: eig_hermitian(&sq).expect("Hermitian").max(),
        identity_defect: sq.max_abs_diff(&(&four - &comm)),
        plus_sign_defect: sq.max_abs_diff(&(&four + &comm)),
    }
}

/// `cos θ |00⟩ + sin θ |11⟩`.
pub fn schmidt_state(theta: f64) -> PureState {
    PureState::from_amplitudes(
        vec![2, 2],
        &[r(theta.cos()), r(0.0), r(0.0), r(theta.sin())],
    )
    .expect("unit vector")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalChsh {
    pub s: f64,
    pub beta: f64,
    pub settings: ChshSettings,
}

/// `S(θ) = 2√(1 + sin²2θ)` with `A = σz`, `A′ = σx`, `B, B′ = cos β σz ± sin β σx`.
pub fn optimal_chsh_pure(theta: f64) -> Result<OptimalChsh> {
    if !(0.0..=PI / 4.0 + 1e-12).contains(&theta) {
        return Err(param("theta", theta, "Schmidt angle must lie in [0, π/4]"));
    }
    let s2t = (2.0 * theta).sin();
    let root = (1.0 + s2t * s2t).sqrt();
    let beta = (1.0 / root).acos();
    let (cb, sb) = (beta.cos(), beta.sin());
    let settings = [
        MeasurementDirection::z(),
        MeasurementDirection::x(),
        MeasurementDirection::normalized([sb, 0.0, cb])?,
        MeasurementDirection::normalized([-sb, 0.0, cb])?,
    ];
    Ok(OptimalChsh {
        s: 2.0 * root,
        beta,
        settings,
    })
}

/// Smallest Werner weight whose `|S|` at the standard settings exceeds 2, by bisection.
pub fn werner_chsh_threshold() -> f64 {
    let settings = standard_settings();
    let violates = |w: f64| {
        chsh_value(&werner_state(w).expect("weight in range"), &settings)
            .expect("valid state")
            .abs()
            > 2.0
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if violates(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Born-rule behavior; outcome `0` is the `+1` eigenspace.
pub fn behavior_from_state(
    state: &DenseOperator,
    alice: [MeasurementDirection; 2],
    bob: [MeasurementDirection; 2],
) -> Result<Behavior> {
    ensure_two_qubit(state)?;
    Behavior::from_fn(|a, b, x, y| {
        let pa = alice[x].projector(a == 0);
        let pb = bob[y].projector(b == 0);
        state.expect(&kron(&pa, &pb)).max(0.0)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TlmResult {
    pub pass: bool,
    /// `|Σ arcsin E|` for each position of the minus sign.
    pub values: [f64; 4],
    /// `π − max(values)`.
    pub slack: f64,
}

/// `|±arcsin E_AB ± arcsin E_AB′ ± arcsin E_A′B ± arcsin E_A′B′| ≤ π` with one minus sign in every position.
pub fn tlm_criterion(e: [f64; 4]) -> Result<TlmResult> {
    for &v in &e {
        if !(-1.0..=1.0).contains(&v) {
            return Err(param("E", v, "correlation coefficients must lie in [-1, 1]"));
        }
    }
    let arcs = e.map(f64::asin);
    let total: f64 = arcs.iter().sum();
    let values = arcs.map(|a| (total - 2.0 * a).abs());
    let max = values.iter().copied().fold(0.0, f64::max);
    Ok(TlmResult {
        pass: max <= PI + 1e-9,
        values,
        slack: PI - max,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DetectionReport {
    pub eta: f64,
    pub observed: f64,
    /// Smallest efficiency with observed value above 2, when one exists in `(0, 1]`.
    pub threshold: Option<f64>,
}

/// `η² S₂ + 2η(1−η) S₁ + (1−η)² S₀`.
pub fn detected_chsh(eta: f64, s2: f64, s1: f64, s0: f64) -> f64 {
    eta * eta * s2 + 2.0 * eta * (1.0 - eta) * s1 + (1.0 - eta) * (1.0 - eta) * s0
}

/// Observed CHSH under no-click-as-`+1` and the efficiency threshold.
///
/// The no-click weight is `(1−η)²`, so the three weights sum to one.
pub fn detection_loophole(eta: f64, s2: f64, s1: f64, s0: f64) -> Result<DetectionReport> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(param("eta", eta, "efficiency must lie in [0, 1]"));
    }
    Ok(DetectionReport {
        eta,
        observed: detected_chsh(eta, s2, s1, s0),
        threshold: detection_threshold(s2, s1, s0),
    })
}

/// Ideal `S₂ = 2√2`, `S₁ = 0`, `S₀ = 2`.
pub const IDEAL_DETECTION: [f64; 3] = [2.0 * std::f64::consts::SQRT_2, 0.0, 2.0];

/// Smallest root in `(0, 1]` of `detected_chsh(η) = 2` past which the value exceeds 2.
pub fn detection_threshold(s2: f64, s1: f64, s0: f64) -> Option<f64> {
    let qa = s2 - 2.0 * s1 + s0;
    let qb = 2.0 * s1 - 2.0 * s0;
    let qc = s0 - 2.0;
    let mut roots = Vec::new();
    if qa.abs() < 1e-15 {
        if qb.abs() > 1e-15 {
            roots.push(-qc / qb);
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            // stable pair of roots
            let q = -0.5 * (qb + qb.signum() * sq);
            if q != 0.0 {
                roots.push(q / qa);
                roots.push(qc / q);
            } else {
                roots.push(0.0);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.into_iter().find(|&eta| {
        eta > 0.0
            && eta <= 1.0 + 1e-12
            && detected_chsh((eta + 1e-9).min(1.0), s2, s1, s0) > 2.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::table::{behavior_to_table, me_table};
    use crate::qubit::{bell_state, BellKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SQRT8: f64 = 2.0 * std::f64::consts::SQRT_2;

    fn singlet() -> DenseOperator {
        bell_state(BellKind::PsiMinus).projector()
    }

    fn random_settings(rng: &mut ChaCha8Rng) -> ChshSettings {
        std::array::from_fn(|_| {
            MeasurementDirection::new(crate::random::unit_vector(rng)).unwrap()
        })
    }

    #[test]
    fn singlet_reaches_tsirelson() {
        let v = chsh_value(&singlet(), &standard_settings()).unwrap();
        assert!((v + SQRT8).abs() < 1e-12);
        let z = MeasurementDirection::z();
        let x = MeasurementDirection::x();
        let v = chsh_value(&singlet(), &[z, x, z, x]).unwrap();
        assert!(v.abs() <= 2.0 + 1e-12);
        assert!(chsh_value(&DenseOperator::maximally_mixed(&[2]), &[z, x, z, x]).is_err());
    }

    #[test]
    fn product_state_never_violates() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rho = PureState::basis(&[2, 2], 0).projector();
        let mut best: f64 = 0.0;
        for _ in 0..10_000 {
            best = best.max(chsh_value(&rho, &random_settings(&mut rng)).unwrap().abs());
        }
        assert!(best <= 2.0 + 1e-12);
        assert!(best > 1.9);
    }

    #[test]
    fn tsirelson_identity_and_bound() {
        let t = tsirelson_check(&standard_settings());
        assert!((t.max_eig_s2 - 8.0).abs() < 1e-10);
        assert!((t.max_eig_s - SQRT8).abs() < 1e-10);
        assert!(t.identity_defect < 1e-12);
        assert!(t.plus_sign_defect > 1.0);
        let z = MeasurementDirection::z();
        let t = tsirelson_check(&[z, z, MeasurementDirection::x(), z]);
        assert!((t.max_eig_s - 2.0).abs() < 1e-12);
        assert!((t.max_eig_s2 - 4.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..1000 {
            let t = tsirelson_check(&random_settings(&mut rng));
            assert!(t.max_eig_s2 <= 8.0 + 1e-9);
            assert!(t.identity_defect < 1e-10);
        }
    }

    #[test]
    fn optimal_pure_state_violation() {
        for (theta, s) in [
            (PI / 4.0, SQRT8),
            (0.0, 2.0),
            (PI / 8.0, 6f64.sqrt()),
            (0.3, 2.0 * (1.0 + (0.6f64).sin().powi(2)).sqrt()),
        ] {
            let o = optimal_chsh_pure(theta).unwrap();
            assert!((o.s - s).abs() < 1e-12);
            let v = chsh_value(&schmidt_state(theta).projector(), &o.settings).unwrap();
            assert!((v - s).abs() < 1e-9);
        }
        assert!(optimal_chsh_pure(1.0).is_err());
    }

    #[test]
    fn werner_threshold() {
        let w = werner_chsh_threshold();
        assert!((w - FRAC_1_SQRT_2).abs() < 1e-6);
        let v = chsh_value(&werner_state(0.8).unwrap(), &standard_settings()).unwrap();
        assert!((v.abs() - 0.8 * SQRT8).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let rho = werner_state(1.0 / 3.0).unwrap();
        for _ in 0..1000 {
            assert!(chsh_value(&rho, &random_settings(&mut rng)).unwrap().abs() <= 2.0);
        }
    }

    #[test]
    fn singlet_behavior_is_me_table_after_relabel() {
        let [a, a2, b, b2] = standard_settings();
        let beh = behavior_from_state(&singlet(), [a, a2], [b, b2]).unwrap();
        assert!(beh.is_no_signaling(1e-10).0);
        let flipped = beh.relabel_outputs([false, false], [true, true]);
        let t = behavior_to_table(&flipped).unwrap();
        assert!(t.max_abs_diff(&me_table()) < 1e-12);
        let z = MeasurementDirection::z();
        let beh = behavior_from_state(&PureState::basis(&[2, 2], 0).projector(), [z, z], [z, z]).unwrap();
        let t = behavior_to_table(&beh).unwrap();
        assert_eq!(t.m_a, [1.0, 1.0]);
        assert_eq!(t.j, [[1.0, 1.0], [1.0, 1.0]]);
    }

    #[test]
    fn tlm_examples() {
        let h = FRAC_1_SQRT_2;
        let r = tlm_criterion([h, h, h, -h]).unwrap();
        assert!(r.pass);
        assert!(r.slack.abs() < 1e-12);
        let r = tlm_criterion([1.0, 1.0, 1.0, -1.0]).unwrap();
        assert!(!r.pass);
        assert!((r.values[3] - 2.0 * PI).abs() < 1e-12);
        assert!(tlm_criterion([0.0; 4]).unwrap().pass);
        assert!(tlm_criterion([1.5, 0.0, 0.0, 0.0]).is_err());
        // the single standard placement passes here, another placement does not
        let r = tlm_criterion([-1.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(r.values[3] <= PI);
        assert!(!r.pass);
    }

    #[test]
    fn detection_examples() {
        let [s2, s1, s0] = IDEAL_DETECTION;
        let r = detection_loophole(1.0, s2, s1, s0).unwrap();
        assert!((r.observed - SQRT8).abs() < 1e-15);
        let eta = r.threshold.unwrap();
        assert!((eta - 2.0 / (2f64.sqrt() + 1.0)).abs() < 1e-12);
        assert!((detected_chsh(eta, s2, s1, s0) - 2.0).abs() < 1e-12);
        assert!(detected_chsh(eta - 1e-6, s2, s1, s0) < 2.0);
        assert!(detection_loophole(1.2, s2, s1, s0).is_err());
        assert_eq!(detection_threshold(2.0, 0.0, 2.0), None);
    }
}
