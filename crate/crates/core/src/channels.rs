//! Completely positive maps, the collision thermalization model, and cloning machines.

use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::qubit::{
    orthogonal, qubit_amplitudes, sigma_y, spin_state, sphere_average, state_to_bloch, BlochVector,
};
use crate::tensor::{
    c, kron, kron_state, kron_states, partial_trace, r, sum_ops, CMatrix, CVector, DenseOperator,
    PureState, STRUCT_TOL, ZERO,
};

/// Operator-sum representation `ρ ↦ Σ K ρ K†`.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    kraus: Vec<DenseOperator>,
}

impl KrausChannel {
    /// Requires a nonempty list of equally shaped operators with `Σ K†K = I` within 1e-9.
    pub fn new(kraus: Vec<DenseOperator>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty Kraus list".into()))?;
        if kraus.iter().any(|k| k.dims() != first.dims()) {
            return Err(Error::DimensionMismatch(
                "Kraus operators have different shapes".into(),
            ));
        }
        let defect = Self::completeness_defect(&kraus);
        if defect > STRUCT_TOL {
            return Err(Error::NotTracePreserving { defect });
        }
        Ok(Self { kraus })
    }

    pub fn identity(dims: &[usize]) -> Self {
        Self {
            kraus: vec![DenseOperator::identity(dims)],
        }
    }

    /// Max entry of `|Σ K†K − I|`.
    pub fn completeness_defect(kraus: &[DenseOperator]) -> f64 {
        let sum = sum_ops(kraus.iter().map(|k| k.dagger() * k.clone()).collect::<Vec<_>>().iter())
            .expect("nonempty");
        sum.max_abs_diff(&DenseOperator::identity(kraus[0].dims()))
    }

    pub fn kraus(&self) -> &[DenseOperator] {
        &self.kraus
    }

    pub fn dims(&self) -> &[usize] {
        self.kraus[0].dims()
    }
}

pub fn apply_channel(ch: &KrausChannel, rho: &DenseOperator) -> Result<DenseOperator> {
    if rho.dim() != ch.kraus[0].dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, state has dimension {}",
            ch.kraus[0].dim(),
            rho.dim()
        )));
    }
    let mut out = DenseOperator::zeros(ch.dims());
    for k in &ch.kraus {
        out = &out + &rho.conjugate(k);
    }
    Ok(out)
}

/// Reservoir weight `p` and coupling angle `φ` of one collision.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollisionParams {
    p: f64,
    phi: f64,
}

impl CollisionParams {
    pub fn new(p: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(param("p", p, "reservoir weight must lie in [0, 1]"));
        }
        if !phi.is_finite() {
            return Err(param("phi", phi, "coupling angle must be finite"));
        }
        Ok(Self { p, phi })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Reservoir qubit state `ξ = p|0⟩⟨0| + (1−p)|1⟩⟨1|`.
    pub fn reservoir(&self) -> DenseOperator {
        DenseOperator::from_real(vec![2], &[&[self.p, 0.0], &[0.0, 1.0 - self.p]]).expect("2x2")
    }
}

/// Partial-swap unitary of one collision, on system ⊗ reservoir.
pub fn collision_unitary(phi: f64) -> DenseOperator {
    let (cs, sn) = (phi.cos(), phi.sin());
    let is = c(0.0, sn);
    // Columns are the images of |00⟩, |01⟩, |10⟩, |11⟩.
    #[rustfmt::skip]
    let m = CMatrix::from_row_slice(4, 4, &[
        r(1.0), ZERO,  ZERO,  ZERO,
        ZERO,   r(cs), is,    ZERO,
        ZERO,   is,    r(cs), ZERO,
        ZERO,   ZERO,  ZERO,  r(1.0),
    ]);
    DenseOperator::new(m, vec![2, 2]).expect("4x4")
}

fn check_qubit(rho: &DenseOperator) -> Result<()> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a qubit state, got dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

/// One collision as explicit unitary conjugation followed by tracing out the reservoir.
pub fn collision_step_unitary(rho: &DenseOperator, params: CollisionParams) -> Result<DenseOperator> {
    check_qubit(rho)?;
    let joint = kron(rho, &params.reservoir()).conjugate(&collision_unitary(params.phi));
    partial_trace(&joint, &[0])
}

/// One collision via the entry recursion `d' = c²d + s²p`, `k' = c k`.
pub fn collision_step(rho: &DenseOperator, params: CollisionParams) -> Result<DenseOperator> {
    check_qubit(rho)?;
    let (cs, sn) = (params.phi.cos(), params.phi.sin());
    let d = rho.get(0, 0).re;
    let k = rho.get(0, 1);
    let d1 = cs * cs * d + sn * sn * params.p;
    let k1 = k * cs;
    let m = CMatrix::from_row_slice(2, 2, &[r(d1), k1, k1.conj(), r(1.0 - d1)]);
    DenseOperator::new(m, vec![2])
}

/// The collision map as a Kraus channel, `K_ij = √ξ_j ⟨i|_R U |j⟩_R`.
pub fn collision_channel(params: CollisionParams) -> KrausChannel {
    let u = collision_unitary(params.phi);
    let weights = [params.p, 1.0 - params.p];
    let mut kraus = Vec::new();
    for i in 0..2 {
        for (j, &w) in weights.iter().enumerate() {
            let m = CMatrix::from_fn(2, 2, |s, t| u.get(2 * s + i, 2 * t + j) * w.sqrt());
            kraus.push(DenseOperator::new(m, vec![2]).expect("2x2"));
        }
    }
    KrausChannel::new(kraus).expect("collision map is trace preserving")
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionRun {
    pub steps: usize,
    /// Result of iterating the map.
    pub iterated: DenseOperator,
    /// `d_n = c^{2n} d_0 + (1 − c^{2n}) p`, `k_n = cⁿ k_0`.
    pub closed_form: DenseOperator,
}

pub fn collision_iterate(rho: &DenseOperator, params: CollisionParams, n: usize) -> Result<CollisionRun> {
    check_qubit(rho)?;
    let mut cur = rho.clone();
    for _ in 0..n {
        cur = collision_step(&cur, params)?;
    }
    let cs = params.phi.cos();
    let c2n = cs.powi(2 * n as i32);
    let d = c2n * rho.get(0, 0).re + (1.0 - c2n) * params.p;
    let k = rho.get(0, 1) * cs.powi(n as i32);
    let closed = CMatrix::from_row_slice(2, 2, &[r(d), k, k.conj(), r(1.0 - d)]);
    Ok(CollisionRun {
        steps: n,
        iterated: cur,
        closed_form: DenseOperator::new(closed, vec![2])?,
    })
}

/// Output state vector of the symmetric universal 1→2 cloner on qubits A, B with ancilla C.
pub fn bh_clone_vector(psi: &PureState) -> Result<PureState> {
    let (a, b) = qubit_amplitudes(psi)?;
    let perp = orthogonal(psi)?;
    let conj = PureState::from_amplitudes(vec![2], &[a.conj(), b.conj()])?;
    let conj_perp = PureState::from_amplitudes(vec![2], &[b, -a])?;
    let copies = kron_states([psi, psi, &conj]).expect("three factors");
    let mixed = kron_state(psi, &perp).amplitudes() + kron_state(&perp, psi).amplitudes();
    let mixed = mixed.kronecker(conj_perp.amplitudes());
    let v = copies.amplitudes() * r((2.0f64 / 3.0).sqrt()) + mixed * r((1.0f64 / 6.0).sqrt());
    PureState::new(v, vec![2, 2, 2])
}

/// Three-qubit output `|out⟩⟨out|` of the cloner.
pub fn bh_clone(psi: &PureState) -> Result<DenseOperator> {
    Ok(bh_clone_vector(psi)?.projector())
}

/// Cloner isometry from its action on the basis inputs `|0⟩|0⟩|0⟩` and `|1⟩|0⟩|0⟩`.
///
/// Columns: images of `|0⟩` and `|1⟩` as 8-vectors on A ⊗ B ⊗ C.
pub fn bh_isometry() -> CMatrix {
    let (s23, s16) = ((2.0f64 / 3.0).sqrt(), (1.0f64 / 6.0).sqrt());
    let mut v = CMatrix::zeros(8, 2);
    v[(0b000, 0)] = r(s23);
    v[(0b011, 0)] = r(s16);
    v[(0b101, 0)] = r(s16);
    v[(0b111, 1)] = r(s23);
    v[(0b100, 1)] = r(s16);
    v[(0b010, 1)] = r(s16);
    v
}

/// `(2/3)|ψ⊥⟩⟨ψ⊥| + (1/3)|ψ⟩⟨ψ|`.
pub fn universal_not(psi: &PureState) -> Result<DenseOperator> {
    let perp = orthogonal(psi)?;
    Ok(&perp.projector().scale(2.0 / 3.0) + &psi.projector().scale(1.0 / 3.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CloneStrategy {
    /// Keep the original, add a fresh qubit in `|0⟩`, forget which is which.
    RandomNewQubit,
    /// Measure in the computational basis and prepare two copies of the outcome.
    MeasureAndReprepare,
}

impl FromStr for CloneStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-new-qubit" => Ok(CloneStrategy::RandomNewQubit),
            "measure-and-reprepare" => Ok(CloneStrategy::MeasureAndReprepare),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Single-copy fidelity of a trivial strategy on a given input.
pub fn trivial_clone_fidelity_on(strategy: CloneStrategy, psi: &PureState) -> f64 {
    let basis = [PureState::basis(&[2], 0), PureState::basis(&[2], 1)];
    match strategy {
        CloneStrategy::RandomNewQubit => 0.5 + 0.5 * basis[0].overlap_sq(psi),
        CloneStrategy::MeasureAndReprepare => basis
            .iter()
            .map(|k| {
                let prob = k.overlap_sq(psi);
                prob * prob
            })
            .sum(),
    }
}

/// Average single-copy fidelity over uniformly distributed inputs, by quadrature.
pub fn trivial_clone_fidelity(strategy: CloneStrategy) -> f64 {
    sphere_average(|psi| trivial_clone_fidelity_on(strategy, psi))
}

/// Monte-Carlo average of the single-copy fidelity over Haar-random inputs.
pub fn trivial_clone_fidelity_mc<R: Rng + ?Sized>(
    strategy: CloneStrategy,
    samples: usize,
    rng: &mut R,
) -> f64 {
    let mut acc = 0.0;
    for _ in 0..samples {
        let n = crate::random::unit_vector(rng);
        let theta = n[2].clamp(-1.0, 1.0).acos();
        let phi = n[1].atan2(n[0]);
        acc += trivial_clone_fidelity_on(strategy, &spin_state(theta, phi));
    }
    acc / samples as f64
}

/// Projector onto the symmetric subspace `span{|00⟩, |11⟩, |Ψ+⟩}`.
pub fn symmetric_projector() -> DenseOperator {
    let b = |k| PureState::basis(&[2, 2], k);
    let psi_plus = PureState::normalized(b(1).amplitudes() + b(2).amplitudes(), vec![2, 2])
        .expect("nonzero");
    &(&b(0).projector() + &b(3).projector()) + &psi_plus.projector()
}

/// `T[ρ] = (2/3) S₂ (ρ ⊗ I) S₂`.
pub fn symmetric_projection_clone(rho: &DenseOperator) -> Result<DenseOperator> {
    check_qubit(rho)?;
    crate::tensor::ensure_density(rho)?;
    let s2 = symmetric_projector();
    let lifted = kron(rho, &DenseOperator::identity(&[2]));
    Ok((&(&s2 * &lifted) * &s2).scale(2.0 / 3.0))
}

/// Single-copy fidelity of stimulated-emission amplification.
///
/// Emission into the signal mode is stimulated with weight 2 against spontaneous
/// weight 1; a stimulated photon copies the polarization, a spontaneous one is random.
pub fn amplifier_fidelity() -> f64 {
    let (stimulated, spontaneous) = (2.0, 1.0);
    let total: f64 = stimulated + spontaneous;
    (stimulated / total) * 1.0 + (spontaneous / total) * 0.5
}

/// `√(2/3)|HH⟩|e_H⟩ + √(1/3)|Ψ+⟩|e_V⟩` on photon A ⊗ photon B ⊗ emitter.
pub fn amplifier_state() -> PureState {
    let mut v = CVector::zeros(8);
    v[0b000] = r((2.0f64 / 3.0).sqrt());
    let w = (1.0f64 / 3.0).sqrt() * std::f64::consts::FRAC_1_SQRT_2;
    v[0b011] = r(w);
    v[0b101] = r(w);
    PureState::new(v, vec![2, 2, 2]).expect("normalized")
}

/// Linear extension of the basis-cloning map `|k⟩|R⟩|M⟩ → |k⟩|k⟩|M(k)⟩` applied to `|+⟩`,
/// and the best overlap with any `|+⟩|+⟩|M'⟩`.
pub fn no_cloning_witness(machine: [&PureState; 2]) -> Result<f64> {
    let dm = machine[0].dim();
    if machine[1].dim() != dm {
        return Err(Error::DimensionMismatch("machine states differ in dimension".into()));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero = PureState::basis(&[2], 0);
    let one = PureState::basis(&[2], 1);
    let out = kron_states([&zero, &zero, machine[0]]).expect("factors").amplitudes() * r(h)
        + kron_states([&one, &one, machine[1]]).expect("factors").amplitudes() * r(h);
    let plus = PureState::from_amplitudes(vec![2], &[r(h), r(h)])?;
    let pp = kron_state(&plus, &plus);
    // (⟨++| ⊗ I)|out⟩; its norm is the maximal overlap over machine states.
    let mut reduced = CVector::zeros(dm);
    for ab in 0..4 {
        for m in 0..dm {
            reduced[m] += pp.amplitudes()[ab].conj() * out[ab * dm + m];
        }
    }
    Ok(reduced.norm())
}

/// Cloner marginals for one input.
#[derive(Clone, Debug, Serialize)]
pub struct BhReport {
    pub input_bloch: BlochVector,
    pub bloch_a: BlochVector,
    pub bloch_b: BlochVector,
    pub bloch_c: BlochVector,
    pub fidelity_a: f64,
    pub fidelity_b: f64,
    /// Fidelity of `σy ρ_C σy` with `|ψ⊥⟩`.
    pub not_fidelity: f64,
}

pub fn bh_report(psi: &PureState) -> Result<BhReport> {
    let out = bh_clone(psi)?;
    let rho_a = partial_trace(&out, &[0])?;
    let rho_b = partial_trace(&out, &[1])?;
    let rho_c = partial_trace(&out, &[2])?;
    let y = sigma_y();
    let not = rho_c.conjugate(&y);
    let perp = orthogonal(psi)?;
    Ok(BhReport {
        input_bloch: state_to_bloch(&psi.projector())?,
        bloch_a: state_to_bloch(&rho_a)?,
        bloch_b: state_to_bloch(&rho_b)?,
        bloch_c: state_to_bloch(&rho_c)?,
        fidelity_a: rho_a.sandwich(psi).re,
        fidelity_b: rho_b.sandwich(psi).re,
        not_fidelity: not.sandwich(&perp).re,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use crate::tensor::{permute_subsystems, validate_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plus() -> PureState {
        spin_state(PI / 2.0, 0.0)
    }

    #[test]
    fn identity_channel_leaves_state() {
        let rho = plus().projector();
        let out = apply_channel(&KrausChannel::identity(&[2]), &rho).unwrap();
        assert!(out.approx_eq(&rho, 1e-15));
    }

    #[test]
    fn dephasing_kills_coherence() {
        let p0 = PureState::basis(&[2], 0).projector();
        let p1 = PureState::basis(&[2], 1).projector();
        let ch = KrausChannel::new(vec![p0, p1]).unwrap();
        let out = apply_channel(&ch, &plus().projector()).unwrap();
        assert!(out.approx_eq(&DenseOperator::maximally_mixed(&[2]), 1e-15));
    }

    #[test]
    fn channel_rejects_bad_input() {
        let half = DenseOperator::identity(&[2]).scale(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half]),
            Err(Error::NotTracePreserving { .. })
        ));
        let ch = KrausChannel::identity(&[2]);
        assert!(apply_channel(&ch, &DenseOperator::maximally_mixed(&[2, 2])).is_err());
        assert!(KrausChannel::new(vec![]).is_err());
    }

    #[test]
    fn collision_swap_and_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = crate::random::mixed_state(&[2], &mut rng);
        let swap = CollisionParams::new(0.3, PI / 2.0).unwrap();
        assert!(collision_step(&rho, swap).unwrap().approx_eq(&swap.reservoir(), 1e-15));
        assert!(collision_step_unitary(&rho, swap).unwrap().approx_eq(&swap.reservoir(), 1e-15));
        let idle = CollisionParams::new(0.3, 0.0).unwrap();
        assert!(collision_step(&rho, idle).unwrap().approx_eq(&rho, 1e-15));
        assert!(CollisionParams::new(1.2, 0.1).is_err());
    }

    #[test]
    fn collision_half_weight_example() {
        // d = 1, k = 0, c² = 1/2, p = 0 gives d' = 1/2 via the explicit conjugation.
        let params = CollisionParams::new(0.0, PI / 4.0).unwrap();
        let rho = PureState::basis(&[2], 0).projector();
        let oracle = collision_step_unitary(&rho, params).unwrap();
        assert!((oracle.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!(collision_step(&rho, params).unwrap().approx_eq(&oracle, 1e-15));
    }

    #[test]
    fn collision_kraus_matches_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let params = CollisionParams::new(rng.gen(), rng.gen_range(-PI..PI)).unwrap();
            let rho = crate::random::mixed_state(&[2], &mut rng);
            let via_kraus = apply_channel(&collision_channel(params), &rho).unwrap();
            let via_u = collision_step_unitary(&rho, params).unwrap();
            assert!(via_kraus.approx_eq(&via_u, 1e-14));
        }
    }

    #[test]
    fn collision_iterate_examples() {
        let params = CollisionParams::new(0.3, 0.99f64.acos()).unwrap();
        let rho = plus().projector();
        let run = collision_iterate(&rho, params, 0).unwrap();
        assert!(run.iterated.approx_eq(&rho, 0.0));
        let run = collision_iterate(&rho, params, 2000).unwrap();
        assert!(run.iterated.approx_eq(&params.reservoir(), 1e-6));
        let run = collision_iterate(&rho, params, 37).unwrap();
        let expected_k = rho.get(0, 1) * 0.99f64.powi(37);
        assert!((run.iterated.get(0, 1) - expected_k).norm() < 1e-12);
        assert!(run.iterated.approx_eq(&run.closed_form, 1e-12));
    }

    #[test]
    fn bh_zero_input_matches_basis_table() {
        let out = bh_clone_vector(&PureState::basis(&[2], 0)).unwrap();
        let v = bh_isometry();
        for i in 0..8 {
            assert!((out.amplitudes()[i] - v[(i, 0)]).norm() < 1e-15);
        }
        let out = bh_clone_vector(&PureState::basis(&[2], 1)).unwrap();
        for i in 0..8 {
            assert!((out.amplitudes()[i] - v[(i, 1)]).norm() < 1e-15);
        }
    }

    #[test]
    fn bh_linear_extension_agrees() {
        let v = bh_isometry();
        for k in 0..20 {
            let psi = spin_state(0.31 * k as f64, 0.77 * k as f64);
            let linear = &v * psi.amplitudes();
            let direct = bh_clone_vector(&psi).unwrap();
            let overlap = direct.amplitudes().dotc(&linear).norm();
            assert!((overlap - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bh_marginals() {
        let psi = spin_state(1.3, -0.4);
        let out = bh_clone(&psi).unwrap();
        assert!(validate_state(&out, 1e-9).valid);
        let rho_a = partial_trace(&out, &[0]).unwrap();
        let rho_b = partial_trace(&out, &[1]).unwrap();
        let expected = &psi.projector().scale(2.0 / 3.0) + &DenseOperator::maximally_mixed(&[2]).scale(1.0 / 3.0);
        assert!(rho_a.approx_eq(&expected, 1e-14));
        assert!(rho_b.approx_eq(&expected, 1e-14));
        assert!((rho_a.sandwich(&psi).re - 5.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn bh_basis_output_is_valid() {
        let out = bh_clone(&PureState::basis(&[2], 0)).unwrap();
        assert!(validate_state(&out, 1e-9).valid);
    }

    #[test]
    fn universal_not_examples() {
        let zero = PureState::basis(&[2], 0);
        let expected = DenseOperator::from_real(vec![2], &[&[1.0 / 3.0, 0.0], &[0.0, 2.0 / 3.0]]).unwrap();
        assert!(universal_not(&zero).unwrap().approx_eq(&expected, 1e-15));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let psi = crate::random::pure_state(&[2], &mut rng);
            let not = universal_not(&psi).unwrap();
            let m = state_to_bloch(&psi.projector()).unwrap().0;
            let got = state_to_bloch(&not).unwrap().0;
            for i in 0..3 {
                assert!((got[i] + m[i] / 3.0).abs() < 1e-14);
            }
            let rho_c = partial_trace(&bh_clone(&psi).unwrap(), &[2]).unwrap();
            assert!(rho_c.conjugate(&sigma_y()).approx_eq(&not, 1e-14));
        }
    }

    #[test]
    fn trivial_fidelities() {
        assert!((trivial_clone_fidelity(CloneStrategy::RandomNewQubit) - 0.75).abs() < 1e-14);
        assert!((trivial_clone_fidelity(CloneStrategy::MeasureAndReprepare) - 2.0 / 3.0).abs() < 1e-14);
        assert!(matches!("xerox".parse::<CloneStrategy>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn trivial_fidelity_mc_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = trivial_clone_fidelity_mc(CloneStrategy::RandomNewQubit, 20_000, &mut rng);
        assert!((f - 0.75).abs() < 0.01);
    }

    #[test]
    fn symmetric_projection_matches_cloner() {
        let zero = PureState::basis(&[2], 0);
        let t = symmetric_projection_clone(&zero.projector()).unwrap();
        let ab = partial_trace(&bh_clone(&zero).unwrap(), &[0, 1]).unwrap();
        assert!(t.approx_eq(&ab, 1e-10));

        let t = symmetric_projection_clone(&DenseOperator::maximally_mixed(&[2])).unwrap();
        assert!((t.trace().re - 1.0).abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let rho = crate::random::mixed_state(&[2], &mut rng);
            let t = symmetric_projection_clone(&rho).unwrap();
            let swapped = permute_subsystems(&t, &[1, 0]).unwrap();
            assert!(swapped.approx_eq(&t, 1e-14));
        }
    }

    #[test]
    fn symmetric_projector_is_projector() {
        let s = symmetric_projector();
        assert!((&s * &s).approx_eq(&s, 1e-15));
        assert!((s.trace().re - 3.0).abs() < 1e-15);
    }

    #[test]
    fn amplifier() {
        assert!((amplifier_fidelity() - 5.0 / 6.0).abs() < 1e-15);
        let rho_a = partial_trace(&amplifier_state().projector(), &[0]).unwrap();
        let h = PureState::basis(&[2], 0);
        assert!((rho_a.sandwich(&h).re - 5.0 / 6.0).abs() < 1e-15);
        let bh = bh_report(&h).unwrap();
        assert!((bh.fidelity_a - amplifier_fidelity()).abs() < 1e-14);
    }

    #[test]
    fn no_cloning_overlap_below_threshold() {
        let m0 = PureState::basis(&[2], 0);
        let m1 = PureState::basis(&[2], 1);
        assert!((no_cloning_witness([&m0, &m1]).unwrap() - 0.5).abs() < 1e-15);
        let same = no_cloning_witness([&m0, &m0]).unwrap();
        assert!((same - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(same < 0.9);
    }

    #[test]
    fn bh_report_shrinks_bloch() {
        let psi = spin_state(0.9, 2.1);
        let rep = bh_report(&psi).unwrap();
        let m = rep.input_bloch.0;
        for i in 0..3 {
            assert!((rep.bloch_a.0[i] - 2.0 / 3.0 * m[i]).abs() < 1e-14);
        }
        let expected_c = [m[0] / 3.0, -m[1] / 3.0, m[2] / 3.0];
        for i in 0..3 {
            assert!((rep.bloch_c.0[i] - expected_c[i]).abs() < 1e-14);
        }
        assert!((rep.not_fidelity - 2.0 / 3.0).abs() < 1e-14);
    }
}
