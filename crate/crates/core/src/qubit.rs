//! Qubit constructions: Pauli algebra, Bloch correspondence, Bell basis,
//! singlet statistics, Werner, GHZ and the UPB bound-entangled state.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::tensor::{
    c, kron, kron_states, permute_subsystems, r, CVector, DenseOperator, PureState, C64,
    STRUCT_TOL, ZERO,
};

pub fn identity() -> DenseOperator {
    DenseOperator::identity(&[2])
}

pub fn sigma_x() -> DenseOperator {
    DenseOperator::from_real(vec![2], &[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2")
}

pub fn sigma_y() -> DenseOperator {
    let m = crate::tensor::CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]);
    DenseOperator::new(m, vec![2]).expect("2x2")
}

pub fn sigma_z() -> DenseOperator {
    DenseOperator::from_real(vec![2], &[&[1.0, 0.0], &[0.0, -1.0]]).expect("2x2")
}

pub fn paulis() -> [DenseOperator; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// `n·σ` for a real 3-vector.
pub fn sigma_dot(n: [f64; 3]) -> DenseOperator {
    let [x, y, z] = paulis();
    &(&x.scale(n[0]) + &y.scale(n[1])) + &z.scale(n[2])
}

pub fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Expectation values `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)` of a qubit state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn new(m: [f64; 3]) -> Result<Self> {
        let n = norm3(m);
        if n > 1.0 + STRUCT_TOL {
            return Err(param("|m|", n, "Bloch vector longer than 1"));
        }
        Ok(Self(m))
    }

    pub fn norm(&self) -> f64 {
        norm3(self.0)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

/// Unit vector selecting a spin measurement `n·σ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementDirection([f64; 3]);

impl MeasurementDirection {
    pub fn new(n: [f64; 3]) -> Result<Self> {
        let len = norm3(n);
        if (len - 1.0).abs() > STRUCT_TOL {
            return Err(param("|n|", len, "measurement direction must be a unit vector"));
        }
        Ok(Self(n))
    }

    /// Rescales any nonzero vector to unit length.
    pub fn normalized(n: [f64; 3]) -> Result<Self> {
        let len = norm3(n);
        if len < 1e-300 {
            return Err(param("|n|", len, "zero vector has no direction"));
        }
        Ok(Self([n[0] / len, n[1] / len, n[2] / len]))
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self([
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ])
    }

    pub fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }

    pub fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }

    pub fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn vector(&self) -> [f64; 3] {
        self.0
    }

    /// `n·σ`.
    pub fn observable(&self) -> DenseOperator {
        sigma_dot(self.0)
    }

    /// Projector onto the `±1` eigenspace of `n·σ`.
    pub fn projector(&self, plus: bool) -> DenseOperator {
        let s = if plus { 0.5 } else { -0.5 };
        &identity().scale(0.5) + &self.observable().scale(s)
    }
}

/// `ρ = (I + m·σ)/2`.
pub fn bloch_to_state(m: BlochVector) -> Result<DenseOperator> {
    let m = BlochVector::new(m.0)?;
    Ok((&identity() + &sigma_dot(m.0)).scale(0.5))
}

/// `m_k = Tr(σ_k ρ)`.
pub fn state_to_bloch(rho: &DenseOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a qubit operator, got dimension {}",
            rho.dim()
        )));
    }
    let [x, y, z] = paulis();
    Ok(BlochVector([rho.expect(&x), rho.expect(&y), rho.expect(&z)]))
}

/// `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
pub fn spin_state(theta: f64, phi: f64) -> PureState {
    let amps = [r((theta / 2.0).cos()), C64::from_polar((theta / 2.0).sin(), phi)];
    PureState::normalized(CVector::from_column_slice(&amps), vec![2]).expect("unit vector")
}

/// `(α, β)` amplitudes of a qubit pure state.
pub fn qubit_amplitudes(psi: &PureState) -> Result<(C64, C64)> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a qubit state, got dimension {}",
            psi.dim()
        )));
    }
    Ok((psi.amplitudes()[0], psi.amplitudes()[1]))
}

/// Orthogonal partner `β*|0⟩ − α*|1⟩`.
pub fn orthogonal(psi: &PureState) -> Result<PureState> {
    let (a, b) = qubit_amplitudes(psi)?;
    PureState::from_amplitudes(vec![2], &[b.conj(), -a.conj()])
}

/// Probability of outcome `+1` when measuring `n·σ` on `rho`.
pub fn prob_up(n: MeasurementDirection, rho: &DenseOperator) -> Result<f64> {
    let m = state_to_bloch(rho)?;
    Ok(0.5 * (1.0 + dot(n.0, m.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellKind::PhiPlus => "phi-plus",
            BellKind::PhiMinus => "phi-minus",
            BellKind::PsiPlus => "psi-plus",
            BellKind::PsiMinus => "psi-minus",
        }
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BellKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

pub fn bell_state(kind: BellKind) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match kind {
        BellKind::PhiPlus => [h, 0.0, 0.0, h],
        BellKind::PhiMinus => [h, 0.0, 0.0, -h],
        BellKind::PsiPlus => [0.0, h, h, 0.0],
        BellKind::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureState::from_amplitudes(vec![2, 2], &amps.map(r)).expect("unit vector")
}

/// Joint outcome probabilities of spin measurements along `a` (Alice) and `b` (Bob).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JointDistribution {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

impl JointDistribution {
    pub fn correlation(&self) -> f64 {
        self.pp + self.mm - self.pm - self.mp
    }

    pub fn alice_plus(&self) -> f64 {
        self.pp + self.pm
    }

    pub fn bob_plus(&self) -> f64 {
        self.pp + self.mp
    }
}

/// Measurement statistics on the singlet `|Ψ−⟩`.
pub fn singlet_statistics(a: MeasurementDirection, b: MeasurementDirection) -> JointDistribution {
    let ab = dot(a.0, b.0);
    JointDistribution {
        pp: (1.0 - ab) / 4.0,
        mm: (1.0 - ab) / 4.0,
        pm: (1.0 + ab) / 4.0,
        mp: (1.0 + ab) / 4.0,
    }
}

/// `w|Ψ−⟩⟨Ψ−| + (1−w) I/4`.
pub fn werner_state(w: f64) -> Result<DenseOperator> {
    if !(0.0..=1.0).contains(&w) {
        return Err(param("w", w, "Werner weight must lie in [0, 1]"));
    }
    let singlet = bell_state(BellKind::PsiMinus).projector();
    Ok(&singlet.scale(w) + &DenseOperator::maximally_mixed(&[2, 2]).scale(1.0 - w))
}

/// `(|000⟩ + |111⟩)/√2`.
pub fn ghz_state() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = [ZERO; 8];
    amps[0] = r(h);
    amps[7] = r(h);
    PureState::from_amplitudes(vec![2, 2, 2], &amps).expect("unit vector")
}

/// Unextendible product basis on three qubits and its bound-entangled complement state.
#[derive(Clone, Debug)]
pub struct Upb {
    pub product_states: [PureState; 4],
    /// Orthonormal completion of the product states.
    pub completion: Vec<PureState>,
    pub rho: DenseOperator,
}

fn qubit(a: f64, b: f64) -> PureState {
    PureState::normalized(CVector::from_vec(vec![r(a), r(b)]), vec![2]).expect("nonzero")
}

pub fn upb_construction() -> Upb {
    let zero = qubit(1.0, 0.0);
    let one = qubit(0.0, 1.0);
    let plus = qubit(1.0, 1.0);
    let minus = qubit(1.0, -1.0);
    let triple = |a: &PureState, b: &PureState, c: &PureState| {
        kron_states([a, b, c]).expect("three factors")
    };
    let product_states = [
        triple(&zero, &one, &plus),
        triple(&one, &plus, &zero),
        triple(&plus, &zero, &one),
        triple(&minus, &minus, &minus),
    ];
    let dims = [2, 2, 2];
    let mut rho = DenseOperator::identity(&dims);
    for phi in &product_states {
        rho = &rho - &phi.projector();
    }
    let rho = rho.scale(0.25);
    let completion = gram_schmidt_complement(&product_states, &dims);
    Upb {
        product_states,
        completion,
        rho,
    }
}

/// Orthonormal basis of the complement of `span(states)`, built from computational basis vectors.
pub fn gram_schmidt_complement(states: &[PureState], dims: &[usize]) -> Vec<PureState> {
    let n: usize = dims.iter().product();
    let mut basis: Vec<CVector> = states.iter().map(|s| s.amplitudes().clone()).collect();
    let start = basis.len();
    for k in 0..n {
        let mut v = PureState::basis(dims, k).amplitudes().clone();
        for b in &basis {
            let proj = b.dotc(&v);
            v -= b * proj;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v / r(norm));
        }
    }
    basis[start..]
        .iter()
        .map(|v| PureState::new(v.clone(), dims.to_vec()).expect("normalized"))
        .collect()
}

/// Applies a cyclic shift to the qubits of a three-qubit operator (`A B C → B C A`).
pub fn cyclic_shift(rho: &DenseOperator) -> Result<DenseOperator> {
    permute_subsystems(rho, &[1, 2, 0])
}

/// Average of `f(spin_state(θ, φ))` over the uniform measure on the sphere.
///
/// Simpson's rule in `cos θ` and the trapezoid rule in `φ`; exact for integrands
/// that are polynomials of degree ≤ 3 in the Bloch components.
pub fn sphere_average(f: impl Fn(&PureState) -> f64) -> f64 {
    const NU: usize = 64;
    const NPHI: usize = 16;
    let mut total = 0.0;
    for i in 0..=NU {
        let u = -1.0 + 2.0 * i as f64 / NU as f64;
        let w = if i == 0 || i == NU {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let theta = u.clamp(-1.0, 1.0).acos();
        let ring: f64 = (0..NPHI)
            .map(|j| f(&spin_state(theta, 2.0 * std::f64::consts::PI * j as f64 / NPHI as f64)))
            .sum();
        total += w * ring / NPHI as f64;
    }
    // (1/2)∫_{-1}^{1} du with Simpson weight h/3, h = 2/NU.
    0.5 * total * (2.0 / NU as f64) / 3.0
}

/// Looks up a state by registry name: `psi-minus`, `psi-plus`, `phi-plus`,
/// `phi-minus`, `werner:<w>`, `ghz`, `upb-rho`, `zero`, `one`, `plus`, `minus`,
/// `mixed`.
pub fn named_state(name: &str) -> Result<DenseOperator> {
    if let Some(w) = name.strip_prefix("werner:") {
        let w: f64 = w
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return werner_state(w);
    }
    if let Ok(kind) = name.parse::<BellKind>() {
        return Ok(bell_state(kind).projector());
    }
    match name {
        "ghz" => Ok(ghz_state().projector()),
        "upb-rho" => Ok(upb_construction().rho),
        "zero" => Ok(qubit(1.0, 0.0).projector()),
        "one" => Ok(qubit(0.0, 1.0).projector()),
        "plus" => Ok(qubit(1.0, 1.0).projector()),
        "minus" => Ok(qubit(1.0, -1.0).projector()),
        "mixed" => Ok(DenseOperator::maximally_mixed(&[2])),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub const REGISTRY_NAMES: [&str; 12] = [
    "psi-minus",
    "psi-plus",
    "phi-plus",
    "phi-minus",
    "werner:<w>",
    "ghz",
    "upb-rho",
    "zero",
    "one",
    "plus",
    "minus",
    "mixed",
];

/// `σ_a ⊗ σ_b ⊗ ...` from a string over `{I, X, Y, Z}`.
pub fn pauli_string(s: &str) -> Result<DenseOperator> {
    let mut out: Option<DenseOperator> = None;
    for ch in s.chars() {
        let p = match ch.to_ascii_uppercase() {
            'I' => identity(),
            'X' => sigma_x(),
            'Y' => sigma_y(),
            'Z' => sigma_z(),
            _ => return Err(Error::UnknownName(s.to_string())),
        };
        out = Some(match out {
            None => p,
            Some(acc) => kron(&acc, &p),
        });
    }
    out.ok_or_else(|| Error::UnknownName(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{eig_hermitian, partial_trace};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn bloch_examples() {
        let rho = bloch_to_state(BlochVector([0.0; 3])).unwrap();
        assert!(rho.approx_eq(&DenseOperator::maximally_mixed(&[2]), 1e-15));
        let rho = bloch_to_state(BlochVector([0.0, 0.0, 1.0])).unwrap();
        assert!(rho.approx_eq(&qubit(1.0, 0.0).projector(), 1e-15));
        assert!(bloch_to_state(BlochVector([1.0, 0.1, 0.0])).is_err());
        assert!(BlochVector::new([0.6, 0.8, 0.0]).unwrap().is_pure(1e-12));
    }

    #[test]
    fn state_to_bloch_plus_and_wrong_dim() {
        let m = state_to_bloch(&qubit(1.0, 1.0).projector()).unwrap();
        assert!((m.0[0] - 1.0).abs() < 1e-15 && m.0[1].abs() < 1e-15 && m.0[2].abs() < 1e-15);
        assert!(state_to_bloch(&DenseOperator::maximally_mixed(&[2, 2])).is_err());
    }

    #[test]
    fn spin_state_examples() {
        assert!(spin_state(0.0, 0.0).max_abs_diff(&qubit(1.0, 0.0)) < 1e-15);
        assert!(spin_state(PI / 2.0, 0.0).max_abs_diff(&qubit(1.0, 1.0)) < 1e-15);
        let plus_y = PureState::from_amplitudes(vec![2], &[r(FRAC_1_SQRT_2), c(0.0, FRAC_1_SQRT_2)]).unwrap();
        assert!(spin_state(PI / 2.0, PI / 2.0).max_abs_diff(&plus_y) < 1e-15);
    }

    #[test]
    fn prob_up_examples() {
        let n = MeasurementDirection::from_angles(1.1, 0.3);
        let rho = spin_state(1.1, 0.3).projector();
        assert!((prob_up(n, &rho).unwrap() - 1.0).abs() < 1e-12);
        let perp = MeasurementDirection::from_angles(1.1 + PI / 2.0, 0.3);
        assert!((prob_up(perp, &rho).unwrap() - 0.5).abs() < 1e-12);
        // Born-rule oracle for the marginal.
        let rho = bloch_to_state(BlochVector([1.0 / 3.0, 0.0, 2.0 / 3.0])).unwrap();
        let born = rho.expect(&MeasurementDirection::z().projector(true));
        assert!((born - 5.0 / 6.0).abs() < 1e-15);
        assert!((prob_up(MeasurementDirection::z(), &rho).unwrap() - born).abs() < 1e-15);
    }

    #[test]
    fn direction_validation() {
        assert!(MeasurementDirection::new([1.0, 1.0, 0.0]).is_err());
        let n = MeasurementDirection::normalized([1.0, 1.0, 0.0]).unwrap();
        assert!((norm3(n.vector()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_basis() {
        let psi_m = bell_state(BellKind::PsiMinus);
        let expected = [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0].map(r);
        assert!(psi_m.max_abs_diff(&PureState::from_amplitudes(vec![2, 2], &expected).unwrap()) < 1e-15);

        let ix = kron(&identity(), &sigma_x());
        let flipped = bell_state(BellKind::PhiPlus).apply(&ix).unwrap();
        assert!(flipped.max_abs_diff(&bell_state(BellKind::PsiPlus)) < 1e-15);

        for (i, a) in BellKind::ALL.iter().enumerate() {
            for (j, b) in BellKind::ALL.iter().enumerate() {
                let g = bell_state(*a).inner(&bell_state(*b));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - r(want)).norm() < 1e-15);
            }
        }
        assert!(matches!("bogus".parse::<BellKind>(), Err(Error::UnknownName(_))));
        assert_eq!("psi-minus".parse::<BellKind>().unwrap(), BellKind::PsiMinus);
    }

    #[test]
    fn singlet_statistics_examples() {
        let z = MeasurementDirection::z();
        let s = singlet_statistics(z, z);
        assert_eq!(s.pp, 0.0);
        assert_eq!(s.pm, 0.5);
        let s = singlet_statistics(z, MeasurementDirection::x());
        for p in [s.pp, s.pm, s.mp, s.mm] {
            assert_eq!(p, 0.25);
        }
    }

    #[test]
    fn singlet_statistics_matches_born_rule() {
        let a = MeasurementDirection::from_angles(0.0, 0.0);
        let b = MeasurementDirection::from_angles(3.0 * PI / 4.0, 0.0);
        assert!((dot(a.vector(), b.vector()) + FRAC_1_SQRT_2).abs() < 1e-15);
        let rho = bell_state(BellKind::PsiMinus).projector();
        let born = |pa: bool, pb: bool| rho.expect(&kron(&a.projector(pa), &b.projector(pb)));
        let s = singlet_statistics(a, b);
        assert!((s.pp - born(true, true)).abs() < 1e-15);
        assert!((s.pm - born(true, false)).abs() < 1e-15);
        assert!((s.mp - born(false, true)).abs() < 1e-15);
        assert!((s.mm - born(false, false)).abs() < 1e-15);
        assert!((s.correlation() - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn werner_examples() {
        assert!(werner_state(0.0).unwrap().approx_eq(&DenseOperator::maximally_mixed(&[2, 2]), 1e-15));
        assert!(werner_state(1.0)
            .unwrap()
            .approx_eq(&bell_state(BellKind::PsiMinus).projector(), 1e-15));
        assert!(werner_state(1.5).is_err());
        assert!(werner_state(-0.1).is_err());
    }

    #[test]
    fn ghz_examples() {
        let g = ghz_state().projector();
        assert!((g.expect(&pauli_string("XXX").unwrap()) - 1.0).abs() < 1e-15);
        assert!((g.expect(&pauli_string("XYY").unwrap()) + 1.0).abs() < 1e-15);
        let m = partial_trace(&g, &[1]).unwrap();
        assert!(m.approx_eq(&DenseOperator::maximally_mixed(&[2]), 1e-15));
    }

    #[test]
    fn upb_examples() {
        let upb = upb_construction();
        let s = &upb.product_states;
        assert!(s[0].inner(&s[3]).norm() < 1e-15);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s[i].inner(&s[j]).norm() - want).abs() < 1e-15);
            }
        }
        assert!((upb.rho.trace() - r(1.0)).norm() < 1e-14);
        let eig = eig_hermitian(&upb.rho).unwrap();
        let rank = eig.eigenvalues.iter().filter(|&&l| l > 1e-9).count();
        assert_eq!(rank, 4);
        let shifted = cyclic_shift(&upb.rho).unwrap();
        assert!((&shifted - &upb.rho).matrix().norm() < 1e-10);
    }

    #[test]
    fn upb_completion_spans_support() {
        let upb = upb_construction();
        assert_eq!(upb.completion.len(), 4);
        let mut proj = DenseOperator::zeros(&[2, 2, 2]);
        for v in &upb.completion {
            for p in &upb.product_states {
                assert!(v.inner(p).norm() < 1e-12);
            }
            proj = &proj + &v.projector();
        }
        assert!(proj.scale(0.25).approx_eq(&upb.rho, 1e-12));
    }

    #[test]
    fn registry() {
        for name in ["psi-minus", "phi-plus", "werner:0.5", "ghz", "upb-rho"] {
            let rho = named_state(name).unwrap();
            assert!(crate::tensor::validate_state(&rho, 1e-9).valid, "{name}");
        }
        assert!(named_state("werner:2").is_err());
        assert!(matches!(named_state("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn orthogonal_partner() {
        let psi = spin_state(0.7, 1.9);
        let perp = orthogonal(&psi).unwrap();
        assert!(psi.inner(&perp).norm() < 1e-15);
    }

    #[test]
    fn sphere_average_moments() {
        assert!((sphere_average(|_| 1.0) - 1.0).abs() < 1e-14);
        let z = |psi: &PureState| state_to_bloch(&psi.projector()).unwrap().0[2];
        assert!(sphere_average(z).abs() < 1e-14);
        assert!((sphere_average(|p| z(p).powi(2)) - 1.0 / 3.0).abs() < 1e-14);
        let x = |psi: &PureState| state_to_bloch(&psi.projector()).unwrap().0[0];
        assert!((sphere_average(|p| x(p).powi(2)) - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_string_rejects_junk() {
        assert!(pauli_string("XQ").is_err());
        assert!(pauli_string("").is_err());
    }
}
