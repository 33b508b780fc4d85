//! Teleportation, entanglement swapping and repeater timing.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{param, Error, Result};
use crate::qubit::{bell_state, identity, sigma_x, sigma_y, sigma_z, sphere_average, BellKind};
use crate::tensor::{
    c, kron, kron_state, partial_trace, CMatrix, CVector, DenseOperator, PureState, ZERO,
};

/// Pauli correction attached to a Bell outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Correction {
    Identity,
    SigmaZ,
    SigmaX,
    /// `σ̃y = −iσy`.
    SigmaYTilde,
}

impl Correction {
    pub fn for_outcome(kind: BellKind) -> Self {
        match kind {
            BellKind::PhiPlus => Correction::Identity,
            BellKind::PhiMinus => Correction::SigmaZ,
            BellKind::PsiPlus => Correction::SigmaX,
            BellKind::PsiMinus => Correction::SigmaYTilde,
        }
    }

    /// The unitary `U_k` with `|ψ⟩_A|Φ+⟩_BC = ½ Σ_k |bell_k⟩_AB U_k|ψ⟩_C`.
    pub fn operator(self) -> DenseOperator {
        match self {
            Correction::Identity => identity(),
            Correction::SigmaZ => sigma_z(),
            Correction::SigmaX => sigma_x(),
            Correction::SigmaYTilde => sigma_y().scale_c(c(0.0, -1.0)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Correction::Identity => "I",
            Correction::SigmaZ => "sigma_z",
            Correction::SigmaX => "sigma_x",
            Correction::SigmaYTilde => "sigma_y_tilde",
        }
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TeleportBranch {
    pub bell_outcome: BellKind,
    pub correction: Correction,
    pub probability: f64,
    /// Bob's qubit C after the outcome, before correcting.
    pub conditional: PureState,
    /// `U_k†` applied to the conditional state.
    pub corrected: PureState,
}

fn require_qubit_state(psi: &PureState) -> Result<()> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a qubit state, got dimension {}",
            psi.dim()
        )));
    }
    Ok(())
}

/// `(⟨bell|_{jk} ⊗ I)` contracted on two adjacent qubits of an n-qubit vector.
///
/// `first` is the index of the first measured qubit; returns the vector on the rest.
fn project_pair(state: &CVector, n: usize, first: usize, bell: &PureState) -> CVector {
    let rest = n - 2;
    let mut out = CVector::zeros(1 << rest);
    for full in 0..(1usize << n) {
        let hi = full >> (n - first);
        let pair = (full >> (n - first - 2)) & 0b11;
        let lo = full & ((1 << (n - first - 2)) - 1);
        let idx = (hi << (n - first - 2)) | lo;
        out[idx] += bell.amplitudes()[pair].conj() * state[full];
    }
    out
}

/// `|ψ⟩_A ⊗ |Φ+⟩_BC`.
pub fn teleport_lhs(psi: &PureState) -> Result<PureState> {
    require_qubit_state(psi)?;
    Ok(kron_state(psi, &bell_state(BellKind::PhiPlus)))
}

/// `½ Σ_k |bell_k⟩_AB ⊗ U_k|ψ⟩_C`.
pub fn teleport_rhs(psi: &PureState) -> Result<CVector> {
    require_qubit_state(psi)?;
    let mut v = CVector::zeros(8);
    for kind in BellKind::ALL {
        let u = Correction::for_outcome(kind).operator();
        let c_state = u.matrix() * psi.amplitudes();
        v += bell_state(kind).amplitudes().kronecker(&c_state) * c(0.5, 0.0);
    }
    Ok(v)
}

/// Branches of the protocol obtained by projecting A,B onto the Bell basis.
pub fn teleport_decompose(psi: &PureState) -> Result<Vec<TeleportBranch>> {
    let full = teleport_lhs(psi)?;
    BellKind::ALL
        .into_iter()
        .map(|kind| {
            let bell = bell_state(kind);
            let cond = project_pair(full.amplitudes(), 3, 0, &bell);
            let probability = cond.norm_squared();
            let conditional = PureState::normalized(cond, vec![2])?;
            let correction = Correction::for_outcome(kind);
            let corrected = conditional.apply(&correction.operator().dagger())?;
            Ok(TeleportBranch {
                bell_outcome: kind,
                correction,
                probability,
                conditional,
                corrected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TeleportRun {
    pub outcome: BellKind,
    pub corrected: PureState,
}

/// One run: sample the Bell outcome, return Bob's corrected qubit.
pub fn teleport_run<R: Rng + ?Sized>(psi: &PureState, rng: &mut R) -> Result<TeleportRun> {
    let branches = teleport_decompose(psi)?;
    let x: f64 = rng.gen();
    let mut acc = 0.0;
    let mut pick = branches.len() - 1;
    for (k, b) in branches.iter().enumerate() {
        acc += b.probability;
        if x < acc {
            pick = k;
            break;
        }
    }
    let b = &branches[pick];
    Ok(TeleportRun {
        outcome: b.bell_outcome,
        corrected: b.corrected.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityBranch {
    pub bell_outcome: BellKind,
    pub probability: f64,
    /// Corrected output, normalized; the maximally mixed state for zero-probability branches.
    pub corrected: DenseOperator,
}

/// Runs the protocol on a mixed input with an arbitrary two-qubit resource on B,C.
pub fn teleport_density(rho: &DenseOperator, resource: &DenseOperator) -> Result<Vec<DensityBranch>> {
    if rho.dim() != 2 || resource.dim() != 4 {
        return Err(Error::DimensionMismatch(
            "teleportation needs a qubit input and a two-qubit resource".into(),
        ));
    }
    crate::tensor::ensure_density(rho)?;
    crate::tensor::ensure_density(resource)?;
    let joint = kron(rho, &resource.with_dims(vec![2, 2])?);
    let mut out = Vec::with_capacity(4);
    for kind in BellKind::ALL {
        let bell = bell_state(kind);
        // (⟨bell|_AB ⊗ I_C) ρ (|bell⟩_AB ⊗ I_C)
        let mut cond = CMatrix::zeros(2, 2);
        for ab1 in 0..4 {
            for ab2 in 0..4 {
                let w = bell.amplitudes()[ab1].conj() * bell.amplitudes()[ab2];
                if w == ZERO {
                    continue;
                }
                for i in 0..2 {
                    for j in 0..2 {
                        cond[(i, j)] += w * joint.get(2 * ab1 + i, 2 * ab2 + j);
                    }
                }
            }
        }
        let probability = cond.trace().re;
        let u = Correction::for_outcome(kind).operator();
        let corrected = if probability > 1e-15 {
            DenseOperator::new(cond / c(probability, 0.0), vec![2])?.conjugate(&u.dagger())
        } else {
            DenseOperator::maximally_mixed(&[2])
        };
        out.push(DensityBranch {
            bell_outcome: kind,
            probability,
            corrected,
        });
    }
    Ok(out)
}

/// Bob's output averaged over outcomes.
pub fn teleport_output(rho: &DenseOperator, resource: &DenseOperator) -> Result<DenseOperator> {
    let branches = teleport_density(rho, resource)?;
    let mut out = DenseOperator::zeros(&[2]);
    for b in &branches {
        out = &out + &b.corrected.scale(b.probability);
    }
    Ok(out)
}

/// Average fidelity of the protocol over uniformly distributed pure inputs.
pub fn average_teleport_fidelity(resource: &DenseOperator) -> Result<f64> {
    // Validates the resource; every quadrature input is then a valid qubit state.
    teleport_output(&DenseOperator::maximally_mixed(&[2]), resource)?;
    Ok(sphere_average(|psi| {
        teleport_output(&psi.projector(), resource)
            .expect("validated inputs")
            .sandwich(psi)
            .re
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Party {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapOperation {
    pub label: &'static str,
    pub parties: Vec<Party>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapBranch {
    pub bc_outcome: BellKind,
    pub probability: f64,
    pub ad_state: PureState,
}

#[derive(Clone, Debug, Serialize)]
pub struct SwapResult {
    pub branches: Vec<SwapBranch>,
    pub operations: Vec<SwapOperation>,
    /// State of A,D before the outcome is known.
    pub ad_marginal: DenseOperator,
}

/// `|Φ+⟩_AB|Φ+⟩_CD`, Bell measurement on B,C.
pub fn entanglement_swap() -> Result<SwapResult> {
    let operations = vec![
        SwapOperation {
            label: "prepare phi-plus",
            parties: vec![Party::A, Party::B],
        },
        SwapOperation {
            label: "prepare phi-plus",
            parties: vec![Party::C, Party::D],
        },
        SwapOperation {
            label: "bell measurement",
            parties: vec![Party::B, Party::C],
        },
    ];
    if let Some(op) = operations
        .iter()
        .find(|op| op.parties.contains(&Party::A) && op.parties.contains(&Party::D))
    {
        return Err(Error::Inconsistent(format!(
            "operation `{}` acts jointly on A and D",
            op.label
        )));
    }
    let phi = bell_state(BellKind::PhiPlus);
    let full = kron_state(&phi, &phi);
    let ad_marginal = partial_trace(&full.projector(), &[0, 3])?;
    let branches = BellKind::ALL
        .into_iter()
        .map(|kind| {
            let cond = project_pair(full.amplitudes(), 4, 1, &bell_state(kind));
            let probability = cond.norm_squared();
            Ok(SwapBranch {
                bc_outcome: kind,
                probability,
                ad_state: PureState::normalized(cond, vec![2, 2])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SwapResult {
        branches,
        operations,
        ad_marginal,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RepeaterTiming {
    pub transmission: f64,
    /// Expected time for direct transmission, `1/t`.
    pub direct: f64,
    /// Expected time with one repeater station, `(3/2)/√t`.
    pub one_repeater: f64,
    /// Transmission below which the repeater is faster.
    pub crossover: f64,
    pub repeater_faster: bool,
}

pub fn repeater_time(t: f64) -> Result<RepeaterTiming> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(param("t", t, "transmission must lie in (0, 1]"));
    }
    let direct = 1.0 / t;
    let one_repeater = 1.5 / t.sqrt();
    // 1/t = 1.5/√t  ⇔  √t = 1/1.5
    let crossover = (1.0f64 / 1.5).powi(2);
    Ok(RepeaterTiming {
        transmission: t,
        direct,
        one_repeater,
        crossover,
        repeater_faster: one_repeater < direct,
    })
}
