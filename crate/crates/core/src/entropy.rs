//! Entropies in bits.

use crate::discrimination::Ensemble;
use crate::error::{param, Error, Result};
use crate::tensor::{
    density_spectrum, ensure_density, partial_trace, r, CVector, DenseOperator, PureState,
    RANK_TOL,
};

/// `−Σ p log₂ p` with `0 log 0 = 0`.
pub fn shannon(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Binary entropy `h(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    shannon(&[p, 1.0 - p])
}

/// `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann(rho: &DenseOperator) -> Result<f64> {
    let eig = density_spectrum(rho)?;
    Ok(shannon(&eig.eigenvalues).max(0.0))
}

/// `S(ρ‖σ) = −S(ρ) − Tr ρ log₂ σ`; `+∞` when `supp ρ ⊄ supp σ`.
pub fn relative_entropy(rho: &DenseOperator, sigma: &DenseOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let s_rho = von_neumann(rho)?;
    let eig = density_spectrum(sigma)?;
    let mut cross = 0.0;
    let mut outside = 0.0;
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        let v = eig.vector(k);
        let weight = v.dotc(&(rho.matrix() * &v)).re;
        if l > RANK_TOL {
            cross += weight * l.log2();
        } else {
            outside += weight;
        }
    }
    if outside > RANK_TOL {
        return Ok(f64::INFINITY);
    }
    Ok((-s_rho - cross).max(0.0))
}

/// Entropy of the marginal on `keep`.
pub fn joint_entropy(rho: &DenseOperator, keep: &[usize]) -> Result<f64> {
    if keep.len() == rho.dims().len() {
        return von_neumann(rho);
    }
    von_neumann(&partial_trace(rho, keep)?)
}

/// `S(A|B) = S(AB) − S(B)`, where `cut` is the index (0 or 1) of subsystem B.
pub fn conditional_entropy(rho_ab: &DenseOperator, cut: usize) -> Result<f64> {
    if rho_ab.dims().len() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "conditional entropy needs a bipartite state, got dims {:?}",
            rho_ab.dims()
        )));
    }
    if cut > 1 {
        return Err(Error::SubsystemIndex { index: cut, count: 2 });
    }
    Ok(von_neumann(rho_ab)? - von_neumann(&partial_trace(rho_ab, &[cut])?)?)
}

/// `χ = S(Σ p_x ρ_x) − Σ p_x S(ρ_x)`.
pub fn holevo_chi(e: &Ensemble) -> Result<f64> {
    let mut chi = von_neumann(&e.average())?;
    for (s, &p) in e.states().iter().zip(e.priors()) {
        chi -= p * von_neumann(s)?;
    }
    Ok(chi.max(0.0))
}

/// `Σ p_x S(ρ_x ‖ ρ̄)`.
pub fn holevo_chi_relative(e: &Ensemble) -> Result<f64> {
    let avg = e.average();
    let mut chi = 0.0;
    for (s, &p) in e.states().iter().zip(e.priors()) {
        if p > 0.0 {
            chi += p * relative_entropy(s, &avg)?;
        }
    }
    Ok(chi)
}

/// Eve's states on `span{e₁, e₂, e₃, e₄}` after intercepting BB84 bit `0` or `1` at error `ε`.
pub fn bb84_eve_ensemble(eps: f64) -> Result<Ensemble> {
    if !(0.0..=0.5).contains(&eps) {
        return Err(param("eps", eps, "error rate must lie in [0, 1/2]"));
    }
    let (a, b) = ((1.0 - eps).sqrt(), eps.sqrt());
    let vec4 = |v: [f64; 4]| {
        PureState::new(CVector::from_vec(v.iter().map(|&x| r(x)).collect()), vec![4])
    };
    let psi1_p = vec4([a, b, 0.0, 0.0])?;
    let psi1_m = vec4([a, -b, 0.0, 0.0])?;
    let psi2_p = vec4([0.0, 0.0, a, b])?;
    let psi2_m = vec4([0.0, 0.0, a, -b])?;
    let rho0 = &psi1_p.projector().scale(1.0 - eps) + &psi2_p.projector().scale(eps);
    let rho1 = &psi1_m.projector().scale(1.0 - eps) + &psi2_m.projector().scale(eps);
    ensure_density(&rho0)?;
    Ensemble::new(vec![rho0, rho1], vec![0.5, 0.5])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::{bell_state, spin_state, werner_state, BellKind};
    use crate::tensor::kron;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn von_neumann_examples() {
        assert!(von_neumann(&spin_state(0.3, 0.2).projector()).unwrap().abs() < 1e-12);
        assert!((von_neumann(&DenseOperator::maximally_mixed(&[2])).unwrap() - 1.0).abs() < 1e-15);
        for &w in &[0.0, 0.3, 0.8, 1.0] {
            let closed = shannon(&[
                (1.0 + 3.0 * w) / 4.0,
                (1.0 - w) / 4.0,
                (1.0 - w) / 4.0,
                (1.0 - w) / 4.0,
            ]);
            let s = von_neumann(&werner_state(w).unwrap()).unwrap();
            assert!((s - closed).abs() < 1e-12);
        }
        assert!(von_neumann(&crate::qubit::sigma_x()).is_err());
    }

    #[test]
    fn relative_entropy_examples() {
        let rho = crate::random::mixed_state(&[2], &mut ChaCha8Rng::seed_from_u64(2));
        assert!(relative_entropy(&rho, &rho).unwrap().abs() < 1e-12);
        let zero = PureState::basis(&[2], 0).projector();
        let half = DenseOperator::maximally_mixed(&[2]);
        assert!((relative_entropy(&zero, &half).unwrap() - 1.0).abs() < 1e-14);
        let plus = spin_state(std::f64::consts::FRAC_PI_2, 0.0).projector();
        assert_eq!(relative_entropy(&zero, &plus).unwrap(), f64::INFINITY);
    }

    #[test]
    fn conditional_entropy_examples() {
        let phi = bell_state(BellKind::PhiPlus).projector();
        assert!((conditional_entropy(&phi, 1).unwrap() + 1.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = crate::random::mixed_state(&[2], &mut rng);
        let b = crate::random::mixed_state(&[3], &mut rng);
        let s = conditional_entropy(&kron(&a, &b), 1).unwrap();
        assert!((s - von_neumann(&a).unwrap()).abs() < 1e-12);
        let classical = &PureState::basis(&[2, 2], 0).projector().scale(0.5)
            + &PureState::basis(&[2, 2], 3).projector().scale(0.5);
        assert!(conditional_entropy(&classical, 1).unwrap().abs() < 1e-12);
        assert!(conditional_entropy(&DenseOperator::maximally_mixed(&[2, 2, 2]), 1).is_err());
        assert!(conditional_entropy(&phi, 2).is_err());
    }

    #[test]
    fn holevo_examples() {
        let s = spin_state(1.0, 0.5).projector();
        let e = Ensemble::equiprobable(vec![s.clone(), s]).unwrap();
        assert!(holevo_chi(&e).unwrap().abs() < 1e-12);
        let e = Ensemble::equiprobable(vec![
            PureState::basis(&[2], 0).projector(),
            PureState::basis(&[2], 1).projector(),
        ])
        .unwrap();
        assert!((holevo_chi(&e).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bb84_examples() {
        assert!(holevo_chi(&bb84_eve_ensemble(0.0).unwrap()).unwrap().abs() < 1e-12);
        assert!((holevo_chi(&bb84_eve_ensemble(0.5).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let h = binary_entropy(0.11);
        assert!((h - 0.4999).abs() < 1e-4);
        assert!((holevo_chi(&bb84_eve_ensemble(0.11).unwrap()).unwrap() - h).abs() < 1e-10);
        assert!(bb84_eve_ensemble(0.6).is_err());
    }
}
