//! Local-variable models, the GHZ contradiction, box cloning and a coordination game.

use rand::Rng;
use rand_distr::{Distribution, UnitSphere};
use serde::Serialize;

use super::table::GeneralBehavior;
use crate::error::{Error, Result};
use crate::qubit::{dot, ghz_state, pauli_string, BlochVector, MeasurementDirection};

/// `sign((m − λ)·a)` with `sign(0) = +1`.
pub fn lv_outcome(a: &MeasurementDirection, m: &BlochVector, lambda: [f64; 3]) -> f64 {
    let d = [m.0[0] - lambda[0], m.0[1] - lambda[1], m.0[2] - lambda[2]];
    if dot(d, a.vector()) >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Monte-Carlo mean of the single-qubit local-variable outcome with `λ` uniform on the sphere.
pub fn singlet_lv_model<R: Rng + ?Sized>(
    a: &MeasurementDirection,
    m: &BlochVector,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if samples == 0 {
        return Err(crate::error::param("samples", 0.0, "need at least one sample"));
    }
    let m = BlochVector::new(m.0)?;
    let mut total = 0.0;
    for _ in 0..samples {
        let lambda: [f64; 3] = UnitSphere.sample(rng);
        total += lv_outcome(a, &m, lambda);
    }
    Ok(total / samples as f64)
}

pub const GHZ_STRINGS: [&str; 4] = ["XXX", "XYY", "YXY", "YYX"];
pub const GHZ_TARGETS: [i8; 4] = [1, -1, -1, -1];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GhzReport {
    pub expectations: [f64; 4],
    pub assignments: usize,
    pub satisfying: usize,
    /// Largest number of the four constraints met by one assignment.
    pub best_satisfied: usize,
    /// Whether the product of the four constraint left-hand sides is `+1` for every assignment.
    pub product_always_plus: bool,
}

/// Quantum values `⟨XXX⟩, ⟨XYY⟩, ⟨YXY⟩, ⟨YYX⟩` and the exhaustive search over `±1` assignments.
pub fn ghz_paradox() -> GhzReport {
    let ghz = ghz_state().projector();
    let expectations =
        GHZ_STRINGS.map(|s| ghz.expect(&pauli_string(s).expect("valid Pauli string")));
    let mut satisfying = 0;
    let mut best_satisfied = 0;
    let mut product_always_plus = true;
    for bits in 0..64u32 {
        // (a_X, a_Y, b_X, b_Y, c_X, c_Y)
        let v: [i8; 6] = std::array::from_fn(|k| if bits >> k & 1 == 0 { 1 } else { -1 });
        let pick = |party: usize, c: u8| v[2 * party + usize::from(c == b'Y')];
        let lhs = GHZ_STRINGS.map(|s| {
            let s = s.as_bytes();
            pick(0, s[0]) * pick(1, s[1]) * pick(2, s[2])
        });
        let met = lhs.iter().zip(GHZ_TARGETS).filter(|(l, t)| **l == *t).count();
        if met == 4 {
            satisfying += 1;
        }
        best_satisfied = best_satisfied.max(met);
        product_always_plus &= lhs.iter().product::<i8>() == 1;
    }
    GhzReport {
        expectations,
        assignments: 64,
        satisfying,
        best_satisfied,
        product_always_plus,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrCloneReport {
    /// `b⊕b′ = x(y⊕y′)` on the whole support.
    pub parity_rule_holds: bool,
    /// Bob recovers `x` from `(b, b′, y, y′)` whenever `y ≠ y′`.
    pub inference_correct: bool,
    /// `b = b′` on the whole support when `y = y′`.
    pub equal_inputs_equal_outputs: bool,
    /// Dependence of the `(B, B′)` marginal on `x`.
    pub signaling_defect: f64,
    pub no_signaling: bool,
}

/// `P(a, b, b′ | x, y, y′) = 1/2` on `b = a⊕xy`, `b′ = a⊕xy′`.
pub fn pr_clone_distribution(a: usize, b: usize, b2: usize, x: usize, y: usize, y2: usize) -> f64 {
    if b == a ^ (x & y) && b2 == a ^ (x & y2) {
        0.5
    } else {
        0.0
    }
}

/// Checks that two PR boxes sharing Alice's end let Bob read her input.
pub fn pr_clone_signaling() -> PrCloneReport {
    // Bob holds (y, y′) → input 2y + y′ and (b, b′) → output 2b + b′
    let bip = GeneralBehavior::from_fn([2, 4, 2, 4], |x, yy, a, bb| {
        pr_clone_distribution(a, bb >> 1, bb & 1, x, yy >> 1, yy & 1)
    });
    let mut parity_rule_holds = true;
    let mut inference_correct = true;
    let mut equal_inputs_equal_outputs = true;
    for x in 0..2 {
        for y in 0..2 {
            for y2 in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        for b2 in 0..2 {
                            if pr_clone_distribution(a, b, b2, x, y, y2) == 0.0 {
                                continue;
                            }
                            parity_rule_holds &= b ^ b2 == x & (y ^ y2);
                            if y != y2 {
                                inference_correct &= b ^ b2 == x;
                            } else {
                                equal_inputs_equal_outputs &= b == b2;
                            }
                        }
                    }
                }
            }
        }
    }
    let signaling_defect = bip.signaling_to_b();
    PrCloneReport {
        parity_rule_holds,
        inference_correct,
        equal_inputs_equal_outputs,
        signaling_defect,
        no_signaling: bip.signaling_defect() <= 1e-9,
    }
}

/// Upper bound on `(n_outputs^n_inputs)²` for the exhaustive search.
pub const SEARCH_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameResult {
    pub winnable: bool,
    pub strategies: u128,
    /// `(Alice's outputs, Bob's outputs)` indexed by input.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn decode(mut k: u64, n_in: usize, n_out: u64, out: &mut [usize]) {
    for slot in out.iter_mut().take(n_in) {
        *slot = (k % n_out) as usize;
        k /= n_out;
    }
}

/// Searches deterministic strategies for outputs equal exactly when inputs are equal.
pub fn same_input_game(n_inputs: usize, n_outputs: usize) -> Result<GameResult> {
    if n_inputs == 0 || n_outputs == 0 {
        return Err(Error::InvalidBehavior(
            "input and output counts must be positive".into(),
        ));
    }
    let per_party = (n_outputs as u128)
        .checked_pow(n_inputs as u32)
        .unwrap_or(u128::MAX);
    let strategies = per_party.saturating_mul(per_party);
    if strategies > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge { size: strategies });
    }
    let per_party = per_party as u64;
    let mut f = vec![0usize; n_inputs];
    let mut g = vec![0usize; n_inputs];
    for i in 0..per_party {
        decode(i, n_inputs, n_outputs as u64, &mut f);
        for k in 0..per_party {
            decode(k, n_inputs, n_outputs as u64, &mut g);
            let wins = (0..n_inputs)
                .all(|x| (0..n_inputs).all(|y| (f[x] == g[y]) == (x == y)));
            if wins {
                return Ok(GameResult {
                    winnable: true,
                    strategies,
                    witness: Some((f, g)),
                });
            }
        }
    }
    Ok(GameResult {
        winnable: false,
        strategies,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lv_model_reproduces_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let z = MeasurementDirection::z();
        let n = 200_000;
        let tol = 4.0 / (n as f64).sqrt();
        let m0 = singlet_lv_model(&z, &BlochVector([0.0; 3]), n, &mut rng).unwrap();
        assert!(m0.abs() < tol);
        let m = singlet_lv_model(&z, &BlochVector([0.0, 0.0, 0.5]), n, &mut rng).unwrap();
        assert!((m - 0.5).abs() < tol);
        let a = MeasurementDirection::from_angles(1.1, 0.4);
        let pure = singlet_lv_model(&a, &BlochVector(a.vector()), 10_000, &mut rng).unwrap();
        assert_eq!(pure, 1.0);
        assert!(singlet_lv_model(&z, &BlochVector([0.0, 0.0, 1.5]), 10, &mut rng).is_err());
    }

    #[test]
    fn ghz_contradiction() {
        let r = ghz_paradox();
        for (e, t) in r.expectations.iter().zip(GHZ_TARGETS) {
            assert!((e - f64::from(t)).abs() < 1e-12);
        }
        assert_eq!(r.satisfying, 0);
        assert_eq!(r.best_satisfied, 3);
        assert!(r.product_always_plus);
        assert_eq!(GHZ_TARGETS.iter().product::<i8>(), -1);
    }

    #[test]
    fn box_cloning_signals() {
        let r = pr_clone_signaling();
        assert!(r.parity_rule_holds);
        assert!(r.inference_correct);
        assert!(r.equal_inputs_equal_outputs);
        assert!(!r.no_signaling);
        assert!((r.signaling_defect - 0.5).abs() < 1e-15);
    }

    #[test]
    fn same_input_game_rule() {
        assert!(same_input_game(2, 2).unwrap().winnable);
        assert!(!same_input_game(3, 2).unwrap().winnable);
        let r = same_input_game(3, 3).unwrap();
        assert!(r.winnable);
        let (f, g) = r.witness.unwrap();
        assert_eq!(f, g);
        for n_in in 1..=4 {
            for n_out in 1..=4 {
                let r = same_input_game(n_in, n_out).unwrap();
                assert_eq!(r.winnable, n_out >= n_in, "({n_in},{n_out})");
            }
        }
        assert!(matches!(same_input_game(6, 6), Err(Error::SearchTooLarge { .. })));
        assert!(same_input_game(0, 2).is_err());
    }
}
