//! Local-polytope membership for eight-entry tables.

use serde::Serialize;

use super::simplex;
use super::table::{deterministic_behavior, facet_values, DeterministicStrategy, NsTable};
use crate::error::{Error, Result};

/// Phase-I optimum below which the program counts as feasible.
pub const LP_TOL: f64 = 1e-9;
/// Facet value above which a table counts as violating.
pub const FACET_TOL: f64 = 1e-9;
/// Required agreement between a decomposition and its target table.
pub const REPRODUCTION_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MembershipResult {
    /// Weights over `DeterministicStrategy::all()`.
    Local { weights: Vec<f64> },
    /// Index into `ch_symmetries()` and its value.
    Nonlocal { facet: usize, violation: f64 },
}

impl MembershipResult {
    pub fn is_local(&self) -> bool {
        matches!(self, MembershipResult::Local { .. })
    }
}

fn constraint_rows(vertices: &[NsTable]) -> Vec<Vec<f64>> {
    let cols: Vec<[f64; 8]> = vertices.iter().map(NsTable::to_array).collect();
    let mut rows: Vec<Vec<f64>> = (0..8).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    rows.push(vec![1.0; vertices.len()]);
    rows
}

/// Convex weights over `vertices` reproducing `x`, if any.
pub fn convex_weights(x: &NsTable, vertices: &[NsTable]) -> Option<Vec<f64>> {
    let mut b = x.to_array().to_vec();
    b.push(1.0);
    simplex::feasible(&constraint_rows(vertices), &b, LP_TOL)
}

pub fn vertices() -> Vec<NsTable> {
    DeterministicStrategy::all()
        .into_iter()
        .map(deterministic_behavior)
        .collect()
}

/// LP feasibility against the sixteen deterministic tables.
pub fn lp_feasible(x: &NsTable) -> Option<Vec<f64>> {
    convex_weights(x, &vertices())
}

/// `Σ w_k D_k`.
pub fn mix(weights: &[f64], vertices: &[NsTable]) -> NsTable {
    let mut out = NsTable {
        m_a: [0.0; 2],
        m_b: [0.0; 2],
        j: [[0.0; 2]; 2],
    };
    for (w, v) in weights.iter().zip(vertices) {
        for k in 0..2 {
            out.m_a[k] += w * v.m_a[k];
            out.m_b[k] += w * v.m_b[k];
            for l in 0..2 {
                out.j[k][l] += w * v.j[k][l];
            }
        }
    }
    out
}

/// Most violated facet and its value.
pub fn max_violation(x: &NsTable) -> (usize, f64) {
    facet_values(x)
        .into_iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (k, v)| if v > best.1 { (k, v) } else { best })
}

/// Solves the membership program and cross-checks it against the eight CH facets.
pub fn local_membership(x: &NsTable) -> Result<MembershipResult> {
    let x = NsTable::new(x.m_a, x.m_b, x.j)?;
    let verts = vertices();
    let (facet, violation) = max_violation(&x);
    match convex_weights(&x, &verts) {
        Some(weights) => {
            let err = mix(&weights, &verts).max_abs_diff(&x);
            if err > REPRODUCTION_TOL {
                return Err(Error::Inconsistent(format!(
                    "vertex weights reproduce the table only to {err:.3e}"
                )));
            }
            if violation > FACET_TOL {
                return Err(Error::Inconsistent(format!(
                    "feasible table violates facet {facet} by {violation:.3e}"
                )));
            }
            Ok(MembershipResult::Local { weights })
        }
        None => {
            if violation <= FACET_TOL {
                return Err(Error::Inconsistent(format!(
                    "infeasible table satisfies every facet (max value {violation:.3e})"
                )));
            }
            Ok(MembershipResult::Nonlocal { facet, violation })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::table::{me_table, pr_box};

    #[test]
    fn uniform_is_local() {
        let r = local_membership(&NsTable::uniform()).unwrap();
        assert!(r.is_local());
        let uniform = vec![1.0 / 16.0; 16];
        assert!(mix(&uniform, &vertices()).max_abs_diff(&NsTable::uniform()) < 1e-15);
    }

    #[test]
    fn pr_and_me_are_nonlocal() {
        assert_eq!(
            local_membership(&pr_box(false, false, false)).unwrap(),
            MembershipResult::Nonlocal { facet: 0, violation: 0.5 }
        );
        match local_membership(&me_table()).unwrap() {
            MembershipResult::Nonlocal { facet, violation } => {
                assert_eq!(facet, 0);
                assert!((violation - (std::f64::consts::FRAC_1_SQRT_2 - 0.5)).abs() < 1e-15);
            }
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn vertices_are_extreme() {
        let verts = vertices();
        for k in 0..16 {
            let others: Vec<NsTable> = verts
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, v)| *v)
                .collect();
            assert!(convex_weights(&verts[k], &others).is_none());
            match local_membership(&verts[k]).unwrap() {
                MembershipResult::Local { weights } => {
                    assert!((weights[k] - 1.0).abs() < 1e-12);
                }
                r => panic!("{r:?}"),
            }
        }
    }

    #[test]
    fn json_tagging() {
        let s = serde_json::to_string(&MembershipResult::Nonlocal { facet: 3, violation: 0.5 }).unwrap();
        assert_eq!(s, r#"{"kind":"nonlocal","facet":3,"violation":0.5}"#);
    }
}
