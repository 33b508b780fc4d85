//! Random states, unitaries and directions for tests, sampling and benches.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::bell::{self, mix, NsTable};

use crate::tensor::{c, CMatrix, CVector, DenseOperator, PureState, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    c(re, im)
}

/// Uniformly distributed unit vector in R³.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-12 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Haar-random pure state.
pub fn pure_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState {
    let n: usize = dims.iter().product();
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    PureState::normalized(v, dims.to_vec()).expect("gaussian vector is nonzero")
}

/// Haar-random unitary via QR of a Ginibre matrix with phase correction.
pub fn unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DenseOperator {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, rm) = (qr.q(), qr.r());
    for j in 0..d {
        let phase = rm[(j, j)] / rm[(j, j)].norm();
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    DenseOperator::from_matrix(q).expect("square")
}

/// Random density matrix `G G† / Tr(G G†)` with `G` a `d × rank` Ginibre matrix.
pub fn density<R: Rng + ?Sized>(dims: &[usize], rank: usize, rng: &mut R) -> DenseOperator {
    let n: usize = dims.iter().product();
    let g = CMatrix::from_fn(n, rank.max(1), |_, _| gaussian(rng));
    let m = &g * g.adjoint();
    let t = m.trace();
    DenseOperator::new(m / t, dims.to_vec()).expect("dims match")
}

/// Full-rank random density matrix.
pub fn mixed_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> DenseOperator {
    let n = dims.iter().product();
    density(dims, n, rng)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DenseOperator {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    DenseOperator::from_matrix((&g + g.adjoint()) * c(0.5, 0.0)).expect("square")
}

fn dirichlet<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|v| v / total).collect()
}

/// Random no-signaling table: Fréchet-uniform entries, a flat mixture of all
/// deterministic tables and PR boxes, or a PR box diluted by local noise.
pub fn ns_table<R: Rng + ?Sized>(rng: &mut R) -> NsTable {
    match rng.gen_range(0..3) {
        0 => {
            let m_a = [rng.gen::<f64>(), rng.gen::<f64>()];
            let m_b = [rng.gen::<f64>(), rng.gen::<f64>()];
            let j = std::array::from_fn(|x| {
                std::array::from_fn(|y| {
                    let lo = (m_a[x] + m_b[y] - 1.0).max(0.0);
                    let hi = m_a[x].min(m_b[y]);
                    lo + rng.gen::<f64>() * (hi - lo)
                })
            });
            NsTable { m_a, m_b, j }
        }
        1 => {
            let mut points = bell::vertices();
            points.extend(bell::pr_boxes());
            mix(&dirichlet(points.len(), rng), &points)
        }
        _ => {
            let k = rng.gen_range(0..8);
            let p: f64 = rng.gen();
            let verts = bell::vertices();
            let mut weights: Vec<f64> = dirichlet(verts.len(), rng)
                .into_iter()
                .map(|w| (1.0 - p) * w)
                .collect();
            let mut points = verts;
            points.push(bell::pr_boxes()[k]);
            weights.push(p);
            mix(&weights, &points)
        }
    }
}
