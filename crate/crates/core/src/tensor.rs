//! Dense operators and state vectors on tensor-product Hilbert spaces.
//!
//! Subsystems are ordered left to right: `dims = [dA, dB, ...]` means the
//! matrix acts on `A ⊗ B ⊗ ...` with `A` as the most significant index.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Absolute tolerance for structural checks (Hermiticity, trace, norm).
pub const STRUCT_TOL: f64 = 1e-9;

/// Eigenvalues in `[-STRUCT_TOL, 0)` are treated as zero.
pub const CLAMP_TOL: f64 = STRUCT_TOL;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn r(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn check_dims(dims: &[usize], side: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims must be nonempty and positive, got {dims:?}"
        )));
    }
    let prod: usize = dims.iter().product();
    if prod != side {
        return Err(Error::DimensionMismatch(format!(
            "product of dims {dims:?} is {prod}, expected {side}"
        )));
    }
    Ok(())
}

/// Square complex matrix tagged with its subsystem dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct DenseOperator {
    mat: CMatrix,
    dims: Vec<usize>,
}

impl DenseOperator {
    pub fn new(mat: CMatrix, dims: Vec<usize>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, not square",
                mat.nrows(),
                mat.ncols()
            )));
        }
        check_dims(&dims, mat.nrows())?;
        Ok(Self { mat, dims })
    }

    /// Single-subsystem operator from a square matrix.
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        let n = mat.nrows();
        Self::new(mat, vec![n])
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real(dims: Vec<usize>, rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut mat = CMatrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                mat[(i, j)] = r(v);
            }
        }
        Self::new(mat, dims)
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self {
            mat: CMatrix::identity(n, n),
            dims: dims.to_vec(),
        }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self {
            mat: CMatrix::zeros(n, n),
            dims: dims.to_vec(),
        }
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dims: &[usize]) -> Self {
        let id = Self::identity(dims);
        let d = id.dim() as f64;
        id.scale(1.0 / d)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        Self::new(self.mat.clone(), dims)
    }

    pub fn dagger(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
            dims: self.dims.clone(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        self.scale_c(r(s))
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self {
            mat: &self.mat * s,
            dims: self.dims.clone(),
        }
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, u: &DenseOperator) -> Self {
        Self {
            mat: &u.mat * &self.mat * u.mat.adjoint(),
            dims: u.dims.clone(),
        }
    }

    /// `Tr(self · other)`.
    pub fn trace_product(&self, other: &DenseOperator) -> C64 {
        let n = self.dim();
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.mat[(i, k)] * other.mat[(k, i)];
            }
        }
        acc
    }

    /// Real part of `Tr(self · other)`; for Hermitian pairs this is the expectation value.
    pub fn expect(&self, observable: &DenseOperator) -> f64 {
        self.trace_product(observable).re
    }

    /// `⟨ψ|self|ψ⟩`.
    pub fn sandwich(&self, psi: &PureState) -> C64 {
        psi.vec.dotc(&(&self.mat * &psi.vec))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        (&self.mat - &other.mat)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &DenseOperator, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Hermitian part `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            mat: (&self.mat + self.mat.adjoint()) * r(0.5),
            dims: self.dims.clone(),
        }
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &DenseOperator) -> Self {
        self * other - other * self
    }
}

impl fmt::Display for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dims {:?}", self.dims)?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.mat[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  {}", row.join("  "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &'a DenseOperator) -> DenseOperator {
        DenseOperator {
            mat: &self.mat * &rhs.mat,
            dims: self.dims.clone(),
        }
    }
}

impl<'a> Add<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &'a DenseOperator) -> DenseOperator {
        DenseOperator {
            mat: &self.mat + &rhs.mat,
            dims: self.dims.clone(),
        }
    }
}

impl<'a> Sub<&'a DenseOperator> for &'a DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &'a DenseOperator) -> DenseOperator {
        DenseOperator {
            mat: &self.mat - &rhs.mat,
            dims: self.dims.clone(),
        }
    }
}

impl Sub for DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: DenseOperator) -> DenseOperator {
        &self - &rhs
    }
}

impl Add for DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: DenseOperator) -> DenseOperator {
        &self + &rhs
    }
}

impl Mul for DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: DenseOperator) -> DenseOperator {
        &self * &rhs
    }
}

/// Sum of operators sharing the dims of the first term.
pub fn sum_ops<'a>(ops: impl IntoIterator<Item = &'a DenseOperator>) -> Option<DenseOperator> {
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, op| &acc + op))
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    dims: Vec<usize>,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl From<DenseOperator> for OperatorRepr {
    fn from(op: DenseOperator) -> Self {
        let n = op.dim();
        let re = (0..n)
            .map(|i| (0..n).map(|j| op.mat[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..n).map(|j| op.mat[(i, j)].im).collect())
            .collect();
        OperatorRepr {
            dims: op.dims,
            re,
            im,
        }
    }
}

impl TryFrom<OperatorRepr> for DenseOperator {
    type Error = Error;
    fn try_from(repr: OperatorRepr) -> Result<Self> {
        let n = repr.re.len();
        if repr.im.len() != n
            || repr.re.iter().any(|row| row.len() != n)
            || repr.im.iter().any(|row| row.len() != n)
        {
            return Err(Error::DimensionMismatch(
                "re/im must be square arrays of equal shape".into(),
            ));
        }
        let mat = CMatrix::from_fn(n, n, |i, j| c(repr.re[i][j], repr.im[i][j]));
        DenseOperator::new(mat, repr.dims)
    }
}

/// Normalized state vector tagged with its subsystem dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct PureState {
    vec: CVector,
    dims: Vec<usize>,
}

impl PureState {
    /// Requires unit norm within [`STRUCT_TOL`].
    pub fn new(vec: CVector, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, vec.len())?;
        let norm = vec.norm();
        if (norm - 1.0).abs() > STRUCT_TOL {
            return Err(Error::InvalidState(format!("state norm is {norm}, expected 1")));
        }
        Ok(Self { vec, dims })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(vec: CVector, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, vec.len())?;
        let norm = vec.norm();
        if norm < 1e-300 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Ok(Self {
            vec: vec / r(norm),
            dims,
        })
    }

    pub fn from_amplitudes(dims: Vec<usize>, amps: &[C64]) -> Result<Self> {
        Self::new(CVector::from_column_slice(amps), dims)
    }

    pub fn basis(dims: &[usize], index: usize) -> Self {
        let n: usize = dims.iter().product();
        assert!(index < n, "basis index {index} out of range {n}");
        let mut vec = CVector::zeros(n);
        vec[index] = ONE;
        Self {
            vec,
            dims: dims.to_vec(),
        }
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.vec
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> C64 {
        self.vec.dotc(&other.vec)
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap_sq(&self, other: &PureState) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn projector(&self) -> DenseOperator {
        DenseOperator {
            mat: &self.vec * self.vec.adjoint(),
            dims: self.dims.clone(),
        }
    }

    pub fn apply(&self, u: &DenseOperator) -> Result<Self> {
        Self::normalized(&u.mat * &self.vec, u.dims.clone())
    }

    pub fn conj(&self) -> Self {
        Self {
            vec: self.vec.map(|z| z.conj()),
            dims: self.dims.clone(),
        }
    }

    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        (&self.vec - &other.vec)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    dims: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl From<PureState> for StateRepr {
    fn from(s: PureState) -> Self {
        StateRepr {
            re: s.vec.iter().map(|z| z.re).collect(),
            im: s.vec.iter().map(|z| z.im).collect(),
            dims: s.dims,
        }
    }
}

impl TryFrom<StateRepr> for PureState {
    type Error = Error;
    fn try_from(repr: StateRepr) -> Result<Self> {
        if repr.re.len() != repr.im.len() {
            return Err(Error::DimensionMismatch("re/im length differ".into()));
        }
        let vec = CVector::from_iterator(
            repr.re.len(),
            repr.re.iter().zip(&repr.im).map(|(&a, &b)| c(a, b)),
        );
        PureState::new(vec, repr.dims)
    }
}

/// Tensor product `a ⊗ b`; dims concatenate.
pub fn kron(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    DenseOperator {
        mat: a.mat.kronecker(&b.mat),
        dims,
    }
}

pub fn kron_all<'a>(ops: impl IntoIterator<Item = &'a DenseOperator>) -> Option<DenseOperator> {
    let mut it = ops.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, op| kron(&acc, op)))
}

pub fn kron_state(a: &PureState, b: &PureState) -> PureState {
    let mut dims = a.dims.clone();
    dims.extend_from_slice(&b.dims);
    PureState {
        vec: a.vec.kronecker(&b.vec),
        dims,
    }
}

pub fn kron_states<'a>(states: impl IntoIterator<Item = &'a PureState>) -> Option<PureState> {
    let mut it = states.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, s| kron_state(&acc, s)))
}

/// Digits of `index` in the mixed radix `dims`, most significant first.
pub fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
    out
}

fn compose(digits: impl IntoIterator<Item = (usize, usize)>) -> usize {
    digits.into_iter().fold(0, |acc, (d, radix)| acc * radix + d)
}

fn normalize_selection(keep: &[usize], count: usize) -> Result<Vec<usize>> {
    let mut sel = keep.to_vec();
    sel.sort_unstable();
    for w in sel.windows(2) {
        if w[0] == w[1] {
            return Err(Error::SubsystemSelection(format!("duplicate index {}", w[0])));
        }
    }
    if let Some(&bad) = sel.iter().find(|&&k| k >= count) {
        return Err(Error::SubsystemIndex { index: bad, count });
    }
    Ok(sel)
}

/// Traces out every subsystem not listed in `keep`.
///
/// Kept subsystems stay in their original order.
pub fn partial_trace(rho: &DenseOperator, keep: &[usize]) -> Result<DenseOperator> {
    let dims = &rho.dims;
    let n = dims.len();
    let keep = normalize_selection(keep, n)?;
    if keep.is_empty() || keep.len() == n {
        return Err(Error::SubsystemSelection(
            "keep set must be a nonempty proper subset".into(),
        ));
    }
    let traced: Vec<usize> = (0..n).filter(|k| !keep.contains(k)).collect();
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced_dim: usize = traced.iter().map(|&k| dims[k]).product();
    let out_dim: usize = kept_dims.iter().product();

    // Group full indices by their traced part.
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::new(); traced_dim];
    for full in 0..rho.dim() {
        let d = digits(full, dims);
        let ki = compose(keep.iter().map(|&k| (d[k], dims[k])));
        let ti = compose(traced.iter().map(|&k| (d[k], dims[k])));
        groups[ti].push((full, ki));
    }
    let mut out = CMatrix::zeros(out_dim, out_dim);
    for group in &groups {
        for &(ra, ka) in group {
            for &(rb, kb) in group {
                out[(ka, kb)] += rho.mat[(ra, rb)];
            }
        }
    }
    DenseOperator::new(out, kept_dims)
}

/// Reorders subsystems: output factor `k` is input factor `perm[k]`.
pub fn permute_subsystems(rho: &DenseOperator, perm: &[usize]) -> Result<DenseOperator> {
    let n = rho.dims.len();
    let sorted = normalize_selection(perm, n)?;
    if sorted.len() != n {
        return Err(Error::SubsystemSelection(format!(
            "{perm:?} is not a permutation of {n} subsystems"
        )));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&k| rho.dims[k]).collect();
    let map: Vec<usize> = (0..rho.dim())
        .map(|full| {
            let d = digits(full, &rho.dims);
            compose(perm.iter().map(|&k| (d[k], rho.dims[k])))
        })
        .collect();
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for i in 0..rho.dim() {
        for j in 0..rho.dim() {
            out[(map[i], map[j])] = rho.mat[(i, j)];
        }
    }
    DenseOperator::new(out, new_dims)
}

/// `I ⊗ ... ⊗ op ⊗ ... ⊗ I` with `op` on subsystem `target`.
pub fn embed(op: &DenseOperator, target: usize, dims: &[usize]) -> Result<DenseOperator> {
    if target >= dims.len() {
        return Err(Error::SubsystemIndex {
            index: target,
            count: dims.len(),
        });
    }
    if op.dim() != dims[target] {
        return Err(Error::DimensionMismatch(format!(
            "operator of dim {} on subsystem of dim {}",
            op.dim(),
            dims[target]
        )));
    }
    let left: usize = dims[..target].iter().product();
    let right: usize = dims[target + 1..].iter().product();
    let mat = CMatrix::identity(left, left)
        .kronecker(&op.mat)
        .kronecker(&CMatrix::identity(right, right));
    DenseOperator::new(mat, dims.to_vec())
}

/// Eigenvalues in descending order with matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.eigenvectors.column(k).into_owned()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    /// `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let mut out = CMatrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            let v = self.eigenvectors.column(k);
            out += (v * v.adjoint()) * r(w);
        }
        out
    }

    /// Projector onto the span of eigenspaces whose eigenvalue satisfies `pred`.
    ///
    /// Basis-free as long as `pred` depends only on the eigenvalue.
    pub fn spectral_projector(&self, pred: impl Fn(f64) -> bool) -> CMatrix {
        self.map_spectrum(|l| if pred(l) { 1.0 } else { 0.0 })
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_spectrum(|l| l)
    }
}

/// Eigendecomposition of a Hermitian operator.
pub fn eig_hermitian(h: &DenseOperator) -> Result<EigenDecomposition> {
    let defect = h.hermiticity_defect();
    if defect > STRUCT_TOL {
        return Err(Error::NotHermitian { defect });
    }
    Ok(eig_of_matrix(&h.hermitian_part().mat))
}

pub(crate) fn eig_of_matrix(m: &CMatrix) -> EigenDecomposition {
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut eigenvectors = CMatrix::zeros(m.nrows(), m.ncols());
    for (col, &k) in order.iter().enumerate() {
        eigenvectors.set_column(col, &se.eigenvectors.column(k));
    }
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// `Tr|A|` for Hermitian `A`.
pub fn trace_norm(a: &DenseOperator) -> Result<f64> {
    Ok(eig_hermitian(a)?.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Diagnostics of how far `m` is from a density matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    /// Minimum eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    pub valid: bool,
}

pub fn validate_state(m: &DenseOperator, tol: f64) -> ValidationReport {
    let hermiticity_defect = m.hermiticity_defect();
    let trace_defect = (m.trace() - ONE).norm();
    let min_eigenvalue = eig_of_matrix(&m.hermitian_part().mat).min();
    ValidationReport {
        hermiticity_defect,
        trace_defect,
        min_eigenvalue,
        valid: hermiticity_defect <= tol && trace_defect <= tol && min_eigenvalue >= -tol,
    }
}

/// Errors unless `rho` is a density matrix within [`STRUCT_TOL`].
pub fn ensure_density(rho: &DenseOperator) -> Result<()> {
    let rep = validate_state(rho, STRUCT_TOL);
    if rep.valid {
        return Ok(());
    }
    Err(Error::InvalidState(format!(
        "hermiticity defect {:.3e}, trace defect {:.3e}, min eigenvalue {:.3e}",
        rep.hermiticity_defect, rep.trace_defect, rep.min_eigenvalue
    )))
}

/// Spectrum of a density matrix with small negative eigenvalues clamped to zero.
pub fn density_spectrum(rho: &DenseOperator) -> Result<EigenDecomposition> {
    ensure_density(rho)?;
    let mut eig = eig_hermitian(rho)?;
    for l in &mut eig.eigenvalues {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// Eigenvalue threshold below which a density matrix direction counts as outside the support.
pub const RANK_TOL: f64 = 1e-12;

/// Purification on `system ⊗ ancilla` with ancilla dimension equal to the rank.
pub fn purify(rho: &DenseOperator) -> Result<PureState> {
    let eig = density_spectrum(rho)?;
    let rank = eig
        .eigenvalues
        .iter()
        .filter(|&&l| l > RANK_TOL)
        .count()
        .max(1);
    let n = rho.dim();
    let mut vec = CVector::zeros(n * rank);
    for k in 0..rank {
        let w = eig.eigenvalues[k].max(0.0).sqrt();
        let v = eig.eigenvectors.column(k);
        for i in 0..n {
            vec[i * rank + k] += v[i] * r(w);
        }
    }
    let mut dims = rho.dims.clone();
    dims.push(rank);
    PureState::normalized(vec, dims)
}

/// `|⟨ψ|ρ|ψ⟩|` as a real fidelity.
pub fn fidelity_pure(psi: &PureState, rho: &DenseOperator) -> f64 {
    rho.sandwich(psi).re
}
