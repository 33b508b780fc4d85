//! Behaviors and eight-entry no-signaling tables for two inputs and two outputs per party.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::STRUCT_TOL;

/// Tolerance for treating marginals as input independent.
pub const NS_TOL: f64 = 1e-7;

fn bit(v: usize) -> usize {
    v & 1
}

/// Conditional distributions `p(a, b | A, B)` stored flat in `(a, b, A, B)` order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Behavior {
    p: [f64; 16],
}

impl Behavior {
    pub fn index(a: usize, b: usize, x: usize, y: usize) -> usize {
        ((bit(a) * 2 + bit(b)) * 2 + bit(x)) * 2 + bit(y)
    }

    pub fn new(p: [f64; 16]) -> Result<Self> {
        for x in 0..2 {
            for y in 0..2 {
                let mut total = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        let v = p[Self::index(a, b, x, y)];
                        if !(v >= -STRUCT_TOL) {
                            return Err(Error::InvalidBehavior(format!(
                                "p({a},{b}|{x},{y}) = {v} is negative"
                            )));
                        }
                        total += v;
                    }
                }
                if (total - 1.0).abs() > STRUCT_TOL {
                    return Err(Error::InvalidBehavior(format!(
                        "distribution for inputs ({x},{y}) sums to {total}"
                    )));
                }
            }
        }
        Ok(Self { p })
    }

    /// Builds from `f(a, b, A, B)`.
    pub fn from_fn(f: impl Fn(usize, usize, usize, usize) -> f64) -> Result<Self> {
        let mut p = [0.0; 16];
        for a in 0..2 {
            for b in 0..2 {
                for x in 0..2 {
                    for y in 0..2 {
                        p[Self::index(a, b, x, y)] = f(a, b, x, y);
                    }
                }
            }
        }
        Self::new(p)
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 16] }
    }

    pub fn get(&self, a: usize, b: usize, x: usize, y: usize) -> f64 {
        self.p[Self::index(a, b, x, y)]
    }

    pub fn probabilities(&self) -> &[f64; 16] {
        &self.p
    }

    /// `P(a=b) − P(a≠b)` for inputs `(A, B)`.
    pub fn correlator(&self, x: usize, y: usize) -> f64 {
        self.get(0, 0, x, y) + self.get(1, 1, x, y) - self.get(0, 1, x, y) - self.get(1, 0, x, y)
    }

    /// `E₀₀ + E₁₀ + E₀₁ − E₁₁`.
    pub fn chsh(&self) -> f64 {
        self.correlator(0, 0) + self.correlator(1, 0) + self.correlator(0, 1)
            - self.correlator(1, 1)
    }

    /// Flips Alice's outcome for each input `A` with `alice[A]` set, and likewise for Bob.
    pub fn relabel_outputs(&self, alice: [bool; 2], bob: [bool; 2]) -> Self {
        let mut p = [0.0; 16];
        for a in 0..2 {
            for b in 0..2 {
                for x in 0..2 {
                    for y in 0..2 {
                        let a2 = a ^ usize::from(alice[x]);
                        let b2 = b ^ usize::from(bob[y]);
                        p[Self::index(a2, b2, x, y)] = self.get(a, b, x, y);
                    }
                }
            }
        }
        Self { p }
    }

    pub fn general(&self) -> GeneralBehavior {
        GeneralBehavior::from_fn([2, 2, 2, 2], |x, y, a, b| self.get(a, b, x, y))
    }

    /// Largest violation of input independence of either marginal.
    pub fn signaling_defect(&self) -> f64 {
        self.general().signaling_defect()
    }

    pub fn is_no_signaling(&self, tol: f64) -> (bool, f64) {
        let d = self.signaling_defect();
        (d <= tol, d)
    }
}

impl TryFrom<Vec<f64>> for Behavior {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        let p: [f64; 16] = v
            .try_into()
            .map_err(|v: Vec<f64>| Error::InvalidBehavior(format!("{} entries, want 16", v.len())))?;
        Self::new(p)
    }
}

impl From<Behavior> for Vec<f64> {
    fn from(b: Behavior) -> Self {
        b.p.to_vec()
    }
}

/// Bipartite behavior with arbitrary finite input and output alphabets.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralBehavior {
    /// `[inputs A, inputs B, outputs A, outputs B]`.
    shape: [usize; 4],
    p: Vec<f64>,
}

impl GeneralBehavior {
    /// Builds from `f(x, y, a, b) = p(a, b | x, y)`.
    pub fn from_fn(shape: [usize; 4], f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let [nx, ny, na, nb] = shape;
        let mut p = Vec::with_capacity(nx * ny * na * nb);
        for x in 0..nx {
            for y in 0..ny {
                for a in 0..na {
                    for b in 0..nb {
                        p.push(f(x, y, a, b));
                    }
                }
            }
        }
        Self { shape, p }
    }

    pub fn shape(&self) -> [usize; 4] {
        self.shape
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        let [_, ny, na, nb] = self.shape;
        self.p[((x * ny + y) * na + a) * nb + b]
    }

    /// Alice's marginal `p(a | x, y)`.
    pub fn marginal_a(&self, x: usize, y: usize, a: usize) -> f64 {
        (0..self.shape[3]).map(|b| self.get(x, y, a, b)).sum()
    }

    /// Bob's marginal `p(b | x, y)`.
    pub fn marginal_b(&self, x: usize, y: usize, b: usize) -> f64 {
        (0..self.shape[2]).map(|a| self.get(x, y, a, b)).sum()
    }

    /// Max deviation of Alice's marginal across `y`.
    pub fn signaling_to_a(&self) -> f64 {
        let [nx, ny, na, _] = self.shape;
        let mut d: f64 = 0.0;
        for x in 0..nx {
            for a in 0..na {
                let first = self.marginal_a(x, 0, a);
                for y in 1..ny {
                    d = d.max((self.marginal_a(x, y, a) - first).abs());
                }
            }
        }
        d
    }

    /// Max deviation of Bob's marginal across `x`.
    pub fn signaling_to_b(&self) -> f64 {
        let [nx, ny, _, nb] = self.shape;
        let mut d: f64 = 0.0;
        for y in 0..ny {
            for b in 0..nb {
                let first = self.marginal_b(0, y, b);
                for x in 1..nx {
                    d = d.max((self.marginal_b(x, y, b) - first).abs());
                }
            }
        }
        d
    }

    pub fn signaling_defect(&self) -> f64 {
        self.signaling_to_a().max(self.signaling_to_b())
    }
}

#[derive(Deserialize)]
struct TableRepr {
    #[serde(rename = "mA")]
    m_a: [f64; 2],
    #[serde(rename = "mB")]
    m_b: [f64; 2],
    j: [[f64; 2]; 2],
}

/// `P_A(a=0)`, `P_B(b=0)` and `P_AB(0,0)` for each input.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr")]
pub struct NsTable {
    #[serde(rename = "mA")]
    pub m_a: [f64; 2],
    #[serde(rename = "mB")]
    pub m_b: [f64; 2],
    pub j: [[f64; 2]; 2],
}

impl TryFrom<TableRepr> for NsTable {
    type Error = Error;

    fn try_from(t: TableRepr) -> Result<Self> {
        Self::new(t.m_a, t.m_b, t.j)
    }
}

impl NsTable {
    /// Checks the range and Fréchet bounds of every entry.
    pub fn new(m_a: [f64; 2], m_b: [f64; 2], j: [[f64; 2]; 2]) -> Result<Self> {
        let t = Self { m_a, m_b, j };
        let tol = STRUCT_TOL;
        let in_unit = |v: f64| (-tol..=1.0 + tol).contains(&v);
        for x in 0..2 {
            for y in 0..2 {
                let (ma, mb, p) = (m_a[x], m_b[y], j[x][y]);
                if !(in_unit(ma) && in_unit(mb) && in_unit(p)) {
                    return Err(Error::InvalidBehavior(format!(
                        "table entries for inputs ({x},{y}) leave [0, 1]"
                    )));
                }
                if p > ma.min(mb) + tol || p < ma + mb - 1.0 - tol {
                    return Err(Error::InvalidBehavior(format!(
                        "joint {p} for inputs ({x},{y}) violates the Fréchet bounds of marginals {ma}, {mb}"
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn uniform() -> Self {
        Self {
            m_a: [0.5; 2],
            m_b: [0.5; 2],
            j: [[0.25; 2]; 2],
        }
    }

    /// Entries as `[mA₀, mA₁, mB₀, mB₁, j₀₀, j₀₁, j₁₀, j₁₁]`.
    pub fn to_array(&self) -> [f64; 8] {
        [
            self.m_a[0],
            self.m_a[1],
            self.m_b[0],
            self.m_b[1],
            self.j[0][0],
            self.j[0][1],
            self.j[1][0],
            self.j[1][1],
        ]
    }

    pub fn max_abs_diff(&self, other: &NsTable) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Swaps the roles of Alice's two inputs and/or Bob's two inputs.
    pub fn relabel_inputs(&self, flip_a: bool, flip_b: bool) -> Self {
        let fa = usize::from(flip_a);
        let fb = usize::from(flip_b);
        let mut out = *self;
        for x in 0..2 {
            out.m_a[x] = self.m_a[x ^ fa];
            out.m_b[x] = self.m_b[x ^ fb];
            for y in 0..2 {
                out.j[x][y] = self.j[x ^ fa][y ^ fb];
            }
        }
        out
    }

    /// `E_AB = 4 P_AB(0,0) − 2 P_A(0) − 2 P_B(0) + 1`.
    pub fn correlator(&self, x: usize, y: usize) -> f64 {
        4.0 * self.j[x][y] - 2.0 * self.m_a[x] - 2.0 * self.m_b[y] + 1.0
    }

    pub fn chsh(&self) -> f64 {
        self.correlator(0, 0) + self.correlator(1, 0) + self.correlator(0, 1)
            - self.correlator(1, 1)
    }
}

impl fmt::Display for NsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "        | {:>9.6} {:>9.6}", self.m_b[0], self.m_b[1])?;
        writeln!(f, "--------+--------------------")?;
        for x in 0..2 {
            writeln!(
                f,
                "{:>7.6} | {:>9.6} {:>9.6}",
                self.m_a[x], self.j[x][0], self.j[x][1]
            )?;
        }
        Ok(())
    }
}

/// Eight-parameter table of a no-signaling behavior.
pub fn behavior_to_table(b: &Behavior) -> Result<NsTable> {
    let defect = b.signaling_defect();
    if defect > NS_TOL {
        return Err(Error::Signaling { defect });
    }
    let mut t = NsTable::uniform();
    for x in 0..2 {
        t.m_a[x] = (0..2)
            .map(|y| b.get(0, 0, x, y) + b.get(0, 1, x, y))
            .sum::<f64>()
            / 2.0;
        t.m_b[x] = (0..2)
            .map(|a| b.get(0, 0, a, x) + b.get(1, 0, a, x))
            .sum::<f64>()
            / 2.0;
        for y in 0..2 {
            t.j[x][y] = b.get(0, 0, x, y);
        }
    }
    Ok(t)
}

pub fn table_to_behavior(t: &NsTable) -> Behavior {
    let mut p = [0.0; 16];
    for x in 0..2 {
        for y in 0..2 {
            let j = t.j[x][y];
            p[Behavior::index(0, 0, x, y)] = j;
            p[Behavior::index(0, 1, x, y)] = t.m_a[x] - j;
            p[Behavior::index(1, 0, x, y)] = t.m_b[y] - j;
            p[Behavior::index(1, 1, x, y)] = 1.0 - t.m_a[x] - t.m_b[y] + j;
        }
    }
    Behavior { p }
}

/// Local deterministic response `f(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Response {
    Zero,
    One,
    Copy,
    Flip,
}

impl Response {
    pub const ALL: [Response; 4] = [Response::Zero, Response::One, Response::Copy, Response::Flip];

    /// 1-based position in `f₁ = 0, f₂ = 1, f₃ = A, f₄ = A⊕1`.
    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn apply(self, input: usize) -> usize {
        match self {
            Response::Zero => 0,
            Response::One => 1,
            Response::Copy => bit(input),
            Response::Flip => bit(input) ^ 1,
        }
    }
}

/// `D_ij` with Alice answering `f_i` and Bob `f_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeterministicStrategy {
    i: usize,
    j: usize,
}

impl DeterministicStrategy {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) {
            return Err(Error::InvalidBehavior(format!(
                "strategy indices ({i},{j}) must lie in 1..=4"
            )));
        }
        Ok(Self { i, j })
    }

    /// All sixteen in the order `D₁₁, D₁₂, …, D₄₄`.
    pub fn all() -> Vec<Self> {
        (1..=4)
            .flat_map(|i| (1..=4).map(move |j| Self { i, j }))
            .collect()
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn alice(&self) -> Response {
        Response::ALL[self.i - 1]
    }

    pub fn bob(&self) -> Response {
        Response::ALL[self.j - 1]
    }
}

impl fmt::Display for DeterministicStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}{}", self.i, self.j)
    }
}

pub fn deterministic_behavior(s: DeterministicStrategy) -> NsTable {
    let zero = |r: Response, x: usize| if r.apply(x) == 0 { 1.0 } else { 0.0 };
    let mut t = NsTable::uniform();
    for x in 0..2 {
        t.m_a[x] = zero(s.alice(), x);
        t.m_b[x] = zero(s.bob(), x);
    }
    for x in 0..2 {
        for y in 0..2 {
            t.j[x][y] = t.m_a[x] * t.m_b[y];
        }
    }
    t
}

/// PR box obeying `a⊕b = (A⊕fa)(B⊕fb) ⊕ c`.
pub fn pr_box(flip_a: bool, flip_b: bool, flip_out: bool) -> NsTable {
    let mut t = NsTable::uniform();
    for x in 0..2 {
        for y in 0..2 {
            let parity = ((x ^ usize::from(flip_a)) & (y ^ usize::from(flip_b))) ^ usize::from(flip_out);
            t.j[x][y] = if parity == 0 { 0.5 } else { 0.0 };
        }
    }
    t
}

/// All eight PR boxes, indexed by `4·fa + 2·fb + c`.
pub fn pr_boxes() -> Vec<NsTable> {
    (0..8)
        .map(|k| pr_box(k & 4 != 0, k & 2 != 0, k & 1 != 0))
        .collect()
}

/// Table of the optimal singlet measurements, joints `(1 ± 1/√2)/4`.
pub fn me_table() -> NsTable {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hi = (1.0 + h) / 4.0;
    NsTable {
        m_a: [0.5; 2],
        m_b: [0.5; 2],
        j: [[hi, hi], [hi, (1.0 - h) / 4.0]],
    }
}

/// Linear functional `offset + Σ coefficient × entry` in table layout.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellFunctional {
    #[serde(rename = "mA")]
    pub m_a: [f64; 2],
    #[serde(rename = "mB")]
    pub m_b: [f64; 2],
    pub j: [[f64; 2]; 2],
    #[serde(default)]
    pub offset: f64,
}

impl BellFunctional {
    /// Upper CH facet: `T_CH · P ≤ 0`.
    pub fn ch() -> Self {
        Self {
            m_a: [-1.0, 0.0],
            m_b: [-1.0, 0.0],
            j: [[1.0, 1.0], [1.0, -1.0]],
            offset: 0.0,
        }
    }

    /// `−1 − f`, turning `f ≥ −1` into `≤ 0`.
    pub fn opposite(&self) -> Self {
        let neg = |v: [f64; 2]| [-v[0], -v[1]];
        Self {
            m_a: neg(self.m_a),
            m_b: neg(self.m_b),
            j: [neg(self.j[0]), neg(self.j[1])],
            offset: -1.0 - self.offset,
        }
    }

    pub fn relabel_inputs(&self, flip_a: bool, flip_b: bool) -> Self {
        let t = NsTable {
            m_a: self.m_a,
            m_b: self.m_b,
            j: self.j,
        }
        .relabel_inputs(flip_a, flip_b);
        Self {
            m_a: t.m_a,
            m_b: t.m_b,
            j: t.j,
            offset: self.offset,
        }
    }
}

pub fn functional_value(t: &BellFunctional, x: &NsTable) -> f64 {
    let mut v = t.offset;
    for k in 0..2 {
        v += t.m_a[k] * x.m_a[k] + t.m_b[k] * x.m_b[k];
        for l in 0..2 {
            v += t.j[k][l] * x.j[k][l];
        }
    }
    v
}

/// The eight CH facets written as `value ≤ 0`; facet `k` lies below `pr_boxes()[k]`.
pub fn ch_symmetries() -> Vec<BellFunctional> {
    (0..8)
        .map(|k| {
            let f = BellFunctional::ch().relabel_inputs(k & 4 != 0, k & 2 != 0);
            if k & 1 != 0 {
                f.opposite()
            } else {
                f
            }
        })
        .collect()
}

/// Values of all eight CH facets at `x`.
pub fn facet_values(x: &NsTable) -> [f64; 8] {
    let facets = ch_symmetries();
    std::array::from_fn(|k| functional_value(&facets[k], x))
}
