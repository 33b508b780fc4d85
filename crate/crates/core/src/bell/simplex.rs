//! Dense phase-I simplex for `A x = b, x ≥ 0`.

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 10_000;

/// Returns a nonnegative solution of `A x = b` if the phase-I optimum is within `tol`.
///
/// Bland's rule on a dense tableau with one artificial variable per row.
pub fn feasible(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let m = a.len();
    assert_eq!(m, b.len(), "one right-hand side per row");
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = width - 1;

    let mut t = vec![vec![0.0; width]; m];
    let mut basis: Vec<usize> = (n..n + m).collect();
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let s = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for (j, &v) in row.iter().enumerate() {
            t[i][j] = s * v;
        }
        t[i][n + i] = 1.0;
        t[i][rhs] = s * b[i];
    }
    // reduced costs for minimizing the sum of artificials; last entry is −objective
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            cost[j] -= row[j];
        }
        cost[rhs] -= row[rhs];
    }

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..n + m).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            let p = t[i][enter];
            if p > PIVOT_EPS {
                let ratio = t[i][rhs] / p;
                let better = ratio < best - PIVOT_EPS
                    || (ratio <= best + PIVOT_EPS
                        && leave.is_some_and(|l| basis[i] < basis[l]));
                if leave.is_none() || better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        // phase I is bounded below by zero, so a column with no positive entry cannot improve it
        let Some(l) = leave else {
            break;
        };
        pivot(&mut t, &mut cost, l, enter);
        basis[l] = enter;
    }

    let objective: f64 = (0..m).filter(|&i| basis[i] >= n).map(|i| t[i][rhs]).sum();
    if objective > tol {
        return None;
    }
    let mut x = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][rhs].max(0.0);
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], l: usize, enter: usize) {
    let p = t[l][enter];
    for v in t[l].iter_mut() {
        *v /= p;
    }
    let prow = t[l].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != l {
            eliminate(row, &prow, enter);
        }
    }
    eliminate(cost, &prow, enter);
}

fn eliminate(row: &mut [f64], prow: &[f64], col: usize) {
    let f = row[col];
    if f != 0.0 {
        for (v, &p) in row.iter_mut().zip(prow) {
            *v -= f * p;
        }
        row[col] = 0.0;
    }
}
