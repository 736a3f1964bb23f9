//! Small dense two-phase simplex over free variables.
//!
//! Sized for the feasibility subproblems of this crate (tens of variables and
//! constraints). Bland's rule guarantees termination; pivots are fully
//! deterministic so identical inputs give identical optima.

use ndarray::{Array1, Array2};

/// Linear program `maximize c . v` over free `v`, subject to
/// `a . v = b` for every row in `eq` and `a . v <= b` for every row in `le`.
#[derive(Debug, Clone)]
pub struct Lp {
    pub objective: Array1<f64>,
    pub eq: Vec<(Array1<f64>, f64)>,
    pub le: Vec<(Array1<f64>, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: f64, point: Array1<f64> },
    Infeasible,
    Unbounded,
}

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-10;
const FEAS_EPS: f64 = 1e-8;

/// Solves the program with a dense tableau. Free variables are split into
/// positive and negative parts; inequalities get slacks; phase one introduces
/// one artificial per row.
pub fn solve(lp: &Lp) -> LpOutcome {
    let nv = lp.objective.len();
    let m = lp.eq.len() + lp.le.len();
    if m == 0 {
        // Unconstrained: bounded only for a zero objective.
        if lp.objective.iter().all(|&c| c == 0.0) {
            return LpOutcome::Optimal { value: 0.0, point: Array1::zeros(nv) };
        }
        return LpOutcome::Unbounded;
    }

    let n_slack = lp.le.len();
    let n_struct = 2 * nv + n_slack; // v+ , v- , slacks
    let n_total = n_struct + m; // + artificials

    let mut a = Array2::<f64>::zeros((m, n_total));
    let mut b = Array1::<f64>::zeros(m);
    for (r, (coef, rhs)) in lp.eq.iter().chain(lp.le.iter()).enumerate() {
        assert_eq!(coef.len(), nv, "objective/constraint length mismatch");
        for j in 0..nv {
            a[(r, j)] = coef[j];
            a[(r, nv + j)] = -coef[j];
        }
        b[r] = *rhs;
    }
    for (k, r) in (lp.eq.len()..m).enumerate() {
        a[(r, 2 * nv + k)] = 1.0;
    }
    // Make the right-hand side nonnegative, then set up the artificial basis.
    for r in 0..m {
        if b[r] < 0.0 {
            b[r] = -b[r];
            for j in 0..n_struct {
                a[(r, j)] = -a[(r, j)];
            }
        }
        a[(r, n_struct + r)] = 1.0;
    }

    let mut basis: Vec<usize> = (n_struct..n_total).collect();

    // Phase one: minimize the sum of artificials.
    let mut cost1 = Array1::<f64>::zeros(n_total);
    for j in n_struct..n_total {
        cost1[j] = 1.0;
    }
    let scale = b.iter().cloned().fold(1.0f64, f64::max);
    if run_simplex(&mut a, &mut b, &mut basis, &cost1, n_struct, true).is_none() {
        return LpOutcome::Infeasible; // phase one cannot be unbounded
    }
    let phase1: f64 = basis
        .iter()
        .enumerate()
        .filter(|(_, &j)| j >= n_struct)
        .map(|(r, _)| b[r])
        .sum();
    if phase1 > FEAS_EPS * scale {
        return LpOutcome::Infeasible;
    }

    // Drive leftover artificials out of the basis with degenerate pivots so
    // phase two cannot push them positive again. A row with no structural
    // entry left is redundant and stays inert.
    for r in 0..m {
        if basis[r] < n_struct {
            continue;
        }
        let target = (0..n_struct)
            .find(|&j| !basis.contains(&j) && a[(r, j)].abs() > PIVOT_EPS);
        if let Some(j) = target {
            pivot(&mut a, &mut b, r, j);
            basis[r] = j;
        }
    }

    // Phase two: maximize the objective (artificials barred from entering).
    let mut cost2 = Array1::<f64>::zeros(n_total);
    for j in 0..nv {
        cost2[j] = -lp.objective[j];
        cost2[nv + j] = lp.objective[j];
    }
    if run_simplex(&mut a, &mut b, &mut basis, &cost2, n_struct, false).is_none() {
        return LpOutcome::Unbounded;
    }

    let mut point = Array1::<f64>::zeros(nv);
    for (r, &j) in basis.iter().enumerate() {
        if j < nv {
            point[j] += b[r];
        } else if j < 2 * nv {
            point[j - nv] -= b[r];
        }
    }
    let value = lp.objective.dot(&point);
    LpOutcome::Optimal { value, point }
}

/// Minimizes `cost . x` in place. Columns `>= bar` may not enter the basis
/// when `allow_barred` is false. Returns `None` on unboundedness.
fn run_simplex(
    a: &mut Array2<f64>,
    b: &mut Array1<f64>,
    basis: &mut [usize],
    cost: &Array1<f64>,
    bar: usize,
    allow_barred: bool,
) -> Option<()> {
    let m = a.nrows();
    let n = a.ncols();
    loop {
        // Reduced costs via the basic cost multipliers: r_j = c_j - y . a_j
        // with y solving B^T y = c_B. The tableau is kept in canonical form
        // (basic columns are unit vectors), so y . a_j is a plain dot product
        // of the basic costs with the tableau column.
        let cb: Vec<f64> = basis.iter().map(|&j| cost[j]).collect();
        let mut entering = None;
        for j in 0..n {
            if !allow_barred && j >= bar {
                continue;
            }
            if basis.contains(&j) {
                continue;
            }
            let zj: f64 = (0..m).map(|r| cb[r] * a[(r, j)]).sum();
            let reduced = cost[j] - zj;
            if reduced < -COST_EPS {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(jin) = entering else {
            return Some(());
        };

        // Ratio test, Bland tie-break on the leaving basic variable index.
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            let arj = a[(r, jin)];
            if arj > PIVOT_EPS {
                let ratio = b[r] / arj;
                match leave {
                    None => leave = Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - PIVOT_EPS
                            || ((ratio - lratio).abs() <= PIVOT_EPS && basis[r] < basis[lr])
                        {
                            leave = Some((r, ratio));
                        }
                    }
                }
            }
        }
        let Some((lr, _)) = leave else {
            return None; // unbounded direction
        };

        pivot(a, b, lr, jin);
        basis[lr] = jin;
    }
}

fn pivot(a: &mut Array2<f64>, b: &mut Array1<f64>, lr: usize, jin: usize) {
    let m = a.nrows();
    let n = a.ncols();
    let piv = a[(lr, jin)];
    for j in 0..n {
        a[(lr, j)] /= piv;
    }
    b[lr] /= piv;
    for r in 0..m {
        if r == lr {
            continue;
        }
        let factor = a[(r, jin)];
        if factor != 0.0 {
            for j in 0..n {
                a[(r, j)] -= factor * a[(lr, j)];
            }
            b[r] -= factor * b[lr];
            if b[r].abs() < 1e-14 {
                b[r] = 0.0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn chebyshev_center_of_simplex() {
        // max m s.t. x_i >= m, sum x = 3, over (x1,x2,x3,m).
        let lp = Lp {
            objective: array![0.0, 0.0, 0.0, 1.0],
            eq: vec![(array![1.0, 1.0, 1.0, 0.0], 3.0)],
            le: vec![
                (array![-1.0, 0.0, 0.0, 1.0], 0.0),
                (array![0.0, -1.0, 0.0, 1.0], 0.0),
                (array![0.0, 0.0, -1.0, 1.0], 0.0),
            ],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, point } => {
                assert!((value - 1.0).abs() < 1e-9);
                for i in 0..3 {
                    assert!((point[i] - 1.0).abs() < 1e-9);
                }
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn box_corner() {
        // max x + y s.t. x <= 2, y <= 3.
        let lp = Lp {
            objective: array![1.0, 1.0],
            eq: vec![],
            le: vec![(array![1.0, 0.0], 2.0), (array![0.0, 1.0], 3.0)],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, point } => {
                assert!((value - 5.0).abs() < 1e-9);
                assert!((point[0] - 2.0).abs() < 1e-9);
                assert!((point[1] - 3.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x <= -1 and x >= 2.
        let lp = Lp {
            objective: array![1.0],
            eq: vec![],
            le: vec![(array![1.0], -1.0), (array![-1.0], -2.0)],
        };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // max x s.t. x >= 0 only.
        let lp = Lp {
            objective: array![1.0],
            eq: vec![],
            le: vec![(array![-1.0], 0.0)],
        };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);

        let free = Lp { objective: array![1.0], eq: vec![], le: vec![] };
        assert_eq!(solve(&free), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_pair() {
        // max y s.t. x + y = 2, x - y = 0 -> (1, 1).
        let lp = Lp {
            objective: array![0.0, 1.0],
            eq: vec![(array![1.0, 1.0], 2.0), (array![1.0, -1.0], 0.0)],
            le: vec![],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, point } => {
                assert!((value - 1.0).abs() < 1e-9);
                assert!((point[0] - 1.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_duplicate_rows() {
        // max m s.t. m <= 0 twice.
        let lp = Lp {
            objective: array![1.0],
            eq: vec![],
            le: vec![(array![1.0], 0.0), (array![1.0], 0.0)],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, .. } => assert!(value.abs() < 1e-9),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_handled() {
        // max x s.t. -x <= -4 (x >= 4), x <= 7.
        let lp = Lp {
            objective: array![1.0],
            eq: vec![],
            le: vec![(array![-1.0], -4.0), (array![1.0], 7.0)],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, point } => {
                assert!((value - 7.0).abs() < 1e-9);
                assert!((point[0] - 7.0).abs() < 1e-9);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
