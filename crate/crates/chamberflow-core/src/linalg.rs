//! Small dense linear-algebra helpers.
//!
//! Everything in this crate lives in dimension ≤ 3 (chamber rank plus one
//! slack variable), so these helpers wrap `nalgebra` for the few operations
//! needed — exact solves, symmetric eigenvalues, null spaces — plus a tiny
//! dense linear program solved by vertex enumeration, which at these sizes is
//! both simpler and more robust than an iterative LP.

use nalgebra::{DMatrix, DVector};

/// Relative pivot threshold below which a square system is treated as
/// singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Solve the square system `A x = b`; `None` if `A` is singular
/// (relative to its largest entry).
pub fn solve(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let scale = a.amax();
    if scale == 0.0 {
        return None;
    }
    let lu = a.clone().full_piv_lu();
    // Reject nearly-singular systems: the smallest |U_ii| of a full-pivot LU
    // is a reliable rank witness at these dimensions.
    let n = a.nrows();
    let umin = (0..n)
        .map(|i| lu.u()[(i, i)].abs())
        .fold(f64::INFINITY, f64::min);
    if umin <= SINGULAR_TOL * scale {
        return None;
    }
    lu.solve(b)
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = a
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Orthonormal basis of the common null space `{x : rᵀx = 0 for every r}`
/// in ambient dimension `dim`, via SVD. Rows may be empty (returns the
/// standard basis) or rank-deficient.
pub fn null_space(rows: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    if rows.is_empty() {
        return (0..dim).map(|i| standard_basis(dim, i)).collect();
    }
    // Pad with zero rows so the thin SVD's V^T covers all `dim` right
    // singular vectors (for m < n the thin factor has only m rows).
    let nrows = rows.len().max(dim);
    let m = DMatrix::from_fn(
        nrows,
        dim,
        |i, j| {
            if i < rows.len() {
                rows[i][j]
            } else {
                0.0
            }
        },
    );
    let scale = m.amax().max(1.0);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("SVD with V requested");
    let mut basis = Vec::new();
    for i in 0..dim {
        let sv = if i < svd.singular_values.len() {
            svd.singular_values[i]
        } else {
            0.0
        };
        if sv <= 1e-10 * scale {
            basis.push(DVector::from_fn(dim, |j, _| vt[(i, j)]));
        }
    }
    basis
}

/// `i`-th standard basis vector of length `n`.
pub fn standard_basis(n: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(n, |j, _| if j == i { 1.0 } else { 0.0 })
}

/// Rank of the span of `rows` (dimension of the row space), with the same
/// tolerance convention as [`null_space`].
pub fn row_rank(rows: &[DVector<f64>], dim: usize) -> usize {
    dim - null_space(rows, dim).len()
}

/// Maximize `cᵀx` subject to `gᵢᵀx ≤ hᵢ`, by enumerating basic feasible
/// points (all n-subsets of tight constraints). Intended for n ≤ 3 and a few
/// dozen constraints; returns `None` if the feasible set is empty or the
/// optimum is not attained at a vertex (unbounded/degenerate input should be
/// avoided by the caller, e.g. by adding box constraints).
pub fn linprog_max(c: &DVector<f64>, g: &[(DVector<f64>, f64)]) -> Option<DVector<f64>> {
    let n = c.len();
    assert!(
        (1..=3).contains(&n),
        "vertex-enumeration LP is for tiny systems"
    );
    if g.len() < n {
        return None;
    }
    // Feasibility slack proportional to the constraint scale.
    let scale = g
        .iter()
        .map(|(gi, hi)| gi.amax().max(hi.abs()))
        .fold(1.0f64, f64::max);
    let feas_tol = 1e-9 * scale;

    // Enumerate strictly increasing index n-tuples into g.
    let m = g.len();
    let mut idx: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, DVector<f64>)> = None;
    loop {
        let a = DMatrix::from_fn(n, n, |r, cc| g[idx[r]].0[cc]);
        let b = DVector::from_fn(n, |r, _| g[idx[r]].1);
        if let Some(x) = solve(&a, &b) {
            let feasible = g.iter().all(|(gi, hi)| gi.dot(&x) <= hi + feas_tol);
            if feasible {
                let obj = c.dot(&x);
                if best.as_ref().is_none_or(|(bo, _)| obj > *bo) {
                    best = Some((obj, x));
                }
            }
        }
        // Advance to the next combination.
        let mut i = n;
        loop {
            if i == 0 {
                return best.map(|(_, x)| x);
            }
            i -= 1;
            if idx[i] + (n - i) < m {
                idx[i] += 1;
                for j in i + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Ordinary least squares for the scalar model `y ≈ a + b·s`;
/// returns `(a, b)`. Requires at least two distinct abscissae.
pub fn fit_line(s: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    if s.len() != y.len() || s.len() < 2 {
        return None;
    }
    let n = s.len() as f64;
    let sm: f64 = s.iter().sum::<f64>() / n;
    let ym: f64 = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&si, &yi) in s.iter().zip(y) {
        sxx += (si - sm) * (si - sm);
        sxy += (si - sm) * (yi - ym);
    }
    if sxx == 0.0 {
        return None;
    }
    let b = sxy / sxx;
    Some((ym - b * sm, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solve_2x2() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let b = DVector::from_row_slice(&[5.0, 10.0]);
        let x = solve(&a, &b).unwrap();
        assert_relative_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_relative_eq!(x[1], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        let b = DVector::from_row_slice(&[1.0, 2.0]);
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn null_space_of_one_row_in_2d() {
        let rows = vec![DVector::from_row_slice(&[1.0, 1.0])];
        let ns = null_space(&rows, 2);
        assert_eq!(ns.len(), 1);
        assert_relative_eq!(ns[0].dot(&rows[0]), 0.0, epsilon = 1e-12);
        assert_relative_eq!(ns[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn chebyshev_center_of_unit_triangle() {
        // Triangle x ≥ 0, y ≥ 0, x + y ≤ 1: maximize r with
        // -x + r ≤ 0, -y + r ≤ 0, x + y + √2 r ≤ 1.
        let c = DVector::from_row_slice(&[0.0, 0.0, 1.0]);
        let g = vec![
            (DVector::from_row_slice(&[-1.0, 0.0, 1.0]), 0.0),
            (DVector::from_row_slice(&[0.0, -1.0, 1.0]), 0.0),
            (DVector::from_row_slice(&[1.0, 1.0, 2.0f64.sqrt()]), 1.0),
            // box to keep the LP bounded
            (DVector::from_row_slice(&[0.0, 0.0, -1.0]), 0.0),
        ];
        let x = linprog_max(&c, &g).unwrap();
        let r = x[2];
        let expect = 1.0 / (2.0 + 2.0f64.sqrt());
        assert_relative_eq!(r, expect, epsilon = 1e-9);
        assert_relative_eq!(x[0], expect, epsilon = 1e-9);
        assert_relative_eq!(x[1], expect, epsilon = 1e-9);
    }

    #[test]
    fn fit_line_recovers_slope() {
        let s = [0.0, 1.0, 2.0, 3.0];
        let y = [1.0, 3.0, 5.0, 7.0];
        let (a, b) = fit_line(&s, &y).unwrap();
        assert_relative_eq!(a, 1.0, epsilon = 1e-12);
        assert_relative_eq!(b, 2.0, epsilon = 1e-12);
    }
}
