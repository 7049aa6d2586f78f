//! Enumeration of the proper faces (strata) of a chamber polytope.
//!
//! A *stratum* is a face of the chamber closure of dimension `0..rank−1`:
//! the subset where some walls are pinned to their boundary values and the
//! rest keep positive margin. Each stratum carries a relative-interior point
//! and an orthonormal tangent basis; the boundary-restricted flow of
//! [`crate::flow`] integrates in exactly these coordinates.
//!
//! Enumeration works subset-first: every affine subspace cut out by an
//! independent set of wall hyperplanes is tested for a nonempty relative
//! interior inside the polytope (a Chebyshev problem restricted to the
//! subspace). Faces are identified by their *full* active set — all walls
//! tight on the face — which also merges coincident hyperplanes such as the
//! `β` and `2β` lower walls of non-reduced rows.

use nalgebra::{DMatrix, DVector};

use super::chamber::{Chamber, Wall, WallKind};
use crate::{linalg, Result};

/// Absolute tolerance for "margin is zero" while classifying walls against
/// an affine subspace. Wall data is O(1)–O(π), so this is safely below any
/// genuine nonzero margin and safely above LP solve noise.
const ACTIVE_TOL: f64 = 1e-9;

/// A proper face of the chamber closure.
#[derive(Debug, Clone)]
pub struct Stratum {
    /// Indices (into `chamber.walls`) of every wall tight on this face.
    pub active: Vec<usize>,
    /// A relative-interior point of the face.
    pub point: DVector<f64>,
    /// Orthonormal basis of the face's tangent space (empty for vertices).
    pub tangent: Vec<DVector<f64>>,
    /// Face dimension (`rank − rank(active wall gradients)`).
    pub dim: usize,
}

impl Stratum {
    /// The active walls as `(root_index, kind)` pairs.
    pub fn active_pairs(&self, chamber: &Chamber) -> Vec<(usize, WallKind)> {
        self.active
            .iter()
            .map(|&w| (chamber.walls[w].root, chamber.walls[w].kind))
            .collect()
    }
}

/// Solve for a point on the affine subspace `{Y : margin_w(Y) = 0, w ∈ S}`
/// (least-squares via SVD; exact for consistent systems).
fn affine_point(walls: &[&Wall], rank: usize) -> Option<DVector<f64>> {
    let m = DMatrix::from_fn(walls.len(), rank, |i, j| walls[i].grad[j]);
    let b = DVector::from_fn(walls.len(), |i, _| -walls[i].c);
    let svd = m.svd(true, true);
    let p = svd.solve(&b, 1e-12).ok()?;
    // Consistency check: inconsistent (parallel-but-distinct) systems yield a
    // least-squares point that does not satisfy the equations.
    if walls.iter().all(|w| w.margin(&p).abs() <= ACTIVE_TOL) {
        Some(p)
    } else {
        None
    }
}

/// Chebyshev problem restricted to the affine subspace through `p` with
/// orthonormal tangent `basis`: find z maximizing the clearance of all
/// non-constant walls. Returns the relative-interior point, or `None` if the
/// face has empty relative interior (or a constant wall is violated).
fn relative_interior(
    chamber: &Chamber,
    p: &DVector<f64>,
    basis: &[DVector<f64>],
) -> Option<DVector<f64>> {
    let d = basis.len();
    if d == 0 {
        // A vertex: feasible iff every wall margin is ≥ 0 at p.
        return if chamber.min_margin(p) >= -ACTIVE_TOL {
            Some(p.clone())
        } else {
            None
        };
    }
    // Variables (z, m) ∈ ℝ^{d+1}: maximize m.
    let mut g: Vec<(DVector<f64>, f64)> = Vec::new();
    for w in &chamber.walls {
        let gt = DVector::from_fn(d, |k, _| w.grad.dot(&basis[k]));
        let val = w.margin(p);
        if gt.norm() <= 1e-10 * w.grad.norm().max(1.0) {
            // Margin constant on the subspace.
            if val < -ACTIVE_TOL {
                return None; // whole face outside this wall
            }
            continue; // active everywhere or strictly positive: no constraint
        }
        // margin(p + Σ z_k basis_k) = val + gt·z ≥ m‖gt‖.
        let mut row = DVector::zeros(d + 1);
        for k in 0..d {
            row[k] = -gt[k];
        }
        row[d] = gt.norm();
        g.push((row, val));
    }
    // Box on z to keep the LP bounded.
    for k in 0..d {
        let mut lo = DVector::zeros(d + 1);
        lo[k] = -1.0;
        g.push((lo, 20.0));
        let mut hi = DVector::zeros(d + 1);
        hi[k] = 1.0;
        g.push((hi, 20.0));
    }
    let mut c = DVector::zeros(d + 1);
    c[d] = 1.0;
    let x = linalg::linprog_max(&c, &g)?;
    if x[d] <= ACTIVE_TOL {
        return None; // degenerate: face is really lower-dimensional
    }
    let mut out = p.clone();
    for k in 0..d {
        out += &basis[k] * x[k];
    }
    Some(out)
}

/// Enumerate all strata (faces of dimension `0..rank−1`) of the chamber.
///
/// Ordered by decreasing dimension, then by active set (lexicographic), so
/// the output is deterministic.
pub fn strata(chamber: &Chamber) -> Result<Vec<Stratum>> {
    let rank = chamber.rank;
    let nwalls = chamber.walls.len();
    let mut found: Vec<Stratum> = Vec::new();

    // Subsets of walls of size 1..=rank, smallest first so facets are
    // discovered before vertices (dedupe is by full active set regardless).
    for size in 1..=rank {
        let mut subset: Vec<usize> = (0..size).collect();
        if nwalls < size {
            break;
        }
        loop {
            let walls: Vec<&Wall> = subset.iter().map(|&i| &chamber.walls[i]).collect();
            let grads: Vec<DVector<f64>> = walls.iter().map(|w| w.grad.clone()).collect();
            if linalg::row_rank(&grads, rank) == size {
                if let Some(p) = affine_point(&walls, rank) {
                    let basis = linalg::null_space(&grads, rank);
                    if let Some(q) = relative_interior(chamber, &p, &basis) {
                        // Full active set at the relative-interior point.
                        let active: Vec<usize> = (0..nwalls)
                            .filter(|&i| chamber.walls[i].margin(&q).abs() <= ACTIVE_TOL)
                            .collect();
                        if !found.iter().any(|s| s.active == active) {
                            // Recompute the tangent from the full active set:
                            // coincident walls can reduce the dimension.
                            let all_grads: Vec<DVector<f64>> = active
                                .iter()
                                .map(|&i| chamber.walls[i].grad.clone())
                                .collect();
                            let tangent = linalg::null_space(&all_grads, rank);
                            let dim = tangent.len();
                            found.push(Stratum {
                                active,
                                point: q,
                                tangent,
                                dim,
                            });
                        }
                    }
                }
            }
            // Next increasing subset of `size` indices.
            let mut i = size;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if subset[i] + (size - i) < nwalls {
                    subset[i] += 1;
                    for k in i + 1..size {
                        subset[k] = subset[k - 1] + 1;
                    }
                    break false;
                }
            };
            if done {
                break;
            }
        }
    }

    found.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.active.cmp(&b.active)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::super::catalog::default_catalog;
    use super::super::chamber::chamber;
    use super::*;
    use std::collections::BTreeMap;
    use std::f64::consts::PI;

    fn strata_of(name: &str) -> (Chamber, Vec<Stratum>) {
        let cat = default_catalog();
        let spec = cat.action(name, &BTreeMap::new()).unwrap();
        let ch = chamber(&spec).unwrap();
        let st = strata(&ch).unwrap();
        (ch, st)
    }

    #[test]
    fn rho1_triangle_has_three_facets_and_three_vertices() {
        let (_, st) = strata_of("rho1-SU3-SO3");
        let facets = st.iter().filter(|s| s.dim == 1).count();
        let vertices = st.iter().filter(|s| s.dim == 0).count();
        assert_eq!((facets, vertices), (3, 3), "{st:#?}");
    }

    #[test]
    fn rho1_alpha_facet_matches_oracle() {
        // The facet on the α lower wall {2x₁ = 0}: tangent (0, ±1), interior
        // point with x₂ strictly between ±π/(2√3).
        let (ch, st) = strata_of("rho1-SU3-SO3");
        let facet = st
            .iter()
            .find(|s| s.dim == 1 && s.active_pairs(&ch) == vec![(0, WallKind::VLower)])
            .expect("α facet");
        assert!((facet.point[0]).abs() < 1e-12);
        let h = PI / (2.0 * 3f64.sqrt());
        assert!(facet.point[1].abs() < h - 1e-6);
        assert_eq!(facet.tangent.len(), 1);
        assert!((facet.tangent[0][0]).abs() < 1e-12);
        assert!((facet.tangent[0][1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn every_vertex_extends_some_facet() {
        // Face-lattice consistency on a few structurally different rows.
        for name in [
            "rho1-SU3-SO3",
            "SOq2-SUq2-SU2Uq",
            "rho14-G2-SO4",
            "SU24-G2xG2-G2",
            "SO4xSO4-SO8-U4",
        ] {
            let (_, st) = strata_of(name);
            let facets: Vec<&Stratum> = st.iter().filter(|s| s.dim == 1).collect();
            for v in st.iter().filter(|s| s.dim == 0) {
                assert!(
                    facets
                        .iter()
                        .any(|f| f.active.iter().all(|w| v.active.contains(w))),
                    "{name}: vertex {:?} extends no facet",
                    v.active
                );
            }
        }
    }

    #[test]
    fn strata_interior_points_lie_on_their_faces_only() {
        for name in ["rho5-SO10-U5", "SU4-Sp4-Sp2Sp2"] {
            let (ch, st) = strata_of(name);
            assert!(!st.is_empty());
            for s in &st {
                for (i, w) in ch.walls.iter().enumerate() {
                    let m = w.margin(&s.point);
                    if s.active.contains(&i) {
                        assert!(m.abs() <= 1e-9, "{name}: active wall margin {m}");
                    } else {
                        assert!(m > 1e-9, "{name}: inactive wall margin {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn coincident_walls_share_one_facet() {
        // rho5 is non-reduced: α is vertical (walls at α(Y) ∈ {0, π}) and so
        // is 2α (walls at 2α(Y) ∈ {0, π}), so the hyperplanes {α(Y)=0} and
        // {2α(Y)=0} coincide. Exactly one facet must lie on x₁ = 0, with both
        // lower walls in its active set.
        let (ch, st) = strata_of("rho5-SO10-U5");
        let on_x1_zero: Vec<&Stratum> = st
            .iter()
            .filter(|s| s.dim == 1 && s.point[0].abs() < 1e-9)
            .collect();
        assert_eq!(on_x1_zero.len(), 1);
        let pairs = on_x1_zero[0].active_pairs(&ch);
        let vlowers = pairs
            .iter()
            .filter(|&&(_, k)| k == WallKind::VLower)
            .count();
        assert_eq!(vlowers, 2, "both coincident lower walls active: {pairs:?}");
    }
}
