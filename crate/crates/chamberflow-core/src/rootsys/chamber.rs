//! Chamber polytopes: wall systems, orientation, Chebyshev centers, sampling.
//!
//! Every root contributes two walls per marked side: a root with `m_V ≥ 1`
//! pins `β(Y)` to the open interval `(0, π)` and one with `m_H ≥ 1` pins it
//! to `(−π/2, π/2)`. A wall stores its margin as an affine form
//! `margin(Y) = ⟨grad, Y⟩ + c`, positive on the chamber interior, so the
//! chamber is self-contained: strata enumeration and flow-side collapse
//! detection only ever consult walls.
//!
//! Margins are measured in *functional units* (the value of `β(Y)` relative
//! to its bound), not Euclidean distance; distances are recovered by dividing
//! by `‖grad‖` where needed (Chebyshev centering does exactly that).

use nalgebra::DVector;
use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::ActionSpec;
use crate::{linalg, Error, Result};

/// Which bound of which interval a wall represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WallKind {
    /// `β(Y) > 0` (vertical interval, lower bound).
    VLower,
    /// `β(Y) < π` (vertical interval, upper bound).
    VUpper,
    /// `β(Y) > −π/2` (horizontal interval, lower bound).
    HLower,
    /// `β(Y) < π/2` (horizontal interval, upper bound).
    HUpper,
}

impl WallKind {
    /// Short display tag (`"V-"`, `"V+"`, `"H-"`, `"H+"`).
    pub fn tag(self) -> &'static str {
        match self {
            WallKind::VLower => "V-",
            WallKind::VUpper => "V+",
            WallKind::HLower => "H-",
            WallKind::HUpper => "H+",
        }
    }
}

/// One wall of a chamber: `margin(Y) = ⟨grad, Y⟩ + c > 0` inside.
#[derive(Debug, Clone)]
pub struct Wall {
    /// Index of the root (into the owning spec's root list) that produced
    /// this wall.
    pub root: usize,
    /// Interval bound this wall represents.
    pub kind: WallKind,
    /// Gradient of the margin (±the oriented root vector).
    pub grad: DVector<f64>,
    /// Affine offset of the margin.
    pub c: f64,
}

impl Wall {
    /// Signed margin at `y` (positive inside the chamber).
    pub fn margin(&self, y: &DVector<f64>) -> f64 {
        self.grad.dot(y) + self.c
    }
}

/// The open chamber polytope of a concrete [`ActionSpec`].
#[derive(Debug, Clone)]
pub struct Chamber {
    /// Ambient dimension.
    pub rank: usize,
    /// All walls, in root order (V pair first, then H pair, per root).
    pub walls: Vec<Wall>,
    /// Orientation sign applied to each root's vector when building walls
    /// (+1 everywhere for the shipped catalog, which is pre-oriented).
    pub signs: Vec<f64>,
    /// Chebyshev center of the wall system: strictly interior.
    pub reference_point: DVector<f64>,
    /// Chebyshev radius (Euclidean distance to the nearest wall).
    pub radius: f64,
}

/// Feasibility threshold for the Chebyshev radius: orientations yielding a
/// thinner chamber than this are treated as infeasible.
const MIN_RADIUS: f64 = 1e-9;

/// Box bound added to the Chebyshev LP so it stays bounded even for wall
/// systems that do not enclose a bounded region on their own. Chambers live
/// inside `|β(Y)| ≤ π` for unit-scale roots, so 10 is generous.
const LP_BOX: f64 = 10.0;

impl Chamber {
    /// Margins of all walls at `y`, in wall order.
    pub fn margins(&self, y: &DVector<f64>) -> Vec<f64> {
        self.walls.iter().map(|w| w.margin(y)).collect()
    }

    /// Smallest wall margin at `y` (negative outside).
    pub fn min_margin(&self, y: &DVector<f64>) -> f64 {
        self.walls
            .iter()
            .map(|w| w.margin(y))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `y` is interior with every margin strictly above `eps`.
    pub fn contains(&self, y: &DVector<f64>, eps: f64) -> bool {
        y.len() == self.rank && self.min_margin(y) > eps
    }

    /// Vertices of the closed polytope (enumerated from wall intersections;
    /// deduplicated). Used for bounding boxes and boundedness checks.
    pub fn vertices(&self) -> Vec<DVector<f64>> {
        let n = self.rank;
        let mut verts: Vec<DVector<f64>> = Vec::new();
        let mut subset: Vec<usize> = (0..n).collect();
        if self.walls.len() < n {
            return verts;
        }
        loop {
            let grads: Vec<DVector<f64>> =
                subset.iter().map(|&i| self.walls[i].grad.clone()).collect();
            if linalg::row_rank(&grads, n) == n {
                let a = nalgebra::DMatrix::from_fn(n, n, |r, c| grads[r][c]);
                let b = DVector::from_fn(n, |r, _| -self.walls[subset[r]].c);
                if let Some(p) = linalg::solve(&a, &b) {
                    if self.min_margin(&p) >= -1e-9 && !verts.iter().any(|v| (v - &p).norm() < 1e-9)
                    {
                        verts.push(p);
                    }
                }
            }
            // Next increasing subset.
            let mut i = n;
            let done = loop {
                if i == 0 {
                    break true;
                }
                i -= 1;
                if subset[i] + (n - i) < self.walls.len() {
                    subset[i] += 1;
                    for k in i + 1..n {
                        subset[k] = subset[k - 1] + 1;
                    }
                    break false;
                }
            };
            if done {
                return verts;
            }
        }
    }
}

/// Build the wall list for `spec` under the given per-root orientation signs.
fn build_walls(spec: &ActionSpec, signs: &[f64]) -> Vec<Wall> {
    use std::f64::consts::{FRAC_PI_2, PI};
    let mut walls = Vec::new();
    for (i, root) in spec.roots.iter().enumerate() {
        let v = &root.vector * signs[i];
        if root.m_v_count() >= 1 {
            walls.push(Wall {
                root: i,
                kind: WallKind::VLower,
                grad: v.clone(),
                c: 0.0,
            });
            walls.push(Wall {
                root: i,
                kind: WallKind::VUpper,
                grad: -&v,
                c: PI,
            });
        }
        if root.m_h_count() >= 1 {
            walls.push(Wall {
                root: i,
                kind: WallKind::HLower,
                grad: v.clone(),
                c: FRAC_PI_2,
            });
            walls.push(Wall {
                root: i,
                kind: WallKind::HUpper,
                grad: -&v,
                c: FRAC_PI_2,
            });
        }
    }
    walls
}

/// Chebyshev center of a wall system: the deepest interior point and its
/// Euclidean clearance. `None` if no interior point exists.
fn chebyshev(walls: &[Wall], rank: usize) -> Option<(DVector<f64>, f64)> {
    // Variables x = (Y, m); maximize m subject to ⟨grad,Y⟩ + c ≥ m‖grad‖,
    // i.e. ⟨-grad, Y⟩ + ‖grad‖·m ≤ c, plus a bounding box on Y.
    let mut g: Vec<(DVector<f64>, f64)> = Vec::new();
    for w in walls {
        let mut row = DVector::zeros(rank + 1);
        for k in 0..rank {
            row[k] = -w.grad[k];
        }
        row[rank] = w.grad.norm();
        g.push((row, w.c));
    }
    for k in 0..rank {
        let mut lo = DVector::zeros(rank + 1);
        lo[k] = -1.0;
        g.push((lo, LP_BOX));
        let mut hi = DVector::zeros(rank + 1);
        hi[k] = 1.0;
        g.push((hi, LP_BOX));
    }
    let mut c = DVector::zeros(rank + 1);
    c[rank] = 1.0;
    let x = linalg::linprog_max(&c, &g)?;
    let y = DVector::from_fn(rank, |k, _| x[k]);
    Some((y, x[rank]))
}

/// Construct the chamber of a concrete spec.
///
/// The stored root orientation is tried first; if it admits no interior,
/// sign flips of the vertical roots are searched (fewest flips first) until
/// one does. Horizontal-only roots never need flipping: their interval is
/// symmetric.
pub fn chamber(spec: &ActionSpec) -> Result<Chamber> {
    if !spec.is_concrete() {
        return Err(Error::Chamber(format!(
            "{}: spec has symbolic multiplicities; instantiate first",
            spec.name
        )));
    }
    let v_roots: Vec<usize> = spec.vertical_roots().map(|(i, _)| i).collect();
    if v_roots.len() > 16 {
        return Err(Error::Chamber(format!(
            "{}: too many vertical roots for orientation search",
            spec.name
        )));
    }
    // Masks ordered by popcount so the stored orientation (mask 0) wins ties
    // and any needed correction flips as few roots as possible.
    let mut masks: Vec<u32> = (0..(1u32 << v_roots.len())).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let mut signs = vec![1.0; spec.roots.len()];
        for (bit, &ri) in v_roots.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                signs[ri] = -1.0;
            }
        }
        let walls = build_walls(spec, &signs);
        if let Some((center, radius)) = chebyshev(&walls, spec.rank) {
            if radius > MIN_RADIUS {
                // Point reflection maps a valid orientation onto its mirror
                // (flip every vertical root, negate the chamber), so the
                // search alone cannot distinguish the two. Canonicalize to
                // the copy whose first vertical root has a positive leading
                // component, making the result independent of the stored
                // vectors' signs.
                let mut signs = signs;
                let mut walls = walls;
                let mut center = center;
                if let Some(&i0) = v_roots.first() {
                    let v = &spec.roots[i0].vector * signs[i0];
                    let lead = v.iter().copied().find(|c| c.abs() > 1e-12).unwrap_or(0.0);
                    if lead < 0.0 {
                        for &ri in &v_roots {
                            signs[ri] = -signs[ri];
                        }
                        walls = build_walls(spec, &signs);
                        center = -center;
                    }
                }
                return Ok(Chamber {
                    rank: spec.rank,
                    walls,
                    signs,
                    reference_point: center,
                    radius,
                });
            }
        }
    }
    Err(Error::Chamber(format!(
        "{}: no root orientation yields a chamber with interior",
        spec.name
    )))
}

/// Draw `n` interior points with every wall margin at least `min_margin`
/// (functional units), by rejection sampling from the vertex bounding box.
/// Deterministic for a fixed seed.
pub fn sample_interior(
    chamber: &Chamber,
    n: usize,
    min_margin: f64,
    seed: u64,
) -> Result<Vec<DVector<f64>>> {
    let verts = chamber.vertices();
    if verts.is_empty() {
        return Err(Error::Chamber(
            "cannot sample: no vertices (unbounded?)".into(),
        ));
    }
    let rank = chamber.rank;
    let mut lo = vec![f64::INFINITY; rank];
    let mut hi = vec![f64::NEG_INFINITY; rank];
    for v in &verts {
        for k in 0..rank {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let max_attempts = 200_000 * n.max(1);
    while out.len() < n {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::Numerical(format!(
                "rejection sampling stalled: {} of {} points after {} draws \
                 (margin floor {} too tight?)",
                out.len(),
                n,
                attempts,
                min_margin
            )));
        }
        let y = DVector::from_fn(rank, |k, _| rng.random_range(lo[k]..=hi[k]));
        if chamber.walls.iter().all(|w| w.margin(&y) >= min_margin) {
            out.push(y);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::catalog::default_catalog;
    use super::*;
    use std::collections::BTreeMap;
    use std::f64::consts::PI;

    fn rho1_chamber() -> (crate::rootsys::ActionSpec, Chamber) {
        let cat = default_catalog();
        let spec = cat.action("rho1-SU3-SO3", &BTreeMap::new()).unwrap();
        let ch = chamber(&spec).unwrap();
        (spec, ch)
    }

    #[test]
    fn rho1_has_six_walls_and_triangle_vertices() {
        let (_, ch) = rho1_chamber();
        // α contributes the vertical pair, β and α+β one horizontal pair each.
        assert_eq!(ch.walls.len(), 6);
        let mut verts = ch.vertices();
        verts.sort_by(|a, b| {
            a[0].partial_cmp(&b[0])
                .unwrap()
                .then(a[1].partial_cmp(&b[1]).unwrap())
        });
        assert_eq!(verts.len(), 3);
        let h = PI / (2.0 * 3f64.sqrt());
        assert!((verts[0][0] - 0.0).abs() < 1e-12 && (verts[0][1] + h).abs() < 1e-12);
        assert!((verts[1][0] - 0.0).abs() < 1e-12 && (verts[1][1] - h).abs() < 1e-12);
        assert!((verts[2][0] - PI / 2.0).abs() < 1e-12 && verts[2][1].abs() < 1e-12);
    }

    #[test]
    fn rho1_margin_oracle_at_pi6() {
        // Minimum margin at (π/6, 0) is π/3, attained by the 2x₁ lower wall.
        let (_, ch) = rho1_chamber();
        let y = DVector::from_row_slice(&[PI / 6.0, 0.0]);
        let m = ch.min_margin(&y);
        assert!((m - PI / 3.0).abs() < 1e-12, "min margin {m}");
        assert!(ch.contains(&y, 0.0));
    }

    #[test]
    fn reference_point_is_strictly_interior_for_all_rows() {
        let cat = default_catalog();
        for row in cat.rows() {
            let spec = cat.action(&row.name, &BTreeMap::new()).unwrap();
            let ch = chamber(&spec).unwrap();
            assert!(
                ch.min_margin(&ch.reference_point) > 0.0,
                "{}: reference point not interior",
                row.name
            );
            assert!(ch.radius > 1e-3, "{}: radius {}", row.name, ch.radius);
            // Shipped data is pre-oriented: no flips should trigger.
            assert!(
                ch.signs.iter().all(|&s| s == 1.0),
                "{}: orientation search flipped a stored root",
                row.name
            );
            // Bounded with a nonempty vertex set.
            let verts = ch.vertices();
            assert!(!verts.is_empty(), "{}", row.name);
            for v in &verts {
                assert!(v.amax() < 10.0, "{}: vertex escapes the box", row.name);
            }
        }
    }

    #[test]
    fn rho3_chamber_reaches_negative_x2() {
        // Its published fundamental domain lies below the x₁-axis.
        let cat = default_catalog();
        let spec = cat.action("rho3-SO8-U4", &BTreeMap::new()).unwrap();
        let ch = chamber(&spec).unwrap();
        assert!(
            ch.reference_point[1] < 0.0,
            "reference {:?}",
            ch.reference_point
        );
    }

    #[test]
    fn sampling_respects_margin_floor() {
        let (_, ch) = rho1_chamber();
        let pts = sample_interior(&ch, 50, 0.05, 42).unwrap();
        assert_eq!(pts.len(), 50);
        for p in &pts {
            assert!(ch.walls.iter().all(|w| w.margin(p) >= 0.05));
        }
        // Determinism.
        let again = sample_interior(&ch, 50, 0.05, 42).unwrap();
        for (a, b) in pts.iter().zip(&again) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn orientation_search_recovers_misoriented_input() {
        // Flip ρ1's α by hand; chamber() must flip it back.
        let cat = default_catalog();
        let mut spec = cat.action("rho1-SU3-SO3", &BTreeMap::new()).unwrap();
        spec.roots[0].vector = -spec.roots[0].vector.clone();
        let ch = chamber(&spec).unwrap();
        assert_eq!(ch.signs[0], -1.0);
        // Same polytope as the stored orientation.
        let y = DVector::from_row_slice(&[PI / 6.0, 0.0]);
        assert!((ch.min_margin(&y) - PI / 3.0).abs() < 1e-12);
    }
}
