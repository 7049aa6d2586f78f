//! Closed-form curvature quantities of a marked root system.
//!
//! On the chamber interior the flow field is
//!
//! ```text
//!   X(Y) = − Σ_{m_V ≥ 1} m_V · cot(β(Y)) · β♯  +  Σ_{m_H ≥ 1} m_H · tan(β(Y)) · β♯ ,
//! ```
//!
//! the (exact) gradient of the log-trigonometric barrier
//!
//! ```text
//!   ρ(Y) = − Σ m_V · log sin β(Y) − Σ m_H · log cos β(Y) ,
//! ```
//!
//! whose Hessian `Σ m_V/sin²β · β♯β♯ᵀ + Σ m_H/cos²β · β♯β♯ᵀ` is positive
//! definite whenever the roots span. [`orbit_shape_spectrum`] gives the shape
//! operator eigenvalues of the orbit at `Y` in a normal direction `v`, whose
//! multiplicity-weighted sum recovers `⟨X(Y), v⟩` exactly.
//!
//! [`lift_family`] translates the chamber data at a basepoint `Y₀` into an
//! infinite constant-curvature family: per root a covector `λ`, a
//! constant `b > 1`, and even/odd multiplicities. [`lift_mean_curvature`]
//! evaluates that family's mean curvature at a normal offset `w`; at `w = 0`
//! the identity `cot θ − tan θ = 2 cot 2θ` collapses it back to `X(Y₀)`,
//! which is the cross-module consistency oracle. [`regularized_trace`]
//! compares symmetric partial sums of the family's principal curvatures
//! against that closed form, and [`lifted_spectrum_arctan`] enumerates the
//! arctangent-quantized spectrum used for the normal-bundle directions with
//! nonzero curvature parameter.

use nalgebra::{DMatrix, DVector};

use crate::rootsys::Action;
use crate::{Error, Result};

use std::f64::consts::{FRAC_PI_2, PI};

/// Pole guard: interior evaluations reject points whose smallest wall margin
/// (functional units) is at or below this, since a trigonometric term there
/// has lost all precision.
pub const EPS_POLE: f64 = 1e-12;

/// Reject `y` unless it is strictly interior with margin above [`EPS_POLE`],
/// reporting the violated wall.
fn ensure_interior(action: &Action, y: &DVector<f64>) -> Result<()> {
    if y.len() != action.rank() {
        return Err(Error::Dimension {
            expected: action.rank(),
            got: y.len(),
        });
    }
    let mut worst = (f64::INFINITY, 0usize);
    for (i, w) in action.chamber.walls.iter().enumerate() {
        let m = w.margin(y);
        if m < worst.0 {
            worst = (m, i);
        }
    }
    if worst.0 <= EPS_POLE {
        let w = &action.chamber.walls[worst.1];
        let label = &action.spec.roots[w.root].label;
        return Err(Error::OutOfDomain(format!(
            "wall {}{} of {} has margin {:.3e} at the given point",
            label,
            w.kind.tag(),
            action.name(),
            worst.0
        )));
    }
    Ok(())
}

/// `cot` via `cos/sin` (better conditioned near the `tan` poles).
fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// The flow field `X(Y)` on the chamber interior.
///
/// Errors if `Y` is outside the chamber or within [`EPS_POLE`] of a wall,
/// naming the violated constraint.
pub fn vector_field_x(action: &Action, y: &DVector<f64>) -> Result<DVector<f64>> {
    ensure_interior(action, y)?;
    let mut x = DVector::zeros(action.rank());
    for (i, root) in action.spec.roots.iter().enumerate() {
        let v = action.oriented_root(i);
        let arg = v.dot(y);
        let mv = root.m_v_count();
        let mh = root.m_h_count();
        if mv >= 1 {
            x += v * (-(mv as f64) * cot(arg));
        }
        if mh >= 1 {
            x += v * (mh as f64 * arg.tan());
        }
    }
    Ok(x)
}

/// The barrier potential `ρ(Y)`; finite on the interior, `+∞` at walls.
pub fn potential_rho(action: &Action, y: &DVector<f64>) -> Result<f64> {
    ensure_interior(action, y)?;
    let mut rho = 0.0;
    for (i, root) in action.spec.roots.iter().enumerate() {
        let arg = action.oriented_root(i).dot(y);
        let mv = root.m_v_count();
        let mh = root.m_h_count();
        if mv >= 1 {
            rho -= mv as f64 * arg.sin().ln();
        }
        if mh >= 1 {
            rho -= mh as f64 * arg.cos().ln();
        }
    }
    Ok(rho)
}

/// Gradient of `ρ` — by construction the same computation as
/// [`vector_field_x`] (`grad ρ = X` is an identity of the closed forms, not
/// an approximation), provided as a named alias for callers thinking in
/// gradient-flow terms.
pub fn gradient_rho(action: &Action, y: &DVector<f64>) -> Result<DVector<f64>> {
    vector_field_x(action, y)
}

/// Hessian of `ρ`: symmetric, positive definite when the roots span.
pub fn hessian_rho(action: &Action, y: &DVector<f64>) -> Result<DMatrix<f64>> {
    ensure_interior(action, y)?;
    let r = action.rank();
    let mut h = DMatrix::zeros(r, r);
    for (i, root) in action.spec.roots.iter().enumerate() {
        let v = action.oriented_root(i);
        let arg = v.dot(y);
        let mut coeff = 0.0;
        let mv = root.m_v_count();
        let mh = root.m_h_count();
        if mv >= 1 {
            coeff += mv as f64 / (arg.sin() * arg.sin());
        }
        if mh >= 1 {
            coeff += mh as f64 / (arg.cos() * arg.cos());
        }
        if coeff != 0.0 {
            for a in 0..r {
                for b in 0..r {
                    h[(a, b)] += coeff * v[a] * v[b];
                }
            }
        }
    }
    Ok(h)
}

/// Which block of the normal decomposition a spectrum entry comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumOrigin {
    /// Vertical block (counted by `m_V`).
    Vertical,
    /// Horizontal block (counted by `m_H`).
    Horizontal,
}

/// One eigenvalue block of the orbit shape operator.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    /// The eigenvalue.
    pub eigenvalue: f64,
    /// Its multiplicity (the originating `m_V` or `m_H`).
    pub multiplicity: u32,
    /// Index of the originating root in the spec.
    pub root: usize,
    /// Which block it comes from.
    pub origin: SpectrumOrigin,
}

/// Shape-operator spectrum of the orbit at interior `Y₀` in direction `v`.
///
/// Per root: a vertical entry `−β(v)/tan β(Y₀)` with multiplicity `m_V`
/// (when `m_V ≥ 1`) and a horizontal entry `β(v)·tan β(Y₀)` with
/// multiplicity `m_H` (when `m_H ≥ 1`). `v` need not be normalized; the
/// eigenvalues scale linearly with it. The multiplicity-weighted sum equals
/// `⟨X(Y₀), v⟩` identically.
pub fn orbit_shape_spectrum(
    action: &Action,
    y0: &DVector<f64>,
    v: &DVector<f64>,
) -> Result<Vec<SpectrumEntry>> {
    ensure_interior(action, y0)?;
    if v.len() != action.rank() {
        return Err(Error::Dimension {
            expected: action.rank(),
            got: v.len(),
        });
    }
    let mut out = Vec::new();
    for (i, root) in action.spec.roots.iter().enumerate() {
        let bv = action.oriented_root(i);
        let arg = bv.dot(y0);
        let beta_v = bv.dot(v);
        let mv = root.m_v_count();
        let mh = root.m_h_count();
        if mv >= 1 {
            out.push(SpectrumEntry {
                eigenvalue: -beta_v / arg.tan(),
                multiplicity: mv,
                root: i,
                origin: SpectrumOrigin::Vertical,
            });
        }
        if mh >= 1 {
            out.push(SpectrumEntry {
                eigenvalue: beta_v * arg.tan(),
                multiplicity: mh,
                root: i,
                origin: SpectrumOrigin::Horizontal,
            });
        }
    }
    Ok(out)
}

/// One root's contribution to the lifted curvature family.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    /// Index of the originating root.
    pub root: usize,
    /// Root-family label (carried over for display).
    pub label: String,
    /// The covector `λ` (`λ(w) = ⟨lambda, w⟩`); its dual vector is the
    /// curvature normal of the entry.
    pub lambda: DVector<f64>,
    /// The spacing constant `b` (`> 1` for chamber-interior basepoints).
    pub b: f64,
    /// Multiplicity on even lattice indices.
    pub m_e: u32,
    /// Multiplicity on odd lattice indices.
    pub m_o: u32,
}

/// The lifted curvature family at a basepoint.
#[derive(Debug, Clone)]
pub struct CurvatureFamily {
    /// Per-root entries.
    pub entries: Vec<FamilyEntry>,
    /// The basepoint the family was derived at (when it came from
    /// [`lift_family`]).
    pub basepoint: Option<DVector<f64>>,
}

/// Translate the chamber data at interior `Y₀` into the lifted family.
///
/// Per root (with oriented vector `β♯`):
/// - vertical only:  `λ = −β/β(Y₀)`, `b = π/β(Y₀)`, `m_e = m_o = m_V`;
/// - horizontal only: `λ = −β/(β(Y₀)+π/2)`, `b = π/(β(Y₀)+π/2)`,
///   `m_e = m_o = m_H`;
/// - both: `λ = −β/β(Y₀)`, `b = π/(2β(Y₀))`, `m_e = m_V`, `m_o = m_H`.
pub fn lift_family(action: &Action, y0: &DVector<f64>) -> Result<CurvatureFamily> {
    ensure_interior(action, y0)?;
    let mut entries = Vec::new();
    for (i, root) in action.spec.roots.iter().enumerate() {
        let bv = action.oriented_root(i);
        let arg = bv.dot(y0);
        let mv = root.m_v_count();
        let mh = root.m_h_count();
        let (denom, b, m_e, m_o) = if mv >= 1 && mh >= 1 {
            (arg, PI / (2.0 * arg), mv, mh)
        } else if mv >= 1 {
            (arg, PI / arg, mv, mv)
        } else {
            let d = arg + FRAC_PI_2;
            (d, PI / d, mh, mh)
        };
        entries.push(FamilyEntry {
            root: i,
            label: root.label.clone(),
            lambda: bv * (-1.0 / denom),
            b,
            m_e,
            m_o,
        });
    }
    Ok(CurvatureFamily {
        entries,
        basepoint: Some(y0.clone()),
    })
}

/// Per-entry lift angle `θ_a = (π/2b_a)(1 − λ_a(w))`, with domain checks.
fn lift_angle(entry: &FamilyEntry, w: &DVector<f64>, idx: usize) -> Result<f64> {
    let lw = entry.lambda.dot(w);
    if lw >= 1.0 {
        return Err(Error::OutOfDomain(format!(
            "entry {idx} ({}): λ(w) = {lw} ≥ 1",
            entry.label
        )));
    }
    let theta = FRAC_PI_2 / entry.b * (1.0 - lw);
    if entry.m_e >= 1 && theta.sin().abs() <= EPS_POLE {
        return Err(Error::OutOfDomain(format!(
            "entry {idx} ({}): cot argument {theta} at a pole",
            entry.label
        )));
    }
    if entry.m_o >= 1 && theta.cos().abs() <= EPS_POLE {
        return Err(Error::OutOfDomain(format!(
            "entry {idx} ({}): tan argument {theta} at a pole",
            entry.label
        )));
    }
    Ok(theta)
}

/// Mean curvature of the lifted family at normal offset `w`:
///
/// ```text
///   H̃(w) = Σ_a ( m_e cot θ_a − m_o tan θ_a ) · (π/2b_a) · λ_a♯ ,
///   θ_a = (π/2b_a)(1 − λ_a(w)) .
/// ```
///
/// At `w = 0` this equals `X(Y₀)` for families from [`lift_family`].
pub fn lift_mean_curvature(family: &CurvatureFamily, w: &DVector<f64>) -> Result<DVector<f64>> {
    let dim = family
        .entries
        .first()
        .map(|e| e.lambda.len())
        .ok_or_else(|| Error::InvalidArgument("empty curvature family".into()))?;
    if w.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            got: w.len(),
        });
    }
    let mut h = DVector::zeros(dim);
    for (idx, e) in family.entries.iter().enumerate() {
        let theta = lift_angle(e, w, idx)?;
        let mut coeff = 0.0;
        if e.m_e >= 1 {
            coeff += e.m_e as f64 * cot(theta);
        }
        if e.m_o >= 1 {
            coeff -= e.m_o as f64 * theta.tan();
        }
        h += &e.lambda * (coeff * FRAC_PI_2 / e.b);
    }
    Ok(h)
}

/// Result of a regularized-trace comparison.
#[derive(Debug, Clone, Copy)]
pub struct TraceComparison {
    /// Symmetric partial sum at the requested truncation.
    pub partial: f64,
    /// The closed form `⟨H̃(w), v⟩` it converges to.
    pub closed: f64,
}

/// Symmetric partial sums of the family's principal-curvature trace in
/// direction `v` against the closed form.
///
/// ```text
///   partial(J) = Σ_a Σ_{|j|≤J} [ m_e · λ_a(v)/(1 + 2b_a j − λ_a(w))
///                              + m_o · λ_a(v)/(1 + (2j+1)b_a − λ_a(w)) ]
/// ```
///
/// (each summand is `λ_{aj}(v)/(1−λ_{aj}(w))` with `λ_{aj} = λ_a/(1+b_a j)`,
/// the lattice index running over evens `2j` and odds `2j+1`). The partial
/// sums converge to `closed = ⟨H̃(w), v⟩` at rate `O(1/J)`.
pub fn regularized_trace(
    family: &CurvatureFamily,
    w: &DVector<f64>,
    v: &DVector<f64>,
    j_max: u32,
) -> Result<TraceComparison> {
    let closed = lift_mean_curvature(family, w)?.dot(v);
    let mut partial = 0.0;
    for (idx, e) in family.entries.iter().enumerate() {
        let lv = e.lambda.dot(v);
        let lw = e.lambda.dot(w);
        let c = 1.0 - lw;
        for j in -(j_max as i64)..=(j_max as i64) {
            for (m, lattice) in [(e.m_e, 2 * j), (e.m_o, 2 * j + 1)] {
                if m == 0 {
                    continue;
                }
                let denom = c + e.b * lattice as f64;
                if denom.abs() <= EPS_POLE {
                    return Err(Error::OutOfDomain(format!(
                        "entry {idx} ({}): focal index {lattice} (denominator {denom:.3e})",
                        e.label
                    )));
                }
                partial += m as f64 * lv / denom;
            }
        }
    }
    Ok(TraceComparison { partial, closed })
}

/// One truncated principal curvature of the lifted family.
#[derive(Debug, Clone, Copy)]
pub struct PrincipalCurvature {
    /// The curvature value `λ_{aj}(v)/(1 − λ_{aj}(w))`.
    pub value: f64,
    /// Its multiplicity (`m_e` for even lattice index, `m_o` for odd).
    pub multiplicity: u32,
    /// Index of the family entry it comes from.
    pub entry: usize,
    /// Lattice index `j` (even entries at `2j`, odd at `2j+1` are reported
    /// with their actual lattice value here).
    pub lattice: i64,
}

/// Enumerate the family's principal curvatures in direction `v` at offset
/// `w`, truncated to lattice indices `2j, 2j+1` with `|j| ≤ J`.
///
/// Errors on focal offsets (`1 − λ_{aj}(w) = 0` for some enumerated index),
/// naming the entry and index.
pub fn lift_principal_curvatures(
    family: &CurvatureFamily,
    w: &DVector<f64>,
    v: &DVector<f64>,
    j_max: u32,
) -> Result<Vec<PrincipalCurvature>> {
    let mut out = Vec::new();
    for (idx, e) in family.entries.iter().enumerate() {
        let lv = e.lambda.dot(v);
        let lw = e.lambda.dot(w);
        for j in -(j_max as i64)..=(j_max as i64) {
            for (m, lattice) in [(e.m_e, 2 * j), (e.m_o, 2 * j + 1)] {
                if m == 0 {
                    continue;
                }
                // λ_{aj}(v)/(1−λ_{aj}(w)) = λ_a(v)/(1 + b_a·lattice − λ_a(w)).
                let denom = 1.0 + e.b * lattice as f64 - lw;
                if denom.abs() <= EPS_POLE {
                    return Err(Error::OutOfDomain(format!(
                        "entry {idx} ({}): w is focal at lattice index {lattice}",
                        e.label
                    )));
                }
                out.push(PrincipalCurvature {
                    value: lv / denom,
                    multiplicity: m,
                    entry: idx,
                    lattice,
                });
            }
        }
    }
    Ok(out)
}

/// The arctangent-quantized spectrum for a direction with curvature
/// parameter `mu ≥ 0` and shape value `lambda`.
#[derive(Debug, Clone)]
pub struct ArctanSpectrum {
    /// Truncated spectrum values.
    pub values: Vec<f64>,
    /// Supremum of the spectrum's absolute values,
    /// `√μ / arctan(√μ/|λ|)` (continuously `|λ|` at `μ = 0`).
    pub sup_norm: f64,
}

/// Enumerate `{ √μ / (arctan(√μ/λ) + kπ) : |k| ≤ K }` (the `μ = 0` case
/// degenerates to the single value `λ`).
///
/// `λ = 0` is allowed: `arctan(±∞) = ±π/2` puts the principal value at the
/// interval midpoint. As `λ → ∞` with `μ` fixed, `sup_norm/λ → 1`.
pub fn lifted_spectrum_arctan(lambda: f64, mu: f64, k_max: u32) -> ArctanSpectrum {
    assert!(mu >= 0.0, "mu must be nonnegative");
    if mu == 0.0 {
        return ArctanSpectrum {
            values: vec![lambda],
            sup_norm: lambda.abs(),
        };
    }
    let s = mu.sqrt();
    let theta0 = (s / lambda).atan(); // λ = 0 ⇒ atan(+∞) = π/2
    let values: Vec<f64> = (-(k_max as i64)..=(k_max as i64))
        .map(|k| s / (theta0 + k as f64 * PI))
        .collect();
    let sup_norm = s / (s / lambda.abs()).atan();
    ArctanSpectrum { values, sup_norm }
}
