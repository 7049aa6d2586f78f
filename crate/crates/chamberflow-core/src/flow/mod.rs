//! Gradient-flow integration on the chamber and its boundary strata.
//!
//! The forward flow `ξ′ = X(ξ)` ascends the barrier `ρ` (`dρ/dt = ‖X‖²`),
//! reaches the boundary in finite time from any non-equilibrium interior
//! start, and its approach to a wall follows the asymptotic model
//! `margin² ≈ 2·m·‖β♯‖²·(T−t)`. [`integrate`] runs an adaptive embedded
//! Runge–Kutta pair until either the minimum wall margin drops below
//! `wall_eps` (collapse: the collapse time, limit point, blow-up rate, and
//! type-I constant are extrapolated from a least-squares fit of `margin²`
//! against time over the trailing accepted steps), the field norm drops
//! below the fixed-point threshold, or time runs out.
//!
//! Boundary faces carry their own flows: [`stratum_field`] drops the terms
//! whose trigonometric argument is pinned at a pole on the face and projects
//! the remainder onto the face. [`cascade`] chains chamber and stratum
//! integrations through successive collapses down to a vertex or an interior
//! fixed point of some face. [`minimal_point`] locates the barrier's unique
//! minimum by damped Newton iteration, [`backward_trace`] reconstructs the
//! unique trajectory flowing into a given facet point by integrating `−X`,
//! and [`type_i_estimate`] re-derives the type-I constant from a stored
//! trajectory tail independently of the integrator's own fit.

mod rk;

pub use rk::DdTime;

use std::cell::Cell;
use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};

use crate::io::{format_float, Sample};
use crate::linalg;
use crate::meanfield::{self, EPS_POLE};
use crate::rootsys::{Action, Stratum, WallKind};
use crate::{Error, Result};

use rk::{DoPri5, PiController};

/// Fixed-point detection threshold on `‖X‖` (below integrator noise at the
/// default tolerances).
pub const FIXED_POINT_TOL: f64 = 1e-12;

/// Hard ceiling on steps per integration (accepted + rejected).
const MAX_STEPS: u64 = 2_000_000;

/// Absolute step-size floor; going below it reports step-size underflow.
const H_MIN: f64 = 1e-24;

/// Trailing window length for the collapse fit.
const FIT_WINDOW: usize = 50;

/// Integrator options.
#[derive(Debug, Clone, Copy)]
pub struct IntegrateOpts {
    /// Relative tolerance.
    pub rtol: f64,
    /// Absolute tolerance.
    pub atol: f64,
    /// Collapse detection threshold on the minimum wall margin
    /// (functional units).
    pub wall_eps: f64,
    /// Time horizon.
    pub max_time: f64,
}

impl Default for IntegrateOpts {
    fn default() -> Self {
        IntegrateOpts {
            rtol: 1e-10,
            atol: 1e-12,
            wall_eps: 1e-8,
            max_time: 1e3,
        }
    }
}

/// Step counters for one integration.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntegratorStats {
    /// Accepted steps.
    pub accepted: u64,
    /// Rejected attempts (error too large or a stage left the domain).
    pub rejected: u64,
    /// Field evaluations.
    pub field_evals: u64,
}

/// An integrated trajectory: one sample per accepted step, plus counters.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Samples in time order (first entry is the start point).
    pub samples: Vec<Sample>,
    /// Integrator statistics.
    pub stats: IntegratorStats,
}

/// A finite-time boundary collapse, with the extrapolated singularity data.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CollapseEvent {
    /// Extrapolated collapse time.
    #[serde(rename = "T_est")]
    pub t_est: f64,
    /// Extrapolated boundary limit point.
    pub limit: Vec<f64>,
    /// Active walls at the limit, as `label:kind` descriptors.
    pub active: Vec<String>,
    /// Dimension of the stratum the limit lies on.
    pub stratum_dim: usize,
    /// Fitted limit of `margin²/(T−t)` for the dominant wall
    /// (theory: `2·m·‖β♯‖²`).
    pub blowup_rate_est: f64,
    /// Fitted type-I constant `‖β♯‖²·(T−t)/margin²` (only for a
    /// codimension-1 collapse of the full chamber flow).
    #[serde(rename = "type_I_est")]
    pub type_i_est: Option<f64>,
    /// The predicted constant `1/(2m)`, `m` the collapse wall's relevant
    /// multiplicity (summed over coincident active walls).
    #[serde(rename = "type_I_theory")]
    pub type_i_theory: Option<f64>,
    /// Indices into `chamber.walls` of the active walls.
    #[serde(skip)]
    pub active_walls: Vec<usize>,
    /// Wall with the smallest margin at detection (the fit wall).
    #[serde(skip)]
    pub dominant_wall: usize,
}

impl CollapseEvent {
    /// Limit point as a vector.
    pub fn limit_point(&self) -> DVector<f64> {
        DVector::from_row_slice(&self.limit)
    }

    /// JSON line with 17-significant-digit numerics.
    pub fn jsonl_line(&self) -> String {
        let limit: Vec<String> = self.limit.iter().map(|v| format_float(*v)).collect();
        let active: Vec<String> = self.active.iter().map(|a| format!("\"{a}\"")).collect();
        let opt = |v: Option<f64>| v.map_or("null".to_string(), format_float);
        format!(
            "{{\"event\":\"collapse\",\"T_est\":{},\"limit\":[{}],\"active\":[{}],\
             \"stratum_dim\":{},\"blowup_rate_est\":{},\"type_I_est\":{},\"type_I_theory\":{}}}",
            format_float(self.t_est),
            limit.join(","),
            active.join(","),
            self.stratum_dim,
            format_float(self.blowup_rate_est),
            opt(self.type_i_est),
            opt(self.type_i_theory),
        )
    }
}

/// How an integration ended.
#[derive(Debug, Clone)]
pub enum Termination {
    /// Finite-time boundary collapse.
    Collapse(CollapseEvent),
    /// `‖X‖` fell below [`FIXED_POINT_TOL`].
    FixedPoint {
        /// Time of detection.
        t: f64,
        /// The equilibrium point (ambient coordinates).
        y: DVector<f64>,
    },
    /// `max_time` elapsed.
    Timeout {
        /// Final time.
        t: f64,
        /// Final point (ambient coordinates).
        y: DVector<f64>,
    },
}

impl Termination {
    /// JSON line for non-collapse terminations; collapse delegates to
    /// [`CollapseEvent::jsonl_line`].
    pub fn jsonl_line(&self) -> String {
        match self {
            Termination::Collapse(ev) => ev.jsonl_line(),
            Termination::FixedPoint { t, y } => format!(
                "{{\"event\":\"fixed_point\",\"t\":{},\"y\":[{}]}}",
                format_float(*t),
                y.iter()
                    .map(|v| format_float(*v))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            Termination::Timeout { t, y } => format!(
                "{{\"event\":\"timeout\",\"t\":{},\"y\":[{}]}}",
                format_float(*t),
                y.iter()
                    .map(|v| format_float(*v))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// The integration domain: the full chamber interior, or the relative
/// interior of a boundary stratum with the pinned terms dropped.
pub struct FlowDomain<'a> {
    action: &'a Action,
    /// `None` for the chamber.
    stratum: Option<&'a Stratum>,
    origin: DVector<f64>,
    basis: Vec<DVector<f64>>,
    /// Per-root flags: the cot (V) term is pinned at a pole on this domain.
    pinned_v: Vec<bool>,
    /// Per-root flags for the tan (H) term.
    pinned_h: Vec<bool>,
    /// Wall indices monitored for collapse (all walls not pinned to 0).
    monitored: Vec<usize>,
    /// Wall indices pinned to 0 on the domain (empty for the chamber).
    pinned_walls: Vec<usize>,
}

impl<'a> FlowDomain<'a> {
    /// The full chamber interior.
    pub fn chamber(action: &'a Action) -> Self {
        let rank = action.rank();
        let n_roots = action.spec.roots.len();
        FlowDomain {
            action,
            stratum: None,
            origin: DVector::zeros(rank),
            basis: (0..rank).map(|i| linalg::standard_basis(rank, i)).collect(),
            pinned_v: vec![false; n_roots],
            pinned_h: vec![false; n_roots],
            monitored: (0..action.chamber.walls.len()).collect(),
            pinned_walls: Vec::new(),
        }
    }

    /// The relative interior of `stratum`, with that face's flow
    /// (pinned-pole terms dropped).
    pub fn stratum(action: &'a Action, stratum: &'a Stratum) -> Result<Self> {
        let n_roots = action.spec.roots.len();
        let mut pinned_v = vec![false; n_roots];
        let mut pinned_h = vec![false; n_roots];
        for &w in &stratum.active {
            let wall = &action.chamber.walls[w];
            match wall.kind {
                WallKind::VLower | WallKind::VUpper => pinned_v[wall.root] = true,
                WallKind::HLower | WallKind::HUpper => pinned_h[wall.root] = true,
            }
        }
        let monitored = (0..action.chamber.walls.len())
            .filter(|i| !stratum.active.contains(i))
            .collect();
        Ok(FlowDomain {
            action,
            stratum: Some(stratum),
            origin: stratum.point.clone(),
            basis: stratum.tangent.clone(),
            pinned_v,
            pinned_h,
            monitored,
            pinned_walls: stratum.active.clone(),
        })
    }

    /// The underlying action.
    pub fn action(&self) -> &Action {
        self.action
    }

    /// Domain dimension (rank for the chamber, face dimension for strata).
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether this is the full chamber domain.
    pub fn is_chamber(&self) -> bool {
        self.stratum.is_none()
    }

    /// Ambient point for domain coordinates `z`.
    pub fn embed(&self, z: &DVector<f64>) -> DVector<f64> {
        if self.is_chamber() {
            return z.clone();
        }
        let mut y = self.origin.clone();
        for (i, b) in self.basis.iter().enumerate() {
            y += b * z[i];
        }
        y
    }

    /// Domain coordinates of an ambient point; errors if the point is off
    /// the domain's affine hull.
    pub fn project(&self, y: &DVector<f64>) -> Result<DVector<f64>> {
        if y.len() != self.action.rank() {
            return Err(Error::Dimension {
                expected: self.action.rank(),
                got: y.len(),
            });
        }
        if self.is_chamber() {
            return Ok(y.clone());
        }
        let d = y - &self.origin;
        let z = DVector::from_fn(self.dim(), |i, _| self.basis[i].dot(&d));
        let back = self.embed(&z);
        let residual = (y - back).norm();
        if residual > 1e-8 * (1.0 + y.norm()) {
            return Err(Error::InvalidArgument(format!(
                "point is {residual:.3e} off the stratum affine hull"
            )));
        }
        Ok(z)
    }

    /// Monitored wall margins at an ambient point, as `(wall index, margin)`.
    pub fn margins(&self, y: &DVector<f64>) -> Vec<(usize, f64)> {
        self.monitored
            .iter()
            .map(|&i| (i, self.action.chamber.walls[i].margin(y)))
            .collect()
    }

    fn guard_margins(&self, y: &DVector<f64>) -> Result<()> {
        for &i in &self.monitored {
            let w = &self.action.chamber.walls[i];
            let m = w.margin(y);
            if m <= EPS_POLE {
                let label = &self.action.spec.roots[w.root].label;
                return Err(Error::OutOfDomain(format!(
                    "wall {}{} has margin {:.3e}",
                    label,
                    w.kind.tag(),
                    m
                )));
            }
        }
        Ok(())
    }

    /// The flow field's raw sum with pinned terms dropped (ambient vector,
    /// before tangential projection).
    fn raw_field(&self, y: &DVector<f64>) -> Result<DVector<f64>> {
        self.guard_margins(y)?;
        let mut x = DVector::zeros(self.action.rank());
        for (i, root) in self.action.spec.roots.iter().enumerate() {
            let v = self.action.oriented_root(i);
            let arg = v.dot(y);
            let mv = root.m_v_count();
            let mh = root.m_h_count();
            if mv >= 1 && !self.pinned_v[i] {
                x += v * (-(mv as f64) * (arg.cos() / arg.sin()));
            }
            if mh >= 1 && !self.pinned_h[i] {
                x += v * (mh as f64 * arg.tan());
            }
        }
        Ok(x)
    }

    fn tangential_coords(&self, x: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.dim(), |i, _| self.basis[i].dot(x))
    }

    /// Field in domain coordinates. For strata this is the tangential
    /// projection of the term sum with pinned terms dropped — exactly the
    /// gradient of the restricted potential, so the face flow is a gradient
    /// flow even when the raw sum carries a normal component (which it does
    /// for catalog rows whose printed multiplicities break the wall's
    /// mirror symmetry; see [`stratum_normal_residual`]).
    pub fn field_z(&self, z: &DVector<f64>) -> Result<DVector<f64>> {
        if self.is_chamber() {
            return meanfield::vector_field_x(self.action, z);
        }
        let y = self.embed(z);
        let x = self.raw_field(&y)?;
        Ok(self.tangential_coords(&x))
    }

    /// Barrier potential restricted to the domain (pinned terms dropped;
    /// equals the full `ρ` on the chamber).
    pub fn potential(&self, y: &DVector<f64>) -> Result<f64> {
        if self.is_chamber() {
            return meanfield::potential_rho(self.action, y);
        }
        self.guard_margins(y)?;
        let mut rho = 0.0;
        for (i, root) in self.action.spec.roots.iter().enumerate() {
            let arg = self.action.oriented_root(i).dot(y);
            let mv = root.m_v_count();
            let mh = root.m_h_count();
            if mv >= 1 && !self.pinned_v[i] {
                rho -= mv as f64 * arg.sin().ln();
            }
            if mh >= 1 && !self.pinned_h[i] {
                rho -= mh as f64 * arg.cos().ln();
            }
        }
        Ok(rho)
    }

    /// Hessian of the restricted potential in domain coordinates.
    fn hessian_z(&self, y: &DVector<f64>) -> Result<DMatrix<f64>> {
        if self.is_chamber() {
            return meanfield::hessian_rho(self.action, y);
        }
        self.guard_margins(y)?;
        let d = self.dim();
        let mut h = DMatrix::zeros(d, d);
        for (i, root) in self.action.spec.roots.iter().enumerate() {
            let v = self.action.oriented_root(i);
            let arg = v.dot(y);
            let mut coeff = 0.0;
            let mv = root.m_v_count();
            let mh = root.m_h_count();
            if mv >= 1 && !self.pinned_v[i] {
                coeff += mv as f64 / (arg.sin() * arg.sin());
            }
            if mh >= 1 && !self.pinned_h[i] {
                coeff += mh as f64 / (arg.cos() * arg.cos());
            }
            if coeff != 0.0 {
                let vb = self.tangential_coords(v);
                for a in 0..d {
                    for b in 0..d {
                        h[(a, b)] += coeff * vb[a] * vb[b];
                    }
                }
            }
        }
        Ok(h)
    }

    /// Random relative-interior points in domain coordinates (deterministic
    /// for a fixed seed).
    pub fn sample_starts(&self, n: usize, seed: u64) -> Result<Vec<DVector<f64>>> {
        use rand::{RngExt, SeedableRng};
        if self.is_chamber() {
            return crate::rootsys::sample_interior(&self.action.chamber, n, 0.05, seed);
        }
        match self.dim() {
            0 => Ok(vec![DVector::zeros(0); n]),
            1 => {
                // The margins are affine in the single coordinate s; intersect
                // the half-lines, shrink 5% per side, sample uniformly.
                let b = &self.basis[0];
                let mut lo = f64::NEG_INFINITY;
                let mut hi = f64::INFINITY;
                for &i in &self.monitored {
                    let w = &self.action.chamber.walls[i];
                    let m0 = w.margin(&self.origin);
                    let slope = w.grad.dot(b);
                    if slope.abs() <= 1e-14 {
                        continue;
                    }
                    let s_zero = -m0 / slope;
                    if slope > 0.0 {
                        lo = lo.max(s_zero);
                    } else {
                        hi = hi.min(s_zero);
                    }
                }
                if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                    return Err(Error::Chamber("unbounded or empty stratum segment".into()));
                }
                let span = hi - lo;
                let (a, b2) = (lo + 0.05 * span, hi - 0.05 * span);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Ok((0..n)
                    .map(|_| DVector::from_row_slice(&[rng.random_range(a..=b2)]))
                    .collect())
            }
            d => Err(Error::InvalidArgument(format!(
                "random starts unsupported for {d}-dimensional strata"
            ))),
        }
    }

    fn wall_name(&self, wall: usize) -> String {
        let w = &self.action.chamber.walls[wall];
        format!("{}:{}", self.action.spec.roots[w.root].label, w.kind.tag())
    }
}

/// The face flow: the term sum with pole-pinned terms dropped, projected
/// onto the face and returned as an ambient vector. The projection is the
/// exact gradient of the restricted barrier potential; its discarded normal
/// component is reported by [`stratum_normal_residual`]. Vertices
/// (dimension 0) return the zero vector.
pub fn stratum_field(action: &Action, stratum: &Stratum, y: &DVector<f64>) -> Result<DVector<f64>> {
    if stratum.dim == 0 {
        return Ok(DVector::zeros(action.rank()));
    }
    let dom = FlowDomain::stratum(action, stratum)?;
    dom.project(y)?;
    let x = dom.raw_field(y)?;
    let coeffs = dom.tangential_coords(&x);
    let mut tangential = DVector::zeros(action.rank());
    for (i, b) in dom.basis.iter().enumerate() {
        tangential += b * coeffs[i];
    }
    Ok(tangential)
}

/// Norm of the raw face field's component normal to the face (diagnostic
/// for the tangency invariant; zero for vertices).
pub fn stratum_normal_residual(
    action: &Action,
    stratum: &Stratum,
    y: &DVector<f64>,
) -> Result<f64> {
    if stratum.dim == 0 {
        return Ok(0.0);
    }
    let dom = FlowDomain::stratum(action, stratum)?;
    dom.project(y)?;
    let x = dom.raw_field(y)?;
    let coeffs = dom.tangential_coords(&x);
    let mut tangential = DVector::zeros(action.rank());
    for (i, b) in dom.basis.iter().enumerate() {
        tangential += b * coeffs[i];
    }
    Ok((&x - tangential).norm())
}

/// Integrate the forward flow from `y_start` (ambient coordinates; for a
/// stratum domain the point must lie on the face) until collapse, a fixed
/// point, or `max_time`.
pub fn integrate(
    domain: &FlowDomain<'_>,
    y_start: &DVector<f64>,
    opts: &IntegrateOpts,
) -> Result<(Trajectory, Termination)> {
    integrate_core(domain, y_start, opts, 1.0)
}

fn integrate_core(
    domain: &FlowDomain<'_>,
    y_start: &DVector<f64>,
    opts: &IntegrateOpts,
    direction: f64,
) -> Result<(Trajectory, Termination)> {
    let evals = Cell::new(0u64);
    let f = |z: &DVector<f64>| -> Result<DVector<f64>> {
        evals.set(evals.get() + 1);
        domain.field_z(z).map(|v| v * direction)
    };

    let mut z = domain.project(y_start)?;
    let y0 = domain.embed(&z);
    let start_min = domain
        .margins(&y0)
        .into_iter()
        .fold(f64::INFINITY, |m, (_, v)| m.min(v));
    if domain.dim() > 0 && start_min <= opts.wall_eps {
        return Err(Error::InvalidArgument(format!(
            "start point margin {start_min:.3e} is within wall_eps {:.1e} of the boundary",
            opts.wall_eps
        )));
    }

    let mut samples = Vec::new();
    let mut stats = IntegratorStats::default();
    let mut window: VecDeque<(DdTime, DVector<f64>)> = VecDeque::with_capacity(FIT_WINDOW + 1);
    let mut t = DdTime::zero();

    let push_sample = |samples: &mut Vec<Sample>,
                       window: &mut VecDeque<(DdTime, DVector<f64>)>,
                       t: DdTime,
                       y: &DVector<f64>,
                       rho: f64,
                       x_norm: f64| {
        samples.push(Sample {
            t: t.value(),
            y: y.iter().copied().collect(),
            rho,
            x_norm,
        });
        window.push_back((t, y.clone()));
        if window.len() > FIT_WINDOW {
            window.pop_front();
        }
    };

    if domain.dim() == 0 {
        push_sample(&mut samples, &mut window, t, &y0, 0.0, 0.0);
        return Ok((
            Trajectory { samples, stats },
            Termination::FixedPoint { t: 0.0, y: y0 },
        ));
    }

    let mut k1 = f(&z)?;
    push_sample(
        &mut samples,
        &mut window,
        t,
        &y0,
        domain.potential(&y0)?,
        k1.norm(),
    );
    if k1.norm() <= FIXED_POINT_TOL {
        stats.field_evals = evals.get();
        return Ok((
            Trajectory { samples, stats },
            Termination::FixedPoint { t: 0.0, y: y0 },
        ));
    }

    let stepper = DoPri5 {
        rtol: opts.rtol,
        atol: opts.atol,
    };
    let mut pi = PiController::new();
    let mut h = (1e-4 / (1.0 + k1.norm())).min(0.1 * opts.max_time);

    loop {
        if stats.accepted + stats.rejected >= MAX_STEPS {
            return Err(Error::Numerical(format!(
                "integration exceeded {MAX_STEPS} steps at t={:.6e} (margins {:?})",
                t.value(),
                domain.margins(&domain.embed(&z))
            )));
        }
        let remaining = opts.max_time - t.value();
        if remaining <= 0.0 {
            stats.field_evals = evals.get();
            let y = domain.embed(&z);
            return Ok((
                Trajectory { samples, stats },
                Termination::Timeout { t: t.value(), y },
            ));
        }
        let h_try = h.min(remaining);
        match stepper.try_step(&f, &z, &k1, h_try) {
            Err(_) => {
                // A stage left the domain: shrink hard and retry.
                stats.rejected += 1;
                h = h_try * 0.25;
                if h < H_MIN {
                    return Err(Error::Numerical(format!(
                        "step-size underflow (h={h:.3e}) at t={:.6e}, y={:?}: \
                         repeated domain violations before the margin threshold",
                        t.value(),
                        domain.embed(&z).as_slice()
                    )));
                }
            }
            Ok(out) if out.err_norm > 1.0 => {
                stats.rejected += 1;
                h = pi.reject(h_try, out.err_norm);
                if h < H_MIN {
                    return Err(Error::Numerical(format!(
                        "step-size underflow (h={h:.3e}) at t={:.6e}: \
                         local error will not contract",
                        t.value()
                    )));
                }
            }
            Ok(out) => {
                stats.accepted += 1;
                t = t.add(h_try);
                z = out.y_new;
                k1 = out.k_new;
                h = pi.accept(h_try, out.err_norm);
                let y = domain.embed(&z);
                let x_norm = k1.norm();
                push_sample(
                    &mut samples,
                    &mut window,
                    t,
                    &y,
                    domain.potential(&y)?,
                    x_norm,
                );

                let min_margin = domain
                    .margins(&y)
                    .into_iter()
                    .fold(f64::INFINITY, |m, (_, v)| m.min(v));
                if min_margin < opts.wall_eps {
                    if direction < 0.0 {
                        return Err(Error::Numerical(
                            "backward trajectory approached the boundary".into(),
                        ));
                    }
                    let event = collapse_event(domain, &window, t, &y, opts)?;
                    stats.field_evals = evals.get();
                    return Ok((Trajectory { samples, stats }, Termination::Collapse(event)));
                }
                if x_norm <= FIXED_POINT_TOL {
                    stats.field_evals = evals.get();
                    return Ok((
                        Trajectory { samples, stats },
                        Termination::FixedPoint { t: t.value(), y },
                    ));
                }
            }
        }
    }
}

/// Weighted least squares for `y ≈ a + b·x` with weights `w`;
/// x is internally rescaled for conditioning.
fn weighted_linfit(xs: &[f64], ys: &[f64], ws: &[f64]) -> Option<(f64, f64)> {
    let x_scale = xs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let w_scale = ws.iter().fold(0.0f64, |m, v| m.max(*v)).max(1e-300);
    let (mut s0, mut s1, mut s2, mut t0, mut t1) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((&x, &y), &w) in xs.iter().zip(ys).zip(ws) {
        let xn = x / x_scale;
        let wn = w / w_scale;
        s0 += wn;
        s1 += wn * xn;
        s2 += wn * xn * xn;
        t0 += wn * y;
        t1 += wn * xn * y;
    }
    let det = s0 * s2 - s1 * s1;
    if det.abs() <= 1e-14 * s0 * s2.max(1e-300) {
        return None;
    }
    let a = (s2 * t0 - s1 * t1) / det;
    let b = (s0 * t1 - s1 * t0) / det / x_scale;
    Some((a, b))
}

fn collapse_event(
    domain: &FlowDomain<'_>,
    window: &VecDeque<(DdTime, DVector<f64>)>,
    t_end: DdTime,
    y_end: &DVector<f64>,
    opts: &IntegrateOpts,
) -> Result<CollapseEvent> {
    let chamber = &domain.action.chamber;
    let margins = domain.margins(y_end);
    let (&(dominant, m_min), _) = margins
        .iter()
        .map(|p| (p, p.1))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::Numerical("collapse with no monitored walls".into()))?;

    // Walls collapsing together with the dominant one.
    let threshold = (1e3 * opts.wall_eps).max(100.0 * m_min);
    let fresh: Vec<usize> = margins
        .iter()
        .filter(|(_, m)| *m <= threshold)
        .map(|(i, _)| *i)
        .collect();
    let mut active_walls: Vec<usize> = domain
        .pinned_walls
        .iter()
        .copied()
        .chain(fresh.iter().copied())
        .collect();
    active_walls.sort_unstable();
    active_walls.dedup();

    // Fit margin² = A + B·(t − t_end) on the dominant wall over the window,
    // weighting each sample by 1/margin⁴ so every decade of the approach
    // counts equally (the asymptotic model error is O(margin), so the
    // smallest resolved decades carry the information).
    let wall = &chamber.walls[dominant];
    let mut xs = Vec::with_capacity(window.len());
    let mut ys = Vec::with_capacity(window.len());
    let mut ws = Vec::with_capacity(window.len());
    for (tk, yk) in window {
        let m = wall.margin(yk);
        if m <= 0.0 {
            continue;
        }
        xs.push(tk.sub(&t_end));
        ys.push(m * m);
        ws.push(m.powi(-4));
    }
    let (a, b) = weighted_linfit(&xs, &ys, &ws).ok_or_else(|| {
        Error::Numerical("collapse fit failed: degenerate trailing window".into())
    })?;
    if b.is_nan() || b >= 0.0 || !a.is_finite() {
        return Err(Error::Numerical(format!(
            "collapse fit failed: margin² slope {b:.3e} is not negative"
        )));
    }
    let blowup_rate_est = -b;
    let dt_star = (a / blowup_rate_est).max(0.0);
    let t_est = t_end.add(dt_star).value();

    // Limit: least-norm projection of the final point onto the intersection
    // of the active walls.
    let k = active_walls.len();
    let n = domain.action.rank();
    let amat = DMatrix::from_fn(k, n, |i, j| chamber.walls[active_walls[i]].grad[j]);
    let rvec = DVector::from_fn(k, |i, _| chamber.walls[active_walls[i]].margin(y_end));
    let svd = amat.clone().svd(true, true);
    let delta = svd
        .solve(&rvec, 1e-12)
        .map_err(|e| Error::Numerical(format!("limit projection failed: {e}")))?;
    let limit = y_end - delta;

    let grads: Vec<DVector<f64>> = active_walls
        .iter()
        .map(|&i| chamber.walls[i].grad.clone())
        .collect();
    let stratum_dim = n - linalg::row_rank(&grads, n);

    // Type-I data only for a codimension-1 collapse of the chamber flow.
    let fresh_grads: Vec<DVector<f64>> = fresh
        .iter()
        .map(|&i| chamber.walls[i].grad.clone())
        .collect();
    let (type_i_est, type_i_theory) =
        if domain.is_chamber() && linalg::row_rank(&fresh_grads, n) == 1 {
            let m_eff: u32 = fresh
                .iter()
                .map(|&i| {
                    let w = &chamber.walls[i];
                    let root = &domain.action.spec.roots[w.root];
                    match w.kind {
                        WallKind::VLower | WallKind::VUpper => root.m_v_count(),
                        WallKind::HLower | WallKind::HUpper => root.m_h_count(),
                    }
                })
                .sum();
            (
                Some(wall.grad.norm_squared() / blowup_rate_est),
                Some(1.0 / (2.0 * m_eff as f64)),
            )
        } else {
            (None, None)
        };

    Ok(CollapseEvent {
        t_est,
        limit: limit.iter().copied().collect(),
        active: active_walls.iter().map(|&i| domain.wall_name(i)).collect(),
        stratum_dim,
        blowup_rate_est,
        type_i_est,
        type_i_theory,
        active_walls,
        dominant_wall: dominant,
    })
}

/// Damped Newton iteration on the (restricted) barrier from `z0`.
fn newton_from(domain: &FlowDomain<'_>, mut z: DVector<f64>) -> Result<DVector<f64>> {
    if domain.dim() == 0 {
        return Ok(domain.embed(&z));
    }
    for _ in 0..200 {
        let g = domain.field_z(&z)?;
        if g.norm() <= FIXED_POINT_TOL {
            return Ok(domain.embed(&z));
        }
        let y = domain.embed(&z);
        let hess = domain.hessian_z(&y)?;
        let d = linalg::solve(&hess, &(-&g))
            .ok_or_else(|| Error::Numerical("singular Hessian in Newton iteration".into()))?;
        // Near the minimum the predicted decrease (~‖grad‖²) drops below
        // the rounding error of ρ itself, so a sufficient-decrease test
        // becomes noise; take the undamped, locally contracting Newton
        // step instead (the Hessian is positive definite).
        if g.norm() < 1e-6 {
            let zt = &z + &d;
            if domain.potential(&domain.embed(&zt)).is_ok() {
                z = zt;
                continue;
            }
        }
        let rho0 = domain.potential(&y)?;
        let slope = g.dot(&d);
        let mut tau = 1.0;
        loop {
            let zt = &z + &d * tau;
            let yt = domain.embed(&zt);
            if let Ok(rho_t) = domain.potential(&yt) {
                if rho_t <= rho0 + 1e-4 * tau * slope {
                    z = zt;
                    break;
                }
            }
            tau *= 0.5;
            if tau < 1e-14 {
                return Err(Error::Numerical(format!(
                    "Newton line search stalled at ‖grad‖={:.3e}",
                    g.norm()
                )));
            }
        }
    }
    Err(Error::Numerical(
        "Newton did not reach ‖X‖ ≤ 1e-12 in 200 iterations".into(),
    ))
}

/// The unique minimum of the (restricted) barrier: damped Newton from the
/// domain's reference point, iterates kept interior by backtracking.
/// Returns the ambient minimizer with `‖X‖ ≤ 1e-12`.
pub fn minimal_point(domain: &FlowDomain<'_>) -> Result<DVector<f64>> {
    let z0 = if domain.is_chamber() {
        domain.action.chamber.reference_point.clone()
    } else {
        DVector::zeros(domain.dim())
    };
    newton_from(domain, z0)
}

/// [`minimal_point`] cross-checked from `extra_starts` random interior
/// starts; returns the minimizer and the maximum distance between any
/// restart's result and it.
pub fn minimal_point_multistart(
    domain: &FlowDomain<'_>,
    extra_starts: usize,
    seed: u64,
) -> Result<(DVector<f64>, f64)> {
    let base = minimal_point(domain)?;
    let mut spread = 0.0f64;
    for z0 in domain.sample_starts(extra_starts, seed)? {
        let p = newton_from(domain, z0)?;
        spread = spread.max((&p - &base).norm());
    }
    Ok((base, spread))
}

/// One cascade stage: the collapse that ended a segment, with the segment's
/// trajectory.
#[derive(Debug, Clone)]
pub struct CascadeStep {
    /// The collapse event.
    pub event: CollapseEvent,
    /// The integrated segment that produced it.
    pub trajectory: Trajectory,
}

/// Where a cascade came to rest.
#[derive(Debug, Clone)]
pub enum CascadeEnd {
    /// Interior fixed point of the chamber or of some face flow.
    FixedPoint {
        /// The equilibrium.
        y: DVector<f64>,
        /// Time within the final segment.
        t: f64,
    },
    /// A 0-dimensional stratum.
    Vertex {
        /// The vertex.
        y: DVector<f64>,
    },
}

/// A full collapse cascade.
#[derive(Debug, Clone)]
pub struct Cascade {
    /// The collapse chain (at most `rank` events).
    pub steps: Vec<CascadeStep>,
    /// Trajectory of the final segment when it ended at a fixed point
    /// rather than a collapse.
    pub tail: Option<Trajectory>,
    /// Terminal state.
    pub end: CascadeEnd,
}

/// Chain chamber and face flows through successive collapses, restarting
/// from each collapse limit, until a vertex or a fixed point.
pub fn cascade(action: &Action, y_start: &DVector<f64>, opts: &IntegrateOpts) -> Result<Cascade> {
    let mut steps: Vec<CascadeStep> = Vec::new();
    let mut current_stratum: Option<Stratum> = None;
    let mut y = y_start.clone();
    for _ in 0..=action.rank() + 1 {
        let (trajectory, termination) = match &current_stratum {
            None => integrate(&FlowDomain::chamber(action), &y, opts)?,
            Some(s) => integrate(&FlowDomain::stratum(action, s)?, &y, opts)?,
        };
        match termination {
            Termination::FixedPoint { t, y: yf } => {
                return Ok(Cascade {
                    steps,
                    tail: Some(trajectory),
                    end: CascadeEnd::FixedPoint { y: yf, t },
                });
            }
            Termination::Timeout { t, .. } => {
                return Err(Error::Numerical(format!(
                    "cascade segment timed out at t={t:.3e} without collapsing"
                )));
            }
            Termination::Collapse(event) => {
                let limit = event.limit_point();
                let dim = event.stratum_dim;
                let active = event.active_walls.clone();
                steps.push(CascadeStep { event, trajectory });
                if dim == 0 {
                    return Ok(Cascade {
                        steps,
                        tail: None,
                        end: CascadeEnd::Vertex { y: limit },
                    });
                }
                let grads: Vec<DVector<f64>> = active
                    .iter()
                    .map(|&i| action.chamber.walls[i].grad.clone())
                    .collect();
                let tangent = linalg::null_space(&grads, action.rank());
                debug_assert_eq!(tangent.len(), dim);
                current_stratum = Some(Stratum {
                    active,
                    point: limit.clone(),
                    tangent,
                    dim,
                });
                y = limit;
            }
        }
    }
    Err(Error::Numerical(
        "cascade did not terminate within rank+1 segments".into(),
    ))
}

/// A type-I constant estimate re-derived from a stored trajectory tail.
#[derive(Debug, Clone, Copy)]
pub struct TypeIEstimate {
    /// Extrapolated `‖β♯‖²·(T−t)/margin²` as `t → T`.
    pub est: f64,
    /// The predicted `1/(2m)`.
    pub theory: f64,
}

/// Extrapolate the type-I constant from the trajectory's resolved tail
/// (samples with wall margin ≤ 1e-2 whose time-to-collapse is still well
/// above the f64 resolution of `T_est`). Errors for corner collapses.
pub fn type_i_estimate(
    action: &Action,
    trajectory: &Trajectory,
    event: &CollapseEvent,
) -> Result<TypeIEstimate> {
    let theory = event.type_i_theory.ok_or_else(|| {
        Error::InvalidArgument(
            "type-I estimation needs a codimension-1 collapse with a single active wall family"
                .into(),
        )
    })?;
    let wall = &action.chamber.walls[event.dominant_wall];
    let gsq = wall.grad.norm_squared();
    let t_floor = 1e4 * f64::EPSILON * event.t_est.abs().max(1e-3);
    let mut ms = Vec::new();
    let mut qs = Vec::new();
    for s in &trajectory.samples {
        let m = wall.margin(&s.position());
        let dt = event.t_est - s.t;
        if m > 0.0 && m <= 1e-2 && dt >= t_floor {
            ms.push(m);
            qs.push(dt * gsq / (m * m));
        }
    }
    if ms.len() < 3 {
        return Err(Error::Numerical(format!(
            "only {} resolved tail samples: cannot extrapolate the type-I constant",
            ms.len()
        )));
    }
    // q(margin) = est + O(margin): the intercept of a linear fit in margin.
    let (est, _slope) = linalg::fit_line(&ms, &qs)
        .ok_or_else(|| Error::Numerical("degenerate type-I tail fit".into()))?;
    Ok(TypeIEstimate { est, theory })
}

/// Integrate `ξ′ = −X(ξ)` from `boundary_point + δ·n̂` (inward unit normal
/// `n̂`) for each `δ`; every backward trajectory must converge to the
/// interior minimum. `boundary_point` must lie in a facet's relative
/// interior.
pub fn backward_trace(
    action: &Action,
    boundary_point: &DVector<f64>,
    deltas: &[f64],
    opts: &IntegrateOpts,
) -> Result<Vec<Trajectory>> {
    let chamber = &action.chamber;
    let mut active = Vec::new();
    for (i, w) in chamber.walls.iter().enumerate() {
        let m = w.margin(boundary_point);
        if m.abs() <= 1e-9 {
            active.push(i);
        } else if m < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "point lies outside the chamber closure (wall {} margin {m:.3e})",
                FlowDomain::chamber(action).wall_name(i)
            )));
        }
    }
    if active.is_empty() {
        return Err(Error::InvalidArgument(
            "point is not on the chamber boundary".into(),
        ));
    }
    let grads: Vec<DVector<f64>> = active
        .iter()
        .map(|&i| chamber.walls[i].grad.clone())
        .collect();
    if linalg::row_rank(&grads, action.rank()) != 1 {
        return Err(Error::InvalidArgument(
            "point is a vertex/corner; backward tracing needs a facet relative-interior point"
                .into(),
        ));
    }
    let normal = grads[0].normalize();
    let domain = FlowDomain::chamber(action);
    let mut out = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        if delta <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "offset delta must be positive, got {delta}"
            )));
        }
        let start = boundary_point + &normal * delta;
        let (traj, term) = integrate_core(&domain, &start, opts, -1.0)?;
        match term {
            Termination::FixedPoint { .. } => out.push(traj),
            other => {
                return Err(Error::Numerical(format!(
                    "backward trajectory for delta={delta:.1e} did not reach the minimum: \
                     ended as {}",
                    match other {
                        Termination::Timeout { t, .. } => format!("timeout at t={t:.3e}"),
                        Termination::Collapse(_) => "collapse".to_string(),
                        Termination::FixedPoint { .. } => unreachable!(),
                    }
                )));
            }
        }
    }
    Ok(out)
}
