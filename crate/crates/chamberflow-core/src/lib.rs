//! Finite-dimensional curvature-flow reductions on Weyl-chamber polytopes.
//!
//! This crate implements the reduction of a mean-curvature-type flow for a
//! family of parallel orbits with flat normal structure to an ordinary
//! differential equation on a rank-2 polytope (an affine Weyl chamber). The
//! moving orbit is
//! encoded by a point `Y` in the chamber; the flow is the negative gradient of
//! a log-trigonometric barrier potential built from a *marked root system*:
//! finitely many linear functionals `β` with two multiplicities each
//! (a "vertical" count `m_V` and a "horizontal" count `m_H`).
//!
//! The main objects are:
//!
//! - [`rootsys`]: the marked-root-system catalog (35 named rank-2 actions),
//!   parameter instantiation, chamber polytopes, and their boundary strata;
//! - [`meanfield`]: the flow field `X`, the barrier potential `ρ` with
//!   `grad ρ = X`, its Hessian, orbit shape operators, and the lift of the
//!   chamber data to an infinite curvature family with regularized traces;
//! - [`flow`]: an adaptive embedded Runge–Kutta integrator with
//!   collapse detection at chamber walls, finite-time blow-up rate
//!   estimation, boundary-stratum restriction, collapse cascades, interior
//!   minimal points, and backward tracing from a wall;
//! - [`verify`]: independent consistency checks — finite-difference gradient
//!   verification, series-limit checks for the regularized traces, and a
//!   term-by-term crosscheck of every catalog row against an independently
//!   transcribed table of published flow fields;
//! - [`io`]: JSONL serialization of trajectories and reports.
//!
//! Scalars are `f64` throughout; points and functionals are `nalgebra`
//! dynamic vectors of length [`rootsys::ActionSpec::rank`] (always 2 for the
//! shipped catalog, but nothing below assumes it).

#![deny(missing_docs)]
#![warn(clippy::all)]

pub mod error;
pub mod flow;
pub mod io;
pub mod linalg;
pub mod meanfield;
pub mod rootsys;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
