//! Marked root systems, the action catalog, chamber polytopes, and strata.
//!
//! A *marked root system* is a finite set of linear functionals ("roots")
//! `β` on `ℝ^rank`, each carrying two non-negative multiplicities: a vertical
//! count `m_V` and a horizontal count `m_H`. Each catalog entry ([`ActionSpec`])
//! names one such system; the shipped catalog has 35 rank-2 entries, five of
//! them parametrized by integers `(q, j)` whose multiplicities are evaluated
//! at instantiation time.
//!
//! The *chamber* of a spec is the open polytope
//!
//! ```text
//!   C = { Y : 0 < β(Y) < π    for every root with m_V ≥ 1,
//!         −π/2 < β(Y) < π/2   for every root with m_H ≥ 1 }
//! ```
//!
//! on which the flow field of [`crate::meanfield`] is smooth. Roots with
//! `m_V ≥ 1` are reoriented (`β ↦ −β`) if necessary so that `β > 0` holds on
//! the interior; the catalog ships pre-oriented data, so reorientation only
//! triggers for hand-built specs. [`strata`] enumerates the proper faces of
//! the closure (facets, vertices, …) with tangent bases, which is what the
//! boundary-restricted flow of [`crate::flow`] runs on.

mod catalog;
mod chamber;
mod strata;

pub use catalog::{
    default_catalog, load_catalog, load_catalog_file, ActionSpec, CartanType, Catalog, MarkedRoot,
    Multiplicity, ParamSpec, Table1Metadata,
};
pub use chamber::{chamber, sample_interior, Chamber, Wall, WallKind};
pub use strata::{strata, Stratum};

use crate::Result;
use nalgebra::DVector;

/// A concrete spec bundled with its chamber and orientation-resolved root
/// vectors: the working handle every evaluator and the flow take.
///
/// The oriented vectors agree with the chamber's walls (`β(Y) ∈ (0, π)` for
/// vertical roots on the interior); for the shipped catalog they equal the
/// stored vectors.
#[derive(Debug, Clone)]
pub struct Action {
    /// The instantiated spec.
    pub spec: ActionSpec,
    /// Its chamber.
    pub chamber: Chamber,
    oriented: Vec<DVector<f64>>,
}

impl Action {
    /// Build the chamber for a concrete spec and bundle everything up.
    pub fn new(spec: ActionSpec) -> Result<Self> {
        let chamber = chamber(&spec)?;
        let oriented = spec
            .roots
            .iter()
            .zip(&chamber.signs)
            .map(|(r, &s)| &r.vector * s)
            .collect();
        Ok(Action {
            spec,
            chamber,
            oriented,
        })
    }

    /// Look a row up in a catalog, instantiate, and build — the common path.
    pub fn from_catalog(
        catalog: &Catalog,
        name: &str,
        params: &std::collections::BTreeMap<String, i64>,
    ) -> Result<Self> {
        Action::new(catalog.action(name, params)?)
    }

    /// Machine name of the underlying row.
    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// Ambient dimension.
    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    /// Orientation-resolved vector of root `i`.
    pub fn oriented_root(&self, i: usize) -> &DVector<f64> {
        &self.oriented[i]
    }

    /// Enumerate the chamber's strata.
    pub fn strata(&self) -> Result<Vec<Stratum>> {
        strata(&self.chamber)
    }
}
