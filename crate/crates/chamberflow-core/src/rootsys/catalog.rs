//! Catalog loading, multiplicity expressions, and parameter instantiation.
//!
//! The catalog is a JSONL file (one record per action). Root vectors are
//! stored as integer coefficient pairs `[a, b]` in the (α, β) simple-root
//! basis of the record's Cartan type; the basis vectors are fixed:
//!
//! ```text
//!   a₂:       α = (2, 0),  β = (−1, √3)
//!   b₂ = c₂:  α = (1, 0),  β = (−1, 1)     (bc₂ rows add 2α, 2α+2β)
//!   g₂:       α = (2, 0),  β = (−3, √3)
//! ```
//!
//! Multiplicities are expression strings over the integer parameters `q`
//! and `j` (`"2"`, `"q-2"`, `"4q-4j-4"`, …). Parameter-free rows are concrete
//! as loaded; parametrized rows stay symbolic until
//! [`ActionSpec::instantiate`] evaluates them, rejecting any assignment that
//! makes a multiplicity negative.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Embedded copy of the shipped catalog (see `data/catalog.jsonl`).
const BUILTIN_CATALOG: &str = include_str!("../../data/catalog.jsonl");

/// Cartan type of a catalog record; fixes the simple-root vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanType {
    /// α = (2, 0), β = (−1, √3).
    #[serde(rename = "a2")]
    A2,
    /// α = (1, 0), β = (−1, 1); also covers c₂ and the non-reduced bc₂ rows.
    #[serde(rename = "b2")]
    B2,
    /// Same vectors as [`CartanType::B2`]; records rows that use the
    /// non-reduced functionals 2α, 2α+2β.
    #[serde(rename = "bc2")]
    Bc2,
    /// α = (2, 0), β = (−3, √3).
    #[serde(rename = "g2")]
    G2,
}

impl CartanType {
    /// Simple-root vectors (α, β) for this type.
    pub fn simple_roots(self) -> (DVector<f64>, DVector<f64>) {
        let s3 = 3f64.sqrt();
        match self {
            CartanType::A2 => (
                DVector::from_row_slice(&[2.0, 0.0]),
                DVector::from_row_slice(&[-1.0, s3]),
            ),
            CartanType::B2 | CartanType::Bc2 => (
                DVector::from_row_slice(&[1.0, 0.0]),
                DVector::from_row_slice(&[-1.0, 1.0]),
            ),
            CartanType::G2 => (
                DVector::from_row_slice(&[2.0, 0.0]),
                DVector::from_row_slice(&[-3.0, s3]),
            ),
        }
    }
}

/// A multiplicity: either a concrete count or a linear expression in the
/// integer parameters `q`, `j` awaiting instantiation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multiplicity {
    /// Concrete non-negative count.
    Concrete(u32),
    /// Symbolic linear form `c + aq·q + aj·j`, kept with its source text.
    Symbolic {
        /// Original expression string (for display and round-tripping).
        text: String,
        /// Constant term.
        c: i64,
        /// Coefficient of `q`.
        aq: i64,
        /// Coefficient of `j`.
        aj: i64,
    },
}

impl Multiplicity {
    /// Parse an expression string (`"2"`, `"q-2"`, `"4q-4j-4"`, …).
    pub fn parse(text: &str) -> Result<Self> {
        let (mut c, mut aq, mut aj) = (0i64, 0i64, 0i64);
        let bytes = text.as_bytes();
        let mut i = 0usize;
        let mut any = false;
        while i < bytes.len() {
            // Sign.
            let mut sign = 1i64;
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            // Optional integer part.
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mag: i64 = if i > start {
                text[start..i].parse().map_err(|_| Error::Expr {
                    expr: text.to_string(),
                    reason: "integer out of range".into(),
                })?
            } else {
                1
            };
            // Optional variable.
            let var = if i < bytes.len() && (bytes[i] == b'q' || bytes[i] == b'j') {
                let v = bytes[i];
                i += 1;
                Some(v)
            } else {
                None
            };
            if i == start && var.is_none() {
                return Err(Error::Expr {
                    expr: text.to_string(),
                    reason: format!("unexpected character at offset {i}"),
                });
            }
            match var {
                None => c += sign * mag,
                Some(b'q') => aq += sign * mag,
                Some(b'j') => aj += sign * mag,
                Some(_) => unreachable!(),
            }
            any = true;
        }
        if !any {
            return Err(Error::Expr {
                expr: text.to_string(),
                reason: "empty expression".into(),
            });
        }
        if aq == 0 && aj == 0 {
            if c < 0 {
                return Err(Error::Expr {
                    expr: text.to_string(),
                    reason: "constant multiplicity is negative".into(),
                });
            }
            Ok(Multiplicity::Concrete(c as u32))
        } else {
            Ok(Multiplicity::Symbolic {
                text: text.to_string(),
                c,
                aq,
                aj,
            })
        }
    }

    /// Evaluate under a parameter assignment. Symbolic forms error if a
    /// needed parameter is missing; negative results are reported as values
    /// for the caller to diagnose.
    pub fn eval(&self, params: &BTreeMap<String, i64>) -> Result<i64> {
        match self {
            Multiplicity::Concrete(m) => Ok(*m as i64),
            Multiplicity::Symbolic { text, c, aq, aj } => {
                let mut v = *c;
                for (coeff, name) in [(aq, "q"), (aj, "j")] {
                    if *coeff != 0 {
                        let p = params.get(name).ok_or_else(|| Error::Expr {
                            expr: text.clone(),
                            reason: format!("parameter {name} not supplied"),
                        })?;
                        v += coeff * p;
                    }
                }
                Ok(v)
            }
        }
    }

    /// Concrete value, if this multiplicity is concrete.
    pub fn concrete(&self) -> Option<u32> {
        match self {
            Multiplicity::Concrete(m) => Some(*m),
            Multiplicity::Symbolic { .. } => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Concrete(m) => write!(f, "{m}"),
            Multiplicity::Symbolic { text, .. } => f.write_str(text),
        }
    }
}

/// One root of a marked system: a linear functional (identified with its
/// vector through the Euclidean inner product) and its two multiplicities.
#[derive(Debug, Clone)]
pub struct MarkedRoot {
    /// Root-family label in the (α, β) basis, e.g. `"alpha+beta"`. Retained
    /// for display; the vector is what enters all computations.
    pub label: String,
    /// The functional's vector: `β(Y) = ⟨vector, Y⟩`.
    pub vector: DVector<f64>,
    /// Vertical multiplicity (weights the `cot` barrier at `β(Y) ∈ {0, π}`).
    pub m_v: Multiplicity,
    /// Horizontal multiplicity (weights the `tan` barrier at `β(Y) = ±π/2`).
    pub m_h: Multiplicity,
}

impl MarkedRoot {
    /// Concrete `m_V`; panics if still symbolic (callers gate on
    /// [`ActionSpec::is_concrete`]).
    pub fn m_v_count(&self) -> u32 {
        self.m_v
            .concrete()
            .expect("symbolic m_V; instantiate first")
    }

    /// Concrete `m_H`; panics if still symbolic.
    pub fn m_h_count(&self) -> u32 {
        self.m_h
            .concrete()
            .expect("symbolic m_H; instantiate first")
    }
}

/// Declared parameter of a catalog row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamSpec {
    /// Parameter name (`"q"` or `"j"`).
    pub name: String,
    /// Default value used when the caller does not supply one.
    pub default: i64,
    /// Smallest admissible value (from the published row's side condition);
    /// instantiation additionally rejects any value making a multiplicity
    /// negative.
    pub min: i64,
}

/// Provenance strings for a row: the dual (noncompact) picture it encodes.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Table1Metadata {
    /// Dual action, e.g. `"SO_0(1,2) -> SL(3,R)/SO(3)"`; `None` for the
    /// three low-parameter specializations that have no separate listing.
    #[serde(default)]
    pub dual_action: Option<String>,
    /// The associated reflective quotient, e.g. `"(SL(2,R)/SO(2)) x R"`.
    #[serde(default)]
    pub dual_l_space: Option<String>,
    /// Free-form note (e.g. which parametrized row a specialization refines).
    #[serde(default)]
    pub note: Option<String>,
}

/// A named marked-root-system entry, possibly with symbolic multiplicities.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    /// Stable machine name (CLI key), e.g. `"rho1-SU3-SO3"`.
    pub name: String,
    /// Human-readable action description.
    pub display: String,
    /// Cartan type fixing the root vectors.
    pub cartan_type: CartanType,
    /// Ambient dimension of chamber points (2 for all shipped rows).
    pub rank: usize,
    /// The marked roots. Only roots with some nonzero multiplicity are kept.
    pub roots: Vec<MarkedRoot>,
    /// Declared parameters (empty for concrete rows).
    pub params: Vec<ParamSpec>,
    /// Parameter values this spec was instantiated at (empty if symbolic or
    /// parameter-free).
    pub param_values: BTreeMap<String, i64>,
    /// Dual-picture provenance strings.
    pub metadata: Table1Metadata,
}

impl ActionSpec {
    /// Whether every multiplicity is concrete (instantiated or parameter-free).
    pub fn is_concrete(&self) -> bool {
        self.roots
            .iter()
            .all(|r| r.m_v.concrete().is_some() && r.m_h.concrete().is_some())
    }

    /// Evaluate all multiplicities at a parameter assignment, producing a
    /// concrete spec. Declared-but-missing parameters take their defaults;
    /// unknown parameter names and assignments that drive any multiplicity
    /// negative are rejected. Roots whose multiplicities both evaluate to
    /// zero are dropped.
    pub fn instantiate(&self, supplied: &BTreeMap<String, i64>) -> Result<ActionSpec> {
        for name in supplied.keys() {
            if !self.params.iter().any(|p| &p.name == name) {
                return Err(Error::Instantiation {
                    name: self.name.clone(),
                    reason: format!("row takes no parameter {name:?}"),
                });
            }
        }
        let mut values = BTreeMap::new();
        for p in &self.params {
            let v = supplied.get(&p.name).copied().unwrap_or(p.default);
            if v < p.min {
                return Err(Error::Instantiation {
                    name: self.name.clone(),
                    reason: format!("{} = {} below minimum {}", p.name, v, p.min),
                });
            }
            values.insert(p.name.clone(), v);
        }
        let mut roots = Vec::new();
        for r in &self.roots {
            let mv = r.m_v.eval(&values)?;
            let mh = r.m_h.eval(&values)?;
            if mv < 0 || mh < 0 {
                let which = if mv < 0 {
                    ("m_V", &r.m_v, mv)
                } else {
                    ("m_H", &r.m_h, mh)
                };
                return Err(Error::Instantiation {
                    name: self.name.clone(),
                    reason: format!(
                        "{} of {} evaluates to {} ({}) at {:?}",
                        which.0, r.label, which.2, which.1, values
                    ),
                });
            }
            if mv == 0 && mh == 0 {
                continue;
            }
            roots.push(MarkedRoot {
                label: r.label.clone(),
                vector: r.vector.clone(),
                m_v: Multiplicity::Concrete(mv as u32),
                m_h: Multiplicity::Concrete(mh as u32),
            });
        }
        if roots.is_empty() {
            return Err(Error::Instantiation {
                name: self.name.clone(),
                reason: "all multiplicities evaluate to zero".into(),
            });
        }
        Ok(ActionSpec {
            name: self.name.clone(),
            display: self.display.clone(),
            cartan_type: self.cartan_type,
            rank: self.rank,
            roots,
            params: self.params.clone(),
            param_values: values,
            metadata: self.metadata.clone(),
        })
    }

    /// Roots with `m_V ≥ 1` (concrete specs only).
    pub fn vertical_roots(&self) -> impl Iterator<Item = (usize, &MarkedRoot)> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.m_v_count() >= 1)
    }

    /// Roots with `m_H ≥ 1` (concrete specs only).
    pub fn horizontal_roots(&self) -> impl Iterator<Item = (usize, &MarkedRoot)> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.m_h_count() >= 1)
    }
}

/// Raw JSONL record shape (private; mapped into [`ActionSpec`]).
#[derive(Deserialize)]
struct RawRow {
    name: String,
    display: String,
    cartan_type: CartanType,
    #[serde(default)]
    params: Vec<ParamSpec>,
    roots: Vec<RawRoot>,
    #[serde(default)]
    table1: Table1Metadata,
}

#[derive(Deserialize)]
struct RawRoot {
    label: String,
    coeffs: [i64; 2],
    m_v: String,
    m_h: String,
}

/// The loaded catalog: an ordered list of named [`ActionSpec`]s.
#[derive(Debug, Clone)]
pub struct Catalog {
    rows: Vec<ActionSpec>,
}

impl Catalog {
    /// All rows, in file order.
    pub fn rows(&self) -> &[ActionSpec] {
        &self.rows
    }

    /// Look up a row by its machine name.
    pub fn get(&self, name: &str) -> Result<&ActionSpec> {
        self.rows
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }

    /// Look up and instantiate in one step (defaults fill missing params).
    pub fn action(&self, name: &str, params: &BTreeMap<String, i64>) -> Result<ActionSpec> {
        self.get(name)?.instantiate(params)
    }
}

/// Parse catalog text (JSONL: one record per non-empty line).
pub fn load_catalog(text: &str) -> Result<Catalog> {
    let mut rows: Vec<ActionSpec> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let raw: RawRow = serde_json::from_str(line)
            .map_err(|e| Error::Catalog(format!("line {}: {}", lineno + 1, e)))?;
        if rows.iter().any(|r| r.name == raw.name) {
            return Err(Error::Catalog(format!(
                "line {}: duplicate row name {:?}",
                lineno + 1,
                raw.name
            )));
        }
        let (av, bv) = raw.cartan_type.simple_roots();
        let mut roots = Vec::new();
        for rr in &raw.roots {
            let vector = &av * rr.coeffs[0] as f64 + &bv * rr.coeffs[1] as f64;
            if vector.norm() == 0.0 {
                return Err(Error::Catalog(format!(
                    "row {:?}: root {:?} has zero vector",
                    raw.name, rr.label
                )));
            }
            roots.push(MarkedRoot {
                label: rr.label.clone(),
                vector,
                m_v: Multiplicity::parse(&rr.m_v)?,
                m_h: Multiplicity::parse(&rr.m_h)?,
            });
        }
        if roots.is_empty() {
            return Err(Error::Catalog(format!("row {:?}: no roots", raw.name)));
        }
        rows.push(ActionSpec {
            name: raw.name,
            display: raw.display,
            cartan_type: raw.cartan_type,
            rank: 2,
            roots,
            params: raw.params,
            param_values: BTreeMap::new(),
            metadata: raw.table1,
        });
    }
    if rows.is_empty() {
        return Err(Error::Catalog("no rows found".into()));
    }
    Ok(Catalog { rows })
}

/// Load a catalog from a file path.
pub fn load_catalog_file(path: &Path) -> Result<Catalog> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Catalog(format!("{}: {}", path.display(), e)))?;
    load_catalog(&text)
}

/// The built-in 35-row catalog.
pub fn default_catalog() -> Catalog {
    load_catalog(BUILTIN_CATALOG).expect("embedded catalog is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn expr_parser_handles_linear_forms() {
        for (text, q, j, expect) in [
            ("1", 0, 0, 1),
            ("0", 0, 0, 0),
            ("q-2", 5, 0, 3),
            ("2j-2", 0, 3, 4),
            ("2q-2j-2", 4, 2, 2),
            ("4q-4j-4", 4, 2, 4),
            ("2j-4", 4, 1, -2),
            ("-2+q", 3, 0, 1),
        ] {
            let m = Multiplicity::parse(text).unwrap();
            let p = params(&[("q", q), ("j", j)]);
            assert_eq!(m.eval(&p).unwrap(), expect, "{text}");
        }
    }

    #[test]
    fn expr_parser_rejects_garbage() {
        assert!(Multiplicity::parse("").is_err());
        assert!(Multiplicity::parse("2x").is_err());
        assert!(Multiplicity::parse("q*2").is_err());
        assert!(Multiplicity::parse("-3").is_err()); // constant multiplicities must be ≥ 0
    }

    #[test]
    fn builtin_catalog_has_35_rows_with_unique_names() {
        let cat = default_catalog();
        assert_eq!(cat.rows().len(), 35);
        let mut names: Vec<_> = cat.rows().iter().map(|r| r.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 35);
    }

    #[test]
    fn rho1_row_matches_published_marks() {
        // First row: α vertical with count 1; β, α+β horizontal with count 1.
        let cat = default_catalog();
        let spec = cat.get("rho1-SU3-SO3").unwrap();
        assert!(spec.is_concrete());
        assert_eq!(spec.roots.len(), 3);
        let s3 = 3f64.sqrt();
        let expect: &[(&str, [f64; 2], u32, u32)] = &[
            ("alpha", [2.0, 0.0], 1, 0),
            ("beta", [-1.0, s3], 0, 1),
            ("alpha+beta", [1.0, s3], 0, 1),
        ];
        for (root, (label, vec, mv, mh)) in spec.roots.iter().zip(expect) {
            assert_eq!(&root.label, label);
            assert!((root.vector[0] - vec[0]).abs() < 1e-15);
            assert!((root.vector[1] - vec[1]).abs() < 1e-15);
            assert_eq!(root.m_v_count(), *mv);
            assert_eq!(root.m_h_count(), *mh);
        }
    }

    #[test]
    fn parametrized_row_instantiates_at_defaults() {
        // SO(j+1)×SO(q−j+1) at q=4, j=2: α (1,1), β (0,1), α+β (1,1), 2α+β (0,1).
        let cat = default_catalog();
        let spec = cat
            .action("SOj1xSOqj1-SOq2-SO2SOq", &BTreeMap::new())
            .unwrap();
        assert_eq!(spec.param_values, params(&[("q", 4), ("j", 2)]));
        let marks: Vec<(String, u32, u32)> = spec
            .roots
            .iter()
            .map(|r| (r.label.clone(), r.m_v_count(), r.m_h_count()))
            .collect();
        assert_eq!(
            marks,
            vec![
                ("alpha".to_string(), 1, 1),
                ("beta".to_string(), 0, 1),
                ("alpha+beta".to_string(), 1, 1),
                ("2alpha+beta".to_string(), 0, 1),
            ]
        );
    }

    #[test]
    fn negative_multiplicity_rejects_instantiation() {
        // Sp(j+1)×Sp(q−j+1) at q=3, j=1: the α entry 2j−4 evaluates to −2.
        let cat = default_catalog();
        let err = cat
            .action("Spj1xSpqj1-Spq2-Sp2Spq", &params(&[("q", 3), ("j", 1)]))
            .unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("-2"),
            "diagnostic should show the value: {msg}"
        );
    }

    #[test]
    fn all_rows_instantiate_at_defaults() {
        let cat = default_catalog();
        for row in cat.rows() {
            let spec = cat.action(&row.name, &BTreeMap::new()).unwrap();
            assert!(spec.is_concrete(), "{}", row.name);
            // Every kept root has some mass, and the side split never exceeds
            // what a non-negative pair allows.
            for r in &spec.roots {
                assert!(r.m_v_count() + r.m_h_count() >= 1, "{}", row.name);
            }
        }
    }

    #[test]
    fn unknown_name_and_extra_param_error() {
        let cat = default_catalog();
        assert!(matches!(
            cat.get("no-such-row"),
            Err(Error::UnknownAction(_))
        ));
        let err = cat
            .action("rho1-SU3-SO3", &params(&[("q", 4)]))
            .unwrap_err();
        assert!(err.to_string().contains("no parameter"));
    }
}
