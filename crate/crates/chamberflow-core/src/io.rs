//! Trajectory serialization: JSON-lines sample records.
//!
//! Each line is one object `{"t": …, "y": […], "rho": …, "x_norm": …}`.
//! Floats are written with 17 significant digits (`{:.16e}`) so trajectories
//! round-trip through text exactly at f64 precision.

use std::io::{BufRead, Write};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::Result;

/// One trajectory sample.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Sample {
    /// Flow time.
    pub t: f64,
    /// Position (length = rank).
    pub y: Vec<f64>,
    /// Barrier value at `y`.
    pub rho: f64,
    /// Field norm `‖X(y)‖` at the sample.
    pub x_norm: f64,
}

impl Sample {
    /// Position as a vector.
    pub fn position(&self) -> DVector<f64> {
        DVector::from_row_slice(&self.y)
    }
}

/// Format one float with 17 significant digits (round-trips any f64).
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serialize one sample as its JSONL line (no trailing newline).
pub fn sample_line(s: &Sample) -> String {
    let ys: Vec<String> = s.y.iter().map(|v| format_float(*v)).collect();
    format!(
        "{{\"t\":{},\"y\":[{}],\"rho\":{},\"x_norm\":{}}}",
        format_float(s.t),
        ys.join(","),
        format_float(s.rho),
        format_float(s.x_norm)
    )
}

/// Write samples as JSON lines.
pub fn write_jsonl<W: Write>(mut w: W, samples: &[Sample]) -> Result<()> {
    for s in samples {
        writeln!(w, "{}", sample_line(s))?;
    }
    Ok(())
}

/// Read samples back from JSON lines (blank lines skipped).
pub fn read_jsonl<R: BufRead>(r: R) -> Result<Vec<Sample>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        out.push(serde_json::from_str(trimmed)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    // Deliberately over-specified literals: the test exercises round-tripping
    // of awkward values as written.
    #[allow(clippy::excessive_precision)]
    fn jsonl_roundtrip_is_exact() {
        let samples = vec![
            Sample {
                t: 0.0,
                y: vec![std::f64::consts::FRAC_PI_6, 1e-17],
                rho: 1.5 * (4f64 / 3.0).ln(),
                x_norm: 3.3356409519815204e-17,
            },
            Sample {
                t: 1.0 + f64::EPSILON,
                y: vec![-0.1234567890123456, 7.0],
                rho: f64::MIN_POSITIVE,
                x_norm: 1e300,
            },
        ];
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &samples).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("{\"t\":0.0000000000000000e0,\"y\":["));
        let back = read_jsonl(&buf[..]).unwrap();
        assert_eq!(back, samples);
    }

    #[test]
    fn seventeen_significant_digits() {
        // 17 significant digits distinguish adjacent doubles.
        let a = 0.1f64;
        let b = f64::from_bits(a.to_bits() + 1);
        assert_ne!(format_float(a), format_float(b));
        assert_eq!(format_float(a).parse::<f64>().unwrap(), a);
        assert_eq!(format_float(b).parse::<f64>().unwrap(), b);
    }
}
