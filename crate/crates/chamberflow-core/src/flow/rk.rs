//! Embedded Dormand–Prince 5(4) stepper with compensated time accumulation.
//!
//! The step sizes shrink toward the floating-point ulp of elapsed time as a
//! trajectory approaches its collapse time, so time is accumulated in
//! double-double precision ([`DdTime`]): the low word keeps absorbing steps
//! far below `ulp(t)` and window-relative times stay exact to ~1e-32.

use nalgebra::DVector;

use crate::Result;

/// Error-weighted two-sum: `a + b` with the exact rounding error.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Compensated time accumulator (value = `hi + lo`, `|lo| ≤ ulp(hi)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdTime {
    /// Leading component.
    pub hi: f64,
    /// Trailing compensation.
    pub lo: f64,
}

impl DdTime {
    /// Time zero.
    pub fn zero() -> Self {
        DdTime { hi: 0.0, lo: 0.0 }
    }

    /// Nearest f64.
    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    /// `self + h`, exactly compensated.
    pub fn add(&self, h: f64) -> Self {
        let (s, e) = two_sum(self.hi, h);
        let lo = self.lo + e;
        // Renormalize so |lo| stays at ulp(hi) scale.
        let hi = s + lo;
        let lo = (s - hi) + lo;
        DdTime { hi, lo }
    }

    /// `self − other` as f64; exact to double-double precision for nearby
    /// times (the leading difference is exact by Sterbenz's lemma).
    pub fn sub(&self, other: &DdTime) -> f64 {
        (self.hi - other.hi) + (self.lo - other.lo)
    }
}

// Dormand–Prince 5(4) tableau (FSAL: the 7th stage is the field at the new
// point and seeds the next step).
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Error coefficients e = b(5th) − b(4th).
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Outcome of one tentative step.
pub struct StepOutcome {
    /// 5th-order endpoint.
    pub y_new: DVector<f64>,
    /// Scaled error norm (accept when ≤ 1).
    pub err_norm: f64,
    /// Field at `y_new` (FSAL stage, reusable as the next step's first stage).
    pub k_new: DVector<f64>,
}

/// The embedded pair with its tolerances.
#[derive(Debug, Clone, Copy)]
pub struct DoPri5 {
    /// Relative tolerance.
    pub rtol: f64,
    /// Absolute tolerance.
    pub atol: f64,
}

impl DoPri5 {
    /// Attempt one step of size `h` from `y` with first stage `k1 = f(y)`.
    /// Errors from `f` (domain violations at internal stages) propagate and
    /// are treated by the caller as step rejections.
    pub fn try_step<F>(
        &self,
        f: &F,
        y: &DVector<f64>,
        k1: &DVector<f64>,
        h: f64,
    ) -> Result<StepOutcome>
    where
        F: Fn(&DVector<f64>) -> Result<DVector<f64>>,
    {
        let k2 = f(&(y + (k1 * (A21 * h))))?;
        let k3 = f(&(y + k1 * (A31 * h) + &k2 * (A32 * h)))?;
        let k4 = f(&(y + k1 * (A41 * h) + &k2 * (A42 * h) + &k3 * (A43 * h)))?;
        let k5 = f(&(y + k1 * (A51 * h) + &k2 * (A52 * h) + &k3 * (A53 * h) + &k4 * (A54 * h)))?;
        let k6 = f(&(y
            + k1 * (A61 * h)
            + &k2 * (A62 * h)
            + &k3 * (A63 * h)
            + &k4 * (A64 * h)
            + &k5 * (A65 * h)))?;
        let y_new =
            y + k1 * (B1 * h) + &k3 * (B3 * h) + &k4 * (B4 * h) + &k5 * (B5 * h) + &k6 * (B6 * h);
        let k7 = f(&y_new)?;
        let err_vec = k1 * (E1 * h)
            + &k3 * (E3 * h)
            + &k4 * (E4 * h)
            + &k5 * (E5 * h)
            + &k6 * (E6 * h)
            + &k7 * (E7 * h);
        let n = y.len();
        let mut acc = 0.0;
        for i in 0..n {
            let sc = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
            let r = err_vec[i] / sc;
            acc += r * r;
        }
        let err_norm = (acc / n as f64).sqrt();
        Ok(StepOutcome {
            y_new,
            err_norm,
            k_new: k7,
        })
    }
}

/// PI step-size controller (Hairer's DOPRI5 scheme: growth factor
/// `safe·err^{−0.17}·err_prev^{0.04}`, clamped to `[0.2, 10]`).
#[derive(Debug, Clone, Copy)]
pub struct PiController {
    err_old: f64,
}

const SAFETY: f64 = 0.9;
const EXPO1: f64 = 0.2 - 0.04 * 0.75;
const BETA: f64 = 0.04;

impl PiController {
    /// Fresh controller.
    pub fn new() -> Self {
        PiController { err_old: 1e-4 }
    }

    /// New step size after an accepted step with scaled error `err`.
    pub fn accept(&mut self, h: f64, err: f64) -> f64 {
        let err = err.max(1e-16);
        let fac = SAFETY * err.powf(-EXPO1) * self.err_old.powf(BETA);
        self.err_old = err.max(1e-4);
        h * fac.clamp(0.2, 10.0)
    }

    /// New step size after a rejected step (never grows).
    pub fn reject(&self, h: f64, err: f64) -> f64 {
        let fac = SAFETY * err.max(1e-16).powf(-EXPO1);
        h * fac.clamp(0.1, 1.0)
    }
}

impl Default for PiController {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_time_absorbs_sub_ulp_steps() {
        let mut t = DdTime::zero().add(0.034);
        let h = 1e-20; // far below ulp(0.034) ≈ 6.9e-18
        for _ in 0..1000 {
            t = t.add(h);
        }
        let t0 = DdTime::zero().add(0.034);
        let elapsed = t.sub(&t0);
        assert!((elapsed - 1e-17).abs() < 1e-30, "elapsed {elapsed}");
        // Plain f64 accumulation would have stalled entirely.
        assert_eq!(0.034f64 + h, 0.034);
    }

    #[test]
    fn dopri5_fifth_order_on_exponential() {
        // y' = y, y(0) = 1: one step of size h has error O(h^6) locally.
        let f = |y: &DVector<f64>| -> Result<DVector<f64>> { Ok(y.clone()) };
        let stepper = DoPri5 {
            rtol: 1e-12,
            atol: 1e-12,
        };
        let y0 = DVector::from_row_slice(&[1.0]);
        let k1 = f(&y0).unwrap();
        let mut errs = Vec::new();
        for h in [0.1, 0.05] {
            let out = stepper.try_step(&f, &y0, &k1, h).unwrap();
            errs.push((out.y_new[0] - h.exp()).abs());
        }
        // Halving h divides the local error by ≈ 2^6 = 64.
        let ratio = errs[0] / errs[1];
        assert!((30.0..130.0).contains(&ratio), "order ratio {ratio}");
    }

    #[test]
    fn dopri5_error_estimate_tracks_true_error() {
        let f = |y: &DVector<f64>| -> Result<DVector<f64>> {
            Ok(DVector::from_row_slice(&[y[1], -y[0]]))
        };
        let stepper = DoPri5 {
            rtol: 1e-8,
            atol: 1e-8,
        };
        let y0 = DVector::from_row_slice(&[1.0, 0.0]);
        let k1 = f(&y0).unwrap();
        let out = stepper.try_step(&f, &y0, &k1, 0.2).unwrap();
        let exact = DVector::from_row_slice(&[0.2f64.cos(), -(0.2f64.sin())]);
        let true_err = (&out.y_new - &exact).norm();
        // err_norm ≈ true_err / tol within an order of magnitude.
        let implied = out.err_norm * 1e-8;
        assert!(implied > true_err / 30.0 && implied < true_err * 30.0);
    }
}
