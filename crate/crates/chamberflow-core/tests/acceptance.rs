//! Acceptance gate: the ten end-to-end criteria, one test each, each
//! printing a single `criterion NN <name>: PASS/FAIL` line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines
//! for passing criteria too (the harness captures output of passing tests).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DVector;

use chamberflow_core::flow::{
    backward_trace, cascade, integrate, minimal_point_multistart, stratum_normal_residual,
    type_i_estimate, Cascade, CascadeEnd, FlowDomain, IntegrateOpts, Termination, Trajectory,
};
use chamberflow_core::rootsys::{default_catalog, sample_interior, Action, Catalog};
use chamberflow_core::verify::{
    consistency_sweep, cot_series_check, fd_gradient_check, table3_crosscheck, transcription_for,
    Allowlist, Verdict, SWEEP_SEED,
};
use chamberflow_core::{linalg, meanfield};

fn catalog() -> Catalog {
    default_catalog()
}

fn action(cat: &Catalog, name: &str) -> Action {
    Action::from_catalog(cat, name, &BTreeMap::new()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn all_actions(cat: &Catalog) -> Vec<Action> {
    cat.rows().iter().map(|r| action(cat, &r.name)).collect()
}

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    eprintln!("criterion {n:02} {name}: {verdict} ({detail})");
    assert!(pass, "criterion {n:02} {name}: {detail}");
}

#[test]
fn criterion_01_gradient_identity() {
    let cat = catalog();
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    for a in all_actions(&cat) {
        for y in sample_interior(&a.chamber, 100, 0.05, 11).unwrap() {
            let rel = fd_gradient_check(&a, &y, 1e-6).unwrap();
            if rel > worst.0 {
                worst = (rel, a.name().to_string());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = worst.0 <= 1e-5 && secs < 10.0;
    report(
        1,
        "gradient-identity",
        pass,
        &format!(
            "35 rows x 100 pts, worst rel {:.3e} ({}), {:.2}s",
            worst.0, worst.1, secs
        ),
    );
}

#[test]
fn criterion_02_convexity() {
    let cat = catalog();
    let mut min_eig = f64::INFINITY;
    let mut at = String::new();
    for a in all_actions(&cat) {
        for y in sample_interior(&a.chamber, 100, 0.05, 12).unwrap() {
            let h = meanfield::hessian_rho(&a, &y).unwrap();
            let eig = linalg::sym_eigenvalues(&h)
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            if eig < min_eig {
                min_eig = eig;
                at = a.name().to_string();
            }
        }
    }
    report(
        2,
        "convexity",
        min_eig > 0.0,
        &format!("min Hessian eigenvalue {min_eig:.6e} ({at})"),
    );
}

#[test]
fn criterion_03_lift_consistency() {
    let cat = catalog();
    let rows = consistency_sweep(&cat).unwrap();
    let (name, worst) = rows
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(n, v)| (n.clone(), *v))
        .unwrap();
    report(
        3,
        "lift-consistency",
        rows.len() == 35 && worst <= 1e-11,
        &format!("{} rows, worst deviation {worst:.3e} ({name})", rows.len()),
    );
}

#[test]
fn criterion_04_cot_series() {
    // Exact cancellation of the partial sum at the symmetric point, at
    // every truncation depth (bit-exact, not just small).
    let mut exact_ok = true;
    for j in [0u32, 1, 2, 5, 10, 100, 1_000, 10_000] {
        let c = cot_series_check(PI, j).unwrap();
        exact_ok &= c.partial == 0.0;
    }
    // O(1/J) tail: the log-log slope of the error over three decades.
    let mut slopes = Vec::new();
    let mut decreasing = true;
    for theta in [0.3, PI / 2.0, 2.7] {
        let js = [100u32, 1_000, 10_000];
        let errs: Vec<f64> = js
            .iter()
            .map(|&j| cot_series_check(theta, j).unwrap().error)
            .collect();
        decreasing &= errs[2] < errs[1] && errs[1] < errs[0];
        let ls: Vec<f64> = js.iter().map(|&j| (j as f64).ln()).collect();
        let le: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
        let (_, slope) = linalg::fit_line(&ls, &le).unwrap();
        slopes.push(slope);
    }
    let slopes_ok = slopes.iter().all(|s| (s + 1.0).abs() <= 0.1);
    report(
        4,
        "cot-series",
        exact_ok && decreasing && slopes_ok,
        &format!(
            "theta=pi exact at all J; log-log slopes {:.3}/{:.3}/{:.3} (target -1)",
            slopes[0], slopes[1], slopes[2]
        ),
    );
}

#[test]
fn criterion_05_minimal_point() {
    let cat = catalog();
    let a1 = action(&cat, "rho1-SU3-SO3");
    let dom1 = FlowDomain::chamber(&a1);
    let (w0, _) = minimal_point_multistart(&dom1, 5, 21).unwrap();
    let target = DVector::from_row_slice(&[PI / 6.0, 0.0]);
    let dev = (&w0 - &target).norm();

    let mut worst_spread = (0.0f64, String::new());
    for a in all_actions(&cat) {
        let dom = FlowDomain::chamber(&a);
        let (_, spread) = minimal_point_multistart(&dom, 5, 21).unwrap();
        if spread > worst_spread.0 {
            worst_spread = (spread, a.name().to_string());
        }
    }
    report(
        5,
        "minimal-point",
        dev <= 1e-10 && worst_spread.0 <= 1e-9,
        &format!(
            "rho1 minimum off by {dev:.3e}; worst multi-start spread {:.3e} ({})",
            worst_spread.0, worst_spread.1
        ),
    );
}

#[test]
fn criterion_06_collapse_type_i() {
    let cat = catalog();
    let a = action(&cat, "rho1-SU3-SO3");
    let dom = FlowDomain::chamber(&a);
    let start = Instant::now();
    let (traj, term) = integrate(
        &dom,
        &DVector::from_row_slice(&[PI / 12.0, 0.0]),
        &IntegrateOpts::default(),
    )
    .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let ev = match term {
        Termination::Collapse(ev) => ev,
        other => panic!("expected collapse, got {other:?}"),
    };
    let limit_dev = ev.limit_point().norm();
    let rate = ev.blowup_rate_est;
    let ti = type_i_estimate(&a, &traj, &ev).unwrap();
    let pass = ev.t_est.is_finite()
        && limit_dev <= 1e-6
        && (rate - 8.0).abs() <= 0.02 * 8.0
        && (ti.est - 0.5).abs() <= 0.02 * 0.5
        && ti.theory == 0.5
        && secs < 1.0;
    report(
        6,
        "collapse-type-I",
        pass,
        &format!(
            "T_est {:.8}, |limit| {limit_dev:.2e}, rate {rate:.4} (vs 8), type-I {:.4} (vs 0.5), {:.2}s",
            ev.t_est, ti.est, secs
        ),
    );
}

#[test]
fn criterion_07_stratum_tangency() {
    let cat = catalog();
    let mut bad: Vec<(String, f64)> = Vec::new();
    let mut rows = 0;
    for a in all_actions(&cat) {
        rows += 1;
        let mut worst = 0.0f64;
        for s in a.strata().unwrap().iter().filter(|s| s.dim >= 1) {
            let dom = FlowDomain::stratum(&a, s).unwrap();
            for z in dom.sample_starts(20, 7).unwrap() {
                let y = dom.embed(&z);
                worst = worst.max(stratum_normal_residual(&a, s, &y).unwrap());
            }
        }
        if worst > 1e-10 {
            bad.push((a.name().to_string(), worst));
        }
    }
    let detail = if bad.is_empty() {
        format!("{rows} rows, all facet residuals <= 1e-10")
    } else {
        let list: Vec<String> = bad.iter().map(|(n, w)| format!("{n} {w:.2e}")).collect();
        format!(
            "{}/{rows} rows exceed 1e-10: {}",
            bad.len(),
            list.join(", ")
        )
    };
    report(7, "stratum-tangency", bad.is_empty(), &detail);
}

/// Strict per-segment monotonicity of the barrier along a cascade.
fn monotone_segments(c: &Cascade) -> bool {
    let segs: Vec<&Trajectory> = c
        .steps
        .iter()
        .map(|s| &s.trajectory)
        .chain(c.tail.as_ref())
        .collect();
    segs.iter().all(|t| {
        let first = t.samples.first().unwrap().rho;
        let last = t.samples.last().unwrap().rho;
        let stepwise = t.samples.windows(2).all(|w| w[1].rho >= w[0].rho - 1e-9);
        stepwise && (t.samples.len() == 1 || last > first)
    })
}

#[test]
fn criterion_08_cascade() {
    let cat = catalog();
    let opts = IntegrateOpts::default();
    let mut runs = 0u32;
    let mut max_steps = 0usize;
    for a in all_actions(&cat) {
        for y in sample_interior(&a.chamber, 20, 0.05, 8).unwrap() {
            let c = cascade(&a, &y, &opts).unwrap_or_else(|e| panic!("{}: {e}", a.name()));
            assert!(
                c.steps.len() <= 2,
                "{}: cascade took {} collapse steps from {y:?}",
                a.name(),
                c.steps.len()
            );
            assert!(
                matches!(
                    c.end,
                    CascadeEnd::Vertex { .. } | CascadeEnd::FixedPoint { .. }
                ),
                "{}: unexpected cascade end",
                a.name()
            );
            assert!(
                monotone_segments(&c),
                "{}: non-monotone segment from {y:?}",
                a.name()
            );
            max_steps = max_steps.max(c.steps.len());
            runs += 1;
        }
    }
    report(
        8,
        "cascade",
        runs == 700,
        &format!("{runs} cascades (35 rows x 20 starts), max {max_steps} collapse steps"),
    );
}

#[test]
fn criterion_09_backward_trace() {
    let cat = catalog();
    let a = action(&cat, "rho1-SU3-SO3");
    let trajs = backward_trace(
        &a,
        &DVector::from_row_slice(&[0.0, 0.3]),
        &[1e-3, 1e-4],
        &IntegrateOpts::default(),
    )
    .unwrap();
    let target = DVector::from_row_slice(&[PI / 6.0, 0.0]);
    let ends: Vec<DVector<f64>> = trajs
        .iter()
        .map(|t| t.samples.last().unwrap().position())
        .collect();
    let d1 = (&ends[0] - &target).norm();
    let d2 = (&ends[1] - &target).norm();
    let mutual = (&ends[0] - &ends[1]).norm();
    report(
        9,
        "backward-trace",
        d1 <= 1e-6 && d2 <= 1e-6 && mutual <= 1e-6,
        &format!("endpoint errors {d1:.2e}/{d2:.2e}, mutual {mutual:.2e}"),
    );
}

#[test]
fn criterion_10_table_audit() {
    let cat = catalog();
    let allow = Allowlist::builtin();
    let mut matches = 0;
    let mut known = 0;
    let mut mismatches = Vec::new();
    let mut rho1_strict = false;
    for a in all_actions(&cat) {
        let row =
            transcription_for(a.name()).unwrap_or_else(|| panic!("{}: no transcription", a.name()));
        let rep = table3_crosscheck(&a, row, 100, &allow, SWEEP_SEED).unwrap();
        match rep.verdict {
            Verdict::Match => matches += 1,
            Verdict::KnownDiscrepancy => known += 1,
            Verdict::Mismatch => mismatches.push(rep.name.clone()),
        }
        if a.name() == "rho1-SU3-SO3" {
            rho1_strict = rep.verdict == Verdict::Match
                && rep.diffs.is_empty()
                && rep.max_deviation.is_some_and(|d| d <= 1e-12);
        }
    }
    report(
        10,
        "table-audit",
        mismatches.is_empty() && rho1_strict && matches + known == 35,
        &format!(
            "{matches} match, {known} known-discrepancy, {} mismatch{}; rho1 strict at 1e-12: {rho1_strict}",
            mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(" ({})", mismatches.join(", "))
            }
        ),
    );
}
