//! Built-in self checks: special-function accuracy, spectral round trip,
//! solver accuracy and convergence, and the qualitative model comparisons.

use std::fmt::Write;

use rheology::specfun::{ein_series, ein_via_e1};
use rheology::{
    dpsi, e1, ein, estimate_order, psi, reconstruct_creep, solve_relaxation, spectrum,
    EvalControl64, ModelKind, QuadratureConfig64, RelaxationSolution64, TimeGrid,
};

use crate::commands::solve_both;
use crate::error::Result;

/// Reference values from an independent adaptive Simpson evaluation of the defining integrals.
pub const EIN_AT_ONE: f64 = 0.796_599_599_297_053_1;
pub const E1_AT_ONE: f64 = 0.219_383_934_395_520_27;

/// Knobs for negative controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    /// Multiplies the spectral densities used in the round-trip check.
    pub spectrum_scale: f64,
    /// Solver step for the small-time series check.
    pub small_t_step: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            spectrum_scale: 1.0,
            small_t_step: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub achieved: f64,
    pub requirement: String,
    pub passed: bool,
}

fn outcome(
    name: impl Into<String>,
    achieved: f64,
    requirement: impl Into<String>,
    passed: bool,
) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        achieved,
        requirement: requirement.into(),
        passed,
    }
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect()
}

fn special_functions() -> Result<Vec<CheckOutcome>> {
    let ctl = EvalControl64::default();
    let ein_err = (ein(1.0, &ctl)? - EIN_AT_ONE).abs();
    let e1_err = (e1(1.0)? - E1_AT_ONE).abs();
    let mut overlap = 0.0f64;
    for i in 0..=240 {
        let t = 4.0 + 12.0 * i as f64 / 240.0;
        let s = ein_series(t, &ctl).unwrap_or(f64::NAN);
        overlap = overlap.max((s - ein_via_e1(t)?).abs());
    }
    let overlap = if overlap.is_nan() {
        f64::INFINITY
    } else {
        overlap
    };
    Ok(vec![
        outcome("ein(1) vs reference", ein_err, "<= 1e-10", ein_err <= 1e-10),
        outcome("e1(1) vs reference", e1_err, "<= 1e-10", e1_err <= 1e-10),
        outcome(
            "ein regime overlap on [4,16]",
            overlap,
            "<= 1e-12",
            overlap <= 1e-12,
        ),
    ])
}

fn spectral_round_trip(scale: f64) -> Result<Vec<CheckOutcome>> {
    let cfg = QuadratureConfig64::default();
    let mut out = Vec::new();
    for kind in ModelKind::ALL {
        let start = if kind == ModelKind::Becker { 1.0 } else { 0.0 };
        let mut worst = 0.0f64;
        for t in log_space(1e-2, 1e2, 50) {
            let back = reconstruct_creep(
                |tau| scale * spectrum(kind, tau).unwrap_or(0.0),
                start,
                t,
                &cfg,
            )?;
            worst = worst.max((back - psi(kind, t)?).abs());
        }
        out.push(outcome(
            format!("spectral round trip ({kind})"),
            worst,
            "<= 1e-8",
            worst <= 1e-8,
        ));
    }
    Ok(out)
}

fn small_time_series(step: f64) -> Result<Vec<CheckOutcome>> {
    let grid = TimeGrid::with_step(0.01f64.max(step), step)?;
    let mut out = Vec::new();
    for (kind, b) in [(ModelKind::Becker, 0.75), (ModelKind::Lomnitz, 1.0)] {
        let sol = solve_relaxation(kind, 1.0, &grid)?;
        let ts: Vec<f64> = (1..=10).map(|i| 1e-3 * i as f64).collect();
        let phi = sol.sample(&ts)?;
        // worst ratio of the deviation to the allowed 10 t³
        let ratio = ts
            .iter()
            .zip(&phi)
            .map(|(&t, &p)| (p - (1.0 - t + b * t * t)).abs() / (10.0 * t.powi(3)))
            .fold(0.0, f64::max);
        out.push(outcome(
            format!("small-t series, h={step} ({kind})"),
            ratio,
            "|err|/(10 t^3) <= 1",
            ratio <= 1.0,
        ));
    }
    Ok(out)
}

fn convergence_order() -> Result<Vec<CheckOutcome>> {
    ModelKind::ALL
        .iter()
        .map(|&kind| {
            let p: f64 = estimate_order(kind, 1.0, 10.0, 1000, 3)?;
            Ok(outcome(
                format!("observed order ({kind})"),
                p,
                "in [1.8, 2.2]",
                (1.8..=2.2).contains(&p),
            ))
        })
        .collect()
}

fn ordering(b: &RelaxationSolution64, l: &RelaxationSolution64) -> Result<Vec<CheckOutcome>> {
    let ts = log_space(1e-3, 1e2, 200);
    let mut creep = f64::INFINITY;
    let mut rate = f64::INFINITY;
    for &t in &ts {
        creep = creep.min(psi(ModelKind::Becker, t)? - psi(ModelKind::Lomnitz, t)?);
        rate = rate.min(dpsi(ModelKind::Becker, t)? - dpsi(ModelKind::Lomnitz, t)?);
    }
    let relax = l
        .sample(&ts)?
        .iter()
        .zip(b.sample(&ts)?)
        .map(|(pl, pb)| pl - pb)
        .fold(f64::INFINITY, f64::min);
    Ok(vec![
        outcome("psi_B - psi_L margin", creep, "> 1e-12", creep > 1e-12),
        outcome("dpsi_B - dpsi_L margin", rate, "> 1e-12", rate > 1e-12),
        outcome("phi_L - phi_B margin", relax, "> 1e-12", relax > 1e-12),
    ])
}

fn asymptotics() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for kind in ModelKind::ALL {
        let r = 1e3 * dpsi(kind, 1e3)?;
        out.push(outcome(
            format!("t*dpsi at 1e3 ({kind})"),
            r,
            "in [0.99, 1]",
            (0.99..=1.0).contains(&r),
        ));
        let s = 1e3 * spectrum(kind, 1e3)?;
        out.push(outcome(
            format!("tau*R at 1e3 ({kind})"),
            s,
            "in [0.99, 1]",
            (0.99..=1.0).contains(&s),
        ));
    }
    Ok(out)
}

fn spectrum_peak() -> Result<Vec<CheckOutcome>> {
    let taus = log_space(1e-2, 1e3, 5001);
    let values = taus
        .iter()
        .map(|&t| spectrum(ModelKind::Lomnitz, t))
        .collect::<rheology::Result<Vec<f64>>>()?;
    let (imax, vmax) =
        values
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |a, (i, &v)| if v > a.1 { (i, v) } else { a });
    let spacing = taus[imax + 1] / taus[imax];
    let located = taus[imax] / spacing <= 1.0 && 1.0 <= taus[imax] * spacing;
    let peak_err = (spectrum(ModelKind::Lomnitz, 1.0)? - (-1.0f64).exp()).abs();
    let mut becker_dev = 0.0f64;
    for &t in &taus {
        let want = if t >= 1.0 { 1.0 / t } else { 0.0 };
        becker_dev = becker_dev.max((spectrum(ModelKind::Becker, t)? - want).abs());
    }
    Ok(vec![
        outcome(
            "Lomnitz peak location",
            taus[imax],
            "within one grid step of 1",
            located && vmax <= (-1.0f64).exp(),
        ),
        outcome(
            "Lomnitz peak value error",
            peak_err,
            "<= 1e-12",
            peak_err <= 1e-12,
        ),
        outcome(
            "Becker spectrum deviation",
            becker_dev,
            "== 0",
            becker_dev == 0.0,
        ),
    ])
}

fn monotone_relaxation(b: &RelaxationSolution64, l: &RelaxationSolution64) -> Vec<CheckOutcome> {
    [b, l]
        .iter()
        .map(|sol| {
            let min_drop = sol
                .phi
                .windows(2)
                .map(|w| w[0] - w[1])
                .fold(f64::INFINITY, f64::min);
            let min_val = sol.phi.iter().copied().fold(f64::INFINITY, f64::min);
            outcome(
                format!("phi decreasing & positive on (0,100] ({})", sol.kind),
                min_drop.min(min_val),
                "> 0",
                min_drop > 0.0 && min_val > 0.0,
            )
        })
        .collect()
}

/// Runs every check and returns one outcome per line of the report.
pub fn run_checks(opts: &ValidateOptions) -> Result<Vec<CheckOutcome>> {
    let (b, l) = solve_both(1.0, 100.0, 5e-3)?;
    let mut all = special_functions()?;
    all.extend(spectral_round_trip(opts.spectrum_scale)?);
    all.extend(small_time_series(opts.small_t_step)?);
    all.extend(convergence_order()?);
    all.extend(ordering(&b, &l)?);
    all.extend(asymptotics()?);
    all.extend(spectrum_peak()?);
    all.extend(monotone_relaxation(&b, &l));
    Ok(all)
}

pub fn report(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(
            s,
            "{:<4}  {:<width$}  {:>13.6e}  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.achieved,
            o.requirement
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(s, "{} checks, {} failed", outcomes.len(), failed);
    s
}
