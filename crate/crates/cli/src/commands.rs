//! Table builders and the `creep`, `rate`, `relax` and `spectrum` commands.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use rheology::{
    compliance, dpsi, psi, solve_relaxation, spectrum, MaterialParams64, ModelKind,
    RelaxationSolution64, TimeGrid,
};

use crate::error::{CliError, Result};
use crate::grid::{GridSpec, Scale};
use crate::svg::{with_unit_jump, Chart, Series};
use crate::table::{Format, Table};

/// Where and how a command writes its table.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRequest {
    pub format: Format,
    /// Table destination; standard output when absent.
    pub out: Option<PathBuf>,
    pub chart_path: Option<PathBuf>,
    pub columns: Vec<String>,
}

impl OutputRequest {
    pub fn stdout(format: Format) -> Self {
        Self {
            format,
            out: None,
            chart_path: None,
            columns: Vec::new(),
        }
    }
}

pub const CREEP_COLUMNS: [&str; 3] = ["t", "psi_becker", "psi_lomnitz"];
pub const RATE_COLUMNS: [&str; 3] = ["t", "dpsi_becker", "dpsi_lomnitz"];
pub const RELAX_COLUMNS: [&str; 3] = ["t", "phi_becker", "phi_lomnitz"];
pub const SPECTRUM_COLUMNS: [&str; 3] = ["tau", "r_becker", "r_lomnitz"];

/// `ψ` and `J` on dimensionless times `ts`; `t_phys = t τ₀`.
pub fn creep_table(ts: &[f64], params: &MaterialParams64) -> Result<Table> {
    params.validate()?;
    let mut table = Table::new([
        "t",
        "psi_becker",
        "psi_lomnitz",
        "t_phys",
        "j_becker",
        "j_lomnitz",
    ]);
    for &t in ts {
        let tp = t * params.tau0;
        table.push(vec![
            t,
            psi(ModelKind::Becker, t)?,
            psi(ModelKind::Lomnitz, t)?,
            tp,
            compliance(params, ModelKind::Becker, tp)?,
            compliance(params, ModelKind::Lomnitz, tp)?,
        ]);
    }
    Ok(table)
}

pub fn rate_table(ts: &[f64], params: &MaterialParams64) -> Result<Table> {
    params.validate()?;
    let mut table = Table::new(["t", "dpsi_becker", "dpsi_lomnitz", "t_phys"]);
    for &t in ts {
        table.push(vec![
            t,
            dpsi(ModelKind::Becker, t)?,
            dpsi(ModelKind::Lomnitz, t)?,
            t * params.tau0,
        ]);
    }
    Ok(table)
}

pub fn spectrum_table(taus: &[f64]) -> Result<Table> {
    let mut table = Table::new(SPECTRUM_COLUMNS);
    for &tau in taus {
        table.push(vec![
            tau,
            spectrum(ModelKind::Becker, tau)?,
            spectrum(ModelKind::Lomnitz, tau)?,
        ]);
    }
    Ok(table)
}

/// Solves the relaxation equation for both models concurrently.
pub fn solve_both(
    q: f64,
    t_max: f64,
    step: f64,
) -> Result<(RelaxationSolution64, RelaxationSolution64)> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CliError::Usage(format!("--step {step} must be positive")));
    }
    if !(t_max > step && t_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tmax {t_max} must exceed --step {step}"
        )));
    }
    let grid = TimeGrid::with_step(t_max, step)?;
    let (b, l) = thread::scope(|s| {
        let b = s.spawn(|| solve_relaxation(ModelKind::Becker, q, &grid));
        let l = s.spawn(|| solve_relaxation(ModelKind::Lomnitz, q, &grid));
        (
            b.join().expect("solver thread"),
            l.join().expect("solver thread"),
        )
    });
    Ok((b?, l?))
}

/// `φ` and `G = φ/J_U` sampled at `ts` (interpolated between solver nodes).
pub fn relax_table(
    ts: &[f64],
    becker: &RelaxationSolution64,
    lomnitz: &RelaxationSolution64,
    params: &MaterialParams64,
) -> Result<Table> {
    params.validate()?;
    let pb = becker.sample(ts)?;
    let pl = lomnitz.sample(ts)?;
    let mut table = Table::new([
        "t",
        "phi_becker",
        "phi_lomnitz",
        "t_phys",
        "g_becker",
        "g_lomnitz",
    ]);
    for ((&t, &b), &l) in ts.iter().zip(&pb).zip(&pl) {
        table.push(vec![
            t,
            b,
            l,
            t * params.tau0,
            b / params.j_u,
            l / params.j_u,
        ]);
    }
    Ok(table)
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Chart of the two model columns against the first column.
pub fn model_chart(
    table: &Table,
    title: &str,
    y_label: &str,
    x_scale: Scale,
    x_range: (f64, f64),
) -> Chart {
    let x_name = &table.columns[0];
    let x = table.column(x_name).unwrap_or_default();
    let in_range = |v: f64| v >= x_range.0 && v <= x_range.1;
    let series = table.columns[1..3]
        .iter()
        .map(|name| {
            let y = table.column(name).unwrap_or_default();
            let mut points: Vec<(f64, f64)> = x
                .iter()
                .zip(&y)
                .filter(|(xv, _)| in_range(**xv))
                .map(|(&a, &b)| (a, b))
                .collect();
            if name == "r_becker" {
                points = with_unit_jump(&points);
            }
            let label = if name.ends_with("becker") {
                "Becker"
            } else {
                "Lomnitz"
            };
            Series {
                label: label.into(),
                points,
            }
        })
        .collect();
    Chart {
        title: title.into(),
        x_label: if x_name == "tau" {
            "retardation time τ".into()
        } else {
            "time t".into()
        },
        y_label: y_label.into(),
        x_scale,
        series,
    }
}

/// Writes `table` (projected onto the requested or default columns) and the optional chart.
pub fn emit(
    table: &Table,
    defaults: &[&str],
    out: &OutputRequest,
    chart: impl FnOnce(&Table) -> Chart,
) -> Result<()> {
    let selected = if out.columns.is_empty() {
        table.select(defaults)?
    } else {
        table.select(&out.columns)?
    };
    let text = selected.encode(out.format);
    match &out.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
        }
    }
    if let Some(path) = &out.chart_path {
        write_file(path, &chart(table).render())?;
    }
    Ok(())
}

fn full_range(grid: &GridSpec) -> (f64, f64) {
    (grid.t_min, grid.t_max)
}

pub fn cmd_creep(grid: &GridSpec, params: &MaterialParams64, out: &OutputRequest) -> Result<()> {
    grid.validate()?;
    let table = creep_table(&grid.values(), params)?;
    emit(&table, &CREEP_COLUMNS, out, |t| {
        model_chart(t, "Creep functions", "ψ(t)", grid.scale, full_range(grid))
    })
}

pub fn cmd_rate(grid: &GridSpec, params: &MaterialParams64, out: &OutputRequest) -> Result<()> {
    grid.validate()?;
    let table = rate_table(&grid.values(), params)?;
    emit(&table, &RATE_COLUMNS, out, |t| {
        model_chart(t, "Rate of creep", "dψ/dt", grid.scale, full_range(grid))
    })
}

/// Relaxation table. `sampling` picks output times; `None` emits every solver node.
pub fn cmd_relax(
    t_max: f64,
    step: f64,
    params: &MaterialParams64,
    sampling: Option<&GridSpec>,
    out: &OutputRequest,
) -> Result<()> {
    params.validate()?;
    let (b, l) = solve_both(params.q, t_max, step)?;
    let (ts, scale) = match sampling {
        Some(g) => {
            g.validate()?;
            if g.t_max > b.t_max() {
                return Err(CliError::Usage(format!(
                    "sampling range ends at {} beyond the solved range {}",
                    g.t_max,
                    b.t_max()
                )));
            }
            (g.values(), g.scale)
        }
        None => (b.times.clone(), Scale::Linear),
    };
    let table = relax_table(&ts, &b, &l, params)?;
    let range = (ts[0], ts[ts.len() - 1]);
    emit(&table, &RELAX_COLUMNS, out, |t| {
        model_chart(t, "Relaxation functions", "φ(t)", scale, range)
    })
}

pub fn cmd_spectrum(grid: &GridSpec, out: &OutputRequest) -> Result<()> {
    grid.validate()?;
    if grid.t_min <= 0.0 {
        return Err(CliError::Usage("the spectrum grid needs --tmin > 0".into()));
    }
    let table = spectrum_table(&grid.values())?;
    emit(&table, &SPECTRUM_COLUMNS, out, |t| {
        model_chart(
            t,
            "Retardation spectra",
            "R(τ)",
            grid.scale,
            full_range(grid),
        )
    })
}
