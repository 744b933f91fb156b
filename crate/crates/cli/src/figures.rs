//! The four comparison figures, each as one CSV table and two SVG charts
//! (linear and logarithmic abscissa).

use std::path::{Path, PathBuf};

use rheology::MaterialParams64;

use crate::commands::{
    creep_table, model_chart, rate_table, relax_table, solve_both, spectrum_table, write_file,
    CREEP_COLUMNS, RATE_COLUMNS, RELAX_COLUMNS, SPECTRUM_COLUMNS,
};
use crate::error::{CliError, Result};
use crate::grid::{GridSpec, Scale};
use crate::table::Table;

pub const LINEAR_RANGE: (f64, f64) = (0.0, 10.0);
pub const LOG_RANGE: (f64, f64) = (1e-2, 1e2);
pub const SPECTRUM_RANGE: (f64, f64) = (1e-2, 1e3);
pub const SPECTRUM_LINEAR_RANGE: (f64, f64) = (1e-2, 10.0);
const LINEAR_POINTS: usize = 101;
const LOG_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    pub q: f64,
    pub step: f64,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self { q: 1.0, step: 5e-3 }
    }
}

/// Output file names, in the order they are written.
pub const FILE_NAMES: [&str; 12] = [
    "fig1_creep.csv",
    "fig1a_creep_linear.svg",
    "fig1b_creep_log.svg",
    "fig2_rate.csv",
    "fig2a_rate_linear.svg",
    "fig2b_rate_log.svg",
    "fig3_relaxation.csv",
    "fig3a_relaxation_linear.svg",
    "fig3b_relaxation_log.svg",
    "fig4_spectrum.csv",
    "fig4a_spectrum_linear.svg",
    "fig4b_spectrum_log.svg",
];

/// Union of the linear and logarithmic time samples, ascending, without duplicates.
pub fn time_samples() -> Vec<f64> {
    let lin = GridSpec {
        t_min: LINEAR_RANGE.0,
        t_max: LINEAR_RANGE.1,
        points: LINEAR_POINTS,
        scale: Scale::Linear,
    };
    let log = GridSpec {
        t_min: LOG_RANGE.0,
        t_max: LOG_RANGE.1,
        points: LOG_POINTS,
        scale: Scale::Log,
    };
    let mut ts: Vec<f64> = lin.values().into_iter().chain(log.values()).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

pub fn tau_samples() -> Vec<f64> {
    GridSpec {
        t_min: SPECTRUM_RANGE.0,
        t_max: SPECTRUM_RANGE.1,
        points: LOG_POINTS,
        scale: Scale::Log,
    }
    .values()
}

struct Figure {
    stem: &'static str,
    title: &'static str,
    y_label: &'static str,
    columns: [&'static str; 3],
    linear: (f64, f64),
    log: (f64, f64),
    table: Table,
}

/// Writes all figure files into `dir` (created if missing) and returns their paths.
pub fn cmd_figures(dir: &Path, opts: &FigureOptions) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let params = MaterialParams64::new(1.0, opts.q, 1.0)?;
    let ts = time_samples();
    let (b, l) = solve_both(opts.q, LOG_RANGE.1, opts.step)?;

    let figures = [
        Figure {
            stem: "fig1",
            title: "Creep functions",
            y_label: "ψ(t)",
            columns: CREEP_COLUMNS,
            linear: LINEAR_RANGE,
            log: LOG_RANGE,
            table: creep_table(&ts, &params)?,
        },
        Figure {
            stem: "fig2",
            title: "Rate of creep",
            y_label: "dψ/dt",
            columns: RATE_COLUMNS,
            linear: LINEAR_RANGE,
            log: LOG_RANGE,
            table: rate_table(&ts, &params)?,
        },
        Figure {
            stem: "fig3",
            title: "Relaxation functions",
            y_label: "φ(t)",
            columns: RELAX_COLUMNS,
            linear: LINEAR_RANGE,
            log: LOG_RANGE,
            table: relax_table(&ts, &b, &l, &params)?,
        },
        Figure {
            stem: "fig4",
            title: "Retardation spectra",
            y_label: "R(τ)",
            columns: SPECTRUM_COLUMNS,
            linear: SPECTRUM_LINEAR_RANGE,
            log: SPECTRUM_RANGE,
            table: spectrum_table(&tau_samples())?,
        },
    ];

    let mut written = Vec::with_capacity(FILE_NAMES.len());
    for (fig, names) in figures.iter().zip(FILE_NAMES.chunks(3)) {
        debug_assert!(names[0].starts_with(fig.stem));
        let table = fig.table.select(&fig.columns)?;
        let csv = dir.join(names[0]);
        write_file(&csv, &table.to_csv())?;
        written.push(csv);
        for (name, scale, range) in [
            (names[1], Scale::Linear, fig.linear),
            (names[2], Scale::Log, fig.log),
        ] {
            let path = dir.join(name);
            write_file(
                &path,
                &model_chart(&table, fig.title, fig.y_label, scale, range).render(),
            )?;
            written.push(path);
        }
    }
    Ok(written)
}
