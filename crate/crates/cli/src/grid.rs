use std::fmt;

use clap::ValueEnum;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Linear,
    Log,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "linear",
            Scale::Log => "log",
        })
    }
}

/// Sampling of the abscissa for a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub scale: Scale,
}

impl GridSpec {
    pub fn new(t_min: f64, t_max: f64, points: usize, scale: Scale) -> Result<Self> {
        let g = Self {
            t_min,
            t_max,
            points,
            scale,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min.is_finite() && self.t_max.is_finite()) {
            return Err(CliError::Usage("grid bounds must be finite".into()));
        }
        if self.t_min < 0.0 {
            return Err(CliError::Usage(format!(
                "--tmin {} must be non-negative",
                self.t_min
            )));
        }
        if self.t_max <= self.t_min {
            return Err(CliError::Usage(format!(
                "--tmax {} must exceed --tmin {}",
                self.t_max, self.t_min
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage("--points must be at least 2".into()));
        }
        if self.scale == Scale::Log && self.t_min <= 0.0 {
            return Err(CliError::Usage("log scale requires --tmin > 0".into()));
        }
        Ok(())
    }

    /// Grid values; the end points are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        let mut v: Vec<f64> = match self.scale {
            Scale::Linear => (0..self.points)
                .map(|i| self.t_min + (self.t_max - self.t_min) * i as f64 / last)
                .collect(),
            Scale::Log => {
                let (a, b) = (self.t_min.log10(), self.t_max.log10());
                (0..self.points)
                    .map(|i| 10f64.powf(a + (b - a) * i as f64 / last))
                    .collect()
            }
        };
        v[0] = self.t_min;
        v[self.points - 1] = self.t_max;
        v
    }
}
