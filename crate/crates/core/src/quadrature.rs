//! Globally adaptive 7/15-point Gauss–Kronrod integration over finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{check_param, Error, Result};
use crate::Real;

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integrand evaluations per panel.
pub const NODES_PER_PANEL: usize = 15;

/// Tolerances and node budget for the spectral integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    /// Upper bound on integrand evaluations.
    pub max_nodes: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-9),
            rel_tol: T::lit(1e-9),
            max_nodes: 4096,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        check_param(
            "abs_tol",
            self.abs_tol,
            self.abs_tol > T::zero(),
            "must be positive",
        )?;
        check_param(
            "rel_tol",
            self.rel_tol,
            self.rel_tol > T::zero(),
            "must be positive",
        )?;
        check_param(
            "max_nodes",
            T::from_usize_lossy(self.max_nodes),
            self.max_nodes >= 16,
            "must be at least 16",
        )
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub nodes: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Real> Eq for Panel<T> {}

impl<T: Real> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

fn gauss_kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Result<Panel<T>> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * pair;
        }
    }
    let value = kronrod * half_len;
    if !value.is_finite() {
        return Err(Error::Internal(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    let error = ((kronrod - gauss) * half_len).abs();
    Ok(Panel { a, b, value, error })
}

/// Integrates `f` over the union of the finite `intervals`, refining the panel with
/// the largest error estimate until the summed estimate drops below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    intervals: &[(T, T)],
    cfg: &QuadratureConfig<T>,
) -> Result<Estimate<T>> {
    cfg.validate()?;
    let mut heap = BinaryHeap::new();
    let mut nodes = 0;
    for &(a, b) in intervals {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Internal(format!(
                "bad integration interval [{a}, {b}]"
            )));
        }
        heap.push(gauss_kronrod(&f, a, b)?);
        nodes += NODES_PER_PANEL;
    }
    loop {
        let value = heap.iter().fold(T::zero(), |s, p| s + p.value);
        let error = heap.iter().fold(T::zero(), |s, p| s + p.error);
        let target = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= target {
            return Ok(Estimate {
                value,
                error,
                nodes,
            });
        }
        if nodes + 2 * NODES_PER_PANEL > cfg.max_nodes {
            return Err(Error::Convergence {
                estimate: error.as_f64(),
                target: target.as_f64(),
                max_nodes: cfg.max_nodes,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            return Err(Error::Convergence {
                estimate: error.as_f64(),
                target: target.as_f64(),
                max_nodes: cfg.max_nodes,
            });
        }
        heap.push(gauss_kronrod(&f, worst.a, mid)?);
        heap.push(gauss_kronrod(&f, mid, worst.b)?);
        nodes += 2 * NODES_PER_PANEL;
    }
}
