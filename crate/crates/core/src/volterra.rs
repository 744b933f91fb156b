//! Relaxation function from the creep rate.
//!
//! `φ(t) = 1 − q ∫₀ᵗ ψ'(t') φ(t − t') dt'` is discretised on a uniform grid with
//! the trapezoidal rule applied to the convolution. With `kₘ = ψ'(tₘ)`:
//!
//! ```text
//! φ₀ = 1
//! φₙ (1 + q h k₀/2) = 1 − q h [ kₙ φ₀/2 + Σ_{j=1}^{n−1} k_{n−j} φⱼ ]
//! ```
//!
//! Each step costs O(n), so a solve with `N` steps is O(N²).

use std::fmt;
use std::thread;

use crate::error::{check_param, Error, Result};
use crate::interp::MonotoneCubic;
use crate::models::{dpsi, MaterialParams, ModelKind};
use crate::Real;

/// Uniform grid `tₙ = n h`, `h = t_max / n_steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    pub t_max: T,
    pub n_steps: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t_max: T, n_steps: usize) -> Result<Self> {
        let g = Self { t_max, n_steps };
        g.validate()?;
        Ok(g)
    }

    /// Grid reaching `t_max` with spacing as close to `step` as an integer step count allows.
    pub fn with_step(t_max: T, step: T) -> Result<Self> {
        check_param(
            "step",
            step,
            step.is_finite() && step > T::zero(),
            "must be positive",
        )?;
        check_param(
            "t_max",
            t_max,
            t_max.is_finite() && t_max >= step,
            "must be at least one step",
        )?;
        let n = (t_max / step).round().to_usize().unwrap_or(0).max(1);
        Self::new(t_max, n)
    }

    pub fn validate(&self) -> Result<()> {
        check_param(
            "t_max",
            self.t_max,
            self.t_max.is_finite() && self.t_max > T::zero(),
            "must be positive and finite",
        )?;
        check_param(
            "n_steps",
            T::from_usize_lossy(self.n_steps),
            self.n_steps >= 1,
            "must be at least 1",
        )
    }

    pub fn step(&self) -> T {
        self.t_max / T::from_usize_lossy(self.n_steps)
    }

    /// `n h`, with the final node pinned to `t_max`.
    pub fn time(&self, n: usize) -> T {
        if n == self.n_steps {
            self.t_max
        } else {
            T::from_usize_lossy(n) * self.step()
        }
    }

    pub fn times(&self) -> Vec<T> {
        (0..=self.n_steps).map(|n| self.time(n)).collect()
    }
}

/// Quadrature rule used to discretise the convolution integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ImplicitTrapezoidal,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::ImplicitTrapezoidal => f.write_str("implicit-trapezoidal"),
        }
    }
}

/// Discrete relaxation function on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationSolution<T> {
    pub kind: ModelKind,
    pub q: T,
    pub times: Vec<T>,
    pub phi: Vec<T>,
    pub step: T,
    pub scheme: Scheme,
}

impl<T: Real> RelaxationSolution<T> {
    pub fn t_max(&self) -> T {
        *self.times.last().expect("solution has at least two nodes")
    }

    /// Samples `φ` at arbitrary times in `[0, t_max]` by monotone cubic interpolation.
    pub fn sample(&self, at: &[T]) -> Result<Vec<T>> {
        let interp = MonotoneCubic::new(self.times.clone(), self.phi.clone())?;
        at.iter().map(|&t| interp.eval(t)).collect()
    }
}

/// Solves the relaxation equation for `φ` on `grid`.
pub fn solve_relaxation<T: Real>(
    kind: ModelKind,
    q: T,
    grid: &TimeGrid<T>,
) -> Result<RelaxationSolution<T>> {
    check_param(
        "q",
        q,
        q.is_finite() && q > T::zero(),
        "must be positive and finite",
    )?;
    solve_unchecked(kind, q, grid)
}

// Accepts q = 0, for which the recursion returns φ ≡ 1.
fn solve_unchecked<T: Real>(
    kind: ModelKind,
    q: T,
    grid: &TimeGrid<T>,
) -> Result<RelaxationSolution<T>> {
    grid.validate()?;
    let n = grid.n_steps;
    let h = grid.step();
    let times = grid.times();
    let kernel = times
        .iter()
        .map(|&t| dpsi(kind, t))
        .collect::<Result<Vec<T>>>()?;

    let half = T::lit(0.5);
    let qh = q * h;
    let denom = T::one() + qh * kernel[0] * half;
    if !(denom > T::zero()) {
        return Err(Error::Internal(format!(
            "non-positive step denominator {denom}"
        )));
    }

    let mut phi = Vec::with_capacity(n + 1);
    phi.push(T::one());
    for step in 1..=n {
        // Σ_{j=1}^{n-1} k_{n-j} φ_j
        let history = phi[1..step]
            .iter()
            .zip(kernel[1..step].iter().rev())
            .fold(T::zero(), |acc, (&p, &k)| acc + k * p);
        let value = (T::one() - qh * (kernel[step] * half + history)) / denom;
        if !value.is_finite() {
            return Err(Error::NonFinite { index: step });
        }
        phi.push(value);
    }

    Ok(RelaxationSolution {
        kind,
        q,
        times,
        phi,
        step: h,
        scheme: Scheme::ImplicitTrapezoidal,
    })
}

/// Relaxation modulus `G(t τ₀) = φ(t)/J_U` as `(dimensional time, modulus)` pairs.
pub fn relaxation_modulus<T: Real>(
    params: &MaterialParams<T>,
    sol: &RelaxationSolution<T>,
) -> Result<Vec<(T, T)>> {
    params.validate()?;
    Ok(sol
        .times
        .iter()
        .zip(&sol.phi)
        .map(|(&t, &p)| (t * params.tau0, p / params.j_u))
        .collect())
}

/// Observed order of accuracy from solves with `base_steps · 2^k` steps, `k < levels`.
///
/// Uses the last three levels: `p = log₂(‖φ_n − φ_2n‖∞ / ‖φ_2n − φ_4n‖∞)`, with the
/// norms taken over the coarser grid of each pair. Levels are solved in parallel.
pub fn estimate_order<T: Real>(
    kind: ModelKind,
    q: T,
    t_max: T,
    base_steps: usize,
    levels: usize,
) -> Result<T> {
    check_param(
        "levels",
        T::from_usize_lossy(levels),
        levels >= 3,
        "at least three levels are required",
    )?;
    check_param(
        "q",
        q,
        q.is_finite() && q >= T::zero(),
        "must be non-negative and finite",
    )?;
    let grids = (0..levels)
        .map(|k| TimeGrid::new(t_max, base_steps << k))
        .collect::<Result<Vec<_>>>()?;

    let solutions: Vec<Result<RelaxationSolution<T>>> = thread::scope(|scope| {
        let handles: Vec<_> = grids
            .iter()
            .map(|g| scope.spawn(move || solve_unchecked(kind, q, g)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let solutions = solutions.into_iter().collect::<Result<Vec<_>>>()?;

    let diff = |coarse: &RelaxationSolution<T>, fine: &RelaxationSolution<T>| {
        coarse
            .phi
            .iter()
            .zip(fine.phi.iter().step_by(2))
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    };
    let s = &solutions[levels - 3..];
    let d_coarse = diff(&s[0], &s[1]);
    let d_fine = diff(&s[1], &s[2]);
    let floor = T::lit(T::PRECISION_FLOOR);
    if d_coarse < floor || d_fine < floor {
        return Err(Error::PrecisionFloor {
            difference: d_coarse.min(d_fine).as_f64(),
        });
    }
    Ok((d_coarse / d_fine).log2())
}
