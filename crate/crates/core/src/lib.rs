//! Creep, relaxation and retardation-spectrum material functions of the Becker
//! (`ψ = Ein(t/τ₀)`) and Lomnitz (`ψ = ln(1 + t/τ₀)`) linear-viscoelastic models.
//!
//! All routines are generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below fix the scalar to `f64`, the precision the default tolerances target.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod interp;
pub mod models;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod volterra;

pub use error::{Error, Result};
pub use models::{
    compliance, dpsi, psi, reconstruct_creep, spectrum, spectrum_reconstruct, MaterialParams,
    ModelKind,
};
pub use quadrature::QuadratureConfig;
pub use scalar::Real;
pub use specfun::{becker_rate, e1, ein, log1p_safe, lomnitz_rate, EvalControl, EULER_GAMMA};
pub use volterra::{
    estimate_order, relaxation_modulus, solve_relaxation, RelaxationSolution, Scheme, TimeGrid,
};

pub type EvalControl64 = EvalControl<f64>;
pub type MaterialParams64 = MaterialParams<f64>;
pub type QuadratureConfig64 = QuadratureConfig<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type RelaxationSolution64 = RelaxationSolution<f64>;
