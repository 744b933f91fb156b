//! Becker and Lomnitz creep laws, compliance, and retardation spectra.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_param, Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::specfun::{becker_rate, ein, log1p_safe, lomnitz_rate, EvalControl};
use crate::Real;

/// The two rheologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// `ψ(t) = Ein(t)`
    Becker,
    /// `ψ(t) = ln(1 + t)`
    Lomnitz,
}

impl ModelKind {
    pub const ALL: [ModelKind; 2] = [ModelKind::Becker, ModelKind::Lomnitz];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Becker => "becker",
            ModelKind::Lomnitz => "lomnitz",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "becker" | "b" => Ok(ModelKind::Becker),
            "lomnitz" | "l" => Ok(ModelKind::Lomnitz),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

/// Parameters of the creep law `J(t) = J_U [1 + q ψ(t/τ₀)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams<T> {
    /// Unrelaxed compliance.
    pub j_u: T,
    pub q: T,
    pub tau0: T,
}

impl<T: Real> Default for MaterialParams<T> {
    fn default() -> Self {
        Self {
            j_u: T::one(),
            q: T::one(),
            tau0: T::one(),
        }
    }
}

impl<T: Real> MaterialParams<T> {
    pub fn new(j_u: T, q: T, tau0: T) -> Result<Self> {
        let p = Self { j_u, q, tau0 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: T| v.is_finite() && v > T::zero();
        check_param(
            "j_u",
            self.j_u,
            pos(self.j_u),
            "must be positive and finite",
        )?;
        check_param("q", self.q, pos(self.q), "must be positive and finite")?;
        check_param(
            "tau0",
            self.tau0,
            pos(self.tau0),
            "must be positive and finite",
        )
    }
}

/// Dimensionless creep function `ψ(t)`.
pub fn psi<T: Real>(kind: ModelKind, t: T) -> Result<T> {
    match kind {
        ModelKind::Becker => ein(t, &EvalControl::default()),
        ModelKind::Lomnitz => log1p_safe(t),
    }
}

/// Creep rate `dψ/dt`.
pub fn dpsi<T: Real>(kind: ModelKind, t: T) -> Result<T> {
    match kind {
        ModelKind::Becker => becker_rate(t),
        ModelKind::Lomnitz => lomnitz_rate(t),
    }
}

/// Creep compliance `J_U [1 + q ψ(t/τ₀)]` at dimensional time `t`.
pub fn compliance<T: Real>(params: &MaterialParams<T>, kind: ModelKind, t: T) -> Result<T> {
    params.validate()?;
    let creep = psi(kind, t / params.tau0)?;
    Ok(params.j_u * (T::one() + params.q * creep))
}

/// Retardation spectrum density at retardation time `tau` (dimensionless, `τ₀ = 1`).
///
/// Becker: `H(τ − 1)/τ` with `H(0) = 1`. Lomnitz: `e^(−1/τ)/τ`.
pub fn spectrum<T: Real>(kind: ModelKind, tau: T) -> Result<T> {
    if !(tau > T::zero()) || tau.is_nan() {
        return Err(Error::Domain {
            function: "spectrum",
            value: tau.as_f64(),
        });
    }
    Ok(match kind {
        ModelKind::Becker if tau >= T::one() => tau.recip(),
        ModelKind::Becker => T::zero(),
        ModelKind::Lomnitz => (-tau.recip()).exp() / tau,
    })
}

/// Lower end of the spectrum's support.
fn support_start<T: Real>(kind: ModelKind) -> T {
    match kind {
        ModelKind::Becker => T::one(),
        ModelKind::Lomnitz => T::zero(),
    }
}

/// Rebuilds `ψ(t)` from the retardation spectrum as
/// `∫₀^∞ R(τ)(1 − e^(−t/τ)) dτ`, taking `J_U q = 1`.
pub fn spectrum_reconstruct<T: Real>(
    kind: ModelKind,
    t: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    reconstruct_creep(
        |tau| spectrum(kind, tau).unwrap_or(T::zero()),
        support_start(kind),
        t,
        cfg,
    )
}

/// Evaluates `∫ R(τ)(1 − e^(−t/τ)) dτ` over `[support_start, ∞)` for an arbitrary
/// non-negative spectral density `density`, with `support_start` either 0 or ≥ 1.
///
/// The range is split at `τ = 1`; the tail `[1, ∞)` is mapped onto `(0, 1]` by
/// `s = 1/τ`, turning it into `∫ R(1/s)(1 − e^(−ts))/s² ds`.
pub fn reconstruct_creep<T: Real, R: Fn(T) -> T>(
    density: R,
    support_start: T,
    t: T,
    cfg: &QuadratureConfig<T>,
) -> Result<T> {
    if !(t.is_finite() && t >= T::zero()) {
        return Err(Error::Domain {
            function: "spectrum_reconstruct",
            value: t.as_f64(),
        });
    }
    cfg.validate()?;
    if !(support_start >= T::zero()) || (support_start > T::zero() && support_start < T::one()) {
        return Err(Error::InvalidParameter {
            name: "support_start",
            value: support_start.as_f64(),
            reason: "must be 0 or at least 1",
        });
    }
    if t == T::zero() {
        return Ok(T::zero());
    }
    let s_max = support_start.max(T::one()).recip();
    let near = |tau: T| density(tau) * -(-t / tau).exp_m1();
    let tail = |s: T| density(s.recip()) * -(-t * s).exp_m1() / (s * s);
    let head = if support_start < T::one() {
        Some(integrate(near, &[(support_start, T::one())], cfg)?)
    } else {
        None
    };
    let far = integrate(tail, &[(T::zero(), s_max)], cfg)?;
    Ok(head.map_or(T::zero(), |h| h.value) + far.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_and_dpsi_start_values() {
        for kind in ModelKind::ALL {
            assert_eq!(psi(kind, 0.0).unwrap(), 0.0);
            assert_eq!(dpsi(kind, 0.0).unwrap(), 1.0);
            assert!(psi(kind, -1.0).is_err());
            assert!(dpsi(kind, -1.0).is_err());
        }
        assert!((psi(ModelKind::Lomnitz, 1.0_f64).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((psi(ModelKind::Becker, 1.0_f64).unwrap() - 0.796_599_599_297_053_1).abs() < 1e-14);
        assert!(
            (dpsi(ModelKind::Becker, 1.0_f64).unwrap() - 0.632_120_558_828_557_7).abs() < 1e-15
        );
    }

    #[test]
    fn compliance_examples() {
        let p = MaterialParams::new(2.0, 1.0, 1.0).unwrap();
        for kind in ModelKind::ALL {
            assert_eq!(compliance(&p, kind, 0.0).unwrap(), 2.0);
        }
        let p = MaterialParams::new(1.0, 1.0, 1.0).unwrap();
        assert!(
            (compliance(&p, ModelKind::Lomnitz, 1.0_f64).unwrap() - 1.693_147_180_559_945_3).abs()
                < 1e-15
        );
        let p = MaterialParams::new(1.0, 2.0, 2.0).unwrap();
        assert!(
            (compliance(&p, ModelKind::Lomnitz, 2.0_f64).unwrap() - 2.386_294_361_119_890_6).abs()
                < 1e-15
        );
    }

    #[test]
    fn params_are_validated() {
        assert!(MaterialParams::new(0.0, 1.0, 1.0).is_err());
        assert!(MaterialParams::new(1.0, -1.0, 1.0).is_err());
        assert!(MaterialParams::new(1.0, 1.0, f64::INFINITY).is_err());
        let bad = MaterialParams {
            j_u: 1.0,
            q: 1.0,
            tau0: 0.0,
        };
        assert!(matches!(
            compliance(&bad, ModelKind::Becker, 1.0),
            Err(Error::InvalidParameter { name: "tau0", .. })
        ));
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(ModelKind::Becker, 0.5).unwrap(), 0.0);
        assert_eq!(spectrum(ModelKind::Becker, 2.0).unwrap(), 0.5);
        assert_eq!(spectrum(ModelKind::Becker, 1.0).unwrap(), 1.0);
        assert!((spectrum(ModelKind::Lomnitz, 1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        for kind in ModelKind::ALL {
            assert!(spectrum(kind, 0.0).is_err());
            assert!(spectrum(kind, -3.0).is_err());
        }
    }

    #[test]
    fn reconstruction_examples() {
        let cfg = QuadratureConfig::default();
        for kind in ModelKind::ALL {
            assert_eq!(spectrum_reconstruct(kind, 0.0, &cfg).unwrap(), 0.0);
            assert!(spectrum_reconstruct(kind, -1.0, &cfg).is_err());
        }
        let b = spectrum_reconstruct(ModelKind::Becker, 1.0_f64, &cfg).unwrap();
        assert!((b - 0.796_599_599_297_053_1).abs() < 1e-10);
        let l = spectrum_reconstruct(ModelKind::Lomnitz, 1.0, &cfg).unwrap();
        assert!((l - std::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn reconstruction_reports_exhausted_budget() {
        let cfg = QuadratureConfig {
            abs_tol: 1e-14,
            rel_tol: 1e-16,
            max_nodes: 16,
        };
        let err = spectrum_reconstruct(ModelKind::Becker, 100.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::Convergence { .. }));
    }

    #[test]
    fn model_names_round_trip() {
        for kind in ModelKind::ALL {
            assert_eq!(kind.to_string().parse::<ModelKind>().unwrap(), kind);
        }
        assert!("maxwell".parse::<ModelKind>().is_err());
    }
}
