//! Special functions behind the two creep laws.
//!
//! `Ein` is evaluated from its power series for small arguments and from the
//! identity `Ein(t) = γ + ln t + E1(t)` beyond [`EvalControl::series_threshold`],
//! where `E1` comes from a continued fraction. The textbook alternating series
//! `Σ (-1)^(n-1) t^n / (n n!)` cancels badly once `t` grows past a few units,
//! so the series path sums the equivalent positive expansion
//! `e^(-t) Σ H_n t^n / n!` (harmonic numbers `H_n`) instead. The alternating
//! partial sums remain available through [`ein_alternating_partial_sum`].

use crate::error::{check_param, Error, Result};
use crate::Real;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431_f64;

/// Below this argument `becker_rate` switches to its Taylor polynomial.
const BECKER_RATE_SERIES_CUTOFF: f64 = 1e-4;

const E1_CF_MAX_ITER: usize = 500;

/// Controls how `ein` chooses and truncates its evaluation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalControl<T> {
    /// Arguments up to this value use the power series; larger ones use `γ + ln t + E1(t)`.
    pub series_threshold: T,
    pub max_terms: usize,
    /// Series truncation tolerance on the magnitude of the next term.
    pub abs_tol: T,
}

impl<T: Real> Default for EvalControl<T> {
    fn default() -> Self {
        Self {
            series_threshold: T::lit(8.0),
            max_terms: 500,
            abs_tol: T::epsilon() * T::lit(1e-2),
        }
    }
}

impl<T: Real> EvalControl<T> {
    pub fn validate(&self) -> Result<()> {
        let th = self.series_threshold;
        check_param(
            "series_threshold",
            th,
            th.is_finite() && th > T::zero(),
            "must be positive and finite",
        )?;
        check_param(
            "max_terms",
            T::from_usize_lossy(self.max_terms),
            self.max_terms >= 1,
            "must be at least 1",
        )?;
        check_param(
            "abs_tol",
            self.abs_tol,
            self.abs_tol > T::zero(),
            "must be positive",
        )
    }
}

fn require_nonneg<T: Real>(function: &'static str, t: T) -> Result<()> {
    if t.is_finite() && t >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: t.as_f64(),
        })
    }
}

/// Modified exponential integral `Ein(t) = ∫₀ᵗ (1 − e⁻ᵘ)/u du` for `t ≥ 0`.
pub fn ein<T: Real>(t: T, ctl: &EvalControl<T>) -> Result<T> {
    require_nonneg("ein", t)?;
    ctl.validate()?;
    if t == T::zero() {
        return Ok(T::zero());
    }
    if t <= ctl.series_threshold {
        if let Some(v) = ein_series(t, ctl) {
            return Ok(v);
        }
    }
    ein_via_e1(t)
}

/// Series path of `ein`: `e^(-t) Σ_{n≥1} H_n t^n / n!`.
///
/// Returns `None` when the series has not met `ctl.abs_tol` within `ctl.max_terms` terms.
pub fn ein_series<T: Real>(t: T, ctl: &EvalControl<T>) -> Option<T> {
    if t == T::zero() {
        return Some(T::zero());
    }
    let scale = (-t).exp();
    let mut power = T::one(); // t^n / n!
    let mut harmonic = T::zero();
    let mut sum = T::zero();
    for n in 1..=ctl.max_terms {
        let nf = T::from_usize_lossy(n);
        power = power * t / nf;
        harmonic = harmonic + nf.recip();
        let term = power * harmonic;
        sum = sum + term;
        // terms only shrink once n exceeds t
        if nf > t && scale * term <= ctl.abs_tol.max(T::epsilon() * scale * sum) {
            return Some(scale * sum);
        }
    }
    None
}

/// Large-argument path of `ein`: `γ + ln t + E1(t)`, valid for any `t > 0`.
pub fn ein_via_e1<T: Real>(t: T) -> Result<T> {
    Ok(T::lit(EULER_GAMMA) + t.ln() + e1(t)?)
}

/// Partial sum of the first `terms` terms of `Σ (-1)^(n-1) t^n / (n n!)`.
pub fn ein_alternating_partial_sum<T: Real>(t: T, terms: usize) -> T {
    let mut sum = T::zero();
    for n in 1..=terms {
        sum = sum + ein_alternating_term(t, n);
    }
    sum
}

/// The `n`-th term (`n ≥ 1`) of the alternating series of `Ein`.
pub fn ein_alternating_term<T: Real>(t: T, n: usize) -> T {
    assert!(n >= 1, "series terms are numbered from 1");
    let mut power = T::one();
    for k in 1..=n {
        power = power * t / T::from_usize_lossy(k);
    }
    let term = power / T::from_usize_lossy(n);
    if n % 2 == 1 {
        term
    } else {
        -term
    }
}

/// Exponential integral `E1(t) = ∫ₜ^∞ e⁻ᵘ/u du` for `t > 0`.
pub fn e1<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || t.is_nan() {
        return Err(Error::Domain {
            function: "e1",
            value: t.as_f64(),
        });
    }
    if t == T::infinity() {
        return Ok(T::zero());
    }
    if t <= T::one() {
        let series = ein_series(t, &EvalControl::default())
            .ok_or_else(|| Error::Internal("Ein series failed for t <= 1".into()))?;
        return Ok(series - T::lit(EULER_GAMMA) - t.ln());
    }
    e1_continued_fraction(t)
}

// Modified Lentz evaluation of E1(t) = e^(-t) / (t + 1 - 1²/(t + 3 - 2²/(t + 5 - ...))).
fn e1_continued_fraction<T: Real>(t: T) -> Result<T> {
    let tiny = T::min_positive_value() / T::epsilon();
    let two = T::lit(2.0);
    let mut b = t + T::one();
    let mut c = tiny.recip();
    let mut d = b.recip();
    let mut h = d;
    for i in 1..=E1_CF_MAX_ITER {
        let fi = T::from_usize_lossy(i);
        let an = -fi * fi;
        b = b + two;
        d = (an * d + b).recip();
        c = b + an / c;
        let delta = c * d;
        h = h * delta;
        if (delta - T::one()).abs() <= T::epsilon() {
            return Ok(h * (-t).exp());
        }
    }
    Err(Error::Internal(format!(
        "E1 continued fraction did not converge at t = {t}"
    )))
}

/// Becker creep rate `(1 − e⁻ᵗ)/t`, equal to 1 at `t = 0`.
pub fn becker_rate<T: Real>(t: T) -> Result<T> {
    require_nonneg("becker_rate", t)?;
    if t < T::lit(BECKER_RATE_SERIES_CUTOFF) {
        // 1 - t/2 + t²/6 - t³/24
        let c = [1.0, -1.0 / 2.0, 1.0 / 6.0, -1.0 / 24.0];
        return Ok(c
            .iter()
            .rev()
            .fold(T::zero(), |acc, &ck| acc * t + T::lit(ck)));
    }
    Ok(-(-t).exp_m1() / t)
}

/// Lomnitz creep rate `1/(1 + t)`.
pub fn lomnitz_rate<T: Real>(t: T) -> Result<T> {
    require_nonneg("lomnitz_rate", t)?;
    Ok((T::one() + t).recip())
}

/// `ln(1 + t)` without cancellation for small `t`.
pub fn log1p_safe<T: Real>(t: T) -> Result<T> {
    require_nonneg("log1p_safe", t)?;
    Ok(t.ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctl() -> EvalControl<f64> {
        EvalControl::default()
    }

    #[test]
    fn ein_at_zero_is_zero() {
        assert_eq!(ein(0.0, &ctl()).unwrap(), 0.0);
    }

    #[test]
    fn ein_rejects_bad_arguments() {
        assert!(matches!(ein(-1.0, &ctl()), Err(Error::Domain { .. })));
        assert!(ein(f64::NAN, &ctl()).is_err());
        assert!(ein(f64::INFINITY, &ctl()).is_err());
    }

    #[test]
    fn ein_rejects_bad_control() {
        let bad = EvalControl {
            series_threshold: 0.0,
            ..ctl()
        };
        assert!(matches!(
            ein(1.0, &bad),
            Err(Error::InvalidParameter { .. })
        ));
        let bad = EvalControl {
            max_terms: 0,
            ..ctl()
        };
        assert!(ein(1.0, &bad).is_err());
        let bad = EvalControl {
            abs_tol: 0.0,
            ..ctl()
        };
        assert!(ein(1.0, &bad).is_err());
    }

    #[test]
    fn ein_small_t_leading_terms() {
        for &t in &[1e-3_f64, 1e-2, 5e-2] {
            let poly = t - t * t / 4.0 + t.powi(3) / 18.0;
            let next = t.powi(4) / 96.0;
            assert!((ein(t, &ctl()).unwrap() - poly).abs() <= next * 1.01 + 1e-18);
        }
    }

    #[test]
    fn alternating_terms_match_closed_form_coefficients() {
        assert_eq!(ein_alternating_term(1.0_f64, 1), 1.0);
        assert!((ein_alternating_term(1.0_f64, 2) + 0.25).abs() < 1e-16);
        assert!((ein_alternating_term(1.0_f64, 3) - 1.0 / 18.0).abs() < 1e-16);
        assert!((ein_alternating_term(1.0_f64, 4) + 1.0 / 96.0).abs() < 1e-16);
    }

    #[test]
    fn exhausted_series_falls_back_to_identity() {
        let stingy = EvalControl {
            max_terms: 3,
            ..ctl()
        };
        assert!(ein_series(5.0, &stingy).is_none());
        let v = ein(5.0, &stingy).unwrap();
        assert!((v - ein_via_e1(5.0).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn e1_domain() {
        assert!(e1(0.0).is_err());
        assert!(e1(-2.0).is_err());
        assert!(e1(f64::NAN).is_err());
        assert_eq!(e1(f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn e1_leading_asymptotic_term() {
        for &t in &[50.0_f64, 200.0, 600.0] {
            let ratio = e1(t).unwrap() * t * t.exp();
            assert!((ratio - 1.0).abs() < 1.5 / t, "t={t} ratio={ratio}");
        }
    }

    #[test]
    fn e1_branches_meet_at_one() {
        let below = e1(1.0).unwrap();
        let above = e1_continued_fraction(1.0_f64).unwrap();
        assert!((below - above).abs() < 1e-15);
    }

    #[test]
    fn becker_rate_values() {
        assert_eq!(becker_rate(0.0).unwrap(), 1.0);
        assert!((becker_rate(1.0_f64).unwrap() - 0.632_120_558_828_557_7).abs() < 1e-15);
        for &t in &[1e-6_f64, 5e-5, 9.99e-5] {
            let poly = 1.0 - t / 2.0 + t * t / 6.0;
            assert!((becker_rate(t).unwrap() - poly).abs() < 1e-13);
        }
        assert!(becker_rate(-1e-3).is_err());
    }

    #[test]
    fn becker_rate_branches_are_continuous() {
        let c = BECKER_RATE_SERIES_CUTOFF;
        let below = becker_rate(c * (1.0 - 1e-12)).unwrap();
        let above = becker_rate(c).unwrap();
        assert!((below - above).abs() < 1e-14);
    }

    #[test]
    fn lomnitz_rate_values() {
        assert_eq!(lomnitz_rate(0.0).unwrap(), 1.0);
        assert_eq!(lomnitz_rate(1.0).unwrap(), 0.5);
        assert!((lomnitz_rate(99.0_f64).unwrap() - 0.01).abs() < 1e-17);
        assert!(lomnitz_rate(-0.5).is_err());
    }

    #[test]
    fn log1p_values() {
        assert_eq!(log1p_safe(0.0).unwrap(), 0.0);
        assert!((log1p_safe(1.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-16);
        let tiny = log1p_safe(1e-10_f64).unwrap();
        assert!(((tiny - 1e-10) / 1e-10).abs() < 1e-6);
        assert!(log1p_safe(-1e-9).is_err());
    }

    #[test]
    fn single_precision_path() {
        let c = EvalControl::<f32>::default();
        assert!((ein(1.0f32, &c).unwrap() - 0.796_599_6).abs() < 1e-6);
        assert!((ein(12.0f32, &c).unwrap() - ein(12.0f64, &ctl()).unwrap() as f32).abs() < 1e-5);
        assert!((e1(1.0f32).unwrap() - 0.219_383_93).abs() < 1e-6);
    }
}
