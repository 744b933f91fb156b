//! Shape-preserving piecewise cubic Hermite interpolation (Fritsch–Butland slopes).

use crate::error::{Error, Result};
use crate::Real;

/// Monotone cubic interpolant through strictly ascending abscissae.
#[derive(Debug, Clone)]
pub struct MonotoneCubic<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Real> MonotoneCubic<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::Internal(
                "interpolation needs at least two (x, y) pairs of equal length".into(),
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Internal(
                "abscissae must be strictly ascending".into(),
            ));
        }
        let slopes = Self::slopes(&xs, &ys);
        Ok(Self { xs, ys, slopes })
    }

    fn slopes(xs: &[T], ys: &[T]) -> Vec<T> {
        let n = xs.len();
        let h: Vec<T> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<T> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
        if n == 2 {
            return vec![delta[0]; 2];
        }
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let mut d = vec![T::zero(); n];
        for k in 1..n - 1 {
            let (d0, d1) = (delta[k - 1], delta[k]);
            if d0 * d1 <= T::zero() {
                continue;
            }
            let w1 = two * h[k] + h[k - 1];
            let w2 = h[k] + two * h[k - 1];
            d[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
        }
        let end = |h0: T, h1: T, d0: T, d1: T| {
            let s = ((two * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if s.signum() != d0.signum() {
                T::zero()
            } else if d0.signum() != d1.signum() && s.abs() > (three * d0).abs() {
                three * d0
            } else {
                s
            }
        };
        d[0] = end(h[0], h[1], delta[0], delta[1]);
        d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        d
    }

    pub fn domain(&self) -> (T, T) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Evaluates the interpolant; `x` must lie inside the node range.
    pub fn eval(&self, x: T) -> Result<T> {
        let (lo, hi) = self.domain();
        if !(x >= lo && x <= hi) {
            return Err(Error::Domain {
                function: "interpolation",
                value: x.as_f64(),
            });
        }
        let i = match self
            .xs
            .binary_search_by(|p| p.partial_cmp(&x).expect("finite nodes"))
        {
            Ok(i) => return Ok(self.ys[i]),
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let h00 = (one + two * s) * (one - s) * (one - s);
        let h10 = s * (one - s) * (one - s);
        let h01 = s * s * (three - two * s);
        let h11 = s * s * (s - one);
        Ok(h00 * self.ys[i]
            + h10 * h * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * h * self.slopes[i + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes_and_linear_data() {
        let xs: Vec<f64> = (0..6).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x - 1.0).collect();
        let p = MonotoneCubic::new(xs.clone(), ys.clone()).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(p.eval(*x).unwrap(), *y);
        }
        assert!((p.eval(1.3).unwrap() - 1.6).abs() < 1e-14);
    }

    #[test]
    fn keeps_monotone_data_monotone() {
        let xs = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let ys = vec![1.0, 0.9, 0.2, 0.19, 0.0];
        let p = MonotoneCubic::new(xs, ys).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=400 {
            let v = p.eval(i as f64 * 0.01).unwrap();
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MonotoneCubic::new(vec![0.0], vec![1.0]).is_err());
        assert!(MonotoneCubic::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        let p = MonotoneCubic::new(vec![0.0, 1.0], vec![1.0, 2.0]).unwrap();
        assert!(p.eval(1.5).is_err());
        assert!(p.eval(f64::NAN).is_err());
    }
}
