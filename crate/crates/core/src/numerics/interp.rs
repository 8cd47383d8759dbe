//! Monotone piecewise-cubic Hermite interpolation (Fritsch–Carlson slopes).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::invalid("values", "table columns differ in length"));
        }
        if xs.len() < 2 {
            return Err(Error::invalid("times", "at least two table points are required"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("times", "must be strictly increasing"));
        }
        let n = xs.len();
        let secants: Vec<f64> =
            (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (secants[i - 1], secants[i]);
            slopes[i] = if a * b <= 0.0 {
                0.0
            } else {
                // weighted harmonic mean keeps each cubic piece monotone
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / a + w2 / b)
            };
        }
        for i in 0..n - 1 {
            let d = secants[i];
            if d == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let alpha = slopes[i] / d;
            let beta = slopes[i + 1] / d;
            let r = alpha * alpha + beta * beta;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                slopes[i] = tau * alpha * d;
                slopes[i + 1] = tau * beta * d;
            }
        }
        Ok(Self { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Value at `x`; clamps to the end values outside the table.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = self.xs.partition_point(|&xi| xi <= x) - 1;
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }

    /// First derivative at `x`; zero outside the table.
    pub fn derivative(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x < self.xs[0] || x > self.xs[n - 1] {
            return 0.0;
        }
        let i = (self.xs.partition_point(|&xi| xi <= x).max(1) - 1).min(n - 2);
        let h = self.xs[i + 1] - self.xs[i];
        let s = (x - self.xs[i]) / h;
        let s2 = s * s;
        let d00 = (6.0 * s2 - 6.0 * s) / h;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = (-6.0 * s2 + 6.0 * s) / h;
        let d11 = 3.0 * s2 - 2.0 * s;
        d00 * self.ys[i] + d10 * self.slopes[i] + d01 * self.ys[i + 1] + d11 * self.slopes[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reproduces_nodes_and_clamps() {
        let c = MonotoneCubic::new(vec![0.0, 1.0, 3.0], vec![1.0, 2.0, 2.5]).unwrap();
        assert_eq!(c.eval(0.0), 1.0);
        assert!((c.eval(1.0) - 2.0).abs() < 1e-15);
        assert_eq!(c.eval(-4.0), 1.0);
        assert_eq!(c.eval(9.0), 2.5);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let c = MonotoneCubic::new(vec![0.0, 1.0, 2.5, 4.0], vec![1.0, 1.5, 3.0, 3.2]).unwrap();
        for x in [0.3, 1.7, 3.9] {
            let h = 1e-6;
            let fd = (c.eval(x + h) - c.eval(x - h)) / (2.0 * h);
            assert!((c.derivative(x) - fd).abs() < 1e-7);
        }
        assert_eq!(c.derivative(-1.0), 0.0);
    }

    #[test]
    fn rejects_unsorted_times() {
        assert!(MonotoneCubic::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(MonotoneCubic::new(vec![0.0], vec![1.0]).is_err());
    }

    proptest! {
        #[test]
        fn monotone_data_gives_monotone_curve(
            steps in proptest::collection::vec((0.01f64..2.0, 0.0f64..1.0), 2..12)
        ) {
            let mut xs = vec![0.0];
            let mut ys = vec![1.0];
            for (dx, dy) in &steps {
                xs.push(xs.last().unwrap() + dx);
                ys.push(ys.last().unwrap() + dy);
            }
            let c = MonotoneCubic::new(xs.clone(), ys).unwrap();
            let end = *xs.last().unwrap();
            let mut prev = c.eval(-0.1);
            for k in 0..=400 {
                let v = c.eval(end * k as f64 / 400.0);
                prop_assert!(v >= prev - 1e-12);
                prev = v;
            }
        }
    }
}
