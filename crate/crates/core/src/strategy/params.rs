use crate::error::{Error, Result};
use crate::math::{ceil, ln, powf};

/// Constants derived from `(n, d, alpha)`.
///
/// Everything is recomputed from the three inputs, so the struct is never
/// internally inconsistent. Thresholds such as `beta / 2` are kept as reals.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParameterSet {
    pub n: usize,
    pub d: f64,
    pub alpha: f64,
    pub p: f64,
    pub b: f64,
    /// `d / ln d`.
    pub big_d: f64,
    pub k: u32,
    pub beta: f64,
    pub gamma: f64,
    pub theta_lower: f64,
    pub beta_mirror: f64,
    pub gamma_mirror: f64,
}

impl ParameterSet {
    pub fn derive(n: usize, d: f64, alpha: f64) -> Result<Self> {
        if !(d > core::f64::consts::E) {
            return Err(Error::param(alloc::format!("d = {d} must exceed e")));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::param(alloc::format!("alpha = {alpha} must be positive")));
        }
        if n == 0 {
            return Err(Error::param("n must be positive"));
        }
        let ld = ln(d);
        let p = d / n as f64;
        let k_real = alpha * d / ld;
        // Guard against 282.0000000001 style noise before rounding up.
        let k = ceil(k_real - 1e-9 * k_real.max(1.0)) as u32;
        let d_pow = powf(d, 1.0 - 1.0 / alpha);
        Ok(ParameterSet {
            n,
            d,
            alpha,
            p,
            b: 1.0 / (1.0 - p),
            big_d: d / ld,
            k: k.max(1),
            beta: alpha * d_pow / ld,
            gamma: 16.0 * ld * ld / (alpha * d_pow),
            theta_lower: 7.0 * alpha / 8.0,
            beta_mirror: 0.5,
            gamma_mirror: 0.75,
        })
    }

    /// Density threshold `d^{1/alpha} ln^3 d` used for the first level.
    pub fn theta1(&self) -> f64 {
        let ld = ln(self.d);
        powf(self.d, 1.0 / self.alpha) * ld * ld * ld
    }

    /// Degree threshold `2 theta1 + beta / 4` defining `U'_{1,a}`.
    pub fn delta1(&self) -> f64 {
        2.0 * self.theta1() + self.beta / 4.0
    }

    /// `theta1 / beta`.
    pub fn tau1(&self) -> f64 {
        self.theta1() / self.beta
    }

    /// Degree threshold for `U'_2` (`6 + beta / 3`).
    pub fn delta2(&self) -> f64 {
        6.0 + self.beta / 3.0
    }

    /// Degree threshold for `U'_{i+1}`, `i >= 2` (`15/4 + beta / 3`).
    pub fn delta_deep(&self) -> f64 {
        15.0 / 4.0 + self.beta / 3.0
    }

    /// Target size `min(floor(2 gamma n), n)` of the endgame set.
    pub fn endgame_size(&self) -> usize {
        let t = 2.0 * self.gamma * self.n as f64;
        if t >= self.n as f64 {
            self.n
        } else {
            t as usize
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    #[test]
    fn worked_values() {
        let ps = ParameterSet::derive(100, E * E, 2.0).unwrap();
        assert!((ps.big_d - E * E / 2.0).abs() < 1e-12);
        assert_eq!(ps.k, 8);

        let ps = ParameterSet::derive(10_000, 100.0, 13.0).unwrap();
        assert_eq!(ps.k, 283);
        let ld = 100f64.ln();
        let gamma = 16.0 * ld * ld / (13.0 * 100f64.powf(12.0 / 13.0));
        assert!((ps.gamma - gamma).abs() < 1e-12);
        assert!((ps.theta_lower - 13.0 * 7.0 / 8.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_d() {
        assert!(ParameterSet::derive(100, 2.7, 13.0).is_err());
        assert!(ParameterSet::derive(100, E, 13.0).is_err());
        assert!(ParameterSet::derive(100, 3.0, 0.0).is_err());
    }
}
