//! Binomial tail bounds for sizing experiments.

use crate::error::{Error, Result};
use crate::math::{exp, powf};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChernoffBounds {
    /// Bound on `P(X <= (1 - eps) np)`: `exp(-eps^2 np / 2)`.
    pub lower: f64,
    /// Bound on `P(X >= (1 + eps) np)`: `exp(-eps^2 np / 3)`.
    pub upper: f64,
    /// Bound on `P(X >= mu np)`: `(e / mu)^{mu np}`, when `mu` was given.
    pub large: Option<f64>,
}

/// Tail bounds for a sum of `n` indicators with mean probability `p`.
/// `eps` must lie in `[0, 1]`; `mu`, if given, must exceed `e`.
pub fn chernoff_bounds(n: u64, p: f64, eps: f64, mu: Option<f64>) -> Result<ChernoffBounds> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(alloc::format!("p = {p} is not a probability")));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::param(alloc::format!("eps = {eps} outside [0, 1]")));
    }
    let np = n as f64 * p;
    let large = match mu {
        None => None,
        Some(mu) if mu > core::f64::consts::E => Some(powf(core::f64::consts::E / mu, mu * np)),
        Some(mu) => return Err(Error::param(alloc::format!("mu = {mu} must exceed e"))),
    };
    Ok(ChernoffBounds {
        lower: exp(-eps * eps * np / 2.0),
        upper: exp(-eps * eps * np / 3.0),
        large,
    })
}
