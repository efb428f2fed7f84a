//! Model parameters and the circular (trivial) branch.
//!
//! All computations are dimensionless-first: downstream modules consume
//! (μ1, μ2) and fix L = 1, k = 1 internally, so b = μ2 and p = 2πμ1μ2.
//! Dimensional inputs are converted on entry and kept only for
//! presentation.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};

/// Dimensionless control parameters of the pressurized ring.
///
/// * `mu1 = pL/(2πb)` — pressure measured against the stretching modulus.
/// * `mu2 = bL²/k` — stretching-to-bending ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu1: f64,
    pub mu2: f64,
    /// Original dimensional quantities, when constructed from them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimensional: Option<DimensionalParams>,
}

/// Physical parameters: bending modulus `k` [energy·length], stretching
/// modulus `b` [energy/length], referential length `length` and pressure
/// `p` [energy/length²].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionalParams {
    pub k: f64,
    pub b: f64,
    pub length: f64,
    pub p: f64,
}

impl ModelParams {
    /// Dimensionless constructor; validates μ1 ≥ 0 and μ2 > 0.
    pub fn new(mu1: f64, mu2: f64) -> Result<Self> {
        if !mu1.is_finite() || mu1 < 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "mu1 must be finite and >= 0, got {mu1}"
            )));
        }
        if !mu2.is_finite() || mu2 <= 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "mu2 must be finite and > 0, got {mu2}"
            )));
        }
        Ok(Self {
            mu1,
            mu2,
            dimensional: None,
        })
    }

    /// Build from dimensional quantities: μ1 = pL/(2πb), μ2 = bL²/k.
    pub fn from_dimensional(k: f64, b: f64, length: f64, p: f64) -> Result<Self> {
        if k <= 0.0 || b <= 0.0 || length <= 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "moduli and length must be positive (k={k}, b={b}, L={length})"
            )));
        }
        if p < 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "pressure must be non-negative, got {p}"
            )));
        }
        let mu1 = p * length / (2.0 * std::f64::consts::PI * b);
        let mu2 = b * length * length / k;
        let mut params = Self::new(mu1, mu2)?;
        params.dimensional = Some(DimensionalParams { k, b, length, p });
        Ok(params)
    }

    /// Referential length; 1 unless dimensional values were supplied.
    pub fn length(&self) -> f64 {
        self.dimensional.map_or(1.0, |d| d.length)
    }
}

/// The circular equilibrium of the ring (the trivial branch).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularSolution {
    /// Deformed radius R = L/(2π(1+μ1)).
    pub radius: f64,
    /// Enclosed area πR².
    pub area: f64,
    /// Uniform stretch λ = 1/(1+μ1).
    pub stretch: f64,
}

/// Radius, area and stretch of the compressed circular solution.
pub fn circular_solution(params: &ModelParams) -> CircularSolution {
    let length = params.length();
    let radius = length / (2.0 * std::f64::consts::PI * (1.0 + params.mu1));
    CircularSolution {
        radius,
        area: std::f64::consts::PI * radius * radius,
        stretch: 1.0 / (1.0 + params.mu1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn dimensional_conversion() {
        let p = ModelParams::from_dimensional(1.0, 1.0, 2.0 * PI, 1.0).unwrap();
        assert_relative_eq!(p.mu1, 1.0, max_relative = 1e-12);
        assert_relative_eq!(p.mu2, 4.0 * PI * PI, max_relative = 1e-12);

        let p = ModelParams::from_dimensional(1.0, 1e6, 1.0, 0.0).unwrap();
        assert_relative_eq!(p.mu1, 0.0);
        assert_relative_eq!(p.mu2, 1e6, max_relative = 1e-12);

        let p = ModelParams::from_dimensional(2.0, 3.0, 5.0, 7.0).unwrap();
        assert_relative_eq!(p.mu1, 35.0 / (6.0 * PI), max_relative = 1e-12);
        assert_relative_eq!(p.mu2, 37.5, max_relative = 1e-12);
    }

    #[test]
    fn rejects_invalid() {
        assert!(ModelParams::new(-0.1, 1.0).is_err());
        assert!(ModelParams::new(1.0, 0.0).is_err());
        assert!(ModelParams::from_dimensional(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::from_dimensional(1.0, 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn circular_branch() {
        let p = ModelParams::from_dimensional(1.0, 1e9, 2.0 * PI, 0.0).unwrap();
        let c = circular_solution(&p);
        assert_relative_eq!(c.radius, 1.0, max_relative = 1e-9);
        assert_relative_eq!(c.area, PI, max_relative = 1e-9);

        let p = ModelParams::new(0.3, 100.0).unwrap();
        let c = circular_solution(&p);
        assert_relative_eq!(c.radius, 1.0 / (2.6 * PI), max_relative = 1e-12);
        assert_relative_eq!(c.stretch, 1.0 / 1.3, max_relative = 1e-12);
    }
}
