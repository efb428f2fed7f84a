//! Asymptotic equilibrium shapes of the buckled ring to O(α³), the
//! rotation back to Cartesian coordinates, and the enclosed-area
//! expansion.
//!
//! The third-order coefficients share the denominator
//! D = 4(−μ1 + 24π + 3)(π²(μ1−3)²(μ1+1)² + 5), nonzero on the whole
//! window μ1 ∈ [0, 3). All formulas use L = 1 unless a length is passed
//! explicitly.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Result, RingError};
use crate::fourier::FourierState;

/// Amplitudes of the critical mode of the linearized problem
/// (harmonic n of 2πS/L):
/// θ1 = θ_amp·sin, ξ1 = ξ_amp·sin, η1 = η_amp·cos.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearMode {
    pub n: u32,
    pub theta_amp: f64,
    pub xi_amp: f64,
    pub eta_amp: f64,
}

/// The kernel mode of the linearization about the circular branch,
/// normalized so the η cosine amplitude is +1:
///
/// θ1 = −(2π/n)(n²−μ1−1)(1+μ1)·sin(2πnS/L),
/// ξ1 = +n·sin(2πnS/L),
/// η1 = cos(2πnS/L).
///
/// (The sign of ξ1 is fixed by requiring the triple to solve the
/// linearized equilibrium system; see the residual test below.)
pub fn linear_mode(n: u32, mu1: f64) -> Result<LinearMode> {
    let window = (n * n - 1) as f64;
    if n < 2 {
        return Err(RingError::InvalidParameter(format!(
            "mode number must be >= 2, got {n}"
        )));
    }
    if !(0.0..window).contains(&mu1) {
        return Err(RingError::NoBifurcation(format!(
            "mode {n} requires mu1 in [0, {window}), got {mu1}"
        )));
    }
    let nf = n as f64;
    Ok(LinearMode {
        n,
        theta_amp: -(2.0 * PI / nf) * (nf * nf - mu1 - 1.0) * (1.0 + mu1),
        xi_amp: nf,
        eta_amp: 1.0,
    })
}

/// Second- and third-order shape coefficients for the n = 2 mode
/// (harmonics of 4πS/L; b_i1 multiplies harmonic 1, b_i2 harmonic 3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticShapeCoeffs {
    pub mu1: f64,
    // O(alpha^2), harmonic 2 of the base period (sin/cos 8πS):
    pub theta2: f64,
    pub xi2: f64,
    pub eta2: f64,
    /// Constant O(α²) offset of η.
    pub eta2_const: f64,
    // O(alpha^3):
    pub b11: f64,
    pub b12: f64,
    pub b21: f64,
    pub b22: f64,
    pub b31: f64,
    pub b32: f64,
}

impl AsymptoticShapeCoeffs {
    pub fn new(mu1: f64) -> Result<Self> {
        if !(0.0..3.0).contains(&mu1) {
            return Err(RingError::NoBifurcation(format!(
                "shape expansion requires mu1 in [0, 3), got {mu1}"
            )));
        }
        let m = mu1;
        let d =
            4.0 * (-m + 24.0 * PI + 3.0) * (PI * PI * (m - 3.0).powi(2) * (m + 1.0).powi(2) + 5.0);
        let b11 = -PI.powi(3) * (m - 3.0).powi(2) * (m + 1.0).powi(2) / d
            * (m * (-6.0 * m * m + m - 90.0) + 4.0 * PI * (m * (80.0 * m - 93.0) + 99.0) + 63.0);
        let b12 =
            7.0 / 768.0 * PI.powi(3) * (m - 3.0).powi(2) * (m + 1.0).powi(3) * (13.0 * m - 3.0);
        let b21 = -PI * PI * (m - 3.0).powi(2) * (m + 1.0) / d
            * (-8.0 * PI.powi(3) * (m - 3.0) * (m * (20.0 * m - 33.0) + 27.0) * (m + 1.0).powi(2)
                + PI * PI
                    * (m - 3.0)
                    * (m * (m * (3.0 * m - 1.0) + 33.0) - 27.0)
                    * (m + 1.0).powi(2)
                + 3.0 * (m + 1.0).powi(2)
                + 32.0 * PI * (3.0 - 5.0 * m));
        let b22 = 7.0 / 128.0 * PI * PI * (m - 3.0) * (m + 1.0).powi(2) * (7.0 * m - 9.0);
        let b31 = PI * PI * (m - 3.0).powi(2) * (m + 1.0) / d
            * (12.0 * PI.powi(3) * (m - 3.0) * (13.0 * m - 3.0) * (m + 1.0).powi(2)
                - PI * PI * (m - 3.0) * (m * (m + 24.0) - 9.0) * (m + 1.0).powi(2)
                + 6.0 * (m + 1.0).powi(2)
                + 64.0 * PI * (3.0 - 5.0 * m));
        let b32 = 13.0 / 256.0 * PI * PI * (m + 1.0).powi(2) * (7.0 * m - 9.0) * (m - 3.0);
        Ok(Self {
            mu1,
            theta2: PI * PI / 16.0 * (m - 3.0) * (m + 1.0).powi(2) * (5.0 * m - 3.0),
            xi2: PI / 2.0 * (m - 3.0) * (m + 1.0),
            eta2: 5.0 / 8.0 * PI * (m - 3.0) * (m + 1.0),
            eta2_const: -PI * (m - 3.0),
            b11,
            b12,
            b21,
            b22,
            b31,
            b32,
        })
    }
}

/// Truncation used by the asymptotic state (harmonics up to 3·n = 6 are
/// populated; 12 matches the reduction engine's default for easy
/// cross-comparison).
pub const DEFAULT_MODES: usize = 12;

/// The buckled n = 2 equilibrium through O(α³) as a Fourier state about
/// the circular branch at the given μ1.
pub fn asymptotic_state(mu1: f64, alpha: f64) -> Result<FourierState> {
    let c = AsymptoticShapeCoeffs::new(mu1)?;
    let mode = linear_mode(2, mu1)?;
    let mut state = FourierState::circular(DEFAULT_MODES, mu1);
    let a2 = alpha * alpha;
    let a3 = a2 * alpha;
    state.theta_sin[2] = alpha * mode.theta_amp + a3 * c.b11;
    state.theta_sin[4] = a2 * c.theta2;
    state.theta_sin[6] = a3 * c.b12;
    state.xi_sin[2] = alpha * mode.xi_amp + a3 * c.b21;
    state.xi_sin[4] = a2 * c.xi2;
    state.xi_sin[6] = a3 * c.b22;
    state.eta_cos[0] = a2 * c.eta2_const;
    state.eta_cos[2] = alpha * mode.eta_amp + a3 * c.b31;
    state.eta_cos[4] = a2 * c.eta2;
    state.eta_cos[6] = a3 * c.b32;
    Ok(state)
}

/// A sampled planar profile (S, x, y) of the deformed centerline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeProfile {
    pub samples: Vec<(f64, f64, f64)>,
    pub closed: bool,
    /// Signed shoelace area of the sampled polygon.
    pub area: f64,
}

/// Rotate the (ξ, η) description back to Cartesian coordinates on a
/// uniform S-grid: x = ξcosθ − ηsinθ, y = ξsinθ + ηcosθ.
pub fn to_cartesian(state: &FourierState, samples: usize) -> Result<ShapeProfile> {
    if samples < 16 {
        return Err(RingError::InvalidParameter(format!(
            "need at least 16 samples, got {samples}"
        )));
    }
    let mut pts = Vec::with_capacity(samples + 1);
    for j in 0..samples {
        let s = j as f64 / samples as f64;
        let (theta, xi, eta) = state.eval(s);
        let (sn, cs) = theta.sin_cos();
        pts.push((s, xi * cs - eta * sn, xi * sn + eta * cs));
    }
    // Closure gap: the basis is periodic, so the S = 1 point repeats the
    // S = 0 point exactly; report closure against solver tolerance using
    // adjacent-sample spacing as the scale.
    let (_, x0, y0) = pts[0];
    let (_, xl, yl) = {
        let (theta, xi, eta) = state.eval(1.0);
        let (sn, cs) = theta.sin_cos();
        (1.0, xi * cs - eta * sn, xi * sn + eta * cs)
    };
    let gap = ((xl - x0).powi(2) + (yl - y0).powi(2)).sqrt();
    let closed = gap < 1e-8;
    let area = shoelace(&pts);
    Ok(ShapeProfile {
        samples: pts,
        closed,
        area,
    })
}

/// Signed polygon area of a closed sample loop (last edge wraps to the
/// first sample).
pub fn shoelace(samples: &[(f64, f64, f64)]) -> f64 {
    let n = samples.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (_, x0, y0) = samples[i];
        let (_, x1, y1) = samples[(i + 1) % n];
        acc += x0 * y1 - x1 * y0;
    }
    0.5 * acc
}

/// Enclosed area by the Green's-theorem line integral
/// A = ½∮(x y' − y x') dS with analytic derivatives, evaluated by the
/// periodic trapezoid rule (spectrally accurate, unlike the polygon
/// shoelace whose bias is O(1/samples²)).
pub fn spectral_area(state: &FourierState, samples: usize) -> f64 {
    let mut acc = 0.0;
    for j in 0..samples {
        let s = j as f64 / samples as f64;
        let (theta, xi, eta) = state.eval(s);
        let (dtheta, dxi, deta) = state.eval_deriv(s);
        let (sn, cs) = theta.sin_cos();
        let x = xi * cs - eta * sn;
        let y = xi * sn + eta * cs;
        let xp = dxi * cs - xi * dtheta * sn - deta * sn - eta * dtheta * cs;
        let yp = dxi * sn + xi * dtheta * cs + deta * cs - eta * dtheta * sn;
        acc += x * yp - y * xp;
    }
    0.5 * acc / samples as f64
}

/// Enclosed area of the buckled ring through O(α²):
/// A = L²/(4π(1+μ1)²)·(1 − 2π²α²(2μ1³ − μ1² + 3)).
pub fn enclosed_area(mu1: f64, alpha: f64, length: f64) -> f64 {
    let op = 1.0 + mu1;
    length * length / (4.0 * PI * op * op)
        * (1.0 - 2.0 * PI * PI * alpha * alpha * (2.0 * mu1.powi(3) - mu1 * mu1 + 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Pointwise residual of the full strong-form equilibrium equations
    /// on the circular branch plus eps times the mode triple. The linear
    /// part is isolated as the eps-odd component (the quadratic leftover
    /// is eps-even), so the mode solves the linearized system iff this
    /// vanishes.
    fn linearized_residual(n: u32, mu1: f64) -> f64 {
        let mu2 = crate::landau::critical_mu2(n, mu1).unwrap();
        let p = 2.0 * PI * mu1 * mu2;
        let b = mu2;
        let r = 1.0 / (2.0 * PI * (1.0 + mu1));
        let mode = linear_mode(n, mu1).unwrap();
        let om = 2.0 * PI * n as f64;
        let eps = 1e-4;
        let residual = |e: f64, s: f64| {
            let (sn, cs) = (om * s).sin_cos();
            let thp = 2.0 * PI + e * mode.theta_amp * om * cs;
            let thpp = -e * mode.theta_amp * om * om * sn;
            let xi = e * mode.xi_amp * sn;
            let xip = e * mode.xi_amp * om * cs;
            let eta = -r + e * mode.eta_amp * cs;
            let etap = -e * mode.eta_amp * om * sn;
            [
                thpp - p * (xi * xip + eta * etap),
                etap + thp * xi,
                xip - (p / b + thp) * eta - 1.0,
            ]
        };
        let mut max = 0.0f64;
        for j in 0..64 {
            let s = j as f64 / 64.0;
            let rp = residual(eps, s);
            let rm = residual(-eps, s);
            for (i, scale) in [
                (0, om * om * mode.theta_amp.abs().max(p * r)),
                (1, om),
                (2, om),
            ] {
                let lin = (rp[i] - rm[i]) / (2.0 * eps);
                max = max.max(lin.abs() / scale);
            }
        }
        max
    }

    #[test]
    fn mode_solves_linearized_system() {
        for &(n, mu1) in &[(2u32, 0.3), (2, 1.0), (2, 2.5), (3, 0.5), (3, 4.0)] {
            let r1 = linearized_residual(n, mu1);
            assert!(r1 < 1e-10, "mode ({n}, {mu1}) residual {r1:.3e}");
        }
    }

    #[test]
    fn mode_amplitudes() {
        let m = linear_mode(2, 0.0).unwrap();
        assert_relative_eq!(m.theta_amp, -3.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(m.xi_amp, 2.0);
        assert_relative_eq!(m.eta_amp, 1.0);
        // Window endpoint: theta amplitude vanishes as mu1 -> 3.
        let m = linear_mode(2, 3.0 - 1e-9).unwrap();
        assert!(m.theta_amp.abs() < 1e-7);
        assert!(linear_mode(2, 3.0).is_err());
    }

    #[test]
    fn third_order_coeffs_reference() {
        // Frozen from an independent transcription.
        let c = AsymptoticShapeCoeffs::new(0.5).unwrap();
        assert_relative_eq!(c.b11, -9.036553152427, max_relative = 1e-11);
        assert_relative_eq!(c.b12, 20.864514184589, max_relative = 1e-11);
        assert_relative_eq!(c.b21, -45.9699041398525, max_relative = 1e-11);
        assert_relative_eq!(c.b22, 16.698329711804, max_relative = 1e-11);
        assert_relative_eq!(c.b31, -14.5195754606888, max_relative = 1e-11);
        assert_relative_eq!(c.b32, 15.5055918752466, max_relative = 1e-11);
        let c = AsymptoticShapeCoeffs::new(0.3).unwrap();
        assert_relative_eq!(c.b11, -9.85132596928925, max_relative = 1e-11);
        assert_relative_eq!(c.b31, -3.05876923917266, max_relative = 1e-11);
    }

    #[test]
    fn eta2_constant_term() {
        // The O(α²) constant shift of η equals −π(μ1−3)·L.
        for &m in &[0.0, 0.3, 1.0, 2.5] {
            let c = AsymptoticShapeCoeffs::new(m).unwrap();
            assert_relative_eq!(c.eta2_const, -PI * (m - 3.0), max_relative = 1e-14);
        }
    }

    #[test]
    fn third_order_is_l2_orthogonal_to_mode() {
        // <w3, v1> under the L² product: only shared harmonic is 2, so
        // the product is (θ1·b11 + ξ1·b21 + η1·b31)/2.
        for &m in &[0.0, 0.3, 0.5, 1.0, 2.0, 2.9] {
            let c = AsymptoticShapeCoeffs::new(m).unwrap();
            let v = linear_mode(2, m).unwrap();
            let ip = 0.5 * (v.theta_amp * c.b11 + v.xi_amp * c.b21 + v.eta_amp * c.b31);
            let scale = 0.5
                * (v.theta_amp.abs() * c.b11.abs()
                    + v.xi_amp.abs() * c.b21.abs()
                    + v.eta_amp.abs() * c.b31.abs());
            assert!(ip.abs() < 1e-12 * scale, "mu1 = {m}: <w3, v1> = {ip:.3e}");
        }
    }

    #[test]
    fn circular_limit() {
        let state = asymptotic_state(0.3, 0.0).unwrap();
        let (theta, xi, eta) = state.eval(0.25);
        assert_relative_eq!(theta, PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(xi, 0.0);
        assert_relative_eq!(eta, -1.0 / (2.0 * PI * 1.3), max_relative = 1e-14);
    }

    #[test]
    fn cartesian_base_point_and_closure() {
        let state = asymptotic_state(0.0, 0.0).unwrap();
        let profile = to_cartesian(&state, 256).unwrap();
        let (_, x0, y0) = profile.samples[0];
        let r = 1.0 / (2.0 * PI);
        assert_relative_eq!(x0, 0.0, epsilon = 1e-14);
        assert_relative_eq!(y0, -r, max_relative = 1e-13);
        assert!(profile.closed);
        // The 256-gon inscribed in the circle carries an O(1/256²) bias.
        assert_relative_eq!(profile.area, PI * r * r, max_relative = 2e-4);
        assert_relative_eq!(spectral_area(&state, 256), PI * r * r, max_relative = 1e-12);

        let state = asymptotic_state(0.3, 0.05).unwrap();
        let profile = to_cartesian(&state, 512).unwrap();
        assert!(profile.closed);
    }

    #[test]
    fn two_lobe_symmetry() {
        // The n = 2 buckled profile has the two-lobe symmetry
        // r(S + 1/2) = r(S) in the rotating frame: the fields are
        // invariant under S -> S + 1/2 (harmonics are all even).
        let state = asymptotic_state(0.3, 0.08).unwrap();
        for j in 0..8 {
            let s = j as f64 / 16.0;
            let (t1, x1, e1) = state.eval(s);
            let (t2, x2, e2) = state.eval(s + 0.5);
            assert_relative_eq!(t2 - t1, PI, max_relative = 1e-12);
            assert_relative_eq!(x1, x2, epsilon = 1e-12);
            assert_relative_eq!(e1, e2, epsilon = 1e-12);
        }
    }

    #[test]
    fn area_formula_reference() {
        assert_relative_eq!(
            enclosed_area(0.0, 0.05, 1.0),
            0.0677964990949859,
            max_relative = 1e-13
        );
        // alpha = 0 reduces to the circular area.
        for i in 0..50 {
            let mu1 = 3.0 * i as f64 / 50.0;
            let r = 1.0 / (2.0 * PI * (1.0 + mu1));
            assert_relative_eq!(
                enclosed_area(mu1, 0.0, 1.0),
                PI * r * r,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn shoelace_matches_formula_to_cubic_order() {
        // |shoelace − formula| should drop by ≥ 8x when alpha halves.
        let err = |mu1: f64, alpha: f64| {
            let state = asymptotic_state(mu1, alpha).unwrap();
            let profile = to_cartesian(&state, 4096).unwrap();
            (profile.area - enclosed_area(mu1, alpha, 1.0)).abs()
        };
        for &mu1 in &[0.0, 0.3, 1.0] {
            let e1 = err(mu1, 0.04);
            let e2 = err(mu1, 0.02);
            assert!(
                e1 / e2 >= 7.0,
                "mu1 = {mu1}: O(alpha^3) convergence violated ({e1:.3e} vs {e2:.3e})"
            );
        }
    }

    #[test]
    fn linear_mode_preserves_area_to_first_order() {
        // Keeping only the O(alpha) mode, the area deviates from the
        // circular one at O(alpha²), not O(alpha).
        let mu1 = 0.3;
        let circ = enclosed_area(mu1, 0.0, 1.0);
        let area_of = |alpha: f64| {
            let mode = linear_mode(2, mu1).unwrap();
            let mut state = FourierState::circular(DEFAULT_MODES, mu1);
            state.theta_sin[2] = alpha * mode.theta_amp;
            state.xi_sin[2] = alpha * mode.xi_amp;
            state.eta_cos[2] = alpha * mode.eta_amp;
            to_cartesian(&state, 4096).unwrap().area
        };
        let d1 = (area_of(0.02) - circ).abs();
        let d2 = (area_of(0.01) - circ).abs();
        assert!(
            d1 / d2 > 3.5,
            "expected quadratic deviation, got {d1:.3e}/{d2:.3e}"
        );
    }
}
