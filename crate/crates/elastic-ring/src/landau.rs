//! Closed-form Landau coefficients of the ring's reduced energy,
//! bifurcation conditions, transition classification and the
//! Maxwell/spinodal constructions for mode n = 2.
//!
//! The quartic and sextic coefficients are long rational-polynomial
//! expressions in (μ1, μ2); they are kept as sums of named sub-terms so
//! a transcription bug stays localizable, and they are cross-validated
//! against the numerical reduction engine (see the acceptance tests).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Result, RingError};

/// Relative threshold below which a coefficient counts as vanished,
/// measured against the sum of the absolute values of its constituent
/// terms (cancellation-aware).
pub const DETERMINACY_TOL: f64 = 1e-9;

/// Even reduced potential g(α) = a2·α² + a4·α⁴ + a6·α⁶.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauPolynomial {
    pub a2: f64,
    pub a4: f64,
    pub a6: f64,
    /// Degree of the first non-vanishing coefficient: 2, 4 or 6.
    pub determinacy: u32,
    pub source: CoeffSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoeffSource {
    ClosedForm,
    EngineFit,
}

impl LandauPolynomial {
    /// Assemble with determinacy assigned from cancellation-aware scales:
    /// `scales[i]` is the magnitude against which `|coeff|` is compared.
    pub fn with_scales(a2: f64, a4: f64, a6: f64, scales: [f64; 3], source: CoeffSource) -> Self {
        let coeffs = [a2, a4, a6];
        let mut determinacy = 6;
        for (i, c) in coeffs.iter().enumerate() {
            if c.abs() > DETERMINACY_TOL * scales[i].max(f64::MIN_POSITIVE) {
                determinacy = 2 * (i as u32 + 1);
                break;
            }
        }
        Self {
            a2,
            a4,
            a6,
            determinacy,
            source,
        }
    }

    pub fn evaluate(&self, alpha: f64) -> f64 {
        let t = alpha * alpha;
        (self.a2 + (self.a4 + self.a6 * t) * t) * t
    }
}

/// Critical μ2 on the mode-n bifurcation curve:
/// 4π²(1+μ1)²(n²−1−μ1) = μ1·μ2.
pub fn critical_mu2(n: u32, mu1: f64) -> Result<f64> {
    let window = (n * n - 1) as f64;
    if n < 2 {
        return Err(RingError::InvalidParameter(format!(
            "mode number must be >= 2, got {n}"
        )));
    }
    if mu1 <= 0.0 {
        return Err(RingError::NoBifurcation(format!(
            "mu1 = {mu1}: the mu1 -> 0 limit is the inextensible ring; use inextensible_limit"
        )));
    }
    if mu1 >= window {
        return Err(RingError::NoBifurcation(format!(
            "mode {n} requires mu1 in (0, {window}), got {mu1}"
        )));
    }
    let op = 1.0 + mu1;
    Ok(4.0 * PI * PI * op * op * (window - mu1) / mu1)
}

/// Critical dimensionless pressure μ1μ2/(4π²) in the inextensible limit
/// μ1 → 0: equals n² − 1 (the classical value 3 for n = 2).
pub fn inextensible_limit(n: u32) -> f64 {
    (n * n - 1) as f64
}

/// Quadratic Landau coefficient (mode 2):
/// a2 = 2π²(3−μ1)·(4π²(1+μ1)²(3−μ1) − μ1μ2).
pub fn coeff_a2(mu1: f64, mu2: f64) -> f64 {
    let three = 3.0 - mu1;
    let op = 1.0 + mu1;
    2.0 * PI * PI * three * (4.0 * PI * PI * op * op * three - mu1 * mu2)
}

/// Magnitude scale of a2's constituent terms (for vanishing checks).
pub fn coeff_a2_scale(mu1: f64, mu2: f64) -> f64 {
    let three = (3.0 - mu1).abs();
    let op = 1.0 + mu1;
    2.0 * PI * PI * three * (4.0 * PI * PI * op * op * three + mu1 * mu2)
}

/// Quartic coefficient a4(μ1, μ2), transcribed as a prefactor times six
/// named terms. The denominators (−μ1 + 24π + 3) and (π²(μ1²−2μ1−3)² + 5)
/// never vanish for μ1 ∈ [0, 3).
pub fn coeff_a4(mu1: f64, mu2: f64) -> f64 {
    let (pref, terms) = a4_terms(mu1, mu2);
    pref * terms.iter().sum::<f64>()
}

/// Cancellation-aware magnitude scale of a4.
pub fn coeff_a4_scale(mu1: f64, mu2: f64) -> f64 {
    let (pref, terms) = a4_terms(mu1, mu2);
    pref.abs() * terms.iter().map(|t| t.abs()).sum::<f64>()
}

fn a4_terms(m: f64, mu2: f64) -> (f64, [f64; 6]) {
    let q = m * m - 2.0 * m - 3.0; // (m−3)(m+1)
    let pref = -PI.powi(4) * (m - 3.0) * (m + 1.0)
        / (32.0 * (-m + 24.0 * PI + 3.0) * (PI * PI * q * q + 5.0));
    let t1 = 4.0 * PI.powi(4) * (3.0 - 5.0 * m).powi(2) * (m - 3.0).powi(4) * (m + 1.0).powi(5);
    let t2 = -96.0 * PI.powi(5) * (3.0 - 5.0 * m).powi(2) * (m - 3.0).powi(3) * (m + 1.0).powi(5);
    let t3 = -8.0
        * PI.powi(3)
        * (m - 3.0)
        * (75.0 * mu2 * m.powi(5) - 372.0 * mu2 * m.powi(4)
            + 2.0 * (729.0 * mu2 - 1810.0) * m.powi(3)
            + (21012.0 - 3348.0 * mu2) * m * m
            + 9.0 * (99.0 * mu2 - 2828.0) * m
            + 19548.0)
        * (m + 1.0).powi(2);
    let t4 = 8.0 * PI * m * (905.0 * m.powi(3) - 4593.0 * m * m + 963.0 * m - 3267.0) * mu2;
    let t5 = -m * (67.0 * m.powi(4) + 12.0 * m.powi(3) + 546.0 * m * m - 5076.0 * m + 4563.0) * mu2;
    let t6 = PI
        * PI
        * q
        * q
        * (25.0 * mu2 * m.powi(5) - 124.0 * mu2 * m.powi(4) + (486.0 * mu2 - 268.0) * m.powi(3)
            - 4.0 * (279.0 * mu2 - 7.0) * m * m
            + 3.0 * (99.0 * mu2 - 3980.0) * m
            + 8244.0);
    (pref, [t1, t2, t3, t4, t5, t6])
}

/// Sextic coefficient a6(μ1, μ2): prefactor times nine named terms.
pub fn coeff_a6(mu1: f64, mu2: f64) -> f64 {
    let (pref, terms) = a6_terms(mu1, mu2);
    pref * terms.iter().sum::<f64>()
}

/// Cancellation-aware magnitude scale of a6.
pub fn coeff_a6_scale(mu1: f64, mu2: f64) -> f64 {
    let (pref, terms) = a6_terms(mu1, mu2);
    pref.abs() * terms.iter().map(|t| t.abs()).sum::<f64>()
}

fn a6_terms(m: f64, mu2: f64) -> (f64, [f64; 9]) {
    let q = m * m - 2.0 * m - 3.0;
    let den = m - 24.0 * PI - 3.0;
    let pref = PI.powi(6) * (m - 3.0).powi(2) * (m + 1.0).powi(2)
        / (32768.0 * den * den * (PI * PI * q * q + 5.0).powi(2));
    let t1 =
        -9408.0 * PI.powi(7) * (3.0 - 13.0 * m).powi(2) * (m - 3.0).powi(7) * (m + 1.0).powi(8);
    let t2 =
        112896.0 * PI.powi(8) * (3.0 - 13.0 * m).powi(2) * (m - 3.0).powi(6) * (m + 1.0).powi(8);
    let t3 = (m - 3.0).powi(2)
        * m
        * (354481.0 * m.powi(5)
            + 756721.0 * m.powi(4)
            + 4947034.0 * m.powi(3)
            + 24449106.0 * m * m
            - 26947611.0 * m
            + 5576877.0)
        * mu2;
    let t4 = -16.0
        * PI
        * m
        * (1604115.0 * m.powi(6) - 2550374.0 * m.powi(5) - 23872107.0 * m.powi(4)
            + 111841740.0 * m.powi(3)
            - 254712627.0 * m * m
            + 235371258.0 * m
            - 49445397.0)
        * mu2;
    let t5 = -48.0
        * PI.powi(5)
        * q.powi(4)
        * (8281.0 * mu2 * m.powi(7) - 64370.0 * mu2 * m.powi(6)
            + (381343.0 * mu2 + 331240.0) * m.powi(5)
            - 4.0 * (119943.0 * mu2 + 121030.0) * m.powi(4)
            + (1865799.0 * mu2 - 1485680.0) * m.powi(3)
            - 18.0 * (73377.0 * mu2 + 13720.0) * m * m
            + 27.0 * (2739.0 * mu2 + 13720.0) * m
            - 52920.0);
    let t6 = -32.0
        * PI.powi(3)
        * q
        * q
        * (124215.0 * mu2 * m.powi(7)
            - 312238.0 * mu2 * m.powi(6)
            - 9.0 * (170487.0 * mu2 - 356470.0) * m.powi(5)
            + 2.0 * (7599150.0 * mu2 - 2214349.0) * m.powi(4)
            - 9.0 * (2533599.0 * mu2 - 2970428.0) * m.powi(3)
            + 18.0 * (1332369.0 * mu2 - 3125498.0) * m * m
            + (61882974.0 - 8221905.0 * mu2) * m
            - 25745202.0);
    let t7 = 4.0
        * PI.powi(6)
        * q.powi(4)
        * (8281.0 * m.powi(10) - 70070.0 * m.powi(9)
            + 130389.0 * m.powi(8)
            + 281848.0 * m.powi(7)
            + 98.0 * (12168.0 * mu2 - 7759.0) * m.powi(6)
            - 4.0 * (3405436.0 * mu2 + 173313.0) * m.powi(5)
            + 18.0 * (8319824.0 * mu2 + 2723273.0) * m.powi(4)
            - 72.0 * (3984828.0 * mu2 - 1037575.0) * m.powi(3)
            + 9.0 * (17087184.0 * mu2 + 678013.0) * m * m
            - 54.0 * (286920.0 * mu2 + 317569.0) * m
            + 2575881.0);
    let t8 = 2.0
        * PI
        * PI
        * (41405.0 * mu2 * m.powi(12) - 476517.0 * mu2 * m.powi(11)
            + (2499091.0 * mu2 + 708962.0) * m.powi(10)
            - (6424643.0 * mu2 + 4781452.0) * m.powi(9)
            + (15178394.0 - 6443198.0 * mu2) * m.powi(8)
            + 6.0 * (15084045.0 * mu2 - 4210328.0) * m.powi(7)
            + (95619590.0 * mu2 + 43802596.0) * m.powi(6)
            - 2.0 * (496619875.0 * mu2 + 138196068.0) * m.powi(5)
            + 567.0 * (3615575.0 * mu2 + 569724.0) * m.powi(4)
            + (861527664.0 - 6024009177.0 * mu2) * m.powi(3)
            - 81.0 * (19657465.0 * mu2 + 7144038.0) * m * m
            + 1701.0 * (572357.0 * mu2 - 268444.0) * m
            + 294412482.0);
    let t9 = PI.powi(4)
        * q
        * q
        * (8281.0 * mu2 * m.powi(12) - 122337.0 * mu2 * m.powi(11)
            + (914743.0 * mu2 + 331240.0) * m.powi(10)
            - 35.0 * (104109.0 * mu2 + 80080.0) * m.powi(9)
            + (7655386.0 * mu2 + 5215560.0) * m.powi(8)
            - 2.0 * (5400261.0 * mu2 - 5636960.0) * m.powi(7)
            + (58481838.0 * mu2 - 30415280.0) * m.powi(6)
            - 2.0 * (88161623.0 * mu2 + 13865040.0) * m.powi(5)
            + 5.0 * (539280153.0 * mu2 + 441504272.0) * m.powi(4)
            - 3.0 * (2306970711.0 * mu2 + 1037986240.0) * m.powi(3)
            + 9.0 * (188236755.0 * mu2 + 719716744.0) * m * m
            + 81.0 * (5300277.0 * mu2 - 61790576.0) * m
            + 2596103784.0);
    (pref, [t1, t2, t3, t4, t5, t6, t7, t8, t9])
}

/// Closed-form Landau polynomial at a parameter point.
pub fn closed_form(mu1: f64, mu2: f64) -> LandauPolynomial {
    LandauPolynomial::with_scales(
        coeff_a2(mu1, mu2),
        coeff_a4(mu1, mu2),
        coeff_a6(mu1, mu2),
        [
            coeff_a2_scale(mu1, mu2),
            coeff_a4_scale(mu1, mu2),
            coeff_a6_scale(mu1, mu2),
        ],
        CoeffSource::ClosedForm,
    )
}

/// The tricritical point: μ1 is the root of 11μ1² − 90μ1 + 27 inside
/// [0, 3), stored as the exact radical (45 − 24√3)/11; μ2 follows from
/// the bifurcation condition.
pub fn tricritical_point() -> (f64, f64) {
    let mu1 = (45.0 - 24.0 * 3.0_f64.sqrt()) / 11.0;
    let mu2 = critical_mu2(2, mu1).expect("tricritical mu1 lies inside the mode-2 window");
    (mu1, mu2)
}

/// Control parameters of the canonical normal form: (a2/a6, a4/a6).
/// Requires a6 > 0 (6-determinacy).
pub fn normal_form(mu1: f64, mu2: f64) -> Result<(f64, f64)> {
    let a6 = coeff_a6(mu1, mu2);
    if a6 <= 0.0 {
        return Err(RingError::DeterminacyFailure(format!(
            "a6 = {a6:.6e} <= 0 at (mu1, mu2) = ({mu1}, {mu2}); sextic truncation not valid"
        )));
    }
    Ok((coeff_a2(mu1, mu2) / a6, coeff_a4(mu1, mu2) / a6))
}

/// Global minimizer over α ≥ 0 of the even sextic, in closed form via
/// the quadratic in t = α²: the nonzero stationary candidate is
/// t = (−a4 + √(a4² − 3·a2·a6)) / (3·a6), compared against t = 0.
pub fn minimize_g(poly: &LandauPolynomial) -> Result<(f64, f64)> {
    if poly.a6 <= 0.0 {
        return Err(RingError::DeterminacyFailure(format!(
            "a6 = {:.6e} <= 0; g is unbounded below in the sextic truncation",
            poly.a6
        )));
    }
    let disc = poly.a4 * poly.a4 - 3.0 * poly.a2 * poly.a6;
    if disc > 0.0 {
        let t = (-poly.a4 + disc.sqrt()) / (3.0 * poly.a6);
        if t > 0.0 {
            let g = (poly.a2 + (poly.a4 + poly.a6 * t) * t) * t;
            // Ties (exact Maxwell depth 0) resolve to the buckled well.
            if g <= 0.0 {
                return Ok((t.sqrt(), g));
            }
        }
    }
    Ok((0.0, 0.0))
}

/// Bisection on [lo, hi]; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(RingError::NoBracket { lo, hi });
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

const ROOT_TOL: f64 = 1e-12;

/// μ1 at which the circular branch loses stability for the given μ2
/// (the a2 = 0 root inside the mode-2 window).
pub fn stability_boundary(mu2: f64) -> Result<f64> {
    bisect(|m| coeff_a2(m, mu2), 1e-9, 3.0 - 1e-12, ROOT_TOL)
}

/// The hysteresis window (μ1_lower, μ1_upper) for a first-order μ2:
/// the upper spinodal is the a2 = 0 root; the lower spinodal is where
/// the buckled metastable minimum is born, a4² = 3·a2·a6 with a4 < 0.
pub fn spinodal_bounds(mu2: f64) -> Result<(f64, f64)> {
    let upper = stability_boundary(mu2)?;
    if coeff_a4(upper, mu2) >= 0.0 {
        return Err(RingError::NotFirstOrder(format!(
            "a4 = {:.6e} >= 0 at the a2 = 0 point for mu2 = {mu2}; no hysteresis window",
            coeff_a4(upper, mu2)
        )));
    }
    // Scan downward from the upper spinodal for the sign change of
    // a4² − 3·a2·a6 inside the region where a4 < 0 and a6 > 0 (the
    // discriminant also changes sign far away, in the a6 < 0 region,
    // which is not the metastability boundary).
    let f = |m: f64| {
        let a4 = coeff_a4(m, mu2);
        a4 * a4 - 3.0 * coeff_a2(m, mu2) * coeff_a6(m, mu2)
    };
    let steps = 4000;
    let mut hi = upper;
    let mut lower = None;
    for i in 1..=steps {
        let lo = upper * (1.0 - i as f64 / steps as f64);
        if coeff_a4(lo, mu2) < 0.0 && coeff_a6(lo, mu2) > 0.0 && f(lo).signum() != f(hi).signum() {
            lower = Some(bisect(f, lo, hi, ROOT_TOL)?);
            break;
        }
        hi = lo;
    }
    let lower = lower.ok_or_else(|| {
        RingError::NotFirstOrder(format!(
            "no lower spinodal found below the a2 = 0 point for mu2 = {mu2}"
        ))
    })?;
    Ok((lower, upper))
}

/// First-order transition pressure by the Maxwell equal-depth criterion:
/// the μ1 where 4·a2·a6 = a4² with a4 < 0, bracketed by the spinodals.
pub fn maxwell_locus(mu2: f64) -> Result<f64> {
    let (lower, upper) = spinodal_bounds(mu2)?;
    bisect(
        |m| 4.0 * coeff_a2(m, mu2) * coeff_a6(m, mu2) - coeff_a4(m, mu2) * coeff_a4(m, mu2),
        lower,
        upper,
        ROOT_TOL,
    )
}

/// Transition classification at fixed μ2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransitionOrder {
    SecondOrder,
    FirstOrder,
    Tricritical,
    NoBifurcation,
}

/// Classification of the transition encountered along increasing μ1 at
/// fixed μ2, with the associated critical loads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub order: TransitionOrder,
    /// μ1 where a2 = 0 (circular branch loses stability); for a
    /// first-order transition the physical transition happens earlier,
    /// at `maxwell_mu1`.
    pub mu1_critical: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxwell_mu1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spinodal_mu1: Option<(f64, f64)>,
    /// Buckled amplitude at the transition (nonzero only if first order).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_star: Option<f64>,
}

/// Classify the mode-2 transition at fixed μ2.
pub fn classify(mu2: f64) -> Result<TransitionReport> {
    let mu1_critical = match stability_boundary(mu2) {
        Ok(m) => m,
        Err(RingError::NoBracket { .. }) => {
            return Ok(TransitionReport {
                order: TransitionOrder::NoBifurcation,
                mu1_critical: f64::NAN,
                maxwell_mu1: None,
                spinodal_mu1: None,
                alpha_star: None,
            })
        }
        Err(e) => return Err(e),
    };
    let a4 = coeff_a4(mu1_critical, mu2);
    let a4_scale = coeff_a4_scale(mu1_critical, mu2);
    if a4.abs() < DETERMINACY_TOL * a4_scale {
        return Ok(TransitionReport {
            order: TransitionOrder::Tricritical,
            mu1_critical,
            maxwell_mu1: None,
            spinodal_mu1: None,
            alpha_star: None,
        });
    }
    if a4 > 0.0 {
        return Ok(TransitionReport {
            order: TransitionOrder::SecondOrder,
            mu1_critical,
            maxwell_mu1: None,
            spinodal_mu1: None,
            alpha_star: None,
        });
    }
    let spinodal = spinodal_bounds(mu2)?;
    let maxwell = maxwell_locus(mu2)?;
    let poly = closed_form(maxwell, mu2);
    let (alpha_star, _) = minimize_g(&poly)?;
    Ok(TransitionReport {
        order: TransitionOrder::FirstOrder,
        mu1_critical,
        maxwell_mu1: Some(maxwell),
        spinodal_mu1: Some(spinodal),
        alpha_star: Some(alpha_star),
    })
}

/// A sampled mode-n bifurcation curve in the (μ1, μ2) plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BifurcationCurve {
    pub n: u32,
    /// (μ1, μ2) pairs satisfying the bifurcation condition.
    pub points: Vec<(f64, f64)>,
}

/// Sample the mode-n curve on a uniform μ1 grid inside (0, n²−1).
pub fn bifurcation_curve(
    n: u32,
    mu1_min: f64,
    mu1_max: f64,
    count: usize,
) -> Result<BifurcationCurve> {
    let window = (n * n - 1) as f64;
    if !(0.0 < mu1_min && mu1_min < mu1_max && mu1_max < window) {
        return Err(RingError::InvalidParameter(format!(
            "mode {n} needs 0 < mu1_min < mu1_max < {window}, got [{mu1_min}, {mu1_max}]"
        )));
    }
    if count < 2 {
        return Err(RingError::InvalidParameter(
            "need at least 2 samples".into(),
        ));
    }
    let mut points = Vec::with_capacity(count);
    for i in 0..count {
        let mu1 = mu1_min + (mu1_max - mu1_min) * i as f64 / (count - 1) as f64;
        points.push((mu1, critical_mu2(n, mu1)?));
    }
    Ok(BifurcationCurve { n, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn critical_curve_values() {
        assert_relative_eq!(
            critical_mu2(2, 1.0).unwrap(),
            32.0 * PI * PI,
            max_relative = 1e-14
        );
        // Window endpoints.
        assert!(critical_mu2(2, 3.0).is_err());
        assert!(critical_mu2(2, 0.0).is_err());
        assert!(critical_mu2(2, 2.999).unwrap() > 0.0);
        // Mode 3 window extends to mu1 = 8.
        assert!(critical_mu2(3, 7.9).is_ok());
        assert!(critical_mu2(3, 8.0).is_err());
    }

    #[test]
    fn inextensible_limit_values() {
        assert_eq!(inextensible_limit(2), 3.0);
        assert_eq!(inextensible_limit(3), 8.0);
        assert_eq!(inextensible_limit(4), 15.0);
    }

    #[test]
    fn a2_reference_values() {
        assert_relative_eq!(coeff_a2(1.0, 100.0), 8520.52189191657, max_relative = 1e-12);
        // Vanishes on the curve.
        for &mu1 in &[0.2, 0.5, 1.0, 2.0, 2.8] {
            let mu2 = critical_mu2(2, mu1).unwrap();
            assert!(coeff_a2(mu1, mu2).abs() < 1e-9 * coeff_a2_scale(mu1, mu2));
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn a4_a6_reference_values() {
        // Frozen from an independent transcription of the same printed
        // expressions, evaluated in extended-precision Python.
        let cases = [
            (
                1.0,
                315.82734083485946,
                -799875.80905465328,
                -9600936.4632028416,
            ),
            (0.5, 500.0, -176314.99631940707, 5270891.4807998277),
            (1.0, 100.0, -218251.8880245827, 937375.35783903243),
            (
                0.5,
                444.1321980490211,
                -154629.68767759041,
                4717230.9636624539,
            ),
            (
                2.0,
                177.65287921960845,
                -1414684.1983460602,
                95236779.619924977,
            ),
        ];
        for (m, mu2, a4, a6) in cases {
            assert_relative_eq!(coeff_a4(m, mu2), a4, max_relative = 1e-11);
            assert_relative_eq!(coeff_a6(m, mu2), a6, max_relative = 1e-11);
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn tricritical_values() {
        let (mu1, mu2) = tricritical_point();
        assert_relative_eq!(mu1, 0.31188914712244942, max_relative = 1e-15);
        assert_relative_eq!(mu2, 585.59980952881187, max_relative = 1e-13);
        // Defining property: a2 and a4 vanish, a6 > 0.
        assert!(coeff_a2(mu1, mu2).abs() < 1e-8 * coeff_a2_scale(mu1, mu2));
        assert!(coeff_a4(mu1, mu2).abs() < 1e-8 * coeff_a4_scale(mu1, mu2));
        let a6 = coeff_a6(mu1, mu2);
        assert_relative_eq!(a6, 4172253.5178406867, max_relative = 1e-11);
        assert!(a6 > 0.0);
        // The companion quadratic root lies outside the window.
        let other = (45.0 + 24.0 * 3.0_f64.sqrt()) / 11.0;
        assert!(other > 3.0);
    }

    #[test]
    fn transition_signs() {
        // a4 < 0 at the a2 = 0 point for mu2 = 500 (first order),
        // a4 > 0 for mu2 = 600 (second order).
        let r500 = stability_boundary(500.0).unwrap();
        assert_relative_eq!(r500, 0.404075810032904, max_relative = 1e-10);
        assert!(coeff_a4(r500, 500.0) < 0.0);
        let r600 = stability_boundary(600.0).unwrap();
        assert_relative_eq!(r600, 0.300359412763853, max_relative = 1e-10);
        assert!(coeff_a4(r600, 600.0) > 0.0);
    }

    #[test]
    fn maxwell_and_spinodals() {
        let (lo, up) = spinodal_bounds(500.0).unwrap();
        let mx = maxwell_locus(500.0).unwrap();
        assert_relative_eq!(lo, 0.390108229723096, max_relative = 1e-9);
        assert_relative_eq!(up, 0.404075810032904, max_relative = 1e-9);
        assert_relative_eq!(mx, 0.392744133693517, max_relative = 1e-9);
        assert!(lo < mx && mx < up);
        // Equal-depth property at the Maxwell point.
        let poly = closed_form(mx, 500.0);
        let (alpha_star, g_min) = minimize_g(&poly).unwrap();
        assert_relative_eq!(alpha_star, 0.0767527997499985, max_relative = 1e-8);
        assert!(g_min.abs() < 1e-10 * poly.a6.abs());
        // Second-order regime has no Maxwell construction.
        assert!(matches!(
            maxwell_locus(600.0),
            Err(RingError::NotFirstOrder(_))
        ));
    }

    #[test]
    fn minimize_cases() {
        let convex =
            LandauPolynomial::with_scales(1.0, 1.0, 1.0, [1.0; 3], CoeffSource::ClosedForm);
        assert_eq!(minimize_g(&convex).unwrap(), (0.0, 0.0));

        let pitchfork =
            LandauPolynomial::with_scales(-1.0, 0.0, 1.0, [1.0; 3], CoeffSource::ClosedForm);
        let (a, g) = minimize_g(&pitchfork).unwrap();
        assert_relative_eq!(a, (1.0f64 / 3.0).powf(0.25), max_relative = 1e-12);
        assert_relative_eq!(g, -2.0 / (3.0 * 3.0f64.sqrt()), max_relative = 1e-12);

        // Maxwell configuration: equal minima at 0 and alpha*.
        let (a4, a6) = (-2.0, 1.0);
        let a2 = a4 * a4 / (4.0 * a6);
        let maxwell = LandauPolynomial::with_scales(a2, a4, a6, [1.0; 3], CoeffSource::ClosedForm);
        let (a, g) = minimize_g(&maxwell).unwrap();
        assert_relative_eq!(a * a, -a4 / (2.0 * a6), max_relative = 1e-10);
        assert!(g.abs() < 1e-12);

        let unbounded =
            LandauPolynomial::with_scales(1.0, 1.0, -1.0, [1.0; 3], CoeffSource::ClosedForm);
        assert!(matches!(
            minimize_g(&unbounded),
            Err(RingError::DeterminacyFailure(_))
        ));
    }

    #[test]
    fn normal_form_values() {
        let (mu1, mu2) = tricritical_point();
        let (c2, c4) = normal_form(mu1, mu2).unwrap();
        assert!(c2.abs() < 1e-12 && c4.abs() < 1e-12);
        let (c2, c4) = normal_form(1.0, 100.0).unwrap();
        assert!(c2 > 0.0 && c4 < 0.0);
        // a6 < 0 on parts of the critical curve (e.g. mu1 = 1).
        assert!(matches!(
            normal_form(1.0, critical_mu2(2, 1.0).unwrap()),
            Err(RingError::DeterminacyFailure(_))
        ));
    }

    #[test]
    fn classify_reports() {
        let r = classify(500.0).unwrap();
        assert_eq!(r.order, TransitionOrder::FirstOrder);
        assert!(r.maxwell_mu1.is_some() && r.spinodal_mu1.is_some());
        assert!(r.alpha_star.unwrap() > 0.0);

        let r = classify(600.0).unwrap();
        assert_eq!(r.order, TransitionOrder::SecondOrder);
        assert!(r.maxwell_mu1.is_none());

        let (_, mu2t) = tricritical_point();
        let r = classify(mu2t).unwrap();
        assert_eq!(r.order, TransitionOrder::Tricritical);
    }

    #[test]
    fn curve_sampling() {
        let curve = bifurcation_curve(2, 0.1, 2.9, 57).unwrap();
        for &(mu1, mu2) in &curve.points {
            let op = 1.0 + mu1;
            let lhs = 4.0 * PI * PI * op * op * (3.0 - mu1);
            assert_relative_eq!(lhs, mu1 * mu2, max_relative = 1e-10);
        }
        assert!(bifurcation_curve(2, 0.0, 3.0, 10).is_err());
    }
}
