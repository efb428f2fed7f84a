//! Full nonlinear equilibrium solver for the ring: Galerkin collocation
//! of the strong-form equations on the restricted Fourier basis, Newton
//! with line search and an analytic Jacobian, plus natural-parameter
//! continuation and area–pressure curves.
//!
//! This is an independent code path from the energy-based reduction
//! engine (it discretizes the equilibrium equations, not the energy), so
//! agreement between the two is a genuine cross-check. The equations,
//! with θ carrying the base ramp and η the base offset, are
//!
//!   e1 = kθ'' − p(ξξ' + ηη') = 0
//!   e2 = η' + θ'ξ            = 0
//!   e3 = ξ' − (p/b + θ')η − 1 = 0
//!
//! projected on sin(2πmS) for e1, e2 and on {1, cos(2πmS)} for e3.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::f64::consts::PI;

use crate::engine::EnergyFunctional;
use crate::error::{Result, RingError};
use crate::fourier::{FourierState, RingBasis};
use crate::landau::{self, LandauPolynomial, TransitionOrder, TransitionReport};
use crate::params::{circular_solution, ModelParams};
use crate::ring::RingFunctional;
use crate::shapes;

/// Convergence threshold on the residual ∞-norm.
pub const GTOL: f64 = 1e-10;
const MAX_NEWTON: usize = 50;
const MAX_BACKTRACK: usize = 40;

/// Collocation problem at fixed (μ1, μ2).
pub struct RingBvp {
    pub params: ModelParams,
    pub basis: RingBasis,
    k: f64,
    b: f64,
    p: f64,
    r_circ: f64,
}

/// Nodal field values entering the residual and Jacobian.
struct Fields {
    thp: Vec<f64>,
    thpp: Vec<f64>,
    xi: Vec<f64>,
    xip: Vec<f64>,
    eta: Vec<f64>,
    etap: Vec<f64>,
}

impl RingBvp {
    pub fn new(params: ModelParams, num_modes: usize) -> Self {
        Self {
            params,
            basis: RingBasis::new(num_modes),
            k: 1.0,
            b: params.mu2,
            p: 2.0 * PI * params.mu1 * params.mu2,
            r_circ: 1.0 / (2.0 * PI * (1.0 + params.mu1)),
        }
    }

    fn fields(&self, c: &DVector<f64>) -> Fields {
        let basis = &self.basis;
        let mut thp = basis.theta_prime(c);
        for v in &mut thp {
            *v += 2.0 * PI;
        }
        let mut eta = basis.eta(c);
        for v in &mut eta {
            *v -= self.r_circ;
        }
        Fields {
            thp,
            thpp: basis.theta_second(c),
            xi: basis.xi(c),
            xip: basis.xi_prime(c),
            eta,
            etap: basis.eta_prime(c),
        }
    }

    /// Nodal values of the three equilibrium equations.
    fn equations(&self, f: &Fields) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let m = self.basis.num_quad;
        let (p, b, k) = (self.p, self.b, self.k);
        let mut e1 = vec![0.0; m];
        let mut e2 = vec![0.0; m];
        let mut e3 = vec![0.0; m];
        for j in 0..m {
            e1[j] = k * f.thpp[j] - p * (f.xi[j] * f.xip[j] + f.eta[j] * f.etap[j]);
            e2[j] = f.etap[j] + f.thp[j] * f.xi[j];
            e3[j] = f.xip[j] - (p / b + f.thp[j]) * f.eta[j] - 1.0;
        }
        (e1, e2, e3)
    }

    /// Galerkin residual of a coefficient vector.
    pub fn residual(&self, c: &DVector<f64>) -> DVector<f64> {
        let f = self.fields(c);
        let (e1, e2, e3) = self.equations(&f);
        self.project(&e1, &e2, &e3)
    }

    /// Residual of a public state (must share μ1 with the problem).
    pub fn residual_state(&self, state: &FourierState) -> DVector<f64> {
        self.residual(&state.to_coeffs(&self.basis))
    }

    fn project(&self, e1: &[f64], e2: &[f64], e3: &[f64]) -> DVector<f64> {
        let basis = &self.basis;
        let mut r = DVector::zeros(basis.dim());
        for k in 0..basis.harmonics() {
            r[basis.idx_theta(k)] = basis.project_sin(e1, k);
            r[basis.idx_xi(k)] = basis.project_sin(e2, k);
            r[basis.idx_eta(k)] = basis.project_cos(e3, k);
        }
        r[basis.idx_eta_const()] = basis.mean(e3);
        r
    }

    /// Analytic Jacobian of the Galerkin residual.
    fn jacobian(&self, c: &DVector<f64>) -> DMatrix<f64> {
        let basis = &self.basis;
        let f = self.fields(c);
        let m = basis.num_quad;
        let (p, b, k) = (self.p, self.b, self.k);
        let dim = basis.dim();
        let mut jac = DMatrix::zeros(dim, dim);
        let mut d1 = vec![0.0; m];
        let mut d2 = vec![0.0; m];
        let mut d3 = vec![0.0; m];
        let set = |jac: &mut DMatrix<f64>, col: usize, d1: &[f64], d2: &[f64], d3: &[f64]| {
            for kk in 0..basis.harmonics() {
                jac[(basis.idx_theta(kk), col)] = basis.project_sin(d1, kk);
                jac[(basis.idx_xi(kk), col)] = basis.project_sin(d2, kk);
                jac[(basis.idx_eta(kk), col)] = basis.project_cos(d3, kk);
            }
            jac[(basis.idx_eta_const(), col)] = basis.mean(d3);
        };
        // θ coefficients: δθ' = dsin, δθ'' = ddsin.
        for kk in 0..basis.harmonics() {
            let (ds, dds) = (basis.table_dsin(kk), basis.table_ddsin(kk));
            for j in 0..m {
                d1[j] = k * dds[j];
                d2[j] = ds[j] * f.xi[j];
                d3[j] = -ds[j] * f.eta[j];
            }
            set(&mut jac, basis.idx_theta(kk), &d1, &d2, &d3);
        }
        // ξ coefficients: δξ = sin, δξ' = dsin.
        for kk in 0..basis.harmonics() {
            let (s, ds) = (basis.table_sin(kk), basis.table_dsin(kk));
            for j in 0..m {
                d1[j] = -p * (s[j] * f.xip[j] + f.xi[j] * ds[j]);
                d2[j] = f.thp[j] * s[j];
                d3[j] = ds[j];
            }
            set(&mut jac, basis.idx_xi(kk), &d1, &d2, &d3);
        }
        // η constant: δη = 1, δη' = 0.
        for j in 0..m {
            d1[j] = -p * f.etap[j];
            d2[j] = 0.0;
            d3[j] = -(p / b + f.thp[j]);
        }
        set(&mut jac, basis.idx_eta_const(), &d1, &d2, &d3);
        // η cosines: δη = cos, δη' = dcos.
        for kk in 0..basis.harmonics() {
            let (cs, dc) = (basis.table_cos(kk), basis.table_dcos(kk));
            for j in 0..m {
                d1[j] = -p * (cs[j] * f.etap[j] + f.eta[j] * dc[j]);
                d2[j] = dc[j];
                d3[j] = -(p / b + f.thp[j]) * cs[j];
            }
            set(&mut jac, basis.idx_eta(kk), &d1, &d2, &d3);
        }
        jac
    }

    /// Newton with backtracking line search from a seed coefficient
    /// vector; converged when the residual ∞-norm drops below `GTOL`.
    pub fn solve_coeffs(&self, seed: &DVector<f64>) -> Result<DVector<f64>> {
        let mut c = seed.clone();
        let mut r = self.residual(&c);
        for it in 0..MAX_NEWTON {
            let norm = r.amax();
            if norm < GTOL {
                return Ok(c);
            }
            let jac = self.jacobian(&c);
            let dc = jac.lu().solve(&(-&r)).ok_or(RingError::Diverged {
                residual: norm,
                iterations: it,
            })?;
            let r2 = r.norm();
            let mut lambda = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_BACKTRACK {
                let cn = &c + lambda * &dc;
                let rn = self.residual(&cn);
                if rn.norm() < r2 {
                    accepted = Some((cn, rn));
                    break;
                }
                lambda *= 0.5;
            }
            match accepted {
                Some((cn, rn)) => {
                    c = cn;
                    r = rn;
                }
                None => {
                    return Err(RingError::Diverged {
                        residual: norm,
                        iterations: it,
                    })
                }
            }
        }
        Err(RingError::Diverged {
            residual: r.amax(),
            iterations: MAX_NEWTON,
        })
    }

    /// Newton solve from a public state seed.
    pub fn solve(&self, seed: &FourierState) -> Result<FourierState> {
        let c = self.solve_coeffs(&seed.to_coeffs(&self.basis))?;
        Ok(FourierState::from_coeffs(&self.basis, &c, self.params.mu1))
    }

    /// Energy of a solution under the reduced-function normalization
    /// (zero on the circular branch).
    pub fn energy(&self, c: &DVector<f64>) -> f64 {
        RingFunctional::new(self.params, self.basis.num_modes).energy(c)
    }
}

/// Convergence status of a continuation point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointStatus {
    Converged,
    /// Continuation step underflowed; the branch likely folds here.
    Fold,
    Diverged,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchPoint {
    pub mu1: f64,
    pub state: FourierState,
    /// Signed amplitude of the kernel mode, by L² projection.
    pub alpha: f64,
    pub area: f64,
    pub energy: f64,
    pub status: PointStatus,
}

/// A continued family of equilibria at fixed μ2.
#[derive(Debug, Clone, Serialize)]
pub struct EquilibriumBranch {
    pub mode: u32,
    pub mu2: f64,
    pub points: Vec<BranchPoint>,
}

/// Amplitude of a coefficient vector along the kernel mode, by L²
/// projection (the raw η harmonic-2 amplitude is polluted at O(α³) by
/// the slaved correction; the projection is not).
pub fn kernel_amplitude(basis: &RingBasis, mu1: f64, c: &DVector<f64>) -> f64 {
    let v = crate::ring::kernel_mode(mu1, basis);
    basis.l2_inner(c, &v) / basis.l2_inner(&v, &v)
}

fn branch_point(bvp: &RingBvp, c: &DVector<f64>, status: PointStatus) -> Result<BranchPoint> {
    let state = FourierState::from_coeffs(&bvp.basis, c, bvp.params.mu1);
    let area = shapes::spectral_area(&state, 4 * bvp.basis.num_quad);
    Ok(BranchPoint {
        mu1: bvp.params.mu1,
        alpha: kernel_amplitude(&bvp.basis, bvp.params.mu1, c),
        area,
        energy: bvp.energy(c),
        state,
        status,
    })
}

/// Natural-parameter continuation in μ1 at fixed μ2, from a converged
/// seed at `mu1_start` towards `mu1_end`. Steps halve on Newton failure;
/// underflow below `min_step` terminates the branch with a fold flag.
pub fn continue_branch(
    mu2: f64,
    mu1_start: f64,
    mu1_end: f64,
    steps: usize,
    seed: &FourierState,
    num_modes: usize,
) -> Result<EquilibriumBranch> {
    assert!(steps >= 1);
    let nominal = (mu1_end - mu1_start) / steps as f64;
    let min_step = nominal.abs() * 2f64.powi(-12);
    let mut points = Vec::new();
    let bvp = RingBvp::new(ModelParams::new(mu1_start, mu2)?, num_modes);
    let mut c = bvp.solve_coeffs(&seed.to_coeffs(&bvp.basis))?;
    points.push(branch_point(&bvp, &c, PointStatus::Converged)?);
    let mut mu1 = mu1_start;
    let mut step = nominal;
    while (mu1_end - mu1) * nominal.signum() > 1e-14 {
        let target = if (mu1 + step - mu1_end) * nominal.signum() > 0.0 {
            mu1_end
        } else {
            mu1 + step
        };
        let bvp = RingBvp::new(ModelParams::new(target, mu2)?, num_modes);
        match bvp.solve_coeffs(&c) {
            Ok(cn) => {
                c = cn;
                mu1 = target;
                points.push(branch_point(&bvp, &c, PointStatus::Converged)?);
                step = nominal;
            }
            Err(_) if step.abs() * 0.5 >= min_step => {
                step *= 0.5;
            }
            Err(_) => {
                if let Some(last) = points.last_mut() {
                    last.status = PointStatus::Fold;
                }
                break;
            }
        }
    }
    Ok(EquilibriumBranch {
        mode: 2,
        mu2,
        points,
    })
}

/// One row of an area–pressure table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AreaCurvePoint {
    pub mu1: f64,
    /// Area of the circular branch at this pressure.
    pub area_circular: f64,
    /// Equilibrium-selected (global-minimum) branch area.
    pub area_stable: f64,
    /// Buckled amplitude of the stable branch (0 on the circular side).
    pub alpha_stable: f64,
    /// Area of the coexisting metastable branch inside the hysteresis
    /// window, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area_metastable: Option<f64>,
    /// Area of the BVP solution seeded on the stable branch, when the
    /// BVP source was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub area_bvp: Option<f64>,
}

/// Which solver feeds the area column(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AreaSource {
    Asymptotic,
    Bvp,
    Both,
}

/// Area–pressure table at fixed μ2 with its transition annotation.
#[derive(Debug, Clone, Serialize)]
pub struct AreaCurve {
    pub mu2: f64,
    pub transition: TransitionReport,
    /// (μ1, area just before, area just after) of the Maxwell jump, for
    /// first-order transitions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jump: Option<(f64, f64, f64)>,
    pub points: Vec<AreaCurvePoint>,
}

/// Nonzero local minimum of the sextic regardless of its depth sign:
/// (α, g(α²)) when the quadratic in t = α² has a positive root branch.
fn buckled_minimum(poly: &LandauPolynomial) -> Option<(f64, f64)> {
    if poly.a6 <= 0.0 {
        return None;
    }
    let disc = poly.a4 * poly.a4 - 3.0 * poly.a2 * poly.a6;
    if disc <= 0.0 {
        return None;
    }
    let t = (-poly.a4 + disc.sqrt()) / (3.0 * poly.a6);
    if t <= 0.0 {
        return None;
    }
    let g = (poly.a2 + (poly.a4 + poly.a6 * t) * t) * t;
    Some((t.sqrt(), g))
}

/// Equilibrium-selected area–pressure curve at fixed μ2 over a uniform
/// μ1 grid, with metastable-branch data inside the hysteresis window
/// and an optional BVP cross-check column.
pub fn area_pressure_curve(
    mu2: f64,
    mu1_min: f64,
    mu1_max: f64,
    count: usize,
    source: AreaSource,
    num_modes: usize,
) -> Result<AreaCurve> {
    if count < 2 || !(0.0 <= mu1_min && mu1_min < mu1_max) {
        return Err(RingError::InvalidParameter(format!(
            "need mu1_min < mu1_max and >= 2 samples, got [{mu1_min}, {mu1_max}] x {count}"
        )));
    }
    let transition = landau::classify(mu2)?;
    let mut points = Vec::with_capacity(count);
    for i in 0..count {
        let mu1 = mu1_min + (mu1_max - mu1_min) * i as f64 / (count - 1) as f64;
        points.push(area_point(mu2, mu1, &transition, source, num_modes)?);
    }
    let jump = match (transition.order, transition.maxwell_mu1) {
        (TransitionOrder::FirstOrder, Some(maxwell)) => {
            let eps = 1e-9;
            let before = area_point(
                mu2,
                maxwell - eps,
                &transition,
                AreaSource::Asymptotic,
                num_modes,
            )?;
            let after = area_point(
                mu2,
                maxwell + eps,
                &transition,
                AreaSource::Asymptotic,
                num_modes,
            )?;
            Some((maxwell, before.area_stable, after.area_stable))
        }
        _ => None,
    };
    Ok(AreaCurve {
        mu2,
        transition,
        jump,
        points,
    })
}

fn area_point(
    mu2: f64,
    mu1: f64,
    transition: &TransitionReport,
    source: AreaSource,
    num_modes: usize,
) -> Result<AreaCurvePoint> {
    let params = ModelParams::new(mu1, mu2)?;
    let area_circular = circular_solution(&params).area;
    let poly = landau::closed_form(mu1, mu2);
    let buckled = buckled_minimum(&poly);
    // Global-minimum branch selection: the buckled well wins when its
    // depth is negative; the circular state is a local minimum only
    // while a2 > 0.
    let (alpha_stable, stable_is_buckled) = match buckled {
        Some((alpha, g)) if g < 0.0 => (alpha, true),
        _ => (0.0, false),
    };
    let area_of = |alpha: f64| {
        if alpha == 0.0 {
            area_circular
        } else {
            shapes::enclosed_area(mu1, alpha, 1.0)
        }
    };
    let area_stable = area_of(alpha_stable);
    let area_metastable = match transition.order {
        TransitionOrder::FirstOrder => {
            if stable_is_buckled {
                // Circular branch stays metastable up to a2 = 0.
                (poly.a2 > 0.0).then_some(area_circular)
            } else {
                // Buckled well present but shallow: metastable.
                buckled.map(|(alpha, _)| area_of(alpha))
            }
        }
        _ => None,
    };
    let area_bvp = match source {
        AreaSource::Asymptotic => None,
        AreaSource::Bvp | AreaSource::Both => {
            let bvp = RingBvp::new(params, num_modes);
            let seed = if alpha_stable == 0.0 {
                FourierState::circular(num_modes, mu1)
            } else {
                shapes::asymptotic_state(mu1, alpha_stable)?
            };
            let c = bvp.solve_coeffs(&seed.to_coeffs(&bvp.basis))?;
            let state = FourierState::from_coeffs(&bvp.basis, &c, mu1);
            Some(shapes::spectral_area(&state, 4 * bvp.basis.num_quad))
        }
    };
    Ok(AreaCurvePoint {
        mu1,
        area_circular,
        area_stable,
        alpha_stable,
        area_metastable,
        area_bvp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn circular_state_has_zero_residual() {
        for &(mu1, mu2) in &[(0.2, 600.0), (0.5, 500.0), (1.0, 100.0)] {
            let bvp = RingBvp::new(ModelParams::new(mu1, mu2).unwrap(), 12);
            let r = bvp.residual(&DVector::zeros(bvp.basis.dim()));
            assert!(r.amax() < 1e-12, "({mu1}, {mu2}): {:.2e}", r.amax());
        }
    }

    #[test]
    fn random_perturbation_has_nonzero_residual() {
        let bvp = RingBvp::new(ModelParams::new(0.4, 500.0).unwrap(), 12);
        let mut c = DVector::zeros(bvp.basis.dim());
        for i in 0..c.len() {
            c[i] = 1e-3 * ((i * 7 % 11) as f64 - 5.0);
        }
        assert!(bvp.residual(&c).amax() > 1e-6);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let bvp = RingBvp::new(ModelParams::new(0.35, 600.0).unwrap(), 6);
        let mut c = DVector::zeros(bvp.basis.dim());
        for i in 0..c.len() {
            c[i] = 0.01 * ((i % 4) as f64 - 1.5);
        }
        let jac = bvp.jacobian(&c);
        let h = 1e-7;
        let r0 = bvp.residual(&c);
        let mut cp = c.clone();
        let scale = jac.amax();
        for j in 0..c.len() {
            cp[j] = c[j] + h;
            let rj = bvp.residual(&cp);
            cp[j] = c[j];
            for i in 0..c.len() {
                let fd = (rj[i] - r0[i]) / h;
                assert!(
                    (jac[(i, j)] - fd).abs() < 1e-5 * scale.max(1.0),
                    "J[{i},{j}] = {} vs FD {}",
                    jac[(i, j)],
                    fd
                );
            }
        }
    }

    #[test]
    fn asymptotic_state_residual_scales_as_alpha_fourth() {
        // At the critical point the α³-truncated state solves the
        // equations to O(α⁴).
        let mu1 = 0.5;
        let mu2c = landau::critical_mu2(2, mu1).unwrap();
        let bvp = RingBvp::new(ModelParams::new(mu1, mu2c).unwrap(), 12);
        let res = |alpha: f64| {
            let state = shapes::asymptotic_state(mu1, alpha).unwrap();
            bvp.residual_state(&state).amax()
        };
        let ratio = res(0.02) / res(0.01);
        assert!(
            (12.0..20.0).contains(&ratio),
            "residual ratio {ratio} not ~16"
        );
    }

    #[test]
    fn subcritical_seed_returns_circular() {
        let bvp = RingBvp::new(ModelParams::new(0.2, 600.0).unwrap(), 12);
        let mut seed = DVector::zeros(bvp.basis.dim());
        seed[bvp.basis.idx_eta(0)] = 0.01;
        let c = bvp.solve_coeffs(&seed).unwrap();
        assert!(c.amax() < 1e-9, "expected circular, |c| = {:.2e}", c.amax());
    }

    #[test]
    fn buckled_state_below_circular_energy() {
        // Just past the critical pressure at μ2 = 600 the buckled branch
        // exists and has lower energy than the circular one.
        let mu2 = 600.0;
        let mu1 = landau::stability_boundary(mu2).unwrap() + 0.02;
        let poly = landau::closed_form(mu1, mu2);
        let (alpha_star, _) = landau::minimize_g(&poly).unwrap();
        assert!(
            alpha_star > 0.01,
            "expected a buckled minimum past critical"
        );
        let bvp = RingBvp::new(ModelParams::new(mu1, mu2).unwrap(), 12);
        let seed = shapes::asymptotic_state(mu1, alpha_star).unwrap();
        let c = bvp.solve_coeffs(&seed.to_coeffs(&bvp.basis)).unwrap();
        let alpha_sol = kernel_amplitude(&bvp.basis, mu1, &c);
        assert_relative_eq!(alpha_sol, alpha_star, max_relative = 0.2);
        assert!(bvp.energy(&c) < 0.0);
    }

    #[test]
    fn circular_continuation_tracks_circular_area() {
        let branch =
            continue_branch(600.0, 0.05, 0.25, 10, &FourierState::circular(12, 0.05), 12).unwrap();
        assert_eq!(branch.points.len(), 11);
        for pt in &branch.points {
            let expected = circular_solution(&ModelParams::new(pt.mu1, 600.0).unwrap()).area;
            assert_relative_eq!(pt.area, expected, max_relative = 1e-6);
            assert_eq!(pt.status, PointStatus::Converged);
        }
    }

    #[test]
    fn area_curve_maxwell_jump_only_when_first_order() {
        let first = area_pressure_curve(500.0, 0.3, 0.45, 16, AreaSource::Asymptotic, 12).unwrap();
        assert_eq!(first.transition.order, TransitionOrder::FirstOrder);
        let (mu1_j, before, after) = first.jump.unwrap();
        assert_relative_eq!(mu1_j, 0.392744133693517, max_relative = 1e-6);
        assert!(before > after, "area must drop at the jump");

        let second = area_pressure_curve(600.0, 0.2, 0.4, 16, AreaSource::Asymptotic, 12).unwrap();
        assert_eq!(second.transition.order, TransitionOrder::SecondOrder);
        assert!(second.jump.is_none());
    }

    #[test]
    fn pre_transition_segment_is_circular() {
        let curve = area_pressure_curve(600.0, 0.1, 0.25, 6, AreaSource::Asymptotic, 12).unwrap();
        for pt in &curve.points {
            assert_relative_eq!(pt.area_stable, pt.area_circular, max_relative = 1e-12);
            assert_eq!(pt.alpha_stable, 0.0);
        }
    }

    #[test]
    fn metastable_branches_inside_hysteresis_window() {
        let mu2 = 500.0;
        let report = landau::classify(mu2).unwrap();
        let (lo, hi) = report.spinodal_mu1.unwrap();
        let maxwell = report.maxwell_mu1.unwrap();
        // Between the lower spinodal and Maxwell: stable circular with a
        // metastable buckled well.
        let m_a = 0.5 * (lo + maxwell);
        let pt = area_point(mu2, m_a, &report, AreaSource::Asymptotic, 12).unwrap();
        assert_eq!(pt.alpha_stable, 0.0);
        assert!(pt.area_metastable.is_some());
        // Between Maxwell and the upper spinodal: stable buckled with a
        // metastable circular branch.
        let m_b = 0.5 * (maxwell + hi);
        let pt = area_point(mu2, m_b, &report, AreaSource::Asymptotic, 12).unwrap();
        assert!(pt.alpha_stable > 0.0);
        assert_relative_eq!(pt.area_metastable.unwrap(), pt.area_circular);
    }
}
