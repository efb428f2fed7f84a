//! Truncated trigonometric representation of the ring fields and the
//! Galerkin tables used by the energy functional and the equilibrium
//! solver.
//!
//! The fields (θ, ξ, η) are perturbations of the circular branch. Under
//! the gauge θ(0) = 0 (horizontal tangent at S = 0) and with the chosen
//! mode representative, θ and ξ are pure sine series and η is a constant
//! plus a pure cosine series in 2πmS/L. Harmonic m = 1 is the rigid
//! translation zero mode and is excluded from the computational basis;
//! harmonics m = 2..N remain. With L = 1 the computational layout is
//!
//! ```text
//! [ θ_sin(2..N) | ξ_sin(2..N) | η_const | η_cos(2..N) ]
//! ```
//!
//! of dimension 3(N−1) + 1. Quadrature uses 4N uniform points, which is
//! exact for every product of trigonometric polynomials that occurs in
//! the quartic energy at truncation N.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Precomputed sine/cosine tables on the uniform quadrature grid for
/// harmonics 2..N of 2πS (L = 1).
#[derive(Debug, Clone)]
pub struct RingBasis {
    /// Truncation order N (highest retained harmonic).
    pub num_modes: usize,
    /// Number of uniform quadrature nodes (4N).
    pub num_quad: usize,
    /// Quadrature nodes S_j = j / num_quad.
    pub nodes: Vec<f64>,
    sin: Vec<Vec<f64>>,
    cos: Vec<Vec<f64>>,
    dsin: Vec<Vec<f64>>,
    dcos: Vec<Vec<f64>>,
    ddsin: Vec<Vec<f64>>,
}

impl RingBasis {
    pub fn new(num_modes: usize) -> Self {
        assert!(num_modes >= 3, "need at least harmonics 2 and 3");
        let num_quad = 4 * num_modes;
        let nodes: Vec<f64> = (0..num_quad).map(|j| j as f64 / num_quad as f64).collect();
        let mut sin = Vec::new();
        let mut cos = Vec::new();
        let mut dsin = Vec::new();
        let mut dcos = Vec::new();
        let mut ddsin = Vec::new();
        for m in 2..=num_modes {
            let om = 2.0 * PI * m as f64;
            sin.push(nodes.iter().map(|&s| (om * s).sin()).collect());
            cos.push(nodes.iter().map(|&s| (om * s).cos()).collect());
            dsin.push(nodes.iter().map(|&s| om * (om * s).cos()).collect());
            dcos.push(nodes.iter().map(|&s| -om * (om * s).sin()).collect());
            ddsin.push(nodes.iter().map(|&s| -om * om * (om * s).sin()).collect());
        }
        Self {
            num_modes,
            num_quad,
            nodes,
            sin,
            cos,
            dsin,
            dcos,
            ddsin,
        }
    }

    /// Number of retained sine (or cosine) harmonics, N − 1.
    pub fn harmonics(&self) -> usize {
        self.num_modes - 1
    }

    /// Total coefficient dimension 3(N−1) + 1.
    pub fn dim(&self) -> usize {
        3 * self.harmonics() + 1
    }

    pub fn idx_theta(&self, k: usize) -> usize {
        k
    }

    pub fn idx_xi(&self, k: usize) -> usize {
        self.harmonics() + k
    }

    pub fn idx_eta_const(&self) -> usize {
        2 * self.harmonics()
    }

    pub fn idx_eta(&self, k: usize) -> usize {
        2 * self.harmonics() + 1 + k
    }

    fn synth(&self, table: &[Vec<f64>], coeffs: impl Iterator<Item = f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.num_quad];
        for (k, c) in coeffs.enumerate() {
            if c != 0.0 {
                for (o, t) in out.iter_mut().zip(&table[k]) {
                    *o += c * t;
                }
            }
        }
        out
    }

    /// θ' of the perturbation (no 2π base ramp).
    pub fn theta_prime(&self, c: &DVector<f64>) -> Vec<f64> {
        self.synth(
            &self.dsin,
            (0..self.harmonics()).map(|k| c[self.idx_theta(k)]),
        )
    }

    /// θ'' of the perturbation.
    pub fn theta_second(&self, c: &DVector<f64>) -> Vec<f64> {
        self.synth(
            &self.ddsin,
            (0..self.harmonics()).map(|k| c[self.idx_theta(k)]),
        )
    }

    pub fn xi(&self, c: &DVector<f64>) -> Vec<f64> {
        self.synth(&self.sin, (0..self.harmonics()).map(|k| c[self.idx_xi(k)]))
    }

    pub fn xi_prime(&self, c: &DVector<f64>) -> Vec<f64> {
        self.synth(&self.dsin, (0..self.harmonics()).map(|k| c[self.idx_xi(k)]))
    }

    /// η perturbation (constant plus cosines).
    pub fn eta(&self, c: &DVector<f64>) -> Vec<f64> {
        let mut out = self.synth(&self.cos, (0..self.harmonics()).map(|k| c[self.idx_eta(k)]));
        let e0 = c[self.idx_eta_const()];
        for o in &mut out {
            *o += e0;
        }
        out
    }

    pub fn eta_prime(&self, c: &DVector<f64>) -> Vec<f64> {
        self.synth(
            &self.dcos,
            (0..self.harmonics()).map(|k| c[self.idx_eta(k)]),
        )
    }

    /// Mean of nodal values (the rectangle rule on the periodic grid).
    pub fn mean(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() / self.num_quad as f64
    }

    /// Galerkin projection onto sine harmonic k (coefficient of sin):
    /// 2·mean(values·sin_k).
    pub fn project_sin(&self, values: &[f64], k: usize) -> f64 {
        2.0 * self.mean_product(values, &self.sin[k])
    }

    /// Galerkin projection onto cosine harmonic k.
    pub fn project_cos(&self, values: &[f64], k: usize) -> f64 {
        2.0 * self.mean_product(values, &self.cos[k])
    }

    fn mean_product(&self, a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / self.num_quad as f64
    }

    /// Accumulate a weak-form gradient block: for each sine harmonic k,
    /// mean(f·sin_k) + mean(g·dsin_k), written into `out[offset + k]`.
    pub fn weak_sin_block(&self, f: &[f64], g: &[f64], out: &mut DVector<f64>, offset: usize) {
        for k in 0..self.harmonics() {
            out[offset + k] =
                self.mean_product(f, &self.sin[k]) + self.mean_product(g, &self.dsin[k]);
        }
    }

    /// Same for the cosine block (η): constant component mean(f), then
    /// mean(f·cos_k) + mean(g·dcos_k).
    pub fn weak_cos_block(&self, f: &[f64], g: &[f64], out: &mut DVector<f64>) {
        out[self.idx_eta_const()] = self.mean(f);
        for k in 0..self.harmonics() {
            out[self.idx_eta(k)] =
                self.mean_product(f, &self.cos[k]) + self.mean_product(g, &self.dcos[k]);
        }
    }

    /// Basis table accessors for solvers that assemble Jacobians
    /// column by column.
    pub fn table_sin(&self, k: usize) -> &[f64] {
        &self.sin[k]
    }

    pub fn table_cos(&self, k: usize) -> &[f64] {
        &self.cos[k]
    }

    pub fn table_dsin(&self, k: usize) -> &[f64] {
        &self.dsin[k]
    }

    pub fn table_dcos(&self, k: usize) -> &[f64] {
        &self.dcos[k]
    }

    pub fn table_ddsin(&self, k: usize) -> &[f64] {
        &self.ddsin[k]
    }

    /// L² inner product of two coefficient vectors: each harmonic carries
    /// weight 1/2 (mean of sin² = cos² = 1/2), the η constant weight 1.
    pub fn l2_inner(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim() {
            let w = if i == self.idx_eta_const() { 1.0 } else { 0.5 };
            acc += w * a[i] * b[i];
        }
        acc
    }
}

/// Tag identifying the reference configuration the coefficients perturb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BaseState {
    /// Perturbation of the compressed circular solution at the given μ1:
    /// θ_base = 2πS/L, ξ_base = 0, η_base = −L/(2π(1+μ1)).
    CircularBranch { mu1: f64 },
}

/// Public trigonometric representation of the field triple (θ, ξ, η).
///
/// Harmonic h of 2πS/L sits at index h; index 0 of the sine banks is
/// structurally zero. θ and ξ are pure sine series (gauge θ(0) = 0), η
/// is a cosine series with a constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierState {
    pub num_modes: usize,
    pub theta_sin: Vec<f64>,
    pub xi_sin: Vec<f64>,
    pub eta_cos: Vec<f64>,
    pub base: BaseState,
}

impl FourierState {
    /// Zero perturbation (the circular solution itself).
    pub fn circular(num_modes: usize, mu1: f64) -> Self {
        Self {
            num_modes,
            theta_sin: vec![0.0; num_modes + 1],
            xi_sin: vec![0.0; num_modes + 1],
            eta_cos: vec![0.0; num_modes + 1],
            base: BaseState::CircularBranch { mu1 },
        }
    }

    /// Wrap a computational coefficient vector (harmonics 2..N layout).
    pub fn from_coeffs(basis: &RingBasis, c: &DVector<f64>, mu1: f64) -> Self {
        let mut state = Self::circular(basis.num_modes, mu1);
        for k in 0..basis.harmonics() {
            state.theta_sin[k + 2] = c[basis.idx_theta(k)];
            state.xi_sin[k + 2] = c[basis.idx_xi(k)];
            state.eta_cos[k + 2] = c[basis.idx_eta(k)];
        }
        state.eta_cos[0] = c[basis.idx_eta_const()];
        state
    }

    /// Back to the computational layout; harmonic-1 content (absent from
    /// the restricted basis by the symmetry gauge) must be zero.
    pub fn to_coeffs(&self, basis: &RingBasis) -> DVector<f64> {
        assert_eq!(self.num_modes, basis.num_modes);
        assert!(
            self.theta_sin[1] == 0.0 && self.xi_sin[1] == 0.0 && self.eta_cos[1] == 0.0,
            "harmonic 1 is the translation zero mode, excluded from the computational basis"
        );
        let mut c = DVector::zeros(basis.dim());
        for k in 0..basis.harmonics() {
            c[basis.idx_theta(k)] = self.theta_sin[k + 2];
            c[basis.idx_xi(k)] = self.xi_sin[k + 2];
            c[basis.idx_eta(k)] = self.eta_cos[k + 2];
        }
        c[basis.idx_eta_const()] = self.eta_cos[0];
        c
    }

    /// μ1 of the underlying circular base.
    pub fn base_mu1(&self) -> f64 {
        match self.base {
            BaseState::CircularBranch { mu1 } => mu1,
        }
    }

    /// Full fields (base plus perturbation) at referential coordinate
    /// s ∈ [0, 1): returns (θ, ξ, η).
    pub fn eval(&self, s: f64) -> (f64, f64, f64) {
        let mu1 = self.base_mu1();
        let mut theta = 2.0 * PI * s;
        let mut xi = 0.0;
        let mut eta = -1.0 / (2.0 * PI * (1.0 + mu1)) + self.eta_cos[0];
        for h in 1..=self.num_modes {
            let (sn, cs) = (2.0 * PI * h as f64 * s).sin_cos();
            theta += self.theta_sin[h] * sn;
            xi += self.xi_sin[h] * sn;
            eta += self.eta_cos[h] * cs;
        }
        (theta, xi, eta)
    }

    /// Derivatives of the full fields at s: returns (θ', ξ', η'),
    /// including the base ramp slope 2π.
    pub fn eval_deriv(&self, s: f64) -> (f64, f64, f64) {
        let mut dtheta = 2.0 * PI;
        let mut dxi = 0.0;
        let mut deta = 0.0;
        for h in 1..=self.num_modes {
            let om = 2.0 * PI * h as f64;
            let (sn, cs) = (om * s).sin_cos();
            dtheta += self.theta_sin[h] * om * cs;
            dxi += self.xi_sin[h] * om * cs;
            deta -= self.eta_cos[h] * om * sn;
        }
        (dtheta, dxi, deta)
    }
}
