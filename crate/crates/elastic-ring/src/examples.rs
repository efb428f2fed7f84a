//! Benchmark functionals with known reductions, used as oracles for the
//! reduction engine: a two-dimensional polynomial saddle, the clamped
//! Euler elastica, and the extensible rod.

use nalgebra::DVector;
use std::f64::consts::PI;

use crate::engine::EnergyFunctional;
use crate::error::{Result, RingError};
use crate::landau::{CoeffSource, LandauPolynomial, DETERMINACY_TOL};

/// Two-dimensional model problem W(x, y) = y² + 2yx² + x²y² with a
/// degenerate critical point at the origin. The slaving and reduced
/// function are known in closed form:
/// h(x) = −x²/(1 + x²), g(x) = −x⁴/(1 + x²) = −x⁴ + x⁶ − x⁸ + …
pub struct FiniteDimExample;

pub fn finite_dim_example() -> FiniteDimExample {
    FiniteDimExample
}

impl FiniteDimExample {
    pub fn name(&self) -> &'static str {
        "finite-dim"
    }

    /// Slaved coordinate y = h(x).
    pub fn closed_form_h(&self, x: f64) -> f64 {
        -x * x / (1.0 + x * x)
    }

    /// Reduced function g(x) = W(x, h(x)).
    pub fn closed_form_g(&self, x: f64) -> f64 {
        -x.powi(4) / (1.0 + x * x)
    }

    /// Kernel of the Hessian [[0, 0], [0, 2]]: the x-axis.
    pub fn kernel(&self) -> DVector<f64> {
        DVector::from_vec(vec![1.0, 0.0])
    }
}

impl EnergyFunctional for FiniteDimExample {
    fn dim(&self) -> usize {
        2
    }

    fn energy(&self, c: &DVector<f64>) -> f64 {
        let (x, y) = (c[0], c[1]);
        y * y + 2.0 * y * x * x + x * x * y * y
    }

    fn gradient(&self, c: &DVector<f64>) -> DVector<f64> {
        let (x, y) = (c[0], c[1]);
        DVector::from_vec(vec![
            4.0 * x * y + 2.0 * x * y * y,
            2.0 * y + 2.0 * x * x + 2.0 * x * x * y,
        ])
    }
}

/// Cosine (Neumann) basis θ(s) = Σ_{m=1..N} c_m cos(mπs/L) on [0, L]
/// with midpoint quadrature, shared by the one-dimensional rod examples.
struct CosineBasis {
    num_modes: usize,
    num_quad: usize,
    /// Quadrature weight L/M.
    weight: f64,
    /// cos(mπ s_j / L), row per mode m = 1..N.
    cos: Vec<Vec<f64>>,
    /// d/ds cos(mπ s/L) = −(mπ/L) sin(mπ s/L).
    dcos: Vec<Vec<f64>>,
}

impl CosineBasis {
    fn new(num_modes: usize, length: f64) -> Self {
        let num_quad = 16 * num_modes;
        let nodes: Vec<f64> = (0..num_quad)
            .map(|j| (j as f64 + 0.5) * length / num_quad as f64)
            .collect();
        let mut cos = Vec::new();
        let mut dcos = Vec::new();
        for m in 1..=num_modes {
            let om = m as f64 * PI / length;
            cos.push(nodes.iter().map(|&s| (om * s).cos()).collect());
            dcos.push(nodes.iter().map(|&s| -om * (om * s).sin()).collect());
        }
        Self {
            num_modes,
            num_quad,
            weight: length / num_quad as f64,
            cos,
            dcos,
        }
    }

    /// Nodal values of (θ, θ').
    fn fields(&self, c: &DVector<f64>) -> (Vec<f64>, Vec<f64>) {
        let mut theta = vec![0.0; self.num_quad];
        let mut dtheta = vec![0.0; self.num_quad];
        for m in 0..self.num_modes {
            let cm = c[m];
            if cm != 0.0 {
                for j in 0..self.num_quad {
                    theta[j] += cm * self.cos[m][j];
                    dtheta[j] += cm * self.dcos[m][j];
                }
            }
        }
        (theta, dtheta)
    }

    /// Weak-form gradient: ∂W/∂c_m = ∫ f_θ·cos_m + f_θ'·dcos_m ds.
    fn weak_gradient(&self, f_theta: &[f64], f_dtheta: &[f64]) -> DVector<f64> {
        let mut g = DVector::zeros(self.num_modes);
        for m in 0..self.num_modes {
            let mut acc = 0.0;
            for j in 0..self.num_quad {
                acc += f_theta[j] * self.cos[m][j] + f_dtheta[j] * self.dcos[m][j];
            }
            g[m] = acc * self.weight;
        }
        g
    }
}

/// Inextensible Euler elastica under end load F with natural (Neumann)
/// boundary conditions:
/// W[θ] = ∫₀ᴸ k/2 θ'² + F (cos θ − 1) ds.
/// First buckling at F = k(π/L)²; reduction on the cos(πs/L) mode gives
/// a2 = π²k/(4L) − FL/4 and a4 = FL/64 (supercritical pitchfork).
pub struct EulerElastica {
    pub force: f64,
    pub bending: f64,
    pub length: f64,
    basis: CosineBasis,
}

pub fn euler_elastica(force: f64, bending: f64, length: f64) -> Result<EulerElastica> {
    EulerElastica::new(force, bending, length, 8)
}

impl EulerElastica {
    pub fn new(force: f64, bending: f64, length: f64, num_modes: usize) -> Result<Self> {
        if force <= 0.0 || bending <= 0.0 || length <= 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "elastica parameters must be positive (F={force}, k={bending}, L={length})"
            )));
        }
        Ok(Self {
            force,
            bending,
            length,
            basis: CosineBasis::new(num_modes, length),
        })
    }

    pub fn name(&self) -> &'static str {
        "euler-elastica"
    }

    /// First buckling load k(π/L)².
    pub fn critical_force(&self) -> f64 {
        self.bending * (PI / self.length).powi(2)
    }

    pub fn closed_form_coeffs(&self) -> LandauPolynomial {
        let (k, f, l) = (self.bending, self.force, self.length);
        let a2 = PI * PI * k / (4.0 * l) - f * l / 4.0;
        let a4 = f * l / 64.0;
        LandauPolynomial {
            a2,
            a4,
            a6: 0.0,
            determinacy: if a2.abs() > DETERMINACY_TOL * (PI * PI * k / (4.0 * l)) {
                2
            } else {
                4
            },
            source: CoeffSource::ClosedForm,
        }
    }

    /// Known slaved-mode signature: w2 = 0 and w3 = −1/192 · cos(3πs/L).
    pub fn w3_amplitude(&self) -> f64 {
        -1.0 / 192.0
    }

    /// Kernel mode at the critical load: cos(πs/L), i.e. coefficient 1
    /// on the first cosine.
    pub fn kernel(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[0] = 1.0;
        v
    }
}

impl EnergyFunctional for EulerElastica {
    fn dim(&self) -> usize {
        self.basis.num_modes
    }

    fn energy(&self, c: &DVector<f64>) -> f64 {
        let (theta, dtheta) = self.basis.fields(c);
        let (k, f) = (self.bending, self.force);
        let mut acc = 0.0;
        for j in 0..self.basis.num_quad {
            acc += 0.5 * k * dtheta[j] * dtheta[j] + f * (theta[j].cos() - 1.0);
        }
        acc * self.basis.weight
    }

    fn gradient(&self, c: &DVector<f64>) -> DVector<f64> {
        let (theta, dtheta) = self.basis.fields(c);
        let (k, f) = (self.bending, self.force);
        let f_theta: Vec<f64> = theta.iter().map(|&t| -f * t.sin()).collect();
        let f_dtheta: Vec<f64> = dtheta.iter().map(|&tp| k * tp).collect();
        self.basis.weak_gradient(&f_theta, &f_dtheta)
    }
}

/// Extensible rod under end load, after eliminating the stretch:
/// W[θ] = ∫₀ᴸ k/2 θ'² + F cos θ − F²/(2b) cos²θ ds, measured from the
/// straight state. Dimensionless parameters (L = 1, k = 1):
/// μ̂1 = F/b, μ̂2 = bL²/(π²k), so b = π²μ̂2 and F = π²μ̂1μ̂2. The first
/// mode bifurcates on μ̂1μ̂2(1 − μ̂1) = 1; mode 1 cannot bifurcate at all
/// when μ̂2 ≤ 4 (bL² ≤ 4kπ²).
pub struct ExtensibleRod {
    pub mu1_hat: f64,
    pub mu2_hat: f64,
    stretch_modulus: f64,
    force: f64,
    basis: CosineBasis,
}

pub fn extensible_rod(mu1_hat: f64, mu2_hat: f64) -> Result<ExtensibleRod> {
    ExtensibleRod::new(mu1_hat, mu2_hat, 8)
}

impl ExtensibleRod {
    pub fn new(mu1_hat: f64, mu2_hat: f64, num_modes: usize) -> Result<Self> {
        if !(mu1_hat.is_finite() && mu2_hat.is_finite()) || mu1_hat < 0.0 {
            return Err(RingError::InvalidParameter(format!(
                "rod parameters out of range (mu1_hat={mu1_hat}, mu2_hat={mu2_hat})"
            )));
        }
        if mu2_hat <= 4.0 {
            return Err(RingError::NoBifurcation(format!(
                "mode 1 cannot bifurcate for mu2_hat = {mu2_hat} <= 4 (bL^2 <= 4k pi^2)"
            )));
        }
        let stretch_modulus = PI * PI * mu2_hat;
        let force = mu1_hat * stretch_modulus;
        Ok(Self {
            mu1_hat,
            mu2_hat,
            stretch_modulus,
            force,
            basis: CosineBasis::new(num_modes, 1.0),
        })
    }

    pub fn name(&self) -> &'static str {
        "extensible-rod"
    }

    /// Mode-1 bifurcation curve μ̂1μ̂2(1 − μ̂1) = 1, solved for μ̂2.
    pub fn critical_mu2_hat(mu1_hat: f64) -> Result<f64> {
        if mu1_hat <= 0.0 || mu1_hat >= 1.0 {
            return Err(RingError::NoBifurcation(format!(
                "mode 1 requires 0 < mu1_hat < 1, got {mu1_hat}"
            )));
        }
        Ok(1.0 / (mu1_hat * (1.0 - mu1_hat)))
    }

    /// Parameter point where a2 and a4 vanish simultaneously with a6 > 0.
    pub fn max_degeneracy() -> (f64, f64) {
        (0.25, 16.0 / 3.0)
    }

    pub fn closed_form_coeffs(&self) -> LandauPolynomial {
        let (m1, m2) = (self.mu1_hat, self.mu2_hat);
        let pi2 = PI * PI;
        let a2 = pi2 * (1.0 - m1 * m2 + m1 * m1 * m2) / 4.0;
        let a4 = pi2 * m1 * m2 * (1.0 - 4.0 * m1) / 64.0;
        let a6 = pi2
            * (144.0 * m1.powi(4) * m2 - 280.0 * m1.powi(3) * m2 + m1 * m1 * (145.0 * m2 + 16.0)
                - m1 * (9.0 * m2 + 8.0)
                + 1.0)
            / (16384.0 * (m1 - 1.0) * (m1 - 1.0));
        let scale = pi2 * (1.0 + m1 * m2) / 4.0;
        let determinacy = if a2.abs() > DETERMINACY_TOL * scale {
            2
        } else if a4.abs() > DETERMINACY_TOL * scale {
            4
        } else {
            6
        };
        LandauPolynomial {
            a2,
            a4,
            a6,
            determinacy,
            source: CoeffSource::ClosedForm,
        }
    }

    /// Slaved O(α³) amplitude on cos(3πS/L): −(1 − 4μ̂1)/(192(1 − μ̂1)).
    pub fn w3_amplitude(&self) -> f64 {
        -(1.0 - 4.0 * self.mu1_hat) / (192.0 * (1.0 - self.mu1_hat))
    }

    pub fn kernel(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim());
        v[0] = 1.0;
        v
    }
}

impl EnergyFunctional for ExtensibleRod {
    fn dim(&self) -> usize {
        self.basis.num_modes
    }

    fn energy(&self, c: &DVector<f64>) -> f64 {
        let (theta, dtheta) = self.basis.fields(c);
        let (f, b) = (self.force, self.stretch_modulus);
        let w0 = f - f * f / (2.0 * b);
        let mut acc = 0.0;
        for j in 0..self.basis.num_quad {
            let ct = theta[j].cos();
            acc += 0.5 * dtheta[j] * dtheta[j] + f * ct - f * f / (2.0 * b) * ct * ct - w0;
        }
        acc * self.basis.weight
    }

    fn gradient(&self, c: &DVector<f64>) -> DVector<f64> {
        let (theta, dtheta) = self.basis.fields(c);
        let (f, b) = (self.force, self.stretch_modulus);
        let f_theta: Vec<f64> = theta
            .iter()
            .map(|&t| {
                let (st, ct) = t.sin_cos();
                -f * st + f * f / b * ct * st
            })
            .collect();
        self.basis.weak_gradient(&f_theta, &dtheta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn finite_dim_closed_forms() {
        let ex = finite_dim_example();
        assert_relative_eq!(ex.closed_form_h(0.5), -0.2, max_relative = 1e-14);
        assert_relative_eq!(ex.closed_form_g(0.5), -0.05, max_relative = 1e-14);
        assert_eq!(ex.closed_form_h(0.0), 0.0);
        // Gradient at the slaved point is purely along the kernel.
        let c = DVector::from_vec(vec![0.5, ex.closed_form_h(0.5)]);
        let g = ex.gradient(&c);
        assert!(g[1].abs() < 1e-14);
    }

    #[test]
    fn elastica_critical_force() {
        let ex = EulerElastica::new(0.5, 1.0, PI, 8).unwrap();
        assert_relative_eq!(ex.critical_force(), 1.0, max_relative = 1e-14);
        let at_cr = EulerElastica::new(1.0, 1.0, PI, 8).unwrap();
        let p = at_cr.closed_form_coeffs();
        assert!(p.a2.abs() < 1e-12);
        assert_relative_eq!(p.a4, PI * PI / (64.0 * PI), max_relative = 1e-14);
        assert!(p.a4 > 0.0);
    }

    #[test]
    fn elastica_gradient_consistency() {
        let ex = EulerElastica::new(0.8, 1.0, 1.0, 6).unwrap();
        let mut c = DVector::zeros(6);
        for i in 0..6 {
            c[i] = 0.05 / (i + 1) as f64;
        }
        let g = ex.gradient(&c);
        let h = 1e-6;
        let mut cp = c.clone();
        for i in 0..6 {
            cp[i] = c[i] + h;
            let ep = ex.energy(&cp);
            cp[i] = c[i] - h;
            let em = ex.energy(&cp);
            cp[i] = c[i];
            assert_relative_eq!(
                g[i],
                (ep - em) / (2.0 * h),
                epsilon = 1e-8,
                max_relative = 1e-6
            );
        }
    }

    #[test]
    fn rod_guard_and_curve() {
        assert!(matches!(
            ExtensibleRod::new(0.3, 3.0, 8),
            Err(RingError::NoBifurcation(_))
        ));
        // On the curve the quadratic coefficient vanishes.
        let m1 = 0.2;
        let m2 = ExtensibleRod::critical_mu2_hat(m1).unwrap();
        assert_relative_eq!(m1 * m2 * (1.0 - m1), 1.0, max_relative = 1e-14);
        let rod = ExtensibleRod::new(m1, m2, 8).unwrap();
        assert!(rod.closed_form_coeffs().a2.abs() < 1e-12);
    }

    #[test]
    fn rod_max_degeneracy() {
        let (m1, m2) = ExtensibleRod::max_degeneracy();
        assert_relative_eq!(m1 * m2 * (1.0 - m1), 1.0, max_relative = 1e-14);
        let rod = ExtensibleRod::new(m1, m2, 8).unwrap();
        let p = rod.closed_form_coeffs();
        assert!(p.a2.abs() < 1e-12);
        assert!(p.a4.abs() < 1e-12);
        assert_relative_eq!(p.a6, 0.0171347298630024, max_relative = 1e-12);
        assert_eq!(p.determinacy, 6);
    }

    #[test]
    fn rod_degenerates_to_elastica() {
        // μ̂2 → ∞ with F = π²μ̂1μ̂2 fixed reproduces the inextensible
        // coefficients a2 and a4.
        let force = 8.0;
        for &m2 in &[1e4, 1e6] {
            let m1 = force / (PI * PI * m2);
            let rod = ExtensibleRod::new(m1, m2, 8).unwrap();
            let el = EulerElastica::new(force, 1.0, 1.0, 8).unwrap();
            let pr = rod.closed_form_coeffs();
            let pe = el.closed_form_coeffs();
            let tol = 10.0 / m2;
            assert_relative_eq!(pr.a2, pe.a2, max_relative = tol);
            assert_relative_eq!(pr.a4, pe.a4, max_relative = tol);
        }
    }

    #[test]
    fn trivial_points_are_equilibria() {
        let rod = ExtensibleRod::new(0.3, 10.0, 8).unwrap();
        let el = EulerElastica::new(2.0, 1.0, 1.0, 8).unwrap();
        assert!(rod.gradient(&DVector::zeros(rod.dim())).amax() < 1e-12);
        assert!(el.gradient(&DVector::zeros(el.dim())).amax() < 1e-12);
        assert!(rod.energy(&DVector::zeros(rod.dim())).abs() < 1e-12);
        assert!(el.energy(&DVector::zeros(el.dim())).abs() < 1e-12);
    }
}
