//! Numerical splitting-lemma reduction.
//!
//! Given a discretized energy functional with a trivial equilibrium at
//! the origin and a one-dimensional Hessian kernel at a critical
//! parameter point, the engine computes the slaved correction w(α)
//! orthogonal to the kernel, samples the reduced function
//! g(α) = W(α·v + w(α)), and fits its polynomial coefficients.
//!
//! The slaving equation is the projected residual
//!     P·D·∇W(α·v + w) = 0,   w ⊥ v,
//! where P is the orthogonal projector along the kernel vector v and D
//! is an optional diagonal rescaling of the gradient channels supplied
//! by the functional (identity by default). Functionals whose
//! Euler–Lagrange form differs from the raw gradient by per-field
//! factors use D to make the projection act on the equation residual;
//! the ring requires this for its fitted quartic/sextic coefficients to
//! match the closed forms.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Result, RingError};
use crate::landau::{CoeffSource, LandauPolynomial};

/// A discretized energy functional with its trivial equilibrium at the
/// coefficient origin and W(0) = 0.
pub trait EnergyFunctional {
    fn dim(&self) -> usize;

    fn energy(&self, c: &DVector<f64>) -> f64;

    /// Analytic gradient when available; the default is central finite
    /// differences of `energy`.
    fn gradient(&self, c: &DVector<f64>) -> DVector<f64> {
        let h = 1e-6;
        let mut g = DVector::zeros(self.dim());
        let mut cp = c.clone();
        for i in 0..self.dim() {
            let ci = c[i];
            cp[i] = ci + h;
            let ep = self.energy(&cp);
            cp[i] = ci - h;
            let em = self.energy(&cp);
            cp[i] = ci;
            g[i] = (ep - em) / (2.0 * h);
        }
        g
    }

    /// Diagonal weights mapping the gradient to the residual whose
    /// projection defines the slaving. `None` means identity.
    fn residual_weights(&self) -> Option<DVector<f64>> {
        None
    }

    /// Known zero modes (translations/rotations) to deflate before
    /// kernel detection.
    fn symmetry_modes(&self) -> Vec<DVector<f64>> {
        Vec::new()
    }

    /// True when the gradient is an exact polynomial of degree ≤ 3 in
    /// the coefficients, enabling exact jet extraction by differencing.
    fn gradient_is_cubic(&self) -> bool {
        false
    }
}

/// Numerical tolerances of the engine.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EngineConfig {
    /// Convergence threshold on the ∞-norm of the projected residual.
    pub gtol: f64,
    /// Kernel detection: |eigenvalue| < rank_tol · spectral norm.
    pub rank_tol: f64,
    /// Forward-difference step for Hessian assembly and Newton Jacobians.
    pub fd_step: f64,
    /// Newton iteration cap.
    pub max_newton: usize,
    /// Allowed relative asymmetry of the assembled Hessian.
    pub asym_tol: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            gtol: 1e-11,
            rank_tol: 1e-7,
            fd_step: 1e-5,
            max_newton: 60,
            // Forward differencing leaves an O(h)·third-derivative skew
            // before symmetrization; 1e-5 keeps a margin at the ring's
            // curvature scale.
            asym_tol: 1e-5,
        }
    }
}

/// Gradient with the functional's residual weights applied.
pub fn weighted_gradient(f: &dyn EnergyFunctional, c: &DVector<f64>) -> DVector<f64> {
    let mut g = f.gradient(c);
    if let Some(w) = f.residual_weights() {
        g.component_mul_assign(&w);
    }
    g
}

/// Discrete Hessian at the origin: forward differences of the
/// (unweighted) gradient, symmetrized. Errors if the raw asymmetry
/// exceeds `cfg.asym_tol` relative to the norm.
pub fn assemble_hessian(f: &dyn EnergyFunctional, cfg: &EngineConfig) -> Result<DMatrix<f64>> {
    let n = f.dim();
    let g0 = f.gradient(&DVector::zeros(n));
    let mut h = DMatrix::zeros(n, n);
    let mut c = DVector::zeros(n);
    for j in 0..n {
        c[j] = cfg.fd_step;
        let gj = f.gradient(&c);
        c[j] = 0.0;
        for i in 0..n {
            h[(i, j)] = (gj[i] - g0[i]) / cfg.fd_step;
        }
    }
    let sym = 0.5 * (&h + h.transpose());
    let asym = (&h - &sym).norm() / sym.norm().max(f64::MIN_POSITIVE);
    if asym > cfg.asym_tol {
        return Err(RingError::AsymmetricHessian {
            asymmetry: asym,
            tolerance: cfg.asym_tol,
        });
    }
    Ok(sym)
}

/// Near-null eigenvectors of the symmetric Hessian after deflating the
/// declared symmetry modes. Errors when more than `expected` survive.
pub fn detect_kernel(
    f: &dyn EnergyFunctional,
    hessian: &DMatrix<f64>,
    expected: usize,
    cfg: &EngineConfig,
) -> Result<Vec<DVector<f64>>> {
    let mut h = hessian.clone();
    for mode in f.symmetry_modes() {
        // Deflate by shifting the mode's eigenvalue away from zero.
        let m = &mode / mode.norm();
        let shift = h.norm();
        h += shift * &m * m.transpose();
    }
    let eig = h.symmetric_eigen();
    let spectral = eig.eigenvalues.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let mut kernel = Vec::new();
    let mut near_zero = Vec::new();
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda.abs() < cfg.rank_tol * spectral {
            near_zero.push(lambda);
            kernel.push(DVector::from(eig.eigenvectors.column(i).into_owned()));
        }
    }
    if kernel.len() > expected {
        return Err(RingError::DegenerateKernel {
            expected,
            found: kernel.len(),
            eigenvalues: near_zero,
        });
    }
    Ok(kernel)
}

/// How to scale and sign-fix a kernel vector.
#[derive(Debug, Clone, Copy)]
pub enum NormalizationConvention {
    /// Scale so the given component equals +1 (the ring uses the
    /// η cos(4πS/L) amplitude).
    Component(usize),
    /// Scale to unit norm with the largest-magnitude component positive.
    UnitNorm,
}

pub fn normalize_kernel(
    v: &DVector<f64>,
    convention: NormalizationConvention,
) -> Result<DVector<f64>> {
    match convention {
        NormalizationConvention::Component(idx) => {
            let amp = v[idx];
            if amp.abs() < 1e-12 * v.norm() {
                return Err(RingError::NormalizationAmbiguous(format!(
                    "component {idx} of the kernel vector is numerically zero"
                )));
            }
            Ok(v / amp)
        }
        NormalizationConvention::UnitNorm => {
            let norm = v.norm();
            if norm == 0.0 {
                return Err(RingError::NormalizationAmbiguous("zero vector".into()));
            }
            let imax = v.iter().enumerate().fold(
                0,
                |im, (i, x)| {
                    if x.abs() > v[im].abs() {
                        i
                    } else {
                        im
                    }
                },
            );
            Ok(v * (v[imax].signum() / norm))
        }
    }
}

fn project_out(v: &DVector<f64>, x: &DVector<f64>) -> DVector<f64> {
    x - v * (v.dot(x) / v.dot(v))
}

/// Jacobian of w ↦ D∇W(c) by forward differences, column by column.
fn weighted_jacobian(
    f: &dyn EnergyFunctional,
    c: &DVector<f64>,
    cfg: &EngineConfig,
) -> DMatrix<f64> {
    let n = f.dim();
    let g0 = weighted_gradient(f, c);
    let mut j = DMatrix::zeros(n, n);
    let mut cp = c.clone();
    let h = cfg.fd_step;
    for k in 0..n {
        cp[k] = c[k] + h;
        let gk = weighted_gradient(f, &cp);
        cp[k] = c[k];
        for i in 0..n {
            j[(i, k)] = (gk[i] - g0[i]) / h;
        }
    }
    j
}

/// One slaved solve with its Newton residual history.
pub struct SlavedSolve {
    pub w: DVector<f64>,
    pub residual_norms: Vec<f64>,
}

/// Newton iteration on the projected system P·D·∇W(α·v + w) = 0 with
/// w ⊥ v, warm-started from `warm`.
pub fn solve_slaved(
    f: &dyn EnergyFunctional,
    v: &DVector<f64>,
    alpha: f64,
    warm: Option<&DVector<f64>>,
    cfg: &EngineConfig,
) -> Result<SlavedSolve> {
    let n = f.dim();
    let vv = v.dot(v);
    let mut w = warm.map_or_else(|| DVector::zeros(n), |w| project_out(v, w));
    let mut history = Vec::new();
    for _ in 0..cfg.max_newton {
        let c = alpha * v + &w;
        let r = project_out(v, &weighted_gradient(f, &c));
        let norm = r.amax();
        history.push(norm);
        if norm < cfg.gtol {
            return Ok(SlavedSolve {
                w,
                residual_norms: history,
            });
        }
        let j = weighted_jacobian(f, &c, cfg);
        // Restrict the Jacobian to v-perp and border it with the kernel
        // direction so the system is square and nonsingular.
        let mut a = DMatrix::zeros(n, n);
        // a = P J P + v v^T / (v.v)
        let jp = {
            // apply P on both sides
            let mut cols = DMatrix::zeros(n, n);
            for k in 0..n {
                let col = project_out(v, &DVector::from(j.column(k).into_owned()));
                cols.set_column(k, &col);
            }
            let mut rows = DMatrix::zeros(n, n);
            for k in 0..n {
                let row = project_out(v, &DVector::from(cols.row(k).transpose()));
                rows.set_row(k, &row.transpose());
            }
            rows
        };
        a += jp;
        a += v * v.transpose() / vv;
        let lu = a.lu();
        let dw = lu.solve(&(-&r)).ok_or(RingError::Diverged {
            residual: norm,
            iterations: history.len(),
        })?;
        w = project_out(v, &(&w + dw));
    }
    Err(RingError::Diverged {
        residual: *history.last().unwrap_or(&f64::NAN),
        iterations: history.len(),
    })
}

/// Output of a reduction run.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionResult {
    /// Normalized kernel vector.
    pub kernel: Vec<f64>,
    /// (α, w(α)) for every accepted grid point.
    pub slaved: Vec<(f64, Vec<f64>)>,
    /// (α, g(α)) samples.
    pub g_samples: Vec<(f64, f64)>,
    pub fitted: LandauPolynomial,
    /// RMS misfit of the polynomial model over the samples.
    pub fit_residual: f64,
    /// Fitted α¹, α³, α⁵ coefficients (diagnostic; near zero for
    /// symmetric problems).
    pub odd_coeffs: [f64; 3],
}

/// Least-squares fit of g samples on monomials α², α⁴, α⁶, α⁸ plus odd
/// diagnostics α, α³, α⁵, solved in amplitude-scaled variables for
/// conditioning. Returns (even[4], odd[3], rms).
pub fn fit_polynomial(samples: &[(f64, f64)]) -> ([f64; 4], [f64; 3], f64) {
    let scale = samples
        .iter()
        .fold(0.0f64, |a, &(x, _)| a.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let rows = samples.len();
    let powers = [2i32, 4, 6, 8, 1, 3, 5];
    let mut a = DMatrix::zeros(rows, powers.len());
    let mut b = DVector::zeros(rows);
    for (r, &(alpha, g)) in samples.iter().enumerate() {
        let x = alpha / scale;
        for (c, &p) in powers.iter().enumerate() {
            a[(r, c)] = x.powi(p);
        }
        b[r] = g;
    }
    let svd = a.clone().svd(true, true);
    let sol = svd.solve(&b, 1e-13).expect("SVD solve");
    let resid = (&a * &sol - &b).norm() / (rows as f64).sqrt();
    let mut even = [0.0; 4];
    let mut odd = [0.0; 3];
    for (c, &p) in powers.iter().enumerate() {
        let coeff = sol[c] / scale.powi(p);
        if c < 4 {
            even[c] = coeff;
        } else {
            odd[c - 4] = coeff;
        }
    }
    (even, odd, resid)
}

/// Full reduction: slaved solves over the α grid (warm-started outward
/// from 0 on each sign), g sampling, and the polynomial fit.
pub fn reduce(
    f: &dyn EnergyFunctional,
    v: &DVector<f64>,
    alphas: &[f64],
    cfg: &EngineConfig,
) -> Result<ReductionResult> {
    let mut sorted: Vec<f64> = alphas.to_vec();
    sorted.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
    let mut slaved: Vec<(f64, DVector<f64>)> = Vec::new();
    let mut warm_pos: Option<DVector<f64>> = None;
    let mut warm_neg: Option<DVector<f64>> = None;
    for &alpha in &sorted {
        let warm = if alpha >= 0.0 { &warm_pos } else { &warm_neg };
        let solve = solve_slaved(f, v, alpha, warm.as_ref(), cfg)?;
        if alpha >= 0.0 {
            warm_pos = Some(solve.w.clone());
        } else {
            warm_neg = Some(solve.w.clone());
        }
        slaved.push((alpha, solve.w));
    }
    slaved.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let g_samples: Vec<(f64, f64)> = slaved
        .iter()
        .map(|(alpha, w)| (*alpha, f.energy(&(*alpha * v + w))))
        .collect();
    let (even, odd, rms) = fit_polynomial(&g_samples);
    let alpha_max = sorted
        .iter()
        .fold(0.0f64, |a, &x| a.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let fitted = fitted_polynomial(even, alpha_max, rms);
    Ok(ReductionResult {
        kernel: v.iter().copied().collect(),
        slaved: slaved
            .into_iter()
            .map(|(a, w)| (a, w.iter().copied().collect()))
            .collect(),
        g_samples,
        fitted,
        fit_residual: rms,
        odd_coeffs: odd,
    })
}

/// Determinacy from fitted coefficients: a coefficient counts as zero
/// when its contribution at the edge of the fitted window is below ten
/// times the fit residual.
pub fn fitted_polynomial(even: [f64; 4], alpha_max: f64, rms: f64) -> LandauPolynomial {
    let floor = 10.0 * rms.max(f64::MIN_POSITIVE);
    let mut determinacy = 6;
    for (i, &c) in even.iter().take(3).enumerate() {
        if c.abs() * alpha_max.powi(2 * (i as i32 + 1)) > floor {
            determinacy = 2 * (i as u32 + 1);
            break;
        }
    }
    LandauPolynomial {
        a2: even[0],
        a4: even[1],
        a6: even[2],
        determinacy,
        source: CoeffSource::EngineFit,
    }
}

/// Least-squares α² and α³ jets of the slaved correction from a set of
/// (α, w(α)) samples, fitted per component on 1, α, α², ..., α⁵ in
/// amplitude-scaled variables. The constant and linear columns are
/// diagnostics; they absorb nothing for a correct reduction
/// (w(0) = 0, w'(0) = 0).
pub fn fit_slaved_jets(slaved: &[(f64, Vec<f64>)]) -> (DVector<f64>, DVector<f64>) {
    assert!(slaved.len() >= 6, "need at least 6 samples for the jet fit");
    let dim = slaved[0].1.len();
    let scale = slaved
        .iter()
        .fold(0.0f64, |a, (x, _)| a.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    let rows = slaved.len();
    let cols = 6;
    let mut a = DMatrix::zeros(rows, cols);
    for (r, (alpha, _)) in slaved.iter().enumerate() {
        let x = alpha / scale;
        for c in 0..cols {
            a[(r, c)] = x.powi(c as i32);
        }
    }
    let svd = a.svd(true, true);
    let mut w2 = DVector::zeros(dim);
    let mut w3 = DVector::zeros(dim);
    let mut b = DVector::zeros(rows);
    for i in 0..dim {
        for (r, (_, w)) in slaved.iter().enumerate() {
            b[r] = w[i];
        }
        let sol = svd.solve(&b, 1e-13).expect("SVD solve");
        w2[i] = sol[2] / (scale * scale);
        w3[i] = sol[3] / (scale * scale * scale);
    }
    (w2, w3)
}

/// Coefficients of a vector-valued polynomial curve a ↦ g(a) of the
/// given degree, recovered exactly from `degree + 1` evaluations at
/// h, 2h, ..., (degree+1)h via a scaled Vandermonde solve. Exact for
/// polynomial g (up to roundoff); the constant term is included.
pub fn polynomial_jets(
    mut eval: impl FnMut(f64) -> DVector<f64>,
    h: f64,
    degree: usize,
) -> Vec<DVector<f64>> {
    let nodes = degree + 1;
    let mut vand = DMatrix::zeros(nodes, nodes);
    for r in 0..nodes {
        let x = (r + 1) as f64; // node (r+1)·h in units of h
        for c in 0..nodes {
            vand[(r, c)] = x.powi(c as i32);
        }
    }
    let lu = vand.lu();
    let samples: Vec<DVector<f64>> = (1..=nodes).map(|r| eval(r as f64 * h)).collect();
    let dim = samples[0].len();
    let mut out = vec![DVector::zeros(dim); nodes];
    let mut rhs = DVector::zeros(nodes);
    for i in 0..dim {
        for r in 0..nodes {
            rhs[r] = samples[r][i];
        }
        let coef = lu.solve(&rhs).expect("Vandermonde solve");
        for c in 0..nodes {
            out[c][i] = coef[c] / h.powi(c as i32);
        }
    }
    out
}

/// Action of the linearization of c ↦ D∇W at the origin, exact for
/// cubic gradients via the 4-point stencil.
fn linear_action(f: &dyn EnergyFunctional, u: &DVector<f64>, h: f64) -> DVector<f64> {
    let g = |t: f64| weighted_gradient(f, &(t * u));
    (8.0 * (g(h) - g(-h)) - (g(2.0 * h) - g(-2.0 * h))) / (12.0 * h)
}

/// The α² and α³ jets (w2, w3) of the slaved correction at a critical
/// point, extracted exactly for cubic gradients: the projected residual
/// of α·v + α²·w2 + α³·w3 is O(α⁴).
pub fn extract_jets(
    f: &dyn EnergyFunctional,
    v: &DVector<f64>,
    _cfg: &EngineConfig,
) -> Result<(DVector<f64>, DVector<f64>)> {
    assert!(
        f.gradient_is_cubic(),
        "exact jet extraction requires a cubic gradient"
    );
    let n = f.dim();
    let vv = v.dot(v);
    let h = 1e-2;
    // Bordered linear operator A = P·L + v v^T / (v.v): the columns are
    // range-projected, and restricting the domain to v-perp is enforced
    // by projecting each solve result.
    let mut a = DMatrix::zeros(n, n);
    let mut e = DVector::zeros(n);
    for k in 0..n {
        e[k] = 1.0;
        let col = project_out(v, &linear_action(f, &e, h));
        e[k] = 0.0;
        a.set_column(k, &col);
    }
    a += v * v.transpose() / vv;
    let lu = a.lu();

    let proj_grad = |c: &DVector<f64>| project_out(v, &weighted_gradient(f, c));

    // Order α²: G(α·v) is a cubic polynomial in α with zero constant
    // and (at criticality) negligible linear term.
    let jets2 = polynomial_jets(|t| proj_grad(&(t * v)), h, 3);
    let r2 = &jets2[2];
    let w2 = project_out(
        v,
        &lu.solve(&(-r2)).ok_or(RingError::Diverged {
            residual: f64::NAN,
            iterations: 0,
        })?,
    );
    // Order α³: with w2 in place the residual's α³ coefficient sources w3.
    let jets3 = polynomial_jets(|t| proj_grad(&(t * v + t * t * &w2)), h, 6);
    let r3 = &jets3[3];
    let w3 = project_out(
        v,
        &lu.solve(&(-r3)).ok_or(RingError::Diverged {
            residual: f64::NAN,
            iterations: 0,
        })?,
    );
    Ok((w2, w3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Quadratic form fixture ½·yᵀAy for Hessian assembly checks.
    struct Quadratic {
        a: DMatrix<f64>,
    }

    impl EnergyFunctional for Quadratic {
        fn dim(&self) -> usize {
            self.a.nrows()
        }
        fn energy(&self, c: &DVector<f64>) -> f64 {
            0.5 * c.dot(&(&self.a * c))
        }
        fn gradient(&self, c: &DVector<f64>) -> DVector<f64> {
            &self.a * c
        }
    }

    #[test]
    fn hessian_of_quadratic_form() {
        let a = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 3.0, 0.5, 0.0, 0.5, 1.0]);
        let f = Quadratic { a: a.clone() };
        let h = assemble_hessian(&f, &EngineConfig::default()).unwrap();
        assert!((h - a).norm() < 1e-8);
    }

    #[test]
    fn polynomial_jet_extraction_is_exact() {
        // g(a) = c0 + c1 a + c2 a² + c3 a³ recovered exactly.
        let c = [
            DVector::from_vec(vec![1.0, -2.0]),
            DVector::from_vec(vec![0.5, 3.0]),
            DVector::from_vec(vec![-4.0, 0.25]),
            DVector::from_vec(vec![2.0, -1.0]),
        ];
        let jets = polynomial_jets(
            |a| &c[0] + a * &c[1] + a * a * &c[2] + a * a * a * &c[3],
            0.1,
            3,
        );
        for k in 0..4 {
            assert!((&jets[k] - &c[k]).norm() < 1e-10, "jet {k}");
        }
    }

    #[test]
    fn normalization_conventions() {
        let v = DVector::from_vec(vec![3.0, -1.5, 0.0]);
        let n = normalize_kernel(&v, NormalizationConvention::Component(1)).unwrap();
        assert_relative_eq!(n[1], 1.0);
        assert!(normalize_kernel(&v, NormalizationConvention::Component(2)).is_err());
        let u = normalize_kernel(&v, NormalizationConvention::UnitNorm).unwrap();
        assert_relative_eq!(u.norm(), 1.0, max_relative = 1e-14);
        assert!(u[0] > 0.0);
    }

    #[test]
    fn fit_recovers_even_polynomial() {
        let samples: Vec<(f64, f64)> = (-8..=8)
            .map(|i| {
                let a = 0.01 * i as f64;
                (a, 3.0 * a * a - 5.0 * a.powi(4) + 7.0 * a.powi(6))
            })
            .collect();
        let (even, odd, rms) = fit_polynomial(&samples);
        assert_relative_eq!(even[0], 3.0, max_relative = 1e-8);
        assert_relative_eq!(even[1], -5.0, max_relative = 1e-6);
        assert_relative_eq!(even[2], 7.0, max_relative = 1e-4);
        assert!(odd.iter().all(|&c| c.abs() < 1e-6));
        assert!(rms < 1e-14);
    }
}
