//! Property-based checks of structural invariants: symmetry, scaling,
//! formatting determinism, and discretization convergence.

use proptest::prelude::*;

use elastic_ring::format::{round12, sig12};
use elastic_ring::landau::{self, CoeffSource, LandauPolynomial, DETERMINACY_TOL};
use elastic_ring::params::ModelParams;
use elastic_ring::ring::ring_landau;
use elastic_ring::shapes;

proptest! {
    /// a2 vanishes identically on the n = 2 critical curve.
    #[test]
    fn a2_vanishes_on_critical_curve(mu1 in 0.01f64..2.9) {
        let mu2 = landau::critical_mu2(2, mu1).unwrap();
        let a2 = landau::coeff_a2(mu1, mu2);
        let scale = landau::coeff_a2_scale(mu1, mu2);
        prop_assert!(a2.abs() < DETERMINACY_TOL * scale, "a2 = {a2}, scale = {scale}");
    }

    /// The critical pressure curve decreases monotonically in mu1.
    #[test]
    fn critical_curve_is_monotonic(mu1 in 0.01f64..2.8, dm in 1e-3f64..0.1) {
        let lo = landau::critical_mu2(2, mu1).unwrap();
        let hi = landau::critical_mu2(2, (mu1 + dm).min(2.95)).unwrap();
        prop_assert!(hi < lo);
    }

    /// Scaling g by a positive constant moves the minimum value but not
    /// its location.
    #[test]
    fn minimizer_is_scale_invariant(
        a2 in -10.0f64..10.0,
        a4 in -10.0f64..10.0,
        a6 in 0.1f64..10.0,
        lambda in 0.1f64..100.0,
    ) {
        let poly = LandauPolynomial { a2, a4, a6, determinacy: 2, source: CoeffSource::ClosedForm };
        let scaled = LandauPolynomial {
            a2: lambda * a2,
            a4: lambda * a4,
            a6: lambda * a6,
            determinacy: 2,
            source: CoeffSource::ClosedForm,
        };
        let (alpha, g) = landau::minimize_g(&poly).unwrap();
        let (alpha_s, g_s) = landau::minimize_g(&scaled).unwrap();
        prop_assert!((alpha - alpha_s).abs() <= 1e-9 * (1.0 + alpha.abs()));
        prop_assert!((lambda * g - g_s).abs() <= 1e-9 * (1.0 + g.abs() * lambda));
    }

    /// The reduced potential is even in the buckling amplitude.
    #[test]
    fn reduced_potential_is_even(
        mu1 in 0.05f64..2.5,
        dmu2 in -0.2f64..0.2,
        alpha in 0.0f64..0.2,
    ) {
        let mu2 = landau::critical_mu2(2, mu1).unwrap() * (1.0 + dmu2);
        let poly = landau::closed_form(mu1, mu2);
        prop_assert_eq!(poly.evaluate(alpha), poly.evaluate(-alpha));
    }

    /// Formatting round trip: rounding to 12 significant digits is
    /// idempotent and printing is stable.
    #[test]
    fn formatting_round_trips(x in -1e12f64..1e12) {
        let r = round12(x);
        prop_assert_eq!(round12(r), r);
        prop_assert_eq!(sig12(r), sig12(x));
        prop_assert!((r - x).abs() <= 1e-11 * x.abs());
    }

    /// Dimensionless parameters reconstructed from dimensional inputs
    /// match the direct constructor.
    #[test]
    fn params_round_trip(
        k in 0.1f64..10.0,
        b in 0.1f64..10.0,
        length in 0.5f64..4.0,
        p in 0.01f64..10.0,
    ) {
        let params = ModelParams::from_dimensional(k, b, length, p).unwrap();
        let direct = ModelParams::new(params.mu1, params.mu2).unwrap();
        prop_assert!((params.mu1 - direct.mu1).abs() < 1e-14 * (1.0 + params.mu1));
        prop_assert!((params.mu1 - p * length / (2.0 * std::f64::consts::PI * b)).abs() < 1e-12);
        prop_assert!((params.mu2 - b * length * length / k).abs() < 1e-12 * params.mu2);
    }

    /// Reconstructed buckled profiles close up and enclose positive
    /// area throughout the validated amplitude window.
    #[test]
    fn shapes_are_closed_curves(mu1 in 0.05f64..2.0, alpha in -0.1f64..0.1) {
        let state = shapes::asymptotic_state(mu1, alpha).unwrap();
        let profile = shapes::to_cartesian(&state, 256).unwrap();
        prop_assert!(profile.closed);
        prop_assert!(profile.area > 0.0);
    }
}

/// Doubling the Fourier resolution does not move the fitted
/// coefficients: the N = 12 default is already converged.
#[test]
fn mesh_convergence() {
    for &(mu1, mu2) in &[(0.5, 500.0), (1.0, 320.0)] {
        let params = ModelParams::new(mu1, mu2).unwrap();
        let coarse = ring_landau(&params, 12).unwrap().polynomial;
        let fine = ring_landau(&params, 24).unwrap().polynomial;
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
        assert!(rel(coarse.a2, fine.a2) < 1e-6, "a2 moved at ({mu1}, {mu2})");
        assert!(rel(coarse.a4, fine.a4) < 1e-6, "a4 moved at ({mu1}, {mu2})");
        assert!(rel(coarse.a6, fine.a6) < 1e-4, "a6 moved at ({mu1}, {mu2})");
    }
}
