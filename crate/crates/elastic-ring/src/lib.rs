//! Bifurcation analysis of a pressurized extensible elastic ring.
//!
//! The circular equilibrium of an extensible elastic ring under external
//! pressure loses stability to a two-lobed mode. Near that threshold the
//! energy landscape reduces, by a numerical splitting-lemma (Lyapunov–
//! Schmidt) construction, to a sextic polynomial in the buckling
//! amplitude α:
//!
//!   g(α) = a2·α² + a4·α⁴ + a6·α⁶,
//!
//! whose coefficients are available both in closed form ([`landau`]) and
//! from a generic numerical reduction engine ([`engine`], [`ring`]).
//! The sign of a4 at the stability boundary decides between a
//! second-order (continuous) and a first-order (snapping) transition,
//! with a tricritical point separating the regimes. Supporting modules
//! provide post-buckling shapes and enclosed areas ([`shapes`]), an
//! independent nonlinear equilibrium solver ([`bvp`]) for
//! cross-validation, and standalone benchmark reductions ([`examples`]).
//!
//! Parameters are the dimensionless pair μ1 = pL/(2πb) (pressure against
//! stretching) and μ2 = bL²/k (stretching against bending); see
//! [`params`].

pub mod bvp;
pub mod engine;
pub mod error;
pub mod examples;
pub mod format;
pub mod fourier;
pub mod landau;
pub mod params;
pub mod ring;
pub mod shapes;
pub mod verify;

pub use error::{Result, RingError};
pub use landau::LandauPolynomial;
pub use params::ModelParams;
