//! Self-contained special-function substrate: exact Bernoulli/Euler tables,
//! gamma-family functions, Hurwitz zeta with analytic continuation in the
//! exponent, Riemann zeta, Dirichlet beta and the upper incomplete gamma.
//!
//! Everything here is a pure function of its arguments; the rational tables
//! are generated once and shared immutably, so all entry points are safe to
//! call concurrently.

pub mod gamma;
pub mod hurwitz;
pub mod incgamma;
pub mod rationals;

pub use gamma::{digamma, gamma, log_gamma, polygamma};
pub use hurwitz::{
    dirichlet_beta, dirichlet_beta_sderiv, hurwitz_zeta, hurwitz_zeta_markers,
    hurwitz_zeta_minus_pole, hurwitz_zeta_minus_pole_sderiv, hurwitz_zeta_sderiv, riemann_zeta,
    riemann_zeta_sderiv, HurwitzMarkers,
};
pub use incgamma::upper_gamma;
pub use rationals::{
    bernoulli_f64, bernoulli_polynomial, binomial_f64, euler_f64, euler_number, factorial_f64,
    tables, RationalSpecialNumbers,
};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// log(2 pi).
pub const LOG_2PI: f64 = 1.837_877_066_409_345_5;
