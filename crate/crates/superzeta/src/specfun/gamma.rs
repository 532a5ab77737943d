//! Gamma-family functions for complex arguments: log-gamma (canonical
//! branch), gamma, digamma and polygamma.
//!
//! Log-gamma is computed by the Stirling series after an upward recurrence
//! shift; this yields the canonical branch, continuous on the plane cut along
//! the negative real axis and real on (0, inf). Arguments left of the
//! critical strip go through the reflection formula with a branch-stable
//! log-sin.

use crate::error::{Error, Result};
use crate::C;
use std::f64::consts::PI;

const LOG_2PI: f64 = 1.837_877_066_409_345_5;

/// B_{2j} / (2j(2j-1)) for j = 1..8, the Stirling series coefficients.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn is_nonpositive_integer(z: C) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Stirling series for log Gamma, valid for Re z >= 10 (after shifting).
fn log_gamma_stirling(z: C) -> C {
    let mut acc = (z - 0.5) * z.ln() - z + 0.5 * LOG_2PI;
    // descending inverse powers; underflow is benign at huge |z|
    let inv_z2 = 1.0 / (z * z);
    let mut ip = 1.0 / z;
    for c in STIRLING {
        acc += c * ip;
        ip *= inv_z2;
    }
    acc
}

/// Principal (canonical) log-gamma: continuous on C minus (-inf, 0],
/// real on the positive real axis.
pub fn log_gamma(z: C) -> Result<C> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { z: format!("{}", z) });
    }
    if z.re >= 0.5 {
        // Shift until the Stirling series is accurate.
        let shift = (10.0 - z.re).max(0.0).ceil() as usize;
        let mut log_prod = C::new(0.0, 0.0);
        for j in 0..shift {
            log_prod += (z + j as f64).ln();
        }
        Ok(log_gamma_stirling(z + shift as f64) - log_prod)
    } else {
        // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1-z),
        // with log sin written to stay branch-stable for large |Im z|.
        Ok(C::new(PI.ln(), 0.0) - log_sin_pi(z) - log_gamma(C::new(1.0, 0.0) - z)?)
    }
}

/// log sin(pi z), continuous off the real axis and matching the principal
/// value near the real axis away from integers.
fn log_sin_pi(z: C) -> C {
    if z.im.abs() < 1.0 {
        (C::new(PI, 0.0) * z).sin().ln()
    } else if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (i/2) (1 - e^{2 pi i z})
        let e = (C::new(0.0, 2.0 * PI) * z).exp();
        C::new(0.0, -PI) * z + (C::new(1.0, 0.0) - e).ln() + C::new(-(2.0f64.ln()), PI / 2.0)
    } else {
        let conj = log_sin_pi(z.conj());
        conj.conj()
    }
}

/// Gamma function (via exp of log-gamma; branch-insensitive).
pub fn gamma(z: C) -> Result<C> {
    Ok(log_gamma(z)?.exp())
}

/// Digamma psi(z) = Gamma'(z)/Gamma(z), complex argument.
pub fn digamma(z: C) -> Result<C> {
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { z: format!("{}", z) });
    }
    if z.re < 0.5 && z.im.abs() < 8.0 {
        // psi(z) = psi(1-z) - pi cot(pi z); only near the real axis, where
        // the trigonometric factors cannot overflow
        let pz = C::new(PI, 0.0) * z;
        return Ok(digamma(C::new(1.0, 0.0) - z)? - PI * pz.cos() / pz.sin());
    }
    let shift = if z.norm() >= 12.0 && z.re >= 0.0 {
        0
    } else {
        (12.0 - z.re).max(0.0).ceil() as usize
    };
    let mut acc = C::new(0.0, 0.0);
    for j in 0..shift {
        acc -= 1.0 / (z + j as f64);
    }
    let w = z + shift as f64;
    // psi(w) ~ ln w - 1/(2w) - sum B_{2j} / (2j w^{2j})
    acc += w.ln() - 0.5 / w;
    // descending inverse powers; underflow past ~1e-308 is benign
    let inv_w2 = 1.0 / (w * w);
    let mut ip = inv_w2;
    const PSI_COEFF: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    for c in PSI_COEFF {
        acc -= c * ip;
        ip *= inv_w2;
    }
    Ok(acc)
}

/// Polygamma psi^{(m)}(z); m = 0 is digamma. For m >= 1 uses
/// psi^{(m)}(z) = (-1)^{m+1} m! zeta(m+1, z) after shifting Re z above 0.5.
pub fn polygamma(m: u32, z: C) -> Result<C> {
    if m == 0 {
        return digamma(z);
    }
    if is_nonpositive_integer(z) {
        return Err(Error::GammaPole { z: format!("{}", z) });
    }
    if z.re < 0.5 {
        // psi^{(m)}(z) = psi^{(m)}(z+1) - (-1)^m m! z^{-m-1}
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let fact = super::rationals::factorial_f64(m as usize);
        return Ok(polygamma(m, z + 1.0)? - sign * fact * z.powi(-(m as i32) - 1));
    }
    let fact = super::rationals::factorial_f64(m as usize);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let hz = super::hurwitz::hurwitz_zeta(C::new(m as f64 + 1.0, 0.0), z)?;
    Ok(-sign * fact * hz)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn log_gamma_special_points() {
        // Gamma(1/2) = sqrt(pi)
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
        // Gamma(1) = 1
        let v = log_gamma(c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        // Gamma(5) = 24
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_complex_reference() {
        // Gamma(4 + 10i), reference value from an independent Spouge-type
        // implementation (same value as the published test point).
        let g = gamma(c(4.0, 10.0)).unwrap();
        let want = c(0.0007715342942399662, -0.0010190827990417);
        assert!((g - want).norm() < 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn log_gamma_recurrence_and_reflection() {
        // log Gamma(z+1) = log Gamma(z) + log z on both half-planes.
        for &z in &[c(0.3, 0.7), c(-2.3, 1.1), c(-4.5, -0.2), c(7.0, 3.0)] {
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-12, "z = {}", z);
        }
    }

    #[test]
    fn reflection_branch_is_canonical() {
        // The reflected region must join the recurrence-defined canonical
        // branch exactly (no 2 pi i offsets), across the Re = 1/2 seam and
        // for genuinely negative real parts.
        for &z in &[c(0.4999, 15.0), c(0.25, 7.0), c(-1.3, 2.0), c(0.3, 0.8), c(0.25, -7.0)] {
            let via_recurrence = log_gamma(z + 2.0).unwrap() - z.ln() - (z + 1.0).ln();
            let direct = log_gamma(z).unwrap();
            assert!(
                (direct - via_recurrence).norm() < 1e-11,
                "z = {}: {} vs {}",
                z,
                direct,
                via_recurrence
            );
        }
        // exp(log Gamma) reproduces Gamma computed through the recurrence
        let z = c(-2.3, 1.1);
        let g_up = log_gamma(z + 4.0).unwrap().exp();
        let product = z * (z + 1.0) * (z + 2.0) * (z + 3.0);
        let g = log_gamma(z).unwrap().exp();
        assert!((g - g_up / product).norm() < 1e-12 * g.norm());
    }

    #[test]
    fn gamma_pole_is_error() {
        assert!(log_gamma(c(0.0, 0.0)).is_err());
        assert!(log_gamma(c(-3.0, 0.0)).is_err());
        assert!(digamma(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn digamma_values() {
        // psi(1) = -gamma; oracle: gamma from the harmonic-sum limit
        // H_N - ln N - 1/(2N) + 1/(12 N^2).
        let n = 1_000_000u64;
        let mut h = 0.0f64;
        for k in (1..=n).rev() {
            h += 1.0 / k as f64;
        }
        let gamma_oracle = h - (n as f64).ln() - 0.5 / n as f64 + 1.0 / (12.0 * (n as f64).powi(2));
        assert!((gamma_oracle - EULER_GAMMA).abs() < 1e-13);
        let v = digamma(c(1.0, 0.0)).unwrap();
        assert!((v.re + gamma_oracle).abs() < 1e-13);
        // psi(1/4) = -gamma - 3 ln 2 - pi/2
        let v = digamma(c(0.25, 0.0)).unwrap();
        let want = -EULER_GAMMA - 3.0 * 2.0f64.ln() - PI / 2.0;
        assert!((v.re - want).abs() < 1e-13);
    }

    #[test]
    fn polygamma_matches_series() {
        // psi'(1) = zeta(2) = pi^2/6 (direct-summation oracle with tail).
        let mut s = 0.0;
        let kmax = 200_000u64;
        for k in (1..=kmax).rev() {
            s += 1.0 / (k as f64 * k as f64);
        }
        s += 1.0 / kmax as f64 - 0.5 / (kmax as f64).powi(2); // Euler-Maclaurin tail
        let v = polygamma(1, c(1.0, 0.0)).unwrap();
        assert!((v.re - s).abs() < 1e-12);
        // Downward recurrence consistency at a negative half-integer.
        let lhs = polygamma(2, c(-0.5, 0.0)).unwrap();
        let rhs = polygamma(2, c(0.5, 0.0)).unwrap() - 2.0 / (-0.5f64).powi(3);
        assert!((lhs - rhs).norm() < 1e-10);
    }
}
