//! Machine-checked identity battery over the three families: the reflection
//! and resummation identities of the first family, the interchange relations
//! between families, the mutually inverse binomial transforms, the fixed
//! finite-part anomaly at the pole, and the residues of the continuation
//! integral. Failures are reported, not thrown.

use crate::error::Result;
use crate::families::{
    z1_closed, z1_direct, z1_integral, z1_mellin, z3_eval, Z1Marker,
};
use crate::primary::PrimaryFunction;
use crate::specfun::binomial_f64;
use crate::zeros::{zero_sum_tail, ZeroCache};
use crate::{c, C};
use std::f64::consts::PI;

/// One identity probe: the measured deviation against its tolerance.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, deviation: f64, tolerance: f64) -> Self {
        IdentityCheck {
            name: name.to_string(),
            deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

/// Battery outcome for one primary function.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub primary_id: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks.iter().map(|c| c.deviation).fold(0.0, f64::max)
    }
}

/// Binomial transform from first-family values at x to second-family values
/// at v = (x - 1/2)^2: z2(m, v) = sum_l C(m+l-1, m-1) (2x-1)^{-m-l} z1(m-l, x).
pub fn z1_to_z2_values(z1_values: &[C], x: C) -> Vec<C> {
    let two_x_m1 = 2.0 * x - 1.0;
    let m_max = z1_values.len();
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let mut acc = c(0.0, 0.0);
        for l in 0..m {
            acc += binomial_f64(m + l - 1, m - 1)
                * two_x_m1.powi(-((m + l) as i32))
                * z1_values[m - l - 1];
        }
        out.push(acc);
    }
    out
}

/// Inverse transform: z1(n, x)/n = sum_{0 <= l <= n/2} (-1)^l C(n-l, l)
/// (2x-1)^{n-2l} z2(n-l, v)/(n-l).
pub fn z2_to_z1_values(z2_values: &[C], x: C) -> Vec<C> {
    let two_x_m1 = 2.0 * x - 1.0;
    let n_max = z2_values.len();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut acc = c(0.0, 0.0);
        let mut l = 0usize;
        while 2 * l <= n {
            if n - l >= 1 {
                let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign
                    * binomial_f64(n - l, l)
                    * two_x_m1.powi((n - 2 * l) as i32)
                    * z2_values[n - l - 1]
                    / (n - l) as f64;
            }
            l += 1;
        }
        out.push(acc * n as f64);
    }
    out
}

fn push(checks: &mut Vec<IdentityCheck>, name: &str, dev: f64, tol: f64) {
    checks.push(IdentityCheck::new(name, dev, tol));
}

fn push_err(checks: &mut Vec<IdentityCheck>, name: &str, err: impl std::fmt::Display) {
    checks.push(IdentityCheck {
        name: format!("{} [evaluation failed: {}]", name, err),
        deviation: f64::INFINITY,
        tolerance: 0.0,
        pass: false,
    });
}

/// Run the identity battery for one primary function over its zero cache.
pub fn identity_suite(p: &PrimaryFunction, cache: &ZeroCache) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    let tol = 1e-6;

    // reflection symmetry of the integer values: z1(n, x) = (-1)^n z1(n, 1-x)
    for n in 2..=3u32 {
        let x = c(2.2, 0.0);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        match (
            z1_closed(p, Z1Marker::PlusN(n), x),
            z1_closed(p, Z1Marker::PlusN(n), c(1.0, 0.0) - x),
        ) {
            (Ok(a), Ok(b)) => push(
                &mut checks,
                &format!("reflection n={}", n),
                (a.value - sign * b.value).norm(),
                tol,
            ),
            (Err(e), _) | (_, Err(e)) => push_err(&mut checks, "reflection", e),
        }
    }

    // odd-order resummation at k = 1:
    // z1(1,x) = -1/2 sum_{l >= 2} (2x-1)^{l-1} z1(l, x)
    {
        let x = c(0.6, 0.0);
        let mut rhs = c(0.0, 0.0);
        let mut failed = false;
        for l in 2..=40u32 {
            match z1_closed(p, Z1Marker::PlusN(l), x) {
                Ok(v) => rhs += (2.0 * x - 1.0).powi(l as i32 - 1) * v.value,
                Err(e) => {
                    push_err(&mut checks, "odd resummation k=1", e);
                    failed = true;
                    break;
                }
            }
        }
        if !failed {
            let lhs = z1_closed(p, Z1Marker::PlusN(1), x)?;
            push(
                &mut checks,
                "odd resummation k=1, x=0.6",
                (lhs.value + 0.5 * rhs).norm(),
                tol,
            );
        }
    }

    // interchange with the symmetric family at an even integer exponent:
    // sum tau^{-4} (direct) = (2 cos 2 pi)^{-1} z1(4, 1/2) (closed)
    {
        let mut direct = c(0.0, 0.0);
        for tau in cache.ordinates() {
            direct += c(tau.powi(-4), 0.0);
        }
        let (tail, _) = zero_sum_tail(p, cache, |tau| c(tau.powi(-4), 0.0))?;
        direct += tail;
        let closed = 0.5 * z1_closed(p, Z1Marker::PlusN(4), c(0.5, 0.0))?.value;
        push(
            &mut checks,
            "interchange sigma=2",
            (direct - closed).norm(),
            tol,
        );
    }

    // one-sided binary relations: i^m z3(m/2, it) + i^-m z3(m/2, -it)
    // equals z1(m, 1/2 + t)
    for (m, t) in [(2u32, 0.3f64), (3, 0.3)] {
        let ipow = c(0.0, 1.0).powi(m as i32);
        let lhs = match (
            z3_eval(p, cache, c(0.5 * m as f64, 0.0), c(0.0, t)),
            z3_eval(p, cache, c(0.5 * m as f64, 0.0), c(0.0, -t)),
        ) {
            (Ok(a), Ok(b)) => ipow * a.value + b.value / ipow,
            (Err(e), _) | (_, Err(e)) => {
                push_err(&mut checks, &format!("one-sided binary m={}", m), e);
                continue;
            }
        };
        let rhs = z1_closed(p, Z1Marker::PlusN(m), c(0.5 + t, 0.0))?;
        push(
            &mut checks,
            &format!("one-sided binary m={}, t={}", m, t),
            (lhs - rhs.value).norm(),
            tol,
        );
    }

    // the same interchange at a non-integer exponent, s = 0.7, t = 0.4
    {
        let s = c(0.7, 0.0);
        let t = 0.4;
        let half_s = 0.5 * s;
        let rot = (c(0.0, PI / 2.0) * s).exp();
        let lhs = match (
            z3_eval(p, cache, half_s, c(0.0, t)),
            z3_eval(p, cache, half_s, c(0.0, -t)),
        ) {
            (Ok(a), Ok(b)) => rot * a.value + b.value / rot,
            (Err(e), _) | (_, Err(e)) => {
                push_err(&mut checks, "one-sided interchange s=0.7", e);
                c(f64::NAN, 0.0)
            }
        };
        if lhs.re.is_finite() {
            let rhs = z1_integral(p, s, c(0.5 + t, 0.0))?;
            push(
                &mut checks,
                "one-sided interchange s=0.7, t=0.4",
                (lhs - rhs.value).norm(),
                tol,
            );
        }
    }

    // mutually inverse binomial transforms round-trip at x = 2
    {
        let x = c(2.0, 0.0);
        let mut z1_vals = Vec::new();
        for n in 1..=4u32 {
            z1_vals.push(z1_closed(p, Z1Marker::PlusN(n), x)?.value);
        }
        let z2_vals = z1_to_z2_values(&z1_vals, x);
        let back = z2_to_z1_values(&z2_vals, x);
        let dev = z1_vals
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        push(&mut checks, "binomial transforms round-trip", dev, 1e-10);
    }

    // fixed anomaly: z1(1,x) - FP_{s=1} z1(s,x) = b1
    {
        let x = c(2.0, 0.0);
        let fp = {
            // symmetric pole-cancelling average, Richardson-refined
            let avg = |eps: f64| -> Result<C> {
                let above = z1_mellin(p, c(1.0 + eps, 0.0), x)?.value;
                let below = z1_integral(p, c(1.0 - eps, 0.0), x)?.value;
                Ok(0.5 * (above + below))
            };
            let e = 2f64.powi(-7);
            let f1 = avg(e)?;
            let f2 = avg(e / 2.0)?;
            (4.0 * f2 - f1) / 3.0
        };
        let z1_at_1 = z1_closed(p, Z1Marker::PlusN(1), x)?.value;
        let anomaly = z1_at_1 - fp;
        push(
            &mut checks,
            "finite-part anomaly = b1",
            (anomaly - p.stirling().b1).norm(),
            tol,
        );
    }

    // odd vanishing at the symmetry center, rebuilt from parts
    {
        let numeric = -p.log_xi_derivatives(c(0.5, 0.0), 3)? / 2.0;
        push(&mut checks, "odd value vanishes (n=3)", numeric.norm(), tol);
        let direct = z1_direct(p, cache, c(3.0, 0.0), c(0.5, 0.0))?;
        push(
            &mut checks,
            "odd value vanishes (direct sum)",
            direct.value.norm(),
            direct.err_est + tol,
        );
    }

    // residues of the continuation integral at s = 1, 2:
    // (-1)^n lim [z1 + Z - q (x-1)^{-s}] = -(log |L|)^{(n)}(x) / (n-1)!
    {
        let x = c(2.0, 0.0);
        let bracket = |s: C| -> Result<C> {
            let z1 = if s.re < 1.0 {
                z1_integral(p, s, x)?.value
            } else {
                z1_mellin(p, s, x)?.value
            };
            let q = p.q() as f64;
            Ok(z1 + p.shadow_zeta(s, x)? - q * (x - 1.0).powc(-s))
        };
        for n in 1..=2u32 {
            // one-sided third-order Richardson toward the integer
            let e = 2f64.powi(-9);
            let g1 = bracket(c(n as f64 - e, 0.0))?;
            let g2 = bracket(c(n as f64 - 2.0 * e, 0.0))?;
            let g4 = bracket(c(n as f64 - 4.0 * e, 0.0))?;
            let limit = (8.0 * g1 - 6.0 * g2 + g4) / 3.0;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let residue = sign * limit;
            let want = -p.log_l_derivatives(x, n)?
                / crate::specfun::factorial_f64(n as usize - 1);
            push(
                &mut checks,
                &format!("integral residue at s={}", n),
                (residue - want).norm(),
                tol,
            );
        }
    }

    // cross-method battery: closed vs direct at integer exponents
    for n in 2..=4u32 {
        for &x in &[c(1.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)] {
            let direct = z1_direct(p, cache, c(n as f64, 0.0), x)?;
            let closed = z1_closed(p, Z1Marker::PlusN(n), x)?;
            push(
                &mut checks,
                &format!("cross-method s={} x={}", n, x.re),
                (direct.value - closed.value).norm(),
                direct.err_est + 1e-8,
            );
        }
    }

    Ok(IdentityReport {
        primary_id: p.id().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primary::{build_primary, PrimarySpec};
    use crate::zeros::locate_zeros;

    #[test]
    fn transforms_are_mutually_inverse_on_synthetic_data() {
        // pure algebra: any vector round-trips through the two transforms
        let x = c(1.7, 0.0);
        let vals = vec![c(0.3, 0.1), c(-1.2, 0.0), c(0.05, -0.4), c(2.0, 1.0)];
        let back = z2_to_z1_values(&z1_to_z2_values(&vals, x), x);
        for (a, b) in vals.iter().zip(&back) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn battery_passes_for_the_rationals() {
        let p = build_primary(PrimarySpec::Riemann).unwrap();
        let cache = locate_zeros(&p, 48.0).unwrap();
        let report = identity_suite(&p, &cache).unwrap();
        for chk in &report.checks {
            assert!(
                chk.pass,
                "{}: deviation {:.3e} > {:.3e}",
                chk.name, chk.deviation, chk.tolerance
            );
        }
    }
}
