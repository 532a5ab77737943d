//! Upper incomplete gamma Gamma(a, x) for complex order a and real x >= 0.
//!
//! Used to integrate Dirichlet-series tails termwise: each term
//! n^{-z} against y^{-s} reduces to Gamma(1-s, Y log n). The order is
//! complex (1 - s) while x stays real positive, so two classical schemes
//! suffice: the Kummer series for the lower function when x is small, and
//! the Legendre continued fraction otherwise.

use crate::error::{Error, Result};
use crate::specfun::gamma::log_gamma;
use crate::C;

const MAX_ITER: usize = 400;

/// Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt, complex a, real x >= 0.
pub fn upper_gamma(a: C, x: f64) -> Result<C> {
    if x < 0.0 {
        return Err(Error::Domain {
            op: "upper_gamma",
            detail: format!("x must be >= 0, got {}", x),
        });
    }
    if x == 0.0 {
        if a.re <= 0.0 {
            return Err(Error::Domain {
                op: "upper_gamma",
                detail: format!("Gamma(a, 0) requires Re a > 0, got a = {}", a),
            });
        }
        return Ok(log_gamma(a)?.exp());
    }
    if x >= a.norm() + 2.0 {
        continued_fraction(a, x)
    } else {
        // Gamma(a,x) = Gamma(a) - gamma(a,x); the series route is only taken
        // for x < |a| + 2 where the subtraction is benign.
        let g = log_gamma(a)?.exp();
        Ok(g - lower_series(a, x)?)
    }
}

/// Kummer series for the lower incomplete gamma:
/// gamma(a,x) = x^a e^{-x} sum_k x^k / (a (a+1) ... (a+k)).
fn lower_series(a: C, x: f64) -> Result<C> {
    let mut den = a;
    let mut term = 1.0 / a;
    let mut acc = term;
    for _ in 0..MAX_ITER {
        den += 1.0;
        term *= x / den;
        acc += term;
        if term.norm() < 1e-17 * acc.norm() {
            let prefactor = (a * x.ln() - x).exp();
            return Ok(prefactor * acc);
        }
    }
    Err(Error::Convergence {
        op: "upper_gamma",
        detail: format!("lower series stalled at a = {}, x = {}", a, x),
    })
}

/// Legendre continued fraction for Gamma(a, x), modified Lentz.
fn continued_fraction(a: C, x: f64) -> Result<C> {
    let tiny = 1e-300;
    let mut b = C::new(x, 0.0) + 1.0 - a;
    let mut c = C::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (C::new(i as f64, 0.0) - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < tiny {
            d = C::new(tiny, 0.0);
        }
        c = b + an / c;
        if c.norm() < tiny {
            c = C::new(tiny, 0.0);
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            let prefactor = (a * x.ln() - x).exp();
            return Ok(prefactor * h);
        }
    }
    Err(Error::Convergence {
        op: "upper_gamma",
        detail: format!("continued fraction stalled at a = {}, x = {}", a, x),
    })
}
