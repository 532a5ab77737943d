//! Hurwitz zeta zeta(s, w) = sum_{k>=0} (k+w)^{-s} with full analytic
//! continuation in s, via Euler-Maclaurin summation.
//!
//! The shift N and correction order M are chosen from |s| so that the
//! truncated asymptotic tail stays below ~1e-14 relative; this covers
//! |s| <= 50, 0 < w <= 10 at the 1e-12 contract and degrades gracefully for
//! the larger |Im s| used by zero location.
//!
//! Besides the plain evaluator (which signals the pole s = 1 as an error),
//! a pole-subtracted variant zeta(s,w) - 1/(s-1) is provided. It is entire
//! in s, so combinations whose poles cancel (Dirichlet L-series, the beta
//! function) can be evaluated right through s = 1 without cancellation.

use crate::error::{Error, Result};
use crate::specfun::rationals;
use crate::C;

const LOG_2PI: f64 = 1.837_877_066_409_345_5;

fn em_orders(s: C) -> (usize, f64) {
    if s.re >= -0.5 {
        let m = 14usize;
        (m, 18.0f64.max(0.55 * (s.norm() + 2.0 * m as f64 + 4.0)))
    } else {
        // For Re s < 0 the direct-sum terms grow, so a large shift loses
        // precision to cancellation; trade a longer correction series for a
        // smaller shift.
        let m = 22usize;
        (m, 18.0f64.max(0.32 * (s.norm() + 2.0 * m as f64 + 4.0)))
    }
}

/// Exact value at nonpositive integer s: zeta(-n, w) = -B_{n+1}(w)/(n+1).
fn negative_integer_value(n: usize, w: C) -> Option<C> {
    if n + 1 > rationals::MAX_INDEX {
        return None;
    }
    let b = rationals::bernoulli_polynomial(n + 1, w).ok()?;
    Some(-b / (n as f64 + 1.0))
}

fn as_nonpositive_integer(s: C) -> Option<usize> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        Some((-s.re) as usize)
    } else {
        None
    }
}

/// phi(u) = (e^u - 1)/u, stable near u = 0.
fn phi(u: C) -> C {
    if u.norm() < 0.25 {
        let mut acc = C::new(1.0, 0.0);
        let mut term = C::new(1.0, 0.0);
        for k in 2..14 {
            term *= u / k as f64;
            acc += term;
        }
        acc
    } else {
        (u.exp() - 1.0) / u
    }
}

/// phi'(u) = (e^u (u-1) + 1)/u^2, stable near u = 0.
fn phi_deriv(u: C) -> C {
    if u.norm() < 0.25 {
        // sum_{k>=0} (k+1) u^k / (k+2)!
        let mut acc = C::new(0.5, 0.0);
        let mut upow = C::new(1.0, 0.0);
        let mut fact = 2.0f64;
        for k in 1..14 {
            upow *= u;
            fact *= (k + 2) as f64;
            acc += (k + 1) as f64 * upow / fact;
        }
        acc
    } else {
        (u.exp() * (u - 1.0) + 1.0) / (u * u)
    }
}

struct EmEval {
    value: C,
    sderiv: C,
}

/// Euler-Maclaurin core. `minus_pole` replaces the term (w+N)^{1-s}/(s-1)
/// by ((w+N)^{1-s} - 1)/(s-1), i.e. computes zeta(s,w) - 1/(s-1).
fn em_core(s: C, w: C, minus_pole: bool, want_deriv: bool) -> EmEval {
    let (m_order, target) = em_orders(s);
    let n = if w.norm() >= target && w.re > 0.5 {
        0usize
    } else {
        ((target - w.re).max(0.0)).ceil() as usize
    };

    let mut value = C::new(0.0, 0.0);
    let mut deriv = C::new(0.0, 0.0);
    for k in 0..n {
        let base = w + k as f64;
        let lb = base.ln();
        let t = (-s * lb).exp();
        value += t;
        if want_deriv {
            deriv -= lb * t;
        }
    }

    let p = w + n as f64;
    let lp = p.ln();
    let p_neg_s = (-s * lp).exp();

    if minus_pole {
        let u = (C::new(1.0, 0.0) - s) * lp;
        value += -lp * phi(u);
        if want_deriv {
            deriv += lp * lp * phi_deriv(u);
        }
    } else {
        let p1 = p_neg_s * p; // (w+N)^{1-s}
        let sm1 = s - 1.0;
        value += p1 / sm1;
        if want_deriv {
            deriv += -lp * p1 / sm1 - p1 / (sm1 * sm1);
        }
    }

    value += 0.5 * p_neg_s;
    if want_deriv {
        deriv -= 0.5 * lp * p_neg_s;
    }

    // Correction terms B_{2j}/(2j)! * s(s+1)...(s+2j-2) * (w+N)^{-s-2j+1}.
    let tables = rationals::tables();
    let inv_p2 = 1.0 / (p * p);
    let mut rising = s; // (s)_1
    let mut rising_d = C::new(1.0, 0.0); // d/ds (s)_1
    let mut p_pow = p_neg_s / p; // (w+N)^{-s-1}
    let mut idx = 1.0; // next factor is (s + idx)
    for j in 1..=m_order {
        let b2j = tables.bernoulli_f64(2 * j).unwrap_or(f64::NAN);
        let c = b2j / rationals::factorial_f64(2 * j);
        let term = c * rising * p_pow; // p_pow = (w+N)^{-s-2j+1}
        value += term;
        if want_deriv {
            deriv += c * rising_d * p_pow - lp * term;
        }
        // extend the rising factorial by two factors for the next j
        if j < m_order {
            for _ in 0..2 {
                let f = s + idx;
                rising_d = rising_d * f + rising;
                rising *= f;
                idx += 1.0;
            }
            p_pow *= inv_p2;
        }
    }

    EmEval {
        value,
        sderiv: deriv,
    }
}

fn check_w(op: &'static str, w: C) -> Result<()> {
    if !(w.re > 0.0) {
        return Err(Error::Domain {
            op,
            detail: format!("Re w must be positive, got w = {}", w),
        });
    }
    Ok(())
}

/// Hurwitz zeta, meromorphic continuation in s. The pole s = 1 is signaled
/// as a distinct error.
pub fn hurwitz_zeta(s: C, w: C) -> Result<C> {
    check_w("hurwitz_zeta", w)?;
    if s == C::new(1.0, 0.0) {
        return Err(Error::PoleAtOne { op: "hurwitz_zeta" });
    }
    if let Some(n) = as_nonpositive_integer(s) {
        if let Some(v) = negative_integer_value(n, w) {
            return Ok(v);
        }
    }
    Ok(em_core(s, w, false, false).value)
}

/// d/ds of the Hurwitz zeta at (s, w).
pub fn hurwitz_zeta_sderiv(s: C, w: C) -> Result<C> {
    check_w("hurwitz_zeta_sderiv", w)?;
    if s == C::new(1.0, 0.0) {
        return Err(Error::PoleAtOne {
            op: "hurwitz_zeta_sderiv",
        });
    }
    Ok(em_core(s, w, false, true).sderiv)
}

/// zeta(s, w) - 1/(s-1): entire in s. At s = 1 this equals -psi(w).
pub fn hurwitz_zeta_minus_pole(s: C, w: C) -> Result<C> {
    check_w("hurwitz_zeta_minus_pole", w)?;
    if let Some(n) = as_nonpositive_integer(s) {
        if let Some(v) = negative_integer_value(n, w) {
            return Ok(v + 1.0 / (n as f64 + 1.0));
        }
    }
    Ok(em_core(s, w, true, false).value)
}

/// d/ds of zeta(s, w) - 1/(s-1).
pub fn hurwitz_zeta_minus_pole_sderiv(s: C, w: C) -> Result<C> {
    check_w("hurwitz_zeta_minus_pole_sderiv", w)?;
    Ok(em_core(s, w, true, true).sderiv)
}

/// The two distinguished markers of the Hurwitz zeta in the exponent
/// variable: the finite part at the pole s = 1 and the s-derivative at 0.
#[derive(Debug, Clone, Copy)]
pub struct HurwitzMarkers {
    /// FP_{s=1} zeta(s, w) = -Gamma'(w)/Gamma(w)
    pub fp_at_1: C,
    /// zeta'(0, w) = log[ Gamma(w) / sqrt(2 pi) ]
    pub s_deriv_at_0: C,
}

pub fn hurwitz_zeta_markers(w: C) -> Result<HurwitzMarkers> {
    check_w("hurwitz_zeta_markers", w)?;
    Ok(HurwitzMarkers {
        fp_at_1: -super::gamma::digamma(w)?,
        s_deriv_at_0: super::gamma::log_gamma(w)? - 0.5 * LOG_2PI,
    })
}

/// Riemann zeta as the w = 1 member.
pub fn riemann_zeta(s: C) -> Result<C> {
    hurwitz_zeta(s, C::new(1.0, 0.0))
}

pub fn riemann_zeta_sderiv(s: C) -> Result<C> {
    hurwitz_zeta_sderiv(s, C::new(1.0, 0.0))
}

/// Dirichlet beta(s) = sum (-1)^k (2k+1)^{-s} = 4^{-s}[zeta(s,1/4) - zeta(s,3/4)];
/// entire, so evaluated through the pole-subtracted kernels.
pub fn dirichlet_beta(s: C) -> Result<C> {
    let a = hurwitz_zeta_minus_pole(s, C::new(0.25, 0.0))?;
    let b = hurwitz_zeta_minus_pole(s, C::new(0.75, 0.0))?;
    Ok((-s * 4.0f64.ln()).exp() * (a - b))
}

/// d/ds of Dirichlet beta.
pub fn dirichlet_beta_sderiv(s: C) -> Result<C> {
    let l4 = 4.0f64.ln();
    let a = hurwitz_zeta_minus_pole(s, C::new(0.25, 0.0))?;
    let b = hurwitz_zeta_minus_pole(s, C::new(0.75, 0.0))?;
    let da = hurwitz_zeta_minus_pole_sderiv(s, C::new(0.25, 0.0))?;
    let db = hurwitz_zeta_minus_pole_sderiv(s, C::new(0.75, 0.0))?;
    Ok((-s * l4).exp() * (-l4 * (a - b) + (da - db)))
}
