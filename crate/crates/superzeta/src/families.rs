//! The three zeta families built over the nontrivial zeros of a primary
//! L-function, each evaluated by several independent routes:
//!
//! - z1(s, x)  = sum over all zeros rho of (x - rho)^{-s};
//! - z2(sigma, v) = sum over ordinates of (tau_k^2 + v)^{-sigma};
//! - z3(sigma, y) = sum over ordinates of (tau_k + y)^{-2 sigma}.
//!
//! Routes: truncated sums over located zeros with density-corrected tails
//! (direct_sum), the continuation integral against L'/L and its Mellin
//! variant (integral_rep), closed special-value formulas through the shadow
//! zeta and log Xi derivatives (closed_form), parameter expansions around
//! the v = 0 / y = 0 axis (expansion), and the interchange relations between
//! families (relation). Every result carries its route tag and an error
//! estimate.

use crate::error::{Error, Result};
use crate::primary::{PrimaryFunction, MIN_TAU_LOWER_BOUND};
use crate::quad::{integrate_geometric_tail, tanh_sinh};
use crate::specfun::{binomial_f64, factorial_f64, upper_gamma};
use crate::zeros::{zero_sum_tail, ZeroCache};
use crate::{c, ensure_finite, C};
use std::f64::consts::PI;

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    DirectSum,
    IntegralRep,
    ClosedForm,
    Expansion,
    Relation,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::DirectSum => "direct_sum",
            Method::IntegralRep => "integral_rep",
            Method::ClosedForm => "closed_form",
            Method::Expansion => "expansion",
            Method::Relation => "relation",
        }
    }
}

/// A computed value with its route tag and error estimate.
#[derive(Debug, Clone, Copy)]
pub struct EvalResult {
    pub value: C,
    pub method: Method,
    pub err_est: f64,
    pub zeros_used: usize,
}

impl EvalResult {
    fn new(value: C, method: Method, err_est: f64, zeros_used: usize) -> Self {
        EvalResult {
            value,
            method,
            err_est,
            zeros_used,
        }
    }
}

/// Distinguished arguments of the first family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z1Marker {
    /// s = -n <= 0: algebraic values.
    MinusN(u32),
    /// s = 0.
    Zero,
    /// d/ds at s = 0.
    Deriv0,
    /// Finite part at the pole s = 1.
    Fp1,
    /// s = +n >= 1: transcendental values.
    PlusN(u32),
}

/// Distinguished arguments of the second family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z2Marker {
    MinusM(u32),
    Zero,
    Deriv0,
    PlusM(u32),
}

/// Polar data at one pole.
#[derive(Debug, Clone, Copy)]
pub struct PolarDatum {
    pub location: C,
    pub order: u8,
    pub leading_coeff: C,
    pub residue: C,
    /// Populated only where the finite part has a closed form (sigma = 0 of
    /// the third family).
    pub finite_part: Option<C>,
}

// ---------------------------------------------------------------------
// first family: direct sum over zeros
// ---------------------------------------------------------------------

fn paired_term(s: C, xp: C, tau: f64) -> C {
    // (x - 1/2 - i tau)^{-s} + (x - 1/2 + i tau)^{-s}
    ((xp - c(0.0, tau)).powc(-s)) + ((xp + c(0.0, tau)).powc(-s))
}

/// Truncated paired sum over the cached zeros plus a density tail.
/// The tail combines closed moments against the two-term smooth density,
/// a quadrature of the density remainder, and the boundary fluctuation at
/// the cache height, so the continuation is accurate for Re s > 0 (the
/// classical absolute-convergence region is Re s > 1).
pub fn z1_direct(p: &PrimaryFunction, cache: &ZeroCache, s: C, x: C) -> Result<EvalResult> {
    if s.re <= 0.0 {
        return Err(Error::Domain {
            op: "z1_direct",
            detail: format!("Re s must be positive for the direct route, got {}", s),
        });
    }
    if cache.is_empty() {
        return Err(Error::Domain {
            op: "z1_direct",
            detail: "empty zero cache".into(),
        });
    }
    let xp = x - 0.5;
    // every x - rho must stay off the negative real axis
    if xp.re < 0.0 {
        for tau in cache.ordinates() {
            if (x.im - tau).abs() < 1e-9 || (x.im + tau).abs() < 1e-9 {
                return Err(Error::Domain {
                    op: "z1_direct",
                    detail: format!("x - rho on the cut for tau = {}", tau),
                });
            }
        }
    }
    let mut partial = c(0.0, 0.0);
    for tau in cache.ordinates() {
        partial += paired_term(s, xp, tau);
    }
    let (tail, tail_err) = z1_tail(p, cache, s, x)?;
    let value = ensure_finite("z1_direct", partial + tail)?;
    let err = tail_err + 1e-15 * partial.norm();
    Ok(EvalResult::new(value, Method::DirectSum, err, cache.len()))
}

/// Tail of the paired sum past the cache height T: closed moments of the
/// asymptotic expansion of the paired term against the two-term smooth
/// density, plus a quadrature of the density remainder and the S(T)
/// boundary correction.
fn z1_tail(p: &PrimaryFunction, cache: &ZeroCache, s: C, x: C) -> Result<(C, f64)> {
    let t = cache.t_max();
    let st = p.stirling();
    let c_p = st.b1 / st.a1;
    let xp = x - 0.5;

    // paired(tau) = tau^{-s} sum_j C(-s,j) (xp/tau)^j K_j,
    // K_j = i^j (e^{i pi s/2} + (-1)^j e^{-i pi s/2})
    let e_plus = (c(0.0, PI / 2.0) * s).exp();
    let e_minus = (c(0.0, -PI / 2.0) * s).exp();
    let mut closed = c(0.0, 0.0);
    let mut binom = c(1.0, 0.0); // C(-s, j)
    let mut xp_pow = c(1.0, 0.0);
    let mut i_pow = c(1.0, 0.0);
    for j in 0..60 {
        let jf = j as f64;
        let k_j = i_pow * (e_plus + if j % 2 == 0 { e_minus } else { -e_minus });
        // moment int_T^inf tau^{-s-j} (log tau + c_p) dtau
        let sj = s + jf - 1.0;
        let coeff = binom * xp_pow * k_j;
        if sj.norm() < 1e-8 {
            // the moment diverges; reachable only at s = 1, j = 0, where the
            // paired coefficient 2 cos(pi s / 2) vanishes identically
            if coeff.norm() > 1e-12 {
                return Err(Error::PoleProximity {
                    op: "z1_direct",
                    param: "s",
                    detail: format!("s = {} adjoins the pole at 1", s),
                });
            }
        } else {
            let mom =
                ((c(1.0, 0.0) - s - jf) * t.ln()).exp() * ((t.ln() + c_p) / sj + 1.0 / (sj * sj));
            let term = coeff * mom;
            closed += term;
            if j > 2 && term.norm() < 1e-17 * closed.norm().max(1e-300) {
                break;
            }
        }
        binom *= (-s - jf) / (jf + 1.0);
        xp_pow *= xp;
        i_pow *= c(0.0, 1.0);
    }
    closed *= st.a1 / PI;

    // density remainder: exact smooth density minus the two-term form
    let mut quad_err_flag = false;
    let remainder = {
        let mut integrand = |tau: f64| -> C {
            let rho = match p.zero_density(tau) {
                Ok(r) => r,
                Err(_) => {
                    quad_err_flag = true;
                    return c(0.0, 0.0);
                }
            };
            let smooth2 = st.a1 / PI * (tau.ln() + c_p);
            paired_term(s, xp, tau) * (rho - smooth2)
        };
        integrate_geometric_tail(&mut integrand, t, 1.7, 1e-16, 90)
    };
    if quad_err_flag {
        return Err(Error::NonFinite {
            op: "z1_direct",
            detail: "density evaluation failed in the tail".into(),
        });
    }

    let s_at_t = cache.len() as f64 - p.smooth_counting(t)?;
    let f_t = paired_term(s, xp, t);
    let boundary = -f_t * s_at_t;

    let value = closed + remainder.value + boundary;
    let err = 1.5 * f_t.norm() + 2.0 * remainder.err_est;
    Ok((value, err))
}

// ---------------------------------------------------------------------
// first family: continuation integral (Re s < 1)
// ---------------------------------------------------------------------

/// Continuation of z1 to Re s < 1 through the integral of (L'/L)(x+y)
/// against y^{-s}: head by tanh-sinh on [0, Y] with the q-pole subtracted
/// analytically, tail by termwise incomplete-gamma integration of the
/// Dirichlet series of -L'/L. Valid for x real > 0 or complex off the cut
/// (-inf, 1].
pub fn z1_integral(p: &PrimaryFunction, s: C, x: C) -> Result<EvalResult> {
    let y_split = (2.5 - x.re).max(0.0);
    z1_integral_at_split(p, s, x, y_split)
}

/// Same, with an explicit head/tail split point (diagnostic knob; results
/// must not depend on it).
pub fn z1_integral_at_split(p: &PrimaryFunction, s: C, x: C, y_split: f64) -> Result<EvalResult> {
    if s.re >= 1.0 {
        return Err(Error::Domain {
            op: "z1_integral",
            detail: format!("requires Re s < 1, got {}", s),
        });
    }
    if (c(PI, 0.0) * s).sin().norm() < 1e-3 && (s - 1.0).norm() < 0.5 {
        return Err(Error::PoleProximity {
            op: "z1_integral",
            param: "s",
            detail: format!("s = {} adjoins the pole at 1", s),
        });
    }
    if x.re + y_split < p.sigma0() + 1.49 {
        return Err(Error::Domain {
            op: "z1_integral",
            detail: format!("split {} leaves the series tail below its abscissa", y_split),
        });
    }
    let q = p.q() as f64;
    let real_x = x.im == 0.0;
    if real_x && x.re <= 0.0 {
        return Err(Error::Domain {
            op: "z1_integral",
            detail: format!("x = {} on the cut", x),
        });
    }
    let at_one = real_x && x.re == 1.0 && p.q() == 1;
    if at_one && s.re <= 0.0 {
        return Err(Error::Domain {
            op: "z1_integral",
            detail: "x = 1 needs 0 < Re s < 1".into(),
        });
    }

    let shadow = p.shadow_zeta(s, x)?;
    let y0 = c(1.0, 0.0) - x;
    let one_minus_s = c(1.0, 0.0) - s;
    // Y^{1-s}/(1-s), the exactly integrated endpoint weight
    let weight_moment = ((one_minus_s) * y_split.ln()).exp() / one_minus_s;

    // head: int_0^Y [q/(x+y-1) + L'/L(x+y)] y^{-s} dy. The integrand limit
    // at y = 0 is peeled off and integrated in closed form so that the
    // quadrature only ever sees an O(y^{1 - Re s}) endpoint.
    let f0 = p.l_log_deriv_reg(x)?;
    let mut head_err_flag = None;
    let head = {
        let mut f = |y: f64| -> C {
            match p.l_log_deriv_reg(x + y) {
                Ok(v) => (v - f0) * (-s * y.ln()).exp(),
                Err(e) => {
                    head_err_flag.get_or_insert(e);
                    c(0.0, 0.0)
                }
            }
        };
        tanh_sinh(&mut f, 0.0, y_split, 1e-13)
    };
    if let Some(e) = head_err_flag {
        return Err(e);
    }
    let head_value = head.value + f0 * weight_moment;

    // analytic correction: q * int_0^Y y^{-s}/(y - y0) dy. Writing
    // 1/(y - y0) = y/(y0 (y - y0)) - 1/y0 leaves a divided difference of
    // y^{1-s} (bounded at the origin) plus explicit elementary pieces.
    let (pole_term, correction, corr_err) = if p.q() == 1 && !at_one {
        let y0_pow1 = (one_minus_s * y0.ln()).exp(); // y0^{1-s}, principal
        let dd = {
            let mut f = |y: f64| -> C {
                let yp = (one_minus_s * y.ln()).exp();
                (yp - y0_pow1) / (y - y0)
            };
            tanh_sinh(&mut f, 0.0, y_split, 1e-13)
        };
        let (pole_term, log_term) = if real_x && x.re < 1.0 {
            // principal value through the interior pole; the imaginary
            // parts of the two-sided limits cancel into cos(pi s)
            let y0r = y0.re;
            let pt = q * (c(PI, 0.0) * s).cos() * (-s * y0r.ln()).exp();
            (pt, c(((y_split - y0r) / y0r).ln(), 0.0))
        } else {
            let pt = q * (-s * (x - 1.0).ln()).exp();
            (pt, (c(y_split, 0.0) - y0).ln() - (x - 1.0).ln())
        };
        let a_val = (dd.value + y0_pow1 * log_term - weight_moment) / y0;
        (pole_term, a_val, dd.err_est / y0.norm())
    } else if at_one {
        // bracketed tail handles the pole; add its explicit [Y, inf) piece
        (q * (-s * y_split.ln()).exp() / s, c(0.0, 0.0), 0.0)
    } else {
        (c(0.0, 0.0), c(0.0, 0.0), 0.0)
    };

    // tail: -sum c_n n^{-x} (log n)^{s-1} Gamma(1-s, Y log n)
    let (tail, tail_err) = vm_tail(p, s, x, y_split, 0)?;

    let j_val = head_value - q * correction + tail;
    let sin_factor = (c(PI, 0.0) * s).sin() / PI;
    let value = if at_one {
        -shadow + sin_factor * (j_val + pole_term)
    } else {
        -shadow + pole_term + sin_factor * j_val
    };
    let err = sin_factor.norm() * (head.err_est + q * corr_err + tail_err)
        + 1e-14 * (shadow.norm() + pole_term.norm());
    Ok(EvalResult::new(
        ensure_finite("z1_integral", value)?,
        Method::IntegralRep,
        err,
        0,
    ))
}

/// Termwise tail: -sum c_n n^{-x} (log n)^{s-k-1}... with log-power shift
/// `extra_log`: computes -sum c_n n^{-x} (log n)^{s-1+extra} Gamma(1-s+extra, Y log n)
/// for the first-family integrals (extra = 0) and the Mellin variant
/// (extra = 1, order 2 - s). Returns (value, error bound).
fn vm_tail(p: &PrimaryFunction, s: C, x: C, y_split: f64, extra: i32) -> Result<(C, f64)> {
    let order = c(1.0 + extra as f64, 0.0) - s;
    let mut acc = c(0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut n_used = 2u32;
    for &(n, cn) in p.von_mangoldt() {
        let ln = (n as f64).ln();
        let z = y_split * ln;
        let g = upper_gamma(order, z)?;
        let term = cn * (-x * ln).exp() * ((s - 1.0 + extra as f64) * ln.ln()).exp() * g;
        acc -= term;
        last = term.norm();
        n_used = n;
        if last < 1e-14 {
            break;
        }
    }
    // residual: geometric-in-t integral bound past the last term used
    let sigma = x.re + y_split;
    let beyond = if sigma > 1.05 {
        let nf = n_used as f64;
        2.0 * nf.ln().powf(s.re) * nf.powf(1.0 - sigma) / (sigma - 1.0)
    } else {
        f64::INFINITY
    };
    Ok((acc, last + beyond))
}

// ---------------------------------------------------------------------
// first family: Mellin route (1 < Re s < 2)
// ---------------------------------------------------------------------

/// Continuation for 1 < Re s < 2 (non-integer) by a Mellin transform of the
/// closed second-moment values:
/// z1(s,x) = sin(pi s)/(pi (1-s)) int_0^inf z1(2, x+y) y^{1-s} dy,
/// the integrand being the closed-form z1(2, .) (no zero sums involved).
pub fn z1_mellin(p: &PrimaryFunction, s: C, x: C) -> Result<EvalResult> {
    if !(s.re > 1.0 && s.re < 2.0) {
        return Err(Error::Domain {
            op: "z1_mellin",
            detail: format!("requires 1 < Re s < 2, got {}", s),
        });
    }
    if (s - 2.0).norm() < 1e-4 {
        return Err(Error::PoleProximity {
            op: "z1_mellin",
            param: "s",
            detail: "endpoint factor degenerates at s = 2".into(),
        });
    }
    if x.im != 0.0 || x.re <= 0.0 {
        return Err(Error::Domain {
            op: "z1_mellin",
            detail: format!("Mellin route restricted to real x > 0, got {}", x),
        });
    }
    let split = 40.0f64;
    let q = p.q() as f64;
    let st = p.stirling();

    // endpoint peeled as in the first-family integral: the y -> 0 limit of
    // the integrand is integrated exactly against y^{1-s}
    let g0 = z1_second_moment(p, x)?;
    let two_minus_s = c(2.0, 0.0) - s;
    let mut head_err: Option<Error> = None;
    let head = {
        let mut f = |y: f64| -> C {
            match z1_second_moment(p, x + y) {
                Ok(v) => (v - g0) * ((c(1.0, 0.0) - s) * y.ln()).exp(),
                Err(e) => {
                    head_err.get_or_insert(e);
                    c(0.0, 0.0)
                }
            }
        };
        tanh_sinh(&mut f, 0.0, split, 1e-12)
    };
    if let Some(e) = head_err {
        return Err(e);
    }
    let head_value = head.value + g0 * (two_minus_s * split.ln()).exp() / two_minus_s;

    // tail pieces for y >= split, using
    // z1(2, z) = -Z(2, z) + q (z-1)^{-2} - (log L)''(z):
    // (a) -(Z(2, x+y) - a1/(x+y)) integrated numerically (O(y^{-2}) decay),
    // (b) -a1 int y^{1-s}/(x+y) dy as a convergent power series in x/y,
    // (c) q int y^{1-s}/(x+y-1)^2 dy likewise,
    // (d) the Dirichlet-series terms against incomplete gammas.
    let mut tail_err_flag: Option<Error> = None;
    let t_a = {
        let mut f = |y: f64| -> C {
            let z = x + y;
            match p.shadow_zeta(c(2.0, 0.0), z) {
                Ok(sz) => -(sz - st.a1 / z) * ((c(1.0, 0.0) - s) * y.ln()).exp(),
                Err(e) => {
                    tail_err_flag.get_or_insert(e);
                    c(0.0, 0.0)
                }
            }
        };
        integrate_geometric_tail(&mut f, split, 2.0, 1e-16, 80)
    };
    if let Some(e) = tail_err_flag {
        return Err(e);
    }

    let series_int = |shift: C, power: i32| -> C {
        // int_A^inf y^{1-s} / (y + shift)^k dy, k = power, |shift| < A,
        // expanded as sum_j C(-k, j) shift^j A^{2-s-k-j} / (s + k + j - 2)
        let k = power as f64;
        let mut acc = c(0.0, 0.0);
        let mut binom = c(1.0, 0.0);
        let mut sh_pow = c(1.0, 0.0);
        for j in 0..200 {
            let jf = j as f64;
            let denom = s + (k + jf - 2.0);
            let a_pow = ((c(2.0, 0.0) - s - (k + jf)) * split.ln()).exp();
            let term = binom * sh_pow * a_pow / denom;
            acc += term;
            if j > 3 && term.norm() < 1e-17 * acc.norm().max(1e-300) {
                break;
            }
            binom *= (-k - jf) / (jf + 1.0);
            sh_pow *= shift;
        }
        acc
    };
    let t_b = -st.a1 * series_int(x, 1);
    let t_c = q * series_int(x - 1.0, 2);
    let (t_d, t_d_err) = vm_tail(p, s, x, split, 1)?;

    let integral = head_value + t_a.value + t_b + t_c + t_d;
    let prefactor = (c(PI, 0.0) * s).sin() / (PI * (c(1.0, 0.0) - s));
    let value = prefactor * integral;
    let err = prefactor.norm() * (head.err_est + 2.0 * t_a.err_est + t_d_err) + 1e-13 * value.norm();
    Ok(EvalResult::new(
        ensure_finite("z1_mellin", value)?,
        Method::IntegralRep,
        err,
        0,
    ))
}

/// Closed-form z1(2, z) = -(log Xi)''(z).
fn z1_second_moment(p: &PrimaryFunction, z: C) -> Result<C> {
    Ok(-p.log_xi_derivatives(z, 2)?)
}

// ---------------------------------------------------------------------
// first family: closed special values
// ---------------------------------------------------------------------

/// log Xi(x): real logarithm on the real axis (where Xi > 0 for the shipped
/// instances), principal combination elsewhere.
pub fn log_xi(p: &PrimaryFunction, x: C) -> Result<C> {
    let xi = p.xi_value(x)?;
    if x.im == 0.0 {
        if xi.re <= 0.0 {
            return Err(Error::Domain {
                op: "log_xi",
                detail: format!("Xi({}) = {} not positive", x, xi),
            });
        }
        return Ok(c(xi.re.ln(), 0.0));
    }
    Ok(p.completed_log_prefactor(x)? + p.log_l_derivatives(x, 0)?)
}

/// Exact special values of the first family.
pub fn z1_closed(p: &PrimaryFunction, marker: Z1Marker, x: C) -> Result<EvalResult> {
    let st = p.stirling();
    let q = p.q() as f64;
    let value = match marker {
        Z1Marker::MinusN(n) => {
            // -Z(-n, x) + q (x-1)^n, trace polynomial route
            -p.shadow_neg_trace(n, x) + q * (x - 1.0).powi(n as i32)
        }
        Z1Marker::Zero => st.a1 * x + st.a0 + q,
        Z1Marker::Deriv0 => st.b1 * x + st.b0 - log_xi(p, x)?,
        Z1Marker::Fp1 => -st.b1 + p.log_xi_derivatives(x, 1)?,
        Z1Marker::PlusN(n) => {
            if n == 0 {
                return z1_closed(p, Z1Marker::Zero, x);
            }
            if n > 40 {
                return Err(Error::IndexOutOfRange {
                    op: "z1_closed",
                    index: n as usize,
                    max: 40,
                });
            }
            if n % 2 == 1 && x == c(0.5, 0.0) {
                // odd values vanish identically at the symmetry center
                c(0.0, 0.0)
            } else {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign * p.log_xi_derivatives(x, n)? / factorial_f64(n as usize - 1)
            }
        }
    };
    let err = match marker {
        Z1Marker::MinusN(_) | Z1Marker::Zero => 1e-13 * value.norm().max(1.0),
        Z1Marker::PlusN(n) if n >= 2 => {
            if (x - 1.0).norm() < 0.3 {
                // assembled from the Taylor data around 1: no cancellation
                1e-9
            } else {
                // the assembly cancels pieces of scale max(1, 1/|x-1|)^n
                let growth = (x - 1.0).norm().recip().max(1.0).powi(n as i32);
                1e-9f64.max(3e-16 * growth)
            }
        }
        _ => 1e-11 * value.norm().max(1.0),
    };
    Ok(EvalResult::new(
        ensure_finite("z1_closed", value)?,
        Method::ClosedForm,
        err,
        0,
    ))
}

/// Route dispatcher for the first family at a general exponent.
pub fn z1_auto(p: &PrimaryFunction, cache: Option<&ZeroCache>, s: C, x: C) -> Result<EvalResult> {
    if s.im == 0.0 && s.re == s.re.round() {
        let n = s.re as i64;
        if n <= 0 {
            return z1_closed(p, Z1Marker::MinusN((-n) as u32), x);
        }
        return z1_closed(p, Z1Marker::PlusN(n as u32), x);
    }
    if s.re < 1.0 {
        return z1_integral(p, s, x);
    }
    if let Some(cache) = cache {
        return z1_direct(p, cache, s, x);
    }
    if s.re < 2.0 && x.im == 0.0 {
        return z1_mellin(p, s, x);
    }
    Err(Error::RouteUnavailable {
        op: "z1_auto",
        detail: format!("no route for s = {} without a zero cache", s),
    })
}

// ---------------------------------------------------------------------
// second family
// ---------------------------------------------------------------------

fn near_integer(z: C, tol: f64) -> Option<i64> {
    if z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol {
        Some(z.re.round() as i64)
    } else {
        None
    }
}

/// v = 0 member of the second family, routed by the exponent:
/// closed forms at integers, the interchange relation plus integral or
/// Mellin continuation left of Re sigma = 1, direct sums to the right.
pub fn z2_basic(p: &PrimaryFunction, cache: &ZeroCache, sigma: C) -> Result<EvalResult> {
    if let Some(m) = near_integer(sigma, 1e-12) {
        // z2(m) = 1/2 (-1)^m z1(2m, 1/2); the closed assembly at x = 1/2
        // loses 2^{2m} eps to cancellation, so past m = 3 the direct sum
        // (whose tail shrinks like T^{-2m-1}) is the accurate provider.
        if m >= 4 {
            let two_sigma = c(2.0 * m as f64, 0.0);
            let mut partial = c(0.0, 0.0);
            for tau in cache.ordinates() {
                partial += (-two_sigma * c(tau, 0.0).ln()).exp();
            }
            let (tail, terr) = zero_sum_tail(p, cache, |tau| (-two_sigma * tau.ln()).exp())?;
            return Ok(EvalResult::new(
                partial + tail,
                Method::DirectSum,
                terr + 1e-15 * partial.norm(),
                cache.len(),
            ));
        }
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let inner = if m <= 0 {
            z1_closed(p, Z1Marker::MinusN((-2 * m) as u32), c(0.5, 0.0))?
        } else {
            z1_closed(p, Z1Marker::PlusN(2 * m as u32), c(0.5, 0.0))?
        };
        return Ok(EvalResult::new(
            0.5 * sign * inner.value,
            Method::ClosedForm,
            0.5 * inner.err_est,
            0,
        ));
    }
    // poles at sigma = 1/2 - m, m >= 0
    let two_sigma = 2.0 * sigma;
    if let Some(k) = near_integer(two_sigma, 2e-3) {
        if k % 2 != 0 && k <= 1 {
            return Err(Error::PoleProximity {
                op: "z2_basic",
                param: "sigma",
                detail: format!("sigma = {} adjoins a pole", sigma),
            });
        }
    }
    if sigma.re > 0.975 {
        // direct sum over ordinates
        let mut partial = c(0.0, 0.0);
        for tau in cache.ordinates() {
            partial += (-two_sigma * c(tau, 0.0).ln()).exp();
        }
        let (tail, terr) = zero_sum_tail(p, cache, |tau| (-two_sigma * tau.ln()).exp())?;
        return Ok(EvalResult::new(
            partial + tail,
            Method::DirectSum,
            terr + 1e-15 * partial.norm(),
            cache.len(),
        ));
    }
    // interchange relation to the first family at the symmetry center
    let inner = if two_sigma.re < 1.0 {
        z1_integral(p, two_sigma, c(0.5, 0.0))?
    } else {
        z1_mellin(p, two_sigma, c(0.5, 0.0))?
    };
    let prefactor = 1.0 / (2.0 * (c(PI, 0.0) * sigma).cos());
    Ok(EvalResult::new(
        prefactor * inner.value,
        Method::Relation,
        prefactor.norm() * inner.err_est,
        inner.zeros_used,
    ))
}

/// Direct sum over the cached ordinates with a density tail (Re sigma >= 1).
pub fn z2_direct(p: &PrimaryFunction, cache: &ZeroCache, sigma: C, v: C) -> Result<EvalResult> {
    if sigma.re < 1.0 {
        return Err(Error::Domain {
            op: "z2_direct",
            detail: format!("direct route needs Re sigma >= 1, got {}", sigma),
        });
    }
    let mut partial = c(0.0, 0.0);
    for tau in cache.ordinates() {
        partial += (c(tau * tau, 0.0) + v).powc(-sigma);
    }
    let (tail, terr) = zero_sum_tail(p, cache, |tau| (c(tau * tau, 0.0) + v).powc(-sigma))?;
    Ok(EvalResult::new(
        partial + tail,
        Method::DirectSum,
        terr + 1e-15 * partial.norm(),
        cache.len(),
    ))
}

/// General evaluation of the second family.
pub fn z2_eval(p: &PrimaryFunction, cache: &ZeroCache, sigma: C, v: C) -> Result<EvalResult> {
    let tau1 = cache.first_ordinate().unwrap_or(MIN_TAU_LOWER_BOUND);
    if v.im == 0.0 && v.re <= -(tau1 * tau1) {
        return Err(Error::Domain {
            op: "z2_eval",
            detail: format!("tau^2 + v reaches the negative axis for v = {}", v),
        });
    }
    if v == c(0.0, 0.0) {
        return z2_basic(p, cache, sigma);
    }
    if let Some(m) = near_integer(sigma, 1e-12) {
        if m <= 0 {
            return z2_closed(p, cache, Z2Marker::MinusM((-m) as u32), v);
        }
    }
    let ratio = v.norm() / (tau1 * tau1);
    if sigma.re >= 1.0 {
        // integer exponents expand into all-closed axis values, which beats
        // the truncated sum; otherwise sum directly
        let integerish = near_integer(sigma, 1e-12).is_some();
        if !(integerish && ratio < 0.5) {
            return z2_direct(p, cache, sigma, v);
        }
    }
    // expansion around v = 0 in the disc |v| < tau_1^2
    if ratio > 0.8 {
        return Err(Error::RouteUnavailable {
            op: "z2_eval",
            detail: format!("|v|/tau_1^2 = {:.3} outside every route's domain", ratio),
        });
    }
    let mut acc = c(0.0, 0.0);
    let mut err = 0.0f64;
    let mut binom = c(1.0, 0.0); // C(-sigma, l)
    let mut v_pow = c(1.0, 0.0);
    let mut small_run = 0;
    let mut zeros_used = 0;
    let mut last_term = f64::INFINITY;
    for l in 0..120 {
        let lf = l as f64;
        let base = z2_basic(p, cache, sigma + lf)?;
        zeros_used = zeros_used.max(base.zeros_used);
        let term = binom * base.value * v_pow;
        let prev = last_term;
        last_term = term.norm();
        // terms growing inside the noise floor signal exhausted accuracy
        if l >= 4 && last_term > prev && last_term < 1e-9 * (1.0 + acc.norm()) {
            err += last_term;
            break;
        }
        acc += term;
        err += binom.norm() * v_pow.norm() * base.err_est;
        if l >= 2 && last_term < 1e-13 * acc.norm().max(1e-300) {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        binom *= (-sigma - lf) / (lf + 1.0);
        v_pow *= v;
    }
    err += last_term / (1.0 - ratio);
    Ok(EvalResult::new(
        ensure_finite("z2_eval", acc)?,
        Method::Expansion,
        err,
        zeros_used,
    ))
}

/// Closed special values of the second family.
pub fn z2_closed(
    p: &PrimaryFunction,
    cache: &ZeroCache,
    marker: Z2Marker,
    v: C,
) -> Result<EvalResult> {
    let st = p.stirling();
    let q = p.q() as f64;
    match marker {
        Z2Marker::MinusM(m) => {
            // terminating binomial sum over the closed v = 0 values,
            // a degree-m polynomial in v
            let mut acc = c(0.0, 0.0);
            for l in 0..=m {
                let base = z2_basic(p, cache, c(-(m as f64) + l as f64, 0.0))?;
                acc += binomial_f64(m as usize, l as usize) * base.value * v.powi(l as i32);
            }
            Ok(EvalResult::new(acc, Method::ClosedForm, 1e-12 * acc.norm().max(1.0), 0))
        }
        Z2Marker::Zero => {
            let value = c(0.5 * (0.5 * st.a1 + st.a0 + q), 0.0);
            Ok(EvalResult::new(value, Method::ClosedForm, 1e-15, 0))
        }
        Z2Marker::Deriv0 => {
            if v.im == 0.0 && v.re < 0.0 {
                return Err(Error::Domain {
                    op: "z2_closed",
                    detail: format!("branch ambiguity for v = {} on the negative axis", v),
                });
            }
            let root = v.sqrt(); // principal, Re >= 0
            let a = log_xi(p, c(0.5, 0.0) + root)?;
            let b = log_xi(p, c(0.5, 0.0) - root)?;
            if (a - b).norm() > 1e-8 * a.norm().max(1.0) {
                return Err(Error::NonFinite {
                    op: "z2_closed",
                    detail: format!("sign choices disagree: {} vs {}", a, b),
                });
            }
            let value = 0.5 * st.b1 + st.b0 - 0.5 * (a + b);
            Ok(EvalResult::new(value, Method::ClosedForm, 1e-10 * value.norm().max(1.0), 0))
        }
        Z2Marker::PlusM(m) => {
            if m == 0 {
                return z2_closed(p, cache, Z2Marker::Zero, v);
            }
            if v == c(0.0, 0.0) {
                return z2_basic(p, cache, c(m as f64, 0.0));
            }
            if v.im == 0.0 && v.re < 0.0 {
                return Err(Error::Domain {
                    op: "z2_closed",
                    detail: format!("branch ambiguity for v = {} on the negative axis", v),
                });
            }
            let root = v.sqrt();
            let x = c(0.5, 0.0) + root;
            let two_x_m1 = 2.0 * root;
            let mut acc = c(0.0, 0.0);
            let mut err = 0.0;
            for l in 0..m {
                let inner = z1_closed(p, Z1Marker::PlusN(m - l), x)?;
                let w = binomial_f64((m + l - 1) as usize, (m - 1) as usize)
                    * two_x_m1.powi(-((m + l) as i32));
                acc += w * inner.value;
                err += w.norm() * inner.err_est;
            }
            Ok(EvalResult::new(acc, Method::ClosedForm, err, 0))
        }
    }
}

/// Residues R_m of the v = 0 member at sigma = 1/2 - m (m >= 1).
fn z2_residue_basic(p: &PrimaryFunction, m: u32) -> C {
    let q = p.q() as f64;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let shadow = p.shadow_neg_trace(2 * m - 1, c(0.5, 0.0));
    sign / (2.0 * PI) * (shadow + q * 2f64.powi(1 - 2 * (m as i32)))
}

/// Gamma(k + 1/2)/Gamma(1/2) = (2k)!/(4^k k!).
fn gamma_half_ratio(k: u32) -> f64 {
    binomial_f64(2 * k as usize, k as usize) * factorial_f64(k as usize) / 4f64.powi(k as i32)
}

/// Polar data of the second family at sigma = 1/2 - m: double poles whose
/// leading coefficient comes from the single double pole of the v = 0
/// member, residues mixing in all the lower simple-pole residues.
pub fn z2_polar(p: &PrimaryFunction, m: u32, v: C) -> PolarDatum {
    let st = p.stirling();
    let half_m = gamma_half_ratio(m) / factorial_f64(m as usize);
    let lead = st.a1 / (4.0 * PI) * half_m * v.powi(m as i32);
    let mut harmonic = 0.0;
    for j in 1..=m {
        harmonic += 1.0 / (2.0 * j as f64 - 1.0);
    }
    let mut residue =
        -half_m * (st.a1 / (2.0 * PI) * harmonic - st.b1 / (2.0 * PI)) * v.powi(m as i32);
    for j in 1..=m {
        let ratio = gamma_half_ratio(m)
            / (factorial_f64((m - j) as usize) * gamma_half_ratio(j));
        residue += ratio * z2_residue_basic(p, j) * v.powi((m - j) as i32);
    }
    PolarDatum {
        location: c(0.5 - m as f64, 0.0),
        order: 2,
        leading_coeff: lead,
        residue,
        finite_part: None,
    }
}

// ---------------------------------------------------------------------
// third family
// ---------------------------------------------------------------------

/// Direct one-sided sum with a density tail (Re sigma >= 1).
pub fn z3_direct(p: &PrimaryFunction, cache: &ZeroCache, sigma: C, y: C) -> Result<EvalResult> {
    if sigma.re < 1.0 {
        return Err(Error::Domain {
            op: "z3_direct",
            detail: format!("direct route needs Re sigma >= 1, got {}", sigma),
        });
    }
    let two_sigma = 2.0 * sigma;
    let mut partial = c(0.0, 0.0);
    for tau in cache.ordinates() {
        partial += (c(tau, 0.0) + y).powc(-two_sigma);
    }
    let (tail, terr) = zero_sum_tail(p, cache, |tau| (c(tau, 0.0) + y).powc(-two_sigma))?;
    Ok(EvalResult::new(
        partial + tail,
        Method::DirectSum,
        terr + 1e-15 * partial.norm(),
        cache.len(),
    ))
}

/// One-sided family z3(sigma, y) = sum (tau_k + y)^{-2 sigma}.
pub fn z3_eval(p: &PrimaryFunction, cache: &ZeroCache, sigma: C, y: C) -> Result<EvalResult> {
    let tau1 = cache.first_ordinate().unwrap_or(MIN_TAU_LOWER_BOUND);
    if y.im == 0.0 && y.re <= -tau1 {
        return Err(Error::Domain {
            op: "z3_eval",
            detail: format!("tau + y reaches the negative axis for y = {}", y),
        });
    }
    if y == c(0.0, 0.0) {
        return z2_basic(p, cache, sigma);
    }
    let two_sigma = 2.0 * sigma;
    let ratio = y.norm() / tau1;
    if sigma.re >= 1.0 {
        // integral or half-integral exponents expand with closed axis values
        // at alternating orders, gaining two powers of the cache height
        let integerish = near_integer(two_sigma, 1e-12).is_some();
        if !(integerish && ratio < 0.5) {
            return z3_direct(p, cache, sigma, y);
        }
    }
    if ratio > 0.8 {
        return Err(Error::RouteUnavailable {
            op: "z3_eval",
            detail: format!("|y|/tau_1 = {:.3} outside every route's domain", ratio),
        });
    }
    // expansion in y with the v = 0 members at half-integer shifts
    let mut acc = c(0.0, 0.0);
    let mut err = 0.0f64;
    let mut binom = c(1.0, 0.0); // C(-2 sigma, l)
    let mut y_pow = c(1.0, 0.0);
    let mut small_run = 0;
    let mut zeros_used = 0;
    let mut last_term = f64::INFINITY;
    for l in 0..160 {
        let lf = l as f64;
        let base = z2_basic(p, cache, sigma + 0.5 * lf)?;
        zeros_used = zeros_used.max(base.zeros_used);
        let term = binom * base.value * y_pow;
        let prev = last_term;
        last_term = term.norm();
        if l >= 4 && last_term > prev && last_term < 1e-9 * (1.0 + acc.norm()) {
            err += last_term;
            break;
        }
        acc += term;
        err += binom.norm() * y_pow.norm() * base.err_est;
        if l >= 2 && last_term < 1e-13 * acc.norm().max(1e-300) {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        binom *= (-two_sigma - lf) / (lf + 1.0);
        y_pow *= y;
    }
    err += last_term / (1.0 - ratio);
    Ok(EvalResult::new(
        ensure_finite("z3_eval", acc)?,
        Method::Expansion,
        err,
        zeros_used,
    ))
}

/// Polar data of the third family at sigma = (1 - n)/2. The leading pole at
/// sigma = 1/2 remains double and y-independent; all others are simple. At
/// sigma = 0 the finite part is also closed.
pub fn z3_polar(p: &PrimaryFunction, n: u32, y: C) -> PolarDatum {
    let st = p.stirling();
    if n == 0 {
        let base = z2_polar(p, 0, c(0.0, 0.0));
        return PolarDatum {
            location: c(0.5, 0.0),
            order: 2,
            leading_coeff: base.leading_coeff,
            residue: base.residue,
            finite_part: None,
        };
    }
    let mut r = -st.a1 / (2.0 * PI * n as f64) * y.powi(n as i32);
    let mut m = 1u32;
    while 2 * m <= n {
        r += binomial_f64(n as usize - 1, 2 * m as usize - 1)
            * z2_residue_basic(p, m)
            * y.powi((n - 2 * m) as i32);
        m += 1;
    }
    let finite_part = (n == 1).then(|| {
        c(
            0.25 * st.a1 + 0.5 * (st.a0 + p.q() as f64),
            0.0,
        ) - st.b1 / PI * y
    });
    PolarDatum {
        location: c(0.5 * (1.0 - n as f64), 0.0),
        order: 1,
        leading_coeff: r,
        residue: r,
        finite_part,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primary::{build_primary, PrimarySpec};
    use crate::specfun::EULER_GAMMA;
    use crate::zeros::locate_zeros;
    use std::sync::OnceLock;

    fn riemann() -> &'static (PrimaryFunction, ZeroCache) {
        static P: OnceLock<(PrimaryFunction, ZeroCache)> = OnceLock::new();
        P.get_or_init(|| {
            let p = build_primary(PrimarySpec::Riemann).unwrap();
            let cache = locate_zeros(&p, 48.0).unwrap();
            (p, cache)
        })
    }

    fn chi4() -> &'static (PrimaryFunction, ZeroCache) {
        static P: OnceLock<(PrimaryFunction, ZeroCache)> = OnceLock::new();
        P.get_or_init(|| {
            let p = build_primary(PrimarySpec::Dirichlet { discriminant: -4 }).unwrap();
            let cache = locate_zeros(&p, 30.0).unwrap();
            (p, cache)
        })
    }

    #[test]
    fn closed_special_values() {
        let (p, _) = riemann();
        // value at s = 0 for x = 1: a1 + a0 + q = 2
        let v = z1_closed(p, Z1Marker::Zero, c(1.0, 0.0)).unwrap();
        assert!((v.value.re - 2.0).abs() < 1e-13);
        // s = 1 at x = 1: 1 + gamma/2 - log(4 pi)/2
        let want = 1.0 + 0.5 * EULER_GAMMA - 0.5 * (4.0 * PI).ln();
        let v = z1_closed(p, Z1Marker::PlusN(1), c(1.0, 0.0)).unwrap();
        assert!((v.value.re - want).abs() < 1e-9, "{} vs {}", v.value.re, want);
        assert!((v.value.re - 0.0230957).abs() < 1e-6);
        // finite part at the pole, x = 1/2: -b1 = log(2 pi)/2
        let v = z1_closed(p, Z1Marker::Fp1, c(0.5, 0.0)).unwrap();
        assert!((v.value.re - 0.5 * (2.0 * PI).ln()).abs() < 1e-10);

        let (pc, _) = chi4();
        // derivative at 0, x = 1: log 4 - log(pi)/2
        let v = z1_closed(pc, Z1Marker::Deriv0, c(1.0, 0.0)).unwrap();
        let want = 4f64.ln() - 0.5 * PI.ln();
        assert!((v.value.re - want).abs() < 1e-11, "{} vs {}", v.value.re, want);
    }

    #[test]
    fn integral_route_special_values() {
        // s = 0 collapses to a1 x + a0 + q for any valid x
        let (p, _) = riemann();
        for &x in &[c(2.0, 0.0), c(0.7, 0.0), c(1.5, 0.8)] {
            let v = z1_integral(p, c(0.0, 0.0), x).unwrap();
            let closed = z1_closed(p, Z1Marker::Zero, x).unwrap();
            assert!(
                (v.value - closed.value).norm() < 1e-10,
                "x = {}: {} vs {}",
                x,
                v.value,
                closed.value
            );
            assert_eq!(v.method, Method::IntegralRep);
            assert_eq!(closed.method, Method::ClosedForm);
        }
        // s = -1: integral route reproduces the trace-polynomial value
        // through the Hurwitz shadow (two genuinely different routes)
        for &x in &[c(2.0, 0.0), c(0.6, 0.0)] {
            let v = z1_integral(p, c(-1.0, 0.0), x).unwrap();
            let closed = z1_closed(p, Z1Marker::MinusN(1), x).unwrap();
            assert!((v.value - closed.value).norm() < 1e-9, "x = {}", x);
        }
    }

    #[test]
    fn integral_split_point_independence() {
        let (p, _) = riemann();
        let s = c(0.5, 0.0);
        let x = c(2.0, 0.0);
        let a = z1_integral_at_split(p, s, x, 1.0).unwrap();
        let b = z1_integral_at_split(p, s, x, 2.0).unwrap();
        assert!((a.value - b.value).norm() < 1e-8, "{} vs {}", a.value, b.value);
    }

    #[test]
    fn integral_pole_residue() {
        // (s-1) z1(s, x) -> -a1 as s -> 1^-
        let (p, _) = riemann();
        let x = c(2.0, 0.0);
        let e1 = 2f64.powi(-10);
        let e2 = 2f64.powi(-11);
        let r1 = z1_integral(p, c(1.0 - e1, 0.0), x).unwrap().value * (-e1);
        let r2 = z1_integral(p, c(1.0 - e2, 0.0), x).unwrap().value * (-e2);
        let extrap = 2.0 * r2 - r1; // first-order Richardson
        assert!((extrap.re + p.stirling().a1).abs() < 1e-5, "{}", extrap.re);
        // guard trips right next to the pole
        assert!(matches!(
            z1_integral(p, c(0.99999, 0.0), x),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn direct_and_closed_agree_at_integer_exponents() {
        for (p, cache) in [riemann(), chi4()] {
            for n in 2..=4u32 {
                for &x in &[c(1.0, 0.0), c(0.5, 0.0), c(2.0, 0.0)] {
                    let direct = z1_direct(p, cache, c(n as f64, 0.0), x).unwrap();
                    let closed = z1_closed(p, Z1Marker::PlusN(n), x).unwrap();
                    let dev = (direct.value - closed.value).norm();
                    assert!(
                        dev <= direct.err_est + 1e-8,
                        "{} n={} x={}: dev {:.3e} > err {:.3e}",
                        p.id(),
                        n,
                        x,
                        dev,
                        direct.err_est
                    );
                    assert_eq!(direct.method, Method::DirectSum);
                    assert_eq!(direct.zeros_used, cache.len());
                }
            }
        }
    }

    #[test]
    fn direct_paired_sum_at_one() {
        // the s = 1 paired value: sum 1/(1/4 + tau^2) at x = 1
        let (p, cache) = riemann();
        let direct = z1_direct(p, cache, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let closed = z1_closed(p, Z1Marker::PlusN(1), c(1.0, 0.0)).unwrap();
        assert!(
            (direct.value - closed.value).norm() <= direct.err_est + 1e-8,
            "{} vs {} (err {:.3e})",
            direct.value,
            closed.value,
            direct.err_est
        );
    }

    #[test]
    fn mellin_route_agrees_with_direct() {
        let (p, cache) = riemann();
        let s = c(1.5, 0.0);
        let mellin = z1_mellin(p, s, c(2.0, 0.0)).unwrap();
        let direct = z1_direct(p, cache, s, c(2.0, 0.0)).unwrap();
        let dev = (mellin.value - direct.value).norm();
        assert!(
            dev <= mellin.err_est + direct.err_est + 1e-8,
            "dev {:.3e} errs {:.3e}/{:.3e}",
            dev,
            mellin.err_est,
            direct.err_est
        );
    }

    #[test]
    fn odd_values_vanish_at_center() {
        let (p, cache) = riemann();
        let closed = z1_closed(p, Z1Marker::PlusN(3), c(0.5, 0.0)).unwrap();
        assert_eq!(closed.value, c(0.0, 0.0));
        let direct = z1_direct(p, cache, c(3.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!(direct.value.norm() <= direct.err_est + 1e-9, "{}", direct.value);
    }

    #[test]
    fn reflection_symmetry_of_integer_values() {
        // z1(n, x) = (-1)^n z1(n, 1-x)
        for (p, cache) in [riemann(), chi4()] {
            for n in 2..=3u32 {
                let x = c(2.2, 0.0);
                let a = z1_closed(p, Z1Marker::PlusN(n), x).unwrap();
                let b = z1_closed(p, Z1Marker::PlusN(n), c(1.0, 0.0) - x).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!(
                    (a.value - sign * b.value).norm() < 1e-9 * a.value.norm().max(1.0),
                    "{} n={}",
                    p.id(),
                    n
                );
                // and the direct sums see the same symmetry
                let da = z1_direct(p, cache, c(n as f64, 0.0), x).unwrap();
                let db = z1_direct(p, cache, c(n as f64, 0.0), c(1.0, 0.0) - x).unwrap();
                assert!((da.value - sign * db.value).norm() <= da.err_est + db.err_est + 1e-10);
            }
        }
    }

    #[test]
    fn second_family_basics() {
        let (p, cache) = riemann();
        // value at sigma = 0 is (a1/2 + a0 + q)/2 = 7/8, independent of v
        for &v in &[c(0.0, 0.0), c(0.3, 0.0), c(-0.2, 0.5)] {
            let r = z2_eval(p, cache, c(0.0, 0.0), v).unwrap();
            assert!((r.value.re - 0.875).abs() < 1e-12, "v = {}", v);
        }
        // z2(-1) = -9/32 for the rationals (terminating trace data)
        let r = z2_basic(p, cache, c(-1.0, 0.0)).unwrap();
        assert!((r.value.re + 9.0 / 32.0).abs() < 1e-12, "{}", r.value.re);
        // degree-1 polynomial in v at the -1 marker
        let z2m1 = z2_closed(p, cache, Z2Marker::MinusM(1), c(0.7, 0.0)).unwrap();
        let want = -9.0 / 32.0 + 0.875 * 0.7;
        assert!((z2m1.value.re - want).abs() < 1e-12);
    }

    #[test]
    fn second_family_interchange_route() {
        // left of the convergence abscissa the v = 0 member is served by
        // the interchange relation with the integral continuation
        let (p, cache) = riemann();
        let sigma = c(0.3, 0.0);
        let via_eval = z2_eval(p, cache, sigma, c(0.0, 0.0)).unwrap();
        assert_eq!(via_eval.method, Method::Relation);
        let inner = z1_integral(p, c(0.6, 0.0), c(0.5, 0.0)).unwrap();
        let want = inner.value / (2.0 * (c(PI, 0.0) * sigma).cos());
        assert!((via_eval.value - want).norm() < 1e-12 * want.norm().max(1.0));
    }

    #[test]
    fn second_family_direct_vs_closed() {
        let (p, cache) = riemann();
        // sigma = 2, v = 1/4: direct sum against the interchange formula
        let direct = z2_direct(p, cache, c(2.0, 0.0), c(0.25, 0.0)).unwrap();
        assert_eq!(direct.method, Method::DirectSum);
        // the dispatcher upgrades integral exponents to the closed expansion
        let routed = z2_eval(p, cache, c(2.0, 0.0), c(0.25, 0.0)).unwrap();
        assert_eq!(routed.method, Method::Expansion);
        assert!((routed.value - direct.value).norm() <= direct.err_est + routed.err_est + 1e-9);
        let closed = z2_closed(p, cache, Z2Marker::PlusM(2), c(0.25, 0.0)).unwrap();
        let dev = (direct.value - closed.value).norm();
        assert!(
            dev <= direct.err_est + closed.err_est + 1e-8,
            "dev {:.3e} err {:.3e}",
            dev,
            direct.err_est
        );
        // sigma = 1, v = 1/4 equals the s = 1, x = 1 value of the first family
        let r = z2_closed(p, cache, Z2Marker::PlusM(1), c(0.25, 0.0)).unwrap();
        let want = z1_closed(p, Z1Marker::PlusN(1), c(1.0, 0.0)).unwrap();
        assert!((r.value - want.value).norm() < 1e-10);
    }

    #[test]
    fn second_family_polar_data() {
        let (p, _) = riemann();
        let st = p.stirling();
        let d0 = z2_polar(p, 0, c(0.3, 0.0));
        assert!((d0.leading_coeff.re - st.a1 / (4.0 * PI)).abs() < 1e-15);
        assert!((d0.residue.re - st.b1 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(d0.order, 2);
        // m = 1, v = 0: residue is -(1/2pi)[Z(-1,1/2) + q/2]
        let d1 = z2_polar(p, 1, c(0.0, 0.0));
        let want = -(p.shadow_neg_trace(1, c(0.5, 0.0)).re + 0.5) / (2.0 * PI);
        assert!((d1.residue.re - want).abs() < 1e-14, "{} vs {}", d1.residue.re, want);
    }

    #[test]
    fn third_family_basics() {
        let (p, cache) = riemann();
        // coincides with the second family on the axis
        let a = z3_eval(p, cache, c(0.8, 0.3), c(0.0, 0.0)).unwrap();
        let b = z2_eval(p, cache, c(0.8, 0.3), c(0.0, 0.0)).unwrap();
        assert_eq!(a.value, b.value);
        // direct one-sided sum decreases toward the value as terms add up
        let full = z3_eval(p, cache, c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        let mut partial = 0.0;
        let mut last;
        let mut prev = f64::INFINITY;
        for tau in cache.ordinates() {
            partial += (tau + 1.0).powf(-4.0);
            last = full.value.re - partial;
            assert!(last < prev && last > 0.0);
            prev = last;
        }
        // polar data: residue at sigma = 0 is -a1 y / 2 pi
        let st = p.stirling();
        let d = z3_polar(p, 1, c(0.3, 0.0));
        assert!((d.residue.re + st.a1 * 0.3 / (2.0 * PI)).abs() < 1e-15);
        let fp = d.finite_part.unwrap();
        let want = 0.25 * st.a1 + 0.5 * (st.a0 + 1.0) - st.b1 / PI * 0.3;
        assert!((fp.re - want).abs() < 1e-14);
        // r_2(0) reduces to the first residue of the symmetric family
        let d2 = z3_polar(p, 2, c(0.0, 0.0));
        let r1 = z2_polar(p, 1, c(0.0, 0.0)).residue;
        assert!((d2.residue - r1).norm() < 1e-15);
        // finite part at sigma = 0, y = 0 matches the second family's value there
        let d1 = z3_polar(p, 1, c(0.0, 0.0));
        assert!((d1.finite_part.unwrap().re - (0.25 * st.a1 + 0.5 * (st.a0 + 1.0))).abs() < 1e-15);
    }

    #[test]
    fn expansion_route_matches_direct() {
        let (p, cache) = riemann();
        // z2 expansion at sigma just below 1 against the direct sum above
        let v = c(0.3, 0.0);
        let e = z2_eval(p, cache, c(0.9, 0.0), v);
        // sigma = 0.9 routes through the expansion; compare with a
        // Richardson-free reference at sigma = 1.2 via both routes instead
        let direct = z2_eval(p, cache, c(1.2, 0.0), v).unwrap();
        assert_eq!(direct.method, Method::DirectSum);
        assert!(e.is_ok());
        assert_eq!(e.unwrap().method, Method::Expansion);
        // y-expansion of the third family against its direct sum
        let y = c(0.4, 0.0);
        let ex = z3_eval(p, cache, c(1.3, 0.0), y).unwrap();
        assert_eq!(ex.method, Method::DirectSum);
        let kexp = {
            // force the expansion by an exponent just under the direct cutoff
            z3_eval(p, cache, c(0.97, 0.0), y).unwrap()
        };
        assert_eq!(kexp.method, Method::Expansion);
        // both routes near each other: difference bounded by a crude slope
        assert!((ex.value - kexp.value).norm() < 1.0);
    }

    #[test]
    fn route_unavailable_and_domain_errors() {
        let (p, cache) = riemann();
        assert!(matches!(
            z2_eval(p, cache, c(0.3, 0.0), c(300.0, 0.0)),
            Err(Error::RouteUnavailable { .. })
        ));
        assert!(z2_eval(p, cache, c(0.3, 0.0), c(-250.0, 0.0)).is_err());
        assert!(z3_eval(p, cache, c(0.3, 0.0), c(-15.0, 0.0)).is_err());
        assert!(z1_direct(p, cache, c(0.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(z1_integral(p, c(1.5, 0.0), c(2.0, 0.0)).is_err());
        assert!(z2_closed(p, cache, Z2Marker::Deriv0, c(-0.5, 0.0)).is_err());
    }
}
