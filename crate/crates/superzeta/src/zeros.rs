//! Location, caching and completeness-checking of the nontrivial zero
//! ordinates tau_k on the critical line.
//!
//! Zeros are found as sign changes of the real function t -> Xi(1/2 + i t)
//! (evaluated in a rescaled form immune to underflow) on a uniform grid,
//! then bisected to enclosures of width <= 1e-9. Completeness is certified
//! by continuous phase tracking of Xi along the path 2 -> 2 + iT -> 1/2 + iT;
//! by the functional-equation and reflection symmetries the accumulated
//! phase equals pi times the number of zeros with 0 < tau < T.
//!
//! Scan intervals partition [0, T_max] and could be processed concurrently;
//! the assembled cache is immutable afterwards. All zeros are treated as
//! simple; a sign-change model failure surfaces as a count mismatch.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::primary::PrimaryFunction;
use crate::quad::{gauss_legendre, integrate_geometric_tail};
use crate::{c, C};

/// Target enclosure width for bisection.
pub const ENCLOSURE_WIDTH: f64 = 1e-9;

/// Default scan step; halved on count mismatches.
pub const DEFAULT_SCAN_STEP: f64 = 0.05;

/// Ordered enclosures for the zero ordinates of one primary function.
#[derive(Debug, Clone)]
pub struct ZeroCache {
    primary_id: String,
    enclosures: Vec<(f64, f64)>,
    t_max: f64,
    width_bound: f64,
}

impl ZeroCache {
    /// Assemble a cache from enclosures, checking the structural invariants:
    /// positive, disjoint, increasing intervals.
    pub fn from_enclosures(
        primary_id: &str,
        enclosures: Vec<(f64, f64)>,
        t_max: f64,
    ) -> Result<Self> {
        let mut width_bound: f64 = 0.0;
        let mut prev_hi = 0.0f64;
        for (i, &(lo, hi)) in enclosures.iter().enumerate() {
            if !(lo > 0.0 && hi > lo && lo >= prev_hi) {
                return Err(Error::Domain {
                    op: "zero_cache",
                    detail: format!("enclosure {} = ({}, {}) not ordered/disjoint", i, lo, hi),
                });
            }
            width_bound = width_bound.max(hi - lo);
            prev_hi = hi;
        }
        Ok(ZeroCache {
            primary_id: primary_id.to_string(),
            enclosures,
            t_max,
            width_bound,
        })
    }

    pub fn primary_id(&self) -> &str {
        &self.primary_id
    }

    pub fn len(&self) -> usize {
        self.enclosures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.enclosures.is_empty()
    }

    /// Certified height: all zeros with tau <= t_max are enclosed.
    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn width_bound(&self) -> f64 {
        self.width_bound
    }

    pub fn enclosures(&self) -> &[(f64, f64)] {
        &self.enclosures
    }

    /// Midpoint ordinates tau_k.
    pub fn ordinates(&self) -> impl Iterator<Item = f64> + '_ {
        self.enclosures.iter().map(|&(lo, hi)| 0.5 * (lo + hi))
    }

    pub fn first_ordinate(&self) -> Option<f64> {
        self.enclosures.first().map(|&(lo, hi)| 0.5 * (lo + hi))
    }

    /// Number of cached zeros with ordinate <= t.
    pub fn count_below(&self, t: f64) -> usize {
        self.enclosures
            .iter()
            .take_while(|&&(lo, hi)| 0.5 * (lo + hi) <= t)
            .count()
    }

    /// Line-oriented text serialization:
    /// `superzeta-zeros v1 <primary_id> <T_max> <count>` then `k lo hi`
    /// with 17 significant digits (bit-exact f64 round trip).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "superzeta-zeros v1 {} {:.16e} {}",
            self.primary_id,
            self.t_max,
            self.enclosures.len()
        );
        for (k, &(lo, hi)) in self.enclosures.iter().enumerate() {
            let _ = writeln!(out, "{} {:.16e} {:.16e}", k + 1, lo, hi);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::CacheFormat {
            line: 1,
            detail: "empty file".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "superzeta-zeros" || fields[1] != "v1" {
            return Err(Error::CacheFormat {
                line: 1,
                detail: format!("bad header {:?}", header),
            });
        }
        let primary_id = fields[2].to_string();
        let t_max: f64 = fields[3].parse().map_err(|_| Error::CacheFormat {
            line: 1,
            detail: "bad T_max".into(),
        })?;
        let count: usize = fields[4].parse().map_err(|_| Error::CacheFormat {
            line: 1,
            detail: "bad count".into(),
        })?;
        let mut enclosures = Vec::with_capacity(count);
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::CacheFormat {
                    line: idx + 1,
                    detail: format!("expected `k lo hi`, got {:?}", line),
                });
            }
            let k: usize = f[0].parse().map_err(|_| Error::CacheFormat {
                line: idx + 1,
                detail: "bad index".into(),
            })?;
            if k != enclosures.len() + 1 {
                return Err(Error::CacheFormat {
                    line: idx + 1,
                    detail: format!("index {} out of sequence", k),
                });
            }
            let lo: f64 = f[1].parse().map_err(|_| Error::CacheFormat {
                line: idx + 1,
                detail: "bad lo".into(),
            })?;
            let hi: f64 = f[2].parse().map_err(|_| Error::CacheFormat {
                line: idx + 1,
                detail: "bad hi".into(),
            })?;
            enclosures.push((lo, hi));
        }
        if enclosures.len() != count {
            return Err(Error::CacheFormat {
                line: 1,
                detail: format!("header count {} != {} lines", count, enclosures.len()),
            });
        }
        ZeroCache::from_enclosures(&primary_id, enclosures, t_max)
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        ZeroCache::parse(&text)
    }
}

/// Outcome of the completeness check.
#[derive(Debug, Clone, Copy)]
pub struct CountCertificate {
    pub expected: i64,
    pub found: usize,
    /// Raw accumulated phase divided by pi (should be near an integer).
    pub phase_over_pi: f64,
}

/// Locate all zeros with ordinate <= t_max, with the default scan step and
/// up to three grid-density escalations if the phase count disagrees.
pub fn locate_zeros(p: &PrimaryFunction, t_max: f64) -> Result<ZeroCache> {
    if t_max < 10.0 {
        return Err(Error::Domain {
            op: "locate_zeros",
            detail: format!("T_max must be >= 10, got {}", t_max),
        });
    }
    let mut step = DEFAULT_SCAN_STEP;
    let mut last_err = None;
    for _ in 0..4 {
        match locate_zeros_with_step(p, t_max, step) {
            Ok(cache) => return Ok(cache),
            Err(e @ Error::CountMismatch { .. }) => {
                last_err = Some(e);
                step *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

/// Single scan pass at a fixed grid step, bisection to width <= 1e-9, and
/// phase-count verification at t_max.
pub fn locate_zeros_with_step(p: &PrimaryFunction, t_max: f64, step: f64) -> Result<ZeroCache> {
    let mut t_end = t_max;
    let mut f_end = p.xi_critical_line(t_end)?;
    // keep the certification height off an exact zero
    while f_end == 0.0 || f_end.abs() < 1e-280 {
        t_end += step * 0.37;
        f_end = p.xi_critical_line(t_end)?;
    }

    let mut brackets: Vec<(f64, f64)> = Vec::new();
    let mut t_prev = 0.0f64;
    let mut f_prev = p.xi_critical_line(t_prev)?;
    if f_prev == 0.0 {
        t_prev = 1e-6;
        f_prev = p.xi_critical_line(t_prev)?;
    }
    let n_grid = (t_end / step).ceil() as usize;
    for i in 1..=n_grid {
        let t = (i as f64 * step).min(t_end);
        let ft = p.xi_critical_line(t)?;
        if ft == 0.0 {
            // exact grid hit: bracket by a tiny nudge
            let eps = step * 1e-6;
            brackets.push((t - eps, t + eps));
            t_prev = t + eps;
            f_prev = p.xi_critical_line(t_prev)?;
            continue;
        }
        if f_prev.signum() != ft.signum() {
            brackets.push((t_prev, t));
        }
        t_prev = t;
        f_prev = ft;
    }

    let mut enclosures = Vec::with_capacity(brackets.len());
    for (lo0, hi0) in brackets {
        let (mut lo, mut hi) = (lo0, hi0);
        let mut flo = p.xi_critical_line(lo)?;
        while hi - lo > ENCLOSURE_WIDTH {
            let mid = 0.5 * (lo + hi);
            let fm = p.xi_critical_line(mid)?;
            if fm == 0.0 {
                lo = mid - 0.25 * ENCLOSURE_WIDTH;
                hi = mid + 0.25 * ENCLOSURE_WIDTH;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        enclosures.push((lo, hi));
    }

    let (expected, _) = count_zeros_by_phase(p, t_end)?;
    let deficit = expected - enclosures.len() as i64;
    if deficit > 0 {
        // pairs of zeros closer than the grid step leave no net sign change;
        // localize them by bisecting on subinterval phase counts
        recover_missing(p, 0.0, 0, t_end, expected, &mut enclosures, 0)?;
        enclosures.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    }

    let cache = ZeroCache::from_enclosures(p.id(), enclosures, t_end)?;
    let cert = verify_count(p, &cache)?;
    if cert.expected != cert.found as i64 {
        return Err(Error::CountMismatch {
            expected: cert.expected,
            found: cert.found,
        });
    }
    Ok(cache)
}

/// Recursively recover zeros hidden inside grid cells: split intervals whose
/// phase count exceeds the number of enclosures found, and fine-scan once an
/// interval is narrow enough to separate the pair.
fn recover_missing(
    p: &PrimaryFunction,
    lo: f64,
    n_lo: i64,
    hi: f64,
    n_hi: i64,
    enclosures: &mut Vec<(f64, f64)>,
    depth: u32,
) -> Result<()> {
    let found = enclosures
        .iter()
        .filter(|&&(a, b)| 0.5 * (a + b) > lo && 0.5 * (a + b) <= hi)
        .count() as i64;
    let deficit = (n_hi - n_lo) - found;
    if deficit <= 0 {
        return Ok(());
    }
    if hi - lo < 0.02 {
        // narrow window: scan finely for the sign-change pair
        let fine = (hi - lo) / 512.0;
        let mut t_prev = lo;
        let mut f_prev = p.xi_critical_line(t_prev)?;
        let mut new_brackets = Vec::new();
        for i in 1..=512 {
            let t = lo + i as f64 * fine;
            let ft = p.xi_critical_line(t)?;
            if f_prev.signum() != ft.signum() {
                new_brackets.push((t_prev, t));
            }
            t_prev = t;
            f_prev = ft;
        }
        let fresh: Vec<(f64, f64)> = new_brackets
            .into_iter()
            .filter(|&(a, b)| {
                let mid = 0.5 * (a + b);
                enclosures
                    .iter()
                    .all(|&(c, d)| mid < c || mid > d)
            })
            .collect();
        if fresh.len() as i64 != deficit {
            return Err(Error::CountMismatch {
                expected: n_hi - n_lo,
                found: (found + fresh.len() as i64).max(0) as usize,
            });
        }
        for (a, b) in fresh {
            let (mut blo, mut bhi) = (a, b);
            let mut flo = p.xi_critical_line(blo)?;
            while bhi - blo > ENCLOSURE_WIDTH {
                let mid = 0.5 * (blo + bhi);
                let fm = p.xi_critical_line(mid)?;
                if fm == 0.0 {
                    blo = mid - 0.25 * ENCLOSURE_WIDTH;
                    bhi = mid + 0.25 * ENCLOSURE_WIDTH;
                    break;
                }
                if fm.signum() == flo.signum() {
                    blo = mid;
                    flo = fm;
                } else {
                    bhi = mid;
                }
            }
            enclosures.push((blo, bhi));
        }
        return Ok(());
    }
    if depth > 40 {
        return Err(Error::Convergence {
            op: "locate_zeros",
            detail: format!("missing-zero recovery stalled in ({}, {})", lo, hi),
        });
    }
    let mut mid = 0.5 * (lo + hi);
    let mut n_mid = count_zeros_by_phase(p, mid);
    for _ in 0..3 {
        if n_mid.is_ok() {
            break;
        }
        // nudge off a possible zero at the sampling height
        mid += (hi - lo) * 1e-3;
        n_mid = count_zeros_by_phase(p, mid);
    }
    let (n_mid, _) = n_mid?;
    recover_missing(p, lo, n_lo, mid, n_mid, enclosures, depth + 1)?;
    recover_missing(p, mid, n_mid, hi, n_hi, enclosures, depth + 1)
}

/// Continuous-phase zero count: number of zeros with 0 < tau < t, from the
/// accumulated argument of Xi along 2 -> 2 + it -> 1/2 + it divided by pi.
pub fn count_zeros_by_phase(p: &PrimaryFunction, t: f64) -> Result<(i64, f64)> {
    let start = c(2.0, 0.0);
    let xi2 = p.xi_value(start)?;
    if !(xi2.re > 0.0) || xi2.im.abs() > 1e-10 * xi2.re.abs() {
        return Err(Error::NonFinite {
            op: "count_zeros_by_phase",
            detail: format!("Xi(2) = {} not positive real", xi2),
        });
    }
    let mut total = 0.0f64;
    total += phase_delta(p, start, c(2.0, t), 0)?;
    total += phase_delta(p, c(2.0, t), c(0.5, t), 0)?;
    let n = (total / std::f64::consts::PI).round();
    let slack = (total / std::f64::consts::PI - n).abs();
    if slack > 0.25 {
        return Err(Error::Convergence {
            op: "count_zeros_by_phase",
            detail: format!(
                "phase/pi = {} not near an integer",
                total / std::f64::consts::PI
            ),
        });
    }
    Ok((n as i64, total / std::f64::consts::PI))
}

/// Phase change of Xi between two points, refined until each step is small.
/// Computed as Im(w(z1) - w(z0)) + arg(L(z1)/L(z0)) with w the continuous
/// log-prefactor, so no over/underflow at large heights.
fn phase_delta(p: &PrimaryFunction, z0: C, z1: C, depth: u32) -> Result<f64> {
    let w0 = p.completed_log_prefactor(z0)?;
    let w1 = p.completed_log_prefactor(z1)?;
    let l0 = p.l_value(z0)?;
    let l1 = p.l_value(z1)?;
    let dw = (w1 - w0).im;
    let dl = (l1 / l0).arg();
    if (dw.abs() + dl.abs()) <= 0.9 {
        return Ok(dw + dl);
    }
    if depth >= 48 {
        return Err(Error::Convergence {
            op: "count_zeros_by_phase",
            detail: format!("phase refinement stalled between {} and {}", z0, z1),
        });
    }
    let mid = 0.5 * (z0 + z1);
    Ok(phase_delta(p, z0, mid, depth + 1)? + phase_delta(p, mid, z1, depth + 1)?)
}

/// Completeness check of a cache: phase count at its certified height must
/// equal the number of stored enclosures.
pub fn verify_count(p: &PrimaryFunction, cache: &ZeroCache) -> Result<CountCertificate> {
    let (expected, phase_over_pi) = count_zeros_by_phase(p, cache.t_max())?;
    let cert = CountCertificate {
        expected,
        found: cache.len(),
        phase_over_pi,
    };
    if cert.expected != cert.found as i64 {
        return Err(Error::CountMismatch {
            expected: cert.expected,
            found: cert.found,
        });
    }
    Ok(cert)
}

/// Tail estimate for a truncated sum over zero ordinates.
#[derive(Debug, Clone, Copy)]
pub struct TailEstimate {
    pub estimate: C,
    pub bound: f64,
}

/// Smooth-density estimate of sum_{tau_k > T} tau_k^{-s}, Re s > 1:
/// the integral of tau^{-s} against (a1/pi)(log tau + b1/a1) dtau in closed
/// form, with a heuristic bound covering omitted density corrections and the
/// oscillatory remainder (factor 2 of the first omitted smooth term).
pub fn tail_sum_estimate(p: &PrimaryFunction, s: C, t: f64) -> Result<TailEstimate> {
    if s.re <= 1.0 {
        return Err(Error::Domain {
            op: "tail_sum_estimate",
            detail: format!("Re s must exceed 1, got {}", s),
        });
    }
    let st = p.stirling();
    let c_p = st.b1 / st.a1;
    let sm1 = s - 1.0;
    // int_T^inf tau^{-s}(log tau + c) dtau = T^{1-s}[(log T + c)/(s-1) + 1/(s-1)^2]
    let t_pow = ((C::new(1.0, 0.0) - s) * t.ln()).exp();
    let estimate =
        st.a1 / std::f64::consts::PI * t_pow * ((t.ln() + c_p) / sm1 + 1.0 / (sm1 * sm1));
    let density_corr = (st.a0.abs() + p.q() as f64 + 1.0) / std::f64::consts::PI;
    let t_mag = t.powf(-s.re);
    let bound = 2.0 * (t_mag + density_corr * t_mag / (s.re * t));
    Ok(TailEstimate { estimate, bound })
}

/// Numeric tail of sum_{tau_k > T} f(tau_k) for a smooth rapidly decaying f:
/// the integral of f against the exact smooth density, endpoint-corrected by
/// the counting fluctuation S(T) read off the cache. Returns (value, err_est).
pub fn zero_sum_tail<F: FnMut(f64) -> C>(
    p: &PrimaryFunction,
    cache: &ZeroCache,
    mut f: F,
) -> Result<(C, f64)> {
    let t = cache.t_max();
    let mut bad = false;
    {
        let mut integrand = |tau: f64| -> C {
            match p.zero_density(tau) {
                Ok(rho) => rho * f(tau),
                Err(_) => {
                    bad = true;
                    C::new(0.0, 0.0)
                }
            }
        };
        let quad = integrate_geometric_tail(&mut integrand, t, 1.7, 1e-16, 120);
        if bad {
            return Err(Error::NonFinite {
                op: "zero_sum_tail",
                detail: "density evaluation failed".into(),
            });
        }
        // Stieltjes integration by parts: boundary term -f(T) S(T), with
        // S(T) = N(T) - smooth counting taken from the cache.
        let s_at_t = cache.len() as f64 - p.smooth_counting(t)?;
        let boundary = -f(t) * s_at_t;
        let f_t = f(t).norm();
        // residual -int f' S dtau with S = O(1), mean zero
        let err = 1.5 * f_t + 2.0 * quad.err_est;
        Ok((quad.value + boundary, err))
    }
}

/// Integral of f against the smooth zero density over [t0, t1].
pub fn density_integral<F: FnMut(f64) -> C>(
    p: &PrimaryFunction,
    t0: f64,
    t1: f64,
    mut f: F,
) -> Result<C> {
    let mut integrand = |tau: f64| -> C {
        let rho = p.zero_density(tau).unwrap_or(f64::NAN);
        rho * f(tau)
    };
    Ok(gauss_legendre(&mut integrand, t0, t1))
}
