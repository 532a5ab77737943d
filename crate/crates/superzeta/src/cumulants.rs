//! Generalized Stieltjes cumulants g_n: the coefficients of
//! log[(x-1)^q L(x)] = sum (-1)^{n-1}/n! g_n (x-1)^n around x = 1.
//!
//! Two providers: numeric extraction through a Cauchy circle of the
//! regularized logarithmic derivative (radius 0.4 by default, 2^10 nodes),
//! and the closed forms available per instance class (g_0 always; g_1 for
//! odd characters, the rationals, and quadratic fields over them).

use crate::error::{Error, Result};
use crate::primary::PrimaryFunction;
use crate::specfun::factorial_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Numeric,
}

/// Cumulants g_0..g_N with per-entry provenance.
#[derive(Debug, Clone)]
pub struct CumulantSequence {
    pub primary_id: String,
    pub g: Vec<f64>,
    pub provenance: Vec<Provenance>,
}

impl CumulantSequence {
    pub fn get(&self, n: usize) -> Option<f64> {
        self.g.get(n).copied()
    }
}

/// Default Cauchy-circle radius and node count for the extraction.
pub const DEFAULT_RADIUS: f64 = 0.4;
pub const DEFAULT_NODES: usize = 1 << 10;

/// Numeric cumulants up to index n_max (<= 12) from a Cauchy circle of the
/// given radius around x = 1.
pub fn cumulants_numeric_with_radius(
    p: &PrimaryFunction,
    n_max: usize,
    radius: f64,
) -> Result<CumulantSequence> {
    if n_max > 12 {
        return Err(Error::IndexOutOfRange {
            op: "cumulants_numeric",
            index: n_max,
            max: 12,
        });
    }
    let taylor = p.extract_log_taylor(radius, DEFAULT_NODES, n_max + 1)?;
    let mut g = Vec::with_capacity(n_max + 1);
    for (n, t) in taylor.iter().enumerate() {
        // g_n = (-1)^{n-1} n! t_n
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        g.push(sign * factorial_f64(n) * t);
    }
    Ok(CumulantSequence {
        primary_id: p.id().to_string(),
        g,
        provenance: vec![Provenance::Numeric; n_max + 1],
    })
}

/// Numeric cumulants at the default radius.
pub fn cumulants_numeric(p: &PrimaryFunction, n_max: usize) -> Result<CumulantSequence> {
    cumulants_numeric_with_radius(p, n_max, DEFAULT_RADIUS)
}

/// The closed-form entries available for this instance (g_0, sometimes g_1).
pub fn cumulants_closed(p: &PrimaryFunction) -> CumulantSequence {
    let cc = p.closed_cumulants();
    let mut g = Vec::new();
    let mut provenance = Vec::new();
    if let Some(g0) = cc.g0 {
        g.push(g0);
        provenance.push(Provenance::ClosedForm);
        if let Some(g1) = cc.g1 {
            g.push(g1);
            provenance.push(Provenance::ClosedForm);
        }
    }
    CumulantSequence {
        primary_id: p.id().to_string(),
        g,
        provenance,
    }
}

/// Cumulants with closed forms where available and numeric entries beyond.
pub fn cumulants(p: &PrimaryFunction, n_max: usize) -> Result<CumulantSequence> {
    let numeric = cumulants_numeric(p, n_max)?;
    let closed = cumulants_closed(p);
    let mut g = numeric.g;
    let mut provenance = numeric.provenance;
    for (n, &value) in closed.g.iter().enumerate() {
        if n <= n_max {
            g[n] = value;
            provenance[n] = Provenance::ClosedForm;
        }
    }
    Ok(CumulantSequence {
        primary_id: p.id().to_string(),
        g,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{z1_closed, Z1Marker};
    use crate::primary::{build_primary, PrimarySpec};
    use crate::specfun::EULER_GAMMA;
    use crate::{c, C};
    use std::sync::OnceLock;

    fn riemann() -> &'static PrimaryFunction {
        static P: OnceLock<PrimaryFunction> = OnceLock::new();
        P.get_or_init(|| build_primary(PrimarySpec::Riemann).unwrap())
    }

    #[test]
    fn riemann_cumulants() {
        let seq = cumulants_numeric(riemann(), 5).unwrap();
        assert!(seq.g[0].abs() < 1e-11);
        assert!((seq.g[1] - EULER_GAMMA).abs() < 1e-10, "{}", seq.g[1]);
        // g_2 = 2 gamma_1 + gamma^2 (second cumulant of the Stieltjes
        // expansion of (x-1) zeta(x), from the log of its Taylor series)
        let gamma_1 = -0.072_815_845_483_676_72;
        let want = 2.0 * gamma_1 + EULER_GAMMA * EULER_GAMMA;
        assert!((seq.g[2] - want).abs() < 1e-9, "{} vs {}", seq.g[2], want);
    }

    #[test]
    fn numeric_matches_closed_where_both_exist() {
        for spec in [
            PrimarySpec::Riemann,
            PrimarySpec::Dirichlet { discriminant: -3 },
            PrimarySpec::Dirichlet { discriminant: -4 },
            PrimarySpec::Dirichlet { discriminant: 5 },
            PrimarySpec::DedekindQuadratic { discriminant: -4 },
        ] {
            let p = build_primary(spec).unwrap();
            let numeric = cumulants_numeric(&p, 3).unwrap();
            let closed = cumulants_closed(&p);
            for (n, &g_closed) in closed.g.iter().enumerate() {
                assert!(
                    (numeric.g[n] - g_closed).abs() <= 1e-8,
                    "{} g_{}: numeric {} vs closed {}",
                    p.id(),
                    n,
                    numeric.g[n],
                    g_closed
                );
            }
        }
    }

    #[test]
    fn circle_radius_independence() {
        let a = cumulants_numeric_with_radius(riemann(), 6, 0.4).unwrap();
        let b = cumulants_numeric_with_radius(riemann(), 6, 0.3).unwrap();
        for n in 0..=6 {
            assert!((a.g[n] - b.g[n]).abs() < 1e-9, "g_{}: {} vs {}", n, a.g[n], b.g[n]);
        }
    }

    #[test]
    fn quadratic_cumulants_add_up() {
        let zeta = riemann();
        let beta = build_primary(PrimarySpec::Dirichlet { discriminant: -4 }).unwrap();
        let k = build_primary(PrimarySpec::DedekindQuadratic { discriminant: -4 }).unwrap();
        let gz = cumulants_numeric(zeta, 5).unwrap();
        let gb = cumulants_numeric(&beta, 5).unwrap();
        let gk = cumulants_numeric(&k, 5).unwrap();
        for n in 0..=5 {
            assert!(
                (gk.g[n] - (gz.g[n] + gb.g[n])).abs() < 1e-8,
                "g_{}: {} vs {}",
                n,
                gk.g[n],
                gz.g[n] + gb.g[n]
            );
        }
    }

    #[test]
    fn table_hooks_through_the_first_family() {
        // z1'(0, 1) - (-Z'(0, 1)) = g_0 and z1(n, 1) - (-Z(n, 1)) = g_n/(n-1)!
        let p = riemann();
        let x = c(1.0, 0.0);
        let seq = cumulants_numeric(p, 4).unwrap();
        let markers = p.shadow_markers(x, 0).unwrap();
        let d0 = z1_closed(p, Z1Marker::Deriv0, x).unwrap();
        let dev0 = (d0.value - (-markers.s_deriv_at_0) - C::from(seq.g[0])).norm();
        assert!(dev0 < 1e-8, "{}", dev0);
        for n in 2..=4u32 {
            let zn = z1_closed(p, Z1Marker::PlusN(n), x).unwrap();
            let shadow = p.shadow_zeta(c(n as f64, 0.0), x).unwrap();
            let want = seq.g[n as usize] / factorial_f64(n as usize - 1);
            let dev = (zn.value + shadow - C::from(want)).norm();
            assert!(dev < 1e-8, "n={}: {}", n, dev);
        }
    }
}
