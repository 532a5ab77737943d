//! Property tests: randomized functional identities and exact round-trips.

use proptest::prelude::*;
use std::sync::OnceLock;

use superzeta::families::{z1_closed, z1_direct, z1_integral, Z1Marker};
use superzeta::primary::{build_primary, gamma_factor, PrimaryFunction, PrimarySpec};
use superzeta::specfun::hurwitz_zeta;
use superzeta::zeros::{locate_zeros, ZeroCache};
use superzeta::c;

fn riemann() -> &'static PrimaryFunction {
    static P: OnceLock<PrimaryFunction> = OnceLock::new();
    P.get_or_init(|| build_primary(PrimarySpec::Riemann).unwrap())
}

fn chi4() -> &'static PrimaryFunction {
    static P: OnceLock<PrimaryFunction> = OnceLock::new();
    P.get_or_init(|| build_primary(PrimarySpec::Dirichlet { discriminant: -4 }).unwrap())
}

fn riemann_cache() -> &'static ZeroCache {
    static ZC: OnceLock<ZeroCache> = OnceLock::new();
    ZC.get_or_init(|| locate_zeros(riemann(), 60.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hurwitz_ladder(
        sre in -1.0f64..8.0,
        sim in -6.0f64..6.0,
        wre in 0.2f64..6.0,
    ) {
        let s = c(sre, sim);
        prop_assume!((s - c(1.0, 0.0)).norm() > 0.05);
        let w = c(wre, 0.0);
        let lhs = hurwitz_zeta(s, w).unwrap() - hurwitz_zeta(s, w + 1.0).unwrap();
        let rhs = (-s * w.ln()).exp();
        let scale = rhs.norm().max(1.0);
        prop_assert!(
            (lhs - rhs).norm() <= 1e-11 * scale,
            "s = {}, w = {}: {:.3e}",
            s, w, (lhs - rhs).norm()
        );
    }

    #[test]
    fn completed_function_symmetry(
        xre in -5.0f64..6.0,
        xim in -8.0f64..8.0,
        which in 0usize..2,
    ) {
        let x = c(xre, xim);
        let p: &PrimaryFunction = if which == 0 { riemann() } else { chi4() };
        // stay clear of the trivial-zero spikes on the real axis
        prop_assume!(xim.abs() > 1e-3 || xre > 0.0);
        let a = p.xi_value(x).unwrap();
        let b = p.xi_value(c(1.0, 0.0) - x).unwrap();
        let scale = a.norm().max(b.norm()).max(1e-300);
        prop_assert!(
            (a - b).norm() <= 1e-10 * scale,
            "{} at {}: rel {:.3e}",
            p.id(), x, (a - b).norm() / scale
        );
    }

    #[test]
    fn zero_cache_text_round_trip(raw in prop::collection::vec((1e-3f64..1e6, 1e-12f64..1e-3), 0..40)) {
        // build strictly increasing disjoint enclosures from raw data
        let mut lo_cursor = 0.0f64;
        let mut enclosures = Vec::new();
        let mut sorted = raw;
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (start, width) in sorted {
            let lo = (lo_cursor + 1e-6).max(start);
            let hi = lo + width;
            enclosures.push((lo, hi));
            lo_cursor = hi;
        }
        let cache = ZeroCache::from_enclosures("riemann", enclosures, lo_cursor + 1.0).unwrap();
        let back = ZeroCache::parse(&cache.to_text()).unwrap();
        prop_assert_eq!(back.len(), cache.len());
        prop_assert_eq!(back.t_max().to_bits(), cache.t_max().to_bits());
        for (a, b) in cache.enclosures().iter().zip(back.enclosures()) {
            prop_assert_eq!(a.0.to_bits(), b.0.to_bits());
            prop_assert_eq!(a.1.to_bits(), b.1.to_bits());
        }
    }
}

#[test]
fn regularized_product_decomposition() {
    // (x-1)^q L(x) equals the product of the two regularized factors
    // e^{-Z'(0,x)} e^{-z1'(0,x)} built over trivial and nontrivial zeros.
    for p in [riemann(), chi4()] {
        for &xre in &[2.0, 3.0, 1.5] {
            let x = c(xre, 0.0);
            let shadow = p.shadow_markers(x, 0).unwrap();
            let z1d0 = z1_closed(p, Z1Marker::Deriv0, x).unwrap();
            let lhs = (-shadow.s_deriv_at_0 - z1d0.value).exp();
            let mut rhs = p.l_value(x).unwrap();
            if p.q() == 1 {
                rhs *= x - 1.0;
            }
            assert!(
                (lhs - rhs).norm() <= 1e-9 * rhs.norm(),
                "{} at {}: {} vs {}",
                p.id(),
                xre,
                lhs,
                rhs
            );
        }
    }
}

#[test]
fn modified_regularized_product_decomposition() {
    // the symmetry-preserving variant: (x-1)^q L(x) =
    // e^{-b1 (x - 1/2)} e^{-Z'(0,x)} e^{-z2'(0,v)} with v = (x - 1/2)^2
    let p = riemann();
    let zc = riemann_cache();
    for &xre in &[2.0, 1.6] {
        let x = c(xre, 0.0);
        let v = (x - 0.5) * (x - 0.5);
        let shadow = p.shadow_markers(x, 0).unwrap();
        let z2d0 =
            superzeta::families::z2_closed(p, zc, superzeta::families::Z2Marker::Deriv0, v)
                .unwrap();
        let st = p.stirling();
        let lhs = (-st.b1 * (x - 0.5) - shadow.s_deriv_at_0 - z2d0.value).exp();
        let rhs = (x - 1.0) * p.l_value(x).unwrap();
        assert!(
            (lhs - rhs).norm() <= 1e-9 * rhs.norm(),
            "x = {}: {} vs {}",
            xre,
            lhs,
            rhs
        );
    }
}

#[test]
fn continuation_is_continuous_across_the_pole_strip() {
    // After removing the pole term -a1/(s-1), the integral route at 0.999
    // and the tail-corrected direct route at 1.001 straddle the same finite
    // part; their symmetric average must hit the closed value to 1e-4.
    // (The raw two-point difference carries the irreducible slope term
    // 0.002 (d/ds)[...] ~ 1.6e-3 and is reported, not gated.)
    let p = riemann();
    let zc = riemann_cache();
    for &xre in &[2.0, 0.5] {
        let x = c(xre, 0.0);
        let a1 = p.stirling().a1;
        let left = z1_integral(p, c(0.999, 0.0), x).unwrap().value + a1 / (0.999 - 1.0);
        let right = z1_direct(p, zc, c(1.001, 0.0), x).unwrap().value + a1 / (1.001 - 1.0);
        let fp = z1_closed(p, Z1Marker::Fp1, x).unwrap().value;
        let avg = 0.5 * (left + right);
        println!(
            "strip continuity at x = {}: raw gap {:.3e}, centered gap {:.3e}",
            xre,
            (left - right).norm(),
            (avg - fp).norm()
        );
        assert!(
            (avg - fp).norm() <= 1e-4,
            "x = {}: {} vs {}",
            xre,
            avg,
            fp
        );
        // the raw gap is dominated by the slope term, bounded crudely
        assert!((left - right).norm() <= 1e-2);
    }
}

#[test]
fn tail_estimate_matches_summed_zeros() {
    // quadrature-form oracle: the closed tail estimate differenced between
    // two heights approximates the actual sum of tau^{-2} over the zeros
    // located in between
    let p = riemann();
    let big = locate_zeros(p, 500.0).unwrap();
    let est_lo = superzeta::zeros::tail_sum_estimate(p, c(2.0, 0.0), 100.0).unwrap();
    let est_hi = superzeta::zeros::tail_sum_estimate(p, c(2.0, 0.0), big.t_max()).unwrap();
    let predicted = (est_lo.estimate - est_hi.estimate).re;
    let actual: f64 = big
        .ordinates()
        .filter(|t| *t > 100.0)
        .map(|t| t.powi(-2))
        .sum();
    assert!(
        (predicted - actual).abs() <= 5e-4,
        "predicted {:.6e} vs summed {:.6e}",
        predicted,
        actual
    );
    assert!((predicted - actual).abs() <= est_lo.bound + est_hi.bound);
}

#[test]
fn completed_prefactor_matches_gamma_factor() {
    // exp(w(x)) (x-1)^{-q} G(x) = 1 pointwise
    for p in [riemann(), chi4()] {
        for &x in &[c(2.0, 0.3), c(0.7, -1.2), c(5.0, 0.0)] {
            let w = p.completed_log_prefactor(x).unwrap();
            let g = gamma_factor(p, x).unwrap();
            let mut lhs = w.exp() * g;
            if p.q() == 1 {
                lhs /= x - 1.0;
            }
            assert!((lhs - c(1.0, 0.0)).norm() < 1e-11, "{} at {}", p.id(), x);
        }
    }
}
