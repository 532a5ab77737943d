//! Quadrature building blocks: tanh-sinh (double-exponential) rule for
//! finite intervals with endpoint singularities, and Gauss-Legendre panels
//! chained geometrically for smooth tails to infinity.

use std::sync::OnceLock;

use crate::C;

/// Result of an adaptive quadrature: value and an error estimate from the
/// last refinement step.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: C,
    pub err_est: f64,
}

/// Tanh-sinh quadrature of f over (a, b). Integrable endpoint singularities
/// (algebraic, like y^{-sigma} with sigma < 1) are handled by the
/// double-exponential node clustering; convergence is checked by comparing
/// successive level refinements.
pub fn tanh_sinh<F: FnMut(f64) -> C>(mut f: F, a: f64, b: f64, rel_tol: f64) -> QuadResult {
    if a == b {
        return QuadResult {
            value: C::new(0.0, 0.0),
            err_est: 0.0,
        };
    }
    debug_assert!(a < b);
    let half = 0.5 * (b - a);
    let t_max = 6.0f64;

    // Evaluate weight * f at abscissa parameter t. The node is placed by its
    // distance to the nearest endpoint, so that integrable endpoint
    // singularities are sampled all the way down to the underflow threshold
    // instead of being cut off at the ulp of the midpoint.
    let mut eval = |t: f64| -> C {
        let st = (std::f64::consts::FRAC_PI_2) * t.sinh();
        let w = (std::f64::consts::FRAC_PI_2) * t.cosh() / st.cosh().powi(2);
        let e2 = (-2.0 * st.abs()).exp();
        let delta = half * 2.0 * e2 / (1.0 + e2); // distance to nearest endpoint
        if delta == 0.0 || !w.is_finite() {
            return C::new(0.0, 0.0);
        }
        let x = if t >= 0.0 { b - delta } else { a + delta };
        if x <= a || x >= b {
            return C::new(0.0, 0.0);
        }
        w * f(x)
    };

    let mut h = 1.0f64;
    let mut sum = eval(0.0);
    let mut k = 1;
    loop {
        let t = h * k as f64;
        if t > t_max {
            break;
        }
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut value = sum * h;
    let mut err = f64::INFINITY;

    for _level in 0..9 {
        h *= 0.5;
        // add the odd-index nodes of the refined grid
        let mut k = 1;
        loop {
            let t = h * k as f64;
            if t > t_max {
                break;
            }
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let new_value = sum * h;
        err = (new_value - value).norm();
        value = new_value;
        if err <= rel_tol * value.norm().max(1e-300) && _level >= 2 {
            break;
        }
    }
    QuadResult {
        value: value * half,
        err_est: err * half.abs(),
    }
}

const GL_N: usize = 32;

fn gl_nodes() -> &'static ([f64; GL_N], [f64; GL_N]) {
    static NODES: OnceLock<([f64; GL_N], [f64; GL_N])> = OnceLock::new();
    NODES.get_or_init(|| {
        // Newton iteration on Legendre P_n roots, nodes on (-1, 1).
        let n = GL_N;
        let mut xs = [0.0f64; GL_N];
        let mut ws = [0.0f64; GL_N];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                // evaluate P_n and P_n' by the three-term recurrence
                let (mut p0, mut p1) = (1.0f64, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            xs[i] = x;
            ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        (xs, ws)
    })
}

/// 32-point Gauss-Legendre rule on [a, b].
pub fn gauss_legendre<F: FnMut(f64) -> C>(mut f: F, a: f64, b: f64) -> C {
    let (xs, ws) = gl_nodes();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = C::new(0.0, 0.0);
    for i in 0..GL_N {
        acc += ws[i] * f(mid + half * xs[i]);
    }
    acc * half
}

/// Integrate f over [a, infinity) by geometric panels [a, ra], [ra, r^2 a], ...
/// Stops when a panel contributes below `tol` relative to the accumulated
/// value; suitable for integrands decaying at least like x^{-p}, p > 1.
pub fn integrate_geometric_tail<F: FnMut(f64) -> C>(
    mut f: F,
    a: f64,
    ratio: f64,
    tol: f64,
    max_panels: usize,
) -> QuadResult {
    let mut lo = a;
    let mut acc = C::new(0.0, 0.0);
    let mut last = f64::INFINITY;
    for _ in 0..max_panels {
        let hi = lo * ratio;
        let panel = gauss_legendre(&mut f, lo, hi);
        acc += panel;
        last = panel.norm();
        if last <= tol * acc.norm().max(1e-300) {
            return QuadResult {
                value: acc,
                err_est: last,
            };
        }
        lo = hi;
    }
    QuadResult {
        value: acc,
        err_est: last,
    }
}
