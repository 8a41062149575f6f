//! The explicit expanding soliton `u(x,t) = 2t/(t² + x²)`.
//!
//! This non-gradient expanding Ricci soliton starts from the Radon measure
//! `2π·H¹⌞L` concentrated on the y-axis and satisfies `u_t = (log u)_xx`
//! exactly. Its curvature attains both sharp bounds at every time:
//! `K(0,t) = 1/(2t)` and `K → -1/(2t)` as `|x| → ∞`. The hand-differentiated
//! fields below serve as the truncation-free oracle for the solver and the
//! pressure diagnostics; their own correctness is pinned against finite
//! differences of `u` in this module's tests.

use alloc::format;

use crate::error::{Error, Result};
use crate::grid_fd::{Grid1D, ScalarField};
use crate::math;

fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!("soliton needs t > 0, got {t}")));
    }
    Ok(())
}

/// Conformal factor `u(x,t) = 2t/(t² + x²)`.
pub fn soliton_u(x: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(2.0 * t / (t * t + x * x))
}

/// Gauss curvature `K = (t² - x²) / (2t (t² + x²))`.
#[inline]
pub fn soliton_k(x: f64, t: f64) -> f64 {
    (t * t - x * x) / (2.0 * t * (t * t + x * x))
}

/// Pressure `w = 1/u = (t² + x²) / (2t)`.
#[inline]
pub fn soliton_w(x: f64, t: f64) -> f64 {
    (t * t + x * x) / (2.0 * t)
}

/// `q = w_xx ≡ 1/t`, attaining the maximum-principle bound with α = 1.
#[inline]
pub fn soliton_q(_x: f64, t: f64) -> f64 {
    1.0 / t
}

/// `(log u)_x = -2x/(t² + x²)`, the gradient term of the curvature identity.
#[inline]
pub fn soliton_log_u_x(x: f64, t: f64) -> f64 {
    -2.0 * x / (t * t + x * x)
}

/// All four analytic fields sampled on a grid.
#[derive(Clone, Debug)]
pub struct SolitonFields {
    pub u: ScalarField,
    pub k: ScalarField,
    pub w: ScalarField,
    pub q: ScalarField,
}

/// Evaluate `(u, K, w, q)` analytically on `grid` at time `t`.
pub fn soliton_fields(grid: &Grid1D, t: f64) -> Result<SolitonFields> {
    check_time(t)?;
    Ok(SolitonFields {
        u: grid.sample(|x| 2.0 * t / (t * t + x * x))?,
        k: grid.sample(|x| soliton_k(x, t))?,
        w: grid.sample(|x| soliton_w(x, t))?,
        q: grid.sample(|x| soliton_q(x, t))?,
    })
}

/// `|u_t - (log u)_xx|` by central differences of step `h` in both `t` and
/// `x` on the closed form. The closed form solves the PDE exactly, so this
/// is pure truncation error, O(h²).
pub fn pde_residual(t: f64, x: f64, h: f64) -> Result<f64> {
    check_time(t)?;
    if !h.is_finite() || h <= 0.0 || h >= t {
        return Err(Error::invalid(format!(
            "pde_residual needs 0 < h < t, got h = {h}, t = {t}"
        )));
    }
    let u = |x: f64, t: f64| 2.0 * t / (t * t + x * x);
    let u_t = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
    let lg = |x: f64| math::ln(u(x, t));
    let log_u_xx = (lg(x + h) - 2.0 * lg(x) + lg(x - h)) / (h * h);
    Ok((u_t - log_u_xx).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fd::{first_derivative, make_uniform_grid, second_derivative};
    use crate::rng::SplitMix64;

    #[test]
    fn direct_substitution_values() {
        assert_eq!(soliton_u(0.0, 1.0).unwrap(), 2.0);
        assert_eq!(soliton_u(1.0, 1.0).unwrap(), 1.0);
        assert_eq!(soliton_u(0.0, 0.5).unwrap(), 4.0);
        assert!(matches!(
            soliton_u(0.0, 0.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            soliton_u(0.0, -1.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn field_spot_values() {
        let g = make_uniform_grid(-2.0, 2.0, 401).unwrap();
        let f = soliton_fields(&g, 0.5).unwrap();
        // K(0, 0.5) = 1/(2t) = 1
        assert_eq!(f.k.get(200), 1.0);
        // K vanishes at x = t
        assert!(soliton_k(0.5, 0.5).abs() < 1e-16);
        assert!(soliton_k(0.25, 0.25).abs() < 1e-16);
        // q = 1/t everywhere
        let f = soliton_fields(&g, 0.25).unwrap();
        assert!(f.q.values().iter().all(|&q| q == 4.0));
    }

    // Pre-build oracle for the hand-derived fields: K, w, q must match finite
    // differences of u itself before anything else uses them.
    #[test]
    fn analytic_fields_match_finite_differences_of_u() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..10 {
            let t = rng.uniform_in(0.2, 2.0);
            let g = make_uniform_grid(-4.0, 4.0, 1601).unwrap();
            let u = g.sample(|x| soliton_u(x, t).unwrap()).unwrap();

            // w = 1/u nodewise (exact reciprocal up to rounding)
            for i in 0..g.n() {
                let w = soliton_w(g.node(i), t);
                assert!((w - 1.0 / u.get(i)).abs() <= 1e-12 * w);
            }

            // q = D2(1/u): the stencil is exact on the quadratic w
            let w = g.sample(|x| soliton_w(x, t)).unwrap();
            let q = second_derivative(&w);
            for i in 1..g.n() - 1 {
                assert!((q.get(i) - 1.0 / t).abs() < 1e-9, "t = {t}");
            }

            // K = -(D2 log u)/(2u) within O(h²)
            let lg = u.map(|v| v.ln()).unwrap();
            let d2 = second_derivative(&lg);
            for i in (1..g.n() - 1).step_by(37) {
                let k_fd = -d2.get(i) / (2.0 * u.get(i));
                let k = soliton_k(g.node(i), t);
                assert!((k_fd - k).abs() < 2e-3 / (t * t), "t = {t}, i = {i}");
            }

            // (log u)_x against the first-difference stencil
            let d1 = first_derivative(&lg);
            for i in (1..g.n() - 1).step_by(53) {
                let a = soliton_log_u_x(g.node(i), t);
                assert!((d1.get(i) - a).abs() < 1e-3 / t);
            }
        }
    }

    #[test]
    fn residual_examples_and_precondition() {
        assert!(pde_residual(1.0, 0.0, 1e-4).unwrap() <= 1e-6);
        assert!(pde_residual(0.5, 2.0, 1e-4).unwrap() <= 1e-6);
        assert!(matches!(
            pde_residual(1.0, 0.0, 2.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    // Exact PDE satisfaction: the residual decays at second order in h over a
    // random sample of (x, t). Order is measured on the max residual so the
    // roundoff floor at large |x|/t does not pollute it.
    #[test]
    fn residual_second_order_in_h() {
        let mut rng = SplitMix64::new(41);
        let samples: alloc::vec::Vec<(f64, f64)> = (0..20)
            .map(|_| (rng.uniform_in(-5.0, 5.0), rng.uniform_in(0.1, 2.0)))
            .collect();
        let max_res = |h: f64| {
            samples
                .iter()
                .map(|&(x, t)| pde_residual(t, x, h).unwrap())
                .fold(0.0f64, f64::max)
        };
        let r1 = max_res(1e-3);
        let r2 = max_res(5e-4);
        let r3 = max_res(2.5e-4);
        let order12 = (r1 / r2).log2();
        let order23 = (r2 / r3).log2();
        assert!(order12 >= 1.9, "order {order12}");
        assert!(order23 >= 1.9, "order {order23}");
    }

    #[test]
    fn sharpness_of_both_bounds() {
        for &t in &[0.1, 0.5, 1.0, 2.0] {
            let g = make_uniform_grid(-20.0 * t, 20.0 * t, 801).unwrap();
            let f = soliton_fields(&g, t).unwrap();
            let max_2tk =
                f.k.values()
                    .iter()
                    .map(|&k| 2.0 * t * k)
                    .fold(f64::NEG_INFINITY, f64::max);
            assert!((max_2tk - 1.0).abs() <= 1e-12, "t = {t}");
            for i in 0..g.n() {
                let x = g.node(i);
                if x.abs() >= 15.0 * t {
                    assert!(2.0 * t * f.k.get(i) <= -0.99, "x = {x}, t = {t}");
                }
            }
        }
    }

    // 2tK = (t²-x²)/(t²+x²) decreases monotonically in |x|.
    #[test]
    fn normalized_curvature_monotone_in_abs_x() {
        let t = 0.7;
        let g = make_uniform_grid(0.0, 30.0, 301).unwrap();
        let mut prev = f64::INFINITY;
        for x in g.nodes() {
            let v = 2.0 * t * soliton_k(x, t);
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }

    // Identity 2K + (1/u)((log u)_x)² - q = 0 holds at machine precision for
    // the analytic fields.
    #[test]
    fn curvature_identity_analytic() {
        let mut rng = SplitMix64::new(9);
        for _ in 0..200 {
            let t = rng.uniform_in(0.05, 3.0);
            let x = rng.uniform_in(-8.0, 8.0);
            let u = soliton_u(x, t).unwrap();
            let lhs = 2.0 * soliton_k(x, t) + soliton_log_u_x(x, t).powi(2) / u - soliton_q(x, t);
            assert!(lhs.abs() <= 1e-13 / t, "t = {t}, x = {x}, lhs = {lhs}");
        }
    }

    // Quadrature of u over [-R, R] is 4 atan(R/t) -> 2π as R grows.
    #[test]
    fn mass_tends_to_two_pi() {
        let t = 0.3;
        let mut prev_gap = f64::INFINITY;
        for &r in &[5.0, 20.0, 80.0, 320.0] {
            let n = (r * 200.0) as usize | 1;
            let g = make_uniform_grid(-r, r, n).unwrap();
            let u = g.sample(|x| soliton_u(x, t).unwrap()).unwrap();
            let mass = u.trapezoid();
            let gap = (mass - 2.0 * core::f64::consts::PI).abs();
            assert!(gap < prev_gap);
            prev_gap = gap;
            // analytic truncated mass for sanity
            assert!((mass - 4.0 * (r / t).atan()).abs() < 1e-4);
        }
        assert!(prev_gap < 8.0 * t / 320.0); // tail bound 2·(2t/R)
    }
}
