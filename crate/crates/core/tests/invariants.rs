//! Property tests for the structural invariants that should hold for any
//! admissible parameters, not just the worked examples.

use planeflow_core::distance::{PathMetricGraph, StencilOrder, Window};
use planeflow_core::evolve::{
    evolve, mollify_initial_data, BoundaryMode, EvolutionConfig, MeasureInitialData, MollifierKind,
};
use planeflow_core::flow_state::{gauss_curvature_1d, ConformalFlowState};
use planeflow_core::grid_fd::make_uniform_grid;
use planeflow_core::pic1::{min_ic1, CurvatureTensor};
use planeflow_core::pressure::compute_pressure;
use planeflow_core::rng::SplitMix64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Discrete comparison principle: pointwise-ordered initial data stays
    // ordered (up to Newton tolerance) for arbitrary mollifier parameters.
    #[test]
    fn solver_preserves_ordering(
        c_small in 0.05f64..0.8,
        extra in 0.1f64..1.5,
        eps in 0.08f64..0.3,
        horizon in 0.01f64..0.05,
    ) {
        // h = 0.02 keeps every eps in the strategy range resolved (eps >= 3h)
        let grid = make_uniform_grid(-6.0, 6.0, 601).unwrap();
        let h = grid.h();
        let cfg = EvolutionConfig::new(
            grid.clone(),
            0.0,
            horizon,
            h * h / 2.0,
            BoundaryMode::ConstantFarfield(1.0),
        )
        .unwrap();
        let mk = |c: f64| {
            let data = MeasureInitialData::new(1.0, c, eps, MollifierKind::Gaussian).unwrap();
            mollify_initial_data(&data, &grid).unwrap()
        };
        let ua = mk(c_small + extra);
        let ub = mk(c_small);
        let ta = evolve(&ua, &cfg).unwrap();
        let tb = evolve(&ub, &cfg).unwrap();
        let slack = 10.0 * cfg.newton_tol;
        for (sa, sb) in ta.states().iter().zip(tb.states()) {
            for (a, b) in sa.u().values().iter().zip(sb.u().values()) {
                prop_assert!(a >= &(b - slack));
            }
        }
    }

    // Reciprocal exactness of the pressure for arbitrary smooth positive
    // conformal factors.
    #[test]
    fn pressure_reciprocal(seed in 0u64..500) {
        let grid = make_uniform_grid(-2.0, 2.0, 101).unwrap();
        let mut rng = SplitMix64::new(seed);
        let (a, b, p) = (
            rng.uniform_in(0.2, 3.0),
            rng.uniform_in(-0.9, 0.9),
            rng.uniform_in(0.5, 4.0),
        );
        let u = grid.sample(|x| a * (1.0 + b * (p * x).sin().powi(2))).unwrap();
        let state = ConformalFlowState::new(u, 1.0).unwrap();
        let d = compute_pressure(&state).unwrap();
        for (u, w) in state.u().values().iter().zip(d.w().values()) {
            prop_assert!((u * w - 1.0).abs() <= 1e-14);
        }
    }

    // Conformal scaling: replacing u by c·u divides the discrete curvature
    // by c up to the stencil's roundoff floor.
    #[test]
    fn curvature_scaling_law(c in 0.05f64..20.0, seed in 0u64..200) {
        let grid = make_uniform_grid(-1.5, 1.5, 61).unwrap();
        let mut rng = SplitMix64::new(seed);
        let (amp, freq) = (rng.uniform_in(0.1, 0.8), rng.uniform_in(0.5, 3.0));
        let u = grid.sample(|x| 1.0 + amp * (freq * x).cos()).unwrap();
        let k1 = gauss_curvature_1d(&ConformalFlowState::new(u.clone(), 1.0).unwrap()).unwrap();
        let uc = u.map(|v| c * v).unwrap();
        let kc = gauss_curvature_1d(&ConformalFlowState::new(uc, 1.0).unwrap()).unwrap();
        let floor = 1e-14 / (grid.h() * grid.h()) / c.min(1.0);
        for i in 0..grid.n() {
            prop_assert!((kc.field().get(i) - k1.field().get(i) / c).abs() <= floor);
        }
    }

    // Distance monotonicity in the conformal factor, for random factor pairs
    // and random node pairs.
    #[test]
    fn distance_monotone_in_u(seed in 0u64..60) {
        let grid = make_uniform_grid(-3.0, 3.0, 241).unwrap();
        let mut rng = SplitMix64::new(seed);
        let bump = rng.uniform_in(0.1, 2.0);
        let ua = grid.sample(|x| 1.0 + bump + 0.5 * (2.0 * x).sin()).unwrap();
        let ub = grid.sample(|x| 1.0 + 0.5 * (2.0 * x).sin()).unwrap();
        let sa = ConformalFlowState::new(ua, 1.0).unwrap();
        let sb = ConformalFlowState::new(ub, 1.0).unwrap();
        let w = Window::new(-2.0, 2.0, -2.0, 2.0).unwrap();
        let ga = PathMetricGraph::extrude(&sa, &w, 0.1, StencilOrder::K2).unwrap();
        let gb = PathMetricGraph::extrude(&sb, &w, 0.1, StencilOrder::K2).unwrap();
        for _ in 0..10 {
            let p = ga
                .nearest_node(rng.uniform_in(-1.8, 1.8), rng.uniform_in(-1.8, 1.8))
                .unwrap();
            let q = ga
                .nearest_node(rng.uniform_in(-1.8, 1.8), rng.uniform_in(-1.8, 1.8))
                .unwrap();
            prop_assert!(ga.grid_distance(p, q).unwrap() >= gb.grid_distance(p, q).unwrap() - 1e-12);
        }
    }

    // Shift law for the degenerate-plane minimum with random shift sizes.
    #[test]
    fn min_ic1_shift_law(t in -2.0f64..2.0) {
        let r = CurvatureTensor::random_bianchi(4, 11, 1.0).unwrap();
        let one = CurvatureTensor::space_form(4, 1.0).unwrap();
        let (v0, _) = min_ic1(&r, 400, 8, 5);
        let (vt, _) = min_ic1(&r.add_scaled(&one, t).unwrap(), 400, 8, 5);
        prop_assert!((vt - (v0 + t)).abs() <= 1e-6);
    }
}
