//! Pressure diagnostics and verification of the curvature bound chain.
//!
//! For a flow `u_t = (log u)_xx` the pressure `w = 1/u` solves
//! `w_t = w·w_xx - (w_x)²`, and `q = w_xx` solves `q_t = w·q_xx - q²`, which
//! is `q_t = Δ_g q - q²` on the plane. The maximum principle then gives
//! `q ≤ 1/t` for complete flows, and with the identity
//! `2K = -(1/u)|(log u)_x|² + q` this yields the sharp two-sided bound
//! `|K| ≤ 1/(2t)`. Every check below verifies one link of that chain on
//! discrete states.
//!
//! Bound reports quantify over interior nodes only (2 nodes from each
//! boundary are excluded, matching the stencil sentinels) and record how
//! many nodes were excluded.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::evolve::Trajectory;
use crate::flow_state::{gauss_curvature_1d, ConformalFlowState, CurvatureField, REPORT_MARGIN};
use crate::grid_fd::{first_derivative, second_derivative, ScalarField};

/// Pressure fields of a state: `w = 1/u` nodewise and `q = w_xx` at interior
/// nodes (endpoint entries of `q` are stencil sentinels).
#[derive(Clone, Debug)]
pub struct PressureDiagnostics {
    w: ScalarField,
    q: ScalarField,
    time: f64,
}

impl PressureDiagnostics {
    #[inline]
    pub fn w(&self) -> &ScalarField {
        &self.w
    }

    #[inline]
    pub fn q(&self) -> &ScalarField {
        &self.q
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }
}

/// One sup/inf check against a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub quantity: String,
    /// Max over interior nodes.
    pub sup: f64,
    /// Min over interior nodes.
    pub inf: f64,
    pub bound: f64,
    /// `bound - extremum` for upper bounds, `extremum - bound` for lower.
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub time: f64,
    pub excluded_nodes: usize,
}

impl BoundReport {
    fn upper(
        quantity: &str,
        values: &[f64],
        bound: f64,
        tol: f64,
        time: f64,
        excluded: usize,
    ) -> Self {
        let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let margin = bound - sup;
        BoundReport {
            quantity: quantity.into(),
            sup,
            inf,
            bound,
            margin,
            tolerance: tol,
            pass: margin >= -tol,
            time,
            excluded_nodes: excluded,
        }
    }

    fn lower(
        quantity: &str,
        values: &[f64],
        bound: f64,
        tol: f64,
        time: f64,
        excluded: usize,
    ) -> Self {
        let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let margin = inf - bound;
        BoundReport {
            quantity: quantity.into(),
            sup,
            inf,
            bound,
            margin,
            tolerance: tol,
            pass: margin >= -tol,
            time,
            excluded_nodes: excluded,
        }
    }
}

fn interior(values: &[f64]) -> &[f64] {
    &values[REPORT_MARGIN..values.len() - REPORT_MARGIN]
}

/// `w = 1/u` nodewise, `q = w_xx` by the second-difference stencil.
pub fn compute_pressure(state: &ConformalFlowState) -> Result<PressureDiagnostics> {
    let w = state.u().map(|u| 1.0 / u)?;
    if w.values().iter().any(|&v| v <= 0.0) {
        return Err(Error::Positivity("pressure w must be positive".into()));
    }
    let q = second_derivative(&w);
    Ok(PressureDiagnostics {
        w,
        q,
        time: state.time(),
    })
}

/// Maximum-principle bound `q ≤ 1/(α·t)` for supersolutions of
/// `q_t ≤ Δ_g q - α q²`.
pub fn check_q_bound(diag: &PressureDiagnostics, alpha: f64, tol: f64) -> Result<BoundReport> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if !(diag.time > 0.0) {
        return Err(Error::invalid(format!(
            "q bound needs t > 0, got t = {}",
            diag.time
        )));
    }
    let bound = 1.0 / (alpha * diag.time);
    Ok(BoundReport::upper(
        "q",
        interior(diag.q.values()),
        bound,
        tol,
        diag.time,
        2 * REPORT_MARGIN,
    ))
}

/// Two-sided curvature bound `|K| ≤ 1/(2t)` from a curvature field.
pub fn curvature_bounds_from_field(
    k: &CurvatureField,
    tol: f64,
) -> Result<(BoundReport, BoundReport)> {
    if !(k.time() > 0.0) {
        return Err(Error::invalid(format!(
            "curvature bounds need t > 0, got t = {}",
            k.time()
        )));
    }
    let bound = 1.0 / (2.0 * k.time());
    let vals = k.interior();
    let upper = BoundReport::upper("K", vals, bound, tol, k.time(), 2 * REPORT_MARGIN);
    let lower = BoundReport::lower("K", vals, -bound, tol, k.time(), 2 * REPORT_MARGIN);
    Ok((upper, lower))
}

/// Two-sided curvature bound with `K` computed from the state by stencils.
pub fn check_curvature_bounds(
    state: &ConformalFlowState,
    tol: f64,
) -> Result<(BoundReport, BoundReport)> {
    let k = gauss_curvature_1d(state)?;
    curvature_bounds_from_field(&k, tol)
}

/// Max interior residual of the identity `2K + (1/u)((log u)_x)² - q = 0`,
/// every term evaluated by the standard stencils.
pub fn check_curvature_identity(state: &ConformalFlowState) -> Result<f64> {
    let k = gauss_curvature_1d(state)?;
    let diag = compute_pressure(state)?;
    let log_u = state.log_u();
    let lux = first_derivative(&log_u);
    let n = state.u().len();
    let mut worst = 0.0f64;
    for i in REPORT_MARGIN..n - REPORT_MARGIN {
        let u = state.u().get(i);
        let r = 2.0 * k.field().get(i) + lux.get(i) * lux.get(i) / u - diag.q.get(i);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Max interior residual of `q_t = w·q_xx - q²` across the trajectory,
/// with `q_t` by central time differences over consecutive output triples.
/// The caller compares the result against its expected `O(dt + h²)` scale.
pub fn check_q_evolution(traj: &Trajectory) -> Result<f64> {
    let states = traj.states();
    if states.len() < 3 {
        return Err(Error::InsufficientStates(format!(
            "q evolution check needs >= 3 output states, got {}",
            states.len()
        )));
    }
    let diags: Vec<PressureDiagnostics> =
        states.iter().map(compute_pressure).collect::<Result<_>>()?;
    let n = states[0].u().len();
    let mut worst = 0.0f64;
    for m in 1..diags.len() - 1 {
        let (lo, mid, hi) = (&diags[m - 1], &diags[m], &diags[m + 1]);
        let dt_total = hi.time - lo.time;
        let q_xx = second_derivative(&mid.q);
        // q_xx is sentinel-contaminated one node further in than q itself
        for i in (REPORT_MARGIN.max(2))..n - (REPORT_MARGIN.max(2)) {
            let q_t = (hi.q.get(i) - lo.q.get(i)) / dt_total;
            let rhs = mid.w.get(i) * q_xx.get(i) - mid.q.get(i) * mid.q.get(i);
            worst = worst.max((q_t - rhs).abs());
        }
    }
    Ok(worst)
}
