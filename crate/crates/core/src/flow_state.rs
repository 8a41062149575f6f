//! Conformal metric states and Gauss curvature for metrics `u (dx² + dy²)`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid_fd::{second_derivative, ScalarField, ScalarField2D};
use crate::math;

/// Sup/inf reports quantify over interior nodes at distance >= 2h from the
/// boundary; this is the number of excluded nodes per side.
pub const REPORT_MARGIN: usize = 2;

/// A positive conformal factor `u` sampled on a grid at a time `t`,
/// representing the metric `u(x)(dx² + dy²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFlowState {
    field: ScalarField,
    time: f64,
}

impl ConformalFlowState {
    pub fn new(field: ScalarField, time: f64) -> Result<Self> {
        if !time.is_finite() || time < 0.0 {
            return Err(Error::invalid(format!(
                "state time must be finite and >= 0, got {time}"
            )));
        }
        if let Some(i) = field.values().iter().position(|&u| u <= 0.0) {
            return Err(Error::Positivity(format!(
                "u = {} at node {i} (metric must be Riemannian)",
                field.get(i)
            )));
        }
        Ok(ConformalFlowState { field, time })
    }

    #[inline]
    pub fn u(&self) -> &ScalarField {
        &self.field
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }

    /// log u, the quantity every curvature stencil differentiates.
    pub fn log_u(&self) -> ScalarField {
        self.field
            .map(math::ln)
            .expect("log of a positive finite field is finite")
    }
}

/// Gauss curvature samples; endpoint entries are stencil sentinels and are
/// excluded from every sup/inf report.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureField {
    field: ScalarField,
    time: f64,
}

impl CurvatureField {
    pub fn new(field: ScalarField, time: f64) -> Self {
        CurvatureField { field, time }
    }

    #[inline]
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    #[inline]
    pub fn time(&self) -> f64 {
        self.time
    }

    /// Values at report-interior nodes (>= 2h from the boundary).
    pub fn interior(&self) -> &[f64] {
        let n = self.field.len();
        &self.field.values()[REPORT_MARGIN..n - REPORT_MARGIN]
    }

    pub fn interior_max(&self) -> f64 {
        self.interior()
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn interior_min(&self) -> f64 {
        self.interior()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// Gauss curvature `K = -(log u)_xx / (2u)` of `u(x)(dx² + dy²)` with `u`
/// independent of `y`, via the second-difference stencil on `log u`.
pub fn gauss_curvature_1d(state: &ConformalFlowState) -> Result<CurvatureField> {
    let log_u = state.log_u();
    let d2 = second_derivative(&log_u);
    let values: Vec<f64> = d2
        .values()
        .iter()
        .zip(state.u().values())
        .map(|(&l, &u)| -l / (2.0 * u))
        .collect();
    let field = ScalarField::new(state.u().grid().clone(), values)?;
    Ok(CurvatureField::new(field, state.time()))
}

/// Gauss curvature `K = -Δ(log u) / (2u)` on a rectangular grid by the
/// 5-point Laplacian, used to validate the curvature formula on analytic
/// test metrics. Boundary-ring entries are sentinel copies of the nearest
/// interior value.
pub fn gauss_curvature_2d(u: &ScalarField2D) -> Result<ScalarField2D> {
    if let Some(&bad) = u.values().iter().find(|&&v| v <= 0.0) {
        return Err(Error::Positivity(format!("u = {bad} in 2d field")));
    }
    let grid = u.grid().clone();
    let (nx, ny) = (grid.nx(), grid.ny());
    let hx2 = grid.x().h() * grid.x().h();
    let hy2 = grid.y().h() * grid.y().h();

    let log_u: Vec<f64> = u.values().iter().map(|&v| math::ln(v)).collect();
    let mut k = alloc::vec![0.0; nx * ny];
    for iy in 1..ny - 1 {
        for ix in 1..nx - 1 {
            let c = grid.index(ix, iy);
            // term order matches the 1D stencil so extruded fields agree bitwise
            let lap = (log_u[c + 1] - 2.0 * log_u[c] + log_u[c - 1]) / hx2
                + (log_u[c + nx] - 2.0 * log_u[c] + log_u[c - nx]) / hy2;
            k[c] = -lap / (2.0 * u.values()[c]);
        }
    }
    // sentinel ring
    for ix in 0..nx {
        let src_lo = grid.index(ix.clamp(1, nx - 2), 1);
        let src_hi = grid.index(ix.clamp(1, nx - 2), ny - 2);
        k[grid.index(ix, 0)] = k[src_lo];
        k[grid.index(ix, ny - 1)] = k[src_hi];
    }
    for iy in 0..ny {
        let src_lo = grid.index(1, iy.clamp(1, ny - 2));
        let src_hi = grid.index(nx - 2, iy.clamp(1, ny - 2));
        k[grid.index(0, iy)] = k[src_lo];
        k[grid.index(nx - 1, iy)] = k[src_hi];
    }
    ScalarField2D::new(grid, k)
}
