//! TOML experiment configuration. Unknown keys are an error everywhere, so
//! typos never silently fall back to defaults.

use planeflow_core::distance::{StencilOrder, Window};
use planeflow_core::evolve::{
    mollify_initial_data, BoundaryMode, EvolutionConfig, MeasureInitialData, MollifierKind,
    DEFAULT_NEWTON_MAX_ITER, DEFAULT_NEWTON_TOL,
};
use planeflow_core::grid_fd::{make_uniform_grid, Grid1D, ScalarField};
use planeflow_core::soliton::soliton_u;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Global seed for every randomized component.
    #[serde(default)]
    pub seed: u64,
    pub grid: GridSection,
    pub evolution: EvolutionSection,
    pub initial_data: InitialDataSection,
    #[serde(default)]
    pub distance: Option<DistanceSection>,
    #[serde(default)]
    pub pic1: Option<Pic1Section>,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionSection {
    pub t_start: f64,
    pub t_end: f64,
    /// Defaults to h²/4 when omitted.
    #[serde(default)]
    pub dt: Option<f64>,
    /// "exact_soliton" | "constant_farfield" | "zero_flux"
    pub boundary: String,
    #[serde(default)]
    pub farfield_value: Option<f64>,
    #[serde(default)]
    pub newton_tol: Option<f64>,
    #[serde(default)]
    pub newton_max_iter: Option<usize>,
    #[serde(default)]
    pub output_times: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialDataSection {
    /// "mollified" | "soliton" | "constant"
    pub kind: String,
    #[serde(default)]
    pub background: Option<f64>,
    #[serde(default)]
    pub line_mass: Option<f64>,
    #[serde(default)]
    pub width: Option<f64>,
    /// "gaussian" | "bump"
    #[serde(default)]
    pub mollifier: Option<String>,
    /// Constant initial value for kind = "constant".
    #[serde(default)]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceSection {
    /// [x_min, x_max, y_min, y_max]
    pub window: [f64; 4],
    pub h: f64,
    /// 1 (8-neighbor) or 2 (16-neighbor); default 2.
    #[serde(default)]
    pub stencil_order: Option<u8>,
    pub pair_count: usize,
    /// [x_min, x_max, y_min, y_max]; pairs are node-snapped inside it.
    pub pair_window: [f64; 4],
    #[serde(default)]
    pub volume_radii: Vec<f64>,
    #[serde(default)]
    pub volume_center: Option<[f64; 2]>,
}

/// Sampling defaults for `planeflow pic1 --config`; explicit flags win.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pic1Section {
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub refine_iters: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub trajectory: Option<String>,
    #[serde(default)]
    pub summary: Option<String>,
    #[serde(default)]
    pub attainment: Option<String>,
    #[serde(default)]
    pub volume: Option<String>,
}

impl ExperimentConfig {
    pub fn load(path: &str) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {path}: {e}")))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("config {path}: {e}")))
    }

    pub fn build_grid(&self) -> CliResult<Grid1D> {
        Ok(make_uniform_grid(
            self.grid.x_min,
            self.grid.x_max,
            self.grid.n,
        )?)
    }

    pub fn build_evolution(&self, grid: &Grid1D) -> CliResult<EvolutionConfig> {
        let ev = &self.evolution;
        let boundary = match ev.boundary.as_str() {
            "exact_soliton" => BoundaryMode::ExactSoliton,
            "constant_farfield" => BoundaryMode::ConstantFarfield(ev.farfield_value.ok_or_else(
                || CliError::Input("constant_farfield boundary needs farfield_value".into()),
            )?),
            "zero_flux" => BoundaryMode::ZeroFlux,
            other => {
                return Err(CliError::Input(format!(
                    "unknown boundary mode {other:?} (expected exact_soliton, constant_farfield or zero_flux)"
                )))
            }
        };
        let h = grid.h();
        let dt = ev.dt.unwrap_or(h * h / 4.0);
        let mut cfg = EvolutionConfig::new(grid.clone(), ev.t_start, ev.t_end, dt, boundary)?;
        cfg.newton_tol = ev.newton_tol.unwrap_or(DEFAULT_NEWTON_TOL);
        cfg.newton_max_iter = ev.newton_max_iter.unwrap_or(DEFAULT_NEWTON_MAX_ITER);
        if let Some(times) = &ev.output_times {
            cfg = cfg.with_output_times(times.clone())?;
        }
        Ok(cfg)
    }

    pub fn build_initial_data(&self, grid: &Grid1D) -> CliResult<ScalarField> {
        let init = &self.initial_data;
        match init.kind.as_str() {
            "mollified" => {
                let kind = match init.mollifier.as_deref().unwrap_or("gaussian") {
                    "gaussian" => MollifierKind::Gaussian,
                    "bump" => MollifierKind::Bump,
                    other => {
                        return Err(CliError::Input(format!(
                            "unknown mollifier {other:?} (expected gaussian or bump)"
                        )))
                    }
                };
                let data = MeasureInitialData::new(
                    init.background.unwrap_or(1.0),
                    init.line_mass.ok_or_else(|| {
                        CliError::Input("mollified initial data needs line_mass".into())
                    })?,
                    init.width.ok_or_else(|| {
                        CliError::Input("mollified initial data needs width".into())
                    })?,
                    kind,
                )?;
                Ok(mollify_initial_data(&data, grid)?)
            }
            "soliton" => {
                let t = self.evolution.t_start;
                if t <= 0.0 {
                    return Err(CliError::Input(
                        "soliton initial data needs t_start > 0".into(),
                    ));
                }
                let mut values = Vec::with_capacity(grid.n());
                for x in grid.nodes() {
                    values.push(soliton_u(x, t)?);
                }
                Ok(ScalarField::new(grid.clone(), values)?)
            }
            "constant" => {
                let v = init.value.unwrap_or(1.0);
                if v <= 0.0 {
                    return Err(CliError::Input(format!(
                        "constant initial data must be positive, got {v}"
                    )));
                }
                Ok(ScalarField::constant(grid.clone(), v)?)
            }
            other => Err(CliError::Input(format!(
                "unknown initial data kind {other:?} (expected mollified, soliton or constant)"
            ))),
        }
    }

    pub fn distance_section(&self) -> CliResult<&DistanceSection> {
        self.distance
            .as_ref()
            .ok_or_else(|| CliError::Input("config has no [distance] section".into()))
    }
}

impl DistanceSection {
    pub fn window(&self) -> CliResult<Window> {
        Ok(Window::new(
            self.window[0],
            self.window[1],
            self.window[2],
            self.window[3],
        )?)
    }

    pub fn stencil(&self) -> CliResult<StencilOrder> {
        match self.stencil_order.unwrap_or(2) {
            1 => Ok(StencilOrder::K1),
            2 => Ok(StencilOrder::K2),
            k => Err(CliError::Input(format!(
                "stencil_order must be 1 or 2, got {k}"
            ))),
        }
    }
}
