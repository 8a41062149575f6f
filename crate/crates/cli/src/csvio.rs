//! Trajectory CSV: header `t,x,u,K,w,q`, rows sorted by (t, x), 17
//! significant digits, '.' decimal separator, newline-terminated. The
//! format round-trips f64 exactly, so re-read trajectories reproduce all
//! diagnostics.

use planeflow_core::evolve::Trajectory;
use planeflow_core::flow_state::{gauss_curvature_1d, ConformalFlowState};
use planeflow_core::grid_fd::{make_uniform_grid, Grid1D, ScalarField};
use planeflow_core::pressure::compute_pressure;

use crate::{CliError, CliResult};

pub const HEADER: &str = "t,x,u,K,w,q";

/// One state worth of rows: K, w, q derived from u by the standard stencils.
fn push_state(out: &mut String, state: &ConformalFlowState) -> CliResult<()> {
    let k = gauss_curvature_1d(state)?;
    let p = compute_pressure(state)?;
    let grid = state.u().grid();
    for i in 0..grid.n() {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            state.time(),
            grid.node(i),
            state.u().get(i),
            k.field().get(i),
            p.w().get(i),
            p.q().get(i),
        ));
    }
    Ok(())
}

pub fn trajectory_to_string(states: &[ConformalFlowState]) -> CliResult<String> {
    let mut out = String::from(HEADER);
    out.push('\n');
    for state in states {
        push_state(&mut out, state)?;
    }
    Ok(out)
}

pub fn write_trajectory(path: &str, states: &[ConformalFlowState]) -> CliResult<()> {
    let text = trajectory_to_string(states)?;
    std::fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write trajectory {path}: {e}")))?;
    Ok(())
}

pub fn write_trajectory_of(path: &str, traj: &Trajectory) -> CliResult<()> {
    write_trajectory(path, traj.states())
}

/// Parse a trajectory CSV back into states. The grid is reconstructed from
/// the x column; u is taken bit-exactly from the file.
pub fn read_trajectory(path: &str) -> CliResult<Vec<ConformalFlowState>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read trajectory {path}: {e}")))?;
    parse_trajectory(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn parse_field(s: &str, line: usize, what: &str) -> Result<f64, String> {
    s.parse::<f64>()
        .map_err(|_| format!("line {line}: cannot parse {what} from {s:?}"))
}

pub fn parse_trajectory(text: &str) -> Result<Vec<ConformalFlowState>, String> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        Some((_, h)) => return Err(format!("bad header {h:?}, expected {HEADER:?}")),
        None => return Err("empty trajectory file".into()),
    }

    struct Block {
        t: f64,
        xs: Vec<f64>,
        us: Vec<f64>,
    }
    let mut blocks: Vec<Block> = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(format!(
                "line {lineno}: expected 6 columns, got {}",
                cols.len()
            ));
        }
        let t = parse_field(cols[0], lineno, "t")?;
        let x = parse_field(cols[1], lineno, "x")?;
        let u = parse_field(cols[2], lineno, "u")?;
        // K, w, q columns are derived data; they are re-derived from u on
        // load, so only their parseability is checked here
        for (c, name) in cols[3..].iter().zip(["K", "w", "q"]) {
            parse_field(c, lineno, name)?;
        }
        match blocks.last_mut() {
            Some(b) if b.t == t => {
                b.xs.push(x);
                b.us.push(u);
            }
            _ => blocks.push(Block {
                t,
                xs: vec![x],
                us: vec![u],
            }),
        }
    }
    if blocks.is_empty() {
        return Err("trajectory has no data rows".into());
    }

    let first = &blocks[0];
    let n = first.xs.len();
    if n < 3 {
        return Err(format!("grid needs >= 3 nodes, got {n}"));
    }
    let grid = reconstruct_grid(&first.xs)?;

    let mut states = Vec::with_capacity(blocks.len());
    let mut prev_t = f64::NEG_INFINITY;
    for b in &blocks {
        if b.t <= prev_t {
            return Err(format!(
                "block times not strictly increasing at t = {}",
                b.t
            ));
        }
        prev_t = b.t;
        if b.xs.len() != n {
            return Err(format!(
                "block at t = {} has {} rows, expected {n}",
                b.t,
                b.xs.len()
            ));
        }
        for (i, &x) in b.xs.iter().enumerate() {
            let expect = grid.node(i);
            let tol = 1e-12 * expect.abs().max(1.0);
            if (x - expect).abs() > tol {
                return Err(format!(
                    "x = {x} at row {i} of block t = {} does not sit on the grid (expected {expect})",
                    b.t
                ));
            }
        }
        let field = ScalarField::new(grid.clone(), b.us.clone()).map_err(|e| e.to_string())?;
        let state = ConformalFlowState::new(field, b.t).map_err(|e| e.to_string())?;
        states.push(state);
    }
    Ok(states)
}

fn reconstruct_grid(xs: &[f64]) -> Result<Grid1D, String> {
    let n = xs.len();
    let (x_min, x_max) = (xs[0], xs[n - 1]);
    if !(x_min < x_max) {
        return Err(format!("x column not ascending: [{x_min}, {x_max}]"));
    }
    make_uniform_grid(x_min, x_max, n).map_err(|e| e.to_string())
}
