//! `planeflow distance`: attainment report (sup |d_g(t) - d_Euclid| over a
//! seeded pair set) and volume-ratio tables for an evolved trajectory.

use std::time::Instant;

use planeflow_core::distance::{attainment_report, volume_ratio, PathMetricGraph};
use planeflow_core::evolve::evolve;
use planeflow_core::math;
use planeflow_core::rng::SplitMix64;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::summary::write_json;
use crate::{CliError, CliResult, EXIT_OK};

#[derive(Debug, Serialize)]
struct AttainmentRowJson {
    t: f64,
    sup_deviation: f64,
    max_interior_k: f64,
}

#[derive(Debug, Serialize)]
struct VolumeRowJson {
    r: f64,
    ratio: f64,
}

#[derive(Debug, Serialize)]
struct DistanceSummary {
    command: &'static str,
    config: ExperimentConfig,
    pair_count: usize,
    max_pair_separation: f64,
    attainment: Vec<AttainmentRowJson>,
    /// Volume ratios at the final recorded state.
    volume: Vec<VolumeRowJson>,
}

/// Node-snapped seeded pairs inside the pair window. Snapping the endpoints
/// to the distance lattice removes the O(h) endpoint quantization from the
/// reported deviations.
pub fn seeded_pairs(
    seed: u64,
    count: usize,
    pair_window: [f64; 4],
    graph_window: [f64; 4],
    h: f64,
) -> Vec<((f64, f64), (f64, f64))> {
    let mut rng = SplitMix64::fork(seed, 0xd157);
    let snap = |v: f64, lo: f64| lo + math::round((v - lo) / h) * h;
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let raw = (
            (
                rng.uniform_in(pair_window[0], pair_window[1]),
                rng.uniform_in(pair_window[2], pair_window[3]),
            ),
            (
                rng.uniform_in(pair_window[0], pair_window[1]),
                rng.uniform_in(pair_window[2], pair_window[3]),
            ),
        );
        let p = (
            snap(raw.0 .0, graph_window[0]),
            snap(raw.0 .1, graph_window[2]),
        );
        let q = (
            snap(raw.1 .0, graph_window[0]),
            snap(raw.1 .1, graph_window[2]),
        );
        if p == q {
            continue;
        }
        pairs.push((p, q));
    }
    pairs
}

pub fn euclidean(p: (f64, f64), q: (f64, f64)) -> f64 {
    math::hypot(p.0 - q.0, p.1 - q.1)
}

pub fn run(config_path: &str) -> CliResult<i32> {
    let started = Instant::now();
    let cfg = ExperimentConfig::load(config_path)?;
    let dist = cfg.distance_section()?.clone();
    let grid = cfg.build_grid()?;
    let evo = cfg.build_evolution(&grid)?;
    let u0 = cfg.build_initial_data(&grid)?;

    let traj = evolve(&u0, &evo)?;
    let window = dist.window()?;
    let order = dist.stencil()?;

    let pairs = seeded_pairs(
        cfg.seed,
        dist.pair_count,
        dist.pair_window,
        dist.window,
        dist.h,
    );
    let max_sep = pairs
        .iter()
        .map(|&(p, q)| euclidean(p, q))
        .fold(0.0f64, f64::max);

    let rows = attainment_report(&traj, &pairs, &euclidean, &window, dist.h, order)?;
    let attainment: Vec<AttainmentRowJson> = rows
        .iter()
        .map(|r| AttainmentRowJson {
            t: r.time,
            sup_deviation: r.sup_deviation,
            max_interior_k: r.max_interior_k,
        })
        .collect();

    let final_state = traj.states().last().expect("trajectory is nonempty");
    let graph = PathMetricGraph::extrude(final_state, &window, dist.h, order)?;
    let center = dist.volume_center.unwrap_or([0.0, 0.0]);
    let center_node = graph.nearest_node(center[0], center[1])?;
    let mut volume = Vec::new();
    for &r in &dist.volume_radii {
        volume.push(VolumeRowJson {
            r,
            ratio: volume_ratio(&graph, center_node, r)?,
        });
    }

    if let Some(path) = &cfg.output.attainment {
        let mut text = String::from("t,sup_deviation,max_interior_K\n");
        for row in &attainment {
            text.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                row.t, row.sup_deviation, row.max_interior_k
            ));
        }
        std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write attainment {path}: {e}")))?;
    }
    if let Some(path) = &cfg.output.volume {
        let mut text = String::from("r,ratio\n");
        for row in &volume {
            text.push_str(&format!("{:.16e},{:.16e}\n", row.r, row.ratio));
        }
        std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write volume {path}: {e}")))?;
    }

    for row in &attainment {
        println!(
            "t={:<10.6} sup|d_g - d0| = {:<12.6e} max interior K = {:.6e}",
            row.t, row.sup_deviation, row.max_interior_k
        );
    }
    for row in &volume {
        println!("volume ratio r={:<6}: {:.6}", row.r, row.ratio);
    }

    let doc = DistanceSummary {
        command: "distance",
        config: cfg.clone(),
        pair_count: pairs.len(),
        max_pair_separation: max_sep,
        attainment,
        volume,
    };
    if let Some(path) = &cfg.output.summary {
        write_json(path, &doc)?;
    }
    eprintln!(
        "distance {config_path}: {} output times, {:.1} ms",
        doc.attainment.len(),
        started.elapsed().as_secs_f64() * 1e3
    );
    Ok(EXIT_OK)
}
