//! `planeflow pic1`: min_ic1, Ricci spectrum and WPIC1 verdict for a tensor
//! document, with the witness plane emitted on failure.

use std::time::Instant;

use planeflow_core::pic1::{jacobi_eigenvalues, min_ic1, plane_curvature, CurvatureTensor};
use serde::Serialize;

use crate::summary::write_json;
use crate::tensorio::read_tensor;
use crate::{CliResult, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Debug, Serialize)]
struct WitnessJson {
    /// Designated isotropic vector, entries as [re, im].
    z: Vec<[f64; 2]>,
    w: Vec<[f64; 2]>,
    /// plane_curvature re-evaluated on the witness (consistency check).
    value: f64,
}

#[derive(Debug, Serialize)]
struct Pic1Summary {
    command: &'static str,
    input: String,
    dimension: usize,
    samples: usize,
    refine_iters: usize,
    seed: u64,
    tolerance: f64,
    min_ic1: f64,
    ricci_eigenvalues: Vec<f64>,
    ricci_min: f64,
    wpic1: bool,
    witness: WitnessJson,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    input: &str,
    config: Option<&str>,
    samples: Option<usize>,
    seed: Option<u64>,
    refine_iters: Option<usize>,
    tol: Option<f64>,
    summary: Option<&str>,
) -> CliResult<i32> {
    let started = Instant::now();
    // precedence: explicit flag > [pic1] config section > built-in default
    let cfg = config
        .map(crate::config::ExperimentConfig::load)
        .transpose()?;
    let section = cfg.as_ref().and_then(|c| c.pic1.clone());
    let samples = samples
        .or(section.as_ref().and_then(|s| s.samples))
        .unwrap_or(2000);
    let refine_iters = refine_iters
        .or(section.as_ref().and_then(|s| s.refine_iters))
        .unwrap_or(planeflow_core::pic1::DEFAULT_REFINE_ITERS);
    let tol = tol
        .or(section.as_ref().and_then(|s| s.tolerance))
        .unwrap_or(1e-8);
    let seed = seed.or(cfg.as_ref().map(|c| c.seed)).unwrap_or(0);

    let tensor: CurvatureTensor = read_tensor(input)?;
    let n = tensor.dimension();

    let (min_value, witness) = min_ic1(&tensor, samples, refine_iters, seed);
    let verdict = planeflow_core::pic1::Wpic1Verdict {
        is_wpic1: min_value >= -tol,
        min_value,
        tolerance: tol,
        witness,
    };
    let ricci_eigenvalues = jacobi_eigenvalues(&tensor.ricci(), n);
    let ricci_min = ricci_eigenvalues[0];
    let witness_value = plane_curvature(&tensor, &verdict.witness)?;

    let doc = Pic1Summary {
        command: "pic1",
        input: input.to_string(),
        dimension: n,
        samples,
        refine_iters,
        seed,
        tolerance: tol,
        min_ic1: verdict.min_value,
        ricci_eigenvalues,
        ricci_min,
        wpic1: verdict.is_wpic1,
        witness: WitnessJson {
            z: verdict.witness.z().iter().map(|c| [c.re, c.im]).collect(),
            w: verdict.witness.w().iter().map(|c| [c.re, c.im]).collect(),
            value: witness_value,
        },
    };
    if let Some(path) = summary {
        write_json(path, &doc)?;
    }

    println!("dimension      : {n}");
    println!("min_ic1        : {:.12e}", doc.min_ic1);
    println!(
        "ricci spectrum : {}",
        doc.ricci_eigenvalues
            .iter()
            .map(|v| format!("{v:.9e}"))
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!(
        "wpic1          : {} (tolerance {:.1e})",
        if doc.wpic1 { "pass" } else { "FAIL" },
        tol
    );
    if !doc.wpic1 {
        println!("witness value  : {:.12e}", doc.witness.value);
    }
    eprintln!(
        "pic1 {input}: min_ic1 {:.6e}, {:.1} ms",
        doc.min_ic1,
        started.elapsed().as_secs_f64() * 1e3
    );
    Ok(if doc.wpic1 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
