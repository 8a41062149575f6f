//! Curvature tensor JSON: `{"dimension": n, "components": [[i,j,k,l,value],
//! ...]}` with 1-based indices listing any generating set. Unlisted
//! components are completed by the tensor symmetries; contradictory
//! duplicates are an input error, and the completed tensor must satisfy the
//! first Bianchi identity.

use planeflow_core::pic1::CurvatureTensor;
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub dimension: usize,
    pub components: Vec<(usize, usize, usize, usize, f64)>,
}

pub fn read_tensor(path: &str) -> CliResult<CurvatureTensor> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read tensor {path}: {e}")))?;
    let doc: TensorDocument =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("tensor {path}: {e}")))?;
    tensor_from_document(&doc).map_err(|e| CliError::Input(format!("tensor {path}: {e}")))
}

pub fn tensor_from_document(doc: &TensorDocument) -> Result<CurvatureTensor, String> {
    let n = doc.dimension;
    if n < 3 {
        return Err(format!("dimension must be >= 3, got {n}"));
    }
    let mut tensor = CurvatureTensor::zero(n).map_err(|e| e.to_string())?;
    let mut set = std::collections::BTreeMap::<(usize, usize, usize, usize), f64>::new();
    for &(i, j, k, l, v) in &doc.components {
        for (name, idx) in [("i", i), ("j", j), ("k", k), ("l", l)] {
            if idx == 0 || idx > n {
                return Err(format!(
                    "index {name} = {idx} out of range 1..={n} in component [{i},{j},{k},{l}]"
                ));
            }
        }
        let (i0, j0, k0, l0) = (i - 1, j - 1, k - 1, l - 1);
        if i0 == j0 || k0 == l0 {
            if v != 0.0 {
                return Err(format!(
                    "component [{i},{j},{k},{l}] = {v} must vanish (repeated index)"
                ));
            }
            continue;
        }
        // record the value on the symmetry orbit and detect contradictions
        for (a, b, c, d, s) in [
            (i0, j0, k0, l0, v),
            (j0, i0, k0, l0, -v),
            (i0, j0, l0, k0, -v),
            (j0, i0, l0, k0, v),
            (k0, l0, i0, j0, v),
            (l0, k0, i0, j0, -v),
            (k0, l0, j0, i0, -v),
            (l0, k0, j0, i0, v),
        ] {
            if let Some(&old) = set.get(&(a, b, c, d)) {
                let tol = 1e-12 * old.abs().max(1.0);
                if (old - s).abs() > tol {
                    return Err(format!(
                        "contradictory duplicate for component [{},{},{},{}]: {old} vs {s}",
                        a + 1,
                        b + 1,
                        c + 1,
                        d + 1
                    ));
                }
            } else {
                set.insert((a, b, c, d), s);
            }
        }
        tensor.set_symmetric(i0, j0, k0, l0, v);
    }
    let scale = tensor.max_abs().max(1.0);
    let bianchi = tensor.bianchi_residual();
    if bianchi > 1e-12 * scale {
        return Err(format!(
            "first Bianchi identity violated: residual {bianchi:e} (relative to scale {scale:e})"
        ));
    }
    Ok(tensor)
}

/// Serialize a tensor as a generating set (all components with i<j, k<l,
/// (ij) <= (kl) lexicographically, nonzero values only).
pub fn tensor_to_document(t: &CurvatureTensor) -> TensorDocument {
    let n = t.dimension();
    let mut components = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    if (i, j) > (k, l) {
                        continue;
                    }
                    let v = t.get(i, j, k, l);
                    if v != 0.0 {
                        components.push((i + 1, j + 1, k + 1, l + 1, v));
                    }
                }
            }
        }
    }
    TensorDocument {
        dimension: n,
        components,
    }
}

pub fn write_tensor(path: &str, t: &CurvatureTensor) -> CliResult<()> {
    let doc = tensor_to_document(t);
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::Input(format!("tensor serialization: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("cannot write tensor {path}: {e}")))?;
    Ok(())
}
