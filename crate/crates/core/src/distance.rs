//! Geodesic distance and volume in evolving conformal metrics.
//!
//! Distances are computed as shortest paths on a weighted rectangular grid
//! graph rather than by a front-propagation solver: the overestimate factor
//! is then an explicit function of the stencil order (<= ~1.082 for
//! 8-neighbor, <= ~1.0275 for 16-neighbor connectivity) which the checks
//! budget for. Node weights come from a 1D conformal factor extruded in `y`
//! (`u(x, y) = u(x)`), so this realizes `d_{g(t)}` for `g = u(dx² + dy²)`.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow_state::{gauss_curvature_1d, ConformalFlowState};
use crate::math;

/// Axis-aligned window in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        if !(x_min < x_max && y_min < y_max)
            || !x_min.is_finite()
            || !x_max.is_finite()
            || !y_min.is_finite()
            || !y_max.is_finite()
        {
            return Err(Error::invalid(format!(
                "degenerate window [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }
}

/// Neighbor connectivity: `k = 1` is the 8-neighbor (king-move) stencil,
/// `k = 2` adds the knight moves for 16 neighbors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StencilOrder {
    K1,
    K2,
}

impl StencilOrder {
    fn moves(self) -> &'static [(i32, i32)] {
        const K1: &[(i32, i32)] = &[
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
        ];
        const K2: &[(i32, i32)] = &[
            (-1, -1),
            (-1, 0),
            (-1, 1),
            (0, -1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
            (-2, -1),
            (-2, 1),
            (-1, -2),
            (-1, 2),
            (1, -2),
            (1, 2),
            (2, -1),
            (2, 1),
        ];
        match self {
            StencilOrder::K1 => K1,
            StencilOrder::K2 => K2,
        }
    }
}

/// Weighted grid graph over a rectangular window. Edge weight = Euclidean
/// edge length x sqrt of the average of `u` at the two endpoints.
#[derive(Clone, Debug)]
pub struct PathMetricGraph {
    nx: usize,
    ny: usize,
    h: f64,
    x0: f64,
    y0: f64,
    u: Vec<f64>,
    order: StencilOrder,
}

impl PathMetricGraph {
    /// Extrude a 1D state over `window` with square spacing `h`; `u` at the
    /// 2D nodes is linearly interpolated from the state's grid.
    pub fn extrude(
        state: &ConformalFlowState,
        window: &Window,
        h: f64,
        order: StencilOrder,
    ) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!(
                "graph spacing must be positive, got {h}"
            )));
        }
        let nx = (window.width() / h + 0.5) as usize + 1;
        let ny = (window.height() / h + 0.5) as usize + 1;
        if nx < 3 || ny < 3 {
            return Err(Error::invalid("window too small for the requested spacing"));
        }
        let mut u = Vec::with_capacity(nx * ny);
        let mut column = Vec::with_capacity(nx);
        for ix in 0..nx {
            let x = window.x_min + ix as f64 * h;
            column.push(state.u().interp_linear(x)?);
        }
        for _iy in 0..ny {
            u.extend_from_slice(&column);
        }
        Ok(PathMetricGraph {
            nx,
            ny,
            h,
            x0: window.x_min,
            y0: window.y_min,
            u,
            order,
        })
    }

    /// Constant-factor graph (flat metric in disguise when `value` != 1).
    pub fn uniform(window: &Window, h: f64, order: StencilOrder, value: f64) -> Result<Self> {
        if !(value > 0.0) {
            return Err(Error::Positivity(format!("conformal factor {value}")));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!(
                "graph spacing must be positive, got {h}"
            )));
        }
        let nx = (window.width() / h + 0.5) as usize + 1;
        let ny = (window.height() / h + 0.5) as usize + 1;
        if nx < 3 || ny < 3 {
            return Err(Error::invalid("window too small for the requested spacing"));
        }
        Ok(PathMetricGraph {
            nx,
            ny,
            h,
            x0: window.x_min,
            y0: window.y_min,
            u: vec![value; nx * ny],
            order,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn node_xy(&self, id: usize) -> (f64, f64) {
        let (ix, iy) = (id % self.nx, id / self.nx);
        (self.x0 + ix as f64 * self.h, self.y0 + iy as f64 * self.h)
    }

    #[inline]
    pub fn u_at(&self, id: usize) -> f64 {
        self.u[id]
    }

    /// Nearest grid node to `(x, y)`.
    pub fn nearest_node(&self, x: f64, y: f64) -> Result<usize> {
        let fx = (x - self.x0) / self.h;
        let fy = (y - self.y0) / self.h;
        if fx < -0.5 || fy < -0.5 || fx > self.nx as f64 - 0.5 || fy > self.ny as f64 - 0.5 {
            return Err(Error::OutOfDomain(format!(
                "({x}, {y}) outside the graph window"
            )));
        }
        let ix = (math::round(fx) as usize).min(self.nx - 1);
        let iy = (math::round(fy) as usize).min(self.ny - 1);
        Ok(iy * self.nx + ix)
    }

    fn is_boundary(&self, id: usize) -> bool {
        let (ix, iy) = (id % self.nx, id / self.nx);
        ix == 0 || iy == 0 || ix == self.nx - 1 || iy == self.ny - 1
    }

    /// Single-source shortest-path distances (Dijkstra, nonnegative weights,
    /// ties broken by node index so results are deterministic).
    pub fn distances_from(&self, src: usize) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Entry {
            cost: f64,
            node: usize,
        }
        impl Eq for Entry {}
        impl PartialOrd for Entry {
            fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Entry {
            fn cmp(&self, other: &Self) -> core::cmp::Ordering {
                // min-heap: reverse cost order, then node index
                other
                    .cost
                    .partial_cmp(&self.cost)
                    .unwrap_or(core::cmp::Ordering::Equal)
                    .then_with(|| other.node.cmp(&self.node))
            }
        }

        let n = self.node_count();
        let moves = self.order.moves();
        let mut dist = vec![f64::INFINITY; n];
        dist[src] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Entry {
            cost: 0.0,
            node: src,
        });
        while let Some(Entry { cost, node }) = heap.pop() {
            if cost > dist[node] {
                continue;
            }
            let (ix, iy) = ((node % self.nx) as i32, (node / self.nx) as i32);
            let su = self.u[node];
            for &(dx, dy) in moves {
                let (jx, jy) = (ix + dx, iy + dy);
                if jx < 0 || jy < 0 || jx >= self.nx as i32 || jy >= self.ny as i32 {
                    continue;
                }
                let j = jy as usize * self.nx + jx as usize;
                let len = self.h * math::hypot(dx as f64, dy as f64);
                let w = len * math::sqrt(0.5 * (su + self.u[j]));
                let next = cost + w;
                if next < dist[j] {
                    dist[j] = next;
                    heap.push(Entry {
                        cost: next,
                        node: j,
                    });
                }
            }
        }
        dist
    }

    /// Shortest-path distance between two nodes. Computed from the smaller
    /// node index, so `d(p, q)` and `d(q, p)` are the same computation.
    pub fn grid_distance(&self, p: usize, q: usize) -> Result<f64> {
        let (s, t) = (p.min(q), p.max(q));
        let d = self.distances_from(s)[t];
        if !d.is_finite() {
            return Err(Error::Disconnected { from: p, to: q });
        }
        Ok(d)
    }
}

/// Riemannian length of the horizontal segment from `x1` to `x2`: composite
/// Simpson quadrature of `√u`, an upper bound for `d_{g(t)}` between
/// `(x1, 0)` and `(x2, 0)`.
pub fn straight_line_length(state: &ConformalFlowState, x1: f64, x2: f64) -> Result<f64> {
    let grid = state.u().grid();
    if !grid.contains(x1) || !grid.contains(x2) {
        return Err(Error::OutOfDomain(format!(
            "segment [{x1}, {x2}] outside grid [{}, {}]",
            grid.x_min(),
            grid.x_max()
        )));
    }
    let (a, b) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
    if a == b {
        return Ok(0.0);
    }
    // even subinterval count at roughly the grid resolution
    let mut m = math::ceil((b - a) / grid.h()) as usize;
    m = (m + (m & 1)).max(2);
    let dx = (b - a) / m as f64;
    let f = |x: f64| -> Result<f64> { Ok(math::sqrt(state.u().interp_linear(x)?)) };
    let mut acc = f(a)? + f(b)?;
    for i in 1..m {
        let x = a + i as f64 * dx;
        acc += f(x)? * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    Ok(acc * dx / 3.0)
}

/// Sup deviation of grid distances from a reference metric at one time.
#[derive(Clone, Debug)]
pub struct AttainmentRow {
    pub time: f64,
    /// `sup` over the pair list of `|grid_distance - d0(pair)|`.
    pub sup_deviation: f64,
    /// Max interior Gauss curvature of the state (certifies non-staticity).
    pub max_interior_k: f64,
}

/// Per-output-time sup deviation `|d_{g(t)} - d0|` over a fixed pair list,
/// plus the state's max interior curvature.
///
/// Every pair must lie inside `window` with margin at least 10% of the
/// window size on each axis.
pub fn attainment_report(
    traj: &crate::evolve::Trajectory,
    pairs: &[((f64, f64), (f64, f64))],
    d0: &dyn Fn((f64, f64), (f64, f64)) -> f64,
    window: &Window,
    h: f64,
    order: StencilOrder,
) -> Result<Vec<AttainmentRow>> {
    if pairs.is_empty() {
        return Err(Error::invalid("attainment report needs at least one pair"));
    }
    let mx = 0.1 * window.width();
    let my = 0.1 * window.height();
    for &(p, q) in pairs {
        for (x, y) in [p, q] {
            if x < window.x_min + mx
                || x > window.x_max - mx
                || y < window.y_min + my
                || y > window.y_max - my
            {
                return Err(Error::MarginViolation(format!(
                    "pair point ({x}, {y}) within 10% of the window boundary"
                )));
            }
        }
    }

    let mut rows = Vec::with_capacity(traj.states().len());
    for state in traj.states() {
        let graph = PathMetricGraph::extrude(state, window, h, order)?;
        // one Dijkstra per distinct source node
        let mut sources: Vec<usize> = Vec::new();
        let mut source_dists: Vec<Vec<f64>> = Vec::new();
        let mut sup = 0.0f64;
        for &(p, q) in pairs {
            let pn = graph.nearest_node(p.0, p.1)?;
            let qn = graph.nearest_node(q.0, q.1)?;
            let (s, t) = (pn.min(qn), pn.max(qn));
            let idx = match sources.iter().position(|&x| x == s) {
                Some(i) => i,
                None => {
                    sources.push(s);
                    source_dists.push(graph.distances_from(s));
                    sources.len() - 1
                }
            };
            let d = source_dists[idx][t];
            sup = sup.max((d - d0(p, q)).abs());
        }
        let k = gauss_curvature_1d(state)?;
        rows.push(AttainmentRow {
            time: state.time(),
            sup_deviation: sup,
            max_interior_k: k.interior_max(),
        });
    }
    Ok(rows)
}

/// Metric-ball area over flat area: `(Σ_{d(p,·) ≤ r} u·h²) / (π r²)`.
pub fn volume_ratio(graph: &PathMetricGraph, p: usize, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid(format!(
            "ball radius must be positive, got {r}"
        )));
    }
    let dist = graph.distances_from(p);
    let mut area = 0.0;
    for (id, &d) in dist.iter().enumerate() {
        if d <= r {
            if graph.is_boundary(id) {
                return Err(Error::BallTruncated {
                    center: p,
                    radius: r,
                });
            }
            area += graph.u_at(id) * graph.h * graph.h;
        }
    }
    Ok(area / (math::PI * r * r))
}
