//! Uniform 1D/2D grids and second-order finite-difference stencils.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Uniform 1D grid with `n >= 3` nodes including both endpoints.
///
/// Nodes are computed by multiplication (`x_min + i*h`), never by repeated
/// addition, so node positions carry no accumulated rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
    h: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::invalid("grid endpoints must be finite"));
        }
        if n < 3 {
            return Err(Error::invalid(format!("grid needs n >= 3 nodes, got {n}")));
        }
        if x_min >= x_max {
            return Err(Error::invalid(format!(
                "grid needs x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        let h = (x_max - x_min) / (n - 1) as f64;
        Ok(Grid1D { x_min, x_max, n, h })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    #[inline]
    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        self.x_min + i as f64 * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        x >= self.x_min && x <= self.x_max
    }

    /// Sample a function at every node.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Result<ScalarField> {
        let values: Vec<f64> = self.nodes().map(f).collect();
        ScalarField::new(self.clone(), values)
    }
}

/// Build a uniform grid with exactly `n` equally spaced nodes.
pub fn make_uniform_grid(x_min: f64, x_max: f64, n: usize) -> Result<Grid1D> {
    Grid1D::new(x_min, x_max, n)
}

/// Real-valued samples on a [`Grid1D`]; all values finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid1D,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::invalid(format!(
                "field has {} values for a grid of {} nodes",
                values.len(),
                grid.n()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite field value {} at node {i}",
                values[i]
            )));
        }
        Ok(ScalarField { grid, values })
    }

    pub fn constant(grid: Grid1D, value: f64) -> Result<Self> {
        let n = grid.n();
        ScalarField::new(grid, alloc::vec![value; n])
    }

    #[inline]
    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Map values pointwise, keeping the grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ScalarField> {
        ScalarField::new(
            self.grid.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Piecewise-linear interpolation at `x`.
    pub fn interp_linear(&self, x: f64) -> Result<f64> {
        let g = &self.grid;
        if !g.contains(x) {
            return Err(Error::OutOfDomain(format!(
                "x = {x} outside grid [{}, {}]",
                g.x_min(),
                g.x_max()
            )));
        }
        let s = (x - g.x_min()) / g.h();
        let i = (s as usize).min(g.n() - 2);
        let frac = s - i as f64;
        Ok(self.values[i] * (1.0 - frac) + self.values[i + 1] * frac)
    }

    /// Trapezoid quadrature over the whole grid.
    pub fn trapezoid(&self) -> f64 {
        let h = self.grid.h();
        let n = self.len();
        let mut acc = 0.5 * (self.values[0] + self.values[n - 1]);
        for &v in &self.values[1..n - 1] {
            acc += v;
        }
        acc * h
    }
}

/// Central difference at interior nodes, one-sided second-order at endpoints.
pub fn first_derivative(f: &ScalarField) -> ScalarField {
    let n = f.len();
    let h = f.grid().h();
    let v = f.values();
    let mut out = Vec::with_capacity(n);
    out.push((-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h));
    for i in 1..n - 1 {
        out.push((v[i + 1] - v[i - 1]) / (2.0 * h));
    }
    out.push((3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h));
    ScalarField::new(f.grid().clone(), out).expect("derivative of a finite field is finite")
}

/// Second difference `(f_{i+1} - 2 f_i + f_{i-1})/h²` at interior nodes.
///
/// Endpoint entries copy the adjacent interior value; they are sentinels and
/// must never enter bound checks (reports exclude them, see [`crate::pressure`]).
pub fn second_derivative(f: &ScalarField) -> ScalarField {
    let n = f.len();
    let h2 = f.grid().h() * f.grid().h();
    let v = f.values();
    let mut out = Vec::with_capacity(n);
    out.push(0.0); // placeholder, replaced by sentinel below
    for i in 1..n - 1 {
        out.push((v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2);
    }
    out.push(out[n - 2]);
    out[0] = out[1];
    ScalarField::new(f.grid().clone(), out).expect("second difference of a finite field is finite")
}

/// Uniform rectangular grid, the tensor product of two 1D grids.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid2D {
    x: Grid1D,
    y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Grid2D { x, y }
    }

    #[inline]
    pub fn x(&self) -> &Grid1D {
        &self.x
    }

    #[inline]
    pub fn y(&self) -> &Grid1D {
        &self.y
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.x.n()
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.y.n()
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx() + ix
    }
}

/// Samples on a [`Grid2D`], stored row-major with x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField2D {
    grid: Grid2D,
    values: Vec<f64>,
}

impl ScalarField2D {
    pub fn new(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.nx() * grid.ny() {
            return Err(Error::invalid(format!(
                "2d field has {} values for a {}x{} grid",
                values.len(),
                grid.nx(),
                grid.ny()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite value in 2d field"));
        }
        Ok(ScalarField2D { grid, values })
    }

    pub fn sample(grid: Grid2D, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.nx() * grid.ny());
        for iy in 0..grid.ny() {
            let y = grid.y().node(iy);
            for ix in 0..grid.nx() {
                values.push(f(grid.x().node(ix), y));
            }
        }
        ScalarField2D::new(grid, values)
    }

    #[inline]
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[self.grid.index(ix, iy)]
    }
}
