//! Degenerate complex 2-planes and complex sectional curvature.
//!
//! A 2-plane σ = span{z, w} in the complexified n-space is *degenerate* when
//! the complex-bilinear form restricted to σ is degenerate, i.e. σ contains
//! a vector in the radical: some z with `g(z,z) = 0` and `g(z,w) = 0`. Every
//! such plane has a normal form `z = (e1 + i e2)/√2`, `w = (e3 + iλ e4)/√(1+λ²)`
//! for an orthonormal frame and λ ∈ [0, 1], which is exactly the frame
//! family below.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::pic1::tensor::{pair_count, pairs, CurvatureTensor};

pub const PLANE_TOL: f64 = 1e-10;

/// Minimal complex scalar for the plane algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex { re: 0.0, im: 0.0 };

    #[inline]
    pub fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Complex::new(self.re * s, self.im * s)
    }

    #[inline]
    pub fn abs2(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn abs(self) -> f64 {
        math::sqrt(self.abs2())
    }
}

impl core::ops::Add for Complex {
    type Output = Complex;
    #[inline]
    fn add(self, o: Complex) -> Complex {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl core::ops::Sub for Complex {
    type Output = Complex;
    #[inline]
    fn sub(self, o: Complex) -> Complex {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl core::ops::Mul for Complex {
    type Output = Complex;
    #[inline]
    fn mul(self, o: Complex) -> Complex {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// Hermitian inner product Σ a_i conj(b_i).
pub fn hermitian_inner(a: &[Complex], b: &[Complex]) -> Complex {
    let mut acc = Complex::ZERO;
    for (x, y) in a.iter().zip(b) {
        acc = acc + *x * y.conj();
    }
    acc
}

/// Complex-bilinear pairing Σ a_i b_i (the metric extended bilinearly).
pub fn bilinear_inner(a: &[Complex], b: &[Complex]) -> Complex {
    let mut acc = Complex::ZERO;
    for (x, y) in a.iter().zip(b) {
        acc = acc + *x * *y;
    }
    acc
}

/// A degenerate 2-plane spanned by Hermitian-orthonormal `z, w`, with `z`
/// the designated isotropic vector in the radical (`g(z,z) = g(z,w) = 0`).
#[derive(Clone, Debug)]
pub struct DegeneratePlane {
    z: Vec<Complex>,
    w: Vec<Complex>,
}

impl DegeneratePlane {
    pub fn new(z: Vec<Complex>, w: Vec<Complex>) -> Result<Self> {
        if z.len() != w.len() || z.len() < 3 {
            return Err(Error::Degeneracy(format!(
                "plane vectors need matching length >= 3, got {} and {}",
                z.len(),
                w.len()
            )));
        }
        let plane = DegeneratePlane { z, w };
        plane.validate()?;
        Ok(plane)
    }

    pub fn validate(&self) -> Result<()> {
        let nz = hermitian_inner(&self.z, &self.z).re;
        let nw = hermitian_inner(&self.w, &self.w).re;
        if (nz - 1.0).abs() > PLANE_TOL || (nw - 1.0).abs() > PLANE_TOL {
            return Err(Error::Degeneracy(format!(
                "spanning vectors not Hermitian-unit: |z|² = {nz}, |w|² = {nw}"
            )));
        }
        let cross = hermitian_inner(&self.z, &self.w).abs();
        if cross > PLANE_TOL {
            return Err(Error::Degeneracy(format!(
                "spanning vectors not Hermitian-orthogonal: |<z,w>| = {cross}"
            )));
        }
        let iso = bilinear_inner(&self.z, &self.z).abs();
        if iso > PLANE_TOL {
            return Err(Error::Degeneracy(format!(
                "designated vector not isotropic: |g(z,z)| = {iso}"
            )));
        }
        let rad = bilinear_inner(&self.z, &self.w).abs();
        if rad > PLANE_TOL {
            return Err(Error::Degeneracy(format!(
                "isotropic vector not in the radical: |g(z,w)| = {rad}"
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.z.len()
    }

    #[inline]
    pub fn z(&self) -> &[Complex] {
        &self.z
    }

    #[inline]
    pub fn w(&self) -> &[Complex] {
        &self.w
    }
}

/// Orthonormal real 4-frame with the interpolation parameter λ ∈ [0, 1] of
/// the normal form; requires ambient dimension >= 4.
#[derive(Clone, Debug)]
pub struct FrameConfiguration {
    vectors: [Vec<f64>; 4],
    lambda: f64,
}

impl FrameConfiguration {
    pub fn new(vectors: [Vec<f64>; 4], lambda: f64) -> Result<Self> {
        let n = vectors[0].len();
        if n < 4 {
            return Err(Error::DimensionTooSmall { needed: 4, got: n });
        }
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::invalid("frame vectors have mismatched lengths"));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::invalid(format!(
                "lambda must lie in [0, 1], got {lambda}"
            )));
        }
        let fc = FrameConfiguration { vectors, lambda };
        let g = fc.gram_residual();
        if g > PLANE_TOL {
            return Err(Error::invalid(format!(
                "frame not orthonormal: gram residual {g}"
            )));
        }
        Ok(fc)
    }

    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..4 {
            for b in a..4 {
                let dot: f64 = self.vectors[a]
                    .iter()
                    .zip(&self.vectors[b])
                    .map(|(x, y)| x * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    #[inline]
    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    /// The degenerate plane of the normal form:
    /// `z = (e1 + i e2)/√2` (radical vector), `w = (e3 + iλ e4)/√(1+λ²)`.
    pub fn plane(&self) -> DegeneratePlane {
        let n = self.vectors[0].len();
        let s2 = 1.0 / math::sqrt(2.0);
        let sl = 1.0 / math::sqrt(1.0 + self.lambda * self.lambda);
        let mut z = vec![Complex::ZERO; n];
        let mut w = vec![Complex::ZERO; n];
        for i in 0..n {
            z[i] = Complex::new(self.vectors[0][i] * s2, self.vectors[1][i] * s2);
            w[i] = Complex::new(
                self.vectors[2][i] * sl,
                self.vectors[3][i] * self.lambda * sl,
            );
        }
        DegeneratePlane { z, w }
    }
}

/// 2-form coefficients `B_{ij} = z_i w_j - z_j w_i` over lexicographic pairs.
fn wedge(z: &[Complex], w: &[Complex]) -> Vec<Complex> {
    let n = z.len();
    let mut b = Vec::with_capacity(pair_count(n));
    for (i, j) in pairs(n) {
        b.push(z[i] * w[j] - z[j] * w[i]);
    }
    b
}

/// `K_C(σ) = R(z, w, z̄, w̄) = B† S B` with `S` the 2-form matrix of `R`;
/// real by the tensor symmetries, and space forms return κ for every plane.
pub fn plane_curvature(r: &CurvatureTensor, plane: &DegeneratePlane) -> Result<f64> {
    if plane.dimension() != r.dimension() {
        return Err(Error::invalid("plane and tensor dimensions differ"));
    }
    plane.validate()?;
    let s = r.two_form_matrix();
    Ok(plane_curvature_with_matrix(&s, r.dimension(), plane))
}

/// Same contraction against a precomputed 2-form matrix (hot path for the
/// minimizer).
pub fn plane_curvature_with_matrix(s: &[f64], n: usize, plane: &DegeneratePlane) -> f64 {
    let b = wedge(plane.z(), plane.w());
    let m = pair_count(n);
    // B† S B = Σ_a conj(B_a) Σ_b S_ab B_b
    let mut acc = 0.0;
    for a in 0..m {
        let mut row = Complex::ZERO;
        for bb in 0..m {
            row = row + b[bb].scale(s[a * m + bb]);
        }
        // real part of conj(B_a)·row
        acc += b[a].re * row.re + b[a].im * row.im;
    }
    acc
}

/// The orthonormal-frame expression for the degenerate-plane curvature:
/// `[R_{1313} + λ²R_{1414} + R_{2323} + λ²R_{2424} - 2λR_{1234}] / (2(1+λ²))`.
///
/// It equals [`plane_curvature`] on the frame's normal-form plane; the
/// module's invariant tests enforce that equality at 1e-10.
pub fn ic1_frame_value(r: &CurvatureTensor, fc: &FrameConfiguration) -> Result<f64> {
    if r.dimension() < 4 {
        return Err(Error::DimensionTooSmall {
            needed: 4,
            got: r.dimension(),
        });
    }
    if fc.vector(0).len() != r.dimension() {
        return Err(Error::invalid("frame and tensor dimensions differ"));
    }
    let (e1, e2, e3, e4) = (fc.vector(0), fc.vector(1), fc.vector(2), fc.vector(3));
    let lam = fc.lambda();
    let r1313 = r.eval4(e1, e3, e1, e3);
    let r1414 = r.eval4(e1, e4, e1, e4);
    let r2323 = r.eval4(e2, e3, e2, e3);
    let r2424 = r.eval4(e2, e4, e2, e4);
    let r1234 = r.eval4(e1, e2, e3, e4);
    Ok(
        (r1313 + lam * lam * r1414 + r2323 + lam * lam * r2424 - 2.0 * lam * r1234)
            / (2.0 * (1.0 + lam * lam)),
    )
}
