//! Algebraic curvature tensors: dense storage with the full symmetry group
//! (antisymmetry in each index pair, pair interchange, first Bianchi).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Number of index pairs i < j, the dimension of the 2-form space.
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Lexicographic index of the ordered pair (i, j), i < j.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// All ordered pairs (i, j) with i < j in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// A Bianchi-symmetric 4-tensor `R_{ijkl}` in dimension `n >= 3`,
/// stored dense (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    comp: Vec<f64>,
}

impl CurvatureTensor {
    pub fn zero(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { needed: 3, got: n });
        }
        Ok(CurvatureTensor {
            n,
            comp: vec![0.0; n * n * n * n],
        })
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.comp[self.idx(i, j, k, l)]
    }

    /// Set `R_{ijkl}` together with its seven symmetry images.
    pub fn set_symmetric(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        for (a, b, c, d, s) in [
            (i, j, k, l, v),
            (j, i, k, l, -v),
            (i, j, l, k, -v),
            (j, i, l, k, v),
            (k, l, i, j, v),
            (l, k, i, j, -v),
            (k, l, j, i, -v),
            (l, k, j, i, v),
        ] {
            let id = self.idx(a, b, c, d);
            self.comp[id] = s;
        }
    }

    /// Space form `R_{ijkl} = κ (δ_ik δ_jl - δ_il δ_jk)`; every sectional
    /// curvature equals κ and `Ric = (n-1)κ·I`.
    pub fn space_form(n: usize, kappa: f64) -> Result<Self> {
        let mut t = CurvatureTensor::zero(n)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                        let id = t.idx(i, j, k, l);
                        t.comp[id] = kappa * (d(i, k) * d(j, l) - d(i, l) * d(j, k));
                    }
                }
            }
        }
        Ok(t)
    }

    /// Build the tensor from a symmetric operator on 2-forms:
    /// `R_{ijkl} = sign(ij)·sign(kl)·S[(ij), (kl)]`.
    pub fn from_pair_matrix(n: usize, s: &[f64]) -> Result<Self> {
        let m = pair_count(n);
        if s.len() != m * m {
            return Err(Error::invalid(format!(
                "pair matrix needs {}x{} entries, got {}",
                m,
                m,
                s.len()
            )));
        }
        let mut t = CurvatureTensor::zero(n)?;
        let sym = |a: usize, b: usize| 0.5 * (s[a * m + b] + s[b * m + a]);
        for (i, j) in pairs(n) {
            let p = pair_index(n, i, j);
            for (k, l) in pairs(n) {
                let q = pair_index(n, k, l);
                let v = sym(p, q);
                for (a, b, sa) in [(i, j, 1.0), (j, i, -1.0)] {
                    for (c, d, sc) in [(k, l, 1.0), (l, k, -1.0)] {
                        let id = t.idx(a, b, c, d);
                        t.comp[id] = sa * sc * v;
                    }
                }
            }
        }
        Ok(t)
    }

    /// Remove the fully antisymmetric (4-form) part so the first Bianchi
    /// identity holds exactly. In dimension 3 this is the identity map.
    ///
    /// Projected values are written orbit-by-orbit from the canonical
    /// representative, so the antisymmetry and pair symmetries hold bitwise
    /// (the Bianchi identity then holds to rounding, which the residual
    /// tests pin at 1e-12 relative).
    pub fn bianchi_projection(&self) -> Self {
        let n = self.n;
        let mut out = CurvatureTensor::zero(n).expect("dimension already validated");
        for (i, j) in pairs(n) {
            for (k, l) in pairs(n) {
                if (i, j) > (k, l) {
                    continue;
                }
                let cyc = self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k);
                out.set_symmetric(i, j, k, l, self.get(i, j, k, l) - cyc / 3.0);
            }
        }
        out
    }

    /// Seeded random Bianchi tensor: a symmetric Gaussian operator on
    /// 2-forms, reinterpreted as a 4-tensor and Bianchi-projected.
    pub fn random_bianchi(n: usize, seed: u64, scale: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { needed: 3, got: n });
        }
        let m = pair_count(n);
        let mut rng = SplitMix64::fork(seed, 0x42_74_6e_73);
        let mut s = vec![0.0; m * m];
        for a in 0..m {
            for b in a..m {
                let v = scale * rng.normal();
                s[a * m + b] = v;
                s[b * m + a] = v;
            }
        }
        Ok(CurvatureTensor::from_pair_matrix(n, &s)?.bianchi_projection())
    }

    /// Max violation of `R_{ijkl} = -R_{jikl} = -R_{ijlk}`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        worst = worst.max((v + self.get(j, i, k, l)).abs());
                        worst = worst.max((v + self.get(i, j, l, k)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Max violation of `R_{ijkl} = R_{klij}`.
    pub fn pair_symmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        worst = worst.max((self.get(i, j, k, l) - self.get(k, l, i, j)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Max violation of the first Bianchi identity.
    pub fn bianchi_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let cyc =
                            self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k);
                        worst = worst.max(cyc.abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest absolute component, the scale for relative residuals.
    pub fn max_abs(&self) -> f64 {
        self.comp.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Ricci contraction `Ric_jl = Σ_i R_{ijil}` as a dense n×n matrix.
    pub fn ricci(&self) -> Vec<f64> {
        let n = self.n;
        let mut ric = vec![0.0; n * n];
        for j in 0..n {
            for l in 0..n {
                let mut acc = 0.0;
                for i in 0..n {
                    acc += self.get(i, j, i, l);
                }
                ric[j * n + l] = acc;
            }
        }
        ric
    }

    /// The symmetric operator on 2-forms, `S[(ij),(kl)] = R_{ijkl}` over
    /// lexicographic pairs; plane curvatures are `B† S B` for the 2-form
    /// coefficients `B` of the plane.
    pub fn two_form_matrix(&self) -> Vec<f64> {
        let m = pair_count(self.n);
        let ps = pairs(self.n);
        let mut s = vec![0.0; m * m];
        for (a, &(i, j)) in ps.iter().enumerate() {
            for (b, &(k, l)) in ps.iter().enumerate() {
                s[a * m + b] = self.get(i, j, k, l);
            }
        }
        s
    }

    /// Contract with four real vectors: `R(a, b, c, d)`.
    pub fn eval4(&self, a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0.0 {
                    continue;
                }
                for k in 0..n {
                    if c[k] == 0.0 {
                        continue;
                    }
                    let base = ((i * n + j) * n + k) * n;
                    let mut inner = 0.0;
                    for l in 0..n {
                        inner += self.comp[base + l] * d[l];
                    }
                    acc += a[i] * b[j] * c[k] * inner;
                }
            }
        }
        acc
    }

    /// `R + t·other` componentwise.
    pub fn add_scaled(&self, other: &CurvatureTensor, t: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::invalid("tensor dimensions differ"));
        }
        let mut out = self.clone();
        for (o, &v) in out.comp.iter_mut().zip(other.comp.iter()) {
            *o += t * v;
        }
        Ok(out)
    }

    /// Pull back along the orthogonal basis change with columns `q` (row-major
    /// n×n): `R'_{pqrs} = R(Qe_p, Qe_q, Qe_r, Qe_s)`.
    pub fn conjugate(&self, q: &[f64]) -> Result<Self> {
        let n = self.n;
        if q.len() != n * n {
            return Err(Error::invalid("orthogonal matrix size mismatch"));
        }
        // contract one slot at a time
        let col = |p: usize, i: usize| q[i * n + p];
        let mut t1 = vec![0.0; n * n * n * n]; // (p, j, k, l)
        for p in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for i in 0..n {
                            acc += col(p, i) * self.get(i, j, k, l);
                        }
                        t1[((p * n + j) * n + k) * n + l] = acc;
                    }
                }
            }
        }
        let mut t2 = vec![0.0; n * n * n * n]; // (p, q, k, l)
        for p in 0..n {
            for qq in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for j in 0..n {
                            acc += col(qq, j) * t1[((p * n + j) * n + k) * n + l];
                        }
                        t2[((p * n + qq) * n + k) * n + l] = acc;
                    }
                }
            }
        }
        let mut t3 = vec![0.0; n * n * n * n]; // (p, q, r, l)
        for p in 0..n {
            for qq in 0..n {
                for r in 0..n {
                    for l in 0..n {
                        let mut acc = 0.0;
                        for k in 0..n {
                            acc += col(r, k) * t2[((p * n + qq) * n + k) * n + l];
                        }
                        t3[((p * n + qq) * n + r) * n + l] = acc;
                    }
                }
            }
        }
        let mut out = CurvatureTensor::zero(n)?;
        for p in 0..n {
            for qq in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let mut acc = 0.0;
                        for l in 0..n {
                            acc += col(s, l) * t3[((p * n + qq) * n + r) * n + l];
                        }
                        let id = out.idx(p, qq, r, s);
                        out.comp[id] = acc;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Smallest eigenvalue of the Ricci contraction (symmetric Jacobi
/// eigensolver; dimensions here are tiny).
pub fn ricci_min_eigenvalue(r: &CurvatureTensor) -> f64 {
    let n = r.dimension();
    let eig = jacobi_eigenvalues(&r.ricci(), n);
    eig.into_iter().fold(f64::INFINITY, f64::min)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mat: &[f64], n: usize) -> Vec<f64> {
    let mut a = mat.to_vec();
    let scale = a.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * crate::math::atan2(2.0 * apq, aqq - app);
                let (s, c) = (crate::math::sin(theta), crate::math::cos(theta));
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap_or(core::cmp::Ordering::Equal));
    eig
}
