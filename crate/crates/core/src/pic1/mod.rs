//! Algebraic curvature tensors and the K_IC1 curvature condition.
//!
//! K_IC1 is the infimum of complex sectional curvatures over *degenerate*
//! 2-planes (planes whose restricted complex-bilinear form has nonzero
//! radical). `K_IC1 >= 0` defines WPIC1; in dimension three this is
//! equivalent to a lower Ricci bound (with calibration constant ν = 1/2
//! under this module's Hermitian-orthonormal normalization, measured by the
//! brute-force oracle in the test suite rather than assumed), and in
//! dimension four and higher it is strictly stronger.

mod plane;
mod search;
mod tensor;

pub use plane::{
    bilinear_inner, hermitian_inner, ic1_frame_value, plane_curvature, Complex, DegeneratePlane,
    FrameConfiguration, PLANE_TOL,
};
pub use search::{
    is_wpic1, min_ic1, min_over_random_frames, min_over_random_planes, plane_to_frame,
    random_degenerate_plane, random_orthonormal_frame, three_d_calibration_constant, Wpic1Verdict,
    DEFAULT_REFINE_ITERS,
};
pub use tensor::{
    jacobi_eigenvalues, pair_count, pair_index, pairs, ricci_min_eigenvalue, CurvatureTensor,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn space_form_components_and_ricci() {
        let r = CurvatureTensor::space_form(3, 1.0).unwrap();
        assert_eq!(r.get(0, 1, 0, 1), 1.0); // R_1212 in 1-based labels
        assert_eq!(r.get(0, 2, 0, 2), 1.0);
        assert_eq!(r.get(1, 2, 1, 2), 1.0);
        let ric = r.ricci();
        for j in 0..3 {
            for l in 0..3 {
                let expect = if j == l { 2.0 } else { 0.0 };
                assert_eq!(ric[j * 3 + l], expect);
            }
        }

        let r = CurvatureTensor::space_form(4, 0.0).unwrap();
        assert_eq!(r.max_abs(), 0.0);

        let r = CurvatureTensor::space_form(4, -1.0).unwrap();
        let ric = r.ricci();
        for j in 0..4 {
            assert_eq!(ric[j * 4 + j], -3.0);
        }
        // all sectional curvatures -1
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let f = random_orthonormal_frame(&mut rng, 4, 2);
            let sec = r.eval4(&f[0], &f[1], &f[0], &f[1]);
            assert!((sec + 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn random_bianchi_symmetries_and_determinism() {
        for n in [3usize, 4, 5] {
            let r = CurvatureTensor::random_bianchi(n, 7, 1.0).unwrap();
            let scale = r.max_abs().max(1.0);
            assert!(r.antisymmetry_residual() <= 1e-12 * scale);
            assert!(r.pair_symmetry_residual() <= 1e-12 * scale);
            assert!(r.bianchi_residual() <= 1e-12 * scale, "n = {n}");
            let r2 = CurvatureTensor::random_bianchi(n, 7, 1.0).unwrap();
            assert_eq!(r, r2); // bit-identical for the same seed
        }

        // n = 3: no 4-form exists, so the projection is the identity
        let mut rng = SplitMix64::new(5);
        let m = pair_count(3);
        let mut s = alloc::vec![0.0; m * m];
        for a in 0..m {
            for b in a..m {
                let v = rng.normal();
                s[a * m + b] = v;
                s[b * m + a] = v;
            }
        }
        let raw = CurvatureTensor::from_pair_matrix(3, &s).unwrap();
        let projected = raw.bianchi_projection();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert!((raw.get(i, j, k, l) - projected.get(i, j, k, l)).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn plane_curvature_space_form_calibration() {
        let mut rng = SplitMix64::new(11);
        for n in [3usize, 4, 5] {
            for &kappa in &[-1.0, 0.5, 1.0] {
                let r = CurvatureTensor::space_form(n, kappa).unwrap();
                for _ in 0..50 {
                    let plane = random_degenerate_plane(&mut rng, n);
                    let k = plane_curvature(&r, &plane).unwrap();
                    assert!((k - kappa).abs() < 1e-10, "n = {n}, kappa = {kappa}: {k}");
                }
            }
        }
    }

    // 3D hand expansion: the degenerate plane through the real direction e3
    // has curvature (R_1313 + R_2323)/2 = Ric(e3, e3)/2. In this module's
    // normal form z = (e1 + i e2)/√2 is the isotropic leg and w = e3.
    #[test]
    fn three_d_plane_is_half_ricci() {
        let r = CurvatureTensor::random_bianchi(3, 99, 1.0).unwrap();
        let s2 = 1.0 / 2.0f64.sqrt();
        let z = alloc::vec![Complex::new(s2, 0.0), Complex::new(0.0, s2), Complex::ZERO];
        let w = alloc::vec![Complex::ZERO, Complex::ZERO, Complex::new(1.0, 0.0)];
        let plane = DegeneratePlane::new(z, w).unwrap();
        let k = plane_curvature(&r, &plane).unwrap();
        let expect = 0.5 * (r.get(0, 2, 0, 2) + r.get(1, 2, 1, 2));
        assert!((k - expect).abs() < 1e-13);
        let ric = r.ricci();
        assert!((k - 0.5 * ric[2 * 3 + 2]).abs() < 1e-13);

        // zero tensor: 0 for every plane
        let z0 = CurvatureTensor::zero(3).unwrap();
        assert_eq!(plane_curvature(&z0, &plane).unwrap(), 0.0);
    }

    #[test]
    fn frame_value_examples() {
        let mut rng = SplitMix64::new(21);
        // space form: numerator 2κ(1+λ²) so the value is κ for any frame/λ
        let r = CurvatureTensor::space_form(4, 0.7).unwrap();
        for _ in 0..20 {
            let f = random_orthonormal_frame(&mut rng, 4, 4);
            let lam = rng.uniform();
            let fc = FrameConfiguration::new(
                [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
                lam,
            )
            .unwrap();
            let v = ic1_frame_value(&r, &fc).unwrap();
            assert!((v - 0.7).abs() < 1e-10);
        }

        // zero tensor
        let z = CurvatureTensor::zero(5).unwrap();
        let f = random_orthonormal_frame(&mut rng, 5, 4);
        let fc = FrameConfiguration::new(
            [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
            0.3,
        )
        .unwrap();
        assert_eq!(ic1_frame_value(&z, &fc).unwrap(), 0.0);

        // dimension too small
        let r3 = CurvatureTensor::random_bianchi(3, 1, 1.0).unwrap();
        let f3 = random_orthonormal_frame(&mut rng, 4, 4);
        let fc = FrameConfiguration::new(
            [f3[0].clone(), f3[1].clone(), f3[2].clone(), f3[3].clone()],
            0.5,
        )
        .unwrap();
        assert!(matches!(
            ic1_frame_value(&r3, &fc),
            Err(crate::error::Error::DimensionTooSmall { .. })
        ));
    }

    // Frame/plane consistency: the frame expression equals plane_curvature
    // on the normal-form plane, |difference| <= 1e-10.
    #[test]
    fn frame_plane_consistency() {
        let mut rng = SplitMix64::new(31);
        for n in [4usize, 5] {
            for t in 0..10 {
                let r = CurvatureTensor::random_bianchi(n, 100 + t, 1.0).unwrap();
                for _ in 0..50 {
                    let f = random_orthonormal_frame(&mut rng, n, 4);
                    let lam = rng.uniform();
                    let fc = FrameConfiguration::new(
                        [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
                        lam,
                    )
                    .unwrap();
                    let fv = ic1_frame_value(&r, &fc).unwrap();
                    let pv = plane_curvature(&r, &fc.plane()).unwrap();
                    assert!(
                        (fv - pv).abs() <= 1e-10,
                        "n = {n}: frame {fv} vs plane {pv}"
                    );
                }
            }
        }
    }

    #[test]
    fn plane_validation_rejects_bad_data() {
        // z real unit: Hermitian norm fine but g(z,z) = 1, not isotropic
        let z = alloc::vec![
            Complex::new(1.0, 0.0),
            Complex::ZERO,
            Complex::ZERO,
            Complex::ZERO
        ];
        let w = alloc::vec![
            Complex::ZERO,
            Complex::ZERO,
            Complex::new(1.0, 0.0),
            Complex::ZERO
        ];
        assert!(DegeneratePlane::new(z, w).is_err());
    }

    #[test]
    fn min_ic1_space_forms_and_zero() {
        for n in [3usize, 4, 5] {
            for &kappa in &[-1.0, 0.0, 1.0] {
                let r = CurvatureTensor::space_form(n, kappa).unwrap();
                let (v, witness) = min_ic1(&r, 400, 8, 17);
                assert!((v - kappa).abs() < 1e-6, "n = {n}, kappa = {kappa}: {v}");
                assert!(witness.validate().is_ok());
            }
        }
    }

    #[test]
    fn ricci_min_eigenvalue_examples() {
        for n in [3usize, 4, 6] {
            let r = CurvatureTensor::space_form(n, 2.0).unwrap();
            let expect = 2.0 * (n - 1) as f64;
            assert!((ricci_min_eigenvalue(&r) - expect).abs() < 1e-10);
        }
        let z = CurvatureTensor::zero(4).unwrap();
        assert_eq!(ricci_min_eigenvalue(&z), 0.0);

        // random 3x3 Ricci vs characteristic-polynomial roots
        let r = CurvatureTensor::random_bianchi(3, 1234, 1.0).unwrap();
        let ric = r.ricci();
        let jac = ricci_min_eigenvalue(&r);
        let poly = cubic_min_eigenvalue(&ric);
        assert!((jac - poly).abs() < 1e-10, "jacobi {jac} vs poly {poly}");
    }

    /// Independent oracle: smallest eigenvalue of a symmetric 3x3 via the
    /// trigonometric solution of the characteristic cubic.
    fn cubic_min_eigenvalue(m: &[f64]) -> f64 {
        let (a, b, c) = (m[0], m[4], m[8]);
        let (d, e, f) = (m[1], m[5], m[2]);
        let p1 = d * d + e * e + f * f;
        if p1 == 0.0 {
            return a.min(b).min(c);
        }
        let q = (a + b + c) / 3.0;
        let p2 = (a - q).powi(2) + (b - q).powi(2) + (c - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        let bm: [f64; 9] = [
            (a - q) / p,
            d / p,
            f / p,
            d / p,
            (b - q) / p,
            e / p,
            f / p,
            e / p,
            (c - q) / p,
        ];
        let det = bm[0] * (bm[4] * bm[8] - bm[5] * bm[7]) - bm[1] * (bm[3] * bm[8] - bm[5] * bm[6])
            + bm[2] * (bm[3] * bm[7] - bm[4] * bm[6]);
        let r = (det / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        q + 2.0 * p * (phi + 2.0 * core::f64::consts::PI / 3.0).cos()
    }

    #[test]
    fn wpic1_verdicts_on_space_forms() {
        let r = CurvatureTensor::space_form(4, 1.0).unwrap();
        let v = is_wpic1(&r, 1e-8, 400, 3);
        assert!(v.is_wpic1);

        let r = CurvatureTensor::space_form(4, -1.0).unwrap();
        let v = is_wpic1(&r, 1e-8, 400, 3);
        assert!(!v.is_wpic1);
        assert!((v.min_value + 1.0).abs() < 1e-6);
        // the witness plane reproduces the failing value
        let check = plane_curvature(&r, &v.witness).unwrap();
        assert!((check - v.min_value).abs() < 1e-8);
    }

    // Shift law: adding t·(space form κ=1) shifts every plane curvature,
    // hence the minimum, by exactly t.
    #[test]
    fn shift_law() {
        let one = CurvatureTensor::space_form(4, 1.0).unwrap();
        for seed in 0..3u64 {
            let r = CurvatureTensor::random_bianchi(4, seed, 1.0).unwrap();
            let (v0, _) = min_ic1(&r, 600, 10, 5);
            for &t in &[-0.75, 0.5, 2.0] {
                let shifted = r.add_scaled(&one, t).unwrap();
                let (vt, _) = min_ic1(&shifted, 600, 10, 5);
                assert!(
                    (vt - (v0 + t)).abs() < 1e-6,
                    "seed {seed}, t {t}: {vt} vs {}",
                    v0 + t
                );
            }
        }
    }
}
