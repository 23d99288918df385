mod common;

use common::{identity_distance, max_abs, random_frame, random_matrix, random_vector, rng, tol};
use framekit::linalg::{determinant, hermitian_eigen, identity};
use framekit::{
    analysis, canonical_dual, frame_bounds, frame_operator, hermitian_inv_sqrt, is_parseval,
    minor_det, numeric_rank, solve_linear, synthesis, Frame, Matrix, VectorFamily,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solve_residual_bounded(seed in any::<u64>(), n in 1usize..7, k in 1usize..4) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, n);
        let b = random_matrix(&mut r, n, k);
        if let Ok(x) = solve_linear(&a, &b, &tol()) {
            let residual = max_abs(&(&a * x - &b));
            prop_assert!(residual <= tol().eq_abs * (1.0 + max_abs(&b)));
        }
    }

    #[test]
    fn inverse_square_root_properties(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let g = random_matrix(&mut r, n, n + 2);
        let a = &g * g.adjoint() + identity(n).scale(0.1);
        let s = hermitian_inv_sqrt(&a, &tol()).unwrap();
        prop_assert!(identity_distance(&(&s * &a * &s)) <= tol().eq_abs);
        prop_assert!(max_abs(&(&s - s.adjoint())) <= tol().eq_abs);
        prop_assert!(max_abs(&(&s * &a - &a * &s)) <= tol().eq_abs);
    }

    #[test]
    fn full_minor_is_determinant(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, n);
        let all: Vec<usize> = (1..=n).collect();
        let d = minor_det(&a, &all, &all).unwrap();
        prop_assert!((d - determinant(&a)).norm() <= 1e-12 * (1.0 + d.norm()));
    }

    #[test]
    fn rank_ignores_permutations(seed in any::<u64>(), n in 1usize..5, m in 1usize..6, rank in 1usize..4) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, rank) * random_matrix(&mut r, rank, m);
        let base = numeric_rank(&a, &tol());
        let mut cols: Vec<usize> = (0..m).collect();
        cols.reverse();
        let permuted = Matrix::from_fn(n, m, |i, j| a[((i + 1) % n, cols[j])]);
        prop_assert_eq!(numeric_rank(&permuted, &tol()), base);
        prop_assert_eq!(base, rank.min(n).min(m));
    }

    #[test]
    fn frame_operator_is_synthesis_after_analysis(seed in any::<u64>(), n in 1usize..5, extra in 0usize..4) {
        let mut r = rng(seed);
        let f = random_frame(&mut r, n, n + extra);
        let x = random_vector(&mut r, n);
        let via_ops = synthesis(&f, &analysis(&f, &x).unwrap()).unwrap();
        prop_assert!((via_ops - frame_operator(&f) * &x).norm() < 1e-12);
        let s = frame_operator(&f);
        prop_assert!(max_abs(&(&s - s.adjoint())) == 0.0);
        let (values, _) = hermitian_eigen(&s, &tol()).unwrap();
        let (lo, hi) = frame_bounds(&f);
        prop_assert!(values.iter().all(|&v| v >= lo - 1e-12 && v <= hi + 1e-12));
    }

    #[test]
    fn dual_of_dual_is_original(seed in any::<u64>(), n in 1usize..5, extra in 0usize..4) {
        let mut r = rng(seed);
        let f = random_frame(&mut r, n, n + extra);
        let y = canonical_dual(&f).unwrap();
        let yy = canonical_dual(y.frame()).unwrap();
        prop_assert!(max_abs(&(yy.synthesis_matrix() - f.synthesis_matrix())) <= tol().eq_abs);
    }

    #[test]
    fn reconstruction_through_canonical_dual(seed in any::<u64>(), n in 1usize..5, extra in 0usize..4) {
        let mut r = rng(seed);
        let f = random_frame(&mut r, n, n + extra);
        let y = canonical_dual(&f).unwrap();
        for _ in 0..100 {
            let x = random_vector(&mut r, n);
            let back = synthesis(&y, &analysis(&f, &x).unwrap()).unwrap();
            prop_assert!((back - &x).camax() <= tol().eq_abs);
        }
    }

    #[test]
    fn parseval_iff_unit_bounds(seed in any::<u64>(), n in 1usize..5, extra in 0usize..4, normalize in any::<bool>()) {
        let mut r = rng(seed);
        let mut f = random_frame(&mut r, n, n + extra);
        if normalize {
            let s = hermitian_inv_sqrt(&frame_operator(&f), &tol()).unwrap();
            f = Frame::from_matrix(s * f.synthesis_matrix(), &tol()).unwrap();
        }
        let (lo, hi) = frame_bounds(&f);
        let unit = (lo - 1.0).abs() <= tol().eq_abs && (hi - 1.0).abs() <= tol().eq_abs;
        prop_assert_eq!(is_parseval(&f, &tol()), unit);
        prop_assert!(!normalize || unit);
    }

    #[test]
    fn reduced_frame_operator(seed in any::<u64>(), n in 1usize..5, m in 2usize..7, mask in any::<u8>()) {
        let mut r = rng(seed);
        let f = VectorFamily::from_matrix(random_matrix(&mut r, n, m)).unwrap();
        let erased: Vec<usize> = (1..=m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let kept: Vec<usize> = (1..=m).filter(|i| !erased.contains(i)).collect();
        let part = |idx: &[usize]| {
            let c = f.columns(idx);
            &c * c.adjoint()
        };
        let lhs = part(&kept);
        let rhs = frame_operator(&f) - part(&erased);
        prop_assert!(max_abs(&(lhs - rhs)) < 1e-12);
    }
}
