mod common;

use common::{identity_distance, max_abs, random_frame, random_vector, rng, tol};
use framekit::linalg::inner;
use framekit::{
    analysis, compensating_dual, mrc_by_gramian, mrc_by_operator, mrc_by_span, reconstruct,
    DualAlgorithm, ErasureSet, Frame, Matrix, Scalar,
};
use itertools::Itertools;
use proptest::prelude::*;
use rand::Rng;

/// Small-integer frames hit rank-deficient erasure sets often.
fn integer_frame(seed: u64, n: usize, m: usize) -> Option<Frame> {
    let mut r = rng(seed);
    let x = Matrix::from_fn(n, m, |_, _| Scalar::new(r.random_range(-1i32..=1) as f64, 0.0));
    Frame::from_matrix(x, &tol()).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mrc_tests_agree(seed in any::<u64>(), n in 1usize..5, extra in 0usize..3, mask in any::<u8>()) {
        let m = (n + extra).min(6);
        let Some(f) = integer_frame(seed, n, m) else { return Ok(()) };
        let e = ErasureSet::new((1..=m).filter(|i| mask & (1 << (i - 1)) != 0).take(3).collect()).unwrap();
        let span = mrc_by_span(&f, &e, &tol()).unwrap();
        prop_assert_eq!(span, mrc_by_gramian(&f, &e, &tol()).unwrap());
        prop_assert_eq!(span, mrc_by_operator(&f, &e, &tol()).unwrap());
    }

    #[test]
    fn mrc_is_hereditary(seed in any::<u64>(), n in 1usize..4, extra in 1usize..4) {
        let m = n + extra;
        let Some(f) = integer_frame(seed, n, m) else { return Ok(()) };
        for size in 1..=extra {
            for set in (1..=m).combinations(size) {
                let e = ErasureSet::new(set.clone()).unwrap();
                if !mrc_by_span(&f, &e, &tol()).unwrap() {
                    continue;
                }
                for sub in set.iter().copied().powerset() {
                    let sub = ErasureSet::new(sub).unwrap();
                    prop_assert!(mrc_by_span(&f, &sub, &tol()).unwrap());
                }
            }
        }
    }

    #[test]
    fn compensating_duals_agree_and_reconstruct(seed in any::<u64>(), n in 1usize..5, extra in 1usize..4, k in 1usize..4) {
        let mut r = rng(seed);
        let m = n + extra;
        let f = random_frame(&mut r, n, m);
        let k = k.min(extra);
        let e = ErasureSet::new((1..=m).collect::<Vec<_>>().into_iter().rev().take(k).rev().collect()).unwrap();
        let algos: Vec<DualAlgorithm> = DualAlgorithm::ALL
            .into_iter()
            .filter(|a| *a != DualAlgorithm::Single || k == 1)
            .collect();
        let duals: Vec<_> = algos.iter().map(|a| compensating_dual(&f, &e, *a, &tol()).unwrap()).collect();
        for d in &duals {
            for &n_e in e.indices() {
                prop_assert!(d.vector(n_e).iter().all(|z| z.re.to_bits() == 0 && z.im.to_bits() == 0));
            }
            let sum = d.synthesis_matrix() * f.synthesis_matrix().adjoint();
            prop_assert!(identity_distance(&sum) <= tol().eq_abs);
            for n_s in e.complement(m) {
                let alpha = d.alphas().get(n_s).unwrap();
                for (i, &n_i) in e.indices().iter().enumerate() {
                    let lhs = inner(&d.vector(n_s), &f.vector(n_i));
                    prop_assert!((lhs + alpha[i]).norm() < 1e-9);
                }
            }
            let x = random_vector(&mut r, n);
            let mut c = analysis(&f, &x).unwrap();
            for &n_e in e.indices() {
                c[n_e - 1] = Scalar::new(999.0, 0.0);
            }
            prop_assert!((reconstruct(d, &c).unwrap() - x).camax() <= 1e-8);
        }
        for (a, b) in duals.iter().tuple_combinations() {
            prop_assert!(max_abs(&(a.synthesis_matrix() - b.synthesis_matrix())) <= 1e-8);
        }
    }
}
