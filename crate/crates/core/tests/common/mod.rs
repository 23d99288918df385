#![allow(dead_code)]

use framekit::{Frame, Matrix, Scalar, Tolerances, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| {
        Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| {
        Scalar::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

/// A generic (full spark with probability one) random frame.
pub fn random_frame(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Frame {
    loop {
        if let Ok(f) = Frame::from_matrix(random_matrix(rng, n, m), &tol()) {
            return f;
        }
    }
}

pub fn max_abs(a: &Matrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity_distance(a: &Matrix) -> f64 {
    max_abs(&(a - Matrix::identity(a.nrows(), a.ncols())))
}
