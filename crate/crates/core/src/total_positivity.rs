//! Symmetric integer totally positive matrices and minor-based certificates.
//!
//! [`build_tp`] grows an `n x n` matrix one row/column at a time from two seed
//! sequences. The first row (and column) is `(a_1, ..., a_n)`, the second is
//! `(a_2, b_2, ..., b_n)`; each new entry is the unique integer making the
//! next solid lower-left minor equal to 1. All arithmetic on that path is
//! exact.

use itertools::Itertools;

use crate::error::{FrameError, Result};
use crate::linalg::{binomial, determinant, select, Matrix, Scalar, Tolerances};
use crate::ENUMERATION_CAP;

/// Largest integer magnitude carried exactly by an `f64`.
pub const EXACT_LIMIT: i64 = 1 << 53;

/// Largest Pascal order whose entries stay below [`EXACT_LIMIT`].
pub const PASCAL_MAX: usize = 29;

/// Seed sequences `(a_n)`, `(b_n)` for `n = 1..=len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSequences {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl SeedSequences {
    /// Checks positivity, `b_1 = a_2` and `a_n b_{n+1} - b_n a_{n+1} = 1`.
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(FrameError::BadSeeds(format!(
                "sequences have different lengths ({} and {})",
                a.len(),
                b.len()
            )));
        }
        if a.len() < 2 {
            return Err(FrameError::BadSeeds("at least two terms are required".into()));
        }
        if let Some(pos) = a.iter().chain(&b).position(|&v| v <= 0) {
            let (name, n) = if pos < a.len() { ("a", pos + 1) } else { ("b", pos - a.len() + 1) };
            return Err(FrameError::BadSeeds(format!("{name}_{n} is not a positive integer")));
        }
        if a.iter().chain(&b).any(|&v| v >= EXACT_LIMIT) {
            return Err(FrameError::Overflow);
        }
        if b[0] != a[1] {
            return Err(FrameError::BadSeeds(format!("b_1 = {} differs from a_2 = {}", b[0], a[1])));
        }
        for n in 0..a.len() - 1 {
            let det = a[n] as i128 * b[n + 1] as i128 - b[n] as i128 * a[n + 1] as i128;
            if det != 1 {
                return Err(FrameError::BadSeeds(format!(
                    "a_{i} b_{j} - b_{i} a_{j} = {det}, expected 1",
                    i = n + 1,
                    j = n + 2
                )));
            }
        }
        Ok(SeedSequences { a, b })
    }

    /// `a_n = a0 + da (n - 1)`, `b_n = b0 + db (n - 1)` for `n = 1..=len`.
    pub fn affine(a0: i64, da: i64, b0: i64, db: i64, len: usize) -> Result<Self> {
        let term = |start: i64, step: i64, n: usize| -> Result<i64> {
            (n as i64)
                .checked_mul(step)
                .and_then(|v| v.checked_add(start))
                .ok_or(FrameError::Overflow)
        };
        let a = (0..len).map(|n| term(a0, da, n)).collect::<Result<Vec<_>>>()?;
        let b = (0..len).map(|n| term(b0, db, n)).collect::<Result<Vec<_>>>()?;
        SeedSequences::new(a, b)
    }

    /// `a_n = 1`, `b_n = n`: the seeds of the Pascal matrix.
    pub fn pascal(len: usize) -> Result<Self> {
        SeedSequences::affine(1, 0, 1, 1, len)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `a_n` (1-based).
    pub fn a(&self, n: usize) -> i64 {
        self.a[n - 1]
    }

    /// `b_n` (1-based).
    pub fn b(&self, n: usize) -> i64 {
        self.b[n - 1]
    }
}

/// A square integer matrix with exactly representable entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpMatrix {
    entries: Vec<Vec<i64>>,
}

impl TpMatrix {
    fn from_rows(entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.iter().flatten().any(|v| v.unsigned_abs() > EXACT_LIMIT as u64) {
            return Err(FrameError::Overflow);
        }
        Ok(TpMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j)` (1-based).
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.size();
        Matrix::from_fn(n, n, |i, j| Scalar::new(self.entries[i][j] as f64, 0.0))
    }

    /// Exact minor on 1-based index lists; `None` on `i128` overflow.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Option<i128> {
        let sub = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i - 1][j - 1] as i128).collect())
            .collect();
        bareiss(sub)
    }

    /// Minor on rows `n-k+1..=n` and columns `1..=k`.
    pub fn solid_lower_left_minor(&self, k: usize) -> Option<i128> {
        let n = self.size();
        let rows: Vec<usize> = (n - k + 1..=n).collect();
        let cols: Vec<usize> = (1..=k).collect();
        self.minor(&rows, &cols)
    }

    /// The upper-left `rows x cols` block as a complex matrix.
    pub fn block(&self, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| Scalar::new(self.entries[i][j] as f64, 0.0))
    }
}

/// Fraction-free Gaussian elimination with row swaps; `None` on overflow.
pub(crate) fn bareiss(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else { return Some(0) };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = m[i][j].checked_mul(m[k][k])?;
                let rhs = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// Builds the `n x n` symmetric totally positive matrix from the seeds.
///
/// Needs `2 <= n <= seeds.len()`.
pub fn build_tp(seeds: &SeedSequences, n: usize) -> Result<TpMatrix> {
    if n < 2 {
        return Err(FrameError::InvalidArgument(format!("size must be at least 2, got {n}")));
    }
    if seeds.len() < n {
        return Err(FrameError::BadSeeds(format!(
            "seeds have {} terms, size {n} needs {n}",
            seeds.len()
        )));
    }
    let mut t: Vec<Vec<i128>> = vec![vec![0; n]; n];
    t[0][0] = seeds.a(1) as i128;
    t[0][1] = seeds.b(1) as i128;
    t[1][0] = seeds.a(2) as i128;
    t[1][1] = seeds.b(2) as i128;

    // Grow from size m to m + 1; the new index is `m` (0-based).
    for m in 2..n {
        let am = seeds.a(m + 1) as i128;
        let bm = seeds.b(m + 1) as i128;
        t[m][0] = am;
        t[0][m] = am;
        t[m][1] = bm;
        t[1][m] = bm;
        for j in 2..=m {
            // Solid lower-left minor of order j + 1: rows m-j..=m, cols 0..=j.
            // The unknown sits in its bottom-right corner.
            t[m][j] = 0;
            t[j][m] = t[m][j];
            let block = |t: &Vec<Vec<i128>>, rows: std::ops::RangeInclusive<usize>, cols: usize| {
                rows.map(|r| t[r][..cols].to_vec()).collect::<Vec<_>>()
            };
            let without = bareiss(block(&t, m - j..=m, j + 1)).ok_or(FrameError::Overflow)?;
            let cofactor = bareiss(block(&t, m - j..=m - 1, j)).ok_or(FrameError::Overflow)?;
            if cofactor == 0 || (1 - without) % cofactor != 0 {
                return Err(FrameError::IntegralityBroken { row: m + 1, col: j + 1 });
            }
            let x = (1 - without) / cofactor;
            if x.unsigned_abs() > EXACT_LIMIT as u128 {
                return Err(FrameError::Overflow);
            }
            t[m][j] = x;
            t[j][m] = x;
        }
    }
    let rows = t
        .into_iter()
        .map(|r| r.into_iter().map(|v| v as i64).collect())
        .collect();
    TpMatrix::from_rows(rows)
}

/// `t_ij = C(i + j - 2, j - 1)` for `1 <= i, j <= n`.
pub fn pascal(n: usize) -> Result<TpMatrix> {
    if n == 0 {
        return Err(FrameError::InvalidArgument("size must be at least 1".into()));
    }
    if n > PASCAL_MAX {
        return Err(FrameError::Overflow);
    }
    let rows = (0..n)
        .map(|i| (0..n).map(|j| binomial(i + j, j) as i64).collect())
        .collect();
    TpMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MinorSign {
    Positive,
    Other,
    Zero,
}

/// Exact integer entries when every entry is a real integer in exact range.
fn integer_entries(a: &Matrix) -> Option<Vec<Vec<i128>>> {
    let mut rows = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let mut row = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            let z = a[(i, j)];
            if z.im != 0.0 || z.re.fract() != 0.0 || z.re.abs() > EXACT_LIMIT as f64 {
                return None;
            }
            row.push(z.re as i128);
        }
        rows.push(row);
    }
    Some(rows)
}

struct MinorOracle<'a> {
    a: &'a Matrix,
    exact: Option<Vec<Vec<i128>>>,
    tol: &'a Tolerances,
}

impl<'a> MinorOracle<'a> {
    fn new(a: &'a Matrix, tol: &'a Tolerances) -> Self {
        MinorOracle { a, exact: integer_entries(a), tol }
    }

    /// Sign class of the minor on 0-based index lists.
    fn sign(&self, rows: &[usize], cols: &[usize]) -> MinorSign {
        if let Some(ints) = &self.exact {
            let sub = rows.iter().map(|&i| cols.iter().map(|&j| ints[i][j]).collect()).collect();
            if let Some(d) = bareiss(sub) {
                return match d.signum() {
                    1 => MinorSign::Positive,
                    0 => MinorSign::Zero,
                    _ => MinorSign::Other,
                };
            }
        }
        let one_based = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        let sub = select(self.a, &one_based(rows), &one_based(cols));
        let scale: f64 = sub.row_iter().map(|r| r.norm()).product();
        if scale == 0.0 {
            return MinorSign::Zero;
        }
        let rel = determinant(&sub) / scale;
        if rel.norm() <= self.tol.rank_rel {
            MinorSign::Zero
        } else if rel.re > self.tol.rank_rel && rel.im.abs() <= self.tol.rank_rel {
            MinorSign::Positive
        } else {
            MinorSign::Other
        }
    }
}

/// Total positivity through the `n^2` initial minors: each entry `(i, j)` is
/// the bottom-right corner of the solid minor of order `min(i, j)` ending there.
pub fn is_totally_positive(a: &Matrix, tol: &Tolerances) -> bool {
    if !a.is_square() || a.nrows() == 0 {
        return false;
    }
    let oracle = MinorOracle::new(a, tol);
    let n = a.nrows();
    (0..n).cartesian_product(0..n).all(|(i, j)| {
        let s = i.min(j) + 1;
        let rows: Vec<usize> = (i + 1 - s..=i).collect();
        let cols: Vec<usize> = (j + 1 - s..=j).collect();
        oracle.sign(&rows, &cols) == MinorSign::Positive
    })
}

fn square_submatrix_count(r: usize, c: usize) -> u128 {
    (1..=r.min(c)).fold(0u128, |acc, k| {
        acc.saturating_add(binomial(r, k).saturating_mul(binomial(c, k)))
    })
}

/// The first square submatrix (by order, then lexicographic rows and
/// columns) whose scaled determinant is negligible, as 1-based index lists.
pub fn first_singular_submatrix(
    a: &Matrix,
    tol: &Tolerances,
) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let (r, c) = a.shape();
    let count = square_submatrix_count(r, c);
    if count > ENUMERATION_CAP {
        return Err(FrameError::TooManySubsets { count, cap: ENUMERATION_CAP });
    }
    let oracle = MinorOracle::new(a, tol);
    for k in 1..=r.min(c) {
        for rows in (0..r).combinations(k) {
            for cols in (0..c).combinations(k) {
                if oracle.sign(&rows, &cols) == MinorSign::Zero {
                    let shift = |v: Vec<usize>| v.into_iter().map(|i| i + 1).collect();
                    return Ok(Some((shift(rows), shift(cols))));
                }
            }
        }
    }
    Ok(None)
}

/// Whether every square submatrix is numerically nonsingular.
pub fn is_totally_nonsingular(a: &Matrix, tol: &Tolerances) -> Result<bool> {
    Ok(first_singular_submatrix(a, tol)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real_matrix;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn pascal_rows_match_display() {
        let p = pascal(6).unwrap();
        assert_eq!(p.rows()[2], vec![1, 3, 6, 10, 15, 21]);
        assert_eq!(p.rows()[3], vec![1, 4, 10, 20, 35, 56]);
        assert_eq!(p.entry(4, 3), 10);
        assert_eq!(pascal(2).unwrap().rows(), &[vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn pascal_size_limits() {
        assert!(pascal(0).is_err());
        let big = pascal(PASCAL_MAX).unwrap();
        assert!(big.entry(PASCAL_MAX, PASCAL_MAX) < EXACT_LIMIT);
        assert_eq!(pascal(PASCAL_MAX + 1), Err(FrameError::Overflow));
    }

    #[test]
    fn build_matches_pascal() {
        let seeds = SeedSequences::pascal(6).unwrap();
        assert_eq!(build_tp(&seeds, 6).unwrap(), pascal(6).unwrap());
    }

    #[test]
    fn second_example_entries() {
        let seeds = SeedSequences::affine(1, 1, 2, 3, 5).unwrap();
        let t = build_tp(&seeds, 5).unwrap();
        assert_eq!(t.rows()[0], vec![1, 2, 3, 4, 5]);
        assert_eq!(t.rows()[1], vec![2, 5, 8, 11, 14]);
        assert_eq!(t.rows()[2], vec![3, 8, 14, 21, 29]);
        assert_eq!(t.entry(3, 3), 14);
        assert_eq!(t.entry(4, 4), 35);
        assert_eq!(t.entry(5, 5), 94);
    }

    #[test]
    fn corner_forced_by_determinant() {
        // det [[1,2,3],[2,5,8],[3,8,x]] = x - 13.
        for x in [0i128, 13, 14, 20] {
            let d = bareiss(vec![vec![1, 2, 3], vec![2, 5, 8], vec![3, 8, x]]).unwrap();
            assert_eq!(d, x - 13);
        }
    }

    #[test]
    fn seeds_validation() {
        assert!(matches!(
            SeedSequences::new(vec![1, 2], vec![3, 5]),
            Err(FrameError::BadSeeds(_))
        ));
        assert!(matches!(
            SeedSequences::new(vec![1, 1, 1], vec![1, 2, 4]),
            Err(FrameError::BadSeeds(_))
        ));
        assert!(SeedSequences::new(vec![0, 1], vec![1, 1]).is_err());
        assert!(SeedSequences::new(vec![1], vec![1]).is_err());
        let seeds = SeedSequences::pascal(3).unwrap();
        assert!(matches!(build_tp(&seeds, 4), Err(FrameError::BadSeeds(_))));
        assert!(build_tp(&seeds, 1).is_err());
    }

    #[test]
    fn solid_lower_left_minors_are_one() {
        for seeds in [SeedSequences::pascal(7).unwrap(), SeedSequences::affine(1, 1, 2, 3, 7).unwrap()] {
            let t = build_tp(&seeds, 7).unwrap();
            for k in 2..=7 {
                assert_eq!(t.solid_lower_left_minor(k), Some(1));
            }
        }
    }

    #[test]
    fn total_positivity_examples() {
        assert!(is_totally_positive(&pascal(6).unwrap().to_matrix(), &tol()));
        let zero = real_matrix(2, 2, &[1.0, 0.0, 1.0, 1.0]);
        assert!(!is_totally_positive(&zero, &tol()));
        let mut p = pascal(5).unwrap().to_matrix();
        p[(2, 3)] -= Scalar::new(10.0, 0.0);
        assert!(!is_totally_positive(&p, &tol()));
        assert!(!is_totally_positive(&real_matrix(1, 2, &[1.0, 1.0]), &tol()));
    }

    #[test]
    fn float_path_agrees_with_exact_path() {
        let p = pascal(5).unwrap().to_matrix().scale(0.5);
        assert!(is_totally_positive(&p, &tol()));
        let mut q = p.clone();
        q[(4, 4)] = Scalar::new(0.0, 0.0);
        assert!(!is_totally_positive(&q, &tol()));
    }

    #[test]
    fn total_nonsingularity_examples() {
        let t = real_matrix(3, 2, &[1.0, 1.0, 1.0, 2.0, 1.0, 3.0]);
        assert!(is_totally_nonsingular(&t, &tol()).unwrap());
        let z = real_matrix(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert_eq!(
            first_singular_submatrix(&z, &tol()).unwrap(),
            Some((vec![2], vec![1]))
        );
        assert!(is_totally_nonsingular(&pascal(5).unwrap().to_matrix(), &tol()).unwrap());
        let dep = real_matrix(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert_eq!(
            first_singular_submatrix(&dep, &tol()).unwrap(),
            Some((vec![1, 2], vec![1, 2]))
        );
    }

    #[test]
    fn enumeration_cap_enforced() {
        let big = Matrix::from_element(30, 30, Scalar::new(1.0, 0.0));
        assert!(matches!(
            is_totally_nonsingular(&big, &tol()),
            Err(FrameError::TooManySubsets { .. })
        ));
    }
}
