//! Command-line front end for `framekit`.
//!
//! Every command reads JSON files (or `-` for standard input) and writes one
//! JSON document to standard output. Failures map to exit codes: 2 parse,
//! 3 dimension or index, 4 minimal redundancy violated, 5 certification
//! failed, 1 anything else.

pub mod error;
pub mod format;

use clap::{Args, Parser, Subcommand};
use framekit::{
    analysis, build_tp, compensating_dual, frame_bounds, full_spark_from_generator, is_m_robust,
    is_parseval, is_totally_positive, orthobasis_extension_parseval, reconstruct, spark,
    DualAlgorithm, ErasureSet, Frame, FrameError, GeneratorCheck, GeneratorMatrix, Matrix,
    SeedSequences, Tolerances, Vector,
};
use serde::{Deserialize, Serialize};

pub use error::CliError;
use format::{
    matrix_from_rows, nums, parse_inline_ints, parse_inline_reals, parse_json,
    parse_signal_file, read_input, CoeffFile, FrameFile, Num,
};

/// Placeholder written over erased coefficients.
pub const ERASED_PLACEHOLDER: f64 = 999.0;

/// Environment variable overriding the equality tolerance.
pub const TOL_ENV: &str = "FRAMEKIT_TOL";

#[derive(Debug, Parser)]
#[command(name = "framekit", version, about = "Frames, erasures and full spark constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame coefficients of a signal.
    Encode(EncodeArgs),
    /// Overwrite coefficients with a placeholder and mark them erased.
    Erase(EraseArgs),
    /// Recover the signal from the surviving coefficients.
    Reconstruct(ReconstructArgs),
    /// Frame bounds, robustness and spark of a frame.
    Analyze(AnalyzeArgs),
    /// Symmetric integer totally positive matrix from seed sequences.
    Tp(TpArgs),
    /// Full spark frame [I | T] from a totally nonsingular generator.
    GenFullSpark(GenArgs),
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Frame file.
    pub frame: String,
    /// Signal entries, comma separated (reals).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "signal_file")]
    pub signal: Option<String>,
    /// Signal file: a JSON array or an object with a "signal" key.
    #[arg(long)]
    pub signal_file: Option<String>,
}

#[derive(Debug, Args)]
pub struct EraseArgs {
    /// Coefficient file.
    pub coeffs: String,
    /// 1-based indices to erase, comma separated.
    #[arg(long, conflicts_with = "random")]
    pub indices: Option<String>,
    /// Number of indices to erase at random.
    #[arg(long, requires = "seed")]
    pub random: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    pub frame: String,
    pub coeffs: String,
    /// system | operator | single | chain | closed
    #[arg(long, default_value = "operator")]
    pub algo: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub frame: String,
}

#[derive(Debug, Args)]
pub struct TpArgs {
    /// `pascal` or `affine a0,da,b0,db` (a_n = a0 + da (n-1), b_n = b0 + db (n-1)).
    #[arg(long, num_args = 1..=2, conflicts_with = "file")]
    pub seeds: Option<Vec<String>>,
    /// JSON file {"a": [...], "b": [...]}.
    #[arg(long)]
    pub file: Option<String>,
    #[arg(long)]
    pub size: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub dim: usize,
    /// Total number of vectors.
    #[arg(long)]
    pub count: usize,
    /// Seeds of the totally positive matrix supplying T (default pascal).
    #[arg(long, num_args = 1..=2, conflicts_with = "generator")]
    pub tp_seeds: Option<Vec<String>>,
    /// JSON file {"generator": [[...] rows]} with dim rows and count - dim columns.
    #[arg(long)]
    pub generator: Option<String>,
    /// Make the output Parseval while keeping it full spark.
    #[arg(long)]
    pub parseval: bool,
}

/// Tolerances with `eq_abs` taken from the environment when set.
pub fn tolerances_from_env() -> Result<Tolerances, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(raw) => {
            let v: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::parse(format!("{TOL_ENV}='{raw}' is not a number")))?;
            Tolerances::with_eq_abs(v).map_err(|e| CliError::parse(format!("{TOL_ENV}: {e}")))
        }
        Err(_) => Ok(Tolerances::default()),
    }
}

/// Runs a command and returns the JSON text for standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let tol = tolerances_from_env()?;
    let value = match &cli.command {
        Command::Encode(a) => to_json(&cmd_encode(a)?),
        Command::Erase(a) => to_json(&cmd_erase(a)?),
        Command::Reconstruct(a) => to_json(&cmd_reconstruct(a, &tol)?),
        Command::Analyze(a) => to_json(&cmd_analyze(a, &tol)?),
        Command::Tp(a) => to_json(&cmd_tp(a, &tol)?),
        Command::GenFullSpark(a) => to_json(&cmd_gen_full_spark(a, &tol)?),
    }?;
    Ok(value + "\n")
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(|e| CliError::io(e.to_string()))
}

fn load_frame_file(path: &str) -> Result<FrameFile, CliError> {
    parse_json(&read_input(path)?)
}

fn load_frame(path: &str, tol: &Tolerances) -> Result<Frame, CliError> {
    let family = load_frame_file(path)?.to_family()?;
    Ok(Frame::new(family, tol)?)
}

fn load_coeffs(path: &str) -> Result<CoeffFile, CliError> {
    parse_json(&read_input(path)?)
}

pub fn cmd_encode(a: &EncodeArgs) -> Result<CoeffFile, CliError> {
    let family = load_frame_file(&a.frame)?.to_family()?;
    let signal = match (&a.signal, &a.signal_file) {
        (Some(inline), None) => {
            let v = parse_inline_reals(inline)?;
            Vector::from_iterator(v.len(), v.into_iter().map(|x| framekit::Scalar::new(x, 0.0)))
        }
        (None, Some(path)) => parse_signal_file(&read_input(path)?)?,
        _ => return Err(CliError::parse("give exactly one of --signal or --signal-file")),
    };
    if signal.len() != family.dim() {
        return Err(CliError::dimension(format!(
            "signal has {} entries, frame dimension is {}",
            signal.len(),
            family.dim()
        )));
    }
    Ok(CoeffFile::new(&analysis(&family, &signal)?, Vec::new()))
}

/// 64-bit linear congruential generator; outputs the high 32 bits.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub const A: u64 = 6364136223846793005;
    pub const C: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(Self::A).wrapping_add(Self::C);
        (self.0 >> 32) as u32
    }

    /// `count` distinct entries of `pool` by a partial Fisher-Yates shuffle.
    pub fn choose(&mut self, mut pool: Vec<usize>, count: usize) -> Vec<usize> {
        for i in 0..count.min(pool.len()) {
            let span = (pool.len() - i) as u64;
            let j = i + (self.next_u32() as u64 % span) as usize;
            pool.swap(i, j);
        }
        pool.truncate(count);
        pool
    }
}

pub fn cmd_erase(a: &EraseArgs) -> Result<CoeffFile, CliError> {
    let mut file = load_coeffs(&a.coeffs)?;
    file.vector()?;
    let m = file.coeffs.len();
    let existing = ErasureSet::from_unsorted(file.erased.clone())?;
    existing.check_bound(m)?;
    let fresh = match (&a.indices, a.random) {
        (Some(list), None) => {
            let idx: Vec<usize> = parse_inline_ints(list)?;
            if let Some(bad) = idx.iter().find(|&&i| i == 0 || i > m) {
                return Err(CliError::dimension(format!("index {bad} outside 1..={m}")));
            }
            idx
        }
        (None, Some(count)) => {
            let pool = existing.complement(m);
            if count > pool.len() {
                return Err(CliError::dimension(format!(
                    "cannot erase {count} more of {} remaining coefficients",
                    pool.len()
                )));
            }
            let seed = a.seed.ok_or_else(|| CliError::parse("--random needs --seed"))?;
            Lcg::new(seed).choose(pool, count)
        }
        _ => return Err(CliError::parse("give exactly one of --indices or --random")),
    };
    let mut all: Vec<usize> = existing.indices().to_vec();
    all.extend(fresh);
    all.sort_unstable();
    all.dedup();
    if all.len() == m {
        return Err(CliError::mrc("erasing every coefficient leaves nothing to reconstruct from"));
    }
    for &n in &all {
        file.coeffs[n - 1] = Num(framekit::Scalar::new(ERASED_PLACEHOLDER, 0.0));
    }
    file.erased = all;
    Ok(file)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReconstructReport {
    pub algorithm: String,
    pub erased: Vec<usize>,
    /// `max |sum_n theta_{v_n, x_n} - I|`.
    pub dual_residual: f64,
    pub signal_norm: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReconstructOutput {
    pub signal: Vec<Num>,
    pub report: ReconstructReport,
}

pub fn cmd_reconstruct(a: &ReconstructArgs, tol: &Tolerances) -> Result<ReconstructOutput, CliError> {
    let algorithm: DualAlgorithm = a.algo.parse().map_err(|e: FrameError| CliError::parse(e.to_string()))?;
    let frame = load_frame(&a.frame, tol)?;
    let file = load_coeffs(&a.coeffs)?;
    let coeffs = file.vector()?;
    if coeffs.len() != frame.len() {
        return Err(CliError::dimension(format!(
            "{} coefficients for a frame of {} vectors",
            coeffs.len(),
            frame.len()
        )));
    }
    let erased = ErasureSet::from_unsorted(file.erased.clone())?;
    erased.check_bound(frame.len())?;
    let dual = compensating_dual(&frame, &erased, algorithm, tol)?;
    let signal = reconstruct(&dual, &coeffs)?;
    Ok(ReconstructOutput {
        signal: nums(&signal),
        report: ReconstructReport {
            algorithm: algorithm.name().to_string(),
            erased: erased.indices().to_vec(),
            dual_residual: dual.dual().residual(),
            signal_norm: signal.norm(),
        },
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Checked<T> {
    Value(T),
    Skipped(String),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SparkSummary {
    pub spark: usize,
    pub full_spark: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub dim: usize,
    pub count: usize,
    pub bounds: [f64; 2],
    pub parseval: bool,
    pub excess: usize,
    /// `robust_m` for `m = 1..=max(M - N, 1)`.
    pub robust: std::collections::BTreeMap<String, Checked<bool>>,
    pub spark: Checked<SparkSummary>,
}

const SKIPPED: &str = "skipped";

pub fn cmd_analyze(a: &AnalyzeArgs, tol: &Tolerances) -> Result<AnalyzeReport, CliError> {
    let frame = load_frame(&a.frame, tol)?;
    let (lo, hi) = frame_bounds(&frame);
    let excess = frame.excess();
    let mut robust = std::collections::BTreeMap::new();
    for m in 1..=excess.max(1).min(frame.len()) {
        let value = match is_m_robust(&frame, m, tol) {
            Ok(b) => Checked::Value(b),
            Err(FrameError::TooManySubsets { .. }) => Checked::Skipped(SKIPPED.into()),
            Err(e) => return Err(e.into()),
        };
        robust.insert(format!("robust_{m}"), value);
    }
    let spark = match spark(&frame, tol) {
        Ok(r) => Checked::Value(SparkSummary {
            spark: r.spark,
            full_spark: r.is_full_spark,
            witness: r.witness,
        }),
        Err(FrameError::TooManySubsets { .. }) => Checked::Skipped(SKIPPED.into()),
        Err(e) => return Err(e.into()),
    };
    Ok(AnalyzeReport {
        dim: frame.dim(),
        count: frame.len(),
        bounds: [lo, hi],
        parseval: is_parseval(&frame, tol),
        excess,
        robust,
        spark,
    })
}

#[derive(Debug, Deserialize)]
struct SeedFile {
    a: Vec<i64>,
    b: Vec<i64>,
}

/// Seeds from `pascal` or `affine a0,da,b0,db`, long enough for `len` terms.
pub fn seeds_from_args(words: &[String], len: usize) -> Result<SeedSequences, CliError> {
    match words {
        [kind] if kind == "pascal" => Ok(SeedSequences::pascal(len)?),
        [kind, params] if kind == "affine" => {
            let p: Vec<i64> = parse_inline_ints(params)?;
            let [a0, da, b0, db] = p[..] else {
                return Err(CliError::parse("affine seeds need four integers a0,da,b0,db"));
            };
            Ok(SeedSequences::affine(a0, da, b0, db, len)?)
        }
        _ => Err(CliError::parse(format!(
            "unknown seed specification '{}'; use 'pascal' or 'affine a0,da,b0,db'",
            words.join(" ")
        ))),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Certification {
    pub initial_minors_positive: bool,
    pub solid_lower_left_minors_one: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TpOutput {
    pub size: usize,
    pub matrix: Vec<Vec<i64>>,
    pub certification: Certification,
}

pub fn cmd_tp(a: &TpArgs, tol: &Tolerances) -> Result<TpOutput, CliError> {
    let seeds = match (&a.seeds, &a.file) {
        (_, Some(path)) => {
            let f: SeedFile = parse_json(&read_input(path)?)?;
            SeedSequences::new(f.a, f.b)?
        }
        (Some(words), None) => seeds_from_args(words, a.size.max(2))?,
        (None, None) => SeedSequences::pascal(a.size.max(2))?,
    };
    let t = build_tp(&seeds, a.size)?;
    let certification = Certification {
        initial_minors_positive: is_totally_positive(&t.to_matrix(), tol),
        solid_lower_left_minors_one: (2..=a.size).all(|k| t.solid_lower_left_minor(k) == Some(1)),
    };
    if !(certification.initial_minors_positive && certification.solid_lower_left_minors_one) {
        return Err(CliError::certification("constructed matrix failed its certificate"));
    }
    Ok(TpOutput {
        size: a.size,
        matrix: t.rows().to_vec(),
        certification,
    })
}

#[derive(Debug, Deserialize)]
struct GeneratorFile {
    generator: Vec<Vec<Num>>,
}

pub fn cmd_gen_full_spark(a: &GenArgs, tol: &Tolerances) -> Result<FrameFile, CliError> {
    if a.dim == 0 {
        return Err(CliError::dimension("--dim must be at least 1"));
    }
    if a.count < a.dim {
        return Err(CliError::dimension(format!(
            "--count {} is smaller than --dim {}",
            a.count, a.dim
        )));
    }
    let basis = Frame::from_matrix(Matrix::identity(a.dim, a.dim), tol)?;
    let tail = a.count - a.dim;
    let frame = if tail == 0 {
        if a.generator.is_some() {
            return Err(CliError::dimension("a generator needs --count above --dim"));
        }
        basis
    } else {
        let t = match &a.generator {
            Some(path) => {
                let g: GeneratorFile = parse_json(&read_input(path)?)?;
                let m = matrix_from_rows(&g.generator)?;
                if m.shape() != (a.dim, tail) {
                    return Err(CliError::dimension(format!(
                        "generator is {}x{}, expected {}x{}",
                        m.nrows(),
                        m.ncols(),
                        a.dim,
                        tail
                    )));
                }
                m
            }
            None => {
                let size = a.dim.max(tail).max(2);
                let words = a.tp_seeds.clone().unwrap_or_else(|| vec!["pascal".into()]);
                let seeds = seeds_from_args(&words, size)?;
                build_tp(&seeds, size)?.block(a.dim, tail)
            }
        };
        let t = GeneratorMatrix::new(t)?;
        full_spark_from_generator(&basis, &t, GeneratorCheck::Verify, tol)?
    };
    let frame = if a.parseval {
        orthobasis_extension_parseval(&frame, tol)?
    } else {
        frame
    };
    Ok(FrameFile::from_family(&frame, true))
}
