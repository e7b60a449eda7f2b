//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 property violation or invalid tensor, 2 input
//! error, 3 internal inconsistency.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::checks::{self, CheckParams, Verdict};
use crate::curvature::CurvatureTensor;
use crate::error::{Error, Result};
use crate::io::{ReportFile, TensorFile};
use crate::linalg::rat;
use crate::polymatrix::{classify_generic, default_radius};
use crate::space::{derive_seed, sample_vector, PseudoEuclideanSpace, ScalarDomain};
use crate::spectral::minimal_polynomial;
use crate::theorems::{self, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "OSSERMAN_SEED";

#[derive(Debug, Parser)]
#[command(name = "osserman", version, about = "Osserman and duality checks for algebraic curvature tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    OssermanViolation,
    DualityViolation,
    NongenericVector,
    NilpotentJacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Sums of rank-one generators with random integer forms.
    Random,
    /// Constant curvature with a random nonzero integer k.
    SpaceForm,
    /// Generators built from null vectors.
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the curvature symmetries of a tensor file.
    Validate { file: PathBuf },
    /// Run every property check and emit a JSON report.
    Report {
        file: PathBuf,
        /// Samples per admissible cone.
        #[arg(long, default_value_t = checks::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = crate::space::DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = DomainArg::Exact)]
        domain: DomainArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search random tensors for witnesses.
    Scan {
        /// Signature as `p,q`.
        #[arg(long, value_parser = parse_signature)]
        signature: (usize, usize),
        /// Dimension; must equal p+q when given.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Family::Random)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        generators: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
        /// Samples per admissible cone for each instance.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Write the witness archive here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Theorems {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_signature(s: &str) -> std::result::Result<(usize, usize), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let p = p.trim().parse::<usize>().map_err(|e| format!("p: {e}"))?;
    let q = q.trim().parse::<usize>().map_err(|e| format!("q: {e}"))?;
    Ok((p, q))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidTensor(_) => EXIT_VIOLATION,
        Error::Internal(_) | Error::Numerical(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing human-readable output to `out`. Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Validate { file } => cmd_validate(&file, out),
        Command::Report { file, samples, seed, tol, domain, out: dest } => {
            let domain = match domain {
                DomainArg::Exact => ScalarDomain::Exact,
                DomainArg::Float => ScalarDomain::Floating { tolerance: tol },
            };
            let params = CheckParams { samples, seed, tol, domain, ..CheckParams::default() };
            cmd_report(&file, &params, dest.as_deref(), out)
        }
        Command::Scan { signature, dim, instances, seed, target, family, generators, bound, samples, max_dim, out: dest } => {
            let opts = ScanOptions { signature, dim, instances, seed, target, family, generators, bound, samples, max_dim };
            cmd_scan(&opts, dest.as_deref(), out)
        }
        Command::Theorems { level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            Ok(cmd_theorems(level, seed, out))
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(text: &str, dest: Option<&std::path::Path>, out: &mut dyn Write) -> Result<()> {
    match dest {
        Some(path) => std::fs::write(path, text)?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

pub fn cmd_validate(path: &std::path::Path, out: &mut dyn Write) -> Result<i32> {
    let file = TensorFile::read(path)?;
    let t = file.tensor()?;
    let rep = t.validate_symmetries();
    if rep.passes() {
        writeln!(out, "ok: all curvature symmetries hold (n = {}, signature {:?})", t.dim(), t.space().signature())?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{} symmetry violations", rep.violations.len())?;
    for v in &rep.violations {
        let [i, j, k, l] = v.indices.map(|x| x + 1);
        writeln!(out, "  {:?} at ({i},{j},{k},{l}): defect {}", v.kind, v.defect)?;
    }
    Ok(EXIT_VIOLATION)
}

pub fn cmd_report(path: &std::path::Path, params: &CheckParams, dest: Option<&std::path::Path>, out: &mut dyn Write) -> Result<i32> {
    let file = TensorFile::read(path)?;
    let t = file.tensor()?;
    let report = checks::full_report(&t, params)?;
    emit(&ReportFile::new(&file, &report).to_json(), dest, out)?;
    if report.is_consistent() {
        Ok(EXIT_OK)
    } else {
        for i in &report.inconsistencies {
            writeln!(out, "inconsistency ({}): {}", i.theorem, i.message)?;
        }
        Ok(EXIT_INTERNAL)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanOptions {
    pub signature: (usize, usize),
    pub dim: Option<usize>,
    pub instances: usize,
    pub seed: u64,
    pub target: Target,
    pub family: Family,
    pub generators: usize,
    pub bound: i64,
    pub samples: usize,
    pub max_dim: usize,
}

/// One archived witness with what is needed to rebuild it.
#[derive(Debug, Clone, Serialize)]
pub struct ScanHit {
    pub instance: usize,
    pub tensor: TensorFile,
    pub witness: Value,
    pub reverified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanArchive {
    pub tool: &'static str,
    pub version: &'static str,
    pub options: ScanOptions,
    pub hits: Vec<ScanHit>,
}

const SCAN_STREAM: u64 = 7;

fn scan_tensor(space: &PseudoEuclideanSpace, opts: &ScanOptions, seed: u64) -> Result<TensorFile> {
    let mut params = Map::new();
    let name = match opts.family {
        Family::Random | Family::Isotropic => {
            params.insert("seed".into(), json!(seed));
            params.insert("generators".into(), json!(opts.generators));
            params.insert("bound".into(), json!(opts.bound));
            if opts.family == Family::Random {
                "random"
            } else {
                "random-isotropic"
            }
        }
        Family::SpaceForm => {
            let b = opts.bound.max(1) as u64;
            let mut k = (seed % (2 * b + 1)) as i64 - b as i64;
            if k == 0 {
                k = 1;
            }
            params.insert("k".into(), json!(k.to_string()));
            "constant-curvature"
        }
    };
    Ok(TensorFile::with_constructor(space, name, params))
}

fn find_witness(t: &CurvatureTensor, opts: &ScanOptions, seed: u64) -> Result<Option<(Value, bool)>> {
    let s = t.space();
    let params = CheckParams { samples: opts.samples, seed, ..CheckParams::default() };
    match opts.target {
        Target::OssermanViolation => {
            let o = checks::is_osserman(t, opts.samples, seed)?;
            match o.witness {
                Some(w) if o.verdict == Verdict::Violated => {
                    let ok = w.reverify(t)?;
                    Ok(Some((serde_json::to_value(&w)?, ok)))
                }
                _ => Ok(None),
            }
        }
        Target::DualityViolation => {
            let d = checks::duality_principle(t, &params)?;
            match d.witnesses.into_iter().next() {
                Some(w) => {
                    let ok = w.reverify(t, params.tol)? && checks::duality_check(t, &w.x, params.tol)?.failures().next().is_some();
                    Ok(Some((serde_json::to_value(&w)?, ok)))
                }
                None => Ok(None),
            }
        }
        Target::NongenericVector => {
            for (ci, cone) in s.admissible_cones().into_iter().enumerate() {
                for i in 0..opts.samples {
                    let sd = derive_seed(seed, SCAN_STREAM, (i * 4 + ci) as u64);
                    let x = sample_vector(s, sd, params.structure_bound, true, cone)?;
                    let g = classify_generic(t, &x, params.genericity_samples, &default_radius(), sd)?;
                    if let crate::polymatrix::GenericClassification::NonGenericWitness { perturbed, perturbed_signature, .. } = &g {
                        let again = checks::structure_at(t, perturbed, ScalarDomain::Exact)? == *perturbed_signature;
                        return Ok(Some((json!({ "x": x, "classification": g }), again)));
                    }
                }
            }
            Ok(None)
        }
        Target::NilpotentJacobi => {
            for (ci, cone) in s.admissible_cones().into_iter().enumerate() {
                for i in 0..opts.samples {
                    let x = sample_vector(s, derive_seed(seed, SCAN_STREAM, (i * 4 + ci) as u64), params.structure_bound, true, cone)?;
                    let a = t.jacobi_operator(&x)?;
                    if a.is_zero() || !a.matrix.mul(&a.matrix)?.is_zero() {
                        continue;
                    }
                    let m = minimal_polynomial(&a)?;
                    let ok = m == crate::polymatrix::UnivariatePolynomial::monomial(rat(1), 2);
                    return Ok(Some((json!({ "x": x, "minimal_polynomial": m }), ok)));
                }
            }
            Ok(None)
        }
    }
}

pub fn run_scan(opts: &ScanOptions) -> Result<ScanArchive> {
    let (p, q) = opts.signature;
    let n = p + q;
    if let Some(d) = opts.dim {
        if d != n {
            return Err(Error::Input(format!("--dim {d} does not match signature ({p},{q})")));
        }
    }
    if n == 0 || n > opts.max_dim {
        return Err(Error::Input(format!("dimension {n} outside 1..={}", opts.max_dim)));
    }
    let space = PseudoEuclideanSpace::new(p, q)?;
    let found: Vec<Result<Option<ScanHit>>> = (0..opts.instances)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(opts.seed, SCAN_STREAM, i as u64);
            let file = scan_tensor(&space, opts, seed)?;
            let t = file.tensor()?;
            Ok(find_witness(&t, opts, seed)?.map(|(witness, reverified)| ScanHit { instance: i, tensor: file, witness, reverified }))
        })
        .collect();
    let mut hits = Vec::new();
    for f in found {
        if let Some(h) = f? {
            hits.push(h);
        }
    }
    Ok(ScanArchive { tool: "osserman", version: env!("CARGO_PKG_VERSION"), options: opts.clone(), hits })
}

pub fn cmd_scan(opts: &ScanOptions, dest: Option<&std::path::Path>, out: &mut dyn Write) -> Result<i32> {
    let archive = run_scan(opts)?;
    let reverified = archive.hits.iter().filter(|h| h.reverified).count();
    if let Some(path) = dest {
        std::fs::write(path, serde_json::to_string_pretty(&archive)?)?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&archive)?)?;
    }
    let target = serde_json::to_value(opts.target)?;
    writeln!(
        out,
        "scan: target {} on ({},{}): {} hits in {} instances, {reverified} re-verified",
        target.as_str().unwrap_or_default(),
        opts.signature.0,
        opts.signature.1,
        archive.hits.len(),
        opts.instances
    )?;
    Ok(if reverified == archive.hits.len() { EXIT_OK } else { EXIT_INTERNAL })
}

pub fn cmd_theorems(level: Level, seed: u64, out: &mut dyn Write) -> i32 {
    let results = theorems::run_suite(level, seed, |r| {
        let _ = writeln!(out, "{r}");
    });
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}
