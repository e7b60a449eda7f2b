//! End-to-end property suite: one function per acceptance criterion.
//!
//! Every criterion returns a [`CriterionResult`] with the measured values;
//! nothing here is tuned to pass, the thresholds are the published ones.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog;
use crate::checks::{
    self, default_step, derivative_identity_check, duality_over, is_jordan_osserman, is_osserman, is_semisimple,
    minimal_poly_test, pick_derivative_pair, random_orthogonal_direction, CheckParams, DualityOutcome, PairStatus,
    Path, Verdict, CONVERGENCE_BAND, DERIVATIVE_TOLERANCE,
};
use crate::curvature::CurvatureTensor;
use crate::error::{Error, Result};
use crate::io::{comparable_report, ReportFile, TensorFile};
use crate::linalg::{rat, ratio, Matrix, Rational};
use crate::oracle;
use crate::polymatrix::{classify_generic, invariant_factors, jordan_structure_exact};
use crate::space::{derive_seed, sample_vector, PseudoEuclideanSpace, Vector};
use crate::spectral::{char_poly, jordan_structure_numeric};

/// Signatures exercised by the suite.
pub const SIGNATURES: [(usize, usize); 6] = [(2, 0), (3, 0), (1, 1), (2, 1), (2, 2), (3, 3)];
/// Curvatures of the space-form suite.
pub fn space_form_curvatures() -> [Rational; 3] {
    [rat(-2), ratio(1, 3), rat(5)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

impl Level {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Level::Quick => quick,
            Level::Full => full,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub measured: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.measured
        )
    }
}

/// Reciprocity counts gathered from duality runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReciprocityTally {
    pub checked: usize,
    pub failed: usize,
}

impl ReciprocityTally {
    fn absorb(&mut self, d: &DualityOutcome) {
        self.checked += d.reciprocity_checked;
        self.failed += d.reciprocity_failed;
    }

    fn merge(&mut self, other: ReciprocityTally) {
        self.checked += other.checked;
        self.failed += other.failed;
    }
}

fn space(p: usize, q: usize) -> PseudoEuclideanSpace {
    PseudoEuclideanSpace::new(p, q).expect("suite signatures are valid")
}

fn finish(id: u8, name: &'static str, start: Instant, outcome: Result<(bool, String)>) -> CriterionResult {
    let (passed, measured) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name, passed, measured, elapsed: start.elapsed() }
}

// ---------------------------------------------------------------- 1

pub const CRITERION_1_BUDGET: Duration = Duration::from_secs(30);

pub fn criterion_1(level: Level, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let count = level.pick(20, 100);
    let outcome = (|| {
        let mut failures = 0usize;
        for (si, &(p, q)) in SIGNATURES.iter().enumerate() {
            let s = space(p, q);
            let bad: Vec<Result<bool>> = (0..count)
                .into_par_iter()
                .map(|i| {
                    let t = catalog::random_act(&s, derive_seed(seed, 100 + si as u64, i as u64), 3, 5)?;
                    Ok(!t.validate_symmetries().passes())
                })
                .collect();
            for b in bad {
                failures += b? as usize;
            }
        }
        let elapsed = start.elapsed();
        let ok = failures == 0 && elapsed < CRITERION_1_BUDGET;
        Ok((ok, format!("{} tensors, {failures} failing, {:.2}s (budget 30s)", count * SIGNATURES.len(), elapsed.as_secs_f64())))
    })();
    finish(1, "symmetry exactness", start, outcome)
}

// ---------------------------------------------------------------- 2

/// Coefficients of `t(t − k)^{n−1}` from the binomial theorem.
pub fn space_form_coefficients(n: usize, k: &Rational) -> Vec<Rational> {
    let mut out = vec![rat(0); n + 1];
    let mut binom = rat(1);
    for j in 1..=n {
        // t · C(n−1, j−1) t^{j−1} (−k)^{n−j}
        let m = j - 1;
        if m > 0 {
            binom = binom * rat((n - 1 - (m - 1)) as i64) / rat(m as i64);
        }
        out[j] = &binom * num_traits::pow(-k.clone(), n - j);
    }
    out
}

pub fn criterion_2(level: Level, seed: u64) -> (CriterionResult, ReciprocityTally) {
    let start = Instant::now();
    let samples = level.pick(16, 64);
    let mut tally = ReciprocityTally::default();
    let outcome = (|| {
        let mut problems = Vec::new();
        let mut cases = 0;
        for &(p, q) in &SIGNATURES {
            let s = space(p, q);
            for k in space_form_curvatures() {
                cases += 1;
                let label = format!("({p},{q}) k={k}");
                let t = catalog::constant_curvature(&s, &k);
                let params = CheckParams::default().with_samples(samples).with_seed(seed);
                let o = is_osserman(&t, samples, seed)?;
                let cert = match (&o.verdict, &o.certificate) {
                    (Verdict::HoldsOnSamples, Some(c)) => c.clone(),
                    _ => {
                        problems.push(format!("{label}: osserman {}", o.verdict));
                        continue;
                    }
                };
                if cert.coefficients != space_form_coefficients(s.dim(), &k) {
                    problems.push(format!("{label}: certificate mismatch"));
                }
                let jo = is_jordan_osserman(&t, &params, &o)?;
                if jo.verdict != Verdict::HoldsOnSamples {
                    problems.push(format!("{label}: jordan-osserman {}", jo.verdict));
                }
                let d = checks::duality_principle(&t, &params)?;
                tally.absorb(&d);
                if d.verdict != Verdict::HoldsOnSamples || d.failed + d.flagged_null_failed > 0 || d.max_rho_passed != 0.0 {
                    problems.push(format!("{label}: duality {} with {} failures", d.verdict, d.failed));
                }
                let x = sample_vector(&s, derive_seed(seed, 200, cases), 10, true, s.admissible_cones()[0])?;
                if !minimal_poly_test(&t, &x, &cert)? {
                    problems.push(format!("{label}: minimal polynomial test false"));
                }
            }
        }
        let summary = format!("{cases} space forms, {samples} samples/cone; {}", if problems.is_empty() { "all four properties hold".into() } else { problems.join("; ") });
        Ok((problems.is_empty(), summary))
    })();
    (finish(2, "space-form suite", start, outcome), tally)
}

// ---------------------------------------------------------------- 3

fn random_int_matrix(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    Matrix::from_fn(n, n, |_, _| rat(rng.gen_range(-bound..=bound)))
}

/// Product of random unit lower- and upper-triangular integer matrices.
fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let l = Matrix::from_fn(n, n, |i, j| if i == j { rat(1) } else if i > j { rat(rng.gen_range(-1..=1)) } else { rat(0) });
    let u = Matrix::from_fn(n, n, |i, j| if i == j { rat(1) } else if i < j { rat(rng.gen_range(-1..=1)) } else { rat(0) });
    l.mul(&u).expect("square")
}

/// Random Jordan matrix with distinct integer eigenvalues per group.
fn random_jordan(rng: &mut impl Rng, n: usize) -> (Matrix, Vec<(Rational, Vec<usize>)>) {
    let mut left = n;
    let mut groups: Vec<(Rational, Vec<usize>)> = Vec::new();
    let mut pool: Vec<i64> = (-3..=3).collect();
    while left > 0 {
        let idx = rng.gen_range(0..pool.len());
        let lambda = pool.swap_remove(idx);
        let size = rng.gen_range(1..=left);
        // split the group into blocks
        let mut blocks = Vec::new();
        let mut rem = size;
        while rem > 0 {
            let b = rng.gen_range(1..=rem);
            blocks.push(b);
            rem -= b;
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        groups.push((rat(lambda), blocks));
        left -= size;
    }
    let mut m = Matrix::zeros(n, n);
    let mut pos = 0;
    for (lambda, blocks) in &groups {
        for &b in blocks {
            for i in 0..b {
                m[(pos + i, pos + i)] = lambda.clone();
                if i + 1 < b {
                    m[(pos + i, pos + i + 1)] = rat(1);
                }
            }
            pos += b;
        }
    }
    (m, groups)
}

pub fn criterion_3(level: Level, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let count = level.pick(25, 100);
    let conj = level.pick(15, 50);
    let outcome = (|| {
        let mut problems = Vec::new();
        let mut numeric_compared = 0usize;
        for n in 2..=5usize {
            let res: Vec<Result<(bool, bool)>> = (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 300 + n as u64, i as u64));
                    let a = random_int_matrix(&mut rng, n, 5);
                    let op = crate::curvature::SquareOperator::plain(a.clone());
                    let inv = invariant_factors(&op);
                    let prod_ok = inv.product() == char_poly(&op).to_polynomial()
                        && inv.product() == oracle::faddeev_leverrier(&a)?;
                    let naive_ok = if n <= 4 { inv.factors() == oracle::invariant_factors_naive(&a)?.as_slice() } else { true };
                    Ok((prod_ok, naive_ok))
                })
                .collect();
            for (i, r) in res.into_iter().enumerate() {
                let (prod_ok, naive_ok) = r?;
                if !prod_ok {
                    problems.push(format!("n={n} #{i}: product of invariant factors != char poly"));
                }
                if !naive_ok {
                    problems.push(format!("n={n} #{i}: Smith factors differ from minor gcds"));
                }
            }
        }
        for n in 1..=6usize {
            let res: Vec<Result<(bool, Option<bool>)>> = (0..conj)
                .into_par_iter()
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 350 + n as u64, i as u64));
                    let (j, groups) = random_jordan(&mut rng, n);
                    let u = random_unimodular(&mut rng, n);
                    let a = u.mul(&j)?.mul(&u.inverse()?)?;
                    let op = crate::curvature::SquareOperator::plain(a.clone());
                    let js = jordan_structure_exact(&op);
                    let exact_ok = js.p() == groups.len()
                        && groups.iter().all(|(l, b)| js.blocks_at_rational(l).as_ref() == Some(b));
                    // integer eigenvalues: every gap is at least 1
                    let numeric = jordan_structure_numeric(&a.to_f64(), 1e-8)?;
                    let numeric_ok = numeric.agrees_with(&js, 1e-3, 1.0);
                    Ok((exact_ok, Some(numeric_ok)))
                })
                .collect();
            for (i, r) in res.into_iter().enumerate() {
                let (exact_ok, numeric_ok) = r?;
                if !exact_ok {
                    problems.push(format!("n={n} #{i}: exact Jordan structure wrong"));
                }
                if let Some(ok) = numeric_ok {
                    numeric_compared += 1;
                    if !ok {
                        problems.push(format!("n={n} #{i}: numeric Jordan structure disagrees"));
                    }
                }
            }
        }
        let summary = format!(
            "{} random matrices, {} conjugated Jordan forms ({numeric_compared} numeric comparisons); {}",
            4 * count,
            6 * conj,
            if problems.is_empty() { "all agree".to_string() } else { format!("{} problems: {}", problems.len(), problems.iter().take(5).cloned().collect::<Vec<_>>().join("; ")) }
        );
        Ok((problems.is_empty(), summary))
    })();
    finish(3, "canonical-form oracle equivalence", start, outcome)
}

// ---------------------------------------------------------------- 4

/// Catalog tensors that are candidates for the Jordan-Osserman property.
pub fn jordan_osserman_candidates() -> Vec<(String, Result<CurvatureTensor>)> {
    let mut out = Vec::new();
    for &(p, q) in &SIGNATURES {
        for k in space_form_curvatures() {
            out.push((format!("space form ({p},{q}) k={k}"), Ok(catalog::constant_curvature(&space(p, q), &k))));
        }
    }
    let e4 = space(4, 0);
    out.push((
        "clifford R^4 complex (1; 3)".into(),
        catalog::complex_structure(&e4).and_then(|cs| catalog::clifford_tensor(&e4, &cs, &rat(1), &[rat(3)])),
    ));
    out.push((
        "clifford R^4 quaternionic (1; 1/10, 2, -1/3)".into(),
        catalog::quaternionic_structures(&e4)
            .and_then(|cs| catalog::clifford_tensor(&e4, &cs, &rat(1), &[ratio(1, 10), rat(2), ratio(-1, 3)])),
    ));
    let n22 = space(2, 2);
    out.push((
        "clifford (2,2) complex (1; 1/2)".into(),
        catalog::complex_structure(&n22).and_then(|cs| catalog::clifford_tensor(&n22, &cs, &rat(1), &[ratio(1, 2)])),
    ));
    out.push(("nilpotent (1,1)".into(), catalog::nilpotent_example((1, 1))));
    out.push(("nilpotent (2,2)".into(), catalog::nilpotent_example((2, 2))));
    out
}

pub fn criterion_4(level: Level, seed: u64) -> (CriterionResult, ReciprocityTally) {
    let start = Instant::now();
    let samples = level.pick(32, 128);
    let mut tally = ReciprocityTally::default();
    let outcome = (|| {
        let mut qualified = 0;
        let mut skipped = Vec::new();
        let mut failures = Vec::new();
        let mut flagged = 0;
        for (name, t) in jordan_osserman_candidates() {
            let t = match t {
                Ok(t) => t,
                Err(Error::NotConstructible(_)) => {
                    skipped.push(format!("{name} (not constructible)"));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let params = CheckParams::default().with_samples(samples).with_seed(seed);
            let o = is_osserman(&t, 32, seed)?;
            let jo = is_jordan_osserman(&t, &params, &o)?;
            if jo.verdict != Verdict::HoldsOnSamples {
                skipped.push(format!("{name} (jordan-osserman {})", jo.verdict));
                continue;
            }
            qualified += 1;
            let d = checks::duality_principle(&t, &params)?;
            tally.absorb(&d);
            flagged += d.flagged_null;
            if d.failed > 0 || d.verdict != Verdict::HoldsOnSamples {
                failures.push(format!("{name}: {} non-flagged failures", d.failed));
            }
        }
        let summary = format!(
            "{qualified} Jordan-Osserman tensors at {samples} samples/cone, {} non-flagged failures, {flagged} flagged-null pairs; skipped: [{}]{}",
            failures.len(),
            skipped.join(", "),
            if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
        );
        Ok((failures.is_empty() && qualified > 0, summary))
    })();
    (finish(4, "Jordan-Osserman implies duality", start, outcome), tally)
}

// ---------------------------------------------------------------- 5

pub const CRITERION_5_TENSORS: usize = 25;
pub const CRITERION_5_MAX_X: usize = 256;

pub fn criterion_5(level: Level, seed: u64) -> (CriterionResult, ReciprocityTally) {
    let start = Instant::now();
    let wanted = level.pick(8, CRITERION_5_TENSORS);
    let mut tally = ReciprocityTally::default();
    let outcome = (|| {
        let mut lines = Vec::new();
        let mut ok = true;
        for &(p, q) in &[(2usize, 1usize), (2, 2)] {
            let s = space(p, q);
            let mut found = 0;
            let mut detected = 0;
            let mut reverified = 0;
            let mut max_x = 0;
            let mut attempts = 0u64;
            while found < wanted && attempts < 20 * wanted as u64 {
                let tseed = derive_seed(seed, 500 + p as u64 * 10 + q as u64, attempts);
                attempts += 1;
                let t = catalog::random_act(&s, tseed, 3, 5)?;
                let screen = CheckParams { samples: 8, seed: tseed, ..CheckParams::default() };
                if is_osserman(&t, 16, tseed)?.verdict != Verdict::Violated
                    || is_semisimple(&t, &screen)?.verdict != Verdict::HoldsOnSamples
                {
                    continue;
                }
                found += 1;
                // Draw X alternately from the cones, in batches, up to the cap.
                let cones = s.admissible_cones();
                let params = CheckParams { seed: tseed, ..CheckParams::default() };
                let mut used = 0;
                let mut witness = None;
                while used < CRITERION_5_MAX_X && witness.is_none() {
                    let batch: Vec<Vector> = (used..(used + 32).min(CRITERION_5_MAX_X))
                        .map(|i| {
                            sample_vector(&s, derive_seed(tseed, 501, i as u64), params.structure_bound, true, cones[i % cones.len()])
                        })
                        .collect::<Result<_>>()?;
                    used += batch.len();
                    let d = duality_over(&t, &batch, &params)?;
                    tally.absorb(&d);
                    witness = d.witnesses.into_iter().next();
                }
                if let Some(w) = witness {
                    detected += 1;
                    max_x = max_x.max(used);
                    let exact_nonzero = w.pair.path == Path::Exact && w.pair.defect.as_ref().is_some_and(|d| *d != rat(0));
                    let float_large = w.pair.path == Path::Floating && w.pair.rho > 100.0 * params.tol;
                    if (exact_nonzero || float_large) && w.pair.status == PairStatus::Failed && w.reverify(&t, params.tol)? {
                        reverified += 1;
                    }
                }
            }
            ok &= found == wanted && detected == found && reverified == detected;
            lines.push(format!(
                "({p},{q}): {found}/{wanted} semisimple non-Osserman tensors, {detected} duality violations (max {max_x} X), {reverified} re-verified"
            ));
        }
        Ok((ok, lines.join("; ")))
    })();
    (finish(5, "semisimple non-Osserman tensors violate duality", start, outcome), tally)
}

// ---------------------------------------------------------------- 6

pub fn criterion_6(level: Level, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let per = level.pick(4, 10);
    let outcome = (|| {
        let mut tensors: Vec<(String, CurvatureTensor)> = Vec::new();
        for &(p, q) in &SIGNATURES {
            for k in space_form_curvatures() {
                tensors.push((format!("({p},{q}) k={k}"), catalog::constant_curvature(&space(p, q), &k)));
            }
        }
        for (name, t) in jordan_osserman_candidates() {
            if name.starts_with("clifford") {
                tensors.push((name, t?));
            }
        }
        let mut worst_rel: f64 = 0.0;
        let mut worst_radial: f64 = 0.0;
        let mut ratio_range = (f64::INFINITY, f64::NEG_INFINITY);
        let mut failures = Vec::new();
        let mut triples = 0;
        for (ti, (name, t)) in tensors.iter().enumerate() {
            let s = t.space();
            let cones = s.admissible_cones();
            let results: Vec<Result<Option<checks::DerivativeResidual>>> = (0..per)
                .into_par_iter()
                .map(|i| {
                    // Retry until a generic point with a usable eigenpair is drawn.
                    for attempt in 0..20u64 {
                        let sd = derive_seed(seed, 600 + ti as u64, (i as u64) * 64 + attempt);
                        let x = sample_vector(s, sd, 10, true, cones[i % cones.len()])?;
                        let g = classify_generic(t, &x, 8, &crate::polymatrix::default_radius(), sd)?;
                        if !g.is_generic_evidence() {
                            continue;
                        }
                        let Some(pair) = pick_derivative_pair(t, &x, 1e-9)? else { continue };
                        let dir = random_orthogonal_direction(s, &x, sd ^ 0x5555)?;
                        let h = default_step(s, &x, checks::DEFAULT_STEP)?;
                        return Ok(Some(derivative_identity_check(t, &x, &pair, &dir, h, 1e-9)?));
                    }
                    Ok(None)
                })
                .collect();
            for r in results {
                match r? {
                    None => failures.push(format!("{name}: no generic triple found")),
                    Some(r) => {
                        triples += 1;
                        worst_rel = worst_rel.max(r.relative_r_h);
                        worst_radial = worst_radial.max(r.radial_relative);
                        if let Some(q) = r.ratio {
                            ratio_range = (ratio_range.0.min(q), ratio_range.1.max(q));
                        }
                        if r.relative_r_h > DERIVATIVE_TOLERANCE || !r.ratio_in_band() || r.radial_relative > DERIVATIVE_TOLERANCE {
                            failures.push(format!("{name}: rel {:.2e}, ratio {:?}, radial {:.2e}", r.relative_r_h, r.ratio, r.radial_relative));
                        }
                    }
                }
            }
        }
        let summary = format!(
            "{triples} triples; max relative r(h) {worst_rel:.3e} (<= 1e-6), r(h/2)/r(h) in [{:.4}, {:.4}] (band {:?}), max radial {worst_radial:.3e}{}",
            ratio_range.0,
            ratio_range.1,
            CONVERGENCE_BAND,
            if failures.is_empty() { String::new() } else { format!("; failures: {}", failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ")) }
        );
        Ok((failures.is_empty(), summary))
    })();
    finish(6, "first-variation identity by finite differences", start, outcome)
}

// ---------------------------------------------------------------- 7

pub fn criterion_7(tallies: &[ReciprocityTally]) -> CriterionResult {
    let start = Instant::now();
    let mut total = ReciprocityTally::default();
    for t in tallies {
        total.merge(*t);
    }
    let ok = total.checked > 0 && total.failed == 0;
    finish(
        7,
        "reciprocity of mutual eigenpairs",
        start,
        Ok((ok, format!("{} mutual eigenpairs from criteria 2, 4, 5; {} failures", total.checked, total.failed))),
    )
}

// ---------------------------------------------------------------- 8

/// Checks one nilpotent example: `ℛ_X ≠ 0`, `ℛ_X² = 0` at sampled non-null
/// `X`, semisimple no-evidence, minimal-polynomial test false.
pub fn nilpotent_branch(signature: (usize, usize), samples: usize, seed: u64) -> Result<(bool, String)> {
    let t = catalog::nilpotent_example(signature)?;
    let s = t.space().clone();
    let mut nilpotent = 0;
    for cone in s.admissible_cones() {
        for i in 0..samples {
            let x = sample_vector(&s, derive_seed(seed, 800, i as u64 * 4 + cone as u64), 10, true, cone)?;
            let a = t.jacobi_operator(&x)?;
            if !a.is_zero() && a.matrix.mul(&a.matrix)?.is_zero() {
                nilpotent += 1;
            }
        }
    }
    let total = samples * s.admissible_cones().len();
    let params = CheckParams::default().with_samples(samples).with_seed(seed);
    let semi = is_semisimple(&t, &params)?;
    let o = is_osserman(&t, 32, seed)?;
    let mp = match &o.certificate {
        Some(c) => {
            let x = sample_vector(&s, derive_seed(seed, 801, 0), 10, true, s.admissible_cones()[0])?;
            Some(minimal_poly_test(&t, &x, c)?)
        }
        None => None,
    };
    let ok = nilpotent == total && semi.verdict == Verdict::NoEvidence && mp == Some(false);
    Ok((
        ok,
        format!(
            "{signature:?}: nilpotent nonzero at {nilpotent}/{total} samples, semisimple {}, minimal_poly_test {:?}",
            semi.verdict, mp
        ),
    ))
}

pub fn criterion_8(level: Level, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let samples = level.pick(16, 64);
    let primary = nilpotent_branch((1, 1), samples, seed);
    let supplementary = nilpotent_branch((2, 2), samples, seed);
    let supp = match supplementary {
        Ok((ok, m)) => format!("supplementary {m} -> {}", if ok { "pass" } else { "fail" }),
        Err(e) => format!("supplementary (2,2) error: {e}"),
    };
    let outcome = match primary {
        Ok((ok, m)) => Ok((ok, format!("{m}; {supp}"))),
        Err(e) => Ok((false, format!("(1,1) example unavailable: {e}; {supp}"))),
    };
    finish(8, "nilpotent branch", start, outcome)
}

// ---------------------------------------------------------------- 9

pub const QUICK_SUITE_BUDGET: Duration = Duration::from_secs(300);

/// Runs the report pipeline twice on the same inputs and compares the
/// serialised reports with the timestamp removed.
pub fn report_determinism(seed: u64) -> Result<(bool, String)> {
    let s = space(2, 1);
    let mut params = serde_json::Map::new();
    params.insert("seed".into(), serde_json::json!(seed));
    let file = TensorFile::with_constructor(&s, "random", params);
    let t = file.tensor()?;
    let cp = CheckParams { samples: 16, seed, ..CheckParams::default() };
    let r1 = checks::full_report(&t, &cp)?;
    let r2 = checks::full_report(&t, &cp)?;
    let a = comparable_report(&ReportFile::new(&file, &r1).to_json())?;
    let b = comparable_report(&ReportFile::new(&file, &r2).to_json())?;
    Ok((a == b, format!("reports {}", if a == b { "identical" } else { "differ" })))
}

/// Determinism of reports and the quick-suite wall clock (`quick_elapsed`
/// measured by the caller over criteria 1–8).
pub fn criterion_9(seed: u64, quick_elapsed: Duration) -> CriterionResult {
    let start = Instant::now();
    let outcome = report_determinism(seed).map(|(ok, m)| {
        let fast = quick_elapsed < QUICK_SUITE_BUDGET;
        (ok && fast, format!("{m}; quick suite {:.1}s (budget 300s)", quick_elapsed.as_secs_f64()))
    });
    finish(9, "determinism and runtime", start, outcome)
}

/// Runs criteria 1–8 at `level`, then 9, calling `sink` after each. When
/// `level` is full the quick-suite time for criterion 9 is measured by an
/// extra quick run.
pub fn run_suite(level: Level, seed: u64, mut sink: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let t0 = Instant::now();
    let mut push = |r: CriterionResult, out: &mut Vec<CriterionResult>| {
        sink(&r);
        out.push(r);
    };
    push(criterion_1(level, seed), &mut out);
    let (r2, t2) = criterion_2(level, seed);
    push(r2, &mut out);
    push(criterion_3(level, seed), &mut out);
    let (r4, t4) = criterion_4(level, seed);
    push(r4, &mut out);
    let (r5, t5) = criterion_5(level, seed);
    push(r5, &mut out);
    push(criterion_6(level, seed), &mut out);
    push(criterion_7(&[t2, t4, t5]), &mut out);
    push(criterion_8(level, seed), &mut out);
    let quick_elapsed = match level {
        Level::Quick => t0.elapsed(),
        Level::Full => quick_suite_time(seed),
    };
    push(criterion_9(seed, quick_elapsed), &mut out);
    out
}

/// Wall clock of criteria 1–8 at the quick level.
pub fn quick_suite_time(seed: u64) -> Duration {
    let t0 = Instant::now();
    let _ = criterion_1(Level::Quick, seed);
    let _ = criterion_2(Level::Quick, seed);
    let _ = criterion_3(Level::Quick, seed);
    let _ = criterion_4(Level::Quick, seed);
    let _ = criterion_5(Level::Quick, seed);
    let _ = criterion_6(Level::Quick, seed);
    let _ = criterion_8(Level::Quick, seed);
    t0.elapsed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymatrix::UnivariatePolynomial as Poly;
    use crate::space::Cone;

    #[test]
    fn binomial_coefficients_match_polynomial_expansion() {
        for n in 1..=6 {
            let k = ratio(-2, 3);
            let expect = Poly::monomial(rat(1), 1).mul(&Poly::linear(&k).pow(n - 1));
            assert_eq!(space_form_coefficients(n, &k), expect.coeffs().to_vec());
        }
    }

    #[test]
    fn random_jordan_has_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let (m, groups) = random_jordan(&mut rng, n);
            assert_eq!(m.rows(), n);
            assert_eq!(groups.iter().flat_map(|g| &g.1).sum::<usize>(), n);
        }
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unimodular(&mut rng, 5);
        assert_eq!(u.determinant().unwrap(), rat(1));
    }

    #[test]
    fn cone_cast_is_stable() {
        assert_eq!(Cone::Any as u64, 0);
    }
}
