//! Sample-based verifiers for the Osserman, Jordan-Osserman, semisimple and
//! duality properties, plus the first-variation identity
//! `2⟨ℛ_e X, T⟩ = (dλ)_X(T)·‖e‖²`, reciprocity and the minimal-polynomial test.
//!
//! Verdicts are one-sided: `violated` comes with a witness that re-verifies,
//! `holds-on-samples` only means no sample disagreed.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::curvature::{CurvatureTensor, FloatTensor};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, rat, to_f64, Rational};
use crate::polymatrix::{classify_generic, jordan_signature_exact, GenericClassification, UnivariatePolynomial as Poly};
use crate::ser;
use crate::space::{
    derive_seed, inner, norm_sq, orthogonal_complement_basis, sample_vector, Cone, Field, PseudoEuclideanSpace,
    ScalarDomain, Vector, DEFAULT_TOLERANCE,
};
use crate::spectral::{
    char_poly, eigen_decomposition, format_complex, is_diagonalisable, jordan_structure_numeric, norm_inf_f64,
    Complex64, EigenPair, StructureSignature,
};

pub const DEFAULT_SAMPLES: usize = 64;
pub const DEFAULT_PIT_RANGE: u64 = 1_000_000;
pub const DEFAULT_STEP: f64 = 1e-4;
pub const DEFAULT_STRUCTURE_BOUND: u64 = 10;
pub const DEFAULT_GENERICITY_SAMPLES: usize = 8;
pub const DEFAULT_DERIVATIVE_SAMPLES: usize = 3;
/// Relative neighbourhood accepted by [`eigen_continuation`].
pub const CONTINUATION_RADIUS: f64 = 0.1;
/// Floating eigenvectors with `|‖Y‖²| ≤ NULL_THRESHOLD·‖Y‖²_E` count as null.
pub const NULL_THRESHOLD: f64 = 1e-8;
/// Relative bound for the derivative identity residual.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-6;
/// Accepted band for `r(h/2)/r(h)`.
pub const CONVERGENCE_BAND: (f64, f64) = (0.15, 0.45);
const MAX_WITNESSES: usize = 16;

mod stream {
    pub const OSSERMAN: u64 = 1;
    pub const STRUCTURE: u64 = 2;
    pub const SEMISIMPLE: u64 = 3;
    pub const DUALITY: u64 = 4;
    pub const DERIVATIVE: u64 = 5;
    pub const GENERIC: u64 = 6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnSamples,
    Violated,
    NotApplicable,
    NoEvidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsOnSamples => "holds-on-samples",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
            Verdict::NoEvidence => "no-evidence",
        })
    }
}

/// A scalar that is either exact or a floating approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(Complex64),
}

impl Scalar {
    pub fn approx(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(to_f64(r), 0.0),
            Scalar::Float(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => f.write_str(&format_rational(r)),
            Scalar::Float(z) => f.write_str(&format_complex(z)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_domain<S: Serializer>(d: &ScalarDomain, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(d.name())
}

/// Sampling and tolerance parameters shared by the checkers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckParams {
    /// Samples per admissible cone.
    pub samples: usize,
    pub seed: u64,
    #[serde(serialize_with = "ser::float")]
    pub tol: f64,
    #[serde(serialize_with = "ser_domain")]
    pub domain: ScalarDomain,
    /// Size of the coordinate range for polynomial identity testing.
    pub pit_range: u64,
    /// Coordinate bound for structure, duality and semisimplicity samples.
    pub structure_bound: u64,
    pub genericity_samples: usize,
    #[serde(serialize_with = "ser::rational")]
    pub genericity_radius: Rational,
    /// `h = step·‖X‖_E` for the derivative identity.
    #[serde(serialize_with = "ser::float")]
    pub step: f64,
    pub derivative_samples: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            tol: DEFAULT_TOLERANCE,
            domain: ScalarDomain::Exact,
            pit_range: DEFAULT_PIT_RANGE,
            structure_bound: DEFAULT_STRUCTURE_BOUND,
            genericity_samples: DEFAULT_GENERICITY_SAMPLES,
            genericity_radius: crate::polymatrix::default_radius(),
            step: DEFAULT_STEP,
            derivative_samples: DEFAULT_DERIVATIVE_SAMPLES,
        }
    }
}

impl CheckParams {
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn is_float(&self) -> bool {
        matches!(self.domain, ScalarDomain::Floating { .. })
    }
}

/// Non-null sample `index` from `cone` for the given stream.
fn cone_sample(space: &PseudoEuclideanSpace, seed: u64, stream: u64, cone: Cone, index: usize, bound: u64) -> Result<Vector> {
    let cone_tag = match cone {
        Cone::Any => 0,
        Cone::Spacelike => 1,
        Cone::Timelike => 2,
    };
    sample_vector(space, derive_seed(seed, stream * 4 + cone_tag, index as u64), bound, true, cone)
}

/// Non-null samples from every admissible cone, in a fixed order.
fn cone_samples(space: &PseudoEuclideanSpace, seed: u64, stream: u64, per_cone: usize, bound: u64) -> Result<Vec<Vector>> {
    let mut out = Vec::new();
    for cone in space.admissible_cones() {
        for i in 0..per_cone {
            out.push(cone_sample(space, seed, stream, cone, i, bound)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- Osserman

/// `P(t, y) = Σ_j a_j y^{n−j} t^j` with `χ_X(t) = P(t, ‖X‖²)` on all checked samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OssermanCertificate {
    #[serde(serialize_with = "ser::rationals")]
    pub coefficients: Vec<Rational>,
    pub reference: Vector,
    pub samples: usize,
    pub seed: u64,
    pub coordinate_bound: u64,
}

impl OssermanCertificate {
    pub fn dim(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `P(t, y)` as a polynomial in `t`.
    pub fn polynomial_at(&self, y: &Rational) -> Poly {
        let n = self.dim();
        let mut ypow = vec![rat(1); n + 1];
        for k in 1..=n {
            ypow[k] = &ypow[k - 1] * y;
        }
        Poly::new((0..=n).map(|j| &self.coefficients[j] * &ypow[n - j]).collect())
    }

    /// Does `χ_X` equal `P(t, ‖X‖²)`?
    pub fn reproduces(&self, t: &CurvatureTensor, x: &Vector) -> Result<bool> {
        let chi = char_poly(&t.jacobi_operator(x)?).to_polynomial();
        Ok(chi == self.polynomial_at(&norm_sq(t.space(), x)?))
    }

    /// `F_X(t) = Π_k (t − μ_k‖X‖²)`: the squarefree part of `P(t, ‖X‖²)`.
    pub fn f_x(&self, y: &Rational) -> Poly {
        self.polynomial_at(y).squarefree_part()
    }

    /// Number of distinct eigenvalues `μ_k` (roots of `P(t, 1)`).
    pub fn distinct_eigenvalues(&self) -> usize {
        self.polynomial_at(&rat(1)).squarefree_part().deg()
    }
}

/// A vector where `g_j(X) = f_j(X) − a_j‖X‖^{2(n−j)}` does not vanish.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OssermanWitness {
    pub x: Vector,
    pub j: usize,
    #[serde(serialize_with = "ser::rational")]
    pub a_j: Rational,
    #[serde(serialize_with = "ser::rational")]
    pub g_j: Rational,
}

impl OssermanWitness {
    /// Recomputes `g_j(X)` from scratch.
    pub fn reverify(&self, t: &CurvatureTensor) -> Result<bool> {
        let g = osserman_defect(t, &self.x, self.j, &self.a_j)?;
        Ok(g == self.g_j && !g.is_zero())
    }
}

pub fn osserman_defect(t: &CurvatureTensor, x: &Vector, j: usize, a_j: &Rational) -> Result<Rational> {
    let n = t.dim();
    let chi = char_poly(&t.jacobi_operator(x)?);
    let y = norm_sq(t.space(), x)?;
    Ok(chi.f(j) - a_j * num_traits::pow(y, n - j))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OssermanOutcome {
    pub verdict: Verdict,
    pub domain: &'static str,
    pub certificate: Option<OssermanCertificate>,
    pub witness: Option<OssermanWitness>,
}

/// First non-null vector among `e₁`, `e₁ + e_{p+1}`, `e₁ + 2e_{p+1}`.
pub fn reference_vector(space: &PseudoEuclideanSpace) -> Result<Vector> {
    let (p, _) = space.signature();
    let mut candidates = vec![space.basis_vector(0)];
    if p > 0 && p < space.dim() {
        for c in [1, 2] {
            let mut v = space.basis_vector(0);
            v.0[p] = rat(c);
            candidates.push(v);
        }
    }
    for v in candidates {
        if !norm_sq(space, &v)?.is_zero() {
            return Ok(v);
        }
    }
    Err(Error::Internal(format!("no non-null reference vector in {space}")))
}

/// Coefficients `a_j = f_j(X₀)/‖X₀‖^{2(n−j)}` at the reference vector.
pub fn candidate_coefficients(t: &CurvatureTensor) -> Result<(Vector, Vec<Rational>)> {
    let x0 = reference_vector(t.space())?;
    let y0 = norm_sq(t.space(), &x0)?;
    let chi = char_poly(&t.jacobi_operator(&x0)?);
    let n = t.dim();
    let coeffs = (0..=n).map(|j| chi.f(j) / num_traits::pow(y0.clone(), n - j)).collect();
    Ok((x0, coeffs))
}

pub fn is_osserman(t: &CurvatureTensor, samples: usize, seed: u64) -> Result<OssermanOutcome> {
    is_osserman_in_range(t, samples, seed, DEFAULT_PIT_RANGE)
}

/// Polynomial identity test of `g_j ≡ 0` at `samples` integer points whose
/// coordinates range over at least `max(range, 4n·samples)` values.
pub fn is_osserman_in_range(t: &CurvatureTensor, samples: usize, seed: u64, range: u64) -> Result<OssermanOutcome> {
    t.ensure_valid()?;
    let n = t.dim();
    let (x0, coeffs) = candidate_coefficients(t)?;
    let bound = (range.max(4 * n as u64 * samples as u64) / 2).max(1);
    let space = t.space();
    let results: Vec<Result<Option<OssermanWitness>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x = sample_vector(space, derive_seed(seed, stream::OSSERMAN, i as u64), bound, false, Cone::Any)?;
            let chi = char_poly(&t.jacobi_operator(&x)?);
            let y = norm_sq(space, &x)?;
            let mut ypow = rat(1);
            // j from n down so that ypow = y^{n−j}
            let mut first = None;
            for j in (0..=n).rev() {
                let g = chi.f(j) - &coeffs[j] * &ypow;
                if !g.is_zero() {
                    first = Some(OssermanWitness { x: x.clone(), j, a_j: coeffs[j].clone(), g_j: g });
                }
                ypow *= &y;
            }
            Ok(first)
        })
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(OssermanOutcome { verdict: Verdict::Violated, domain: "exact", certificate: None, witness: Some(w) });
        }
    }
    Ok(OssermanOutcome {
        verdict: Verdict::HoldsOnSamples,
        domain: "exact",
        certificate: Some(OssermanCertificate { coefficients: coeffs, reference: x0, samples, seed, coordinate_bound: bound }),
        witness: None,
    })
}

// --------------------------------------------------------- Jordan-Osserman

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureWitness {
    pub x: Vector,
    pub x_signature: StructureSignature,
    pub y: Vector,
    pub y_signature: StructureSignature,
}

impl StructureWitness {
    pub fn reverify(&self, t: &CurvatureTensor) -> Result<bool> {
        let a = jordan_signature_exact(&t.jacobi_operator(&self.x)?);
        let b = jordan_signature_exact(&t.jacobi_operator(&self.y)?);
        Ok(a == self.x_signature && b == self.y_signature && a != b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanOssermanOutcome {
    pub verdict: Verdict,
    pub domain: &'static str,
    pub signature: Option<StructureSignature>,
    /// Set when the verdict follows from a failed Osserman check.
    pub not_osserman: bool,
    pub witness: Option<StructureWitness>,
    pub samples: usize,
}

pub fn structure_at(t: &CurvatureTensor, x: &Vector, domain: ScalarDomain) -> Result<StructureSignature> {
    let op = t.jacobi_operator(x)?;
    match domain {
        ScalarDomain::Exact => Ok(jordan_signature_exact(&op)),
        ScalarDomain::Floating { tolerance } => {
            Ok(jordan_structure_numeric(&op.matrix.to_f64(), tolerance.max(1e-8))?.signature())
        }
    }
}

pub fn is_jordan_osserman(t: &CurvatureTensor, params: &CheckParams, osserman: &OssermanOutcome) -> Result<JordanOssermanOutcome> {
    let domain = if params.is_float() { ScalarDomain::Floating { tolerance: params.tol } } else { ScalarDomain::Exact };
    if osserman.verdict == Verdict::Violated {
        return Ok(JordanOssermanOutcome {
            verdict: Verdict::Violated,
            domain: domain.name(),
            signature: None,
            not_osserman: true,
            witness: None,
            samples: 0,
        });
    }
    let xs = cone_samples(t.space(), params.seed, stream::STRUCTURE, params.samples, params.structure_bound)?;
    let sigs: Vec<Result<StructureSignature>> = xs.par_iter().map(|x| structure_at(t, x, domain)).collect();
    let sigs: Vec<StructureSignature> = sigs.into_iter().collect::<Result<_>>()?;
    let first = sigs.first().cloned();
    let mut witness = None;
    if let Some(s0) = &first {
        if let Some(k) = sigs.iter().position(|s| s != s0) {
            witness = Some(StructureWitness {
                x: xs[0].clone(),
                x_signature: s0.clone(),
                y: xs[k].clone(),
                y_signature: sigs[k].clone(),
            });
        }
    }
    Ok(JordanOssermanOutcome {
        verdict: if witness.is_some() { Verdict::Violated } else { Verdict::HoldsOnSamples },
        domain: domain.name(),
        signature: if witness.is_none() { first } else { None },
        not_osserman: false,
        witness,
        samples: xs.len(),
    })
}

// -------------------------------------------------------------- semisimple

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagonalisabilitySample {
    pub x: Vector,
    pub diagonalisable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemisimpleOutcome {
    pub verdict: Verdict,
    pub domain: &'static str,
    pub samples: Vec<DiagonalisabilitySample>,
    /// Diagonalisable sample with generic evidence, if any.
    pub generic_point: Option<Vector>,
    pub genericity: Vec<GenericClassification>,
}

impl SemisimpleOutcome {
    pub fn diagonalisable_count(&self) -> usize {
        self.samples.iter().filter(|s| s.diagonalisable).count()
    }
}

/// Looks for a diagonalisable sample with a structure-stable neighbourhood.
pub fn is_semisimple(t: &CurvatureTensor, params: &CheckParams) -> Result<SemisimpleOutcome> {
    let field = t.space().field();
    let xs = cone_samples(t.space(), params.seed, stream::SEMISIMPLE, params.samples, params.structure_bound)?;
    let flags: Vec<Result<bool>> = xs.par_iter().map(|x| is_diagonalisable(&t.jacobi_operator(x)?, field)).collect();
    let mut samples = Vec::with_capacity(xs.len());
    for (x, f) in xs.iter().zip(flags) {
        samples.push(DiagonalisabilitySample { x: x.clone(), diagonalisable: f? });
    }
    let mut genericity = Vec::new();
    let mut generic_point = None;
    // A few diagonalisable candidates suffice; each classification is exact.
    for (i, s) in samples.iter().enumerate().filter(|(_, s)| s.diagonalisable).take(4) {
        let g = classify_generic(
            t,
            &s.x,
            params.genericity_samples,
            &params.genericity_radius,
            derive_seed(params.seed, stream::GENERIC, i as u64),
        )?;
        let ok = g.is_generic_evidence();
        genericity.push(g);
        if ok {
            generic_point = Some(s.x.clone());
            break;
        }
    }
    Ok(SemisimpleOutcome {
        verdict: if generic_point.is_some() { Verdict::HoldsOnSamples } else { Verdict::NoEvidence },
        domain: "exact",
        samples,
        generic_point,
        genericity,
    })
}

// ----------------------------------------------------------------- duality

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatus {
    Passed,
    Failed,
    /// Non-real eigenvalue of a real operator: no real eigenvector.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    Exact,
    Floating,
}

/// Outcome of testing one eigenpair `(μ, Y)` of `ℛ_X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityPair {
    pub path: Path,
    pub eigenvalue: Scalar,
    pub eigenvector: Vec<Scalar>,
    pub status: PairStatus,
    pub null_eigenvector: bool,
    /// `‖Z − (⟨Z,X⟩/‖X‖²)X‖ / (‖ℛ_Y‖·‖X‖)` with `Z = ℛ_Y X`.
    #[serde(serialize_with = "ser::float")]
    pub rho: f64,
    /// Squared Euclidean norm of the collinearity defect (exact path).
    #[serde(serialize_with = "ser::opt_rational")]
    pub defect: Option<Rational>,
    /// `μ_Y = ⟨ℛ_Y X, X⟩/‖X‖²`.
    pub dual_eigenvalue: Option<Scalar>,
    /// `μ_X‖Y‖² = μ_Y‖X‖²`, checked for passed pairs.
    pub reciprocity: Option<bool>,
}

impl DualityPair {
    pub fn counts_against(&self) -> bool {
        self.status == PairStatus::Failed && !self.null_eigenvector
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityCheck {
    pub x: Vector,
    pub pairs: Vec<DualityPair>,
}

impl DualityCheck {
    pub fn failures(&self) -> impl Iterator<Item = &DualityPair> {
        self.pairs.iter().filter(|p| p.counts_against())
    }
}

fn exact_candidates(space: &PseudoEuclideanSpace, basis: &[Vector]) -> Result<Vec<Vector>> {
    let mut out = basis.to_vec();
    if basis.len() <= 1 {
        return Ok(out);
    }
    let combo = basis
        .iter()
        .enumerate()
        .fold(Vector::zeros(space.dim()), |acc, (i, b)| acc.add(&b.scale(&rat(i as i64 + 1))));
    out.push(combo);
    let mut any_non_null = false;
    for v in &out {
        if !norm_sq(space, v)?.is_zero() {
            any_non_null = true;
            break;
        }
    }
    if !any_non_null {
        'search: for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for c in [1, -1, 2, 3] {
                    let v = basis[i].add(&basis[j].scale(&rat(c)));
                    if !norm_sq(space, &v)?.is_zero() {
                        out.push(v);
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn exact_pair(t: &CurvatureTensor, x: &Vector, xx: &Rational, mu: &Rational, y: Vector) -> Result<DualityPair> {
    let space = t.space();
    let z = t.apply(x, &y, &y)?;
    let mu_y = inner(space, &z, x)? / xx;
    let d = z.sub(&x.scale(&mu_y));
    let defect = d.euclidean_norm_sq();
    let passed = defect.is_zero();
    let rho = if passed {
        0.0
    } else {
        let ry = t.jacobi_operator(&y)?.norm_inf();
        to_f64(&defect).sqrt() / (ry * to_f64(&x.euclidean_norm_sq()).sqrt())
    };
    let null = norm_sq(space, &y)?.is_zero();
    let reciprocity = if passed { Some(reciprocity_check(space, mu, &y, &mu_y, x)?) } else { None };
    Ok(DualityPair {
        path: Path::Exact,
        eigenvalue: Scalar::Exact(mu.clone()),
        eigenvector: y.0.into_iter().map(Scalar::Exact).collect(),
        status: if passed { PairStatus::Passed } else { PairStatus::Failed },
        null_eigenvector: null,
        rho,
        defect: Some(defect),
        dual_eigenvalue: Some(Scalar::Exact(mu_y)),
        reciprocity,
    })
}

fn bilinear(eps: &[f64], a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).zip(eps).map(|((x, y), e)| x * y * *e).sum()
}

fn euclid_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Floating `Z = ℛ_Y X` and the collinearity data.
struct FloatDual {
    rho: f64,
    mu_y: Complex64,
    ry_norm: f64,
}

fn float_dual(ft: &FloatTensor, x: &[Complex64], y: &[Complex64]) -> FloatDual {
    let ay = ft.jacobi::<Complex64>(y);
    let xv = DVector::from_column_slice(x);
    let z = &ay * &xv;
    let xx = bilinear(ft.eps(), x, x);
    let mu_y = bilinear(ft.eps(), z.as_slice(), x) / xx;
    let d: Vec<Complex64> = (0..x.len()).map(|i| z[i] - mu_y * x[i]).collect();
    let ry_norm = norm_inf_f64(&ay);
    let rho = if ry_norm == 0.0 { 0.0 } else { euclid_sq(&d).sqrt() / (ry_norm * euclid_sq(x).sqrt()) };
    FloatDual { rho, mu_y, ry_norm }
}

fn float_pairs(t: &CurvatureTensor, x: &Vector, a: &DMatrix<f64>, skip: &[Rational], tol: f64) -> Result<Vec<DualityPair>> {
    let field = t.space().field();
    let ft = t.to_float();
    let norm = norm_inf_f64(a);
    let xc: Vec<Complex64> = x.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
    let xx = bilinear(ft.eps(), &xc, &xc);
    let mut out = Vec::new();
    for cl in eigen_decomposition(a, tol)? {
        let covered = skip.iter().any(|r| (cl.eigenvalue - Complex64::new(to_f64(r), 0.0)).norm() <= 1e-6 * (norm + 1.0));
        if covered {
            continue;
        }
        if field == Field::Real && !cl.is_real() {
            out.push(DualityPair {
                path: Path::Floating,
                eigenvalue: Scalar::Float(cl.eigenvalue),
                eigenvector: Vec::new(),
                status: PairStatus::NotApplicable,
                null_eigenvector: false,
                rho: 0.0,
                defect: None,
                dual_eigenvalue: None,
                reciprocity: None,
            });
            continue;
        }
        let mut candidates = cl.basis.clone();
        if candidates.len() > 1 {
            let n = xc.len();
            let combo: Vec<Complex64> = (0..n)
                .map(|i| candidates.iter().enumerate().map(|(k, b)| b[i] * (k as f64 + 1.0)).sum())
                .collect();
            candidates.push(combo);
        }
        for y in candidates {
            let fd = float_dual(&ft, &xc, &y);
            let yy = bilinear(ft.eps(), &y, &y);
            let null = yy.norm() <= NULL_THRESHOLD * euclid_sq(&y);
            let passed = fd.rho <= tol;
            let reciprocity = passed.then(|| {
                let lhs = cl.eigenvalue * yy;
                let rhs = fd.mu_y * xx;
                let scale = norm * euclid_sq(&y) + fd.ry_norm * euclid_sq(&xc);
                (lhs - rhs).norm() <= 1e-9 * scale.max(f64::MIN_POSITIVE)
            });
            out.push(DualityPair {
                path: Path::Floating,
                eigenvalue: Scalar::Float(cl.eigenvalue),
                eigenvector: y.into_iter().map(Scalar::Float).collect(),
                status: if passed { PairStatus::Passed } else { PairStatus::Failed },
                null_eigenvector: null,
                rho: fd.rho,
                defect: None,
                dual_eigenvalue: Some(Scalar::Float(fd.mu_y)),
                reciprocity,
            });
        }
    }
    Ok(out)
}

pub fn duality_check(t: &CurvatureTensor, x: &Vector, tol: f64) -> Result<DualityCheck> {
    duality_check_in(t, x, tol, ScalarDomain::Exact)
}

/// Tests every eigenpair of `ℛ_X`: rational eigenvalues exactly (unless the
/// domain is floating), the rest in floating point.
pub fn duality_check_in(t: &CurvatureTensor, x: &Vector, tol: f64, domain: ScalarDomain) -> Result<DualityCheck> {
    let space = t.space();
    space.check(x)?;
    let xx = norm_sq(space, x)?;
    if xx.is_zero() {
        return Err(Error::Precondition("duality check needs a non-null X".into()));
    }
    let op = t.jacobi_operator(x)?;
    let mut pairs = Vec::new();
    let mut covered = Vec::new();
    let mut all_rational = false;
    if domain == ScalarDomain::Exact {
        let spec = crate::spectral::exact_spectrum(&op);
        all_rational = spec.all_rational;
        for (mu, basis) in &spec.eigenspaces {
            for y in exact_candidates(space, basis)? {
                pairs.push(exact_pair(t, x, &xx, mu, y)?);
            }
            covered.push(mu.clone());
        }
    }
    if !all_rational {
        pairs.extend(float_pairs(t, x, &op.matrix.to_f64(), &covered, tol)?);
    }
    Ok(DualityCheck { x: x.clone(), pairs })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityWitness {
    pub x: Vector,
    pub pair: DualityPair,
}

impl DualityWitness {
    /// Recomputes the collinearity defect; exact when the pair is exact.
    pub fn reverify(&self, t: &CurvatureTensor, tol: f64) -> Result<bool> {
        match self.pair.path {
            Path::Exact => {
                let y = Vector(self.pair.eigenvector.iter().filter_map(|s| s.as_exact().cloned()).collect());
                let xx = norm_sq(t.space(), &self.x)?;
                let z = t.apply(&self.x, &y, &y)?;
                let mu_y = inner(t.space(), &z, &self.x)? / xx;
                let defect = z.sub(&self.x.scale(&mu_y)).euclidean_norm_sq();
                Ok(!defect.is_zero() && Some(&defect) == self.pair.defect.as_ref())
            }
            Path::Floating => {
                let ft = t.to_float();
                let xc: Vec<Complex64> = self.x.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
                let y: Vec<Complex64> = self.pair.eigenvector.iter().map(|s| s.approx()).collect();
                Ok(float_dual(&ft, &xc, &y).rho > 100.0 * tol)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityOutcome {
    pub verdict: Verdict,
    pub vectors: usize,
    pub pairs_tested: usize,
    pub passed: usize,
    /// Failures with a non-null eigenvector: these decide the verdict.
    pub failed: usize,
    pub flagged_null: usize,
    pub flagged_null_failed: usize,
    pub not_applicable: usize,
    pub reciprocity_checked: usize,
    pub reciprocity_failed: usize,
    #[serde(serialize_with = "ser::float")]
    pub max_rho_passed: f64,
    pub witnesses: Vec<DualityWitness>,
}

pub fn duality_principle(t: &CurvatureTensor, params: &CheckParams) -> Result<DualityOutcome> {
    let xs = cone_samples(t.space(), params.seed, stream::DUALITY, params.samples, params.structure_bound)?;
    duality_over(t, &xs, params)
}

/// Aggregates [`duality_check_in`] over the given vectors.
pub fn duality_over(t: &CurvatureTensor, xs: &[Vector], params: &CheckParams) -> Result<DualityOutcome> {
    let domain = if params.is_float() { ScalarDomain::Floating { tolerance: params.tol } } else { ScalarDomain::Exact };
    let checks: Vec<Result<DualityCheck>> = xs.par_iter().map(|x| duality_check_in(t, x, params.tol, domain)).collect();
    let mut out = DualityOutcome {
        verdict: Verdict::NoEvidence,
        vectors: xs.len(),
        pairs_tested: 0,
        passed: 0,
        failed: 0,
        flagged_null: 0,
        flagged_null_failed: 0,
        not_applicable: 0,
        reciprocity_checked: 0,
        reciprocity_failed: 0,
        max_rho_passed: 0.0,
        witnesses: Vec::new(),
    };
    let mut decided = 0usize;
    for c in checks {
        let c = c?;
        for p in &c.pairs {
            out.pairs_tested += 1;
            if p.null_eigenvector {
                out.flagged_null += 1;
            }
            match p.status {
                PairStatus::Passed => {
                    out.passed += 1;
                    out.max_rho_passed = out.max_rho_passed.max(p.rho);
                    if !p.null_eigenvector {
                        decided += 1;
                    }
                }
                PairStatus::Failed if p.null_eigenvector => out.flagged_null_failed += 1,
                PairStatus::Failed => {
                    out.failed += 1;
                    decided += 1;
                    if out.witnesses.len() < MAX_WITNESSES {
                        out.witnesses.push(DualityWitness { x: c.x.clone(), pair: p.clone() });
                    }
                }
                PairStatus::NotApplicable => out.not_applicable += 1,
            }
            if let Some(r) = p.reciprocity {
                out.reciprocity_checked += 1;
                if !r {
                    out.reciprocity_failed += 1;
                }
            }
        }
    }
    out.verdict = if out.failed > 0 {
        Verdict::Violated
    } else if decided > 0 {
        Verdict::HoldsOnSamples
    } else {
        Verdict::NoEvidence
    };
    Ok(out)
}

/// `μ_X‖Y‖² = μ_Y‖X‖²`, exactly.
pub fn reciprocity_check(space: &PseudoEuclideanSpace, mu_x: &Rational, y: &Vector, mu_y: &Rational, x: &Vector) -> Result<bool> {
    Ok(mu_x * norm_sq(space, y)? == mu_y * norm_sq(space, x)?)
}

/// Floating reciprocity with relative tolerance `tol`.
pub fn reciprocity_check_f64(eps: &[i8], mu_x: f64, y: &[f64], mu_y: f64, x: &[f64], tol: f64) -> bool {
    let yy = crate::space::inner_f64(eps, y, y);
    let xx = crate::space::inner_f64(eps, x, x);
    let scale = (mu_x * yy).abs().max((mu_y * xx).abs());
    (mu_x * yy - mu_y * xx).abs() <= tol * scale.max(f64::MIN_POSITIVE)
}

// ------------------------------------------------------------ continuation

/// Follows `pair` of `ℛ_X` to `ℛ_Y`: the nearest eigenvalue, with the
/// eigenvector given by projecting `pair.eigenvector` onto its eigenspace.
pub fn eigen_continuation(ft: &FloatTensor, x: &[f64], pair: &EigenPair, y: &[f64], tol: f64) -> Result<EigenPair> {
    if x.len() != y.len() || x.len() != ft.dim() {
        return Err(Error::DimensionMismatch { expected: ft.dim(), found: y.len() });
    }
    if x == y {
        return Ok(pair.clone());
    }
    let dist: f64 = x.iter().zip(y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let xn: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    if dist > CONTINUATION_RADIUS * xn {
        return Err(Error::Precondition(format!(
            "continuation step {dist:.3e} exceeds the radius {CONTINUATION_RADIUS}·‖X‖"
        )));
    }
    let a = ft.jacobi::<f64>(y);
    let norm = norm_inf_f64(&a);
    let clusters = eigen_decomposition(&a, tol)?;
    let mut order: Vec<(f64, usize)> =
        clusters.iter().enumerate().map(|(i, c)| ((c.eigenvalue - pair.eigenvalue).norm(), i)).collect();
    order.sort_by(|p, q| p.0.total_cmp(&q.0));
    if order.len() > 1 && order[1].0 - order[0].0 <= tol * norm.max(1.0) {
        return Err(Error::AmbiguousContinuation(format!(
            "two eigenvalues are equally near {}; use a smaller step",
            format_complex(&pair.eigenvalue)
        )));
    }
    let cl = &clusters[order[0].1];
    let e = &pair.eigenvector;
    let mut v = vec![Complex64::new(0.0, 0.0); e.len()];
    for b in &cl.basis {
        let c: Complex64 = b.iter().zip(e).map(|(bi, ei)| bi.conj() * ei).sum();
        for i in 0..v.len() {
            v[i] += b[i] * c;
        }
    }
    let vn = euclid_sq(&v).sqrt();
    if vn == 0.0 {
        return Err(Error::AmbiguousContinuation("eigenvector has no component in the continued eigenspace".into()));
    }
    let s = euclid_sq(e).sqrt() / vn;
    for z in &mut v {
        *z *= s;
    }
    let ac = DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| Complex64::new(a[(i, j)], 0.0));
    let av = &ac * DVector::from_column_slice(&v);
    let r: f64 = (0..v.len()).map(|i| (av[i] - cl.eigenvalue * v[i]).norm_sqr()).sum::<f64>().sqrt();
    Ok(EigenPair { eigenvalue: cl.eigenvalue, eigenvector: v, residual: r / (norm.max(f64::MIN_POSITIVE) * euclid_sq(e).sqrt()) })
}

// -------------------------------------------------------------- derivative

/// Residuals of `2⟨ℛ_e X, T⟩ = (dλ)_X(T)·‖e‖²` with central differences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeResidual {
    pub verdict: Verdict,
    pub x: Vector,
    pub direction: Vector,
    #[serde(serialize_with = "ser::float")]
    pub eigenvalue: f64,
    #[serde(serialize_with = "ser::floats")]
    pub eigenvector: Vec<f64>,
    #[serde(serialize_with = "ser::float")]
    pub h: f64,
    #[serde(serialize_with = "ser::float")]
    pub lhs: f64,
    #[serde(serialize_with = "ser::float")]
    pub dlambda_h: f64,
    #[serde(serialize_with = "ser::float")]
    pub dlambda_half: f64,
    #[serde(serialize_with = "ser::float")]
    pub r_h: f64,
    #[serde(serialize_with = "ser::float")]
    pub r_half: f64,
    /// `r(h/2)/r(h)`; `None` when `r(h) = 0`.
    #[serde(serialize_with = "ser::opt_float")]
    pub ratio: Option<f64>,
    /// `‖ℛ_X‖·‖e‖²_E/‖X‖_E`, the natural size of either side.
    #[serde(serialize_with = "ser::float")]
    pub scale: f64,
    #[serde(serialize_with = "ser::float")]
    pub relative_r_h: f64,
    #[serde(serialize_with = "ser::float")]
    pub radial_dlambda: f64,
    #[serde(serialize_with = "ser::float")]
    pub radial_relative: f64,
}

impl DerivativeResidual {
    pub fn ratio_in_band(&self) -> bool {
        self.ratio.is_some_and(|r| (CONVERGENCE_BAND.0..=CONVERGENCE_BAND.1).contains(&r))
    }
}

/// Exact left side `⟨ℛ_e X, T⟩` (without the factor 2).
pub fn derivative_lhs_exact(t: &CurvatureTensor, x: &Vector, e: &Vector, direction: &Vector) -> Result<Rational> {
    inner(t.space(), &t.apply(x, e, e)?, direction)
}

/// The path is `Z(s) = X + sT̂ + s²·(ε∘T̂)/‖X‖_E` with `T̂ = T/‖T‖_E`. The
/// quadratic term makes `λ∘Z` a genuine quartic, so the central-difference
/// error is a visible `O(h²)` and `r(h/2)/r(h) → 1/4`. Also checks the radial
/// identity `(dλ)_X(X) = 2μ`.
pub fn derivative_identity_check(
    t: &CurvatureTensor,
    x: &Vector,
    pair: &EigenPair,
    direction: &Vector,
    h: f64,
    tol: f64,
) -> Result<DerivativeResidual> {
    let space = t.space();
    space.check(x)?;
    space.check(direction)?;
    if norm_sq(space, x)?.is_zero() {
        return Err(Error::Precondition("derivative identity needs a non-null X".into()));
    }
    if !inner(space, x, direction)?.is_zero() {
        return Err(Error::Precondition("direction must be orthogonal to X".into()));
    }
    if pair.eigenvalue.im != 0.0 || pair.eigenvector.iter().any(|z| z.im != 0.0) {
        return Err(Error::Precondition("derivative identity needs a real eigenpair".into()));
    }
    let ft = t.to_float();
    let eps = ft.eps().to_vec();
    let xf = x.to_f64();
    let e: Vec<f64> = pair.eigenvector.iter().map(|z| z.re).collect();
    let mu = pair.eigenvalue.re;
    let xe = xf.iter().map(|v| v * v).sum::<f64>().sqrt();
    let tf = direction.to_f64();
    let tn = tf.iter().map(|v| v * v).sum::<f64>().sqrt();
    let that: Vec<f64> = tf.iter().map(|v| v / tn).collect();
    let w: Vec<f64> = that.iter().zip(&eps).map(|(v, s)| v * s / xe).collect();
    let ee: f64 = e.iter().zip(&eps).map(|(v, s)| v * v * s).sum();
    let ee_e: f64 = e.iter().map(|v| v * v).sum();
    let a = ft.jacobi::<f64>(&xf);
    let a_norm = norm_inf_f64(&a);
    let scale = a_norm * ee_e / xe;

    let mut res = DerivativeResidual {
        verdict: Verdict::NotApplicable,
        x: x.clone(),
        direction: direction.clone(),
        eigenvalue: mu,
        eigenvector: e.clone(),
        h,
        lhs: 0.0,
        dlambda_h: 0.0,
        dlambda_half: 0.0,
        r_h: 0.0,
        r_half: 0.0,
        ratio: None,
        scale,
        relative_r_h: 0.0,
        radial_dlambda: 0.0,
        radial_relative: 0.0,
    };
    if ee.abs() <= NULL_THRESHOLD * ee_e {
        return Ok(res);
    }
    let re_x = ft.jacobi::<f64>(&e) * DVector::from_column_slice(&xf);
    let lhs = 2.0 * (0..xf.len()).map(|i| eps[i] * re_x[i] * that[i]).sum::<f64>();

    let lambda_at = |z: &[f64]| -> Result<f64> { Ok(eigen_continuation(&ft, &xf, pair, z, tol)?.eigenvalue.re) };
    let curve = |s: f64| -> Vec<f64> { (0..xf.len()).map(|i| xf[i] + s * that[i] + s * s * w[i]).collect() };
    let central = |h: f64| -> Result<f64> { Ok((lambda_at(&curve(h))? - lambda_at(&curve(-h))?) / (2.0 * h)) };
    let d_h = central(h)?;
    let d_half = central(h / 2.0)?;
    let r_h = (lhs - d_h * ee).abs();
    let r_half = (lhs - d_half * ee).abs();

    let sr = h / xe;
    let radial = |s: f64| -> Vec<f64> { xf.iter().map(|v| v * (1.0 + s)).collect() };
    let d_rad = (lambda_at(&radial(sr))? - lambda_at(&radial(-sr))?) / (2.0 * sr);
    let radial_relative = (d_rad - 2.0 * mu).abs() / a_norm.max((2.0 * mu).abs()).max(f64::MIN_POSITIVE);

    res.lhs = lhs;
    res.dlambda_h = d_h;
    res.dlambda_half = d_half;
    res.r_h = r_h;
    res.r_half = r_half;
    res.ratio = (r_h > 0.0).then(|| r_half / r_h);
    res.relative_r_h = if scale > 0.0 { r_h / scale } else { r_h };
    res.radial_dlambda = d_rad;
    res.radial_relative = radial_relative;
    let ok = res.relative_r_h <= DERIVATIVE_TOLERANCE && res.ratio_in_band() && radial_relative <= DERIVATIVE_TOLERANCE;
    res.verdict = if ok { Verdict::HoldsOnSamples } else { Verdict::Violated };
    Ok(res)
}

/// Step `h = step·‖X‖_E`. The Euclidean norm keeps the truncation error
/// above rounding when `X` is close to the null cone.
pub fn default_step(space: &PseudoEuclideanSpace, x: &Vector, step: f64) -> Result<f64> {
    space.check(x)?;
    Ok(step * to_f64(&x.euclidean_norm_sq()).sqrt())
}

/// Random non-zero integer direction orthogonal to `X`.
pub fn random_orthogonal_direction(space: &PseudoEuclideanSpace, x: &Vector, seed: u64) -> Result<Vector> {
    let basis = orthogonal_complement_basis(space, x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = basis
            .iter()
            .fold(Vector::zeros(space.dim()), |acc, b| acc.add(&b.scale(&rat(rng.gen_range(-3..=3)))));
        if !v.is_zero() {
            return Ok(v);
        }
    }
}

/// A real simple-structured eigenpair of `ℛ_X` with non-zero eigenvalue and
/// non-null eigenvector, suitable for the derivative identity.
pub fn pick_derivative_pair(t: &CurvatureTensor, x: &Vector, tol: f64) -> Result<Option<EigenPair>> {
    let ft = t.to_float();
    let a = ft.jacobi::<f64>(&x.to_f64());
    let norm = norm_inf_f64(&a);
    for cl in eigen_decomposition(&a, tol)? {
        if !cl.is_real() || cl.eigenvalue.norm() <= 1e-6 * norm || cl.basis.len() != cl.algebraic_multiplicity {
            continue;
        }
        for p in cl.pairs() {
            let ee = bilinear(ft.eps(), &p.eigenvector, &p.eigenvector);
            if ee.norm() > 1e-3 * euclid_sq(&p.eigenvector) {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

// ------------------------------------------------------ minimal polynomial

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalPolyTest {
    pub verdict: Verdict,
    pub domain: &'static str,
    pub x: Vector,
    pub f_x: Option<Poly>,
    /// Number of distinct eigenvalues of `ℛ_X`.
    pub p: usize,
    pub vanishes: Option<bool>,
    #[serde(serialize_with = "ser::opt_float")]
    pub residual: Option<f64>,
    pub implication: &'static str,
}

const IMPLICATION_TRUE: &str =
    "F_X(R_X) = 0 at an interior sample of an Osserman tensor: R_X is diagonalisable for every non-null X";
const IMPLICATION_FALSE: &str = "F_X(R_X) != 0: R_X is not diagonalisable at this X, the tensor is not semisimple here";

/// Whether `F_X(ℛ_X) = 0` exactly, with `F_X` the squarefree part of `P(t, ‖X‖²)`.
pub fn minimal_poly_test(t: &CurvatureTensor, x: &Vector, cert: &OssermanCertificate) -> Result<bool> {
    let r = minimal_poly_test_in(t, x, Some(cert), ScalarDomain::Exact)?;
    Ok(r.vanishes == Some(true))
}

pub fn minimal_poly_test_in(
    t: &CurvatureTensor,
    x: &Vector,
    cert: Option<&OssermanCertificate>,
    domain: ScalarDomain,
) -> Result<MinimalPolyTest> {
    let space = t.space();
    let y = norm_sq(space, x)?;
    if y.is_zero() {
        return Err(Error::Precondition("minimal polynomial test needs a non-null X".into()));
    }
    let Some(cert) = cert else {
        return Ok(MinimalPolyTest {
            verdict: Verdict::NotApplicable,
            domain: domain.name(),
            x: x.clone(),
            f_x: None,
            p: 0,
            vanishes: None,
            residual: None,
            implication: "tensor is not Osserman on samples",
        });
    };
    Error::check_dim(t.dim(), cert.dim())?;
    let f = cert.f_x(&y);
    let op = t.jacobi_operator(x)?;
    let (vanishes, residual) = match domain {
        ScalarDomain::Exact => (f.eval_matrix(&op.matrix)?.is_zero(), None),
        ScalarDomain::Floating { tolerance } => {
            let a = op.matrix.to_f64();
            let n = a.nrows();
            let an = norm_inf_f64(&a);
            let mut acc = DMatrix::<f64>::zeros(n, n);
            let mut scale = 0.0;
            for (k, c) in f.coeffs().iter().enumerate().rev() {
                let c = to_f64(c);
                acc = &acc * &a + DMatrix::identity(n, n) * c;
                scale += c.abs() * an.powi(k as i32);
            }
            let r = norm_inf_f64(&acc) / scale.max(f64::MIN_POSITIVE);
            (r <= tolerance, Some(r))
        }
    };
    Ok(MinimalPolyTest {
        verdict: if vanishes { Verdict::HoldsOnSamples } else { Verdict::Violated },
        domain: domain.name(),
        x: x.clone(),
        p: f.deg(),
        f_x: Some(f),
        vanishes: Some(vanishes),
        residual,
        implication: if vanishes { IMPLICATION_TRUE } else { IMPLICATION_FALSE },
    })
}

// ------------------------------------------------------------------ report

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrySummary {
    pub passes: bool,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub theorem: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub parameters: CheckParams,
    pub symmetries: SymmetrySummary,
    pub osserman: OssermanOutcome,
    pub jordan_osserman: JordanOssermanOutcome,
    pub semisimple: SemisimpleOutcome,
    pub duality: DualityOutcome,
    pub minimal_polynomial: Option<MinimalPolyTest>,
    pub derivative: Vec<DerivativeResidual>,
    pub derivative_skipped: usize,
    pub inconsistencies: Vec<Inconsistency>,
}

impl PropertyReport {
    pub fn is_consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

/// Cross-checks the verdicts against both theorems.
pub fn cross_validate(
    osserman: Verdict,
    jordan_osserman: Verdict,
    semisimple: Verdict,
    duality: Verdict,
) -> Vec<Inconsistency> {
    let mut out = Vec::new();
    if jordan_osserman == Verdict::HoldsOnSamples && duality == Verdict::Violated {
        out.push(Inconsistency {
            theorem: "theorem-1",
            message: "Jordan-Osserman on samples but the duality principle is violated".into(),
        });
    }
    if semisimple == Verdict::HoldsOnSamples {
        if osserman == Verdict::HoldsOnSamples && duality == Verdict::Violated {
            out.push(Inconsistency {
                theorem: "theorem-2",
                message: "semisimple and Osserman on samples but the duality principle is violated".into(),
            });
        }
        if osserman == Verdict::Violated && duality == Verdict::HoldsOnSamples {
            out.push(Inconsistency {
                theorem: "theorem-2",
                message: "semisimple, not Osserman, yet duality held on all samples; enlarge the sample count".into(),
            });
        }
    }
    out
}

pub fn full_report(t: &CurvatureTensor, params: &CheckParams) -> Result<PropertyReport> {
    let rep = t.validate_symmetries();
    if !rep.passes() {
        return Err(Error::InvalidTensor(rep.violations.len()));
    }
    let space = t.space();
    let osserman = is_osserman_in_range(t, params.samples, params.seed, params.pit_range)?;
    let jordan_osserman = is_jordan_osserman(t, params, &osserman)?;
    let semisimple = is_semisimple(t, params)?;
    let duality = duality_principle(t, params)?;

    let x_mp = semisimple.generic_point.clone().unwrap_or_else(|| semisimple.samples[0].x.clone());
    let minimal_polynomial = Some(minimal_poly_test_in(
        t,
        &x_mp,
        osserman.certificate.as_ref(),
        if params.is_float() { ScalarDomain::Floating { tolerance: params.tol } } else { ScalarDomain::Exact },
    )?);

    let mut derivative = Vec::new();
    let mut derivative_skipped = 0;
    let cone = space.admissible_cones()[0];
    for i in 0..params.derivative_samples {
        let x = cone_sample(space, params.seed, stream::DERIVATIVE, cone, i, params.structure_bound)?;
        let g = classify_generic(t, &x, params.genericity_samples, &params.genericity_radius, derive_seed(params.seed, stream::DERIVATIVE, 1000 + i as u64))?;
        let pair = if g.is_generic_evidence() { pick_derivative_pair(t, &x, params.tol)? } else { None };
        let Some(pair) = pair else {
            derivative_skipped += 1;
            continue;
        };
        let dir = random_orthogonal_direction(space, &x, derive_seed(params.seed, stream::DERIVATIVE, 2000 + i as u64))?;
        let h = default_step(space, &x, params.step)?;
        match derivative_identity_check(t, &x, &pair, &dir, h, params.tol) {
            Ok(r) => derivative.push(r),
            Err(Error::AmbiguousContinuation(_)) => derivative_skipped += 1,
            Err(e) => return Err(e),
        }
    }

    let inconsistencies = cross_validate(osserman.verdict, jordan_osserman.verdict, semisimple.verdict, duality.verdict);
    Ok(PropertyReport {
        parameters: params.clone(),
        symmetries: SymmetrySummary { passes: true, violations: 0 },
        osserman,
        jordan_osserman,
        semisimple,
        duality,
        minimal_polynomial,
        derivative,
        derivative_skipped,
        inconsistencies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::ratio;

    fn sp(p: usize, q: usize) -> PseudoEuclideanSpace {
        PseudoEuclideanSpace::new(p, q).unwrap()
    }

    fn quick() -> CheckParams {
        CheckParams { samples: 8, derivative_samples: 1, genericity_samples: 4, ..CheckParams::default() }
    }

    #[test]
    fn space_form_certificate_n4() {
        let k = rat(2);
        let t = catalog::constant_curvature(&sp(4, 0), &k);
        let out = is_osserman(&t, 8, 1).unwrap();
        assert_eq!(out.verdict, Verdict::HoldsOnSamples);
        // t(t − k)^3 = t⁴ − 3k t³ + 3k² t² − k³ t
        let expect = vec![rat(0), -&k * &k * &k, rat(3) * &k * &k, rat(-3) * &k, rat(1)];
        assert_eq!(out.certificate.unwrap().coefficients, expect);
    }

    #[test]
    fn zero_tensor_is_everything() {
        let t = CurvatureTensor::zero(&sp(2, 1));
        let r = full_report(&t, &quick()).unwrap();
        assert_eq!(r.osserman.verdict, Verdict::HoldsOnSamples);
        assert_eq!(r.osserman.certificate.as_ref().unwrap().coefficients, vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(r.jordan_osserman.verdict, Verdict::HoldsOnSamples);
        assert_eq!(r.semisimple.verdict, Verdict::HoldsOnSamples);
        assert_eq!(r.duality.verdict, Verdict::HoldsOnSamples);
        assert!(r.is_consistent());
    }

    #[test]
    fn random_lorentzian_tensor_is_not_osserman() {
        let t = catalog::random_act(&sp(2, 1), 3, 3, 5).unwrap();
        let out = is_osserman(&t, 16, 1).unwrap();
        assert_eq!(out.verdict, Verdict::Violated);
        assert!(out.witness.unwrap().reverify(&t).unwrap());
    }

    #[test]
    fn space_form_duality_examples() {
        let k = rat(3);
        let t = catalog::constant_curvature(&sp(3, 0), &k);
        let x = Vector::from_i64(&[1, 0, 0]);
        let c = duality_check(&t, &x, 1e-9).unwrap();
        assert!(c.pairs.iter().all(|p| p.status == PairStatus::Passed && p.rho == 0.0));
        let e2 = c.pairs.iter().find(|p| p.eigenvalue == Scalar::Exact(k.clone()) && p.eigenvector[1] != Scalar::Exact(rat(0)));
        assert_eq!(e2.unwrap().dual_eigenvalue, Some(Scalar::Exact(k.clone())));
        let zero = c.pairs.iter().find(|p| p.eigenvalue == Scalar::Exact(rat(0))).unwrap();
        assert_eq!(zero.dual_eigenvalue, Some(Scalar::Exact(rat(0))));
        assert!(duality_check(&t, &Vector::zeros(3), 1e-9).is_err());
        let n = catalog::constant_curvature(&sp(1, 1), &k);
        assert!(matches!(duality_check(&n, &Vector::from_i64(&[1, 1]), 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_riemannian_report_is_consistent() {
        let t = catalog::random_act(&sp(3, 0), 7, 3, 5).unwrap();
        let r = full_report(&t, &quick()).unwrap();
        assert_eq!(r.semisimple.verdict, Verdict::HoldsOnSamples);
        assert_eq!(r.osserman.verdict, Verdict::Violated);
        assert_eq!(r.duality.verdict, Verdict::Violated);
        assert!(r.is_consistent());
        for w in &r.duality.witnesses {
            assert!(w.reverify(&t, 1e-9).unwrap());
        }
    }

    #[test]
    fn reciprocity_examples() {
        let s = sp(2, 0);
        let x = Vector::from_i64(&[2, 0]);
        let y = Vector::from_i64(&[0, 3]);
        let k = ratio(1, 2);
        assert!(reciprocity_check(&s, &(&k * rat(4)), &y, &(&k * rat(9)), &x).unwrap());
        assert!(reciprocity_check(&s, &rat(0), &y, &rat(0), &x).unwrap());
        assert!(!reciprocity_check(&s, &rat(1), &y, &rat(1), &x).unwrap());
    }

    #[test]
    fn continuation_on_space_form() {
        let k = rat(2);
        let t = catalog::constant_curvature(&sp(3, 0), &k);
        let ft = t.to_float();
        let x = [1.0, 2.0, 2.0];
        let a = ft.jacobi::<f64>(&x);
        let cl = eigen_decomposition(&a, 1e-9).unwrap();
        let pair = cl.iter().find(|c| c.eigenvalue.re > 1.0).unwrap().pairs()[0].clone();
        assert_eq!(eigen_continuation(&ft, &x, &pair, &x, 1e-9).unwrap(), pair);
        let y = [1.01, 2.0, 1.98];
        let c = eigen_continuation(&ft, &x, &pair, &y, 1e-9).unwrap();
        let yy: f64 = y.iter().map(|v| v * v).sum();
        assert!((c.eigenvalue.re - 2.0 * yy).abs() < 1e-9 * yy);
    }

    #[test]
    fn derivative_identity_on_space_form() {
        let s = sp(2, 1);
        let t = catalog::constant_curvature(&s, &rat(5));
        let x = Vector::from_i64(&[3, 1, 1]);
        let pair = pick_derivative_pair(&t, &x, 1e-9).unwrap().unwrap();
        let dir = random_orthogonal_direction(&s, &x, 4).unwrap();
        let h = default_step(&s, &x, DEFAULT_STEP).unwrap();
        let r = derivative_identity_check(&t, &x, &pair, &dir, h, 1e-9).unwrap();
        assert!(r.lhs.abs() < 1e-9 * r.scale);
        assert!(r.relative_r_h <= DERIVATIVE_TOLERANCE, "{r:?}");
        assert!(r.ratio_in_band(), "{r:?}");
        assert!(r.radial_relative <= DERIVATIVE_TOLERANCE);
        let e = Vector::from_i64(&[0, 1, 1]);
        assert!(inner(&s, &x, &e).unwrap() != rat(0) || derivative_lhs_exact(&t, &x, &e, &dir).unwrap().is_zero());
    }

    #[test]
    fn minimal_poly_examples() {
        let s = sp(2, 2);
        let t = catalog::constant_curvature(&s, &rat(1));
        let cert = is_osserman(&t, 4, 0).unwrap().certificate.unwrap();
        let x = Vector::from_i64(&[1, 2, 0, 1]);
        assert!(minimal_poly_test(&t, &x, &cert).unwrap());
        let z = CurvatureTensor::zero(&s);
        let cz = is_osserman(&z, 4, 0).unwrap().certificate.unwrap();
        assert!(minimal_poly_test(&z, &x, &cz).unwrap());
        let nil = catalog::nilpotent_example((2, 2)).unwrap();
        let cn = is_osserman(&nil, 8, 0).unwrap().certificate.unwrap();
        assert_eq!(cn.coefficients, vec![rat(0), rat(0), rat(0), rat(0), rat(1)]);
        assert!(!minimal_poly_test(&nil, &x, &cn).unwrap());
        let na = minimal_poly_test_in(&t, &x, None, ScalarDomain::Exact).unwrap();
        assert_eq!(na.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn nilpotent_is_not_semisimple_but_jordan_osserman() {
        let t = catalog::nilpotent_example((2, 2)).unwrap();
        let p = quick();
        assert_eq!(is_semisimple(&t, &p).unwrap().verdict, Verdict::NoEvidence);
        let o = is_osserman(&t, 8, 0).unwrap();
        let jo = is_jordan_osserman(&t, &p, &o).unwrap();
        assert_eq!(jo.verdict, Verdict::HoldsOnSamples);
        assert_eq!(duality_principle(&t, &p).unwrap().verdict, Verdict::HoldsOnSamples);
    }

    #[test]
    fn report_is_deterministic() {
        let t = catalog::random_act(&sp(2, 1), 9, 2, 4).unwrap();
        let a = serde_json::to_string(&full_report(&t, &quick()).unwrap()).unwrap();
        let b = serde_json::to_string(&full_report(&t, &quick()).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cross_validation_flags() {
        use Verdict::*;
        assert_eq!(cross_validate(HoldsOnSamples, HoldsOnSamples, HoldsOnSamples, Violated).len(), 2);
        assert_eq!(cross_validate(Violated, Violated, HoldsOnSamples, HoldsOnSamples).len(), 1);
        assert!(cross_validate(Violated, Violated, HoldsOnSamples, Violated).is_empty());
        assert!(cross_validate(HoldsOnSamples, HoldsOnSamples, NoEvidence, HoldsOnSamples).is_empty());
    }
}
