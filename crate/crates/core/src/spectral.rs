//! Characteristic polynomials, floating eigen-decomposition with clustering,
//! rank-based numeric Jordan structure, and exact diagonalisability.

use std::fmt;
use std::ops::Neg;

use nalgebra::{Complex, DMatrix, Schur, SVD};
use num_bigint::BigInt;
use num_traits::{Num, One, Zero};
use serde::Serialize;

use crate::curvature::SquareOperator;
use crate::error::{Error, Result};
use crate::linalg::{common_denominator, to_f64, Rational};
use crate::polymatrix::{self, UnivariatePolynomial};
use crate::space::{Field, Vector};

pub type Complex64 = Complex<f64>;

/// `χ(t) = det(tI − A) = Σ_j f_j t^j`, monic of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPolynomial {
    coeffs: Vec<Rational>,
}

impl CharacteristicPolynomial {
    /// Coefficient `f_j` of `t^j`.
    pub fn f(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_polynomial(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::new(self.coeffs.clone())
    }
}

/// Berkowitz's division-free characteristic polynomial, coefficients from
/// the leading one down.
fn berkowitz<T: Clone + Num + Neg<Output = T>>(m: &[Vec<T>]) -> Vec<T> {
    let n = m.len();
    if n == 0 {
        return vec![T::one()];
    }
    let mut vect = vec![T::one(), -m[0][0].clone()];
    for r in 1..n {
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(T::one());
        toeplitz.push(-m[r][r].clone());
        // v = A^k C for the leading r×r block A and column C.
        let mut v: Vec<T> = (0..r).map(|i| m[i][r].clone()).collect();
        for _ in 0..r {
            let s = (0..r).fold(T::zero(), |acc, j| acc + m[r][j].clone() * v[j].clone());
            toeplitz.push(-s);
            v = (0..r)
                .map(|i| (0..r).fold(T::zero(), |acc, j| acc + m[i][j].clone() * v[j].clone()))
                .collect();
        }
        let next = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(T::zero(), |acc, j| acc + toeplitz[i - j].clone() * vect[j].clone())
            })
            .collect();
        vect = next;
    }
    vect
}

/// Exact characteristic polynomial. The matrix is scaled to integers first so
/// that Berkowitz runs over `ℤ`; `χ_A(t) = d^{−n} χ_{dA}(d t)`.
pub fn char_poly(a: &SquareOperator) -> CharacteristicPolynomial {
    let n = a.dim();
    let d = common_denominator(a.matrix.entries());
    let dr = Rational::from_integer(d.clone());
    let ints: Vec<Vec<BigInt>> = (0..n)
        .map(|i| a.matrix.row(i).iter().map(|x| (x * &dr).to_integer()).collect())
        .collect();
    let high_to_low = berkowitz(&ints);
    let mut coeffs = vec![Rational::zero(); n + 1];
    // high_to_low[i] multiplies t^{n-i}; divide by d^i.
    let mut dpow = BigInt::one();
    for (i, c) in high_to_low.into_iter().enumerate() {
        coeffs[n - i] = Rational::new(c, dpow.clone());
        dpow *= &d;
    }
    CharacteristicPolynomial { coeffs }
}

/// Floating characteristic polynomial coefficients `f_0..f_n`.
pub fn char_poly_f64(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    let mut c = berkowitz(&rows);
    c.reverse();
    c
}

pub fn norm_inf_f64<T: nalgebra::ComplexField>(a: &DMatrix<T>) -> f64 {
    (0..a.nrows())
        .map(|r| (0..a.ncols()).map(|c| nalgebra::try_convert::<T::RealField, f64>(a[(r, c)].clone().modulus()).unwrap_or(f64::NAN)).sum::<f64>())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    #[serde(serialize_with = "ser_complex")]
    pub eigenvalue: Complex64,
    #[serde(serialize_with = "ser_complex_vec")]
    pub eigenvector: Vec<Complex64>,
    pub residual: f64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_complex(z))
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&format_complex(z))?;
    }
    seq.end()
}

pub fn format_complex(z: &Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.12e}", z.re)
    } else {
        format!("{:.12e}{:+.12e}i", z.re, z.im)
    }
}

/// A cluster of numerically coincident eigenvalues and its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenCluster {
    pub eigenvalue: Complex64,
    pub algebraic_multiplicity: usize,
    /// Orthonormal basis of the (numerical) eigenspace.
    pub basis: Vec<Vec<Complex64>>,
    pub residual: f64,
}

impl EigenCluster {
    pub fn geometric_multiplicity(&self) -> usize {
        self.basis.len()
    }

    pub fn is_real(&self) -> bool {
        self.eigenvalue.im == 0.0
    }

    pub fn pairs(&self) -> Vec<EigenPair> {
        self.basis
            .iter()
            .map(|v| EigenPair { eigenvalue: self.eigenvalue, eigenvector: v.clone(), residual: self.residual })
            .collect()
    }
}

fn complex_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    // The unshifted iteration can stall on highly structured input; a
    // diagonal shift or the transpose changes the iterates but not the
    // spectrum.
    let n = a.nrows();
    let scale = norm_inf_f64(a).max(1.0);
    for (k, shift) in [0.0, 0.1, -0.37, 0.73].into_iter().enumerate() {
        let m = if k % 2 == 0 { a.clone() } else { a.transpose() };
        let m = m + DMatrix::<f64>::identity(n, n) * (shift * scale);
        if let Some(schur) = Schur::try_new(m, f64::EPSILON, 100_000) {
            return Ok(schur.complex_eigenvalues().iter().map(|z| z - shift * scale).collect());
        }
    }
    Err(Error::Numerical("Schur iteration did not converge".into()))
}

/// Copies of an eigenvalue of multiplicity `m` may spread up to
/// `tol^{CLUSTER_EXPONENT/m}·‖A‖`. Schur backward errors are far below
/// `tol`, so the exponent tightens the naive `tol^{1/m}` radius, which for
/// `m ≥ 5` would swallow integer-spaced spectra.
pub const CLUSTER_EXPONENT: f64 = 1.5;

/// Groups eigenvalues whose spread is explained by rounding.
///
/// Divisive: a set is kept together when it looks like the perturbed copies
/// of one eigenvalue of algebraic multiplicity `m`, and otherwise split at
/// its longest minimum-spanning-tree edge. Such copies lie within the
/// radius above, sit symmetrically around their mean and are well
/// separated from the rest of the spectrum.
fn cluster(eigs: &[Complex64], tol: f64, norm: f64) -> Vec<(Complex64, usize)> {
    let mut out = Vec::new();
    let all: Vec<usize> = (0..eigs.len()).collect();
    split_cluster(eigs, all, tol, norm, &mut out);
    let mut out: Vec<(Complex64, usize)> = out
        .into_iter()
        .map(|g| {
            let mut c = g.iter().map(|&i| eigs[i]).sum::<Complex64>() / g.len() as f64;
            if c.im.abs() <= tol * norm {
                c.im = 0.0;
            }
            (c, g.len())
        })
        .collect();
    out.sort_by(|x, y| x.0.re.total_cmp(&y.0.re).then(x.0.im.total_cmp(&y.0.im)));
    out
}

fn plausible_cluster(eigs: &[Complex64], members: &[usize], tol: f64, norm: f64) -> bool {
    let m = members.len();
    if m <= 1 {
        return true;
    }
    let pts: Vec<Complex64> = members.iter().map(|&i| eigs[i]).collect();
    let c = pts.iter().sum::<Complex64>() / m as f64;
    let radius = pts.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
    if radius <= tol * norm {
        return true;
    }
    if radius > tol.powf(CLUSTER_EXPONENT / m as f64) * norm {
        return false;
    }
    // The outermost copies must balance around the mean.
    let outer: Vec<Complex64> = pts.iter().copied().filter(|z| (z - c).norm() >= 0.5 * radius).collect();
    let oc = outer.iter().sum::<Complex64>() / outer.len() as f64;
    if (oc - c).norm() > 0.25 * radius {
        return false;
    }
    let gap = (0..eigs.len())
        .filter(|i| !members.contains(i))
        .flat_map(|i| pts.iter().map(move |z| (z - eigs[i]).norm()))
        .fold(f64::INFINITY, f64::min);
    gap >= 8.0 * radius
}

fn split_cluster(eigs: &[Complex64], members: Vec<usize>, tol: f64, norm: f64, out: &mut Vec<Vec<usize>>) {
    if plausible_cluster(eigs, &members, tol, norm) {
        out.push(members);
        return;
    }
    // Prim's tree over the members; cut the longest edge.
    let m = members.len();
    let mut in_tree = vec![false; m];
    let mut best = vec![(f64::INFINITY, 0usize); m];
    let mut parent = vec![usize::MAX; m];
    in_tree[0] = true;
    for j in 1..m {
        best[j] = ((eigs[members[0]] - eigs[members[j]]).norm(), 0);
    }
    let mut edges = Vec::with_capacity(m - 1);
    for _ in 1..m {
        let (j, _) = (0..m)
            .filter(|&j| !in_tree[j])
            .map(|j| (j, best[j].0))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("a vertex remains");
        in_tree[j] = true;
        parent[j] = best[j].1;
        edges.push((best[j].0, parent[j], j));
        for k in 0..m {
            if !in_tree[k] {
                let d = (eigs[members[j]] - eigs[members[k]]).norm();
                if d < best[k].0 {
                    best[k] = (d, j);
                }
            }
        }
    }
    let cut = edges.iter().enumerate().max_by(|a, b| a.1 .0.total_cmp(&b.1 .0)).map(|(i, _)| i).expect("m > 1");
    // Components after removing the cut edge.
    let mut adj = vec![Vec::new(); m];
    for (i, &(_, u, v)) in edges.iter().enumerate() {
        if i != cut {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut side = vec![false; m];
    let mut stack = vec![edges[cut].1];
    side[edges[cut].1] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !side[v] {
                side[v] = true;
                stack.push(v);
            }
        }
    }
    let (a, b): (Vec<usize>, Vec<usize>) = (0..m).partition(|&i| side[i]);
    split_cluster(eigs, a.into_iter().map(|i| members[i]).collect(), tol, norm, out);
    split_cluster(eigs, b.into_iter().map(|i| members[i]).collect(), tol, norm, out);
}

fn shifted(a: &DMatrix<f64>, lambda: Complex64) -> DMatrix<Complex64> {
    let n = a.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let v = Complex64::new(a[(i, j)], 0.0);
        if i == j {
            v - lambda
        } else {
            v
        }
    })
}

/// Singular values sorted decreasingly, with right singular vectors.
fn svd_sorted(b: DMatrix<Complex64>) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let n = b.ncols();
    let svd = SVD::try_new(b, false, true, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD returned no right vectors".into()))?;
    let mut out: Vec<(f64, Vec<Complex64>)> = (0..svd.singular_values.len())
        .map(|i| (svd.singular_values[i], (0..n).map(|c| vt[(i, c)].conj()).collect()))
        .collect();
    out.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ok(out)
}

fn svd_sorted_real(b: DMatrix<f64>) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let n = b.ncols();
    let svd = SVD::try_new(b, false, true, f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let vt = svd.v_t.ok_or_else(|| Error::Numerical("SVD returned no right vectors".into()))?;
    let mut out: Vec<(f64, Vec<Complex64>)> = (0..svd.singular_values.len())
        .map(|i| (svd.singular_values[i], (0..n).map(|c| Complex64::new(vt[(i, c)], 0.0)).collect()))
        .collect();
    out.sort_by(|x, y| y.0.total_cmp(&x.0));
    Ok(out)
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvalues of `A` over `ℂ`, clustered, with eigenspace bases.
pub fn eigen_decomposition(a: &DMatrix<f64>, tol: f64) -> Result<Vec<EigenCluster>> {
    let n = a.nrows();
    let norm = norm_inf_f64(a);
    if !norm.is_finite() {
        return Err(Error::Numerical("non-finite matrix entries".into()));
    }
    if norm == 0.0 {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        return Ok(vec![EigenCluster {
            eigenvalue: Complex64::new(0.0, 0.0),
            algebraic_multiplicity: n,
            basis,
            residual: 0.0,
        }]);
    }
    let eigs = complex_eigenvalues(a)?;
    let mut out = Vec::new();
    for (lambda, mult) in cluster(&eigs, tol, norm) {
        let svd = if lambda.im == 0.0 {
            let mut b = a.clone();
            for i in 0..n {
                b[(i, i)] -= lambda.re;
            }
            svd_sorted_real(b)?
        } else {
            svd_sorted(shifted(a, lambda))?
        };
        let thr = tol * norm;
        let mut basis: Vec<Vec<Complex64>> = svd
            .iter()
            .rev()
            .take(mult)
            .filter(|(s, _)| *s <= thr)
            .map(|(_, v)| v.clone())
            .collect();
        if basis.is_empty() {
            basis.push(svd.last().expect("nonempty").1.clone());
        }
        let am = DMatrix::from_fn(n, n, |i, j| Complex64::new(a[(i, j)], 0.0));
        let residual = basis
            .iter()
            .map(|v| {
                let av = &am * nalgebra::DVector::from_column_slice(v);
                let r: Vec<Complex64> = (0..n).map(|i| av[i] - lambda * v[i]).collect();
                vec_norm(&r) / (norm * vec_norm(v))
            })
            .fold(0.0, f64::max);
        out.push(EigenCluster { eigenvalue: lambda, algebraic_multiplicity: mult, basis, residual });
    }
    Ok(out)
}

/// Distinct eigenvalue descriptor: exact rational, exact algebraic (root
/// `index` of a squarefree factor, roots ordered by real then imaginary
/// part), or a floating approximation.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenvalueDescriptor {
    Rational(Rational),
    Algebraic { factor: UnivariatePolynomial, index: usize },
    Numeric(Complex64),
}

impl EigenvalueDescriptor {
    pub fn approx(&self) -> Complex64 {
        match self {
            EigenvalueDescriptor::Rational(r) => Complex64::new(to_f64(r), 0.0),
            EigenvalueDescriptor::Algebraic { factor, index } => {
                approximate_roots(factor).get(*index).copied().unwrap_or(Complex64::new(f64::NAN, f64::NAN))
            }
            EigenvalueDescriptor::Numeric(z) => *z,
        }
    }
}

impl fmt::Display for EigenvalueDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenvalueDescriptor::Rational(r) => write!(f, "{}", crate::linalg::format_rational(r)),
            EigenvalueDescriptor::Algebraic { factor, index } => write!(f, "root#{index}({factor})"),
            EigenvalueDescriptor::Numeric(z) => write!(f, "{}", format_complex(z)),
        }
    }
}

/// Complex roots of a polynomial via the companion matrix, sorted.
pub fn approximate_roots(p: &UnivariatePolynomial) -> Vec<Complex64> {
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let m = p.monic();
    let comp = DMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -to_f64(&m.coeff(i))
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots = complex_eigenvalues(&comp).unwrap_or_default();
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    roots
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanEntry {
    pub eigenvalue: EigenvalueDescriptor,
    /// Block sizes, decreasing.
    pub blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanStructure {
    pub entries: Vec<JordanEntry>,
    /// Set by the numeric path when a rank decision was close to threshold.
    pub unreliable: bool,
}

/// Eigenvalue-anonymous Jordan type: block-size multisets plus the number
/// of distinct eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StructureSignature {
    pub blocks: Vec<Vec<usize>>,
    pub p: usize,
}

impl fmt::Display for StructureSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("[{}]", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}} p={}", parts.join(","), self.p)
    }
}

impl JordanStructure {
    pub fn p(&self) -> usize {
        self.entries.len()
    }

    pub fn total_size(&self) -> usize {
        self.entries.iter().flat_map(|e| &e.blocks).sum()
    }

    pub fn signature(&self) -> StructureSignature {
        let mut blocks: Vec<Vec<usize>> = self
            .entries
            .iter()
            .map(|e| {
                let mut b = e.blocks.clone();
                b.sort_unstable_by(|x, y| y.cmp(x));
                b
            })
            .collect();
        blocks.sort();
        StructureSignature { blocks, p: self.entries.len() }
    }

    pub fn blocks_at_rational(&self, r: &Rational) -> Option<Vec<usize>> {
        self.entries.iter().find_map(|e| match &e.eigenvalue {
            EigenvalueDescriptor::Rational(x) if x == r => Some(e.blocks.clone()),
            _ => None,
        })
    }

    /// Same eigenvalues (within `tol` relative to `scale`) carrying the same
    /// block sizes.
    pub fn agrees_with(&self, other: &JordanStructure, tol: f64, scale: f64) -> bool {
        if self.p() != other.p() {
            return false;
        }
        let mut used = vec![false; other.entries.len()];
        for e in &self.entries {
            let z = e.eigenvalue.approx();
            let hit = other.entries.iter().enumerate().find(|(i, o)| {
                !used[*i] && (o.eigenvalue.approx() - z).norm() <= tol * scale.max(1.0) && o.blocks == e.blocks
            });
            match hit {
                Some((i, _)) => used[i] = true,
                None => return false,
            }
        }
        true
    }
}

impl fmt::Display for JordanStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{}:{:?}", e.eigenvalue, e.blocks))
            .collect();
        write!(f, "{{{}}}, p={}", parts.join(", "), self.p())?;
        if self.unreliable {
            write!(f, " (unreliable)")?;
        }
        Ok(())
    }
}

fn matpow(b: &DMatrix<Complex64>, k: usize) -> DMatrix<Complex64> {
    let n = b.nrows();
    (0..k).fold(DMatrix::identity(n, n), |acc, _| &acc * b)
}

/// Jordan structure from ranks of `(A − λI)^k` at each eigenvalue cluster.
pub fn jordan_structure_numeric(a: &DMatrix<f64>, tol: f64) -> Result<JordanStructure> {
    let n = a.nrows();
    let norm = norm_inf_f64(a);
    if norm == 0.0 {
        return Ok(JordanStructure {
            entries: vec![JordanEntry { eigenvalue: EigenvalueDescriptor::Numeric(Complex64::new(0.0, 0.0)), blocks: vec![1; n] }],
            unreliable: false,
        });
    }
    let eigs = complex_eigenvalues(a)?;
    let mut unreliable = false;
    let mut entries = Vec::new();
    for (lambda, mult) in cluster(&eigs, tol, norm) {
        let b = shifted(a, lambda);
        let mut ranks = vec![n];
        for k in 1..=mult {
            let thr = tol * norm.powi(k as i32);
            let svd = svd_sorted(matpow(&b, k))?;
            if svd.iter().any(|(s, _)| *s > thr / 10.0 && *s < thr * 10.0) {
                unreliable = true;
            }
            ranks.push(svd.iter().filter(|(s, _)| *s > thr).count());
            if ranks[k] == ranks[k - 1] {
                break;
            }
        }
        // at_least[k-1] = number of blocks of size >= k.
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0].saturating_sub(w[1])).collect();
        let mut blocks = Vec::new();
        for k in 1..=at_least.len() {
            let here = at_least[k - 1].saturating_sub(at_least.get(k).copied().unwrap_or(0));
            blocks.extend(std::iter::repeat_n(k, here));
        }
        blocks.sort_unstable_by(|x, y| y.cmp(x));
        if blocks.iter().sum::<usize>() != mult {
            unreliable = true;
        }
        entries.push(JordanEntry { eigenvalue: EigenvalueDescriptor::Numeric(lambda), blocks });
    }
    Ok(JordanStructure { entries, unreliable })
}

/// Monic least-degree annihilating polynomial, verified by substitution.
pub fn minimal_polynomial(a: &SquareOperator) -> Result<UnivariatePolynomial> {
    let m = polymatrix::invariant_factors(a).minimal_polynomial();
    if !m.eval_matrix(&a.matrix)?.is_zero() {
        return Err(Error::Internal(format!("minimal polynomial {m} does not annihilate the operator")));
    }
    Ok(m)
}

/// Diagonalisability over the given field: the minimal polynomial is
/// squarefree and, over `ℝ`, has only real roots.
pub fn is_diagonalisable(a: &SquareOperator, field: Field) -> Result<bool> {
    let m = minimal_polynomial(a)?;
    Ok(diagonalisable_from_minimal(&m, field))
}

pub fn diagonalisable_from_minimal(m: &UnivariatePolynomial, field: Field) -> bool {
    if !m.is_squarefree() {
        return false;
    }
    match field {
        Field::Complex => true,
        Field::Real => m.real_root_count().map(|c| c == m.deg()).unwrap_or(false),
    }
}

/// Rational eigenvalues with exact eigenspace bases (integer vectors).
#[derive(Debug, Clone)]
pub struct ExactSpectrum {
    pub char_poly: CharacteristicPolynomial,
    pub eigenspaces: Vec<(Rational, Vec<Vector>)>,
    /// Every eigenvalue over `ℂ` is rational.
    pub all_rational: bool,
}

pub fn exact_spectrum(a: &SquareOperator) -> ExactSpectrum {
    let chi = char_poly(a);
    let sf = chi.to_polynomial().squarefree_part();
    let roots = sf.rational_roots();
    let all_rational = roots.len() == sf.deg();
    let eigenspaces = roots
        .into_iter()
        .map(|r| {
            let basis = a.matrix.shift(&r).nullspace().into_iter().map(Vector).collect();
            (r, basis)
        })
        .collect();
    ExactSpectrum { char_poly: chi, eigenspaces, all_rational }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Matrix};

    fn op(rows: &[&[i64]]) -> SquareOperator {
        SquareOperator::plain(Matrix::from_i64_rows(rows))
    }

    fn up(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&op(&[&[1, 0], &[0, 2]])).to_polynomial(), up(&[2, -3, 1]));
        assert_eq!(char_poly(&op(&[&[0, 1], &[0, 0]])).to_polynomial(), up(&[0, 0, 1]));
        let a = Matrix::from_i64_rows(&[&[2, 1, 0], &[-1, 3, 4], &[5, 0, -2]]).scale(&crate::linalg::ratio(1, 3));
        let chi = char_poly(&SquareOperator::plain(a.clone()));
        assert_eq!(chi.f(2), &-a.trace());
        assert_eq!(chi.f(0), &-a.determinant().unwrap());
    }

    #[test]
    fn eigen_examples() {
        let c = eigen_decomposition(&DMatrix::from_row_slice(3, 3, &[1., 0., 0., 0., 1., 0., 0., 0., 2.]), 1e-9).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].algebraic_multiplicity, c[0].geometric_multiplicity()), (2, 2));
        assert!((c[0].eigenvalue.re - 1.0).abs() < 1e-12);
        assert_eq!(c[1].geometric_multiplicity(), 1);
        let c = eigen_decomposition(&DMatrix::from_row_slice(2, 2, &[0., 1., 0., 0.]), 1e-9).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].geometric_multiplicity(), 1);
        let c = eigen_decomposition(&DMatrix::from_row_slice(2, 2, &[0., -1., 1., 0.]), 1e-9).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0].eigenvalue - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((c[1].eigenvalue - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        for cl in &c {
            assert!(cl.residual < 1e-12);
        }
    }

    #[test]
    fn numeric_jordan_examples() {
        let js = jordan_structure_numeric(&DMatrix::from_row_slice(3, 3, &[1., 0., 0., 0., 1., 0., 0., 0., 2.]), 1e-9).unwrap();
        assert_eq!(js.signature(), StructureSignature { blocks: vec![vec![1], vec![1, 1]], p: 2 });
        let js = jordan_structure_numeric(&DMatrix::from_row_slice(2, 2, &[0., 1., 0., 0.]), 1e-9).unwrap();
        assert_eq!(js.signature(), StructureSignature { blocks: vec![vec![2]], p: 1 });
        assert!(!js.unreliable);
    }

    #[test]
    fn diagonalisable_examples() {
        assert!(is_diagonalisable(&op(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]), Field::Real).unwrap());
        assert!(!is_diagonalisable(&op(&[&[0, 1], &[0, 0]]), Field::Real).unwrap());
        let rot = op(&[&[0, -1], &[1, 0]]);
        assert!(!is_diagonalisable(&rot, Field::Real).unwrap());
        assert!(is_diagonalisable(&rot, Field::Complex).unwrap());
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(minimal_polynomial(&SquareOperator::plain(Matrix::identity(3))).unwrap(), up(&[-1, 1]));
        assert_eq!(minimal_polynomial(&op(&[&[1, 0], &[0, 2]])).unwrap(), up(&[2, -3, 1]));
        let m = minimal_polynomial(&op(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(m, up(&[0, 0, 1]));
    }

    #[test]
    fn exact_spectrum_rational() {
        let s = exact_spectrum(&op(&[&[2, 0, 0], &[0, 2, 0], &[1, 0, 3]]));
        assert!(s.all_rational);
        assert_eq!(s.eigenspaces.len(), 2);
        assert_eq!(s.eigenspaces[0].0, rat(2));
        assert_eq!(s.eigenspaces[0].1.len(), 2);
        let s = exact_spectrum(&op(&[&[0, -1], &[1, 0]]));
        assert!(!s.all_rational);
        assert!(s.eigenspaces.is_empty());
    }
}
