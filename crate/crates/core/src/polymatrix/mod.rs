//! Exact canonical forms of operators at rational points: invariant
//! factors of `tI − A`, elementary-divisor patterns, the exact Jordan
//! structure, and sampled genericity of a vector for a curvature tensor.

pub mod poly;
mod smith;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use poly::UnivariatePolynomial;

use crate::curvature::{CurvatureTensor, SquareOperator};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::space::{derive_seed, Vector};
use crate::spectral::{EigenvalueDescriptor, JordanEntry, JordanStructure, StructureSignature};

/// Invariant factors `I⁽¹⁾ | I⁽²⁾ | … | I⁽ⁿ⁾` of `tI − A`, all monic; their
/// product is the characteristic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    factors: Vec<UnivariatePolynomial>,
}

impl InvariantFactors {
    /// Validates monicity and the divisibility chain.
    pub fn new(factors: Vec<UnivariatePolynomial>) -> Result<Self> {
        for f in &factors {
            if f.is_zero() || !f.leading().is_one() {
                return Err(Error::Input(format!("invariant factor {f} is not monic")));
            }
        }
        for w in factors.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(Error::Input(format!("divisibility chain broken: {} does not divide {}", w[0], w[1])));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[UnivariatePolynomial] {
        &self.factors
    }

    /// The last factor.
    pub fn minimal_polynomial(&self) -> UnivariatePolynomial {
        self.factors.last().cloned().unwrap_or_else(UnivariatePolynomial::one)
    }

    pub fn product(&self) -> UnivariatePolynomial {
        self.factors.iter().fold(UnivariatePolynomial::one(), |acc, f| acc.mul(f))
    }

    /// Determinantal divisors `D_k = I⁽¹⁾⋯I⁽ᵏ⁾`, the gcds of the `k×k`
    /// minors of `tI − A`.
    pub fn determinantal_divisors(&self) -> Vec<UnivariatePolynomial> {
        let mut acc = UnivariatePolynomial::one();
        self.factors
            .iter()
            .map(|f| {
                acc = acc.mul(f);
                acc.clone()
            })
            .collect()
    }
}

pub fn invariant_factors(a: &SquareOperator) -> InvariantFactors {
    InvariantFactors { factors: smith::smith_diagonal(&a.matrix) }
}

/// One term `S^e` of the squarefree decomposition of the `k`-th quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternEntry {
    /// One-based position in the chain.
    pub k: usize,
    /// Jordan block size contributed by each root of `factor`.
    pub multiplicity: usize,
    pub degree: usize,
    pub factor: UnivariatePolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ElementaryDivisorPattern {
    pub entries: Vec<PatternEntry>,
}

impl ElementaryDivisorPattern {
    /// `(block size, number of eigenvalues carrying such a block)` pairs.
    pub fn block_counts(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|e| (e.multiplicity, e.degree)).collect()
    }
}

/// Elementary-divisor pattern of an invariant-factor chain.
///
/// The quotients `Q_k = D_k / D_{k−1}` of consecutive determinantal
/// divisors (`Q_1 = D_1`) are the invariant factors themselves; each is
/// split as `Π_e S_{k,e}^e`, and every root of `S_{k,e}` carries one Jordan
/// block of size `e`.
pub fn elementary_divisor_pattern(inv: &InvariantFactors) -> Result<ElementaryDivisorPattern> {
    let checked = InvariantFactors::new(inv.factors.clone())?;
    let dets = checked.determinantal_divisors();
    let mut entries = Vec::new();
    let mut prev = UnivariatePolynomial::one();
    for (idx, d) in dets.iter().enumerate() {
        let q = d.div_exact(&prev)?;
        for (e, s) in q.squarefree_decomposition() {
            entries.push(PatternEntry { k: idx + 1, multiplicity: e, degree: s.deg(), factor: s });
        }
        prev = d.clone();
    }
    Ok(ElementaryDivisorPattern { entries })
}

/// Exact Jordan structure of `A` over `ℂ`.
///
/// The squarefree factors of the pattern are refined into a pairwise
/// coprime base; all roots of one base polynomial share the same block
/// sizes. Eigenvalues are kept symbolic (base polynomial and root index),
/// or as rationals when the base polynomial is linear.
pub fn jordan_structure_exact(a: &SquareOperator) -> JordanStructure {
    let inv = invariant_factors(a);
    jordan_structure_from_invariants(&inv)
}

pub fn jordan_structure_from_invariants(inv: &InvariantFactors) -> JordanStructure {
    jordan_from_invariants(inv, true)
}

/// Eigenvalue-anonymous Jordan type of `A`. Skips the rational-root split,
/// which changes descriptors but never the signature.
pub fn jordan_signature_exact(a: &SquareOperator) -> StructureSignature {
    jordan_from_invariants(&invariant_factors(a), false).signature()
}

fn jordan_from_invariants(inv: &InvariantFactors, split_rational: bool) -> JordanStructure {
    let pattern = elementary_divisor_pattern(inv).expect("smith diagonal forms a valid chain");
    let mut base = vec![inv.minimal_polynomial().squarefree_part()];
    base.retain(|b| !b.is_constant());
    for entry in &pattern.entries {
        let mut next = Vec::with_capacity(base.len() + 1);
        for b in base {
            let g = b.gcd(&entry.factor);
            if g.is_constant() || g == b {
                next.push(b);
            } else {
                next.push(b.div_exact(&g).expect("gcd divides").monic());
                next.push(g);
            }
        }
        base = next;
    }
    // Split off rational roots so they are reported as exact eigenvalues.
    let mut split = Vec::with_capacity(base.len());
    for b in base {
        let mut rest = b;
        let found = if split_rational { rest.rational_roots() } else { Vec::new() };
        for r in found {
            let lin = UnivariatePolynomial::linear(&r);
            rest = rest.div_exact(&lin).expect("root gives a factor");
            split.push(lin);
        }
        if !rest.is_constant() {
            split.push(rest.monic());
        }
    }
    let mut base = split;
    base.sort();
    let mut entries = Vec::new();
    for b in base {
        let mut blocks: Vec<usize> = pattern
            .entries
            .iter()
            .filter(|e| b.divides(&e.factor))
            .map(|e| e.multiplicity)
            .collect();
        blocks.sort_unstable_by(|x, y| y.cmp(x));
        if b.deg() == 1 {
            let root = -b.coeff(0);
            entries.push(JordanEntry { eigenvalue: EigenvalueDescriptor::Rational(root), blocks });
        } else {
            for index in 0..b.deg() {
                entries.push(JordanEntry {
                    eigenvalue: EigenvalueDescriptor::Algebraic { factor: b.clone(), index },
                    blocks: blocks.clone(),
                });
            }
        }
    }
    JordanStructure { entries, unreliable: false }
}

/// Eigenvalue-anonymous key of a Jordan structure.
pub fn structure_signature(js: &JordanStructure) -> StructureSignature {
    js.signature()
}

pub fn real_root_count(poly: &UnivariatePolynomial) -> Result<usize> {
    poly.real_root_count()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenericClassification {
    /// All sampled perturbations shared the structure at `X`.
    GenericEvidence { signature: StructureSignature, samples: usize },
    /// A perturbation with a different structure: a certain disproof.
    NonGenericWitness {
        signature: StructureSignature,
        perturbed: Vector,
        perturbed_signature: StructureSignature,
        sample_index: usize,
    },
}

impl GenericClassification {
    pub fn is_generic_evidence(&self) -> bool {
        matches!(self, GenericClassification::GenericEvidence { .. })
    }
}

/// Denominator of the rational perturbations used by [`classify_generic`].
pub const PERTURBATION_DENOMINATOR: i64 = 1000;

/// Default neighbourhood radius for genericity sampling.
pub fn default_radius() -> Rational {
    crate::linalg::ratio(1, 100)
}

/// Compares the Jordan type of `ℛ_X` with that at `count` rational
/// perturbations `X + δ`, `δ_i = m_i / 1000`, `|m_i| ≤ radius·1000`.
pub fn classify_generic(
    t: &CurvatureTensor,
    x: &Vector,
    count: usize,
    radius: &Rational,
    seed: u64,
) -> Result<GenericClassification> {
    let signature = jordan_signature_exact(&t.jacobi_operator(x)?);
    let max_num = (radius * rat(PERTURBATION_DENOMINATOR)).floor().to_integer();
    let max_num: i64 = max_num.try_into().unwrap_or(i64::MAX).max(1);
    let den = rat(PERTURBATION_DENOMINATOR);
    let results: Vec<Result<(Vector, StructureSignature)>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x6e6e, i as u64));
            let delta: Vec<Rational> = (0..x.dim())
                .map(|_| rat(rng.gen_range(-max_num..=max_num)) / &den)
                .collect();
            let y = x.add(&Vector(delta));
            let sig = jordan_signature_exact(&t.jacobi_operator(&y)?);
            Ok((y, sig))
        })
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        let (y, sig) = r?;
        if sig != signature {
            return Ok(GenericClassification::NonGenericWitness {
                signature,
                perturbed: y,
                perturbed_signature: sig,
                sample_index: i,
            });
        }
    }
    Ok(GenericClassification::GenericEvidence { signature, samples: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn op(rows: &[&[i64]]) -> SquareOperator {
        SquareOperator::plain(Matrix::from_i64_rows(rows))
    }

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    #[test]
    fn invariant_factor_examples() {
        let inv = invariant_factors(&op(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(inv.factors(), &[p(&[1]), p(&[-1, 1]), p(&[-1, 1]).mul(&p(&[-2, 1]))]);
        let inv = invariant_factors(&op(&[&[0, 1], &[0, 0]]));
        assert_eq!(inv.factors(), &[p(&[1]), p(&[0, 0, 1])]);
        let inv = invariant_factors(&op(&[&[1, 0], &[0, 1]]));
        assert_eq!(inv.factors(), &[p(&[-1, 1]), p(&[-1, 1])]);
    }

    #[test]
    fn pattern_examples() {
        let pat = elementary_divisor_pattern(&InvariantFactors::new(vec![p(&[1]), p(&[0, 0, 1])]).unwrap()).unwrap();
        assert_eq!(pat.block_counts(), vec![(2, 1)]);
        let pat = elementary_divisor_pattern(&InvariantFactors::new(vec![p(&[-1, 1]), p(&[-1, 1])]).unwrap()).unwrap();
        assert_eq!(pat.block_counts(), vec![(1, 1), (1, 1)]);
        let top = p(&[1, 0, 1]).mul(&p(&[-3, 1]));
        let inv = InvariantFactors::new(vec![p(&[1]), p(&[1]), top]).unwrap();
        let pat = elementary_divisor_pattern(&inv).unwrap();
        assert_eq!(pat.block_counts(), vec![(1, 3)]);
        let js = jordan_structure_from_invariants(&inv);
        assert_eq!(js.p(), 3);
        assert!(InvariantFactors::new(vec![p(&[-2, 1]), p(&[-1, 1])]).is_err());
    }

    #[test]
    fn exact_jordan_examples() {
        let js = jordan_structure_exact(&op(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(js.p(), 2);
        assert_eq!(js.blocks_at_rational(&rat(1)), Some(vec![1, 1]));
        assert_eq!(js.blocks_at_rational(&rat(2)), Some(vec![1]));
        // Companion matrix of t^3.
        let js = jordan_structure_exact(&op(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(js.blocks_at_rational(&rat(0)), Some(vec![3]));
        assert_eq!(js.p(), 1);
    }

    #[test]
    fn signature_examples() {
        let a = structure_signature(&jordan_structure_exact(&op(&[&[0, 1], &[0, 0]])));
        let b = structure_signature(&jordan_structure_exact(&op(&[&[5, 1], &[0, 5]])));
        assert_eq!(a, b);
        let c = structure_signature(&jordan_structure_exact(&op(&[&[3, 1, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 5]])));
        let d = structure_signature(&jordan_structure_exact(&op(&[&[3, 0, 0, 0], &[0, 3, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 5]])));
        assert_ne!(c, d);
        assert_eq!(c.p, 2);
    }

    #[test]
    fn root_count_wrapper() {
        assert_eq!(real_root_count(&p(&[1, 0, 1])).unwrap(), 0);
        assert!(real_root_count(&UnivariatePolynomial::zero()).is_err());
    }
}
