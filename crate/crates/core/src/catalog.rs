//! Curvature-tensor families used to exercise the checkers.
//!
//! * space forms `R_ijkl = k(g_jk g_il − g_ik g_jl)`;
//! * generators `R_φ(X,Y)Z = φ(Y,Z)ΦX − φ(X,Z)ΦY` for symmetric `φ`
//!   (`⟨ΦX, V⟩ = φ(X, V)`), which span the space of curvature tensors;
//! * Clifford tensors `λ₀ R_g + Σ λ_i R^{J_i}` with the structure generator
//!   `R^J(X,Y)Z = ⟨JY,Z⟩JX − ⟨JX,Z⟩JY − 2⟨JX,Y⟩JZ`. With this sign the
//!   Jacobi operator of `R^J` is `Y ↦ 3⟨Y,JX⟩JX`, so for unit `X` the
//!   eigenvalue on `J_iX` is `λ₀ + 3λ_i`, on `X` it is `0`, and on the rest
//!   of `X^⊥` it is `λ₀`;
//! * nilpotent examples in neutral signature, built from a `φ` supported on
//!   a totally isotropic plane.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curvature::CurvatureTensor;
use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rational};
use crate::space::PseudoEuclideanSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBilinearForm {
    matrix: Matrix,
}

impl SymmetricBilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::Input("bilinear form matrix is not symmetric".into()));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `φ = a♭ ⊗ b♭ + b♭ ⊗ a♭` (or `a♭ ⊗ a♭` when `a == b`).
    pub fn symmetric_product(space: &PseudoEuclideanSpace, a: &[Rational], b: &[Rational]) -> Self {
        let eps = space.eps();
        let flat = |v: &[Rational]| -> Vec<Rational> {
            v.iter().zip(eps).map(|(x, &e)| if e > 0 { x.clone() } else { -x.clone() }).collect()
        };
        let (fa, fb) = (flat(a), flat(b));
        let n = space.dim();
        let m = if a == b {
            Matrix::from_fn(n, n, |i, j| &fa[i] * &fa[j])
        } else {
            Matrix::from_fn(n, n, |i, j| &fa[i] * &fb[j] + &fb[i] * &fa[j])
        };
        Self { matrix: m }
    }
}

/// Metric-skew operators `J_1..J_m` with `J_i² = −I` and `J_iJ_j = −J_jJ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnticommutingStructure {
    space: PseudoEuclideanSpace,
    ops: Vec<Matrix>,
}

impl AnticommutingStructure {
    /// Checks every invariant exactly.
    pub fn new(space: &PseudoEuclideanSpace, ops: Vec<Matrix>) -> Result<Self> {
        let n = space.dim();
        let g = space.metric();
        let minus_id = Matrix::identity(n).scale(&rat(-1));
        for (i, j) in ops.iter().enumerate() {
            if j.rows() != n || j.cols() != n {
                return Err(Error::Input(format!("J_{} has the wrong shape", i + 1)));
            }
            let gj = g.mul(j)?;
            if !gj.add(&gj.transpose())?.is_zero() {
                return Err(Error::Input(format!("J_{} is not skew-adjoint for the metric", i + 1)));
            }
            if j.mul(j)? != minus_id {
                return Err(Error::Input(format!("J_{} does not square to -I", i + 1)));
            }
            for (k, other) in ops.iter().enumerate().skip(i + 1) {
                if !j.mul(other)?.add(&other.mul(j)?)?.is_zero() {
                    return Err(Error::Input(format!("J_{} and J_{} do not anticommute", i + 1, k + 1)));
                }
            }
        }
        Ok(Self { space: space.clone(), ops })
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Builds the matrix whose column `c` is `images[c]` (as `(row, sign)`).
fn signed_permutation(n: usize, images: &[(usize, i64)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for (c, &(r, s)) in images.iter().enumerate() {
        m[(r, c)] = rat(s);
    }
    m
}

/// `J e_{2i} = e_{2i+1}`, `J e_{2i+1} = −e_{2i}`; needs even `p` and `q`.
pub fn complex_structure(space: &PseudoEuclideanSpace) -> Result<AnticommutingStructure> {
    let (p, q) = space.signature();
    if p % 2 != 0 || q % 2 != 0 {
        return Err(Error::Input(format!("no standard complex structure in signature {space}")));
    }
    let n = space.dim();
    let images: Vec<(usize, i64)> = (0..n).map(|c| if c % 2 == 0 { (c + 1, 1) } else { (c - 1, -1) }).collect();
    AnticommutingStructure::new(space, vec![signed_permutation(n, &images)])
}

/// Left multiplication by `i, j, k` on `ℍ = ℝ⁴` (basis `1, i, j, k`).
pub fn quaternionic_structures(space: &PseudoEuclideanSpace) -> Result<AnticommutingStructure> {
    if space.signature() != (4, 0) && space.signature() != (0, 4) {
        return Err(Error::Input(format!("quaternionic structures need a definite 4-space, got {space}")));
    }
    let li = signed_permutation(4, &[(1, 1), (0, -1), (3, 1), (2, -1)]);
    let lj = signed_permutation(4, &[(2, 1), (3, -1), (0, -1), (1, 1)]);
    let lk = signed_permutation(4, &[(3, 1), (2, 1), (1, -1), (0, -1)]);
    AnticommutingStructure::new(space, vec![li, lj, lk])
}

/// Left multiplication by the seven imaginary octonion units on `𝕆 = ℝ⁸`,
/// using the multiplication triples `(a, a+1, a+3) mod 7`.
pub fn octonionic_structures(space: &PseudoEuclideanSpace) -> Result<AnticommutingStructure> {
    if space.signature() != (8, 0) && space.signature() != (0, 8) {
        return Err(Error::Input(format!("octonionic structures need a definite 8-space, got {space}")));
    }
    // product[a][b] = (c, sign) with e_a e_b = sign e_c, indices 0..8 (0 = real unit).
    let mut product = [[(0usize, 0i64); 8]; 8];
    for a in 0..8 {
        product[0][a] = (a, 1);
        product[a][0] = (a, 1);
        if a > 0 {
            product[a][a] = (0, -1);
        }
    }
    for t in 0..7 {
        let (a, b, c) = (t % 7 + 1, (t + 1) % 7 + 1, (t + 3) % 7 + 1);
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            product[x][y] = (z, 1);
            product[y][x] = (z, -1);
        }
    }
    let ops = (1..8)
        .map(|u| {
            let images: Vec<(usize, i64)> = (0..8).map(|col| product[u][col]).collect();
            signed_permutation(8, &images)
        })
        .collect();
    AnticommutingStructure::new(space, ops)
}

pub fn constant_curvature(space: &PseudoEuclideanSpace, k: &Rational) -> CurvatureTensor {
    let eps = space.eps();
    let g = |a: usize, b: usize| -> i64 {
        if a == b {
            eps[a] as i64
        } else {
            0
        }
    };
    CurvatureTensor::from_fn(space, |i, j, kk, l| {
        let v = g(j, kk) * g(i, l) - g(i, kk) * g(j, l);
        if v == 0 {
            Rational::zero()
        } else {
            k * rat(v)
        }
    })
}

fn generator_components(space: &PseudoEuclideanSpace, phi: &Matrix) -> CurvatureTensor {
    CurvatureTensor::from_fn(space, |i, j, k, l| &phi[(j, k)] * &phi[(i, l)] - &phi[(i, k)] * &phi[(j, l)])
}

pub fn rank_one_generator(space: &PseudoEuclideanSpace, phi: &SymmetricBilinearForm) -> Result<CurvatureTensor> {
    Error::check_dim(space.dim(), phi.matrix.rows())?;
    let t = generator_components(space, &phi.matrix);
    postcondition(t)
}

fn postcondition(t: CurvatureTensor) -> Result<CurvatureTensor> {
    let rep = t.validate_symmetries();
    if rep.passes() {
        Ok(t)
    } else {
        Err(Error::Internal(format!("constructed tensor violates {} symmetries", rep.violations.len())))
    }
}

/// Structure generator `R^J` for a single metric-skew `J`.
pub fn structure_generator(space: &PseudoEuclideanSpace, j: &Matrix) -> CurvatureTensor {
    let eps = space.eps();
    // ω_ab = ⟨J e_a, e_b⟩ = ε_b J_ba
    let n = space.dim();
    let omega = Matrix::from_fn(n, n, |a, b| if eps[b] > 0 { j[(b, a)].clone() } else { -j[(b, a)].clone() });
    let two = rat(2);
    CurvatureTensor::from_fn(space, |i, jj, k, l| {
        &omega[(jj, k)] * &omega[(i, l)] - &omega[(i, k)] * &omega[(jj, l)] - &two * &omega[(i, jj)] * &omega[(k, l)]
    })
}

pub fn clifford_tensor(
    space: &PseudoEuclideanSpace,
    cs: &AnticommutingStructure,
    lambda0: &Rational,
    lambdas: &[Rational],
) -> Result<CurvatureTensor> {
    if cs.space != *space {
        return Err(Error::Input("anticommuting structure lives on a different space".into()));
    }
    // Re-check so that hand-built structures cannot bypass validation.
    AnticommutingStructure::new(space, cs.ops.clone())?;
    if lambdas.len() != cs.len() {
        return Err(Error::Input(format!("{} coefficients for {} structure operators", lambdas.len(), cs.len())));
    }
    let mut t = constant_curvature(space, lambda0);
    for (j, l) in cs.ops.iter().zip(lambdas) {
        if !l.is_zero() {
            t = t.add(&structure_generator(space, j).scale(l))?;
        }
    }
    postcondition(t)
}

fn random_symmetric(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rat(rng.gen_range(-bound..=bound));
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// Sum of `generators` generators `R_φ` with random integer symmetric `φ`,
/// entries in `[−bound, bound]`.
pub fn random_act(space: &PseudoEuclideanSpace, seed: u64, generators: usize, bound: i64) -> Result<CurvatureTensor> {
    if generators == 0 {
        return Err(Error::Precondition("generator count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = space.dim();
    let mut t = CurvatureTensor::zero(space);
    for _ in 0..generators {
        let phi = random_symmetric(&mut rng, n, bound.max(1));
        t = t.add(&generator_components(space, &phi))?;
    }
    postcondition(t)
}

/// Basis `w_a = e_a + e_{p+a}` of a maximal totally isotropic subspace.
pub fn isotropic_basis(space: &PseudoEuclideanSpace) -> Vec<Vec<Rational>> {
    let (p, q) = space.signature();
    (0..p.min(q))
        .map(|a| {
            let mut w = vec![Rational::zero(); space.dim()];
            w[a] = Rational::one();
            w[p + a] = Rational::one();
            w
        })
        .collect()
}

/// Random tensor from generators whose `φ` is supported on a totally
/// isotropic subspace `W`; then `ℛ_X` maps into `W` and kills `W`, so
/// `ℛ_X² = 0` for every `X`.
pub fn random_isotropic_act(space: &PseudoEuclideanSpace, seed: u64, generators: usize, bound: i64) -> Result<CurvatureTensor> {
    let w = isotropic_basis(space);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = CurvatureTensor::zero(space);
    for _ in 0..generators.max(1) {
        let c = random_symmetric(&mut rng, w.len().max(1), bound.max(1));
        let mut phi = Matrix::zeros(space.dim(), space.dim());
        for a in 0..w.len() {
            for b in a..w.len() {
                if c[(a, b)].is_zero() {
                    continue;
                }
                let term = SymmetricBilinearForm::symmetric_product(space, &w[a], &w[b]);
                phi = phi.add(&term.matrix.scale(&c[(a, b)]))?;
            }
        }
        t = t.add(&generator_components(space, &phi))?;
    }
    postcondition(t)
}

/// Shipped nilpotent example in signature `(2,2)`: `R_φ` with
/// `φ = u♭⊗v♭ + v♭⊗u♭`, `u = e₁+e₃`, `v = e₂+e₄`. For every non-null `X`
/// the Jacobi operator has rank one and squares to zero.
///
/// Signature `(1,1)` is refused: in dimension two every curvature tensor is
/// a space form, whose Jacobi operator at a non-null `X` is
/// `k‖X‖²` times a projection and is never nonzero nilpotent.
pub fn nilpotent_example(signature: (usize, usize)) -> Result<CurvatureTensor> {
    match signature {
        (2, 2) => {
            let space = PseudoEuclideanSpace::new(2, 2)?;
            let u = [1, 0, 1, 0].map(rat);
            let v = [0, 1, 0, 1].map(rat);
            rank_one_generator(&space, &SymmetricBilinearForm::symmetric_product(&space, &u, &v))
        }
        (1, 1) => Err(Error::NotConstructible(
            "signature (1,1): every 2-dimensional curvature tensor has constant curvature, so no Jacobi operator at a non-null vector is nonzero nilpotent".into(),
        )),
        other => Err(Error::Input(format!("no nilpotent example shipped for signature {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use crate::space::Vector;
    use crate::spectral::exact_spectrum;

    fn sp(p: usize, q: usize) -> PseudoEuclideanSpace {
        PseudoEuclideanSpace::new(p, q).unwrap()
    }

    #[test]
    fn space_form_examples() {
        assert!(constant_curvature(&sp(3, 1), &rat(0)).is_zero());
        let t = constant_curvature(&sp(2, 0), &rat(1));
        let j = t.jacobi_operator(&Vector::from_i64(&[1, 0])).unwrap();
        assert_eq!(j.matrix, Matrix::diagonal(&[rat(0), rat(1)]));
        let t = constant_curvature(&sp(1, 1), &rat(1));
        let j = t.jacobi_operator(&Vector::from_i64(&[1, 0])).unwrap();
        assert_eq!(j.matrix, Matrix::diagonal(&[rat(0), rat(1)]));
    }

    #[test]
    fn generator_examples() {
        let s = sp(2, 1);
        let g = SymmetricBilinearForm::new(s.metric()).unwrap();
        assert_eq!(rank_one_generator(&s, &g).unwrap(), constant_curvature(&s, &rat(1)));
        let zero = SymmetricBilinearForm::new(Matrix::zeros(3, 3)).unwrap();
        assert!(rank_one_generator(&s, &zero).unwrap().is_zero());
        assert!(SymmetricBilinearForm::new(Matrix::from_i64_rows(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn standard_structures_are_valid() {
        assert_eq!(quaternionic_structures(&sp(4, 0)).unwrap().len(), 3);
        assert_eq!(octonionic_structures(&sp(8, 0)).unwrap().len(), 7);
        assert_eq!(complex_structure(&sp(2, 2)).unwrap().len(), 1);
        assert!(complex_structure(&sp(2, 1)).is_err());
    }

    #[test]
    fn clifford_eigenvalue_pattern_fixes_normalisation() {
        let s = sp(4, 0);
        let cs = complex_structure(&s).unwrap();
        let t = clifford_tensor(&s, &cs, &rat(1), &[rat(3)]).unwrap();
        let spec = exact_spectrum(&t.jacobi_operator(&Vector::from_i64(&[1, 0, 0, 0])).unwrap());
        let got: Vec<(Rational, usize)> = spec.eigenspaces.iter().map(|(r, b)| (r.clone(), b.len())).collect();
        assert_eq!(got, vec![(rat(0), 1), (rat(1), 2), (rat(10), 1)]);
    }

    #[test]
    fn clifford_rejects_bad_structure() {
        let s = sp(4, 0);
        let bad = AnticommutingStructure { space: s.clone(), ops: vec![Matrix::identity(4)] };
        assert!(clifford_tensor(&s, &bad, &rat(1), &[rat(1)]).is_err());
    }

    #[test]
    fn random_act_reproducible() {
        let s = sp(2, 1);
        assert_eq!(random_act(&s, 11, 3, 5).unwrap(), random_act(&s, 11, 3, 5).unwrap());
        assert_ne!(random_act(&s, 11, 3, 5).unwrap(), random_act(&s, 12, 3, 5).unwrap());
    }

    #[test]
    fn nilpotent_examples() {
        let t = nilpotent_example((2, 2)).unwrap();
        let x = Vector::from_i64(&[1, 0, 0, 0]);
        let j = t.jacobi_operator(&x).unwrap();
        assert!(!j.is_zero());
        assert!(j.matrix.mul(&j.matrix).unwrap().is_zero());
        assert!(matches!(nilpotent_example((1, 1)), Err(Error::NotConstructible(_))));
        assert!(matches!(nilpotent_example((3, 1)), Err(Error::Input(_))));
    }

    #[test]
    fn isotropic_family_is_nilpotent() {
        let s = sp(3, 3);
        let t = random_isotropic_act(&s, 5, 2, 3).unwrap();
        let j = t.jacobi_operator(&Vector::from_i64(&[1, -2, 3, 0, 1, 1])).unwrap();
        assert!(j.matrix.mul(&j.matrix).unwrap().is_zero());
        let _ = ratio(1, 2);
    }
}
