//! Algebraic curvature tensors and their Jacobi operators.
//!
//! Components follow the fixed convention
//! `R_ijkl = ⟨R(e_i, e_j) e_k, e_l⟩`, so that
//! `R(X,Y)Z = Σ_m ε_m (Σ_ijk x_i y_j z_k R_ijkm) e_m` and the Jacobi operator
//! `ℛ_X Y = R(Y, X) X` has matrix entries `(ℛ_X)_lm = ε_l Σ_jk x_j x_k R_mjkl`.
//!
//! The space of tensors with these symmetries has dimension `n²(n²−1)/12`.
//! Tensors are held as a dense `n⁴` array so that user-supplied data which
//! breaks the symmetries can still be represented and reported.

use nalgebra::{ComplexField, DMatrix};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{to_f64, Matrix, Rational};
use crate::space::{PseudoEuclideanSpace, ScalarDomain, Vector};

pub const CONVENTION: &str = "R_ijkl = <R(e_i,e_j)e_k, e_l>";

pub fn act_space_dimension(n: usize) -> usize {
    n * n * (n * n - 1) / 12
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    space: PseudoEuclideanSpace,
    data: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryKind {
    Antisymmetry,
    PairSymmetry,
    Bianchi,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: SymmetryKind,
    /// Zero-based index quadruple.
    pub indices: [usize; 4],
    pub defect: Rational,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

impl CurvatureTensor {
    pub fn zero(space: &PseudoEuclideanSpace) -> Self {
        let n = space.dim();
        Self { space: space.clone(), data: vec![Rational::zero(); n * n * n * n] }
    }

    /// Builds a tensor from `R_ijkl = f(i, j, k, l)`.
    pub fn from_fn(space: &PseudoEuclideanSpace, mut f: impl FnMut(usize, usize, usize, usize) -> Rational) -> Self {
        let n = space.dim();
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { space: space.clone(), data }
    }

    /// Builds a tensor from explicit (zero-based) components; unlisted
    /// components are zero. No symmetrisation is applied.
    pub fn from_components(
        space: &PseudoEuclideanSpace,
        entries: impl IntoIterator<Item = ([usize; 4], Rational)>,
    ) -> Result<Self> {
        let mut t = Self::zero(space);
        let n = space.dim();
        for (idx, v) in entries {
            if idx.iter().any(|&i| i >= n) {
                return Err(Error::Input(format!("component index {idx:?} out of range for dimension {n}")));
            }
            let p = t.offset(idx);
            t.data[p] = v;
        }
        Ok(t)
    }

    pub fn space(&self) -> &PseudoEuclideanSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    #[inline]
    fn offset(&self, [i, j, k, l]: [usize; 4]) -> usize {
        let n = self.dim();
        ((i * n + j) * n + k) * n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.data[self.offset([i, j, k, l])]
    }

    pub fn set(&mut self, idx: [usize; 4], value: Rational) {
        let p = self.offset(idx);
        self.data[p] = value;
    }

    /// Nonzero components in index order.
    pub fn nonzero_components(&self) -> Vec<([usize; 4], Rational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (p, v) in self.data.iter().enumerate() {
            if !v.is_zero() {
                out.push(([p / (n * n * n), (p / (n * n)) % n, (p / n) % n, p % n], v.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &CurvatureTensor) -> Result<CurvatureTensor> {
        if self.space != other.space {
            return Err(Error::Input("tensors live on different spaces".into()));
        }
        Ok(Self { space: self.space.clone(), data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, c: &Rational) -> CurvatureTensor {
        Self { space: self.space.clone(), data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Re-expresses the covariant components in the basis given by the
    /// columns of `change`: `R'_abcd = Σ P_ia P_jb P_kc P_ld R_ijkl`.
    pub fn change_basis(&self, change: &Matrix, target: &PseudoEuclideanSpace) -> Result<CurvatureTensor> {
        let n = self.dim();
        Error::check_dim(n, change.rows())?;
        Error::check_dim(n, target.dim())?;
        // Contract one index at a time.
        let mut cur = self.data.clone();
        for slot in 0..4 {
            let mut next = vec![Rational::zero(); cur.len()];
            let stride = n.pow(3 - slot as u32);
            for (p, v) in cur.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let old = (p / stride) % n;
                let base = p - old * stride;
                for a in 0..n {
                    let c = &change[(old, a)];
                    if !c.is_zero() {
                        next[base + a * stride] += v * c;
                    }
                }
            }
            cur = next;
        }
        Ok(Self { space: target.clone(), data: cur })
    }

    pub fn validate_symmetries(&self) -> ValidationReport {
        self.validate_symmetries_in(ScalarDomain::Exact)
    }

    /// Checks antisymmetry, pair symmetry and the first Bianchi identity on
    /// every index quadruple. Each violated identity is listed once.
    pub fn validate_symmetries_in(&self, domain: ScalarDomain) -> ValidationReport {
        let n = self.dim();
        let scale = self.data.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let mut violations = Vec::new();
        let mut record = |kind, indices, defect: Rational| {
            if !domain.is_zero(&defect, scale) {
                violations.push(Violation { kind, indices, defect });
            }
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l);
                        if i <= j {
                            record(SymmetryKind::Antisymmetry, [i, j, k, l], r + self.get(j, i, k, l));
                        }
                        if (i, j) < (k, l) {
                            record(SymmetryKind::PairSymmetry, [i, j, k, l], r - self.get(k, l, i, j));
                        }
                        // The cyclic sum is shared by the three rotations of (i, j, k).
                        if (i, j, k) <= (j, k, i) && (i, j, k) <= (k, i, j) {
                            record(
                                SymmetryKind::Bianchi,
                                [i, j, k, l],
                                r + self.get(j, k, i, l) + self.get(k, i, j, l),
                            );
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate_symmetries();
        if report.passes() {
            Ok(())
        } else {
            Err(Error::InvalidTensor(report.violations.len()))
        }
    }

    /// `R(X, Y) Z`.
    pub fn apply(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        for v in [x, y, z] {
            self.space.check(v)?;
        }
        let n = self.dim();
        let mut w = vec![Rational::zero(); n];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for k in 0..n {
                    if z.0[k].is_zero() {
                        continue;
                    }
                    let xyz = &xy * &z.0[k];
                    for (m, wm) in w.iter_mut().enumerate() {
                        let r = self.get(i, j, k, m);
                        if !r.is_zero() {
                            *wm += &xyz * r;
                        }
                    }
                }
            }
        }
        for (wm, &e) in w.iter_mut().zip(self.space.eps()) {
            if e < 0 {
                *wm = -wm.clone();
            }
        }
        Ok(Vector(w))
    }

    /// The Jacobi operator `Y ↦ R(Y, X) X`.
    pub fn jacobi_operator(&self, x: &Vector) -> Result<SquareOperator> {
        self.space.check(x)?;
        let n = self.dim();
        let mut quad = vec![Rational::zero(); n * n];
        for j in 0..n {
            for k in 0..n {
                quad[j * n + k] = &x.0[j] * &x.0[k];
            }
        }
        let eps = self.space.eps();
        let matrix = Matrix::from_fn(n, n, |l, m| {
            let mut s = Rational::zero();
            for j in 0..n {
                for k in 0..n {
                    let q = &quad[j * n + k];
                    let r = self.get(m, j, k, l);
                    if !q.is_zero() && !r.is_zero() {
                        s += q * r;
                    }
                }
            }
            if eps[l] < 0 {
                -s
            } else {
                s
            }
        });
        Ok(SquareOperator { space: self.space.clone(), matrix })
    }

    pub fn to_float(&self) -> FloatTensor {
        FloatTensor {
            n: self.dim(),
            eps: self.space.eps().iter().map(|&e| e as f64).collect(),
            data: self.data.iter().map(to_f64).collect(),
        }
    }
}

/// Double-precision copy of a tensor for the floating eigen paths.
#[derive(Debug, Clone)]
pub struct FloatTensor {
    n: usize,
    eps: Vec<f64>,
    data: Vec<f64>,
}

impl FloatTensor {
    pub fn dim(&self) -> usize {
        self.n
    }

    fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.n;
        self.data[((i * n + j) * n + k) * n + l]
    }

    /// Jacobi operator at a real or complex point (complex-bilinear, no
    /// conjugation).
    pub fn jacobi<T: ComplexField + Copy>(&self, x: &[T]) -> DMatrix<T> {
        let n = self.n;
        DMatrix::from_fn(n, n, |l, m| {
            let mut s = T::zero();
            for j in 0..n {
                for k in 0..n {
                    let r = self.get(m, j, k, l);
                    if r != 0.0 {
                        s += x[j] * x[k] * nalgebra::convert::<f64, T>(r);
                    }
                }
            }
            s * nalgebra::convert::<f64, T>(self.eps[l])
        })
    }

    pub fn eps(&self) -> &[f64] {
        &self.eps
    }
}

/// An `n×n` operator on coordinate vectors of a pseudo-Euclidean space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareOperator {
    pub space: PseudoEuclideanSpace,
    pub matrix: Matrix,
}

impl SquareOperator {
    pub fn new(space: &PseudoEuclideanSpace, matrix: Matrix) -> Result<Self> {
        Error::check_dim(space.dim(), matrix.rows())?;
        Error::check_dim(space.dim(), matrix.cols())?;
        Ok(Self { space: space.clone(), matrix })
    }

    /// Operator on a Euclidean space of matching dimension; convenient for
    /// the spectral routines, which ignore the metric.
    pub fn plain(matrix: Matrix) -> Self {
        let n = matrix.rows();
        Self { space: PseudoEuclideanSpace::riemannian(n.max(2)).expect("n >= 2"), matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `G·A` symmetric, i.e. `⟨AY, Z⟩ = ⟨Y, AZ⟩`.
    pub fn is_metric_self_adjoint(&self) -> bool {
        self.space
            .metric()
            .mul(&self.matrix)
            .map(|m| m.is_symmetric())
            .unwrap_or(false)
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        Ok(Vector(self.matrix.mul_vec(&v.0)?))
    }

    pub fn norm_inf(&self) -> f64 {
        self.matrix.norm_inf()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Largest absolute component, useful as a scale for floating comparisons.
pub fn max_abs_component(t: &CurvatureTensor) -> Rational {
    t.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::{rat, ratio};
    use crate::space::{inner, norm_sq};
    use proptest::prelude::*;

    fn sp(p: usize, q: usize) -> PseudoEuclideanSpace {
        PseudoEuclideanSpace::new(p, q).unwrap()
    }

    #[test]
    fn constant_curvature_passes_and_zero_passes() {
        for (p, q) in [(2, 0), (2, 1), (2, 2)] {
            let t = catalog::constant_curvature(&sp(p, q), &ratio(1, 3));
            assert!(t.validate_symmetries().passes());
            assert!(CurvatureTensor::zero(&sp(p, q)).validate_symmetries().passes());
        }
    }

    #[test]
    fn single_perturbation_is_reported() {
        let mut t = catalog::constant_curvature(&sp(3, 0), &rat(1));
        let v = t.get(0, 1, 0, 2) + rat(1);
        t.set([0, 1, 0, 2], v);
        let rep = t.validate_symmetries();
        assert!(!rep.passes());
        assert!(rep
            .violations
            .iter()
            .any(|v| v.indices == [0, 1, 0, 2] || v.indices == [1, 0, 0, 2]));
    }

    #[test]
    fn apply_constant_curvature_closed_form() {
        let s = sp(2, 1);
        let k = rat(5);
        let t = catalog::constant_curvature(&s, &k);
        let (x, y, z) = (Vector::from_i64(&[1, 2, 0]), Vector::from_i64(&[0, 1, 3]), Vector::from_i64(&[2, -1, 1]));
        let lhs = t.apply(&x, &y, &z).unwrap();
        let rhs = x
            .scale(&(&k * inner(&s, &y, &z).unwrap()))
            .sub(&y.scale(&(&k * inner(&s, &x, &z).unwrap())));
        assert_eq!(lhs, rhs);
        assert!(t.apply(&x, &x, &z).unwrap().is_zero());
    }

    #[test]
    fn jacobi_examples() {
        let s = sp(4, 0);
        let t = catalog::constant_curvature(&s, &rat(3));
        let a = t.jacobi_operator(&s.basis_vector(0)).unwrap();
        assert_eq!(a.matrix, Matrix::diagonal(&[rat(0), rat(3), rat(3), rat(3)]));
        let x = Vector::from_i64(&[1, -2, 0, 5]);
        let a1 = t.jacobi_operator(&x).unwrap();
        let a2 = t.jacobi_operator(&x.scale(&rat(2))).unwrap();
        assert_eq!(a2.matrix, a1.matrix.scale(&rat(4)));
        assert!(a1.apply(&x).unwrap().is_zero());
    }

    #[test]
    fn change_basis_matches_metric_congruence() {
        // Swapping the two basis vectors of a (1,1) constant curvature tensor
        // and negating the metric gives a (1,1) tensor again.
        let s = sp(2, 0);
        let t = catalog::constant_curvature(&s, &rat(2));
        let p = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let u = t.change_basis(&p, &s).unwrap();
        assert_eq!(u, t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn random_tensor_identities(seed in any::<u64>(), xs in prop::collection::vec(-6i64..6, 16)) {
            let s = sp(2, 2);
            let t = catalog::random_act(&s, seed, 2, 4).unwrap();
            prop_assert!(t.validate_symmetries().passes());
            let x = Vector::from_i64(&xs[0..4]);
            let y = Vector::from_i64(&xs[4..8]);
            let z = Vector::from_i64(&xs[8..12]);
            let v = Vector::from_i64(&xs[12..16]);
            let lhs = inner(&s, &t.apply(&x, &y, &z).unwrap(), &v).unwrap();
            let rhs = inner(&s, &t.apply(&z, &v, &x).unwrap(), &y).unwrap();
            prop_assert_eq!(lhs, rhs);
            let j = t.jacobi_operator(&x).unwrap();
            prop_assert!(j.is_metric_self_adjoint());
            prop_assert!(j.apply(&x).unwrap().is_zero());
            // Null X too.
            let null = Vector::from_i64(&[xs[0], xs[1], xs[0], xs[1]]);
            prop_assert!(norm_sq(&s, &null).unwrap().is_zero());
            prop_assert!(t.jacobi_operator(&null).unwrap().apply(&null).unwrap().is_zero());
        }
    }
}
