//! Pseudo-Euclidean spaces: a diagonal `±1` metric of signature `(p, q)`,
//! exact vectors, and seeded sampling of (non-null, space/timelike) vectors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, to_f64, Matrix, Rational};

/// Relative tolerance used by floating checks unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarDomain {
    Exact,
    Floating { tolerance: f64 },
}

impl ScalarDomain {
    pub fn floating() -> Self {
        ScalarDomain::Floating { tolerance: DEFAULT_TOLERANCE }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ScalarDomain::Exact => "exact",
            ScalarDomain::Floating { .. } => "float",
        }
    }

    /// Zero test for a value whose natural magnitude is `scale`.
    pub fn is_zero(&self, x: &Rational, scale: f64) -> bool {
        match self {
            ScalarDomain::Exact => x.is_zero(),
            ScalarDomain::Floating { tolerance } => to_f64(x).abs() <= tolerance * scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cone {
    Any,
    Spacelike,
    Timelike,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoEuclideanSpace {
    p: usize,
    q: usize,
    field: Field,
    eps: Vec<i8>,
}

impl PseudoEuclideanSpace {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        Self::with_field(p, q, Field::Real)
    }

    pub fn with_field(p: usize, q: usize, field: Field) -> Result<Self> {
        if p + q < 2 {
            return Err(Error::Input(format!("dimension {} < 2", p + q)));
        }
        let eps = std::iter::repeat_n(1, p).chain(std::iter::repeat_n(-1, q)).collect();
        Ok(Self { p, q, field, eps })
    }

    pub fn riemannian(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// Diagonalises a non-degenerate symmetric metric by rational congruence.
    ///
    /// Returns the canonical space together with the change-of-basis matrix
    /// `P` whose columns are the new basis vectors, so that `Pᵀ G P` is the
    /// `±1` diagonal (positive entries first). Normalising a diagonal entry
    /// `d` to `±1` needs `|d|` to be the square of a rational; other metrics
    /// are rejected.
    pub fn from_metric(metric: &Matrix, field: Field) -> Result<(Self, Matrix)> {
        if !metric.is_symmetric() {
            return Err(Error::Input("metric matrix is not symmetric".into()));
        }
        let n = metric.rows();
        let mut g = metric.clone();
        let mut basis = Matrix::identity(n);
        for k in 0..n {
            if g[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                    swap_basis(&mut g, &mut basis, k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !g[(k, j)].is_zero()) {
                    // e_k <- e_k + e_j gives diagonal 2 g_kj != 0.
                    add_basis(&mut g, &mut basis, k, j, &Rational::one());
                } else {
                    return Err(Error::Input("metric is degenerate".into()));
                }
            }
            let piv = g[(k, k)].clone();
            for j in k + 1..n {
                if g[(k, j)].is_zero() {
                    continue;
                }
                let f = -(&g[(k, j)] / &piv);
                add_basis(&mut g, &mut basis, j, k, &f);
            }
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for k in 0..n {
            let d = g[(k, k)].clone();
            let s = rational_sqrt(&d.abs()).ok_or_else(|| {
                Error::Input(format!(
                    "metric diagonalises to entry {} which is not ± a rational square; exact ±1 normalisation impossible",
                    crate::linalg::format_rational(&d)
                ))
            })?;
            let col: Vec<Rational> = basis.column(k).iter().map(|x| x / &s).collect();
            if d.is_positive() {
                pos.push(col);
            } else {
                neg.push(col);
            }
        }
        let (p, q) = (pos.len(), neg.len());
        let cols: Vec<Vec<Rational>> = pos.into_iter().chain(neg).collect();
        let change = Matrix::from_fn(n, n, |r, c| cols[c][r].clone());
        Ok((Self::with_field(p, q, field)?, change))
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn is_definite(&self) -> bool {
        self.p == 0 || self.q == 0
    }

    pub fn metric(&self) -> Matrix {
        Matrix::diagonal(&self.eps.iter().map(|&e| rat(e as i64)).collect::<Vec<_>>())
    }

    /// Cones from which non-null vectors can be drawn in this signature.
    pub fn admissible_cones(&self) -> Vec<Cone> {
        if self.field == Field::Complex {
            return vec![Cone::Any];
        }
        let mut cones = Vec::new();
        if self.p > 0 {
            cones.push(Cone::Spacelike);
        }
        if self.q > 0 {
            cones.push(Cone::Timelike);
        }
        cones
    }

    pub fn check(&self, x: &Vector) -> Result<()> {
        Error::check_dim(self.dim(), x.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        Vector(v)
    }
}

impl fmt::Display for PseudoEuclideanSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)?;
        if self.field == Field::Complex {
            write!(f, " over C")?;
        }
        Ok(())
    }
}

fn swap_basis(g: &mut Matrix, basis: &mut Matrix, a: usize, b: usize) {
    let n = g.rows();
    for r in 0..n {
        let t = g[(r, a)].clone();
        g[(r, a)] = g[(r, b)].clone();
        g[(r, b)] = t;
        let t = basis[(r, a)].clone();
        basis[(r, a)] = basis[(r, b)].clone();
        basis[(r, b)] = t;
    }
    g.swap_rows(a, b);
}

/// Basis change `e_a <- e_a + f e_b`, applied as a congruence to `g`.
fn add_basis(g: &mut Matrix, basis: &mut Matrix, a: usize, b: usize, f: &Rational) {
    let n = g.rows();
    for r in 0..n {
        let v = &g[(r, b)] * f;
        g[(r, a)] += v;
        let v = &basis[(r, b)] * f;
        basis[(r, a)] += v;
    }
    for c in 0..n {
        let v = &g[(b, c)] * f;
        g[(a, c)] += v;
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// A coordinate vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn from_i64(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn euclidean_norm_sq(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x * x)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

pub fn inner(space: &PseudoEuclideanSpace, x: &Vector, y: &Vector) -> Result<Rational> {
    space.check(x)?;
    space.check(y)?;
    Ok(x.0
        .iter()
        .zip(&y.0)
        .zip(space.eps())
        .fold(Rational::zero(), |acc, ((a, b), &e)| if e > 0 { acc + a * b } else { acc - a * b }))
}

pub fn norm_sq(space: &PseudoEuclideanSpace, x: &Vector) -> Result<Rational> {
    inner(space, x, x)
}

pub fn inner_f64(eps: &[i8], x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).zip(eps).map(|((a, b), &e)| e as f64 * a * b).sum()
}

pub fn is_null(space: &PseudoEuclideanSpace, x: &Vector, domain: ScalarDomain) -> Result<bool> {
    let ns = norm_sq(space, x)?;
    Ok(domain.is_zero(&ns, to_f64(&x.euclidean_norm_sq())))
}

/// Basis of `X^⊥` for a non-null `X`, each vector exactly orthogonal to `X`.
pub fn orthogonal_complement_basis(space: &PseudoEuclideanSpace, x: &Vector) -> Result<Vec<Vector>> {
    let ns = norm_sq(space, x)?;
    if ns.is_zero() {
        return Err(Error::Precondition("orthogonal complement requested for a null or zero vector".into()));
    }
    // Project each standard basis vector off X; drop the one most aligned with X.
    let n = space.dim();
    let pivot = (0..n)
        .max_by(|&a, &b| x.0[a].abs().cmp(&x.0[b].abs()))
        .expect("dimension >= 2");
    let mut out = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != pivot) {
        let e = space.basis_vector(i);
        let c = inner(space, &e, x)? / &ns;
        out.push(Vector(crate::linalg::clear_denominators(&e.sub(&x.scale(&c)).0)));
    }
    Ok(out)
}

/// Draws an integer vector with coordinates uniform in `[-bound, bound]`,
/// rejection-sampling until the requested null/cone condition holds.
pub fn sample_vector(
    space: &PseudoEuclideanSpace,
    seed: u64,
    bound: u64,
    require_non_null: bool,
    cone: Cone,
) -> Result<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_vector_with(space, &mut rng, bound, require_non_null, cone)
}

const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

pub fn sample_vector_with(
    space: &PseudoEuclideanSpace,
    rng: &mut impl Rng,
    bound: u64,
    require_non_null: bool,
    cone: Cone,
) -> Result<Vector> {
    if bound < 1 {
        return Err(Error::Precondition("coordinate bound must be at least 1".into()));
    }
    let (p, q) = space.signature();
    match cone {
        Cone::Spacelike if p == 0 => {
            return Err(Error::Precondition(format!("no spacelike vectors in signature {space}")))
        }
        Cone::Timelike if q == 0 => {
            return Err(Error::Precondition(format!("no timelike vectors in signature {space}")))
        }
        _ => {}
    }
    let b = bound as i64;
    for _ in 0..MAX_SAMPLE_ATTEMPTS {
        let v = Vector((0..space.dim()).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-b..=b)))).collect());
        let ns = norm_sq(space, &v)?;
        let ok = match cone {
            Cone::Any => !require_non_null || !ns.is_zero(),
            Cone::Spacelike => ns.is_positive(),
            Cone::Timelike => ns.is_negative(),
        };
        if ok {
            return Ok(v);
        }
    }
    Err(Error::Precondition(format!(
        "no vector satisfying cone {cone:?} found after {MAX_SAMPLE_ATTEMPTS} draws"
    )))
}

/// Seed for the `index`-th item of stream `stream` under `master`
/// (splitmix64 finaliser), so parallel workers draw disjoint streams.
pub fn derive_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(p: usize, q: usize) -> PseudoEuclideanSpace {
        PseudoEuclideanSpace::new(p, q).unwrap()
    }

    #[test]
    fn inner_examples() {
        let s = sp(1, 1);
        assert_eq!(inner(&s, &Vector::from_i64(&[1, 0]), &Vector::from_i64(&[0, 1])).unwrap(), rat(0));
        assert_eq!(inner(&s, &Vector::from_i64(&[1, 1]), &Vector::from_i64(&[1, 1])).unwrap(), rat(0));
        let x = Vector::from_i64(&[1, 2, 3]);
        assert_eq!(inner(&sp(2, 1), &x, &x).unwrap(), rat(-4));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let err = inner(&sp(2, 1), &Vector::from_i64(&[1, 2]), &Vector::from_i64(&[1, 2, 3])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn norm_sq_examples() {
        assert_eq!(norm_sq(&sp(3, 0), &Vector::from_i64(&[1, 0, 0])).unwrap(), rat(1));
        assert_eq!(norm_sq(&sp(1, 1), &Vector::from_i64(&[1, 1])).unwrap(), rat(0));
        assert_eq!(norm_sq(&sp(2, 2), &Vector::from_i64(&[3, 0, 0, 2])).unwrap(), rat(5));
    }

    #[test]
    fn null_examples() {
        let d = ScalarDomain::Exact;
        assert!(is_null(&sp(1, 1), &Vector::from_i64(&[1, 1]), d).unwrap());
        assert!(!is_null(&sp(1, 1), &Vector::from_i64(&[1, 0]), d).unwrap());
        assert!(is_null(&sp(2, 2), &Vector::from_i64(&[1, 1, 1, 1]), d).unwrap());
        assert!(is_null(&sp(2, 2), &Vector::from_i64(&[1, 1, 1, 1]), ScalarDomain::floating()).unwrap());
    }

    #[test]
    fn complement_examples() {
        let b = orthogonal_complement_basis(&sp(2, 0), &Vector::from_i64(&[1, 0])).unwrap();
        assert_eq!(b, vec![Vector::from_i64(&[0, 1])]);
        let b = orthogonal_complement_basis(&sp(1, 1), &Vector::from_i64(&[1, 0])).unwrap();
        assert_eq!(b, vec![Vector::from_i64(&[0, 1])]);
        let s = sp(2, 1);
        let x = Vector::from_i64(&[1, 1, 1]);
        let b = orthogonal_complement_basis(&s, &x).unwrap();
        assert_eq!(b.len(), 2);
        for v in &b {
            assert!(inner(&s, &x, v).unwrap().is_zero());
        }
        let m = Matrix::from_rows(&b.iter().map(|v| v.0.clone()).collect::<Vec<_>>()).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(orthogonal_complement_basis(&sp(1, 1), &Vector::from_i64(&[2, 2])).is_err());
    }

    #[test]
    fn sampling_cones() {
        let v = sample_vector(&sp(3, 0), 7, 3, true, Cone::Any).unwrap();
        assert!(norm_sq(&sp(3, 0), &v).unwrap().is_positive());
        let v = sample_vector(&sp(1, 1), 7, 3, true, Cone::Timelike).unwrap();
        assert!(norm_sq(&sp(1, 1), &v).unwrap().is_negative());
        assert!(sample_vector(&sp(2, 0), 7, 3, true, Cone::Timelike).is_err());
        assert!(sample_vector(&sp(2, 0), 7, 0, true, Cone::Any).is_err());
    }

    #[test]
    fn metric_congruence() {
        // g = [[0,1],[1,0]] is the hyperbolic plane; congruent to diag(1,-1)
        // only after an irrational rescaling, so use 2*[[0,1],[1,0]] which
        // diagonalises to (4, -1).
        let g = Matrix::from_i64_rows(&[&[0, 2], &[2, 0]]);
        let (s, pm) = PseudoEuclideanSpace::from_metric(&g, Field::Real).unwrap();
        assert_eq!(s.signature(), (1, 1));
        let d = pm.transpose().mul(&g).unwrap().mul(&pm).unwrap();
        assert_eq!(d, s.metric());
        let g = Matrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(PseudoEuclideanSpace::from_metric(&g, Field::Real).is_err());
    }

    proptest! {
        #[test]
        fn inner_is_bilinear_and_symmetric(
            xs in prop::collection::vec(-20i64..20, 4),
            ys in prop::collection::vec(-20i64..20, 4),
            zs in prop::collection::vec(-20i64..20, 4),
            a in -5i64..5, b in -5i64..5,
        ) {
            let s = sp(2, 2);
            let (x, y, z) = (Vector::from_i64(&xs), Vector::from_i64(&ys), Vector::from_i64(&zs));
            let lhs = inner(&s, &x.scale(&rat(a)).add(&y.scale(&rat(b))), &z).unwrap();
            let rhs = rat(a) * inner(&s, &x, &z).unwrap() + rat(b) * inner(&s, &y, &z).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(inner(&s, &x, &y).unwrap(), inner(&s, &y, &x).unwrap());
            let c = rat(a);
            prop_assert_eq!(norm_sq(&s, &x.scale(&c)).unwrap(), &c * &c * norm_sq(&s, &x).unwrap());
        }

        #[test]
        fn complement_reverifies(xs in prop::collection::vec(-9i64..9, 5)) {
            let s = sp(3, 2);
            let x = Vector::from_i64(&xs);
            prop_assume!(!norm_sq(&s, &x).unwrap().is_zero());
            for b in orthogonal_complement_basis(&s, &x).unwrap() {
                prop_assert!(inner(&s, &x, &b).unwrap().is_zero());
            }
        }

        #[test]
        fn sampling_is_reproducible(seed in any::<u64>()) {
            let s = sp(2, 1);
            prop_assert_eq!(
                sample_vector(&s, seed, 5, true, Cone::Any).unwrap(),
                sample_vector(&s, seed, 5, true, Cone::Any).unwrap()
            );
        }
    }
}
