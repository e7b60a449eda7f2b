//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Matrix, Rational};

/// Coefficients in increasing degree; no trailing zeros (the zero
/// polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::linalg::rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - r`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self { coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::Input("division by the zero polynomial".into()));
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Input(format!("{divisor} does not divide {self}")))
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rescaling by a rational so the coefficients are coprime integers with
    /// positive leading coefficient. Keeps Euclidean remainder sequences small.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().is_some_and(|x| x.is_negative()) {
            g = -g;
        }
        Self::new(ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::linalg::to_f64(c))
    }

    /// `p(A)` by Horner's scheme.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        self.div_exact(&self.gcd(&self.derivative())).expect("gcd divides").monic()
    }

    /// Yun's algorithm: `self = c · Π_e S_e^e` with the `S_e` monic,
    /// squarefree and pairwise coprime. Returns the nonconstant `(e, S_e)`.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, Self)> {
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut e = 1;
        loop {
            a = b.gcd(&d);
            if !a.is_constant() {
                out.push((e, a.clone()));
            }
            b = b.div_exact(&a).expect("gcd divides");
            if b.is_constant() {
                break;
            }
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            e += 1;
        }
        out
    }

    /// Sturm chain `p, p', -rem(p, p'), ...`.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let k = chain.len();
            let r = chain[k - 2].rem(&chain[k - 1]).neg();
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps sign variations intact.
            let r = r.primitive().scale(&Rational::from_integer(if r.leading().is_negative() { -BigInt::one() } else { BigInt::one() }));
            chain.push(r);
        }
        chain.retain(|p| !p.is_zero());
        chain
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Input("real root count of the zero polynomial".into()));
        }
        let chain = self.sturm_chain();
        let at_pos_inf: Vec<i8> = chain.iter().map(|p| sign(&p.leading())).collect();
        let at_neg_inf: Vec<i8> = chain
            .iter()
            .map(|p| sign(&p.leading()) * if p.deg() % 2 == 0 { 1 } else { -1 })
            .collect();
        Ok(sign_variations(&at_neg_inf) - sign_variations(&at_pos_inf))
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    fn roots_in(chain: &[Self], lo: &Rational, hi: &Rational) -> usize {
        let v = |x: &Rational| sign_variations(&chain.iter().map(|p| sign(&p.eval(x))).collect::<Vec<_>>());
        v(lo) - v(hi)
    }

    /// Distinct rational roots, in increasing order.
    ///
    /// Real roots are isolated by Sturm bisection. A rational root of the
    /// primitive integer polynomial `Σ c_i t^i` lies in `(1/c_d)ℤ`, so each
    /// isolating interval is shrunk below width `1/c_d` and its single
    /// candidate checked exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_constant() {
            return Vec::new();
        }
        let s = self.squarefree_part().primitive();
        let mut roots = Vec::new();
        // Zero root handled up front keeps the bound computation simple.
        let s = if s.coeff(0).is_zero() {
            roots.push(Rational::zero());
            s.div_exact(&Self::from_i64(&[0, 1])).expect("t divides").primitive()
        } else {
            s
        };
        if s.is_constant() {
            return roots;
        }
        let lead = s.leading();
        let grid = lead.recip();
        if let Some(mut fast) = Self::rational_roots_near_approximations(&s, &grid) {
            roots.append(&mut fast);
            roots.sort();
            return roots;
        }
        let bound = Rational::one()
            + s.coeffs.iter().map(|c| (c / &lead).abs()).max().unwrap_or_else(Rational::zero);
        let chain = s.sturm_chain();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let count = Self::roots_in(&chain, &lo, &hi);
            if count == 0 {
                continue;
            }
            if count == 1 && &hi - &lo < grid {
                // Unique m/c_d in (lo, hi], if any.
                let m = (&hi / &grid).floor();
                let cand = &m * &grid;
                if cand > lo && s.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                continue;
            }
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        roots.sort();
        roots
    }
}

impl UnivariatePolynomial {
    /// Isolates every real root in a short interval around a floating
    /// approximation. `None` when the intervals fail to account for all
    /// real roots; the caller then bisects from scratch.
    fn rational_roots_near_approximations(s: &Self, grid: &Rational) -> Option<Vec<Rational>> {
        let g = crate::linalg::to_f64(grid);
        if !(g.is_finite() && g > 0.0) {
            return None;
        }
        let mut approx: Vec<f64> = crate::spectral::approximate_roots(s)
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
            .map(|z| z.re)
            .collect();
        approx.sort_by(f64::total_cmp);
        let total = s.real_root_count().ok()?;
        if approx.len() != total {
            return None;
        }
        let chain = s.sturm_chain();
        let mut out = Vec::new();
        let mut prev_hi: Option<Rational> = None;
        for x0 in approx {
            let w = (0.49 * g).min(1e-6 * (1.0 + x0.abs()));
            let lo = Rational::from_float(x0 - w)?;
            let hi = Rational::from_float(x0 + w)?;
            if prev_hi.as_ref().is_some_and(|p| &lo < p) {
                return None;
            }
            if Self::roots_in(&chain, &lo, &hi) != 1 {
                return None;
            }
            let cand = (&hi / grid).floor() * grid;
            if cand > lo && s.eval(&cand).is_zero() {
                out.push(cand);
            }
            prev_hi = Some(hi);
        }
        Some(out)
    }
}

fn sign(x: &Rational) -> i8 {
    match x.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn sign_variations(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = j == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&mag))?;
            }
            match j {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64(c)
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(p(&[1, 0, 1]).real_root_count().unwrap(), 0);
        assert_eq!(p(&[-1, 0, 1]).real_root_count().unwrap(), 2);
        // (t-1)^2 (t+2) = t^3 - 3t + 2
        assert_eq!(p(&[2, -3, 0, 1]).real_root_count().unwrap(), 2);
        assert!(UnivariatePolynomial::zero().real_root_count().is_err());
    }

    #[test]
    fn squarefree_decomposition_of_known_product() {
        // (t-1)^2 (t+2)^3 t
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1]).pow(3)).mul(&p(&[0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(1, p(&[0, 1])), (2, p(&[-1, 1])), (3, p(&[2, 1]))]);
    }

    #[test]
    fn rational_roots_found_and_irrational_skipped() {
        // (3t - 1)(t + 4)(t^2 - 2)
        let f = p(&[-1, 3]).mul(&p(&[4, 1])).mul(&p(&[-2, 0, 1]));
        assert_eq!(f.rational_roots(), vec![rat(-4), ratio(1, 3)]);
        assert_eq!(p(&[0, 0, 1]).rational_roots(), vec![rat(0)]);
        assert!(p(&[1, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[2, -3, 1]).to_string(), "t^2 - 3t + 2");
        assert_eq!(p(&[0, 0, 1]).to_string(), "t^2");
    }

    proptest! {
        #[test]
        fn div_rem_reconstructs(a in prop::collection::vec(-9i64..9, 1..7), b in prop::collection::vec(-9i64..9, 1..4)) {
            let (a, b) = (p(&a), p(&b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.is_zero() || r.deg() < b.deg());
        }

        #[test]
        fn rational_roots_of_products(roots in prop::collection::vec((-20i64..20, 1i64..5), 1..5)) {
            let f = roots.iter().fold(UnivariatePolynomial::one(), |acc, &(n, d)| acc.mul(&UnivariatePolynomial::linear(&ratio(n, d))));
            let mut expected: Vec<Rational> = roots.iter().map(|&(n, d)| ratio(n, d)).collect();
            expected.sort();
            expected.dedup();
            prop_assert_eq!(f.rational_roots(), expected);
        }
    }
}
