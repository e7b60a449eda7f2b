//! Slow, independent reference computations used to cross-check the fast
//! paths: Faddeev–LeVerrier characteristic polynomials and invariant
//! factors from gcds of all minors of `tI − A`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rational};
use crate::polymatrix::UnivariatePolynomial as Poly;

/// Characteristic polynomial by the Faddeev–LeVerrier recursion,
/// coefficients low to high.
pub fn faddeev_leverrier(a: &Matrix) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::Input("matrix is not square".into()));
    }
    let n = a.rows();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = rat(1);
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m)?.add(&Matrix::identity(n).scale(&c[n - k + 1]))?;
        c[n - k] = -a.mul(&m)?.trace() / rat(k as i64);
    }
    Ok(Poly::new(c))
}

fn characteristic_entries(a: &Matrix) -> Vec<Vec<Poly>> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -a[(i, j)].clone();
                    if i == j {
                        Poly::new(vec![c, rat(1)])
                    } else {
                        Poly::constant(c)
                    }
                })
                .collect()
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
fn laplace(m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for c in 0..k {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = m[0][c].mul(&laplace(&minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinantal divisors `D_1..D_n`: monic gcd of all `k×k` minors.
pub fn determinantal_divisors_naive(a: &Matrix) -> Result<Vec<Poly>> {
    if !a.is_square() {
        return Err(Error::Input("matrix is not square".into()));
    }
    let n = a.rows();
    if n > 6 {
        return Err(Error::Precondition("naive minor expansion is limited to n <= 6".into()));
    }
    let m = characteristic_entries(a);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let sets = subsets(n, k);
        let mut g = Poly::zero();
        for rows in &sets {
            for cols in &sets {
                let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&laplace(&sub));
                if g.is_one() {
                    break;
                }
            }
            if g.is_one() {
                break;
            }
        }
        out.push(g.monic());
    }
    Ok(out)
}

/// Invariant factors `I_k = D_k / D_{k−1}`.
pub fn invariant_factors_naive(a: &Matrix) -> Result<Vec<Poly>> {
    let d = determinantal_divisors_naive(a)?;
    let mut prev = Poly::one();
    let mut out = Vec::with_capacity(d.len());
    for dk in d {
        out.push(dk.div_exact(&prev)?);
        prev = dk;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faddeev_small() {
        let a = Matrix::from_i64_rows(&[&[2, 1], &[0, 3]]);
        assert_eq!(faddeev_leverrier(&a).unwrap(), Poly::from_i64(&[6, -5, 1]));
    }

    #[test]
    fn naive_factors_of_jordan_block() {
        let a = Matrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let f = invariant_factors_naive(&a).unwrap();
        assert_eq!(f, vec![Poly::one(), Poly::from_i64(&[-1, 1]), Poly::from_i64(&[1, -2, 1])]);
    }

    #[test]
    fn naive_factors_of_scalar() {
        let a = Matrix::identity(3).scale(&rat(2));
        let f = invariant_factors_naive(&a).unwrap();
        assert!(f.iter().all(|p| *p == Poly::from_i64(&[-2, 1])));
    }
}
