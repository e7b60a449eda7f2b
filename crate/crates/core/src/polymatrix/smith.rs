//! Smith normal form of the characteristic matrix `tI − A` over `ℚ[t]`.
//!
//! Elimination is Euclidean (minimal-degree pivoting) with every touched row
//! or column rescaled to primitive integer content after each step, which is
//! a unimodular operation over `ℚ[t]` and keeps coefficient growth in check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::UnivariatePolynomial as Poly;
use crate::linalg::{Matrix, Rational};

struct PolyMatrix {
    n: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    fn characteristic(a: &Matrix) -> Self {
        let n = a.rows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = -a[(i, j)].clone();
                data.push(if i == j { Poly::new(vec![c, Rational::one()]) } else { Poly::constant(c) });
            }
        }
        Self { n, data }
    }

    fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.n + j] = p;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }

    /// row_dst -= q · row_src, from column `from` on.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &Poly, from: usize) {
        for c in from..self.n {
            let v = self.at(dst, c).sub(&q.mul(self.at(src, c)));
            self.set(dst, c, v);
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &Poly, from: usize) {
        for r in from..self.n {
            let v = self.at(r, dst).sub(&q.mul(self.at(r, src)));
            self.set(r, dst, v);
        }
    }

    fn normalize_row(&mut self, r: usize, from: usize) {
        let idx: Vec<usize> = (from..self.n).map(|c| r * self.n + c).collect();
        self.normalize(&idx);
    }

    fn normalize_col(&mut self, c: usize, from: usize) {
        let idx: Vec<usize> = (from..self.n).map(|r| r * self.n + c).collect();
        self.normalize(&idx);
    }

    /// Divides the given entries by their common rational content.
    fn normalize(&mut self, idx: &[usize]) {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for &i in idx {
            for c in self.data[i].coeffs() {
                den = den.lcm(c.denom());
                num = num.gcd(c.numer());
            }
        }
        if num.is_zero() {
            return;
        }
        // content = num / den
        let factor = Rational::new(den, num);
        if factor.is_one() {
            return;
        }
        for &i in idx {
            self.data[i] = self.data[i].scale(&factor);
        }
    }
}

/// Diagonal of the Smith form of `tI − A`: the monic invariant factors in
/// increasing divisibility order.
pub fn smith_diagonal(a: &Matrix) -> Vec<Poly> {
    let n = a.rows();
    let mut m = PolyMatrix::characteristic(a);
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            // Pivot: nonzero entry of least degree in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let e = m.at(i, j);
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                // det(tI - A) != 0, so the trailing block never vanishes.
                unreachable!("characteristic matrix is nonsingular");
            };
            m.swap_rows(k, pi);
            m.swap_cols(k, pj);
            let pivot = m.at(k, k).clone();
            let mut clean = true;
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = m.at(i, k).div_rem(&pivot);
                m.row_axpy(i, k, &q, k);
                m.normalize_row(i, k);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                if m.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = m.at(k, j).div_rem(&pivot);
                m.col_axpy(j, k, &q, k);
                m.normalize_col(j, k);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot.divides(m.at(i, j))));
            match offender {
                Some(i) => {
                    let one = Poly::constant(-Rational::one());
                    m.row_axpy(k, i, &one, k);
                }
                None => break,
            }
        }
        diag.push(m.at(k, k).monic());
    }
    diag
}
