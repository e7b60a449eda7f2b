use osserman::catalog;
use osserman::checks::{self, CheckParams, Verdict};
use osserman::curvature::SquareOperator;
use osserman::linalg::{rat, ratio, Matrix};
use osserman::polymatrix::{invariant_factors, jordan_structure_exact, structure_signature};
use osserman::space::{PseudoEuclideanSpace, Vector};
use osserman::spectral::{char_poly, exact_spectrum, jordan_structure_numeric, minimal_polynomial};
use proptest::prelude::*;

fn int_matrix(n: usize, xs: &[i64]) -> Matrix {
    Matrix::from_fn(n, n, |i, j| rat(xs[i * n + j]))
}

fn unimodular(n: usize, xs: &[i64]) -> Matrix {
    let l = Matrix::from_fn(n, n, |i, j| if i == j { rat(1) } else if i > j { rat(xs[i * n + j]) } else { rat(0) });
    let u = Matrix::from_fn(n, n, |i, j| if i == j { rat(1) } else if i < j { rat(xs[i * n + j]) } else { rat(0) });
    l.mul(&u).unwrap()
}

fn signature_strategy() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(2usize, 0usize), (3, 0), (1, 1), (2, 1), (1, 2), (2, 2)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn char_poly_is_homogeneous(sig in signature_strategy(), seed in any::<u64>(), xs in prop::collection::vec(-5i64..=5, 4), c in -4i64..=4) {
        let s = PseudoEuclideanSpace::new(sig.0, sig.1).unwrap();
        let n = s.dim();
        let t = catalog::random_act(&s, seed, 2, 4).unwrap();
        let x = Vector::from_i64(&xs[..n]);
        let cx = x.scale(&rat(c));
        let p = char_poly(&t.jacobi_operator(&x).unwrap());
        let q = char_poly(&t.jacobi_operator(&cx).unwrap());
        for j in 0..=n {
            prop_assert_eq!(q.f(j).clone(), p.f(j) * num_traits::pow(rat(c), 2 * (n - j)));
        }
    }

    #[test]
    fn smith_factors_multiply_to_char_poly(n in 1usize..=6, xs in prop::collection::vec(-4i64..=4, 36)) {
        let a = int_matrix(n, &xs);
        let op = SquareOperator::plain(a.clone());
        let inv = invariant_factors(&op);
        prop_assert_eq!(inv.product(), char_poly(&op).to_polynomial());
        let m = minimal_polynomial(&op).unwrap();
        prop_assert_eq!(inv.factors().last().unwrap().clone(), m.clone());
        prop_assert!(m.divides(&char_poly(&op).to_polynomial()));
        prop_assert!(m.eval_matrix(&a).unwrap().is_zero());
    }

    #[test]
    fn jordan_blocks_sum_to_dimension(n in 1usize..=5, xs in prop::collection::vec(-3i64..=3, 25)) {
        let a = int_matrix(n, &xs);
        let exact = jordan_structure_exact(&SquareOperator::plain(a.clone()));
        prop_assert_eq!(exact.total_size(), n);
        let numeric = jordan_structure_numeric(&a.to_f64(), 1e-8).unwrap();
        if !numeric.unreliable {
            prop_assert_eq!(numeric.total_size(), n);
        }
    }

    #[test]
    fn signature_is_similarity_invariant(n in 2usize..=5, xs in prop::collection::vec(-3i64..=3, 25), us in prop::collection::vec(-1i64..=1, 25)) {
        let a = int_matrix(n, &xs);
        let p = unimodular(n, &us);
        let b = p.inverse().unwrap().mul(&a).unwrap().mul(&p).unwrap();
        let ka = structure_signature(&jordan_structure_exact(&SquareOperator::plain(a)));
        let kb = structure_signature(&jordan_structure_exact(&SquareOperator::plain(b)));
        prop_assert_eq!(ka, kb);
    }

    #[test]
    fn random_act_is_reproducible_and_valid(sig in signature_strategy(), seed in any::<u64>()) {
        let s = PseudoEuclideanSpace::new(sig.0, sig.1).unwrap();
        let a = catalog::random_act(&s, seed, 3, 5).unwrap();
        let b = catalog::random_act(&s, seed, 3, 5).unwrap();
        prop_assert!(a.validate_symmetries().passes());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn clifford_tensors_are_osserman(l0 in -5i64..=5, l1 in -5i64..=5, d in 1i64..=4, seed in any::<u64>()) {
        let s = PseudoEuclideanSpace::new(4, 0).unwrap();
        let cs = catalog::complex_structure(&s).unwrap();
        let t = catalog::clifford_tensor(&s, &cs, &ratio(l0, d), &[ratio(l1, d)]).unwrap();
        prop_assert!(t.validate_symmetries().passes());
        prop_assert_eq!(checks::is_osserman(&t, 8, seed).unwrap().verdict, Verdict::HoldsOnSamples);
    }

    #[test]
    fn osserman_eigenvalues_scale_with_norm(k in -5i64..=5, xs in prop::collection::vec(-4i64..=4, 4), c in 1i64..=4) {
        // λ(cX)·‖X‖² = λ(X)·‖cX‖² for the eigenvalue k‖X‖² of a space form.
        let s = PseudoEuclideanSpace::new(2, 2).unwrap();
        let t = catalog::constant_curvature(&s, &rat(k));
        let x = Vector::from_i64(&xs);
        let nx = osserman::space::norm_sq(&s, &x).unwrap();
        prop_assume!(nx != rat(0));
        let cx = x.scale(&rat(c));
        let ncx = osserman::space::norm_sq(&s, &cx).unwrap();
        let spec = |v: &Vector| -> Vec<osserman::linalg::Rational> {
            let mut e: Vec<_> = exact_spectrum(&t.jacobi_operator(v).unwrap()).eigenspaces.into_iter().map(|(l, _)| l).collect();
            e.sort();
            e
        };
        let lx = spec(&x);
        let lcx = spec(&cx);
        prop_assert_eq!(lx.len(), lcx.len());
        for (a, b) in lx.iter().zip(&lcx) {
            prop_assert_eq!(b * &nx, a * &ncx);
        }
    }

    #[test]
    fn reports_never_contradict_theorems(sig in prop::sample::select(vec![(2usize, 1usize), (3, 0), (2, 2)]), seed in any::<u64>()) {
        let s = PseudoEuclideanSpace::new(sig.0, sig.1).unwrap();
        let t = catalog::random_act(&s, seed, 3, 4).unwrap();
        let params = CheckParams { samples: 4, seed, derivative_samples: 1, ..CheckParams::default() };
        let report = checks::full_report(&t, &params).unwrap();
        prop_assert!(report.is_consistent(), "{:?}", report.inconsistencies);
    }
}

#[test]
fn unimodular_conjugates_keep_known_structure() {
    // [3,1] at 2 and [1] at -1.
    let j = Matrix::from_i64_rows(&[&[2, 1, 0, 0, 0], &[0, 2, 1, 0, 0], &[0, 0, 2, 0, 0], &[0, 0, 0, 2, 0], &[0, 0, 0, 0, -1]]);
    let p = unimodular(5, &[0, 1, -1, 0, 1, 1, 0, 1, -1, 0, 0, -1, 0, 1, 1, 1, 0, 0, 0, -1, 0, 1, 1, 0, 0]);
    let a = p.mul(&j).unwrap().mul(&p.inverse().unwrap()).unwrap();
    let js = jordan_structure_exact(&SquareOperator::plain(a.clone()));
    assert_eq!(js.blocks_at_rational(&rat(2)), Some(vec![3, 1]));
    assert_eq!(js.blocks_at_rational(&rat(-1)), Some(vec![1]));
    let numeric = jordan_structure_numeric(&a.to_f64(), 1e-8).unwrap();
    assert!(numeric.agrees_with(&js, 1e-3, 1.0), "{numeric} vs {js}");
}
