use osserman::catalog;
use osserman::io::TensorFile;
use osserman::linalg::ratio;
use osserman::space::PseudoEuclideanSpace;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn components_survive_serialisation(sig in prop::sample::select(vec![(2usize, 0usize), (1, 1), (2, 1), (2, 2), (3, 1)]), seed in any::<u64>()) {
        let s = PseudoEuclideanSpace::new(sig.0, sig.1).unwrap();
        let t = catalog::random_act(&s, seed, 2, 5).unwrap().scale(&ratio(1, 7));
        let text = TensorFile::from_tensor(&t).to_json();
        let back = TensorFile::from_json(&text).unwrap().tensor().unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(TensorFile::from_tensor(&back).to_json(), text);
    }
}

#[test]
fn constructor_and_components_agree() {
    let s = PseudoEuclideanSpace::new(2, 2).unwrap();
    let f = TensorFile::with_constructor(&s, "nilpotent", Default::default());
    let t = f.tensor().unwrap();
    let g = TensorFile::from_json(&TensorFile::from_tensor(&t).to_json()).unwrap();
    assert_eq!(g.tensor().unwrap(), t);
}
