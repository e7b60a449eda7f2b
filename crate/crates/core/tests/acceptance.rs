//! Acceptance criteria at full size, one test and one PASS/FAIL line each.
//!
//! Tolerances: criterion 3 numeric Jordan at 1e-8; criterion 5 float
//! witnesses need residual > 100·1e-9; criterion 6 relative residual 1e-6
//! and ratio band [0.15, 0.45]; criterion 7 exact or 1e-9 relative;
//! criterion 1 under 30 s, quick suite under 300 s.

use std::sync::OnceLock;

use osserman::theorems::{self, CriterionResult, Level, ReciprocityTally};

const SEED: u64 = 0;

fn report(r: &CriterionResult) {
    println!("{r}");
    assert!(r.passed, "criterion {} failed: {}", r.id, r.measured);
}

fn c2() -> &'static (CriterionResult, ReciprocityTally) {
    static CELL: OnceLock<(CriterionResult, ReciprocityTally)> = OnceLock::new();
    CELL.get_or_init(|| theorems::criterion_2(Level::Full, SEED))
}

fn c4() -> &'static (CriterionResult, ReciprocityTally) {
    static CELL: OnceLock<(CriterionResult, ReciprocityTally)> = OnceLock::new();
    CELL.get_or_init(|| theorems::criterion_4(Level::Full, SEED))
}

fn c5() -> &'static (CriterionResult, ReciprocityTally) {
    static CELL: OnceLock<(CriterionResult, ReciprocityTally)> = OnceLock::new();
    CELL.get_or_init(|| theorems::criterion_5(Level::Full, SEED))
}

#[test]
fn criterion_1_symmetry_exactness() {
    report(&theorems::criterion_1(Level::Full, SEED));
}

#[test]
fn criterion_2_space_forms() {
    report(&c2().0);
}

#[test]
fn criterion_3_canonical_form_oracles() {
    report(&theorems::criterion_3(Level::Full, SEED));
}

#[test]
fn criterion_4_jordan_osserman_duality() {
    report(&c4().0);
}

#[test]
fn criterion_5_semisimple_non_osserman_violates_duality() {
    report(&c5().0);
}

#[test]
fn criterion_6_finite_differences() {
    report(&theorems::criterion_6(Level::Full, SEED));
}

#[test]
fn criterion_7_reciprocity() {
    report(&theorems::criterion_7(&[c2().1, c4().1, c5().1]));
}

#[test]
fn criterion_8_nilpotent_branch() {
    report(&theorems::criterion_8(Level::Full, SEED));
}

#[test]
fn criterion_9_determinism_and_runtime() {
    let quick = theorems::quick_suite_time(SEED);
    report(&theorems::criterion_9(SEED, quick));
}
