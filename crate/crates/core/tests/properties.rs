mod common;

use proptest::prelude::*;

use common::*;
use dext_core::exactla::Field;
use dext_core::ncalg::{Alphabet, ReductionSystem};

#[test]
fn both_routes_agree_on_the_catalog() {
    for d in catalog() {
        assert!(routes_agree(&d).unwrap());
    }
    let broken = example("B4", Field::Rational, &[("a", 1)]);
    assert!(!routes_agree(&broken).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn random_mutations_are_detected_by_both_routes(m in mutation()) {
        mutation_agrees(&m)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_compatible_with_concatenation(
        u in word(4, 4), v in word(4, 4), a in word(4, 4), b in word(4, 4),
    ) {
        order_compatible(&u, &v, &a, &b)?;
    }

    #[test]
    fn normal_forms_are_idempotent_and_multiplicative(
        which in 0usize..MUTABLE,
        p in terms(4),
        q in terms(4),
    ) {
        normal_form_laws(which, p, q)?;
    }

    #[test]
    fn sigma_hat_is_multiplicative_on_words(which in 0usize..MUTABLE, (u, v) in word_pair()) {
        sigma_hat_multiplicative(which, &u, &v)?;
    }

    #[test]
    fn rank_nullity_and_solving(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-4i64..=4, 16),
        x in prop::collection::vec(-4i64..=4, 4),
        prime in prop_oneof![Just(0u32), Just(7u32)],
    ) {
        linear_algebra_laws(rows, cols, &entries, &x, prime)?;
    }
}

#[test]
fn mutations_that_break_compatibility_occur() {
    // A fixed perturbation of σ11(x1) in B(h) must be caught.
    let m = Mutation {
        example: 0,
        generator: 0,
        target: Target::Sigma { i: 0, j: 0 },
        coeff: 1,
        pick: 0,
    };
    assert!(!mutation_agrees(&m).unwrap());
}

#[test]
fn free_system_has_every_word() {
    let ab = Alphabet::uniform(&["a", "b"]);
    let sys = ReductionSystem::free(Field::Rational, ab);
    assert_eq!(sys.hilbert_function(4), vec![1, 2, 4, 8, 16]);
}
