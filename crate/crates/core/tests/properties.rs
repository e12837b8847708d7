mod common;

use common::*;
use lefschetz_core::lefschetz::{contact_lefschetz, symplectic_lefschetz};
use lefschetz_core::*;
use proptest::prelude::*;
use std::sync::OnceLock;

fn algebras() -> &'static Vec<(String, LieAlgebra)> {
    static CELL: OnceLock<Vec<(String, LieAlgebra)>> = OnceLock::new();
    CELL.get_or_init(catalog_algebras)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn d_squared_vanishes_on_catalog(i in 0usize..64, k in 0usize..10, coeffs in prop::collection::vec(-3i64..=3, 1..40)) {
        let (_, g) = &algebras()[i % algebras().len()];
        dd_zero(g, k, &coeffs)?;
    }

    #[test]
    fn d_squared_vanishes_on_random(s in sp_strategy(), k in 0usize..8, coeffs in prop::collection::vec(-3i64..=3, 1..40)) {
        dd_zero(&s.algebra, k, &coeffs)?;
        dd_zero(&contactize(&s).algebra, k, &coeffs)?;
    }

    #[test]
    fn poincare_duality(s in sp_strategy()) {
        poincare(&s.algebra)?;
        poincare(&contactize(&s).algebra)?;
    }

    #[test]
    fn contactization_betti_relations(s in sp_strategy()) {
        contact_pair(&s)?;
    }

    #[test]
    fn b2_drops_by_one_when_one_lefschetz(s in sp_strategy()) {
        if symplectic_lefschetz(&s, 1).unwrap().verdict() {
            b2_drops_by_one(&s)?;
        }
    }

    #[test]
    fn xi_lies_in_commutator(s in sp_strategy()) {
        xi_in_commutator(&s)?;
    }

    #[test]
    fn alpha_power_traces_are_integers(k in 3i64..=10, l in -12i64..=12) {
        alpha_trace(k, l)?;
    }

    #[test]
    fn decontactize_inverts_contactize(s in sp_strategy()) {
        round_trip(&s)?;
    }

    #[test]
    fn contact_degree_one_is_covered_and_well_defined(s in sp_strategy()) {
        let r = contact_lefschetz(&contactize(&s), 1).unwrap();
        prop_assert_eq!(r.degree(1).domain_covered, Some(true));
        prop_assert_eq!(r.degree(1).well_defined, Some(true));
    }

    #[test]
    fn main_theorem_on_random(s in sp_strategy()) {
        let m = theorem_main_check(&s).unwrap();
        prop_assert!(m.agree);
        let h = symplectic_lefschetz(&s, 0).unwrap().verdict();
        prop_assert!(h);
    }
}

#[test]
fn poincare_on_unimodular_fixtures() {
    for s in unimodular_symplectic_fixtures() {
        poincare(&s.algebra).unwrap();
        poincare(&contactize(&s).algebra).unwrap();
        contact_pair(&s).unwrap();
        xi_in_commutator(&s).unwrap();
        round_trip(&s).unwrap();
    }
}

#[test]
fn b2_relation_needs_injective_l_on_h1() {
    let s = lefschetz_core::catalog::h3_plus_r();
    assert_eq!(l_kernel_on_h1(&s), 1);
    assert!(b2_drops_by_one(&s).is_err());
}
