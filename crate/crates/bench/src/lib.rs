//! Fixtures shared by the criterion benches.

use lefschetz_core::catalog::{example_41, example_bg, heisenberg, BgParams, Relation};
use lefschetz_core::{ContactStructure, SymplecticStructure};

pub fn bg() -> (SymplecticStructure, ContactStructure) {
    let ex = example_bg(&BgParams::unit()).expect("bg fixture");
    (ex.symplectic, ex.contact)
}

pub fn heisenberg_contact(n: usize) -> ContactStructure {
    heisenberg(n).expect("heisenberg fixture")
}

pub fn diagonal(k_list: &[i64]) -> (SymplecticStructure, ContactStructure) {
    let ex = example_41(k_list, Relation::Independent).expect("diagonal fixture");
    (ex.symplectic, ex.contact)
}
