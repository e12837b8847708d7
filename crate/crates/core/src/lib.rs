//! Exact computations for symplectic and contact Lie algebras: Chevalley-Eilenberg
//! cohomology, hard Lefschetz checks in both settings, contactization, and
//! lattice certificates for almost nilpotent solvable groups.
//!
//! Everything runs over exact fields (Q, Q(√d), Q(t₁,…,t_r)); there are no tolerances.

pub mod catalog;
pub mod cohomology;
pub mod exterior;
pub mod field;
pub mod lattice;
pub mod lefschetz;
pub mod liealg;
pub mod linalg;
pub mod symcon;

pub use cohomology::{betti, betti_table, cohomology, CohomologyDescriptor};
pub use exterior::KForm;
pub use field::{FieldSpec, Scalar};
pub use lefschetz::{contact_lefschetz, symplectic_lefschetz, theorem_main_check, LefschetzReport};
pub use liealg::LieAlgebra;
pub use linalg::{Matrix, Subspace, Vector};
pub use symcon::{contactize, decontactize, verify_contact, verify_symplectic, ContactStructure, SymplecticStructure};
