//! Exact computations on nilpotent Lie algebras over the rationals: Lie
//! cohomology, negative gradings, and the search for gradings whose induced
//! grading on `H^1` and `H^2` satisfies the weight and parity conditions.

pub mod algebra;
pub mod catalog;
pub mod cochain;
pub mod error;
pub mod grading;
pub mod linalg;
pub mod search;
pub mod table;

pub use algebra::{AlgebraDocument, BracketEntry, LieAlgebra, SeriesReport, Subspace, ValidationReport};
pub use cochain::{betti, betti_numbers, ce_differential, k_form_basis, KForm};
pub use error::{Error, Result};
pub use grading::{
    check_conditions, double_weights, graded_betti, is_homogeneous, structural_lemma_checks, ConditionChecker,
    ConditionReport, GradedBettiProfile, Mode, WeightAssignment,
};
pub use linalg::{RationalMatrix, Scalar};
pub use search::{
    constraint_system, enumerate_gradings, find_grading, search, theorem_guard, GuardAlarm, SearchOutcome,
    WeightConstraintSystem,
};
pub use catalog::{CatalogEntry, FamilySpec, Verdict};
pub use table::{reproduce_table, TableReport, TableRow};
