//! Lattice games on `N^d` in normal play: exact solving, classification and
//! verification.
//!
//! A lattice game is an impartial game whose positions are points of `N^d`
//! and whose moves subtract fixed vectors from a finite rule set, legal when
//! the result stays in `N^d`. A legal rule set spans a pointed real cone
//! containing the nonnegative orthant, which yields a strictly positive
//! weight certificate bounding play length.
//!
//! The crate provides:
//!
//! - [`model`]: positions, moves, rule sets and outcomes, plus the canonical
//!   JSON interchange format;
//! - [`axioms`]: exact rational validation of the game axioms and weight
//!   certificates;
//! - [`classify`]: squarefree / weakly squarefree classification with
//!   violation witnesses;
//! - [`box_solver`]: the `O(2^d |Gamma|)` dynamic program computing
//!   `P0 = P  {0,1}^d` for squarefree games, which determines every
//!   outcome by mod-2 reduction;
//! - [`oracle`]: brute-force retrograde analysis over weight-bounded regions
//!   for any validated rule set, with property checkers for monoid closure,
//!   mod-2 periodicity and translation invariance;
//! - [`heap`]: heap-move and octal-code translation into rule sets;
//! - [`random`]: seeded generators for the verification suites.

pub mod axioms;
pub mod box_solver;
pub mod classify;
pub mod error;
pub mod heap;
pub mod model;
pub mod oracle;
pub mod random;
pub mod rational;

pub use axioms::{
    check_orthant_containment, find_weight, is_pointed, validate, ValidationReport,
    WeightCertificate,
};
pub use box_solver::{solve_p0, solve_p0_capped, SolveStats, SolvedBox, DEFAULT_DIM_CAP};
pub use classify::{
    check_splitting_condition_on_region, classify, is_squarefree, is_weakly_squarefree,
    squarefree_violation_witness, Classification, SquarefreeLevel, Witness, WitnessKind,
};
pub use error::{Error, Result};
pub use heap::{bean_count_weights, encode_heap_move, nim_rules, rules_from_octal, HeapMove, OctalCode};
pub use model::{Move, Outcome, Position, RuleSet};
pub use oracle::{
    box_weight, check_indistinguishability_from_zero, check_mod2_periodicity,
    check_monoid_closure, find_monoid_counterexample, find_monoid_counterexample_with,
    solve_region, solve_region_capped, PropertyKind, PropertyReport, SolvedRegion, Violation,
    DEFAULT_REGION_CAP,
};
