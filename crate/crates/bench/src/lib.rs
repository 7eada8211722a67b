//! Benchmark fixtures shared by the criterion targets in `benches/`.

use lattice_games::{bean_count_weights, nim_rules, RuleSet, WeightCertificate};

/// The Nim family with its bean-count certificate, the standard scaling case.
pub fn nim_case(d: usize) -> (RuleSet, WeightCertificate) {
    (nim_rules(d), bean_count_weights(d))
}
