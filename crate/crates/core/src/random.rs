//! Seeded rule-set generators for the property suites and benchmarks.
//!
//! The squarefree generator is heap-like by construction: every basis move
//! is present and extra moves only push beans toward smaller heap sizes, so
//! the sets are always valid games. Certificates are resampled above a total
//! weight cap to keep oracle regions at a size the suites can afford.

use crate::axioms::{find_weight, validate, WeightCertificate};
use crate::heap::HeapMove;
use crate::model::RuleSet;
use num::bigint::BigInt;
use rand::Rng;
use std::collections::BTreeSet;

/// Total certificate weight above which squarefree samples are redrawn;
/// keeps the oracle regions the suites walk at an affordable size.
const WEIGHT_CAP: i64 = 32;

/// An arbitrary rule set: no validity guarantee, entries in `[-max_abs, max_abs]`.
pub fn random_rule_set<R: Rng>(rng: &mut R, max_d: usize, max_abs: i64) -> RuleSet {
    let d = rng.random_range(1..=max_d);
    let mut seen = BTreeSet::new();
    let mut deltas: Vec<Vec<i64>> = Vec::new();

    for i in 0..d {
        if rng.random_bool(0.7) {
            let mut v = vec![0i64; d];
            v[i] = 1;
            if seen.insert(v.clone()) {
                deltas.push(v);
            }
        }
    }
    let extra = rng.random_range(1..=2 * d + 1);
    for _ in 0..extra {
        let v: Vec<i64> = (0..d).map(|_| rng.random_range(-max_abs..=max_abs)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if seen.insert(v.clone()) {
            deltas.push(v);
        }
    }
    if deltas.is_empty() {
        let mut v = vec![0i64; d];
        v[0] = 1;
        deltas.push(v);
    }
    RuleSet::from_deltas(d, deltas).expect("generator emits distinct nonzero moves")
}

/// Rejection-sample until a rule set passes both game axioms.
pub fn random_validated_rule_set<R: Rng>(
    rng: &mut R,
    max_d: usize,
    max_abs: i64,
) -> (RuleSet, WeightCertificate) {
    loop {
        let rs = random_rule_set(rng, max_d, max_abs);
        let report = validate(&rs);
        if report.is_valid_game() {
            let w = report.certificate.expect("valid games carry a certificate");
            return (rs, w);
        }
    }
}

/// A squarefree rule set of exactly dimension `d` with `extra` non-basis
/// moves (each shrinking one heap and producing at most two beans of
/// strictly smaller sizes). Always a valid game.
pub fn random_squarefree_moves<R: Rng>(rng: &mut R, d: usize, extra: usize) -> RuleSet {
    let mut seen = BTreeSet::new();
    let mut deltas: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut v = vec![0i64; d];
        v[i] = 1;
        seen.insert(v.clone());
        deltas.push(v);
    }
    for _ in 0..extra {
        let i = rng.random_range(0..d);
        if i == 0 {
            continue; // nothing below heap size 1; would duplicate a basis move
        }
        let mut v = vec![0i64; d];
        v[i] = 1;
        let beans = rng.random_range(0..=2);
        for _ in 0..beans {
            let j = rng.random_range(0..i);
            v[j] -= 1;
        }
        if seen.insert(v.clone()) {
            deltas.push(v);
        }
    }
    RuleSet::from_deltas(d, deltas).expect("generator emits distinct nonzero moves")
}

/// A bean-decreasing heap rule set: whole-heap removals for every size plus
/// `extra` random heap moves that conserve or shed beans. Always a valid
/// squarefree game certified by [`crate::heap::bean_count_weights`].
pub fn random_heap_rule_set<R: Rng>(rng: &mut R, d: usize, extra: usize) -> RuleSet {
    let mut seen = BTreeSet::new();
    let mut deltas: Vec<Vec<i64>> = Vec::new();
    let mut push = |mv: Vec<i64>, deltas: &mut Vec<Vec<i64>>| {
        if seen.insert(mv.clone()) {
            deltas.push(mv);
        }
    };
    for size in 1..=d {
        let hm = HeapMove::new(size, vec![]).expect("whole-heap removal");
        push(hm.encode(d).unwrap().deltas().to_vec(), &mut deltas);
    }
    for _ in 0..extra {
        let consumed = rng.random_range(1..=d);
        let removed = rng.random_range(1..=consumed);
        let left = consumed - removed;
        let produced = match rng.random_range(0..3u8) {
            0 => vec![],
            1 if left >= 1 => vec![rng.random_range(1..=left)],
            _ if left >= 2 => {
                let a = rng.random_range(1..=left - 1);
                vec![a, left - a]
            }
            _ => vec![],
        };
        let hm = HeapMove::new(consumed, produced).expect("produced sizes stay below consumed");
        push(hm.encode(d).unwrap().deltas().to_vec(), &mut deltas);
    }
    RuleSet::from_deltas(d, deltas).expect("generator emits distinct nonzero moves")
}

/// A validated squarefree rule set with `d <= max_d` and a certificate of
/// bounded total weight.
pub fn random_squarefree_rule_set<R: Rng>(
    rng: &mut R,
    max_d: usize,
) -> (RuleSet, WeightCertificate) {
    loop {
        let d = rng.random_range(1..=max_d);
        let extra = rng.random_range(1..=2 * d);
        let rs = random_squarefree_moves(rng, d, extra);
        let w = find_weight(&rs).expect("heap-like squarefree sets are valid games");
        let total: BigInt = w
            .entries()
            .iter()
            .map(|e| e.to_integer())
            .sum();
        if total <= BigInt::from(WEIGHT_CAP) {
            return (rs, w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_squarefree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn squarefree_generator_emits_valid_games() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let (rs, w) = random_squarefree_rule_set(&mut rng, 5);
            assert!(is_squarefree(&rs));
            w.verify(&rs).unwrap();
            assert!(validate(&rs).is_valid_game());
        }
    }

    #[test]
    fn validated_generator_is_deterministic_per_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(11);
        let mut b = ChaCha8Rng::seed_from_u64(11);
        let (ra, wa) = random_validated_rule_set(&mut a, 4, 3);
        let (rb, wb) = random_validated_rule_set(&mut b, 4, 3);
        assert_eq!(ra, rb);
        assert_eq!(wa, wb);
    }

    #[test]
    fn raw_generator_respects_entry_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let rs = random_rule_set(&mut rng, 4, 3);
            assert!(rs.d() >= 1 && rs.d() <= 4);
            for mv in rs.moves() {
                assert!(mv.deltas().iter().all(|&x| x.abs() <= 3));
            }
        }
    }
}
