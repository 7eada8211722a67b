//! Heap-game move descriptions and octal codes, translated into lattice
//! rule sets through the multiplicity encoding: coordinate `i` counts the
//! heaps of size `i + 1`, so consuming one heap of size `c` and producing
//! heaps of sizes `S` is the move `e_c - sum_{s in S} e_s`.
//!
//! Any heap move whose produced sizes stay below the consumed size is
//! squarefree: its positive part is the single basis vector `e_c`.

use crate::axioms::WeightCertificate;
use crate::error::{Error, Result};
use crate::model::{Move, RuleSet};
use num::bigint::BigInt;
use num::rational::BigRational;
use std::collections::BTreeSet;
use std::fmt;

/// One heap move: consume a heap of `consumed_size`, produce the heaps in
/// `produced_sizes` (possibly empty, sizes may repeat).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapMove {
    consumed_size: usize,
    produced_sizes: Vec<usize>,
}

impl HeapMove {
    pub fn new(consumed_size: usize, produced_sizes: Vec<usize>) -> Result<Self> {
        if consumed_size == 0 {
            return Err(Error::HeapSizeOutOfRange {
                size: 0,
                d: usize::MAX,
            });
        }
        if produced_sizes.contains(&0) {
            return Err(Error::HeapSizeOutOfRange {
                size: 0,
                d: usize::MAX,
            });
        }
        // A produced heap of the consumed size would cancel the +1 entry,
        // leaving a nonpositive move the axioms must reject anyway.
        if produced_sizes.contains(&consumed_size) {
            return Err(Error::ProducedEqualsConsumed(consumed_size));
        }
        Ok(HeapMove {
            consumed_size,
            produced_sizes,
        })
    }

    pub fn consumed_size(&self) -> usize {
        self.consumed_size
    }

    pub fn produced_sizes(&self) -> &[usize] {
        &self.produced_sizes
    }

    /// The lattice vector `e_c - sum e_s` on a board of heap sizes `1..=d`.
    pub fn encode(&self, d: usize) -> Result<Move> {
        if self.consumed_size > d {
            return Err(Error::HeapSizeOutOfRange {
                size: self.consumed_size,
                d,
            });
        }
        if let Some(&s) = self.produced_sizes.iter().find(|&&s| s > d) {
            return Err(Error::HeapSizeOutOfRange { size: s, d });
        }
        let mut deltas = vec![0i64; d];
        deltas[self.consumed_size - 1] = 1;
        for &s in &self.produced_sizes {
            deltas[s - 1] -= 1;
        }
        Move::new(deltas)
    }
}

/// Encode a heap move on a board of dimension `d`.
pub fn encode_heap_move(hm: &HeapMove, d: usize) -> Result<Move> {
    hm.encode(d)
}

/// An octal game code `0.d1 d2 ...` truncated at a maximum heap size.
///
/// Digit `k` (1-based) governs removing exactly `k` beans from a heap:
/// bit 1 removes a whole heap of size `k`, bit 2 leaves one nonempty heap,
/// bit 4 splits the remainder into two nonempty heaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctalCode {
    digits: Vec<u8>,
    max_heap_size: usize,
}

impl OctalCode {
    pub fn parse(code: &str, max_heap_size: usize) -> Result<Self> {
        if max_heap_size == 0 {
            return Err(Error::ZeroDimension);
        }
        let malformed = |reason: &str| Error::MalformedOctal {
            code: code.to_string(),
            reason: reason.to_string(),
        };
        let rest = code
            .strip_prefix("0.")
            .ok_or_else(|| malformed("expected a \"0.\" prefix"))?;
        if rest.is_empty() {
            return Err(malformed("no digits after the prefix"));
        }
        let mut digits = Vec::with_capacity(rest.len());
        for ch in rest.chars() {
            match ch.to_digit(8) {
                Some(v) => digits.push(v as u8),
                None => return Err(malformed(&format!("{ch:?} is not an octal digit"))),
            }
        }
        if digits.iter().all(|&v| v == 0) {
            return Err(malformed("at least one digit must be nonzero"));
        }
        Ok(OctalCode {
            digits,
            max_heap_size,
        })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn max_heap_size(&self) -> usize {
        self.max_heap_size
    }

    /// 1-based digit positions beyond the heap-size bound that carry a
    /// nonzero digit; they generate no move and deserve a warning upstream.
    pub fn ignored_digit_positions(&self) -> Vec<usize> {
        self.digits
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i + 1 > self.max_heap_size && v != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for OctalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Expand an octal code into its lattice rule set (duplicates merged).
pub fn rules_from_octal(code: &OctalCode) -> Result<RuleSet> {
    let d = code.max_heap_size;
    let mut seen = BTreeSet::new();
    let mut deltas: Vec<Vec<i64>> = Vec::new();
    let mut push = |hm: HeapMove| -> Result<()> {
        let mv = hm.encode(d)?;
        if seen.insert(mv.deltas().to_vec()) {
            deltas.push(mv.deltas().to_vec());
        }
        Ok(())
    };

    for (pos, &digit) in code.digits.iter().enumerate() {
        let k = pos + 1;
        if k > d {
            continue; // reported by ignored_digit_positions
        }
        if digit & 1 != 0 {
            push(HeapMove::new(k, vec![])?)?;
        }
        if digit & 2 != 0 {
            for i in k + 1..=d {
                push(HeapMove::new(i, vec![i - k])?)?;
            }
        }
        if digit & 4 != 0 {
            for i in k + 2..=d {
                for a in 1..=(i - k) / 2 {
                    push(HeapMove::new(i, vec![a, i - k - a])?)?;
                }
            }
        }
    }
    RuleSet::from_deltas(d, deltas)
}

/// The bean-count certificate `w_i = i` (heap sizes), valid for every rule
/// set whose moves strictly decrease the total number of beans — all octal
/// games and the Nim family in particular.
pub fn bean_count_weights(d: usize) -> WeightCertificate {
    assert!(d >= 1, "bean_count_weights requires d >= 1");
    WeightCertificate::new(
        (1..=d as i64)
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
    .expect("heap sizes are positive")
}

/// The Nim family on heaps of size `1..=d`: remove any heap outright, or
/// shrink a heap to any smaller size.
pub fn nim_rules(d: usize) -> RuleSet {
    assert!(d >= 1, "nim_rules requires d >= 1");
    let mut deltas = Vec::new();
    for i in 0..d {
        let mut v = vec![0i64; d];
        v[i] = 1;
        deltas.push(v);
    }
    for i in 1..d {
        for j in 0..i {
            let mut v = vec![0i64; d];
            v[i] = 1;
            v[j] = -1;
            deltas.push(v);
        }
    }
    RuleSet::from_deltas(d, deltas).expect("nim rule set is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{find_weight, is_pointed, validate, WeightCertificate};
    use crate::classify::is_squarefree;
    use proptest::prelude::*;

    fn mv(v: &[i64]) -> Move {
        Move::new(v.to_vec()).unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            HeapMove::new(3, vec![1]).unwrap().encode(3).unwrap(),
            mv(&[-1, 0, 1])
        );
        assert_eq!(
            HeapMove::new(2, vec![]).unwrap().encode(3).unwrap(),
            mv(&[0, 1, 0])
        );
        assert_eq!(
            HeapMove::new(3, vec![1, 1]).unwrap().encode(3).unwrap(),
            mv(&[-2, 0, 1])
        );
    }

    #[test]
    fn encode_errors() {
        assert_eq!(
            HeapMove::new(4, vec![]).unwrap().encode(3).unwrap_err(),
            Error::HeapSizeOutOfRange { size: 4, d: 3 }
        );
        assert_eq!(
            HeapMove::new(3, vec![5]).unwrap().encode(4).unwrap_err(),
            Error::HeapSizeOutOfRange { size: 5, d: 4 }
        );
        assert_eq!(
            HeapMove::new(3, vec![3]).unwrap_err(),
            Error::ProducedEqualsConsumed(3)
        );
        assert!(HeapMove::new(0, vec![]).is_err());
        assert!(HeapMove::new(2, vec![0]).is_err());
    }

    #[test]
    fn octal_033_on_two_heap_sizes() {
        let code = OctalCode::parse("0.33", 2).unwrap();
        let rs = rules_from_octal(&code).unwrap();
        assert_eq!(
            rs.sorted_moves(),
            RuleSet::from_deltas(2, vec![vec![1, 0], vec![0, 1], vec![-1, 1]])
                .unwrap()
                .sorted_moves()
        );
    }

    #[test]
    fn octal_0333_is_nim3() {
        let code = OctalCode::parse("0.333", 3).unwrap();
        let rs = rules_from_octal(&code).unwrap();
        assert_eq!(rs.sorted_moves(), nim_rules(3).sorted_moves());
    }

    #[test]
    fn octal_03_single_bean() {
        let code = OctalCode::parse("0.3", 1).unwrap();
        let rs = rules_from_octal(&code).unwrap();
        assert_eq!(rs.moves(), &[mv(&[1])]);
    }

    #[test]
    fn octal_splitting_digit() {
        // 0.04: remove 2 beans and split the rest into two heaps.
        let code = OctalCode::parse("0.04", 5).unwrap();
        let rs = rules_from_octal(&code).unwrap();
        // i=4: {1,1}; i=5: {1,2}.
        assert_eq!(
            rs.sorted_moves(),
            RuleSet::from_deltas(
                5,
                vec![vec![-2, 0, 0, 1, 0], vec![-1, -1, 0, 0, 1]]
            )
            .unwrap()
            .sorted_moves()
        );
        // Splitting moves keep the squarefree shape.
        assert!(is_squarefree(&rs));
    }

    #[test]
    fn malformed_codes_rejected() {
        for bad in ["33", "0.", "0.8", "0.x", "0.000", ""] {
            assert!(matches!(
                OctalCode::parse(bad, 3),
                Err(Error::MalformedOctal { .. })
            ));
        }
        assert!(matches!(
            OctalCode::parse("0.3", 0),
            Err(Error::ZeroDimension)
        ));
    }

    #[test]
    fn digits_beyond_bound_are_ignored_but_reported() {
        let long = OctalCode::parse("0.333", 2).unwrap();
        assert_eq!(long.ignored_digit_positions(), vec![3]);
        let short = OctalCode::parse("0.33", 2).unwrap();
        assert!(short.ignored_digit_positions().is_empty());
        assert_eq!(
            rules_from_octal(&long).unwrap().sorted_moves(),
            rules_from_octal(&short).unwrap().sorted_moves()
        );
    }

    #[test]
    fn nim_rules_family() {
        assert_eq!(nim_rules(1).moves(), &[mv(&[1])]);
        assert_eq!(
            nim_rules(2).sorted_moves(),
            RuleSet::from_deltas(2, vec![vec![1, 0], vec![0, 1], vec![-1, 1]])
                .unwrap()
                .sorted_moves()
        );
        let n3 = nim_rules(3);
        assert_eq!(n3.len(), 6);
        assert!(is_squarefree(&n3));
        assert!(validate(&n3).is_valid_game());
    }

    #[test]
    fn bean_count_weights_certify_octal_games() {
        for (code, d) in [("0.33", 2), ("0.333", 3), ("0.77", 4), ("0.3", 5)] {
            let rs = rules_from_octal(&OctalCode::parse(code, d).unwrap()).unwrap();
            let w = WeightCertificate::new(
                (1..=d as i64)
                    .map(|i| num::BigRational::from_integer(i.into()))
                    .collect(),
            )
            .unwrap();
            w.verify(&rs).unwrap();
            assert!(is_pointed(&rs));
        }
    }

    #[test]
    fn whole_heap_removals_decide_orthant_containment() {
        // 0.3 allows removing one bean anywhere: a valid game.
        let ok = rules_from_octal(&OctalCode::parse("0.3", 3).unwrap()).unwrap();
        assert!(validate(&ok).is_valid_game());
        // 0.2 can only shrink heaps, never clear one: e_1 is missing.
        let bad = rules_from_octal(&OctalCode::parse("0.2", 2).unwrap()).unwrap();
        let rep = validate(&bad);
        assert!(rep.pointed);
        assert!(!rep.contains_orthant);
    }

    proptest! {
        #[test]
        fn heap_moves_below_consumed_size_are_squarefree(
            consumed in 1usize..6,
            produced in prop::collection::vec(1usize..6, 0..4)
        ) {
            let produced: Vec<usize> =
                produced.into_iter().filter(|&s| s < consumed).collect();
            let hm = HeapMove::new(consumed, produced).unwrap();
            let mv = hm.encode(6).unwrap();
            prop_assert!(crate::classify::move_is_squarefree(&mv));
            prop_assert_eq!(
                mv.positive_part().coords().iter().sum::<u64>(),
                1
            );
        }

        #[test]
        fn octal_rule_sets_accept_bean_count_weights(digits in "0\\.[0-7]{1,4}") {
            prop_assume!(digits[2..].chars().any(|c| c != '0'));
            let d = 5usize;
            let code = OctalCode::parse(&digits, d).unwrap();
            let rs = rules_from_octal(&code).unwrap();
            let w = WeightCertificate::new(
                (1..=d as i64).map(|i| num::BigRational::from_integer(i.into())).collect()
            ).unwrap();
            prop_assert!(w.verify(&rs).is_ok());
            if !rs.is_empty() {
                prop_assert!(find_weight(&rs).is_some());
            }
        }
    }
}
