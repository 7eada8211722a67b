//! Dynamic program for squarefree games over the unit box `{0,1}^d`.
//!
//! For a squarefree game the outcome of any position equals the outcome of
//! its coordinatewise mod-2 reduction, so it suffices to tabulate
//! `P0 = P  {0,1}^d`. The outcome of a position is the logical NOR of its
//! legal options; options leaving the box are reduced mod 2 before lookup.
//! Positions are filled bottom-up in increasing certificate weight, which is
//! a topological order because every reduced option strictly lowers `w . p`.
//! The table stores one bit per position: `O(2^d |Gamma|)` time, `O(2^d)`
//! space.

use crate::axioms::WeightCertificate;
use crate::classify::move_is_squarefree;
use crate::error::{Error, Result};
use crate::model::{Outcome, Position, RuleSet};
use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{Integer, One};
use serde::{Deserialize, Serialize};

/// Largest dimension accepted by [`solve_p0`]; beyond this the bit table
/// no longer fits desk memory. Use [`solve_p0_capped`] to override.
pub const DEFAULT_DIM_CAP: usize = 28;

/// Counters observed while solving one box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Exactly `2^d`: each position is computed once.
    pub positions_computed: u64,
    /// Option lookups performed; at most `2^d * |Gamma|`.
    pub option_evaluations: u64,
    /// Entries held by the outcome table, i.e. `2^d`.
    pub peak_table_entries: u64,
}

/// The solved unit box of a squarefree game.
#[derive(Debug, Clone)]
pub struct SolvedBox {
    rs: RuleSet,
    certificate: WeightCertificate,
    d: usize,
    bits: Vec<u64>,
    stats: SolveStats,
}

impl SolvedBox {
    pub fn rule_set(&self) -> &RuleSet {
        &self.rs
    }

    pub fn certificate(&self) -> &WeightCertificate {
        &self.certificate
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    fn bit(&self, idx: usize) -> bool {
        self.bits[idx >> 6] >> (idx & 63) & 1 == 1
    }

    /// Outcome of the box position encoded by `idx` (bit `i` = coordinate `i`).
    pub fn outcome_of_index(&self, idx: usize) -> Outcome {
        debug_assert!(idx < 1 << self.d);
        Outcome::from_p(self.bit(idx))
    }

    /// Outcome of an arbitrary position of `N^d`, via mod-2 reduction.
    pub fn outcome(&self, p: &Position) -> Result<Outcome> {
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: p.dim(),
            });
        }
        let mut idx = 0usize;
        for (i, &c) in p.coords().iter().enumerate() {
            idx |= ((c & 1) as usize) << i;
        }
        Ok(self.outcome_of_index(idx))
    }

    /// The P-positions of the box, in lexicographic order.
    pub fn p0_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        for idx in 0..1usize << self.d {
            if self.bit(idx) {
                out.push(index_to_position(idx, self.d));
            }
        }
        out.sort();
        out
    }
}

/// Decode a box index into its position (bit `i` = coordinate `i`).
pub fn index_to_position(idx: usize, d: usize) -> Position {
    Position::new((0..d).map(|i| (idx >> i) as u64 & 1).collect())
}

/// Solve `P0` for a validated squarefree rule set under the default cap.
pub fn solve_p0(rs: &RuleSet, w: &WeightCertificate) -> Result<SolvedBox> {
    solve_p0_capped(rs, w, DEFAULT_DIM_CAP)
}

/// Solve `P0` with an explicit dimension cap.
pub fn solve_p0_capped(rs: &RuleSet, w: &WeightCertificate, cap: usize) -> Result<SolvedBox> {
    let d = rs.d();
    if d > cap {
        return Err(Error::DimensionCapExceeded { d, cap });
    }
    if let Some(mv) = rs.moves().iter().find(|m| !move_is_squarefree(m)) {
        return Err(Error::NotSquarefree(mv.deltas().to_vec()));
    }
    w.verify(rs)?;

    // A squarefree move with a valid certificate has exactly one positive
    // entry, equal to 1. Inside the box, legality is a single bit test and
    // the reduced option is an XOR with the move's odd coordinates.
    let masks: Vec<(u32, u32)> = rs
        .moves()
        .iter()
        .map(|mv| {
            let pos = mv
                .deltas()
                .iter()
                .position(|&g| g > 0)
                .expect("certificate rules out nonpositive moves");
            let mut xor = 0u32;
            for (i, &g) in mv.deltas().iter().enumerate() {
                if g.rem_euclid(2) == 1 {
                    xor |= 1 << i;
                }
            }
            debug_assert!(xor & (1 << pos) != 0);
            (1 << pos, xor)
        })
        .collect();

    let order = box_order(w, d);

    let n = 1usize << d;
    let mut bits = vec![0u64; n.div_ceil(64)];
    let mut positions_computed = 0u64;
    let mut option_evaluations = 0u64;
    for &idx in &order {
        let idx = idx as usize;
        let mut is_p = true;
        for &(pos_bit, xor_mask) in &masks {
            if idx as u32 & pos_bit != 0 {
                option_evaluations += 1;
                let opt = idx ^ xor_mask as usize;
                if bits[opt >> 6] >> (opt & 63) & 1 == 1 {
                    is_p = false;
                    break;
                }
            }
        }
        if is_p {
            bits[idx >> 6] |= 1 << (idx & 63);
        }
        positions_computed += 1;
    }

    assert_eq!(positions_computed, n as u64, "each position computed exactly once");
    assert!(option_evaluations <= n as u64 * rs.len() as u64);

    Ok(SolvedBox {
        rs: rs.clone(),
        certificate: w.clone(),
        d,
        bits,
        stats: SolveStats {
            positions_computed,
            option_evaluations,
            peak_table_entries: n as u64,
        },
    })
}

/// Box indices sorted by increasing `w . p`, ties broken lexicographically
/// on coordinates.
fn box_order(w: &WeightCertificate, d: usize) -> Vec<u32> {
    let mut lcm = BigInt::one();
    for e in w.entries() {
        lcm = lcm.lcm(e.denom());
    }
    let scaled: Vec<BigUint> = w
        .entries()
        .iter()
        .map(|e| {
            (e * BigRational::from_integer(lcm.clone()))
                .to_integer()
                .to_biguint()
                .expect("certificate entries are positive")
        })
        .collect();

    let small: Option<Vec<u128>> = scaled.iter().map(|v| u128::try_from(v).ok()).collect();
    if let Some(small) = small {
        if small
            .iter()
            .try_fold(0u128, |acc, &x| acc.checked_add(x))
            .is_some()
        {
            return sorted_indices(&small, d);
        }
    }
    sorted_indices(&scaled, d)
}

fn sorted_indices<K>(weights: &[K], d: usize) -> Vec<u32>
where
    K: Clone + Ord + Default + for<'a> std::ops::Add<&'a K, Output = K>,
{
    let n = 1usize << d;
    let mut keys: Vec<K> = Vec::with_capacity(n);
    keys.push(K::default());
    for idx in 1..n {
        let low = idx.trailing_zeros() as usize;
        let rest = idx & (idx - 1);
        let key = keys[rest].clone() + &weights[low];
        keys.push(key);
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        keys[a as usize]
            .cmp(&keys[b as usize])
            .then_with(|| rev_bits(a, d).cmp(&rev_bits(b, d)))
    });
    order
}

/// Reverse the low `d` bits, mapping index order to lexicographic order.
fn rev_bits(x: u32, d: usize) -> u32 {
    x.reverse_bits() >> (32 - d)
}
