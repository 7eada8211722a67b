//! Squarefree and weakly squarefree classification of rule sets, with
//! explicit violation witnesses.
//!
//! A move is squarefree when it has at most one positive entry and that
//! entry is at most 1 (equivalently: its positive part is a 0-1 vector with
//! at most one 1). A rule set is weakly squarefree when every entry of every
//! move is at most 1; that is strictly weaker, as witnessed by the rule set
//! `{(1,0,0),(0,1,0),(0,0,1),(1,1,0)}` on `N^3`.

use crate::model::{Move, Position, RuleSet};
use serde::{Deserialize, Serialize};

/// How squarefree a rule set is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SquarefreeLevel {
    Squarefree,
    WeaklySquarefreeOnly,
    NotWeaklySquarefree,
}

/// Which construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `p = q = ceil(M/2) * (1,..,1)` for a move with an entry `M >= 2`.
    Doubling,
    /// `p = (g v 0) - e_j`, `q = e_j` for a move with two positive entries.
    TwoPositiveEntries,
    /// Found by exhaustive search over a bounded region.
    RegionSearch,
}

/// A triple `(g, p, q)` with `p + q - g` in `N^d` while neither `p - g` nor
/// `q - g` is: a counterexample to the splitting condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "move")]
    pub mv: Move,
    pub p: Position,
    pub q: Position,
    pub kind: WitnessKind,
}

impl Witness {
    /// Recheck the defining arithmetic exactly.
    pub fn verify(&self) -> bool {
        let d = self.mv.dim();
        if self.p.dim() != d || self.q.dim() != d {
            return false;
        }
        let sum_ok = (0..d).all(|i| {
            self.p.coords()[i] as i128 + self.q.coords()[i] as i128
                >= self.mv.deltas()[i] as i128
        });
        let p_illegal = (0..d).any(|i| (self.p.coords()[i] as i128) < self.mv.deltas()[i] as i128);
        let q_illegal = (0..d).any(|i| (self.q.coords()[i] as i128) < self.mv.deltas()[i] as i128);
        sum_ok && p_illegal && q_illegal
    }
}

/// Classification of a rule set plus one witness per offending move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub level: SquarefreeLevel,
    pub witnesses: Vec<Witness>,
}

/// At most one positive entry, and that entry is at most 1.
pub fn move_is_squarefree(mv: &Move) -> bool {
    let mut positives = 0;
    for &g in mv.deltas() {
        if g > 1 {
            return false;
        }
        if g > 0 {
            positives += 1;
        }
    }
    positives <= 1
}

/// Same predicate through the positive part: a 0-1 vector with at most one 1.
pub fn move_is_squarefree_by_positive_part(mv: &Move) -> bool {
    let pp = mv.positive_part();
    pp.coords().iter().all(|&c| c <= 1) && pp.coords().iter().sum::<u64>() <= 1
}

pub fn is_squarefree(rs: &RuleSet) -> bool {
    rs.moves().iter().all(move_is_squarefree)
}

/// Alternate route used by the equivalence suite.
pub fn is_squarefree_by_positive_part(rs: &RuleSet) -> bool {
    rs.moves().iter().all(move_is_squarefree_by_positive_part)
}

/// Every entry of every move is at most 1.
pub fn is_weakly_squarefree(rs: &RuleSet) -> bool {
    rs.moves()
        .iter()
        .all(|mv| mv.deltas().iter().all(|&g| g <= 1))
}

/// Construct a splitting-condition violation for a non-squarefree move.
///
/// The doubling witness takes priority: for a maximum entry `M >= 2`,
/// `p = q = ceil(M/2) * (1,..,1)` has `2p - g` in `N^d` but `p - g` not.
/// Otherwise the move has two positive entries `i != j`, both 1, and
/// `p = (g v 0) - e_j`, `q = e_j` violate the condition. Squarefree moves
/// yield `None`.
pub fn squarefree_violation_witness(mv: &Move) -> Option<Witness> {
    let d = mv.dim();
    let max = mv.max_entry();
    if max >= 2 {
        let half = (max as u64).div_ceil(2);
        let p = Position::new(vec![half; d]);
        return Some(Witness {
            mv: mv.clone(),
            p: p.clone(),
            q: p,
            kind: WitnessKind::Doubling,
        });
    }
    let positives: Vec<usize> = mv.positive_indices().collect();
    if positives.len() >= 2 {
        let j = positives[1];
        let mut p = mv.positive_part().coords().to_vec();
        p[j] -= 1;
        let mut q = vec![0; d];
        q[j] = 1;
        return Some(Witness {
            mv: mv.clone(),
            p: Position::new(p),
            q: Position::new(q),
            kind: WitnessKind::TwoPositiveEntries,
        });
    }
    None
}

/// Decide the level and collect one witness per non-squarefree move, in
/// rule-set order.
pub fn classify(rs: &RuleSet) -> Classification {
    let level = if is_squarefree(rs) {
        SquarefreeLevel::Squarefree
    } else if is_weakly_squarefree(rs) {
        SquarefreeLevel::WeaklySquarefreeOnly
    } else {
        SquarefreeLevel::NotWeaklySquarefree
    };
    let witnesses = rs
        .moves()
        .iter()
        .filter(|mv| !move_is_squarefree(mv))
        .map(|mv| squarefree_violation_witness(mv).expect("non-squarefree move has a witness"))
        .collect();
    Classification { level, witnesses }
}

/// Exhaustively test the splitting condition over all `p, q` with
/// coordinates at most `bound`, for every move; returns every violating
/// triple, sorted lexicographically by `(p, q)` (move order breaks ties).
///
/// For a validated rule set this is empty exactly when the rule set is
/// squarefree, provided `bound` exceeds the largest move entry.
pub fn check_splitting_condition_on_region(rs: &RuleSet, bound: u64) -> Vec<Witness> {
    let d = rs.d();
    let box_size = (bound + 1).checked_pow(d as u32).unwrap_or(u64::MAX);
    assert!(
        box_size <= 100_000_000,
        "condition-1 box of {box_size} positions is too large"
    );

    let mut boxed: Vec<Vec<u64>> = Vec::with_capacity(box_size as usize);
    let mut cur = vec![0u64; d];
    'outer: loop {
        boxed.push(cur.clone());
        // odometer in lex order: bump the last coordinate, carrying leftward
        let mut i = d;
        while i > 0 {
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                continue 'outer;
            }
        }
        break;
    }
    collect_splitting_violations(rs, &boxed)
}

fn collect_splitting_violations(rs: &RuleSet, boxed: &[Vec<u64>]) -> Vec<Witness> {
    let d = rs.d();
    let mut found: Vec<Witness> = Vec::new();
    for mv in rs.moves() {
        let deltas = mv.deltas();
        // Only positions whose own option leaves N^d can participate.
        let candidates: Vec<&Vec<u64>> = boxed
            .iter()
            .filter(|p| (0..d).any(|i| (p[i] as i128) < deltas[i] as i128))
            .collect();
        for p in &candidates {
            for q in &candidates {
                let sum_ok =
                    (0..d).all(|i| p[i] as i128 + q[i] as i128 >= deltas[i] as i128);
                if sum_ok {
                    found.push(Witness {
                        mv: mv.clone(),
                        p: Position::new((*p).clone()),
                        q: Position::new((*q).clone()),
                        kind: WitnessKind::RegionSearch,
                    });
                }
            }
        }
    }
    found.sort_by(|a, b| (&a.p, &a.q).cmp(&(&b.p, &b.q)));
    found
}
