//! Exact retrograde analysis on the finite region `{p in N^d : w . p <= W}`,
//! for any validated rule set, squarefree or not. No mod-2 shortcut is taken:
//! this is the independent ground truth the box solver is checked against.
//!
//! The region is a weight simplex rather than a box because boxes are not
//! closed under moves with negative entries; the simplex is downward closed
//! for free, since every legal option strictly lowers `w . p`.
//!
//! The property checkers test monoid closure of P-positions, mod-2
//! periodicity of outcomes, and translation-invariance against a fixed
//! position, each reporting every violation found in the region.

use crate::axioms::{validate, WeightCertificate};
use crate::error::{Error, Result};
use crate::model::{Outcome, Position, RuleSet};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Default cap on the number of region positions.
pub const DEFAULT_REGION_CAP: usize = 10_000_000;

/// A fully tabulated region.
#[derive(Debug, Clone)]
pub struct SolvedRegion {
    rs: RuleSet,
    certificate: WeightCertificate,
    budget: BigRational,
    positions: Vec<Position>, // lexicographic order
    levels: Vec<u128>,        // scaled integer weight per position
    outcomes: Vec<Outcome>,
    index: HashMap<Position, usize>,
    level_order: Vec<u32>, // indices sorted by (level, lex)
    scaled_budget: u128,
}

impl SolvedRegion {
    pub fn rule_set(&self) -> &RuleSet {
        &self.rs
    }

    pub fn certificate(&self) -> &WeightCertificate {
        &self.certificate
    }

    pub fn budget(&self) -> &BigRational {
        &self.budget
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, p: &Position) -> bool {
        self.index.contains_key(p)
    }

    /// Outcome of a region member.
    pub fn outcome(&self, p: &Position) -> Result<Outcome> {
        self.index
            .get(p)
            .map(|&i| self.outcomes[i])
            .ok_or_else(|| Error::NotInRegion(p.coords().to_vec()))
    }

    /// All `(position, outcome)` pairs in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&Position, Outcome)> {
        self.positions.iter().zip(self.outcomes.iter().copied())
    }

    /// The P-positions of the region, in lexicographic order.
    pub fn p_positions(&self) -> Vec<Position> {
        self.entries()
            .filter(|(_, o)| o.is_p())
            .map(|(p, _)| p.clone())
            .collect()
    }
}

/// Which property a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Mod2Periodicity,
    MonoidClosure,
    IndistinguishableFromZero,
}

/// A single counterexample found by a property checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `p` and `q` break monoid closure: `(P,P)` must sum to `P`, and
    /// `(P,N)` must sum to `N`.
    Monoid {
        p: Position,
        q: Position,
        sum: Position,
        outcome_p: Outcome,
        outcome_q: Outcome,
        outcome_sum: Outcome,
    },
    /// A position whose outcome differs from its mod-2 reduction's.
    Mod2 {
        p: Position,
        reduced: Position,
        outcome_p: Outcome,
        outcome_reduced: Outcome,
    },
    /// Translating `q` by the base position changed its outcome.
    Translation {
        base: Position,
        q: Position,
        translated: Position,
        outcome_q: Outcome,
        outcome_translated: Outcome,
    },
}

/// Outcome of running one property checker over a region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub checked_pairs: u64,
    pub violations: Vec<Violation>,
}

impl PropertyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tabulate the region `{p : w . p <= budget}` under the default cap.
pub fn solve_region(rs: &RuleSet, w: &WeightCertificate, budget: &BigRational) -> Result<SolvedRegion> {
    solve_region_capped(rs, w, budget, DEFAULT_REGION_CAP)
}

/// Tabulate the region with an explicit position cap.
pub fn solve_region_capped(
    rs: &RuleSet,
    w: &WeightCertificate,
    budget: &BigRational,
    cap: usize,
) -> Result<SolvedRegion> {
    w.verify(rs)?;
    if budget.is_negative() {
        return Err(Error::NegativeBudget);
    }

    // Clear denominators once so levels are exact machine integers.
    let mut lcm = budget.denom().clone();
    for e in w.entries() {
        lcm = lcm.lcm(e.denom());
    }
    let lcm_q = BigRational::from_integer(lcm);
    let scaled_w: Vec<u128> = w
        .entries()
        .iter()
        .map(|e| {
            u128::try_from(&(e * &lcm_q).to_integer())
                .map_err(|_| Error::Overflow("scaling certificate weights"))
        })
        .collect::<Result<_>>()?;
    let scaled_budget = u128::try_from(&(budget * &lcm_q).to_integer())
        .map_err(|_| Error::Overflow("scaling the region budget"))?;

    let d = rs.d();
    let mut positions = Vec::new();
    let mut levels = Vec::new();
    let mut coords = vec![0u64; d];
    enumerate(
        0,
        0,
        &mut coords,
        &scaled_w,
        scaled_budget,
        cap,
        &mut positions,
        &mut levels,
    )?;

    let mut index = HashMap::with_capacity(positions.len());
    for (i, p) in positions.iter().enumerate() {
        index.insert(p.clone(), i);
    }

    let mut level_order: Vec<u32> = (0..positions.len() as u32).collect();
    level_order.sort_by_key(|&i| levels[i as usize]); // stable: lex within a level

    // Retrograde pass: all options of a position live in strictly lower
    // levels, so they are already decided when we reach it.
    let move_deltas: Vec<&[i64]> = rs.moves().iter().map(|m| m.deltas()).collect();
    let mut outcomes = vec![Outcome::N; positions.len()];
    let mut opt_buf = vec![0u64; d];
    for &pi in &level_order {
        let pos = positions[pi as usize].coords();
        let mut is_p = true;
        'moves: for deltas in &move_deltas {
            for i in 0..d {
                let v = pos[i] as i128 - deltas[i] as i128;
                if v < 0 {
                    continue 'moves;
                }
                opt_buf[i] = v as u64;
            }
            let oi = *index
                .get(opt_buf.as_slice())
                .expect("region is downward closed under legal moves");
            if outcomes[oi].is_p() {
                is_p = false;
                break;
            }
        }
        outcomes[pi as usize] = Outcome::from_p(is_p);
    }

    Ok(SolvedRegion {
        rs: rs.clone(),
        certificate: w.clone(),
        budget: budget.clone(),
        positions,
        levels,
        outcomes,
        index,
        level_order,
        scaled_budget,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    i: usize,
    level: u128,
    coords: &mut Vec<u64>,
    w: &[u128],
    budget: u128,
    cap: usize,
    positions: &mut Vec<Position>,
    levels: &mut Vec<u128>,
) -> Result<()> {
    if i == coords.len() {
        if positions.len() >= cap {
            return Err(Error::RegionTooLarge { cap });
        }
        positions.push(Position::new(coords.clone()));
        levels.push(level);
        return Ok(());
    }
    let mut v = 0u64;
    let mut lvl = level;
    while lvl <= budget {
        coords[i] = v;
        enumerate(i + 1, lvl, coords, w, budget, cap, positions, levels)?;
        v += 1;
        match lvl.checked_add(w[i]) {
            Some(next) => lvl = next,
            None => break,
        }
    }
    coords[i] = 0;
    Ok(())
}

/// Compare every region member against its mod-2 reduction.
pub fn check_mod2_periodicity(sr: &SolvedRegion) -> PropertyReport {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for (p, out) in sr.entries() {
        let reduced = p.mod2();
        let out_reduced = sr
            .outcome(&reduced)
            .expect("mod-2 reduction stays in a weight-bounded region");
        checked += 1;
        if out != out_reduced {
            violations.push(Violation::Mod2 {
                p: p.clone(),
                reduced,
                outcome_p: out,
                outcome_reduced: out_reduced,
            });
        }
    }
    PropertyReport {
        property: PropertyKind::Mod2Periodicity,
        checked_pairs: checked,
        violations,
    }
}

/// Check monoid closure over every unordered pair whose sum stays in the
/// region: `(P,P)` sums must be `P`, `(P,N)` sums must be `N`.
///
/// Violations are recorded with the lexicographically larger member first
/// and sorted by `(p, q)`, so "first violation" is reproducible.
pub fn check_monoid_closure(sr: &SolvedRegion) -> PropertyReport {
    let n = sr.positions.len();
    let mut violations = Vec::new();
    let mut checked = 0u64;

    // Iterate the level-sorted order inside the budget prefix; the index
    // comparison restricts to unordered pairs since positions are stored in
    // lexicographic order.
    let levels_sorted: Vec<u128> = sr
        .level_order
        .iter()
        .map(|&i| sr.levels[i as usize])
        .collect();

    let d = sr.rs.d();
    let mut sum_buf = vec![0u64; d];
    for pi in 0..n {
        let p_level = sr.levels[pi];
        let rem = sr.scaled_budget - p_level;
        let p_coords = sr.positions[pi].coords();
        let out_p = sr.outcomes[pi];
        for (k, &qi) in sr.level_order.iter().enumerate() {
            if levels_sorted[k] > rem {
                break;
            }
            let qi = qi as usize;
            if qi > pi {
                continue;
            }
            checked += 1;
            let out_q = sr.outcomes[qi];
            if !out_p.is_p() && !out_q.is_p() {
                continue;
            }
            let q_coords = sr.positions[qi].coords();
            for i in 0..d {
                sum_buf[i] = p_coords[i]
                    .checked_add(q_coords[i])
                    .expect("region sums fit in u64");
            }
            let si = *sr
                .index
                .get(sum_buf.as_slice())
                .expect("sum within budget lies in the region");
            let out_sum = sr.outcomes[si];
            let expected = if out_p.is_p() && out_q.is_p() {
                Outcome::P
            } else {
                Outcome::N
            };
            if out_sum != expected {
                violations.push(Violation::Monoid {
                    p: sr.positions[pi].clone(),
                    q: sr.positions[qi].clone(),
                    sum: sr.positions[si].clone(),
                    outcome_p: out_p,
                    outcome_q: out_q,
                    outcome_sum: out_sum,
                });
            }
        }
    }

    violations.sort_by(|a, b| monoid_key(a).cmp(&monoid_key(b)));
    PropertyReport {
        property: PropertyKind::MonoidClosure,
        checked_pairs: checked,
        violations,
    }
}

fn monoid_key(v: &Violation) -> (&Position, &Position) {
    match v {
        Violation::Monoid { p, q, .. } => (p, q),
        _ => unreachable!("monoid report holds monoid violations"),
    }
}

/// Check whether translating by `base` preserves outcomes: violations are
/// all `q` with `w . (base + q) <= W` and `outcome(base + q) != outcome(q)`.
///
/// A clean report is bounded evidence for `base` being indistinguishable
/// from zero, not a proof; the real statement quantifies over all of `N^d`.
pub fn check_indistinguishability_from_zero(
    sr: &SolvedRegion,
    base: &Position,
) -> Result<PropertyReport> {
    let bi = *sr
        .index
        .get(base)
        .ok_or_else(|| Error::NotInRegion(base.coords().to_vec()))?;
    let rem = sr.scaled_budget - sr.levels[bi];

    let d = sr.rs.d();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut sum_buf = vec![0u64; d];
    for (qi, q) in sr.positions.iter().enumerate() {
        if sr.levels[qi] > rem {
            continue;
        }
        checked += 1;
        for (i, slot) in sum_buf.iter_mut().enumerate().take(d) {
            *slot = base.coords()[i]
                .checked_add(q.coords()[i])
                .expect("region sums fit in u64");
        }
        let ti = *sr
            .index
            .get(sum_buf.as_slice())
            .expect("translate within budget lies in the region");
        let out_t = sr.outcomes[ti];
        let out_q = sr.outcomes[qi];
        if out_t != out_q {
            violations.push(Violation::Translation {
                base: base.clone(),
                q: q.clone(),
                translated: sr.positions[ti].clone(),
                outcome_q: out_q,
                outcome_translated: out_t,
            });
        }
    }
    Ok(PropertyReport {
        property: PropertyKind::IndistinguishableFromZero,
        checked_pairs: checked,
        violations,
    })
}

/// Solve the region for a validated rule set and return the first monoid
/// violation, or `None` when closure holds throughout.
///
/// The certificate comes from [`validate`]; use
/// [`find_monoid_counterexample_with`] to fix the weights and cap explicitly.
pub fn find_monoid_counterexample(rs: &RuleSet, budget: &BigRational) -> Result<Option<Violation>> {
    let report = validate(rs);
    if !report.is_valid_game() {
        return Err(Error::InvalidGame {
            pointed: report.pointed,
            missing_axes: report.missing_axes.into_iter().collect(),
        });
    }
    let w = report
        .certificate
        .expect("valid games always have a certificate");
    find_monoid_counterexample_with(rs, &w, budget, DEFAULT_REGION_CAP)
}

/// As [`find_monoid_counterexample`], with explicit weights and region cap.
pub fn find_monoid_counterexample_with(
    rs: &RuleSet,
    w: &WeightCertificate,
    budget: &BigRational,
    cap: usize,
) -> Result<Option<Violation>> {
    let sr = solve_region_capped(rs, w, budget, cap)?;
    Ok(check_monoid_closure(&sr).violations.into_iter().next())
}

/// The largest box weight `max(w . p over {0,1}^d)`, i.e. the sum of all
/// weights; `2 *` this is the budget that covers every box sum.
pub fn box_weight(w: &WeightCertificate) -> BigRational {
    let mut total = BigRational::from_integer(BigInt::from(0));
    for e in w.entries() {
        total += e;
    }
    total
}
