//! Positions, moves, rule sets and outcomes for lattice games on `N^d`.
//!
//! A position is a point of `N^d`. In the heap reading, coordinate `i`
//! (0-based) counts the heaps of size `i + 1`; that convention is fixed here
//! and reused by the heap codec. Playing a move `g` at `p` yields `p - g`,
//! legal exactly when the result stays in `N^d`. All types are immutable
//! values; operations return fresh values.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of `N^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Position {
    coords: Vec<u64>,
}

impl Position {
    pub fn new(coords: Vec<u64>) -> Self {
        Position { coords }
    }

    /// The origin of `N^d`.
    pub fn zero(d: usize) -> Self {
        Position { coords: vec![0; d] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The option `p - g`, or `None` when `p - g` leaves `N^d`.
    ///
    /// Illegality is a domain answer, not an error; only a dimension
    /// mismatch is an error.
    pub fn apply(&self, mv: &Move) -> Result<Option<Position>> {
        if mv.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: mv.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.dim());
        for (&c, &d) in self.coords.iter().zip(mv.deltas()) {
            let v = c as i128 - d as i128;
            if v < 0 {
                return Ok(None);
            }
            out.push(v as u64);
        }
        Ok(Some(Position::new(out)))
    }

    /// Reduce every coordinate modulo 2.
    pub fn mod2(&self) -> Position {
        Position::new(self.coords.iter().map(|c| c & 1).collect())
    }

    /// Componentwise sum `p + q`.
    pub fn checked_add(&self, other: &Position) -> Result<Position> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut out = Vec::with_capacity(self.dim());
        for (&a, &b) in self.coords.iter().zip(other.coords.iter()) {
            out.push(a.checked_add(b).ok_or(Error::Overflow("adding positions"))?);
        }
        Ok(Position::new(out))
    }
}

// Lookup tables keyed by `Position` can be queried with a borrowed
// coordinate slice; the derived `Hash`/`Eq` agree with the slice's.
impl std::borrow::Borrow<[u64]> for Position {
    fn borrow(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A move vector of `Z^d \ {0}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Move {
    deltas: Vec<i64>,
}

impl Move {
    pub fn new(deltas: Vec<i64>) -> Result<Self> {
        if deltas.iter().all(|&d| d == 0) {
            return Err(Error::ZeroMove);
        }
        Ok(Move { deltas })
    }

    pub fn dim(&self) -> usize {
        self.deltas.len()
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    /// The positive part `g+`: componentwise max with 0.
    pub fn positive_part(&self) -> Position {
        Position::new(self.deltas.iter().map(|&d| d.max(0) as u64).collect())
    }

    /// Largest entry of the move.
    pub fn max_entry(&self) -> i64 {
        *self.deltas.iter().max().expect("moves are nonempty")
    }

    /// Indices with a strictly positive entry.
    pub fn positive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.deltas
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i)
    }
}

impl TryFrom<Vec<i64>> for Move {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Move::new(v)
    }
}

impl From<Move> for Vec<i64> {
    fn from(m: Move) -> Vec<i64> {
        m.deltas
    }
}

/// A finite set of moves together with the board dimension.
///
/// Construction enforces shape invariants only (nonzero, dimension `d`,
/// pairwise distinct moves); the game axioms are checked separately by
/// [`crate::axioms::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RuleSetRepr", into = "RuleSetRepr")]
pub struct RuleSet {
    d: usize,
    moves: Vec<Move>,
}

/// Canonical JSON shape: `{"d": 3, "moves": [[1,0,0],[0,1,0]]}`.
#[derive(Serialize, Deserialize)]
struct RuleSetRepr {
    d: usize,
    moves: Vec<Vec<i64>>,
}

impl RuleSet {
    pub fn new(d: usize, moves: Vec<Move>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        for mv in &moves {
            if mv.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: mv.dim(),
                });
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for mv in &moves {
            if !seen.insert(mv.deltas().to_vec()) {
                return Err(Error::DuplicateMove(mv.deltas().to_vec()));
            }
        }
        Ok(RuleSet { d, moves })
    }

    /// Convenience constructor from raw delta vectors.
    pub fn from_deltas(d: usize, deltas: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let moves = deltas
            .into_iter()
            .map(Move::new)
            .collect::<Result<Vec<_>>>()?;
        RuleSet::new(d, moves)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves in lexicographic order, for order-insensitive comparisons.
    pub fn sorted_moves(&self) -> Vec<Move> {
        let mut v = self.moves.clone();
        v.sort();
        v
    }
}

impl TryFrom<RuleSetRepr> for RuleSet {
    type Error = Error;
    fn try_from(repr: RuleSetRepr) -> Result<Self> {
        RuleSet::from_deltas(repr.d, repr.moves)
    }
}

impl From<RuleSet> for RuleSetRepr {
    fn from(rs: RuleSet) -> RuleSetRepr {
        RuleSetRepr {
            d: rs.d,
            moves: rs.moves.into_iter().map(Vec::from).collect(),
        }
    }
}

/// Outcome of a position in normal play. `P` means the previous player wins
/// (no winning move exists); `N` means the next player wins. `P` is the
/// truthy value: a position is `P` exactly when the NOR of its options holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    P,
    N,
}

impl Outcome {
    pub fn is_p(self) -> bool {
        self == Outcome::P
    }

    pub fn from_p(is_p: bool) -> Self {
        if is_p {
            Outcome::P
        } else {
            Outcome::N
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::P => write!(f, "P"),
            Outcome::N => write!(f, "N"),
        }
    }
}
