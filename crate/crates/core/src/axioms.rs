//! Game-axiom validation: the real cone spanned by the moves must be pointed
//! and contain the nonnegative orthant. Both checks, and the weight
//! certificate that witnesses them, are decided by exact rational linear
//! feasibility — floating point would make the certificates unsound.

use crate::error::{Error, Result};
use crate::model::{Move, Position, RuleSet};
use crate::rational::{format_rational, parse_rational};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;

mod lp;
use lp::{minimize, Lp};

/// A strictly positive rational vector `w` with `w . g >= 1` for every move
/// of the owning rule set.
///
/// Existence of such a vector is the constructive content of the cone being
/// pointed and containing the orthant. It bounds every play from `p` by
/// `w . p` moves and orders the dynamic programs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCertificate {
    entries: Vec<BigRational>,
}

impl WeightCertificate {
    /// Build a certificate from strictly positive entries.
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidCertificate("empty weight vector".into()));
        }
        if let Some(i) = entries.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidCertificate(format!(
                "entry {} is not strictly positive",
                i
            )));
        }
        Ok(WeightCertificate { entries })
    }

    /// Convenience constructor from integer weights.
    pub fn from_integers(weights: &[i64]) -> Result<Self> {
        WeightCertificate::new(
            weights
                .iter()
                .map(|&w| BigRational::from_integer(BigInt::from(w)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Recheck both invariants against `rs` in exact arithmetic.
    pub fn verify(&self, rs: &RuleSet) -> Result<()> {
        if self.dim() != rs.d() {
            return Err(Error::DimensionMismatch {
                expected: rs.d(),
                found: self.dim(),
            });
        }
        for mv in rs.moves() {
            let dot = self.dot_move(mv);
            if dot < BigRational::one() {
                return Err(Error::InvalidCertificate(format!(
                    "w . {:?} = {} < 1",
                    mv.deltas(),
                    format_rational(&dot)
                )));
            }
        }
        Ok(())
    }

    pub fn dot_move(&self, mv: &Move) -> BigRational {
        self.entries
            .iter()
            .zip(mv.deltas())
            .map(|(w, &g)| w * BigRational::from_integer(BigInt::from(g)))
            .sum()
    }

    /// The weight `w . p` of a position.
    pub fn weight_of(&self, p: &Position) -> BigRational {
        self.entries
            .iter()
            .zip(p.coords())
            .map(|(w, &c)| w * BigRational::from_integer(BigInt::from(c)))
            .sum()
    }

    /// Scale to integer entries with gcd 1; safe for both invariants since
    /// integer weights with common factor `g` give move weights in `g Z`.
    fn normalized(entries: Vec<BigRational>) -> Vec<BigRational> {
        let mut lcm = BigInt::one();
        for e in &entries {
            lcm = lcm.lcm(e.denom());
        }
        let ints: Vec<BigInt> = entries
            .iter()
            .map(|e| (e * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        ints.into_iter()
            .map(|v| BigRational::from_integer(v / &gcd))
            .collect()
    }

    /// Integer entries, when the certificate is in normalized form.
    pub fn integer_entries(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect()
    }
}

impl Serialize for WeightCertificate {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.entries.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for WeightCertificate {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        let entries = raw
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        WeightCertificate::new(entries).map_err(D::Error::custom)
    }
}

/// Result of running both axiom checks on a rule set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pointed: bool,
    pub contains_orthant: bool,
    pub certificate: Option<WeightCertificate>,
    pub missing_axes: BTreeSet<usize>,
}

impl ValidationReport {
    /// True iff the rule set is a legal lattice game.
    pub fn is_valid_game(&self) -> bool {
        self.pointed && self.contains_orthant
    }
}

/// Find a strictly positive weight vector with `w . g >= 1` for all moves,
/// or `None` when no such vector exists.
///
/// Solved as the exact feasibility problem `{w >= 1, Gamma w >= 1}` (any
/// strictly positive solution scales into that form) while minimizing the
/// total weight, so the returned certificate is as small as the constraints
/// allow and is normalized to integer entries with gcd 1.
pub fn find_weight(rs: &RuleSet) -> Option<WeightCertificate> {
    let d = rs.d();
    let k = rs.len();
    if k == 0 {
        let ones = vec![BigRational::one(); d];
        return Some(WeightCertificate { entries: ones });
    }

    // Substitute w = 1 + x with x >= 0: for each move g,
    //   g . x - s_g = 1 - sum(g),  s_g >= 0.
    let n = d + k;
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for (r, mv) in rs.moves().iter().enumerate() {
        let mut row = vec![BigRational::zero(); n];
        let mut sum = BigRational::zero();
        for (i, &g) in mv.deltas().iter().enumerate() {
            let gq = BigRational::from_integer(BigInt::from(g));
            sum += &gq;
            row[i] = gq;
        }
        row[d + r] = -BigRational::one();
        a.push(row);
        b.push(BigRational::one() - sum);
    }
    let mut c = vec![BigRational::zero(); n];
    for ci in c.iter_mut().take(d) {
        *ci = BigRational::one();
    }

    match minimize(&a, &b, &c) {
        Lp::Infeasible => None,
        Lp::Optimal(x) => {
            let w: Vec<BigRational> = x
                .into_iter()
                .take(d)
                .map(|xi| xi + BigRational::one())
                .collect();
            let cert = WeightCertificate {
                entries: WeightCertificate::normalized(w),
            };
            debug_assert!(cert.verify(rs).is_ok());
            Some(cert)
        }
    }
}

/// Pointedness of the real cone spanned by the moves, decided through the
/// alternative: the cone is pointed iff some (not necessarily positive) `w`
/// has `w . g >= 1` for every move.
pub fn is_pointed(rs: &RuleSet) -> bool {
    let d = rs.d();
    let k = rs.len();
    if k == 0 {
        return true;
    }
    // w = u - v with u, v >= 0; slack per move.
    let n = 2 * d + k;
    let mut a = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for (r, mv) in rs.moves().iter().enumerate() {
        let mut row = vec![BigRational::zero(); n];
        for (i, &g) in mv.deltas().iter().enumerate() {
            let gq = BigRational::from_integer(BigInt::from(g));
            row[i] = gq.clone();
            row[d + i] = -gq;
        }
        row[2 * d + r] = -BigRational::one();
        a.push(row);
        b.push(BigRational::one());
    }
    let c = vec![BigRational::zero(); n];
    matches!(minimize(&a, &b, &c), Lp::Optimal(_))
}

/// Indices of axes whose basis vector is *not* a nonnegative rational
/// combination of the moves.
pub fn check_orthant_containment(rs: &RuleSet) -> BTreeSet<usize> {
    let d = rs.d();
    let k = rs.len();
    let mut missing = BTreeSet::new();
    for axis in 0..d {
        // lambda >= 0 with sum_g lambda_g * g = e_axis.
        let mut a = vec![vec![BigRational::zero(); k]; d];
        for (g, mv) in rs.moves().iter().enumerate() {
            for (i, &delta) in mv.deltas().iter().enumerate() {
                a[i][g] = BigRational::from_integer(BigInt::from(delta));
            }
        }
        let mut b = vec![BigRational::zero(); d];
        b[axis] = BigRational::one();
        let c = vec![BigRational::zero(); k];
        if matches!(minimize(&a, &b, &c), Lp::Infeasible) {
            missing.insert(axis);
        }
    }
    missing
}

/// Run both axiom checks and collect the certificate.
pub fn validate(rs: &RuleSet) -> ValidationReport {
    let missing_axes = check_orthant_containment(rs);
    let pointed = is_pointed(rs);
    let certificate = find_weight(rs);
    ValidationReport {
        pointed,
        contains_orthant: missing_axes.is_empty(),
        certificate,
        missing_axes,
    }
}
