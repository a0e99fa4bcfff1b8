//! Hodge pairs of the conjectural motives attached to cuspidal parameters,
//! their tensor products, and the invariant `p`: the smallest Hodge index
//! strictly above the middle.
//!
//! For parameters with gap vector `(a_1, ..., a_{n-1})` and motivic weight
//! `w`, the pairs are `(w - s, s)` for the partial sums
//! `s = 0, a_1, a_1 + a_2, ...`. Tensor products can make partial sums
//! collide, so multiplicities are tracked as a genuine multiset even though
//! the single-factor lists are multiplicity-free.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weights::CuspidalParams;

/// A multiset of Hodge pairs `(p, q)` with `p + q` equal to a common
/// weight. Keyed by `p` internally, which bakes in the constant-sum
/// invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeSet {
    weight: i64,
    mult_by_p: BTreeMap<i64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HodgeError {
    #[error("middle Hodge number is {0}, not zero")]
    MiddleNonzero(u64),
    #[error("no Hodge pair strictly above the middle")]
    NoPairAboveMiddle,
    #[error("invalid Hodge pair (p = {p}) for weight {weight}")]
    InvalidPair { p: i64, weight: i64 },
}

impl HodgeSet {
    /// Builds a set from explicit `(p, multiplicity)` data; every `p` must
    /// satisfy `0 <= p <= weight` and multiplicities must be positive.
    pub fn from_pairs(
        weight: i64,
        pairs: impl IntoIterator<Item = (i64, u64)>,
    ) -> Result<HodgeSet, HodgeError> {
        let mut mult_by_p = BTreeMap::new();
        for (p, mult) in pairs {
            if p < 0 || p > weight || mult == 0 {
                return Err(HodgeError::InvalidPair { p, weight });
            }
            *mult_by_p.entry(p).or_insert(0) += mult;
        }
        if mult_by_p.is_empty() {
            return Err(HodgeError::InvalidPair { p: 0, weight });
        }
        Ok(HodgeSet { weight, mult_by_p })
    }

    /// The Hodge set of the motive attached to validated cuspidal
    /// parameters: pairs `(w - s, s)` over the partial sums `s` of the gap
    /// vector, each with multiplicity one (regularity keeps the sums
    /// strictly increasing, so no collisions occur here).
    pub fn from_params(params: &CuspidalParams) -> HodgeSet {
        let w = params.motivic_weight();
        let mut mult_by_p = BTreeMap::new();
        let mut partial = 0i64;
        for s in 0..params.rank() {
            if s > 0 {
                partial += params.a()[s - 1];
            }
            *mult_by_p.entry(w - partial).or_insert(0) += 1;
        }
        debug_assert_eq!(mult_by_p.len(), params.rank());
        HodgeSet {
            weight: w,
            mult_by_p,
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Pairs `(p, q, multiplicity)` in ascending `p` order.
    pub fn pairs(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.mult_by_p
            .iter()
            .map(|(&p, &m)| (p, self.weight - p, m))
    }

    pub fn multiplicity(&self, p: i64) -> u64 {
        self.mult_by_p.get(&p).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.mult_by_p.values().sum()
    }

    /// Invariant under `(p, q) -> (q, p)`; holds for every set built from
    /// essentially self-dual parameters and is preserved by tensoring.
    pub fn is_symmetric(&self) -> bool {
        self.mult_by_p
            .iter()
            .all(|(&p, &m)| self.multiplicity(self.weight - p) == m)
    }

    /// Tensor product: all sums `(p + p', q + q')` with multiplicities
    /// multiplied and collected.
    pub fn tensor(&self, other: &HodgeSet) -> HodgeSet {
        let weight = self.weight + other.weight;
        let mut mult_by_p = BTreeMap::new();
        for (&p, &m) in &self.mult_by_p {
            for (&p2, &m2) in &other.mult_by_p {
                *mult_by_p.entry(p + p2).or_insert(0) += m * m2;
            }
        }
        HodgeSet { weight, mult_by_p }
    }

    /// Multiplicity of the middle pair `(weight/2, weight/2)`; zero when
    /// the weight is odd and the middle pair cannot exist.
    pub fn middle_multiplicity(&self) -> u64 {
        if self.weight % 2 != 0 {
            return 0;
        }
        self.multiplicity(self.weight / 2)
    }

    /// The invariant `p`: the smallest index with `weight >= p > weight/2`
    /// carrying a nonzero Hodge number. Requires the middle Hodge number to
    /// vanish.
    pub fn min_p_above_middle(&self) -> Result<i64, HodgeError> {
        let mid = self.middle_multiplicity();
        if mid != 0 {
            return Err(HodgeError::MiddleNonzero(mid));
        }
        self.mult_by_p
            .keys()
            .copied()
            .find(|&p| 2 * p > self.weight)
            .ok_or(HodgeError::NoPairAboveMiddle)
    }
}

impl fmt::Display for HodgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, q, m)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "({p},{q})")?;
            } else {
                write!(f, "({p},{q})x{m}")?;
            }
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct PairRecord {
    p: i64,
    q: i64,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct HodgeSetRecord {
    weight: i64,
    pairs: Vec<PairRecord>,
}

impl Serialize for HodgeSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let record = HodgeSetRecord {
            weight: self.weight,
            pairs: self
                .pairs()
                .map(|(p, q, mult)| PairRecord { p, q, mult })
                .collect(),
        };
        record.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HodgeSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = HodgeSetRecord::deserialize(deserializer)?;
        HodgeSet::from_pairs(
            record.weight,
            record.pairs.into_iter().map(|r| (r.p, r.mult)),
        )
        .map_err(serde::de::Error::custom)
    }
}
