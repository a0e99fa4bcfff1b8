//! Highest weights of `GL(n)` in character-lattice coordinates, and the
//! cuspidal parameters `(a_1, ..., a_{n-1}; d)` carried by a dominant,
//! regular, essentially self-dual weight.
//!
//! A weight is an integer vector `(l_1, ..., l_n)` on the diagonal torus.
//! Writing `lambda + rho = a_1 g_1 + ... + a_{n-1} g_{n-1} + d det` against
//! the fundamental weights gives `a_i = l_i - l_{i+1} + 1` and `d = mean(l)`;
//! the motivic weight is `w = sum a_i`. The admission gate for everything
//! downstream is [`Weight::validate`].

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::half::HalfInt;
use crate::sign::Sign;

/// An integer vector in the character lattice of the diagonal torus of
/// `GL(n)`, `n >= 1`. Construction enforces only non-emptiness; dominance
/// and the cuspidal conditions are checked by [`Weight::validate`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    entries: Vec<i64>,
}

/// One distinct error per violated admission condition. Indices are
/// 1-based, matching the usual coordinate subscripts.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight must have at least one entry")]
    Empty,
    #[error("not dominant: entry {index} is smaller than entry {}", index + 1)]
    NotDominant { index: usize },
    #[error("not essentially self-dual: a_{index} != a_{}", n - index)]
    NotSelfDual { index: usize, n: usize },
    #[error("not regular: a_{index} = {value} < 2")]
    NotRegular { index: usize, value: i64 },
    #[error("entry sum {sum} is not divisible by 2 after doubling over n = {n}: d is not a half-integer")]
    NotHalfIntegral { sum: i64, n: usize },
    #[error("parity violation: 2d = {twice_d} and w + n - 1 = {rhs} differ mod 2")]
    ParityViolation { twice_d: i64, rhs: i64 },
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Result<Weight, WeightError> {
        if entries.is_empty() {
            return Err(WeightError::Empty);
        }
        Ok(Weight { entries })
    }

    /// The rank `n` of the ambient `GL(n)`.
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entries weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// Entries strictly decreasing, i.e. every `a_i >= 2`.
    pub fn is_regular(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] > w[1])
    }

    /// `l_i + l_{n+1-i}` is the same constant for all `i` (equivalently
    /// `a_i = a_{n-i}`). Vacuous for `n = 1`.
    pub fn is_essentially_self_dual(&self) -> bool {
        let n = self.rank();
        let c = self.entries[0] + self.entries[n - 1];
        (0..n).all(|i| self.entries[i] + self.entries[n - 1 - i] == c)
    }

    /// The admission gate: dominant, essentially self-dual, regular, `d` a
    /// half-integer, and `2d = w + n - 1 (mod 2)`. Returns the cuspidal
    /// parameters on success and the first violated condition otherwise.
    pub fn validate(&self) -> Result<CuspidalParams, WeightError> {
        let n = self.rank();
        for i in 0..n - 1 {
            if self.entries[i] < self.entries[i + 1] {
                return Err(WeightError::NotDominant { index: i + 1 });
            }
        }
        let gaps_plus_one: Vec<i64> = self.entries.windows(2).map(|w| w[0] - w[1] + 1).collect();
        for i in 0..gaps_plus_one.len() {
            if gaps_plus_one[i] != gaps_plus_one[n - 2 - i] {
                return Err(WeightError::NotSelfDual { index: i + 1, n });
            }
        }
        for (i, &a) in gaps_plus_one.iter().enumerate() {
            if a < 2 {
                return Err(WeightError::NotRegular {
                    index: i + 1,
                    value: a,
                });
            }
        }
        let sum: i64 = self.entries.iter().sum();
        // d = sum / n must lie in (1/2)Z, i.e. 2*sum must be divisible by n.
        if (2 * sum) % (n as i64) != 0 {
            return Err(WeightError::NotHalfIntegral { sum, n });
        }
        let d = HalfInt::from_twice(2 * sum / n as i64);
        let motivic_weight: i64 = gaps_plus_one.iter().sum();
        let rhs = motivic_weight + n as i64 - 1;
        if (d.twice() - rhs).rem_euclid(2) != 0 {
            return Err(WeightError::ParityViolation {
                twice_d: d.twice(),
                rhs,
            });
        }
        Ok(CuspidalParams {
            a: gaps_plus_one,
            d,
            motivic_weight,
            n,
        })
    }

    /// Extracts the cuspidal parameters; identical checks to
    /// [`Weight::validate`], which is the canonical entry point.
    pub fn cuspidal_params(&self) -> Result<CuspidalParams, WeightError> {
        self.validate()
    }

    /// Subtracts `l` from every entry (`lambda - l * det`). The gap vector
    /// is unchanged and `d` drops by `l`.
    pub fn twist_by_det(&self, l: i64) -> Weight {
        Weight {
            entries: self.entries.iter().map(|&x| x - l).collect(),
        }
    }

    /// The contragredient highest weight: entries negated and reversed.
    pub fn dual(&self) -> Weight {
        Weight {
            entries: self.entries.iter().rev().map(|&x| -x).collect(),
        }
    }

    /// Concatenates block-diagonal torus coordinates: dominant per block,
    /// but generally not dominant for the ambient `GL(n + n')`.
    pub fn concat(&self, other: &Weight) -> Weight {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Weight { entries }
    }
}

/// Prints the compact token form, e.g. `[1,0]`. The same token is accepted
/// on the command line and embedded in JSON reports.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid weight token `{0}`; expected bracketed integers like [1,0]")]
pub struct ParseWeightError(String);

impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseWeightError(s.to_owned());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let entries = inner
            .split(',')
            .map(|tok| tok.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<i64>, _>>()?;
        Weight::new(entries).map_err(|_| bad())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The data `(a_1, ..., a_{n-1}; d)` of a validated weight, together with
/// the motivic weight `w = sum a_i`. Only [`Weight::validate`] constructs
/// this type, so its invariants (`a_i >= 2`, `a_i = a_{n-i}`, parity) hold
/// by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CuspidalParams {
    a: Vec<i64>,
    d: HalfInt,
    motivic_weight: i64,
    n: usize,
}

impl CuspidalParams {
    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn d(&self) -> HalfInt {
        self.d
    }

    /// `w = sum a_i = l_1 - l_n + (n - 1)`.
    pub fn motivic_weight(&self) -> i64 {
        self.motivic_weight
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Reconstructs the weight from `(a, d)`: the gaps give the shape and
    /// the mean pins the absolute position. Exact by the construction
    /// invariants.
    pub fn to_weight(&self) -> Weight {
        let n = self.n as i64;
        // sum of entries = d * n, an integer because 2d*n is even here.
        let twice_sum = self.d.twice() * n;
        debug_assert_eq!(twice_sum % 2, 0);
        let sum = twice_sum / 2;
        // l_j = l_n + tail_j with tail_j = sum_{k >= j} (a_k - 1);
        // summing over j: sum = n*l_n + sum_j j*(a_j - 1).
        let weighted: i64 = self
            .a
            .iter()
            .enumerate()
            .map(|(idx, &a)| (idx as i64 + 1) * (a - 1))
            .sum();
        debug_assert_eq!((sum - weighted) % n, 0);
        let last = (sum - weighted) / n;
        let mut entries = vec![last; self.n];
        let mut acc = last;
        for j in (0..self.n - 1).rev() {
            acc += self.a[j] - 1;
            entries[j] = acc;
        }
        Weight { entries }
    }
}

/// Half the sum of positive roots of `GL(n)`:
/// `((n-1)/2, (n-3)/2, ..., -(n-1)/2)`. Entries sum to zero and are
/// integers exactly when `n` is odd.
pub fn rho(n: usize) -> Vec<HalfInt> {
    (1..=n as i64)
        .map(|i| HalfInt::from_twice(n as i64 + 1 - 2 * i))
        .collect()
}

/// The exponent sign `(-1)^l` picked up by the relative period under a
/// determinant twist by `l`; purely symbolic bookkeeping.
pub fn period_twist_exponent(l: i64) -> Sign {
    Sign::from_parity(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn rho_small_ranks() {
        assert_eq!(rho(1), vec![HalfInt::ZERO]);
        assert_eq!(
            rho(3),
            vec![HalfInt::from_int(1), HalfInt::ZERO, HalfInt::from_int(-1)]
        );
        assert_eq!(rho(2), vec![HalfInt::half_of(1), HalfInt::half_of(-1)]);
        for n in 1..=10 {
            let r = rho(n);
            assert_eq!(r.iter().fold(HalfInt::ZERO, |s, &x| s + x), HalfInt::ZERO);
            if n % 2 == 1 {
                assert!(r.iter().all(|x| x.is_integer()));
            }
        }
    }

    #[test]
    fn cuspidal_params_gl2() {
        let p = w(&[1, 0]).cuspidal_params().unwrap();
        assert_eq!(p.a(), &[2]);
        assert_eq!(p.d(), HalfInt::half_of(1));
        assert_eq!(p.motivic_weight(), 2);
        // cross-check: lambda + rho = (3/2, -1/2)
        let lr: Vec<HalfInt> = w(&[1, 0])
            .entries()
            .iter()
            .zip(rho(2))
            .map(|(&l, r)| HalfInt::from_int(l) + r)
            .collect();
        assert_eq!(lr, vec![HalfInt::half_of(3), HalfInt::half_of(-1)]);
    }

    #[test]
    fn zero_weight_is_not_regular() {
        assert_eq!(
            w(&[0, 0, 0]).cuspidal_params(),
            Err(WeightError::NotRegular { index: 1, value: 1 })
        );
    }

    #[test]
    fn cuspidal_params_self_dual_gl3() {
        let p = w(&[2, 0, -2]).cuspidal_params().unwrap();
        assert_eq!(p.a(), &[3, 3]);
        assert_eq!(p.d(), HalfInt::ZERO);
        assert_eq!(p.motivic_weight(), 6);
    }

    #[test]
    fn validate_parity_cases() {
        let p = w(&[1, 0]).validate().unwrap();
        assert_eq!(p.d().twice(), 1); // 2d = 1, w + n - 1 = 3, both odd
        let p = w(&[2, 0]).validate().unwrap();
        assert_eq!(p.a(), &[3]);
        assert_eq!(p.d(), HalfInt::from_int(1));
        assert_eq!(
            w(&[1, 0, 0]).validate(),
            Err(WeightError::NotSelfDual { index: 1, n: 3 })
        );
    }

    #[test]
    fn validate_reports_dominance_index() {
        assert_eq!(
            w(&[0, 1]).validate(),
            Err(WeightError::NotDominant { index: 1 })
        );
        assert_eq!(
            w(&[3, 1, 2]).validate(),
            Err(WeightError::NotDominant { index: 2 })
        );
    }

    #[test]
    fn gl1_convention() {
        // Every integer entry is valid for n = 1: the a-vector is empty,
        // w = 0, and parity reads 2d = 0 (mod 2), which holds as d = l_1.
        for x in -5..=5 {
            let p = w(&[x]).validate().unwrap();
            assert!(p.a().is_empty());
            assert_eq!(p.motivic_weight(), 0);
            assert_eq!(p.d(), HalfInt::from_int(x));
        }
    }

    #[test]
    fn twist_by_det_shifts_entries() {
        assert_eq!(w(&[1, 0]).twist_by_det(0), w(&[1, 0]));
        assert_eq!(w(&[1, 0]).twist_by_det(1), w(&[0, -1]));
        let t = w(&[2, 0, -2]).twist_by_det(-2);
        assert_eq!(t, w(&[4, 2, 0]));
        assert_eq!(t.validate().unwrap().d(), HalfInt::from_int(2));
    }

    #[test]
    fn dual_weight() {
        assert_eq!(w(&[1, 0]).dual(), w(&[0, -1]));
        assert_eq!(w(&[0]).dual(), w(&[0]));
        assert_eq!(w(&[2, 0, -2]).dual(), w(&[2, 0, -2]));
    }

    #[test]
    fn dual_negates_d_and_keeps_a() {
        let p = w(&[1, 0]).validate().unwrap();
        let q = w(&[1, 0]).dual().validate().unwrap();
        assert_eq!(p.a(), q.a());
        assert_eq!(q.d(), -p.d());
        assert_eq!(p.motivic_weight(), q.motivic_weight());
    }

    #[test]
    fn period_twist_exponent_parity() {
        assert_eq!(period_twist_exponent(0), Sign::Plus);
        assert_eq!(period_twist_exponent(1), Sign::Minus);
        assert_eq!(period_twist_exponent(-3), Sign::Minus);
    }

    #[test]
    fn token_round_trip() {
        for s in ["[1,0]", "[0]", "[2,0,-2]", "[-3]"] {
            let wt: Weight = s.parse().unwrap();
            assert_eq!(wt.to_string(), s);
        }
        assert!("[]".parse::<Weight>().is_err());
        assert!("[1,]".parse::<Weight>().is_err());
        assert!("1,0".parse::<Weight>().is_err());
        assert!("[a]".parse::<Weight>().is_err());
        // interior whitespace is tolerated on input
        assert_eq!("[ 1, 0 ]".parse::<Weight>().unwrap(), w(&[1, 0]));
    }

    #[test]
    fn reconstruction_round_trip() {
        for entries in [&[1, 0][..], &[2, 0, -2], &[5], &[4, 2, 0], &[3, 1, -1, -3]] {
            let wt = w(entries);
            let p = wt.validate().unwrap();
            assert_eq!(p.to_weight(), wt);
        }
    }
}
