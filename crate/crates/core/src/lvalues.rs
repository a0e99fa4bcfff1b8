//! Critical-point bookkeeping for the Rankin-Selberg L-function in its two
//! normalizations, the evaluation point of the Eisenstein ratio, and the
//! symbolic ratio statements.
//!
//! The cohomological critical points are the integers from `p` down to
//! `w + w' + 1 - p`; the automorphic ones are their images under
//! `s -> s - (w + w')/2 + a`, which is always a proper half-integer shift
//! for consistent input parities. Nothing analytic is computed: L-values,
//! Gamma factors and the sign attached to the second factor all stay
//! symbolic.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::half::HalfInt;
use crate::sign::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LValueError {
    #[error("p = {p_mu} is not strictly above the middle of total weight {total_weight}")]
    PNotAboveMiddle { p_mu: i64, total_weight: i64 },
    #[error("degree N = {0} must be odd and at least 3")]
    BadDegree(i64),
    #[error("shift lands in Z ({0}); the input parities are inconsistent")]
    ShiftNotHalfIntegral(HalfInt),
    #[error("m = {0} and m + 1 = {1} are not both critical")]
    NotSuccessiveCritical(HalfInt, HalfInt),
}

/// The data controlling both critical sets: the invariant `p`, the total
/// motivic weight `w + w'`, the offset `a = d - d'` between the two
/// normalizations, and the ambient degree `N`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CriticalData {
    p_mu: i64,
    total_weight: i64,
    a_mu: HalfInt,
    degree: i64,
}

impl CriticalData {
    pub fn new(
        p_mu: i64,
        total_weight: i64,
        a_mu: HalfInt,
        degree: i64,
    ) -> Result<CriticalData, LValueError> {
        if 2 * p_mu <= total_weight {
            return Err(LValueError::PNotAboveMiddle { p_mu, total_weight });
        }
        if degree < 3 || degree % 2 == 0 {
            return Err(LValueError::BadDegree(degree));
        }
        Ok(CriticalData {
            p_mu,
            total_weight,
            a_mu,
            degree,
        })
    }

    pub fn p_mu(&self) -> i64 {
        self.p_mu
    }

    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    pub fn a_mu(&self) -> HalfInt {
        self.a_mu
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// The critical points of the cohomological L-function: the integers
    /// from `p` down to `w + w' + 1 - p`, centered around `(w + w' + 1)/2`.
    pub fn critical_set_coh(&self) -> Vec<i64> {
        (self.total_weight + 1 - self.p_mu..=self.p_mu)
            .rev()
            .collect()
    }

    fn shift(&self, s: HalfInt) -> HalfInt {
        s - HalfInt::half_of(self.total_weight) + self.a_mu
    }

    /// Transports a cohomological argument to the automorphic
    /// normalization: `s - (w + w')/2 + a`. The result must be a proper
    /// half-integer; an integral value signals inconsistent input parity.
    pub fn to_automorphic(&self, s_coh: i64) -> Result<HalfInt, LValueError> {
        let out = self.shift(HalfInt::from_int(s_coh));
        if out.is_integer() {
            return Err(LValueError::ShiftNotHalfIntegral(out));
        }
        Ok(out)
    }

    /// The image of [`CriticalData::critical_set_coh`] in the automorphic
    /// normalization; descending, consecutive entries differing by one.
    pub fn critical_set_automorphic(&self) -> Result<Vec<HalfInt>, LValueError> {
        self.critical_set_coh()
            .into_iter()
            .map(|s| self.to_automorphic(s))
            .collect()
    }

    /// The cohomological evaluation point `(w + w')/2 - a - N/2` of the
    /// Eisenstein ratio; its automorphic image is `-N/2` identically.
    pub fn nu_zero(&self) -> HalfInt {
        let nu0 = HalfInt::from_twice(self.total_weight - self.a_mu.twice() - self.degree);
        debug_assert_eq!(self.shift(nu0), HalfInt::half_of(-self.degree));
        nu0
    }

    /// The symbolic statement about `Lambda(m)/Lambda(m+1)` for a
    /// half-integer `m` with `m` and `m + 1` both critical.
    pub fn ratio_statement(&self, m: HalfInt) -> Result<RatioStatement, LValueError> {
        let set = self.critical_set_automorphic()?;
        let next = m + 1;
        if !set.contains(&m) || !set.contains(&next) {
            return Err(LValueError::NotSuccessiveCritical(m, next));
        }
        let m0 = (m - HalfInt::half_of(1))
            .as_integer()
            .expect("critical points are proper half-integers");
        Ok(RatioStatement {
            m,
            m0,
            epsilon_m: Sign::from_parity(m0),
        })
    }

    /// Ratio statements for every successive critical pair, in descending
    /// `m` order; empty when the critical set has fewer than two points.
    pub fn ratio_statements(&self) -> Result<Vec<RatioStatement>, LValueError> {
        let set = self.critical_set_automorphic()?;
        set.iter()
            .skip(1)
            .map(|&m| self.ratio_statement(m))
            .collect()
    }
}

/// The closed interval of admissible offsets `a`:
/// `(w+w')/2 - p + 1 - N/2 <= a <= -(w+w')/2 + p - 1 - N/2`,
/// walked in unit steps from the lower bound. It contains exactly
/// `2p - (w+w') - 1` half-integers, one less than the number of critical
/// points, and is empty when that count is not positive.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AdmissibleInterval {
    pub lo: HalfInt,
    pub hi: HalfInt,
}

impl AdmissibleInterval {
    pub fn count(&self) -> i64 {
        let steps = (self.hi.twice() - self.lo.twice()) / 2 + 1;
        steps.max(0)
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// Membership on the unit-step grid anchored at the lower bound.
    pub fn contains(&self, a: HalfInt) -> bool {
        self.lo <= a && a <= self.hi && (a - self.lo).is_integer()
    }

    /// The admissible values in ascending order.
    pub fn values(&self) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut a = self.lo;
        while a <= self.hi {
            out.push(a);
            a = a + 1;
        }
        out
    }
}

impl std::fmt::Display for AdmissibleInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The interval of the combinatorial lemma for given total weight, `p` and
/// degree `N`.
pub fn admissible_interval(total_weight: i64, p_mu: i64, degree: i64) -> AdmissibleInterval {
    AdmissibleInterval {
        lo: HalfInt::from_twice(total_weight - 2 * p_mu + 2 - degree),
        hi: HalfInt::from_twice(-total_weight + 2 * p_mu - 2 - degree),
    }
}

/// A formal certificate about the ratio of completed L-values at the
/// successive critical points `m` and `m + 1`. The sign attached to the
/// second factor is kept as an opaque token; only `epsilon_m = (-1)^{m_0}`
/// with `m = 1/2 + m_0` is computed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RatioStatement {
    m: HalfInt,
    m0: i64,
    epsilon_m: Sign,
}

impl RatioStatement {
    pub fn m(&self) -> HalfInt {
        self.m
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    pub fn epsilon_m(&self) -> Sign {
        self.epsilon_m
    }

    /// The left-hand side `Λ(m)/Λ(m+1)`.
    pub fn lhs(&self) -> String {
        format!("Λ({})/Λ({})", self.m, self.m + 1)
    }

    /// The full formal claim, with the period exponent written as the
    /// product of the computed `ε_m` and the symbolic `ε_σ'`.
    pub fn claim(&self) -> String {
        format!(
            "{} ∈ Ω(σ_f, ι)^{{({})·ε_σ'}} · ι(F)",
            self.lhs(),
            self.epsilon_m
        )
    }
}

impl Serialize for RatioStatement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RatioStatement", 5)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("m0", &self.m0)?;
        st.serialize_field("epsilon_m", &self.epsilon_m)?;
        st.serialize_field("epsilon_sigma_prime", "symbolic")?;
        st.serialize_field("claim", &self.claim())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RatioStatement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Record {
            m: HalfInt,
            m0: i64,
            epsilon_m: Sign,
        }
        let r = Record::deserialize(deserializer)?;
        Ok(RatioStatement {
            m: r.m,
            m0: r.m0,
            epsilon_m: r.epsilon_m,
        })
    }
}
