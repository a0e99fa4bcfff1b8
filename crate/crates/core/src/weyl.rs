//! Permutation engine for the two-block parabolic of `GL(N)`: lengths,
//! minimal coset representatives, and the rho-shifted (dot) action on
//! `GL(N)` weights.
//!
//! The representative set `W^P` for the parabolic with Levi
//! `GL(n) x GL(n')` is enumerated directly as `(n, n')`-shuffles, in
//! `binomial(N, n)` work rather than `N!`. The convention fixed here —
//! `w^{-1}` strictly increasing on positions `1..n` and on `n+1..N` —
//! is pinned by two convention-independent identities exercised in the
//! tests: unique coset factorization with additive length, and the length
//! generating polynomial equalling the Gaussian binomial.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::weights::Weight;

/// A permutation of `{1, ..., N}` in one-line notation, with its length
/// (inversion count) cached at construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
    length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("images {0:?} are not a bijection on 1..=N")]
pub struct PermError(Vec<usize>);

fn inversion_count(images: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                count += 1;
            }
        }
    }
    count
}

impl Perm {
    /// Builds a permutation from one-line notation `(w(1), ..., w(N))`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError(images));
            }
            seen[v - 1] = true;
        }
        let length = inversion_count(&images);
        Ok(Perm { images, length })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (1..=n).collect(),
            length: 0,
        }
    }

    /// The degree `N`, i.e. the size of the permuted set.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-line notation, `images[i] = w(i+1)`.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Coxeter length: the number of pairs `i < j` with `w(i) > w(j)`.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (pos, &v) in self.images.iter().enumerate() {
            images[v - 1] = pos + 1;
        }
        // inversion count is invariant under inversion
        Perm {
            images,
            length: self.length,
        }
    }

    /// Function composition: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        let images: Vec<usize> = other.images.iter().map(|&v| self.images[v - 1]).collect();
        let length = inversion_count(&images);
        Perm { images, length }
    }

    /// Place permutation of a vector: `(w . v)_i = v_{w^{-1}(i)}`.
    /// This makes `w1.permute(w2.permute(v)) == (w1 * w2).permute(v)`.
    pub fn permute(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.degree(), v.len());
        let inv = self.inverse();
        inv.images.iter().map(|&p| v[p - 1]).collect()
    }

    /// The shifted action `w . mu = w(mu + rho) - rho` on integer weights
    /// of `GL(N)`, computed on doubled entries. Exact for every `N`: the
    /// half-integer parts of `rho` cancel after permutation, so the result
    /// is again integral.
    pub fn dot_action(&self, mu: &Weight) -> Weight {
        let n = self.degree();
        assert_eq!(n, mu.rank());
        let twice_rho = |pos: usize| n as i64 - 1 - 2 * pos as i64;
        let twice_shifted: Vec<i64> = mu
            .entries()
            .iter()
            .enumerate()
            .map(|(pos, &x)| 2 * x + twice_rho(pos))
            .collect();
        let entries: Vec<i64> = self
            .permute(&twice_shifted)
            .into_iter()
            .enumerate()
            .map(|(pos, twice)| {
                let out = twice - twice_rho(pos);
                debug_assert_eq!(out % 2, 0);
                out / 2
            })
            .collect();
        Weight::new(entries).expect("degree >= 1")
    }

    /// Solves `w . x = mu` for `x`: the inverse of [`Perm::dot_action`],
    /// `x = w^{-1}(mu + rho) - rho`.
    pub fn dot_preimage(&self, mu: &Weight) -> Weight {
        self.inverse().dot_action(mu)
    }

    /// Whether `w` is one of the minimal coset representatives for the
    /// two-block parabolic with first block size `n`: `w^{-1}` strictly
    /// increasing on values `1..=n` and on `n+1..=N`.
    pub fn is_kostant_rep(&self, n: usize) -> bool {
        let inv = self.inverse();
        let increasing = |range: std::ops::Range<usize>| {
            range
                .clone()
                .zip(range.skip(1))
                .all(|(a, b)| inv.images[a - 1] < inv.images[b - 1])
        };
        increasing(1..n + 1) && increasing(n + 1..self.degree() + 1)
    }
}

/// Prints one-line notation, e.g. `[1,3,2]`; the same token appears in
/// JSON witness records.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PermError(Vec::new());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let images = inner
            .split(',')
            .map(|tok| tok.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<usize>, _>>()?;
        Perm::from_images(images)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// The block sizes `(n, n')` of the parabolic with Levi `GL(n) x GL(n')`,
/// in the regime of interest: `n` even, `n'` odd, so `N = n + n'` is odd
/// and the unipotent radical has even dimension `n * n'`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BlockPair {
    n: usize,
    n_prime: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("first block size {0} must be a positive even integer")]
    FirstBlockNotEven(usize),
    #[error("second block size {0} must be a positive odd integer")]
    SecondBlockNotOdd(usize),
}

impl BlockPair {
    pub fn new(n: usize, n_prime: usize) -> Result<BlockPair, BlockError> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(BlockError::FirstBlockNotEven(n));
        }
        if n_prime % 2 != 1 {
            return Err(BlockError::SecondBlockNotOdd(n_prime));
        }
        Ok(BlockPair { n, n_prime })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_prime(&self) -> usize {
        self.n_prime
    }

    /// `N = n + n'`, always odd and at least 3.
    pub fn total(&self) -> usize {
        self.n + self.n_prime
    }

    /// `dim U_P = n * n'`, always even here.
    pub fn unipotent_dim(&self) -> usize {
        self.n * self.n_prime
    }

    pub fn kostant_reps(&self) -> Vec<Perm> {
        kostant_reps(self.n, self.n_prime)
    }

    pub fn kostant_reps_of_length(&self, target: usize) -> Vec<Perm> {
        kostant_reps_of_length(self.n, self.n_prime, target)
    }
}

impl fmt::Display for BlockPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.n_prime)
    }
}

/// All minimal-length representatives of `W_{M_P} \ W` for the two-block
/// parabolic of `GL(n + n')`: exactly the permutations whose inverse is
/// strictly increasing on each block of positions. Enumerated as shuffles
/// (choose which positions carry the values `1..=n`), so the cost is
/// `binomial(N, n)`. Sorted by `(length, one-line form)`.
pub fn kostant_reps(n: usize, n_prime: usize) -> Vec<Perm> {
    assert!(n >= 1 && n_prime >= 1, "block sizes must be positive");
    let total = n + n_prime;
    let mut reps: Vec<Perm> = (0..total)
        .combinations(n)
        .map(|first_block_positions| {
            let mut images = vec![0; total];
            let mut in_first = vec![false; total];
            for (k, &pos) in first_block_positions.iter().enumerate() {
                images[pos] = k + 1;
                in_first[pos] = true;
            }
            let mut next = n + 1;
            for (pos, taken) in in_first.iter().enumerate() {
                if !taken {
                    images[pos] = next;
                    next += 1;
                }
            }
            let length = inversion_count(&images);
            Perm { images, length }
        })
        .collect();
    reps.sort_by(|a, b| (a.length, &a.images).cmp(&(b.length, &b.images)));
    reps
}

/// The representatives of a given length; for `target = n * n' / 2` this is
/// the middle-degree slice searched by the lemma verifier.
pub fn kostant_reps_of_length(n: usize, n_prime: usize, target: usize) -> Vec<Perm> {
    kostant_reps(n, n_prime)
        .into_iter()
        .filter(|w| w.length == target)
        .collect()
}

/// Coefficients of the Gaussian binomial `[n choose k]_q` as a dense
/// polynomial in `q` (index = exponent), by the q-Pascal recurrence
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`. Serves as the independent check on
/// the length statistics of [`kostant_reps`].
pub fn gaussian_binomial(n: usize, k: usize) -> Vec<i64> {
    if k > n {
        return vec![0];
    }
    if k == 0 || k == n {
        return vec![1];
    }
    let left = gaussian_binomial(n - 1, k - 1);
    let right = gaussian_binomial(n - 1, k);
    let mut out = vec![0i64; k * (n - k) + 1];
    for (e, c) in left.iter().enumerate() {
        out[e] += c;
    }
    for (e, c) in right.iter().enumerate() {
        out[e + k] += c;
    }
    out
}

/// Length histogram of a representative set, as polynomial coefficients.
pub fn length_polynomial(reps: &[Perm]) -> Vec<i64> {
    let max = reps.iter().map(|w| w.length).max().unwrap_or(0);
    let mut coeffs = vec![0i64; max + 1];
    for w in reps {
        coeffs[w.length] += 1;
    }
    coeffs
}
