//! Behaviour tables over binary inputs and outputs, the witness functional `B`
//! and the winning probabilities of the two discrimination games built on it.
//!
//! An input string `x₁…x_N` is stored as the integer `Σ xᵢ·2^(i-1)`, so `x₁`
//! is the least significant bit. Only `P(1|x)` is kept; `P(0|x) = 1 − P(1|x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probabilities within this distance outside `[0, 1]` are clamped, beyond it rejected.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

/// Largest number of locations a full `2^N` table is built for.
pub const MAX_TABLE_LOCATIONS: usize = 24;

/// Index of the input string with only location `i` (zero-based) set.
#[inline]
pub fn one_hot(i: usize) -> usize {
    1 << i
}

/// Value of bit `i` (zero-based location) in input index `x`.
#[inline]
pub fn bit(x: usize, i: usize) -> bool {
    (x >> i) & 1 == 1
}

/// Full conditional table `P(1|x₁…x_N)` of a single binary-output party.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BehaviorRepr", into = "BehaviorRepr")]
pub struct Behavior {
    n: usize,
    p1: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct BehaviorRepr {
    n: usize,
    p1: Vec<f64>,
}

impl TryFrom<BehaviorRepr> for Behavior {
    type Error = Error;

    fn try_from(repr: BehaviorRepr) -> Result<Self> {
        Behavior::new(repr.n, repr.p1)
    }
}

impl From<Behavior> for BehaviorRepr {
    fn from(b: Behavior) -> Self {
        BehaviorRepr { n: b.n, p1: b.p1 }
    }
}

impl Behavior {
    /// Validates and (within [`PROBABILITY_TOLERANCE`]) clamps the table.
    pub fn new(n: usize, mut p1: Vec<f64>) -> Result<Self> {
        check_locations(n)?;
        let expected = 1usize << n;
        if p1.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: p1.len(),
            });
        }
        for (index, p) in p1.iter_mut().enumerate() {
            if !p.is_finite() || *p < -PROBABILITY_TOLERANCE || *p > 1.0 + PROBABILITY_TOLERANCE {
                return Err(Error::ProbabilityOutOfRange { index, value: *p });
            }
            *p = p.clamp(0.0, 1.0);
        }
        Ok(Behavior { n, p1 })
    }

    /// Builds the table by evaluating `f` on every input index.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        check_locations(n)?;
        Behavior::new(n, (0..1usize << n).map(f).collect())
    }

    /// `P(1|x) = c` for every input.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Behavior::from_fn(n, |_| c)
    }

    pub fn n_locations(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[f64] {
        &self.p1
    }

    pub fn p1(&self, x: usize) -> f64 {
        self.p1[x]
    }

    pub fn p0(&self, x: usize) -> f64 {
        1.0 - self.p1[x]
    }

    /// `P(1|0…0)`.
    pub fn p1_all_zero(&self) -> f64 {
        self.p1[0]
    }

    /// `P(1|eᵢ)` for zero-based location `i`.
    pub fn p1_one_hot(&self, i: usize) -> f64 {
        self.p1[one_hot(i)]
    }

    /// Convex mixture `t·self + (1−t)·other`.
    pub fn mix(&self, other: &Behavior, t: f64) -> Result<Behavior> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Behavior::new(
            self.n,
            self.p1
                .iter()
                .zip(&other.p1)
                .map(|(a, b)| t * a + (1.0 - t) * b)
                .collect(),
        )
    }
}

fn check_locations(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::TooFewLocations { n, min: 1 });
    }
    if n > MAX_TABLE_LOCATIONS {
        return Err(Error::SizeGuard {
            what: "behavior table locations",
            limit: MAX_TABLE_LOCATIONS,
            got: n,
        });
    }
    Ok(())
}

/// The witness functional `B = −P(1|0…0) + Σᵢ P(1|eᵢ)`.
///
/// Bounded by `N − 1` on every behaviour that reads fewer than all `N` inputs.
pub fn eval_b(behavior: &Behavior) -> f64 {
    let positive: f64 = (0..behavior.n).map(|i| behavior.p1_one_hot(i)).sum();
    positive - behavior.p1_all_zero()
}

/// Priors over the `N + 1` inputs the games ever use: the all-zero string
/// (slot 0) and the one-hot strings `eᵢ` (slot `i`). Every other input has
/// prior zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    n: usize,
    priors: Vec<f64>,
}

impl GameSpec {
    pub fn new(n: usize, priors: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewLocations { n, min: 1 });
        }
        if priors.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: priors.len(),
            });
        }
        let sum: f64 = priors.iter().sum();
        if priors.iter().any(|p| p.is_nan() || *p < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPriors { sum });
        }
        Ok(GameSpec { n, priors })
    }

    /// Uniform over the `N + 1` settings; the game whose score is `B`.
    pub fn uniform(n: usize) -> Result<Self> {
        GameSpec::new(n, vec![1.0 / (n as f64 + 1.0); n + 1])
    }

    /// Half weight on the all-zero input, the other half spread over the one-hot inputs.
    pub fn half_half(n: usize) -> Result<Self> {
        let mut priors = vec![0.5 / n as f64; n + 1];
        priors[0] = 0.5;
        GameSpec::new(n, priors)
    }

    pub fn n_locations(&self) -> usize {
        self.n
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    /// Probability of outputting `a = 0` on the all-zero input and `a = 1` on a one-hot input.
    pub fn win_prob(&self, behavior: &Behavior) -> Result<f64> {
        if behavior.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: behavior.n,
            });
        }
        let one_hot: f64 = (0..self.n)
            .map(|i| self.priors[i + 1] * behavior.p1_one_hot(i))
            .sum();
        Ok(self.priors[0] * behavior.p0(0) + one_hot)
    }
}

/// Winning probability of the uniform-prior game; `B = −1 + (N+1)·P_W`.
pub fn win_prob_game1(behavior: &Behavior) -> f64 {
    let n = behavior.n as f64;
    let one_hot: f64 = (0..behavior.n).map(|i| behavior.p1_one_hot(i)).sum();
    (behavior.p0(0) + one_hot) / (n + 1.0)
}

/// Winning probability of the half/half-prior game.
pub fn win_prob_game2(behavior: &Behavior) -> f64 {
    let n = behavior.n as f64;
    let one_hot: f64 = (0..behavior.n).map(|i| behavior.p1_one_hot(i)).sum();
    0.5 * behavior.p0(0) + one_hot / (2.0 * n)
}

/// Best half/half-game score reachable after reading `k` of the `N` inputs: `½(1 + k/N)`.
pub fn classical_win_bound(n: usize, k: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::TooFewLocations { n, min: 1 });
    }
    if k > n {
        return Err(Error::TooManyQueries { k, n });
    }
    Ok(0.5 * (1.0 + k as f64 / n as f64))
}
