use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signaling::{bit, Behavior};

/// Largest N for which vertex tables are enumerated at all (`2^N` bits must fit a `u64`).
pub(crate) const MAX_ENUMERATION_LOCATIONS: usize = 5;

/// `2^(2^k)` functions per subset; k = 5 would be four billion.
pub(crate) const MAX_ENUMERATION_LEVEL: usize = 4;

/// A deterministic strategy reading exactly the inputs at `locations`
/// (1-based, strictly increasing) and answering with `truth_table`.
///
/// `truth_table[j]` is the output on local input `j`, where bit `t` of `j`
/// holds the value read at `locations[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "VertexRepr")]
pub struct DeterministicVertex {
    locations: Vec<usize>,
    #[serde(with = "bits_as_ints")]
    truth_table: Vec<bool>,
}

#[derive(Deserialize)]
struct VertexRepr {
    locations: Vec<usize>,
    #[serde(with = "bits_as_ints")]
    truth_table: Vec<bool>,
}

impl TryFrom<VertexRepr> for DeterministicVertex {
    type Error = Error;

    fn try_from(repr: VertexRepr) -> Result<Self> {
        DeterministicVertex::new(repr.locations, repr.truth_table)
    }
}

impl DeterministicVertex {
    pub fn new(locations: Vec<usize>, truth_table: Vec<bool>) -> Result<Self> {
        if locations.is_empty() {
            return Err(Error::InvalidVertex("empty location set".into()));
        }
        if locations[0] == 0 || locations.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidVertex(format!(
                "locations {locations:?} must be 1-based and strictly increasing"
            )));
        }
        if locations.len() >= usize::BITS as usize || truth_table.len() != 1 << locations.len() {
            return Err(Error::InvalidVertex(format!(
                "truth table has {} entries for {} locations",
                truth_table.len(),
                locations.len()
            )));
        }
        Ok(DeterministicVertex {
            locations,
            truth_table,
        })
    }

    /// Function number `f` (bit `j` of `f` is the output on local input `j`).
    pub(crate) fn from_index(locations: Vec<usize>, f: u64) -> Self {
        let truth_table = (0..1usize << locations.len())
            .map(|j| (f >> j) & 1 == 1)
            .collect();
        DeterministicVertex {
            locations,
            truth_table,
        }
    }

    pub fn locations(&self) -> &[usize] {
        &self.locations
    }

    pub fn truth_table(&self) -> &[bool] {
        &self.truth_table
    }

    /// Number of inputs read.
    pub fn level(&self) -> usize {
        self.locations.len()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        match self.locations.last() {
            Some(&last) if last <= n => Ok(()),
            _ => Err(Error::InvalidVertex(format!(
                "locations {:?} do not fit N={n}",
                self.locations
            ))),
        }
    }

    /// Output on the global input index `x`.
    pub fn output(&self, x: usize) -> bool {
        let local = self
            .locations
            .iter()
            .enumerate()
            .fold(0usize, |acc, (t, &loc)| {
                acc | (usize::from(bit(x, loc - 1)) << t)
            });
        self.truth_table[local]
    }

    /// The induced `2^N` table packed as bits: bit `x` is `P(1|x)`.
    pub(crate) fn table_mask(&self, n: usize) -> u64 {
        debug_assert!(n <= MAX_ENUMERATION_LOCATIONS + 1);
        (0..1usize << n).fold(0u64, |acc, x| acc | (u64::from(self.output(x)) << x))
    }
}

/// The deterministic table `P(1|x) = f(x_{j₁}, …, x_{j_k})`.
pub fn vertex_to_behavior(v: &DeterministicVertex, n: usize) -> Result<Behavior> {
    v.check_n(n)?;
    Behavior::from_fn(n, |x| if v.output(x) { 1.0 } else { 0.0 })
}

/// All `k`-subsets of `{1..=n}` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            if n - j + 1 < k - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Every level-`k` vertex for `N` locations, one per distinct induced table,
/// keeping the first label met in (subset, function number) order.
pub(crate) fn enumerate_distinct(n: usize, k: usize) -> Result<Vec<DeterministicVertex>> {
    if k == 0 || k > n {
        return Err(Error::SizeGuard {
            what: "level k must satisfy 1 <= k <= N",
            limit: n,
            got: k,
        });
    }
    if n > MAX_ENUMERATION_LOCATIONS {
        return Err(Error::SizeGuard {
            what: "vertex enumeration locations",
            limit: MAX_ENUMERATION_LOCATIONS,
            got: n,
        });
    }
    if k > MAX_ENUMERATION_LEVEL {
        return Err(Error::SizeGuard {
            what: "vertex enumeration level",
            limit: MAX_ENUMERATION_LEVEL,
            got: k,
        });
    }
    let n_functions = 1u64 << (1u64 << k);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for locations in subsets(n, k) {
        for f in 0..n_functions {
            let v = DeterministicVertex::from_index(locations.clone(), f);
            if seen.insert(v.table_mask(n)) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

mod bits_as_ints {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
        bits.iter()
            .map(|&b| u8::from(b))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        let raw = Vec::<u8>::deserialize(d)?;
        raw.into_iter()
            .map(|b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(serde::de::Error::custom(format!(
                    "truth table entries must be 0 or 1, got {other}"
                ))),
            })
            .collect()
    }
}
