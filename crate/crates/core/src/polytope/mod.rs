//! The k-way-signaling polytope: its deterministic vertices and an LP
//! membership test over convex weights on them.
//!
//! Behaviours live in the `2^N`-dimensional chart of `P(1|x)` values. A
//! behaviour is k-way when it is a convex mixture of deterministic tables
//! that each read exactly `k` of the `N` inputs. Membership is decided by
//! phase-one simplex, exactly over the rationals for `N ≤ 3` and in `f64`
//! with feasibility tolerance `1e-8` for `N = 4, 5`.

mod simplex;
mod vertex;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signaling::{eval_b, Behavior};

pub use vertex::{vertex_to_behavior, DeterministicVertex};

use simplex::{find_feasible_point, rational_from_f64, rational_to_f64};

/// Largest N accepted by [`enumerate_vertices`] and the exact LP mode.
pub const MAX_EXACT_LOCATIONS: usize = 4;
/// Largest N accepted by the floating LP mode.
pub const MAX_FLOAT_LOCATIONS: usize = vertex::MAX_ENUMERATION_LOCATIONS;
/// Largest N routed to exact arithmetic by [`is_k_way`].
pub const DEFAULT_EXACT_UP_TO: usize = 3;
/// Tolerance for reproducing a behaviour from floating-mode weights.
pub const FLOAT_MEMBERSHIP_TOL: f64 = simplex::FLOAT_FEASIBILITY_TOL;

/// Arithmetic used by the membership LP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpMode {
    Exact,
    Floating,
}

/// One vertex of a convex decomposition together with its weight `λ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedVertex {
    #[serde(flatten)]
    pub vertex: DeterministicVertex,
    pub lambda: f64,
}

/// Outcome of [`is_k_way`]; `weights` is empty for non-members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipResult {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "member")]
    pub is_member: bool,
    pub weights: Vec<WeightedVertex>,
    #[serde(skip)]
    pub mode: Option<LpMode>,
}

impl MembershipResult {
    /// Behaviour rebuilt from the weights, `Σ λ·vertex table`.
    pub fn reconstruct(&self) -> Result<Behavior> {
        let mut table = vec![0.0; 1 << self.n];
        for w in &self.weights {
            for (x, p) in table.iter_mut().enumerate() {
                if w.vertex.output(x) {
                    *p += w.lambda;
                }
            }
        }
        Behavior::new(self.n, table)
    }

    /// Marginal weight `q` of each location subset.
    pub fn subset_weights(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out: Vec<(Vec<usize>, f64)> = Vec::new();
        for w in &self.weights {
            match out.iter_mut().find(|(l, _)| l == w.vertex.locations()) {
                Some((_, q)) => *q += w.lambda,
                None => out.push((w.vertex.locations().to_vec(), w.lambda)),
            }
        }
        out
    }
}

fn check_level(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::TooFewLocations { n, min: 1 });
    }
    if k == 0 || k > n {
        return Err(Error::SizeGuard {
            what: "level k must satisfy 1 <= k <= N",
            limit: n,
            got: k,
        });
    }
    Ok(())
}

/// All distinct deterministic level-`k` behaviours for `N ≤ 4` locations.
///
/// Vertices whose `2^N` tables coincide (constants read through different
/// subsets, for instance) are merged; the first label in lexicographic
/// (subset, function number) order is kept.
pub fn enumerate_vertices(n: usize, k: usize) -> Result<Vec<DeterministicVertex>> {
    check_level(n, k)?;
    if n > MAX_EXACT_LOCATIONS {
        return Err(Error::SizeGuard {
            what: "vertex enumeration locations",
            limit: MAX_EXACT_LOCATIONS,
            got: n,
        });
    }
    vertex::enumerate_distinct(n, k)
}

/// Largest value of the witness `B` over the level-`k` vertices.
pub fn max_b_over_vertices(n: usize, k: usize) -> Result<f64> {
    let vertices = enumerate_vertices(n, k)?;
    vertices
        .iter()
        .map(|v| vertex_to_behavior(v, n).map(|b| eval_b(&b)))
        .try_fold(f64::NEG_INFINITY, |acc, b| b.map(|b| acc.max(b)))
}

/// Decides whether `behavior` is k-way signaling, choosing exact arithmetic
/// for `N ≤ 3` and floating point above.
///
/// Exact mode decides membership of the table exactly as stored: each `f64`
/// entry is read as the rational it represents. A mixture whose weights were
/// rounded on the way in (say `fl(a)` and `fl(1 − a)`) can sit just outside a
/// face and is then rejected; use [`LpMode::Floating`] for such data.
pub fn is_k_way(behavior: &Behavior, k: usize) -> Result<MembershipResult> {
    let mode = if behavior.n_locations() <= DEFAULT_EXACT_UP_TO {
        LpMode::Exact
    } else {
        LpMode::Floating
    };
    is_k_way_with(behavior, k, mode)
}

/// [`is_k_way`] with an explicit arithmetic mode.
pub fn is_k_way_with(behavior: &Behavior, k: usize, mode: LpMode) -> Result<MembershipResult> {
    let n = behavior.n_locations();
    check_level(n, k)?;
    let limit = match mode {
        LpMode::Exact => MAX_EXACT_LOCATIONS,
        LpMode::Floating => MAX_FLOAT_LOCATIONS,
    };
    if n > limit {
        return Err(Error::SizeGuard {
            what: "membership LP locations",
            limit,
            got: n,
        });
    }
    if k == n {
        return Ok(threshold_decomposition(behavior, mode));
    }

    let vertices = vertex::enumerate_distinct(n, k)?;
    let weights = match mode {
        LpMode::Exact => solve_exact(behavior, &vertices),
        LpMode::Floating => solve_float(behavior, &vertices),
    };
    let weights = match weights {
        Some(w) => w,
        None => {
            return Ok(MembershipResult {
                n,
                k,
                is_member: false,
                weights: Vec::new(),
                mode: Some(mode),
            })
        }
    };
    Ok(MembershipResult {
        n,
        k,
        is_member: true,
        weights: vertices
            .into_iter()
            .zip(weights)
            .filter(|(_, l)| *l > 0.0)
            .map(|(vertex, lambda)| WeightedVertex { vertex, lambda })
            .collect(),
        mode: Some(mode),
    })
}

/// Rows: normalisation, then one per input index.
fn lp_column<T>(v: &DeterministicVertex, n: usize, one: T, zero: T) -> Vec<T>
where
    T: Clone,
{
    let mut col = Vec::with_capacity((1 << n) + 1);
    col.push(one.clone());
    col.extend((0..1usize << n).map(|x| {
        if v.output(x) {
            one.clone()
        } else {
            zero.clone()
        }
    }));
    col
}

fn solve_exact(behavior: &Behavior, vertices: &[DeterministicVertex]) -> Option<Vec<f64>> {
    let n = behavior.n_locations();
    let one = rational_from_f64(1.0);
    let zero = rational_from_f64(0.0);
    let columns: Vec<Vec<BigRational>> = vertices
        .iter()
        .map(|v| lp_column(v, n, one.clone(), zero.clone()))
        .collect();
    let mut b = vec![one];
    b.extend(behavior.table().iter().map(|&p| rational_from_f64(p)));
    find_feasible_point(&columns, &b).map(|x| x.iter().map(rational_to_f64).collect())
}

fn solve_float(behavior: &Behavior, vertices: &[DeterministicVertex]) -> Option<Vec<f64>> {
    let n = behavior.n_locations();
    let columns: Vec<Vec<f64>> = vertices.iter().map(|v| lp_column(v, n, 1.0, 0.0)).collect();
    let mut b = vec![1.0];
    b.extend_from_slice(behavior.table());
    let x = find_feasible_point(&columns, &b)?;
    Some(x.into_iter().map(|l| l.max(0.0)).collect())
}

/// At `k = N` every behaviour is a member: cutting `[0, 1]` at the sorted
/// distinct table values yields deterministic tables `x ↦ [P(1|x) > t]`
/// whose interval lengths are the weights.
fn threshold_decomposition(behavior: &Behavior, mode: LpMode) -> MembershipResult {
    let n = behavior.n_locations();
    let mut cuts: Vec<f64> = behavior.table().to_vec();
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();
    let locations: Vec<usize> = (1..=n).collect();
    let weights = cuts
        .windows(2)
        .map(|w| {
            let t = w[0];
            let table = behavior.table().iter().map(|&p| p > t).collect();
            WeightedVertex {
                vertex: DeterministicVertex::new(locations.clone(), table)
                    .expect("full location set with 2^N entries"),
                lambda: w[1] - w[0],
            }
        })
        .filter(|w| w.lambda > 0.0)
        .collect();
    MembershipResult {
        n,
        k: n,
        is_member: true,
        weights,
        mode: Some(mode),
    }
}
