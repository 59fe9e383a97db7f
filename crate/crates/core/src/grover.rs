//! Repeated queries: the particle passes the π-phase oracle `k` times with
//! the inversion about the mean `U = 2|ψ₀⟩⟨ψ₀| − 1` after each pass, then the
//! all-zero and one-hot hypotheses are discriminated at priors ½/½.
//!
//! With location `i` marked the state after `k` queries is
//! `cos((2k+1)θ/2)|ī⟩ + sin((2k+1)θ/2)|i⟩`, `sin(θ/2) = 1/√N`. With nothing
//! marked it stays at `|ψ₀⟩`, a fixed point of `U`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::quantum::{uniform_state, PureState};
use crate::signaling::classical_win_bound;

/// Largest N for which the dense `N × N` state `ρ₁` is built and diagonalised.
pub const MAX_GROVER_LOCATIONS: usize = 8192;

/// `N` locations, `k` queries, optional 1-based marked location (none = all-zero input).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverRun {
    n: usize,
    k: usize,
    marked: Option<usize>,
}

impl GroverRun {
    pub fn new(n: usize, k: usize, marked: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewLocations { n, min: 1 });
        }
        if let Some(index) = marked {
            if index == 0 || index > n {
                return Err(Error::MarkedOutOfRange { index, n });
            }
        }
        Ok(GroverRun { n, k, marked })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn marked(&self) -> Option<usize> {
        self.marked
    }
}

/// `θ` with `sin(θ/2) = 1/√N`.
pub fn rotation_angle(n: usize) -> f64 {
    2.0 * (1.0 / (n as f64).sqrt()).asin()
}

/// Dense `2|ψ₀⟩⟨ψ₀| − 1`.
pub fn inversion_operator(n: usize) -> CMatrix {
    let off = Complex64::new(2.0 / n as f64, 0.0);
    CMatrix::from_fn(n, n, |i, j| if i == j { off - 1.0 } else { off })
}

/// `U v = 2⟨ψ₀|v⟩|ψ₀⟩ − v`, applied in `O(N)`.
fn invert_about_mean(v: &mut CVector) {
    let mean = v.sum() / v.len() as f64;
    for a in v.iter_mut() {
        *a = 2.0 * mean - *a;
    }
}

/// Applies `k` rounds of (oracle, then `U`) to `|ψ₀⟩` step by step.
pub fn grover_state_iterative(run: &GroverRun) -> PureState {
    let start = uniform_state(run.n).expect("n >= 1 checked by GroverRun");
    let Some(marked) = run.marked else {
        return start;
    };
    let mut v = start.amplitudes().clone();
    for _ in 0..run.k {
        v[marked - 1] = -v[marked - 1];
        invert_about_mean(&mut v);
    }
    PureState::from_vector_unchecked(v)
}

/// Real amplitudes `(on marked, on each other location)` after `k` queries.
fn closed_amplitudes(n: usize, k: usize) -> (f64, f64) {
    let angle = (2 * k + 1) as f64 * rotation_angle(n) / 2.0;
    (angle.sin(), angle.cos() / ((n - 1) as f64).sqrt())
}

/// The two-dimensional rotation formula for the state after `k` queries.
pub fn grover_state_closed(run: &GroverRun) -> Result<PureState> {
    let marked = run.marked.ok_or(Error::MissingMarked)?;
    if run.n < 2 {
        return Err(Error::TooFewLocations { n: run.n, min: 2 });
    }
    let (on, off) = closed_amplitudes(run.n, run.k);
    let v = CVector::from_fn(run.n, |j, _| {
        Complex64::new(if j == marked - 1 { on } else { off }, 0.0)
    });
    Ok(PureState::from_vector_unchecked(v))
}

/// Probability of finding the particle at the marked location after `k` queries.
pub fn success_overlap(n: usize, k: usize) -> f64 {
    let angle = (2 * k + 1) as f64 * rotation_angle(n) / 2.0;
    angle.sin().powi(2)
}

/// The `k ∈ [1, ⌈π√N/4⌉ + 1]` maximising [`success_overlap`]; ties go to the smaller `k`.
pub fn optimal_query_count(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::TooFewLocations { n, min: 2 });
    }
    let upper = (PI * (n as f64).sqrt() / 4.0).ceil() as usize + 1;
    let mut best = (1, success_overlap(n, 1));
    for k in 2..=upper {
        let p = success_overlap(n, k);
        // Ties (up to rounding) keep the smaller k.
        if p > best.1 + 1e-12 {
            best = (k, p);
        }
    }
    Ok(best.0)
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::TooFewLocations { n, min: 2 });
    }
    if n > MAX_GROVER_LOCATIONS {
        return Err(Error::SizeGuard {
            what: "grover locations",
            limit: MAX_GROVER_LOCATIONS,
            got: n,
        });
    }
    Ok(())
}

/// `ρ₁ = (1/N) Σᵢ |ψ_k⁽ⁱ⁾⟩⟨ψ_k⁽ⁱ⁾|` as a dense real matrix.
///
/// The oracle phases are ±1, so every amplitude is real. Column `i` of the
/// state matrix is the closed-form state with location `i` marked and
/// `ρ₁ = ΨΨᵀ/N`.
pub fn averaged_marked_state(n: usize, k: usize) -> Result<DMatrix<f64>> {
    check_size(n)?;
    let (on, off) = closed_amplitudes(n, k);
    let psi = DMatrix::from_fn(n, n, |r, c| if r == c { on } else { off });
    Ok(&psi * psi.transpose() / n as f64)
}

/// Exact Helstrom value `½(1 + ½‖ρ₁ − ρ₀‖₁)` of the half/half game after `k` queries.
pub fn quantum_win_prob(n: usize, k: usize) -> Result<f64> {
    let mut diff = averaged_marked_state(n, k)?;
    let rho0_entry = 1.0 / n as f64;
    diff.iter_mut().for_each(|x| *x -= rho0_entry);
    let norm = linalg::symmetric_trace_norm(&diff)?;
    Ok(0.5 * (1.0 + 0.5 * norm))
}

/// One point of the query/probability comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedupRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub p_quantum: f64,
    pub p_classical: f64,
    pub gap: f64,
}

/// Quantum and classical winning probabilities for `k = 0..=k_max`.
pub fn speedup_curve(n: usize, k_max: usize) -> Result<Vec<SpeedupRow>> {
    check_size(n)?;
    if k_max > n {
        return Err(Error::TooManyQueries { k: k_max, n });
    }
    (0..=k_max)
        .map(|k| {
            let p_quantum = quantum_win_prob(n, k)?;
            let p_classical = classical_win_bound(n, k)?;
            Ok(SpeedupRow {
                n,
                k,
                p_quantum,
                p_classical,
                gap: p_quantum - p_classical,
            })
        })
        .collect()
}
