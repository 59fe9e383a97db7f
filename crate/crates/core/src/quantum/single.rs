//! One query with a single particle in uniform spatial superposition.
//!
//! The all-zero input leaves `|ψ₀⟩` unchanged; a one-hot input `eᵢ` imprints
//! `e^{iφᵢ}` on mode `i`. The optimal `B` is fixed by the trace norm of
//! `p₁ρ₁ − p₀ρ₀` with `p₀ = 1/(N+1)`, `p₁ = N/(N+1)`, `ρ₁` the average of the
//! one-hot states, giving the violation
//!
//! ```text
//! δ = ½ − N/2 + (N+1)/2 · ‖p₁ρ₁ − p₀ρ₀‖₁
//! ```
//!
//! For the half/half `±φ` pattern the operator is a multiple of the identity
//! plus a rank-two block, so its spectrum has a closed form. The numeric and
//! closed-form paths are kept fully independent so each checks the other.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::quantum::density::{helstrom, BinaryPOVM, DensityOperator};
use crate::quantum::state::{encoded_state, PhasePattern};
use crate::signaling::{one_hot, Behavior};

/// Largest N for which a full induced behaviour table is built.
pub const MAX_INDUCED_LOCATIONS: usize = 16;

/// Priors and states of the two hypotheses: all-zero input versus one of the one-hot inputs.
#[derive(Debug, Clone)]
pub struct DiscriminationPair {
    pub p0: f64,
    pub rho0: DensityOperator,
    pub p1: f64,
    pub rho1: DensityOperator,
}

pub fn build_discrimination_pair(n: usize, pattern: &PhasePattern) -> Result<DiscriminationPair> {
    if n < 2 {
        return Err(Error::TooFewLocations { n, min: 2 });
    }
    if pattern.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pattern.len(),
        });
    }
    let rho0 = DensityOperator::pure(&encoded_state(0, pattern)?);
    let one_hot_states = (0..n)
        .map(|i| encoded_state(one_hot(i), pattern))
        .collect::<Result<Vec<_>>>()?;
    let rho1 = DensityOperator::uniform_mixture(&one_hot_states)?;
    let nf = n as f64;
    Ok(DiscriminationPair {
        p0: 1.0 / (nf + 1.0),
        rho0,
        p1: nf / (nf + 1.0),
        rho1,
    })
}

fn delta_from_trace_norm(n: usize, trace_norm: f64) -> f64 {
    let nf = n as f64;
    0.5 - nf / 2.0 + (nf + 1.0) / 2.0 * trace_norm
}

/// Violation `δ` from an explicit eigendecomposition of `p₁ρ₁ − p₀ρ₀`.
pub fn delta_numeric(n: usize, pattern: &PhasePattern) -> Result<f64> {
    let pair = build_discrimination_pair(n, pattern)?;
    let gamma = pair
        .rho1
        .op()
        .scale(pair.p1)
        .sub(&pair.rho0.op().scale(pair.p0))?;
    Ok(delta_from_trace_norm(n, linalg::trace_norm(&gamma)))
}

/// Whether the half/half pattern beats the `N − 1` bound at this angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    NoViolation,
    Violation,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::NoViolation => "no_violation",
            Regime::Violation => "violation",
        })
    }
}

/// Spectrum of `(N+1)(p₁ρ₁ − p₀ρ₀)` for the half/half pattern: the rank-two
/// block `λ±` sits on top of the identity part `bulk` (`d = (2/N)(1 − cos φ)`),
/// and `N − 2` eigenvalues equal `bulk`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedFormSpectrum {
    /// `A = N − 3 + 2 cos φ`.
    pub a_coef: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `(2/N)(1 − cos φ)/(N + 1)`, multiplicity `N − 2`.
    pub bulk_eigenvalue: f64,
    pub regime: Regime,
}

impl ClosedFormSpectrum {
    /// All `N` eigenvalues of `p₁ρ₁ − p₀ρ₀`, ascending.
    pub fn eigenvalues(&self, n: usize) -> Vec<f64> {
        let nf = n as f64;
        let mut out = vec![self.bulk_eigenvalue; n - 2];
        out.push(self.bulk_eigenvalue + self.lambda_plus / (nf + 1.0));
        out.push(self.bulk_eigenvalue + self.lambda_minus / (nf + 1.0));
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }
}

/// Squared off-diagonal entry of the rank-two block: `sin²φ` for even `N`,
/// `sin²φ (1 − 1/N²)` for odd `N`.
fn off_diagonal_sq(n: usize, phi: f64) -> f64 {
    let s2 = phi.sin().powi(2);
    if n.is_multiple_of(2) {
        s2
    } else {
        let nf = n as f64;
        s2 * (1.0 - 1.0 / (nf * nf))
    }
}

/// The violation-branch expression
/// `3/2 − N/2 − 2/N + (2/N) cos φ − cos φ + ½√(A² + 4s²)`, `s²` from the parity.
///
/// Defined for every `N ≥ 2`; it equals `δ` only inside the violation regime.
pub fn violation_branch(n: usize, phi: f64) -> f64 {
    let nf = n as f64;
    let c = phi.cos();
    let a = nf - 3.0 + 2.0 * c;
    1.5 - nf / 2.0 - 2.0 / nf + 2.0 / nf * c - c
        + 0.5 * (a * a + 4.0 * off_diagonal_sq(n, phi)).sqrt()
}

/// Closed-form `δ` for the half/half `±φ` pattern, `N ≥ 3`.
pub fn delta_closed_form(n: usize, phi: f64) -> Result<(f64, ClosedFormSpectrum)> {
    if n < 3 {
        return Err(Error::TooFewLocations { n, min: 3 });
    }
    let nf = n as f64;
    let c = phi.cos();
    let a = nf - 3.0 + 2.0 * c;
    let root = (a * a + 4.0 * off_diagonal_sq(n, phi)).sqrt();
    let lambda_plus = 0.5 * (a + root);
    let lambda_minus = 0.5 * (a - root);
    let d = 2.0 / nf * (1.0 - c);
    let regime = if d < lambda_minus.abs() && canonical_nonzero(phi) {
        Regime::Violation
    } else {
        Regime::NoViolation
    };
    let spectrum = ClosedFormSpectrum {
        a_coef: a,
        lambda_plus,
        lambda_minus,
        bulk_eigenvalue: d / (nf + 1.0),
        regime,
    };
    let delta = match regime {
        Regime::Violation => violation_branch(n, phi),
        Regime::NoViolation => 0.0,
    };
    Ok((delta, spectrum))
}

fn canonical_nonzero(phi: f64) -> bool {
    crate::quantum::state::canonical_angle(phi) != 0.0
}

/// Exact two-mode violation with both phases at `φ`: `max(0, −cos φ)`.
pub fn two_mode_delta(phi: f64) -> f64 {
    (-phi.cos()).max(0.0)
}

/// Lower bound on `cos φ` above which the half/half pattern violates the
/// `N − 1` bound.
///
/// Even `N`: `(N(N−6)+4)/(N−2)²`. Odd `N ≥ 5`: `(N−5)/(N−3)`. At `N = 3`
/// every `φ ≠ 0` violates, including `φ = π`, so the bound is `−∞`.
pub fn violation_threshold(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooFewLocations { n, min: 3 });
    }
    let nf = n as f64;
    Ok(if n.is_multiple_of(2) {
        (nf * (nf - 6.0) + 4.0) / ((nf - 2.0) * (nf - 2.0))
    } else if n == 3 {
        f64::NEG_INFINITY
    } else {
        (nf - 5.0) / (nf - 3.0)
    })
}

/// Behaviour table produced by measuring the encoded state of every input.
pub fn induced_behavior(n: usize, pattern: &PhasePattern, povm: &BinaryPOVM) -> Result<Behavior> {
    if pattern.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pattern.len(),
        });
    }
    if povm.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: povm.dim(),
        });
    }
    if n > MAX_INDUCED_LOCATIONS {
        return Err(Error::SizeGuard {
            what: "induced behavior locations",
            limit: MAX_INDUCED_LOCATIONS,
            got: n,
        });
    }
    let table = (0..1usize << n)
        .map(|x| encoded_state(x, pattern).map(|s| povm.prob_one_pure(&s)))
        .collect::<Result<Vec<_>>>()?;
    Behavior::new(n, table)
}

/// Helstrom-optimal measurement for the pattern and the behaviour it induces.
#[derive(Debug, Clone)]
pub struct OptimalScheme {
    pub max_pw: f64,
    pub povm: BinaryPOVM,
    pub behavior: Behavior,
}

pub fn optimal_scheme(n: usize, pattern: &PhasePattern) -> Result<OptimalScheme> {
    let pair = build_discrimination_pair(n, pattern)?;
    let h = helstrom(pair.p0, &pair.rho0, pair.p1, &pair.rho1)?;
    let behavior = induced_behavior(n, pattern, &h.optimal)?;
    Ok(OptimalScheme {
        max_pw: h.max_pw,
        povm: h.optimal,
        behavior,
    })
}

/// Largest violation over `φ` for the standard pattern.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaMax {
    pub n: usize,
    pub phi: f64,
    pub delta: f64,
}

/// Angle tolerance of the golden-section search.
pub const DELTA_MAX_PHI_TOL: f64 = 1e-6;

/// Maximises `delta_numeric` over `φ ∈ (0, φ*]`, `φ* = arccos(threshold)`
/// (or `π` when the threshold is below −1 or `N = 2`), by golden-section
/// search. The upper endpoint is compared explicitly since small `N` peak at `φ = π`.
pub fn delta_max(n: usize) -> Result<DeltaMax> {
    if n < 2 {
        return Err(Error::TooFewLocations { n, min: 2 });
    }
    let upper = if n == 2 {
        PI
    } else {
        let t = violation_threshold(n)?;
        if t <= -1.0 {
            PI
        } else {
            t.acos()
        }
    };
    let f = |phi: f64| -> Result<f64> { delta_numeric(n, &PhasePattern::standard(n, phi)?) };

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, upper);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > DELTA_MAX_PHI_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let mid = 0.5 * (lo + hi);
    let mut best = DeltaMax {
        n,
        phi: mid,
        delta: f(mid)?,
    };
    let at_upper = f(upper)?;
    if at_upper > best.delta {
        best = DeltaMax {
            n,
            phi: upper,
            delta: at_upper,
        };
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signaling::eval_b;
    use num_complex::Complex64;

    #[test]
    fn two_mode_pair_is_orthogonal() {
        let pair = build_discrimination_pair(2, &PhasePattern::uniform(2, PI).unwrap()).unwrap();
        assert!(pair.rho0.op().trace_product(pair.rho1.op()).abs() < 1e-15);
        // ρ₁ = |−⟩⟨−|
        for (i, j, v) in [(0, 0, 0.5), (0, 1, -0.5), (1, 1, 0.5)] {
            assert!((pair.rho1.op().entry(i, j) - Complex64::new(v, 0.0)).norm() < 1e-15);
        }
        assert!((pair.p0 - 1.0 / 3.0).abs() < 1e-16 && (pair.p1 - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn zero_phases_make_states_equal() {
        for n in 2..6 {
            let pair =
                build_discrimination_pair(n, &PhasePattern::uniform(n, 0.0).unwrap()).unwrap();
            let diff = pair.rho0.op().sub(pair.rho1.op()).unwrap();
            assert!(diff.matrix().iter().all(|z| z.norm() < 1e-15));
            assert!(
                delta_numeric(n, &PhasePattern::uniform(n, 0.0).unwrap())
                    .unwrap()
                    .abs()
                    < 1e-12
            );
        }
    }

    /// Brute-force average of the three one-hot states against the entry formula
    /// `[N + (1−δₙₘ)(e^{iφₙ} + e^{−iφₘ} − 2)]/N²`.
    #[test]
    fn three_mode_rho1_entries() {
        let pattern = PhasePattern::half_half(3, PI / 2.0).unwrap();
        let pair = build_discrimination_pair(3, &pattern).unwrap();
        let phases = pattern.phases();
        let mut brute = [[Complex64::new(0.0, 0.0); 3]; 3];
        for k in 0..3 {
            let amp: Vec<Complex64> = (0..3)
                .map(|n| {
                    let ph = if n == k { phases[n] } else { 0.0 };
                    Complex64::from_polar(1.0 / 3f64.sqrt(), ph)
                })
                .collect();
            for n in 0..3 {
                for m in 0..3 {
                    brute[n][m] += amp[n] * amp[m].conj() / 3.0;
                }
            }
        }
        for n in 0..3 {
            for m in 0..3 {
                let off = if n == m { 0.0 } else { 1.0 };
                let formula = (Complex64::new(3.0, 0.0)
                    + off
                        * (Complex64::from_polar(1.0, phases[n])
                            + Complex64::from_polar(1.0, -phases[m])
                            - 2.0))
                    / 9.0;
                assert!((brute[n][m] - formula).norm() < 1e-15);
                assert!((pair.rho1.op().entry(n, m) - formula).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn two_mode_saturates() {
        let d = delta_numeric(2, &PhasePattern::uniform(2, PI).unwrap()).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_mode_perturbation() {
        for eps in [0.1, 0.5, 1.0] {
            let d = delta_numeric(2, &PhasePattern::uniform(2, PI - eps).unwrap()).unwrap();
            assert!((d - f64::cos(eps)).abs() < 1e-12, "eps={eps}");
            assert!((two_mode_delta(PI - eps) - f64::cos(eps)).abs() < 1e-15);
        }
        // Past ε = π/2 the cosine goes negative but δ cannot.
        for i in 0..20 {
            let eps = PI * i as f64 / 19.0;
            let d = delta_numeric(2, &PhasePattern::uniform(2, PI - eps).unwrap()).unwrap();
            assert!((d - eps.cos().max(0.0)).abs() <= 1e-9, "eps={eps}");
        }
    }

    #[test]
    fn closed_form_matches_numeric_n4() {
        let (cf, spec) = delta_closed_form(4, PI / 2.0).unwrap();
        let num = delta_numeric(4, &PhasePattern::half_half(4, PI / 2.0).unwrap()).unwrap();
        assert!((cf - num).abs() < 1e-9);
        assert_eq!(spec.regime, Regime::Violation);
        assert!(cf > 0.0);
    }

    #[test]
    fn closed_form_vanishes_at_zero() {
        for n in [4, 6, 8] {
            let (d, spec) = delta_closed_form(n, 0.0).unwrap();
            assert_eq!(d, 0.0);
            assert_eq!(spec.regime, Regime::NoViolation);
            let (d, _) = delta_closed_form(n, 1e-6).unwrap();
            assert!(d.abs() < 1e-9);
        }
    }

    #[test]
    fn branch_formula_at_two_modes() {
        // A = −3 at φ = π, the middle terms cancel and the root is 3.
        assert!((violation_branch(2, PI) - 1.0).abs() < 1e-15);
        assert!(delta_closed_form(2, PI).is_err());
    }

    #[test]
    fn closed_form_spectrum_matches_eigensolver() {
        for n in [3, 4, 7, 10] {
            for phi in [0.3, 1.0, 2.5] {
                let (_, spec) = delta_closed_form(n, phi).unwrap();
                let pair = build_discrimination_pair(n, &PhasePattern::half_half(n, phi).unwrap())
                    .unwrap();
                let gamma = pair
                    .rho1
                    .op()
                    .scale(pair.p1)
                    .sub(&pair.rho0.op().scale(pair.p0))
                    .unwrap();
                let numeric = linalg::eigenvalues(&gamma);
                for (a, b) in spec.eigenvalues(n).iter().zip(&numeric) {
                    assert!((a - b).abs() < 1e-12, "n={n} phi={phi}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(violation_threshold(4).unwrap(), -1.0);
        assert_eq!(violation_threshold(6).unwrap(), 0.25);
        assert_eq!(violation_threshold(3).unwrap(), f64::NEG_INFINITY);
        assert_eq!(violation_threshold(7).unwrap(), 0.5);
        assert!(violation_threshold(2).is_err());
    }

    #[test]
    fn induced_two_mode_behavior() {
        let p = PhasePattern::uniform(2, PI).unwrap();
        let scheme = optimal_scheme(2, &p).unwrap();
        let expected = [0.0, 1.0, 1.0, 0.0];
        for (x, e) in expected.iter().enumerate() {
            assert!((scheme.behavior.p1(x) - e).abs() < 1e-12, "x={x}");
        }
        let zero = BinaryPOVM::new(
            crate::linalg::HermitianOp::identity(2),
            crate::linalg::HermitianOp::zeros(2),
        )
        .unwrap();
        assert_eq!(induced_behavior(2, &p, &zero).unwrap().table(), &[0.0; 4]);
    }

    #[test]
    fn induced_b_equals_bound_plus_delta() {
        let phi = (-0.5f64).acos();
        let p = PhasePattern::half_half(3, phi).unwrap();
        let scheme = optimal_scheme(3, &p).unwrap();
        let delta = delta_numeric(3, &p).unwrap();
        assert!((eval_b(&scheme.behavior) - (2.0 + delta)).abs() < 1e-9);
        assert!(delta > 0.0);
    }

    #[test]
    fn delta_max_small_n() {
        let d2 = delta_max(2).unwrap();
        assert!((d2.delta - 1.0).abs() < 1e-12);
        let d3 = delta_max(3).unwrap();
        assert!((d3.delta - 2.0 / 3.0).abs() < 1e-9);
        let d4 = delta_max(4).unwrap();
        assert!((d4.delta - 0.125).abs() < 1e-9, "{d4:?}");
    }
}
