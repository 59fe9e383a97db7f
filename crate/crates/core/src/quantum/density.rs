use crate::error::{Error, Result};
use crate::linalg::{self, HermitianOp};
use crate::quantum::state::PureState;

/// Tolerance on trace, positivity and POVM completeness.
pub const DENSITY_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    op: HermitianOp,
}

impl DensityOperator {
    /// Validates trace and positivity (one eigenvalue computation).
    pub fn new(op: HermitianOp) -> Result<Self> {
        let tr = op.trace();
        if tr.is_nan() || (tr - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = linalg::eigenvalues(&op).first().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("min eigenvalue {min}")));
        }
        Ok(DensityOperator { op })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(state: &PureState) -> Self {
        DensityOperator {
            op: HermitianOp::outer(state.amplitudes()),
        }
    }

    /// Uniform average of pure states, all of the same dimension.
    pub fn uniform_mixture(states: &[PureState]) -> Result<Self> {
        let first = states
            .first()
            .ok_or(Error::TooFewLocations { n: 0, min: 1 })?;
        let dim = first.dim();
        let mut m = crate::linalg::CMatrix::zeros(dim, dim);
        for s in states {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: s.dim(),
                });
            }
            let v = s.amplitudes();
            m += v * v.adjoint();
        }
        m /= num_complex::Complex64::new(states.len() as f64, 0.0);
        Ok(DensityOperator {
            op: HermitianOp::new(m)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOp {
        &self.op
    }
}

/// Two-outcome measurement `{Π₀, Π₁}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryPOVM {
    pub pi0: HermitianOp,
    pub pi1: HermitianOp,
}

impl BinaryPOVM {
    /// Checks `Π₀ + Π₁ = 1` and positivity of both elements.
    pub fn new(pi0: HermitianOp, pi1: HermitianOp) -> Result<Self> {
        let dim = pi0.dim();
        let sum = pi0.add(&pi1)?;
        let dev = sum
            .sub(&HermitianOp::identity(dim))?
            .matrix()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > DENSITY_TOL {
            return Err(Error::InvalidPovm(format!(
                "Π₀ + Π₁ deviates from 1 by {dev:e}"
            )));
        }
        for (name, p) in [("Π₀", &pi0), ("Π₁", &pi1)] {
            let min = linalg::eigenvalues(p).first().copied().unwrap_or(0.0);
            if min < -DENSITY_TOL {
                return Err(Error::InvalidPovm(format!("{name} has eigenvalue {min}")));
            }
        }
        Ok(BinaryPOVM { pi0, pi1 })
    }

    /// `{1 − P, P}` for an orthogonal projector `P`, trusted without checks.
    pub(crate) fn from_projector(p: HermitianOp) -> Self {
        let dim = p.dim();
        let pi0 = HermitianOp::identity(dim).sub(&p).expect("same dimension");
        BinaryPOVM { pi0, pi1: p }
    }

    pub fn dim(&self) -> usize {
        self.pi0.dim()
    }

    /// `Tr(Π₁ ρ)`.
    pub fn prob_one(&self, rho: &DensityOperator) -> f64 {
        self.pi1.trace_product(rho.op())
    }

    /// `⟨ψ|Π₁|ψ⟩`.
    pub fn prob_one_pure(&self, state: &PureState) -> f64 {
        self.pi1.expectation(state.amplitudes())
    }

    /// `p₀ Tr(Π₀ρ₀) + p₁ Tr(Π₁ρ₁)`.
    pub fn success_probability(
        &self,
        p0: f64,
        rho0: &DensityOperator,
        p1: f64,
        rho1: &DensityOperator,
    ) -> f64 {
        p0 * self.pi0.trace_product(rho0.op()) + p1 * self.pi1.trace_product(rho1.op())
    }
}

/// Optimal two-state discrimination.
#[derive(Debug, Clone)]
pub struct HelstromResult {
    pub max_pw: f64,
    pub optimal: BinaryPOVM,
}

fn weighted_difference(
    p0: f64,
    rho0: &DensityOperator,
    p1: f64,
    rho1: &DensityOperator,
) -> Result<HermitianOp> {
    if !(p0 >= 0.0 && p1 >= 0.0) || (p0 + p1 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidPriors { sum: p0 + p1 });
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            got: rho1.dim(),
        });
    }
    rho1.op().scale(p1).sub(&rho0.op().scale(p0))
}

/// Best success probability `½(1 + ‖p₁ρ₁ − p₀ρ₀‖₁)` without building the measurement.
pub fn helstrom_value(
    p0: f64,
    rho0: &DensityOperator,
    p1: f64,
    rho1: &DensityOperator,
) -> Result<f64> {
    let gamma = weighted_difference(p0, rho0, p1, rho1)?;
    Ok(0.5 * (1.0 + linalg::trace_norm(&gamma)))
}

/// Helstrom value and the measurement reaching it: `Π₁` projects onto the
/// positive part of `p₁ρ₁ − p₀ρ₀`, its null space goes to `Π₀`.
pub fn helstrom(
    p0: f64,
    rho0: &DensityOperator,
    p1: f64,
    rho1: &DensityOperator,
) -> Result<HelstromResult> {
    let gamma = weighted_difference(p0, rho0, p1, rho1)?;
    let max_pw = 0.5 * (1.0 + linalg::trace_norm(&gamma));
    let optimal = BinaryPOVM::from_projector(linalg::positive_eigenspace_projector(&gamma));
    Ok(HelstromResult { max_pw, optimal })
}
