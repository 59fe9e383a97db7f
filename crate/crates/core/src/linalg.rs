//! Dense complex Hermitian operators and the spectral routines the
//! discrimination code needs: eigendecomposition, trace norm and the
//! projector onto the positive eigenspace.
//!
//! The eigensolver is nalgebra's Hermitian tridiagonalisation followed by
//! implicit QR. Operators whose imaginary parts are all exactly zero take the
//! real symmetric path, which is several times cheaper at large dimension.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `|H(i,j) − conj(H(j,i))|` accepted as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues with `|λ| ≤` this count as zero when splitting eigenspaces.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-10;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// A dense Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    m: CMatrix,
}

/// Ascending eigenvalues with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl HermitianOp {
    /// Checks conjugate symmetry within [`HERMITIAN_TOL`], then stores the
    /// exactly Hermitian part `(H + H†)/2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let dev = max_hermitian_deviation(&m);
        if dev.is_nan() || dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let sym = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        Ok(HermitianOp { m: sym })
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        HermitianOp::new(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianOp {
            m: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        HermitianOp {
            m: CMatrix::identity(dim, dim),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let d =
            DVector::from_iterator(values.len(), values.iter().map(|&x| Complex64::new(x, 0.0)));
        HermitianOp {
            m: CMatrix::from_diagonal(&d),
        }
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &CVector) -> Self {
        HermitianOp { m: v * v.adjoint() }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr(self · other)`, real for Hermitian arguments.
    pub fn trace_product(&self, other: &HermitianOp) -> f64 {
        // Tr(AB) = Σ_ij A_ij B_ji = Σ_ij A_ij conj(B_ij)
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a * b.conj()).re)
            .sum()
    }

    /// `⟨v|self|v⟩`.
    pub fn expectation(&self, v: &CVector) -> f64 {
        v.dotc(&(&self.m * v)).re
    }

    pub fn scale(&self, c: f64) -> Self {
        HermitianOp {
            m: &self.m * Complex64::new(c, 0.0),
        }
    }

    pub fn add(&self, other: &HermitianOp) -> Result<Self> {
        self.check_dim(other)?;
        Ok(HermitianOp {
            m: &self.m + &other.m,
        })
    }

    pub fn sub(&self, other: &HermitianOp) -> Result<Self> {
        self.check_dim(other)?;
        Ok(HermitianOp {
            m: &self.m - &other.m,
        })
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.nrows(),
            });
        }
        let m = u * &self.m * u.adjoint();
        Ok(HermitianOp {
            m: (&m + m.adjoint()) * Complex64::new(0.5, 0.0),
        })
    }

    fn check_dim(&self, other: &HermitianOp) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    fn is_real(&self) -> bool {
        self.m.iter().all(|z| z.im == 0.0)
    }
}

fn max_hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if !d.is_finite() {
                return f64::NAN;
            }
            dev = dev.max(d);
        }
    }
    dev
}

/// Full eigendecomposition, eigenvalues ascending.
pub fn eigh(h: &HermitianOp) -> EigenDecomposition {
    let n = h.dim();
    let (values, vectors) = if h.is_real() {
        let eig = h.m.map(|z| z.re).symmetric_eigen();
        (
            eig.eigenvalues.iter().copied().collect::<Vec<_>>(),
            eig.eigenvectors.map(|x| Complex64::new(x, 0.0)),
        )
    } else {
        let eig = h.m.clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = CMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(h: &HermitianOp) -> Vec<f64> {
    let mut values: Vec<f64> = if h.is_real() {
        h.m.map(|z| z.re)
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect()
    } else {
        h.m.symmetric_eigenvalues().iter().copied().collect()
    };
    values.sort_by(|a, b| a.total_cmp(b));
    values
}

/// `‖H‖₁ = Σ |λᵢ|`.
pub fn trace_norm(h: &HermitianOp) -> f64 {
    eigenvalues(h).iter().map(|l| l.abs()).sum()
}

/// Trace norm of a real symmetric matrix, without widening it to complex storage.
pub fn symmetric_trace_norm(m: &DMatrix<f64>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    let n = m.nrows();
    let mut dev = 0.0f64;
    for j in 0..n {
        for i in j + 1..n {
            dev = dev.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    if dev.is_nan() || dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(m.symmetric_eigenvalues().iter().map(|l| l.abs()).sum())
}

/// Orthogonal projector onto the span of eigenvectors with `λ > ZERO_EIGENVALUE_TOL`.
/// The null space goes to the complement.
pub fn positive_eigenspace_projector(h: &HermitianOp) -> HermitianOp {
    let eig = eigh(h);
    let n = h.dim();
    let mut p = CMatrix::zeros(n, n);
    for (c, &l) in eig.eigenvalues.iter().enumerate() {
        if l > ZERO_EIGENVALUE_TOL {
            let v = eig.eigenvectors.column(c);
            p += v * v.adjoint();
        }
    }
    HermitianOp {
        m: (&p + p.adjoint()) * Complex64::new(0.5, 0.0),
    }
}

impl EigenDecomposition {
    /// `max |V Λ V† − H|` over entries.
    pub fn reconstruction_error(&self, h: &HermitianOp) -> f64 {
        let lambda = CMatrix::from_diagonal(&DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| Complex64::new(l, 0.0)),
        ));
        let rebuilt = &self.eigenvectors * lambda * self.eigenvectors.adjoint();
        (rebuilt - h.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |V†V − I|` over entries.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.eigenvectors.ncols();
        let gram = self.eigenvectors.adjoint() * &self.eigenvectors;
        (gram - CMatrix::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}
