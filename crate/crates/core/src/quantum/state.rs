use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::signaling::bit;

const NORM_TOL: f64 = 1e-12;

/// Normalised amplitude vector over the `N` spatial modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: CVector,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::TooFewLocations { n: 0, min: 1 });
        }
        let v = CVector::from_vec(amplitudes);
        let norm2 = v.norm_squared();
        if norm2.is_nan() || (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm2));
        }
        Ok(PureState { amplitudes: v })
    }

    /// Skips the norm check; callers build the vector from unitary operations.
    pub(crate) fn from_vector_unchecked(amplitudes: CVector) -> Self {
        PureState { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn amplitude(&self, mode: usize) -> Complex64 {
        self.amplitudes[mode]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Largest entrywise distance `|aᵢ − bᵢ|`.
    pub fn max_distance(&self, other: &PureState) -> f64 {
        (&self.amplitudes - &other.amplitudes)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `|ψ₀⟩ = N^{-1/2} Σₙ |n⟩`.
pub fn uniform_state(n: usize) -> Result<PureState> {
    if n == 0 {
        return Err(Error::TooFewLocations { n, min: 1 });
    }
    let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    Ok(PureState::from_vector_unchecked(CVector::from_element(
        n, a,
    )))
}

/// Oracle phases `φ₁…φ_N`, stored canonicalised to `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePattern {
    phases: Vec<f64>,
}

/// Maps an angle to `(−π, π]`.
pub fn canonical_angle(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

impl PhasePattern {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = phases.iter().find(|p| !p.is_finite()) {
            return Err(Error::NonFinitePhase(bad));
        }
        Ok(PhasePattern {
            phases: phases.into_iter().map(canonical_angle).collect(),
        })
    }

    /// Every location at `φ`.
    pub fn uniform(n: usize, phi: f64) -> Result<Self> {
        PhasePattern::new(vec![phi; n])
    }

    /// `⌈N/2⌉` locations at `+φ` followed by `⌊N/2⌋` at `−φ`.
    pub fn half_half(n: usize, phi: f64) -> Result<Self> {
        let plus = n - n / 2;
        PhasePattern::new((0..n).map(|i| if i < plus { phi } else { -phi }).collect())
    }

    /// The pattern the violation scans use: equal phases at `N = 2`,
    /// half/half `±φ` from `N = 3` on.
    pub fn standard(n: usize, phi: f64) -> Result<Self> {
        if n == 2 {
            PhasePattern::uniform(n, phi)
        } else {
            PhasePattern::half_half(n, phi)
        }
    }

    /// Shifts every phase by the same offset.
    pub fn shifted(&self, offset: f64) -> Result<Self> {
        PhasePattern::new(self.phases.iter().map(|p| p + offset).collect())
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

/// Multiplies amplitude `n` by `e^{i φₙ xₙ}`; `bits` is the input index with `x₁` least significant.
pub fn apply_phase_oracle(
    state: &PureState,
    bits: usize,
    pattern: &PhasePattern,
) -> Result<PureState> {
    let n = state.dim();
    if pattern.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: pattern.len(),
        });
    }
    if n < usize::BITS as usize && bits >> n != 0 {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: usize::BITS as usize - bits.leading_zeros() as usize,
        });
    }
    let mut v = state.amplitudes.clone();
    for (mode, a) in v.iter_mut().enumerate() {
        if bit(bits, mode) {
            *a *= Complex64::from_polar(1.0, pattern.phases[mode]);
        }
    }
    Ok(PureState::from_vector_unchecked(v))
}

/// The uniform state after the oracle has encoded `bits`.
pub fn encoded_state(bits: usize, pattern: &PhasePattern) -> Result<PureState> {
    apply_phase_oracle(&uniform_state(pattern.len())?, bits, pattern)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn uniform_examples() {
        let s = uniform_state(2).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!(close(s.amplitude(0), Complex64::new(r, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(r, 0.0)));
        assert_eq!(
            uniform_state(1).unwrap().amplitude(0),
            Complex64::new(1.0, 0.0)
        );
        assert!(uniform_state(4)
            .unwrap()
            .amplitudes()
            .iter()
            .all(|a| *a == Complex64::new(0.5, 0.0)));
        assert!(uniform_state(0).is_err());
    }

    #[test]
    fn all_zero_bits_is_identity() {
        let p = PhasePattern::new(vec![0.3, -1.2, 2.0]).unwrap();
        let s = uniform_state(3).unwrap();
        assert_eq!(apply_phase_oracle(&s, 0, &p).unwrap(), s);
    }

    #[test]
    fn pi_phase_on_first_mode() {
        let p = PhasePattern::uniform(2, PI).unwrap();
        let s = apply_phase_oracle(&uniform_state(2).unwrap(), 0b01, &p).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!(close(s.amplitude(0), Complex64::new(-r, 0.0)));
        assert!(close(s.amplitude(1), Complex64::new(r, 0.0)));
    }

    #[test]
    fn perturbed_phase_on_second_mode() {
        let eps = 0.3;
        let p = PhasePattern::uniform(2, PI - eps).unwrap();
        let s = apply_phase_oracle(&uniform_state(2).unwrap(), 0b10, &p).unwrap();
        let r = 1.0 / 2f64.sqrt();
        assert!(close(s.amplitude(0), Complex64::new(r, 0.0)));
        assert!(close(s.amplitude(1), Complex64::from_polar(r, PI - eps)));
    }

    #[test]
    fn oracle_preserves_norm() {
        let p = PhasePattern::new(vec![0.1, 0.7, -2.9, 3.0, 1.0]).unwrap();
        for x in 0..32 {
            let s = encoded_state(x, &p).unwrap();
            assert!((s.amplitudes().norm_squared() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn mismatches_rejected() {
        let p = PhasePattern::uniform(3, 1.0).unwrap();
        assert!(apply_phase_oracle(&uniform_state(2).unwrap(), 0, &p).is_err());
        assert!(apply_phase_oracle(&uniform_state(3).unwrap(), 0b1000, &p).is_err());
        assert!(PhasePattern::new(vec![f64::INFINITY]).is_err());
        assert!(PureState::new(vec![Complex64::new(0.5, 0.0)]).is_err());
    }

    #[test]
    fn canonicalisation() {
        assert_eq!(canonical_angle(PI), PI);
        assert!((canonical_angle(-PI) - PI).abs() < 1e-15);
        assert!((canonical_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(canonical_angle(0.5), 0.5);
    }

    #[test]
    fn half_half_layout() {
        assert_eq!(
            PhasePattern::half_half(4, 1.0).unwrap().phases(),
            &[1.0, 1.0, -1.0, -1.0]
        );
        assert_eq!(
            PhasePattern::half_half(5, 1.0).unwrap().phases(),
            &[1.0, 1.0, 1.0, -1.0, -1.0]
        );
        assert_eq!(
            PhasePattern::standard(2, 1.0).unwrap().phases(),
            &[1.0, 1.0]
        );
    }
}
