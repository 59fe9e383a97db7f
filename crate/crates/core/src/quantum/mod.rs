//! Single-particle spatial-superposition encoding and optimal state discrimination.

mod density;
mod single;
mod state;

pub use density::{
    helstrom, helstrom_value, BinaryPOVM, DensityOperator, HelstromResult, DENSITY_TOL,
};
pub use single::{
    build_discrimination_pair, delta_closed_form, delta_max, delta_numeric, induced_behavior,
    optimal_scheme, two_mode_delta, violation_branch, violation_threshold, ClosedFormSpectrum,
    DeltaMax, DiscriminationPair, OptimalScheme, Regime, DELTA_MAX_PHI_TOL, MAX_INDUCED_LOCATIONS,
};
pub use state::{
    apply_phase_oracle, canonical_angle, encoded_state, uniform_state, PhasePattern, PureState,
};
