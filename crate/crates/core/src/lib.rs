//! # kway
//!
//! Classical bounds on k-way signaling and their violation by a single
//! particle sent in spatial superposition.
//!
//! A party receives one bit from each of `N` remote locations and must
//! answer with one bit. If it can only reach `k < N` locations per round its
//! input/output table is a mixture of deterministic strategies that each read
//! `k` inputs; those tables form a polytope. The witness
//!
//! ```text
//! B = −P(1|0…0) + Σᵢ P(1|eᵢ) ≤ N − 1
//! ```
//!
//! holds on every such table, so exceeding it certifies that all `N` inputs
//! were read. One particle in a uniform superposition over the `N` paths,
//! with each location imprinting a phase `e^{iφᵢxᵢ}`, exceeds the bound.
//! Repeating the query with the inversion about the mean in between reaches
//! near-certain success in `O(√N)` rounds, where classical reading needs `O(N)`.
//!
//! ## Modules
//!
//! - [`signaling`]: behaviour tables, `B`, game winning probabilities.
//! - [`polytope`]: deterministic vertices, exact and floating LP membership.
//! - [`linalg`]: Hermitian eigensolver, trace norm, positive-part projector.
//! - [`quantum`]: encoded states, Helstrom discrimination, numeric and closed-form violation.
//! - [`grover`]: multi-query states and the quantum/classical comparison curve.
//! - [`report`]: CSV / JSON rows; [`cli`]: the `kway` command surface.
//!
//! Every capability has a runnable program under `examples/`:
//!
//! ```bash
//! cargo run --release --example two_mode_saturation
//! ```

pub mod cli;
pub mod error;
pub mod grover;
pub mod linalg;
pub mod polytope;
pub mod quantum;
pub mod report;
pub mod signaling;

pub use error::{Error, Result};
