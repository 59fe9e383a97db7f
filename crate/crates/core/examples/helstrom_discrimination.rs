//! Optimal discrimination of the all-zero input against the one-hot inputs,
//! and a check that the projective measurement reaches the Helstrom value.

use std::f64::consts::PI;

use kway::quantum::{build_discrimination_pair, helstrom, PhasePattern};

fn main() -> kway::Result<()> {
    for (n, phi) in [(2, PI), (3, PI / 2.0), (4, 2.0), (8, 0.5)] {
        let pattern = PhasePattern::standard(n, phi)?;
        let pair = build_discrimination_pair(n, &pattern)?;
        let h = helstrom(pair.p0, &pair.rho0, pair.p1, &pair.rho1)?;
        let achieved = h
            .optimal
            .success_probability(pair.p0, &pair.rho0, pair.p1, &pair.rho1);
        let delta = 0.5 - n as f64 / 2.0 + (n as f64 + 1.0) * (h.max_pw - 0.5);
        println!(
            "N = {n:2}, phi = {phi:.4}: P_W = {:.12}, measured = {:.12}, delta = {:+.3e}",
            h.max_pw, achieved, delta
        );
    }
    Ok(())
}
