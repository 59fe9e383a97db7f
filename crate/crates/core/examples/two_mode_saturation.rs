//! Two locations, one particle: the phase `π` on both paths lets the receiver
//! read `x₁ ⊕ x₂`-style information from a single query and pushes `B` to its
//! logical maximum of 2.

use std::f64::consts::PI;

use kway::quantum::{delta_numeric, optimal_scheme, two_mode_delta, PhasePattern};
use kway::signaling::eval_b;

fn main() -> kway::Result<()> {
    let n = 2;
    let pattern = PhasePattern::uniform(n, PI)?;
    let scheme = optimal_scheme(n, &pattern)?;

    println!("Helstrom success probability: {:.12}", scheme.max_pw);
    println!(
        "B of the induced behaviour:   {:.12} (classical bound 1)",
        eval_b(&scheme.behavior)
    );
    println!(
        "P(1|x) table (x = 00, 10, 01, 11): {:?}",
        scheme.behavior.table()
    );

    println!("\n   eps     delta(pi - eps)   max(0, cos eps)");
    for i in 0..=8 {
        let eps = i as f64 * PI / 8.0;
        let d = delta_numeric(n, &PhasePattern::uniform(n, PI - eps)?)?;
        println!("{eps:7.4}  {d:16.12}  {:16.12}", two_mode_delta(PI - eps));
    }
    Ok(())
}
