//! Where the half/half ±φ pattern starts to violate, and how the closed-form
//! spectrum compares with the eigensolver.

use kway::quantum::{delta_closed_form, delta_numeric, violation_threshold, PhasePattern};

fn main() -> kway::Result<()> {
    println!(" N   threshold on cos(phi)");
    for n in 3..=12 {
        let t = violation_threshold(n)?;
        println!("{n:2}   {t:.6}");
    }

    let n = 7;
    println!("\nN = {n}:   phi    closed form     numeric        regime");
    for i in 1..=10 {
        let phi = i as f64 * 0.15;
        let (closed, spectrum) = delta_closed_form(n, phi)?;
        let numeric = delta_numeric(n, &PhasePattern::half_half(n, phi)?)?;
        println!(
            "       {phi:5.2}  {closed:.6e}  {numeric:.6e}  {}",
            spectrum.regime
        );
    }
    Ok(())
}
