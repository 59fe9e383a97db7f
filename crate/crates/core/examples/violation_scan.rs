//! Largest violation over φ for each N, the data behind a δ_max(N) plot.

use kway::quantum::delta_max;

fn main() -> kway::Result<()> {
    println!(" N   phi*       delta_max");
    for n in 2..=20 {
        let d = delta_max(n)?;
        println!("{n:2}   {:.6}   {:.6e}", d.phi, d.delta);
    }
    Ok(())
}
