//! Repeated queries with inversion about the mean: the quantum success curve
//! against the best classical strategy reading one location per query.

use kway::grover::{optimal_query_count, quantum_win_prob, speedup_curve, success_overlap};

fn main() -> kway::Result<()> {
    let n = 64;
    let k_opt = optimal_query_count(n)?;
    println!(
        "N = {n}: optimal query count {k_opt}, overlap {:.6}\n",
        success_overlap(n, k_opt)
    );
    println!(" k   quantum    classical  gap");
    for row in speedup_curve(n, k_opt + 2)? {
        println!(
            "{:2}   {:.6}   {:.6}   {:+.6}",
            row.k, row.p_quantum, row.p_classical, row.gap
        );
    }

    println!("\n   N   k*   N(1 - P_W)");
    for n in [16, 64, 256] {
        let k = optimal_query_count(n)?;
        let p = quantum_win_prob(n, k)?;
        println!("{n:4}  {k:3}   {:.4}", n as f64 * (1.0 - p));
    }
    Ok(())
}
