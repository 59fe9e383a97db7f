//! Enumerates the k-way deterministic strategies and tests LP membership.

use kway::polytope::{enumerate_vertices, is_k_way, max_b_over_vertices};
use kway::signaling::{eval_b, Behavior};

fn main() -> kway::Result<()> {
    for n in 2..=3 {
        for k in 1..=n {
            println!(
                "N = {n}, k = {k}: {:3} vertices, max B = {}",
                enumerate_vertices(n, k)?.len(),
                max_b_over_vertices(n, k)?
            );
        }
    }

    // The OR table reaches B = 3 and therefore needs all three inputs.
    let or_table = Behavior::from_fn(3, |x| if x != 0 { 1.0 } else { 0.0 })?;
    println!("\nOR table: B = {}", eval_b(&or_table));
    for k in 1..=3 {
        let m = is_k_way(&or_table, k)?;
        println!("  {k}-way member: {}", m.is_member);
    }

    // x₁ AND x₂ mixed with a constant is 2-way; the certificate lists the vertices used.
    let and12 = Behavior::from_fn(3, |x| if x & 0b011 == 0b011 { 1.0 } else { 0.0 })?;
    let m = is_k_way(&and12.mix(&Behavior::constant(3, 1.0)?, 0.3)?, 2)?;
    println!(
        "\n0.3·AND(x1,x2) + 0.7·const: 2-way member = {}",
        m.is_member
    );
    for w in &m.weights {
        println!(
            "  λ = {:.3} on locations {:?}",
            w.lambda,
            w.vertex.locations()
        );
    }
    Ok(())
}
