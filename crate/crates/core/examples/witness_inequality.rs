//! Evaluating the witness `B` and the two guessing games on hand-built tables.

use kway::signaling::{classical_win_bound, eval_b, win_prob_game1, win_prob_game2, Behavior};

fn main() -> kway::Result<()> {
    let n = 3;

    // Answer 1 iff any bit is set: reads every input, saturates B = N.
    let or_table = Behavior::from_fn(n, |x| if x != 0 { 1.0 } else { 0.0 })?;
    // Always answer 1: reads nothing, B = N − 1.
    let always = Behavior::constant(n, 1.0)?;
    // Fair coin.
    let coin = Behavior::constant(n, 0.5)?;

    for (name, b) in [
        ("OR of all bits", &or_table),
        ("always 1", &always),
        ("fair coin", &coin),
    ] {
        println!(
            "{name:15} B = {:5.2}  game1 = {:.4}  game2 = {:.4}",
            eval_b(b),
            win_prob_game1(b),
            win_prob_game2(b)
        );
    }

    println!("\nclassical game-2 bound with k of {n} locations readable:");
    for k in 0..=n {
        println!("  k = {k}: {:.4}", classical_win_bound(n, k)?);
    }

    let mixed = or_table.mix(&always, 0.5)?;
    println!("\nhalf/half mixture: B = {:.3}", eval_b(&mixed));
    Ok(())
}
