//! Drives the command surface in-process and prints the CSV it would emit.

use kway::cli::run_from_args;

fn main() {
    for args in [
        vec!["kway", "violation", "--n", "2", "--phi", "3.14159265"],
        vec!["kway", "grover", "--n", "4"],
        vec!["kway", "polytope", "--n", "3", "--k", "2"],
        vec![
            "kway", "witness", "--n", "3", "--phi", "1.5708", "--format", "json",
        ],
        vec!["kway", "scan", "--n-min", "2", "--n-max", "5"],
    ] {
        let out = run_from_args(&args);
        println!("$ {}  (exit {})", args[1..].join(" "), out.exit_code);
        print!("{}", out.output);
        println!();
    }
}
