//! Cross-checking the state-machine shortest vector against a brute-force
//! enumeration that knows nothing about the machine: it scans the lattice
//! directly under the planar Hermite bound `lambda_1^2 <= 2m/sqrt(3)`,
//! evaluated in exact integer arithmetic.
//!
//! Usage: `cargo run --example brute_force_oracle [-- a m]`
//! (runtime grows like sqrt(m); the oracle refuses m above 10^12)

use dayan::lattice::{self, LatticeParams};
use num_bigint::BigUint;

fn args_or(default_a: u32, default_m: u32) -> (BigUint, BigUint) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [a, m] => (
            a.parse().expect("a must be a decimal integer"),
            m.parse().expect("m must be a decimal integer"),
        ),
        [] => (BigUint::from(default_a), BigUint::from(default_m)),
        _ => panic!("usage: brute_force_oracle [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let params = LatticeParams::new(a.clone(), m.clone())
        .expect("inputs must be coprime with 1 < a < m");

    // First two successive minima by direct enumeration.
    let minima = lattice::oracle_shortest(&params, 2).expect("m is within the default cap");
    println!("successive minima of L({a}, {m}) by brute force:");
    for (i, (v, norm_sq)) in minima.iter().enumerate() {
        println!("  lambda_{}: {v} with norm_sq = {norm_sq}", i + 1);
        assert!(lattice::contains(&params, v));
    }
    println!();

    // The first minimum must satisfy the planar Hermite bound.
    let lambda1 = &minima[0].1;
    assert!(lattice::hermite_bound_holds(lambda1, &m));
    println!("Hermite bound: 3*({lambda1})^2 <= 4*{m}^2 holds");
    println!();

    // The state-machine answer must agree exactly on the minimum norm.
    let trace = dayan::qin::run(&a, &m).expect("validated above");
    let report = lattice::shortest_via_states(&trace);
    println!(
        "state scan reports {} with norm_sq = {}",
        report.shortest, report.norm_sq
    );
    assert_eq!(&report.norm_sq, lambda1);
    println!("state scan and brute force agree on the minimum norm");
}
