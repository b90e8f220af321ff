//! The continued fraction a run computes on the side: its expansion of
//! `a/m`, the convergents mirrored inside the states, and the classical
//! identities checked as exact integer statements.
//!
//! Usage: `cargo run --example continued_fractions [-- a m]`

use dayan::cf;
use num_bigint::BigUint;

fn args_or(default_a: u32, default_m: u32) -> (BigUint, BigUint) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [a, m] => (
            a.parse().expect("a must be a decimal integer"),
            m.parse().expect("m must be a decimal integer"),
        ),
        [] => (BigUint::from(default_a), BigUint::from(default_m)),
        _ => panic!("usage: continued_fractions [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let trace = dayan::qin::run(&a, &m).expect("inputs must be coprime with 1 < a < m");

    // Step quotients plus the trailing quotient = a continued fraction of a/m.
    let expansion = cf::expansion(&trace);
    println!("{a}/{m} = {expansion}");
    let (num, den) = cf::evaluate(&expansion).expect("run quotients are positive");
    assert_eq!((&num, &den), (&a, &m));
    println!("collapsing the expansion gives back {num}/{den}");
    println!();

    // Convergents: alpha_k/beta_k truncations, climbing towards a/m from
    // alternating sides. The last one (index N+1) is a/m itself.
    println!("convergents:");
    for c in cf::convergents_with_final(&trace) {
        println!("  {:>2}: {c}", c.index);
    }
    println!();

    // Each state of the run is literally two consecutive convergent pairs
    // (beta, m*alpha - a*beta), rows swapping with the step parity.
    let corr = cf::check_state_correspondence(&trace);
    assert!(corr.passed(), "{:?}", corr.first_violation);
    println!(
        "state-convergent correspondence: ok at all {} steps",
        corr.steps_checked
    );

    // Unit determinants, the matrix-product form, alternating approach,
    // and the approximation bounds -- nothing floating-point anywhere.
    let ids = cf::check_identities(&trace);
    assert!(ids.passed(), "{:?}", ids.first_violation);
    println!("convergent identities: ok over {} pairs", ids.pairs_checked);
    println!();

    println!("approximation certificates (error = m*alpha - a*beta):");
    for cert in &ids.certificates {
        println!(
            "  convergent {:>2}: error {:>12}, within {}",
            cert.index,
            cert.error_numerator.to_string(),
            cert.bound.as_str()
        );
    }
}
