//! The row inner products `I_k = x11*x21 - x12*x22` of a run climb strictly
//! from `I_0 = -a*m` and cross zero exactly once. The state at the crossing
//! and its successor almost always already contain a shortest lattice
//! vector, so checking just those two is a fast heuristic. This example
//! prints the sequence and compares the heuristic against the certified
//! full scan.
//!
//! Usage: `cargo run --example sign_change_heuristic [-- a m]`

use dayan::lattice;
use num_bigint::BigUint;

fn args_or(default_a: u32, default_m: u32) -> (BigUint, BigUint) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [a, m] => (
            a.parse().expect("a must be a decimal integer"),
            m.parse().expect("m must be a decimal integer"),
        ),
        [] => (BigUint::from(default_a), BigUint::from(default_m)),
        _ => panic!("usage: sign_change_heuristic [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let trace = dayan::qin::run(&a, &m).expect("inputs must be coprime with 1 < a < m");

    let ip = lattice::inner_products(&trace);
    println!("row inner products I_k = x11*x21 - x12*x22:");
    for (k, v) in ip.values.iter().enumerate() {
        let marker = match ip.sign_change_index {
            Some(k0) if k == k0 => "  <- last non-positive",
            Some(k0) if k == k0 + 1 => "  <- first positive",
            _ => "",
        };
        println!("  I_{k} = {v}{marker}");
    }
    match ip.sign_change_index {
        Some(k0) => println!("sign change: I_{k0} <= 0 < I_{}", k0 + 1),
        None => println!("no sign change: the sequence never turns positive"),
    }
    // The sequence is strictly increasing, so the crossing is unique.
    for w in ip.values.windows(2) {
        assert!(w[0] < w[1]);
    }
    println!();

    let fast = lattice::heuristic_shortest(&trace);
    let certified = lattice::shortest_via_states(&trace);
    println!(
        "heuristic: {} with norm_sq = {} (certified = {})",
        fast.shortest, fast.norm_sq, fast.certified
    );
    println!(
        "full scan: {} with norm_sq = {} (certified = {})",
        certified.shortest, certified.norm_sq, certified.certified
    );
    if fast.norm_sq == certified.norm_sq {
        println!("the heuristic found a shortest vector here");
    } else {
        // Possible in principle; the heuristic trades certainty for speed.
        let excess = &fast.norm_sq - &certified.norm_sq;
        println!("the heuristic overshot the minimum by {excess} in squared norm");
    }
}
