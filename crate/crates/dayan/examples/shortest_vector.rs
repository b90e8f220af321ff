//! Certified shortest-vector computation in the lattice
//! `L(a, m) = {(x, y) : a*x + y = 0 (mod m)}` by scanning the rows, row
//! sums, and row differences of every signed state of a run.
//!
//! Usage: `cargo run --example shortest_vector [-- a m]`

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
        _ => panic!("usage: shortest_vector [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let trace = dayan::qin::run(&a, &m).expect("inputs must be coprime with 1 < a < m");
    let params = LatticeParams::from_trace(&trace);

    println!("lattice L({a}, {m}) = {{(x, y) : {a}*x + y = 0 (mod {m})}}");
    println!();

    // Every signed state of the run is a basis of the lattice.
    for k in [0, trace.n_steps()] {
        let b = lattice::basis_at(&trace, k).expect("k is within the run");
        println!(
            "basis at state {k}: v1 = {}, v2 = {} (det = {})",
            b.v1,
            b.v2,
            b.det()
        );
        assert!(lattice::contains(&params, &b.v1));
        assert!(lattice::contains(&params, &b.v2));
    }
    let dual = lattice::duality_basis(&trace);
    println!(
        "closing the duality: v1 = {}, v2 = {} (det = {})",
        dual.v1,
        dual.v2,
        dual.det()
    );
    println!();

    // The certified scan over all states.
    let report = lattice::shortest_via_states(&trace);
    println!("shortest = {}", report.shortest);
    println!("norm_sq = {}", report.norm_sq);
    match report.source_step {
        Some(k) => println!("source = {} (step {k})", report.source),
        None => println!("source = {}", report.source),
    }
    println!("certified = {}", report.certified);
    assert!(lattice::contains(&params, &report.shortest));
    assert_eq!(report.shortest.norm_sq(), report.norm_sq);
    println!();
    println!("as JSON: {}", report.to_json());
}
