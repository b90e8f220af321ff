//! Every intermediate state of a run, as an aligned table and as JSON, plus
//! the full invariant check and the table round-trip.
//!
//! Usage: `cargo run --example state_trace [-- a m]`

use num_bigint::BigUint;

fn args_or(default_a: u32, default_m: u32) -> (BigUint, BigUint) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [a, m] => (
            a.parse().expect("a must be a decimal integer"),
            m.parse().expect("m must be a decimal integer"),
        ),
        [] => (BigUint::from(default_a), BigUint::from(default_m)),
        _ => panic!("usage: state_trace [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let trace = dayan::qin::run(&a, &m).expect("inputs must be coprime with 1 < a < m");

    // The table: one row per state, with the quotient that produced it.
    // Odd steps rewrite the bottom row, even steps the top row, and every
    // division keeps its remainder strictly positive.
    let table = trace.render_table();
    print!("{table}");
    println!();

    // All the algebra the machine guarantees, re-checked on the recorded
    // run: the conserved quantity x11*x22 + x12*x21 = m, the per-parity row
    // updates, strict column monotonicity, and the extracted inverse.
    dayan::qin::check_invariants(&trace).expect("a fresh trace passes its own invariants");
    println!("invariant check: ok (x11*x22 + x12*x21 = {m} at every step)");

    // The table is parseable output, not just pretty-printing.
    let reparsed = dayan::qin::Trace::parse_table(&table).expect("rendered tables parse back");
    assert_eq!(reparsed, trace);
    println!("table round-trip: ok");
    println!();

    println!("the same trace as JSON (all integers as decimal strings):");
    println!("{}", trace.to_json_string());
}
