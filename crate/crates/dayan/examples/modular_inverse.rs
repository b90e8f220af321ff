//! The deriving-one machine end to end: run it, read off the inverse,
//! check it, and close the run onto the modulus.
//!
//! Usage: `cargo run --example modular_inverse [-- a m]`

use num_bigint::BigUint;

fn args_or(default_a: u32, default_m: u32) -> (BigUint, BigUint) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match args.as_slice() {
        [a, m] => (
            a.parse().expect("a must be a decimal integer"),
            m.parse().expect("m must be a decimal integer"),
        ),
        [] => (BigUint::from(default_a), BigUint::from(default_m)),
        _ => panic!("usage: modular_inverse [a m]"),
    }
}

fn main() {
    let (a, m) = args_or(38887, 41130);
    let trace = dayan::qin::run(&a, &m).expect("inputs must be coprime with 1 < a < m");

    let u = trace.inverse();
    println!("the inverse of {a} mod {m} is {u}");
    println!("check: {a} * {u} = {} = 1 (mod {m})", &a * u);
    println!();
    println!(
        "the machine took {} steps (the count is always even) and ended in",
        trace.n_steps()
    );
    println!("state {} -- top-right entry 1, top-left the inverse.", trace.final_state());
    println!();

    // One more (virtual) step folds the final state onto ((u, -1), (m, 0)):
    // the run that started from (1, a) closes by pairing the inverse with
    // the modulus itself.
    let closed = dayan::qin::duality_closure(&trace);
    println!("one closing step later the signed state becomes {closed}");
}
