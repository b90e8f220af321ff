//! Randomized cross-validation: draw a reproducible corpus of valid
//! `(a, m)` pairs, run the machine on each, and check every layer against
//! independent references (extended Euclid for the inverse, the canonical
//! floor expansion for the continued fraction, brute-force enumeration for
//! the shortest vector). The report is deterministic for a fixed seed.
//!
//! Usage: `cargo run --example random_verification [-- samples max_m seed]`

use dayan::verify::{self, CorpusSpec};

fn spec_or(defaults: (usize, u64, u64)) -> CorpusSpec {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (samples, max_m, seed) = match args.as_slice() {
        [s, m, d] => (
            s.parse().expect("samples must be a non-negative integer"),
            m.parse().expect("max_m must be an integer >= 3"),
            d.parse().expect("seed must be an unsigned integer"),
        ),
        [] => defaults,
        _ => panic!("usage: random_verification [samples max_m seed]"),
    };
    CorpusSpec::new(samples, max_m, seed)
}

fn main() {
    let spec = spec_or((500, 100_000, 7));
    let report = verify::run(&spec);
    print!("{}", report.render());
    assert!(report.all_passed(), "a verification suite failed");

    // Same spec, same bytes: the report embeds nothing environmental.
    let again = verify::run(&spec);
    assert_eq!(report.render(), again.render());
}
