//! Property-based tests: randomized inputs, exact invariants.

use dayan::lattice::{self, LatticeParams, LatticeVector};
use dayan::{arith, cf, qin, verify};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

/// A valid machine input: coprime `1 < a < m`, with `m` kept small enough
/// that the brute-force oracle stays cheap.
fn valid_pair() -> impl Strategy<Value = (u64, u64)> {
    (3u64..50_000)
        .prop_flat_map(|m| (2u64..m, Just(m)))
        .prop_filter("a and m must be coprime", |(a, m)| a.gcd(m) == 1)
}

fn run(a: u64, m: u64) -> qin::Trace {
    qin::run(&BigUint::from(a), &BigUint::from(m)).expect("pair is valid by construction")
}

proptest! {
    #[test]
    fn division_reconstructs_with_least_positive_remainder(c in 1u64..1_000_000, d in 1u64..10_000) {
        let res = arith::div_least_positive(&BigUint::from(c), &BigUint::from(d)).unwrap();
        prop_assert!(res.remainder >= BigUint::one());
        prop_assert!(res.remainder <= BigUint::from(d));
        prop_assert_eq!(res.quotient * d + res.remainder, BigUint::from(c));
    }

    #[test]
    fn traces_satisfy_the_full_invariant_suite((a, m) in valid_pair()) {
        let trace = run(a, m);
        prop_assert!(qin::check_invariants(&trace).is_ok());
        prop_assert_eq!(trace.n_steps() % 2, 0);
    }

    #[test]
    fn inverse_agrees_with_extended_euclid((a, m) in valid_pair()) {
        let (a, m) = (BigUint::from(a), BigUint::from(m));
        let u = qin::mod_inverse(&a, &m).unwrap();
        prop_assert!(((&a * &u) % &m).is_one());
        prop_assert_eq!(u, verify::extended_euclid_inverse(&a, &m).unwrap());
    }

    #[test]
    fn expansion_collapses_back_to_the_input((a, m) in valid_pair()) {
        let trace = run(a, m);
        let (num, den) = cf::evaluate(&cf::expansion(&trace)).unwrap();
        prop_assert_eq!(num, BigUint::from(a));
        prop_assert_eq!(den, BigUint::from(m));
    }

    #[test]
    fn expansion_is_canonical_up_to_the_last_term_split((a, m) in valid_pair()) {
        let trace = run(a, m);
        let pq = cf::expansion(&trace).partial_quotients().to_vec();
        let canonical = verify::canonical_expansion(&BigUint::from(a), &BigUint::from(m));
        prop_assert!(verify::expansion_matches_canonical(&pq, &canonical));
    }

    #[test]
    fn convergent_checks_pass_on_random_traces((a, m) in valid_pair()) {
        let trace = run(a, m);
        prop_assert!(cf::check_state_correspondence(&trace).passed());
        prop_assert!(cf::check_identities(&trace).passed());
    }

    #[test]
    fn table_render_parses_back_to_the_same_trace((a, m) in valid_pair()) {
        let trace = run(a, m);
        let parsed = qin::Trace::parse_table(&trace.render_table()).unwrap();
        prop_assert_eq!(parsed, trace);
    }

    #[test]
    fn normalization_is_idempotent_and_norm_preserving(x in -1000i64..1000, y in -1000i64..1000) {
        let v = LatticeVector::from_i64(x, y);
        let n = v.normalized();
        prop_assert_eq!(n.norm_sq(), v.norm_sq());
        prop_assert_eq!(n.normalized(), n.clone());
        if !v.is_zero() {
            let positive_x = n.x > BigInt::from(0);
            let zero_x_positive_y = n.x == BigInt::from(0) && n.y > BigInt::from(0);
            prop_assert!(positive_x || zero_x_positive_y);
        }
    }

    #[test]
    fn state_scan_matches_the_brute_force_oracle((a, m) in valid_pair()) {
        let trace = run(a, m);
        let report = lattice::shortest_via_states(&trace);
        let params = LatticeParams::from_trace(&trace);
        prop_assert!(lattice::contains(&params, &report.shortest));
        let minima = lattice::oracle_shortest(&params, 1).unwrap();
        prop_assert_eq!(&report.norm_sq, &minima[0].1);
        prop_assert!(lattice::hermite_bound_holds(&minima[0].1, &BigUint::from(m)));
    }

    #[test]
    fn heuristic_reports_a_lattice_vector_no_longer_than_m((a, m) in valid_pair()) {
        let trace = run(a, m);
        let report = lattice::heuristic_shortest(&trace);
        let params = LatticeParams::from_trace(&trace);
        prop_assert!(lattice::contains(&params, &report.shortest));
        // Any report must beat the obvious lattice vector (0, m).
        prop_assert!(report.norm_sq <= BigUint::from(m) * BigUint::from(m));
    }
}
