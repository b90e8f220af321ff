//! Deriving one: Qin Jiushao's 13th-century modular-inverse algorithm as a
//! fully traced 2x2 state machine, with the number theory hiding in its
//! trace made executable and checkable.
//!
//! For coprime `1 < a < m`, [`qin::run`] starts from the matrix
//! `(1, a; 0, m)` and alternates two least-positive-remainder reduction
//! steps until the top-right entry is 1; the top-left entry is then the
//! inverse of `a` mod `m`. Unlike the extended Euclidean algorithm, every
//! intermediate matrix is non-negative, and the recorded run (the
//! [`qin::Trace`]) is itself the object of interest:
//!
//! * [`qin`] — the machine: stepping, traces, the conserved quantity
//!   `x11*x22 + x12*x21 = m`, signed states, and a full invariant checker;
//! * [`cf`] — the step quotients are a continued fraction of `a/m`, and
//!   each state holds two consecutive convergents; classical convergent
//!   identities become exact integer checks over the trace;
//! * [`lattice`] — signed states are bases of the planar lattice
//!   `a*x + y = 0 (mod m)`; a certified shortest-vector scan, a sign-change
//!   heuristic, and an independent brute-force oracle;
//! * [`verify`] — seeded random corpora cross-checking all of the above
//!   against textbook oracles;
//! * [`arith`] — the least-positive-remainder division underneath it all.
//!
//! # Start with the examples
//!
//! The `examples/` directory is the guided tour; each file runs on its own
//! and accepts an optional `a m` argument pair:
//!
//! ```text
//! cargo run --example modular_inverse          # the machine end to end
//! cargo run --example state_trace              # every state, as table and JSON
//! cargo run --example continued_fractions      # expansion, convergents, identities
//! cargo run --example shortest_vector          # certified lattice shortest vector
//! cargo run --example sign_change_heuristic    # inner products and the fast guess
//! cargo run --example brute_force_oracle       # independent enumeration cross-check
//! cargo run --example random_verification      # a seeded verification corpus
//! ```
//!
//! A thin `dayan` binary wraps the same functionality for shell use
//! (`inverse`, `trace`, `cf`, `lattice`, `oracle`, `verify` subcommands).
//!
//! # Quick use
//!
//! ```
//! use num_bigint::BigUint;
//!
//! let a = BigUint::from(38887u32);
//! let m = BigUint::from(41130u32);
//! let trace = dayan::qin::run(&a, &m)?;
//! assert_eq!(trace.inverse(), &BigUint::from(6583u32));
//!
//! // The step quotients form a continued fraction of a/m...
//! let cf = dayan::cf::expansion(&trace);
//! assert_eq!(cf.to_string(), "[0; 1, 17, 2, 1, 29, 4, 6]");
//!
//! // ...and some state of the run carries a shortest lattice vector.
//! let sv = dayan::lattice::shortest_via_states(&trace);
//! assert_eq!(sv.shortest.to_string(), "(55, -25)");
//! assert!(sv.certified);
//! # Ok::<(), dayan::qin::QinError>(())
//! ```

pub mod arith;
pub mod cf;
pub mod lattice;
pub mod qin;
pub mod verify;

pub use qin::{mod_inverse, run, Trace};
