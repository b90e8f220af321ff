//! The deriving-one state machine: modular inversion as a traced walk through
//! 2x2 matrices of non-negative integers.
//!
//! Given coprime `1 < a < m`, the machine starts from
//!
//! ```text
//! X_0 = | 1   a |
//!       | 0   m |
//! ```
//!
//! and repeats two alternating reduction steps until the top-right entry
//! reaches 1. Odd steps reduce the bottom row by the top row, even steps the
//! top row by the bottom row, always with [`least positive
//! remainders`](crate::arith::div_least_positive) so every entry stays
//! strictly positive from step 1 on. On exit the top-left entry is the
//! modular inverse of `a` mod `m`.
//!
//! The run itself — every intermediate state plus the quotient of every step —
//! is kept as a [`Trace`]. The other layers of the crate read that trace: the
//! quotients are the partial fraction expansion of `a/m`
//! ([`crate::cf`]), and the signed states are bases of the planar lattice of
//! all `(x, y)` with `a*x + y = 0 (mod m)` ([`crate::lattice`]).

use crate::arith;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::fmt;

/// A machine state: four non-negative entries, row-major.
///
/// Indices name row then column, so `x12` is the top-right entry (the one the
/// termination test watches) and `x21` the bottom-left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateMatrix {
    pub x11: BigUint,
    pub x12: BigUint,
    pub x21: BigUint,
    pub x22: BigUint,
}

impl StateMatrix {
    pub fn new(x11: BigUint, x12: BigUint, x21: BigUint, x22: BigUint) -> Self {
        StateMatrix { x11, x12, x21, x22 }
    }

    /// The start state for a run on `(a, m)`.
    pub fn initial(a: &BigUint, m: &BigUint) -> Self {
        StateMatrix {
            x11: BigUint::one(),
            x12: a.clone(),
            x21: BigUint::zero(),
            x22: m.clone(),
        }
    }

    /// The conserved quantity `x11*x22 + x12*x21`. Every state of a run on
    /// `(a, m)` has invariant exactly `m`.
    pub fn invariant(&self) -> BigUint {
        &self.x11 * &self.x22 + &self.x12 * &self.x21
    }

    /// The signed companion of this state: top-right entry negated, all
    /// entries promoted to signed integers. See [`SState`].
    pub fn sstate(&self) -> SState {
        SState {
            row1: (
                BigInt::from(self.x11.clone()),
                -BigInt::from(self.x12.clone()),
            ),
            row2: (
                BigInt::from(self.x21.clone()),
                BigInt::from(self.x22.clone()),
            ),
        }
    }
}

impl fmt::Display for StateMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}; {}, {})",
            self.x11, self.x12, self.x21, self.x22
        )
    }
}

/// A state with its top-right entry negated.
///
/// In signed form the determinant of every state of a run equals `m` exactly
/// (no sign flip between steps), and the two rows `(x11, -x12)` and
/// `(x21, x22)` are vectors of the lattice `a*x + y = 0 (mod m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SState {
    pub row1: (BigInt, BigInt),
    pub row2: (BigInt, BigInt),
}

impl SState {
    pub fn det(&self) -> BigInt {
        &self.row1.0 * &self.row2.1 - &self.row1.1 * &self.row2.0
    }
}

impl fmt::Display for SState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(({}, {}), ({}, {}))",
            self.row1.0, self.row1.1, self.row2.0, self.row2.1
        )
    }
}

/// Which of the two alternating updates a step performs.
///
/// Odd steps (1st, 3rd, ...) require `x22 > x12` and reduce the bottom row;
/// even steps require `x12 > x22` and reduce the top row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepParity {
    Odd,
    Even,
}

impl StepParity {
    /// Parity of the `k`-th step of a run, for 1-based `k`.
    pub fn of_step(k: usize) -> StepParity {
        if k % 2 == 1 {
            StepParity::Odd
        } else {
            StepParity::Even
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepParity::Odd => "odd",
            StepParity::Even => "even",
        }
    }
}

/// Errors from input validation and from stepping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QinError {
    /// `a` must be at least 2; 0 and 1 are excluded by construction.
    InputTooSmall { a: BigUint },
    /// `a` must be strictly below the modulus.
    InputNotBelowModulus { a: BigUint, m: BigUint },
    /// `a` and `m` must be coprime for an inverse to exist.
    NotCoprime {
        a: BigUint,
        m: BigUint,
        gcd: BigUint,
    },
    /// The state does not admit a step of the requested parity: the strict
    /// inequality between `x12` and `x22` that the update relies on fails.
    IllegalStep {
        x12: BigUint,
        x22: BigUint,
        parity: StepParity,
    },
}

impl fmt::Display for QinError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QinError::InputTooSmall { a } => {
                write!(f, "invalid input: a must be at least 2, got a = {a}")
            }
            QinError::InputNotBelowModulus { a, m } => write!(
                f,
                "invalid input: a must be strictly less than m, got a = {a}, m = {m}"
            ),
            QinError::NotCoprime { a, m, gcd } => write!(
                f,
                "invalid input: a and m must be coprime, got gcd({a}, {m}) = {gcd}"
            ),
            QinError::IllegalStep { x12, x22, parity } => {
                let need = match parity {
                    StepParity::Odd => "x22 > x12",
                    StepParity::Even => "x12 > x22",
                };
                write!(
                    f,
                    "illegal {} step: requires {}, got x12 = {}, x22 = {}",
                    parity.as_str(),
                    need,
                    x12,
                    x22
                )
            }
        }
    }
}

impl std::error::Error for QinError {}

/// Checks that `(a, m)` is a legal input pair: `1 < a < m` and `gcd(a, m) = 1`.
pub fn validate_inputs(a: &BigUint, m: &BigUint) -> Result<(), QinError> {
    if a <= &BigUint::one() {
        return Err(QinError::InputTooSmall { a: a.clone() });
    }
    if a >= m {
        return Err(QinError::InputNotBelowModulus {
            a: a.clone(),
            m: m.clone(),
        });
    }
    let g = a.gcd(m);
    if !g.is_one() {
        return Err(QinError::NotCoprime {
            a: a.clone(),
            m: m.clone(),
            gcd: g,
        });
    }
    Ok(())
}

/// Performs one step of the machine and returns the new state and quotient.
///
/// An odd step needs `x22 > x12`, divides `x22` by `x12` with least positive
/// remainder, and applies quotient `q` to the bottom row:
/// `x21 += q*x11`, `x22 -= q*x12`. An even step is the mirror image on the
/// top row. A state satisfying neither strict inequality (or whose divisor
/// entry is 0) admits no step of the requested parity.
pub fn step(state: &StateMatrix, parity: StepParity) -> Result<(StateMatrix, BigUint), QinError> {
    let illegal = || QinError::IllegalStep {
        x12: state.x12.clone(),
        x22: state.x22.clone(),
        parity,
    };
    match parity {
        StepParity::Odd => {
            if state.x22 <= state.x12 {
                return Err(illegal());
            }
            let d = arith::div_least_positive(&state.x22, &state.x12).map_err(|_| illegal())?;
            let next = StateMatrix {
                x11: state.x11.clone(),
                x12: state.x12.clone(),
                x21: &state.x21 + &d.quotient * &state.x11,
                x22: d.remainder,
            };
            Ok((next, d.quotient))
        }
        StepParity::Even => {
            if state.x12 <= state.x22 {
                return Err(illegal());
            }
            let d = arith::div_least_positive(&state.x12, &state.x22).map_err(|_| illegal())?;
            let next = StateMatrix {
                x11: &state.x11 + &d.quotient * &state.x21,
                x12: d.remainder,
                x21: state.x21.clone(),
                x22: state.x22.clone(),
            };
            Ok((next, d.quotient))
        }
    }
}

/// A completed run: the full state history plus the quotient of every step.
///
/// A trace for `(a, m)` always holds `n_steps + 1` states (`n_steps` is even
/// and at least 2) and `n_steps` quotients. The extra
/// [`trailing_quotient`](Trace::trailing_quotient) is the bottom-right entry
/// of the final state; it closes the continued fraction expansion of `a/m`
/// and drives the [duality closure](duality_closure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    a: BigUint,
    m: BigUint,
    states: Vec<StateMatrix>,
    quotients: Vec<BigUint>,
    trailing_quotient: BigUint,
}

impl Trace {
    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn m(&self) -> &BigUint {
        &self.m
    }

    /// Number of steps `N` taken; always even and at least 2.
    pub fn n_steps(&self) -> usize {
        self.quotients.len()
    }

    /// All states `X_0 ..= X_N` in order.
    pub fn states(&self) -> &[StateMatrix] {
        &self.states
    }

    /// All step quotients `q_1 ..= q_N` in order (`quotients()[k - 1]` is `q_k`).
    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// The closing quotient `q_{N+1}`, equal to `x22` of the final state.
    pub fn trailing_quotient(&self) -> &BigUint {
        &self.trailing_quotient
    }

    pub fn final_state(&self) -> &StateMatrix {
        self.states.last().expect("a trace has at least one state")
    }

    /// The modular inverse of `a` mod `m`: the top-left entry of the final state.
    pub fn inverse(&self) -> &BigUint {
        &self.final_state().x11
    }

    /// Serializes the trace as a JSON document.
    ///
    /// All integers are decimal strings so arbitrarily large runs survive any
    /// JSON reader; each state is a flat `[x11, x12, x21, x22]` quadruple.
    /// The document carries a `version` field (currently 1).
    pub fn to_json(&self) -> Value {
        json!({
            "version": 1,
            "a": self.a.to_string(),
            "m": self.m.to_string(),
            "n_steps": self.n_steps(),
            "quotients": self.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "trailing_quotient": self.trailing_quotient.to_string(),
            "states": self
                .states
                .iter()
                .map(|s| {
                    json!([
                        s.x11.to_string(),
                        s.x12.to_string(),
                        s.x21.to_string(),
                        s.x22.to_string()
                    ])
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    /// Renders the trace as an aligned text table: one row per state with the
    /// quotient that produced it, bracketed by `a = `/`m = ` header lines and
    /// a `trailing_quotient = ` footer. The output round-trips through
    /// [`parse_table`](Trace::parse_table).
    pub fn render_table(&self) -> String {
        let headers = ["k", "x11", "x12", "x21", "x22", "q"];
        let mut rows: Vec<[String; 6]> = Vec::with_capacity(self.states.len());
        for (k, s) in self.states.iter().enumerate() {
            let q = if k == 0 {
                "-".to_string()
            } else {
                self.quotients[k - 1].to_string()
            };
            rows.push([
                k.to_string(),
                s.x11.to_string(),
                s.x12.to_string(),
                s.x21.to_string(),
                s.x22.to_string(),
                q,
            ]);
        }
        let mut widths = [0usize; 6];
        for (i, h) in headers.iter().enumerate() {
            widths[i] = h.len();
        }
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        out.push_str(&format!("a = {}\n", self.a));
        out.push_str(&format!("m = {}\n", self.m));
        let fmt_row = |cells: &[&str]| -> String {
            cells
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                .collect::<Vec<_>>()
                .join("  ")
        };
        out.push_str(&fmt_row(&headers));
        out.push('\n');
        for row in &rows {
            let cells: Vec<&str> = row.iter().map(|s| s.as_str()).collect();
            out.push_str(&fmt_row(&cells));
            out.push('\n');
        }
        out.push_str(&format!("trailing_quotient = {}\n", self.trailing_quotient));
        out
    }

    /// Parses a table produced by [`render_table`](Trace::render_table) back
    /// into a trace. Content only — alignment widths do not matter.
    pub fn parse_table(text: &str) -> Result<Trace, String> {
        fn keyed(line: &str, key: &str) -> Result<BigUint, String> {
            let rest = line
                .strip_prefix(key)
                .ok_or_else(|| format!("expected line starting with {key:?}, got {line:?}"))?;
            let rest = rest.trim_start();
            let rest = rest
                .strip_prefix('=')
                .ok_or_else(|| format!("expected '=' in line {line:?}"))?;
            rest.trim()
                .parse::<BigUint>()
                .map_err(|e| format!("bad integer in line {line:?}: {e}"))
        }

        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let a = keyed(lines.next().ok_or("empty table")?, "a")?;
        let m = keyed(lines.next().ok_or("missing m line")?, "m")?;
        let header = lines.next().ok_or("missing header line")?;
        let cols: Vec<&str> = header.split_whitespace().collect();
        if cols != ["k", "x11", "x12", "x21", "x22", "q"] {
            return Err(format!("unexpected header line {header:?}"));
        }

        let mut states = Vec::new();
        let mut quotients = Vec::new();
        let mut trailing = None;
        for line in lines {
            if line.trim_start().starts_with("trailing_quotient") {
                trailing = Some(keyed(line, "trailing_quotient")?);
                continue;
            }
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != 6 {
                return Err(format!("expected 6 columns, got {line:?}"));
            }
            let k: usize = cells[0]
                .parse()
                .map_err(|e| format!("bad step index in {line:?}: {e}"))?;
            if k != states.len() {
                return Err(format!("out-of-order step index {k} in {line:?}"));
            }
            let parse = |s: &str| -> Result<BigUint, String> {
                s.parse::<BigUint>()
                    .map_err(|e| format!("bad integer {s:?} in {line:?}: {e}"))
            };
            states.push(StateMatrix {
                x11: parse(cells[1])?,
                x12: parse(cells[2])?,
                x21: parse(cells[3])?,
                x22: parse(cells[4])?,
            });
            if k == 0 {
                if cells[5] != "-" {
                    return Err(format!("state 0 carries no quotient, got {line:?}"));
                }
            } else {
                quotients.push(parse(cells[5])?);
            }
        }
        let trailing_quotient = trailing.ok_or("missing trailing_quotient line")?;
        if states.is_empty() {
            return Err("table holds no states".to_string());
        }
        Ok(Trace {
            a,
            m,
            states,
            quotients,
            trailing_quotient,
        })
    }
}

/// Runs the machine on `(a, m)` and records the full trace.
///
/// Validation failures are returned; a malfunction of the machine itself
/// (an alternation that does not match the state, or an odd step count)
/// panics, since it would mean the implementation violates its own algebra.
pub fn run(a: &BigUint, m: &BigUint) -> Result<Trace, QinError> {
    validate_inputs(a, m)?;
    let mut states = vec![StateMatrix::initial(a, m)];
    let mut quotients: Vec<BigUint> = Vec::new();
    loop {
        let current = states.last().expect("states is non-empty");
        if current.x12.is_one() {
            break;
        }
        let parity = StepParity::of_step(quotients.len() + 1);
        // The comparison inside `step` re-derives the parity from the state;
        // if it ever disagrees with the alternation the machine is broken.
        let (next, q) = match step(current, parity) {
            Ok(r) => r,
            Err(e) => panic!("machine state diverged from step alternation: {e}"),
        };
        states.push(next);
        quotients.push(q);
    }
    assert!(
        quotients.len().is_multiple_of(2) && !quotients.is_empty(),
        "a completed run must take an even, positive number of steps"
    );
    let trailing_quotient = states
        .last()
        .expect("states is non-empty")
        .x22
        .clone();
    Ok(Trace {
        a: a.clone(),
        m: m.clone(),
        states,
        quotients,
        trailing_quotient,
    })
}

/// The modular inverse of `a` mod `m`, by running the machine to completion.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Result<BigUint, QinError> {
    Ok(run(a, m)?.inverse().clone())
}

/// The signed companion of a state; free-function form of
/// [`StateMatrix::sstate`].
pub fn sstate(state: &StateMatrix) -> SState {
    state.sstate()
}

/// One more (virtual) step past the end of a run: adds `x22 * row1` to `row2`
/// of the final signed state. The result is always
/// `((inverse, -1), (m, 0))` — the run "closes" onto the modulus itself,
/// pairing the inverse with the input the way `(1, a)` opened the run.
pub fn duality_closure(trace: &Trace) -> SState {
    let s = trace.final_state().sstate();
    let t = BigInt::from(trace.final_state().x22.clone());
    SState {
        row2: (
            &s.row2.0 + &t * &s.row1.0,
            &s.row2.1 + &t * &s.row1.1,
        ),
        row1: s.row1,
    }
}

/// A failed trace check: which state (or step) broke which rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantViolation {
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at step {}: {}", self.step, self.detail)
    }
}

impl std::error::Error for InvariantViolation {}

/// Checks a completed trace against everything the machine guarantees:
///
/// * the first state is `(1, a; 0, m)` and the step count is even, >= 2;
/// * every state conserves `x11*x22 + x12*x21 = m` and keeps `x12, x22 >= 1`;
/// * every quotient is >= 1 and each transition is exactly the row update
///   its parity prescribes (checked entrywise on the signed states);
/// * per-column monotonicity: on odd steps the top row is frozen, `x21`
///   strictly grows and `x22` strictly shrinks; even steps mirror this;
/// * the final state has `x12 = 1`, the trailing quotient equals its `x22`,
///   and the extracted inverse `u` satisfies `0 < u < m` and `a*u = 1 (mod m)`.
///
/// Returns the first violation found, or `Ok(())`.
pub fn check_invariants(trace: &Trace) -> Result<(), InvariantViolation> {
    let fail = |step: usize, detail: String| Err(InvariantViolation { step, detail });
    let n = trace.n_steps();
    if trace.states.len() != n + 1 {
        return fail(
            0,
            format!(
                "state count {} does not match step count {}",
                trace.states.len(),
                n
            ),
        );
    }
    if n < 2 || !n.is_multiple_of(2) {
        return fail(n, format!("step count {n} is not an even number >= 2"));
    }
    if trace.states[0] != StateMatrix::initial(&trace.a, &trace.m) {
        return fail(0, format!("first state is {}", trace.states[0]));
    }
    for (k, s) in trace.states.iter().enumerate() {
        if s.invariant() != trace.m {
            return fail(
                k,
                format!("invariant x11*x22 + x12*x21 = {} != m", s.invariant()),
            );
        }
        if s.x12.is_zero() || s.x22.is_zero() {
            return fail(k, format!("right column hit zero in {s}"));
        }
    }
    for k in 1..=n {
        let q = &trace.quotients[k - 1];
        if q.is_zero() {
            return fail(k, "zero quotient".to_string());
        }
        let prev = &trace.states[k - 1];
        let cur = &trace.states[k];
        let (sp, sc) = (prev.sstate(), cur.sstate());
        let qi = BigInt::from(q.clone());
        match StepParity::of_step(k) {
            StepParity::Odd => {
                let expect_row2 = (&sp.row2.0 + &qi * &sp.row1.0, &sp.row2.1 + &qi * &sp.row1.1);
                if sc.row1 != sp.row1 || sc.row2 != expect_row2 {
                    return fail(k, format!("odd step is not row2 += q*row1: {prev} -> {cur}"));
                }
                if !(cur.x21 > prev.x21 && cur.x22 < prev.x22) {
                    return fail(k, format!("odd step not strictly monotone: {prev} -> {cur}"));
                }
            }
            StepParity::Even => {
                let expect_row1 = (&sp.row1.0 + &qi * &sp.row2.0, &sp.row1.1 + &qi * &sp.row2.1);
                if sc.row2 != sp.row2 || sc.row1 != expect_row1 {
                    return fail(k, format!("even step is not row1 += q*row2: {prev} -> {cur}"));
                }
                if !(cur.x11 > prev.x11 && cur.x12 < prev.x12) {
                    return fail(k, format!("even step not strictly monotone: {prev} -> {cur}"));
                }
            }
        }
    }
    let last = trace.final_state();
    if !last.x12.is_one() {
        return fail(n, format!("final state {last} has x12 != 1"));
    }
    if trace.trailing_quotient != last.x22 {
        return fail(
            n,
            format!(
                "trailing quotient {} != final x22 {}",
                trace.trailing_quotient, last.x22
            ),
        );
    }
    let u = trace.inverse();
    if u.is_zero() || u >= &trace.m {
        return fail(n, format!("inverse {u} out of range 1..m"));
    }
    if !((u * &trace.a).mod_floor(&trace.m)).is_one() {
        return fail(n, format!("a * {u} is not 1 mod m"));
    }
    Ok(())
}
