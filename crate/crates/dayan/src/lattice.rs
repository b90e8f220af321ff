//! The planar lattice behind a run, and three ways to find its shortest
//! vector.
//!
//! For coprime `1 < a < m` the set `L(a, m) = {(x, y) : a*x + y = 0 (mod m)}`
//! is a lattice of determinant `m`, and the signed states of a run on
//! `(a, m)` are precisely bases of it. Shortest vectors of `L(a, m)` live in
//! a tiny candidate set read off the run:
//!
//! * if `a^2 < m` then `(1, -a)` is shortest outright, and if
//!   `(a^-1)^2 < m` then `(a^-1, -1)` is — the trivial cases
//!   ([`trivial_shortest`]);
//! * otherwise some state `k` has a shortest vector among its two rows,
//!   their sum, or their difference ([`shortest_via_states`] scans them all
//!   and is certified);
//! * the row inner products `I_k = x11*x21 - x12*x22` grow strictly from
//!   `I_0 = -a*m` and cross zero exactly once; the crossing state and its
//!   successor almost always already hold the winner
//!   ([`heuristic_shortest`] examines only those two — fast, not certified).
//!
//! An independent brute-force oracle ([`oracle_shortest`]) enumerates the
//! lattice directly under the planar Hermite bound `lambda_1^2 <= 2m/sqrt(3)`
//! (standard lattice geometry, not specific to this construction) and is
//! used to cross-check all of the above.

use crate::qin::{self, QinError, Trace};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;

/// Validated lattice parameters: coprime `1 < a < m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeParams {
    a: BigUint,
    m: BigUint,
}

impl LatticeParams {
    pub fn new(a: BigUint, m: BigUint) -> Result<Self, LatticeError> {
        qin::validate_inputs(&a, &m)?;
        Ok(LatticeParams { a, m })
    }

    /// Parameters of the lattice a completed run lives in.
    pub fn from_trace(trace: &Trace) -> Self {
        LatticeParams {
            a: trace.a().clone(),
            m: trace.m().clone(),
        }
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn m(&self) -> &BigUint {
        &self.m
    }
}

/// A point of the plane with integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVector {
    pub fn new(x: BigInt, y: BigInt) -> Self {
        LatticeVector { x, y }
    }

    pub fn from_i64(x: i64, y: i64) -> Self {
        LatticeVector {
            x: BigInt::from(x),
            y: BigInt::from(y),
        }
    }

    /// The exact squared Euclidean norm `x^2 + y^2`.
    pub fn norm_sq(&self) -> BigUint {
        (&self.x * &self.x + &self.y * &self.y)
            .to_biguint()
            .expect("a sum of squares is non-negative")
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Sign-normalizes to the canonical representative of `{v, -v}`:
    /// `x > 0`, or `x = 0` and `y > 0`.
    pub fn normalized(&self) -> LatticeVector {
        if self.x.is_negative() || (self.x.is_zero() && self.y.is_negative()) {
            LatticeVector {
                x: -&self.x,
                y: -&self.y,
            }
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An ordered basis of the lattice; always `|det| = m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    pub v1: LatticeVector,
    pub v2: LatticeVector,
}

impl Basis {
    pub fn det(&self) -> BigInt {
        &self.v1.x * &self.v2.y - &self.v1.y * &self.v2.x
    }
}

/// The sequence of row inner products `I_k = x11*x21 - x12*x22` of a run.
///
/// The sequence starts at `I_0 = -a*m`, is strictly increasing, and the
/// step recursion `I_k = I_{k-1} + q_k * |row|^2` (frozen row of the step)
/// is re-verified during construction. `sign_change_index` is the unique
/// `k0` with `I_k0 <= 0 < I_{k0+1}` when the sequence ends positive, else
/// absent. The comparison on the left is non-strict because the sequence
/// can touch 0 exactly — e.g. the run on `(2, 5)` has `I_1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerProductTrace {
    pub values: Vec<BigInt>,
    pub sign_change_index: Option<usize>,
}

/// Where a reported shortest vector came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvSource {
    /// The proven-trivial case `(1, -a)` with `a^2 < m`.
    TrivialA,
    /// The proven-trivial case `(a^-1, -1)` with `(a^-1)^2 < m`.
    TrivialAInv,
    /// A row of the signed state at `source_step`.
    StateRow,
    /// The sum of the two rows at `source_step`.
    RowSum,
    /// The difference of the two rows at `source_step`.
    RowDiff,
}

impl SvSource {
    pub fn as_str(self) -> &'static str {
        match self {
            SvSource::TrivialA => "trivial_a",
            SvSource::TrivialAInv => "trivial_ainv",
            SvSource::StateRow => "state_row",
            SvSource::RowSum => "row_sum",
            SvSource::RowDiff => "row_diff",
        }
    }
}

impl fmt::Display for SvSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A shortest-vector answer with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SVReport {
    /// The reported vector, sign-normalized.
    pub shortest: LatticeVector,
    pub norm_sq: BigUint,
    pub source: SvSource,
    /// The state index the vector was read from; absent for trivial cases.
    pub source_step: Option<usize>,
    /// True when the producing algorithm proves minimality (trivial cases
    /// and the full state scan); false for the sign-change heuristic.
    pub certified: bool,
    pub inner_products: InnerProductTrace,
}

impl SVReport {
    /// JSON document: coordinates and norm as decimal strings, source as its
    /// snake_case name, `source_step` null for trivial cases.
    pub fn to_json(&self) -> Value {
        json!({
            "x": self.shortest.x.to_string(),
            "y": self.shortest.y.to_string(),
            "norm_sq": self.norm_sq.to_string(),
            "source": self.source.as_str(),
            "source_step": self.source_step,
            "certified": self.certified,
        })
    }
}

/// Errors from lattice construction and the enumeration oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    /// The parameters fail the coprime `1 < a < m` requirement.
    Params(QinError),
    /// `basis_at` was asked for a state past the end of the run.
    StepOutOfRange { k: usize, n_steps: usize },
    /// The modulus is above the enumeration cap of the brute-force oracle.
    CapExceeded { m: BigUint, cap: BigUint },
    /// The oracle only defines the first two successive minima in the plane.
    UnsupportedCount { count: usize },
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Params(e) => write!(f, "{e}"),
            LatticeError::StepOutOfRange { k, n_steps } => {
                write!(f, "state index {k} out of range 0..={n_steps}")
            }
            LatticeError::CapExceeded { m, cap } => write!(
                f,
                "modulus {m} exceeds the enumeration cap {cap} of the brute-force oracle"
            ),
            LatticeError::UnsupportedCount { count } => write!(
                f,
                "the oracle returns at most the 2 successive minima of a planar lattice, got count = {count}"
            ),
        }
    }
}

impl std::error::Error for LatticeError {}

impl From<QinError> for LatticeError {
    fn from(e: QinError) -> Self {
        LatticeError::Params(e)
    }
}

/// Membership test: `a*x + y = 0 (mod m)` over signed integers.
pub fn contains(p: &LatticeParams, v: &LatticeVector) -> bool {
    let a = BigInt::from(p.a.clone());
    let m = BigInt::from(p.m.clone());
    (a * &v.x + &v.y).mod_floor(&m).is_zero()
}

/// The basis formed by the rows of the signed state at step `k`.
pub fn basis_at(trace: &Trace, k: usize) -> Result<Basis, LatticeError> {
    if k > trace.n_steps() {
        return Err(LatticeError::StepOutOfRange {
            k,
            n_steps: trace.n_steps(),
        });
    }
    let s = trace.states()[k].sstate();
    Ok(Basis {
        v1: LatticeVector::new(s.row1.0, s.row1.1),
        v2: LatticeVector::new(s.row2.0, s.row2.1),
    })
}

/// The basis `((a^-1, -1), (m, 0))` produced by closing the run onto the
/// modulus; see [`qin::duality_closure`].
pub fn duality_basis(trace: &Trace) -> Basis {
    let s = qin::duality_closure(trace);
    Basis {
        v1: LatticeVector::new(s.row1.0, s.row1.1),
        v2: LatticeVector::new(s.row2.0, s.row2.1),
    }
}

/// The inner products `I_0 ..= I_N` of a run, re-verifying the step
/// recursion, strict monotonicity and the starting value `-a*m` along the
/// way (violations panic: they would mean a corrupted trace).
pub fn inner_products(trace: &Trace) -> InnerProductTrace {
    let states = trace.states();
    let values: Vec<BigInt> = states
        .iter()
        .map(|s| {
            BigInt::from(&s.x11 * &s.x21) - BigInt::from(&s.x12 * &s.x22)
        })
        .collect();
    assert_eq!(
        values[0],
        -BigInt::from(trace.a() * trace.m()),
        "inner products must start at -a*m"
    );
    for k in 1..values.len() {
        let s = &states[k];
        let frozen_row_norm = match qin::StepParity::of_step(k) {
            qin::StepParity::Odd => &s.x11 * &s.x11 + &s.x12 * &s.x12,
            qin::StepParity::Even => &s.x21 * &s.x21 + &s.x22 * &s.x22,
        };
        let expect = &values[k - 1] + BigInt::from(&trace.quotients()[k - 1] * frozen_row_norm);
        assert_eq!(
            values[k], expect,
            "inner-product recursion broken at step {k}"
        );
        assert!(
            values[k] > values[k - 1],
            "inner products must strictly increase (step {k})"
        );
    }
    let mut sign_change_index = None;
    for k in 0..values.len() - 1 {
        if !values[k].is_positive() && values[k + 1].is_positive() {
            sign_change_index = Some(k);
            break;
        }
    }
    InnerProductTrace {
        values,
        sign_change_index,
    }
}

/// A shortest-vector candidate under consideration, sign-normalized.
struct Candidate {
    v: LatticeVector,
    norm_sq: BigUint,
    source: SvSource,
    step: Option<usize>,
}

impl Candidate {
    fn new(v: LatticeVector, source: SvSource, step: Option<usize>) -> Self {
        let v = v.normalized();
        let norm_sq = v.norm_sq();
        Candidate {
            v,
            norm_sq,
            source,
            step,
        }
    }
}

/// Total order deciding whether `c` strictly beats the current best:
/// smaller norm, then smaller x, then smaller y.
fn beats(c: &Candidate, best: &Candidate) -> bool {
    (&c.norm_sq, &c.v.x, &c.v.y) < (&best.norm_sq, &best.v.x, &best.v.y)
}

fn offer(best: &mut Option<Candidate>, c: Candidate) {
    if c.v.is_zero() {
        return;
    }
    match best {
        None => *best = Some(c),
        Some(b) => {
            if beats(&c, b) {
                *best = Some(c);
            }
        }
    }
}

fn report_from(best: Candidate, certified: bool, ip: InnerProductTrace) -> SVReport {
    SVReport {
        shortest: best.v,
        norm_sq: best.norm_sq,
        source: best.source,
        source_step: best.step,
        certified,
        inner_products: ip,
    }
}

fn trivial_from_trace(trace: &Trace) -> Option<SVReport> {
    let a = trace.a();
    let m = trace.m();
    let u = trace.inverse();
    let a_applies = &(a * a) < m;
    let u_applies = &(u * u) < m;
    let source = if a_applies && u_applies {
        // Provably unreachable for valid parameters: both squares below m
        // would force a*u < m, but a*u = 1 (mod m) and a, u > 1 make
        // a*u >= m + 1. Kept for faithfulness to the stated tie rule.
        let norm_a = BigUint::one() + a * a;
        let norm_u = BigUint::one() + u * u;
        if norm_u < norm_a {
            SvSource::TrivialAInv
        } else {
            SvSource::TrivialA
        }
    } else if a_applies {
        SvSource::TrivialA
    } else if u_applies {
        SvSource::TrivialAInv
    } else {
        return None;
    };
    let v = match source {
        SvSource::TrivialA => LatticeVector::new(BigInt::one(), -BigInt::from(a.clone())),
        _ => LatticeVector::new(BigInt::from(u.clone()), -BigInt::one()),
    };
    let c = Candidate::new(v, source, None);
    Some(report_from(c, true, inner_products(trace)))
}

/// The proven-trivial shortest vectors, when one applies:
/// `(1, -a)` when `a^2 < m`, else `(a^-1, -1)` when `(a^-1)^2 < m`,
/// else nothing. Reports are certified.
pub fn trivial_shortest(p: &LatticeParams) -> Option<SVReport> {
    let trace = qin::run(&p.a, &p.m).expect("lattice params are validated");
    trivial_from_trace(&trace)
}

/// Offers the four candidates of state `k` (two rows, their sum and their
/// difference) of one kind at a time; `kinds` selects which.
fn offer_state_candidates(
    best: &mut Option<Candidate>,
    trace: &Trace,
    k: usize,
    kind: SvSource,
) {
    let b = basis_at(trace, k).expect("k ranges over the trace's own states");
    match kind {
        SvSource::StateRow => {
            offer(best, Candidate::new(b.v1.clone(), SvSource::StateRow, Some(k)));
            offer(best, Candidate::new(b.v2.clone(), SvSource::StateRow, Some(k)));
        }
        SvSource::RowSum => {
            let sum = LatticeVector::new(&b.v1.x + &b.v2.x, &b.v1.y + &b.v2.y);
            offer(best, Candidate::new(sum, SvSource::RowSum, Some(k)));
        }
        SvSource::RowDiff => {
            let diff = LatticeVector::new(&b.v1.x - &b.v2.x, &b.v1.y - &b.v2.y);
            offer(best, Candidate::new(diff, SvSource::RowDiff, Some(k)));
        }
        _ => unreachable!("trivial candidates are not state candidates"),
    }
}

fn offer_trivial_candidates(best: &mut Option<Candidate>, trace: &Trace) {
    let a = BigInt::from(trace.a().clone());
    let u = BigInt::from(trace.inverse().clone());
    offer(
        best,
        Candidate::new(LatticeVector::new(BigInt::one(), -a), SvSource::TrivialA, None),
    );
    offer(
        best,
        Candidate::new(LatticeVector::new(u, -BigInt::one()), SvSource::TrivialAInv, None),
    );
}

/// Certified shortest vector by scanning the full candidate set.
///
/// Offers the two trivial candidates, then — for every state `k` of the run,
/// one candidate kind at a time — both rows, the row sum, and the row
/// difference. Some state provably contributes a shortest vector, so the
/// minimum over this set is one; the scan order (trivial, rows, sums,
/// diffs; `k` ascending within a kind) fixes which provenance gets reported
/// when several candidates tie on the same minimal vector.
pub fn shortest_via_states(trace: &Trace) -> SVReport {
    let mut best: Option<Candidate> = None;
    offer_trivial_candidates(&mut best, trace);
    for kind in [SvSource::StateRow, SvSource::RowSum, SvSource::RowDiff] {
        for k in 0..=trace.n_steps() {
            offer_state_candidates(&mut best, trace, k, kind);
        }
    }
    let best = best.expect("the candidate set is never empty");
    report_from(best, true, inner_products(trace))
}

/// Fast shortest-vector guess from the inner-product sign change.
///
/// When a trivial case applies, defers to it (that answer is certified).
/// Otherwise the inner products are guaranteed to end positive, and only
/// the sign-change state `k0` and its successor are examined — the same
/// four candidate kinds, nothing else. The result is usually a true
/// shortest vector but carries no proof: `certified` is false.
pub fn heuristic_shortest(trace: &Trace) -> SVReport {
    if let Some(report) = trivial_from_trace(trace) {
        return report;
    }
    let ip = inner_products(trace);
    let k0 = ip
        .sign_change_index
        .expect("no trivial case applies, so inner products end positive and cross zero");
    let mut best: Option<Candidate> = None;
    for kind in [SvSource::StateRow, SvSource::RowSum, SvSource::RowDiff] {
        for k in [k0, k0 + 1] {
            offer_state_candidates(&mut best, trace, k, kind);
        }
    }
    let best = best.expect("two states always offer candidates");
    report_from(best, false, ip)
}

/// Checks that a report's vector really is what its provenance claims:
/// the trivial vector, a row, a row sum, or a row difference of the state
/// at `source_step` (up to sign normalization).
pub fn reproduces_from_source(trace: &Trace, report: &SVReport) -> bool {
    let v = &report.shortest;
    match (report.source, report.source_step) {
        (SvSource::TrivialA, None) => {
            *v == LatticeVector::new(BigInt::one(), -BigInt::from(trace.a().clone())).normalized()
        }
        (SvSource::TrivialAInv, None) => {
            *v == LatticeVector::new(BigInt::from(trace.inverse().clone()), -BigInt::one())
                .normalized()
        }
        (SvSource::StateRow, Some(k)) => match basis_at(trace, k) {
            Ok(b) => *v == b.v1.normalized() || *v == b.v2.normalized(),
            Err(_) => false,
        },
        (SvSource::RowSum, Some(k)) => match basis_at(trace, k) {
            Ok(b) => {
                *v == LatticeVector::new(&b.v1.x + &b.v2.x, &b.v1.y + &b.v2.y).normalized()
            }
            Err(_) => false,
        },
        (SvSource::RowDiff, Some(k)) => match basis_at(trace, k) {
            Ok(b) => {
                *v == LatticeVector::new(&b.v1.x - &b.v2.x, &b.v1.y - &b.v2.y).normalized()
            }
            Err(_) => false,
        },
        _ => false,
    }
}

/// Default enumeration cap of the brute-force oracle: `m <= 10^12`.
pub fn default_oracle_cap() -> BigUint {
    BigUint::from(10u32).pow(12)
}

/// Exact check of the planar Hermite bound `3 * (lambda_1^2)^2 <= 4 * m^2`,
/// the integer form of `lambda_1^2 <= 2m/sqrt(3)`.
pub fn hermite_bound_holds(lambda1_norm_sq: &BigUint, m: &BigUint) -> bool {
    3u32 * (lambda1_norm_sq * lambda1_norm_sq) <= 4u32 * (m * m)
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    (n + d - 1u32) / d
}

/// Cross product `v.x * w.y - v.y * w.x`; zero iff parallel.
fn cross(v: &LatticeVector, w: &LatticeVector) -> BigInt {
    &v.x * &w.y - &v.y * &w.x
}

/// Scans `x` in `0..=bound`, offering for each `x` the two lattice points
/// with `y` closest to zero; skips the zero vector and, in the second
/// phase, anything parallel to the first minimum.
fn oracle_scan(
    p: &LatticeParams,
    bound: &BigUint,
    independent_of: Option<&LatticeVector>,
) -> (LatticeVector, BigUint) {
    let m_int = BigInt::from(p.m.clone());
    let mut best: Option<(LatticeVector, BigUint)> = None;
    let mut x = BigUint::zero();
    let mut t = BigUint::zero(); // a*x mod m, updated incrementally
    loop {
        let xi = BigInt::from(x.clone());
        let ti = BigInt::from(t.clone());
        for y in [-&ti, &m_int - &ti] {
            let v = LatticeVector::new(xi.clone(), y).normalized();
            if v.is_zero() {
                continue;
            }
            if let Some(w) = independent_of {
                if cross(&v, w).is_zero() {
                    continue;
                }
            }
            let norm_sq = v.norm_sq();
            let replace = match &best {
                None => true,
                Some((bv, bn)) => (&norm_sq, &v.x, &v.y) < (bn, &bv.x, &bv.y),
            };
            if replace {
                best = Some((v, norm_sq));
            }
        }
        if &x >= bound {
            break;
        }
        x += 1u32;
        t += &p.a;
        if t >= p.m {
            t -= &p.m;
        }
    }
    best.expect("(0, m) is always an eligible candidate")
}

/// Brute-force successive minima, independent of the state machine.
///
/// Enumerates `x` from 0 to the planar Hermite bound
/// `ceil(sqrt(2m/sqrt(3)))` — standard lattice geometry, good for any
/// 2-dimensional lattice of determinant `m` — and picks per `x` the two
/// residues closest to zero. `count = 1` returns the first minimum;
/// `count = 2` adds the shortest vector linearly independent of it, found
/// under the wider bound `|x| <= 2m/(sqrt(3)*lambda_1)` from
/// `lambda_1 * lambda_2 <= 2m/sqrt(3)`. All bounds are evaluated in exact
/// integer arithmetic. Results are sign-normalized and deterministic
/// (smallest norm, then x, then y).
///
/// Runtime is `O(sqrt(m))` bigint operations, so `m` is capped (default
/// `10^12`); see [`oracle_shortest_with_cap`] to change or drop the cap.
pub fn oracle_shortest(
    p: &LatticeParams,
    count: usize,
) -> Result<Vec<(LatticeVector, BigUint)>, LatticeError> {
    oracle_shortest_with_cap(p, count, Some(&default_oracle_cap()))
}

/// [`oracle_shortest`] with an explicit enumeration cap; `None` disables
/// the guard entirely.
pub fn oracle_shortest_with_cap(
    p: &LatticeParams,
    count: usize,
    cap: Option<&BigUint>,
) -> Result<Vec<(LatticeVector, BigUint)>, LatticeError> {
    if count > 2 {
        return Err(LatticeError::UnsupportedCount { count });
    }
    if let Some(cap) = cap {
        if &p.m > cap {
            return Err(LatticeError::CapExceeded {
                m: p.m.clone(),
                cap: cap.clone(),
            });
        }
    }
    if count == 0 {
        return Ok(Vec::new());
    }

    let four_m_sq = 4u32 * (&p.m * &p.m);

    // Smallest B with 3*B^4 >= 4*m^2, i.e. B >= sqrt(2m/sqrt(3)).
    let t1 = ceil_div(&four_m_sq, &BigUint::from(3u32));
    let mut b1 = t1.nth_root(4);
    if b1.pow(4) < t1 {
        b1 += 1u32;
    }
    let first = oracle_scan(p, &b1, None);
    if count == 1 {
        return Ok(vec![first]);
    }

    // Smallest B with 3*B^2*lambda_1^2 >= 4*m^2, i.e. B >= 2m/(sqrt(3)*lambda_1).
    let t2 = ceil_div(&four_m_sq, &(3u32 * &first.1));
    let mut b2 = t2.sqrt();
    if &b2 * &b2 < t2 {
        b2 += 1u32;
    }
    let second = oracle_scan(p, &b2, Some(&first.0));
    Ok(vec![first, second])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn trace(a: u64, m: u64) -> Trace {
        qin::run(&n(a), &n(m)).unwrap()
    }

    fn params(a: u64, m: u64) -> LatticeParams {
        LatticeParams::new(n(a), n(m)).unwrap()
    }

    fn vec2(x: i64, y: i64) -> LatticeVector {
        LatticeVector::from_i64(x, y)
    }

    #[test]
    fn membership() {
        let p = params(38887, 41130);
        assert!(contains(&p, &vec2(55, -25)));
        assert!(contains(&p, &vec2(0, 41130)));
        assert!(contains(&p, &vec2(257, 631)));
        assert!(!contains(&p, &vec2(1, 0)));
        assert!(!contains(&p, &vec2(55, -26)));
    }

    #[test]
    fn bases_from_states() {
        let t = trace(38887, 41130);
        let b = basis_at(&t, 4).unwrap();
        assert_eq!(b.v1, vec2(55, -25));
        assert_eq!(b.v2, vec2(37, 731));
        assert_eq!(b.det(), BigInt::from(41130));

        let b0 = basis_at(&t, 0).unwrap();
        assert_eq!(b0.v1, vec2(1, -38887));
        assert_eq!(b0.v2, vec2(0, 41130));
        assert_eq!(b0.det(), BigInt::from(41130));

        assert!(matches!(
            basis_at(&t, 7),
            Err(LatticeError::StepOutOfRange { k: 7, n_steps: 6 })
        ));
    }

    #[test]
    fn duality_basis_is_a_basis() {
        let t = trace(38887, 41130);
        let b = duality_basis(&t);
        assert_eq!(b.v1, vec2(6583, -1));
        assert_eq!(b.v2, vec2(41130, 0));
        assert_eq!(b.det(), BigInt::from(41130));
        let p = LatticeParams::from_trace(&t);
        assert!(contains(&p, &b.v1));
        assert!(contains(&p, &b.v2));
    }

    #[test]
    fn inner_products_worked_example() {
        let ip = inner_products(&trace(38887, 41130));
        let want: Vec<BigInt> = [
            -1599422310i64,
            -87223540,
            -1695690,
            -551970,
            -16240,
            89610,
            10743450,
        ]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
        assert_eq!(ip.values, want);
        assert_eq!(ip.sign_change_index, Some(4));
    }

    #[test]
    fn inner_products_can_touch_zero() {
        let ip = inner_products(&trace(2, 5));
        let want: Vec<BigInt> = [-10i64, 0, 5].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(ip.values, want);
        assert_eq!(ip.sign_change_index, Some(1));
    }

    #[test]
    fn trivial_cases() {
        let r = trivial_shortest(&params(3, 100)).unwrap();
        assert_eq!(r.shortest, vec2(1, -3));
        assert_eq!(r.norm_sq, n(10));
        assert_eq!(r.source, SvSource::TrivialA);
        assert_eq!(r.source_step, None);
        assert!(r.certified);

        // 67 = 3^-1 mod 100; its square dwarfs 100 but the inverse's doesn't.
        let r = trivial_shortest(&params(67, 100)).unwrap();
        assert_eq!(r.shortest, vec2(3, -1));
        assert_eq!(r.norm_sq, n(10));
        assert_eq!(r.source, SvSource::TrivialAInv);

        let r = trivial_shortest(&params(2, 5)).unwrap();
        assert_eq!(r.shortest, vec2(1, -2));

        assert!(trivial_shortest(&params(38887, 41130)).is_none());
    }

    #[test]
    fn certified_scan_worked_example() {
        let r = shortest_via_states(&trace(38887, 41130));
        assert_eq!(r.shortest, vec2(55, -25));
        assert_eq!(r.norm_sq, n(3650));
        assert_eq!(r.source, SvSource::StateRow);
        assert_eq!(r.source_step, Some(4));
        assert!(r.certified);
        assert_eq!(r.inner_products.sign_change_index, Some(4));
    }

    #[test]
    fn certified_scan_small_lattices() {
        let r = shortest_via_states(&trace(3, 100));
        assert_eq!(r.shortest, vec2(1, -3));
        assert_eq!(r.source, SvSource::TrivialA);

        let r = shortest_via_states(&trace(2, 7));
        assert_eq!(r.shortest, vec2(1, -2));
        assert_eq!(r.norm_sq, n(5));

        // Two norm-5 vectors exist in L(2, 5): (1, -2) and (2, 1).
        // The tie-break (smaller x) picks (1, -2).
        let r = shortest_via_states(&trace(2, 5));
        assert_eq!(r.shortest, vec2(1, -2));
    }

    #[test]
    fn scan_result_reproduces_from_source() {
        for (a, m) in [(38887u64, 41130u64), (3, 100), (2, 7), (2, 5), (4, 5)] {
            let t = trace(a, m);
            let r = shortest_via_states(&t);
            assert!(reproduces_from_source(&t, &r), "({a}, {m})");
            assert_eq!(r.norm_sq, r.shortest.norm_sq());
            let h = heuristic_shortest(&t);
            assert!(reproduces_from_source(&t, &h), "heuristic ({a}, {m})");
        }
    }

    #[test]
    fn heuristic_worked_example() {
        let r = heuristic_shortest(&trace(38887, 41130));
        assert_eq!(r.shortest, vec2(55, -25));
        assert_eq!(r.norm_sq, n(3650));
        assert_eq!(r.source, SvSource::StateRow);
        assert_eq!(r.source_step, Some(4));
        assert!(!r.certified);
    }

    #[test]
    fn heuristic_defers_to_trivial() {
        let r = heuristic_shortest(&trace(3, 100));
        assert_eq!(r.shortest, vec2(1, -3));
        assert_eq!(r.source, SvSource::TrivialA);
        assert!(r.certified);
    }

    #[test]
    fn oracle_worked_example() {
        let p = params(38887, 41130);
        let got = oracle_shortest(&p, 2).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0], (vec2(55, -25), n(3650)));
        assert_eq!(got[1], (vec2(257, 631), n(464210)));
    }

    #[test]
    fn oracle_small_lattices() {
        assert_eq!(
            oracle_shortest(&params(2, 5), 1).unwrap(),
            vec![(vec2(1, -2), n(5))]
        );
        // The second minimum of L(2, 3) needs the widened second-phase
        // bound and must skip (2, 2), which is parallel to (1, 1).
        assert_eq!(
            oracle_shortest(&params(2, 3), 2).unwrap(),
            vec![(vec2(1, 1), n(2)), (vec2(1, -2), n(5))]
        );
    }

    #[test]
    fn oracle_guards() {
        let p = params(38887, 41130);
        assert!(matches!(
            oracle_shortest(&p, 3),
            Err(LatticeError::UnsupportedCount { count: 3 })
        ));
        assert_eq!(oracle_shortest(&p, 0).unwrap(), vec![]);
        assert!(matches!(
            oracle_shortest_with_cap(&p, 1, Some(&n(100))),
            Err(LatticeError::CapExceeded { .. })
        ));
        // Over the default cap: rejected before any enumeration happens.
        let big_m = BigUint::from(10u32).pow(12) + 39u32;
        let p = LatticeParams::new(n(2), big_m).unwrap();
        assert!(matches!(
            oracle_shortest(&p, 1),
            Err(LatticeError::CapExceeded { .. })
        ));
        // Dropping the cap is possible (tiny m here, so it stays fast).
        assert!(oracle_shortest_with_cap(&params(2, 5), 1, None).is_ok());
    }

    #[test]
    fn oracle_agrees_with_scan_on_a_sweep() {
        for m in 3u64..120 {
            for a in 2..m {
                if n(a).gcd(&n(m)) != n(1) {
                    continue;
                }
                let t = trace(a, m);
                let r = shortest_via_states(&t);
                let o = oracle_shortest(&LatticeParams::from_trace(&t), 1).unwrap();
                assert_eq!(r.norm_sq, o[0].1, "norms differ for ({a}, {m})");
                assert!(hermite_bound_holds(&r.norm_sq, &n(m)), "({a}, {m})");
            }
        }
    }

    #[test]
    fn second_minimum_recombines_from_states() {
        // (257, 631) = 4 * (55, -25) + 1 * (37, 731): an integer combination
        // of the step-4 basis, as any lattice vector must be.
        let t = trace(38887, 41130);
        let b = basis_at(&t, 4).unwrap();
        let four = BigInt::from(4);
        let combo = LatticeVector::new(
            &four * &b.v1.x + &b.v2.x,
            &four * &b.v1.y + &b.v2.y,
        );
        assert_eq!(combo, vec2(257, 631));
        assert_eq!(combo.norm_sq(), n(464210));
    }

    #[test]
    fn normalization_and_order() {
        assert_eq!(vec2(-55, 25).normalized(), vec2(55, -25));
        assert_eq!(vec2(0, -5).normalized(), vec2(0, 5));
        assert_eq!(vec2(55, -25).normalized(), vec2(55, -25));
        assert!(vec2(0, 0).is_zero());
    }

    #[test]
    fn report_json_shape() {
        let r = shortest_via_states(&trace(38887, 41130));
        assert_eq!(
            r.to_json(),
            json!({
                "x": "55",
                "y": "-25",
                "norm_sq": "3650",
                "source": "state_row",
                "source_step": 4,
                "certified": true
            })
        );
        let r = trivial_shortest(&params(3, 100)).unwrap();
        let v = r.to_json();
        assert_eq!(v["source"], "trivial_a");
        assert!(v["source_step"].is_null());
    }

    #[test]
    fn params_validation() {
        assert!(LatticeParams::new(n(1), n(5)).is_err());
        assert!(LatticeParams::new(n(6), n(9)).is_err());
        assert!(LatticeParams::new(n(7), n(5)).is_err());
        assert!(LatticeParams::new(n(2), n(5)).is_ok());
    }
}
