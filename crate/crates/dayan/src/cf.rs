//! Continued fractions read off a completed run.
//!
//! The step quotients of a run on `(a, m)`, followed by the trailing
//! quotient, are exactly the partial quotients of a continued fraction
//! expansion of `a/m`:
//!
//! ```text
//! a/m = [0; q_1, q_2, ..., q_N, q_{N+1}]
//! ```
//!
//! This expansion uses least-positive-remainder divisions, so it is not
//! always the canonical (floor-division) expansion — when it differs, the
//! canonical last term `t` appears split as `t - 1, 1`. The convergents
//! `alpha_k / beta_k` of the expansion are in exact correspondence with the
//! run's states: each state holds two consecutive convergent pairs
//! `(beta, m*alpha - a*beta)`, top row the older pair on odd steps and the
//! newer on even steps. [`check_state_correspondence`] verifies that
//! correspondence entry by entry, and [`check_identities`] the classical
//! convergent identities (unit determinant, matrix product form, alternating
//! approach to `a/m`, and the standard approximation bounds) — all as exact
//! integer statements, no rationals or floats.

use crate::qin::{StepParity, Trace};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt;

/// A continued fraction `[0; pq_1, pq_2, ...]` of a value in (0, 1).
///
/// The leading integer part is always 0 and is stored implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pq: Vec<BigUint>,
}

impl CFExpansion {
    pub fn new(pq: Vec<BigUint>) -> Self {
        CFExpansion { pq }
    }

    /// The partial quotients after the leading 0.
    pub fn partial_quotients(&self) -> &[BigUint] {
        &self.pq
    }

    pub fn len(&self) -> usize {
        self.pq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pq.is_empty()
    }

    /// JSON document: `{"leading": 0, "pq": [...]}` with decimal-string terms.
    pub fn to_json(&self) -> Value {
        json!({
            "leading": 0,
            "pq": self.pq.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0")?;
        for (i, q) in self.pq.iter().enumerate() {
            if i == 0 {
                write!(f, "; {q}")?;
            } else {
                write!(f, ", {q}")?;
            }
        }
        write!(f, "]")
    }
}

/// One convergent `alpha/beta` of an expansion, with its index `k`.
///
/// Index 0 is the formal convergent `0/1`; index `k >= 1` truncates the
/// expansion after `pq_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub alpha: BigUint,
    pub beta: BigUint,
    pub index: usize,
}

impl fmt::Display for Convergent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.alpha, self.beta)
    }
}

/// Errors from evaluating an expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfError {
    /// Partial quotients must be positive; `position` is 1-based.
    ZeroPartialQuotient { position: usize },
}

impl fmt::Display for CfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfError::ZeroPartialQuotient { position } => {
                write!(f, "partial quotient at position {position} is zero")
            }
        }
    }
}

impl std::error::Error for CfError {}

/// The expansion of `a/m` read off a run: step quotients then the trailing
/// quotient, behind a leading 0.
pub fn expansion(trace: &Trace) -> CFExpansion {
    let mut pq = trace.quotients().to_vec();
    pq.push(trace.trailing_quotient().clone());
    CFExpansion::new(pq)
}

/// Collapses an expansion back into a fraction `(numerator, denominator)`.
///
/// Computed through the convergent recursion, which lands the fraction in
/// lowest terms automatically. The empty expansion evaluates to `0/1`.
pub fn evaluate(cf: &CFExpansion) -> Result<(BigUint, BigUint), CfError> {
    let all = convergents_through(cf, cf.len())?;
    let last = all.last().expect("index 0 is always present");
    Ok((last.alpha.clone(), last.beta.clone()))
}

fn convergents_through(cf: &CFExpansion, upto: usize) -> Result<Vec<Convergent>, CfError> {
    // alpha_0 = 0, beta_0 = 1; alpha_1 = 1, beta_1 = pq_1;
    // thereafter alpha_k = pq_k*alpha_{k-1} + alpha_{k-2}, same for beta.
    let mut out = Vec::with_capacity(upto + 1);
    out.push(Convergent {
        alpha: BigUint::zero(),
        beta: BigUint::one(),
        index: 0,
    });
    let mut prev = (BigUint::one(), BigUint::zero()); // formal (alpha_{-1}, beta_{-1})
    for (i, q) in cf.pq.iter().take(upto).enumerate() {
        if q.is_zero() {
            return Err(CfError::ZeroPartialQuotient { position: i + 1 });
        }
        let cur = out.last().expect("seeded with index 0");
        let alpha = q * &cur.alpha + &prev.0;
        let beta = q * &cur.beta + &prev.1;
        prev = (cur.alpha.clone(), cur.beta.clone());
        out.push(Convergent {
            alpha,
            beta,
            index: i + 1,
        });
    }
    Ok(out)
}

/// The convergents `alpha_0/beta_0 ..= alpha_N/beta_N` of a run's expansion —
/// the ones mirrored inside the run's states. The final convergent (index
/// `N + 1`, which reproduces `a/m` itself) is left out; see
/// [`convergents_with_final`].
pub fn convergents(trace: &Trace) -> Vec<Convergent> {
    let cf = expansion(trace);
    convergents_through(&cf, trace.n_steps())
        .expect("run quotients are positive by construction")
}

/// All convergents of a run's expansion including the final one, which equals
/// `a/m` exactly.
pub fn convergents_with_final(trace: &Trace) -> Vec<Convergent> {
    let cf = expansion(trace);
    convergents_through(&cf, cf.len())
        .expect("run quotients are positive by construction")
}

/// JSON form of a convergent list: an array of `[alpha, beta]` pairs of
/// decimal strings.
pub fn convergents_to_json(list: &[Convergent]) -> Value {
    Value::Array(
        list.iter()
            .map(|c| json!([c.alpha.to_string(), c.beta.to_string()]))
            .collect(),
    )
}

/// Where a convergent-vs-state comparison first broke down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfViolation {
    /// Step (or pair) index the mismatch was found at.
    pub step: usize,
    pub detail: String,
}

impl fmt::Display for CfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at step {}: {}", self.step, self.detail)
    }
}

/// Outcome of [`check_state_correspondence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// Steps `1..=N` compared.
    pub steps_checked: usize,
    pub first_violation: Option<CfViolation>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Verifies, entry by entry, that every state of the run is built from two
/// consecutive convergent pairs.
///
/// For step `k >= 1` with convergents `c = alpha`, `d = beta` and signed
/// error `e_j = m*alpha_j - a*beta_j`, the signed state is
///
/// ```text
/// odd k:  (beta_{k-1}, e_{k-1}; beta_k, e_k)
/// even k: (beta_k, e_k; beta_{k-1}, e_{k-1})
/// ```
///
/// i.e. the state's columns are (denominator, error) and the rows swap roles
/// with the step parity.
pub fn check_state_correspondence(trace: &Trace) -> CorrespondenceReport {
    let convs = convergents(trace);
    let a = BigInt::from(trace.a().clone());
    let m = BigInt::from(trace.m().clone());
    let pair = |j: usize| -> (BigInt, BigInt) {
        let alpha = BigInt::from(convs[j].alpha.clone());
        let beta = BigInt::from(convs[j].beta.clone());
        let err = &m * &alpha - &a * &beta;
        (beta, err)
    };
    let mut first_violation = None;
    'scan: for k in 1..=trace.n_steps() {
        let s = trace.states()[k].sstate();
        let older = pair(k - 1);
        let newer = pair(k);
        let (want_row1, want_row2) = match StepParity::of_step(k) {
            StepParity::Odd => (older, newer),
            StepParity::Even => (newer, older),
        };
        let checks = [
            ("x11", &s.row1.0, &want_row1.0),
            ("-x12", &s.row1.1, &want_row1.1),
            ("x21", &s.row2.0, &want_row2.0),
            ("x22", &s.row2.1, &want_row2.1),
        ];
        for (name, got, want) in checks {
            if got != want {
                first_violation = Some(CfViolation {
                    step: k,
                    detail: format!("entry {name}: state has {got}, convergents give {want}"),
                });
                break 'scan;
            }
        }
    }
    CorrespondenceReport {
        steps_checked: trace.n_steps(),
        first_violation,
    }
}

/// Which approximation bound a convergent was certified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `|a/m - alpha/beta| < 1/beta^2`, i.e. `beta*|m*alpha - a*beta| < m`.
    InvBetaSq,
    /// The stronger `|a/m - alpha/beta| < 1/(2*beta^2)`.
    HalfInvBetaSq,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::InvBetaSq => "1/beta^2",
            BoundKind::HalfInvBetaSq => "1/(2*beta^2)",
        }
    }
}

/// An exact-integer certificate of how well convergent `k` approximates `a/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxCertificate {
    pub index: usize,
    /// The signed error numerator `m*alpha_k - a*beta_k`; the approximation
    /// error of convergent `k` is this over `m*beta_k`.
    pub error_numerator: BigInt,
    /// The sharpest of the two bounds this convergent satisfies.
    pub bound: BoundKind,
}

/// Outcome of [`check_identities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// Consecutive pairs `(k-1, k)` for `k` in `1..=N` that were checked.
    pub pairs_checked: usize,
    /// One certificate per convergent `0..=N`.
    pub certificates: Vec<ApproxCertificate>,
    pub first_violation: Option<CfViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// 2x2 matrices over the naturals, for the product form of the convergent
/// recursion.
#[derive(Clone, PartialEq, Eq)]
struct Mat2 {
    a11: BigUint,
    a12: BigUint,
    a21: BigUint,
    a22: BigUint,
}

impl Mat2 {
    fn identity() -> Self {
        Mat2 {
            a11: BigUint::one(),
            a12: BigUint::zero(),
            a21: BigUint::zero(),
            a22: BigUint::one(),
        }
    }

    fn lower(q: &BigUint) -> Self {
        Mat2 {
            a11: BigUint::one(),
            a12: BigUint::zero(),
            a21: q.clone(),
            a22: BigUint::one(),
        }
    }

    fn upper(q: &BigUint) -> Self {
        Mat2 {
            a11: BigUint::one(),
            a12: q.clone(),
            a21: BigUint::zero(),
            a22: BigUint::one(),
        }
    }

    fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a11: &self.a11 * &rhs.a11 + &self.a12 * &rhs.a21,
            a12: &self.a11 * &rhs.a12 + &self.a12 * &rhs.a22,
            a21: &self.a21 * &rhs.a11 + &self.a22 * &rhs.a21,
            a22: &self.a21 * &rhs.a12 + &self.a22 * &rhs.a22,
        }
    }
}

/// Verifies the classical convergent identities of the run's expansion, as
/// exact integer statements:
///
/// 1. unit cross-determinant per consecutive pair:
///    `alpha_k*beta_{k-1} - alpha_{k-1}*beta_k = (-1)^(k-1)`;
/// 2. the running product of elementary step matrices (lower-triangular for
///    odd steps, upper for even) reproduces the convergent pairs;
/// 3. even-indexed convergents climb strictly towards `a/m` from below while
///    odd-indexed ones descend from above (compared by cross-multiplication);
/// 4. per pair, `beta_k*|e_{k-1}| + beta_{k-1}*|e_k| = m` where
///    `e_j = m*alpha_j - a*beta_j` — the two-sided approximation identity;
/// 5. `beta_{k-1}*|e_{k-1}| < m`, the `1/beta^2` bound;
/// 6. at least one side of each pair satisfies the `1/(2*beta^2)` bound,
///    i.e. `2*beta_j^2*|e_j| < m*beta_j` for `j = k-1` or `j = k`.
///
/// Also returns, per convergent, the sharpest bound it satisfies as an
/// [`ApproxCertificate`].
pub fn check_identities(trace: &Trace) -> IdentityReport {
    let n = trace.n_steps();
    let convs = convergents(trace);
    let a = BigInt::from(trace.a().clone());
    let m = BigInt::from(trace.m().clone());
    let errs: Vec<BigInt> = convs
        .iter()
        .map(|c| &m * BigInt::from(c.alpha.clone()) - &a * BigInt::from(c.beta.clone()))
        .collect();

    let mut first_violation: Option<CfViolation> = None;
    let fail = |step: usize, detail: String, slot: &mut Option<CfViolation>| {
        if slot.is_none() {
            *slot = Some(CfViolation { step, detail });
        }
    };

    let alpha = |j: usize| BigInt::from(convs[j].alpha.clone());
    let beta = |j: usize| BigInt::from(convs[j].beta.clone());

    // (1) unit cross-determinant, (4) two-sided identity, (5)-(6) bounds.
    for k in 1..=n {
        let det = alpha(k) * beta(k - 1) - alpha(k - 1) * beta(k);
        let want = if k % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        if det != want {
            fail(
                k,
                format!("pair determinant is {det}, want {want}"),
                &mut first_violation,
            );
        }
        let two_sided = beta(k) * errs[k - 1].abs() + beta(k - 1) * errs[k].abs();
        if two_sided != m {
            fail(
                k,
                format!("two-sided identity gives {two_sided}, want m"),
                &mut first_violation,
            );
        }
        if beta(k - 1) * errs[k - 1].abs() >= m {
            fail(
                k,
                format!("convergent {} misses the 1/beta^2 bound", k - 1),
                &mut first_violation,
            );
        }
        let half = |j: usize| 2u32 * beta(j).pow(2) * errs[j].abs() < m.clone() * beta(j);
        if !half(k - 1) && !half(k) {
            fail(
                k,
                "neither side of the pair meets the 1/(2*beta^2) bound".to_string(),
                &mut first_violation,
            );
        }
    }

    // (2) running matrix product: M_k = F(q_k) * ... * F(q_1) applied to the
    // initial pair columns must reproduce (alpha, beta) at k-1 and k, in the
    // same row arrangement the states use.
    let mut product = Mat2::identity();
    for k in 1..=n {
        let q = &trace.quotients()[k - 1];
        let f = match StepParity::of_step(k) {
            StepParity::Odd => Mat2::lower(q),
            StepParity::Even => Mat2::upper(q),
        };
        product = f.mul(&product);
        // Rows of the product are the (beta, alpha) pairs at k-1 and k, in
        // the same order the state rows use for this parity.
        let got = [
            product.a11.clone(),
            product.a12.clone(),
            product.a21.clone(),
            product.a22.clone(),
        ];
        let (lo, hi) = (&convs[k - 1], &convs[k]);
        let odd_arrangement = [
            lo.beta.clone(),
            lo.alpha.clone(),
            hi.beta.clone(),
            hi.alpha.clone(),
        ];
        let even_arrangement = [
            hi.beta.clone(),
            hi.alpha.clone(),
            lo.beta.clone(),
            lo.alpha.clone(),
        ];
        let want = match StepParity::of_step(k) {
            StepParity::Odd => odd_arrangement,
            StepParity::Even => even_arrangement,
        };
        if got != want {
            fail(
                k,
                "matrix product does not reproduce the convergent pair".to_string(),
                &mut first_violation,
            );
        }
    }

    // (3) alternating strict approach to a/m, by cross-multiplication.
    for j in 0..=n {
        let below = j % 2 == 0;
        // Against the target value.
        let lhs = alpha(j) * &m;
        let rhs = &a * beta(j);
        let ok = if below { lhs <= rhs } else { lhs >= rhs };
        if !ok {
            fail(
                j,
                format!(
                    "convergent {j} is on the wrong side of a/m for its parity"
                ),
                &mut first_violation,
            );
        }
        // Against the previous convergent of the same parity.
        if j >= 2 {
            let cross_new = alpha(j) * beta(j - 2);
            let cross_old = alpha(j - 2) * beta(j);
            let ok = if below {
                cross_new > cross_old
            } else {
                cross_new < cross_old
            };
            if !ok {
                fail(
                    j,
                    format!("convergents {} and {j} do not move strictly towards a/m", j - 2),
                    &mut first_violation,
                );
            }
        }
    }

    let certificates = (0..=n)
        .map(|j| {
            let strong = 2u32 * beta(j).pow(2) * errs[j].abs() < m.clone() * beta(j);
            ApproxCertificate {
                index: j,
                error_numerator: errs[j].clone(),
                bound: if strong {
                    BoundKind::HalfInvBetaSq
                } else {
                    BoundKind::InvBetaSq
                },
            }
        })
        .collect();

    IdentityReport {
        pairs_checked: n,
        certificates,
        first_violation,
    }
}
