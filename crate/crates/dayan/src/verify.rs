//! Randomized cross-checking of every layer against independent oracles.
//!
//! A corpus is a deterministic stream of valid pairs `(a, m)` drawn from a
//! seeded ChaCha generator; the first `k` pairs do not depend on the
//! requested sample count, so sub-corpora are stable across runs. Over a
//! corpus, [`run`] exercises four suites:
//!
//! * **inverse_and_invariants** — every trace passes
//!   [`qin::check_invariants`] and its inverse matches an independent
//!   extended-Euclid implementation ([`extended_euclid_inverse`]);
//! * **continued_fractions** — the expansion evaluates back to `a/m`, the
//!   state correspondence and the convergent identities hold, and the
//!   expansion is the canonical floor-division one or its last-term split;
//! * **lattice_bases_and_signs** — all state bases lie in the lattice with
//!   determinant exactly `m`, the certified shortest vector is
//!   well-formed and reproducible from its provenance, the inner products
//!   end positive (with a sign change) whenever the squared inverse is at
//!   least `m`, and trivial-case answers agree with the certified scan;
//! * **svp_oracle** — on a (capped-size) prefix of the corpus, the
//!   brute-force enumeration oracle confirms the certified norm, the
//!   planar Hermite bound, and the trivial-case norm formulas.
//!
//! The sign-change heuristic is additionally *measured* — never asserted —
//! against the certified norm, together with the distribution of where in
//! the run the sign change lands. Reports render deterministically: the
//! same corpus yields byte-identical text.

use crate::{cf, lattice, qin};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// What to run: corpus size and shape, plus how many of the samples also
/// get the (much more expensive) enumeration-oracle treatment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub samples: usize,
    pub max_m: u64,
    pub seed: u64,
    pub svp_samples: usize,
}

impl CorpusSpec {
    /// Oracle cross-checks default to the first `min(samples, 1000)` pairs;
    /// the remaining suites always cover the full corpus.
    pub fn new(samples: usize, max_m: u64, seed: u64) -> Self {
        CorpusSpec {
            samples,
            max_m,
            seed,
            svp_samples: samples.min(1000),
        }
    }

    pub fn with_svp_samples(mut self, svp_samples: usize) -> Self {
        self.svp_samples = svp_samples;
        self
    }
}

/// Draws `samples` valid pairs `(a, m)` with `3 <= m <= max_m`, uniformly
/// by rejection. Deterministic in `seed`, and prefix-stable: the first `k`
/// pairs are the same for every `samples >= k`.
pub fn sample_pairs(samples: usize, max_m: u64, seed: u64) -> Vec<(BigUint, BigUint)> {
    assert!(
        samples == 0 || max_m >= 3,
        "drawing pairs requires max_m >= 3"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let m = rng.random_range(3..=max_m);
        let a = rng.random_range(2..m);
        if num_integer::gcd(a, m) == 1 {
            out.push((BigUint::from(a), BigUint::from(m)));
        }
    }
    out
}

/// Modular inverse by the textbook extended Euclidean algorithm — a fully
/// independent oracle for the state machine (floor divisions, signed
/// Bezout bookkeeping, no matrices). `None` when no inverse exists.
pub fn extended_euclid_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return None;
    }
    let m_int = BigInt::from(m.clone());
    let (mut r0, mut r1) = (m_int.clone(), BigInt::from(a.clone()));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if !r0.is_one() {
        return None;
    }
    t0.mod_floor(&m_int).to_biguint()
}

/// The canonical (floor-division) continued fraction of `a/m` after the
/// leading 0: the quotient sequence of Euclid's algorithm on `(m, a)`.
/// Independent of the state machine.
pub fn canonical_expansion(a: &BigUint, m: &BigUint) -> Vec<BigUint> {
    let (mut x, mut y) = (m.clone(), a.clone());
    let mut out = Vec::new();
    while !y.is_zero() {
        let (q, r) = x.div_rem(&y);
        out.push(q);
        x = std::mem::replace(&mut y, r);
    }
    out
}

/// Whether a least-positive-remainder expansion matches the canonical one:
/// either exactly, or with the canonical last term `t >= 2` split into
/// `t - 1, 1`.
pub fn expansion_matches_canonical(pq: &[BigUint], canonical: &[BigUint]) -> bool {
    if pq == canonical {
        return true;
    }
    let n = canonical.len();
    if n == 0 || pq.len() != n + 1 {
        return false;
    }
    let last = &canonical[n - 1];
    if last <= &BigUint::one() {
        return false;
    }
    pq[..n - 1] == canonical[..n - 1] && pq[n - 1] == last - 1u32 && pq[n].is_one()
}

/// Pass/fail tally of one suite, with the first failure spelled out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, result: Result<(), String>, context: &str) -> bool {
        match result {
            Ok(()) => {
                self.passed += 1;
                true
            }
            Err(msg) => {
                self.failed += 1;
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("{context}: {msg}"));
                }
                false
            }
        }
    }
}

/// Measured (never asserted) behavior of the sign-change heuristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicStats {
    pub samples: usize,
    /// How often the heuristic's norm equals the certified norm.
    pub matched: usize,
    /// Histogram of the relative sign-change position k0/N in ten bins
    /// `[0, 0.1), [0.1, 0.2), ..., [0.9, 1)`.
    pub decile_counts: [usize; 10],
    /// Corpus lattices whose inner products never turn positive (the
    /// trivial inverse case), so no sign change exists.
    pub no_sign_change: usize,
}

/// Everything a verification run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub samples: usize,
    pub max_m: u64,
    pub seed: u64,
    /// Effective number of oracle-checked samples.
    pub svp_samples: usize,
    pub suites: Vec<SuiteOutcome>,
    pub heuristic: HeuristicStats,
    pub total: usize,
    /// Samples passing every suite that applied to them.
    pub total_passed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.total_passed == self.total
    }

    /// Deterministic text report; no timing, no environment, same corpus in,
    /// same bytes out.
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "corpus: samples={} max_m={} seed={} svp_samples={}",
            self.samples, self.max_m, self.seed, self.svp_samples
        )
        .unwrap();
        for suite in &self.suites {
            writeln!(
                s,
                "suite {}: {}/{} passed",
                suite.name,
                suite.passed,
                suite.passed + suite.failed
            )
            .unwrap();
            if let Some(f) = &suite.first_failure {
                writeln!(s, "  first failure: {f}").unwrap();
            }
        }
        writeln!(
            s,
            "heuristic agreement: {}/{} matched (measured, not asserted)",
            self.heuristic.matched, self.heuristic.samples
        )
        .unwrap();
        write!(s, "sign-change position deciles (k0/N):").unwrap();
        for c in self.heuristic.decile_counts {
            write!(s, " {c}").unwrap();
        }
        writeln!(s, " (no sign change: {})", self.heuristic.no_sign_change).unwrap();
        writeln!(s, "{}/{} passed", self.total_passed, self.total).unwrap();
        s
    }
}

fn check_qin(trace: &qin::Trace) -> Result<(), String> {
    qin::check_invariants(trace).map_err(|v| format!("invariant suite: {v}"))?;
    let want = extended_euclid_inverse(trace.a(), trace.m())
        .ok_or_else(|| "oracle found no inverse".to_string())?;
    if trace.inverse() != &want {
        return Err(format!(
            "inverse {} differs from extended-Euclid oracle {want}",
            trace.inverse()
        ));
    }
    Ok(())
}

fn check_cf(trace: &qin::Trace) -> Result<(), String> {
    let cfx = cf::expansion(trace);
    let (num, den) = cf::evaluate(&cfx).map_err(|e| e.to_string())?;
    if (&num, &den) != (trace.a(), trace.m()) {
        return Err(format!("expansion evaluates to {num}/{den}, not a/m"));
    }
    let corr = cf::check_state_correspondence(trace);
    if let Some(v) = corr.first_violation {
        return Err(format!("state correspondence: {v}"));
    }
    let ids = cf::check_identities(trace);
    if let Some(v) = ids.first_violation {
        return Err(format!("convergent identities: {v}"));
    }
    let canon = canonical_expansion(trace.a(), trace.m());
    if !expansion_matches_canonical(cfx.partial_quotients(), &canon) {
        return Err("expansion is neither canonical nor its last-term split".to_string());
    }
    Ok(())
}

fn check_lattice(trace: &qin::Trace, certified: &lattice::SVReport) -> Result<(), String> {
    let p = lattice::LatticeParams::from_trace(trace);
    let m_int = BigInt::from(trace.m().clone());
    for k in 0..=trace.n_steps() {
        let b = lattice::basis_at(trace, k).map_err(|e| e.to_string())?;
        if !lattice::contains(&p, &b.v1) || !lattice::contains(&p, &b.v2) {
            return Err(format!("a basis row at step {k} is not a lattice point"));
        }
        if b.det() != m_int {
            return Err(format!("basis determinant at step {k} is not m"));
        }
    }
    let d = lattice::duality_basis(trace);
    if d.det() != m_int || !lattice::contains(&p, &d.v1) || !lattice::contains(&p, &d.v2) {
        return Err("duality basis is not a determinant-m basis".to_string());
    }
    // inner_products re-verifies its recursion internally (panicking on a
    // breach); the countable claim here is the positivity argument.
    let ip = lattice::inner_products(trace);
    let u = trace.inverse();
    if &(u * u) >= trace.m() {
        if !ip.values.last().expect("non-empty").is_positive() {
            return Err("squared inverse >= m but inner products do not end positive".to_string());
        }
        if ip.sign_change_index.is_none() {
            return Err("inner products end positive but no sign-change index".to_string());
        }
    }
    if certified.norm_sq != certified.shortest.norm_sq() {
        return Err("certified report's norm is not its vector's norm".to_string());
    }
    if !lattice::contains(&p, &certified.shortest) {
        return Err("certified shortest vector is not a lattice point".to_string());
    }
    if !lattice::reproduces_from_source(trace, certified) {
        return Err("certified shortest vector does not reproduce from its source".to_string());
    }
    if let Some(trivial) = lattice::trivial_shortest(&p) {
        if trivial.norm_sq != certified.norm_sq {
            return Err(format!(
                "trivial-case norm {} differs from certified norm {}",
                trivial.norm_sq, certified.norm_sq
            ));
        }
    }
    Ok(())
}

fn check_svp(trace: &qin::Trace, certified: &lattice::SVReport) -> Result<(), String> {
    let p = lattice::LatticeParams::from_trace(trace);
    let minima = lattice::oracle_shortest(&p, 1).map_err(|e| e.to_string())?;
    let lambda1_sq = &minima[0].1;
    if lambda1_sq != &certified.norm_sq {
        return Err(format!(
            "oracle minimum norm {lambda1_sq} differs from certified {}",
            certified.norm_sq
        ));
    }
    if !lattice::hermite_bound_holds(lambda1_sq, trace.m()) {
        return Err("planar Hermite bound violated".to_string());
    }
    let (a, m, u) = (trace.a(), trace.m(), trace.inverse());
    if &(a * a) < m && *lambda1_sq != BigUint::one() + a * a {
        return Err("a^2 < m but the oracle minimum is not 1 + a^2".to_string());
    }
    if &(u * u) < m && *lambda1_sq != BigUint::one() + u * u {
        return Err("(a^-1)^2 < m but the oracle minimum is not 1 + (a^-1)^2".to_string());
    }
    Ok(())
}

/// Runs all suites over the corpus described by `spec`.
pub fn run(spec: &CorpusSpec) -> VerifyReport {
    let pairs = sample_pairs(spec.samples, spec.max_m, spec.seed);
    let mut qin_suite = SuiteOutcome::new("inverse_and_invariants");
    let mut cf_suite = SuiteOutcome::new("continued_fractions");
    let mut lat_suite = SuiteOutcome::new("lattice_bases_and_signs");
    let mut svp_suite = SuiteOutcome::new("svp_oracle");
    let mut heuristic = HeuristicStats {
        samples: 0,
        matched: 0,
        decile_counts: [0; 10],
        no_sign_change: 0,
    };
    let mut total_passed = 0;

    for (i, (a, m)) in pairs.iter().enumerate() {
        let context = format!("(a, m) = ({a}, {m})");
        let trace = match qin::run(a, m) {
            Ok(t) => t,
            Err(e) => {
                // Cannot happen for sampled pairs; count it against every suite.
                qin_suite.record(Err(format!("run failed: {e}")), &context);
                cf_suite.record(Err("no trace".to_string()), &context);
                lat_suite.record(Err("no trace".to_string()), &context);
                if i < spec.svp_samples {
                    svp_suite.record(Err("no trace".to_string()), &context);
                }
                continue;
            }
        };
        let certified = lattice::shortest_via_states(&trace);

        let mut ok = qin_suite.record(check_qin(&trace), &context);
        ok &= cf_suite.record(check_cf(&trace), &context);
        ok &= lat_suite.record(check_lattice(&trace, &certified), &context);
        if i < spec.svp_samples {
            ok &= svp_suite.record(check_svp(&trace, &certified), &context);
        }
        if ok {
            total_passed += 1;
        }

        heuristic.samples += 1;
        let guess = lattice::heuristic_shortest(&trace);
        if guess.norm_sq == certified.norm_sq {
            heuristic.matched += 1;
        }
        match certified.inner_products.sign_change_index {
            Some(k0) => {
                let bin = (10 * k0 / trace.n_steps()).min(9);
                heuristic.decile_counts[bin] += 1;
            }
            None => heuristic.no_sign_change += 1,
        }
    }

    VerifyReport {
        samples: spec.samples,
        max_m: spec.max_m,
        seed: spec.seed,
        svp_samples: spec.svp_samples.min(spec.samples),
        suites: vec![qin_suite, cf_suite, lat_suite, svp_suite],
        heuristic,
        total: spec.samples,
        total_passed,
    }
}
