//! The probabilistic star-discrepancy bound, its constant chain and auditor,
//! inverse-discrepancy calculators, and the tail inequalities behind them.
//!
//! The central statement: a uniform random N-point set in [0,1]^s has
//!
//!   D*_N <= 5.7 * sqrt(4.9 + ln(1/(1-q))/s) * sqrt(s/N)
//!
//! with probability at least q. Dropping the 1/s under the inner root gives
//! the dimension-uniform variant. All logarithms are natural; base 2 enters
//! only through the chain depth K. Everything of the form a^s is evaluated
//! in log-space, since direct powers overflow doubles near s = 180.
//!
//! The auditor re-derives every inequality the bound's proof rests on for
//! concrete (q, s, N) and reports each with its slack, so a user can check
//! the constants instead of trusting them.

use serde::Serialize;

use crate::covers::class_cardinality_bound;
use crate::error::{invalid, Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(invalid(format!(
            "q is {q}, must be in the open interval (0,1)"
        )));
    }
    Ok(())
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    Ok(())
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(invalid("sample size must be at least 1"));
    }
    Ok(())
}

/// ln(1/(1-q)): the failure-probability term appearing in every formula.
fn failure_log(q: f64) -> f64 {
    (1.0 / (1.0 - q)).ln()
}

/// Coefficient of sqrt(s/N) in the probabilistic bound:
/// 5.7 * sqrt(4.9 + ln(1/(1-q))/s).
pub fn theorem_coefficient(q: f64, s: usize) -> Result<f64> {
    check_q(q)?;
    check_s(s)?;
    Ok(5.7 * (4.9 + failure_log(q) / s as f64).sqrt())
}

/// The probabilistic bound itself: coefficient * sqrt(s/N).
///
/// Returned for every N, including N below the regime threshold, where it
/// simply exceeds 1 and is vacuously true.
pub fn theorem_bound(q: f64, s: usize, n: u64) -> Result<f64> {
    check_n(n)?;
    Ok(theorem_coefficient(q, s)? * (s as f64 / n as f64).sqrt())
}

/// Dimension-uniform coefficient: 5.7 * sqrt(4.9 + ln(1/(1-q))).
pub fn corollary_coefficient(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(5.7 * (4.9 + failure_log(q)).sqrt())
}

/// Dimension-uniform bound: corollary_coefficient * sqrt(s/N). Never below
/// theorem_bound, with equality at s = 1.
pub fn corollary_bound(q: f64, s: usize, n: u64) -> Result<f64> {
    check_s(s)?;
    check_n(n)?;
    Ok(corollary_coefficient(q)? * (s as f64 / n as f64).sqrt())
}

/// Coefficient matrix: rows follow `s_list`, columns follow `q_list`, so
/// `table[i][j] = theorem_coefficient(q_list[j], s_list[i])`. Raw values;
/// display rounding is the caller's concern.
pub fn coefficient_table(q_list: &[f64], s_list: &[usize]) -> Result<Vec<Vec<f64>>> {
    if q_list.is_empty() || s_list.is_empty() {
        return Err(invalid("q and s lists must be nonempty"));
    }
    s_list
        .iter()
        .map(|&s| q_list.iter().map(|&q| theorem_coefficient(q, s)).collect())
        .collect()
}

/// Smallest N whose probabilistic bound is at most eps:
/// ceil(5.7^2 * (4.9 s + ln(1/(1-q))) / eps^2).
pub fn inverse_discrepancy_theorem(q: f64, s: usize, eps: f64) -> Result<u64> {
    check_q(q)?;
    check_s(s)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid(format!("eps is {eps}, must be positive")));
    }
    let raw = (5.7 * 5.7 * (4.9 * s as f64 + failure_log(q)) / (eps * eps)).ceil();
    if !raw.is_finite() || raw > u64::MAX as f64 {
        return Err(invalid(format!("eps {eps} demands more than 2^64 points")));
    }
    Ok(raw as u64)
}

/// Existence form of the inverse: ceil(100 s / eps^2) points always suffice
/// for discrepancy eps. eps may exceed 1 (the answer bottoms out at 1).
pub fn inverse_discrepancy_existence(s: usize, eps: f64) -> Result<u64> {
    check_s(s)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(invalid(format!("eps is {eps}, must be positive")));
    }
    let raw = (100.0 * s as f64 / (eps * eps)).ceil();
    if raw > u64::MAX as f64 {
        return Err(invalid(format!("eps {eps} demands more than 2^64 points")));
    }
    Ok((raw as u64).max(1))
}

/// Which inequality produced a tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    BernsteinGeneric,
    BernsteinK,
    Hoeffding,
}

/// A tail probability bound. Values above 1 are legal (the inequality is
/// then vacuous) and flagged rather than clamped, so the raw formula value
/// stays auditable.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TailBoundResult {
    pub probability_bound: f64,
    pub inequality: Inequality,
    pub vacuous: bool,
}

impl TailBoundResult {
    fn new(probability_bound: f64, inequality: Inequality) -> Self {
        TailBoundResult {
            probability_bound,
            inequality,
            vacuous: probability_bound > 1.0,
        }
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("t is {t}, must be positive")));
    }
    Ok(())
}

/// Hoeffding tail for a sum of N centered indicators: 2 exp(-2 t^2 / N).
pub fn hoeffding_tail(n: u64, t: f64) -> Result<TailBoundResult> {
    check_n(n)?;
    check_t(t)?;
    Ok(TailBoundResult::new(
        2.0 * (-2.0 * t * t / n as f64).exp(),
        Inequality::Hoeffding,
    ))
}

/// Bernstein tail specialized to variance N 2^-k (1 - 2^-k), valid for
/// k >= 2: 2 exp(-t^2 / (2 N 2^-k (1 - 2^-k) + 2t/3)).
pub fn bernstein_tail_k(n: u64, k: u32, t: f64) -> Result<TailBoundResult> {
    check_n(n)?;
    check_t(t)?;
    if k < 2 {
        return Err(invalid(format!(
            "k is {k}; this specialization needs k >= 2"
        )));
    }
    let p = f64::exp2(-(k as f64));
    let denom = 2.0 * n as f64 * p * (1.0 - p) + 2.0 * t / 3.0;
    Ok(TailBoundResult::new(
        2.0 * (-t * t / denom).exp(),
        Inequality::BernsteinK,
    ))
}

/// Generic Bernstein tail for variables bounded by C with total variance
/// sum_var: 2 exp(-t^2 / (2 sum_var + 2 C t / 3)).
pub fn bernstein_tail_generic(sum_var: f64, c: f64, t: f64) -> Result<TailBoundResult> {
    if !(sum_var >= 0.0 && sum_var.is_finite()) {
        return Err(invalid(format!("sum_var is {sum_var}, must be >= 0")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(invalid(format!("C is {c}, must be positive")));
    }
    check_t(t)?;
    let denom = 2.0 * sum_var + 2.0 * c * t / 3.0;
    Ok(TailBoundResult::new(
        2.0 * (-t * t / denom).exp(),
        Inequality::BernsteinGeneric,
    ))
}

/// Sample sizes below 32 (s + ln(1/(1-q))) are outside the constant chain's
/// regime; the bound exceeds 1 there and holds vacuously.
pub fn trivial_regime_threshold(q: f64, s: usize) -> Result<f64> {
    check_q(q)?;
    check_s(s)?;
    Ok(32.0 * (s as f64 + failure_log(q)))
}

/// The complete constant chain for given (q, s, N).
#[derive(Debug, Clone, Serialize)]
pub struct TheoremConstants {
    pub q: f64,
    pub s: usize,
    pub n: u64,
    /// ln(1/(1-q)).
    pub l: f64,
    /// Chain depth: ceil((log2 N - log2(s + l)) / 2); at least 3 in regime.
    pub k: u32,
    /// c[j] is c_j for 0 <= j <= K.
    pub c: Vec<f64>,
    /// lambda[j] is lambda_{j+2} for 0 <= j <= K-2.
    pub lambda: Vec<f64>,
}

/// Builds the constant chain. Refuses sample sizes below the regime
/// threshold, where the chain's derivation does not apply.
pub fn build_constants(q: f64, s: usize, n: u64) -> Result<TheoremConstants> {
    check_q(q)?;
    check_s(s)?;
    check_n(n)?;
    let l = failure_log(q);
    let threshold = 32.0 * (s as f64 + l);
    if (n as f64) < threshold {
        return Err(Error::TrivialRegime { n, threshold });
    }
    let sf = s as f64;
    let k = (((n as f64).log2() - (sf + l).log2()) / 2.0).ceil() as u32;
    assert!(k >= 3, "chain depth {k} below 3 inside the regime");

    let ln_tail = (8.0 / (1.0 - q)).ln();
    let c0 = ((1.0 + 6.0f64.ln()) / 2.0 + ln_tail / (2.0 * sf)).sqrt();
    let c1 = ((1.0 + 10.0f64.ln()) / 2.0 + ln_tail / (2.0 * sf)).sqrt();
    let mut c = vec![c0, c1];
    let mut lambda = Vec::with_capacity(k as usize - 1);
    let p_top = f64::exp2(-(k as f64));
    for j in 2..=k {
        let p = f64::exp2(-(j as f64));
        let lam = (2.0 * p * (1.0 - p) + 2.08 * 4.0 * p_top / 3.0).sqrt();
        let pow = f64::exp2((j + 1) as f64);
        let inner = 1.0 + (2.0 * (pow + 1.0)).ln() + (pow / (1.0 - q)).ln() / sf;
        c.push(inner.sqrt() * lam);
        lambda.push(lam);
    }
    Ok(TheoremConstants {
        q,
        s,
        n,
        l,
        k,
        c,
        lambda,
    })
}

/// One audited inequality: `pass` means lhs <= rhs (strict or with the
/// stated tolerance for the identity checks); margin is rhs - lhs.
#[derive(Debug, Clone, Serialize)]
pub struct AuditCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl AuditCheck {
    fn le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        AuditCheck {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs,
        }
    }

    fn le_guarded(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        AuditCheck {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs + tol * rhs.abs().max(1.0),
        }
    }

    fn identity(name: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        AuditCheck {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: (lhs - rhs).abs() <= rel_tol * rhs.abs().max(1.0),
        }
    }

    fn lt(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        AuditCheck {
            name: name.into(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs < rhs,
        }
    }
}

/// The audited inequality chain with its constants.
#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub constants: TheoremConstants,
    pub checks: Vec<AuditCheck>,
    pub overall: bool,
}

/// Re-checks every inequality of the bound's derivation at (q, s, N).
///
/// Check names, in order:
/// - `kest_lower`, `kest_upper`: 2^-K lies in [sqrt(s+L)/(2 sqrt(N)), sqrt(s+L)/sqrt(N)].
/// - `c0_bound`, `c1_bound`: c_0, c_1 against (1/sqrt 2) sqrt(4.88 + L/s)
///   and (1/sqrt 2) sqrt(5.39 + L/s).
/// - `ck_ratio`: max over 2 <= k <= K of c_k sqrt(s)/sqrt(s+L), against 2.08.
/// - `ck_sum`: sum of c_2..c_K against 3.28 sqrt(5.98 + L/s).
/// - `assembly`: sqrt(1 + L/s) + sum of c_0..c_K against 5.7 sqrt(4.9 + L/s).
/// - `budget_k0`, `budget_k1`: log-space identities; the class-count times
///   tail-bound product equals (1-q)/4 exactly, so lhs and rhs (both logs)
///   must agree to relative error 1e-10.
/// - `budget_k2`..`budget_kK`: log of class-count times tail-bound, at most
///   log((1-q)/2^k) plus rounding guard.
/// - `budget_total`: the summed failure budget against
///   (3/4 + sum_{k=3}^K 2^-k)(1-q).
/// - `budget_strict`: that cap is strictly below 1-q.
pub fn audit_proof(q: f64, s: usize, n: u64) -> Result<AuditReport> {
    let tc = build_constants(q, s, n)?;
    let sf = s as f64;
    let nf = n as f64;
    let l = tc.l;
    let kk = tc.k;
    let p_top = f64::exp2(-(kk as f64));
    let mut checks = vec![
        AuditCheck::le(
            "kest_lower",
            (sf + l).sqrt() / (2.0 * nf.sqrt()),
            p_top,
        ),
        AuditCheck::le("kest_upper", p_top, (sf + l).sqrt() / nf.sqrt()),
        AuditCheck::le("c0_bound", tc.c[0], (4.88 + l / sf).sqrt() / SQRT_2),
        AuditCheck::le("c1_bound", tc.c[1], (5.39 + l / sf).sqrt() / SQRT_2),
    ];

    let ratio = tc.c[2..]
        .iter()
        .map(|ck| ck * sf.sqrt() / (sf + l).sqrt())
        .fold(f64::NEG_INFINITY, f64::max);
    checks.push(AuditCheck::le("ck_ratio", ratio, 2.08));

    let sum_tail: f64 = tc.c[2..].iter().sum();
    checks.push(AuditCheck::le(
        "ck_sum",
        sum_tail,
        3.28 * (5.98 + l / sf).sqrt(),
    ));

    let sum_all: f64 = tc.c.iter().sum();
    checks.push(AuditCheck::le(
        "assembly",
        (1.0 + l / sf).sqrt() + sum_all,
        5.7 * (4.9 + l / sf).sqrt(),
    ));

    // Failure-probability budget, all in log-space. Each term is the class
    // count times its tail bound; k = 0 and k = 1 collapse algebraically to
    // (1-q)/4 each, k >= 2 to (1-q)/2^k.
    let log_fail = (1.0 - q).ln();
    let budget0 =
        class_cardinality_bound(s, 0)?.log_value + LN_2 - 2.0 * tc.c[0] * tc.c[0] * sf;
    checks.push(AuditCheck::identity(
        "budget_k0",
        budget0,
        log_fail - 2.0 * LN_2,
        1e-10,
    ));
    let budget1 =
        class_cardinality_bound(s, 1)?.log_value + LN_2 - 2.0 * tc.c[1] * tc.c[1] * sf;
    checks.push(AuditCheck::identity(
        "budget_k1",
        budget1,
        log_fail - 2.0 * LN_2,
        1e-10,
    ));

    let mut budget_logs = vec![budget0, budget1];
    for k in 2..=kk {
        let p = f64::exp2(-(k as f64));
        let ck = tc.c[k as usize];
        let denom = 2.0 * p * (1.0 - p) + 4.0 * 2.08 * p_top / 3.0;
        let lhs = class_cardinality_bound(s, k)?.log_value + LN_2 - ck * ck * sf / denom;
        let rhs = log_fail - k as f64 * LN_2;
        checks.push(AuditCheck::le_guarded(format!("budget_k{k}"), lhs, rhs, 1e-9));
        budget_logs.push(lhs);
    }

    let total: f64 = budget_logs.iter().map(|b| b.exp()).sum();
    let mut cap_factor = 0.75;
    for k in 3..=kk {
        cap_factor += f64::exp2(-(k as f64));
    }
    let cap = cap_factor * (1.0 - q);
    checks.push(AuditCheck::le_guarded("budget_total", total, cap, 1e-9));
    checks.push(AuditCheck::lt("budget_strict", cap, 1.0 - q));

    let overall = checks.iter().all(|c| c.pass);
    Ok(AuditReport {
        constants: tc,
        checks,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: f64, expected: f64, tol: f64) {
        assert!(
            (x - expected).abs() <= tol,
            "{x} differs from {expected} by more than {tol}"
        );
    }

    #[test]
    fn bound_reference_values() {
        assert_close(
            theorem_bound(0.9, 10, 1000).unwrap(),
            1.2910542163950272,
            1e-15,
        );
        assert_close(
            theorem_coefficient(0.9, 1).unwrap(),
            15.297450430427175,
            1e-13,
        );
        assert_close(
            corollary_bound(0.9, 10, 1000).unwrap(),
            1.5297450430427175,
            1e-14,
        );
    }

    #[test]
    fn coefficient_table_rows() {
        let table = coefficient_table(&[0.01, 0.5, 0.9, 0.99, 0.999], &[10, 100]).unwrap();
        let row10 = [
            12.61878178, 12.70641709, 12.91054216, 13.19709051, 13.47754788,
        ];
        let row100 = [
            12.61761726, 12.62640897, 12.64709887, 12.67664071, 12.70611387,
        ];
        for (got, want) in table[0].iter().zip(row10) {
            assert_close(*got, want, 1e-7);
        }
        for (got, want) in table[1].iter().zip(row100) {
            assert_close(*got, want, 1e-7);
        }
    }

    #[test]
    fn coefficient_limits() {
        // Vanishing failure-log term from either direction.
        let base = 5.7 * 4.9f64.sqrt();
        assert_close(theorem_coefficient(1e-15, 1).unwrap(), base, 1e-9);
        assert_close(theorem_coefficient(0.9, 1_000_000_000).unwrap(), base, 1e-6);
    }

    #[test]
    fn coefficient_monotone_in_s_and_q() {
        for qi in 1..=20 {
            let q = qi as f64 / 21.0;
            let mut prev = f64::INFINITY;
            for s in 1..=20 {
                let c = theorem_coefficient(q, s).unwrap();
                assert!(c < prev, "not decreasing in s at q={q}, s={s}");
                prev = c;
            }
        }
        for s in 1..=20 {
            let mut prev = 0.0;
            for qi in 1..=20 {
                let q = qi as f64 / 21.0;
                let c = theorem_coefficient(q, s).unwrap();
                assert!(c > prev, "not increasing in q at s={s}, q={q}");
                prev = c;
            }
        }
    }

    #[test]
    fn corollary_dominates_theorem() {
        for &q in &[0.1, 0.5, 0.9] {
            let t = theorem_bound(q, 1, 100).unwrap();
            let c = corollary_bound(q, 1, 100).unwrap();
            assert_eq!(t.to_bits(), c.to_bits(), "s=1 must coincide exactly");
            for &s in &[2usize, 5, 50] {
                let t = theorem_bound(q, s, 100).unwrap();
                let c = corollary_bound(q, s, 100).unwrap();
                assert!(t < c, "q={q}, s={s}");
            }
        }
    }

    #[test]
    fn inverse_theorem_examples() {
        // bound(0.9, 10, 999) = 1.29170... <= 1.292 while N = 998 gives
        // 1.29235... > 1.292, so the smallest admissible N is 999.
        assert_eq!(inverse_discrepancy_theorem(0.9, 10, 1.292).unwrap(), 999);
        assert!(theorem_bound(0.9, 10, 999).unwrap() <= 1.292);
        assert!(theorem_bound(0.9, 10, 998).unwrap() > 1.292);
        assert_eq!(inverse_discrepancy_theorem(1e-15, 1, 1.0 - 1e-12).unwrap(), 160);
    }

    #[test]
    fn inverse_scaling_and_consistency() {
        for &(q, s) in &[(0.3, 1usize), (0.9, 5), (0.99, 20)] {
            for &eps in &[0.9, 0.5, 0.25, 0.1] {
                let n = inverse_discrepancy_theorem(q, s, eps).unwrap();
                assert!(theorem_bound(q, s, n).unwrap() <= eps);
                if n > 1 {
                    assert!(theorem_bound(q, s, n - 1).unwrap() > eps);
                }
                let n_half = inverse_discrepancy_theorem(q, s, eps / 2.0).unwrap();
                assert!((n_half as i128 - 4 * n as i128).unsigned_abs() <= 4);
            }
        }
    }

    #[test]
    fn inverse_existence_examples() {
        assert_eq!(inverse_discrepancy_existence(1, 1.0).unwrap(), 100);
        assert_eq!(inverse_discrepancy_existence(15, 0.25).unwrap(), 24000);
        assert_eq!(inverse_discrepancy_existence(1, 10.0).unwrap(), 1);
    }

    #[test]
    fn hoeffding_examples() {
        let r = hoeffding_tail(100, 10.0).unwrap();
        let expected = 2.0 * (-2.0f64).exp();
        assert!((r.probability_bound - expected).abs() <= 1e-12 * expected);
        assert!(!r.vacuous);
        assert_eq!(r.inequality, Inequality::Hoeffding);

        let r = hoeffding_tail(100, 1e-9).unwrap();
        assert_close(r.probability_bound, 2.0, 1e-12);
        assert!(r.vacuous);

        let r = hoeffding_tail(1, 1.0).unwrap();
        assert_close(r.probability_bound, 2.0 * (-2.0f64).exp(), 1e-15);
    }

    #[test]
    fn bernstein_k_examples() {
        let r = bernstein_tail_k(100, 2, 10.0).unwrap();
        assert_close(r.probability_bound, 0.20783645910654888, 1e-15);
        assert!(bernstein_tail_k(100, 1, 10.0).is_err());
        assert_close(bernstein_tail_k(100, 2, 1e-12).unwrap().probability_bound, 2.0, 1e-9);
        // Large k: variance term vanishes, bound tends to 2 exp(-3t/2).
        let r = bernstein_tail_k(100, 60, 2.0).unwrap();
        assert_close(r.probability_bound, 2.0 * (-3.0f64).exp(), 1e-12);
    }

    #[test]
    fn bernstein_generic_specializes_to_k() {
        for &n in &[1u64, 10, 100, 1000, 10_000] {
            for &k in &[2u32, 3, 5, 10] {
                for &t in &[0.1, 1.0, 5.0, 10.0, 100.0] {
                    let p = f64::exp2(-(k as f64));
                    let sum_var = n as f64 * p * (1.0 - p);
                    let g = bernstein_tail_generic(sum_var, 1.0, t).unwrap();
                    let spec = bernstein_tail_k(n, k, t).unwrap();
                    assert!(
                        (g.probability_bound - spec.probability_bound).abs()
                            <= 1e-12 * spec.probability_bound.max(1e-300),
                        "n={n} k={k} t={t}"
                    );
                }
            }
        }
        let r = bernstein_tail_generic(0.0, 1.0, 1.0).unwrap();
        assert_close(r.probability_bound, 2.0 * (-1.5f64).exp(), 1e-15);
    }

    #[test]
    fn tails_anti_monotone_in_t() {
        let ts = [0.1, 0.5, 1.0, 2.0, 10.0, 50.0];
        let mut prev = [f64::INFINITY; 3];
        for &t in &ts {
            let h = hoeffding_tail(50, t).unwrap().probability_bound;
            let bk = bernstein_tail_k(50, 3, t).unwrap().probability_bound;
            let bg = bernstein_tail_generic(12.5, 1.0, t).unwrap().probability_bound;
            assert!(h <= prev[0] && bk <= prev[1] && bg <= prev[2], "t={t}");
            prev = [h, bk, bg];
        }
    }

    #[test]
    fn constants_reference_values() {
        let tc = build_constants(0.9, 5, 1000).unwrap();
        assert_eq!(tc.k, 4);
        assert_close(tc.c[0], 1.3542829830140434, 1e-15);
        assert_close(tc.c[1], 1.4455086336526707, 1e-15);
        assert_close(tc.lambda[0], 0.7404953297174354, 1e-15);
        assert_close(tc.c[2], 1.6167197556108168, 1e-15);
        assert_eq!(tc.c.len(), 5);
        assert_eq!(tc.lambda.len(), 3);

        // The depth-selection interval around 2^-K.
        let interval_lo = (5.0 + tc.l).sqrt() / (2.0 * 1000.0f64.sqrt());
        let interval_hi = (5.0 + tc.l).sqrt() / 1000.0f64.sqrt();
        assert_close(interval_lo, 0.04272758211, 1e-10);
        assert_close(interval_hi, 0.08545516423, 1e-10);
        let p = f64::exp2(-(tc.k as f64));
        assert!(interval_lo <= p && p <= interval_hi);
    }

    #[test]
    fn trivial_regime_is_refused_with_threshold() {
        let err = build_constants(0.9, 10, 100).unwrap_err();
        match &err {
            Error::TrivialRegime { n, threshold } => {
                assert_eq!(*n, 100);
                assert_close(*threshold, 32.0 * (10.0 + failure_log(0.9)), 1e-12);
            }
            other => panic!("wrong variant: {other:?}"),
        }
        assert_eq!(err.exit_code(), 3);
        assert!(audit_proof(0.9, 10, 100).is_err());
    }

    #[test]
    fn regime_boundary_is_accepted() {
        let q = 0.999;
        let threshold = trivial_regime_threshold(q, 1).unwrap();
        let n = threshold.ceil() as u64;
        let report = audit_proof(q, 1, n).unwrap();
        assert!(report.overall);
        assert!(report.constants.k >= 3);
    }

    #[test]
    fn audit_passes_and_identities_are_tight() {
        let report = audit_proof(0.9, 10, 1_000_000).unwrap();
        assert!(report.overall);
        for check in &report.checks {
            assert!(check.pass, "{} failed: {:?}", check.name, check);
        }
        let b0 = report
            .checks
            .iter()
            .find(|c| c.name == "budget_k0")
            .unwrap();
        assert!(b0.margin.abs() <= 1e-10 * b0.rhs.abs().max(1.0));
        let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"assembly"));
        assert!(names.contains(&"budget_strict"));
        // 7 structural checks, 2 identity budgets, K-1 dyadic budgets,
        // the total and the strict cap.
        assert_eq!(report.checks.len(), report.constants.k as usize + 10);
    }

    #[test]
    fn audit_overall_reflects_every_check() {
        let report = audit_proof(0.5, 3, 100_000).unwrap();
        assert_eq!(report.overall, report.checks.iter().all(|c| c.pass));
    }

    #[test]
    fn input_validation() {
        assert_eq!(theorem_bound(1.0, 1, 1).unwrap_err().exit_code(), 2);
        assert_eq!(theorem_bound(0.0, 1, 1).unwrap_err().exit_code(), 2);
        assert!(theorem_bound(0.5, 0, 1).is_err());
        assert!(theorem_bound(0.5, 1, 0).is_err());
        assert!(inverse_discrepancy_theorem(0.5, 1, 0.0).is_err());
        assert!(inverse_discrepancy_theorem(0.5, 1, f64::INFINITY).is_err());
        assert!(inverse_discrepancy_existence(1, 0.0).is_err());
        assert!(coefficient_table(&[], &[1]).is_err());
    }
}
