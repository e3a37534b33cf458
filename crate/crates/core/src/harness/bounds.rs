//! Exact checks of the overhang and mass-movement bounds on concrete inputs.
//!
//! Thresholds of the form `c n^{1/3}` are compared by cubing and the
//! `p^{3/2}` factors by squaring, so no verdict depends on floating point.
//! The one irrational threshold, `2 n^{1/3} log₂ n`, is replaced by a dyadic
//! lower bound, which can only make a pass harder to obtain.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{CheckRecord, HarnessError, Relation, VerificationReport};
use crate::massmove::{is_weight_constrained, Distribution, Step, Trace};
use crate::rational::{half, int, to_fixed, Exact, Rational};

/// Smallest accepted number of fractional bits for the `log₂` threshold.
pub const MIN_PRECISION_BITS: u32 = 64;

fn cube(q: &Rational) -> Rational {
    q * q * q
}

fn pow2(bits: u32) -> BigUint {
    BigUint::one() << bits
}

fn dyadic(numer: BigUint, bits: u32) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(pow2(bits)))
}

/// `⌊n^{1/3} 2^bits⌋ / 2^bits`.
pub fn cbrt_lower(n: u64, bits: u32) -> Rational {
    let scaled = BigUint::from(n) << (3 * bits);
    dyadic(scaled.cbrt(), bits)
}

/// A lower bound on `log₂ n` with `bits` fractional bits, by repeated
/// squaring of the mantissa. Every truncation rounds down, and the digits
/// produced are exact digits of a number no larger than the true mantissa.
pub fn log2_lower(n: u64, bits: u32) -> Rational {
    assert!(n >= 1, "log₂ of zero");
    let k = 63 - n.leading_zeros();
    let scale = bits + 32;
    let one = pow2(scale);
    let two = &one << 1u32;
    let mut y = (BigUint::from(n) << scale) >> k;
    let mut digits = BigUint::from(k) << bits;
    for i in (0..bits).rev() {
        y = (&y * &y) >> scale;
        if y >= two {
            digits |= BigUint::one() << i;
            y >>= 1u32;
        }
    }
    dyadic(digits, bits)
}

/// `τ⁻ <= 2 n^{1/3} log₂ n`.
pub fn tm2_threshold_lower(n: u64, bits: u32) -> Rational {
    int(2) * cbrt_lower(n, bits) * log2_lower(n, bits)
}

/// `overhang³ <= 216 n`, with `n` the total weight.
pub(super) fn main_bound_record(overhang: &Rational, n: &Rational) -> CheckRecord {
    CheckRecord::compare(
        "main bound",
        "overhang³",
        cube(overhang),
        Relation::Le,
        "216·n",
        int(216) * n,
    )
    .with_note(format!("overhang = {}, n = {}", Exact(overhang), Exact(n)))
}

/// Records for the two non-normative alternatives to the main bound.
pub(super) fn improved_records(overhang: &Rational, n: &Rational) -> Vec<CheckRecord> {
    let mut out = vec![CheckRecord::info(
        "improved bound (non-normative)",
        "overhang³",
        cube(overhang),
        Relation::Le,
        "(9/2)³·n",
        Rational::new(729.into(), 8.into()) * n,
    )];
    let whole = n.ceil().to_integer();
    if let Some(w) = u64::try_from(whole).ok().filter(|&w| w >= 2) {
        let log = log2_lower(w, MIN_PRECISION_BITS);
        out.push(
            CheckRecord::info(
                "conjectured shape (non-normative)",
                "overhang³",
                cube(overhang),
                Relation::Le,
                "⌈n⌉·(log₂⌈n⌉)²",
                Rational::from_integer(w.into()) * &log * &log,
            )
            .with_note("n^{1/3}(log₂ n)^{2/3} with c = 1; log₂ rounded down"),
        );
    }
    out
}

fn require(holds: bool, what: &str) -> Result<(), HarnessError> {
    if holds {
        Ok(())
    } else {
        Err(HarnessError::PreconditionViolated(what.to_string()))
    }
}

fn require_no_lossy(trace: &Trace) -> Result<(), HarnessError> {
    require(
        trace
            .steps()
            .iter()
            .all(|(s, _)| !matches!(s, Step::Lossy(_))),
        "trace must not contain lossy moves",
    )
}

fn require_unit(trace: &Trace) -> Result<(), HarnessError> {
    require_no_lossy(trace)?;
    require(
        trace.steps().iter().all(|(s, _)| s.is_unit()),
        "every move must have unit width",
    )
}

fn require_start(mu0: &Distribution, n: &Rational) -> Result<(), HarnessError> {
    let zero = Rational::zero();
    require(
        mu0.mass_above(&zero).is_zero(),
        "initial mass must lie in x ≤ 0",
    )?;
    require(mu0.total_mass() <= *n, "initial mass must be at most n")
}

/// The final distribution has no mass at `x >= 6 n^{1/3} - 1`. A point `x`
/// is counted iff `x + 1 >= 0` and `(x + 1)³ >= 216 n`.
pub fn check_t_m1(trace: &Trace, n: &Rational) -> Result<VerificationReport, HarnessError> {
    require(*n >= Rational::one(), "n must be at least 1")?;
    require_no_lossy(trace)?;
    require_start(trace.initial(), n)?;
    require(
        is_weight_constrained(trace)?,
        "trace must be weight-constrained",
    )?;

    let bound = int(216) * n;
    let beyond = trace.last().mass_where(|x| {
        let shifted = x + Rational::one();
        !shifted.is_negative() && cube(&shifted) >= bound
    });
    let rightmost = trace.last().points().last().map(|(x, _)| x.clone());
    let mut record = CheckRecord::compare(
        "T_m1",
        "ν{x ≥ 6n^{1/3}−1}",
        beyond,
        Relation::Le,
        "",
        Rational::zero(),
    );
    if let Some(x) = rightmost {
        let shifted = &x + Rational::one();
        record = record.with_note(format!(
            "rightmost point x = {}, (x+1)³ = {}, 216·n = {}",
            Exact(&x),
            Exact(&cube(&shifted)),
            Exact(&bound)
        ));
    }
    let mut report = VerificationReport::new("trace");
    report.push(record);
    Ok(report)
}

/// [`check_t_m2_with_precision`] at the default precision.
pub fn check_t_m2(trace: &Trace, n: u64) -> Result<VerificationReport, HarnessError> {
    check_t_m2_with_precision(trace, n, MIN_PRECISION_BITS)
}

/// `ν{x >= τ⁻} < 1` with `τ⁻` a dyadic lower bound on `2 n^{1/3} log₂ n`.
/// Precisions below [`MIN_PRECISION_BITS`] are raised to it.
pub fn check_t_m2_with_precision(
    trace: &Trace,
    n: u64,
    bits: u32,
) -> Result<VerificationReport, HarnessError> {
    let bits = bits.max(MIN_PRECISION_BITS);
    require(n >= 2, "n must be at least 2")?;
    require_no_lossy(trace)?;
    require(trace.len() as u128 <= u128::from(n), "at most n moves")?;
    require_start(trace.initial(), &Rational::from_integer(n.into()))?;

    let tau = tm2_threshold_lower(n, bits);
    let beyond = trace.last().mass_at_or_above(&tau);
    let mut report = VerificationReport::new("trace");
    report.push(
        CheckRecord::compare(
            "T_m2",
            "ν{x ≥ τ⁻}",
            beyond,
            Relation::Lt,
            "",
            Rational::one(),
        )
        .with_note(format!(
            "τ⁻ = {} ≈ {} ≤ 2n^{{1/3}}log₂n, {bits} fractional bits",
            Exact(&tau),
            to_fixed(&tau, 6)
        )),
    );
    Ok(report)
}

/// Starting from `{(0, 1)}`, reaching `ν{|x| >= d} >= p` takes at least
/// `(3p)^{3/2} d³` unit moves; checked as `ℓ² >= 27 p³ d⁶`.
///
/// `p = 1` is accepted: the bound is continuous in `p`.
pub fn check_lemma_initial(
    trace: &Trace,
    d: &Rational,
    p: &Rational,
) -> Result<VerificationReport, HarnessError> {
    require(d.is_positive(), "d must be positive")?;
    require(
        p.is_positive() && *p <= Rational::one(),
        "p must lie in (0, 1]",
    )?;
    require(
        *trace.initial() == Distribution::point(int(0), int(1)),
        "initial distribution must be {(0, 1)}",
    )?;
    require_unit(trace)?;
    let far = trace.last().mass_where(|x| x.abs() >= *d);
    require(far >= *p, "final mass at |x| ≥ d must be at least p")?;

    let ell = int(trace.len() as i64);
    let d2 = d * d;
    let rhs = int(27) * cube(p) * cube(&d2);
    let mut report = VerificationReport::new("trace");
    report.push(
        CheckRecord::compare(
            "initial-mass lemma",
            "ℓ²",
            &ell * &ell,
            Relation::Ge,
            "27p³d⁶",
            rhs,
        )
        .with_note(format!("ν{{|x| ≥ d}} = {}", Exact(&far))),
    );
    Ok(report)
}

/// Moving `p m` of mass to `x >= r + d` needs at least
/// `√3 p^{3/2} (d - 1/2)³` unit moves centered in `(r + 1/2, ∞)`; checked
/// as `cnt² >= 3 p³ (d - 1/2)⁶`.
pub fn check_theorem_asym(
    trace: &Trace,
    r: &Rational,
    m: &Rational,
    d: &Rational,
    p: &Rational,
) -> Result<VerificationReport, HarnessError> {
    require(*d > Rational::one(), "d must exceed 1")?;
    require(
        p.is_positive() && *p < Rational::one(),
        "p must lie in (0, 1)",
    )?;
    require(m.is_positive(), "m must be positive")?;
    require_unit(trace)?;
    require(
        trace.initial().mass_above(r).is_zero(),
        "initial mass must lie in x ≤ r",
    )?;
    require(
        trace.mu_max_above(r) <= *m,
        "μ_max{x > r} must be at most m",
    )?;
    let reach = trace.mu_max_at_or_above(&(r + d));
    require(reach >= p * m, "μ_max{x ≥ r+d} must be at least p·m")?;

    let cutoff = r + half();
    let cnt = trace.centers().iter().filter(|c| **c > cutoff).count();
    let cnt = int(cnt as i64);
    let shifted = d - half();
    let s2 = &shifted * &shifted;
    let rhs = int(3) * cube(p) * cube(&s2);
    let mut report = VerificationReport::new("trace");
    report.push(
        CheckRecord::compare(
            "asymmetric theorem",
            "cnt²",
            &cnt * &cnt,
            Relation::Ge,
            "3p³(d−1/2)⁶",
            rhs,
        )
        .with_note(format!(
            "r = {}, m = {}, d = {}, p = {}",
            Exact(r),
            Exact(m),
            Exact(d),
            Exact(p)
        )),
    );
    Ok(report)
}
