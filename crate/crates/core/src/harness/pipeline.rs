use num_traits::{One, Zero};

use super::bounds::{
    check_t_m1, check_t_m2_with_precision, improved_records, main_bound_record, MIN_PRECISION_BITS,
};
use super::{CheckRecord, HarnessError, Relation, VerificationReport};
use crate::balance::{
    check_balance, to_lossy_sequence, verify_certificate, verify_unbalanced, BalanceVerdict,
    ForceCertificate,
};
use crate::massmove::{weight_constraint_scan, Distribution, LossyMove, MassError, Step, Trace};
use crate::model::{contacts, most_overhanging, overhang, validate, Stack};
use crate::rational::{Exact, Rational};

/// Replays lossy moves as plain moves. Each lossy move's unit of removed
/// mass stays behind at its center, frozen, so every distribution of the
/// result dominates the corresponding lossy one.
pub fn lossy_to_weight_constrained(
    mu0: &Distribution,
    lossy: &[LossyMove],
) -> Result<Trace, MassError> {
    Trace::from_steps(
        mu0.clone(),
        lossy.iter().map(|v| Step::Plain(v.inner().clone())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    /// Fractional bits of the `log₂` threshold in the T_m2 check.
    pub precision_bits: u32,
    /// Also record the non-normative sharper bounds.
    pub improved: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            precision_bits: MIN_PRECISION_BITS,
            improved: false,
        }
    }
}

/// [`check_balance`] and, for balanced stacks, the main bound
/// `overhang³ <= 216 n` with `n` the total weight.
pub fn check_main_bound(stack: &Stack) -> Result<VerificationReport, HarnessError> {
    let stack = validate(stack)?;
    let mut report = VerificationReport::new(subject(&stack));
    if check_balance(&stack)?.is_balanced() {
        report.push(main_bound_record(&overhang(&stack)?, &stack.total_weight()));
    } else {
        report.push(CheckRecord::skipped(
            "main bound",
            "unbalanced — bound checks skipped",
        ));
    }
    Ok(report)
}

fn subject(stack: &Stack) -> String {
    let mut s = format!("stack of {} blocks", stack.len());
    if !stack.weights.is_empty() {
        s.push_str(&format!(" and {} point weights", stack.weights.len()));
    }
    s
}

/// [`end_to_end_with`] under default options.
pub fn end_to_end(stack: &Stack) -> VerificationReport {
    end_to_end_with(stack, &Options::default())
}

/// Runs the whole chain from a stack to the main bound. Failures are
/// recorded in the report, never returned.
pub fn end_to_end_with(stack: &Stack, options: &Options) -> VerificationReport {
    let mut report = VerificationReport::new(subject(stack));
    if let Err(e) = pipeline(stack, options, &mut report) {
        report.push(CheckRecord::property("pipeline", false).with_note(e.to_string()));
    }
    report
}

fn pipeline(
    stack: &Stack,
    options: &Options,
    report: &mut VerificationReport,
) -> Result<(), HarnessError> {
    let stack = match validate(stack) {
        Ok(s) => s,
        Err(e) => {
            report.push(CheckRecord::property("valid stack", false).with_note(e.to_string()));
            return Ok(());
        }
    };
    report.subject = subject(&stack);
    let cert = match check_balance(&stack)? {
        BalanceVerdict::Unbalanced(witness) => {
            let ok = verify_unbalanced(&stack, &witness)?;
            report.push(CheckRecord::property("infeasibility witness", ok));
            report.push(CheckRecord::skipped(
                "bounds",
                "unbalanced — bound checks skipped",
            ));
            return Ok(());
        }
        BalanceVerdict::Balanced(cert) => cert,
    };
    report.push(CheckRecord::property(
        "force certificate",
        verify_certificate(&stack, &cert)?,
    ));
    report.push(CheckRecord::count(
        "slice consistency",
        "unbalanced slices",
        slice_mismatches(&stack, &cert),
    ));

    let n = stack.total_weight();
    let d = overhang(&stack)?;
    let k = most_overhanging(&stack).expect("validated stacks are nonempty");
    let (mu0, lossy) = to_lossy_sequence(&stack, &cert, k)?;
    let zero = Rational::zero();
    report.push(CheckRecord::compare(
        "F_0 support",
        "F_0{x > 0}",
        mu0.mass_above(&zero),
        Relation::Le,
        "",
        zero.clone(),
    ));
    report.push(CheckRecord::compare(
        "F_0 mass",
        "F_0{x ≤ 0}",
        mu0.total_mass(),
        Relation::Le,
        "n",
        n.clone(),
    ));

    let (lossy_final, accounting_errors) = replay_lossy(&mu0, &lossy)?;
    report.push(CheckRecord::count(
        "lossy accounting",
        "steps with wrong M₀ or M₁",
        accounting_errors,
    ));

    let reach = &d - Rational::one();
    report.push(
        CheckRecord::compare(
            "final slice reach",
            "F_{k−1}{x ≥ d−1}",
            lossy_final.mass_at_or_above(&reach),
            Relation::Ge,
            "",
            Rational::one(),
        )
        .with_note(format!("k = {k}, d = {}", Exact(&d))),
    );

    let plain = lossy_to_weight_constrained(&mu0, &lossy)?;
    report.push(CheckRecord::property(
        "frozen mass dominates",
        plain.last().dominates(&lossy_final),
    ));
    let scan = weight_constraint_scan(&plain)?;
    let mut record = CheckRecord::property("weight-constrained", scan.holds());
    if let Some(v) = &scan.violation {
        record = record.with_note(format!(
            "{} moves right of {} but μ_max = {}",
            v.moves_right,
            Exact(&v.a),
            Exact(&v.mu_max)
        ));
    }
    report.push(record);

    if n >= Rational::one() && scan.holds() {
        report.extend(check_t_m1(&plain, &n)?);
    } else {
        report.push(CheckRecord::skipped(
            "T_m1",
            "requires n ≥ 1 and a weight-constrained trace",
        ));
    }
    let whole = u64::try_from(n.ceil().to_integer()).unwrap_or(u64::MAX);
    if whole >= 2 {
        report.extend(check_t_m2_with_precision(
            &plain,
            whole,
            options.precision_bits,
        )?);
    } else {
        report.push(CheckRecord::skipped("T_m2", "requires n ≥ 2"));
    }
    report.push(main_bound_record(&d, &n));
    if options.improved {
        for r in improved_records(&d, &n) {
            report.push(r);
        }
    }
    Ok(())
}

/// Each slice `F_i` must carry exactly the weight and torque of the blocks
/// (and point weights) above it.
fn slice_mismatches(stack: &Stack, cert: &ForceCertificate) -> usize {
    let contacts = contacts(stack);
    let loads = stack.weights_by_block();
    let n = stack.len();
    // Weight and torque of B_{i+1}, …, B_n and their loads, for every i.
    let mut above = vec![(Rational::zero(), Rational::zero()); n + 1];
    for j in (1..=n).rev() {
        let (mut w, mut t) = above[j].clone();
        w += Rational::one();
        t += stack.block(j).center();
        for p in &loads[j] {
            w += &p.mass;
            t += &p.mass * &p.x;
        }
        above[j - 1] = (w, t);
    }
    let mut slices = vec![(Rational::zero(), Rational::zero()); n];
    for e in &cert.entries {
        let c = &contacts[e.contact];
        for slice in &mut slices[c.lower..c.upper] {
            slice.0 += &e.magnitude;
            slice.1 += &e.magnitude * &e.position;
        }
    }
    slices.iter().zip(&above).filter(|(s, a)| s != a).count()
}

/// Replays lossy moves, counting steps that do not lower `M₀` by exactly 1
/// and `M₁` by exactly the move center.
fn replay_lossy(
    mu0: &Distribution,
    lossy: &[LossyMove],
) -> Result<(Distribution, usize), MassError> {
    let mut current = mu0.clone();
    let mut errors = 0;
    for v in lossy {
        let next = v.apply(&current)?;
        let dm0 = current.moment(0) - next.moment(0);
        let dm1 = current.moment(1) - next.moment(1);
        if !(dm0.is_one() && dm1 == v.center()) {
            errors += 1;
        }
        current = next;
    }
    Ok((current, errors))
}
