use num_traits::{One, Zero};

use crate::massmove::{Distribution, ExtremeMove, LossyMove, MassError, Move};
use crate::rational::{half, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Plain(Move),
    Lossy(LossyMove),
    Extreme(ExtremeMove),
}

impl Step {
    pub fn interval(&self) -> (&Rational, &Rational) {
        match self {
            Step::Plain(v) => (v.a(), v.b()),
            Step::Lossy(v) => (v.inner().a(), v.inner().b()),
            Step::Extreme(e) => (e.a(), e.b()),
        }
    }

    pub fn center(&self) -> Rational {
        let (a, b) = self.interval();
        (a + b) * half()
    }

    pub fn is_unit(&self) -> bool {
        let (a, b) = self.interval();
        b - a == Rational::one()
    }

    pub fn apply(&self, mu: &Distribution) -> Result<Distribution, MassError> {
        match self {
            Step::Plain(v) => v.apply(mu),
            Step::Lossy(v) => v.apply(mu),
            Step::Extreme(e) => Ok(e.apply(mu)),
        }
    }
}

/// An initial distribution and the distributions produced by each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    initial: Distribution,
    steps: Vec<(Step, Distribution)>,
}

impl Trace {
    pub fn new(initial: Distribution) -> Self {
        Trace {
            initial,
            steps: Vec::new(),
        }
    }

    /// Replays `steps` from `initial`; the error names the zero-based step
    /// that could not be applied.
    pub fn from_steps(
        initial: Distribution,
        steps: impl IntoIterator<Item = Step>,
    ) -> Result<Self, MassError> {
        let mut trace = Trace::new(initial);
        for (index, step) in steps.into_iter().enumerate() {
            trace.push(step).map_err(|e| MassError::StepFailed {
                step: index,
                source: Box::new(e),
            })?;
        }
        Ok(trace)
    }

    pub fn push(&mut self, step: Step) -> Result<&Distribution, MassError> {
        let next = step.apply(self.last())?;
        self.steps.push((step, next));
        Ok(&self.steps.last().expect("just pushed").1)
    }

    pub fn initial(&self) -> &Distribution {
        &self.initial
    }

    pub fn last(&self) -> &Distribution {
        self.steps.last().map_or(&self.initial, |(_, d)| d)
    }

    pub fn steps(&self) -> &[(Step, Distribution)] {
        &self.steps
    }

    /// Number of steps `ℓ`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `μ_0, μ_1, …, μ_ℓ`.
    pub fn distributions(&self) -> impl Iterator<Item = &Distribution> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|(_, d)| d))
    }

    pub fn centers(&self) -> Vec<Rational> {
        self.steps.iter().map(|(s, _)| s.center()).collect()
    }

    /// `max_i μ_i{x > a}`.
    pub fn mu_max_above(&self, a: &Rational) -> Rational {
        self.distributions()
            .map(|d| d.mass_above(a))
            .max()
            .expect("a trace has at least one distribution")
    }

    /// `max_i μ_i{x >= a}`.
    pub fn mu_max_at_or_above(&self, a: &Rational) -> Rational {
        self.distributions()
            .map(|d| d.mass_at_or_above(a))
            .max()
            .expect("a trace has at least one distribution")
    }

    /// Checks that each recorded distribution is its step applied to the
    /// previous one.
    pub fn is_consistent(&self) -> bool {
        let mut prev = &self.initial;
        for (step, next) in &self.steps {
            match step.apply(prev) {
                Ok(d) if &d == next => prev = next,
                _ => return false,
            }
        }
        true
    }
}

/// `μ_max{x > a}` over the trace.
pub fn mu_max(trace: &Trace, a: &Rational) -> Rational {
    trace.mu_max_above(a)
}

/// A point where more moves are centered right of `a` than mass ever was.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightViolation {
    pub a: Rational,
    pub moves_right: usize,
    pub mu_max: Rational,
}

/// Outcome of scanning the weight constraint over every breakpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightScan {
    /// Every `a` that was evaluated.
    pub scan_points: Vec<Rational>,
    pub violation: Option<WeightViolation>,
}

impl WeightScan {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Suffix sums of one distribution for fast `μ{x > a}` queries.
struct Tail<'a> {
    points: &'a [(Rational, Rational)],
    suffix: Vec<Rational>,
}

impl<'a> Tail<'a> {
    fn new(d: &'a Distribution) -> Self {
        let points = d.points();
        let mut suffix = vec![Rational::zero(); points.len() + 1];
        for i in (0..points.len()).rev() {
            suffix[i] = &suffix[i + 1] + &points[i].1;
        }
        Tail { points, suffix }
    }

    fn above(&self, a: &Rational) -> &Rational {
        &self.suffix[self.points.partition_point(|(x, _)| x <= a)]
    }
}

/// Both `#{moves centered in (a, ∞)}` and `μ_max{x > a}` are step functions
/// of `a` that only change at move centers and mass coordinates, so it is
/// enough to test each breakpoint, each gap between consecutive
/// breakpoints, and one point beyond either end.
///
/// Extreme steps count as moves; lossy steps are rejected.
pub fn weight_constraint_scan(trace: &Trace) -> Result<WeightScan, MassError> {
    if trace
        .steps()
        .iter()
        .any(|(s, _)| matches!(s, Step::Lossy(_)))
    {
        return Err(MassError::NotPlain);
    }
    let mut centers = trace.centers();
    centers.sort();

    let mut breakpoints: Vec<Rational> = centers.clone();
    for d in trace.distributions() {
        breakpoints.extend(d.points().iter().map(|(x, _)| x.clone()));
    }
    breakpoints.sort();
    breakpoints.dedup();

    let mut scan_points = Vec::with_capacity(2 * breakpoints.len() + 1);
    if let (Some(first), Some(last)) = (breakpoints.first(), breakpoints.last()) {
        scan_points.push(first - int(1));
        for pair in breakpoints.windows(2) {
            scan_points.push(pair[0].clone());
            scan_points.push((&pair[0] + &pair[1]) * half());
        }
        scan_points.push(last.clone());
        scan_points.push(last + int(1));
    }

    let tails: Vec<Tail<'_>> = trace.distributions().map(Tail::new).collect();
    let zero = Rational::zero();
    let mut violation = None;
    for a in &scan_points {
        let moves_right = centers.len() - centers.partition_point(|c| c <= a);
        if moves_right == 0 {
            continue;
        }
        let mu_max = tails.iter().map(|t| t.above(a)).max().unwrap_or(&zero);
        if int(moves_right as i64) > *mu_max {
            violation = Some(WeightViolation {
                a: a.clone(),
                moves_right,
                mu_max: mu_max.clone(),
            });
            break;
        }
    }
    Ok(WeightScan {
        scan_points,
        violation,
    })
}

pub fn is_weight_constrained(trace: &Trace) -> Result<bool, MassError> {
    weight_constraint_scan(trace).map(|s| s.holds())
}
