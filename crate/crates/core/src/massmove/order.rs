//! The splitting partial order `μ ≼ μ'`.
//!
//! `μ ≼ μ'` holds exactly when there is a transport plan `t_ij >= 0` sending
//! each source point `(x_i, m_i)` onto the target points with
//! `Σ_j t_ij = m_i`, `Σ_i t_ij = m'_j` and `Σ_j t_ij x'_j = m_i x_i`: each
//! row of the plan is one basic split, and a composition of basic splits
//! composes row by row into such a plan.

use num_traits::{Signed, Zero};

use crate::lp::{solve_feasibility, FeasibilityResult, LinearSystem};
use crate::massmove::Distribution;
use crate::rational::Rational;

/// `μ'` replaces exactly one point of `μ` with a collection of the same mass
/// and center (possibly the point itself).
pub fn is_basic_split(mu: &Distribution, mu_prime: &Distribution) -> bool {
    let diff = mu_prime.minus(mu);
    if diff.is_empty() {
        return true;
    }
    if !diff.moment(0).is_zero() || !diff.moment(1).is_zero() {
        return false;
    }
    let mut negatives = diff.points().iter().filter(|(_, m)| m.is_negative());
    let Some((x, m)) = negatives.next() else {
        return false;
    };
    if negatives.next().is_some() {
        return false;
    }
    // Mass removed at x must come from the point being split.
    -m <= mu.mass_at(x)
}

/// Transport-plan feasibility system; variable `i * |μ'| + j` is `t_ij`.
pub fn transport_system(mu: &Distribution, mu_prime: &Distribution) -> LinearSystem {
    let src = mu.points();
    let dst = mu_prime.points();
    let cols = dst.len();
    let mut system = LinearSystem::new(src.len() * cols);
    for (i, (x, m)) in src.iter().enumerate() {
        let mass: Vec<_> = (0..cols)
            .map(|j| (i * cols + j, Rational::from_integer(1.into())))
            .collect();
        system.push_sparse(&mass, m.clone());
        let torque: Vec<_> = dst
            .iter()
            .enumerate()
            .map(|(j, (xp, _))| (i * cols + j, xp.clone()))
            .collect();
        system.push_sparse(&torque, m * x);
    }
    for (j, (_, mp)) in dst.iter().enumerate() {
        let col: Vec<_> = (0..src.len())
            .map(|i| (i * cols + j, Rational::from_integer(1.into())))
            .collect();
        system.push_sparse(&col, mp.clone());
    }
    system
}

/// A transport plan witnessing `μ ≼ μ'`, as rows indexed by source point.
pub fn split_plan(mu: &Distribution, mu_prime: &Distribution) -> Option<Vec<Vec<Rational>>> {
    if mu.is_empty() || mu_prime.is_empty() {
        return (mu.is_empty() && mu_prime.is_empty()).then(Vec::new);
    }
    let system = transport_system(mu, mu_prime);
    match solve_feasibility(&system).expect("transport system is well formed") {
        FeasibilityResult::Feasible(t) => {
            Some(t.chunks(mu_prime.len()).map(<[Rational]>::to_vec).collect())
        }
        FeasibilityResult::Infeasible(_) => None,
    }
}

/// Decides `μ ≼ μ'`.
pub fn is_split_of(mu: &Distribution, mu_prime: &Distribution) -> bool {
    if mu.moment(0) != mu_prime.moment(0) || mu.moment(1) != mu_prime.moment(1) {
        return false;
    }
    split_plan(mu, mu_prime).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn d(pts: &[(Rational, Rational)]) -> Distribution {
        Distribution::new(pts.iter().cloned()).unwrap()
    }

    #[test]
    fn basic_split_examples() {
        let mu = d(&[(int(0), int(2))]);
        let sym = d(&[(rat(-1, 2), int(1)), (rat(1, 2), int(1))]);
        assert!(is_basic_split(&mu, &sym));
        assert!(is_basic_split(&mu, &mu));
        let a = d(&[(int(0), int(1)), (int(1), int(1))]);
        let b = d(&[(int(0), int(1)), (int(2), int(1))]);
        assert!(!is_basic_split(&a, &b));
    }

    #[test]
    fn basic_split_of_partial_point() {
        // Split (0,2) into (-1,1/2),(0,1),(1,1/2): same point, partly kept.
        let mu = d(&[(int(0), int(2)), (int(5), int(1))]);
        let out = d(&[
            (int(-1), rat(1, 2)),
            (int(0), int(1)),
            (int(1), rat(1, 2)),
            (int(5), int(1)),
        ]);
        assert!(is_basic_split(&mu, &out));
        // Two points each lose mass: not a single basic split.
        let two = d(&[
            (int(-1), rat(1, 2)),
            (int(0), rat(3, 2)),
            (int(4), rat(1, 2)),
            (int(6), rat(1, 2)),
        ]);
        assert!(!is_basic_split(&mu, &two));
    }

    #[test]
    fn split_order_examples() {
        let point = d(&[(int(0), int(2))]);
        let pair = d(&[(rat(-1, 2), int(1)), (rat(1, 2), int(1))]);
        assert!(is_split_of(&point, &pair));
        assert!(!is_split_of(&pair, &point));
        assert!(is_split_of(&pair, &pair));
        assert!(is_split_of(&Distribution::empty(), &Distribution::empty()));
    }

    #[test]
    fn plan_rows_are_basic_splits() {
        let mu = d(&[(int(0), int(1)), (int(2), int(1))]);
        let target = d(&[(int(-1), rat(1, 2)), (int(1), int(1)), (int(3), rat(1, 2))]);
        let plan = split_plan(&mu, &target).expect("feasible");
        for (row, (x, m)) in plan.iter().zip(mu.points()) {
            let mass: Rational = row.iter().sum();
            let torque: Rational = row
                .iter()
                .zip(target.points())
                .map(|(t, (xp, _))| t * xp)
                .sum();
            assert_eq!(&mass, m);
            assert_eq!(torque, m * x);
        }
    }
}
