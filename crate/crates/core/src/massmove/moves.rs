use num_traits::{One, Zero};

use crate::massmove::{Distribution, MassError, SignedDistribution};
use crate::rational::{half, Rational};

/// Redistribution of mass inside `[a, b]` preserving total mass and torque.
///
/// Unit width (`b - a = 1`) unless built with [`Move::wide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    a: Rational,
    b: Rational,
    delta: SignedDistribution,
    wide: bool,
}

impl Move {
    pub fn new(a: Rational, b: Rational, delta: SignedDistribution) -> Result<Self, MassError> {
        if &b - &a != Rational::one() {
            return Err(MassError::InvalidMove(format!(
                "interval [{a}, {b}] does not have unit length"
            )));
        }
        Self::checked(a, b, delta, false)
    }

    /// Move on an interval of any positive length.
    pub fn wide(a: Rational, b: Rational, delta: SignedDistribution) -> Result<Self, MassError> {
        if a >= b {
            return Err(MassError::InvalidMove(format!("empty interval [{a}, {b}]")));
        }
        let wide = &b - &a != Rational::one();
        Self::checked(a, b, delta, wide)
    }

    fn checked(
        a: Rational,
        b: Rational,
        delta: SignedDistribution,
        wide: bool,
    ) -> Result<Self, MassError> {
        if !delta.is_on(&a, &b) {
            return Err(MassError::InvalidMove(format!(
                "delta not supported on [{a}, {b}]"
            )));
        }
        if !delta.moment(0).is_zero() {
            return Err(MassError::InvalidMove("delta changes total mass".into()));
        }
        if !delta.moment(1).is_zero() {
            return Err(MassError::InvalidMove("delta changes torque".into()));
        }
        Ok(Move { a, b, delta, wide })
    }

    /// Unit move that leaves every distribution unchanged.
    pub fn identity(a: Rational) -> Self {
        let b = &a + Rational::one();
        Move {
            a,
            b,
            delta: SignedDistribution::empty(),
            wide: false,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn delta(&self) -> &SignedDistribution {
        &self.delta
    }

    pub fn is_wide(&self) -> bool {
        self.wide
    }

    pub fn center(&self) -> Rational {
        (&self.a + &self.b) * half()
    }

    pub fn apply(&self, mu: &Distribution) -> Result<Distribution, MassError> {
        mu.add_signed(&self.delta)
    }

    /// The extreme move on the same interval.
    pub fn extreme(&self) -> ExtremeMove {
        ExtremeMove {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn lossy(self) -> LossyMove {
        LossyMove { inner: self }
    }
}

/// A move that additionally removes one unit of mass at its center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LossyMove {
    inner: Move,
}

impl LossyMove {
    pub fn new(inner: Move) -> Self {
        LossyMove { inner }
    }

    pub fn inner(&self) -> &Move {
        &self.inner
    }

    pub fn center(&self) -> Rational {
        self.inner.center()
    }

    /// `δ - {(center, 1)}`.
    pub fn lossy_delta(&self) -> SignedDistribution {
        self.inner
            .delta
            .minus(&SignedDistribution::new([(self.center(), Rational::one())]))
    }

    pub fn apply(&self, mu: &Distribution) -> Result<Distribution, MassError> {
        mu.add_signed(&self.lossy_delta())
    }
}

/// Pushes all mass strictly inside `(a, b)` to the endpoints, keeping total
/// mass and torque.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtremeMove {
    a: Rational,
    b: Rational,
}

impl ExtremeMove {
    pub fn new(a: Rational, b: Rational) -> Result<Self, MassError> {
        if a >= b {
            return Err(MassError::InvalidMove(format!("empty interval [{a}, {b}]")));
        }
        Ok(ExtremeMove { a, b })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn center(&self) -> Rational {
        (&self.a + &self.b) * half()
    }

    pub fn is_unit(&self) -> bool {
        &self.b - &self.a == Rational::one()
    }

    pub fn apply(&self, mu: &Distribution) -> Distribution {
        let (a, b) = (&self.a, &self.b);
        let inside = mu.restrict(|x| a < x && x < b);
        if inside.is_empty() {
            return mu.clone();
        }
        let mass = inside.moment(0);
        let torque = inside.moment(1);
        let width = b - a;
        let at_a = (&mass * b - &torque) / &width;
        let at_b = (&torque - &mass * a) / &width;
        mu.restrict(|x| !(a < x && x < b)).plus(
            &Distribution::new([(a.clone(), at_a), (b.clone(), at_b)])
                .expect("endpoint masses are nonnegative because the centroid lies inside (a, b)"),
        )
    }
}

pub fn apply_move(mu: &Distribution, v: &Move) -> Result<Distribution, MassError> {
    v.apply(mu)
}

pub fn apply_lossy(mu: &Distribution, v: &LossyMove) -> Result<Distribution, MassError> {
    v.apply(mu)
}

pub fn apply_extreme(mu: &Distribution, e: &ExtremeMove) -> Distribution {
    e.apply(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn spread_move(a: Rational) -> Move {
        let b = &a + int(1);
        let c = (&a + &b) * half();
        let delta =
            SignedDistribution::new([(a.clone(), rat(1, 2)), (c, int(-1)), (b.clone(), rat(1, 2))]);
        Move::new(a, b, delta).unwrap()
    }

    #[test]
    fn apply_move_examples() {
        let mu = Distribution::point(int(0), int(1));
        let v = spread_move(rat(-1, 2));
        assert_eq!(
            apply_move(&mu, &v).unwrap(),
            Distribution::new([(rat(-1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap()
        );
        let shifted = spread_move(int(1));
        assert!(matches!(
            apply_move(&mu, &shifted),
            Err(MassError::NotApplicable { .. })
        ));
        assert_eq!(apply_move(&mu, &Move::identity(int(7))).unwrap(), mu);
    }

    #[test]
    fn apply_lossy_examples() {
        let v = spread_move(rat(-1, 2)).lossy();
        let mu = Distribution::point(int(0), int(2));
        assert_eq!(
            apply_lossy(&mu, &v).unwrap(),
            Distribution::new([(rat(-1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap()
        );
        let thin = Distribution::point(int(0), rat(1, 2));
        assert!(apply_lossy(&thin, &v).is_err());
        let pure_loss = Move::identity(rat(-1, 2)).lossy();
        let out = apply_lossy(&Distribution::point(int(0), int(1)), &pure_loss).unwrap();
        assert!(out.is_empty());
        assert_eq!(out.moment(0), int(0));
    }

    #[test]
    fn apply_extreme_examples() {
        let e = ExtremeMove::new(rat(-1, 2), rat(1, 2)).unwrap();
        assert_eq!(
            apply_extreme(&Distribution::point(int(0), int(1)), &e),
            Distribution::new([(rat(-1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap()
        );
        let e = ExtremeMove::new(int(0), int(1)).unwrap();
        let far = Distribution::point(int(2), int(5));
        assert_eq!(apply_extreme(&far, &e), far);
        assert_eq!(
            apply_extreme(&Distribution::point(rat(1, 4), int(1)), &e),
            Distribution::new([(int(0), rat(3, 4)), (int(1), rat(1, 4))]).unwrap()
        );
    }

    #[test]
    fn move_validation() {
        let bad_mass = SignedDistribution::new([(int(0), int(1))]);
        assert!(Move::new(int(0), int(1), bad_mass).is_err());
        let bad_torque = SignedDistribution::new([(int(0), int(1)), (int(1), int(-1))]);
        assert!(Move::new(int(0), int(1), bad_torque).is_err());
        let outside =
            SignedDistribution::new([(int(-1), int(1)), (int(0), int(-2)), (int(1), int(1))]);
        assert!(Move::new(int(0), int(1), outside.clone()).is_err());
        assert!(Move::new(int(-1), int(1), outside.clone()).is_err());
        let w = Move::wide(int(-1), int(1), outside).unwrap();
        assert!(w.is_wide());
        assert_eq!(w.center(), int(0));
        assert!(ExtremeMove::new(int(1), int(1)).is_err());
    }
}
