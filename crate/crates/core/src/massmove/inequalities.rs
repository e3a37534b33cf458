//! Exact evaluation of the spread and extreme-move inequalities.

use num_traits::One;

use crate::massmove::{Distribution, ExtremeMove, MassError};
use crate::rational::{int, Rational};

/// Both sides of an inequality `lhs <= rhs`, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

impl Comparison {
    pub fn at_most(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs <= rhs;
        Comparison { lhs, rhs, holds }
    }

    pub fn at_least(lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs >= rhs;
        Comparison { lhs, rhs, holds }
    }

    pub fn is_strict(&self) -> bool {
        self.lhs != self.rhs
    }
}

/// `S[μ]² <= M₂[μ] M₀[μ]³ / 3`.
pub fn check_spread_lemma(mu: &Distribution) -> Comparison {
    let s = mu.spread();
    let m0 = mu.moment(0);
    let rhs = mu.moment(2) * &m0 * &m0 * &m0 / int(3);
    Comparison::at_most(&s * &s, rhs)
}

/// For a unit extreme move `e`: `S[eμ] - S[μ] >= 3 (M₂[eμ] - M₂[μ])²`.
/// `lhs` is the spread gain and `rhs` the bound.
pub fn check_extreme_lemma(mu: &Distribution, e: &ExtremeMove) -> Result<Comparison, MassError> {
    if e.b() - e.a() != Rational::one() {
        return Err(MassError::InvalidMove(
            "extreme move must have unit width".into(),
        ));
    }
    let after = e.apply(mu);
    let gain = after.spread() - mu.spread();
    let dm2 = after.moment(2) - mu.moment(2);
    Ok(Comparison::at_least(gain, int(3) * &dm2 * &dm2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn spread_lemma_examples() {
        let nu = Distribution::new([(rat(-1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap();
        assert_eq!(
            check_spread_lemma(&nu),
            Comparison {
                lhs: rat(1, 16),
                rhs: rat(1, 12),
                holds: true
            }
        );
        let point = Distribution::point(int(0), int(1));
        assert_eq!(
            check_spread_lemma(&point),
            Comparison {
                lhs: int(0),
                rhs: int(0),
                holds: true
            }
        );
        let three =
            Distribution::new([(int(-1), int(1)), (int(0), int(1)), (int(1), int(1))]).unwrap();
        assert_eq!(
            check_spread_lemma(&three),
            Comparison {
                lhs: int(16),
                rhs: int(18),
                holds: true
            }
        );
    }

    #[test]
    fn extreme_lemma_examples() {
        let e = ExtremeMove::new(rat(-1, 2), rat(1, 2)).unwrap();
        let c = check_extreme_lemma(&Distribution::point(int(0), int(1)), &e).unwrap();
        assert_eq!(
            c,
            Comparison {
                lhs: rat(1, 4),
                rhs: rat(3, 16),
                holds: true
            }
        );

        let far = Distribution::point(int(4), int(2));
        let c = check_extreme_lemma(&far, &e).unwrap();
        assert_eq!(
            c,
            Comparison {
                lhs: int(0),
                rhs: int(0),
                holds: true
            }
        );

        let nu = Distribution::new([(rat(-1, 2), rat(1, 2)), (rat(1, 2), rat(1, 2))]).unwrap();
        let c = check_extreme_lemma(&nu, &e).unwrap();
        assert_eq!(
            c,
            Comparison {
                lhs: int(0),
                rhs: int(0),
                holds: true
            }
        );
    }

    #[test]
    fn extreme_lemma_requires_unit_width() {
        let e = ExtremeMove::new(int(0), int(2)).unwrap();
        assert!(check_extreme_lemma(&Distribution::point(int(1), int(1)), &e).is_err());
    }
}
