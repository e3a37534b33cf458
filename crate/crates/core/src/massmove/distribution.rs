use std::fmt;

use num_traits::{Signed, Zero};

use crate::massmove::MassError;
use crate::rational::{format_rational, Rational};

/// Canonical point list: strictly increasing coordinates, no zero masses.
fn coalesce(points: impl IntoIterator<Item = (Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut pts: Vec<(Rational, Rational)> = points.into_iter().collect();
    pts.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
    for (x, m) in pts {
        match out.last_mut() {
            Some(last) if last.0 == x => last.1 += m,
            _ => out.push((x, m)),
        }
    }
    out.retain(|(_, m)| !m.is_zero());
    out
}

fn moment_of(points: &[(Rational, Rational)], j: u32) -> Rational {
    points
        .iter()
        .map(|(x, m)| m * num_traits::pow(x.clone(), j as usize))
        .sum()
}

fn merge(
    left: &[(Rational, Rational)],
    right: &[(Rational, Rational)],
    negate_right: bool,
) -> Vec<(Rational, Rational)> {
    let rhs = right
        .iter()
        .map(|(x, m)| (x.clone(), if negate_right { -m } else { m.clone() }));
    coalesce(left.iter().cloned().chain(rhs))
}

fn write_points(f: &mut fmt::Formatter<'_>, points: &[(Rational, Rational)]) -> fmt::Result {
    if points.is_empty() {
        return f.write_str("{}");
    }
    for (i, (x, m)) in points.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "({}, {})", format_rational(x), format_rational(m))?;
    }
    Ok(())
}

/// Discrete mass distribution: positive masses at distinct, sorted positions.
///
/// The empty distribution is allowed; it arises when a lossy move consumes
/// the last unit of mass.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Distribution {
    points: Vec<(Rational, Rational)>,
}

/// Like [`Distribution`] but masses may be negative (never zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedDistribution {
    points: Vec<(Rational, Rational)>,
}

impl Distribution {
    /// Coalesces equal coordinates and drops zero masses. Fails if any
    /// coalesced mass is negative.
    pub fn new(points: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self, MassError> {
        let points = coalesce(points);
        if let Some((x, m)) = points.iter().find(|(_, m)| m.is_negative()) {
            return Err(MassError::NegativeMass {
                x: x.clone(),
                mass: m.clone(),
            });
        }
        Ok(Distribution { points })
    }

    pub fn empty() -> Self {
        Distribution::default()
    }

    pub fn point(x: Rational, m: Rational) -> Self {
        Distribution::new([(x, m)]).expect("point mass must be nonnegative")
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `M_j = Σ m x^j`.
    pub fn moment(&self, j: u32) -> Rational {
        moment_of(&self.points, j)
    }

    pub fn total_mass(&self) -> Rational {
        self.moment(0)
    }

    /// Center of mass `M_1 / M_0`.
    pub fn center(&self) -> Result<Rational, MassError> {
        let m0 = self.total_mass();
        if m0.is_zero() {
            return Err(MassError::ZeroMass);
        }
        Ok(self.moment(1) / m0)
    }

    /// `S = Σ_{i<j} |x_i - x_j| m_i m_j`, in one pass over the sorted points.
    pub fn spread(&self) -> Rational {
        let mut mass_before = Rational::zero();
        let mut torque_before = Rational::zero();
        let mut total = Rational::zero();
        for (x, m) in &self.points {
            total += m * (x * &mass_before - &torque_before);
            mass_before += m;
            torque_before += m * x;
        }
        total
    }

    /// `μ(x)`.
    pub fn mass_at(&self, x: &Rational) -> Rational {
        self.points
            .binary_search_by(|(p, _)| p.cmp(x))
            .map(|i| self.points[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn mass_where(&self, pred: impl Fn(&Rational) -> bool) -> Rational {
        self.points
            .iter()
            .filter(|(x, _)| pred(x))
            .map(|(_, m)| m.clone())
            .sum()
    }

    /// `μ{x > a}`.
    pub fn mass_above(&self, a: &Rational) -> Rational {
        let start = self.points.partition_point(|(x, _)| x <= a);
        self.points[start..].iter().map(|(_, m)| m.clone()).sum()
    }

    /// `μ{x >= a}`.
    pub fn mass_at_or_above(&self, a: &Rational) -> Rational {
        let start = self.points.partition_point(|(x, _)| x < a);
        self.points[start..].iter().map(|(_, m)| m.clone()).sum()
    }

    /// Restriction to the set where `pred` holds.
    pub fn restrict(&self, pred: impl Fn(&Rational) -> bool) -> Distribution {
        Distribution {
            points: self
                .points
                .iter()
                .filter(|(x, _)| pred(x))
                .cloned()
                .collect(),
        }
    }

    pub fn to_signed(&self) -> SignedDistribution {
        SignedDistribution {
            points: self.points.clone(),
        }
    }

    /// `μ + δ`, failing if the result has negative mass somewhere.
    pub fn add_signed(&self, delta: &SignedDistribution) -> Result<Distribution, MassError> {
        let points = merge(&self.points, &delta.points, false);
        if let Some((x, m)) = points.iter().find(|(_, m)| m.is_negative()) {
            return Err(MassError::NotApplicable {
                x: x.clone(),
                mass: m.clone(),
            });
        }
        Ok(Distribution { points })
    }

    pub fn plus(&self, other: &Distribution) -> Distribution {
        Distribution {
            points: merge(&self.points, &other.points, false),
        }
    }

    /// `self - other` as a signed distribution.
    pub fn minus(&self, other: &Distribution) -> SignedDistribution {
        SignedDistribution {
            points: merge(&self.points, &other.points, true),
        }
    }

    /// `true` iff `self(x) >= other(x)` for every `x`.
    pub fn dominates(&self, other: &Distribution) -> bool {
        self.minus(other)
            .points
            .iter()
            .all(|(_, m)| m.is_positive())
    }
}

impl SignedDistribution {
    /// Coalesces equal coordinates and drops zero masses.
    pub fn new(points: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        SignedDistribution {
            points: coalesce(points),
        }
    }

    pub fn empty() -> Self {
        SignedDistribution::default()
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn moment(&self, j: u32) -> Rational {
        moment_of(&self.points, j)
    }

    pub fn plus(&self, other: &SignedDistribution) -> SignedDistribution {
        SignedDistribution {
            points: merge(&self.points, &other.points, false),
        }
    }

    pub fn minus(&self, other: &SignedDistribution) -> SignedDistribution {
        SignedDistribution {
            points: merge(&self.points, &other.points, true),
        }
    }

    /// `true` iff every point lies in `[a, b]`.
    pub fn is_on(&self, a: &Rational, b: &Rational) -> bool {
        self.points.iter().all(|(x, _)| a <= x && x <= b)
    }

    /// The distribution, if no mass is negative.
    pub fn to_distribution(&self) -> Option<Distribution> {
        if self.points.iter().any(|(_, m)| m.is_negative()) {
            None
        } else {
            Some(Distribution {
                points: self.points.clone(),
            })
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_points(f, &self.points)
    }
}

impl fmt::Display for SignedDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_points(f, &self.points)
    }
}

/// `M_j` of a distribution or signed distribution.
pub trait Moments {
    fn moment(&self, j: u32) -> Rational;
}

impl Moments for Distribution {
    fn moment(&self, j: u32) -> Rational {
        Distribution::moment(self, j)
    }
}

impl Moments for SignedDistribution {
    fn moment(&self, j: u32) -> Rational {
        SignedDistribution::moment(self, j)
    }
}

pub fn moment<M: Moments + ?Sized>(mu: &M, j: u32) -> Rational {
    mu.moment(j)
}
