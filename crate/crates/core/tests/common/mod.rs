//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Signed, Zero};
use overhang::massmove::{is_basic_split, Distribution, Move, SignedDistribution, Step, Trace};
use overhang::rational::{int, rat, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Small rational with denominator in `{1, 2, 3, 4}`.
pub fn small_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let den = *[1i64, 2, 3, 4].choose(rng).unwrap();
    rat(rng.gen_range(lo * den..=hi * den), den)
}

pub fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=12), *[1i64, 2, 3, 4].choose(rng).unwrap())
}

/// Nonempty distribution with up to `max_points` points in `[-4, 4]`.
pub fn random_distribution<R: Rng>(rng: &mut R, max_points: usize) -> Distribution {
    let k = rng.gen_range(1..=max_points);
    Distribution::new((0..k).map(|_| (small_rational(rng, -4, 4), positive_rational(rng)))).unwrap()
}

/// A unit move on an interval covering some point of `mu`. It either splits
/// part of one point across two positions or merges parts of two points at
/// their common center.
pub fn random_move<R: Rng>(rng: &mut R, mu: &Distribution) -> Move {
    let anchor = mu
        .points()
        .choose(rng)
        .map_or_else(Rational::zero, |(x, _)| x.clone());
    let a = anchor - rat(rng.gen_range(0..=4), 4);
    let b = &a + Rational::one();
    let inside: Vec<_> = mu
        .points()
        .iter()
        .filter(|(x, _)| a <= *x && *x <= b)
        .cloned()
        .collect();
    let fraction = |rng: &mut R| rat(rng.gen_range(1..=4), 4);
    let mut delta = Vec::new();
    if inside.len() >= 2 && rng.gen_bool(0.3) {
        let picked: Vec<_> = inside.choose_multiple(rng, 2).cloned().collect();
        let (mut mass, mut torque) = (Rational::zero(), Rational::zero());
        for (x, m) in picked {
            let t = m * fraction(rng);
            torque += &t * &x;
            mass += &t;
            delta.push((x, -t));
        }
        delta.push((&torque / &mass, mass));
    } else if let Some((x, m)) = inside.choose(rng).cloned() {
        let t = m * fraction(rng);
        let left = &x - (&x - &a) * fraction(rng);
        let right = &x + (&b - &x) * fraction(rng);
        if left < right {
            let width = &right - &left;
            delta.push((left.clone(), &t * (&right - &x) / &width));
            delta.push((right.clone(), &t * (&x - &left) / &width));
            delta.push((x, -t));
        }
    }
    Move::new(a, b, SignedDistribution::new(delta)).expect("generated move is valid")
}

/// Trace of `len` random plain unit moves.
pub fn random_trace<R: Rng>(rng: &mut R, init: Distribution, len: usize) -> Trace {
    let mut trace = Trace::new(init);
    for _ in 0..len {
        let v = random_move(rng, trace.last());
        trace.push(Step::Plain(v)).expect("generated move applies");
    }
    trace
}

/// `Σ m (x - t)⁺`.
fn stop_loss(mu: &Distribution, t: &Rational) -> Rational {
    mu.points()
        .iter()
        .filter(|(x, _)| x > t)
        .map(|(x, m)| m * (x - t))
        .sum()
}

/// Convex-order test: equal mass and torque, and the stop-loss transform of
/// `mu` nowhere exceeds that of `nu`. Both transforms are piecewise linear
/// with kinks only at support points, so those points suffice.
pub fn convex_order(mu: &Distribution, nu: &Distribution) -> bool {
    if mu.moment(0) != nu.moment(0) || mu.moment(1) != nu.moment(1) {
        return false;
    }
    mu.points()
        .iter()
        .chain(nu.points())
        .all(|(t, _)| stop_loss(mu, t) <= stop_loss(nu, t))
}

/// Feasibility of `A x = b, x >= 0` by enumerating basic solutions: the
/// system is feasible iff some set of linearly independent columns solves
/// it with nonnegative values.
pub fn feasible_by_vertices(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    (0u32..1 << n).any(|mask| {
        let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let sub: Vec<Vec<Rational>> = a
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        matches!(unique_solution(sub, b.to_vec()), Some(x) if x.iter().all(|v| !v.is_negative()))
    })
}

/// The solution of `A x = b` when `A` has full column rank and the system
/// is consistent.
fn unique_solution(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (v, p) in a[i].iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
                let v = &f * &b[r];
                b[i] -= v;
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| &b[c] / &a[c][c]).collect())
}

/// Every distribution with exactly `k` points on `{-1, -1/2, 0, 1/2, 1}` and
/// masses in `{1, 2}`.
pub fn grid_distributions(k: usize) -> Vec<Distribution> {
    let xs = [int(-1), rat(-1, 2), int(0), rat(1, 2), int(1)];
    let mut out = Vec::new();
    for pick in 0u32..1 << xs.len() {
        if pick.count_ones() as usize != k {
            continue;
        }
        let chosen: Vec<_> = (0..xs.len()).filter(|i| pick & (1 << i) != 0).collect();
        for mass_bits in 0u32..1 << k {
            out.push(
                Distribution::new(
                    chosen.iter().enumerate().map(|(slot, &i)| {
                        (xs[i].clone(), int(1 + i64::from(mass_bits >> slot & 1)))
                    }),
                )
                .unwrap(),
            );
        }
    }
    out
}

/// Replays a transport plan one source point at a time; each replacement
/// must be a basic split and the chain must end at `nu`.
pub fn plan_is_basic_split_chain(
    mu: &Distribution,
    nu: &Distribution,
    plan: &[Vec<Rational>],
) -> bool {
    let mut current = mu.clone();
    for (row, (x, m)) in plan.iter().zip(mu.points()) {
        let replaced = nu
            .points()
            .iter()
            .zip(row)
            .map(|((xp, _), t)| (xp.clone(), t.clone()));
        let Ok(next) = Distribution::new(
            current
                .points()
                .iter()
                .cloned()
                .chain([(x.clone(), -m.clone())])
                .chain(replaced),
        ) else {
            return false;
        };
        if !is_basic_split(&current, &next) {
            return false;
        }
        current = next;
    }
    current == *nu
}

/// Compares `is_split_of` with the convex-order oracle on every grid pair
/// with at most 3 source and 4 target points, replaying each plan found.
/// Returns `(pairs, positives, discrepancies)`.
pub fn small_grid_agreement() -> (usize, usize, usize) {
    let sources: Vec<_> = (1..=3).flat_map(grid_distributions).collect();
    let targets: Vec<_> = (1..=4).flat_map(grid_distributions).collect();
    let (mut pairs, mut positives, mut bad) = (0, 0, 0);
    for mu in &sources {
        for nu in &targets {
            pairs += 1;
            let oracle = convex_order(mu, nu);
            let plan =
                overhang::massmove::split_plan(mu, nu).filter(|_| mu.moment(1) == nu.moment(1));
            let ok = match (&plan, oracle) {
                (Some(p), true) => plan_is_basic_split_chain(mu, nu, p),
                (None, false) => true,
                _ => false,
            };
            positives += usize::from(oracle);
            bad += usize::from(!ok || overhang::massmove::is_split_of(mu, nu) != oracle);
        }
    }
    (pairs, positives, bad)
}
