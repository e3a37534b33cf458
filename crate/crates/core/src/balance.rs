//! Balance of a stack: does some assignment of nonnegative vertical contact
//! forces put every block in equilibrium?
//!
//! Forces on a contact interval `[a, b]` are represented by two point forces
//! at `a` and `b`. Nonnegative measures on `[a, b]` realize exactly the
//! (total, torque) pairs in the cone spanned by the endpoint atoms, so this
//! loses nothing and turns the existence question into a finite linear
//! feasibility problem. Degenerate contacts (`a = b`) get one variable.
//!
//! Certificates refer to contacts by their position in
//! [`contacts`](crate::model::contacts) of the canonically ordered stack;
//! pass stacks through [`validate`] first.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lp::{self, FeasibilityResult, LinearSystem};
use crate::massmove::{Distribution, LossyMove, MassError, Move, SignedDistribution};
use crate::model::{contacts, validate, Contact, ModelError, Stack};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalanceError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("index {index} out of range (limit {limit})")]
    IndexError { index: usize, limit: usize },
    #[error("stack is not balanced")]
    NotBalanced,
    #[error("force certificate does not verify")]
    InvalidCertificate,
    #[error("slice difference is not a move: {0}")]
    Mass(#[from] MassError),
}

/// A point force applied upward across one contact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForceEntry {
    pub contact: usize,
    pub position: Rational,
    pub magnitude: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ForceCertificate {
    pub entries: Vec<ForceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceVerdict {
    Balanced(ForceCertificate),
    /// Farkas multipliers for the rows of [`equilibrium_system`].
    Unbalanced(Vec<Rational>),
}

impl BalanceVerdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceVerdict::Balanced(_))
    }

    pub fn certificate(&self) -> Option<&ForceCertificate> {
        match self {
            BalanceVerdict::Balanced(c) => Some(c),
            BalanceVerdict::Unbalanced(_) => None,
        }
    }
}

/// The equilibrium LP together with the meaning of each variable.
#[derive(Debug, Clone)]
pub struct EquilibriumSystem {
    pub system: LinearSystem,
    pub contacts: Vec<Contact>,
    /// `(contact index, position)` for each LP variable.
    pub variables: Vec<(usize, Rational)>,
}

/// Builds the force and torque rows for every block.
///
/// Rows `2(i-1)` and `2(i-1)+1` belong to block `i`:
/// `Σ f_below - Σ f_above = 1 + W_i` and
/// `Σ x f_below - Σ x f_above = (x_i + 1/2) + Σ x_w m_w`, where `W_i` and the
/// last sum range over point weights resting on block `i`. The table has no
/// rows.
pub fn equilibrium_system(stack: &Stack) -> Result<EquilibriumSystem, BalanceError> {
    let stack = validate(stack)?;
    let contacts = contacts(&stack);
    let mut variables = Vec::new();
    for (ci, c) in contacts.iter().enumerate() {
        variables.push((ci, c.a.clone()));
        if !c.is_degenerate() {
            variables.push((ci, c.b.clone()));
        }
    }

    let n = stack.len();
    let mut force_terms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n + 1];
    let mut torque_terms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n + 1];
    for (var, (ci, pos)) in variables.iter().enumerate() {
        let c = &contacts[*ci];
        force_terms[c.upper].push((var, Rational::one()));
        torque_terms[c.upper].push((var, pos.clone()));
        if c.lower > 0 {
            force_terms[c.lower].push((var, -Rational::one()));
            torque_terms[c.lower].push((var, -pos));
        }
    }

    let loads = stack.weights_by_block();
    let mut system = LinearSystem::new(variables.len());
    for i in 1..=n {
        let block = stack.block(i);
        let mut weight = Rational::one();
        let mut torque = block.center();
        for w in &loads[i] {
            weight += &w.mass;
            torque += &w.x * &w.mass;
        }
        system.push_sparse(&force_terms[i], weight);
        system.push_sparse(&torque_terms[i], torque);
    }
    Ok(EquilibriumSystem {
        system,
        contacts,
        variables,
    })
}

/// Decides balance exactly. The returned certificate or Farkas witness
/// always verifies.
pub fn check_balance(stack: &Stack) -> Result<BalanceVerdict, BalanceError> {
    let eq = equilibrium_system(stack)?;
    let result = lp::solve_feasibility(&eq.system).expect("equilibrium system is well formed");
    Ok(match result {
        FeasibilityResult::Feasible(x) => {
            let entries = eq
                .variables
                .into_iter()
                .zip(x)
                .filter(|(_, f)| !f.is_zero())
                .map(|((contact, position), magnitude)| ForceEntry {
                    contact,
                    position,
                    magnitude,
                })
                .collect();
            BalanceVerdict::Balanced(ForceCertificate { entries })
        }
        FeasibilityResult::Infeasible(y) => BalanceVerdict::Unbalanced(y),
    })
}

/// Exact check of both equilibrium equations for every block, plus
/// nonnegativity, positions inside their contact intervals and at most two
/// entries per contact.
pub fn verify_certificate(stack: &Stack, cert: &ForceCertificate) -> Result<bool, BalanceError> {
    let stack = validate(stack)?;
    let contacts = contacts(&stack);
    let n = stack.len();
    let mut per_contact = vec![0usize; contacts.len()];
    let mut force = vec![Rational::zero(); n + 1];
    let mut torque = vec![Rational::zero(); n + 1];
    let mut ok = true;
    for e in &cert.entries {
        let c = contacts.get(e.contact).ok_or(BalanceError::IndexError {
            index: e.contact,
            limit: contacts.len(),
        })?;
        per_contact[e.contact] += 1;
        if e.magnitude.is_negative() || !c.contains(&e.position) || per_contact[e.contact] > 2 {
            ok = false;
        }
        let moment = &e.position * &e.magnitude;
        force[c.upper] += &e.magnitude;
        torque[c.upper] += &moment;
        if c.lower > 0 {
            force[c.lower] -= &e.magnitude;
            torque[c.lower] -= &moment;
        }
    }
    if !ok {
        return Ok(false);
    }
    let loads = stack.weights_by_block();
    for i in 1..=n {
        let mut weight = Rational::one();
        let mut expected_torque = stack.block(i).center();
        for w in &loads[i] {
            weight += &w.mass;
            expected_torque += &w.x * &w.mass;
        }
        if force[i] != weight || torque[i] != expected_torque {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks an unbalanced verdict's Farkas witness against the equilibrium
/// system.
pub fn verify_unbalanced(stack: &Stack, witness: &[Rational]) -> Result<bool, BalanceError> {
    let eq = equilibrium_system(stack)?;
    Ok(lp::verify_farkas(&eq.system, witness).unwrap_or(false))
}

/// `F_i`: upward forces applied by `{B_0, …, B_i}` on `{B_{i+1}, …, B_n}`.
pub fn slice_forces(
    stack: &Stack,
    cert: &ForceCertificate,
    i: usize,
) -> Result<Distribution, BalanceError> {
    let stack = validate(stack)?;
    if i > stack.len() {
        return Err(BalanceError::IndexError {
            index: i,
            limit: stack.len(),
        });
    }
    let contacts = contacts(&stack);
    slice_from_contacts(&contacts, cert, i)
}

fn slice_from_contacts(
    contacts: &[Contact],
    cert: &ForceCertificate,
    i: usize,
) -> Result<Distribution, BalanceError> {
    let mut points = Vec::new();
    for e in &cert.entries {
        let c = contacts.get(e.contact).ok_or(BalanceError::IndexError {
            index: e.contact,
            limit: contacts.len(),
        })?;
        if c.lower <= i && i < c.upper {
            points.push((e.position.clone(), e.magnitude.clone()));
        }
    }
    Ok(Distribution::new(points)?)
}

/// Converts the slices of a balanced stack into an initial distribution
/// `F_0` and `k - 1` lossy moves, move `j` acting on `[x_j, x_j + 1]`.
///
/// Without point weights, replaying the moves from `F_0` reproduces
/// `F_{k-1}` exactly. A point weight resting on block `j` is emitted by move
/// `j` as mass that later moves never touch, so the replay yields
/// `F_{k-1}` plus the point weights on `B_1, …, B_{k-1}`.
pub fn to_lossy_sequence(
    stack: &Stack,
    cert: &ForceCertificate,
    k: usize,
) -> Result<(Distribution, Vec<LossyMove>), BalanceError> {
    let stack = validate(stack)?;
    if k == 0 || k > stack.len() {
        return Err(BalanceError::IndexError {
            index: k,
            limit: stack.len(),
        });
    }
    if !verify_certificate(&stack, cert)? {
        return Err(BalanceError::InvalidCertificate);
    }
    let contacts = contacts(&stack);
    let loads = stack.weights_by_block();
    let mu0 = slice_from_contacts(&contacts, cert, 0)?;
    let mut prev = mu0.clone();
    let mut moves = Vec::with_capacity(k - 1);
    for (j, load) in loads.iter().enumerate().take(k).skip(1) {
        let next = slice_from_contacts(&contacts, cert, j)?;
        let block = stack.block(j);
        let mut extra: Vec<(Rational, Rational)> = vec![(block.center(), Rational::one())];
        extra.extend(load.iter().map(|w| (w.x.clone(), w.mass.clone())));
        let delta = next.minus(&prev).plus(&SignedDistribution::new(extra));
        moves.push(Move::new(block.x.clone(), block.right(), delta)?.lossy());
        prev = next;
    }
    Ok((mu0, moves))
}

/// [`check_balance`] followed by [`to_lossy_sequence`].
pub fn lossy_sequence_for(
    stack: &Stack,
    k: usize,
) -> Result<(Distribution, Vec<LossyMove>), BalanceError> {
    match check_balance(stack)? {
        BalanceVerdict::Balanced(cert) => to_lossy_sequence(stack, &cert, k),
        BalanceVerdict::Unbalanced(_) => Err(BalanceError::NotBalanced),
    }
}

/// Replaces each contact's endpoint pair by a single force at its centroid.
/// The result is an equally valid certificate with interior positions.
pub fn collapse_to_single_points(cert: &ForceCertificate) -> ForceCertificate {
    let mut grouped: Vec<(usize, Rational, Rational)> = Vec::new();
    for e in &cert.entries {
        match grouped.iter_mut().find(|(c, _, _)| *c == e.contact) {
            Some((_, total, moment)) => {
                *total += &e.magnitude;
                *moment += &e.position * &e.magnitude;
            }
            None => grouped.push((e.contact, e.magnitude.clone(), &e.position * &e.magnitude)),
        }
    }
    ForceCertificate {
        entries: grouped
            .into_iter()
            .filter(|(_, total, _)| !total.is_zero())
            .map(|(contact, total, moment)| ForceEntry {
                contact,
                position: moment / &total,
                magnitude: total,
            })
            .collect(),
    }
}
