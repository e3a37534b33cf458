//! Block and stack geometry.
//!
//! Block `B_i` occupies the box `[x, x+1] × [y, y+h]`; the table is the
//! quadrant `(-∞, 0] × (-∞, 0]` and is addressed as block index 0. Block
//! indices in [`Contact`] are 1-based positions in the canonical ordering.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{format_rational, half, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// Interiors of two bodies intersect. Index 0 is the table.
    #[error("blocks {0} and {1} overlap")]
    OverlapError(usize, usize),
    #[error("point weight {index} at ({x}, {y}) does not rest on any block or the table")]
    DanglingWeightError { index: usize, x: String, y: String },
    #[error("block height must be positive")]
    InvalidHeight,
    #[error("point weight {0} must have positive mass")]
    InvalidMass(usize),
    #[error("stack has no blocks")]
    EmptyStack,
}

/// Unit-length, unit-weight block given by its lower-left corner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    // Field order matters: derived `Ord` sorts by (y, x).
    pub y: Rational,
    pub x: Rational,
}

impl Block {
    pub fn new(x: Rational, y: Rational) -> Self {
        Block { x, y }
    }

    pub fn right(&self) -> Rational {
        &self.x + Rational::one()
    }

    pub fn center(&self) -> Rational {
        &self.x + half()
    }
}

/// A point load of arbitrary mass resting on a top surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointWeight {
    pub x: Rational,
    pub y: Rational,
    pub mass: Rational,
}

impl PointWeight {
    pub fn new(x: Rational, y: Rational, mass: Rational) -> Self {
        PointWeight { x, y, mass }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stack {
    pub blocks: Vec<Block>,
    pub h: Rational,
    pub weights: Vec<PointWeight>,
}

/// Rests-on relation between an upper block and a lower block (or the table)
/// together with the contact interval `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contact {
    pub upper: usize,
    pub lower: usize,
    pub a: Rational,
    pub b: Rational,
}

impl Contact {
    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.a <= x && x <= &self.b
    }
}

/// What a point weight rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Table,
    /// 1-based canonical block index.
    Block(usize),
}

impl Stack {
    /// Unit-height stack with no point weights; not yet validated.
    pub fn new(blocks: Vec<Block>) -> Self {
        Stack {
            blocks,
            h: Rational::one(),
            weights: Vec::new(),
        }
    }

    pub fn with_weights(mut self, weights: Vec<PointWeight>) -> Self {
        self.weights = weights;
        self
    }

    /// Rescales every vertical coordinate to block height `h`.
    pub fn with_height(&self, h: Rational) -> Stack {
        let factor = &h / &self.h;
        Stack {
            blocks: self
                .blocks
                .iter()
                .map(|b| Block::new(b.x.clone(), &b.y * &factor))
                .collect(),
            weights: self
                .weights
                .iter()
                .map(|w| PointWeight::new(w.x.clone(), &w.y * &factor, w.mass.clone()))
                .collect(),
            h,
        }
    }

    /// Shifts everything horizontally by `dx`.
    pub fn translated(&self, dx: &Rational) -> Stack {
        Stack {
            blocks: self
                .blocks
                .iter()
                .map(|b| Block::new(&b.x + dx, b.y.clone()))
                .collect(),
            weights: self
                .weights
                .iter()
                .map(|w| PointWeight::new(&w.x + dx, w.y.clone(), w.mass.clone()))
                .collect(),
            h: self.h.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// 1-based canonical index access.
    pub fn block(&self, index: usize) -> &Block {
        &self.blocks[index - 1]
    }

    pub fn point_weight_mass(&self) -> Rational {
        self.weights.iter().map(|w| w.mass.clone()).sum()
    }

    /// Blocks plus point weights.
    pub fn total_weight(&self) -> Rational {
        int(self.blocks.len() as i64) + self.point_weight_mass()
    }

    /// The body each point weight rests on, if any. A weight on the shared
    /// edge of two adjacent blocks is assigned to the first in canonical order.
    pub fn weight_supports(&self) -> Vec<Option<Support>> {
        self.weights
            .iter()
            .map(|w| {
                if w.y.is_zero() && !w.x.is_positive() {
                    return Some(Support::Table);
                }
                self.blocks
                    .iter()
                    .position(|b| w.y == &b.y + &self.h && b.x <= w.x && w.x <= b.right())
                    .map(|i| Support::Block(i + 1))
            })
            .collect()
    }

    /// Point weights grouped by the 1-based block they rest on
    /// (entry 0 collects table weights).
    pub fn weights_by_block(&self) -> Vec<Vec<&PointWeight>> {
        let mut grouped = vec![Vec::new(); self.blocks.len() + 1];
        for (w, support) in self.weights.iter().zip(self.weight_supports()) {
            match support {
                Some(Support::Table) => grouped[0].push(w),
                Some(Support::Block(i)) => grouped[i].push(w),
                None => {}
            }
        }
        grouped
    }
}

/// Checks the geometric invariants and returns the stack in canonical
/// (y, x) order.
pub fn validate(stack: &Stack) -> Result<Stack, ModelError> {
    if !stack.h.is_positive() {
        return Err(ModelError::InvalidHeight);
    }
    let mut blocks = stack.blocks.clone();
    blocks.sort();

    let one = Rational::one();
    for (i, b) in blocks.iter().enumerate() {
        if b.x.is_negative() && b.y.is_negative() {
            return Err(ModelError::OverlapError(i + 1, 0));
        }
        // Sorted by y: once the vertical gap reaches h no later block overlaps.
        for (j, c) in blocks.iter().enumerate().skip(i + 1) {
            if &c.y - &b.y >= stack.h {
                break;
            }
            if (&c.x - &b.x).abs() < one {
                return Err(ModelError::OverlapError(i + 1, j + 1));
            }
        }
    }

    for (i, w) in stack.weights.iter().enumerate() {
        if !w.mass.is_positive() {
            return Err(ModelError::InvalidMass(i));
        }
    }
    let out = Stack {
        blocks,
        h: stack.h.clone(),
        weights: stack.weights.clone(),
    };
    if let Some(index) = out.weight_supports().iter().position(Option::is_none) {
        let w = &out.weights[index];
        return Err(ModelError::DanglingWeightError {
            index,
            x: format_rational(&w.x),
            y: format_rational(&w.y),
        });
    }
    Ok(out)
}

/// All rests-on pairs of a valid stack, ordered by upper block then lower
/// block (table first). Degenerate single-point contacts are included.
pub fn contacts(stack: &Stack) -> Vec<Contact> {
    let mut levels: BTreeMap<&Rational, Vec<usize>> = BTreeMap::new();
    for (i, b) in stack.blocks.iter().enumerate() {
        levels.entry(&b.y).or_default().push(i + 1);
    }

    let one = Rational::one();
    let mut out = Vec::new();
    for (i, upper) in stack.blocks.iter().enumerate() {
        let upper_index = i + 1;
        if upper.y.is_zero() && !upper.x.is_positive() {
            let b = upper.right().min(Rational::zero());
            out.push(Contact {
                upper: upper_index,
                lower: 0,
                a: upper.x.clone(),
                b,
            });
        }
        let below = &upper.y - &stack.h;
        if let Some(candidates) = levels.get(&below) {
            for &j in candidates {
                let lower = stack.block(j);
                if (&upper.x - &lower.x).abs() <= one {
                    out.push(Contact {
                        upper: upper_index,
                        lower: j,
                        a: upper.x.clone().max(lower.x.clone()),
                        b: upper.right().min(lower.right()),
                    });
                }
            }
        }
    }
    out
}

/// `max_i (x_i + 1)`.
pub fn overhang(stack: &Stack) -> Result<Rational, ModelError> {
    stack
        .blocks
        .iter()
        .map(Block::right)
        .max()
        .ok_or(ModelError::EmptyStack)
}

/// Index (1-based) of the first block attaining the overhang.
pub fn most_overhanging(stack: &Stack) -> Option<usize> {
    let best = overhang(stack).ok()?;
    stack
        .blocks
        .iter()
        .position(|b| b.right() == best)
        .map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn blk(x: Rational, y: Rational) -> Block {
        Block::new(x, y)
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let s = Stack::new(vec![blk(int(0), int(0)), blk(rat(1, 2), int(0))]);
        assert_eq!(validate(&s), Err(ModelError::OverlapError(1, 2)));
    }

    #[test]
    fn touching_blocks_allowed() {
        let s = Stack::new(vec![blk(int(-1), int(0)), blk(int(0), int(0))]);
        assert!(validate(&s).is_ok());
    }

    #[test]
    fn canonical_reordering() {
        let s = Stack::new(vec![blk(rat(-1, 2), int(1)), blk(int(-1), int(0))]);
        let v = validate(&s).unwrap();
        assert_eq!(
            v.blocks,
            vec![blk(int(-1), int(0)), blk(rat(-1, 2), int(1))]
        );
    }

    #[test]
    fn block_inside_table_rejected() {
        let s = Stack::new(vec![blk(int(-2), rat(-1, 2))]);
        assert_eq!(validate(&s), Err(ModelError::OverlapError(1, 0)));
    }

    #[test]
    fn nonpositive_height_rejected() {
        let mut s = Stack::new(vec![blk(int(-1), int(0))]);
        s.h = int(0);
        assert_eq!(validate(&s), Err(ModelError::InvalidHeight));
    }

    #[test]
    fn dangling_weight_rejected() {
        let s = Stack::new(vec![blk(int(-1), int(0))]).with_weights(vec![PointWeight::new(
            int(3),
            int(1),
            int(1),
        )]);
        assert!(matches!(
            validate(&s),
            Err(ModelError::DanglingWeightError { index: 0, .. })
        ));
        let s = Stack::new(vec![blk(int(-1), int(0))]).with_weights(vec![PointWeight::new(
            rat(1, 2),
            int(0),
            int(1),
        )]);
        assert!(matches!(
            validate(&s),
            Err(ModelError::DanglingWeightError { .. })
        ));
    }

    #[test]
    fn weights_find_support() {
        let s = Stack::new(vec![blk(int(-1), int(0))]).with_weights(vec![
            PointWeight::new(int(0), int(1), int(2)),
            PointWeight::new(int(-5), int(0), int(1)),
        ]);
        let s = validate(&s).unwrap();
        assert_eq!(
            s.weight_supports(),
            vec![Some(Support::Block(1)), Some(Support::Table)]
        );
        assert_eq!(s.total_weight(), int(4));
    }

    #[test]
    fn nonpositive_weight_mass_rejected() {
        let s = Stack::new(vec![blk(int(-1), int(0))]).with_weights(vec![PointWeight::new(
            int(0),
            int(1),
            int(0),
        )]);
        assert_eq!(validate(&s), Err(ModelError::InvalidMass(0)));
    }

    #[test]
    fn contact_examples() {
        let s = validate(&Stack::new(vec![
            blk(rat(-1, 2), int(0)),
            blk(int(0), int(1)),
        ]))
        .unwrap();
        assert_eq!(
            contacts(&s),
            vec![
                Contact {
                    upper: 1,
                    lower: 0,
                    a: rat(-1, 2),
                    b: int(0)
                },
                Contact {
                    upper: 2,
                    lower: 1,
                    a: int(0),
                    b: rat(1, 2)
                },
            ]
        );

        let s = validate(&Stack::new(vec![blk(int(-1), int(0))])).unwrap();
        assert_eq!(
            contacts(&s),
            vec![Contact {
                upper: 1,
                lower: 0,
                a: int(-1),
                b: int(0)
            }]
        );

        let s = validate(&Stack::new(vec![blk(int(-1), int(0)), blk(int(0), int(0))])).unwrap();
        let cs = contacts(&s);
        assert_eq!(
            cs[0],
            Contact {
                upper: 1,
                lower: 0,
                a: int(-1),
                b: int(0)
            }
        );
        assert_eq!(
            cs[1],
            Contact {
                upper: 2,
                lower: 0,
                a: int(0),
                b: int(0)
            }
        );
        assert!(cs[1].is_degenerate());
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn side_by_side_blocks_do_not_touch_forces() {
        let s = validate(&Stack::new(vec![
            blk(int(-3), int(0)),
            blk(int(-2), int(0)),
        ]))
        .unwrap();
        assert!(contacts(&s).iter().all(|c| c.lower == 0));
    }

    #[test]
    fn corner_touch_is_degenerate_contact() {
        let s = validate(&Stack::new(vec![
            blk(int(-2), int(0)),
            blk(int(-1), int(1)),
        ]))
        .unwrap();
        let cs = contacts(&s);
        assert_eq!(
            cs[1],
            Contact {
                upper: 2,
                lower: 1,
                a: int(-1),
                b: int(-1)
            }
        );
    }

    #[test]
    fn overhang_of_single_block() {
        let s = Stack::new(vec![blk(rat(-1, 2), int(0))]);
        assert_eq!(overhang(&s).unwrap(), rat(1, 2));
        assert_eq!(overhang(&Stack::new(vec![])), Err(ModelError::EmptyStack));
    }
}
