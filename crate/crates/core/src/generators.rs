//! Named stack constructions. All use unit block height; rescale with
//! [`Stack::with_height`].

use num_traits::Zero;

use crate::model::{Block, Stack};
use crate::rational::{int, rat, Rational};

/// Rows of contiguous blocks centered on the table edge, bottom row first.
/// A row of `t` blocks spans `[-t/2, t/2]`.
pub fn centered_rows(sizes: &[u64]) -> Stack {
    let mut blocks = Vec::new();
    for (level, &t) in sizes.iter().enumerate() {
        let y = int(level as i64);
        let left = rat(-(t as i64), 2);
        for k in 0..t {
            blocks.push(Block::new(&left + int(k as i64), y.clone()));
        }
    }
    Stack::new(blocks)
}

/// Harmonic stack of `n` blocks, one per level. Block `k` (from the bottom)
/// has its right edge at `sum_{i=n-k+1}^{n} 1/(2i)`.
pub fn gen_harmonic(n: u64) -> Stack {
    assert!(n >= 1, "harmonic stack needs at least one block");
    let mut right = Rational::zero();
    let mut blocks = Vec::with_capacity(n as usize);
    for k in 1..=n {
        right += rat(1, 2 * (n - k + 1) as i64);
        blocks.push(Block::new(&right - int(1), int(k as i64 - 1)));
    }
    Stack::new(blocks)
}

/// Row sizes of the brick-wall `d`-stack: a single block, then for
/// `r = 2..=d` an `r`-slab of `2r-3` rows alternating `r` and `r-1` blocks.
pub fn brickwall_rows(d: u64) -> Vec<u64> {
    assert!(d >= 1, "brick-wall stack needs d >= 1");
    let mut rows = vec![1];
    for r in 2..=d {
        for level in 0..(2 * r - 3) {
            rows.push(if level % 2 == 0 { r } else { r - 1 });
        }
    }
    rows
}

/// Brick-wall `d`-stack with `d(d-1)(2d-1)/3 + 1` blocks and overhang `d/2`.
pub fn gen_brickwall(d: u64) -> Stack {
    centered_rows(&brickwall_rows(d))
}

/// `d(d-1)(2d-1)/3 + 1`.
pub fn brickwall_block_count(d: u64) -> u64 {
    d * (d - 1) * (2 * d - 1) / 3 + 1
}

/// Rows of 1, 2, …, r blocks.
pub fn gen_inverted_triangle(r: u64) -> Stack {
    assert!(r >= 1, "triangle needs at least one row");
    centered_rows(&(1..=r).collect::<Vec<_>>())
}

/// Rows of 1, …, d−1, d, d−1, …, 1 blocks.
pub fn gen_diamond(d: u64) -> Stack {
    assert!(d >= 1, "diamond needs d >= 1");
    let rows: Vec<u64> = (1..=d).chain((1..d).rev()).collect();
    centered_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{overhang, validate};

    #[test]
    fn harmonic_small() {
        let s = gen_harmonic(1);
        assert_eq!(s.blocks, vec![Block::new(rat(-1, 2), int(0))]);
        let s = gen_harmonic(2);
        let rights: Vec<_> = s.blocks.iter().map(Block::right).collect();
        assert_eq!(rights, vec![rat(1, 4), rat(3, 4)]);
        assert_eq!(overhang(&s).unwrap(), rat(3, 4));
        assert_eq!(overhang(&gen_harmonic(3)).unwrap(), rat(11, 12));
        assert_eq!(overhang(&gen_harmonic(4)).unwrap(), rat(25, 24));
    }

    #[test]
    fn brickwall_small() {
        assert_eq!(
            gen_brickwall(1).blocks,
            vec![Block::new(rat(-1, 2), int(0))]
        );
        let s = gen_brickwall(2);
        assert_eq!(s.len(), 3);
        assert_eq!(overhang(&s).unwrap(), int(1));
        let s = gen_brickwall(6);
        assert_eq!(s.len(), 111);
        assert_eq!(overhang(&s).unwrap(), int(3));
    }

    #[test]
    fn triangle_and_diamond_counts() {
        assert_eq!(
            gen_inverted_triangle(1).blocks,
            vec![Block::new(rat(-1, 2), int(0))]
        );
        let t2 = gen_inverted_triangle(2);
        assert_eq!(t2.len(), 3);
        assert_eq!(t2.blocks[1].x, int(-1));
        assert_eq!(t2.blocks[2].right(), int(1));
        assert_eq!(gen_inverted_triangle(3).len(), 6);
        assert_eq!(gen_diamond(1).len(), 1);
        assert_eq!(gen_diamond(2).len(), 4);
        assert_eq!(gen_diamond(5).len(), 25);
    }

    #[test]
    fn generators_are_canonical() {
        let stacks = [
            gen_harmonic(7),
            gen_brickwall(5),
            gen_inverted_triangle(4),
            gen_diamond(4),
        ];
        for s in stacks {
            assert_eq!(validate(&s).unwrap(), s);
        }
    }
}
