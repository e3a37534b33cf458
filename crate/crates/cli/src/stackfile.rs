//! Line-oriented stack files.
//!
//! ```text
//! # optional comments
//! h 1/2
//! -1/2 0
//! w -1/4 1/2 3
//! ```
//!
//! `h` sets the block height (default 1), `x y` adds a block with lower-left
//! corner `(x, y)`, and `w x y m` a point weight of mass `m`.

use std::fmt::Write as _;

use num_traits::One;
use overhang::model::{validate, Block, PointWeight, Stack};
use overhang::rational::{format_rational, parse_rational, Rational};

use crate::diag::Diagnostic;

/// Splits a line into `(column, token)` pairs, ignoring any `#` comment.
pub fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, t)| (line[..byte].chars().count() + 1, t))
        .collect()
}

pub fn number(line: usize, (column, text): (usize, &str)) -> Result<Rational, Diagnostic> {
    parse_rational(text).map_err(|e| Diagnostic::at(line, column, format!("{e}: {text:?}")))
}

/// Parses and validates a stack file.
pub fn parse_stack(text: &str) -> Result<Stack, Diagnostic> {
    let mut height: Option<Rational> = None;
    let mut blocks = Vec::new();
    let mut weights = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let ln = index + 1;
        let toks = tokens(line);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        let expect = |count: usize, what: &str| {
            if toks.len() == count {
                Ok(())
            } else {
                let column = toks.get(count).map_or(col, |t| t.0);
                Err(Diagnostic::at(ln, column, format!("expected {what}")))
            }
        };
        match head {
            "h" => {
                expect(2, "`h <height>`")?;
                if height.is_some() {
                    return Err(Diagnostic::at(ln, col, "duplicate height line"));
                }
                height = Some(number(ln, toks[1])?);
            }
            "w" => {
                expect(4, "`w <x> <y> <mass>`")?;
                let x = number(ln, toks[1])?;
                let y = number(ln, toks[2])?;
                let m = number(ln, toks[3])?;
                weights.push(PointWeight::new(x, y, m));
            }
            _ => {
                expect(2, "`<x> <y>`")?;
                blocks.push(Block::new(number(ln, toks[0])?, number(ln, toks[1])?));
            }
        }
    }
    let stack = Stack {
        blocks,
        h: height.unwrap_or_else(Rational::one),
        weights,
    };
    validate(&stack).map_err(|e| Diagnostic::whole(e.to_string()))
}

/// Canonical text: the height line only when it differs from 1, then the
/// blocks in canonical order, then the point weights.
pub fn serialize_stack(stack: &Stack) -> String {
    let mut out = String::new();
    if !stack.h.is_one() {
        let _ = writeln!(out, "h {}", format_rational(&stack.h));
    }
    for b in &stack.blocks {
        let _ = writeln!(out, "{} {}", format_rational(&b.x), format_rational(&b.y));
    }
    for w in &stack.weights {
        let _ = writeln!(
            out,
            "w {} {} {}",
            format_rational(&w.x),
            format_rational(&w.y),
            format_rational(&w.mass)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use overhang::generators::{gen_brickwall, gen_harmonic};
    use overhang::rational::{int, rat};

    #[test]
    fn tokens_report_columns() {
        assert_eq!(tokens("  1/2\t 3 # x y"), vec![(3, "1/2"), (8, "3")]);
        assert!(tokens("# only a comment").is_empty());
    }

    #[test]
    fn parses_all_line_kinds() {
        let s = parse_stack("# demo\nh 1/2\n-1/2 0\nw -1/4 1/2 3\n").unwrap();
        assert_eq!(s.h, rat(1, 2));
        assert_eq!(s.blocks, vec![Block::new(rat(-1, 2), int(0))]);
        assert_eq!(
            s.weights,
            vec![PointWeight::new(rat(-1, 4), rat(1, 2), int(3))]
        );
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_stack("0 0\n1/0 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (Some(2), Some(1)));
        let e = parse_stack("0 0\n  1 1 1\n").unwrap_err();
        assert_eq!((e.line, e.column), (Some(2), Some(7)));
        let e = parse_stack("0 0\n1/2 0\n").unwrap_err();
        assert_eq!(e.line, None);
    }

    #[test]
    fn round_trip_is_idempotent() {
        for s in [
            gen_harmonic(7),
            gen_brickwall(4),
            gen_harmonic(1).with_height(rat(1, 3)),
        ] {
            let text = serialize_stack(&s);
            let parsed = parse_stack(&text).unwrap();
            assert_eq!(parsed, validate(&s).unwrap());
            assert_eq!(serialize_stack(&parsed), text);
        }
        assert_eq!(serialize_stack(&gen_harmonic(1)), "-1/2 0\n");
    }
}
