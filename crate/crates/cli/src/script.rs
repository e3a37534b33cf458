//! Move scripts.
//!
//! ```text
//! init
//! 0 1
//! end
//! move -1/2 1/2 : 0 -1, -1/2 1/2, 1/2 1/2
//! lossy -1/2 1/2 : 0 -1, -1/2 1/2, 1/2 1/2
//! extreme -1/2 1/2
//! ```
//!
//! Deltas list signed `x m` pairs. Intervals of width other than 1 are
//! accepted as wide moves.

use num_traits::One;
use overhang::massmove::{Distribution, ExtremeMove, Move, SignedDistribution, Step};
use overhang::rational::Rational;

use crate::diag::Diagnostic;
use crate::stackfile::{number, tokens};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub init: Distribution,
    /// Each step with the 1-based line it came from.
    pub steps: Vec<(usize, Step)>,
}

/// Tokens of `line[start..end]` with columns relative to the whole line.
fn tokens_in(line: &str, start: usize, end: usize) -> Vec<(usize, &str)> {
    let offset = column(line, start) - 1;
    tokens(&line[start..end])
        .into_iter()
        .map(|(c, t)| (c + offset, t))
        .collect()
}

/// 1-based column of byte offset `at`.
fn column(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

pub fn parse_script(text: &str) -> Result<MoveScript, Diagnostic> {
    let lines: Vec<&str> = text.lines().collect();
    let mut cursor = 0;
    while cursor < lines.len() && tokens(lines[cursor]).is_empty() {
        cursor += 1;
    }
    let first = lines.get(cursor).map(|l| tokens(l)).unwrap_or_default();
    match first.first() {
        Some((_, "init")) => {}
        Some(&(col, _)) => return Err(Diagnostic::at(cursor + 1, col, "expected `init`")),
        None => return Err(Diagnostic::whole("empty script: expected `init`")),
    }

    // Initial points may be written `x m` or `(x, m)`.
    let init_line = cursor + 1;
    let mut pending: Vec<(usize, usize, String)> = Vec::new();
    let mut closed = false;
    let mut skip_head = true;
    while cursor < lines.len() {
        let ln = cursor + 1;
        let cleaned: String = lines[cursor]
            .chars()
            .map(|c| if matches!(c, '(' | ')' | ',') { ' ' } else { c })
            .collect();
        cursor += 1;
        let mut toks = tokens(&cleaned);
        if skip_head {
            toks.remove(0);
            skip_head = false;
        }
        for (i, &(col, t)) in toks.iter().enumerate() {
            if t == "end" {
                if let Some(&(c, _)) = toks.get(i + 1) {
                    return Err(Diagnostic::at(ln, c, "unexpected text after `end`"));
                }
                closed = true;
                break;
            }
            pending.push((ln, col, t.to_string()));
        }
        if closed {
            break;
        }
    }
    if !closed {
        return Err(Diagnostic::line(
            lines.len().max(1),
            "missing `end` after initial distribution",
        ));
    }
    if pending.len() % 2 == 1 {
        let (ln, col, _) = &pending[pending.len() - 1];
        return Err(Diagnostic::at(
            *ln,
            *col,
            "initial points must come in `x m` pairs",
        ));
    }
    let mut points = Vec::new();
    for pair in pending.chunks(2) {
        let [(lx, cx, x), (lm, cm, m)] = pair else {
            unreachable!("chunks of two")
        };
        points.push((number(*lx, (*cx, x))?, number(*lm, (*cm, m))?));
    }
    let init = Distribution::new(points).map_err(|e| Diagnostic::line(init_line, e.to_string()))?;

    let mut steps = Vec::new();
    for (index, line) in lines.iter().enumerate().skip(cursor) {
        let ln = index + 1;
        if let Some(step) = parse_step(ln, line)? {
            steps.push((ln, step));
        }
    }
    Ok(MoveScript { init, steps })
}

fn parse_step(ln: usize, line: &str) -> Result<Option<Step>, Diagnostic> {
    let body = line.split('#').next().unwrap_or("");
    let colon = body.find(':');
    let head = tokens(&body[..colon.unwrap_or(body.len())]);
    let Some(&(col, kind)) = head.first() else {
        if let Some(c) = colon {
            return Err(Diagnostic::at(ln, column(body, c), "unexpected `:`"));
        }
        return Ok(None);
    };
    if !matches!(kind, "move" | "lossy" | "extreme") {
        return Err(Diagnostic::at(ln, col, format!("unknown step `{kind}`")));
    }
    if head.len() != 3 {
        let column = head.get(3).map_or(col, |t| t.0);
        return Err(Diagnostic::at(
            ln,
            column,
            format!("expected `{kind} <a> <b>`"),
        ));
    }
    let a = number(ln, head[1])?;
    let b = number(ln, head[2])?;
    if kind == "extreme" {
        if let Some(c) = colon {
            return Err(Diagnostic::at(
                ln,
                column(body, c),
                "extreme moves take no delta",
            ));
        }
        let e = ExtremeMove::new(a, b).map_err(|e| Diagnostic::line(ln, e.to_string()))?;
        return Ok(Some(Step::Extreme(e)));
    }
    let Some(colon) = colon else {
        return Err(Diagnostic::at(
            ln,
            col,
            format!("expected `{kind} <a> <b> : <x> <m>, ...`"),
        ));
    };
    let mut delta = Vec::new();
    let rest = &body[colon + 1..];
    let mut start = colon + 1;
    for part in rest.split(',') {
        let end = start + part.len();
        let toks = tokens_in(body, start, end);
        match toks.as_slice() {
            [] if rest.trim().is_empty() => {}
            [x, m] => delta.push((number(ln, *x)?, number(ln, *m)?)),
            _ => {
                let at = toks.first().map_or(column(body, start), |t| t.0);
                return Err(Diagnostic::at(ln, at, "expected `<x> <m>` pair"));
            }
        }
        start = end + 1;
    }
    let delta = SignedDistribution::new(delta);
    let v = if &b - &a == Rational::one() {
        Move::new(a, b, delta)
    } else {
        Move::wide(a, b, delta)
    };
    let v = v.map_err(|e| Diagnostic::line(ln, e.to_string()))?;
    Ok(Some(if kind == "lossy" {
        Step::Lossy(v.lossy())
    } else {
        Step::Plain(v)
    }))
}
