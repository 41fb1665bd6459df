//! Brackets: projective partitions whose lower row is a sector.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::metrics::{is_pair_neutral, is_s0, is_sector, normalized_color};
use crate::partition::{Color, CyclicInterval, Direction, Partition, Point, Row};
use crate::patterns::BracketPattern;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BracketKind {
    NotABracket,
    ResidualFirstKind,
    ResidualSecondKindNonminimal,
    Minimal,
    PlainBracket,
}

impl fmt::Display for BracketKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketKind::NotABracket => "not-a-bracket",
            BracketKind::ResidualFirstKind => "residual-first-kind",
            BracketKind::ResidualSecondKindNonminimal => "residual-second-kind-nonminimal",
            BracketKind::Minimal => "minimal",
            BracketKind::PlainBracket => "plain-bracket",
        })
    }
}

pub fn is_projective(p: &Partition) -> bool {
    p.involution() == *p && matches!(p.compose(p), Ok((q, _)) if q == *p)
}

pub fn is_bracket(p: &Partition) -> bool {
    let m = p.lower().len();
    m >= 2
        && is_pair_neutral(p)
        && p.block_of(Point::lower(1)).ok() == p.block_of(Point::lower(m)).ok()
        && is_projective(p)
}

/// The bracket whose lower row reproduces the colors of `s` and its
/// internal pairing, with the legs leaving `s` turned into through-strings.
pub fn associated_bracket(p: &Partition, s: &CyclicInterval) -> Result<Partition> {
    if !is_pair_neutral(p) {
        return Err(Error::NotP2nb);
    }
    if !is_sector(p, s) {
        return Err(Error::NotASector);
    }
    let pts = s.points(p)?;
    let m = pts.len();
    let colors: Vec<Color> = pts.iter().map(|&pt| normalized_color(p, pt)).collect::<Result<_>>()?;
    let index: HashMap<Point, usize> = pts.iter().enumerate().map(|(i, &pt)| (pt, i + 1)).collect();
    let mut blocks = vec![vec![Point::lower(1), Point::lower(m)], vec![Point::upper(1), Point::upper(m)]];
    for (i, &pt) in pts.iter().enumerate().take(m - 1).skip(1) {
        let i = i + 1;
        let b = &p.blocks()[p.block_of(pt)?];
        let partner = if b[0] == pt { b[1] } else { b[0] };
        match index.get(&partner) {
            Some(&j) if j > 1 && j < m => {
                if i < j {
                    blocks.push(vec![Point::lower(i), Point::lower(j)]);
                    blocks.push(vec![Point::upper(i), Point::upper(j)]);
                }
            }
            _ => blocks.push(vec![Point::lower(i), Point::upper(i)]),
        }
    }
    Ok(Partition::assemble(colors.clone(), colors, blocks))
}

/// The partition left after erasing the outer points of both rows.
pub fn bracket_argument(p: &Partition) -> Result<Partition> {
    if !is_bracket(p) {
        return Err(Error::NotABracket);
    }
    let (m, k) = (p.lower().len(), p.upper().len());
    let s: BTreeSet<Point> = [Point::lower(1), Point::lower(m), Point::upper(1), Point::upper(k)].into_iter().collect();
    p.erase(&s)
}

/// Wraps `a` in an outer pair `c ... c̄` on both rows.
pub fn make_bracket(c: Color, a: &Partition) -> Result<Partition> {
    if !is_pair_neutral(a) || !is_projective(a) {
        return Err(Error::NotProjective);
    }
    let wrap = |row: &[Color]| {
        let mut r = vec![c];
        r.extend_from_slice(row);
        r.push(c.inverse());
        r
    };
    let m = a.lower().len() + 2;
    let mut blocks = vec![vec![Point::lower(1), Point::lower(m)], vec![Point::upper(1), Point::upper(m)]];
    blocks.extend(
        a.blocks()
            .iter()
            .map(|b| b.iter().map(|pt| Point { row: pt.row, index: pt.index + 1 }).collect()),
    );
    Ok(Partition::assemble(wrap(a.upper()), wrap(a.lower()), blocks))
}

fn start_color(p: &Partition) -> Result<Color> {
    if !is_bracket(p) {
        return Err(Error::NotABracket);
    }
    Ok(p.lower()[0])
}

pub fn weak_inversion(p: &Partition) -> Result<Partition> {
    let c = start_color(p)?;
    make_bracket(c.inverse(), p)
}

pub fn strong_inversion(p: &Partition) -> Result<Partition> {
    let c = start_color(p)?;
    let a = bracket_argument(p)?;
    let inner = Partition::identity(&[c]).tensor(&a).tensor(&Partition::identity(&[c.inverse()]));
    make_bracket(c.inverse(), &inner)
}

/// Turns among lower-row positions `from..to` (1-based, pairs `(i, i+1)`).
fn lower_turns(p: &Partition, from: usize, to: usize) -> usize {
    let l = p.lower();
    (from..to).filter(|&i| l[i - 1] != l[i]).count()
}

fn is_through(p: &Partition, idx: usize) -> bool {
    let b = &p.blocks()[p.block_of(Point::lower(idx)).expect("point")];
    b.iter().any(|pt| pt.row == Row::Upper)
}

pub fn is_dualizable(p: &Partition) -> bool {
    if !is_bracket(p) || !is_s0(p) || p.verticolor_reflect() != *p {
        return false;
    }
    let m = p.lower().len();
    if m < 4 {
        return false;
    }
    let (a, b) = (m / 2, m / 2 + 1);
    p.lower()[a - 1] != p.lower()[b - 1] && is_through(p, a) && is_through(p, b)
}

/// Quarter cyclic rotation of a dualizable bracket.
pub fn dual_bracket(p: &Partition) -> Result<Partition> {
    if !is_dualizable(p) {
        return Err(Error::NotDualizable);
    }
    p.cyclic_rotate(Direction::CounterClockwise, p.num_points() / 4)
}

pub fn classify_bracket(p: &Partition) -> BracketKind {
    if !is_bracket(p) {
        return BracketKind::NotABracket;
    }
    let m = p.lower().len();
    let connected = p.is_connected();
    let interior_turns = if m >= 4 { lower_turns(p, 2, m - 2 + 1) } else { 0 };
    if connected && interior_turns == 0 {
        return BracketKind::ResidualFirstKind;
    }
    if connected && is_dualizable(p) {
        if lower_turns(p, 1, m) == 1 && p.lower()[0] == Color::Black {
            return BracketKind::Minimal;
        }
        if interior_turns == 1 {
            return BracketKind::ResidualSecondKindNonminimal;
        }
    }
    BracketKind::PlainBracket
}

/// The bracket Br_c(w): `2(frame + 1)` points per row, left half colored
/// `c`; label `k` sits at lower index `n - k` with mirror `n + 1 + k` and is a
/// same-row pair iff `k` is in `w`.
pub fn build_bracket_from_pattern(c: Color, w: BracketPattern) -> Partition {
    let n = w.frame() as usize + 1;
    let mut row = vec![c; n];
    row.extend(std::iter::repeat_n(c.inverse(), n));
    let mut blocks = Vec::with_capacity(2 * n);
    for k in 0..n {
        let (a, b) = (n - k, n + 1 + k);
        if w.contains(k as u32) {
            blocks.push(vec![Point::lower(a), Point::lower(b)]);
            blocks.push(vec![Point::upper(a), Point::upper(b)]);
        } else {
            blocks.push(vec![Point::lower(a), Point::upper(a)]);
            blocks.push(vec![Point::lower(b), Point::upper(b)]);
        }
    }
    Partition::assemble(row.clone(), row, blocks)
}

/// Recovers `(c, w)` with `p = Br_c(w)`, if any.
pub fn pattern_of_bracket(p: &Partition) -> Option<(Color, BracketPattern)> {
    let m = p.lower().len();
    if m < 4 || m % 2 == 1 {
        return None;
    }
    let n = m / 2;
    let mut mask = 0u64;
    for k in 1..n {
        let b = p.block_of(Point::lower(n - k)).ok()?;
        if p.blocks()[b].contains(&Point::lower(n + 1 + k)) {
            mask |= 1 << k;
        }
    }
    let w = BracketPattern::from_mask(mask).ok()?;
    let c = p.lower()[0];
    (build_bracket_from_pattern(c, w) == *p).then_some((c, w))
}
