//! Color sums, color distances, sectors, the crossing-distance set and the
//! membership predicates for the families P2nb, S_0, S_w and I_D.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Color, CyclicInterval, Partition, Point, Row};

/// Native color on the lower row, inverted on the upper row.
pub fn normalized_color(p: &Partition, pt: Point) -> Result<Color> {
    let c = p.color(pt)?;
    Ok(match pt.row {
        Row::Lower => c,
        Row::Upper => c.inverse(),
    })
}

/// Normalized color signs along the orientation.
pub(crate) fn oriented_signs(p: &Partition) -> Vec<i32> {
    p.lower()
        .iter()
        .map(|c| c.sign())
        .chain(p.upper().iter().rev().map(|c| -c.sign()))
        .collect()
}

pub fn color_sum<'a>(p: &Partition, pts: impl IntoIterator<Item = &'a Point>) -> Result<i32> {
    pts.into_iter().map(|&pt| normalized_color(p, pt).map(Color::sign)).sum()
}

pub fn total_color_sum(p: &Partition) -> i32 {
    oriented_signs(p).iter().sum()
}

/// Membership in P2nb: every block is a neutral pair.
pub fn is_pair_neutral(p: &Partition) -> bool {
    p.blocks()
        .iter()
        .all(|b| b.len() == 2 && color_sum(p, b).map(|s| s == 0).unwrap_or(false))
}

/// Sum of `signs` over the positions strictly between `a` and `b`, walking
/// forward from `a`.
fn open_sum(signs: &[i32], a: usize, b: usize) -> i32 {
    let n = signs.len();
    let mut s = 0;
    let mut i = (a + 1) % n;
    while i != b {
        s += signs[i];
        i = (i + 1) % n;
    }
    s
}

fn distance_at(signs: &[i32], a: usize, b: usize) -> i32 {
    if a == b {
        return 0;
    }
    let inner = open_sum(signs, a, b);
    if signs[a] == signs[b] {
        inner + signs[b]
    } else {
        inner
    }
}

/// Signed color distance from `a` to `b`.
pub fn signed_distance(p: &Partition, a: Point, b: Point) -> Result<i32> {
    let (pa, pb) = (p.position(a)?, p.position(b)?);
    if !is_pair_neutral(p) {
        return Err(Error::NotP2nb);
    }
    Ok(distance_at(&oriented_signs(p), pa, pb))
}

/// All signed distances, indexed by orientation position.
pub fn distance_matrix(p: &Partition) -> Result<Vec<Vec<i32>>> {
    if !is_pair_neutral(p) {
        return Err(Error::NotP2nb);
    }
    Ok(raw_distance_matrix(p))
}

/// The distance formula applied without the neutrality requirement.
pub fn raw_distance_matrix(p: &Partition) -> Vec<Vec<i32>> {
    let signs = oriented_signs(p);
    let n = signs.len();
    (0..n).map(|a| (0..n).map(|b| distance_at(&signs, a, b)).collect()).collect()
}

/// Signed distance between blocks, evaluated at their first points.
pub fn block_distance(p: &Partition, b1: usize, b2: usize) -> Result<i32> {
    let (x, y) = (p.block(b1)?[0], p.block(b2)?[0]);
    if !is_s0(p) {
        return Err(Error::NotS0);
    }
    signed_distance(p, x, y)
}

/// All sectors: the two closed intervals bounded by each pair block, and the
/// one-point interval of each singleton block.
pub fn sectors(p: &Partition) -> Vec<CyclicInterval> {
    let mut out = Vec::new();
    for b in p.blocks() {
        match b.len() {
            2 => {
                out.push(CyclicInterval::closed(b[0], b[1]));
                out.push(CyclicInterval::closed(b[1], b[0]));
            }
            1 if p.num_points() > 1 => out.push(CyclicInterval::closed(b[0], b[0])),
            _ => {}
        }
    }
    out
}

/// Whether `s` is a sector of `p`.
pub fn is_sector(p: &Partition, s: &CyclicInterval) -> bool {
    s.openness == crate::partition::Openness::ClosedClosed && sectors(p).contains(s)
}

/// For a pair partition: position of each point's partner along the orientation.
pub(crate) fn oriented_mates(p: &Partition) -> Option<Vec<usize>> {
    let mut mate = vec![usize::MAX; p.num_points()];
    for b in p.blocks() {
        if b.len() != 2 {
            return None;
        }
        let (x, y) = (p.position(b[0]).ok()?, p.position(b[1]).ok()?);
        mate[x] = y;
        mate[y] = x;
    }
    Some(mate)
}

fn leg_sums_ok(p: &Partition, w: u32) -> bool {
    if !is_pair_neutral(p) {
        return false;
    }
    let signs = oriented_signs(p);
    let mate = oriented_mates(p).expect("pair partition");
    (0..signs.len()).all(|a| {
        let s = open_sum(&signs, a, mate[a]);
        if w == 0 {
            s == 0
        } else {
            s.rem_euclid(w as i32) == 0
        }
    })
}

pub fn is_s0(p: &Partition) -> bool {
    leg_sums_ok(p, 0)
}

/// Membership in S_w: between the legs of every block the color sum is a
/// multiple of `w`.
pub fn in_s_w(p: &Partition, w: u32) -> bool {
    leg_sums_ok(p, w)
}

/// The set A(p) of absolute distances between crossing blocks.
pub fn crossing_distances(p: &Partition) -> Result<BTreeSet<u32>> {
    if !is_s0(p) {
        return Err(Error::NotS0);
    }
    let signs = oriented_signs(p);
    let firsts: Vec<usize> = p.blocks().iter().map(|b| p.position(b[0]).unwrap()).collect();
    let mut out = BTreeSet::new();
    for i in 0..firsts.len() {
        for j in i + 1..firsts.len() {
            if p.crossing(i, j)? {
                out.insert(distance_at(&signs, firsts[i], firsts[j]).unsigned_abs());
            }
        }
    }
    Ok(out)
}

/// Start positions of the turns: cyclically adjacent points with opposite
/// normalized colors. Position `i` stands for the pair `(i, i + 1 mod n)`.
pub fn turn_positions(p: &Partition) -> Vec<usize> {
    let s = oriented_signs(p);
    let n = s.len();
    if n < 2 {
        return Vec::new();
    }
    (0..n).filter(|&i| s[i] != s[(i + 1) % n] && (n > 2 || i == 0)).collect()
}

/// A subsemigroup of (N_0, +): all non-empty sums of `generators`, plus 0
/// when `contains_zero` holds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemigroupSpec {
    pub generators: BTreeSet<u32>,
    pub contains_zero: bool,
}

impl SemigroupSpec {
    pub fn new(generators: impl IntoIterator<Item = u32>, contains_zero: bool) -> Result<SemigroupSpec> {
        let generators: BTreeSet<u32> = generators.into_iter().collect();
        if generators.contains(&0) {
            return Err(Error::InvalidParam("semigroup generators must be positive".into()));
        }
        Ok(SemigroupSpec { generators, contains_zero })
    }

    /// Membership table for `0..=n`.
    pub fn members_up_to(&self, n: u32) -> Vec<bool> {
        let n = n as usize;
        let mut reach = vec![false; n + 1];
        for k in 1..=n {
            reach[k] = self
                .generators
                .iter()
                .any(|&g| (g as usize) == k || ((g as usize) < k && reach[k - g as usize]));
        }
        reach[0] = self.contains_zero;
        reach
    }

    pub fn member(&self, n: u32) -> bool {
        self.members_up_to(n)[n as usize]
    }
}

impl fmt::Display for SemigroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "D{{gens={}; zero={}}}", gens.join(","), self.contains_zero as u8)
    }
}

impl FromStr for SemigroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<SemigroupSpec> {
        let bad = || Error::InvalidParam(format!("malformed semigroup spec '{}'", s));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = body.strip_prefix("D{").and_then(|b| b.strip_suffix('}')).ok_or_else(bad)?;
        let (g, z) = inner.split_once(';').ok_or_else(bad)?;
        let g = g.strip_prefix("gens=").ok_or_else(bad)?;
        let zero = match z.strip_prefix("zero=").ok_or_else(bad)? {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        let gens = if g.is_empty() {
            Vec::new()
        } else {
            g.split(',').map(|x| x.parse::<u32>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        SemigroupSpec::new(gens, zero)
    }
}

pub fn semigroup_member(d: &SemigroupSpec, n: u32) -> bool {
    d.member(n)
}

/// Membership in I_D: in S_0 and no crossing distance lies in D.
pub fn in_i_d(p: &Partition, d: &SemigroupSpec) -> bool {
    match crossing_distances(p) {
        Ok(a) => {
            let top = a.iter().copied().max().unwrap_or(0);
            let table = d.members_up_to(top);
            a.iter().all(|&x| !table[x as usize])
        }
        Err(_) => false,
    }
}
