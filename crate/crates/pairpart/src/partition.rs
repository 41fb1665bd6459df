//! Two-colored partitions: representation, text form and the structural
//! operations (tensor, involution, composition, reflections, rotations,
//! erasing, orientation and crossings).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn inverse(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    pub fn from_symbol(c: char) -> Option<Color> {
        match c {
            'w' => Some(Color::White),
            'b' => Some(Color::Black),
            _ => None,
        }
    }

    /// Density of the color in the color sum: white +1, black -1.
    pub fn sign(self) -> i32 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }
}

/// Rows are ordered lower before upper, which fixes the canonical point order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Lower,
    Upper,
}

impl Row {
    pub fn other(self) -> Row {
        match self {
            Row::Lower => Row::Upper,
            Row::Upper => Row::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub row: Row,
    /// 1-based, left to right.
    pub index: usize,
}

impl Point {
    pub fn lower(index: usize) -> Point {
        Point { row: Row::Lower, index }
    }

    pub fn upper(index: usize) -> Point {
        Point { row: Row::Upper, index }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.row {
            Row::Lower => 'l',
            Row::Upper => 'u',
        };
        write!(f, "{}{}", tag, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Corner {
    UpperLeftDown,
    UpperRightDown,
    LowerLeftUp,
    LowerRightUp,
}

impl Corner {
    pub fn inverse(self) -> Corner {
        match self {
            Corner::UpperLeftDown => Corner::LowerLeftUp,
            Corner::LowerLeftUp => Corner::UpperLeftDown,
            Corner::UpperRightDown => Corner::LowerRightUp,
            Corner::LowerRightUp => Corner::UpperRightDown,
        }
    }

    pub const ALL: [Corner; 4] = [
        Corner::UpperLeftDown,
        Corner::UpperRightDown,
        Corner::LowerLeftUp,
        Corner::LowerRightUp,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Clockwise,
    CounterClockwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Openness {
    ClosedClosed,
    OpenOpen,
    OpenClosed,
    ClosedOpen,
}

/// An interval of the orientation of some partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    pub start: Point,
    pub end: Point,
    pub openness: Openness,
}

impl CyclicInterval {
    pub fn closed(start: Point, end: Point) -> CyclicInterval {
        CyclicInterval { start, end, openness: Openness::ClosedClosed }
    }

    /// Points of the interval in cyclic order. A degenerate interval with
    /// `start == end` is `{start}` when closed and empty otherwise.
    pub fn points(&self, p: &Partition) -> Result<Vec<Point>> {
        let order = p.orientation_order();
        let n = order.len();
        let s = p.position(self.start)?;
        let e = p.position(self.end)?;
        if s == e {
            return Ok(match self.openness {
                Openness::ClosedClosed => vec![self.start],
                _ => Vec::new(),
            });
        }
        let len = (e + n - s) % n + 1;
        let mut out: Vec<Point> = (0..len).map(|t| order[(s + t) % n]).collect();
        if matches!(self.openness, Openness::OpenOpen | Openness::ClosedOpen) {
            out.pop();
        }
        if matches!(self.openness, Openness::OpenOpen | Openness::OpenClosed) {
            out.remove(0);
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Partition, x: Point) -> Result<bool> {
        p.position(x)?;
        Ok(self.points(p)?.contains(&x))
    }
}

/// A two-colored partition in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: Vec<Color>,
    lower: Vec<Color>,
    blocks: Vec<Vec<Point>>,
}

fn canonicalize(blocks: &mut Vec<Vec<Point>>) {
    blocks.retain(|b| !b.is_empty());
    for b in blocks.iter_mut() {
        b.sort();
    }
    blocks.sort();
}

impl Partition {
    /// Builds a partition after checking that the blocks cover every point
    /// exactly once.
    pub fn new(upper: Vec<Color>, lower: Vec<Color>, blocks: Vec<Vec<Point>>) -> Result<Partition> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for &pt in b {
                let len = match pt.row {
                    Row::Upper => upper.len(),
                    Row::Lower => lower.len(),
                };
                if pt.index == 0 || pt.index > len {
                    return Err(Error::IndexOutOfRange(pt));
                }
                if !seen.insert(pt) {
                    return Err(Error::DuplicatePoint(pt));
                }
            }
        }
        let p = Partition::assemble(upper, lower, blocks);
        if let Some(pt) = p.points().find(|pt| !seen.contains(pt)) {
            return Err(Error::MissingPoint(pt));
        }
        Ok(p)
    }

    /// Internal constructor for blocks already known to be a valid cover.
    pub(crate) fn assemble(upper: Vec<Color>, lower: Vec<Color>, mut blocks: Vec<Vec<Point>>) -> Partition {
        canonicalize(&mut blocks);
        Partition { upper, lower, blocks }
    }

    pub fn empty() -> Partition {
        Partition { upper: Vec::new(), lower: Vec::new(), blocks: Vec::new() }
    }

    /// The identity on a row of the given colors.
    pub fn identity(colors: &[Color]) -> Partition {
        let blocks = (1..=colors.len()).map(|i| vec![Point::lower(i), Point::upper(i)]).collect();
        Partition::assemble(colors.to_vec(), colors.to_vec(), blocks)
    }

    pub fn upper(&self) -> &[Color] {
        &self.upper
    }

    pub fn lower(&self) -> &[Color] {
        &self.lower
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    pub fn row(&self, row: Row) -> &[Color] {
        match row {
            Row::Upper => &self.upper,
            Row::Lower => &self.lower,
        }
    }

    pub fn num_points(&self) -> usize {
        self.upper.len() + self.lower.len()
    }

    pub fn has_point(&self, pt: Point) -> bool {
        pt.index >= 1 && pt.index <= self.row(pt.row).len()
    }

    pub fn color(&self, pt: Point) -> Result<Color> {
        if !self.has_point(pt) {
            return Err(Error::UnknownPoint(pt));
        }
        Ok(self.row(pt.row)[pt.index - 1])
    }

    /// All points, lower row first.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (1..=self.lower.len())
            .map(Point::lower)
            .chain((1..=self.upper.len()).map(Point::upper))
    }

    /// Index of the block containing `pt`.
    pub fn block_of(&self, pt: Point) -> Result<usize> {
        self.blocks
            .iter()
            .position(|b| b.contains(&pt))
            .ok_or(Error::UnknownPoint(pt))
    }

    pub fn block(&self, idx: usize) -> Result<&[Point]> {
        self.blocks.get(idx).map(|b| b.as_slice()).ok_or(Error::UnknownBlock(idx))
    }

    pub fn is_pair(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Partition> {
        Parser { s: text.as_bytes(), pos: 0 }.partition()
    }

    fn map_points(&self, upper: Vec<Color>, lower: Vec<Color>, f: impl Fn(Point) -> Point) -> Partition {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&pt| f(pt)).collect()).collect();
        Partition::assemble(upper, lower, blocks)
    }

    pub fn tensor(&self, q: &Partition) -> Partition {
        let (ku, kl) = (self.upper.len(), self.lower.len());
        let mut upper = self.upper.clone();
        upper.extend_from_slice(&q.upper);
        let mut lower = self.lower.clone();
        lower.extend_from_slice(&q.lower);
        let mut blocks = self.blocks.clone();
        blocks.extend(q.blocks.iter().map(|b| {
            b.iter()
                .map(|pt| match pt.row {
                    Row::Upper => Point::upper(pt.index + ku),
                    Row::Lower => Point::lower(pt.index + kl),
                })
                .collect()
        }));
        Partition::assemble(upper, lower, blocks)
    }

    pub fn involution(&self) -> Partition {
        self.map_points(self.lower.clone(), self.upper.clone(), |pt| Point { row: pt.row.other(), index: pt.index })
    }

    /// Stacks `q` on top of `self`. The result has the upper row of `q` and
    /// the lower row of `self`; closed loops in the middle are counted.
    pub fn compose(&self, q: &Partition) -> Result<(Partition, usize)> {
        let mid = &self.upper;
        if let Some(i) = (0..mid.len().min(q.lower.len())).find(|&i| mid[i] != q.lower[i]) {
            return Err(Error::NotComposable {
                position: i + 1,
                detail: format!("upper {} vs lower {}", mid[i].symbol(), q.lower[i].symbol()),
            });
        }
        if mid.len() != q.lower.len() {
            return Err(Error::NotComposable {
                position: mid.len().min(q.lower.len()) + 1,
                detail: format!("row lengths {} and {}", mid.len(), q.lower.len()),
            });
        }
        // Node layout: our lower row, then the middle row, then q's upper row.
        let (m, k, u) = (self.lower.len(), mid.len(), q.upper.len());
        let mut uf = UnionFind::new(m + k + u);
        let bottom = |pt: Point| match pt.row {
            Row::Lower => pt.index - 1,
            Row::Upper => m + pt.index - 1,
        };
        let top = |pt: Point| match pt.row {
            Row::Lower => m + pt.index - 1,
            Row::Upper => m + k + pt.index - 1,
        };
        for b in &self.blocks {
            for w in b.windows(2) {
                uf.union(bottom(w[0]), bottom(w[1]));
            }
        }
        for b in &q.blocks {
            for w in b.windows(2) {
                uf.union(top(w[0]), top(w[1]));
            }
        }
        let mut groups: Vec<Vec<Point>> = vec![Vec::new(); m + k + u];
        for i in 0..m {
            groups[uf.find(i)].push(Point::lower(i + 1));
        }
        for j in 0..u {
            groups[uf.find(m + k + j)].push(Point::upper(j + 1));
        }
        // components made of middle points only are closed loops
        let mut loops = 0;
        for i in m..m + k {
            let r = uf.find(i);
            if r == i && groups[r].is_empty() {
                loops += 1;
            }
        }
        let blocks: Vec<Vec<Point>> = groups.into_iter().filter(|g| !g.is_empty()).collect();
        Ok((Partition::assemble(q.upper.clone(), self.lower.clone(), blocks), loops))
    }

    pub fn color_invert(&self) -> Partition {
        let inv = |r: &[Color]| r.iter().map(|c| c.inverse()).collect();
        Partition { upper: inv(&self.upper), lower: inv(&self.lower), blocks: self.blocks.clone() }
    }

    pub fn reflect(&self) -> Partition {
        let (ku, kl) = (self.upper.len(), self.lower.len());
        let rev = |r: &[Color]| r.iter().rev().copied().collect();
        self.map_points(rev(&self.upper), rev(&self.lower), |pt| match pt.row {
            Row::Upper => Point::upper(ku + 1 - pt.index),
            Row::Lower => Point::lower(kl + 1 - pt.index),
        })
    }

    pub fn verticolor_reflect(&self) -> Partition {
        self.reflect().color_invert()
    }

    /// Moves one point between the rows at the given corner, inverting its
    /// color.
    pub fn rotate(&self, corner: Corner) -> Result<Partition> {
        let (ku, kl) = (self.upper.len(), self.lower.len());
        let mut upper = self.upper.clone();
        let mut lower = self.lower.clone();
        let q = match corner {
            Corner::UpperLeftDown => {
                if ku == 0 {
                    return Err(Error::EmptyRow(Row::Upper));
                }
                let c = upper.remove(0);
                lower.insert(0, c.inverse());
                self.map_points(upper, lower, |pt| match pt.row {
                    Row::Upper if pt.index == 1 => Point::lower(1),
                    Row::Upper => Point::upper(pt.index - 1),
                    Row::Lower => Point::lower(pt.index + 1),
                })
            }
            Corner::UpperRightDown => {
                let c = upper.pop().ok_or(Error::EmptyRow(Row::Upper))?;
                lower.push(c.inverse());
                self.map_points(upper, lower, |pt| match pt.row {
                    Row::Upper if pt.index == ku => Point::lower(kl + 1),
                    _ => pt,
                })
            }
            Corner::LowerLeftUp => {
                if kl == 0 {
                    return Err(Error::EmptyRow(Row::Lower));
                }
                let c = lower.remove(0);
                upper.insert(0, c.inverse());
                self.map_points(upper, lower, |pt| match pt.row {
                    Row::Lower if pt.index == 1 => Point::upper(1),
                    Row::Lower => Point::lower(pt.index - 1),
                    Row::Upper => Point::upper(pt.index + 1),
                })
            }
            Corner::LowerRightUp => {
                let c = lower.pop().ok_or(Error::EmptyRow(Row::Lower))?;
                upper.push(c.inverse());
                self.map_points(upper, lower, |pt| match pt.row {
                    Row::Lower if pt.index == kl => Point::upper(ku + 1),
                    _ => pt,
                })
            }
        };
        Ok(q)
    }

    /// Clockwise: lower-left point up, then upper-right point down.
    /// Counter-clockwise: upper-left point down, then lower-right point up.
    pub fn cyclic_rotate(&self, direction: Direction, steps: usize) -> Result<Partition> {
        let (first, second) = match direction {
            Direction::Clockwise => (Corner::LowerLeftUp, Corner::UpperRightDown),
            Direction::CounterClockwise => (Corner::UpperLeftDown, Corner::LowerRightUp),
        };
        let mut q = self.clone();
        for _ in 0..steps {
            q = q.rotate(first)?.rotate(second)?;
        }
        Ok(q)
    }

    /// Removes the points of `s` and merges what is left of every block
    /// touching `s` into one block.
    pub fn erase(&self, s: &BTreeSet<Point>) -> Result<Partition> {
        if let Some(&pt) = s.iter().find(|pt| !self.has_point(**pt)) {
            return Err(Error::UnknownPoint(pt));
        }
        if s.is_empty() {
            return Ok(self.clone());
        }
        let survivors = |row: Row| -> Vec<usize> {
            // new index (1-based) of each old index, 0 if erased
            let mut next = 0;
            (1..=self.row(row).len())
                .map(|i| {
                    if s.contains(&Point { row, index: i }) {
                        0
                    } else {
                        next += 1;
                        next
                    }
                })
                .collect()
        };
        let (nu, nl) = (survivors(Row::Upper), survivors(Row::Lower));
        let remap = |pt: Point| {
            let idx = match pt.row {
                Row::Upper => nu[pt.index - 1],
                Row::Lower => nl[pt.index - 1],
            };
            Point { row: pt.row, index: idx }
        };
        let mut merged = Vec::new();
        let mut blocks = Vec::new();
        for b in &self.blocks {
            if b.iter().any(|pt| s.contains(pt)) {
                merged.extend(b.iter().filter(|pt| !s.contains(pt)).map(|&pt| remap(pt)));
            } else {
                blocks.push(b.iter().map(|&pt| remap(pt)).collect());
            }
        }
        blocks.push(merged);
        let keep = |row: Row| -> Vec<Color> {
            self.row(row)
                .iter()
                .enumerate()
                .filter(|(i, _)| !s.contains(&Point { row, index: i + 1 }))
                .map(|(_, &c)| c)
                .collect()
        };
        Ok(Partition::assemble(keep(Row::Upper), keep(Row::Lower), blocks))
    }

    /// The orientation as a linear sequence: lower row left to right, then
    /// upper row right to left.
    pub fn orientation_order(&self) -> Vec<Point> {
        (1..=self.lower.len())
            .map(Point::lower)
            .chain((1..=self.upper.len()).rev().map(Point::upper))
            .collect()
    }

    /// Position of a point in `orientation_order`.
    pub fn position(&self, pt: Point) -> Result<usize> {
        if !self.has_point(pt) {
            return Err(Error::UnknownPoint(pt));
        }
        Ok(match pt.row {
            Row::Lower => pt.index - 1,
            Row::Upper => self.lower.len() + self.upper.len() - pt.index,
        })
    }

    /// Whether blocks `b1` and `b2` (indices into `blocks()`) cross.
    pub fn crossing(&self, b1: usize, b2: usize) -> Result<bool> {
        let x = self.block(b1)?;
        let y = self.block(b2)?;
        if b1 == b2 || x.len() < 2 || y.len() < 2 {
            return Ok(false);
        }
        let mut xs: Vec<usize> = x.iter().map(|&pt| self.position(pt)).collect::<Result<_>>()?;
        xs.sort_unstable();
        // y crosses x iff its points fall into at least two gaps of x.
        let gap = |pos: usize| xs.iter().filter(|&&a| a < pos).count() % xs.len();
        let mut gaps = y.iter().map(|&pt| self.position(pt).map(gap));
        let first = gaps.next().unwrap()?;
        for g in gaps {
            if g? != first {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Classes of the transitive closure of the crossing relation, as sorted
    /// lists of block indices.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.blocks.len();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if self.crossing(i, j).unwrap_or(false) {
                    uf.union(i, j);
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            classes[uf.find(i)].push(i);
        }
        classes.retain(|c| !c.is_empty());
        classes.sort();
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_noncrossing(&self) -> bool {
        let n = self.blocks.len();
        (0..n).all(|i| (i + 1..n).all(|j| !self.crossing(i, j).unwrap_or(false)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row: String = self.upper.iter().map(|c| c.symbol()).collect();
        write!(f, "U[{}] ", row)?;
        let row: String = self.lower.iter().map(|c| c.symbol()).collect();
        write!(f, "L[{}] B{{", row)?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, pt) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", pt)?;
            }
        }
        f.write_str("}")
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        Partition::parse(s)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn colors(&mut self, tag: u8) -> Result<Vec<Color>> {
        self.expect(tag)?;
        self.expect(b'[')?;
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => match Color::from_symbol(c as char) {
                    Some(col) => {
                        out.push(col);
                        self.pos += 1;
                    }
                    None => return self.err("expected color 'w' or 'b'"),
                },
                None => return self.err("unterminated color row"),
            }
        }
    }

    fn point(&mut self) -> Result<Point> {
        let row = match self.peek() {
            Some(b'u') => Row::Upper,
            Some(b'l') => Row::Lower,
            _ => return self.err("expected point 'u<n>' or 'l<n>'"),
        };
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected point index");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        match digits.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(Point { row, index: i }),
            _ => {
                self.pos = start;
                self.err("point index must be a positive integer")
            }
        }
    }

    fn partition(&mut self) -> Result<Partition> {
        let upper = self.colors(b'U')?;
        let lower = self.colors(b'L')?;
        self.expect(b'B')?;
        self.expect(b'{')?;
        let mut blocks = Vec::new();
        if self.peek() == Some(b'}') {
            self.pos += 1;
        } else {
            let mut block = vec![self.point()?];
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        block.push(self.point()?);
                    }
                    Some(b';') => {
                        self.pos += 1;
                        blocks.push(std::mem::take(&mut block));
                        block.push(self.point()?);
                    }
                    Some(b'}') => {
                        self.pos += 1;
                        blocks.push(block);
                        break;
                    }
                    _ => return self.err("expected ',', ';' or '}'"),
                }
            }
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Partition::new(upper, lower, blocks)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// All pair partitions with neutral blocks on `total_points` points, over every
/// split into rows and every coloration, sorted by serialization.
pub fn enumerate_p2nb(total_points: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if total_points % 2 == 1 {
        return out;
    }
    for ku in 0..=total_points {
        let kl = total_points - ku;
        let order: Vec<Point> = (1..=kl)
            .map(Point::lower)
            .chain((1..=ku).rev().map(Point::upper))
            .collect();
        for matching in perfect_matchings(total_points) {
            let pairs = matching.len();
            for mask in 0u32..(1u32 << pairs) {
                let mut upper = vec![Color::White; ku];
                let mut lower = vec![Color::White; kl];
                let mut blocks = Vec::with_capacity(pairs);
                for (t, &(a, b)) in matching.iter().enumerate() {
                    let (pa, pb) = (order[a], order[b]);
                    // normalized colors of a neutral pair are opposite
                    let na = if mask >> t & 1 == 1 { Color::Black } else { Color::White };
                    for (pt, norm) in [(pa, na), (pb, na.inverse())] {
                        let native = match pt.row {
                            Row::Lower => norm,
                            Row::Upper => norm.inverse(),
                        };
                        match pt.row {
                            Row::Lower => lower[pt.index - 1] = native,
                            Row::Upper => upper[pt.index - 1] = native,
                        }
                    }
                    blocks.push(vec![pa, pb]);
                }
                out.push(Partition::assemble(upper, lower, blocks));
            }
        }
    }
    out.sort_by_cached_key(|p| p.serialize());
    out
}

/// All pair partitions on `total_points` points with arbitrary colors, sorted
/// by serialization.
pub fn enumerate_pair_partitions(total_points: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if total_points % 2 == 1 {
        return out;
    }
    let matchings = perfect_matchings(total_points);
    for ku in 0..=total_points {
        let kl = total_points - ku;
        let order: Vec<Point> = (1..=kl)
            .map(Point::lower)
            .chain((1..=ku).rev().map(Point::upper))
            .collect();
        for mask in 0u32..(1u32 << total_points) {
            let color = |i: usize| if mask >> i & 1 == 1 { Color::Black } else { Color::White };
            let lower: Vec<Color> = (0..kl).map(color).collect();
            let upper: Vec<Color> = (kl..total_points).map(color).collect();
            for matching in &matchings {
                let blocks = matching.iter().map(|&(a, b)| vec![order[a], order[b]]).collect();
                out.push(Partition::assemble(upper.clone(), lower.clone(), blocks));
            }
        }
    }
    out.sort_by_cached_key(|p| p.serialize());
    out
}

/// Perfect matchings of `0..n` as lists of pairs `(a, b)` with `a < b`.
pub(crate) fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    const HALFLIB: &str = "U[wbw] L[wbw] B{l1,u3;l2,u2;l3,u1}";

    #[test]
    fn parse_examples() {
        let id = p("U[w] L[w] B{l1,u1}");
        assert_eq!(id, Partition::identity(&[Color::White]));
        assert_eq!(p("U[] L[] B{}"), Partition::empty());
        let h = p(" U [ w b w ]  L[wbw]B{ u3 , l1 ; l2,u2;l3,u1 } ");
        assert_eq!(h.serialize(), HALFLIB);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Partition::parse("U[x] L[] B{}"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(Partition::parse("U[w] L[w] B{l1}"), Err(Error::MissingPoint(_))));
        assert!(matches!(Partition::parse("U[w] L[w] B{l1,u1;l1}"), Err(Error::DuplicatePoint(_))));
        assert!(matches!(Partition::parse("U[w] L[w] B{l1,u2}"), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(Partition::parse("U[w] L[w] B{l0,u1}"), Err(Error::Syntax { .. })));
        assert!(matches!(Partition::parse("U[] L[] B{} x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(Partition::empty().serialize(), "U[] L[] B{}");
        assert_eq!(Partition::identity(&[Color::White]).serialize(), "U[w] L[w] B{l1,u1}");
        let h = p(HALFLIB);
        assert_eq!(h.serialize(), h.clone().serialize());
    }

    #[test]
    fn tensor_examples() {
        let pw = Partition::identity(&[Color::White]);
        let pb = Partition::identity(&[Color::Black]);
        assert_eq!(Partition::empty().tensor(&pw), pw);
        assert_eq!(pw.tensor(&pb).serialize(), "U[wb] L[wb] B{l1,u1;l2,u2}");
        let h = p(HALFLIB);
        let hh = h.tensor(&h);
        assert_eq!((hh.upper().len(), hh.lower().len(), hh.blocks().len()), (6, 6, 6));
        for i in 0..3 {
            for j in 3..6 {
                let (bi, bj) = (hh.block_of(Point::lower(i + 1)).unwrap(), hh.block_of(Point::lower(j + 1)).unwrap());
                assert!(!hh.crossing(bi, bj).unwrap());
            }
        }
    }

    #[test]
    fn involution_examples() {
        let pw = Partition::identity(&[Color::White]);
        assert_eq!(pw.involution(), pw);
        assert_eq!(p("U[] L[bw] B{l1,l2}").involution().serialize(), "U[bw] L[] B{u1,u2}");
    }

    #[test]
    fn compose_examples() {
        let h = p(HALFLIB);
        let id = Partition::identity(h.upper());
        assert_eq!(h.compose(&id).unwrap(), (h.clone(), 0));
        let cap = p("U[bw] L[] B{u1,u2}");
        let cup = p("U[] L[bw] B{l1,l2}");
        assert_eq!(cap.compose(&cup).unwrap(), (Partition::empty(), 1));
        let err = h.compose(&Partition::identity(&[Color::White, Color::White])).unwrap_err();
        assert!(matches!(err, Error::NotComposable { position: 2, .. }));
    }

    #[test]
    fn halflib_from_bracket_figure() {
        // bracket tensor identity, sandwiched between a cap and a cup
        let bottom = p("U[wbwbw] L[wbw] B{l1,u1;l2,u2;l3,u5;u3,u4}");
        let middle = p("U[wbwbw] L[wbwbw] B{l1,l4;l2,u2;l3,u3;l5,u5;u1,u4}");
        let top = p("U[wbw] L[wbwbw] B{l1,u1;l2,u2;l3,u3;l4,l5}");
        let (bm, _) = bottom.compose(&middle).unwrap();
        let (all, _) = bm.compose(&top).unwrap();
        assert_eq!(all.serialize(), HALFLIB);
    }

    #[test]
    fn bracket_from_halflib_figure() {
        let h = p(HALFLIB).tensor(&Partition::identity(&[Color::Black]));
        let mid = Partition::identity(&[Color::White, Color::Black])
            .tensor(&p("U[wb] L[wb] B{l1,l2;u1,u2}"));
        let (a, _) = h.compose(&mid).unwrap();
        let (b, _) = a.compose(&h).unwrap();
        assert_eq!(b.serialize(), "U[wbwb] L[wbwb] B{l1,l4;l2,u2;l3,u3;u1,u4}");
    }

    #[test]
    fn reflections() {
        let pw = Partition::identity(&[Color::White]);
        let pb = Partition::identity(&[Color::Black]);
        assert_eq!(pw.color_invert(), pb);
        assert_eq!(pw.tensor(&pb).reflect(), pb.tensor(&pw));
        assert_eq!(p("U[] L[bw] B{l1,l2}").reflect().serialize(), "U[] L[wb] B{l1,l2}");
        let cup = p("U[] L[bw] B{l1,l2}");
        assert_eq!(cup.verticolor_reflect(), cup);
    }

    #[test]
    fn rotations() {
        let pw = Partition::identity(&[Color::White]);
        assert_eq!(pw.rotate(Corner::UpperLeftDown).unwrap().serialize(), "U[] L[bw] B{l1,l2}");
        let br = p("U[wbwb] L[wbwb] B{l1,l4;l2,u2;l3,u3;u1,u4}");
        for c in Corner::ALL {
            let r = br.rotate(c).unwrap();
            assert_eq!(r.rotate(c.inverse()).unwrap(), br);
        }
        let r = br.rotate(Corner::UpperLeftDown).unwrap();
        assert_eq!((r.num_points(), r.blocks().len()), (8, 4));
        assert!(matches!(Partition::empty().rotate(Corner::LowerLeftUp), Err(Error::EmptyRow(Row::Lower))));
        assert_eq!(br.cyclic_rotate(Direction::Clockwise, 0).unwrap(), br);
        let cw = br.cyclic_rotate(Direction::Clockwise, 3).unwrap();
        assert_eq!(cw.cyclic_rotate(Direction::CounterClockwise, 3).unwrap(), br);
    }

    #[test]
    fn erase_examples() {
        let q = p("U[] L[bwwb] B{l1,l4;l2,l3}");
        assert_eq!(q.erase(&BTreeSet::new()).unwrap(), q);
        let cup = p("U[] L[bw] B{l1,l2}");
        let all: BTreeSet<Point> = cup.points().collect();
        assert_eq!(cup.erase(&all).unwrap(), Partition::empty());
        let s: BTreeSet<Point> = [Point::lower(2), Point::lower(3)].into_iter().collect();
        assert_eq!(q.erase(&s).unwrap().serialize(), "U[] L[bb] B{l1,l2}");
        let bad: BTreeSet<Point> = [Point::upper(1)].into_iter().collect();
        assert!(matches!(q.erase(&bad), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn orientation_and_crossing() {
        let x = p("U[ww] L[ww] B{l1,u2;l2,u1}");
        assert_eq!(
            x.orientation_order(),
            vec![Point::lower(1), Point::lower(2), Point::upper(2), Point::upper(1)]
        );
        assert!(Partition::empty().orientation_order().is_empty());
        assert!(x.crossing(0, 1).unwrap());
        let par = p("U[ww] L[ww] B{l1,u1;l2,u2}");
        assert!(!par.crossing(0, 1).unwrap());
        assert!(!par.crossing(0, 0).unwrap());
        assert!(matches!(par.crossing(0, 5), Err(Error::UnknownBlock(5))));
        let fig = p("U[wwwbbb] L[wwwbbb] B{l1,l6;l2,l5;l3,u3;l4,u4;u1,u6;u2,u5}");
        let b1 = fig.block_of(Point::lower(1)).unwrap();
        let b2 = fig.block_of(Point::lower(3)).unwrap();
        assert!(fig.crossing(b1, b2).unwrap());
    }

    #[test]
    fn components() {
        let h = p(HALFLIB);
        assert_eq!(h.connected_components(), vec![vec![0, 1, 2]]);
        assert!(!h.is_noncrossing());
        let nest = p("U[] L[bwwb] B{l1,l4;l2,l3}");
        assert!(nest.is_noncrossing());
        assert_eq!(nest.connected_components(), vec![vec![0], vec![1]]);
        assert!(Partition::empty().is_noncrossing());
        let br = p("U[bbww] L[bbww] B{l1,l4;l2,u2;l3,u3;u1,u4}");
        assert_eq!(br.connected_components().len(), 1);
    }

    #[test]
    fn intervals() {
        let x = p("U[ww] L[ww] B{l1,u2;l2,u1}");
        let iv = CyclicInterval { start: Point::upper(1), end: Point::lower(2), openness: Openness::OpenOpen };
        assert_eq!(iv.points(&x).unwrap(), vec![Point::lower(1)]);
        let iv = CyclicInterval::closed(Point::lower(2), Point::upper(1));
        assert_eq!(iv.points(&x).unwrap(), vec![Point::lower(2), Point::upper(2), Point::upper(1)]);
    }
}
