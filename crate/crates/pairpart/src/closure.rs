//! Bounded generation of partition categories.
//!
//! Every category is closed under rotations, so the engine works with
//! rotation classes: the cyclic sequence of normalized colors along the
//! orientation together with the pairing. All row splits and cyclic shifts
//! of a pair partition have the same class. Tensor products and compositions
//! of rotated operands are all instances of one operation, `glue`: place two
//! rings side by side and contract `k` points across the seam, nearest
//! first. Involution reverses the ring and inverts its colors.

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;

use crate::brackets::build_bracket_from_pattern;
use crate::error::{Error, Result};
use crate::metrics::{oriented_mates, oriented_signs};
use crate::partition::{Color, Partition, Point};
use crate::patterns::{all_patterns, PatternCategory};

/// Largest ring the engine can hold.
pub const MAX_RING: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Retention bound on total points of reported members.
    pub max_points: usize,
    /// Bound on operands and results during the search.
    pub intermediate_points: usize,
    pub max_iterations: usize,
}

impl ClosureConfig {
    pub fn new(max_points: usize, intermediate_points: usize) -> ClosureConfig {
        ClosureConfig { max_points, intermediate_points, max_iterations: 10_000 }
    }

    fn validate(&self) -> Result<()> {
        if self.intermediate_points < self.max_points {
            return Err(Error::InvalidConfig("intermediate_points must be >= max_points".into()));
        }
        if self.intermediate_points > MAX_RING {
            return Err(Error::InvalidConfig(format!("intermediate_points must be <= {}", MAX_RING)));
        }
        if self.max_points == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidConfig("bounds must be positive".into()));
        }
        Ok(())
    }
}

/// Canonical rotation class of a pair partition. Position `i` holds
/// `offset << 1 | black`, where `offset` is the forward distance to the
/// partner; the sequence is the least of its rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    len: u8,
    code: [u8; MAX_RING],
}

impl Ring {
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn of(p: &Partition) -> Result<Ring> {
        let mates = oriented_mates(p).ok_or(Error::NotPairPartition)?;
        let n = mates.len();
        if n > MAX_RING {
            return Err(Error::TooLarge { points: n, bound: MAX_RING });
        }
        let signs = oriented_signs(p);
        let mut code = [0u8; MAX_RING];
        for i in 0..n {
            code[i] = ((((mates[i] + n - i) % n) as u8) << 1) | (signs[i] < 0) as u8;
        }
        Ok(Ring::canonical(&code[..n]))
    }

    fn canonical(code: &[u8]) -> Ring {
        let n = code.len();
        let lo = code.iter().copied().min().unwrap_or(0);
        let mut best = code.iter().position(|&c| c == lo).unwrap_or(0);
        // only rotations starting at the least code can win
        for r in best + 1..n {
            if code[r] != lo {
                continue;
            }
            for t in 1..n {
                let (a, b) = (code[(r + t) % n], code[(best + t) % n]);
                if a != b {
                    if a < b {
                        best = r;
                    }
                    break;
                }
            }
        }
        let mut out = [0u8; MAX_RING];
        out[..n - best].copy_from_slice(&code[best..]);
        out[n - best..n].copy_from_slice(&code[..best]);
        Ring { len: n as u8, code: out }
    }

    fn decode(&self) -> Decoded {
        let n = self.len();
        let mut d = Decoded { n, black: [false; MAX_RING], mate: [0; MAX_RING], period: n.max(1) };
        for i in 0..n {
            d.black[i] = self.code[i] & 1 == 1;
            d.mate[i] = ((i + (self.code[i] >> 1) as usize) % n) as u8;
        }
        d.period = (1..n).find(|&r| n.is_multiple_of(r) && (0..n).all(|t| self.code[t] == self.code[(t + r) % n])).unwrap_or(n.max(1));
        d
    }

    /// Reverse the cyclic order and invert colors.
    pub fn involution(&self) -> Ring {
        let n = self.len();
        let mut code = [0u8; MAX_RING];
        for i in 0..n {
            let off = (self.code[i] >> 1) as usize;
            code[n - 1 - i] = ((((n - off) % n) as u8) << 1) | (1 ^ (self.code[i] & 1));
        }
        Ring::canonical(&code[..n])
    }

    /// The partition with the whole ring on the lower row.
    pub fn representative(&self) -> Partition {
        self.split(0, 0)
    }

    /// The partition read from rotation `r` with `upper` points on the upper row.
    pub fn split(&self, r: usize, upper: usize) -> Partition {
        let d = self.decode();
        let n = d.n;
        let lower_len = n - upper;
        let point_at = |pos: usize| {
            if pos < lower_len {
                Point::lower(pos + 1)
            } else {
                Point::upper(n - pos)
            }
        };
        let mut lower = Vec::with_capacity(lower_len);
        let mut up = vec![Color::White; upper];
        let mut blocks = Vec::with_capacity(n / 2);
        for pos in 0..n {
            let src = (r + pos) % n;
            let norm = if d.black[src] { Color::Black } else { Color::White };
            if pos < lower_len {
                lower.push(norm);
            } else {
                up[n - pos - 1] = norm.inverse();
            }
            let other = (d.mate[src] as usize + n - r) % n;
            if pos < other {
                blocks.push(vec![point_at(pos), point_at(other)]);
            }
        }
        Partition::assemble(up, lower, blocks)
    }

    /// Every row form of the class.
    pub fn materialize(&self) -> BTreeSet<Partition> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for r in 0..n.max(1) {
            for k in 0..=n {
                out.insert(self.split(r, k));
            }
        }
        out
    }
}

struct Decoded {
    n: usize,
    black: [bool; MAX_RING],
    mate: [u8; MAX_RING],
    period: usize,
}

/// All glue results of `x` and `y` of size at most `cap`, passed to `emit`.
fn glue_all(x: &Decoded, y: &Decoded, cap: usize, emit: &mut impl FnMut(Ring)) {
    let (n1, n2) = (x.n, y.n);
    let total = n1 + n2;
    let kmin = total.saturating_sub(cap).div_ceil(2);
    let kmax_len = n1.min(n2);
    if kmin > kmax_len {
        return;
    }
    let mut xb = [false; MAX_RING];
    let mut yb = [false; MAX_RING];
    let mut comb_mate = [0u8; 2 * MAX_RING];
    for i in 0..x.period {
        for t in 0..n1 {
            let src = (i + t) % n1;
            xb[t] = x.black[src];
            comb_mate[t] = ((x.mate[src] as usize + n1 - i) % n1) as u8;
        }
        for j in 0..y.period {
            // longest admissible seam: facing points need opposite colors
            let mut chain = 0;
            while chain < kmax_len && xb[n1 - 1 - chain] != y.black[(j + chain) % n2] {
                chain += 1;
            }
            if chain < kmin {
                continue;
            }
            for t in 0..n2 {
                let src = (j + t) % n2;
                yb[t] = y.black[src];
                comb_mate[n1 + t] = (n1 + (y.mate[src] as usize + n2 - j) % n2) as u8;
            }
            for k in kmin..=chain {
                emit(contract(&xb, &yb, &comb_mate, n1, n2, k));
            }
        }
    }
}

/// Contracts the `k` points on either side of the seam between the
/// concatenated rings and canonicalizes the rest.
fn contract(xb: &[bool], yb: &[bool], mate: &[u8], n1: usize, n2: usize, k: usize) -> Ring {
    let total = n1 + n2;
    let n = total - 2 * k;
    let contracted = |q: usize| q >= n1 - k && q < n1 + k;
    // partner across the seam: X[n1-1-s] <-> Y[s]
    let link = |q: usize| 2 * n1 - 1 - q;
    let new_index = |q: usize| if q < n1 - k { q } else { q - 2 * k };
    let mut code = [0u8; MAX_RING];
    for q in (0..n1 - k).chain(n1 + k..total) {
        let mut r = mate[q] as usize;
        while contracted(r) {
            r = mate[link(r)] as usize;
        }
        let (a, b) = (new_index(q), new_index(r));
        let black = if q < n1 { xb[q] } else { yb[q - n1] };
        code[a] = ((((b + n - a) % n) as u8) << 1) | black as u8;
    }
    Ring::canonical(&code[..n])
}

/// Base classes: the empty partition and the single neutral pair.
fn base_rings() -> [Ring; 2] {
    let empty = Ring { len: 0, code: [0; MAX_RING] };
    let mut code = [0u8; MAX_RING];
    code[0] = 1 << 1;
    code[1] = (1 << 1) | 1;
    [empty, Ring::canonical(&code[..2])]
}

#[derive(Clone, Debug)]
pub struct ClosureSet {
    rings: BTreeSet<Ring>,
    pub saturated: bool,
    pub iterations: usize,
    pub config: ClosureConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    NoWithinBounds,
}

impl ClosureSet {
    /// Classes with at most `max_points` points.
    pub fn classes(&self) -> impl Iterator<Item = &Ring> + '_ {
        self.rings.iter().filter(|r| r.len() <= self.config.max_points)
    }

    /// Every class found, including intermediates above `max_points`.
    pub fn all_classes(&self) -> &BTreeSet<Ring> {
        &self.rings
    }

    /// All members of at most `max_points` points, in every row form.
    pub fn members(&self) -> BTreeSet<Partition> {
        self.classes().flat_map(|r| r.materialize()).collect()
    }

    pub fn contains(&self, p: &Partition) -> Result<Membership> {
        let bound = self.config.max_points;
        if p.num_points() > bound {
            return Err(Error::TooLarge { points: p.num_points(), bound });
        }
        Ok(match Ring::of(p) {
            Ok(r) if self.rings.contains(&r) => Membership::Yes,
            _ => Membership::NoWithinBounds,
        })
    }

    /// Patterns `w` with frame at most `frame_bound` whose bracket Br_•(w) is
    /// a member.
    pub fn bracket_patterns_of(&self, frame_bound: u32) -> Result<PatternCategory> {
        let needed = 4 * (frame_bound as usize + 1);
        if needed > self.config.max_points {
            return Err(Error::BoundTooSmall { frame_bound, needed });
        }
        let cat = PatternCategory::new(all_patterns(frame_bound).filter(|&w| {
            let b = build_bracket_from_pattern(Color::Black, w);
            matches!(self.contains(&b), Ok(Membership::Yes))
        }));
        cat.check_closed().map_err(Error::NotClosed)?;
        Ok(cat)
    }
}

/// Worklist fixed point from `gens` and the base partitions.
///
/// Each new class is glued against the seeds: the base pair, the generators
/// and their involutions. Every element of the generated category is a
/// vertical stack of layers `id ⊗ g ⊗ id` with `g` a rotated seed, and a
/// stack glued to a further seed is again such a stack, so this reaches the
/// same category as gluing arbitrary pairs while keeping the search linear
/// in the number of classes. Operands and results are bounded by
/// `intermediate_points`.
pub fn generate(gens: &[Partition], cfg: &ClosureConfig) -> Result<ClosureSet> {
    cfg.validate()?;
    let cap = cfg.intermediate_points;
    let mut seen: FxHashSet<Ring> = FxHashSet::default();
    let mut frontier: Vec<Ring> = Vec::new();
    let add = |r: Ring, seen: &mut FxHashSet<Ring>, frontier: &mut Vec<Ring>| {
        if seen.insert(r) {
            frontier.push(r);
        }
    };
    let [empty, pair] = base_rings();
    add(empty, &mut seen, &mut frontier);
    add(pair, &mut seen, &mut frontier);
    let mut seeds: BTreeSet<Ring> = [pair].into_iter().collect();
    for g in gens {
        let r = Ring::of(g)?;
        for s in [r, r.involution()] {
            add(s, &mut seen, &mut frontier);
            if s.len() <= cap {
                seeds.insert(s);
            }
        }
    }
    // seeds above the bound stay members but never act as operands
    let ops: Vec<Decoded> = seeds.iter().map(Ring::decode).collect();
    let mut saturated = false;
    let mut iterations = 0;
    while iterations < cfg.max_iterations {
        iterations += 1;
        frontier.sort();
        let mut next: Vec<Ring> = Vec::new();
        for x in frontier.iter().filter(|r| r.len() <= cap) {
            let dx = x.decode();
            for g in &ops {
                glue_all(&dx, g, cap, &mut |r| {
                    if !seen.contains(&r) {
                        let inv = r.involution();
                        add(r, &mut seen, &mut next);
                        add(inv, &mut seen, &mut next);
                    }
                });
            }
        }
        frontier = next;
        if frontier.is_empty() {
            saturated = true;
            break;
        }
    }
    let rings: BTreeSet<Ring> = seen.into_iter().collect();
    Ok(ClosureSet { rings, saturated, iterations, config: *cfg })
}
