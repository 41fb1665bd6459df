//! Bracket patterns, their operations and completion, pattern categories and
//! the correspondence with submonoids of (N_0, +).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::SemigroupSpec;

/// Largest admissible pattern element.
pub const MAX_FRAME: u32 = 63;

/// A non-empty finite set of positive integers, stored as a bitmask with bit
/// `i` set iff `i` is an element. Bit 0 is always clear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketPattern(u64);

impl BracketPattern {
    pub fn new(elements: impl IntoIterator<Item = u32>) -> Result<BracketPattern> {
        let mut mask = 0u64;
        for e in elements {
            if e == 0 || e > MAX_FRAME {
                return Err(Error::PatternElementOutOfRange(e as u64));
            }
            mask |= 1 << e;
        }
        BracketPattern::from_mask(mask)
    }

    pub fn from_mask(mask: u64) -> Result<BracketPattern> {
        if mask & 1 != 0 {
            return Err(Error::PatternElementOutOfRange(0));
        }
        if mask == 0 {
            return Err(Error::EmptyPattern);
        }
        Ok(BracketPattern(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn frame(self) -> u32 {
        63 - self.0.leading_zeros()
    }

    pub fn contains(self, i: u32) -> bool {
        i <= MAX_FRAME && self.0 >> i & 1 == 1
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        (1..=MAX_FRAME).filter(move |&i| self.0 >> i & 1 == 1)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn superpose(self, v: BracketPattern) -> BracketPattern {
        BracketPattern(self.0 | v.0)
    }

    /// `{i in w : i <= j}` for `j in w`.
    pub fn project(self, j: u32) -> Result<BracketPattern> {
        if !self.contains(j) {
            return Err(Error::ProjectionNotInPattern(j));
        }
        let keep = if j == 63 { u64::MAX } else { (1u64 << (j + 1)) - 1 };
        Ok(BracketPattern(self.0 & keep))
    }

    pub fn dual(self) -> BracketPattern {
        let f = self.frame();
        let mut mask = 0;
        for i in 0..f {
            if self.0 >> i & 1 == 0 {
                mask |= 1 << (f - i);
            }
        }
        BracketPattern(mask)
    }

    /// `A(w) = {j - i : j in w, i not in w, 0 <= i < j}`.
    pub fn completion(self) -> BracketPattern {
        let mut mask = 0;
        for j in self.elements() {
            for i in 0..j {
                if self.0 >> i & 1 == 0 {
                    mask |= 1 << (j - i);
                }
            }
        }
        BracketPattern(mask)
    }

    pub fn intersection(self, v: BracketPattern) -> Option<BracketPattern> {
        BracketPattern::from_mask(self.0 & v.0).ok()
    }

    pub fn is_subset(self, v: BracketPattern) -> bool {
        self.0 & !v.0 == 0
    }

    pub fn to_set(self) -> BTreeSet<u32> {
        self.elements().collect()
    }
}

/// Every pattern with frame at most `frame_bound`, in mask order.
pub fn all_patterns(frame_bound: u32) -> impl Iterator<Item = BracketPattern> {
    let top = 1u64 << (frame_bound.min(MAX_FRAME - 1) + 1);
    (1..top / 2).map(|m| BracketPattern(m << 1))
}

impl fmt::Display for BracketPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for BracketPattern {
    type Err = Error;

    /// Accepts `{1,2,5}` or `1,2,5`.
    fn from_str(s: &str) -> Result<BracketPattern> {
        let t = s.trim();
        let t = t.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(t);
        let mut out = Vec::new();
        for item in t.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let v = item
                .parse::<u64>()
                .map_err(|_| Error::InvalidParam(format!("bad pattern element '{}'", item)))?;
            if v == 0 || v > MAX_FRAME as u64 {
                return Err(Error::PatternElementOutOfRange(v));
            }
            out.push(v as u32);
        }
        BracketPattern::new(out)
    }
}

/// Shows a set of integers as `{a,b,c}`.
pub fn format_set<'a>(s: impl IntoIterator<Item = &'a u32>) -> String {
    let items: Vec<String> = s.into_iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// A set of bracket patterns, typically closed under superposition,
/// projections and duals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternCategory {
    pub patterns: BTreeSet<BracketPattern>,
}

impl PatternCategory {
    pub fn new(patterns: impl IntoIterator<Item = BracketPattern>) -> PatternCategory {
        PatternCategory { patterns: patterns.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, w: BracketPattern) -> bool {
        self.patterns.contains(&w)
    }

    /// Union of completions, as a set of integers.
    pub fn union_completion(&self) -> BTreeSet<u32> {
        let mask = self.patterns.iter().fold(0, |m, w| m | w.completion().mask());
        (1..=MAX_FRAME).filter(|&i| mask >> i & 1 == 1).collect()
    }

    /// Checks closure under the three operations; on failure names the first
    /// missing result.
    pub fn check_closed(&self) -> std::result::Result<(), String> {
        let set: HashSet<u64> = self.patterns.iter().map(|w| w.mask()).collect();
        let missing = |w: BracketPattern, how: String| Err(format!("{} = {} missing", how, w));
        for &w in &self.patterns {
            let d = w.dual();
            if !set.contains(&d.mask()) {
                return missing(d, format!("dual of {}", w));
            }
            for j in w.elements() {
                let q = w.project(j).expect("element");
                if !set.contains(&q.mask()) {
                    return missing(q, format!("projection of {} at {}", w, j));
                }
            }
        }
        let v: Vec<u64> = set.iter().copied().collect();
        for (i, &a) in v.iter().enumerate() {
            for &b in &v[i + 1..] {
                if !set.contains(&(a | b)) {
                    return missing(
                        BracketPattern(a | b),
                        format!("superposition of {} and {}", BracketPattern(a), BracketPattern(b)),
                    );
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PatternCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.patterns.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// Least pattern category containing `gens`.
pub fn pattern_closure(gens: impl IntoIterator<Item = BracketPattern>) -> PatternCategory {
    let mut seen: HashSet<u64> = HashSet::new();
    let mut all: Vec<u64> = Vec::new();
    let mut work: Vec<u64> = Vec::new();
    let push = |m: u64, seen: &mut HashSet<u64>, work: &mut Vec<u64>| {
        if seen.insert(m) {
            work.push(m);
        }
    };
    for g in gens {
        push(g.mask(), &mut seen, &mut work);
    }
    while let Some(m) = work.pop() {
        let w = BracketPattern(m);
        push(w.dual().mask(), &mut seen, &mut work);
        for j in w.elements() {
            push(w.project(j).expect("element").mask(), &mut seen, &mut work);
        }
        for &o in &all {
            push(o | m, &mut seen, &mut work);
        }
        all.push(m);
    }
    PatternCategory::new(all.into_iter().map(BracketPattern))
}

/// `{w' : frame(w') <= frame(w), A(w') subset of A(w)}` by direct filtering.
pub fn generated_category_characterization(w: BracketPattern) -> PatternCategory {
    let a = w.completion();
    PatternCategory::new(all_patterns(w.frame()).filter(|v| v.completion().is_subset(a)))
}

/// A submonoid of (N_0, +).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidSpec(SemigroupSpec);

impl MonoidSpec {
    pub fn new(generators: impl IntoIterator<Item = u32>) -> Result<MonoidSpec> {
        Ok(MonoidSpec(SemigroupSpec::new(generators, true)?))
    }

    pub fn spec(&self) -> &SemigroupSpec {
        &self.0
    }

    pub fn member(&self, n: u32) -> bool {
        self.0.member(n)
    }
}

/// Patterns of frame at most `frame_bound` whose completion avoids `m`.
pub fn category_of_monoid(m: &MonoidSpec, frame_bound: u32) -> PatternCategory {
    let table = m.0.members_up_to(frame_bound);
    PatternCategory::new(
        all_patterns(frame_bound).filter(|w| w.completion().elements().all(|i| !table[i as usize])),
    )
}

/// A submonoid given by its finite gap set: every other non-negative integer
/// is a member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDescription {
    pub gaps: BTreeSet<u32>,
}

impl MonoidDescription {
    pub fn member(&self, n: u32) -> bool {
        !self.gaps.contains(&n)
    }

    pub fn frobenius(&self) -> Option<u32> {
        self.gaps.iter().next_back().copied()
    }

    /// Whether sums of two members up to `bound` stay members.
    pub fn is_additively_closed_up_to(&self, bound: u32) -> bool {
        (0..=bound).filter(|&a| self.member(a)).all(|a| {
            (a..=bound - a.min(bound)).filter(|&b| self.member(b)).all(|b| self.member(a + b))
        })
    }

    /// Minimal generating set: members that are not sums of two non-zero
    /// members.
    pub fn minimal_generators(&self) -> BTreeSet<u32> {
        let f = self.frobenius().unwrap_or(0);
        let multiplicity = (1..).find(|&n| self.member(n)).unwrap();
        let limit = f + multiplicity;
        let mut out = BTreeSet::new();
        for n in 1..=limit {
            if !self.member(n) {
                continue;
            }
            let decomposes = (1..n).any(|a| self.member(a) && self.member(n - a));
            if !decomposes {
                out.insert(n);
            }
        }
        out
    }

    /// Agreement with `m` on `0..=bound`.
    pub fn agrees_with(&self, m: &MonoidSpec, bound: u32) -> bool {
        let table = m.0.members_up_to(bound);
        (0..=bound).all(|n| self.member(n) == table[n as usize])
    }
}

impl fmt::Display for MonoidDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N0 minus {}", format_set(&self.gaps))
    }
}

/// `N_0` minus the union of completions over `cat`.
pub fn infer_monoid(cat: &PatternCategory) -> Result<MonoidDescription> {
    cat.check_closed().map_err(Error::NotClosed)?;
    let desc = MonoidDescription { gaps: cat.union_completion() };
    let f = desc.frobenius().unwrap_or(0);
    if !desc.is_additively_closed_up_to(2 * f + 1) {
        return Err(Error::NotClosed(format!("{} is not additively closed", desc)));
    }
    Ok(desc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroupData {
    pub gap_set: BTreeSet<u32>,
    pub genus: usize,
    pub frobenius: u32,
    /// Whether `N_0 \ gap_set` was confirmed additively closed.
    pub verified: bool,
}

pub fn numerical_semigroup_data(w: BracketPattern) -> NumericalSemigroupData {
    let a = w.completion();
    let desc = MonoidDescription { gaps: a.to_set() };
    NumericalSemigroupData {
        genus: a.len(),
        frobenius: w.frame(),
        verified: desc.is_additively_closed_up_to(2 * w.frame() + 1),
        gap_set: desc.gaps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BracketPattern {
        s.parse().unwrap()
    }

    #[test]
    fn operations() {
        assert_eq!(w("{1}").superpose(w("{2,3}")), w("{1,2,3}"));
        assert_eq!(w("{1,2}").superpose(w("{4}")), w("{1,2,4}"));
        assert_eq!(w("{1,2,4}").project(2).unwrap(), w("{1,2}"));
        assert_eq!(w("{1,2,4}").project(4).unwrap(), w("{1,2,4}"));
        assert!(matches!(w("{1,2,4}").project(3), Err(Error::ProjectionNotInPattern(3))));
        assert_eq!(w("{1,2,4}").dual(), w("{1,4}"));
        assert_eq!(w("{1}").dual(), w("{1}"));
        assert_eq!(w("{4}").completion(), w("{1,2,3,4}"));
        assert_eq!(w("{1,2,4}").completion(), w("{1,2,4}"));
        assert_eq!(w("{1,2,5}").to_string(), "{1,2,5}");
        assert_eq!(w("1,2,5").frame(), 5);
        assert!(matches!("{}".parse::<BracketPattern>(), Err(Error::EmptyPattern)));
        assert!("{0,1}".parse::<BracketPattern>().is_err());
        assert_eq!(all_patterns(3).count(), 7);
    }

    #[test]
    fn closures() {
        assert!(pattern_closure([]).is_empty());
        let c = pattern_closure([w("{2}")]);
        assert_eq!(c, PatternCategory::new([w("{1}"), w("{2}"), w("{1,2}")]));
        assert_eq!(generated_category_characterization(w("{2}")), c);
        assert_eq!(generated_category_characterization(w("{1}")), PatternCategory::new([w("{1}")]));
        assert!(c.check_closed().is_ok());
        assert!(PatternCategory::new([w("{2}")]).check_closed().is_err());
    }

    #[test]
    fn monoids() {
        let n0 = MonoidSpec::new([1]).unwrap();
        assert!(category_of_monoid(&n0, 6).is_empty());
        let m = MonoidSpec::new([3, 4, 5]).unwrap();
        let c = category_of_monoid(&m, 2);
        assert_eq!(c, PatternCategory::new([w("{1}"), w("{2}"), w("{1,2}")]));
        // finite complement {1,2}
        assert_eq!(category_of_monoid(&m, 2), pattern_closure([w("{1,2}")]));
        let d = infer_monoid(&PatternCategory::default()).unwrap();
        assert!(d.gaps.is_empty());
        assert_eq!(d.minimal_generators(), [1].into_iter().collect());
        let d = infer_monoid(&c).unwrap();
        assert_eq!(d.gaps, [1, 2].into_iter().collect());
        assert_eq!(d.minimal_generators(), [3, 4, 5].into_iter().collect());
        assert!(d.agrees_with(&m, 30));
        assert!(matches!(infer_monoid(&PatternCategory::new([w("{2}")])), Err(Error::NotClosed(_))));
    }

    #[test]
    fn semigroup_data() {
        let d = numerical_semigroup_data(w("{4}"));
        assert_eq!((d.gap_set, d.genus, d.frobenius, d.verified), ([1, 2, 3, 4].into_iter().collect(), 4, 4, true));
        let d = numerical_semigroup_data(w("{1,2,4}"));
        assert_eq!((d.gap_set, d.genus, d.frobenius), ([1, 2, 4].into_iter().collect(), 3, 4));
    }
}
