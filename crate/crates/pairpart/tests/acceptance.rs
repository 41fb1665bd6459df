//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Each criterion runs the library suite and cross-checks it against a
//! test-side oracle that works from the text form only, or against values
//! frozen from an independent computation.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pairpart::brackets::build_bracket_from_pattern;
use pairpart::closure::{generate, ClosureConfig};
use pairpart::metrics::{crossing_distances, in_i_d, in_s_w, SemigroupSpec};
use pairpart::patterns::{category_of_monoid, infer_monoid, pattern_closure, MonoidSpec};
use pairpart::suites::{generators_of_i_d, FIGURE};
use pairpart::{enumerate_p2nb, verify_suite, BracketPattern, Color, Partition, Report, SuiteParams};

/// A partition read straight from its serialization: normalized signs along
/// the orientation (white +1) and blocks as position pairs.
struct Oracle {
    signs: Vec<i32>,
    blocks: Vec<(usize, usize)>,
}

impl Oracle {
    fn new(text: &str) -> Oracle {
        let row = |tag: &str| {
            let start = text.find(tag).unwrap() + tag.len();
            let end = start + text[start..].find(']').unwrap();
            text[start..end].chars().map(|c| if c == 'w' { 1 } else { -1 }).collect::<Vec<i32>>()
        };
        let (up, low) = (row("U["), row("L["));
        let (ku, kl) = (up.len(), low.len());
        let mut signs = low.clone();
        signs.extend(up.iter().rev().map(|s| -s));
        let pos = |t: &str| {
            let i: usize = t[1..].parse().unwrap();
            if t.starts_with('l') {
                i - 1
            } else {
                kl + ku - i
            }
        };
        let body = &text[text.find('{').unwrap() + 1..text.len() - 1];
        let blocks = body
            .split(';')
            .filter(|b| !b.is_empty())
            .map(|b| {
                let (x, y) = b.split_once(',').unwrap();
                let (x, y) = (pos(x), pos(y));
                (x.min(y), x.max(y))
            })
            .collect();
        Oracle { signs, blocks }
    }

    fn of(p: &Partition) -> Oracle {
        Oracle::new(&p.serialize())
    }

    fn open_sum(&self, a: usize, b: usize) -> i32 {
        let n = self.signs.len();
        let mut s = 0;
        let mut i = (a + 1) % n;
        while i != b {
            s += self.signs[i];
            i = (i + 1) % n;
        }
        s
    }

    fn delta(&self, a: usize, b: usize) -> i32 {
        if a == b {
            return 0;
        }
        let extra = if self.signs[a] == self.signs[b] { self.signs[b] } else { 0 };
        self.open_sum(a, b) + extra
    }

    fn crosses(&self, i: usize, j: usize) -> bool {
        let ((a, b), (c, d)) = (self.blocks[i], self.blocks[j]);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }

    fn neutral_pairs(&self) -> bool {
        self.blocks.iter().all(|&(a, b)| self.signs[a] + self.signs[b] == 0)
    }

    fn s0(&self) -> bool {
        self.neutral_pairs() && self.blocks.iter().all(|&(a, b)| self.open_sum(a, b) == 0)
    }

    fn s_w(&self, w: i32) -> bool {
        self.neutral_pairs()
            && self.blocks.iter().all(|&(a, b)| {
                let s = self.open_sum(a, b);
                if w == 0 {
                    s == 0
                } else {
                    s % w == 0
                }
            })
    }

    fn range(&self) -> Option<BTreeSet<u32>> {
        if !self.s0() {
            return None;
        }
        let mut out = BTreeSet::new();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                if self.crosses(i, j) {
                    out.insert(self.delta(self.blocks[i].0, self.blocks[j].0).unsigned_abs());
                }
            }
        }
        Some(out)
    }

    /// Stack walk along the orientation.
    fn noncrossing(&self) -> bool {
        let mut owner = vec![usize::MAX; self.signs.len()];
        for (i, &(a, b)) in self.blocks.iter().enumerate() {
            owner[a] = i;
            owner[b] = i;
        }
        let mut stack: Vec<usize> = Vec::new();
        let mut open = vec![false; self.blocks.len()];
        for &o in &owner {
            if open[o] {
                if stack.pop() != Some(o) {
                    return false;
                }
            } else {
                open[o] = true;
                stack.push(o);
            }
        }
        true
    }
}

fn p2nb(max: usize) -> Vec<Partition> {
    (0..=max).step_by(2).flat_map(enumerate_p2nb).collect()
}

fn pattern(xs: &[u32]) -> BracketPattern {
    BracketPattern::new(xs.iter().copied()).unwrap()
}

fn spec(gens: &[u32], zero: bool) -> SemigroupSpec {
    SemigroupSpec::new(gens.iter().copied(), zero).unwrap()
}

fn run(name: &str, params: SuiteParams) -> Report {
    verify_suite(name, &params).unwrap()
}

fn with_points(max: usize) -> SuiteParams {
    SuiteParams { max_points: Some(max), ..Default::default() }
}

fn with_frame(frame: u32) -> SuiteParams {
    SuiteParams { frame: Some(frame), ..Default::default() }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(report: &Report, extra: &[(bool, &str)]) -> Outcome {
    let mut failures: Vec<String> = report.counterexamples.clone();
    if !report.passed && failures.is_empty() {
        failures.push(format!("suite {} failed", report.suite));
    }
    failures.extend(extra.iter().filter(|(ok, _)| !ok).map(|(_, what)| what.to_string()));
    let detail = if failures.is_empty() {
        format!("checked {}", report.checked)
    } else {
        failures.join("; ")
    };
    Outcome { ok: failures.is_empty(), detail }
}

fn note<'a>(report: &'a Report, key: &str) -> &'a str {
    report.notes.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str()).unwrap_or("")
}

fn c1_pseudo_metric() -> Outcome {
    let report = run("pseudo-metric", with_points(8));
    let mut agree = true;
    for p in p2nb(8) {
        let o = Oracle::of(&p);
        let n = o.signs.len();
        let d: Vec<Vec<i32>> = (0..n).map(|a| (0..n).map(|b| o.delta(a, b)).collect()).collect();
        agree &= pairpart::metrics::distance_matrix(&p).unwrap() == d;
        for a in 0..n {
            agree &= d[a][a] == 0;
            for b in 0..n {
                agree &= d[a][b] == -d[b][a];
                for c in 0..n {
                    agree &= d[a][c] == d[a][b] + d[b][c] && d[a][c].abs() <= d[a][b].abs() + d[b][c].abs();
                }
            }
        }
    }
    outcome(&report, &[(agree, "oracle distances disagree or violate the axioms")])
}

fn c2_representative_independence() -> Outcome {
    let report = run("representative-independence", with_points(8));
    let mut ok = true;
    let mut s0 = 0;
    for p in p2nb(8) {
        let o = Oracle::of(&p);
        if !o.s0() {
            continue;
        }
        s0 += 1;
        for &(a, b) in &o.blocks {
            for &(c, d) in &o.blocks {
                let v = o.delta(a, c);
                ok &= [o.delta(a, d), o.delta(b, c), o.delta(b, d)].iter().all(|&x| x == v);
            }
        }
    }
    outcome(&report, &[(ok, "oracle representatives disagree"), (s0 == 2717, "S_0 count at 8 points is not 2717")])
}

fn c3_a_under_ops() -> Outcome {
    let report = run("A-under-ops", with_points(6));
    let s0: Vec<Partition> = p2nb(6).into_iter().filter(|p| Oracle::of(p).s0()).collect();
    let mut ok = true;
    for p in &s0 {
        let ap = Oracle::of(p).range().unwrap();
        ok &= crossing_distances(p).unwrap() == ap;
        ok &= Oracle::of(&p.involution()).range() == Some(ap.clone());
        for q in s0.iter().step_by(7) {
            let aq = Oracle::of(q).range().unwrap();
            let union: BTreeSet<u32> = ap.union(&aq).copied().collect();
            ok &= Oracle::of(&p.tensor(q)).range() == Some(union.clone());
            if let Ok((c, _)) = p.compose(q) {
                ok &= Oracle::of(&c).range().is_some_and(|ac| ac.is_subset(&union));
            }
        }
    }
    outcome(&report, &[(ok, "oracle ranges disagree"), (s0.len() == 341, "S_0 count at 6 points is not 341")])
}

fn c4_figure() -> Outcome {
    let report = run("figure", SuiteParams::default());
    let fig = Partition::parse(FIGURE).unwrap();
    let o = Oracle::new(FIGURE);
    let a = crossing_distances(&fig).unwrap();
    let d = spec(&[3, 4, 5], true);
    outcome(
        &report,
        &[
            (a == BTreeSet::from([1, 2]), "A(figure) is not {1,2}"),
            (o.range() == Some(BTreeSet::from([1, 2])), "oracle A(figure) is not {1,2}"),
            (in_i_d(&fig, &d), "figure outside I_D"),
            (o.delta(5, 2) == 2, "oracle distance l6 to l3 is not 2"),
        ],
    )
}

fn completion_oracle(w: &BTreeSet<u32>) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for &j in w {
        for i in 0..j {
            if !w.contains(&i) {
                out.insert(j - i);
            }
        }
    }
    out
}

fn c5_pattern_algebra() -> Outcome {
    let report = run("pattern-algebra", with_frame(10));
    let mut ok = true;
    for mask in 1u64..1 << 11 {
        let w = BracketPattern::from_mask(mask << 1).unwrap();
        ok &= w.completion().to_set() == completion_oracle(&w.to_set());
    }
    outcome(
        &report,
        &[
            (pattern(&[4]).completion() == pattern(&[1, 2, 3, 4]), "completion of {4}"),
            (pattern(&[1, 2, 4]).completion() == pattern(&[1, 2, 4]), "completion of {1,2,4}"),
            (ok, "oracle completion disagrees"),
        ],
    )
}

/// Naive closure on sets of element sets.
fn closure_oracle(w: &BTreeSet<u32>) -> BTreeSet<BTreeSet<u32>> {
    let mut cat: BTreeSet<BTreeSet<u32>> = BTreeSet::from([w.clone()]);
    loop {
        let mut next = cat.clone();
        for v in &cat {
            let f = *v.iter().max().unwrap();
            next.insert((0..f).filter(|i| !v.contains(i)).map(|i| f - i).collect());
            for &j in v {
                next.insert(v.iter().copied().filter(|&i| i <= j).collect());
            }
            for u in &cat {
                next.insert(v.union(u).copied().collect());
            }
        }
        if next == cat {
            return cat;
        }
        cat = next;
    }
}

fn c6_pattern_characterization() -> Outcome {
    let report = run("pattern-characterization", with_frame(8));
    let mut ok = true;
    for mask in 1u64..1 << 6 {
        let w = BracketPattern::from_mask(mask << 1).unwrap();
        let lib: BTreeSet<BTreeSet<u32>> = pattern_closure([w]).patterns.iter().map(|v| v.to_set()).collect();
        ok &= lib == closure_oracle(&w.to_set());
    }
    outcome(&report, &[(ok, "oracle closure disagrees")])
}

fn c7_submonoid() -> Outcome {
    let report = run("submonoid-correspondence", with_frame(12));
    let gaps = |g: &[u32]| infer_monoid(&category_of_monoid(&MonoidSpec::new(g.iter().copied()).unwrap(), 12)).unwrap().gaps;
    outcome(
        &report,
        &[
            (gaps(&[3, 5]) == BTreeSet::from([1, 2, 4, 7]), "gaps of <3,5>"),
            (gaps(&[2, 3]) == BTreeSet::from([1]), "gaps of <2,3>"),
            (gaps(&[3, 4, 5]) == BTreeSet::from([1, 2]), "gaps of <3,4,5>"),
            (gaps(&[2]) == (1..12).step_by(2).collect(), "gaps of <2>"),
            (gaps(&[]) == (1..=12).collect(), "gaps of {0}"),
        ],
    )
}

fn c8_bracket_identities() -> Outcome {
    let report = run("bracket-identities", with_frame(5));
    let br1 = build_bracket_from_pattern(Color::Black, pattern(&[1]));
    let mut ok = true;
    for mask in 1u64..1 << 8 {
        let w = BracketPattern::from_mask(mask << 1).unwrap();
        let b = build_bracket_from_pattern(Color::Black, w);
        ok &= Oracle::of(&b).range() == Some(completion_oracle(&w.to_set()));
    }
    outcome(
        &report,
        &[
            (br1.serialize() == "U[bbww] L[bbww] B{l1,l4;l2,u2;l3,u3;u1,u4}", "Br_•({1}) text"),
            (ok, "oracle range of brackets disagrees"),
        ],
    )
}

fn semigroups() -> Vec<SemigroupSpec> {
    vec![spec(&[2, 3], true), spec(&[3, 4, 5], true), spec(&[1], false), spec(&[3], true)]
}

/// Complement of D in N_0 up to `n`, by direct sums.
fn allowed(d: &SemigroupSpec, n: u32) -> BTreeSet<u32> {
    let mut reach = BTreeSet::new();
    if d.contains_zero {
        reach.insert(0);
    }
    let mut frontier: Vec<u32> = d.generators.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        if x <= n && reach.insert(x) {
            frontier.extend(d.generators.iter().map(|g| x + g));
        }
    }
    (0..=n).filter(|x| !reach.contains(x)).collect()
}

fn c9_soundness() -> Outcome {
    let report = run("main-thm-1-soundness", SuiteParams { max_points: Some(10), intermediate: Some(14), ..Default::default() });
    let mut ok = true;
    for d in semigroups() {
        let ok_set = allowed(&d, 40);
        let cs = generate(&generators_of_i_d(&d, 14), &ClosureConfig::new(10, 14)).unwrap();
        for ring in cs.all_classes() {
            ok &= Oracle::of(&ring.representative()).range().is_some_and(|a| a.is_subset(&ok_set));
        }
    }
    outcome(&report, &[(ok, "oracle finds a generated class outside I_D")])
}

fn c10_completeness() -> Outcome {
    let report = run(
        "main-thm-1-completeness",
        SuiteParams { max_points: Some(8), intermediate: Some(12), ceiling: Some(16), ..Default::default() },
    );
    let all = p2nb(8);
    let counts: Vec<usize> = semigroups()
        .iter()
        .map(|d| {
            let ok_set = allowed(d, 40);
            all.iter().filter(|p| Oracle::of(p).range().is_some_and(|a| a.is_subset(&ok_set))).count()
        })
        .collect();
    let key = |d: &SemigroupSpec| format!("{}.predicate_members", d);
    let reported: Vec<usize> = semigroups().iter().map(|d| note(&report, &key(d)).parse().unwrap_or(0)).collect();
    outcome(
        &report,
        &[
            (counts == [2379, 2379, 2681, 2379], "oracle predicate counts differ from frozen values"),
            (reported == counts, "suite predicate counts differ from oracle"),
        ],
    )
}

fn c11_nc_base() -> Outcome {
    let report = run("nc-base", SuiteParams { max_points: Some(8), intermediate: Some(12), ..Default::default() });
    let nc = p2nb(8).iter().filter(|p| Oracle::of(p).noncrossing()).count();
    outcome(
        &report,
        &[
            (nc == 2343, "oracle non-crossing count is not 2343"),
            (note(&report, "members") == nc.to_string(), "closure size differs from oracle count"),
        ],
    )
}

fn c12_s_family() -> Outcome {
    let report = run("s-family-order", with_points(8));
    let mut ok = true;
    for p in p2nb(8) {
        let o = Oracle::of(&p);
        for w in 0..=6 {
            ok &= o.s_w(w as i32) == in_s_w(&p, w);
        }
    }
    outcome(&report, &[(ok, "oracle S_w membership disagrees")])
}

fn c13_distinctness() -> Outcome {
    let report = run("distinctness", SuiteParams::default());
    let witness = note(&report, "witness");
    let a = Partition::parse(witness).ok().and_then(|p| Oracle::of(&p).range());
    let separates = a.is_some_and(|a| a.contains(&2) && a.is_subset(&BTreeSet::from([1, 2])));
    outcome(&report, &[(separates, "oracle does not confirm the witness")])
}

fn c14_non_finite_generation() -> Outcome {
    let report = run("non-finite-generation", with_frame(5));
    let unions: Vec<&str> = (2..=5).map(|b| note(&report, &format!("union_A.frame{}", b))).collect();
    outcome(&report, &[(unions == ["{1,2}", "{1,2,3}", "{1,2,3,4}", "{1,2,3,4,5}"], "unions differ from frozen values")])
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("pseudo-metric", c1_pseudo_metric, 60),
        ("representative-independence", c2_representative_independence, 60),
        ("A-under-operations", c3_a_under_ops, 300),
        ("figure-reproduction", c4_figure, 1),
        ("pattern-algebra", c5_pattern_algebra, 30),
        ("pattern-characterization", c6_pattern_characterization, 120),
        ("submonoid-correspondence", c7_submonoid, 60),
        ("bracket-identities", c8_bracket_identities, 120),
        ("generators-within-predicate", c9_soundness, 600),
        ("predicate-within-generators", c10_completeness, 1200),
        ("noncrossing-base", c11_nc_base, 300),
        ("s-family-ordering", c12_s_family, 120),
        ("distinctness-witness", c13_distinctness, 60),
        ("non-finite-generation", c14_non_finite_generation, 300),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = f();
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(*limit) {
            o.ok = false;
            o.detail = format!("{}; over the {} s budget", o.detail, limit);
        }
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {:<28} {} ({} ms, {})", i + 1, name, status, elapsed.as_millis(), o.detail);
        failed += !o.ok as usize;
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
