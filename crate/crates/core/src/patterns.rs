//! Consecutive-factor patterns over `{u, h, d}`, avoidance, and the
//! exhaustive census that serves as the brute-force oracle.
//!
//! An occurrence of `σ` in a tree is a vertex `v` at depth `>= |σ|` whose
//! last `|σ|` root-path edges spell `σ`. Each downward run is counted once,
//! however many root-to-leaf paths pass through it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::thread;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combinat::BigCount;
use crate::error::{Error, Result};
use crate::trees::{
    enumerate_gnc, enumerate_gnc_star, EdgeClass, GncEnumeration, GncTree, Limits, NcTree, PathWord,
    StatTriple, MAX_POINTS,
};

/// Nonempty word over `{u, h, d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<EdgeClass>);

impl Pattern {
    pub fn new(letters: Vec<EdgeClass>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        Ok(Pattern(letters))
    }

    pub fn letters(&self) -> &[EdgeClass] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let word: PathWord = s.trim().parse()?;
        Pattern::new(word.0)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", c.letter()))
    }
}

/// A set of patterns, kept sorted and deduplicated. Parses from a
/// comma-separated list such as `"uu,dd,h"`; the empty string is the empty
/// set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet(Vec<Pattern>);

impl PatternSet {
    pub fn new(mut patterns: Vec<Pattern>) -> Self {
        patterns.sort();
        patterns.dedup();
        PatternSet(patterns)
    }

    pub fn empty() -> Self {
        PatternSet(Vec::new())
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.0.iter().any(|p| p.to_string() == word)
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Pattern>>>()?;
        Ok(PatternSet::new(parts))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// True iff `pattern` occurs as a consecutive factor of `word`.
pub fn word_contains(word: &PathWord, pattern: &Pattern) -> bool {
    word.0.windows(pattern.len()).any(|w| w == pattern.letters())
}

/// Patterns packed into two-bit codes, matched against a rolling window of
/// the last edge classes on each root path.
#[derive(Clone, Debug)]
pub(crate) struct Matcher {
    /// `(code, length)`; patterns longer than any root path are dropped.
    packed: Vec<(u64, usize)>,
}

impl Matcher {
    pub(crate) fn new(patterns: &[Pattern]) -> Self {
        let packed = patterns
            .iter()
            .filter(|p| p.len() < MAX_POINTS)
            .map(|p| (p.letters().iter().fold(0u64, |acc, c| acc << 2 | c.code()), p.len()))
            .collect();
        Matcher { packed }
    }

    fn hit(&self, window: u64, depth: usize) -> Option<usize> {
        self.packed
            .iter()
            .position(|&(code, len)| depth >= len && window & ((1u64 << (2 * len)) - 1) == code)
    }
}

/// Per-tree scan: statistics, and per-pattern occurrence counts.
pub(crate) struct Scan {
    pub stats: StatTriple,
    pub hits: Vec<usize>,
}

/// Walks `base` in preorder under jump mask `mask`, classifying edges and
/// counting pattern occurrences. Stops early once any pattern is seen if
/// `stop_on_hit` is set.
pub(crate) fn scan(base: &NcTree, mask: u32, matcher: &Matcher, stop_on_hit: bool) -> Scan {
    let points = base.points();
    let mut labels = [0u32; MAX_POINTS];
    let mut label = 1;
    for (k, slot) in labels.iter_mut().enumerate().take(points) {
        if k > 0 && mask >> k & 1 == 1 {
            label += 1;
        }
        *slot = label;
    }
    let mut window = [0u64; MAX_POINTS];
    let mut stats = StatTriple::default();
    let mut hits = vec![0; matcher.packed.len()];
    for &v in base.preorder().iter().skip(1) {
        let p = base.parent(v).expect("non-root vertex has a parent");
        let class = EdgeClass::from_labels(labels[p], labels[v]);
        stats.bump(class);
        window[v] = window[p] << 2 | class.code();
        if let Some(i) = matcher.hit(window[v], base.depth(v)) {
            hits[i] += 1;
            if stop_on_hit {
                break;
            }
            // a vertex can end runs of several patterns
            for (j, &(code, len)) in matcher.packed.iter().enumerate().skip(i + 1) {
                if base.depth(v) >= len && window[v] & ((1u64 << (2 * len)) - 1) == code {
                    hits[j] += 1;
                }
            }
        }
    }
    Scan { stats, hits }
}

/// Number of distinct downward runs spelling `pattern`.
pub fn count_occurrences(tree: &GncTree, pattern: &Pattern) -> BigCount {
    let matcher = Matcher::new(std::slice::from_ref(pattern));
    let s = scan(tree.base(), tree.jumps().mask(), &matcher, false);
    BigInt::from(s.hits.first().copied().unwrap_or(0))
}

/// True iff no pattern of `set` occurs in `tree`.
pub fn avoids(tree: &GncTree, set: &PatternSet) -> bool {
    let matcher = Matcher::new(set.patterns());
    scan(tree.base(), tree.jumps().mask(), &matcher, true)
        .hits
        .iter()
        .all(|&h| h == 0)
}

/// Joint distribution of `(u, h, d)` over a class of trees with `n` edges.
/// Keyed by `(u, d)`; `h = n - u - d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatCensus {
    n: usize,
    table: BTreeMap<(usize, usize), BigCount>,
}

impl StatCensus {
    pub fn new(n: usize) -> Self {
        StatCensus {
            n,
            table: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, stats: StatTriple, count: impl Into<BigCount>) {
        debug_assert_eq!(stats.total(), self.n);
        let slot = self.table.entry((stats.u, stats.d)).or_insert_with(BigInt::zero);
        *slot += count.into();
    }

    pub fn get(&self, u: usize, h: usize, d: usize) -> BigCount {
        if u + h + d != self.n {
            return BigInt::zero();
        }
        self.table.get(&(u, d)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigCount {
        self.table.values().sum()
    }

    /// Nonzero rows sorted lexicographically by `(u, h, d)`.
    pub fn rows(&self) -> Vec<(StatTriple, BigCount)> {
        let mut rows: Vec<_> = self
            .table
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(u, d), c)| {
                (
                    StatTriple {
                        u,
                        h: self.n - u - d,
                        d,
                    },
                    c.clone(),
                )
            })
            .collect();
        rows.sort_by_key(|(s, _)| (s.u, s.h, s.d));
        rows
    }

    /// Associative, order-independent merge.
    pub fn merge(mut self, other: &StatCensus) -> Self {
        assert_eq!(self.n, other.n, "merging censuses of different sizes");
        for (k, v) in &other.table {
            *self.table.entry(*k).or_insert_with(BigInt::zero) += v;
        }
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,h,d,count\n");
        for (s, c) in self.rows() {
            out.push_str(&format!("{},{},{},{}\n", s.u, s.h, s.d, c));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows()
            .into_iter()
            .map(|(s, c)| serde_json::json!({"u": s.u, "h": s.h, "d": s.d, "count": c.to_string()}))
            .collect();
        serde_json::json!({"n": self.n, "total": self.total().to_string(), "rows": rows})
    }
}

/// Census of one shard of an enumeration.
pub fn census_shard(all: &GncEnumeration, set: &PatternSet, index: usize, count: usize) -> StatCensus {
    let matcher = Matcher::new(set.patterns());
    let width = MAX_POINTS;
    let mut tally = vec![0u64; width * width];
    for (base, mask) in all.shard_raw(index, count) {
        let s = scan(base, mask, &matcher, true);
        if s.hits.iter().all(|&h| h == 0) {
            tally[s.stats.u * width + s.stats.d] += 1;
        }
    }
    let mut census = StatCensus::new(all.n());
    for (k, &c) in tally.iter().enumerate() {
        if c > 0 {
            let (u, d) = (k / width, k % width);
            census.add(
                StatTriple {
                    u,
                    h: all.n() - u - d,
                    d,
                },
                c,
            );
        }
    }
    census
}

/// Joint `(u, h, d)` distribution over `GNC_n` (or `GNC*_n`) restricted to
/// trees avoiding every pattern of `set`.
pub fn census(n: usize, set: &PatternSet, star_only: bool, limits: &Limits) -> Result<StatCensus> {
    census_sharded(n, set, star_only, limits, 1)
}

/// As [`census`], split into `jobs` shards run on separate threads.
pub fn census_sharded(
    n: usize,
    set: &PatternSet,
    star_only: bool,
    limits: &Limits,
    jobs: usize,
) -> Result<StatCensus> {
    let all = if star_only {
        enumerate_gnc_star(n, limits)?
    } else {
        enumerate_gnc(n, limits)?
    };
    let jobs = jobs.max(1);
    let parts: Vec<StatCensus> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|i| {
                let all = &all;
                s.spawn(move || census_shard(all, set, i, jobs))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("census shard panicked")).collect()
    });
    Ok(parts
        .iter()
        .fold(StatCensus::new(n), |acc, part| acc.merge(part)))
}

/// Number of trees of `GNC_n` containing `pattern` exactly `m` times, for
/// every `m` that occurs.
pub fn occurrence_census(n: usize, pattern: &Pattern, limits: &Limits) -> Result<BTreeMap<usize, BigCount>> {
    let all = enumerate_gnc(n, limits)?;
    let matcher = Matcher::new(std::slice::from_ref(pattern));
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    for (base, mask) in all.shard_raw(0, 1) {
        let m = scan(base, mask, &matcher, false).hits.first().copied().unwrap_or(0);
        *tally.entry(m).or_default() += 1;
    }
    Ok(tally.into_iter().map(|(m, c)| (m, BigInt::from(c))).collect())
}

/// Signed sum `Σ (-1)^{u(T)}` over trees of `GNC_n` avoiding `set`.
pub fn signed_ascent_sum(n: usize, set: &PatternSet, limits: &Limits) -> Result<BigCount> {
    let c = census(n, set, false, limits)?;
    Ok(c.rows()
        .into_iter()
        .map(|(s, v)| if s.u % 2 == 0 { v } else { -v })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{gnc_total, little_schroeder, ternary};
    use crate::trees::{make_gnc, NcTree};

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn word(s: &str) -> PathWord {
        s.parse().unwrap()
    }

    fn sample_tree() -> GncTree {
        let base = NcTree::new(8, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (0, 6), (6, 7)]).unwrap();
        make_gnc(base, &[1, 4, 6, 7]).unwrap()
    }

    /// All words of length `k` over `{u, h, d}`.
    fn all_patterns(k: usize) -> Vec<Pattern> {
        let mut out = vec![String::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| ["u", "h", "d"].map(|c| format!("{w}{c}")))
                .collect();
        }
        out.iter().map(|w| pat(w)).collect()
    }

    #[test]
    fn parsing() {
        assert_eq!(set("uu,dd,h").to_string(), "uu,h,dd");
        assert!(set("").is_empty());
        assert!("".parse::<Pattern>().is_err());
        assert!("ux".parse::<Pattern>().is_err());
    }

    #[test]
    fn word_contains_examples() {
        assert!(!word_contains(&word("ud"), &pat("du")));
        assert!(word_contains(&word("uud"), &pat("ud")));
        assert!(!word_contains(&word(""), &pat("u")));
    }

    #[test]
    fn occurrences_in_sample_tree() {
        let sample = sample_tree();
        assert_eq!(count_occurrences(&sample, &pat("u")), BigInt::from(7));
        assert_eq!(count_occurrences(&sample, &pat("uu")), BigInt::from(3));
        assert_eq!(count_occurrences(&sample, &pat("uuu")), BigInt::from(0));
        assert!(avoids(&sample, &set("h,d")));
    }

    #[test]
    fn avoid_examples() {
        let edge = NcTree::new(2, &[(0, 1)]).unwrap();
        let flat = make_gnc(edge, &[]).unwrap();
        assert!(!avoids(&flat, &set("h")));
        assert!(avoids(&flat, &set("hh")));
    }

    /// Reference occurrence count straight from root-to-vertex words.
    fn occurrences_by_words(t: &GncTree, p: &Pattern) -> usize {
        (0..t.base().points())
            .filter(|&v| {
                let w = t.path_word(v);
                w.0.len() >= p.len() && w.0[w.0.len() - p.len()..] == *p.letters()
            })
            .count()
    }

    #[test]
    fn avoidance_agrees_with_occurrences() {
        let lim = Limits::default();
        let mut patterns = all_patterns(1);
        patterns.extend(all_patterns(2));
        for n in 0..=4 {
            for t in enumerate_gnc(n, &lim).unwrap().iter() {
                let words: Vec<PathWord> = (0..=n).map(|v| t.path_word(v)).collect();
                for p in &patterns {
                    let occ = count_occurrences(&t, p);
                    assert_eq!(occ, BigInt::from(occurrences_by_words(&t, p)));
                    let single = PatternSet::new(vec![p.clone()]);
                    assert_eq!(avoids(&t, &single), occ.is_zero());
                    assert_eq!(avoids(&t, &single), !words.iter().any(|w| word_contains(w, p)));
                }
            }
        }
    }

    #[test]
    fn census_examples() {
        let lim = Limits::default();
        let c = census(2, &PatternSet::empty(), false, &lim).unwrap();
        let rows: Vec<_> = c
            .rows()
            .into_iter()
            .map(|(s, v)| ((s.u, s.h, s.d), v.to_string()))
            .collect();
        assert_eq!(
            rows,
            vec![
                ((0, 2, 0), "3".to_string()),
                ((1, 0, 1), "2".to_string()),
                ((1, 1, 0), "4".to_string()),
                ((2, 0, 0), "3".to_string()),
            ]
        );
        assert_eq!(c.total(), BigInt::from(12));
        assert_eq!(census(2, &set("h,d"), false, &lim).unwrap().total(), BigInt::from(3));
        let star = census(1, &PatternSet::empty(), true, &lim).unwrap();
        assert_eq!(star.rows(), vec![(StatTriple { u: 1, h: 0, d: 0 }, BigInt::from(1))]);
    }

    #[test]
    fn u_avoiders_are_all_level() {
        let lim = Limits::default();
        for n in 0..=6 {
            let c = census(n, &set("u"), false, &lim).unwrap();
            assert_eq!(c.total(), ternary(n as u64));
            assert_eq!(c.rows().len(), 1);
            assert_eq!(c.rows()[0].0, StatTriple { u: 0, h: n, d: 0 });
        }
        for n in 0..=5 {
            for t in enumerate_gnc(n, &lim).unwrap().iter() {
                let all_level = t.stats().h == n;
                assert_eq!(avoids(&t, &set("u")), all_level);
            }
        }
    }

    #[test]
    fn increasing_trees_are_little_schroeder() {
        for n in 0..=6 {
            let c = census(n, &set("h,d"), false, &Limits::default()).unwrap();
            assert_eq!(c.total(), little_schroeder(n as u64));
        }
    }

    #[test]
    fn occurrence_census_examples() {
        let lim = Limits::default();
        let one = occurrence_census(1, &pat("u"), &lim).unwrap();
        assert_eq!(one, BTreeMap::from([(0, BigInt::from(1)), (1, BigInt::from(1))]));
        for n in 0..=5 {
            for p in ["u", "h", "uu", "ud", "dh"] {
                let oc = occurrence_census(n, &pat(p), &lim).unwrap();
                let sum: BigInt = oc.values().sum();
                assert_eq!(sum, gnc_total(n as u64));
                let avoiders = census(n, &set(p), false, &lim).unwrap().total();
                assert_eq!(oc.get(&0).cloned().unwrap_or_default(), avoiders);
            }
        }
        let three: BigInt = occurrence_census(3, &pat("hd"), &lim).unwrap().values().sum();
        assert_eq!(three, BigInt::from(96));
    }

    #[test]
    fn sharded_census_is_deterministic() {
        let lim = Limits::default();
        for (n, s) in [(5, ""), (5, "uu,dd,h"), (4, "du")] {
            let one = census_sharded(n, &set(s), false, &lim, 1).unwrap();
            for k in [2, 4, 8] {
                assert_eq!(census_sharded(n, &set(s), false, &lim, k).unwrap(), one);
            }
        }
    }
}
