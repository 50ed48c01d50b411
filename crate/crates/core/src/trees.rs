//! NC-trees, GNC-trees and their exhaustive generation.
//!
//! Points sit at positions `0..p` in counterclockwise order; position 0 is
//! the root. A GNC-tree is an NC-tree plus a [`JumpSet`]: gap `k` lies
//! between positions `k - 1` and `k`, and the label of position `k` is one
//! more than the number of jumps at gaps `<= k`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling on points per tree; jump sets are stored as a `u32` mask.
pub const MAX_POINTS: usize = 32;

/// Enumeration bounds. Every exhaustive generator checks its argument
/// against these before doing any work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Points accepted by [`enumerate_nc_trees`].
    pub max_points: usize,
    /// Edge count accepted by [`enumerate_gnc`] and the census.
    pub max_gnc_n: usize,
    /// Semilength accepted by the Schröder and Coker path generators.
    pub max_path_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 9,
            max_gnc_n: 7,
            max_path_n: 8,
        }
    }
}

impl Limits {
    pub fn check_gnc(&self, n: usize) -> Result<()> {
        check_bound("n", n, self.max_gnc_n.min(MAX_POINTS - 1))
    }

    pub fn check_points(&self, points: usize) -> Result<()> {
        check_bound("points", points, self.max_points.min(MAX_POINTS))
    }

    pub fn check_path(&self, n: usize) -> Result<()> {
        check_bound("path semilength", n, self.max_path_n)
    }
}

fn check_bound(what: &'static str, requested: usize, bound: usize) -> Result<()> {
    if requested > bound {
        Err(Error::BoundExceeded {
            what,
            requested,
            bound,
        })
    } else {
        Ok(())
    }
}

/// True iff the chords strictly interleave. Chords sharing an endpoint
/// never cross.
pub fn crossing(e1: (usize, usize), e2: (usize, usize)) -> bool {
    let (a, b) = normalize(e1);
    let (c, d) = normalize(e2);
    if a == c || a == d || b == c || b == d {
        return false;
    }
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn normalize((a, b): (usize, usize)) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A tree drawn on `points` circularly ordered points.
///
/// Rooting data (parent, depth, preorder) is derived from the edge list at
/// construction. Trees built with [`NcTree::from_edges_unchecked`] may be
/// invalid; run [`GncTree::validate`] before trusting them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcTree {
    points: usize,
    edges: Vec<(usize, usize)>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    preorder: Vec<usize>,
}

impl NcTree {
    /// Builds and validates a tree.
    pub fn new(points: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let tree = Self::from_edges_unchecked(points, edges);
        let report = structural_violations(&tree);
        if report.is_empty() {
            Ok(tree)
        } else {
            Err(Error::InvalidTree(ValidationReport(report).to_string()))
        }
    }

    /// Builds a tree without validation. Positions outside `0..points` are
    /// kept in the edge list but ignored when rooting.
    pub fn from_edges_unchecked(points: usize, edges: &[(usize, usize)]) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.iter().copied().map(normalize).collect();
        edges.sort_unstable();
        let mut adjacency = vec![Vec::new(); points];
        for &(a, b) in &edges {
            if a != b && b < points {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let mut parent = vec![None; points];
        let mut depth = vec![0; points];
        let mut seen = vec![false; points];
        let mut preorder = Vec::with_capacity(points);
        if points > 0 {
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                preorder.push(v);
                for &w in adjacency[v].iter().rev() {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        depth[w] = depth[v] + 1;
                        stack.push(w);
                    }
                }
            }
        }
        NcTree {
            points,
            edges,
            parent,
            depth,
            preorder,
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Edge pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(v).copied().flatten()
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Depth-first preorder from the root, children in increasing position.
    /// Only positions reachable from the root appear.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Children of `v` in increasing position order.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.points)
            .filter(|&w| self.parent[w] == Some(v))
            .collect()
    }
}

/// Gaps carrying a bar, as a bitmask: bit `k` set means gap `k`
/// (between positions `k - 1` and `k`) is a jump.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JumpSet(u32);

impl JumpSet {
    pub fn from_gaps(n: usize, gaps: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &jump in gaps {
            if jump == 0 || jump > n || jump >= MAX_POINTS {
                return Err(Error::JumpOutOfRange { jump, n });
            }
            mask |= 1 << jump;
        }
        Ok(JumpSet(mask))
    }

    /// Mask with bit `k` for gap `k`; bit 0 is always clear.
    pub fn from_mask(mask: u32) -> Self {
        JumpSet(mask & !1)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, gap: usize) -> bool {
        gap < MAX_POINTS && self.0 >> gap & 1 == 1
    }

    pub fn gaps(self) -> Vec<usize> {
        (1..MAX_POINTS).filter(|&k| self.contains(k)).collect()
    }

    /// Label of position `k`.
    pub fn label(self, k: usize) -> u32 {
        let below = if k + 1 >= 32 { u32::MAX } else { (2u32 << k) - 1 };
        1 + (self.0 & below).count_ones()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeClass {
    Ascent,
    Level,
    Descent,
}

impl EdgeClass {
    pub fn from_labels(parent: u32, child: u32) -> Self {
        use std::cmp::Ordering::*;
        match parent.cmp(&child) {
            Less => EdgeClass::Ascent,
            Equal => EdgeClass::Level,
            Greater => EdgeClass::Descent,
        }
    }

    pub fn letter(self) -> char {
        match self {
            EdgeClass::Ascent => 'u',
            EdgeClass::Level => 'h',
            EdgeClass::Descent => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'u' => Some(EdgeClass::Ascent),
            'h' => Some(EdgeClass::Level),
            'd' => Some(EdgeClass::Descent),
            _ => None,
        }
    }

    /// Two-bit code used by the sliding-window matcher.
    pub(crate) fn code(self) -> u64 {
        match self {
            EdgeClass::Ascent => 0,
            EdgeClass::Level => 1,
            EdgeClass::Descent => 2,
        }
    }
}

/// Ascent, level and descent counts of a tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StatTriple {
    pub u: usize,
    pub h: usize,
    pub d: usize,
}

impl StatTriple {
    pub fn total(&self) -> usize {
        self.u + self.h + self.d
    }

    pub(crate) fn bump(&mut self, class: EdgeClass) {
        match class {
            EdgeClass::Ascent => self.u += 1,
            EdgeClass::Level => self.h += 1,
            EdgeClass::Descent => self.d += 1,
        }
    }
}

/// Word over `{u, h, d}` read from the root downward.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord(pub Vec<EdgeClass>);

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", c.letter()))
    }
}

impl FromStr for PathWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                EdgeClass::from_letter(c)
                    .ok_or_else(|| Error::InvalidPattern(format!("unexpected letter {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PathWord)
    }
}

/// Oriented edge `parent -> child` with its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifiedEdge {
    pub parent: usize,
    pub child: usize,
    pub class: EdgeClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// One entry per non-root vertex, in preorder.
    pub edges: Vec<ClassifiedEdge>,
    pub stats: StatTriple,
}

/// A rooted GNC-tree: an NC-tree together with the gaps where labels
/// increase.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GncTree {
    base: Arc<NcTree>,
    jumps: JumpSet,
}

/// Attaches a jump set to an NC-tree on `n + 1` points.
pub fn make_gnc(base: impl Into<Arc<NcTree>>, jumps: &[usize]) -> Result<GncTree> {
    let base = base.into();
    let n = base.points.saturating_sub(1);
    let jumps = JumpSet::from_gaps(n, jumps)?;
    Ok(GncTree { base, jumps })
}

impl GncTree {
    pub(crate) fn from_parts(base: Arc<NcTree>, jumps: JumpSet) -> Self {
        GncTree { base, jumps }
    }

    pub fn base(&self) -> &NcTree {
        &self.base
    }

    pub fn shared_base(&self) -> &Arc<NcTree> {
        &self.base
    }

    pub fn jumps(&self) -> JumpSet {
        self.jumps
    }

    /// Edge count.
    pub fn n(&self) -> usize {
        self.base.points.saturating_sub(1)
    }

    pub fn label(&self, v: usize) -> u32 {
        self.jumps.label(v)
    }

    pub fn labels(&self) -> Vec<u32> {
        (0..self.base.points).map(|k| self.label(k)).collect()
    }

    /// Class of the edge from `v`'s parent to `v`.
    pub fn edge_class(&self, v: usize) -> Option<EdgeClass> {
        self.base
            .parent(v)
            .map(|p| EdgeClass::from_labels(self.label(p), self.label(v)))
    }

    pub fn classify(&self) -> Classification {
        let mut stats = StatTriple::default();
        let edges = self
            .base
            .preorder
            .iter()
            .filter_map(|&v| {
                let parent = self.base.parent(v)?;
                let class = EdgeClass::from_labels(self.label(parent), self.label(v));
                stats.bump(class);
                Some(ClassifiedEdge {
                    parent,
                    child: v,
                    class,
                })
            })
            .collect();
        Classification { edges, stats }
    }

    pub fn stats(&self) -> StatTriple {
        self.classify().stats
    }

    /// Edge classes along the root-to-`v` path; empty for the root.
    pub fn path_word(&self, v: usize) -> PathWord {
        let mut word = Vec::new();
        let mut cur = v;
        while let Some(p) = self.base.parent(cur) {
            word.push(EdgeClass::from_labels(self.label(p), self.label(cur)));
            cur = p;
        }
        word.reverse();
        PathWord(word)
    }

    /// Lists every violated invariant; empty for a valid tree.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = structural_violations(&self.base);
        let n = self.n();
        if let Some(&bad) = self.jumps.gaps().iter().find(|&&g| g > n) {
            violations.push(Violation::JumpOutOfRange(bad));
        }
        let labels = self.labels();
        if labels.windows(2).any(|w| w[0] > w[1]) {
            violations.push(Violation::LabelsNotMonotone);
        }
        if labels.windows(2).any(|w| w[1] > w[0] + 1) || labels.first().is_some_and(|&l| l != 1) {
            violations.push(Violation::LabelsNotContiguous);
        }
        ValidationReport(violations)
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            n: self.n(),
            edges: self.base.edges.iter().map(|&(a, b)| [a, b]).collect(),
            jumps: self.jumps.gaps(),
            labels: self.labels(),
        }
    }

    /// Parses the interchange form. Labels, if present, are ignored.
    pub fn from_json(json: &TreeJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let base = NcTree::new(json.n + 1, &edges)?;
        make_gnc(base, &json.jumps)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: TreeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// Tree interchange form used by the CLI and the Python bindings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub jumps: Vec<usize>,
    #[serde(default)]
    pub labels: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PositionOutOfRange(usize, usize),
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    EdgeCount { expected: usize, found: usize },
    Crossing((usize, usize), (usize, usize)),
    Disconnected,
    JumpOutOfRange(usize),
    LabelsNotMonotone,
    LabelsNotContiguous,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PositionOutOfRange(a, b) => write!(f, "edge ({a},{b}) leaves the point set"),
            Violation::SelfLoop(a) => write!(f, "self loop at {a}"),
            Violation::DuplicateEdge(a, b) => write!(f, "duplicate edge ({a},{b})"),
            Violation::EdgeCount { expected, found } => {
                write!(f, "expected {expected} edges, found {found}")
            }
            Violation::Crossing((a, b), (c, d)) => write!(f, "edges ({a},{b}) and ({c},{d}) cross"),
            Violation::Disconnected => write!(f, "not connected"),
            Violation::JumpOutOfRange(j) => write!(f, "jump {j} out of range"),
            Violation::LabelsNotMonotone => write!(f, "labels not weakly increasing"),
            Violation::LabelsNotContiguous => write!(f, "labels not contiguous from 1"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport(pub Vec<Violation>);

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.0.iter().any(pred)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn structural_violations(tree: &NcTree) -> Vec<Violation> {
    let mut out = Vec::new();
    let p = tree.points;
    for &(a, b) in &tree.edges {
        if b >= p {
            out.push(Violation::PositionOutOfRange(a, b));
        } else if a == b {
            out.push(Violation::SelfLoop(a));
        }
    }
    for w in tree.edges.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::DuplicateEdge(w[0].0, w[0].1));
        }
    }
    let expected = p.saturating_sub(1);
    if tree.edges.len() != expected {
        out.push(Violation::EdgeCount {
            expected,
            found: tree.edges.len(),
        });
    }
    for (i, &e) in tree.edges.iter().enumerate() {
        for &f in &tree.edges[i + 1..] {
            if crossing(e, f) {
                out.push(Violation::Crossing(e, f));
            }
        }
    }
    if tree.preorder.len() != p {
        out.push(Violation::Disconnected);
    }
    out
}

/// Every NC-tree on `points` points, once each, ordered by sorted edge list.
///
/// Backtracks over chords in lexicographic order, extending a non-crossing
/// forest. A branch is cut once some component lies entirely before the
/// current chord row, since later chords can no longer reach it.
pub fn enumerate_nc_trees(points: usize, limits: &Limits) -> Result<Vec<NcTree>> {
    limits.check_points(points)?;
    if points == 0 {
        return Ok(Vec::new());
    }
    let chords: Vec<(usize, usize)> = (0..points)
        .flat_map(|a| (a + 1..points).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(points);
    let comp: [u8; MAX_POINTS] = std::array::from_fn(|i| i as u8);
    extend_forest(points, &chords, 0, &mut chosen, comp, &mut out);
    Ok(out)
}

fn extend_forest(
    points: usize,
    chords: &[(usize, usize)],
    start: usize,
    chosen: &mut Vec<(usize, usize)>,
    comp: [u8; MAX_POINTS],
    out: &mut Vec<NcTree>,
) {
    if chosen.len() + 1 == points {
        out.push(NcTree::from_edges_unchecked(points, chosen));
        return;
    }
    let need = points - 1 - chosen.len();
    for idx in start..chords.len() {
        if chords.len() - idx < need {
            return;
        }
        let (a, b) = chords[idx];
        if !frontier_reachable(points, &comp, a) {
            return;
        }
        if comp[a] == comp[b] || chosen.iter().any(|&e| crossing(e, (a, b))) {
            continue;
        }
        let mut next = comp;
        let (from, to) = (comp[b], comp[a]);
        for c in next.iter_mut().take(points) {
            if *c == from {
                *c = to;
            }
        }
        chosen.push((a, b));
        extend_forest(points, chords, idx + 1, chosen, next, out);
        chosen.pop();
    }
}

/// Every vertex before `row` must share a component with some vertex at or
/// after `row`: remaining chords all start at `row` or later.
fn frontier_reachable(points: usize, comp: &[u8; MAX_POINTS], row: usize) -> bool {
    (0..row).all(|v| (row..points).any(|w| comp[w] == comp[v]))
}

/// The trees of `GNC_n` (or `GNC*_n`) in canonical order: NC-trees by
/// sorted edge list, then jump mask.
///
/// The global index of a tree is `tree_index * 2^n + jump_index`, which
/// gives stable shard boundaries.
#[derive(Clone, Debug)]
pub struct GncEnumeration {
    n: usize,
    bases: Vec<Arc<NcTree>>,
    star_only: bool,
}

impl GncEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn star_only(&self) -> bool {
        self.star_only
    }

    pub fn bases(&self) -> &[Arc<NcTree>] {
        &self.bases
    }

    /// Size of the index space (before the star filter).
    pub fn index_len(&self) -> usize {
        self.bases.len() << self.n
    }

    /// Jump mask for jump index `j`; gap `k` is bit `k`.
    pub fn mask_of(j: usize) -> u32 {
        (j as u32) << 1
    }

    fn admits(&self, mask: u32) -> bool {
        !self.star_only || self.n == 0 || mask & 0b10 != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = GncTree> + '_ {
        self.shard(0, 1)
    }

    /// Contiguous slice `index` of `count` of the global index space.
    pub fn shard(&self, index: usize, count: usize) -> impl Iterator<Item = GncTree> + '_ {
        let range = shard_range(self.index_len(), index, count);
        range.filter_map(move |g| {
            let mask = Self::mask_of(g & ((1 << self.n) - 1));
            self.admits(mask)
                .then(|| GncTree::from_parts(self.bases[g >> self.n].clone(), JumpSet(mask)))
        })
    }

    /// Raw `(base, mask)` pairs of a shard, for hot loops that avoid
    /// building [`GncTree`] values.
    pub(crate) fn shard_raw(&self, index: usize, count: usize) -> impl Iterator<Item = (&NcTree, u32)> + '_ {
        let range = shard_range(self.index_len(), index, count);
        range.filter_map(move |g| {
            let mask = Self::mask_of(g & ((1 << self.n) - 1));
            self.admits(mask).then(|| (&*self.bases[g >> self.n], mask))
        })
    }
}

/// Half-open range of shard `index` out of `count` over `0..len`.
pub fn shard_range(len: usize, index: usize, count: usize) -> std::ops::Range<usize> {
    let count = count.max(1);
    let lo = len * index / count;
    let hi = len * (index + 1) / count;
    lo..hi.min(len)
}

/// All of `GNC_n`: every NC-tree on `n + 1` points with all `2^n` jump sets.
pub fn enumerate_gnc(n: usize, limits: &Limits) -> Result<GncEnumeration> {
    limits.check_gnc(n)?;
    let bases = enumerate_nc_trees(n + 1, &Limits {
        max_points: n + 1,
        ..*limits
    })?
    .into_iter()
    .map(Arc::new)
    .collect();
    Ok(GncEnumeration {
        n,
        bases,
        star_only: false,
    })
}

/// `GNC*_n`: trees whose root is the only point labelled 1, i.e. gap 1 is
/// a jump (or `n = 0`).
pub fn enumerate_gnc_star(n: usize, limits: &Limits) -> Result<GncEnumeration> {
    let mut all = enumerate_gnc(n, limits)?;
    all.star_only = true;
    Ok(all)
}
