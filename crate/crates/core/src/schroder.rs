//! Little Schröder paths, Coker paths, and the bijection between
//! increasing (`{h, d}`-avoiding) GNC-trees and little Schröder paths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinat::BigCount;
use crate::error::{Error, Result};
use crate::trees::{EdgeClass, GncTree, Limits, NcTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    Down,
    /// The horizontal pair `H_l H_r`, two units wide.
    Flat,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Flat => 'F',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'U' => Some(Step::Up),
            'D' => Some(Step::Down),
            'F' => Some(Step::Flat),
            _ => None,
        }
    }
}

/// A little Schröder path: never below the axis, ends on it, and no flat
/// step at height zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "String")]
pub struct SchroderPath(Vec<Step>);

impl SchroderPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for (i, &s) in steps.iter().enumerate() {
            match s {
                Step::Up => height += 1,
                Step::Down => {
                    height -= 1;
                    if height < 0 {
                        return Err(Error::MalformedPath(format!("step {i} goes below the axis")));
                    }
                }
                Step::Flat => {
                    if height == 0 {
                        return Err(Error::MalformedPath(format!("flat step {i} lies on the axis")));
                    }
                }
            }
        }
        if height != 0 {
            return Err(Error::MalformedPath(format!("path ends at height {height}")));
        }
        Ok(SchroderPath(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Half the horizontal length.
    pub fn semilength(&self) -> usize {
        self.0
            .iter()
            .map(|s| if *s == Step::Flat { 2 } else { 1 })
            .sum::<usize>()
            / 2
    }
}

impl fmt::Display for SchroderPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl From<SchroderPath> for String {
    fn from(p: SchroderPath) -> String {
        p.to_string()
    }
}

impl FromStr for SchroderPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Step::from_letter(c).ok_or_else(|| Error::MalformedPath(format!("unknown step {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        SchroderPath::new(steps)
    }
}

/// All little Schröder paths of semilength `n`, in lexicographic order of
/// `U < D < F`.
pub fn enumerate_schroder(n: usize, limits: &Limits) -> Result<Vec<SchroderPath>> {
    limits.check_path(n)?;
    let mut out = Vec::new();
    let mut steps = Vec::new();
    schroder_rec(2 * n, 0, &mut steps, &mut out);
    Ok(out)
}

fn schroder_rec(width: usize, height: usize, steps: &mut Vec<Step>, out: &mut Vec<SchroderPath>) {
    if width == 0 {
        out.push(SchroderPath(steps.clone()));
        return;
    }
    if height < width {
        steps.push(Step::Up);
        schroder_rec(width - 1, height + 1, steps, out);
        steps.pop();
    }
    if height > 0 {
        steps.push(Step::Down);
        schroder_rec(width - 1, height - 1, steps, out);
        steps.pop();
        if width >= height + 2 {
            steps.push(Step::Flat);
            schroder_rec(width - 2, height, steps, out);
            steps.pop();
        }
    }
}

fn require_increasing(tree: &GncTree) -> Result<()> {
    let base = tree.base();
    let all_ascents = (1..base.points()).all(|v| tree.edge_class(v) == Some(EdgeClass::Ascent));
    if base.preorder().len() != base.points() || !all_ascents {
        return Err(Error::NotIncreasing);
    }
    Ok(())
}

/// One reading of an edge during the depth-first walk: the child endpoint
/// and whether it is the first reading.
fn readings(tree: &NcTree) -> Vec<(usize, bool)> {
    fn walk(tree: &NcTree, v: usize, out: &mut Vec<(usize, bool)>) {
        for c in tree.children(v) {
            out.push((c, true));
            walk(tree, c, out);
            out.push((c, false));
        }
    }
    let mut out = Vec::with_capacity(2 * tree.points());
    if tree.points() > 0 {
        walk(tree, 0, &mut out);
    }
    out
}

/// Encodes an increasing GNC-tree as a little Schröder path.
///
/// Walk in preorder with children in increasing position order; an edge
/// gives `U` when first read and `D` when read again. A `D` followed
/// directly by a `U` into a point `b` whose gap is not a jump is fused into
/// one flat step.
pub fn encode_tree(tree: &GncTree) -> Result<SchroderPath> {
    require_increasing(tree)?;
    let jumps = tree.jumps();
    let reads = readings(tree.base());
    let mut steps = Vec::with_capacity(reads.len());
    let mut i = 0;
    while i < reads.len() {
        let (_, first) = reads[i];
        if first {
            steps.push(Step::Up);
            i += 1;
            continue;
        }
        match reads.get(i + 1) {
            Some(&(b, true)) if !jumps.contains(b) => {
                steps.push(Step::Flat);
                i += 2;
            }
            _ => {
                steps.push(Step::Down);
                i += 1;
            }
        }
    }
    SchroderPath::new(steps)
}

/// Inverse of [`encode_tree`].
pub fn decode_path(path: &SchroderPath) -> Result<GncTree> {
    let mut edges = Vec::new();
    let mut jumps = Vec::new();
    let mut stack = vec![0usize];
    let mut next = 1usize;
    let mut attach = |parent: usize, jump: bool, edges: &mut Vec<(usize, usize)>| {
        edges.push((parent, next));
        if jump {
            jumps.push(next);
        }
        next += 1;
        next - 1
    };
    for (i, step) in path.steps().iter().enumerate() {
        let malformed = || Error::MalformedPath(format!("step {i} leaves the root"));
        match step {
            Step::Up => {
                let top = *stack.last().ok_or_else(malformed)?;
                let c = attach(top, true, &mut edges);
                stack.push(c);
            }
            Step::Down => {
                stack.pop();
                if stack.is_empty() {
                    return Err(malformed());
                }
            }
            Step::Flat => {
                stack.pop();
                let top = *stack.last().ok_or_else(malformed)?;
                let c = attach(top, false, &mut edges);
                stack.push(c);
            }
        }
    }
    let base = NcTree::new(next, &edges)?;
    crate::trees::make_gnc(base, &jumps)
}

/// The increasing tree on eight points with edges `01 02 03 34 35 06 67`
/// and jumps `{1, 4, 6, 7}`; it encodes to [`SAMPLE_PATH`].
pub fn sample_increasing_tree() -> GncTree {
    let base = NcTree::new(8, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (0, 6), (6, 7)]).expect("valid tree");
    crate::trees::make_gnc(base, &[1, 4, 6, 7]).expect("valid jumps")
}

pub const SAMPLE_PATH: &str = "UFFUFDDUUDD";

/// Steps of the literal label-pair encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralStep {
    Up,
    /// `H_l`: second reading of an edge followed by an edge with the same
    /// label pair.
    Left,
    /// `H_r`: the first reading that completes an `H_l`.
    Right,
    Down,
}

/// A word of the literal encoding; `H_l H_r` renders as `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralWord(pub Vec<LiteralStep>);

impl fmt::Display for LiteralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            match s {
                LiteralStep::Up => write!(f, "U")?,
                LiteralStep::Down => write!(f, "D")?,
                LiteralStep::Left => write!(f, "F")?,
                LiteralStep::Right => {}
            }
        }
        Ok(())
    }
}

/// The encoding keyed on equal `(parent label, child label)` pairs. Not
/// injective; kept as a diagnostic.
pub fn encode_tree_literal(tree: &GncTree) -> Result<LiteralWord> {
    require_increasing(tree)?;
    let base = tree.base();
    let pair = |c: usize| {
        let p = base.parent(c).expect("non-root point has a parent");
        (tree.label(p), tree.label(c))
    };
    let reads = readings(base);
    let mut out = Vec::with_capacity(reads.len());
    let mut i = 0;
    while i < reads.len() {
        let (c, first) = reads[i];
        if first {
            out.push(LiteralStep::Up);
            i += 1;
            continue;
        }
        match reads.get(i + 1) {
            Some(&(b, true)) if pair(b) == pair(c) => {
                out.push(LiteralStep::Left);
                out.push(LiteralStep::Right);
                i += 2;
            }
            _ => {
                out.push(LiteralStep::Down);
                i += 1;
            }
        }
    }
    Ok(LiteralWord(out))
}

/// A path from `(0, 0)` to `(2n, 0)` with steps `(k, ±k)`, `k >= 1`, never
/// below the axis. Steps are stored as signed heights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CokerPath(Vec<i64>);

impl CokerPath {
    pub fn new(steps: Vec<i64>) -> Result<Self> {
        let mut height = 0i64;
        for &k in &steps {
            if k == 0 {
                return Err(Error::MalformedPath("zero-length step".into()));
            }
            height += k;
            if height < 0 {
                return Err(Error::MalformedPath("path goes below the axis".into()));
            }
        }
        if height != 0 {
            return Err(Error::MalformedPath(format!("path ends at height {height}")));
        }
        Ok(CokerPath(steps))
    }

    pub fn steps(&self) -> &[i64] {
        &self.0
    }

    pub fn semilength(&self) -> usize {
        self.0.iter().map(|k| k.unsigned_abs() as usize).sum::<usize>() / 2
    }
}

impl fmt::Display for CokerPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| format!("{k:+}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All Coker paths of semilength `n`, ordered by the signed step list.
pub fn enumerate_coker(n: usize, limits: &Limits) -> Result<Vec<CokerPath>> {
    limits.check_path(n)?;
    let mut out = Vec::new();
    let mut steps = Vec::new();
    coker_rec(2 * n as i64, 0, &mut steps, &mut out);
    Ok(out)
}

fn coker_rec(remaining: i64, height: i64, steps: &mut Vec<i64>, out: &mut Vec<CokerPath>) {
    if remaining == 0 {
        out.push(CokerPath(steps.clone()));
        return;
    }
    for k in (1..=height).rev() {
        steps.push(-k);
        coker_rec(remaining - k, height - k, steps, out);
        steps.pop();
    }
    // An up step of size k must leave room to come back down.
    for k in 1..=(remaining - height) / 2 {
        steps.push(k);
        coker_rec(remaining - k, height + k, steps, out);
        steps.pop();
    }
}

/// `|D_n|` by dynamic programming over (remaining width, height).
pub fn coker_count(n: usize) -> BigCount {
    let w = 2 * n;
    // ways[r][h]: completions with r units left at height h.
    let mut ways = vec![vec![BigInt::zero(); w + 1]; w + 1];
    ways[0][0] = BigInt::from(1);
    for r in 1..=w {
        for h in 0..=r {
            let mut acc = BigInt::zero();
            for k in 1..=h.min(r) {
                acc += &ways[r - k][h - k];
            }
            let mut k = 1;
            while 2 * k + h <= r {
                acc += &ways[r - k][h + k];
                k += 1;
            }
            ways[r][h] = acc;
        }
    }
    ways[w][0].clone()
}
