//! Non-isomorphic free trees and the exhaustive extremal search.
//!
//! [`FreeTrees`] is the constant-amortized-time level-sequence generator of
//! Wright, Richmond, Odlyzko and McKay: it walks canonical rooted level
//! sequences (Beyer-Hedetniemi successor) and keeps only those rooted at a
//! center in canonical orientation, so every free tree appears once.
//! [`prufer_trees`] is an independent, much slower generator (all labeled
//! trees, deduplicated by canonical code) used to cross-check it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{BigInt, BigRational};
use crate::canon::{canonical_code, CanonicalCode};
use crate::error::{Error, Result};
use crate::families::{broom, broom_permanent, theorem_bound};
use crate::graph::Tree;
use crate::matching::{laplacian_ratio, tree_permanent};
use crate::report::rational_str;

/// Default largest order [`enumerate_trees`] accepts.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Largest order the Prufer oracle accepts (`n^(n-2)` labeled trees).
pub const PRUFER_CAP: usize = 9;

/// Free-tree counts for `n = 1..=16`.
pub const FREE_TREE_COUNTS: [usize; 16] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320,
];

/// Stream of pairwise non-isomorphic trees of one order.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    n: usize,
    pending: Option<Vec<usize>>,
    singleton_done: bool,
}

impl FreeTrees {
    fn new(n: usize) -> Self {
        let pending = (n >= 2).then(|| {
            let mut layout: Vec<usize> = (0..=n / 2).collect();
            layout.extend(1..n.div_ceil(2));
            layout
        });
        FreeTrees {
            n,
            pending,
            singleton_done: false,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.n == 1 {
            if self.singleton_done {
                return None;
            }
            self.singleton_done = true;
            return Some(Tree::from_edges(1, []).expect("K1 is a tree"));
        }
        let candidate = self.pending.take()?;
        let layout = next_tree(candidate)?;
        self.pending = next_rooted_tree(&layout, None);
        Some(level_sequence_to_tree(&layout))
    }
}

/// Beyer-Hedetniemi successor of a rooted level sequence.
fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the first subtree of the root: `(left, rest)` where `left`
/// is rebased to level 0 and `rest` keeps the root.
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Accepts the candidate if it is rooted at a center in canonical form,
/// otherwise jumps ahead to the next candidate that can be.
fn next_tree(candidate: Vec<usize>) -> Option<Vec<usize>> {
    let (left, rest) = split_tree(&candidate);
    let left_height = left.iter().copied().max().unwrap_or(0);
    let rest_height = rest.iter().copied().max().unwrap_or(0);
    let valid = rest_height > left_height
        || (rest_height == left_height
            && (left.len() < rest.len() || (left.len() == rest.len() && left <= rest)));
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted_tree(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (slot, level) in next[len - (h + 1)..].iter_mut().zip(1..) {
            *slot = level;
        }
    }
    Some(next)
}

/// Builds the tree of a level sequence: vertex `i` hangs off the nearest
/// earlier vertex one level up.
pub fn level_sequence_to_tree(layout: &[usize]) -> Tree {
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    let mut stack: Vec<usize> = Vec::new();
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&top) = stack.last() {
            if layout[top] >= level {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = stack.last() {
            edges.push((top, i));
        }
        stack.push(i);
    }
    Tree::from_edges(layout.len(), edges).expect("level sequences describe trees")
}

/// All non-isomorphic trees on `n` vertices, `1 <= n <= cap`.
pub fn enumerate_trees(n: usize, cap: usize) -> Result<FreeTrees> {
    if n == 0 {
        return Err(Error::InvalidSpec("tree order must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::TooLarge { order: n, cap });
    }
    Ok(FreeTrees::new(n))
}

/// The trees of `trees` whose diameter is at least `k`.
pub fn filter_diameter_at_least(
    trees: impl Iterator<Item = Tree>,
    k: usize,
) -> impl Iterator<Item = Tree> {
    trees.filter(move |t| t.tree_diameter() >= k)
}

/// Decodes a Prufer sequence over `0..n` (length `n - 2`).
pub fn prufer_decode(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    Tree::from_edges(n, edges).expect("Prufer sequences decode to trees")
}

/// Every labeled tree on `n` vertices via Prufer sequences, reduced to one
/// representative per canonical code. Returned in canonical-code order.
pub fn prufer_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::InvalidSpec("tree order must be at least 1".into()));
    }
    if n > PRUFER_CAP {
        return Err(Error::TooLarge {
            order: n,
            cap: PRUFER_CAP,
        });
    }
    if n <= 2 {
        let t = Tree::from_edges(n, (n == 2).then_some((0, 1)))?;
        return Ok(vec![t]);
    }
    let len = n - 2;
    // Partition by the first symbol; every class is walked sequentially.
    let classes: Vec<BTreeMap<CanonicalCode, Tree>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut found = BTreeMap::new();
            let mut seq = vec![0usize; len];
            seq[0] = first;
            loop {
                let t = prufer_decode(&seq);
                found.entry(canonical_code(&t)).or_insert(t);
                // Odometer over positions 1..len.
                let mut i = len;
                loop {
                    if i == 1 {
                        return found;
                    }
                    i -= 1;
                    seq[i] += 1;
                    if seq[i] < n {
                        break;
                    }
                    seq[i] = 0;
                }
            }
        })
        .collect();
    let mut merged = BTreeMap::new();
    for class in classes {
        for (code, t) in class {
            merged.entry(code).or_insert(t);
        }
    }
    Ok(merged.into_values().collect())
}

/// What an extremal search minimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `pi(T) = per L(T) / PD(T)`; compared against the closed-form bound.
    Ratio,
    /// `per L(T)`; compared against the broom permanent.
    Permanent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub enumeration_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: 0,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Runs `f` on a pool of `jobs` threads (or the global pool for 0).
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Outcome of an exhaustive search over the trees of order `n` with
/// diameter at least `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub objective: Objective,
    pub n: usize,
    pub k: usize,
    /// All trees of order `n`.
    pub trees_total: usize,
    /// Trees with diameter at least `k`.
    pub trees_examined: usize,
    #[serde(serialize_with = "rational_str")]
    pub minimum: BigRational,
    /// Canonical codes of every tree attaining the minimum, sorted.
    pub minimizers: Vec<CanonicalCode>,
    /// Closed-form value for the broom `B(n,k)`.
    #[serde(serialize_with = "rational_str")]
    pub expected: BigRational,
    pub broom: CanonicalCode,
    /// The minimum equals `expected` and the broom is the only minimizer.
    pub agreement: bool,
}

impl ExtremalReport {
    pub fn unique_minimizer(&self) -> Option<&CanonicalCode> {
        match self.minimizers.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

fn check_grid(n: usize, k: usize, opts: &SearchOptions) -> Result<()> {
    if n > opts.enumeration_cap {
        return Err(Error::TooLarge {
            order: n,
            cap: opts.enumeration_cap,
        });
    }
    if k < 2 || k + 1 > n {
        return Err(Error::InvalidSpec(format!(
            "extremal search needs 2 <= k <= n-1, got n={n}, k={k}"
        )));
    }
    Ok(())
}

/// Minimizes `objective` over the trees of order `n` with diameter at least
/// `k`. Values are computed in parallel and merged by exact minimum; ties
/// are all reported, in canonical-code order, so the result does not depend
/// on scheduling.
pub fn search(
    objective: Objective,
    n: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<ExtremalReport> {
    check_grid(n, k, opts)?;
    let trees: Vec<Tree> = enumerate_trees(n, opts.enumeration_cap)?.collect();
    let trees_total = trees.len();
    let candidates: Vec<Tree> = filter_diameter_at_least(trees.into_iter(), k).collect();

    let evaluate = |t: &Tree| -> Result<(BigRational, CanonicalCode)> {
        let value = match objective {
            Objective::Ratio => laplacian_ratio(t)?,
            Objective::Permanent => BigRational::from_integer(tree_permanent(t)),
        };
        Ok((value, canonical_code(t)))
    };
    let values: Vec<(BigRational, CanonicalCode)> = with_jobs(opts.jobs, || {
        candidates
            .par_iter()
            .map(evaluate)
            .collect::<Result<Vec<_>>>()
    })?;

    let minimum = values
        .iter()
        .map(|(v, _)| v)
        .min()
        .cloned()
        .ok_or_else(|| Error::InvalidSpec(format!("no tree of order {n} has diameter >= {k}")))?;
    let mut minimizers: Vec<CanonicalCode> = values
        .into_iter()
        .filter(|(v, _)| *v == minimum)
        .map(|(_, c)| c)
        .collect();
    minimizers.sort();
    minimizers.dedup();

    let expected = match objective {
        Objective::Ratio => theorem_bound(n, k)?,
        Objective::Permanent => BigRational::from_integer(broom_permanent(n, k)?),
    };
    let broom = canonical_code(&broom(n, k)?);
    let agreement = minimum == expected && minimizers == [broom.clone()];
    Ok(ExtremalReport {
        objective,
        n,
        k,
        trees_total,
        trees_examined: candidates.len(),
        minimum,
        minimizers,
        expected,
        broom,
        agreement,
    })
}

/// Minimum Laplacian ratio over trees of order `n` and diameter `>= k`.
pub fn extremal_search(n: usize, k: usize, opts: &SearchOptions) -> Result<ExtremalReport> {
    search(Objective::Ratio, n, k, opts)
}

/// Minimum Laplacian permanent over the same trees.
pub fn permanent_extremal_search(
    n: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<ExtremalReport> {
    search(Objective::Permanent, n, k, opts)
}

/// Integer view of a permanent report's minimum.
pub fn integer_minimum(report: &ExtremalReport) -> Option<BigInt> {
    report
        .minimum
        .is_integer()
        .then(|| report.minimum.to_integer())
}
