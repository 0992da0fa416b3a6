//! Isomorph-free search for the largest family avoiding the three target
//! patterns.
//!
//! Deleting useless elements keeps a family avoiding, so a largest avoider
//! can be taken reduced, and a reduced family of `t` members spans at most
//! `t - 1` elements. For each size `t` the search therefore asks whether a
//! reduced avoider of `t` members exists over exactly `[u]`, for every
//! feasible `u < t`.
//!
//! Families are grown one member at a time by canonical augmentation. The
//! parent of a family `G` is `G - y`, where `y` is the member with the
//! largest canonical image among those whose removal makes at most one more
//! element useless. Members differing in one element form a forest once each
//! useful element keeps a single witnessing pair, so a leaf of that forest is
//! always such a member. Along the parent chain of a reduced family of size
//! `t` the number of useless elements at size `s` is then at most `t - s`,
//! which is the pruning rule.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::canon::canonical_form;
use crate::family::PatternMatrix;

/// Per-column-count lookup deciding pattern containment from row traces.
///
/// For a set `S` of `b` columns, a family contains a wildcard-free pattern
/// with `b` columns on `S` exactly when, for some ordering of `S`, every
/// pattern row occurs among the traces of the members on `S`.
pub(crate) struct Avoider {
    groups: Vec<Group>,
    slots: usize,
}

struct Group {
    b: usize,
    /// Column subsets, each as ascending column positions.
    subsets: Vec<Vec<u8>>,
    /// Indexed by the set of traces seen on one subset.
    bad: Vec<bool>,
    offset: usize,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn subsets(u: usize, b: usize) -> Vec<Vec<u8>> {
    crate::constructions::k_subsets(u, b)
        .into_iter()
        .map(|m| (0..u as u8).filter(|&c| m >> c & 1 == 1).collect())
        .collect()
}

impl Avoider {
    /// `patterns` must be wildcard-free with pairwise distinct rows and at
    /// most four columns.
    pub(crate) fn new(patterns: &[PatternMatrix], u: usize) -> Self {
        let mut groups: Vec<Group> = Vec::new();
        let mut slots = 0;
        for p in patterns {
            let b = p.cols();
            debug_assert!(b <= 4 && !p.has_wildcards());
            if b > u {
                continue;
            }
            let rows: Vec<u64> = (0..p.rows()).map(|r| p.row_masks(r).0).collect();
            let idx = match groups.iter().position(|g| g.b == b) {
                Some(i) => i,
                None => {
                    let subsets = subsets(u, b);
                    let g = Group {
                        b,
                        bad: vec![false; 1 << (1 << b)],
                        offset: slots,
                        subsets,
                    };
                    slots += g.subsets.len();
                    groups.push(g);
                    groups.len() - 1
                }
            };
            let g = &mut groups[idx];
            let needs: Vec<u32> = permutations(b)
                .into_iter()
                .map(|perm| {
                    rows.iter().fold(0u32, |acc, &r| {
                        let t = (0..b)
                            .filter(|&j| r >> j & 1 == 1)
                            .fold(0usize, |t, j| t | 1 << perm[j]);
                        acc | 1 << t
                    })
                })
                .collect();
            for (mask, bad) in g.bad.iter_mut().enumerate() {
                if !*bad {
                    *bad = needs.iter().any(|&n| n as usize & mask == n as usize);
                }
            }
        }
        Avoider { groups, slots }
    }

    pub(crate) fn empty_state(&self) -> Vec<u16> {
        vec![0; self.slots]
    }

    fn trace(x: u64, cols: &[u8]) -> usize {
        cols.iter()
            .enumerate()
            .fold(0, |t, (i, &c)| t | ((x >> c & 1) as usize) << i)
    }

    /// Whether adding member `x` keeps the family pattern-free.
    pub(crate) fn admits(&self, state: &[u16], x: u64) -> bool {
        self.groups.iter().all(|g| {
            g.subsets.iter().enumerate().all(|(i, cols)| {
                let seen = state[g.offset + i] as usize | 1 << Self::trace(x, cols);
                !g.bad[seen]
            })
        })
    }

    pub(crate) fn push(&self, state: &[u16], x: u64) -> Vec<u16> {
        let mut next = state.to_vec();
        for g in &self.groups {
            for (i, cols) in g.subsets.iter().enumerate() {
                next[g.offset + i] |= 1 << Self::trace(x, cols);
            }
        }
        next
    }
}

/// Mask of elements of `[u]` on which no two rows differ alone.
pub(crate) fn useless_mask(rows: &[u64], universe_mask: u64) -> u64 {
    let mut useful = 0;
    for (i, &a) in rows.iter().enumerate() {
        for &b in &rows[i + 1..] {
            let d = a ^ b;
            if d & (d - 1) == 0 {
                useful |= d;
            }
        }
    }
    universe_mask & !useful
}

struct Node {
    rows: Vec<u64>,
    state: Vec<u16>,
    canon: Vec<u64>,
}

enum Step {
    Found(Vec<u64>),
    Children(Vec<Node>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Counters {
    pub nodes: u64,
    pub rejects: u64,
}

impl std::ops::AddAssign for Counters {
    fn add_assign(&mut self, o: Self) {
        self.nodes += o.nodes;
        self.rejects += o.rejects;
    }
}

/// One decision problem: a reduced avoider of `t` members over exactly `[u]`.
struct Level<'a> {
    u: usize,
    t: usize,
    mask: u64,
    avoider: &'a Avoider,
}

impl Level<'_> {
    fn root(&self) -> Node {
        Node {
            rows: Vec::new(),
            state: self.avoider.empty_state(),
            canon: Vec::new(),
        }
    }

    fn expand(&self, node: &Node, c: &mut Counters) -> Step {
        let size = node.rows.len() + 1;
        let slack = (self.t - size) as u32;
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut children = Vec::new();
        let mut rows = node.rows.clone();
        rows.push(0);
        for x in 0..=self.mask {
            if node.rows.contains(&x) || !self.avoider.admits(&node.state, x) {
                continue;
            }
            *rows.last_mut().unwrap() = x;
            let useless = useless_mask(&rows, self.mask).count_ones();
            if size == self.t {
                if useless == 0 {
                    return Step::Found(rows);
                }
                continue;
            }
            if useless > slack {
                continue;
            }
            let canon = canonical_form(&rows, self.u);
            if seen.contains(&canon.rows) {
                c.rejects += 1;
                continue;
            }
            seen.insert(canon.rows.clone());
            if !self.is_canonical_child(&rows, useless, &canon, &node.canon) {
                c.rejects += 1;
                continue;
            }
            c.nodes += 1;
            children.push(Node {
                state: self.avoider.push(&node.state, x),
                rows: rows.clone(),
                canon: canon.rows,
            });
        }
        Step::Children(children)
    }

    /// Whether the last row of `rows` is the canonical deletion, up to automorphism.
    fn is_canonical_child(
        &self,
        rows: &[u64],
        useless: u32,
        canon: &super::canon::CanonForm,
        parent_canon: &[u64],
    ) -> bool {
        let mut rest = Vec::with_capacity(rows.len() - 1);
        let mut chosen: Option<(u64, usize)> = None;
        for y in 0..rows.len() {
            rest.clear();
            rest.extend(
                rows.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != y)
                    .map(|(_, &r)| r),
            );
            if useless_mask(&rest, self.mask).count_ones() > useless + 1 {
                continue;
            }
            let image = canon.map_row(rows[y]);
            if chosen.is_none_or(|(best, _)| image > best) {
                chosen = Some((image, y));
            }
        }
        let (_, y) = chosen.expect("a leaf of the pair forest is always removable");
        if y == rows.len() - 1 {
            return true;
        }
        rest.clear();
        rest.extend(
            rows.iter()
                .enumerate()
                .filter(|&(i, _)| i != y)
                .map(|(_, &r)| r),
        );
        canonical_form(&rest, self.u).rows == parent_canon
    }
}

pub(crate) enum Outcome {
    Found(Vec<u64>),
    Absent,
    OverBudget,
}

struct Branch {
    outcome: Outcome,
    counters: Counters,
}

fn dfs(
    level: &Level,
    node: &Node,
    c: &mut Counters,
    allowance: u64,
    cancel: &dyn Fn() -> bool,
) -> Outcome {
    if c.nodes > allowance || cancel() {
        return Outcome::OverBudget;
    }
    match level.expand(node, c) {
        Step::Found(w) => Outcome::Found(w),
        Step::Children(children) => {
            for child in &children {
                match dfs(level, child, c, allowance, cancel) {
                    Outcome::Absent => {}
                    other => return other,
                }
            }
            Outcome::Absent
        }
    }
}

/// Decides one level. The tree is cut at `split` members; subtrees run in
/// parallel and their results are combined in branch order, so counts and
/// the witness do not depend on scheduling.
pub(crate) fn decide(
    avoider: &Avoider,
    u: usize,
    t: usize,
    split: usize,
    allowance: u64,
) -> (Outcome, Counters) {
    let level = Level {
        u,
        t,
        mask: crate::family::mask_of(u),
        avoider,
    };
    let mut counters = Counters::default();
    let mut frontier = vec![level.root()];
    for _ in 0..split {
        if counters.nodes > allowance {
            return (Outcome::OverBudget, counters);
        }
        let mut next = Vec::new();
        for node in &frontier {
            match level.expand(node, &mut counters) {
                Step::Found(w) => return (Outcome::Found(w), counters),
                Step::Children(ch) => next.extend(ch),
            }
        }
        if next.is_empty() {
            return (Outcome::Absent, counters);
        }
        frontier = next;
    }
    let used = counters.nodes;
    let first_found = AtomicUsize::new(usize::MAX);
    let branches: Vec<Branch> = frontier
        .par_iter()
        .enumerate()
        .map(|(i, node)| {
            let mut c = Counters::default();
            let cancel = || first_found.load(Ordering::Relaxed) < i;
            let outcome = dfs(
                &level,
                node,
                &mut c,
                allowance.saturating_sub(used),
                &cancel,
            );
            if matches!(outcome, Outcome::Found(_)) {
                first_found.fetch_min(i, Ordering::Relaxed);
            }
            Branch {
                outcome,
                counters: c,
            }
        })
        .collect();
    for b in branches {
        counters += b.counters;
        if counters.nodes > allowance {
            return (Outcome::OverBudget, counters);
        }
        match b.outcome {
            Outcome::Absent => {}
            other => return (other, counters),
        }
    }
    (Outcome::Absent, counters)
}
