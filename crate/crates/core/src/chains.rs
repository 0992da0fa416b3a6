//! Increasing and decreasing sequences of sets.
//!
//! A sequence `H_1, ..., H_{q+1}` is `q`-increasing when every prefix union
//! strictly grows, and `q`-decreasing when every prefix intersection
//! strictly shrinks. Any family of more than `C(k+l, l)` distinct sets holds a
//! `(k+1)`-increasing or an `(l+1)`-decreasing sequence; [`extract_chain`]
//! builds one by splitting on an element that some but not all sets contain.

use serde::{Deserialize, Serialize};

use crate::binom;
use crate::error::{Error, Result};
use crate::family::{all_distinct, SetFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainWitness {
    pub direction: Direction,
    /// 0-based member indices, `order + 1` of them.
    pub indices: Vec<usize>,
}

impl ChainWitness {
    pub fn order(&self) -> usize {
        self.indices.len().saturating_sub(1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "direction": self.direction,
            "order": self.order(),
            "indices": self.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })
    }
}

/// True iff every prefix union grows (increasing) or every prefix
/// intersection shrinks (decreasing).
pub fn validate_chain(family: &SetFamily, witness: &ChainWitness) -> Result<bool> {
    if !all_distinct(&witness.indices) {
        return Err(Error::RepeatedIndex);
    }
    let sets = witness
        .indices
        .iter()
        .map(|&i| family.member(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(is_chain(&sets, witness.direction))
}

pub(crate) fn is_chain(sets: &[u64], direction: Direction) -> bool {
    let Some((&first, rest)) = sets.split_first() else {
        return true;
    };
    let mut acc = first;
    for &s in rest {
        let next = match direction {
            Direction::Increasing => acc | s,
            Direction::Decreasing => acc & s,
        };
        if next == acc {
            return false;
        }
        acc = next;
    }
    true
}

/// A chain together with the recursion depth that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedChain {
    pub witness: ChainWitness,
    pub depth: usize,
}

/// A `(k+1)`-increasing or `(l+1)`-decreasing sequence in a family with more
/// than `C(k+l, l)` members.
pub fn extract_chain(family: &SetFamily, k: usize, l: usize) -> Result<ChainWitness> {
    extract_chain_traced(family, k, l).map(|t| t.witness)
}

pub fn extract_chain_traced(family: &SetFamily, k: usize, l: usize) -> Result<TracedChain> {
    let bound = binom(k + l, l);
    if (family.len() as u128) <= bound {
        return Err(Error::BelowBound {
            members: family.len(),
            n: k + l,
            k: l,
            bound,
        });
    }
    let all: Vec<usize> = (0..family.len()).collect();
    let (witness, depth) = split(family.members(), &all, k, l);
    Ok(TracedChain { witness, depth })
}

/// `idx` lists more than `C(k+l, l)` members with pairwise distinct sets.
fn split(sets: &[u64], idx: &[usize], k: usize, l: usize) -> (ChainWitness, usize) {
    if l == 0 {
        // two distinct sets: one of them is not inside the other
        let (a, b) = first_pair(sets, idx, |a, b| a & !b != 0);
        let w = ChainWitness {
            direction: Direction::Decreasing,
            indices: vec![a, b],
        };
        return (w, 0);
    }
    if k == 0 {
        let (a, b) = first_pair(sets, idx, |a, b| b & !a != 0);
        let w = ChainWitness {
            direction: Direction::Increasing,
            indices: vec![a, b],
        };
        return (w, 0);
    }
    let union = idx.iter().fold(0, |acc, &i| acc | sets[i]);
    let inter = idx.iter().fold(u64::MAX, |acc, &i| acc & sets[i]);
    let x = (union & !inter).trailing_zeros();
    let (with, without): (Vec<usize>, Vec<usize>) =
        idx.iter().partition(|&&i| sets[i] >> x & 1 == 1);

    if with.len() as u128 > binom(k + l - 1, l - 1) {
        let (mut w, depth) = split(sets, &with, k, l - 1);
        if w.direction == Direction::Decreasing {
            // an l-decreasing chain inside the sets holding x: a set without x
            // removes x from the running intersection
            w.indices.push(without[0]);
        }
        (w, depth + 1)
    } else {
        debug_assert!(without.len() as u128 > binom(k + l - 1, l));
        let (mut w, depth) = split(sets, &without, k - 1, l);
        if w.direction == Direction::Increasing {
            w.indices.push(with[0]);
        }
        (w, depth + 1)
    }
}

fn first_pair(sets: &[u64], idx: &[usize], good: impl Fn(u64, u64) -> bool) -> (usize, usize) {
    for &a in idx {
        for &b in idx {
            if a != b && good(sets[a], sets[b]) {
                return (a, b);
            }
        }
    }
    unreachable!("two distinct sets always admit such a pair")
}

/// Largest `k + l` accepted by [`check_tightness`].
pub const TIGHTNESS_LIMIT: usize = 6;

/// Whether the family of all `l`-subsets of `[k+l]` has neither a
/// `(k+1)`-increasing nor an `(l+1)`-decreasing sequence, by exhaustive
/// search over ordered tuples.
pub fn check_tightness(k: usize, l: usize) -> Result<bool> {
    if k + l > TIGHTNESS_LIMIT {
        return Err(Error::SizeGuard(format!(
            "k + l = {} exceeds the tightness limit of {TIGHTNESS_LIMIT}",
            k + l
        )));
    }
    let family = crate::constructions::choose_family(k + l, l);
    let sets = family.members();
    Ok(!has_chain_of_length(sets, Direction::Increasing, k + 2)
        && !has_chain_of_length(sets, Direction::Decreasing, l + 2))
}

/// Exhaustive search for an ordered tuple of `len` distinct members forming a chain.
pub(crate) fn has_chain_of_length(sets: &[u64], direction: Direction, len: usize) -> bool {
    fn go(sets: &[u64], dir: Direction, acc: u64, used: &mut [bool], left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in 0..sets.len() {
            if used[i] {
                continue;
            }
            let next = match dir {
                Direction::Increasing => acc | sets[i],
                Direction::Decreasing => acc & sets[i],
            };
            if next == acc {
                continue;
            }
            used[i] = true;
            let found = go(sets, dir, next, used, left - 1);
            used[i] = false;
            if found {
                return true;
            }
        }
        false
    }
    if len > sets.len() {
        return false;
    }
    if len == 0 {
        return true;
    }
    let mut used = vec![false; sets.len()];
    (0..sets.len()).any(|i| {
        used[i] = true;
        let found = go(sets, direction, sets[i], &mut used, len - 1);
        used[i] = false;
        found
    })
}
