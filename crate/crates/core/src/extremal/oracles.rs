//! Brute-force checks of finite statements around `S(k, l)`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::binom;
use crate::constructions::k_subsets;
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::family::{Embedding, SetFamily};
use crate::patterns::{generate, PatternKind};
use crate::ramsey::thread_pool;

/// Positions of the set bits of a selection mask.
fn rows_of(selection: u64) -> Vec<u64> {
    (0..64).filter(|&v| selection >> v & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma94Report {
    pub families: usize,
    pub all_embed: bool,
    /// First family, in enumeration order, with none of the three patterns.
    pub counterexample: Option<Vec<String>>,
}

/// Every family of nine distinct subsets of `[4]` contains `Singleton(3)`,
/// `CoSingleton(3)` or `Monotone(3)`.
pub fn lemma94_exhaustive(threads: usize) -> Result<Lemma94Report> {
    let patterns = [
        generate(PatternKind::Singleton(3)),
        generate(PatternKind::CoSingleton(3)),
        generate(PatternKind::Monotone(3)),
    ];
    let selections = k_subsets(16, 9);
    let pool = thread_pool(threads)?;
    let counterexample = pool.install(|| {
        selections.par_iter().find_first(|&&sel| {
            let f = SetFamily::from_raw(4, rows_of(sel));
            patterns.iter().all(|p| find_embedding(&f, p).is_none())
        })
    });
    Ok(Lemma94Report {
        families: selections.len(),
        all_embed: counterexample.is_none(),
        counterexample: counterexample.map(|&sel| SetFamily::from_raw(4, rows_of(sel)).lines()),
    })
}

/// Which of the three conditions holds, with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Theorem4Witness {
    /// `Singleton(k+1)` among members of size at most `l`.
    SmallSingleton(Embedding),
    /// `CoSingleton(l+1)` among members of size at least `l+1`.
    LargeCoSingleton(Embedding),
    /// `H_smaller ⊂ H_larger` with `|H_smaller| <= l < |H_larger|`.
    Inclusion { smaller: usize, larger: usize },
}

impl Theorem4Witness {
    pub fn condition(&self) -> u8 {
        match self {
            Theorem4Witness::SmallSingleton(_) => 1,
            Theorem4Witness::LargeCoSingleton(_) => 2,
            Theorem4Witness::Inclusion { .. } => 3,
        }
    }

    pub fn to_json(&self, k: usize, l: usize) -> serde_json::Value {
        match self {
            Theorem4Witness::SmallSingleton(e) => json!({
                "condition": 1,
                "embedding": e.to_json(&PatternKind::Singleton(k + 1).to_string()),
            }),
            Theorem4Witness::LargeCoSingleton(e) => json!({
                "condition": 2,
                "embedding": e.to_json(&PatternKind::CoSingleton(l + 1).to_string()),
            }),
            Theorem4Witness::Inclusion { smaller, larger } => json!({
                "condition": 3,
                "smaller": smaller + 1,
                "larger": larger + 1,
            }),
        }
    }
}

fn restricted_embedding(
    family: &SetFamily,
    keep: impl Fn(u64) -> bool,
    kind: PatternKind,
) -> Option<Embedding> {
    let indices: Vec<usize> = (0..family.len())
        .filter(|&i| keep(family.members()[i]))
        .collect();
    let sub = SetFamily::from_raw(
        family.universe(),
        indices.iter().map(|&i| family.members()[i]).collect(),
    );
    find_embedding(&sub, &generate(kind)).map(|e| Embedding {
        rows: e.rows.iter().map(|&r| indices[r]).collect(),
        cols: e.cols,
    })
}

/// Evaluates the three conditions in the order 3, 1, 2 without checking the
/// size of the family.
pub fn theorem4_conditions(
    family: &SetFamily,
    k: usize,
    l: usize,
) -> Result<Option<Theorem4Witness>> {
    if family.universe() > k + l {
        return Err(Error::InvalidParameter(format!(
            "the family must live on [k + l] = [{}], got universe {}",
            k + l,
            family.universe()
        )));
    }
    let size = |h: u64| h.count_ones() as usize;
    let m = family.members();
    for (j, &small) in m.iter().enumerate() {
        if size(small) > l {
            continue;
        }
        if let Some(i) = m
            .iter()
            .position(|&big| size(big) > l && small & !big == 0 && small != big)
        {
            return Ok(Some(Theorem4Witness::Inclusion {
                smaller: j,
                larger: i,
            }));
        }
    }
    if let Some(e) = restricted_embedding(family, |h| size(h) <= l, PatternKind::Singleton(k + 1)) {
        return Ok(Some(Theorem4Witness::SmallSingleton(e)));
    }
    if let Some(e) = restricted_embedding(family, |h| size(h) > l, PatternKind::CoSingleton(l + 1))
    {
        return Ok(Some(Theorem4Witness::LargeCoSingleton(e)));
    }
    Ok(None)
}

/// One of the three conditions for a family of more than `C(k+l, l)`
/// subsets of `[k+l]`.
pub fn theorem4_witness(family: &SetFamily, k: usize, l: usize) -> Result<Theorem4Witness> {
    let bound = binom(k + l, l);
    if family.len() as u128 <= bound {
        return Err(Error::BelowBound {
            members: family.len(),
            n: k + l,
            k: l,
            bound,
        });
    }
    theorem4_conditions(family, k, l)?.ok_or_else(|| {
        Error::Soundness(format!(
            "no condition holds for a family of {} sets with k = {k}, l = {l}",
            family.len()
        ))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem4Report {
    pub k: usize,
    pub l: usize,
    pub families: usize,
    /// How many families were settled first by conditions 1, 2 and 3.
    pub by_condition: [usize; 3],
    pub holds: bool,
}

/// Runs [`theorem4_conditions`] on every family of `C(k+l, l) + 1` distinct
/// subsets of `[k+l]`.
pub fn theorem4_exhaustive(k: usize, l: usize, threads: usize) -> Result<Theorem4Report> {
    if k + l > 4 {
        return Err(Error::SizeGuard(format!(
            "condition exhaustion needs k + l <= 4, got {}",
            k + l
        )));
    }
    let n = k + l;
    let m = binom(n, l) as usize + 1;
    let selections = k_subsets(1 << n, m);
    let pool = thread_pool(threads)?;
    let outcomes: Vec<Option<u8>> = pool.install(|| {
        selections
            .par_iter()
            .map(|&sel| {
                let f = SetFamily::from_raw(n, rows_of(sel));
                theorem4_conditions(&f, k, l)
                    .ok()
                    .flatten()
                    .map(|w| w.condition())
            })
            .collect()
    });
    let mut by_condition = [0; 3];
    for c in outcomes.iter().flatten() {
        by_condition[*c as usize - 1] += 1;
    }
    Ok(Theorem4Report {
        k,
        l,
        families: selections.len(),
        by_condition,
        holds: outcomes.iter().all(Option::is_some),
    })
}

/// Largest `cap` accepted by [`skew_pairs_max`].
pub const SKEW_CAP_LIMIT: usize = 6;

/// Longest sequence of pairs `(A_i, B_i)` over `[cap]` with `|A_i| <= l`,
/// `|B_i| <= k`, `A_i ∩ B_i = ∅` and `A_i ∩ B_j ≠ ∅` whenever `i > j`.
pub fn skew_pairs_max(k: usize, l: usize, cap: usize) -> Result<usize> {
    if k > 2 || l > 2 || cap > SKEW_CAP_LIMIT {
        return Err(Error::SizeGuard(format!(
            "skew pairs need k, l <= 2 and cap <= {SKEW_CAP_LIMIT}, got k = {k}, l = {l}, cap = {cap}"
        )));
    }
    let sets_up_to = |s: usize| -> Vec<u64> { (0..=s).flat_map(|i| k_subsets(cap, i)).collect() };
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for a in sets_up_to(l) {
        for b in sets_up_to(k) {
            if a & b == 0 {
                pairs.push((a, b));
            }
        }
    }
    fn longest(candidates: &[(u64, u64)]) -> usize {
        candidates
            .iter()
            .map(|&(_, b)| {
                let rest: Vec<(u64, u64)> = candidates
                    .iter()
                    .copied()
                    .filter(|&(a, _)| a & b != 0)
                    .collect();
                1 + longest(&rest)
            })
            .max()
            .unwrap_or(0)
    }
    // A_1 meets no earlier B, so only B_1 matters, and up to relabelling
    // it is {1..|B_1|}
    let best = (0..=k.min(cap))
        .map(|sb| {
            let b = (1u64 << sb) - 1;
            let rest: Vec<(u64, u64)> =
                pairs.iter().copied().filter(|&(x, _)| x & b != 0).collect();
            1 + longest(&rest)
        })
        .max()
        .unwrap_or(1);
    Ok(best)
}

/// How far past `k + l` the universe of [`furedi_tuza_exhaustive`] may go.
pub const FUREDI_TUZA_SLACK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FurediTuzaReport {
    pub k: usize,
    pub l: usize,
    pub cap: usize,
    pub families: usize,
    pub holds: bool,
}

/// Whether every family of `C(k+l, l) + 1` distinct sets of size at most `l`
/// over `[cap]` contains `Singleton(k+1)`.
pub fn furedi_tuza_exhaustive(
    k: usize,
    l: usize,
    cap: Option<usize>,
    threads: usize,
) -> Result<FurediTuzaReport> {
    let cap = cap.unwrap_or(k + l + FUREDI_TUZA_SLACK);
    if k + l > 4 || cap > k + l + FUREDI_TUZA_SLACK {
        return Err(Error::SizeGuard(format!(
            "needs k + l <= 4 and cap <= k + l + {FUREDI_TUZA_SLACK}, got k = {k}, l = {l}, cap = {cap}"
        )));
    }
    let small: Vec<u64> = (0..=l).flat_map(|i| k_subsets(cap, i)).collect();
    let m = binom(k + l, l) as usize + 1;
    let pattern = generate(PatternKind::Singleton(k + 1));
    let selections = k_subsets(small.len(), m);
    let pool = thread_pool(threads)?;
    let holds = pool.install(|| {
        selections.par_iter().all(|&sel| {
            let rows: Vec<u64> = rows_of(sel)
                .into_iter()
                .map(|i| small[i as usize])
                .collect();
            find_embedding(&SetFamily::from_raw(cap, rows), &pattern).is_some()
        })
    });
    Ok(FurediTuzaReport {
        k,
        l,
        cap,
        families: selections.len(),
        holds,
    })
}
