//! Exact values of `S(k, l)`, the largest size of a family with no
//! `Singleton(k+1)`, no `CoSingleton(l+1)` and no `Monotone(min(k,l)+1)`,
//! and exhaustive checks of related finite statements.

mod canon;
mod oracles;
mod search;

use serde_json::json;

pub use canon::{canonical_form, CanonForm};
pub use oracles::{
    furedi_tuza_exhaustive, lemma94_exhaustive, skew_pairs_max, theorem4_conditions,
    theorem4_exhaustive, theorem4_witness, FurediTuzaReport, Lemma94Report, Theorem4Report,
    Theorem4Witness, FUREDI_TUZA_SLACK, SKEW_CAP_LIMIT,
};

use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::family::{PatternMatrix, SetFamily};
use crate::patterns::{generate, PatternKind};
use crate::ramsey::{theorem3_bound, thread_pool};
use search::{decide, Avoider, Counters, Outcome};

/// Largest `k` and `l` accepted by [`search_s`].
pub const SEARCH_LIMIT: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalQuery {
    pub k: usize,
    pub l: usize,
}

impl ExtremalQuery {
    pub fn new(k: usize, l: usize) -> Self {
        ExtremalQuery { k, l }
    }

    pub fn targets(&self) -> [PatternKind; 3] {
        [
            PatternKind::Singleton(self.k + 1),
            PatternKind::CoSingleton(self.l + 1),
            PatternKind::Monotone(self.k.min(self.l) + 1),
        ]
    }

    pub fn patterns(&self) -> Vec<PatternMatrix> {
        self.targets().into_iter().map(generate).collect()
    }

    /// Whether `family` contains none of the target patterns.
    pub fn avoided_by(&self, family: &SetFamily) -> bool {
        self.patterns()
            .iter()
            .all(|p| find_embedding(family, p).is_none())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cap on accepted search nodes; `None` searches to the end.
    pub budget_nodes: Option<u64>,
    pub threads: usize,
    /// Number of members fixed before the tree is split into parallel branches.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget_nodes: None,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            split_depth: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub query: ExtremalQuery,
    /// Exact value when the search ran to completion.
    pub value: Option<usize>,
    /// Lower and upper bound otherwise; the upper bound is the Ramsey-number bound when known.
    pub bracket: Option<(usize, Option<u128>)>,
    /// An avoiding family of the largest size found, reduced.
    pub witness: SetFamily,
    pub nodes: u64,
    pub canonical_rejects: u64,
    /// Largest universe searched.
    pub universe_cap: usize,
    pub exhausted: bool,
}

impl ExtremalResult {
    pub fn lower_bound(&self) -> usize {
        self.value
            .unwrap_or_else(|| self.bracket.map_or(0, |b| b.0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = json!({
            "k": self.query.k,
            "l": self.query.l,
        });
        let obj = out.as_object_mut().unwrap();
        match (self.value, self.bracket) {
            (Some(v), _) => {
                obj.insert("value".into(), json!(v));
            }
            (None, Some((lo, hi))) => {
                obj.insert(
                    "bracket".into(),
                    json!([lo, hi.and_then(|h| u64::try_from(h).ok())]),
                );
            }
            (None, None) => {}
        }
        obj.insert("nodes".into(), json!(self.nodes));
        obj.insert("canonical_rejects".into(), json!(self.canonical_rejects));
        obj.insert("universe_cap".into(), json!(self.universe_cap));
        obj.insert("exhausted".into(), json!(self.exhausted));
        obj.insert("witness".into(), json!(self.witness.lines()));
        out
    }
}

/// Computes `S(k, l)` by deciding, for `t = 1, 2, ...`, whether some reduced
/// avoider of `t` members exists over `[u]` for a `u < t`. The first `t`
/// with no such family gives `S(k, l) = t - 1`.
pub fn search_s(query: ExtremalQuery, options: &SearchOptions) -> Result<ExtremalResult> {
    if query.k > SEARCH_LIMIT || query.l > SEARCH_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "search supports k, l <= {SEARCH_LIMIT}, got k = {}, l = {}",
            query.k, query.l
        )));
    }
    let patterns = query.patterns();
    let budget = options.budget_nodes.unwrap_or(u64::MAX);
    let pool = thread_pool(options.threads)?;
    let mut totals = Counters::default();
    let mut witness = SetFamily::empty(0)?;
    let mut universe_cap = 0;
    let mut avoiders: Vec<Avoider> = Vec::new();
    let mut t = 1;
    let mut over_budget = false;
    'sizes: loop {
        let mut found = None;
        for u in 0..t {
            if (1u128 << u) < t as u128 {
                continue;
            }
            while avoiders.len() <= u {
                avoiders.push(Avoider::new(&patterns, avoiders.len()));
            }
            universe_cap = universe_cap.max(u);
            let allowance = budget.saturating_sub(totals.nodes);
            let (outcome, c) =
                pool.install(|| decide(&avoiders[u], u, t, options.split_depth, allowance));
            totals += c;
            match outcome {
                Outcome::Found(rows) => {
                    found = Some(SetFamily::new(u, rows)?);
                    break;
                }
                Outcome::Absent => {}
                Outcome::OverBudget => {
                    over_budget = true;
                    break 'sizes;
                }
            }
        }
        match found {
            Some(f) => {
                witness = f;
                t += 1;
            }
            None => break,
        }
    }
    if !query.avoided_by(&witness) {
        return Err(Error::Soundness(format!(
            "search witness of size {} contains a target pattern",
            witness.len()
        )));
    }
    let lower = witness.len();
    Ok(ExtremalResult {
        query,
        value: (!over_budget).then_some(lower),
        bracket: over_budget.then(|| (lower, theorem3_bound(query.k, query.l))),
        witness,
        nodes: totals.nodes,
        canonical_rejects: totals.rejects,
        universe_cap,
        exhausted: !over_budget,
    })
}
