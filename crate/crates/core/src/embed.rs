//! Searching a family for an occurrence of a pattern matrix.
//!
//! Pattern rows are assigned to members in pattern order, members tried in
//! ascending index order. After each assignment every pattern column keeps a
//! mask of elements still compatible with the rows placed so far, and a
//! bipartite matching between columns and elements decides whether the
//! partial assignment can still be completed. The first complete assignment
//! reached therefore has the lexicographically least row map; its column
//! map is then fixed greedily, again under the matching test.

use crate::error::{Error, Result};
use crate::family::{Cell, Embedding, PatternMatrix, SetFamily};

/// Largest `P(m, a) * P(u, b)` that [`count_embeddings`] agrees to enumerate.
pub const COUNT_LIMIT: u128 = 1_000_000_000;

struct Search<'a> {
    family: &'a SetFamily,
    pattern: &'a PatternMatrix,
    /// Elements of the union of all members; pattern columns map into it.
    union: u64,
    row_ones: Vec<usize>,
    row_zeros: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(family: &'a SetFamily, pattern: &'a PatternMatrix) -> Self {
        let union = family.members().iter().fold(0, |acc, m| acc | m);
        let (row_ones, row_zeros) = (0..pattern.rows())
            .map(|a| {
                let (o, z) = pattern.row_masks(a);
                (o.count_ones() as usize, z.count_ones() as usize)
            })
            .unzip();
        Search {
            family,
            pattern,
            union,
            row_ones,
            row_zeros,
        }
    }

    fn row_fits(&self, a: usize, set: u64) -> bool {
        let inside = (set & self.union).count_ones() as usize;
        let outside = (self.union & !set).count_ones() as usize;
        inside >= self.row_ones[a] && outside >= self.row_zeros[a]
    }

    /// Column masks after placing pattern row `a` on `set`.
    fn narrow(&self, compat: &[u64], a: usize, set: u64) -> Vec<u64> {
        compat
            .iter()
            .enumerate()
            .map(|(b, &mask)| match self.pattern.get(a, b) {
                Cell::One => mask & set,
                Cell::Zero => mask & !set,
                Cell::Any => mask,
            })
            .collect()
    }
}

/// True when the columns can be given pairwise distinct elements from their masks.
pub(crate) fn has_matching(compat: &[u64]) -> bool {
    if compat.contains(&0) {
        return false;
    }
    // owner[e] = column currently holding element e
    let mut owner = [usize::MAX; 64];
    for col in 0..compat.len() {
        let mut seen = 0u64;
        if !augment(col, compat, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(col: usize, compat: &[u64], owner: &mut [usize; 64], seen: &mut u64) -> bool {
    let mut cand = compat[col] & !*seen;
    while cand != 0 {
        let e = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        *seen |= 1 << e;
        if owner[e] == usize::MAX || augment(owner[e], compat, owner, seen) {
            owner[e] = col;
            return true;
        }
    }
    false
}

fn least_column_map(compat: &[u64]) -> Option<Vec<usize>> {
    let mut cols = Vec::with_capacity(compat.len());
    let mut used = 0u64;
    for b in 0..compat.len() {
        let mut cand = compat[b] & !used;
        let mut chosen = None;
        while cand != 0 {
            let e = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let rest: Vec<u64> = compat[b + 1..]
                .iter()
                .map(|&m| m & !used & !(1 << e))
                .collect();
            if has_matching(&rest) {
                chosen = Some(e);
                break;
            }
        }
        let e = chosen?;
        used |= 1 << e;
        cols.push(e);
    }
    Some(cols)
}

/// Finds the lexicographically least embedding of `pattern` into `family`,
/// ordered by row map first and column map second.
pub fn find_embedding(family: &SetFamily, pattern: &PatternMatrix) -> Option<Embedding> {
    if pattern.rows() > family.len() || pattern.cols() > family.universe() {
        return None;
    }
    let search = Search::new(family, pattern);
    let compat = vec![search.union; pattern.cols()];
    let mut rows = Vec::with_capacity(pattern.rows());
    let mut used = vec![false; family.len()];
    let cols = find_rows(&search, &compat, &mut rows, &mut used)?;
    Some(Embedding { rows, cols })
}

fn find_rows(
    search: &Search<'_>,
    compat: &[u64],
    rows: &mut Vec<usize>,
    used: &mut [bool],
) -> Option<Vec<usize>> {
    let a = rows.len();
    if a == search.pattern.rows() {
        return least_column_map(compat);
    }
    for (i, &set) in search.family.members().iter().enumerate() {
        if used[i] || !search.row_fits(a, set) {
            continue;
        }
        let next = search.narrow(compat, a, set);
        if !has_matching(&next) {
            continue;
        }
        used[i] = true;
        rows.push(i);
        if let Some(cols) = find_rows(search, &next, rows, used) {
            return Some(cols);
        }
        rows.pop();
        used[i] = false;
    }
    None
}

/// Whether `pattern` can be found in `family`.
pub fn embeds(family: &SetFamily, pattern: &PatternMatrix) -> bool {
    find_embedding(family, pattern).is_some()
}

fn falling(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).fold(1u128, |acc, x| acc.saturating_mul(x as u128))
}

/// Number of `(row map, column map)` pairs satisfying the pattern, by
/// exhaustive enumeration.
pub fn count_embeddings(family: &SetFamily, pattern: &PatternMatrix) -> Result<u128> {
    if pattern.rows() > family.len() || pattern.cols() > family.universe() {
        return Ok(0);
    }
    let search = Search::new(family, pattern);
    let u = search.union.count_ones() as usize;
    let work = falling(family.len(), pattern.rows()).saturating_mul(falling(u, pattern.cols()));
    if work > COUNT_LIMIT {
        return Err(Error::SizeGuard(format!(
            "P({}, {}) * P({}, {}) = {work} assignments exceeds the limit of {COUNT_LIMIT}",
            family.len(),
            pattern.rows(),
            u,
            pattern.cols()
        )));
    }
    let compat = vec![search.union; pattern.cols()];
    let mut used = vec![false; family.len()];
    Ok(count_rows(&search, &compat, 0, &mut used))
}

fn count_rows(search: &Search<'_>, compat: &[u64], a: usize, used: &mut [bool]) -> u128 {
    if a == search.pattern.rows() {
        return count_matchings(compat, 0, 0);
    }
    let mut total = 0;
    for (i, &set) in search.family.members().iter().enumerate() {
        if used[i] || !search.row_fits(a, set) {
            continue;
        }
        let next = search.narrow(compat, a, set);
        if !has_matching(&next) {
            continue;
        }
        used[i] = true;
        total += count_rows(search, &next, a + 1, used);
        used[i] = false;
    }
    total
}

fn count_matchings(compat: &[u64], b: usize, used: u64) -> u128 {
    if b == compat.len() {
        return 1;
    }
    let mut cand = compat[b] & !used;
    let mut total = 0;
    while cand != 0 {
        let e = cand.trailing_zeros();
        cand &= cand - 1;
        total += count_matchings(compat, b + 1, used | 1 << e);
    }
    total
}
