//! Canonical form of a set of bit rows under column permutations.
//!
//! Columns are split into an ordered partition by iterated refinement:
//! rows are classed by how many columns of each cell they hold, columns by
//! how many rows of each class hold them, until nothing splits. When a
//! non-singleton cell remains, each of its columns is individualized in
//! turn. Every leaf orders the columns completely; the canonical form is the
//! least sorted row vector over all leaves. Columns with equal column
//! vectors are interchangeable, so only one per such class is individualized.

/// Sorted rows after the canonical relabelling, plus the relabelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonForm {
    pub rows: Vec<u64>,
    /// `perm[c]` is the new position of original column `c`.
    pub perm: Vec<u8>,
}

impl CanonForm {
    /// Image of an original row under the canonical relabelling.
    pub fn map_row(&self, row: u64) -> u64 {
        apply(&self.perm, row)
    }
}

fn apply(perm: &[u8], row: u64) -> u64 {
    let mut out = 0;
    let mut r = row;
    while r != 0 {
        let c = r.trailing_zeros() as usize;
        r &= r - 1;
        out |= 1 << perm[c];
    }
    out
}

pub fn canonical_form(rows: &[u64], universe: usize) -> CanonForm {
    debug_assert!(rows.len() <= 64);
    let colvec: Vec<u64> = (0..universe)
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(_, &r)| r >> c & 1 == 1)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let cells = vec![(0..universe as u8).collect::<Vec<u8>>()];
    let mut best: Option<CanonForm> = None;
    let mut scratch = Vec::with_capacity(rows.len());
    search(rows, &colvec, cells, &mut best, &mut scratch);
    best.unwrap_or(CanonForm {
        rows: {
            let mut r = rows.to_vec();
            r.sort_unstable();
            r
        },
        perm: Vec::new(),
    })
}

fn search(
    rows: &[u64],
    colvec: &[u64],
    mut cells: Vec<Vec<u8>>,
    best: &mut Option<CanonForm>,
    scratch: &mut Vec<u64>,
) {
    refine(rows, colvec, &mut cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0u8; colvec.len()];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0] as usize] = pos as u8;
        }
        scratch.clear();
        scratch.extend(rows.iter().map(|&r| apply(&perm, r)));
        scratch.sort_unstable();
        let better = match best {
            None => true,
            Some(b) => scratch.as_slice() < b.rows.as_slice(),
        };
        if better {
            *best = Some(CanonForm {
                rows: scratch.clone(),
                perm,
            });
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<u64> = Vec::with_capacity(cell.len());
    for &v in cell {
        if tried.contains(&colvec[v as usize]) {
            continue;
        }
        tried.push(colvec[v as usize]);
        let rest: Vec<u8> = cell.iter().copied().filter(|&c| c != v).collect();
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(rest);
        next.extend_from_slice(&cells[target + 1..]);
        search(rows, colvec, next, best, scratch);
    }
}

/// Splits cells until the partition is equitable.
fn refine(rows: &[u64], colvec: &[u64], cells: &mut Vec<Vec<u8>>) {
    let mut sig: Vec<(Vec<u8>, usize)> = Vec::with_capacity(rows.len());
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |acc, &x| acc | 1 << x))
            .collect();
        sig.clear();
        for (i, &r) in rows.iter().enumerate() {
            let s: Vec<u8> = masks.iter().map(|&m| (r & m).count_ones() as u8).collect();
            sig.push((s, i));
        }
        sig.sort_unstable();
        // row classes as row masks, in signature order
        let mut classes: Vec<u64> = Vec::new();
        for (idx, (s, i)) in sig.iter().enumerate() {
            if idx == 0 || sig[idx - 1].0 != *s {
                classes.push(0);
            }
            *classes.last_mut().unwrap() |= 1 << i;
        }
        if classes.len() == 1 && cells.len() == 1 && cells[0].len() <= 1 {
            return;
        }
        let mut changed = false;
        let mut next: Vec<Vec<u8>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, u8)> = cell
                .iter()
                .map(|&c| {
                    let v = colvec[c as usize];
                    let key = classes
                        .iter()
                        .map(|&k| (v & k).count_ones() as u8)
                        .collect();
                    (key, c)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for idx in 1..=keyed.len() {
                if idx == keyed.len() || keyed[idx].0 != keyed[start].0 {
                    next.push(keyed[start..idx].iter().map(|(_, c)| *c).collect());
                    start = idx;
                }
            }
            if keyed.first().map(|f| &f.0) != keyed.last().map(|l| &l.0) {
                changed = true;
            }
        }
        *cells = next;
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_min(rows: &[u64], u: usize) -> Vec<u64> {
        fn perms(n: usize) -> Vec<Vec<u8>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, (n - 1) as u8);
                    out.push(q);
                }
            }
            out
        }
        perms(u)
            .into_iter()
            .map(|p| {
                let mut r: Vec<u64> = rows.iter().map(|&x| apply(&p, x)).collect();
                r.sort_unstable();
                r
            })
            .min()
            .unwrap()
    }

    fn permute(rows: &[u64], perm: &[u8]) -> Vec<u64> {
        rows.iter().map(|&r| apply(perm, r)).collect()
    }

    #[test]
    fn invariant_under_column_permutations() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let u = rng.gen_range(1..=6);
            let m = rng.gen_range(0..=10.min(1 << u));
            let mut rows: Vec<u64> = Vec::new();
            while rows.len() < m {
                let r = rng.gen_range(0..1u64 << u);
                if !rows.contains(&r) {
                    rows.push(r);
                }
            }
            let c = canonical_form(&rows, u);
            let mut perm: Vec<u8> = (0..u as u8).collect();
            perm.shuffle(&mut rng);
            let mut shuffled = permute(&rows, &perm);
            shuffled.shuffle(&mut rng);
            assert_eq!(canonical_form(&shuffled, u).rows, c.rows);
            // the form is a relabelling of the input
            let mut mapped: Vec<u64> = rows.iter().map(|&r| c.map_row(r)).collect();
            mapped.sort_unstable();
            assert_eq!(mapped, c.rows);
        }
    }

    #[test]
    fn separates_non_isomorphic_families() {
        // canonical forms agree exactly when the brute-force minima agree
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let u = 4;
        let mut samples = Vec::new();
        for _ in 0..150 {
            let m = rng.gen_range(1..=6);
            let mut rows: Vec<u64> = Vec::new();
            while rows.len() < m {
                let r = rng.gen_range(0..1u64 << u);
                if !rows.contains(&r) {
                    rows.push(r);
                }
            }
            samples.push((canonical_form(&rows, u).rows, brute_min(&rows, u)));
        }
        for a in &samples {
            for b in &samples {
                assert_eq!(a.0 == b.0, a.1 == b.1);
            }
        }
    }

    #[test]
    fn twin_columns() {
        let rows = vec![0b0000, 0b1111, 0b0011];
        let c = canonical_form(&rows, 4);
        assert_eq!(c.rows.len(), 3);
        assert_eq!(canonical_form(&[0b1100, 0b1111, 0], 4).rows, c.rows);
    }
}
