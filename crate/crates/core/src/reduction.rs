//! Reduced families.
//!
//! An element is *useful* when deleting it would merge two members, i.e.
//! some pair of members differs in that element only. A family is reduced
//! when every element of its universe is useful. Deleting useless elements
//! keeps members distinct, and any occurrence of a pattern in the reduced
//! family lifts back to the original one through the kept columns.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{all_distinct, Element, Embedding, SetFamily};

/// Mask of elements whose deletion merges no two members.
pub fn useless_elements(family: &SetFamily) -> u64 {
    let members: HashSet<u64> = family.members().iter().copied().collect();
    let mut useless = 0;
    for x in 0..family.universe() {
        let bit = 1u64 << x;
        if !family
            .members()
            .iter()
            .any(|m| members.contains(&(m ^ bit)))
        {
            useless |= bit;
        }
    }
    useless
}

pub fn is_reduced(family: &SetFamily) -> bool {
    useless_elements(family) == 0
}

/// A reduced family together with the map back to the original elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub family: SetFamily,
    /// Original elements in the order they were deleted.
    pub deleted: Vec<Element>,
    /// `kept[p]` is the original 0-based position of reduced column `p`.
    pub kept: Vec<usize>,
}

impl Reduction {
    /// Maps an embedding into the reduced family back onto the original family.
    pub fn lift(&self, e: &Embedding) -> Embedding {
        Embedding {
            rows: e.rows.clone(),
            cols: e.cols.iter().map(|&c| self.kept[c]).collect(),
        }
    }
}

fn delete_column(row: u64, pos: usize) -> u64 {
    let low = row & ((1u64 << pos) - 1);
    let high = (row >> (pos + 1)) << pos;
    low | high
}

/// Deletes the smallest useless element until none is left.
pub fn reduce(family: &SetFamily) -> Reduction {
    let mut members = family.members().to_vec();
    let mut kept: Vec<usize> = (0..family.universe()).collect();
    let mut deleted = Vec::new();
    loop {
        let current = SetFamily::from_raw(kept.len(), members.clone());
        let useless = useless_elements(&current);
        if useless == 0 {
            break;
        }
        let pos = useless.trailing_zeros() as usize;
        deleted.push(Element::from_position(kept[pos]));
        kept.remove(pos);
        for m in &mut members {
            *m = delete_column(*m, pos);
        }
    }
    Reduction {
        family: SetFamily::from_raw(kept.len(), members),
        deleted,
        kept,
    }
}

/// Whether a reduced family spans at most `m - 1` elements. A degenerate
/// empty family over an empty universe passes.
pub fn kogan_bound_check(family: &SetFamily) -> Result<bool> {
    if !is_reduced(family) {
        return Err(Error::NotReduced);
    }
    Ok(family.universe() < family.len().max(1))
}

/// `q + 1` member indices whose traces on `elems` are pairwise distinct,
/// scanning members in index order.
pub fn distinct_traces(family: &SetFamily, elems: &[usize]) -> Result<Vec<usize>> {
    if !is_reduced(family) {
        return Err(Error::NotReduced);
    }
    if !all_distinct(elems) {
        return Err(Error::RepeatedIndex);
    }
    if let Some(&bad) = elems.iter().find(|&&e| e >= family.universe()) {
        return Err(Error::ElementOutOfRange {
            element: bad + 1,
            universe: family.universe(),
        });
    }
    let mask = elems.iter().fold(0u64, |acc, &e| acc | 1 << e);
    let want = elems.len() + 1;
    let mut seen = HashSet::new();
    let mut picked = Vec::with_capacity(want);
    for (i, &m) in family.members().iter().enumerate() {
        if seen.insert(m & mask) {
            picked.push(i);
            if picked.len() == want {
                return Ok(picked);
            }
        }
    }
    Err(Error::Soundness(format!(
        "a reduced family yielded only {} distinct traces on {} elements",
        picked.len(),
        elems.len()
    )))
}

/// Two members that differ in one column only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MergePair {
    /// Member without the element.
    pub zero_side: usize,
    /// Member with the element.
    pub one_side: usize,
}

impl MergePair {
    pub fn ordered(&self) -> (usize, usize) {
        (
            self.zero_side.min(self.one_side),
            self.zero_side.max(self.one_side),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergePairs {
    /// 0-based column.
    pub column: usize,
    /// Sorted by the smaller index of each pair.
    pub pairs: Vec<MergePair>,
}

/// Every pair of members that becomes equal once column `x` is deleted.
pub fn merge_pairs(family: &SetFamily, x: usize) -> Result<MergePairs> {
    if x >= family.universe() {
        return Err(Error::ElementOutOfRange {
            element: x + 1,
            universe: family.universe(),
        });
    }
    let index: HashMap<u64, usize> = family
        .members()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let bit = 1u64 << x;
    let mut pairs: Vec<MergePair> = family
        .members()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m & bit == 0)
        .filter_map(|(i, &m)| {
            index.get(&(m | bit)).map(|&j| MergePair {
                zero_side: i,
                one_side: j,
            })
        })
        .collect();
    pairs.sort_by_key(|p| p.ordered());
    Ok(MergePairs { column: x, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(lines: &[&str]) -> SetFamily {
        SetFamily::parse(&lines.join("\n")).unwrap()
    }

    fn matrix_f() -> SetFamily {
        fam(&[
            "1000", "0100", "1101", "1110", "0011", "0110", "1001", "1100",
        ])
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&fam(&["0", "1"])));
        let f = fam(&["10", "11"]);
        assert!(!is_reduced(&f));
        assert_eq!(useless_elements(&f), 0b01);
    }

    #[test]
    fn reduce_examples() {
        let r = reduce(&fam(&["10", "11"]));
        assert_eq!(r.family.lines(), vec!["0", "1"]);
        assert_eq!(r.deleted, vec![Element::new(1).unwrap()]);
        assert_eq!(r.kept, vec![1]);
        assert!(is_reduced(&r.family));

        let already = fam(&["00", "10", "01", "11"]);
        let r = reduce(&already);
        assert_eq!(r.family, already);
        assert!(r.deleted.is_empty());
    }

    #[test]
    fn nine_subsets_of_four_are_reduced() {
        // first nine subsets of [4] in binary order
        let f = SetFamily::new(4, (0..9).collect()).unwrap();
        assert!(is_reduced(&f));
        assert_eq!(reduce(&f).family, f);
        assert!(kogan_bound_check(&f).unwrap());
    }

    #[test]
    fn kogan_examples() {
        assert!(kogan_bound_check(&fam(&["0", "1"])).unwrap());
        assert!(matches!(
            kogan_bound_check(&fam(&["10", "11"])),
            Err(Error::NotReduced)
        ));
        assert!(kogan_bound_check(&SetFamily::empty(0).unwrap()).unwrap());
    }

    #[test]
    fn traces() {
        let f = fam(&["00", "10", "01", "11"]);
        assert_eq!(distinct_traces(&f, &[]).unwrap(), vec![0]);
        assert_eq!(distinct_traces(&f, &[0, 1]).unwrap(), vec![0, 1, 2]);

        let f = matrix_f();
        assert!(is_reduced(&f));
        let picked = distinct_traces(&f, &[0, 1, 2]).unwrap();
        assert_eq!(picked, vec![0, 1, 2, 3]);
        let traces: HashSet<u64> = picked.iter().map(|&i| f.members()[i] & 0b111).collect();
        assert_eq!(traces.len(), 4);
        assert!(distinct_traces(&fam(&["10", "11"]), &[0]).is_err());
    }

    #[test]
    fn merge_pair_examples() {
        let mp = merge_pairs(&fam(&["0", "1"]), 0).unwrap();
        assert_eq!(
            mp.pairs,
            vec![MergePair {
                zero_side: 0,
                one_side: 1
            }]
        );
        assert!(merge_pairs(&fam(&["10", "01"]), 0)
            .unwrap()
            .pairs
            .is_empty());

        // rows of F differing only in column 4
        let mp = merge_pairs(&matrix_f(), 3).unwrap();
        let ordered: Vec<_> = mp.pairs.iter().map(|p| p.ordered()).collect();
        assert_eq!(ordered, vec![(0, 6), (2, 7)]);
        assert_eq!(mp.pairs[1].zero_side, 7);
        assert_eq!(mp.pairs[1].one_side, 2);
        assert!(merge_pairs(&matrix_f(), 4).is_err());
    }
}
