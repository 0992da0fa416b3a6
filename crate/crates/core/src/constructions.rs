//! Families that avoid the named patterns, each with its claimed size.

use serde::Serialize;

use crate::binom;
use crate::embed::find_embedding;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::patterns::{generate, PatternKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedConstruction {
    pub name: String,
    pub parameters: Vec<usize>,
    pub family: SetFamily,
    pub claimed_size: u128,
    pub avoided: Vec<PatternKind>,
}

/// Largest `n` accepted by [`construct_choose`].
pub const CHOOSE_LIMIT: usize = 12;
/// Largest `l` accepted by [`construct_prop2`].
pub const PROP2_LIMIT: usize = 5;

/// All `k`-subsets of `[n]` in lexicographic order, as bit rows.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for e in start..n {
            if n - e < left {
                break;
            }
            go(e + 1, n, left - 1, acc | 1 << e, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, 0, &mut out);
    }
    out
}

pub(crate) fn choose_family(n: usize, l: usize) -> SetFamily {
    SetFamily::from_raw(n, k_subsets(n, l))
}

/// All `l`-subsets of `[n]`. Viewed with `n = k + l` it avoids both the
/// `(k+1)`-increasing and the `(l+1)`-decreasing template.
pub fn construct_choose(n: usize, l: usize) -> Result<NamedConstruction> {
    if n > CHOOSE_LIMIT || l > n {
        return Err(Error::InvalidParameter(format!(
            "choose needs l <= n <= {CHOOSE_LIMIT}, got n = {n}, l = {l}"
        )));
    }
    let k = n - l;
    Ok(NamedConstruction {
        name: "choose".into(),
        parameters: vec![n, l],
        family: choose_family(n, l),
        claimed_size: binom(n, l),
        avoided: vec![
            PatternKind::IncreasingTemplate(k + 1),
            PatternKind::DecreasingTemplate(l + 1),
        ],
    })
}

/// Eight sets over four elements with no singleton, co-singleton or
/// monotone matrix of order 3.
pub const MATRIX_F: [&str; 8] = [
    "1000", "0100", "1101", "1110", "0011", "0110", "1001", "1100",
];

pub fn construct_f() -> NamedConstruction {
    let family = SetFamily::parse(&MATRIX_F.join("\n")).expect("F is well formed");
    NamedConstruction {
        name: "F".into(),
        parameters: vec![],
        family,
        claimed_size: 8,
        avoided: vec![
            PatternKind::Singleton(3),
            PatternKind::CoSingleton(3),
            PatternKind::Monotone(3),
        ],
    }
}

/// The classes of [`construct_prop2`], as bit rows over `[2l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop2Classes {
    /// `A_0, ..., A_{l-2}`.
    pub a: Vec<Vec<u64>>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

pub fn prop2_classes(l: usize) -> Result<Prop2Classes> {
    if !(2..=PROP2_LIMIT).contains(&l) {
        return Err(Error::InvalidParameter(format!(
            "prop2 needs 2 <= l <= {PROP2_LIMIT}, got {l}"
        )));
    }
    let n = 2 * l;
    let top = 1u64 << (n - 1); // element 2l
    let second = 1u64 << (n - 2); // element 2l - 1
    let one = 1u64; // element 1
    let below = |limit: usize| (1u64 << limit) - 1;

    // A_i: (i+1)-sets holding 2l whose rest is an i-subset of [l+i-1]
    let a: Vec<Vec<u64>> = (0..=l - 2)
        .map(|i| {
            k_subsets(n, i + 1)
                .into_iter()
                .filter(|&h| h & top != 0 && (h & !top) & !below(l + i - 1) == 0)
                .collect()
        })
        .collect();
    let b = k_subsets(n, l)
        .into_iter()
        .filter(|&h| h & one != 0 && h & second == 0 && h & top != 0)
        .collect();
    let c = k_subsets(n - 1, l);
    let d = k_subsets(n, l + 1)
        .into_iter()
        .filter(|&h| h & one != 0 && h & top != 0)
        .collect();
    Ok(Prop2Classes { a, b, c, d })
}

/// The family `A_0 ∪ ... ∪ A_{l-2} ∪ B ∪ C ∪ D` over `[2l]`, of size
/// `C(2l, l) + C(2l-3, l-1)`, avoiding the three patterns of order `l + 1`.
pub fn construct_prop2(l: usize) -> Result<NamedConstruction> {
    let Prop2Classes { a, b, c, d } = prop2_classes(l)?;
    let members: Vec<u64> = a.into_iter().flatten().chain(b).chain(c).chain(d).collect();
    let claimed_size = binom(2 * l, l) + binom(2 * l - 3, l - 1);
    if members.len() as u128 != claimed_size {
        return Err(Error::Soundness(format!(
            "prop2({l}) built {} members, expected {claimed_size}",
            members.len()
        )));
    }
    let family = SetFamily::new(2 * l, members)?;
    Ok(NamedConstruction {
        name: "prop2".into(),
        parameters: vec![l],
        family,
        claimed_size,
        avoided: vec![
            PatternKind::Singleton(l + 1),
            PatternKind::CoSingleton(l + 1),
            PatternKind::Monotone(l + 1),
        ],
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub passed: bool,
    /// Offending occurrence, 1-based, when an avoidance claim fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub size: usize,
    pub checks: Vec<ClaimCheck>,
    pub passed: bool,
}

/// Re-checks the size and every avoidance claim of a construction.
pub fn verify_construction(c: &NamedConstruction) -> VerificationReport {
    let mut checks = vec![ClaimCheck {
        claim: format!("size = {}", c.claimed_size),
        passed: c.family.len() as u128 == c.claimed_size,
        witness: None,
    }];
    for &kind in &c.avoided {
        let found = find_embedding(&c.family, &generate(kind));
        checks.push(ClaimCheck {
            claim: format!("avoids {kind}"),
            passed: found.is_none(),
            witness: found.map(|e| e.to_json(&kind.to_string())),
        });
    }
    VerificationReport {
        name: c.name.clone(),
        size: c.family.len(),
        passed: checks.iter().all(|x| x.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_examples() {
        let c = construct_choose(2, 1).unwrap();
        assert_eq!(c.family.lines(), vec!["10", "01"]);
        assert_eq!(c.claimed_size, 2);
        let c = construct_choose(4, 2).unwrap();
        assert_eq!(c.family.len(), 6);
        assert_eq!(
            c.family.lines(),
            vec!["1100", "1010", "1001", "0110", "0101", "0011"]
        );
        let c = construct_choose(3, 0).unwrap();
        assert_eq!(c.family.lines(), vec!["000"]);
        assert!(construct_choose(13, 2).is_err());
        assert!(construct_choose(3, 4).is_err());
    }

    #[test]
    fn f_rows() {
        let f = construct_f();
        assert_eq!(f.family.len(), 8);
        assert_eq!(f.family.incidence_row(2).unwrap(), "1101");
        assert!(verify_construction(&f).passed);
    }

    #[test]
    fn corrupted_f_fails() {
        let f = construct_f();
        // flipping the last bit of row 8 (1100 -> 1101) duplicates row 3;
        // flip each bit of each row and keep the distinct results
        let mut failures = 0;
        let mut tried = 0;
        for r in 0..8 {
            for bit in 0..4 {
                let mut members = f.family.members().to_vec();
                members[r] ^= 1 << bit;
                let Ok(family) = SetFamily::new(4, members) else {
                    continue;
                };
                tried += 1;
                let mutated = NamedConstruction {
                    family,
                    ..f.clone()
                };
                if !verify_construction(&mutated).passed {
                    failures += 1;
                }
            }
        }
        assert!(tried > 0);
        // at least one mutation must introduce a pattern
        assert!(failures > 0);
    }

    #[test]
    fn prop2_sizes() {
        let Prop2Classes { a, b, c, d } = prop2_classes(3).unwrap();
        let sizes: Vec<usize> = a.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3]);
        assert_eq!((b.len(), c.len(), d.len()), (3, 10, 6));
        assert_eq!(construct_prop2(3).unwrap().family.len(), 23);
        assert_eq!(construct_prop2(2).unwrap().family.len(), 7);
        assert_eq!(construct_prop2(4).unwrap().family.len(), 70 + 10);
        assert!(construct_prop2(1).is_err());
        assert!(construct_prop2(6).is_err());
    }

    #[test]
    fn summation_identity() {
        for l in 2..=8usize {
            let lhs: u128 = (0..=l - 2).map(|i| binom(l + i - 1, i)).sum();
            assert_eq!(lhs, binom(2 * l - 2, l), "l = {l}");
            let parts =
                lhs + binom(2 * l - 3, l - 2) + binom(2 * l - 1, l) + binom(2 * l - 2, l - 1);
            assert_eq!(parts, binom(2 * l, l) + binom(2 * l - 3, l - 1), "l = {l}");
        }
    }

    #[test]
    fn prop2_small_cases_verify() {
        for l in [2, 3] {
            let report = verify_construction(&construct_prop2(l).unwrap());
            assert!(report.passed, "{report:?}");
        }
    }
}
