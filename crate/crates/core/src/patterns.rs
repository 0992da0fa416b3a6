//! The named pattern matrices and the increasing/decreasing templates.
//!
//! All five shapes have `n + 1` rows and `n` columns. With 0-based row `i`
//! and column `j`:
//!
//! | kind          | cell `(i, j)`                                   |
//! |---------------|-------------------------------------------------|
//! | singleton     | 1 iff `i == j + 1`                              |
//! | co-singleton  | 0 iff `i == j`                                  |
//! | monotone      | 1 iff `i >= j + 1`                              |
//! | increasing    | 1 if `i == j + 1`, 0 if `i <= j`, else `?`      |
//! | decreasing    | 0 if `i == j`, 1 if `i > j`, else `?`           |

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::family::{Cell, PatternMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Singleton(usize),
    CoSingleton(usize),
    Monotone(usize),
    IncreasingTemplate(usize),
    DecreasingTemplate(usize),
}

impl PatternKind {
    pub fn order(self) -> usize {
        match self {
            PatternKind::Singleton(n)
            | PatternKind::CoSingleton(n)
            | PatternKind::Monotone(n)
            | PatternKind::IncreasingTemplate(n)
            | PatternKind::DecreasingTemplate(n) => n,
        }
    }

    pub fn is_template(self) -> bool {
        matches!(
            self,
            PatternKind::IncreasingTemplate(_) | PatternKind::DecreasingTemplate(_)
        )
    }

    /// The same kind with the order replaced.
    pub fn with_order(self, n: usize) -> PatternKind {
        match self {
            PatternKind::Singleton(_) => PatternKind::Singleton(n),
            PatternKind::CoSingleton(_) => PatternKind::CoSingleton(n),
            PatternKind::Monotone(_) => PatternKind::Monotone(n),
            PatternKind::IncreasingTemplate(_) => PatternKind::IncreasingTemplate(n),
            PatternKind::DecreasingTemplate(_) => PatternKind::DecreasingTemplate(n),
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Singleton(n) => write!(f, "singleton:{n}"),
            PatternKind::CoSingleton(n) => write!(f, "cosingleton:{n}"),
            PatternKind::Monotone(n) => write!(f, "monotone:{n}"),
            PatternKind::IncreasingTemplate(n) => write!(f, "increasing:{n}"),
            PatternKind::DecreasingTemplate(n) => write!(f, "decreasing:{n}"),
        }
    }
}

impl FromStr for PatternKind {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let unknown = || ParseError::UnknownPattern(s.to_string());
        let (name, order) = s.trim().split_once(':').ok_or_else(unknown)?;
        let n: usize = order.trim().parse().map_err(|_| unknown())?;
        if n == 0 || n > 62 {
            return Err(unknown());
        }
        let kind = match name.trim().to_ascii_lowercase().as_str() {
            "singleton" => PatternKind::Singleton(n),
            "cosingleton" | "co-singleton" => PatternKind::CoSingleton(n),
            "monotone" => PatternKind::Monotone(n),
            "increasing" => PatternKind::IncreasingTemplate(n),
            "decreasing" => PatternKind::DecreasingTemplate(n),
            _ => return Err(unknown()),
        };
        Ok(kind)
    }
}

fn bit(b: bool) -> Cell {
    if b {
        Cell::One
    } else {
        Cell::Zero
    }
}

/// Builds the `(n + 1) x n` matrix for `kind`.
///
/// # Panics
/// If the order is 0 or larger than 62.
pub fn generate(kind: PatternKind) -> PatternMatrix {
    let n = kind.order();
    assert!((1..=62).contains(&n), "pattern order {n} out of range");
    match kind {
        PatternKind::Singleton(_) => PatternMatrix::from_fn(n + 1, n, |i, j| bit(i == j + 1)),
        PatternKind::CoSingleton(_) => PatternMatrix::from_fn(n + 1, n, |i, j| bit(i != j)),
        PatternKind::Monotone(_) => PatternMatrix::from_fn(n + 1, n, |i, j| bit(i > j)),
        PatternKind::IncreasingTemplate(_) => PatternMatrix::from_fn(n + 1, n, |i, j| {
            if i == j + 1 {
                Cell::One
            } else if i <= j {
                Cell::Zero
            } else {
                Cell::Any
            }
        }),
        PatternKind::DecreasingTemplate(_) => PatternMatrix::from_fn(n + 1, n, |i, j| {
            if i == j {
                Cell::Zero
            } else if i > j {
                Cell::One
            } else {
                Cell::Any
            }
        }),
    }
}

/// Every named kind or template that `p` instantiates. Only exact
/// `(n + 1) x n` shapes can match; embedded occurrences are `embed`'s job.
pub fn classify(p: &PatternMatrix) -> Result<Vec<PatternKind>> {
    if p.has_wildcards() {
        return Err(Error::InvalidParameter(
            "classify expects a concrete matrix without wildcards".into(),
        ));
    }
    let n = p.cols();
    if p.rows() != n + 1 || n > 62 {
        return Ok(Vec::new());
    }
    Ok([
        PatternKind::Singleton(n),
        PatternKind::CoSingleton(n),
        PatternKind::Monotone(n),
        PatternKind::IncreasingTemplate(n),
        PatternKind::DecreasingTemplate(n),
    ]
    .into_iter()
    .filter(|&k| p.instantiates(&generate(k)))
    .collect())
}

/// Moves the last row to the front: the row rotation that maps the
/// complement of a co-singleton onto a singleton.
pub fn rotate_last_row_first(p: &PatternMatrix) -> PatternMatrix {
    let a = p.rows();
    let order: Vec<usize> = std::iter::once(a - 1).chain(0..a - 1).collect();
    p.permute_rows(&order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Cell-by-cell evaluation of the 1-based definitions.
    fn oracle(kind: PatternKind) -> Vec<String> {
        let n = kind.order();
        (1..=n + 1)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let one = match kind {
                            PatternKind::Singleton(_) => i == j + 1,
                            PatternKind::CoSingleton(_) => i != j,
                            PatternKind::Monotone(_) => i > j,
                            _ => unreachable!(),
                        };
                        if one {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_matrices() {
        let s1 = generate(PatternKind::Singleton(1));
        assert_eq!(s1.lines(), vec!["0", "1"]);
        assert_eq!(s1, generate(PatternKind::Monotone(1)));
        assert_eq!(s1, generate(PatternKind::CoSingleton(1)));

        assert_eq!(
            generate(PatternKind::Singleton(3)).lines(),
            vec!["000", "100", "010", "001"]
        );
        assert_eq!(
            generate(PatternKind::Monotone(3)).lines(),
            vec!["000", "100", "110", "111"]
        );
        assert_eq!(
            generate(PatternKind::CoSingleton(3)).lines(),
            vec!["011", "101", "110", "111"]
        );
        for n in 1..8 {
            for kind in [
                PatternKind::Singleton(n),
                PatternKind::CoSingleton(n),
                PatternKind::Monotone(n),
            ] {
                assert_eq!(generate(kind).lines(), oracle(kind), "{kind}");
            }
        }
    }

    #[test]
    fn order_three_templates() {
        assert_eq!(
            generate(PatternKind::IncreasingTemplate(3)).lines(),
            vec!["000", "100", "?10", "??1"]
        );
        assert_eq!(
            generate(PatternKind::DecreasingTemplate(3)).lines(),
            vec!["0??", "10?", "110", "111"]
        );
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&generate(PatternKind::Singleton(3))).unwrap(),
            vec![
                PatternKind::Singleton(3),
                PatternKind::IncreasingTemplate(3)
            ]
        );
        assert_eq!(
            classify(&generate(PatternKind::CoSingleton(3))).unwrap(),
            vec![
                PatternKind::CoSingleton(3),
                PatternKind::DecreasingTemplate(3)
            ]
        );
        assert_eq!(
            classify(&generate(PatternKind::Monotone(3))).unwrap(),
            vec![
                PatternKind::Monotone(3),
                PatternKind::IncreasingTemplate(3),
                PatternKind::DecreasingTemplate(3)
            ]
        );
        let ones = PatternMatrix::parse("11\n11").unwrap();
        assert!(classify(&ones).unwrap().is_empty());
        assert!(classify(&generate(PatternKind::IncreasingTemplate(2))).is_err());
    }

    #[test]
    fn spec_strings() {
        for s in [
            "singleton:3",
            "cosingleton:2",
            "monotone:1",
            "increasing:4",
            "decreasing:5",
        ] {
            let k: PatternKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("singleton:0".parse::<PatternKind>().is_err());
        assert!("triangle:3".parse::<PatternKind>().is_err());
        assert!("monotone".parse::<PatternKind>().is_err());
    }

    #[test]
    fn cosingleton_complement_is_singleton() {
        let c = generate(PatternKind::CoSingleton(3)).complement();
        assert_eq!(
            rotate_last_row_first(&c),
            generate(PatternKind::Singleton(3))
        );
    }

    proptest! {
        #[test]
        fn named_patterns_instantiate_templates(n in 1usize..20) {
            let inc = generate(PatternKind::IncreasingTemplate(n));
            let dec = generate(PatternKind::DecreasingTemplate(n));
            prop_assert!(generate(PatternKind::Singleton(n)).instantiates(&inc));
            prop_assert!(generate(PatternKind::CoSingleton(n)).instantiates(&dec));
            prop_assert!(generate(PatternKind::Monotone(n)).instantiates(&inc));
            prop_assert!(generate(PatternKind::Monotone(n)).instantiates(&dec));
        }

        #[test]
        fn complement_rotation(n in 1usize..20) {
            let c = generate(PatternKind::CoSingleton(n)).complement();
            prop_assert_eq!(rotate_last_row_first(&c), generate(PatternKind::Singleton(n)));
        }

        #[test]
        fn distinct_beyond_order_one(n in 1usize..20) {
            let s = generate(PatternKind::Singleton(n));
            let c = generate(PatternKind::CoSingleton(n));
            let m = generate(PatternKind::Monotone(n));
            if n == 1 {
                prop_assert!(s == c && c == m);
            } else {
                prop_assert!(s != c && c != m && s != m);
            }
        }
    }
}
