//! Forbidden 0-1 incidence patterns in families of finite sets.
//!
//! A pattern matrix `N` of size `a x b` can be *found* in a family when some
//! `a` distinct members and `b` distinct elements of their union have `N`
//! as incidence matrix. This crate provides:
//!
//! - [`family`]: set families, pattern matrices, embeddings and the `.fam` text format;
//! - [`patterns`]: the singleton, co-singleton and monotone matrices and the
//!   increasing/decreasing templates;
//! - [`embed`]: exact pattern search with lexicographically least witnesses;
//! - [`chains`]: increasing/decreasing sequences in families above the `C(k+l, l)` bound;
//! - [`ramsey`]: two-colourings of complete graphs, monochromatic cliques and
//!   the chain-to-pattern pipeline;
//! - [`reduction`]: reduced families, useless elements and distinct traces;
//! - [`constructions`]: families that avoid the named patterns;
//! - [`extremal`]: exact extremal numbers by isomorph-free search, plus
//!   exhaustive checks of the related finite statements.

pub mod chains;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod extremal;
pub mod family;
pub mod patterns;
pub mod ramsey;
pub mod reduction;

pub use error::{Error, ParseError, Result};
pub use family::{Cell, Element, Embedding, PatternMatrix, SetFamily};
pub use patterns::PatternKind;

/// Binomial coefficient; 0 when `k > n`.
pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::binom;

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(10, 5), 252);
        assert_eq!(binom(16, 9), 11440);
        assert_eq!(binom(16, 7), 11440);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(34, 17), 2_333_606_220);
    }
}
