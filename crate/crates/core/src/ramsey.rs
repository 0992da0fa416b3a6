//! Two-colourings of complete graphs and the chain-to-pattern pipeline.
//!
//! [`theorem3_pipeline`] turns a long increasing (or decreasing) sequence into
//! a singleton, co-singleton or monotone occurrence: the sequence yields an
//! increasing matrix `N`, pairs `i > j` are coloured by the entry
//! `N[i+1][j]`, and a monochromatic clique picks the rows and columns.

use rayon::prelude::*;
use serde::Serialize;

use crate::binom;
use crate::chains::{extract_chain, ChainWitness, Direction};
use crate::error::{Error, Result};
use crate::family::{Embedding, SetFamily};
use crate::patterns::{generate, PatternKind};

/// A 2-colouring of the edges of `K_n`, `n <= 64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    /// Bit `w` of `ones[v]` is set when edge `{v, w}` has colour 1.
    ones: Vec<u64>,
}

impl EdgeColoring {
    /// All edges colour 0.
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "at most 64 vertices");
        EdgeColoring {
            n,
            ones: vec![0; n],
        }
    }

    pub fn from_fn(n: usize, color: impl Fn(usize, usize) -> u8) -> Self {
        let mut c = EdgeColoring::new(n);
        for i in 0..n {
            for j in i + 1..n {
                c.set(i, j, color(i, j));
            }
        }
        c
    }

    /// Edge `t` in the order `{0,1}, {0,2}, ..., {n-2,n-1}` gets bit `t` of `bits`.
    pub fn from_index(n: usize, bits: u64) -> Self {
        let mut c = EdgeColoring::new(n);
        let mut t = 0;
        for i in 0..n {
            for j in i + 1..n {
                c.set(i, j, (bits >> t & 1) as u8);
                t += 1;
            }
        }
        c
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, color: u8) {
        assert!(i != j && i < self.n && j < self.n);
        if color == 1 {
            self.ones[i] |= 1 << j;
            self.ones[j] |= 1 << i;
        } else {
            self.ones[i] &= !(1 << j);
            self.ones[j] &= !(1 << i);
        }
    }

    pub fn color(&self, i: usize, j: usize) -> u8 {
        (self.ones[i] >> j & 1) as u8
    }

    fn neighbours(&self, v: usize, color: u8) -> u64 {
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let ones = self.ones[v];
        (if color == 1 { ones } else { !ones & all }) & !(1 << v)
    }
}

/// The 5-cycle coloured 0 and its chords coloured 1.
pub fn pentagon() -> EdgeColoring {
    EdgeColoring::from_fn(5, |i, j| u8::from(!matches!(j - i, 1 | 4)))
}

/// The lexicographically least `r`-subset whose pairs share one colour,
/// trying colour 0 before colour 1.
pub fn mono_clique(c: &EdgeColoring, r: usize) -> Option<(Vec<usize>, u8)> {
    if r > c.n {
        return None;
    }
    for color in [0u8, 1] {
        let mut chosen = Vec::with_capacity(r);
        let all = if c.n == 64 {
            u64::MAX
        } else {
            (1u64 << c.n) - 1
        };
        if extend_clique(c, color, r, all, &mut chosen) {
            return Some((chosen, color));
        }
    }
    None
}

fn extend_clique(
    c: &EdgeColoring,
    color: u8,
    r: usize,
    cand: u64,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == r {
        return true;
    }
    if chosen.len() + (cand.count_ones() as usize) < r {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // only later vertices remain candidates, keeping the subset sorted
        let next = rest & c.neighbours(v, color);
        chosen.push(v);
        if extend_clique(c, color, r, next, chosen) {
            return true;
        }
        chosen.pop();
        if chosen.len() + (rest.count_ones() as usize) < r {
            return false;
        }
    }
    false
}

/// A known diagonal Ramsey number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyValue {
    pub r: usize,
    pub value: usize,
    /// Taken from the literature rather than checked here.
    pub external: bool,
}

/// `R(1) = 1`, `R(2) = 2` and `R(3) = 6` are checked by [`ramsey_verify`];
/// `R(4) = 18` is a literature constant.
pub fn ramsey_number(r: usize) -> Option<RamseyValue> {
    let (value, external) = match r {
        1 => (1, false),
        2 => (2, false),
        3 => (6, false),
        4 => (18, true),
        _ => return None,
    };
    Some(RamseyValue { r, value, external })
}

/// Result of exhausting every colouring of `K_n` for `n = R(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyCertificate {
    pub r: usize,
    pub n: usize,
    pub colorings: u64,
    pub colorings_with_clique: u64,
    /// Every colouring of `K_n` has a monochromatic `r`-clique.
    pub upper_holds: bool,
    /// Edge colours of a clique-free colouring of `K_{n-1}`, pair order `{0,1}, {0,2}, ...`.
    pub lower_witness: Vec<u8>,
    /// The witness on `n - 1` vertices has no monochromatic `r`-clique.
    pub lower_holds: bool,
    pub verified: bool,
}

/// Pins `R(r)` for `r <= 3`: every colouring of `K_{R(r)}` has a
/// monochromatic `r`-clique and a fixed colouring of `K_{R(r)-1}` has none.
pub fn ramsey_verify(r: usize, threads: usize) -> Result<RamseyCertificate> {
    let rv = ramsey_number(r).ok_or(Error::MissingRamsey(r))?;
    if rv.external {
        return Err(Error::SizeGuard(format!(
            "R({r}) = {} would need 2^{} colourings",
            rv.value,
            rv.value * (rv.value - 1) / 2
        )));
    }
    let n = rv.value;
    let edges = n * (n - 1) / 2;
    let total = 1u64 << edges;
    let pool = thread_pool(threads)?;
    // fixed-size chunks keep the split independent of the thread count
    const CHUNK: u64 = 1024;
    let chunks = total.div_ceil(CHUNK);
    let with_clique: u64 = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                (c * CHUNK..((c + 1) * CHUNK).min(total))
                    .filter(|&bits| mono_clique(&EdgeColoring::from_index(n, bits), r).is_some())
                    .count() as u64
            })
            .sum()
    });
    let lower = match r {
        3 => pentagon(),
        _ => EdgeColoring::new(n - 1),
    };
    let lower_witness = (0..n - 1)
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .map(|(i, j)| lower.color(i, j))
        .collect();
    let lower_holds = mono_clique(&lower, r).is_none();
    let upper_holds = with_clique == total;
    Ok(RamseyCertificate {
        r,
        n,
        colorings: total,
        colorings_with_clique: with_clique,
        upper_holds,
        lower_witness,
        lower_holds,
        verified: upper_holds && lower_holds,
    })
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

/// A pattern occurrence produced by [`theorem3_pipeline`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineResult {
    pub kind: PatternKind,
    pub embedding: Embedding,
    pub chain: ChainWitness,
    /// Provenance remarks, e.g. use of a literature Ramsey value.
    pub notes: Vec<String>,
}

/// The Ramsey-number bound `C(R(k+1) + R(l+1) - 2, R(k+1) - 1)` when both values are known.
pub fn theorem3_bound(k: usize, l: usize) -> Option<u128> {
    let a = ramsey_number(k + 1)?.value;
    let b = ramsey_number(l + 1)?.value;
    Some(binom(a + b - 2, a - 1))
}

/// Finds `Singleton(k+1)`, `CoSingleton(l+1)` or `Monotone(min(k,l)+1)` in a
/// family above the Ramsey-number bound, going through a long chain and a
/// monochromatic clique.
pub fn theorem3_pipeline(family: &SetFamily, k: usize, l: usize) -> Result<PipelineResult> {
    let ra = ramsey_number(k + 1).ok_or(Error::MissingRamsey(k + 1))?;
    let rb = ramsey_number(l + 1).ok_or(Error::MissingRamsey(l + 1))?;
    let (a, b) = (ra.value, rb.value);
    let bound = binom(a + b - 2, a - 1);
    if (family.len() as u128) <= bound {
        return Err(Error::BelowBound {
            members: family.len(),
            n: a + b - 2,
            k: a - 1,
            bound,
        });
    }
    let notes = [ra, rb]
        .iter()
        .filter(|v| v.external)
        .map(|v| {
            format!(
                "R({}) = {} is a literature value, not verified here",
                v.r, v.value
            )
        })
        .collect::<Vec<_>>();

    let chain = extract_chain(family, a - 1, b - 1)?;
    let sets: Vec<u64> = chain.indices.iter().map(|&i| family.members()[i]).collect();
    let mask = family.universe_mask();
    let monotone_order = k.min(l) + 1;
    let (kind, rows, cols) = match chain.direction {
        Direction::Increasing => {
            let (kind, mut rows, mut cols) = increasing_to_pattern(&sets, k + 1);
            if let PatternKind::Monotone(_) = kind {
                rows.truncate(monotone_order + 1);
                cols.truncate(monotone_order);
                (PatternKind::Monotone(monotone_order), rows, cols)
            } else {
                (kind, rows, cols)
            }
        }
        Direction::Decreasing => {
            // the complements form an increasing sequence
            let comp: Vec<u64> = sets.iter().map(|s| !s & mask).collect();
            let (kind, mut rows, mut cols) = increasing_to_pattern(&comp, l + 1);
            match kind {
                PatternKind::Singleton(n) => {
                    // the all-ones row goes last
                    rows.rotate_left(1);
                    (PatternKind::CoSingleton(n), rows, cols)
                }
                _ => {
                    // a complemented staircase read backwards is a staircase
                    rows.reverse();
                    cols.reverse();
                    rows.truncate(monotone_order + 1);
                    cols.truncate(monotone_order);
                    (PatternKind::Monotone(monotone_order), rows, cols)
                }
            }
        }
    };
    let embedding = Embedding {
        rows: rows.iter().map(|&p| chain.indices[p]).collect(),
        cols,
    };
    if !embedding.verify(family, &generate(kind)) {
        return Err(Error::Soundness(format!(
            "pipeline produced an invalid {kind} occurrence"
        )));
    }
    Ok(PipelineResult {
        kind,
        embedding,
        chain,
        notes,
    })
}

/// Rows (chain positions) and columns of a singleton or monotone occurrence
/// of order `order` inside an increasing sequence; colour 0 gives the singleton.
fn increasing_to_pattern(sets: &[u64], order: usize) -> (PatternKind, Vec<usize>, Vec<usize>) {
    let len = sets.len() - 1;
    // e[j] first enters the running union at position j + 1
    let mut union = sets[0];
    let mut fresh = Vec::with_capacity(len);
    for s in &sets[1..] {
        let added = s & !union;
        fresh.push(added.trailing_zeros() as usize);
        union |= s;
    }
    let coloring = EdgeColoring::from_fn(len, |j, i| (sets[i + 1] >> fresh[j] & 1) as u8);
    let (clique, color) = mono_clique(&coloring, order)
        .expect("a chain of Ramsey length always holds a monochromatic clique");
    let rows: Vec<usize> = std::iter::once(0)
        .chain(clique.iter().map(|&v| v + 1))
        .collect();
    let cols: Vec<usize> = clique.iter().map(|&v| fresh[v]).collect();
    let kind = if color == 0 {
        PatternKind::Singleton(order)
    } else {
        PatternKind::Monotone(order)
    };
    (kind, rows, cols)
}
