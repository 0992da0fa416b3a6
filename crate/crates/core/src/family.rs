//! Set families, 0-1 pattern matrices and embeddings.
//!
//! A [`SetFamily`] is an ordered list of distinct subsets of `{1..u}` with
//! `u <= 63`; each member is stored as a single machine word whose bit `j`
//! records membership of element `j + 1`. Indices into the family and
//! column positions are 0-based in the Rust API. The JSON witness output
//! and the CLI use 1-based numbering.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Largest universe a family may span.
pub const MAX_UNIVERSE: usize = 63;

/// A universe element, numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(u8);

impl Element {
    pub fn new(id: usize) -> Result<Self> {
        if id == 0 || id > MAX_UNIVERSE {
            return Err(Error::ElementOutOfRange {
                element: id,
                universe: MAX_UNIVERSE,
            });
        }
        Ok(Element(id as u8))
    }

    pub fn from_position(pos: usize) -> Self {
        debug_assert!(pos < MAX_UNIVERSE);
        Element(pos as u8 + 1)
    }

    pub fn id(self) -> usize {
        self.0 as usize
    }

    /// 0-based column position.
    pub fn position(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn mask_of(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// An ordered list of pairwise distinct sets over the universe `{1..u}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: usize,
    members: Vec<u64>,
}

impl SetFamily {
    /// Builds a family from bit rows, rejecting out-of-universe bits and duplicates.
    pub fn new(universe: usize, members: Vec<u64>) -> Result<Self> {
        if universe > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(universe));
        }
        let mask = mask_of(universe);
        let mut seen: HashMap<u64, usize> = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            if m & !mask != 0 {
                return Err(Error::OutOfUniverse { index: i, universe });
            }
            if let Some(&first) = seen.get(&m) {
                return Err(Error::DuplicateMember { first, second: i });
            }
            seen.insert(m, i);
        }
        Ok(SetFamily { universe, members })
    }

    /// Trusted constructor for internal generators whose output is distinct by construction.
    pub(crate) fn from_raw(universe: usize, members: Vec<u64>) -> Self {
        debug_assert!(SetFamily::new(universe, members.clone()).is_ok());
        SetFamily { universe, members }
    }

    /// Builds a family from arbitrary positive element labels. Labels are
    /// renumbered `1..u` in order of first appearance.
    pub fn from_sets<I, S>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u64>,
    {
        let mut relabel: HashMap<u64, usize> = HashMap::new();
        let mut members = Vec::new();
        for set in sets {
            let mut row = 0u64;
            for label in set {
                let next = relabel.len();
                let pos = *relabel.entry(label).or_insert(next);
                if pos >= MAX_UNIVERSE {
                    return Err(Error::UniverseTooLarge(pos + 1));
                }
                row |= 1 << pos;
            }
            members.push(row);
        }
        SetFamily::new(relabel.len(), members)
    }

    pub fn empty(universe: usize) -> Result<Self> {
        SetFamily::new(universe, Vec::new())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn universe_mask(&self) -> u64 {
        mask_of(self.universe)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn member(&self, index: usize) -> Result<u64> {
        self.members
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.members.len(),
            })
    }

    /// The incidence row of member `index` as a `0`/`1` string, element 1 first.
    pub fn incidence_row(&self, index: usize) -> Result<String> {
        Ok(row_string(self.member(index)?, self.universe))
    }

    /// Elements of member `index`, ascending.
    pub fn elements_of(&self, index: usize) -> Result<Vec<Element>> {
        let row = self.member(index)?;
        Ok((0..self.universe)
            .filter(|&p| row >> p & 1 == 1)
            .map(Element::from_position)
            .collect())
    }

    /// Every member replaced by its complement in `{1..u}`.
    pub fn complement(&self) -> SetFamily {
        let mask = self.universe_mask();
        SetFamily {
            universe: self.universe,
            members: self.members.iter().map(|m| !m & mask).collect(),
        }
    }

    /// The members at `indices`, in that order.
    pub fn subfamily(&self, indices: &[usize]) -> Result<SetFamily> {
        let mut members = Vec::with_capacity(indices.len());
        for &i in indices {
            members.push(self.member(i)?);
        }
        SetFamily::new(self.universe, members)
    }

    /// Appends a member, rejecting duplicates.
    pub fn with_member(&self, row: u64) -> Result<SetFamily> {
        let mut members = self.members.clone();
        members.push(row);
        SetFamily::new(self.universe, members)
    }

    /// Parses the `.fam` text format.
    ///
    /// Every non-empty line not starting with `#` is a `0`/`1` string; all such
    /// lines share one length `u`. A `# universe U members M` comment is
    /// optional and only consulted when it is needed to recover a degenerate
    /// family (no rows, or a single empty set over an empty universe).
    pub fn parse(text: &str) -> std::result::Result<SetFamily, ParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut width: Option<usize> = None;
        let mut members = Vec::new();
        let mut first_line: HashMap<u64, usize> = HashMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(h) = parse_header(comment, line_no)? {
                    header = Some((h.0, h.1, line_no));
                }
                continue;
            }
            let len = line.chars().count();
            if len > MAX_UNIVERSE {
                return Err(ParseError::TooWide {
                    line: line_no,
                    width: len,
                    max: MAX_UNIVERSE,
                });
            }
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(ParseError::LengthMismatch {
                        line: line_no,
                        expected: w,
                        found: len,
                    })
                }
                _ => {}
            }
            let mut row = 0u64;
            for (pos, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row |= 1 << pos,
                    other => {
                        return Err(ParseError::BadCharacter {
                            line: line_no,
                            found: other,
                        })
                    }
                }
            }
            if let Some(&first) = first_line.get(&row) {
                return Err(ParseError::DuplicateRow {
                    line: line_no,
                    first,
                });
            }
            first_line.insert(row, line_no);
            members.push(row);
        }
        match (width, header) {
            (Some(w), Some((u, m, line))) if u != w || m != members.len() => {
                Err(ParseError::BadHeader {
                    line,
                    reason: format!(
                        "declares {u} elements and {m} members, body has {w} and {}",
                        members.len()
                    ),
                })
            }
            (Some(w), _) => Ok(SetFamily {
                universe: w,
                members,
            }),
            (None, Some((u, m, line))) => match m {
                0 => Ok(SetFamily {
                    universe: u,
                    members,
                }),
                1 if u == 0 => Ok(SetFamily {
                    universe: 0,
                    members: vec![0],
                }),
                _ => Err(ParseError::BadHeader {
                    line,
                    reason: format!("declares {m} members but the body is empty"),
                }),
            },
            (None, None) => Ok(SetFamily {
                universe: 0,
                members,
            }),
        }
    }

    /// Renders the `.fam` text format, header comment first.
    pub fn render(&self) -> String {
        let mut out = format!("# universe {} members {}\n", self.universe, self.len());
        for &m in &self.members {
            out.push_str(&row_string(m, self.universe));
            out.push('\n');
        }
        out
    }

    /// Incidence rows as strings, element 1 first.
    pub fn lines(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&m| row_string(m, self.universe))
            .collect()
    }
}

fn parse_header(
    comment: &str,
    line: usize,
) -> std::result::Result<Option<(usize, usize)>, ParseError> {
    let words: Vec<&str> = comment.split_whitespace().collect();
    if words.first() != Some(&"universe") {
        return Ok(None);
    }
    let bad = |reason: &str| ParseError::BadHeader {
        line,
        reason: reason.to_string(),
    };
    if words.len() != 4 || words[2] != "members" {
        return Err(bad("expected `# universe U members M`"));
    }
    let u: usize = words[1]
        .parse()
        .map_err(|_| bad("universe is not a number"))?;
    let m: usize = words[3]
        .parse()
        .map_err(|_| bad("members is not a number"))?;
    if u > MAX_UNIVERSE {
        return Err(ParseError::TooWide {
            line,
            width: u,
            max: MAX_UNIVERSE,
        });
    }
    Ok(Some((u, m)))
}

pub(crate) fn row_string(row: u64, width: usize) -> String {
    (0..width)
        .map(|p| if row >> p & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A cell of a pattern matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Zero,
    One,
    Any,
}

impl Cell {
    pub fn complement(self) -> Cell {
        match self {
            Cell::Zero => Cell::One,
            Cell::One => Cell::Zero,
            Cell::Any => Cell::Any,
        }
    }

    fn symbol(self) -> char {
        match self {
            Cell::Zero => '0',
            Cell::One => '1',
            Cell::Any => '?',
        }
    }
}

/// A 0-1 matrix template, possibly with wildcard cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
}

impl PatternMatrix {
    pub fn new(rows: usize, cols: usize, cells: Vec<Cell>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(
                "a pattern needs at least one row and one column".into(),
            ));
        }
        if cols > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(cols));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} cells given for a {rows}x{cols} pattern",
                cells.len()
            )));
        }
        Ok(PatternMatrix { rows, cols, cells })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cell) -> Self {
        let cells = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        PatternMatrix { rows, cols, cells }
    }

    /// Parses rows of `0`, `1` and `?`, using the same line rules as the family format.
    pub fn parse(text: &str) -> std::result::Result<PatternMatrix, ParseError> {
        let mut width = None;
        let mut rows = 0;
        let mut cells = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let len = line.chars().count();
            if len > MAX_UNIVERSE {
                return Err(ParseError::TooWide {
                    line: line_no,
                    width: len,
                    max: MAX_UNIVERSE,
                });
            }
            match width {
                None => width = Some(len),
                Some(w) if w != len => {
                    return Err(ParseError::LengthMismatch {
                        line: line_no,
                        expected: w,
                        found: len,
                    })
                }
                _ => {}
            }
            for ch in line.chars() {
                cells.push(match ch {
                    '0' => Cell::Zero,
                    '1' => Cell::One,
                    '?' => Cell::Any,
                    other => {
                        return Err(ParseError::BadCharacter {
                            line: line_no,
                            found: other,
                        })
                    }
                });
            }
            rows += 1;
        }
        match width {
            Some(cols) if cols > 0 => Ok(PatternMatrix { rows, cols, cells }),
            _ => Err(ParseError::EmptyPattern),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn has_wildcards(&self) -> bool {
        self.cells.contains(&Cell::Any)
    }

    /// Swaps 0 and 1 in every cell; wildcards stay.
    pub fn complement(&self) -> PatternMatrix {
        PatternMatrix {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(|c| c.complement()).collect(),
        }
    }

    /// Rows reordered so that new row `i` is old row `order[i]`.
    pub fn permute_rows(&self, order: &[usize]) -> PatternMatrix {
        assert_eq!(order.len(), self.rows);
        PatternMatrix::from_fn(self.rows, self.cols, |i, j| self.get(order[i], j))
    }

    /// `(ones, zeros)` masks of a row over pattern columns.
    pub fn row_masks(&self, row: usize) -> (u64, u64) {
        let mut ones = 0;
        let mut zeros = 0;
        for (j, c) in self.row(row).iter().enumerate() {
            match c {
                Cell::One => ones |= 1 << j,
                Cell::Zero => zeros |= 1 << j,
                Cell::Any => {}
            }
        }
        (ones, zeros)
    }

    /// True when every non-wildcard cell of `template` agrees with `self`.
    pub fn instantiates(&self, template: &PatternMatrix) -> bool {
        self.rows == template.rows
            && self.cols == template.cols
            && self
                .cells
                .iter()
                .zip(&template.cells)
                .all(|(&c, &t)| t == Cell::Any || c == t)
    }

    pub fn lines(&self) -> Vec<String> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|c| c.symbol()).collect())
            .collect()
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Injective assignment of pattern rows to members and pattern columns to elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    /// `rows[a]` is the member index standing for pattern row `a`.
    pub rows: Vec<usize>,
    /// `cols[b]` is the 0-based element position standing for pattern column `b`.
    pub cols: Vec<usize>,
}

impl Embedding {
    /// Checks the membership condition cell by cell, plus shape and injectivity.
    pub fn verify(&self, family: &SetFamily, pattern: &PatternMatrix) -> bool {
        if self.rows.len() != pattern.rows() || self.cols.len() != pattern.cols() {
            return false;
        }
        if !all_distinct(&self.rows) || !all_distinct(&self.cols) {
            return false;
        }
        if self.rows.iter().any(|&r| r >= family.len())
            || self.cols.iter().any(|&c| c >= family.universe())
        {
            return false;
        }
        self.rows.iter().enumerate().all(|(a, &r)| {
            let set = family.members()[r];
            self.cols.iter().enumerate().all(|(b, &c)| {
                let inside = set >> c & 1 == 1;
                match pattern.get(a, b) {
                    Cell::One => inside,
                    Cell::Zero => !inside,
                    Cell::Any => true,
                }
            })
        })
    }

    /// Witness JSON with 1-based set indices and element ids.
    pub fn to_json(&self, pattern: &str) -> serde_json::Value {
        serde_json::json!({
            "pattern": pattern,
            "rows": self.rows.iter().map(|r| r + 1).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|c| c + 1).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn all_distinct(xs: &[usize]) -> bool {
    xs.iter().enumerate().all(|(i, x)| !xs[..i].contains(x))
}
