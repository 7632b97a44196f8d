//! Young diagrams in bottom-up box order, tableaux of transpositions, Bruhat
//! chains and the integer tableaux `E(w, T)` and `B(T)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Partition, Permutation};
use crate::rcgraph::Graph;

/// Boxes of a Young diagram numbered from the bottom row up, left to right
/// within a row. Diagram rows are numbered from the top, so row 1 is the
/// longest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxOrder {
    shape: Partition,
    boxes: Vec<(usize, usize)>,
}

impl BoxOrder {
    pub fn new(shape: &Partition) -> Self {
        let mut boxes = Vec::with_capacity(shape.size());
        for row in (1..=shape.len()).rev() {
            boxes.extend((1..=shape.part(row)).map(|col| (row, col)));
        }
        BoxOrder {
            shape: shape.clone(),
            boxes,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// `(diagram row, column)` of box `i` (1-based).
    pub fn cell(&self, i: usize) -> (usize, usize) {
        self.boxes[i - 1]
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.boxes
    }

    /// Index of the box at `(row, col)`, if the diagram has one there.
    pub fn index_of(&self, row: usize, col: usize) -> Option<usize> {
        if row == 0 || col == 0 || col > self.shape.part(row) {
            return None;
        }
        let below: usize = ((row + 1)..=self.shape.len()).map(|k| self.shape.part(k)).sum();
        Some(below + col)
    }

    /// Box directly to the left of box `i`.
    pub fn left_of(&self, i: usize) -> Option<usize> {
        let (row, col) = self.cell(i);
        self.index_of(row, col - 1)
    }

    /// Box directly below box `i`.
    pub fn below(&self, i: usize) -> Option<usize> {
        let (row, col) = self.cell(i);
        self.index_of(row + 1, col)
    }

    /// Box directly above box `i`.
    pub fn above(&self, i: usize) -> Option<usize> {
        let (row, col) = self.cell(i);
        self.index_of(row - 1, col)
    }
}

fn check_entry(a: usize, b: usize, r: usize) -> Result<()> {
    if a == 0 || a > r || b <= r {
        return Err(Error::Malformed(format!(
            "entry ({a},{b}) does not satisfy a <= {r} < b"
        )));
    }
    Ok(())
}

/// A tableau of transpositions `(a b)` with `a <= r < b`, filled along the
/// box order up to some prefix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TranspositionTableau {
    shape: Partition,
    r: usize,
    entries: Vec<Option<(usize, usize)>>,
}

impl TranspositionTableau {
    pub fn empty(shape: Partition, r: usize) -> Self {
        let m = shape.size();
        TranspositionTableau {
            shape,
            r,
            entries: vec![None; m],
        }
    }

    /// A tableau filled along the box order with `word`, leaving the remaining
    /// boxes empty.
    pub fn from_word(shape: Partition, r: usize, word: &[(usize, usize)]) -> Result<Self> {
        if word.len() > shape.size() {
            return Err(Error::Malformed(format!(
                "{} entries do not fit a shape with {} boxes",
                word.len(),
                shape.size()
            )));
        }
        let mut t = Self::empty(shape, r);
        for (i, &(a, b)) in word.iter().enumerate() {
            check_entry(a, b, r)?;
            t.entries[i] = Some((a, b));
        }
        Ok(t)
    }

    pub fn from_entries(
        shape: Partition,
        r: usize,
        entries: Vec<Option<(usize, usize)>>,
    ) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Malformed(format!(
                "{} entries given for a shape with {} boxes",
                entries.len(),
                shape.size()
            )));
        }
        let filled = entries.iter().take_while(|e| e.is_some()).count();
        if entries[filled..].iter().any(Option::is_some) {
            return Err(Error::Malformed("filled boxes must form a prefix".into()));
        }
        for &(a, b) in entries.iter().flatten() {
            check_entry(a, b, r)?;
        }
        Ok(TranspositionTableau { shape, r, entries })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> BoxOrder {
        BoxOrder::new(&self.shape)
    }

    /// Number of boxes.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of filled boxes.
    pub fn fill_level(&self) -> usize {
        self.entries.iter().take_while(|e| e.is_some()).count()
    }

    pub fn is_full(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// Entry of box `i` (1-based).
    pub fn get(&self, i: usize) -> Option<(usize, usize)> {
        i.checked_sub(1).and_then(|k| self.entries.get(k).copied().flatten())
    }

    pub fn entries(&self) -> &[Option<(usize, usize)>] {
        &self.entries
    }

    /// Sets box `i`; the caller keeps the filled boxes a prefix.
    pub(crate) fn set(&mut self, i: usize, entry: Option<(usize, usize)>) {
        debug_assert!(entry.is_none_or(|(a, b)| a <= self.r && self.r < b));
        self.entries[i - 1] = entry;
    }

    /// Entries of the filled boxes in box order.
    pub fn word(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map_while(|e| *e).collect()
    }

    /// `w(T)`, the product of all filled transpositions.
    pub fn product(&self) -> Permutation {
        self.word()
            .into_iter()
            .fold(Permutation::identity(), |acc, (a, b)| acc.swap_positions(a, b))
    }

    /// A copy with the same word on a different shape; the shape must have
    /// room for the word.
    pub fn with_shape(&self, shape: Partition) -> Result<Self> {
        Self::from_word(shape, self.r, &self.word())
    }
}

/// Formats a transposition word as `(35)(36)(14)`, switching to `(3,15)` when
/// some label has more than one digit.
pub fn format_word(word: &[(usize, usize)]) -> String {
    let wide = word.iter().any(|&(a, b)| a > 9 || b > 9);
    word.iter()
        .map(|&(a, b)| if wide { format!("({a},{b})") } else { format!("({a}{b})") })
        .collect()
}

impl fmt::Display for TranspositionTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.word()))?;
        if self.fill_level() < self.len() {
            write!(f, " [{}/{}]", self.fill_level(), self.len())?;
        }
        Ok(())
    }
}

impl fmt::Debug for TranspositionTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{}: {}", self.shape, self.r, self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableauRepr {
    shape: Partition,
    r: usize,
    entries: Vec<Option<(usize, usize)>>,
}

impl Serialize for TranspositionTableau {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TableauRepr {
            shape: self.shape.clone(),
            r: self.r,
            entries: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TranspositionTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = TableauRepr::deserialize(d)?;
        TranspositionTableau::from_entries(repr.shape, repr.r, repr.entries)
            .map_err(serde::de::Error::custom)
    }
}

/// A partially filled tableau of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntTableau {
    shape: Partition,
    entries: Vec<Option<usize>>,
}

impl IntTableau {
    pub fn new(shape: Partition, entries: Vec<Option<usize>>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Malformed(format!(
                "{} entries given for a shape with {} boxes",
                entries.len(),
                shape.size()
            )));
        }
        Ok(IntTableau { shape, entries })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.entries[i - 1]
    }

    pub fn word(&self) -> Vec<usize> {
        self.entries.iter().map_while(|e| *e).collect()
    }

    fn check(&self, column_strict: bool) -> bool {
        let order = BoxOrder::new(&self.shape);
        (1..=order.len()).all(|i| {
            let Some(x) = self.get(i) else { return true };
            let row_ok = order
                .left_of(i)
                .and_then(|k| self.get(k))
                .is_none_or(|left| left < x);
            let col_ok = order.above(i).and_then(|k| self.get(k)).is_none_or(|up| {
                if column_strict {
                    up < x
                } else {
                    up <= x
                }
            });
            row_ok && col_ok
        })
    }

    /// Rows strictly increase left to right and columns strictly increase top
    /// to bottom; only pairs of filled boxes are compared.
    pub fn is_row_and_column_strict(&self) -> bool {
        self.check(true)
    }

    /// Rows strictly increase; columns only weakly.
    pub fn is_row_strict(&self) -> bool {
        self.check(false)
    }
}

/// `[w w_1(T), ..., w w_k(T)]` for the filled prefix of length `k`.
pub fn chain_permutations(w: &Permutation, t: &TranspositionTableau) -> Vec<Permutation> {
    let mut current = w.clone();
    t.word()
        .into_iter()
        .map(|(a, b)| {
            current = current.swap_positions(a, b);
            current.clone()
        })
        .collect()
}

/// Every filled prefix raises the length of `w` by exactly one.
pub fn is_r_bruhat_chain(w: &Permutation, t: &TranspositionTableau) -> bool {
    let mut current = w.clone();
    for (a, b) in t.word() {
        if !current.is_covering(a, b) {
            return false;
        }
        current = current.swap_positions(a, b);
    }
    true
}

/// `E(w, T)`: box `i` holds `w w_i(T)(b_i)`.
pub fn e_tableau(w: &Permutation, t: &TranspositionTableau) -> IntTableau {
    let mut entries = vec![None; t.len()];
    let mut current = w.clone();
    for (i, (a, b)) in t.word().into_iter().enumerate() {
        current = current.swap_positions(a, b);
        entries[i] = Some(current.apply(b));
    }
    IntTableau {
        shape: t.shape.clone(),
        entries,
    }
}

/// `B(T)`: box `i` holds `b_i`.
pub fn b_tableau(t: &TranspositionTableau) -> IntTableau {
    IntTableau {
        shape: t.shape.clone(),
        entries: t.entries.iter().map(|e| e.map(|(_, b)| b)).collect(),
    }
}

/// `R` is an rc-graph, `w w(T) = w(R)` and `T` is an r-Bruhat chain of `w`.
pub fn is_r_bruhat_package(w: &Permutation, graph: &Graph, t: &TranspositionTableau) -> bool {
    is_r_bruhat_chain(w, t) && graph.is_rcgraph() && w * &t.product() == graph.permutation()
}

/// Which component of the entries the hook condition inspects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HookSide {
    /// `e_i = w^(i)(b_i)`.
    B,
    /// `e_i = w^(i)(a_i)`.
    A,
}

/// For a full tableau of hook shape with `q` rows and `m` boxes, with
/// `e_i` taken from the chosen side: `e_1 > ... > e_q` along the column
/// (read bottom to top) and `e_q < ... < e_m` along the top row.
pub fn hook_condition(w: &Permutation, t: &TranspositionTableau, side: HookSide) -> Result<bool> {
    let (_, rows) = t.shape.hook_shape().ok_or(Error::NotAHook)?;
    if !t.is_full() {
        return Err(Error::Malformed("hook condition needs a full tableau".into()));
    }
    let values: Vec<usize> = chain_permutations(w, t)
        .iter()
        .zip(t.word())
        .map(|(u, (a, b))| match side {
            HookSide::B => u.apply(b),
            HookSide::A => u.apply(a),
        })
        .collect();
    let corner = rows - 1;
    let column = values[..=corner].windows(2).all(|p| p[0] > p[1]);
    let row = values[corner..].windows(2).all(|p| p[0] < p[1]);
    Ok(column && row)
}
