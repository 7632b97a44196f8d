//! Insertion of an rc-graph of a shuffle into an arbitrary rc-graph.
//!
//! `insert(R, Y, r)` processes rows `r, r-1, ..., 1`. Row `ℓ` starts from the
//! bottom of the previous row's chain plus row `ℓ` of `R`, and then runs one
//! step per letter of the shuffle word restricted to rows `>= ℓ`: letters
//! equal to `ℓ` insert a new crossing in row `ℓ`, larger letters import a
//! crossing from below and repair row `ℓ` when the import breaks reducedness
//! or strictness.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{partition_of_shuffle, Partition, Permutation};
use crate::rcgraph::{Graph, Place, StrandMap};
use crate::tableau::{e_tableau, format_word, is_r_bruhat_package, TranspositionTableau};

/// One letter of a shuffle word: the row of a crossing of `Y` and the
/// crossing itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub row: usize,
    pub place: Place,
    /// The strand `<= r` passing the crossing.
    pub strand: usize,
}

/// The word of an rc-graph of an r-shuffle: for each strand `s = 1..=r`, the
/// rows of its crossings in weakly decreasing order, concatenated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleWord {
    r: usize,
    blocks: Vec<usize>,
    letters: Vec<Letter>,
}

impl ShuffleWord {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rows(&self) -> Vec<usize> {
        self.letters.iter().map(|l| l.row).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters contributed by each strand `1..=r`.
    pub fn block_lengths(&self) -> &[usize] {
        &self.blocks
    }

    /// The shape whose bottom-up box order matches the letters: diagram row
    /// `j` holds block `r + 1 - j`.
    pub fn shape(&self) -> Result<Partition> {
        Partition::new(self.blocks.iter().rev().copied().collect())
    }

    /// The word of `Y_{>=ℓ}` together with, for each of its letters above
    /// row `ℓ`, the position of the same crossing in the word of `Y_{>=ℓ+1}`.
    pub fn restrict(&self, row: usize) -> RestrictedWord {
        let keep = |l: &Letter| l.row >= row;
        let mut blocks = vec![0; self.r];
        let mut letters = Vec::new();
        for l in self.letters.iter().filter(|l| keep(l)) {
            blocks[l.strand - 1] += 1;
            letters.push(*l);
        }
        let above: BTreeMap<Place, usize> = letters
            .iter()
            .filter(|l| l.row > row)
            .enumerate()
            .map(|(k, l)| (l.place, k + 1))
            .collect();
        let links = letters.iter().map(|l| above.get(&l.place).copied()).collect();
        RestrictedWord {
            word: ShuffleWord {
                r: self.r,
                blocks,
                letters,
            },
            links,
        }
    }
}

/// A restricted shuffle word with links into the next coarser word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedWord {
    pub word: ShuffleWord,
    /// `links[i - 1]` is the position `i_+` of letter `i` in the word of the
    /// rows strictly below, or `None` for letters in the current row.
    pub links: Vec<Option<usize>>,
}

/// Checks that `y` is an rc-graph of an r-shuffle and returns its word.
pub fn shuffle_word(y: &Graph, r: usize) -> Result<ShuffleWord> {
    if !y.is_rcgraph() {
        return Err(Error::NotReduced(y.clone()));
    }
    let map = y.strands();
    let v = map.permutation();
    if !v.is_shuffle(r) {
        return Err(Error::NotAShuffle(v.clone(), r));
    }
    let mut per_strand: Vec<Vec<Letter>> = vec![Vec::new(); r];
    for p in y.places() {
        let (west, south) = map.at(p);
        let strand = west.min(south);
        if strand > r || west.max(south) <= r {
            return Err(Error::invariant(format!(
                "crossing {p} of a shuffle joins strands {west} and {south}"
            )));
        }
        per_strand[strand - 1].push(Letter {
            row: p.row,
            place: p,
            strand,
        });
    }
    let mut letters = Vec::with_capacity(y.len());
    let mut blocks = Vec::with_capacity(r);
    for mut block in per_strand {
        // Along its path a strand climbs rows and moves right.
        block.sort_by(|x, y| y.row.cmp(&x.row).then(x.place.col.cmp(&y.place.col)));
        blocks.push(block.len());
        letters.extend(block);
    }
    let word = ShuffleWord { r, blocks, letters };
    if word.shape()? != partition_of_shuffle(v, r)? {
        return Err(Error::invariant("shuffle word blocks disagree with the shape"));
    }
    Ok(word)
}

/// `S_0, ..., S_m` for a package `(w, R, T)` with `T` full: `S_m = R` and
/// `S_{j-1}` drops the crossing of the strands in box `j`.
pub fn s_chain(w: &Permutation, graph: &Graph, t: &TranspositionTableau) -> Result<Vec<Graph>> {
    if !t.is_full() {
        return Err(Error::NotAPackage("the tableau is not full".into()));
    }
    if !is_r_bruhat_package(w, graph, t) {
        return Err(Error::NotAPackage(format!("({w}, {graph}, {t})")));
    }
    let mut chain = vec![graph.clone()];
    for j in (1..=t.len()).rev() {
        let (a, b) = t.get(j).expect("full tableau");
        let (next, _) = chain.last().expect("nonempty").remove_crossing_of(a, b)?;
        chain.push(next);
    }
    chain.reverse();
    Ok(chain)
}

/// The place by which `S_j` exceeds `S_{j-1}`.
pub fn chain_step_place(chain: &[Graph], j: usize) -> Option<Place> {
    let (small, big) = (chain.get(j.checked_sub(1)?)?, chain.get(j)?);
    let mut diff = big.places().filter(|p| !small.contains(*p));
    let p = diff.next()?;
    diff.next().is_none().then_some(p)
}

/// Strands passing an empty place of row `row`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub col: usize,
    pub west: usize,
    pub south: usize,
}

/// Largest column in which a strand `<= r` can enter a place from the west.
fn scan_bound(map: &StrandMap, r: usize) -> usize {
    (1..=r).map(|s| map.permutation().apply(s)).max().unwrap_or(0)
}

fn empty_places(graph: &Graph, map: &StrandMap, row: usize, r: usize) -> Vec<Candidate> {
    (1..=scan_bound(map, r))
        .filter(|&col| !graph.contains(Place::new(row, col)))
        .map(|col| {
            let (west, south) = map.at(Place::new(row, col));
            Candidate { col, west, south }
        })
        .collect()
}

/// Empty places of row `row` where a strand `c <= r` enters from the west and
/// a strand `d > r` from the south, in increasing column order.
pub fn allowed_places_forward(graph: &Graph, row: usize, r: usize) -> Vec<Candidate> {
    let map = graph.strands();
    empty_places(graph, &map, row, r)
        .into_iter()
        .filter(|c| c.west <= r && r < c.south)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    RowToRow,
    Insertion,
    Rectification,
}

/// Which crossing a failed rectification removes from the current row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemovalCase {
    /// Strand `b` from the west, strand `a` from the south, where `(a b)` is
    /// the imported entry.
    A,
    /// Strand `b` from the west, strand `f` from the south, where `(a f)` is
    /// the entry of the previous box.
    B,
}

/// Which kind of place a repaired rectification reinserts into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaceType {
    /// West strand `<= r`, south strand `> r`.
    First,
    /// West strand equal to the second entry of the previous box, south strand
    /// `> r`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauEdit {
    #[serde(rename = "box")]
    pub index: usize,
    pub entry: Option<(usize, usize)>,
}

/// One step of a run: what changed and the state afterwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: (usize, usize),
    pub kind: StepKind,
    pub added: Vec<Place>,
    pub removed: Vec<Place>,
    pub tableau_edits: Vec<TableauEdit>,
    pub removal_case: Option<RemovalCase>,
    pub reinsertion: Option<PlaceType>,
    pub graph: Graph,
    pub tableau: TranspositionTableau,
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            StepKind::RowToRow => "row-to-row",
            StepKind::Insertion => "insertion",
            StepKind::Rectification => "rectification",
        };
        write!(f, "step ({},{}) {kind}", self.step.0, self.step.1)?;
        let list = |ps: &[Place]| ps.iter().map(Place::to_string).collect::<Vec<_>>().join(" ");
        if !self.added.is_empty() {
            write!(f, " +{}", list(&self.added))?;
        }
        if !self.removed.is_empty() {
            write!(f, " -{}", list(&self.removed))?;
        }
        if let Some(case) = self.removal_case {
            write!(f, " case {case:?}")?;
        }
        if let Some(kind) = self.reinsertion {
            write!(f, " reinsert {kind:?}")?;
        }
        write!(f, " T={}", format_word(&self.tableau.word()))
    }
}

/// The ordered log of a run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trace {
    pub steps: Vec<StepRecord>,
}

impl Trace {
    /// Applies every recorded crossing change to `start`, which is the empty
    /// graph for forward runs and the input graph for inverse runs.
    pub fn replay(&self, start: &Graph) -> Graph {
        let mut g = start.clone();
        for s in &self.steps {
            for &p in &s.removed {
                g.remove(p);
            }
            for &p in &s.added {
                g.insert(p);
            }
        }
        g
    }

    pub fn kinds_in_row(&self, row: usize) -> Vec<StepKind> {
        self.steps
            .iter()
            .filter(|s| s.step.0 == row && s.step.1 > 0)
            .map(|s| s.kind)
            .collect()
    }

    /// Steps `(ℓ, i)` that are rectifications, in execution order.
    pub fn rectifications(&self) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::Rectification)
            .map(|s| s.step)
            .collect()
    }

    pub fn with_removal_case(&self, case: RemovalCase) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter(|s| s.removal_case == Some(case))
            .map(|s| s.step)
            .collect()
    }

    pub fn with_reinsertion(&self, kind: PlaceType) -> Vec<(usize, usize)> {
        self.steps
            .iter()
            .filter(|s| s.reinsertion == Some(kind))
            .map(|s| s.step)
            .collect()
    }
}

/// The result of `insert(R, Y, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub graph: Graph,
    pub tableau: TranspositionTableau,
    pub trace: Trace,
}

/// Whether the pair `(w(R), v(λ, r))` is one the algorithm handles: `λ`
/// empty, `w` an r-semi-shuffle, or `λ` a hook.
pub fn is_supported(w: &Permutation, shape: &Partition, r: usize) -> bool {
    shape.is_empty() || w.is_semi_shuffle(r) || shape.is_hook()
}

pub(crate) fn check_step(
    base: &Permutation,
    graph: &Graph,
    t: &TranspositionTableau,
    step: (usize, usize),
) -> Result<()> {
    if !graph.is_rcgraph() {
        return Err(Error::invariant(format!(
            "after step {step:?} the graph {graph} is not reduced"
        )));
    }
    if !e_tableau(base, t).is_row_and_column_strict() {
        return Err(Error::invariant(format!(
            "after step {step:?} E({base}, {t}) is not row and column strict"
        )));
    }
    if !is_r_bruhat_package(base, graph, t) {
        return Err(Error::invariant(format!(
            "after step {step:?} ({base}, {graph}, {t}) is not an r-Bruhat package"
        )));
    }
    Ok(())
}

/// Per-row sum of two exponent vectors.
pub(crate) fn add_exponents(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len().max(b.len())];
    for (k, x) in out.iter_mut().enumerate() {
        *x = a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

struct RowState<'a> {
    row: usize,
    r: usize,
    base: Permutation,
    graph: Graph,
    tableau: TranspositionTableau,
    below_chain: &'a [Graph],
    below_tableau: Option<&'a TranspositionTableau>,
}

impl RowState<'_> {
    fn record(
        &self,
        i: usize,
        kind: StepKind,
        added: Vec<Place>,
        removed: Vec<Place>,
        tableau_edits: Vec<TableauEdit>,
    ) -> StepRecord {
        StepRecord {
            step: (self.row, i),
            kind,
            added,
            removed,
            tableau_edits,
            removal_case: None,
            reinsertion: None,
            graph: self.graph.clone(),
            tableau: self.tableau.clone(),
        }
    }

    fn insertion_step(&mut self, i: usize) -> Result<StepRecord> {
        let Some(place) = allowed_places_forward(&self.graph, self.row, self.r).pop() else {
            return Err(Error::invariant(format!(
                "no place allows insertion at step ({}, {i}) in {}",
                self.row, self.graph
            )));
        };
        let at = Place::new(self.row, place.col);
        self.graph = self
            .graph
            .add_crossing(at)
            .map_err(|e| Error::invariant(format!("insertion at {at} failed: {e}")))?;
        let entry = Some((place.west, place.south));
        self.tableau.set(i, entry);
        check_step(&self.base, &self.graph, &self.tableau, (self.row, i))?;
        Ok(self.record(
            i,
            StepKind::Insertion,
            vec![at],
            vec![],
            vec![TableauEdit { index: i, entry }],
        ))
    }

    fn rectification_step(&mut self, i: usize, link: usize) -> Result<StepRecord> {
        let (row, r) = (self.row, self.r);
        let imported = chain_step_place(self.below_chain, link).ok_or_else(|| {
            Error::invariant(format!("chain below row {row} has no step {link}"))
        })?;
        let (a, b) = self
            .below_tableau
            .and_then(|t| t.get(link))
            .ok_or_else(|| Error::invariant(format!("box {link} below row {row} is empty")))?;

        let mut graph = self.graph.clone();
        graph.insert(imported);
        let mut tableau = self.tableau.clone();
        tableau.set(i, Some((a, b)));
        let mut edits = vec![TableauEdit {
            index: i,
            entry: Some((a, b)),
        }];

        let accepted = e_tableau(&self.base, &tableau).is_row_and_column_strict()
            && is_r_bruhat_package(&self.base, &graph, &tableau);
        let mut record_removed = vec![];
        let mut record_added = vec![imported];
        let mut removal_case = None;
        let mut reinsertion = None;

        if !accepted {
            let map = graph.strands();
            let in_row: Vec<(Place, (usize, usize))> =
                graph.places_in_row(row).map(|p| (p, map.at(p))).collect();
            let previous = i.checked_sub(1).filter(|&k| k > 0).and_then(|k| tableau.get(k));
            let case_a = in_row.iter().find(|(_, s)| *s == (b, a)).map(|(p, _)| *p);
            let case_b = previous
                .filter(|&(e, _)| e == a)
                .and_then(|(_, f)| in_row.iter().find(|(_, s)| *s == (b, f)))
                .map(|(p, _)| *p);
            let (removed, case) = match (case_a, case_b) {
                (Some(p), _) => (p, RemovalCase::A),
                (None, Some(p)) => (p, RemovalCase::B),
                (None, None) => {
                    return Err(Error::invariant(format!(
                        "rectification ({row}, {i}) rejected but no removal pattern in {graph} \
                         with T' = {tableau}"
                    )))
                }
            };
            graph.remove(removed);
            tableau.set(i, None);
            edits.push(TableauEdit { index: i, entry: None });
            if case == RemovalCase::B {
                tableau.set(i - 1, Some((a, b)));
                edits.push(TableauEdit {
                    index: i - 1,
                    entry: Some((a, b)),
                });
            }

            let map = graph.strands();
            let previous_g = (i > 1).then(|| tableau.get(i - 1)).flatten();
            let found = (1..removed.col).rev().find_map(|col| {
                let at = Place::new(row, col);
                if graph.contains(at) {
                    return None;
                }
                let (west, south) = map.at(at);
                if south <= r {
                    return None;
                }
                if west <= r {
                    return Some((at, PlaceType::First, west, south));
                }
                match previous_g {
                    Some((_, g)) if g == west => Some((at, PlaceType::Second, west, south)),
                    _ => None,
                }
            });
            let Some((at, kind, west, south)) = found else {
                return Err(Error::invariant(format!(
                    "no reinsertion place left of column {} at step ({row}, {i}) in {graph}",
                    removed.col
                )));
            };
            graph = graph
                .add_crossing(at)
                .map_err(|e| Error::invariant(format!("reinsertion at {at} failed: {e}")))?;
            match kind {
                PlaceType::First => {
                    tableau.set(i, Some((west, south)));
                    edits.push(TableauEdit {
                        index: i,
                        entry: Some((west, south)),
                    });
                }
                PlaceType::Second => {
                    let (e, g) = previous_g.expect("second type needs a previous box");
                    tableau.set(i - 1, Some((e, south)));
                    tableau.set(i, Some((e, g)));
                    edits.push(TableauEdit {
                        index: i - 1,
                        entry: Some((e, south)),
                    });
                    edits.push(TableauEdit {
                        index: i,
                        entry: Some((e, g)),
                    });
                }
            }
            record_removed.push(removed);
            record_added.push(at);
            removal_case = Some(case);
            reinsertion = Some(kind);
        }

        self.graph = graph;
        self.tableau = tableau;
        check_step(&self.base, &self.graph, &self.tableau, (row, i))?;
        if self.graph.rows_from(row + 1) != self.below_chain[link] {
            return Err(Error::invariant(format!(
                "after step ({row}, {i}) the rows below {row} differ from the chain"
            )));
        }
        let mut rec = self.record(i, StepKind::Rectification, record_added, record_removed, edits);
        rec.removal_case = removal_case;
        rec.reinsertion = reinsertion;
        Ok(rec)
    }
}

/// `R <- Y` and `T(R, Y)`.
pub fn insert(graph: &Graph, y: &Graph, r: usize) -> Result<Insertion> {
    if r == 0 {
        return Err(Error::Malformed("r must be positive".into()));
    }
    if !graph.is_rcgraph() {
        return Err(Error::NotReduced(graph.clone()));
    }
    let word = shuffle_word(y, r)?;
    let shape = word.shape()?;
    let w = graph.permutation();
    if !is_supported(&w, &shape, r) {
        return Err(Error::Unsupported(format!(
            "{w} is not a {r}-semi-shuffle and {shape} is not a hook"
        )));
    }

    let mut trace = Trace::default();
    // Package of the finished row below: its chain and tableau.
    let mut below: Option<(Vec<Graph>, TranspositionTableau, RestrictedWord)> = None;
    let mut current = Graph::new();
    let mut tableau = TranspositionTableau::empty(Partition::empty(), r);

    for row in (1..=r).rev() {
        let restricted = word.restrict(row);
        let row_shape = restricted.word.shape()?;
        let y_below = y.rows_from(row);
        if row_shape != partition_of_shuffle(&y_below.permutation(), r)? {
            return Err(Error::invariant(format!("shape of Y restricted to rows >= {row}")));
        }
        let base = graph.rows_from(row).permutation();
        let start = match &below {
            None => graph.rows_from(row),
            Some((chain, _, _)) => chain[0].union(&graph.row(row)),
        };
        let mut state = RowState {
            row,
            r,
            base,
            graph: start,
            tableau: TranspositionTableau::empty(row_shape, r),
            below_chain: below.as_ref().map_or(&[][..], |b| &b.0[..]),
            below_tableau: below.as_ref().map(|b| &b.1),
        };
        check_step(&state.base, &state.graph, &state.tableau, (row, 0))?;
        let added: Vec<Place> = state.graph.places().filter(|p| !current.contains(*p)).collect();
        let removed: Vec<Place> = current.places().filter(|p| !state.graph.contains(*p)).collect();
        trace.steps.push(state.record(0, StepKind::RowToRow, added, removed, vec![]));

        for (k, letter) in restricted.word.letters().iter().enumerate() {
            let i = k + 1;
            let rec = if letter.row == row {
                state.insertion_step(i)?
            } else {
                let link = restricted.links[k].ok_or_else(|| {
                    Error::invariant(format!("letter {i} of row {row} has no link"))
                })?;
                state.rectification_step(i, link)?
            };
            trace.steps.push(rec);
        }

        let expected = add_exponents(&graph.rows_from(row).exponent(), &y_below.exponent());
        if state.graph.exponent() != expected {
            return Err(Error::invariant(format!(
                "monomial of row {row} result {} is not x^R x^Y",
                state.graph
            )));
        }
        let chain = s_chain(&state.base, &state.graph, &state.tableau)?;
        current = state.graph;
        tableau = state.tableau;
        below = Some((chain, tableau.clone(), restricted));
    }

    Ok(Insertion {
        graph: current,
        tableau,
        trace,
    })
}
