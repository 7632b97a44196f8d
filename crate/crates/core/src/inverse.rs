//! Recovering `(R, Y)` from `(U, T)`.
//!
//! The steps of the forward run are undone in reverse order: rows `1..=r`,
//! and within row `ℓ` boxes `m_ℓ` down to 1. Each step is an inverse insertion
//! (the box's crossing sits in row `ℓ` and nothing to its right could have
//! displaced it) or an inverse rectification (the box's entry goes back to the
//! rows below). Rectification positions rebuild the shuffle word of `Y`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::insertion::{
    check_step, is_supported, s_chain, shuffle_word, PlaceType, StepKind, StepRecord,
    TableauEdit, Trace,
};
use crate::perm::{shuffle_from_partition, Partition, Permutation};
use crate::rcgraph::{Graph, Place};
use crate::schubert::for_each_rcgraph;
use crate::tableau::{e_tableau, is_r_bruhat_package, BoxOrder, TranspositionTableau};

/// The result of inverse insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseInsertion {
    pub graph: Graph,
    pub y: Graph,
    /// Rows of the shuffle word of `y`.
    pub word: Vec<usize>,
    pub trace: Trace,
}

/// All rc-graphs of `v(λ, r)` keyed by the rows of their shuffle word.
#[derive(Clone, Debug)]
pub struct ShuffleIndex {
    shape: Partition,
    r: usize,
    by_word: HashMap<Vec<usize>, Graph>,
}

impl ShuffleIndex {
    pub fn new(shape: &Partition, r: usize) -> Result<Self> {
        let v = shuffle_from_partition(shape, r)?;
        let mut by_word = HashMap::new();
        let mut failure = None;
        for_each_rcgraph(&v, v.support().max(1), |y| {
            if failure.is_some() {
                return;
            }
            match shuffle_word(y, r) {
                Ok(word) => {
                    if let Some(other) = by_word.insert(word.rows(), y.clone()) {
                        failure = Some(Error::invariant(format!(
                            "rc-graphs {other} and {y} share the shuffle word {:?}",
                            word.rows()
                        )));
                    }
                }
                Err(e) => failure = Some(e),
            }
        })?;
        match failure {
            Some(e) => Err(e),
            None => Ok(ShuffleIndex {
                shape: shape.clone(),
                r,
                by_word,
            }),
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.by_word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_word.is_empty()
    }

    pub fn get(&self, rows: &[usize]) -> Option<&Graph> {
        self.by_word.get(rows)
    }
}

/// Checks that `rows` splits into blocks of lengths `λ_r, ..., λ_1`, each
/// weakly decreasing.
fn check_word_shape(rows: &[usize], shape: &Partition, r: usize) -> Result<()> {
    if shape.len() > r {
        return Err(Error::TooManyParts {
            parts: shape.len(),
            r,
        });
    }
    if rows.len() != shape.size() {
        return Err(Error::Malformed(format!(
            "word of length {} for a shape with {} boxes",
            rows.len(),
            shape.size()
        )));
    }
    let mut at = 0;
    for s in 1..=r {
        let block = &rows[at..at + shape.part(r + 1 - s)];
        if block.windows(2).any(|p| p[0] < p[1]) || block.contains(&0) {
            return Err(Error::Malformed(format!(
                "block {s} of the word is not weakly decreasing: {block:?}"
            )));
        }
        at += block.len();
    }
    Ok(())
}

/// The rc-graph of `v(λ, r)` whose shuffle word has the given rows.
pub fn rcgraph_from_word(rows: &[usize], shape: &Partition, r: usize) -> Result<Graph> {
    check_word_shape(rows, shape, r)?;
    let index = ShuffleIndex::new(shape, r)?;
    index
        .get(rows)
        .cloned()
        .ok_or_else(|| Error::Malformed(format!("no rc-graph of the shuffle has word {rows:?}")))
}

/// `U -> T` and `Y(U, T)`.
pub fn inverse_insert(
    u: &Graph,
    t: &TranspositionTableau,
    w: &Permutation,
    r: usize,
) -> Result<InverseInsertion> {
    let index = ShuffleIndex::new(t.shape(), r)?;
    inverse_insert_indexed(u, t, w, r, &index)
}

struct Step {
    graph: Graph,
    tableau: TranspositionTableau,
    record: StepRecord,
    below: Option<(usize, usize)>,
}

fn find_single_crossing(graph: &Graph, c: usize, d: usize, context: &str) -> Result<Place> {
    match graph.crossings_of(c, d)[..] {
        [p] => Ok(p),
        _ => Err(Error::invariant(format!(
            "{context}: strands {c} and {d} do not cross exactly once in {graph}"
        ))),
    }
}

fn inverse_step(
    graph: &Graph,
    tableau: &TranspositionTableau,
    row: usize,
    i: usize,
    r: usize,
) -> Result<Step> {
    let context = format!("inverse step ({row}, {i})");
    let (c, d) = tableau
        .get(i)
        .ok_or_else(|| Error::invariant(format!("{context}: box {i} is empty")))?;
    let at = find_single_crossing(graph, c, d, &context)?;
    let previous = (i > 1).then(|| tableau.get(i - 1)).flatten();

    let mut g2 = graph.clone();
    let mut t2 = tableau.clone();
    let mut edits = vec![];
    let removed_first;

    if at.row == row {
        g2.remove(at);
        t2.set(i, None);
        edits.push(TableauEdit { index: i, entry: None });
        removed_first = at;
        if find_reinsertion(&g2, &t2, row, i, at.col, r).is_none() {
            let record = StepRecord {
                step: (row, i),
                kind: StepKind::Insertion,
                added: vec![],
                removed: vec![at],
                tableau_edits: edits,
                removal_case: None,
                reinsertion: None,
                graph: g2.clone(),
                tableau: t2.clone(),
            };
            return Ok(Step {
                graph: g2,
                tableau: t2,
                record,
                below: None,
            });
        }
    } else {
        let map = graph.strands();
        let special = previous
            .filter(|&(e, _)| e == c)
            .and_then(|(_, f)| graph.places_in_row(row).find(|&p| map.at(p) == (d, f)));
        match special {
            Some(p) => {
                g2.remove(p);
                t2.set(i, None);
                t2.set(i - 1, Some((c, d)));
                edits.push(TableauEdit { index: i, entry: None });
                edits.push(TableauEdit {
                    index: i - 1,
                    entry: Some((c, d)),
                });
                removed_first = p;
            }
            None => {
                g2.remove(at);
                t2.set(i, None);
                edits.push(TableauEdit { index: i, entry: None });
                let record = StepRecord {
                    step: (row, i),
                    kind: StepKind::Rectification,
                    added: vec![],
                    removed: vec![at],
                    tableau_edits: edits,
                    removal_case: None,
                    reinsertion: None,
                    graph: g2.clone(),
                    tableau: t2.clone(),
                };
                return Ok(Step {
                    graph: g2,
                    tableau: t2,
                    record,
                    below: Some((c, d)),
                });
            }
        }
    }

    let (place, kind, west, south) = find_reinsertion(&g2, &t2, row, i, removed_first.col, r)
        .ok_or_else(|| Error::invariant(format!("{context}: no place to reinsert in {g2}")))?;
    // The reinserted crossing may cross strands that also meet below row
    // `row`; that second crossing is the one sent back down.
    let mut g3 = g2;
    g3.insert(place);
    let mut t3 = t2;
    match kind {
        PlaceType::First => {
            t3.set(i, Some((south, west)));
            edits.push(TableauEdit {
                index: i,
                entry: Some((south, west)),
            });
        }
        PlaceType::Second => {
            let (e, g) = t3.get(i - 1).expect("second type needs a previous box");
            t3.set(i - 1, Some((e, south)));
            t3.set(i, Some((e, g)));
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
    let (a, b) = t3.get(i).expect("just filled");
    let below = match g3.crossings_of(a, b).into_iter().filter(|p| p.row > row).collect::<Vec<_>>()[..] {
        [p] => p,
        _ => {
            return Err(Error::invariant(format!(
                "{context}: strands {a} and {b} do not cross exactly once below row {row} in {g3}"
            )))
        }
    };
    g3.remove(below);
    t3.set(i, None);
    edits.push(TableauEdit { index: i, entry: None });
    let record = StepRecord {
        step: (row, i),
        kind: StepKind::Rectification,
        added: vec![place],
        removed: vec![removed_first, below],
        tableau_edits: edits,
        removal_case: None,
        reinsertion: Some(kind),
        graph: g3.clone(),
        tableau: t3.clone(),
    };
    Ok(Step {
        graph: g3,
        tableau: t3,
        record,
        below: Some((a, b)),
    })
}

/// Leftmost empty place of `row` right of column `after` that a rectification
/// could have vacated: west strand `b > r` with south strand `a <= r`, or
/// west strand equal to the second entry of box `i - 1` with south strand
/// `> r`.
fn find_reinsertion(
    graph: &Graph,
    tableau: &TranspositionTableau,
    row: usize,
    i: usize,
    after: usize,
    r: usize,
) -> Option<(Place, PlaceType, usize, usize)> {
    let map = graph.strands();
    let previous = (i > 1).then(|| tableau.get(i - 1)).flatten();
    let widest = tableau.entries().iter().flatten().map(|&(_, b)| b).max().unwrap_or(0);
    let limit = graph.max_diagonal() + widest.max(r) + 2;
    (after + 1..=limit).find_map(|col| {
        let at = Place::new(row, col);
        if graph.contains(at) {
            return None;
        }
        let (west, south) = map.at(at);
        if west <= r {
            return None;
        }
        if south <= r {
            return Some((at, PlaceType::First, west, south));
        }
        match previous {
            Some((_, g)) if g == west => Some((at, PlaceType::Second, west, south)),
            _ => None,
        }
    })
}

/// Shape of the boxes `indices` of `order`, provided they form a Young
/// diagram whose own box order lists them in the same sequence.
fn sub_shape(order: &BoxOrder, indices: &[usize]) -> Result<Partition> {
    let rows = order.shape().len();
    let mut lengths = vec![0; rows];
    for &i in indices {
        let (row, _) = order.cell(i);
        lengths[row - 1] += 1;
    }
    let shape = Partition::new(lengths.clone())
        .map_err(|_| Error::invariant(format!("rectified boxes {indices:?} are not a diagram")))?;
    let cells: Vec<(usize, usize)> = indices.iter().map(|&i| order.cell(i)).collect();
    let expected = BoxOrder::new(&shape);
    let same = cells.len() == expected.len()
        && cells.iter().zip(expected.cells()).all(|(&(r1, c1), &(r2, c2))| r1 == r2 && c1 == c2);
    if !same || lengths.iter().skip(shape.len()).any(|&l| l > 0) {
        return Err(Error::invariant(format!(
            "rectified boxes {indices:?} do not form a subdiagram of {}",
            order.shape()
        )));
    }
    Ok(shape)
}

/// [`inverse_insert`] with a prebuilt index of the rc-graphs of the shuffle.
pub fn inverse_insert_indexed(
    u: &Graph,
    t: &TranspositionTableau,
    w: &Permutation,
    r: usize,
    index: &ShuffleIndex,
) -> Result<InverseInsertion> {
    if r == 0 || t.r() != r {
        return Err(Error::Malformed(format!(
            "the tableau is for r = {}, not r = {r}",
            t.r()
        )));
    }
    if index.shape() != t.shape() || index.r != r {
        return Err(Error::Malformed("shuffle index built for another shape".into()));
    }
    if !u.is_rcgraph() {
        return Err(Error::NotReduced(u.clone()));
    }
    if !t.is_full() {
        return Err(Error::NotAPackage("the tableau is not full".into()));
    }
    if !is_r_bruhat_package(w, u, t) {
        return Err(Error::NotAPackage(format!("({w}, {u}, {t})")));
    }
    if !e_tableau(w, t).is_row_and_column_strict() {
        return Err(Error::NotStrict);
    }
    if !is_supported(w, t.shape(), r) {
        return Err(Error::Unsupported(format!(
            "{w} is not a {r}-semi-shuffle and {} is not a hook",
            t.shape()
        )));
    }

    let mut trace = Trace::default();
    let mut graph = u.clone();
    let mut tableau = t.clone();
    let mut base = w.clone();
    let mut rows_above: Vec<Graph> = Vec::new();
    // Per row: number of boxes and rectified positions.
    let mut history: Vec<(usize, Vec<usize>)> = Vec::new();

    for row in 1..=r {
        let order = tableau.order();
        let start = graph.clone();
        let mut rectified: Vec<(usize, (usize, usize))> = Vec::new();
        for i in (1..=tableau.len()).rev() {
            let step = inverse_step(&graph, &tableau, row, i, r)?;
            check_step(&base, &step.graph, &step.tableau, (row, i))?;
            if let Some(entry) = step.below {
                rectified.push((i, entry));
            }
            graph = step.graph;
            tableau = step.tableau;
            trace.steps.push(step.record);
        }
        rectified.reverse();
        let indices: Vec<usize> = rectified.iter().map(|&(i, _)| i).collect();
        history.push((order.len(), indices.clone()));

        let below_shape = sub_shape(&order, &indices)?;
        let entries: Vec<(usize, usize)> = rectified.iter().map(|&(_, e)| e).collect();
        rows_above.push(graph.row(row));
        let next_start = start.rows_from(row + 1);
        let next_base = graph.rows_from(row + 1).permutation();
        let next_tableau = TranspositionTableau::from_word(below_shape, r, &entries)
            .map_err(|e| Error::invariant(format!("tableau below row {row}: {e}")))?;
        if row == r {
            if !entries.is_empty() {
                return Err(Error::invariant(format!("row {r} ends with rectifications")));
            }
            break;
        }
        let chain = s_chain(&next_base, &next_start, &next_tableau)
            .map_err(|e| Error::invariant(format!("package below row {row}: {e}")))?;
        if chain[0] != graph.rows_from(row + 1) {
            return Err(Error::invariant(format!(
                "bottom of the chain below row {row} is not the recovered graph"
            )));
        }
        let removed: Vec<Place> = graph.places().filter(|p| p.row == row).collect();
        let added: Vec<Place> = next_start.places().filter(|p| !graph.contains(*p)).collect();
        graph = next_start;
        tableau = next_tableau;
        base = next_base;
        trace.steps.push(StepRecord {
            step: (row, 0),
            kind: StepKind::RowToRow,
            added,
            removed,
            tableau_edits: vec![],
            removal_case: None,
            reinsertion: None,
            graph: graph.clone(),
            tableau: tableau.clone(),
        });
    }

    let recovered = rows_above.iter().fold(graph.clone(), |acc, g| acc.union(g));
    if &recovered.permutation() != w {
        return Err(Error::invariant(format!("recovered {recovered} does not have permutation {w}")));
    }

    let mut word: Vec<usize> = Vec::new();
    for (k, (len, indices)) in history.iter().enumerate().rev() {
        let row = k + 1;
        let mut next = vec![row; *len];
        for (slot, &i) in indices.iter().enumerate() {
            next[i - 1] = word[slot];
        }
        word = next;
    }
    let y = index
        .get(&word)
        .cloned()
        .ok_or_else(|| Error::invariant(format!("no rc-graph of the shuffle has word {word:?}")))?;

    Ok(InverseInsertion {
        graph: recovered,
        y,
        word,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::insertion::insert;

    fn g(places: &[(usize, usize)]) -> Graph {
        Graph::from_places(places.iter().copied())
    }

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn tab(shape: &[usize], r: usize, word: &[(usize, usize)]) -> TranspositionTableau {
        TranspositionTableau::from_word(part(shape), r, word).unwrap()
    }

    #[test]
    fn words_to_graphs() {
        let y = rcgraph_from_word(&[2, 1, 3, 2], &part(&[2, 2]), 3).unwrap();
        assert_eq!(y, g(&[(1, 3), (2, 1), (2, 3), (3, 1)]));
        let y = rcgraph_from_word(&[1, 3, 1], &part(&[2, 1]), 3).unwrap();
        assert_eq!(y, g(&[(3, 1), (1, 2), (1, 4)]));
        assert_eq!(rcgraph_from_word(&[], &Partition::empty(), 2).unwrap(), Graph::new());
        assert!(rcgraph_from_word(&[1, 2], &part(&[2]), 1).is_err());
    }

    #[test]
    fn second_example() {
        let u = g(&[(1, 1), (1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1)]);
        let t = tab(&[2, 2], 3, &[(3, 5), (3, 6), (1, 4), (2, 6)]);
        let w = Permutation::new(vec![1, 4, 3, 2]).unwrap();
        let out = inverse_insert(&u, &t, &w, 3).unwrap();
        assert_eq!(out.graph, g(&[(1, 2), (1, 3), (2, 2)]));
        assert_eq!(out.y, g(&[(1, 3), (2, 1), (2, 3), (3, 1)]));
        assert_eq!(out.word, vec![2, 1, 3, 2]);
    }

    #[test]
    fn third_example() {
        let u = g(&[(1, 2), (1, 3), (1, 6), (3, 1), (3, 2), (3, 3)]);
        let t = tab(&[2, 1], 3, &[(3, 4), (2, 4), (3, 7)]);
        let w = Permutation::new(vec![1, 2, 4, 6, 3, 5]).unwrap();
        let out = inverse_insert(&u, &t, &w, 3).unwrap();
        assert_eq!(out.graph, g(&[(1, 3), (3, 2), (3, 3)]));
        assert_eq!(out.y, g(&[(3, 1), (1, 2), (1, 4)]));
    }

    #[test]
    fn fourth_example() {
        let u = g(&[(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 3)]);
        let t = tab(&[2], 2, &[(2, 4), (2, 3)]);
        let w = Permutation::new(vec![1, 2, 5, 4, 6, 3]).unwrap();
        let out = inverse_insert(&u, &t, &w, 2).unwrap();
        assert_eq!(out.graph, g(&[(1, 3), (1, 4), (2, 3), (3, 3)]));
        assert_eq!(out.y, g(&[(2, 1), (2, 2)]));
    }

    #[test]
    fn empty_tableau() {
        let u = g(&[(1, 1), (2, 1)]);
        let t = TranspositionTableau::empty(Partition::empty(), 2);
        let out = inverse_insert(&u, &t, &u.permutation(), 2).unwrap();
        assert_eq!(out.graph, u);
        assert!(out.y.is_empty());
    }

    #[test]
    fn round_trips_on_the_examples() {
        let cases = [
            (g(&[(1, 2), (1, 3), (2, 2)]), g(&[(1, 3), (2, 1), (2, 3), (3, 1)]), 3),
            (g(&[(1, 3), (3, 2), (3, 3)]), g(&[(3, 1), (1, 2), (1, 4)]), 3),
            (g(&[(1, 3), (1, 4), (2, 3), (3, 3)]), g(&[(2, 1), (2, 2)]), 2),
        ];
        for (r_graph, y, r) in cases {
            let fwd = insert(&r_graph, &y, r).unwrap();
            let back = inverse_insert(&fwd.graph, &fwd.tableau, &r_graph.permutation(), r).unwrap();
            assert_eq!((back.graph, back.y), (r_graph, y));
        }
    }

    #[test]
    fn preconditions() {
        let u = g(&[(1, 1)]);
        let t = tab(&[1], 1, &[(1, 2)]);
        let w = Permutation::identity();
        assert!(inverse_insert(&u, &t, &w, 1).is_ok());
        assert!(matches!(
            inverse_insert(&u, &t, &Permutation::simple(2), 1),
            Err(Error::NotAPackage(_))
        ));
        assert!(matches!(
            inverse_insert(&u, &TranspositionTableau::empty(part(&[1]), 1), &w, 1),
            Err(Error::NotAPackage(_))
        ));
    }
}
