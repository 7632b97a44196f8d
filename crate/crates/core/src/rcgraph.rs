//! Graphs (subwords of the staircase word) drawn as sets of crossings, and
//! rc-graphs, the reduced ones.
//!
//! Place `(i, j)` is row `i`, column `j`, both 1-based, and carries the letter
//! `i + j - 1`. Strand `s` enters row `s` from the left and leaves through the
//! top edge in column `w(s)`. At a crossing both strands go straight through;
//! at an elbow the strand entering from the west turns north and the strand
//! entering from the south turns east. The strand going straight through a
//! crossing from west to east is its horizontal strand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    pub row: usize,
    pub col: usize,
}

impl Place {
    pub const fn new(row: usize, col: usize) -> Self {
        Place { row, col }
    }

    /// The staircase letter `row + col - 1`.
    pub fn letter(self) -> usize {
        self.row + self.col - 1
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.row, self.col].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [row, col] = <[usize; 2]>::deserialize(d)?;
        if row == 0 || col == 0 {
            return Err(serde::de::Error::custom("rows and columns are 1-based"));
        }
        Ok(Place { row, col })
    }
}

/// A finite set of crossings. No staircase bound is imposed; the graph
/// extends right and down by non-crossing strands.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    crossings: BTreeSet<Place>,
}

/// Strands entering each place of a graph, computed once and queried many
/// times.
#[derive(Clone, Debug)]
pub struct StrandMap {
    // Largest row + col over the crossings; places with row + col > bound + 1
    // are untouched by the crossings.
    bound: usize,
    west: Vec<usize>,
    south: Vec<usize>,
    permutation: Permutation,
}

impl StrandMap {
    fn index(&self, p: Place) -> usize {
        p.row * (self.bound + 2) + p.col
    }

    /// `(west, south)`: the strand entering from the west and from the south.
    pub fn at(&self, p: Place) -> (usize, usize) {
        if p.row + p.col > self.bound + 1 {
            (p.row + p.col - 1, p.row + p.col)
        } else {
            let k = self.index(p);
            (self.west[k], self.south[k])
        }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.permutation
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_places<I: IntoIterator<Item = (usize, usize)>>(places: I) -> Self {
        Graph {
            crossings: places.into_iter().map(|(r, c)| Place::new(r, c)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn contains(&self, p: Place) -> bool {
        self.crossings.contains(&p)
    }

    /// Crossings in lexicographic (row, column) order.
    pub fn places(&self) -> impl Iterator<Item = Place> + '_ {
        self.crossings.iter().copied()
    }

    pub fn places_in_row(&self, row: usize) -> impl Iterator<Item = Place> + '_ {
        self.crossings
            .range(Place::new(row, 0)..Place::new(row + 1, 0))
            .copied()
    }

    pub(crate) fn insert(&mut self, p: Place) -> bool {
        self.crossings.insert(p)
    }

    pub(crate) fn remove(&mut self, p: Place) -> bool {
        self.crossings.remove(&p)
    }

    /// Largest `row + col` over all crossings, 0 for the empty graph.
    pub fn max_diagonal(&self) -> usize {
        self.crossings.iter().map(|p| p.row + p.col).max().unwrap_or(0)
    }

    pub fn max_row(&self) -> usize {
        self.crossings.iter().map(|p| p.row).max().unwrap_or(0)
    }

    /// Traces every strand through the region holding crossings.
    pub fn strands(&self) -> StrandMap {
        let bound = self.max_diagonal();
        let width = bound + 2;
        let mut west = vec![0; width * width];
        let mut south = vec![0; width * width];
        let mut north_out = vec![0; width * width];
        let mut columns = vec![0; bound + 1];
        for row in (1..=bound).rev() {
            let mut from_west = row;
            for col in 1..=bound + 1 - row {
                let k = row * width + col;
                let from_south = if row + col == bound + 1 {
                    bound + 1
                } else {
                    north_out[(row + 1) * width + col]
                };
                west[k] = from_west;
                south[k] = from_south;
                let (north, east) = if self.crossings.contains(&Place::new(row, col)) {
                    (from_south, from_west)
                } else {
                    (from_west, from_south)
                };
                north_out[k] = north;
                from_west = east;
                if row == 1 && col <= bound {
                    columns[col] = north;
                }
            }
        }
        let mut images = vec![0; bound];
        for (col, &strand) in columns.iter().enumerate().skip(1) {
            images[strand - 1] = col;
        }
        StrandMap {
            bound,
            west,
            south,
            permutation: Permutation::from_trusted(images),
        }
    }

    /// `w(R)` by strand tracing.
    pub fn permutation(&self) -> Permutation {
        let w = self.strands().permutation;
        debug_assert_eq!(w, self.reading_product(), "strand tracing disagrees with the word");
        w
    }

    /// Letters in reading order: rows top to bottom, right to left in a row.
    pub fn reading_letters(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut rows: BTreeMap<usize, Vec<Place>> = BTreeMap::new();
        for p in self.places() {
            rows.entry(p.row).or_default().push(p);
        }
        for (_, places) in rows {
            out.extend(places.iter().rev().map(|p| p.letter()));
        }
        out
    }

    /// The word of the graph as a subword of the staircase word of size `n`.
    pub fn word(&self, n: usize) -> Result<Vec<usize>> {
        if let Some(p) = self.places().find(|p| p.row + p.col > n) {
            return Err(Error::OutsideStaircase(p, n));
        }
        Ok(self.reading_letters())
    }

    /// Product of simple reflections along the reading word.
    pub fn reading_product(&self) -> Permutation {
        let n = self.max_diagonal();
        let mut images: Vec<usize> = (1..=n).collect();
        // w = s_{i1} ... s_{im}: apply the letters right to left to positions.
        for letter in self.reading_letters().into_iter().rev() {
            // (u s_k)(i) = u(s_k(i)) means swapping positions k, k+1 of u;
            // building from the right we instead swap values.
            for x in images.iter_mut() {
                if *x == letter {
                    *x = letter + 1;
                } else if *x == letter + 1 {
                    *x = letter;
                }
            }
        }
        Permutation::from_trusted(images)
    }

    /// `|R| = l(w(R))`.
    pub fn is_rcgraph(&self) -> bool {
        let reduced = self.len() == self.permutation().length();
        debug_assert_eq!(reduced, !self.has_double_crossing());
        reduced
    }

    /// Whether some pair of strands crosses more than once.
    pub fn has_double_crossing(&self) -> bool {
        let map = self.strands();
        let mut seen = BTreeSet::new();
        self.places().any(|p| {
            let (a, b) = map.at(p);
            !seen.insert((a.min(b), a.max(b)))
        })
    }

    pub fn strands_at(&self, p: Place) -> (usize, usize) {
        self.strands().at(p)
    }

    /// Rows `ℓ` with `a ⊞ b = ℓ`: strands `a` and `b` cross in row `ℓ` with
    /// `a` horizontal.
    pub fn box_plus(&self, a: usize, b: usize) -> Vec<usize> {
        let map = self.strands();
        self.places()
            .filter(|&p| map.at(p) == (a, b))
            .map(|p| p.row)
            .collect()
    }

    /// Places where strands `c` and `d` cross, in either orientation.
    pub fn crossings_of(&self, c: usize, d: usize) -> Vec<Place> {
        let map = self.strands();
        self.places()
            .filter(|&p| {
                let (x, y) = map.at(p);
                (x, y) == (c, d) || (x, y) == (d, c)
            })
            .collect()
    }

    /// `R_I` for an arbitrary row predicate.
    pub fn restrict_rows(&self, mut keep: impl FnMut(usize) -> bool) -> Graph {
        Graph {
            crossings: self.crossings.iter().copied().filter(|p| keep(p.row)).collect(),
        }
    }

    /// `R_{≥ℓ}`.
    pub fn rows_from(&self, row: usize) -> Graph {
        self.restrict_rows(|r| r >= row)
    }

    /// `R_ℓ`.
    pub fn row(&self, row: usize) -> Graph {
        self.restrict_rows(|r| r == row)
    }

    pub fn union(&self, other: &Graph) -> Graph {
        let result = Graph {
            crossings: self.crossings.union(&other.crossings).copied().collect(),
        };
        #[cfg(debug_assertions)]
        {
            let lower = other.places().map(|p| p.row).min();
            let upper = self.max_row();
            if matches!(lower, Some(l) if upper < l) {
                debug_assert_eq!(
                    result.permutation(),
                    &self.permutation() * &other.permutation(),
                    "w(R ∪ S) = w(R) w(S) fails"
                );
            }
        }
        result
    }

    /// Adds a crossing at an empty place whose two strands do not yet cross.
    /// The permutation is multiplied on the right by the transposition of the
    /// two strands and the length goes up by one.
    pub fn add_crossing(&self, p: Place) -> Result<Graph> {
        if self.contains(p) {
            return Err(Error::Occupied(p));
        }
        let map = self.strands();
        let (west, south) = map.at(p);
        let (c, d) = (west.min(south), west.max(south));
        let crossed = self.places().any(|q| {
            let (x, y) = map.at(q);
            (x.min(y), x.max(y)) == (c, d)
        });
        if crossed {
            return Err(Error::StrandsAlreadyCross(c, d));
        }
        let mut out = self.clone();
        out.insert(p);
        debug_assert_eq!(out.permutation(), map.permutation().swap_positions(c, d));
        Ok(out)
    }

    /// Removes the crossing of strands `c` and `d`, provided that lowers the
    /// length of the permutation by one. Returns the new graph and the place
    /// of the removed crossing.
    pub fn remove_crossing_of(&self, c: usize, d: usize) -> Result<(Graph, Place)> {
        let (c, d) = (c.min(d), c.max(d));
        let w = self.permutation();
        if c == d || w.apply(c) < w.apply(d) || w.swap_positions(c, d).length() + 1 != w.length() {
            return Err(Error::NotRemovable(c, d));
        }
        let places = self.crossings_of(c, d);
        let [place] = places[..] else {
            return Err(Error::NotRemovable(c, d));
        };
        let mut out = self.clone();
        out.remove(place);
        Ok((out, place))
    }

    /// Per-row crossing counts, the exponent of `x^R`.
    pub fn exponent(&self) -> Vec<usize> {
        let mut exp = vec![0; self.max_row()];
        for p in self.places() {
            exp[p.row - 1] += 1;
        }
        exp
    }

    /// ASCII picture with the staircase size taken from the crossings.
    pub fn render(&self) -> String {
        self.render_with_size(self.max_diagonal().max(1))
    }

    /// ASCII picture of the staircase of size `n`.
    ///
    /// The first line holds the column labels `1..=n`; each following line
    /// holds a row label `1..=n` and then one cell per column: `+` for a
    /// crossing, `.` for an elbow inside the staircase (`row + col <= n`).
    /// Labels and cells are right-aligned to the width of `n` in decimal and
    /// separated by single spaces; trailing spaces are trimmed and every line
    /// ends with `\n`. Crossings outside the staircase are still drawn.
    pub fn render_with_size(&self, n: usize) -> String {
        let n = n.max(self.max_row()).max(self.places().map(|p| p.col).max().unwrap_or(0));
        let w = n.to_string().len();
        let mut out = String::new();
        let mut line = " ".repeat(w);
        for col in 1..=n {
            line.push_str(&format!(" {col:>w$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for row in 1..=n {
            let mut line = format!("{row:>w$}");
            for col in 1..=n {
                let cell = if self.contains(Place::new(row, col)) {
                    '+'
                } else if row + col <= n {
                    '.'
                } else {
                    ' '
                };
                line.push_str(&format!(" {cell:>w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.crossings.iter()).finish()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphRepr {
    crossings: Vec<Place>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            crossings: self.places().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        let len = repr.crossings.len();
        let crossings: BTreeSet<Place> = repr.crossings.into_iter().collect();
        if crossings.len() != len {
            return Err(serde::de::Error::custom("duplicate crossing"));
        }
        Ok(Graph { crossings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(places: &[(usize, usize)]) -> Graph {
        Graph::from_places(places.iter().copied())
    }

    fn p(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn staircase(n: usize) -> Graph {
        Graph::from_places((1..n).flat_map(|i| (1..=n - i).map(move |j| (i, j))))
    }

    fn doubled() -> Graph {
        g(&[(1, 2), (2, 1), (2, 2), (3, 1)])
    }

    fn four_crossings() -> Graph {
        g(&[(1, 1), (2, 1), (1, 4), (2, 2)])
    }

    #[test]
    fn words() {
        assert_eq!(staircase(3).word(3).unwrap(), vec![2, 1, 2]);
        assert_eq!(four_crossings().word(5).unwrap(), vec![4, 1, 3, 2]);
        assert_eq!(doubled().word(5).unwrap(), vec![2, 3, 2, 3]);
        assert!(Graph::new().word(1).unwrap().is_empty());
        assert!(matches!(g(&[(2, 3)]).word(4), Err(Error::OutsideStaircase(..))));
    }

    #[test]
    fn permutations() {
        assert_eq!(doubled().permutation(), p(&[1, 4, 2, 3]));
        assert_eq!(g(&[(1, 2), (1, 3), (2, 2)]).permutation(), p(&[1, 4, 3, 2]));
        assert_eq!(Graph::new().permutation(), Permutation::identity());
        assert_eq!(g(&[(1, 1)]).permutation(), Permutation::simple(1));
        assert_eq!(staircase(5).permutation(), Permutation::longest(5));
    }

    #[test]
    fn reducedness() {
        assert!(!doubled().is_rcgraph());
        assert!(doubled().has_double_crossing());
        assert!(four_crossings().is_rcgraph());
        assert!(g(&[(1, 1), (1, 2), (1, 3), (2, 1), (3, 1)]).is_rcgraph());
        assert!(Graph::new().is_rcgraph());
    }

    #[test]
    fn strands_passing_places() {
        let third = four_crossings();
        let (a, b) = third.strands_at(Place::new(2, 2));
        assert_eq!((a.min(b), a.max(b)), (2, 4));
        let (a, b) = third.strands_at(Place::new(1, 3));
        assert_eq!((a.min(b), a.max(b)), (2, 4));
        assert_eq!(Graph::new().strands_at(Place::new(3, 4)), (6, 7));
        assert_eq!(g(&[(2, 2)]).strands_at(Place::new(2, 3)), (3, 5));
    }

    #[test]
    fn box_plus_on_a_double_crossing() {
        assert_eq!(doubled().box_plus(3, 4), vec![3]);
        assert_eq!(doubled().box_plus(4, 3), vec![1]);
        assert!(doubled().box_plus(1, 5).is_empty());
    }

    #[test]
    fn restriction_and_union() {
        let r = g(&[(1, 3), (1, 4), (2, 3), (3, 3)]);
        assert_eq!(r.rows_from(2), g(&[(2, 3), (3, 3)]));
        assert_eq!(r.restrict_rows(|_| true), r);
        assert!(r.restrict_rows(|_| false).is_empty());
        assert_eq!(r.row(1), g(&[(1, 3), (1, 4)]));

        assert_eq!(r.union(&Graph::new()), r);
        let u = g(&[(1, 1)]).union(&g(&[(2, 1)]));
        assert_eq!(u, g(&[(1, 1), (2, 1)]));
        assert_eq!(u.permutation(), &Permutation::simple(1) * &Permutation::simple(2));
    }

    #[test]
    fn adding_and_removing() {
        let one = Graph::new().add_crossing(Place::new(1, 1)).unwrap();
        assert_eq!(one, g(&[(1, 1)]));
        assert_eq!(one.permutation(), Permutation::simple(1));
        assert_eq!(
            g(&[(2, 2)]).add_crossing(Place::new(2, 3)).unwrap(),
            g(&[(2, 2), (2, 3)])
        );
        assert!(matches!(one.add_crossing(Place::new(1, 1)), Err(Error::Occupied(_))));
        // both places carry the letter 2, so the word would be 2 2
        let r = g(&[(2, 1)]);
        assert!(matches!(r.add_crossing(Place::new(1, 2)), Err(Error::StrandsAlreadyCross(2, 3))));

        let (empty, place) = one.remove_crossing_of(1, 2).unwrap();
        assert!(empty.is_empty());
        assert_eq!(place, Place::new(1, 1));
        assert!(matches!(one.remove_crossing_of(2, 3), Err(Error::NotRemovable(2, 3))));
    }

    #[test]
    fn exponents() {
        assert_eq!(g(&[(1, 2), (1, 3), (2, 2)]).exponent(), vec![2, 1]);
        assert_eq!(g(&[(1, 3), (2, 1), (2, 3), (3, 1)]).exponent(), vec![1, 2, 1]);
        assert!(Graph::new().exponent().is_empty());
    }

    #[test]
    fn render_snapshot() {
        let expected = "  1 2 3 4 5\n\
                        1 + . . +\n\
                        2 + + .\n\
                        3 . .\n\
                        4 .\n\
                        5\n";
        assert_eq!(four_crossings().render(), expected);
        assert_eq!(Graph::new().render(), "  1\n1\n");
    }

    #[test]
    fn json_shape() {
        let r = g(&[(2, 1), (1, 3)]);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"crossings":[[1,3],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&text).unwrap(), r);
        assert!(serde_json::from_str::<Graph>(r#"{"crossings":[[1,1],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<Graph>(r#"{"crossings":[[0,1]]}"#).is_err());
    }
}
