//! Finitely supported permutations of the positive integers and integer
//! partitions.
//!
//! A [`Permutation`] is stored in one-line notation over a window `1..=n`;
//! every integer beyond the window is a fixed point. Trailing fixed points are
//! always trimmed so that equality, hashing and ordering do not depend on the
//! window that happened to be used to build a value.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { images: Vec::new() }
    }

    /// Builds a permutation from one-line notation `w(1), ..., w(n)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::NotAPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Self::from_trusted(images))
    }

    pub(crate) fn from_trusted(mut images: Vec<usize>) -> Self {
        while let Some(&last) = images.last() {
            if last == images.len() {
                images.pop();
            } else {
                break;
            }
        }
        Permutation { images }
    }

    /// The simple reflection `s_i = t_{i,i+1}`.
    pub fn simple(i: usize) -> Self {
        Self::transposition(i, i + 1)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1, "transposition of non-positive integers");
        if a == b {
            return Self::identity();
        }
        let n = a.max(b);
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Self::from_trusted(images)
    }

    /// The longest element of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self::from_trusted((1..=n).rev().collect())
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        if i <= self.images.len() {
            self.images[i - 1]
        } else {
            i
        }
    }

    /// Trimmed one-line notation.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Largest integer moved by the permutation (0 for the identity).
    pub fn support(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    /// One-line notation padded with fixed points up to `n`.
    pub fn one_line(&self, n: usize) -> Vec<usize> {
        (1..=n.max(self.support())).map(|i| self.apply(i)).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Self::from_trusted(inv)
    }

    /// Product with the convention `(uv)(i) = u(v(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.support().max(other.support());
        Self::from_trusted((1..=n).map(|i| self.apply(other.apply(i))).collect())
    }

    /// `self * t_{c,d}`: swaps the values in positions `c` and `d`.
    pub fn swap_positions(&self, c: usize, d: usize) -> Self {
        let n = self.support().max(c).max(d);
        let mut images = self.one_line(n);
        images.swap(c - 1, d - 1);
        Self::from_trusted(images)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `l(w t_{cd}) = l(w) + 1`, tested without computing lengths:
    /// `w(c) < w(d)` and no `c < i < d` has `w(c) < w(i) < w(d)`.
    pub fn is_covering(&self, c: usize, d: usize) -> bool {
        assert!(c < d, "is_covering requires c < d");
        let (wc, wd) = (self.apply(c), self.apply(d));
        let result = wc < wd
            && !(c + 1..d).any(|i| {
                let wi = self.apply(i);
                wc < wi && wi < wd
            });
        debug_assert_eq!(
            result,
            self.swap_positions(c, d).length() == self.length() + 1,
            "covering criterion disagrees with length for {self} and ({c},{d})"
        );
        result
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.support()).filter(|&i| self.apply(i) > self.apply(i + 1)).collect()
    }

    /// No descent except possibly at `r`.
    pub fn is_shuffle(&self, r: usize) -> bool {
        self.descents().iter().all(|&i| i == r)
    }

    /// No descent at any position greater than `r`.
    pub fn is_semi_shuffle(&self, r: usize) -> bool {
        self.descents().iter().all(|&i| i <= r)
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, trailing zeros dropped.
    pub fn code(&self) -> Vec<usize> {
        let w = &self.images;
        let mut code: Vec<usize> = (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .collect();
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    /// Inverse of [`Permutation::code`]; any finitely supported nonnegative
    /// vector is the code of exactly one permutation.
    pub fn from_code(code: &[usize]) -> Self {
        let n = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c)
            .max()
            .unwrap_or(0);
        let mut available: Vec<usize> = (1..=n).collect();
        let mut images = Vec::with_capacity(n);
        for &c in code {
            images.push(available.remove(c));
        }
        images.extend(available);
        Self::from_trusted(images)
    }

    /// All permutations of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Self::from_trusted(current.clone()));
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.one_line(1);
        write!(f, "(")?;
        for (i, x) in shown.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zeros are accepted and dropped, so `(2,0)` is the row `(2)`.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Malformed(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `j` (1-based), zero beyond the last part.
    pub fn part(&self, j: usize) -> usize {
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(p, q)` with `λ = (p, 1^{q-1})`; rows and columns count as hooks.
    pub fn hook_shape(&self) -> Option<(usize, usize)> {
        match self.parts.split_first() {
            Some((&p, rest)) if rest.iter().all(|&x| x == 1) => Some((p, self.parts.len())),
            _ => None,
        }
    }

    pub fn is_hook(&self) -> bool {
        self.hook_shape().is_some()
    }

    /// All partitions fitting in a box with at most `rows` parts, each at
    /// most `cols`.
    pub fn all_in_box(rows: usize, cols: usize) -> Vec<Self> {
        fn go(rows: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: prefix.clone() });
            if prefix.len() == rows {
                return;
            }
            for p in 1..=max {
                prefix.push(p);
                go(rows, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of size at most `max_size` with at most `rows` parts.
    pub fn all_up_to(max_size: usize, rows: usize) -> Vec<Self> {
        Self::all_in_box(rows, max_size)
            .into_iter()
            .filter(|p| p.size() <= max_size)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// The `r`-shuffle `v(λ, r)`: `v(r+1-j) = λ_j + r + 1 - j` for `j ≤ r`, the
/// remaining values placed increasingly after position `r`.
pub fn shuffle_from_partition(shape: &Partition, r: usize) -> Result<Permutation> {
    if shape.len() > r {
        return Err(Error::TooManyParts { parts: shape.len(), r });
    }
    let n = r + shape.part(1);
    let mut images = vec![0; n];
    let mut used = vec![false; n + 1];
    for j in 1..=r {
        let value = shape.part(j) + r + 1 - j;
        images[r - j] = value;
        used[value] = true;
    }
    let mut rest = (1..=n).filter(|&x| !used[x]);
    for slot in images.iter_mut().skip(r) {
        *slot = rest.next().expect("shuffle window too small");
    }
    Ok(Permutation::from_trusted(images))
}

/// Shape of an `r`-shuffle: `λ_j = v(r+1-j) - r - 1 + j`.
pub fn partition_of_shuffle(v: &Permutation, r: usize) -> Result<Partition> {
    if !v.is_shuffle(r) || (r == 0 && !v.is_identity()) {
        return Err(Error::NotAShuffle(v.clone(), r));
    }
    let parts = (1..=r).map(|j| v.apply(r + 1 - j) + j - r - 1).collect();
    Partition::new(parts)
}
