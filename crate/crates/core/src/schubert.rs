//! Rc-graph enumeration, Schubert polynomials, integer polynomial arithmetic,
//! Schubert-basis expansion and Schur polynomials from semistandard tableaux.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Partition, Permutation};
use crate::rcgraph::{Graph, Place};

/// Integer polynomial in `x_1, x_2, ...` stored as exponent vector to
/// coefficient. Exponent vectors carry no trailing zeros and no coefficient is
/// zero, so map order is lexicographic order of monomials.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, i64>,
}

fn trim(mut exp: Vec<u32>) -> Vec<u32> {
    while exp.last() == Some(&0) {
        exp.pop();
    }
    exp
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(&[], 1)
    }

    pub fn monomial(exp: &[u32], coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp.to_vec(), coeff);
        p
    }

    /// `x_i`, 1-based.
    pub fn variable(i: usize) -> Self {
        let mut exp = vec![0; i];
        exp[i - 1] = 1;
        Self::monomial(&exp, 1)
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let exp = trim(exp);
        let entry = self.terms.entry(exp.clone()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> i64 {
        self.terms.get(&trim(exp.to_vec())).copied().unwrap_or(0)
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    /// The lexicographically smallest monomial.
    pub fn leading_lex_min(&self) -> Option<(&[u32], i64)> {
        self.terms.iter().next().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Whether every monomial has total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self + &other.scale(-1)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
        for (e, &c) in &self.terms {
            for (f, &d) in &other.terms {
                let len = e.len().max(f.len());
                let exp: Vec<u32> = (0..len)
                    .map(|k| e.get(k).copied().unwrap_or(0) + f.get(k).copied().unwrap_or(0))
                    .collect();
                *acc.entry(exp).or_insert(0) += c * d;
            }
        }
        let mut out = Polynomial::zero();
        for (e, c) in acc {
            out.add_term(e, c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exp, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let mono: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{a}", i + 1)
                    }
                })
                .collect();
            let c = c.abs();
            match (mono.is_empty(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", mono.join("*"))?,
                (false, _) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    exp: Vec<u32>,
    coeff: i64,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(e, &c)| TermRepr {
                exp: e.clone(),
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut p = Polynomial::zero();
        for t in Vec::<TermRepr>::deserialize(d)? {
            p.add_term(t.exp, t.coeff);
        }
        Ok(p)
    }
}

/// Linear combination of Schubert polynomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Expansion {
    coeffs: BTreeMap<Permutation, i64>,
}

impl Expansion {
    pub fn get(&self, u: &Permutation) -> i64 {
        self.coeffs.get(u).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, i64)> {
        self.coeffs.iter().map(|(u, &c)| (u, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn into_map(self) -> BTreeMap<Permutation, i64> {
        self.coeffs
    }

    /// `Σ c_u 𝔖_u` expanded back into monomials.
    pub fn to_polynomial(&self) -> Polynomial {
        self.coeffs
            .iter()
            .fold(Polynomial::zero(), |acc, (u, &c)| &acc + &cached_schubert(u).scale(c))
    }
}

impl fmt::Debug for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionTermRepr {
    perm: Permutation,
    coeff: i64,
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<ExpansionTermRepr> = self
            .coeffs
            .iter()
            .map(|(u, &c)| ExpansionTermRepr {
                perm: u.clone(),
                coeff: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut coeffs = BTreeMap::new();
        for t in Vec::<ExpansionTermRepr>::deserialize(d)? {
            if t.coeff != 0 {
                *coeffs.entry(t.perm).or_insert(0) += t.coeff;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(Expansion { coeffs })
    }
}

fn check_in_sn(w: &Permutation, n: usize) -> Result<()> {
    if w.support() > n.max(1) {
        return Err(Error::NotInSymmetricGroup(w.clone(), n));
    }
    Ok(())
}

/// Places of the staircase of size `n` in reading order.
fn staircase_places(n: usize) -> Vec<Place> {
    (1..n)
        .flat_map(|i| (1..=n - i).rev().map(move |j| Place::new(i, j)))
        .collect()
}

/// Calls `visit` with every rc-graph of `w` inside the staircase of size `n`.
pub fn for_each_rcgraph(w: &Permutation, n: usize, mut visit: impl FnMut(&Graph)) -> Result<()> {
    check_in_sn(w, n)?;
    let places = staircase_places(n);
    // Positions of 1..=n+1 under the remaining factor x, where the chosen
    // prefix p satisfies p x = w.
    let mut x_inverse: Vec<usize> = vec![0; n + 2];
    for (i, v) in w.one_line(n).into_iter().enumerate() {
        x_inverse[v] = i + 1;
    }
    x_inverse[n + 1] = n + 1;
    let mut chosen = Graph::new();

    fn dfs(
        places: &[Place],
        at: usize,
        remaining: usize,
        x_inverse: &mut Vec<usize>,
        chosen: &mut Graph,
        visit: &mut dyn FnMut(&Graph),
    ) {
        if remaining == 0 {
            visit(chosen);
            return;
        }
        if places.len() - at < remaining {
            return;
        }
        let p = places[at];
        let k = p.letter();
        if x_inverse[k] > x_inverse[k + 1] {
            x_inverse.swap(k, k + 1);
            chosen.insert(p);
            dfs(places, at + 1, remaining - 1, x_inverse, chosen, visit);
            chosen.remove(p);
            x_inverse.swap(k, k + 1);
        }
        dfs(places, at + 1, remaining, x_inverse, chosen, visit);
    }

    dfs(&places, 0, w.length(), &mut x_inverse, &mut chosen, &mut visit);
    Ok(())
}

/// `RC(w)` inside the staircase of size `n`.
pub fn enumerate_rcgraphs(w: &Permutation, n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for_each_rcgraph(w, n, |g| out.push(g.clone()))?;
    Ok(out)
}

fn exponent_u32(g: &Graph) -> Vec<u32> {
    g.exponent().into_iter().map(|e| e as u32).collect()
}

/// `𝔖_w` as the sum of `x^R` over `R` in `RC(w)`.
pub fn schubert_polynomial(w: &Permutation, n: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero();
    for_each_rcgraph(w, n, |g| p.add_term(exponent_u32(g), 1))?;
    Ok(p)
}

thread_local! {
    static SCHUBERT_CACHE: RefCell<HashMap<Permutation, Polynomial>> = RefCell::new(HashMap::new());
}

/// `𝔖_w` computed in the smallest symmetric group containing `w`, memoized
/// per thread.
pub fn cached_schubert(w: &Permutation) -> Polynomial {
    if let Some(p) = SCHUBERT_CACHE.with(|c| c.borrow().get(w).cloned()) {
        return p;
    }
    let p = schubert_polynomial(w, w.support().max(1)).expect("w lies in its own S_n");
    SCHUBERT_CACHE.with(|c| c.borrow_mut().insert(w.clone(), p.clone()));
    p
}

/// Writes `p` in the Schubert basis by repeatedly cancelling the
/// lexicographically smallest monomial `x^a` with `𝔖_u`, `code(u) = a`.
pub fn expand_in_schubert_basis(p: &Polynomial) -> Result<Expansion> {
    const MAX_ROUNDS: usize = 1_000_000;
    let mut rest = p.clone();
    let mut coeffs = BTreeMap::new();
    let mut rounds = 0;
    while let Some((exp, c)) = rest.leading_lex_min() {
        rounds += 1;
        if rounds > MAX_ROUNDS {
            return Err(Error::invariant("Schubert expansion does not terminate"));
        }
        let code: Vec<usize> = exp.iter().map(|&e| e as usize).collect();
        let u = Permutation::from_code(&code);
        let s = cached_schubert(&u);
        if s.coeff(exp) != 1 || s.leading_lex_min().map(|(e, _)| e) != Some(exp) {
            return Err(Error::invariant(format!(
                "x^code({u}) is not the smallest monomial of its Schubert polynomial"
            )));
        }
        rest = &rest - &s.scale(c);
        coeffs.insert(u, c);
    }
    let expansion = Expansion { coeffs };
    if &expansion.to_polynomial() != p {
        return Err(Error::invariant("Schubert expansion does not reproduce its input"));
    }
    Ok(expansion)
}

/// `𝔖_w 𝔖_v` in the Schubert basis; every coefficient must be positive.
pub fn lr_oracle(w: &Permutation, v: &Permutation) -> Result<Expansion> {
    let product = &cached_schubert(w) * &cached_schubert(v);
    let expansion = expand_in_schubert_basis(&product)?;
    if let Some((u, c)) = expansion.iter().find(|&(_, c)| c < 0) {
        return Err(Error::invariant(format!(
            "negative structure constant {c} at {u} for {w} * {v}"
        )));
    }
    let degree = (w.length() + v.length()) as u32;
    if !product.is_homogeneous_of(degree) || expansion.iter().any(|(u, _)| u.length() as u32 != degree) {
        return Err(Error::invariant(format!("degree mismatch in {w} * {v}")));
    }
    Ok(expansion)
}

/// `S_λ(x_1, ..., x_r)` as a sum over semistandard tableaux with entries at
/// most `r`.
pub fn schur_polynomial(shape: &Partition, r: usize) -> Polynomial {
    let cells: Vec<(usize, usize)> = (1..=shape.len())
        .flat_map(|row| (1..=shape.part(row)).map(move |col| (row, col)))
        .collect();
    let mut grid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut out = Polynomial::zero();

    fn fill(
        cells: &[(usize, usize)],
        at: usize,
        r: usize,
        grid: &mut HashMap<(usize, usize), usize>,
        out: &mut Polynomial,
    ) {
        let Some(&(row, col)) = cells.get(at) else {
            let mut exp = vec![0u32; r];
            for &v in grid.values() {
                exp[v - 1] += 1;
            }
            out.add_term(exp, 1);
            return;
        };
        let low_from_left = grid.get(&(row, col.wrapping_sub(1))).copied().unwrap_or(1);
        let low_from_above = grid.get(&(row.wrapping_sub(1), col)).map_or(1, |v| v + 1);
        for v in low_from_left.max(low_from_above)..=r {
            grid.insert((row, col), v);
            fill(cells, at + 1, r, grid, out);
        }
        grid.remove(&(row, col));
    }

    fill(&cells, 0, r, &mut grid, &mut out);
    out
}
