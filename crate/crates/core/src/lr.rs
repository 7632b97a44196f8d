//! Generalized Littlewood-Richardson coefficients `c^u_{w, v(λ, r)}`
//! computed three ways (chain counting, the insertion bijection and the
//! polynomial oracle) and cross-checked against each other.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::insertion::{add_exponents, insert, is_supported};
use crate::inverse::{inverse_insert_indexed, ShuffleIndex};
use crate::perm::{shuffle_from_partition, Partition, Permutation};
use crate::rcgraph::Graph;
use crate::schubert::{enumerate_rcgraphs, lr_oracle, schubert_polynomial};
use crate::tableau::{hook_condition, BoxOrder, HookSide, TranspositionTableau};

/// Default ambient staircase size for `(w, λ, r)`.
pub fn default_ambient(w: &Permutation, shape: &Partition, r: usize) -> usize {
    w.support().max(r) + shape.size() + 1
}

fn check_supported(w: &Permutation, shape: &Partition, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::Malformed("r must be positive".into()));
    }
    if shape.len() > r {
        return Err(Error::TooManyParts { parts: shape.len(), r });
    }
    if !is_supported(w, shape, r) {
        return Err(Error::Unsupported(format!(
            "{w} is not a {r}-semi-shuffle and {shape} is not a hook"
        )));
    }
    Ok(())
}

/// Calls `visit` with every full r-Bruhat chain of `w` of the given shape.
/// With `strict` set, only chains whose `E(w, T)` is row and column strict
/// are produced, and partial fillings violating it are pruned.
pub fn for_each_chain(
    w: &Permutation,
    shape: &Partition,
    r: usize,
    strict: bool,
    mut visit: impl FnMut(&TranspositionTableau, &Permutation),
) {
    let order = BoxOrder::new(shape);
    let max_b = w.support().max(r) + shape.size();
    let mut t = TranspositionTableau::empty(shape.clone(), r);
    let mut values = vec![0usize; order.len()];

    struct Search<'a> {
        order: &'a BoxOrder,
        r: usize,
        max_b: usize,
        strict: bool,
        visit: &'a mut dyn FnMut(&TranspositionTableau, &Permutation),
    }

    fn dfs(
        s: &mut Search<'_>,
        i: usize,
        current: &Permutation,
        t: &mut TranspositionTableau,
        values: &mut [usize],
    ) {
        if i > s.order.len() {
            (s.visit)(t, current);
            return;
        }
        let left = s.order.left_of(i).map(|k| values[k - 1]);
        let below = s.order.below(i).map(|k| values[k - 1]);
        for a in 1..=s.r {
            for b in s.r + 1..=s.max_b {
                if !current.is_covering(a, b) {
                    continue;
                }
                let next = current.swap_positions(a, b);
                let e = next.apply(b);
                if s.strict && (left.is_some_and(|l| l >= e) || below.is_some_and(|d| e >= d)) {
                    continue;
                }
                values[i - 1] = e;
                t.set(i, Some((a, b)));
                dfs(s, i + 1, &next, t, values);
                t.set(i, None);
            }
        }
    }

    let mut search = Search {
        order: &order,
        r,
        max_b,
        strict,
        visit: &mut visit,
    };
    dfs(&mut search, 1, w, &mut t, &mut values);
}

/// Number of full r-Bruhat chains `T` of `w` with `E(w, T)` row and column
/// strict, keyed by `w w(T)`.
pub fn count_chains(w: &Permutation, shape: &Partition, r: usize) -> Result<BTreeMap<Permutation, u64>> {
    check_supported(w, shape, r)?;
    let mut counts = BTreeMap::new();
    for_each_chain(w, shape, r, true, |_, u| *counts.entry(u.clone()).or_insert(0) += 1);
    Ok(counts)
}

/// Per `u`: full r-Bruhat chains satisfying the hook condition on the
/// `b` side and on the `a` side.
pub fn hook_path_counts(
    w: &Permutation,
    shape: &Partition,
    r: usize,
) -> Result<BTreeMap<Permutation, (u64, u64)>> {
    if !shape.is_hook() {
        return Err(Error::NotAHook);
    }
    if shape.len() > r {
        return Err(Error::TooManyParts { parts: shape.len(), r });
    }
    let mut counts: BTreeMap<Permutation, (u64, u64)> = BTreeMap::new();
    let mut failure = None;
    for_each_chain(w, shape, r, false, |t, u| {
        let sides = hook_condition(w, t, HookSide::B).and_then(|b| Ok((b, hook_condition(w, t, HookSide::A)?)));
        match sides {
            Ok((b, a)) => {
                if b || a {
                    let entry = counts.entry(u.clone()).or_default();
                    entry.0 += u64::from(b);
                    entry.1 += u64::from(a);
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(counts),
    }
}

/// Outcome of inserting every `Y` of `v(λ, r)` into every `R` of `w`.
#[derive(Clone, Debug, Default)]
pub struct InsertionCounts {
    /// Common fiber size over `RC(u)`, per `u`.
    pub coefficients: BTreeMap<Permutation, u64>,
    /// Number of insertions performed.
    pub pairs: usize,
}

/// `c^u_{w v}` as the number of pairs `(R, Y)` with `R <- Y = U` for any fixed
/// `U` in `RC(u)`; fails unless that number is the same for every `U`.
pub fn lr_via_insertion(
    w: &Permutation,
    shape: &Partition,
    r: usize,
    n: usize,
) -> Result<InsertionCounts> {
    check_supported(w, shape, r)?;
    let v = shuffle_from_partition(shape, r)?;
    let rs = enumerate_rcgraphs(w, n)?;
    let ys = enumerate_rcgraphs(&v, n)?;
    let mut fibers: HashMap<Graph, u64> = HashMap::new();
    let mut pairs = 0;
    for graph in &rs {
        for y in &ys {
            let out = insert(graph, y, r).map_err(|e| witness(graph, y, r, e))?;
            *fibers.entry(out.graph).or_insert(0) += 1;
            pairs += 1;
        }
    }
    fiber_coefficients(&fibers, n).map(|coefficients| InsertionCounts { coefficients, pairs })
}

fn fiber_coefficients(fibers: &HashMap<Graph, u64>, n: usize) -> Result<BTreeMap<Permutation, u64>> {
    let mut by_u: BTreeMap<Permutation, Vec<(&Graph, u64)>> = BTreeMap::new();
    for (g, &c) in fibers {
        by_u.entry(g.permutation()).or_default().push((g, c));
    }
    let mut coefficients = BTreeMap::new();
    for (u, hit) in by_u {
        let c = hit[0].1;
        if let Some((g, other)) = hit.iter().find(|(_, k)| *k != c) {
            return Err(Error::invariant(format!(
                "fibers over {u} differ: {} has {c} preimages, {g} has {other}",
                hit[0].0
            )));
        }
        let all = enumerate_rcgraphs(&u, n.max(u.support()))?;
        if let Some(missed) = all.iter().find(|g| !fibers.contains_key(*g)) {
            return Err(Error::invariant(format!(
                "{missed} in RC({u}) has no preimage while others have {c}"
            )));
        }
        coefficients.insert(u, c);
    }
    Ok(coefficients)
}

fn witness(graph: &Graph, y: &Graph, r: usize, e: Error) -> Error {
    match e {
        Error::Invariant(msg) => {
            Error::Invariant(format!("insert(R = {graph}, Y = {y}, r = {r}): {msg}"))
        }
        other => other,
    }
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub u: Permutation,
    pub c: u64,
    pub methods: Methods,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Methods {
    pub chains: u64,
    pub insertion: u64,
    pub oracle: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hook_b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hook_a: Option<u64>,
}

/// Result of [`verify_triple`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub w: Permutation,
    pub shape: Partition,
    pub r: usize,
    pub n: usize,
    pub coefficients: Vec<Coefficient>,
    /// Insertions performed, each followed by its inverse.
    pub pairs: usize,
    /// Triples `(w, U, T)` inverted and inserted again.
    pub packages: usize,
    /// Insertions whose exponent was compared with the inputs'.
    pub conservation_checks: usize,
}

/// Runs every computation of `c^u_{w, v(λ, r)}` and fails on the first
/// disagreement. Also checks both round trips, monomial conservation and
/// that the Schubert polynomials do not change between sizes `n` and `n + 1`.
pub fn verify_triple(w: &Permutation, shape: &Partition, r: usize, n: usize) -> Result<Report> {
    check_supported(w, shape, r)?;
    let v = shuffle_from_partition(shape, r)?;
    for p in [w, &v] {
        if p.support() > n {
            return Err(Error::NotInSymmetricGroup(p.clone(), n));
        }
    }
    let context = format!("(w = {w}, λ = {shape}, r = {r}, n = {n})");
    let fail = |msg: String| Error::invariant(format!("{context}: {msg}"));

    for p in [w, &v] {
        if schubert_polynomial(p, n)? != schubert_polynomial(p, n + 1)? {
            return Err(fail(format!("the Schubert polynomial of {p} depends on the size")));
        }
    }

    let index = ShuffleIndex::new(shape, r)?;
    let rs = enumerate_rcgraphs(w, n)?;
    let ys = enumerate_rcgraphs(&v, n)?;
    let mut fibers: HashMap<Graph, u64> = HashMap::new();
    let mut pairs = 0;
    let mut conservation_checks = 0;
    for graph in &rs {
        for y in &ys {
            let out = insert(graph, y, r).map_err(|e| witness(graph, y, r, e))?;
            if out.graph.exponent() != add_exponents(&graph.exponent(), &y.exponent()) {
                return Err(fail(format!("insert({graph}, {y}) does not conserve the monomial")));
            }
            conservation_checks += 1;
            let back = inverse_insert_indexed(&out.graph, &out.tableau, w, r, &index)
                .map_err(|e| fail(format!("inverting insert({graph}, {y}) = ({}, {}): {e}", out.graph, out.tableau)))?;
            if &back.graph != graph || &back.y != y {
                return Err(fail(format!(
                    "inverse(insert({graph}, {y})) = ({}, {})\nforward trace:\n{}",
                    back.graph,
                    back.y,
                    out.trace.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("\n")
                )));
            }
            *fibers.entry(out.graph).or_insert(0) += 1;
            pairs += 1;
        }
    }
    let insertion = fiber_coefficients(&fibers, n).map_err(|e| fail(e.to_string()))?;

    let mut chains: BTreeMap<Permutation, u64> = BTreeMap::new();
    let mut packages = 0;
    let mut failure = None;
    let mut rc_cache: HashMap<Permutation, Vec<Graph>> = HashMap::new();
    for_each_chain(w, shape, r, true, |t, u| {
        *chains.entry(u.clone()).or_insert(0) += 1;
        if failure.is_some() {
            return;
        }
        let us = match rc_cache.get(u) {
            Some(us) => us,
            None => match enumerate_rcgraphs(u, n.max(u.support())) {
                Ok(us) => rc_cache.entry(u.clone()).or_insert(us),
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            },
        };
        for graph in us {
            let again = inverse_insert_indexed(graph, t, w, r, &index)
                .and_then(|back| Ok((insert(&back.graph, &back.y, r)?, back)));
            match again {
                Ok((fwd, _)) if &fwd.graph == graph && &fwd.tableau == t => packages += 1,
                Ok((fwd, back)) => {
                    failure = Some(fail(format!(
                        "insert(inverse({graph}, {t})) = ({}, {}) via ({}, {})",
                        fwd.graph, fwd.tableau, back.graph, back.y
                    )));
                    return;
                }
                Err(e) => {
                    failure = Some(fail(format!("inverse({graph}, {t}): {e}")));
                    return;
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let oracle = lr_oracle(w, &v)?;
    let hooks = if shape.is_hook() {
        Some(hook_path_counts(w, shape, r)?)
    } else {
        None
    };

    let mut us: Vec<Permutation> = chains.keys().chain(insertion.keys()).cloned().collect();
    us.extend(oracle.iter().map(|(u, _)| u.clone()));
    if let Some(h) = &hooks {
        us.extend(h.keys().cloned());
    }
    us.sort();
    us.dedup();

    let mut coefficients = Vec::new();
    for u in us {
        let by_oracle = oracle.get(&u);
        let by_oracle = u64::try_from(by_oracle).map_err(|_| fail(format!("negative coefficient at {u}")))?;
        let methods = Methods {
            chains: chains.get(&u).copied().unwrap_or(0),
            insertion: insertion.get(&u).copied().unwrap_or(0),
            oracle: by_oracle,
            hook_b: hooks.as_ref().map(|h| h.get(&u).map_or(0, |c| c.0)),
            hook_a: hooks.as_ref().map(|h| h.get(&u).map_or(0, |c| c.1)),
        };
        let c = methods.oracle;
        let agree = methods.chains == c
            && methods.insertion == c
            && methods.hook_b.is_none_or(|k| k == c)
            && methods.hook_a.is_none_or(|k| k == c);
        if !agree {
            return Err(fail(format!("coefficients disagree at u = {u}: {methods:?}")));
        }
        coefficients.push(Coefficient { u, c, methods });
    }

    Ok(Report {
        w: w.clone(),
        shape: shape.clone(),
        r,
        n,
        coefficients,
        pairs,
        packages,
        conservation_checks,
    })
}

/// Which family of triples a sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepCase {
    /// `w` an r-semi-shuffle in `S_m`, any `λ` with `v(λ, r)` in `S_{m+1}`.
    Semi,
    /// Any `w` in `S_m`, hooks with at most the given number of boxes.
    Hook,
}

/// Parameters of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub case: SweepCase,
    pub max_perm_size: usize,
    pub max_boxes: usize,
    pub max_r: usize,
    pub jobs: usize,
}

impl SweepConfig {
    pub fn new(case: SweepCase) -> Self {
        SweepConfig {
            case,
            max_perm_size: 4,
            max_boxes: 4,
            max_r: 3,
            jobs: 1,
        }
    }
}

/// Totals over a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub triples: usize,
    pub nonzero_coefficients: usize,
    pub coefficient_sum: u64,
    pub pairs: usize,
    pub packages: usize,
    pub conservation_checks: usize,
}

impl SweepSummary {
    fn absorb(&mut self, report: &Report) {
        self.triples += 1;
        self.nonzero_coefficients += report.coefficients.iter().filter(|c| c.c > 0).count();
        self.coefficient_sum += report.coefficients.iter().map(|c| c.c).sum::<u64>();
        self.pairs += report.pairs;
        self.packages += report.packages;
        self.conservation_checks += report.conservation_checks;
    }
}

/// The `(w, λ, r)` triples a sweep visits.
pub fn sweep_triples(config: &SweepConfig) -> Vec<(Permutation, Partition, usize)> {
    let m = config.max_perm_size;
    let perms = Permutation::all(m);
    let mut out = Vec::new();
    for r in 1..=config.max_r {
        let shapes: Vec<Partition> = match config.case {
            SweepCase::Semi => Partition::all_in_box(r, (m + 1).saturating_sub(r)),
            SweepCase::Hook => Partition::all_up_to(config.max_boxes, r)
                .into_iter()
                .filter(Partition::is_hook)
                .collect(),
        };
        for w in &perms {
            if config.case == SweepCase::Semi && !w.is_semi_shuffle(r) {
                continue;
            }
            for shape in &shapes {
                out.push((w.clone(), shape.clone(), r));
            }
        }
    }
    out
}

/// Runs [`verify_triple`] on every triple of the sweep with `config.jobs`
/// worker threads, returning the totals or the first failure in sweep order.
pub fn sweep(config: &SweepConfig) -> Result<SweepSummary> {
    sweep_with(config, |_| {})
}

/// [`sweep`], handing each report to `on_report` in sweep order.
pub fn sweep_with(config: &SweepConfig, mut on_report: impl FnMut(&Report)) -> Result<SweepSummary> {
    use rayon::prelude::*;

    let triples = sweep_triples(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::invariant(format!("cannot start worker pool: {e}")))?;
    let reports: Vec<Result<Report>> = pool.install(|| {
        triples
            .par_iter()
            .map(|(w, shape, r)| verify_triple(w, shape, *r, default_ambient(w, shape, *r)))
            .collect()
    });
    let mut summary = SweepSummary::default();
    for report in reports {
        let report = report?;
        on_report(&report);
        summary.absorb(&report);
    }
    Ok(summary)
}
