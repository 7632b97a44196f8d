//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use rc_insertion::insertion::{chain_step_place, insert, s_chain, PlaceType, RemovalCase, StepKind};
use rc_insertion::lr::{for_each_chain, sweep, SweepCase, SweepConfig, SweepSummary};
use rc_insertion::schubert::{cached_schubert, schur_polynomial};
use rc_insertion::tableau::{b_tableau, e_tableau, TranspositionTableau};
use rc_insertion::{partition_of_shuffle, Graph, Partition, Permutation, Place};

fn g(places: &[(usize, usize)]) -> Graph {
    Graph::from_places(places.iter().copied())
}

fn perm(p: &[usize]) -> Permutation {
    Permutation::new(p.to_vec()).unwrap()
}

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn within(limit: Duration, start: Instant) {
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn semi_sweep() -> &'static Result<SweepSummary, String> {
    static SUMMARY: OnceLock<Result<SweepSummary, String>> = OnceLock::new();
    SUMMARY.get_or_init(|| {
        sweep(&SweepConfig { jobs: jobs(), ..SweepConfig::new(SweepCase::Semi) }).map_err(|e| e.to_string())
    })
}

fn hook_sweep() -> &'static Result<SweepSummary, String> {
    static SUMMARY: OnceLock<Result<SweepSummary, String>> = OnceLock::new();
    SUMMARY.get_or_init(|| {
        sweep(&SweepConfig { jobs: jobs(), ..SweepConfig::new(SweepCase::Hook) }).map_err(|e| e.to_string())
    })
}

fn sweep_summaries() -> Vec<&'static SweepSummary> {
    [semi_sweep(), hook_sweep()]
        .into_iter()
        .map(|s| s.as_ref().expect("sweep failed"))
        .collect()
}

fn first_example() {
    let start = Instant::now();
    let graph = g(&[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]);
    let t = TranspositionTableau::from_word(part(&[2, 2]), 2, &[(1, 4), (2, 3), (2, 5), (1, 5)]).unwrap();
    let chain = s_chain(&perm(&[2, 1, 4, 3]), &graph, &t).unwrap();
    let removed: Vec<Place> = (1..=4).rev().map(|j| chain_step_place(&chain, j).unwrap()).collect();
    assert_eq!(removed, [(1, 3), (2, 3), (2, 1), (1, 2)].map(|(r, c)| Place::new(r, c)));
    assert_eq!(chain[0], g(&[(1, 1), (2, 2)]));
    within(Duration::from_secs(1), start);
}

fn second_example() {
    let start = Instant::now();
    let out = insert(&g(&[(1, 2), (1, 3), (2, 2)]), &g(&[(1, 3), (2, 1), (2, 3), (3, 1)]), 3).unwrap();
    assert_eq!(out.graph, g(&[(1, 1), (1, 3), (1, 4), (2, 1), (2, 3), (2, 4), (3, 1)]));
    assert_eq!(out.tableau.word(), vec![(3, 5), (3, 6), (1, 4), (2, 6)]);
    assert_eq!(out.trace.rectifications(), vec![(2, 2), (1, 1), (1, 3), (1, 4)]);
    let kinds: Vec<StepKind> = out.trace.steps.iter().filter(|s| s.step.1 > 0).map(|s| s.kind).collect();
    use StepKind::{Insertion as I, Rectification as R};
    assert_eq!(kinds, vec![I, I, R, I, R, I, R, R]);
    within(Duration::from_secs(1), start);
}

fn third_example() {
    let start = Instant::now();
    let out = insert(&g(&[(1, 3), (3, 2), (3, 3)]), &g(&[(3, 1), (1, 2), (1, 4)]), 3).unwrap();
    assert_eq!(out.graph, g(&[(1, 2), (1, 3), (1, 6), (3, 1), (3, 2), (3, 3)]));
    assert_eq!(out.tableau.word(), vec![(3, 4), (2, 4), (3, 7)]);
    assert_eq!(out.trace.with_removal_case(RemovalCase::B), vec![(1, 2)]);
    within(Duration::from_secs(1), start);
}

fn fourth_example() {
    let start = Instant::now();
    let out = insert(&g(&[(1, 3), (1, 4), (2, 3), (3, 3)]), &g(&[(2, 1), (2, 2)]), 2).unwrap();
    assert_eq!(out.graph, g(&[(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 3)]));
    assert_eq!(out.tableau.word(), vec![(2, 4), (2, 3)]);
    assert_eq!(out.trace.with_reinsertion(PlaceType::Second), vec![(1, 2)]);
    within(Duration::from_secs(1), start);
}

fn check_sweep(start: Instant, result: &Result<SweepSummary, String>) {
    let summary = result.as_ref().unwrap_or_else(|e| panic!("{e}"));
    assert!(summary.triples > 0 && summary.nonzero_coefficients > 0);
    println!(
        "    {} triples, {} nonzero coefficients, {} insertions",
        summary.triples, summary.nonzero_coefficients, summary.pairs
    );
    within(Duration::from_secs(600), start);
}

fn round_trips() {
    for s in sweep_summaries() {
        assert!(s.pairs > 0);
        // Every pair was inserted and inverted; every package counted by the
        // chains was inverted and inserted again.
        assert_eq!(s.packages, s.pairs);
    }
    let total: usize = sweep_summaries().iter().map(|s| s.pairs).sum();
    println!("    {total} pairs each way");
}

fn conservation() {
    let examples = [
        (g(&[(1, 2), (1, 3), (2, 2)]), g(&[(1, 3), (2, 1), (2, 3), (3, 1)]), 3),
        (g(&[(1, 3), (3, 2), (3, 3)]), g(&[(3, 1), (1, 2), (1, 4)]), 3),
        (g(&[(1, 3), (1, 4), (2, 3), (3, 3)]), g(&[(2, 1), (2, 2)]), 2),
    ];
    for (graph, y, r) in examples {
        let out = insert(&graph, &y, r).unwrap();
        let padded = |mut v: Vec<usize>| {
            v.resize(8, 0);
            v
        };
        let sum: Vec<usize> = padded(graph.exponent()).iter().zip(padded(y.exponent())).map(|(a, b)| a + b).collect();
        assert_eq!(padded(out.graph.exponent()), sum);
    }
    for s in sweep_summaries() {
        assert_eq!(s.conservation_checks, s.pairs);
    }
}

fn schur_identity() {
    let mut checked = 0;
    for v in Permutation::all(5) {
        for r in 1..=4 {
            if !v.is_shuffle(r) {
                continue;
            }
            let shape = partition_of_shuffle(&v, r).unwrap();
            assert_eq!(cached_schubert(&v), schur_polynomial(&shape, r), "v = {v}, r = {r}");
            checked += 1;
        }
    }
    println!("    {checked} (shuffle, r) pairs");
}

fn staircase(n: usize) -> Vec<Place> {
    (1..n).flat_map(|i| (1..=n - i).map(move |j| Place::new(i, j))).collect()
}

fn structural() {
    let start = Instant::now();
    let places = staircase(5);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut reduced = 0;
    for _ in 0..10_000 {
        let graph = Graph::from_places(
            places.iter().filter(|_| rng.random_bool(0.5)).map(|p| (p.row, p.col)),
        );
        let by_length = graph.len() == graph.permutation().length();
        assert_eq!(!graph.has_double_crossing(), by_length, "{graph}");
        assert_eq!(graph.strands().permutation(), &graph.reading_product(), "{graph}");
        reduced += usize::from(by_length);
    }
    assert!(reduced > 0 && reduced < 10_000);

    let perms5 = Permutation::all(5);
    let mut covers = 0;
    for r in 1..=4 {
        for u in perms5.iter().filter(|u| u.is_semi_shuffle(r)) {
            for a in 1..=r {
                for b in r + 1..=6 {
                    if u.is_covering(a, b) {
                        assert!(u.swap_positions(a, b).is_semi_shuffle(r), "u = {u}, ({a} {b})");
                        covers += 1;
                    }
                }
            }
        }
    }

    let mut chains = 0;
    let mut strict_chains = 0;
    for r in 1..=4 {
        let shapes = Partition::all_up_to(4, r);
        for w in perms5.iter().filter(|w| w.is_semi_shuffle(r)) {
            for shape in shapes.iter().filter(|s| !s.is_empty()) {
                for_each_chain(w, shape, r, false, |t, _| {
                    let strict = e_tableau(w, t).is_row_and_column_strict();
                    assert_eq!(strict, b_tableau(t).is_row_strict(), "w = {w}, T = {t:?}");
                    chains += 1;
                    strict_chains += usize::from(strict);
                });
            }
        }
    }
    assert!(strict_chains > 0 && strict_chains < chains);
    println!("    10000 random subwords, {covers} covers, {chains} chains ({strict_chains} strict)");
    within(Duration::from_secs(60), start);
}

type Criterion = (&'static str, Box<dyn Fn()>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("first worked example: S_j chain", Box::new(first_example)),
        ("second worked example: insertion", Box::new(second_example)),
        ("third worked example: removal case B", Box::new(third_example)),
        ("fourth worked example: second-type reinsertion", Box::new(fourth_example)),
        ("semi-shuffle sweep", Box::new(|| check_sweep(Instant::now(), semi_sweep()))),
        ("hook sweep", Box::new(|| check_sweep(Instant::now(), hook_sweep()))),
        ("round trips", Box::new(round_trips)),
        ("monomial conservation", Box::new(conservation)),
        ("Schur identity", Box::new(schur_identity)),
        ("structural suite", Box::new(structural)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let status = if result.is_ok() { "PASS" } else { "FAIL" };
        failed += usize::from(result.is_err());
        println!("criterion {:>2}: {status}  {name} ({:.2?})", k + 1, took);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
