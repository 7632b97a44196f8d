use proptest::prelude::*;
use proptest::sample::Index;

use rc_insertion::insertion::{insert, Trace};
use rc_insertion::inverse::inverse_insert;
use rc_insertion::lr::{count_chains, default_ambient};
use rc_insertion::schubert::{enumerate_rcgraphs, lr_oracle, schubert_polynomial, Expansion, Polynomial};
use rc_insertion::tableau::TranspositionTableau;
use rc_insertion::{shuffle_from_partition, Graph, Partition, Permutation};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn partition(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0..=cols, rows).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&p| p > 0);
        Partition::new(parts).unwrap()
    })
}

/// Any subset of the staircase of size `n`.
fn subword(n: usize) -> impl Strategy<Value = Graph> {
    let places: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..=n - i).map(move |j| (i, j))).collect();
    proptest::collection::vec(any::<bool>(), places.len()).prop_map(move |keep| {
        Graph::from_places(places.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p))
    })
}

/// A supported `(w, λ, r)`: `w` an r-semi-shuffle, or `λ` a hook.
fn supported_triple() -> impl Strategy<Value = (Permutation, Partition, usize)> {
    (permutation(6), 1..=3usize, partition(3, 3)).prop_filter_map("unsupported", |(w, r, shape)| {
        if shape.len() > r {
            return None;
        }
        let ok = w.is_semi_shuffle(r) || (shape.is_hook() && shape.size() <= 4);
        ok.then_some((w, shape, r))
    })
}

fn pick(graphs: &[Graph], at: &Index) -> Graph {
    graphs[at.index(graphs.len())].clone()
}

fn padded(mut v: Vec<usize>, n: usize) -> Vec<usize> {
    v.resize(n, 0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduced_iff_no_double_crossing(graph in subword(6)) {
        let by_length = graph.len() == graph.permutation().length();
        prop_assert_eq!(by_length, !graph.has_double_crossing());
        prop_assert_eq!(by_length, graph.is_rcgraph());
        let map = graph.strands();
        prop_assert_eq!(map.permutation(), &graph.reading_product());
    }

    #[test]
    fn multiplication_is_associative(u in permutation(5), v in permutation(5), x in permutation(5)) {
        prop_assert_eq!(&(&u * &v) * &x, &u * &(&v * &x));
        prop_assert_eq!(&u * &u.inverse(), Permutation::identity());
        prop_assert_eq!(u.inverse().length(), u.length());
        prop_assert_eq!(Permutation::from_code(&u.code()), u);
    }

    #[test]
    fn covering_matches_length(w in permutation(5), c in 1..=5usize, d in 2..=6usize) {
        prop_assume!(c < d);
        prop_assert_eq!(w.is_covering(c, d), w.swap_positions(c, d).length() == w.length() + 1);
    }

    #[test]
    fn shuffles_and_partitions_invert(shape in partition(3, 4), r in 3..=4usize) {
        let v = shuffle_from_partition(&shape, r).unwrap();
        prop_assert!(v.is_shuffle(r));
        prop_assert_eq!(rc_insertion::partition_of_shuffle(&v, r).unwrap(), shape);
    }

    #[test]
    fn insertion_round_trips(
        (w, shape, r) in supported_triple(),
        at_r in any::<Index>(),
        at_y in any::<Index>(),
    ) {
        let n = default_ambient(&w, &shape, r);
        let v = shuffle_from_partition(&shape, r).unwrap();
        let graph = pick(&enumerate_rcgraphs(&w, n).unwrap(), &at_r);
        let y = pick(&enumerate_rcgraphs(&v, n).unwrap(), &at_y);
        let out = insert(&graph, &y, r).unwrap();
        prop_assert!(out.graph.is_rcgraph());
        prop_assert_eq!(out.graph.permutation(), &w * &out.tableau.product());
        prop_assert_eq!(out.trace.replay(&Graph::new()), out.graph.clone());
        let m = n + 1;
        let sum: Vec<usize> = padded(graph.exponent(), m)
            .into_iter()
            .zip(padded(y.exponent(), m))
            .map(|(a, b)| a + b)
            .collect();
        prop_assert_eq!(padded(out.graph.exponent(), m), sum);
        let back = inverse_insert(&out.graph, &out.tableau, &w, r).unwrap();
        prop_assert_eq!(back.graph, graph);
        prop_assert_eq!(back.y, y);
    }

    #[test]
    fn json_round_trips(
        w in permutation(6),
        shape in partition(3, 3),
        graph in subword(5),
    ) {
        let json = serde_json::to_string(&w).unwrap();
        prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), w.clone());
        let json = serde_json::to_string(&shape).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), shape.clone());
        let json = serde_json::to_string(&graph).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), graph.clone());

        let p = schubert_polynomial(&w, 6).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Polynomial>(&json).unwrap(), p);

        if shape.len() <= 3 {
            let v = shuffle_from_partition(&shape, 3).unwrap();
            let e = lr_oracle(&Permutation::identity(), &v).unwrap();
            let json = serde_json::to_string(&e).unwrap();
            prop_assert_eq!(serde_json::from_str::<Expansion>(&json).unwrap(), e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_counts_match_the_oracle((w, shape, r) in supported_triple()) {
        prop_assume!(shape.size() <= 3);
        let counts = count_chains(&w, &shape, r).unwrap();
        let v = shuffle_from_partition(&shape, r).unwrap();
        let oracle: Vec<(Permutation, u64)> =
            lr_oracle(&w, &v).unwrap().iter().map(|(u, c)| (u.clone(), c as u64)).collect();
        prop_assert_eq!(counts.into_iter().collect::<Vec<_>>(), oracle);
    }
}

#[test]
fn trace_and_tableau_json_round_trip() {
    let graph = Graph::from_places([(1, 2), (1, 3), (2, 2)]);
    let y = Graph::from_places([(1, 3), (2, 1), (2, 3), (3, 1)]);
    let out = insert(&graph, &y, 3).unwrap();
    let json = serde_json::to_string(&out.trace).unwrap();
    assert_eq!(serde_json::from_str::<Trace>(&json).unwrap(), out.trace);
    let json = serde_json::to_string(&out.tableau).unwrap();
    assert_eq!(serde_json::from_str::<TranspositionTableau>(&json).unwrap(), out.tableau);
    let partial = TranspositionTableau::from_word(Partition::new(vec![2, 1]).unwrap(), 2, &[(1, 3)]).unwrap();
    let json = serde_json::to_string(&partial).unwrap();
    assert_eq!(json, r#"{"shape":[2,1],"r":2,"entries":[[1,3],null,null]}"#);
    assert_eq!(serde_json::from_str::<TranspositionTableau>(&json).unwrap(), partial);
}
