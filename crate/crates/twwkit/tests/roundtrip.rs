//! Property tests for the text formats: parse/serialize identity on random
//! expressions and graphs, and on every corpus graph.

use proptest::prelude::*;

use twwkit::corpus;
use twwkit::formats;
use twwkit_core::cwexpr::CwExpr;
use twwkit_core::graph::Graph;

fn arb_expr() -> impl Strategy<Value = CwExpr> {
    let leaf = (1u32..5).prop_map(|l| CwExpr::vertex(l, None));
    leaf.prop_recursive(5, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| CwExpr::union(a, b)),
            (1u32..5, 1u32..5, inner.clone()).prop_filter_map("distinct labels", |(a, b, c)| {
                (a != b).then(|| CwExpr::relabel(a, b, c))
            }),
            (1u32..5, 1u32..5, inner).prop_filter_map("distinct labels", |(a, b, c)| {
                (a != b).then(|| CwExpr::add_edges(a, b, c))
            }),
        ]
    })
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..10).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |picks| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&picks)
                .filter(|(_, &take)| take)
                .map(|(&e, _)| e)
                .collect();
            Graph::with_edges(n, &edges).expect("valid pairs")
        })
    })
}

proptest! {
    #[test]
    fn expr_parse_serialize_round_trip(e in arb_expr()) {
        let text = formats::serialize_expr(&e);
        let back = formats::parse_expr(&text).expect("serialized expressions parse");
        prop_assert_eq!(back, e);
    }

    #[test]
    fn graph_parse_serialize_round_trip(g in arb_graph()) {
        let text = formats::serialize_graph(&g);
        let back = formats::parse_graph(&text).expect("serialized graphs parse");
        prop_assert_eq!(back, g);
    }
}

#[test]
fn corpus_graphs_round_trip() {
    for (name, g) in corpus::bounds_corpus(6, 7) {
        let back = formats::parse_graph(&formats::serialize_graph(&g)).expect("parses");
        assert_eq!(back, g, "{name}");
    }
}
