//! Cross-checks of the implementation paths against independent oracles:
//! quotients against the definition, expression evaluation against a naive
//! list-based evaluator, and the DP counter tables against partial
//! brute-force counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use twwkit_core::cwexpr::CwExpr;
use twwkit_core::graph::{bits, generate, GenKind, Graph};
use twwkit_core::homcount::{brute_count, count_g_side_with_stats, HomBudget};
use twwkit_core::trigraph::{ContractionSequence, Trigraph, WidthKind};

fn random_graph(rng: &mut ChaCha12Rng, n: usize) -> Graph {
    let p = rng.gen_range(0.0..=1.0);
    generate(&GenKind::Random { n, p }, rng.gen()).unwrap()
}

fn random_partition(rng: &mut ChaCha12Rng, n: usize) -> Vec<Vec<usize>> {
    let k = rng.gen_range(1..=n);
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        parts[rng.gen_range(0..k)].push(v);
    }
    parts.retain(|p| !p.is_empty());
    parts
}

fn random_sequence(rng: &mut ChaCha12Rng, g: &Graph) -> ContractionSequence {
    let mut groups: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    let mut merges = Vec::new();
    while groups.len() > 1 {
        let i = rng.gen_range(0..groups.len());
        let mut j = rng.gen_range(0..groups.len());
        while j == i {
            j = rng.gen_range(0..groups.len());
        }
        merges.push((groups[i][0], groups[j][0]));
        let (a, b) = (i.min(j), i.max(j));
        let moved = groups.remove(b);
        groups[a].extend(moved);
    }
    ContractionSequence::new(g.clone(), merges).unwrap()
}

/// Black parts must be fully adjacent in the base graph and non-adjacent
/// parts fully non-adjacent, checked pair by pair from the definition.
#[test]
fn quotient_satisfies_full_and_empty_adjacency() {
    let mut rng = ChaCha12Rng::seed_from_u64(101);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n);
        let parts = random_partition(&mut rng, n);
        let t = Trigraph::quotient(&g, &parts).unwrap();
        for i in 0..t.part_count() {
            for j in i + 1..t.part_count() {
                let a: Vec<usize> = bits(t.part(i)).collect();
                let b: Vec<usize> = bits(t.part(j)).collect();
                let mut present = 0;
                for &u in &a {
                    for &v in &b {
                        if g.has_edge(u, v) {
                            present += 1;
                        }
                    }
                }
                let all = a.len() * b.len();
                if t.has_black(i, j) {
                    assert_eq!(present, all);
                } else if t.has_red(i, j) {
                    assert!(present > 0 && present < all);
                } else {
                    assert_eq!(present, 0);
                }
            }
        }
    }
}

/// Naive evaluator keeping explicit vertex/label lists and an edge set.
fn naive_eval(e: &CwExpr) -> (usize, Vec<u32>, std::collections::BTreeSet<(usize, usize)>) {
    match e {
        CwExpr::Vertex { label, .. } => (1, vec![*label], Default::default()),
        CwExpr::Union(a, b) => {
            let (na, mut la, ea) = naive_eval(a);
            let (nb, lb, eb) = naive_eval(b);
            la.extend(lb);
            let mut edges = ea;
            for (u, v) in eb {
                edges.insert((u + na, v + na));
            }
            (na + nb, la, edges)
        }
        CwExpr::Relabel { from, to, child } => {
            let (n, mut labels, edges) = naive_eval(child);
            for l in labels.iter_mut() {
                if l == from {
                    *l = *to;
                }
            }
            (n, labels, edges)
        }
        CwExpr::AddEdges { a, b, child } => {
            let (n, labels, mut edges) = naive_eval(child);
            for u in 0..n {
                for v in 0..n {
                    if labels[u] == *a && labels[v] == *b && u != v {
                        edges.insert((u.min(v), u.max(v)));
                    }
                }
            }
            (n, labels, edges)
        }
    }
}

fn random_expr(rng: &mut ChaCha12Rng, budget: usize, labels: u32) -> CwExpr {
    if budget <= 1 {
        return CwExpr::vertex(rng.gen_range(1..=labels), None);
    }
    match rng.gen_range(0..4u8) {
        0 => {
            let split = rng.gen_range(1..budget);
            CwExpr::union(
                random_expr(rng, split, labels),
                random_expr(rng, budget - split, labels),
            )
        }
        1 => {
            let from = rng.gen_range(1..=labels);
            let mut to = rng.gen_range(1..=labels);
            while to == from {
                to = rng.gen_range(1..=labels);
            }
            CwExpr::relabel(from, to, random_expr(rng, budget, labels))
        }
        2 => {
            let a = rng.gen_range(1..=labels);
            let mut b = rng.gen_range(1..=labels);
            while b == a {
                b = rng.gen_range(1..=labels);
            }
            CwExpr::add_edges(a, b, random_expr(rng, budget, labels))
        }
        _ => CwExpr::vertex(rng.gen_range(1..=labels), None),
    }
}

#[test]
fn eval_matches_naive_reference_evaluator() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let e = random_expr(&mut rng, 6, 3);
        let ev = e.eval().unwrap();
        let (n, labels, edges) = naive_eval(&e);
        assert_eq!(ev.graph.n(), n);
        assert_eq!(ev.labels, labels);
        let got: std::collections::BTreeSet<(usize, usize)> = ev.graph.edges().collect();
        assert_eq!(got, edges);
    }
}

/// After every contraction the component table entries partition the
/// colorings of the component's induced subgraph, so their sum must equal
/// the brute-force count on that subgraph.
#[test]
fn g_side_tables_partition_partial_colorings() {
    let mut rng = ChaCha12Rng::seed_from_u64(55);
    let budget = HomBudget::default();
    for _ in 0..40 {
        let ng = rng.gen_range(2..=5);
        let nh = rng.gen_range(1..=4);
        let g = random_graph(&mut rng, ng);
        let h = random_graph(&mut rng, nh);
        let seq = random_sequence(&mut rng, &g);
        let (total, stats) = count_g_side_with_stats(&g, &seq, &h, &budget).unwrap();
        assert_eq!(total, brute_count(&g, &h, &budget).unwrap());
        for ms in &stats.merges {
            let sub = g.induced(ms.component_union);
            assert_eq!(
                ms.table_total,
                brute_count(&sub, &h, &budget).unwrap(),
                "component {:b} of {g:?}",
                ms.component_union
            );
        }
    }
}

/// The counter's value may not depend on which valid sequence drives it.
#[test]
fn g_side_is_sequence_independent() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let budget = HomBudget::default();
    for _ in 0..15 {
        let ng = rng.gen_range(2..=6);
        let nh = rng.gen_range(1..=4);
        let g = random_graph(&mut rng, ng);
        let h = random_graph(&mut rng, nh);
        let mut values = Vec::new();
        for _ in 0..3 {
            let seq = random_sequence(&mut rng, &g);
            values.push(twwkit_core::homcount::count_g_side(&g, &seq, &h, &budget).unwrap());
        }
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}

/// Per-trigraph relation between the vertex-based and edge-based red
/// measures: tvtww <= 2 ttww <= tvtww (tvtww + 1).
#[test]
fn vertex_and_edge_red_measures_bound_each_other() {
    let mut rng = ChaCha12Rng::seed_from_u64(303);
    for _ in 0..80 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n);
        let seq = random_sequence(&mut rng, &g);
        for t in seq.replay() {
            let tv = t.width(WidthKind::Tvtww);
            let te = t.width(WidthKind::Ttww);
            assert!(tv <= 2 * te, "{t:?}");
            assert!(2 * te <= tv * (tv + 1), "{t:?}");
        }
    }
}
