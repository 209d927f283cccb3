//! Deterministic graph corpora for the verification suites: every generator
//! kind at small sizes, plus seeded batches of cographs and
//! distance-hereditary graphs.

use twwkit_core::graph::{generate, GenKind, Graph};

/// Named instances of every generator kind with at most `max_n` vertices.
pub fn bounds_corpus(max_n: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    let mut push = |name: String, kind: GenKind, s: u64| {
        let g = generate(&kind, s).expect("corpus parameters are valid");
        out.push((name, g));
    };

    for n in 3..=max_n {
        push(format!("cycle{n}"), GenKind::Cycle { n }, 0);
    }
    for n in 1..=max_n {
        push(format!("path{n}"), GenKind::Path { n }, 0);
        push(format!("complete{n}"), GenKind::Complete { n }, 0);
        push(format!("empty{n}"), GenKind::Empty { n }, 0);
    }
    for a in 1..=max_n {
        for b in a..=max_n {
            if a + b <= max_n {
                push(
                    format!("bipartite{a}x{b}"),
                    GenKind::CompleteBipartite { a, b },
                    0,
                );
            }
        }
    }
    for rows in 2..=max_n {
        for cols in rows..=max_n {
            if rows * cols <= max_n {
                push(format!("grid{rows}x{cols}"), GenKind::Grid { rows, cols }, 0);
            }
        }
    }
    for n in 3..=max_n {
        for (pi, p) in [0.25, 0.5, 0.75].into_iter().enumerate() {
            for s in 0..2u64 {
                push(
                    format!("random{n}_p{}_s{s}", (p * 100.0) as u32),
                    GenKind::Random { n, p },
                    seed.wrapping_add(s).wrapping_add(97 * pi as u64 + 13 * n as u64),
                );
            }
        }
    }
    for n in 2..=max_n {
        for s in 0..2u64 {
            push(
                format!("cograph{n}_s{s}"),
                GenKind::Cograph { n },
                seed.wrapping_add(1000 + s + 31 * n as u64),
            );
        }
        for s in 0..2u64 {
            push(
                format!("dh{n}_s{s}"),
                GenKind::DistanceHereditary { n },
                seed.wrapping_add(2000 + s + 53 * n as u64),
            );
        }
    }
    out
}

/// Input/template pairs for the counter oracles, drawn from the full
/// corpus so that every generated kind occurs.
pub fn hom_pairs(
    max_g: usize,
    max_h: usize,
    min_pairs: usize,
    seed: u64,
) -> Vec<(String, Graph, Graph)> {
    let gs: Vec<(String, Graph)> = bounds_corpus(max_g, seed)
        .into_iter()
        .filter(|(_, g)| g.n() >= 1)
        .collect();
    let hs: Vec<(String, Graph)> = bounds_corpus(max_h, seed.wrapping_add(1) )
        .into_iter()
        .filter(|(_, h)| h.n() >= 1)
        .collect();
    let count = min_pairs.max(gs.len());
    (0..count)
        .map(|i| {
            let (gn, g) = &gs[i % gs.len()];
            let (hn, h) = &hs[(i * 7 + 3) % hs.len()];
            (format!("{gn}->{hn}"), g.clone(), h.clone())
        })
        .collect()
}

/// Seeded cographs with at least one edge.
pub fn cograph_batch(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        let n = 2 + (s as usize % (max_n - 1));
        let g = generate(&GenKind::Cograph { n }, s).expect("valid");
        if g.edge_count() > 0 {
            out.push(g);
        }
        s = s.wrapping_add(1);
    }
    out
}

/// Seeded distance-hereditary graphs.
pub fn distance_hereditary_batch(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| {
            let n = 2 + ((seed + i) as usize % (max_n - 1));
            generate(&GenKind::DistanceHereditary { n }, seed.wrapping_add(i)).expect("valid")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_covers_kinds() {
        let a = bounds_corpus(6, 7);
        let b = bounds_corpus(6, 7);
        assert_eq!(a.len(), b.len());
        for ((na, ga), (nb, gb)) in a.iter().zip(&b) {
            assert_eq!(na, nb);
            assert_eq!(ga, gb);
        }
        for kind in ["cycle", "path", "complete", "empty", "bipartite", "grid", "random", "cograph", "dh"] {
            assert!(a.iter().any(|(n, _)| n.starts_with(kind)), "missing {kind}");
        }
        assert!(a.iter().all(|(_, g)| g.n() <= 6));
    }

    #[test]
    fn hom_pairs_reach_the_requested_count() {
        let pairs = hom_pairs(6, 4, 200, 7);
        assert!(pairs.len() >= 200);
        assert!(pairs.iter().all(|(_, g, h)| g.n() <= 6 && h.n() <= 4));
    }

    #[test]
    fn batches_have_the_advertised_shape() {
        let cs = cograph_batch(50, 8, 3);
        assert_eq!(cs.len(), 50);
        assert!(cs.iter().all(|g| g.is_cograph() && g.edge_count() > 0));
        let ds = distance_hereditary_batch(50, 8, 3);
        assert_eq!(ds.len(), 50);
        assert!(ds.iter().all(|g| g.n() <= 8));
    }
}
