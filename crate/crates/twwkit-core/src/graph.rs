//! Simple undirected graphs over dense vertex ids, plus the corpus
//! generators used by the verification suites.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Hard cap on vertex count so adjacency rows fit in a `u128` mask.
pub const MAX_VERTICES: usize = 128;

/// Iterates the set bits of a vertex mask.
pub fn bits(mask: u128) -> impl Iterator<Item = usize> {
    core::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let rest = m & (m - 1);
            if rest == 0 {
                None
            } else {
                Some(rest)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    TooManyVertices { n: usize },
    VertexOutOfRange { v: usize, n: usize },
    SelfLoop { v: usize },
    DuplicateEdge { u: usize, v: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::TooManyVertices { n } => {
                write!(f, "graph has {n} vertices, limit is {MAX_VERTICES}")
            }
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for graph on {n} vertices")
            }
            GraphError::SelfLoop { v } => write!(f, "self-loop on vertex {v}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} {v}"),
        }
    }
}

impl core::error::Error for GraphError {}

/// An undirected simple graph on vertices `0..n`, stored as bitmask
/// adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u128>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            });
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    /// Like `add_edge` but silently keeps an already-present edge.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        match self.add_edge(u, v) {
            Err(GraphError::DuplicateEdge { .. }) | Ok(()) => Ok(()),
            Err(e) => Err(e),
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    /// Adjacency row of `u` as a vertex mask.
    pub fn neighbors_mask(&self, u: usize) -> u128 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[u])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u]).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// The induced subgraph on the masked vertices, relabelled densely in
    /// ascending order.
    pub fn induced(&self, mask: u128) -> Graph {
        let verts: Vec<usize> = bits(mask & self.full_mask()).collect();
        let mut g = Graph::new(verts.len()).expect("subset of a valid graph");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("fresh pair");
                }
            }
        }
        g
    }

    /// Mask of all vertices.
    pub fn full_mask(&self) -> u128 {
        if self.n == 0 {
            0
        } else if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    /// True iff no four vertices induce a path on four vertices.
    pub fn is_cograph(&self) -> bool {
        // An induced subgraph on {a,b,c,d} with exactly three edges is either
        // a triangle plus an isolated vertex, a star, or an induced P4; the
        // P4 is the one whose degrees are all in {1,2}.
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let quad = [a, b, c, d];
                        let mask = (1u128 << a) | (1 << b) | (1 << c) | (1 << d);
                        let degs: Vec<u32> =
                            quad.iter().map(|&v| (self.adj[v] & mask).count_ones()).collect();
                        let edge_count: u32 = degs.iter().sum::<u32>() / 2;
                        if edge_count == 3 && degs.iter().all(|&d| d == 1 || d == 2) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        if n < 3 {
            return Err(GraphError::VertexOutOfRange { v: n, n: 3 });
        }
        for u in 0..n {
            g.add_edge(u, (u + 1) % n)?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for u in 1..n {
            g.add_edge(u - 1, u)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v)?;
            }
        }
        Ok(g)
    }

    pub fn grid(rows: usize, cols: usize) -> Result<Self, GraphError> {
        let mut g = Graph::new(rows * cols)?;
        let id = |r: usize, c: usize| r * cols + c;
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    g.add_edge(id(r, c), id(r, c + 1))?;
                }
                if r + 1 < rows {
                    g.add_edge(id(r, c), id(r + 1, c))?;
                }
            }
        }
        Ok(g)
    }
}

/// A graph together with a labelling of its vertices by positive integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledGraph {
    pub graph: Graph,
    /// `labels[v]` is the label of vertex `v`; labels are `>= 1`.
    pub labels: Vec<u32>,
}

impl LabelledGraph {
    /// Number of distinct labels in use.
    pub fn label_count(&self) -> usize {
        let mut seen: Vec<u32> = self.labels.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Graph generator selector. All generators are deterministic for a fixed
/// seed; randomness comes from ChaCha12 seeded explicitly.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Empty { n: usize },
    Random { n: usize, p: f64 },
    Cograph { n: usize },
    DistanceHereditary { n: usize },
    Grid { rows: usize, cols: usize },
}

impl GenKind {
    pub fn name(&self) -> &'static str {
        match self {
            GenKind::Cycle { .. } => "cycle",
            GenKind::Path { .. } => "path",
            GenKind::Complete { .. } => "complete",
            GenKind::CompleteBipartite { .. } => "complete_bipartite",
            GenKind::Empty { .. } => "empty",
            GenKind::Random { .. } => "random",
            GenKind::Cograph { .. } => "cograph",
            GenKind::DistanceHereditary { .. } => "distance_hereditary",
            GenKind::Grid { .. } => "grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenError(pub String);

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid generator parameters: {}", self.0)
    }
}

impl core::error::Error for GenError {}

/// Builds the graph described by `kind`. Deterministic for a fixed seed.
pub fn generate(kind: &GenKind, seed: u64) -> Result<Graph, GenError> {
    let bad = |msg: &str| Err(GenError(String::from(msg)));
    match *kind {
        GenKind::Cycle { n } => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            Graph::cycle(n).map_err(|e| GenError(alloc::format!("{e}")))
        }
        GenKind::Path { n } => {
            if n < 1 {
                return bad("path needs n >= 1");
            }
            Graph::path(n).map_err(|e| GenError(alloc::format!("{e}")))
        }
        GenKind::Complete { n } => {
            if n < 1 {
                return bad("complete needs n >= 1");
            }
            Graph::complete(n).map_err(|e| GenError(alloc::format!("{e}")))
        }
        GenKind::CompleteBipartite { a, b } => {
            if a < 1 || b < 1 {
                return bad("complete_bipartite needs a, b >= 1");
            }
            Graph::complete_bipartite(a, b).map_err(|e| GenError(alloc::format!("{e}")))
        }
        GenKind::Empty { n } => Graph::new(n).map_err(|e| GenError(alloc::format!("{e}"))),
        GenKind::Random { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return bad("random needs p in [0, 1]");
            }
            let mut g = Graph::new(n).map_err(|e| GenError(alloc::format!("{e}")))?;
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).expect("fresh pair");
                    }
                }
            }
            Ok(g)
        }
        GenKind::Cograph { n } => {
            if n < 1 {
                return bad("cograph needs n >= 1");
            }
            if n > MAX_VERTICES {
                return bad("too many vertices");
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            Ok(random_cotree(n, &mut rng))
        }
        GenKind::DistanceHereditary { n } => {
            if n < 1 {
                return bad("distance_hereditary needs n >= 1");
            }
            if n > MAX_VERTICES {
                return bad("too many vertices");
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            Ok(random_distance_hereditary(n, &mut rng))
        }
        GenKind::Grid { rows, cols } => {
            if rows < 1 || cols < 1 {
                return bad("grid needs rows, cols >= 1");
            }
            Graph::grid(rows, cols).map_err(|e| GenError(alloc::format!("{e}")))
        }
    }
}

/// Draws a random cotree on `n` leaves (union/join internal nodes) and
/// evaluates it.
fn random_cotree(n: usize, rng: &mut ChaCha12Rng) -> Graph {
    // Returns the vertex count; edges accumulate in `edges` with vertex ids
    // offset by `base`.
    fn build(n: usize, base: usize, edges: &mut Vec<(usize, usize)>, rng: &mut ChaCha12Rng) {
        if n == 1 {
            return;
        }
        let left = rng.gen_range(1..n);
        let right = n - left;
        build(left, base, edges, rng);
        build(right, base + left, edges, rng);
        if rng.gen_bool(0.5) {
            // join: all edges across the two halves
            for u in base..base + left {
                for v in base + left..base + n {
                    edges.push((u, v));
                }
            }
        }
    }
    let mut edges = Vec::new();
    build(n, 0, &mut edges, rng);
    Graph::with_edges(n, &edges).expect("cotree evaluation is simple")
}

/// Grows a distance-hereditary graph from a single vertex by repeatedly
/// attaching a pendant vertex, a false twin, or a true twin of a uniformly
/// random existing vertex.
fn random_distance_hereditary(n: usize, rng: &mut ChaCha12Rng) -> Graph {
    let mut g = Graph::new(n).expect("checked");
    for v in 1..n {
        let t = rng.gen_range(0..v);
        match rng.gen_range(0..3u8) {
            0 => {
                // pendant on t
                g.add_edge(v, t).expect("fresh vertex");
            }
            1 => {
                // false twin of t
                let nbrs: Vec<usize> = g.neighbors(t).collect();
                for w in nbrs {
                    g.add_edge(v, w).expect("fresh vertex");
                }
            }
            _ => {
                // true twin of t
                let nbrs: Vec<usize> = g.neighbors(t).collect();
                for w in nbrs {
                    g.add_edge(v, w).expect("fresh vertex");
                }
                g.add_edge(v, t).expect("fresh vertex");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::new(2).unwrap();
        assert_eq!(g.add_edge(0, 0), Err(GraphError::SelfLoop { v: 0 }));
        assert_eq!(
            g.add_edge(0, 2),
            Err(GraphError::VertexOutOfRange { v: 2, n: 2 })
        );
        g.add_edge(1, 0).unwrap();
        assert_eq!(g.add_edge(0, 1), Err(GraphError::DuplicateEdge { u: 0, v: 1 }));
    }

    #[test]
    fn cycle_and_grid_shapes() {
        let c7 = Graph::cycle(7).unwrap();
        assert_eq!(c7.n(), 7);
        assert_eq!(c7.edge_count(), 7);
        assert!(Graph::cycle(2).is_err());

        let g = Graph::grid(2, 3).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 7);
    }

    #[test]
    fn cograph_recognition() {
        assert!(Graph::complete(3).unwrap().is_cograph());
        assert!(!Graph::path(4).unwrap().is_cograph());
        assert!(!Graph::cycle(7).unwrap().is_cograph());
        // C4 is a cograph (= K2,2), C5 is not.
        assert!(Graph::cycle(4).unwrap().is_cograph());
        assert!(!Graph::cycle(5).unwrap().is_cograph());
    }

    #[test]
    fn generators_deterministic_and_valid() {
        for seed in 0..20 {
            let g1 = generate(&GenKind::Cograph { n: 6 }, seed).unwrap();
            let g2 = generate(&GenKind::Cograph { n: 6 }, seed).unwrap();
            assert_eq!(g1, g2);
            assert!(g1.is_cograph(), "seed {seed} produced a non-cograph");

            let r1 = generate(&GenKind::Random { n: 6, p: 0.5 }, seed).unwrap();
            let r2 = generate(&GenKind::Random { n: 6, p: 0.5 }, seed).unwrap();
            assert_eq!(r1, r2);

            let dh = generate(&GenKind::DistanceHereditary { n: 8 }, seed).unwrap();
            assert_eq!(dh.n(), 8);
        }
        let e = generate(&GenKind::Random { n: 5, p: 0.0 }, 9).unwrap();
        assert_eq!(e.edge_count(), 0);
        let f = generate(&GenKind::Random { n: 5, p: 1.0 }, 9).unwrap();
        assert_eq!(f.edge_count(), 10);
    }

    #[test]
    fn kinds_have_declared_counts() {
        let cases: [(GenKind, usize, usize); 6] = [
            (GenKind::Cycle { n: 7 }, 7, 7),
            (GenKind::Path { n: 5 }, 5, 4),
            (GenKind::Complete { n: 5 }, 5, 10),
            (GenKind::CompleteBipartite { a: 2, b: 3 }, 5, 6),
            (GenKind::Empty { n: 4 }, 4, 0),
            (GenKind::Grid { rows: 3, cols: 3 }, 9, 12),
        ];
        for (kind, n, edges) in cases {
            let g = generate(&kind, 0).unwrap();
            assert_eq!((g.n(), g.edge_count()), (n, edges), "{kind:?}");
        }
    }

    #[test]
    fn bits_iterates_set_positions() {
        assert_eq!(bits(0).count(), 0);
        assert_eq!(bits(0b101001).collect::<Vec<_>>(), vec![0, 3, 5]);
    }
}
