//! Trigraphs (quotient graphs with black and red edges), contraction
//! sequences, the four width functionals over them, and exact width search
//! on small graphs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::graph::{bits, Graph};

/// Width functional evaluated on each trigraph of a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WidthKind {
    /// Maximum red degree (red loops ignored).
    Tww,
    /// Maximum size of a red-connected component (loops irrelevant).
    Ctww,
    /// Number of red edges, counting red loops.
    Ttww,
    /// Number of vertices incident to a red edge, counting red loops.
    Tvtww,
}

impl WidthKind {
    pub const ALL: [WidthKind; 4] = [
        WidthKind::Tww,
        WidthKind::Ctww,
        WidthKind::Ttww,
        WidthKind::Tvtww,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WidthKind::Tww => "tww",
            WidthKind::Ctww => "ctww",
            WidthKind::Ttww => "ttww",
            WidthKind::Tvtww => "tvtww",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceError {
    WrongMergeCount { expected: usize, got: usize },
    VertexOutOfRange { v: usize, n: usize },
    SamePart { step: usize, u: usize, v: usize },
    EmptyGraph,
    NotAPartition,
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::WrongMergeCount { expected, got } => {
                write!(f, "sequence has {got} merges, expected {expected}")
            }
            SequenceError::VertexOutOfRange { v, n } => {
                write!(f, "merge endpoint {v} out of range for n={n}")
            }
            SequenceError::SamePart { step, u, v } => {
                write!(f, "merge {step}: vertices {u} and {v} already share a part")
            }
            SequenceError::EmptyGraph => write!(f, "graph has no vertices"),
            SequenceError::NotAPartition => write!(f, "parts do not partition the vertex set"),
        }
    }
}

impl core::error::Error for SequenceError {}

/// A quotient of a graph by a partition of its vertices. Parts are kept
/// sorted by minimum element; a black edge joins fully adjacent parts, a red
/// edge joins partially adjacent ones, and every part of size >= 2 carries an
/// implicit red loop.
#[derive(Clone, PartialEq, Eq)]
pub struct Trigraph {
    n: usize,
    parts: Vec<u128>,
    black: Vec<u128>,
    red: Vec<u128>,
}

impl fmt::Debug for Trigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<Vec<usize>> = self.parts.iter().map(|&m| bits(m).collect()).collect();
        write!(f, "Trigraph(parts={parts:?}, black={:?}, red={:?})", self.black_edges(), self.red_edges())
    }
}

impl Trigraph {
    /// The quotient `g / parts`. `parts` must be a partition of `0..g.n()`.
    pub fn quotient(g: &Graph, parts: &[Vec<usize>]) -> Result<Self, SequenceError> {
        let mut masks = Vec::with_capacity(parts.len());
        for part in parts {
            let mut m = 0u128;
            for &v in part {
                if v >= g.n() {
                    return Err(SequenceError::VertexOutOfRange { v, n: g.n() });
                }
                m |= 1 << v;
            }
            if m == 0 || (m.count_ones() as usize) != part.len() {
                return Err(SequenceError::NotAPartition);
            }
            masks.push(m);
        }
        let mut union = 0u128;
        for &m in &masks {
            if union & m != 0 {
                return Err(SequenceError::NotAPartition);
            }
            union |= m;
        }
        if union != g.full_mask() || masks.is_empty() {
            return Err(SequenceError::NotAPartition);
        }
        Ok(Self::quotient_masks(g, masks))
    }

    fn quotient_masks(g: &Graph, mut masks: Vec<u128>) -> Self {
        masks.sort_unstable_by_key(|m| m.trailing_zeros());
        let p = masks.len();
        let mut black = vec![0u128; p];
        let mut red = vec![0u128; p];
        for i in 0..p {
            for j in i + 1..p {
                let (full, any) = cross_adjacency(g, masks[i], masks[j]);
                if full {
                    black[i] |= 1 << j;
                    black[j] |= 1 << i;
                } else if any {
                    red[i] |= 1 << j;
                    red[j] |= 1 << i;
                }
            }
        }
        Trigraph {
            n: g.n(),
            parts: masks,
            black,
            red,
        }
    }

    /// Trigraph of the singleton partition: black edges are exactly the
    /// graph's edges.
    pub fn singletons(g: &Graph) -> Result<Self, SequenceError> {
        if g.n() == 0 {
            return Err(SequenceError::EmptyGraph);
        }
        let masks: Vec<u128> = (0..g.n()).map(|v| 1u128 << v).collect();
        Ok(Self::quotient_masks(g, masks))
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Original vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex mask of part `i`.
    pub fn part(&self, i: usize) -> u128 {
        self.parts[i]
    }

    pub fn parts(&self) -> &[u128] {
        &self.parts
    }

    pub fn part_containing(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|&m| m & (1 << v) != 0)
    }

    pub fn has_black(&self, i: usize, j: usize) -> bool {
        self.black[i] & (1 << j) != 0
    }

    pub fn has_red(&self, i: usize, j: usize) -> bool {
        self.red[i] & (1 << j) != 0
    }

    /// Mask (over part indices) of black neighbors of part `i`.
    pub fn black_row(&self, i: usize) -> u128 {
        self.black[i]
    }

    /// Mask (over part indices) of red neighbors of part `i`, loop excluded.
    pub fn red_row(&self, i: usize) -> u128 {
        self.red[i]
    }

    /// A part of size >= 2 carries a red loop.
    pub fn has_red_loop(&self, i: usize) -> bool {
        self.parts[i].count_ones() >= 2
    }

    /// Black edges as part-index pairs `(i, j)`, `i < j`, lexicographic.
    pub fn black_edges(&self) -> Vec<(usize, usize)> {
        let p = self.parts.len();
        (0..p)
            .flat_map(|i| bits(self.black[i]).filter(move |&j| i < j).map(move |j| (i, j)))
            .collect()
    }

    /// Red edges as part-index pairs, loops excluded.
    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        let p = self.parts.len();
        (0..p)
            .flat_map(|i| bits(self.red[i]).filter(move |&j| i < j).map(move |j| (i, j)))
            .collect()
    }

    /// Contracts parts `i` and `j` using the incremental rules: black where
    /// both relations were black, non-edge where both were non-edges, red
    /// otherwise. Equals the quotient by the merged partition.
    pub fn contract(&self, i: usize, j: usize) -> Trigraph {
        assert!(i != j && i < self.parts.len() && j < self.parts.len());
        let (i, j) = (i.min(j), i.max(j));
        let p = self.parts.len();
        // Part order is by minimum element, so the merged part keeps slot i
        // and slot j disappears.
        let mut parts = Vec::with_capacity(p - 1);
        for t in 0..p {
            if t == j {
                continue;
            }
            parts.push(if t == i {
                self.parts[i] | self.parts[j]
            } else {
                self.parts[t]
            });
        }
        let squeeze = |mask: u128| -> u128 {
            // Drops bit j (folding it into bit i) and shifts higher bits down.
            let merged = mask & !(1 << j) | if mask & (1 << j) != 0 { 1 << i } else { 0 };
            let low = merged & ((1u128 << j) - 1);
            let high = if j + 1 < 128 { merged >> (j + 1) } else { 0 };
            low | (high << j)
        };
        let new_black_uv = self.black[i] & self.black[j] & !(1 << i) & !(1 << j);
        let any_i = self.black[i] | self.red[i];
        let any_j = self.black[j] | self.red[j];
        let new_red_uv = (any_i | any_j) & !new_black_uv & !(1 << i) & !(1 << j);
        let mut black = Vec::with_capacity(p - 1);
        let mut red = Vec::with_capacity(p - 1);
        for t in 0..p {
            if t == j {
                continue;
            }
            if t == i {
                black.push(squeeze(new_black_uv));
                red.push(squeeze(new_red_uv));
            } else {
                let b = self.black[t] & !(1 << i) & !(1 << j);
                let r = self.red[t] & !(1 << i) & !(1 << j);
                let to_uv_black = new_black_uv & (1 << t) != 0;
                let to_uv_red = new_red_uv & (1 << t) != 0;
                black.push(squeeze(b) | if to_uv_black { 1 << i } else { 0 });
                red.push(squeeze(r) | if to_uv_red { 1 << i } else { 0 });
            }
        }
        Trigraph {
            n: self.n,
            parts,
            black,
            red,
        }
    }

    /// Connected components of the red graph (loops irrelevant), each a
    /// sorted list of part indices; components ordered by smallest index.
    pub fn red_components(&self) -> Vec<Vec<usize>> {
        let p = self.parts.len();
        let mut seen = vec![false; p];
        let mut comps = Vec::new();
        for s in 0..p {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in bits(self.red[u]) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Width of this single trigraph under the given functional.
    pub fn width(&self, kind: WidthKind) -> usize {
        match kind {
            WidthKind::Tww => self
                .red
                .iter()
                .map(|r| r.count_ones() as usize)
                .max()
                .unwrap_or(0),
            WidthKind::Ctww => self
                .red_components()
                .iter()
                .map(|c| c.len())
                .max()
                .unwrap_or(0),
            WidthKind::Ttww => {
                let half: usize = self.red.iter().map(|r| r.count_ones() as usize).sum();
                let loops = (0..self.parts.len()).filter(|&i| self.has_red_loop(i)).count();
                half / 2 + loops
            }
            WidthKind::Tvtww => (0..self.parts.len())
                .filter(|&i| self.red[i] != 0 || self.has_red_loop(i))
                .count(),
        }
    }
}

/// True full/any adjacency across two disjoint vertex masks.
fn cross_adjacency(g: &Graph, a: u128, b: u128) -> (bool, bool) {
    let mut and = b;
    let mut or = 0u128;
    for u in bits(a) {
        let row = g.neighbors_mask(u) & b;
        and &= row;
        or |= row;
    }
    (and == b, or != 0)
}

/// An ordered list of `n - 1` merges, each naming two original vertices
/// whose current parts get contracted. Validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionSequence {
    base: Graph,
    merges: Vec<(usize, usize)>,
}

impl ContractionSequence {
    pub fn new(base: Graph, merges: Vec<(usize, usize)>) -> Result<Self, SequenceError> {
        if base.n() == 0 {
            return Err(SequenceError::EmptyGraph);
        }
        if merges.len() + 1 != base.n() {
            return Err(SequenceError::WrongMergeCount {
                expected: base.n() - 1,
                got: merges.len(),
            });
        }
        let seq = ContractionSequence { base, merges };
        seq.replay_checked()?;
        Ok(seq)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn merges(&self) -> &[(usize, usize)] {
        &self.merges
    }

    fn replay_checked(&self) -> Result<Vec<Trigraph>, SequenceError> {
        let mut cur = Trigraph::singletons(&self.base)?;
        let mut out = Vec::with_capacity(self.base.n());
        out.push(cur.clone());
        for (step, &(u, v)) in self.merges.iter().enumerate() {
            let n = self.base.n();
            if u >= n {
                return Err(SequenceError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(SequenceError::VertexOutOfRange { v, n });
            }
            let pu = cur.part_containing(u).expect("partition covers all vertices");
            let pv = cur.part_containing(v).expect("partition covers all vertices");
            if pu == pv {
                return Err(SequenceError::SamePart { step, u, v });
            }
            cur = cur.contract(pu, pv);
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// The trigraphs `G_n .. G_1` (index 0 holds the singleton quotient).
    pub fn replay(&self) -> Vec<Trigraph> {
        self.replay_checked().expect("validated at construction")
    }

    /// Maximum width over the replayed trigraphs.
    pub fn width(&self, kind: WidthKind) -> usize {
        self.replay().iter().map(|t| t.width(kind)).max().unwrap_or(0)
    }
}

/// Budget for the exhaustive width search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WidthLimits {
    pub max_n: usize,
}

impl WidthLimits {
    /// Defaults: n <= 10 for tww/ctww, n <= 8 for ttww/tvtww.
    pub fn default_for(kind: WidthKind) -> Self {
        match kind {
            WidthKind::Tww | WidthKind::Ctww => WidthLimits { max_n: 10 },
            WidthKind::Ttww | WidthKind::Tvtww => WidthLimits { max_n: 8 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    /// The instance exceeds the configured exhaustive-search budget. Carries
    /// the trivial lower bound and a greedy upper bound as partial results.
    BudgetExceeded {
        n: usize,
        max_n: usize,
        lower_bound: usize,
        upper_bound: usize,
    },
    /// No certificate exists within the requested bound.
    BoundExceeded { lower_bound: usize },
    Invalid(SequenceError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::BudgetExceeded {
                n,
                max_n,
                lower_bound,
                upper_bound,
            } => write!(
                f,
                "n={n} exceeds search budget max_n={max_n} (partial bounds: {lower_bound} <= value <= {upper_bound})"
            ),
            SearchError::BoundExceeded { lower_bound } => {
                write!(f, "no certificate within bound; value > {}", lower_bound - 1)
            }
            SearchError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SearchError {}

/// Exact minimum sequence width with an optimal witness, by memoized
/// depth-first search over the partition lattice with branch-and-bound
/// pruning. Witness merges are tie-broken to the lexicographically smallest
/// pair of part representatives.
pub fn exact_width(
    g: &Graph,
    kind: WidthKind,
    limits: WidthLimits,
) -> Result<(usize, ContractionSequence), SearchError> {
    if g.n() == 0 {
        return Err(SearchError::Invalid(SequenceError::EmptyGraph));
    }
    if g.n() > limits.max_n || g.n() > 16 {
        let ub = greedy_sequence(g, kind).map(|s| s.width(kind)).unwrap_or(0);
        return Err(SearchError::BudgetExceeded {
            n: g.n(),
            max_n: limits.max_n.min(16),
            lower_bound: if kind == WidthKind::Ctww { 1 } else { 0 },
            upper_bound: ub,
        });
    }
    let start = Trigraph::singletons(g).map_err(SearchError::Invalid)?;
    let mut search = WidthSearch {
        kind,
        memo: HashMap::new(),
    };
    let below = search.best_below(&start);
    let value = start.width(kind).max(below);

    // Reconstruct the witness by following the recorded best merges.
    let mut merges = Vec::with_capacity(g.n() - 1);
    let mut cur = start;
    while cur.part_count() > 1 {
        let key = canon_key(&cur);
        let (_, (a, b)) = *search.memo.get(&key).expect("path states are memoized");
        merges.push((a as usize, b as usize));
        let pa = cur.part_containing(a as usize).unwrap();
        let pb = cur.part_containing(b as usize).unwrap();
        cur = cur.contract(pa, pb);
    }
    let witness = ContractionSequence::new(g.clone(), merges).expect("search emits valid merges");
    debug_assert_eq!(witness.width(kind), value);
    Ok((value, witness))
}

struct WidthSearch {
    kind: WidthKind,
    memo: HashMap<u64, (usize, (u8, u8))>,
}

impl WidthSearch {
    /// Minimum over completions of the maximum width of all trigraphs
    /// strictly below `t` in the contraction order (excluding `t` itself).
    fn best_below(&mut self, t: &Trigraph) -> usize {
        let p = t.part_count();
        if p == 1 {
            return 0;
        }
        let key = canon_key(t);
        if let Some(&(v, _)) = self.memo.get(&key) {
            return v;
        }
        let mut best = usize::MAX;
        let mut best_merge = (0u8, 0u8);
        for i in 0..p {
            for j in i + 1..p {
                let child = t.contract(i, j);
                let w = child.width(self.kind);
                if w >= best {
                    continue;
                }
                let total = w.max(self.best_below(&child));
                if total < best {
                    best = total;
                    best_merge = (
                        t.part(i).trailing_zeros() as u8,
                        t.part(j).trailing_zeros() as u8,
                    );
                }
            }
        }
        self.memo.insert(key, (best, best_merge));
        best
    }
}

/// Packs the partition into one nibble per vertex (requires n <= 16); parts
/// are numbered by first appearance, which matches the sorted-by-minimum
/// order.
fn canon_key(t: &Trigraph) -> u64 {
    let mut key = 0u64;
    for (idx, &m) in t.parts().iter().enumerate() {
        for v in bits(m) {
            key |= (idx as u64) << (4 * v);
        }
    }
    key
}

/// Greedy sequence: repeatedly takes the lexicographically smallest merge
/// minimizing the next trigraph's width. Used only for upper bounds in
/// budget-exceeded reports.
fn greedy_sequence(g: &Graph, kind: WidthKind) -> Option<ContractionSequence> {
    let mut cur = Trigraph::singletons(g).ok()?;
    let mut merges = Vec::new();
    while cur.part_count() > 1 {
        let p = cur.part_count();
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..p {
            for j in i + 1..p {
                let w = cur.contract(i, j).width(kind);
                if best.map(|(bw, _, _)| w < bw).unwrap_or(true) {
                    best = Some((w, i, j));
                }
            }
        }
        let (_, i, j) = best?;
        merges.push((
            cur.part(i).trailing_zeros() as usize,
            cur.part(j).trailing_zeros() as usize,
        ));
        cur = cur.contract(i, j);
    }
    ContractionSequence::new(g.clone(), merges).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c7() -> Graph {
        Graph::cycle(7).unwrap()
    }

    #[test]
    fn quotient_c4_example() {
        let c4 = Graph::cycle(4).unwrap();
        let t = Trigraph::quotient(&c4, &[vec![0, 2], vec![1], vec![3]]).unwrap();
        // parts sorted by min: {0,2}, {1}, {3}
        assert_eq!(t.black_edges(), vec![(0, 1), (0, 2)]);
        assert!(t.red_edges().is_empty());
        assert!(t.has_red_loop(0));
        assert!(!t.has_red_loop(1));
    }

    #[test]
    fn quotient_singletons_is_black_copy() {
        let g = Graph::with_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let t = Trigraph::singletons(&g).unwrap();
        assert_eq!(t.black_edges(), vec![(0, 1), (2, 3)]);
        assert!(t.red_edges().is_empty());
        assert_eq!(t.width(WidthKind::Tww), 0);
        assert_eq!(t.width(WidthKind::Ctww), 1);
        assert_eq!(t.width(WidthKind::Ttww), 0);
        assert_eq!(t.width(WidthKind::Tvtww), 0);
    }

    #[test]
    fn quotient_c7_first_merge_matches_walkthrough() {
        // Merging the first two cycle vertices leaves red edges to both cycle
        // neighbors and a loop on the merged part.
        let t = Trigraph::quotient(
            &c7(),
            &[vec![0, 1], vec![2], vec![3], vec![4], vec![5], vec![6]],
        )
        .unwrap();
        assert_eq!(t.red_edges(), vec![(0, 1), (0, 5)]); // {01}-{2}, {01}-{6}
        assert_eq!(t.black_edges(), vec![(1, 2), (2, 3), (3, 4), (4, 5)]);
        assert!(t.has_red_loop(0));
        assert_eq!(t.width(WidthKind::Tww), 2);
        assert_eq!(t.width(WidthKind::Ctww), 3);
        assert_eq!(t.width(WidthKind::Ttww), 3);
        assert_eq!(t.width(WidthKind::Tvtww), 3);
    }

    #[test]
    fn contract_matches_quotient_on_random_partitions() {
        // Incremental contraction must agree with recomputing the quotient
        // from scratch, for every graph on <= 5 vertices here (exhaustive
        // random sample) and every merge.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..200 {
            let n = rng.gen_range(2..=6);
            let p = rng.gen_range(0.0..=1.0);
            let g = crate::graph::generate(&crate::graph::GenKind::Random { n, p }, rng.gen())
                .unwrap();
            let mut cur = Trigraph::singletons(&g).unwrap();
            while cur.part_count() > 1 {
                let i = rng.gen_range(0..cur.part_count());
                let mut j = rng.gen_range(0..cur.part_count());
                while j == i {
                    j = rng.gen_range(0..cur.part_count());
                }
                let contracted = cur.contract(i.min(j), i.max(j));
                let parts: Vec<Vec<usize>> =
                    contracted.parts().iter().map(|&m| bits(m).collect()).collect();
                let fresh = Trigraph::quotient(&g, &parts).unwrap();
                assert_eq!(contracted, fresh);
                cur = contracted;
            }
        }
    }

    #[test]
    fn replay_validates() {
        let g = Graph::with_edges(2, &[(0, 1)]).unwrap();
        let seq = ContractionSequence::new(g.clone(), vec![(0, 1)]).unwrap();
        let ts = seq.replay();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[1].part_count(), 1);
        assert!(ts[1].has_red_loop(0));
        assert_eq!(ts[1].width(WidthKind::Ttww), 1);
        assert_eq!(ts[1].width(WidthKind::Tvtww), 1);

        assert!(matches!(
            ContractionSequence::new(g.clone(), vec![]),
            Err(SequenceError::WrongMergeCount { .. })
        ));
        let g3 = Graph::new(3).unwrap();
        assert!(matches!(
            ContractionSequence::new(g3, vec![(0, 1), (0, 1)]),
            Err(SequenceError::SamePart { step: 1, .. })
        ));
    }

    #[test]
    fn replay_single_vertex() {
        let g = Graph::new(1).unwrap();
        let seq = ContractionSequence::new(g, vec![]).unwrap();
        let ts = seq.replay();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].width(WidthKind::Tww), 0);
        assert_eq!(ts[0].width(WidthKind::Ctww), 1);
        assert_eq!(ts[0].width(WidthKind::Ttww), 0);
        assert_eq!(ts[0].width(WidthKind::Tvtww), 0);
    }

    #[test]
    fn red_components_ignore_loops() {
        let g = Graph::with_edges(3, &[(0, 1)]).unwrap();
        // Merge 0,1: part {01} has a loop but no red edges to {2}.
        let t = Trigraph::quotient(&g, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(t.red_components(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn red_components_after_first_c7_merge() {
        // The merged part and the two cycle neighbors form one component;
        // the rest are singletons.
        let t = Trigraph::quotient(
            &c7(),
            &[vec![0, 1], vec![2], vec![3], vec![4], vec![5], vec![6]],
        )
        .unwrap();
        assert_eq!(
            t.red_components(),
            vec![vec![0, 1, 5], vec![2], vec![3], vec![4]]
        );
    }

    #[test]
    fn fig_style_sequence_widths_on_c7() {
        let merges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6)];
        let seq = ContractionSequence::new(c7(), merges).unwrap();
        assert_eq!(seq.width(WidthKind::Tww), 2);
        assert_eq!(seq.width(WidthKind::Ctww), 3);
        assert_eq!(seq.width(WidthKind::Ttww), 3);
        assert_eq!(seq.width(WidthKind::Tvtww), 3);
    }

    #[test]
    fn contract_at_the_vertex_cap() {
        // 128 vertices exercise the top bit of the part masks.
        let mut g = Graph::new(128).unwrap();
        for v in 1..128 {
            g.add_edge(0, v).unwrap();
        }
        let t = Trigraph::singletons(&g).unwrap();
        let c = t.contract(0, 127);
        assert_eq!(c.part_count(), 127);
        assert_eq!(c.part(0), 1 | (1 << 127));
        // 0 was adjacent to 126, 127 was not: the pair goes red.
        assert!(c.has_red(0, 126));
        let c2 = t.contract(126, 127);
        assert!(c2.has_black(0, 126));
    }

    #[test]
    fn exact_ctww_point_values() {
        let lim = WidthLimits::default_for(WidthKind::Ctww);
        let (v, w) = exact_width(&c7(), WidthKind::Ctww, lim).unwrap();
        assert_eq!(v, 3);
        assert_eq!(w.width(WidthKind::Ctww), 3);

        let (v, _) = exact_width(&Graph::complete(5).unwrap(), WidthKind::Ctww, lim).unwrap();
        assert_eq!(v, 1);

        let (v, _) = exact_width(&Graph::path(4).unwrap(), WidthKind::Ctww, lim).unwrap();
        assert_eq!(v, 2);
    }

    #[test]
    fn tww_zero_iff_cograph() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let lim = WidthLimits::default_for(WidthKind::Tww);
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let p = rng.gen_range(0.0..=1.0);
            let g = crate::graph::generate(&crate::graph::GenKind::Random { n, p }, rng.gen())
                .unwrap();
            let (tww, _) = exact_width(&g, WidthKind::Tww, lim).unwrap();
            assert_eq!(tww == 0, g.is_cograph(), "graph {g:?}");
        }
    }

    #[test]
    fn budget_error_reports_bounds() {
        let g = Graph::cycle(12).unwrap();
        match exact_width(&g, WidthKind::Ctww, WidthLimits { max_n: 8 }) {
            Err(SearchError::BudgetExceeded {
                n: 12,
                lower_bound,
                upper_bound,
                ..
            }) => {
                assert!(lower_bound <= upper_bound);
                assert!(upper_bound >= 3);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
