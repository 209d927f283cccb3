//! Branch decompositions, GF(2) cut-rank, and exact rank-width / linear
//! rank-width by exhaustive enumeration at small n.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{bits, Graph};
use crate::trigraph::SearchError;

/// GF(2) rank of the bipartite adjacency matrix between `x` and its
/// complement.
pub fn cut_rank(g: &Graph, x: u128) -> usize {
    cut_rank_within(g, x, g.full_mask())
}

/// Cut-rank with the column side restricted to `world \ x`. Used by the
/// enumeration: with `world` the set of already-placed leaves this is a
/// lower bound for the final rank at the node, since unplaced leaves can
/// only move to the row side or add columns.
fn cut_rank_within(g: &Graph, x: u128, world: u128) -> usize {
    let y = world & g.full_mask() & !x;
    let rows: Vec<u128> = bits(x & g.full_mask())
        .map(|u| g.neighbors_mask(u) & y)
        .collect();
    gf2_rank(rows)
}

/// Row-echelon elimination over bitmask rows.
fn gf2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for col in 0..128 {
        let bit = 1u128 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] & bit != 0 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchTree {
    Leaf(usize),
    Node(Box<BranchTree>, Box<BranchTree>),
}

impl BranchTree {
    pub fn node(a: BranchTree, b: BranchTree) -> Self {
        BranchTree::Node(Box::new(a), Box::new(b))
    }

    pub fn leaf_mask(&self) -> u128 {
        match self {
            BranchTree::Leaf(v) => 1u128 << v,
            BranchTree::Node(a, b) => a.leaf_mask() | b.leaf_mask(),
        }
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            BranchTree::Leaf(v) => out.push(*v),
            BranchTree::Node(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    /// Leaf masks of every non-root node (one per tree edge).
    fn cuts(&self, out: &mut Vec<u128>, is_root: bool) {
        if !is_root {
            out.push(self.leaf_mask());
        }
        if let BranchTree::Node(a, b) = self {
            a.cuts(out, false);
            b.cuts(out, false);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    LeafSetMismatch,
    NotAPermutation,
}

impl fmt::Display for DecompositionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionError::LeafSetMismatch => {
                write!(f, "leaves do not match the vertex set exactly")
            }
            DecompositionError::NotAPermutation => {
                write!(f, "order is not a permutation of the vertex set")
            }
        }
    }
}

impl core::error::Error for DecompositionError {}

/// A binary tree whose leaves are exactly the graph's vertices. Each
/// non-root node induces the bipartition (leaves below, rest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDecomposition {
    n: usize,
    tree: BranchTree,
}

impl BranchDecomposition {
    pub fn new(tree: BranchTree, n: usize) -> Result<Self, DecompositionError> {
        let mut leaves = Vec::new();
        tree.leaves(&mut leaves);
        if leaves.len() != n {
            return Err(DecompositionError::LeafSetMismatch);
        }
        let mut seen = vec![false; n];
        for &v in &leaves {
            if v >= n || seen[v] {
                return Err(DecompositionError::LeafSetMismatch);
            }
            seen[v] = true;
        }
        Ok(BranchDecomposition { n, tree })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tree(&self) -> &BranchTree {
        &self.tree
    }

    /// The vertex bipartitions induced by the tree edges, as masks of one
    /// side.
    pub fn cuts(&self) -> Vec<u128> {
        let mut out = Vec::new();
        self.tree.cuts(&mut out, true);
        out
    }

    /// Maximum cut-rank over all induced bipartitions.
    pub fn width(&self, g: &Graph) -> usize {
        self.cuts().iter().map(|&x| cut_rank(g, x)).max().unwrap_or(0)
    }
}

/// The caterpillar decomposition of a vertex order: the first two vertices
/// join at the bottom and each further vertex hangs off the spine.
pub fn order_to_linear_decomposition(
    order: &[usize],
    n: usize,
) -> Result<BranchDecomposition, DecompositionError> {
    if order.len() != n || n == 0 {
        return Err(DecompositionError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(DecompositionError::NotAPermutation);
        }
        seen[v] = true;
    }
    let mut tree = BranchTree::Leaf(order[0]);
    for &v in &order[1..] {
        tree = BranchTree::node(tree, BranchTree::Leaf(v));
    }
    BranchDecomposition::new(tree, n)
}

/// Budget for the exhaustive decomposition searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RwLimits {
    pub max_n: usize,
}

impl RwLimits {
    pub fn default_rw() -> Self {
        RwLimits { max_n: 9 }
    }

    pub fn default_lrw() -> Self {
        RwLimits { max_n: 8 }
    }
}

/// Exact rank-width with an optimal decomposition, enumerating branch
/// decompositions by iterative leaf insertion (each new leaf subdivides an
/// existing tree edge) and pruning insertions whose partial cuts already
/// reach the best width found; partial cut-ranks never decrease when more
/// leaves arrive, so the pruning is exact.
pub fn exact_rw(g: &Graph, limits: RwLimits) -> Result<(usize, BranchDecomposition), SearchError> {
    let n = g.n();
    if n == 0 {
        return Err(SearchError::Invalid(
            crate::trigraph::SequenceError::EmptyGraph,
        ));
    }
    if n > limits.max_n {
        return Err(SearchError::BudgetExceeded {
            n,
            max_n: limits.max_n,
            lower_bound: 0,
            upper_bound: n / 2 + 1,
        });
    }
    if n == 1 {
        let d = BranchDecomposition::new(BranchTree::Leaf(0), 1).expect("single leaf");
        return Ok((0, d));
    }
    // Leaf 0 is attached above the root, so enumerating rooted binary trees
    // over {1, .., n-1} enumerates unrooted decompositions exactly once.
    let mut search = RwSearch {
        g,
        best: usize::MAX,
        witness: None,
    };
    search.insert_leaves(BranchTree::Leaf(1), 2);
    let tree = search.witness.expect("at least one decomposition");
    let full = BranchTree::node(BranchTree::Leaf(0), tree);
    let d = BranchDecomposition::new(full, n).expect("construction keeps all leaves");
    debug_assert_eq!(d.width(g), search.best);
    Ok((search.best, d))
}

struct RwSearch<'g> {
    g: &'g Graph,
    best: usize,
    witness: Option<BranchTree>,
}

impl<'g> RwSearch<'g> {
    fn insert_leaves(&mut self, tree: BranchTree, next: usize) {
        let placed = 1u128 | tree.leaf_mask(); // leaf 0 plus the tree's leaves
        let mut cuts = Vec::new();
        tree.cuts(&mut cuts, true);
        cuts.push(tree.leaf_mask()); // the edge towards leaf 0
        let w = cuts
            .iter()
            .map(|&x| cut_rank_within(self.g, x, placed))
            .max()
            .unwrap_or(0);
        if w >= self.best {
            return;
        }
        if next == self.g.n() {
            self.best = w;
            self.witness = Some(tree);
            return;
        }
        for pos in 0..count_nodes(&tree) {
            let extended = graft(&tree, pos, next).expect("pos in range");
            self.insert_leaves(extended, next + 1);
        }
    }
}

fn count_nodes(t: &BranchTree) -> usize {
    match t {
        BranchTree::Leaf(_) => 1,
        BranchTree::Node(a, b) => 1 + count_nodes(a) + count_nodes(b),
    }
}

/// Replaces the preorder-`pos` node `x` by `Node(x, Leaf(leaf))`, i.e.
/// subdivides the edge above `x` and hangs the new leaf there.
fn graft(t: &BranchTree, pos: usize, leaf: usize) -> Option<BranchTree> {
    fn rec(t: &BranchTree, pos: &mut usize, leaf: usize) -> Option<BranchTree> {
        if *pos == 0 {
            return Some(BranchTree::node(t.clone(), BranchTree::Leaf(leaf)));
        }
        *pos -= 1;
        match t {
            BranchTree::Leaf(_) => None,
            BranchTree::Node(a, b) => {
                if let Some(na) = rec(a, pos, leaf) {
                    return Some(BranchTree::node(na, (**b).clone()));
                }
                if let Some(nb) = rec(b, pos, leaf) {
                    return Some(BranchTree::node((**a).clone(), nb));
                }
                None
            }
        }
    }
    let mut p = pos;
    rec(t, &mut p, leaf)
}

/// Exact linear rank-width with an optimal vertex order, by prefix-pruned
/// search over permutations.
pub fn exact_lrw(g: &Graph, limits: RwLimits) -> Result<(usize, Vec<usize>), SearchError> {
    let n = g.n();
    if n == 0 {
        return Err(SearchError::Invalid(
            crate::trigraph::SequenceError::EmptyGraph,
        ));
    }
    if n > limits.max_n {
        return Err(SearchError::BudgetExceeded {
            n,
            max_n: limits.max_n,
            lower_bound: 0,
            upper_bound: n / 2 + 1,
        });
    }
    let mut best = usize::MAX;
    let mut witness = Vec::new();
    let mut order = Vec::with_capacity(n);
    prefix_dfs(g, 0, &mut order, 0, &mut best, &mut witness);
    Ok((best, witness))
}

fn prefix_dfs(
    g: &Graph,
    prefix: u128,
    order: &mut Vec<usize>,
    current: usize,
    best: &mut usize,
    witness: &mut Vec<usize>,
) {
    if current >= *best {
        return;
    }
    if order.len() == g.n() {
        *best = current;
        witness.clone_from(order);
        return;
    }
    for v in 0..g.n() {
        let vm = 1u128 << v;
        if prefix & vm != 0 {
            continue;
        }
        let new_prefix = prefix | vm;
        let r = if order.len() + 1 == g.n() {
            0
        } else {
            cut_rank(g, new_prefix)
        };
        order.push(v);
        prefix_dfs(g, new_prefix, order, current.max(r), best, witness);
        order.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_rank_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(cut_rank(&k2, 0b01), 1);

        let c4 = Graph::cycle(4).unwrap();
        // opposite vertices have identical rows
        assert_eq!(cut_rank(&c4, 0b0101), 1);
        assert_eq!(cut_rank(&c4, 0b0011), 2);
        // complement symmetry
        for x in 0..16u128 {
            assert_eq!(cut_rank(&c4, x), cut_rank(&c4, c4.full_mask() & !x));
        }
    }

    #[test]
    fn linear_decomposition_shape_and_width() {
        let c4 = Graph::cycle(4).unwrap();
        let d = order_to_linear_decomposition(&[0, 1, 2, 3], 4).unwrap();
        // one cut per non-root node; the root's two children repeat one
        // unrooted edge
        assert_eq!(d.cuts().len(), 2 * 4 - 2);
        assert_eq!(d.width(&c4), 2);
        assert!(order_to_linear_decomposition(&[0, 1, 1, 3], 4).is_err());

        let k2 = Graph::complete(2).unwrap();
        let d2 = order_to_linear_decomposition(&[0, 1], 2).unwrap();
        assert_eq!(d2.width(&k2), 1);
    }

    #[test]
    fn exact_rw_small_graphs() {
        let lim = RwLimits::default_rw();
        let k2 = Graph::complete(2).unwrap();
        let (r, d) = exact_rw(&k2, lim).unwrap();
        assert_eq!(r, 1);
        assert_eq!(d.width(&k2), 1);

        // complete graphs have rank-width 1, edgeless 0
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(exact_rw(&k5, lim).unwrap().0, 1);
        let e4 = Graph::new(4).unwrap();
        assert_eq!(exact_rw(&e4, lim).unwrap().0, 0);

        // C5: the witness achieves the optimum
        let c5 = Graph::cycle(5).unwrap();
        let (r, d) = exact_rw(&c5, lim).unwrap();
        assert_eq!(d.width(&c5), r);
        assert_eq!(r, 2);
    }

    #[test]
    fn exact_lrw_small_graphs() {
        let lim = RwLimits::default_lrw();
        let c5 = Graph::cycle(5).unwrap();
        let (r, order) = exact_lrw(&c5, lim).unwrap();
        let d = order_to_linear_decomposition(&order, 5).unwrap();
        assert_eq!(d.width(&c5), r);
        // rw <= lrw
        assert!(exact_rw(&c5, RwLimits::default_rw()).unwrap().0 <= r);

        let id = order_to_linear_decomposition(&[0, 1, 2, 3, 4], 5).unwrap();
        assert_eq!(id.width(&c5), 2);
    }

    #[test]
    fn enumeration_counts_match_double_factorial() {
        fn count(tree: BranchTree, next: usize, n: usize) -> usize {
            if next == n {
                return 1;
            }
            (0..count_nodes(&tree))
                .map(|pos| count(graft(&tree, pos, next).unwrap(), next + 1, n))
                .sum()
        }
        // (2n-5)!! decompositions of an n-vertex graph
        for (n, expected) in [(4, 3), (5, 15), (6, 105)] {
            assert_eq!(count(BranchTree::Leaf(1), 2, n), expected);
        }
    }

    #[test]
    fn budget_errors() {
        let g = Graph::cycle(12).unwrap();
        assert!(matches!(
            exact_rw(&g, RwLimits::default_rw()),
            Err(SearchError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            exact_lrw(&g, RwLimits::default_lrw()),
            Err(SearchError::BudgetExceeded { .. })
        ));
    }
}
