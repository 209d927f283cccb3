//! Constructive conversions between the three certificate kinds:
//! contraction sequences, (linear) k-expressions, and branch
//! decompositions, each with its proved width guarantee.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::cwexpr::{CwExpr, ExprError, Label};
use crate::graph::Graph;
use crate::rankwidth::{BranchDecomposition, BranchTree, DecompositionError};
use crate::trigraph::{ContractionSequence, SequenceError, Trigraph, WidthKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    Sequence(SequenceError),
    Expr(ExprError),
    Decomposition(DecompositionError),
    /// The expression does not evaluate to the given graph.
    ExprMismatch,
    /// The decomposition's width exceeds the claimed rank bound.
    WidthExceedsRank { width: usize, rank: usize },
    /// No two leaves share a black neighborhood outside the chosen subtree;
    /// the width certificate is not valid for the claimed rank.
    NoIdenticalRows,
    /// A structural invariant of the construction failed.
    InvariantViolated(&'static str),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::Sequence(e) => write!(f, "{e}"),
            TransformError::Expr(e) => write!(f, "{e}"),
            TransformError::Decomposition(e) => write!(f, "{e}"),
            TransformError::ExprMismatch => {
                write!(f, "expression does not evaluate to the given graph")
            }
            TransformError::WidthExceedsRank { width, rank } => {
                write!(f, "decomposition has width {width}, above the claimed rank {rank}")
            }
            TransformError::NoIdenticalRows => {
                write!(f, "no identical black rows found; width certificate invalid")
            }
            TransformError::InvariantViolated(what) => {
                write!(f, "construction invariant violated: {what}")
            }
        }
    }
}

impl core::error::Error for TransformError {}

impl From<SequenceError> for TransformError {
    fn from(e: SequenceError) -> Self {
        TransformError::Sequence(e)
    }
}

impl From<ExprError> for TransformError {
    fn from(e: ExprError) -> Self {
        TransformError::Expr(e)
    }
}

/// Expressions maintained per red-connected component while replaying a
/// sequence: the component (keyed by its sorted part masks) carries an
/// expression of the induced subgraph on its union, with one label per part.
pub struct ComponentTable {
    entries: HashMap<Vec<u128>, ComponentEntry>,
}

pub struct ComponentEntry {
    pub expr: CwExpr,
    /// Part mask -> label of that part's vertices in `expr`.
    pub labels: HashMap<u128, Label>,
}

impl ComponentTable {
    fn singletons(n: usize) -> Self {
        let mut entries = HashMap::new();
        for v in 0..n {
            let mask = 1u128 << v;
            let mut labels = HashMap::new();
            labels.insert(mask, 1);
            entries.insert(
                vec![mask],
                ComponentEntry {
                    expr: CwExpr::vertex(1, Some(v.to_string())),
                    labels,
                },
            );
        }
        ComponentTable { entries }
    }

    fn remove(&mut self, key: &[u128]) -> Option<ComponentEntry> {
        self.entries.remove(key)
    }

    fn insert(&mut self, key: Vec<u128>, entry: ComponentEntry) {
        self.entries.insert(key, entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks that an entry's expression evaluates to the induced subgraph
    /// on the component's union, with labels identifying the parts.
    pub fn entry_consistent(g: &Graph, entry: &ComponentEntry) -> bool {
        eval_matches_induced(g, &entry.expr, &entry.labels)
    }
}

fn eval_matches_induced(g: &Graph, expr: &CwExpr, labels: &HashMap<u128, Label>) -> bool {
    let Ok(ev) = expr.eval() else {
        return false;
    };
    let ids: Option<Vec<usize>> = ev
        .names
        .iter()
        .map(|n| n.as_deref().and_then(|s| s.parse::<usize>().ok()))
        .collect();
    let Some(ids) = ids else {
        return false;
    };
    let union: u128 = labels.keys().fold(0, |a, m| a | m);
    let covered: u128 = ids.iter().fold(0, |a, &v| a | (1u128 << v));
    if covered != union || ids.len() != union.count_ones() as usize {
        return false;
    }
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if ev.graph.has_edge(i, j) != g.has_edge(ids[i], ids[j]) {
                return false;
            }
        }
        let part = labels.keys().find(|&&m| m & (1u128 << ids[i]) != 0);
        match part {
            Some(&m) if labels[&m] == ev.labels[i] => {}
            _ => return false,
        }
    }
    true
}

/// Injectively rewrites an expression's labels: live part labels move to
/// their targets, dead labels shift to spare values inside `1..=pool`.
fn remap_labels(expr: &CwExpr, live_targets: &HashMap<Label, Label>, pool: Label) -> CwExpr {
    let mut map: HashMap<Label, Label> = live_targets.clone();
    let mut used: Vec<bool> = vec![false; pool as usize + 1];
    for &t in live_targets.values() {
        used[t as usize] = true;
    }
    for l in expr.all_labels() {
        if map.contains_key(&l) {
            continue;
        }
        let spare = (1..=pool)
            .find(|&c| !used[c as usize])
            .expect("pool covers every label of a stored expression");
        used[spare as usize] = true;
        map.insert(l, spare);
    }
    expr.map_labels(&map)
}

fn part_index(t: &Trigraph, mask: u128) -> usize {
    t.parts()
        .iter()
        .position(|&m| m == mask)
        .expect("mask is a part of the trigraph")
}

/// Builds a k-expression of `g` from a contraction sequence, with
/// `width <= sequence ctww + 1`. Leaves are named by decimal vertex ids.
pub fn seq_to_expr(g: &Graph, seq: &ContractionSequence) -> Result<CwExpr, TransformError> {
    if seq.base() != g {
        return Err(TransformError::InvariantViolated("sequence is for a different graph"));
    }
    if g.n() == 1 {
        return Ok(CwExpr::vertex(1, Some("0".to_string())));
    }
    let trigraphs = seq.replay();
    let kappa = trigraphs
        .iter()
        .map(|t| t.width(WidthKind::Ctww))
        .max()
        .unwrap_or(1);
    let pool = (kappa + 1) as Label;
    let mut table = ComponentTable::singletons(g.n());

    for (step, window) in trigraphs.windows(2).enumerate() {
        let (prev, cur) = (&window[0], &window[1]);
        let (u, v) = seq.merges()[step];
        let pu = prev.part(prev.part_containing(u).expect("valid sequence"));
        let pv = prev.part(prev.part_containing(v).expect("valid sequence"));
        let merged = pu | pv;

        // The red component of the merged part in the new trigraph.
        let mi = part_index(cur, merged);
        let comp = cur
            .red_components()
            .into_iter()
            .find(|c| c.contains(&mi))
            .expect("every part sits in a component");
        let c_parts: Vec<u128> = comp.iter().map(|&i| cur.part(i)).collect();
        let p = c_parts.len();

        // S_1..S_{p-1} are the untouched parts in ascending order of their
        // minimum vertex; the merged pair takes labels p and p+1.
        let mut s_list: Vec<u128> = c_parts.iter().copied().filter(|&m| m != merged).collect();
        s_list.sort_unstable_by_key(|m| m.trailing_zeros());
        let (first, second) = if pu.trailing_zeros() < pv.trailing_zeros() {
            (pu, pv)
        } else {
            (pv, pu)
        };
        s_list.push(first);
        s_list.push(second);
        let target: HashMap<u128, Label> = s_list
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, (i + 1) as Label))
            .collect();

        // Sub-components of the previous trigraph covering the same parts.
        let s_set: u128 = s_list.iter().fold(0, |a, &m| a | m);
        let mut subs: Vec<Vec<u128>> = prev
            .red_components()
            .into_iter()
            .map(|c| c.iter().map(|&i| prev.part(i)).collect::<Vec<u128>>())
            .filter(|ms| ms.iter().any(|&m| s_list.contains(&m)))
            .collect();
        subs.sort_unstable_by_key(|ms| ms[0].trailing_zeros());
        let covered: u128 = subs.iter().flat_map(|ms| ms.iter()).fold(0, |a, &m| a | m);
        if covered != s_set {
            return Err(TransformError::InvariantViolated(
                "merged components do not cover the new component",
            ));
        }

        // Disjoint union of the relabelled sub-component expressions,
        // folded right-associatively.
        let sub_of: HashMap<u128, usize> = subs
            .iter()
            .enumerate()
            .flat_map(|(j, ms)| ms.iter().map(move |&m| (m, j)))
            .collect();
        let mut pieces = Vec::with_capacity(subs.len());
        for ms in &subs {
            let entry = table
                .remove(&sorted_key(ms))
                .expect("store tracks every live component");
            let live: HashMap<Label, Label> = entry
                .labels
                .iter()
                .map(|(m, l)| (*l, target[m]))
                .collect();
            pieces.push(remap_labels(&entry.expr, &live, pool));
        }
        let mut expr = pieces
            .into_iter()
            .rev()
            .reduce(|right, left| CwExpr::union(left, right))
            .expect("at least one sub-component");

        // Black edges between parts of distinct sub-components.
        for i in 0..s_list.len() {
            for j in i + 1..s_list.len() {
                if sub_of[&s_list[i]] == sub_of[&s_list[j]] {
                    continue;
                }
                let a = part_index(prev, s_list[i]);
                let b = part_index(prev, s_list[j]);
                if prev.has_black(a, b) {
                    expr = CwExpr::add_edges((i + 1) as Label, (j + 1) as Label, expr);
                }
            }
        }

        expr = CwExpr::relabel((p + 1) as Label, p as Label, expr);

        let mut labels: HashMap<u128, Label> = HashMap::new();
        for (i, &m) in s_list.iter().enumerate().take(p - 1) {
            labels.insert(m, (i + 1) as Label);
        }
        labels.insert(merged, p as Label);
        debug_assert!(ComponentTable::entry_consistent(
            g,
            &ComponentEntry {
                expr: expr.clone(),
                labels: labels.clone()
            }
        ));
        table.insert(sorted_key(&c_parts), ComponentEntry { expr, labels });
    }

    if table.len() != 1 {
        return Err(TransformError::InvariantViolated(
            "replay did not end in a single component",
        ));
    }
    let entry = table
        .remove(&[g.full_mask()] as &[u128])
        .ok_or(TransformError::InvariantViolated("final component is not the full part"))?;
    debug_assert!(entry.expr.width() <= kappa + 1);
    Ok(entry.expr)
}

fn sorted_key(masks: &[u128]) -> Vec<u128> {
    let mut key = masks.to_vec();
    key.sort_unstable_by_key(|m| m.trailing_zeros());
    key
}

/// Builds a linear k-expression of `g` from a contraction sequence, with
/// `width <= sequence tvtww + 1`. The single maintained expression covers
/// the parts touching a red edge (loops included).
pub fn seq_to_linexpr(g: &Graph, seq: &ContractionSequence) -> Result<CwExpr, TransformError> {
    if seq.base() != g {
        return Err(TransformError::InvariantViolated("sequence is for a different graph"));
    }
    if g.n() == 1 {
        return Ok(CwExpr::vertex(1, Some("0".to_string())));
    }
    let trigraphs = seq.replay();
    let kappa = trigraphs
        .iter()
        .map(|t| t.width(WidthKind::Tvtww))
        .max()
        .unwrap_or(1);
    let pool = (kappa + 1) as Label;

    let red_touched = |t: &Trigraph| -> Vec<u128> {
        (0..t.part_count())
            .filter(|&i| t.red_row(i) != 0 || t.has_red_loop(i))
            .map(|i| t.part(i))
            .collect()
    };

    let mut current: Option<ComponentEntry> = None;

    for (step, window) in trigraphs.windows(2).enumerate() {
        let (prev, cur) = (&window[0], &window[1]);
        let (u, v) = seq.merges()[step];
        let pu = prev.part(prev.part_containing(u).expect("valid sequence"));
        let pv = prev.part(prev.part_containing(v).expect("valid sequence"));
        let merged = pu | pv;

        let touched_cur = red_touched(cur);
        let p = touched_cur.len();
        debug_assert!(touched_cur.contains(&merged), "merged part carries a loop");

        let mut s_list: Vec<u128> = touched_cur.iter().copied().filter(|&m| m != merged).collect();
        s_list.sort_unstable_by_key(|m| m.trailing_zeros());
        let (first, second) = if pu.trailing_zeros() < pv.trailing_zeros() {
            (pu, pv)
        } else {
            (pv, pu)
        };
        s_list.push(first);
        s_list.push(second);
        let target: HashMap<u128, Label> = s_list
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, (i + 1) as Label))
            .collect();

        let touched_prev = red_touched(prev);
        if touched_prev.iter().any(|m| !s_list.contains(m)) {
            return Err(TransformError::InvariantViolated(
                "red-touched parts must persist across a contraction",
            ));
        }

        // Relabel the carried expression, then append the fresh singletons.
        let mut expr: Option<CwExpr> = match current.take() {
            None => None,
            Some(entry) => {
                let live: HashMap<Label, Label> = entry
                    .labels
                    .iter()
                    .map(|(m, l)| (*l, target[m]))
                    .collect();
                Some(remap_labels(&entry.expr, &live, pool))
            }
        };
        for (i, &m) in s_list.iter().enumerate() {
            if touched_prev.contains(&m) {
                continue;
            }
            if m.count_ones() != 1 {
                return Err(TransformError::InvariantViolated(
                    "a red-free part must be a singleton",
                ));
            }
            let leaf = CwExpr::vertex((i + 1) as Label, Some(m.trailing_zeros().to_string()));
            expr = Some(match expr {
                None => leaf,
                Some(e) => CwExpr::union(e, leaf),
            });
        }
        let mut expr = expr.expect("the merged part is always present");

        // Black edges among the listed parts, except pairs already inside
        // the carried expression.
        for i in 0..s_list.len() {
            for j in i + 1..s_list.len() {
                if touched_prev.contains(&s_list[i]) && touched_prev.contains(&s_list[j]) {
                    continue;
                }
                let a = part_index(prev, s_list[i]);
                let b = part_index(prev, s_list[j]);
                if prev.has_black(a, b) {
                    expr = CwExpr::add_edges((i + 1) as Label, (j + 1) as Label, expr);
                }
            }
        }

        expr = CwExpr::relabel((p + 1) as Label, p as Label, expr);

        let mut labels: HashMap<u128, Label> = HashMap::new();
        for (i, &m) in s_list.iter().enumerate().take(p - 1) {
            labels.insert(m, (i + 1) as Label);
        }
        labels.insert(merged, p as Label);
        debug_assert!(eval_matches_induced(g, &expr, &labels));
        current = Some(ComponentEntry { expr, labels });
    }

    let entry = current.ok_or(TransformError::InvariantViolated("no contraction processed"))?;
    if entry.labels.len() != 1 || !entry.labels.contains_key(&g.full_mask()) {
        return Err(TransformError::InvariantViolated(
            "final expression must cover the single full part",
        ));
    }
    debug_assert!(entry.expr.is_linear());
    debug_assert!(entry.expr.width() <= kappa + 1);
    Ok(entry.expr)
}

/// Largest number of distinct live labels on the left operand over all
/// union subexpressions (0 when there is no union).
pub fn max_union_left_labels(e: &CwExpr) -> usize {
    fn rec(e: &CwExpr, max: &mut usize) {
        match e {
            CwExpr::Vertex { .. } => {}
            CwExpr::Union(a, b) => {
                *max = (*max).max(a.live_labels().len());
                rec(a, max);
                rec(b, max);
            }
            CwExpr::Relabel { child, .. } | CwExpr::AddEdges { child, .. } => rec(child, max),
        }
    }
    let mut max = 0;
    rec(e, &mut max);
    max
}

/// For a linear expression: every union's right vertex carries a label not
/// live in the left operand.
pub fn unions_add_fresh_labels(e: &CwExpr) -> bool {
    fn rec(e: &CwExpr) -> bool {
        match e {
            CwExpr::Vertex { .. } => true,
            CwExpr::Union(a, b) => {
                let fresh = match &**b {
                    CwExpr::Vertex { label, .. } => !a.live_labels().contains(label),
                    _ => false,
                };
                fresh && rec(a)
            }
            CwExpr::Relabel { child, .. } | CwExpr::AddEdges { child, .. } => rec(child),
        }
    }
    rec(e)
}

/// Maps expression leaves to graph vertex ids: decimal leaf names when they
/// form `{0..n-1}`, else plain leaf order.
fn leaf_ids(ev: &crate::cwexpr::EvalResult) -> Vec<usize> {
    ev.numeric_ids().unwrap_or_else(|| (0..ev.graph.n()).collect())
}

/// Builds a contraction sequence of `g` from an expression of `g`, by
/// structural recursion: only same-label vertices are ever contracted, and
/// each union contracts its left side, then its right side, then the shared
/// label classes in ascending label order. The resulting component
/// twin-width is at most `2 * width - 1`, and at most `width` for linear
/// expressions (where tvtww is also at most `width`).
pub fn expr_to_seq(g: &Graph, e: &CwExpr) -> Result<ContractionSequence, TransformError> {
    let ev = e.eval()?;
    if ev.graph.n() != g.n() {
        return Err(TransformError::ExprMismatch);
    }
    let ids = leaf_ids(&ev);
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if ev.graph.has_edge(i, j) != g.has_edge(ids[i], ids[j]) {
                return Err(TransformError::ExprMismatch);
            }
        }
    }

    struct Ctx<'a> {
        ids: &'a [usize],
        next_leaf: usize,
        merges: Vec<(usize, usize)>,
        /// After position `usize`, no red edge may cross the two sides.
        checkpoints: Vec<(usize, u128, u128)>,
    }

    fn push_merge(merges: &mut Vec<(usize, usize)>, a: u128, b: u128) {
        let x = a.trailing_zeros() as usize;
        let y = b.trailing_zeros() as usize;
        merges.push((x.min(y), x.max(y)));
    }

    // Returns the label classes (label -> vertex mask) after contracting
    // this subexpression.
    fn rec(e: &CwExpr, ctx: &mut Ctx) -> alloc::collections::BTreeMap<Label, u128> {
        match e {
            CwExpr::Vertex { label, .. } => {
                let v = ctx.ids[ctx.next_leaf];
                ctx.next_leaf += 1;
                alloc::collections::BTreeMap::from([(*label, 1u128 << v)])
            }
            CwExpr::Union(a, b) => {
                let ca = rec(a, ctx);
                let cb = rec(b, ctx);
                let left: u128 = ca.values().fold(0, |m, &x| m | x);
                let right: u128 = cb.values().fold(0, |m, &x| m | x);
                ctx.checkpoints.push((ctx.merges.len(), left, right));
                let mut out = ca;
                for (l, mb) in cb {
                    match out.get_mut(&l) {
                        None => {
                            out.insert(l, mb);
                        }
                        Some(ma) => {
                            push_merge(&mut ctx.merges, *ma, mb);
                            *ma |= mb;
                        }
                    }
                }
                out
            }
            CwExpr::Relabel { from, to, child } => {
                let mut c = rec(child, ctx);
                if let Some(mf) = c.remove(from) {
                    match c.get_mut(to) {
                        None => {
                            c.insert(*to, mf);
                        }
                        Some(mt) => {
                            push_merge(&mut ctx.merges, *mt, mf);
                            *mt |= mf;
                        }
                    }
                }
                c
            }
            CwExpr::AddEdges { child, .. } => rec(child, ctx),
        }
    }

    let mut ctx = Ctx {
        ids: &ids,
        next_leaf: 0,
        merges: Vec::new(),
        checkpoints: Vec::new(),
    };
    let classes = rec(e, &mut ctx);

    // Fold the remaining label classes together, ascending.
    let mut acc: Option<u128> = None;
    for (_, m) in classes {
        match acc {
            None => acc = Some(m),
            Some(a) => {
                push_merge(&mut ctx.merges, a, m);
                acc = Some(a | m);
            }
        }
    }

    let seq = ContractionSequence::new(g.clone(), ctx.merges).map_err(TransformError::Sequence)?;

    // The union steps must never see a red edge crossing the two sides.
    let trigraphs = seq.replay();
    for &(pos, left, right) in &ctx.checkpoints {
        let t = &trigraphs[pos];
        for (i, j) in t.red_edges() {
            let (pi, pj) = (t.part(i), t.part(j));
            let crosses = (pi & left == pi && pj & right == pj)
                || (pi & right == pi && pj & left == pj);
            if crosses {
                return Err(TransformError::InvariantViolated(
                    "red edge crossing a disjoint union",
                ));
            }
        }
    }
    Ok(seq)
}

/// The union structure of an expression, read as a branch decomposition:
/// relabel and add-edges nodes are skipped, unions become internal nodes,
/// leaves are the expression's vertices.
pub fn expr_to_branch(e: &CwExpr) -> Result<BranchDecomposition, TransformError> {
    let ev = e.eval()?;
    let ids = leaf_ids(&ev);

    fn rec(e: &CwExpr, ids: &[usize], next: &mut usize) -> BranchTree {
        match e {
            CwExpr::Vertex { .. } => {
                let v = ids[*next];
                *next += 1;
                BranchTree::Leaf(v)
            }
            CwExpr::Union(a, b) => {
                let l = rec(a, ids, next);
                let r = rec(b, ids, next);
                BranchTree::node(l, r)
            }
            CwExpr::Relabel { child, .. } | CwExpr::AddEdges { child, .. } => rec(child, ids, next),
        }
    }

    let mut next = 0;
    let tree = rec(e, &ids, &mut next);
    BranchDecomposition::new(tree, ev.graph.n()).map_err(TransformError::Decomposition)
}

/// Builds a contraction sequence of component twin-width at most
/// `2^(r+1) - 1` from a branch decomposition of width at most `r`. Each
/// step picks a deepest subtree with more than `2^r` leaf parts, contracts
/// two of its leaves with identical black neighborhoods outside the subtree
/// (which must exist when the rank bound holds), and identifies the leaves;
/// once at most `2^r` parts remain they are contracted pairwise in
/// lexicographic order.
pub fn branch_to_seq(
    g: &Graph,
    decomposition: &BranchDecomposition,
    r: usize,
) -> Result<ContractionSequence, TransformError> {
    if decomposition.n() != g.n() {
        return Err(TransformError::Decomposition(DecompositionError::LeafSetMismatch));
    }
    let width = decomposition.width(g);
    if width > r {
        return Err(TransformError::WidthExceedsRank { width, rank: r });
    }
    if g.n() <= 1 {
        return ContractionSequence::new(g.clone(), vec![]).map_err(TransformError::Sequence);
    }

    // Arena copy of the tree; leaves carry the current part masks.
    struct Node {
        children: Vec<usize>,
        leaf: Option<u128>,
    }
    fn build(t: &BranchTree, nodes: &mut Vec<Node>) -> usize {
        match t {
            BranchTree::Leaf(v) => {
                nodes.push(Node {
                    children: vec![],
                    leaf: Some(1u128 << v),
                });
                nodes.len() - 1
            }
            BranchTree::Node(a, b) => {
                let ia = build(a, nodes);
                let ib = build(b, nodes);
                nodes.push(Node {
                    children: vec![ia, ib],
                    leaf: None,
                });
                nodes.len() - 1
            }
        }
    }
    let mut nodes: Vec<Node> = Vec::new();
    let root = build(decomposition.tree(), &mut nodes);

    // 2^r saturating; r >= 60 never needs the subtree phase at desk scale.
    let threshold = 1usize.checked_shl(r as u32).unwrap_or(usize::MAX);

    let mut cur = Trigraph::singletons(g).map_err(TransformError::Sequence)?;
    let mut merges: Vec<(usize, usize)> = Vec::new();

    while cur.part_count() > 1 {
        if cur.part_count() <= threshold {
            // Lexicographically smallest pair: parts are ordered by minimum.
            let a = cur.part(0);
            let b = cur.part(1);
            merges.push((a.trailing_zeros() as usize, b.trailing_zeros() as usize));
            cur = cur.contract(0, 1);
            continue;
        }

        // Depths, leaf counts, and leaf lists per node.
        let mut depth = vec![0usize; nodes.len()];
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &c in &nodes[x].children {
                depth[c] = depth[x] + 1;
                order.push(c);
            }
            i += 1;
        }
        fn leaves_below(nodes: &[Node], x: usize, out: &mut Vec<u128>) {
            if let Some(m) = nodes[x].leaf {
                out.push(m);
            }
            for &c in &nodes[x].children {
                leaves_below(nodes, c, out);
            }
        }

        let mut candidate: Option<(usize, usize, u128)> = None; // (node, depth, min vertex)
        for &x in &order {
            let mut lv = Vec::new();
            leaves_below(&nodes, x, &mut lv);
            if lv.len() < threshold + 1 {
                continue;
            }
            let min_vertex = lv.iter().map(|m| m.trailing_zeros()).min().unwrap() as u128;
            let better = match candidate {
                None => true,
                Some((_, d, mv)) => {
                    depth[x] > d || (depth[x] == d && (min_vertex) < mv)
                }
            };
            if better {
                candidate = Some((x, depth[x], min_vertex));
            }
        }
        let (v_node, _, _) =
            candidate.ok_or(TransformError::InvariantViolated("no subtree above the threshold"))?;

        let mut below = Vec::new();
        leaves_below(&nodes, v_node, &mut below);
        below.sort_unstable_by_key(|m| m.trailing_zeros());
        if below.len() > 2 * threshold {
            return Err(TransformError::InvariantViolated(
                "deepest qualifying subtree is too large",
            ));
        }

        // Black rows towards the parts outside the subtree; red edges must
        // not cross while the subtree holds more than 2^r parts.
        let below_idx: Vec<usize> = below.iter().map(|&m| part_index(&cur, m)).collect();
        let outside_mask: u128 = {
            let mut m = 0u128;
            for i in 0..cur.part_count() {
                if !below_idx.contains(&i) {
                    m |= 1 << i;
                }
            }
            m
        };
        for &i in &below_idx {
            if cur.red_row(i) & outside_mask != 0 {
                return Err(TransformError::InvariantViolated(
                    "red edge crossing a large subtree",
                ));
            }
        }

        let mut pair: Option<(usize, usize)> = None;
        'outer: for a in 0..below_idx.len() {
            for b in a + 1..below_idx.len() {
                let ra = cur.black_row(below_idx[a]) & outside_mask;
                let rb = cur.black_row(below_idx[b]) & outside_mask;
                if ra == rb {
                    pair = Some((a, b));
                    break 'outer;
                }
            }
        }
        let Some((a, b)) = pair else {
            return Err(TransformError::NoIdenticalRows);
        };
        let (ma, mb) = (below[a], below[b]);
        merges.push((ma.trailing_zeros() as usize, mb.trailing_zeros() as usize));
        cur = cur.contract(part_index(&cur, ma).min(part_index(&cur, mb)), part_index(&cur, ma).max(part_index(&cur, mb)));

        // Identify the two leaves in the tree: the first keeps the merged
        // part, the second disappears and its parent is shortcut.
        let ia = nodes
            .iter()
            .position(|n| n.leaf == Some(ma))
            .expect("leaf tracked");
        let ib = nodes
            .iter()
            .position(|n| n.leaf == Some(mb))
            .expect("leaf tracked");
        nodes[ia].leaf = Some(ma | mb);
        nodes[ib].leaf = None;
        if let Some(parent) = nodes.iter().position(|n| n.children.contains(&ib)) {
            nodes[parent].children.retain(|&c| c != ib);
            if nodes[parent].children.len() == 1 && nodes[parent].leaf.is_none() {
                let only = nodes[parent].children[0];
                nodes[parent].children = core::mem::take(&mut nodes[only].children);
                nodes[parent].leaf = nodes[only].leaf.take();
            }
        }

        // The construction never lets a red edge cross a subtree holding
        // more than 2^r parts.
        for x in 0..nodes.len() {
            let mut lv = Vec::new();
            leaves_below(&nodes, x, &mut lv);
            if lv.len() <= threshold || lv.len() == cur.part_count() {
                continue;
            }
            let idxs: Vec<usize> = lv.iter().map(|&m| part_index(&cur, m)).collect();
            let out_mask: u128 = (0..cur.part_count())
                .filter(|i| !idxs.contains(i))
                .fold(0, |m, i| m | (1 << i));
            for &i in &idxs {
                if cur.red_row(i) & out_mask != 0 {
                    return Err(TransformError::InvariantViolated(
                        "red edge escaped a large subtree",
                    ));
                }
            }
        }
    }

    ContractionSequence::new(g.clone(), merges).map_err(TransformError::Sequence)
}
