//! k-expressions: the four-operation AST (single vertex, disjoint union,
//! relabel, add-edges), evaluation to labelled graphs, width and linearity,
//! and exact clique-width / linear clique-width search on small graphs.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::graph::{bits, Graph, LabelledGraph};
use crate::trigraph::SearchError;

pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CwExpr {
    Vertex {
        label: Label,
        name: Option<String>,
    },
    Union(Box<CwExpr>, Box<CwExpr>),
    Relabel {
        from: Label,
        to: Label,
        child: Box<CwExpr>,
    },
    AddEdges {
        a: Label,
        b: Label,
        child: Box<CwExpr>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprError {
    ZeroLabel,
    EqualLabels { op: &'static str, label: Label },
    DuplicateName(String),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::ZeroLabel => write!(f, "labels must be >= 1"),
            ExprError::EqualLabels { op, label } => {
                write!(f, "{op} requires two distinct labels, got {label} twice")
            }
            ExprError::DuplicateName(n) => write!(f, "duplicate vertex name {n:?}"),
        }
    }
}

impl core::error::Error for ExprError {}

/// Result of evaluating an expression; vertices are numbered in leaf order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalResult {
    pub graph: Graph,
    pub labels: Vec<Label>,
    pub names: Vec<Option<String>>,
}

impl EvalResult {
    pub fn labelled(&self) -> LabelledGraph {
        LabelledGraph {
            graph: self.graph.clone(),
            labels: self.labels.clone(),
        }
    }

    /// If every leaf carries a decimal name and the names form exactly
    /// `{0, .., n-1}`, returns the per-leaf ids.
    pub fn numeric_ids(&self) -> Option<Vec<usize>> {
        let n = self.graph.n();
        let ids: Option<Vec<usize>> = self
            .names
            .iter()
            .map(|name| name.as_deref().and_then(|s| s.parse::<usize>().ok()))
            .collect();
        let ids = ids?;
        let mut seen = vec![false; n];
        for &id in &ids {
            if id >= n || seen[id] {
                return None;
            }
            seen[id] = true;
        }
        Some(ids)
    }

    /// The evaluated graph with vertices renamed by their numeric leaf names
    /// when available, else in plain leaf order.
    pub fn graph_on_named_ids(&self) -> Graph {
        match self.numeric_ids() {
            None => self.graph.clone(),
            Some(ids) => {
                let mut g = Graph::new(self.graph.n()).expect("same size");
                for (u, v) in self.graph.edges() {
                    g.ensure_edge(ids[u], ids[v]).expect("bijective renaming");
                }
                g
            }
        }
    }
}

impl CwExpr {
    pub fn vertex(label: Label, name: Option<String>) -> Self {
        CwExpr::Vertex { label, name }
    }

    pub fn union(a: CwExpr, b: CwExpr) -> Self {
        CwExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn relabel(from: Label, to: Label, child: CwExpr) -> Self {
        CwExpr::Relabel {
            from,
            to,
            child: Box::new(child),
        }
    }

    pub fn add_edges(a: Label, b: Label, child: CwExpr) -> Self {
        CwExpr::AddEdges {
            a,
            b,
            child: Box::new(child),
        }
    }

    /// Checks the structural invariants: labels positive, relabel/add-edges
    /// arguments distinct, vertex names unique.
    pub fn validate(&self) -> Result<(), ExprError> {
        let mut names = BTreeSet::new();
        self.validate_rec(&mut names)
    }

    fn validate_rec(&self, names: &mut BTreeSet<String>) -> Result<(), ExprError> {
        match self {
            CwExpr::Vertex { label, name } => {
                if *label == 0 {
                    return Err(ExprError::ZeroLabel);
                }
                if let Some(n) = name {
                    if !names.insert(n.clone()) {
                        return Err(ExprError::DuplicateName(n.clone()));
                    }
                }
                Ok(())
            }
            CwExpr::Union(a, b) => {
                a.validate_rec(names)?;
                b.validate_rec(names)
            }
            CwExpr::Relabel { from, to, child } => {
                if *from == 0 || *to == 0 {
                    return Err(ExprError::ZeroLabel);
                }
                if from == to {
                    return Err(ExprError::EqualLabels {
                        op: "relabel",
                        label: *from,
                    });
                }
                child.validate_rec(names)
            }
            CwExpr::AddEdges { a, b, child } => {
                if *a == 0 || *b == 0 {
                    return Err(ExprError::ZeroLabel);
                }
                if a == b {
                    return Err(ExprError::EqualLabels {
                        op: "add-edges",
                        label: *a,
                    });
                }
                child.validate_rec(names)
            }
        }
    }

    /// Evaluates the expression; vertices get dense ids in leaf order.
    pub fn eval(&self) -> Result<EvalResult, ExprError> {
        self.validate()?;
        Ok(self.eval_rec())
    }

    fn eval_rec(&self) -> EvalResult {
        match self {
            CwExpr::Vertex { label, name } => EvalResult {
                graph: Graph::new(1).expect("one vertex"),
                labels: vec![*label],
                names: vec![name.clone()],
            },
            CwExpr::Union(a, b) => {
                let l = a.eval_rec();
                let r = b.eval_rec();
                let off = l.graph.n();
                let n = off + r.graph.n();
                let mut graph = Graph::new(n).expect("bounded by caller");
                for (u, v) in l.graph.edges() {
                    graph.ensure_edge(u, v).expect("in range");
                }
                for (u, v) in r.graph.edges() {
                    graph.ensure_edge(u + off, v + off).expect("in range");
                }
                let mut labels = l.labels;
                labels.extend(r.labels);
                let mut names = l.names;
                names.extend(r.names);
                EvalResult {
                    graph,
                    labels,
                    names,
                }
            }
            CwExpr::Relabel { from, to, child } => {
                let mut e = child.eval_rec();
                for l in e.labels.iter_mut() {
                    if *l == *from {
                        *l = *to;
                    }
                }
                e
            }
            CwExpr::AddEdges { a, b, child } => {
                let mut e = child.eval_rec();
                let us: Vec<usize> = (0..e.graph.n()).filter(|&v| e.labels[v] == *a).collect();
                let vs: Vec<usize> = (0..e.graph.n()).filter(|&v| e.labels[v] == *b).collect();
                for &u in &us {
                    for &v in &vs {
                        e.graph.ensure_edge(u, v).expect("distinct labels");
                    }
                }
                e
            }
        }
    }

    /// All label integers appearing anywhere in the expression, including
    /// relabel and add-edges arguments.
    pub fn all_labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<Label>) {
        match self {
            CwExpr::Vertex { label, .. } => {
                out.insert(*label);
            }
            CwExpr::Union(a, b) => {
                a.collect_labels(out);
                b.collect_labels(out);
            }
            CwExpr::Relabel { from, to, child } => {
                out.insert(*from);
                out.insert(*to);
                child.collect_labels(out);
            }
            CwExpr::AddEdges { a, b, child } => {
                out.insert(*a);
                out.insert(*b);
                child.collect_labels(out);
            }
        }
    }

    /// Width of the expression: the number of distinct labels appearing
    /// anywhere in it.
    pub fn width(&self) -> usize {
        self.all_labels().len()
    }

    /// Labels carried by the vertices of the evaluated graph (as opposed to
    /// dead labels only mentioned by operations).
    pub fn live_labels(&self) -> BTreeSet<Label> {
        match self {
            CwExpr::Vertex { label, .. } => BTreeSet::from([*label]),
            CwExpr::Union(a, b) => {
                let mut s = a.live_labels();
                s.extend(b.live_labels());
                s
            }
            CwExpr::Relabel { from, to, child } => {
                let mut s = child.live_labels();
                if s.remove(from) {
                    s.insert(*to);
                }
                s
            }
            CwExpr::AddEdges { child, .. } => child.live_labels(),
        }
    }

    /// A linear expression only ever unions a built graph with a fresh
    /// single vertex on the right.
    pub fn is_linear(&self) -> bool {
        match self {
            CwExpr::Vertex { .. } => true,
            CwExpr::Union(a, b) => a.is_linear() && matches!(**b, CwExpr::Vertex { .. }),
            CwExpr::Relabel { child, .. } | CwExpr::AddEdges { child, .. } => child.is_linear(),
        }
    }

    /// Rewrites every label through `map`. The map must cover all labels
    /// appearing in the expression and be injective on them.
    pub fn map_labels(&self, map: &HashMap<Label, Label>) -> CwExpr {
        let m = |l: &Label| *map.get(l).expect("label map covers the expression");
        match self {
            CwExpr::Vertex { label, name } => CwExpr::Vertex {
                label: m(label),
                name: name.clone(),
            },
            CwExpr::Union(a, b) => CwExpr::union(a.map_labels(map), b.map_labels(map)),
            CwExpr::Relabel { from, to, child } => {
                CwExpr::relabel(m(from), m(to), child.map_labels(map))
            }
            CwExpr::AddEdges { a, b, child } => {
                CwExpr::add_edges(m(a), m(b), child.map_labels(map))
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            CwExpr::Vertex { .. } => 1,
            CwExpr::Union(a, b) => a.leaf_count() + b.leaf_count(),
            CwExpr::Relabel { child, .. } | CwExpr::AddEdges { child, .. } => child.leaf_count(),
        }
    }
}

/// Budget for the exact expression search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CwLimits {
    pub max_n: usize,
    pub max_states: usize,
}

impl CwLimits {
    pub fn default_cw() -> Self {
        CwLimits {
            max_n: 6,
            max_states: 4_000_000,
        }
    }

    pub fn default_lcw() -> Self {
        CwLimits {
            max_n: 7,
            max_states: 4_000_000,
        }
    }
}

/// Exact clique-width with a witness expression evaluating to `g` (leaf
/// names are the decimal vertex ids).
pub fn exact_cw(g: &Graph, k_max: usize, limits: CwLimits) -> Result<(usize, CwExpr), SearchError> {
    exact_expression(g, k_max, limits, false)
}

/// Exact linear clique-width with a linear witness expression.
pub fn exact_lcw(g: &Graph, k_max: usize, limits: CwLimits) -> Result<(usize, CwExpr), SearchError> {
    exact_expression(g, k_max, limits, true)
}

fn exact_expression(
    g: &Graph,
    k_max: usize,
    limits: CwLimits,
    linear: bool,
) -> Result<(usize, CwExpr), SearchError> {
    if g.n() == 0 {
        return Err(SearchError::Invalid(
            crate::trigraph::SequenceError::EmptyGraph,
        ));
    }
    if g.n() > limits.max_n || g.edge_count() > 64 {
        return Err(SearchError::BudgetExceeded {
            n: g.n(),
            max_n: limits.max_n,
            lower_bound: 1,
            upper_bound: g.n(),
        });
    }
    for k in 1..=k_max.min(g.n()) {
        let mut search = ExprSearch::new(g, k, linear, limits.max_states);
        if let Some(goal) = search.run()? {
            let classes = search.infos[goal].classes.len();
            let want: Vec<Label> = (1..=classes as Label).collect();
            let expr = search.reconstruct(goal, &want, k);
            debug_assert!(expr.width() <= k);
            debug_assert!(!linear || expr.is_linear());
            return Ok((k, expr));
        }
    }
    Err(SearchError::BoundExceeded {
        lower_bound: k_max + 1,
    })
}

/// How a search state was produced; `etas` are the add-edges saturations
/// applied right after the structural operation, as class index pairs of the
/// resulting state.
enum Deriv {
    Base {
        v: usize,
    },
    Relabel {
        prev: usize,
        ci: usize,
        cj: usize,
        etas: Vec<(usize, usize)>,
    },
    Union {
        left: usize,
        right: usize,
        etas: Vec<(usize, usize)>,
    },
}

struct StateInfo {
    classes: Vec<u128>,
    deriv: Deriv,
}

/// Reachability search over states (label classes over a vertex subset, set
/// of already-built edges). Two vertices may share a class only with equal
/// neighborhoods outside the covered subset; add-edges is applied eagerly to
/// every class pair that is complete in `g` (the result dominates the
/// unsaturated state); a new state whose built set is contained in that of a
/// known state over the same classes is dropped.
struct ExprSearch<'g> {
    g: &'g Graph,
    k: usize,
    linear: bool,
    max_states: usize,
    full: u128,
    all_edges: u64,
    edge_idx: HashMap<(usize, usize), u32>,
    infos: Vec<StateInfo>,
    fronts: HashMap<Vec<u128>, Vec<u64>>,
    queue: alloc::collections::VecDeque<usize>,
    built_of: Vec<u64>,
    done: Vec<usize>,
    base_ids: Vec<usize>,
    goal: Option<usize>,
}

impl<'g> ExprSearch<'g> {
    fn new(g: &'g Graph, k: usize, linear: bool, max_states: usize) -> Self {
        let mut edge_idx = HashMap::new();
        for (i, (u, v)) in g.edges().enumerate() {
            edge_idx.insert((u, v), i as u32);
        }
        let all_edges = match edge_idx.len() {
            0 => 0,
            64 => u64::MAX,
            len => (1u64 << len) - 1,
        };
        ExprSearch {
            g,
            k,
            linear,
            max_states,
            full: g.full_mask(),
            all_edges,
            edge_idx,
            infos: Vec::new(),
            fronts: HashMap::new(),
            queue: alloc::collections::VecDeque::new(),
            built_of: Vec::new(),
            done: Vec::new(),
            base_ids: Vec::new(),
            goal: None,
        }
    }

    fn outside_row(&self, class: u128, s: u128) -> u128 {
        let rep = class.trailing_zeros() as usize;
        self.g.neighbors_mask(rep) & !s
    }

    fn complete_in_g(&self, a: u128, b: u128) -> bool {
        for u in bits(a) {
            if self.g.neighbors_mask(u) & b != b {
                return false;
            }
        }
        true
    }

    fn edges_between(&self, a: u128, b: u128) -> u64 {
        let mut m = 0u64;
        for u in bits(a) {
            for v in bits(b) {
                if let Some(&i) = self.edge_idx.get(&(u.min(v), u.max(v))) {
                    m |= 1 << i;
                }
            }
        }
        m
    }

    fn saturate(&self, classes: &[u128], built: &mut u64) -> Vec<(usize, usize)> {
        let mut etas = Vec::new();
        for ci in 0..classes.len() {
            for cj in ci + 1..classes.len() {
                if !self.complete_in_g(classes[ci], classes[cj]) {
                    continue;
                }
                let pair = self.edges_between(classes[ci], classes[cj]);
                if pair & !*built != 0 {
                    *built |= pair;
                    etas.push((ci, cj));
                }
            }
        }
        etas
    }

    fn try_insert(
        &mut self,
        mut classes: Vec<u128>,
        mut built: u64,
        make: impl FnOnce(Vec<(usize, usize)>) -> Deriv,
    ) {
        if self.goal.is_some() {
            return;
        }
        classes.sort_unstable_by_key(|m| m.trailing_zeros());
        let etas = self.saturate(&classes, &mut built);
        let s: u128 = classes.iter().fold(0, |a, &m| a | m);
        let is_goal = s == self.full && built == self.all_edges;
        // A state covering all vertices without finishing the edge set is
        // dead: no union can extend it and relabels never add edges.
        if s == self.full && !is_goal {
            return;
        }
        let front = self.fronts.entry(classes.clone()).or_default();
        if front.iter().any(|&b| b & built == built) {
            return;
        }
        front.push(built);
        let id = self.infos.len();
        self.infos.push(StateInfo {
            classes,
            deriv: make(etas),
        });
        self.built_of.push(built);
        if is_goal {
            self.goal = Some(id);
        } else {
            self.queue.push_back(id);
        }
    }

    fn run(&mut self) -> Result<Option<usize>, SearchError> {
        for v in 0..self.g.n() {
            let id = self.infos.len();
            self.base_ids.push(id);
            self.try_insert(vec![1u128 << v], 0, |_| Deriv::Base { v });
            if self.goal.is_some() {
                return Ok(self.goal);
            }
        }
        while let Some(id) = self.queue.pop_front() {
            if self.infos.len() > self.max_states {
                return Err(SearchError::BudgetExceeded {
                    n: self.g.n(),
                    max_n: self.g.n(),
                    lower_bound: 1,
                    upper_bound: self.g.n(),
                });
            }
            self.done.push(id);
            self.expand(id);
            if self.goal.is_some() {
                return Ok(self.goal);
            }
        }
        Ok(None)
    }

    fn expand(&mut self, id: usize) {
        let classes = self.infos[id].classes.clone();
        let built = self.built_of[id];
        let s: u128 = classes.iter().fold(0, |a, &m| a | m);

        // Relabels: merge two classes with identical neighborhoods outside S.
        for ci in 0..classes.len() {
            for cj in ci + 1..classes.len() {
                if self.outside_row(classes[ci], s) != self.outside_row(classes[cj], s) {
                    continue;
                }
                let mut merged: Vec<u128> = Vec::with_capacity(classes.len() - 1);
                for (t, &m) in classes.iter().enumerate() {
                    if t == cj {
                        continue;
                    }
                    merged.push(if t == ci { m | classes[cj] } else { m });
                }
                self.try_insert(merged, built, |etas| Deriv::Relabel {
                    prev: id,
                    ci,
                    cj,
                    etas,
                });
                if self.goal.is_some() {
                    return;
                }
            }
        }

        if self.linear {
            // Extend with one fresh vertex, optionally matched into an
            // existing class.
            for v in 0..self.g.n() {
                let vm = 1u128 << v;
                if s & vm != 0 {
                    continue;
                }
                let right = self.base_ids[v];
                let s2 = s | vm;
                if classes.len() < self.k {
                    let mut cl = classes.clone();
                    cl.push(vm);
                    self.try_insert(cl, built, |etas| Deriv::Union {
                        left: id,
                        right,
                        etas,
                    });
                    if self.goal.is_some() {
                        return;
                    }
                }
                for ci in 0..classes.len() {
                    if self.outside_row(classes[ci], s2) != self.outside_row(vm, s2) {
                        continue;
                    }
                    let mut cl = classes.clone();
                    cl[ci] |= vm;
                    self.try_insert(cl, built, |etas| Deriv::Union {
                        left: id,
                        right,
                        etas,
                    });
                    if self.goal.is_some() {
                        return;
                    }
                }
            }
        } else {
            // General unions with every compatible processed state, under
            // every class matching.
            for di in 0..self.done.len() {
                let other = self.done[di];
                let s2: u128 = self.infos[other].classes.iter().fold(0, |a, &m| a | m);
                if s & s2 != 0 {
                    continue;
                }
                let oclasses = self.infos[other].classes.clone();
                let obuilt = self.built_of[other];
                let mut assignment: Vec<Option<usize>> = vec![None; oclasses.len()];
                self.match_rec(
                    id,
                    other,
                    &classes,
                    &oclasses,
                    built | obuilt,
                    s | s2,
                    0,
                    &mut assignment,
                );
                if self.goal.is_some() {
                    return;
                }
            }
        }
    }

    /// Assigns each right class to an unmatched compatible left class or to
    /// none, then inserts the union state.
    #[allow(clippy::too_many_arguments)]
    fn match_rec(
        &mut self,
        left: usize,
        right: usize,
        lclasses: &[u128],
        rclasses: &[u128],
        built: u64,
        union_s: u128,
        idx: usize,
        assignment: &mut Vec<Option<usize>>,
    ) {
        if self.goal.is_some() {
            return;
        }
        if idx == rclasses.len() {
            let matched = assignment.iter().filter(|a| a.is_some()).count();
            if lclasses.len() + rclasses.len() - matched > self.k {
                return;
            }
            let mut cl: Vec<u128> = lclasses.to_vec();
            for (r, a) in assignment.iter().enumerate() {
                match a {
                    Some(l) => cl[*l] |= rclasses[r],
                    None => cl.push(rclasses[r]),
                }
            }
            self.try_insert(cl, built, |etas| Deriv::Union { left, right, etas });
            return;
        }
        self.match_rec(
            left, right, lclasses, rclasses, built, union_s, idx + 1, assignment,
        );
        let row_r = self.outside_row(rclasses[idx], union_s);
        for l in 0..lclasses.len() {
            if assignment.contains(&Some(l)) {
                continue;
            }
            if self.outside_row(lclasses[l], union_s) != row_r {
                continue;
            }
            assignment[idx] = Some(l);
            self.match_rec(
                left, right, lclasses, rclasses, built, union_s, idx + 1, assignment,
            );
            assignment[idx] = None;
        }
    }

    /// Rebuilds the witness expression for `id`, labelling its classes with
    /// `want` (parallel to the state's canonical class order).
    fn reconstruct(&self, id: usize, want: &[Label], k: usize) -> CwExpr {
        let info = &self.infos[id];
        let class_index = |classes: &[u128], sub: u128| -> usize {
            classes
                .iter()
                .position(|&m| m & sub == sub)
                .expect("classes only ever merge")
        };
        match &info.deriv {
            Deriv::Base { v } => CwExpr::vertex(want[0], Some(v.to_string())),
            Deriv::Relabel { prev, ci, cj, etas } => {
                let pclasses = &self.infos[*prev].classes;
                let mut want_prev: Vec<Label> = vec![0; pclasses.len()];
                for (t, &m) in pclasses.iter().enumerate() {
                    if t != *ci {
                        want_prev[t] = want[class_index(&info.classes, m)];
                    }
                }
                let used: BTreeSet<Label> = want_prev
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| t != ci)
                    .map(|(_, &l)| l)
                    .collect();
                let fresh = (1..=k as Label)
                    .find(|l| !used.contains(l))
                    .expect("at most k classes");
                want_prev[*ci] = fresh;
                let child = self.reconstruct(*prev, &want_prev, k);
                let mut expr = CwExpr::relabel(want_prev[*ci], want_prev[*cj], child);
                for &(a, b) in etas {
                    expr = CwExpr::add_edges(want[a], want[b], expr);
                }
                expr
            }
            Deriv::Union { left, right, etas } => {
                let lc = &self.infos[*left].classes;
                let rc = &self.infos[*right].classes;
                let want_l: Vec<Label> = lc
                    .iter()
                    .map(|&m| want[class_index(&info.classes, m)])
                    .collect();
                let want_r: Vec<Label> = rc
                    .iter()
                    .map(|&m| want[class_index(&info.classes, m)])
                    .collect();
                let mut expr = CwExpr::union(
                    self.reconstruct(*left, &want_l, k),
                    self.reconstruct(*right, &want_r, k),
                );
                for &(a, b) in etas {
                    expr = CwExpr::add_edges(want[a], want[b], expr);
                }
                expr
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_expr() -> CwExpr {
        CwExpr::add_edges(
            1,
            2,
            CwExpr::union(CwExpr::vertex(1, None), CwExpr::vertex(2, None)),
        )
    }

    #[test]
    fn eval_k2() {
        let e = k2_expr();
        let r = e.eval().unwrap();
        assert_eq!(r.graph, Graph::with_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(r.labels, vec![1, 2]);
        assert_eq!(e.width(), 2);
        assert!(e.is_linear());
    }

    #[test]
    fn union_of_two_k2_not_linear() {
        let e = CwExpr::union(k2_expr(), k2_expr());
        assert_eq!(e.width(), 2);
        assert!(!e.is_linear());
        let r = e.eval().unwrap();
        assert_eq!(r.graph, Graph::with_edges(4, &[(0, 1), (2, 3)]).unwrap());
    }

    #[test]
    fn validate_rejects_equal_labels_and_dup_names() {
        let e = CwExpr::relabel(1, 1, CwExpr::vertex(1, None));
        assert!(matches!(e.validate(), Err(ExprError::EqualLabels { .. })));
        let e = CwExpr::union(
            CwExpr::vertex(1, Some("a".into())),
            CwExpr::vertex(2, Some("a".into())),
        );
        assert!(matches!(e.validate(), Err(ExprError::DuplicateName(_))));
    }

    #[test]
    fn add_edges_is_idempotent() {
        let e = CwExpr::add_edges(1, 2, k2_expr());
        let r = e.eval().unwrap();
        assert_eq!(r.graph.edge_count(), 1);
    }

    #[test]
    fn live_labels_track_relabels() {
        let e = CwExpr::relabel(1, 3, k2_expr());
        assert_eq!(e.live_labels(), BTreeSet::from([2, 3]));
        // width counts every label mentioned, dead or not
        assert_eq!(e.width(), 3);
    }

    #[test]
    fn numeric_ids_roundtrip() {
        let e = CwExpr::add_edges(
            1,
            2,
            CwExpr::union(
                CwExpr::vertex(1, Some("1".into())),
                CwExpr::vertex(2, Some("0".into())),
            ),
        );
        let r = e.eval().unwrap();
        assert_eq!(r.numeric_ids(), Some(vec![1, 0]));
        assert_eq!(
            r.graph_on_named_ids(),
            Graph::with_edges(2, &[(0, 1)]).unwrap()
        );
    }

    #[test]
    fn exact_cw_small_values() {
        let lim = CwLimits::default_cw();
        let (k, e) = exact_cw(&Graph::new(1).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 1);
        assert_eq!(e.eval().unwrap().graph.n(), 1);
        // edgeless graphs have width 1
        let (k, _) = exact_cw(&Graph::new(4).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 1);
        // cographs with an edge sit at exactly 2
        let (k, e) = exact_cw(&Graph::complete(4).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 2);
        assert_eq!(
            e.eval().unwrap().graph_on_named_ids(),
            Graph::complete(4).unwrap()
        );
        // P4 is the smallest non-cograph; its clique-width is 3
        let (k, e) = exact_cw(&Graph::path(4).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 3);
        assert_eq!(
            e.eval().unwrap().graph_on_named_ids(),
            Graph::path(4).unwrap()
        );
    }

    #[test]
    fn exact_lcw_small_values() {
        let lim = CwLimits::default_lcw();
        let (k, _) = exact_lcw(&Graph::new(1).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 1);
        let (k, e) = exact_lcw(&Graph::path(4).unwrap(), 4, lim).unwrap();
        assert_eq!(k, 3);
        assert!(e.is_linear());
        assert_eq!(
            e.eval().unwrap().graph_on_named_ids(),
            Graph::path(4).unwrap()
        );
        for seed in 0..12u64 {
            let g = crate::graph::generate(&crate::graph::GenKind::Random { n: 5, p: 0.5 }, seed)
                .unwrap();
            let (cw, _) = exact_cw(&g, 5, CwLimits::default_cw()).unwrap();
            let (lcw, _) = exact_lcw(&g, 5, lim).unwrap();
            assert!(cw <= lcw, "cw {cw} > lcw {lcw} on {g:?}");
        }
    }

    #[test]
    fn k_max_insufficient_reports_lower_bound() {
        match exact_cw(&Graph::path(4).unwrap(), 2, CwLimits::default_cw()) {
            Err(SearchError::BoundExceeded { lower_bound: 3 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn witnesses_eval_back_to_input() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
        for _ in 0..15 {
            let n = rng.gen_range(1..=5);
            let p = rng.gen_range(0.0..=1.0);
            let g =
                crate::graph::generate(&crate::graph::GenKind::Random { n, p }, rng.gen()).unwrap();
            let (k, e) = exact_cw(&g, 6, CwLimits::default_cw()).unwrap();
            assert_eq!(e.eval().unwrap().graph_on_named_ids(), g);
            assert!(e.width() <= k);
            let (lk, le) = exact_lcw(&g, 6, CwLimits::default_lcw()).unwrap();
            assert!(le.is_linear());
            assert_eq!(le.eval().unwrap().graph_on_named_ids(), g);
            assert!(k <= lk);
        }
    }
}
