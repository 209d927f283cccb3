//! Exact #H-coloring: a brute-force oracle, a DP over a contraction
//! sequence of the input graph (profiles are exact image sets per part of a
//! red component), and a DP over a contraction sequence of the template
//! (profiles assign input vertices to parts of a template component, with
//! containment semantics).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigUint;

use crate::graph::{bits, Graph};
use crate::trigraph::{ContractionSequence, SequenceError, Trigraph};

/// Unbounded nonnegative count with a machine-word fast path; values promote
/// to big integers on overflow and only ever hold a `Big` above `u64::MAX`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Small(u64),
    Big(BigUint),
}

impl Count {
    pub fn zero() -> Self {
        Count::Small(0)
    }

    pub fn one() -> Self {
        Count::Small(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Count::Small(0))
    }

    fn normalize(b: BigUint) -> Count {
        match u64::try_from(&b) {
            Ok(v) => Count::Small(v),
            Err(_) => Count::Big(b),
        }
    }

    fn to_big(&self) -> BigUint {
        match self {
            Count::Small(v) => BigUint::from(*v),
            Count::Big(b) => b.clone(),
        }
    }

    pub fn add_assign(&mut self, other: &Count) {
        match (&mut *self, other) {
            (Count::Small(a), Count::Small(b)) => match a.checked_add(*b) {
                Some(s) => *a = s,
                None => *self = Count::Big(BigUint::from(*a) + BigUint::from(*b)),
            },
            _ => *self = Count::normalize(self.to_big() + other.to_big()),
        }
    }

    pub fn mul(&self, other: &Count) -> Count {
        match (self, other) {
            (Count::Small(a), Count::Small(b)) => match a.checked_mul(*b) {
                Some(p) => Count::Small(p),
                None => Count::Big(BigUint::from(*a) * BigUint::from(*b)),
            },
            _ => Count::normalize(self.to_big() * other.to_big()),
        }
    }

    /// `base^exp` as an exact count.
    pub fn power(base: u64, exp: u32) -> Count {
        Count::normalize(BigUint::from(base).pow(exp))
    }

    pub fn to_decimal(&self) -> String {
        alloc::format!("{self}")
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count::Small(v)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Small(v) => write!(f, "{v}"),
            Count::Big(b) => write!(f, "{b}"),
        }
    }
}

/// Budgets for the counters. Brute force enumerates only vertices of degree
/// at least one (isolated vertices contribute a `|V_H|^k` factor directly),
/// so its caps apply to that enumerated set; `max_steps` caps the per-merge
/// enumeration of the two DP counters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomBudget {
    pub max_brute_vertices: usize,
    pub max_brute_template: usize,
    pub max_steps: u128,
}

impl Default for HomBudget {
    fn default() -> Self {
        HomBudget {
            max_brute_vertices: 8,
            max_brute_template: 6,
            max_steps: 200_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomError {
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    TemplateTooLarge {
        m: usize,
        max: usize,
    },
    BaseMismatch,
    Sequence(SequenceError),
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::BudgetExceeded { what, needed, limit } => {
                write!(f, "{what} needs {needed} steps, budget is {limit}")
            }
            HomError::TemplateTooLarge { m, max } => {
                write!(f, "template has {m} vertices, profile masks support {max}")
            }
            HomError::BaseMismatch => write!(f, "sequence was built for a different graph"),
            HomError::Sequence(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HomError {}

/// Exact number of homomorphisms from `g` to `h` by backtracking over the
/// vertices of positive degree, times `|V_H|^isolated`.
pub fn brute_count(g: &Graph, h: &Graph, budget: &HomBudget) -> Result<Count, HomError> {
    let active: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    let isolated = g.n() - active.len();
    let m = h.n();
    if active.len() > budget.max_brute_vertices {
        return Err(HomError::BudgetExceeded {
            what: "brute-force enumeration",
            needed: active.len() as u128,
            limit: budget.max_brute_vertices as u128,
        });
    }
    if m > budget.max_brute_template && !active.is_empty() {
        return Err(HomError::BudgetExceeded {
            what: "brute-force template",
            needed: m as u128,
            limit: budget.max_brute_template as u128,
        });
    }
    if m == 0 {
        return Ok(if g.n() == 0 { Count::one() } else { Count::zero() });
    }
    let mut assigned: Vec<usize> = vec![usize::MAX; g.n()];
    let mut total = Count::zero();
    brute_rec(g, h, &active, 0, &mut assigned, &mut total);
    Ok(total.mul(&Count::power(m as u64, isolated as u32)))
}

fn brute_rec(
    g: &Graph,
    h: &Graph,
    active: &[usize],
    idx: usize,
    assigned: &mut Vec<usize>,
    total: &mut Count,
) {
    if idx == active.len() {
        total.add_assign(&Count::one());
        return;
    }
    let u = active[idx];
    'images: for w in 0..h.n() {
        for x in g.neighbors(u) {
            if assigned[x] != usize::MAX && !h.has_edge(assigned[x], w) {
                continue 'images;
            }
        }
        assigned[u] = w;
        brute_rec(g, h, active, idx + 1, assigned, total);
        assigned[u] = usize::MAX;
    }
}

fn brute_exists(g: &Graph, h: &Graph, budget: &HomBudget) -> Result<bool, HomError> {
    let active: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 0).collect();
    if active.len() > budget.max_brute_vertices {
        return Err(HomError::BudgetExceeded {
            what: "brute-force enumeration",
            needed: active.len() as u128,
            limit: budget.max_brute_vertices as u128,
        });
    }
    if h.n() == 0 {
        return Ok(g.n() == 0);
    }
    fn rec(g: &Graph, h: &Graph, active: &[usize], idx: usize, assigned: &mut Vec<usize>) -> bool {
        if idx == active.len() {
            return true;
        }
        let u = active[idx];
        'images: for w in 0..h.n() {
            for x in g.neighbors(u) {
                if assigned[x] != usize::MAX && !h.has_edge(assigned[x], w) {
                    continue 'images;
                }
            }
            assigned[u] = w;
            if rec(g, h, active, idx + 1, assigned) {
                return true;
            }
            assigned[u] = usize::MAX;
        }
        false
    }
    let mut assigned = vec![usize::MAX; g.n()];
    Ok(rec(g, h, &active, 0, &mut assigned))
}

/// Structure of one contraction step: the new red component, the part pair
/// that merged, and the previous trigraph's components it absorbed.
struct MergeStructure {
    /// Parts of the new component, sorted by minimum vertex.
    c_parts: Vec<u128>,
    merged: u128,
    part_u: u128,
    part_v: u128,
    /// Absorbed components of the previous trigraph; each part list sorted,
    /// components ordered by their smallest vertex.
    subs: Vec<Vec<u128>>,
}

fn merge_structure(prev: &Trigraph, cur: &Trigraph, u: usize, v: usize) -> MergeStructure {
    let part_u = prev.part(prev.part_containing(u).expect("valid merge"));
    let part_v = prev.part(prev.part_containing(v).expect("valid merge"));
    let merged = part_u | part_v;
    let mi = cur
        .parts()
        .iter()
        .position(|&m| m == merged)
        .expect("merged part exists");
    let comp = cur
        .red_components()
        .into_iter()
        .find(|c| c.contains(&mi))
        .expect("every part sits in a component");
    let mut c_parts: Vec<u128> = comp.iter().map(|&i| cur.part(i)).collect();
    c_parts.sort_unstable_by_key(|m| m.trailing_zeros());

    let wanted: u128 = c_parts.iter().fold(0, |a, &m| a | m);
    let mut subs: Vec<Vec<u128>> = prev
        .red_components()
        .into_iter()
        .map(|c| {
            let mut ms: Vec<u128> = c.iter().map(|&i| prev.part(i)).collect();
            ms.sort_unstable_by_key(|m| m.trailing_zeros());
            ms
        })
        .filter(|ms| ms.iter().any(|&m| m & wanted != 0))
        .collect();
    subs.sort_unstable_by_key(|ms| ms[0].trailing_zeros());
    debug_assert_eq!(
        subs.iter().flat_map(|ms| ms.iter()).fold(0u128, |a, &m| a | m),
        wanted,
        "absorbed components cover the new component exactly"
    );
    MergeStructure {
        c_parts,
        merged,
        part_u,
        part_v,
        subs,
    }
}

/// Per-merge instrumentation of the input-side counter.
#[derive(Debug, Clone, Default)]
pub struct GSideStats {
    pub merges: Vec<GSideMergeStats>,
}

#[derive(Debug, Clone)]
pub struct GSideMergeStats {
    /// Size of the rebuilt red component.
    pub component_size: usize,
    /// Vertices of the input graph covered by the component.
    pub component_union: u128,
    /// Nonzero entry counts of the absorbed sub-tables.
    pub sub_table_sizes: Vec<usize>,
    /// Product of the sub-table sizes: the family count enumerated before
    /// any pruning.
    pub family_product: u128,
    /// Families that survived the feasibility test.
    pub feasible_families: u64,
    /// Sum of the rebuilt table: the profiles partition the colorings of the
    /// component's induced subgraph, so this equals their total count.
    pub table_total: Count,
}

/// #H-coloring by DP over a contraction sequence of `g`: per red component,
/// tables map exact-image profiles (one nonempty subset of `V_H` per part)
/// to counts. Sound for any valid sequence of `g`.
pub fn count_g_side(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
    budget: &HomBudget,
) -> Result<Count, HomError> {
    count_g_side_with_stats(g, seq, h, budget).map(|(c, _)| c)
}

pub fn count_g_side_with_stats(
    g: &Graph,
    seq: &ContractionSequence,
    h: &Graph,
    budget: &HomBudget,
) -> Result<(Count, GSideStats), HomError> {
    if seq.base() != g {
        return Err(HomError::BaseMismatch);
    }
    let m = h.n();
    if m > 64 {
        return Err(HomError::TemplateTooLarge { m, max: 64 });
    }
    if g.n() == 0 {
        return Ok((Count::one(), GSideStats::default()));
    }
    if m == 0 {
        return Ok((Count::zero(), GSideStats::default()));
    }
    if g.n() == 1 {
        // Degenerate single-vertex input: every image works.
        return Ok((Count::from(m as u64), GSideStats::default()));
    }
    let hadj: Vec<u64> = (0..m).map(|w| h.neighbors_mask(w) as u64).collect();

    type Table = HashMap<Vec<u64>, Count>;
    let mut tables: HashMap<Vec<u128>, Table> = HashMap::new();
    for u in 0..g.n() {
        let mut t = Table::new();
        for w in 0..m {
            t.insert(vec![1u64 << w], Count::one());
        }
        tables.insert(vec![1u128 << u], t);
    }

    let mut stats = GSideStats::default();
    let trigraphs = seq.replay();
    for (step, window) in trigraphs.windows(2).enumerate() {
        let (u, v) = seq.merges()[step];
        let st = merge_structure(&window[0], &window[1], u, v);
        let prev = &window[0];

        // Materialize the absorbed sub-tables.
        let sub_entries: Vec<Vec<(Vec<u64>, Count)>> = st
            .subs
            .iter()
            .map(|key| {
                tables
                    .remove(key)
                    .expect("tables track live components")
                    .into_iter()
                    .collect()
            })
            .collect();

        let family_product: u128 = sub_entries
            .iter()
            .map(|t| t.len() as u128)
            .try_fold(1u128, u128::checked_mul)
            .unwrap_or(u128::MAX);
        if family_product > budget.max_steps {
            return Err(HomError::BudgetExceeded {
                what: "input-side profile enumeration",
                needed: family_product,
                limit: budget.max_steps,
            });
        }

        // Where each part of the new component lives: (sub index, position
        // within that sub's sorted parts).
        let locate = |mask: u128| -> (usize, usize) {
            for (j, ms) in st.subs.iter().enumerate() {
                if let Some(pos) = ms.iter().position(|&x| x == mask) {
                    return (j, pos);
                }
            }
            unreachable!("part of an absorbed component")
        };
        let all_parts: Vec<u128> = st
            .subs
            .iter()
            .flat_map(|ms| ms.iter().copied())
            .collect();

        // Cross-component black pairs, grouped by the later sub index so the
        // odometer can prune as soon as both sides are fixed.
        let mut pairs_at: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); st.subs.len()];
        for i in 0..all_parts.len() {
            for j in i + 1..all_parts.len() {
                let (ja, ia) = locate(all_parts[i]);
                let (jb, ib) = locate(all_parts[j]);
                if ja == jb {
                    continue;
                }
                let a = prev
                    .parts()
                    .iter()
                    .position(|&x| x == all_parts[i])
                    .expect("part of prev");
                let b = prev
                    .parts()
                    .iter()
                    .position(|&x| x == all_parts[j])
                    .expect("part of prev");
                if prev.has_black(a, b) {
                    pairs_at[ja.max(jb)].push((ja, ia, jb, ib));
                }
            }
        }

        let (uj, up) = locate(st.part_u);
        let (vj, vp) = locate(st.part_v);
        let c_pos: Vec<(u128, usize)> = st
            .c_parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();

        let mut new_table = Table::new();
        let mut feasible: u64 = 0;
        let mut chosen: Vec<usize> = vec![0; sub_entries.len()];
        enumerate_g_families(&sub_entries, &pairs_at, &hadj, 0, &mut chosen, &mut |chosen| {
            feasible += 1;
            let mut profile: Vec<u64> = vec![0; st.c_parts.len()];
            for &(part, pos) in &c_pos {
                profile[pos] = if part == st.merged {
                    sub_entries[uj][chosen[uj]].0[up] | sub_entries[vj][chosen[vj]].0[vp]
                } else {
                    let (j, p) = locate(part);
                    sub_entries[j][chosen[j]].0[p]
                };
            }
            let mut product = Count::one();
            for (j, t) in sub_entries.iter().enumerate() {
                product = product.mul(&t[chosen[j]].1);
            }
            new_table
                .entry(profile)
                .or_insert_with(Count::zero)
                .add_assign(&product);
        });

        let mut table_total = Count::zero();
        for c in new_table.values() {
            table_total.add_assign(c);
        }
        stats.merges.push(GSideMergeStats {
            component_size: st.c_parts.len(),
            component_union: st.c_parts.iter().fold(0, |a, &m| a | m),
            sub_table_sizes: sub_entries.iter().map(|t| t.len()).collect(),
            family_product,
            feasible_families: feasible,
            table_total,
        });
        tables.insert(st.c_parts.clone(), new_table);
    }

    let final_table = tables
        .remove(&vec![g.full_mask()])
        .expect("replay ends in one full component");
    let mut total = Count::zero();
    for count in final_table.values() {
        total.add_assign(count);
    }
    Ok((total, stats))
}

/// Walks the product of nonzero sub-table entries; prunes as soon as a fixed
/// prefix violates a cross-component black-edge constraint.
fn enumerate_g_families(
    sub_entries: &[Vec<(Vec<u64>, Count)>],
    pairs_at: &[Vec<(usize, usize, usize, usize)>],
    hadj: &[u64],
    level: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if level == sub_entries.len() {
        emit(chosen);
        return;
    }
    'entries: for e in 0..sub_entries[level].len() {
        chosen[level] = e;
        for &(ja, ia, jb, ib) in &pairs_at[level] {
            let ma = sub_entries[ja][chosen[ja]].0[ia];
            let mb = sub_entries[jb][chosen[jb]].0[ib];
            if !fully_adjacent(hadj, ma, mb) {
                continue 'entries;
            }
        }
        enumerate_g_families(sub_entries, pairs_at, hadj, level + 1, chosen, emit);
    }
}

/// Every pair in `ma x mb` is an edge of the template.
fn fully_adjacent(hadj: &[u64], ma: u64, mb: u64) -> bool {
    let mut rest = ma;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if hadj[a] & mb != mb {
            return false;
        }
    }
    true
}

/// Per-merge instrumentation of the template-side counter.
#[derive(Debug, Clone, Default)]
pub struct HSideStats {
    pub merges: Vec<HSideMergeStats>,
}

#[derive(Debug, Clone)]
pub struct HSideMergeStats {
    /// Size of the rebuilt red component of the template.
    pub component_size: usize,
    /// Assignments enumerated before pruning: always
    /// `(component_size + 2)^|V_G|`.
    pub assignments_enumerated: u128,
    pub feasible_assignments: u64,
}

/// #H-coloring by DP over a contraction sequence of the template `h`:
/// tables map assignments of input vertices to the parts of a template red
/// component (or to unassigned) to counts of partial colorings with
/// containment semantics.
pub fn count_h_side(
    g: &Graph,
    h: &Graph,
    seq_h: &ContractionSequence,
    budget: &HomBudget,
) -> Result<Count, HomError> {
    count_h_side_with_stats(g, h, seq_h, budget).map(|(c, _)| c)
}

const UNASSIGNED: u8 = u8::MAX;

pub fn count_h_side_with_stats(
    g: &Graph,
    h: &Graph,
    seq_h: &ContractionSequence,
    budget: &HomBudget,
) -> Result<(Count, HSideStats), HomError> {
    if seq_h.base() != h {
        return Err(HomError::BaseMismatch);
    }
    let n = g.n();
    let m = h.n();
    if n == 0 {
        return Ok((Count::one(), HSideStats::default()));
    }
    if m == 1 {
        // Degenerate single-vertex template: everything maps to it, which
        // works exactly when the input has no edges.
        let c = if g.edge_count() == 0 {
            Count::one()
        } else {
            Count::zero()
        };
        return Ok((c, HSideStats::default()));
    }

    let init_steps = (m as u128).saturating_mul(1u128 << n.min(127));
    if n > 32 || init_steps > budget.max_steps {
        return Err(HomError::BudgetExceeded {
            what: "template-side base tables",
            needed: init_steps,
            limit: budget.max_steps,
        });
    }

    // Base tables: a subset of input vertices fits on one template vertex
    // exactly when it is independent.
    type Table = HashMap<Vec<u8>, Count>;
    let independent: Vec<bool> = {
        let mut ind = vec![true; 1usize << n];
        for mask in 1..(1usize << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            ind[mask] = ind[rest] && (g.neighbors_mask(low) as usize & rest) == 0;
        }
        ind
    };
    let mut tables: HashMap<Vec<u128>, Table> = HashMap::new();
    for w in 0..m {
        let mut t = Table::new();
        for (mask, &ok) in independent.iter().enumerate() {
            if ok {
                let mut key = vec![UNASSIGNED; n];
                for u in bits(mask as u128) {
                    key[u] = 0;
                }
                t.insert(key, Count::one());
            }
        }
        tables.insert(vec![1u128 << w], t);
    }

    let g_edges: Vec<(usize, usize)> = g.edges().collect();
    let mut stats = HSideStats::default();
    let trigraphs = seq_h.replay();
    for (step, window) in trigraphs.windows(2).enumerate() {
        let (u, v) = seq_h.merges()[step];
        let st = merge_structure(&window[0], &window[1], u, v);
        let prev = &window[0];
        let p = st.c_parts.len();

        // Alphabet: the p+1 absorbed parts plus "unassigned".
        let all_parts: Vec<u128> = st
            .subs
            .iter()
            .flat_map(|ms| ms.iter().copied())
            .collect();
        let p1 = all_parts.len();
        debug_assert_eq!(p1, p + 1);
        let steps = (p1 as u128 + 1).pow(n as u32);
        if steps > budget.max_steps {
            return Err(HomError::BudgetExceeded {
                what: "template-side assignment enumeration",
                needed: steps,
                limit: budget.max_steps,
            });
        }

        let locate = |mask: u128| -> (usize, usize) {
            for (j, ms) in st.subs.iter().enumerate() {
                if let Some(pos) = ms.iter().position(|&x| x == mask) {
                    return (j, pos);
                }
            }
            unreachable!("part of an absorbed component")
        };
        let part_sub: Vec<(usize, usize)> = all_parts.iter().map(|&x| locate(x)).collect();
        let prev_idx: Vec<usize> = all_parts
            .iter()
            .map(|&x| {
                prev.parts()
                    .iter()
                    .position(|&y| y == x)
                    .expect("part of prev")
            })
            .collect();
        // Black-adjacency between the absorbed parts in the old trigraph.
        let black: Vec<Vec<bool>> = (0..p1)
            .map(|i| {
                (0..p1)
                    .map(|j| prev.has_black(prev_idx[i], prev_idx[j]))
                    .collect()
            })
            .collect();

        let sub_tables: Vec<Table> = st
            .subs
            .iter()
            .map(|key| tables.remove(key).expect("tables track live components"))
            .collect();

        // Alphabet letter -> part index in the merged component.
        let merged_pos: Vec<u8> = all_parts
            .iter()
            .map(|&x| {
                let target = if x == st.part_u || x == st.part_v {
                    st.merged
                } else {
                    x
                };
                st.c_parts
                    .iter()
                    .position(|&y| y == target)
                    .expect("every letter lands in the component") as u8
            })
            .collect();

        let mut new_table = Table::new();
        let mut counter: u128 = 0;
        let mut feasible: u64 = 0;

        // Odometer over all (p+2)^n assignments of input vertices to the
        // p+1 parts or to unassigned (digit value p1).
        let mut digits = vec![0u8; n];
        loop {
            counter += 1;
            if let Some(product) =
                h_side_combine(&digits, p1 as u8, &sub_tables, &part_sub, &black, &g_edges, n)
            {
                feasible += 1;
                let mut key = vec![UNASSIGNED; n];
                for (u, &d) in digits.iter().enumerate() {
                    if d < p1 as u8 {
                        key[u] = merged_pos[d as usize];
                    }
                }
                new_table
                    .entry(key)
                    .or_insert_with(Count::zero)
                    .add_assign(&product);
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                if digits[pos] < p1 as u8 {
                    digits[pos] += 1;
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        debug_assert_eq!(counter, steps);

        stats.merges.push(HSideMergeStats {
            component_size: p,
            assignments_enumerated: counter,
            feasible_assignments: feasible,
        });
        tables.insert(st.c_parts.clone(), new_table);
    }

    let final_table = tables
        .remove(&vec![h.full_mask()])
        .expect("replay ends in one full component");
    let all_assigned = vec![0u8; n];
    let total = final_table
        .get(&all_assigned)
        .cloned()
        .unwrap_or_else(Count::zero);
    Ok((total, stats))
}

/// Looks up the per-sub-component restrictions of an assignment, checks the
/// cross-component feasibility (every input edge spanning two absorbed
/// components needs a black template edge), and returns the product of the
/// sub-counts. `None` marks an infeasible or zero-count assignment.
fn h_side_combine(
    assignment: &[u8],
    p1: u8,
    sub_tables: &[HashMap<Vec<u8>, Count>],
    part_sub: &[(usize, usize)],
    black: &[Vec<bool>],
    g_edges: &[(usize, usize)],
    n: usize,
) -> Option<Count> {
    for &(x, y) in g_edges {
        let (ax, ay) = (assignment[x], assignment[y]);
        if ax >= p1 || ay >= p1 {
            continue;
        }
        let (jx, _) = part_sub[ax as usize];
        let (jy, _) = part_sub[ay as usize];
        if jx != jy && !black[ax as usize][ay as usize] {
            return None;
        }
    }
    let mut product = Count::one();
    let mut key = vec![UNASSIGNED; n];
    for (j, table) in sub_tables.iter().enumerate() {
        for slot in key.iter_mut() {
            *slot = UNASSIGNED;
        }
        for (u, &a) in assignment.iter().enumerate() {
            if a < p1 {
                let (ja, pos) = part_sub[a as usize];
                if ja == j {
                    key[u] = pos as u8;
                }
            }
        }
        let sub = table.get(&key)?;
        if sub.is_zero() {
            return None;
        }
        product = product.mul(sub);
    }
    Some(product)
}

/// Strategy for the existence wrapper.
pub enum HomStrategy<'a> {
    Brute,
    GSide(&'a ContractionSequence),
    HSide(&'a ContractionSequence),
}

/// True iff at least one homomorphism from `g` to `h` exists. The brute
/// strategy stops at the first witness.
pub fn exists_hom(
    g: &Graph,
    h: &Graph,
    strategy: HomStrategy<'_>,
    budget: &HomBudget,
) -> Result<bool, HomError> {
    match strategy {
        HomStrategy::Brute => brute_exists(g, h, budget),
        HomStrategy::GSide(seq) => Ok(!count_g_side(g, seq, h, budget)?.is_zero()),
        HomStrategy::HSide(seq) => Ok(!count_h_side(g, h, seq, budget)?.is_zero()),
    }
}
