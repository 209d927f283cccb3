//! Verification suites: replay of the bound chain between the width
//! parameters on a generated corpus, oracle equivalence of the counters,
//! and golden fixtures. Shared by the `verify` subcommand and the
//! acceptance tests.

// comparisons below keep the bound formulas' shape
#![allow(clippy::int_plus_one)]

use twwkit_core::cwexpr::{exact_cw, exact_lcw, CwLimits};
use twwkit_core::graph::Graph;
use twwkit_core::homcount::{
    brute_count, count_g_side, count_g_side_with_stats, count_h_side, count_h_side_with_stats,
    HomBudget,
};
use twwkit_core::rankwidth::{exact_lrw, exact_rw, RwLimits};
use twwkit_core::transform::{
    branch_to_seq, expr_to_branch, expr_to_seq, max_union_left_labels, seq_to_expr,
    seq_to_linexpr, unions_add_fresh_labels, TransformError,
};
use twwkit_core::trigraph::{exact_width, ContractionSequence, WidthKind, WidthLimits};

use crate::corpus;
use crate::formats;

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Repro artifacts for a failing check: (file name, content).
    pub artifacts: Vec<(String, String)>,
}

pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new() -> Self {
        SuiteReport { checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Tracks one bound family across the corpus: the first violation wins and
/// carries a repro artifact.
struct Family {
    name: &'static str,
    tested: usize,
    failure: Option<(String, Vec<(String, String)>)>,
}

impl Family {
    fn new(name: &'static str) -> Self {
        Family {
            name,
            tested: 0,
            failure: None,
        }
    }

    fn record(&mut self, instance: &str, g: &Graph, ok: bool, detail: String) {
        self.tested += 1;
        if !ok && self.failure.is_none() {
            let slug: String = instance
                .chars()
                .map(|c| if c.is_alphanumeric() { c } else { '_' })
                .collect();
            self.failure = Some((
                format!("{instance}: {detail}"),
                vec![(
                    format!("fail_{}_{slug}.gr", self.name),
                    formats::serialize_graph(g),
                )],
            ));
        }
    }

    fn into_check(self) -> Check {
        match self.failure {
            None => Check {
                name: self.name.to_string(),
                pass: true,
                detail: format!("{} instances", self.tested),
                artifacts: vec![],
            },
            Some((detail, artifacts)) => Check {
                name: self.name.to_string(),
                pass: false,
                detail,
                artifacts,
            },
        }
    }
}

fn ctww_limits() -> WidthLimits {
    WidthLimits::default_for(WidthKind::Ctww)
}

/// Exact widths and the constructive conversions, checked against the
/// proved bound chain on the full corpus: the clique-width chain on graphs
/// with up to 6 vertices, the rank-width chain up to `min(max_n, 7)`, and
/// the point values for the 7-cycle, cographs, and distance-hereditary
/// graphs.
pub fn run_bounds(max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new();
    let corpus = corpus::bounds_corpus(max_n, seed);

    let mut thm_cw = Family::new("thm_cw_vs_ctww");
    let mut f_seq_expr = Family::new("seq_to_expr_bound");
    let mut f_claim_left = Family::new("claim_union_left_labels");
    let mut f_expr_seq = Family::new("expr_to_seq_bound");
    let mut f_linear = Family::new("linear_chain");
    let mut f_quad = Family::new("vertex_edge_quadratic");
    let mut f_linexpr = Family::new("seq_to_linexpr_bound");
    let mut f_claim_fresh = Family::new("claim_fresh_vertex_labels");
    let mut f_rw = Family::new("rw_chain");
    let mut f_branch = Family::new("branch_to_seq_bound");
    let mut f_rows = Family::new("identical_rows_found");
    let mut f_lrw = Family::new("lrw_chain");
    let mut f_cw_lcw = Family::new("cw_le_lcw");
    let mut f_union_tree = Family::new("expr_to_branch_bound");
    let mut f_tww0 = Family::new("tww_zero_iff_cograph");

    for (name, g) in &corpus {
        let n = g.n();
        if n > 7 {
            continue;
        }
        let (ctww, ctww_seq) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 7");
        let (tww, _) =
            exact_width(g, WidthKind::Tww, WidthLimits::default_for(WidthKind::Tww))
                .expect("n <= 7");
        f_tww0.record(
            name,
            g,
            (tww == 0) == g.is_cograph() && ctww >= 1,
            format!("tww={tww} cograph={}", g.is_cograph()),
        );

        if n <= 6 {
            let (cw, cw_expr) = exact_cw(g, n.max(1), CwLimits::default_cw()).expect("n <= 6");
            thm_cw.record(
                name,
                g,
                cw <= ctww + 1 && ctww + 1 <= 2 * cw,
                format!("cw={cw} ctww={ctww}"),
            );

            match seq_to_expr(g, &ctww_seq) {
                Err(e) => f_seq_expr.record(name, g, false, format!("conversion failed: {e}")),
                Ok(e) => {
                    let ok = e.width() <= ctww + 1
                        && e.eval().map(|ev| ev.graph_on_named_ids() == *g).unwrap_or(false);
                    f_seq_expr.record(name, g, ok, format!("width={} ctww={ctww}", e.width()));
                    f_claim_left.record(
                        name,
                        g,
                        max_union_left_labels(&e) <= ctww.max(1),
                        format!("left labels {} vs ctww {ctww}", max_union_left_labels(&e)),
                    );
                    // The union tree read as a branch decomposition stays
                    // within the sequence's component twin-width.
                    match expr_to_branch(&e) {
                        Err(err) => f_union_tree.record(name, g, false, format!("{err}")),
                        Ok(dec) => f_union_tree.record(
                            name,
                            g,
                            dec.width(g) <= ctww,
                            format!("union-tree width {} vs ctww {ctww}", dec.width(g)),
                        ),
                    }
                    match expr_to_seq(g, &e) {
                        Err(err) => f_expr_seq.record(name, g, false, format!("{err}")),
                        Ok(back) => f_expr_seq.record(
                            name,
                            g,
                            back.width(WidthKind::Ctww) <= 2 * (ctww + 1) - 1,
                            format!(
                                "round-trip ctww {} vs 2(ctww+1)-1={}",
                                back.width(WidthKind::Ctww),
                                2 * (ctww + 1) - 1
                            ),
                        ),
                    }
                }
            }
            match expr_to_seq(g, &cw_expr) {
                Err(e) => f_expr_seq.record(name, g, false, format!("{e}")),
                Ok(seq) => f_expr_seq.record(
                    name,
                    g,
                    seq.width(WidthKind::Ctww) <= 2 * cw - 1,
                    format!("ctww {} vs 2cw-1={}", seq.width(WidthKind::Ctww), 2 * cw - 1),
                ),
            }

            let (lcw, _) = exact_lcw(g, n.max(1), CwLimits::default_lcw()).expect("n <= 6");
            f_cw_lcw.record(name, g, cw <= lcw, format!("cw={cw} lcw={lcw}"));
            let tv_lim = WidthLimits::default_for(WidthKind::Tvtww);
            let (tvtww, tvtww_seq) = exact_width(g, WidthKind::Tvtww, tv_lim).expect("n <= 6");
            let (ttww, _) =
                exact_width(g, WidthKind::Ttww, WidthLimits::default_for(WidthKind::Ttww))
                    .expect("n <= 6");
            f_linear.record(
                name,
                g,
                lcw.saturating_sub(1) <= tvtww && tvtww <= lcw,
                format!("lcw={lcw} tvtww={tvtww}"),
            );
            f_quad.record(
                name,
                g,
                tvtww <= 2 * ttww && 2 * ttww <= tvtww * (tvtww + 1),
                format!("tvtww={tvtww} ttww={ttww}"),
            );

            match seq_to_linexpr(g, &tvtww_seq) {
                Err(e) => f_linexpr.record(name, g, false, format!("{e}")),
                Ok(le) => {
                    let ok = le.is_linear()
                        && le.width() <= tvtww + 1
                        && le.eval().map(|ev| ev.graph_on_named_ids() == *g).unwrap_or(false);
                    f_linexpr.record(name, g, ok, format!("width={} tvtww={tvtww}", le.width()));
                    f_claim_fresh.record(
                        name,
                        g,
                        unions_add_fresh_labels(&le),
                        "fresh-label claim".to_string(),
                    );
                    match expr_to_seq(g, &le) {
                        Err(err) => f_linexpr.record(name, g, false, format!("{err}")),
                        Ok(back) => f_linexpr.record(
                            name,
                            g,
                            back.width(WidthKind::Ctww) <= le.width()
                                && back.width(WidthKind::Tvtww) <= le.width(),
                            format!(
                                "linear round-trip ctww={} tvtww={} width={}",
                                back.width(WidthKind::Ctww),
                                back.width(WidthKind::Tvtww),
                                le.width()
                            ),
                        ),
                    }
                }
            }

            let (lrw, _) = exact_lrw(g, RwLimits::default_lrw()).expect("n <= 6");
            f_lrw.record(
                name,
                g,
                lrw <= tvtww && tvtww <= (1 << (lrw + 1)) - 1,
                format!("lrw={lrw} tvtww={tvtww}"),
            );
        }

        // Rank-width chain up to n = 7.
        let (rw, rw_witness) = exact_rw(g, RwLimits::default_rw()).expect("n <= 7");
        f_rw.record(
            name,
            g,
            rw <= ctww && ctww <= (1 << (rw + 1)) - 1,
            format!("rw={rw} ctww={ctww}"),
        );
        match branch_to_seq(g, &rw_witness, rw) {
            Err(TransformError::NoIdenticalRows) => {
                f_rows.record(name, g, false, "identical-row search failed".to_string());
            }
            Err(e) => f_branch.record(name, g, false, format!("{e}")),
            Ok(seq) => {
                f_rows.record(name, g, true, String::new());
                f_branch.record(
                    name,
                    g,
                    seq.width(WidthKind::Ctww) <= (1 << (rw + 1)) - 1,
                    format!(
                        "ctww {} vs 2^(r+1)-1={}",
                        seq.width(WidthKind::Ctww),
                        (1usize << (rw + 1)) - 1
                    ),
                );
            }
        }
    }

    // Point values.
    let c7 = Graph::cycle(7).expect("C7");
    let (c7_ctww, _) = exact_width(&c7, WidthKind::Ctww, ctww_limits()).expect("n = 7");
    let c7_cw = exact_cw(&c7, 7, CwLimits { max_n: 7, ..CwLimits::default_cw() })
        .map(|(k, _)| k)
        .expect("C7 fits the widened budget");
    report.checks.push(Check {
        name: "c7_point_values".into(),
        pass: c7_ctww == 3 && c7_cw == 4,
        detail: format!("ctww(C7)={c7_ctww} (expect 3), cw(C7)={c7_cw} (expect 4)"),
        artifacts: vec![],
    });

    let mut cog = Family::new("cograph_ctww_1");
    for (i, g) in corpus::cograph_batch(50, 8, seed).iter().enumerate() {
        let (v, _) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 8");
        cog.record(&format!("cograph#{i}"), g, v == 1, format!("ctww={v}"));
    }
    report.checks.push(cog.into_check());

    let mut dh = Family::new("dh_ctww_le_3");
    for (i, g) in corpus::distance_hereditary_batch(50, 8, seed).iter().enumerate() {
        let (v, _) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 8");
        dh.record(&format!("dh#{i}"), g, v <= 3, format!("ctww={v}"));
    }
    report.checks.push(dh.into_check());

    for f in [
        thm_cw, f_seq_expr, f_claim_left, f_expr_seq, f_linear, f_quad, f_linexpr, f_claim_fresh,
        f_rw, f_branch, f_rows, f_lrw, f_cw_lcw, f_union_tree, f_tww0,
    ] {
        report.checks.push(f.into_check());
    }
    report
}

/// Oracle equivalence of the counters and their complexity accounting.
pub fn run_oracle(max_n: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new();
    let budget = HomBudget::default();

    // Input-side counter vs brute force, with an optimal sequence of g.
    let mut f_g = Family::new("oracle_g_side");
    let g_pairs = corpus::hom_pairs(max_n.min(6), 4, 200, seed);
    for (name, g, h) in &g_pairs {
        let (_, seq) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 6");
        let dp = count_g_side(g, &seq, h, &budget).expect("within budget");
        let brute = brute_count(g, h, &budget).expect("within budget");
        f_g.record(name, g, dp == brute, format!("dp={dp} brute={brute}"));
    }
    report.checks.push(f_g.into_check());

    // Template-side counter vs brute force, with an optimal sequence of h.
    let mut f_h = Family::new("oracle_h_side");
    let h_pairs = corpus::hom_pairs(max_n.min(5), 4, 200, seed.wrapping_add(17));
    for (name, g, h) in &h_pairs {
        let (_, seq) = exact_width(h, WidthKind::Ctww, ctww_limits()).expect("n <= 4");
        let dp = count_h_side(g, h, &seq, &budget).expect("within budget");
        let brute = brute_count(g, h, &budget).expect("within budget");
        f_h.record(name, g, dp == brute, format!("dp={dp} brute={brute}"));
    }
    report.checks.push(f_h.into_check());

    // Enumeration accounting on 20 pairs: the template-side counter visits
    // exactly (|C|+2)^n assignments per merge, the input-side counter never
    // exceeds (2^m - 1)^(|C|+1) families.
    let mut f_acc = Family::new("counter_instrumentation");
    for (name, g, h) in g_pairs.iter().take(20) {
        let (_, gseq) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 6");
        let (_, hseq) = exact_width(h, WidthKind::Ctww, ctww_limits()).expect("n <= 4");
        let (_, gstats) = count_g_side_with_stats(g, &gseq, h, &budget).expect("within budget");
        let m = h.n() as u32;
        let g_ok = gstats.merges.iter().all(|ms| {
            ms.family_product <= ((1u128 << m) - 1).pow(ms.component_size as u32 + 1)
        });
        let (_, hstats) = count_h_side_with_stats(g, h, &hseq, &budget).expect("within budget");
        let h_ok = hstats.merges.iter().all(|ms| {
            ms.assignments_enumerated == ((ms.component_size + 2) as u128).pow(g.n() as u32)
        });
        f_acc.record(name, g, g_ok && h_ok, "enumeration accounting".to_string());
    }
    report.checks.push(f_acc.into_check());

    // All three algorithms agree.
    let mut f_all = Family::new("algorithms_agree");
    for (name, g, h) in g_pairs.iter().take(50) {
        let (_, gseq) = exact_width(g, WidthKind::Ctww, ctww_limits()).expect("n <= 6");
        let (_, hseq) = exact_width(h, WidthKind::Ctww, ctww_limits()).expect("n <= 4");
        let brute = brute_count(g, h, &budget).expect("within budget");
        let dpg = count_g_side(g, &gseq, h, &budget).expect("within budget");
        let dph = count_h_side(g, h, &hseq, &budget).expect("within budget");
        f_all.record(
            name,
            g,
            brute == dpg && brute == dph,
            format!("brute={brute} dpg={dpg} dph={dph}"),
        );
    }
    report.checks.push(f_all.into_check());

    // The 7-cycle as a template: its walkthrough sequence has component
    // twin-width 3, so the template-side counter runs on base ctww + 2 = 5.
    let mut f_c7t = Family::new("c7_template_oracle");
    let c7 = Graph::cycle(7).expect("C7");
    let (c7_ctww, c7_seq) = exact_width(&c7, WidthKind::Ctww, ctww_limits()).expect("n = 7");
    let wide_brute = HomBudget {
        max_brute_template: 7,
        ..HomBudget::default()
    };
    for (name, g, _) in corpus::hom_pairs(5, 4, 50, seed.wrapping_add(5)) {
        let dp = count_h_side(&g, &c7, &c7_seq, &budget).expect("within budget");
        let brute = brute_count(&g, &c7, &wide_brute).expect("within budget");
        f_c7t.record(
            &name,
            &g,
            dp == brute && c7_ctww == 3,
            format!("dp={dp} brute={brute}"),
        );
    }
    report.checks.push(f_c7t.into_check());

    // Exact big-integer arithmetic beyond 64 bits.
    let e25 = Graph::new(25).expect("25 isolated vertices");
    let k6 = Graph::complete(6).expect("K6");
    let big = brute_count(&e25, &k6, &budget).expect("isolated vertices only");
    report.checks.push(Check {
        name: "big_integer_count".into(),
        pass: big.to_decimal() == "28430288029929701376",
        detail: format!("6^25 = {big}"),
        artifacts: vec![],
    });

    report
}

/// Frozen fixtures: the 7-cycle walkthrough sequence with its seven
/// trigraphs, a 7-vertex conversion demo, and a 10-vertex expression demo.
pub fn run_golden() -> SuiteReport {
    let mut report = SuiteReport::new();

    let c7_text = include_str!("../fixtures/c7.gr");
    let seq_text = include_str!("../fixtures/c7.cs");
    let c7 = formats::parse_graph(c7_text).expect("fixture parses");
    let mut pass = c7 == Graph::cycle(7).expect("C7");
    let mut detail = String::new();

    let seq = formats::parse_sequence(seq_text, &c7).expect("fixture parses");
    let trigraphs = seq.replay();

    // Expected (parts, black pairs, red pairs, loop parts) per step, parts
    // listed by their minimum vertex.
    #[allow(clippy::type_complexity)]
    let expected: [(Vec<Vec<usize>>, Vec<(usize, usize)>, Vec<(usize, usize)>, Vec<usize>); 7] = [
        (
            vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5], vec![6]],
            vec![(0, 1), (0, 6), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)],
            vec![],
            vec![],
        ),
        (
            vec![vec![0, 1], vec![2], vec![3], vec![4], vec![5], vec![6]],
            vec![(1, 2), (2, 3), (3, 4), (4, 5)],
            vec![(0, 1), (0, 5)],
            vec![0],
        ),
        (
            vec![vec![0, 1, 2], vec![3], vec![4], vec![5], vec![6]],
            vec![(1, 2), (2, 3), (3, 4)],
            vec![(0, 1), (0, 4)],
            vec![0],
        ),
        (
            vec![vec![0, 1, 2, 3], vec![4], vec![5], vec![6]],
            vec![(1, 2), (2, 3)],
            vec![(0, 1), (0, 3)],
            vec![0],
        ),
        (
            vec![vec![0, 1, 2, 3, 4], vec![5], vec![6]],
            vec![(1, 2)],
            vec![(0, 1), (0, 2)],
            vec![0],
        ),
        (
            vec![vec![0, 1, 2, 3, 4, 5], vec![6]],
            vec![],
            vec![(0, 1)],
            vec![0],
        ),
        (vec![vec![0, 1, 2, 3, 4, 5, 6]], vec![], vec![], vec![0]),
    ];

    if trigraphs.len() != expected.len() {
        pass = false;
        detail = format!("expected 7 trigraphs, got {}", trigraphs.len());
    } else {
        for (i, (t, (parts, black, red, loops))) in trigraphs.iter().zip(&expected).enumerate() {
            let got_parts: Vec<Vec<usize>> = t
                .parts()
                .iter()
                .map(|&m| twwkit_core::graph::bits(m).collect())
                .collect();
            let got_loops: Vec<usize> =
                (0..t.part_count()).filter(|&i| t.has_red_loop(i)).collect();
            let mut sorted_black = t.black_edges();
            sorted_black.sort_unstable();
            let mut sorted_red = t.red_edges();
            sorted_red.sort_unstable();
            if got_parts != *parts
                || sorted_black != *black
                || sorted_red != *red
                || got_loops != *loops
            {
                pass = false;
                detail = format!("trigraph {i} differs: {t:?}");
                break;
            }
        }
    }
    let tww = seq.width(WidthKind::Tww);
    let ctww = seq.width(WidthKind::Ctww);
    if tww != 2 || ctww != 3 {
        pass = false;
        detail = format!("sequence widths tww={tww} ctww={ctww}, expected 2 and 3");
    }
    report.checks.push(Check {
        name: "golden_c7_replay".into(),
        pass,
        detail: if detail.is_empty() {
            "7 trigraphs match, tww=2, ctww=3".into()
        } else {
            detail
        },
        artifacts: vec![],
    });

    // 7-vertex conversion demo: a dense graph whose walkthrough sequence has
    // component twin-width 3, converted to a 4-label expression.
    let demo_g = formats::parse_graph(include_str!("../fixtures/demo7.gr")).expect("fixture");
    let demo_seq =
        formats::parse_sequence(include_str!("../fixtures/demo7.cs"), &demo_g).expect("fixture");
    let demo_ok = demo_seq.width(WidthKind::Ctww) == 3
        && match seq_to_expr(&demo_g, &demo_seq) {
            Ok(e) => {
                e.width() <= 4 && e.eval().map(|ev| ev.graph_on_named_ids() == demo_g).unwrap_or(false)
            }
            Err(_) => false,
        };
    report.checks.push(Check {
        name: "golden_demo7".into(),
        pass: demo_ok,
        detail: format!("walkthrough ctww={}", demo_seq.width(WidthKind::Ctww)),
        artifacts: vec![],
    });

    // 10-vertex expression demo: a 3-label expression collapsed into a
    // sequence of component twin-width at most 5.
    let expr = formats::parse_expr(include_str!("../fixtures/demo10.expr")).expect("fixture");
    let ev = expr.eval().expect("fixture evaluates");
    let demo10_g = ev.graph_on_named_ids();
    let demo10_ok = expr.width() == 3
        && demo10_g.n() == 10
        && match expr_to_seq(&demo10_g, &expr) {
            Ok(seq) => seq.width(WidthKind::Ctww) <= 2 * 3 - 1,
            Err(_) => false,
        };
    report.checks.push(Check {
        name: "golden_demo10".into(),
        pass: demo10_ok,
        detail: format!("width={} vertices={}", expr.width(), demo10_g.n()),
        artifacts: vec![],
    });

    report
}

/// Convenience wrapper used by tests: an optimal ctww sequence.
pub fn optimal_ctww_sequence(g: &Graph) -> ContractionSequence {
    exact_width(g, WidthKind::Ctww, ctww_limits()).expect("within budget").1
}
