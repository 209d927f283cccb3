//! Command-line front end: graph generation, exact width computation,
//! certificate validation and conversion, homomorphism counting, and the
//! verification suites. Reports are `key=value` lines; exit codes are
//! 0 success, 1 usage, 2 parse error, 3 invalid certificate, 4 budget
//! exceeded, 5 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use twwkit::formats::{self, BranchInput};
use twwkit::report::{digest, RunReport};
use twwkit::suites;
use twwkit_core::cwexpr::{exact_cw, exact_lcw, CwExpr, CwLimits};
use twwkit_core::graph::{generate, GenKind, Graph};
use twwkit_core::homcount::{
    brute_count, count_g_side_with_stats, count_h_side_with_stats, Count, GSideStats, HSideStats,
    HomBudget, HomError,
};
use twwkit_core::rankwidth::{exact_lrw, exact_rw, order_to_linear_decomposition, RwLimits};
use twwkit_core::transform::{
    branch_to_seq, expr_to_branch, expr_to_seq, seq_to_expr, seq_to_linexpr, TransformError,
};
use twwkit_core::trigraph::{exact_width, ContractionSequence, SearchError, WidthKind, WidthLimits};

#[derive(Parser)]
#[command(name = "twwkit", version, about = "Width parameters, certificates, and #H-coloring for small graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated graph to a file.
    Gen(GenArgs),
    /// Compute a width parameter exactly or evaluate a certificate.
    Width(WidthArgs),
    /// Convert between certificate kinds.
    Convert(ConvertArgs),
    /// Count homomorphisms from a graph into a template.
    Count(CountArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// cycle, path, complete, complete_bipartite, empty, random, cograph,
    /// distance_hereditary, or grid
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: Option<usize>,
    /// first side of a complete bipartite graph
    #[arg(long)]
    a: Option<usize>,
    /// second side of a complete bipartite graph
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// edge probability for the random kind
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Param {
    Tww,
    Ctww,
    Ttww,
    Tvtww,
    Cw,
    Lcw,
    Rw,
    Lrw,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::Tww => "tww",
            Param::Ctww => "ctww",
            Param::Ttww => "ttww",
            Param::Tvtww => "tvtww",
            Param::Cw => "cw",
            Param::Lcw => "lcw",
            Param::Rw => "rw",
            Param::Lrw => "lrw",
        }
    }
}

#[derive(Args)]
struct WidthArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    param: Param,
    /// run the exhaustive search
    #[arg(long)]
    exact: bool,
    /// evaluate this certificate instead of searching
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// write the optimal witness here
    #[arg(long)]
    emit_certificate: Option<PathBuf>,
    /// override the exhaustive-search budget
    #[arg(long)]
    max_n: Option<usize>,
    /// largest expression width to try for cw/lcw (default: n)
    #[arg(long)]
    k_max: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CertKind {
    Seq,
    Expr,
    Linexpr,
    Branch,
}

#[derive(Args)]
struct ConvertArgs {
    /// the graph both certificates describe
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    from: CertKind,
    #[arg(long, value_enum)]
    to: CertKind,
    /// input certificate file
    #[arg(long)]
    cert: PathBuf,
    /// output certificate file
    #[arg(long)]
    out: PathBuf,
    /// claimed rank bound for branch-to-sequence conversion (default: the
    /// decomposition's actual width)
    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Brute,
    Dpg,
    Dph,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    template: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// contraction sequence of the input graph (for dpg)
    #[arg(long)]
    g_seq: Option<PathBuf>,
    /// contraction sequence of the template (for dph)
    #[arg(long)]
    h_seq: Option<PathBuf>,
    /// emit enumeration statistics
    #[arg(long)]
    stats: bool,
    #[arg(long)]
    max_steps: Option<u128>,
    #[arg(long)]
    max_brute_vertices: Option<usize>,
    #[arg(long)]
    max_brute_template: Option<usize>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bounds,
    Oracle,
    Golden,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// where failing repro artifacts get written
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

enum CliError {
    Usage(String),
    Parse(String),
    Cert(String),
    Budget(String),
    Verify(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Cert(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Verify(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Parse(m)
            | CliError::Cert(m)
            | CliError::Budget(m)
            | CliError::Verify(m) => m,
        }
    }
}

fn search_to_cli(e: SearchError) -> CliError {
    match e {
        SearchError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        SearchError::BoundExceeded { .. } => CliError::Budget(e.to_string()),
        SearchError::Invalid(err) => CliError::Parse(err.to_string()),
    }
}

fn hom_to_cli(e: HomError) -> CliError {
    match e {
        HomError::BudgetExceeded { .. } | HomError::TemplateTooLarge { .. } => {
            CliError::Budget(e.to_string())
        }
        HomError::BaseMismatch | HomError::Sequence(_) => CliError::Cert(e.to_string()),
    }
}

/// Soft wall-clock budget from TWWKIT_BUDGET_MS, checked between work items.
struct Deadline {
    start: Instant,
    limit: Option<Duration>,
}

impl Deadline {
    fn from_env() -> Self {
        let limit = std::env::var("TWWKIT_BUDGET_MS")
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .map(Duration::from_millis);
        Deadline {
            start: Instant::now(),
            limit,
        }
    }

    fn check(&self) -> Result<(), CliError> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(CliError::Budget(format!(
                "soft time budget of {} ms exceeded",
                limit.as_millis()
            ))),
            _ => Ok(()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content)
        .map_err(|e| CliError::Parse(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path, report: &mut RunReport) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    report.push("input", path.display());
    report.push("input_digest", digest(text.as_bytes()));
    formats::parse_graph(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output is not an error
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let deadline = Deadline::from_env();
    let result = match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Width(args) => cmd_width(args, &deadline),
        Cmd::Convert(args) => cmd_convert(args),
        Cmd::Count(args) => cmd_count(args, &deadline),
        Cmd::Verify(args) => cmd_verify(args, &deadline),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let need = |opt: Option<usize>, what: &str| {
        opt.ok_or_else(|| CliError::Usage(format!("--{what} is required for this kind")))
    };
    let kind = match args.kind.as_str() {
        "cycle" => GenKind::Cycle { n: need(args.n, "n")? },
        "path" => GenKind::Path { n: need(args.n, "n")? },
        "complete" => GenKind::Complete { n: need(args.n, "n")? },
        "complete_bipartite" => GenKind::CompleteBipartite {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
        },
        "empty" => GenKind::Empty { n: need(args.n, "n")? },
        "random" => GenKind::Random {
            n: need(args.n, "n")?,
            p: args.p.ok_or_else(|| CliError::Usage("--p is required for random".into()))?,
        },
        "cograph" => GenKind::Cograph { n: need(args.n, "n")? },
        "distance_hereditary" => GenKind::DistanceHereditary { n: need(args.n, "n")? },
        "grid" => GenKind::Grid {
            rows: need(args.rows, "rows")?,
            cols: need(args.cols, "cols")?,
        },
        other => return Err(CliError::Usage(format!("unknown kind {other:?}"))),
    };
    let g = generate(&kind, args.seed).map_err(|e| CliError::Parse(e.to_string()))?;
    let text = formats::serialize_graph(&g);
    write_file(&args.out, &text)?;
    let mut report = RunReport::new("gen");
    report.push("kind", kind.name());
    report.push("seed", args.seed);
    report.push("n", g.n());
    report.push("edges", g.edge_count());
    report.push("out", args.out.display());
    report.push("out_digest", digest(text.as_bytes()));
    report.print();
    Ok(())
}

fn cmd_width(args: WidthArgs, deadline: &Deadline) -> Result<(), CliError> {
    if args.exact == args.certificate.is_some() {
        return Err(CliError::Usage(
            "exactly one of --exact or --certificate must be given".into(),
        ));
    }
    let mut report = RunReport::new("width");
    let g = load_graph(&args.input, &mut report)?;
    report.push("param", args.param.name());
    deadline.check()?;

    let seq_kind = |p: Param| match p {
        Param::Tww => Some(WidthKind::Tww),
        Param::Ctww => Some(WidthKind::Ctww),
        Param::Ttww => Some(WidthKind::Ttww),
        Param::Tvtww => Some(WidthKind::Tvtww),
        _ => None,
    };

    if args.exact {
        report.push("mode", "exact");
        let (value, certificate): (usize, String) = match args.param {
            Param::Tww | Param::Ctww | Param::Ttww | Param::Tvtww => {
                let kind = seq_kind(args.param).expect("sequence-family parameter");
                let mut limits = WidthLimits::default_for(kind);
                if let Some(m) = args.max_n {
                    limits.max_n = m;
                }
                let (v, w) = exact_width(&g, kind, limits).map_err(search_to_cli)?;
                (v, formats::serialize_sequence(&w))
            }
            Param::Cw | Param::Lcw => {
                let mut limits = if args.param == Param::Cw {
                    CwLimits::default_cw()
                } else {
                    CwLimits::default_lcw()
                };
                if let Some(m) = args.max_n {
                    limits.max_n = m;
                }
                let k_max = args.k_max.unwrap_or(g.n().max(1));
                let (v, w) = if args.param == Param::Cw {
                    exact_cw(&g, k_max, limits).map_err(search_to_cli)?
                } else {
                    exact_lcw(&g, k_max, limits).map_err(search_to_cli)?
                };
                (v, formats::serialize_expr(&w) + "\n")
            }
            Param::Rw => {
                let mut limits = RwLimits::default_rw();
                if let Some(m) = args.max_n {
                    limits.max_n = m;
                }
                let (v, w) = exact_rw(&g, limits).map_err(search_to_cli)?;
                (v, formats::serialize_branch(&w))
            }
            Param::Lrw => {
                let mut limits = RwLimits::default_lrw();
                if let Some(m) = args.max_n {
                    limits.max_n = m;
                }
                let (v, w) = exact_lrw(&g, limits).map_err(search_to_cli)?;
                (v, formats::serialize_order(&w))
            }
        };
        report.push("value", value);
        if let Some(path) = &args.emit_certificate {
            write_file(path, &certificate)?;
            report.push("certificate", path.display());
        }
        report.print();
        return Ok(());
    }

    let cert_path = args.certificate.expect("checked above");
    let text = read_file(&cert_path)?;
    report.push("mode", "certificate");
    report.push("certificate", cert_path.display());
    report.push("certificate_digest", digest(text.as_bytes()));
    let value = match args.param {
        Param::Tww | Param::Ctww | Param::Ttww | Param::Tvtww => {
            let kind = seq_kind(args.param).expect("sequence-family parameter");
            let merges = formats::parse_merges(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            let seq = ContractionSequence::new(g.clone(), merges)
                .map_err(|e| CliError::Cert(e.to_string()))?;
            seq.width(kind)
        }
        Param::Cw | Param::Lcw => {
            let expr = parse_expr_cert(&text)?;
            if args.param == Param::Lcw && !expr.is_linear() {
                return Err(CliError::Cert("expression is not linear".into()));
            }
            let ev = expr.eval().map_err(|e| CliError::Cert(e.to_string()))?;
            if ev.graph_on_named_ids() != g {
                return Err(CliError::Cert(
                    "expression does not evaluate to the input graph".into(),
                ));
            }
            expr.width()
        }
        Param::Rw => {
            let dec = branch_cert(&text, &g)?;
            dec.width(&g)
        }
        Param::Lrw => {
            let input =
                formats::parse_branch_input(&text).map_err(|e| CliError::Parse(e.to_string()))?;
            match input {
                BranchInput::Order(order) => {
                    let dec = order_to_linear_decomposition(&order, g.n())
                        .map_err(|e| CliError::Cert(e.to_string()))?;
                    dec.width(&g)
                }
                BranchInput::Tree(_) => {
                    return Err(CliError::Cert(
                        "a linear decomposition certificate must be a vertex order".into(),
                    ))
                }
            }
        }
    };
    report.push("value", value);
    report.print();
    Ok(())
}

fn parse_expr_cert(text: &str) -> Result<CwExpr, CliError> {
    formats::parse_expr(text).map_err(|e| CliError::Parse(e.to_string()))
}

fn branch_cert(text: &str, g: &Graph) -> Result<twwkit_core::rankwidth::BranchDecomposition, CliError> {
    let input = formats::parse_branch_input(text).map_err(|e| CliError::Parse(e.to_string()))?;
    match input {
        BranchInput::Order(order) => order_to_linear_decomposition(&order, g.n())
            .map_err(|e| CliError::Cert(e.to_string())),
        BranchInput::Tree(tree) => twwkit_core::rankwidth::BranchDecomposition::new(tree, g.n())
            .map_err(|e| CliError::Cert(e.to_string())),
    }
}

fn transform_to_cli(e: TransformError) -> CliError {
    match e {
        TransformError::ExprMismatch
        | TransformError::WidthExceedsRank { .. }
        | TransformError::NoIdenticalRows
        | TransformError::Sequence(_)
        | TransformError::Decomposition(_)
        | TransformError::Expr(_) => CliError::Cert(e.to_string()),
        TransformError::InvariantViolated(_) => CliError::Cert(e.to_string()),
    }
}

#[allow(clippy::int_plus_one)] // reported bounds keep their formula shape
fn cmd_convert(args: ConvertArgs) -> Result<(), CliError> {
    let mut report = RunReport::new("convert");
    let g = load_graph(&args.input, &mut report)?;
    let text = read_file(&args.cert)?;
    report.push("cert", args.cert.display());
    report.push("cert_digest", digest(text.as_bytes()));
    report.push("from", kind_name(args.from));
    report.push("to", kind_name(args.to));

    let load_seq = |text: &str| -> Result<ContractionSequence, CliError> {
        let merges = formats::parse_merges(text).map_err(|e| CliError::Parse(e.to_string()))?;
        ContractionSequence::new(g.clone(), merges).map_err(|e| CliError::Cert(e.to_string()))
    };

    // Emitted expressions are re-evaluated against the input graph, so both
    // sides of a conversion leave validated.
    let check_eval = |expr: &CwExpr| -> Result<(), CliError> {
        let ev = expr.eval().map_err(|e| CliError::Cert(e.to_string()))?;
        if ev.graph_on_named_ids() != g {
            return Err(CliError::Cert(
                "converted expression does not evaluate to the input graph".into(),
            ));
        }
        Ok(())
    };

    let out_text = match (args.from, args.to) {
        (CertKind::Seq, CertKind::Expr) => {
            let seq = load_seq(&text)?;
            let kappa = seq.width(WidthKind::Ctww);
            let expr = seq_to_expr(&g, &seq).map_err(transform_to_cli)?;
            check_eval(&expr)?;
            report.push("input_ctww", kappa);
            report.push("achieved_width", expr.width());
            report.push("bound_width", kappa + 1);
            report.push("bound_ok", expr.width() <= kappa + 1);
            formats::serialize_expr(&expr) + "\n"
        }
        (CertKind::Seq, CertKind::Linexpr) => {
            let seq = load_seq(&text)?;
            let kappa = seq.width(WidthKind::Tvtww);
            let expr = seq_to_linexpr(&g, &seq).map_err(transform_to_cli)?;
            check_eval(&expr)?;
            if !expr.is_linear() {
                return Err(CliError::Cert("converted expression is not linear".into()));
            }
            report.push("input_tvtww", kappa);
            report.push("achieved_width", expr.width());
            report.push("bound_width", kappa + 1);
            report.push("bound_ok", expr.width() <= kappa + 1);
            formats::serialize_expr(&expr) + "\n"
        }
        (CertKind::Expr, CertKind::Seq) | (CertKind::Linexpr, CertKind::Seq) => {
            let expr = parse_expr_cert(&text)?;
            if args.from == CertKind::Linexpr && !expr.is_linear() {
                return Err(CliError::Cert("expression is not linear".into()));
            }
            let w = expr.width();
            let seq = expr_to_seq(&g, &expr).map_err(transform_to_cli)?;
            let achieved = seq.width(WidthKind::Ctww);
            report.push("input_width", w);
            report.push("achieved_ctww", achieved);
            if expr.is_linear() {
                report.push("achieved_tvtww", seq.width(WidthKind::Tvtww));
                report.push("bound_ctww", w);
                report.push("bound_ok", achieved <= w && seq.width(WidthKind::Tvtww) <= w);
            } else {
                report.push("bound_ctww", 2 * w - 1);
                report.push("bound_ok", achieved <= 2 * w - 1);
            }
            formats::serialize_sequence(&seq)
        }
        (CertKind::Expr, CertKind::Branch) | (CertKind::Linexpr, CertKind::Branch) => {
            let expr = parse_expr_cert(&text)?;
            let ev = expr.eval().map_err(|e| CliError::Cert(e.to_string()))?;
            if ev.graph_on_named_ids() != g {
                return Err(CliError::Cert(
                    "expression does not evaluate to the input graph".into(),
                ));
            }
            let dec = expr_to_branch(&expr).map_err(transform_to_cli)?;
            report.push("input_width", expr.width());
            report.push("achieved_width", dec.width(&g));
            formats::serialize_branch(&dec)
        }
        (CertKind::Branch, CertKind::Seq) => {
            let dec = branch_cert(&text, &g)?;
            let width = dec.width(&g);
            let rank = args.rank.unwrap_or(width);
            let seq = branch_to_seq(&g, &dec, rank).map_err(transform_to_cli)?;
            let achieved = seq.width(WidthKind::Ctww);
            let bound = 1usize
                .checked_shl(rank as u32 + 1)
                .map(|v| v - 1)
                .unwrap_or(usize::MAX);
            report.push("rank", rank);
            report.push("achieved_ctww", achieved);
            report.push("bound_ctww", bound);
            report.push("bound_ok", achieved <= bound);
            formats::serialize_sequence(&seq)
        }
        (from, to) => {
            return Err(CliError::Usage(format!(
                "unsupported conversion {} -> {}",
                kind_name(from),
                kind_name(to)
            )))
        }
    };
    write_file(&args.out, &out_text)?;
    report.push("out", args.out.display());
    report.push("out_digest", digest(out_text.as_bytes()));
    report.print();
    Ok(())
}

fn kind_name(k: CertKind) -> &'static str {
    match k {
        CertKind::Seq => "seq",
        CertKind::Expr => "expr",
        CertKind::Linexpr => "linexpr",
        CertKind::Branch => "branch",
    }
}

fn cmd_count(args: CountArgs, deadline: &Deadline) -> Result<(), CliError> {
    let mut report = RunReport::new("count");
    let g = {
        let text = read_file(&args.graph)?;
        report.push("graph", args.graph.display());
        report.push("graph_digest", digest(text.as_bytes()));
        formats::parse_graph(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", args.graph.display())))?
    };
    let h = {
        let text = read_file(&args.template)?;
        report.push("template", args.template.display());
        report.push("template_digest", digest(text.as_bytes()));
        formats::parse_graph(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", args.template.display())))?
    };
    let mut budget = HomBudget::default();
    if let Some(v) = args.max_steps {
        budget.max_steps = v;
    }
    if let Some(v) = args.max_brute_vertices {
        budget.max_brute_vertices = v;
    }
    if let Some(v) = args.max_brute_template {
        budget.max_brute_template = v;
    }
    deadline.check()?;

    let load_seq = |path: &Path, base: &Graph| -> Result<ContractionSequence, CliError> {
        let text = read_file(path)?;
        let merges = formats::parse_merges(&text).map_err(|e| CliError::Parse(e.to_string()))?;
        ContractionSequence::new(base.clone(), merges).map_err(|e| CliError::Cert(e.to_string()))
    };
    let ctww_witness = |x: &Graph| -> Result<ContractionSequence, SearchError> {
        exact_width(x, WidthKind::Ctww, WidthLimits::default_for(WidthKind::Ctww)).map(|(_, s)| s)
    };

    enum Plan {
        Brute,
        Dpg(ContractionSequence),
        Dph(ContractionSequence),
    }
    let plan = match args.algo {
        Algo::Brute => Plan::Brute,
        Algo::Dpg => Plan::Dpg(match &args.g_seq {
            Some(p) => load_seq(p, &g)?,
            None => ctww_witness(&g).map_err(search_to_cli)?,
        }),
        Algo::Dph => Plan::Dph(match &args.h_seq {
            Some(p) => load_seq(p, &h)?,
            None => ctww_witness(&h).map_err(search_to_cli)?,
        }),
        Algo::Auto => {
            if let Some(p) = &args.g_seq {
                Plan::Dpg(load_seq(p, &g)?)
            } else if let Ok(seq) = ctww_witness(&g) {
                Plan::Dpg(seq)
            } else if let Some(p) = &args.h_seq {
                Plan::Dph(load_seq(p, &h)?)
            } else if let Ok(seq) = ctww_witness(&h) {
                Plan::Dph(seq)
            } else {
                Plan::Brute
            }
        }
    };

    let count: Count = match plan {
        Plan::Brute => {
            report.push("algo", "brute");
            brute_count(&g, &h, &budget).map_err(hom_to_cli)?
        }
        Plan::Dpg(seq) => {
            report.push("algo", "dpg");
            report.push("g_seq_ctww", seq.width(WidthKind::Ctww));
            let (c, stats) = count_g_side_with_stats(&g, &seq, &h, &budget).map_err(hom_to_cli)?;
            if args.stats {
                push_g_stats(&mut report, &stats);
            }
            c
        }
        Plan::Dph(seq) => {
            report.push("algo", "dph");
            report.push("h_seq_ctww", seq.width(WidthKind::Ctww));
            let (c, stats) = count_h_side_with_stats(&g, &h, &seq, &budget).map_err(hom_to_cli)?;
            if args.stats {
                push_h_stats(&mut report, &stats);
            }
            c
        }
    };
    report.push("count", count.to_decimal());
    report.print();
    Ok(())
}

fn push_g_stats(report: &mut RunReport, stats: &GSideStats) {
    report.push("stats_merges", stats.merges.len());
    let families: u128 = stats.merges.iter().map(|m| m.family_product).sum();
    let feasible: u64 = stats.merges.iter().map(|m| m.feasible_families).sum();
    let max_comp = stats.merges.iter().map(|m| m.component_size).max().unwrap_or(0);
    report.push("stats_families_total", families);
    report.push("stats_families_feasible", feasible);
    report.push("stats_max_component", max_comp);
    let max_table = stats
        .merges
        .iter()
        .flat_map(|m| m.sub_table_sizes.iter().copied())
        .max()
        .unwrap_or(0);
    report.push("stats_max_table", max_table);
}

fn push_h_stats(report: &mut RunReport, stats: &HSideStats) {
    report.push("stats_merges", stats.merges.len());
    let assignments: u128 = stats.merges.iter().map(|m| m.assignments_enumerated).sum();
    let feasible: u64 = stats.merges.iter().map(|m| m.feasible_assignments).sum();
    let max_comp = stats.merges.iter().map(|m| m.component_size).max().unwrap_or(0);
    report.push("stats_assignments_total", assignments);
    report.push("stats_assignments_feasible", feasible);
    report.push("stats_max_component", max_comp);
}

fn cmd_verify(args: VerifyArgs, deadline: &Deadline) -> Result<(), CliError> {
    let mut report = RunReport::new("verify");
    let suite_name = match args.suite {
        Suite::Bounds => "bounds",
        Suite::Oracle => "oracle",
        Suite::Golden => "golden",
    };
    report.push("suite", suite_name);
    report.push("max_n", args.max_n);
    report.push("seed", args.seed);
    deadline.check()?;
    let suite = match args.suite {
        Suite::Bounds => suites::run_bounds(args.max_n, args.seed),
        Suite::Oracle => suites::run_oracle(args.max_n, args.seed),
        Suite::Golden => suites::run_golden(),
    };
    let mut failures = Vec::new();
    for check in &suite.checks {
        report.push(
            &format!("check_{}", check.name),
            if check.pass { "pass" } else { "fail" },
        );
        report.push(&format!("detail_{}", check.name), &check.detail);
        if !check.pass {
            for (file, content) in &check.artifacts {
                let path = args.out_dir.join(file);
                write_file(&path, content)?;
                report.push("artifact", path.display());
            }
            failures.push(check.name.clone());
        }
    }
    let ok = failures.is_empty();
    report.push("result", if ok { "pass" } else { "fail" });
    report.print();
    if ok {
        Ok(())
    } else {
        Err(CliError::Verify(format!(
            "suite {suite_name} failed: {}",
            failures.join(", ")
        )))
    }
}
