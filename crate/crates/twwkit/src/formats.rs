//! Text formats for the four artifact kinds: graphs, contraction sequences,
//! k-expressions, and branch decompositions. All formats are line-oriented
//! or token-based, with `#` starting a comment line.

use thiserror::Error;

use twwkit_core::cwexpr::CwExpr;
use twwkit_core::graph::{Graph, GraphError};
use twwkit_core::rankwidth::{BranchDecomposition, BranchTree};
use twwkit_core::trigraph::{ContractionSequence, SequenceError};

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    BadEdge {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("{0}")]
    BadSequence(SequenceError),
    #[error("line {line}, column {col}: {msg}")]
    Expr {
        line: usize,
        col: usize,
        msg: String,
    },
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Graph file: a `n <count>` line followed by `e <u> <v>` lines.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = significant_lines(text);
    let (line, header) = lines.next().ok_or(FormatError::Syntax {
        line: 1,
        msg: "missing `n <count>` header".into(),
    })?;
    let mut fields = header.split_whitespace();
    let n: usize = match (fields.next(), fields.next(), fields.next()) {
        (Some("n"), Some(c), None) => c.parse().map_err(|_| FormatError::Syntax {
            line,
            msg: format!("bad vertex count {c:?}"),
        })?,
        _ => {
            return Err(FormatError::Syntax {
                line,
                msg: format!("expected `n <count>`, found {header:?}"),
            })
        }
    };
    let mut g = Graph::new(n).map_err(|source| FormatError::BadEdge { line, source })?;
    for (line, l) in lines {
        let mut fields = l.split_whitespace();
        match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some("e"), Some(a), Some(b), None) => {
                let u: usize = a.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {a:?}"),
                })?;
                let v: usize = b.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {b:?}"),
                })?;
                g.add_edge(u, v)
                    .map_err(|source| FormatError::BadEdge { line, source })?;
            }
            _ => {
                return Err(FormatError::Syntax {
                    line,
                    msg: format!("expected `e <u> <v>`, found {l:?}"),
                })
            }
        }
    }
    Ok(g)
}

/// Edges are emitted sorted lexicographically.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Token-level parse of a sequence file: `<u> <v>` per line.
pub fn parse_merges(text: &str) -> Result<Vec<(usize, usize)>, FormatError> {
    let mut merges = Vec::new();
    for (line, l) in significant_lines(text) {
        let mut fields = l.split_whitespace();
        match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => {
                let u: usize = a.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {a:?}"),
                })?;
                let v: usize = b.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {b:?}"),
                })?;
                merges.push((u, v));
            }
            _ => {
                return Err(FormatError::Syntax {
                    line,
                    msg: format!("expected `<u> <v>`, found {l:?}"),
                })
            }
        }
    }
    Ok(merges)
}

/// Sequence file: one `<u> <v>` merge per line, exactly `n - 1` of them.
pub fn parse_sequence(text: &str, base: &Graph) -> Result<ContractionSequence, FormatError> {
    let mut merges = Vec::new();
    let mut merge_lines = Vec::new();
    for (line, l) in significant_lines(text) {
        let mut fields = l.split_whitespace();
        match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => {
                let u: usize = a.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {a:?}"),
                })?;
                let v: usize = b.parse().map_err(|_| FormatError::Syntax {
                    line,
                    msg: format!("bad vertex id {b:?}"),
                })?;
                merges.push((u, v));
                merge_lines.push(line);
            }
            _ => {
                return Err(FormatError::Syntax {
                    line,
                    msg: format!("expected `<u> <v>`, found {l:?}"),
                })
            }
        }
    }
    ContractionSequence::new(base.clone(), merges).map_err(|e| match e {
        SequenceError::SamePart { step, u, v } => FormatError::Syntax {
            line: merge_lines[step],
            msg: format!("vertices {u} and {v} already share a part"),
        },
        other => FormatError::BadSequence(other),
    })
}

pub fn serialize_sequence(seq: &ContractionSequence) -> String {
    let mut out = String::new();
    for (u, v) in seq.merges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Expression grammar (whitespace-insensitive, `#` line comments):
///
/// ```text
/// expr := "v(" INT [":" NAME] ")"
///       | "(" expr "+" expr ")"
///       | "r(" INT "->" INT "," expr ")"
///       | "e(" INT "," INT "," expr ")"
/// ```
pub fn parse_expr(text: &str) -> Result<CwExpr, FormatError> {
    let mut p = ExprParser::new(text);
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.err(format!("unexpected trailing {c:?}")));
    }
    e.validate().map_err(|err| FormatError::Expr {
        line: 1,
        col: 1,
        msg: err.to_string(),
    })?;
    Ok(e)
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str) -> Self {
        ExprParser {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn line_col(&self) -> (usize, usize) {
        let consumed: usize = self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum();
        let before = &self.text[..consumed];
        let line = before.matches('\n').count() + 1;
        let col = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
        (line, col)
    }

    fn err(&self, msg: String) -> FormatError {
        let (line, col) = self.line_col();
        FormatError::Expr { line, col, msg }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => self.pos += 1,
                Some('#') => {
                    while let Some(c) = self.peek() {
                        self.pos += 1;
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<(), FormatError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            found => Err(self.err(format!("expected {want:?}, found {found:?}"))),
        }
    }

    fn int(&mut self) -> Result<u32, FormatError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a label".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err(format!("label {s:?} out of range")))
    }

    fn name(&mut self) -> Result<String, FormatError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a vertex name".into()));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<CwExpr, FormatError> {
        self.skip_ws();
        match self.peek() {
            Some('v') => {
                self.pos += 1;
                self.expect('(')?;
                let label = self.int()?;
                if label == 0 {
                    return Err(self.err("labels start at 1".into()));
                }
                self.skip_ws();
                let name = if self.peek() == Some(':') {
                    self.pos += 1;
                    self.skip_ws();
                    Some(self.name()?)
                } else {
                    None
                };
                self.expect(')')?;
                Ok(CwExpr::vertex(label, name))
            }
            Some('r') => {
                self.pos += 1;
                self.expect('(')?;
                let from = self.int()?;
                self.expect('-')?;
                self.expect('>')?;
                let to = self.int()?;
                if from == to {
                    return Err(self.err(format!("relabel needs two distinct labels, got {from}")));
                }
                if from == 0 || to == 0 {
                    return Err(self.err("labels start at 1".into()));
                }
                self.expect(',')?;
                let child = self.expr()?;
                self.expect(')')?;
                Ok(CwExpr::relabel(from, to, child))
            }
            Some('e') => {
                self.pos += 1;
                self.expect('(')?;
                let a = self.int()?;
                self.expect(',')?;
                let b = self.int()?;
                if a == b {
                    return Err(self.err(format!("add-edges needs two distinct labels, got {a}")));
                }
                if a == 0 || b == 0 {
                    return Err(self.err("labels start at 1".into()));
                }
                self.expect(',')?;
                let child = self.expr()?;
                self.expect(')')?;
                Ok(CwExpr::add_edges(a, b, child))
            }
            Some('(') => {
                self.pos += 1;
                let left = self.expr()?;
                self.expect('+')?;
                let right = self.expr()?;
                self.expect(')')?;
                Ok(CwExpr::union(left, right))
            }
            found => Err(self.err(format!("expected an expression, found {found:?}"))),
        }
    }
}

/// Canonical serialization: no whitespace, names kept.
pub fn serialize_expr(e: &CwExpr) -> String {
    match e {
        CwExpr::Vertex { label, name } => match name {
            Some(n) => format!("v({label}:{n})"),
            None => format!("v({label})"),
        },
        CwExpr::Union(a, b) => format!("({}+{})", serialize_expr(a), serialize_expr(b)),
        CwExpr::Relabel { from, to, child } => {
            format!("r({from}->{to},{})", serialize_expr(child))
        }
        CwExpr::AddEdges { a, b, child } => format!("e({a},{b},{})", serialize_expr(child)),
    }
}

/// Token-level content of a branch decomposition file: either a nested
/// parenthesis tree or a bare vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchInput {
    Order(Vec<usize>),
    Tree(BranchTree),
}

/// Token-level parse: nested parentheses over vertex ids, e.g.
/// `((0 1) (2 3))`, or a bare vertex order describing a caterpillar.
pub fn parse_branch_input(text: &str) -> Result<BranchInput, FormatError> {
    let body: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => &l[..i],
            None => l,
        })
        .collect::<Vec<_>>()
        .join(" ");
    if !body.contains('(') {
        let order: Result<Vec<usize>, _> = body.split_whitespace().map(str::parse).collect();
        let order = order.map_err(|_| FormatError::Syntax {
            line: 1,
            msg: "expected vertex ids".into(),
        })?;
        return Ok(BranchInput::Order(order));
    }
    let tokens: Vec<String> = body
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let mut pos = 0;
    let tree = parse_branch_tree(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(FormatError::Syntax {
            line: 1,
            msg: "trailing tokens after the tree".into(),
        });
    }
    Ok(BranchInput::Tree(tree))
}

/// Branch decomposition file resolved against a vertex count.
pub fn parse_branch(text: &str, n: usize) -> Result<BranchDecomposition, FormatError> {
    let to_err = |e: twwkit_core::rankwidth::DecompositionError| FormatError::Syntax {
        line: 1,
        msg: e.to_string(),
    };
    match parse_branch_input(text)? {
        BranchInput::Order(order) => {
            twwkit_core::rankwidth::order_to_linear_decomposition(&order, n).map_err(to_err)
        }
        BranchInput::Tree(tree) => BranchDecomposition::new(tree, n).map_err(to_err),
    }
}

fn parse_branch_tree(tokens: &[String], pos: &mut usize) -> Result<BranchTree, FormatError> {
    let bad = |msg: String| FormatError::Syntax { line: 1, msg };
    match tokens.get(*pos) {
        Some(t) if t == "(" => {
            *pos += 1;
            let a = parse_branch_tree(tokens, pos)?;
            let b = parse_branch_tree(tokens, pos)?;
            match tokens.get(*pos) {
                Some(t) if t == ")" => {
                    *pos += 1;
                    Ok(BranchTree::node(a, b))
                }
                other => Err(bad(format!("expected `)`, found {other:?}"))),
            }
        }
        Some(t) => {
            let v: usize = t
                .parse()
                .map_err(|_| bad(format!("expected a vertex id, found {t:?}")))?;
            *pos += 1;
            Ok(BranchTree::Leaf(v))
        }
        None => Err(bad("unexpected end of input".into())),
    }
}

pub fn serialize_branch(d: &BranchDecomposition) -> String {
    fn rec(t: &BranchTree, out: &mut String) {
        match t {
            BranchTree::Leaf(v) => out.push_str(&v.to_string()),
            BranchTree::Node(a, b) => {
                out.push('(');
                rec(a, out);
                out.push(' ');
                rec(b, out);
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    rec(d.tree(), &mut out);
    out.push('\n');
    out
}

pub fn serialize_order(order: &[usize]) -> String {
    let strs: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    strs.join(" ") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_examples() {
        assert_eq!(
            parse_graph("n 2\ne 0 1").unwrap(),
            Graph::with_edges(2, &[(0, 1)]).unwrap()
        );
        assert_eq!(
            parse_graph("n 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0").unwrap(),
            Graph::cycle(4).unwrap()
        );
        assert!(matches!(
            parse_graph("n 2\ne 0 0"),
            Err(FormatError::BadEdge {
                line: 2,
                source: GraphError::SelfLoop { v: 0 }
            })
        ));
        assert!(matches!(
            parse_graph("n 2\ne 0 1\ne 1 0"),
            Err(FormatError::BadEdge {
                line: 3,
                source: GraphError::DuplicateEdge { u: 0, v: 1 }
            })
        ));
        assert!(matches!(
            parse_graph("n 2\ne 0 5"),
            Err(FormatError::BadEdge { line: 2, .. })
        ));
        assert!(matches!(parse_graph("x"), Err(FormatError::Syntax { line: 1, .. })));
    }

    #[test]
    fn graph_round_trip_with_comments() {
        let g = Graph::cycle(7).unwrap();
        let text = format!("# a comment\n\n{}", serialize_graph(&g));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn sequence_parsing() {
        let g = Graph::cycle(4).unwrap();
        let seq = parse_sequence("# merge twins first\n0 2\n1 3\n0 1\n", &g).unwrap();
        assert_eq!(seq.merges(), &[(0, 2), (1, 3), (0, 1)]);
        assert_eq!(parse_sequence(&serialize_sequence(&seq), &g).unwrap(), seq);
        // repeated merge is reported on its line
        assert!(matches!(
            parse_sequence("0 2\n0 2\n0 1\n", &g),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_sequence("0 2\n", &g),
            Err(FormatError::BadSequence(SequenceError::WrongMergeCount { .. }))
        ));
    }

    #[test]
    fn expr_examples() {
        let e = parse_expr("e(1,2,(v(1:a)+v(2:b)))").unwrap();
        let ev = e.eval().unwrap();
        assert_eq!(ev.graph, Graph::with_edges(2, &[(0, 1)]).unwrap());
        assert_eq!(ev.names[0].as_deref(), Some("a"));

        assert!(matches!(
            parse_expr("r(1->1,v(1))"),
            Err(FormatError::Expr { .. })
        ));
        assert!(matches!(
            parse_expr("(v(1:x)+v(2:x))"),
            Err(FormatError::Expr { .. })
        ));
        // whitespace and comments are insignificant
        let spaced = "e( 1 , 2 , # build the edge\n ( v(1) + v(2) ) )";
        assert_eq!(parse_expr(spaced).unwrap().width(), 2);
    }

    #[test]
    fn expr_round_trip() {
        let texts = [
            "e(1,2,(v(1:a)+v(2:b)))",
            "r(2->1,(v(1)+e(1,2,(v(2)+v(1)))))",
            "v(7:zz_9)",
        ];
        for t in texts {
            let e = parse_expr(t).unwrap();
            assert_eq!(serialize_expr(&e), t);
            assert_eq!(parse_expr(&serialize_expr(&e)).unwrap(), e);
        }
    }

    #[test]
    fn branch_formats() {
        let d = parse_branch("((0 1) (2 3))", 4).unwrap();
        assert_eq!(parse_branch(&serialize_branch(&d), 4).unwrap(), d);
        // order form builds the caterpillar
        let lin = parse_branch("0 1 2 3", 4).unwrap();
        let direct = twwkit_core::rankwidth::order_to_linear_decomposition(&[0, 1, 2, 3], 4).unwrap();
        assert_eq!(lin, direct);
        assert!(parse_branch("((0 1) (2 3))", 5).is_err());
        assert!(parse_branch("((0 1) 2 3)", 4).is_err());
    }
}
