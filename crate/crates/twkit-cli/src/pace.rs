//! PACE 2017 `.gr` and `.td` text formats. Ids are 1-based on disk.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;
use twkit::{Graph, TreeDecomposition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line")]
    MissingHeader,
    #[error("header announces {expected} {what}, found {found}")]
    Count { what: &'static str, expected: usize, found: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && t[0] != "c")
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize, ParseError> {
    match number(line, tok)? {
        v if v >= 1 && v <= n => Ok(v - 1),
        v => Err(syntax(line, format!("vertex {v} out of range 1..={n}"))),
    }
}

/// Parses a `.gr` file. Self-loops and repeated edges are rejected.
pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut it = lines(text);
    let (line, head) = it.next().ok_or(ParseError::MissingHeader)?;
    if head.len() != 4 || head[0] != "p" || head[1] != "tw" {
        return Err(syntax(line, "expected `p tw <n> <m>`"));
    }
    let n = number(line, head[2])?;
    let m = number(line, head[3])?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, toks) in it {
        if toks.len() != 2 {
            return Err(syntax(line, "expected `<u> <v>`"));
        }
        let (u, v) = (vertex(line, toks[0], n)?, vertex(line, toks[1], n)?);
        if u == v {
            return Err(syntax(line, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(syntax(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::Count { what: "edges", expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges).expect("edges checked while parsing"))
}

/// Parses a `.td` file; the decomposition is rooted at bag 1.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut it = lines(text);
    let (line, head) = it.next().ok_or(ParseError::MissingHeader)?;
    if head.len() != 5 || head[0] != "s" || head[1] != "td" {
        return Err(syntax(line, "expected `s td <bags> <max bag size> <n>`"));
    }
    let count = number(line, head[2])?;
    let n = number(line, head[4])?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; count];
    let mut edges = Vec::new();
    for (line, toks) in it {
        if toks[0] == "b" {
            let id = toks.get(1).ok_or_else(|| syntax(line, "bag line without id"))?;
            let id = match number(line, id)? {
                i if i >= 1 && i <= count => i - 1,
                i => return Err(syntax(line, format!("bag id {i} out of range 1..={count}"))),
            };
            if bags[id].is_some() {
                return Err(syntax(line, format!("bag {} listed twice", id + 1)));
            }
            let bag = toks[2..].iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>, _>>()?;
            bags[id] = Some(bag);
        } else if toks.len() == 2 {
            let a = number(line, toks[0])?;
            let b = number(line, toks[1])?;
            if a == 0 || b == 0 || a > count || b > count {
                return Err(syntax(line, format!("tree edge {a} {b} out of range 1..={count}")));
            }
            edges.push((a - 1, b - 1));
        } else {
            return Err(syntax(line, "expected a bag line or a tree edge"));
        }
    }
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != count {
        return Err(ParseError::Count { what: "bags", expected: count, found });
    }
    let bags = bags.into_iter().map(Option::unwrap).collect();
    TreeDecomposition::from_edges(bags, &edges).map_err(|msg| syntax(0, msg))
}

/// Writes `td` for a graph on `n` vertices. Output is deterministic: bags
/// in node order with ascending vertices, then tree edges sorted.
pub fn emit_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let width = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.len(), width, n).unwrap();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    let mut edges: Vec<(usize, usize)> = td.tree_edges().into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Writes `g` in `.gr` form.
pub fn emit_gr(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p tw {} {}", g.n(), g.m()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
