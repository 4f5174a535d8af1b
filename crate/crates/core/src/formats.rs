//! Plain-text file formats and DOT export.
//!
//! Game file:
//! ```text
//! game 2 2
//! 1 0
//! 0 1/2
//! 0 1
//! 1 0
//! ```
//! The header gives `|R| |C|`, followed by the rows of `M_R` and then the
//! rows of `M_C`. Strategies are implicitly `r1..` and `c1..`.
//!
//! Graph file:
//! ```text
//! graph 1 1
//! rows y1
//! cols x1
//! y1 x1 1
//! x1 y1 7
//! ```
//! The `rows` / `cols` lines are present only when the names differ from the
//! defaults `r<i>` / `c<j>`. Arc lines are `source target weight`.
//!
//! Everywhere `#` starts a comment running to the end of the line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::{default_ids, BimatrixGame};
use crate::graph::{Part, VertexSet, WeightedBipartiteDigraph};
use crate::rational::{parse_non_negative, Rational};

/// Non-empty lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line_no: usize, line: &str, keyword: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        [k, r, c] if *k == keyword => match (r.parse::<usize>(), c.parse::<usize>()) {
            (Ok(r), Ok(c)) if r > 0 && c > 0 => Ok((r, c)),
            _ => Err(Error::parse(line_no, format!("bad dimensions in `{line}`"))),
        },
        _ => Err(Error::parse(line_no, format!("expected `{keyword} <rows> <cols>`, found `{line}`"))),
    }
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

pub fn write_game(game: &BimatrixGame) -> String {
    let mut out = format!("game {} {}\n", game.num_rows(), game.num_cols());
    for matrix in [game.payoff_row(), game.payoff_col()] {
        for row in matrix {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_game(text: &str) -> Result<BimatrixGame> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty game file"))?;
    let (rows, cols) = parse_header(line_no, header, "game")?;
    let mut matrices: [Vec<Vec<Rational>>; 2] = [Vec::new(), Vec::new()];
    for (line_no, line) in lines {
        let slot = match matrices.iter().position(|m| m.len() < rows) {
            Some(s) => s,
            None => return Err(Error::parse(line_no, "more matrix rows than declared")),
        };
        let cells = line
            .split_whitespace()
            .map(|t| parse_non_negative(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        if cells.len() != cols {
            return Err(Error::parse(line_no, format!("expected {cols} entries, found {}", cells.len())));
        }
        matrices[slot].push(cells);
    }
    if matrices[1].len() != rows {
        return Err(Error::parse(last_line(text), format!("expected {} matrix rows", 2 * rows)));
    }
    let [mr, mc] = matrices;
    BimatrixGame::new(mr, mc)
}

pub fn write_graph(graph: &WeightedBipartiteDigraph) -> String {
    let mut out = format!("graph {} {}\n", graph.num_rows(), graph.num_cols());
    if graph.row_names() != default_ids('r', graph.num_rows()).as_slice()
        || graph.col_names() != default_ids('c', graph.num_cols()).as_slice()
    {
        let _ = writeln!(out, "rows {}", graph.row_names().join(" "));
        let _ = writeln!(out, "cols {}", graph.col_names().join(" "));
    }
    for (s, t, w) in graph.arcs() {
        let _ = writeln!(out, "{} {} {w}", graph.name(s), graph.name(t));
    }
    out
}

pub fn parse_graph(text: &str) -> Result<WeightedBipartiteDigraph> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let (rows, cols) = parse_header(line_no, header, "graph")?;
    let mut row_names = default_ids('r', rows);
    let mut col_names = default_ids('c', cols);
    for (keyword, names, count) in [("rows", &mut row_names, rows), ("cols", &mut col_names, cols)] {
        if let Some(&(line_no, line)) = lines.peek() {
            let mut fields = line.split_whitespace();
            if fields.next() == Some(keyword) {
                let given: Vec<String> = fields.map(str::to_string).collect();
                if given.len() != count {
                    return Err(Error::parse(line_no, format!("expected {count} names, found {}", given.len())));
                }
                *names = given;
                lines.next();
            }
        }
    }
    let mut graph = WeightedBipartiteDigraph::new(row_names, col_names).map_err(|e| Error::parse(line_no, e.to_string()))?;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [s, t, w] = fields.as_slice() else {
            return Err(Error::parse(line_no, format!("expected `source target weight`, found `{line}`")));
        };
        let weight = parse_non_negative(w, line_no)?;
        graph
            .add_arc_by_name(s, t, weight)
            .map_err(|e| Error::parse(line_no, e.to_string()))?;
    }
    Ok(graph)
}

/// A game or graph file, told apart by its header keyword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Game(BimatrixGame),
    Graph(WeightedBipartiteDigraph),
}

impl Instance {
    /// The graph itself, or the game's corresponding digraph.
    pub fn into_graph(self) -> Result<WeightedBipartiteDigraph> {
        match self {
            Instance::Graph(g) => Ok(g),
            Instance::Game(game) => crate::graph::game_to_graph(&game),
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let first = content_lines(text).next();
    match first.and_then(|(_, l)| l.split_whitespace().next()) {
        Some("game") => parse_game(text).map(Instance::Game),
        Some("graph") => parse_graph(text).map(Instance::Graph),
        _ => Err(Error::parse(
            first.map_or(1, |(n, _)| n),
            "expected a `game` or `graph` header",
        )),
    }
}

/// One vertex name per line, in index order.
pub fn write_witness(graph: &WeightedBipartiteDigraph, set: &VertexSet) -> String {
    graph.set_names(set).iter().map(|n| format!("{n}\n")).collect()
}

pub fn parse_witness(graph: &WeightedBipartiteDigraph, text: &str) -> Result<VertexSet> {
    let mut set = VertexSet::empty(graph.num_vertices());
    for (line_no, line) in content_lines(text) {
        let v = graph
            .index_of(line)
            .ok_or_else(|| Error::parse(line_no, format!("unknown vertex `{line}`")))?;
        if !set.insert(v) {
            return Err(Error::parse(line_no, format!("vertex `{line}` listed twice")));
        }
    }
    if set.is_empty() {
        return Err(Error::parse(last_line(text), "the witness lists no vertices"));
    }
    Ok(set)
}

/// Lines `name role`, where the role is free text after the first space.
pub fn write_role_map(entries: &[(String, String)]) -> String {
    entries.iter().map(|(n, r)| format!("{n} {r}\n")).collect()
}

pub fn parse_role_map(text: &str) -> Result<Vec<(String, String)>> {
    content_lines(text)
        .map(|(line_no, line)| {
            line.split_once(' ')
                .map(|(n, r)| (n.to_string(), r.trim().to_string()))
                .ok_or_else(|| Error::parse(line_no, format!("expected `name role`, found `{line}`")))
        })
        .collect()
}

/// DOT rendering: rectangles for the row part, circles for the column part,
/// weight labels on arcs. `clusters[v] = Some(i)` groups `v` into a
/// subgraph labelled `gadget i`; an empty slice means no clusters.
pub fn to_dot(graph: &WeightedBipartiteDigraph, clusters: &[Option<usize>]) -> String {
    let mut out = String::from("digraph G {\n");
    let node = |v: usize| {
        let shape = match graph.part(v) {
            Part::Row => "box",
            Part::Column => "circle",
        };
        format!("\"{}\" [shape={shape}];", graph.name(v))
    };
    let mut grouped: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..graph.num_vertices() {
        match clusters.get(v).copied().flatten() {
            Some(c) => grouped.entry(c).or_default().push(v),
            None => {
                let _ = writeln!(out, "  {}", node(v));
            }
        }
    }
    for (c, members) in grouped {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label=\"gadget {c}\";");
        for v in members {
            let _ = writeln!(out, "    {}", node(v));
        }
        out.push_str("  }\n");
    }
    for (s, t, w) in graph.arcs() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{w}\"];", graph.name(s), graph.name(t));
    }
    out.push_str("}\n");
    out
}
