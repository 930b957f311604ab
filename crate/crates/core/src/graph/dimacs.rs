//! DIMACS edge format: `c` comments, one `p edge n m` line, `e u v` edges
//! with 1-indexed endpoints.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(lineno, "duplicate `p` line"));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(parse_err(lineno, "expected `p edge <n> <m>`"));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad vertex count `{}`", fields[2])))?;
                let _m: usize = fields[3]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad edge count `{}`", fields[3])))?;
                if n == 0 {
                    return Err(parse_err(lineno, "vertex count must be at least 1"));
                }
                graph = Some(Graph::empty(n)?);
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(lineno, "edge before `p` line"))?;
                if fields.len() != 3 {
                    return Err(parse_err(lineno, "expected `e <u> <v>`"));
                }
                let mut ends = [0usize; 2];
                for (slot, field) in ends.iter_mut().zip(&fields[1..]) {
                    let v: usize = field
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad endpoint `{field}`")))?;
                    if v == 0 || v > g.n() {
                        return Err(parse_err(
                            lineno,
                            format!("endpoint {v} out of range 1..={}", g.n()),
                        ));
                    }
                    *slot = v - 1;
                }
                if ends[0] == ends[1] {
                    return Err(parse_err(lineno, format!("self-loop at {}", ends[0] + 1)));
                }
                g.set_edge(ends[0], ends[1]);
            }
            other => return Err(parse_err(lineno, format!("unrecognized line type `{other}`"))),
        }
    }
    graph.ok_or_else(|| parse_err(0, "missing `p edge` line"))
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
