use std::collections::HashSet;
use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

const FORMAT: &str = "edgelist";

/// Parses whitespace-separated `u v` lines. Blank lines and lines starting
/// with `#` are skipped. The first content line may declare `n = <count>`;
/// otherwise the vertex count is one more than the largest index.
pub fn parse_edgelist(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut max_index: Option<usize> = None;
    let mut offset = 0usize;
    let mut first = true;

    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let at = start + (line.len() - line.trim_start().len());
        if first {
            first = false;
            if let Some(rest) = content.strip_prefix('n') {
                if let Some(count) = rest.trim_start().strip_prefix('=') {
                    let n = count.trim().parse::<usize>().map_err(|_| {
                        Error::parse(FORMAT, at, format!("bad vertex count {:?}", count.trim()))
                    })?;
                    declared = Some(n);
                    continue;
                }
            }
        }
        let mut tokens = content.split_whitespace();
        let mut endpoint = || -> Result<usize> {
            let token = tokens
                .next()
                .ok_or_else(|| Error::parse(FORMAT, at, "expected two vertex indices"))?;
            token
                .parse::<usize>()
                .map_err(|_| Error::parse(FORMAT, at, format!("non-integer token {token:?}")))
        };
        let (u, v) = (endpoint()?, endpoint()?);
        if tokens.next().is_some() {
            return Err(Error::parse(FORMAT, at, "more than two tokens on a line"));
        }
        if u == v {
            return Err(Error::parse(FORMAT, at, format!("self-loop at vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(Error::parse(FORMAT, at, format!("duplicate edge {} {}", key.0, key.1)));
        }
        max_index = max_index.max(Some(key.1));
        edges.push(key);
    }

    let needed = max_index.map_or(0, |m| m + 1);
    let n = match declared {
        Some(n) if n < needed => {
            return Err(Error::parse(
                FORMAT,
                0,
                format!("declared n = {n} but vertex {} appears", needed - 1),
            ))
        }
        Some(n) => n,
        None => needed,
    };
    Graph::new(n, edges)
}

/// Writes `n = <count>` followed by one `u v` line per edge in id order.
pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("n = {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
