//! Plain-text file formats.
//!
//! Edge list: the first non-comment line holds `n`, then one `u v` pair per
//! line with `0 <= u, v < n`. Latents: one real per line. Orderings: line `i`
//! holds the rank (1-based) of vertex `i`. In all three, blank lines and
//! lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ordering::Ordering;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_at<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected {what}, found {token:?}"),
    })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = parse_at(line, header, "vertex count")?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse {
                line,
                msg: format!("expected `u v`, found {l:?}"),
            });
        };
        let u: usize = parse_at(line, a, "vertex")?;
        let v: usize = parse_at(line, b, "vertex")?;
        if u >= n || v >= n || u == v {
            return Err(Error::Parse {
                line,
                msg: format!("bad edge {u} {v} for n = {n}"),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

/// Header line `n`, then edges `u v` with `u < v` in lexicographic order.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_latents(text: &str) -> Result<Vec<f64>> {
    content_lines(text)
        .map(|(line, l)| {
            let x: f64 = parse_at(line, l, "real")?;
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::Parse {
                    line,
                    msg: format!("latent {x} outside [0, 1]"),
                });
            }
            Ok(x)
        })
        .collect()
}

/// Shortest representation that parses back to the same value.
pub fn format_latents(latents: &[f64]) -> String {
    let mut out = String::new();
    for x in latents {
        let _ = writeln!(out, "{x}");
    }
    out
}

pub fn parse_ordering(text: &str) -> Result<Ordering> {
    let ranks = content_lines(text)
        .map(|(line, l)| parse_at(line, l, "rank"))
        .collect::<Result<Vec<usize>>>()?;
    Ordering::from_ranks(ranks)
}

pub fn format_ordering(sigma: &Ordering) -> String {
    let mut out = String::new();
    for r in sigma.ranks() {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn read_edge_list(path: &Path) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn read_latents(path: &Path) -> Result<Vec<f64>> {
    parse_latents(&fs::read_to_string(path)?)
}

pub fn read_ordering(path: &Path) -> Result<Ordering> {
    parse_ordering(&fs::read_to_string(path)?)
}
