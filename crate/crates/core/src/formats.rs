//! graph6 (short form) and plain edge-list text formats.

use std::io::BufRead;

use crate::graph::{Graph, GraphError};

const GRAPH6_HEADER: &str = ">>graph6<<";
/// Largest order expressible in the one-byte graph6 size field.
pub const GRAPH6_MAX_VERTICES: usize = 62;

/// Decodes one graph6 line (short form only).
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    parse_graph6_with_cap(line, GRAPH6_MAX_VERTICES)
}

pub fn parse_graph6_with_cap(line: &str, cap: usize) -> Result<Graph, GraphError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (&first, payload) = bytes
        .split_first()
        .ok_or_else(|| GraphError::MalformedGraph6("empty line".into()))?;
    if let Some((i, &b)) = bytes
        .iter()
        .enumerate()
        .find(|&(_, &b)| !(63..=126).contains(&b))
    {
        return Err(GraphError::MalformedGraph6(format!(
            "byte {b:#04x} at offset {i} outside 63..=126"
        )));
    }
    if first == 126 {
        return Err(GraphError::TooLarge {
            n: 63,
            cap: cap.min(GRAPH6_MAX_VERTICES),
        });
    }
    let n = (first - 63) as usize;
    if n > cap {
        return Err(GraphError::TooLarge { n, cap });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if payload.len() != need {
        return Err(GraphError::MalformedGraph6(format!(
            "expected {need} payload bytes for n = {n}, found {}",
            payload.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Encodes `g` as short-form graph6.
pub fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(GraphError::TooLarge {
            n,
            cap: GRAPH6_MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut payload = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                payload[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(payload.len() + 1);
    out.push((n as u8 + 63) as char);
    out.extend(payload.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Parses `"n m"` followed by `m` lines `"u v"`.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !is_skippable(l));
    let (hline, header) = lines.next().ok_or(GraphError::MalformedEdgeList {
        line: 1,
        reason: "missing header".into(),
    })?;
    let (n, m) = parse_pair(header, hline + 1)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (i, l) = lines.next().ok_or_else(|| GraphError::MalformedEdgeList {
            line: hline + 1,
            reason: format!("expected {m} edge lines"),
        })?;
        edges.push(parse_pair(l, i + 1)?);
    }
    Graph::from_edges(n, edges)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let bad = |reason: String| GraphError::MalformedEdgeList {
        line: lineno,
        reason,
    };
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(bad(format!("expected two integers, got {line:?}")));
    }
    let a = toks[0]
        .parse()
        .map_err(|_| bad(format!("not an integer: {:?}", toks[0])))?;
    let b = toks[1]
        .parse()
        .map_err(|_| bad(format!("not an integer: {:?}", toks[1])))?;
    Ok((a, b))
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// True when `line` is an edge-list header rather than graph6.
pub fn looks_like_edge_list_header(line: &str) -> bool {
    let t = line.trim();
    t.starts_with(|c: char| c.is_ascii_digit()) && t.split_whitespace().count() == 2
}

/// One graph read from a mixed graph6 / edge-list stream.
#[derive(Debug, Clone)]
pub struct InputRecord {
    /// 1-based line of the graph6 string or edge-list header.
    pub line: usize,
    pub result: Result<Graph, GraphError>,
}

/// Iterates graphs from a stream where each record is either a graph6 line
/// or an edge-list block. Blank lines and `#` comments are skipped.
pub struct GraphReader<R> {
    lines: std::iter::Enumerate<std::io::Lines<R>>,
    cap: usize,
}

impl<R: BufRead> GraphReader<R> {
    pub fn new(reader: R) -> Self {
        Self::with_cap(reader, GRAPH6_MAX_VERTICES)
    }

    pub fn with_cap(reader: R, cap: usize) -> Self {
        GraphReader {
            lines: reader.lines().enumerate(),
            cap,
        }
    }
}

impl<R: BufRead> Iterator for GraphReader<R> {
    type Item = InputRecord;

    fn next(&mut self) -> Option<InputRecord> {
        loop {
            let (i, line) = self.lines.next()?;
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    return Some(InputRecord {
                        line: i + 1,
                        result: Err(GraphError::InvalidParameter(format!("read error: {e}"))),
                    })
                }
            };
            if is_skippable(&line) {
                continue;
            }
            if !looks_like_edge_list_header(&line) {
                return Some(InputRecord {
                    line: i + 1,
                    result: parse_graph6_with_cap(line.trim(), self.cap),
                });
            }
            let result = parse_pair(&line, i + 1).and_then(|(n, m)| {
                let mut block = format!("{n} {m}\n");
                for _ in 0..m {
                    match self.lines.next() {
                        Some((_, Ok(l))) => {
                            block.push_str(&l);
                            block.push('\n');
                        }
                        _ => {
                            return Err(GraphError::MalformedEdgeList {
                                line: i + 1,
                                reason: format!("expected {m} edge lines"),
                            })
                        }
                    }
                }
                parse_edge_list(&block).map_err(|e| match e {
                    GraphError::MalformedEdgeList { line, reason } => {
                        GraphError::MalformedEdgeList {
                            line: line + i,
                            reason,
                        }
                    }
                    other => other,
                })
            });
            return Some(InputRecord {
                line: i + 1,
                result,
            });
        }
    }
}
