//! graph6 and edge-list input, JSON and CSV report output.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::classify::ClassReport;
use crate::graph::{Graph, GraphError, MAX_ORDER};

/// Largest order the 4-byte graph6 size form can express.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

const HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("empty graph6 record")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("truncated graph6 record: order {n} needs {expected} payload bytes, found {found}")]
    Truncated { n: usize, expected: usize, found: usize },
    #[error("graph6 record has {extra} bytes past the end of the payload")]
    TrailingBytes { extra: usize },
    #[error("graph6 padding bits are not zero")]
    NonzeroPadding,
    #[error("order {n} exceeds the supported maximum {max}")]
    Capacity { n: usize, max: usize },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("unknown report format `{0}`")]
    UnknownFormat(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("write failed: {0}")]
    Write(String),
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, IoError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(IoError::NonPrintable { offset, byte })
    }
}

/// Decodes the order prefix; returns `(n, bytes consumed)`.
fn decode_order(b: &[u8], base: usize) -> Result<(usize, usize), IoError> {
    let first = *b.first().ok_or(IoError::Empty)?;
    if first != 126 {
        return Ok((check_byte(base, first)? as usize, 1));
    }
    if b.get(1) == Some(&126) {
        // 8-byte form: orders above the 4-byte range.
        let mut n = 0usize;
        for k in 0..6 {
            let byte = *b.get(2 + k).ok_or(IoError::Truncated { n: 0, expected: 8, found: b.len() })?;
            n = n << 6 | check_byte(base + 2 + k, byte)? as usize;
        }
        return Err(IoError::Capacity { n, max: MAX_ORDER });
    }
    let mut n = 0usize;
    for k in 0..3 {
        let byte = *b.get(1 + k).ok_or(IoError::Truncated { n: 0, expected: 4, found: b.len() })?;
        n = n << 6 | check_byte(base + 1 + k, byte)? as usize;
    }
    Ok((n, 4))
}

/// Parses one graph6 record. A leading `>>graph6<<` header and a trailing
/// line ending are accepted.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, IoError> {
    let mut b = line;
    while let Some((&last, rest)) = b.split_last() {
        if last == b'\n' || last == b'\r' {
            b = rest;
        } else {
            break;
        }
    }
    let base = if b.starts_with(HEADER) { HEADER.len() } else { 0 };
    b = &b[base..];
    let (n, used) = decode_order(b, base)?;
    if n > MAX_ORDER {
        return Err(IoError::Capacity { n, max: MAX_ORDER });
    }
    if n == 0 {
        return Err(IoError::Graph(GraphError::OrderOutOfRange(0)));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &b[used..];
    if payload.len() < expected {
        return Err(IoError::Truncated { n, expected, found: payload.len() });
    }
    if payload.len() > expected {
        return Err(IoError::TrailingBytes { extra: payload.len() - expected });
    }
    let mut values = Vec::with_capacity(expected);
    for (k, &byte) in payload.iter().enumerate() {
        values.push(check_byte(base + used + k, byte)?);
    }
    let pad = expected * 6 - bits;
    if pad > 0 && values.last().is_some_and(|&v| v & ((1 << pad) - 1) != 0) {
        return Err(IoError::NonzeroPadding);
    }
    let bit = |k: usize| values[k / 6] >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Encodes `g` in graph6 without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, IoError> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(IoError::Capacity { n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// Parses whitespace-separated `u v` pairs, one per line. Blank lines and
/// `#` comments are ignored; the order is one more than the largest vertex
/// unless a line `n <order>` fixes it.
pub fn parse_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut edges = Vec::new();
    let mut order: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| IoError::EdgeList { line: idx + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("`{s}` is not a vertex number")));
        match fields.as_slice() {
            ["n", v] => order = Some(num(v)?),
            [u, v] => {
                let (u, v) = (num(u)?, num(v)?);
                if u == v {
                    return Err(err(format!("self-loop at {u}")));
                }
                edges.push((u, v));
            }
            _ => return Err(err(format!("expected two vertices, found `{line}`"))),
        }
    }
    let max = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match order {
        Some(n) if n < max => {
            return Err(IoError::EdgeList { line: 0, message: format!("vertex {} out of range for order {n}", max - 1) })
        }
        Some(n) => n,
        None => max,
    };
    Ok(Graph::from_edges(n, &edges)?)
}

/// Writes `g` as an edge list, preceded by an `n <order>` line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses graph6 when the text looks like one record per line, otherwise an edge list.
pub fn parse_graph_text(text: &str) -> Result<Vec<Graph>, IoError> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let looks_like_edges = lines.iter().any(|l| l.contains(char::is_whitespace) || l.starts_with('#'));
    if looks_like_edges {
        return Ok(vec![parse_edge_list(text)?]);
    }
    lines.iter().map(|l| parse_graph6(l.as_bytes())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = IoError;

    fn from_str(s: &str) -> Result<ReportFormat, IoError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(IoError::UnknownFormat(other.to_string())),
        }
    }
}

pub const REPORT_SCHEMA: u32 = 1;

pub const CSV_COLUMNS: [&str; 12] = [
    "n",
    "m",
    "regular",
    "connected",
    "spectrum",
    "pattern",
    "in_G",
    "in_H",
    "srg_params",
    "nikiforov_equal",
    "km_equal",
    "label",
];

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<&'a str>,
    reports: &'a [ClassReport],
}

/// Writes reports as `{"schema": 1, "reports": [...]}` or as CSV with [`CSV_COLUMNS`].
pub fn write_report(
    out: &mut impl Write,
    reports: &[ClassReport],
    format: ReportFormat,
    generated_at: Option<&str>,
) -> Result<(), IoError> {
    let io = |e: std::io::Error| IoError::Write(e.to_string());
    match format {
        ReportFormat::Json => {
            let doc = JsonReport { schema: REPORT_SCHEMA, generated_at, reports };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| IoError::Write(e.to_string()))?;
            writeln!(out).map_err(io)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let csv_err = |e: csv::Error| IoError::Write(e.to_string());
            w.write_record(CSV_COLUMNS).map_err(csv_err)?;
            for r in reports {
                let flag = |f: Option<bool>| f.map_or(String::new(), |b| b.to_string());
                w.write_record([
                    r.n.to_string(),
                    r.m.to_string(),
                    r.regular.to_string(),
                    r.connected.to_string(),
                    r.spectrum.clone(),
                    r.pattern.to_string(),
                    r.in_g.to_string(),
                    r.in_h.to_string(),
                    r.srg.map_or(String::new(), |p| p.to_string()),
                    flag(r.bounds.as_ref().map(|b| b.nikiforov_equal)),
                    flag(r.bounds.as_ref().map(|b| b.km_equal)),
                    r.label.clone().unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
    }
}
