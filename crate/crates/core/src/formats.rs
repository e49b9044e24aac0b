//! Text formats: connection-set documents, edge lists, graph6 and
//! line-oriented JSON reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{ConnectionSet, FiniteAbelianGroup};

pub const REPORT_SCHEMA: &str = "cayiso-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Deserialize)]
struct SetDocument {
    moduli: Vec<u32>,
    set: Vec<Vec<i64>>,
}

/// `{"moduli": [...], "set": [[...], ...]}` with one element per line, the
/// elements sorted.
pub fn write_connection_set(set: &ConnectionSet) -> String {
    let g = set.group();
    let mut out = format!("{{\n  \"moduli\": {},\n  \"set\": [", serde_json::to_string(g.moduli()).expect("plain list"));
    for (i, e) in set.elements().enumerate() {
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&serde_json::to_string(e.coords()).expect("plain list"));
    }
    out.push_str(if set.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

/// Parses a connection-set document; coordinates are reduced modulo their
/// factor and duplicates merge.
pub fn read_connection_set(text: &str) -> Result<(FiniteAbelianGroup, ConnectionSet)> {
    let doc: SetDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let g = FiniteAbelianGroup::new(&doc.moduli)?;
    let elements = doc.set.iter().map(|c| g.element_reduced(c)).collect::<Result<Vec<_>>>()?;
    let set = ConnectionSet::from_elements(&g, elements.iter())?;
    Ok((g, set))
}

/// `# n=<N> directed=<bool>` then one `u v` line per arc (per edge when
/// undirected).
pub fn write_edge_list(g: &Digraph) -> String {
    let mut out = format!("# n={} directed={}\n", g.order(), !g.is_undirected());
    let pairs = if g.is_undirected() { g.edges() } else { g.arcs() };
    for (u, v) in pairs {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

pub fn read_edge_list(text: &str) -> Result<Digraph> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let mut n = None;
    let mut directed = None;
    for field in header.trim_start_matches('#').split_whitespace() {
        match field.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|e| Error::Parse(format!("n: {e}")))?),
            Some(("directed", v)) => directed = Some(v.parse::<bool>().map_err(|e| Error::Parse(format!("directed: {e}")))?),
            _ => return Err(Error::Parse(format!("unknown header field {field:?}"))),
        }
    }
    let (Some(n), Some(directed)) = (n, directed) else {
        return Err(Error::Parse("header needs n= and directed=".into()));
    };
    let mut pairs = Vec::new();
    for (no, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|e| Error::Parse(format!("line {}: {e}", no + 2))))
            .collect::<Result<_>>()?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse(format!("line {}: expected two vertices", no + 2)));
        };
        pairs.push((u, v));
    }
    if directed {
        Digraph::from_arcs(n, pairs)
    } else {
        Digraph::from_edges(n, pairs)
    }
}

fn graph6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
}

/// graph6 encoding of an undirected graph. Loops are dropped.
pub fn to_graph6(g: &Digraph) -> Result<String> {
    if !g.is_symmetric() {
        return Err(Error::AsymmetricSet);
    }
    let n = g.order();
    let mut out = Vec::new();
    graph6_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_arc(i, j));
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
    Ok(String::from_utf8(out).expect("printable ascii"))
}

pub fn from_graph6(text: &str) -> Result<Digraph> {
    let bytes = text.trim_end().as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b} outside the graph6 range")));
    }
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    let (n, body) = match bytes {
        [126, 126, rest @ ..] if rest.len() >= 6 => (six(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 => (six(&rest[..3]), &rest[3..]),
        [b, rest @ ..] if *b != 126 => ((b - 63) as usize, rest),
        _ => return Err(Error::Parse("truncated graph6 size".into())),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {}", body.len(), bits.div_ceil(6))));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Digraph::from_edges(n, edges)
}

#[derive(Serialize)]
struct ReportHeader<'a> {
    schema: &'a str,
    version: u32,
    kind: &'a str,
}

/// A schema header line followed by one JSON record per line.
pub fn write_report<T: Serialize>(kind: &str, records: &[T]) -> String {
    let mut out = serde_json::to_string(&ReportHeader { schema: REPORT_SCHEMA, version: REPORT_VERSION, kind })
        .expect("header serializes");
    out.push('\n');
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("report records serialize"));
        out.push('\n');
    }
    out
}

/// The `kind` and the raw records of a report, after checking the header.
pub fn read_report(text: &str) -> Result<(String, Vec<serde_json::Value>)> {
    let mut lines = text.lines();
    let header: serde_json::Value =
        serde_json::from_str(lines.next().ok_or_else(|| Error::Parse("empty report".into()))?)
            .map_err(|e| Error::Parse(e.to_string()))?;
    if header["schema"] != REPORT_SCHEMA || header["version"] != REPORT_VERSION {
        return Err(Error::Parse("unsupported report header".into()));
    }
    let kind = header["kind"].as_str().unwrap_or_default().to_string();
    let records = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect::<Result<_>>()?;
    Ok((kind, records))
}
