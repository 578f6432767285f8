//! Text formats: graph files, word tokens and certificate blocks.

use raag_core::graph::{Graph, Vertex, VertexSet};
use raag_core::word::{Letter, Word};
use raag_core::{Certificate, Variant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("malformed token `{0}`: only the suffix `^-1` is allowed")]
    MalformedSuffix(String),
}

fn at(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

/// Drops a trailing `#` comment and surrounding whitespace.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parses a graph file: one `vertices: ...` line, then `edge u v` lines.
/// `#` starts a comment.
pub fn parse_graph_file(text: &str) -> Result<Graph, ParseError> {
    let mut names: Option<(usize, Vec<&str>)> = None;
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("vertices:") {
            if names.is_some() {
                return Err(at(line, "duplicate vertices line"));
            }
            let list: Vec<&str> = rest.split_whitespace().collect();
            for (i, name) in list.iter().enumerate() {
                if list[..i].contains(name) {
                    return Err(at(line, format!("duplicate vertex `{name}`")));
                }
            }
            names = Some((line, list));
            continue;
        }
        let mut tokens = body.split_whitespace();
        if tokens.next() != Some("edge") {
            return Err(at(line, format!("unknown directive `{body}`")));
        }
        let (Some(u), Some(v), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(at(line, "expected `edge u v`"));
        };
        let Some((_, list)) = &names else {
            return Err(at(line, "edge before the vertices line"));
        };
        for x in [u, v] {
            if !list.contains(&x) {
                return Err(at(line, format!("unknown vertex `{x}`")));
            }
        }
        if u == v {
            return Err(at(line, format!("loop edge at `{u}`")));
        }
        if edges.iter().any(|&e| e == (u, v) || e == (v, u)) {
            return Err(at(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    let (vline, list) = names.ok_or_else(|| at(last.max(1), "missing vertices line"))?;
    Graph::new(&list, &edges).map_err(|e| at(vline, e.to_string()))
}

/// Inverse of [`parse_graph_file`].
pub fn render_graph(graph: &Graph) -> String {
    let mut out = String::from("vertices:");
    for name in graph.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (u, v) in graph.edges() {
        out.push_str(&format!("edge {} {}\n", graph.name(u), graph.name(v)));
    }
    out
}

/// Whitespace-separated tokens `name` or `name^-1`; `*` is the empty word.
pub fn parse_word(graph: &Graph, text: &str) -> Result<Word, ParseError> {
    let mut word = Word::empty();
    for token in text.split_whitespace() {
        if token == "*" {
            continue;
        }
        let (name, positive) = match token.strip_suffix("^-1") {
            Some(name) => (name, false),
            None => (token, true),
        };
        if name.is_empty() || name.contains('^') {
            return Err(ParseError::MalformedSuffix(token.to_string()));
        }
        let v = graph
            .vertex(name)
            .map_err(|_| ParseError::UnknownVertex(name.to_string()))?;
        word.push(if positive {
            Letter::pos(v)
        } else {
            Letter::neg(v)
        });
    }
    Ok(word)
}

pub fn render_word(graph: &Graph, word: &Word) -> String {
    word.display(graph).to_string()
}

const CERT_KEYS: [&str; 7] = ["a", "b", "c", "d", "B", "C", "variant"];

/// Reads a `key: value` block with keys `a b c d B C variant`; sets are
/// comma-separated.
pub fn parse_certificate(graph: &Graph, text: &str) -> Result<Certificate, ParseError> {
    let mut values: [Option<(usize, &str)>; 7] = [None; 7];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| at(line, "expected `key: value`"))?;
        let key = key.trim();
        let slot = CERT_KEYS
            .iter()
            .position(|&k| k == key)
            .ok_or_else(|| at(line, format!("unknown key `{key}`")))?;
        if values[slot].is_some() {
            return Err(at(line, format!("duplicate key `{key}`")));
        }
        values[slot] = Some((line, value.trim()));
    }
    let get = |slot: usize| {
        values[slot].ok_or_else(|| at(1, format!("missing key `{}`", CERT_KEYS[slot])))
    };
    let vertex = |slot: usize| -> Result<Vertex, ParseError> {
        let (line, name) = get(slot)?;
        graph
            .vertex(name)
            .map_err(|_| at(line, format!("unknown vertex `{name}`")))
    };
    let set = |slot: usize| -> Result<VertexSet, ParseError> {
        let (line, list) = get(slot)?;
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                graph
                    .vertex(name)
                    .map_err(|_| at(line, format!("unknown vertex `{name}`")))
            })
            .collect()
    };
    let (vline, tag) = get(6)?;
    let variant =
        Variant::from_tag(tag).ok_or_else(|| at(vline, format!("unknown variant `{tag}`")))?;
    Ok(Certificate {
        a: vertex(0)?,
        b: vertex(1)?,
        c: vertex(2)?,
        d: vertex(3)?,
        b_set: set(4)?,
        c_set: set(5)?,
        variant,
    })
}

pub fn render_certificate(graph: &Graph, cert: &Certificate) -> String {
    let set = |s: VertexSet| graph.set_names(s).join(",");
    format!(
        "a: {}\nb: {}\nc: {}\nd: {}\nB: {}\nC: {}\nvariant: {}\n",
        graph.name(cert.a),
        graph.name(cert.b),
        graph.name(cert.c),
        graph.name(cert.d),
        set(cert.b_set),
        set(cert.c_set),
        cert.variant.tag()
    )
}
