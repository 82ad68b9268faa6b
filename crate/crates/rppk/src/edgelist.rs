//! The canonical edge-list format.
//!
//! ```text
//! # optional comments
//! v <vertex count>
//! e <u> <v> <weight> <required 0|1> <multiplicity>
//! ```
//!
//! Ids are 0-based. The writer emits one line per distinct
//! (u, v, weight, required), sorted, so parsing and writing is the identity
//! on written files.

use std::collections::BTreeMap;
use std::fmt::Write;

use rppk_core::graph::{Edge, EdgeMultiset, WeightedMultigraph};
use rppk_core::RppInstance;

use crate::error::ParseError;

pub fn parse_edgelist(text: &str) -> Result<RppInstance, ParseError> {
    let mut count: Option<usize> = None;
    let mut graph = EdgeMultiset::new();
    let mut required = EdgeMultiset::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match fields[0] {
            "v" => {
                if count.is_some() {
                    return Err(ParseError::new(line, "duplicate header"));
                }
                if fields.len() != 2 {
                    return Err(ParseError::new(line, "expected `v <count>`"));
                }
                count = Some(number(fields[1], line, "vertex count")?);
            }
            "e" => {
                let n = count.ok_or_else(|| ParseError::new(line, "edge before the `v` header"))?;
                if fields.len() != 6 {
                    return Err(ParseError::new(
                        line,
                        "expected `e <u> <v> <weight> <required> <multiplicity>`",
                    ));
                }
                let u: usize = number(fields[1], line, "vertex")?;
                let v: usize = number(fields[2], line, "vertex")?;
                if fields[3].starts_with('-') {
                    return Err(ParseError::new(line, "negative weight"));
                }
                let w: u64 = number(fields[3], line, "weight")?;
                let req = match fields[4] {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(ParseError::new(
                            line,
                            format!("required flag must be 0 or 1, got {other:?}"),
                        ))
                    }
                };
                let m: usize = number(fields[5], line, "multiplicity")?;
                if m == 0 {
                    return Err(ParseError::new(line, "multiplicity 0"));
                }
                if u >= n || v >= n {
                    return Err(ParseError::new(
                        line,
                        format!("vertex {} outside 0..{n}", u.max(v)),
                    ));
                }
                let e = Edge::new(u, v, w);
                graph.insert_n(e, m);
                if req {
                    required.insert_n(e, m);
                }
            }
            other => return Err(ParseError::new(line, format!("unknown record {other:?}"))),
        }
    }
    let n = count.ok_or_else(|| ParseError::new(last.max(1), "missing `v` header"))?;
    let g = WeightedMultigraph::new(n, graph).map_err(|e| ParseError::new(last, e.to_string()))?;
    RppInstance::new(g, required).map_err(|e| ParseError::new(last, e.to_string()))
}

fn number<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| ParseError::new(line, format!("bad {what} {s:?}")))
}

pub fn write_edgelist(inst: &RppInstance) -> String {
    let mut rows: BTreeMap<(usize, usize, u64, u8), usize> = BTreeMap::new();
    for (e, g) in inst.graph().edges().iter() {
        let r = inst.required().count(e);
        if r > 0 {
            rows.insert((e.u, e.v, e.weight, 1), r);
        }
        if g > r {
            rows.insert((e.u, e.v, e.weight, 0), g - r);
        }
    }
    let mut out = String::new();
    writeln!(out, "v {}", inst.graph().vertex_count()).unwrap();
    for ((u, v, w, r), m) in rows {
        writeln!(out, "e {u} {v} {w} {r} {m}").unwrap();
    }
    out
}
