//! Text form of a kernel trace, one record per line:
//!
//! ```text
//! rppk-trace 1
//! eps 1/10
//! eps1 1/10
//! eps2 0
//! gamma inf
//! input_vertices 12
//! vertex_map 0 1 2 5
//! matching 0,1,5,1
//! extract 7 noncut removed 0,7,3,1 7,9,2,1 added 0,9,5,1
//! strip 0,1,3,1 1,2,3,1 0,2,3,1
//! delete 4 5 6
//! quantum 5/4 13 10
//! ```
//!
//! Edges are written `u,v,weight,multiplicity`.

use std::fmt::Write;

use rppk_core::graph::{Edge, EdgeMultiset};
use rppk_core::kernel::{ExtractionCase, Gamma, KernelTrace, TraceStep};
use rppk_core::ratio::{parse_rational, Rational};

use crate::error::ParseError;

const MAGIC: &str = "rppk-trace 1";

fn edges(out: &mut String, m: &EdgeMultiset) {
    for (e, k) in m.iter() {
        write!(out, " {},{},{},{}", e.u, e.v, e.weight, k).unwrap();
    }
}

fn case_name(c: ExtractionCase) -> &'static str {
    match c {
        ExtractionCase::NonCut => "noncut",
        ExtractionCase::TwoBlocks => "two-blocks",
        ExtractionCase::TwoBlocksThenNonCut => "two-blocks-noncut",
    }
}

pub fn write_trace(trace: &KernelTrace) -> String {
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "eps {}", trace.eps).unwrap();
    writeln!(out, "eps1 {}", trace.eps1).unwrap();
    writeln!(out, "eps2 {}", trace.eps2).unwrap();
    match trace.gamma {
        Gamma::Infinite => writeln!(out, "gamma inf").unwrap(),
        Gamma::Finite(g) => writeln!(out, "gamma {g}").unwrap(),
    }
    writeln!(out, "input_vertices {}", trace.input_vertices).unwrap();
    out.push_str("vertex_map");
    for v in &trace.vertex_map {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for step in &trace.steps {
        match step {
            TraceStep::AddedMatching(m) => {
                out.push_str("matching");
                edges(&mut out, m);
            }
            TraceStep::Extraction {
                vertex,
                case,
                removed,
                added,
            } => {
                write!(out, "extract {vertex} {} removed", case_name(*case)).unwrap();
                edges(&mut out, removed);
                out.push_str(" added");
                edges(&mut out, added);
            }
            TraceStep::StrippedCycle(c) => {
                out.push_str("strip");
                edges(&mut out, c);
            }
            TraceStep::DeletedVertices(vs) => {
                out.push_str("delete");
                for v in vs {
                    write!(out, " {v}").unwrap();
                }
            }
            TraceStep::WeightQuantum { q, beta, n } => {
                write!(out, "quantum {q} {beta} {n}").unwrap()
            }
        }
        out.push('\n');
    }
    out
}

fn rational(s: Option<&str>, line: usize) -> Result<Rational, ParseError> {
    let s = s.ok_or_else(|| ParseError::new(line, "missing value"))?;
    parse_rational(s).ok_or_else(|| ParseError::new(line, format!("bad rational {s:?}")))
}

fn int<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| ParseError::new(line, format!("bad number {s:?}")))
}

fn edge(tok: &str, line: usize) -> Result<(Edge, usize), ParseError> {
    let parts: Vec<&str> = tok.split(',').collect();
    if parts.len() != 4 {
        return Err(ParseError::new(line, format!("bad edge {tok:?}")));
    }
    let k: usize = int(parts[3], line)?;
    if k == 0 {
        return Err(ParseError::new(line, "multiplicity 0"));
    }
    Ok((
        Edge::new(
            int(parts[0], line)?,
            int(parts[1], line)?,
            int(parts[2], line)?,
        ),
        k,
    ))
}

fn edge_set<'a>(
    toks: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<EdgeMultiset, ParseError> {
    let mut m = EdgeMultiset::new();
    for t in toks {
        let (e, k) = edge(t, line)?;
        m.insert_n(e, k);
    }
    Ok(m)
}

pub fn parse_trace(text: &str) -> Result<KernelTrace, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((n, l)) => return Err(ParseError::new(n, format!("expected {MAGIC:?}, got {l:?}"))),
        None => return Err(ParseError::new(1, "empty trace")),
    }
    let mut eps = None;
    let mut eps1 = None;
    let mut eps2 = None;
    let mut gamma = None;
    let mut input_vertices = None;
    let mut vertex_map = None;
    let mut steps = Vec::new();
    for (n, l) in lines {
        let mut toks = l.split_whitespace();
        let head = toks.next().unwrap_or("");
        match head {
            "eps" => eps = Some(rational(toks.next(), n)?),
            "eps1" => eps1 = Some(rational(toks.next(), n)?),
            "eps2" => eps2 = Some(rational(toks.next(), n)?),
            "gamma" => {
                gamma = Some(match toks.next() {
                    Some("inf") => Gamma::Infinite,
                    other => Gamma::Finite(rational(other, n)?),
                })
            }
            "input_vertices" => input_vertices = Some(int(toks.next().unwrap_or(""), n)?),
            "vertex_map" => {
                vertex_map = Some(toks.map(|t| int(t, n)).collect::<Result<Vec<usize>, _>>()?)
            }
            "matching" => steps.push(TraceStep::AddedMatching(edge_set(toks, n)?)),
            "strip" => steps.push(TraceStep::StrippedCycle(edge_set(toks, n)?)),
            "delete" => steps.push(TraceStep::DeletedVertices(
                toks.map(|t| int(t, n)).collect::<Result<_, _>>()?,
            )),
            "quantum" => {
                let q = rational(toks.next(), n)?;
                let beta = int(toks.next().unwrap_or(""), n)?;
                let nn = int(toks.next().unwrap_or(""), n)?;
                steps.push(TraceStep::WeightQuantum { q, beta, n: nn });
            }
            "extract" => {
                let vertex = int(toks.next().unwrap_or(""), n)?;
                let case = match toks.next() {
                    Some("noncut") => ExtractionCase::NonCut,
                    Some("two-blocks") => ExtractionCase::TwoBlocks,
                    Some("two-blocks-noncut") => ExtractionCase::TwoBlocksThenNonCut,
                    other => {
                        return Err(ParseError::new(
                            n,
                            format!("unknown extraction case {other:?}"),
                        ))
                    }
                };
                if toks.next() != Some("removed") {
                    return Err(ParseError::new(n, "expected `removed`"));
                }
                let rest: Vec<&str> = toks.collect();
                let split = rest
                    .iter()
                    .position(|&t| t == "added")
                    .ok_or_else(|| ParseError::new(n, "expected `added`"))?;
                let removed = edge_set(rest[..split].iter().copied(), n)?;
                let added = edge_set(rest[split + 1..].iter().copied(), n)?;
                steps.push(TraceStep::Extraction {
                    vertex,
                    case,
                    removed,
                    added,
                });
            }
            other => return Err(ParseError::new(n, format!("unknown record {other:?}"))),
        }
    }
    let missing = |what: &str| ParseError::new(1, format!("missing {what}"));
    Ok(KernelTrace {
        eps: eps.ok_or_else(|| missing("eps"))?,
        eps1: eps1.ok_or_else(|| missing("eps1"))?,
        eps2: eps2.ok_or_else(|| missing("eps2"))?,
        gamma: gamma.ok_or_else(|| missing("gamma"))?,
        input_vertices: input_vertices.ok_or_else(|| missing("input_vertices"))?,
        steps,
        vertex_map: vertex_map.ok_or_else(|| missing("vertex_map"))?,
    })
}
