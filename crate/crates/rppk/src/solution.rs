//! Solutions as text: either an Eulerian extension
//!
//! ```text
//! extension
//! e <u> <v> <weight> <multiplicity>
//! ```
//!
//! or a closed walk listed step by step from its start vertex
//!
//! ```text
//! walk <start>
//! s <u> <v> <weight>
//! ```

use std::fmt::Write;

use rppk_core::graph::{ClosedWalk, Edge, EdgeMultiset};
use rppk_core::solver::KernelSolution;

use crate::error::ParseError;

pub fn write_extension(s: &EdgeMultiset) -> String {
    let mut out = String::from("extension\n");
    for (e, m) in s.iter() {
        writeln!(out, "e {} {} {} {m}", e.u, e.v, e.weight).unwrap();
    }
    out
}

pub fn write_walk(w: &ClosedWalk) -> String {
    let start = w.vertices().first().copied().unwrap_or(0);
    let mut out = format!("walk {start}\n");
    for (i, e) in w.edges().iter().enumerate() {
        let (a, b) = (w.vertices()[i], w.vertices()[i + 1]);
        writeln!(out, "s {a} {b} {}", e.weight).unwrap();
    }
    out
}

fn num<T: std::str::FromStr>(s: Option<&str>, line: usize) -> Result<T, ParseError> {
    let s = s.ok_or_else(|| ParseError::new(line, "missing field"))?;
    s.parse()
        .map_err(|_| ParseError::new(line, format!("bad number {s:?}")))
}

pub fn parse_solution(text: &str) -> Result<KernelSolution, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (n, head) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty solution"))?;
    let mut toks = head.split_whitespace();
    match toks.next() {
        Some("extension") => {
            let mut s = EdgeMultiset::new();
            for (n, l) in lines {
                let mut t = l.split_whitespace();
                if t.next() != Some("e") {
                    return Err(ParseError::new(
                        n,
                        "expected `e <u> <v> <weight> <multiplicity>`",
                    ));
                }
                let e = Edge::new(num(t.next(), n)?, num(t.next(), n)?, num(t.next(), n)?);
                let m: usize = num(t.next(), n)?;
                if m == 0 {
                    return Err(ParseError::new(n, "multiplicity 0"));
                }
                s.insert_n(e, m);
            }
            Ok(KernelSolution::Extension(s))
        }
        Some("walk") => {
            let start: usize = num(toks.next(), n)?;
            let mut vertices = vec![start];
            let mut steps = Vec::new();
            for (n, l) in lines {
                let mut t = l.split_whitespace();
                if t.next() != Some("s") {
                    return Err(ParseError::new(n, "expected `s <u> <v> <weight>`"));
                }
                let (a, b, w): (usize, usize, u64) =
                    (num(t.next(), n)?, num(t.next(), n)?, num(t.next(), n)?);
                if vertices.last() != Some(&a) {
                    return Err(ParseError::new(
                        n,
                        format!("step leaves {a}, walk is at {}", vertices.last().unwrap()),
                    ));
                }
                vertices.push(b);
                steps.push(Edge::new(a, b, w));
            }
            if steps.is_empty() {
                return Ok(KernelSolution::Tour(ClosedWalk::default()));
            }
            let walk =
                ClosedWalk::new(vertices, steps).map_err(|e| ParseError::new(n, e.to_string()))?;
            Ok(KernelSolution::Tour(walk))
        }
        _ => Err(ParseError::new(n, "expected `extension` or `walk <start>`")),
    }
}
