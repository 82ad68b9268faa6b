//! Reader for the text dialect of the Corberán RPP benchmark files:
//!
//! ```text
//! NOMBRE : ALBA_3_1
//! COMENTARIO : ...
//! VERTICES : 116
//! ARISTAS_REQ : 51
//! ARISTAS_NOREQ : 123
//! LISTA_ARISTAS_REQ :
//! ( 1, 2)  coste 68
//! LISTA_ARISTAS_NOREQ :
//! ( 2, 5)  coste 127
//! ```
//!
//! Keys are matched case-insensitively ignoring punctuation, with English
//! synonyms. An edge line is any line inside an edge list carrying at least
//! three numbers: the two 1-based endpoints and the cost. Unknown keys and
//! count mismatches are reported as warnings.

use rppk_core::graph::{Edge, EdgeMultiset, WeightedMultigraph};
use rppk_core::RppInstance;

use crate::error::ParseError;

#[derive(Debug, Clone)]
pub struct CorberanFile {
    pub name: Option<String>,
    pub instance: RppInstance,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Required,
    Optional,
}

enum Key {
    Name,
    Vertices,
    RequiredCount,
    OptionalCount,
    RequiredList,
    OptionalList,
    Ignored,
    End,
    Unknown,
}

fn classify(key: &str) -> Key {
    let k: String = key
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_uppercase();
    let non_required = k.contains("NOREQ") || k.contains("NONREQ") || k.contains("NOTREQ");
    let is_list = k.starts_with("LIST");
    match k.as_str() {
        "NOMBRE" | "NAME" => Key::Name,
        "VERTICES" | "NODOS" | "NODES" | "VERTEX" | "NUMVERTICES" | "NUMNODES" | "N" => {
            Key::Vertices
        }
        "COMENTARIO" | "COMMENT" | "DEPOSITO" | "DEPOT" | "TIPO" | "TYPE" | "ARISTAS" | "EDGES" => {
            Key::Ignored
        }
        "END" | "FIN" | "EOF" => Key::End,
        _ if is_list && non_required => Key::OptionalList,
        _ if is_list && k.contains("REQ") => Key::RequiredList,
        _ if non_required => Key::OptionalCount,
        _ if k.contains("REQ") => Key::RequiredCount,
        _ => Key::Unknown,
    }
}

/// Numbers on a line, in order; decimals are kept as text for the caller.
fn numbers(line: &str) -> Vec<&str> {
    line.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-'))
        .filter(|t| t.chars().any(|c| c.is_ascii_digit()))
        .collect()
}

fn count_value(value: &str, line: usize) -> Result<usize, ParseError> {
    let v = value.trim();
    v.parse()
        .map_err(|_| ParseError::new(line, format!("expected a count, got {v:?}")))
}

pub fn parse_corberan(text: &str) -> Result<CorberanFile, ParseError> {
    let mut name = None;
    let mut declared: Option<usize> = None;
    let mut want_req = None;
    let mut want_opt = None;
    let mut section = Section::Header;
    let mut warnings = Vec::new();
    let mut graph = EdgeMultiset::new();
    let mut required = EdgeMultiset::new();
    let (mut seen_req, mut seen_opt) = (0usize, 0usize);
    let mut last = 1;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with("//") {
            continue;
        }
        let starts_alpha = t.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if starts_alpha {
            let (key, value) = match t.split_once(':') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => match t.split_once(char::is_whitespace) {
                    Some((k, v)) => (k.trim(), v.trim()),
                    None => (t, ""),
                },
            };
            match classify(key) {
                Key::Name => name = Some(value.to_string()),
                Key::Vertices => declared = Some(count_value(value, line)?),
                Key::RequiredCount => want_req = Some(count_value(value, line)?),
                Key::OptionalCount => want_opt = Some(count_value(value, line)?),
                Key::RequiredList => section = Section::Required,
                Key::OptionalList => section = Section::Optional,
                Key::Ignored => {}
                Key::End => break,
                Key::Unknown => warnings.push(format!("line {line}: unknown key {key:?} ignored")),
            }
            continue;
        }
        if section == Section::Header {
            return Err(ParseError::new(line, "edge line before any edge list"));
        }
        let n = declared.ok_or_else(|| ParseError::new(line, "vertex count not declared"))?;
        let nums = numbers(t);
        if nums.len() < 3 {
            return Err(ParseError::new(line, "expected two endpoints and a cost"));
        }
        let id = |s: &str| -> Result<usize, ParseError> {
            let v: usize = s
                .parse()
                .map_err(|_| ParseError::new(line, format!("bad vertex {s:?}")))?;
            if v == 0 || v > n {
                return Err(ParseError::new(
                    line,
                    format!("vertex {v} not declared (1..={n})"),
                ));
            }
            Ok(v - 1)
        };
        let (a, b) = (id(nums[0])?, id(nums[1])?);
        let cost = cost_value(nums[2], line, &mut warnings)?;
        let e = Edge::new(a, b, cost);
        graph.insert(e);
        if section == Section::Required {
            required.insert(e);
            seen_req += 1;
        } else {
            seen_opt += 1;
        }
    }
    let n = declared.ok_or_else(|| ParseError::new(last, "vertex count not declared"))?;
    if let Some(w) = want_req.filter(|&w| w != seen_req) {
        warnings.push(format!("{w} required edges declared, {seen_req} listed"));
    }
    if let Some(w) = want_opt.filter(|&w| w != seen_opt) {
        warnings.push(format!(
            "{w} non-required edges declared, {seen_opt} listed"
        ));
    }
    let g = WeightedMultigraph::new(n, graph).map_err(|e| ParseError::new(last, e.to_string()))?;
    let instance =
        RppInstance::new(g, required).map_err(|e| ParseError::new(last, e.to_string()))?;
    Ok(CorberanFile {
        name,
        instance,
        warnings,
    })
}

fn cost_value(s: &str, line: usize, warnings: &mut Vec<String>) -> Result<u64, ParseError> {
    if s.starts_with('-') {
        return Err(ParseError::new(line, "negative cost"));
    }
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s
        .parse()
        .map_err(|_| ParseError::new(line, format!("bad cost {s:?}")))?;
    warnings.push(format!("line {line}: fractional cost {s} rounded"));
    Ok(f.round() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "NOMBRE : TINY\nCOMENTARIO : hand made\nVERTICES : 4\nARISTAS_REQ : 2\nARISTAS_NOREQ : 2\n\
LISTA_ARISTAS_REQ :\n( 1, 2)  coste 3\n( 3, 4)  coste 5\nLISTA_ARISTAS_NOREQ :\n( 2, 3)  coste 1\n( 1, 4) coste 9\nEND\n";

    #[test]
    fn reads_sections_and_remaps_ids() {
        let f = parse_corberan(SAMPLE).unwrap();
        assert_eq!(f.name.as_deref(), Some("TINY"));
        assert!(f.warnings.is_empty());
        let inst = f.instance;
        assert_eq!(inst.graph().vertex_count(), 4);
        assert_eq!(
            inst.required().units(),
            vec![Edge::new(0, 1, 3), Edge::new(2, 3, 5)]
        );
        assert_eq!(inst.graph().edges().len(), 4);
        assert_eq!((inst.b(), inst.c()), (4, 2));
    }

    #[test]
    fn tolerates_synonyms_and_spacing() {
        let text =
            "name: x\nnodes 3\nrequired_edges: 1\nunknown_key: 4\nlist_required_edges\n1 2 4\n\
list_nonrequired_edges\n2   3   2.5\n";
        let f = parse_corberan(text).unwrap();
        assert_eq!(f.instance.required().total_weight(), 4);
        assert_eq!(f.instance.graph().edges().total_weight(), 7);
        assert_eq!(f.warnings.len(), 2);
    }

    #[test]
    fn empty_required_list() {
        let f = parse_corberan(
            "VERTICES : 2\nLISTA_ARISTAS_REQ :\nLISTA_ARISTAS_NOREQ :\n(1,2) coste 1\n",
        )
        .unwrap();
        assert!(f.instance.required().is_empty());
        assert_eq!(f.instance.c(), 0);
    }

    #[test]
    fn errors_name_the_line() {
        assert_eq!(
            parse_corberan("VERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,3) coste 1\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(
            parse_corberan("VERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,2)\n")
                .unwrap_err()
                .line,
            3
        );
        assert_eq!(
            parse_corberan("VERTICES : 2\n(1,2) coste 1\n")
                .unwrap_err()
                .line,
            2
        );
        assert_eq!(parse_corberan("VERTICES : x\n").unwrap_err().line, 1);
    }
}
