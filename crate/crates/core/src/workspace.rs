//! Line-oriented workspace files.
//!
//! ```text
//! [quiver]
//! vertices = 1, 2, 3, 4
//! a: 1 -> 3
//!
//! [relations]
//! a c - 2 b c
//!
//! [module X]
//! dims = 1, 0, 1, 0
//! a = 1
//!
//! [pair]
//! T = P4, P1, S1, X
//! support_excluded = 2
//! ```
//!
//! `#` starts a comment. Matrix rows are separated by `;`, entries by spaces or commas.
//! Arrows omitted from a module block act by zero. `P<v>`, `S<v>`, `I<v>` name the
//! canonical modules at vertex `v`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, RatMatrix, Rational};
use crate::pathalg::PathAlgebra;
use crate::quiver::{Arrow, Quiver, QuiverPresentation, Relation};
use crate::rep::{injective, projective, simple, Representation};
use crate::tau_tilting::SupportTauTiltingPair;

#[derive(Clone, Debug)]
pub struct Workspace {
    pub algebra: Arc<PathAlgebra>,
    pub modules: Vec<(String, Representation)>,
    pub pair: Option<SupportTauTiltingPair>,
}

impl Workspace {
    /// A user module by name, else a canonical `P`/`S`/`I` module.
    pub fn resolve(&self, name: &str) -> Option<Representation> {
        if let Some((_, m)) = self.modules.iter().find(|(n, _)| n == name) {
            return Some(m.clone());
        }
        canonical(&self.algebra, name)
    }
}

fn canonical(alg: &Arc<PathAlgebra>, name: &str) -> Option<Representation> {
    let mut chars = name.chars();
    let kind = chars.next()?;
    let v = alg.quiver().vertex_index(chars.as_str())?;
    match kind {
        'P' => Some(projective(alg, v)),
        'S' => Some(simple(alg, v)),
        'I' => Some(injective(alg, v)),
        _ => None,
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Section {
    header_line: usize,
    lines: Vec<(usize, String)>,
}

fn list(value: &str) -> Vec<String> {
    value
        .split([',', ' ', '\t'])
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

fn key_value(line: usize, text: &str) -> Result<(String, String)> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| err(line, format!("expected `key = value`, found `{text}`")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let mut quiver_sec: Option<Section> = None;
    let mut relations_sec: Option<Section> = None;
    let mut pair_sec: Option<Section> = None;
    let mut module_secs: Vec<(String, Section)> = Vec::new();
    // which section the current line belongs to
    enum Cur {
        None,
        Quiver,
        Relations,
        Pair,
        Module(usize),
    }
    let mut cur = Cur::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(inner) = body.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| err(line, "unterminated section header"))?
                .trim();
            let fresh = Section {
                header_line: line,
                lines: Vec::new(),
            };
            let slot = match inner {
                "quiver" => {
                    cur = Cur::Quiver;
                    &mut quiver_sec
                }
                "relations" => {
                    cur = Cur::Relations;
                    &mut relations_sec
                }
                "pair" => {
                    cur = Cur::Pair;
                    &mut pair_sec
                }
                _ => {
                    let name = inner
                        .strip_prefix("module")
                        .map(str::trim)
                        .filter(|n| !n.is_empty() && !n.contains(char::is_whitespace))
                        .ok_or_else(|| err(line, format!("unknown section [{inner}]")))?;
                    if module_secs.iter().any(|(n, _)| n == name) {
                        return Err(err(line, format!("module {name} defined twice")));
                    }
                    module_secs.push((name.to_string(), fresh));
                    cur = Cur::Module(module_secs.len() - 1);
                    continue;
                }
            };
            if slot.is_some() {
                return Err(err(line, format!("section [{inner}] appears twice")));
            }
            *slot = Some(fresh);
            continue;
        }
        let entry = (line, body.to_string());
        match cur {
            Cur::None => return Err(err(line, "content before the first section header")),
            Cur::Quiver => quiver_sec.as_mut().unwrap().lines.push(entry),
            Cur::Relations => relations_sec.as_mut().unwrap().lines.push(entry),
            Cur::Pair => pair_sec.as_mut().unwrap().lines.push(entry),
            Cur::Module(k) => module_secs[k].1.lines.push(entry),
        }
    }

    let quiver_sec = quiver_sec.ok_or_else(|| err(1, "missing [quiver] section"))?;
    let quiver = parse_quiver(&quiver_sec)?;
    let relations = match &relations_sec {
        Some(sec) => parse_relations(&quiver, sec)?,
        None => Vec::new(),
    };
    let pres = QuiverPresentation::new(quiver, relations).map_err(|e| {
        let line = relations_sec.as_ref().map_or(quiver_sec.header_line, |s| s.header_line);
        err(line, e.to_string())
    })?;
    let algebra = PathAlgebra::new(pres);

    let mut modules = Vec::new();
    for (name, sec) in &module_secs {
        if canonical(&algebra, name).is_some() {
            return Err(err(sec.header_line, format!("module name {name} shadows a canonical module")));
        }
        modules.push((name.clone(), parse_module(&algebra, sec)?));
    }
    let mut ws = Workspace {
        algebra,
        modules,
        pair: None,
    };
    if let Some(sec) = &pair_sec {
        ws.pair = Some(parse_pair(&ws, sec)?);
    }
    Ok(ws)
}

fn parse_quiver(sec: &Section) -> Result<Quiver> {
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(usize, String, String, String)> = Vec::new();
    for (line, text) in &sec.lines {
        if let Some((label, rest)) = text.split_once(':') {
            let label = label.trim();
            let (s, t) = rest
                .split_once("->")
                .ok_or_else(|| err(*line, format!("expected `label: src -> tgt`, found `{text}`")))?;
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(err(*line, format!("bad arrow label `{label}`")));
            }
            if arrows.iter().any(|(_, l, _, _)| l == label) {
                return Err(err(*line, format!("duplicate arrow label {label}")));
            }
            arrows.push((*line, label.to_string(), s.trim().to_string(), t.trim().to_string()));
        } else {
            let (k, v) = key_value(*line, text)?;
            if k != "vertices" {
                return Err(err(*line, format!("unknown key {k} in [quiver]")));
            }
            if vertices.is_some() {
                return Err(err(*line, "vertices declared twice"));
            }
            let vs = list(&v);
            for (i, a) in vs.iter().enumerate() {
                if vs[..i].contains(a) {
                    return Err(err(*line, format!("duplicate vertex {a}")));
                }
            }
            vertices = Some(vs);
        }
    }
    let vertices = vertices.ok_or_else(|| err(sec.header_line, "[quiver] has no `vertices =` line"))?;
    let mut out = Vec::new();
    for (line, label, s, t) in arrows {
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| err(line, format!("unknown vertex {v}")))
        };
        out.push(Arrow {
            label,
            source: find(&s)?,
            target: find(&t)?,
        });
    }
    Quiver::new(vertices, out).map_err(|e| err(sec.header_line, e.to_string()))
}

fn parse_relations(q: &Quiver, sec: &Section) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (line, text) in &sec.lines {
        let text = text.strip_suffix("= 0").or_else(|| text.strip_suffix("=0")).unwrap_or(text);
        let r = Relation::parse(q, text).map_err(|m| err(*line, m))?;
        let (s, t) = (r.source(), r.target());
        if r.terms.is_empty() {
            continue;
        }
        if r.terms.iter().any(|(_, p)| Some(p.source) != s || Some(p.target) != t) {
            return Err(err(*line, "relation mixes paths with different endpoints"));
        }
        if r.min_len() < 2 {
            return Err(err(*line, "relation has a term of length below two"));
        }
        out.push(r);
    }
    Ok(out)
}

fn parse_matrix(line: usize, text: &str, rows: usize, cols: usize) -> Result<RatMatrix> {
    let row_texts: Vec<&str> = if text.trim().is_empty() { Vec::new() } else { text.split(';').collect() };
    let mut entries: Vec<Vec<Rational>> = Vec::new();
    for r in &row_texts {
        let row = list(r)
            .iter()
            .map(|tok| parse_rational(tok).ok_or_else(|| err(line, format!("`{tok}` is not a rational number"))))
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    if rows == 0 || cols == 0 {
        if entries.iter().any(|r| !r.is_empty()) {
            return Err(err(line, format!("expected a {rows}x{cols} matrix")));
        }
        return Ok(RatMatrix::zeros(rows, cols));
    }
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(err(line, format!("expected a {rows}x{cols} matrix")));
    }
    RatMatrix::from_rows(rows, cols, entries).map_err(|e| err(line, e.to_string()))
}

fn parse_module(alg: &Arc<PathAlgebra>, sec: &Section) -> Result<Representation> {
    let q = alg.quiver();
    let mut dims: Option<Vec<usize>> = None;
    let mut blocks: HashMap<usize, (usize, String)> = HashMap::new();
    for (line, text) in &sec.lines {
        let (k, v) = key_value(*line, text)?;
        if k == "dims" {
            let d = list(&v)
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| err(*line, format!("bad dimension `{s}`"))))
                .collect::<Result<Vec<_>>>()?;
            if d.len() != q.vertex_count() {
                return Err(err(*line, format!("expected {} dimensions", q.vertex_count())));
            }
            dims = Some(d);
        } else {
            let a = q.arrow_index(&k).ok_or_else(|| err(*line, format!("unknown arrow {k}")))?;
            if blocks.insert(a, (*line, v)).is_some() {
                return Err(err(*line, format!("arrow {k} given twice")));
            }
        }
    }
    let dims = dims.ok_or_else(|| err(sec.header_line, "module has no `dims =` line"))?;
    let mut maps = Vec::new();
    for (i, a) in q.arrows().iter().enumerate() {
        let (rows, cols) = (dims[a.target], dims[a.source]);
        maps.push(match blocks.get(&i) {
            Some((line, text)) => parse_matrix(*line, text, rows, cols)?,
            None => RatMatrix::zeros(rows, cols),
        });
    }
    Representation::new(alg.clone(), dims, maps).map_err(|e| err(sec.header_line, e.to_string()))
}

fn parse_pair(ws: &Workspace, sec: &Section) -> Result<SupportTauTiltingPair> {
    let q = ws.algebra.quiver();
    let mut names: Vec<String> = Vec::new();
    let mut summands = Vec::new();
    let mut excluded = Vec::new();
    for (line, text) in &sec.lines {
        let (k, v) = key_value(*line, text)?;
        let items: Vec<String> = list(&v).into_iter().filter(|s| s != "0").collect();
        match k.as_str() {
            "T" => {
                for n in items {
                    let m = ws.resolve(&n).ok_or_else(|| err(*line, format!("unknown module {n}")))?;
                    summands.push(m);
                    names.push(n);
                }
            }
            "support_excluded" | "P" => {
                for v in items {
                    let v = v.strip_prefix('P').filter(|s| q.vertex_index(s).is_some()).unwrap_or(&v);
                    let i = q.vertex_index(v).ok_or_else(|| err(*line, format!("unknown vertex {v}")))?;
                    if !excluded.contains(&i) {
                        excluded.push(i);
                    }
                }
            }
            _ => return Err(err(*line, format!("unknown key {k} in [pair]"))),
        }
    }
    Ok(SupportTauTiltingPair::new(ws.algebra.clone(), summands, names, excluded))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "\
[quiver]
vertices = 1, 2, 3, 4
a: 1 -> 3
b: 2 -> 3
c: 3 -> 4

[pair]
T = P4, P1, S1
support_excluded = 2
";

    #[test]
    fn parses_worked_pair() {
        let ws = parse_workspace(WORKED).unwrap();
        assert_eq!(ws.algebra.dim(), 4 + 3 + 2);
        let pair = ws.pair.unwrap();
        assert_eq!(pair.names, vec!["P4", "P1", "S1"]);
        assert_eq!(pair.support_excluded, vec![1]);
        assert_eq!(pair.summands[2].dims(), &[1, 0, 0, 0]);
        assert!(crate::tau_tilting::is_support_tau_tilting_pair(&pair, 0).unwrap().holds());
    }

    #[test]
    fn empty_relations_is_hereditary() {
        let ws = parse_workspace("[quiver]\nvertices = x y\nf: x -> y\n[relations]\n").unwrap();
        assert!(ws.algebra.presentation().relations().is_empty());
        assert_eq!(ws.algebra.dim(), 3);
    }

    #[test]
    fn duplicate_arrow_reports_its_line() {
        let e = parse_workspace("[quiver]\nvertices = 1 2\na: 1 -> 2\na: 2 -> 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
    }

    #[test]
    fn module_blocks() {
        let text = "[quiver]\nvertices = 1 2 3\na: 1 -> 2\nb: 2 -> 3\n[relations]\na b\n\
                    [module M]\ndims = 1, 2, 0\na = 1; -1/2\n";
        let ws = parse_workspace(text).unwrap();
        let m = ws.resolve("M").unwrap();
        assert_eq!(m.dims(), &[1, 2, 0]);
        assert!(ws.resolve("P3").is_some());
        assert!(ws.resolve("Q1").is_none());
    }

    #[test]
    fn errors_are_line_addressed() {
        let cases = [
            ("[quiver]\nvertices = 1 2\na: 1 -> 3\n", 3),
            ("[quiver]\nvertices = 1 2\na: 1 -> 2\n[relations]\na z\n", 5),
            ("[quiver]\nvertices = 1 2\na: 1 -> 2\n[module M]\ndims = 1 1\na = 1 2\n", 6),
            ("[quiver]\nvertices = 1 2\na: 1 -> 2\n[module M]\ndims = 1 1\na = x\n", 6),
            ("[quiver]\nvertices = 1 2\n[pair]\nT = P1, Q7\n", 4),
            ("stray\n[quiver]\n", 1),
        ];
        for (text, line) in cases {
            match parse_workspace(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn module_must_satisfy_relations() {
        let text = "[quiver]\nvertices = 1 2 3\na: 1 -> 2\nb: 2 -> 3\n[relations]\na b\n\
                    [module M]\ndims = 1 1 1\na = 1\nb = 1\n";
        assert!(matches!(parse_workspace(text), Err(Error::Parse { line: 7, .. })));
    }
}
