//! Quivers, paths and admissible presentations.
//!
//! Paths compose left to right: for arrows `a: i -> j` and `b: j -> l` the
//! path `a b` first traverses `a`, then `b`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::pathalg;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v}")));
            }
        }
        let mut labels = HashMap::new();
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} uses an undeclared vertex",
                    a.label
                )));
            }
            if labels.insert(a.label.clone(), ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label {}", a.label)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from vertex labels and `(label, source, target)` triples.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            vs.iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {l}")))
        };
        let arrows = arrows
            .iter()
            .map(|(l, s, t)| {
                Ok(Arrow {
                    label: l.to_string(),
                    source: find(s)?,
                    target: find(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vs, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// `counts[i][j]` = number of arrows `i -> j`.
    pub fn arrow_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    /// The quiver with every arrow reversed (labels kept).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Full subquiver on the vertices not in `removed`, with vertex indices renumbered.
    pub fn delete_vertices(&self, removed: &[usize]) -> (Quiver, Vec<Option<usize>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if !removed.contains(&i) {
                map[i] = Some(vertices.len());
                vertices.push(v.clone());
            }
        }
        let arrows = self
            .arrows
            .iter()
            .filter_map(|a| {
                Some(Arrow {
                    label: a.label.clone(),
                    source: map[a.source]?,
                    target: map[a.target]?,
                })
            })
            .collect();
        (Quiver { vertices, arrows }, map)
    }

    /// All paths of exactly `len` arrows, trivial paths for `len == 0`.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut current: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &current {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            current = next;
        }
        current
    }

    /// Lines `label: src -> tgt`, sorted.
    pub fn render(&self) -> String {
        let mut lines: Vec<String> = self
            .arrows
            .iter()
            .map(|a| {
                format!(
                    "{}: {} -> {}",
                    a.label, self.vertices[a.source], self.vertices[a.target]
                )
            })
            .collect();
        lines.sort();
        lines.join("\n")
    }

    pub fn path_string(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].label.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

/// A path in a quiver; trivial paths have no arrows and equal source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Path {
        let ar = &q.arrows[a];
        Path {
            source: ar.source,
            target: ar.target,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if they meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().copied().collect(),
        }
    }
}

/// A rational linear combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rational, Path)>) -> Relation {
        let mut merged: Vec<(Rational, Path)> = Vec::new();
        for (c, p) in terms {
            match merged.iter_mut().find(|(_, q)| *q == p) {
                Some(slot) => slot.0 += c,
                None => merged.push((c, p)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Relation { terms: merged }
    }

    pub fn source(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.source)
    }

    pub fn target(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.target)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.reversed()))
                .collect(),
        }
    }

    /// Renders as signed combination of space-separated arrow words, e.g. `a b - 2 c d`.
    pub fn render(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format_rational(&mag));
                out.push(' ');
            }
            out.push_str(&q.path_string(p));
        }
        out
    }

    /// Parses `a b - 2/3 c d + e f` against the arrow labels of `q`.
    pub fn parse(q: &Quiver, text: &str) -> std::result::Result<Relation, String> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        let mut coef: Option<Rational> = None;
        let mut arrows: Vec<usize> = Vec::new();
        let flush = |sign: &Rational,
                     coef: &mut Option<Rational>,
                     arrows: &mut Vec<usize>,
                     terms: &mut Vec<(Rational, Path)>|
         -> std::result::Result<(), String> {
            if arrows.is_empty() {
                if coef.is_some() {
                    return Err("coefficient without a path".into());
                }
                return Ok(());
            }
            let mut path = Path::arrow(q, arrows[0]);
            for &a in &arrows[1..] {
                path = path.concat(&Path::arrow(q, a)).ok_or_else(|| {
                    format!("arrows do not compose at {}", q.arrows[a].label)
                })?;
            }
            let c = coef.take().unwrap_or_else(Rational::one);
            terms.push((sign * c, path));
            arrows.clear();
            Ok(())
        };
        let spaced = text
            .replace('+', " + ")
            .replace('-', " - ")
            .replace(['*', '·'], " ");
        let mut expect_term = true;
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if !(expect_term && arrows.is_empty() && coef.is_none() && terms.is_empty()) {
                        flush(&sign, &mut coef, &mut arrows, &mut terms)?;
                    }
                    sign = if tok == "-" { -Rational::one() } else { Rational::one() };
                    expect_term = true;
                }
                _ => {
                    if let Some(a) = q.arrow_index(tok) {
                        arrows.push(a);
                        expect_term = false;
                    } else if let Some(c) = parse_rational(tok) {
                        if !arrows.is_empty() || coef.is_some() {
                            return Err(format!("misplaced coefficient {tok}"));
                        }
                        coef = Some(c);
                    } else {
                        return Err(format!("unknown arrow {tok}"));
                    }
                }
            }
        }
        flush(&sign, &mut coef, &mut arrows, &mut terms)?;
        if terms.is_empty() {
            return Err("empty relation".into());
        }
        Ok(Relation::new(terms))
    }
}

/// Default cap on the path length searched when certifying admissibility.
pub const DEFAULT_LENGTH_CAP: usize = 16;

/// A quiver together with admissible relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverPresentation {
    quiver: Quiver,
    relations: Vec<Relation>,
    nilpotency_bound: usize,
}

impl QuiverPresentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self> {
        Self::with_length_cap(quiver, relations, DEFAULT_LENGTH_CAP)
    }

    pub fn hereditary(quiver: Quiver) -> Result<Self> {
        Self::new(quiver, Vec::new())
    }

    pub fn with_length_cap(quiver: Quiver, relations: Vec<Relation>, cap: usize) -> Result<Self> {
        let relations: Vec<Relation> = relations
            .into_iter()
            .map(|r| Relation::new(r.terms))
            .filter(|r| !r.terms.is_empty())
            .collect();
        for r in &relations {
            let (s, t) = (r.source().unwrap(), r.target().unwrap());
            if r.terms.iter().any(|(_, p)| p.source != s || p.target != t) {
                return Err(Error::NonAdmissible(format!(
                    "relation {} mixes non-parallel paths",
                    r.render(&quiver)
                )));
            }
            if r.min_len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation {} has a term of length < 2",
                    r.render(&quiver)
                )));
            }
        }
        let nilpotency_bound = pathalg::nilpotency_bound(&quiver, &relations, cap)?;
        Ok(QuiverPresentation {
            quiver,
            relations,
            nilpotency_bound,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Smallest `n` with (arrow ideal)^n inside the relation ideal.
    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn opposite(&self) -> QuiverPresentation {
        QuiverPresentation {
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
            nilpotency_bound: self.nilpotency_bound,
        }
    }
}

impl fmt::Display for QuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.quiver.vertices.join(" "))?;
        writeln!(f, "arrows:")?;
        for line in self.quiver.render().lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "relations:")?;
        if self.relations.is_empty() {
            writeln!(f, "  (none)")?;
        }
        for r in &self.relations {
            writeln!(f, "  {}", r.render(&self.quiver))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, q};

    fn linear4() -> Quiver {
        Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "4", "3"), ("b", "3", "2"), ("c", "2", "1")],
        )
        .unwrap()
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Quiver::from_labels(&["1", "1"], &[]).is_err());
        assert!(Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
        assert!(Quiver::from_labels(&["1"], &[("a", "1", "9")]).is_err());
    }

    #[test]
    fn relation_parse_and_render() {
        let q4 = linear4();
        let r = Relation::parse(&q4, "a b").unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.render(&q4), "a b");
        let q2 = Quiver::from_labels(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "3")],
        )
        .unwrap();
        let r = Relation::parse(&q2, "a b - 2/3 c d").unwrap();
        assert_eq!(r.terms[1].0, frac(-2, 3));
        assert_eq!(r.render(&q2), "a b - 2/3 c d");
        let r = Relation::parse(&q2, "-a*b + 3·c d").unwrap();
        assert_eq!(r.terms[0].0, q(-1));
        assert_eq!(r.terms[1].0, q(3));
        assert!(Relation::parse(&q2, "a z").is_err());
        assert!(Relation::parse(&q2, "b a").is_err());
    }

    #[test]
    fn short_relations_rejected() {
        let q4 = linear4();
        let r = Relation::parse(&q4, "a").unwrap();
        assert!(matches!(
            QuiverPresentation::new(q4, vec![r]),
            Err(Error::NonAdmissible(_))
        ));
    }

    #[test]
    fn non_nilpotent_cycle_rejected() {
        let q = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(matches!(
            QuiverPresentation::with_length_cap(q.clone(), vec![], 6),
            Err(Error::NonAdmissible(_))
        ));
        let r = Relation::parse(&q, "x x x").unwrap();
        assert_eq!(QuiverPresentation::new(q, vec![r]).unwrap().nilpotency_bound(), 3);
    }

    #[test]
    fn path_counts() {
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        assert_eq!(q.paths_of_length(0).len(), 4);
        assert_eq!(q.paths_of_length(1).len(), 3);
        assert_eq!(q.paths_of_length(2).len(), 2);
        assert_eq!(q.paths_of_length(3).len(), 0);
    }
}
