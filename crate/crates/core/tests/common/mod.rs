#![allow(dead_code)]

use std::sync::Arc;

use silted::pathalg::PathAlgebra;
use silted::quiver::{Quiver, QuiverPresentation, Relation};
use silted::linalg::{RatMatrix, Rational};
use silted::rep::{projective, simple, Representation};
use silted::tau_tilting::SupportTauTiltingPair;

pub fn path_algebra(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str]) -> Arc<PathAlgebra> {
    let q = Quiver::from_labels(vertices, arrows).unwrap();
    let rels = relations.iter().map(|r| Relation::parse(&q, r).unwrap()).collect();
    PathAlgebra::new(QuiverPresentation::new(q, rels).unwrap())
}

pub fn a1() -> Arc<PathAlgebra> {
    path_algebra(&["1"], &[], &[])
}

pub fn a2() -> Arc<PathAlgebra> {
    path_algebra(&["1", "2"], &[("a", "1", "2")], &[])
}

pub fn a3() -> Arc<PathAlgebra> {
    path_algebra(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")], &[])
}

/// `1 -> 3 <- 2`, `3 -> 4`.
pub fn h() -> Arc<PathAlgebra> {
    path_algebra(&["1", "2", "3", "4"], &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")], &[])
}

/// `(P4 ⊕ P1 ⊕ S1, P2)` over `h()`.
pub fn example_pair() -> SupportTauTiltingPair {
    let h = h();
    SupportTauTiltingPair::new(
        h.clone(),
        vec![projective(&h, 3), projective(&h, 0), simple(&h, 0)],
        vec!["P4".into(), "P1".into(), "S1".into()],
        vec![1],
    )
}

/// Number of arrows `i -> j` for the given edge list on `n` vertices.
pub fn arrow_matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut m = vec![vec![0; n]; n];
    for &(s, t) in edges {
        m[s][t] += 1;
    }
    m
}

/// Hereditary test algebras indexed for random generation: A2, A3, D4 and A3 with a sink in the middle.
pub fn hereditary(idx: usize) -> Arc<PathAlgebra> {
    match idx % 4 {
        0 => a2(),
        1 => a3(),
        2 => h(),
        _ => path_algebra(&["1", "2", "3"], &[("a", "1", "2"), ("b", "3", "2")], &[]),
    }
}

/// A module over a hereditary algebra filled from a flat list of entries.
pub fn module_from_parts(alg: &Arc<PathAlgebra>, dims: &[usize], entries: &[i64]) -> Representation {
    let q = alg.quiver();
    let dims: Vec<usize> = dims.iter().copied().cycle().take(q.vertex_count()).collect();
    let mut it = entries.iter().cycle();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = (dims[a.target], dims[a.source]);
            let rows: Vec<Vec<Rational>> = (0..r)
                .map(|_| (0..c).map(|_| Rational::from_integer((*it.next().unwrap()).into())).collect())
                .collect();
            RatMatrix::from_rows(r, c, rows).unwrap()
        })
        .collect();
    Representation::new(alg.clone(), dims, maps).unwrap()
}
