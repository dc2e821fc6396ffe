//! Path algebras modulo admissible ideals, computed degreewise.
//!
//! The relation ideal is materialised inside the truncated path algebra
//! `kQ / J^N` (with `J^N` inside the ideal), one (source, target) cell at a
//! time. Paths that are not pivots of the reduced ideal span form the normal
//! basis; pivots are preferred on long paths so that short paths survive.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{zero_vec, Rational, RatMatrix, Subspace};
use crate::quiver::{Path, Quiver, QuiverPresentation, Relation};
use crate::structure::StructureAlgebra;

/// Paths of length `< bound`, grouped into (source, target) cells.
struct TruncatedCells {
    cells: HashMap<(usize, usize), Vec<Path>>,
    position: HashMap<Path, usize>,
}

impl TruncatedCells {
    fn new(q: &Quiver, bound: usize) -> Self {
        let mut cells: HashMap<(usize, usize), Vec<Path>> = HashMap::new();
        for len in 0..bound {
            for p in q.paths_of_length(len) {
                cells.entry((p.source, p.target)).or_default().push(p);
            }
        }
        let mut position = HashMap::new();
        for paths in cells.values_mut() {
            // longest first, so that elimination pivots on long paths
            paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            for (i, p) in paths.iter().enumerate() {
                position.insert(p.clone(), i);
            }
        }
        TruncatedCells { cells, position }
    }

    fn paths_from(&self, s: usize) -> impl Iterator<Item = &Path> {
        self.cells
            .iter()
            .filter(move |((a, _), _)| *a == s)
            .flat_map(|(_, v)| v.iter())
    }

    fn paths_into(&self, t: usize) -> impl Iterator<Item = &Path> {
        self.cells
            .iter()
            .filter(move |((_, b), _)| *b == t)
            .flat_map(|(_, v)| v.iter())
    }
}

/// Span of `u r v` for all relations `r` and paths `u`, `v`, truncated at `bound`.
fn truncated_ideal(
    q: &Quiver,
    relations: &[Relation],
    bound: usize,
) -> (TruncatedCells, HashMap<(usize, usize), Subspace>) {
    let tc = TruncatedCells::new(q, bound);
    let mut ideal: HashMap<(usize, usize), Subspace> = HashMap::new();
    for r in relations {
        let (Some(s), Some(t)) = (r.source(), r.target()) else {
            continue;
        };
        let lefts: Vec<&Path> = tc.paths_into(s).collect();
        let rights: Vec<&Path> = tc.paths_from(t).collect();
        for u in &lefts {
            for v in &rights {
                let key = (u.source, v.target);
                let Some(cell) = tc.cells.get(&key) else {
                    continue;
                };
                let mut vec = zero_vec(cell.len());
                let mut any = false;
                for (c, p) in &r.terms {
                    let full = u.concat(p).and_then(|x| x.concat(v)).expect("paths meet");
                    if full.len() >= bound {
                        continue;
                    }
                    vec[tc.position[&full]] += c;
                    any = true;
                }
                if any {
                    ideal
                        .entry(key)
                        .or_insert_with(|| Subspace::new(cell.len()))
                        .insert(&vec);
                }
            }
        }
    }
    (tc, ideal)
}

/// Smallest `n` such that every path of length `n` lies in the relation ideal
/// modulo `J^(n+1)`; searched up to `cap`.
pub(crate) fn nilpotency_bound(q: &Quiver, relations: &[Relation], cap: usize) -> Result<usize> {
    for n in 1..=cap {
        let long = q.paths_of_length(n);
        if long.is_empty() {
            return Ok(n);
        }
        let (tc, ideal) = truncated_ideal(q, relations, n + 1);
        let all_in = long.iter().all(|p| {
            let key = (p.source, p.target);
            let Some(space) = ideal.get(&key) else {
                return false;
            };
            let mut v = zero_vec(tc.cells[&key].len());
            v[tc.position[p]] = Rational::one();
            space.contains(&v)
        });
        if all_in {
            return Ok(n);
        }
    }
    Err(Error::NonAdmissible(format!(
        "arrow ideal is not nilpotent modulo the relations up to path length {cap}"
    )))
}

/// `kQ/I` with a normal-form path basis.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    presentation: QuiverPresentation,
    basis: Vec<Path>,
    /// `cells[s][t]`: basis indices of normal paths from `s` to `t`, in basis order.
    cells: Vec<Vec<Vec<usize>>>,
    /// Position of each basis element inside its cell.
    local: Vec<usize>,
    /// Normal form of every path shorter than the nilpotency bound.
    reductions: HashMap<Path, Vec<(usize, Rational)>>,
}

impl PartialEq for PathAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.basis == other.basis
    }
}

impl Eq for PathAlgebra {}

impl PathAlgebra {
    pub fn new(presentation: QuiverPresentation) -> Arc<PathAlgebra> {
        let q = presentation.quiver();
        let bound = presentation.nilpotency_bound();
        let (tc, ideal) = truncated_ideal(q, presentation.relations(), bound);

        // Per cell: reduced echelon form of the ideal, pivots = non-normal paths.
        let mut normal: Vec<Path> = Vec::new();
        let mut rewrite: HashMap<Path, Vec<(Rational, Path)>> = HashMap::new();
        let mut keys: Vec<_> = tc.cells.keys().copied().collect();
        keys.sort();
        for key in keys {
            let paths = &tc.cells[&key];
            let mut is_pivot = vec![false; paths.len()];
            if let Some(space) = ideal.get(&key) {
                let rows = space.basis().to_vec();
                let m = RatMatrix::from_columns(paths.len(), &rows).transpose();
                let (r, pivots) = m.rref();
                for (i, &p) in pivots.iter().enumerate() {
                    is_pivot[p] = true;
                    let tail: Vec<(Rational, Path)> = (0..paths.len())
                        .filter(|&c| c != p && !r[(i, c)].is_zero())
                        .map(|c| (-r[(i, c)].clone(), paths[c].clone()))
                        .collect();
                    rewrite.insert(paths[p].clone(), tail);
                }
            }
            for (i, p) in paths.iter().enumerate() {
                if !is_pivot[i] {
                    normal.push(p.clone());
                }
            }
        }
        normal.sort_by(|a, b| {
            (a.len(), a.source, a.target, &a.arrows).cmp(&(b.len(), b.source, b.target, &b.arrows))
        });
        let index: HashMap<Path, usize> =
            normal.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        let mut reductions = HashMap::new();
        for paths in tc.cells.values() {
            for p in paths {
                let red = match rewrite.get(p) {
                    // tails only involve non-pivot paths of the same cell
                    Some(tail) => tail.iter().map(|(c, q)| (index[q], c.clone())).collect(),
                    None => vec![(index[p], Rational::one())],
                };
                reductions.insert(p.clone(), red);
            }
        }

        let n = q.vertex_count();
        let mut cells = vec![vec![Vec::new(); n]; n];
        let mut local = vec![0; normal.len()];
        for (i, p) in normal.iter().enumerate() {
            let c: &mut Vec<usize> = &mut cells[p.source][p.target];
            local[i] = c.len();
            c.push(i);
        }
        Arc::new(PathAlgebra {
            presentation,
            basis: normal,
            cells,
            local,
            reductions,
        })
    }

    pub fn presentation(&self) -> &QuiverPresentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn vertex_count(&self) -> usize {
        self.presentation.vertex_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Basis indices of `e_s A e_t` (normal paths from `s` to `t`).
    pub fn cell(&self, s: usize, t: usize) -> &[usize] {
        &self.cells[s][t]
    }

    pub fn cell_dim(&self, s: usize, t: usize) -> usize {
        self.cells[s][t].len()
    }

    pub fn local_index(&self, basis_index: usize) -> usize {
        self.local[basis_index]
    }

    pub fn is_hereditary_presentation(&self) -> bool {
        self.presentation.relations().is_empty()
    }

    /// Normal form of an arbitrary path, as sparse coordinates over the basis.
    pub fn reduce(&self, p: &Path) -> Vec<(usize, Rational)> {
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Normal form of a path as a vector over the cell `e_{source} A e_{target}`.
    pub fn reduce_local(&self, p: &Path) -> Vec<Rational> {
        let mut v = zero_vec(self.cell_dim(p.source, p.target));
        for (i, c) in self.reduce(p) {
            v[self.local[i]] += c;
        }
        v
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        match self.basis[i].concat(&self.basis[j]) {
            Some(p) => self.reduce(&p),
            None => Vec::new(),
        }
    }

    /// Product of `x` in `e_s A e_t` and `y` in `e_t A e_u`, both in local cell coordinates.
    pub fn mul_local(&self, s: usize, t: usize, u: usize, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = zero_vec(self.cell_dim(s, u));
        for (a, &bi) in self.cells[s][t].iter().enumerate() {
            if x[a].is_zero() {
                continue;
            }
            for (b, &bj) in self.cells[t][u].iter().enumerate() {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for (k, v) in self.mul_basis(bi, bj) {
                    out[self.local[k]] += &c * v;
                }
            }
        }
        out
    }

    /// The opposite algebra, with the reversed normal basis (indices preserved).
    pub fn opposite(&self) -> Arc<PathAlgebra> {
        let n = self.vertex_count();
        let mut cells = vec![vec![Vec::new(); n]; n];
        for s in 0..n {
            for t in 0..n {
                cells[t][s] = self.cells[s][t].clone();
            }
        }
        Arc::new(PathAlgebra {
            presentation: self.presentation.opposite(),
            basis: self.basis.iter().map(Path::reversed).collect(),
            cells,
            local: self.local.clone(),
            reductions: self
                .reductions
                .iter()
                .map(|(p, r)| (p.reversed(), r.clone()))
                .collect(),
        })
    }

    /// Structure constants of the algebra, with trivial paths as idempotents.
    pub fn to_structure(&self) -> StructureAlgebra {
        let q = self.quiver();
        let d = self.dim();
        let labels = self.basis.iter().map(|p| q.path_string(p)).collect();
        let mut table = vec![vec![zero_vec(d); d]; d];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for (k, c) in self.mul_basis(i, j) {
                    slot[k] += c;
                }
            }
        }
        let idempotents = (0..self.vertex_count())
            .map(|v| vec![self.cells[v][v][0]])
            .collect();
        StructureAlgebra::new(labels, table, idempotents, q.vertices().to_vec())
    }
}

/// `kQ/I` as a structure-constant algebra.
pub fn algebra_from_presentation(pres: &QuiverPresentation) -> StructureAlgebra {
    PathAlgebra::new(pres.clone()).to_structure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn brute_force_path_count(quiver: &Quiver) -> usize {
        (0..=quiver.arrows().len())
            .map(|l| quiver.paths_of_length(l).len())
            .sum()
    }

    #[test]
    fn a2_has_dimension_three() {
        let quiver = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = PathAlgebra::new(QuiverPresentation::hereditary(quiver).unwrap());
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn d4_algebra_dimension() {
        let quiver = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        assert_eq!(brute_force_path_count(&quiver), 9);
        let a = PathAlgebra::new(QuiverPresentation::hereditary(quiver).unwrap());
        assert_eq!(a.dim(), 9);
        assert_eq!(a.cell_dim(0, 3), 1);
    }

    #[test]
    fn silted_linear_quiver_dimension() {
        let quiver = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("alpha", "4", "3"), ("beta", "3", "2"), ("gamma", "2", "1")],
        )
        .unwrap();
        let rels = vec![
            Relation::parse(&quiver, "alpha beta").unwrap(),
            Relation::parse(&quiver, "beta gamma").unwrap(),
        ];
        let a = PathAlgebra::new(QuiverPresentation::new(quiver, rels).unwrap());
        assert_eq!(a.dim(), 7);
        assert_eq!(a.presentation().nilpotency_bound(), 2);
    }

    #[test]
    fn commutativity_relation_keeps_one_path() {
        // square 1 -> 2 -> 4, 1 -> 3 -> 4 with a b = c d
        let quiver = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let r = Relation::parse(&quiver, "a b - c d").unwrap();
        let a = PathAlgebra::new(QuiverPresentation::new(quiver.clone(), vec![r]).unwrap());
        assert_eq!(a.dim(), 9);
        let ab = Path::arrow(&quiver, 0).concat(&Path::arrow(&quiver, 1)).unwrap();
        let cd = Path::arrow(&quiver, 2).concat(&Path::arrow(&quiver, 3)).unwrap();
        assert_eq!(a.reduce(&ab), a.reduce(&cd));
        assert_eq!(a.reduce_local(&ab), vec![q(1)]);
    }

    #[test]
    fn opposite_is_involutive() {
        let quiver = Quiver::from_labels(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
        )
        .unwrap();
        let r = Relation::parse(&quiver, "a b").unwrap();
        let a = PathAlgebra::new(QuiverPresentation::new(quiver, vec![r]).unwrap());
        let op = a.opposite();
        assert_eq!(op.dim(), a.dim());
        assert_eq!(*op.opposite(), *a);
    }

    #[test]
    fn oriented_cycle_with_zero_relations() {
        // 1 -> 2 -> 3 -> 1, all length-2 paths zero
        let quiver = Quiver::from_labels(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        )
        .unwrap();
        let rels = ["a b", "b c", "c a"]
            .iter()
            .map(|s| Relation::parse(&quiver, s).unwrap())
            .collect();
        let a = PathAlgebra::new(QuiverPresentation::new(quiver, rels).unwrap());
        assert_eq!(a.dim(), 6);
        let s = a.to_structure();
        s.check_associative().unwrap();
    }
}
