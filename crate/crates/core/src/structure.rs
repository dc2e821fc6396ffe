//! Finite-dimensional algebras given by structure constants, and the inverse
//! problem: recovering a quiver with relations from such an algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, is_zero_vec, kernel_basis, unit_vec, zero_vec, Rational, RatMatrix, Subspace};
use crate::pathalg::PathAlgebra;
use crate::quiver::{Arrow, Path, Quiver, QuiverPresentation, Relation};

pub type Sparse = Vec<(usize, Rational)>;

/// Grading tag used by trivial extensions: degree 0 or degree 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    Zero,
    One,
}

/// An algebra by basis and multiplication table.
///
/// `idempotents[v]` lists the basis indices whose sum is the `v`-th primitive
/// idempotent; in every construction of this crate each list is a singleton.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<Sparse>>,
    idempotents: Vec<Vec<usize>>,
    vertex_labels: Vec<String>,
    grading: Option<Vec<Degree>>,
    blocks: Option<Vec<(usize, usize)>>,
}

impl StructureAlgebra {
    /// `table[i][j]` holds the dense coordinates of `b_i b_j`.
    pub fn new(
        labels: Vec<String>,
        table: Vec<Vec<Vec<Rational>>>,
        idempotents: Vec<Vec<usize>>,
        vertex_labels: Vec<String>,
    ) -> Self {
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::from_sparse(labels, table, idempotents, vertex_labels)
    }

    pub fn from_sparse(
        labels: Vec<String>,
        table: Vec<Vec<Sparse>>,
        idempotents: Vec<Vec<usize>>,
        vertex_labels: Vec<String>,
    ) -> Self {
        let d = labels.len();
        assert_eq!(table.len(), d, "multiplication table size");
        assert!(table.iter().all(|r| r.len() == d), "multiplication table size");
        StructureAlgebra {
            labels,
            table,
            idempotents,
            vertex_labels,
            grading: None,
            blocks: None,
        }
    }

    pub fn with_grading(mut self, grading: Vec<Degree>) -> Self {
        assert_eq!(grading.len(), self.dim());
        self.grading = Some(grading);
        self
    }

    pub fn with_blocks(mut self, blocks: Vec<(usize, usize)>) -> Self {
        assert_eq!(blocks.len(), self.dim());
        self.blocks = Some(blocks);
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn idempotents(&self) -> &[Vec<usize>] {
        &self.idempotents
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn grading(&self) -> Option<&[Degree]> {
        self.grading.as_deref()
    }

    pub fn blocks(&self) -> Option<&[(usize, usize)]> {
        self.blocks.as_deref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = zero_vec(d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.table[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        unit_vec(self.dim(), i)
    }

    pub fn idempotent(&self, v: usize) -> Vec<Rational> {
        let mut e = zero_vec(self.dim());
        for &i in &self.idempotents[v] {
            e[i] += Rational::one();
        }
        e
    }

    pub fn unit(&self) -> Vec<Rational> {
        let mut u = zero_vec(self.dim());
        for v in 0..self.idempotents.len() {
            add_scaled(&mut u, &Rational::one(), &self.idempotent(v));
        }
        u
    }

    /// `e_i x e_j`
    pub fn peirce(&self, i: usize, x: &[Rational], j: usize) -> Vec<Rational> {
        self.mul(&self.mul(&self.idempotent(i), x), &self.idempotent(j))
    }

    /// Matrix of `y -> x y`.
    pub fn left_mult_matrix(&self, x: &[Rational]) -> RatMatrix {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| self.mul(x, &unit_vec(d, j))).collect();
        RatMatrix::from_columns(d, &cols)
    }

    /// Exhaustive check of `(b_i b_j) b_k = b_i (b_j b_k)`.
    pub fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    let mut lhs = zero_vec(d);
                    for (m, c) in ij {
                        for (n, v) in &self.table[*m][k] {
                            lhs[*n] += c * v;
                        }
                    }
                    let mut rhs = zero_vec(d);
                    for (m, c) in &self.table[j][k] {
                        for (n, v) in &self.table[i][*m] {
                            rhs[*n] += c * v;
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// The idempotents are orthogonal, idempotent and sum to a two-sided unit.
    pub fn check_idempotents(&self) -> Result<()> {
        let n = self.idempotents.len();
        if n == 0 && self.dim() > 0 {
            return Err(Error::MissingIdempotents("no idempotents recorded".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let p = self.mul(&self.idempotent(a), &self.idempotent(b));
                let expected = if a == b { self.idempotent(a) } else { zero_vec(self.dim()) };
                if p != expected {
                    return Err(Error::MissingIdempotents(format!(
                        "idempotents {a} and {b} are not orthogonal idempotents"
                    )));
                }
            }
        }
        let u = self.unit();
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&u, &b) != b || self.mul(&b, &u) != b {
                return Err(Error::MissingIdempotents(
                    "idempotents do not sum to the unit".into(),
                ));
            }
        }
        Ok(())
    }

    /// Products of two degree-one basis elements vanish.
    pub fn check_square_zero(&self) -> Result<()> {
        let Some(g) = &self.grading else {
            return Ok(());
        };
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if g[i] == Degree::One && g[j] == Degree::One && !self.table[i][j].is_empty() {
                    return Err(Error::NotAssociative(i, j, j));
                }
            }
        }
        Ok(())
    }

    /// Basis elements of degree zero span a subalgebra.
    pub fn degree_zero_closed(&self) -> bool {
        let Some(g) = &self.grading else {
            return true;
        };
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                g[i] == Degree::One
                    || g[j] == Degree::One
                    || self.table[i][j].iter().all(|(k, _)| g[*k] == Degree::Zero)
            })
        })
    }
}

impl fmt::Display for StructureAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra of dimension {}", self.dim())?;
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(f, "  b{i} = {l}")?;
        }
        Ok(())
    }
}

/// Jacobson radical via the trace form `(x, y) -> tr(L_{xy})` (characteristic zero).
pub fn radical_basis(a: &StructureAlgebra) -> Vec<Vec<Rational>> {
    let d = a.dim();
    // tr(L_{b_k}) = sum_m c_{k m}^m
    let traces: Vec<Rational> = (0..d)
        .map(|k| {
            (0..d)
                .map(|m| {
                    a.table[k][m]
                        .iter()
                        .filter(|(n, _)| *n == m)
                        .map(|(_, c)| c.clone())
                        .sum::<Rational>()
                })
                .sum()
        })
        .collect();
    let mut gram = RatMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut t = Rational::zero();
            for (k, c) in &a.table[i][j] {
                t += c * &traces[*k];
            }
            gram[(i, j)] = t;
        }
    }
    let rad = kernel_basis(&gram);
    debug_assert!(
        radical_powers(a, &rad).last().is_none_or(|s| s.dim() == 0),
        "trace-form kernel must be nilpotent"
    );
    rad
}

/// `[R, R^2, ..., R^L]` with `R^L` the first zero power (included as an empty space).
fn radical_powers(a: &StructureAlgebra, rad: &[Vec<Rational>]) -> Vec<Subspace> {
    let d = a.dim();
    let mut powers = vec![Subspace::spanned_by(d, rad.iter())];
    while powers.last().unwrap().dim() > 0 {
        if powers.len() > d + 1 {
            break;
        }
        let prev = powers.last().unwrap();
        let mut next = Subspace::new(d);
        for x in prev.basis() {
            for r in rad {
                next.insert(&a.mul(x, r));
            }
        }
        if next.dim() == prev.dim() {
            // not nilpotent; only possible for a bad radical candidate
            break;
        }
        powers.push(next);
    }
    powers
}

fn peirce_span(a: &StructureAlgebra, i: usize, j: usize, space: &Subspace) -> Subspace {
    let mut out = Subspace::new(a.dim());
    for x in space.basis() {
        out.insert(&a.peirce(i, x, j));
    }
    out
}

fn require_idempotents(a: &StructureAlgebra) -> Result<()> {
    if a.idempotents.is_empty() && a.dim() > 0 {
        return Err(Error::MissingIdempotents(
            "algebra carries no primitive idempotents".into(),
        ));
    }
    Ok(())
}

fn arrow_label(k: usize) -> String {
    const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    if k < LETTERS.len() {
        (LETTERS[k] as char).to_string()
    } else {
        format!("x{k}")
    }
}

/// Gabriel quiver: one vertex per idempotent, `dim e_i (R/R^2) e_j` arrows `i -> j`.
pub fn gabriel_quiver(a: &StructureAlgebra) -> Result<Quiver> {
    Ok(extract_relations_full(a)?.presentation.quiver().clone())
}

/// Arrow counts of the Gabriel quiver without choosing lifts.
pub fn gabriel_arrow_matrix(a: &StructureAlgebra) -> Result<Vec<Vec<usize>>> {
    require_idempotents(a)?;
    let rad = radical_basis(a);
    let powers = radical_powers(a, &rad);
    let empty = Subspace::new(a.dim());
    let r1 = &powers[0];
    let r2 = powers.get(1).unwrap_or(&empty);
    let n = a.idempotents.len();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| peirce_span(a, i, j, r1).dim() - peirce_span(a, i, j, r2).dim())
                .collect()
        })
        .collect())
}

/// Result of presenting a basic algebra as a quiver with relations.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub presentation: QuiverPresentation,
    /// Chosen lift in the algebra of each arrow, in arrow order.
    pub arrow_lifts: Vec<Vec<Rational>>,
    /// Loewy length: first `L` with `R^L = 0`.
    pub loewy_length: usize,
    /// Minimal generators per degree (lowest path length occurring).
    pub relations_by_degree: BTreeMap<usize, usize>,
}

impl Extraction {
    /// Image in the algebra of a path of the extracted quiver.
    pub fn path_image(&self, a: &StructureAlgebra, p: &Path) -> Vec<Rational> {
        let mut x = a.idempotent(p.source);
        for &ar in &p.arrows {
            x = a.mul(&x, &self.arrow_lifts[ar]);
        }
        x
    }

    /// Images of the normal basis of `alg` (built from the extracted presentation).
    pub fn basis_images(&self, a: &StructureAlgebra, alg: &PathAlgebra) -> Vec<Vec<Rational>> {
        alg.basis().iter().map(|p| self.path_image(a, p)).collect()
    }
}

/// Quiver with minimal relations of a basic algebra with known idempotents.
pub fn extract_relations(a: &StructureAlgebra) -> Result<QuiverPresentation> {
    Ok(extract_relations_full(a)?.presentation)
}

pub fn extract_relations_full(a: &StructureAlgebra) -> Result<Extraction> {
    require_idempotents(a)?;
    let d = a.dim();
    let n = a.idempotents.len();
    let rad = radical_basis(a);
    let powers = radical_powers(a, &rad);
    let loewy = powers.len();
    let empty = Subspace::new(d);
    let r1 = &powers[0];
    let r2 = powers.get(1).unwrap_or(&empty);

    // Arrow lifts: complements of e_i R^2 e_j in e_i R e_j, preferring basis elements.
    let mut arrows = Vec::new();
    let mut lifts = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rij = peirce_span(a, i, j, r1);
            let mut acc = peirce_span(a, i, j, r2);
            let candidates = (0..d)
                .map(|k| a.peirce(i, &a.basis_vector(k), j))
                .filter(|v| !is_zero_vec(v) && rij.contains(v))
                .chain(rij.basis().iter().cloned());
            for v in candidates {
                if acc.dim() == rij.dim() {
                    break;
                }
                if acc.insert(&v) {
                    arrows.push((i, j));
                    lifts.push(v);
                }
            }
        }
    }
    let vertices: Vec<String> = if a.vertex_labels.len() == n {
        a.vertex_labels.clone()
    } else {
        (1..=n).map(|v| v.to_string()).collect()
    };
    let quiver = Quiver::new(
        vertices,
        arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| Arrow {
                label: arrow_label(k),
                source: s,
                target: t,
            })
            .collect(),
    )?;

    let image = |p: &Path| -> Vec<Rational> {
        let mut x = a.idempotent(p.source);
        for &ar in &p.arrows {
            x = a.mul(&x, &lifts[ar]);
        }
        x
    };

    // Paths of length <= L, per cell, shortest first.
    let mut cells: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
    for len in 0..=loewy {
        for p in quiver.paths_of_length(len) {
            cells.entry((p.source, p.target)).or_default().push(p);
        }
    }

    let mut relations = Vec::new();
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    let mut image_rank = 0;
    // kernel per cell, needed for J I + I J across cells
    let mut kernels: BTreeMap<(usize, usize), Vec<Vec<Rational>>> = BTreeMap::new();
    let mut images: BTreeMap<(usize, usize), RatMatrix> = BTreeMap::new();
    for (&key, paths) in &cells {
        let cols: Vec<Vec<Rational>> = paths.iter().map(&image).collect();
        let m = RatMatrix::from_columns(d, &cols);
        image_rank += m.rank();
        kernels.insert(key, kernel_basis(&m));
        images.insert(key, m);
    }
    if image_rank != d {
        return Err(Error::MissingIdempotents(format!(
            "arrow lifts generate a subspace of dimension {image_rank}, expected {d}"
        )));
    }

    let position = |key: &(usize, usize), p: &Path| cells[key].iter().position(|x| x == p);
    for (&key, paths) in &cells {
        let (s, t) = key;
        // K = J I + I J restricted to this cell
        let mut k_space = Subspace::new(paths.len());
        for (ar_idx, ar) in quiver.arrows().iter().enumerate() {
            // x * a with x in I(s, ar.source), a: ar.source -> t
            if ar.target == t {
                if let Some(ker) = kernels.get(&(s, ar.source)) {
                    let src_paths = &cells[&(s, ar.source)];
                    for x in ker {
                        let mut v = zero_vec(paths.len());
                        for (c, p) in x.iter().zip(src_paths) {
                            if c.is_zero() {
                                continue;
                            }
                            let ext = p.concat(&Path::arrow(&quiver, ar_idx)).unwrap();
                            if let Some(pos) = position(&key, &ext) {
                                v[pos] += c;
                            }
                        }
                        k_space.insert(&v);
                    }
                }
            }
            // a * x with a: s -> ar.target, x in I(ar.target, t)
            if ar.source == s {
                if let Some(ker) = kernels.get(&(ar.target, t)) {
                    let src_paths = &cells[&(ar.target, t)];
                    for x in ker {
                        let mut v = zero_vec(paths.len());
                        for (c, p) in x.iter().zip(src_paths) {
                            if c.is_zero() {
                                continue;
                            }
                            let ext = Path::arrow(&quiver, ar_idx).concat(p).unwrap();
                            if let Some(pos) = position(&key, &ext) {
                                v[pos] += c;
                            }
                        }
                        k_space.insert(&v);
                    }
                }
            }
        }

        // S_deg = kernel elements supported on paths of length >= deg
        let m = &images[&key];
        let restricted_kernel = |deg: usize| -> Vec<Vec<Rational>> {
            let keep: Vec<usize> = (0..paths.len()).filter(|&c| paths[c].len() >= deg).collect();
            let sub = RatMatrix::from_columns(d, &keep.iter().map(|&c| m.column(c)).collect::<Vec<_>>());
            let ker = kernel_basis(&sub);
            if ker.is_empty() {
                return ker;
            }
            // reduced echelon basis, shortest paths first
            let mut full_rows = RatMatrix::zeros(ker.len(), paths.len());
            for (r, kv) in ker.iter().enumerate() {
                for (x, &c) in kv.iter().zip(&keep) {
                    full_rows[(r, c)] = x.clone();
                }
            }
            let (rr, piv) = full_rows.rref();
            (0..piv.len()).map(|r| rr.row(r).to_vec()).collect()
        };
        for deg in 2..=loewy {
            let s_deg = restricted_kernel(deg);
            if s_deg.is_empty() {
                continue;
            }
            let mut w = k_space.clone();
            for v in &restricted_kernel(deg + 1) {
                w.insert(v);
            }
            for v in s_deg {
                if w.insert(&v) {
                    let lead = v.iter().find(|c| !c.is_zero()).unwrap().clone();
                    let terms = v
                        .iter()
                        .zip(paths)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, p)| (c / &lead, p.clone()))
                        .collect();
                    relations.push(Relation::new(terms));
                    *by_degree.entry(deg).or_default() += 1;
                }
            }
        }
    }

    let presentation = QuiverPresentation::new(quiver, relations)?;
    let check = PathAlgebra::new(presentation.clone());
    assert_eq!(
        check.dim(),
        d,
        "extracted presentation must have the dimension of the algebra"
    );
    Ok(Extraction {
        presentation,
        arrow_lifts: lifts,
        loewy_length: loewy,
        relations_by_degree: by_degree,
    })
}

/// Necessary-condition fingerprint of an algebra with ordered idempotents.
///
/// Equal signatures do not prove two algebras isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub dim: usize,
    pub vertices: usize,
    pub arrow_matrix: Vec<Vec<usize>>,
    /// `relation_matrix[i][j]`: number of minimal relations from `i` to `j`.
    pub relation_matrix: Vec<Vec<usize>>,
    pub relations_by_degree: BTreeMap<usize, usize>,
    /// `dim R^k` for `k = 0, 1, ...` (starting with the whole algebra).
    pub radical_filtration: Vec<usize>,
}

pub fn structural_signature(a: &StructureAlgebra) -> Result<Signature> {
    let ex = extract_relations_full(a)?;
    let n = a.idempotents.len();
    let mut relation_matrix = vec![vec![0; n]; n];
    for r in ex.presentation.relations() {
        relation_matrix[r.source().unwrap()][r.target().unwrap()] += 1;
    }
    let rad = radical_basis(a);
    let mut filtration = vec![a.dim()];
    filtration.extend(radical_powers(a, &rad).iter().map(Subspace::dim));
    Ok(Signature {
        dim: a.dim(),
        vertices: n,
        arrow_matrix: ex.presentation.quiver().arrow_matrix(),
        relation_matrix,
        relations_by_degree: ex.relations_by_degree,
        radical_filtration: filtration,
    })
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim={} vertices={} arrows={:?} relations={:?} loewy={:?}",
            self.dim, self.vertices, self.arrow_matrix, self.relation_matrix, self.radical_filtration
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::pathalg::algebra_from_presentation;

    fn semisimple(n: usize) -> StructureAlgebra {
        let mut table = vec![vec![zero_vec(n); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            row[i][i] = q(1);
        }
        StructureAlgebra::new(
            (0..n).map(|i| format!("e{i}")).collect(),
            table,
            (0..n).map(|i| vec![i]).collect(),
            (1..=n).map(|i| i.to_string()).collect(),
        )
    }

    fn a2() -> StructureAlgebra {
        let quiver = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        algebra_from_presentation(&QuiverPresentation::hereditary(quiver).unwrap())
    }

    #[test]
    fn semisimple_radical_is_zero() {
        assert!(radical_basis(&semisimple(3)).is_empty());
    }

    #[test]
    fn a2_radical_is_the_arrow() {
        let a = a2();
        let r = radical_basis(&a);
        assert_eq!(r.len(), 1);
        // basis order: e1, e2, a
        assert!(r[0][0].is_zero() && r[0][1].is_zero() && !r[0][2].is_zero());
    }

    #[test]
    fn missing_idempotents_is_an_error() {
        let mut a = a2();
        a.idempotents.clear();
        assert!(matches!(gabriel_quiver(&a), Err(Error::MissingIdempotents(_))));
    }

    #[test]
    fn hereditary_round_trip_has_no_relations() {
        let quiver = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        let pres = QuiverPresentation::hereditary(quiver.clone()).unwrap();
        let a = algebra_from_presentation(&pres);
        let ex = extract_relations(&a).unwrap();
        assert!(ex.relations().is_empty());
        assert_eq!(ex.quiver().arrow_matrix(), quiver.arrow_matrix());
    }

    #[test]
    fn signatures_distinguish_a2_from_semisimple() {
        let s1 = structural_signature(&a2()).unwrap();
        let s2 = structural_signature(&semisimple(3)).unwrap();
        assert_eq!(s1.dim, s2.dim);
        assert_ne!(s1, s2);
        assert_eq!(s1, structural_signature(&a2()).unwrap());
    }

    #[test]
    fn path_algebra_tables_are_consistent() {
        let a = a2();
        a.check_associative().unwrap();
        a.check_idempotents().unwrap();
    }
}
