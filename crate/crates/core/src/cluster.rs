//! Trivial extensions, cluster-tilted algebras of support τ-tilting pairs,
//! relation extensions, and the comparisons between them.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::blocks::{Kind, PairData};
use crate::error::{Error, Result};
use crate::homological::{
    ext_pullback, ext_pushforward, global_dimension, min_resolution, proj_dim, DimBound, ExtSpace,
    Resolution,
};
use crate::linalg::{Rational, RatMatrix};
use crate::pathalg::PathAlgebra;
use crate::quiver::QuiverPresentation;
use crate::rep::{injective, injective_map, projective, projective_map, simple, CanonicalSum, PathMatrix};
use crate::structure::{extract_relations, extract_relations_full, structural_signature, Degree, Signature, Sparse, StructureAlgebra};
use crate::tau_tilting::{pair_data, SupportTauTiltingPair};

/// A bimodule over two structure algebras, by action matrices on a fixed basis.
///
/// `left[b]` is the matrix of `x -> b·x`, `right[b]` the matrix of `x -> x·b`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub labels: Vec<String>,
    pub left: Vec<RatMatrix>,
    pub right: Vec<RatMatrix>,
    /// `(i, j)` with `e_i x e_j = x`, when every basis vector is Peirce-homogeneous.
    pub peirce: Option<Vec<(usize, usize)>>,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn zero(left_dim: usize, right_dim: usize) -> Bimodule {
        Bimodule {
            labels: Vec::new(),
            left: vec![RatMatrix::zeros(0, 0); left_dim],
            right: vec![RatMatrix::zeros(0, 0); right_dim],
            peirce: Some(Vec::new()),
        }
    }

    fn action(mats: &[RatMatrix], d: usize, x: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zeros(d, d);
        for (a, c) in mats.iter().zip(x) {
            if !c.is_zero() {
                m = m.add(&a.scale(c));
            }
        }
        m
    }

    /// Associativity and unitality of both actions, and their commutation.
    pub fn check_axioms(&self, left_alg: &StructureAlgebra, right_alg: &StructureAlgebra) -> Result<()> {
        if self.left.len() != left_alg.dim() || self.right.len() != right_alg.dim() {
            return Err(Error::AlgebraMismatch("action count differs from algebra dimension".into()));
        }
        let d = self.dim();
        let id = RatMatrix::identity(d);
        let fail = |what: &str| Err(Error::AlgebraMismatch(format!("bimodule axiom fails: {what}")));
        if Self::action(&self.left, d, &left_alg.unit()) != id {
            return fail("left unit");
        }
        if Self::action(&self.right, d, &right_alg.unit()) != id {
            return fail("right unit");
        }
        for i in 0..left_alg.dim() {
            for j in 0..left_alg.dim() {
                let prod = Self::action(&self.left, d, &left_alg.mul(&left_alg.basis_vector(i), &left_alg.basis_vector(j)));
                if self.left[i].mul(&self.left[j]) != prod {
                    return fail("left associativity");
                }
            }
        }
        for i in 0..right_alg.dim() {
            for j in 0..right_alg.dim() {
                let prod = Self::action(&self.right, d, &right_alg.mul(&right_alg.basis_vector(i), &right_alg.basis_vector(j)));
                if self.right[j].mul(&self.right[i]) != prod {
                    return fail("right associativity");
                }
            }
        }
        for l in &self.left {
            for r in &self.right {
                if l.mul(r) != r.mul(l) {
                    return fail("actions do not commute");
                }
            }
        }
        Ok(())
    }
}

/// `B ⋉ E` with `E` a square-zero ideal: `(b, e)(b', e') = (bb', b·e' + e·b')`.
pub fn trivial_extension(b: &StructureAlgebra, e: &Bimodule) -> Result<StructureAlgebra> {
    if e.left.len() != b.dim() || e.right.len() != b.dim() {
        return Err(Error::AlgebraMismatch("bimodule is not over the given algebra".into()));
    }
    let db = b.dim();
    let de = e.dim();
    let d = db + de;
    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); d]; d];
    for i in 0..db {
        for j in 0..db {
            table[i][j] = b.mul_basis(i, j).clone();
        }
        for k in 0..de {
            table[i][db + k] = column_sparse(&e.left[i], k, db);
            table[db + k][i] = column_sparse(&e.right[i], k, db);
        }
    }
    let labels = b.labels().iter().cloned().chain(e.labels.iter().cloned()).collect();
    let grading = (0..d).map(|i| if i < db { Degree::Zero } else { Degree::One }).collect();
    let mut out = StructureAlgebra::from_sparse(labels, table, b.idempotents().to_vec(), b.vertex_labels().to_vec())
        .with_grading(grading);
    if let (Some(bb), Some(pe)) = (b.blocks(), &e.peirce) {
        out = out.with_blocks(bb.iter().copied().chain(pe.iter().copied()).collect());
    }
    Ok(out)
}

fn column_sparse(m: &RatMatrix, k: usize, offset: usize) -> Sparse {
    (0..m.rows())
        .filter(|&r| !m[(r, k)].is_zero())
        .map(|r| (offset + r, m[(r, k)].clone()))
        .collect()
}

/// The subalgebra on the given basis indices (closed under products), with the
/// idempotents of the listed vertices.
fn restrict(a: &StructureAlgebra, indices: &[usize], vertices: &[usize]) -> StructureAlgebra {
    let pos = |g: usize| indices.iter().position(|&i| i == g).expect("subalgebra is closed");
    let table = indices
        .iter()
        .map(|&i| {
            indices
                .iter()
                .map(|&j| a.mul_basis(i, j).iter().map(|(k, c)| (pos(*k), c.clone())).collect())
                .collect()
        })
        .collect();
    let labels = indices.iter().map(|&i| a.labels()[i].clone()).collect();
    let idem = vertices
        .iter()
        .map(|&v| a.idempotents()[v].iter().map(|&g| pos(g)).collect())
        .collect();
    let vlabels = vertices.iter().map(|&v| a.vertex_labels()[v].clone()).collect();
    let mut out = StructureAlgebra::from_sparse(labels, table, idem, vlabels);
    if let Some(b) = a.blocks() {
        out = out.with_blocks(indices.iter().map(|&i| b[i]).collect());
    }
    out
}

/// Action matrices of the basis elements `acting` on the span of `on`, read from a table.
fn actions(a: &StructureAlgebra, acting: &[usize], on: &[usize], left: bool) -> Vec<RatMatrix> {
    acting
        .iter()
        .map(|&x| {
            let mut m = RatMatrix::zeros(on.len(), on.len());
            for (col, &y) in on.iter().enumerate() {
                let prod = if left { a.mul_basis(x, y) } else { a.mul_basis(y, x) };
                for (k, c) in prod {
                    let row = on.iter().position(|&o| o == *k).expect("product stays in the bimodule");
                    m[(row, col)] = c.clone();
                }
            }
            m
        })
        .collect()
}

/// The three bimodules of a pair together with `B = End(T)` and `H₁ = End(P)`.
pub struct ClusterBimodules {
    pub b: StructureAlgebra,
    pub h1: StructureAlgebra,
    /// `Ext¹(T, τ⁻¹T)` over `B` on both sides.
    pub e: Bimodule,
    /// `Hom(P, τ⁻¹T)`: `B` on the left, `H₁` on the right.
    pub n: Bimodule,
    /// `Ext¹(T, P)`: `H₁` on the left, `B` on the right.
    pub m: Bimodule,
}

fn indices_of(layout: &[(Kind, usize, usize, usize)], kind: Kind) -> Vec<usize> {
    layout
        .iter()
        .enumerate()
        .filter(|(_, e)| e.0 == kind)
        .map(|(i, _)| i)
        .collect()
}

fn bimodule_from(full: &StructureAlgebra, layout: &[(Kind, usize, usize, usize)], kind: Kind, left: &[usize], right: &[usize]) -> Bimodule {
    let on = indices_of(layout, kind);
    Bimodule {
        labels: on.iter().map(|&i| full.labels()[i].clone()).collect(),
        left: actions(full, left, &on, true),
        right: actions(full, right, &on, false),
        peirce: Some(on.iter().map(|&i| (layout[i].1, layout[i].2)).collect()),
    }
}

pub fn cluster_bimodules(pair: &SupportTauTiltingPair, seed: u64) -> Result<ClusterBimodules> {
    let data = pair_data(pair, seed, true)?;
    let (full, layout) = data.assemble_with_layout(&[Kind::B, Kind::E, Kind::N, Kind::M, Kind::H])?;
    let t = data.t_count();
    let v = t + data.p_count();
    let bi = indices_of(&layout, Kind::B);
    let hi = indices_of(&layout, Kind::H);
    let b = restrict(&full, &bi, &(0..t).collect::<Vec<_>>());
    let h1 = restrict(&full, &hi, &(t..v).collect::<Vec<_>>());
    Ok(ClusterBimodules {
        e: bimodule_from(&full, &layout, Kind::E, &bi, &bi),
        n: bimodule_from(&full, &layout, Kind::N, &bi, &hi),
        m: bimodule_from(&full, &layout, Kind::M, &hi, &bi),
        b,
        h1,
    })
}

/// `End_C(T̃ ⊕ P̃[1])` as the block algebra `[[B ⋉ E, N], [M, H₁]]`.
pub fn cluster_tilted_algebra(pair: &SupportTauTiltingPair, seed: u64) -> Result<StructureAlgebra> {
    let data = pair_data(pair, seed, true)?;
    cluster_tilted_from_data(&data)
}

pub fn cluster_tilted_from_data(data: &PairData) -> Result<StructureAlgebra> {
    let a = data.assemble(&[Kind::B, Kind::E, Kind::N, Kind::M, Kind::H])?;
    a.check_associative()?;
    a.check_square_zero()?;
    Ok(a)
}

/// `Ext²(DB, B)` as a `B`-bimodule, for `B` given by a presentation.
pub fn ext2_bimodule(alg: &Arc<PathAlgebra>) -> Bimodule {
    let n = alg.vertex_count();
    let res: Vec<Arc<Resolution>> = (0..n).map(|i| Arc::new(min_resolution(&injective(alg, i), 3))).collect();
    let proj: Vec<_> = (0..n).map(|j| projective(alg, j)).collect();
    // spaces[j][i] = Ext²(I_i, P_j), sitting in e_j E e_i
    let spaces: Vec<Vec<ExtSpace>> = proj
        .iter()
        .map(|pj| res.iter().map(|r| ExtSpace::new(r, pj, 2)).collect())
        .collect();
    let mut offset = vec![vec![0; n]; n];
    let mut labels = Vec::new();
    let mut peirce = Vec::new();
    let vl = alg.quiver().vertices();
    for j in 0..n {
        for i in 0..n {
            offset[j][i] = labels.len();
            for x in 0..spaces[j][i].dim() {
                labels.push(format!("ext2(I{},P{}){x}", vl[i], vl[j]));
                peirce.push((j, i));
            }
        }
    }
    let d = labels.len();
    let single = |p: &[Rational], s: usize, t: usize| {
        let mut pm = PathMatrix::zero(alg, &[s], &[t]);
        pm.entries[0][0] = p.to_vec();
        pm
    };
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (bi, path) in alg.basis().iter().enumerate() {
        let (s, t) = (path.source, path.target);
        let mut local = vec![Rational::zero(); alg.cell_dim(s, t)];
        local[alg.local_index(bi)] = Rational::one();
        // left: ψ_p : P_t -> P_s on ξ ∈ Ext²(I_i, P_t)
        let psi = projective_map(
            &CanonicalSum::projectives(alg, &[t]),
            &CanonicalSum::projectives(alg, &[s]),
            &single(&local, s, t),
        );
        let mut lm = RatMatrix::zeros(d, d);
        for i in 0..n {
            for x in 0..spaces[t][i].dim() {
                let out = ext_pushforward(&spaces[t][i].class(x), &psi).expect("composable");
                for (k, c) in spaces[s][i].coordinates(&out).into_iter().enumerate() {
                    lm[(offset[s][i] + k, offset[t][i] + x)] = c;
                }
            }
        }
        left.push(lm);
        // right: φ_p : I_t -> I_s on ξ ∈ Ext²(I_s, P_j)
        let phi = injective_map(
            &CanonicalSum::injectives(alg, &[t]),
            &CanonicalSum::injectives(alg, &[s]),
            &single(&local, s, t),
        );
        let mut rm = RatMatrix::zeros(d, d);
        for j in 0..n {
            for x in 0..spaces[j][s].dim() {
                let out = ext_pullback(&spaces[j][s].class(x), &phi, &res[t]).expect("composable");
                for (k, c) in spaces[j][t].coordinates(&out).into_iter().enumerate() {
                    rm[(offset[j][t] + k, offset[j][s] + x)] = c;
                }
            }
        }
        right.push(rm);
    }
    Bimodule {
        labels,
        left,
        right,
        peirce: Some(peirce),
    }
}

/// `B ⋉ Ext²(DB, B)` for `B` of global dimension at most two.
pub fn relation_extension(pres: &QuiverPresentation) -> Result<StructureAlgebra> {
    let alg = PathAlgebra::new(pres.clone());
    relation_extension_of(&alg)
}

pub fn relation_extension_of(alg: &Arc<PathAlgebra>) -> Result<StructureAlgebra> {
    if !global_dimension(alg, 2).at_most(2) {
        return Err(Error::GlobalDimensionExceeded(2));
    }
    let b = alg.to_structure();
    let e = ext2_bimodule(alg);
    let a = trivial_extension(&b, &e)?;
    a.check_associative()?;
    Ok(a)
}

/// Outcome of comparing a pair with `Hom(P, τ⁻¹T) = 0` against the relation-extension route.
#[derive(Clone, Debug)]
pub struct ExtComparison {
    pub dim_n: usize,
    pub applicable: bool,
    pub dim_e: usize,
    pub dim_ext2: Option<usize>,
    pub cluster_signature: Option<Signature>,
    pub triangular_signature: Option<Signature>,
}

impl ExtComparison {
    pub fn dims_equal(&self) -> bool {
        self.dim_ext2 == Some(self.dim_e)
    }

    pub fn signatures_equal(&self) -> bool {
        self.cluster_signature.is_some() && self.cluster_signature == self.triangular_signature
    }
}

/// Runs the comparison; `None` signatures when the hypothesis fails or `with_signatures` is off.
pub fn comparison_report(pair: &SupportTauTiltingPair, seed: u64, with_signatures: bool) -> Result<ExtComparison> {
    let data = pair_data(pair, seed, true)?;
    let dim_n = data.dim_n();
    let dim_e = data.dim_e();
    if dim_n != 0 {
        return Ok(ExtComparison {
            dim_n,
            applicable: false,
            dim_e,
            dim_ext2: None,
            cluster_signature: None,
            triangular_signature: None,
        });
    }
    let (silted, layout) = data.assemble_with_layout(&[Kind::B, Kind::M, Kind::H])?;
    let t = data.t_count();
    let v = t + data.p_count();
    let bi = indices_of(&layout, Kind::B);
    let mi = indices_of(&layout, Kind::M);
    let hi = indices_of(&layout, Kind::H);
    let (dim_ext2, tri_sig, cl_sig) = if t == 0 {
        (0, None, None)
    } else {
        let b = restrict(&silted, &bi, &(0..t).collect::<Vec<_>>());
        let ex = extract_relations_full(&b)?;
        let balg = PathAlgebra::new(ex.presentation.clone());
        let images = ex.basis_images(&b, &balg);
        let e2 = ext2_bimodule(&balg);
        let dim_ext2 = e2.dim();
        if with_signatures {
            let te = trivial_extension(&balg.to_structure(), &e2)?;
            let tri = triangular_with(&te, &silted, &images, &bi, &mi, &hi, t, v);
            tri.check_associative()?;
            let cl = cluster_tilted_from_data(&data)?;
            (dim_ext2, Some(structural_signature(&tri)?), Some(structural_signature(&cl)?))
        } else {
            (dim_ext2, None, None)
        }
    };
    Ok(ExtComparison {
        dim_n,
        applicable: true,
        dim_e,
        dim_ext2: Some(dim_ext2),
        cluster_signature: cl_sig,
        triangular_signature: tri_sig,
    })
}

/// `[[te, 0], [M, H₁]]` where `te` extends the presented `B` and `M`, `H₁` come from `silted`.
#[allow(clippy::too_many_arguments)]
fn triangular_with(
    te: &StructureAlgebra,
    silted: &StructureAlgebra,
    images: &[Vec<Rational>],
    bi: &[usize],
    mi: &[usize],
    hi: &[usize],
    t: usize,
    v: usize,
) -> StructureAlgebra {
    let dt = te.dim();
    let nb = images.len();
    let d = dt + mi.len() + hi.len();
    // position in the new basis of an M or H element of `silted`
    let new_pos = |g: usize| -> usize {
        if let Some(p) = mi.iter().position(|&x| x == g) {
            dt + p
        } else {
            dt + mi.len() + hi.iter().position(|&x| x == g).expect("M or H element")
        }
    };
    let remap = |s: &Sparse| -> Sparse { s.iter().map(|(k, c)| (new_pos(*k), c.clone())).collect() };
    let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); d]; d];
    for i in 0..dt {
        for j in 0..dt {
            table[i][j] = te.mul_basis(i, j).clone();
        }
    }
    let mh: Vec<usize> = mi.iter().chain(hi).copied().collect();
    for &x in &mh {
        for &y in &mh {
            table[new_pos(x)][new_pos(y)] = remap(silted.mul_basis(x, y));
        }
        // x · (path p) = x · image(p)
        for p in 0..nb {
            let mut acc = vec![Rational::zero(); silted.dim()];
            for (k, &g) in bi.iter().enumerate() {
                let c = &images[p][k];
                if c.is_zero() {
                    continue;
                }
                for (r, val) in silted.mul_basis(x, g) {
                    acc[*r] += c * val;
                }
            }
            table[new_pos(x)][p] = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(r, c)| (new_pos(r), c))
                .collect();
        }
    }
    let labels = te
        .labels()
        .iter()
        .cloned()
        .chain(mh.iter().map(|&g| silted.labels()[g].clone()))
        .collect();
    let mut idem: Vec<Vec<usize>> = te.idempotents().to_vec();
    for a in t..v {
        idem.push(silted.idempotents()[a].iter().map(|&g| new_pos(g)).collect());
    }
    let vlabels = silted.vertex_labels().to_vec();
    let mut grading: Vec<Degree> = te.grading().map(<[Degree]>::to_vec).unwrap_or_else(|| vec![Degree::Zero; dt]);
    grading.extend(std::iter::repeat(Degree::Zero).take(mh.len()));
    StructureAlgebra::from_sparse(labels, table, idem, vlabels).with_grading(grading)
}

/// Projective dimensions of the simples of an algebra, within a bound.
#[derive(Clone, Debug)]
pub struct HereditarityReport {
    pub hereditary: bool,
    pub simple_pd: Vec<DimBound>,
}

impl HereditarityReport {
    /// No simple has finite projective dimension two or more.
    pub fn gorenstein_pattern(&self) -> bool {
        self.simple_pd.iter().all(|d| matches!(d, DimBound::Finite(0) | DimBound::Finite(1) | DimBound::ExceedsBound(_)))
    }
}

pub const HEREDITARITY_BOUND: usize = 6;

pub fn hereditarity_check(a: &StructureAlgebra, bound: usize) -> Result<HereditarityReport> {
    let pres = extract_relations(a)?;
    let alg = PathAlgebra::new(pres);
    let simple_pd: Vec<DimBound> = (0..alg.vertex_count()).map(|v| proj_dim(&simple(&alg, v), bound)).collect();
    let hereditary = simple_pd.iter().all(|d| d.at_most(1));
    Ok(HereditarityReport { hereditary, simple_pd })
}
