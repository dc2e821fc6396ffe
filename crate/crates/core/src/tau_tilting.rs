//! τ-rigidity, support τ-tilting pairs, tilting modules, two-term silting
//! complexes and silted algebras.
//!
//! A pair `(T, P)` is taken with the condition `Hom(P, T) = 0`; `P` is given by
//! a set of vertices, `P = ⊕ P_v`.

use std::sync::Arc;

use crate::blocks::{Kind, PairData};
use crate::error::{Error, Result};
use crate::homological::{ext_dim, proj_dim, tau, DimBound};
use crate::knit::{knit_indecomposables, Knitted};
use crate::linalg::Subspace;
use crate::pathalg::PathAlgebra;
use crate::quiver::{Path, QuiverPresentation, Relation};
use crate::rep::{
    check_indecomposable, cokernel, hom_space, is_isomorphic, min_proj_presentation, projective,
    projective_map, CanonicalSum, ModuleMap, PathMatrix, Representation,
};
use crate::structure::StructureAlgebra;

/// `T = ⊕ summands` together with the vertices of `P`.
#[derive(Clone, Debug)]
pub struct SupportTauTiltingPair {
    pub algebra: Arc<PathAlgebra>,
    pub summands: Vec<Representation>,
    pub names: Vec<String>,
    pub support_excluded: Vec<usize>,
}

impl SupportTauTiltingPair {
    pub fn new(algebra: Arc<PathAlgebra>, summands: Vec<Representation>, names: Vec<String>, support_excluded: Vec<usize>) -> Self {
        assert_eq!(summands.len(), names.len());
        SupportTauTiltingPair {
            algebra,
            summands,
            names,
            support_excluded,
        }
    }

    /// `(A, ∅)`
    pub fn regular(algebra: &Arc<PathAlgebra>) -> Self {
        let n = algebra.vertex_count();
        let q = algebra.quiver();
        Self::new(
            algebra.clone(),
            (0..n).map(|v| projective(algebra, v)).collect(),
            q.vertices().iter().map(|v| format!("P{v}")).collect(),
            Vec::new(),
        )
    }

    /// `(0, all vertices)`
    pub fn zero(algebra: &Arc<PathAlgebra>) -> Self {
        Self::new(algebra.clone(), Vec::new(), Vec::new(), (0..algebra.vertex_count()).collect())
    }

    pub fn module(&self) -> Representation {
        Representation::direct_sum_all(&self.algebra, &self.summands)
    }

    pub fn p_names(&self) -> Vec<String> {
        let q = self.algebra.quiver();
        self.support_excluded.iter().map(|&v| format!("P{}", q.vertices()[v])).collect()
    }

    /// Human-readable `(T, P)`.
    pub fn describe(&self) -> String {
        let t = if self.names.is_empty() { "0".to_string() } else { self.names.join("+") };
        let p = if self.support_excluded.is_empty() { "0".to_string() } else { self.p_names().join("+") };
        format!("({t}, {p})")
    }

    /// Summands with repeated isomorphism classes removed (first occurrence kept).
    pub fn distinct_summands(&self, seed: u64) -> Result<(Vec<Representation>, Vec<String>)> {
        let mut mods: Vec<Representation> = Vec::new();
        let mut names = Vec::new();
        for (m, n) in self.summands.iter().zip(&self.names) {
            let mut seen = false;
            for k in &mods {
                if is_isomorphic(m, k, seed)?.is_isomorphic() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                mods.push(m.clone());
                names.push(n.clone());
            }
        }
        Ok((mods, names))
    }
}

/// Outcome of the τ-rigidity test; a failure names summands `i, j` with `Hom(T_i, τT_j) ≠ 0`.
#[derive(Clone, Debug)]
pub struct TauRigidity {
    pub rigid: bool,
    pub witness: Option<(usize, usize, ModuleMap)>,
}

/// `Hom(T, τT) = 0`, checked summand by summand.
pub fn is_tau_rigid(summands: &[Representation]) -> Result<TauRigidity> {
    let taus: Vec<Representation> = summands.iter().map(|m| tau(m).map(|t| t.module)).collect::<Result<_>>()?;
    for (i, ti) in summands.iter().enumerate() {
        for (j, tj) in taus.iter().enumerate() {
            if let Some(f) = hom_space(ti, tj)?.into_iter().next() {
                return Ok(TauRigidity {
                    rigid: false,
                    witness: Some((i, j, f)),
                });
            }
        }
    }
    Ok(TauRigidity {
        rigid: true,
        witness: None,
    })
}

/// Every condition of a support τ-tilting pair, reported separately.
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub tau_rigid: TauRigidity,
    /// `Hom(P, T) = 0`, i.e. `T` vanishes on the excluded vertices.
    pub hom_p_t_zero: bool,
    pub distinct_summands: usize,
    pub excluded: usize,
    pub vertices: usize,
    /// `T` is τ-tilting over `A / AeA` for `e` the idempotent of `P`.
    pub quotient_tau_tilting: bool,
}

impl PairVerdict {
    pub fn count_ok(&self) -> bool {
        self.distinct_summands + self.excluded == self.vertices
    }

    pub fn holds(&self) -> bool {
        self.tau_rigid.rigid && self.hom_p_t_zero && self.count_ok() && self.quotient_tau_tilting
    }
}

/// `A / AeA` for `e` the sum of the idempotents at `removed`, with the vertex map.
pub fn quotient_by_vertices(alg: &Arc<PathAlgebra>, removed: &[usize]) -> Result<(Arc<PathAlgebra>, Vec<Option<usize>>)> {
    let q = alg.quiver();
    let (sub, map) = q.delete_vertices(removed);
    let mut rels = Vec::new();
    for r in alg.presentation().relations() {
        let terms: Vec<_> = r
            .terms
            .iter()
            .filter_map(|(c, p)| {
                let arrows: Option<Vec<usize>> = p
                    .arrows
                    .iter()
                    .map(|&a| sub.arrow_index(&q.arrows()[a].label))
                    .collect();
                let arrows = arrows?;
                Some((
                    c.clone(),
                    Path {
                        source: map[p.source]?,
                        target: map[p.target]?,
                        arrows,
                    },
                ))
            })
            .collect();
        let rel = Relation::new(terms);
        if !rel.terms.is_empty() {
            rels.push(rel);
        }
    }
    let pres = QuiverPresentation::new(sub, rels)?;
    Ok((PathAlgebra::new(pres), map))
}

pub fn is_support_tau_tilting_pair(pair: &SupportTauTiltingPair, seed: u64) -> Result<PairVerdict> {
    for (m, name) in pair.summands.iter().zip(&pair.names) {
        check_indecomposable(m, name)?;
    }
    let (distinct, _) = pair.distinct_summands(seed)?;
    let tau_rigid = is_tau_rigid(&distinct)?;
    let hom_p_t_zero = distinct
        .iter()
        .all(|m| pair.support_excluded.iter().all(|&v| m.dims()[v] == 0));
    let n = pair.algebra.vertex_count();
    let mut excluded = pair.support_excluded.clone();
    excluded.sort_unstable();
    excluded.dedup();

    let quotient_tau_tilting = if hom_p_t_zero {
        let (quot, map) = quotient_by_vertices(&pair.algebra, &excluded)?;
        let restricted: Vec<Representation> = distinct
            .iter()
            .map(|m| m.restrict(&quot, &map))
            .collect::<Result<_>>()?;
        is_tau_rigid(&restricted)?.rigid && restricted.len() == quot.vertex_count()
    } else {
        false
    };
    Ok(PairVerdict {
        tau_rigid,
        hom_p_t_zero,
        distinct_summands: distinct.len(),
        excluded: excluded.len(),
        vertices: n,
        quotient_tau_tilting,
    })
}

/// The three classical tilting conditions.
#[derive(Clone, Debug)]
pub struct TiltingVerdict {
    pub pd_at_most_one: bool,
    pub ext_vanishes: bool,
    pub count_ok: bool,
}

impl TiltingVerdict {
    pub fn holds(&self) -> bool {
        self.pd_at_most_one && self.ext_vanishes && self.count_ok
    }
}

pub fn is_tilting(alg: &Arc<PathAlgebra>, summands: &[Representation], seed: u64) -> Result<TiltingVerdict> {
    let pd_at_most_one = summands.iter().all(|m| proj_dim(m, 2).at_most(1));
    let mut ext_vanishes = true;
    'outer: for a in summands {
        for b in summands {
            if ext_dim(a, b, 1) != 0 {
                ext_vanishes = false;
                break 'outer;
            }
        }
    }
    let pair = SupportTauTiltingPair::new(
        alg.clone(),
        summands.to_vec(),
        (0..summands.len()).map(|i| i.to_string()).collect(),
        Vec::new(),
    );
    let count_ok = pair.distinct_summands(seed)?.0.len() == alg.vertex_count();
    Ok(TiltingVerdict {
        pd_at_most_one,
        ext_vanishes,
        count_ok,
    })
}

/// `P_1 ⊕ P --d--> P_0`, with `d` zero on `P` and the minimal presentation of `T` on `P_1`.
#[derive(Clone, Debug)]
pub struct TwoTermSilting {
    /// Degree −1: the presentation terms of `T` followed by the vertices of `P`.
    pub degree_minus_one: CanonicalSum,
    pub degree_zero: CanonicalSum,
    pub differential: ModuleMap,
    pub matrix: PathMatrix,
    /// How many of the degree −1 summands come from `T`.
    pub t_part: usize,
}

impl TwoTermSilting {
    pub fn cohomology_zero(&self) -> Representation {
        cokernel(&self.differential).0
    }

    /// `dim Hom_K(X, X[1]) = dim Hom(X⁻¹, X⁰) / (End(X⁰) d + d End(X⁻¹))`.
    pub fn self_extension_dim(&self) -> Result<usize> {
        let x1 = &self.degree_minus_one.module;
        let x0 = &self.degree_zero.module;
        let all = hom_space(x1, x0)?;
        let ambient: usize = x1.dims().iter().zip(x0.dims()).map(|(a, b)| a * b).sum();
        let mut null = Subspace::new(ambient);
        for h in hom_space(x0, x0)? {
            null.insert(&h.compose_unchecked(&self.differential).flatten());
        }
        for h in hom_space(x1, x1)? {
            null.insert(&self.differential.compose_unchecked(&h).flatten());
        }
        Ok(all.len() - null.dim())
    }
}

/// Summary of the silting checks on a constructed complex.
#[derive(Clone, Debug)]
pub struct SiltingVerdict {
    pub cohomology_matches: bool,
    pub self_extension_dim: usize,
    pub summands: usize,
}

impl SiltingVerdict {
    pub fn holds(&self) -> bool {
        self.cohomology_matches && self.self_extension_dim == 0
    }
}

pub fn two_term_silting(pair: &SupportTauTiltingPair, seed: u64) -> Result<TwoTermSilting> {
    let verdict = is_support_tau_tilting_pair(pair, seed)?;
    if !verdict.holds() {
        return Err(Error::UnverifiedPair(pair.describe()));
    }
    let alg = &pair.algebra;
    let (distinct, _) = pair.distinct_summands(seed)?;
    let mut p1_vertices = Vec::new();
    let mut p0_vertices = Vec::new();
    let mut blocks = Vec::new();
    for m in &distinct {
        let pres = min_proj_presentation(m);
        blocks.push((p0_vertices.len(), p1_vertices.len(), pres.differential_matrix.clone()));
        p1_vertices.extend(pres.p1.vertices.iter().copied());
        p0_vertices.extend(pres.p0.vertices.iter().copied());
    }
    let t_part = p1_vertices.len();
    p1_vertices.extend(pair.support_excluded.iter().copied());
    let mut matrix = PathMatrix::zero(alg, &p0_vertices, &p1_vertices);
    for (r0, c0, pm) in blocks {
        for (l, row) in pm.entries.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                matrix.entries[r0 + l][c0 + k] = x.clone();
            }
        }
    }
    let degree_minus_one = CanonicalSum::projectives(alg, &p1_vertices);
    let degree_zero = CanonicalSum::projectives(alg, &p0_vertices);
    let differential = projective_map(&degree_minus_one, &degree_zero, &matrix);
    Ok(TwoTermSilting {
        degree_minus_one,
        degree_zero,
        differential,
        matrix,
        t_part,
    })
}

pub fn check_silting(pair: &SupportTauTiltingPair, complex: &TwoTermSilting, seed: u64) -> Result<SiltingVerdict> {
    let h0 = complex.cohomology_zero();
    let cohomology_matches = is_isomorphic(&h0, &pair.module(), seed)?.is_isomorphic();
    Ok(SiltingVerdict {
        cohomology_matches,
        self_extension_dim: complex.self_extension_dim()?,
        summands: pair.distinct_summands(seed)?.0.len() + pair.support_excluded.len(),
    })
}

/// Hom and Ext data of a verified pair.
pub fn pair_data(pair: &SupportTauTiltingPair, seed: u64, with_degree_one: bool) -> Result<PairData> {
    let verdict = is_support_tau_tilting_pair(pair, seed)?;
    if !verdict.holds() {
        return Err(Error::UnverifiedPair(pair.describe()));
    }
    let (t, names) = pair.distinct_summands(seed)?;
    PairData::new(&pair.algebra, t, names, &pair.support_excluded, pair.p_names(), with_degree_one)
}

/// `End(T ⊕ P[1])` as the triangular matrix algebra `[[End T, 0], [Ext¹(T,P), End P]]`.
pub fn silted_algebra(pair: &SupportTauTiltingPair, seed: u64) -> Result<StructureAlgebra> {
    let data = pair_data(pair, seed, false)?;
    data.assemble(&[Kind::B, Kind::M, Kind::H])
}

/// `End(T)` alone, with the summand identities as idempotents.
pub fn endomorphism_algebra_of_summands(alg: &Arc<PathAlgebra>, t: Vec<Representation>, names: Vec<String>) -> Result<StructureAlgebra> {
    let data = PairData::new(alg, t, names, &[], Vec::new(), false)?;
    data.assemble(&[Kind::B])
}

/// Every support τ-tilting pair of a hereditary Dynkin algebra, by brute force over
/// sets of pairwise compatible indecomposables.
pub fn enumerate_pairs(alg: &Arc<PathAlgebra>) -> Result<Vec<SupportTauTiltingPair>> {
    let ind = knit_indecomposables(alg)?;
    enumerate_pairs_from(alg, &ind)
}

pub fn enumerate_pairs_from(alg: &Arc<PathAlgebra>, ind: &[Knitted]) -> Result<Vec<SupportTauTiltingPair>> {
    let n = alg.vertex_count();
    let k = ind.len();
    let taus: Vec<Representation> = ind.iter().map(|x| tau(&x.module).map(|t| t.module)).collect::<Result<_>>()?;
    let mut compatible = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            compatible[i][j] = hom_space(&ind[i].module, &taus[j])?.is_empty();
        }
    }
    let q = alg.quiver();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_cliques(&compatible, 0, &mut chosen, &mut |set: &[usize]| {
        if set.len() > n {
            return;
        }
        let zero: Vec<usize> = (0..n)
            .filter(|&v| set.iter().all(|&i| ind[i].module.dims()[v] == 0))
            .collect();
        if set.len() + zero.len() == n {
            out.push(SupportTauTiltingPair::new(
                alg.clone(),
                set.iter().map(|&i| ind[i].module.clone()).collect(),
                set.iter().map(|&i| ind[i].name(q)).collect(),
                zero,
            ));
        }
    });
    Ok(out)
}

fn extend_cliques(compat: &[Vec<bool>], start: usize, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    visit(chosen);
    for i in start..compat.len() {
        if !compat[i][i] || !chosen.iter().all(|&j| compat[i][j] && compat[j][i]) {
            continue;
        }
        chosen.push(i);
        extend_cliques(compat, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Projective dimension bound used when checking silted algebras for hereditarity.
pub fn global_dimension_of(a: &StructureAlgebra, bound: usize) -> Result<DimBound> {
    let pres = crate::structure::extract_relations(a)?;
    Ok(crate::homological::global_dimension(&PathAlgebra::new(pres), bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::rep::simple;

    fn alg(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<PathAlgebra> {
        let q = Quiver::from_labels(vertices, arrows).unwrap();
        PathAlgebra::new(QuiverPresentation::hereditary(q).unwrap())
    }

    fn a2() -> Arc<PathAlgebra> {
        alg(&["1", "2"], &[("a", "1", "2")])
    }

    fn d4() -> Arc<PathAlgebra> {
        alg(&["1", "2", "3", "4"], &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")])
    }

    fn example_pair() -> SupportTauTiltingPair {
        let h = d4();
        SupportTauTiltingPair::new(
            h.clone(),
            vec![projective(&h, 3), projective(&h, 0), simple(&h, 0)],
            vec!["P4".into(), "P1".into(), "S1".into()],
            vec![1],
        )
    }

    #[test]
    fn projectives_are_tau_rigid() {
        let h = d4();
        let ps: Vec<_> = (0..4).map(|v| projective(&h, v)).collect();
        assert!(is_tau_rigid(&ps).unwrap().rigid);
    }

    #[test]
    fn simples_of_a2_are_not_tau_rigid_together() {
        let a = a2();
        let r = is_tau_rigid(&[simple(&a, 1), simple(&a, 0)]).unwrap();
        assert!(!r.rigid);
        let (i, j, f) = r.witness.unwrap();
        assert_eq!((i, j), (0, 1));
        assert!(!f.is_zero());
    }

    #[test]
    fn example_pair_verifies() {
        let v = is_support_tau_tilting_pair(&example_pair(), 0).unwrap();
        assert!(v.holds(), "{v:?}");
        assert!(is_tau_rigid(&example_pair().summands).unwrap().rigid);
    }

    #[test]
    fn trivial_pairs_verify() {
        for a in [a2(), d4()] {
            assert!(is_support_tau_tilting_pair(&SupportTauTiltingPair::regular(&a), 0).unwrap().holds());
            assert!(is_support_tau_tilting_pair(&SupportTauTiltingPair::zero(&a), 0).unwrap().holds());
        }
    }

    #[test]
    fn reducible_summand_is_rejected() {
        let a = a2();
        let bad = simple(&a, 0).direct_sum(&simple(&a, 1));
        let pair = SupportTauTiltingPair::new(a.clone(), vec![bad], vec!["S1+S2".into()], vec![]);
        assert!(matches!(is_support_tau_tilting_pair(&pair, 0), Err(Error::NotIndecomposable(_))));
    }

    #[test]
    fn tilting_checks() {
        let a = a2();
        let regular: Vec<_> = (0..2).map(|v| projective(&a, v)).collect();
        assert!(is_tilting(&a, &regular, 0).unwrap().holds());
        assert!(is_tilting(&a, &[projective(&a, 0), simple(&a, 0)], 0).unwrap().holds());
        let p = example_pair();
        let v = is_tilting(&p.algebra, &p.summands, 0).unwrap();
        assert!(!v.count_ok && !v.holds());
    }

    #[test]
    fn example_complex() {
        let p = example_pair();
        let c = two_term_silting(&p, 0).unwrap();
        // degree −1: P3 from S1, then P2; degree 0: P4, P1, P1
        assert_eq!(c.degree_minus_one.vertices, vec![2, 1]);
        assert_eq!(c.degree_zero.vertices, vec![3, 0, 0]);
        assert_eq!(c.t_part, 1);
        let v = check_silting(&p, &c, 0).unwrap();
        assert!(v.holds(), "{v:?}");
        assert_eq!(v.summands, 4);
    }

    #[test]
    fn trivial_complexes() {
        let a = a2();
        let c = two_term_silting(&SupportTauTiltingPair::regular(&a), 0).unwrap();
        assert!(c.degree_minus_one.vertices.is_empty());
        assert_eq!(c.degree_zero.vertices, vec![0, 1]);
        let c = two_term_silting(&SupportTauTiltingPair::zero(&a), 0).unwrap();
        assert_eq!(c.degree_minus_one.vertices, vec![0, 1]);
        assert!(c.degree_zero.vertices.is_empty());
        assert_eq!(c.self_extension_dim().unwrap(), 0);
    }

    #[test]
    fn silted_dimensions() {
        let s = silted_algebra(&example_pair(), 0).unwrap();
        assert_eq!(s.dim(), 7);
        assert_eq!(s.idempotents().len(), 4);
        s.check_associative().unwrap();
        s.check_idempotents().unwrap();
    }

    #[test]
    fn pair_counts() {
        let a1 = alg(&["1"], &[]);
        assert_eq!(enumerate_pairs(&a1).unwrap().len(), 2);
        let pairs = enumerate_pairs(&a2()).unwrap();
        assert_eq!(pairs.len(), 5);
        let mut described: Vec<String> = pairs.iter().map(SupportTauTiltingPair::describe).collect();
        described.sort();
        assert_eq!(
            described,
            vec!["(0, P1+P2)", "(P1+P2, 0)", "(P1+t^-1P2, 0)", "(P2, P1)", "(t^-1P2, P2)"]
        );
    }
}
