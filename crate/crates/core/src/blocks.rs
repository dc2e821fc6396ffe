//! Matrix algebras assembled from Hom and Ext blocks between the summands of a
//! pair `(T, P)`.
//!
//! Vertices are the summands `T_0, ..., T_{t-1}` followed by `P_{v_0}[1], ...`.
//! The product is `f · g = f ∘ g`, so the block at `(i, j)` holds morphisms
//! from summand `j` to summand `i`:
//!
//! | kind | block | space |
//! |------|-------|-------|
//! | `B`  | `(T_i, T_j)` | `Hom(T_j, T_i)` |
//! | `E`  | `(T_i, T_j)` | `Ext¹(T_j, τ⁻¹T_i)` |
//! | `N`  | `(T_i, P_a)` | `Hom(P_a, τ⁻¹T_i)` |
//! | `M`  | `(P_a, T_j)` | `Ext¹(T_j, P_a)` |
//! | `H`  | `(P_a, P_b)` | `Hom(P_b, P_a)` |
//!
//! `E` and `N` are the degree-one part.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::homological::{
    ext_pullback, ext_pushforward, min_resolution, tau_inv_data, tau_inv_map_with, ExtSpace,
    Resolution, TauInverse,
};
use crate::linalg::{Rational, Subspace};
use crate::pathalg::PathAlgebra;
use crate::rep::{hom_space, projective, HomSpace, ModuleMap, Representation};
use crate::structure::{Degree, Sparse, StructureAlgebra};

/// Hom space whose first basis vector is the identity when source and target agree.
pub fn hom_with_identity(m: &Representation, n: &Representation) -> Result<HomSpace> {
    let basis = hom_space(m, n)?;
    if m != n {
        return Ok(HomSpace::from_basis(m, n, basis));
    }
    let ambient: usize = m.dims().iter().map(|d| d * d).sum();
    let mut span = Subspace::new(ambient);
    let id = ModuleMap::identity(m);
    span.insert(&id.flatten());
    let mut chosen = vec![id];
    for f in basis {
        if span.insert(&f.flatten()) {
            chosen.push(f);
        }
    }
    Ok(HomSpace::from_basis(m, n, chosen))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    B,
    E,
    N,
    M,
    H,
}

impl Kind {
    pub fn degree(self) -> Degree {
        match self {
            Kind::E | Kind::N => Degree::One,
            _ => Degree::Zero,
        }
    }
}

/// Every Hom and Ext space needed by the block algebras of a pair.
pub struct PairData {
    pub t_names: Vec<String>,
    pub p_names: Vec<String>,
    pub t: Vec<Representation>,
    pub p: Vec<Representation>,
    pub resolutions: Vec<Arc<Resolution>>,
    pub tau_inv: Vec<TauInverse>,
    /// `b[i][j] = Hom(T_j, T_i)`
    pub b: Vec<Vec<HomSpace>>,
    /// `h[a][b] = Hom(P_b, P_a)`
    pub h: Vec<Vec<HomSpace>>,
    /// `m[a][j] = Ext¹(T_j, P_a)`
    pub m: Vec<Vec<ExtSpace>>,
    /// `e[i][j] = Ext¹(T_j, τ⁻¹T_i)`
    pub e: Vec<Vec<ExtSpace>>,
    /// `n[i][a] = Hom(P_a, τ⁻¹T_i)`
    pub n: Vec<Vec<HomSpace>>,
    /// `τ⁻¹` of each basis map of `b[i][j]`
    tau_b: Vec<Vec<Vec<ModuleMap>>>,
}

impl PairData {
    /// `t` must be pairwise non-isomorphic indecomposables; `p_vertices` lists the vertices of `P`.
    /// Without degree one only the blocks `B`, `M`, `H` are computed.
    pub fn new(
        alg: &Arc<PathAlgebra>,
        t: Vec<Representation>,
        t_names: Vec<String>,
        p_vertices: &[usize],
        p_names: Vec<String>,
        with_degree_one: bool,
    ) -> Result<PairData> {
        let p: Vec<Representation> = p_vertices.iter().map(|&v| projective(alg, v)).collect();
        let resolutions: Vec<Arc<Resolution>> = t.iter().map(|m| Arc::new(min_resolution(m, 2))).collect();
        let tau_inv: Vec<TauInverse> = if with_degree_one {
            t.iter().map(tau_inv_data).collect()
        } else {
            Vec::new()
        };
        let b = t
            .iter()
            .map(|ti| t.iter().map(|tj| hom_with_identity(tj, ti)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let h = p
            .iter()
            .map(|pa| p.iter().map(|pb| hom_with_identity(pb, pa)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = p
            .iter()
            .map(|pa| resolutions.iter().map(|r| ExtSpace::new(r, pa, 1)).collect())
            .collect();
        let (e, n, tau_b) = if with_degree_one {
            let e = tau_inv
                .iter()
                .map(|ti| resolutions.iter().map(|r| ExtSpace::new(r, &ti.module, 1)).collect())
                .collect();
            let n = tau_inv
                .iter()
                .map(|ti| p.iter().map(|pa| HomSpace::new(pa, &ti.module)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let tau_b = (0..t.len())
                .map(|i| {
                    (0..t.len())
                        .map(|j| {
                            b[i][j]
                                .basis
                                .iter()
                                .map(|f| tau_inv_map_with(f, &tau_inv[j], &tau_inv[i]))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            (e, n, tau_b)
        } else {
            (Vec::new(), Vec::new(), Vec::new())
        };
        Ok(PairData {
            t_names,
            p_names,
            t,
            p,
            resolutions,
            tau_inv,
            b,
            h,
            m,
            e,
            n,
            tau_b,
        })
    }

    pub fn t_count(&self) -> usize {
        self.t.len()
    }

    pub fn p_count(&self) -> usize {
        self.p.len()
    }

    pub fn dim_e(&self) -> usize {
        self.e.iter().flatten().map(ExtSpace::dim).sum()
    }

    pub fn dim_n(&self) -> usize {
        self.n.iter().flatten().map(HomSpace::dim).sum()
    }

    pub fn dim_m(&self) -> usize {
        self.m.iter().flatten().map(ExtSpace::dim).sum()
    }

    pub fn dim_b(&self) -> usize {
        self.b.iter().flatten().map(HomSpace::dim).sum()
    }

    pub fn dim_h(&self) -> usize {
        self.h.iter().flatten().map(HomSpace::dim).sum()
    }

    fn block_dim(&self, kind: Kind, r: usize, c: usize) -> usize {
        let t = self.t_count();
        match kind {
            Kind::B => self.b[r][c].dim(),
            Kind::E => self.e[r][c].dim(),
            Kind::N => self.n[r][c - t].dim(),
            Kind::M => self.m[r - t][c].dim(),
            Kind::H => self.h[r - t][c - t].dim(),
        }
    }

    /// Product of basis element `x` of block `(kx, r, k)` with `y` of `(ky, k, c)`,
    /// as `(kind, coordinates)` in block `(r, c)`, or `None` when it vanishes.
    fn product(&self, kx: Kind, r: usize, k: usize, x: usize, ky: Kind, c: usize, y: usize) -> Result<Option<(Kind, Vec<Rational>)>> {
        let t = self.t_count();
        Ok(match (kx, ky) {
            (Kind::B, Kind::B) => {
                let f = self.b[r][k].basis[x].compose_unchecked(&self.b[k][c].basis[y]);
                Some((Kind::B, self.b[r][c].coordinates(&f)))
            }
            (Kind::H, Kind::H) => {
                let (a, bb, cc) = (r - t, k - t, c - t);
                let f = self.h[a][bb].basis[x].compose_unchecked(&self.h[bb][cc].basis[y]);
                Some((Kind::H, self.h[a][cc].coordinates(&f)))
            }
            (Kind::M, Kind::B) => {
                let cls = self.m[r - t][k].class(x);
                let g = &self.b[k][c].basis[y];
                let out = ext_pullback(&cls, g, &self.resolutions[c])?;
                Some((Kind::M, self.m[r - t][c].coordinates(&out)))
            }
            (Kind::H, Kind::M) => {
                let h = &self.h[r - t][k - t].basis[x];
                let cls = self.m[k - t][c].class(y);
                let out = ext_pushforward(&cls, h)?;
                Some((Kind::M, self.m[r - t][c].coordinates(&out)))
            }
            (Kind::B, Kind::E) => {
                let g = &self.tau_b[r][k][x];
                let cls = self.e[k][c].class(y);
                let out = ext_pushforward(&cls, g)?;
                Some((Kind::E, self.e[r][c].coordinates(&out)))
            }
            (Kind::E, Kind::B) => {
                let cls = self.e[r][k].class(x);
                let g = &self.b[k][c].basis[y];
                let out = ext_pullback(&cls, g, &self.resolutions[c])?;
                Some((Kind::E, self.e[r][c].coordinates(&out)))
            }
            (Kind::B, Kind::N) => {
                let g = &self.tau_b[r][k][x];
                let f = g.compose_unchecked(&self.n[k][c - t].basis[y]);
                Some((Kind::N, self.n[r][c - t].coordinates(&f)))
            }
            (Kind::N, Kind::H) => {
                let f = self.n[r][k - t].basis[x].compose_unchecked(&self.h[k - t][c - t].basis[y]);
                Some((Kind::N, self.n[r][c - t].coordinates(&f)))
            }
            (Kind::N, Kind::M) => {
                // P_a[1] -> τ⁻¹T_i[1] after T_j -> P_a[1]
                let g = &self.n[r][k - t].basis[x];
                let cls = self.m[k - t][c].class(y);
                let out = ext_pushforward(&cls, g)?;
                Some((Kind::E, self.e[r][c].coordinates(&out)))
            }
            // M·N lands in Ext¹(P, τ⁻¹P) = 0 since P is projective; the remaining
            // degree-one products land in Hom(X, F²Y) = 0 over a hereditary algebra.
            _ => None,
        })
    }

    /// Assembles the algebra on the blocks of the listed kinds.
    pub fn assemble(&self, kinds: &[Kind]) -> Result<StructureAlgebra> {
        Ok(self.assemble_with_layout(kinds)?.0)
    }

    /// As [`PairData::assemble`], also returning `(kind, row, col, local index)` per basis element.
    pub fn assemble_with_layout(&self, kinds: &[Kind]) -> Result<(StructureAlgebra, Vec<(Kind, usize, usize, usize)>)> {
        let t = self.t_count();
        let v = t + self.p_count();
        let is_t = |i: usize| i < t;
        let shape_ok = |kind: Kind, r: usize, c: usize| match kind {
            Kind::B | Kind::E => is_t(r) && is_t(c),
            Kind::N => is_t(r) && !is_t(c),
            Kind::M => !is_t(r) && is_t(c),
            Kind::H => !is_t(r) && !is_t(c),
        };
        let names: Vec<String> = self
            .t_names
            .iter()
            .cloned()
            .chain(self.p_names.iter().map(|n| format!("{n}[1]")))
            .collect();

        // global indexing: identities first so that idempotents are easy to read
        let mut elements: Vec<(Kind, usize, usize, usize)> = Vec::new();
        let mut offset: HashMap<(Kind, usize, usize), usize> = HashMap::new();
        let mut order = Vec::new();
        for &kind in kinds {
            for r in 0..v {
                for c in 0..v {
                    if shape_ok(kind, r, c) {
                        order.push((kind, r, c));
                    }
                }
            }
        }
        for &(kind, r, c) in &order {
            offset.insert((kind, r, c), elements.len());
            for x in 0..self.block_dim(kind, r, c) {
                elements.push((kind, r, c, x));
            }
        }
        let d = elements.len();
        let mut table: Vec<Vec<Sparse>> = vec![vec![Vec::new(); d]; d];
        for (gi, &(kx, r, k, x)) in elements.iter().enumerate() {
            for (gj, &(ky, k2, c, y)) in elements.iter().enumerate() {
                if k != k2 {
                    continue;
                }
                if let Some((kind, coords)) = self.product(kx, r, k, x, ky, c, y)? {
                    if !kinds.contains(&kind) {
                        continue;
                    }
                    let o = offset[&(kind, r, c)];
                    table[gi][gj] = coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, q)| !num_traits::Zero::is_zero(q))
                        .map(|(l, q)| (o + l, q))
                        .collect();
                }
            }
        }
        let labels = elements
            .iter()
            .map(|&(kind, r, c, x)| format!("{kind:?}({}<-{}){x}", names[r], names[c]))
            .collect();
        let idempotents = (0..v)
            .map(|i| {
                let kind = if is_t(i) { Kind::B } else { Kind::H };
                vec![offset[&(kind, i, i)]]
            })
            .collect();
        let grading = elements.iter().map(|e| e.0.degree()).collect();
        let blocks = elements.iter().map(|e| (e.1, e.2)).collect();
        let alg = StructureAlgebra::from_sparse(labels, table, idempotents, names)
            .with_grading(grading)
            .with_blocks(blocks);
        Ok((alg, elements))
    }
}
