//! Finite-dimensional right modules over a presented algebra.
//!
//! A representation assigns a vector space to each vertex and, to each arrow
//! `a: i -> j`, a matrix `M_a: M_i -> M_j` (columns index `M_i`). A path
//! `a_1 ... a_k` acts by `M_{a_k} ... M_{a_1}`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    cokernel_data, is_zero_vec, kernel_basis, left_inverse, q, right_inverse, solve,
    unit_vec, zero_vec, Rational, RatMatrix, Subspace,
};
use crate::pathalg::PathAlgebra;
use crate::structure::{radical_basis, StructureAlgebra};

struct RepInner {
    algebra: Arc<PathAlgebra>,
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
    basis_actions: OnceLock<Vec<RatMatrix>>,
}

/// A right module over `kQ/I`, cheap to clone.
#[derive(Clone)]
pub struct Representation {
    inner: Arc<RepInner>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation{:?}", self.inner.dims)
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims
                && self.inner.maps == other.inner.maps
                && same_algebra(&self.inner.algebra, &other.inner.algebra))
    }
}

fn same_algebra(a: &Arc<PathAlgebra>, b: &Arc<PathAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Validates matrix shapes and that every relation acts as zero.
    pub fn new(algebra: Arc<PathAlgebra>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() || maps.len() != q.arrows().len() {
            return Err(Error::InvalidRepresentation(
                "dimension vector or arrow list has the wrong length".into(),
            ));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix of arrow {} is {}x{}, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        let rep = Self::new_unchecked(algebra, dims, maps);
        let pres = rep.algebra().presentation().clone();
        for r in pres.relations() {
            let (s, t) = (r.source().unwrap(), r.target().unwrap());
            let mut acc = RatMatrix::zeros(rep.dims()[t], rep.dims()[s]);
            for (c, p) in &r.terms {
                acc = acc.add(&rep.act_path(&p.arrows, s).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "relation {} does not vanish",
                    r.render(pres.quiver())
                )));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: Arc<PathAlgebra>, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Self {
        Representation {
            inner: Arc::new(RepInner {
                algebra,
                dims,
                maps,
                basis_actions: OnceLock::new(),
            }),
        }
    }

    pub fn zero(algebra: Arc<PathAlgebra>) -> Self {
        let n = algebra.vertex_count();
        let maps = algebra
            .quiver()
            .arrows()
            .iter()
            .map(|_| RatMatrix::zeros(0, 0))
            .collect();
        Self::new_unchecked(algebra, vec![0; n], maps)
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.inner.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn total_dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.inner.maps
    }

    pub fn arrow_map(&self, a: usize) -> &RatMatrix {
        &self.inner.maps[a]
    }

    /// Action of the path with the given arrows starting at `source`.
    pub fn act_path(&self, arrows: &[usize], source: usize) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dims()[source]);
        for &a in arrows {
            m = self.inner.maps[a].mul(&m);
        }
        m
    }

    fn basis_actions(&self) -> &[RatMatrix] {
        self.inner.basis_actions.get_or_init(|| {
            self.algebra()
                .basis()
                .iter()
                .map(|p| self.act_path(&p.arrows, p.source))
                .collect()
        })
    }

    /// Action of an element of `e_s A e_t` given in local cell coordinates.
    pub fn act_local(&self, s: usize, t: usize, x: &[Rational]) -> RatMatrix {
        let alg = self.algebra();
        let acts = self.basis_actions();
        let mut m = RatMatrix::zeros(self.dims()[t], self.dims()[s]);
        for (k, &bi) in alg.cell(s, t).iter().enumerate() {
            if !x[k].is_zero() {
                m = m.add(&acts[bi].scale(&x[k]));
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert!(same_algebra(self.algebra(), other.algebra()));
        let dims = self.dims().iter().zip(other.dims()).map(|(a, b)| a + b).collect();
        let maps = self
            .maps()
            .iter()
            .zip(other.maps())
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new_unchecked(self.algebra().clone(), dims, maps)
    }

    pub fn direct_sum_all<'a>(algebra: &Arc<PathAlgebra>, parts: impl IntoIterator<Item = &'a Representation>) -> Representation {
        parts
            .into_iter()
            .fold(Representation::zero(algebra.clone()), |acc, m| acc.direct_sum(m))
    }

    /// Offset of this summand's vertex spaces inside a direct sum, per vertex.
    fn offsets_in_sum(parts: &[Representation], n: usize) -> Vec<Vec<usize>> {
        let mut running = vec![0; n];
        parts
            .iter()
            .map(|m| {
                let off = running.clone();
                for (r, d) in running.iter_mut().zip(m.dims()) {
                    *r += d;
                }
                off
            })
            .collect()
    }

    /// Restriction to the vertices of a quotient algebra `A/AeA` (given by vertex map).
    pub fn restrict(&self, target: &Arc<PathAlgebra>, vertex_map: &[Option<usize>]) -> Result<Representation> {
        let n = target.vertex_count();
        let mut dims = vec![0; n];
        for (v, m) in vertex_map.iter().enumerate() {
            match m {
                Some(w) => dims[*w] = self.dims()[v],
                None if self.dims()[v] != 0 => {
                    return Err(Error::InvalidRepresentation(
                        "module is not supported on the remaining vertices".into(),
                    ))
                }
                None => {}
            }
        }
        let q = self.algebra().quiver();
        let maps = target
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let orig = q.arrow_index(&a.label).expect("arrow labels preserved");
                self.arrow_map(orig).clone()
            })
            .collect();
        Representation::new(target.clone(), dims, maps)
    }
}

/// A module homomorphism, one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    source: Representation,
    target: Representation,
    components: Vec<RatMatrix>,
}

impl ModuleMap {
    pub fn new(source: &Representation, target: &Representation, components: Vec<RatMatrix>) -> Result<Self> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::PresentationMismatch);
        }
        let f = Self::new_unchecked(source, target, components);
        for (v, c) in f.components.iter().enumerate() {
            if c.rows() != target.dims()[v] || c.cols() != source.dims()[v] {
                return Err(Error::DimensionMismatch(format!("component at vertex {v}")));
            }
        }
        if !f.is_intertwining() {
            return Err(Error::InvalidRepresentation(
                "components do not commute with the arrows".into(),
            ));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Representation, target: &Representation, components: Vec<RatMatrix>) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let components = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(&s, &t)| RatMatrix::zeros(t, s))
            .collect();
        Self::new_unchecked(source, target, components)
    }

    pub fn identity(m: &Representation) -> Self {
        let components = m.dims().iter().map(|&d| RatMatrix::identity(d)).collect();
        Self::new_unchecked(m, m, components)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn components(&self) -> &[RatMatrix] {
        &self.components
    }

    pub fn component(&self, v: usize) -> &RatMatrix {
        &self.components[v]
    }

    pub fn is_intertwining(&self) -> bool {
        let q = self.source.algebra().quiver();
        q.arrows().iter().enumerate().all(|(ai, a)| {
            let lhs = self.target.arrow_map(ai).mul(&self.components[a.source]);
            let rhs = self.components[a.target].mul(self.source.arrow_map(ai));
            lhs == rhs
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatMatrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(RatMatrix::is_invertible)
    }

    /// `self` after `first`: `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::NotComposable("target of the first map is not the source of the second".into()));
        }
        Ok(self.compose_unchecked(first))
    }

    pub(crate) fn compose_unchecked(&self, first: &ModuleMap) -> ModuleMap {
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(g, f)| g.mul(f))
            .collect();
        Self::new_unchecked(&first.source, &self.target, components)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect();
        Self::new_unchecked(&self.source, &self.target, components)
    }

    pub fn scale(&self, c: &Rational) -> ModuleMap {
        let components = self.components.iter().map(|a| a.scale(c)).collect();
        Self::new_unchecked(&self.source, &self.target, components)
    }

    /// All entries, vertex by vertex in row-major order.
    pub fn flatten(&self) -> Vec<Rational> {
        self.components
            .iter()
            .flat_map(|c| c.entries().iter().cloned())
            .collect()
    }

    pub fn linear_combination(source: &Representation, target: &Representation, basis: &[ModuleMap], coeffs: &[Rational]) -> ModuleMap {
        let mut acc = ModuleMap::zero(source, target);
        for (f, c) in basis.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }
}

/// Basis of `Hom(M, N)` by solving the intertwining equations.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMap>> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::PresentationMismatch);
    }
    let dm = m.dims();
    let dn = n.dims();
    let nv = dm.len();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + dn[v] * dm[v];
    }
    let unknowns = offset[nv];
    let q = m.algebra().quiver();
    let eq_count: usize = q.arrows().iter().map(|a| dn[a.target] * dm[a.source]).sum();
    let mut sys = RatMatrix::zeros(eq_count, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let na = n.arrow_map(ai);
        let ma = m.arrow_map(ai);
        // N_a f_i - f_j M_a = 0, entry (r, c)
        for r in 0..dn[j] {
            for c in 0..dm[i] {
                for k in 0..dn[i] {
                    let x = &na[(r, k)];
                    if !x.is_zero() {
                        sys[(row, offset[i] + k * dm[i] + c)] += x;
                    }
                }
                for k in 0..dm[j] {
                    let x = &ma[(k, c)];
                    if !x.is_zero() {
                        sys[(row, offset[j] + r * dm[j] + k)] -= x;
                    }
                }
                row += 1;
            }
        }
    }
    let basis = kernel_basis(&sys);
    Ok(basis
        .into_iter()
        .map(|v| {
            let components = (0..nv)
                .map(|x| {
                    let entries: Vec<Vec<Rational>> = (0..dn[x])
                        .map(|r| v[offset[x] + r * dm[x]..offset[x] + (r + 1) * dm[x]].to_vec())
                        .collect();
                    RatMatrix::from_rows(dn[x], dm[x], entries).unwrap()
                })
                .collect();
            ModuleMap::new_unchecked(m, n, components)
        })
        .collect())
}

/// `Hom(M, N)` with coordinates relative to a fixed basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<ModuleMap>,
    coords: Subspace,
}

impl HomSpace {
    pub fn new(m: &Representation, n: &Representation) -> Result<HomSpace> {
        Ok(Self::from_basis(m, n, hom_space(m, n)?))
    }

    /// Uses the given maps (assumed independent) as basis.
    pub fn from_basis(m: &Representation, n: &Representation, basis: Vec<ModuleMap>) -> HomSpace {
        let ambient: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
        let mut coords = Subspace::new(ambient);
        for f in &basis {
            let added = coords.insert(&f.flatten());
            assert!(added, "hom basis must be linearly independent");
        }
        HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis,
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, f: &ModuleMap) -> Vec<Rational> {
        self.coords
            .coordinates(&f.flatten())
            .expect("map lies in the hom space")
    }

    pub fn element(&self, coeffs: &[Rational]) -> ModuleMap {
        ModuleMap::linear_combination(&self.source, &self.target, &self.basis, coeffs)
    }
}

/// Indecomposable projective `P_i = e_i A`: `(P_i)_j` has basis the normal paths `i -> j`.
pub fn projective(alg: &Arc<PathAlgebra>, i: usize) -> Representation {
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| alg.cell_dim(i, j)).collect();
    let q = alg.quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let cols: Vec<Vec<Rational>> = alg
                .cell(i, a.source)
                .iter()
                .map(|&b| {
                    let p = alg.basis()[b]
                        .concat(&crate::quiver::Path::arrow(q, ai))
                        .unwrap();
                    alg.reduce_local(&p)
                })
                .collect();
            RatMatrix::from_columns(dims[a.target], &cols)
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

/// Indecomposable injective `I_i = D(A e_i)`: `(I_i)_j` is dual to the normal paths `j -> i`.
pub fn injective(alg: &Arc<PathAlgebra>, i: usize) -> Representation {
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| alg.cell_dim(j, i)).collect();
    let q = alg.quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            // (f.a)(x) = f(a x): row x in cell(target, i), column y in cell(source, i)
            let rows: Vec<Vec<Rational>> = alg
                .cell(a.target, i)
                .iter()
                .map(|&b| {
                    let p = crate::quiver::Path::arrow(q, ai)
                        .concat(&alg.basis()[b])
                        .unwrap();
                    alg.reduce_local(&p)
                })
                .collect();
            RatMatrix::from_rows(dims[a.target], dims[a.source], rows).unwrap()
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

pub fn simple(alg: &Arc<PathAlgebra>, i: usize) -> Representation {
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|j| usize::from(j == i)).collect();
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|a| RatMatrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    Representation::new_unchecked(alg.clone(), dims, maps)
}

#[derive(Clone, Debug)]
pub struct CanonicalModules {
    pub simples: Vec<Representation>,
    pub projectives: Vec<Representation>,
    pub injectives: Vec<Representation>,
}

pub fn canonical_modules(alg: &Arc<PathAlgebra>) -> CanonicalModules {
    let n = alg.vertex_count();
    CanonicalModules {
        simples: (0..n).map(|i| simple(alg, i)).collect(),
        projectives: (0..n).map(|i| projective(alg, i)).collect(),
        injectives: (0..n).map(|i| injective(alg, i)).collect(),
    }
}

/// `D M = Hom_k(M, k)` as a module over the opposite algebra.
pub fn dual(m: &Representation) -> Representation {
    let op = m.algebra().opposite();
    dual_over(m, &op)
}

/// Dual over an already constructed opposite algebra.
pub fn dual_over(m: &Representation, op: &Arc<PathAlgebra>) -> Representation {
    let maps = m.maps().iter().map(RatMatrix::transpose).collect();
    Representation::new_unchecked(op.clone(), m.dims().to_vec(), maps)
}

/// `D f: D N -> D M` for `f: M -> N`.
pub fn dual_map(f: &ModuleMap, dm: &Representation, dn: &Representation) -> ModuleMap {
    let components = f.components().iter().map(RatMatrix::transpose).collect();
    ModuleMap::new_unchecked(dn, dm, components)
}

/// Kernel of `f` with its inclusion into the source.
pub fn kernel(f: &ModuleMap) -> (Representation, ModuleMap) {
    let src = f.source();
    let bases: Vec<RatMatrix> = f
        .components()
        .iter()
        .enumerate()
        .map(|(v, c)| RatMatrix::from_columns(src.dims()[v], &kernel_basis(c)))
        .collect();
    let dims: Vec<usize> = bases.iter().map(RatMatrix::cols).collect();
    let q = src.algebra().quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            left_inverse(&bases[a.target])
                .mul(src.arrow_map(ai))
                .mul(&bases[a.source])
        })
        .collect();
    let k = Representation::new_unchecked(src.algebra().clone(), dims, maps);
    let incl = ModuleMap::new_unchecked(&k, src, bases);
    (k, incl)
}

/// Cokernel of `f` with the projection from the target.
pub fn cokernel(f: &ModuleMap) -> (Representation, ModuleMap) {
    let tgt = f.target();
    let projections: Vec<RatMatrix> = f
        .components()
        .iter()
        .map(|c| cokernel_data(c).0)
        .collect();
    let sections: Vec<RatMatrix> = projections.iter().map(right_inverse).collect();
    let dims: Vec<usize> = projections.iter().map(RatMatrix::rows).collect();
    let q = tgt.algebra().quiver();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            projections[a.target]
                .mul(tgt.arrow_map(ai))
                .mul(&sections[a.source])
        })
        .collect();
    let c = Representation::new_unchecked(tgt.algebra().clone(), dims, maps);
    let proj = ModuleMap::new_unchecked(tgt, &c, projections);
    (c, proj)
}

/// Radical, top multiplicities and chosen top lifts of a module.
#[derive(Clone, Debug)]
pub struct TopData {
    /// Columns span `(rad M)_v`.
    pub radical: Vec<RatMatrix>,
    /// Multiplicity of `S_v` in the top.
    pub multiplicity: Vec<usize>,
    /// Vectors of `M_v` projecting to a basis of the top at `v`.
    pub lifts: Vec<Vec<Vec<Rational>>>,
}

pub fn top_and_radical(m: &Representation) -> TopData {
    let n = m.dims().len();
    let q = m.algebra().quiver();
    let mut radical = Vec::new();
    let mut multiplicity = Vec::new();
    let mut lifts = Vec::new();
    for v in 0..n {
        let dv = m.dims()[v];
        let mut rad = Subspace::new(dv);
        for (ai, a) in q.arrows().iter().enumerate() {
            if a.target == v {
                for col in m.arrow_map(ai).columns() {
                    rad.insert(&col);
                }
            }
        }
        let mut ext = rad.clone();
        let mut top = Vec::new();
        for i in 0..dv {
            let e = unit_vec(dv, i);
            if ext.insert(&e) {
                top.push(e);
            }
        }
        multiplicity.push(top.len());
        radical.push(RatMatrix::from_columns(dv, rad.basis()));
        lifts.push(top);
    }
    TopData {
        radical,
        multiplicity,
        lifts,
    }
}

/// Socle `{ m : m a = 0 for every arrow a }` per vertex, as column bases.
pub fn socle(m: &Representation) -> Vec<RatMatrix> {
    let n = m.dims().len();
    let q = m.algebra().quiver();
    (0..n)
        .map(|v| {
            let outgoing: Vec<usize> = q
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == v)
                .map(|(i, _)| i)
                .collect();
            let dv = m.dims()[v];
            let mut stacked = RatMatrix::zeros(0, dv);
            for ai in outgoing {
                stacked = stacked.vstack(m.arrow_map(ai));
            }
            RatMatrix::from_columns(dv, &kernel_basis(&stacked))
        })
        .collect()
}

/// A matrix of algebra elements describing a map between sums of canonical
/// projectives (or injectives): entry `(l, k)` lies in `e_{rows[l]} A e_{cols[k]}`
/// in local cell coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PathMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<Vec<Rational>>>,
}

impl PathMatrix {
    pub fn zero(alg: &PathAlgebra, rows: &[usize], cols: &[usize]) -> PathMatrix {
        PathMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: rows
                .iter()
                .map(|&r| cols.iter().map(|&c| zero_vec(alg.cell_dim(r, c))).collect())
                .collect(),
        }
    }

    /// Entry `(l, k)` of the result is entry `(k, l)` of `self`; used when dualising.
    pub fn transpose_blocks(&self) -> PathMatrix {
        PathMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: (0..self.cols.len())
                .map(|k| (0..self.rows.len()).map(|l| self.entries[l][k].clone()).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|v| is_zero_vec(v))
    }
}

/// A direct sum of canonical projectives `⊕ P_{v_k}`, or of canonical injectives.
#[derive(Clone, Debug)]
pub struct CanonicalSum {
    pub vertices: Vec<usize>,
    pub module: Representation,
    /// `offsets[k][w]`: where summand `k` starts inside the vertex space at `w`.
    offsets: Vec<Vec<usize>>,
    injective: bool,
}

impl CanonicalSum {
    pub fn projectives(alg: &Arc<PathAlgebra>, vertices: &[usize]) -> CanonicalSum {
        Self::build(alg, vertices, false)
    }

    pub fn injectives(alg: &Arc<PathAlgebra>, vertices: &[usize]) -> CanonicalSum {
        Self::build(alg, vertices, true)
    }

    fn build(alg: &Arc<PathAlgebra>, vertices: &[usize], injective_sum: bool) -> CanonicalSum {
        let parts: Vec<Representation> = vertices
            .iter()
            .map(|&v| if injective_sum { injective(alg, v) } else { projective(alg, v) })
            .collect();
        let offsets = Representation::offsets_in_sum(&parts, alg.vertex_count());
        let module = Representation::direct_sum_all(alg, &parts);
        CanonicalSum {
            vertices: vertices.to_vec(),
            module,
            offsets,
            injective: injective_sum,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        self.module.algebra()
    }

    /// Index of the generator `e_{v_k}` of summand `k` inside `module` at vertex `v_k`.
    pub fn generator_index(&self, k: usize) -> usize {
        self.offsets[k][self.vertices[k]]
    }

    pub fn offset(&self, k: usize, w: usize) -> usize {
        self.offsets[k][w]
    }

    /// Splits an element of the vertex space at `w` into summand components.
    pub fn split(&self, w: usize, x: &[Rational]) -> Vec<Vec<Rational>> {
        let alg = self.algebra();
        self.vertices
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let len = if self.injective { alg.cell_dim(w, v) } else { alg.cell_dim(v, w) };
                let o = self.offsets[k][w];
                x[o..o + len].to_vec()
            })
            .collect()
    }
}

/// The map out of a projective sum sending generator `k` to `images[k]` in `X_{v_k}`.
pub fn map_from_generators(src: &CanonicalSum, target: &Representation, images: &[Vec<Rational>]) -> ModuleMap {
    assert!(!src.injective);
    let alg = src.algebra().clone();
    let n = alg.vertex_count();
    let components = (0..n)
        .map(|w| {
            let mut c = RatMatrix::zeros(target.dims()[w], src.module.dims()[w]);
            for (k, &v) in src.vertices.iter().enumerate() {
                let o = src.offset(k, w);
                for l in 0..alg.cell_dim(v, w) {
                    let img = target
                        .act_local(v, w, &unit_vec(alg.cell_dim(v, w), l))
                        .mul_vec(&images[k]);
                    for (r, x) in img.into_iter().enumerate() {
                        c[(r, o + l)] = x;
                    }
                }
            }
            c
        })
        .collect();
    ModuleMap::new_unchecked(&src.module, target, components)
}

/// Images of the generators of a projective sum under `f`.
pub fn generator_images(f: &ModuleMap, src: &CanonicalSum) -> Vec<Vec<Rational>> {
    src.vertices
        .iter()
        .enumerate()
        .map(|(k, &v)| f.component(v).column(src.generator_index(k)))
        .collect()
}

/// Module map between projective sums given by a path matrix (`x -> p x` blockwise).
pub fn projective_map(src: &CanonicalSum, tgt: &CanonicalSum, pm: &PathMatrix) -> ModuleMap {
    let images: Vec<Vec<Rational>> = (0..src.vertices.len())
        .map(|k| {
            let mut v = Vec::new();
            for l in 0..tgt.vertices.len() {
                v.extend(pm.entries[l][k].iter().cloned());
            }
            v
        })
        .collect();
    map_from_generators(src, &tgt.module, &images)
}

/// Path matrix of a map between projective sums.
pub fn projective_path_matrix(f: &ModuleMap, src: &CanonicalSum, tgt: &CanonicalSum) -> PathMatrix {
    let images = generator_images(f, src);
    let entries = (0..tgt.vertices.len())
        .map(|l| {
            (0..src.vertices.len())
                .map(|k| tgt.split(src.vertices[k], &images[k])[l].clone())
                .collect()
        })
        .collect();
    PathMatrix {
        rows: tgt.vertices.clone(),
        cols: src.vertices.clone(),
        entries,
    }
}

/// Module map between injective sums given by a path matrix (`f -> f(- p)` blockwise).
pub fn injective_map(src: &CanonicalSum, tgt: &CanonicalSum, pm: &PathMatrix) -> ModuleMap {
    assert!(src.injective && tgt.injective);
    let alg = src.algebra().clone();
    let n = alg.vertex_count();
    let components = (0..n)
        .map(|w| {
            let mut c = RatMatrix::zeros(tgt.module.dims()[w], src.module.dims()[w]);
            for (l, &r) in tgt.vertices.iter().enumerate() {
                for (k, &s) in src.vertices.iter().enumerate() {
                    let p = &pm.entries[l][k];
                    if is_zero_vec(p) {
                        continue;
                    }
                    let (ro, co) = (tgt.offset(l, w), src.offset(k, w));
                    for x in 0..alg.cell_dim(w, r) {
                        let xp = alg.mul_local(w, r, s, &unit_vec(alg.cell_dim(w, r), x), p);
                        for (y, val) in xp.into_iter().enumerate() {
                            c[(ro + x, co + y)] = val;
                        }
                    }
                }
            }
            c
        })
        .collect();
    ModuleMap::new_unchecked(&src.module, &tgt.module, components)
}

/// Path matrix of a map between injective sums, read off the socle functionals.
pub fn injective_path_matrix(f: &ModuleMap, src: &CanonicalSum, tgt: &CanonicalSum) -> PathMatrix {
    let alg = src.algebra();
    let entries = tgt
        .vertices
        .iter()
        .enumerate()
        .map(|(l, &r)| {
            // functional e_r^* of summand l at vertex r; local index of e_r is 0
            let row = f.component(r).row(tgt.offset(l, r)).to_vec();
            src.vertices
                .iter()
                .enumerate()
                .map(|(k, &s)| {
                    let o = src.offset(k, r);
                    row[o..o + alg.cell_dim(r, s)].to_vec()
                })
                .collect()
        })
        .collect();
    PathMatrix {
        rows: tgt.vertices.clone(),
        cols: src.vertices.clone(),
        entries,
    }
}

/// Projective cover of `M`: generators mapped to chosen top lifts.
pub fn projective_cover(m: &Representation) -> (CanonicalSum, Vec<Vec<Rational>>) {
    let top = top_and_radical(m);
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for (v, lifts) in top.lifts.into_iter().enumerate() {
        for l in lifts {
            vertices.push(v);
            images.push(l);
        }
    }
    (CanonicalSum::projectives(m.algebra(), &vertices), images)
}

/// Minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p0: CanonicalSum,
    pub p1: CanonicalSum,
    /// `P0 -> M`
    pub cover: ModuleMap,
    /// `P1 -> P0`
    pub differential: ModuleMap,
    pub differential_matrix: PathMatrix,
}

pub fn min_proj_presentation(m: &Representation) -> ProjectivePresentation {
    let (p0, imgs0) = projective_cover(m);
    let cover = map_from_generators(&p0, m, &imgs0);
    let (k, incl) = kernel(&cover);
    let (p1, imgs1) = projective_cover(&k);
    let to_k = map_from_generators(&p1, &k, &imgs1);
    let differential = incl.compose_unchecked(&to_k);
    let differential_matrix = projective_path_matrix(&differential, &p1, &p0);
    ProjectivePresentation {
        p0,
        p1,
        cover,
        differential,
        differential_matrix,
    }
}

/// Injective envelope of `M`: socle functionals extended to `M`.
pub fn injective_envelope(m: &Representation) -> (CanonicalSum, ModuleMap) {
    let alg = m.algebra().clone();
    let soc = socle(m);
    let mut vertices = Vec::new();
    let mut functionals: Vec<Vec<Rational>> = Vec::new();
    for (v, basis) in soc.iter().enumerate() {
        let dv = m.dims()[v];
        // extend the socle basis to M_v; the dual basis elements on the socle part
        let mut cols = basis.columns();
        let mut ext = Subspace::spanned_by(dv, cols.iter());
        for i in 0..dv {
            let e = unit_vec(dv, i);
            if ext.insert(&e) {
                cols.push(e);
            }
        }
        let change = RatMatrix::from_columns(dv, &cols);
        let inv = change.inverse().unwrap_or_else(|| RatMatrix::zeros(0, 0));
        for s in 0..basis.cols() {
            vertices.push(v);
            functionals.push(inv.row(s).to_vec());
        }
    }
    let env = CanonicalSum::injectives(&alg, &vertices);
    let n = alg.vertex_count();
    let components = (0..n)
        .map(|w| {
            let mut c = RatMatrix::zeros(env.module.dims()[w], m.dims()[w]);
            for (k, &v) in vertices.iter().enumerate() {
                let o = env.offset(k, w);
                // iota(m)(x) = lambda(m x) for x a path w -> v
                for (xi, &b) in alg.cell(w, v).iter().enumerate() {
                    let px = &alg.basis()[b];
                    let act = m.act_path(&px.arrows, w);
                    let row = act.transpose().mul_vec(&functionals[k]);
                    for (col, val) in row.into_iter().enumerate() {
                        c[(o + xi, col)] = val;
                    }
                }
            }
            c
        })
        .collect();
    let iota = ModuleMap::new_unchecked(m, &env.module, components);
    (env, iota)
}

/// Minimal injective copresentation `0 -> M -> I0 -> I1`.
#[derive(Clone, Debug)]
pub struct InjectiveCopresentation {
    pub i0: CanonicalSum,
    pub i1: CanonicalSum,
    /// `M -> I0`
    pub envelope: ModuleMap,
    /// `I0 -> I1`
    pub differential: ModuleMap,
    pub differential_matrix: PathMatrix,
}

pub fn min_inj_copresentation(m: &Representation) -> InjectiveCopresentation {
    let (i0, envelope) = injective_envelope(m);
    let (c, proj) = cokernel(&envelope);
    let (i1, env1) = injective_envelope(&c);
    let differential = env1.compose_unchecked(&proj);
    let differential_matrix = injective_path_matrix(&differential, &i0, &i1);
    InjectiveCopresentation {
        i0,
        i1,
        envelope,
        differential,
        differential_matrix,
    }
}

/// Solves `sum_k c_k basis_k = target` for maps with common source and target.
pub fn solve_in_span(basis: &[ModuleMap], target: &ModuleMap) -> Option<Vec<Rational>> {
    let t = target.flatten();
    let cols: Vec<Vec<Rational>> = basis.iter().map(ModuleMap::flatten).collect();
    let m = RatMatrix::from_columns(t.len(), &cols);
    solve(&m, &t).expect("shapes agree")
}

/// Outcome of an isomorphism probe.
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// Certain: the witness is invertible at every vertex.
    Isomorphic(ModuleMap),
    DimensionVectorsDiffer,
    /// No invertible map found within the search budget.
    NotFound { random_trials: usize, sweep_size: usize },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

pub const ISO_RANDOM_TRIALS: usize = 20;
const ISO_SWEEP_MAX_DIM: usize = 8;

/// Randomised search for an invertible map `M -> N`.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<IsoVerdict> {
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::DimensionVectorsDiffer);
    }
    if m == n {
        return Ok(IsoVerdict::Isomorphic(ModuleMap::identity(m)));
    }
    let basis = hom_space(m, n)?;
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(ModuleMap::zero(m, n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..ISO_RANDOM_TRIALS {
        let range = 2 + trial as i64;
        let coeffs: Vec<Rational> = (0..basis.len()).map(|_| q(rng.gen_range(-range..=range))).collect();
        let f = ModuleMap::linear_combination(m, n, &basis, &coeffs);
        if f.is_isomorphism() {
            return Ok(IsoVerdict::Isomorphic(f));
        }
    }
    let mut sweep = 0;
    if basis.len() <= ISO_SWEEP_MAX_DIM {
        let total = 3usize.pow(basis.len() as u32);
        for code in 0..total {
            let mut c = code;
            let coeffs: Vec<Rational> = (0..basis.len())
                .map(|_| {
                    let d = (c % 3) as i64 - 1;
                    c /= 3;
                    q(d)
                })
                .collect();
            sweep += 1;
            let f = ModuleMap::linear_combination(m, n, &basis, &coeffs);
            if f.is_isomorphism() {
                return Ok(IsoVerdict::Isomorphic(f));
            }
        }
    }
    Ok(IsoVerdict::NotFound {
        random_trials: ISO_RANDOM_TRIALS,
        sweep_size: sweep,
    })
}

/// `End(M)` as a structure-constant algebra (composition `f g = f ∘ g`), without idempotents.
pub fn endomorphism_algebra(m: &Representation) -> Result<(HomSpace, StructureAlgebra)> {
    let end = HomSpace::new(m, m)?;
    let d = end.dim();
    let table = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| end.coordinates(&end.basis[i].compose_unchecked(&end.basis[j])))
                .collect()
        })
        .collect();
    let alg = StructureAlgebra::new((0..d).map(|i| format!("f{i}")).collect(), table, Vec::new(), Vec::new());
    Ok((end, alg))
}

/// `dim End(M) - dim rad End(M)`; equal to one exactly when `End(M)/rad` is the ground field.
pub fn endomorphism_top_dim(m: &Representation) -> Result<usize> {
    let (end, alg) = endomorphism_algebra(m)?;
    Ok(end.dim() - radical_basis(&alg).len())
}

/// Rejects summands whose endomorphism ring is not local with residue field `Q`.
pub fn check_indecomposable(m: &Representation, name: &str) -> Result<()> {
    if m.is_zero() || endomorphism_top_dim(m)? != 1 {
        return Err(Error::NotIndecomposable(name.to_string()));
    }
    Ok(())
}

/// Multiplicity of `P_v` as a direct summand of `M`, as the rank of the pairing
/// `Hom(P_v, M) x Hom(M, P_v) -> End(P_v) / rad`.
pub fn projective_multiplicity(m: &Representation, v: usize) -> Result<usize> {
    let p = projective(m.algebra(), v);
    pairing_rank(&p, m)
}

/// Multiplicity of `I_v` as a direct summand of `M`.
pub fn injective_multiplicity(m: &Representation, v: usize) -> Result<usize> {
    let i = injective(m.algebra(), v);
    pairing_rank(&i, m)
}

/// Rank of `(f, g) -> [g ∘ f]` in `End(X) / rad`, for `X` with local endomorphism ring.
fn pairing_rank(x: &Representation, m: &Representation) -> Result<usize> {
    let into = hom_space(x, m)?;
    let out = hom_space(m, x)?;
    if into.is_empty() || out.is_empty() {
        return Ok(0);
    }
    let (end, end_alg) = endomorphism_algebra(x)?;
    let rad = Subspace::spanned_by(end.dim(), radical_basis(&end_alg).iter());
    // functional: coordinate of the identity modulo the radical
    let mut ext = rad.clone();
    let id = end.coordinates(&ModuleMap::identity(x));
    ext.insert(&id);
    let mut b = RatMatrix::zeros(into.len(), out.len());
    for (i, f) in into.iter().enumerate() {
        for (j, g) in out.iter().enumerate() {
            let c = end.coordinates(&g.compose_unchecked(f));
            let coords = ext.coordinates(&c).expect("End(X) = k id + rad");
            b[(i, j)] = coords[rad.dim()].clone();
        }
    }
    Ok(b.rank())
}

/// Helper for tests and generators: module from dimension vector and integer matrices.
pub fn module_from_i64(alg: &Arc<PathAlgebra>, dims: &[usize], maps: &[&[&[i64]]]) -> Result<Representation> {
    let q = alg.quiver();
    let mats = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(a, rows)| {
            if rows.is_empty() {
                RatMatrix::zeros(dims[a.target], dims[a.source])
            } else {
                RatMatrix::from_i64(rows)
            }
        })
        .collect();
    Representation::new(alg.clone(), dims.to_vec(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{Quiver, QuiverPresentation};

    fn a2() -> Arc<PathAlgebra> {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2")]).unwrap();
        PathAlgebra::new(QuiverPresentation::hereditary(q).unwrap())
    }

    fn d4() -> Arc<PathAlgebra> {
        let q = Quiver::from_labels(
            &["1", "2", "3", "4"],
            &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        PathAlgebra::new(QuiverPresentation::hereditary(q).unwrap())
    }

    #[test]
    fn yoneda_on_a2() {
        let a = a2();
        let c = canonical_modules(&a);
        assert_eq!(hom_space(&c.projectives[0], &c.projectives[1]).unwrap().len(), 0);
        assert_eq!(hom_space(&c.projectives[1], &c.projectives[0]).unwrap().len(), 1);
        for m in c.simples.iter().chain(&c.projectives).chain(&c.injectives) {
            assert!(!hom_space(m, m).unwrap().is_empty());
        }
    }

    #[test]
    fn canonical_dimension_vectors() {
        let a = a2();
        let c = canonical_modules(&a);
        assert_eq!(c.projectives[0].dims(), &[1, 1]);
        assert_eq!(c.projectives[1].dims(), &[0, 1]);
        assert_eq!(c.injectives[0].dims(), &[1, 0]);
        assert_eq!(c.injectives[1].dims(), &[1, 1]);
        assert_eq!(c.simples[1].dims(), &[0, 1]);
        let h = d4();
        assert_eq!(projective(&h, 0).total_dim(), 3);
        assert_eq!(projective(&h, 0).dims(), &[1, 0, 1, 1]);
    }

    #[test]
    fn canonical_modules_satisfy_relations() {
        use crate::quiver::Relation;
        let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let r = Relation::parse(&q, "a b").unwrap();
        let alg = PathAlgebra::new(QuiverPresentation::new(q, vec![r]).unwrap());
        let c = canonical_modules(&alg);
        for m in c.projectives.iter().chain(&c.injectives).chain(&c.simples) {
            Representation::new(alg.clone(), m.dims().to_vec(), m.maps().to_vec()).unwrap();
        }
    }

    #[test]
    fn dual_of_projective_is_injective_of_opposite() {
        let a = a2();
        let op = a.opposite();
        let dp = dual_over(&projective(&a, 0), &op);
        let iop = injective(&op, 0);
        assert!(is_isomorphic(&dp, &iop, 1).unwrap().is_isomorphic());
        let ds = dual_over(&simple(&a, 1), &op);
        assert_eq!(ds, simple(&op, 1));
        let dd = dual(&dual(&projective(&a, 0)));
        assert_eq!(dd, projective(&a, 0));
    }

    #[test]
    fn injectives_are_duals_of_opposite_projectives() {
        let h = d4();
        let op = h.opposite();
        for v in 0..4 {
            let lhs = injective(&h, v);
            let rhs = dual_over(&projective(&op, v), &h);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tops() {
        let h = d4();
        let t = top_and_radical(&projective(&h, 0));
        assert_eq!(t.multiplicity, vec![1, 0, 0, 0]);
        let t = top_and_radical(&simple(&h, 2));
        assert!(t.radical.iter().all(|r| r.cols() == 0));
    }

    #[test]
    fn presentations_of_simples() {
        let a = a2();
        let p = min_proj_presentation(&simple(&a, 0));
        assert_eq!(p.p0.vertices, vec![0]);
        assert_eq!(p.p1.vertices, vec![1]);
        let p = min_proj_presentation(&projective(&a, 0));
        assert_eq!(p.p0.vertices, vec![0]);
        assert!(p.p1.vertices.is_empty());

        let h = d4();
        let p = min_proj_presentation(&simple(&h, 0));
        assert_eq!(p.p0.vertices, vec![0]);
        assert_eq!(p.p1.vertices, vec![2]);

        let c = min_inj_copresentation(&simple(&a, 1));
        assert_eq!(c.i0.vertices, vec![1]);
        assert_eq!(c.i1.vertices, vec![0]);
        let c = min_inj_copresentation(&injective(&a, 1));
        assert!(c.i1.vertices.is_empty());
    }

    #[test]
    fn envelope_is_injective_map() {
        let h = d4();
        for v in 0..4 {
            let m = projective(&h, v);
            let (_, iota) = injective_envelope(&m);
            assert!(iota.is_intertwining());
            assert!(kernel(&iota).0.is_zero());
        }
    }

    #[test]
    fn isomorphism_probe() {
        let a = a2();
        let p1 = projective(&a, 0);
        assert!(is_isomorphic(&p1, &p1, 0).unwrap().is_isomorphic());
        assert!(matches!(
            is_isomorphic(&simple(&a, 0), &simple(&a, 1), 0).unwrap(),
            IsoVerdict::DimensionVectorsDiffer
        ));
        assert!(is_isomorphic(&p1, &injective(&a, 1), 0).unwrap().is_isomorphic());
        let split = simple(&a, 0).direct_sum(&simple(&a, 1));
        assert!(!is_isomorphic(&p1, &split, 0).unwrap().is_isomorphic());
    }

    #[test]
    fn indecomposability_check() {
        let a = a2();
        check_indecomposable(&projective(&a, 0), "P1").unwrap();
        let split = simple(&a, 0).direct_sum(&simple(&a, 1));
        assert!(check_indecomposable(&split, "S1+S2").is_err());
    }

    #[test]
    fn projective_summands_are_counted() {
        let h = d4();
        let m = projective(&h, 0).direct_sum(&simple(&h, 0)).direct_sum(&projective(&h, 3));
        assert_eq!(projective_multiplicity(&m, 0).unwrap(), 1);
        assert_eq!(projective_multiplicity(&m, 3).unwrap(), 1);
        assert_eq!(projective_multiplicity(&m, 1).unwrap(), 0);
        assert_eq!(injective_multiplicity(&m, 0).unwrap(), 1);
    }

    #[test]
    fn relation_violation_rejected() {
        use crate::quiver::Relation;
        let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let r = Relation::parse(&q, "a b").unwrap();
        let alg = PathAlgebra::new(QuiverPresentation::new(q, vec![r]).unwrap());
        let bad = module_from_i64(&alg, &[1, 1, 1], &[&[&[1]], &[&[1]]]);
        assert!(matches!(bad, Err(Error::InvalidRepresentation(_))));
    }
}
