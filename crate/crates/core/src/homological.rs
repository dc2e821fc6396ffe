//! Minimal projective resolutions, Ext groups with explicit cocycles, and the
//! Auslander-Reiten translates on objects and morphisms.
//!
//! An element of `Ext^n(M, N)` is stored as a cochain on the minimal resolution
//! of `M`: one vector of `N_v` per generator `e_v` of `P_n`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{right_inverse, solve, unit_vec, zero_vec, Rational, RatMatrix, Subspace};
use crate::pathalg::PathAlgebra;
use crate::rep::{
    cokernel, generator_images, hom_space, injective_envelope, injective_map,
    injective_multiplicity, kernel, map_from_generators, min_inj_copresentation,
    min_proj_presentation, projective_cover, projective_map, projective_multiplicity,
    projective_path_matrix, simple, solve_in_span, CanonicalSum, InjectiveCopresentation,
    ModuleMap, PathMatrix, Representation,
};

pub const DEFAULT_RESOLUTION_CAP: usize = 8;

/// `... -> P_1 -> P_0 -> M -> 0`, truncated at a length cap.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: Representation,
    pub terms: Vec<CanonicalSum>,
    /// `P_0 -> M`
    pub augmentation: ModuleMap,
    /// `differentials[k - 1]: P_k -> P_{k-1}`
    pub differentials: Vec<ModuleMap>,
    pub matrices: Vec<PathMatrix>,
    /// The last computed syzygy vanished, so the resolution is finite and exact as stored.
    pub complete: bool,
}

impl Resolution {
    /// `P_k`, or the zero sum past the end of a complete resolution.
    pub fn term(&self, k: usize) -> CanonicalSum {
        if k < self.terms.len() {
            self.terms[k].clone()
        } else {
            assert!(self.complete, "resolution too short for degree {k}");
            CanonicalSum::projectives(self.module.algebra(), &[])
        }
    }

    /// Path matrix of `d_k: P_k -> P_{k-1}` (zero outside the stored range).
    pub fn matrix(&self, k: usize) -> PathMatrix {
        let alg = self.module.algebra();
        if k >= 1 && k - 1 < self.matrices.len() {
            self.matrices[k - 1].clone()
        } else {
            let rows = if k == 0 { Vec::new() } else { self.term(k - 1).vertices };
            PathMatrix::zero(alg, &rows, &self.term(k).vertices)
        }
    }

    pub fn differential(&self, k: usize) -> ModuleMap {
        if k >= 1 && k - 1 < self.differentials.len() {
            self.differentials[k - 1].clone()
        } else {
            let src = self.term(k).module;
            let tgt = self.term(k - 1).module;
            ModuleMap::zero(&src, &tgt)
        }
    }

    /// Degrees available for Ext computations.
    pub fn covers_degree(&self, n: usize) -> bool {
        self.complete || self.terms.len() > n + 1
    }

    /// Projective dimension if the resolution is complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.iter().rposition(|t| !t.is_zero()).unwrap_or(0))
    }
}

/// Minimal resolution with terms `P_0..P_{max_len}` at most.
pub fn min_resolution(m: &Representation, max_len: usize) -> Resolution {
    let (p0, imgs) = projective_cover(m);
    let augmentation = map_from_generators(&p0, m, &imgs);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let mut matrices = Vec::new();
    let (mut syz, mut incl) = kernel(&augmentation);
    let mut k = 0;
    while !syz.is_zero() && k < max_len {
        let (p, imgs) = projective_cover(&syz);
        let to_syz = map_from_generators(&p, &syz, &imgs);
        let d = incl.compose_unchecked(&to_syz);
        matrices.push(projective_path_matrix(&d, &p, &terms[k]));
        differentials.push(d);
        let (s, i) = kernel(&to_syz);
        // inclusion of the new syzygy into P_{k+1}
        syz = s;
        incl = i;
        terms.push(p);
        k += 1;
    }
    let complete = syz.is_zero();
    Resolution {
        module: m.clone(),
        terms,
        augmentation,
        differentials,
        matrices,
        complete,
    }
}

/// Resolutions memoised per module. Not shared between threads.
#[derive(Default)]
pub struct ResolutionCache {
    entries: Vec<(Representation, Arc<Resolution>)>,
}

impl ResolutionCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A resolution of `m` good for Ext up to degree `n`.
    pub fn for_degree(&mut self, m: &Representation, n: usize) -> Arc<Resolution> {
        if let Some((_, r)) = self.entries.iter().find(|(k, r)| k == m && r.covers_degree(n)) {
            return r.clone();
        }
        let r = Arc::new(min_resolution(m, n + 1));
        self.entries.retain(|(k, _)| k != m);
        self.entries.push((m.clone(), r.clone()));
        r
    }
}

/// Cochains `Hom(P_k, N)` as stacked generator images.
fn cochain_len(term: &CanonicalSum, n: &Representation) -> usize {
    term.vertices.iter().map(|&v| n.dims()[v]).sum()
}

fn split_cochain<'a>(term: &CanonicalSum, n: &Representation, c: &'a [Rational]) -> Vec<&'a [Rational]> {
    let mut out = Vec::new();
    let mut o = 0;
    for &v in &term.vertices {
        out.push(&c[o..o + n.dims()[v]]);
        o += n.dims()[v];
    }
    out
}

/// `phi -> phi ∘ d_{k+1}` as a matrix `C^k -> C^{k+1}`.
fn coboundary_matrix(res: &Resolution, n: &Representation, k: usize) -> RatMatrix {
    let src = res.term(k);
    let tgt = res.term(k + 1);
    let pm = res.matrix(k + 1);
    let rows = cochain_len(&tgt, n);
    let cols = cochain_len(&src, n);
    let mut m = RatMatrix::zeros(rows, cols);
    let mut r0 = 0;
    for (j, &w) in tgt.vertices.iter().enumerate() {
        let mut c0 = 0;
        for (l, &v) in src.vertices.iter().enumerate() {
            let act = n.act_local(v, w, &pm.entries[l][j]);
            m.set_block(r0, c0, &act);
            c0 += n.dims()[v];
        }
        r0 += n.dims()[w];
    }
    m
}

/// Evaluates a cochain on an element of `P_k` at vertex `w`.
fn evaluate_cochain(term: &CanonicalSum, n: &Representation, c: &[Rational], w: usize, x: &[Rational]) -> Vec<Rational> {
    let parts = term.split(w, x);
    let mut out = zero_vec(n.dims()[w]);
    for ((&v, phi), xl) in term.vertices.iter().zip(split_cochain(term, n, c)).zip(parts) {
        let y = n.act_local(v, w, &xl).mul_vec(phi);
        for (o, y) in out.iter_mut().zip(y) {
            *o += y;
        }
    }
    out
}

/// An element of `Ext^n(M, N)` represented on a fixed resolution of `M`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub degree: usize,
    pub resolution: Arc<Resolution>,
    pub target: Representation,
    pub cochain: Vec<Rational>,
}

impl ExtClass {
    pub fn source(&self) -> &Representation {
        &self.resolution.module
    }

    /// The cocycle as a module map `P_n -> N`.
    pub fn representative(&self) -> ModuleMap {
        let term = self.resolution.term(self.degree);
        let images: Vec<Vec<Rational>> = split_cochain(&term, &self.target, &self.cochain)
            .into_iter()
            .map(<[Rational]>::to_vec)
            .collect();
        map_from_generators(&term, &self.target, &images)
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        let mut c = self.cochain.clone();
        for (a, b) in c.iter_mut().zip(&other.cochain) {
            *a += b;
        }
        ExtClass { cochain: c, ..self.clone() }
    }

    pub fn scale(&self, s: &Rational) -> ExtClass {
        ExtClass {
            cochain: self.cochain.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }
}

/// `Ext^n(M, N)`: cocycles modulo coboundaries, with a chosen basis of classes.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub degree: usize,
    pub resolution: Arc<Resolution>,
    pub target: Representation,
    /// Cochains of the basis classes.
    pub basis: Vec<Vec<Rational>>,
    coboundary_dim: usize,
    /// Coboundaries first, then the basis representatives.
    span: Subspace,
}

impl ExtSpace {
    pub fn new(res: &Arc<Resolution>, n_mod: &Representation, n: usize) -> ExtSpace {
        assert!(res.covers_degree(n), "resolution too short for Ext^{n}");
        let len = cochain_len(&res.term(n), n_mod);
        let cocycles = kernel_or_all(&coboundary_matrix(res, n_mod, n), len);
        let mut span = Subspace::new(len);
        if n > 0 {
            for col in coboundary_matrix(res, n_mod, n - 1).columns() {
                span.insert(&col);
            }
        }
        let coboundary_dim = span.dim();
        let mut basis = Vec::new();
        for z in cocycles {
            if span.insert(&z) {
                basis.push(z);
            }
        }
        ExtSpace {
            degree: n,
            resolution: res.clone(),
            target: n_mod.clone(),
            basis,
            coboundary_dim,
            span,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source(&self) -> &Representation {
        &self.resolution.module
    }

    pub fn class(&self, i: usize) -> ExtClass {
        ExtClass {
            degree: self.degree,
            resolution: self.resolution.clone(),
            target: self.target.clone(),
            cochain: self.basis[i].clone(),
        }
    }

    pub fn element(&self, coeffs: &[Rational]) -> ExtClass {
        let mut c = zero_vec(self.span.ambient());
        for (b, x) in self.basis.iter().zip(coeffs) {
            for (ci, bi) in c.iter_mut().zip(b) {
                *ci += x * bi;
            }
        }
        ExtClass {
            degree: self.degree,
            resolution: self.resolution.clone(),
            target: self.target.clone(),
            cochain: c,
        }
    }

    /// Coordinates of a cocycle's class; panics if `e` is not a cocycle here.
    pub fn coordinates(&self, e: &ExtClass) -> Vec<Rational> {
        assert_eq!(e.degree, self.degree);
        let c = self
            .span
            .coordinates(&e.cochain)
            .expect("cochain is a cocycle on this resolution");
        c[self.coboundary_dim..].to_vec()
    }

    pub fn is_zero_class(&self, e: &ExtClass) -> bool {
        self.coordinates(e).iter().all(Zero::is_zero)
    }

    pub fn is_cocycle(&self, cochain: &[Rational]) -> bool {
        self.span.contains(cochain)
    }
}

fn kernel_or_all(m: &RatMatrix, len: usize) -> Vec<Vec<Rational>> {
    if m.rows() == 0 {
        (0..len).map(|i| unit_vec(len, i)).collect()
    } else {
        crate::linalg::kernel_basis(m)
    }
}

/// `Ext^n(M, N)` on a fresh minimal resolution; `n = 0` gives `Hom(M, N)` via generators.
pub fn ext_space(m: &Representation, n_mod: &Representation, n: usize) -> ExtSpace {
    let res = Arc::new(min_resolution(m, n + 1));
    ExtSpace::new(&res, n_mod, n)
}

pub fn ext_dim(m: &Representation, n_mod: &Representation, n: usize) -> usize {
    ext_space(m, n_mod, n).dim()
}

/// `g ∘ e` for `g: N -> N'`.
pub fn ext_pushforward(e: &ExtClass, g: &ModuleMap) -> Result<ExtClass> {
    if g.source() != &e.target {
        return Err(Error::NotComposable("push-forward map must start at the Ext target".into()));
    }
    let term = e.resolution.term(e.degree);
    let mut cochain = Vec::new();
    for (&v, phi) in term.vertices.iter().zip(split_cochain(&term, &e.target, &e.cochain)) {
        cochain.extend(g.component(v).mul_vec(phi));
    }
    Ok(ExtClass {
        degree: e.degree,
        resolution: e.resolution.clone(),
        target: g.target().clone(),
        cochain,
    })
}

/// Lifts `a: M' -> M` to chain maps `alpha_k: P'_k -> P_k` for `k <= depth`.
pub fn lift_chain_map(a: &ModuleMap, src: &Resolution, tgt: &Resolution, depth: usize) -> Vec<ModuleMap> {
    let mut lifts: Vec<ModuleMap> = Vec::new();
    for k in 0..=depth {
        let p_src = src.term(k);
        let p_tgt = tgt.term(k);
        let images: Vec<Vec<Rational>> = p_src
            .vertices
            .iter()
            .enumerate()
            .map(|(j, &w)| {
                let gen = unit_vec(p_src.module.dims()[w], p_src.generator_index(j));
                let (rhs, d) = if k == 0 {
                    let y = src.augmentation.component(w).mul_vec(&gen);
                    (a.component(w).mul_vec(&y), tgt.augmentation.component(w).clone())
                } else {
                    let y = src.differential(k).component(w).mul_vec(&gen);
                    (lifts[k - 1].component(w).mul_vec(&y), tgt.differential(k).component(w).clone())
                };
                if d.cols() == 0 {
                    return Vec::new();
                }
                solve(&d, &rhs)
                    .expect("shapes agree")
                    .expect("exactness of the target resolution")
            })
            .collect();
        lifts.push(map_from_generators(&p_src, &p_tgt.module, &images));
    }
    lifts
}

/// `e ∘ a` for `a: M' -> M`, represented on `src_res` (a resolution of `M'`).
pub fn ext_pullback(e: &ExtClass, a: &ModuleMap, src_res: &Arc<Resolution>) -> Result<ExtClass> {
    if a.target() != e.source() {
        return Err(Error::NotComposable("pull-back map must end at the Ext source".into()));
    }
    if src_res.module != *a.source() {
        return Err(Error::NotComposable("resolution does not belong to the source of the map".into()));
    }
    let n = e.degree;
    let lifts = lift_chain_map(a, src_res, &e.resolution, n);
    let alpha = &lifts[n];
    let p_src = src_res.term(n);
    let p_tgt = e.resolution.term(n);
    let mut cochain = Vec::new();
    for (j, &w) in p_src.vertices.iter().enumerate() {
        let x = alpha.component(w).column(p_src.generator_index(j));
        cochain.extend(evaluate_cochain(&p_tgt, &e.target, &e.cochain, w, &x));
    }
    Ok(ExtClass {
        degree: n,
        resolution: src_res.clone(),
        target: e.target.clone(),
        cochain,
    })
}

/// Matrix of `x -> g ∘ x` from `src` to `tgt` in the chosen class bases.
pub fn pushforward_matrix(src: &ExtSpace, g: &ModuleMap, tgt: &ExtSpace) -> Result<RatMatrix> {
    let cols: Vec<Vec<Rational>> = (0..src.dim())
        .map(|i| Ok(tgt.coordinates(&ext_pushforward(&src.class(i), g)?)))
        .collect::<Result<_>>()?;
    Ok(RatMatrix::from_columns(tgt.dim(), &cols))
}

/// Matrix of `x -> x ∘ a` from `src` (on `M`) to `tgt` (on `M'`).
pub fn pullback_matrix(src: &ExtSpace, a: &ModuleMap, tgt: &ExtSpace) -> Result<RatMatrix> {
    let cols: Vec<Vec<Rational>> = (0..src.dim())
        .map(|i| Ok(tgt.coordinates(&ext_pullback(&src.class(i), a, &tgt.resolution)?)))
        .collect::<Result<_>>()?;
    Ok(RatMatrix::from_columns(tgt.dim(), &cols))
}

/// Projective or global dimension within a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimBound {
    Finite(usize),
    ExceedsBound(usize),
}

impl DimBound {
    pub fn at_most(&self, n: usize) -> bool {
        matches!(self, DimBound::Finite(d) if *d <= n)
    }
}

impl fmt::Display for DimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimBound::Finite(d) => write!(f, "{d}"),
            DimBound::ExceedsBound(b) => write!(f, ">{b}"),
        }
    }
}

pub fn proj_dim(m: &Representation, bound: usize) -> DimBound {
    if m.is_zero() {
        return DimBound::Finite(0);
    }
    let r = min_resolution(m, bound);
    match r.length() {
        Some(l) => DimBound::Finite(l),
        None => DimBound::ExceedsBound(bound),
    }
}

/// Maximum projective dimension of the simples.
pub fn global_dimension(alg: &Arc<PathAlgebra>, bound: usize) -> DimBound {
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        match proj_dim(&simple(alg, v), bound) {
            DimBound::Finite(d) => best = best.max(d),
            e => return e,
        }
    }
    DimBound::Finite(best)
}

/// A translate together with the multiplicities of the summands it discarded.
#[derive(Clone, Debug)]
pub struct Translate {
    pub module: Representation,
    /// `(vertex, multiplicity)` of projective (for τ) or injective (for τ⁻¹) summands dropped.
    pub dropped: Vec<(usize, usize)>,
}

/// `τ M = ker(ν P_1 -> ν P_0)` on a minimal projective presentation.
pub fn tau(m: &Representation) -> Result<Translate> {
    let pres = min_proj_presentation(m);
    let alg = m.algebra();
    let i1 = CanonicalSum::injectives(alg, &pres.p1.vertices);
    let i0 = CanonicalSum::injectives(alg, &pres.p0.vertices);
    let nu = injective_map(&i1, &i0, &pres.differential_matrix);
    let (k, _) = kernel(&nu);
    let mut dropped = Vec::new();
    for v in 0..alg.vertex_count() {
        let c = projective_multiplicity(m, v)?;
        if c > 0 {
            dropped.push((v, c));
        }
    }
    Ok(Translate { module: k, dropped })
}

/// Data of `τ⁻¹ M = coker(ν⁻¹ I^0 -> ν⁻¹ I^1)`, kept for inducing maps.
#[derive(Clone, Debug)]
pub struct TauInverse {
    pub module: Representation,
    pub copresentation: InjectiveCopresentation,
    pub p0: CanonicalSum,
    pub p1: CanonicalSum,
    /// `ν⁻¹ I^1 -> τ⁻¹ M`
    pub projection: ModuleMap,
    sections: Vec<RatMatrix>,
}

pub fn tau_inv_data(m: &Representation) -> TauInverse {
    let copresentation = min_inj_copresentation(m);
    let alg = m.algebra();
    let p0 = CanonicalSum::projectives(alg, &copresentation.i0.vertices);
    let p1 = CanonicalSum::projectives(alg, &copresentation.i1.vertices);
    let d = projective_map(&p0, &p1, &copresentation.differential_matrix);
    let (module, projection) = cokernel(&d);
    let sections = projection.components().iter().map(right_inverse).collect();
    TauInverse {
        module,
        copresentation,
        p0,
        p1,
        projection,
        sections,
    }
}

pub fn tau_inv(m: &Representation) -> Result<Translate> {
    let data = tau_inv_data(m);
    let mut dropped = Vec::new();
    for v in 0..m.algebra().vertex_count() {
        let c = injective_multiplicity(m, v)?;
        if c > 0 {
            dropped.push((v, c));
        }
    }
    Ok(Translate {
        module: data.module,
        dropped,
    })
}

/// `Tr D M`, computed over the opposite algebra; a second route to `τ⁻¹ M`.
pub fn tau_inv_via_transpose(m: &Representation) -> Representation {
    let alg = m.algebra();
    let op = alg.opposite();
    let dm = crate::rep::dual_over(m, &op);
    let pres = min_proj_presentation(&dm);
    let src = CanonicalSum::projectives(alg, &pres.p0.vertices);
    let tgt = CanonicalSum::projectives(alg, &pres.p1.vertices);
    let tr = projective_map(&src, &tgt, &pres.differential_matrix.transpose_blocks());
    cokernel(&tr).0
}

/// Path matrix of a map `I -> I'` between injective sums solving `x ∘ left = right`.
fn lift_into_injective(src: &CanonicalSum, tgt: &CanonicalSum, left: &ModuleMap, right: &ModuleMap) -> PathMatrix {
    let alg = src.algebra().clone();
    let mut slots = Vec::new();
    let mut maps = Vec::new();
    for (l, &r) in tgt.vertices.iter().enumerate() {
        for (k, &s) in src.vertices.iter().enumerate() {
            let d = alg.cell_dim(r, s);
            for i in 0..d {
                let mut pm = PathMatrix::zero(&alg, &tgt.vertices, &src.vertices);
                pm.entries[l][k] = unit_vec(d, i);
                maps.push(injective_map(src, tgt, &pm).compose_unchecked(left));
                slots.push((l, k, i));
            }
        }
    }
    let mut pm = PathMatrix::zero(&alg, &tgt.vertices, &src.vertices);
    if maps.is_empty() {
        assert!(right.is_zero(), "no lift exists into the zero injective");
        return pm;
    }
    let coeffs = solve_in_span(&maps, right).expect("injectivity guarantees a lift");
    for ((l, k, i), c) in slots.into_iter().zip(coeffs) {
        pm.entries[l][k][i] = c;
    }
    pm
}

/// `τ⁻¹ f` on precomputed data for the source and target.
pub fn tau_inv_map_with(f: &ModuleMap, src: &TauInverse, tgt: &TauInverse) -> ModuleMap {
    let cs = &src.copresentation;
    let ct = &tgt.copresentation;
    let right0 = ct.envelope.compose_unchecked(f);
    let pm0 = lift_into_injective(&cs.i0, &ct.i0, &cs.envelope, &right0);
    let f0 = injective_map(&cs.i0, &ct.i0, &pm0);
    let right1 = ct.differential.compose_unchecked(&f0);
    let pm1 = lift_into_injective(&cs.i1, &ct.i1, &cs.differential, &right1);
    let g1 = projective_map(&src.p1, &tgt.p1, &pm1);
    let components = (0..f.source().dims().len())
        .map(|w| {
            tgt.projection
                .component(w)
                .mul(g1.component(w))
                .mul(&src.sections[w])
        })
        .collect();
    ModuleMap::new_unchecked(&src.module, &tgt.module, components)
}

pub fn tau_inv_map(f: &ModuleMap) -> ModuleMap {
    let src = tau_inv_data(f.source());
    let tgt = tau_inv_data(f.target());
    tau_inv_map_with(f, &src, &tgt)
}

/// `dim Hom(M, N)` modulo maps factoring through a projective.
pub fn stable_hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let all = hom_space(m, n)?;
    let (cover, imgs) = projective_cover(n);
    let pi = map_from_generators(&cover, n, &imgs);
    let through = hom_space(m, &cover.module)?;
    let ambient: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let factored = Subspace::spanned_by(ambient, through.iter().map(|h| pi.compose_unchecked(h).flatten()).collect::<Vec<_>>().iter());
    Ok(all.len() - factored.dim())
}

/// `dim Hom(M, N)` modulo maps factoring through an injective.
pub fn costable_hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let all = hom_space(m, n)?;
    let (env, iota) = injective_envelope(m);
    let through = hom_space(&env.module, n)?;
    let ambient: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    let factored = Subspace::spanned_by(ambient, through.iter().map(|h| h.compose_unchecked(&iota).flatten()).collect::<Vec<_>>().iter());
    Ok(all.len() - factored.dim())
}

/// Coordinates of the generator images of `f` out of a projective sum; handy for tests.
pub fn generator_cochain(f: &ModuleMap, src: &CanonicalSum) -> Vec<Rational> {
    generator_images(f, src).concat()
}
