//! Indecomposables of a representation-finite hereditary algebra, obtained as
//! the τ⁻¹-orbits of the indecomposable projectives.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homological::tau_inv_data;
use crate::linalg::{frac, q, Rational};
use crate::pathalg::PathAlgebra;
use crate::quiver::Quiver;
use crate::rep::{projective, Representation};

/// An indecomposable `τ^{-k} P_v`.
#[derive(Clone, Debug)]
pub struct Knitted {
    pub module: Representation,
    pub vertex: usize,
    pub shift: usize,
}

impl Knitted {
    pub fn name(&self, q: &Quiver) -> String {
        let v = &q.vertices()[self.vertex];
        match self.shift {
            0 => format!("P{v}"),
            k => format!("t^-{k}P{v}"),
        }
    }
}

/// Symmetric Tits form matrix: `1` on the diagonal, `-m/2` for `m` arrows between two vertices.
fn tits_matrix(quiver: &Quiver) -> Vec<Vec<Rational>> {
    let n = quiver.vertex_count();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = q(1);
    }
    for a in quiver.arrows() {
        if a.source == a.target {
            m[a.source][a.source] -= q(1);
        } else {
            m[a.source][a.target] -= frac(1, 2);
            m[a.target][a.source] -= frac(1, 2);
        }
    }
    m
}

/// Positive definiteness of the Tits form by symmetric elimination (all pivots positive).
pub fn is_dynkin(q: &Quiver) -> bool {
    let mut m = tits_matrix(q);
    let n = m.len();
    for k in 0..n {
        if m[k][k] <= Rational::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    true
}

/// Value of the Tits form `q(x) = Σ x_i² − Σ_{arrows} x_s x_t`.
pub fn tits_form(q: &Quiver, x: &[i64]) -> i64 {
    let sq: i64 = x.iter().map(|v| v * v).sum();
    let cross: i64 = q.arrows().iter().map(|a| x[a.source] * x[a.target]).sum();
    sq - cross
}

const KNIT_CAP: usize = 512;

/// All indecomposables of a hereditary Dynkin algebra.
pub fn knit_indecomposables(alg: &Arc<PathAlgebra>) -> Result<Vec<Knitted>> {
    if !alg.presentation().relations().is_empty() {
        return Err(Error::NotDynkin("knitting needs a path algebra without relations".into()));
    }
    if !is_dynkin(alg.quiver()) {
        return Err(Error::NotDynkin("the Tits form is not positive definite".into()));
    }
    let mut out = Vec::new();
    for v in 0..alg.vertex_count() {
        let mut m = projective(alg, v);
        let mut shift = 0;
        while !m.is_zero() {
            out.push(Knitted {
                module: m.clone(),
                vertex: v,
                shift,
            });
            if out.len() > KNIT_CAP {
                return Err(Error::NotDynkin("knitting did not terminate".into()));
            }
            m = tau_inv_data(&m).module;
            shift += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::QuiverPresentation;
    use crate::rep::{injective, is_isomorphic};

    fn alg(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<PathAlgebra> {
        let q = Quiver::from_labels(vertices, arrows).unwrap();
        PathAlgebra::new(QuiverPresentation::hereditary(q).unwrap())
    }

    fn d4() -> Arc<PathAlgebra> {
        alg(&["1", "2", "3", "4"], &[("a", "1", "3"), ("b", "2", "3"), ("c", "3", "4")])
    }

    /// Positive roots by brute force over small dimension vectors.
    fn positive_roots(q: &Quiver, max: i64) -> Vec<Vec<i64>> {
        let n = q.vertex_count();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        loop {
            if x.iter().any(|&v| v > 0) && tits_form(q, &x) == 1 {
                out.push(x.clone());
            }
            let mut i = 0;
            while i < n && x[i] == max {
                x[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        out.sort();
        out
    }

    fn dim_vectors(list: &[Knitted]) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = list
            .iter()
            .map(|k| k.module.dims().iter().map(|&d| d as i64).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn dynkin_detection() {
        assert!(is_dynkin(d4().quiver()));
        let kronecker = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert!(!is_dynkin(&kronecker));
        let d4_tilde = Quiver::from_labels(
            &["0", "1", "2", "3", "4"],
            &[("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0"), ("d", "4", "0")],
        )
        .unwrap();
        assert!(!is_dynkin(&d4_tilde));
        let k = PathAlgebra::new(QuiverPresentation::hereditary(kronecker).unwrap());
        assert!(matches!(knit_indecomposables(&k), Err(Error::NotDynkin(_))));
    }

    #[test]
    fn counts_match_positive_roots() {
        let a2 = alg(&["1", "2"], &[("a", "1", "2")]);
        assert_eq!(knit_indecomposables(&a2).unwrap().len(), 3);
        let a3 = alg(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]);
        assert_eq!(knit_indecomposables(&a3).unwrap().len(), 6);
        let h = d4();
        let ks = knit_indecomposables(&h).unwrap();
        assert_eq!(ks.len(), 12);
        assert_eq!(dim_vectors(&ks), positive_roots(h.quiver(), 3));
    }

    #[test]
    fn knitted_modules_are_distinct_and_reach_injectives() {
        let h = d4();
        let ks = knit_indecomposables(&h).unwrap();
        for i in 0..ks.len() {
            for j in i + 1..ks.len() {
                assert!(!is_isomorphic(&ks[i].module, &ks[j].module, 0).unwrap().is_isomorphic());
            }
        }
        for v in 0..4 {
            let iv = injective(&h, v);
            assert!(ks.iter().any(|k| is_isomorphic(&k.module, &iv, 0).unwrap().is_isomorphic()));
            assert!(tau_inv_data(&iv).module.is_zero());
        }
    }
}
