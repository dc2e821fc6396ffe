//! Exact dense linear algebra over the rationals.
//!
//! Row reduction is done fraction-free: every row is first scaled to integer
//! entries and then eliminated with Bareiss' update, so intermediate values are
//! minors of the input rather than ever-growing fractions. The final reduced
//! echelon form is normalised back to rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `p/q`, dropping the denominator when it is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[i] = Rational::one();
    v
}

pub fn add_scaled(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Dense rational matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from explicit rows. All rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Rational>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows}x{cols} entries"
            )));
        }
        Ok(RatMatrix {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = q(x);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (i, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                out[(i, c)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn rank(&self) -> usize {
        echelon(self).pivots.len()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let e = echelon(self);
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, row) in e.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[(i, j)] = x.clone();
            }
        }
        (out, e.pivots)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let aug = self.hstack(&Self::identity(n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

struct Echelon {
    /// Non-zero rows of the reduced row echelon form.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Fraction-free forward elimination followed by rational back substitution.
fn echelon(m: &RatMatrix) -> Echelon {
    let (nr, nc) = (m.rows, m.cols);
    // Clear denominators row by row; row scaling preserves the row space.
    let mut a: Vec<Vec<BigInt>> = (0..nr)
        .map(|r| {
            let row = m.row(r);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();

    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].magnitude().bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c..nc {
                let v = piv * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
            for j in 0..c {
                // entries left of the pivot column are already zero
                debug_assert!(row[j].is_zero());
            }
        }
        prev = piv.clone();
        pivots.push(c);
        r += 1;
    }

    let rank = pivots.len();
    let mut rows: Vec<Vec<Rational>> = a
        .into_iter()
        .take(rank)
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for i in (0..rank).rev() {
        let pc = pivots[i];
        let inv = rows[i][pc].recip();
        for x in rows[i].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[i].clone();
        for row in rows.iter_mut().take(i) {
            let f = row[pc].clone();
            if !f.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
    }
    Echelon { rows, pivots }
}

/// Basis of the right null space `{ v : m v = 0 }`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let e = echelon(m);
    let nc = m.cols;
    let mut is_pivot = vec![false; nc];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..nc)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vec(nc);
            v[free] = Rational::one();
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let aug = m.hstack(&RatMatrix::from_columns(m.rows, &[b.to_vec()]));
    let e = echelon(&aug);
    if e.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(m.cols);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[m.cols].clone();
    }
    Ok(Some(x))
}

/// Surjection from the codomain of `m` onto its cokernel, with the cokernel dimension.
///
/// The projection is `(rows - rank) x rows` and annihilates the column space of `m`.
pub fn cokernel_data(m: &RatMatrix) -> (RatMatrix, usize) {
    // Left kernel of m: vectors y with y^T m = 0. These rows form the projection.
    let rows = kernel_basis(&m.transpose());
    let dim = rows.len();
    let mut p = RatMatrix::zeros(dim, m.rows);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            p[(i, j)] = x.clone();
        }
    }
    (p, dim)
}

/// A right inverse of a surjective matrix (`p s = I`).
pub fn right_inverse(p: &RatMatrix) -> RatMatrix {
    let n = p.rows;
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            solve(p, &unit_vec(n, i))
                .expect("shape checked")
                .expect("matrix must be surjective")
        })
        .collect();
    RatMatrix::from_columns(p.cols, &cols)
}

/// A left inverse of an injective matrix (`l m = I`).
pub fn left_inverse(m: &RatMatrix) -> RatMatrix {
    right_inverse(&m.transpose()).transpose()
}

/// A subspace of `Q^n` kept in reduced echelon form, supporting membership tests,
/// incremental extension and coordinates relative to an insertion-ordered basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    /// Insertion-ordered basis.
    basis: Vec<Vec<Rational>>,
    /// Echelon rows: each row is (vector, pivot, combination of basis vectors producing it).
    reduced: Vec<(Vec<Rational>, usize, Vec<Rational>)>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            reduced: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Reduces `v` against the echelon rows, returning the residue and the
    /// combination of basis vectors that was subtracted.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = v.to_vec();
        let mut comb = zero_vec(self.basis.len());
        for (row, p, c) in &self.reduced {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone() / &row[*p];
            add_scaled(&mut r, &-f.clone(), row);
            let k = c.len();
            add_scaled(&mut comb[..k], &f, c);
        }
        (r, comb)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v).0)
    }

    /// Adds `v` if it is not already in the span. Returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let (r, comb) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // r = v - sum comb_i b_i; express it in terms of the extended basis.
        let k = self.basis.len();
        let mut c: Vec<Rational> = comb.into_iter().map(|x| -x).collect();
        c.push(Rational::one());
        debug_assert_eq!(c.len(), k + 1);
        self.basis.push(v.to_vec());
        for (_, _, cc) in self.reduced.iter_mut() {
            cc.resize(k + 1, Rational::zero());
        }
        self.reduced.push((r, p, c));
        true
    }

    /// Coordinates of `v` with respect to `basis()`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (r, comb) = self.reduce(v);
        if !is_zero_vec(&r) {
            return None;
        }
        let mut out = zero_vec(self.basis.len());
        for (i, x) in comb.into_iter().enumerate() {
            out[i] = x;
        }
        Some(out)
    }
}

/// A maximal linearly independent subfamily of `vectors`, in order.
pub fn independent_subset(ambient: usize, vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut s = Subspace::new(ambient);
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| s.insert(v))
        .map(|(i, _)| i)
        .collect()
}

pub fn abs_max(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
