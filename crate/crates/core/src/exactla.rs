//! Exact dense linear algebra over prime fields `F_p`.
//!
//! Matrices are row-major with entries reduced modulo `p`. Subspaces are
//! stored by their reduced row-echelon basis, which is unique, so two
//! subspaces are equal exactly when their stored bases are equal.

use std::fmt;

use crate::error::{dim_err, Error, Result};

/// A prime modulus together with the field operations on residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: 2 }
    }
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("{p} is not prime")));
        }
        if p > 65_521 {
            return Err(Error::Unsupported(format!("modulus {p} exceeds 65521")));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        reduce(x, self.p)
    }

    pub fn inv(&self, a: u32) -> u32 {
        inv(a, self.p)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[inline]
pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    reduce(t, p)
}

/// `row[i] -= f * src[i]` for all `i`.
#[inline]
fn axpy_sub(row: &mut [u32], src: &[u32], f: u32, p: u32) {
    if f == 0 {
        return;
    }
    let nf = neg(f, p) as u64;
    let p64 = p as u64;
    for (r, &s) in row.iter_mut().zip(src) {
        if s != 0 {
            *r = ((*r as u64 + nf * s as u64) % p64) as u32;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[F_{}; {}x{}](", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

/// Result of a row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if data.len() != rows * cols {
            return dim_err(format!("{} entries for a {rows}x{cols} matrix", data.len()));
        }
        Ok(Mat { p, rows, cols, data: data.into_iter().map(|x| x % p).collect() })
    }

    /// Builds a matrix from signed integer rows, reducing modulo `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return dim_err("ragged rows");
        }
        let data = rows.iter().flatten().map(|&x| reduce(x, p)).collect();
        Ok(Mat { p, rows: rows.len(), cols, data })
    }

    pub(crate) fn from_row_vecs(p: u32, cols: usize, rows: &[Vec<u32>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { p, rows: rows.len(), cols, data }
    }

    pub(crate) fn from_col_vecs(p: u32, rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = x;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows || self.p != other.p {
            return dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product of matrices whose shapes are known to agree.
    pub(crate) fn dot(&self, other: &Mat) -> Mat {
        debug_assert!(self.cols == other.rows && self.p == other.p, "shape mismatch in dot");
        self.mul_unchecked(other)
    }

    fn mul_unchecked(&self, other: &Mat) -> Mat {
        let p = self.p as u64;
        let n = other.cols;
        let mut out = Mat::zeros(self.p, self.rows, n);
        let mut acc = vec![0u64; n];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                }
                pending += 1;
                // keep the accumulator far from overflow
                if pending == 1 << 20 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * n + j] = (*x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim_err("matrix sum shape mismatch");
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add(a, b, p)).collect();
        Ok(Mat { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim_err("matrix difference shape mismatch");
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub(a, b, p)).collect();
        Ok(Mat { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: u32) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul(a, s % p, p)).collect() }
    }

    /// `self += s * other`, shapes assumed equal.
    pub(crate) fn add_scaled(&mut self, other: &Mat, s: u32) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_multiple_of(self.p) {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            if b != 0 {
                *a = add(*a, mul(b, s, p), p);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut m = Mat::zeros(self.p, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.data[i * m.cols + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return dim_err("hstack row mismatch");
        }
        let mut m = Mat::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            m.row_mut(r)[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return dim_err("vstack column mismatch");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, rank, pivots }
    }

    /// Reduces in place and returns pivot columns; nonzero rows come first.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let iv = inv(self.data[r * cols + c], p);
            if iv != 1 {
                for x in self.row_mut(r) {
                    *x = mul(*x, iv, p);
                }
            }
            let pivot_row: Vec<u32> = self.row(r).to_vec();
            for i in 0..rows {
                if i != r {
                    let f = self.data[i * cols + c];
                    if f != 0 {
                        axpy_sub(self.row_mut(i), &pivot_row, f, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Raw null-space basis vectors (`x` with `self * x = 0`).
    pub fn kernel_vectors(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[f] = 1 % p;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = neg(matrix.get(i, f), p);
            }
            out.push(v);
        }
        out
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_vectors(self.p, self.cols, &self.kernel_vectors())
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let t = self.transpose();
        let rows: Vec<Vec<u32>> = (0..t.rows).map(|r| t.row(r).to_vec()).collect();
        Subspace::from_vectors(self.p, self.rows, &rows)
    }

    /// One solution `X` of `self * X = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if b.rows != self.rows {
            return dim_err(format!("solve: {}x{} system with {} right-hand rows", self.rows, self.cols, b.rows));
        }
        let aug = self.hstack(b)?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.p, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = matrix.get(i, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.p, n)).ok()?;
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(matrix.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows.max(1)).is_zero()
    }

    /// Flattened entries as one long vector (row-major).
    pub(crate) fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }
}

/// A linear subspace of `F_p^n`, stored in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::zeros(p, 0, ambient), pivots: vec![] }
    }

    pub fn full(p: u32, ambient: usize) -> Subspace {
        Subspace { ambient, basis: Mat::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Subspace {
        let m = Mat::from_row_vecs(p, ambient, vectors);
        Subspace::from_rows_mat(m)
    }

    /// Row space of `m`.
    pub fn from_rows_mat(mut m: Mat) -> Subspace {
        let pivots = m.rref_in_place();
        let k = pivots.len();
        m.data.truncate(k * m.cols);
        m.rows = k;
        Subspace { ambient: m.cols, basis: m, pivots }
    }

    pub fn p(&self) -> u32 {
        self.basis.p
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                axpy_sub(&mut w, self.basis.row(i), f, p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return dim_err(format!("vector of length {} in ambient {}", v.len(), self.ambient));
        }
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    /// Coordinates of a member vector with respect to the stored basis.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Coordinates not used as pivots, in increasing order.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return dim_err(format!("ambient dimensions {} and {}", self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows_mat(self.basis.vstack(&other.basis)?))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let p = self.p();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(p, self.ambient));
        }
        // a*U = b*V  <=>  [U^T | V^T] (a, -b) = 0
        let stacked = self.basis.transpose().hstack(&other.basis.transpose())?;
        let k = self.dim();
        let vecs: Vec<Vec<u32>> = stacked
            .kernel_vectors()
            .into_iter()
            .map(|ab| {
                let mut x = vec![0u32; self.ambient];
                for (i, &a) in ab[..k].iter().enumerate() {
                    if a != 0 {
                        for (xj, &u) in x.iter_mut().zip(self.basis.row(i)) {
                            *xj = add(*xj, mul(a, u, p), p);
                        }
                    }
                }
                x
            })
            .collect();
        Ok(Subspace::from_vectors(p, self.ambient, &vecs))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every subspace of `F_p^n`, enumerated through all reduced row-echelon
/// patterns. Intended for exhaustive checks on tiny ambient spaces.
pub fn all_subspaces(p: u32, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
        // free positions: (row i, column c) with c > pivot_i and c not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &pc)| ((pc + 1)..n).filter(|c| mask >> c & 1 == 0).map(move |c| (i, c)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Mat::zeros(p, pivots.len(), n);
            for (i, &pc) in pivots.iter().enumerate() {
                m.set(i, pc, 1);
            }
            let mut c = code;
            for &(i, col) in &free {
                m.set(i, col, (c % p as u64) as u32);
                c /= p as u64;
            }
            out.push(Subspace { ambient: n, basis: m, pivots: pivots.clone() });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rref_identity_f2() {
        let r = Mat::identity(2, 2).rref();
        assert_eq!(r.matrix, Mat::identity(2, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rref_duplicate_rows_collapse() {
        let r = m(2, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, m(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_zero_f3() {
        let r = Mat::zeros(3, 2, 2).rref();
        assert!(r.matrix.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = m(2, &[&[1, 1], &[0, 0]]).kernel();
        assert_eq!(k, Subspace::from_vectors(2, 2, &[vec![1, 1]]));
    }

    #[test]
    fn image_of_identity_is_full() {
        assert_eq!(Mat::identity(5, 3).image(), Subspace::full(5, 3));
    }

    #[test]
    fn inconsistent_solve() {
        let b = m(3, &[&[1], &[0]]);
        assert!(Mat::zeros(3, 2, 2).solve(&b).unwrap().is_none());
        assert!(matches!(Mat::zeros(3, 2, 2).solve(&Mat::zeros(3, 3, 1)), Err(Error::Dimension(_))));
    }

    #[test]
    fn solve_finds_solution_mod_5() {
        let a = m(5, &[&[2, 1], &[1, 4]]);
        let b = m(5, &[&[4], &[1]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(a.checked_mul(&x).unwrap(), b);
    }

    #[test]
    fn subspace_sum_and_intersection_of_axes() {
        let e1 = Subspace::from_vectors(2, 2, &[vec![1, 0]]);
        let e2 = Subspace::from_vectors(2, 2, &[vec![0, 1]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2, 2));
        assert!(e1.intersection(&e2).unwrap().is_zero());
        assert_eq!(e1.intersection(&e1).unwrap(), e1);
        let bad = Subspace::zero(2, 3);
        assert!(e1.sum(&bad).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(7, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.checked_mul(&inv).unwrap(), Mat::identity(7, 3));
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn subspace_count_matches_gaussian_binomials() {
        // sum of Gaussian binomials [4 choose k]_2 = 1 + 15 + 35 + 15 + 1
        assert_eq!(all_subspaces(2, 4).len(), 67);
        // [2 choose k]_3 = 1 + 4 + 1
        assert_eq!(all_subspaces(3, 2).len(), 6);
    }
}
