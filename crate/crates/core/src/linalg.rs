//! Exact dense linear algebra over `Fq`.
//!
//! Vectors are row vectors; a matrix `M` acts by `x ↦ x·M`. Echelon forms
//! pivot on the leftmost nonzero column, so the reduced row echelon form of
//! a row space is its canonical representative.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Elem, Fq};
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c).0)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &Fq, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Fq, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(field: &Fq, cols: usize, rows: &[Vec<Elem>]) -> Result<Mat, Error> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Convenience constructor from small integers (reduced into the prime subfield
    /// only for prime fields; otherwise read as element encodings).
    pub fn from_u32(field: &Fq, rows: &[&[u32]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| Elem(x)).collect()).collect();
        Mat::from_rows(field, cols, &rows).expect("ragged matrix literal")
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rows, "vector length must equal row count");
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat, Error> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let cols = self.cols + other.cols;
        let mut out = Mat::zeros(&self.field, self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn is_prime_two(&self) -> bool {
        self.field.order() == 2
    }

    /// Reduced row echelon form. Dispatches to the word-packed routine over
    /// F_2 when the column count fits a machine word.
    pub fn rref(&self) -> Rref {
        if self.is_prime_two() && self.cols <= 64 {
            let packed = gf2::BitRows::from_mat(self);
            let (red, pivots) = packed.rref();
            let rank = pivots.len();
            return Rref { mat: red.to_mat(&self.field), rank, pivots };
        }
        self.rref_generic()
    }

    /// Field-generic Gauss–Jordan elimination.
    pub fn rref_generic(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, sel);
            let inv = f.inv(m.get(prow, c)).expect("pivot is nonzero");
            for cc in c..m.cols {
                let v = f.mul(m.get(prow, cc), inv);
                m.set(prow, cc, v);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for cc in c..m.cols {
                    let v = f.sub(m.get(r, cc), f.mul(factor, m.get(prow, cc)));
                    m.set(r, cc, v);
                }
            }
            pivots.push(c);
            prow += 1;
        }
        Rref { rank: pivots.len(), mat: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space `{x : M x = 0}` with `x` a column vector.
    pub fn kernel(&self) -> Subspace {
        let Rref { mat, pivots, .. } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Elem::ZERO; self.cols];
            v[fc] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(mat.get(r, fc));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    /// Left null space `{x : x M = 0}`.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Solves `M x = rhs` for a column vector `x`, setting free variables to
    /// zero. Returns `None` when inconsistent.
    pub fn solve(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal row count");
        let f = &self.field;
        let aug = self.hstack(&Mat::from_rows(f, 1, &rhs.iter().map(|&x| vec![x]).collect::<Vec<_>>()).ok()?).ok()?;
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = mat.get(r, self.cols);
        }
        Some(x)
    }

    /// Solves `x M = rhs` for a row vector `x`.
    pub fn solve_left(&self, rhs: &[Elem]) -> Option<Vec<Elem>> {
        self.transpose().solve(rhs)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Mat::identity(&self.field, self.rows)).ok()?;
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.cols {
            return None;
        }
        let mut inv = Mat::zeros(&self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                inv.set(r, c, mat.get(r, self.cols + c));
            }
        }
        Some(inv)
    }

    /// Row space as a canonical subspace.
    pub fn row_space(&self) -> Subspace {
        let Rref { mat, rank, pivots } = self.rref();
        let basis = (0..rank).map(|r| mat.row(r).to_vec()).collect();
        Subspace { field: self.field.clone(), ambient: self.cols, basis, pivots }
    }
}

/// A linear subspace of `Fq^n`, stored by its reduced echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Fq,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: ", self.dim(), self.ambient)?;
        for row in &self.basis {
            for e in row {
                write!(f, "{}", e.0)?;
            }
            write!(f, " ")?;
        }
        write!(f, ")")
    }
}

impl Subspace {
    pub fn zero(field: &Fq, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Fq, ambient: usize) -> Subspace {
        Mat::identity(field, ambient).row_space()
    }

    /// Span of the given vectors.
    pub fn from_vectors(field: &Fq, ambient: usize, vs: &[Vec<Elem>]) -> Subspace {
        if vs.is_empty() {
            return Subspace::zero(field, ambient);
        }
        Mat::from_rows(field, ambient, vs).expect("vector length must equal ambient dimension").row_space()
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_mat(&self) -> Mat {
        Mat::from_rows(&self.field, self.ambient, &self.basis).expect("consistent basis")
    }

    /// Canonical signature: the concatenated echelon rows.
    pub fn signature(&self) -> Vec<u32> {
        self.basis.iter().flat_map(|r| r.iter().map(|e| e.0)).collect()
    }

    /// Reduces `v` against the echelon basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn member(&self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Canonical echelon form of `self + ⟨v⟩`.
    pub fn join_vector(&self, v: &[Elem]) -> Subspace {
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::from_vectors(&self.field, self.ambient, &vs)
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(&self.field, self.ambient, &vs)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.member(v))
    }

    /// Orthogonal complement for the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(&self.field, self.ambient);
        }
        self.basis_mat().kernel()
    }

    /// Coordinates of a member `v` in terms of the echelon basis.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.member(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Every vector in the subspace (`q^dim` of them).
    pub fn enumerate(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        let q = f.order() as u64;
        let total = q.pow(self.dim() as u32);
        let mut out = Vec::with_capacity(total as usize);
        for mut idx in 0..total {
            let mut v = vec![Elem::ZERO; self.ambient];
            for row in &self.basis {
                let c = Elem((idx % q) as u32);
                idx /= q;
                if c.is_zero() {
                    continue;
                }
                for (o, &b) in v.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(c, b));
                }
            }
            out.push(v);
        }
        out
    }
}

/// Word-packed elimination over F_2: bit `c` of a row holds column `c`.
pub mod gf2 {
    use super::*;

    #[derive(Clone, Debug, PartialEq, Eq)]
    pub struct BitRows {
        pub cols: usize,
        pub rows: Vec<u64>,
    }

    impl BitRows {
        pub fn from_mat(m: &Mat) -> BitRows {
            assert!(m.ncols() <= 64, "packed GF(2) rows hold at most 64 columns");
            let rows = (0..m.nrows())
                .map(|r| {
                    m.row(r).iter().enumerate().fold(0u64, |acc, (c, e)| acc | ((e.0 as u64 & 1) << c))
                })
                .collect();
            BitRows { cols: m.ncols(), rows }
        }

        pub fn to_mat(&self, field: &Fq) -> Mat {
            let mut m = Mat::zeros(field, self.rows.len(), self.cols);
            for (r, &w) in self.rows.iter().enumerate() {
                for c in 0..self.cols {
                    if w >> c & 1 == 1 {
                        m.set(r, c, Elem::ONE);
                    }
                }
            }
            m
        }

        /// Gauss–Jordan on packed rows; returns the reduced form and pivots.
        pub fn rref(&self) -> (BitRows, Vec<usize>) {
            let mut rows = self.rows.clone();
            let mut pivots = Vec::new();
            let mut prow = 0;
            for c in 0..self.cols {
                if prow == rows.len() {
                    break;
                }
                let bit = 1u64 << c;
                let Some(sel) = (prow..rows.len()).find(|&r| rows[r] & bit != 0) else {
                    continue;
                };
                rows.swap(prow, sel);
                let piv = rows[prow];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != prow && *row & bit != 0 {
                        *row ^= piv;
                    }
                }
                pivots.push(c);
                prow += 1;
            }
            (BitRows { cols: self.cols, rows }, pivots)
        }

        pub fn rank(&self) -> usize {
            self.rref().1.len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_mat(f: &Fq, rows: usize, cols: usize, rng: &mut impl Rng) -> Mat {
        let vs: Vec<Vec<Elem>> =
            (0..rows).map(|_| (0..cols).map(|_| Elem(rng.gen_range(0..f.order()))).collect()).collect();
        Mat::from_rows(f, cols, &vs).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let f2 = Fq::prime(2).unwrap();
        let id = Mat::identity(&f2, 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.mat, id);
        let z = Mat::zeros(&f2, 3, 4);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().mat, z);
        assert_eq!(id.kernel().dim(), 0);
    }

    #[test]
    fn small_kernel() {
        let f2 = Fq::prime(2).unwrap();
        let m = Mat::from_u32(&f2, &[&[1, 1]]);
        let k = m.kernel();
        assert_eq!(k.basis(), &[vec![Elem(1), Elem(1)]]);
    }

    #[test]
    fn inconsistent_solve() {
        let f2 = Fq::prime(2).unwrap();
        let m = Mat::from_u32(&f2, &[&[1, 1], &[0, 0]]);
        assert_eq!(m.solve(&[Elem(1), Elem(1)]), None);
        let id = Mat::identity(&f2, 2);
        assert_eq!(id.solve(&[Elem(1), Elem(0)]), Some(vec![Elem(1), Elem(0)]));
    }

    #[test]
    fn rank_nullity_f3() {
        let f3 = Fq::prime(3).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let m = random_mat(&f3, 10, 15, &mut rng);
            let k = m.kernel();
            assert_eq!(k.dim() + m.rank(), 15);
            // Independent rank: row space of the transpose has the same dimension.
            assert_eq!(m.transpose().rank(), m.rank());
            for v in k.basis() {
                let col = Mat::from_rows(&f3, 1, &v.iter().map(|&x| vec![x]).collect::<Vec<_>>()).unwrap();
                assert!(m.mul(&col).unwrap().column(0).iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn solve_by_substitution() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for q in [2u32, 3, 4, 7, 9] {
            let f = Fq::with_order(q).unwrap();
            for _ in 0..40 {
                let m = random_mat(&f, 6, 5, &mut rng);
                let x: Vec<Elem> = (0..5).map(|_| Elem(rng.gen_range(0..q))).collect();
                let col = Mat::from_rows(&f, 1, &x.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
                let rhs = m.mul(&col).unwrap().column(0);
                let sol = m.solve(&rhs).expect("consistent");
                let col2 = Mat::from_rows(&f, 1, &sol.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
                assert_eq!(m.mul(&col2).unwrap().column(0), rhs);
            }
        }
    }

    #[test]
    fn rref_is_idempotent_and_canonical() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for q in [2u32, 3, 4, 5, 8] {
            let f = Fq::with_order(q).unwrap();
            for _ in 0..100 {
                let rows = rng.gen_range(1..8);
                let cols = rng.gen_range(1..9);
                let m = random_mat(&f, rows, cols, &mut rng);
                let r = m.rref();
                assert_eq!(r.mat.rref().mat, r.mat);
                // Change of basis: multiply by a random invertible matrix.
                let g = loop {
                    let g = random_mat(&f, rows, rows, &mut rng);
                    if g.inverse().is_some() {
                        break g;
                    }
                };
                let m2 = g.mul(&m).unwrap();
                assert_eq!(m2.row_space().signature(), m.row_space().signature());
            }
        }
    }

    #[test]
    fn packed_gf2_matches_generic() {
        let f2 = Fq::prime(2).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..1000 {
            let rows = rng.gen_range(1..=24);
            let cols = rng.gen_range(1..=24);
            let m = random_mat(&f2, rows, cols, &mut rng);
            let a = m.rref();
            let b = m.rref_generic();
            assert_eq!(a.mat, b.mat);
            assert_eq!(a.pivots, b.pivots);
        }
    }

    #[test]
    fn membership_and_join() {
        let f2 = Fq::prime(2).unwrap();
        let z = Subspace::zero(&f2, 2);
        assert!(z.member(&[Elem(0), Elem(0)]));
        let s = Subspace::from_vectors(&f2, 2, &[vec![Elem(1), Elem(0)]]);
        assert!(!s.member(&[Elem(0), Elem(1)]));
        let f3 = Fq::prime(3).unwrap();
        let mut acc = Subspace::zero(&f3, 6);
        for i in 0..4 {
            let mut v = vec![Elem(0); 6];
            v[i] = Elem(1);
            v[5] = Elem(2);
            acc = acc.join_vector(&v);
        }
        assert_eq!(acc.dim(), 4);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Fq::with_order(9).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..30 {
            let m = random_mat(&f, 4, 4, &mut rng);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv).unwrap(), Mat::identity(&f, 4));
            } else {
                assert!(m.rank() < 4);
            }
        }
    }
}
