//! Linear codes inside an algebra `B` (B-codes): squares, quadratic
//! kernels, non-degeneracy, extensions, hyperplane sections and minimum
//! distance.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::field::Elem;
use crate::linalg::{Mat, Subspace};
use crate::sym::pairs;
use crate::Error;

/// Largest span enumerated when looking for units in a local projection.
pub const UNIT_SEARCH_CAP: u64 = 4096;
/// Largest code enumerated for the minimum distance.
pub const MIN_DISTANCE_CAP: u64 = 1 << 20;

/// A code `C ⊂ B` with an explicit ordered basis `c_1, …, c_k`.
#[derive(Clone, Debug)]
pub struct BCode {
    algebra: Algebra,
    basis: Mat,
}

/// Hyperplane section data for a point `P`.
#[derive(Clone, Debug)]
pub struct HyperplaneData {
    /// `H = {Σ l_i c_i : Σ l_i P_i = 0}`.
    pub h: Subspace,
    /// `H·C`.
    pub hc: Subspace,
    /// `H⁽²⁾`.
    pub h2: Subspace,
}

impl BCode {
    /// `basis` is `k × dim B`, rows are the `c_i` in the basis of `B`.
    pub fn new(algebra: &Algebra, basis: Mat) -> Result<BCode, Error> {
        if basis.ncols() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: basis.ncols() });
        }
        if basis.field() != algebra.field() {
            return Err(Error::FieldMismatch);
        }
        if basis.rank() != basis.nrows() {
            return Err(Error::Dependent);
        }
        Ok(BCode { algebra: algebra.clone(), basis })
    }

    /// Code in `F_q^n` from a `k × n` generator matrix.
    pub fn from_generator(gen: Mat) -> Result<BCode, Error> {
        let b = Algebra::split(gen.field(), gen.ncols());
        BCode::new(&b, gen)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn generator(&self) -> &Mat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn length(&self) -> usize {
        self.algebra.dim()
    }

    pub fn codeword(&self, i: usize) -> Vec<Elem> {
        self.basis.row(i).to_vec()
    }

    pub fn subspace(&self) -> Subspace {
        self.basis.row_space()
    }

    /// Rows `c_i c_j` for `i ≤ j`, in pair order.
    pub fn pair_products(&self) -> Mat {
        let k = self.dim();
        let rows: Vec<Vec<Elem>> =
            pairs(k).into_iter().map(|(i, j)| self.algebra.mul(self.basis.row(i), self.basis.row(j))).collect();
        if rows.is_empty() {
            return Mat::zeros(self.algebra.field(), 0, self.length());
        }
        Mat::from_rows(self.algebra.field(), self.length(), &rows).expect("consistent")
    }

    /// `C⁽²⁾`, the span of all products of two codewords.
    pub fn square(&self) -> Subspace {
        self.pair_products().row_space()
    }

    /// `I₂(C)`: quadratic forms `q` (pair coordinates) with `Σ q_ij c_i c_j = 0`.
    pub fn i2(&self) -> Subspace {
        self.pair_products().left_kernel()
    }

    /// Whether every local factor sees a unit in the projection of `C`.
    pub fn nondegenerate(&self) -> Result<bool, Error> {
        let factors = self.algebra.local_factors()?;
        let f = self.algebra.field();
        let size = (f.order() as u64).saturating_pow(self.dim() as u32);
        if size > UNIT_SEARCH_CAP {
            return Err(Error::BudgetExceeded { size, cap: UNIT_SEARCH_CAP });
        }
        for lf in &factors {
            let projected = self.basis.mul(&lf.projection)?;
            let span = projected.row_space();
            if !span.enumerate().iter().any(|x| lf.algebra.is_unit(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extended code in `B × F_q` obtained by appending `λ_P(c_i) = P_i`.
    pub fn extend(&self, point: &[Elem]) -> Result<BCode, Error> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: point.len() });
        }
        if point.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let f = self.algebra.field();
        let b = Algebra::product(&self.algebra, &Algebra::base(f))?;
        let col: Vec<Vec<Elem>> = point.iter().map(|&x| vec![x]).collect();
        let gen = self.basis.hstack(&Mat::from_rows(f, 1, &col)?)?;
        BCode::new(&b, gen)
    }

    /// Hyperplane `H ⊂ C` of codewords `Σ l_i c_i` with `l ⊥ P`, and the
    /// spans `H·C` and `H⁽²⁾`.
    pub fn hyperplane_data(&self, point: &[Elem]) -> Result<HyperplaneData, Error> {
        let k = self.dim();
        if point.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: point.len() });
        }
        if point.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroVector);
        }
        let f = self.algebra.field();
        let p = Mat::from_rows(f, k, &[point.to_vec()])?;
        let ls = p.kernel();
        let hs: Vec<Vec<Elem>> = ls.basis().iter().map(|l| self.basis.apply(l)).collect();
        let n = self.length();
        let h = Subspace::from_vectors(f, n, &hs);
        let mut hc = Vec::new();
        for x in &hs {
            for i in 0..k {
                hc.push(self.algebra.mul(x, self.basis.row(i)));
            }
        }
        let mut h2 = Vec::new();
        for (a, x) in hs.iter().enumerate() {
            for y in &hs[a..] {
                h2.push(self.algebra.mul(x, y));
            }
        }
        Ok(HyperplaneData { h, hc: Subspace::from_vectors(f, n, &hc), h2: Subspace::from_vectors(f, n, &h2) })
    }

    /// Minimum Hamming weight, for codes in `F_q^n` only.
    pub fn min_distance(&self) -> Result<usize, Error> {
        if !self.algebra.is_split() {
            return Err(Error::Unsupported("minimum distance needs B = F_q^n"));
        }
        let f = self.algebra.field();
        let q = f.order() as u64;
        let size = q.saturating_pow(self.dim() as u32);
        if size > MIN_DISTANCE_CAP {
            return Err(Error::BudgetExceeded { size, cap: MIN_DISTANCE_CAP });
        }
        let n = self.length();
        let k = self.dim();
        // Gray-code style walk: update the codeword incrementally.
        let mut word = vec![Elem::ZERO; n];
        let mut digits = vec![0u32; k];
        let mut best = usize::MAX;
        for _ in 1..size {
            // increment the base-q counter and update the word
            let mut pos = 0;
            loop {
                digits[pos] += 1;
                let row = self.basis.row(pos);
                if digits[pos] == q as u32 {
                    digits[pos] = 0;
                    // subtract (q-1)·row, i.e. add row
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = f.add(*w, r);
                    }
                    pos += 1;
                } else {
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w = f.add(*w, r);
                    }
                    break;
                }
            }
            let wt = word.iter().filter(|e| !e.is_zero()).count();
            best = best.min(wt);
        }
        Ok(if best == usize::MAX { 0 } else { best })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::sym::sym_dim;

    fn gen(q: u32, rows: &[&[u32]]) -> Mat {
        Mat::from_u32(&Fq::with_order(q).unwrap(), rows)
    }

    #[test]
    fn unit_code_square() {
        let f2 = Fq::prime(2).unwrap();
        let b = Algebra::gf_ext(2, 3).unwrap();
        let c = BCode::new(&b, Mat::from_rows(&f2, 3, &[b.unit().to_vec()]).unwrap()).unwrap();
        assert_eq!(c.square(), c.subspace());
        assert!(c.nondegenerate().unwrap());
    }

    #[test]
    fn full_code_kernel_dimension() {
        for (q, k) in [(2u32, 4usize), (3, 3), (5, 3)] {
            let f = Fq::prime(q).unwrap();
            let c = BCode::from_generator(Mat::identity(&f, k)).unwrap();
            assert_eq!(c.i2().dim(), sym_dim(k) - k);
            assert_eq!(c.square().dim(), k);
        }
    }

    #[test]
    fn degenerate_support() {
        let c = BCode::from_generator(gen(2, &[&[1, 1, 0]])).unwrap();
        assert!(!c.nondegenerate().unwrap());
        let c = BCode::from_generator(gen(2, &[&[1, 1, 1]])).unwrap();
        assert!(c.nondegenerate().unwrap());
    }

    #[test]
    fn min_distances() {
        let rep = BCode::from_generator(gen(2, &[&[1, 1, 1, 1, 1]])).unwrap();
        assert_eq!(rep.min_distance().unwrap(), 5);
        let par = BCode::from_generator(gen(2, &[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!(par.min_distance().unwrap(), 2);
        let rep3 = BCode::from_generator(gen(3, &[&[1, 2, 1, 1]])).unwrap();
        assert_eq!(rep3.min_distance().unwrap(), 4);
    }

    #[test]
    fn square_dimension_identity() {
        let c = BCode::from_generator(gen(3, &[&[1, 1, 1, 1, 1, 1], &[0, 1, 2, 0, 1, 2], &[0, 0, 1, 1, 2, 2]])).unwrap();
        assert_eq!(c.square().dim() + c.i2().dim(), sym_dim(3));
    }

    #[test]
    fn extension_by_existing_column_keeps_square() {
        let c = BCode::from_generator(gen(2, &[&[1, 0, 0, 1, 1], &[0, 1, 0, 1, 0], &[0, 0, 1, 0, 1]])).unwrap();
        let ext = c.extend(&[Elem(1), Elem(1), Elem(0)]).unwrap();
        assert_eq!(ext.square().dim(), c.square().dim());
        assert!(matches!(c.extend(&[Elem(0); 3]), Err(Error::ZeroVector)));
    }

    #[test]
    fn hyperplane_has_codimension_one() {
        let c = BCode::from_generator(gen(3, &[&[1, 1, 1, 1], &[0, 1, 2, 1], &[0, 0, 1, 2]])).unwrap();
        let hd = c.hyperplane_data(&[Elem(1), Elem(2), Elem(0)]).unwrap();
        assert_eq!(hd.h.dim(), 2);
        assert!(hd.hc.contains(&hd.h2));
        assert!(c.square().contains(&hd.hc));
        // 1 ∈ C here, so H ⊆ H·C.
        assert!(hd.hc.contains(&hd.h));
    }

    #[test]
    fn rejects_dependent_basis() {
        assert!(matches!(BCode::from_generator(gen(2, &[&[1, 1], &[1, 1]])), Err(Error::Dependent)));
    }
}
