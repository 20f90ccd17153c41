//! Quadratic hulls `Z₂ = Z(I₂) ⊂ P^{k-1}`: construction from a code or from
//! the tensor span `W`, rational points over extensions, and the tests that
//! tie hull points to extensions and hyperplane sections of the code.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::bcode::BCode;
use crate::field::{Elem, Fq};
use crate::linalg::Subspace;
use crate::sym::{pairs, sym_dim};
use crate::Error;

/// Largest `(q^m)^k` enumerated for rational points.
pub const POINT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullSource {
    Code,
    Reduction,
    TensorSpan,
}

#[derive(Clone, Debug)]
pub struct QuadHull {
    field: Fq,
    k: usize,
    i2: Subspace,
    source: HullSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReport {
    pub dim_i2: usize,
    /// `m ↦ #Z₂(F_{q^m})`.
    pub point_counts: BTreeMap<u32, u64>,
    pub points_m1: Vec<Vec<Elem>>,
    pub ci_proxy: bool,
    pub canonical_in_hull: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    SquarePreserving,
    SquareGrowing,
}

/// Dimension count behind the complete-intersection question.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CiCount {
    pub dim_i2: usize,
    /// `binom(k+1, 2) − n`.
    pub bound: usize,
    pub proxy: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SecantReport {
    /// Rational points found on lines through two rational hull points.
    pub rational_secant_points: usize,
    /// Rational points on lines through conjugate pairs over `F_{q²}`.
    pub conjugate_secant_points: usize,
    pub checked: usize,
    /// Points with `dim H⁽²⁾ = dim C⁽²⁾`.
    pub violations: Vec<Vec<Elem>>,
}

impl QuadHull {
    pub fn from_code(code: &BCode) -> QuadHull {
        QuadHull { field: code.algebra().field().clone(), k: code.dim(), i2: code.i2(), source: HullSource::Code }
    }

    /// `I₂ = W^⊥` under the dot product on pair coordinates.
    pub fn from_w(w: &Subspace) -> Result<QuadHull, Error> {
        let s = w.ambient_dim();
        let k = (0..=s).find(|&k| sym_dim(k) >= s).unwrap_or(0);
        if sym_dim(k) != s {
            return Err(Error::InvalidArgument("ambient dimension is not a triangular number"));
        }
        Ok(QuadHull { field: w.field().clone(), k, i2: w.orthogonal(), source: HullSource::TensorSpan })
    }

    pub fn from_forms(field: &Fq, k: usize, i2: Subspace, source: HullSource) -> Result<QuadHull, Error> {
        if i2.ambient_dim() != sym_dim(k) {
            return Err(Error::DimensionMismatch { expected: sym_dim(k), found: i2.ambient_dim() });
        }
        Ok(QuadHull { field: field.clone(), k, i2, source })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn ambient_k(&self) -> usize {
        self.k
    }

    pub fn i2(&self) -> &Subspace {
        &self.i2
    }

    pub fn source(&self) -> HullSource {
        self.source
    }

    pub fn dim_i2(&self) -> usize {
        self.i2.dim()
    }

    fn sparse_forms(&self, map: impl Fn(Elem) -> Elem) -> Vec<Vec<(usize, usize, Elem)>> {
        let ps = pairs(self.k);
        self.i2
            .basis()
            .iter()
            .map(|q| ps.iter().zip(q).filter(|(_, c)| !c.is_zero()).map(|(&(i, j), &c)| (i, j, map(c))).collect())
            .collect()
    }

    /// Whether `x` (coordinates in `F_q`) lies on the hull.
    pub fn contains_point(&self, x: &[Elem]) -> bool {
        let f = &self.field;
        self.sparse_forms(|c| c).iter().all(|fm| vanishes(f, fm, x))
    }

    /// Projective points of the hull over `F_{q^m}`, normalized with first
    /// nonzero coordinate 1, in enumeration order.
    pub fn rational_points(&self, m: u32) -> Result<Vec<Vec<Elem>>, Error> {
        let emb = self.field.embed(m)?;
        let ext = &emb.ext;
        let qm = ext.order() as u64;
        let k = self.k;
        let size = qm.saturating_pow(k as u32);
        if size > POINT_BUDGET {
            return Err(Error::BudgetExceeded { size, cap: POINT_BUDGET });
        }
        let forms = self.sparse_forms(|c| emb.map(c));
        let mut out = Vec::new();
        let mut x = vec![Elem::ZERO; k];
        for lead in 0..k {
            let free = k - 1 - lead;
            for mut idx in 0..qm.pow(free as u32) {
                for v in x.iter_mut().take(lead) {
                    *v = Elem::ZERO;
                }
                x[lead] = Elem::ONE;
                for v in x.iter_mut().skip(lead + 1) {
                    *v = Elem((idx % qm) as u32);
                    idx /= qm;
                }
                if forms.iter().all(|fm| vanishes(ext, fm, &x)) {
                    out.push(x.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn count_points(&self, m: u32) -> Result<u64, Error> {
        Ok(self.rational_points(m)?.len() as u64)
    }

    /// Every form of `I₂` vanishes at the canonical point `(a_1 : … : a_k)`.
    pub fn contains_canonical(&self, a: &Algebra) -> Result<bool, Error> {
        if a.dim() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: a.dim() });
        }
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let pt = a.canonical_point();
        Ok(self.i2.basis().iter().all(|q| a.eval_form(q, &pt).iter().all(|e| e.is_zero())))
    }

    pub fn ci_count(&self, n: usize) -> CiCount {
        let bound = sym_dim(self.k).saturating_sub(n);
        CiCount { dim_i2: self.dim_i2(), bound, proxy: self.dim_i2() == bound }
    }

    pub fn classify_extension(&self, p: &[Elem]) -> Extension {
        if self.contains_point(p) {
            Extension::SquarePreserving
        } else {
            Extension::SquareGrowing
        }
    }

    /// Checks `dim H⁽²⁾ < dim C⁽²⁾` at rational points of secant lines.
    /// At most `limit` points are checked (all when `limit` is 0), spread
    /// evenly over the candidates.
    pub fn secant_check(&self, code: &BCode, limit: usize) -> Result<SecantReport, Error> {
        if code.dim() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: code.dim() });
        }
        let f = &self.field;
        let pts = self.rational_points(1)?;
        let mut cands: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for (i, p1) in pts.iter().enumerate() {
            for p2 in &pts[i + 1..] {
                for t in f.elements() {
                    let v: Vec<Elem> = p1.iter().zip(p2).map(|(&a, &b)| f.add(a, f.mul(t, b))).collect();
                    cands.insert(normalize(f, &v));
                }
                cands.insert(p2.clone());
            }
        }
        let rational = cands.len();
        let mut conj: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let q = f.order() as u64;
        if f.is_prime_field() && (q * q).saturating_pow(self.k as u32) <= POINT_BUDGET {
            let ext_f = f.embed(2)?.ext;
            for r in self.rational_points(2)? {
                // r = u + γ v over the prime field
                let split: Vec<Vec<u32>> = r.iter().map(|&e| ext_f.coeffs(e)).collect();
                let u: Vec<Elem> = split.iter().map(|c| Elem(c[0])).collect();
                let v: Vec<Elem> = split.iter().map(|c| Elem(c.get(1).copied().unwrap_or(0))).collect();
                if v.iter().all(|e| e.is_zero()) {
                    continue;
                }
                for s in f.elements() {
                    for t in f.elements() {
                        let w: Vec<Elem> = u.iter().zip(&v).map(|(&a, &b)| f.add(f.mul(s, a), f.mul(t, b))).collect();
                        if w.iter().any(|e| !e.is_zero()) {
                            let w = normalize(f, &w);
                            if !cands.contains(&w) {
                                conj.insert(w);
                            }
                        }
                    }
                }
            }
        }
        let mut report = SecantReport {
            rational_secant_points: rational,
            conjugate_secant_points: conj.len(),
            ..SecantReport::default()
        };
        let all: Vec<Vec<Elem>> = cands.into_iter().chain(conj).collect();
        let step = if limit == 0 { 1 } else { all.len().div_ceil(limit).max(1) };
        let c2 = code.square().dim();
        for p in all.iter().step_by(step) {
            let hd = code.hyperplane_data(p)?;
            report.checked += 1;
            if hd.h2.dim() >= c2 {
                report.violations.push(p.clone());
            }
        }
        Ok(report)
    }

    /// Point counts for `m = 1..=max_m` plus the flags.
    pub fn fingerprint(&self, max_m: u32, n: usize, a: Option<&Algebra>) -> Result<HullReport, Error> {
        let points_m1 = self.rational_points(1)?;
        let mut point_counts = BTreeMap::new();
        point_counts.insert(1, points_m1.len() as u64);
        for m in 2..=max_m {
            point_counts.insert(m, self.count_points(m)?);
        }
        let canonical_in_hull = a.map(|a| self.contains_canonical(a)).transpose()?;
        Ok(HullReport {
            dim_i2: self.dim_i2(),
            point_counts,
            points_m1,
            ci_proxy: self.ci_count(n).proxy,
            canonical_in_hull,
        })
    }
}

fn vanishes(f: &Fq, form: &[(usize, usize, Elem)], x: &[Elem]) -> bool {
    let mut acc = Elem::ZERO;
    for &(i, j, c) in form {
        acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
    }
    acc.is_zero()
}

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize(f: &Fq, v: &[Elem]) -> Vec<Elem> {
    match v.iter().find(|e| !e.is_zero()) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = f.inv(lead).expect("nonzero");
            v.iter().map(|&e| f.mul(inv, e)).collect()
        }
    }
}

/// Every point of `P^{k-1}(F_q)` with first nonzero coordinate 1.
pub fn projective_points(f: &Fq, k: usize) -> Vec<Vec<Elem>> {
    let q = f.order() as u64;
    let mut out = Vec::new();
    for lead in 0..k {
        for mut idx in 0..q.pow((k - 1 - lead) as u32) {
            let mut x = vec![Elem::ZERO; k];
            x[lead] = Elem::ONE;
            for v in x.iter_mut().skip(lead + 1) {
                *v = Elem((idx % q) as u32);
                idx /= q;
            }
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::multred::tensor_span;

    fn f7_code() -> BCode {
        // √2 = 3 in F_7
        let f = Fq::prime(7).unwrap();
        let g = Mat::from_u32(
            &f,
            &[&[1, 1, 1, 1, 1, 1, 1], &[0, 1, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1], &[0, 1, 6, 1, 6, 3, 4]],
        );
        BCode::from_generator(g).unwrap()
    }

    fn form(f: &Fq, k: usize, terms: &[(usize, usize, i64)]) -> Vec<Elem> {
        let mut q = vec![Elem::ZERO; sym_dim(k)];
        for &(i, j, c) in terms {
            let idx = crate::sym::pair_index(k, i, j);
            q[idx] = f.add(q[idx], f.from_int(c));
        }
        q
    }

    #[test]
    fn f7_example_i2_and_points() {
        let c = f7_code();
        let f = Fq::prime(7).unwrap();
        let h = QuadHull::from_code(&c);
        // variables w, x, y, z
        let expected = Subspace::from_vectors(
            &f,
            10,
            &[
                form(&f, 4, &[(1, 1, 1), (0, 1, -1)]),
                form(&f, 4, &[(2, 2, 1), (0, 2, -1)]),
                form(&f, 4, &[(1, 1, 1), (2, 2, 1), (3, 3, -1)]),
            ],
        );
        assert_eq!(h.i2(), &expected);
        let pts: BTreeSet<Vec<Elem>> = h.rational_points(1).unwrap().into_iter().collect();
        let cols: BTreeSet<Vec<Elem>> = (0..7).map(|j| normalize(&f, &c.generator().column(j))).collect();
        assert_eq!(pts, cols);
    }

    #[test]
    fn full_w_gives_projective_space() {
        let f = Fq::prime(2).unwrap();
        for k in [2usize, 3] {
            let h = QuadHull::from_w(&Subspace::full(&f, sym_dim(k))).unwrap();
            assert_eq!(h.dim_i2(), 0);
            assert_eq!(h.count_points(1).unwrap(), (1u64 << k) - 1);
        }
        let h = QuadHull::from_w(&Subspace::zero(&f, 6)).unwrap();
        assert_eq!(h.dim_i2(), 6);
        assert_eq!(h.count_points(1).unwrap(), 0);
    }

    #[test]
    fn p1_counts_over_extensions() {
        let f = Fq::prime(2).unwrap();
        let h = QuadHull::from_w(&Subspace::full(&f, 3)).unwrap();
        let r = h.fingerprint(3, 3, None).unwrap();
        assert_eq!(r.point_counts.values().copied().collect::<Vec<_>>(), vec![3, 5, 9]);
    }

    #[test]
    fn quadric_surface_counts() {
        // x0 x1 + x2 x3 = 0 is P¹ × P¹
        let f = Fq::prime(2).unwrap();
        let q = form(&f, 4, &[(0, 1, 1), (2, 3, 1)]);
        let h = QuadHull::from_forms(&f, 4, Subspace::from_vectors(&f, 10, &[q]), HullSource::Code).unwrap();
        for m in 1..=3u32 {
            let n = (1u64 << m) + 1;
            assert_eq!(h.count_points(m).unwrap(), n * n);
        }
    }

    #[test]
    fn duality_with_code_kernel() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for (q, k, n) in [(2u32, 3usize, 6usize), (2, 4, 9), (3, 3, 5), (2, 5, 13), (5, 3, 4)] {
            let f = Fq::prime(q).unwrap();
            for _ in 0..20 {
                let rows: Vec<Vec<Elem>> = (0..k).map(|_| (0..n).map(|_| Elem(rng.gen_range(0..q))).collect()).collect();
                let g = Mat::from_rows(&f, n, &rows).unwrap();
                if g.rank() < k {
                    continue;
                }
                let from_code = QuadHull::from_code(&BCode::from_generator(g.clone()).unwrap());
                let from_w = QuadHull::from_w(&tensor_span(&g)).unwrap();
                assert_eq!(from_code.i2().signature(), from_w.i2().signature());
            }
        }
    }

    #[test]
    fn extension_dichotomy_f7() {
        let c = f7_code();
        let h = QuadHull::from_code(&c);
        let f = h.field().clone();
        let base = c.square().dim();
        for p in projective_points(&f, 4) {
            let ext = c.extend(&p).unwrap().square().dim();
            assert!(ext == base || ext == base + 1);
            let direct = if ext == base { Extension::SquarePreserving } else { Extension::SquareGrowing };
            assert_eq!(h.classify_extension(&p), direct);
            let hd = c.hyperplane_data(&p).unwrap();
            assert_eq!(hd.hc.dim() < base, h.contains_point(&p));
        }
    }

    #[test]
    fn secants_of_f7_code() {
        let c = f7_code();
        let h = QuadHull::from_code(&c);
        let r = h.secant_check(&c, 0).unwrap();
        assert!(r.checked > 7);
        assert!(r.violations.is_empty(), "{r:?}");
    }

    #[test]
    fn canonical_membership() {
        let f = Fq::prime(2).unwrap();
        let a = Algebra::gf_ext(2, 2).unwrap();
        let good = QuadHull::from_code(&BCode::from_generator(Mat::from_u32(&f, &[&[1, 0, 1], &[0, 1, 1]])).unwrap());
        assert!(good.contains_canonical(&a).unwrap());
        let bad = QuadHull::from_code(&BCode::from_generator(Mat::identity(&f, 2)).unwrap());
        assert!(!bad.contains_canonical(&a).unwrap());
        let empty = QuadHull::from_w(&Subspace::full(&f, 3)).unwrap();
        assert!(empty.contains_canonical(&a).unwrap());
        assert_eq!(good.ci_count(3), CiCount { dim_i2: 0, bound: 0, proxy: true });
    }
}
