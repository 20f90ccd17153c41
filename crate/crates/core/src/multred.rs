//! Multiplication reductions `φ: A ⇝ B`: verification through the quadratic
//! kernel of the image code, adjoints, products, composition, diagonal
//! equivalence and supercodes.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::bcode::BCode;
use crate::field::Elem;
use crate::linalg::{Mat, Subspace};
use crate::sym::{elementary_tensor, pairs, sym_dim};
use crate::Error;

/// Brute-force cap for the diagonal equivalence search.
pub const DIAG_EQUIV_CAP: u64 = 1 << 20;
/// Cap on the number of normalized candidate points in the witness search.
pub const WITNESS_CAP: u64 = 1 << 22;
/// Algebras up to this size get full multiplication tables in the witness
/// search.
const TABLE_LIMIT: u64 = 1024;

/// Outcome of a verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// `φ` is not injective.
    NotInjective,
    /// A form of `I₂(φ)` that does not vanish at the canonical point of `A`.
    Violated(Vec<Elem>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Clone, Debug)]
pub struct MultReduction {
    a: Algebra,
    b: Algebra,
    phi: Mat,
    omega: Option<Mat>,
}

/// Checks `φ` (rows `φ(a_i)`) against `I₂(φ)`. For split `B` the span test
/// `B_l ∈ ⟨φ_r^{⊗2}⟩` is run as well and must agree.
pub fn is_mult_reduction(a: &Algebra, b: &Algebra, phi: &Mat) -> Result<Verdict, Error> {
    check_shape(a, b, phi)?;
    if phi.rank() < a.dim() {
        return Ok(Verdict::NotInjective);
    }
    let code = BCode::new(b, phi.clone())?;
    let i2 = code.i2();
    let point = a.canonical_point();
    let mut verdict = Verdict::Holds;
    for q in i2.basis() {
        if a.eval_form(q, &point).iter().any(|e| !e.is_zero()) {
            verdict = Verdict::Violated(q.clone());
            break;
        }
    }
    if b.is_split() && span_test(a, phi) != verdict.holds() {
        return Err(Error::SelfCheck("kernel test and span test disagree"));
    }
    Ok(verdict)
}

/// `B_1, …, B_k ∈ ⟨φ_1^{⊗2}, …, φ_n^{⊗2}⟩` where `φ_r` is column `r` of
/// `phi`, read as a linear form on `A`. Meaningful only for split `B`.
pub fn span_test(a: &Algebra, phi: &Mat) -> bool {
    let w = tensor_span(phi);
    a.mult_tensor().bforms.iter().all(|bl| w.member(bl))
}

/// `W = ⟨φ_r^{⊗2}⟩` inside the symmetric square of `A*`.
pub fn tensor_span(phi: &Mat) -> Subspace {
    let f = phi.field();
    let k = phi.nrows();
    let ts: Vec<Vec<Elem>> = (0..phi.ncols()).map(|r| elementary_tensor(f, &phi.column(r))).collect();
    Subspace::from_vectors(f, sym_dim(k), &ts)
}

fn check_shape(a: &Algebra, b: &Algebra, phi: &Mat) -> Result<(), Error> {
    if a.field() != b.field() || phi.field() != a.field() {
        return Err(Error::FieldMismatch);
    }
    if phi.nrows() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: phi.nrows() });
    }
    if phi.ncols() != b.dim() {
        return Err(Error::DimensionMismatch { expected: b.dim(), found: phi.ncols() });
    }
    Ok(())
}

/// The `dim B × k` matrix of `ω`, determined on `C_φ⁽²⁾` and zero on the
/// span of the non-pivot unit vectors.
pub fn adjoint(a: &Algebra, b: &Algebra, phi: &Mat) -> Result<Mat, Error> {
    check_shape(a, b, phi)?;
    let k = a.dim();
    let f = a.field();
    let code = BCode::new(b, phi.clone()).map_err(|_| Error::NotAReduction)?;
    let p = code.pair_products();
    let targets: Vec<Vec<Elem>> = pairs(k).into_iter().map(|(i, j)| a.basis_product(i, j)).collect();
    let mut omega = Mat::zeros(f, b.dim(), k);
    for l in 0..k {
        let rhs: Vec<Elem> = targets.iter().map(|t| t[l]).collect();
        let col = p.solve(&rhs).ok_or(Error::NotAReduction)?;
        for (r, v) in col.into_iter().enumerate() {
            omega.set(r, l, v);
        }
    }
    Ok(omega)
}

impl MultReduction {
    /// Verifies `φ` and computes its adjoint.
    pub fn new(a: &Algebra, b: &Algebra, phi: Mat) -> Result<MultReduction, Error> {
        if !is_mult_reduction(a, b, &phi)?.holds() {
            return Err(Error::NotAReduction);
        }
        let omega = adjoint(a, b, &phi)?;
        Ok(MultReduction { a: a.clone(), b: b.clone(), phi, omega: Some(omega) })
    }

    /// Uses a supplied adjoint after checking `ω(φ(a_i)φ(a_j)) = a_i a_j`.
    pub fn with_omega(a: &Algebra, b: &Algebra, phi: Mat, omega: Mat) -> Result<MultReduction, Error> {
        check_shape(a, b, &phi)?;
        if omega.nrows() != b.dim() || omega.ncols() != a.dim() {
            return Err(Error::DimensionMismatch { expected: b.dim(), found: omega.nrows() });
        }
        let r = MultReduction { a: a.clone(), b: b.clone(), phi, omega: Some(omega) };
        if !r.omega_is_adjoint() {
            return Err(Error::NotAReduction);
        }
        Ok(r)
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn omega(&self) -> Option<&Mat> {
        self.omega.as_ref()
    }

    pub fn code(&self) -> BCode {
        BCode::new(&self.b, self.phi.clone()).expect("verified reductions are injective")
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.phi.apply(x)
    }

    /// `ω(φ(x)·φ(y))`.
    pub fn multiply(&self, x: &[Elem], y: &[Elem]) -> Option<Vec<Elem>> {
        let omega = self.omega.as_ref()?;
        Some(omega.apply(&self.b.mul(&self.apply(x), &self.apply(y))))
    }

    fn omega_is_adjoint(&self) -> bool {
        let k = self.a.dim();
        pairs(k).into_iter().all(|(i, j)| {
            self.multiply(&self.a.basis_vector(i), &self.a.basis_vector(j)).as_deref()
                == Some(&self.a.basis_product(i, j)[..])
        })
    }

    /// Exhaustive check `x·y = ω(φ(x)φ(y))` for all pairs.
    pub fn check_exhaustive(&self) -> bool {
        let elems: Vec<Vec<Elem>> = self.a.elements().collect();
        elems.iter().all(|x| elems.iter().all(|y| self.multiply(x, y).as_deref() == Some(&self.a.mul(x, y)[..])))
    }

    /// `φ₁ × φ₂: A₁ × A₂ ⇝ B₁ × B₂`.
    pub fn product(&self, other: &MultReduction) -> Result<MultReduction, Error> {
        let a = Algebra::product(&self.a, &other.a)?;
        let b = Algebra::product(&self.b, &other.b)?;
        let phi = block_diag(&self.phi, &other.phi);
        let omega = match (&self.omega, &other.omega) {
            (Some(o1), Some(o2)) => Some(block_diag(o1, o2)),
            _ => None,
        };
        Ok(MultReduction { a, b, phi, omega })
    }

    /// `ψ ∘ φ: A ⇝ C` for `self = φ: A ⇝ B` and `next = ψ: B ⇝ C`.
    pub fn compose(&self, next: &MultReduction) -> Result<MultReduction, Error> {
        if self.b != next.a {
            return Err(Error::InvalidArgument("target of the first reduction is not the source of the second"));
        }
        let phi = self.phi.mul(&next.phi)?;
        let omega = match (&next.omega, &self.omega) {
            (Some(w_psi), Some(w_phi)) => Some(w_psi.mul(w_phi)?),
            _ => None,
        };
        Ok(MultReduction { a: self.a.clone(), b: next.b.clone(), phi, omega })
    }

    /// `(u, v)` with `φ̃(x) = v·φ(u⁻¹x)`, if any (brute force).
    pub fn diag_equivalent(&self, other: &MultReduction) -> Result<Option<(Vec<Elem>, Vec<Elem>)>, Error> {
        if self.a != other.a || self.b != other.b {
            return Err(Error::InvalidArgument("reductions between different algebras"));
        }
        let ca = self.a.cardinality().unwrap_or(u64::MAX);
        let cb = self.b.cardinality().unwrap_or(u64::MAX);
        let size = ca.saturating_mul(cb);
        if size > DIAG_EQUIV_CAP {
            // |A^×|·|B^×| can still be small when A or B is split.
            let ua = self.a.units().len() as u64;
            let ub = self.b.units().len() as u64;
            if ua.saturating_mul(ub) > DIAG_EQUIV_CAP {
                return Err(Error::BudgetExceeded { size: ua.saturating_mul(ub), cap: DIAG_EQUIV_CAP });
            }
        }
        let units_a = self.a.units();
        let units_b = self.b.units();
        let k = self.a.dim();
        for u in &units_a {
            let uinv = self.a.inverse(u).expect("unit");
            let twisted: Vec<Vec<Elem>> =
                (0..k).map(|i| self.phi.apply(&self.a.mul(&uinv, &self.a.basis_vector(i)))).collect();
            for v in &units_b {
                if (0..k).all(|i| self.b.mul(v, &twisted[i]) == other.phi.row(i)) {
                    return Ok(Some((u.clone(), v.clone())));
                }
            }
        }
        Ok(None)
    }

    /// `x ↦ v·φ(u⁻¹x)`, with the adjoint transformed accordingly.
    pub fn twist(&self, u: &[Elem], v: &[Elem]) -> Result<MultReduction, Error> {
        let uinv = self.a.inverse(u).ok_or(Error::InvalidArgument("u is not a unit"))?;
        if !self.b.is_unit(v) {
            return Err(Error::InvalidArgument("v is not a unit"));
        }
        let k = self.a.dim();
        let rows: Vec<Vec<Elem>> =
            (0..k).map(|i| self.b.mul(v, &self.phi.apply(&self.a.mul(&uinv, &self.a.basis_vector(i))))).collect();
        let phi = Mat::from_rows(self.a.field(), self.b.dim(), &rows)?;
        MultReduction::new(&self.a, &self.b, phi)
    }

    pub fn supercode(&self) -> Supercode {
        let k = self.a.dim();
        let basis = Mat::identity(self.a.field(), k).hstack(&self.phi).expect("same row count");
        Supercode { a: self.a.clone(), b: self.b.clone(), basis }
    }
}

fn block_diag(m1: &Mat, m2: &Mat) -> Mat {
    let f = m1.field();
    let mut out = Mat::zeros(f, m1.nrows() + m2.nrows(), m1.ncols() + m2.ncols());
    for r in 0..m1.nrows() {
        for c in 0..m1.ncols() {
            out.set(r, c, m1.get(r, c));
        }
    }
    for r in 0..m2.nrows() {
        for c in 0..m2.ncols() {
            out.set(m1.nrows() + r, m1.ncols() + c, m2.get(r, c));
        }
    }
    out
}

/// A subspace of `A × B`, given by spanning rows `(a, b)`.
#[derive(Clone, Debug)]
pub struct Supercode {
    pub a: Algebra,
    pub b: Algebra,
    pub basis: Mat,
}

impl Supercode {
    pub fn new(a: &Algebra, b: &Algebra, basis: Mat) -> Result<Supercode, Error> {
        if basis.ncols() != a.dim() + b.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim() + b.dim(), found: basis.ncols() });
        }
        Ok(Supercode { a: a.clone(), b: b.clone(), basis })
    }

    /// `π_A` surjective and `π_B` injective on `Ĉ⁽²⁾`.
    pub fn is_supercode(&self) -> bool {
        let ka = self.a.dim();
        let f = self.a.field();
        let rows = self.basis.row_vecs();
        let proj_a: Vec<Vec<Elem>> = rows.iter().map(|r| r[..ka].to_vec()).collect();
        if Subspace::from_vectors(f, ka, &proj_a).dim() < ka {
            return false;
        }
        let mut squares = Vec::new();
        for (i, x) in rows.iter().enumerate() {
            for y in &rows[i..] {
                let mut p = self.a.mul(&x[..ka], &y[..ka]);
                p.extend(self.b.mul(&x[ka..], &y[ka..]));
                squares.push(p);
            }
        }
        let sq = Subspace::from_vectors(f, ka + self.b.dim(), &squares);
        let proj_b: Vec<Vec<Elem>> = sq.basis().iter().map(|r| r[ka..].to_vec()).collect();
        Subspace::from_vectors(f, self.b.dim(), &proj_b).dim() == sq.dim()
    }
}

/// A point of `Z₂(C)` with coordinates in `A` that are linearly independent
/// over `F_q`, with the reduction it induces.
#[derive(Clone, Debug)]
pub struct Witness {
    pub point: Vec<Vec<Elem>>,
    pub reduction: MultReduction,
}

/// Searches `P^{k-1}(A)` for a point of the quadratic hull of `C` not lying
/// in a rational hyperplane. Points are normalized so that the first unit
/// coordinate is 1 and the earlier ones are non-units.
pub fn find_supercode_witness(code: &BCode, a: &Algebra) -> Result<Option<Witness>, Error> {
    let k = code.dim();
    if a.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, found: a.dim() });
    }
    if a.field() != code.algebra().field() {
        return Err(Error::FieldMismatch);
    }
    let card = a.cardinality().ok_or(Error::BudgetExceeded { size: u64::MAX, cap: WITNESS_CAP })?;
    let elems: Vec<Vec<Elem>> = a.elements().collect();
    let is_unit: Vec<bool> = elems.iter().map(|x| a.is_unit(x)).collect();
    let nonunits: Vec<u32> = (0..card as u32).filter(|&i| !is_unit[i as usize]).collect();
    let nu = nonunits.len() as u64;
    let mut total: u64 = 0;
    for p in 0..k {
        let t = nu.saturating_pow(p as u32).saturating_mul(card.saturating_pow((k - 1 - p) as u32));
        total = total.saturating_add(t);
    }
    if total > WITNESS_CAP {
        return Err(Error::BudgetExceeded { size: total, cap: WITNESS_CAP });
    }
    let forms: Vec<Vec<(usize, usize, Elem)>> = code
        .i2()
        .basis()
        .iter()
        .map(|q| pairs(k).into_iter().zip(q).filter(|(_, c)| !c.is_zero()).map(|((i, j), &c)| (i, j, c)).collect())
        .collect();
    let arith = Arith::new(a, &elems, card);
    let one = a.index_of(a.unit()) as u32;
    let mut coords = vec![0u32; k];
    for p in 0..k {
        // positions < p range over non-units, position p is 1, the rest are free
        let radices: Vec<u64> = (0..k).map(|i| if i < p { nu } else if i == p { 1 } else { card }).collect();
        let count: u64 = radices.iter().product();
        for mut idx in 0..count {
            for i in 0..k {
                let d = idx % radices[i];
                idx /= radices[i];
                coords[i] = if i < p { nonunits[d as usize] } else if i == p { one } else { d as u32 };
            }
            if !forms.iter().all(|fm| arith.form_vanishes(fm, &coords)) {
                continue;
            }
            let point: Vec<Vec<Elem>> = coords.iter().map(|&c| elems[c as usize].clone()).collect();
            let x = Mat::from_rows(a.field(), k, &point)?;
            let Some(xinv) = x.inverse() else { continue };
            let phi = xinv.mul(code.generator())?;
            let reduction = MultReduction::new(a, code.algebra(), phi)
                .map_err(|_| Error::SelfCheck("hull point did not induce a reduction"))?;
            return Ok(Some(Witness { point, reduction }));
        }
    }
    Ok(None)
}

/// Index arithmetic on the elements of `A`, table-driven when small.
struct Arith<'a> {
    a: &'a Algebra,
    elems: &'a [Vec<Elem>],
    card: u64,
    mul: Vec<u32>,
    add: Vec<u32>,
    /// Index of `c·1` for each `c ∈ F_q`.
    scalars: Vec<u32>,
}

impl<'a> Arith<'a> {
    fn new(a: &'a Algebra, elems: &'a [Vec<Elem>], card: u64) -> Arith<'a> {
        let (mut mul, mut add) = (Vec::new(), Vec::new());
        if card <= TABLE_LIMIT {
            let n = card as usize;
            mul = vec![0; n * n];
            add = vec![0; n * n];
            for i in 0..n {
                for j in i..n {
                    let m = a.index_of(&a.mul(&elems[i], &elems[j])) as u32;
                    let s = a.index_of(&a.add(&elems[i], &elems[j])) as u32;
                    mul[i * n + j] = m;
                    mul[j * n + i] = m;
                    add[i * n + j] = s;
                    add[j * n + i] = s;
                }
            }
        }
        let scalars = (0..a.field().order()).map(|c| a.index_of(&a.scale(Elem(c), a.unit())) as u32).collect();
        Arith { a, elems, card, mul, add, scalars }
    }

    fn form_vanishes(&self, form: &[(usize, usize, Elem)], x: &[u32]) -> bool {
        if !self.mul.is_empty() {
            let n = self.card as usize;
            let mut acc = 0u32;
            for &(i, j, c) in form {
                let p = self.mul[x[i] as usize * n + x[j] as usize];
                let t = self.mul[self.scalars[c.0 as usize] as usize * n + p as usize];
                acc = self.add[acc as usize * n + t as usize];
            }
            acc == 0
        } else {
            let mut acc = self.a.zero();
            for &(i, j, c) in form {
                let p = self.a.mul(&self.elems[x[i] as usize], &self.elems[x[j] as usize]);
                acc = self.a.add(&acc, &self.a.scale(c, &p));
            }
            acc.iter().all(|e| e.is_zero())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn karatsuba() -> MultReduction {
        let a = Algebra::gf_ext(2, 2).unwrap();
        let b = Algebra::split(&f2(), 3);
        MultReduction::new(&a, &b, Mat::from_u32(&f2(), &[&[1, 0, 1], &[0, 1, 1]])).unwrap()
    }

    #[test]
    fn karatsuba_verifies_and_adjoint_is_exhaustive() {
        let r = karatsuba();
        assert!(r.check_exhaustive());
        // ω(e_1) = 1 + γ, ω(e_2) = 1, ω(e_3) = γ  (rows are coordinates in 1, γ)
        assert_eq!(r.omega().unwrap(), &Mat::from_u32(&f2(), &[&[1, 1], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn identity_is_not_an_f4_algorithm() {
        let a = Algebra::gf_ext(2, 2).unwrap();
        let b = Algebra::split(&f2(), 2);
        let v = is_mult_reduction(&a, &b, &Mat::identity(&f2(), 2)).unwrap();
        let Verdict::Violated(q) = v else { panic!("expected a certificate") };
        assert!(a.eval_form(&q, &a.canonical_point()).iter().any(|e| !e.is_zero()));
        assert!(!span_test(&a, &Mat::identity(&f2(), 2)));
    }

    #[test]
    fn non_injective_is_rejected() {
        let a = Algebra::gf_ext(2, 2).unwrap();
        let b = Algebra::split(&f2(), 3);
        let phi = Mat::from_u32(&f2(), &[&[1, 0, 1], &[1, 0, 1]]);
        assert_eq!(is_mult_reduction(&a, &b, &phi).unwrap(), Verdict::NotInjective);
    }

    #[test]
    fn trivial_reduction_has_identity_adjoint() {
        for q in [2u32, 3, 5] {
            let f = Fq::prime(q).unwrap();
            let a = Algebra::base(&f);
            let r = MultReduction::new(&a, &Algebra::split(&f, 1), Mat::identity(&f, 1)).unwrap();
            assert_eq!(r.omega().unwrap(), &Mat::identity(&f, 1));
        }
    }

    #[test]
    fn product_and_composition_verify() {
        let r = karatsuba();
        let p = r.product(&r).unwrap();
        assert_eq!(p.phi().ncols(), 6);
        assert!(is_mult_reduction(p.a(), p.b(), p.phi()).unwrap().holds());
        assert!(p.check_exhaustive());

        let f = f2();
        let triv = MultReduction::new(&Algebra::base(&f), &Algebra::split(&f, 1), Mat::identity(&f, 1)).unwrap();
        let p1 = r.product(&triv).unwrap();
        assert_eq!(p1.phi().ncols(), 4);
        assert!(p1.check_exhaustive());

        let a = Algebra::gf_ext(2, 2).unwrap();
        let id = MultReduction::new(&a, &a, Mat::identity(&f, 2)).unwrap();
        let c = id.compose(&r).unwrap();
        assert!(is_mult_reduction(c.a(), c.b(), c.phi()).unwrap().holds());
        assert!(c.check_exhaustive());
    }

    #[test]
    fn compose_through_product_algebra() {
        // F_2[t]/(t²+t) ≅ F_2 × F_2, then F_2 × F_2 ⇝ F_2² by the identity.
        let f = f2();
        let a = Algebra::quotient(&f, &crate::poly::Poly::from_digits(&[0, 1, 1])).unwrap();
        let b = Algebra::split(&f, 2);
        // basis 1, t  ↦  1 = (1,1), t = (0,1) under t ↦ (0,1)
        let r1 = MultReduction::new(&a, &b, Mat::from_u32(&f, &[&[1, 1], &[0, 1]])).unwrap();
        let r2 = MultReduction::new(&b, &b, Mat::identity(&f, 2)).unwrap();
        let c = r1.compose(&r2).unwrap();
        assert!(c.check_exhaustive());
    }

    #[test]
    fn diagonal_equivalence() {
        let r = karatsuba();
        assert!(r.diag_equivalent(&r).unwrap().is_some());
        let a = r.a().clone();
        let gamma = vec![Elem(0), Elem(1)];
        let tw = r.twist(&gamma, r.b().unit()).unwrap();
        let (u, v) = r.diag_equivalent(&tw).unwrap().expect("twist is equivalent");
        let back = r.twist(&u, &v).unwrap();
        assert_eq!(back.phi(), tw.phi());
        assert!(a.is_unit(&u));
    }

    #[test]
    fn diagonal_equivalence_rejects_different_support() {
        // F4 ⇝ F2^4: the Karatsuba code padded with a zero column versus a
        // zero column elsewhere; units of F2^4 keep zero columns fixed.
        let f = f2();
        let a = Algebra::gf_ext(2, 2).unwrap();
        let b = Algebra::split(&f, 4);
        let r1 = MultReduction::new(&a, &b, Mat::from_u32(&f, &[&[1, 0, 1, 0], &[0, 1, 1, 0]])).unwrap();
        let r2 = MultReduction::new(&a, &b, Mat::from_u32(&f, &[&[0, 1, 0, 1], &[0, 0, 1, 1]])).unwrap();
        assert!(r1.diag_equivalent(&r2).unwrap().is_none());
    }

    #[test]
    fn supercodes() {
        let r = karatsuba();
        let s = r.supercode();
        assert!(s.is_supercode());
        let short = Mat::from_rows(&f2(), 5, &[s.basis.row(0).to_vec()]).unwrap();
        assert!(!Supercode::new(&s.a, &s.b, short).unwrap().is_supercode());
        // B-part identically zero: π_B kills the whole square.
        let flat = Mat::from_u32(&f2(), &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]]);
        assert!(!Supercode::new(&s.a, &s.b, flat).unwrap().is_supercode());
    }

    #[test]
    fn witnesses() {
        let r = karatsuba();
        let w = find_supercode_witness(&r.code(), r.a()).unwrap().expect("witness exists");
        assert!(is_mult_reduction(r.a(), r.b(), w.reduction.phi()).unwrap().holds());

        let f = f2();
        let rep = BCode::from_generator(Mat::from_u32(&f, &[&[1, 1, 1]])).unwrap();
        let w = find_supercode_witness(&rep, &Algebra::base(&f)).unwrap().unwrap();
        assert_eq!(w.point, vec![vec![Elem(1)]]);

        let full = BCode::from_generator(Mat::identity(&f, 2)).unwrap();
        assert!(find_supercode_witness(&full, &Algebra::gf_ext(2, 2).unwrap()).unwrap().is_none());
    }

    #[test]
    fn kernel_and_span_tests_agree_on_random_maps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let cases = [
            (Algebra::gf_ext(2, 2).unwrap(), 3usize),
            (Algebra::gf_ext(2, 3).unwrap(), 6),
            (Algebra::truncated(2, 3).unwrap(), 5),
            (Algebra::gf_ext(3, 2).unwrap(), 3),
            (Algebra::truncated(3, 2).unwrap(), 3),
        ];
        let mut seen_true = 0;
        for (a, n) in cases.iter() {
            let f = a.field().clone();
            let q = f.order();
            let b = Algebra::split(&f, *n);
            for _ in 0..300 {
                let rows: Vec<Vec<Elem>> =
                    (0..a.dim()).map(|_| (0..*n).map(|_| Elem(rng.gen_range(0..q))).collect()).collect();
                let phi = Mat::from_rows(&f, *n, &rows).unwrap();
                let v = is_mult_reduction(a, &b, &phi).unwrap();
                if phi.rank() == a.dim() {
                    assert_eq!(v.holds(), span_test(a, &phi));
                }
                if v.holds() {
                    seen_true += 1;
                    assert!(MultReduction::new(a, &b, phi).unwrap().check_exhaustive());
                }
            }
        }
        assert!(seen_true > 0);
    }
}
