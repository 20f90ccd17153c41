//! Finite-dimensional commutative unital algebras over `Fq`, given by
//! structure constants in a fixed basis `a_0, …, a_{k-1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Fq};
use crate::linalg::{Mat, Subspace};
use crate::poly::{factor, Poly};
use crate::sym::{pair_index, sym_dim};
use crate::Error;

/// What is known about the decomposition into local factors.
#[derive(Clone, Debug)]
pub enum Decomposition {
    /// Arbitrary structure constants; nothing computed.
    Unknown,
    /// The algebra is itself local.
    Local,
    /// Product of local factors with their projections.
    Product(Vec<LocalFactor>),
}

/// A local factor `B_j` of an algebra together with the projection
/// `B → B_j`, as a `dim B × dim B_j` matrix.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub algebra: Algebra,
    pub projection: Mat,
}

#[derive(Clone, Debug)]
pub struct Algebra {
    field: Fq,
    dim: usize,
    /// `c[(i*k + j)*k + l]` is the `a_l` coordinate of `a_i a_j`.
    consts: Vec<Elem>,
    unit: Vec<Elem>,
    decomposition: Decomposition,
    label: String,
}

/// Coordinate bilinear forms of the multiplication and their span.
#[derive(Clone, Debug)]
pub struct MultTensor {
    pub bforms: Vec<Vec<Elem>>,
    pub target: Subspace,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dim == other.dim && self.consts == other.consts
    }
}

impl Algebra {
    /// Checks commutativity, associativity (exhaustively on basis triples for
    /// `k ≤ 8`) and solves for the unit.
    pub fn from_structure_constants(field: &Fq, k: usize, consts: Vec<Elem>, label: &str) -> Result<Algebra, Error> {
        if k == 0 {
            return Err(Error::InvalidArgument("algebra dimension must be positive"));
        }
        if consts.len() != k * k * k {
            return Err(Error::DimensionMismatch { expected: k * k * k, found: consts.len() });
        }
        if consts.iter().any(|c| c.0 >= field.order()) {
            return Err(Error::InvalidArgument("structure constant outside the field"));
        }
        let mut a = Algebra {
            field: field.clone(),
            dim: k,
            consts,
            unit: vec![Elem::ZERO; k],
            decomposition: Decomposition::Unknown,
            label: String::from(label),
        };
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if a.c(i, j, l) != a.c(j, i, l) {
                        return Err(Error::NotAnAlgebra("multiplication is not commutative"));
                    }
                }
            }
        }
        if k <= 8 && !a.is_associative() {
            return Err(Error::NotAnAlgebra("multiplication is not associative"));
        }
        // Unit u: u·a_j = a_j for all j, i.e. Σ_i u_i c[i][j][·] = e_j.
        let mut sys = Mat::zeros(field, k * k, k);
        let mut rhs = vec![Elem::ZERO; k * k];
        for j in 0..k {
            for l in 0..k {
                for i in 0..k {
                    sys.set(j * k + l, i, a.c(i, j, l));
                }
                if j == l {
                    rhs[j * k + l] = Elem::ONE;
                }
            }
        }
        a.unit = sys.solve(&rhs).ok_or(Error::NotAnAlgebra("no unit element"))?;
        Ok(a)
    }

    #[inline]
    fn c(&self, i: usize, j: usize, l: usize) -> Elem {
        self.consts[(i * self.dim + j) * self.dim + l]
    }

    fn is_associative(&self) -> bool {
        let k = self.dim;
        for i in 0..k {
            for j in 0..k {
                let ij = self.basis_product(i, j);
                for l in 0..k {
                    let left = self.mul(&ij, &self.basis_vector(l));
                    let jl = self.basis_product(j, l);
                    let right = self.mul(&self.basis_vector(i), &jl);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `F_q[t]/(f)` for monic `f`, with the local decomposition obtained by
    /// factoring `f`.
    pub fn quotient(field: &Fq, f: &Poly) -> Result<Algebra, Error> {
        let label = format!("quot:{}:{}", field.order(), poly_label(field, f));
        let mut a = Self::quotient_raw(field, f, &label)?;
        let factors = factor(f, field)?;
        if factors.len() == 1 {
            a.decomposition = Decomposition::Local;
            return Ok(a);
        }
        let mut locals = Vec::with_capacity(factors.len());
        for (g, e) in &factors {
            let ge = g.pow(*e, field);
            let mut local = Self::quotient_raw(field, &ge, &format!("quot:{}:{}", field.order(), poly_label(field, &ge)))?;
            local.decomposition = Decomposition::Local;
            let kj = local.dim;
            let mut proj = Mat::zeros(field, a.dim, kj);
            for i in 0..a.dim {
                let r = Poly::monomial(i).rem(&ge, field);
                for c in 0..kj {
                    proj.set(i, c, r.coeff(c));
                }
            }
            locals.push(LocalFactor { algebra: local, projection: proj });
        }
        a.decomposition = Decomposition::Product(locals);
        a.check_decomposition()?;
        Ok(a)
    }

    fn quotient_raw(field: &Fq, f: &Poly, label: &str) -> Result<Algebra, Error> {
        let k = match f.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidArgument("quotient polynomial must have degree at least 1")),
        };
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut consts = vec![Elem::ZERO; k * k * k];
        for i in 0..k {
            for j in 0..k {
                let r = Poly::monomial(i + j).rem(f, field);
                for l in 0..k {
                    consts[(i * k + j) * k + l] = r.coeff(l);
                }
            }
        }
        Self::from_structure_constants(field, k, consts, label)
    }

    /// `F_{q^k}` over `F_q` with a power basis. For prime `q` the modulus is
    /// the field module's default; otherwise the smallest monic irreducible
    /// of degree `k` over `F_q`.
    pub fn gf_ext(q: u32, k: usize) -> Result<Algebra, Error> {
        let field = Fq::with_order(q)?;
        let modulus = if field.is_prime_field() {
            let ext = Fq::new(field.characteristic(), k as u32, None)?;
            Poly::from_digits(ext.modulus())
        } else {
            Poly::monic_of_degree(&field, k)
                .find(|g| g.is_irreducible(&field))
                .expect("irreducibles exist in every degree")
        };
        let mut a = Self::quotient_raw(&field, &modulus, &format!("gfext:{q}:{k}"))?;
        a.decomposition = Decomposition::Local;
        Ok(a)
    }

    /// `F_q[t]/(t^k)`.
    pub fn truncated(q: u32, k: usize) -> Result<Algebra, Error> {
        let field = Fq::with_order(q)?;
        let mut a = Self::quotient_raw(&field, &Poly::monomial(k), &format!("trunc:{q}:{k}"))?;
        a.decomposition = Decomposition::Local;
        Ok(a)
    }

    /// The base field as a one-dimensional algebra.
    pub fn base(field: &Fq) -> Algebra {
        Algebra {
            field: field.clone(),
            dim: 1,
            consts: vec![Elem::ONE],
            unit: vec![Elem::ONE],
            decomposition: Decomposition::Local,
            label: format!("gfext:{}:1", field.order()),
        }
    }

    /// `F_q^n` with componentwise multiplication.
    pub fn split(field: &Fq, n: usize) -> Algebra {
        let mut consts = vec![Elem::ZERO; n * n * n];
        for i in 0..n {
            consts[(i * n + i) * n + i] = Elem::ONE;
        }
        let locals = (0..n)
            .map(|i| {
                let mut proj = Mat::zeros(field, n, 1);
                proj.set(i, 0, Elem::ONE);
                LocalFactor { algebra: Algebra::base(field), projection: proj }
            })
            .collect();
        Algebra {
            field: field.clone(),
            dim: n,
            consts,
            unit: vec![Elem::ONE; n],
            decomposition: if n == 1 { Decomposition::Local } else { Decomposition::Product(locals) },
            label: format!("split:{}:{n}", field.order()),
        }
    }

    /// `A1 × A2` with componentwise multiplication; basis of `A1` first.
    pub fn product(a1: &Algebra, a2: &Algebra) -> Result<Algebra, Error> {
        if a1.field != a2.field {
            return Err(Error::FieldMismatch);
        }
        let (k1, k2) = (a1.dim, a2.dim);
        let k = k1 + k2;
        let mut consts = vec![Elem::ZERO; k * k * k];
        for i in 0..k1 {
            for j in 0..k1 {
                for l in 0..k1 {
                    consts[(i * k + j) * k + l] = a1.c(i, j, l);
                }
            }
        }
        for i in 0..k2 {
            for j in 0..k2 {
                for l in 0..k2 {
                    consts[((k1 + i) * k + k1 + j) * k + k1 + l] = a2.c(i, j, l);
                }
            }
        }
        let mut unit = a1.unit.clone();
        unit.extend_from_slice(&a2.unit);
        let decomposition = match (a1.local_factors(), a2.local_factors()) {
            (Ok(f1), Ok(f2)) => {
                let mut locals = Vec::with_capacity(f1.len() + f2.len());
                for lf in f1 {
                    let kj = lf.algebra.dim;
                    let mut proj = Mat::zeros(&a1.field, k, kj);
                    for r in 0..k1 {
                        for c in 0..kj {
                            proj.set(r, c, lf.projection.get(r, c));
                        }
                    }
                    locals.push(LocalFactor { algebra: lf.algebra, projection: proj });
                }
                for lf in f2 {
                    let kj = lf.algebra.dim;
                    let mut proj = Mat::zeros(&a1.field, k, kj);
                    for r in 0..k2 {
                        for c in 0..kj {
                            proj.set(k1 + r, c, lf.projection.get(r, c));
                        }
                    }
                    locals.push(LocalFactor { algebra: lf.algebra, projection: proj });
                }
                Decomposition::Product(locals)
            }
            _ => Decomposition::Unknown,
        };
        Ok(Algebra {
            field: a1.field.clone(),
            dim: k,
            consts,
            unit,
            decomposition,
            label: format!("prod:{},{}", a1.label, a2.label),
        })
    }

    /// Verifies that the local projections assemble to a bijective algebra
    /// homomorphism onto the product of the factors.
    pub fn check_decomposition(&self) -> Result<(), Error> {
        let factors = self.local_factors()?;
        let mut assembled: Option<Mat> = None;
        for lf in &factors {
            assembled = Some(match assembled {
                None => lf.projection.clone(),
                Some(m) => m.hstack(&lf.projection)?,
            });
        }
        let assembled = assembled.ok_or(Error::MissingFactors)?;
        if assembled.ncols() != self.dim || assembled.inverse().is_none() {
            return Err(Error::NotAnAlgebra("local projections are not bijective"));
        }
        for i in 0..self.dim {
            for j in i..self.dim {
                let prod = self.basis_product(i, j);
                for lf in &factors {
                    let lhs = lf.projection.apply(&prod);
                    let pi = lf.projection.apply(&self.basis_vector(i));
                    let pj = lf.projection.apply(&self.basis_vector(j));
                    if lhs != lf.algebra.mul(&pi, &pj) {
                        return Err(Error::NotAnAlgebra("local projection is not multiplicative"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Algebra {
        self.label = String::from(label);
        self
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    /// Structure constant `c[i][j][l]`.
    pub fn structure_constant(&self, i: usize, j: usize, l: usize) -> Elem {
        self.c(i, j, l)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; self.dim];
        v[i] = Elem::ONE;
        v
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![Elem::ZERO; self.dim]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Elem> {
        let k = self.dim;
        self.consts[(i * k + j) * k..(i * k + j + 1) * k].to_vec()
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let k = self.dim;
        let mut out = vec![Elem::ZERO; k];
        for i in 0..k {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if y[j].is_zero() {
                    continue;
                }
                let s = f.mul(x[i], y[j]);
                let base = (i * k + j) * k;
                for (l, o) in out.iter_mut().enumerate() {
                    let c = self.consts[base + l];
                    if !c.is_zero() {
                        *o = f.add(*o, f.mul(s, c));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(&a, &b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: Elem, x: &[Elem]) -> Vec<Elem> {
        x.iter().map(|&a| self.field.mul(c, a)).collect()
    }

    /// Matrix of `y ↦ x·y` (row `i` is `x·a_i`).
    pub fn mul_matrix(&self, x: &[Elem]) -> Mat {
        let rows: Vec<Vec<Elem>> = (0..self.dim).map(|i| self.mul(x, &self.basis_vector(i))).collect();
        Mat::from_rows(&self.field, self.dim, &rows).expect("square")
    }

    pub fn is_unit(&self, x: &[Elem]) -> bool {
        self.mul_matrix(x).rank() == self.dim
    }

    pub fn inverse(&self, x: &[Elem]) -> Option<Vec<Elem>> {
        self.mul_matrix(x).solve_left(&self.unit)
    }

    /// Number of elements, `q^k`, if it fits in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dim as u32)
    }

    /// Element with index `idx` in the base-`q` little-endian enumeration.
    pub fn element(&self, mut idx: u64) -> Vec<Elem> {
        let q = self.field.order() as u64;
        (0..self.dim)
            .map(|_| {
                let d = (idx % q) as u32;
                idx /= q;
                Elem(d)
            })
            .collect()
    }

    pub fn index_of(&self, x: &[Elem]) -> u64 {
        let q = self.field.order() as u64;
        x.iter().rev().fold(0, |acc, e| acc * q + e.0 as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.cardinality().expect("algebra too large to enumerate")).map(move |i| self.element(i))
    }

    /// All units (exhaustive).
    pub fn units(&self) -> Vec<Vec<Elem>> {
        self.elements().filter(|x| self.is_unit(x)).collect()
    }

    /// True when this is `F_q^n` in its idempotent basis.
    pub fn is_split(&self) -> bool {
        let k = self.dim;
        (0..k).all(|i| {
            (0..k).all(|j| (0..k).all(|l| self.c(i, j, l) == if i == j && j == l { Elem::ONE } else { Elem::ZERO }))
        })
    }

    /// Local factors with projections. A local algebra is its own single factor.
    pub fn local_factors(&self) -> Result<Vec<LocalFactor>, Error> {
        match &self.decomposition {
            Decomposition::Unknown => Err(Error::MissingFactors),
            Decomposition::Local => {
                let mut me = self.clone();
                me.decomposition = Decomposition::Local;
                Ok(vec![LocalFactor { algebra: me, projection: Mat::identity(&self.field, self.dim) }])
            }
            Decomposition::Product(v) => Ok(v.clone()),
        }
    }

    /// `B_l` has coordinate `c[i][j][l]` at pair `(i ≤ j)`; `T` is their span.
    pub fn mult_tensor(&self) -> MultTensor {
        let k = self.dim;
        let bforms: Vec<Vec<Elem>> = (0..k)
            .map(|l| {
                let mut b = vec![Elem::ZERO; sym_dim(k)];
                for i in 0..k {
                    for j in i..k {
                        b[pair_index(k, i, j)] = self.c(i, j, l);
                    }
                }
                b
            })
            .collect();
        let target = Subspace::from_vectors(&self.field, sym_dim(k), &bforms);
        MultTensor { bforms, target }
    }

    /// The basis `(a_1 : … : a_k)` read as a point with coordinates in the
    /// algebra itself.
    pub fn canonical_point(&self) -> Vec<Vec<Elem>> {
        (0..self.dim).map(|i| self.basis_vector(i)).collect()
    }

    /// Value of the quadratic form `q` at a point with algebra coordinates.
    pub fn eval_form(&self, q: &[Elem], x: &[Vec<Elem>]) -> Vec<Elem> {
        let k = x.len();
        let mut acc = self.zero();
        let mut idx = 0;
        for i in 0..k {
            for j in i..k {
                let c = q[idx];
                idx += 1;
                if c.is_zero() {
                    continue;
                }
                let p = self.mul(&x[i], &x[j]);
                acc = self.add(&acc, &self.scale(c, &p));
            }
        }
        acc
    }
}

fn poly_label(field: &Fq, f: &Poly) -> String {
    let m = field.degree() as usize;
    let mut s = String::new();
    for &c in f.coeffs() {
        let cs = field.coeffs(c);
        if m == 1 {
            s.push(char::from_digit(cs[0], 10).unwrap_or('?'));
        } else {
            s.push('(');
            for d in cs {
                s.push(char::from_digit(d, 10).unwrap_or('?'));
            }
            s.push(')');
        }
    }
    s
}
