//! Evaluation of linear systems of homogeneous forms at points with
//! coordinates in an algebra, first-order directional data at base points,
//! and the checks that turn such data into a multiplication reduction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Algebra;
use crate::field::{Elem, Fq};
use crate::linalg::{Mat, Subspace};
use crate::multred::{adjoint, MultReduction};
use crate::sym::pairs;
use crate::Error;

/// Sparse multivariate polynomial: exponent vector ↦ nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl Form {
    pub fn zero(nvars: usize) -> Form {
        Form { nvars, terms: BTreeMap::new() }
    }

    pub fn var(nvars: usize, i: usize) -> Form {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Form::monomial(e, Elem::ONE)
    }

    pub fn monomial(exps: Vec<u32>, c: Elem) -> Form {
        let mut f = Form::zero(exps.len());
        if !c.is_zero() {
            f.terms.insert(exps, c);
        }
        f
    }

    /// Sums repeated monomials.
    pub fn from_terms(f: &Fq, nvars: usize, terms: &[(Elem, Vec<u32>)]) -> Result<Form, Error> {
        let mut out = Form::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            out.add_term(f, e.clone(), *c);
        }
        Ok(out)
    }

    fn add_term(&mut self, f: &Fq, e: Vec<u32>, c: Elem) {
        let entry = self.terms.entry(e).or_insert(Elem::ZERO);
        *entry = f.add(*entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree if homogeneous (`None` for the zero form).
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, Error> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(d) = degs.next() else { return Ok(None) };
        if degs.any(|x| x != d) {
            return Err(Error::Inhomogeneous(d));
        }
        Ok(Some(d))
    }

    pub fn add(&self, other: &Form, f: &Fq) -> Form {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(f, e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Elem, f: &Fq) -> Form {
        let mut out = Form::zero(self.nvars);
        for (e, &v) in &self.terms {
            out.add_term(f, e.clone(), f.mul(c, v));
        }
        out
    }

    pub fn mul(&self, other: &Form, f: &Fq) -> Form {
        let mut out = Form::zero(self.nvars);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(f, e, f.mul(c1, c2));
            }
        }
        out
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial(&self, i: usize, f: &Fq) -> Form {
        let mut out = Form::zero(self.nvars);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(f, e2, f.mul(f.from_int(e[i] as i64), c));
        }
        out
    }

    /// `Σ d_i ∂_i`.
    pub fn directional(&self, d: &[Elem], f: &Fq) -> Form {
        (0..self.nvars).fold(Form::zero(self.nvars), |acc, i| acc.add(&self.partial(i, f).scale(d[i], f), f))
    }

    /// Coefficient of `ε^order` in `self(P + εd)`, with `P` in `A^n` and
    /// `d` in `F_q^n`. With `d = None` or `order = 0` this is the value at `P`.
    pub fn eval_jet(&self, a: &Algebra, p: &[Vec<Elem>], d: Option<&[Elem]>, order: usize) -> Vec<Elem> {
        let len = order + 1;
        let series: Vec<Vec<Vec<Elem>>> = (0..self.nvars)
            .map(|i| {
                let mut s = vec![a.zero(); len];
                s[0] = p[i].clone();
                if len > 1 {
                    if let Some(d) = d {
                        s[1] = a.scale(d[i], a.unit());
                    }
                }
                s
            })
            .collect();
        let mut acc = a.zero();
        for (e, &c) in &self.terms {
            let mut m = vec![a.zero(); len];
            m[0] = a.unit().to_vec();
            for (i, &ei) in e.iter().enumerate() {
                for _ in 0..ei {
                    m = series_mul(a, &m, &series[i]);
                }
            }
            acc = a.add(&acc, &a.scale(c, &m[order]));
        }
        acc
    }
}

fn series_mul(a: &Algebra, x: &[Vec<Elem>], y: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let len = x.len();
    let mut out = vec![a.zero(); len];
    for i in 0..len {
        if x[i].iter().all(|e| e.is_zero()) {
            continue;
        }
        for j in 0..len - i {
            if y[j].iter().all(|e| e.is_zero()) {
                continue;
            }
            out[i + j] = a.add(&out[i + j], &a.mul(&x[i], &y[j]));
        }
    }
    out
}

/// Linearly independent homogeneous forms of one degree. `jet_order` is the
/// order of vanishing along derivative directives: 1 for a system through
/// its base points, doubled on squaring.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Fq,
    nvars: usize,
    degree: u32,
    forms: Vec<Form>,
    jet_order: usize,
}

#[derive(Clone, Debug)]
pub enum EvalMode {
    Value,
    /// Directional derivative along an `F_q` direction.
    Derivative(Vec<Elem>),
}

#[derive(Clone, Debug)]
pub struct EvalDirective {
    pub algebra: Algebra,
    pub point: Vec<Vec<Elem>>,
    pub mode: EvalMode,
}

impl EvalDirective {
    /// Value at a point with `F_q` coordinates.
    pub fn rational(f: &Fq, point: &[Elem]) -> EvalDirective {
        EvalDirective { algebra: Algebra::base(f), point: point.iter().map(|&c| vec![c]).collect(), mode: EvalMode::Value }
    }

    /// Directional derivative at a point with `F_q` coordinates.
    pub fn derivative(f: &Fq, point: &[Elem], direction: &[Elem]) -> EvalDirective {
        EvalDirective {
            algebra: Algebra::base(f),
            point: point.iter().map(|&c| vec![c]).collect(),
            mode: EvalMode::Derivative(direction.to_vec()),
        }
    }

    /// Value at a point with coordinates in `a`.
    pub fn in_algebra(a: &Algebra, point: Vec<Vec<Elem>>) -> EvalDirective {
        EvalDirective { algebra: a.clone(), point, mode: EvalMode::Value }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub surjective_at_q: bool,
    pub bijective_at_q: bool,
    pub square_injective_at_p: bool,
}

impl Conditions {
    pub fn hold(&self) -> bool {
        self.surjective_at_q && self.square_injective_at_p
    }
}

impl LinearSystem {
    pub fn new(field: &Fq, nvars: usize, degree: u32, forms: Vec<Form>) -> Result<LinearSystem, Error> {
        for fm in &forms {
            if fm.nvars != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: fm.nvars });
            }
            match fm.homogeneous_degree()? {
                Some(d) if d != degree => return Err(Error::Inhomogeneous(degree)),
                None => return Err(Error::Dependent),
                _ => {}
            }
        }
        let sys = LinearSystem { field: field.clone(), nvars, degree, forms, jet_order: 1 };
        if sys.coefficient_matrix().rank() < sys.forms.len() {
            return Err(Error::Dependent);
        }
        Ok(sys)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    pub fn jet_order(&self) -> usize {
        self.jet_order
    }

    fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut e = vec![0u32; self.nvars];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(e.clone());
                return;
            }
            for a in (0..=left).rev() {
                e[i] = a;
                rec(i + 1, left - a, e, out);
            }
        }
        if self.nvars > 0 {
            rec(0, self.degree, &mut e, &mut out);
        }
        out
    }

    /// Rows are forms, columns the degree-`d` monomials.
    pub fn coefficient_matrix(&self) -> Mat {
        let mons = self.monomials();
        let rows: Vec<Vec<Elem>> = self
            .forms
            .iter()
            .map(|fm| mons.iter().map(|m| fm.terms.get(m).copied().unwrap_or(Elem::ZERO)).collect())
            .collect();
        Mat::from_rows(&self.field, mons.len(), &rows).unwrap_or_else(|_| Mat::zeros(&self.field, 0, mons.len()))
    }

    /// The products `v_i v_j` for `i ≤ j`, in pair order.
    pub fn pair_products(&self) -> Vec<Form> {
        pairs(self.dim()).into_iter().map(|(i, j)| self.forms[i].mul(&self.forms[j], &self.field)).collect()
    }

    /// `V⁽²⁾` with a basis read off the echelon form of the pair products.
    pub fn square(&self) -> LinearSystem {
        let mons = {
            let mut s = self.clone();
            s.degree *= 2;
            s.monomials()
        };
        let prods = self.pair_products();
        let rows: Vec<Vec<Elem>> =
            prods.iter().map(|fm| mons.iter().map(|m| fm.terms.get(m).copied().unwrap_or(Elem::ZERO)).collect()).collect();
        let span = Subspace::from_vectors(&self.field, mons.len(), &rows);
        let forms = span
            .basis()
            .iter()
            .map(|r| {
                let mut fm = Form::zero(self.nvars);
                for (m, &c) in mons.iter().zip(r) {
                    if !c.is_zero() {
                        fm.terms.insert(m.clone(), c);
                    }
                }
                fm
            })
            .collect();
        LinearSystem {
            field: self.field.clone(),
            nvars: self.nvars,
            degree: 2 * self.degree,
            forms,
            jet_order: 2 * self.jet_order,
        }
    }

    /// Quadratic relations `Σ q_ij v_i v_j = 0`, in pair coordinates.
    pub fn quadratic_relations(&self) -> Subspace {
        let sq = self.square();
        let mons = sq.monomials();
        let rows: Vec<Vec<Elem>> = self
            .pair_products()
            .iter()
            .map(|fm| mons.iter().map(|m| fm.terms.get(m).copied().unwrap_or(Elem::ZERO)).collect())
            .collect();
        Mat::from_rows(&self.field, mons.len(), &rows).expect("consistent").left_kernel()
    }

    /// Entry `(i, ·)` is `v_i` evaluated per directive, each directive
    /// contributing `dim A` columns in the algebra's basis.
    pub fn eval(&self, directives: &[EvalDirective]) -> Result<Mat, Error> {
        let mut cols = 0;
        for d in directives {
            if d.algebra.field() != &self.field {
                return Err(Error::FieldMismatch);
            }
            if d.point.len() != self.nvars {
                return Err(Error::DimensionMismatch { expected: self.nvars, found: d.point.len() });
            }
            if d.point.iter().all(|c| c.iter().all(|e| e.is_zero())) {
                return Err(Error::ZeroVector);
            }
            cols += d.algebra.dim();
        }
        let mut rows = Vec::with_capacity(self.dim());
        for fm in &self.forms {
            let mut row = Vec::with_capacity(cols);
            for d in directives {
                let v = match &d.mode {
                    EvalMode::Value => fm.eval_jet(&d.algebra, &d.point, None, 0),
                    EvalMode::Derivative(dir) => fm.eval_jet(&d.algebra, &d.point, Some(dir), self.jet_order),
                };
                row.extend(v);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Ok(Mat::zeros(&self.field, 0, cols));
        }
        Mat::from_rows(&self.field, cols, &rows)
    }

    pub fn check_conditions(&self, q: &[EvalDirective], p: &[EvalDirective]) -> Result<Conditions, Error> {
        let mq = self.eval(q)?;
        let rq = mq.rank();
        let sq = self.square();
        let mp = sq.eval(p)?;
        Ok(Conditions {
            surjective_at_q: rq == mq.ncols(),
            bijective_at_q: rq == mq.ncols() && rq == mq.nrows(),
            square_injective_at_p: mp.rank() == sq.dim(),
        })
    }

    /// The reduction `A ⇝ F_q^n` defined by evaluation at `Q` (a single
    /// point over `A`, bijective) and at the rational directives `P`.
    pub fn reduction(&self, q: &EvalDirective, p: &[EvalDirective]) -> Result<MultReduction, Error> {
        let cond = self.check_conditions(core::slice::from_ref(q), p)?;
        if !cond.bijective_at_q {
            return Err(Error::SelfCheck("evaluation at Q is not bijective"));
        }
        if !cond.square_injective_at_p {
            return Err(Error::SelfCheck("evaluation of the square at P is not injective"));
        }
        let mq = self.eval(core::slice::from_ref(q))?;
        let mp = self.eval(p)?;
        let phi = mq.inverse().ok_or(Error::SelfCheck("singular evaluation at Q"))?.mul(&mp)?;
        let b = Algebra::split(&self.field, phi.ncols());
        MultReduction::new(&q.algebra, &b, phi)
    }
}

/// The degree-3 del Pezzo construction of a length-13 algorithm for `F_32`.
pub mod delpezzo {
    use super::*;

    /// `φ` relative to `1, γ, …, γ⁴` (rows) and the 13 evaluation points.
    pub const PHI: [[u32; 13]; 5] = [
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1],
        [0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1],
        [1, 1, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1],
        [1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1, 0],
        [1, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0],
    ];

    /// `ω` with row `r` the image of the `r`-th unit vector of `F_2^13`.
    pub const OMEGA: [[u32; 5]; 13] = [
        [1, 1, 0, 1, 1],
        [0, 1, 1, 0, 1],
        [0, 0, 0, 1, 0],
        [0, 1, 0, 1, 1],
        [1, 0, 0, 1, 0],
        [1, 0, 0, 1, 1],
        [0, 1, 0, 1, 0],
        [1, 0, 1, 1, 1],
        [1, 1, 1, 1, 1],
        [1, 0, 1, 0, 0],
        [0, 1, 1, 1, 0],
        [1, 0, 1, 0, 1],
        [1, 1, 1, 0, 0],
    ];

    pub struct DelPezzo {
        pub system: LinearSystem,
        pub q: EvalDirective,
        pub p: Vec<EvalDirective>,
        pub reduction: MultReduction,
    }

    fn cubic(f: &Fq, terms: &[[u32; 3]]) -> Form {
        let t: Vec<(Elem, Vec<u32>)> = terms.iter().map(|e| (Elem::ONE, e.to_vec())).collect();
        Form::from_terms(f, 3, &t).expect("three variables")
    }

    /// The cubics `v_0, …, v_4` through `P₁, P₂, P₃` and the conic
    /// `xy + xz + yz`, in variables `x, y, z`.
    pub fn cubics(f: &Fq) -> Vec<Form> {
        vec![
            // x(xy + xz + yz)
            cubic(f, &[[2, 1, 0], [2, 0, 1], [1, 1, 1]]),
            // y(xy + xz + yz)
            cubic(f, &[[1, 2, 0], [1, 1, 1], [0, 2, 1]]),
            // x²y + x²z + xy² + xyz + yz²
            cubic(f, &[[2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [0, 1, 2]]),
            // (x + z)(xy + xz + yz)
            cubic(f, &[[2, 1, 0], [2, 0, 1], [1, 0, 2], [0, 1, 2]]),
            // x(xy + z²)
            cubic(f, &[[2, 1, 0], [1, 0, 2]]),
        ]
    }

    /// Derivative directives at `P₁, P₂, P₃` (three directions each), then
    /// the values at `P₄, …, P₇`.
    pub fn directives(f: &Fq) -> Vec<EvalDirective> {
        let e = |v: [u32; 3]| -> Vec<Elem> { v.iter().map(|&c| Elem(c)).collect() };
        let mut out = Vec::with_capacity(13);
        for base in 0..3 {
            let mut p = [0u32; 3];
            p[base] = 1;
            let others: Vec<usize> = (0..3).filter(|&i| i != base).collect();
            let mut d1 = [0u32; 3];
            d1[others[0]] = 1;
            let mut d2 = [0u32; 3];
            d2[others[1]] = 1;
            let mut d3 = [0u32; 3];
            d3[others[0]] = 1;
            d3[others[1]] = 1;
            for d in [d1, d2, d3] {
                out.push(EvalDirective::derivative(f, &e(p), &e(d)));
            }
        }
        for p in [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]] {
            out.push(EvalDirective::rational(f, &e(p)));
        }
        out
    }

    /// Builds the system, evaluates it and checks `φ` and `ω` against the
    /// stored matrices.
    pub fn build() -> Result<DelPezzo, Error> {
        let f = Fq::prime(2)?;
        let a = Algebra::gf_ext(2, 5)?;
        let system = LinearSystem::new(&f, 3, 3, cubics(&f))?;
        let g = a.basis_vector(1);
        let g2 = a.mul(&g, &g);
        let g3 = a.mul(&g2, &g);
        let q = EvalDirective::in_algebra(&a, vec![g2, g3, a.unit().to_vec()]);
        let p = directives(&f);
        let cond = system.check_conditions(core::slice::from_ref(&q), &p)?;
        if !(cond.bijective_at_q && cond.square_injective_at_p) {
            return Err(Error::SelfCheck("del Pezzo evaluation conditions fail"));
        }
        let reduction = system.reduction(&q, &p)?;
        let phi_rows: Vec<&[u32]> = PHI.iter().map(|r| &r[..]).collect();
        if reduction.phi() != &Mat::from_u32(&f, &phi_rows) {
            return Err(Error::SelfCheck("φ differs from the stored matrix"));
        }
        let omega = adjoint(reduction.a(), reduction.b(), reduction.phi())?;
        let omega_rows: Vec<&[u32]> = OMEGA.iter().map(|r| &r[..]).collect();
        if omega != Mat::from_u32(&f, &omega_rows) {
            return Err(Error::SelfCheck("ω differs from the stored matrix"));
        }
        Ok(DelPezzo { system, q, p, reduction })
    }
}

/// Report of the tautological realization of a reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tautological {
    pub conditions: Conditions,
    pub phi_reproduced: bool,
}

/// Realizes `r` on `Ĉ = im(id × φ) ⊂ A × B`: evaluation at `Q` is the first
/// projection, at `𝒫` the second. Re-derives `φ = π_B ∘ π_A⁻¹`.
pub fn tautological_realization(r: &MultReduction) -> Result<Tautological, Error> {
    let sc = r.supercode();
    let ka = r.a().dim();
    let kb = r.b().dim();
    let f = r.a().field();
    let rows = sc.basis.row_vecs();
    let proj = |lo: usize, hi: usize, rows: &[Vec<Elem>]| -> Result<Mat, Error> {
        let v: Vec<Vec<Elem>> = rows.iter().map(|x| x[lo..hi].to_vec()).collect();
        Mat::from_rows(f, hi - lo, &v)
    };
    let mq = proj(0, ka, &rows)?;
    let rq = mq.rank();
    let mut squares = Vec::new();
    for (i, x) in rows.iter().enumerate() {
        for y in &rows[i..] {
            let mut p = r.a().mul(&x[..ka], &y[..ka]);
            p.extend(r.b().mul(&x[ka..], &y[ka..]));
            squares.push(p);
        }
    }
    let sq = Subspace::from_vectors(f, ka + kb, &squares);
    let mp = proj(ka, ka + kb, sq.basis())?;
    let conditions = Conditions {
        surjective_at_q: rq == ka,
        bijective_at_q: rq == ka && mq.nrows() == ka,
        square_injective_at_p: sq.dim() == 0 || mp.rank() == sq.dim(),
    };
    let phi_reproduced = match mq.inverse() {
        Some(inv) => &inv.mul(&proj(ka, ka + kb, &rows)?)? == r.phi(),
        None => false,
    };
    Ok(Tautological { conditions, phi_reproduced })
}
