//! Exhaustive search for the subspaces `W = T ⊕ ⟨e_1, …, e_{n-k}⟩` spanned by
//! elementary tensors that realize symmetric multiplication algorithms of
//! length `n`.
//!
//! Vectors of `S²(A^∨)` are packed into machine words: one bit per
//! coordinate over `F_2`, two bit planes over `F_3`. The serial driver is
//! [`solve`]; [`solve_branch`] explores the subtree below one first choice
//! so callers can spread branches over threads and union the results.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::algebra::Algebra;
use crate::field::{Elem, Fq};
use crate::linalg::{Mat, Subspace};
use crate::multred::is_mult_reduction;
use crate::quadhull::{projective_points, QuadHull};
use crate::sym::{elementary_tensor, sym_dim};
use crate::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
/// Largest `k(k+1)/2` that fits the packed representation.
pub const MAX_VDIM: usize = 64;

/// Problem data: the target `T` and the generating set `E`.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    field: Fq,
    k: usize,
    label: alloc::string::String,
    t: Subspace,
    /// Linear forms `l`, one per projective class, and their tensors.
    forms: Vec<Vec<Elem>>,
    e: Vec<Vec<Elem>>,
}

/// Statistics of one subspace `W`.
#[derive(Clone, Debug)]
pub struct WStats {
    pub w: Subspace,
    /// Indices into `E` of the tensors lying in `W`.
    pub e_cap_w: Vec<usize>,
    pub dim_i2: usize,
    pub point_counts: BTreeMap<u32, u64>,
    /// `|E ∩ W| = n`: the algorithm is unique up to equivalence.
    pub unique: bool,
}

impl WStats {
    pub fn signature(&self) -> Vec<u32> {
        self.w.signature()
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub n: usize,
    pub per_w: Vec<WStats>,
    pub nodes: u64,
}

impl SearchResult {
    pub fn count(&self) -> usize {
        self.per_w.len()
    }
}

/// Shared node counter with a hard budget.
#[derive(Debug)]
pub struct NodeCounter {
    nodes: AtomicU64,
    budget: u64,
}

impl NodeCounter {
    pub fn new(budget: u64) -> NodeCounter {
        NodeCounter { nodes: AtomicU64::new(0), budget }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn add(&self, n: u64) -> Result<(), Error> {
        let total = self.nodes.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.budget {
            return Err(Error::NodeBudget(self.budget));
        }
        Ok(())
    }
}

/// Opaque packed canonical basis of a `W`, as produced by the branches.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawW(Vec<u64>);

impl SearchProblem {
    /// `T` from the multiplication tensor, `E` from the projective points of
    /// `(F_q^k)^∨` in enumeration order.
    pub fn new(a: &Algebra) -> Result<SearchProblem, Error> {
        let k = a.dim();
        let vdim = sym_dim(k);
        if vdim > MAX_VDIM {
            return Err(Error::BudgetExceeded { size: vdim as u64, cap: MAX_VDIM as u64 });
        }
        let f = a.field().clone();
        let forms = projective_points(&f, k);
        let e = forms.iter().map(|l| elementary_tensor(&f, l)).collect();
        Ok(SearchProblem { field: f, k, label: a.label().into(), t: a.mult_tensor().target, forms, e })
    }

    /// Same problem with `E` in reverse order.
    pub fn reversed(&self) -> SearchProblem {
        let mut p = self.clone();
        p.forms.reverse();
        p.e.reverse();
        p
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vdim(&self) -> usize {
        sym_dim(self.k)
    }

    pub fn target(&self) -> &Subspace {
        &self.t
    }

    pub fn e(&self) -> &[Vec<Elem>] {
        &self.e
    }

    pub fn forms(&self) -> &[Vec<Elem>] {
        &self.forms
    }

    /// Number of first-level branches for length `n`.
    pub fn branches(&self, n: usize) -> usize {
        if n == self.k {
            1
        } else {
            self.e.len()
        }
    }

    /// `φ` whose columns are the given linear forms.
    pub fn phi_from_forms(&self, idx: &[usize]) -> Mat {
        let cols: Vec<Vec<Elem>> = idx.iter().map(|&i| self.forms[i].clone()).collect();
        Mat::from_rows(&self.field, self.k, &cols).expect("forms have length k").transpose()
    }

    fn check_supported(&self, n: usize) -> Result<(), Error> {
        if n < self.k {
            return Err(Error::InvalidArgument("length must be at least dim A"));
        }
        match self.field.order() {
            2 | 3 => Ok(()),
            _ => Err(Error::Unsupported("the subspace search runs over F_2 and F_3 only")),
        }
    }
}

/// All valid `W` of dimension `n`, single-threaded.
pub fn solve(p: &SearchProblem, n: usize, budget: u64) -> Result<SearchResult, Error> {
    p.check_supported(n)?;
    let counter = NodeCounter::new(budget);
    let mut all = BTreeSet::new();
    for b in 0..p.branches(n) {
        all.extend(solve_branch(p, n, b, &counter)?);
    }
    finish(p, n, all, counter.nodes())
}

/// Explores tuples whose first element is `E[first]` (or `W = T` when
/// `n = k`). Returns the packed canonical bases found.
pub fn solve_branch(p: &SearchProblem, n: usize, first: usize, counter: &NodeCounter) -> Result<BTreeSet<RawW>, Error> {
    p.check_supported(n)?;
    if p.field.order() == 2 {
        Dfs::<u64>::new(p, n, counter).branch(first)
    } else {
        Dfs::<G3>::new(p, n, counter).branch(first)
    }
}

/// Post-hoc filter (`T ⊆ W`, `rank(E ∩ W) = n`) and per-`W` statistics,
/// sorted by signature.
pub fn finish(p: &SearchProblem, n: usize, raw: BTreeSet<RawW>, nodes: u64) -> Result<SearchResult, Error> {
    let mut per_w = Vec::new();
    for r in raw {
        let w = unpack(p, &r);
        if w.dim() != n || !w.contains(&p.t) {
            continue;
        }
        let stats = analyze_w(p, &w, 1)?;
        let span = Subspace::from_vectors(&p.field, p.vdim(), &stats.e_cap_w.iter().map(|&i| p.e[i].clone()).collect::<Vec<_>>());
        if span.dim() == n {
            per_w.push(stats);
        }
    }
    per_w.sort_by_key(|s| s.signature());
    Ok(SearchResult { n, per_w, nodes })
}

/// `E ∩ W`, `dim I₂ = dim W^⊥`, point counts of the hull for
/// `m = 1..=max_m` (the `m = 1` count is checked against `|E ∩ W|`).
pub fn analyze_w(p: &SearchProblem, w: &Subspace, max_m: u32) -> Result<WStats, Error> {
    let e_cap_w: Vec<usize> = (0..p.e.len()).filter(|&i| w.member(&p.e[i])).collect();
    let hull = QuadHull::from_w(w)?;
    let mut point_counts = BTreeMap::new();
    point_counts.insert(1, e_cap_w.len() as u64);
    if max_m >= 1 && hull.count_points(1)? != e_cap_w.len() as u64 {
        return Err(Error::SelfCheck("hull points and elementary tensors in W disagree"));
    }
    for m in 2..=max_m {
        point_counts.insert(m, hull.count_points(m)?);
    }
    Ok(WStats { w: w.clone(), unique: e_cap_w.len() == w.dim(), dim_i2: hull.dim_i2(), e_cap_w, point_counts })
}

/// Smallest `n` in `lo..=hi` with at least one `W`.
pub fn min_length(a: &Algebra, lo: usize, hi: usize, budget: u64) -> Result<(usize, SearchResult), Error> {
    let p = SearchProblem::new(a)?;
    for n in lo.max(a.dim())..=hi {
        let r = solve(&p, n, budget)?;
        if r.count() > 0 {
            return Ok((n, r));
        }
    }
    Err(Error::InvalidArgument("no algorithm in the given length range"))
}

/// The `n`-subsets of `E ∩ W` that span `W`: the distinct algorithms
/// sharing this `W`.
pub fn spanning_subsets(p: &SearchProblem, stats: &WStats) -> Vec<Vec<usize>> {
    let n = stats.w.dim();
    let idx = &stats.e_cap_w;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);
    fn rec(p: &SearchProblem, idx: &[usize], start: usize, n: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == n {
            let vs: Vec<Vec<Elem>> = chosen.iter().map(|&i| p.e[i].clone()).collect();
            if Subspace::from_vectors(&p.field, p.vdim(), &vs).dim() == n {
                out.push(chosen.clone());
            }
            return;
        }
        for s in start..idx.len() {
            if idx.len() - s < n - chosen.len() {
                break;
            }
            chosen.push(idx[s]);
            rec(p, idx, s + 1, n, chosen, out);
            chosen.pop();
        }
    }
    rec(p, idx, 0, n, &mut chosen, &mut out);
    out
}

/// The greedy basis of `E ∩ W`: one algorithm for `W`, as indices into `E`.
pub fn greedy_basis(p: &SearchProblem, stats: &WStats) -> Vec<usize> {
    let mut span = Subspace::zero(&p.field, p.vdim());
    let mut out = Vec::with_capacity(stats.w.dim());
    for &i in &stats.e_cap_w {
        let next = span.join_vector(&p.e[i]);
        if next.dim() > span.dim() {
            span = next;
            out.push(i);
        }
    }
    out
}

/// Checks that `φ` built from a spanning subset is a reduction into `F_q^n`.
pub fn round_trip(p: &SearchProblem, a: &Algebra, subset: &[usize]) -> Result<bool, Error> {
    let phi = p.phi_from_forms(subset);
    let b = Algebra::split(&p.field, subset.len());
    Ok(is_mult_reduction(a, &b, &phi)?.holds())
}

/// Packed vector over a small prime field. Coordinate `i` lives in bit `i`.
trait Lane: Copy + Ord {
    const ZERO: Self;
    const WORDS: usize;
    fn pack(v: &[Elem]) -> Self;
    fn unpack(self, len: usize) -> Vec<Elem>;
    fn is_zero(self) -> bool;
    fn lead(self) -> usize;
    fn coeff(self, i: usize) -> u8;
    /// Scales so that the lead coefficient is 1.
    fn normalize(self) -> Self;
    /// `self − c·other`.
    fn sub_mul(self, c: u8, other: Self) -> Self;
    fn words(self) -> [u64; 2];
    fn from_words(w: &[u64]) -> Self;
}

impl Lane for u64 {
    const ZERO: u64 = 0;
    const WORDS: usize = 1;

    fn pack(v: &[Elem]) -> u64 {
        v.iter().enumerate().fold(0, |acc, (i, e)| acc | ((e.0 as u64 & 1) << i))
    }

    fn unpack(self, len: usize) -> Vec<Elem> {
        (0..len).map(|i| Elem(((self >> i) & 1) as u32)).collect()
    }

    fn is_zero(self) -> bool {
        self == 0
    }

    fn lead(self) -> usize {
        self.trailing_zeros() as usize
    }

    fn coeff(self, i: usize) -> u8 {
        ((self >> i) & 1) as u8
    }

    fn normalize(self) -> u64 {
        self
    }

    fn sub_mul(self, c: u8, other: u64) -> u64 {
        if c == 0 {
            self
        } else {
            self ^ other
        }
    }

    fn words(self) -> [u64; 2] {
        [self, 0]
    }

    fn from_words(w: &[u64]) -> u64 {
        w[0]
    }
}

/// Bitsliced `F_3` vector: `p` marks coordinates equal to 1, `m` those
/// equal to 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct G3 {
    p: u64,
    m: u64,
}

impl G3 {
    fn add(self, y: G3) -> G3 {
        let x0 = !(self.p | self.m);
        let y0 = !(y.p | y.m);
        G3 {
            p: (x0 & y.p) | (self.p & y0) | (self.m & y.m),
            m: (x0 & y.m) | (self.m & y0) | (self.p & y.p),
        }
    }

    fn neg(self) -> G3 {
        G3 { p: self.m, m: self.p }
    }
}

impl Lane for G3 {
    const ZERO: G3 = G3 { p: 0, m: 0 };
    const WORDS: usize = 2;

    fn pack(v: &[Elem]) -> G3 {
        let mut g = G3::ZERO;
        for (i, e) in v.iter().enumerate() {
            match e.0 {
                1 => g.p |= 1 << i,
                2 => g.m |= 1 << i,
                _ => {}
            }
        }
        g
    }

    fn unpack(self, len: usize) -> Vec<Elem> {
        (0..len).map(|i| Elem(self.coeff(i) as u32)).collect()
    }

    fn is_zero(self) -> bool {
        (self.p | self.m) == 0
    }

    fn lead(self) -> usize {
        (self.p | self.m).trailing_zeros() as usize
    }

    fn coeff(self, i: usize) -> u8 {
        (((self.p >> i) & 1) | (((self.m >> i) & 1) << 1)) as u8
    }

    fn normalize(self) -> G3 {
        if self.coeff(self.lead()) == 2 {
            self.neg()
        } else {
            self
        }
    }

    fn sub_mul(self, c: u8, other: G3) -> G3 {
        match c {
            0 => self,
            1 => self.add(other.neg()),
            _ => self.add(other),
        }
    }

    fn words(self) -> [u64; 2] {
        [self.p, self.m]
    }

    fn from_words(w: &[u64]) -> G3 {
        G3 { p: w[0], m: w[1] }
    }
}

fn reduce<L: Lane>(basis: &[L], mut v: L) -> L {
    for &b in basis {
        v = v.sub_mul(v.coeff(b.lead()), b);
    }
    v
}

/// Fully reduced echelon form with pivots at the lowest coordinates,
/// sorted by pivot. Unique for the spanned subspace.
fn canonical<L: Lane>(rows: &[L]) -> Vec<L> {
    let mut basis: Vec<L> = Vec::with_capacity(rows.len());
    for &r in rows {
        let v = reduce(&basis, r);
        if v.is_zero() {
            continue;
        }
        let v = v.normalize();
        let pv = v.lead();
        for b in basis.iter_mut() {
            *b = b.sub_mul(b.coeff(pv), v);
        }
        basis.push(v);
    }
    basis.sort_by_key(|b| b.lead());
    basis
}

fn pack_raw<L: Lane>(rows: &[L]) -> RawW {
    RawW(rows.iter().flat_map(|r| r.words().into_iter().take(L::WORDS)).collect())
}

fn unpack(p: &SearchProblem, r: &RawW) -> Subspace {
    let words = if p.field.order() == 2 { 1 } else { 2 };
    let vdim = p.vdim();
    let rows: Vec<Vec<Elem>> = r
        .0
        .chunks(words)
        .map(|w| if words == 1 { u64::from_words(w).unpack(vdim) } else { G3::from_words(w).unpack(vdim) })
        .collect();
    Subspace::from_vectors(&p.field, vdim, &rows)
}

/// Nodes are counted locally and flushed to the shared counter in batches.
const FLUSH: u64 = 1 << 14;

struct Dfs<'a, L: Lane> {
    n: usize,
    depth: usize,
    t_basis: Vec<L>,
    /// `levels[d][i]` is `E[i]` reduced modulo `T` and the first `d` picks.
    levels: Vec<Vec<L>>,
    picks: Vec<L>,
    out: BTreeSet<RawW>,
    counter: &'a NodeCounter,
    local: u64,
    scratch: Vec<(L, usize)>,
}

impl<'a, L: Lane> Dfs<'a, L> {
    fn new(p: &SearchProblem, n: usize, counter: &'a NodeCounter) -> Dfs<'a, L> {
        let t_rows: Vec<L> = p.t.basis().iter().map(|v| L::pack(v)).collect();
        let t_basis = canonical(&t_rows);
        let level0: Vec<L> = p.e.iter().map(|v| reduce(&t_basis, L::pack(v))).collect();
        let depth = n - t_basis.len().min(n);
        let mut levels = vec![level0];
        levels.resize(depth + 1, vec![L::ZERO; p.e.len()]);
        Dfs { n, depth, t_basis, levels, picks: Vec::new(), out: BTreeSet::new(), counter, local: 0, scratch: Vec::new() }
    }

    fn tick(&mut self) -> Result<(), Error> {
        self.local += 1;
        if self.local == FLUSH {
            self.counter.add(self.local)?;
            self.local = 0;
        }
        Ok(())
    }

    fn branch(mut self, first: usize) -> Result<BTreeSet<RawW>, Error> {
        if self.t_basis.len() > self.n {
            return Ok(self.out);
        }
        if self.depth == 0 {
            self.tick()?;
            let w = canonical(&self.t_basis);
            self.out.insert(pack_raw(&w));
        } else if first < self.levels[0].len() && !self.levels[0][first].is_zero() {
            if self.depth == 1 {
                self.last_level(first, first + 1)?;
            } else {
                self.tick()?;
                if self.push(0, first) {
                    self.rec(1, first + 1)?;
                }
            }
        }
        self.counter.add(self.local)?;
        Ok(self.out)
    }

    /// Picks `E[j]` at level `d`, filling level `d + 1`. Returns false when
    /// some `E[m]` with `m < j` enters the span only now: the picks are then
    /// not the greedy basis of `E ∩ W` and the same `W` is reached elsewhere.
    fn push(&mut self, d: usize, j: usize) -> bool {
        let v = self.levels[d][j].normalize();
        let pv = v.lead();
        let (lo, hi) = self.levels.split_at_mut(d + 1);
        let mut greedy = true;
        for (m, (dst, &src)) in hi[0].iter_mut().zip(lo[d].iter()).enumerate() {
            *dst = src.sub_mul(src.coeff(pv), v);
            if m < j && dst.is_zero() && !src.is_zero() {
                greedy = false;
            }
        }
        self.picks.truncate(d);
        self.picks.push(v);
        greedy
    }

    fn rec(&mut self, d: usize, start: usize) -> Result<(), Error> {
        let len = self.levels[d].len();
        let need = self.depth - d;
        let avail = (start..len).filter(|&i| !self.levels[d][i].is_zero()).count();
        if avail < need {
            return Ok(());
        }
        if need == 1 {
            return self.last_level(start, len);
        }
        let mut left = avail;
        for j in start..len {
            if self.levels[d][j].is_zero() {
                continue;
            }
            if left < need {
                break;
            }
            left -= 1;
            self.tick()?;
            if self.push(d, j) {
                self.rec(d + 1, j + 1)?;
            }
        }
        Ok(())
    }

    /// Final pick among `lo..hi`. Tensors whose residuals agree up to
    /// scaling give the same `W`, and only the smallest index of each class
    /// is a greedy pick. A `W` is kept only if it holds at least `n` tensors
    /// of `E`, which condition (ii) needs anyway.
    fn last_level(&mut self, lo: usize, hi: usize) -> Result<(), Error> {
        let d = self.depth - 1;
        let mut zeros = 0usize;
        self.scratch.clear();
        for (m, &r) in self.levels[d].iter().enumerate() {
            if r.is_zero() {
                zeros += 1;
            } else {
                self.scratch.push((r.normalize(), m));
            }
        }
        self.scratch.sort_unstable();
        let mut from = 0;
        while from < self.scratch.len() {
            let (key, j) = self.scratch[from];
            let to = from + self.scratch[from..].partition_point(|x| x.0 == key);
            let size = to - from;
            from = to;
            if j < lo || j >= hi {
                continue;
            }
            self.tick()?;
            if zeros + size < self.n {
                continue;
            }
            let mut rows = self.t_basis.clone();
            rows.extend_from_slice(&self.picks[..d]);
            rows.push(key);
            let w = canonical(&rows);
            self.out.insert(pack_raw(&w));
        }
        Ok(())
    }
}
