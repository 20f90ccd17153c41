//! Upper-triangle coordinates for symmetric tensors and quadratic forms.
//!
//! A vector of length `k(k+1)/2` indexed by pairs `i ≤ j` (row-major over
//! the upper triangle) is read either as the quadratic form
//! `Σ q_ij x_i x_j` or as the symmetric tensor with entries `s_ij`. The two
//! readings pair by the plain dot product.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::field::{Elem, Fq};

pub fn sym_dim(k: usize) -> usize {
    k * (k + 1) / 2
}

/// Position of the pair `(i, j)` (in either order).
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * k - i * (i + 1) / 2 + j
}

/// All pairs `i ≤ j` in coordinate order.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect()
}

/// `l ↦ (l_i l_j)_{i≤j}`.
pub fn elementary_tensor(f: &Fq, l: &[Elem]) -> Vec<Elem> {
    let k = l.len();
    pairs(k).into_iter().map(|(i, j)| f.mul(l[i], l[j])).collect()
}

/// Value of the quadratic form with coordinates `q` at `x`.
pub fn eval_form(f: &Fq, q: &[Elem], x: &[Elem]) -> Elem {
    let k = x.len();
    let mut acc = Elem::ZERO;
    let mut idx = 0;
    for i in 0..k {
        for j in i..k {
            let c = q[idx];
            idx += 1;
            if c.is_zero() {
                continue;
            }
            acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
        }
    }
    acc
}

/// Human-readable form using the given variable names, e.g. `x0^2 + 2*x0*x1`.
pub fn format_form(f: &Fq, q: &[Elem], vars: &[&str]) -> String {
    let k = vars.len();
    let mut s = String::new();
    for (idx, (i, j)) in pairs(k).into_iter().enumerate() {
        let c = q[idx];
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push_str(" + ");
        }
        if c != Elem::ONE {
            let digits: String = f.coeffs(c).iter().map(|d| char::from_digit(*d, 10).unwrap_or('?')).collect();
            let _ = write!(s, "{digits}*");
        }
        if i == j {
            let _ = write!(s, "{}^2", vars[i]);
        } else {
            let _ = write!(s, "{}*{}", vars[i], vars[j]);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
