//! Univariate polynomials over a finite field, with trial-division
//! factorization.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Fq};
use crate::Error;

/// Polynomial with coefficients in some `Fq`, little-endian, trailing zeros
/// trimmed. The field is supplied per operation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// From prime-field digits, e.g. `[1, 0, 1]` for `1 + t²`.
    pub fn from_digits(d: &[u32]) -> Poly {
        Poly::new(d.iter().map(|&c| Elem(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![Elem::ONE] }
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Poly {
        let mut c = vec![Elem::ZERO; n + 1];
        c[n] = Elem::ONE;
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &Fq) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Fq) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly, f: &Fq) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32, f: &Fq) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self, f))
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly, f: &Fq) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly, f: &Fq) -> Poly {
        self.div_rem(d, f).1
    }

    pub fn eval(&self, f: &Fq, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Every monic polynomial of degree `d` over `f`, in increasing order of
    /// the integer encoding of the lower coefficients.
    pub fn monic_of_degree(f: &Fq, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = f.order() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(Elem((idx % q) as u32));
                idx /= q;
            }
            c.push(Elem::ONE);
            Poly { coeffs: c }
        })
    }

    pub fn is_irreducible(&self, f: &Fq) -> bool {
        let Some(deg) = self.degree() else { return false };
        if deg == 0 {
            return false;
        }
        (1..=deg / 2).all(|d| Poly::monic_of_degree(f, d).all(|g| !self.rem(&g, f).is_zero()))
    }
}

/// Factors a monic polynomial into monic irreducible powers by trial
/// division. Factors come out sorted by degree, then by integer encoding.
pub fn factor(poly: &Poly, f: &Fq) -> Result<Vec<(Poly, u32)>, Error> {
    let Some(deg) = poly.degree() else {
        return Err(Error::InvalidArgument("cannot factor the zero polynomial"));
    };
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out = Vec::new();
    let mut rest = poly.clone();
    if deg == 0 {
        return Ok(out);
    }
    let mut d = 1;
    while rest.degree().is_some_and(|r| 2 * d <= r) {
        for g in Poly::monic_of_degree(f, d) {
            let mut mult = 0;
            loop {
                let (qt, r) = rest.div_rem(&g, f);
                if !r.is_zero() {
                    break;
                }
                rest = qt;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        d += 1;
    }
    if rest.degree().is_some_and(|r| r >= 1) {
        // Whatever is left has no factor of degree <= deg/2, but may repeat
        // an already recorded factor.
        if let Some(entry) = out.iter_mut().find(|(g, _)| *g == rest) {
            entry.1 += 1;
        } else {
            out.push((rest, 1));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.iter().rev().cmp(b.0.coeffs.iter().rev())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(fs: &[(Poly, u32)], f: &Fq) -> Poly {
        fs.iter().fold(Poly::one(), |acc, (g, e)| acc.mul(&g.pow(*e, f), f))
    }

    #[test]
    fn t7_minus_one_over_f2() {
        let f2 = Fq::prime(2).unwrap();
        let p = Poly::from_digits(&[1, 0, 0, 0, 0, 0, 0, 1]);
        let fs = factor(&p, &f2).unwrap();
        let expected = vec![
            (Poly::from_digits(&[1, 1]), 1),
            (Poly::from_digits(&[1, 1, 0, 1]), 1),
            (Poly::from_digits(&[1, 0, 1, 1]), 1),
        ];
        assert_eq!(fs, expected);
        assert_eq!(product(&fs, &f2), p);
    }

    #[test]
    fn repeated_and_small_factors() {
        let f2 = Fq::prime(2).unwrap();
        let t3 = Poly::monomial(3);
        assert_eq!(factor(&t3, &f2).unwrap(), vec![(Poly::from_digits(&[0, 1]), 3)]);

        let f3 = Fq::prime(3).unwrap();
        let t2m1 = Poly::from_digits(&[2, 0, 1]);
        assert_eq!(
            factor(&t2m1, &f3).unwrap(),
            vec![(Poly::from_digits(&[1, 1]), 1), (Poly::from_digits(&[2, 1]), 1)]
        );
        assert!(matches!(factor(&Poly::from_digits(&[1, 2]), &f3), Err(Error::NotMonic)));
    }

    #[test]
    fn square_of_irreducible_quadratic() {
        let f2 = Fq::prime(2).unwrap();
        let g = Poly::from_digits(&[1, 1, 1]);
        let p = g.pow(2, &f2).mul(&Poly::from_digits(&[0, 1]), &f2);
        let fs = factor(&p, &f2).unwrap();
        assert_eq!(fs, vec![(Poly::from_digits(&[0, 1]), 1), (g, 2)]);
    }

    #[test]
    fn factorizations_remultiply() {
        for q in [2u32, 3, 4, 5] {
            let f = Fq::with_order(q).unwrap();
            for d in 1..=5 {
                for p in Poly::monic_of_degree(&f, d).take(200) {
                    let fs = factor(&p, &f).unwrap();
                    assert_eq!(product(&fs, &f), p);
                    assert!(fs.iter().all(|(g, _)| g.is_irreducible(&f)));
                }
            }
        }
    }

    #[test]
    fn division_identity() {
        let f = Fq::with_order(9).unwrap();
        let a = Poly::new(vec![Elem(3), Elem(7), Elem(0), Elem(5), Elem(1)]);
        let b = Poly::new(vec![Elem(2), Elem(4), Elem(1)]);
        let (qt, r) = a.div_rem(&b, &f);
        assert_eq!(qt.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
