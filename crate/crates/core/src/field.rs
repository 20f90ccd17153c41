//! Arithmetic in small finite fields `F_{p^m}`.
//!
//! Elements are encoded as integers `Σ c_i p^i` over their little-endian
//! coefficient vector relative to the power basis `1, γ, …, γ^{m-1}`, where
//! `γ` is a root of the stored modulus. Multiplication goes through discrete
//! log tables built once per field.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::Poly;
use crate::Error;

/// Largest field order we are willing to tabulate.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

/// Element of a finite field, stored as its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus over F_p, little-endian, length m + 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1).
    exp: Vec<u32>,
    /// log[a] for a != 0.
    log: Vec<u32>,
    neg: Vec<u32>,
    /// Full addition table, only for small odd-characteristic fields.
    add: Option<Vec<u32>>,
}

/// Handle to a finite field. Cheap to clone; all clones share tables.
#[derive(Clone)]
pub struct Fq(Arc<FieldData>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{}[mod ", self.0.p, self.0.m)?;
            for c in &self.0.modulus {
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

// Dense polynomial helpers over F_p used only while bootstrapping a field.
fn pmod_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (t, &mc) in modulus.iter().enumerate() {
            let idx = d - m + t;
            prod[idx] = (prod[idx] + (p - c) * mc) % p;
        }
    }
    prod.truncate(m);
    prod.resize(m, 0);
    prod
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut x: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Trial-division irreducibility test over F_p for a monic polynomial.
fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    let prime = Fq::prime(p).expect("prime");
    let fpoly = Poly::from_digits(f);
    for d in 1..=deg / 2 {
        for g in Poly::monic_of_degree(&prime, d) {
            if fpoly.rem(&g, &prime).is_zero() {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Fq, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::build(p, vec![0, 1])
    }

    /// `F_{p^m}`. Without an explicit modulus the smallest monic irreducible
    /// of degree `m` (by integer encoding) is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Fq, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1"));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        if q.is_none() {
            return Err(Error::FieldTooLarge);
        }
        match modulus {
            Some(md) => {
                if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidArgument("modulus must be monic of the stated degree"));
                }
                if m > 1 && !is_irreducible_fp(md, p) {
                    return Err(Error::ReducibleModulus);
                }
                if m == 1 {
                    // Any monic linear modulus gives the prime field.
                    return Self::build(p, vec![0, 1]);
                }
                Self::build(p, md.to_vec())
            }
            None if m == 1 => Self::build(p, vec![0, 1]),
            None => {
                let lead = p.pow(m);
                for tail in 0..lead {
                    let mut md = decode(tail, p, m);
                    md.push(1);
                    if md[0] != 0 && is_irreducible_fp(&md, p) {
                        return Self::build(p, md);
                    }
                }
                unreachable!("irreducible polynomials exist in every degree")
            }
        }
    }

    /// Field with `q` elements and default modulus.
    pub fn with_order(q: u32) -> Result<Fq, Error> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m, None)
    }

    fn build(p: u32, modulus: Vec<u32>) -> Result<Fq, Error> {
        let m = (modulus.len() - 1) as u32;
        let q = p.pow(m);
        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let d: Vec<u32> = decode(x, p, m).into_iter().map(|c| (p - c) % p).collect();
                encode(&d, p)
            })
            .collect();
        // Find a generator of the multiplicative group by brute force.
        let mut exp = Vec::new();
        let mut log = vec![0u32; q as usize];
        if q == 2 {
            exp = vec![1, 1];
        } else {
            for cand in 2..q {
                let g = decode(cand, p, m);
                let mut powers = Vec::with_capacity(q as usize - 1);
                let mut cur = decode(1, p, m);
                loop {
                    powers.push(encode(&cur, p));
                    cur = pmod_mul(&cur, &g, &modulus, p);
                    if encode(&cur, p) == 1 {
                        break;
                    }
                    if powers.len() >= q as usize {
                        break;
                    }
                }
                if powers.len() == q as usize - 1 {
                    exp = powers;
                    break;
                }
            }
            if exp.is_empty() {
                return Err(Error::ReducibleModulus);
            }
            let n = exp.len();
            exp.extend_from_within(..n);
        }
        for (i, &e) in exp.iter().enumerate().take(q as usize - 1) {
            log[e as usize] = i as u32;
        }
        let add = if p != 2 && q <= 729 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = decode(a, p, m);
                for b in 0..q {
                    let db = decode(b, p, m);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s, p);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Fq(Arc::new(FieldData { p, m, q, modulus, exp, log, neg, add })))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Monic modulus over F_p, little-endian coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if d.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= d.p { s - d.p } else { s });
        }
        if let Some(t) = &d.add {
            return Elem(t[(a.0 * d.q + b.0) as usize]);
        }
        let (mut x, mut y, mut r, mut pw) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            r += ((x % d.p + y % d.p) % d.p) * pw;
            x /= d.p;
            y /= d.p;
            pw *= d.p;
        }
        Elem(r)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = &*self.0;
        let l = d.log[a.0 as usize];
        Ok(Elem(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, Error> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let d = &*self.0;
        let order = (d.q - 1) as u64;
        let l = (d.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(d.exp[l as usize])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i64;
        Elem(n.rem_euclid(p) as u32)
    }

    /// Element with the given coefficients over F_p (little-endian).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, Error> {
        if coeffs.len() > self.0.m as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidArgument("coefficients out of range for this field"));
        }
        Ok(Elem(encode(coeffs, self.0.p)))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        decode(a.0, self.0.p, self.0.m)
    }

    /// The generator `γ` of the power basis (equal to 1 in a prime field).
    pub fn gen(&self) -> Elem {
        if self.0.m == 1 {
            Elem::ONE
        } else {
            Elem(self.0.p)
        }
    }

    /// All elements, in increasing integer-encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Builds `F_{q^m}` for `q = |self|` together with an embedding of
    /// `self` into it. The embedding sends `γ` to the first root of the
    /// modulus of `self` found in the extension.
    pub fn embed(&self, m: u32) -> Result<Embedding, Error> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1"));
        }
        let ext = Fq::new(self.0.p, self.0.m * m, None)?;
        let root = if self.0.m == 1 {
            Elem::ONE
        } else {
            let md: Vec<Elem> = self.0.modulus.iter().map(|&c| Elem(c)).collect();
            ext.elements()
                .find(|&r| Poly::new(md.clone()).eval(&ext, r).is_zero())
                .expect("modulus splits in the extension")
        };
        let mut image = Vec::with_capacity(self.0.q as usize);
        for a in self.elements() {
            let cs = self.coeffs(a);
            let mut acc = Elem::ZERO;
            let mut pw = Elem::ONE;
            for c in cs {
                acc = ext.add(acc, ext.mul(Elem(c), pw));
                pw = ext.mul(pw, root);
            }
            image.push(acc);
        }
        Ok(Embedding { base: self.clone(), ext, image })
    }
}

/// Ring embedding `F_q -> F_{q^m}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub base: Fq,
    pub ext: Fq,
    image: Vec<Elem>,
}

impl Embedding {
    #[inline]
    pub fn map(&self, a: Elem) -> Elem {
        self.image[a.0 as usize]
    }
}
