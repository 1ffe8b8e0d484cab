//! Exact arithmetic in GF(p^k) and in a quadratic extension GF(p^{2k}).
//!
//! A [`FieldSpec`] describes the field (prime, extension degree, modulus) and
//! owns all arithmetic; elements are plain reduced coefficient vectors. Every
//! operation is a pure function over immutable values, so specs and elements
//! can be shared freely across worker threads.

use crate::error::{Error, Result};
use crate::poly::{self, Poly};
use smallvec::{smallvec, SmallVec};

/// Default bound on the field order q = p^k.
pub const DEFAULT_Q_LIMIT: u64 = 1 << 20;

/// An element of GF(p^k): k coefficients in [0, p), little-endian in the
/// residue generator. Length and reduction are maintained by [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElem(pub(crate) SmallVec<[u64; 2]>);

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

// Value order: compare as base-p integers, i.e. highest coefficient first.
impl Ord for FqElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for FqElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite field GF(p^k) presented by a monic irreducible modulus of degree
/// k over GF(p). For k = 1 the modulus is trivial and arithmetic is plain
/// modular arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    /// Monic modulus, little-endian, length k + 1. Canonically `x` when k = 1.
    modulus: SmallVec<[u64; 4]>,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division; returns (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FieldSpec {
    /// Builds GF(p^k). When `modulus` is omitted and k > 1 the
    /// lexicographically least monic irreducible of degree k is selected,
    /// comparing coefficients low-degree-first.
    pub fn build(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Self> {
        Self::build_with_limit(p, k, modulus, DEFAULT_Q_LIMIT)
    }

    pub fn build_with_limit(
        p: u64,
        k: usize,
        modulus: Option<&[u64]>,
        q_limit: u64,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch { want: 1, got: 0 });
        }
        let q = (1..=k).try_fold(1u64, |acc, _| {
            acc.checked_mul(p).filter(|&v| v <= q_limit)
        });
        let q = q.ok_or(Error::FieldTooLarge {
            q: (p as u128).pow(k as u32),
            limit: q_limit,
        })?;

        if k == 1 {
            // A supplied modulus must still be monic of degree 1; it is then
            // discarded in favour of the canonical `x`.
            if let Some(m) = modulus {
                let m: SmallVec<[u64; 4]> = m.iter().map(|&c| c % p).collect();
                if m.len() != 2 || m[1] != 1 {
                    return Err(Error::DegreeMismatch {
                        want: 1,
                        got: m.len().saturating_sub(1),
                    });
                }
            }
            return Ok(FieldSpec {
                p,
                k: 1,
                modulus: smallvec![0, 1],
                q: p,
            });
        }

        let prime_field = FieldSpec {
            p,
            k: 1,
            modulus: smallvec![0, 1],
            q: p,
        };
        let modulus: SmallVec<[u64; 4]> = match modulus {
            Some(m) => {
                let m: SmallVec<[u64; 4]> = m.iter().map(|&c| c % p).collect();
                if m.len() != k + 1 || m[k] != 1 {
                    return Err(Error::DegreeMismatch {
                        want: k,
                        got: m.len().saturating_sub(1),
                    });
                }
                let candidate = Poly::from_ints(&prime_field, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
                if !poly::is_irreducible(&candidate) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => least_irreducible_modulus(&prime_field, k),
        };
        Ok(FieldSpec { p, k, modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(smallvec![0; self.k])
    }

    pub fn one(&self) -> FqElem {
        self.int(1)
    }

    /// Embeds an integer into the prime subfield.
    pub fn int(&self, v: i64) -> FqElem {
        let mut c = smallvec![0; self.k];
        c[0] = v.rem_euclid(self.p as i64) as u64;
        FqElem(c)
    }

    /// Builds an element from little-endian coefficients over GF(p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > self.k {
            return Err(Error::DegreeMismatch {
                want: self.k,
                got: coeffs.len(),
            });
        }
        let mut c: SmallVec<[u64; 2]> = coeffs.iter().map(|&v| v % self.p).collect();
        c.resize(self.k, 0);
        Ok(FqElem(c))
    }

    /// The element with base-p digit expansion `index`; inverse of
    /// [`Self::element_index`]. Indices enumerate the field in value order.
    pub fn element_from_index(&self, index: u64) -> FqElem {
        debug_assert!(index < self.q);
        let mut c: SmallVec<[u64; 2]> = smallvec![0; self.k];
        let mut v = index;
        for slot in c.iter_mut() {
            *slot = v % self.p;
            v /= self.p;
        }
        FqElem(c)
    }

    pub fn element_index(&self, a: &FqElem) -> u64 {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All q elements in value order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |i| self.element_from_index(i))
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        debug_assert_eq!(a.0.len(), b.0.len());
        FqElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(b.0.iter())
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.k == 1 {
            return FqElem(smallvec![a.0[0] * b.0[0] % self.p]);
        }
        // Convolve, then reduce by the monic modulus.
        let mut buf = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                buf[i + j] = (buf[i + j] + x * y) % self.p;
            }
        }
        for i in (self.k..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..self.k {
                let m = self.modulus[j];
                if m != 0 {
                    buf[i - self.k + j] = (buf[i - self.k + j] + (self.p - m % self.p) * c) % self.p;
                }
            }
        }
        buf.truncate(self.k);
        FqElem(buf.into_iter().collect())
    }

    /// Repeated-squaring power; 0^0 = 1 by convention.
    pub fn pow(&self, a: &FqElem, mut e: u128) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 2) as u128))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Least e >= 1 with a^e = 1, found by factoring q - 1 and descending
    /// through its prime factors.
    pub fn multiplicative_order(&self, a: &FqElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(order_in_group(self.q - 1, |e| {
            self.pow(a, e as u128) == self.one()
        }))
    }

    /// Euler-criterion square test; in characteristic 2 every element is a
    /// square.
    pub fn is_square(&self, a: &FqElem) -> bool {
        if self.p == 2 || self.is_zero(a) {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as u128) == self.one()
    }

    pub fn sqrt(&self, a: &FqElem) -> Option<FqElem> {
        if self.p == 2 {
            // Squaring is a bijection; invert the Frobenius.
            return Some(self.pow(a, (self.q / 2) as u128));
        }
        if !self.is_square(a) {
            return None;
        }
        self.elements().find(|e| &self.mul(e, e) == a)
    }

    /// Least non-square in element value order; `None` in characteristic 2.
    pub fn least_nonsquare(&self) -> Option<FqElem> {
        if self.p == 2 {
            return None;
        }
        self.elements().find(|e| !self.is_square(e))
    }
}

/// Shared order computation: group order `n`, `is_one(e)` tests x^e = 1.
pub(crate) fn order_in_group(n: u64, is_one: impl Fn(u64) -> bool) -> u64 {
    let mut order = n;
    for (prime, _) in factorize(n) {
        while order % prime == 0 && is_one(order / prime) {
            order /= prime;
        }
    }
    order
}

/// Least monic irreducible of degree k over GF(p), coefficients compared
/// low-degree-first.
fn least_irreducible_modulus(prime_field: &FieldSpec, k: usize) -> SmallVec<[u64; 4]> {
    let p = prime_field.p();
    let total = p.pow(k as u32);
    for v in 0..total {
        // Decode with c_0 as the most significant digit so the scan order is
        // the low-degree-first lexicographic order.
        let mut coeffs: SmallVec<[u64; 4]> = smallvec![0; k + 1];
        coeffs[k] = 1;
        let mut rest = v;
        for i in (0..k).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        let cand = Poly::from_ints(
            prime_field,
            &coeffs.iter().map(|&x| x as i64).collect::<Vec<_>>(),
        );
        if poly::is_irreducible(&cand) {
            return coeffs;
        }
    }
    unreachable!("an irreducible of every degree exists over a finite field")
}

/// The quadratic extension GF(q^2) of a base field, presented by a monic
/// irreducible quadratic. Elements are pairs (u, v) meaning u + v*beta with
/// beta a root of the extension modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: FieldSpec,
    /// Extension modulus x^2 + m1*x + m0 (monic, stored by its two low
    /// coefficients).
    m0: FqElem,
    m1: FqElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElem {
    pub u: FqElem,
    pub v: FqElem,
}

impl ExtField {
    /// Builds GF(q^2) from a monic irreducible quadratic over `base`.
    pub fn build(base: &FieldSpec, modulus: &Poly) -> Result<Self> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        if modulus.degree() != Some(2) || !modulus.is_monic() {
            return Err(Error::DegreeMismatch {
                want: 2,
                got: modulus.degree().unwrap_or(0),
            });
        }
        if !poly::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(ExtField {
            base: base.clone(),
            m0: modulus.coeff(0),
            m1: modulus.coeff(1),
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// Order of the extension field, q^2.
    pub fn order(&self) -> u64 {
        self.base.q() * self.base.q()
    }

    pub fn embed(&self, a: &FqElem) -> ExtElem {
        ExtElem {
            u: a.clone(),
            v: self.base.zero(),
        }
    }

    /// The adjoined root beta of the extension modulus.
    pub fn generator(&self) -> ExtElem {
        ExtElem {
            u: self.base.zero(),
            v: self.base.one(),
        }
    }

    pub fn zero(&self) -> ExtElem {
        self.embed(&self.base.zero())
    }

    pub fn one(&self) -> ExtElem {
        self.embed(&self.base.one())
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        self.base.is_zero(&a.u) && self.base.is_zero(&a.v)
    }

    /// True when the element lies in the embedded base field.
    pub fn in_base(&self, a: &ExtElem) -> bool {
        self.base.is_zero(&a.v)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            u: self.base.add(&a.u, &b.u),
            v: self.base.add(&a.v, &b.v),
        }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem {
            u: self.base.sub(&a.u, &b.u),
            v: self.base.sub(&a.v, &b.v),
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        // (u1 + v1 b)(u2 + v2 b) with b^2 = -m1 b - m0.
        let uu = f.mul(&a.u, &b.u);
        let vv = f.mul(&a.v, &b.v);
        let cross = f.add(&f.mul(&a.u, &b.v), &f.mul(&a.v, &b.u));
        ExtElem {
            u: f.sub(&uu, &f.mul(&vv, &self.m0)),
            v: f.sub(&cross, &f.mul(&vv, &self.m1)),
        }
    }

    pub fn pow(&self, a: &ExtElem, mut e: u128) -> ExtElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let f = &self.base;
        // Multiply by the conjugate (u - m1 v) - v*beta; the product is the
        // norm u^2 - m1 u v + m0 v^2, a nonzero base element.
        let conj = ExtElem {
            u: f.sub(&a.u, &f.mul(&self.m1, &a.v)),
            v: f.neg(&a.v),
        };
        let norm = f.add(
            &f.sub(&f.mul(&a.u, &a.u), &f.mul(&self.m1, &f.mul(&a.u, &a.v))),
            &f.mul(&self.m0, &f.mul(&a.v, &a.v)),
        );
        let ninv = f.inv(&norm)?;
        Ok(ExtElem {
            u: f.mul(&conj.u, &ninv),
            v: f.mul(&conj.v, &ninv),
        })
    }

    pub fn div(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// The Frobenius image a^q.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.base.q() as u128)
    }

    /// Least e >= 1 with a^e = 1, by factoring q^2 - 1.
    pub fn multiplicative_order(&self, a: &ExtElem) -> Result<u64> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(order_in_group(self.order() - 1, |e| {
            self.pow(a, e as u128) == self.one()
        }))
    }
}
