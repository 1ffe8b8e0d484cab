//! Dense univariate polynomials over GF(q): ring arithmetic, modular powers,
//! Rabin irreducibility, enumeration of monic irreducibles, and squarefree /
//! distinct-degree / equal-degree factorization.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, FqElem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::collections::BTreeMap;

/// Default cap on enumeration sizes (q^n) and on constructed degrees.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 22;

/// Dense polynomial over a [`FieldSpec`]; little-endian coefficients with no
/// trailing zeros (the zero polynomial has an empty coefficient list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().map_or(false, |c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &FieldSpec, c: FqElem) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &FieldSpec) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &FieldSpec, c: FqElem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(field, coeffs)
    }

    /// Builds a polynomial from little-endian integer coefficients, reduced
    /// into the prime subfield. Convenient for literals in tests.
    pub fn from_ints(field: &FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.field.one())
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.add(&self.coeff(i), &rhs.coeff(i)))
            .collect();
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn sub(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.field.sub(&self.coeff(i), &rhs.coeff(i)))
            .collect();
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn mul(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = self.field.add(&coeffs[i + j], &self.field.mul(a, b));
            }
        }
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn mul_scalar(&self, c: &FqElem) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    /// Quotient and remainder with deg(rem) < deg(divisor).
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(rhs)?;
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let dd = rhs.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let lead_inv = self.field.inv(rhs.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        let dn = self.degree().unwrap();
        let mut quot = vec![self.field.zero(); dn - dd + 1];
        for i in (dd..=dn).rev() {
            if self.field.is_zero(&rem[i]) {
                continue;
            }
            let f = self.field.mul(&rem[i], &lead_inv);
            quot[i - dd] = f.clone();
            for (j, m) in rhs.coeffs.iter().enumerate() {
                let t = self.field.mul(&f, m);
                rem[i - dd + j] = self.field.sub(&rem[i - dd + j], &t);
            }
        }
        Ok((Poly::new(&self.field, quot), Poly::new(&self.field, rem)))
    }

    pub fn rem(&self, rhs: &Poly) -> Result<Poly> {
        Ok(self.divrem(rhs)?.1)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.make_monic()
        }
    }

    pub fn make_monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead == &self.field.one() {
            return Ok(self.clone());
        }
        let inv = self.field.inv(lead)?;
        Ok(self.mul_scalar(&inv))
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(&self.field.int(i as i64), c))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    /// self^e mod m by square-and-multiply.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        self.check_field(m)?;
        if m.degree().map_or(true, |d| d < 1) {
            return Err(Error::DivisionByZeroPoly);
        }
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    fn check_field(&self, rhs: &Poly) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

// Sort order used everywhere a polynomial list is emitted: by degree, then by
// coefficients as a base-q integer (highest coefficient most significant).
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The monic degree-n polynomial whose low coefficients are the base-q digits
/// of `index`; enumeration in index order is therefore value order.
pub fn monic_from_index(field: &FieldSpec, n: usize, index: u64) -> Poly {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut v = index;
    for _ in 0..n {
        coeffs.push(field.element_from_index(v % q));
        v /= q;
    }
    coeffs.push(field.one());
    Poly::new(field, coeffs)
}

/// q^n as u128, for cap checks.
pub fn pow_q(field: &FieldSpec, n: u64) -> u128 {
    (field.q() as u128).pow(n as u32)
}

/// Rabin's criterion: f of degree n is irreducible iff x^{q^n} = x mod f and
/// gcd(x^{q^{n/r}} - x, f) = 1 for every prime r dividing n. Non-monic input
/// is normalized; constants are not irreducible.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let field = f.field().clone();
    let f = f.make_monic().expect("nonzero");
    // Cheap root screen for small fields.
    if field.q() <= 64 {
        for e in field.elements() {
            if field.is_zero(&f.eval(&e)) {
                return false;
            }
        }
    }
    let checkpoints: Vec<usize> = crate::field::factorize(n as u64)
        .iter()
        .map(|&(r, _)| n / r as usize)
        .collect();
    let x = Poly::x(&field);
    let mut frob = x.clone();
    for i in 1..=n {
        frob = frob.powmod(field.q() as u128, &f).expect("valid modulus");
        if checkpoints.contains(&i) {
            let g = frob.sub(&x).unwrap().gcd(&f).unwrap();
            if g.degree() != Some(0) {
                return false;
            }
        }
    }
    frob == x.rem(&f).unwrap()
}

/// Streams every monic irreducible of degree n in value order.
pub fn irreducibles_of_degree(
    field: &FieldSpec,
    n: u64,
    cap: u64,
) -> Result<impl Iterator<Item = Poly>> {
    let size = pow_q(field, n);
    if size > cap as u128 {
        return Err(Error::EnumerationCapExceeded { size, cap });
    }
    let field = field.clone();
    Ok((0..size as u64).filter_map(move |v| {
        let cand = monic_from_index(&field, n as usize, v);
        is_irreducible(&cand).then_some(cand)
    }))
}

/// p-th root of a polynomial with zero derivative: f = g(x^p) and the root's
/// coefficients are c^{q/p}.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let e = (field.q() / field.p()) as u128;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pow(c, e))
        .collect();
    Poly::new(field, coeffs)
}

/// Product of the distinct monic irreducible factors of f.
pub fn radical(f: &Poly) -> Result<Poly> {
    let f = f.make_monic()?;
    if f.degree() == Some(0) {
        return Ok(f);
    }
    let fp = f.derivative();
    if fp.is_zero() {
        return radical(&pth_root(&f));
    }
    let g = f.gcd(&fp)?;
    let w = f.divrem(&g)?.0; // distinct factors whose multiplicity p does not divide
    if g.degree() == Some(0) {
        return Ok(w);
    }
    let r = radical(&g)?;
    let dup = r.gcd(&w)?;
    w.mul(&r.divrem(&dup)?.0)
}

/// Splits the squarefree part of f by factor degree: degree d maps to the
/// product of all monic irreducible factors of f of degree d together with
/// their count.
pub fn distinct_degree_split(f: &Poly) -> Result<BTreeMap<usize, (Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let mut rem = radical(f)?;
    let mut out = BTreeMap::new();
    if rem.degree() == Some(0) {
        return Ok(out);
    }
    let x = Poly::x(&field);
    let mut frob = x.rem(&rem)?;
    let mut d = 0usize;
    while let Some(deg) = rem.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.insert(deg, (rem.clone(), 1));
            break;
        }
        frob = frob.powmod(field.q() as u128, &rem)?;
        let g = frob.sub(&x)?.gcd(&rem)?;
        if g.degree().map_or(false, |dg| dg > 0) {
            let dg = g.degree().unwrap();
            assert_eq!(dg % d, 0, "distinct-degree component has stray degree");
            out.insert(d, (g.clone(), dg / d));
            rem = rem.divrem(&g)?.0;
            if rem.degree().map_or(false, |r| r > 0) {
                frob = frob.rem(&rem)?;
            }
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus equal-degree factorization. `f` must be monic,
/// squarefree, with every irreducible factor of degree exactly `d`; the
/// randomized splitting is made reproducible by `seed`. Output is sorted.
pub fn equal_degree_factor(f: &Poly, d: usize, seed: u64) -> Result<Vec<Poly>> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::PreconditionViolated(
            "equal-degree input must be monic and nonzero".into(),
        ));
    }
    if d == 0 || f.degree().unwrap() % d != 0 {
        return Err(Error::PreconditionViolated(format!(
            "degree {} is not a multiple of {}",
            f.degree().unwrap(),
            d
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = Vec::new();
    let mut pending = vec![f.clone()];
    while let Some(piece) = pending.pop() {
        let deg = piece.degree().unwrap();
        if deg == d {
            done.push(piece);
            continue;
        }
        let (a, b) = split_equal_degree(&piece, d, &mut rng)?;
        pending.push(a);
        pending.push(b);
    }
    done.sort();
    Ok(done)
}

const EDF_MAX_ATTEMPTS: usize = 256;

fn split_equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<(Poly, Poly)> {
    let field = f.field().clone();
    let n = f.degree().unwrap();
    for _ in 0..EDF_MAX_ATTEMPTS {
        let a = random_poly_below(&field, n, rng);
        if a.degree().map_or(true, |da| da < 1) {
            continue;
        }
        let g = a.gcd(f)?;
        if let Some(split) = admit_split(f, &g, d)? {
            return Ok(split);
        }
        let h = if field.p() == 2 {
            // Absolute trace to GF(2): sum of a^{2^i} over the extension.
            let steps = (field.k() as u32) * (d as u32);
            let mut term = a.rem(f)?;
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.powmod(2, f)?;
                acc = acc.add(&term)?;
            }
            acc
        } else {
            // Norm of a into the degree-d subfield, then the (q-1)/2 power:
            // together a^{(q^d - 1)/2} without large exponents.
            let mut term = a.rem(f)?;
            let mut norm = term.clone();
            for _ in 1..d {
                term = term.powmod(field.q() as u128, f)?;
                norm = norm.mul(&term)?.rem(f)?;
            }
            let half = norm.powmod(((field.q() - 1) / 2) as u128, f)?;
            half.sub(&Poly::one(&field))?
        };
        let g = h.gcd(f)?;
        if let Some(split) = admit_split(f, &g, d)? {
            return Ok(split);
        }
    }
    Err(Error::PreconditionViolated(
        "equal-degree splitting failed; factor degrees are not uniform".into(),
    ))
}

fn admit_split(f: &Poly, g: &Poly, d: usize) -> Result<Option<(Poly, Poly)>> {
    let dg = match g.degree() {
        Some(dg) if dg > 0 && dg < f.degree().unwrap() => dg,
        _ => return Ok(None),
    };
    if dg % d != 0 {
        return Err(Error::PreconditionViolated(format!(
            "split exposed a factor of degree {} in an equal-degree-{} product",
            dg, d
        )));
    }
    let other = f.divrem(g)?.0;
    Ok(Some((g.clone(), other)))
}

fn random_poly_below(field: &FieldSpec, deg_bound: usize, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..deg_bound)
        .map(|_| field.element_from_index(rng.gen_range(0..field.q())))
        .collect();
    Poly::new(field, coeffs)
}

/// Uniform random monic polynomial of the given degree.
pub fn random_monic(field: &FieldSpec, deg: usize, rng: &mut impl Rng) -> Poly {
    let mut coeffs: Vec<FqElem> = (0..deg)
        .map(|_| field.element_from_index(rng.gen_range(0..field.q())))
        .collect();
    coeffs.push(field.one());
    Poly::new(field, coeffs)
}

/// Rejection-samples a random monic irreducible of the given degree.
pub fn random_irreducible(field: &FieldSpec, deg: usize, rng: &mut impl Rng) -> Poly {
    loop {
        let cand = random_monic(field, deg, rng);
        if is_irreducible(&cand) {
            return cand;
        }
    }
}

/// Inverse of g modulo f via the extended Euclidean algorithm; `None` when g
/// is not invertible (gcd not constant).
pub fn modular_inverse(g: &Poly, f: &Poly) -> Result<Option<Poly>> {
    let field = f.field().clone();
    let g = g.rem(f)?;
    if g.is_zero() {
        return Ok(None);
    }
    // Invariants: old_r = old_s * g + (...) * f, r = s * g + (...) * f.
    let (mut old_r, mut r) = (g, f.clone());
    let (mut old_s, mut s) = (Poly::one(&field), Poly::zero(&field));
    while !r.is_zero() {
        let (q, rem) = old_r.divrem(&r)?;
        let next_s = old_s.sub(&q.mul(&s)?)?;
        old_r = std::mem::replace(&mut r, rem);
        old_s = std::mem::replace(&mut s, next_s);
    }
    if old_r.degree() != Some(0) {
        return Ok(None);
    }
    let scale = field.inv(old_r.leading().unwrap())?;
    Ok(Some(old_s.mul_scalar(&scale).rem(f)?))
}
