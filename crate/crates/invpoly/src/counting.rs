//! Counting invariant polynomials three ways: the closed formula driven by
//! the matrix classification, factor extraction from semilinear polynomials,
//! and brute-force enumeration. Plus the number-theoretic utilities
//! (Möbius, totient, characters, weighted inversion) the formula rests on,
//! and the historical 1962 count kept as an exact rational for comparison.

use crate::action::{build_semilinear_poly, is_invariant};
use crate::error::{Error, Result};
use crate::field::factorize;
use crate::pgl2::{classify_type, element_order, Mat2, TypeTag};
use crate::poly::{self, Poly};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

/// Möbius function by trial-division factorization.
pub fn moebius_mu(n: u64) -> i64 {
    assert!(n >= 1);
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// Principal Dirichlet character mod d: 1 on integers coprime to d.
pub fn principal_character(d: u64, n: u64) -> u64 {
    if gcd(d, n) == 1 {
        1
    } else {
        0
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The forward chi-weighted divisor sum L(n) = sum_{d|n} chi(d) K(n/d).
pub fn weighted_divisor_sum(
    k: &BTreeMap<u64, i128>,
    chi: &dyn Fn(u64) -> i128,
) -> Result<BTreeMap<u64, i128>> {
    let mut out = BTreeMap::new();
    for &n in k.keys() {
        let mut acc: i128 = 0;
        for d in divisors(n) {
            let kv = k.get(&(n / d)).ok_or(Error::MissingDivisorValue(n / d))?;
            acc = acc
                .checked_add(chi(d).checked_mul(*kv).ok_or(Error::NumericOverflow)?)
                .ok_or(Error::NumericOverflow)?;
        }
        out.insert(n, acc);
    }
    Ok(out)
}

/// Inverts the forward sum for a completely multiplicative weight:
/// K(n) = sum_{d|n} chi(d) mu(d) L(n/d).
pub fn moebius_invert_weighted(
    l: &BTreeMap<u64, i128>,
    chi: &dyn Fn(u64) -> i128,
) -> Result<BTreeMap<u64, i128>> {
    let mut out = BTreeMap::new();
    for &n in l.keys() {
        let mut acc: i128 = 0;
        for d in divisors(n) {
            let lv = l.get(&(n / d)).ok_or(Error::MissingDivisorValue(n / d))?;
            let term = chi(d)
                .checked_mul(moebius_mu(d) as i128)
                .and_then(|t| t.checked_mul(*lv))
                .ok_or(Error::NumericOverflow)?;
            acc = acc.checked_add(term).ok_or(Error::NumericOverflow)?;
        }
        out.insert(n, acc);
    }
    Ok(out)
}

/// The classification-dependent constants of the counting formula: an
/// additive constant and a correction function eta applied to q^{m/d}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeParams {
    pub c_a: i64,
    pub eta: Eta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eta {
    ConstNeg1,
    ConstZero,
    AlternatingSign,
}

impl Eta {
    pub fn eval(&self, t: u64) -> i64 {
        match self {
            Eta::ConstNeg1 => -1,
            Eta::ConstZero => 0,
            Eta::AlternatingSign => {
                if t % 2 == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl TypeParams {
    pub fn for_tag(tag: &TypeTag) -> TypeParams {
        match tag.index() {
            1 => TypeParams {
                c_a: 0,
                eta: Eta::ConstNeg1,
            },
            2 => TypeParams {
                c_a: 0,
                eta: Eta::ConstZero,
            },
            3 => TypeParams {
                c_a: -1,
                eta: Eta::ConstZero,
            },
            _ => TypeParams {
                c_a: 0,
                eta: Eta::AlternatingSign,
            },
        }
    }
}

/// The exact number of degree-n monic irreducible polynomials fixed by the
/// class of `m`, for n >= 3: zero off multiples of the element order D, and
/// otherwise phi(D)/(Dm) (c_A + sum over divisors d of m coprime to D of
/// mu(d)(q^{m/d} + eta(m/d))). The division is checked to be exact.
pub fn count_closed_form(m: &Mat2, n: u64) -> Result<u64> {
    let tag = classify_type(m)?;
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let order = element_order(m)?;
    if n % order != 0 {
        return Ok(0);
    }
    let deg_ratio = n / order;
    let params = TypeParams::for_tag(&tag);
    let q = m.field().q() as i128;
    let mut sum: i128 = params.c_a as i128;
    for d in divisors(deg_ratio) {
        if gcd(d, order) != 1 {
            continue;
        }
        let mu = moebius_mu(d);
        if mu == 0 {
            continue;
        }
        let power = q
            .checked_pow((deg_ratio / d) as u32)
            .ok_or(Error::NumericOverflow)?;
        let term = power
            .checked_add(params.eta.eval(deg_ratio / d) as i128)
            .and_then(|t| t.checked_mul(mu as i128))
            .ok_or(Error::NumericOverflow)?;
        sum = sum.checked_add(term).ok_or(Error::NumericOverflow)?;
    }
    let numer = (euler_phi(order) as i128)
        .checked_mul(sum)
        .ok_or(Error::NumericOverflow)?;
    let denom = (order * deg_ratio) as i128;
    if numer % denom != 0 {
        return Err(Error::NonIntegerResult);
    }
    let value = numer / denom;
    if value < 0 {
        return Err(Error::NonIntegerResult);
    }
    Ok(value as u64)
}

/// Brute-force oracle: enumerate the monic irreducibles of degree n and test
/// invariance directly. Parallel over the candidate range; the count is a
/// plain sum, so results do not depend on the worker count.
pub fn count_brute_force(m: &Mat2, n: u64, enum_cap: u64) -> Result<u64> {
    Ok(invariants_brute_force(m, n, enum_cap)?.len() as u64)
}

/// The sorted list behind [`count_brute_force`].
pub fn invariants_brute_force(m: &Mat2, n: u64, enum_cap: u64) -> Result<Vec<Poly>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let size = poly::pow_q(m.field(), n);
    if size > enum_cap as u128 {
        return Err(Error::EnumerationCapExceeded {
            size,
            cap: enum_cap,
        });
    }
    let field = m.field().clone();
    Ok((0..size as u64)
        .into_par_iter()
        .filter_map(|v| {
            let cand = poly::monic_from_index(&field, n as usize, v);
            (poly::is_irreducible(&cand)
                && is_invariant(m, &cand).expect("invertible matrix, monic candidate"))
            .then_some(cand)
        })
        .collect())
}

/// Invariants of degree n through factor extraction: for each power exponent
/// j < D coprime to D, factor the semilinear polynomial of the j-th matrix
/// power at r = n / D and keep the degree-n irreducible factors.
pub fn list_invariants_via_f(m: &Mat2, n: u64, degree_cap: u64, seed: u64) -> Result<Vec<Poly>> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if m.is_scalar() {
        return Err(Error::IdentityClass);
    }
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let order = element_order(m)?;
    if n % order != 0 {
        return Err(Error::NotDivisible { n, order });
    }
    let r = n / order;
    let mut found = BTreeSet::new();
    for j in 1..order {
        if gcd(j, order) != 1 {
            continue;
        }
        let power = m.pow(j)?;
        let semilinear = build_semilinear_poly(&power, r as u32, degree_cap)?;
        let split = poly::distinct_degree_split(&semilinear)?;
        if let Some((product, _count)) = split.get(&(n as usize)) {
            for factor in poly::equal_degree_factor(product, n as usize, seed)? {
                found.insert(factor);
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Exact rational value of the historical count
/// phi(D)/(Dm) sum_{d|m, gcd(d,D)=1} mu(d) q^{m/d}, which is non-integral in
/// general; kept as a first-class output for comparison.
pub fn d62_formula(m: &Mat2, n: u64) -> Result<Rational> {
    let _ = classify_type(m)?;
    if n < 3 {
        return Err(Error::DegreeTooSmall(n));
    }
    let order = element_order(m)?;
    if n % order != 0 {
        return Err(Error::NotDivisible { n, order });
    }
    let deg_ratio = n / order;
    let q = m.field().q() as i128;
    let mut sum: i128 = 0;
    for d in divisors(deg_ratio) {
        if gcd(d, order) != 1 {
            continue;
        }
        let mu = moebius_mu(d);
        if mu == 0 {
            continue;
        }
        let power = q
            .checked_pow((deg_ratio / d) as u32)
            .ok_or(Error::NumericOverflow)?;
        sum = sum
            .checked_add(power.checked_mul(mu as i128).ok_or(Error::NumericOverflow)?)
            .ok_or(Error::NumericOverflow)?;
    }
    let numer = (euler_phi(order) as i128)
        .checked_mul(sum)
        .ok_or(Error::NumericOverflow)?;
    Ok(Rational::new(numer, (order * deg_ratio) as u64))
}

/// An exact reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i128,
    den: u64,
}

impl Rational {
    pub fn new(num: i128, den: u64) -> Rational {
        assert!(den > 0);
        let g = gcd_u128(num.unsigned_abs(), den as u128).max(1);
        Rational {
            num: num / g as i128,
            den: den / g as u64,
        }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Per-degree invariant count with method provenance, the cross-validation
/// record emitted by the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub field: String,
    pub matrix: String,
    #[serde(rename = "type")]
    pub type_index: u8,
    pub order: u64,
    pub degree: u64,
    pub closed: Option<u64>,
    pub brute: Option<u64>,
    #[serde(rename = "via_F")]
    pub via_f: Option<u64>,
    pub d62: Option<String>,
}

impl CountReport {
    /// True when every present method agrees.
    pub fn consistent(&self) -> bool {
        let mut counts = [self.closed, self.brute, self.via_f]
            .into_iter()
            .flatten();
        match counts.next() {
            None => true,
            Some(first) => counts.all(|c| c == first),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::DEFAULT_ENUM_CAP;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::build(p, 1, None).unwrap()
    }

    #[test]
    fn mu_phi_character_examples() {
        assert_eq!(moebius_mu(1), 1);
        assert_eq!(moebius_mu(6), 1);
        assert_eq!(moebius_mu(12), 0);
        assert_eq!(moebius_mu(30), -1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(principal_character(3, 2), 1);
        assert_eq!(principal_character(3, 6), 0);
        assert_eq!(principal_character(1, 17), 1);
    }

    #[test]
    fn mu_satisfies_divisor_identity() {
        // sum_{d|n} mu(d) = [n == 1]
        for n in 1..200u64 {
            let s: i64 = divisors(n).into_iter().map(moebius_mu).sum();
            assert_eq!(s, i64::from(n == 1));
        }
        // sum_{d|n} phi(d) = n
        for n in 1..200u64 {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn inversion_examples() {
        // chi = 1, L(n) = sum of divisors recovers the identity map
        let k: BTreeMap<u64, i128> = (1..=6).map(|n| (n, n as i128)).collect();
        let one = |_: u64| 1i128;
        let l = weighted_divisor_sum(&k, &one).unwrap();
        assert_eq!(moebius_invert_weighted(&l, &one).unwrap(), k);
        assert_eq!(l[&6], 1 + 2 + 3 + 6);

        // n = 1 is the identity case
        let k1: BTreeMap<u64, i128> = [(1, 42)].into();
        let l1 = weighted_divisor_sum(&k1, &one).unwrap();
        assert_eq!(l1[&1], 42);

        // principal character mod 2 round-trip on arbitrary data
        let chi = |d: u64| principal_character(2, d) as i128;
        let k: BTreeMap<u64, i128> = (1..=8).map(|n| (n, (37 * n * n + 5) as i128)).collect();
        let l = weighted_divisor_sum(&k, &chi).unwrap();
        assert_eq!(moebius_invert_weighted(&l, &chi).unwrap(), k);

        // missing divisor detected
        let broken: BTreeMap<u64, i128> = [(4, 1)].into();
        assert_eq!(
            moebius_invert_weighted(&broken, &one),
            Err(Error::MissingDivisorValue(2))
        );
    }

    #[test]
    fn closed_form_paper_values() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        assert_eq!(count_closed_form(&a, 9).unwrap(), 2);
        assert_eq!(count_closed_form(&a, 3).unwrap(), 2);
        assert_eq!(count_closed_form(&a, 4).unwrap(), 0); // 3 does not divide 4
        assert_eq!(count_closed_form(&a, 6).unwrap(), 0);

        let f3 = gf(3);
        let a2 = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        assert_eq!(count_closed_form(&a2, 4).unwrap(), 2);

        let e = Mat2::from_ints(&f2, [[1, 0], [1, 1]]);
        assert_eq!(count_closed_form(&e, 4).unwrap(), 1);

        let c2 = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        assert_eq!(count_closed_form(&c2, 4).unwrap(), 2);

        assert_eq!(count_closed_form(&a, 2), Err(Error::DegreeTooSmall(2)));
        assert_eq!(
            count_closed_form(&Mat2::identity(&f2), 3),
            Err(Error::IdentityClass)
        );
    }

    #[test]
    fn brute_force_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        assert_eq!(count_brute_force(&a, 3, DEFAULT_ENUM_CAP).unwrap(), 2);
        assert_eq!(count_brute_force(&a, 2, DEFAULT_ENUM_CAP).unwrap(), 1);

        let f3 = gf(3);
        assert_eq!(
            count_brute_force(&Mat2::identity(&f3), 2, DEFAULT_ENUM_CAP).unwrap(),
            3
        );

        assert!(matches!(
            count_brute_force(&a, 64, DEFAULT_ENUM_CAP),
            Err(Error::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn closed_form_cross_checked_against_brute_force() {
        // the [DERIVED] example values above, re-derived by full enumeration
        let f3 = gf(3);
        let a2 = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        assert_eq!(count_brute_force(&a2, 4, DEFAULT_ENUM_CAP).unwrap(), 2);
        let c2 = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        assert_eq!(count_brute_force(&c2, 4, DEFAULT_ENUM_CAP).unwrap(), 2);
        let f2 = gf(2);
        let e = Mat2::from_ints(&f2, [[1, 0], [1, 1]]);
        assert_eq!(count_brute_force(&e, 4, DEFAULT_ENUM_CAP).unwrap(), 1);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        assert_eq!(count_brute_force(&a, 9, DEFAULT_ENUM_CAP).unwrap(), 2);
    }

    #[test]
    fn via_f_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let cubics = list_invariants_via_f(&a, 3, DEFAULT_ENUM_CAP, 0).unwrap();
        assert_eq!(
            cubics,
            vec![
                Poly::from_ints(&f2, &[1, 1, 0, 1]),
                Poly::from_ints(&f2, &[1, 0, 1, 1]),
            ]
        );
        assert_eq!(
            list_invariants_via_f(&a, 6, DEFAULT_ENUM_CAP, 0).unwrap(),
            Vec::<Poly>::new()
        );

        let f3 = gf(3);
        let c2 = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        let quartics = list_invariants_via_f(&c2, 4, DEFAULT_ENUM_CAP, 0).unwrap();
        assert_eq!(
            quartics,
            invariants_brute_force(&c2, 4, DEFAULT_ENUM_CAP).unwrap()
        );
        assert_eq!(quartics.len(), 2);

        assert_eq!(
            list_invariants_via_f(&c2, 3, DEFAULT_ENUM_CAP, 0),
            Err(Error::NotDivisible { n: 3, order: 2 })
        );
    }

    #[test]
    fn d62_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let r = d62_formula(&a, 9).unwrap();
        assert_eq!((r.num(), r.den()), (16, 9));
        assert!(!r.is_integral());

        let f3 = gf(3);
        let a2 = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        let r = d62_formula(&a2, 4).unwrap();
        assert_eq!((r.num(), r.den()), (9, 4));
        assert!(!r.is_integral());
        // true count differs
        assert_eq!(count_closed_form(&a2, 4).unwrap(), 2);

        let e = Mat2::from_ints(&f2, [[1, 0], [1, 1]]);
        let r = d62_formula(&e, 4).unwrap();
        assert_eq!((r.num(), r.den()), (1, 1));
        assert!(r.is_integral());

        assert_eq!(
            d62_formula(&a, 4),
            Err(Error::NotDivisible { n: 4, order: 3 })
        );
    }

    #[test]
    fn rational_display() {
        assert_eq!(Rational::new(16, 9).to_string(), "16/9");
        assert_eq!(Rational::new(4, 4).to_string(), "1");
        assert_eq!(Rational::new(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn report_consistency() {
        let report = CountReport {
            field: "2".into(),
            matrix: "0,1;1,1".into(),
            type_index: 4,
            order: 3,
            degree: 9,
            closed: Some(2),
            brute: Some(2),
            via_f: Some(2),
            d62: Some("16/9".into()),
        };
        assert!(report.consistent());
        let bad = CountReport {
            brute: Some(3),
            ..report.clone()
        };
        assert!(!bad.consistent());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["via_F"], 2);
        assert_eq!(json["type"], 4);
        assert_eq!(json["d62"], "16/9");
    }
}
