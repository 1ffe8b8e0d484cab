//! The Möbius action of 2x2 matrices on polynomials: cleared-denominator
//! composition, its monic normalization (the projective action), the
//! invariance predicate, the induced fractional action on roots in extension
//! fields, and the semilinear polynomials whose factors encode invariants.

use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::pgl2::Mat2;
use crate::poly::{self, Poly, DEFAULT_ENUM_CAP};

/// Result of the projective composition: the raw cleared-denominator image,
/// the scalar that makes it monic, and the monic product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionResult {
    /// The cleared-denominator composition itself.
    pub raw: Poly,
    /// The unique nonzero scalar with `scale * raw` monic.
    pub scale: FqElem,
    /// `scale * raw`; the projective image of the input.
    pub monic: Poly,
    /// Set when the input lay outside the guaranteed regime (degree < 2) or
    /// the composed degree dropped below the input degree.
    pub warning: bool,
}

/// The composition sum_i f_i (ax+c)^i (bx+d)^{k-i} with k = deg f; the
/// denominator-cleared substitution of (ax+c)/(bx+d) into f.
pub fn compose_raw(m: &Mat2, f: &Poly) -> Result<Poly> {
    if m.field() != f.field() {
        return Err(Error::FieldMismatch);
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field().clone();
    let k = f.degree().unwrap();
    let numer = Poly::new(&field, vec![m.c().clone(), m.a().clone()]); // ax + c
    let denom = Poly::new(&field, vec![m.d().clone(), m.b().clone()]); // bx + d
    let mut denom_pows = Vec::with_capacity(k + 1);
    denom_pows.push(Poly::one(&field));
    for i in 1..=k {
        let next = denom_pows[i - 1].mul(&denom)?;
        denom_pows.push(next);
    }
    // Horner in the numerator: acc picks up one factor (ax+c) per step.
    let mut acc = Poly::zero(&field);
    for i in (0..=k).rev() {
        acc = acc.mul(&numer)?;
        let term = denom_pows[k - i].mul_scalar(&f.coeff(i));
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Monic-normalized composition. The input must be monic; inputs of degree
/// < 2 (where the permutation guarantees do not apply) are accepted but
/// flagged.
pub fn compose_projective(m: &Mat2, f: &Poly) -> Result<ActionResult> {
    if !f.is_monic() {
        return Err(Error::NonMonicInput);
    }
    let raw = compose_raw(m, f)?;
    let scale = f.field().inv(raw.leading().expect("composition of nonzero f is nonzero"))?;
    let monic = raw.mul_scalar(&scale);
    let warning = f.degree().unwrap() < 2 || monic.degree() < f.degree();
    Ok(ActionResult {
        raw,
        scale,
        monic,
        warning,
    })
}

/// True iff the projective image of f equals f.
pub fn is_invariant(m: &Mat2, f: &Poly) -> Result<bool> {
    Ok(compose_projective(m, f)?.monic == *f)
}

/// The fractional action (d*alpha - c) / (a - b*alpha) on a residue `alpha`
/// of the quotient field GF(q)[x]/(min_poly), with min_poly irreducible of
/// degree >= 2.
pub fn root_action(m: &Mat2, min_poly: &Poly, alpha: &Poly) -> Result<Poly> {
    if m.field() != min_poly.field() || min_poly.field() != alpha.field() {
        return Err(Error::FieldMismatch);
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let field = min_poly.field().clone();
    let alpha = alpha.rem(min_poly)?;
    let d_alpha = alpha.mul_scalar(m.d());
    let numer = d_alpha.sub(&Poly::constant(&field, m.c().clone()))?;
    let b_alpha = alpha.mul_scalar(m.b());
    let denom = Poly::constant(&field, m.a().clone()).sub(&b_alpha)?;
    let inv = poly::modular_inverse(&denom, min_poly)?.ok_or(Error::DenominatorZero)?;
    numer.mul(&inv)?.rem(min_poly)
}

/// The four-term semilinear polynomial b x^{q^r + 1} - a x^{q^r} + d x - c
/// attached to a matrix; returned unnormalized (signed as written). Degree
/// q^r + 1 when b != 0, else q^r.
pub fn build_semilinear_poly(m: &Mat2, r: u32, degree_cap: u64) -> Result<Poly> {
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let field = m.field().clone();
    let qr = (field.q() as u128).pow(r);
    if qr + 1 > degree_cap as u128 {
        return Err(Error::DegreeCapExceeded {
            degree: qr + 1,
            cap: degree_cap,
        });
    }
    let qr = qr as usize;
    // Accumulate into slots: terms collide when r = 0.
    let mut coeffs = vec![field.zero(); qr + 2];
    coeffs[qr + 1] = field.add(&coeffs[qr + 1], m.b());
    coeffs[qr] = field.sub(&coeffs[qr], m.a());
    coeffs[1] = field.add(&coeffs[1], m.d());
    coeffs[0] = field.sub(&coeffs[0], m.c());
    Ok(Poly::new(&field, coeffs))
}

/// Convenience wrapper using the default degree cap.
pub fn semilinear_poly(m: &Mat2, r: u32) -> Result<Poly> {
    build_semilinear_poly(m, r, DEFAULT_ENUM_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::build(p, 1, None).unwrap()
    }

    #[test]
    fn compose_raw_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let f = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        // direct expansion oracle: sum f_i (x+1)^{3-i} with (ax+c) = 1
        let xp1 = Poly::from_ints(&f2, &[1, 1]);
        let mut oracle = Poly::zero(&f2);
        for (i, c) in f.coeffs().iter().enumerate() {
            let mut term = Poly::constant(&f2, c.clone());
            for _ in 0..(3 - i) {
                term = term.mul(&xp1).unwrap();
            }
            oracle = oracle.add(&term).unwrap();
        }
        let composed = compose_raw(&a, &f).unwrap();
        assert_eq!(composed, oracle);
        assert_eq!(composed, f);

        // identity acts trivially
        let f3 = gf(3);
        let g = Poly::from_ints(&f3, &[2, 1, 0, 2, 1]);
        assert_eq!(compose_raw(&Mat2::identity(&f3), &g).unwrap(), g);

        // diagonal action is substitution x -> 2x
        let d = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        let h = Poly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(compose_raw(&d, &h).unwrap(), h); // 4x^2 + 1 = x^2 + 1

        assert_eq!(
            compose_raw(&d, &Poly::zero(&f3)),
            Err(Error::ZeroPolynomial)
        );
        let sing = Mat2::from_ints(&f3, [[1, 1], [1, 1]]);
        assert_eq!(compose_raw(&sing, &h), Err(Error::SingularMatrix));
    }

    #[test]
    fn compose_raw_general_substitution_oracle() {
        // against a rational-substitution oracle: evaluate both sides at all
        // field points where the denominator is nonzero.
        for p in [3u64, 5] {
            let field = gf(p);
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            for _ in 0..40 {
                let m = Mat2::random_invertible(&field, &mut rng);
                let f = poly::random_monic(&field, 4, &mut rng);
                let composed = compose_raw(&m, &f).unwrap();
                for x in field.elements() {
                    let den = field.add(&field.mul(m.b(), &x), m.d());
                    if field.is_zero(&den) {
                        continue;
                    }
                    let num = field.add(&field.mul(m.a(), &x), m.c());
                    let arg = field.div(&num, &den).unwrap();
                    let lhs = composed.eval(&x);
                    let rhs = field.mul(&f.eval(&arg), &field.pow(&den, 4));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn compose_projective_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let f = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        let r = compose_projective(&a, &f).unwrap();
        assert_eq!(r.monic, f);
        assert_eq!(r.scale, f2.one());
        assert!(!r.warning);
        assert_eq!(r.monic, r.raw.mul_scalar(&r.scale));

        let f3 = gf(3);
        let c2 = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        let quad = Poly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(compose_projective(&c2, &quad).unwrap().monic, quad);

        let nonmonic = Poly::from_ints(&f3, &[1, 0, 2]);
        assert_eq!(
            compose_projective(&c2, &nonmonic),
            Err(Error::NonMonicInput)
        );
    }

    #[test]
    fn invariance_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        assert!(is_invariant(&a, &Poly::from_ints(&f2, &[1, 1, 0, 1])).unwrap());
        assert!(is_invariant(&a, &Poly::from_ints(&f2, &[1, 1, 1])).unwrap());

        let f3 = gf(3);
        let d = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        assert!(!is_invariant(&d, &Poly::from_ints(&f3, &[2, 1, 1])).unwrap());
    }

    #[test]
    fn root_action_examples() {
        let f2 = gf(2);
        let cubic = Poly::from_ints(&f2, &[1, 1, 0, 1]);
        let alpha = Poly::x(&f2);
        assert_eq!(
            root_action(&Mat2::identity(&f2), &cubic, &alpha).unwrap(),
            alpha
        );
        // (alpha+1)/alpha = alpha^2 in GF(8) = GF(2)[x]/(x^3+x+1)
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        let image = root_action(&a, &cubic, &alpha).unwrap();
        assert_eq!(image, Poly::from_ints(&f2, &[0, 0, 1]));
        // which is alpha^{q^r} with r = 1
        assert_eq!(image, alpha.powmod(2, &cubic).unwrap());

        // GF(9): [[0,1],[2,0]] sends alpha to -2/(-alpha) = 2 alpha^{-1}
        let f3 = gf(3);
        let quad = Poly::from_ints(&f3, &[1, 0, 1]);
        let c2 = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        let image = root_action(&c2, &quad, &Poly::x(&f3)).unwrap();
        let inv = poly::modular_inverse(&Poly::x(&f3), &quad).unwrap().unwrap();
        assert_eq!(image, inv.mul_scalar(&f3.int(2)).rem(&quad).unwrap());
    }

    #[test]
    fn semilinear_poly_examples() {
        let f2 = gf(2);
        let a = Mat2::from_ints(&f2, [[0, 1], [1, 1]]);
        assert_eq!(
            semilinear_poly(&a, 1).unwrap(),
            Poly::from_ints(&f2, &[1, 1, 0, 1])
        );
        let a2 = a.pow(2).unwrap();
        assert_eq!(a2, Mat2::from_ints(&f2, [[1, 1], [1, 0]]));
        assert_eq!(
            semilinear_poly(&a2, 1).unwrap(),
            Poly::from_ints(&f2, &[1, 0, 1, 1])
        );

        // b = 0 branch: F = -a x^q + d x - c, degree q
        let f3 = gf(3);
        let d = Mat2::from_ints(&f3, [[2, 0], [0, 1]]);
        assert_eq!(
            semilinear_poly(&d, 1).unwrap(),
            Poly::from_ints(&f3, &[0, 1, 0, -2])
        );

        // r = 0 collides the middle terms: b x^2 + (d - a) x - c
        let r0 = semilinear_poly(&a, 0).unwrap();
        assert_eq!(r0, Poly::from_ints(&f2, &[1, 1, 1]));

        assert!(matches!(
            build_semilinear_poly(&a, 30, DEFAULT_ENUM_CAP),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn warning_flag_marks_degenerate_inputs() {
        let f3 = gf(3);
        let m = Mat2::from_ints(&f3, [[0, 1], [2, 0]]);
        // linear input: outside the guaranteed regime
        let lin = Poly::from_ints(&f3, &[1, 1]);
        assert!(compose_projective(&m, &lin).unwrap().warning);
        // reducible quadratic whose degree drops under this matrix:
        // f = x^2 with (ax+c) = 2 gives a constant
        let sq = Poly::from_ints(&f3, &[0, 0, 1]);
        let r = compose_projective(&m, &sq).unwrap();
        assert!(r.warning);
        // irreducible quadratic: never flagged
        let quad = Poly::from_ints(&f3, &[1, 0, 1]);
        assert!(!compose_projective(&m, &quad).unwrap().warning);
    }
}
